fn main() {
    std::process::exit(leichtkit_cli::run(std::env::args_os()));
}
