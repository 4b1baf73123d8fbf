const VOWELS: [char; 9] = ['a', 'e', 'i', 'o', 'u', 'ä', 'ö', 'ü', 'y'];

/// Vowel pairs that form a single syllable nucleus.
const DIGRAPHS: [[char; 2]; 8] = [
    ['e', 'i'],
    ['i', 'e'],
    ['a', 'u'],
    ['e', 'u'],
    ['ä', 'u'],
    ['a', 'a'],
    ['e', 'e'],
    ['o', 'o'],
];

/// Heuristic German syllable count.
///
/// Counts vowel nuclei scanning left to right: a listed digraph counts once,
/// any other vowel counts once on its own, so hiatus sequences such as the
/// `ea` in `Theater` yield two nuclei. Tokens without letters count 0, tokens
/// with letters count at least 1.
pub fn count_syllables(word: &str) -> usize {
    if !word.chars().any(char::is_alphabetic) {
        return 0;
    }
    let chars: Vec<char> = word.chars().flat_map(char::to_lowercase).collect();
    let mut groups = 0;
    let mut i = 0;
    while i < chars.len() {
        if !VOWELS.contains(&chars[i]) {
            i += 1;
            continue;
        }
        groups += 1;
        let pair_len = match chars.get(i + 1) {
            Some(&next) if DIGRAPHS.contains(&[chars[i], next]) => 2,
            _ => 1,
        };
        i += pair_len;
    }
    groups.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_words() {
        assert_eq!(count_syllables("Haus"), 1);
        assert_eq!(count_syllables("Sonne"), 2);
        assert_eq!(count_syllables("."), 0);
        assert_eq!(count_syllables("2024"), 0);
    }

    #[test]
    fn digraphs_and_hiatus() {
        assert_eq!(count_syllables("Ei"), 1);
        assert_eq!(count_syllables("Theater"), 3);
        assert_eq!(count_syllables("Feuer"), 2);
        assert_eq!(count_syllables("Häuser"), 2);
        assert_eq!(count_syllables("Boot"), 1);
    }

    #[test]
    fn case_insensitive() {
        assert_eq!(count_syllables("ÄUSSERST"), count_syllables("äußerst"));
    }

    #[test]
    fn vowelless_words_count_one() {
        assert_eq!(count_syllables("Hbf"), 1);
        assert_eq!(count_syllables("z"), 1);
    }
}
