//! Seeded generators for small contrasting German corpora.
//!
//! The texts are assembled from fixed phrase banks written for this crate,
//! so they carry no third-party rights. Easy-style documents put one short
//! main clause on each line and hyphenate compounds. Normal-style documents
//! are running paragraphs of long sentences with subordinate clauses,
//! commas and closed compounds. Both share a core of everyday vocabulary.
//!
//! The labeled complexity set draws a latent level `L` in `[1, 7]` per
//! sentence. `L` controls the number of clauses and how many words come from
//! the formal bank; the label is `L` plus uniform noise in `[-0.75, 0.75]`,
//! clamped to the scale.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexity::{clamp_complexity, LabeledSentence, MAX_COMPLEXITY, MIN_COMPLEXITY};
use crate::preprocess::Document;

const EASY_SUBJECTS: &[&str] = &[
    "Die Frau",
    "Der Mann",
    "Das Kind",
    "Der Arzt",
    "Die Ärztin",
    "Die Familie",
    "Der Nachbar",
    "Die Lehrerin",
    "Das Amt",
    "Die Gruppe",
    "Die Stadt",
    "Der Chef",
    "Die Freundin",
    "Sie",
    "Er",
    "Die Behörde",
    "Der Verein",
    "Die Mutter",
    "Der Vater",
    "Die Schule",
];
const EASY_VERBS: &[&str] = &[
    "hat", "braucht", "sucht", "findet", "kauft", "liest", "schreibt", "holt", "macht", "bekommt",
    "zeigt", "kennt", "mag", "sieht", "bringt", "prüft",
];
const EASY_OBJECTS: &[&str] = &[
    "einen Brief",
    "das Geld",
    "eine Wohnung",
    "den Antrag",
    "ein Buch",
    "die Karte",
    "einen Termin",
    "das Essen",
    "eine Arbeit",
    "den Pass",
    "Hilfe",
    "Zeit",
    "ein Formular",
    "den Schlüssel",
    "den Miet-Vertrag",
    "das Wahl-Recht",
    "einen Arbeits-Platz",
    "das Sozial-Amt",
    "die Kranken-Kasse",
    "den Bus-Fahr-Plan",
    "das Bürger-Büro",
    "die Haus-Ordnung",
    "den Not-Ruf",
    "die Bundes-Regierung",
    "das Wohn-Geld",
];
const EASY_TAILS: &[&str] = &[
    "",
    "",
    "",
    "heute",
    "morgen",
    "in der Stadt",
    "zu Hause",
    "im Amt",
    "jetzt",
    "am Montag",
    "mit der Familie",
    "schnell",
];
const EASY_ADJECTIVES: &[&str] = &[
    "gut", "wichtig", "neu", "leicht", "klein", "groß", "schön", "richtig", "einfach", "schwer",
    "teuer",
];
const EASY_THINGS: &[&str] = &[
    "Das",
    "Der Brief",
    "Die Wohnung",
    "Der Termin",
    "Die Arbeit",
    "Das Wahl-Recht",
    "Der Miet-Vertrag",
    "Die Kranken-Kasse",
    "Das Formular",
    "Die Regel",
];
const EASY_ADVICE: &[&str] = &[
    "Bitte fragen Sie im Amt.",
    "Sie können Hilfe bekommen.",
    "Das ist wichtig.",
    "Bitte lesen Sie den Brief.",
    "Sie haben ein Recht auf Hilfe.",
    "Bitte rufen Sie an.",
    "Sie können den Antrag stellen.",
    "Das kostet kein Geld.",
];

const NORMAL_SUBJECTS: &[&str] = &[
    "Die zuständige Behörde",
    "Der Bundestag",
    "Die Landesregierung",
    "Das Verwaltungsgericht",
    "Die gesetzliche Krankenversicherung",
    "Der Arbeitgeber",
    "Die Stadtverwaltung",
    "Die Mehrheit der Bevölkerung",
    "Der zuständige Sachbearbeiter",
    "Die Europäische Kommission",
    "Die Familie",
    "Der Verein",
];
const NORMAL_VERBS: &[&str] = &[
    "prüft",
    "genehmigt",
    "berücksichtigt",
    "veröffentlicht",
    "beschließt",
    "verlangt",
    "unterstützt",
    "überarbeitet",
    "bestätigt",
    "erläutert",
    "bekommt",
    "braucht",
];
const NORMAL_ADVERBIALS: &[&str] = &[
    "im Rahmen der geltenden Vorschriften",
    "nach eingehender Prüfung",
    "voraussichtlich bis zum Ende des Jahres",
    "unter Berücksichtigung der bisherigen Erfahrungen",
    "in enger Abstimmung mit den Kommunen",
    "ausdrücklich",
    "gegebenenfalls",
    "entsprechend den gesetzlichen Bestimmungen",
];
const NORMAL_OBJECTS: &[&str] = &[
    "den Mietvertrag",
    "die Durchführungsverordnung",
    "die wirtschaftlichen Rahmenbedingungen",
    "den Antrag auf Wohngeld",
    "die Zuständigkeitsregelung",
    "das Wahlrecht",
    "die Krankenkassenbeiträge",
    "die Arbeitsmarktpolitik",
    "die Haushaltsplanung",
    "den Bebauungsplan",
    "die Hausordnung",
    "das Bürgerbüro",
];
const NORMAL_CLAUSES: &[&str] = &[
    "weil die gesetzlichen Voraussetzungen erfüllt werden müssen",
    "nachdem die Antragsteller umfangreiche Unterlagen eingereicht hatten",
    "obwohl zahlreiche Stellungnahmen eine Verlängerung der Fristen verlangten",
    "sofern keine anderweitigen Vereinbarungen getroffen wurden",
    "damit die Bürgerinnen und Bürger rechtzeitig informiert werden können",
    "wobei insbesondere die Interessen der Beschäftigten berücksichtigt werden",
    "da die bisherigen Regelungen als unzureichend angesehen wurden",
    "während die Verhandlungen über die Finanzierung noch andauern",
    "sodass die betroffenen Haushalte mit erheblichen Mehrkosten rechnen müssen",
];
const NORMAL_INSERTIONS: &[&str] = &[
    "insbesondere im Hinblick auf die Finanzierung",
    "wie bereits im vergangenen Jahr angekündigt",
    "nach Auffassung der Sachverständigen",
    "trotz erheblicher Bedenken der Opposition",
];

fn pick<'a>(rng: &mut ChaCha8Rng, bank: &[&'a str]) -> &'a str {
    bank.choose(rng).expect("phrase banks are nonempty")
}

fn join_words(parts: &[&str]) -> String {
    parts
        .iter()
        .filter(|p| !p.is_empty())
        .copied()
        .collect::<Vec<_>>()
        .join(" ")
}

fn easy_sentence(rng: &mut ChaCha8Rng) -> String {
    match rng.random_range(0..10) {
        0..=5 => {
            let s = join_words(&[
                pick(rng, EASY_SUBJECTS),
                pick(rng, EASY_VERBS),
                pick(rng, EASY_OBJECTS),
                pick(rng, EASY_TAILS),
            ]);
            format!("{s}.")
        }
        6..=7 => format!(
            "{} ist {}.",
            pick(rng, EASY_THINGS),
            pick(rng, EASY_ADJECTIVES)
        ),
        _ => pick(rng, EASY_ADVICE).to_string(),
    }
}

fn normal_sentence(rng: &mut ChaCha8Rng) -> String {
    let mut s = join_words(&[pick(rng, NORMAL_SUBJECTS), pick(rng, NORMAL_VERBS)]);
    if rng.random_bool(0.35) {
        s.push_str(&format!(", {},", pick(rng, NORMAL_INSERTIONS)));
    }
    s = join_words(&[&s, pick(rng, NORMAL_ADVERBIALS), pick(rng, NORMAL_OBJECTS)]);
    s.push_str(&format!(", {}", pick(rng, NORMAL_CLAUSES)));
    if rng.random_bool(0.5) {
        s.push_str(&format!(", {}", pick(rng, NORMAL_CLAUSES)));
    }
    s.push('.');
    s
}

/// Easy-style sentences, one per entry.
pub fn easy_sentences(count: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| easy_sentence(&mut rng)).collect()
}

/// Normal-style sentences, one per entry.
pub fn normal_sentences(count: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| normal_sentence(&mut rng)).collect()
}

/// Easy-style documents of 4 to 6 lines, each line one sentence and
/// newline-terminated.
pub fn easy_documents(count: usize, seed: u64) -> Vec<Document> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.random_range(4..=6);
            let text: String = (0..n).map(|_| easy_sentence(&mut rng) + "\n").collect();
            Document::new(format!("easy-{i:05}"), text)
                .expect("generated text is nonempty")
                .with_meta("style", "easy")
        })
        .collect()
}

/// Normal-style documents: one or two paragraphs of 2 or 3 sentences.
pub fn normal_documents(count: usize, seed: u64) -> Vec<Document> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let paragraphs = rng.random_range(1..=2);
            let text = (0..paragraphs)
                .map(|_| {
                    let n = rng.random_range(2..=3);
                    (0..n)
                        .map(|_| normal_sentence(&mut rng))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("\n");
            Document::new(format!("normal-{i:05}"), text)
                .expect("generated text is nonempty")
                .with_meta("style", "normal")
        })
        .collect()
}

/// Sentences labeled with a noisy complexity level on the 1-7 scale.
pub fn labeled_complexity(count: usize, seed: u64) -> Vec<LabeledSentence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let level: f64 = rng.random_range(MIN_COMPLEXITY..=MAX_COMPLEXITY);
            let formal = (level - MIN_COMPLEXITY) / (MAX_COMPLEXITY - MIN_COMPLEXITY);
            let text = if rng.random_bool(formal) {
                let mut s = join_words(&[
                    pick(&mut rng, NORMAL_SUBJECTS),
                    pick(&mut rng, NORMAL_VERBS),
                ]);
                s = join_words(&[&s, pick(&mut rng, NORMAL_OBJECTS)]);
                let clauses = (level / 2.5).floor() as usize;
                for _ in 0..clauses {
                    s.push_str(&format!(", {}", pick(&mut rng, NORMAL_CLAUSES)));
                }
                s + "."
            } else {
                let mut s = join_words(&[
                    pick(&mut rng, EASY_SUBJECTS),
                    pick(&mut rng, EASY_VERBS),
                    pick(&mut rng, EASY_OBJECTS),
                ]);
                if level > 3.0 {
                    s = join_words(&[&s, pick(&mut rng, NORMAL_ADVERBIALS)]);
                }
                s + "."
            };
            let noise: f64 = rng.random_range(-0.75..=0.75);
            LabeledSentence {
                text,
                complexity: clamp_complexity(level + noise),
            }
        })
        .collect()
}
