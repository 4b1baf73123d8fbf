use std::collections::{BTreeMap, BTreeSet};

use leichtkit::desk_corpus::easy_sentences;
use leichtkit::ngram::{
    corpus_perplexity, pooled_perplexity, style_discriminate, train, NgramModel, Smoothing,
    StyleLabel, TrainConfig, BOS_ID, EOS_ID, UNK_ID,
};
use leichtkit::textstats::tokenize;
use leichtkit::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn seqs(data: &[&str]) -> Vec<Vec<String>> {
    data.iter()
        .map(|s| s.split_whitespace().map(str::to_string).collect())
        .collect()
}

fn config(order: usize, smoothing: Smoothing) -> TrainConfig {
    TrainConfig {
        order,
        smoothing,
        min_vocab_count: 1,
    }
}

const KN: Smoothing = Smoothing::KneserNey { discount: 0.75 };
const TOY: [&str; 5] = ["a b", "a c", "b a", "a b c", "c"];

#[test]
fn probabilities_sum_to_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let words: Vec<String> = (0..40).map(|i| format!("w{i}")).collect();
    let corpus: Vec<Vec<String>> = (0..200)
        .map(|_| {
            let len = rng.random_range(0..8);
            (0..len)
                .map(|_| words[rng.random_range(0..12) * rng.random_range(1..4) % 40].clone())
                .collect()
        })
        .collect();
    for smoothing in [
        Smoothing::WittenBell,
        KN,
        Smoothing::KneserNey { discount: 0.3 },
    ] {
        for order in 1..=4 {
            let m = train(&corpus, &config(order, smoothing)).unwrap();
            let v = m.vocab().len() as u32;
            assert!(v <= 50);
            let mut contexts: Vec<Vec<u32>> = m.contexts().map(<[u32]>::to_vec).collect();
            contexts.push(vec![0; order - 1]);
            contexts.push(vec![v - 1; order - 1]);
            for ctx in contexts {
                let total: f64 = (0..v).map(|w| m.prob_id(&ctx, w)).sum();
                assert!(
                    (total - 1.0).abs() < 1e-6,
                    "{smoothing:?} order {order} ctx {ctx:?}: {total}"
                );
                assert_eq!(m.prob_id(&ctx, BOS_ID), 0.0);
            }
        }
    }
}

#[test]
fn hand_computed_bigram_values() {
    let wb = train(&seqs(&TOY), &config(2, Smoothing::WittenBell)).unwrap();
    let kn = train(&seqs(&TOY), &config(2, KN)).unwrap();
    // Unigram stage: a 4, b 3, c 3, </s> 5 over 15 events, 4 types, V = 5.
    assert!((wb.prob(&["zzz"], "a") - 4.8 / 19.0).abs() < 1e-12);
    assert!((wb.prob(&["a"], "b") - 13.0 / 35.0).abs() < 1e-12);
    assert!((wb.prob_id(&[BOS_ID], wb.vocab().id("a")) - 71.4 / 152.0).abs() < 1e-12);
    // Continuation counts: a 2, b 2, c 3, </s> 3 over 10 bigram types.
    assert!((kn.prob(&["zzz"], "a") - 0.185).abs() < 1e-12);
    assert!((kn.prob(&["zzz"], "<unk>") - 0.06).abs() < 1e-12);
    assert!((kn.prob(&["a"], "b") - 0.4165625).abs() < 1e-12);
    assert!((kn.prob_id(&[BOS_ID], kn.vocab().id("a")) - 0.53325).abs() < 1e-12);
}

/// Bigram estimates computed from string-keyed counts.
struct BigramOracle {
    bigrams: BTreeMap<(String, String), f64>,
    unigrams: BTreeMap<String, f64>,
    predictable: Vec<String>,
}

impl BigramOracle {
    fn new(corpus: &[&str]) -> Self {
        let mut bigrams = BTreeMap::new();
        let mut unigrams = BTreeMap::new();
        let mut types = BTreeSet::new();
        for s in corpus {
            let mut padded = vec!["<s>".to_string()];
            padded.extend(s.split_whitespace().map(str::to_string));
            padded.push("</s>".to_string());
            for w in &padded[1..] {
                *unigrams.entry(w.clone()).or_insert(0.0) += 1.0;
                types.insert(w.clone());
            }
            for pair in padded.windows(2) {
                *bigrams
                    .entry((pair[0].clone(), pair[1].clone()))
                    .or_insert(0.0) += 1.0;
            }
        }
        types.insert("<unk>".to_string());
        Self {
            bigrams,
            unigrams,
            predictable: types.into_iter().collect(),
        }
    }

    fn successors(&self, v: &str) -> Vec<f64> {
        self.bigrams
            .iter()
            .filter(|((a, _), _)| a == v)
            .map(|(_, c)| *c)
            .collect()
    }

    fn witten_bell(&self, v: &str, w: &str) -> f64 {
        let n = self.unigrams.values().sum::<f64>();
        let t = self.unigrams.len() as f64;
        let base = 1.0 / self.predictable.len() as f64;
        let uni = (self.unigrams.get(w).copied().unwrap_or(0.0) + t * base) / (n + t);
        let succ = self.successors(v);
        if succ.is_empty() {
            return uni;
        }
        let c = self
            .bigrams
            .get(&(v.to_string(), w.to_string()))
            .copied()
            .unwrap_or(0.0);
        let (total, distinct) = (succ.iter().sum::<f64>(), succ.len() as f64);
        (c + distinct * uni) / (total + distinct)
    }

    fn kneser_ney(&self, v: &str, w: &str, d: f64) -> f64 {
        let base = 1.0 / self.predictable.len() as f64;
        let cont = |x: &str| self.bigrams.keys().filter(|(_, b)| b == x).count() as f64;
        let cont_total = self.bigrams.len() as f64;
        let cont_types = self.unigrams.len() as f64;
        let cw = cont(w);
        let uni = ((cw - d).max(0.0) + d * cont_types * base) / cont_total;
        let succ = self.successors(v);
        if succ.is_empty() {
            return uni;
        }
        let c = self
            .bigrams
            .get(&(v.to_string(), w.to_string()))
            .copied()
            .unwrap_or(0.0);
        let (total, distinct) = (succ.iter().sum::<f64>(), succ.len() as f64);
        ((c - d).max(0.0) + d * distinct * uni) / total
    }
}

#[test]
fn bigram_models_match_string_oracle() {
    let corpus = [
        "der hund bellt",
        "der hund schläft",
        "die katze schläft",
        "der hund und die katze",
        "sie schläft",
    ];
    let oracle = BigramOracle::new(&corpus);
    let wb = train(&seqs(&corpus), &config(2, Smoothing::WittenBell)).unwrap();
    let kn = train(&seqs(&corpus), &config(2, KN)).unwrap();
    let mut histories: Vec<String> = oracle.predictable.clone();
    histories.push("<s>".into());
    for v in &histories {
        for w in &oracle.predictable {
            let (ewb, ekn) = (oracle.witten_bell(v, w), oracle.kneser_ney(v, w, 0.75));
            let sym = |t: &str| match t {
                "<s>" => BOS_ID,
                "</s>" => EOS_ID,
                _ => wb.vocab().id(t),
            };
            let (ctx, id) = (sym(v), sym(w));
            assert!(
                (wb.prob_id(&[ctx], id) - ewb).abs() < 1e-12,
                "WB P({w}|{v})"
            );
            assert!(
                (kn.prob_id(&[ctx], id) - ekn).abs() < 1e-12,
                "KN P({w}|{v})"
            );
        }
    }
}

#[test]
fn uniform_model_scores() {
    let m = NgramModel::uniform(["a", "b", "c", "d"], 1).unwrap();
    let v = m.vocab().predictable_len() as f64;
    assert_eq!(v, 6.0);
    assert!((m.log_prob(&["a"]) + v.ln()).abs() < 1e-12);
    for sample in [vec!["a"], vec!["b", "c", "zzz"], vec!["d"; 20]] {
        let ppl = m.perplexity(&sample).unwrap();
        assert!((ppl - v).abs() <= 1e-12 * v, "{ppl}");
    }
}

#[test]
fn unigram_log_prob_is_additive() {
    let m = train(&seqs(&TOY), &config(1, KN)).unwrap();
    let (s1, s2) = (["a", "b"], ["c", "a", "a"]);
    let joined: Vec<&str> = s1.iter().chain(&s2).copied().collect();
    assert!((m.log_prob(&joined) - (m.log_prob(&s1) + m.log_prob(&s2))).abs() < 1e-12);
    assert!(m.log_prob(&joined) <= 0.0);
}

#[test]
fn save_load_is_bit_identical() {
    let corpus: Vec<Vec<String>> = easy_sentences(400, 21)
        .iter()
        .map(|s| tokenize(s))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut pool: Vec<String> = corpus.iter().flatten().cloned().collect();
    pool.push("unbekannt".into());
    for smoothing in [Smoothing::WittenBell, KN] {
        let m = train(&corpus, &config(3, smoothing)).unwrap();
        let bytes = m.to_bytes();
        let loaded = NgramModel::from_bytes(&bytes).unwrap();
        assert_eq!(loaded.to_bytes(), bytes);
        assert_eq!(loaded.fingerprint(), m.fingerprint());
        for _ in 0..100 {
            let len = rng.random_range(1..15);
            let sample: Vec<&str> = (0..len)
                .map(|_| pool[rng.random_range(0..pool.len())].as_str())
                .collect();
            assert_eq!(
                m.log_prob(&sample).to_bits(),
                loaded.log_prob(&sample).to_bits()
            );
            assert_eq!(
                m.perplexity(&sample).unwrap().to_bits(),
                loaded.perplexity(&sample).unwrap().to_bits()
            );
        }
    }
}

#[test]
fn load_rejects_damage() {
    let m = train(&seqs(&TOY), &config(2, KN)).unwrap();
    let bytes = m.to_bytes();
    assert!(matches!(
        NgramModel::from_bytes(&bytes[..bytes.len() - 1]),
        Err(Error::Load(_))
    ));
    let mut wrong_magic = bytes.clone();
    wrong_magic[0] = b'X';
    assert!(matches!(
        NgramModel::from_bytes(&wrong_magic),
        Err(Error::Load(_))
    ));
    let mut flipped = bytes.clone();
    let mid = bytes.len() / 2;
    flipped[mid] ^= 0x01;
    assert!(NgramModel::from_bytes(&flipped).is_err());
}

#[test]
fn training_is_order_independent() {
    let mut corpus: Vec<Vec<String>> = easy_sentences(200, 4).iter().map(|s| tokenize(s)).collect();
    let a = train(&corpus, &TrainConfig::default()).unwrap().to_bytes();
    corpus.reverse();
    let b = train(&corpus, &TrainConfig::default()).unwrap().to_bytes();
    assert_eq!(a, b);
}

#[test]
fn certain_model_approaches_perplexity_one() {
    let mut last = f64::INFINITY;
    for copies in [10, 100, 1000, 10000] {
        let corpus = vec![vec!["a".to_string()]; copies];
        for smoothing in [Smoothing::WittenBell, KN] {
            let ppl = train(&corpus, &config(2, smoothing))
                .unwrap()
                .perplexity(&["a"])
                .unwrap();
            assert!(ppl > 1.0);
            if smoothing == Smoothing::WittenBell {
                assert!(ppl < last);
                last = ppl;
            }
        }
    }
    assert!(last < 1.001, "{last}");
}

#[test]
fn training_text_beats_shuffled_vocabulary() {
    let corpus: Vec<Vec<String>> = easy_sentences(800, 8).iter().map(|s| tokenize(s)).collect();
    let mut types: Vec<String> = corpus
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let original = types.clone();
    types.shuffle(&mut ChaCha8Rng::seed_from_u64(1));
    let relabel: BTreeMap<&String, &String> = original.iter().zip(&types).collect();
    for order in 2..=3 {
        for smoothing in [Smoothing::WittenBell, KN] {
            let m = train(&corpus, &config(order, smoothing)).unwrap();
            let samples: Vec<&Vec<String>> = corpus.iter().take(100).collect();
            let mean = |f: &dyn Fn(&Vec<String>) -> Vec<String>| {
                samples
                    .iter()
                    .map(|s| m.perplexity(&f(s)).unwrap())
                    .sum::<f64>()
                    / samples.len() as f64
            };
            let verbatim = mean(&|s| s.clone());
            let shuffled = mean(&|s| s.iter().map(|t| relabel[t].clone()).collect());
            assert!(
                verbatim < shuffled,
                "order {order}: {verbatim} vs {shuffled}"
            );
        }
    }
}

#[test]
fn sample_wise_mean_differs_from_pooled() {
    let m = train(&seqs(&TOY), &config(1, Smoothing::WittenBell)).unwrap();
    let long: Vec<String> = "a b c a b c a b c a".split(' ').map(String::from).collect();
    let short = vec!["zzz".to_string()];
    let samples = vec![
        ("long".to_string(), long.clone()),
        ("short".to_string(), short.clone()),
    ];
    let result = corpus_perplexity(&m, &samples).unwrap();

    let p = |id: u32| m.prob_id(&[], id).ln();
    let lp_long: f64 = long.iter().map(|w| p(m.vocab().id(w))).sum::<f64>() + p(EOS_ID);
    let lp_short = p(UNK_ID) + p(EOS_ID);
    let ppl_long = (-lp_long / 11.0).exp();
    let ppl_short = (-lp_short / 2.0).exp();
    assert!((result.per_sample[0].ppl - ppl_long).abs() < 1e-9);
    assert!((result.per_sample[1].ppl - ppl_short).abs() < 1e-9);
    assert_eq!(
        result.mean_ppl,
        (result.per_sample[0].ppl + result.per_sample[1].ppl) / 2.0
    );
    let pooled = (-(lp_long + lp_short) / 13.0).exp();
    assert!((pooled_perplexity(&m, &[long, short]).unwrap() - pooled).abs() < 1e-9);
    assert!((result.mean_ppl - pooled).abs() > 0.1);
}

#[test]
fn corpus_perplexity_names_empty_sample() {
    let m = train(&seqs(&TOY), &config(2, KN)).unwrap();
    let samples = vec![
        ("ok".to_string(), vec!["a".to_string()]),
        ("leer".to_string(), vec![]),
    ];
    match corpus_perplexity(&m, &samples) {
        Err(Error::Evaluation(msg)) => assert!(msg.contains("leer"), "{msg}"),
        other => panic!("expected evaluation error, got {other:?}"),
    }
    let single = corpus_perplexity(&m, &samples[..1]).unwrap();
    assert_eq!(single.mean_ppl, single.per_sample[0].ppl);
}

#[test]
fn identical_models_tie_to_normal() {
    let m = train(&seqs(&TOY), &config(2, KN)).unwrap();
    let d = style_discriminate(&m, &m, &["a", "b"]).unwrap();
    assert_eq!(d.label, StyleLabel::Normal);
    assert_eq!(d.easy_ppl, d.normal_ppl);
}
