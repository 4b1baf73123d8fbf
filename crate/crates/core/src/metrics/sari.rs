//! SARI: n-gram keep/add/delete agreement between source, hypothesis and
//! references.
//!
//! Source and hypothesis counts are multiplied by the number of references
//! and compared against reference counts summed over all references, so a
//! gram kept by only some of the references earns partial credit. Keep is an
//! F1 of precision and recall, add an F1 over gram sets, delete a precision.
//! The three are averaged over n = 1..4 and then with each other.
//!
//! A component whose ratio has an empty denominator scores 0. The one
//! exception: when source, hypothesis and every reference are identical, an
//! empty keep precision or recall scores 1.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{extract_ngrams, order_independent_mean, EvalInstance};

pub const SARI_MAX_ORDER: usize = 4;

/// SARI and its components, all on a 0-100 scale.
///
/// `sari == (f_keep + f_add + p_del) / 3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SariScore {
    pub sari: f64,
    #[serde(rename = "sari_keep")]
    pub f_keep: f64,
    #[serde(rename = "sari_add")]
    pub f_add: f64,
    #[serde(rename = "sari_del")]
    pub p_del: f64,
}

impl SariScore {
    fn from_components(f_keep: f64, f_add: f64, p_del: f64) -> Self {
        Self {
            sari: (f_keep + f_add + p_del) / 3.0,
            f_keep,
            f_add,
            p_del,
        }
    }

    /// Macro average over instances. The components are averaged first and
    /// the total derived from them, so the decomposition stays exact.
    pub fn mean(scores: &[SariScore]) -> Self {
        Self::from_components(
            order_independent_mean(scores.iter().map(|s| s.f_keep).collect()),
            order_independent_mean(scores.iter().map(|s| s.f_add).collect()),
            order_independent_mean(scores.iter().map(|s| s.p_del).collect()),
        )
    }
}

fn ratio(num: f64, den: f64, empty: f64) -> f64 {
    if den == 0.0 {
        empty
    } else {
        num / den
    }
}

/// Float sum independent of hash map iteration order.
fn sorted_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(f64::total_cmp);
    terms.into_iter().sum()
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

type Counts<'a> = HashMap<&'a [String], usize>;

fn scale(c: Counts<'_>, k: usize) -> Counts<'_> {
    c.into_iter().map(|(g, n)| (g, n * k)).collect()
}

/// `(keep F1, delete precision, add F1)` for one n-gram order.
fn order_scores(inst: &EvalInstance, n: usize, identical: bool) -> (f64, f64, f64) {
    let num_refs = inst.references.len();
    let src = scale(extract_ngrams(&inst.source, n), num_refs);
    let hyp = scale(extract_ngrams(&inst.hypothesis, n), num_refs);
    let mut refs: Counts<'_> = HashMap::new();
    for r in &inst.references {
        for (g, c) in extract_ngrams(r, n) {
            *refs.entry(g).or_insert(0) += c;
        }
    }
    let get = |m: &Counts<'_>, g: &[String]| m.get(g).copied().unwrap_or(0);

    // keep: grams in both source and hypothesis
    let keep_empty = if identical { 1.0 } else { 0.0 };
    let mut keep_precision = Vec::new();
    let mut keep_good_total = 0usize;
    for (&g, &s) in &src {
        let kept = s.min(get(&hyp, g));
        if kept == 0 {
            continue;
        }
        let good = kept.min(get(&refs, g));
        keep_precision.push(good as f64 / kept as f64);
        keep_good_total += good;
    }
    let keep_all: usize = src.iter().map(|(&g, &s)| s.min(get(&refs, g))).sum();
    let keep_p = ratio(
        sorted_sum(keep_precision.clone()),
        keep_precision.len() as f64,
        keep_empty,
    );
    let keep_r = ratio(keep_good_total as f64, keep_all as f64, keep_empty);

    // delete: source grams the hypothesis dropped
    let mut del_precision = Vec::new();
    for (&g, &s) in &src {
        let deleted = s.saturating_sub(get(&hyp, g));
        if deleted == 0 {
            continue;
        }
        let good = deleted.saturating_sub(get(&refs, g));
        del_precision.push(good as f64 / deleted as f64);
    }
    let del_p = ratio(
        sorted_sum(del_precision.clone()),
        del_precision.len() as f64,
        0.0,
    );

    // add: hypothesis grams absent from the source, as sets
    let added: HashSet<&[String]> = hyp
        .keys()
        .filter(|g| !src.contains_key(*g))
        .copied()
        .collect();
    let ref_new: HashSet<&[String]> = refs
        .keys()
        .filter(|g| !src.contains_key(*g))
        .copied()
        .collect();
    let add_good = added.intersection(&ref_new).count() as f64;
    let add_p = ratio(add_good, added.len() as f64, 0.0);
    let add_r = ratio(add_good, ref_new.len() as f64, 0.0);

    (f1(keep_p, keep_r), del_p, f1(add_p, add_r))
}

/// SARI of a single instance.
pub fn sari_instance(inst: &EvalInstance) -> SariScore {
    let identical =
        inst.hypothesis == inst.source && inst.references.iter().all(|r| *r == inst.source);
    let (mut keep, mut del, mut add) = (0.0, 0.0, 0.0);
    for n in 1..=SARI_MAX_ORDER {
        let (k, d, a) = order_scores(inst, n, identical);
        keep += k;
        del += d;
        add += a;
    }
    let orders = SARI_MAX_ORDER as f64;
    SariScore::from_components(
        100.0 * keep / orders,
        100.0 * add / orders,
        100.0 * del / orders,
    )
}
