//! Slow, direct reimplementations of the metrics used as test oracles.
//! N-gram multisets are plain vectors scanned linearly; LCS enumerates every
//! subsequence.

#![allow(dead_code)]

use leichtkit::metrics::EvalInstance;

pub type Gram = Vec<String>;

/// Multiset of n-grams as (gram, count) pairs in first-occurrence order.
pub fn grams(tokens: &[String], n: usize) -> Vec<(Gram, f64)> {
    let mut out: Vec<(Gram, f64)> = Vec::new();
    if tokens.len() < n {
        return out;
    }
    for i in 0..=tokens.len() - n {
        let g = tokens[i..i + n].to_vec();
        match out.iter_mut().find(|(h, _)| *h == g) {
            Some((_, c)) => *c += 1.0,
            None => out.push((g, 1.0)),
        }
    }
    out
}

fn count(bag: &[(Gram, f64)], g: &Gram) -> f64 {
    bag.iter().find(|(h, _)| h == g).map_or(0.0, |(_, c)| *c)
}

/// Corpus BLEU-4 with the same conventions as the library: epsilon 1e-9 on
/// zero numerators, orders without hypothesis n-grams left out.
pub fn bleu(instances: &[EvalInstance]) -> f64 {
    let (mut hyp_len, mut ref_len) = (0.0, 0.0);
    let mut matched = [0.0; 4];
    let mut total = [0.0; 4];
    for inst in instances {
        hyp_len += inst.hypothesis.len() as f64;
        let mut best = inst.references[0].len();
        for r in &inst.references {
            let (d, bd) = (
                r.len().abs_diff(inst.hypothesis.len()),
                best.abs_diff(inst.hypothesis.len()),
            );
            if d < bd || (d == bd && r.len() < best) {
                best = r.len();
            }
        }
        ref_len += best as f64;
        for n in 1..=4 {
            for (g, c) in grams(&inst.hypothesis, n) {
                let max_ref = inst
                    .references
                    .iter()
                    .map(|r| count(&grams(r, n), &g))
                    .fold(0.0, f64::max);
                matched[n - 1] += c.min(max_ref);
                total[n - 1] += c;
            }
        }
    }
    if hyp_len == 0.0 {
        return 0.0;
    }
    let mut logs = Vec::new();
    for n in 0..4 {
        if total[n] > 0.0 {
            let p = if matched[n] > 0.0 {
                matched[n] / total[n]
            } else {
                1e-9 / total[n]
            };
            logs.push(p.ln());
        }
    }
    let bp = if hyp_len < ref_len {
        (1.0 - ref_len / hyp_len).exp()
    } else {
        1.0
    };
    100.0 * bp * (logs.iter().sum::<f64>() / logs.len() as f64).exp()
}

fn is_subsequence(small: &[&String], big: &[String]) -> bool {
    let mut it = big.iter();
    small.iter().all(|s| it.any(|b| b == *s))
}

/// Longest common subsequence by trying every subset of `a`.
pub fn lcs_brute(a: &[String], b: &[String]) -> usize {
    assert!(a.len() <= 16);
    let mut best = 0;
    for mask in 0u32..(1 << a.len()) {
        let pick: Vec<&String> = (0..a.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| &a[i])
            .collect();
        if pick.len() > best && is_subsequence(&pick, b) {
            best = pick.len();
        }
    }
    best
}

/// (precision, recall, f1) against the best reference.
pub fn rouge_l(inst: &EvalInstance) -> (f64, f64, f64) {
    let mut best = (0.0, 0.0, 0.0);
    for (i, r) in inst.references.iter().enumerate() {
        let l = lcs_brute(&inst.hypothesis, r) as f64;
        let p = if inst.hypothesis.is_empty() {
            0.0
        } else {
            l / inst.hypothesis.len() as f64
        };
        let rc = if r.is_empty() {
            0.0
        } else {
            l / r.len() as f64
        };
        let f = if p + rc == 0.0 {
            0.0
        } else {
            2.0 * p * rc / (p + rc)
        };
        if i == 0 || f > best.2 {
            best = (p, rc, f);
        }
    }
    best
}

fn div(num: f64, den: f64, empty: f64) -> f64 {
    if den == 0.0 {
        empty
    } else {
        num / den
    }
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// SARI components (keep, add, del) on the 0-100 scale.
pub fn sari(inst: &EvalInstance) -> (f64, f64, f64) {
    let k = inst.references.len() as f64;
    let identical =
        inst.hypothesis == inst.source && inst.references.iter().all(|r| *r == inst.source);
    let (mut keep, mut add, mut del) = (0.0, 0.0, 0.0);
    for n in 1..=4 {
        let src = grams(&inst.source, n);
        let hyp = grams(&inst.hypothesis, n);
        let mut refs: Vec<(Gram, f64)> = Vec::new();
        for r in &inst.references {
            for (g, c) in grams(r, n) {
                match refs.iter_mut().find(|(h, _)| *h == g) {
                    Some((_, d)) => *d += c,
                    None => refs.push((g, c)),
                }
            }
        }

        let mut keep_terms = Vec::new();
        let mut keep_good = 0.0;
        let mut keep_all = 0.0;
        let mut del_terms = Vec::new();
        for (g, s) in &src {
            let s = s * k;
            let h = count(&hyp, g) * k;
            let r = count(&refs, g);
            keep_all += s.min(r);
            let kept = s.min(h);
            if kept > 0.0 {
                keep_terms.push(kept.min(r) / kept);
                keep_good += kept.min(r);
            }
            let deleted = (s - h).max(0.0);
            if deleted > 0.0 {
                del_terms.push((deleted - r).max(0.0) / deleted);
            }
        }
        let empty = if identical { 1.0 } else { 0.0 };
        let kp = div(keep_terms.iter().sum(), keep_terms.len() as f64, empty);
        let kr = div(keep_good, keep_all, empty);
        keep += f1(kp, kr);
        del += div(del_terms.iter().sum(), del_terms.len() as f64, 0.0);

        let added: Vec<&Gram> = hyp
            .iter()
            .map(|(g, _)| g)
            .filter(|g| count(&src, g) == 0.0)
            .collect();
        let wanted: Vec<&Gram> = refs
            .iter()
            .map(|(g, _)| g)
            .filter(|g| count(&src, g) == 0.0)
            .collect();
        let good = added.iter().filter(|g| wanted.contains(g)).count() as f64;
        add += f1(
            div(good, added.len() as f64, 0.0),
            div(good, wanted.len() as f64, 0.0),
        );
    }
    (25.0 * keep, 25.0 * add, 25.0 * del)
}

pub fn load_instances(path: &str) -> Vec<EvalInstance> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            let refs: Vec<&str> = v["references"]
                .as_array()
                .unwrap()
                .iter()
                .map(|r| r.as_str().unwrap())
                .collect();
            EvalInstance::from_text(
                v["source"].as_str().unwrap(),
                v["hypothesis"].as_str().unwrap(),
                &refs,
            )
            .unwrap()
        })
        .collect()
}

pub fn mean(values: impl IntoIterator<Item = f64>) -> f64 {
    let v: Vec<f64> = values.into_iter().collect();
    v.iter().sum::<f64>() / v.len() as f64
}
