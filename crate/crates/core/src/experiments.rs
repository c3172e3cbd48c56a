//! Repeated randomized trials, oracle consistency sweeps and the sharpness
//! trend of the probabilistic lower bound on regular graphs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundKind};
use crate::error::{Error, Result};
use crate::graph::{Family, Graph};
use crate::packing::{self, PackingInstance};

/// Identifier of the per-trial seed rule, recorded alongside results.
pub const SEED_RULE: &str = "splitmix64";

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64_finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index`: output number `index` of a SplitMix64 stream whose
/// state starts at `master_seed`.
pub fn trial_seed(master_seed: u64, index: u64) -> u64 {
    splitmix64_finalize(master_seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrialStats {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub trials: usize,
    pub sizes: Vec<usize>,
    pub mean: f64,
    pub max: usize,
    pub min: usize,
    pub seed: u64,
    pub seed_rule: String,
    /// Probabilistic lower bound for the instance, when `Δ ≥ k`.
    pub lower_bound: Option<f64>,
}

/// Runs `trials` independent randomized packings in parallel. Results are
/// collected by trial index, so they do not depend on scheduling.
pub fn run_trials(
    inst: &PackingInstance<'_>,
    trials: usize,
    master_seed: u64,
) -> Result<TrialStats> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let g = inst.graph();
    let delta = g.max_degree()?;
    let sizes = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let result = packing::randomized_packing(inst, trial_seed(master_seed, i))?;
            if !packing::verify_packing(inst, &result.set)? {
                return Err(Error::NotAPacking { k: inst.k() });
            }
            Ok(result.size)
        })
        .collect::<Result<Vec<_>>>()?;

    let max = *sizes.iter().max().expect("trials >= 1");
    let min = *sizes.iter().min().expect("trials >= 1");
    let mean = sizes.iter().sum::<usize>() as f64 / trials as f64;
    Ok(TrialStats {
        n: g.n(),
        m: g.m(),
        k: inst.k(),
        trials,
        sizes,
        mean,
        max,
        min,
        seed: master_seed,
        seed_rule: SEED_RULE.to_string(),
        lower_bound: bounds::probabilistic_lower_bound(g.n(), delta, inst.k()),
    })
}

/// Absolute slack when comparing a real-valued bound to an integer.
const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SandwichRow {
    pub label: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub connected: bool,
    /// `None` when the instance was skipped.
    pub lk: Option<usize>,
    /// `None` when `δ < k - 1` (undefined) or the instance was skipped.
    pub ktuple_domination: Option<usize>,
    pub domination: Option<usize>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SandwichReport {
    pub rows: Vec<SandwichRow>,
    pub violations: Vec<String>,
    pub skipped: usize,
}

/// A labelled instance for [`sandwich_sweep`].
#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub label: String,
    pub graph: Graph,
    pub k: usize,
}

/// For each instance, computes `L_k`, `γ_{×k}` (when defined) and `γ`, and
/// checks every applicable closed-form bound, `L_k ≤ γ_{×k}` and `L_1 ≤ γ`.
pub fn sandwich_sweep(corpus: &[CorpusItem], oracle_cap: usize) -> Result<SandwichReport> {
    let outcomes = corpus
        .par_iter()
        .map(|item| sandwich_one(item, oracle_cap))
        .collect::<Result<Vec<_>>>()?;
    let mut report = SandwichReport::default();
    for (row, violations) in outcomes {
        if row.lk.is_none() {
            report.skipped += 1;
        }
        report.violations.extend(violations);
        report.rows.push(row);
    }
    Ok(report)
}

fn sandwich_one(item: &CorpusItem, cap: usize) -> Result<(SandwichRow, Vec<String>)> {
    let g = &item.graph;
    let k = item.k;
    let mut row = SandwichRow {
        label: item.label.clone(),
        n: g.n(),
        m: g.m(),
        k,
        connected: g.is_connected(),
        lk: None,
        ktuple_domination: None,
        domination: None,
        note: None,
    };
    if g.n() > cap {
        row.note = Some(format!(
            "skipped: {} vertices above oracle cap {cap}",
            g.n()
        ));
        return Ok((row, Vec::new()));
    }
    let inst = PackingInstance::new(g, k)?;
    let lk = packing::exact_lk(&inst, cap)?.size;
    let ktuple = match packing::exact_ktuple_domination(&inst, cap) {
        Ok(r) => Some(r.size),
        Err(Error::Undefined(_)) => {
            row.note = Some("k-tuple domination undefined: min degree < k - 1".into());
            None
        }
        Err(e) => return Err(e),
    };
    let domination = packing::exact_ktuple_domination(&PackingInstance::new(g, 1)?, cap)?.size;
    row.lk = Some(lk);
    row.ktuple_domination = ktuple;
    row.domination = Some(domination);

    let mut violations = Vec::new();
    let lkf = lk as f64;
    let report = bounds::bound_report_with_ktuple(g, k, ktuple)?;
    for e in &report.entries {
        let Some(v) = e.value else { continue };
        let broken = match e.kind {
            BoundKind::Lower => lkf < v - BOUND_SLACK,
            BoundKind::Upper => lkf > v + BOUND_SLACK,
            BoundKind::Exact => (lkf - v).abs() > BOUND_SLACK,
        };
        if broken {
            violations.push(format!("{}: L_{k} = {lk} vs {} = {v}", item.label, e.name));
        }
    }
    let l1 = if k == 1 {
        lk
    } else {
        packing::exact_lk(&PackingInstance::new(g, 1)?, cap)?.size
    };
    if l1 > domination {
        violations.push(format!(
            "{}: L_1 = {l1} exceeds domination number {domination}",
            item.label
        ));
    }
    Ok((row, violations))
}

/// Seeded corpus: `G(n, p)` for `n ∈ 5..=10`, `p ∈ {0.2, 0.5, 0.8}`,
/// three graphs per cell and `k ∈ {1, 2, 3}`, plus cycles, paths, stars, complete
/// and rook graphs.
pub fn default_corpus(seed: u64) -> Result<Vec<CorpusItem>> {
    let mut items = Vec::new();
    let mut push = |label: String, graph: Graph, ks: &[usize]| {
        for &k in ks {
            items.push(CorpusItem {
                label: format!("{label} k={k}"),
                graph: graph.clone(),
                k,
            });
        }
    };
    let mut index = 0u64;
    for n in 5..=10 {
        for p in [0.2, 0.5, 0.8] {
            for rep in 0..3 {
                let s = trial_seed(seed, index);
                index += 1;
                let g = Family::Gnp { n, p, seed: s }.generate()?;
                push(format!("gnp n={n} p={p} rep={rep}"), g, &[1, 2, 3]);
            }
        }
    }
    for n in 3..=8 {
        push(
            format!("cycle n={n}"),
            Family::Cycle { n }.generate()?,
            &[1, 2],
        );
        push(
            format!("path n={n}"),
            Family::Path { n }.generate()?,
            &[1, 2],
        );
        push(
            format!("star n={n}"),
            Family::Star { n }.generate()?,
            &[1, 2],
        );
    }
    for n in 1..=6 {
        let ks: Vec<usize> = (1..=n + 1).collect();
        push(
            format!("complete n={n}"),
            Family::Complete { n }.generate()?,
            &ks,
        );
    }
    for n in 2..=4 {
        push(
            format!("rook n={n}"),
            Family::Rook { n }.generate()?,
            &[1, 2],
        );
    }
    Ok(items)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SharpnessRow {
    pub k: usize,
    pub ratio: f64,
}

/// For `k = Δ = 1..=k_max`, the probabilistic lower-bound coefficient divided
/// by the `k / (k+1)` upper coefficient. Equals `(k+1)^{-1/k}`.
pub fn sharpness_sweep(k_max: usize) -> Result<Vec<SharpnessRow>> {
    if k_max == 0 {
        return Err(Error::InvalidParameter("k_max must be at least 1".into()));
    }
    Ok((1..=k_max)
        .map(|k| {
            let lower = bounds::probabilistic_lower_coefficient(k, k).expect("k = Δ >= 1");
            SharpnessRow {
                k,
                ratio: lower * (k as f64 + 1.0) / k as f64,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::DEFAULT_ORACLE_CAP;

    #[test]
    fn splitmix_reference_values() {
        // Reference outputs of SplitMix64 seeded with 1234567.
        let expected = [
            6457827717110365317u64,
            3203168211198807973,
            9817491932198370423,
            4593380528125082431,
            16408922859458223821,
        ];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(trial_seed(1234567, i as u64), e);
        }
    }

    #[test]
    fn complete_graph_trials() {
        let g = Family::Complete { n: 4 }.generate().unwrap();
        let inst = PackingInstance::new(&g, 1).unwrap();
        let stats = run_trials(&inst, 50, 9).unwrap();
        assert_eq!((stats.max, stats.min, stats.trials), (1, 1, 50));
        assert_eq!(stats.sizes.len(), 50);
    }

    #[test]
    fn trials_are_reproducible_and_ordered() {
        let g = Family::RandomRegular {
            n: 60,
            d: 6,
            seed: 3,
        }
        .generate()
        .unwrap();
        let inst = PackingInstance::new(&g, 2).unwrap();
        let a = run_trials(&inst, 200, 42).unwrap();
        let b = run_trials(&inst, 200, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.max as f64 >= a.mean && a.mean >= a.min as f64);
        let bound = a.lower_bound.unwrap();
        assert!(a.max as f64 >= bound.ceil());
        for (i, &size) in a.sizes.iter().enumerate() {
            let r = packing::randomized_packing(&inst, trial_seed(42, i as u64)).unwrap();
            assert_eq!(r.size, size);
        }
        assert!(run_trials(&inst, 0, 1).is_err());
    }

    #[test]
    fn cycles_have_no_violations() {
        let corpus: Vec<CorpusItem> = (3..=8)
            .flat_map(|n| {
                [1, 2].map(|k| CorpusItem {
                    label: format!("C{n}"),
                    graph: Family::Cycle { n }.generate().unwrap(),
                    k,
                })
            })
            .collect();
        let report = sandwich_sweep(&corpus, DEFAULT_ORACLE_CAP).unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        assert_eq!(report.rows.len(), 12);
    }

    #[test]
    fn rook_and_complete_rows() {
        let corpus = vec![
            CorpusItem {
                label: "rook3".into(),
                graph: Family::Rook { n: 3 }.generate().unwrap(),
                k: 1,
            },
            CorpusItem {
                label: "K5".into(),
                graph: Family::Complete { n: 5 }.generate().unwrap(),
                k: 6,
            },
            CorpusItem {
                label: "big".into(),
                graph: Family::Cycle { n: 12 }.generate().unwrap(),
                k: 1,
            },
        ];
        let report = sandwich_sweep(&corpus, 10).unwrap();
        assert!(report.violations.is_empty());
        let rook = &report.rows[0];
        assert_eq!((rook.lk, rook.ktuple_domination), (Some(1), Some(3)));
        let k5 = &report.rows[1];
        assert_eq!((k5.lk, k5.ktuple_domination), (Some(5), None));
        assert!(k5.note.as_deref().unwrap().contains("undefined"));
        assert_eq!(report.rows[2].lk, None);
        assert_eq!(report.skipped, 1);
    }

    #[test]
    fn default_corpus_is_large_enough() {
        let corpus = default_corpus(1).unwrap();
        assert!(corpus.len() >= 200, "{}", corpus.len());
        assert!(corpus.iter().all(|c| c.graph.n() <= DEFAULT_ORACLE_CAP));
    }

    #[test]
    fn sharpness_values() {
        let rows = sharpness_sweep(100).unwrap();
        assert!((rows[0].ratio - 0.5).abs() < 1e-12);
        assert!((rows[2].ratio - 4f64.powf(-1.0 / 3.0)).abs() < 1e-12);
        assert!((rows[2].ratio - 0.63).abs() < 0.001);
        for w in rows.windows(2) {
            assert!(w[1].ratio > w[0].ratio);
        }
        for r in &rows {
            let closed = (r.k as f64 + 1.0).powf(-1.0 / r.k as f64);
            assert!((r.ratio - closed).abs() < 1e-12);
        }
        // first k with ratio above 0.9
        let first = rows.iter().find(|r| r.ratio > 0.9).unwrap();
        assert_eq!(first.k, 34);
        assert!(sharpness_sweep(0).is_err());
    }
}
