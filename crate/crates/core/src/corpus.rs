//! The verification corpus: every small arrangement over a few prime fields
//! plus seeded random arrangements over `Q`, and a parallel check runner.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{Arrangement, ArrangementSpec, FieldSpec};
use crate::caps::Caps;
use crate::error::Result;
use crate::oracle::{
    verify_kernel_consistency, verify_lemma7, verify_minimal, verify_stratification, verify_theorem1,
    verify_theorem2, Report,
};

pub const DEFAULT_SEED: u64 = 20_240_521;

/// `(p, max n, max m)` for the exhaustive part.
pub const FINITE_RANGES: [(u64, usize, usize); 3] = [(2, 3, 5), (3, 2, 4), (5, 2, 3)];

pub const RANDOM_RATIONAL: usize = 20;

/// Nonzero vectors of `F_p^n` with entries in `0..p`, in lexicographic order.
fn nonzero_vectors(p: u64, n: usize) -> Vec<Vec<i64>> {
    let total = (p as usize).pow(n as u32);
    (1..total)
        .map(|mut k| {
            let mut v = vec![0i64; n];
            for slot in v.iter_mut().rev() {
                *slot = (k % p as usize) as i64;
                k /= p as usize;
            }
            v
        })
        .collect()
}

/// Multisets of size `m` from `0..k` as nondecreasing index lists.
fn multisets(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(k, m, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, m, 0, &mut Vec::new(), &mut out);
    out
}

/// All arrangements over `F_p` with `n ≤ max_n`, `1 ≤ m ≤ max_m`, one per
/// multiset of forms.
pub fn finite_instances(p: u64, max_n: usize, max_m: usize) -> Vec<ArrangementSpec> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let vectors = nonzero_vectors(p, n);
        for m in 1..=max_m {
            for ms in multisets(vectors.len(), m) {
                out.push(ArrangementSpec {
                    field: FieldSpec::Prime { p },
                    n,
                    hyperplanes: ms.iter().map(|&i| vectors[i].clone()).collect(),
                    names: None,
                });
            }
        }
    }
    out
}

/// `count` arrangements over `Q` with `n ≤ 3`, `m ≤ 5` and entries in `-3..=3`.
pub fn random_rational(seed: u64, count: usize) -> Vec<ArrangementSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=5);
            let hyperplanes = (0..m)
                .map(|_| loop {
                    let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                    if v.iter().any(|&c| c != 0) {
                        break v;
                    }
                })
                .collect();
            ArrangementSpec {
                field: FieldSpec::Rational,
                n,
                hyperplanes,
                names: None,
            }
        })
        .collect()
}

pub fn generate(seed: u64) -> Vec<ArrangementSpec> {
    let mut out: Vec<ArrangementSpec> = FINITE_RANGES
        .iter()
        .flat_map(|&(p, n, m)| finite_instances(p, n, m))
        .collect();
    out.extend(random_rational(seed, RANDOM_RATIONAL));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceReport {
    pub index: usize,
    pub spec: ArrangementSpec,
    pub checks: Vec<Report>,
    pub errors: Vec<String>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.checks.iter().all(Report::passed)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusReport {
    pub seed: u64,
    pub summary: BTreeMap<String, Tally>,
    pub errors: usize,
    pub instances: Vec<InstanceReport>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.errors == 0 && self.summary.values().all(|t| t.fail == 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Theorem checks, kernel self-consistency and the relation identities; the
/// minimal-relation check when `m − rank ≥ 2` over a finite field; point
/// counts over a finite field.
pub fn battery(arr: &Arrangement, caps: &Caps) -> (Vec<Report>, Vec<String>) {
    let mut checks = Vec::new();
    let mut errors = Vec::new();
    let mut record = |r: Result<Report>| match r {
        Ok(rep) => checks.push(rep),
        Err(e) => errors.push(e.to_string()),
    };
    record(verify_theorem1(arr, caps));
    record(verify_theorem2(arr, caps));
    record(Ok(verify_kernel_consistency(arr)));
    record(verify_lemma7(arr));
    if arr.field().is_finite() {
        if arr.m() - arr.rank() >= 2 {
            record(verify_minimal(arr, caps));
        }
        record(verify_stratification(arr, caps));
    }
    (checks, errors)
}

pub fn run(specs: &[ArrangementSpec], seed: u64, caps: &Caps) -> CorpusReport {
    let instances: Vec<InstanceReport> = specs
        .par_iter()
        .enumerate()
        .map(|(index, spec)| {
            let (checks, errors) = match spec.build() {
                Ok(arr) => battery(&arr, caps),
                Err(e) => (Vec::new(), vec![e.to_string()]),
            };
            InstanceReport {
                index,
                spec: spec.clone(),
                checks,
                errors,
            }
        })
        .collect();
    let mut summary: BTreeMap<String, Tally> = BTreeMap::new();
    let mut errors = 0;
    for inst in &instances {
        errors += inst.errors.len();
        for c in &inst.checks {
            let t = summary.entry(c.check.clone()).or_default();
            if c.passed() {
                t.pass += 1;
            } else {
                t.fail += 1;
            }
        }
    }
    CorpusReport {
        seed,
        summary,
        errors,
        instances,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        // Multisets of size m from k items: C(k + m - 1, m).
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(nonzero_vectors(3, 2).len(), 8);
        assert_eq!(finite_instances(2, 2, 2).len(), 1 + 1 + 3 + 6);
        assert_eq!(finite_instances(5, 1, 3).len(), 4 + 10 + 20);
    }

    #[test]
    fn random_part_is_seeded() {
        let a = random_rational(3, 5);
        assert_eq!(a, random_rational(3, 5));
        assert_ne!(a, random_rational(4, 5));
        for s in &a {
            assert!((1..=3).contains(&s.n) && (1..=5).contains(&s.hyperplanes.len()));
            assert!(s.hyperplanes.iter().all(|v| v.iter().any(|&c| c != 0) && v.iter().all(|c| c.abs() <= 3)));
        }
    }

    #[test]
    fn small_run_is_clean_and_stable() {
        let specs = finite_instances(2, 2, 3);
        let a = run(&specs, 0, &Caps::default());
        assert!(a.passed(), "{}", a.to_json());
        assert_eq!(a.to_json(), run(&specs, 0, &Caps::default()).to_json());
    }
}
