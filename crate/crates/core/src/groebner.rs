//! Ideal-level Buchberger algorithm, normal forms and elimination.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Var};

/// Remainder of `f` under full division by `basis` (first applicable divisor wins).
/// No term of the result is divisible by a leading monomial of `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let refs: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    reduce_by(f, &refs)
}

fn reduce_by(f: &Polynomial, basis: &[&Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rem = Vec::new();
    while let Some(lt) = p.leading_term() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().expect("nonzero").divides(&lt.mono));
        match divisor {
            Some(g) => {
                let q = g.leading_monomial().unwrap().quotient_of(&lt.mono).unwrap();
                let c = lt.coeff.div(g.leading_coeff().unwrap());
                p = p.sub_mul_term(&c, &q, g);
            }
            None => {
                let mut terms = p.into_terms();
                rem.push(terms.remove(0));
                p = Polynomial::from_sorted(&ring, terms);
            }
        }
    }
    Polynomial::from_sorted(&ring, rem)
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    let a = f.mul_term(&f.leading_coeff().unwrap().inv(), &lf.quotient_of(&l).unwrap());
    let b = lg.quotient_of(&l).unwrap();
    a.sub_mul_term(&g.leading_coeff().unwrap().inv(), &b, g)
}

/// Buchberger's criterion: every S-polynomial reduces to zero modulo `basis`.
pub fn is_groebner(basis: &[Polynomial]) -> bool {
    let nz: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    for i in 0..nz.len() {
        for j in i + 1..nz.len() {
            if !reduce_by(&s_polynomial(nz[i], nz[j]), &nz).is_zero() {
                return false;
            }
        }
    }
    true
}

struct Engine {
    basis: Vec<Polynomial>,
    active: Vec<bool>,
    /// (lcm degree, i, j) with i < j; the smallest key is processed first.
    pairs: BTreeSet<(u32, usize, usize)>,
}

impl Engine {
    fn lm(&self, i: usize) -> &Monomial {
        self.basis[i].leading_monomial().unwrap()
    }

    fn active_refs(&self) -> Vec<&Polynomial> {
        self.basis
            .iter()
            .zip(&self.active)
            .filter_map(|(g, &a)| a.then_some(g))
            .collect()
    }

    /// Gebauer–Möller installation of a new basis element.
    fn insert(&mut self, h: Polynomial) {
        let hi = self.basis.len();
        self.basis.push(h.monic());
        self.active.push(false);
        let lh = self.lm(hi).clone();

        let mut cands: VecDeque<(usize, Monomial, bool)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, self.lm(g).lcm(&lh), self.lm(g).is_coprime(&lh)))
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g, l, coprime)) = cands.pop_front() {
            let dominated = cands.iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l, coprime));
            }
        }

        let stale: Vec<(u32, usize, usize)> = self
            .pairs
            .iter()
            .copied()
            .filter(|&(_, a, b)| {
                let lab = self.lm(a).lcm(self.lm(b));
                lh.divides(&lab) && self.lm(a).lcm(&lh) != lab && self.lm(b).lcm(&lh) != lab
            })
            .collect();
        for p in stale {
            self.pairs.remove(&p);
        }
        for (g, l, coprime) in kept {
            if !coprime {
                self.pairs.insert((l.degree(), g, hi));
            }
        }

        for g in 0..hi {
            if self.active[g] && lh.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }
}

/// Reduced Gröbner basis (monic, interreduced, sorted by increasing leading
/// monomial) under the lex order of the generators' ring.
///
/// Pairs are processed by the normal strategy (smallest lcm degree first, ties
/// broken by basis index), pruned by the Gebauer–Möller criteria.
pub fn groebner_ideal(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut eng = Engine {
        basis: Vec::new(),
        active: Vec::new(),
        pairs: BTreeSet::new(),
    };
    for g in gens.iter().filter(|g| !g.is_zero()) {
        eng.insert(g.clone());
    }
    while let Some((_, i, j)) = eng.pairs.pop_first() {
        let s = s_polynomial(&eng.basis[i], &eng.basis[j]);
        let h = reduce_by(&s, &eng.active_refs());
        if !h.is_zero() {
            eng.insert(h);
        }
    }
    let survivors: Vec<Polynomial> = eng.active_refs().into_iter().cloned().collect();
    reduce_basis(survivors)
}

/// Turn a Gröbner basis into the reduced one.
pub(crate) fn reduce_basis(mut g: Vec<Polynomial>) -> Vec<Polynomial> {
    g.retain(|p| !p.is_zero());
    g.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in g {
        let lm = p.leading_monomial().unwrap();
        if !minimal.iter().any(|q| q.leading_monomial().unwrap().divides(lm)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q)
            .collect();
        out.push(reduce_by(&minimal[i], &others).monic());
    }
    out
}

/// Generators of `(gens) ∩ F[remaining variables]`. The ring's lex order must
/// list exactly `drop_vars` before every other variable.
pub fn eliminate(gens: &[Polynomial], drop_vars: &[Var]) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring();
    let k = drop_vars.len();
    let mut leading: Vec<Var> = ring.vars().iter().take(k).copied().collect();
    let mut wanted = drop_vars.to_vec();
    leading.sort();
    wanted.sort();
    if leading != wanted || ring.num_vars() < k {
        return Err(Error::Config(format!(
            "elimination needs the dropped variables to be greatest in {ring}"
        )));
    }
    let gb = groebner_ideal(gens);
    Ok(gb
        .into_iter()
        .filter(|p| drop_vars.iter().all(|&v| !p.contains_var(v)))
        .collect())
}

/// Whether two generating sets define the same ideal.
pub fn ideal_equal(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let ga = groebner_ideal(a);
    let gb = groebner_ideal(b);
    a.iter().all(|f| normal_form(f, &gb).is_zero()) && b.iter().all(|f| normal_form(f, &ga).is_zero())
}

/// Ideal membership via a Gröbner basis of `gens`.
pub fn ideal_contains(gens: &[Polynomial], f: &Polynomial) -> bool {
    normal_form(f, &groebner_ideal(gens)).is_zero()
}
