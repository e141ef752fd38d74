//! Hilbert functions of `F[t]/I` and `Ξ/K` by two independent routes:
//! standard monomials of a Gröbner basis, and ranks of the images in `Ω[z^{-1}]`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::groebner::groebner_ideal;
use crate::linalg::SparseEchelon;
use crate::modgroebner::{module_groebner, Label, ModuleElement, ModuleOrder};
use crate::poly::{Monomial, Polynomial, Var};
use crate::relations::t_ring;
use crate::superalg::{ExtSubset, OmegaElement, XiElement};

use super::kernel::{kernel_i, kernel_k_degree_with};
use super::localized::Evaluator;
use super::{xi_to_module, Report};

/// Dimensions by topological degree `d = 2·deg_t + |B|`, for `d = 0..=max_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertTable {
    pub is_super: bool,
    pub standard: Vec<u128>,
    pub rank: Vec<u128>,
}

impl HilbertTable {
    pub fn agrees(&self) -> bool {
        self.standard == self.rank
    }
}

/// Exponent vectors of total degree `k` in `m` variables.
fn exponent_vectors(m: usize, k: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in exponent_vectors(m - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `(t-degree, odd degree)` pairs with `2k + r = d`.
fn splits(d: usize, m: usize, is_super: bool) -> Vec<(u32, usize)> {
    (0..=d)
        .filter(|r| (d - r).is_multiple_of(2) && (*r == 0 || (is_super && *r <= m)))
        .map(|r| (((d - r) / 2) as u32, r))
        .collect()
}

fn spanning_count(m: usize, d: usize, is_super: bool) -> u128 {
    splits(d, m, is_super)
        .into_iter()
        .map(|(k, r)| binom(k as u128 + m as u128 - 1, m as u128 - 1) * binom(m as u128, r as u128))
        .sum()
}

pub fn hilbert(arr: &Arrangement, is_super: bool, max_degree: usize, caps: &Caps) -> Result<HilbertTable> {
    let m = arr.m();
    for d in 0..=max_degree {
        let c = spanning_count(m, d, is_super);
        if c > caps.family {
            return Err(Error::cap(format!("spanning monomials in degree {d}"), c, caps.family));
        }
    }
    let ring = t_ring(arr);
    let mono = |a: &[u32]| {
        Monomial::from_exponents(
            a.iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| (ring.rank(Var::T(i as u32 + 1)).unwrap(), *e)),
        )
    };
    let kernel = kernel_i(arr);

    // Leading terms per odd degree.
    let max_r = if is_super { m.min(max_degree) } else { 0 };
    let mut leads: Vec<Vec<(Label, Monomial)>> = Vec::new();
    for r in 0..=max_r {
        let lt = if r == 0 && !is_super {
            groebner_ideal(&kernel)
                .iter()
                .map(|g| (Label::subset(ExtSubset::empty()), g.leading_monomial().unwrap().clone()))
                .collect()
        } else {
            let gens: Vec<ModuleElement> = kernel_k_degree_with(arr, r, &kernel)
                .iter()
                .map(|e| xi_to_module(e, ModuleOrder::Top))
                .collect();
            module_groebner(&gens)
                .iter()
                .map(|g| {
                    let t = g.leading().unwrap();
                    (t.label, t.mono.clone())
                })
                .collect()
        };
        leads.push(lt);
    }

    let mut ev = Evaluator::new(arr);
    let x = ev.x_ring().clone();
    let all_forms = (1..=m).fold(Polynomial::one(&x), |acc, i| &acc * &super::form_poly(arr, i, &x));
    let mut standard = Vec::new();
    let mut rank = Vec::new();
    for d in 0..=max_degree {
        let mut std_count = 0u128;
        let mut images: Vec<(u32, OmegaElement)> = Vec::new();
        for (k, r) in splits(d, m, is_super) {
            let vectors = exponent_vectors(m, k);
            for b in arr.all().subsets_of_size(r) {
                for a in &vectors {
                    let mn = mono(a);
                    let label = Label::subset(b);
                    if !leads[r].iter().any(|(l, lm)| *l == label && lm.divides(&mn)) {
                        std_count += 1;
                    }
                    let e = XiElement::from_component(&ring, b, Polynomial::monomial(&ring, arr.field().one(), mn));
                    let img = ev.psi(&e);
                    images.push((img.denominator_exp, img.numerator));
                }
            }
        }
        let common = images.iter().map(|(n, _)| *n).max().unwrap_or(0);
        let mut ech: SparseEchelon<(ExtSubset, Monomial)> = SparseEchelon::new();
        for (n, num) in images {
            let lifted = num.mul_poly(&all_forms.pow(common - n));
            let v: BTreeMap<(ExtSubset, Monomial), _> = lifted
                .components()
                .iter()
                .flat_map(|(key, p)| p.terms().iter().map(move |t| ((*key, t.mono.clone()), t.coeff.clone())))
                .collect();
            ech.insert(v);
        }
        standard.push(std_count);
        rank.push(ech.rank() as u128);
    }
    Ok(HilbertTable { is_super, standard, rank })
}

pub fn verify_hilbert(arr: &Arrangement, is_super: bool, max_degree: usize, caps: &Caps) -> Result<Report> {
    let table = hilbert(arr, is_super, max_degree, caps)?;
    let mut rep = Report::new("hilbert", arr);
    rep.detail("super", is_super);
    rep.detail("standard", &table.standard);
    rep.detail("rank", &table.rank);
    for (d, (a, b)) in table.standard.iter().zip(&table.rank).enumerate() {
        if a != b {
            rep.fail(format!("degree {d}: {a} standard monomials, rank {b}"));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn enumeration_helpers() {
        assert_eq!(exponent_vectors(3, 2).len(), 6);
        assert_eq!(exponent_vectors(0, 0), vec![Vec::<u32>::new()]);
        assert_eq!(binom(5, 2), 10);
        assert_eq!(splits(4, 3, true), vec![(2, 0), (1, 2)]);
        assert_eq!(splits(3, 3, false), vec![]);
    }

    #[test]
    fn boolean_is_polynomial_ring() {
        // Nothing is killed: dimensions are binomial counts.
        let b = Arrangement::from_ints(Field::Prime(3), 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let t = hilbert(&b, false, 6, &Caps::default()).unwrap();
        assert_eq!(t.standard, vec![1, 0, 2, 0, 3, 0, 4]);
        assert!(t.agrees());
        let s = hilbert(&b, true, 4, &Caps::default()).unwrap();
        assert_eq!(s.standard, vec![1, 2, 3, 4, 5]);
        assert!(s.agrees());
    }

    #[test]
    fn three_lines_agree() {
        let e2 = Arrangement::from_ints(Field::Rational, 2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        let t = hilbert(&e2, false, 6, &Caps::default()).unwrap();
        // Hypersurface of degree 2 in 3 variables.
        assert_eq!(t.standard, vec![1, 0, 3, 0, 5, 0, 7]);
        assert!(t.agrees());
        let s = hilbert(&e2, true, 6, &Caps::default()).unwrap();
        assert!(s.agrees(), "{s:?}");
    }
}
