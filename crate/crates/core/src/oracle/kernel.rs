//! Kernels of `h` and `ψ` computed from scratch by elimination and preimages.

use std::sync::Arc;

use crate::arrangement::Arrangement;
use crate::error::Result;
use crate::groebner::eliminate;
use crate::modgroebner::{module_preimage, Label, ModuleElement, ModuleOrder};
use crate::oracle::localized::form_poly;
use crate::poly::{Monomial, Polynomial, Ring, Var};
use crate::relations::t_ring;
use crate::superalg::{ExtSubset, XiElement};

fn x_vars(n: usize) -> Vec<Var> {
    (1..=n as u32).rev().map(Var::X).collect()
}

/// Eliminate `x` from `gens` built in `base` extended by `x_n > … > x_1`.
pub(crate) fn eliminate_x(
    arr: &Arrangement,
    base: &Arc<Ring>,
    build: impl Fn(&Arc<Ring>, &dyn Fn(usize) -> Polynomial) -> Vec<Polynomial>,
) -> Result<Vec<Polynomial>> {
    let xs = x_vars(arr.n());
    let big = base.with_leading_vars(&xs)?;
    let z = |i: usize| form_poly(arr, i, &big);
    let gens = build(&big, &z);
    eliminate(&gens, &xs)?
        .into_iter()
        .map(|p| p.to_ring(base))
        .collect()
}

/// Generators of `Ker(h)`: `({z_i(x)·t_i − 1}) ∩ F[t]` under `x_n > … > x_1 > t_m > … > t_1`.
pub fn kernel_i(arr: &Arrangement) -> Vec<Polynomial> {
    let ring = t_ring(arr);
    eliminate_x(arr, &ring, |big, z| {
        (1..=arr.m())
            .map(|i| {
                let t = Polynomial::var(big, Var::T(i as u32)).unwrap();
                &(&z(i) * &t) - &Polynomial::one(big)
            })
            .collect()
    })
    .expect("x variables lead the elimination order")
}

fn t_monomial(ring: &Ring, s: ExtSubset) -> Monomial {
    Monomial::from_exponents(s.iter().map(|i| (ring.rank(Var::T(i as u32)).unwrap(), 1)))
}

/// `e_{I'}`-coordinates of `t_I·dz_I` for every `|I| = r`, ascending bitmask order.
pub fn p_r_columns(arr: &Arrangement, ring: &Arc<Ring>, r: usize) -> (Vec<ExtSubset>, Vec<ModuleElement>) {
    let index_sets: Vec<ExtSubset> = arr.all().subsets_of_size(r).collect();
    let cols = index_sets
        .iter()
        .map(|&i| {
            let tm = t_monomial(ring, i);
            ModuleElement::from_entries(
                ring,
                ModuleOrder::Top,
                arr.expand_dz(i)
                    .into_iter()
                    .map(|(k, c)| (Label::subset(k), Polynomial::monomial(ring, c, tm.clone()))),
            )
        })
        .collect();
    (index_sets, cols)
}

/// `N_r`: `g·e_{I'}` for `g` generating `Ker(h)` and `I' ⊆ basis`, `|I'| = r`.
pub fn n_r_generators(arr: &Arrangement, ring: &Arc<Ring>, kernel: &[Polynomial], r: usize) -> Vec<ModuleElement> {
    let mut out = Vec::new();
    for ip in arr.basis_set().subsets_of_size(r) {
        for g in kernel {
            out.push(ModuleElement::from_entries(ring, ModuleOrder::Top, [(Label::subset(ip), g.clone())]));
        }
    }
    out
}

/// Degree-`r` part of `Ker(ψ)` as `{Σ f_I u_I : Σ f_I t_I dz_I ∈ N_r}`.
pub fn kernel_k_degree(arr: &Arrangement, r: usize) -> Vec<XiElement> {
    kernel_k_degree_with(arr, r, &kernel_i(arr))
}

pub fn kernel_k_degree_with(arr: &Arrangement, r: usize, kernel: &[Polynomial]) -> Vec<XiElement> {
    let ring = t_ring(arr);
    let (index_sets, cols) = p_r_columns(arr, &ring, r);
    if index_sets.is_empty() {
        return Vec::new();
    }
    let n_r = n_r_generators(arr, &ring, kernel, r);
    module_preimage(&cols, &n_r)
        .into_iter()
        .map(|f| XiElement::from_components(&ring, index_sets.iter().copied().zip(f)))
        .filter(|e| !e.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::groebner::ideal_equal;
    use crate::relations::{p_of_l, p_of_ls};
    use crate::text::parse_polynomial;

    fn f2(n: usize, forms: &[Vec<i64>]) -> Arrangement {
        Arrangement::from_ints(Field::Prime(2), n, forms).unwrap()
    }

    #[test]
    fn kernel_i_examples() {
        let boolean = f2(2, &[vec![1, 0], vec![0, 1]]);
        assert!(kernel_i(&boolean).is_empty());
        let e1 = f2(4, &[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1], vec![1, 0, 0, 1]]);
        let r = t_ring(&e1);
        let pl = parse_polynomial("t2*t3*t4 + t1*t3*t4 + t1*t2*t4 + t1*t2*t3", &r).unwrap();
        assert!(ideal_equal(&kernel_i(&e1), &[pl]));
        let e3 = f2(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        let r = t_ring(&e3);
        let pl = parse_polynomial("t1*t2 + t1*t3 + t2*t3", &r).unwrap();
        assert!(ideal_equal(&kernel_i(&e3), &[pl]));
    }

    #[test]
    fn kernel_k_examples() {
        let e2 = Arrangement::from_ints(Field::Rational, 2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        let r = t_ring(&e2);
        let k0: Vec<Polynomial> = kernel_k_degree(&e2, 0).iter().map(|e| e.component(ExtSubset::empty())).collect();
        assert!(ideal_equal(&k0, &kernel_i(&e2)));
        let l = e2.circuits().remove(0);
        assert!(ideal_equal(&k0, &[p_of_l(&r, &l)]));
        let k2 = kernel_k_degree(&e2, 2);
        let target = p_of_ls(&r, &l, ExtSubset::from_indices([1, 2])).unwrap();
        let labels = |e: &XiElement| {
            ModuleElement::from_entries(&r, ModuleOrder::Top, e.components().iter().map(|(k, p)| (Label::subset(*k), p.clone())))
        };
        let gens: Vec<ModuleElement> = k2.iter().map(labels).collect();
        assert!(crate::modgroebner::module_contains(&gens, &labels(&target)));
        let boolean = f2(2, &[vec![1, 0], vec![0, 1]]);
        for deg in 0..=2 {
            assert!(kernel_k_degree(&boolean, deg).is_empty());
        }
    }
}
