//! Direct check that an explicit finite family is a Gröbner basis of the
//! module used to compute `Ker(ψ)` in degree `r`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use crate::arrangement::Arrangement;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::modgroebner::{first_nonzero_remainder, module_equal, Label, ModuleElement, ModuleOrder};
use crate::poly::{Monomial, Polynomial, Ring, Var};
use crate::relations::{p_of_l, t_ring};
use crate::superalg::ExtSubset;

use super::Report;

fn t_mono(ring: &Ring, s: ExtSubset) -> Monomial {
    Monomial::from_exponents(s.iter().map(|i| (ring.rank(Var::T(i as u32)).unwrap(), 1)))
}

/// `Σ_I a_I dz_I` in the basis `e_{I'}`, each coordinate scaled by `f`.
fn combination(
    arr: &Arrangement,
    ring: &Arc<Ring>,
    index_sets: &[ExtSubset],
    a: &[Scalar],
    f: &Polynomial,
) -> ModuleElement {
    let mut coords: BTreeMap<ExtSubset, Scalar> = BTreeMap::new();
    for (i, c) in index_sets.iter().zip(a) {
        if c.is_zero() {
            continue;
        }
        for (k, v) in arr.expand_dz(*i) {
            let e = coords.entry(k).or_insert_with(|| arr.field().zero());
            *e = &*e + &(c * &v);
        }
    }
    ModuleElement::from_entries(
        ring,
        ModuleOrder::Top,
        coords
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Label::subset(k), f.scale(&c))),
    )
}

/// Every vector of `F_p^n` except zero, in little-endian counting order.
fn nonzero_vectors(elems: &[Scalar], n: usize) -> impl Iterator<Item = Vec<Scalar>> + '_ {
    let p = elems.len();
    let total = p.pow(n as u32);
    (1..total).map(move |mut k| {
        (0..n)
            .map(|_| {
                let d = k % p;
                k /= p;
                elems[d].clone()
            })
            .collect()
    })
}

/// Over a finite field: the family
/// `{s·t_{∪I}·Σ a_I e_I} ∪ {(1−s)·P_L·e_{I'}} ∪ {P_L·t_{∪I∖|L|}·Σ a_I e_I}`
/// (over all relations `L`, basis subsets `I'` and coefficient vectors `a`)
/// has no nonzero S-vector remainder and generates the same module as
/// `{s·t_I dz_I} ∪ {(1−s)·P_L·e_{I'}}`.
pub fn verify_groebner_lemma(arr: &Arrangement, r: usize, caps: &Caps) -> Result<Report> {
    let Some(elems) = arr.field().elements() else {
        return Err(Error::Config("the family enumerates coefficient vectors over a finite field".into()));
    };
    let relations = arr.all_relations(caps)?;
    let mut seen = HashSet::new();
    let relations: Vec<_> = relations.into_iter().map(|l| l.normalized()).filter(|l| seen.insert(l.clone())).collect();
    let index_sets: Vec<ExtSubset> = arr.all().subsets_of_size(r).collect();
    let basis_sets: Vec<ExtSubset> = arr.basis_set().subsets_of_size(r).collect();
    let vectors = (elems.len() as u128)
        .checked_pow(index_sets.len() as u32)
        .unwrap_or(u128::MAX);
    let size = (vectors - 1)
        .saturating_mul(1 + relations.len() as u128)
        .saturating_add((relations.len() * basis_sets.len()) as u128);
    if size > caps.family {
        return Err(Error::cap("elements of the module family", size, caps.family));
    }

    let ring = t_ring(arr).with_leading_vars(&[Var::S])?;
    let s = Polynomial::var(&ring, Var::S)?;
    let one_minus_s = &Polynomial::one(&ring) - &s;
    let p_l: Vec<Polynomial> = relations.iter().map(|l| p_of_l(&ring, l)).collect();

    let mut family = Vec::new();
    let mut keys = HashSet::new();
    let mut push = |v: ModuleElement, family: &mut Vec<ModuleElement>| {
        if !v.is_zero() && keys.insert(v.monic()) {
            family.push(v);
        }
    };
    for a in nonzero_vectors(&elems, index_sets.len()) {
        let union = index_sets
            .iter()
            .zip(&a)
            .filter(|(_, c)| !c.is_zero())
            .fold(ExtSubset::empty(), |acc, (i, _)| acc.union(*i));
        let tu = Polynomial::monomial(&ring, arr.field().one(), t_mono(&ring, union));
        push(combination(arr, &ring, &index_sets, &a, &(&s * &tu)), &mut family);
        for (l, p) in relations.iter().zip(&p_l) {
            let rest = Polynomial::monomial(&ring, arr.field().one(), t_mono(&ring, union.minus(l.support_set())));
            push(combination(arr, &ring, &index_sets, &a, &(p * &rest)), &mut family);
        }
    }
    let mut originals = Vec::new();
    for p in &p_l {
        for ip in &basis_sets {
            let v = ModuleElement::from_entries(&ring, ModuleOrder::Top, [(Label::subset(*ip), &one_minus_s * p)]);
            push(v.clone(), &mut family);
            originals.push(v);
        }
    }
    for i in &index_sets {
        let ts = &s * &Polynomial::monomial(&ring, arr.field().one(), t_mono(&ring, *i));
        let mut unit = vec![arr.field().zero(); index_sets.len()];
        unit[index_sets.iter().position(|x| x == i).unwrap()] = arr.field().one();
        originals.push(combination(arr, &ring, &index_sets, &unit, &ts));
    }
    originals.retain(|v| !v.is_zero());

    let mut rep = Report::new("groebner-lemma", arr);
    rep.detail("degree", r);
    rep.detail("family", family.len());
    if let Some((i, j, rem)) = first_nonzero_remainder(&family) {
        rep.fail(format!("S({}, {}) reduces to {}", family[i], family[j], rem));
    }
    if !module_equal(&family, &originals) {
        rep.fail("family generates a different module");
    }
    Ok(rep)
}
