//! Free modules over a polynomial ring with labeled basis vectors, module
//! Buchberger, intersections and preimages.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::field::Scalar;
use crate::poly::{format_sum, Monomial, Polynomial, Ring, Term, Var};
use crate::superalg::ExtSubset;

/// Basis vector label. `block` only matters under [`ModuleOrder::BlockTop`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Label {
    pub block: u8,
    pub key: u64,
}

impl Label {
    pub fn subset(s: ExtSubset) -> Label {
        Label { block: 0, key: s.bits() }
    }

    pub fn aux(k: usize) -> Label {
        Label { block: 0, key: k as u64 }
    }

    pub fn as_subset(self) -> ExtSubset {
        ExtSubset::from_indices((1..=ExtSubset::MAX_INDEX).filter(|&i| self.key & (1 << i) != 0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ModuleOrder {
    /// Monomial first, then label.
    Top,
    /// Label block first, then monomial, then label. Eliminates higher blocks.
    BlockTop,
}

impl ModuleOrder {
    pub fn cmp(self, a: (&Monomial, &Label), b: (&Monomial, &Label)) -> Ordering {
        match self {
            ModuleOrder::Top => a.0.cmp(b.0).then(a.1.cmp(b.1)),
            ModuleOrder::BlockTop => a.1.block.cmp(&b.1.block).then(a.0.cmp(b.0)).then(a.1.cmp(b.1)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModTerm {
    pub coeff: Scalar,
    pub mono: Monomial,
    pub label: Label,
}

/// Element of a free module, terms sorted strictly descending.
#[derive(Clone)]
pub struct ModuleElement {
    ring: Arc<Ring>,
    order: ModuleOrder,
    terms: Vec<ModTerm>,
}

impl PartialEq for ModuleElement {
    fn eq(&self, other: &Self) -> bool {
        Ring::same(&self.ring, &other.ring) && self.order == other.order && self.terms == other.terms
    }
}

impl Eq for ModuleElement {}

impl std::hash::Hash for ModuleElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleElement({self})")
    }
}

impl ModuleElement {
    pub fn zero(ring: &Arc<Ring>, order: ModuleOrder) -> Self {
        ModuleElement {
            ring: ring.clone(),
            order,
            terms: Vec::new(),
        }
    }

    pub fn from_entries(
        ring: &Arc<Ring>,
        order: ModuleOrder,
        entries: impl IntoIterator<Item = (Label, Polynomial)>,
    ) -> Self {
        let mut terms: Vec<ModTerm> = Vec::new();
        let mut acc: BTreeMap<Label, Polynomial> = BTreeMap::new();
        for (l, p) in entries {
            let e = acc.entry(l).or_insert_with(|| Polynomial::zero(ring));
            *e = &*e + &p.to_ring(ring).expect("module entry outside the ring");
        }
        for (label, p) in acc {
            for t in p.into_terms() {
                terms.push(ModTerm {
                    coeff: t.coeff,
                    mono: t.mono,
                    label,
                });
            }
        }
        terms.sort_by(|a, b| order.cmp((&b.mono, &b.label), (&a.mono, &a.label)));
        ModuleElement {
            ring: ring.clone(),
            order,
            terms,
        }
    }

    pub fn unit(ring: &Arc<Ring>, order: ModuleOrder, label: Label) -> Self {
        Self::from_entries(ring, order, [(label, Polynomial::one(ring))])
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> ModuleOrder {
        self.order
    }

    pub fn terms(&self) -> &[ModTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&ModTerm> {
        self.terms.first()
    }

    pub fn entries(&self) -> BTreeMap<Label, Polynomial> {
        let mut parts: BTreeMap<Label, Vec<Term>> = BTreeMap::new();
        for t in &self.terms {
            parts.entry(t.label).or_default().push(Term {
                coeff: t.coeff.clone(),
                mono: t.mono.clone(),
            });
        }
        parts
            .into_iter()
            .map(|(l, ts)| (l, Polynomial::from_terms(&self.ring, ts)))
            .collect()
    }

    pub fn entry(&self, label: Label) -> Polynomial {
        self.entries().remove(&label).unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    pub fn with_order(&self, order: ModuleOrder) -> Self {
        Self::from_entries(&self.ring, order, self.entries())
    }

    /// Re-express in `target` (variables matched by name), relabeling basis vectors.
    pub fn map_into(&self, target: &Arc<Ring>, order: ModuleOrder, relabel: impl Fn(Label) -> Label) -> Self {
        Self::from_entries(target, order, self.entries().into_iter().map(|(l, p)| (relabel(l), p)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.mul_term(c, &Monomial::one())
    }

    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring, self.order);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| ModTerm {
                coeff: &t.coeff * c,
                mono: t.mono.mul(m),
                label: t.label,
            })
            .collect();
        ModuleElement {
            ring: self.ring.clone(),
            order: self.order,
            terms,
        }
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Self {
        let mut acc = Self::zero(&self.ring, self.order);
        for t in f.terms() {
            acc = acc.sub_mul_term(&-&t.coeff, &t.mono, self);
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(t) if !t.coeff.is_one() => self.scale(&t.coeff.inv()),
            _ => self.clone(),
        }
    }

    /// `self - c * m * g` in one merge pass.
    pub fn sub_mul_term(&self, c: &Scalar, m: &Monomial, g: &ModuleElement) -> Self {
        let order = self.order;
        let neg_c = -c;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|t| ModTerm {
            coeff: &t.coeff * &neg_c,
            mono: t.mono.mul(m),
            label: t.label,
        });
        let mut pending = b.next();
        loop {
            match (a.peek(), pending.take()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(tb)) => {
                    out.push(tb);
                    pending = b.next();
                }
                (Some(ta), Some(tb)) => match order.cmp((&ta.mono, &ta.label), (&tb.mono, &tb.label)) {
                    Ordering::Greater => {
                        out.push(a.next().unwrap().clone());
                        pending = Some(tb);
                    }
                    Ordering::Less => {
                        out.push(tb);
                        pending = b.next();
                    }
                    Ordering::Equal => {
                        let s = &ta.coeff + &tb.coeff;
                        if !s.is_zero() {
                            out.push(ModTerm {
                                coeff: s,
                                mono: tb.mono,
                                label: tb.label,
                            });
                        }
                        a.next();
                        pending = b.next();
                    }
                },
            }
        }
        ModuleElement {
            ring: self.ring.clone(),
            order,
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let one = self.ring.field().one();
        self.sub_mul_term(&-&one, &Monomial::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.sub_mul_term(&self.ring.field().one(), &Monomial::one(), other)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        match self.ring.rank(v) {
            Some(r) => self.terms.iter().any(|t| t.mono.exponent(r) > 0),
            None => false,
        }
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_sum(self.terms.iter().map(|t| {
            let label = if t.label.block == 0 {
                format!("e{}", t.label.as_subset())
            } else {
                format!("e{}:{}", t.label.block, t.label.as_subset())
            };
            let mono = Polynomial::format_monomial(&self.ring, &t.mono);
            let name = if mono.is_empty() { label } else { format!("{mono}*{label}") };
            (&t.coeff, name)
        }));
        f.write_str(&s)
    }
}

fn reduce_by(v: &ModuleElement, basis: &[&ModuleElement]) -> ModuleElement {
    let mut by_label: BTreeMap<Label, Vec<&ModuleElement>> = BTreeMap::new();
    for g in basis {
        if let Some(lt) = g.leading() {
            by_label.entry(lt.label).or_default().push(g);
        }
    }
    let mut p = v.clone();
    let mut rem = Vec::new();
    while let Some(lt) = p.leading().cloned() {
        let divisor = by_label
            .get(&lt.label)
            .and_then(|gs| gs.iter().find(|g| g.leading().unwrap().mono.divides(&lt.mono)));
        match divisor {
            Some(g) => {
                let glt = g.leading().unwrap();
                let q = glt.mono.quotient_of(&lt.mono).unwrap();
                p = p.sub_mul_term(&lt.coeff.div(&glt.coeff), &q, g);
            }
            None => {
                rem.push(lt);
                p.terms.remove(0);
            }
        }
    }
    ModuleElement {
        ring: v.ring.clone(),
        order: v.order,
        terms: rem,
    }
}

/// Remainder of `v` under division by `basis`: a term is reducible only by a
/// basis element whose leading term has the same label and a dividing monomial.
pub fn module_normal_form(v: &ModuleElement, basis: &[ModuleElement]) -> ModuleElement {
    let refs: Vec<&ModuleElement> = basis.iter().filter(|g| !g.is_zero()).collect();
    reduce_by(v, &refs)
}

/// S-vector of two elements whose leading terms share a label.
pub fn s_vector(f: &ModuleElement, g: &ModuleElement) -> Option<ModuleElement> {
    let (lf, lg) = (f.leading()?, g.leading()?);
    if lf.label != lg.label {
        return None;
    }
    let l = lf.mono.lcm(&lg.mono);
    let a = f.mul_term(&lf.coeff.inv(), &lf.mono.quotient_of(&l).unwrap());
    Some(a.sub_mul_term(&lg.coeff.inv(), &lg.mono.quotient_of(&l).unwrap(), g))
}

/// Buchberger criterion for modules.
pub fn is_module_groebner(basis: &[ModuleElement]) -> bool {
    first_nonzero_remainder(basis).is_none()
}

/// An S-pair `(i, j)` of `basis` whose remainder is nonzero, with that remainder.
pub fn first_nonzero_remainder(basis: &[ModuleElement]) -> Option<(usize, usize, ModuleElement)> {
    let refs: Vec<&ModuleElement> = basis.iter().filter(|g| !g.is_zero()).collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if let Some(s) = s_vector(&basis[i], &basis[j]) {
                let r = reduce_by(&s, &refs);
                if !r.is_zero() {
                    return Some((i, j, r));
                }
            }
        }
    }
    None
}

struct Engine {
    basis: Vec<ModuleElement>,
    active: Vec<bool>,
    pairs: BTreeSet<(u32, usize, usize)>,
}

impl Engine {
    fn lt(&self, i: usize) -> &ModTerm {
        self.basis[i].leading().unwrap()
    }

    fn active_refs(&self) -> Vec<&ModuleElement> {
        self.basis
            .iter()
            .zip(&self.active)
            .filter_map(|(g, &a)| a.then_some(g))
            .collect()
    }

    /// Gebauer–Möller update restricted to pairs with equal leading labels.
    /// The coprimality criterion does not hold for modules and is not used.
    fn insert(&mut self, h: ModuleElement) {
        let hi = self.basis.len();
        self.basis.push(h.monic());
        self.active.push(false);
        let (lh, label) = (self.lt(hi).mono.clone(), self.lt(hi).label);

        let mut cands: VecDeque<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g] && self.lt(g).label == label)
            .map(|g| (g, self.lt(g).mono.lcm(&lh)))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g, l)) = cands.pop_front() {
            if !cands.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l)) {
                kept.push((g, l));
            }
        }

        let stale: Vec<(u32, usize, usize)> = self
            .pairs
            .iter()
            .copied()
            .filter(|&(_, a, b)| {
                if self.lt(a).label != label {
                    return false;
                }
                let (ma, mb) = (&self.lt(a).mono, &self.lt(b).mono);
                let lab = ma.lcm(mb);
                lh.divides(&lab) && ma.lcm(&lh) != lab && mb.lcm(&lh) != lab
            })
            .collect();
        for p in stale {
            self.pairs.remove(&p);
        }
        for (g, l) in kept {
            self.pairs.insert((l.degree(), g, hi));
        }
        for g in 0..hi {
            if self.active[g] && self.lt(g).label == label && lh.divides(&self.lt(g).mono) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`: monic,
/// interreduced, sorted by increasing leading term. All inputs must share
/// one ring and one order.
pub fn module_groebner(gens: &[ModuleElement]) -> Vec<ModuleElement> {
    let mut eng = Engine {
        basis: Vec::new(),
        active: Vec::new(),
        pairs: BTreeSet::new(),
    };
    for g in gens.iter().filter(|g| !g.is_zero()) {
        eng.insert(g.clone());
    }
    while let Some((_, i, j)) = eng.pairs.pop_first() {
        let s = s_vector(&eng.basis[i], &eng.basis[j]).expect("paired labels agree");
        let h = reduce_by(&s, &eng.active_refs());
        if !h.is_zero() {
            eng.insert(h);
        }
    }
    let mut g: Vec<ModuleElement> = eng.active_refs().into_iter().cloned().collect();
    let Some(order) = g.first().map(|e| e.order) else {
        return Vec::new();
    };
    let key = |e: &ModuleElement| {
        let t = e.leading().unwrap();
        (t.mono.clone(), t.label)
    };
    g.sort_by(|a, b| {
        let (ka, kb) = (key(a), key(b));
        order.cmp((&ka.0, &ka.1), (&kb.0, &kb.1))
    });
    let mut minimal: Vec<ModuleElement> = Vec::new();
    for e in g {
        let lt = e.leading().unwrap();
        let redundant = minimal.iter().any(|q| {
            let ql = q.leading().unwrap();
            ql.label == lt.label && ql.mono.divides(&lt.mono)
        });
        if !redundant {
            minimal.push(e);
        }
    }
    (0..minimal.len())
        .map(|i| {
            let others: Vec<&ModuleElement> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q)
                .collect();
            reduce_by(&minimal[i], &others).monic()
        })
        .collect()
}

/// Whether `v` lies in the submodule generated by `gens`.
pub fn module_contains(gens: &[ModuleElement], v: &ModuleElement) -> bool {
    module_normal_form(v, &module_groebner(gens)).is_zero()
}

/// Whether two generating sets span the same submodule.
pub fn module_equal(a: &[ModuleElement], b: &[ModuleElement]) -> bool {
    let ga = module_groebner(a);
    let gb = module_groebner(b);
    a.iter().all(|v| module_normal_form(v, &gb).is_zero())
        && b.iter().all(|v| module_normal_form(v, &ga).is_zero())
}

/// Generators of `span(a) ∩ span(b)`: Gröbner basis of `{s·a_i} ∪ {(1−s)·b_j}`
/// over the ring with a new greatest variable `s`, keeping the `s`-free part.
pub fn module_intersect(a: &[ModuleElement], b: &[ModuleElement]) -> Vec<ModuleElement> {
    let Some(first) = a.iter().chain(b).next() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let order = first.order();
    let big = ring.with_leading_vars(&[Var::S]).expect("s is not yet a variable");
    let s = Polynomial::var(&big, Var::S).unwrap();
    let one_minus_s = &Polynomial::one(&big) - &s;
    let lift = |v: &ModuleElement| v.map_into(&big, ModuleOrder::Top, |l| l);
    let mut gens: Vec<ModuleElement> = a.iter().map(|v| lift(v).mul_poly(&s)).collect();
    gens.extend(b.iter().map(|v| lift(v).mul_poly(&one_minus_s)));
    module_groebner(&gens)
        .into_iter()
        .filter(|v| !v.contains_var(Var::S))
        .map(|v| v.map_into(&ring, order, |l| l))
        .collect()
}

/// Generators of `{ f ∈ F[t]^c : Σ f_j·columns[j] ∈ span(submodule) }`.
///
/// Computed as the syzygy part of `columns ∥ submodule`: each column is
/// extended by an auxiliary unit vector and the combined module is reduced
/// under an order that eliminates the original labels.
pub fn module_preimage(columns: &[ModuleElement], submodule: &[ModuleElement]) -> Vec<Vec<Polynomial>> {
    let Some(first) = columns.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let lift = |v: &ModuleElement| v.map_into(&ring, ModuleOrder::BlockTop, |l| Label { block: l.block + 1, ..l });
    let mut gens: Vec<ModuleElement> = columns
        .iter()
        .enumerate()
        .map(|(j, col)| lift(col).add(&ModuleElement::unit(&ring, ModuleOrder::BlockTop, Label::aux(j))))
        .collect();
    gens.extend(submodule.iter().map(lift));
    module_groebner(&gens)
        .into_iter()
        .filter(|v| v.leading().unwrap().label.block == 0)
        .map(|v| {
            let e = v.entries();
            (0..columns.len())
                .map(|j| e.get(&Label::aux(j)).cloned().unwrap_or_else(|| Polynomial::zero(&ring)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::groebner::{groebner_ideal, normal_form};
    use crate::poly::parse_polynomial;
    use proptest::prelude::*;

    fn el(ring: &Arc<Ring>, parts: &[(&[usize], &str)]) -> ModuleElement {
        ModuleElement::from_entries(
            ring,
            ModuleOrder::Top,
            parts.iter().map(|(l, p)| {
                (Label::subset(ExtSubset::from_indices(l.iter().copied())), parse_polynomial(p, ring).unwrap())
            }),
        )
    }

    #[test]
    fn groebner_examples() {
        let r = Ring::t_ring(Field::Rational, 3);
        let g = vec![el(&r, &[(&[1], "t1")]), el(&r, &[(&[2], "t2")])];
        assert_eq!(module_groebner(&g), g);
        let g = vec![el(&r, &[(&[], "t1")]), el(&r, &[(&[], "t2")])];
        assert_eq!(module_groebner(&g), g);
        let g = module_groebner(&[el(&r, &[(&[], "t1 - t2")]), el(&r, &[(&[], "t2 - t3")])]);
        assert!(module_normal_form(&el(&r, &[(&[], "t1 - t3")]), &g).is_zero());
        assert!(is_module_groebner(&g));
    }

    #[test]
    fn normal_form_respects_labels() {
        let r = Ring::t_ring(Field::Rational, 2);
        let b = vec![el(&r, &[(&[1], "t1")])];
        assert!(module_normal_form(&el(&r, &[(&[1], "t1*t2")]), &b).is_zero());
        let v = el(&r, &[(&[2], "t1")]);
        assert_eq!(module_normal_form(&v, &b), v);
    }

    #[test]
    fn intersections() {
        let r = Ring::t_ring(Field::Rational, 2);
        let a = el(&r, &[(&[], "t1")]);
        let b = el(&r, &[(&[], "t2")]);
        assert_eq!(module_intersect(std::slice::from_ref(&a), &[b]), vec![el(&r, &[(&[], "t1*t2")])]);
        assert_eq!(module_intersect(std::slice::from_ref(&a), std::slice::from_ref(&a)), vec![a]);
    }

    #[test]
    fn preimages() {
        let r = Ring::t_ring(Field::Rational, 2);
        let id = vec![el(&r, &[(&[1], "1")]), el(&r, &[(&[2], "1")])];
        assert!(module_preimage(&id, &[]).is_empty());
        let one = Polynomial::one(&r);
        let zero = Polynomial::zero(&r);
        let mut full = module_preimage(&id, &id);
        full.sort_by_key(|v| v[0].is_zero());
        assert_eq!(full, vec![vec![one.clone(), zero.clone()], vec![zero, one]]);
        let koszul = module_preimage(&[el(&r, &[(&[], "t1")]), el(&r, &[(&[], "t2")])], &[]);
        let p = |s| parse_polynomial(s, &r).unwrap();
        assert_eq!(koszul, vec![vec![p("t2"), p("-t1")]]);
    }

    #[test]
    fn block_order_separates_blocks() {
        let r = Ring::t_ring(Field::Rational, 1);
        let v = ModuleElement::from_entries(
            &r,
            ModuleOrder::BlockTop,
            [
                (Label { block: 1, key: 0 }, parse_polynomial("1", &r).unwrap()),
                (Label::aux(0), parse_polynomial("t1^5", &r).unwrap()),
            ],
        );
        assert_eq!(v.leading().unwrap().label.block, 1);
    }

    fn arb_src() -> impl Strategy<Value = String> {
        let term = (-2i64..=2, 0u32..3, 0u32..3, 0u32..2);
        proptest::collection::vec(term, 1..4).prop_map(|ts| {
            ts.iter()
                .map(|(c, a, b, d)| format!("{c}*t1^{a}*t2^{b}*t3^{d}"))
                .collect::<Vec<_>>()
                .join(" + ")
        })
    }

    // Lex bases of random inhomogeneous modules grow quickly once s is
    // added, so intersections are exercised on low-degree inputs.
    fn small_src() -> impl Strategy<Value = String> {
        let term = (-1i64..=1, 0u32..2, 0u32..2, 0u32..2);
        proptest::collection::vec(term, 1..3).prop_map(|ts| {
            ts.iter()
                .map(|(c, a, b, d)| format!("{c}*t1^{a}*t2^{b}*t3^{d}"))
                .collect::<Vec<_>>()
                .join(" + ")
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn rank_one_matches_ideal_engine(srcs in proptest::collection::vec(arb_src(), 1..4), probe in arb_src()) {
            let r = Ring::t_ring(Field::Prime(5), 3);
            let polys: Vec<Polynomial> = srcs.iter().map(|s| parse_polynomial(s, &r).unwrap()).collect();
            let gens: Vec<ModuleElement> = polys.iter().map(|p| el(&r, &[(&[], &p.to_string())])).collect();
            let mg = module_groebner(&gens);
            let ig = groebner_ideal(&polys);
            let lead: Vec<Polynomial> = mg.iter().map(|v| v.entry(Label::subset(ExtSubset::empty()))).collect();
            prop_assert_eq!(&lead, &ig);
            let f = parse_polynomial(&probe, &r).unwrap();
            let nf = module_normal_form(&el(&r, &[(&[], &f.to_string())]), &mg);
            prop_assert_eq!(nf.entry(Label::subset(ExtSubset::empty())), normal_form(&f, &ig));
        }

        #[test]
        fn module_postconditions(a in proptest::collection::vec((small_src(), small_src()), 1..3), b in (small_src(), small_src())) {
            let r = Ring::t_ring(Field::Prime(3), 3);
            let mk = |(x, y): &(String, String)| el(&r, &[(&[1], x), (&[2], y)]);
            let gens: Vec<ModuleElement> = a.iter().map(mk).collect();
            let g = module_groebner(&gens);
            prop_assert!(is_module_groebner(&g));
            for v in &gens {
                prop_assert!(module_normal_form(v, &g).is_zero());
            }
            // explicit membership certificate: combination t1*g0 - g_last
            let combo = gens[0].mul_poly(&parse_polynomial("t1", &r).unwrap()).sub(gens.last().unwrap());
            prop_assert!(module_normal_form(&combo, &g).is_zero());
            let other = [mk(&b)];
            for v in module_intersect(&gens, &other) {
                prop_assert!(module_contains(&gens, &v));
                prop_assert!(module_contains(&other, &v));
            }
        }
    }
}
