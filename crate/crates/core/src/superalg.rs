//! Exterior-algebra signs and the graded-commutative rings
//! `F[t] ⊗ Λ[u]` (Ξ), `F[t] ⊗ Λ[dz]` and `F[x] ⊗ Λ[dx]`.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::{format_sum, Monomial, Polynomial, Ring, Term, Var};

/// A finite set of indices in `1..=63`, stored as a bitmask.
///
/// The derived order compares bitmasks as integers, which for index sets is
/// the lexicographic order of their descending-sorted index tuples.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct ExtSubset(u64);

impl ExtSubset {
    pub const MAX_INDEX: usize = 63;

    pub fn empty() -> ExtSubset {
        ExtSubset(0)
    }

    pub fn singleton(i: usize) -> ExtSubset {
        assert!((1..=Self::MAX_INDEX).contains(&i), "index {i} out of range");
        ExtSubset(1 << i)
    }

    /// `{1, ..., m}`.
    pub fn range(m: usize) -> ExtSubset {
        assert!(m <= Self::MAX_INDEX);
        ExtSubset(((1u64 << m) - 1) << 1)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> ExtSubset {
        indices
            .into_iter()
            .fold(ExtSubset(0), |acc, i| acc.union(ExtSubset::singleton(i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i <= Self::MAX_INDEX && self.0 & (1 << i) != 0
    }

    pub fn union(self, o: ExtSubset) -> ExtSubset {
        ExtSubset(self.0 | o.0)
    }

    pub fn intersection(self, o: ExtSubset) -> ExtSubset {
        ExtSubset(self.0 & o.0)
    }

    pub fn minus(self, o: ExtSubset) -> ExtSubset {
        ExtSubset(self.0 & !o.0)
    }

    pub fn is_disjoint(self, o: ExtSubset) -> bool {
        self.0 & o.0 == 0
    }

    pub fn is_subset(self, o: ExtSubset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn insert(self, i: usize) -> ExtSubset {
        self.union(ExtSubset::singleton(i))
    }

    pub fn remove(self, i: usize) -> ExtSubset {
        self.minus(ExtSubset::singleton(i))
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = ExtSubset> {
        let full = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full { None } else { Some(((c | !full).wrapping_add(1)) & full) };
            Some(ExtSubset(c))
        })
    }

    /// All `k`-element subsets of `self`, in increasing bitmask order.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = ExtSubset> {
        self.subsets().filter(move |s| s.len() == k)
    }

    /// Number of elements of `self` strictly greater than `i`.
    fn count_above(self, i: usize) -> u32 {
        if i >= 63 {
            0
        } else {
            (self.0 >> (i + 1)).count_ones()
        }
    }
}

impl From<ExtSubset> for Vec<usize> {
    fn from(s: ExtSubset) -> Vec<usize> {
        s.to_vec()
    }
}

impl TryFrom<Vec<usize>> for ExtSubset {
    type Error = String;
    fn try_from(v: Vec<usize>) -> std::result::Result<ExtSubset, String> {
        if let Some(bad) = v.iter().find(|&&i| i == 0 || i > ExtSubset::MAX_INDEX) {
            return Err(format!("index {bad} out of range 1..=63"));
        }
        Ok(ExtSubset::from_indices(v))
    }
}

impl fmt::Debug for ExtSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExtSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Sign of the permutation sorting `(S1 ascending, S2 ascending)`; 0 if they meet.
pub fn shuffle_sign(s1: ExtSubset, s2: ExtSubset) -> i8 {
    if !s1.is_disjoint(s2) {
        return 0;
    }
    let inversions: u32 = s2.iter().map(|j| s1.count_above(j)).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Names the odd generators of an exterior factor.
pub trait OddKind: Send + Sync + 'static {
    const PREFIX: &'static str;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UVars;
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DzVars;
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DxVars;

impl OddKind for UVars {
    const PREFIX: &'static str = "u";
}
impl OddKind for DzVars {
    const PREFIX: &'static str = "dz";
}
impl OddKind for DxVars {
    const PREFIX: &'static str = "dx";
}

/// An element of `P ⊗ Λ[odd_1, ..., odd_k]` for a polynomial ring `P`, keyed by the
/// set of odd generators (wedged in ascending index order). Signs live in the
/// coefficients and zero components are never stored.
pub struct ExtElement<K> {
    ring: Arc<Ring>,
    components: BTreeMap<ExtSubset, Polynomial>,
    _kind: PhantomData<K>,
}

/// Element of Ξ = F[t_1..t_m] ⊗ Λ[u_1..u_m].
pub type XiElement = ExtElement<UVars>;
/// Element of F[t_1..t_m] ⊗ Λ[dz_1..dz_m].
pub type TdzElement = ExtElement<DzVars>;
/// Element of Ω = F[x_1..x_n] ⊗ Λ[dx_1..dx_n].
pub type OmegaElement = ExtElement<DxVars>;

impl<K> Clone for ExtElement<K> {
    fn clone(&self) -> Self {
        ExtElement {
            ring: self.ring.clone(),
            components: self.components.clone(),
            _kind: PhantomData,
        }
    }
}

impl<K> PartialEq for ExtElement<K> {
    fn eq(&self, other: &Self) -> bool {
        Ring::same(&self.ring, &other.ring) && self.components == other.components
    }
}

impl<K> Eq for ExtElement<K> {}

impl<K> std::hash::Hash for ExtElement<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (k, v) in &self.components {
            k.hash(state);
            v.hash(state);
        }
    }
}

impl<K: OddKind> fmt::Debug for ExtElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtElement({self})")
    }
}

impl<K> ExtElement<K> {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        ExtElement {
            ring: ring.clone(),
            components: BTreeMap::new(),
            _kind: PhantomData,
        }
    }

    /// `p` placed in Grassmann degree zero.
    pub fn from_poly(p: Polynomial) -> Self {
        let ring = p.ring().clone();
        Self::from_component(&ring, ExtSubset::empty(), p)
    }

    /// `p · odd_key`.
    pub fn from_component(ring: &Arc<Ring>, key: ExtSubset, p: Polynomial) -> Self {
        let mut out = Self::zero(ring);
        out.add_component(key, p);
        out
    }

    /// The pure odd monomial `odd_{i_1} ... odd_{i_r}` for `key = {i_1 < ... < i_r}`.
    pub fn odd_monomial(ring: &Arc<Ring>, key: ExtSubset) -> Self {
        Self::from_component(ring, key, Polynomial::one(ring))
    }

    pub fn from_components(ring: &Arc<Ring>, parts: impl IntoIterator<Item = (ExtSubset, Polynomial)>) -> Self {
        let mut out = Self::zero(ring);
        for (k, p) in parts {
            out.add_component(k, p);
        }
        out
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &BTreeMap<ExtSubset, Polynomial> {
        &self.components
    }

    pub fn component(&self, key: ExtSubset) -> Polynomial {
        self.components
            .get(&key)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    /// Grassmann degree if every component has the same one (zero counts as homogeneous of any degree).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.components.keys().map(|k| k.len());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, r: usize) -> bool {
        self.components.keys().all(|k| k.len() == r)
    }

    /// Topological degrees `2·deg(t) + |odd|` of all terms.
    pub fn topological_degrees(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .components
            .iter()
            .flat_map(|(k, p)| p.terms().iter().map(move |t| 2 * t.mono.degree() + k.len() as u32))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn add_component(&mut self, key: ExtSubset, p: Polynomial) {
        assert!(Ring::same(&self.ring, p.ring()), "component from a different ring");
        if p.is_zero() {
            return;
        }
        match self.components.remove(&key) {
            Some(old) => {
                let s = &old + &p;
                if !s.is_zero() {
                    self.components.insert(key, s);
                }
            }
            None => {
                self.components.insert(key, p);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, p) in &other.components {
            out.add_component(*k, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-&self.ring.field().one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(&self.ring);
        for (k, p) in &self.components {
            out.add_component(*k, p.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Self {
        let mut out = Self::zero(&self.ring);
        for (k, p) in &self.components {
            out.add_component(*k, p * f);
        }
        out
    }

    /// Graded-commutative product. Odd generators anticommute and square to zero
    /// in every characteristic.
    pub fn ext_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (k1, p1) in &self.components {
            for (k2, p2) in &other.components {
                let sign = shuffle_sign(*k1, *k2);
                if sign == 0 {
                    continue;
                }
                let prod = p1 * p2;
                let prod = if sign < 0 { -&prod } else { prod };
                out.add_component(k1.union(*k2), prod);
            }
        }
        out
    }

    /// Normalize so the first term (smallest key, leading monomial) has coefficient one.
    pub fn monic(&self) -> Self {
        match self.components.values().next().and_then(|p| p.leading_coeff()) {
            Some(c) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    /// Same element in another ring (variables matched by name).
    pub fn to_ring(&self, target: &Arc<Ring>) -> Result<Self> {
        let mut out = Self::zero(target);
        for (k, p) in &self.components {
            out.add_component(*k, p.to_ring(target)?);
        }
        Ok(out)
    }

    /// Reinterpret under a different odd-generator naming.
    pub fn cast<K2>(self) -> ExtElement<K2> {
        ExtElement {
            ring: self.ring,
            components: self.components,
            _kind: PhantomData,
        }
    }

    /// Render with a caller-supplied name for each odd index.
    pub fn format_with(&self, odd_name: impl Fn(usize) -> String) -> String {
        let mut items: Vec<(&Scalar, String)> = Vec::new();
        for (k, p) in &self.components {
            let odd: Vec<String> = k.iter().map(&odd_name).collect();
            let odd = odd.join("*");
            for t in p.terms() {
                let even = Polynomial::format_monomial(&self.ring, &t.mono);
                let mono = match (even.is_empty(), odd.is_empty()) {
                    (true, _) => odd.clone(),
                    (false, true) => even,
                    (false, false) => format!("{even}*{odd}"),
                };
                items.push((&t.coeff, mono));
            }
        }
        format_sum(items.into_iter())
    }
}

impl<K: OddKind> fmt::Display for ExtElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(|i| format!("{}{i}", K::PREFIX)))
    }
}

/// Rewrite `t_j·dz_j ↦ u_j`: a term `c·t^a·dz_B` with `B ⊆ supp(a)` becomes
/// `c·t^(a − 1_B)·u_B`. The dz order is kept, so no sign appears.
pub fn xi_from_tdz(e: &TdzElement) -> Result<XiElement> {
    let ring = e.ring();
    let mut out = XiElement::zero(ring);
    for (key, p) in e.components() {
        let ranks: Vec<u16> = key
            .iter()
            .map(|j| {
                ring.rank(Var::T(j as u32))
                    .ok_or_else(|| Error::Config(format!("t{j} is not a variable of {ring}")))
            })
            .collect::<Result<_>>()?;
        let mut terms = Vec::with_capacity(p.len());
        for t in p.terms() {
            let mut pairs: Vec<(u16, u32)> = t.mono.iter().collect();
            for &r in &ranks {
                match pairs.iter_mut().find(|(pr, _)| *pr == r) {
                    Some((_, exp)) if *exp > 0 => *exp -= 1,
                    _ => {
                        let dz: Vec<String> = key.iter().map(|j| format!("dz{j}")).collect();
                        let even = Polynomial::format_monomial(ring, &t.mono);
                        return Err(Error::UnconvertibleMonomial(format!(
                            "{}*{}",
                            if even.is_empty() { "1".to_string() } else { even },
                            dz.join("*")
                        )));
                    }
                }
            }
            terms.push(Term {
                coeff: t.coeff.clone(),
                mono: Monomial::from_exponents(pairs),
            });
        }
        out.add_component(*key, Polynomial::from_terms(ring, terms));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::text::parse_ext;

    fn s(v: &[usize]) -> ExtSubset {
        ExtSubset::from_indices(v.iter().copied())
    }

    /// Sign by explicit bubble sort of the concatenated sequence.
    fn sign_by_transpositions(a: &[usize], b: &[usize]) -> i8 {
        let mut seq: Vec<usize> = a.iter().chain(b).copied().collect();
        let mut swaps = 0;
        for i in 0..seq.len() {
            for j in 0..seq.len() - 1 - i {
                if seq[j] == seq[j + 1] {
                    return 0;
                }
                if seq[j] > seq[j + 1] {
                    seq.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        if seq.windows(2).any(|w| w[0] == w[1]) {
            return 0;
        }
        if swaps % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn shuffle_sign_examples() {
        assert_eq!(shuffle_sign(s(&[1]), s(&[2])), 1);
        assert_eq!(shuffle_sign(s(&[2]), s(&[1])), -1);
        assert_eq!(sign_by_transpositions(&[1, 3], &[2]), -1);
        assert_eq!(shuffle_sign(s(&[1, 3]), s(&[2])), -1);
        assert_eq!(shuffle_sign(s(&[1, 3]), s(&[3])), 0);
    }

    #[test]
    fn shuffle_sign_matches_bubble_sort() {
        for a in ExtSubset::range(5).subsets() {
            for b in ExtSubset::range(5).subsets() {
                assert_eq!(shuffle_sign(a, b), sign_by_transpositions(&a.to_vec(), &b.to_vec()), "{a} {b}");
            }
        }
    }

    #[test]
    fn label_order_is_descending_tuple_lex() {
        assert!(s(&[3]) > s(&[1, 2]));
        assert!(s(&[2, 3]) > s(&[1, 3]));
        assert!(s(&[1, 3]) > s(&[3]));
        assert!(s(&[1]) > ExtSubset::empty());
    }

    #[test]
    fn subset_enumeration() {
        let all: Vec<ExtSubset> = s(&[1, 3, 4]).subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(s(&[1, 2, 3, 4]).subsets_of_size(2).count(), 6);
    }

    #[test]
    fn anticommutativity_and_squares() {
        let r = Ring::t_ring(Field::Rational, 3);
        let u1 = XiElement::odd_monomial(&r, s(&[1]));
        let u2 = XiElement::odd_monomial(&r, s(&[2]));
        assert_eq!(u1.ext_mul(&u2), XiElement::odd_monomial(&r, s(&[1, 2])));
        assert_eq!(u2.ext_mul(&u1), XiElement::odd_monomial(&r, s(&[1, 2])).neg());
        assert!(u1.ext_mul(&u1).is_zero());
        let r2 = Ring::t_ring(Field::Prime(2), 2);
        let v = XiElement::odd_monomial(&r2, s(&[1]));
        assert!(v.ext_mul(&v).is_zero());
    }

    #[test]
    fn mixed_product_sign() {
        let r = Ring::t_ring(Field::Rational, 3);
        let a = parse_ext::<UVars>("t1*u2", &r).unwrap();
        let b = parse_ext::<UVars>("t3*u1", &r).unwrap();
        assert_eq!(a.ext_mul(&b), parse_ext::<UVars>("-t1*t3*u1*u2", &r).unwrap());
    }

    #[test]
    fn conversion_to_u_variables() {
        let r = Ring::t_ring(Field::Rational, 3);
        let conv = |txt: &str| xi_from_tdz(&parse_ext::<DzVars>(txt, &r).unwrap()).unwrap();
        assert_eq!(conv("t2*dz2"), parse_ext::<UVars>("u2", &r).unwrap());
        assert_eq!(conv("t1*t3*dz1*dz3"), parse_ext::<UVars>("u1*u3", &r).unwrap());
        assert_eq!(conv("t2*t3*dz2"), parse_ext::<UVars>("t3*u2", &r).unwrap());
        let bad = parse_ext::<DzVars>("t1*dz2", &r).unwrap();
        assert!(matches!(xi_from_tdz(&bad), Err(Error::UnconvertibleMonomial(_))));
    }
}
