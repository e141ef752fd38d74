//! Linear arrangements: rank, basis, circuits, relations, closure and flats.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg;
use crate::superalg::{shuffle_sign, ExtSubset};

/// `m` nonzero linear forms on `F^n`, indexed `1..=m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement {
    field: Field,
    n: usize,
    forms: Vec<Vec<Scalar>>,
    labels: Vec<usize>,
    names: Option<Vec<String>>,
    rank: usize,
    basis: Vec<usize>,
    /// Row `i-1`: coordinates of `z_i` in the basis `z_b`, `b ∈ basis`.
    coords: Vec<Vec<Scalar>>,
    warnings: Vec<String>,
}

impl Arrangement {
    pub fn new(field: Field, n: usize, forms: Vec<Vec<Scalar>>) -> Result<Arrangement> {
        if forms.len() > ExtSubset::MAX_INDEX {
            return Err(Error::InvalidArrangement(format!(
                "at most {} forms are supported",
                ExtSubset::MAX_INDEX
            )));
        }
        for (i, z) in forms.iter().enumerate() {
            if z.len() != n {
                return Err(Error::InvalidArrangement(format!(
                    "form {} has length {}, expected {n}",
                    i + 1,
                    z.len()
                )));
            }
            if z.iter().any(|c| c.field() != field) {
                return Err(Error::Config(format!("form {} is not over {field}", i + 1)));
            }
            if z.iter().all(Scalar::is_zero) {
                return Err(Error::InvalidArrangement(format!("form {} is zero", i + 1)));
            }
        }
        let m = forms.len();
        let mut basis = Vec::new();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (i, z) in forms.iter().enumerate() {
            rows.push(z.clone());
            if linalg::rank(&rows) > basis.len() {
                basis.push(i + 1);
            } else {
                rows.pop();
            }
        }
        let rank = basis.len();
        // Solve z_i = Σ c_b z_b: kernel of [z_b ... | z_i] as columns.
        let coords = forms
            .iter()
            .map(|z| {
                let cols: Vec<&Vec<Scalar>> = basis.iter().map(|&b| &forms[b - 1]).collect();
                let mat: Vec<Vec<Scalar>> = (0..n)
                    .map(|r| cols.iter().map(|c| c[r].clone()).chain([z[r].clone()]).collect())
                    .collect();
                let ker = linalg::kernel(&mat, rank + 1, field);
                let v = ker.into_iter().find(|v| !v[rank].is_zero()).expect("form lies in the span of the basis");
                let scale = -&v[rank].inv();
                v[..rank].iter().map(|c| c * &scale).collect()
            })
            .collect();
        let mut warnings = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if linalg::rank(&[forms[i].clone(), forms[j].clone()]) == 1 {
                    warnings.push(format!("forms {} and {} are proportional", i + 1, j + 1));
                }
            }
        }
        Ok(Arrangement {
            field,
            n,
            labels: (1..=m).collect(),
            forms,
            names: None,
            rank,
            basis,
            coords,
            warnings,
        })
    }

    pub fn from_ints(field: Field, n: usize, forms: &[Vec<i64>]) -> Result<Arrangement> {
        let forms = forms
            .iter()
            .map(|z| z.iter().map(|&c| field.from_i64(c)).collect())
            .collect();
        Arrangement::new(field, n, forms)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Arrangement> {
        if names.len() != self.m() {
            return Err(Error::InvalidArrangement(format!(
                "{} names for {} forms",
                names.len(),
                self.m()
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.forms.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Greedy first independent index set, ascending.
    pub fn basis_indices(&self) -> &[usize] {
        &self.basis
    }

    pub fn basis_set(&self) -> ExtSubset {
        ExtSubset::from_indices(self.basis.iter().copied())
    }

    /// Coefficient vector of `z_i` (1-based).
    pub fn form(&self, i: usize) -> &[Scalar] {
        &self.forms[i - 1]
    }

    pub fn forms(&self) -> &[Vec<Scalar>] {
        &self.forms
    }

    /// Coordinates of `z_i` in the chosen basis.
    pub fn basis_coords(&self, i: usize) -> &[Scalar] {
        &self.coords[i - 1]
    }

    /// Original indices of the forms, preserved by [`Arrangement::restrict_to_flat`].
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn all(&self) -> ExtSubset {
        ExtSubset::range(self.m())
    }

    pub fn rank_of(&self, s: ExtSubset) -> usize {
        let rows: Vec<Vec<Scalar>> = s.iter().map(|i| self.forms[i - 1].clone()).collect();
        linalg::rank(&rows)
    }

    /// Minimal dependencies, by increasing support size then increasing bitmask.
    pub fn circuits(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        for k in 2..=(self.rank + 1).min(self.m()) {
            for c in self.all().subsets_of_size(k) {
                let idx = c.to_vec();
                let mat: Vec<Vec<Scalar>> = (0..self.n)
                    .map(|r| idx.iter().map(|&i| self.forms[i - 1][r].clone()).collect())
                    .collect();
                let ker = linalg::kernel(&mat, k, self.field);
                if ker.len() == 1 && ker[0].iter().all(|c| !c.is_zero()) {
                    let rel = Relation::new(self, idx, ker[0].clone()).expect("kernel vector");
                    out.push(rel.normalized());
                }
            }
        }
        out
    }

    /// Basis of the space of linear relations, one per non-basis form.
    pub fn relation_basis(&self) -> Vec<Relation> {
        self.kernel_vectors()
            .into_iter()
            .map(|v| Relation::from_vector(self, &v).expect("nonzero kernel vector"))
            .collect()
    }

    fn kernel_vectors(&self) -> Vec<Vec<Scalar>> {
        let mat: Vec<Vec<Scalar>> = (0..self.n)
            .map(|r| self.forms.iter().map(|z| z[r].clone()).collect())
            .collect();
        linalg::kernel(&mat, self.m(), self.field)
    }

    /// Every nonzero relation over `F_p`: all `p^(m−m₀) − 1` nonzero kernel
    /// vectors, scalar multiples included, in a fixed enumeration order.
    pub fn all_relations(&self, caps: &Caps) -> Result<Vec<Relation>> {
        let Some(p) = self.field.size() else {
            return Err(Error::Config("listing every relation needs a finite field".into()));
        };
        let k = (self.m() - self.rank) as u32;
        let count = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if count - 1 > caps.relations {
            return Err(Error::cap("relations to enumerate", count - 1, caps.relations));
        }
        let basis = self.kernel_vectors();
        let elems = self.field.elements().unwrap();
        let mut out = Vec::with_capacity(count as usize - 1);
        for idx in 1..count {
            let mut v = vec![self.field.zero(); self.m()];
            let mut rest = idx;
            for b in &basis {
                let c = &elems[(rest % p as u128) as usize];
                rest /= p as u128;
                for (x, y) in v.iter_mut().zip(b) {
                    *x = &*x + &(c * y);
                }
            }
            out.push(Relation::from_vector(self, &v)?);
        }
        Ok(out)
    }

    pub fn closure(&self, s: ExtSubset) -> Flat {
        let r = self.rank_of(s);
        let indices = ExtSubset::from_indices((1..=self.m()).filter(|&j| s.contains(j) || self.rank_of(s.insert(j)) == r));
        Flat { indices, quotient_dim: r }
    }

    /// All flats, ordered by size and then by ascending index list.
    pub fn flats(&self, caps: &Caps) -> Result<Vec<Flat>> {
        let subsets = 1u128 << self.m();
        if subsets > caps.flats {
            return Err(Error::cap("subsets for flat enumeration", subsets, caps.flats));
        }
        let mut seen: BTreeMap<(usize, Vec<usize>), Flat> = BTreeMap::new();
        for s in self.all().subsets() {
            let f = self.closure(s);
            seen.entry((f.indices.len(), f.indices.to_vec())).or_insert(f);
        }
        Ok(seen.into_values().collect())
    }

    /// The forms `z_i`, `i ∈ flat`, as functionals on `F^n / V`, where `V` is
    /// their common zero set. Coordinates on the quotient are the pivot
    /// columns of the row-reduced form matrix.
    pub fn restrict_to_flat(&self, flat: &Flat) -> Arrangement {
        let idx = flat.indices.to_vec();
        let mut rows: Vec<Vec<Scalar>> = idx.iter().map(|&i| self.forms[i - 1].clone()).collect();
        let pivots = linalg::rref(&mut rows);
        let forms = idx
            .iter()
            .map(|&i| pivots.iter().map(|&c| self.forms[i - 1][c].clone()).collect())
            .collect();
        let mut out = Arrangement::new(self.field, pivots.len(), forms).expect("restriction of nonzero forms");
        out.labels = idx.iter().map(|&i| self.labels[i - 1]).collect();
        out.names = self.names.as_ref().map(|ns| idx.iter().map(|&i| ns[i - 1].clone()).collect());
        out
    }

    /// `dz_I` written in the basis `{dz_{I'} : I' ⊆ basis, |I'| = |I|}`.
    pub fn expand_dz(&self, s: ExtSubset) -> BTreeMap<ExtSubset, Scalar> {
        let mut acc: BTreeMap<ExtSubset, Scalar> = BTreeMap::from([(ExtSubset::empty(), self.field.one())]);
        for i in s.iter() {
            let mut next: BTreeMap<ExtSubset, Scalar> = BTreeMap::new();
            for (key, c) in &acc {
                for (b, coef) in self.basis.iter().zip(self.basis_coords(i)) {
                    let single = ExtSubset::singleton(*b);
                    let sign = shuffle_sign(*key, single);
                    if sign == 0 || coef.is_zero() {
                        continue;
                    }
                    let mut term = c * coef;
                    if sign < 0 {
                        term = -&term;
                    }
                    let e = next.entry(key.union(single)).or_insert_with(|| self.field.zero());
                    *e = &*e + &term;
                }
            }
            next.retain(|_, c| !c.is_zero());
            acc = next;
        }
        acc
    }

    /// `dz_I` written in the coordinate differentials `dx_J`.
    pub fn expand_dz_in_dx(&self, s: ExtSubset) -> BTreeMap<ExtSubset, Scalar> {
        let mut acc: BTreeMap<ExtSubset, Scalar> = BTreeMap::from([(ExtSubset::empty(), self.field.one())]);
        for i in s.iter() {
            let mut next: BTreeMap<ExtSubset, Scalar> = BTreeMap::new();
            for (key, c) in &acc {
                for (x, coef) in self.forms[i - 1].iter().enumerate() {
                    let single = ExtSubset::singleton(x + 1);
                    let sign = shuffle_sign(*key, single);
                    if sign == 0 || coef.is_zero() {
                        continue;
                    }
                    let mut term = c * coef;
                    if sign < 0 {
                        term = -&term;
                    }
                    let e = next.entry(key.union(single)).or_insert_with(|| self.field.zero());
                    *e = &*e + &term;
                }
            }
            next.retain(|_, c| !c.is_zero());
            acc = next;
        }
        acc
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} forms in {} variables over {}, rank {}", self.m(), self.n, self.field, self.rank)
    }
}

/// A linear dependency `Σ a_j z_{i_j} = 0` with all `a_j ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    support: Vec<usize>,
    coeffs: Vec<Scalar>,
}

impl Relation {
    pub fn new(arr: &Arrangement, support: Vec<usize>, coeffs: Vec<Scalar>) -> Result<Relation> {
        if support.len() != coeffs.len() || support.len() < 2 {
            return Err(Error::InvalidArrangement("a relation needs at least two terms".into()));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) || support.iter().any(|&i| i == 0 || i > arr.m()) {
            return Err(Error::InvalidArrangement(format!("bad relation support {support:?}")));
        }
        if coeffs.iter().any(Scalar::is_zero) {
            return Err(Error::InvalidArrangement("relation coefficients must be nonzero".into()));
        }
        for r in 0..arr.n() {
            let sum = support
                .iter()
                .zip(&coeffs)
                .fold(arr.field().zero(), |acc, (&i, a)| &acc + &(a * &arr.form(i)[r]));
            if !sum.is_zero() {
                return Err(Error::InvalidArrangement(format!("{support:?} is not a relation")));
            }
        }
        Ok(Relation { support, coeffs })
    }

    /// From a full-length kernel vector; zero entries are dropped.
    pub fn from_vector(arr: &Arrangement, v: &[Scalar]) -> Result<Relation> {
        let (support, coeffs): (Vec<usize>, Vec<Scalar>) = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i + 1, c.clone()))
            .unzip();
        Relation::new(arr, support, coeffs)
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn support_set(&self) -> ExtSubset {
        ExtSubset::from_indices(self.support.iter().copied())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn coeff_of(&self, i: usize) -> Option<&Scalar> {
        self.support.iter().position(|&j| j == i).map(|k| &self.coeffs[k])
    }

    /// Scaled so the coefficient of the smallest index is 1.
    pub fn normalized(&self) -> Relation {
        let inv = self.coeffs[0].inv();
        Relation {
            support: self.support.clone(),
            coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Relation {
        assert!(!c.is_zero());
        Relation {
            support: self.support.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = crate::poly::format_sum(self.support.iter().zip(&self.coeffs).map(|(i, c)| (c, format!("z{i}"))));
        write!(f, "{s}")
    }
}

impl Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            support: &'a [usize],
            coeffs: Vec<String>,
        }
        Repr {
            support: &self.support,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

/// A closed index set together with `dim(F^n / V)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flat {
    pub indices: ExtSubset,
    pub quotient_dim: usize,
}

/// Input file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementSpec {
    pub field: FieldSpec,
    pub n: usize,
    pub hyperplanes: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldSpec {
    Prime { p: u64 },
    Rational,
}

impl ArrangementSpec {
    pub fn build(&self) -> Result<Arrangement> {
        let field = match self.field {
            FieldSpec::Prime { p } => Field::prime(p)?,
            FieldSpec::Rational => Field::Rational,
        };
        let arr = Arrangement::from_ints(field, self.n, &self.hyperplanes)?;
        match &self.names {
            Some(ns) => arr.with_names(ns.clone()),
            None => Ok(arr),
        }
    }

    pub fn from_arrangement(arr: &Arrangement) -> Option<ArrangementSpec> {
        let field = match arr.field() {
            Field::Prime(p) => FieldSpec::Prime { p },
            Field::Rational => FieldSpec::Rational,
        };
        let hyperplanes = arr
            .forms()
            .iter()
            .map(|z| z.iter().map(Scalar::to_i64).collect::<Option<Vec<i64>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(ArrangementSpec {
            field,
            n: arr.n(),
            hyperplanes,
            names: arr.names().map(|n| n.to_vec()),
        })
    }
}
