//! Relation polynomials `P_L`, `dL`, `P_{L,S}`, `Q_{L,S}`, presentations and chart rings.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::arrangement::{Arrangement, Flat, Relation};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring, Term, Var};
use crate::superalg::{xi_from_tdz, ExtSubset, TdzElement, XiElement};

/// `F[t_m > ... > t_1]` for the arrangement.
pub fn t_ring(arr: &Arrangement) -> Arc<Ring> {
    Ring::t_ring(arr.field(), arr.m())
}

fn t_monomial(ring: &Ring, s: ExtSubset) -> Monomial {
    Monomial::from_exponents(s.iter().map(|i| (ring.rank(Var::T(i as u32)).expect("t variable"), 1)))
}

/// `Σ_j a_j · t_{|L| \ {i_j}}`.
pub fn p_of_l(ring: &Arc<Ring>, l: &Relation) -> Polynomial {
    let supp = l.support_set();
    let terms = l
        .support()
        .iter()
        .zip(l.coeffs())
        .map(|(&i, a)| Term {
            coeff: a.clone(),
            mono: t_monomial(ring, supp.remove(i)),
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// `Σ_j a_j · dz_{i_j}`.
pub fn d_of_l(ring: &Arc<Ring>, l: &Relation) -> TdzElement {
    TdzElement::from_components(
        ring,
        l.support()
            .iter()
            .zip(l.coeffs())
            .map(|(&i, a)| (ExtSubset::singleton(i), Polynomial::constant(ring, a.clone()))),
    )
}

fn t_poly(ring: &Arc<Ring>, s: ExtSubset) -> Polynomial {
    Polynomial::monomial(ring, ring.field().one(), t_monomial(ring, s))
}

/// `P_L·dz_S − Σ_s t_{|L|\{j_s}}·dz_{j_1}…(dL at slot s)…dz_{j_l}`, rewritten in the `u_j`.
pub fn p_of_ls(ring: &Arc<Ring>, l: &Relation, s: ExtSubset) -> Result<XiElement> {
    let supp = l.support_set();
    if !s.is_subset(supp) {
        return Err(Error::Config(format!("{s} is not contained in the support {supp}")));
    }
    let dl = d_of_l(ring, l);
    let js = s.to_vec();
    let mut acc = TdzElement::from_component(ring, s, p_of_l(ring, l));
    for (slot, &j) in js.iter().enumerate() {
        let mut wedge = TdzElement::from_poly(t_poly(ring, supp.remove(j)));
        for (k, &jk) in js.iter().enumerate() {
            let factor = if k == slot {
                dl.clone()
            } else {
                TdzElement::odd_monomial(ring, ExtSubset::singleton(jk))
            };
            wedge = wedge.ext_mul(&factor);
        }
        acc = acc.sub(&wedge);
    }
    xi_from_tdz(&acc)
}

/// `t_{|L|}·dL·dz_S`, rewritten in the `u_j`.
pub fn q_of_ls(ring: &Arc<Ring>, l: &Relation, s: ExtSubset) -> Result<XiElement> {
    let supp = l.support_set();
    if !s.is_subset(supp) {
        return Err(Error::Config(format!("{s} is not contained in the support {supp}")));
    }
    let e = TdzElement::from_poly(t_poly(ring, supp))
        .ext_mul(&d_of_l(ring, l))
        .ext_mul(&TdzElement::odd_monomial(ring, s));
    xi_from_tdz(&e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationMode {
    Circuits,
    AllRelations,
}

/// The relations a presentation is built from: circuits, or every relation
/// up to scalars (finite fields only).
pub fn select_relations(arr: &Arrangement, mode: RelationMode, caps: &Caps) -> Result<Vec<Relation>> {
    match mode {
        RelationMode::Circuits => Ok(arr.circuits()),
        RelationMode::AllRelations => {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for r in arr.all_relations(caps)? {
                let n = r.normalized();
                let key = (n.support().to_vec(), n.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
                if seen.insert(key) {
                    out.push(n);
                }
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub relation: Relation,
    pub subset: ExtSubset,
    pub element: XiElement,
}

/// Generators of `I` (commutative) or `K` (super), tagged with their `(L, S)`.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub is_super: bool,
    pub mode: RelationMode,
    pub ring: Arc<Ring>,
    pub generators: Vec<Generator>,
}

pub fn commutative_generators(arr: &Arrangement, mode: RelationMode, caps: &Caps) -> Result<Presentation> {
    let ring = t_ring(arr);
    let generators = select_relations(arr, mode, caps)?
        .into_iter()
        .map(|l| Generator {
            element: XiElement::from_poly(p_of_l(&ring, &l)),
            relation: l,
            subset: ExtSubset::empty(),
        })
        .collect();
    Ok(Presentation {
        is_super: false,
        mode,
        ring,
        generators,
    })
}

pub fn super_generators(arr: &Arrangement, mode: RelationMode, caps: &Caps) -> Result<Presentation> {
    let ring = t_ring(arr);
    let mut generators = Vec::new();
    for l in select_relations(arr, mode, caps)? {
        for s in l.support_set().subsets() {
            generators.push(Generator {
                element: p_of_ls(&ring, &l, s)?,
                relation: l.clone(),
                subset: s,
            });
        }
    }
    Ok(Presentation {
        is_super: true,
        mode,
        ring,
        generators,
    })
}

#[derive(Serialize)]
struct GeneratorJson {
    relation: Relation,
    subset: ExtSubset,
    element: String,
}

#[derive(Serialize)]
struct PresentationJson<'a> {
    kind: &'a str,
    field: String,
    mode: RelationMode,
    even_variables: Vec<String>,
    odd_variables: Vec<String>,
    grading: [(&'a str, u32); 2],
    generators: Vec<GeneratorJson>,
}

impl Presentation {
    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn elements(&self) -> Vec<XiElement> {
        self.generators.iter().map(|g| g.element.clone()).collect()
    }

    /// Commutative generators as polynomials (the empty-key components).
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.generators
            .iter()
            .map(|g| g.element.component(ExtSubset::empty()))
            .collect()
    }

    fn variable_names(&self) -> (Vec<String>, Vec<String>) {
        let m = self.ring.num_vars();
        let even = (1..=m).map(|i| format!("t{i}")).collect();
        let odd = if self.is_super { (1..=m).map(|i| format!("u{i}")).collect() } else { Vec::new() };
        (even, odd)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (even_variables, odd_variables) = self.variable_names();
        let doc = PresentationJson {
            kind: if self.is_super { "super" } else { "commutative" },
            field: self.field().to_string(),
            mode: self.mode,
            even_variables,
            odd_variables,
            grading: [("t", 2), ("u", 1)],
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorJson {
                    relation: g.relation.clone(),
                    subset: g.subset,
                    element: g.element.to_string(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("presentation serializes")
    }

    pub fn to_text(&self) -> String {
        let (even, odd) = self.variable_names();
        let mut out = String::new();
        let vars = even.iter().chain(&odd).cloned().collect::<Vec<_>>().join(", ");
        let name = if self.is_super { "K" } else { "I" };
        let _ = writeln!(out, "ring {}[{vars}]  (deg t = 2, deg u = 1)", self.field());
        let _ = writeln!(out, "{name} generated by {} elements:", self.generators.len());
        for g in &self.generators {
            if self.is_super {
                let _ = writeln!(out, "  [L = {}, S = {}]  {}", g.relation, g.subset, g.element);
            } else {
                let _ = writeln!(out, "  [L = {}]  {}", g.relation, g.element);
            }
        }
        out
    }
}

/// Generators of one affine chart: variables `t_i` off the flat and `z_j` on
/// it, odd generators `u_i` off the flat and `dz_j` on it. Odd index `i` in an
/// element key means `u_i` when `i ∉ flat` and `dz_i` when `i ∈ flat`.
#[derive(Debug, Clone)]
pub struct ChartRing {
    pub flat: Flat,
    pub inverted: ExtSubset,
    pub is_super: bool,
    pub ring: Arc<Ring>,
    pub generators: Vec<Generator>,
}

/// Chart variables: `z_j` (j in the flat, descending) then `t_i` (descending).
pub fn chart_variables(arr: &Arrangement, flat: &Flat) -> Vec<Var> {
    let mut vars: Vec<Var> = flat.indices.to_vec().into_iter().rev().map(|j| Var::Z(j as u32)).collect();
    vars.extend((1..=arr.m()).rev().filter(|i| !flat.indices.contains(*i)).map(|i| Var::T(i as u32)));
    vars
}

/// Divide `e` by `t_{flat ∩ |L|}` on the chart where `t_j = z_j^{-1}` for `j` in the flat.
///
/// A term `t^a·u_B` becomes `∏_{i∉flat} t_i^{a_i} · ∏_{j∈flat} z_j^{-e_j}` with
/// `e_j = a_j + [j∈B] − [j∈|L|]`, using `u_j = t_j·dz_j` on the flat.
pub fn divide_on_chart(e: &XiElement, l: &Relation, flat: &Flat, chart: &Arc<Ring>) -> Result<XiElement> {
    let src = e.ring();
    let supp = l.support_set();
    let mut out = XiElement::zero(chart);
    for (key, p) in e.components() {
        let mut terms = Vec::new();
        for t in p.terms() {
            let mut exps = Vec::new();
            for (rank, a) in t.mono.iter() {
                let Var::T(i) = src.var_at(rank) else {
                    return Err(Error::Config("chart division expects t variables".into()));
                };
                if !flat.indices.contains(i as usize) {
                    exps.push((chart.rank(Var::T(i)).unwrap(), a));
                }
            }
            for j in flat.indices.iter() {
                let a = t.mono.exponent(src.rank(Var::T(j as u32)).unwrap()) as i64;
                let e = a + key.contains(j) as i64 - supp.contains(j) as i64;
                if e > 0 {
                    return Err(Error::Config(format!("t{j} survives division on the chart")));
                }
                if e < 0 {
                    exps.push((chart.rank(Var::Z(j as u32)).unwrap(), (-e) as u32));
                }
            }
            terms.push(Term {
                coeff: t.coeff.clone(),
                mono: Monomial::from_exponents(exps),
            });
        }
        out.add_component(*key, Polynomial::from_terms(chart, terms));
    }
    Ok(out)
}

pub fn chart_ring(
    arr: &Arrangement,
    flat: &Flat,
    inverted: ExtSubset,
    is_super: bool,
    mode: RelationMode,
    caps: &Caps,
) -> Result<ChartRing> {
    if !inverted.is_subset(flat.indices) {
        return Err(Error::Config(format!("inverted set {inverted} is not inside the flat {}", flat.indices)));
    }
    let chart = Ring::new(arr.field(), MonomialOrder::lex(chart_variables(arr, flat))?);
    let full = if is_super {
        super_generators(arr, mode, caps)?
    } else {
        commutative_generators(arr, mode, caps)?
    };
    let generators = full
        .generators
        .into_iter()
        .map(|g| {
            Ok(Generator {
                element: divide_on_chart(&g.element, &g.relation, flat, &chart)?,
                ..g
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChartRing {
        flat: flat.clone(),
        inverted,
        is_super,
        ring: chart,
        generators,
    })
}

impl ChartRing {
    pub fn format_element(&self, e: &XiElement) -> String {
        let flat = self.flat.indices;
        e.format_with(|i| if flat.contains(i) { format!("dz{i}") } else { format!("u{i}") })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "flat": self.flat.indices,
            "quotient_dim": self.flat.quotient_dim,
            "inverted": self.inverted,
            "kind": if self.is_super { "super" } else { "commutative" },
            "variables": self.ring.vars().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "generators": self.generators.iter().map(|g| serde_json::json!({
                "relation": g.relation,
                "subset": g.subset,
                "element": self.format_element(&g.element),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let vars: Vec<String> = self.ring.vars().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(
            out,
            "chart flat {} inverted {}: {}[{}]",
            self.flat.indices,
            self.inverted,
            self.ring.field(),
            vars.join(", ")
        );
        for g in &self.generators {
            let _ = writeln!(out, "  [L = {}, S = {}]  {}", g.relation, g.subset, self.format_element(&g.element));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_ext;
    use proptest::prelude::*;

    fn e2() -> Arrangement {
        Arrangement::from_ints(Field::Rational, 2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap()
    }

    fn sum3() -> (Arrangement, Relation, Arc<Ring>) {
        let a = e2();
        let one = Field::Rational.one();
        let l = Relation::new(&a, vec![1, 2, 3], vec![one.clone(), one.clone(), one]).unwrap();
        let r = t_ring(&a);
        (a, l, r)
    }

    fn set(v: &[usize]) -> ExtSubset {
        ExtSubset::from_indices(v.iter().copied())
    }

    fn xi(s: &str, r: &Arc<Ring>) -> XiElement {
        parse_ext(s, r).unwrap()
    }

    #[test]
    fn p_of_l_examples() {
        let (_, l, r) = sum3();
        assert_eq!(p_of_l(&r, &l), crate::poly::parse_polynomial("t2*t3 + t1*t3 + t1*t2", &r).unwrap());
        let a = Arrangement::from_ints(Field::Rational, 1, &[vec![1], vec![1]]).unwrap();
        let l = Relation::new(&a, vec![1, 2], vec![Field::Rational.one(), Field::Rational.from_i64(-1)]).unwrap();
        assert_eq!(p_of_l(&t_ring(&a), &l).to_string(), "t2 - t1");
        let d = d_of_l(&t_ring(&a), &l);
        assert_eq!(d.to_string(), "dz1 - dz2");
        let two = Field::Rational.from_i64(2);
        assert_eq!(d_of_l(&t_ring(&a), &l.scaled(&two)), d.scale(&two));
    }

    #[test]
    fn p_of_ls_examples() {
        let (_, l, r) = sum3();
        assert_eq!(p_of_ls(&r, &l, set(&[2])).unwrap(), xi("u2*(t1+t3) - u1*t3 - u3*t1", &r));
        assert_eq!(p_of_ls(&r, &l, set(&[1, 2])).unwrap(), xi("u1*u2 + u2*u3 + u3*u1", &r));
        assert_eq!(p_of_ls(&r, &l, ExtSubset::empty()).unwrap(), XiElement::from_poly(p_of_l(&r, &l)));
        assert!(p_of_ls(&r, &l, set(&[1, 2, 3])).unwrap().is_zero());
        assert!(p_of_ls(&r, &l, set(&[4])).is_err());
    }

    #[test]
    fn q_of_ls_examples() {
        let (_, l, r) = sum3();
        assert_eq!(q_of_ls(&r, &l, ExtSubset::empty()).unwrap(), xi("u1*t2*t3 + u2*t1*t3 + u3*t1*t2", &r));
        assert!(q_of_ls(&r, &l, set(&[1, 2, 3])).unwrap().is_zero());
    }

    #[test]
    fn presentation_sizes() {
        let caps = Caps::default();
        assert_eq!(super_generators(&e2(), RelationMode::Circuits, &caps).unwrap().generators.len(), 8);
        let e1 = Arrangement::from_ints(
            Field::Prime(2),
            4,
            &[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1], vec![1, 0, 0, 1]],
        )
        .unwrap();
        assert_eq!(super_generators(&e1, RelationMode::Circuits, &caps).unwrap().generators.len(), 16);
        let c = commutative_generators(&e1, RelationMode::AllRelations, &caps).unwrap();
        assert_eq!(c.polynomials()[0].to_string(), "t2*t3*t4 + t1*t3*t4 + t1*t2*t4 + t1*t2*t3");
        let boolean = Arrangement::from_ints(Field::Prime(2), 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(super_generators(&boolean, RelationMode::Circuits, &caps).unwrap().generators.is_empty());
        let text = super_generators(&e2(), RelationMode::Circuits, &caps).unwrap().to_text();
        assert!(text.contains("u1*u2 - u1*u3 + u2*u3"));
    }

    #[test]
    fn chart_examples() {
        let caps = Caps::default();
        let e3 = Arrangement::from_ints(Field::Prime(2), 2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let empty = e3.closure(ExtSubset::empty());
        let c = chart_ring(&e3, &empty, ExtSubset::empty(), false, RelationMode::Circuits, &caps).unwrap();
        assert_eq!(c.to_text().lines().nth(1).unwrap().trim_start(), "[L = z1 + z2 + z3, S = {}]  t2*t3 + t1*t3 + t1*t2");
        let c = chart_ring(&e3, &e3.closure(set(&[1])), ExtSubset::empty(), false, RelationMode::Circuits, &caps).unwrap();
        assert_eq!(c.format_element(&c.generators[0].element), "t2*t3*z1 + t3 + t2");
        let top = e3.closure(set(&[1, 2]));
        let c = chart_ring(&e3, &top, set(&[3]), false, RelationMode::Circuits, &caps).unwrap();
        assert_eq!(c.format_element(&c.generators[0].element), "z3 + z2 + z1");
        let c = chart_ring(&e3, &top, ExtSubset::empty(), true, RelationMode::Circuits, &caps).unwrap();
        assert_eq!(c.generators.len(), 8);
        assert!(chart_ring(&e3, &empty, set(&[1]), false, RelationMode::Circuits, &caps).is_err());
    }

    fn arb_relation() -> impl Strategy<Value = (Arrangement, Relation)> {
        (2usize..=5, proptest::collection::vec(1i64..5, 5)).prop_map(|(k, cs)| {
            // z_1..z_{k-1} independent, z_k = -Σ c_j z_j, so L = Σ c_j z_j + z_k.
            let n = k - 1;
            let mut forms: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
            forms.push((0..n).map(|j| -cs[j]).collect());
            let a = Arrangement::from_ints(Field::Prime(5), n, &forms).unwrap();
            let l = a.circuits().remove(0);
            (a, l)
        })
    }

    proptest! {
        #[test]
        fn relation_identities((a, l) in arb_relation()) {
            let r = t_ring(&a);
            let k = l.len();
            let supp = l.support_set();
            let i1 = supp.min().unwrap();
            let u = |i: usize| XiElement::odd_monomial(&r, ExtSubset::singleton(i));
            let t = |i: usize| XiElement::from_poly(Polynomial::var(&r, Var::T(i as u32)).unwrap());
            for s in supp.subsets() {
                let p = p_of_ls(&r, &l, s).unwrap();
                for (key, poly) in p.components() {
                    prop_assert_eq!(key.len(), s.len());
                    for term in poly.terms() {
                        prop_assert_eq!(term.mono.degree() as usize, k - 1 - s.len());
                    }
                }
                let q = q_of_ls(&r, &l, s).unwrap();
                for i in s.iter() {
                    prop_assert_eq!(&q, &u(i).ext_mul(&p));
                }
            }
            let lhs = u(i1).ext_mul(&p_of_ls(&r, &l, ExtSubset::empty()).unwrap())
                .sub(&t(i1).ext_mul(&p_of_ls(&r, &l, ExtSubset::singleton(i1)).unwrap()));
            prop_assert_eq!(lhs, q_of_ls(&r, &l, ExtSubset::empty()).unwrap());
        }
    }
}
