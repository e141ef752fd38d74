use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::monomial::Monomial;
use super::ring::{Ring, Var};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Scalar,
    pub mono: Monomial,
}

/// A polynomial in canonical form: nonzero coefficients, distinct monomials,
/// terms strictly decreasing in the ring's lex order.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Polynomial) -> bool {
        Ring::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Polynomial {
        Polynomial::monomial(ring, c, Monomial::one())
    }

    pub fn one(ring: &Arc<Ring>) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn monomial(ring: &Arc<Ring>, c: Scalar, mono: Monomial) -> Polynomial {
        assert_eq!(c.field(), ring.field(), "coefficient outside the ring's field");
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![Term { coeff: c, mono }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<Ring>, v: Var) -> Result<Polynomial> {
        let rank = ring
            .rank(v)
            .ok_or_else(|| Error::Config(format!("variable {v} is not in {ring}")))?;
        Ok(Polynomial::monomial(ring, ring.field().one(), Monomial::var(rank, 1)))
    }

    /// Canonicalize an arbitrary list of terms.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<Term>) -> Polynomial {
        terms.sort_by(|a, b| b.mono.cmp(&a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff = &last.coeff + &t.coeff,
                _ => {
                    if let Some(last) = out.last() {
                        if last.coeff.is_zero() {
                            out.pop();
                        }
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|t| t.coeff.is_zero()) {
            out.pop();
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Wrap terms that are already canonical.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<Term>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| w[0].mono > w[1].mono));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Maximal total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].mono.degree() == w[1].mono.degree())
    }

    pub fn contains_var(&self, v: Var) -> bool {
        match self.ring.rank(v) {
            Some(r) => self.terms.iter().any(|t| t.mono.exponent(r) > 0),
            None => false,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: &t.coeff * c,
                mono: t.mono.clone(),
            })
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: &t.coeff * c,
                mono: t.mono.mul(m),
            })
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    /// `self - c * m * g` in one merge pass.
    pub fn sub_mul_term(&self, c: &Scalar, m: &Monomial, g: &Polynomial) -> Polynomial {
        let a = &self.terms;
        let b = &g.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let neg_c = -c;
        let (mut i, mut j) = (0, 0);
        let next_b = |j: usize| Term {
            coeff: &b[j].coeff * &neg_c,
            mono: b[j].mono.mul(m),
        };
        let mut pending: Option<Term> = if j < b.len() { Some(next_b(j)) } else { None };
        while i < a.len() {
            let Some(tb) = pending.as_ref() else { break };
            match a[i].mono.cmp(&tb.mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = if j < b.len() { Some(next_b(j)) } else { None };
                }
                Ordering::Equal => {
                    let s = &a[i].coeff + &tb.coeff;
                    if !s.is_zero() {
                        out.push(Term {
                            coeff: s,
                            mono: a[i].mono.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                    pending = if j < b.len() { Some(next_b(j)) } else { None };
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        if let Some(tb) = pending {
            out.push(tb);
            j += 1;
            while j < b.len() {
                out.push(next_b(j));
                j += 1;
            }
        }
        Polynomial::from_sorted(&self.ring, out)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Ring::same(&self.ring, &other.ring) {
            Ok(())
        } else if self.ring.field() != other.ring.field() {
            Err(Error::Config(format!(
                "field mismatch: {} vs {}",
                self.ring.field(),
                other.ring.field()
            )))
        } else {
            Err(Error::Config(format!("ring mismatch: {} vs {}", self.ring, other.ring)))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.sub_mul_term(&-&self.field().one(), &Monomial::one(), other))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.sub_mul_term(&self.field().one(), &Monomial::one(), other))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        let minus_one = -&self.field().one();
        for t in &small.terms {
            acc = acc.sub_mul_term(&(&t.coeff * &minus_one), &t.mono, big);
        }
        Ok(acc)
    }

    /// Evaluate with `values[rank]` substituted for each variable.
    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        let mut acc = self.field().zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (r, e) in t.mono.iter() {
                v = &v * &values[r as usize].pow(e as u64);
            }
            acc = &acc + &v;
        }
        acc
    }

    /// The same polynomial in another ring over the same field, matching variables by name.
    pub fn to_ring(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        if Ring::same(&self.ring, target) {
            return Ok(self.clone());
        }
        if self.field() != target.field() {
            return Err(Error::Config(format!(
                "field mismatch: {} vs {}",
                self.field(),
                target.field()
            )));
        }
        let map: Vec<Option<u16>> = self.ring.vars().iter().map(|v| target.rank(*v)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut pairs = Vec::with_capacity(t.mono.num_vars());
            for (r, e) in t.mono.iter() {
                let nr = map[r as usize].ok_or_else(|| {
                    Error::Config(format!("variable {} is missing from {target}", self.ring.var_at(r)))
                })?;
                pairs.push((nr, e));
            }
            terms.push(Term {
                coeff: t.coeff.clone(),
                mono: Monomial::from_exponents(pairs),
            });
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Format a monomial with variables in ascending name order (`t1*t3^2`).
    pub fn format_monomial(ring: &Ring, mono: &Monomial) -> String {
        let mut vars: Vec<(Var, u32)> = mono.iter().map(|(r, e)| (ring.var_at(r), e)).collect();
        vars.sort();
        vars.iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Render `c_1*m_1 + c_2*m_2 - ...`; an empty monomial string means the unit.
pub(crate) fn format_sum<'a>(terms: impl Iterator<Item = (&'a Scalar, String)>) -> String {
    let mut out = String::new();
    for (i, (c, mono)) in terms.enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_sum(
            self.terms
                .iter()
                .map(|t| (&t.coeff, Polynomial::format_monomial(&self.ring, &t.mono))),
        );
        f.write_str(&s)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-&self.field().one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn q3() -> Arc<Ring> {
        Ring::t_ring(Field::Rational, 3)
    }

    #[test]
    fn difference_of_squares() {
        let r = q3();
        let a = parse_polynomial("t1 + t2", &r).unwrap();
        let b = parse_polynomial("t1 - t2", &r).unwrap();
        assert_eq!((&a * &b).to_string(), "-t2^2 + t1^2");
        assert_eq!(&a * &b, parse_polynomial("t1^2 - t2^2", &r).unwrap());
    }

    #[test]
    fn frobenius_in_characteristic_two() {
        let r = Ring::t_ring(Field::Prime(2), 2);
        let a = parse_polynomial("t1 + t2", &r).unwrap();
        assert_eq!(&a * &a, parse_polynomial("t1^2 + t2^2", &r).unwrap());
    }

    #[test]
    fn self_difference_vanishes() {
        let r = Ring::t_ring(Field::Prime(2), 4);
        let p = parse_polynomial("t2*t3*t4 + t1*t3*t4 + t1*t2*t4 + t1*t2*t3", &r).unwrap();
        let sq = &p * &p;
        assert!((&sq - &sq).is_zero());
        assert_eq!(p.to_string(), "t2*t3*t4 + t1*t3*t4 + t1*t2*t4 + t1*t2*t3");
    }

    #[test]
    fn mixing_fields_is_a_configuration_error() {
        let a = Polynomial::one(&Ring::t_ring(Field::Prime(2), 2));
        let b = Polynomial::one(&Ring::t_ring(Field::Rational, 2));
        assert!(matches!(a.try_add(&b), Err(Error::Config(_))));
        assert!(matches!(a.try_mul(&b), Err(Error::Config(_))));
    }

    #[test]
    fn ring_transfer_by_name() {
        let r = q3();
        let big = r.with_leading_vars(&[Var::S]).unwrap();
        let p = parse_polynomial("2*t3*t1 - t2", &r).unwrap();
        let q = p.to_ring(&big).unwrap();
        assert_eq!(q.to_ring(&r).unwrap(), p);
        let s = Polynomial::var(&big, Var::S).unwrap();
        assert!(s.to_ring(&r).is_err());
    }

    #[test]
    fn evaluation() {
        let r = Ring::t_ring(Field::Prime(5), 2);
        let p = parse_polynomial("t1*t2 + 3*t2^2", &r).unwrap();
        let f = Field::Prime(5);
        // values are indexed by rank: rank 0 is t2
        let v = p.eval(&[f.from_i64(2), f.from_i64(4)]);
        assert_eq!(v, f.from_i64(8 + 12));
    }
}
