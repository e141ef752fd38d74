//! Point counts of `Spec F_p[t]/I` against the stratification by flats.

use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::{Polynomial, Var};
use crate::superalg::ExtSubset;

use super::kernel::kernel_i;
use super::Report;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatCount {
    pub flat: ExtSubset,
    pub quotient_dim: usize,
    pub points: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointCount {
    /// `|V(I)(F_p)|` by brute force over `F_p^m`.
    pub lhs: u128,
    /// `Σ_F |complement of the restricted arrangement on F_p^{dim}|`.
    pub rhs: u128,
    pub per_flat: Vec<FlatCount>,
}

/// Polynomial as `(coefficient, [(variable index, exponent)])` over `Z/p`.
struct Compiled {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl Compiled {
    fn new(f: &Polynomial, index: impl Fn(Var) -> usize) -> Compiled {
        let ring = f.ring();
        let terms = f
            .terms()
            .iter()
            .map(|t| {
                let Scalar::Mod { value, .. } = t.coeff else {
                    unreachable!("finite field coefficient")
                };
                (value, t.mono.iter().map(|(r, e)| (index(ring.var_at(r)), e)).collect())
            })
            .collect();
        Compiled { terms }
    }

    fn eval(&self, y: &[u64], p: u64) -> u64 {
        self.terms.iter().fold(0, |acc, (c, mono)| {
            let v = mono.iter().fold(*c, |v, &(i, e)| v * pow_mod(y[i], e, p) % p);
            (acc + v) % p
        })
    }
}

fn pow_mod(b: u64, mut e: u32, p: u64) -> u64 {
    let (mut b, mut r) = (b % p, 1 % p);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Calls `f` on every vector of `F_p^n`.
fn for_each_point(p: u64, n: usize, mut f: impl FnMut(&[u64])) {
    let mut y = vec![0u64; n];
    loop {
        f(&y);
        let mut k = 0;
        while k < n {
            y[k] += 1;
            if y[k] < p {
                break;
            }
            y[k] = 0;
            k += 1;
        }
        if k == n {
            return;
        }
    }
}

fn checked_points(p: u64, dim: usize, caps: &Caps) -> Result<()> {
    let total = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if total > caps.points {
        return Err(Error::cap("points to enumerate", total, caps.points));
    }
    Ok(())
}

/// Points of the complement `{x ∈ F_p^n : z_i(x) ≠ 0 ∀i}`.
fn complement_points(arr: &Arrangement, p: u64) -> u128 {
    let forms: Vec<Vec<u64>> = arr
        .forms()
        .iter()
        .map(|z| {
            z.iter()
                .map(|c| match c {
                    Scalar::Mod { value, .. } => *value,
                    _ => unreachable!("finite field coefficient"),
                })
                .collect()
        })
        .collect();
    let mut count = 0u128;
    for_each_point(p, arr.n(), |x| {
        if forms.iter().all(|z| z.iter().zip(x).fold(0, |a, (c, v)| (a + c * v) % p) != 0) {
            count += 1;
        }
    });
    count
}

pub fn count_points(arr: &Arrangement, caps: &Caps) -> Result<PointCount> {
    let Some(p) = arr.field().size() else {
        return Err(Error::Config("point counts need a finite field".into()));
    };
    checked_points(p, arr.m(), caps)?;
    checked_points(p, arr.n(), caps)?;
    let flats = arr.flats(caps)?;
    let gens: Vec<Compiled> = kernel_i(arr)
        .iter()
        .map(|g| {
            Compiled::new(g, |v| match v {
                Var::T(i) => i as usize - 1,
                other => unreachable!("unexpected variable {other}"),
            })
        })
        .collect();
    let mut lhs = 0u128;
    for_each_point(p, arr.m(), |y| {
        if gens.iter().all(|g| g.eval(y, p) == 0) {
            lhs += 1;
        }
    });
    let per_flat: Vec<FlatCount> = flats
        .iter()
        .map(|f| FlatCount {
            flat: f.indices,
            quotient_dim: f.quotient_dim,
            points: if f.indices.is_empty() { 1 } else { complement_points(&arr.restrict_to_flat(f), p) },
        })
        .collect();
    let rhs = per_flat.iter().map(|f| f.points).sum();
    Ok(PointCount { lhs, rhs, per_flat })
}

pub fn verify_stratification(arr: &Arrangement, caps: &Caps) -> Result<Report> {
    let c = count_points(arr, caps)?;
    let mut rep = Report::new("stratification", arr);
    rep.detail("lhs", c.lhs);
    rep.detail("rhs", c.rhs);
    rep.detail("per_flat", &c.per_flat);
    if c.lhs != c.rhs {
        rep.fail(format!("{} points on the variety, {} from the flats", c.lhs, c.rhs));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn small_counts() {
        let caps = Caps::default();
        let e3 = Arrangement::from_ints(Field::Prime(2), 2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let c = count_points(&e3, &caps).unwrap();
        assert_eq!((c.lhs, c.rhs), (4, 4));
        let pts: Vec<u128> = c.per_flat.iter().map(|f| f.points).collect();
        assert_eq!(pts, vec![1, 1, 1, 1, 0]);
        // Boolean arrangement: the variety is all of F_3^2.
        let b = Arrangement::from_ints(Field::Prime(3), 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(count_points(&b, &caps).unwrap().lhs, 9);
    }

    #[test]
    fn caps_and_fields() {
        let e3 = Arrangement::from_ints(Field::Prime(2), 2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let caps = Caps { points: 7, ..Caps::default() };
        assert!(matches!(count_points(&e3, &caps), Err(Error::CapExceeded { .. })));
        let q = Arrangement::from_ints(Field::Rational, 1, &[vec![1]]).unwrap();
        assert!(count_points(&q, &Caps::default()).is_err());
    }
}
