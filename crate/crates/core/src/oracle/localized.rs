//! Evaluation into `Ω[z_1^{-1}, …, z_m^{-1}]`, with `Ω = F[x] ⊗ Λ[dx]`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::arrangement::Arrangement;
use crate::poly::{Polynomial, Ring, Var};
use crate::superalg::{ExtSubset, OmegaElement, XiElement};

/// `numerator / (z_1 ⋯ z_m)^denominator_exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedOmegaElement {
    pub numerator: OmegaElement,
    pub denominator_exp: u32,
}

impl LocalizedOmegaElement {
    /// Zero test by full expansion of the numerator.
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

/// Where each generator of the source ring goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Image {
    /// `z_i^{-1}` (even) or `z_i^{-1} dz_i` (odd).
    Reciprocal(usize),
    /// `z_i` (even) or `dz_i` (odd).
    Direct(usize),
}

/// Substitution of forms into a source ring `F[even] ⊗ Λ[odd]`.
pub struct Evaluator<'a> {
    arr: &'a Arrangement,
    x: Arc<Ring>,
    forms: Vec<Polynomial>,
    powers: HashMap<(usize, u32), Polynomial>,
}

impl<'a> Evaluator<'a> {
    pub fn new(arr: &'a Arrangement) -> Self {
        let x = Ring::x_ring(arr.field(), arr.n());
        let forms = (1..=arr.m()).map(|i| form_poly(arr, i, &x)).collect();
        Evaluator {
            arr,
            x,
            forms,
            powers: HashMap::new(),
        }
    }

    pub fn x_ring(&self) -> &Arc<Ring> {
        &self.x
    }

    fn z_pow(&mut self, i: usize, e: u32) -> Polynomial {
        if e == 0 {
            return Polynomial::one(&self.x);
        }
        if let Some(p) = self.powers.get(&(i, e)) {
            return p.clone();
        }
        let p = &self.z_pow(i, e - 1) * &self.forms[i - 1];
        self.powers.insert((i, e), p.clone());
        p
    }

    /// Apply the substitution: `even(v)` gives the image of each even
    /// variable, `odd(j)` the image of odd generator `j`.
    pub fn eval(
        &mut self,
        e: &XiElement,
        even: impl Fn(Var) -> Image,
        odd: impl Fn(usize) -> Image,
    ) -> LocalizedOmegaElement {
        let m = self.arr.m();
        let src = e.ring().clone();
        // (denominator exponents per form, numerator exponents per form, coefficient, odd key)
        let mut terms = Vec::new();
        for (key, p) in e.components() {
            for t in p.terms() {
                let mut den = vec![0u32; m + 1];
                let mut num = vec![0u32; m + 1];
                for (rank, a) in t.mono.iter() {
                    match even(src.var_at(rank)) {
                        Image::Reciprocal(i) => den[i] += a,
                        Image::Direct(i) => num[i] += a,
                    }
                }
                let mut dz = Vec::new();
                for j in key.iter() {
                    match odd(j) {
                        Image::Reciprocal(i) => {
                            den[i] += 1;
                            dz.push(i);
                        }
                        Image::Direct(i) => dz.push(i),
                    }
                }
                terms.push((den, num, t.coeff.clone(), dz));
            }
        }
        let n_exp = terms.iter().flat_map(|(d, ..)| d.iter().copied()).max().unwrap_or(0);
        let mut out = OmegaElement::zero(&self.x);
        for (den, num, coeff, dz) in terms {
            let mut poly = Polynomial::constant(&self.x, coeff);
            for i in 1..=m {
                let e = n_exp - den[i] + num[i];
                if e > 0 {
                    poly = &poly * &self.z_pow(i, e);
                }
            }
            let mut form = OmegaElement::from_poly(poly);
            for i in dz {
                form = form.ext_mul(&self.dz(i));
            }
            out = out.add(&form);
        }
        LocalizedOmegaElement {
            numerator: out,
            denominator_exp: n_exp,
        }
    }

    /// `dz_i` in the `dx` basis.
    fn dz(&self, i: usize) -> OmegaElement {
        OmegaElement::from_components(
            &self.x,
            self.arr
                .expand_dz_in_dx(ExtSubset::singleton(i))
                .into_iter()
                .map(|(k, c)| (k, Polynomial::constant(&self.x, c))),
        )
    }

    /// `ψ`: `t_i ↦ z_i^{-1}`, `u_i ↦ z_i^{-1} dz_i`.
    pub fn psi(&mut self, e: &XiElement) -> LocalizedOmegaElement {
        self.eval(e, t_reciprocal, Image::Reciprocal)
    }

    /// `h`: `t_i ↦ z_i^{-1}`.
    pub fn h(&mut self, f: &Polynomial) -> LocalizedOmegaElement {
        self.psi(&XiElement::from_poly(f.clone()))
    }
}

fn t_reciprocal(v: Var) -> Image {
    match v {
        Var::T(i) => Image::Reciprocal(i as usize),
        Var::Z(i) => Image::Direct(i as usize),
        other => panic!("{other} has no image under the substitution"),
    }
}

/// `z_i` as a polynomial in the `x` ring.
pub fn form_poly(arr: &Arrangement, i: usize, x: &Arc<Ring>) -> Polynomial {
    let mut acc = Polynomial::zero(x);
    for (k, c) in arr.form(i).iter().enumerate() {
        if !c.is_zero() {
            let v = Polynomial::var(x, Var::X(k as u32 + 1)).expect("x variable");
            acc = &acc + &v.scale(c);
        }
    }
    acc
}

pub fn eval_h(arr: &Arrangement, f: &Polynomial) -> LocalizedOmegaElement {
    Evaluator::new(arr).h(f)
}

pub fn eval_psi(arr: &Arrangement, e: &XiElement) -> LocalizedOmegaElement {
    Evaluator::new(arr).psi(e)
}

/// Chart map: `t_i ↦ z_i^{-1}`, `z_j ↦ z_j`, `u_i ↦ z_i^{-1} dz_i`, `dz_j ↦ dz_j`
/// where odd index `j` means `dz_j` when it lies in `flat`.
pub fn eval_chart(arr: &Arrangement, flat: ExtSubset, e: &XiElement) -> LocalizedOmegaElement {
    Evaluator::new(arr).eval(e, t_reciprocal, |j| {
        if flat.contains(j) {
            Image::Direct(j)
        } else {
            Image::Reciprocal(j)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::relations::{p_of_l, p_of_ls, t_ring};
    use crate::text::parse_ext;

    fn e2() -> Arrangement {
        Arrangement::from_ints(Field::Rational, 2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap()
    }

    #[test]
    fn h_examples() {
        let a = e2();
        let r = t_ring(&a);
        let t1 = Polynomial::var(&r, Var::T(1)).unwrap();
        let v = eval_h(&a, &t1);
        assert_eq!(v.denominator_exp, 1);
        // z2 z3 = x2 (-x1 - x2)
        assert_eq!(v.numerator.to_string(), "-x2^2 - x1*x2");
        let one = eval_h(&a, &Polynomial::one(&r));
        assert_eq!((one.denominator_exp, one.numerator.to_string()), (0, "1".to_string()));
        for l in a.circuits() {
            assert!(eval_h(&a, &p_of_l(&r, &l)).is_zero());
        }
    }

    #[test]
    fn psi_examples() {
        let a = e2();
        let r = t_ring(&a);
        let u1: XiElement = parse_ext("u1", &r).unwrap();
        let v = eval_psi(&a, &u1);
        assert_eq!(v.numerator.to_string(), "-x2^2*dx1 - x1*x2*dx1");
        let l = a.circuits().remove(0);
        let s = crate::superalg::ExtSubset::from_indices([1, 2]);
        assert!(eval_psi(&a, &p_of_ls(&r, &l, s).unwrap()).is_zero());
        assert!(eval_psi(&a, &u1.ext_mul(&u1)).is_zero());
        assert!(!eval_psi(&a, &parse_ext("u1*u2", &r).unwrap()).is_zero());
    }
}
