use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// Named commuting variables. The odd generators (`u_i`, `dz_i`, `dx_i`) are not
/// variables of a polynomial ring; they live in the exterior keys of
/// [`crate::superalg::ExtElement`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// The auxiliary intersection variable.
    S,
    X(u32),
    T(u32),
    Z(u32),
}

impl Var {
    /// Parse `t3`, `x1`, `z2` or `s`.
    pub fn parse(name: &str) -> Option<Var> {
        if name == "s" {
            return Some(Var::S);
        }
        let (head, tail) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
        let idx: u32 = tail.parse().ok().filter(|&i| i > 0)?;
        match head {
            "x" => Some(Var::X(idx)),
            "t" => Some(Var::T(idx)),
            "z" => Some(Var::Z(idx)),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::S => write!(f, "s"),
            Var::X(i) => write!(f, "x{i}"),
            Var::T(i) => write!(f, "t{i}"),
            Var::Z(i) => write!(f, "z{i}"),
        }
    }
}

/// Lex order given by an explicit variable list, greatest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    vars: Vec<Var>,
}

impl MonomialOrder {
    pub fn lex(vars: Vec<Var>) -> Result<MonomialOrder> {
        let mut seen = vars.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != vars.len() {
            return Err(Error::Config("repeated variable in monomial order".into()));
        }
        if vars.len() > u16::MAX as usize {
            return Err(Error::Config("too many variables".into()));
        }
        Ok(MonomialOrder { vars })
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }
}

/// A polynomial ring `F[vars]` under a lex order. Rings compare structurally.
#[derive(Debug)]
pub struct Ring {
    field: Field,
    order: MonomialOrder,
    rank: HashMap<Var, u16>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        self.field == other.field && self.order == other.order
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new(field: Field, order: MonomialOrder) -> Arc<Ring> {
        let rank = order
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, i as u16))
            .collect();
        Arc::new(Ring { field, order, rank })
    }

    /// `F[t_1..t_m]` with `t_m > ... > t_1`.
    pub fn t_ring(field: Field, m: usize) -> Arc<Ring> {
        let vars = (1..=m as u32).rev().map(Var::T).collect();
        Ring::new(field, MonomialOrder::lex(vars).expect("distinct variables"))
    }

    /// `F[x_1..x_n]` with `x_n > ... > x_1`.
    pub fn x_ring(field: Field, n: usize) -> Arc<Ring> {
        let vars = (1..=n as u32).rev().map(Var::X).collect();
        Ring::new(field, MonomialOrder::lex(vars).expect("distinct variables"))
    }

    /// This ring with extra variables placed above all existing ones.
    pub fn with_leading_vars(&self, extra: &[Var]) -> Result<Arc<Ring>> {
        let mut vars = extra.to_vec();
        vars.extend_from_slice(&self.order.vars);
        Ok(Ring::new(self.field, MonomialOrder::lex(vars)?))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn vars(&self) -> &[Var] {
        &self.order.vars
    }

    pub fn rank(&self, v: Var) -> Option<u16> {
        self.rank.get(&v).copied()
    }

    pub fn var_at(&self, rank: u16) -> Var {
        self.order.vars[rank as usize]
    }

    pub fn num_vars(&self) -> usize {
        self.order.vars.len()
    }

    pub(crate) fn same(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.order.vars.iter().map(|v| v.to_string()).collect();
        write!(f, "{}[{}]", self.field, names.join(" > "))
    }
}
