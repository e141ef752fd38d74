//! Chart presentations against kernels of the chart maps.

use std::sync::Arc;

use crate::arrangement::{Arrangement, Flat};
use crate::caps::Caps;
use crate::error::Result;
use crate::groebner::{eliminate, groebner_ideal, ideal_equal, normal_form};
use crate::poly::{Polynomial, Ring, Var};
use crate::relations::chart_ring;
use crate::superalg::ExtSubset;

use super::kernel::eliminate_x;
use super::localized::eval_chart;
use super::{default_mode, Report};

/// `(J : (∏_{j∈T} z_j)^∞)` via an auxiliary variable.
fn saturate(gens: &[Polynomial], ring: &Arc<Ring>, inverted: ExtSubset) -> Result<Vec<Polynomial>> {
    if inverted.is_empty() {
        return Ok(gens.to_vec());
    }
    let big = ring.with_leading_vars(&[Var::S])?;
    let mut all = gens.iter().map(|g| g.to_ring(&big)).collect::<Result<Vec<_>>>()?;
    let prod = inverted
        .iter()
        .fold(Polynomial::var(&big, Var::S)?, |acc, j| &acc * &Polynomial::var(&big, Var::Z(j as u32)).unwrap());
    all.push(&prod - &Polynomial::one(&big));
    eliminate(&all, &[Var::S])?.iter().map(|p| p.to_ring(ring)).collect()
}

/// Kernel of `t_i ↦ 1/z_i(x)` (i off the flat), `z_j ↦ z_j(x)` (j on it).
fn chart_kernel(arr: &Arrangement, flat: &Flat, ring: &Arc<Ring>) -> Result<Vec<Polynomial>> {
    eliminate_x(arr, ring, |big, z| {
        (1..=arr.m())
            .map(|i| {
                if flat.indices.contains(i) {
                    &Polynomial::var(big, Var::Z(i as u32)).unwrap() - &z(i)
                } else {
                    &(&z(i) * &Polynomial::var(big, Var::T(i as u32)).unwrap()) - &Polynomial::one(big)
                }
            })
            .collect()
    })
}

fn check_flat(arr: &Arrangement, flat: &Flat, inverted: ExtSubset, is_super: bool, caps: &Caps, rep: &mut Report) -> Result<()> {
    let chart = chart_ring(arr, flat, inverted, is_super, default_mode(arr, caps), caps)?;
    let tag = format!("flat {} inverted {}", flat.indices, inverted);
    for g in &chart.generators {
        if !eval_chart(arr, flat.indices, &g.element).is_zero() {
            rep.fail(format!("{tag}: {} does not vanish", chart.format_element(&g.element)));
        }
    }
    if is_super {
        return Ok(());
    }
    let gens: Vec<Polynomial> = chart
        .generators
        .iter()
        .map(|g| g.element.component(ExtSubset::empty()))
        .collect();
    let lhs = saturate(&gens, &chart.ring, inverted)?;
    let rhs = saturate(&chart_kernel(arr, flat, &chart.ring)?, &chart.ring, inverted)?;
    if !ideal_equal(&lhs, &rhs) {
        let gb = groebner_ideal(&lhs);
        match rhs.iter().find(|o| !normal_form(o, &gb).is_zero()) {
            Some(o) => rep.fail(format!("{tag}: kernel element {o} not generated")),
            None => rep.fail(format!("{tag}: generated ideal is larger than the kernel")),
        }
    }
    Ok(())
}

/// Checks one flat (or every flat) with the variables `z_T` inverted.
/// Commutative charts are compared with the kernel; super charts are checked
/// for vanishing only.
pub fn verify_charts(
    arr: &Arrangement,
    flat: Option<ExtSubset>,
    inverted: ExtSubset,
    is_super: bool,
    caps: &Caps,
) -> Result<Report> {
    let flats: Vec<Flat> = match flat {
        Some(f) => {
            let c = arr.closure(f);
            if c.indices != f {
                return Err(crate::error::Error::Config(format!("{f} is not a flat (its closure is {})", c.indices)));
            }
            vec![c]
        }
        None => arr.flats(caps)?,
    };
    let mut rep = Report::new("charts", arr);
    rep.detail("super", is_super);
    rep.detail("flats", flats.len());
    for f in &flats {
        if inverted.is_subset(f.indices) {
            check_flat(arr, f, inverted, is_super, caps, &mut rep)?;
        }
    }
    Ok(rep)
}
