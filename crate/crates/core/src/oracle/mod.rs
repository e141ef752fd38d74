//! Independent verification: kernels computed from first principles and
//! compared against the constructed presentations.

mod charts;
mod hilbert;
mod kernel;
mod lemma5;
mod localized;
mod points;
mod verify;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::arrangement::Arrangement;
use crate::modgroebner::{Label, ModuleElement, ModuleOrder};
use crate::superalg::XiElement;

pub use charts::verify_charts;
pub use hilbert::{hilbert, verify_hilbert, HilbertTable};
pub use kernel::{kernel_i, kernel_k_degree, kernel_k_degree_with, n_r_generators, p_r_columns};
pub use lemma5::verify_groebner_lemma;
pub use localized::{eval_chart, eval_h, eval_psi, form_poly, Evaluator, Image, LocalizedOmegaElement};
pub use points::{count_points, verify_stratification, FlatCount, PointCount};
pub use verify::{
    default_mode, super_degree_generators, verify_kernel_consistency, verify_lemma7, verify_minimal,
    verify_theorem1, verify_theorem2,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Status::Pass
    }
}

/// Outcome of one check on one arrangement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub instance: String,
    pub status: Status,
    pub details: BTreeMap<String, Value>,
    pub witnesses: Vec<String>,
}

impl Report {
    pub fn new(check: &str, arr: &Arrangement) -> Report {
        Report {
            check: check.to_string(),
            instance: instance_name(arr),
            status: Status::Pass,
            details: BTreeMap::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn detail(&mut self, key: &str, v: impl Serialize) {
        self.details
            .insert(key.to_string(), serde_json::to_value(v).expect("serializable detail"));
    }

    /// Records a failure with a witness.
    pub fn fail(&mut self, witness: impl Into<String>) {
        self.status = Status::Fail;
        self.witnesses.push(witness.into());
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} [{}]: {}\n",
            self.check,
            self.instance,
            if self.passed() { "pass" } else { "FAIL" }
        );
        for (k, v) in &self.details {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        for w in &self.witnesses {
            out.push_str(&format!("  witness: {w}\n"));
        }
        out
    }
}

/// Compact description, e.g. `F_2 n=2 [[1,0],[0,1],[1,1]]`.
pub fn instance_name(arr: &Arrangement) -> String {
    let forms: Vec<String> = arr
        .forms()
        .iter()
        .map(|z| {
            let cs: Vec<String> = z.iter().map(|c| c.to_string()).collect();
            format!("[{}]", cs.join(","))
        })
        .collect();
    format!("{} n={} [{}]", arr.field(), arr.n(), forms.join(","))
}

/// `Σ_I f_I u_I` as `Σ_I f_I e_I`.
pub fn xi_to_module(e: &XiElement, order: ModuleOrder) -> ModuleElement {
    ModuleElement::from_entries(
        e.ring(),
        order,
        e.components().iter().map(|(k, p)| (Label::subset(*k), p.clone())),
    )
}
