//! Inequality verifiers, constructive procedures, body family generators,
//! and the extremal-ratio fuzzer. Every verdict is decided by exact
//! integer/rational comparison; floats appear only as diagnostics.

mod checks;
mod families;
mod fuzz;
mod reverse_meyer;
mod scan;

pub use checks::*;
pub use families::{
    cross, cross_h, cube, cube_section_u, default_radius, double_pyramid, q_box,
    random_lattice_polygon, random_symmetric_polytope, random_unconditional_box, shrunk_cube,
    slab, t_simplex, FamilyId, FamilyInstance,
};
pub use fuzz::{fuzz_extremal, translation_ratio, FuzzEntry, FuzzTarget, Leaderboard};
pub use reverse_meyer::{reverse_meyer_construct, ReverseMeyer};
pub use scan::{d4_lattice, slicing_ratio_scan, SlicingScanRow};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exact::{format_rat, to_f64, Rational};

/// Outcome of one exact inequality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inapplicable,
}

/// One verified inequality instance. `lhs_power` and `rhs_power` hold the
/// exact cross-multiplied sides as `p` or `p/q` strings; `ratio_float` is a
/// diagnostic only and never feeds the verdict.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub instance: String,
    pub lhs_power: String,
    pub rhs_power: String,
    pub ratio_float: f64,
    pub verdict: Verdict,
    pub witnesses: BTreeMap<String, String>,
    pub search_bounds: BTreeMap<String, String>,
    pub flags: Vec<String>,
}

impl CheckReport {
    pub fn new(check_id: &str, instance: &str) -> CheckReport {
        CheckReport {
            check_id: check_id.to_string(),
            instance: instance.to_string(),
            lhs_power: "0".into(),
            rhs_power: "0".into(),
            ratio_float: f64::NAN,
            verdict: Verdict::Inapplicable,
            witnesses: BTreeMap::new(),
            search_bounds: BTreeMap::new(),
            flags: Vec::new(),
        }
    }

    /// Fill the exact sides and derive the float diagnostic.
    pub fn with_sides(mut self, lhs: &Rational, rhs: &Rational) -> CheckReport {
        use num_traits::Zero;
        self.lhs_power = format_rat(lhs);
        self.rhs_power = format_rat(rhs);
        self.ratio_float = if rhs.is_zero() {
            f64::INFINITY
        } else {
            to_f64(&(lhs / rhs))
        };
        self
    }

    /// Verdict `holds` iff `lhs <= rhs` (both exact).
    pub fn decide_le(mut self, lhs: &Rational, rhs: &Rational) -> CheckReport {
        self = self.with_sides(lhs, rhs);
        self.verdict = if lhs <= rhs { Verdict::Holds } else { Verdict::Fails };
        self
    }

    /// Verdict `holds` iff `lhs < rhs` strictly.
    pub fn decide_lt(mut self, lhs: &Rational, rhs: &Rational) -> CheckReport {
        self = self.with_sides(lhs, rhs);
        self.verdict = if lhs < rhs { Verdict::Holds } else { Verdict::Fails };
        self
    }

    pub fn inapplicable(mut self, reason: &str) -> CheckReport {
        self.verdict = Verdict::Inapplicable;
        self.flags.push(format!("inapplicable: {reason}"));
        self
    }

    pub fn witness(mut self, key: &str, value: String) -> CheckReport {
        self.witnesses.insert(key.to_string(), value);
        self
    }

    pub fn bound(mut self, key: &str, value: String) -> CheckReport {
        self.search_bounds.insert(key.to_string(), value);
        self
    }

    pub fn flag(mut self, value: &str) -> CheckReport {
        self.flags.push(value.to_string());
        self
    }

    pub fn ok(&self) -> bool {
        self.verdict != Verdict::Fails
    }
}
