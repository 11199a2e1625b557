//! Scenario runners reproducing the constructions: each returns a Report
//! whose computed/certified/evidence lines decide the exit code.

mod counter36;
mod ladder_fuzz;
mod main8;
mod multiadd;
mod pairs;
mod rels;
mod triple;
mod updim;

use crate::report::Report;

#[derive(Clone, Debug)]
pub struct Params {
    pub n: usize,
    pub s: usize,
    pub field_k: u8,
    pub seed: u64,
    pub trials: u64,
    pub degree_bound: u16,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            n: 2,
            s: 3,
            field_k: 4,
            seed: 0,
            trials: 200,
            degree_bound: 2,
        }
    }
}

impl Params {
    pub fn record(&self, report: &mut Report) {
        report.param("n", self.n);
        report.param("s", self.s);
        report.param("field", format!("2^{}", self.field_k));
        report.param("seed", self.seed);
        report.param("trials", self.trials);
        report.param("degree_bound", self.degree_bound);
    }
}

pub const SCENARIOS: &[(&str, &str)] = &[
    ("rels", "the three 2-fold symbol relations, formal and specialized"),
    ("multiadd", "multi-additivity, alternating and symmetry of n-fold symbols"),
    ("main8", "strongly tight (n+1)-family with the no-common-subform obstruction"),
    ("counter36", "right-linked family with Pfister Σ and no left-linked pairs"),
    ("pairs", "quaternion pair linkage: Albert forms, Alb', and pair criteria"),
    ("ladder-fuzz", "exhaustive abstract prep/ladder verification"),
    ("updim", "Σ anisotropic-dimension bounds for quaternion sets"),
    ("triple", "the tight triplet realization with nonzero invariant"),
];

pub fn run(name: &str, params: &Params) -> Result<Report, String> {
    match name {
        "rels" => Ok(rels::run(params)),
        "multiadd" => Ok(multiadd::run(params)),
        "main8" => Ok(main8::run(params)),
        "counter36" => Ok(counter36::run(params)),
        "pairs" => Ok(pairs::run(params)),
        "ladder-fuzz" => Ok(ladder_fuzz::run(params)),
        "updim" => Ok(updim::run(params)),
        "triple" => Ok(triple::run(params)),
        other => Err(format!(
            "unknown scenario {other:?}; available: {}",
            SCENARIOS
                .iter()
                .map(|(n, _)| *n)
                .collect::<Vec<_>>()
                .join(", ")
        )),
    }
}
