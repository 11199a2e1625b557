//! Exact arithmetic in F_{2^k}[α₁,…,α_m] and its fraction field, plus
//! monomial valuations with values in Z^m ordered right-to-left
//! lexicographically, and their reductions modulo 2Γ.

mod finite;
mod fraction;
pub mod parse;
mod poly;
mod valuation;

pub use finite::{Ff, FiniteField};
pub use fraction::FieldElement;
pub use poly::{Mono, Poly};
pub use valuation::{GammaClass, GammaSubgroup, MonomialValuation};

use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Field2Error {
    #[error("unsupported field degree k={0} (supported: 1..=8)")]
    UnsupportedFieldDegree(u8),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("valuation of zero is undefined")]
    ValuationOfZero,
    #[error("denominator vanishes at the point")]
    PoleAtPoint,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("coefficient {0:#x} does not fit in F_{{2^{1}}}")]
    CoefficientOutOfRange(u32, u8),
}

/// A scalar domain: the base field F_{2^k} together with an ordered list of
/// variable names. Every polynomial and field element carries one of these;
/// mixing contexts is a programming error and panics.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldContext {
    field: FiniteField,
    vars: Vec<String>,
}

pub type Ctx = Arc<FieldContext>;

impl FieldContext {
    pub fn new(field: FiniteField, vars: &[&str]) -> Ctx {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            assert!(seen.insert(v.clone()), "duplicate variable name {v}");
        }
        Arc::new(FieldContext { field, vars })
    }

    /// F_{2^k}(vars...) shorthand.
    pub fn rational(k: u8, vars: &[&str]) -> Result<Ctx, Field2Error> {
        Ok(Self::new(FiniteField::new(k)?, vars))
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

pub(crate) fn assert_same_ctx(a: &Ctx, b: &Ctx) {
    assert!(
        Arc::ptr_eq(a, b) || **a == **b,
        "mixed field contexts: {:?} vs {:?}",
        a.vars,
        b.vars
    );
}
