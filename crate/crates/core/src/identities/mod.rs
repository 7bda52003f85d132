//! Executable exact checks of the relations among the families.
//!
//! Every check returns a [`Verdict`]; a failing verdict carries the first
//! counterexample found. Each check also has a negative control that perturbs
//! one ingredient and must fail.

mod checks;
mod verdict;

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::Var;
use crate::algebra::{AlgebraError, Rational};
use crate::families::{e_lambda_series, FamilyError};

pub use checks::{
    check_abel_sum, check_alternating_stirling, check_bell_transform, check_bell_transform_suite, check_degeneration,
    check_euler_operator, check_eulerian, check_faulhaber, check_gamma_moment, check_gf_consistency, check_inversions,
    check_lambda_falling_sums, check_r_geometric, check_reciprocal_e_lambda, check_second_kind_bell,
    check_series_transform, check_series_transform_suite, check_stirling_orthogonality, monomial_coeffs, Control,
    GfFamily, TransformKernel,
};
pub use verdict::{verdicts_from_json, verdicts_to_json, Counterexample, Param, Params, Status, Value, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("invalid check parameters: {0}")]
    InvalidParams(String),
    #[error("unknown identity filter: {0}")]
    UnknownFilter(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Bounds shared by the registered checks, plus selection and fault injection.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n_max: usize,
    pub order: usize,
    pub m_max: usize,
    pub r_max: usize,
    pub k_max: usize,
    /// Polynomial degree bound for the series transformations.
    pub deg_max: usize,
    /// Id prefixes to keep; `None` keeps every check.
    pub filter: Option<Vec<String>>,
    /// Ids run as negative controls.
    pub negative: BTreeSet<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n_max: 16,
            order: 16,
            m_max: 10,
            r_max: 4,
            k_max: 50,
            deg_max: 4,
            filter: None,
            negative: BTreeSet::new(),
        }
    }
}

type Runner = Box<dyn Fn(&SuiteConfig, Control) -> Result<Verdict, IdentityError> + Send + Sync>;

/// A registered check with the parameters it will run at.
pub struct IdentityCheck {
    pub id: &'static str,
    pub runner: Runner,
}

impl IdentityCheck {
    fn new(
        id: &'static str,
        runner: impl Fn(&SuiteConfig, Control) -> Result<Verdict, IdentityError> + Send + Sync + 'static,
    ) -> Self {
        Self {
            id,
            runner: Box::new(runner),
        }
    }

    pub fn run(&self, config: &SuiteConfig) -> Result<Verdict, IdentityError> {
        let control = if config.negative.contains(self.id) {
            Control::Negative
        } else {
            Control::Faithful
        };
        (self.runner)(config, control)
    }
}

/// Every registered check, sorted by id.
pub fn registry() -> Vec<IdentityCheck> {
    let mut checks = vec![
        IdentityCheck::new("DEGEN", |c, ctl| check_degeneration(c.n_max, ctl)),
        IdentityCheck::new("E40", |c, ctl| check_faulhaber(c.m_max, c.k_max, ctl)),
        IdentityCheck::new("E44_E46", |c, ctl| {
            check_eulerian(c.m_max, c.order.max(c.m_max + 2), ctl)
        }),
        IdentityCheck::new("E4_E7", |c, ctl| check_stirling_orthogonality(c.n_max, ctl)),
        IdentityCheck::new("E50_E56", |c, ctl| check_r_geometric(c.m_max, c.r_max, c.order, ctl)),
        IdentityCheck::new("E57_E58", |c, ctl| check_reciprocal_e_lambda(c.order, ctl)),
        IdentityCheck::new("INV", |c, ctl| check_inversions(c.n_max, ctl)),
        IdentityCheck::new("L2", |c, ctl| {
            check_euler_operator(c.n_max, &e_lambda_series(Var::X, c.order.max(c.n_max + 5)), ctl)
        }),
        IdentityCheck::new("R9", |c, ctl| check_abel_sum(c.n_max, ctl)),
        IdentityCheck::new("T1", |c, ctl| check_gamma_moment(c.n_max, ctl)),
        IdentityCheck::new("T3", |c, ctl| {
            check_series_transform_suite(c.deg_max, c.r_max as i64, c.order, ctl)
        }),
        IdentityCheck::new("T4", |c, ctl| {
            check_bell_transform_suite(c.deg_max.max(6), c.order, ctl)
        }),
        IdentityCheck::new("T5_T6", |c, ctl| {
            check_second_kind_bell(c.n_max, c.order.max(c.n_max), ctl)
        }),
        IdentityCheck::new("T7", |c, ctl| check_lambda_falling_sums(c.m_max, c.order, ctl)),
        IdentityCheck::new("T8", |c, ctl| check_alternating_stirling(c.n_max, ctl)),
    ];
    checks.extend(
        GfFamily::ALL
            .into_iter()
            .map(|family| IdentityCheck::new(family.id(), move |c, ctl| check_gf_consistency(family, c.order, ctl))),
    );
    checks.sort_by_key(|c| c.id);
    checks
}

/// All registered ids, sorted.
pub fn identity_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

/// Checks selected by the configured filter.
pub fn selected(config: &SuiteConfig) -> Result<Vec<IdentityCheck>, IdentityError> {
    let all = registry();
    let Some(prefixes) = &config.filter else {
        return Ok(all);
    };
    for p in prefixes {
        if !all.iter().any(|c| c.id.starts_with(p.as_str())) {
            return Err(IdentityError::UnknownFilter(p.clone()));
        }
    }
    Ok(all
        .into_iter()
        .filter(|c| prefixes.iter().any(|p| c.id.starts_with(p.as_str())))
        .collect())
}

/// Runs the selected checks in parallel; verdicts come back in id order.
pub fn run_all(config: &SuiteConfig) -> Result<Vec<Verdict>, IdentityError> {
    for id in &config.negative {
        if !registry().iter().any(|c| c.id == id) {
            return Err(IdentityError::UnknownFilter(id.clone()));
        }
    }
    selected(config)?.par_iter().map(|c| c.run(config)).collect()
}

/// True when every verdict passed.
pub fn all_passed(verdicts: &[Verdict]) -> bool {
    verdicts.iter().all(Verdict::passed)
}

/// Coefficients of `f` parsed from rationals, lowest degree first.
pub fn parse_poly_coeffs(text: &str) -> Option<Vec<Rational>> {
    text.split(',')
        .map(|s| crate::algebra::parse_rational(s.trim()))
        .collect()
}
