//! One verification run: generate, compute the basis, and compare every
//! structural prediction with what the basis actually shows.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::buchberger::buchberger_reduced;
use super::field::PrimeField;
use super::krylov::{lex_parametrization, min_poly_xn, substitution_residuals};
use super::mulmatrix::build_mn;
use super::poly::FieldMPoly;
use super::staircase::{quotient_function, Staircase};
use super::system::{extend_primitive, gen_system, Mode};
use crate::error::{Error, Result};
use crate::hilbert::{drop_count, HilbertProfile, SystemParams};
use crate::numfmt;

pub const DEFAULT_DEGREE_GUARD: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub params: SystemParams,
    pub seed: u64,
    pub mode: Mode,
    pub field: PrimeField,
    pub extend: bool,
    pub degree_guard: usize,
}

impl VerifyConfig {
    pub fn new(params: SystemParams, seed: u64) -> Self {
        VerifyConfig {
            params,
            seed,
            mode: Mode::Generic,
            field: PrimeField::default(),
            extend: false,
            degree_guard: DEFAULT_DEGREE_GUARD,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientCheck {
    pub e: usize,
    pub observed: Vec<u64>,
    #[serde(serialize_with = "numfmt::ser_big_vec")]
    pub expected: Vec<BigInt>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub params: SystemParams,
    pub mode: Mode,
    pub prime: u32,
    pub extended: bool,
    pub requested_seed: u64,
    pub seed: u64,
    pub seeds_tried: Vec<u64>,
    pub nvars: usize,
    pub gb_size: usize,
    pub expected_degree: usize,
    pub staircase_size: Option<usize>,
    pub dimension_match: bool,
    pub hilbert_function: Vec<u64>,
    #[serde(serialize_with = "numfmt::ser_big_vec")]
    pub expected_hilbert: Vec<BigInt>,
    pub hilbert_function_match: bool,
    pub structure_theorem: bool,
    pub structure_violation: Option<String>,
    pub nontrivial_columns: Option<usize>,
    #[serde(serialize_with = "numfmt::ser_big")]
    pub m_exact: BigInt,
    pub column_count_match: bool,
    pub quotient_series: Vec<QuotientCheck>,
    pub quotient_series_match: bool,
    pub section_bookkeeping_match: bool,
    pub min_poly_degree: Option<usize>,
    pub shape_position: Option<bool>,
    pub lex_residuals_zero: Option<bool>,
    /// False in critical-point mode without the primitive-element extension,
    /// where the predictions are reported but not required to hold.
    pub predictions_asserted: bool,
    pub passed: bool,
    pub finding: Option<String>,
}

impl RunReport {
    fn failed_checks(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let checks = [
            (self.dimension_match, "dimension"),
            (self.hilbert_function_match, "hilbert-function"),
            (self.structure_theorem, "structure-theorem"),
            (self.column_count_match, "column-count"),
            (self.quotient_series_match, "quotient-series"),
            (self.section_bookkeeping_match, "section-bookkeeping"),
            (self.shape_position != Some(false), "shape-position"),
            (self.lex_residuals_zero != Some(false), "lex-residuals"),
        ];
        for (ok, name) in checks {
            if !ok {
                out.push(name);
            }
        }
        out
    }

    fn retryable(&self) -> bool {
        self.predictions_asserted && (!self.dimension_match || !self.structure_theorem)
    }
}

pub fn derive_seed(seed: u64) -> u64 {
    seed.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407)
}

fn to_big(xs: &[u64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn section_checks(profile: &HilbertProfile, gb: &[FieldMPoly], stair: &Staircase) -> Result<bool> {
    let observed = stair.section_functions();
    let sizes: Vec<u64> = observed.iter().map(|s| s.iter().sum()).collect();
    let size = |e: usize| sizes.get(e).copied().unwrap_or(0);
    let mut ok = true;
    for e in 0..=profile.delta + 1 {
        let expected = profile.section(e)?;
        let obs = observed.get(e).map(|v| to_big(v)).unwrap_or_default();
        ok &= obs.as_slice() == expected.coeffs();
    }
    for e in 1..=profile.delta {
        let drop = drop_count(&profile.section_drop(e)?);
        let observed_drop = size(e) as i64 - size(e + 1) as i64;
        let leads = gb.iter().filter_map(|g| g.lm()).filter(|m| m.last_exp() as usize == e + 1).count();
        ok &= BigInt::from(observed_drop) == drop && BigInt::from(leads) == drop;
    }
    Ok(ok)
}

fn attempt(config: &VerifyConfig, seed: u64, profile: &HilbertProfile) -> Result<RunReport> {
    let params = &config.params;
    let field = &config.field;
    let base = gen_system(params, seed, config.mode, field)?;
    let system = if config.extend { extend_primitive(&base, seed, field)?.0 } else { base };
    let nvars = system[0].nvars();
    let gb = buchberger_reduced(field, &system)?;
    let expected_degree = params.ideal_degree().to_usize().unwrap_or(usize::MAX);
    let expected_hilbert = profile.h.coeffs().to_vec();
    let m_exact = profile.h.max_coeff().map(|(_, c)| c.clone()).unwrap_or_default();

    let mut report = RunReport {
        params: *params,
        mode: config.mode,
        prime: field.modulus(),
        extended: config.extend,
        requested_seed: config.seed,
        seed,
        seeds_tried: vec![seed],
        nvars,
        gb_size: gb.len(),
        expected_degree,
        staircase_size: None,
        dimension_match: false,
        hilbert_function: Vec::new(),
        expected_hilbert,
        hilbert_function_match: false,
        structure_theorem: false,
        structure_violation: None,
        nontrivial_columns: None,
        m_exact: m_exact.clone(),
        column_count_match: false,
        quotient_series: Vec::new(),
        quotient_series_match: false,
        section_bookkeeping_match: false,
        min_poly_degree: None,
        shape_position: None,
        lex_residuals_zero: None,
        predictions_asserted: config.mode == Mode::Generic || config.extend,
        passed: false,
        finding: None,
    };

    let stair = match Staircase::of_basis(&gb, nvars, expected_degree) {
        Ok(s) => s,
        Err(Error::Dimension { .. }) => return Ok(report),
        Err(e) => return Err(e),
    };
    report.staircase_size = Some(stair.len());
    report.dimension_match = stair.len() == expected_degree;
    report.hilbert_function = stair.hilbert_function();
    report.hilbert_function_match = to_big(&report.hilbert_function) == report.expected_hilbert;

    let mn = match build_mn(&gb, &stair, field) {
        Ok(m) => m,
        Err(Error::StructureViolation { monomial }) => {
            report.structure_violation = Some(monomial);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.structure_theorem = true;
    report.nontrivial_columns = Some(mn.dense_count());
    report.column_count_match = BigInt::from(mn.dense_count()) == m_exact;

    let cap = expected_degree.saturating_mul(10).max(10);
    for e in 1..=profile.delta + 1 {
        let observed = quotient_function(&gb, nvars, e.min(255) as u8, cap)?;
        let expected = profile.hq(e)?.into_coeffs();
        let matches = to_big(&observed) == expected;
        report.quotient_series.push(QuotientCheck { e, observed, expected, matches });
    }
    report.quotient_series_match = report.quotient_series.iter().all(|q| q.matches);
    report.section_bookkeeping_match = section_checks(profile, &gb, &stair)?;

    if config.extend {
        let g = min_poly_xn(&mn, field);
        report.min_poly_degree = Some(g.len() - 1);
        match lex_parametrization(&mn, &gb, &stair, field) {
            Ok(lex) => {
                report.shape_position = Some(true);
                let residuals = substitution_residuals(&lex, &system, field);
                report.lex_residuals_zero = Some(residuals.iter().all(|r| r.is_empty()));
            }
            Err(Error::ShapePosition(_)) => {
                report.shape_position = Some(false);
                report.lex_residuals_zero = Some(false);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// Verify one seed; a dimension or structure failure is retried once with a
/// derived seed, and a second failure is reported as a finding.
pub fn run_verification(config: &VerifyConfig) -> Result<RunReport> {
    let degree = config.params.ideal_degree();
    if degree > BigInt::from(config.degree_guard) {
        return Err(Error::DegreeGuard { degree: degree.to_string(), limit: config.degree_guard });
    }
    let profile = HilbertProfile::new(config.params);
    let mut report = attempt(config, config.seed, &profile)?;
    if report.retryable() {
        let first = report.seed;
        let mut second = attempt(config, derive_seed(first), &profile)?;
        second.seeds_tried = vec![first, second.seed];
        report = second;
    }
    let failed = report.failed_checks();
    report.passed = !report.predictions_asserted || failed.is_empty();
    if !failed.is_empty() {
        let prefix = if report.seeds_tried.len() > 1 { "two consecutive seeds failed; " } else { "" };
        let note = if report.predictions_asserted { "" } else { " (not asserted in this mode)" };
        report.finding = Some(format!("{prefix}failed checks: {}{note}", failed.join(", ")));
    }
    Ok(report)
}

/// Run several seeds in parallel; reports come back in seed-list order.
pub fn run_many(base: &VerifyConfig, seeds: &[u64]) -> Result<Vec<RunReport>> {
    seeds
        .par_iter()
        .map(|&seed| run_verification(&VerifyConfig { seed, ..*base }))
        .collect()
}
