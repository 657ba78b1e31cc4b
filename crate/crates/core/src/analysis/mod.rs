//! Shape diagnostics and zero localization for integer polynomials.

mod roots;
mod shape;

pub use roots::{
    find_roots, real_root_count, real_root_count_exact, vieta_errors, RealRootCount, Root, RootOptions,
    DEFAULT_MAX_ITERATIONS, DEFAULT_TOL, GRID_INTERVALS, IMAG_TOL,
};
pub use shape::{enestrom_kakeya, is_log_concave, is_unimodal, newton_check, oscillation};

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polynomial::IntPolynomial;

/// Eneström–Kakeya annulus, exact and as `f64`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Annulus {
    pub inner: f64,
    pub outer: f64,
    pub inner_exact: String,
    pub outer_exact: String,
}

impl Annulus {
    pub fn from_exact(inner: &BigRational, outer: &BigRational) -> Self {
        Self {
            inner: inner.to_f64().unwrap_or(f64::NAN),
            outer: outer.to_f64().unwrap_or(f64::NAN),
            inner_exact: inner.to_string(),
            outer_exact: outer.to_string(),
        }
    }

    /// `inner − ε ≤ |z| ≤ outer + ε` with `ε = 10⁻⁶·outer`.
    pub fn contains(&self, root: &Root) -> bool {
        let eps = 1e-6 * self.outer;
        let r = root.z().norm();
        r >= self.inner - eps && r <= self.outer + eps
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub polynomial: String,
    pub degree: usize,
    pub unimodal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode_index: Option<usize>,
    pub oscillation: usize,
    pub log_concave: bool,
    pub log_concave_violations: Vec<usize>,
    pub newton_holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annulus: Option<Annulus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annulus_omitted: Option<String>,
    pub roots: Vec<Root>,
    pub real_root_count: usize,
}

/// Runs every diagnostic on `p`. The annulus is left out, with the reason
/// recorded, when some coefficient is not strictly positive.
pub fn analyze(p: &IntPolynomial, opts: &RootOptions) -> Result<AnalysisReport> {
    let (unimodal, mode_index) = is_unimodal(p)?;
    let (log_concave, log_concave_violations) = is_log_concave(p)?;
    let (annulus, annulus_omitted) = match enestrom_kakeya(p) {
        Ok((a, b)) => (Some(Annulus::from_exact(&a, &b)), None),
        Err(Error::Precondition(reason)) => (None, Some(reason)),
        Err(e) => return Err(e),
    };
    let roots = find_roots(p, opts)?;
    let real = real_root_count(p, opts)?;
    Ok(AnalysisReport {
        polynomial: p.to_string(),
        degree: p.degree().unwrap_or(0),
        unimodal,
        mode_index,
        oscillation: oscillation(p)?,
        log_concave,
        log_concave_violations,
        newton_holds: newton_check(p)?,
        annulus,
        annulus_omitted,
        roots,
        real_root_count: real.numeric,
    })
}
