//! Range sweeps: method cross-verification, shape scans, and real-zero
//! measurements for prime powers.

use std::thread;

use serde::Serialize;

use crate::analysis::{is_log_concave, is_unimodal, oscillation, real_root_count, real_root_count_exact, RootOptions};
use crate::closed_forms::{
    di_as_printed, di_closed_form, di_structured, independence_as_printed, independence_closed_form,
    independence_structured, Shape,
};
use crate::config::RunConfig;
use crate::enumeration::{independent_sets_by_size, maximal_independent_sets};
use crate::error::{Error, Result};
use crate::graph::comaximal_graph_direct;
use crate::number_theory::{factorize, totient};
use crate::polynomial::{IntPolynomial, Method, PolyKind, PolynomialRecord};

/// A computed polynomial with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computed {
    pub polynomial: IntPolynomial,
    pub provenance: Option<String>,
    pub discrepancy_notes: Vec<String>,
}

impl Computed {
    fn plain(polynomial: IntPolynomial) -> Self {
        Self {
            polynomial,
            provenance: None,
            discrepancy_notes: Vec::new(),
        }
    }

    pub fn record(&self, n: u64, kind: PolyKind, method: Method) -> PolynomialRecord {
        let mut r = PolynomialRecord::new(n, kind, method, &self.polynomial);
        r.provenance = self.provenance.clone();
        if !self.discrepancy_notes.is_empty() {
            r.discrepancy_notes = Some(self.discrepancy_notes.clone());
        }
        r
    }
}

/// Computes the `kind` polynomial of `Γ(Z_n)` by `method`.
pub fn compute(n: u64, kind: PolyKind, method: Method, cfg: &RunConfig) -> Result<Computed> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    let formula = |r: crate::closed_forms::FormulaResult| Computed {
        polynomial: r.polynomial,
        provenance: Some(r.provenance),
        discrepancy_notes: r.discrepancy_notes,
    };
    Ok(match (kind, method) {
        (PolyKind::Di, Method::Closed) => formula(di_closed_form(n)?),
        (PolyKind::Di, Method::AsPrinted) => formula(di_as_printed(n)?),
        (PolyKind::Di, Method::Structured) => Computed::plain(di_structured(n)?),
        (PolyKind::Independence, Method::Closed) => formula(independence_closed_form(n)?),
        (PolyKind::Independence, Method::AsPrinted) => formula(independence_as_printed(n)?),
        (PolyKind::Independence, Method::Structured) => Computed::plain(independence_structured(n)?),
        (kind, Method::Oracle) => {
            let limit = match kind {
                PolyKind::Di => cfg.oracle_limit_mis,
                PolyKind::Independence => cfg.oracle_limit_ind,
            };
            if n > limit as u64 {
                return Err(Error::Capacity {
                    what: "oracle graph order",
                    got: n,
                    limit: limit as u64,
                });
            }
            let (g, _) = comaximal_graph_direct(n, cfg.vertex_capacity)?;
            let h = match kind {
                PolyKind::Di => maximal_independent_sets(&g, limit)?,
                PolyKind::Independence => independent_sets_by_size(&g, limit)?,
            };
            Computed::plain(h.to_polynomial())
        }
    })
}

/// Outcome of comparing two methods at one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub kind: PolyKind,
    pub left: Method,
    pub right: Method,
    pub matched: bool,
    /// The left side is a literal reference formula known to be wrong for
    /// this shape, so a mismatch is expected and not a failure.
    pub expected_mismatch: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: u64,
    pub shape: Shape,
    pub checks: Vec<PairCheck>,
    /// Methods not run, with the reason.
    pub skipped: Vec<String>,
}

impl VerifyReport {
    /// Mismatches between derivation-based methods.
    pub fn failures(&self) -> impl Iterator<Item = &PairCheck> {
        self.checks.iter().filter(|c| !c.matched && !c.expected_mismatch)
    }

    pub fn expected_mismatches(&self) -> impl Iterator<Item = &PairCheck> {
        self.checks.iter().filter(|c| !c.matched && c.expected_mismatch)
    }
}

/// Runs every applicable method for both polynomials at `n` and compares
/// each against the oracle, or against the structured result when the
/// oracle is over its limit.
pub fn verify_one(n: u64, cfg: &RunConfig) -> Result<VerifyReport> {
    let shape = Shape::of(&factorize(n)?);
    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    for kind in [PolyKind::Di, PolyKind::Independence] {
        let mut results: Vec<(Method, Computed)> = Vec::new();
        for method in [Method::Oracle, Method::Structured, Method::Closed, Method::AsPrinted] {
            match compute(n, kind, method, cfg) {
                Ok(c) => results.push((method, c)),
                Err(e @ (Error::Capacity { .. } | Error::UnsupportedShape { .. })) => {
                    skipped.push(format!("{} {}: {e}", kind.as_str(), method.as_str()));
                }
                Err(e) => return Err(e),
            }
        }
        let Some((reference, base)) = results.first().cloned() else {
            continue;
        };
        let closed = results
            .iter()
            .find(|(m, _)| *m == Method::Closed)
            .map(|(_, c)| c.polynomial.clone());
        for (method, c) in &results[1..] {
            let expected_mismatch =
                *method == Method::AsPrinted && closed.as_ref().is_some_and(|p| *p != c.polynomial);
            checks.push(PairCheck {
                kind,
                left: *method,
                right: reference,
                matched: c.polynomial == base.polynomial,
                expected_mismatch,
            });
        }
    }
    Ok(VerifyReport {
        n,
        shape,
        checks,
        skipped,
    })
}

/// Applies `f` to every item on a few worker threads, keeping input order.
pub fn parallel_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| s.spawn(|| part.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

pub fn verify_range(n_min: u64, n_max: u64, cfg: &RunConfig) -> Result<Vec<VerifyReport>> {
    let ns: Vec<u64> = (n_min.max(2)..=n_max).collect();
    parallel_map(&ns, |&n| verify_one(n, cfg)).into_iter().collect()
}

/// One row of a shape scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub n: u64,
    pub shape: Shape,
    pub unimodal: bool,
    pub oscillation: usize,
    pub log_concave: bool,
    /// Independent domination number: lowest exponent of `D_i`.
    pub gamma_i: usize,
    /// Independence number: degree of `D_i`.
    pub alpha: usize,
}

/// Shape diagnostics of the `kind` polynomial at `n`, computed on the
/// divisor graph.
pub fn scan_one(n: u64, kind: PolyKind) -> Result<ScanRow> {
    let shape = Shape::of(&factorize(n)?);
    let di = di_structured(n)?;
    let p = match kind {
        PolyKind::Di => di.clone(),
        PolyKind::Independence => independence_structured(n)?,
    };
    Ok(ScanRow {
        n,
        shape,
        unimodal: is_unimodal(&p)?.0,
        oscillation: oscillation(&p)?,
        log_concave: is_log_concave(&p)?.0,
        gamma_i: di.min_exponent().unwrap_or(0),
        alpha: di.degree().unwrap_or(0),
    })
}

pub fn scan(ns: &[u64], kind: PolyKind) -> Result<Vec<ScanRow>> {
    parallel_map(ns, |&n| scan_one(n, kind)).into_iter().collect()
}

/// Which reading of "log-concave iff p ≠ 3 and m ≠ 2" a measured set of
/// `(p, m, log_concave)` triples agrees with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionReading {
    /// `p ≠ 3 ∧ m ≠ 2`.
    pub both_differ: bool,
    /// `¬(p = 3 ∧ m = 2)`.
    pub not_both_equal: bool,
}

pub fn log_concavity_reading(measured: &[(u64, u32, bool)]) -> ConditionReading {
    ConditionReading {
        both_differ: measured.iter().all(|&(p, m, lc)| lc == (p != 3 && m != 2)),
        not_both_equal: measured.iter().all(|&(p, m, lc)| lc == !(p == 3 && m == 2)),
    }
}

/// `x^{p^{m−2}} + p^m − p^{m−1}`, the cofactor in its reference form for the
/// prime-power real-zero argument.
pub fn h_polynomial(p: u64, m: u32) -> Result<IntPolynomial> {
    if m < 2 {
        return Err(Error::Domain("h needs m ≥ 2".into()));
    }
    let exp = usize::try_from(p.pow(m - 2)).map_err(|_| Error::Domain("exponent overflow".into()))?;
    let constant = p.pow(m) - p.pow(m - 1);
    Ok(&IntPolynomial::monomial(exp, 1) + &IntPolynomial::constant(constant))
}

/// Measured real-zero count of `D_i(Γ(Z_{p^m}))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealZeroRecord {
    pub p: u64,
    pub m: u32,
    pub real_zeros: usize,
    /// Whether both counting methods were run (only the exact grid otherwise).
    pub dual_method: bool,
    /// Agreement with the claim that there is exactly one real zero.
    pub agrees_with_single_zero_claim: bool,
}

/// Degree above which only the exact grid count is used.
pub const NUMERIC_DEGREE_LIMIT: usize = 400;

pub fn prime_power_real_zeros(p: u64, m: u32, opts: &RootOptions) -> Result<RealZeroRecord> {
    let n = p
        .checked_pow(m)
        .ok_or_else(|| Error::Domain(format!("{p}^{m} overflows")))?;
    let di = di_structured(n)?;
    debug_assert_eq!(di.coefficient(1), totient(n)?.into());
    let dual_method = di.degree().unwrap_or(0) <= NUMERIC_DEGREE_LIMIT;
    let real_zeros = if dual_method {
        real_root_count(&di, opts)?.numeric
    } else {
        real_root_count_exact(&di)?
    };
    Ok(RealZeroRecord {
        p,
        m,
        real_zeros,
        dual_method,
        agrees_with_single_zero_claim: real_zeros == 1,
    })
}
