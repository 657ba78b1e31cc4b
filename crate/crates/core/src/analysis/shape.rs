//! Coefficient-sequence diagnostics over the dense sequence `a_0, …, a_deg`.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polynomial::IntPolynomial;

fn dense(p: &IntPolynomial) -> Result<Vec<BigInt>> {
    if p.is_zero() {
        return Err(Error::Domain("the zero polynomial has no coefficient sequence".into()));
    }
    p.dense_coefficients()
}

/// Whether `a_0 ≤ … ≤ a_t ≥ … ≥ a_deg` for some `t`, and the smallest such `t`.
pub fn is_unimodal(p: &IntPolynomial) -> Result<(bool, Option<usize>)> {
    let a = dense(p)?;
    // last index of the non-decreasing prefix
    let rise = (1..a.len()).find(|&i| a[i] < a[i - 1]).map_or(a.len() - 1, |i| i - 1);
    // first index of the non-increasing suffix
    let fall = (1..a.len()).rev().find(|&i| a[i] > a[i - 1]).unwrap_or(0);
    Ok(if fall <= rise { (true, Some(fall)) } else { (false, None) })
}

/// Number of direction changes in the sequence, ignoring flat steps.
pub fn oscillation(p: &IntPolynomial) -> Result<usize> {
    let a = dense(p)?;
    let signs: Vec<Sign> = a
        .windows(2)
        .map(|w| (&w[1] - &w[0]).sign())
        .filter(|&s| s != Sign::NoSign)
        .collect();
    Ok(signs.windows(2).filter(|w| w[0] != w[1]).count())
}

/// `a_i² ≥ a_{i−1}·a_{i+1}` for every interior `i`; returns the failing `i`.
pub fn is_log_concave(p: &IntPolynomial) -> Result<(bool, Vec<usize>)> {
    let a = dense(p)?;
    let violations: Vec<usize> = (1..a.len().saturating_sub(1))
        .filter(|&i| &a[i] * &a[i] < &a[i - 1] * &a[i + 1])
        .collect();
    Ok((violations.is_empty(), violations))
}

/// Newton's inequalities `a_i² ≥ a_{i−1}a_{i+1}(1 + 1/i)(1 + 1/(deg − i))`,
/// compared exactly after clearing denominators.
pub fn newton_check(p: &IntPolynomial) -> Result<bool> {
    let a = dense(p)?;
    if a.iter().any(Signed::is_negative) {
        return Err(Error::Domain("Newton's inequalities need non-negative coefficients".into()));
    }
    let deg = a.len() - 1;
    Ok((1..deg).all(|i| {
        let lhs = &a[i] * &a[i] * BigInt::from(i) * BigInt::from(deg - i);
        let rhs = &a[i - 1] * &a[i + 1] * BigInt::from(i + 1) * BigInt::from(deg - i + 1);
        lhs >= rhs
    }))
}

/// Eneström–Kakeya annulus `(min a_i/a_{i+1}, max a_i/a_{i+1})`, which
/// contains every zero when all coefficients are strictly positive.
pub fn enestrom_kakeya(p: &IntPolynomial) -> Result<(BigRational, BigRational)> {
    let a = dense(p)?;
    if a.len() < 2 {
        return Err(Error::Precondition("constant polynomial has no zeros to bound".into()));
    }
    if let Some(i) = a.iter().position(|c| !c.is_positive()) {
        return Err(Error::Precondition(format!(
            "coefficient a_{i} = {} is not strictly positive",
            a[i]
        )));
    }
    let ratios = a
        .windows(2)
        .map(|w| BigRational::new(w[0].clone(), w[1].clone()));
    let (mut lo, mut hi) = (None::<BigRational>, None::<BigRational>);
    for r in ratios {
        if lo.as_ref().is_none_or(|l| &r < l) {
            lo = Some(r.clone());
        }
        if hi.as_ref().is_none_or(|h| &r > h) {
            hi = Some(r);
        }
    }
    Ok((lo.unwrap_or_else(BigRational::zero), hi.unwrap_or_else(BigRational::zero)))
}
