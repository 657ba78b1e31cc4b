//! Complex zeros by Aberth–Ehrlich iteration, and real-zero counting with
//! an exact cross-check.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polynomial::IntPolynomial;
use crate::precision::{ComplexDD, DoubleDouble};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITERATIONS: usize = 1000;
/// Relative imaginary-part threshold under which a numeric root counts as real.
pub const IMAG_TOL: f64 = 1e-8;
/// Number of uniform intervals in the exact sign-change grid.
pub const GRID_INTERVALS: u32 = 8192;
/// Extra full sweeps once every residual is within tolerance.
const POLISH_SWEEPS: usize = 50;
/// Cap on the closing sweeps with exact evaluation.
const EXACT_SWEEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Bound on `|p(z)| / Σ|a_i||z|^i`.
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
}

impl Root {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im.abs() <= IMAG_TOL * (1.0 + self.z().norm())
    }
}

/// Coefficients of a zero-free polynomial, in both double and double-double.
struct Prepared {
    f: Vec<f64>,
    dd: Vec<DoubleDouble>,
    exact: Vec<BigInt>,
}

impl Prepared {
    fn new(q: &IntPolynomial) -> Result<Self> {
        let f = q.scaled_f64_coefficients()?;
        let dense = q.dense_coefficients()?;
        let max_bits = dense.iter().map(BigInt::bits).max().unwrap_or(0);
        let shift = max_bits.saturating_sub(1000);
        let dd = dense.iter().map(|c| DoubleDouble::from_bigint(&(c >> shift))).collect();
        Ok(Self { f, dd, exact: dense })
    }

    fn degree(&self) -> usize {
        self.f.len() - 1
    }

    /// Newton correction `p(z)/p'(z)` in double-double, evaluated through
    /// the reversed polynomial outside the unit disc so `|z|^deg` cannot
    /// overflow.
    fn newton_ratio(&self, z: ComplexDD) -> Complex64 {
        let zero = ComplexDD::default();
        let ratio = if z.norm() <= 1.0 {
            let (mut p, mut dp) = (zero, zero);
            for &c in self.dd.iter().rev() {
                dp = dp * z + p;
                p = p * z;
                p.re = p.re + c;
            }
            p / dp
        } else {
            let w = z.inv();
            let (mut r, mut dr) = (zero, zero);
            for &c in &self.dd {
                dr = dr * w + r;
                r = r * w;
                r.re = r.re + c;
            }
            let n = ComplexDD::new(self.degree() as f64, 0.0);
            z * r / (r * n - w * dr)
        };
        ratio.to_complex()
    }

    /// `|p(z)| / Σ|a_i||z|^i` with the numerator in double-double.
    fn residual(&self, z: ComplexDD) -> f64 {
        let (w, coeffs): (ComplexDD, Box<dyn Iterator<Item = &DoubleDouble>>) = if z.norm() <= 1.0 {
            (z, Box::new(self.dd.iter().rev()))
        } else {
            (z.inv(), Box::new(self.dd.iter()))
        };
        let r = w.norm();
        let mut acc = ComplexDD::default();
        let mut norm = 0.0f64;
        for c in coeffs {
            acc = acc * w;
            acc.re = acc.re + *c;
            norm = norm * r + c.to_f64().abs();
        }
        if norm == 0.0 {
            0.0
        } else {
            acc.norm() / norm
        }
    }
}

fn initial_guesses(f: &[f64]) -> Vec<Complex64> {
    let n = f.len() - 1;
    let lead = f[n].abs();
    let constant = f[0].abs();
    // geometric mean of the root moduli
    let radius = (constant.ln() - lead.ln()) / n as f64;
    let radius = radius.exp();
    (0..n)
        .map(|k| {
            let theta = TAU * k as f64 / n as f64 + 0.4 / n as f64 + 0.25;
            let r = radius * (1.0 + 0.01 * ((k % 7) as f64 - 3.0) / 3.0);
            Complex64::from_polar(r, theta)
        })
        .collect()
}

/// Fixed-point complex number `(re + i·im) / 2^scale`.
#[derive(Clone)]
struct Fixed {
    re: BigInt,
    im: BigInt,
}

impl Fixed {
    fn from_f64(z: Complex64, scale: u64) -> Option<Self> {
        let to = |x: f64| -> Option<BigInt> {
            let r = BigRational::from_float(x)?;
            Some((r.numer() << scale) / r.denom())
        };
        Some(Self {
            re: to(z.re)?,
            im: to(z.im)?,
        })
    }

    fn mul(&self, other: &Self, scale: u64) -> Self {
        Self {
            re: (&self.re * &other.re - &self.im * &other.im) >> scale,
            im: (&self.re * &other.im + &self.im * &other.re) >> scale,
        }
    }
}

/// Newton correction `p(z)/p'(z)` with `p` and `p'` evaluated exactly in
/// fixed point at `2^-scale`; only the final quotient is rounded.
fn exact_newton_ratio(coeffs: &[BigInt], z: ComplexDD, scale: u64) -> Option<Complex64> {
    let hi = Fixed::from_f64(Complex64::new(z.re.hi, z.im.hi), scale)?;
    let lo = Fixed::from_f64(Complex64::new(z.re.lo, z.im.lo), scale)?;
    let w = Fixed {
        re: hi.re + lo.re,
        im: hi.im + lo.im,
    };
    let mut p = Fixed {
        re: BigInt::default(),
        im: BigInt::default(),
    };
    let mut dp = p.clone();
    for c in coeffs.iter().rev() {
        dp = dp.mul(&w, scale);
        dp.re += &p.re;
        dp.im += &p.im;
        p = p.mul(&w, scale);
        p.re += c << scale;
    }
    let den = &dp.re * &dp.re + &dp.im * &dp.im;
    if den.bits() == 0 {
        return None;
    }
    // p / p' = p·conj(p') / |p'|², reduced to 64 significant bits
    let num_re = &p.re * &dp.re + &p.im * &dp.im;
    let num_im = &p.im * &dp.re - &p.re * &dp.im;
    let shift = den.bits().saturating_sub(64);
    let den = (den >> shift).to_f64()?;
    let part = |x: BigInt| -> Option<f64> { Some((x >> shift).to_f64()? / den) };
    Some(Complex64::new(part(num_re)?, part(num_im)?))
}

fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// All `deg` complex zeros of `p`, sorted by `(re, im)`.
///
/// The zero root is split off exactly using the lowest exponent, and
/// repeated roots exactly through a square-free decomposition. Each
/// square-free factor is solved by Aberth–Ehrlich iteration started on a
/// perturbed circle, first with double-double evaluation and then with exact
/// fixed-point evaluation until the corrections vanish.
pub fn find_roots(p: &IntPolynomial, opts: &RootOptions) -> Result<Vec<Root>> {
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Err(Error::Domain("root finding needs degree at least 1".into()));
    }
    let k = p.min_exponent().unwrap_or(0);
    let mut roots = vec![
        Root {
            re: 0.0,
            im: 0.0,
            residual: 0.0,
        };
        k
    ];
    if deg > k {
        let q = p.unshift(k)?;
        let whole = Prepared::new(&q)?;
        let mut unconverged = Vec::new();
        for (factor, multiplicity) in q.squarefree_decomposition()? {
            for r in aberth(&Prepared::new(&factor)?, opts)? {
                let residual = whole.residual(ComplexDD::from_complex(r.z()));
                for _ in 0..multiplicity {
                    if residual > opts.tol {
                        unconverged.push(roots.len());
                    }
                    roots.push(Root { residual, ..r });
                }
            }
        }
        if !unconverged.is_empty() {
            return Err(Error::Convergence {
                iterations: opts.max_iterations,
                unconverged,
            });
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

fn aberth(poly: &Prepared, opts: &RootOptions) -> Result<Vec<Root>> {
    let n = poly.degree();
    let mut z: Vec<ComplexDD> = if n == 1 {
        vec![ComplexDD::from_complex(Complex64::new(-poly.f[0] / poly.f[1], 0.0))]
    } else {
        initial_guesses(&poly.f).into_iter().map(ComplexDD::from_complex).collect()
    };
    let mut residual: Vec<f64> = z.iter().map(|&w| poly.residual(w)).collect();
    let mut iterations = 0;
    let mut polish = 0;
    let mut settled = vec![false; n];
    while iterations < opts.max_iterations && polish < POLISH_SWEEPS && settled.iter().any(|s| !s) {
        iterations += 1;
        sweep(&mut z, &mut settled, 1e-28, |w| Some(poly.newton_ratio(w)));
        for i in 0..n {
            residual[i] = poly.residual(z[i]);
            settled[i] &= residual[i] <= opts.tol;
        }
        if residual.iter().all(|&r| r <= opts.tol) {
            polish += 1;
        }
    }
    let unconverged: Vec<usize> = (0..n).filter(|&i| residual[i] > opts.tol).collect();
    if !unconverged.is_empty() {
        return Err(Error::Convergence {
            iterations,
            unconverged,
        });
    }

    // Double-double Horner cannot resolve p near zeros where Σ|a_i||z|^i
    // is many orders above |p'(z)|; finish with exact evaluation.
    let reach = z.iter().map(|w| w.norm()).fold(1.0f64, f64::max) * 2.0;
    let coeff_bits = poly.exact.iter().map(BigInt::bits).max().unwrap_or(0);
    let scale = 128 + coeff_bits + (n as f64 * reach.log2()).ceil() as u64 + n.ilog2() as u64;
    let mut settled = vec![false; n];
    let mut exact_sweeps = 0;
    while exact_sweeps < EXACT_SWEEPS && settled.iter().any(|s| !s) {
        exact_sweeps += 1;
        sweep(&mut z, &mut settled, 1e-24, |w| exact_newton_ratio(&poly.exact, w, scale));
    }
    Ok(z
        .iter()
        .map(|w| {
            let c = w.to_complex();
            Root {
                re: clean(c.re),
                im: clean(c.im),
                residual: poly.residual(ComplexDD::from_complex(c)),
            }
        })
        .collect())
}

/// One Jacobi-style Aberth sweep over the unsettled roots. A root settles
/// once its correction is below `settle` relative to its modulus.
fn sweep(
    z: &mut [ComplexDD],
    settled: &mut [bool],
    settle: f64,
    ratio_at: impl Fn(ComplexDD) -> Option<Complex64>,
) {
    let n = z.len();
    let approx: Vec<Complex64> = z.iter().map(|w| w.to_complex()).collect();
    for i in 0..n {
        if settled[i] {
            continue;
        }
        let repulsion: Complex64 = (0..n)
            .filter(|&j| j != i)
            .map(|j| (approx[i] - approx[j]).inv())
            .sum();
        let mut step = match ratio_at(z[i]) {
            Some(ratio) => ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion),
            None => Complex64::new(f64::NAN, 0.0),
        };
        if !step.is_finite() {
            // stationary point or collision: nudge off it
            step = Complex64::from_polar(1e-3 * (1.0 + approx[i].norm()), i as f64);
        }
        z[i] = z[i] - ComplexDD::from_complex(step);
        settled[i] = step.norm() <= settle * (z[i].norm() + f64::MIN_POSITIVE);
    }
}

/// Relative errors of the Vieta sum and product identities for `roots`,
/// each scaled by `max(|expected|, 1)`.
pub fn vieta_errors(p: &IntPolynomial, roots: &[Root]) -> Result<(f64, f64)> {
    let deg = p.degree().unwrap_or(0);
    if roots.len() != deg || deg == 0 {
        return Err(Error::Domain(format!("expected {deg} roots, got {}", roots.len())));
    }
    let lead = p.coefficient(deg).to_f64().unwrap_or(f64::NAN);
    let next = p.coefficient(deg - 1).to_f64().unwrap_or(f64::NAN);
    let constant = p.constant_term().to_f64().unwrap_or(f64::NAN);
    let sign = if deg.is_multiple_of(2) { 1.0 } else { -1.0 };
    let want_sum = Complex64::new(-next / lead, 0.0);
    let want_prod = Complex64::new(sign * constant / lead, 0.0);
    let sum: Complex64 = roots.iter().map(Root::z).sum();
    let prod: Complex64 = roots.iter().map(Root::z).product();
    let rel = |got: Complex64, want: Complex64| (got - want).norm() / want.norm().max(1.0);
    Ok((rel(sum, want_sum), rel(prod, want_prod)))
}

/// Real-zero count by two independent methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RealRootCount {
    /// Numeric roots with `|im| ≤ 1e-8·(1 + |z|)`.
    pub numeric: usize,
    /// Exact multiplicity of `x = 0` plus sign changes on a rational grid.
    pub grid: usize,
}

/// Fujiwara bound on the moduli of the zeros of `q`, rounded up to an
/// integer with some slack.
fn root_bound(q: &IntPolynomial) -> Result<BigInt> {
    let a = q.scaled_f64_coefficients()?;
    let n = a.len() - 1;
    let lead = a[n].abs();
    let mut bound: f64 = 0.0;
    for i in 1..=n {
        let mut ratio = a[n - i].abs() / lead;
        if i == n {
            ratio /= 2.0;
        }
        bound = bound.max(ratio.powf(1.0 / i as f64));
    }
    let b = (2.0 * bound * 1.001).ceil() + 1.0;
    Ok(BigInt::from(b as u64))
}

/// Sign changes of a square-free `q` with `q(0) ≠ 0` over `[−b − 1, b + 1]`:
/// a uniform grid refined geometrically towards zero. A grid point where
/// `q` vanishes counts once.
fn grid_sign_changes(q: &IntPolynomial) -> Result<usize> {
    let b = root_bound(q)? + 1;
    let den = BigInt::from(GRID_INTERVALS);
    let mut points: Vec<BigRational> = (0..=2 * GRID_INTERVALS)
        .map(|j| BigRational::new(&b * (BigInt::from(j) - &den), den.clone()))
        .collect();
    for j in 1..=60 {
        let t = BigRational::new(BigInt::one(), BigInt::one() << j);
        points.push(t.clone());
        points.push(-t);
    }
    points.sort();
    points.dedup();
    let mut changes = 0;
    let mut last = 0i8;
    for x in &points {
        let s = q.sign_at_rational(x.numer(), x.denom());
        if s == 0 {
            changes += 1;
            last = 0;
        } else {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    Ok(changes)
}

/// Real zeros with multiplicity, from the lowest exponent and the sign
/// changes of each square-free factor.
fn grid_count(p: &IntPolynomial) -> Result<usize> {
    let k = p.min_exponent().unwrap_or(0);
    let mut count = k;
    for (factor, multiplicity) in p.unshift(k)?.squarefree_decomposition()? {
        count += multiplicity * grid_sign_changes(&factor)?;
    }
    Ok(count)
}

/// Number of real zeros counted with multiplicity by the numeric method;
/// fails with an inconsistency error when the exact grid count disagrees.
pub fn real_root_count(p: &IntPolynomial, opts: &RootOptions) -> Result<RealRootCount> {
    let roots = find_roots(p, opts)?;
    let numeric = roots.iter().filter(|r| r.is_real()).count();
    let grid = grid_count(p)?;
    if numeric != grid {
        return Err(Error::Inconsistency(format!(
            "{p}: numeric real-root count {numeric} disagrees with the sign-change grid count {grid}"
        )));
    }
    Ok(RealRootCount { numeric, grid })
}

/// Counts only the real zeros with the exact grid, for inputs whose degree
/// is too large for the numeric method.
pub fn real_root_count_exact(p: &IntPolynomial) -> Result<usize> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::Domain("real-root count needs degree at least 1".into()));
    }
    grid_count(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_dense(c.iter().copied())
    }

    fn check(p: &IntPolynomial) -> Vec<Root> {
        let roots = find_roots(p, &RootOptions::default()).unwrap();
        assert_eq!(roots.len(), p.degree().unwrap());
        assert!(roots.iter().all(|r| r.residual <= DEFAULT_TOL), "{p}: {roots:?}");
        let (s, m) = vieta_errors(p, &roots).unwrap();
        assert!(s <= 1e-6 && m <= 1e-6, "{p}: vieta {s} {m}");
        roots
    }

    #[test]
    fn simple_roots() {
        let roots = check(&d(&[-2, 0, 1]));
        assert!((roots[0].re + 2f64.sqrt()).abs() < 1e-12);
        assert!((roots[1].re - 2f64.sqrt()).abs() < 1e-12);
        let roots = check(&d(&[1, 1, 1]));
        assert!(roots.iter().all(|r| (r.z().norm() - 1.0).abs() < 1e-12));
        let roots = check(&d(&[3, 1]));
        assert_eq!(roots[0].re, -3.0);
    }

    #[test]
    fn zero_root_is_exact() {
        let roots = check(&d(&[0, 0, 0, 2, 1]));
        assert_eq!(&roots.iter().filter(|r| r.re == 0.0 && r.im == 0.0).count(), &3);
        let only = find_roots(&d(&[0, 5]), &RootOptions::default()).unwrap();
        assert_eq!(only, vec![Root { re: 0.0, im: 0.0, residual: 0.0 }]);
        assert!(find_roots(&d(&[4]), &RootOptions::default()).is_err());
    }

    #[test]
    fn high_degree_and_clusters() {
        check(&(&IntPolynomial::monomial(1, 16) + &IntPolynomial::monomial(16, 1)));
        let roots = check(&IntPolynomial::binomial_power(20).unwrap());
        assert!(roots.iter().all(|r| r.re == -1.0 && r.im == 0.0));
        let mixed = &(&IntPolynomial::binomial_power(3).unwrap() * &d(&[2, 0, 1]).pow(2)) * &d(&[0, 1]);
        assert_eq!(check(&mixed).len(), 8);
        check(&(&IntPolynomial::monomial(1, 3000) + &IntPolynomial::monomial(200, 1)));
        check(&(&IntPolynomial::monomial(1, 12) + &IntPolynomial::binomial_power(60).unwrap()));
    }

    #[test]
    fn iteration_cap() {
        let opts = RootOptions {
            tol: 1e-10,
            max_iterations: 1,
        };
        let p = &IntPolynomial::monomial(1, 16) + &IntPolynomial::binomial_power(16).unwrap();
        assert!(matches!(find_roots(&p, &opts), Err(Error::Convergence { .. })));
    }

    #[test]
    fn real_counts() {
        let opts = RootOptions::default();
        // 8x + x^3 + x^5
        assert_eq!(real_root_count(&d(&[0, 8, 0, 1, 0, 1]), &opts).unwrap().numeric, 1);
        // x^3 + 18
        assert_eq!(real_root_count(&d(&[18, 0, 0, 1]), &opts).unwrap().numeric, 1);
        // 16x + x^16: zero and the negative real root of 16 + x^15
        let di32 = &IntPolynomial::monomial(1, 16) + &IntPolynomial::monomial(16, 1);
        assert_eq!(real_root_count(&di32, &opts).unwrap(), RealRootCount { numeric: 2, grid: 2 });
        assert_eq!(real_root_count_exact(&di32).unwrap(), 2);
        // (x − 1)(x − 2)(x + 3)
        let cubic = &(&d(&[-1, 1]) * &d(&[-2, 1])) * &d(&[3, 1]);
        assert_eq!(real_root_count(&cubic, &opts).unwrap().grid, 3);
        // (1 + x)^2 (x^2 − 3)
        let repeated = &IntPolynomial::binomial_power(2).unwrap() * &d(&[-3, 0, 1]);
        assert_eq!(real_root_count(&repeated, &opts).unwrap(), RealRootCount { numeric: 4, grid: 4 });
    }
}
