//! Sparse univariate polynomials with arbitrary-precision integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precision::{ComplexDD, DoubleDouble};

/// Largest exponent accepted by [`IntPolynomial::binomial_power`].
pub const MAX_BINOMIAL_POWER: u64 = 1_000_000;

/// Exponent → coefficient map with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    terms: BTreeMap<usize, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `c·x^exp`.
    pub fn monomial(exp: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Builds from a dense coefficient list `a_0, a_1, …`.
    pub fn from_dense<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate())
    }

    /// `(1 + x)^k`, via the exact ratio `C(k, i+1) = C(k, i)·(k − i)/(i + 1)`.
    pub fn binomial_power(k: u64) -> Result<Self> {
        if k > MAX_BINOMIAL_POWER {
            return Err(Error::Capacity {
                what: "binomial exponent",
                got: k,
                limit: MAX_BINOMIAL_POWER,
            });
        }
        let mut terms = BTreeMap::new();
        let mut c = BigInt::one();
        terms.insert(0, c.clone());
        for i in 0..k {
            c = c * (k - i) / (i + 1);
            terms.insert(i as usize + 1, c.clone());
        }
        Ok(Self { terms })
    }

    fn add_term(&mut self, exp: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent carrying a nonzero coefficient, i.e. the
    /// multiplicity of the root at zero.
    pub fn min_exponent(&self) -> Option<usize> {
        self.terms.keys().next().copied()
    }

    pub fn coefficient(&self, exp: usize) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(0)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, a)| (e, a * c)).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, a)| (e + k, a.clone())).collect(),
        }
    }

    /// Divides by `x^k`; fails if any exponent is below `k`.
    pub fn unshift(&self, k: usize) -> Result<Self> {
        if self.min_exponent().is_some_and(|m| m < k) {
            return Err(Error::Domain(format!("x^{k} does not divide {self}")));
        }
        Ok(Self {
            terms: self.terms.iter().map(|(&e, a)| (e - k, a.clone())).collect(),
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `a_0, …, a_deg` including interior zeros.
    pub fn dense_coefficients(&self) -> Result<Vec<BigInt>> {
        let deg = self
            .degree()
            .ok_or_else(|| Error::Domain("zero polynomial has no coefficient sequence".into()))?;
        let mut out = vec![BigInt::zero(); deg + 1];
        for (&e, c) in &self.terms {
            out[e] = c.clone();
        }
        Ok(out)
    }

    /// Sum of the absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Horner evaluation over the dense sequence in double-double precision,
    /// rounded to `f64` at the end.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let (re, im) = self.evaluate_dd(ComplexDD::new(z.re, z.im)).to_f64();
        Complex64::new(re, im)
    }

    pub fn evaluate_dd(&self, z: ComplexDD) -> ComplexDD {
        let Some(deg) = self.degree() else {
            return ComplexDD::default();
        };
        let mut acc = ComplexDD::default();
        let mut next = self.terms.iter().rev().peekable();
        for e in (0..=deg).rev() {
            acc = acc * z;
            if let Some((_, c)) = next.next_if(|(&k, _)| k == e) {
                acc.re = acc.re + DoubleDouble::from_bigint(c);
            }
        }
        acc
    }

    /// Exact evaluation at an integer point.
    pub fn evaluate_integer(&self, x: &BigInt) -> BigInt {
        let Some(deg) = self.degree() else {
            return BigInt::zero();
        };
        let mut acc = BigInt::zero();
        for e in (0..=deg).rev() {
            acc *= x;
            if let Some(c) = self.terms.get(&e) {
                acc += c;
            }
        }
        acc
    }

    /// Sign of `p(num/den)` for `den > 0`, computed exactly as the sign of
    /// `Σ a_i num^i den^{deg-i}`.
    pub fn sign_at_rational(&self, num: &BigInt, den: &BigInt) -> i8 {
        debug_assert!(den.is_positive());
        let Some(deg) = self.degree() else {
            return 0;
        };
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for e in (0..=deg).rev() {
            acc *= num;
            if let Some(c) = self.terms.get(&e) {
                acc += c * &den_pow;
            }
            den_pow *= den;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Coefficients as `f64`, after dividing every coefficient by a common
    /// power of two so the largest one fits. Roots are unaffected by the
    /// scaling. Fails when the smallest nonzero coefficient would underflow.
    pub fn scaled_f64_coefficients(&self) -> Result<Vec<f64>> {
        let dense = self.dense_coefficients()?;
        let max_bits = dense.iter().map(|c| c.bits()).max().unwrap_or(0);
        let shift = max_bits.saturating_sub(1000);
        let mut out = Vec::with_capacity(dense.len());
        for c in &dense {
            if c.is_zero() {
                out.push(0.0);
                continue;
            }
            let v = if shift == 0 {
                c.to_f64().unwrap_or(f64::NAN)
            } else {
                let mant_shift = c.bits().saturating_sub(64);
                let mant = (c >> mant_shift).to_f64().unwrap_or(f64::NAN);
                mant * 2f64.powi(mant_shift as i32 - shift as i32)
            };
            if v == 0.0 || !v.is_finite() {
                return Err(Error::Capacity {
                    what: "coefficient dynamic range in bits",
                    got: max_bits,
                    limit: 1000,
                });
            }
            out.push(v);
        }
        Ok(out)
    }

    fn leading(&self) -> Option<(usize, &BigInt)> {
        self.terms.iter().next_back().map(|(&e, c)| (e, c))
    }

    /// Gcd of the coefficients, zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        let Some((_, lead)) = self.leading() else {
            return Self::zero();
        };
        let mut g = self.content();
        if lead.is_negative() {
            g = -g;
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c / &g)).collect(),
        }
    }

    /// Quotient of an exact division in `Z[x]`; fails when `divisor` does
    /// not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (dd, dl) = divisor
            .leading()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some((re, rl)) = rem.leading() {
            if re < dd {
                break;
            }
            let (q, r) = rl.div_rem(dl);
            if !r.is_zero() {
                break;
            }
            let term = Self::monomial(re - dd, q);
            rem = &rem - &(&term * divisor);
            quotient = &quotient + &term;
        }
        if !rem.is_zero() {
            return Err(Error::Domain(format!("{divisor} does not divide {self}")));
        }
        Ok(quotient)
    }

    /// Primitive greatest common divisor, by pseudo-remainders with the
    /// content removed at every step.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while let Some((bd, bl)) = b.leading() {
            let bl = bl.clone();
            let mut r = a;
            while let Some((rd, rl)) = r.leading() {
                if rd < bd {
                    break;
                }
                let rl = rl.clone();
                r = &r.scale(&bl) - &(&b * &Self::monomial(rd - bd, rl));
            }
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Yun's square-free decomposition: `self = c·Π f_i^{m_i}` with every
    /// `f_i` primitive, square-free and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Self, usize)>> {
        if self.is_zero() {
            return Err(Error::Domain("the zero polynomial has no factorization".into()));
        }
        let a = self.primitive_part();
        let mut out = Vec::new();
        if a.degree() == Some(0) {
            return Ok(out);
        }
        let da = a.derivative();
        let c = a.gcd(&da);
        let mut w = a.exact_div(&c)?;
        let mut y = da.exact_div(&c)?;
        let mut z = &y - &w.derivative();
        let mut m = 1;
        while w.degree().unwrap_or(0) > 0 {
            let g = w.gcd(&z);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), m));
            }
            w = w.exact_div(&g)?;
            y = z.exact_div(&g)?;
            z = &y - &w.derivative();
            m += 1;
        }
        Ok(out)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(&e, _)| e > 0)
                .map(|(&e, c)| (e - 1, c * BigInt::from(e)))
                .collect(),
        }
    }
}

impl<'a> Add<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &'a IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl<'a> Sub<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &'a IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        &self - &rhs
    }
}

impl<'a> Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &'a IntPolynomial) -> IntPolynomial {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (&ea, a) in &self.terms {
            for (&eb, b) in &rhs.terms {
                *acc.entry(ea + eb).or_insert_with(BigInt::zero) += a * b;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        IntPolynomial { terms: acc }
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let show_coeff = e == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Which graph polynomial a value represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyKind {
    /// Independent domination polynomial.
    Di,
    /// Independence polynomial.
    Independence,
}

impl PolyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PolyKind::Di => "di",
            PolyKind::Independence => "independence",
        }
    }
}

impl std::str::FromStr for PolyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "di" => Ok(PolyKind::Di),
            "independence" | "ind" => Ok(PolyKind::Independence),
            other => Err(Error::Domain(format!("unknown polynomial kind {other:?}"))),
        }
    }
}

/// How a polynomial was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Closed-form formula keyed on the factorization shape.
    Closed,
    /// Quotient (divisor) graph computation.
    Structured,
    /// Brute-force enumeration on the full graph.
    Oracle,
    /// The literal reference formula, including its known errors.
    AsPrinted,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Structured => "structured",
            Method::Oracle => "oracle",
            Method::AsPrinted => "as-printed",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Method::Closed),
            "structured" => Ok(Method::Structured),
            "oracle" => Ok(Method::Oracle),
            "as-printed" | "as_printed" => Ok(Method::AsPrinted),
            other => Err(Error::Domain(format!("unknown method {other:?}"))),
        }
    }
}

/// Serialized polynomial. Coefficients are decimal strings so that no
/// precision is lost in transit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialRecord {
    pub n: u64,
    pub kind: PolyKind,
    pub method: Method,
    pub coefficients: Vec<(usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discrepancy_notes: Option<Vec<String>>,
}

impl PolynomialRecord {
    pub fn new(n: u64, kind: PolyKind, method: Method, poly: &IntPolynomial) -> Self {
        Self {
            n,
            kind,
            method,
            coefficients: poly.terms().map(|(e, c)| (e, c.to_string())).collect(),
            provenance: None,
            discrepancy_notes: None,
        }
    }

    pub fn polynomial(&self) -> Result<IntPolynomial> {
        let mut terms = Vec::with_capacity(self.coefficients.len());
        for (e, c) in &self.coefficients {
            let c: BigInt = c
                .parse()
                .map_err(|_| Error::Domain(format!("bad coefficient {c:?}")))?;
            terms.push((*e, c));
        }
        Ok(IntPolynomial::from_terms(terms))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_dense(coeffs.iter().copied())
    }

    #[test]
    fn ring_operation_examples() {
        let x = IntPolynomial::x();
        assert!((&x + &(-&x)).is_zero());
        assert_eq!(x.clone() - x.clone(), IntPolynomial::zero());
        assert_eq!(&poly(&[1, 1]) * &poly(&[1, 1]), poly(&[1, 2, 1]));

        // x·(pq − p − q + 1 + x^{p−1} + x^{q−1}) with p = 3, q = 5
        let h = IntPolynomial::from_terms([(0, 8), (2, 1), (4, 1)]);
        assert_eq!(&x * &h, IntPolynomial::from_terms([(1, 8), (3, 1), (5, 1)]));
        assert_eq!(h.scale(&BigInt::from(0)), IntPolynomial::zero());
        assert_eq!(h.scale(&BigInt::from(-2)), IntPolynomial::from_terms([(0, -16), (2, -2), (4, -2)]));
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let p = IntPolynomial::from_terms([(3, 2), (3, -2), (1, 0)]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn binomial_power_examples() {
        assert_eq!(IntPolynomial::binomial_power(0).unwrap(), IntPolynomial::one());
        let b16 = IntPolynomial::binomial_power(16).unwrap();
        let head: Vec<i64> = (0..5).map(|i| b16.coefficient(i).try_into().unwrap()).collect();
        assert_eq!(head, vec![1, 16, 120, 560, 1820]);
        assert!(IntPolynomial::binomial_power(MAX_BINOMIAL_POWER + 1).is_err());

        // additive Pascal recurrence, independent of the ratio formula
        let mut row = vec![BigInt::one()];
        for _ in 0..7 {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        assert_eq!(IntPolynomial::binomial_power(7).unwrap(), IntPolynomial::from_dense(row));
    }

    #[test]
    fn binomial_power_beyond_u64() {
        let b = IntPolynomial::binomial_power(200).unwrap();
        let mid = b.coefficient(100);
        assert!(mid.bits() > 64);
        assert_eq!(b.evaluate_integer(&BigInt::one()), BigInt::one() << 200);
    }

    #[test]
    fn evaluate_examples() {
        let z1 = Complex64::new(1.0, 0.0);
        assert_eq!(IntPolynomial::monomial(1, 5).evaluate(z1), Complex64::new(5.0, 0.0));
        let di15 = IntPolynomial::from_terms([(1, 8), (3, 1), (5, 1)]);
        assert_eq!(di15.evaluate(Complex64::new(0.0, 0.0)), Complex64::new(0.0, 0.0));
        assert_eq!(poly(&[1, 2, 1]).evaluate(Complex64::new(-1.0, 0.0)), Complex64::new(0.0, 0.0));
        let i = Complex64::new(0.0, 1.0);
        // 1 + x^2 at i
        assert_eq!(poly(&[1, 0, 1]).evaluate(i), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn dense_coefficient_examples() {
        let p = IntPolynomial::from_terms([(1, 6), (3, 1)]);
        let d: Vec<i64> = p.dense_coefficients().unwrap().iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(d, vec![0, 6, 0, 1]);
        let lin: Vec<i64> = poly(&[1, 7]).dense_coefficients().unwrap().iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(lin, vec![1, 7]);
        let di36 = IntPolynomial::from_terms([(1, 12), (12, 1), (18, 1)]);
        let d36 = di36.dense_coefficients().unwrap();
        assert_eq!(d36.len(), 19);
        assert_eq!(d36.iter().filter(|c| !c.is_zero()).count(), 3);
        assert!(IntPolynomial::zero().dense_coefficients().is_err());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(IntPolynomial::from_terms([(1, 8), (3, 1), (5, 1)]).to_string(), "8x + x^3 + x^5");
        assert_eq!(poly(&[-1, 0, -3]).to_string(), "-1 - 3x^2");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn record_json_shape() {
        let p = IntPolynomial::from_terms([(1, 8), (8, 1)]);
        let rec = PolynomialRecord::new(16, PolyKind::Di, Method::Structured, &p);
        assert_eq!(
            rec.to_json(),
            r#"{"n":16,"kind":"di","method":"structured","coefficients":[[1,"8"],[8,"1"]]}"#
        );
        let back: PolynomialRecord = serde_json::from_str(&rec.to_json()).unwrap();
        assert_eq!(back.polynomial().unwrap(), p);
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = poly(&[1, 1]);
        let b = poly(&[-2, 3]);
        let prod = &(&a * &a) * &b;
        assert_eq!(prod.exact_div(&a).unwrap(), &a * &b);
        assert!(prod.exact_div(&poly(&[5, 1])).is_err());
        assert!(prod.exact_div(&IntPolynomial::zero()).is_err());
        let g = prod.gcd(&(&a * &poly(&[7, 1])).scale(&BigInt::from(6)));
        assert_eq!(g, a);
        assert_eq!(poly(&[4, 6]).primitive_part(), poly(&[2, 3]));
        assert_eq!(poly(&[-4, -6]).primitive_part(), poly(&[2, 3]));
    }

    #[test]
    fn squarefree_parts() {
        let a = poly(&[1, 1]);
        let b = poly(&[-2, 3]);
        let c = poly(&[1, 0, 1]);
        let p = (&(&a.pow(3) * &b) * &c.pow(2)).scale(&BigInt::from(-5));
        let mut parts = p.squarefree_decomposition().unwrap();
        parts.sort_by_key(|(_, m)| *m);
        assert_eq!(parts, vec![(b, 1), (c, 2), (a.clone(), 3)]);
        let b20 = IntPolynomial::binomial_power(20).unwrap();
        assert_eq!(b20.squarefree_decomposition().unwrap(), vec![(a, 20)]);
        assert!(poly(&[7]).squarefree_decomposition().unwrap().is_empty());
    }

    #[test]
    fn scaled_coefficients_survive_huge_values() {
        // 2^1196 overflows f64 outright, but the scaled copy is finite
        let p = IntPolynomial::binomial_power(1200).unwrap();
        let c = p.scaled_f64_coefficients().unwrap();
        assert!(c.iter().all(|v| v.is_finite() && *v > 0.0));
        assert_eq!(c[0], c[1200]);
        // a 3000-bit spread cannot fit in one exponent range
        let wide = &IntPolynomial::monomial(2, BigInt::one() << 3000) + &IntPolynomial::one();
        assert!(matches!(wide.scaled_f64_coefficients(), Err(Error::Capacity { .. })));
    }

    fn arb_poly() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec((0usize..=50, -1_000_000i64..=1_000_000), 0..12)
            .prop_map(IntPolynomial::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn binomial_powers_multiply(a in 0u64..=200, b in 0u64..=200) {
            let pa = IntPolynomial::binomial_power(a).unwrap();
            let pb = IntPolynomial::binomial_power(b).unwrap();
            prop_assert_eq!(&pa * &pb, IntPolynomial::binomial_power(a + b).unwrap());
        }

        #[test]
        fn evaluation_is_multiplicative(
            a in arb_poly(),
            b in arb_poly(),
            r in 0.0f64..2.0,
            theta in 0.0f64..std::f64::consts::TAU,
        ) {
            let z = Complex64::from_polar(r, theta);
            let lhs = (&a * &b).evaluate(z);
            let rhs = a.evaluate(z) * b.evaluate(z);
            // relative to the term magnitudes, so cancellation near a root
            // does not blow up the ratio
            let abs_terms = |p: &IntPolynomial| -> f64 {
                p.terms().map(|(e, c)| c.to_f64().unwrap().abs() * r.powi(e as i32)).sum()
            };
            let mag = abs_terms(&a) * abs_terms(&b);
            prop_assert!((lhs - rhs).norm() <= 1e-10 * mag);
        }
    }
}
