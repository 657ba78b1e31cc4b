//! Exact integer arithmetic over `n`: factorization, totient, divisor
//! enumeration and the divisor-class sizes `|A_d| = φ(n/d)`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest input accepted by [`factorize`].
pub const MAX_FACTORIZABLE: u64 = i64::MAX as u64;

/// Canonical prime-power decomposition `n = p_1^{e_1} ⋯ p_r^{e_r}` with
/// `p_1 < ⋯ < p_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs in increasing prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|&(_, e)| e)
    }

    /// Number of distinct primes.
    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    /// `Π p_i^{e_i - 1}`, i.e. `n / rad(n)`.
    pub fn core_product(&self) -> u64 {
        self.n / self.radical()
    }

    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }

    pub fn tau(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }

    /// All positive divisors of `n`, increasing.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let len = out.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Trial division over 2, 3 and the 6k ± 1 wheel, stopping early once the
/// remaining cofactor is prime.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::Domain(format!("cannot factorize {n}: need n >= 2")));
    }
    if n > MAX_FACTORIZABLE {
        return Err(Error::Domain(format!(
            "cannot factorize {n}: need n <= 2^63 - 1"
        )));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut strip = |p: u64, rest: &mut u64| {
        let mut e = 0u32;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    strip(2, &mut rest);
    strip(3, &mut rest);
    let mut rest_is_prime = is_prime(rest);
    let mut k = 5u64;
    while !rest_is_prime && rest > 1 && k.saturating_mul(k) <= rest {
        let before = rest;
        strip(k, &mut rest);
        strip(k + 2, &mut rest);
        if rest != before {
            rest_is_prime = is_prime(rest);
        }
        k += 6;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

/// Euler's totient, `φ(1) = 1`.
pub fn totient(n: u64) -> Result<u64> {
    match n {
        0 => Err(Error::Domain("totient of 0 is undefined".into())),
        1 => Ok(1),
        _ => Ok(factorize(n)?.totient()),
    }
}

/// Number of positive divisors.
pub fn tau(n: u64) -> Result<u64> {
    match n {
        0 => Err(Error::Domain("tau of 0 is undefined".into())),
        1 => Ok(1),
        _ => Ok(factorize(n)?.tau()),
    }
}

/// Divisors of `n` other than `1` and `n`, increasing.
pub fn proper_divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let divisors = f.divisors();
    Ok(divisors[1..divisors.len() - 1].to_vec())
}

/// `|A_d| = φ(n/d)`, the number of ring elements `x` with `gcd(x, n) = d`.
pub fn class_cardinality(n: u64, d: u64) -> Result<u64> {
    if d <= 1 || d >= n || !n.is_multiple_of(d) {
        return Err(Error::Domain(format!(
            "{d} is not a proper divisor of {n}"
        )));
    }
    totient(n / d)
}

/// `gcd(a, b)` as a free function so callers need not import the trait.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_totient(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(36).unwrap().factors(), &[(2, 2), (3, 2)]);
        assert_eq!(factorize(77).unwrap().factors(), &[(7, 1), (11, 1)]);
        assert_eq!(factorize(16).unwrap().factors(), &[(2, 4)]);
        assert!(matches!(factorize(1), Err(Error::Domain(_))));
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
    }

    #[test]
    fn factorize_large_inputs() {
        let p = 9_223_372_036_854_775_783u64; // largest prime below 2^63
        assert_eq!(factorize(p).unwrap().factors(), &[(p, 1)]);
        let f = factorize(MAX_FACTORIZABLE).unwrap();
        assert_eq!(f.factors(), &[(7, 2), (73, 1), (127, 1), (337, 1), (92737, 1), (649657, 1)]);
        let semi = 1_000_003u64 * 1_000_033;
        assert_eq!(
            factorize(semi).unwrap().factors(),
            &[(1_000_003, 1), (1_000_033, 1)]
        );
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(16).unwrap(), 8);
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(30).unwrap(), 8);
        assert!(totient(0).is_err());
        for n in 1..300 {
            assert_eq!(totient(n).unwrap(), naive_totient(n), "n = {n}");
        }
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(36).unwrap(), 9);
        assert_eq!(tau(13).unwrap(), 2);
        let direct = (1..=30u64).filter(|d| 30 % d == 0).count() as u64;
        assert_eq!(direct, 8);
        assert_eq!(tau(30).unwrap(), direct);
    }

    #[test]
    fn proper_divisor_examples() {
        assert_eq!(proper_divisors(16).unwrap(), vec![2, 4, 8]);
        assert_eq!(proper_divisors(36).unwrap(), vec![2, 3, 4, 6, 9, 12, 18]);
        assert!(proper_divisors(13).unwrap().is_empty());
    }

    #[test]
    fn class_cardinality_examples() {
        assert_eq!(class_cardinality(16, 2).unwrap(), 4);
        assert_eq!(class_cardinality(36, 18).unwrap(), 1);
        assert_eq!(class_cardinality(36, 2).unwrap(), 6);
        assert!(class_cardinality(36, 5).is_err());
        assert!(class_cardinality(36, 1).is_err());
        assert!(class_cardinality(36, 36).is_err());
    }

    #[test]
    fn class_cardinality_counts_elements() {
        for n in 2..200u64 {
            for d in proper_divisors(n).unwrap() {
                let direct = (0..n).filter(|&x| gcd(x, n) == d).count() as u64;
                assert_eq!(class_cardinality(n, d).unwrap(), direct);
            }
        }
    }

    #[test]
    fn miller_rabin_matches_sieve() {
        let limit = 20_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &flag) in sieve.iter().enumerate() {
            assert_eq!(is_prime(i as u64), flag, "i = {i}");
        }
        // strong pseudoprime to several small bases
        assert!(!is_prime(3_215_031_751));
    }
}
