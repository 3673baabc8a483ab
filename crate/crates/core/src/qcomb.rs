//! q-integers, q-binomial coefficients, cyclotomic polynomials and the
//! congruence checks built from them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{divrem_monic, is_divisible, IntPoly, LaurentPoly};
use crate::error::{invalid, Result};

/// `[n]_q = (1 - q^n)/(1 - q)` for any integer `n`.
///
/// For `n < 0` this is `-(q^n + q^(n+1) + ... + q^-1)`.
pub fn q_int(n: i64) -> LaurentPoly {
    match n {
        0 => LaurentPoly::zero(),
        n if n > 0 => LaurentPoly::new(0, vec![BigInt::one(); n as usize]),
        n => LaurentPoly::new(n, vec![-BigInt::one(); (-n) as usize]),
    }
}

/// `f·[m]_q`, as a sliding window sum for `m > 0`.
fn mul_q_int(f: &LaurentPoly, m: i64) -> LaurentPoly {
    if m == 0 || f.is_zero() {
        return LaurentPoly::zero();
    }
    if m < 0 {
        // [m]_q = -q^m [-m]_q
        return -mul_q_int(f, -m).shift(m);
    }
    let (c, m) = (f.coeffs(), m as usize);
    let mut out = Vec::with_capacity(c.len() + m - 1);
    let mut window = BigInt::zero();
    for i in 0..c.len() + m - 1 {
        if let Some(x) = c.get(i) {
            window += x;
        }
        if let Some(x) = i.checked_sub(m).and_then(|k| c.get(k)) {
            window -= x;
        }
        out.push(window.clone());
    }
    LaurentPoly::new(f.offset(), out)
}

/// `f / [j]_q` for `j >= 1`, or `None` if the division leaves a remainder.
///
/// Uses `g[i] = f[i] - f[i-1] + g[i-j]`, which solves `g·[j]_q = f` on
/// every index below `len(f)`; the quotient is exact iff the top `j - 1`
/// entries of `g` vanish.
fn div_q_int(f: &LaurentPoly, j: usize) -> Option<LaurentPoly> {
    let c = f.coeffs();
    if c.is_empty() {
        return Some(LaurentPoly::zero());
    }
    if c.len() < j {
        return None;
    }
    let mut g: Vec<BigInt> = Vec::with_capacity(c.len());
    for i in 0..c.len() {
        let mut v = c[i].clone();
        if i >= 1 {
            v -= &c[i - 1];
        }
        if i >= j {
            v += &g[i - j];
        }
        g.push(v);
    }
    let keep = c.len() - j + 1;
    if g[keep..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    g.truncate(keep);
    Some(LaurentPoly::new(f.offset(), g))
}

/// Gaussian binomial coefficient for arbitrary integer `n` and `k`.
///
/// Computed as `∏ [n-j+1]_q / ∏ [j]_q`, dividing after every multiplication.
/// Every partial quotient is itself a q-binomial coefficient, so each
/// division is exact; a remainder means the kernel is broken and panics.
pub fn q_binom(n: i64, k: i64) -> LaurentPoly {
    if k < 0 {
        return LaurentPoly::zero();
    }
    let mut acc = LaurentPoly::one();
    for j in 1..=k {
        acc = mul_q_int(&acc, n - j + 1);
        if acc.is_zero() {
            return acc;
        }
        acc = div_q_int(&acc, j as usize).unwrap_or_else(|| {
            panic!("q_binom({n}, {k}): partial product not divisible by [{j}]_q")
        });
    }
    acc
}

/// Ordinary binomial coefficient with the falling-factorial extension to
/// negative `n`, so `binom(-a-1, s) = (-1)^s binom(a+s, s)`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || (n >= 0 && k > n) {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc = binom(n, i) here, so the division is exact.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient by trial-division factorization.
pub fn euler_phi(d: u64) -> u64 {
    let mut n = d;
    let mut phi = d;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Memoized cyclotomic polynomials, shareable across threads.
#[derive(Debug, Default)]
pub struct CyclotomicCache {
    polys: Mutex<HashMap<u64, Arc<IntPoly>>>,
}

impl CyclotomicCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn lookup(&self, d: u64) -> Option<Arc<IntPoly>> {
        self.polys.lock().unwrap().get(&d).cloned()
    }

    /// `Φ_d(q)`, computed as `(q^d - 1) / ∏_{e | d, e < d} Φ_e(q)`.
    ///
    /// # Panics
    /// If `d == 0`, or if a division is inexact (a kernel bug).
    pub fn get(&self, d: u64) -> Arc<IntPoly> {
        assert!(d >= 1, "cyclotomic index must be positive");
        if let Some(p) = self.lookup(d) {
            return p;
        }
        let mut coeffs = vec![BigInt::zero(); d as usize + 1];
        coeffs[0] = -BigInt::one();
        coeffs[d as usize] = BigInt::one();
        let mut acc = IntPoly::from_coeffs(coeffs);
        for e in divisors(d).into_iter().filter(|&e| e < d) {
            let (quot, rem) =
                divrem_monic(&acc, &self.get(e)).expect("cyclotomic divisors are monic");
            assert!(
                rem.is_zero(),
                "Φ_{e} does not divide the partial quotient for Φ_{d}"
            );
            acc = quot;
        }
        let acc = Arc::new(acc);
        self.polys.lock().unwrap().entry(d).or_insert(acc).clone()
    }

    pub fn len(&self) -> usize {
        self.polys.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `Φ_d(q)` through the shared cache.
pub fn cyclotomic(d: u64, cache: &CyclotomicCache) -> Arc<IntPoly> {
    cache.get(d)
}

/// Checks `[n]_q = ∏_{d | n, d > 1} Φ_d(q)`.
pub fn q_int_factorization_check(n: u64, cache: &CyclotomicCache) -> Result<bool> {
    if n < 2 {
        return Err(invalid(format!(
            "factorization check needs n >= 2, got {n}"
        )));
    }
    let product = divisors(n)
        .into_iter()
        .filter(|&d| d > 1)
        .fold(IntPoly::one(), |acc, d| &acc * &cache.get(d));
    Ok(product.as_laurent() == &q_int(n as i64))
}

/// Difference of the two sides of the q-Lucas congruence,
/// `qbinom(ad+b, hd+l) - binom(a,h)·qbinom(b,l)`.
pub fn q_lucas_difference(a: i64, b: i64, h: i64, l: i64, d: i64) -> Result<LaurentPoly> {
    if d < 2 {
        return Err(invalid(format!("q-Lucas needs d > 1, got {d}")));
    }
    if !(0..d).contains(&b) || !(0..d).contains(&l) {
        return Err(invalid(format!(
            "q-Lucas needs 0 <= b, l < d (b={b}, l={l}, d={d})"
        )));
    }
    let lhs = q_binom(a * d + b, h * d + l);
    let rhs = q_binom(b, l).scale(&binomial(a, h));
    Ok(&lhs - &rhs)
}

/// `qbinom(ad+b, hd+l) ≡ binom(a,h)·qbinom(b,l) (mod Φ_d(q))`.
pub fn q_lucas_check(
    a: i64,
    b: i64,
    h: i64,
    l: i64,
    d: i64,
    cache: &CyclotomicCache,
) -> Result<bool> {
    let diff = q_lucas_difference(a, b, h, l, d)?;
    is_divisible(&diff, &cache.get(d as u64))
}

/// Outcome of the two-part cyclotomic lemma for one `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyclotomicLemma {
    /// Odd `d`: whether `Φ_d(q)` divides `Φ_d(q²)`.
    Odd { divides: bool },
    /// Even `d`: whether `Φ_d(q²) = Φ_{2d}(q)`, and whether `Φ_{2d}(q)` divides `q^d + 1`.
    Even { identity: bool, reduction: bool },
}

impl CyclotomicLemma {
    pub fn holds(&self) -> bool {
        match *self {
            CyclotomicLemma::Odd { divides } => divides,
            CyclotomicLemma::Even {
                identity,
                reduction,
            } => identity && reduction,
        }
    }
}

pub fn cyclotomic_lemma(d: u64, cache: &CyclotomicCache) -> Result<CyclotomicLemma> {
    if d < 2 {
        return Err(invalid(format!("cyclotomic lemma needs d >= 2, got {d}")));
    }
    let phi = cache.get(d);
    let phi_sq = phi.as_laurent().subst_q2();
    if d % 2 == 1 {
        return Ok(CyclotomicLemma::Odd {
            divides: is_divisible(&phi_sq, &phi)?,
        });
    }
    let phi_2d = cache.get(2 * d);
    let q_d_plus_one = &LaurentPoly::monomial(1, d as i64) + &LaurentPoly::one();
    Ok(CyclotomicLemma::Even {
        identity: &phi_sq == phi_2d.as_laurent(),
        reduction: is_divisible(&q_d_plus_one, &phi_2d)?,
    })
}

/// Odd `d`: `Φ_d(q) | Φ_d(q²)`. Even `d`: `Φ_d(q²) = Φ_{2d}(q)` and
/// `q^d ≡ -1 (mod Φ_{2d}(q))`.
pub fn cyclotomic_lemma_check(d: u64, cache: &CyclotomicCache) -> Result<bool> {
    Ok(cyclotomic_lemma(d, cache)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_int_multiply_and_divide_match_general_arithmetic() {
        let f = LaurentPoly::from_i64s(-3, &[2, 0, -5, 7, 1]);
        for m in -6..=6 {
            assert_eq!(mul_q_int(&f, m), &f * &q_int(m), "m = {m}");
        }
        for j in 1..=6usize {
            let multiple = &f * &q_int(j as i64);
            assert_eq!(div_q_int(&multiple, j), Some(f.clone()));
            if j > 1 {
                let off_by_one = &multiple + &LaurentPoly::one();
                assert_eq!(div_q_int(&off_by_one, j), None, "j = {j}");
            }
        }
        assert_eq!(div_q_int(&LaurentPoly::from_i64s(0, &[1, 1]), 3), None);
        assert_eq!(
            div_q_int(&LaurentPoly::zero(), 3),
            Some(LaurentPoly::zero())
        );
    }

    fn lp(offset: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(offset, c)
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_int(3), lp(0, &[1, 1, 1]));
        assert_eq!(q_int(0), LaurentPoly::zero());
        assert_eq!(q_int(1), LaurentPoly::one());
        // (1 - q^-2)/(1 - q) = -q^-2 (1 - q^2)/(1 - q) = -q^-2 - q^-1
        assert_eq!(q_int(-2), lp(-2, &[-1, -1]));
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binom(4, 2), lp(0, &[1, 1, 2, 1, 1]));
        assert_eq!(q_binom(9, 0), LaurentPoly::one());
        assert_eq!(q_binom(-5, 0), LaurentPoly::one());
        assert_eq!(q_binom(3, -1), LaurentPoly::zero());
        assert_eq!(q_binom(-1, 2), lp(-3, &[1]));
        assert_eq!(q_binom(2, 3), LaurentPoly::zero());
        assert_eq!(q_binom(0, 1), LaurentPoly::zero());
    }

    #[test]
    fn ordinary_binomials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        // binom(-a-1, s) = (-1)^s binom(a+s, s)
        assert_eq!(binomial(-3, 2), BigInt::from(6));
        assert_eq!(binomial(-3, 3), BigInt::from(-10));
        assert_eq!(binomial(-1, 7), BigInt::from(-1));
    }

    #[test]
    fn cyclotomic_examples() {
        let cache = CyclotomicCache::new();
        assert_eq!(*cyclotomic(1, &cache), IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(*cyclotomic(2, &cache), IntPoly::from_i64s(&[1, 1]));
        assert_eq!(*cyclotomic(6, &cache), IntPoly::from_i64s(&[1, -1, 1]));
        assert_eq!(
            *cyclotomic(12, &cache),
            IntPoly::from_i64s(&[1, 0, -1, 0, 1])
        );
        // Φ_105 is the first with a coefficient outside {-1, 0, 1}.
        assert!(cyclotomic(105, &cache)
            .dense()
            .iter()
            .any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn totient() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
        let brute = |d: u64| (1..=d).filter(|&k| num_integer::gcd(k, d) == 1).count() as u64;
        for d in 1..200 {
            assert_eq!(euler_phi(d), brute(d), "d = {d}");
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn factorization_small() {
        let cache = CyclotomicCache::new();
        assert!(q_int_factorization_check(2, &cache).unwrap());
        assert!(q_int_factorization_check(6, &cache).unwrap());
        assert!(q_int_factorization_check(1, &cache).is_err());
    }

    #[test]
    fn q_lucas_examples() {
        let cache = CyclotomicCache::new();
        assert!(q_lucas_check(2, 1, 1, 1, 3, &cache).unwrap());
        // h > a and l <= b: both sides vanish modulo Φ_d.
        assert!(q_lucas_check(1, 2, 3, 1, 4, &cache).unwrap());
        assert!(q_lucas_check(1, 1, 1, 1, 1, &cache).is_err());
        assert!(q_lucas_check(1, 3, 1, 1, 3, &cache).is_err());
        assert!(q_lucas_check(1, 1, 1, -1, 3, &cache).is_err());
    }

    #[test]
    fn q_lucas_negative_top() {
        // The rewrite of qbinom(k+j, j) uses the congruence with a < 0.
        let cache = CyclotomicCache::new();
        for d in 2..=5 {
            for a in -3..0 {
                for h in 0..3 {
                    for b in 0..d {
                        for l in 0..d {
                            assert!(q_lucas_check(a, b, h, l, d, &cache).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cyclotomic_lemma_examples() {
        let cache = CyclotomicCache::new();
        // Φ_3(q²) = (q²+q+1)(q²-q+1)
        assert_eq!(
            cyclotomic_lemma(3, &cache).unwrap(),
            CyclotomicLemma::Odd { divides: true }
        );
        assert_eq!(
            cyclotomic_lemma(2, &cache).unwrap(),
            CyclotomicLemma::Even {
                identity: true,
                reduction: true
            }
        );
        assert!(cyclotomic_lemma_check(1, &cache).is_err());
    }

    #[test]
    fn cache_is_shared_across_threads() {
        let cache = CyclotomicCache::new();
        let results: Vec<Arc<IntPoly>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..4).map(|_| s.spawn(|| cache.get(30))).collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for r in &results {
            assert_eq!(**r, *results[0]);
        }
        assert_eq!(results[0].degree(), Some(8));
    }
}
