//! Constructors for the Apéry-type polynomial families and the
//! `η(2z)⁴η(4z)⁴` coefficient stream.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{IntXPoly, LaurentPoly, XPoly};
use crate::error::{invalid, Result};
use crate::qcomb::{binomial, q_binom};

fn check_alpha(alpha: u32) -> Result<()> {
    if alpha == 0 {
        return Err(invalid("alpha must be at least 1"));
    }
    Ok(())
}

/// `A_n^(α)(x) = Σ_k (binom(n,k)·binom(n+k,k))^α x^k`.
pub fn apery_poly(n: u32, alpha: u32) -> Result<IntXPoly> {
    check_alpha(alpha)?;
    let n = i64::from(n);
    Ok(IntXPoly::new(
        (0..=n)
            .map(|k| num_traits::pow(binomial(n, k) * binomial(n + k, k), alpha as usize))
            .collect(),
    ))
}

/// Central Delannoy polynomial `D_n(x) = A_n^(1)(x)`.
pub fn delannoy_poly(n: u32) -> IntXPoly {
    apery_poly(n, 1).expect("alpha = 1 is valid")
}

/// Generalized q-Apéry polynomial
/// `A_k^(α)(x;q) = Σ_j q^(α(binom(j,2) - jk)) qbinom(k,j)^α qbinom(k+j,j)^α x^j`.
///
/// The `q`-weight is raised to the power `α` along with the binomials. This
/// is the normalization under which the doubly-infinite form
/// [`q_apery_poly_alt`] agrees, and for which the `[n]_q` divisibility
/// holds. With an unscaled weight the two constructions differ for `α ≥ 2`.
pub fn q_apery_poly(k: u32, alpha: u32) -> Result<XPoly> {
    check_alpha(alpha)?;
    let k = i64::from(k);
    let a = i64::from(alpha);
    let coeffs = (0..=k)
        .map(|j| {
            let body = &q_binom(k, j).pow(alpha) * &q_binom(k + j, j).pow(alpha);
            body.shift(a * (j * (j - 1) / 2 - j * k))
        })
        .collect();
    Ok(XPoly::new(coeffs))
}

/// `Σ_j (-1)^(αj) q^(αj²) qbinom(k,j)^α qbinom(-k-1,j)^α x^j`, an independent
/// construction of [`q_apery_poly`] through negative upper indices.
pub fn q_apery_poly_alt(k: u32, alpha: u32) -> Result<XPoly> {
    check_alpha(alpha)?;
    let k = i64::from(k);
    let a = i64::from(alpha);
    let coeffs = (0..=k)
        .map(|j| {
            let body = &q_binom(k, j).pow(alpha) * &q_binom(-k - 1, j).pow(alpha);
            let body = body.shift(a * j * j);
            if (a * j) % 2 == 1 {
                -body
            } else {
                body
            }
        })
        .collect();
    Ok(XPoly::new(coeffs))
}

/// The reduced form of `A_(ad+b)^(α)(x;q)` modulo `Φ_d(q)`:
///
/// `B = Σ_{s,t} (-1)^(α(sd+t)) q^(αt²) binom(a,s)^α qbinom(b,t)^α
///      binom(-a-1,s)^α qbinom(d-b-1,t)^α x^(sd+t)`
///
/// over `0 <= s <= a`, `0 <= t < d`.
pub fn b_poly(a: u32, b: u32, d: u32, alpha: u32) -> Result<XPoly> {
    check_alpha(alpha)?;
    if d < 2 {
        return Err(invalid(format!("b_poly needs d >= 2, got {d}")));
    }
    if b >= d {
        return Err(invalid(format!("b_poly needs 0 <= b < d (b={b}, d={d})")));
    }
    let (a, b, d) = (i64::from(a), i64::from(b), i64::from(d));
    let al = i64::from(alpha);
    let q_parts: Vec<LaurentPoly> = (0..d)
        .map(|t| {
            (&q_binom(b, t) * &q_binom(d - b - 1, t))
                .pow(alpha)
                .shift(al * t * t)
        })
        .collect();
    let mut coeffs = vec![LaurentPoly::zero(); ((a + 1) * d) as usize];
    for s in 0..=a {
        // binom(-a-1, s) = (-1)^s binom(a+s, s)
        let int_part = num_traits::pow(binomial(a, s) * binomial(-a - 1, s), alpha as usize);
        for t in 0..d {
            let e = s * d + t;
            let mut c = q_parts[t as usize].scale(&int_part);
            if (al * e) % 2 == 1 {
                c = -c;
            }
            coeffs[e as usize] = c;
        }
    }
    Ok(XPoly::new(coeffs))
}

/// Coefficients `a(1..=N)` of `q·∏_{n≥1}(1-q^(2n))⁴(1-q^(4n))⁴`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaCoefficients {
    limit: usize,
    #[serde(with = "decimal_vec")]
    coeffs: Vec<BigInt>,
}

impl EtaCoefficients {
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// `a(n)` for `1 <= n <= limit`.
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i))
    }

    /// `a(1), ..., a(limit)`.
    pub fn as_slice(&self) -> &[BigInt] {
        &self.coeffs
    }
}

mod decimal_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        crate::arith::parse_decimal_list(&raw).map_err(serde::de::Error::custom)
    }
}

/// Truncated power-series expansion of the eta product up to `q^limit`.
pub fn eta_product_coeffs(limit: usize) -> Result<EtaCoefficients> {
    if limit == 0 {
        return Err(invalid("eta expansion needs N >= 1"));
    }
    // series[i] is the coefficient of q^(i+1); the product itself only needs
    // degrees below `limit`.
    let mut series = vec![BigInt::zero(); limit];
    series[0] = BigInt::one();
    let mut apply = |step: usize| {
        for _ in 0..4 {
            for i in (step..limit).rev() {
                let (lo, hi) = series.split_at_mut(i);
                hi[0] -= &lo[i - step];
            }
        }
    };
    for step in (1..).map(|n| 2 * n).take_while(|&s| s < limit) {
        apply(step);
    }
    for step in (1..).map(|n| 4 * n).take_while(|&s| s < limit) {
        apply(step);
    }
    Ok(EtaCoefficients {
        limit,
        coeffs: series,
    })
}
