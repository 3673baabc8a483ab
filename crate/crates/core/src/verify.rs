//! Executable checks for the congruences and identities about Apéry-type
//! polynomials. Each check returns a [`VerificationReport`] carrying either a
//! failure witness or, for the divisibility results, the quotient.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::apery::{apery_poly, b_poly, eta_product_coeffs, q_apery_poly};
use crate::arith::{divide_laurent, IntPoly, IntXPoly, LaurentPoly, XDivision, XPoly};
use crate::error::{invalid, Error, Result};
use crate::qcomb::{binomial, divisors, is_prime, q_int, q_lucas_difference, CyclotomicCache};

/// Which claim a report is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    /// `Σ (2k+1) A_k^(α)(x)^m ≡ 0 (mod n)`.
    #[serde(rename = "T1E1")]
    T1E1,
    /// `Σ (-1)^k (2k+1) A_k^(α)(x)^m ≡ 0 (mod n)`.
    #[serde(rename = "T1E2")]
    T1E2,
    /// `Σ q^(n-1-k) [2k+1]_q A_k^(α)(x;q)^m ≡ 0 (mod [n]_q)`.
    #[serde(rename = "QT_PLUS")]
    QtPlus,
    /// The alternating sum in `q²` is divisible by the mixed cyclotomic product.
    #[serde(rename = "QT_MINUS")]
    QtMinus,
    #[serde(rename = "QLUCAS")]
    QLucas,
    #[serde(rename = "CYC_LEMMA")]
    CycLemma,
    #[serde(rename = "SUN_FORMULA")]
    SunFormula,
    #[serde(rename = "GUO_ZENG")]
    GuoZeng,
    #[serde(rename = "SUN_DELANNOY")]
    SunDelannoy,
    #[serde(rename = "CANCELLATION")]
    Cancellation,
    #[serde(rename = "B_SYMMETRY")]
    BSymmetry,
    #[serde(rename = "SUPERCONG")]
    Supercong,
    #[serde(rename = "DELANNOY_POWER_CONJ")]
    DelannoyPowerConj,
}

impl TheoremId {
    pub const ALL: [TheoremId; 13] = [
        TheoremId::T1E1,
        TheoremId::T1E2,
        TheoremId::QtPlus,
        TheoremId::QtMinus,
        TheoremId::QLucas,
        TheoremId::CycLemma,
        TheoremId::SunFormula,
        TheoremId::GuoZeng,
        TheoremId::SunDelannoy,
        TheoremId::Cancellation,
        TheoremId::BSymmetry,
        TheoremId::Supercong,
        TheoremId::DelannoyPowerConj,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T1E1 => "T1E1",
            TheoremId::T1E2 => "T1E2",
            TheoremId::QtPlus => "QT_PLUS",
            TheoremId::QtMinus => "QT_MINUS",
            TheoremId::QLucas => "QLUCAS",
            TheoremId::CycLemma => "CYC_LEMMA",
            TheoremId::SunFormula => "SUN_FORMULA",
            TheoremId::GuoZeng => "GUO_ZENG",
            TheoremId::SunDelannoy => "SUN_DELANNOY",
            TheoremId::Cancellation => "CANCELLATION",
            TheoremId::BSymmetry => "B_SYMMETRY",
            TheoremId::Supercong => "SUPERCONG",
            TheoremId::DelannoyPowerConj => "DELANNOY_POWER_CONJ",
        }
    }

    /// Parameter names a report for this claim carries, in canonical order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            TheoremId::T1E1 | TheoremId::T1E2 | TheoremId::QtPlus | TheoremId::QtMinus => {
                &["n", "m", "alpha"]
            }
            TheoremId::QLucas => &["d", "a", "h", "b", "l"],
            TheoremId::CycLemma => &["d"],
            TheoremId::SunFormula | TheoremId::GuoZeng | TheoremId::SunDelannoy => &["n"],
            TheoremId::Cancellation => &["b"],
            TheoremId::BSymmetry => &["a", "d", "b", "alpha"],
            TheoremId::Supercong => &["p"],
            TheoremId::DelannoyPowerConj => &["n", "m"],
        }
    }

    /// Empirical claims report `conjecture_*` statuses instead of `pass`/`fail`.
    pub fn is_conjecture(self) -> bool {
        self == TheoremId::DelannoyPowerConj
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| invalid(format!("unknown theorem id {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    ConjecturePass,
    ConjectureFail,
}

impl Status {
    pub fn is_success(self) -> bool {
        matches!(self, Status::Pass | Status::ConjecturePass)
    }
}

/// An integer carried through JSON as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal(pub BigInt);

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse()
            .map(Decimal)
            .map_err(|_| serde::de::Error::custom(format!("not a decimal integer: {s:?}")))
    }
}

/// The nonzero leftover that witnesses a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Residue {
    Integer(Decimal),
    Laurent(LaurentPoly),
}

impl Residue {
    pub fn is_zero(&self) -> bool {
        match self {
            Residue::Integer(d) => d.0.is_zero(),
            Residue::Laurent(p) => p.is_zero(),
        }
    }
}

impl From<BigInt> for Residue {
    fn from(v: BigInt) -> Self {
        Residue::Integer(Decimal(v))
    }
}

impl From<LaurentPoly> for Residue {
    fn from(v: LaurentPoly) -> Self {
        Residue::Laurent(v)
    }
}

/// Quotient `H` with `sum = divisor · H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quotient {
    Integer(IntXPoly),
    Laurent(XPoly),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Failure {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        x_degree: Option<usize>,
        remainder: Residue,
    },
    Quotient {
        quotient: Quotient,
    },
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Wall-clock cost, filled in by callers that time the check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    fn new(
        theorem: TheoremId,
        params: &[(&str, i64)],
        status: Status,
        witness: Option<Witness>,
    ) -> Self {
        VerificationReport {
            theorem,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            status,
            witness,
            elapsed_ms: None,
        }
    }

    fn success(theorem: TheoremId, params: &[(&str, i64)], quotient: Option<Quotient>) -> Self {
        let status = if theorem.is_conjecture() {
            Status::ConjecturePass
        } else {
            Status::Pass
        };
        Self::new(
            theorem,
            params,
            status,
            quotient.map(|quotient| Witness::Quotient { quotient }),
        )
    }

    fn failure(
        theorem: TheoremId,
        params: &[(&str, i64)],
        x_degree: Option<usize>,
        remainder: Residue,
    ) -> Self {
        debug_assert!(!remainder.is_zero(), "failure witness must be nonzero");
        let status = if theorem.is_conjecture() {
            Status::ConjectureFail
        } else {
            Status::Fail
        };
        Self::new(
            theorem,
            params,
            status,
            Some(Witness::Failure {
                x_degree,
                remainder,
            }),
        )
    }

    pub fn passed(&self) -> bool {
        self.status.is_success()
    }

    pub fn param(&self, name: &str) -> Option<i64> {
        self.params.get(name).copied()
    }

    pub fn quotient(&self) -> Option<&Quotient> {
        match &self.witness {
            Some(Witness::Quotient { quotient }) => Some(quotient),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `sign^k`
    fn power(self, k: u32) -> i64 {
        match self {
            Sign::Minus if k % 2 == 1 => -1,
            _ => 1,
        }
    }

    pub fn theorem(self) -> TheoremId {
        match self {
            Sign::Plus => TheoremId::T1E1,
            Sign::Minus => TheoremId::T1E2,
        }
    }
}

fn require_positive(pairs: &[(&str, u32)]) -> Result<()> {
    match pairs.iter().find(|(_, v)| *v == 0) {
        Some((name, _)) => Err(invalid(format!("{name} must be at least 1"))),
        None => Ok(()),
    }
}

/// First `x`-degree where two integer polynomials differ, with `lhs - rhs` there.
fn first_difference(lhs: &IntXPoly, rhs: &IntXPoly) -> Option<(usize, BigInt)> {
    let len = lhs.coeffs().len().max(rhs.coeffs().len());
    (0..len).find_map(|j| {
        let diff = lhs.coeff(j) - rhs.coeff(j);
        (!diff.is_zero()).then_some((j, diff))
    })
}

fn first_difference_x(lhs: &XPoly, rhs: &XPoly) -> Option<(usize, LaurentPoly)> {
    let len = lhs.coeffs().len().max(rhs.coeffs().len());
    (0..len).find_map(|j| {
        let diff = &lhs.coeff(j) - &rhs.coeff(j);
        (!diff.is_zero()).then_some((j, diff))
    })
}

type Memo<K, V> = Mutex<HashMap<K, Arc<V>>>;

fn memoized<K: Eq + Hash + Copy, V>(
    memo: &Memo<K, V>,
    key: K,
    build: impl FnOnce() -> V,
) -> Arc<V> {
    if let Some(v) = memo.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(build());
    memo.lock().unwrap().entry(key).or_insert(v).clone()
}

/// Runs the checks, sharing cyclotomic polynomials and polynomial powers
/// between calls. Safe to share across worker threads.
#[derive(Debug, Default)]
pub struct Verifier {
    cyclotomic: CyclotomicCache,
    int_powers: Memo<(u32, u32, u32), IntXPoly>,
    q_powers: Memo<(u32, u32, u32), XPoly>,
}

impl Verifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cyclotomic_cache(&self) -> &CyclotomicCache {
        &self.cyclotomic
    }

    /// `A_k^(α)(x)^m`, memoized.
    pub fn apery_power(&self, k: u32, alpha: u32, m: u32) -> Result<Arc<IntXPoly>> {
        require_positive(&[("alpha", alpha)])?;
        Ok(memoized(&self.int_powers, (k, alpha, m), || {
            apery_poly(k, alpha).expect("alpha checked").pow(m)
        }))
    }

    /// `A_k^(α)(x;q)^m`, memoized.
    pub fn q_apery_power(&self, k: u32, alpha: u32, m: u32) -> Result<Arc<XPoly>> {
        require_positive(&[("alpha", alpha)])?;
        Ok(memoized(&self.q_powers, (k, alpha, m), || {
            q_apery_poly(k, alpha).expect("alpha checked").pow(m)
        }))
    }

    /// `S(x) = Σ_{k<n} sign^k (2k+1) A_k^(α)(x)^m`.
    pub fn integer_sum(&self, n: u32, m: u32, alpha: u32, sign: Sign) -> Result<IntXPoly> {
        let mut sum = IntXPoly::zero();
        for k in 0..n {
            let weight = BigInt::from(sign.power(k) * (2 * i64::from(k) + 1));
            sum += &self.apery_power(k, alpha, m)?.scale(&weight);
        }
        Ok(sum)
    }

    /// `T(x,q) = Σ_{k<n} q^(n-1-k) [2k+1]_q A_k^(α)(x;q)^m`.
    pub fn q_sum_plus(&self, n: u32, m: u32, alpha: u32) -> Result<XPoly> {
        let mut sum = XPoly::zero();
        for k in 0..n {
            let weight = q_int(2 * i64::from(k) + 1).shift(i64::from(n - 1 - k));
            sum += &self.q_apery_power(k, alpha, m)?.scale(&weight);
        }
        Ok(sum)
    }

    /// `U(x,q) = Σ_{k<n} (-1)^k q^(n-1-k) [2k+1]_q A_k^(α)(x;q²)^m`.
    pub fn q_sum_minus(&self, n: u32, m: u32, alpha: u32) -> Result<XPoly> {
        let mut sum = XPoly::zero();
        for k in 0..n {
            let mut weight = q_int(2 * i64::from(k) + 1).shift(i64::from(n - 1 - k));
            if k % 2 == 1 {
                weight = -weight;
            }
            sum += &self.q_apery_power(k, alpha, m)?.subst_q2().scale(&weight);
        }
        Ok(sum)
    }

    /// `G_n(q) = ∏_{d | n, d > 1 odd} Φ_d(q) · ∏_{d | n, d even} Φ_{2d}(q)`,
    /// using `Φ_d(q²) = Φ_{2d}(q)` for even `d`.
    pub fn q_sum_minus_divisor(&self, n: u32) -> IntPoly {
        divisors(u64::from(n))
            .into_iter()
            .filter(|&d| d > 1)
            .map(|d| {
                if d % 2 == 1 {
                    self.cyclotomic.get(d)
                } else {
                    self.cyclotomic.get(2 * d)
                }
            })
            .fold(IntPoly::one(), |acc, phi| &acc * &phi)
    }

    /// Integer form: every coefficient of `S` is divisible by `n`. On success
    /// the witness is `S/n`.
    pub fn verify_integer_sum(
        &self,
        n: u32,
        m: u32,
        alpha: u32,
        sign: Sign,
    ) -> Result<VerificationReport> {
        require_positive(&[("n", n), ("m", m), ("alpha", alpha)])?;
        let params = [
            ("n", i64::from(n)),
            ("m", i64::from(m)),
            ("alpha", i64::from(alpha)),
        ];
        let theorem = sign.theorem();
        let sum = self.integer_sum(n, m, alpha, sign)?;
        let n_big = BigInt::from(n);
        Ok(match sum.first_nondivisible(&n_big) {
            Some((j, r)) => VerificationReport::failure(theorem, &params, Some(j), r.into()),
            None => {
                let quotient = sum.div_exact(&n_big).expect("divisibility checked");
                VerificationReport::success(theorem, &params, Some(Quotient::Integer(quotient)))
            }
        })
    }

    fn q_divisibility_report(
        &self,
        theorem: TheoremId,
        (n, m, alpha): (u32, u32, u32),
        sum: &XPoly,
        divisor: &IntPoly,
        sign: Sign,
    ) -> Result<VerificationReport> {
        let params = [
            ("n", i64::from(n)),
            ("m", i64::from(m)),
            ("alpha", i64::from(alpha)),
        ];
        let quotient = match sum.divide(divisor)? {
            XDivision::Inexact {
                x_degree,
                remainder,
            } => {
                return Ok(VerificationReport::failure(
                    theorem,
                    &params,
                    Some(x_degree),
                    remainder.into_laurent().into(),
                ))
            }
            XDivision::Exact(h) => h,
        };
        // At q = 1 the divisor specializes to n, so n·H(x,1) must reproduce
        // the integer sum.
        let bridged = quotient.eval_one().scale(&BigInt::from(n));
        let integer = self.integer_sum(n, m, alpha, sign)?;
        if let Some((j, diff)) = first_difference(&bridged, &integer) {
            return Ok(VerificationReport::failure(
                theorem,
                &params,
                Some(j),
                diff.into(),
            ));
        }
        Ok(VerificationReport::success(
            theorem,
            &params,
            Some(Quotient::Laurent(quotient)),
        ))
    }

    /// `T(x,q)` is divisible by `[n]_q`; the witness is the quotient `H(x,q)`.
    pub fn verify_q_sum_plus(&self, n: u32, m: u32, alpha: u32) -> Result<VerificationReport> {
        require_positive(&[("n", n), ("m", m), ("alpha", alpha)])?;
        let sum = self.q_sum_plus(n, m, alpha)?;
        let divisor = IntPoly::new(q_int(i64::from(n)))?;
        self.q_divisibility_report(TheoremId::QtPlus, (n, m, alpha), &sum, &divisor, Sign::Plus)
    }

    /// `U(x,q)` is divisible by `G_n(q)`; the witness is the quotient.
    pub fn verify_q_sum_minus(&self, n: u32, m: u32, alpha: u32) -> Result<VerificationReport> {
        require_positive(&[("n", n), ("m", m), ("alpha", alpha)])?;
        let sum = self.q_sum_minus(n, m, alpha)?;
        let divisor = self.q_sum_minus_divisor(n);
        self.q_divisibility_report(
            TheoremId::QtMinus,
            (n, m, alpha),
            &sum,
            &divisor,
            Sign::Minus,
        )
    }

    /// q-Lucas congruence for one parameter tuple.
    pub fn verify_q_lucas(
        &self,
        a: i64,
        b: i64,
        h: i64,
        l: i64,
        d: i64,
    ) -> Result<VerificationReport> {
        let params = [("d", d), ("a", a), ("h", h), ("b", b), ("l", l)];
        let diff = q_lucas_difference(a, b, h, l, d)?;
        let div = divide_laurent(&diff, &self.cyclotomic.get(d as u64))?;
        Ok(if div.is_exact() {
            VerificationReport::success(TheoremId::QLucas, &params, None)
        } else {
            VerificationReport::failure(
                TheoremId::QLucas,
                &params,
                None,
                div.remainder.into_laurent().into(),
            )
        })
    }

    /// The cyclotomic lemma for one `d >= 2`.
    pub fn verify_cyclotomic_lemma(&self, d: u32) -> Result<VerificationReport> {
        if d < 2 {
            return Err(invalid(format!("cyclotomic lemma needs d >= 2, got {d}")));
        }
        let params = [("d", i64::from(d))];
        let theorem = TheoremId::CycLemma;
        let d = u64::from(d);
        let phi = self.cyclotomic.get(d);
        let phi_sq = phi.as_laurent().subst_q2();
        if d % 2 == 1 {
            let div = divide_laurent(&phi_sq, &phi)?;
            if !div.is_exact() {
                return Ok(VerificationReport::failure(
                    theorem,
                    &params,
                    None,
                    div.remainder.into_laurent().into(),
                ));
            }
            return Ok(VerificationReport::success(theorem, &params, None));
        }
        let phi_2d = self.cyclotomic.get(2 * d);
        let gap = &phi_sq - phi_2d.as_laurent();
        if !gap.is_zero() {
            return Ok(VerificationReport::failure(
                theorem,
                &params,
                None,
                gap.into(),
            ));
        }
        let q_d_plus_one = &LaurentPoly::monomial(1, d as i64) + &LaurentPoly::one();
        let div = divide_laurent(&q_d_plus_one, &phi_2d)?;
        if !div.is_exact() {
            return Ok(VerificationReport::failure(
                theorem,
                &params,
                None,
                div.remainder.into_laurent().into(),
            ));
        }
        Ok(VerificationReport::success(theorem, &params, None))
    }

    fn closed_form_report(
        theorem: TheoremId,
        n: u32,
        sum: &IntXPoly,
        closed: &IntXPoly,
    ) -> VerificationReport {
        let params = [("n", i64::from(n))];
        let n_big = BigInt::from(n);
        if let Some((j, r)) = sum.first_nondivisible(&n_big) {
            return VerificationReport::failure(theorem, &params, Some(j), r.into());
        }
        let lhs = sum.div_exact(&n_big).expect("divisibility checked");
        match first_difference(&lhs, closed) {
            Some((j, diff)) => VerificationReport::failure(theorem, &params, Some(j), diff.into()),
            None => VerificationReport::success(theorem, &params, None),
        }
    }

    /// `(1/n) Σ (2k+1) A_k(x) = Σ_k binom(n-1,k) binom(n+k,k) binom(n+k,2k+1) binom(2k,k) x^k`.
    pub fn verify_sun_formula(&self, n: u32) -> Result<VerificationReport> {
        require_positive(&[("n", n)])?;
        let sum = self.integer_sum(n, 1, 2, Sign::Plus)?;
        let n = i64::from(n);
        let closed = IntXPoly::new(
            (0..n)
                .map(|k| {
                    binomial(n - 1, k)
                        * binomial(n + k, k)
                        * binomial(n + k, 2 * k + 1)
                        * binomial(2 * k, k)
                })
                .collect(),
        );
        Ok(Self::closed_form_report(
            TheoremId::SunFormula,
            n as u32,
            &sum,
            &closed,
        ))
    }

    /// `(1/n) Σ (-1)^k (2k+1) A_k(x) = (-1)^(n-1) Σ_k binom(2k,k) x^k
    ///  Σ_j binom(k,j) binom(k+j,j) binom(n-1,k+j) binom(n+k+j,k+j)`.
    pub fn verify_guo_zeng(&self, n: u32) -> Result<VerificationReport> {
        require_positive(&[("n", n)])?;
        let sum = self.integer_sum(n, 1, 2, Sign::Minus)?;
        let n = i64::from(n);
        let sign = if n % 2 == 1 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let closed = IntXPoly::new(
            (0..n)
                .map(|k| {
                    let inner: BigInt = (0..=k)
                        .map(|j| {
                            binomial(k, j)
                                * binomial(k + j, j)
                                * binomial(n - 1, k + j)
                                * binomial(n + k + j, k + j)
                        })
                        .sum();
                    &sign * binomial(2 * k, k) * inner
                })
                .collect(),
        );
        Ok(Self::closed_form_report(
            TheoremId::GuoZeng,
            n as u32,
            &sum,
            &closed,
        ))
    }

    /// `(1/n) Σ (2k+1) D_k(x) = Σ_k binom(n,k+1) binom(n+k,k) x^k`.
    pub fn verify_sun_delannoy(&self, n: u32) -> Result<VerificationReport> {
        require_positive(&[("n", n)])?;
        let sum = self.integer_sum(n, 1, 1, Sign::Plus)?;
        let n = i64::from(n);
        let closed = IntXPoly::new(
            (0..n)
                .map(|k| binomial(n, k + 1) * binomial(n + k, k))
                .collect(),
        );
        Ok(Self::closed_form_report(
            TheoremId::SunDelannoy,
            n as u32,
            &sum,
            &closed,
        ))
    }

    /// `q^(-1-b) [2b+1]_q + q^b [-2b-1]_q = 0`.
    pub fn verify_cancellation(&self, b: u32) -> Result<VerificationReport> {
        let params = [("b", i64::from(b))];
        let b = i64::from(b);
        let total = &q_int(2 * b + 1).shift(-1 - b) + &q_int(-2 * b - 1).shift(b);
        Ok(if total.is_zero() {
            VerificationReport::success(TheoremId::Cancellation, &params, None)
        } else {
            VerificationReport::failure(TheoremId::Cancellation, &params, None, total.into())
        })
    }

    /// `B_(a,b,d)^(α)(x;q) = B_(a,d-b-1,d)^(α)(x;q)`.
    pub fn verify_b_symmetry(
        &self,
        a: u32,
        b: u32,
        d: u32,
        alpha: u32,
    ) -> Result<VerificationReport> {
        let params = [
            ("a", i64::from(a)),
            ("d", i64::from(d)),
            ("b", i64::from(b)),
            ("alpha", i64::from(alpha)),
        ];
        let lhs = b_poly(a, b, d, alpha)?;
        let rhs = b_poly(a, d - 1 - b, d, alpha)?;
        Ok(match first_difference_x(&lhs, &rhs) {
            Some((j, diff)) => {
                VerificationReport::failure(TheoremId::BSymmetry, &params, Some(j), diff.into())
            }
            None => VerificationReport::success(TheoremId::BSymmetry, &params, None),
        })
    }

    /// `A_((p-1)/2) ≡ a(p) (mod p²)` for an odd prime `p`.
    pub fn verify_supercongruence(&self, p: u32) -> Result<VerificationReport> {
        if p == 2 || !is_prime(u64::from(p)) {
            return Err(invalid(format!("{p} is not an odd prime")));
        }
        let params = [("p", i64::from(p))];
        let apery_number = apery_poly((p - 1) / 2, 2)?.eval_one();
        let eta = eta_product_coeffs(p as usize)?;
        let a_p = eta.get(p as usize).expect("limit is p");
        let modulus = BigInt::from(p) * BigInt::from(p);
        let r = num_integer::Integer::mod_floor(&(apery_number - a_p), &modulus);
        Ok(if r.is_zero() {
            VerificationReport::success(TheoremId::Supercong, &params, None)
        } else {
            VerificationReport::failure(TheoremId::Supercong, &params, None, r.into())
        })
    }

    /// Empirical check that `n` divides `Σ_{k<n} (2k+1) D_k(x)^m`. A
    /// counterexample is reported as `conjecture_fail`, never as an error.
    pub fn explore_delannoy_power(&self, n: u32, m: u32) -> Result<VerificationReport> {
        require_positive(&[("n", n), ("m", m)])?;
        let params = [("n", i64::from(n)), ("m", i64::from(m))];
        let sum = self.integer_sum(n, m, 1, Sign::Plus)?;
        Ok(match sum.first_nondivisible(&BigInt::from(n)) {
            Some((j, r)) => VerificationReport::failure(
                TheoremId::DelannoyPowerConj,
                &params,
                Some(j),
                r.into(),
            ),
            None => VerificationReport::success(TheoremId::DelannoyPowerConj, &params, None),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(offset: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(offset, c)
    }

    #[test]
    fn integer_sum_constant_term_is_n_squared() {
        let v = Verifier::new();
        for n in 1..12 {
            let s = v.integer_sum(n, 2, 3, Sign::Plus).unwrap();
            assert_eq!(s.coeff(0), BigInt::from(n * n));
        }
    }

    #[test]
    fn integer_sum_hand_example() {
        // n = 3, m = 2, α = 2: x-coefficient is 3·2·4 + 5·2·36 = 384
        let v = Verifier::new();
        let s = v.integer_sum(3, 2, 2, Sign::Plus).unwrap();
        assert_eq!(s.coeff(1), BigInt::from(384));
        let r = v.verify_integer_sum(3, 2, 2, Sign::Plus).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.theorem, TheoremId::T1E1);
        match r.quotient() {
            Some(Quotient::Integer(h)) => assert_eq!(h.coeff(1), BigInt::from(128)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_parameters_are_rejected() {
        let v = Verifier::new();
        assert!(v.verify_integer_sum(0, 1, 1, Sign::Plus).is_err());
        assert!(v.verify_q_sum_plus(3, 0, 1).is_err());
        assert!(v.verify_q_sum_minus(3, 1, 0).is_err());
        assert!(v.verify_sun_formula(0).is_err());
        assert!(v.explore_delannoy_power(2, 0).is_err());
    }

    #[test]
    fn q_sum_plus_n1_is_vacuous() {
        let v = Verifier::new();
        let r = v.verify_q_sum_plus(1, 3, 2).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.quotient(), Some(&Quotient::Laurent(XPoly::one())));
    }

    #[test]
    fn q_sum_plus_n2_hand_factorization() {
        // T = q + [3]_q (1 + (q^-1 + 1)x) = (1+q)·[(1+q) + q^-1(1+q+q²)x]
        let v = Verifier::new();
        let t = v.q_sum_plus(2, 1, 1).unwrap();
        assert_eq!(
            t,
            XPoly::new(vec![lp(0, &[1, 2, 1]), lp(-1, &[1, 2, 2, 1])])
        );
        let r = v.verify_q_sum_plus(2, 1, 1).unwrap();
        assert_eq!(r.status, Status::Pass);
        let h = XPoly::new(vec![lp(0, &[1, 1]), lp(-1, &[1, 1, 1])]);
        assert_eq!(r.quotient(), Some(&Quotient::Laurent(h)));
    }

    #[test]
    fn q_sum_minus_small_cases() {
        let v = Verifier::new();
        assert_eq!(v.q_sum_minus_divisor(1), IntPoly::one());
        assert_eq!(v.q_sum_minus_divisor(2), IntPoly::from_i64s(&[1, 0, 1]));
        assert_eq!(v.verify_q_sum_minus(1, 1, 1).unwrap().status, Status::Pass);
        // U = q - [3]_q (1 + (q^-2 + 1)x)
        let u = v.q_sum_minus(2, 1, 1).unwrap();
        assert_eq!(
            u,
            XPoly::new(vec![lp(0, &[-1, 0, -1]), lp(-2, &[-1, -1, -2, -1, -1])])
        );
        assert_eq!(v.verify_q_sum_minus(2, 1, 1).unwrap().status, Status::Pass);
    }

    #[test]
    fn divisor_specializes_to_n() {
        let v = Verifier::new();
        for n in 1..40 {
            assert_eq!(
                v.q_sum_minus_divisor(n).as_laurent().eval_one(),
                BigInt::from(n)
            );
        }
    }

    #[test]
    fn closed_forms_small_n() {
        let v = Verifier::new();
        for n in 1..=3 {
            assert!(v.verify_sun_formula(n).unwrap().passed());
            assert!(v.verify_guo_zeng(n).unwrap().passed());
            assert!(v.verify_sun_delannoy(n).unwrap().passed());
        }
    }

    #[test]
    fn closed_form_mismatch_reports_difference() {
        let sum = IntXPoly::from_i64s(&[4, 12]);
        let closed = IntXPoly::from_i64s(&[2, 5]);
        let r = Verifier::closed_form_report(TheoremId::SunFormula, 2, &sum, &closed);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(
            r.witness,
            Some(Witness::Failure {
                x_degree: Some(1),
                remainder: BigInt::from(1).into()
            })
        );
        let odd = IntXPoly::from_i64s(&[4, 13]);
        let r = Verifier::closed_form_report(TheoremId::SunFormula, 2, &odd, &closed);
        assert_eq!(
            r.witness,
            Some(Witness::Failure {
                x_degree: Some(1),
                remainder: BigInt::from(1).into()
            })
        );
    }

    #[test]
    fn cancellation_and_symmetry_small() {
        let v = Verifier::new();
        for b in 0..4 {
            assert!(v.verify_cancellation(b).unwrap().passed());
        }
        assert!(v.verify_b_symmetry(1, 0, 2, 1).unwrap().passed());
        assert!(v.verify_b_symmetry(2, 2, 5, 2).unwrap().passed());
        assert!(v.verify_b_symmetry(0, 3, 3, 1).is_err());
    }

    #[test]
    fn supercongruence_small_primes() {
        let v = Verifier::new();
        assert!(v.verify_supercongruence(3).unwrap().passed());
        assert!(v.verify_supercongruence(5).unwrap().passed());
        assert!(v.verify_supercongruence(2).is_err());
        assert!(v.verify_supercongruence(9).is_err());
    }

    #[test]
    fn delannoy_power_hand_example() {
        // 1 + 3(1+2x)² = 4 + 12x + 12x²
        let v = Verifier::new();
        assert_eq!(
            v.integer_sum(2, 2, 1, Sign::Plus).unwrap(),
            IntXPoly::from_i64s(&[4, 12, 12])
        );
        assert_eq!(
            v.explore_delannoy_power(2, 2).unwrap().status,
            Status::ConjecturePass
        );
    }

    #[test]
    fn failure_status_for_conjectures() {
        let r = VerificationReport::failure(
            TheoremId::DelannoyPowerConj,
            &[("n", 3), ("m", 1)],
            Some(0),
            BigInt::from(1).into(),
        );
        assert_eq!(r.status, Status::ConjectureFail);
        assert!(!r.passed());
    }

    #[test]
    fn lucas_and_lemma_reports() {
        let v = Verifier::new();
        let r = v.verify_q_lucas(2, 1, 1, 1, 3).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(
            r.params.keys().collect::<Vec<_>>(),
            vec!["a", "b", "d", "h", "l"]
        );
        assert!(v.verify_cyclotomic_lemma(3).unwrap().passed());
        assert!(v.verify_cyclotomic_lemma(2).unwrap().passed());
        assert!(v.verify_cyclotomic_lemma(1).is_err());
    }

    #[test]
    fn report_json_shape() {
        let v = Verifier::new();
        let r = v.verify_cancellation(1).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"theorem":"CANCELLATION","params":{"b":1},"status":"pass"}"#
        );
        let fail = VerificationReport::failure(
            TheoremId::T1E2,
            &[("n", 4), ("m", 1), ("alpha", 1)],
            Some(2),
            BigInt::from(3).into(),
        );
        let json = serde_json::to_string(&fail).unwrap();
        assert_eq!(
            json,
            r#"{"theorem":"T1E2","params":{"alpha":1,"m":1,"n":4},"status":"fail","witness":{"kind":"failure","x_degree":2,"remainder":"3"}}"#
        );
        assert_eq!(
            serde_json::from_str::<VerificationReport>(&json).unwrap(),
            fail
        );
        let q = v.verify_q_sum_plus(2, 1, 1).unwrap();
        let back: VerificationReport =
            serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn theorem_ids_parse() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
            assert_eq!(
                serde_json::to_string(&t).unwrap(),
                format!("\"{}\"", t.as_str())
            );
        }
        assert_eq!("qt_plus".parse::<TheoremId>().unwrap(), TheoremId::QtPlus);
        assert!("T3".parse::<TheoremId>().is_err());
    }
}
