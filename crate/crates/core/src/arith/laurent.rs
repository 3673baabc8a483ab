//! Laurent polynomials in `q` with arbitrary-precision integer coefficients.
//!
//! Values are stored densely: `coeffs[i]` multiplies `q^(offset + i)`. The
//! representation is canonical, so structural equality is value equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::kernel;
use crate::error::{Error, Result};

/// A finite sum of terms `c·q^e` with `e` possibly negative.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    offset: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    /// Builds a polynomial from a dense coefficient run starting at `q^offset`.
    pub fn new(offset: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { offset, coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(offset: i64, coeffs: &[i64]) -> Self {
        Self::new(offset, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(0, vec![c.into()])
    }

    /// The single term `c·q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        Self::new(e, vec![c.into()])
    }

    /// The variable `q` itself.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    fn normalize(&mut self) {
        let Some(last) = self.coeffs.iter().rposition(|c| !c.is_zero()) else {
            self.coeffs.clear();
            self.offset = 0;
            return;
        };
        self.coeffs.truncate(last + 1);
        let first = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if first > 0 {
            self.coeffs.drain(..first);
            self.offset += first as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.offset == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent carrying a nonzero coefficient (0 for the zero polynomial).
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Lowest and highest exponents, or `None` for zero.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            None
        } else {
            Some((self.offset, self.offset + self.coeffs.len() as i64 - 1))
        }
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: i64) -> BigInt {
        let i = e - self.offset;
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    /// Multiplies by `q^e`.
    pub fn shift(mut self, e: i64) -> Self {
        if !self.is_zero() {
            self.offset += e;
        }
        self
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `self^e` by repeated squaring; `f^0 = 1` for every `f`, zero included.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitutes `q -> q^2`.
    pub fn subst_q2(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); 2 * self.coeffs.len() - 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        LaurentPoly {
            offset: 2 * self.offset,
            coeffs,
        }
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    fn add_scaled(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate {
                -other.clone()
            } else {
                other.clone()
            };
        }
        let (lo_a, hi_a) = self.exponent_range().unwrap();
        let (lo_b, hi_b) = other.exponent_range().unwrap();
        let lo = lo_a.min(lo_b);
        let hi = hi_a.max(hi_b);
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        let start_a = (lo_a - lo) as usize;
        for (slot, c) in coeffs[start_a..].iter_mut().zip(&self.coeffs) {
            *slot = c.clone();
        }
        let start_b = (lo_b - lo) as usize;
        for (slot, c) in coeffs[start_b..].iter_mut().zip(&other.coeffs) {
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::new(lo, coeffs)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.offset + i as i64;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_scaled(rhs, false)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_scaled(rhs, true)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::new(
            self.offset + rhs.offset,
            kernel::convolve(&self.coeffs, &rhs.coeffs),
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_scaled(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_scaled(rhs, true);
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        LaurentPoly::constant(c)
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    offset: i64,
    coeffs: Vec<String>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentRepr {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = LaurentRepr::deserialize(d)?;
        let coeffs = parse_decimal_list(&repr.coeffs).map_err(serde::de::Error::custom)?;
        Ok(LaurentPoly::new(repr.offset, coeffs))
    }
}

pub(crate) fn parse_decimal_list(items: &[String]) -> Result<Vec<BigInt>> {
    items
        .iter()
        .map(|s| {
            s.parse::<BigInt>()
                .map_err(|_| Error::Malformed(format!("not a decimal integer: {s:?}")))
        })
        .collect()
}

/// An ordinary polynomial in `ℤ[q]`: a [`LaurentPoly`] with no negative exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct IntPoly(LaurentPoly);

impl IntPoly {
    pub fn new(p: LaurentPoly) -> Result<Self> {
        if p.offset < 0 {
            return Err(Error::NegativeOffset(p.offset));
        }
        Ok(IntPoly(p))
    }

    /// Coefficients listed from `q^0` upward.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        IntPoly(LaurentPoly::new(0, coeffs))
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly(LaurentPoly::from_i64s(0, coeffs))
    }

    pub fn one() -> Self {
        IntPoly(LaurentPoly::one())
    }

    pub fn as_laurent(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_laurent(self) -> LaurentPoly {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.exponent_range().map(|(_, hi)| hi as usize)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.0.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.0.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    /// Dense coefficients from `q^0` through the degree.
    pub fn dense(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.0.offset as usize];
        out.extend(self.0.coeffs.iter().cloned());
        out
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.0)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly(&self.0 * &rhs.0)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        IntPoly::new(LaurentPoly::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

fn check_monic_divisor(g: &IntPoly) -> Result<usize> {
    let deg = g.degree().ok_or(Error::ConstantDivisor)?;
    if deg == 0 {
        return Err(Error::ConstantDivisor);
    }
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(deg)
}

/// Long division by a monic divisor of positive degree: `f = quot·g + rem`
/// with `deg rem < deg g`.
pub fn divrem_monic(f: &IntPoly, g: &IntPoly) -> Result<(IntPoly, IntPoly)> {
    let dg = check_monic_divisor(g)?;
    let mut rem = f.dense();
    if rem.len() <= dg {
        return Ok((IntPoly::default(), f.clone()));
    }
    let divisor = g.dense();
    // Cyclotomic and q-integer divisors have tiny coefficients; avoid
    // big-integer multiplications for them.
    let small: Vec<Option<i8>> = divisor[..dg]
        .iter()
        .map(|c| i8::try_from(c).ok().filter(|v| (-1..=1).contains(v)))
        .collect();
    let mut quot = vec![BigInt::zero(); rem.len() - dg];
    for i in (dg..rem.len()).rev() {
        let c = std::mem::take(&mut rem[i]);
        if c.is_zero() {
            continue;
        }
        let base = i - dg;
        for (j, gj) in divisor[..dg].iter().enumerate() {
            match small[j] {
                Some(0) => {}
                Some(1) => rem[base + j] -= &c,
                Some(-1) => rem[base + j] += &c,
                _ => rem[base + j] -= &c * gj,
            }
        }
        quot[base] = c;
    }
    rem.truncate(dg);
    Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
}

/// Result of dividing a Laurent polynomial by a monic divisor with unit
/// constant-term behaviour: `q^clear·f = divisor·(q^clear·quotient) + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentDivision {
    pub quotient: LaurentPoly,
    pub remainder: IntPoly,
    pub clear: i64,
}

impl LaurentDivision {
    pub fn is_exact(&self) -> bool {
        self.remainder.is_zero()
    }
}

fn check_laurent_divisor(g: &IntPoly) -> Result<()> {
    if g.is_zero() || g.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(())
}

/// Divides a Laurent polynomial by `g` after clearing negative exponents.
///
/// Requires `g` monic with `g(0) != 0`, so `q` is a unit modulo `g` and the
/// remainder is zero exactly when `g` divides `f` in `ℤ[q, q⁻¹]`. A constant
/// divisor (necessarily `1`) divides everything.
pub fn divide_laurent(f: &LaurentPoly, g: &IntPoly) -> Result<LaurentDivision> {
    check_laurent_divisor(g)?;
    if g.degree() == Some(0) {
        return Ok(LaurentDivision {
            quotient: f.clone(),
            remainder: IntPoly::default(),
            clear: 0,
        });
    }
    let clear = (-f.offset).max(0);
    let cleared = IntPoly::new(f.clone().shift(clear))?;
    let (quot, rem) = divrem_monic(&cleared, g)?;
    Ok(LaurentDivision {
        quotient: quot.into_laurent().shift(-clear),
        remainder: rem,
        clear,
    })
}

/// True iff `f = g·h` for some Laurent polynomial `h` with integer coefficients.
pub fn is_divisible(f: &LaurentPoly, g: &IntPoly) -> Result<bool> {
    if f.is_zero() {
        check_laurent_divisor(g)?;
        return Ok(true);
    }
    Ok(divide_laurent(f, g)?.is_exact())
}
