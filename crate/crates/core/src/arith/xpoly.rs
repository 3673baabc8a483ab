//! Polynomials in `x`, over Laurent polynomials in `q` ([`XPoly`]) and over
//! the integers ([`IntXPoly`]).

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::kernel;
use super::laurent::{divide_laurent, parse_decimal_list, IntPoly, LaurentPoly};
use crate::error::Result;

/// A polynomial in `x` whose coefficients are Laurent polynomials in `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct XPoly {
    #[serde(deserialize_with = "trimmed_laurent")]
    coeffs: Vec<LaurentPoly>,
}

fn trimmed_laurent<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<Vec<LaurentPoly>, D::Error> {
    let mut v = Vec::<LaurentPoly>::deserialize(d)?;
    trim(&mut v, LaurentPoly::is_zero);
    Ok(v)
}

fn trim<T>(v: &mut Vec<T>, is_zero: impl Fn(&T) -> bool) {
    while v.last().is_some_and(&is_zero) {
        v.pop();
    }
}

/// Outcome of testing an [`XPoly`] for divisibility by a `q`-polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XDivision {
    /// `p = divisor · quotient` exactly.
    Exact(XPoly),
    /// The first `x`-degree whose coefficient is not divisible, with the
    /// remainder left after clearing negative exponents.
    Inexact { x_degree: usize, remainder: IntPoly },
}

impl XPoly {
    pub fn new(mut coeffs: Vec<LaurentPoly>) -> Self {
        trim(&mut coeffs, LaurentPoly::is_zero);
        XPoly { coeffs }
    }

    pub fn zero() -> Self {
        XPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(LaurentPoly::one())
    }

    pub fn constant(c: LaurentPoly) -> Self {
        Self::new(vec![c])
    }

    /// The single term `c·x^j`.
    pub fn monomial(c: LaurentPoly, j: usize) -> Self {
        let mut coeffs = vec![LaurentPoly::zero(); j + 1];
        coeffs[j] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> LaurentPoly {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `q^e`.
    pub fn shift_q(&self, e: i64) -> Self {
        XPoly {
            coeffs: self.coeffs.iter().map(|a| a.clone().shift(e)).collect(),
        }
    }

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

    /// Substitutes `q -> q^2` in every coefficient.
    pub fn subst_q2(&self) -> Self {
        XPoly {
            coeffs: self.coeffs.iter().map(LaurentPoly::subst_q2).collect(),
        }
    }

    /// Specializes `q = 1`.
    pub fn eval_one(&self) -> IntXPoly {
        IntXPoly::new(self.coeffs.iter().map(LaurentPoly::eval_one).collect())
    }

    /// Divides coefficient-wise by `g`, stopping at the first inexact `x`-degree.
    pub fn divide(&self, g: &IntPoly) -> Result<XDivision> {
        let mut quotient = Vec::with_capacity(self.coeffs.len());
        for (j, c) in self.coeffs.iter().enumerate() {
            let div = divide_laurent(c, g)?;
            if !div.is_exact() {
                return Ok(XDivision::Inexact {
                    x_degree: j,
                    remainder: div.remainder,
                });
            }
            quotient.push(div.quotient);
        }
        Ok(XDivision::Exact(XPoly::new(quotient)))
    }

    /// True iff every `x`-coefficient is divisible by `g`.
    pub fn is_divisible(&self, g: &IntPoly) -> Result<bool> {
        Ok(matches!(self.divide(g)?, XDivision::Exact(_)))
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add<&XPoly> for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&XPoly> for XPoly {
    fn add_assign(&mut self, rhs: &XPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), LaurentPoly::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        trim(&mut self.coeffs, LaurentPoly::is_zero);
    }
}

impl Sub<&XPoly> for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        self + &(-rhs)
    }
}

impl Mul<&XPoly> for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            // Gather the pairs contributing to x^k and accumulate them into a
            // single dense buffer spanning their joint exponent range.
            let lo_i = k.saturating_sub(rhs.coeffs.len() - 1);
            let hi_i = k.min(self.coeffs.len() - 1);
            let pairs: Vec<(&LaurentPoly, &LaurentPoly)> = (lo_i..=hi_i)
                .map(|i| (&self.coeffs[i], &rhs.coeffs[k - i]))
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .collect();
            let Some(lo) = pairs.iter().map(|(a, b)| a.offset() + b.offset()).min() else {
                out.push(LaurentPoly::zero());
                continue;
            };
            let hi = pairs
                .iter()
                .map(|(a, b)| {
                    a.offset() + b.offset() + (a.coeffs().len() + b.coeffs().len()) as i64 - 2
                })
                .max()
                .unwrap();
            let mut acc = vec![BigInt::zero(); (hi - lo + 1) as usize];
            for (a, b) in pairs {
                let start = (a.offset() + b.offset() - lo) as usize;
                kernel::convolve_into(&mut acc, start, a.coeffs(), b.coeffs());
            }
            out.push(LaurentPoly::new(lo, acc));
        }
        XPoly::new(out)
    }
}

impl From<LaurentPoly> for XPoly {
    fn from(c: LaurentPoly) -> Self {
        XPoly::constant(c)
    }
}

/// A polynomial in `x` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntXPoly {
    coeffs: Vec<BigInt>,
}

impl IntXPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs, BigInt::is_zero);
        IntXPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntXPoly::default()
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

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

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// First `x`-degree whose coefficient is not divisible by `n`, with the
    /// (nonzero) remainder.
    pub fn first_nondivisible(&self, n: &BigInt) -> Option<(usize, BigInt)> {
        self.coeffs.iter().enumerate().find_map(|(j, c)| {
            let r = c.mod_floor(n);
            (!r.is_zero()).then_some((j, r))
        })
    }

    /// `self / n` if `n` divides every coefficient.
    pub fn div_exact(&self, n: &BigInt) -> Option<IntXPoly> {
        if self.first_nondivisible(n).is_some() {
            return None;
        }
        Some(IntXPoly::new(self.coeffs.iter().map(|c| c / n).collect()))
    }
}

impl Add<&IntXPoly> for &IntXPoly {
    type Output = IntXPoly;
    fn add(self, rhs: &IntXPoly) -> IntXPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&IntXPoly> for IntXPoly {
    fn add_assign(&mut self, rhs: &IntXPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        trim(&mut self.coeffs, BigInt::is_zero);
    }
}

impl Neg for &IntXPoly {
    type Output = IntXPoly;
    fn neg(self) -> IntXPoly {
        IntXPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub<&IntXPoly> for &IntXPoly {
    type Output = IntXPoly;
    fn sub(self, rhs: &IntXPoly) -> IntXPoly {
        self + &(-rhs)
    }
}

impl Mul<&IntXPoly> for &IntXPoly {
    type Output = IntXPoly;
    fn mul(self, rhs: &IntXPoly) -> IntXPoly {
        IntXPoly::new(kernel::convolve(&self.coeffs, &rhs.coeffs))
    }
}

#[derive(Serialize, Deserialize)]
struct IntXRepr {
    coeffs: Vec<String>,
}

impl Serialize for IntXPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IntXRepr {
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntXPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = IntXRepr::deserialize(d)?;
        let coeffs = parse_decimal_list(&repr.coeffs).map_err(serde::de::Error::custom)?;
        Ok(IntXPoly::new(coeffs))
    }
}
