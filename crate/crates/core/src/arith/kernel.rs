//! Dense convolution over big-integer coefficient slices.
//!
//! When both operands fit in machine words and the worst-case accumulated
//! sum fits in an `i128`, the product is computed natively and converted
//! once. Otherwise coefficients are split into signed 32-bit limbs and every
//! pair of limb planes is convolved with `i128` accumulators; the planes are
//! recombined into `BigInt`s at the end. Both paths are schoolbook.

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

/// Returns `Some(values)` if every coefficient fits in an `i64`.
fn as_small(coeffs: &[BigInt]) -> Option<Vec<i64>> {
    coeffs.iter().map(|c| c.to_i64()).collect()
}

fn max_bits(values: &[i64]) -> u32 {
    values
        .iter()
        .map(|v| 64 - v.unsigned_abs().leading_zeros())
        .max()
        .unwrap_or(0)
}

fn ceil_log2(n: usize) -> u32 {
    usize::BITS - n.saturating_sub(1).leading_zeros()
}

/// Native path, if the bound `|a|·|b|·min(len)` stays below `2^126`.
fn convolve_small(a: &[BigInt], b: &[BigInt]) -> Option<Vec<i128>> {
    let a = as_small(a)?;
    let b = as_small(b)?;
    let bound = max_bits(&a) + max_bits(&b) + ceil_log2(a.len().min(b.len()));
    if bound > 126 {
        return None;
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as i128;
        for (o, &y) in out[i..].iter_mut().zip(b.iter()) {
            *o += x * y as i128;
        }
    }
    Some(out)
}

/// Adds the convolution of `a` and `b` into `out`, starting at index `start`.
///
/// `out` must have room for `start + a.len() + b.len() - 1` entries.
pub(crate) fn convolve_into(out: &mut [BigInt], start: usize, a: &[BigInt], b: &[BigInt]) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    if let Some(small) = convolve_small(a, b) {
        for (o, v) in out[start..].iter_mut().zip(small) {
            if v != 0 {
                *o += v;
            }
        }
        return;
    }
    if let Some(limbed) = convolve_limbs(a, b) {
        for (o, v) in out[start..].iter_mut().zip(limbed) {
            if !v.is_zero() {
                *o += v;
            }
        }
        return;
    }
    convolve_bigint(&mut out[start..], a, b);
}

fn convolve_bigint(out: &mut [BigInt], a: &[BigInt], b: &[BigInt]) {
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out[i..].iter_mut().zip(b.iter()) {
            if !y.is_zero() {
                *o += x * y;
            }
        }
    }
}

const LIMB_BITS: u32 = 32;

/// Splits every coefficient into `limbs` signed base-2^32 digits, all
/// carrying the sign of the coefficient. Plane `t` holds digit `t`.
fn limb_planes(coeffs: &[BigInt], limbs: usize) -> Vec<Vec<i64>> {
    let mut planes = vec![vec![0i64; coeffs.len()]; limbs];
    for (i, c) in coeffs.iter().enumerate() {
        let negative = c.sign() == Sign::Minus;
        for (t, digit) in c.magnitude().iter_u32_digits().enumerate() {
            let d = i64::from(digit);
            planes[t][i] = if negative { -d } else { d };
        }
    }
    planes
}

fn limb_count(coeffs: &[BigInt]) -> usize {
    let bits = coeffs.iter().map(|c| c.bits()).max().unwrap_or(0);
    (bits as usize).div_ceil(LIMB_BITS as usize).max(1)
}

/// Limb-plane convolution. Each digit product is below 2^64 in magnitude, so
/// an `i128` accumulator absorbs up to 2^63 of them; `None` if the operands
/// are longer than that.
fn convolve_limbs(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let terms = a.len().min(b.len()) as u128 * limb_count(a).min(limb_count(b)) as u128;
    if terms >= 1 << 62 {
        return None;
    }
    let pa = limb_planes(a, limb_count(a));
    let pb = limb_planes(b, limb_count(b));
    let len = a.len() + b.len() - 1;
    let mut acc = vec![vec![0i128; len]; pa.len() + pb.len() - 1];
    for (t, plane_a) in pa.iter().enumerate() {
        for (u, plane_b) in pb.iter().enumerate() {
            let target = &mut acc[t + u];
            for (i, &x) in plane_a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let x = i128::from(x);
                for (o, &y) in target[i..].iter_mut().zip(plane_b.iter()) {
                    *o += x * i128::from(y);
                }
            }
        }
    }
    let mut out = vec![BigInt::zero(); len];
    for plane in acc.iter().rev() {
        for (o, &v) in out.iter_mut().zip(plane.iter()) {
            // Horner in the limb base: o = o·2^32 + v
            *o <<= LIMB_BITS;
            if v != 0 {
                *o += v;
            }
        }
    }
    Some(out)
}

pub(crate) fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    convolve_into(&mut out, 0, a, b);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for i in 0..a.len() {
            for j in 0..b.len() {
                out[i + j] += &a[i] * &b[j];
            }
        }
        out
    }

    #[test]
    fn small_path_matches_schoolbook() {
        let a = big(&[1, 1, 1]);
        let b = big(&[1, 1]);
        assert_eq!(convolve(&a, &b), big(&[1, 2, 2, 1]));
    }

    #[test]
    fn wide_operands_fall_back_to_bigint() {
        let huge = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        let a = vec![huge.clone(), BigInt::from(-3), huge.clone()];
        let b = big(&[i64::MAX, i64::MIN, 7]);
        assert_eq!(convolve(&a, &b), schoolbook(&a, &b));
        // Both fit in i64 but the product bound exceeds i128.
        let c = big(&[i64::MAX, i64::MAX, i64::MAX, i64::MAX]);
        assert_eq!(convolve(&c, &c), schoolbook(&c, &c));
    }

    #[test]
    fn limb_planes_match_bigint_schoolbook() {
        let big_val = |seed: i64| {
            let mut v = BigInt::from(seed);
            for _ in 0..5 {
                v = v * BigInt::from(0x1234_5678_9abc_i64) + BigInt::from(seed * 7 - 3);
            }
            v
        };
        let a: Vec<BigInt> = (0..9)
            .map(|i| {
                if i % 3 == 0 {
                    -big_val(i + 1)
                } else {
                    big_val(i)
                }
            })
            .collect();
        let b: Vec<BigInt> = vec![BigInt::from(-1), big_val(-4), BigInt::zero(), big_val(11)];
        let mut expect = vec![BigInt::zero(); a.len() + b.len() - 1];
        convolve_bigint(&mut expect, &a, &b);
        assert_eq!(convolve_limbs(&a, &b).unwrap(), expect);
        assert_eq!(convolve(&a, &b), schoolbook(&a, &b));
    }

    #[test]
    fn accumulates_at_offset() {
        let mut out = big(&[5, 5, 5, 5, 5]);
        convolve_into(&mut out, 1, &big(&[1, -1]), &big(&[2, 3]));
        assert_eq!(out, big(&[5, 7, 6, 2, 5]));
    }
}
