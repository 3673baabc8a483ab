use apery_core::apery::{apery_poly, b_poly, delannoy_poly, q_apery_poly, q_apery_poly_alt};
use apery_core::arith::divide_laurent;
use apery_core::qcomb::CyclotomicCache;
use apery_core::XPoly;
use num_bigint::BigInt;

/// Apéry numbers by direct summation in i128.
fn apery_number(n: i64) -> i128 {
    let binom = |n: i64, k: i64| -> i128 {
        let mut acc = 1i128;
        for i in 0..k {
            acc = acc * (n - i) as i128 / (i + 1) as i128;
        }
        acc
    };
    (0..=n)
        .map(|k| (binom(n, k) * binom(n + k, k)).pow(2))
        .sum()
}

#[test]
fn apery_numbers() {
    let expect = [1i128, 5, 73, 1445, 33001];
    for (n, e) in expect.iter().enumerate() {
        assert_eq!(apery_number(n as i64), *e);
        assert_eq!(
            apery_poly(n as u32, 2).unwrap().eval_one(),
            BigInt::from(*e)
        );
    }
    for n in 5..15 {
        assert_eq!(
            apery_poly(n as u32, 2).unwrap().eval_one(),
            BigInt::from(apery_number(n))
        );
    }
}

#[test]
fn constant_term_is_one() {
    for n in 0..10 {
        for alpha in 1..4 {
            assert_eq!(apery_poly(n, alpha).unwrap().coeff(0), BigInt::from(1));
        }
    }
}

#[test]
fn delannoy_numbers() {
    let expect = [1, 3, 13, 63, 321, 1683];
    for (n, e) in expect.iter().enumerate() {
        assert_eq!(delannoy_poly(n as u32).eval_one(), BigInt::from(*e));
        assert_eq!(delannoy_poly(n as u32), apery_poly(n as u32, 1).unwrap());
    }
}

#[test]
fn q_apery_specializes_at_q_one() {
    for k in 0..=12 {
        for alpha in 1..=3 {
            assert_eq!(
                q_apery_poly(k, alpha).unwrap().eval_one(),
                apery_poly(k, alpha).unwrap(),
                "k={k} alpha={alpha}"
            );
        }
    }
}

#[test]
fn q_apery_constructions_agree() {
    for k in 0..=10 {
        for alpha in 1..=3 {
            assert_eq!(
                q_apery_poly(k, alpha).unwrap(),
                q_apery_poly_alt(k, alpha).unwrap(),
                "k={k} alpha={alpha}"
            );
        }
    }
}

#[test]
fn q_apery_exponents_are_nonpositive_at_the_bottom() {
    let p = q_apery_poly(5, 2).unwrap();
    for (j, c) in p.coeffs().iter().enumerate() {
        let j = j as i64;
        assert_eq!(c.offset(), 2 * (j * (j - 1) / 2 - 5 * j));
    }
}

#[test]
fn b_symmetry_grid() {
    for a in 0..=3 {
        for d in 2..=6 {
            for b in 0..d {
                for alpha in 1..=2 {
                    assert_eq!(
                        b_poly(a, b, d, alpha).unwrap(),
                        b_poly(a, d - 1 - b, d, alpha).unwrap()
                    );
                }
            }
        }
    }
}

/// `A_(ad+b)(x;q) ≡ B_(a,b,d)(x;q) (mod Φ_d(q))`, the reduction the
/// divisibility proof is built on.
#[test]
fn q_apery_reduces_to_b_modulo_phi_d() {
    let cache = CyclotomicCache::new();
    for d in 2..=5u32 {
        let phi = cache.get(u64::from(d));
        for a in 0..=2 {
            for b in 0..d {
                for alpha in 1..=2 {
                    let diff =
                        &q_apery_poly(a * d + b, alpha).unwrap() - &b_poly(a, b, d, alpha).unwrap();
                    for (j, c) in diff.coeffs().iter().enumerate() {
                        let r = divide_laurent(c, &phi).unwrap();
                        assert!(r.is_exact(), "d={d} a={a} b={b} alpha={alpha} x^{j}");
                    }
                }
            }
        }
    }
}

#[test]
fn b_poly_truncation_in_s() {
    // Adding the s = a+1 block would multiply by binom(a, a+1) = 0, so the
    // x-degree never exceeds ad + d - 1.
    for a in 0..=3u32 {
        for d in 2..=5 {
            let p = b_poly(a, 0, d, 1).unwrap();
            assert!((p.degree().unwrap() as u32) < a * d + d);
        }
    }
    assert_eq!(b_poly(0, 0, 2, 1).unwrap(), XPoly::one());
}
