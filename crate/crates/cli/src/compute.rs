//! One-off construction of the polynomial families, printed as JSON.

use apery_core::apery::{apery_poly, delannoy_poly, eta_product_coeffs, q_apery_poly};
use apery_core::qcomb::{cyclotomic, CyclotomicCache};
use clap::Subcommand;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Family {
    /// A_n^(alpha)(x) with integer coefficients.
    Apery {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        alpha: u32,
    },
    /// Central Delannoy polynomial D_n(x).
    Delannoy {
        #[arg(long)]
        n: u32,
    },
    /// q-Apery polynomial A_k^(alpha)(x;q).
    QApery {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        alpha: u32,
    },
    /// Cyclotomic polynomial Phi_d(q).
    Cyclotomic {
        #[arg(long)]
        d: u64,
    },
    /// Coefficients a(1..=n) of the eta product.
    Eta {
        #[arg(long)]
        n: usize,
    },
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

/// The JSON serialization of the requested object.
pub fn compute(family: &Family) -> Result<String, CliError> {
    Ok(match *family {
        Family::Apery { n, alpha } => json(&apery_poly(n, alpha)?),
        Family::Delannoy { n } => json(&delannoy_poly(n)),
        Family::QApery { k, alpha } => json(&q_apery_poly(k, alpha)?),
        Family::Cyclotomic { d } => {
            if d == 0 {
                return Err(CliError::usage("cyclotomic needs d >= 1"));
            }
            json(&*cyclotomic(d, &CyclotomicCache::new()))
        }
        Family::Eta { n } => json(&eta_product_coeffs(n)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_outputs() {
        assert_eq!(
            compute(&Family::Apery { n: 2, alpha: 2 }).unwrap(),
            r#"{"coeffs":["1","36","36"]}"#
        );
        assert_eq!(
            compute(&Family::Cyclotomic { d: 6 }).unwrap(),
            r#"{"offset":0,"coeffs":["1","-1","1"]}"#
        );
        assert_eq!(
            compute(&Family::QApery { k: 0, alpha: 1 }).unwrap(),
            r#"{"coeffs":[{"offset":0,"coeffs":["1"]}]}"#
        );
        assert_eq!(
            compute(&Family::Delannoy { n: 1 }).unwrap(),
            r#"{"coeffs":["1","2"]}"#
        );
        assert_eq!(
            compute(&Family::Eta { n: 3 }).unwrap(),
            r#"{"limit":3,"coeffs":["1","0","-4"]}"#
        );
    }

    #[test]
    fn bad_parameters_are_usage_errors() {
        for f in [
            Family::Apery { n: 2, alpha: 0 },
            Family::Cyclotomic { d: 0 },
            Family::Eta { n: 0 },
        ] {
            assert_eq!(compute(&f).unwrap_err().exit_code(), 2);
        }
    }
}
