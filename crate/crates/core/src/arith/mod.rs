//! Exact arithmetic kernel.

mod kernel;
mod laurent;
mod xpoly;

pub use laurent::{
    divide_laurent, divrem_monic, is_divisible, IntPoly, LaurentDivision, LaurentPoly,
};
pub use xpoly::{IntXPoly, XDivision, XPoly};

pub(crate) use laurent::parse_decimal_list;
