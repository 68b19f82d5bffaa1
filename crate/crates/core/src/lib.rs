//! Exact computation of the coefficient polynomials of differential operators
//! that act diagonally on the generalized Hermite basis, together with the
//! machinery needed to probe multiplier-sequence properties through the
//! real-rootedness of those coefficients.
//!
//! Everything is computed over arbitrary-precision rationals. No floating
//! point participates in any decision; the only floats in the crate are the
//! display approximations written next to exact values.
//!
//! Module map:
//!
//! * [`poly`]: dense rational polynomials, squarefree parts and Sturm counting.
//! * [`hermite`]: generalized Hermite polynomials and basis conversion.
//! * [`jensen`]: sequences, entire-function specs, reversed Jensen values.
//! * [`diffop`]: coefficient polynomials `Q_{k,p}` and operator application.
//! * [`classify`]: reality tables, verdicts and the witness search.
//! * [`laguerre`]: the Laguerre operator `a + (x-α-1)D - xD²`.

pub mod classify;
pub mod diffop;
pub mod error;
pub mod hermite;
pub mod jensen;
pub mod laguerre;
pub mod poly;
pub mod rat;
pub mod report;

pub use error::{Error, Result};
pub use poly::RatPoly;
pub use rat::Rat;
pub use report::{CheckFailure, CheckReport};
