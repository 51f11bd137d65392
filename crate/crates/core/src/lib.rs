//! Multivalued complex exponentiation on the principal branch and on the
//! finite-sheeted Riemann surface `W_α`.
//!
//! The crate is organised bottom-up:
//!
//! * [`polar`]: rectangular/polar arithmetic, the principal logarithm and
//!   principal powers. Everything else is tested against these.
//! * [`multival`]: the full value sets of `z^(1/n)` and `z^(p/q)`.
//! * [`surface`]: sheet-tracked points on `W_α` with multiplication and the
//!   `α`-power map.
//! * [`translate`]: sheet-choosing addition rules and the shear probe that
//!   exhibits their discontinuity.
//! * [`fractal`]: escape-time Julia iteration for `z^α + c`, raster output,
//!   and the disk-image traces through `log`, `α·log` and `exp`.
//! * [`cli`]: the `branchcut` command-line front end.

pub mod cli;
pub mod error;
pub mod fractal;
pub mod multival;
pub mod polar;
pub mod surface;
pub mod translate;

pub use error::{Error, Result};
pub use multival::{RationalExponent, ValueSet};
pub use polar::{PolarComplex, RectComplex};
pub use surface::{SheetedPoint, SurfaceSpec};
