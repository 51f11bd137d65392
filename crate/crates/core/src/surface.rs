//! The `q`-sheeted surface `W_α` for `α = p/q` and its multiplicative structure.
//!
//! A point is a pair `(z, m)`: a complex value plus the sheet it sits on.
//! Its *total turn* is `t = m + ξ` with `ξ = Arg'(z)/2π ∈ [-1/2, 1/2)`, where
//! `Arg'` is the per-sheet argument in `[-π, π)` returned by
//! [`sheet_argument`]. Sheet `m` therefore covers turns `[m − 1/2, m + 1/2)`,
//! and points exactly on the negative real axis belong to the lower edge of a
//! sheet. Sheets are identified modulo `q`.
//!
//! The `*_unreduced` variants keep the sheet index as a plain integer; the
//! others return canonical points with `0 ≤ m < q`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::multival::RationalExponent;
use crate::polar::{exp_polar, rect_mul, RectComplex};

/// The only supported cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchCut {
    #[default]
    NegativeRealAxis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceSpec {
    exponent: RationalExponent,
    cut: BranchCut,
}

impl SurfaceSpec {
    pub fn new(exponent: RationalExponent) -> Self {
        SurfaceSpec {
            exponent,
            cut: BranchCut::NegativeRealAxis,
        }
    }

    pub fn exponent(&self) -> RationalExponent {
        self.exponent
    }

    pub fn sheets(&self) -> i64 {
        self.exponent.q()
    }

    pub fn alpha(&self) -> f64 {
        self.exponent.value()
    }

    pub fn cut(&self) -> BranchCut {
        self.cut
    }

    pub fn reduce(&self, m: i64) -> i64 {
        m.rem_euclid(self.sheets())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetedPoint {
    pub z: RectComplex,
    pub m: i64,
}

impl SheetedPoint {
    pub fn new(z: RectComplex, m: i64) -> Self {
        SheetedPoint { z, m }
    }

    /// `t = m + Arg'(z)/2π`.
    pub fn turn(&self) -> f64 {
        self.m as f64 + sheet_argument(self.z) / (2.0 * PI)
    }

    /// Argument measured continuously from sheet 0: `Arg'(z) + 2πm`.
    pub fn total_angle(&self) -> f64 {
        sheet_argument(self.z) + 2.0 * PI * self.m as f64
    }

    pub fn canonical(self, surf: &SurfaceSpec) -> Self {
        SheetedPoint {
            z: self.z,
            m: surf.reduce(self.m),
        }
    }
}

/// Argument in `[-π, π)`; the negative real axis maps to `-π` and `0` to `0`.
pub fn sheet_argument(z: RectComplex) -> f64 {
    if z.is_zero() {
        return 0.0;
    }
    let theta = z.im.atan2(z.re);
    if theta == PI {
        -PI
    } else {
        theta + 0.0
    }
}

/// Places `z` on sheet `m mod q`.
pub fn lift(z: RectComplex, m: i64, surf: &SurfaceSpec) -> SheetedPoint {
    SheetedPoint::new(z, m).canonical(surf)
}

/// Product with the sheet index left unreduced.
///
/// The sheet is `m1 + m2 + k` where `k` is the number of whole turns lost when
/// the summed per-sheet arguments are folded back into `[-π, π)`; this is the
/// unique `m_*` with `t1 + t2 ∈ [m_* − 1/2, m_* + 1/2)`, read off the computed
/// product so the sheet always agrees with the stored value.
pub fn smul_unreduced(a: SheetedPoint, b: SheetedPoint) -> SheetedPoint {
    let z = rect_mul(a.z, b.z);
    let summed = sheet_argument(a.z) + sheet_argument(b.z);
    let k = ((summed - sheet_argument(z)) / (2.0 * PI)).round() as i64;
    SheetedPoint::new(z, a.m + b.m + k)
}

pub fn smul(a: SheetedPoint, b: SheetedPoint, surf: &SurfaceSpec) -> SheetedPoint {
    smul_unreduced(a, b).canonical(surf)
}

/// `α`-power with the sheet index left unreduced.
///
/// The total turn is scaled, `t' = α·t`, the value is `|z|^α e^{2πit'}` and the
/// sheet is the unique `m_*` with `t' ∈ [m_* − 1/2, m_* + 1/2)`.
pub fn spow_unreduced(a: SheetedPoint, alpha: f64) -> Result<SheetedPoint> {
    if a.z.is_zero() {
        return if alpha > 0.0 {
            Ok(a)
        } else {
            Err(Error::domain(format!(
                "0 raised to non-positive power {alpha}"
            )))
        };
    }
    let angle = alpha * a.total_angle();
    let z = exp_polar(alpha * a.z.abs().ln(), angle);
    let m = (angle / (2.0 * PI) + 0.5).floor() as i64;
    Ok(SheetedPoint::new(z, m))
}

pub fn spow(a: SheetedPoint, surf: &SurfaceSpec) -> Result<SheetedPoint> {
    Ok(spow_unreduced(a, surf.alpha())?.canonical(surf))
}
