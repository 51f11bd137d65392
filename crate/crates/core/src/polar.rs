//! Rectangular and polar complex arithmetic on the principal branch.
//!
//! Arguments produced here always lie in `(-π, π]`. The surface modules use a
//! different per-sheet convention (see [`crate::surface::sheet_argument`]).

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// A complex number `re + im·i` with finite components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RectComplex {
    pub re: f64,
    pub im: f64,
}

/// A complex number `r·e^{iθ}`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PolarComplex {
    pub r: f64,
    pub theta: f64,
}

impl RectComplex {
    pub const ZERO: RectComplex = RectComplex { re: 0.0, im: 0.0 };
    pub const ONE: RectComplex = RectComplex { re: 1.0, im: 0.0 };
    pub const I: RectComplex = RectComplex { re: 0.0, im: 1.0 };

    /// Panics if either component is NaN or infinite.
    pub fn new(re: f64, im: f64) -> Self {
        assert!(
            re.is_finite() && im.is_finite(),
            "complex components must be finite, got ({re}, {im})"
        );
        RectComplex { re, im }
    }

    pub fn try_new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(RectComplex { re, im })
        } else {
            Err(Error::Parse(format!(
                "complex components must be finite, got ({re}, {im})"
            )))
        }
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    pub fn dist(self, other: RectComplex) -> f64 {
        (self - other).abs()
    }
}

impl Add for RectComplex {
    type Output = RectComplex;

    fn add(self, rhs: RectComplex) -> RectComplex {
        RectComplex {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for RectComplex {
    type Output = RectComplex;

    fn sub(self, rhs: RectComplex) -> RectComplex {
        RectComplex {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Neg for RectComplex {
    type Output = RectComplex;

    fn neg(self) -> RectComplex {
        RectComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for RectComplex {
    type Output = RectComplex;

    fn mul(self, rhs: RectComplex) -> RectComplex {
        rect_mul(self, rhs)
    }
}

impl fmt::Display for RectComplex {
    /// Writes `a+bi` / `a-bi`, using the shortest round-tripping decimal for
    /// each component. Negative zero is printed as zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = self.re + 0.0;
        let im = self.im + 0.0;
        if im < 0.0 {
            write!(f, "{}-{}i", re, -im)
        } else {
            write!(f, "{}+{}i", re, im)
        }
    }
}

impl FromStr for RectComplex {
    type Err = Error;

    /// Accepts `a+bi`, `a-bi`, `bi` and `a`, where `a` and `b` are decimal
    /// literals (exponent notation allowed). An omitted `b` means 1, so `i`,
    /// `-i` and `1+i` parse.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed complex literal {s:?}"));
        let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
        let coeff = |t: &str| match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => num(t),
        };

        let (re, im) = match s.strip_suffix('i') {
            Some(body) => {
                let bytes = body.as_bytes();
                let split = (1..bytes.len()).rev().find(|&i| {
                    matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E')
                });
                match split {
                    Some(i) => (num(&body[..i])?, coeff(&body[i..])?),
                    None => (0.0, coeff(body)?),
                }
            }
            None => (num(s)?, 0.0),
        };
        RectComplex::try_new(re, im).map_err(|_| bad())
    }
}

/// `(a+bi)(c+di) = (ac−bd) + (ad+bc)i`.
pub fn rect_mul(z1: RectComplex, z2: RectComplex) -> RectComplex {
    RectComplex {
        re: z1.re * z2.re - z1.im * z2.im,
        im: z1.re * z2.im + z1.im * z2.re,
    }
}

/// Principal argument in `(-π, π]`, with `Arg(0) = 0`.
pub fn principal_arg(z: RectComplex) -> f64 {
    if z.is_zero() {
        return 0.0;
    }
    // atan2 returns -π for (-0.0, negative); fold it onto the closed end.
    let theta = z.im.atan2(z.re);
    if theta == -PI {
        PI
    } else {
        theta + 0.0
    }
}

pub fn to_polar(z: RectComplex) -> PolarComplex {
    PolarComplex {
        r: z.abs(),
        theta: principal_arg(z),
    }
}

pub fn to_rect(p: PolarComplex) -> RectComplex {
    RectComplex {
        re: p.r * p.theta.cos(),
        im: p.r * p.theta.sin(),
    }
}

/// `e^{log_modulus + i·angle}` in rectangular form.
pub(crate) fn exp_polar(log_modulus: f64, angle: f64) -> RectComplex {
    let m = log_modulus.exp();
    RectComplex {
        re: m * angle.cos(),
        im: m * angle.sin(),
    }
}

/// `ln|z| + i·Arg(z)`.
pub fn principal_log(z: RectComplex) -> Result<RectComplex> {
    if z.is_zero() {
        return Err(Error::domain("logarithm of zero"));
    }
    let p = to_polar(z);
    Ok(RectComplex {
        re: p.r.ln(),
        im: p.theta,
    })
}

/// `z^n` by repeated [`rect_mul`]; `z^0 = 1`.
pub fn int_pow_rect(z: RectComplex, n: u32) -> RectComplex {
    (0..n).fold(RectComplex::ONE, |acc, _| rect_mul(acc, z))
}

/// `z^n` as `r^n e^{inθ}`.
pub fn int_pow_polar(z: RectComplex, n: u32) -> RectComplex {
    if n == 0 {
        return RectComplex::ONE;
    }
    let p = to_polar(z);
    to_rect(PolarComplex {
        r: p.r.powf(f64::from(n)),
        theta: f64::from(n) * p.theta,
    })
}

/// `e^{α·Log z}` on the principal branch, extended by `0^α = 0` for `α > 0`.
pub fn principal_pow(z: RectComplex, alpha: f64) -> Result<RectComplex> {
    if z.is_zero() {
        return if alpha > 0.0 {
            Ok(RectComplex::ZERO)
        } else {
            Err(Error::domain(format!(
                "0 raised to non-positive power {alpha}"
            )))
        };
    }
    let log = principal_log(z)?;
    Ok(exp_polar(alpha * log.re, alpha * log.im))
}
