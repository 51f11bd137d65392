//! Escape-time Julia sets of `f(z) = z^α + c`.
//!
//! The default iteration uses the principal branch. With a rational exponent
//! the orbit can instead be carried on `W_α`, using [`spow`] for the power
//! step and either [`add_ccc`] or [`add_sign`] for the translation.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multival::RationalExponent;
use crate::polar::{principal_pow, RectComplex};
use crate::surface::{lift, spow, SheetedPoint, SurfaceSpec};
use crate::translate::{add_ccc, add_sign};

mod output;
mod trace;

pub use trace::{trace_disk_chain, traces_to_csv, DiskTrace, Half, Stage};

/// Real exponent, optionally known exactly as `p/q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Rational(RationalExponent),
    Real(f64),
}

impl Exponent {
    pub fn value(&self) -> f64 {
        match self {
            Exponent::Rational(e) => e.value(),
            Exponent::Real(a) => *a,
        }
    }

    pub fn rational(&self) -> Option<RationalExponent> {
        match self {
            Exponent::Rational(e) => Some(*e),
            Exponent::Real(_) => None,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Rational(e) => write!(f, "{e}"),
            Exponent::Real(a) => write!(f, "{a}"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// `"p/q"` and integers parse exactly; anything else as a decimal.
    /// Decimals are never rationalised.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('/') || s.parse::<i64>().is_ok() {
            return s.parse().map(Exponent::Rational);
        }
        match s.parse::<f64>() {
            Ok(a) if a.is_finite() => Ok(Exponent::Real(a)),
            _ => Err(Error::Parse(format!("malformed exponent {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IterationMode {
    /// `principal_pow(z, α) + c`.
    #[default]
    Principal,
    /// `spow` then `add_ccc` on `W_α`.
    Ccc,
    /// `spow` then `add_sign` on `W_α`.
    Sign,
}

impl fmt::Display for IterationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IterationMode::Principal => "principal",
            IterationMode::Ccc => "ccc",
            IterationMode::Sign => "sign",
        })
    }
}

impl FromStr for IterationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "principal" => Ok(IterationMode::Principal),
            "ccc" => Ok(IterationMode::Ccc),
            "sign" => Ok(IterationMode::Sign),
            _ => Err(Error::Parse(format!("unknown iteration mode {s:?}"))),
        }
    }
}

/// Squared-modulus escape threshold.
pub const DEFAULT_BAILOUT: f64 = 4.0;
pub const DEFAULT_MAX_ITER: u32 = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderConfig {
    pub alpha: Exponent,
    pub c: RectComplex,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub width: u32,
    pub height: u32,
    pub max_iter: u32,
    /// An orbit escapes once `|z|² > bailout`.
    pub bailout: f64,
    pub mode: IterationMode,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            alpha: Exponent::Rational(RationalExponent::new(5, 2).expect("5/2")),
            c: RectComplex { re: 0.0, im: 0.5 },
            x_min: -2.0,
            x_max: 2.0,
            y_min: -2.0,
            y_max: 2.0,
            width: 256,
            height: 256,
            max_iter: DEFAULT_MAX_ITER,
            bailout: DEFAULT_BAILOUT,
            mode: IterationMode::Principal,
        }
    }
}

impl RenderConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        let finite = [
            self.x_min,
            self.x_max,
            self.y_min,
            self.y_max,
            self.bailout,
            self.alpha.value(),
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return bad("non-finite parameter".into());
        }
        if !(self.x_min < self.x_max && self.y_min < self.y_max) {
            return bad(format!(
                "empty view rectangle [{}, {}] x [{}, {}]",
                self.x_min, self.x_max, self.y_min, self.y_max
            ));
        }
        if self.width == 0 || self.height == 0 {
            return bad(format!(
                "raster {}x{} has no pixels",
                self.width, self.height
            ));
        }
        if self.bailout <= 0.0 {
            return bad(format!("bailout must be positive, got {}", self.bailout));
        }
        if self.mode != IterationMode::Principal && self.alpha.rational().is_none() {
            return bad(format!(
                "mode {} needs an exact exponent p/q, got {}",
                self.mode, self.alpha
            ));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / f64::from(self.width)
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / f64::from(self.height)
    }

    /// Centre of pixel `(i, j)`; column `i` runs left to right, row 0 is at `y_max`.
    pub fn pixel_center(&self, i: u32, j: u32) -> RectComplex {
        RectComplex {
            re: self.x_min + (f64::from(i) + 0.5) * self.dx(),
            im: self.y_max - (f64::from(j) + 0.5) * self.dy(),
        }
    }

    fn surface(&self) -> SurfaceSpec {
        SurfaceSpec::new(
            self.alpha
                .rational()
                .expect("sheeted iteration requires a rational exponent"),
        )
    }
}

/// One orbit step on `W_α`; `None` when the power is undefined (`0^α`, `α ≤ 0`).
fn sheeted_step(p: SheetedPoint, cfg: &RenderConfig, surf: &SurfaceSpec) -> Option<SheetedPoint> {
    let powered = spow(p, surf).ok()?;
    Some(match cfg.mode {
        IterationMode::Ccc => add_ccc(powered, cfg.c, surf),
        IterationMode::Sign => add_sign(powered, SheetedPoint::new(cfg.c, 0), surf),
        IterationMode::Principal => unreachable!("principal mode carries no sheet"),
    })
}

/// Iterates from `z0` and returns the orbit `z1, z2, …` up to and including
/// the first escaping iterate, at most `max_iter` points. Principal-mode
/// points are reported on sheet 0.
///
/// A pole (`0^α` with `α ≤ 0`) ends the orbit as an escape.
pub fn orbit(z0: RectComplex, cfg: &RenderConfig) -> Vec<SheetedPoint> {
    let mut out = Vec::new();
    walk(z0, cfg, |p| out.push(p));
    out
}

/// Escape count of `z0`: the first `n ≤ max_iter` with `|z_n|² > bailout`,
/// or `max_iter` if no iterate escapes.
///
/// # Panics
///
/// In `ccc`/`sign` mode when `cfg.alpha` is not rational; [`RenderConfig::validate`]
/// rejects such configurations.
pub fn iterate_point(z0: RectComplex, cfg: &RenderConfig) -> u32 {
    walk(z0, cfg, |_| ())
}

fn walk(z0: RectComplex, cfg: &RenderConfig, mut visit: impl FnMut(SheetedPoint)) -> u32 {
    let alpha = cfg.alpha.value();
    match cfg.mode {
        IterationMode::Principal => {
            let mut z = z0;
            for n in 1..=cfg.max_iter {
                z = match principal_pow(z, alpha) {
                    Ok(w) => w + cfg.c,
                    Err(_) => return n,
                };
                visit(SheetedPoint::new(z, 0));
                if z.norm_sqr() > cfg.bailout {
                    return n;
                }
            }
        }
        IterationMode::Ccc | IterationMode::Sign => {
            let surf = cfg.surface();
            let mut p = lift(z0, 0, &surf);
            for n in 1..=cfg.max_iter {
                p = match sheeted_step(p, cfg, &surf) {
                    Some(next) => next,
                    None => return n,
                };
                visit(p);
                if p.z.norm_sqr() > cfg.bailout {
                    return n;
                }
            }
        }
    }
    cfg.max_iter
}

/// Row-major raster of escape counts.
#[derive(Debug, Clone, PartialEq)]
pub struct EscapeGrid {
    pub counts: Vec<u32>,
    pub config: RenderConfig,
}

impl EscapeGrid {
    pub fn width(&self) -> u32 {
        self.config.width
    }

    pub fn height(&self) -> u32 {
        self.config.height
    }

    /// Count at column `i`, row `j`.
    pub fn get(&self, i: u32, j: u32) -> u32 {
        self.counts[j as usize * self.config.width as usize + i as usize]
    }

    /// Mean `|Δcount|` between vertically adjacent pixels whose centres lie on
    /// opposite sides of the negative real axis. `None` if no row pair
    /// straddles the axis or no column lies left of the origin.
    pub fn cut_scar(&self) -> Option<f64> {
        let cfg = &self.config;
        let row = (0..cfg.height.saturating_sub(1))
            .find(|&j| cfg.pixel_center(0, j).im >= 0.0 && cfg.pixel_center(0, j + 1).im < 0.0)?;
        let jumps: Vec<f64> = (0..cfg.width)
            .filter(|&i| cfg.pixel_center(i, row).re < 0.0)
            .map(|i| f64::from(self.get(i, row).abs_diff(self.get(i, row + 1))))
            .collect();
        if jumps.is_empty() {
            return None;
        }
        Some(jumps.iter().sum::<f64>() / jumps.len() as f64)
    }
}

/// Renders the escape-count raster. Rows are computed in parallel and each
/// pixel depends only on its own centre, so the result does not depend on
/// scheduling.
pub fn render(cfg: &RenderConfig) -> Result<EscapeGrid> {
    cfg.validate()?;
    let width = cfg.width as usize;
    let mut counts = vec![0u32; width * cfg.height as usize];
    counts
        .par_chunks_mut(width)
        .enumerate()
        .for_each(|(j, row)| {
            for (i, count) in row.iter_mut().enumerate() {
                *count = iterate_point(cfg.pixel_center(i as u32, j as u32), cfg);
            }
        });
    Ok(EscapeGrid {
        counts,
        config: *cfg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(alpha: f64, c: RectComplex) -> RenderConfig {
        RenderConfig {
            alpha: Exponent::Real(alpha),
            c,
            max_iter: 64,
            ..RenderConfig::default()
        }
    }

    #[test]
    fn hand_iterated_counts() {
        let sq = cfg(2.0, RectComplex::ZERO);
        assert_eq!(iterate_point(RectComplex::new(2., 0.), &sq), 1);
        assert_eq!(iterate_point(RectComplex::ZERO, &sq), sq.max_iter);

        let julia = cfg(2.5, RectComplex::new(0., 0.5));
        assert!(iterate_point(RectComplex::new(2., 2.), &julia) <= 3);
    }

    #[test]
    fn single_pixel_render() {
        let c = RenderConfig {
            alpha: Exponent::Real(2.0),
            c: RectComplex::ZERO,
            x_min: 1.9,
            x_max: 2.1,
            y_min: -0.1,
            y_max: 0.1,
            width: 1,
            height: 1,
            ..RenderConfig::default()
        };
        assert_eq!(c.pixel_center(0, 0), RectComplex::new(2.0, 0.0));
        assert_eq!(render(&c).unwrap().counts, vec![1]);
    }

    #[test]
    fn zero_iterations_give_zero_counts() {
        let c = RenderConfig {
            max_iter: 0,
            width: 8,
            height: 5,
            ..RenderConfig::default()
        };
        assert!(render(&c).unwrap().counts.iter().all(|&n| n == 0));
    }

    #[test]
    fn pixel_mapping_orientation() {
        let c = RenderConfig {
            width: 4,
            height: 4,
            ..RenderConfig::default()
        };
        assert_eq!(c.pixel_center(0, 0), RectComplex::new(-1.5, 1.5));
        assert_eq!(c.pixel_center(3, 3), RectComplex::new(1.5, -1.5));
    }

    #[test]
    fn invalid_configs() {
        let base = RenderConfig::default();
        for bad in [
            RenderConfig {
                x_min: 1.0,
                x_max: 1.0,
                ..base
            },
            RenderConfig {
                y_min: 2.0,
                y_max: -2.0,
                ..base
            },
            RenderConfig { width: 0, ..base },
            RenderConfig {
                bailout: 0.0,
                ..base
            },
            RenderConfig {
                alpha: Exponent::Real(2.5),
                mode: IterationMode::Ccc,
                ..base
            },
        ] {
            assert!(
                matches!(render(&bad), Err(Error::InvalidConfig(_))),
                "{bad:?}"
            );
        }
        assert!(RenderConfig {
            mode: IterationMode::Sign,
            ..base
        }
        .validate()
        .is_ok());
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!(
            "5/2".parse::<Exponent>().unwrap().rational().unwrap().q(),
            2
        );
        assert_eq!(
            "2".parse::<Exponent>().unwrap(),
            Exponent::Rational(RationalExponent::integer(2))
        );
        assert_eq!("2.5".parse::<Exponent>().unwrap(), Exponent::Real(2.5));
        assert!("x".parse::<Exponent>().is_err());
        assert!("1/0".parse::<Exponent>().is_err());
    }

    #[test]
    fn pole_counts_as_escape() {
        let c = cfg(-1.0, RectComplex::ZERO);
        assert_eq!(iterate_point(RectComplex::ZERO, &c), 1);
    }

    #[test]
    fn orbit_ends_at_escape() {
        let c = cfg(2.0, RectComplex::ZERO);
        let o = orbit(RectComplex::new(1.5, 0.), &c);
        assert_eq!(o.len() as u32, iterate_point(RectComplex::new(1.5, 0.), &c));
        assert!(o.last().unwrap().z.norm_sqr() > 4.0);
    }
}
