//! Sheet-choosing translation on `W_α`.
//!
//! Every rule here computes the complex part of a sum as the ordinary
//! rectangular sum and differs only in the sheet it assigns:
//!
//! * [`add_ccc`]: counter-clockwise continuity: the full quadrant case tree
//!   for translating `(z, m)` by `(c, 0)`.
//! * [`add_general`]: two sheeted operands: base sheet `⌊(m1 + m2)/2⌋`,
//!   adjusted by the same case tree with the first operand in the role of `z`.
//!   Not commutative.
//! * [`add_sign`]: sheet from the sign of the second operand's imaginary part.
//!
//! [`probe_discontinuity`] samples a small disk, translates it with
//! [`add_ccc`] and reports the disk being split across two sheets.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polar::RectComplex;
use crate::surface::{SheetedPoint, SurfaceSpec};

/// Default sample count for [`probe_discontinuity`].
pub const PROBE_SAMPLES: usize = 1024;

/// Quadrants with the boundary assignment used by the case tree:
/// QI `{Re>0, Im≥0}`, QII `{Re≤0, Im≥0}`, QIII `{Re≤0, Im<0}`, QIV `{Re>0, Im<0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrant {
    QI,
    QII,
    QIII,
    QIV,
}

pub fn quadrant(z: RectComplex) -> Quadrant {
    match (z.re > 0.0, z.im >= 0.0) {
        (true, true) => Quadrant::QI,
        (false, true) => Quadrant::QII,
        (false, false) => Quadrant::QIII,
        (true, false) => Quadrant::QIV,
    }
}

/// The leaf of the case tree that fired, with its sheet shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CccCase {
    /// Case label in the `1(a)` … `3(c)(iii)(C)` numbering.
    pub label: &'static str,
    pub shift: i64,
}

impl fmt::Display for CccCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {} (shift {:+})", self.label, self.shift)
    }
}

const fn case(label: &'static str, shift: i64) -> CccCase {
    CccCase { label, shift }
}

/// Walks the counter-clockwise-continuity case tree for `z + c`.
///
/// The tree is keyed on the sign of `Re c`, then the sign of `Im c`, then the
/// quadrant of `z`, then comparisons of `|Re|` and `|Im|` between `c` and `z`.
/// A shift of `−1` means the sum crossed the cut going clockwise (QIII→QII),
/// `+1` counter-clockwise (QII→QIII).
pub fn ccc_case(z: RectComplex, c: RectComplex) -> CccCase {
    use Quadrant::*;

    let q = quadrant(z);
    let (cre, cim) = (c.re.abs(), c.im.abs());
    let (zre, zim) = (z.re.abs(), z.im.abs());

    if c.re == 0.0 {
        if c.im == 0.0 {
            case("1(a)", 0)
        } else if c.im > 0.0 {
            match q {
                QI | QII | QIV => case("1(b)", 0),
                QIII if cim <= zim => case("1(b)(i)", 0),
                QIII => case("1(b)(ii)", -1),
            }
        } else {
            match q {
                QI | QIII | QIV => case("1(c)", 0),
                QII if cim < zim => case("1(c)(i)", 0),
                QII => case("1(c)(ii)", 1),
            }
        }
    } else if c.re > 0.0 {
        if c.im == 0.0 {
            case("2(a)", 0)
        } else if c.im > 0.0 {
            match q {
                QI | QII | QIV => case("2(b)", 0),
                QIII if cim <= zim => case("2(b)(i)", 0),
                QIII if cre >= zre => case("2(b)(ii)", 0),
                QIII => case("2(b)(iii)", -1),
            }
        } else {
            match q {
                QI | QIII | QIV => case("2(c)", 0),
                QII if cim < zim => case("2(c)(i)", 0),
                QII if cre >= zre => case("2(c)(ii)", 0),
                QII => case("2(c)(iii)", 1),
            }
        }
    } else if c.im == 0.0 {
        case("3(a)", 0)
    } else if c.im > 0.0 {
        match q {
            QI | QII => case("3(b)(i)", 0),
            QIII if cim <= zim => case("3(b)(ii)", 0),
            QIII => case("3(b)(ii)", -1),
            QIV if cre <= zre => case("3(b)(iii)(A)", 0),
            QIV if cim <= zim => case("3(b)(iii)(B)", 0),
            QIV => case("3(b)(iii)(C)", -1),
        }
    } else {
        match q {
            QIII | QIV => case("3(c)(i)", 0),
            QII if cim < zim => case("3(c)(ii)", 0),
            QII => case("3(c)(ii)", 1),
            QI if cre <= zre => case("3(c)(iii)(A)", 0),
            QI if cim < zim => case("3(c)(iii)(B)", 0),
            QI => case("3(c)(iii)(C)", 1),
        }
    }
}

/// `(z, m) ⊕ (c, 0)` with the sheet left unreduced.
pub fn add_ccc_unreduced(a: SheetedPoint, c: RectComplex) -> SheetedPoint {
    SheetedPoint::new(a.z + c, a.m + ccc_case(a.z, c).shift)
}

pub fn add_ccc(a: SheetedPoint, c: RectComplex, surf: &SurfaceSpec) -> SheetedPoint {
    add_ccc_unreduced(a, c).canonical(surf)
}

/// `(z1, m1) ⊕ (z2, m2)` with the sheet left unreduced.
///
/// A zero sum stays on the base sheet.
pub fn add_general_unreduced(a: SheetedPoint, b: SheetedPoint) -> SheetedPoint {
    let w = a.z + b.z;
    let base = (a.m + b.m).div_euclid(2);
    if w.is_zero() {
        return SheetedPoint::new(w, base);
    }
    SheetedPoint::new(w, base + ccc_case(a.z, b.z).shift)
}

pub fn add_general(a: SheetedPoint, b: SheetedPoint, surf: &SurfaceSpec) -> SheetedPoint {
    add_general_unreduced(a, b).canonical(surf)
}

/// `(z, m1) ⊕ (c, m2)` by the sign of `Im c`, sheet left unreduced.
pub fn add_sign_unreduced(a: SheetedPoint, b: SheetedPoint) -> SheetedPoint {
    let shift = if b.z.im > 0.0 {
        1
    } else if b.z.im < 0.0 {
        -1
    } else {
        0
    };
    SheetedPoint::new(a.z + b.z, a.m + b.m + shift)
}

pub fn add_sign(a: SheetedPoint, b: SheetedPoint, surf: &SurfaceSpec) -> SheetedPoint {
    add_sign_unreduced(a, b).canonical(surf)
}

/// Result of [`probe_discontinuity`].
#[derive(Debug, Clone, PartialEq)]
pub struct ShearEvidence {
    /// Centre of the sampled disk.
    pub z0: RectComplex,
    pub epsilon: f64,
    pub c: RectComplex,
    /// Sheet every sample starts on.
    pub input_sheet: i64,
    /// Distinct output sheets; always two on success.
    pub sheet_labels: BTreeSet<i64>,
    /// Fraction of samples that left `input_sheet`.
    pub split_fraction: f64,
    /// `(input point, output sheet)` per sample.
    pub samples: Vec<(RectComplex, i64)>,
}

impl ShearEvidence {
    /// CSV with header `x,y,out_sheet`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,out_sheet\n");
        for (z, m) in &self.samples {
            out.push_str(&format!("{},{},{}\n", z.re, z.im, m));
        }
        out
    }
}

/// Centre used by the probe for translation vector `c`.
///
/// `z0 = −Re(c) − i·Im(c)/2`, so `z0 + c = i·Im(c)/2` lands on the imaginary
/// axis. For purely imaginary `c` this is `−c/2` and the segment from `z0` to
/// `z0 + c` passes through 0. The case tree decides a crossing from the
/// quadrant `z + c` ends up in, so the sampled disk straddles the line
/// `Re z = −Re c` where that decision flips.
pub fn probe_center(c: RectComplex) -> RectComplex {
    RectComplex {
        re: -c.re,
        im: -0.5 * c.im,
    }
}

/// Samples `n_samples` points of the `epsilon`-disk about [`probe_center`]
/// on sheet `1 mod q`, translates each by `(c, 0)` with [`add_ccc`], and
/// returns the resulting sheet split.
///
/// Sampling is stratified by angle (one sample per equal sector) with radius
/// drawn uniformly by area from a seeded generator, so results are
/// reproducible for a given `seed`.
pub fn probe_discontinuity(
    c: RectComplex,
    surf: &SurfaceSpec,
    epsilon: f64,
    n_samples: usize,
    seed: u64,
) -> Result<ShearEvidence> {
    if c.is_zero() {
        return Err(Error::DegenerateInput("translation by zero".into()));
    }
    if c.im == 0.0 {
        return Err(Error::DegenerateInput(format!(
            "translation {c} lies on the real axis; the case tree never changes sheet there"
        )));
    }
    if surf.sheets() < 2 {
        return Err(Error::DegenerateInput("surface has a single sheet".into()));
    }
    if !(epsilon > 0.0 && epsilon < 0.5 * c.abs()) {
        return Err(Error::DegenerateInput(format!(
            "epsilon must lie in (0, |c|/2), got {epsilon}"
        )));
    }
    if n_samples < 2 {
        return Err(Error::DegenerateInput("need at least two samples".into()));
    }

    let z0 = probe_center(c);
    let input_sheet = surf.reduce(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<(RectComplex, i64)> = (0..n_samples)
        .map(|k| {
            let angle = 2.0 * PI * (k as f64 + rng.random::<f64>()) / n_samples as f64;
            let radius = epsilon * rng.random::<f64>().sqrt();
            let z = RectComplex {
                re: z0.re + radius * angle.cos(),
                im: z0.im + radius * angle.sin(),
            };
            let out = add_ccc(SheetedPoint::new(z, input_sheet), c, surf);
            (z, out.m)
        })
        .collect();

    let sheet_labels: BTreeSet<i64> = samples.iter().map(|&(_, m)| m).collect();
    if sheet_labels.len() != 2 {
        return Err(Error::ProbeFailed(format!(
            "translation by {c} produced sheets {sheet_labels:?}"
        )));
    }
    let moved = samples.iter().filter(|&&(_, m)| m != input_sheet).count();
    Ok(ShearEvidence {
        z0,
        epsilon,
        c,
        input_sheet,
        sheet_labels,
        split_fraction: moved as f64 / n_samples as f64,
        samples,
    })
}
