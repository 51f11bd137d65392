//! Images of a small disk on the negative real axis under
//! `z ↦ log z ↦ α·log z ↦ e^{α·log z}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::polar::{exp_polar, RectComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Input,
    Log,
    Scaled,
    Exp,
}

impl Stage {
    pub const ALL: [Stage; 4] = [Stage::Input, Stage::Log, Stage::Scaled, Stage::Exp];
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Input => "input",
            Stage::Log => "log",
            Stage::Scaled => "scaled",
            Stage::Exp => "exp",
        })
    }
}

/// `Upper` is `Im z ≥ 0`, `Lower` is `Im z < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Half {
    Upper,
    Lower,
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Half::Upper => "upper",
            Half::Lower => "lower",
        })
    }
}

/// Boundary points of one half-disk at one stage of the chain.
///
/// `points[..edge_start]` trace the circular arc, `points[edge_start..]` the
/// straight edge lying along the cut.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskTrace {
    pub stage: Stage,
    pub half: Half,
    pub points: Vec<RectComplex>,
    pub edge_start: usize,
}

impl DiskTrace {
    pub fn arc(&self) -> &[RectComplex] {
        &self.points[..self.edge_start]
    }

    pub fn cut_edge(&self) -> &[RectComplex] {
        &self.points[self.edge_start..]
    }
}

/// Traces the boundary of `{|z + r| < eps}` split along the real axis.
///
/// Each half gets `n` arc points and `n` points on the cut edge. The lower
/// half's cut edge is its closure: those points carry imaginary part `-0.0`
/// and take argument `-π`, the limit from below; the upper edge takes `+π`.
/// Returns eight traces, stage-major, upper half first.
pub fn trace_disk_chain(r: f64, eps: f64, alpha: f64, n: usize) -> Result<Vec<DiskTrace>> {
    if !(r > 0.0 && eps > 0.0 && r.is_finite() && alpha.is_finite()) {
        return Err(Error::domain(format!(
            "need r > 0, eps > 0; got r={r}, eps={eps}"
        )));
    }
    if eps >= r {
        return Err(Error::domain(format!(
            "disk of radius {eps} about -{r} contains 0"
        )));
    }
    if n == 0 {
        return Err(Error::domain("need at least one sample per edge"));
    }

    let spacing = |k: usize| {
        if n == 1 {
            0.5
        } else {
            k as f64 / (n - 1) as f64
        }
    };
    let pi = std::f64::consts::PI;

    let upper: Vec<RectComplex> = (0..n)
        .map(|k| {
            let phi = pi * spacing(k);
            RectComplex {
                re: -r + eps * phi.cos(),
                im: eps * phi.sin(),
            }
        })
        .chain((0..n).map(|k| RectComplex {
            re: -r - eps + 2.0 * eps * spacing(k),
            im: 0.0,
        }))
        .collect();
    let lower: Vec<RectComplex> = (0..n)
        .map(|k| {
            let phi = pi + pi * (k + 1) as f64 / (n + 1) as f64;
            RectComplex {
                re: -r + eps * phi.cos(),
                im: eps * phi.sin(),
            }
        })
        .chain((0..n).map(|k| RectComplex {
            re: -r - eps + 2.0 * eps * spacing(k),
            im: -0.0,
        }))
        .collect();

    let mut traces = Vec::with_capacity(8);
    for stage in Stage::ALL {
        for (half, input) in [(Half::Upper, &upper), (Half::Lower, &lower)] {
            let points = input
                .iter()
                .map(|&z| stage_image(z, alpha, stage))
                .collect();
            traces.push(DiskTrace {
                stage,
                half,
                points,
                edge_start: n,
            });
        }
    }
    Ok(traces)
}

fn stage_image(z: RectComplex, alpha: f64, stage: Stage) -> RectComplex {
    // atan2 honours the sign of a zero imaginary part, giving ±π on the cut
    let log = RectComplex {
        re: z.abs().ln(),
        im: z.im.atan2(z.re),
    };
    match stage {
        Stage::Input => z,
        Stage::Log => log,
        Stage::Scaled => RectComplex {
            re: alpha * log.re,
            im: alpha * log.im,
        },
        Stage::Exp => exp_polar(alpha * log.re, alpha * log.im),
    }
}

/// CSV with header `stage,half,re,im`.
pub fn traces_to_csv(traces: &[DiskTrace]) -> String {
    let mut out = String::from("stage,half,re,im\n");
    for t in traces {
        for p in &t.points {
            out.push_str(&format!("{},{},{},{}\n", t.stage, t.half, p.re, p.im));
        }
    }
    out
}
