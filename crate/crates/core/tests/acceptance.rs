//! Exit criteria. Run with `--nocapture` to see one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::Instant;

use num_integer::gcd;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use branchcut::fractal::{render, trace_disk_chain, Exponent, Half, RenderConfig, Stage};
use branchcut::multival::{match_permutation, nth_roots, rational_pow_values};
use branchcut::polar::{int_pow_polar, int_pow_rect, principal_pow};
use branchcut::surface::{lift, smul_unreduced, SheetedPoint};
use branchcut::translate::{add_general, add_sign, probe_discontinuity};
use branchcut::{RationalExponent, RectComplex, SurfaceSpec};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn c(re: f64, im: f64) -> RectComplex {
    RectComplex::new(re, im)
}

fn surf(p: i64, q: i64) -> SurfaceSpec {
    SurfaceSpec::new(RationalExponent::new(p, q).unwrap())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel_err(got: RectComplex, want: RectComplex) -> f64 {
    got.dist(want) / want.abs()
}

/// Exact `(a+bi)^n` over the Gaussian integers, overflow-checked.
fn gaussian_pow(a: i64, b: i64, n: u32) -> (i64, i64) {
    let (mut x, mut y) = (1i64, 0i64);
    for _ in 0..n {
        let re = x
            .checked_mul(a)
            .and_then(|t| t.checked_sub(y.checked_mul(b)?));
        let im = x
            .checked_mul(b)
            .and_then(|t| t.checked_add(y.checked_mul(a)?));
        (x, y) = (re.expect("overflow"), im.expect("overflow"));
    }
    (x, y)
}

fn ac1_integer_powers() -> Check {
    let z = c(2., 3.);
    let cube = int_pow_rect(z, 3);
    ensure(cube == c(-46., 9.), || format!("rect cube {cube}"))?;
    let polar = int_pow_polar(z, 3);
    ensure(
        (polar.re + 46.).abs() < 1e-9 && (polar.im - 9.).abs() < 1e-9,
        || format!("polar cube {polar}"),
    )?;

    let exact = gaussian_pow(2, 3, 29);
    ensure(
        exact == (-13_833_225_534_613_558, -3_190_610_873_034_597),
        || format!("gaussian oracle {exact:?}"),
    )?;
    let want = c(exact.0 as f64, exact.1 as f64);
    let r = rel_err(int_pow_rect(z, 29), want);
    let p = rel_err(int_pow_polar(z, 29), want);
    ensure(r <= 1e-12 && p <= 1e-12, || {
        format!("29th power rel err rect {r:e}, polar {p:e}")
    })?;
    Ok(format!("29th power rel err rect {r:.1e}, polar {p:.1e}"))
}

fn ac2_root_power_sets() -> Check {
    let start = Instant::now();
    let z = c(1., 1.);
    let e = RationalExponent::new(2, 5).unwrap();
    let r_list = rational_pow_values(z, e).map_err(|e| e.to_string())?;
    let rho_list = nth_roots(int_pow_rect(z, 2), 5).map_err(|e| e.to_string())?;
    let sigma = match_permutation(&rho_list, &r_list, 1e-9).map_err(|e| e.to_string())?;
    ensure(
        sigma == vec![(0, 0), (1, 3), (2, 1), (3, 4), (4, 2)],
        || format!("sigma {sigma:?}"),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    while checked < 500 {
        let p = rng.random_range(1..=9i64);
        let q = rng.random_range(1..=9i64);
        if gcd(p, q) != 1 {
            continue;
        }
        let modulus = rng.random_range(0.25..2.0);
        let angle = rng.random_range(-PI..PI);
        let z = c(modulus * angle.cos(), modulus * angle.sin());
        let lhs = rational_pow_values(z, RationalExponent::new(p, q).unwrap()).unwrap();
        let rhs = nth_roots(int_pow_rect(z, p as u32), q as u32).unwrap();
        match_permutation(&lhs, &rhs, 1e-9).map_err(|e| format!("z={z} p/q={p}/{q}: {e}"))?;
        checked += 1;
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 1.0, || format!("took {elapsed:.2}s"))?;
    Ok(format!(
        "(1+i)^(2/5) pairing reproduced; 500 random sets matched in {elapsed:.3}s"
    ))
}

fn ac3_sheet_drift() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut violations = 0;
    for _ in 0..100_000 {
        let q = rng.random_range(1..=8i64);
        let m1 = rng.random_range(0..q);
        let m2 = rng.random_range(0..q);
        let a = SheetedPoint::new(
            c(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)),
            m1,
        );
        let b = SheetedPoint::new(
            c(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)),
            m2,
        );
        let prod = smul_unreduced(a, b);
        if (prod.m - (m1 + m2)).abs() > 1 {
            violations += 1;
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok("0 violations in 100000 products".into())
}

fn ac4_noncommutativity() -> Check {
    let w = surf(15, 4);
    let a = SheetedPoint::new(c(-2., 1.), 2);
    let b = SheetedPoint::new(c(-1., -3.), 2);
    let ab = add_general(a, b, &w);
    let ba = add_general(b, a, &w);
    ensure(ab == SheetedPoint::new(c(-3., -2.), 3), || {
        format!("a+b = {ab:?}")
    })?;
    ensure(ba == SheetedPoint::new(c(-3., -2.), 2), || {
        format!("b+a = {ba:?}")
    })?;
    Ok("(-2+i,2)+(-1-3i,2) -> sheet 3, reversed -> sheet 2, both -3-2i".into())
}

fn ac5_shear_ccc() -> Check {
    let start = Instant::now();
    let ev = probe_discontinuity(RectComplex::I, &surf(8, 3), 0.25, 1024, 0)
        .map_err(|e| e.to_string())?;
    ensure(ev.sheet_labels == BTreeSet::from([0, 1]), || {
        format!("{:?}", ev.sheet_labels)
    })?;
    for &(z, m) in &ev.samples {
        let want = if z.re <= 0.0 { 0 } else { 1 };
        ensure(m == want, || format!("sample {z} on sheet {m}"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..100 {
        let q = rng.random_range(2..=5i64);
        let p = loop {
            let p = rng.random_range(1..=12i64);
            if gcd(p, q) == 1 {
                break p;
            }
        };
        let cv = c(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let eps = rng.random_range(0.05..0.95) * cv.abs() / 2.0;
        let ev = probe_discontinuity(cv, &surf(p, q), eps, 1024, trial)
            .map_err(|e| format!("c={cv} q={q} eps={eps}: {e}"))?;
        ensure(ev.sheet_labels.len() == 2, || {
            format!("c={cv}: {:?}", ev.sheet_labels)
        })?;
        ensure(ev.split_fraction > 0.0 && ev.split_fraction < 1.0, || {
            format!("c={cv}: split {}", ev.split_fraction)
        })?;
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 1.0, || format!("took {elapsed:.2}s"))?;
    Ok(format!(
        "c=i splits at Re z = 0 (fraction {:.3}); 100 random c sheared in {elapsed:.3}s",
        ev.split_fraction
    ))
}

fn ac6_shear_sign() -> Check {
    let w = surf(5, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut outputs = BTreeSet::new();
    for _ in 0..1000 {
        let r = 0.25 * rng.random::<f64>().sqrt();
        let phi = rng.random_range(0.0..2.0 * PI);
        let z = c(-1.0 + r * phi.cos(), r * phi.sin());
        if z.im == 0.0 {
            continue;
        }
        // continuous argument through the cut: upper half on sheet 0, lower on sheet 1
        let input = lift(z, if z.im > 0.0 { 0 } else { 1 }, &w);
        let out = add_sign(input, SheetedPoint::new(RectComplex::I, 0), &w);
        let want = 1 - input.m;
        ensure(out.m == want, || {
            format!("{z} on sheet {} went to {}", input.m, out.m)
        })?;
        outputs.insert(out.m);
    }
    ensure(outputs == BTreeSet::from([0, 1]), || {
        format!("outputs {outputs:?}")
    })?;
    Ok("sheet 0 -> 1 and sheet 1 -> 0 across the disk about -1".into())
}

fn ac7_jump_law() -> Check {
    let delta = 1e-8;
    let jump = |alpha: f64, r: f64| {
        let above = principal_pow(c(-r, delta), alpha).unwrap();
        let below = principal_pow(c(-r, -delta), alpha).unwrap();
        above.dist(below)
    };
    let mut worst = 0f64;
    for alpha in [0.5, 1.5, 2.5] {
        for r in [0.5f64, 1.0, 2.0] {
            let want = r.powf(alpha) * 2.0 * (alpha * PI).sin().abs();
            let rel = (jump(alpha, r) - want).abs() / want;
            worst = worst.max(rel);
            ensure(rel <= 1e-5, || {
                format!("alpha={alpha} r={r}: rel err {rel:e}")
            })?;
        }
    }
    let mut largest_int = 0f64;
    for alpha in [1.0, 2.0, 3.0] {
        for r in [0.5, 1.0, 2.0] {
            let j = jump(alpha, r);
            largest_int = largest_int.max(j);
            ensure(j < 1e-6, || format!("alpha={alpha} r={r}: jump {j:e}"))?;
        }
    }
    Ok(format!(
        "worst rel err {worst:.1e}; largest integer-alpha jump {largest_int:.1e}"
    ))
}

fn ac8_disk_chain() -> Check {
    let (r, eps, n) = (1.3, 0.2, 256);
    let traces = trace_disk_chain(r, eps, 3.0, n).map_err(|e| e.to_string())?;
    let get = |ts: &[branchcut::fractal::DiskTrace], half| {
        ts.iter()
            .find(|t| t.stage == Stage::Exp && t.half == half)
            .unwrap()
            .clone()
    };
    let (up, lo) = (get(&traces, Half::Upper), get(&traces, Half::Lower));
    let gap = up
        .points
        .iter()
        .flat_map(|a| lo.points.iter().map(move |b| a.dist(*b)))
        .fold(f64::INFINITY, f64::min);
    let bound = 2.0 * PI * r.powi(3) / n as f64;
    ensure(gap < bound, || format!("alpha=3 gap {gap:e} >= {bound:e}"))?;

    let traces = trace_disk_chain(r, eps, 2.5, n).map_err(|e| e.to_string())?;
    let (up, lo) = (get(&traces, Half::Upper), get(&traces, Half::Lower));
    let mut worst = 0f64;
    for (a, b) in up.cut_edge().iter().zip(lo.cut_edge()) {
        let diff = (a.im.atan2(a.re) - b.im.atan2(b.re)).rem_euclid(2.0 * PI);
        worst = worst.max((diff - PI).abs());
    }
    ensure(worst < 1e-9, || {
        format!("alpha=2.5 ray angle off by {worst:e}")
    })?;
    Ok(format!(
        "alpha=3 gap {gap:.1e} < {bound:.1e}; alpha=2.5 rays differ by pi to {worst:.1e}"
    ))
}

fn julia_cfg(alpha: f64) -> RenderConfig {
    RenderConfig {
        alpha: Exponent::Real(alpha),
        c: c(0., 0.5),
        width: 64,
        height: 64,
        max_iter: 64,
        ..RenderConfig::default()
    }
}

fn ac9_julia_golden_and_scar() -> Check {
    let start = Instant::now();
    let golden = include_bytes!("golden/julia_2.5_0.5i_64.pgm");
    let grid = render(&julia_cfg(2.5)).map_err(|e| e.to_string())?;
    let pgm = grid.to_pgm();
    ensure(pgm.as_slice() == golden.as_slice(), || {
        let diff = pgm
            .iter()
            .zip(golden.iter())
            .filter(|(a, b)| a != b)
            .count();
        format!("golden mismatch in {diff} bytes")
    })?;

    let scar_frac = grid.cut_scar().ok_or("no straddling rows")?;
    let scar_int = render(&julia_cfg(2.0))
        .map_err(|e| e.to_string())?
        .cut_scar()
        .ok_or("no rows")?;
    ensure(scar_frac > scar_int, || {
        format!("scar 2.5: {scar_frac}, 2.0: {scar_int}")
    })?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 5.0, || format!("took {elapsed:.2}s"))?;
    Ok(format!(
        "golden matched; cut scar {scar_frac:.3} (alpha 2.5) > {scar_int:.3} (alpha 2)"
    ))
}

fn ac10_determinism() -> Check {
    let cfg = RenderConfig {
        width: 96,
        height: 80,
        max_iter: 128,
        ..julia_cfg(2.5)
    };
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| render(&cfg))
        .map_err(|e| e.to_string())?;
    let parallel = rayon::ThreadPoolBuilder::new()
        .num_threads(8)
        .build()
        .unwrap()
        .install(|| render(&cfg))
        .map_err(|e| e.to_string())?;
    let again = render(&cfg).map_err(|e| e.to_string())?;
    ensure(
        serial.to_pgm() == parallel.to_pgm() && parallel.to_pgm() == again.to_pgm(),
        || "renders differ".into(),
    )?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for name in ["a.pgm", "b.pgm"] {
        let path = dir.path().join(name);
        let argv = [
            "branchcut",
            "render",
            "--alpha",
            "5/2",
            "--c",
            "0.5i",
            "--width",
            "48",
            "--height",
            "40",
            "--max-iter",
            "100",
            "--out",
            path.to_str().unwrap(),
        ];
        let code = branchcut::cli::run(argv, &mut Vec::new(), &mut Vec::new());
        ensure(code == 0, || format!("cli exit {code}"))?;
        files.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(files[0] == files[1], || "cli renders differ".into())?;
    Ok("1-thread, 8-thread and CLI renders byte-identical".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("AC1 integer powers", ac1_integer_powers),
        ("AC2 root/power set equivalence", ac2_root_power_sets),
        ("AC3 sheet drift", ac3_sheet_drift),
        ("AC4 noncommutativity", ac4_noncommutativity),
        ("AC5 shear, case-tree addition", ac5_shear_ccc),
        ("AC6 shear, sign addition", ac6_shear_sign),
        ("AC7 branch-cut jump law", ac7_jump_law),
        ("AC8 disk-chain realignment", ac8_disk_chain),
        (
            "AC9 Julia golden raster and cut scar",
            ac9_julia_golden_and_scar,
        ),
        ("AC10 render determinism", ac10_determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
