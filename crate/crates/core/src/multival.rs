//! Full value sets of `z^(1/n)` and `z^(p/q)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::polar::{exp_polar, to_polar, RectComplex};

/// Default absolute tolerance for [`match_permutation`].
pub const MATCH_TOL: f64 = 1e-9;

/// A reduced fraction `p/q` with `q ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalExponent {
    p: i64,
    q: i64,
}

impl RationalExponent {
    /// Reduces `p/q` to lowest terms with a positive denominator.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Parse("exponent denominator is zero".into()));
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        Ok(RationalExponent { p, q })
    }

    pub fn integer(n: i64) -> Self {
        RationalExponent { p: n, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    pub fn is_integer(&self) -> bool {
        self.q == 1
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RationalExponent {
    type Err = Error;

    /// `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed rational exponent {s:?}"));
        let int = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
        match s.split_once('/') {
            Some((p, q)) => RationalExponent::new(int(p)?, int(q)?),
            None => Ok(RationalExponent::integer(int(s)?)),
        }
    }
}

/// The values of a multivalued power, indexed by the branch integer `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueSet {
    pub values: Vec<RectComplex>,
    pub k_index: Vec<i64>,
    /// Unreduced argument of each value, i.e. not folded into `(-π, π]`.
    pub arguments: Vec<f64>,
}

impl ValueSet {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Smallest distance between two distinct members; `+∞` for fewer than two.
    pub fn min_pairwise_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.values.iter().enumerate() {
            for b in &self.values[i + 1..] {
                best = best.min(a.dist(*b));
            }
        }
        best
    }

    /// CSV with header `k,re,im,modulus,argument`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,re,im,modulus,argument\n");
        for ((k, v), arg) in self.k_index.iter().zip(&self.values).zip(&self.arguments) {
            out.push_str(&format!("{},{},{},{},{}\n", k, v.re, v.im, v.abs(), arg));
        }
        out
    }
}

/// `|z|^{1/n} e^{i(θ+2kπ)/n}` for `k = 0..n`, with `θ` the principal argument.
pub fn nth_roots(z: RectComplex, n: u32) -> Result<ValueSet> {
    if n == 0 {
        return Err(Error::domain("zeroth root"));
    }
    rational_pow_values(z, RationalExponent::new(1, i64::from(n))?)
}

/// `|z|^{p/q} e^{i(θ+2kπ)p/q}` for `k = 0..q`.
pub fn rational_pow_values(z: RectComplex, e: RationalExponent) -> Result<ValueSet> {
    if z.is_zero() {
        return Err(Error::domain("multivalued power of zero"));
    }
    let polar = to_polar(z);
    let ratio = e.value();
    let log_modulus = ratio * polar.r.ln();

    let mut set = ValueSet {
        values: Vec::with_capacity(e.q() as usize),
        k_index: Vec::with_capacity(e.q() as usize),
        arguments: Vec::with_capacity(e.q() as usize),
    };
    for k in 0..e.q() {
        let arg = (polar.theta + 2.0 * PI * k as f64) * ratio;
        set.values.push(exp_polar(log_modulus, arg));
        set.k_index.push(k);
        set.arguments.push(arg);
    }
    Ok(set)
}

/// Finds the bijection `i ↦ σ(i)` with `|a[i] − b[σ(i)]| ≤ tol`.
///
/// Values are compared in rectangular form, which already identifies
/// arguments that agree modulo `2π`. Returns the pairs `(i, σ(i))` in order of `i`.
pub fn match_permutation(a: &ValueSet, b: &ValueSet, tol: f64) -> Result<Vec<(usize, usize)>> {
    if a.len() != b.len() {
        return Err(Error::domain(format!(
            "value sets differ in size ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    let mut taken = vec![false; b.len()];
    let mut pairs = Vec::with_capacity(a.len());
    for (i, va) in a.values.iter().enumerate() {
        let mut hits = b
            .values
            .iter()
            .enumerate()
            .filter(|(_, vb)| va.dist(**vb) <= tol)
            .map(|(j, _)| j);
        let j = hits.next().ok_or(Error::NoMatch { index: i })?;
        if hits.next().is_some() {
            return Err(Error::AmbiguousMatch { index: i });
        }
        if std::mem::replace(&mut taken[j], true) {
            return Err(Error::NoMatch { index: i });
        }
        pairs.push((i, j));
    }
    Ok(pairs)
}
