//! Integration and numerical-derivative kernels.
//!
//! Three primitives carry everything built on top of them:
//!
//! * [`segment_integral`] - adaptive Gauss-Legendre integration along a
//!   straight segment inside the half-plane (the half-plane is convex, so
//!   the segment between two interior points stays interior). Each panel is
//!   accepted when an embedded lower-order rule agrees with the high-order
//!   one within the local error budget; otherwise the panel is bisected.
//! * [`cauchy_derivative`] - f, f' or f'' from the Cauchy integral over a
//!   circle of radius `circle_ratio * Im z`, evaluated with the uniform
//!   trapezoid rule, which is spectrally accurate for holomorphic
//!   integrands.
//! * [`line_l2`] - the integral of |f|^2 over a horizontal line, truncated
//!   at a half-width that doubles until the outermost block stops
//!   contributing.
//!
//! [`hardy_norm`] takes the sup of [`line_l2`] over a log-spaced height set
//! and reports whether the sup was attained at the smallest height (the
//! y -> 0 boundary regime, which is where it lives for the kernel-type test
//! functions).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::domain::{HoloFun, Point, ScaleLevel, SupEstimate};
use crate::error::{ConfigError, QuadError};

/// Tolerances and node counts for every quadrature kernel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: usize,
    pub gauss_order: usize,
    pub circle_nodes: usize,
    /// Cauchy circle radius as a fraction of Im z; must stay in (0,1) so the
    /// circle cannot touch the real axis.
    pub circle_ratio: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_depth: 30,
            gauss_order: 15,
            circle_nodes: 64,
            circle_ratio: 0.5,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !self.rel_tol.is_finite() || self.rel_tol <= 0.0 {
            return Err(ConfigError::new("quad.rel_tol", "must be positive"));
        }
        if !self.abs_tol.is_finite() || self.abs_tol <= 0.0 {
            return Err(ConfigError::new("quad.abs_tol", "must be positive"));
        }
        if self.max_depth == 0 {
            return Err(ConfigError::new("quad.max_depth", "must be >= 1"));
        }
        if self.gauss_order < 2 {
            return Err(ConfigError::new("quad.gauss_order", "must be >= 2"));
        }
        if self.circle_nodes < 4 {
            return Err(ConfigError::new("quad.circle_nodes", "must be >= 4"));
        }
        if !(self.circle_ratio > 0.0 && self.circle_ratio < 1.0) {
            return Err(ConfigError::new(
                "quad.circle_ratio",
                "must lie strictly between 0 and 1",
            ));
        }
        Ok(())
    }
}

/// Converged integral value with its accumulated error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quadrature {
    pub value: Complex64,
    pub error: f64,
}

// ---- Gauss-Legendre rules ----

/// Nodes/weights on [-1, 1]. Computed once per order by Newton iteration on
/// the Legendre recurrence and cached process-wide.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn legendre_value_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn compute_rule(n: usize) -> GaussRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev initial guess, then Newton
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_value_and_deriv(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, d) = legendre_value_and_deriv(n, x);
        let w = 2.0 / ((1.0 - x * x) * d * d);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussRule { nodes, weights }
}

pub fn gauss_rule(order: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(order)
        .or_insert_with(|| Arc::new(compute_rule(order)))
        .clone()
}

// ---- adaptive panel integration over [0, 1] ----

trait QuadValue: Copy {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn scale(self, s: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

fn panel<T: QuadValue>(f: &impl Fn(f64) -> T, a: f64, b: f64, rule: &GaussRule) -> T {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = T::zero();
    for (x, w) in rule.nodes.iter().zip(rule.weights.iter()) {
        acc = acc.add(f(mid + half * x).scale(*w));
    }
    acc.scale(half)
}

struct PanelRec<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
    depth: usize,
}

/// Globally adaptive integration over [0, 1]: the panel with the largest
/// embedded-rule error estimate is bisected until the summed estimate meets
/// max(rel_tol * |integral|, abs_tol). Returns Err with the best value when
/// the depth or panel budget runs out first.
fn adaptive<T: QuadValue>(f: impl Fn(f64) -> T, cfg: &QuadConfig) -> Result<(T, f64), (T, f64)> {
    let high = gauss_rule(cfg.gauss_order);
    let low = gauss_rule((cfg.gauss_order / 2).max(2));
    let measure = |a: f64, b: f64, depth: usize| -> PanelRec<T> {
        let hi = panel(&f, a, b, &high);
        let lo = panel(&f, a, b, &low);
        PanelRec {
            a,
            b,
            value: hi,
            err: hi.add(lo.scale(-1.0)).magnitude(),
            depth,
        }
    };
    let mut panels = vec![measure(0.0, 1.0, 0)];
    let panel_budget = 16 * 1024;
    loop {
        let mut total = T::zero();
        let mut total_err = 0.0;
        let mut capped_err = 0.0;
        for p in &panels {
            total = total.add(p.value);
            total_err += p.err;
            if p.depth >= cfg.max_depth {
                capped_err += p.err;
            }
        }
        let tol = (cfg.rel_tol * total.magnitude()).max(cfg.abs_tol);
        if total_err <= tol {
            return Ok((total, total_err));
        }
        // unresolvable: panels at the depth cap already exceed the budget,
        // or the panel count is out of hand
        if capped_err > tol || panels.len() >= panel_budget {
            return Err((total, total_err));
        }
        // deterministic worst-panel selection: largest splittable error,
        // lowest index
        let mut worst = usize::MAX;
        for (i, p) in panels.iter().enumerate() {
            if p.depth < cfg.max_depth && (worst == usize::MAX || p.err > panels[worst].err) {
                worst = i;
            }
        }
        let PanelRec { a, b, depth, .. } = panels[worst];
        let mid = 0.5 * (a + b);
        panels[worst] = measure(a, mid, depth + 1);
        panels.push(measure(mid, b, depth + 1));
    }
}

// ---- public kernels ----

/// Integral of `h` along the straight segment `from → to`.
pub fn segment_integral(
    h: &HoloFun,
    from: Point,
    to: Point,
    cfg: &QuadConfig,
) -> Result<Quadrature, QuadError> {
    let za = from.to_complex();
    let zb = to.to_complex();
    if za == zb {
        return Ok(Quadrature {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
        });
    }
    let dir = zb - za;
    let f = |t: f64| {
        let z = za + dir * t;
        // the open segment stays strictly inside the half-plane; clamp the
        // endpoint rounding just in case
        let y = z.im.max(f64::MIN_POSITIVE);
        h.eval(Point::raw(z.re, y)) * dir
    };
    match adaptive(f, cfg) {
        Ok((value, error)) => Ok(Quadrature { value, error }),
        Err((value, error)) => Err(QuadError::DepthExhausted {
            depth: cfg.max_depth,
            value,
            estimate: error,
        }),
    }
}

/// n-th derivative (n = 0, 1, 2) via the Cauchy integral over the circle of
/// radius `circle_ratio * Im z` centred at z. The circle stays inside the
/// half-plane because the ratio is below 1.
pub fn cauchy_derivative(f: &HoloFun, z: Point, n: usize, cfg: &QuadConfig) -> Complex64 {
    assert!(n <= 2, "cauchy_derivative supports orders 0..=2");
    let r = cfg.circle_ratio * z.y();
    let m = cfg.circle_nodes;
    let factorial = [1.0, 1.0, 2.0][n];
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..m {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
        let e = Complex64::from_polar(1.0, theta);
        let zeta = Point::raw(z.x() + r * e.re, z.y() + r * e.im);
        let phase = Complex64::from_polar(1.0, -(n as f64) * theta);
        acc += f.eval(zeta) * phase;
    }
    acc * factorial / (m as f64 * r.powi(n as i32))
}

/// Exact derivative channel when present, Cauchy quadrature otherwise.
pub fn derivative(f: &HoloFun, z: Point, cfg: &QuadConfig) -> Complex64 {
    f.deriv_exact(z)
        .unwrap_or_else(|| cauchy_derivative(f, z, 1, cfg))
}

/// Outcome of the truncated improper integral over a horizontal line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineL2 {
    pub value: f64,
    pub error: f64,
    /// Half-width at which the doubling stopped.
    pub half_width: f64,
    /// True when the width cap was reached before the tail died out.
    pub truncated: bool,
}

const LINE_X0: f64 = 16.0;
const LINE_X_CAP: f64 = 1e7;

/// Integral of |f(x+iy)|^2 over x in (-inf, inf), truncated at a half-width
/// that doubles from 16 until the outermost pair of blocks contributes less
/// than `rel_tol` of the running total (or the 1e7 cap is hit, which sets
/// the `truncated` flag).
pub fn line_l2(f: &HoloFun, y: f64, cfg: &QuadConfig) -> Result<LineL2, QuadError> {
    assert!(y > 0.0, "line_l2 needs a height above the boundary");
    let square = |x: f64| {
        let v = f.eval(Point::raw(x, y));
        v.norm_sqr()
    };
    let block = |a: f64, b: f64| -> Result<(f64, f64), QuadError> {
        let g = |t: f64| square(a + (b - a) * t) * (b - a);
        match adaptive(g, cfg) {
            Ok((v, e)) => Ok((v, e)),
            Err((v, e)) => Err(QuadError::DepthExhausted {
                depth: cfg.max_depth,
                value: Complex64::new(v, 0.0),
                estimate: e,
            }),
        }
    };

    let (mut total, mut err) = block(-LINE_X0, LINE_X0)?;
    let mut x = LINE_X0;
    let mut truncated = false;
    loop {
        let next = 2.0 * x;
        let (right, er) = block(x, next)?;
        let (left, el) = block(-next, -x)?;
        total += left + right;
        err += el + er;
        x = next;
        let tail = left + right;
        if tail <= (cfg.rel_tol * total).max(cfg.abs_tol) {
            break;
        }
        if x >= LINE_X_CAP {
            truncated = true;
            break;
        }
    }
    Ok(LineL2 {
        value: total,
        error: err,
        half_width: x,
        truncated,
    })
}

/// 41 log-spaced heights in [1e-4, 1e3].
pub fn default_heights() -> Vec<f64> {
    crate::domain::log_heights(1e-4, 1e3, 41)
}

/// Hardy norm over a height set: sqrt of the max line integral. The
/// boundary flag marks a sup attained at the smallest height; the divergent
/// flag fires when the integral still grows by more than `tau` between the
/// two smallest heights.
pub fn hardy_norm(
    f: &HoloFun,
    heights: &[f64],
    cfg: &QuadConfig,
    tau: f64,
) -> Result<(SupEstimate, Vec<LineL2>), QuadError> {
    assert!(!heights.is_empty(), "height set must be nonempty");
    let mut sorted: Vec<f64> = heights.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut details = Vec::with_capacity(sorted.len());
    let mut levels = Vec::with_capacity(sorted.len());
    let mut best = f64::NEG_INFINITY;
    let mut best_y = sorted[0];
    for &y in &sorted {
        let l2 = line_l2(f, y, cfg)?;
        let s = l2.value.max(0.0).sqrt();
        details.push(l2);
        levels.push(ScaleLevel { scale: y, sup: s });
        if s > best {
            best = s;
            best_y = y;
        }
    }
    let divergent = levels.len() >= 2 && levels[0].sup > tau * levels[1].sup && levels[1].sup > 0.0;
    let boundary = best_y == sorted[0];
    Ok((
        SupEstimate {
            value: best.max(0.0),
            argmax: Point::raw(0.0, best_y),
            levels,
            divergent,
            boundary,
        },
        details,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::ops::extremal_fw;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y).unwrap()
    }

    #[test]
    fn gauss_rule_integrates_polynomials_exactly() {
        let rule = gauss_rule(15);
        // integrate x^28 over [-1,1]: 15-point rule is exact through degree 29
        let val: f64 = rule
            .nodes
            .iter()
            .zip(rule.weights.iter())
            .map(|(x, w)| w * x.powi(28))
            .sum();
        assert!((val - 2.0 / 29.0).abs() < 1e-14, "got {val}");
        let total: f64 = rule.weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn segment_of_constant() {
        let one = gallery::symbol("const:1").unwrap();
        let q = segment_integral(&one, pt(0.0, 1.0), pt(1.0, 1.0), &cfg()).unwrap();
        assert!((q.value - Complex64::new(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn segment_of_identity_function() {
        // integral of z from i to 2i = ((2i)^2 - i^2)/2 = -3/2
        let f = HoloFun::new("z", |p: Point| p.to_complex());
        let q = segment_integral(&f, pt(0.0, 1.0), pt(0.0, 2.0), &cfg()).unwrap();
        assert!((q.value - Complex64::new(-1.5, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn segment_of_reciprocal_gives_log2() {
        let f = HoloFun::new("1/z", |p: Point| 1.0 / p.to_complex());
        let q = segment_integral(&f, pt(0.0, 1.0), pt(0.0, 2.0), &cfg()).unwrap();
        assert!((q.value - Complex64::new(std::f64::consts::LN_2, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_length_segment_is_exactly_zero() {
        let f = HoloFun::new("z", |p: Point| p.to_complex());
        let q = segment_integral(&f, pt(0.0, 1.0), pt(0.0, 1.0), &cfg()).unwrap();
        assert_eq!(q.value, Complex64::new(0.0, 0.0));
        assert_eq!(q.error, 0.0);
    }

    #[test]
    fn cauchy_first_derivative_of_square() {
        let f = HoloFun::new("z^2", |p: Point| {
            let z = p.to_complex();
            z * z
        });
        let d = cauchy_derivative(&f, pt(0.0, 1.0), 1, &cfg());
        assert!((d - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn cauchy_second_derivative_of_square() {
        let f = HoloFun::new("z^2", |p: Point| {
            let z = p.to_complex();
            z * z
        });
        let d = cauchy_derivative(&f, pt(3.0, 1.0), 2, &cfg());
        assert!((d - Complex64::new(2.0, 0.0)).norm() < 1e-11);
    }

    #[test]
    fn cauchy_matches_exact_channel_of_exp_iz() {
        let g = gallery::symbol("exp_iz").unwrap();
        let z = pt(0.0, 1.0);
        let d = cauchy_derivative(&g, z, 1, &cfg());
        let exact = g.deriv_exact(z).unwrap();
        assert!((d - exact).norm() < 1e-10);
    }

    #[test]
    fn line_l2_of_extremal_at_height_one() {
        // closed form: v^3/(2(y+v)^3) with v = 1, y = 1 -> 1/16
        let f = extremal_fw(Point::i());
        let l2 = line_l2(&f, 1.0, &cfg()).unwrap();
        assert!((l2.value - 0.0625).abs() < 1e-10, "got {}", l2.value);
        assert!(!l2.truncated);
    }

    #[test]
    fn line_l2_of_extremal_near_boundary() {
        let f = extremal_fw(Point::i());
        let l2 = line_l2(&f, 0.001, &cfg()).unwrap();
        let want = 1.0 / (2.0 * 1.001f64.powi(3));
        assert!((l2.value - want).abs() < 1e-9, "got {}", l2.value);
    }

    #[test]
    fn line_l2_of_zero() {
        let f = gallery::symbol("zero").unwrap();
        let l2 = line_l2(&f, 1.0, &cfg()).unwrap();
        assert_eq!(l2.value, 0.0);
    }

    #[test]
    fn hardy_norm_of_extremal_is_inv_sqrt2() {
        let f = extremal_fw(Point::i());
        let (sup, _) = hardy_norm(&f, &default_heights(), &cfg(), 1.5).unwrap();
        let want = 0.5f64.sqrt();
        assert!(
            (sup.value - want).abs() < 0.01 * want,
            "got {} want {want}",
            sup.value
        );
        assert!(sup.boundary, "sup should sit at the smallest height");
        assert!(!sup.divergent);
    }

    #[test]
    fn hardy_norm_dilation_invariance() {
        let a = hardy_norm(&extremal_fw(Point::i()), &default_heights(), &cfg(), 1.5)
            .unwrap()
            .0
            .value;
        let b = hardy_norm(&extremal_fw(pt(0.0, 2.0)), &default_heights(), &cfg(), 1.5)
            .unwrap()
            .0
            .value;
        assert!((a - b).abs() < 0.01 * a);
    }

    #[test]
    fn hardy_norm_of_zero() {
        let f = gallery::symbol("zero").unwrap();
        let (sup, _) = hardy_norm(&f, &default_heights(), &cfg(), 1.5).unwrap();
        assert_eq!(sup.value, 0.0);
    }
}
