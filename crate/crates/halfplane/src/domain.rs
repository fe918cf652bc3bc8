//! Domain types shared by every computation: points of the open upper
//! half-plane, evaluatable holomorphic functions with an exact-derivative
//! channel, horizontal strips, and the grid geometry used by supremum
//! searches.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::DomainError;

/// A point x + iy of the open upper half-plane (y > 0 strictly).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    x: f64,
    y: f64,
}

impl Point {
    /// Validated constructor: rejects y <= 0 and non-finite coordinates.
    pub fn new(x: f64, y: f64) -> Result<Self, DomainError> {
        if !x.is_finite() || !y.is_finite() {
            return Err(DomainError::NonFinitePoint { x, y });
        }
        if y <= 0.0 {
            return Err(DomainError::PointBelowBoundary { x, y });
        }
        Ok(Point { x, y })
    }

    /// Constructor for interior code paths where y > 0 is already known.
    pub(crate) fn raw(x: f64, y: f64) -> Self {
        debug_assert!(y > 0.0 && x.is_finite() && y.is_finite());
        Point { x, y }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// The point i = (0, 1), the conventional base point of the half-plane.
    pub fn i() -> Self {
        Point { x: 0.0, y: 1.0 }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

/// Horizontal strip { z : a <= Im z <= b } with 0 < a <= b.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Strip {
    a: f64,
    b: f64,
}

impl Strip {
    pub fn new(a: f64, b: f64) -> Result<Self, DomainError> {
        if !a.is_finite() || !b.is_finite() || a <= 0.0 || b < a {
            return Err(DomainError::InvalidStrip { a, b });
        }
        Ok(Strip { a, b })
    }

    pub fn lower(&self) -> f64 {
        self.a
    }

    pub fn upper(&self) -> f64 {
        self.b
    }
}

/// Rectangular-in-log search region: heights log-spaced in [y_min, y_max],
/// abscissae sinh-spaced in [-x_max, x_max].
///
/// Degenerate regions (y_min == y_max, x_max == 0, single-cell grids) are
/// allowed; `region_points` then collapses to the obvious point set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchRegion {
    pub y_min: f64,
    pub y_max: f64,
    pub x_max: f64,
    pub y_grid: usize,
    pub x_grid: usize,
}

impl SearchRegion {
    pub fn new(
        y_min: f64,
        y_max: f64,
        x_max: f64,
        y_grid: usize,
        x_grid: usize,
    ) -> Result<Self, DomainError> {
        let r = SearchRegion {
            y_min,
            y_max,
            x_max,
            y_grid,
            x_grid,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), DomainError> {
        if !self.y_max.is_finite() || self.y_min <= 0.0 || self.y_max < self.y_min {
            return Err(DomainError::InvalidRegion(format!(
                "need 0 < y_min <= y_max, got y_min={} y_max={}",
                self.y_min, self.y_max
            )));
        }
        if !self.x_max.is_finite() || self.x_max < 0.0 {
            return Err(DomainError::InvalidRegion(format!(
                "need x_max >= 0, got {}",
                self.x_max
            )));
        }
        if self.y_grid == 0 || self.x_grid == 0 {
            return Err(DomainError::InvalidRegion(format!(
                "grid counts must be >= 1, got {}x{}",
                self.y_grid, self.x_grid
            )));
        }
        Ok(())
    }

    /// Spans 12 decades around the critical boundary/infinity regimes at
    /// tractable cost.
    pub fn default_region() -> Self {
        SearchRegion {
            y_min: 1e-6,
            y_max: 1e6,
            x_max: 1e6,
            y_grid: 61,
            x_grid: 129,
        }
    }

    /// One refinement level: grid counts 2n-1 so the refined grid contains
    /// every point of the coarse one.
    pub fn refined(&self) -> Self {
        SearchRegion {
            y_grid: 2 * self.y_grid - 1,
            x_grid: 2 * self.x_grid - 1,
            ..*self
        }
    }
}

/// Log-spaced heights in [lo, hi]; a single-count grid collapses to lo.
pub fn log_heights(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    debug_assert!(lo > 0.0 && hi >= lo && count >= 1);
    if count == 1 || lo == hi {
        return vec![lo; count];
    }
    let (la, lb) = (lo.ln(), hi.ln());
    (0..count)
        .map(|k| {
            let t = k as f64 / (count - 1) as f64;
            (la + t * (lb - la)).exp()
        })
        .collect()
}

/// Sinh-spaced abscissae in [-half, half]: dense near 0, geometric tails.
pub fn sinh_abscissae(half: f64, count: usize) -> Vec<f64> {
    debug_assert!(half >= 0.0 && count >= 1);
    if count == 1 || half == 0.0 {
        return vec![0.0; count];
    }
    let u_max = half.asinh();
    (0..count)
        .map(|j| {
            let t = 2.0 * j as f64 / (count - 1) as f64 - 1.0;
            (u_max * t).sinh()
        })
        .collect()
}

/// Deterministic enumeration of the region grid, heights outer, abscissae
/// inner. Identical inputs produce the identical sequence.
pub fn region_points(r: &SearchRegion) -> Vec<Point> {
    let heights = log_heights(r.y_min, r.y_max, r.y_grid);
    let xs = sinh_abscissae(r.x_max, r.x_grid);
    let mut pts = Vec::with_capacity(heights.len() * xs.len());
    for &y in &heights {
        for &x in &xs {
            pts.push(Point::raw(x, y));
        }
    }
    pts
}

/// One (region scale, sup at that scale) pair recorded by a supremum search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleLevel {
    /// Smallest height of the sub-region swept at this level.
    pub scale: f64,
    /// Cumulative supremum estimate over all levels up to this one.
    pub sup: f64,
}

/// Result of a supremum estimation over a region (or a height set).
///
/// `value` is the max over the recorded levels. `divergent` fires when the
/// sup grows by more than the configured factor between the two largest
/// region scales; the recorded value is then the observed finite max and the
/// flag stands in for +infinity. `boundary` marks a sup attained at the
/// smallest height sampled, i.e. the y -> 0 limit regime.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupEstimate {
    pub value: f64,
    pub argmax: Point,
    pub levels: Vec<ScaleLevel>,
    pub divergent: bool,
    pub boundary: bool,
}

type EvalFn = dyn Fn(Point) -> Complex64 + Send + Sync;

/// An evaluatable holomorphic function on the upper half-plane.
///
/// Evaluation is pure and reentrant; when the exact derivative channel is
/// present it agrees with the Cauchy-quadrature derivative to quadrature
/// tolerance (tested in `quad`). Expression-backed functions map pointwise
/// evaluation errors to NaN, which downstream sweeps skip and report.
#[derive(Clone)]
pub struct HoloFun {
    label: String,
    eval: Arc<EvalFn>,
    deriv: Option<Arc<EvalFn>>,
}

impl HoloFun {
    pub fn new<F>(label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(Point) -> Complex64 + Send + Sync + 'static,
    {
        HoloFun {
            label: label.into(),
            eval: Arc::new(eval),
            deriv: None,
        }
    }

    pub fn with_deriv<F, D>(label: impl Into<String>, eval: F, deriv: D) -> Self
    where
        F: Fn(Point) -> Complex64 + Send + Sync + 'static,
        D: Fn(Point) -> Complex64 + Send + Sync + 'static,
    {
        HoloFun {
            label: label.into(),
            eval: Arc::new(eval),
            deriv: Some(Arc::new(deriv)),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, p: Point) -> Complex64 {
        (self.eval)(p)
    }

    /// Exact derivative channel, if one was attached.
    pub fn deriv_exact(&self, p: Point) -> Option<Complex64> {
        self.deriv.as_ref().map(|d| d(p))
    }

    pub fn has_deriv(&self) -> bool {
        self.deriv.is_some()
    }

    /// alpha*f + beta*g, with the exact channel combined when both sides
    /// carry one.
    pub fn linear_combination(
        alpha: Complex64,
        f: &HoloFun,
        beta: Complex64,
        g: &HoloFun,
    ) -> HoloFun {
        let (fe, ge) = (f.eval.clone(), g.eval.clone());
        let label = format!("{}*({}) + {}*({})", alpha, f.label, beta, g.label);
        let eval = move |p: Point| alpha * fe(p) + beta * ge(p);
        match (f.deriv.clone(), g.deriv.clone()) {
            (Some(fd), Some(gd)) => {
                HoloFun::with_deriv(label, eval, move |p| alpha * fd(p) + beta * gd(p))
            }
            _ => HoloFun::new(label, eval),
        }
    }
}

impl fmt::Debug for HoloFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HoloFun")
            .field("label", &self.label)
            .field("has_deriv", &self.deriv.is_some())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_rejects_closed_lower_half_plane() {
        assert!(Point::new(0.0, 0.0).is_err());
        assert!(Point::new(1.0, -2.0).is_err());
        assert!(Point::new(f64::NAN, 1.0).is_err());
        assert!(Point::new(3.0, 1e-12).is_ok());
    }

    #[test]
    fn strip_ordering() {
        assert!(Strip::new(0.5, 2.0).is_ok());
        assert!(Strip::new(2.0, 0.5).is_err());
        assert!(Strip::new(0.0, 1.0).is_err());
    }

    #[test]
    fn degenerate_region_is_a_single_cell() {
        let r = SearchRegion::new(1.0, 1.0, 0.0, 1, 1).unwrap();
        let pts = region_points(&r);
        assert_eq!(pts, vec![Point::raw(0.0, 1.0)]);
    }

    #[test]
    fn log_spacing_is_forced() {
        let r = SearchRegion::new(0.01, 100.0, 0.0, 5, 1).unwrap();
        let heights: Vec<f64> = region_points(&r).iter().map(|p| p.y()).collect();
        let expected = [0.01, 0.1, 1.0, 10.0, 100.0];
        for (h, e) in heights.iter().zip(expected.iter()) {
            assert!((h - e).abs() <= 1e-12 * e, "{h} vs {e}");
        }
    }

    #[test]
    fn grid_product_count() {
        let r = SearchRegion::new(0.1, 10.0, 5.0, 7, 11).unwrap();
        assert_eq!(region_points(&r).len(), 77);
    }

    #[test]
    fn region_points_is_pure() {
        let r = SearchRegion::default_region();
        let a = region_points(&r);
        let b = region_points(&r);
        assert_eq!(a, b);
    }

    #[test]
    fn sinh_grid_hits_center_and_edges() {
        let xs = sinh_abscissae(1e6, 129);
        assert_eq!(xs[64], 0.0);
        assert!((xs[0] + 1e6).abs() < 1e-3);
        assert!((xs[128] - 1e6).abs() < 1e-3);
    }

    #[test]
    fn linear_combination_evaluates() {
        let f = HoloFun::with_deriv("z", |p| p.to_complex(), |_| Complex64::new(1.0, 0.0));
        let g = HoloFun::with_deriv(
            "1",
            |_| Complex64::new(1.0, 0.0),
            |_| Complex64::new(0.0, 0.0),
        );
        let h =
            HoloFun::linear_combination(Complex64::new(2.0, 0.0), &f, Complex64::new(0.0, 1.0), &g);
        let p = Point::new(1.0, 1.0).unwrap();
        assert_eq!(h.eval(p), Complex64::new(2.0, 3.0));
        assert_eq!(h.deriv_exact(p).unwrap(), Complex64::new(2.0, 0.0));
    }
}
