//! The integral-type operators and the Bloch-space functionals.
//!
//! For a fixed symbol g and base point z0, the three operators act on f by
//!
//! ```text
//! (J_g f)(z) = integral from z0 to z of f * g'
//! (I_g f)(z) = integral from z0 to z of f' * g
//! (M_g f)(z) = g(z) f(z)
//! ```
//!
//! so that J_g f + I_g f = M_g f - f(z0) g(z0) by the fundamental theorem of
//! calculus; `ftc_identity_check` measures the residual of the whole
//! quadrature stack against that exact identity.
//!
//! The Bloch seminorm of an operator image never needs quadrature: the
//! integrand itself is the derivative, (J_g f)' = f g' and (I_g f)' = f' g.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::domain::{HoloFun, Point, SearchRegion, SupEstimate};
use crate::error::QuadError;
use crate::quad::{self, QuadConfig};
use crate::search::{sup_search, SearchOptions, SupSearchResult};

/// Which operator to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorKind {
    #[serde(rename = "jg")]
    Jg,
    #[serde(rename = "ig")]
    Ig,
    #[serde(rename = "mg")]
    Mg,
}

impl OperatorKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "jg" => Some(OperatorKind::Jg),
            "ig" => Some(OperatorKind::Ig),
            "mg" => Some(OperatorKind::Mg),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Jg => "jg",
            OperatorKind::Ig => "ig",
            OperatorKind::Mg => "mg",
        }
    }
}

/// Value of an operator at a point, with the quadrature error estimate and
/// the path endpoints that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorResult {
    pub value: Complex64,
    pub quad_error: f64,
    pub path: (Point, Point),
}

/// Kernel-type test function concentrated at w:
/// f_w(z) = (Im w)^{3/2} / (sqrt(pi) (z - conj(w))^2), holomorphic on the
/// half-plane because the pole sits at conj(w) below the boundary.
pub fn extremal_fw(w: Point) -> HoloFun {
    let v = w.y();
    let pole = Complex64::new(w.x(), -v);
    let scale = v.powf(1.5) / PI.sqrt();
    HoloFun::with_deriv(
        format!("fw:{},{}", w.x(), w.y()),
        move |p: Point| {
            let d = p.to_complex() - pole;
            scale / (d * d)
        },
        move |p: Point| {
            let d = p.to_complex() - pole;
            -2.0 * scale / (d * d * d)
        },
    )
}

fn integrand(kind: OperatorKind, g: &HoloFun, f: &HoloFun, cfg: &QuadConfig) -> HoloFun {
    let g = g.clone();
    let f = f.clone();
    let cfg = *cfg;
    match kind {
        OperatorKind::Jg => {
            HoloFun::new("f*g'", move |p| f.eval(p) * quad::derivative(&g, p, &cfg))
        }
        OperatorKind::Ig => {
            HoloFun::new("f'*g", move |p| quad::derivative(&f, p, &cfg) * g.eval(p))
        }
        OperatorKind::Mg => unreachable!("multiplication needs no path integral"),
    }
}

/// Apply an operator at z, integrating along the straight segment from z0.
pub fn apply(
    kind: OperatorKind,
    g: &HoloFun,
    f: &HoloFun,
    z0: Point,
    z: Point,
    cfg: &QuadConfig,
) -> Result<OperatorResult, QuadError> {
    if kind == OperatorKind::Mg {
        return Ok(OperatorResult {
            value: g.eval(z) * f.eval(z),
            quad_error: 0.0,
            path: (z0, z),
        });
    }
    let h = integrand(kind, g, f, cfg);
    let q = quad::segment_integral(&h, z0, z, cfg)?;
    Ok(OperatorResult {
        value: q.value,
        quad_error: q.error,
        path: (z0, z),
    })
}

/// Same operator evaluated along the two-leg polyline z0 -> (Re z, Im z0)
/// -> z. Path independence of the segment route is checked against this.
pub fn apply_polyline(
    kind: OperatorKind,
    g: &HoloFun,
    f: &HoloFun,
    z0: Point,
    z: Point,
    cfg: &QuadConfig,
) -> Result<OperatorResult, QuadError> {
    if kind == OperatorKind::Mg {
        return apply(kind, g, f, z0, z, cfg);
    }
    let h = integrand(kind, g, f, cfg);
    let mid = Point::new(z.x(), z0.y()).expect("corner of the polyline stays in the half-plane");
    let a = quad::segment_integral(&h, z0, mid, cfg)?;
    let b = quad::segment_integral(&h, mid, z, cfg)?;
    Ok(OperatorResult {
        value: a.value + b.value,
        quad_error: a.error + b.error,
        path: (z0, z),
    })
}

/// Max residual of J_g f + I_g f - f g + f(z0) g(z0) over the sample set.
/// The identity is exact, so the residual bounds the quadrature stack.
pub fn ftc_identity_check(
    g: &HoloFun,
    f: &HoloFun,
    z0: Point,
    sample: &[Point],
    cfg: &QuadConfig,
) -> Result<f64, QuadError> {
    let anchor = f.eval(z0) * g.eval(z0);
    let mut worst = 0.0f64;
    for &z in sample {
        let j = apply(OperatorKind::Jg, g, f, z0, z, cfg)?;
        let i = apply(OperatorKind::Ig, g, f, z0, z, cfg)?;
        let m = g.eval(z) * f.eval(z);
        let residual = (j.value + i.value - m + anchor).norm();
        worst = worst.max(residual);
    }
    Ok(worst)
}

/// What a Bloch functional is being applied to: a plain function or an
/// operator image (kind, g, f, z0).
#[derive(Clone, Debug)]
pub enum BlochTarget {
    Plain(HoloFun),
    Operator {
        kind: OperatorKind,
        g: HoloFun,
        f: HoloFun,
        z0: Point,
    },
}

impl BlochTarget {
    /// Exact derivative of the target; operator images differentiate by the
    /// fundamental theorem of calculus, so no quadrature is involved.
    pub fn derivative_at(&self, p: Point, cfg: &QuadConfig) -> Complex64 {
        match self {
            BlochTarget::Plain(h) => quad::derivative(h, p, cfg),
            BlochTarget::Operator { kind, g, f, .. } => match kind {
                OperatorKind::Jg => f.eval(p) * quad::derivative(g, p, cfg),
                OperatorKind::Ig => quad::derivative(f, p, cfg) * g.eval(p),
                OperatorKind::Mg => {
                    quad::derivative(g, p, cfg) * f.eval(p)
                        + g.eval(p) * quad::derivative(f, p, cfg)
                }
            },
        }
    }

    /// Value at i, which the Bloch norm adds to the seminorm.
    pub fn value_at_i(&self, cfg: &QuadConfig) -> Result<OperatorResult, QuadError> {
        match self {
            BlochTarget::Plain(h) => Ok(OperatorResult {
                value: h.eval(Point::i()),
                quad_error: 0.0,
                path: (Point::i(), Point::i()),
            }),
            BlochTarget::Operator { kind, g, f, z0 } => apply(*kind, g, f, *z0, Point::i(), cfg),
        }
    }
}

/// Bloch seminorm sup Im z |F'(z)| over the region.
pub fn bloch_seminorm(
    target: &BlochTarget,
    region: &SearchRegion,
    cfg: &QuadConfig,
    opts: &SearchOptions,
) -> SupSearchResult {
    let stat = move |p: Point| p.y() * target.derivative_at(p, cfg).norm();
    sup_search(&stat, region, opts)
}

/// Bloch norm |F(i)| + seminorm. A divergent seminorm makes the norm
/// divergent; the reported value is then the finite part observed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlochNorm {
    pub value: f64,
    pub value_at_i: f64,
    pub seminorm: SupEstimate,
    pub quad_error: f64,
}

pub fn bloch_norm(
    target: &BlochTarget,
    region: &SearchRegion,
    cfg: &QuadConfig,
    opts: &SearchOptions,
) -> Result<BlochNorm, QuadError> {
    let at_i = target.value_at_i(cfg)?;
    let semi = bloch_seminorm(target, region, cfg, opts);
    Ok(BlochNorm {
        value: at_i.value.norm() + semi.estimate.value,
        value_at_i: at_i.value.norm(),
        seminorm: semi.estimate,
        quad_error: at_i.quad_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y).unwrap()
    }

    #[test]
    fn extremal_value_at_its_center() {
        // f_i(i) = 1/(sqrt(pi) (2i)^2) = -1/(4 sqrt(pi))
        let f = extremal_fw(Point::i());
        let got = f.eval(Point::i());
        let want = Complex64::new(-1.0 / (4.0 * PI.sqrt()), 0.0);
        assert!((got - want).norm() < 1e-15, "got {got}");
    }

    #[test]
    fn extremal_modulus_identities() {
        // |f_w(w)| = 1/(4 sqrt(pi) sqrt(Im w)), |f_w'(w)| = 1/(4 sqrt(pi) (Im w)^{3/2})
        let w = pt(0.0, 4.0);
        let f = extremal_fw(w);
        assert!((f.eval(w).norm() - 1.0 / (8.0 * PI.sqrt())).abs() < 1e-15);
        let w = Point::i();
        let f = extremal_fw(w);
        assert!((f.deriv_exact(w).unwrap().norm() - 1.0 / (4.0 * PI.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn jg_of_constant_symbol_vanishes() {
        let g = gallery::symbol("const:2").unwrap();
        let f = extremal_fw(Point::i());
        let r = apply(OperatorKind::Jg, &g, &f, Point::i(), pt(1.0, 2.0), &cfg()).unwrap();
        assert!(r.value.norm() < 1e-13);
    }

    #[test]
    fn ig_of_constant_function_vanishes() {
        let g = gallery::symbol("cayley").unwrap();
        let f = gallery::symbol("const:3").unwrap();
        let r = apply(OperatorKind::Ig, &g, &f, Point::i(), pt(-2.0, 0.5), &cfg()).unwrap();
        assert!(r.value.norm() < 1e-13);
    }

    #[test]
    fn mg_is_pointwise_product() {
        let g = gallery::symbol("inv").unwrap();
        let f = extremal_fw(Point::i());
        let r = apply(OperatorKind::Mg, &g, &f, Point::i(), Point::i(), &cfg()).unwrap();
        let want = Complex64::new(-0.5 / (4.0 * PI.sqrt()), 0.0);
        assert!((r.value - want).norm() < 1e-15);
        assert_eq!(r.quad_error, 0.0);
    }

    #[test]
    fn straight_and_polyline_paths_agree() {
        let g = gallery::symbol("exp_iz").unwrap();
        let f = extremal_fw(Point::i());
        let z0 = Point::i();
        let z = pt(1.0, 2.0);
        let a = apply(OperatorKind::Jg, &g, &f, z0, z, &cfg()).unwrap();
        let b = apply_polyline(OperatorKind::Jg, &g, &f, z0, z, &cfg()).unwrap();
        assert!(
            (a.value - b.value).norm() < 1e-9,
            "straight {} vs polyline {}",
            a.value,
            b.value
        );
    }

    #[test]
    fn ftc_identity_holds_through_the_stack() {
        let g = gallery::symbol("cayley").unwrap();
        let f = extremal_fw(Point::i());
        let sample: Vec<Point> =
            crate::domain::region_points(&SearchRegion::new(0.25, 4.0, 3.0, 5, 5).unwrap());
        let res = ftc_identity_check(&g, &f, Point::i(), &sample, &cfg()).unwrap();
        assert!(res <= 1e-7, "residual {res}");
    }

    #[test]
    fn ftc_identity_collapses_for_constant_factors() {
        let sample: Vec<Point> =
            crate::domain::region_points(&SearchRegion::new(0.25, 4.0, 3.0, 5, 5).unwrap());
        let cfg = cfg();
        let g_const = gallery::symbol("const:2").unwrap();
        let f_const = gallery::symbol("const:3").unwrap();
        let g = gallery::symbol("cayley").unwrap();
        let f = extremal_fw(Point::i());
        for (gg, ff) in [(&g_const, &f), (&g, &f_const), (&g_const, &f_const)] {
            let res = ftc_identity_check(gg, ff, Point::i(), &sample, &cfg).unwrap();
            assert!(
                res <= cfg.abs_tol,
                "residual {res:.3e} for {}/{}",
                gg.label(),
                ff.label()
            );
        }
    }

    #[test]
    fn quad_error_respects_the_configured_tolerance() {
        let cfg = cfg();
        let g = gallery::symbol("exp_iz").unwrap();
        let f = extremal_fw(Point::i());
        for &(x, y) in &[(1.0, 2.0), (-3.0, 0.5), (5.0, 4.0)] {
            let r = apply(OperatorKind::Jg, &g, &f, Point::i(), pt(x, y), &cfg).unwrap();
            let budget = (cfg.rel_tol * r.value.norm()).max(cfg.abs_tol);
            assert!(r.quad_error <= budget, "{} > {budget}", r.quad_error);
        }
    }

    #[test]
    fn ftc_identity_at_base_point_is_exact() {
        let g = gallery::symbol("exp_iz").unwrap();
        let f = extremal_fw(Point::i());
        let res = ftc_identity_check(&g, &f, Point::i(), &[Point::i()], &cfg()).unwrap();
        assert!(res < 1e-15);
    }

    #[test]
    fn bloch_seminorm_of_constant_vanishes() {
        let t = BlochTarget::Plain(gallery::symbol("const:7").unwrap());
        let out = bloch_seminorm(
            &t,
            &SearchRegion::default_region(),
            &cfg(),
            &SearchOptions::default(),
        );
        assert_eq!(out.estimate.value, 0.0);
        assert!(!out.estimate.divergent);
    }

    #[test]
    fn bloch_seminorm_landmark_for_inv() {
        // sup y/(y+1)^2 = 1/4 at (0, 1)
        let t = BlochTarget::Plain(gallery::symbol("inv").unwrap());
        let out = bloch_seminorm(
            &t,
            &SearchRegion::default_region(),
            &cfg(),
            &SearchOptions::default(),
        );
        assert!(
            (out.estimate.value - 0.25).abs() < 1e-4,
            "got {}",
            out.estimate.value
        );
        assert!(out.estimate.argmax.x().abs() < 0.02);
        assert!((out.estimate.argmax.y() - 1.0).abs() < 0.02);
    }

    #[test]
    fn bloch_seminorm_divergence_for_linear_growth() {
        let t = BlochTarget::Plain(HoloFun::with_deriv(
            "z",
            |p: Point| p.to_complex(),
            |_| Complex64::new(1.0, 0.0),
        ));
        let out = bloch_seminorm(
            &t,
            &SearchRegion::default_region(),
            &cfg(),
            &SearchOptions::default(),
        );
        assert!(out.estimate.divergent);
    }

    #[test]
    fn bloch_norm_of_constant_is_its_modulus() {
        let t = BlochTarget::Plain(gallery::symbol("const:1,-2").unwrap());
        let n = bloch_norm(
            &t,
            &SearchRegion::default_region(),
            &cfg(),
            &SearchOptions::default(),
        )
        .unwrap();
        assert!((n.value - 5.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bloch_norm_of_jg_with_constant_symbol_vanishes() {
        let t = BlochTarget::Operator {
            kind: OperatorKind::Jg,
            g: gallery::symbol("const:5").unwrap(),
            f: extremal_fw(Point::i()),
            z0: pt(2.0, 3.0),
        };
        let n = bloch_norm(
            &t,
            &SearchRegion::default_region(),
            &cfg(),
            &SearchOptions::default(),
        )
        .unwrap();
        assert!(n.value < 1e-12, "got {}", n.value);
    }

    #[test]
    fn operator_linearity() {
        let g = gallery::symbol("exp_iz").unwrap();
        let f1 = extremal_fw(Point::i());
        let f2 = extremal_fw(pt(1.0, 2.0));
        let alpha = Complex64::new(2.0, 1.0);
        let beta = Complex64::new(-0.5, 0.25);
        let combo = HoloFun::linear_combination(alpha, &f1, beta, &f2);
        let z0 = Point::i();
        let z = pt(-1.0, 0.5);
        for kind in [OperatorKind::Jg, OperatorKind::Ig] {
            let lhs = apply(kind, &g, &combo, z0, z, &cfg()).unwrap().value;
            let a = apply(kind, &g, &f1, z0, z, &cfg()).unwrap().value;
            let b = apply(kind, &g, &f2, z0, z, &cfg()).unwrap().value;
            assert!(
                (lhs - (alpha * a + beta * b)).norm() < 1e-9,
                "{:?}: {lhs} vs {}",
                kind,
                alpha * a + beta * b
            );
        }
    }
}
