//! The three operators and the identity that ties them together:
//! J_g f + I_g f = M_g f - f(z0) g(z0), exact in theory, so the measured
//! residual bounds the whole quadrature stack. Also checks that the
//! straight-segment path agrees with a two-leg polyline.
//!
//! ```bash
//! cargo run -p halfplane --example operator_identity
//! ```

use halfplane::domain::region_points;
use halfplane::gallery;
use halfplane::ops::{apply, apply_polyline, ftc_identity_check};
use halfplane::{extremal_fw, OperatorKind, Point, QuadConfig, SearchRegion};

fn main() {
    let cfg = QuadConfig::default();
    let z0 = Point::i();
    let z = Point::new(1.0, 2.0).unwrap();
    let g = gallery::symbol("exp_iz").unwrap();
    let f = extremal_fw(Point::i());

    for kind in [OperatorKind::Jg, OperatorKind::Ig, OperatorKind::Mg] {
        let r = apply(kind, &g, &f, z0, z, &cfg).unwrap();
        println!(
            "{}  value = {:.12}   quad error = {:.2e}",
            kind.name(),
            r.value,
            r.quad_error
        );
    }

    let straight = apply(OperatorKind::Jg, &g, &f, z0, z, &cfg).unwrap().value;
    let two_leg = apply_polyline(OperatorKind::Jg, &g, &f, z0, z, &cfg)
        .unwrap()
        .value;
    println!(
        "\npath independence: |straight - polyline| = {:.2e}",
        (straight - two_leg).norm()
    );

    let sample = region_points(&SearchRegion::new(0.25, 4.0, 3.0, 5, 5).unwrap());
    println!("\nFTC residual max over a 25-point grid:");
    for gid in ["cayley", "exp_iz"] {
        let g = gallery::symbol(gid).unwrap();
        for w in [Point::i(), Point::new(1.0, 2.0).unwrap()] {
            let f = extremal_fw(w);
            let res = ftc_identity_check(&g, &f, z0, &sample, &cfg).unwrap();
            println!("  g = {gid:<8} f = {:<8}  residual = {res:.2e}", f.label());
        }
    }
}
