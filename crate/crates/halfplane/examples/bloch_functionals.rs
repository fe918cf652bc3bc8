//! Bloch seminorm and norm, for plain functions and operator images.
//! The seminorm of an operator image needs no quadrature at all:
//! (J_g f)' = f g' and (I_g f)' = f' g.
//!
//! ```bash
//! cargo run -p halfplane --example bloch_functionals
//! ```

use halfplane::gallery;
use halfplane::ops::{bloch_norm, bloch_seminorm, BlochTarget};
use halfplane::search::SearchOptions;
use halfplane::{extremal_fw, OperatorKind, Point, QuadConfig, SearchRegion};

fn main() {
    let cfg = QuadConfig::default();
    let region = SearchRegion::default_region();
    let opts = SearchOptions::default();

    // landmark: B(i/(z+i)) = sup y/(y+1)^2 = 1/4 at (0, 1)
    let target = BlochTarget::Plain(gallery::symbol("inv").unwrap());
    let out = bloch_seminorm(&target, &region, &cfg, &opts);
    println!(
        "B(i/(z+i)) = {:.10} at ({:.6}, {:.6})   [closed form: 1/4 at (0,1)]",
        out.estimate.value,
        out.estimate.argmax.x(),
        out.estimate.argmax.y()
    );

    // a linearly growing function has divergent seminorm
    let target = BlochTarget::Plain(halfplane::exprlang::to_holofun(
        &halfplane::exprlang::parse("z").unwrap(),
        "z",
    ));
    let out = bloch_seminorm(&target, &region, &cfg, &opts);
    println!(
        "B(z): divergent = {} (finite part observed {:.3e})",
        out.estimate.divergent, out.estimate.value
    );

    // Bloch norms of operator images of the kernel family
    println!("\nbloch norm of L_g f_w for g = exp_iz, w on the imaginary axis:");
    for v in [2.0, 0.5, 0.125] {
        let w = Point::new(0.0, v).unwrap();
        for kind in [OperatorKind::Jg, OperatorKind::Ig] {
            let target = BlochTarget::Operator {
                kind,
                g: gallery::symbol("exp_iz").unwrap(),
                f: extremal_fw(w),
                z0: Point::i(),
            };
            let seeded = SearchOptions {
                seeds: vec![w],
                near_density: 2,
                ..SearchOptions::default()
            };
            let n = bloch_norm(&target, &region, &cfg, &seeded).unwrap();
            println!(
                "  Im w = {v:<6} {}  norm = {:.8}  (|F(i)| = {:.2e}, seminorm = {:.8})",
                kind.name(),
                n.value,
                n.value_at_i,
                n.seminorm.value
            );
        }
    }
}
