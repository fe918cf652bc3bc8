//! The two boundedness criteria swept across the whole gallery:
//! M1 = sup (Im z)^{1/2} |g'(z)| decides J_g, M2 = sup |g(z)|/(Im z)^{1/2}
//! decides I_g. Divergence is detected by comparing sups across doubling
//! region scales.
//!
//! ```bash
//! cargo run -p halfplane --example criteria_sweep
//! ```

use halfplane::criteria::{criterion_m1, criterion_m2};
use halfplane::gallery;
use halfplane::search::SearchOptions;
use halfplane::{QuadConfig, SearchRegion};

fn main() {
    let cfg = QuadConfig::default();
    let region = SearchRegion::default_region();
    let opts = SearchOptions::default();

    println!(
        "{:<12} {:>14} {:>10} {:>14} {:>10}",
        "symbol", "M1", "div?", "M2", "div?"
    );
    for id in ["zero", "const:1", "cayley", "inv", "exp_iz", "exp_isqrtz"] {
        let g = gallery::symbol(id).unwrap();
        let m1 = criterion_m1(&g, &region, &cfg, &opts).estimate;
        let m2 = criterion_m2(&g, &region, &cfg, &opts).estimate;
        println!(
            "{id:<12} {:>14.8} {:>10} {:>14.6} {:>10}",
            m1.value, m1.divergent, m2.value, m2.divergent
        );
    }

    println!("\nlandmarks:");
    println!(
        "  M1(exp_iz)     = sqrt(1/2) e^(-1/2) = {:.8} at height 1/2",
        0.5f64.sqrt() * (-0.5f64).exp()
    );
    println!("  M1(exp_isqrtz) = 1/2 in the y -> 0 limit along x = 0");
    println!("  M2 of anything with nonzero boundary values diverges like y^(-1/2)");

    // level traces show where the divergence flag comes from
    let g = gallery::symbol("const:1").unwrap();
    let m2 = criterion_m2(&g, &region, &cfg, &opts).estimate;
    println!("\nM2(const:1) sup by region scale (flag fires when growth exceeds tau = 1.5):");
    for l in &m2.levels {
        println!("  scale {:>12.3e}   sup {:>12.6}", l.scale, l.sup);
    }
}
