//! Hardy-space structure theory made numeric: derivative-growth constants
//! C_n = sup (Im z)^{n+1/2} |f^(n)(z)| / ||f|| and decay along horizontal
//! strips.
//!
//! ```bash
//! cargo run -p halfplane --example growth_and_strips
//! ```

use halfplane::criteria::{growth_constant_estimate, strip_decay_check};
use halfplane::domain::Strip;
use halfplane::search::SearchOptions;
use halfplane::{extremal_fw, Point, QuadConfig, SearchRegion};

fn main() {
    let cfg = QuadConfig::default();
    let region = SearchRegion::default_region();
    let opts = SearchOptions::default();

    println!("growth constants of the kernel f_w (scale invariant in w):");
    for v in [1.0, 4.0, 0.25] {
        let f = extremal_fw(Point::new(0.0, v).unwrap());
        let rep = growth_constant_estimate(&f, 2, &region, &cfg, &opts).unwrap();
        print!("  Im w = {v:<5}  hardy norm {:.6}  ", rep.hardy_norm);
        for c in &rep.constants {
            print!(
                "C{} = {:.6} (drift {:+.2e})  ",
                c.order,
                c.value,
                c.stability_ratio - 1.0
            );
        }
        println!();
    }

    println!("\nstrip decay of f_i on Gamma_{{0.5, 2}}:");
    let rep = strip_decay_check(
        &extremal_fw(Point::i()),
        Strip::new(0.5, 2.0).unwrap(),
        &cfg,
    );
    for (r, s) in rep.cutoffs.iter().zip(rep.sups.iter()) {
        println!("  sup |f_i| over |Re z| > {r:<8}  = {s:.6e}");
    }
    println!("  verdict: {:?}", rep.verdict);
}
