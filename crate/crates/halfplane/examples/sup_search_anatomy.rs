//! Anatomy of a supremum search: expanding stages, the three-zone sweep,
//! golden-section polishing and divergence detection, shown on statistics
//! with known behaviour.
//!
//! ```bash
//! cargo run -p halfplane --example sup_search_anatomy
//! ```

use halfplane::search::{sup_search, SearchOptions};
use halfplane::{Point, SearchRegion};

fn show(name: &str, stat: &(dyn Fn(Point) -> f64 + Sync), closed_form: &str) {
    let region = SearchRegion::default_region();
    let out = sup_search(stat, &region, &SearchOptions::default());
    println!("statistic: {name}   ({closed_form})");
    for l in &out.estimate.levels {
        println!(
            "  stage scale {:>12.3e}   cumulative sup {:>14.8}",
            l.scale, l.sup
        );
    }
    println!(
        "  value {:.10} at {}   divergent: {}   boundary: {}\n",
        out.estimate.value, out.estimate.argmax, out.estimate.divergent, out.estimate.boundary
    );
}

fn main() {
    show(
        "sqrt(y) e^-y",
        &|p: Point| p.y().sqrt() * (-p.y()).exp(),
        "max sqrt(1/2) e^-1/2 = 0.42888194 at y = 1/2",
    );
    show(
        "y / (x^2 + (y+1)^2)",
        &|p: Point| p.y() / (p.x() * p.x() + (p.y() + 1.0) * (p.y() + 1.0)),
        "max 1/4 at (0, 1)",
    );
    show(
        "y^(-1/2)",
        &|p: Point| 1.0 / p.y().sqrt(),
        "divergent toward the boundary",
    );
    show("y", &|p: Point| p.y(), "divergent toward infinity");
}
