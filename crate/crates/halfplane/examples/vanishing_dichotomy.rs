//! The boundary-vanishing dichotomy that separates compact from merely
//! bounded: sup of the criterion statistic over {Im z < r} as r -> 0.
//! For exp_iz it dies like sqrt(r); for exp_isqrtz it stalls at 1/2, the
//! compactness obstruction.
//!
//! ```bash
//! cargo run -p halfplane --example vanishing_dichotomy
//! ```

use halfplane::criteria::{boundary_vanishing_check, CriterionForm};
use halfplane::gallery;
use halfplane::search::SearchOptions;
use halfplane::{QuadConfig, SearchRegion};

fn main() {
    let cfg = QuadConfig::default();
    let region = SearchRegion::default_region();
    let opts = SearchOptions::default();

    for id in ["exp_iz", "exp_isqrtz"] {
        let g = gallery::symbol(id).unwrap();
        let rep = boundary_vanishing_check(&g, CriterionForm::M1, &region, &cfg, 21, &opts);
        println!("symbol `{id}`, statistic sqrt(Im z)|g'(z)| over {{Im z < r}}:");
        for (r, s) in rep.radii.iter().zip(rep.sups.iter()).step_by(4) {
            println!(
                "  r = 2^{:<4} = {:<12.4e}  sup = {:.8}",
                r.log2() as i32,
                r,
                s
            );
        }
        let last = rep.sups.last().unwrap();
        println!(
            "  r = 2^-20 = {:.4e}  sup = {:.8}",
            rep.radii.last().unwrap(),
            last
        );
        match rep.limit_estimate {
            Some(l) => println!("  verdict: {:?}, limit estimate {:.6}\n", rep.verdict, l),
            None => println!("  verdict: {:?}\n", rep.verdict),
        }
    }

    println!("closed forms: s(r) = sqrt(r) e^(-r) for exp_iz; s(r) -> e^(-sqrt(r/2))/2 -> 1/2 for exp_isqrtz");
}
