//! Sequential compactness probe: push kernel test functions f_{w_n} toward
//! the boundary along w_n = i 2^{-n} and watch two channels per level - the
//! closed-form lower statistic L(w_n) and the measured Bloch norm of the
//! operator image. A stalling L is the obstruction; a collapsing one is
//! consistent with compactness.
//!
//! ```bash
//! cargo run -p halfplane --example compactness_probe
//! ```

use halfplane::criteria::compactness_probe;
use halfplane::gallery;
use halfplane::search::SearchOptions;
use halfplane::{OperatorKind, QuadConfig, SearchRegion};

fn main() {
    let cfg = QuadConfig::default();
    let region = SearchRegion::default_region();
    let opts = SearchOptions::default();

    for id in ["exp_iz", "exp_isqrtz"] {
        let g = gallery::symbol(id).unwrap();
        let probe = compactness_probe(OperatorKind::Jg, &g, 0.0, 16, &region, &cfg, &opts).unwrap();
        println!("J_g probe for `{id}` along w_n = i 2^-n:");
        println!(
            "  {:>3} {:>14} {:>16} {:>16}",
            "n", "Im w_n", "L(w_n)", "bloch norm"
        );
        for l in probe.levels.iter().step_by(3) {
            println!(
                "  {:>3} {:>14.6e} {:>16.10} {:>16.10}",
                l.n,
                l.w.y(),
                l.lower_stat,
                l.full_norm.unwrap()
            );
        }
        let last = probe.levels.last().unwrap();
        println!(
            "  {:>3} {:>14.6e} {:>16.10} {:>16.10}",
            last.n,
            last.w.y(),
            last.lower_stat,
            last.full_norm.unwrap()
        );
        println!(
            "  verdict: {:?} (floor {})\n",
            probe.verdict, probe.delta_floor
        );
    }

    println!(
        "for exp_isqrtz the lower statistic converges to 1/(8 sqrt pi) = {:.8}",
        1.0 / (8.0 * std::f64::consts::PI.sqrt())
    );
}
