//! Boundedness certificates: the criterion supremum on one side, an
//! empirical operator-norm lower bound from the kernel family on the other,
//! plus the hypothesis evidence (sup |g| and the Bloch seminorm of g).
//!
//! ```bash
//! cargo run -p halfplane --example certify
//! ```

use halfplane::criteria::boundedness_certificate;
use halfplane::gallery;
use halfplane::search::SearchOptions;
use halfplane::{OperatorKind, QuadConfig, SearchRegion};

fn main() {
    let cfg = QuadConfig::default();
    let region = SearchRegion::default_region();
    let opts = SearchOptions::default();

    for (op, id) in [
        (OperatorKind::Jg, "exp_iz"),
        (OperatorKind::Jg, "exp_isqrtz"),
        (OperatorKind::Jg, "const:1"),
        (OperatorKind::Ig, "const:1"),
        (OperatorKind::Ig, "exp_iz"),
    ] {
        let g = gallery::symbol(id).unwrap();
        let cert = boundedness_certificate(op, &g, &region, &cfg, &opts).unwrap();
        println!("{} with g = {id}:", op.name());
        println!(
            "  criterion sup  = {:.8}{}",
            cert.criterion.value,
            if cert.criterion.divergent {
                "  (divergent)"
            } else {
                ""
            }
        );
        println!(
            "  lower bound    = {:.8} at w = {}  (expanded grid: {:.8})",
            cert.lower_bound, cert.lower_bound_argmax_w, cert.lower_bound_expanded
        );
        if let Some(r) = cert.ratio {
            println!("  lower/criterion = {r:.4}");
        }
        println!(
            "  sup |g| = {:.6}{}   B(g) = {:.6}{}",
            cert.sup_abs_g.value,
            if cert.sup_abs_g.divergent {
                " (divergent)"
            } else {
                ""
            },
            cert.bloch_seminorm_g.value,
            if cert.bloch_seminorm_g.divergent {
                " (divergent)"
            } else {
                ""
            },
        );
        println!("  verdict: {:?}\n", cert.verdict);
    }
}
