//! Bring your own symbol: run the full boundedness/compactness analysis on
//! a function supplied as expression text, exactly what the CLI does with
//! `--symbol-expr`.
//!
//! ```bash
//! cargo run -p halfplane --example custom_symbol
//! cargo run -p halfplane --example custom_symbol -- "exp(i*z)/(z+2i)"
//! ```

use halfplane::criteria::{boundary_vanishing_check, criterion_m1, criterion_m2, CriterionForm};
use halfplane::exprlang::{parse, to_holofun};
use halfplane::search::SearchOptions;
use halfplane::{QuadConfig, SearchRegion};

fn main() {
    let src = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "i/(z+i)^2".to_string());
    let expr = match parse(&src) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("cannot parse `{src}`: {e}");
            std::process::exit(2);
        }
    };
    let g = to_holofun(&expr, src.clone());
    let cfg = QuadConfig::default();
    let region = SearchRegion::default_region();
    let opts = SearchOptions::default();

    println!("symbol: {expr}");
    println!("derivative: {}", halfplane::exprlang::differentiate(&expr));

    let m1 = criterion_m1(&g, &region, &cfg, &opts).estimate;
    let m2 = criterion_m2(&g, &region, &cfg, &opts).estimate;
    println!(
        "\nM1 = {:.8}  divergent: {}  argmax {}",
        m1.value, m1.divergent, m1.argmax
    );
    println!(
        "M2 = {:.8}  divergent: {}  argmax {}",
        m2.value, m2.divergent, m2.argmax
    );

    for form in [CriterionForm::M1, CriterionForm::M2] {
        let rep = boundary_vanishing_check(&g, form, &region, &cfg, 21, &opts);
        print!("boundary vanishing ({form:?}): {:?}", rep.verdict);
        match rep.limit_estimate {
            Some(l) => println!(", limit estimate {l:.6}"),
            None => println!(),
        }
    }
}
