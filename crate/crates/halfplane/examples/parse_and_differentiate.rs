//! The expression language end to end: parse a symbol from text, print it
//! back, differentiate symbolically and cross-check the derivative against
//! the Cauchy-circle quadrature route.
//!
//! ```bash
//! cargo run -p halfplane --example parse_and_differentiate
//! ```

use halfplane::exprlang::{differentiate, eval, parse, to_holofun};
use halfplane::quad::cauchy_derivative;
use halfplane::{Point, QuadConfig};

fn main() {
    let cfg = QuadConfig::default();
    let sources = [
        "exp(i*z)",
        "(z-i)/(z+i)",
        "exp(i*sqrt(z))",
        "z^3*log(z)",
        "1/(2*sqrt(z))",
    ];

    for src in sources {
        let expr = parse(src).unwrap();
        let deriv = differentiate(&expr);
        println!("source      : {src}");
        println!("printed     : {expr}");
        println!("derivative  : {deriv}");

        let holo = to_holofun(&expr, src);
        for &(x, y) in &[(0.0, 1.0), (1.0, 0.5), (-2.0, 3.0)] {
            let p = Point::new(x, y).unwrap();
            let symbolic = eval(&deriv, p).unwrap();
            let circle = cauchy_derivative(&holo, p, 1, &cfg);
            println!(
                "  z = {x}+{y}i   symbolic {symbolic:.10}   circle {circle:.10}   |diff| = {:.2e}",
                (symbolic - circle).norm()
            );
        }
        println!();
    }

    // parse errors carry the offset and the expected-token set
    for bad in ["z^^2", "exp(z", "2 $ 3"] {
        match parse(bad) {
            Err(e) => println!("`{bad}` -> {e}"),
            Ok(_) => unreachable!(),
        }
    }
}
