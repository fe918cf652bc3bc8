//! Tour of the built-in symbol gallery: evaluate each symbol at a few
//! points and confirm the closed-form moduli they are chosen for.
//!
//! ```bash
//! cargo run -p halfplane --example gallery_tour
//! ```

use halfplane::gallery;
use halfplane::Point;

fn main() {
    let points = [
        Point::new(0.0, 1.0).unwrap(),
        Point::new(0.0, 2.0).unwrap(),
        Point::new(3.0, 0.5).unwrap(),
        Point::new(-2.0, 0.01).unwrap(),
    ];

    for id in ["zero", "const:1", "cayley", "inv", "exp_iz", "exp_isqrtz"] {
        let g = gallery::symbol(id).unwrap();
        println!(
            "symbol `{id}`  (expression: {})",
            gallery::expr_source(id).unwrap()
        );
        for &p in &points {
            let v = g.eval(p);
            let d = g.deriv_exact(p).unwrap();
            println!(
                "  z = {p:>9}   g(z) = {v:.6}   g'(z) = {d:.6}   |g(z)| = {:.6}",
                v.norm()
            );
        }
        println!();
    }

    // |e^{iz}| = e^{-y} and the Cayley transform maps into the unit disk
    let p = Point::new(5.0, 0.25).unwrap();
    let exp_iz = gallery::symbol("exp_iz").unwrap();
    println!(
        "|exp_iz({p})| = {:.12}, e^(-y) = {:.12}",
        exp_iz.eval(p).norm(),
        (-p.y()).exp()
    );
    let cayley = gallery::symbol("cayley").unwrap();
    println!("|cayley({p})| = {:.12} < 1", cayley.eval(p).norm());
}
