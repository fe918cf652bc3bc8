//! Hardy norms of the kernel-type family f_w: the norm is anchor
//! independent (1/sqrt 2 under the line-integral definition) and the sup
//! over heights lives in the y -> 0 limit.
//!
//! ```bash
//! cargo run -p halfplane --example hardy_norms
//! ```

use halfplane::extremal_fw;
use halfplane::quad::{default_heights, hardy_norm, line_l2};
use halfplane::{Point, QuadConfig};

fn main() {
    let cfg = QuadConfig::default();
    let heights = default_heights();

    println!("anchor w          hardy norm      argmax height   boundary");
    for &(x, y) in &[(0.0, 1.0), (0.0, 2.0), (0.0, 0.5), (3.0, 1.0), (-3.0, 0.1)] {
        let w = Point::new(x, y).unwrap();
        let (sup, _) = hardy_norm(&extremal_fw(w), &heights, &cfg, 1.5).unwrap();
        println!(
            "fw:{x:>4},{y:<4}     {:<15.10} {:<15.6e} {}",
            sup.value,
            sup.argmax.y(),
            sup.boundary
        );
    }
    println!(
        "\nclosed form: sup_y v^3/(2(y+v)^3) = 1/2, so the norm is 1/sqrt(2) = {:.10}",
        0.5f64.sqrt()
    );

    // the line integral profile for f_i: v^3/(2(y+v)^3) with v = 1
    println!("\nline integral of |f_i|^2 by height (vs closed form):");
    let f = extremal_fw(Point::i());
    for y in [0.001, 0.1, 1.0, 10.0] {
        let l2 = line_l2(&f, y, &cfg).unwrap();
        let exact = 1.0 / (2.0 * (y + 1.0).powi(3));
        println!(
            "  y = {y:<6}  integral = {:.12}   closed form = {exact:.12}   half-width = {}",
            l2.value, l2.half_width
        );
    }
}
