//! Property tests: grammar round-trips on random ASTs and quadrature
//! identities on random segments.

use num_complex::Complex64;
use proptest::prelude::*;

use halfplane::domain::{region_points, HoloFun, Point, SearchRegion};
use halfplane::exprlang::{self, add, c_re, call, div, mul, neg, pow, sub, Expr, Func};
use halfplane::quad::{segment_integral, QuadConfig};

fn arb_const() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (-100i32..100).prop_map(|n| c_re(n as f64)),
        (-1e3f64..1e3).prop_map(c_re),
        (-1e3f64..1e3).prop_map(|b| Expr::Const(Complex64::new(0.0, b))),
        ((-1e3f64..1e3), (-1e3f64..1e3)).prop_map(|(a, b)| Expr::Const(Complex64::new(a, b))),
    ]
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![arb_const(), Just(Expr::Var)];
    leaf.prop_recursive(4, 48, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| mul(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| div(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| pow(a, b)),
            inner.clone().prop_map(neg),
            (
                prop_oneof![
                    Just(Func::Exp),
                    Just(Func::Log),
                    Just(Func::Sqrt),
                    Just(Func::Sin),
                    Just(Func::Cos)
                ],
                inner
            )
                .prop_map(|(f, a)| call(f, a)),
        ]
    })
}

proptest! {
    /// Printing then reparsing reproduces the AST structurally.
    #[test]
    fn print_parse_round_trip(e in arb_expr()) {
        let printed = e.to_string();
        let back = exprlang::parse(&printed)
            .unwrap_or_else(|err| panic!("`{printed}` failed to reparse: {err}"));
        prop_assert_eq!(&back, &e, "printed as `{}`", printed);
    }

    /// Differentiation output stays inside the printable grammar.
    #[test]
    fn derivative_round_trips_too(e in arb_expr()) {
        let d = exprlang::differentiate(&e);
        let printed = d.to_string();
        let back = exprlang::parse(&printed)
            .unwrap_or_else(|err| panic!("`{printed}` failed to reparse: {err}"));
        prop_assert_eq!(&back, &d, "printed as `{}`", printed);
    }
}

fn arb_point() -> impl Strategy<Value = Point> {
    ((-5.0f64..5.0), (0.1f64..5.0)).prop_map(|(x, y)| Point::new(x, y).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Straight-segment integrals of z^2 match the antiderivative and
    /// negate under endpoint swap.
    #[test]
    fn segment_antiderivative_and_antisymmetry(a in arb_point(), b in arb_point()) {
        let cfg = QuadConfig::default();
        let square = HoloFun::new("z^2", |p: Point| {
            let z = p.to_complex();
            z * z
        });
        let fwd = segment_integral(&square, a, b, &cfg).unwrap().value;
        let za = a.to_complex();
        let zb = b.to_complex();
        let exact = (zb * zb * zb - za * za * za) / 3.0;
        prop_assert!((fwd - exact).norm() <= 1e-10 * (1.0 + exact.norm()));
        let bwd = segment_integral(&square, b, a, &cfg).unwrap().value;
        prop_assert!((fwd + bwd).norm() <= 1e-12 * (1.0 + fwd.norm()));
    }

    /// Splitting at the midpoint preserves the integral.
    #[test]
    fn segment_additivity(a in arb_point(), b in arb_point()) {
        let cfg = QuadConfig::default();
        let h = halfplane::gallery::symbol("exp_iz").unwrap();
        let mid = Point::new(0.5 * (a.x() + b.x()), 0.5 * (a.y() + b.y())).unwrap();
        let whole = segment_integral(&h, a, b, &cfg).unwrap().value;
        let split = segment_integral(&h, a, mid, &cfg).unwrap().value
            + segment_integral(&h, mid, b, &cfg).unwrap().value;
        prop_assert!((whole - split).norm() <= 1e-12 * (1.0 + whole.norm()));
    }

    /// Grid enumeration is pure and has the product cardinality.
    #[test]
    fn region_points_pure_and_counted(
        y_min in 1e-6f64..1.0,
        span in 1.0f64..1e4,
        x_max in 0.0f64..1e4,
        y_grid in 1usize..16,
        x_grid in 1usize..16,
    ) {
        let region = SearchRegion::new(y_min, y_min * span, x_max, y_grid, x_grid).unwrap();
        let a = region_points(&region);
        let b = region_points(&region);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.len(), y_grid * x_grid);
        prop_assert!(a.iter().all(|p| p.y() > 0.0));
    }
}
