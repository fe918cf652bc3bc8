//! A minimal expression language for user-supplied symbols.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' factor)?            // right-associative
//! atom   := number | number'i' | 'i' | 'z' | name '(' expr ')' | '(' expr ')'
//! name   := exp | log | sqrt | sin | cos
//! ```
//!
//! Complex literals are written `a`, `bi`, or `a+bi`; the parser folds the
//! `a+bi` form (and a literal under unary minus) into a single constant node
//! so that printing an AST and reparsing it reproduces the structure exactly.
//!
//! All branches are principal: on the upper half-plane `log` has imaginary
//! part in (0,pi) and `sqrt = exp(log/2)`, so no cut crosses the domain.
//! Non-integer powers are `exp(v*log u)`; integer powers use repeated
//! multiplication for exactness.

mod parse;

pub use parse::{parse, ParseError};

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::domain::{HoloFun, Point};

/// AST of the expression language. Build via [`parse`] or the smart
/// constructors, which fold literal arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Complex64),
    /// The free variable z.
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            _ => return None,
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{func} of exact zero")]
    SingularArgument { func: &'static str },
}

// ---- smart constructors (fold literal arithmetic, nothing more) ----

fn lit(e: &Expr) -> Option<Complex64> {
    match e {
        Expr::Const(c) => Some(*c),
        _ => None,
    }
}

pub fn c_re(x: f64) -> Expr {
    Expr::Const(Complex64::new(x, 0.0))
}

pub fn add(a: Expr, b: Expr) -> Expr {
    match (lit(&a), lit(&b)) {
        (Some(x), Some(y)) => Expr::Const(x + y),
        (Some(x), _) if x == Complex64::new(0.0, 0.0) => b,
        (_, Some(y)) if y == Complex64::new(0.0, 0.0) => a,
        _ => Expr::Add(Box::new(a), Box::new(b)),
    }
}

pub fn sub(a: Expr, b: Expr) -> Expr {
    match (lit(&a), lit(&b)) {
        (Some(x), Some(y)) => Expr::Const(x - y),
        (_, Some(y)) if y == Complex64::new(0.0, 0.0) => a,
        _ => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

pub fn neg(a: Expr) -> Expr {
    match lit(&a) {
        Some(x) => Expr::Const(-x),
        None => Expr::Neg(Box::new(a)),
    }
}

pub fn mul(a: Expr, b: Expr) -> Expr {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match (lit(&a), lit(&b)) {
        (Some(x), Some(y)) => Expr::Const(x * y),
        (Some(x), _) if x == zero => Expr::Const(zero),
        (_, Some(y)) if y == zero => Expr::Const(zero),
        (Some(x), _) if x == one => b,
        (_, Some(y)) if y == one => a,
        _ => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

pub fn div(a: Expr, b: Expr) -> Expr {
    let one = Complex64::new(1.0, 0.0);
    match (lit(&a), lit(&b)) {
        (Some(x), Some(y)) if y != Complex64::new(0.0, 0.0) => Expr::Const(x / y),
        (Some(x), _) if x == Complex64::new(0.0, 0.0) => Expr::Const(x),
        (_, Some(y)) if y == one => a,
        _ => Expr::Div(Box::new(a), Box::new(b)),
    }
}

pub fn pow(a: Expr, b: Expr) -> Expr {
    Expr::Pow(Box::new(a), Box::new(b))
}

pub fn call(f: Func, a: Expr) -> Expr {
    Expr::Call(f, Box::new(a))
}

// ---- evaluation ----

fn as_small_integer(v: Complex64) -> Option<i32> {
    if v.im == 0.0 && v.re.fract() == 0.0 && v.re.abs() <= 2_147_483_000.0 {
        Some(v.re as i32)
    } else {
        None
    }
}

fn int_pow(base: Complex64, n: i32) -> Result<Complex64, EvalError> {
    if n < 0 {
        if base == Complex64::new(0.0, 0.0) {
            return Err(EvalError::DivisionByZero);
        }
        return Ok(Complex64::new(1.0, 0.0) / int_pow(base, -n)?);
    }
    let mut acc = Complex64::new(1.0, 0.0);
    let mut b = base;
    let mut k = n as u32;
    while k > 0 {
        if k & 1 == 1 {
            acc *= b;
        }
        b *= b;
        k >>= 1;
    }
    Ok(acc)
}

/// Evaluate at a point of the upper half-plane, principal branches
/// throughout. Errors surface only for exact-zero denominators and
/// exact-zero arguments of `log`/`sqrt`.
pub fn eval(e: &Expr, p: Point) -> Result<Complex64, EvalError> {
    eval_at(e, p.to_complex())
}

fn eval_at(e: &Expr, z: Complex64) -> Result<Complex64, EvalError> {
    let zero = Complex64::new(0.0, 0.0);
    Ok(match e {
        Expr::Const(c) => *c,
        Expr::Var => z,
        Expr::Neg(a) => -eval_at(a, z)?,
        Expr::Add(a, b) => eval_at(a, z)? + eval_at(b, z)?,
        Expr::Sub(a, b) => eval_at(a, z)? - eval_at(b, z)?,
        Expr::Mul(a, b) => eval_at(a, z)? * eval_at(b, z)?,
        Expr::Div(a, b) => {
            let d = eval_at(b, z)?;
            if d == zero {
                return Err(EvalError::DivisionByZero);
            }
            eval_at(a, z)? / d
        }
        Expr::Pow(a, b) => {
            let base = eval_at(a, z)?;
            let expo = eval_at(b, z)?;
            match as_small_integer(expo) {
                Some(n) => {
                    if base == zero && n == 0 {
                        Complex64::new(1.0, 0.0)
                    } else if base == zero && n > 0 {
                        zero
                    } else {
                        int_pow(base, n)?
                    }
                }
                None => {
                    if base == zero {
                        return Err(EvalError::SingularArgument { func: "log" });
                    }
                    (expo * base.ln()).exp()
                }
            }
        }
        Expr::Call(f, a) => {
            let v = eval_at(a, z)?;
            match f {
                Func::Exp => v.exp(),
                Func::Log => {
                    if v == zero {
                        return Err(EvalError::SingularArgument { func: "log" });
                    }
                    v.ln()
                }
                Func::Sqrt => {
                    if v == zero {
                        return Err(EvalError::SingularArgument { func: "sqrt" });
                    }
                    v.sqrt()
                }
                Func::Sin => v.sin(),
                Func::Cos => v.cos(),
            }
        }
    })
}

// ---- symbolic differentiation ----

/// d/dz, standard rules, constant folding only. For a constant integer
/// exponent the power rule keeps the result single-valued; the general case
/// uses u^v * (v' log u + v u'/u).
pub fn differentiate(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) => c_re(0.0),
        Expr::Var => c_re(1.0),
        Expr::Neg(a) => neg(differentiate(a)),
        Expr::Add(a, b) => add(differentiate(a), differentiate(b)),
        Expr::Sub(a, b) => sub(differentiate(a), differentiate(b)),
        Expr::Mul(a, b) => add(
            mul(differentiate(a), (**b).clone()),
            mul((**a).clone(), differentiate(b)),
        ),
        Expr::Div(a, b) => {
            let num = sub(
                mul(differentiate(a), (**b).clone()),
                mul((**a).clone(), differentiate(b)),
            );
            div(num, pow((**b).clone(), c_re(2.0)))
        }
        Expr::Pow(a, b) => {
            if let Expr::Const(c) = **b {
                if let Some(n) = as_small_integer(c) {
                    // n * u^(n-1) * u'
                    return mul(
                        mul(Expr::Const(c), pow((**a).clone(), c_re((n - 1) as f64))),
                        differentiate(a),
                    );
                }
            }
            let u = (**a).clone();
            let v = (**b).clone();
            let term = add(
                mul(differentiate(b), call(Func::Log, u.clone())),
                mul(v.clone(), div(differentiate(a), u.clone())),
            );
            mul(pow(u, v), term)
        }
        Expr::Call(f, a) => {
            let da = differentiate(a);
            let u = (**a).clone();
            match f {
                Func::Exp => mul(call(Func::Exp, u), da),
                Func::Log => div(da, u),
                Func::Sqrt => div(da, mul(c_re(2.0), call(Func::Sqrt, u))),
                Func::Sin => mul(call(Func::Cos, u), da),
                Func::Cos => neg(mul(call(Func::Sin, u), da)),
            }
        }
    }
}

// ---- printing (same surface grammar; print-then-parse is the identity) ----

// Precedence levels used for parenthesization: additive 1, multiplicative 2,
// unary 3, power 4, atom 5. A constant with both parts nonzero prints as the
// `a+bi` literal, which sits at additive level; a negative one-part constant
// prints with its sign, which sits at unary level.
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Call(..) | Expr::Var => 5,
        Expr::Const(c) => {
            if c.re != 0.0 && c.im != 0.0 {
                1
            } else if c.re < 0.0 || c.im < 0.0 {
                3
            } else {
                5
            }
        }
    }
}

fn fmt_const(c: Complex64, out: &mut String) {
    use std::fmt::Write;
    if c.im == 0.0 {
        write!(out, "{}", c.re).unwrap();
    } else if c.re == 0.0 {
        if c.im == 1.0 {
            out.push('i');
        } else if c.im == -1.0 {
            out.push_str("-i");
        } else {
            write!(out, "{}i", c.im).unwrap();
        }
    } else {
        write!(out, "{}", c.re).unwrap();
        let im = c.im;
        if im < 0.0 {
            out.push('-');
        } else {
            out.push('+');
        }
        let m = im.abs();
        if m == 1.0 {
            out.push('i');
        } else {
            write!(out, "{}i", m).unwrap();
        }
    }
}

fn fmt_expr(e: &Expr, out: &mut String) {
    let child = |c: &Expr, min: u8, out: &mut String| {
        if prec(c) < min {
            out.push('(');
            fmt_expr(c, out);
            out.push(')');
        } else {
            fmt_expr(c, out);
        }
    };
    match e {
        Expr::Const(c) => fmt_const(*c, out),
        Expr::Var => out.push('z'),
        Expr::Neg(a) => {
            out.push('-');
            child(a, 3, out);
        }
        Expr::Add(a, b) => {
            child(a, 1, out);
            out.push('+');
            child(b, 2, out);
        }
        Expr::Sub(a, b) => {
            child(a, 1, out);
            out.push('-');
            child(b, 2, out);
        }
        Expr::Mul(a, b) => {
            child(a, 2, out);
            out.push('*');
            child(b, 3, out);
        }
        Expr::Div(a, b) => {
            child(a, 2, out);
            out.push('/');
            child(b, 3, out);
        }
        Expr::Pow(a, b) => {
            // base must be an atom-level item; exponent is a factor
            child(a, 5, out);
            out.push('^');
            child(b, 3, out);
        }
        Expr::Call(f, a) => {
            out.push_str(f.name());
            out.push('(');
            fmt_expr(a, out);
            out.push(')');
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        fmt_expr(self, &mut s);
        f.write_str(&s)
    }
}

/// Wrap an expression as a [`HoloFun`] whose exact-derivative channel is the
/// symbolic derivative. Pointwise evaluation errors become NaN so sweeps can
/// skip and count them.
pub fn to_holofun(e: &Expr, label: impl Into<String>) -> HoloFun {
    let body = Arc::new(e.clone());
    let deriv = Arc::new(differentiate(e));
    let b = body.clone();
    HoloFun::with_deriv(
        label,
        move |p| eval(&b, p).unwrap_or(Complex64::new(f64::NAN, f64::NAN)),
        move |p| eval(&deriv, p).unwrap_or(Complex64::new(f64::NAN, f64::NAN)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y).unwrap()
    }

    #[test]
    fn eval_squares_i() {
        let e = parse("z*z").unwrap();
        assert_eq!(eval(&e, Point::i()).unwrap(), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn eval_exp_iz_at_i() {
        let e = parse("exp(i*z)").unwrap();
        let v = eval(&e, Point::i()).unwrap();
        assert!((v - Complex64::new((-1.0f64).exp(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn principal_sqrt_of_2i() {
        let e = parse("sqrt(z)").unwrap();
        let v = eval(&e, p(0.0, 2.0)).unwrap();
        assert!((v - Complex64::new(1.0, 1.0)).norm() < 1e-15);
        // cross-check by squaring
        assert!((v * v - Complex64::new(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn log_branch_on_upper_half_plane() {
        for &(x, y) in &[(3.0, 0.001), (-3.0, 0.001), (0.0, 5.0), (-1.0, 1.0)] {
            let v = eval(&parse("log(z)").unwrap(), p(x, y)).unwrap();
            assert!(v.im > 0.0 && v.im < std::f64::consts::PI);
        }
    }

    #[test]
    fn division_by_exact_zero_errors() {
        let e = parse("1/(z-i)").unwrap();
        assert_eq!(eval(&e, Point::i()), Err(EvalError::DivisionByZero));
        assert!(eval(&e, p(0.0, 2.0)).is_ok());
    }

    #[test]
    fn integer_powers_are_exact() {
        let e = parse("z^3").unwrap();
        let v = eval(&e, p(0.0, 2.0)).unwrap();
        assert_eq!(v, Complex64::new(0.0, -8.0));
        let e = parse("z^-2").unwrap();
        let v = eval(&e, Point::i()).unwrap();
        assert_eq!(v, Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn derivative_of_cayley_at_i() {
        let d = differentiate(&parse("(z-i)/(z+i)").unwrap());
        let v = eval(&d, Point::i()).unwrap();
        assert!((v - Complex64::new(0.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn derivative_of_exp_iz_at_i() {
        let d = differentiate(&parse("exp(i*z)").unwrap());
        let v = eval(&d, Point::i()).unwrap();
        let want = Complex64::new(0.0, 1.0) * Complex64::new((-1.0f64).exp(), 0.0);
        assert!((v - want).norm() < 1e-15);
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let d = differentiate(&parse("5").unwrap());
        assert_eq!(d, c_re(0.0));
    }

    #[test]
    fn sqrt_rule() {
        // d/dz sqrt(z) = 1/(2 sqrt z); at 2i: 1/(2(1+i)) = (1-i)/4
        let d = differentiate(&parse("sqrt(z)").unwrap());
        let v = eval(&d, p(0.0, 2.0)).unwrap();
        assert!((v - Complex64::new(0.25, -0.25)).norm() < 1e-15);
    }

    #[test]
    fn print_reparses_gallery_sources() {
        for src in [
            "0",
            "exp(i*z)",
            "(z-i)/(z+i)",
            "i/(z+i)",
            "exp(i*sqrt(z))",
            "z^-2",
            "1+2i",
            "3-2i",
            "-z^2",
            "-(z*2)",
            "z^2^3",
            "(z^2)^3",
            "1/(2*sqrt(z))",
            "cos(z)*sin(z)",
        ] {
            let e = parse(src).unwrap();
            let printed = e.to_string();
            let back = parse(&printed).unwrap();
            assert_eq!(e, back, "round trip failed: {src} -> {printed}");
        }
    }

    #[test]
    fn derivatives_round_trip_through_printer() {
        for src in [
            "exp(i*sqrt(z))",
            "(z-i)/(z+i)",
            "z^3*log(z)",
            "sin(z)/cos(z)",
        ] {
            let d = differentiate(&parse(src).unwrap());
            let printed = d.to_string();
            assert_eq!(d, parse(&printed).unwrap(), "{src} deriv -> {printed}");
        }
    }
}
