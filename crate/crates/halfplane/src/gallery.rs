//! Built-in symbol gallery.
//!
//! Every symbol carries a closed-form derivative channel and an equivalent
//! expression-language source string, so the symbolic and quadrature
//! derivative routes can be cross-checked against each other.
//!
//! Stable public ids: `zero`, `const:<c>`, `cayley`, `inv`, `exp_iz`,
//! `exp_isqrtz`. The constant parameter accepts `const:2` or `const:1,-0.5`
//! (re,im form).

use num_complex::Complex64;

use crate::domain::HoloFun;
use crate::error::ConfigError;

pub const GALLERY_IDS: [&str; 6] = ["zero", "const:<c>", "cayley", "inv", "exp_iz", "exp_isqrtz"];

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Look up a gallery symbol by its public id.
pub fn symbol(id: &str) -> Result<HoloFun, ConfigError> {
    if let Some(c) = id.strip_prefix("const:") {
        let value = parse_constant(c)
            .ok_or_else(|| ConfigError::new("symbol", format!("bad constant in `{id}`")))?;
        return Ok(HoloFun::with_deriv(
            id.to_string(),
            move |_| value,
            |_| Complex64::new(0.0, 0.0),
        ));
    }
    match id {
        "zero" => Ok(HoloFun::with_deriv(
            "zero",
            |_| Complex64::new(0.0, 0.0),
            |_| Complex64::new(0.0, 0.0),
        )),
        // (z-i)/(z+i), derivative 2i/(z+i)^2
        "cayley" => Ok(HoloFun::with_deriv(
            "cayley",
            |p| {
                let z = p.to_complex();
                (z - I) / (z + I)
            },
            |p| {
                let w = p.to_complex() + I;
                2.0 * I / (w * w)
            },
        )),
        // i/(z+i), derivative -i/(z+i)^2
        "inv" => Ok(HoloFun::with_deriv(
            "inv",
            |p| I / (p.to_complex() + I),
            |p| {
                let w = p.to_complex() + I;
                -I / (w * w)
            },
        )),
        "exp_iz" => Ok(HoloFun::with_deriv(
            "exp_iz",
            |p| (I * p.to_complex()).exp(),
            |p| I * (I * p.to_complex()).exp(),
        )),
        // exp(i*sqrt(z)) with the principal branch; on the upper half-plane
        // arg z is in (0,pi), so Im sqrt(z) > 0 and the symbol is bounded.
        "exp_isqrtz" => Ok(HoloFun::with_deriv(
            "exp_isqrtz",
            |p| (I * p.to_complex().sqrt()).exp(),
            |p| {
                let s = p.to_complex().sqrt();
                I * (I * s).exp() / (2.0 * s)
            },
        )),
        _ => Err(ConfigError::new(
            "symbol",
            format!(
                "unknown gallery id `{id}` (known: {})",
                GALLERY_IDS.join(", ")
            ),
        )),
    }
}

/// Expression-language source equivalent to a gallery id, used by the
/// symbolic/quadrature cross-checks.
pub fn expr_source(id: &str) -> Option<String> {
    if let Some(c) = id.strip_prefix("const:") {
        let v = parse_constant(c)?;
        return Some(if v.im == 0.0 {
            format!("{}", v.re)
        } else if v.re == 0.0 {
            format!("{}i", v.im)
        } else if v.im < 0.0 {
            format!("{}-{}i", v.re, -v.im)
        } else {
            format!("{}+{}i", v.re, v.im)
        });
    }
    match id {
        "zero" => Some("0".to_string()),
        "cayley" => Some("(z-i)/(z+i)".to_string()),
        "inv" => Some("i/(z+i)".to_string()),
        "exp_iz" => Some("exp(i*z)".to_string()),
        "exp_isqrtz" => Some("exp(i*sqrt(z))".to_string()),
        _ => None,
    }
}

fn parse_constant(text: &str) -> Option<Complex64> {
    let mut parts = text.splitn(2, ',');
    let re: f64 = parts.next()?.trim().parse().ok()?;
    let im: f64 = match parts.next() {
        Some(s) => s.trim().parse().ok()?,
        None => 0.0,
    };
    if re.is_finite() && im.is_finite() {
        Some(Complex64::new(re, im))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Point;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn zero_and_inv_at_i() {
        let p = Point::i();
        assert_eq!(symbol("zero").unwrap().eval(p), Complex64::new(0.0, 0.0));
        // i/(2i) = 1/2
        assert!(close(
            symbol("inv").unwrap().eval(p),
            Complex64::new(0.5, 0.0),
            1e-15
        ));
    }

    #[test]
    fn exp_isqrtz_modulus_at_2i() {
        // sqrt(2i) = 1+i, so |exp(i*sqrt(2i))| = e^{-1}
        let p = Point::new(0.0, 2.0).unwrap();
        let v = symbol("exp_isqrtz").unwrap().eval(p);
        assert!((v.norm() - (-1.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn const_parameter_forms() {
        let p = Point::i();
        assert_eq!(symbol("const:2").unwrap().eval(p), Complex64::new(2.0, 0.0));
        assert_eq!(
            symbol("const:1,-0.5").unwrap().eval(p),
            Complex64::new(1.0, -0.5)
        );
        assert!(symbol("const:abc").is_err());
    }

    #[test]
    fn unknown_id_is_config_error() {
        assert!(symbol("nope").is_err());
    }

    #[test]
    fn cayley_maps_into_unit_disk() {
        let g = symbol("cayley").unwrap();
        for &(x, y) in &[(0.0, 1e-6), (100.0, 0.5), (-3.0, 2.0), (0.0, 1e6)] {
            let v = g.eval(Point::new(x, y).unwrap());
            assert!(v.norm() < 1.0, "|cayley({x}+{y}i)| = {} not < 1", v.norm());
        }
    }

    #[test]
    fn exp_iz_modulus_is_exp_minus_y() {
        let g = symbol("exp_iz").unwrap();
        for &(x, y) in &[(0.0, 0.25), (5.0, 1.0), (-17.0, 3.5)] {
            let v = g.eval(Point::new(x, y).unwrap());
            assert!((v.norm() - (-y).exp()).abs() < 1e-12);
        }
    }
}
