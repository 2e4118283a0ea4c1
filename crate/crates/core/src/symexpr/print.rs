//! Canonical text form. The printer emits grammar-conformant text, and
//! printing then reparsing is a fixed point on strings.

use std::fmt;

use super::Expr;
use crate::scalar::Scalar;

// Precedence levels used to decide parenthesisation:
// 1 sums, 2 products, 3 unary minus, 4 power, 5 atoms.
fn prec<T: Scalar>(e: &Expr<T>) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Const(c) if *c < T::zero() => 3,
        Expr::Const(_) | Expr::Coord(_) | Expr::Func(..) => 5,
    }
}

fn write_at<T: Scalar>(f: &mut fmt::Formatter<'_>, e: &Expr<T>, min: u8) -> fmt::Result {
    let this = prec(e);
    if this < min {
        write!(f, "(")?;
        write_node(f, e)?;
        write!(f, ")")
    } else {
        write_node(f, e)
    }
}

fn write_node<T: Scalar>(f: &mut fmt::Formatter<'_>, e: &Expr<T>) -> fmt::Result {
    match e {
        Expr::Const(c) => write!(f, "{c}"),
        Expr::Coord(v) => write!(f, "{}", v.name),
        Expr::Neg(a) => {
            write!(f, "-")?;
            write_at(f, a, 3)
        }
        Expr::Add(a, b) => {
            write_at(f, a, 1)?;
            write!(f, " + ")?;
            write_at(f, b, 2)
        }
        Expr::Sub(a, b) => {
            write_at(f, a, 1)?;
            write!(f, " - ")?;
            write_at(f, b, 2)
        }
        Expr::Mul(a, b) => {
            write_at(f, a, 2)?;
            write!(f, "*")?;
            write_at(f, b, 3)
        }
        Expr::Div(a, b) => {
            write_at(f, a, 2)?;
            write!(f, "/")?;
            write_at(f, b, 3)
        }
        Expr::Pow(a, b) => {
            write_at(f, a, 5)?;
            write!(f, "^")?;
            write_at(f, b, 5)
        }
        Expr::Func(func, a) => {
            write!(f, "{}(", func.name())?;
            write_node(f, a)?;
            write!(f, ")")
        }
    }
}

impl<T: Scalar> fmt::Display for Expr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_expr;
    use super::*;

    const XYZ: [&str; 3] = ["x", "y", "z"];

    fn roundtrip(src: &str) {
        let e: Expr<f64> = parse_expr(src, &XYZ).unwrap();
        let printed = e.to_string();
        let reparsed: Expr<f64> = parse_expr(&printed, &XYZ).unwrap();
        assert_eq!(
            printed,
            reparsed.to_string(),
            "print/parse not stable for `{src}`"
        );
    }

    #[test]
    fn printing_is_reparse_stable() {
        for src in [
            "x + y*z",
            "x - (y - z)",
            "x/(y*z)",
            "-z^2",
            "(-z)^2",
            "exp(2*z)",
            "x^(-2)",
            "1/(z - 1)",
            "sqrt(x^2 + 1)",
            "x - -y",
            "2e-3*x",
            "tanh(z)^2 + (1 - tanh(z)^2)",
        ] {
            roundtrip(src);
        }
    }

    #[test]
    fn parenthesisation_matches_tree_shape() {
        let e: Expr<f64> = parse_expr("x*(y/z)", &XYZ).unwrap();
        assert_eq!(e.to_string(), "x*(y/z)");
        let e: Expr<f64> = parse_expr("x*y/z", &XYZ).unwrap();
        assert_eq!(e.to_string(), "x*y/z");
        let e: Expr<f64> = parse_expr("(x+1)^2", &XYZ).unwrap();
        assert_eq!(e.to_string(), "(x + 1)^2");
    }
}
