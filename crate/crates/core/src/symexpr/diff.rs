//! Symbolic partial differentiation. Closed over the expression language and
//! total on it; validated against central finite differences.

use super::{CoordVar, Expr, Func};
use crate::scalar::Scalar;

impl<T: Scalar> Expr<T> {
    /// Partial derivative with respect to the named coordinate.
    pub fn differentiate(&self, coord: &str) -> Expr<T> {
        self.derive(&|v| &*v.name == coord)
    }

    /// Partial derivative with respect to the coordinate at `index`.
    pub fn differentiate_index(&self, index: usize) -> Expr<T> {
        self.derive(&|v| v.index == index)
    }

    fn derive(&self, matches: &dyn Fn(&CoordVar) -> bool) -> Expr<T> {
        match self {
            Expr::Const(_) => Expr::zero(),
            Expr::Coord(v) => {
                if matches(v) {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Expr::Neg(a) => -a.derive(matches),
            Expr::Add(a, b) => a.derive(matches) + b.derive(matches),
            Expr::Sub(a, b) => a.derive(matches) - b.derive(matches),
            Expr::Mul(a, b) => {
                let da = a.derive(matches);
                let db = b.derive(matches);
                da * (**b).clone() + (**a).clone() * db
            }
            Expr::Div(a, b) => {
                let da = a.derive(matches);
                let db = b.derive(matches);
                // (a/b)' = a'/b - a*b'/b^2
                da / (**b).clone() - (**a).clone() * db / ((**b).clone() * (**b).clone())
            }
            Expr::Pow(base, exponent) => {
                let db = base.derive(matches);
                let de = exponent.derive(matches);
                if let Some(c) = exponent.as_const() {
                    // fixed-exponent rule, valid wherever the power itself is
                    let reduced = (**base).clone().pow(Expr::Const(c - T::one()));
                    return Expr::Const(c) * reduced * db;
                }
                if de.is_zero() {
                    let reduced =
                        (**base).clone().pow((**exponent).clone() - Expr::one());
                    return (**exponent).clone() * reduced * db;
                }
                // general rule via b^e = exp(e ln b)
                let this = (**base).clone().pow((**exponent).clone());
                let log_term = de * Expr::ln((**base).clone());
                let ratio_term = (**exponent).clone() * db / (**base).clone();
                this * (log_term + ratio_term)
            }
            Expr::Func(f, a) => {
                let da = a.derive(matches);
                if da.is_zero() {
                    return Expr::zero();
                }
                let u = (**a).clone();
                let outer = match f {
                    Func::Exp => Expr::exp(u),
                    Func::Ln => Expr::one() / u,
                    Func::Sin => Expr::cos(u),
                    Func::Cos => -Expr::sin(u),
                    Func::Tan => Expr::one() + Expr::tan(u.clone()) * Expr::tan(u),
                    Func::Sinh => Expr::cosh(u),
                    Func::Cosh => Expr::sinh(u),
                    Func::Tanh => Expr::one() - Expr::tanh(u.clone()) * Expr::tanh(u),
                    Func::Sqrt => Expr::one() / (Expr::num(2.0) * Expr::sqrt(u)),
                };
                outer * da
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_expr, Point};
    use super::*;

    const XYZ: [&str; 3] = ["x", "y", "z"];

    fn d(src: &str, coord: &str) -> Expr<f64> {
        parse_expr::<f64, _>(src, &XYZ).unwrap().differentiate(coord)
    }

    #[test]
    fn chain_rule_on_exp() {
        let got = d("exp(2*z)", "z").simplify();
        let want = parse_expr::<f64, _>("2*exp(2*z)", &XYZ).unwrap().simplify();
        assert_eq!(got, want);
    }

    #[test]
    fn independent_coordinate_gives_literal_zero() {
        assert!(d("exp(2*z)", "x").is_zero());
        assert!(d("5", "z").is_zero());
    }

    #[test]
    fn log_cosh_derivative_matches_finite_differences() {
        let e: Expr<f64> = parse_expr("ln(cosh(z))", &XYZ).unwrap();
        for z in [-1.0, 0.0, 1.0] {
            let p = Point::new(vec![0.0, 0.0, z]);
            let resid = e.finite_diff_check(2, &p, 1e-5).unwrap();
            let scale = 1.0 + z.tanh().abs();
            assert!(resid / scale <= 1e-8, "residual {resid} at z={z}");
        }
        // and the simplified form is tanh(z) itself
        assert_eq!(e.differentiate("z").simplify().to_string(), "tanh(z)");
    }

    #[test]
    fn finite_diff_check_examples() {
        let sq: Expr<f64> = parse_expr("z^2", &XYZ).unwrap();
        let p = Point::new(vec![0.0, 0.0, 1.0]);
        assert!(sq.finite_diff_check(2, &p, 1e-5).unwrap() <= 1e-9);

        let e: Expr<f64> = parse_expr("exp(2*z)", &XYZ).unwrap();
        let p0 = Point::new(vec![0.0, 0.0, 0.0]);
        assert!(e.finite_diff_check(2, &p0, 1e-5).unwrap() <= 2e-7);

        let c: Expr<f64> = parse_expr("5", &XYZ).unwrap();
        assert!(c.finite_diff_check(2, &p0, 1e-5).unwrap() <= 1e-12);
    }

    #[test]
    fn general_power_rule() {
        // d/dx x^x = x^x (ln x + 1)
        let e: Expr<f64> = parse_expr("x^x", &XYZ).unwrap();
        for x in [0.5, 1.0, 2.0] {
            let p = Point::new(vec![x, 0.0, 0.0]);
            let resid = e.finite_diff_check(0, &p, 1e-6).unwrap();
            assert!(resid <= 1e-6, "residual {resid} at x={x}");
        }
    }
}
