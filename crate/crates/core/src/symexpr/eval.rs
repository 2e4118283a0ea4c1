//! Numeric evaluation with explicit domain errors.

use thiserror::Error;

use super::{Expr, Func, Point};
use crate::scalar::{lit, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EvalErrorKind {
    #[error("division by zero")]
    DivisionByZero,
    #[error("logarithm of a non-positive value")]
    LogNonPositive,
    #[error("square root of a negative value")]
    SqrtOfNegative,
    #[error("fractional power of a non-positive base")]
    FractionalPowerOfNonPositive,
    #[error("result is not finite")]
    NonFinite,
    #[error("coordinate index out of range for the point")]
    CoordOutOfRange,
}

/// A domain error, reported with the offending subexpression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} in `{expr}`")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub expr: String,
}

pub(crate) fn eval_func<T: Scalar>(f: Func, x: T) -> Result<T, EvalErrorKind> {
    let v = match f {
        Func::Exp => x.exp(),
        Func::Ln => {
            if x <= T::zero() {
                return Err(EvalErrorKind::LogNonPositive);
            }
            x.ln()
        }
        Func::Sin => x.sin(),
        Func::Cos => x.cos(),
        Func::Tan => x.tan(),
        Func::Sinh => x.sinh(),
        Func::Cosh => x.cosh(),
        Func::Tanh => x.tanh(),
        Func::Sqrt => {
            if x < T::zero() {
                return Err(EvalErrorKind::SqrtOfNegative);
            }
            x.sqrt()
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalErrorKind::NonFinite)
    }
}

/// `base ^ exponent` under the language rule: an integer exponent, or a
/// positive base.
pub(crate) fn eval_pow<T: Scalar>(base: T, exponent: T) -> Result<T, EvalErrorKind> {
    let v = if exponent.fract() == T::zero() && exponent.abs() <= lit(i32::MAX as f64) {
        let n = exponent.to_i32().expect("integer exponent fits in i32");
        if base == T::zero() && n < 0 {
            return Err(EvalErrorKind::DivisionByZero);
        }
        base.powi(n)
    } else if base > T::zero() {
        base.powf(exponent)
    } else if base == T::zero() && exponent > T::zero() {
        T::zero()
    } else {
        return Err(EvalErrorKind::FractionalPowerOfNonPositive);
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalErrorKind::NonFinite)
    }
}

impl<T: Scalar> Expr<T> {
    /// Evaluates at `p`; any domain failure names the offending subexpression.
    pub fn evaluate(&self, p: &Point<T>) -> Result<T, EvalError> {
        let fail = |kind: EvalErrorKind, e: &Expr<T>| EvalError {
            kind,
            expr: e.to_string(),
        };
        let finite = |v: T, e: &Expr<T>| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(fail(EvalErrorKind::NonFinite, e))
            }
        };
        match self {
            Expr::Const(c) => finite(*c, self),
            Expr::Coord(v) => match p.coords().get(v.index) {
                Some(&c) => Ok(c),
                None => Err(fail(EvalErrorKind::CoordOutOfRange, self)),
            },
            Expr::Neg(a) => Ok(-a.evaluate(p)?),
            Expr::Add(a, b) => finite(a.evaluate(p)? + b.evaluate(p)?, self),
            Expr::Sub(a, b) => finite(a.evaluate(p)? - b.evaluate(p)?, self),
            Expr::Mul(a, b) => finite(a.evaluate(p)? * b.evaluate(p)?, self),
            Expr::Div(a, b) => {
                let den = b.evaluate(p)?;
                if den == T::zero() {
                    return Err(fail(EvalErrorKind::DivisionByZero, self));
                }
                finite(a.evaluate(p)? / den, self)
            }
            Expr::Pow(a, b) => {
                let base = a.evaluate(p)?;
                let exponent = b.evaluate(p)?;
                eval_pow(base, exponent).map_err(|k| fail(k, self))
            }
            Expr::Func(f, a) => {
                let x = a.evaluate(p)?;
                eval_func(*f, x).map_err(|k| fail(k, self))
            }
        }
    }

    /// Conservative well-conditioning test for derivative and simplification
    /// checks: every subvalue stays below `cap` in magnitude and away from
    /// domain boundaries by `margin` (denominators, log/sqrt arguments,
    /// tangent poles, fractional-power bases).
    pub fn well_conditioned_at(&self, p: &Point<T>, margin: T, cap: T) -> bool {
        fn go<T: Scalar>(e: &Expr<T>, p: &Point<T>, margin: T, cap: T) -> Option<T> {
            let guard = |v: T| {
                if v.is_finite() && v.abs() <= cap {
                    Some(v)
                } else {
                    None
                }
            };
            match e {
                Expr::Const(c) => guard(*c),
                Expr::Coord(v) => guard(*p.coords().get(v.index)?),
                Expr::Neg(a) => Some(-go(a, p, margin, cap)?),
                Expr::Add(a, b) => guard(go(a, p, margin, cap)? + go(b, p, margin, cap)?),
                Expr::Sub(a, b) => guard(go(a, p, margin, cap)? - go(b, p, margin, cap)?),
                Expr::Mul(a, b) => guard(go(a, p, margin, cap)? * go(b, p, margin, cap)?),
                Expr::Div(a, b) => {
                    let den = go(b, p, margin, cap)?;
                    if den.abs() < margin {
                        return None;
                    }
                    guard(go(a, p, margin, cap)? / den)
                }
                Expr::Pow(a, b) => {
                    let base = go(a, p, margin, cap)?;
                    let exponent = go(b, p, margin, cap)?;
                    let integral = exponent.fract() == T::zero();
                    if integral && exponent < T::zero() && base.abs() < margin {
                        return None;
                    }
                    if !integral && base < margin {
                        return None;
                    }
                    guard(eval_pow(base, exponent).ok()?)
                }
                Expr::Func(f, a) => {
                    let x = go(a, p, margin, cap)?;
                    match f {
                        Func::Ln | Func::Sqrt if x < margin => return None,
                        Func::Tan if x.cos().abs() < margin => return None,
                        _ => {}
                    }
                    guard(eval_func(*f, x).ok()?)
                }
            }
        }
        go(self, p, margin, cap).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_expr;
    use super::*;

    const XYZ: [&str; 3] = ["x", "y", "z"];

    fn at_z(src: &str, z: f64) -> Result<f64, EvalError> {
        let e: Expr<f64> = parse_expr(src, &XYZ).unwrap();
        e.evaluate(&Point::new(vec![0.0, 0.0, z]))
    }

    #[test]
    fn plain_values() {
        assert_eq!(at_z("exp(2*z)", 0.0).unwrap(), 1.0);
        assert_eq!(at_z("tanh(z)", 0.0).unwrap(), 0.0);
    }

    #[test]
    fn pole_is_a_domain_error() {
        let err = at_z("1/(z - 1)", 1.0).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::DivisionByZero);
        assert_eq!(err.expr, "1/(z - 1)");
    }

    #[test]
    fn log_and_sqrt_domains() {
        assert_eq!(at_z("ln(z)", -1.0).unwrap_err().kind, EvalErrorKind::LogNonPositive);
        assert_eq!(at_z("ln(z)", 0.0).unwrap_err().kind, EvalErrorKind::LogNonPositive);
        assert_eq!(at_z("sqrt(z)", -1.0).unwrap_err().kind, EvalErrorKind::SqrtOfNegative);
        assert_eq!(at_z("sqrt(z)", 0.0).unwrap(), 0.0);
    }

    #[test]
    fn power_rules() {
        // integer exponents allow negative bases
        assert_eq!(at_z("z^3", -2.0).unwrap(), -8.0);
        assert_eq!(at_z("z^(-2)", 2.0).unwrap(), 0.25);
        assert_eq!(
            at_z("z^0.5", -1.0).unwrap_err().kind,
            EvalErrorKind::FractionalPowerOfNonPositive
        );
        assert_eq!(at_z("z^0.5", 4.0).unwrap(), 2.0);
        assert_eq!(at_z("z^(-1)", 0.0).unwrap_err().kind, EvalErrorKind::DivisionByZero);
    }

    #[test]
    fn overflow_is_non_finite() {
        assert_eq!(at_z("exp(exp(z))", 10.0).unwrap_err().kind, EvalErrorKind::NonFinite);
    }

    #[test]
    fn conditioning_filter() {
        let e: Expr<f64> = parse_expr("1/(z - 1)", &XYZ).unwrap();
        assert!(!e.well_conditioned_at(&Point::new(vec![0.0, 0.0, 1.004]), 5e-2, 1e4));
        assert!(e.well_conditioned_at(&Point::new(vec![0.0, 0.0, 2.0]), 5e-2, 1e4));
    }
}
