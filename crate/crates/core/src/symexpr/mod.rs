//! Expression language over chart coordinates: parse, differentiate, simplify,
//! and numerically evaluate real scalar expressions.
//!
//! The grammar covers real constants, coordinate symbols, `+ - * / ^`, unary
//! minus, and the elementary functions `exp ln sin cos tan sinh cosh tanh sqrt`.

mod diff;
mod eval;
mod parse;
mod print;
mod simplify;

pub use eval::{EvalError, EvalErrorKind};
pub use parse::{parse_expr, ParseError};

use std::ops;
use std::sync::Arc;

use crate::scalar::{lit, Scalar};

/// A coordinate symbol: display name plus its position in the chart tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordVar {
    pub name: Arc<str>,
    pub index: usize,
}

/// Elementary functions of the expression language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    pub const ALL: [Func; 9] = [
        Func::Exp,
        Func::Ln,
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Sqrt,
    ];
}

/// Symbolic scalar expression tree. Immutable; subtrees are shared via `Arc`,
/// so cloning is cheap.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr<T> {
    Const(T),
    Coord(CoordVar),
    Neg(Arc<Expr<T>>),
    Add(Arc<Expr<T>>, Arc<Expr<T>>),
    Sub(Arc<Expr<T>>, Arc<Expr<T>>),
    Mul(Arc<Expr<T>>, Arc<Expr<T>>),
    Div(Arc<Expr<T>>, Arc<Expr<T>>),
    Pow(Arc<Expr<T>>, Arc<Expr<T>>),
    Func(Func, Arc<Expr<T>>),
}

/// A point of the chart: one real value per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<T>(Vec<T>);

impl<T: Scalar> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Point(coords)
    }

    pub fn from_f64s(coords: &[f64]) -> Self {
        Point(coords.iter().map(|&c| lit(c)).collect())
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// The same point shifted by `step` along coordinate `index`.
    pub fn offset(&self, index: usize, step: T) -> Self {
        let mut c = self.0.clone();
        c[index] = c[index] + step;
        Point(c)
    }
}

impl<T: Scalar> Expr<T> {
    pub fn constant(v: T) -> Self {
        Expr::Const(v)
    }

    /// Constant from an `f64` literal.
    pub fn num(v: f64) -> Self {
        Expr::Const(lit(v))
    }

    pub fn zero() -> Self {
        Expr::Const(T::zero())
    }

    pub fn one() -> Self {
        Expr::Const(T::one())
    }

    pub fn coord(name: &str, index: usize) -> Self {
        Expr::Coord(CoordVar {
            name: Arc::from(name),
            index,
        })
    }

    pub fn func(f: Func, arg: Expr<T>) -> Self {
        Expr::Func(f, Arc::new(arg))
    }

    pub fn exp(arg: Expr<T>) -> Self {
        Expr::func(Func::Exp, arg)
    }

    pub fn ln(arg: Expr<T>) -> Self {
        Expr::func(Func::Ln, arg)
    }

    pub fn sin(arg: Expr<T>) -> Self {
        Expr::func(Func::Sin, arg)
    }

    pub fn cos(arg: Expr<T>) -> Self {
        Expr::func(Func::Cos, arg)
    }

    pub fn tan(arg: Expr<T>) -> Self {
        Expr::func(Func::Tan, arg)
    }

    pub fn sinh(arg: Expr<T>) -> Self {
        Expr::func(Func::Sinh, arg)
    }

    pub fn cosh(arg: Expr<T>) -> Self {
        Expr::func(Func::Cosh, arg)
    }

    pub fn tanh(arg: Expr<T>) -> Self {
        Expr::func(Func::Tanh, arg)
    }

    pub fn sqrt(arg: Expr<T>) -> Self {
        Expr::func(Func::Sqrt, arg)
    }

    /// `self ^ exponent`, with the cheap algebraic short-circuits applied.
    pub fn pow(self, exponent: Expr<T>) -> Self {
        if exponent.is_one() {
            return self;
        }
        if exponent.is_zero() {
            return Expr::one();
        }
        if self.is_one() {
            return Expr::one();
        }
        if let (Some(b), Some(e)) = (self.as_const(), exponent.as_const()) {
            if let Ok(v) = eval::eval_pow(b, e) {
                if v.is_finite() {
                    return Expr::Const(v);
                }
            }
        }
        Expr::Pow(Arc::new(self), Arc::new(exponent))
    }

    pub fn powi(self, n: i32) -> Self {
        self.pow(Expr::Const(T::from_i32(n).expect("i32 fits in scalar")))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if *c == T::zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Const(c) if *c == T::one())
    }

    pub fn as_const(&self) -> Option<T> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    /// The exponent as a plain integer, when it is an integer constant.
    pub fn as_int_const(&self) -> Option<i32> {
        let c = self.as_const()?;
        if c.fract() == T::zero() && c.abs() <= lit(i32::MAX as f64) {
            c.to_i32()
        } else {
            None
        }
    }

    /// Syntactic dependence on coordinate `index` (before simplification).
    pub fn depends_on_index(&self, index: usize) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Coord(v) => v.index == index,
            Expr::Neg(a) | Expr::Func(_, a) => a.depends_on_index(index),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => a.depends_on_index(index) || b.depends_on_index(index),
        }
    }

    pub fn pretty(&self) -> String {
        self.to_string()
    }

    pub fn simplify(&self) -> Expr<T> {
        simplify::simplify(self)
    }

    /// Simplifies and reports whether the result is the literal zero constant.
    pub fn simplifies_to_zero(&self) -> bool {
        self.simplify().is_zero()
    }

    /// |central difference − symbolic derivative| at `p` along coordinate `index`.
    pub fn finite_diff_check(&self, index: usize, p: &Point<T>, step: T) -> Result<T, EvalError> {
        let plus = self.evaluate(&p.offset(index, step))?;
        let minus = self.evaluate(&p.offset(index, -step))?;
        let central = (plus - minus) / (lit::<T>(2.0) * step);
        let sym = self.differentiate_index(index).evaluate(p)?;
        Ok((central - sym).abs())
    }
}

impl<T: Scalar> ops::Add for Expr<T> {
    type Output = Expr<T>;
    fn add(self, rhs: Expr<T>) -> Expr<T> {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        if let (Some(a), Some(b)) = (self.as_const(), rhs.as_const()) {
            let v = a + b;
            if v.is_finite() {
                return Expr::Const(v);
            }
        }
        Expr::Add(Arc::new(self), Arc::new(rhs))
    }
}

impl<T: Scalar> ops::Sub for Expr<T> {
    type Output = Expr<T>;
    fn sub(self, rhs: Expr<T>) -> Expr<T> {
        if rhs.is_zero() {
            return self;
        }
        if self.is_zero() {
            return -rhs;
        }
        if let (Some(a), Some(b)) = (self.as_const(), rhs.as_const()) {
            let v = a - b;
            if v.is_finite() {
                return Expr::Const(v);
            }
        }
        Expr::Sub(Arc::new(self), Arc::new(rhs))
    }
}

impl<T: Scalar> ops::Mul for Expr<T> {
    type Output = Expr<T>;
    fn mul(self, rhs: Expr<T>) -> Expr<T> {
        if self.is_zero() || rhs.is_zero() {
            return Expr::zero();
        }
        if self.is_one() {
            return rhs;
        }
        if rhs.is_one() {
            return self;
        }
        if let (Some(a), Some(b)) = (self.as_const(), rhs.as_const()) {
            let v = a * b;
            if v.is_finite() {
                return Expr::Const(v);
            }
        }
        Expr::Mul(Arc::new(self), Arc::new(rhs))
    }
}

impl<T: Scalar> ops::Div for Expr<T> {
    type Output = Expr<T>;
    fn div(self, rhs: Expr<T>) -> Expr<T> {
        if rhs.is_one() {
            return self;
        }
        if self.is_zero() && !rhs.is_zero() {
            return Expr::zero();
        }
        if let (Some(a), Some(b)) = (self.as_const(), rhs.as_const()) {
            if b != T::zero() {
                let v = a / b;
                if v.is_finite() {
                    return Expr::Const(v);
                }
            }
        }
        Expr::Div(Arc::new(self), Arc::new(rhs))
    }
}

impl<T: Scalar> ops::Neg for Expr<T> {
    type Output = Expr<T>;
    fn neg(self) -> Expr<T> {
        match self {
            Expr::Const(c) => Expr::Const(-c),
            Expr::Neg(a) => (*a).clone(),
            other => Expr::Neg(Arc::new(other)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_short_circuits() {
        let x: Expr<f64> = Expr::coord("x", 0);
        assert_eq!(x.clone() + Expr::zero(), x);
        assert_eq!(x.clone() * Expr::zero(), Expr::zero());
        assert_eq!(x.clone() * Expr::one(), x);
        assert_eq!(x.clone().pow(Expr::one()), x);
        assert_eq!(x.clone().pow(Expr::zero()), Expr::one());
        assert_eq!(-(-x.clone()), x);
    }

    #[test]
    fn constant_folding_in_ops() {
        let a: Expr<f64> = Expr::num(2.0) + Expr::num(3.0);
        assert_eq!(a.as_const(), Some(5.0));
        let b: Expr<f64> = Expr::num(2.0).powi(10);
        assert_eq!(b.as_const(), Some(1024.0));
    }

    #[test]
    fn int_const_detection() {
        assert_eq!(Expr::<f64>::num(3.0).as_int_const(), Some(3));
        assert_eq!(Expr::<f64>::num(-2.0).as_int_const(), Some(-2));
        assert_eq!(Expr::<f64>::num(0.5).as_int_const(), None);
    }
}
