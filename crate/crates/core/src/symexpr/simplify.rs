//! Value-preserving canonicalisation.
//!
//! Expressions are rewritten bottom-up into a sum-of-products normal form:
//! like terms are collected, powers of a common base are merged, exponential
//! factors are combined through their arguments, and `sin/cos` (`sinh/cosh`)
//! quotients are folded back to `tan` (`tanh`). Simplification is best effort,
//! not a zero decision procedure; it may extend the domain of an expression
//! (e.g. `x/x -> 1`) but never changes its value where both sides are defined.

use std::cmp::Ordering;
use std::sync::Arc;

use super::eval::{eval_func, eval_pow};
use super::{Expr, Func};
use crate::scalar::{lit, Scalar};

pub fn simplify<T: Scalar>(e: &Expr<T>) -> Expr<T> {
    canon(e)
}

fn canon<T: Scalar>(e: &Expr<T>) -> Expr<T> {
    match e {
        Expr::Const(c) => {
            if *c == T::zero() {
                Expr::Const(T::zero()) // collapse -0.0
            } else {
                Expr::Const(*c)
            }
        }
        Expr::Coord(_) => e.clone(),
        Expr::Func(f, a) => canon_func(*f, canon(a)),
        Expr::Neg(a) => normal_form(&Expr::Neg(Arc::new(canon(a)))),
        Expr::Add(a, b) => normal_form(&Expr::Add(canon(a).into(), canon(b).into())),
        Expr::Sub(a, b) => normal_form(&Expr::Sub(canon(a).into(), canon(b).into())),
        Expr::Mul(a, b) => normal_form(&Expr::Mul(canon(a).into(), canon(b).into())),
        Expr::Div(a, b) => normal_form(&Expr::Div(canon(a).into(), canon(b).into())),
        Expr::Pow(a, b) => normal_form(&Expr::Pow(canon(a).into(), canon(b).into())),
    }
}

fn canon_func<T: Scalar>(f: Func, arg: Expr<T>) -> Expr<T> {
    if let Some(c) = arg.as_const() {
        if let Ok(v) = eval_func(f, c) {
            return Expr::Const(v);
        }
    }
    match f {
        Func::Exp => {
            if let Expr::Func(Func::Ln, u) = &arg {
                return (**u).clone();
            }
            if let Expr::Mul(a, b) = &arg {
                if let (Some(c), Expr::Func(Func::Ln, u)) = (a.as_const(), &**b) {
                    return normal_form(&Expr::Pow(Arc::clone(u), Arc::new(Expr::Const(c))));
                }
            }
            Expr::Func(Func::Exp, Arc::new(arg))
        }
        Func::Ln => {
            if let Expr::Func(Func::Exp, u) = &arg {
                return (**u).clone();
            }
            Expr::Func(Func::Ln, Arc::new(arg))
        }
        Func::Sin | Func::Tan | Func::Sinh | Func::Tanh => match strip_leading_neg(&arg) {
            Some(pos) => Expr::Neg(Arc::new(Expr::Func(f, Arc::new(pos)))),
            None => Expr::Func(f, Arc::new(arg)),
        },
        Func::Cos | Func::Cosh => match strip_leading_neg(&arg) {
            Some(pos) => Expr::Func(f, Arc::new(pos)),
            None => Expr::Func(f, Arc::new(arg)),
        },
        Func::Sqrt => normal_form(&Expr::Func(Func::Sqrt, Arc::new(arg))),
    }
}

fn strip_leading_neg<T: Scalar>(e: &Expr<T>) -> Option<Expr<T>> {
    match e {
        Expr::Neg(a) => Some((**a).clone()),
        Expr::Const(c) if *c < T::zero() => Some(Expr::Const(-*c)),
        Expr::Mul(a, b) => match &**a {
            Expr::Const(c) if *c < T::zero() => {
                let pos = -*c;
                if pos == T::one() {
                    Some((**b).clone())
                } else {
                    Some(Expr::Mul(Arc::new(Expr::Const(pos)), Arc::clone(b)))
                }
            }
            _ => None,
        },
        Expr::Div(a, b) => {
            strip_leading_neg(a).map(|na| Expr::Div(Arc::new(na), Arc::clone(b)))
        }
        _ => None,
    }
}

// --- sum-of-products normal form -------------------------------------------

struct Factor<T> {
    base: Expr<T>,
    exp: Expr<T>,
}

struct Term<T> {
    coeff: T,
    factors: Vec<Factor<T>>,
}

fn normal_form<T: Scalar>(e: &Expr<T>) -> Expr<T> {
    let (constant, terms) = collect_sum(e);
    reconstruct(constant, terms)
}

fn collect_sum<T: Scalar>(e: &Expr<T>) -> (T, Vec<Term<T>>) {
    let mut constant = T::zero();
    let mut terms: Vec<Term<T>> = Vec::new();
    gather_terms(e, T::one(), &mut constant, &mut terms);
    terms.sort_by(|a, b| cmp_factors(&a.factors, &b.factors));
    let mut merged: Vec<Term<T>> = Vec::new();
    for t in terms {
        if let Some(last) = merged.last_mut() {
            if cmp_factors(&last.factors, &t.factors) == Ordering::Equal {
                last.coeff = last.coeff + t.coeff;
                continue;
            }
        }
        merged.push(t);
    }
    merged.retain(|t| t.coeff != T::zero() && t.coeff.is_finite());
    (constant, merged)
}

fn gather_terms<T: Scalar>(e: &Expr<T>, sign: T, constant: &mut T, terms: &mut Vec<Term<T>>) {
    match e {
        Expr::Add(a, b) => {
            gather_terms(a, sign, constant, terms);
            gather_terms(b, sign, constant, terms);
        }
        Expr::Sub(a, b) => {
            gather_terms(a, sign, constant, terms);
            gather_terms(b, -sign, constant, terms);
        }
        Expr::Neg(a) => gather_terms(a, -sign, constant, terms),
        Expr::Const(c) => *constant = *constant + sign * *c,
        other => {
            let mut t = collect_term(other);
            t.coeff = t.coeff * sign;
            if t.coeff == T::zero() {
                return;
            }
            if t.factors.is_empty() {
                *constant = *constant + t.coeff;
            } else {
                terms.push(t);
            }
        }
    }
}

fn collect_term<T: Scalar>(e: &Expr<T>) -> Term<T> {
    let mut coeff = T::one();
    let mut raw: Vec<Factor<T>> = Vec::new();
    let mut exp_arg: Option<Expr<T>> = None;
    gather_factors(e, false, &mut coeff, &mut raw, &mut exp_arg);
    finalize_term(coeff, raw, exp_arg)
}

fn gather_factors<T: Scalar>(
    e: &Expr<T>,
    invert: bool,
    coeff: &mut T,
    raw: &mut Vec<Factor<T>>,
    exp_arg: &mut Option<Expr<T>>,
) {
    match e {
        Expr::Mul(a, b) => {
            gather_factors(a, invert, coeff, raw, exp_arg);
            gather_factors(b, invert, coeff, raw, exp_arg);
        }
        Expr::Div(a, b) => {
            gather_factors(a, invert, coeff, raw, exp_arg);
            gather_factors(b, !invert, coeff, raw, exp_arg);
        }
        Expr::Neg(a) => {
            *coeff = -*coeff;
            gather_factors(a, invert, coeff, raw, exp_arg);
        }
        other => {
            let unit = if invert { -T::one() } else { T::one() };
            push_power(other.clone(), Expr::Const(unit), coeff, raw, exp_arg);
        }
    }
}

fn mul_into<T: Scalar>(coeff: &mut T, v: T) -> bool {
    let r = *coeff * v;
    if r.is_finite() {
        *coeff = r;
        true
    } else {
        false
    }
}

fn push_power<T: Scalar>(
    base: Expr<T>,
    exponent: Expr<T>,
    coeff: &mut T,
    raw: &mut Vec<Factor<T>>,
    exp_arg: &mut Option<Expr<T>>,
) {
    if exponent.is_zero() {
        return; // x^0 = 1 under the integer-power semantics
    }
    match base {
        Expr::Const(c) => {
            if let Some(x) = exponent.as_const() {
                if let Ok(v) = eval_pow(c, x) {
                    if mul_into(coeff, v) {
                        return;
                    }
                }
            }
            raw.push(Factor {
                base: Expr::Const(c),
                exp: exponent,
            });
        }
        Expr::Pow(b2, e2) => {
            // (u^a)^b -> u^(a b) only where sound: integer outer exponent,
            // or odd-integer inner exponent.
            let sound = exponent.as_int_const().is_some()
                || matches!(e2.as_int_const(), Some(n) if n % 2 != 0);
            if sound {
                let merged = mul_exprs((*e2).clone(), exponent);
                push_power((*b2).clone(), merged, coeff, raw, exp_arg);
            } else {
                raw.push(Factor {
                    base: Expr::Pow(b2, e2),
                    exp: exponent,
                });
            }
        }
        Expr::Mul(..) | Expr::Div(..) | Expr::Neg(..) => {
            if let Some(n) = exponent.as_int_const() {
                let inner = collect_term(&base);
                let folded = inner.coeff.powi(n);
                if !folded.is_finite() {
                    raw.push(Factor {
                        base,
                        exp: exponent,
                    });
                    return;
                }
                if !mul_into(coeff, folded) {
                    raw.push(Factor {
                        base: Expr::Const(folded),
                        exp: Expr::one(),
                    });
                }
                let n_expr = Expr::Const(T::from_i32(n).expect("i32 fits in scalar"));
                for f in inner.factors {
                    push_power(f.base, mul_exprs(f.exp, n_expr.clone()), coeff, raw, exp_arg);
                }
            } else {
                raw.push(Factor {
                    base,
                    exp: exponent,
                });
            }
        }
        Expr::Func(Func::Exp, u) => {
            let contribution = mul_exprs(exponent, (*u).clone());
            *exp_arg = Some(match exp_arg.take() {
                None => contribution,
                Some(prev) => add_exprs(prev, contribution),
            });
        }
        Expr::Func(Func::Sqrt, u) => {
            let half = mul_exprs(exponent, Expr::Const(lit(0.5)));
            push_power((*u).clone(), half, coeff, raw, exp_arg);
        }
        Expr::Func(Func::Tan, u) if exponent.as_int_const().is_some() => {
            push_power(
                Expr::Func(Func::Sin, Arc::clone(&u)),
                exponent.clone(),
                coeff,
                raw,
                exp_arg,
            );
            push_power(Expr::Func(Func::Cos, u), neg_expr(exponent), coeff, raw, exp_arg);
        }
        Expr::Func(Func::Tanh, u) if exponent.as_const().is_some() => {
            push_power(
                Expr::Func(Func::Sinh, Arc::clone(&u)),
                exponent.clone(),
                coeff,
                raw,
                exp_arg,
            );
            push_power(Expr::Func(Func::Cosh, u), neg_expr(exponent), coeff, raw, exp_arg);
        }
        other => raw.push(Factor {
            base: other,
            exp: exponent,
        }),
    }
}

fn finalize_term<T: Scalar>(
    mut coeff: T,
    mut raw: Vec<Factor<T>>,
    exp_arg: Option<Expr<T>>,
) -> Term<T> {
    if let Some(arg) = exp_arg {
        if arg.is_zero() {
            // exp(0) = 1
        } else if let Some(c) = arg.as_const() {
            match eval_func(Func::Exp, c) {
                Ok(v) if mul_into(&mut coeff, v) => {}
                _ => raw.push(Factor {
                    base: Expr::Func(Func::Exp, Arc::new(Expr::Const(c))),
                    exp: Expr::one(),
                }),
            }
        } else if let Expr::Func(Func::Ln, u) = &arg {
            raw.push(Factor {
                base: (**u).clone(),
                exp: Expr::one(),
            });
        } else if let Expr::Mul(a, b) = &arg {
            if let (Some(c), Expr::Func(Func::Ln, u)) = (a.as_const(), &**b) {
                raw.push(Factor {
                    base: (**u).clone(),
                    exp: Expr::Const(c),
                });
            } else {
                raw.push(Factor {
                    base: Expr::Func(Func::Exp, Arc::new(arg)),
                    exp: Expr::one(),
                });
            }
        } else {
            raw.push(Factor {
                base: Expr::Func(Func::Exp, Arc::new(arg)),
                exp: Expr::one(),
            });
        }
    }

    raw.sort_by(|a, b| {
        structural_cmp(&a.base, &b.base).then_with(|| structural_cmp(&a.exp, &b.exp))
    });
    let mut merged: Vec<Factor<T>> = Vec::new();
    for f in raw {
        if let Some(last) = merged.last_mut() {
            if structural_cmp(&last.base, &f.base) == Ordering::Equal {
                let sum = add_exprs(last.exp.clone(), f.exp);
                last.exp = sum;
                continue;
            }
        }
        merged.push(f);
    }

    let mut factors: Vec<Factor<T>> = Vec::new();
    for f in merged {
        if f.exp.is_zero() {
            continue;
        }
        if let (Some(b), Some(x)) = (f.base.as_const(), f.exp.as_const()) {
            if let Ok(v) = eval_pow(b, x) {
                if mul_into(&mut coeff, v) {
                    continue;
                }
            }
        }
        factors.push(f);
    }
    Term { coeff, factors }
}

// --- reconstruction ---------------------------------------------------------

fn reconstruct<T: Scalar>(constant: T, terms: Vec<Term<T>>) -> Expr<T> {
    let mut acc: Option<Expr<T>> = None;
    for t in &terms {
        match acc.take() {
            None => acc = Some(term_to_expr(t.coeff, &t.factors)),
            Some(a) => {
                let rhs = term_to_expr(t.coeff.abs(), &t.factors);
                acc = Some(if t.coeff < T::zero() {
                    Expr::Sub(Arc::new(a), Arc::new(rhs))
                } else {
                    Expr::Add(Arc::new(a), Arc::new(rhs))
                });
            }
        }
    }
    match acc {
        None => Expr::Const(if constant == T::zero() { T::zero() } else { constant }),
        Some(a) => {
            if constant == T::zero() {
                a
            } else if constant < T::zero() {
                Expr::Sub(Arc::new(a), Arc::new(Expr::Const(-constant)))
            } else {
                Expr::Add(Arc::new(a), Arc::new(Expr::Const(constant)))
            }
        }
    }
}

fn term_to_expr<T: Scalar>(coeff: T, factors: &[Factor<T>]) -> Expr<T> {
    let mapped = remap_quotient_trig(factors);
    let mut num: Vec<Expr<T>> = Vec::new();
    let mut den: Vec<Expr<T>> = Vec::new();
    for f in &mapped {
        match f.exp.as_const() {
            Some(c) if c < T::zero() => den.push(pow_expr(&f.base, &Expr::Const(-c))),
            _ => num.push(pow_expr(&f.base, &f.exp)),
        }
    }
    let numerator = if num.is_empty() {
        Expr::Const(coeff)
    } else if coeff == T::one() {
        mul_chain(num)
    } else if coeff == -T::one() {
        Expr::Neg(Arc::new(mul_chain(num)))
    } else {
        let mut parts = vec![Expr::Const(coeff)];
        parts.extend(num);
        mul_chain(parts)
    };
    if den.is_empty() {
        numerator
    } else {
        Expr::Div(Arc::new(numerator), Arc::new(mul_chain(den)))
    }
}

fn mul_chain<T: Scalar>(parts: Vec<Expr<T>>) -> Expr<T> {
    let mut it = parts.into_iter();
    let first = it.next().expect("chain is nonempty");
    it.fold(first, |acc, e| Expr::Mul(Arc::new(acc), Arc::new(e)))
}

fn pow_expr<T: Scalar>(base: &Expr<T>, exp: &Expr<T>) -> Expr<T> {
    if exp.is_one() {
        base.clone()
    } else if exp.as_const() == Some(lit(0.5)) {
        Expr::Func(Func::Sqrt, Arc::new(base.clone()))
    } else {
        Expr::Pow(Arc::new(base.clone()), Arc::new(exp.clone()))
    }
}

/// Folds `sin(u)^a * cos(u)^-b` back into `tan(u)^t` (and the hyperbolic
/// analogue) for positive constant `t`; the inverse of the decomposition done
/// during collection.
fn remap_quotient_trig<T: Scalar>(factors: &[Factor<T>]) -> Vec<Factor<T>> {
    let mut out: Vec<Factor<T>> = factors
        .iter()
        .map(|f| Factor {
            base: f.base.clone(),
            exp: f.exp.clone(),
        })
        .collect();
    let pairs = [
        (Func::Sin, Func::Cos, Func::Tan),
        (Func::Sinh, Func::Cosh, Func::Tanh),
    ];
    for (num_f, den_f, quot_f) in pairs {
        let mut extra: Vec<Factor<T>> = Vec::new();
        for i in 0..out.len() {
            let (arg, a) = match (&out[i].base, out[i].exp.as_const()) {
                (Expr::Func(f, u), Some(a)) if *f == num_f && a > T::zero() => (Arc::clone(u), a),
                _ => continue,
            };
            for j in 0..out.len() {
                if i == j {
                    continue;
                }
                let b = match (&out[j].base, out[j].exp.as_const()) {
                    (Expr::Func(f, u), Some(b))
                        if *f == den_f
                            && b < T::zero()
                            && structural_cmp(u, &arg) == Ordering::Equal =>
                    {
                        b
                    }
                    _ => continue,
                };
                let t = a.min(-b);
                out[i].exp = Expr::Const(a - t);
                out[j].exp = Expr::Const(b + t);
                extra.push(Factor {
                    base: Expr::Func(quot_f, arg),
                    exp: Expr::Const(t),
                });
                break;
            }
        }
        out.extend(extra);
    }
    out.retain(|f| !f.exp.is_zero());
    out.sort_by(|a, b| {
        structural_cmp(&a.base, &b.base).then_with(|| structural_cmp(&a.exp, &b.exp))
    });
    out
}

// --- canonical arithmetic on already-canonical operands ----------------------

fn add_exprs<T: Scalar>(a: Expr<T>, b: Expr<T>) -> Expr<T> {
    normal_form(&Expr::Add(Arc::new(a), Arc::new(b)))
}

fn mul_exprs<T: Scalar>(a: Expr<T>, b: Expr<T>) -> Expr<T> {
    normal_form(&Expr::Mul(Arc::new(a), Arc::new(b)))
}

fn neg_expr<T: Scalar>(a: Expr<T>) -> Expr<T> {
    normal_form(&Expr::Neg(Arc::new(a)))
}

// --- ordering ----------------------------------------------------------------

fn rank<T>(e: &Expr<T>) -> u8 {
    match e {
        Expr::Const(_) => 0,
        Expr::Coord(_) => 1,
        Expr::Func(..) => 2,
        Expr::Pow(..) => 3,
        Expr::Neg(..) => 4,
        Expr::Mul(..) => 5,
        Expr::Div(..) => 6,
        Expr::Add(..) => 7,
        Expr::Sub(..) => 8,
    }
}

pub(crate) fn structural_cmp<T: Scalar>(a: &Expr<T>, b: &Expr<T>) -> Ordering {
    rank(a).cmp(&rank(b)).then_with(|| match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => x.partial_cmp(y).unwrap_or(Ordering::Equal),
        (Expr::Coord(u), Expr::Coord(v)) => u.index.cmp(&v.index).then_with(|| u.name.cmp(&v.name)),
        (Expr::Func(f, x), Expr::Func(g, y)) => f.cmp(g).then_with(|| structural_cmp(x, y)),
        (Expr::Neg(x), Expr::Neg(y)) => structural_cmp(x, y),
        (Expr::Add(x1, x2), Expr::Add(y1, y2))
        | (Expr::Sub(x1, x2), Expr::Sub(y1, y2))
        | (Expr::Mul(x1, x2), Expr::Mul(y1, y2))
        | (Expr::Div(x1, x2), Expr::Div(y1, y2))
        | (Expr::Pow(x1, x2), Expr::Pow(y1, y2)) => {
            structural_cmp(x1, y1).then_with(|| structural_cmp(x2, y2))
        }
        _ => Ordering::Equal,
    })
}

fn cmp_factors<T: Scalar>(a: &[Factor<T>], b: &[Factor<T>]) -> Ordering {
    for (fa, fb) in a.iter().zip(b.iter()) {
        let c = structural_cmp(&fa.base, &fb.base).then_with(|| structural_cmp(&fa.exp, &fb.exp));
        if c != Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

#[cfg(test)]
mod tests {
    use super::super::{parse_expr, Point};
    use super::*;

    const XYZ: [&str; 3] = ["x", "y", "z"];

    fn s(src: &str) -> Expr<f64> {
        parse_expr::<f64, _>(src, &XYZ).unwrap().simplify()
    }

    #[test]
    fn absorbs_zero_and_one() {
        assert_eq!(s("x + 0").to_string(), "x");
        assert_eq!(s("1*x").to_string(), "x");
        assert_eq!(s("x - x").to_string(), "0");
        assert_eq!(s("x/x").to_string(), "1");
        assert_eq!(s("0*ln(z)").to_string(), "0");
    }

    #[test]
    fn merges_exponentials() {
        assert_eq!(s("exp(2*z)*exp(-2*z)").to_string(), "1");
        assert_eq!(s("exp(z)*exp(z)").to_string(), "exp(2*z)");
        assert_eq!(s("exp(2*z)/exp(z)").to_string(), "exp(z)");
    }

    #[test]
    fn collects_like_terms() {
        assert_eq!(s("tanh(z)^2 + (1 - tanh(z)^2)").to_string(), "1");
        assert_eq!(s("2*x + 3*x").to_string(), "5*x");
        assert_eq!(s("x*y - y*x").to_string(), "0");
    }

    #[test]
    fn folds_constants() {
        assert_eq!(s("2*3 + 1").to_string(), "7");
        assert_eq!(s("cos(0)").to_string(), "1");
        assert_eq!(s("sqrt(4)").to_string(), "2");
        assert_eq!(s("2^10").to_string(), "1024");
    }

    #[test]
    fn quotient_trig_remap() {
        assert_eq!(s("sinh(z)/cosh(z)").to_string(), "tanh(z)");
        assert_eq!(s("sin(z)/cos(z)").to_string(), "tan(z)");
        // tan of a negative argument keeps the sign outside
        assert_eq!(s("tan(-z)").to_string(), "-tan(z)");
    }

    #[test]
    fn merges_powers_of_a_base() {
        assert_eq!(s("z^2*z^3").to_string(), "z^5");
        assert_eq!(s("sqrt(z)*sqrt(z)").to_string(), "z");
        assert_eq!(s("z^2/z").to_string(), "z");
        // (z^2)^0.5 must NOT merge to z
        assert_eq!(s("(z^2)^0.5").to_string(), "sqrt(z^2)");
        // but (z^3)^0.5 may become z^1.5 on the common domain
        assert_eq!(s("(z^3)^0.5").to_string(), "z^1.5");
    }

    #[test]
    fn log_exp_inverses() {
        assert_eq!(s("ln(exp(x))").to_string(), "x");
        assert_eq!(s("exp(ln(x))").to_string(), "x");
        assert_eq!(s("exp(2*ln(x))").to_string(), "x^2");
    }

    #[test]
    fn idempotent_on_samples() {
        for src in [
            "x + 0",
            "exp(2*z)*exp(-2*z)",
            "tanh(z)^2 + (1 - tanh(z)^2)",
            "x*(x + 1) + x",
            "sin(z)/cos(z)",
            "1/(z - 1)",
            "x^2 - 2*x*y + y^2",
            "-2*z",
            "sqrt(x^2 + 1)/x",
            "(x + y)^2/(x + y)",
        ] {
            let once = parse_expr::<f64, _>(src, &XYZ).unwrap().simplify();
            let twice = once.simplify();
            assert_eq!(once, twice, "not idempotent on `{src}`");
        }
    }

    #[test]
    fn preserves_values_at_sample_points() {
        let cases = [
            "x*(x + 1) + x",
            "(x + y)^2/(x + y)",
            "exp(x)*exp(y)",
            "sin(x)^2/cos(x)",
            "x^2*x^(-1)",
            "sqrt(x^2 + 1)*sqrt(x^2 + 1)",
            "ln(cosh(z))*1 + 0*y",
        ];
        for src in cases {
            let e = parse_expr::<f64, _>(src, &XYZ).unwrap();
            let se = e.simplify();
            for k in 0..20 {
                let t = 0.13 + 0.17 * k as f64;
                let p = Point::new(vec![t.sin() + 1.5, t.cos() + 1.5, t]);
                if !e.well_conditioned_at(&p, 1e-3, 1e6) {
                    continue;
                }
                let a = e.evaluate(&p).unwrap();
                let b = se.evaluate(&p).unwrap_or_else(|err| {
                    panic!("simplified `{se}` lost domain of `{src}`: {err}")
                });
                assert!(
                    (a - b).abs() <= 1e-12 * (1.0 + a.abs()),
                    "value changed for `{src}`: {a} vs {b}"
                );
            }
        }
    }
}
