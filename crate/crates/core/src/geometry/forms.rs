//! Differential forms on increasing multi-indices: exterior derivative and
//! wedge product.

use std::collections::BTreeMap;

use super::{GeometryError, OneForm};
use crate::scalar::Scalar;
use crate::symexpr::{EvalError, Expr, Point};

/// Antisymmetric k-form stored sparsely on strictly increasing multi-indices;
/// missing indices are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct KForm<T> {
    dim: usize,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Expr<T>>,
}

impl<T: Scalar> KForm<T> {
    pub fn zero(dim: usize, degree: usize) -> Result<Self, GeometryError> {
        if degree > dim {
            return Err(GeometryError::DegreeOverflow {
                degree,
                limit: dim,
            });
        }
        Ok(KForm {
            dim,
            degree,
            comps: BTreeMap::new(),
        })
    }

    /// Degree-0 form wrapping a scalar expression.
    pub fn from_scalar(dim: usize, f: Expr<T>) -> Self {
        let mut form = KForm {
            dim,
            degree: 0,
            comps: BTreeMap::new(),
        };
        let f = f.simplify();
        if !f.is_zero() {
            form.comps.insert(Vec::new(), f);
        }
        form
    }

    pub fn from_one_form(eta: &OneForm<T>) -> Self {
        let mut form = KForm {
            dim: eta.dim(),
            degree: 1,
            comps: BTreeMap::new(),
        };
        for i in 0..eta.dim() {
            form.set(vec![i], eta.component(i).clone())
                .expect("one-form indices are valid");
        }
        form
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Sets one component; the index must be strictly increasing and of the
    /// form's degree. Zero entries are dropped.
    pub fn set(&mut self, index: Vec<usize>, value: Expr<T>) -> Result<(), GeometryError> {
        let ok = index.len() == self.degree
            && index.windows(2).all(|w| w[0] < w[1])
            && index.iter().all(|&i| i < self.dim);
        if !ok {
            return Err(GeometryError::BadFormIndex(index));
        }
        let value = value.simplify();
        if value.is_zero() {
            self.comps.remove(&index);
        } else {
            self.comps.insert(index, value);
        }
        Ok(())
    }

    /// The component at an increasing multi-index (zero when absent).
    pub fn component(&self, index: &[usize]) -> Expr<T> {
        self.comps.get(index).cloned().unwrap_or_else(Expr::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Expr<T>)> {
        self.comps.iter()
    }

    pub fn is_symbolically_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// All components evaluated at `p`, paired with their indices.
    pub fn eval_at(&self, p: &Point<T>) -> Result<Vec<(Vec<usize>, T)>, EvalError> {
        self.comps
            .iter()
            .map(|(idx, e)| Ok((idx.clone(), e.evaluate(p)?)))
            .collect()
    }

    /// Exterior derivative by the alternating-sum coordinate formula.
    pub fn exterior_derivative(&self) -> Result<KForm<T>, GeometryError> {
        if self.degree >= self.dim {
            return Err(GeometryError::DegreeOverflow {
                degree: self.degree + 1,
                limit: self.dim,
            });
        }
        let mut out = KForm::zero(self.dim, self.degree + 1)?;
        let mut acc: BTreeMap<Vec<usize>, Expr<T>> = BTreeMap::new();
        for (idx, value) in &self.comps {
            for j in 0..self.dim {
                if idx.contains(&j) {
                    continue;
                }
                let d = value.differentiate_index(j);
                if d.is_zero() {
                    continue;
                }
                let pos = idx.iter().take_while(|&&i| i < j).count();
                let mut target = idx.clone();
                target.insert(pos, j);
                let signed = if pos % 2 == 0 { d } else { -d };
                let entry = acc.remove(&target).unwrap_or_else(Expr::zero);
                acc.insert(target, entry + signed);
            }
        }
        for (idx, value) in acc {
            out.set(idx, value)?;
        }
        Ok(out)
    }

    /// Wedge product with the shuffle-sign convention (no factorial factors),
    /// so that on coordinate one-forms `dx ∧ dy` has component 1 at (x, y).
    pub fn wedge(&self, other: &KForm<T>) -> Result<KForm<T>, GeometryError> {
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Err(GeometryError::DegreeOverflow {
                degree,
                limit: self.dim,
            });
        }
        let mut acc: BTreeMap<Vec<usize>, Expr<T>> = BTreeMap::new();
        for (ia, va) in &self.comps {
            for (ib, vb) in &other.comps {
                if ia.iter().any(|i| ib.contains(i)) {
                    continue;
                }
                // inversions between the two blocks give the shuffle sign
                let inversions: usize = ia
                    .iter()
                    .map(|&i| ib.iter().filter(|&&j| j < i).count())
                    .sum();
                let mut idx: Vec<usize> = ia.iter().chain(ib.iter()).copied().collect();
                idx.sort_unstable();
                let product = va.clone() * vb.clone();
                let signed = if inversions % 2 == 0 {
                    product
                } else {
                    -product
                };
                let entry = acc.remove(&idx).unwrap_or_else(Expr::zero);
                acc.insert(idx, entry + signed);
            }
        }
        let mut out = KForm::zero(self.dim, degree)?;
        for (idx, value) in acc {
            out.set(idx, value)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Chart;

    fn dz_form() -> KForm<f64> {
        let eta = OneForm::new(vec![Expr::zero(), Expr::zero(), Expr::one()]);
        KForm::from_one_form(&eta)
    }

    #[test]
    fn d_of_constant_one_form_vanishes() {
        let d = dz_form().exterior_derivative().unwrap();
        assert!(d.is_symbolically_zero());
    }

    #[test]
    fn wedge_with_self_vanishes() {
        let dz = dz_form();
        let w = dz.wedge(&dz).unwrap();
        assert!(w.is_symbolically_zero());
    }

    #[test]
    fn degree_one_times_degree_two_commute() {
        let chart = Chart::xyz();
        let w = {
            let mut f = KForm::<f64>::zero(3, 2).unwrap();
            f.set(vec![0, 1], Expr::exp(Expr::num(2.0) * chart.coord(2)))
                .unwrap();
            f
        };
        let eta = dz_form();
        let a = eta.wedge(&w).unwrap();
        let b = w.wedge(&eta).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a.component(&[0, 1, 2]).to_string(),
            "exp(2*z)"
        );
    }

    #[test]
    fn d_squared_is_zero_on_scalars() {
        let chart = Chart::xyz();
        let f = Expr::<f64>::ln(Expr::cosh(chart.coord(2)));
        let df = KForm::from_scalar(3, f).exterior_derivative().unwrap();
        let ddf = df.exterior_derivative().unwrap();
        assert!(ddf.is_symbolically_zero());
    }

    #[test]
    fn degree_overflow_is_an_error() {
        let top = KForm::<f64>::zero(3, 3).unwrap();
        assert!(matches!(
            top.exterior_derivative(),
            Err(GeometryError::DegreeOverflow { .. })
        ));
        let one = dz_form();
        assert!(matches!(
            top.wedge(&one),
            Err(GeometryError::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn bad_index_rejected() {
        let mut f = KForm::<f64>::zero(3, 2).unwrap();
        assert!(f.set(vec![1, 0], Expr::one()).is_err());
        assert!(f.set(vec![1, 1], Expr::one()).is_err());
        assert!(f.set(vec![1, 3], Expr::one()).is_err());
    }
}
