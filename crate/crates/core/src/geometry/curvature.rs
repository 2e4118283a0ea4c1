//! Levi-Civita connection and curvature.
//!
//! Sign conventions: `R(X, Y) Z = ∇_X ∇_Y Z − ∇_Y ∇_X Z − ∇_[X,Y] Z`, and the
//! Ricci tensor is the trace of `X ↦ R(X, Y) Z` over the first slot. On the
//! warped-product catalog metrics this makes hyperbolic space come out with
//! negative Ricci curvature.

use super::{Christoffel, EndomorphismField, GeometryError, MetricField, RiemannTensor, SymTensor};
use crate::scalar::Scalar;
use crate::symexpr::Expr;

/// All curvature data derived from one metric, computed once.
#[derive(Debug, Clone)]
pub struct Curvature<T> {
    pub metric_inverse: Vec<Vec<Expr<T>>>,
    pub christoffel: Christoffel<T>,
    pub riemann: RiemannTensor<T>,
    pub ricci: SymTensor<T>,
    pub scalar: Expr<T>,
    pub ricci_operator: EndomorphismField<T>,
}

impl<T: Scalar> Curvature<T> {
    pub fn new(g: &MetricField<T>) -> Result<Self, GeometryError> {
        let dim = g.dim();
        let inv = g.inverse()?;
        let gamma = christoffel_from_inverse(g, &inv);
        let riem = riemann_from_christoffel(&gamma);

        // Ric_jk = R^i_{ijk}
        let mut ric = SymTensor::zero(dim);
        for j in 0..dim {
            for k in 0..dim {
                let mut acc = Expr::zero();
                for i in 0..dim {
                    acc = acc + riem.component(i, i, j, k).clone();
                }
                ric.set(j, k, acc.simplify());
            }
        }

        let mut scalar = Expr::zero();
        for j in 0..dim {
            for k in 0..dim {
                if inv[j][k].is_zero() || ric.entry(j, k).is_zero() {
                    continue;
                }
                scalar = scalar + inv[j][k].clone() * ric.entry(j, k).clone();
            }
        }
        let scalar = scalar.simplify();

        let mut q_entries = vec![vec![Expr::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Expr::zero();
                for k in 0..dim {
                    acc = acc + inv[i][k].clone() * ric.entry(k, j).clone();
                }
                q_entries[i][j] = acc.simplify();
            }
        }
        let q = EndomorphismField::new(q_entries)?;

        Ok(Curvature {
            metric_inverse: inv,
            christoffel: gamma,
            riemann: riem,
            ricci: ric,
            scalar,
            ricci_operator: q,
        })
    }
}

fn christoffel_from_inverse<T: Scalar>(
    g: &MetricField<T>,
    inv: &[Vec<Expr<T>>],
) -> Christoffel<T> {
    let dim = g.dim();
    // partials dg[k][i][j] = ∂_k g_ij
    let mut dg = vec![vec![vec![Expr::zero(); dim]; dim]; dim];
    for k in 0..dim {
        for i in 0..dim {
            for j in 0..dim {
                dg[k][i][j] = g.entry(i, j).differentiate_index(k).simplify();
            }
        }
    }
    let mut symbols = vec![vec![vec![Expr::zero(); dim]; dim]; dim];
    for k in 0..dim {
        for i in 0..dim {
            for j in i..dim {
                let mut acc = Expr::zero();
                for l in 0..dim {
                    if inv[k][l].is_zero() {
                        continue;
                    }
                    let koszul = dg[i][j][l].clone() + dg[j][i][l].clone() - dg[l][i][j].clone();
                    acc = acc + inv[k][l].clone() * koszul;
                }
                let gamma = (Expr::num(0.5) * acc).simplify();
                symbols[k][i][j] = gamma.clone();
                symbols[k][j][i] = gamma;
            }
        }
    }
    Christoffel::from_raw(symbols)
}

fn riemann_from_christoffel<T: Scalar>(gamma: &Christoffel<T>) -> RiemannTensor<T> {
    let dim = gamma.dim();
    let mut comps = vec![vec![vec![vec![Expr::zero(); dim]; dim]; dim]; dim];
    for l in 0..dim {
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue; // antisymmetric slot
                }
                for k in 0..dim {
                    let mut acc = gamma.symbol(l, j, k).differentiate_index(i)
                        - gamma.symbol(l, i, k).differentiate_index(j);
                    for m in 0..dim {
                        acc = acc
                            + gamma.symbol(l, i, m).clone() * gamma.symbol(m, j, k).clone()
                            - gamma.symbol(l, j, m).clone() * gamma.symbol(m, i, k).clone();
                    }
                    comps[l][i][j][k] = acc.simplify();
                }
            }
        }
    }
    RiemannTensor::from_raw(comps)
}

/// Christoffel symbols of the metric's Levi-Civita connection.
pub fn christoffel<T: Scalar>(g: &MetricField<T>) -> Result<Christoffel<T>, GeometryError> {
    let inv = g.inverse()?;
    Ok(christoffel_from_inverse(g, &inv))
}

pub fn riemann<T: Scalar>(g: &MetricField<T>) -> Result<RiemannTensor<T>, GeometryError> {
    Ok(Curvature::new(g)?.riemann)
}

pub fn ricci<T: Scalar>(g: &MetricField<T>) -> Result<SymTensor<T>, GeometryError> {
    Ok(Curvature::new(g)?.ricci)
}

pub fn scalar_curvature<T: Scalar>(g: &MetricField<T>) -> Result<Expr<T>, GeometryError> {
    Ok(Curvature::new(g)?.scalar)
}

pub fn ricci_operator<T: Scalar>(
    g: &MetricField<T>,
) -> Result<EndomorphismField<T>, GeometryError> {
    Ok(Curvature::new(g)?.ricci_operator)
}
