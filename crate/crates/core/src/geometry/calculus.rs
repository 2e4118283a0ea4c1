//! Derivative operations: Lie brackets and derivatives, covariant
//! derivatives, gradient, Hessian, divergence, and Laplacian.

use super::{
    Christoffel, Curvature, EndomorphismField, GeometryError, MetricField, SymTensor, VectorField,
};
use crate::scalar::Scalar;
use crate::symexpr::Expr;

/// `[X, Y]^i = X^j ∂_j Y^i − Y^j ∂_j X^i`.
pub fn lie_bracket<T: Scalar>(x: &VectorField<T>, y: &VectorField<T>) -> VectorField<T> {
    let dim = x.dim();
    let comps = (0..dim)
        .map(|i| {
            let mut acc = Expr::zero();
            for j in 0..dim {
                acc = acc + x.component(j).clone() * y.component(i).differentiate_index(j)
                    - y.component(j).clone() * x.component(i).differentiate_index(j);
            }
            acc
        })
        .collect();
    VectorField::new(comps)
}

/// Directional derivative of a scalar: `V(F) = V^i ∂_i F`.
pub fn directional_derivative<T: Scalar>(v: &VectorField<T>, f: &Expr<T>) -> Expr<T> {
    let mut acc = Expr::zero();
    for i in 0..v.dim() {
        acc = acc + v.component(i).clone() * f.differentiate_index(i);
    }
    acc.simplify()
}

/// `(∇_D X)^i = D^j (∂_j X^i + Γ^i_{jk} X^k)`.
pub fn covariant_derivative_vector<T: Scalar>(
    gamma: &Christoffel<T>,
    x: &VectorField<T>,
    direction: &VectorField<T>,
) -> VectorField<T> {
    let dim = gamma.dim();
    let comps = (0..dim)
        .map(|i| {
            let mut acc = Expr::zero();
            for j in 0..dim {
                let mut inner = x.component(i).differentiate_index(j);
                for k in 0..dim {
                    inner = inner + gamma.symbol(i, j, k).clone() * x.component(k).clone();
                }
                acc = acc + direction.component(j).clone() * inner;
            }
            acc
        })
        .collect();
    VectorField::new(comps)
}

/// Total covariant derivative of a vector field as a mixed tensor:
/// `entry(i, m) = (∇_m X)^i`.
pub fn covariant_derivative_tensor<T: Scalar>(
    gamma: &Christoffel<T>,
    x: &VectorField<T>,
) -> EndomorphismField<T> {
    let dim = gamma.dim();
    let mut entries = vec![vec![Expr::zero(); dim]; dim];
    for i in 0..dim {
        for m in 0..dim {
            let mut acc = x.component(i).differentiate_index(m);
            for k in 0..dim {
                acc = acc + gamma.symbol(i, m, k).clone() * x.component(k).clone();
            }
            entries[i][m] = acc;
        }
    }
    EndomorphismField::new(entries).expect("square by construction")
}

/// `(L_V g)(X, Y) = g(∇_X V, Y) + g(X, ∇_Y V)` on coordinate fields.
pub fn lie_derivative_metric<T: Scalar>(
    g: &MetricField<T>,
    v: &VectorField<T>,
) -> Result<SymTensor<T>, GeometryError> {
    let gamma = super::christoffel(g)?;
    Ok(lie_derivative_metric_with(g, &gamma, v))
}

pub(crate) fn lie_derivative_metric_with<T: Scalar>(
    g: &MetricField<T>,
    gamma: &Christoffel<T>,
    v: &VectorField<T>,
) -> SymTensor<T> {
    let dim = g.dim();
    let nabla_v = covariant_derivative_tensor(gamma, v);
    let mut out = SymTensor::zero(dim);
    for i in 0..dim {
        for j in i..dim {
            let mut acc = Expr::zero();
            for k in 0..dim {
                acc = acc
                    + g.entry(k, j).clone() * nabla_v.entry(k, i).clone()
                    + g.entry(i, k).clone() * nabla_v.entry(k, j).clone();
            }
            let e = acc.simplify();
            out.set(i, j, e.clone());
            out.set(j, i, e);
        }
    }
    out
}

/// `(L_V φ)(X) = [V, φX] − φ[V, X]` columnwise on coordinate fields.
pub fn lie_derivative_endomorphism<T: Scalar>(
    phi: &EndomorphismField<T>,
    v: &VectorField<T>,
) -> EndomorphismField<T> {
    let dim = phi.dim();
    let mut entries = vec![vec![Expr::zero(); dim]; dim];
    for j in 0..dim {
        let phi_ej = phi.column(j);
        let first = lie_bracket(v, &phi_ej);
        // [V, ∂_j]^k = −∂_j V^k
        let bracket_vj =
            VectorField::new((0..dim).map(|k| -v.component(k).differentiate_index(j)).collect());
        let second = phi.apply(&bracket_vj);
        for i in 0..dim {
            entries[i][j] =
                (first.component(i).clone() - second.component(i).clone()).simplify();
        }
    }
    EndomorphismField::new(entries).expect("square by construction")
}

/// Gradient: `(DF)^i = g^{ij} ∂_j F`.
pub fn gradient<T: Scalar>(
    f: &Expr<T>,
    g: &MetricField<T>,
) -> Result<VectorField<T>, GeometryError> {
    let inv = g.inverse()?;
    let dim = g.dim();
    let comps = (0..dim)
        .map(|i| {
            let mut acc = Expr::zero();
            for j in 0..dim {
                if inv[i][j].is_zero() {
                    continue;
                }
                acc = acc + inv[i][j].clone() * f.differentiate_index(j);
            }
            acc
        })
        .collect();
    Ok(VectorField::new(comps))
}

/// Hessian: `Hess_ij = ∂_i ∂_j F − Γ^k_{ij} ∂_k F`.
pub fn hessian<T: Scalar>(
    f: &Expr<T>,
    g: &MetricField<T>,
) -> Result<SymTensor<T>, GeometryError> {
    let gamma = super::christoffel(g)?;
    Ok(hessian_with(f, &gamma))
}

pub(crate) fn hessian_with<T: Scalar>(f: &Expr<T>, gamma: &Christoffel<T>) -> SymTensor<T> {
    let dim = gamma.dim();
    let df: Vec<Expr<T>> = (0..dim).map(|k| f.differentiate_index(k).simplify()).collect();
    let mut out = SymTensor::zero(dim);
    for i in 0..dim {
        for j in i..dim {
            let mut acc = df[j].differentiate_index(i);
            for k in 0..dim {
                acc = acc - gamma.symbol(k, i, j).clone() * df[k].clone();
            }
            let e = acc.simplify();
            out.set(i, j, e.clone());
            out.set(j, i, e);
        }
    }
    out
}

/// Divergence: `div V = ∂_i V^i + Γ^i_{ik} V^k`.
pub fn divergence<T: Scalar>(
    v: &VectorField<T>,
    g: &MetricField<T>,
) -> Result<Expr<T>, GeometryError> {
    let gamma = super::christoffel(g)?;
    Ok(divergence_with(v, &gamma))
}

pub(crate) fn divergence_with<T: Scalar>(v: &VectorField<T>, gamma: &Christoffel<T>) -> Expr<T> {
    let dim = gamma.dim();
    let mut acc = Expr::zero();
    for i in 0..dim {
        acc = acc + v.component(i).differentiate_index(i);
        for k in 0..dim {
            acc = acc + gamma.symbol(i, i, k).clone() * v.component(k).clone();
        }
    }
    acc.simplify()
}

/// Laplace operator via the coordinate formula `ΔF = g^{ij} Hess_ij`.
pub fn laplacian<T: Scalar>(f: &Expr<T>, g: &MetricField<T>) -> Result<Expr<T>, GeometryError> {
    let inv = g.inverse()?;
    let gamma = super::christoffel(g)?;
    let hess = hessian_with(f, &gamma);
    let dim = g.dim();
    let mut acc = Expr::zero();
    for i in 0..dim {
        for j in 0..dim {
            if inv[i][j].is_zero() {
                continue;
            }
            acc = acc + inv[i][j].clone() * hess.entry(i, j).clone();
        }
    }
    Ok(acc.simplify())
}

/// Covariant derivative of the Ricci tensor:
/// `out[m][j][k] = (∇_m Ric)_{jk} = ∂_m Ric_jk − Γ^l_{mj} Ric_lk − Γ^l_{mk} Ric_jl`.
pub fn nabla_ricci<T: Scalar>(curv: &Curvature<T>) -> Vec<Vec<Vec<Expr<T>>>> {
    let dim = curv.ricci.dim();
    let mut out = vec![vec![vec![Expr::zero(); dim]; dim]; dim];
    for m in 0..dim {
        for j in 0..dim {
            for k in j..dim {
                let mut acc = curv.ricci.entry(j, k).differentiate_index(m);
                for l in 0..dim {
                    acc = acc
                        - curv.christoffel.symbol(l, m, j).clone() * curv.ricci.entry(l, k).clone()
                        - curv.christoffel.symbol(l, m, k).clone() * curv.ricci.entry(j, l).clone();
                }
                let e = acc.simplify();
                out[m][j][k] = e.clone();
                out[m][k][j] = e;
            }
        }
    }
    out
}
