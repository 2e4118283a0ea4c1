//! Pointwise numeric linear algebra: orthonormal frames by Gram-Schmidt and
//! the contracted second-Bianchi residual.

use super::{Curvature, GeometryError, MetricField, VectorField};
use crate::scalar::{lit, Scalar};
use crate::symexpr::{Expr, Point};

/// Determinant by Gaussian elimination with partial pivoting; consumes `m`.
pub(crate) fn det_numeric_in_place<T: Scalar>(m: &mut Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut det = T::one();
    for col in 0..n {
        let mut pivot = col;
        for row in (col + 1)..n {
            if m[row][col].abs() > m[pivot][col].abs() {
                pivot = row;
            }
        }
        if m[pivot][col] == T::zero() {
            return T::zero();
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det = det * m[col][col];
        for row in (col + 1)..n {
            let factor = m[row][col] / m[col][col];
            for k in col..n {
                let v = m[row][k] - factor * m[col][k];
                m[row][k] = v;
            }
        }
    }
    det
}

/// Determinant of a numeric matrix.
pub fn det_numeric<T: Scalar>(m: &[Vec<T>]) -> T {
    let mut work = m.to_vec();
    det_numeric_in_place(&mut work)
}

fn metric_inner<T: Scalar>(gm: &[Vec<T>], u: &[T], v: &[T]) -> T {
    let mut acc = T::zero();
    for i in 0..u.len() {
        for j in 0..v.len() {
            acc = acc + gm[i][j] * u[i] * v[j];
        }
    }
    acc
}

/// Gram-Schmidt orthonormalisation of the coordinate basis at `p`.
///
/// When `distinguished` is given, it is normalised first, placed last in the
/// returned frame, and the remaining coordinate directions are orthogonalised
/// against it. The Gram matrix of the result is the identity to roundoff.
pub fn orthonormal_frame<T: Scalar>(
    g: &MetricField<T>,
    p: &Point<T>,
    distinguished: Option<&VectorField<T>>,
) -> Result<Vec<Vec<T>>, GeometryError> {
    let dim = g.dim();
    let gm = g.eval_at(p)?;
    let skip_floor = lit::<T>(1e-12);

    let mut done: Vec<Vec<T>> = Vec::with_capacity(dim);
    let tail = match distinguished {
        Some(v) => {
            let vv = v.eval_at(p)?;
            let n2 = metric_inner(&gm, &vv, &vv);
            if n2 <= lit(1e-12) {
                return Err(GeometryError::DegenerateAtPoint);
            }
            let n = n2.sqrt();
            Some(vv.into_iter().map(|c| c / n).collect::<Vec<T>>())
        }
        None => None,
    };
    let wanted = dim - tail.iter().len();

    for axis in 0..dim {
        if done.len() == wanted {
            break;
        }
        let mut w: Vec<T> = (0..dim)
            .map(|i| if i == axis { T::one() } else { T::zero() })
            .collect();
        let original = metric_inner(&gm, &w, &w);
        for u in done.iter().chain(tail.iter()) {
            let c = metric_inner(&gm, &w, u);
            for i in 0..dim {
                w[i] = w[i] - c * u[i];
            }
        }
        let n2 = metric_inner(&gm, &w, &w);
        if n2 <= skip_floor * original {
            continue; // axis already spanned
        }
        let n = n2.sqrt();
        done.push(w.into_iter().map(|c| c / n).collect());
    }

    if done.len() != wanted {
        return Err(GeometryError::DegenerateAtPoint);
    }
    done.extend(tail);
    Ok(done)
}

/// Precomputed symbolic data for the twice-contracted second Bianchi
/// identity, evaluated pointwise against an orthonormal frame.
pub struct BianchiChecker<T> {
    g: MetricField<T>,
    nabla_ric: Vec<Vec<Vec<Expr<T>>>>,
}

impl<T: Scalar> BianchiChecker<T> {
    pub fn new(g: &MetricField<T>) -> Result<Self, GeometryError> {
        let curv = Curvature::new(g)?;
        Ok(BianchiChecker {
            g: g.clone(),
            nabla_ric: super::calculus::nabla_ricci(&curv),
        })
    }

    pub fn from_curvature(g: &MetricField<T>, curv: &Curvature<T>) -> Self {
        BianchiChecker {
            g: g.clone(),
            nabla_ric: super::calculus::nabla_ricci(curv),
        }
    }

    /// `|Σ_i [(∇_Z Ric)(e_i, e_i) − 2 (∇_{e_i} Ric)(e_i, Z)]|` at `p`.
    pub fn residual_at(&self, z: &VectorField<T>, p: &Point<T>) -> Result<T, GeometryError> {
        let dim = self.g.dim();
        let frame = orthonormal_frame(&self.g, p, None)?;
        let zv = z.eval_at(p)?;
        let mut d = vec![vec![vec![T::zero(); dim]; dim]; dim];
        for m in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    d[m][j][k] = self.nabla_ric[m][j][k].evaluate(p)?;
                }
            }
        }
        let mut acc = T::zero();
        for e in &frame {
            for m in 0..dim {
                for j in 0..dim {
                    for k in 0..dim {
                        // (∇_Z Ric)(e, e) − 2 (∇_e Ric)(e, Z)
                        acc = acc + zv[m] * e[j] * e[k] * d[m][j][k]
                            - (T::one() + T::one()) * e[m] * e[j] * zv[k] * d[m][j][k];
                    }
                }
            }
        }
        Ok(acc.abs())
    }
}

/// One-shot form of [`BianchiChecker`] for a single point.
pub fn contracted_bianchi_residual<T: Scalar>(
    g: &MetricField<T>,
    z: &VectorField<T>,
    p: &Point<T>,
) -> Result<T, GeometryError> {
    BianchiChecker::new(g)?.residual_at(z, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_frame_is_the_coordinate_basis() {
        let g = MetricField::<f64>::euclidean(3);
        let p = Point::new(vec![0.3, -0.2, 0.9]);
        let frame = orthonormal_frame(&g, &p, None).unwrap();
        for (i, e) in frame.iter().enumerate() {
            for (j, &c) in e.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((c - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn distinguished_vector_is_last_and_unit() {
        let g = MetricField::<f64>::euclidean(3);
        let xi = VectorField::coordinate(3, 2);
        let p = Point::new(vec![0.0, 0.0, 0.0]);
        let frame = orthonormal_frame(&g, &p, Some(&xi)).unwrap();
        assert_eq!(frame[2], vec![0.0, 0.0, 1.0]);
        let gm = g.eval_at(&p).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                let got = metric_inner(&gm, &frame[i], &frame[j]);
                assert!((got - want).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn flat_bianchi_residual_is_zero() {
        let g = MetricField::<f64>::euclidean(3);
        let z = VectorField::coordinate(3, 0);
        let p = Point::new(vec![0.1, 0.2, 0.3]);
        let r = contracted_bianchi_residual(&g, &z, &p).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn numeric_determinant() {
        let m: Vec<Vec<f64>> = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        assert!((det_numeric(&m) - 3.0).abs() < 1e-14);
        let singular: Vec<Vec<f64>> = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert_eq!(det_numeric(&singular), 0.0);
    }
}
