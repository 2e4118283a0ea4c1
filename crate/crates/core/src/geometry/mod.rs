//! Riemannian machinery on a single chart: expression-valued tensors, the
//! Levi-Civita connection, curvature, derivatives of tensors and forms, and
//! pointwise orthonormal frames.

mod calculus;
mod curvature;
mod forms;
mod frame;

pub use calculus::{
    covariant_derivative_tensor, covariant_derivative_vector, directional_derivative, divergence,
    gradient, hessian, laplacian, lie_bracket, lie_derivative_endomorphism, lie_derivative_metric,
    nabla_ricci,
};
pub use curvature::{christoffel, ricci, ricci_operator, riemann, scalar_curvature, Curvature};
pub use forms::KForm;
pub use frame::{
    contracted_bianchi_residual, det_numeric, orthonormal_frame, BianchiChecker,
};

use thiserror::Error;

use crate::sample::MINOR_FLOOR;
use crate::scalar::{lit, Scalar};
use crate::symexpr::{parse_expr, EvalError, Expr, Func, ParseError, Point};

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("expected a {expected}-dimensional object, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("chart needs at least one coordinate")]
    EmptyChart,
    #[error("duplicate coordinate name `{0}`")]
    DuplicateCoordinate(String),
    #[error("coordinate name `{0}` is reserved or not an identifier")]
    BadCoordinateName(String),
    #[error("metric entry ({i},{j}) is not symmetric to ({j},{i})")]
    NotSymmetric { i: usize, j: usize },
    #[error("metric determinant is identically zero")]
    SingularMetric,
    #[error("metric is degenerate at the sample point")]
    DegenerateAtPoint,
    #[error("form degree {degree} exceeds limit {limit}")]
    DegreeOverflow { degree: usize, limit: usize },
    #[error("form index {0:?} is not strictly increasing within the chart dimension")]
    BadFormIndex(Vec<usize>),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A coordinate chart: an ordered list of distinct coordinate names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, GeometryError> {
        if names.is_empty() {
            return Err(GeometryError::EmptyChart);
        }
        let mut seen = Vec::new();
        for n in names {
            let n = n.as_ref();
            let ok = n
                .chars()
                .next()
                .map(|c| c.is_ascii_alphabetic())
                .unwrap_or(false)
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && Func::from_name(n).is_none();
            if !ok {
                return Err(GeometryError::BadCoordinateName(n.to_string()));
            }
            if seen.iter().any(|s: &String| s == n) {
                return Err(GeometryError::DuplicateCoordinate(n.to_string()));
            }
            seen.push(n.to_string());
        }
        Ok(Chart { names: seen })
    }

    pub fn xyz() -> Self {
        Chart::new(&["x", "y", "z"]).expect("static names are valid")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The coordinate symbol at `index` as an expression.
    pub fn coord<T: Scalar>(&self, index: usize) -> Expr<T> {
        Expr::coord(&self.names[index], index)
    }

    pub fn parse<T: Scalar>(&self, source: &str) -> Result<Expr<T>, ParseError> {
        parse_expr(source, &self.names)
    }
}

fn check_square<T>(entries: &[Vec<Expr<T>>]) -> Result<usize, GeometryError> {
    let dim = entries.len();
    for row in entries {
        if row.len() != dim {
            return Err(GeometryError::Shape {
                expected: dim,
                got: row.len(),
            });
        }
    }
    Ok(dim)
}

/// Covariant symmetric metric tensor with expression entries.
#[derive(Debug, Clone)]
pub struct MetricField<T> {
    entries: Vec<Vec<Expr<T>>>,
}

impl<T: Scalar> MetricField<T> {
    /// Entries are canonicalised; symmetry must hold symbolically.
    pub fn new(entries: Vec<Vec<Expr<T>>>) -> Result<Self, GeometryError> {
        let dim = check_square(&entries)?;
        let entries: Vec<Vec<Expr<T>>> = entries
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.simplify()).collect())
            .collect();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let diff = (entries[i][j].clone() - entries[j][i].clone()).simplify();
                if !diff.is_zero() {
                    return Err(GeometryError::NotSymmetric { i, j });
                }
            }
        }
        let g = MetricField { entries };
        if g.determinant().is_zero() {
            return Err(GeometryError::SingularMetric);
        }
        Ok(g)
    }

    pub fn diagonal(diag: Vec<Expr<T>>) -> Result<Self, GeometryError> {
        let dim = diag.len();
        let mut entries = vec![vec![Expr::zero(); dim]; dim];
        for (i, e) in diag.into_iter().enumerate() {
            entries[i][i] = e;
        }
        MetricField::new(entries)
    }

    pub fn euclidean(dim: usize) -> Self {
        MetricField::diagonal(vec![Expr::one(); dim]).expect("identity metric is valid")
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Expr<T> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Expr<T>>] {
        &self.entries
    }

    /// Symbolic determinant by cofactor expansion with zero pruning.
    pub fn determinant(&self) -> Expr<T> {
        det_expr(&self.entries).simplify()
    }

    /// Symbolic inverse via the adjugate; entries canonicalised.
    pub fn inverse(&self) -> Result<Vec<Vec<Expr<T>>>, GeometryError> {
        let dim = self.dim();
        let det = self.determinant();
        if det.is_zero() {
            return Err(GeometryError::SingularMetric);
        }
        let mut inv = vec![vec![Expr::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let minor = strike(&self.entries, j, i);
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                let cof = Expr::num(sign) * det_expr(&minor);
                inv[i][j] = (cof / det.clone()).simplify();
            }
        }
        Ok(inv)
    }

    pub fn eval_at(&self, p: &Point<T>) -> Result<Vec<Vec<T>>, EvalError> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.evaluate(p)).collect())
            .collect()
    }

    /// Positive definiteness at `p` via leading principal minors, all of
    /// which must exceed the floor.
    pub fn positive_definite_at(&self, p: &Point<T>) -> bool {
        let m = match self.eval_at(p) {
            Ok(m) => m,
            Err(_) => return false,
        };
        let floor = lit::<T>(MINOR_FLOOR);
        for k in 1..=self.dim() {
            let mut lead: Vec<Vec<T>> =
                (0..k).map(|i| (0..k).map(|j| m[i][j]).collect()).collect();
            if frame::det_numeric_in_place(&mut lead) <= floor {
                return false;
            }
        }
        true
    }

    /// Sample-point acceptor: positive definite metric at the point.
    pub fn acceptor(&self) -> impl Fn(&Point<T>) -> bool + '_ {
        move |p| self.positive_definite_at(p)
    }
}

fn strike<T: Clone>(m: &[Vec<Expr<T>>], row: usize, col: usize) -> Vec<Vec<Expr<T>>> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|&(j, _)| j != col)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect()
}

fn det_expr<T: Scalar>(m: &[Vec<Expr<T>>]) -> Expr<T> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Expr::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor = strike(m, 0, j);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        det = det + Expr::num(sign) * m[0][j].clone() * det_expr(&minor);
    }
    det
}

/// Contravariant vector field.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField<T> {
    components: Vec<Expr<T>>,
}

impl<T: Scalar> VectorField<T> {
    pub fn new(components: Vec<Expr<T>>) -> Self {
        VectorField {
            components: components.into_iter().map(|e| e.simplify()).collect(),
        }
    }

    /// The coordinate field along axis `index`.
    pub fn coordinate(dim: usize, index: usize) -> Self {
        let mut c = vec![Expr::zero(); dim];
        c[index] = Expr::one();
        VectorField { components: c }
    }

    pub fn zero(dim: usize) -> Self {
        VectorField {
            components: vec![Expr::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &Expr<T> {
        &self.components[i]
    }

    pub fn components(&self) -> &[Expr<T>] {
        &self.components
    }

    pub fn eval_at(&self, p: &Point<T>) -> Result<Vec<T>, EvalError> {
        self.components.iter().map(|e| e.evaluate(p)).collect()
    }

    pub fn is_symbolically_zero(&self) -> bool {
        self.components.iter().all(|e| e.is_zero())
    }
}

/// Covariant one-form.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm<T> {
    components: Vec<Expr<T>>,
}

impl<T: Scalar> OneForm<T> {
    pub fn new(components: Vec<Expr<T>>) -> Self {
        OneForm {
            components: components.into_iter().map(|e| e.simplify()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &Expr<T> {
        &self.components[i]
    }

    pub fn components(&self) -> &[Expr<T>] {
        &self.components
    }

    /// Pairing with a vector field.
    pub fn apply(&self, v: &VectorField<T>) -> Expr<T> {
        let mut acc = Expr::zero();
        for i in 0..self.dim() {
            acc = acc + self.components[i].clone() * v.component(i).clone();
        }
        acc.simplify()
    }
}

/// Mixed (1,1)-tensor field: `entry(i, j)` is the coefficient of the i-th
/// coordinate field in the image of the j-th.
#[derive(Debug, Clone, PartialEq)]
pub struct EndomorphismField<T> {
    entries: Vec<Vec<Expr<T>>>,
}

impl<T: Scalar> EndomorphismField<T> {
    pub fn new(entries: Vec<Vec<Expr<T>>>) -> Result<Self, GeometryError> {
        check_square(&entries)?;
        Ok(EndomorphismField {
            entries: entries
                .into_iter()
                .map(|row| row.into_iter().map(|e| e.simplify()).collect())
                .collect(),
        })
    }

    pub fn zero(dim: usize) -> Self {
        EndomorphismField {
            entries: vec![vec![Expr::zero(); dim]; dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i][i] = Expr::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Expr<T> {
        &self.entries[i][j]
    }

    /// The image of the j-th coordinate field.
    pub fn column(&self, j: usize) -> VectorField<T> {
        VectorField::new((0..self.dim()).map(|i| self.entries[i][j].clone()).collect())
    }

    pub fn apply(&self, v: &VectorField<T>) -> VectorField<T> {
        let dim = self.dim();
        let comps = (0..dim)
            .map(|i| {
                let mut acc = Expr::zero();
                for j in 0..dim {
                    acc = acc + self.entries[i][j].clone() * v.component(j).clone();
                }
                acc
            })
            .collect();
        VectorField::new(comps)
    }

    /// Matrix composition `self ∘ other`.
    pub fn compose(&self, other: &EndomorphismField<T>) -> EndomorphismField<T> {
        let dim = self.dim();
        let mut out = EndomorphismField::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Expr::zero();
                for k in 0..dim {
                    acc = acc + self.entries[i][k].clone() * other.entries[k][j].clone();
                }
                out.entries[i][j] = acc.simplify();
            }
        }
        out
    }

    pub fn eval_at(&self, p: &Point<T>) -> Result<Vec<Vec<T>>, EvalError> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.evaluate(p)).collect())
            .collect()
    }
}

/// Covariant symmetric 2-tensor field (Ricci, Lie derivatives of the metric,
/// Hessians, soliton residuals).
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor<T> {
    entries: Vec<Vec<Expr<T>>>,
}

impl<T: Scalar> SymTensor<T> {
    /// Entries are canonicalised and symmetrised from the given matrix.
    pub fn new(entries: Vec<Vec<Expr<T>>>) -> Result<Self, GeometryError> {
        check_square(&entries)?;
        Ok(SymTensor {
            entries: entries
                .into_iter()
                .map(|row| row.into_iter().map(|e| e.simplify()).collect())
                .collect(),
        })
    }

    pub fn zero(dim: usize) -> Self {
        SymTensor {
            entries: vec![vec![Expr::zero(); dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Expr<T> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Expr<T>>] {
        &self.entries
    }

    pub fn set(&mut self, i: usize, j: usize, e: Expr<T>) {
        self.entries[i][j] = e;
    }

    /// Entrywise `self - other`, canonicalised.
    pub fn sub(&self, other: &SymTensor<T>) -> SymTensor<T> {
        let dim = self.dim();
        let mut out = SymTensor::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                out.entries[i][j] =
                    (self.entries[i][j].clone() - other.entries[i][j].clone()).simplify();
            }
        }
        out
    }

    /// Flattened entries (upper triangle including the diagonal).
    pub fn upper_triangle(&self) -> Vec<Expr<T>> {
        let dim = self.dim();
        let mut out = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                out.push(self.entries[i][j].clone());
            }
        }
        out
    }

    pub fn eval_at(&self, p: &Point<T>) -> Result<Vec<Vec<T>>, EvalError> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.evaluate(p)).collect())
            .collect()
    }
}

/// Christoffel symbols of the Levi-Civita connection: `symbol(k, i, j)` is
/// the upper-index-k coefficient, symmetric in (i, j).
#[derive(Debug, Clone)]
pub struct Christoffel<T> {
    symbols: Vec<Vec<Vec<Expr<T>>>>,
}

impl<T: Scalar> Christoffel<T> {
    pub(crate) fn from_raw(symbols: Vec<Vec<Vec<Expr<T>>>>) -> Self {
        Christoffel { symbols }
    }

    pub fn dim(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbol(&self, k: usize, i: usize, j: usize) -> &Expr<T> {
        &self.symbols[k][i][j]
    }
}

/// Curvature tensor components: `component(l, i, j, k)` is the coefficient of
/// the l-th coordinate field in `R(e_i, e_j) e_k`, with the convention
/// `R(X, Y) Z = ∇_X ∇_Y Z − ∇_Y ∇_X Z − ∇_[X,Y] Z`.
#[derive(Debug, Clone)]
pub struct RiemannTensor<T> {
    comps: Vec<Vec<Vec<Vec<Expr<T>>>>>,
}

impl<T: Scalar> RiemannTensor<T> {
    pub(crate) fn from_raw(comps: Vec<Vec<Vec<Vec<Expr<T>>>>>) -> Self {
        RiemannTensor { comps }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, l: usize, i: usize, j: usize, k: usize) -> &Expr<T> {
        &self.comps[l][i][j][k]
    }
}
