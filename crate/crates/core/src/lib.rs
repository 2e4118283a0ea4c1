//! Symbolic-numeric differential geometry engine for almost contact metric
//! manifolds: expression-valued tensor calculus on a single chart,
//! classification of (almost) f-cosymplectic structures, curvature identity
//! verification, and Ricci-soliton residual analysis.

pub mod geometry;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod symexpr;

pub use scalar::Scalar;

/// `f64` aliases for the common types.
pub type Expr64 = symexpr::Expr<f64>;
pub type Point64 = symexpr::Point<f64>;
pub type MetricField64 = geometry::MetricField<f64>;
pub type VectorField64 = geometry::VectorField<f64>;
pub type OneForm64 = geometry::OneForm<f64>;
pub type KForm64 = geometry::KForm<f64>;
pub type EndomorphismField64 = geometry::EndomorphismField<f64>;
pub type SymTensor64 = geometry::SymTensor<f64>;
pub type Christoffel64 = geometry::Christoffel<f64>;
pub type RiemannTensor64 = geometry::RiemannTensor<f64>;
pub type Curvature64 = geometry::Curvature<f64>;
pub type SampleConfig64 = sample::SampleConfig<f64>;
pub type ResidualReport64 = report::ResidualReport<f64>;
