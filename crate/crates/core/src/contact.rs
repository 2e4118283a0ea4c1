//! Almost contact metric structures: algebraic validation, the fundamental
//! 2-form, normality via the Nijenhuis torsion, extraction of the defining
//! function f from the form equation, classification, and the structure
//! curvature identities.

use thiserror::Error;

use crate::geometry::{
    self, Chart, Curvature, EndomorphismField, GeometryError, KForm, MetricField, OneForm,
    VectorField,
};
use crate::report::{CheckResult, ResidualReport};
use crate::sample::{run_residual_checks, ResidualCheck, SampleConfig, SampleError};
use crate::scalar::{lit, Scalar};
use crate::symexpr::{EvalError, Expr, Point};

#[derive(Debug, Error)]
pub enum ContactError {
    #[error("almost contact structures need odd dimension, got {0}")]
    EvenDimension(usize),
    #[error("component arity {got} does not match chart dimension {expected}")]
    Arity { expected: usize, got: usize },
    #[error("eta is not closed (max |d eta| = {residual:e}); not almost f-cosymplectic")]
    EtaNotClosed { residual: f64 },
    #[error("d omega is not proportional to eta wedge omega (max inconsistency {residual:e})")]
    InconsistentQuotients { residual: f64 },
    #[error("eta wedge omega vanishes at a sample point; volume degenerate")]
    DegenerateVolume,
    #[error("f does not satisfy df wedge eta = 0 (max residual {residual:e})")]
    FVariesOffReeb { residual: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Sampling(#[from] SampleError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// The quadruple (phi, xi, eta, g) on an odd-dimensional chart.
#[derive(Debug, Clone)]
pub struct AlmostContactStructure<T> {
    pub chart: Chart,
    pub phi: EndomorphismField<T>,
    pub xi: VectorField<T>,
    pub eta: OneForm<T>,
    pub g: MetricField<T>,
}

/// The defining function f and the derived scalar xi(f) + f^2.
#[derive(Debug, Clone)]
pub struct StructureScalars<T> {
    pub f: Expr<T>,
    pub f_tilde: Expr<T>,
}

/// Classification flags; mutually consistent by construction.
#[derive(Debug, Clone)]
pub struct ClassificationReport<T> {
    pub almost_cosymplectic: bool,
    pub almost_alpha_cosymplectic: bool,
    pub almost_f_cosymplectic: bool,
    pub normal: bool,
    pub cosymplectic: bool,
    pub alpha_cosymplectic: bool,
    pub kenmotsu_type: bool,
    pub f_cosymplectic: bool,
    /// Extracted f as a constant, when it is one.
    pub constant_f: Option<T>,
    pub scalars: StructureScalars<T>,
    pub report: ResidualReport<T>,
}

/// Verdict of the constancy proposition for the derived scalar.
#[derive(Debug, Clone)]
pub struct ReebConstancyVerdict<T> {
    /// Max |xi(f_tilde)| over samples.
    pub reeb_derivative: T,
    /// Whether the hypothesis |xi(f_tilde)| <= tol held.
    pub hypothesis_holds: bool,
    /// Max |D f_tilde| (g-norm of the full gradient) over samples; asserted
    /// only when the hypothesis holds.
    pub gradient_norm: Option<T>,
    pub pass: bool,
}

/// The two Laplacian routes at a point, plus the Reeb-direction closed form
/// when the gradient of F is parallel to xi.
#[derive(Debug, Clone, Copy)]
pub struct LaplacianComparison<T> {
    /// Sum of g(∇_{e_i} DF, e_i) over an orthonormal frame at the point.
    pub frame_sum: T,
    /// Coordinate formula g^{ij} Hess_ij at the point.
    pub coordinate: T,
    /// xi(xi(F)) + 2n f xi(F), reported when DF is parallel to xi there.
    pub reeb_form: Option<T>,
}

impl<T: Scalar> AlmostContactStructure<T> {
    pub fn new(
        chart: Chart,
        phi: EndomorphismField<T>,
        xi: VectorField<T>,
        eta: OneForm<T>,
        g: MetricField<T>,
    ) -> Result<Self, ContactError> {
        let dim = chart.dim();
        if dim % 2 == 0 {
            return Err(ContactError::EvenDimension(dim));
        }
        for (got, name) in [
            (phi.dim(), "phi"),
            (xi.dim(), "xi"),
            (eta.dim(), "eta"),
            (g.dim(), "g"),
        ] {
            let _ = name;
            if got != dim {
                return Err(ContactError::Arity { expected: dim, got });
            }
        }
        Ok(AlmostContactStructure {
            chart,
            phi,
            xi,
            eta,
            g,
        })
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// n with dim = 2n + 1; never configurable independently.
    pub fn n(&self) -> usize {
        (self.dim() - 1) / 2
    }

    /// xi applied to a scalar.
    pub fn reeb_derivative(&self, f: &Expr<T>) -> Expr<T> {
        geometry::directional_derivative(&self.xi, f)
    }

    /// Residuals of the defining algebraic identities:
    /// phi^2 = -I + eta (x) xi, eta o phi = 0, phi xi = 0,
    /// g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y),
    /// g(phi X, Y) = -g(X, phi Y), and g(X, xi) = eta(X).
    pub fn validate_algebraic(
        &self,
        cfg: &SampleConfig<T>,
    ) -> Result<ResidualReport<T>, ContactError> {
        let dim = self.dim();
        let phi2 = self.phi.compose(&self.phi);

        let mut phi_square = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let delta = if i == j { Expr::one() } else { Expr::zero() };
                let e = phi2.entry(i, j).clone() + delta
                    - self.xi.component(i).clone() * self.eta.component(j).clone();
                phi_square.push(e.simplify());
            }
        }

        let mut eta_phi = Vec::new();
        for j in 0..dim {
            let mut acc = Expr::zero();
            for i in 0..dim {
                acc = acc + self.eta.component(i).clone() * self.phi.entry(i, j).clone();
            }
            eta_phi.push(acc.simplify());
        }

        let phi_xi = self.phi.apply(&self.xi).components().to_vec();

        let mut compat = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                let mut acc = Expr::zero();
                for k in 0..dim {
                    for l in 0..dim {
                        acc = acc
                            + self.g.entry(k, l).clone()
                                * self.phi.entry(k, i).clone()
                                * self.phi.entry(l, j).clone();
                    }
                }
                let e = acc - self.g.entry(i, j).clone()
                    + self.eta.component(i).clone() * self.eta.component(j).clone();
                compat.push(e.simplify());
            }
        }

        let mut skew = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                let mut acc = Expr::zero();
                for k in 0..dim {
                    acc = acc
                        + self.g.entry(k, j).clone() * self.phi.entry(k, i).clone()
                        + self.g.entry(i, k).clone() * self.phi.entry(k, j).clone();
                }
                skew.push(acc.simplify());
            }
        }

        let mut duality = Vec::new();
        for i in 0..dim {
            let mut acc = Expr::zero();
            for j in 0..dim {
                acc = acc + self.g.entry(i, j).clone() * self.xi.component(j).clone();
            }
            duality.push((acc - self.eta.component(i).clone()).simplify());
        }

        let checks = vec![
            ResidualCheck::new("phi_square", phi_square),
            ResidualCheck::new("eta_circ_phi", eta_phi),
            ResidualCheck::new("phi_xi", phi_xi),
            ResidualCheck::new("metric_compatibility", compat),
            ResidualCheck::new("phi_skew_adjoint", skew),
            ResidualCheck::new("xi_eta_duality", duality),
        ];
        Ok(run_residual_checks(checks, &self.g.acceptor(), cfg)?)
    }

    /// The fundamental 2-form omega(X, Y) = g(phi X, Y).
    pub fn fundamental_form(&self) -> KForm<T> {
        let dim = self.dim();
        let mut omega = KForm::zero(dim, 2).expect("degree 2 fits in odd dim >= 3");
        for i in 0..dim {
            for j in (i + 1)..dim {
                let mut acc = Expr::zero();
                for k in 0..dim {
                    acc = acc + self.phi.entry(k, i).clone() * self.g.entry(k, j).clone();
                }
                omega.set(vec![i, j], acc).expect("index is increasing");
            }
        }
        omega
    }

    /// Nijenhuis torsion on each coordinate pair (i < j):
    /// `phi^2 [X,Y] + [phi X, phi Y] - phi [phi X, Y] - phi [X, phi Y] + 2 d eta(X,Y) xi`.
    pub fn nijenhuis(&self) -> Result<Vec<((usize, usize), VectorField<T>)>, ContactError> {
        let dim = self.dim();
        let phi2 = self.phi.compose(&self.phi);
        let d_eta = KForm::from_one_form(&self.eta).exterior_derivative()?;
        let mut out = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let ei = VectorField::coordinate(dim, i);
                let ej = VectorField::coordinate(dim, j);
                let phi_ei = self.phi.column(i);
                let phi_ej = self.phi.column(j);

                let t1 = phi2.apply(&geometry::lie_bracket(&ei, &ej));
                let t2 = geometry::lie_bracket(&phi_ei, &phi_ej);
                let t3 = self.phi.apply(&geometry::lie_bracket(&phi_ei, &ej));
                let t4 = self.phi.apply(&geometry::lie_bracket(&ei, &phi_ej));
                let deta_ij = d_eta.component(&[i, j]);

                let comps = (0..dim)
                    .map(|k| {
                        (t1.component(k).clone() + t2.component(k).clone()
                            - t3.component(k).clone()
                            - t4.component(k).clone()
                            + Expr::num(2.0) * deta_ij.clone() * self.xi.component(k).clone())
                        .simplify()
                    })
                    .collect();
                out.push(((i, j), VectorField::new(comps)));
            }
        }
        Ok(out)
    }

    /// Normality: the Nijenhuis torsion vanishes at samples.
    pub fn is_normal(&self, cfg: &SampleConfig<T>) -> Result<(bool, CheckResult<T>), ContactError> {
        let exprs: Vec<Expr<T>> = self
            .nijenhuis()?
            .into_iter()
            .flat_map(|(_, v)| v.components().to_vec())
            .collect();
        let report = run_residual_checks(
            vec![ResidualCheck::new("nijenhuis", exprs)],
            &self.g.acceptor(),
            cfg,
        )?;
        let check = report.checks.into_iter().next().expect("one check pushed");
        Ok((check.pass, check))
    }

    /// Solves `d omega = 2 f (eta wedge omega)` for f.
    ///
    /// Requires d eta = 0 and a nowhere-vanishing eta wedge omega on the
    /// sample region; all componentwise quotients must agree, and the
    /// extracted f must satisfy df wedge eta = 0.
    pub fn extract_f(&self, cfg: &SampleConfig<T>) -> Result<StructureScalars<T>, ContactError> {
        let d_eta = KForm::from_one_form(&self.eta).exterior_derivative()?;
        if !d_eta.is_symbolically_zero() {
            let exprs: Vec<Expr<T>> = d_eta.components().map(|(_, e)| e.clone()).collect();
            let rep = run_residual_checks(
                vec![ResidualCheck::new("d_eta", exprs)],
                &self.g.acceptor(),
                cfg,
            )?;
            let residual = rep.checks[0].residual;
            if !rep.checks[0].pass {
                return Err(ContactError::EtaNotClosed {
                    residual: residual.to_f64().unwrap_or(f64::NAN),
                });
            }
        }

        let omega = self.fundamental_form();
        let d_omega = omega.exterior_derivative()?;
        let eta_omega = KForm::from_one_form(&self.eta).wedge(&omega)?;

        // pivot component: largest |eta wedge omega| at a probe point
        let (points, _) = crate::sample::draw_points(cfg, &self.g.acceptor())?;
        let probe = points.first().cloned().unwrap_or_else(|| {
            Point::new(cfg.ranges.iter().map(|&(lo, hi)| (lo + hi) / lit(2.0)).collect())
        });
        let mut pivot: Option<(Vec<usize>, T)> = None;
        for (idx, e) in eta_omega.components() {
            let v = e.evaluate(&probe)?.abs();
            if pivot.as_ref().map(|&(_, best)| v > best).unwrap_or(true) {
                pivot = Some((idx.clone(), v));
            }
        }
        let (pivot_idx, pivot_mag) = pivot.ok_or(ContactError::DegenerateVolume)?;
        if pivot_mag <= lit(1e-12) {
            return Err(ContactError::DegenerateVolume);
        }

        let f = (d_omega.component(&pivot_idx)
            / (Expr::num(2.0) * eta_omega.component(&pivot_idx)))
        .simplify();

        // consistency across every stored multi-index of the 3-forms, and
        // the volume form must stay nonzero at samples
        let mut consistency = Vec::new();
        let mut indices: Vec<Vec<usize>> = eta_omega.components().map(|(i, _)| i.clone()).collect();
        for (i, _) in d_omega.components() {
            if !indices.contains(i) {
                indices.push(i.clone());
            }
        }
        for idx in &indices {
            let resid = (d_omega.component(idx)
                - Expr::num(2.0) * f.clone() * eta_omega.component(idx))
            .simplify();
            consistency.push(resid);
        }

        let df_eta = {
            let df = KForm::from_scalar(self.dim(), f.clone()).exterior_derivative()?;
            let eta = KForm::from_one_form(&self.eta);
            df.wedge(&eta)?
        };
        let df_eta_exprs: Vec<Expr<T>> = df_eta.components().map(|(_, e)| e.clone()).collect();

        let volume_guard = {
            let g = self.g.clone();
            let pe = eta_omega.component(&pivot_idx);
            move |p: &Point<T>| {
                g.positive_definite_at(p)
                    && pe
                        .evaluate(p)
                        .map(|v| v.abs() > lit(1e-12))
                        .unwrap_or(false)
            }
        };
        let rep = run_residual_checks(
            vec![
                ResidualCheck::new("f_quotient_consistency", consistency),
                ResidualCheck::new("df_wedge_eta", df_eta_exprs),
            ],
            &volume_guard,
            cfg,
        )?;
        if !rep.checks[0].pass {
            return Err(ContactError::InconsistentQuotients {
                residual: rep.checks[0].residual.to_f64().unwrap_or(f64::NAN),
            });
        }
        if !rep.checks[1].pass {
            return Err(ContactError::FVariesOffReeb {
                residual: rep.checks[1].residual.to_f64().unwrap_or(f64::NAN),
            });
        }

        let f_tilde = (self.reeb_derivative(&f) + f.clone() * f.clone()).simplify();
        Ok(StructureScalars { f, f_tilde })
    }

    /// Classifies the structure. Fails with the specific obstruction when
    /// the structure is not almost f-cosymplectic.
    pub fn classify(&self, cfg: &SampleConfig<T>) -> Result<ClassificationReport<T>, ContactError> {
        let mut report = self.validate_algebraic(cfg)?;
        let scalars = self.extract_f(cfg)?;
        let (normal, nij_check) = self.is_normal(cfg)?;
        report.push(nij_check);

        let omega = self.fundamental_form();
        let d_omega = omega.exterior_derivative()?;
        let d_omega_exprs: Vec<Expr<T>> = d_omega.components().map(|(_, e)| e.clone()).collect();
        let domega_rep = run_residual_checks(
            vec![ResidualCheck::new("d_omega", d_omega_exprs)],
            &self.g.acceptor(),
            cfg,
        )?;
        let d_omega_zero = domega_rep.checks[0].pass;
        report.merge(domega_rep);

        // is the extracted f constant? symbolic fast path, then samples
        let grad_f: Vec<Expr<T>> = (0..self.dim())
            .map(|i| scalars.f.differentiate_index(i).simplify())
            .collect();
        let constant_f = if grad_f.iter().all(|e| e.is_zero()) {
            Some(scalars.f.as_const().unwrap_or_else(T::zero))
        } else {
            let rep = run_residual_checks(
                vec![ResidualCheck::new("df", grad_f)],
                &self.g.acceptor(),
                cfg,
            )?;
            if rep.checks[0].pass {
                let probe = Point::new(
                    cfg.ranges
                        .iter()
                        .map(|&(lo, hi)| (lo + hi) / lit(2.0))
                        .collect(),
                );
                scalars.f.evaluate(&probe).ok()
            } else {
                None
            }
        };

        let algebra_ok = report.passed();
        let f_zero = matches!(constant_f, Some(c) if c.abs() <= cfg.tolerance);
        let class = ClassificationReport {
            almost_cosymplectic: algebra_ok && d_omega_zero,
            almost_alpha_cosymplectic: algebra_ok && constant_f.is_some(),
            almost_f_cosymplectic: algebra_ok,
            normal,
            cosymplectic: algebra_ok && normal && f_zero,
            alpha_cosymplectic: algebra_ok && normal && constant_f.is_some(),
            kenmotsu_type: algebra_ok && normal && constant_f.is_some() && !f_zero,
            f_cosymplectic: algebra_ok && normal,
            constant_f,
            scalars,
            report,
        };
        Ok(class)
    }

    /// Residuals of the three structure identities on an f-cosymplectic
    /// manifold: `∇_X xi = -f phi^2 X`, `Q xi = -2n f~ xi`, and
    /// `R(X, Y) xi = f~ [eta(X) Y - eta(Y) X]`. Advisory when not normal.
    pub fn verify_structure_identities(
        &self,
        scalars: &StructureScalars<T>,
        cfg: &SampleConfig<T>,
    ) -> Result<ResidualReport<T>, ContactError> {
        let dim = self.dim();
        let curv = Curvature::new(&self.g)?;
        let (normal, _) = self.is_normal(cfg)?;
        let phi2 = self.phi.compose(&self.phi);

        // (nabla_j xi)^i + f (phi^2)^i_j
        let nabla_xi = geometry::covariant_derivative_tensor(&curv.christoffel, &self.xi);
        let mut id_nabla = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let e = nabla_xi.entry(i, j).clone()
                    + scalars.f.clone() * phi2.entry(i, j).clone();
                id_nabla.push(e.simplify());
            }
        }

        // Q xi + 2n f~ xi
        let two_n = Expr::num(2.0 * self.n() as f64);
        let q_xi = curv.ricci_operator.apply(&self.xi);
        let mut id_ricci_op = Vec::new();
        for i in 0..dim {
            let e = q_xi.component(i).clone()
                + two_n.clone() * scalars.f_tilde.clone() * self.xi.component(i).clone();
            id_ricci_op.push(e.simplify());
        }

        // R(e_i, e_j) xi - f~ [eta_i e_j - eta_j e_i]
        let mut id_curvature = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                for l in 0..dim {
                    let mut acc = Expr::zero();
                    for k in 0..dim {
                        acc = acc
                            + curv.riemann.component(l, i, j, k).clone()
                                * self.xi.component(k).clone();
                    }
                    let delta_jl = if l == j { Expr::one() } else { Expr::zero() };
                    let delta_il = if l == i { Expr::one() } else { Expr::zero() };
                    let rhs = scalars.f_tilde.clone()
                        * (self.eta.component(i).clone() * delta_jl
                            - self.eta.component(j).clone() * delta_il);
                    id_curvature.push((acc - rhs).simplify());
                }
            }
        }

        let mk = |name: &str, exprs: Vec<Expr<T>>| {
            let c = ResidualCheck::new(name, exprs);
            if normal {
                c
            } else {
                c.advisory()
                    .with_note("structure is not normal; identity not guaranteed")
            }
        };
        let mut rep = run_residual_checks(
            vec![
                mk("reeb_covariant_derivative", id_nabla),
                mk("ricci_operator_on_reeb", id_ricci_op),
                mk("curvature_on_reeb", id_curvature),
            ],
            &self.g.acceptor(),
            cfg,
        )?;
        if !normal {
            rep.note("structure not normal: identity checks are advisory");
        }
        Ok(rep)
    }

    /// Three-dimensional Ricci-operator formula:
    /// `Q = (-3 f~ - R/2) eta (x) xi + (f~ + R/2) I`.
    pub fn verify_3d_ricci(
        &self,
        scalars: &StructureScalars<T>,
        cfg: &SampleConfig<T>,
    ) -> Result<ResidualReport<T>, ContactError> {
        let dim = self.dim();
        if dim != 3 {
            return Err(ContactError::Arity {
                expected: 3,
                got: dim,
            });
        }
        let curv = Curvature::new(&self.g)?;
        let half_r = Expr::num(0.5) * curv.scalar.clone();
        let coeff_eta = -(Expr::num(3.0) * scalars.f_tilde.clone()) - half_r.clone();
        let coeff_id = scalars.f_tilde.clone() + half_r;

        let mut exprs = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let delta = if i == j { Expr::one() } else { Expr::zero() };
                let rhs = coeff_eta.clone()
                    * self.xi.component(i).clone()
                    * self.eta.component(j).clone()
                    + coeff_id.clone() * delta;
                exprs.push((curv.ricci_operator.entry(i, j).clone() - rhs).simplify());
            }
        }
        Ok(run_residual_checks(
            vec![ResidualCheck::new("ricci_formula_3d", exprs)],
            &self.g.acceptor(),
            cfg,
        )?)
    }

    /// Constancy of the derived scalar: if xi(f~) vanishes at samples, the
    /// full gradient D f~ must vanish too.
    pub fn check_reeb_constancy(
        &self,
        scalars: &StructureScalars<T>,
        cfg: &SampleConfig<T>,
    ) -> Result<ReebConstancyVerdict<T>, ContactError> {
        let xi_ft = self.reeb_derivative(&scalars.f_tilde);
        let rep = run_residual_checks(
            vec![ResidualCheck::new("xi_f_tilde", vec![xi_ft])],
            &self.g.acceptor(),
            cfg,
        )?;
        let reeb_derivative = rep.checks[0].residual;
        let hypothesis_holds = rep.checks[0].pass;
        if !hypothesis_holds {
            return Ok(ReebConstancyVerdict {
                reeb_derivative,
                hypothesis_holds,
                gradient_norm: None,
                pass: true, // nothing to assert when the hypothesis fails
            });
        }
        let grad = geometry::gradient(&scalars.f_tilde, &self.g)?;
        // g-norm^2 of the gradient = g_ij (Df)^i (Df)^j
        let mut norm2 = Expr::zero();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                norm2 = norm2
                    + self.g.entry(i, j).clone()
                        * grad.component(i).clone()
                        * grad.component(j).clone();
            }
        }
        let norm2 = norm2.simplify();
        let rep2 = run_residual_checks(
            vec![ResidualCheck::new("grad_f_tilde_norm2", vec![norm2])
                .with_threshold(cfg.tolerance * cfg.tolerance)],
            &self.g.acceptor(),
            cfg,
        )?;
        let gradient_norm = Some(rep2.checks[0].residual.sqrt());
        let pass = rep2.checks[0].pass;
        Ok(ReebConstancyVerdict {
            reeb_derivative,
            hypothesis_holds,
            gradient_norm,
            pass,
        })
    }

    /// Computes the Laplacian of `f` at `p` two ways: the orthonormal-frame
    /// sum of g(∇_{e_i} Df, e_i) and the coordinate formula. When Df is
    /// parallel to xi at `p`, also reports xi(xi(f)) + 2n f xi(f).
    pub fn laplacian_two_ways(
        &self,
        scalars: &StructureScalars<T>,
        f: &Expr<T>,
        p: &Point<T>,
    ) -> Result<LaplacianComparison<T>, ContactError> {
        let dim = self.dim();
        let curv = Curvature::new(&self.g)?;
        let grad = geometry::gradient(f, &self.g)?;
        let nabla_grad = geometry::covariant_derivative_tensor(&curv.christoffel, &grad);

        let frame = geometry::orthonormal_frame(&self.g, p, Some(&self.xi))?;
        let gm = self.g.eval_at(p)?;
        let nabla_at: Vec<Vec<T>> = nabla_grad.eval_at(p)?;
        let mut frame_sum = T::zero();
        for e in &frame {
            // g(∇_e Df, e) = g_kl (∇_m Df)^k e^m e^l
            for k in 0..dim {
                for l in 0..dim {
                    for m in 0..dim {
                        frame_sum = frame_sum + gm[k][l] * nabla_at[k][m] * e[m] * e[l];
                    }
                }
            }
        }

        let coordinate = geometry::laplacian(f, &self.g)?.evaluate(p)?;

        // is Df parallel to xi at p?
        let gv = grad.eval_at(p)?;
        let xv = self.xi.eval_at(p)?;
        let xi_f = geometry::directional_derivative(&self.xi, f);
        let xi_f_at = xi_f.evaluate(p)?;
        let mut parallel = true;
        let scale = T::one()
            + gv.iter().fold(T::zero(), |a, &c| a.max(c.abs()));
        for i in 0..dim {
            if (gv[i] - xi_f_at * xv[i]).abs() > lit::<T>(1e-9) * scale {
                parallel = false;
            }
        }
        let reeb_form = if parallel {
            let xi_xi_f = self.reeb_derivative(&xi_f).evaluate(p)?;
            let two_n_f = lit::<T>(2.0 * self.n() as f64) * scalars.f.evaluate(p)?;
            Some(xi_xi_f + two_n_f * xi_f_at)
        } else {
            None
        };

        Ok(LaplacianComparison {
            frame_sum,
            coordinate,
            reeb_form,
        })
    }

    /// Max residual of `h = (1/2) L_xi phi` at samples (vanishes on normal
    /// structures).
    pub fn h_tensor_residual(&self, cfg: &SampleConfig<T>) -> Result<CheckResult<T>, ContactError> {
        let l = geometry::lie_derivative_endomorphism(&self.phi, &self.xi);
        let mut exprs = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                exprs.push((Expr::num(0.5) * l.entry(i, j).clone()).simplify());
            }
        }
        let rep = run_residual_checks(
            vec![ResidualCheck::new("h_tensor", exprs)],
            &self.g.acceptor(),
            cfg,
        )?;
        Ok(rep.checks.into_iter().next().expect("one check pushed"))
    }
}
