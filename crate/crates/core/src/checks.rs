//! Pointwise property checks on products of spheres and the report type
//! that aggregates them.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{exterior_derivative_3form, lie_bracket, EmbeddedPoint, SampleConfig, TwoFormField, Vector, VectorField};
use crate::product::{j_alpha, AlphaParam, ComplexStructure, ProductMetric, ProductPoint, ProductTangent};
use crate::sphere::{SasakianSphere, SasakianStructure};

/// Step for the brackets inside the Nijenhuis tensor.
pub const NIJENHUIS_FD_STEP: f64 = 1e-4;
/// Tolerance for the invariance and kernel tests of `tangency_check`.
pub const TANGENCY_CHECK_TOL: f64 = 1e-8;
/// Threshold a non-Kähler witness must exceed.
pub const NONKAHLER_THRESHOLD: f64 = 1e-3;

/// How `max_defect` is compared with `tol`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionKind {
    /// Passes iff every sample has defect `≤ tol`.
    AtMost,
    /// Passes iff some sample has value `> tol`; used for witness searches
    /// and negative controls.
    Exceeds,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub point: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub defect: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Witness {
    pub fn new<P: EmbeddedPoint>(p: &P, vectors: &[Vector], defect: f64) -> Self {
        Self {
            point: p.ambient().iter().copied().collect(),
            vectors: vectors.iter().map(|v| v.iter().copied().collect()).collect(),
            defect,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub samples: usize,
    pub max_defect: f64,
    pub tol: f64,
    pub kind: CriterionKind,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

impl VerificationReport {
    pub fn builder(suite: impl Into<String>, tol: f64, kind: CriterionKind) -> ReportBuilder {
        ReportBuilder {
            suite: suite.into(),
            tol,
            kind,
            samples: 0,
            max: 0.0,
            worst: None,
        }
    }

    /// Report for a single exact (boolean) check.
    pub fn exact(suite: impl Into<String>, ok: bool, note: impl Into<String>) -> Self {
        let defect = if ok { 0.0 } else { 1.0 };
        Self {
            suite: suite.into(),
            samples: 1,
            max_defect: defect,
            tol: 0.0,
            kind: CriterionKind::AtMost,
            passed: ok,
            witnesses: if ok {
                Vec::new()
            } else {
                vec![Witness { point: Vec::new(), vectors: Vec::new(), defect, note: Some(note.into()) }]
            },
        }
    }
}

/// Accumulates per-sample defects in sample order.
pub struct ReportBuilder {
    suite: String,
    tol: f64,
    kind: CriterionKind,
    samples: usize,
    max: f64,
    worst: Option<Witness>,
}

impl ReportBuilder {
    /// Records one sample. A NaN defect counts as a failure.
    pub fn record(&mut self, defect: f64, witness: impl FnOnce() -> Witness) {
        self.samples += 1;
        let d = if defect.is_nan() { f64::INFINITY } else { defect.abs() };
        if self.worst.is_none() || d > self.max {
            self.max = d;
            let mut w = witness();
            w.defect = d;
            self.worst = Some(w);
        }
    }

    pub fn finish(self) -> VerificationReport {
        let passed = match self.kind {
            CriterionKind::AtMost => self.samples > 0 && self.max <= self.tol,
            CriterionKind::Exceeds => self.max > self.tol,
        };
        let witnesses = match (self.kind, passed) {
            (CriterionKind::AtMost, true) => Vec::new(),
            _ => self.worst.into_iter().collect(),
        };
        VerificationReport {
            suite: self.suite,
            samples: self.samples,
            max_defect: self.max,
            tol: self.tol,
            kind: self.kind,
            passed,
            witnesses,
        }
    }
}

fn constant_field(label: &str, v: &ProductTangent) -> VectorField<'static, ProductPoint> {
    VectorField::constant(label, v.to_ambient())
}

fn j_field<'a, J: ComplexStructure>(j: &'a J, f: &'a VectorField<'a, ProductPoint>) -> VectorField<'a, ProductPoint> {
    VectorField::new(format!("J{}", f.label()), move |q: &ProductPoint| {
        j.apply(q, &ProductTangent::from_ambient(q, &f.raw(q))).to_ambient()
    })
}

/// `|N_J(X,Y)|` with `N_J(X,Y) = [X,Y] + J[JX,Y] + J[X,JY] − [JX,JY]`.
///
/// `X` and `Y` are extended as projected constant fields. The step in
/// `cfg` is ignored in favour of [`NIJENHUIS_FD_STEP`].
pub fn nijenhuis_defect<J: ComplexStructure>(
    j: &J,
    m: &ProductPoint,
    x: &ProductTangent,
    y: &ProductTangent,
    cfg: &SampleConfig,
) -> Result<f64> {
    let cfg = cfg.clone().with_fd_step(NIJENHUIS_FD_STEP);
    let fx = constant_field("X", x);
    let fy = constant_field("Y", y);
    let jx = j_field(j, &fx);
    let jy = j_field(j, &fy);
    let apply = |v: Vector| j.apply(m, &ProductTangent::from_ambient(m, &v)).to_ambient();
    let n = lie_bracket(&fx, &fy, m, &cfg)? + apply(lie_bracket(&jx, &fy, m, &cfg)?)
        + apply(lie_bracket(&fx, &jy, m, &cfg)?)
        - lie_bracket(&jx, &jy, m, &cfg)?;
    Ok(n.norm())
}

/// `|g(JX, JY) − g(X, Y)|`.
pub fn hermitian_defect<G: ProductMetric + ?Sized, J: ComplexStructure + ?Sized>(
    g: &G,
    j: &J,
    m: &ProductPoint,
    x: &ProductTangent,
    y: &ProductTangent,
) -> f64 {
    (g.metric(m, &j.apply(m, x), &j.apply(m, y)) - g.metric(m, x, y)).abs()
}

/// `dη₁` pulled back to `S₁ × S₂`.
pub fn d_eta1(m: &ProductPoint, x: &ProductTangent, y: &ProductTangent) -> f64 {
    SasakianSphere::new(m.p1.n()).d_eta(&m.p1, &x.x1, &y.x1)
}

/// `dη₂` pulled back to `S₁ × S₂`.
pub fn d_eta2(m: &ProductPoint, x: &ProductTangent, y: &ProductTangent) -> f64 {
    SasakianSphere::new(m.p2.n()).d_eta(&m.p2, &x.x2, &y.x2)
}

/// `dη₁(X, J_α X)`.
pub fn semipositivity_check(m: &ProductPoint, x: &ProductTangent, alpha: &AlphaParam) -> f64 {
    d_eta1(m, x, &j_alpha(m, x, alpha))
}

/// `|dη₁(J_αX, J_αY) − dη₁(X, Y)|`.
pub fn type11_defect(m: &ProductPoint, x: &ProductTangent, y: &ProductTangent, alpha: &AlphaParam) -> f64 {
    let (jx, jy) = (j_alpha(m, x, alpha), j_alpha(m, y, alpha));
    (d_eta1(m, &jx, &jy) - d_eta1(m, x, y)).abs()
}

/// `|dΩ(X,Y,Z)|` for the fundamental form `Ω = g(J·,·)` of `s`.
pub fn nonkahler_witness<S: ComplexStructure + ProductMetric>(
    s: &S,
    m: &ProductPoint,
    x: &ProductTangent,
    y: &ProductTangent,
    z: &ProductTangent,
    cfg: &SampleConfig,
) -> Result<f64> {
    let omega = TwoFormField::new(|q: &ProductPoint, a: &Vector, b: &Vector| {
        let a = ProductTangent::from_ambient(q, &q.project(a));
        let b = ProductTangent::from_ambient(q, &q.project(b));
        s.metric(q, &s.apply(q, &a), &b)
    });
    let d = exterior_derivative_3form(
        &omega,
        m,
        &constant_field("X", x),
        &constant_field("Y", y),
        &constant_field("Z", z),
        cfg,
    )?;
    Ok(d.abs())
}

fn span_matrix(basis: &[ProductTangent]) -> DMatrix<f64> {
    let cols: Vec<Vector> = basis.iter().map(ProductTangent::to_ambient).collect();
    DMatrix::from_columns(&cols)
}

/// Decides whether the `J_α`-invariant span of `basis` lies in
/// `ker(dη₁ + dη₂)` at `m`.
pub fn tangency_check(m: &ProductPoint, basis: &[ProductTangent], alpha: &AlphaParam) -> Result<bool> {
    if basis.is_empty() {
        return Ok(true);
    }
    let b = span_matrix(basis);
    let scale = basis.iter().map(ProductTangent::norm).fold(1.0, f64::max);
    let svd = b.clone().svd(true, true);
    let eps = 1e-10 * scale;
    let mut residual: f64 = 0.0;
    for v in basis {
        let jv = j_alpha(m, v, alpha).to_ambient();
        let coeffs = svd.solve(&jv, eps).map_err(|e| Error::ModelMismatch(e.to_string()))?;
        residual = residual.max((&b * coeffs - &jv).norm());
    }
    if residual > TANGENCY_CHECK_TOL * scale {
        return Err(Error::NotComplexSubspace(residual));
    }
    let dim = m.ambient().len();
    let probes: Vec<ProductTangent> = (0..dim)
        .map(|k| ProductTangent::from_ambient(m, &m.project(&Vector::from_fn(dim, |r, _| if r == k { 1.0 } else { 0.0 }))))
        .collect();
    Ok(basis.iter().all(|v| {
        probes.iter().all(|w| (d_eta1(m, v, w) + d_eta2(m, v, w)).abs() <= TANGENCY_CHECK_TOL * scale)
    }))
}
