//! Embedded-manifold numerics.
//!
//! Spheres `S^{2n+1}` live in `R^{2n+2} ≅ C^{n+1}` with interleaved
//! coordinates `(x_0, y_0, x_1, y_1, ...)`, so `z_k = x_k + i y_k`. Every
//! manifold in this crate is handled through its ambient coordinates: a point
//! type knows how to move off itself along an ambient displacement and land
//! back on the manifold, and how to project ambient vectors onto its tangent
//! space. Finite-difference brackets and exterior derivatives are built on top
//! of that and nothing else.

use nalgebra::DVector;
use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub type Vector = DVector<f64>;

/// Tangency tolerance for field evaluations, relative to `max(1, |v|)`.
pub const TANGENCY_TOL: f64 = 1e-10;
/// Accepted deviation of `|p|` from 1 for points handed in by callers.
pub const UNIT_TOL: f64 = 1e-10;
const MIN_NORM: f64 = 1e-12;

/// Multiplication by `i` in interleaved coordinates.
pub fn imul(v: &Vector) -> Vector {
    let mut w = Vector::zeros(v.len());
    for k in 0..v.len() / 2 {
        w[2 * k] = -v[2 * k + 1];
        w[2 * k + 1] = v[2 * k];
    }
    w
}

/// Scalar multiplication by a complex number.
pub fn cscale(z: Complex64, v: &Vector) -> Vector {
    v * z.re + imul(v) * z.im
}

#[derive(Clone, Debug, PartialEq)]
pub struct AmbientPoint {
    coords: Vector,
}

impl AmbientPoint {
    /// Accepts coordinates that are already on the unit sphere.
    pub fn new(coords: Vector) -> Result<Self> {
        check_even(coords.len())?;
        let norm = coords.norm();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::OffManifold(norm));
        }
        Ok(Self { coords })
    }

    /// For coordinates known to be unit length, e.g. images under a unitary map.
    pub(crate) fn new_unchecked(coords: Vector) -> Self {
        Self { coords }
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(Vector::from_column_slice(coords))
    }

    pub fn coords(&self) -> &Vector {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    /// The `n` of `S^{2n+1}`.
    pub fn n(&self) -> usize {
        self.coords.len() / 2 - 1
    }
}

fn check_even(len: usize) -> Result<()> {
    if len < 2 || !len.is_multiple_of(2) {
        return Err(Error::InvalidDimension(len));
    }
    Ok(())
}

pub fn project_point(x: &[f64]) -> Result<AmbientPoint> {
    normalize(Vector::from_column_slice(x))
}

pub(crate) fn normalize(x: Vector) -> Result<AmbientPoint> {
    check_even(x.len())?;
    let norm = x.norm();
    if norm <= MIN_NORM {
        return Err(Error::ZeroVector(norm));
    }
    Ok(AmbientPoint { coords: x / norm })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentVector {
    pub base: AmbientPoint,
    pub comps: Vector,
}

impl TangentVector {
    pub fn new(base: AmbientPoint, comps: Vector) -> Result<Self> {
        if comps.len() != base.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: base.ambient_dim(),
                found: comps.len(),
            });
        }
        let defect = base.normal_defect(&comps);
        if defect > TANGENCY_TOL * comps.norm().max(1.0) {
            return Err(Error::NotTangent(defect));
        }
        Ok(Self { base, comps })
    }
}

pub fn tangent_project(p: &AmbientPoint, v: &[f64]) -> Result<TangentVector> {
    if v.len() != p.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim(),
            found: v.len(),
        });
    }
    let comps = p.project(&Vector::from_column_slice(v));
    Ok(TangentVector {
        base: p.clone(),
        comps,
    })
}

/// A point of a submanifold (or open subset) of some `R^N`.
pub trait EmbeddedPoint: Clone {
    fn ambient(&self) -> Vector;

    /// Moves by the ambient displacement `v` and retracts onto the manifold.
    fn displace(&self, v: &Vector) -> Result<Self>;

    /// Orthogonal projection of an ambient vector onto the tangent space.
    fn project(&self, v: &Vector) -> Vector;

    /// Size of the normal component of `v`.
    fn normal_defect(&self, v: &Vector) -> f64;
}

impl EmbeddedPoint for AmbientPoint {
    fn ambient(&self) -> Vector {
        self.coords.clone()
    }

    fn displace(&self, v: &Vector) -> Result<Self> {
        normalize(&self.coords + v)
    }

    fn project(&self, v: &Vector) -> Vector {
        v - &self.coords * v.dot(&self.coords)
    }

    fn normal_defect(&self, v: &Vector) -> f64 {
        v.dot(&self.coords).abs()
    }
}

type FieldFn<'a, P> = dyn Fn(&P) -> Vector + 'a;

/// A smooth tangent vector field, evaluated in ambient coordinates.
pub struct VectorField<'a, P> {
    label: String,
    eval: Box<FieldFn<'a, P>>,
}

impl<'a, P: EmbeddedPoint> VectorField<'a, P> {
    pub fn new(label: impl Into<String>, eval: impl Fn(&P) -> Vector + 'a) -> Self {
        Self {
            label: label.into(),
            eval: Box::new(eval),
        }
    }

    /// Tangential projection of the constant ambient field `v`.
    pub fn constant(label: impl Into<String>, v: Vector) -> Self {
        Self::new(label, move |p: &P| p.project(&v))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Evaluates without the tangency check.
    pub fn raw(&self, p: &P) -> Vector {
        (self.eval)(p)
    }

    pub fn eval(&self, p: &P) -> Result<Vector> {
        let v = (self.eval)(p);
        let defect = p.normal_defect(&v);
        if defect > TANGENCY_TOL * v.norm().max(1.0) {
            return Err(Error::NonTangentField {
                label: self.label.clone(),
                defect,
            });
        }
        Ok(v)
    }
}

/// A 1-form, returned as the ambient vector it pairs with by inner product.
pub struct CovectorField<'a, P> {
    eval: Box<FieldFn<'a, P>>,
}

impl<'a, P: EmbeddedPoint> CovectorField<'a, P> {
    pub fn new(eval: impl Fn(&P) -> Vector + 'a) -> Self {
        Self {
            eval: Box::new(eval),
        }
    }

    pub fn pair(&self, p: &P, v: &Vector) -> f64 {
        (self.eval)(p).dot(v)
    }
}

type TwoFormFn<'a, P> = dyn Fn(&P, &Vector, &Vector) -> f64 + 'a;

pub struct TwoFormField<'a, P> {
    eval: Box<TwoFormFn<'a, P>>,
}

impl<'a, P: EmbeddedPoint> TwoFormField<'a, P> {
    pub fn new(eval: impl Fn(&P, &Vector, &Vector) -> f64 + 'a) -> Self {
        Self {
            eval: Box::new(eval),
        }
    }

    pub fn eval(&self, p: &P, u: &Vector, v: &Vector) -> f64 {
        (self.eval)(p, u, v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
    pub fd_step: f64,
    pub tol: f64,
}

impl SampleConfig {
    pub const DEFAULT_FD_STEP: f64 = 1e-5;

    pub fn new(seed: u64, count: usize, fd_step: f64, tol: f64) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidConfig("count must be at least 1".into()));
        }
        if !(1e-8..=1e-2).contains(&fd_step) {
            return Err(Error::InvalidConfig(format!(
                "fd_step {fd_step:e} outside [1e-8, 1e-2]"
            )));
        }
        if !(tol > 0.0) {
            return Err(Error::InvalidConfig(format!("tol {tol:e} must be positive")));
        }
        Ok(Self {
            seed,
            count,
            fd_step,
            tol,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_count(mut self, count: usize) -> Self {
        self.count = count.max(1);
        self
    }

    pub fn with_fd_step(mut self, fd_step: f64) -> Self {
        self.fd_step = fd_step.clamp(1e-8, 1e-2);
        self
    }
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            count: 256,
            fd_step: Self::DEFAULT_FD_STEP,
            tol: 1e-6,
        }
    }
}

/// Central difference of `f` along the curve `h ↦ retract(p + h v)`.
pub fn derivative_of_scalar<P: EmbeddedPoint>(
    f: impl Fn(&P) -> f64,
    p: &P,
    v: &Vector,
    h: f64,
) -> Result<f64> {
    let fwd = p.displace(&(v * h))?;
    let bwd = p.displace(&(v * -h))?;
    Ok((f(&fwd) - f(&bwd)) / (2.0 * h))
}

/// Ambient derivative of a field along the curve `h ↦ retract(p + h v)`.
pub fn derivative_of_field<P: EmbeddedPoint>(
    field: &VectorField<'_, P>,
    p: &P,
    v: &Vector,
    h: f64,
) -> Result<Vector> {
    let fwd = field.eval(&p.displace(&(v * h))?)?;
    let bwd = field.eval(&p.displace(&(v * -h))?)?;
    Ok((fwd - bwd) / (2.0 * h))
}

/// `[X, Y]_p = D_X Y − D_Y X`, projected to the tangent space.
pub fn lie_bracket<P: EmbeddedPoint>(
    x: &VectorField<'_, P>,
    y: &VectorField<'_, P>,
    p: &P,
    cfg: &SampleConfig,
) -> Result<Vector> {
    let xv = x.eval(p)?;
    let yv = y.eval(p)?;
    let dy = derivative_of_field(y, p, &xv, cfg.fd_step)?;
    let dx = derivative_of_field(x, p, &yv, cfg.fd_step)?;
    Ok(p.project(&(dy - dx)))
}

/// `dα(X, Y) = X α(Y) − Y α(X) − α([X, Y])`, no factor 1/2.
pub fn exterior_derivative_2form<P: EmbeddedPoint>(
    alpha: &CovectorField<'_, P>,
    p: &P,
    x: &VectorField<'_, P>,
    y: &VectorField<'_, P>,
    cfg: &SampleConfig,
) -> Result<f64> {
    let h = cfg.fd_step;
    let xv = x.eval(p)?;
    let yv = y.eval(p)?;
    let alpha_y = |q: &P| alpha.pair(q, &y.raw(q));
    let alpha_x = |q: &P| alpha.pair(q, &x.raw(q));
    let bracket = lie_bracket(x, y, p, cfg)?;
    Ok(derivative_of_scalar(alpha_y, p, &xv, h)? - derivative_of_scalar(alpha_x, p, &yv, h)?
        - alpha.pair(p, &bracket))
}

/// Invariant formula for the differential of a 2-form, no factorial weights.
pub fn exterior_derivative_3form<P: EmbeddedPoint>(
    omega: &TwoFormField<'_, P>,
    p: &P,
    x: &VectorField<'_, P>,
    y: &VectorField<'_, P>,
    z: &VectorField<'_, P>,
    cfg: &SampleConfig,
) -> Result<f64> {
    let h = cfg.fd_step;
    let (xv, yv, zv) = (x.eval(p)?, y.eval(p)?, z.eval(p)?);
    fn pair<'b, P: EmbeddedPoint>(
        omega: &'b TwoFormField<'_, P>,
        a: &'b VectorField<'_, P>,
        b: &'b VectorField<'_, P>,
    ) -> impl Fn(&P) -> f64 + 'b {
        move |q: &P| omega.eval(q, &a.raw(q), &b.raw(q))
    }
    let xy = lie_bracket(x, y, p, cfg)?;
    let xz = lie_bracket(x, z, p, cfg)?;
    let yz = lie_bracket(y, z, p, cfg)?;
    Ok(derivative_of_scalar(pair(omega, y, z), p, &xv, h)?
        - derivative_of_scalar(pair(omega, x, z), p, &yv, h)?
        + derivative_of_scalar(pair(omega, x, y), p, &zv, h)?
        - omega.eval(p, &xy, &zv)
        + omega.eval(p, &xz, &yv)
        - omega.eval(p, &yz, &xv))
}

/// Seeded source of sample points and vectors.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn gaussian(&mut self, len: usize) -> Vector {
        Vector::from_fn(len, |_, _| StandardNormal.sample(&mut self.rng))
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u: f64 = rand::Rng::random(&mut self.rng);
        lo + (hi - lo) * u
    }

    /// Uniform point on `S^{2n+1}`.
    pub fn point(&mut self, n: usize) -> AmbientPoint {
        loop {
            if let Ok(p) = normalize(self.gaussian(2 * n + 2)) {
                return p;
            }
        }
    }

    /// Gaussian tangent vector at `p`.
    pub fn tangent<P: EmbeddedPoint>(&mut self, p: &P) -> Vector {
        let g = self.gaussian(p.ambient().len());
        p.project(&g)
    }
}

pub fn random_points(count: usize, n: usize, cfg: &SampleConfig) -> Vec<AmbientPoint> {
    let mut sampler = Sampler::new(cfg.seed);
    (0..count).map(|_| sampler.point(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn project_point_examples() {
        let p = project_point(&[2.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.coords(), &v(&[1.0, 0.0, 0.0, 0.0]));
        let p = project_point(&[3.0, 4.0]).unwrap();
        assert!((p.coords() - v(&[0.6, 0.8])).norm() < 1e-15);
        assert!(matches!(project_point(&[0.0, 0.0]), Err(Error::ZeroVector(_))));
        assert!(matches!(project_point(&[1.0, 0.0, 0.0]), Err(Error::InvalidDimension(3))));
    }

    #[test]
    fn project_point_is_idempotent() {
        let p = project_point(&[0.3, -1.2, 4.0, 0.5]).unwrap();
        let q = project_point(p.coords().as_slice()).unwrap();
        assert!((p.coords() - q.coords()).norm() < 1e-15);
    }

    #[test]
    fn tangent_project_examples() {
        let p = AmbientPoint::from_slice(&[1.0, 0.0]).unwrap();
        assert_eq!(tangent_project(&p, &[0.0, 1.0]).unwrap().comps, v(&[0.0, 1.0]));
        assert_eq!(tangent_project(&p, &[1.0, 0.0]).unwrap().comps, v(&[0.0, 0.0]));
        assert_eq!(tangent_project(&p, &[1.0, 1.0]).unwrap().comps, v(&[0.0, 1.0]));
        assert!(matches!(
            tangent_project(&p, &[1.0, 1.0, 0.0]),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn off_sphere_point_rejected() {
        assert!(matches!(
            AmbientPoint::from_slice(&[1.0, 1.0]),
            Err(Error::OffManifold(_))
        ));
    }

    #[test]
    fn tangent_vector_rejects_normal_part() {
        let p = AmbientPoint::from_slice(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(TangentVector::new(p.clone(), v(&[0.0, 1.0, 0.0, 0.0])).is_ok());
        assert!(matches!(
            TangentVector::new(p, v(&[0.1, 1.0, 0.0, 0.0])),
            Err(Error::NotTangent(_))
        ));
    }

    #[test]
    fn random_points_deterministic_and_normalized() {
        let cfg = SampleConfig::default().with_seed(7);
        assert_eq!(random_points(1, 1, &cfg), random_points(1, 1, &cfg));
        let pts = random_points(3, 2, &cfg);
        assert_eq!(pts.len(), 3);
        for p in &pts {
            assert_eq!(p.ambient_dim(), 6);
            assert!((p.coords().norm() - 1.0).abs() < 1e-12);
        }
        assert!(random_points(0, 1, &cfg).is_empty());
    }

    #[test]
    fn sample_config_validation() {
        assert!(SampleConfig::new(1, 0, 1e-5, 1e-6).is_err());
        assert!(SampleConfig::new(1, 1, 1e-1, 1e-6).is_err());
        assert!(SampleConfig::new(1, 1, 1e-9, 1e-6).is_err());
        assert!(SampleConfig::new(1, 1, 1e-5, 0.0).is_err());
        assert!(SampleConfig::new(1, 1, 1e-5, 1e-6).is_ok());
    }

    /// Skew generator: rotation in the (i, j) coordinate plane.
    fn rotation(dim: usize, i: usize, j: usize) -> nalgebra::DMatrix<f64> {
        let mut a = nalgebra::DMatrix::zeros(dim, dim);
        a[(i, j)] = -1.0;
        a[(j, i)] = 1.0;
        a
    }

    #[test]
    fn bracket_of_linear_fields_is_commutator() {
        let cfg = SampleConfig::default();
        let a = rotation(4, 0, 2) + rotation(4, 1, 3) * 0.5;
        let b = rotation(4, 0, 1) - rotation(4, 2, 3) * 2.0;
        let (ac, bc) = (a.clone(), b.clone());
        let x = VectorField::new("A z", move |p: &AmbientPoint| &ac * p.coords());
        let y = VectorField::new("B z", move |p: &AmbientPoint| &bc * p.coords());
        let mut s = Sampler::new(3);
        for _ in 0..32 {
            let p = s.point(1);
            let br = lie_bracket(&x, &y, &p, &cfg).unwrap();
            let exact = (&b * &a - &a * &b) * p.coords();
            assert!((br - exact).norm() < 1e-8);
        }
    }

    #[test]
    fn bracket_antisymmetric_and_self_zero() {
        let cfg = SampleConfig::default();
        let mut s = Sampler::new(11);
        for _ in 0..16 {
            let p = s.point(2);
            let x = VectorField::constant("X", s.gaussian(6));
            let y = VectorField::constant("Y", s.gaussian(6));
            let xy = lie_bracket(&x, &y, &p, &cfg).unwrap();
            let yx = lie_bracket(&y, &x, &p, &cfg).unwrap();
            assert!((xy + yx).norm() < 10.0 * cfg.fd_step * cfg.fd_step);
            assert!(lie_bracket(&x, &x, &p, &cfg).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn bracket_with_reeb_matches_flow_conjugation() {
        // L_ξ X = d/ds (φ_{-s})_* X(φ_s p), with φ_s p = e^{is} p.
        let cfg = SampleConfig::default();
        let mut s = Sampler::new(5);
        let xi = VectorField::new("xi", |p: &AmbientPoint| imul(p.coords()));
        for _ in 0..16 {
            let p = s.point(1);
            let c = s.gaussian(4);
            let x = VectorField::constant("X", c.clone());
            let br = lie_bracket(&xi, &x, &p, &cfg).unwrap();
            let conj = |t: f64| {
                let q = AmbientPoint::new(cscale(Complex64::from_polar(1.0, t), p.coords()))
                    .unwrap();
                cscale(Complex64::from_polar(1.0, -t), &q.project(&c))
            };
            let h = 1e-4;
            let oracle = (conj(h) - conj(-h)) / (2.0 * h);
            assert!((br - oracle).norm() < 1e-6);
            assert!(lie_bracket(&xi, &xi, &p, &cfg).unwrap().norm() < 1e-9);
        }
    }

    #[test]
    fn non_tangent_field_is_reported() {
        let cfg = SampleConfig::default();
        let p = AmbientPoint::from_slice(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let radial = VectorField::new("radial", |p: &AmbientPoint| p.coords().clone());
        let x = VectorField::constant("X", v(&[0.0, 1.0, 0.0, 0.0]));
        assert!(matches!(
            lie_bracket(&radial, &x, &p, &cfg),
            Err(Error::NonTangentField { .. })
        ));
    }

    #[test]
    fn d_of_exact_form_vanishes() {
        // f = x0 y0^2 + 3 x1 - y1 x0 x1, with its ambient gradient
        let df = CovectorField::new(|p: &AmbientPoint| {
            let c = p.coords();
            v(&[
                c[1] * c[1] - c[3] * c[2],
                2.0 * c[0] * c[1],
                3.0 - c[3] * c[0],
                -c[0] * c[2],
            ])
        });
        let cfg = SampleConfig::default();
        let mut s = Sampler::new(9);
        for _ in 0..8 {
            let p = s.point(1);
            let x = VectorField::constant("X", s.gaussian(4));
            let y = VectorField::constant("Y", s.gaussian(4));
            let d = exterior_derivative_2form(&df, &p, &x, &y, &cfg).unwrap();
            assert!(d.abs() < 1e-6, "{d}");
        }
    }
}
