//! The round Sasakian structure on `S^{2n+1} ⊂ C^{n+1}`.
//!
//! `ξ_p = i p`, `η_p(X) = ⟨X, i p⟩`, `φ_p(X) = pr_{T_p S}(i X)` and `g` is the
//! ambient inner product. The Reeb flow is `s ↦ e^{is} p`.

use nalgebra::DMatrix;
use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::{
    cscale, imul, lie_bracket, AmbientPoint, EmbeddedPoint, SampleConfig, Vector, VectorField,
    UNIT_TOL,
};

/// `dη(X, Y) = D_ETA_SCALE · g(X, φY)` with `dα(X,Y) = Xα(Y) − Yα(X) − α([X,Y])`.
///
/// Calibrated against the finite-difference exterior derivative; the
/// regression test `d_eta_closed_form_matches_fd` pins it.
pub const D_ETA_SCALE: f64 = -2.0;

/// Pointwise data of a Sasakian structure.
pub trait SasakianStructure {
    fn reeb(&self, p: &AmbientPoint) -> Vector;
    fn contact_form(&self, p: &AmbientPoint, x: &Vector) -> f64;
    fn phi(&self, p: &AmbientPoint, x: &Vector) -> Vector;
    fn metric(&self, p: &AmbientPoint, x: &Vector, y: &Vector) -> f64;
    fn reeb_flow(&self, p: &AmbientPoint, s: f64) -> AmbientPoint;

    fn d_eta(&self, p: &AmbientPoint, x: &Vector, y: &Vector) -> f64 {
        D_ETA_SCALE * self.metric(p, x, &self.phi(p, y))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SasakianSphere {
    pub n: usize,
}

impl SasakianSphere {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn ambient_dim(&self) -> usize {
        2 * self.n + 2
    }

    pub fn real_dim(&self) -> usize {
        2 * self.n + 1
    }

    fn check(&self, p: &AmbientPoint) -> Result<()> {
        if p.ambient_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: p.ambient_dim(),
            });
        }
        let norm = p.coords().norm();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::OffManifold(norm));
        }
        Ok(())
    }
}

impl SasakianStructure for SasakianSphere {
    fn reeb(&self, p: &AmbientPoint) -> Vector {
        imul(p.coords())
    }

    fn contact_form(&self, p: &AmbientPoint, x: &Vector) -> f64 {
        x.dot(&imul(p.coords()))
    }

    fn phi(&self, p: &AmbientPoint, x: &Vector) -> Vector {
        p.project(&imul(x))
    }

    fn metric(&self, _p: &AmbientPoint, x: &Vector, y: &Vector) -> f64 {
        x.dot(y)
    }

    fn reeb_flow(&self, p: &AmbientPoint, s: f64) -> AmbientPoint {
        reeb_flow(p, s)
    }
}

/// `e^{is} · p`.
pub fn reeb_flow(p: &AmbientPoint, s: f64) -> AmbientPoint {
    AmbientPoint::new_unchecked(cscale(Complex64::from_polar(1.0, s), p.coords()))
}

pub fn d_eta(m: &SasakianSphere, p: &AmbientPoint, x: &Vector, y: &Vector) -> f64 {
    m.d_eta(p, x, y)
}

/// The tensors `(g, η, φ, ξ)` frozen at one point.
#[derive(Clone, Debug)]
pub struct SasakianSample {
    pub point: AmbientPoint,
    pub xi: Vector,
    /// Pairs with tangent vectors by the ambient inner product.
    pub eta: Vector,
    /// `φ` as an ambient matrix, `pr_T ∘ i`.
    pub phi: DMatrix<f64>,
}

impl SasakianSample {
    pub fn eta(&self, x: &Vector) -> f64 {
        self.eta.dot(x)
    }

    pub fn phi(&self, x: &Vector) -> Vector {
        &self.phi * x
    }

    pub fn g(&self, x: &Vector, y: &Vector) -> f64 {
        x.dot(y)
    }

    /// Largest violation of the five algebraic identities on the given
    /// tangent vectors.
    pub fn identity_defect(&self, x: &Vector, y: &Vector) -> f64 {
        let eta_phi = self.eta(&self.phi(x)).abs();
        let eta_xi = (self.eta(&self.xi) - 1.0).abs();
        let phi_xi = self.phi(&self.xi).norm();
        let phi2 = (self.phi(&self.phi(x)) + x - &self.xi * self.eta(x)).norm();
        let compat = (self.g(&self.phi(x), &self.phi(y)) - self.g(x, y)
            + self.eta(x) * self.eta(y))
        .abs();
        let eta_g = (self.eta(x) - self.g(x, &self.xi)).abs();
        [eta_phi, eta_xi, phi_xi, phi2, compat, eta_g]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn sasakian_sample(m: &SasakianSphere, p: &AmbientPoint) -> Result<SasakianSample> {
    m.check(p)?;
    let dim = m.ambient_dim();
    let z = p.coords();
    let mut i_mat = DMatrix::zeros(dim, dim);
    for k in 0..dim / 2 {
        i_mat[(2 * k, 2 * k + 1)] = -1.0;
        i_mat[(2 * k + 1, 2 * k)] = 1.0;
    }
    let proj = DMatrix::identity(dim, dim) - z * z.transpose();
    Ok(SasakianSample {
        point: p.clone(),
        xi: imul(z),
        eta: imul(z),
        phi: proj * i_mat,
    })
}

/// `|φ²[X,Y] + [φX,φY] − φ[φX,Y] − φ[X,φY] + dη(X,Y) ξ|` by finite
/// differences, with `X`, `Y` extended as projected constant fields.
pub fn normality_defect(
    m: &SasakianSphere,
    p: &AmbientPoint,
    x: &Vector,
    y: &Vector,
    cfg: &SampleConfig,
) -> Result<f64> {
    m.check(p)?;
    let fx = VectorField::constant("X", x.clone());
    let fy = VectorField::constant("Y", y.clone());
    let phi_x = VectorField::new("phi X", |q: &AmbientPoint| m.phi(q, &fx.raw(q)));
    let phi_y = VectorField::new("phi Y", |q: &AmbientPoint| m.phi(q, &fy.raw(q)));
    let xt = p.project(x);
    let yt = p.project(y);
    let b = lie_bracket(&fx, &fy, p, cfg)?;
    let b_px_y = lie_bracket(&phi_x, &fy, p, cfg)?;
    let b_x_py = lie_bracket(&fx, &phi_y, p, cfg)?;
    let b_px_py = lie_bracket(&phi_x, &phi_y, p, cfg)?;
    let torsion = m.phi(p, &m.phi(p, &b)) + b_px_py - m.phi(p, &b_px_y) - m.phi(p, &b_x_py);
    Ok((torsion + m.reeb(p) * m.d_eta(p, &xt, &yt)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{exterior_derivative_2form, CovectorField, Sampler};

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn s3_sample_at_base_point() {
        let m = SasakianSphere::new(1);
        let p = AmbientPoint::from_slice(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let s = sasakian_sample(&m, &p).unwrap();
        assert_eq!(s.xi, v(&[0.0, 1.0, 0.0, 0.0]));
        assert_eq!(s.eta(&s.xi), 1.0);
        let x = v(&[0.0, 0.0, 1.0, 0.0]);
        assert_eq!(s.phi(&x), v(&[0.0, 0.0, 0.0, 1.0]));
        assert_eq!(s.phi(&s.phi(&x)), -x);
    }

    #[test]
    fn phi_kills_reeb_everywhere() {
        let m = SasakianSphere::new(2);
        let mut rng = Sampler::new(4);
        for _ in 0..64 {
            let p = rng.point(2);
            let s = sasakian_sample(&m, &p).unwrap();
            assert!(s.phi(&s.xi).norm() < 1e-14);
        }
    }

    #[test]
    fn sample_rejects_bad_points() {
        let m = SasakianSphere::new(1);
        let p = AmbientPoint::from_slice(&[1.0, 0.0]).unwrap();
        assert!(matches!(
            sasakian_sample(&m, &p),
            Err(Error::DimensionMismatch { expected: 4, found: 2 })
        ));
    }

    #[test]
    fn reeb_flow_examples() {
        let p = AmbientPoint::from_slice(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let q = reeb_flow(&p, std::f64::consts::FRAC_PI_2);
        assert!((q.coords() - v(&[0.0, 1.0, 0.0, 0.0])).norm() < 1e-15);
        let mut rng = Sampler::new(1);
        for _ in 0..16 {
            let p = rng.point(1);
            let full = reeb_flow(&p, 2.0 * std::f64::consts::PI);
            assert!((full.coords() - p.coords()).norm() < 1e-14);
            let composed = reeb_flow(&reeb_flow(&p, 0.4), 1.1);
            assert!((composed.coords() - reeb_flow(&p, 1.5).coords()).norm() < 1e-14);
        }
    }

    #[test]
    fn contact_form_invariant_under_reeb_flow() {
        let m = SasakianSphere::new(1);
        let mut rng = Sampler::new(2);
        let rot = Complex64::from_polar(1.0, 0.3);
        for _ in 0..64 {
            let p = rng.point(1);
            let x = rng.tangent(&p);
            let q = reeb_flow(&p, 0.3);
            let pushed = cscale(rot, &x);
            assert!((m.contact_form(&q, &pushed) - m.contact_form(&p, &x)).abs() < 1e-10);
        }
    }

    #[test]
    fn reeb_flow_preserves_chord_lengths() {
        let mut rng = Sampler::new(8);
        for _ in 0..64 {
            let (p, q) = (rng.point(2), rng.point(2));
            let d0 = (p.coords() - q.coords()).norm();
            let d1 = (reeb_flow(&p, 0.7).coords() - reeb_flow(&q, 0.7).coords()).norm();
            assert!((d0 - d1).abs() < 1e-8);
        }
    }

    #[test]
    fn d_eta_closed_form_matches_fd() {
        let m = SasakianSphere::new(1);
        let cfg = SampleConfig::default();
        let eta = CovectorField::new(|q: &AmbientPoint| imul(q.coords()));
        let mut rng = Sampler::new(12);
        for _ in 0..32 {
            let p = rng.point(1);
            let (a, b) = (rng.gaussian(4), rng.gaussian(4));
            let x = VectorField::constant("X", a.clone());
            let y = VectorField::constant("Y", b.clone());
            let fd = exterior_derivative_2form(&eta, &p, &x, &y, &cfg).unwrap();
            let closed = m.d_eta(&p, &p.project(&a), &p.project(&b));
            assert!((fd - closed).abs() < 1e-6, "{fd} vs {closed}");
        }
    }

    #[test]
    fn d_eta_kernel_and_positivity() {
        let m = SasakianSphere::new(1);
        let cfg = SampleConfig::default();
        let eta = CovectorField::new(|q: &AmbientPoint| imul(q.coords()));
        let mut rng = Sampler::new(13);
        let xi = VectorField::new("xi", |q: &AmbientPoint| imul(q.coords()));
        for _ in 0..16 {
            let p = rng.point(1);
            let y = VectorField::constant("Y", rng.gaussian(4));
            let d = exterior_derivative_2form(&eta, &p, &xi, &y, &cfg).unwrap();
            assert!(d.abs() < 1e-6);

            // transverse unit X
            let raw = rng.tangent(&p);
            let xd = &raw - m.reeb(&p) * m.contact_form(&p, &raw);
            let xd = &xd / xd.norm();
            let base = xd.clone();
            let x = VectorField::new("X", move |q: &AmbientPoint| q.project(&base));
            let px = VectorField::new("phi X", |q: &AmbientPoint| m.phi(q, &x.raw(q)));
            let d = exterior_derivative_2form(&eta, &p, &x, &px, &cfg).unwrap();
            assert!(d > 1.0, "{d}");
            assert!((m.d_eta(&p, &xd, &m.phi(&p, &xd)) - 2.0).abs() < 1e-12);
            assert!((m.d_eta(&p, &m.phi(&p, &xd), &xd) + 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn d_eta_bilinear_antisymmetric() {
        let m = SasakianSphere::new(2);
        let mut rng = Sampler::new(21);
        for _ in 0..64 {
            let p = rng.point(2);
            let (x, y, z) = (rng.tangent(&p), rng.tangent(&p), rng.tangent(&p));
            assert!((m.d_eta(&p, &x, &y) + m.d_eta(&p, &y, &x)).abs() < 1e-10);
            let lhs = m.d_eta(&p, &(&x * 2.0 + &z), &y);
            let rhs = 2.0 * m.d_eta(&p, &x, &y) + m.d_eta(&p, &z, &y);
            assert!((lhs - rhs).abs() < 1e-10);
            assert!(m.d_eta(&p, &m.reeb(&p), &y).abs() < 1e-10);
        }
    }

    #[test]
    fn normality_holds_with_calibrated_sign() {
        let m = SasakianSphere::new(1);
        let cfg = SampleConfig::default();
        let mut rng = Sampler::new(30);
        for _ in 0..32 {
            let p = rng.point(1);
            let (x, y) = (rng.gaussian(4), rng.gaussian(4));
            assert!(normality_defect(&m, &p, &x, &y, &cfg).unwrap() < 1e-5);
        }
    }
}
