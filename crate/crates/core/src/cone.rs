//! The Kähler cone `C(S) = S × R_{>0}` with metric `dt² + t² g`.
//!
//! Tangent vectors are kept split into a spherical part and a `d/dt`
//! coefficient. Under `(z, t) ↦ t z` the cone is `C^{n+1} ∖ {0}`, and the
//! ambient chart serves as the independent route for `J` and `ω`.

use crate::error::{Error, Result};
use crate::geom::{imul, normalize, AmbientPoint, EmbeddedPoint, Vector};
use crate::sphere::{SasakianSphere, SasakianStructure};

#[derive(Clone, Debug, PartialEq)]
pub struct ConePoint {
    pub base: AmbientPoint,
    pub t: f64,
}

impl ConePoint {
    pub fn new(base: AmbientPoint, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::NonPositiveRadius(t));
        }
        Ok(Self { base, t })
    }

    fn sphere(&self) -> SasakianSphere {
        SasakianSphere::new(self.base.n())
    }

    /// Inverse of the chart `(z, t) ↦ t z`.
    pub fn from_ambient(q: &Vector) -> Result<Self> {
        let t = q.norm();
        let base = normalize(q.clone())?;
        Self::new(base, t)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConeTangent {
    /// Tangent to the sphere at the base point.
    pub base_part: Vector,
    /// Coefficient of `d/dt`.
    pub radial: f64,
}

impl ConeTangent {
    pub fn new(cp: &ConePoint, base_part: Vector, radial: f64) -> Result<Self> {
        if base_part.len() != cp.base.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: cp.base.ambient_dim(),
                found: base_part.len(),
            });
        }
        let defect = cp.base.normal_defect(&base_part);
        if defect > 1e-10 * base_part.norm().max(1.0) {
            return Err(Error::NotTangent(defect));
        }
        Ok(Self { base_part, radial })
    }

    pub fn zero(cp: &ConePoint) -> Self {
        Self {
            base_part: Vector::zeros(cp.base.ambient_dim()),
            radial: 0.0,
        }
    }

    pub fn to_ambient(&self, cp: &ConePoint) -> Vector {
        cp.base.coords() * self.radial + &self.base_part * cp.t
    }

    pub fn from_ambient(cp: &ConePoint, w: &Vector) -> Self {
        let z = cp.base.coords();
        let radial = w.dot(z);
        Self {
            base_part: (w - z * radial) / cp.t,
            radial,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            base_part: &self.base_part * s,
            radial: self.radial * s,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            base_part: &self.base_part + &other.base_part,
            radial: self.radial + other.radial,
        }
    }
}

/// `R = t d/dt`.
pub fn euler_field(cp: &ConePoint) -> ConeTangent {
    ConeTangent {
        base_part: Vector::zeros(cp.base.ambient_dim()),
        radial: cp.t,
    }
}

/// `ξ = J R`, the Reeb field of the level set through `cp`.
pub fn reeb_field(cp: &ConePoint) -> ConeTangent {
    ConeTangent {
        base_part: cp.sphere().reeb(&cp.base),
        radial: 0.0,
    }
}

pub fn cone_metric(cp: &ConePoint, u: &ConeTangent, v: &ConeTangent) -> f64 {
    u.radial * v.radial + cp.t * cp.t * u.base_part.dot(&v.base_part)
}

/// `J R = ξ`, `J ξ = −R`, `J = φ` on `D = ⟨R, ξ⟩^⊥`.
pub fn cone_j(cp: &ConePoint, u: &ConeTangent) -> ConeTangent {
    let s = cp.sphere();
    let xi = s.reeb(&cp.base);
    let c = s.contact_form(&cp.base, &u.base_part);
    let transverse = &u.base_part - &xi * c;
    ConeTangent {
        base_part: xi * (u.radial / cp.t) + s.phi(&cp.base, &transverse),
        radial: -cp.t * c,
    }
}

/// `J` read off the ambient chart as multiplication by `i`.
pub fn cone_j_ambient(cp: &ConePoint, u: &ConeTangent) -> ConeTangent {
    ConeTangent::from_ambient(cp, &imul(&u.to_ambient(cp)))
}

/// `ω(U, V) = g_C(JU, V)`.
pub fn kahler_form(cp: &ConePoint, u: &ConeTangent, v: &ConeTangent) -> f64 {
    cone_metric(cp, &cone_j(cp, u), v)
}

/// The cone 1-form `η = (1/t²) i_R ω`.
pub fn cone_contact_form(cp: &ConePoint, u: &ConeTangent) -> f64 {
    kahler_form(cp, &euler_field(cp), u) / (cp.t * cp.t)
}

pub fn homothety(cp: &ConePoint, lambda: f64) -> Result<ConePoint> {
    if !(lambda > 0.0) {
        return Err(Error::NonPositiveLambda(lambda));
    }
    ConePoint::new(cp.base.clone(), lambda * cp.t)
}

/// Differential of `h_λ`: the `d/dt` coefficient scales, the spherical part
/// is unchanged.
pub fn homothety_push(u: &ConeTangent, lambda: f64) -> ConeTangent {
    ConeTangent {
        base_part: u.base_part.clone(),
        radial: lambda * u.radial,
    }
}

impl EmbeddedPoint for ConePoint {
    fn ambient(&self) -> Vector {
        self.base.coords() * self.t
    }

    fn displace(&self, v: &Vector) -> Result<Self> {
        Self::from_ambient(&(self.ambient() + v))
    }

    fn project(&self, v: &Vector) -> Vector {
        v.clone()
    }

    fn normal_defect(&self, _v: &Vector) -> f64 {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{exterior_derivative_2form, CovectorField, SampleConfig, Sampler, VectorField};

    fn random_cone_point(s: &mut Sampler, n: usize) -> ConePoint {
        let t = s.uniform(0.3, 3.0);
        ConePoint::new(s.point(n), t).unwrap()
    }

    fn random_tangent(s: &mut Sampler, cp: &ConePoint) -> ConeTangent {
        let b = s.tangent(&cp.base);
        ConeTangent::new(cp, b, s.uniform(-2.0, 2.0)).unwrap()
    }

    #[test]
    fn metric_examples() {
        let mut s = Sampler::new(1);
        let cp = random_cone_point(&mut s, 1);
        let r = euler_field(&cp);
        assert!((cone_metric(&cp, &r, &r) - cp.t * cp.t).abs() < 1e-12);
        let radial_only = ConeTangent { radial: 1.3, ..ConeTangent::zero(&cp) };
        let base_only = ConeTangent::new(&cp, s.tangent(&cp.base), 0.0).unwrap();
        assert_eq!(cone_metric(&cp, &radial_only, &base_only), 0.0);

        let unit = ConePoint::new(cp.base.clone(), 1.0).unwrap();
        let (u, v) = (random_tangent(&mut s, &unit), random_tangent(&mut s, &unit));
        let expect = u.radial * v.radial + u.base_part.dot(&v.base_part);
        assert!((cone_metric(&unit, &u, &v) - expect).abs() < 1e-14);
    }

    #[test]
    fn j_on_euler_and_reeb() {
        let mut s = Sampler::new(2);
        let cp = random_cone_point(&mut s, 2);
        let jr = cone_j(&cp, &euler_field(&cp));
        let xi = reeb_field(&cp);
        assert!((jr.base_part - &xi.base_part).norm() < 1e-12 && jr.radial.abs() < 1e-12);
        // in the chart the Reeb field at t is t·(i z)
        let amb = xi.to_ambient(&cp);
        assert!((amb - imul(cp.base.coords()) * cp.t).norm() < 1e-12);
        let jxi = cone_j(&cp, &xi);
        assert!(jxi.base_part.norm() < 1e-12 && (jxi.radial + cp.t).abs() < 1e-12);
    }

    #[test]
    fn structural_j_matches_ambient_chart() {
        let mut s = Sampler::new(3);
        for _ in 0..256 {
            let cp = random_cone_point(&mut s, 1);
            let u = random_tangent(&mut s, &cp);
            let a = cone_j(&cp, &u);
            let b = cone_j_ambient(&cp, &u);
            assert!((a.base_part - b.base_part).norm() < 1e-10);
            assert!((a.radial - b.radial).abs() < 1e-10);
            let jj = cone_j(&cp, &cone_j(&cp, &u));
            assert!((jj.add(&u)).base_part.norm() < 1e-10 && (jj.radial + u.radial).abs() < 1e-10);
        }
    }

    #[test]
    fn omega_properties() {
        let mut s = Sampler::new(4);
        for _ in 0..128 {
            let cp = random_cone_point(&mut s, 1);
            let (u, v) = (random_tangent(&mut s, &cp), random_tangent(&mut s, &cp));
            assert!((kahler_form(&cp, &u, &v) + kahler_form(&cp, &v, &u)).abs() < 1e-10);
            let (ju, jv) = (cone_j(&cp, &u), cone_j(&cp, &v));
            assert!((kahler_form(&cp, &ju, &jv) - kahler_form(&cp, &u, &v)).abs() < 1e-10);
            assert!((cone_metric(&cp, &ju, &jv) - cone_metric(&cp, &u, &v)).abs() < 1e-10);
            // i_R ω = t² η
            let eta = cp.sphere().contact_form(&cp.base, &u.base_part);
            assert!((kahler_form(&cp, &euler_field(&cp), &u) - cp.t * cp.t * eta).abs() < 1e-10);
        }
    }

    #[test]
    fn omega_on_euler_and_unit_reeb() {
        let mut s = Sampler::new(5);
        let cp = random_cone_point(&mut s, 1);
        let xi = reeb_field(&cp);
        let w = kahler_form(&cp, &euler_field(&cp), &xi);
        assert!((w - cp.t * cp.t).abs() < 1e-12);
    }

    #[test]
    fn homothety_examples() {
        let mut s = Sampler::new(6);
        let cp = random_cone_point(&mut s, 1);
        assert_eq!(homothety(&cp, 1.0).unwrap(), cp);
        let ab = homothety(&homothety(&cp, 2.0).unwrap(), 3.0).unwrap();
        assert!((ab.t - homothety(&cp, 6.0).unwrap().t).abs() < 1e-12);
        assert!(matches!(homothety(&cp, 0.0), Err(Error::NonPositiveLambda(_))));
        assert!(matches!(homothety(&cp, -1.0), Err(Error::NonPositiveLambda(_))));
        for _ in 0..64 {
            let (u, v) = (random_tangent(&mut s, &cp), random_tangent(&mut s, &cp));
            let img = homothety(&cp, 2.0).unwrap();
            let pulled = kahler_form(&img, &homothety_push(&u, 2.0), &homothety_push(&v, 2.0));
            assert!((pulled - 4.0 * kahler_form(&cp, &u, &v)).abs() < 1e-9);
            let lhs = homothety_push(&cone_j(&cp, &u), 2.0);
            let rhs = cone_j(&img, &homothety_push(&u, 2.0));
            assert!((lhs.base_part - rhs.base_part).norm() < 1e-10);
            assert!((lhs.radial - rhs.radial).abs() < 1e-10);
        }
    }

    fn omega_form() -> TwoFormFieldOnCone {
        crate::geom::TwoFormField::new(|q: &ConePoint, a: &Vector, b: &Vector| {
            kahler_form(q, &ConeTangent::from_ambient(q, a), &ConeTangent::from_ambient(q, b))
        })
    }
    type TwoFormFieldOnCone = crate::geom::TwoFormField<'static, ConePoint>;

    #[test]
    fn omega_is_closed() {
        let cfg = SampleConfig::default();
        let omega = omega_form();
        let mut s = Sampler::new(7);
        for _ in 0..16 {
            let cp = random_cone_point(&mut s, 1);
            let x = VectorField::constant("X", s.gaussian(4));
            let y = VectorField::constant("Y", s.gaussian(4));
            let z = VectorField::constant("Z", s.gaussian(4));
            let d = crate::geom::exterior_derivative_3form(&omega, &cp, &x, &y, &z, &cfg).unwrap();
            assert!(d.abs() < 1e-5, "{d}");
        }
    }

    #[test]
    fn t_squared_is_a_potential() {
        // d^c(t²)(U) = −d(t²)(JU) = 2⟨i q, U⟩ and d d^c(t²) = 4ω
        let cfg = SampleConfig::default();
        let dc = CovectorField::new(|q: &ConePoint| imul(&q.ambient()) * 2.0);
        let mut s = Sampler::new(8);
        for _ in 0..16 {
            let cp = random_cone_point(&mut s, 1);
            let (a, b) = (s.gaussian(4), s.gaussian(4));
            let x = VectorField::constant("X", a.clone());
            let y = VectorField::constant("Y", b.clone());
            let d = exterior_derivative_2form(&dc, &cp, &x, &y, &cfg).unwrap();
            let w = kahler_form(&cp, &ConeTangent::from_ambient(&cp, &a), &ConeTangent::from_ambient(&cp, &b));
            assert!((d - 4.0 * w).abs() < 1e-6);
        }
    }

    #[test]
    fn d_eta_on_cone_kills_euler_and_reeb() {
        let cfg = SampleConfig::default();
        let eta = CovectorField::new(|q: &ConePoint| {
            let a = q.ambient();
            imul(&a) / a.norm_squared()
        });
        let r = VectorField::new("R", |q: &ConePoint| q.ambient());
        let xi = VectorField::new("xi", |q: &ConePoint| imul(&q.ambient()));
        let mut s = Sampler::new(9);
        for _ in 0..16 {
            let cp = random_cone_point(&mut s, 1);
            let y = VectorField::constant("Y", s.gaussian(4));
            assert!(exterior_derivative_2form(&eta, &cp, &r, &y, &cfg).unwrap().abs() < 1e-6);
            assert!(exterior_derivative_2form(&eta, &cp, &xi, &y, &cfg).unwrap().abs() < 1e-6);
        }
    }

    #[test]
    fn cone_contact_form_restricts_to_eta() {
        let mut s = Sampler::new(10);
        let cp = random_cone_point(&mut s, 2);
        let u = random_tangent(&mut s, &cp);
        let eta = cp.sphere().contact_form(&cp.base, &u.base_part);
        assert!((cone_contact_form(&cp, &u) - eta).abs() < 1e-12);
        assert!(matches!(ConePoint::new(cp.base.clone(), 0.0), Err(Error::NonPositiveRadius(_))));
    }
}
