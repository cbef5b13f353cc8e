//! Products `S₁ × S₂` of Sasakian spheres: the `G_α` quotient of the product
//! of cones, the induced structure `J_α`, the CEM family `J_{a,b}` and their
//! Hermitian metrics.

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix2;
use num::complex::Complex64;

use crate::cone::{cone_j, ConePoint, ConeTangent};
use crate::error::{Error, Result};
use crate::geom::{cscale, AmbientPoint, EmbeddedPoint, Sampler, Vector};
use crate::sphere::{SasakianSphere, SasakianStructure};

/// Smallest admissible `|Im|` for a structure parameter.
pub const MIN_IMAG: f64 = 1e-12;

/// Parses `a+bi`, `a-bi`, `bi`, `a`, `i`, `-i`. Exponents are allowed in
/// either real number.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let err = || Error::ComplexParse(s.to_string());
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(err());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| err());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_str, im_str) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str.parse::<f64>().map_err(|_| err())?
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| err())?,
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(err());
    }
    Ok(Complex64::new(re, im))
}

fn check_imag(b: f64) -> Result<()> {
    if b.is_finite() && b.abs() > MIN_IMAG {
        Ok(())
    } else {
        Err(Error::RealParameter(b))
    }
}

fn fmt_complex(f: &mut fmt::Formatter<'_>, a: f64, b: f64) -> fmt::Result {
    if b < 0.0 {
        write!(f, "{a}-{}i", -b)
    } else {
        write!(f, "{a}+{b}i")
    }
}

/// The parameter `α` of the `G_α` action.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaParam {
    pub a: f64,
    pub b: f64,
}

impl AlphaParam {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        check_imag(b)?;
        Ok(Self { a, b })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn i() -> Self {
        Self { a: 0.0, b: 1.0 }
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.a, self.b)
    }

    /// Matrix of `J_α` on `⟨ξ₁, ξ₂⟩` acting on Reeb coefficients.
    pub fn reeb_block(&self) -> Matrix2<f64> {
        let (a, b) = (self.a, self.b);
        Matrix2::new(a, -1.0, a * a + b * b, -a) / b
    }
}

impl FromStr for AlphaParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::from_complex(parse_complex(s)?)
    }
}

impl fmt::Display for AlphaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_complex(f, self.a, self.b)
    }
}

/// The parameter `(a, b)` of the CEM structure `J_{a,b}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CemParam {
    pub a: f64,
    pub b: f64,
}

impl CemParam {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        check_imag(b)?;
        Ok(Self { a, b })
    }

    /// Matrix of `J_{a,b}` on `⟨ξ₁, ξ₂⟩`.
    pub fn reeb_block(&self) -> Matrix2<f64> {
        let (a, b) = (self.a, self.b);
        Matrix2::new(-a, -(a * a + b * b), 1.0, a) / b
    }

    /// Matrix of `g_{a,b}` on `⟨ξ₁, ξ₂⟩`.
    pub fn metric_block(&self) -> Matrix2<f64> {
        let (a, b) = (self.a, self.b);
        Matrix2::new(1.0, a, a, a * a + b * b)
    }
}

impl FromStr for CemParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let z = parse_complex(s)?;
        Self::new(z.re, z.im)
    }
}

impl fmt::Display for CemParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={})", self.a, self.b)
    }
}

/// A point of `S₁ × S₂ ⊂ R^{N₁} × R^{N₂}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductPoint {
    pub p1: AmbientPoint,
    pub p2: AmbientPoint,
}

impl ProductPoint {
    pub fn new(p1: AmbientPoint, p2: AmbientPoint) -> Self {
        Self { p1, p2 }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.p1.ambient_dim(), self.p2.ambient_dim())
    }

    pub fn xi1(&self) -> ProductTangent {
        ProductTangent {
            x1: SasakianSphere::new(self.p1.n()).reeb(&self.p1),
            x2: Vector::zeros(self.p2.ambient_dim()),
        }
    }

    pub fn xi2(&self) -> ProductTangent {
        ProductTangent {
            x1: Vector::zeros(self.p1.ambient_dim()),
            x2: SasakianSphere::new(self.p2.n()).reeb(&self.p2),
        }
    }

    pub fn random(s: &mut Sampler, n1: usize, n2: usize) -> Self {
        Self::new(s.point(n1), s.point(n2))
    }

    pub fn random_tangent(&self, s: &mut Sampler) -> ProductTangent {
        ProductTangent {
            x1: s.tangent(&self.p1),
            x2: s.tangent(&self.p2),
        }
    }
}

fn split(v: &Vector, n1: usize) -> (Vector, Vector) {
    (v.rows(0, n1).into_owned(), v.rows(n1, v.len() - n1).into_owned())
}

fn concat(a: &Vector, b: &Vector) -> Vector {
    Vector::from_iterator(a.len() + b.len(), a.iter().chain(b.iter()).copied())
}

impl EmbeddedPoint for ProductPoint {
    fn ambient(&self) -> Vector {
        concat(self.p1.coords(), self.p2.coords())
    }

    fn displace(&self, v: &Vector) -> Result<Self> {
        let (v1, v2) = split(v, self.p1.ambient_dim());
        Ok(Self::new(self.p1.displace(&v1)?, self.p2.displace(&v2)?))
    }

    fn project(&self, v: &Vector) -> Vector {
        let (v1, v2) = split(v, self.p1.ambient_dim());
        concat(&self.p1.project(&v1), &self.p2.project(&v2))
    }

    fn normal_defect(&self, v: &Vector) -> f64 {
        let (v1, v2) = split(v, self.p1.ambient_dim());
        self.p1.normal_defect(&v1).hypot(self.p2.normal_defect(&v2))
    }
}

/// Tangent vector `X₁ + X₂` of `S₁ × S₂`, stored as ambient components.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductTangent {
    pub x1: Vector,
    pub x2: Vector,
}

impl ProductTangent {
    pub fn new(m: &ProductPoint, x1: Vector, x2: Vector) -> Result<Self> {
        for (p, x) in [(&m.p1, &x1), (&m.p2, &x2)] {
            if x.len() != p.ambient_dim() {
                return Err(Error::DimensionMismatch {
                    expected: p.ambient_dim(),
                    found: x.len(),
                });
            }
            let d = p.normal_defect(x);
            if d > 1e-10 * x.norm().max(1.0) {
                return Err(Error::NotTangent(d));
            }
        }
        Ok(Self { x1, x2 })
    }

    pub fn zero(m: &ProductPoint) -> Self {
        let (n1, n2) = m.dims();
        Self {
            x1: Vector::zeros(n1),
            x2: Vector::zeros(n2),
        }
    }

    pub fn from_ambient(m: &ProductPoint, v: &Vector) -> Self {
        let (x1, x2) = split(v, m.p1.ambient_dim());
        Self { x1, x2 }
    }

    pub fn to_ambient(&self) -> Vector {
        concat(&self.x1, &self.x2)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            x1: &self.x1 * s,
            x2: &self.x2 * s,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            x1: &self.x1 + &o.x1,
            x2: &self.x2 + &o.x2,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1.0))
    }

    pub fn norm(&self) -> f64 {
        self.x1.norm().hypot(self.x2.norm())
    }
}

/// Splitting `X = X₁ᴰ + c₁ξ₁ + X₂ᴰ + c₂ξ₂`.
#[derive(Clone, Debug)]
pub struct ReebSplit {
    pub d1: Vector,
    pub d2: Vector,
    pub c1: f64,
    pub c2: f64,
}

pub fn reeb_split(m: &ProductPoint, x: &ProductTangent) -> ReebSplit {
    let s1 = SasakianSphere::new(m.p1.n());
    let s2 = SasakianSphere::new(m.p2.n());
    let c1 = s1.contact_form(&m.p1, &x.x1);
    let c2 = s2.contact_form(&m.p2, &x.x2);
    ReebSplit {
        d1: &x.x1 - s1.reeb(&m.p1) * c1,
        d2: &x.x2 - s2.reeb(&m.p2) * c2,
        c1,
        c2,
    }
}

/// `φ₁X₁ᴰ + φ₂X₂ᴰ + M(c₁, c₂)` for a Reeb-block matrix `M`.
fn apply_block(m: &ProductPoint, x: &ProductTangent, block: &Matrix2<f64>) -> ProductTangent {
    let s1 = SasakianSphere::new(m.p1.n());
    let s2 = SasakianSphere::new(m.p2.n());
    let sp = reeb_split(m, x);
    let c = block * nalgebra::Vector2::new(sp.c1, sp.c2);
    ProductTangent {
        x1: s1.phi(&m.p1, &sp.d1) + s1.reeb(&m.p1) * c[0],
        x2: s2.phi(&m.p2, &sp.d2) + s2.reeb(&m.p2) * c[1],
    }
}

pub fn j_alpha(m: &ProductPoint, x: &ProductTangent, alpha: &AlphaParam) -> ProductTangent {
    apply_block(m, x, &alpha.reeb_block())
}

/// `J_{a,b}` written out term by term.
pub fn j_cem(m: &ProductPoint, x: &ProductTangent, ab: &CemParam) -> ProductTangent {
    let (a, b) = (ab.a, ab.b);
    let s1 = SasakianSphere::new(m.p1.n());
    let s2 = SasakianSphere::new(m.p2.n());
    let e1 = s1.contact_form(&m.p1, &x.x1);
    let e2 = s2.contact_form(&m.p2, &x.x2);
    ProductTangent {
        x1: s1.phi(&m.p1, &x.x1) - s1.reeb(&m.p1) * ((a / b) * e1 + ((a * a + b * b) / b) * e2),
        x2: s2.phi(&m.p2, &x.x2) + s2.reeb(&m.p2) * ((1.0 / b) * e1 + (a / b) * e2),
    }
}

fn etas(m: &ProductPoint, x: &ProductTangent) -> (f64, f64) {
    let s1 = SasakianSphere::new(m.p1.n());
    let s2 = SasakianSphere::new(m.p2.n());
    (s1.contact_form(&m.p1, &x.x1), s2.contact_form(&m.p2, &x.x2))
}

/// `g₁ + g₂`.
pub fn metric_product(_m: &ProductPoint, x: &ProductTangent, y: &ProductTangent) -> f64 {
    x.x1.dot(&y.x1) + x.x2.dot(&y.x2)
}

/// `g₁ + a(η₁⊗η₂ + η₂⊗η₁) + (a²+b²−1)η₂⊗η₂ + g₂`.
pub fn metric_cem(m: &ProductPoint, x: &ProductTangent, y: &ProductTangent, ab: &CemParam) -> f64 {
    let (a, b) = (ab.a, ab.b);
    let (x1, x2) = etas(m, x);
    let (y1, y2) = etas(m, y);
    metric_product(m, x, y) + a * (x1 * y2 + x2 * y1) + (a * a + b * b - 1.0) * x2 * y2
}

/// `g₁ + g₂ − (a/b²)(η₁⊗η₂ + η₂⊗η₁) + ((a²+b²)/b² − 1)η₁⊗η₁ + (1/b² − 1)η₂⊗η₂`.
pub fn metric_alpha(m: &ProductPoint, x: &ProductTangent, y: &ProductTangent, alpha: &AlphaParam) -> f64 {
    let (a, b) = (alpha.a, alpha.b);
    let b2 = b * b;
    let (x1, x2) = etas(m, x);
    let (y1, y2) = etas(m, y);
    metric_product(m, x, y) - (a / b2) * (x1 * y2 + x2 * y1)
        + ((a * a + b2) / b2 - 1.0) * x1 * y1
        + (1.0 / b2 - 1.0) * x2 * y2
}

/// An almost complex structure on a product of spheres.
pub trait ComplexStructure {
    fn apply(&self, m: &ProductPoint, x: &ProductTangent) -> ProductTangent;
}

/// A Riemannian metric on a product of spheres.
pub trait ProductMetric {
    fn metric(&self, m: &ProductPoint, x: &ProductTangent, y: &ProductTangent) -> f64;
}

impl ComplexStructure for AlphaParam {
    fn apply(&self, m: &ProductPoint, x: &ProductTangent) -> ProductTangent {
        j_alpha(m, x, self)
    }
}

impl ComplexStructure for CemParam {
    fn apply(&self, m: &ProductPoint, x: &ProductTangent) -> ProductTangent {
        j_cem(m, x, self)
    }
}

impl ProductMetric for AlphaParam {
    fn metric(&self, m: &ProductPoint, x: &ProductTangent, y: &ProductTangent) -> f64 {
        metric_alpha(m, x, y, self)
    }
}

impl ProductMetric for CemParam {
    fn metric(&self, m: &ProductPoint, x: &ProductTangent, y: &ProductTangent) -> f64 {
        metric_cem(m, x, y, self)
    }
}

/// `g₁ + g₂`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PlainMetric;

impl ProductMetric for PlainMetric {
    fn metric(&self, m: &ProductPoint, x: &ProductTangent, y: &ProductTangent) -> f64 {
        metric_product(m, x, y)
    }
}

/// A structure given by a closure, used for corrupted controls.
pub struct FnStructure<F>(pub F);

impl<F: Fn(&ProductPoint, &ProductTangent) -> ProductTangent> ComplexStructure for FnStructure<F> {
    fn apply(&self, m: &ProductPoint, x: &ProductTangent) -> ProductTangent {
        (self.0)(m, x)
    }
}

/// A Hermitian pair `(J, g)` selectable by name.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Structure {
    Alpha(AlphaParam),
    Cem(CemParam),
}

impl ComplexStructure for Structure {
    fn apply(&self, m: &ProductPoint, x: &ProductTangent) -> ProductTangent {
        match self {
            Structure::Alpha(p) => p.apply(m, x),
            Structure::Cem(p) => p.apply(m, x),
        }
    }
}

impl ProductMetric for Structure {
    fn metric(&self, m: &ProductPoint, x: &ProductTangent, y: &ProductTangent) -> f64 {
        match self {
            Structure::Alpha(p) => p.metric(m, x, y),
            Structure::Cem(p) => p.metric(m, x, y),
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Structure::Alpha(p) => write!(f, "J_alpha(alpha={p})"),
            Structure::Cem(p) => write!(f, "J_cem{p}"),
        }
    }
}

/// A point of `C(S₁) × C(S₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductConePoint {
    pub cp1: ConePoint,
    pub cp2: ConePoint,
}

impl ProductConePoint {
    pub fn new(cp1: ConePoint, cp2: ConePoint) -> Self {
        Self { cp1, cp2 }
    }

    /// `((p₁, 1), (p₂, 1))`.
    pub fn on_level_set(m: &ProductPoint) -> Self {
        Self {
            cp1: ConePoint { base: m.p1.clone(), t: 1.0 },
            cp2: ConePoint { base: m.p2.clone(), t: 1.0 },
        }
    }
}

impl EmbeddedPoint for ProductConePoint {
    fn ambient(&self) -> Vector {
        concat(&self.cp1.ambient(), &self.cp2.ambient())
    }

    fn displace(&self, v: &Vector) -> Result<Self> {
        let (v1, v2) = split(v, self.cp1.base.ambient_dim());
        Ok(Self::new(self.cp1.displace(&v1)?, self.cp2.displace(&v2)?))
    }

    fn project(&self, v: &Vector) -> Vector {
        v.clone()
    }

    fn normal_defect(&self, _v: &Vector) -> f64 {
        0.0
    }
}

/// A tangent vector of `C(S₁) × C(S₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConePairTangent {
    pub u1: ConeTangent,
    pub u2: ConeTangent,
}

impl ConePairTangent {
    pub fn to_ambient(&self, x: &ProductConePoint) -> Vector {
        concat(&self.u1.to_ambient(&x.cp1), &self.u2.to_ambient(&x.cp2))
    }

    pub fn from_ambient(x: &ProductConePoint, w: &Vector) -> Self {
        let (w1, w2) = split(w, x.cp1.base.ambient_dim());
        Self {
            u1: ConeTangent::from_ambient(&x.cp1, &w1),
            u2: ConeTangent::from_ambient(&x.cp2, &w2),
        }
    }

    /// The lift with zero radial parts.
    pub fn horizontal(x: &ProductTangent) -> Self {
        Self {
            u1: ConeTangent { base_part: x.x1.clone(), radial: 0.0 },
            u2: ConeTangent { base_part: x.x2.clone(), radial: 0.0 },
        }
    }
}

/// Product cone structure.
pub fn cone_pair_j(x: &ProductConePoint, u: &ConePairTangent) -> ConePairTangent {
    ConePairTangent {
        u1: cone_j(&x.cp1, &u.u1),
        u2: cone_j(&x.cp2, &u.u2),
    }
}

fn act_on_cone(cp: &ConePoint, w: Complex64) -> ConePoint {
    ConePoint {
        base: AmbientPoint::new_unchecked(cscale(Complex64::from_polar(1.0, w.im), cp.base.coords())),
        t: w.re.exp() * cp.t,
    }
}

/// `v · x = (e^{v}·x₁, e^{αv}·x₂)` by the combined radial and Reeb flows.
pub fn group_action(v: Complex64, x: &ProductConePoint, alpha: &AlphaParam) -> ProductConePoint {
    ProductConePoint {
        cp1: act_on_cone(&x.cp1, v),
        cp2: act_on_cone(&x.cp2, alpha.as_complex() * v),
    }
}

/// The unique `v` with both radii of `v · x` equal to one.
pub fn normalize_v(t1: f64, t2: f64, alpha: &AlphaParam) -> Result<Complex64> {
    for t in [t1, t2] {
        if !(t > 0.0) {
            return Err(Error::NonPositiveRadius(t));
        }
    }
    let (l1, l2) = (t1.ln(), t2.ln());
    Ok(Complex64::new(-l1, (-alpha.a * l1 + l2) / alpha.b))
}

pub fn projection_pi(x: &ProductConePoint, alpha: &AlphaParam) -> Result<ProductPoint> {
    let v = normalize_v(x.cp1.t, x.cp2.t, alpha)?;
    let av = alpha.as_complex() * v;
    Ok(ProductPoint {
        p1: AmbientPoint::new_unchecked(cscale(Complex64::from_polar(1.0, v.im), x.cp1.base.coords())),
        p2: AmbientPoint::new_unchecked(cscale(Complex64::from_polar(1.0, av.im), x.cp2.base.coords())),
    })
}

/// Closed-form `dπ`. On the level set it reduces to `dπ(X) = X`,
/// `dπ(R₁) = −(1/b)(aξ₁ + (a²+b²)ξ₂)` and `dπ(R₂) = (1/b)(ξ₁ + aξ₂)`.
pub fn pushforward_pi(x: &ProductConePoint, u: &ConePairTangent, alpha: &AlphaParam) -> Result<ProductTangent> {
    let v = normalize_v(x.cp1.t, x.cp2.t, alpha)?;
    let av = alpha.as_complex() * v;
    let m = projection_pi(x, alpha)?;
    let (a, b) = (alpha.a, alpha.b);
    let r1 = u.u1.radial / x.cp1.t;
    let r2 = u.u2.radial / x.cp2.t;
    let c1 = (-a * r1 + r2) / b;
    let c2 = (-(a * a + b * b) * r1 + a * r2) / b;
    let rot1 = cscale(Complex64::from_polar(1.0, v.im), &u.u1.base_part);
    let rot2 = cscale(Complex64::from_polar(1.0, av.im), &u.u2.base_part);
    Ok(ProductTangent {
        x1: rot1 + m.xi1().x1 * c1,
        x2: rot2 + m.xi2().x2 * c2,
    })
}

/// `dπ` by central differences of `projection_pi` in the ambient chart.
pub fn pushforward_pi_fd(
    x: &ProductConePoint,
    u: &ConePairTangent,
    alpha: &AlphaParam,
    h: f64,
) -> Result<ProductTangent> {
    let w = u.to_ambient(x);
    let fwd = projection_pi(&x.displace(&(&w * h))?, alpha)?.ambient();
    let bwd = projection_pi(&x.displace(&(&w * -h))?, alpha)?.ambient();
    let m = projection_pi(x, alpha)?;
    Ok(ProductTangent::from_ambient(&m, &m.project(&((fwd - bwd) / (2.0 * h)))))
}

/// `J_α X = dπ(J Û)` for the horizontal lift `Û` at the level set.
pub fn j_alpha_by_lift(m: &ProductPoint, x: &ProductTangent, alpha: &AlphaParam) -> Result<ProductTangent> {
    let cone = ProductConePoint::on_level_set(m);
    let lift = ConePairTangent::horizontal(x);
    pushforward_pi(&cone, &cone_pair_j(&cone, &lift), alpha)
}
