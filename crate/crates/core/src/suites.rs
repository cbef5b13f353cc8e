//! Seeded verification suites built from the pointwise checks.
//!
//! Every suite draws its samples from its own stream, derived from the
//! configured seed and a fixed per-suite salt, so reports do not depend on
//! which other suites ran.

use num::complex::Complex64;

use crate::checks::{
    hermitian_defect, nijenhuis_defect, nonkahler_witness, semipositivity_check, type11_defect, CriterionKind,
    VerificationReport, Witness, NONKAHLER_THRESHOLD,
};
use crate::cone::{cone_j, cone_j_ambient, homothety, homothety_push, kahler_form, cone_metric, ConePoint, ConeTangent};
use crate::error::Result;
use crate::geom::{exterior_derivative_3form, EmbeddedPoint, SampleConfig, Sampler, TwoFormField, Vector, VectorField};
use crate::product::{
    cone_pair_j, group_action, j_alpha, j_cem, normalize_v, projection_pi, pushforward_pi, pushforward_pi_fd,
    reeb_split, AlphaParam, CemParam, ComplexStructure, ConePairTangent, FnStructure, ProductConePoint, ProductPoint,
    ProductTangent, Structure,
};
use crate::sphere::{normality_defect, sasakian_sample, SasakianSphere, SasakianStructure};

pub const AXIOM_TOL: f64 = 1e-10;
pub const NORMALITY_TOL: f64 = 1e-5;
pub const CONE_TOL: f64 = 1e-10;
pub const HOMOTHETY_TOL: f64 = 1e-9;
pub const CLOSED_TOL: f64 = 1e-5;
pub const RADII_TOL: f64 = 1e-12;
pub const ORBIT_TOL: f64 = 1e-10;
pub const HOLOMORPHY_TOL: f64 = 1e-6;
pub const PUSHFORWARD_TOL: f64 = 1e-6;
pub const STRUCTURE_TOL: f64 = 1e-10;
pub const NIJENHUIS_TOL: f64 = 1e-4;
pub const CONTROL_THRESHOLD: f64 = 1e-2;
pub const TYPE11_TOL: f64 = 1e-8;
pub const SEMIPOSITIVE_TOL: f64 = 1e-8;
pub const REEB_KERNEL_TOL: f64 = 1e-10;

/// Homothety factors exercised by the cone suite.
pub const LAMBDAS: [f64; 3] = [0.5, 2.0, 7.0];

fn sampler(cfg: &SampleConfig, salt: u64) -> Sampler {
    Sampler::new(cfg.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn unit(v: Vector) -> Vector {
    let n = v.norm();
    if n > 0.0 {
        v / n
    } else {
        v
    }
}

fn unit_tangent(s: &mut Sampler, m: &ProductPoint) -> ProductTangent {
    let x = m.random_tangent(s);
    let n = x.norm();
    x.scale(1.0 / n)
}

fn cone_point(s: &mut Sampler, n: usize) -> ConePoint {
    let t = s.uniform(0.3, 3.0);
    ConePoint::new(s.point(n), t).expect("positive radius")
}

fn cone_tangent(s: &mut Sampler, cp: &ConePoint) -> ConeTangent {
    ConeTangent::from_ambient(cp, &unit(s.gaussian(cp.base.ambient_dim())))
}

fn cone_pair(s: &mut Sampler, n1: usize, n2: usize) -> ProductConePoint {
    ProductConePoint::new(cone_point(s, n1), cone_point(s, n2))
}

fn cone_pair_tangent(s: &mut Sampler, x: &ProductConePoint) -> ConePairTangent {
    ConePairTangent::from_ambient(x, &unit(s.gaussian(x.ambient().len())))
}

fn transverse1(s: &mut Sampler, m: &ProductPoint) -> ProductTangent {
    let x = ProductTangent { x1: s.tangent(&m.p1), x2: Vector::zeros(m.p2.ambient_dim()) };
    let d1 = unit(reeb_split(m, &x).d1);
    ProductTangent { x1: d1, x2: x.x2 }
}

fn cone_tangent_diff(a: &ConeTangent, b: &ConeTangent) -> f64 {
    (&a.base_part - &b.base_part).norm().hypot(a.radial - b.radial)
}

/// The algebraic identities of the Sasakian structure on `S^{2n+1}`.
pub fn sasakian_axioms(n: usize, cfg: &SampleConfig) -> Result<VerificationReport> {
    let m = SasakianSphere::new(n);
    let mut s = sampler(cfg, 1 + n as u64);
    let mut r = VerificationReport::builder(format!("sasakian-identities-s{}", 2 * n + 1), AXIOM_TOL, CriterionKind::AtMost);
    for _ in 0..cfg.count {
        let p = s.point(n);
        let sample = sasakian_sample(&m, &p)?;
        let (x, y) = (unit(s.tangent(&p)), unit(s.tangent(&p)));
        let d = sample.identity_defect(&x, &y);
        r.record(d, || Witness::new(&p, &[x.clone(), y.clone()], d));
    }
    Ok(r.finish())
}

/// The normality identity by finite differences.
pub fn sasakian_normality(n: usize, cfg: &SampleConfig) -> Result<VerificationReport> {
    let m = SasakianSphere::new(n);
    let mut s = sampler(cfg, 11 + n as u64);
    let mut r = VerificationReport::builder(format!("normality-s{}", 2 * n + 1), NORMALITY_TOL, CriterionKind::AtMost);
    for _ in 0..cfg.count {
        let p = s.point(n);
        let (x, y) = (unit(s.tangent(&p)), unit(s.tangent(&p)));
        let d = normality_defect(&m, &p, &x, &y, cfg)?;
        r.record(d, || Witness::new(&p, &[x.clone(), y.clone()], d));
    }
    Ok(r.finish())
}

/// `J² = −1`, structural against chart `J`, Hermitian compatibility,
/// `J`-invariance of `ω`, `h_λ^*ω = λ²ω` and `dω = 0` on `C(S^{2n+1})`.
pub fn cone_suite(n: usize, cfg: &SampleConfig) -> Result<Vec<VerificationReport>> {
    let mut s = sampler(cfg, 21 + n as u64);
    let sfx = format!("c-s{}", 2 * n + 1);
    let mut squared = VerificationReport::builder(format!("cone-j-squared-{sfx}"), CONE_TOL, CriterionKind::AtMost);
    let mut chart = VerificationReport::builder(format!("cone-j-chart-agreement-{sfx}"), CONE_TOL, CriterionKind::AtMost);
    let mut herm = VerificationReport::builder(format!("cone-hermitian-{sfx}"), CONE_TOL, CriterionKind::AtMost);
    let mut inv = VerificationReport::builder(format!("cone-omega-j-invariant-{sfx}"), CONE_TOL, CriterionKind::AtMost);
    let mut homo = VerificationReport::builder(format!("homothety-scales-omega-{sfx}"), HOMOTHETY_TOL, CriterionKind::AtMost);
    for _ in 0..cfg.count {
        let cp = cone_point(&mut s, n);
        let (u, v) = (cone_tangent(&mut s, &cp), cone_tangent(&mut s, &cp));
        let wit = |d: f64| Witness::new(&cp, &[u.to_ambient(&cp), v.to_ambient(&cp)], d);
        let (ju, jv) = (cone_j(&cp, &u), cone_j(&cp, &v));
        let d = cone_tangent_diff(&cone_j(&cp, &ju), &u.scale(-1.0));
        squared.record(d, || wit(d));
        let d = cone_tangent_diff(&ju, &cone_j_ambient(&cp, &u));
        chart.record(d, || wit(d));
        let d = cone_metric(&cp, &ju, &jv) - cone_metric(&cp, &u, &v);
        herm.record(d, || wit(d));
        let d = kahler_form(&cp, &ju, &jv) - kahler_form(&cp, &u, &v);
        inv.record(d, || wit(d));
        for lambda in LAMBDAS {
            let img = homothety(&cp, lambda)?;
            let pulled = kahler_form(&img, &homothety_push(&u, lambda), &homothety_push(&v, lambda));
            let d = pulled - lambda * lambda * kahler_form(&cp, &u, &v);
            homo.record(d, || wit(d).with_note(format!("lambda = {lambda}")));
        }
    }

    let omega = TwoFormField::new(|q: &ConePoint, a: &Vector, b: &Vector| {
        kahler_form(q, &ConeTangent::from_ambient(q, a), &ConeTangent::from_ambient(q, b))
    });
    let mut closed = VerificationReport::builder(format!("kahler-form-closed-{sfx}"), CLOSED_TOL, CriterionKind::AtMost);
    let dim = 2 * n + 2;
    for _ in 0..cfg.count.min(256) {
        let cp = cone_point(&mut s, n);
        let (a, b, c) = (unit(s.gaussian(dim)), unit(s.gaussian(dim)), unit(s.gaussian(dim)));
        let d = exterior_derivative_3form(
            &omega,
            &cp,
            &VectorField::constant("X", a.clone()),
            &VectorField::constant("Y", b.clone()),
            &VectorField::constant("Z", c.clone()),
            cfg,
        )?;
        closed.record(d, || Witness::new(&cp, &[a.clone(), b.clone(), c.clone()], d));
    }
    Ok(vec![squared.finish(), chart.finish(), herm.finish(), inv.finish(), homo.finish(), closed.finish()])
}

/// Normalization, orbit constancy and holomorphy of `π`, and closed-form
/// against finite-difference pushforwards.
pub fn quotient_suite(n1: usize, n2: usize, alpha: &AlphaParam, cfg: &SampleConfig) -> Result<Vec<VerificationReport>> {
    let mut s = sampler(cfg, 31 + 7 * n1 as u64 + n2 as u64);
    let mut radii = VerificationReport::builder("normalized-radii", RADII_TOL, CriterionKind::AtMost);
    let mut orbit = VerificationReport::builder("projection-orbit-constant", ORBIT_TOL, CriterionKind::AtMost);
    let mut holo = VerificationReport::builder("projection-holomorphic", HOLOMORPHY_TOL, CriterionKind::AtMost);
    let mut push = VerificationReport::builder("pushforward-closed-form-vs-fd", PUSHFORWARD_TOL, CriterionKind::AtMost);
    for _ in 0..cfg.count {
        let x = cone_pair(&mut s, n1, n2);
        let wx = |d: f64, vs: &[Vector]| Witness::new(&x, vs, d);

        let v = normalize_v(x.cp1.t, x.cp2.t, alpha)?;
        let y = group_action(v, &x, alpha);
        let d = (y.cp1.t - 1.0).abs().max((y.cp2.t - 1.0).abs());
        radii.record(d, || wx(d, &[]));

        let w = Complex64::new(s.uniform(-1.0, 1.0), s.uniform(-std::f64::consts::PI, std::f64::consts::PI));
        let p = projection_pi(&x, alpha)?;
        let q = projection_pi(&group_action(w, &x, alpha), alpha)?;
        let d = (p.ambient() - q.ambient()).norm();
        orbit.record(d, || wx(d, &[]).with_note(format!("w = {w}")));

        let u = cone_pair_tangent(&mut s, &x);
        let lhs = pushforward_pi_fd(&x, &cone_pair_j(&x, &u), alpha, cfg.fd_step)?;
        let rhs = j_alpha(&p, &pushforward_pi_fd(&x, &u, alpha, cfg.fd_step)?, alpha);
        let d = lhs.sub(&rhs).norm();
        holo.record(d, || wx(d, &[u.to_ambient(&x)]));

        let mut r1 = ConePairTangent::horizontal(&ProductTangent::zero(&p));
        r1.u1.radial = x.cp1.t;
        let mut r2 = ConePairTangent::horizontal(&ProductTangent::zero(&p));
        r2.u2.radial = x.cp2.t;
        for (label, t) in [("R1", r1), ("R2", r2), ("random", u)] {
            let cf = pushforward_pi(&x, &t, alpha)?;
            let fd = pushforward_pi_fd(&x, &t, alpha, cfg.fd_step)?;
            let d = cf.sub(&fd).norm();
            push.record(d, || wx(d, &[t.to_ambient(&x)]).with_note(label));
        }
    }
    Ok(vec![radii.finish(), orbit.finish(), holo.finish(), push.finish()])
}

/// `J² = −1` for both structures, Hermitian metrics, and the Reeb-block
/// transpose identity.
pub fn structure_suite(
    n1: usize,
    n2: usize,
    alpha: &AlphaParam,
    cem: &CemParam,
    cfg: &SampleConfig,
) -> Result<Vec<VerificationReport>> {
    let mut s = sampler(cfg, 41 + 7 * n1 as u64 + n2 as u64);
    let mut sq_a = VerificationReport::builder("j-alpha-squared", STRUCTURE_TOL, CriterionKind::AtMost);
    let mut sq_c = VerificationReport::builder("j-cem-squared", STRUCTURE_TOL, CriterionKind::AtMost);
    let mut h_a = VerificationReport::builder("hermitian-g-alpha", STRUCTURE_TOL, CriterionKind::AtMost);
    let mut h_c = VerificationReport::builder("hermitian-g-cem", STRUCTURE_TOL, CriterionKind::AtMost);
    for _ in 0..cfg.count {
        let m = ProductPoint::random(&mut s, n1, n2);
        let (x, y) = (unit_tangent(&mut s, &m), unit_tangent(&mut s, &m));
        let wit = |d: f64| Witness::new(&m, &[x.to_ambient(), y.to_ambient()], d);
        let d = j_alpha(&m, &j_alpha(&m, &x, alpha), alpha).add(&x).norm();
        sq_a.record(d, || wit(d));
        let d = j_cem(&m, &j_cem(&m, &x, cem), cem).add(&x).norm();
        sq_c.record(d, || wit(d));
        let d = hermitian_defect(alpha, alpha, &m, &x, &y);
        h_a.record(d, || wit(d));
        let d = hermitian_defect(cem, cem, &m, &x, &y);
        h_c.record(d, || wit(d));
    }
    let transpose = CemParam::new(alpha.a, alpha.b)?.reeb_block().transpose();
    let exact = alpha.reeb_block() == -transpose;
    Ok(vec![
        sq_a.finish(),
        sq_c.finish(),
        h_a.finish(),
        h_c.finish(),
        VerificationReport::exact("reeb-block-minus-transpose", exact, format!("alpha = {alpha}")),
    ])
}

/// `J_{a,b}` with the sign of its `ξ₂` column flipped: not integrable.
pub fn corrupted_cem(cem: CemParam) -> FnStructure<impl Fn(&ProductPoint, &ProductTangent) -> ProductTangent> {
    FnStructure(move |m: &ProductPoint, x: &ProductTangent| {
        let (a, b) = (cem.a, cem.b);
        let e2 = SasakianSphere::new(m.p2.n()).contact_form(&m.p2, &x.x2);
        let column = m.xi1().scale(-(a * a + b * b) / b * e2).add(&m.xi2().scale(a / b * e2));
        j_cem(m, x, &cem).sub(&column.scale(2.0))
    })
}

#[allow(clippy::too_many_arguments)]
fn nijenhuis_report<J: ComplexStructure>(
    name: &str,
    j: &J,
    n1: usize,
    n2: usize,
    salt: u64,
    kind: CriterionKind,
    tol: f64,
    cfg: &SampleConfig,
) -> Result<VerificationReport> {
    let mut s = sampler(cfg, salt);
    let mut r = VerificationReport::builder(name, tol, kind);
    for _ in 0..cfg.count {
        let m = ProductPoint::random(&mut s, n1, n2);
        let (x, y) = (unit_tangent(&mut s, &m), unit_tangent(&mut s, &m));
        let d = nijenhuis_defect(j, &m, &x, &y, cfg)?;
        r.record(d, || Witness::new(&m, &[x.to_ambient(), y.to_ambient()], d));
    }
    Ok(r.finish())
}

/// Nijenhuis tensors of `J_α` and `J_{a,b}`, plus the corrupted control.
pub fn integrability_suite(
    n1: usize,
    n2: usize,
    alpha: &AlphaParam,
    cem: &CemParam,
    cfg: &SampleConfig,
) -> Result<Vec<VerificationReport>> {
    let salt = 51 + 7 * n1 as u64 + n2 as u64;
    Ok(vec![
        nijenhuis_report("nijenhuis-j-alpha", alpha, n1, n2, salt, CriterionKind::AtMost, NIJENHUIS_TOL, cfg)?,
        nijenhuis_report("nijenhuis-j-cem", cem, n1, n2, salt + 1, CriterionKind::AtMost, NIJENHUIS_TOL, cfg)?,
        nijenhuis_report(
            "nijenhuis-corrupted-control",
            &corrupted_cem(*cem),
            n1,
            n2,
            salt + 2,
            CriterionKind::Exceeds,
            CONTROL_THRESHOLD,
            cfg,
        )?,
    ])
}

/// `dη₁` is of type (1,1) and semipositive for `J_α`, and vanishes on the
/// Reeb plane.
pub fn semipositivity_suite(n1: usize, n2: usize, alpha: &AlphaParam, cfg: &SampleConfig) -> Result<Vec<VerificationReport>> {
    let mut s = sampler(cfg, 61 + 7 * n1 as u64 + n2 as u64);
    let mut t11 = VerificationReport::builder("d-eta1-type-11", TYPE11_TOL, CriterionKind::AtMost);
    let mut semi = VerificationReport::builder("d-eta1-semipositive", SEMIPOSITIVE_TOL, CriterionKind::AtMost);
    let mut reeb = VerificationReport::builder("d-eta1-vanishes-on-reeb-plane", REEB_KERNEL_TOL, CriterionKind::AtMost);
    let mut pos = VerificationReport::builder("d-eta1-positive-transverse", 0.0, CriterionKind::AtMost);
    for _ in 0..cfg.count {
        let m = ProductPoint::random(&mut s, n1, n2);
        let (x, y) = (unit_tangent(&mut s, &m), unit_tangent(&mut s, &m));
        let wit = |d: f64| Witness::new(&m, &[x.to_ambient(), y.to_ambient()], d);
        let d = type11_defect(&m, &x, &y, alpha);
        t11.record(d, || wit(d));
        let v = semipositivity_check(&m, &x, alpha);
        let d = (-v).max(0.0);
        semi.record(d, || wit(d).with_note(format!("value = {v}")));
        let c = Complex64::new(s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0));
        let z = m.xi1().scale(c.re).add(&m.xi2().scale(c.im));
        let v = semipositivity_check(&m, &z, alpha);
        reeb.record(v, || Witness::new(&m, &[z.to_ambient()], v));
        if n1 > 0 {
            // 2|X|² for a unit transverse X; anything below 1 is a failure
            let xd = transverse1(&mut s, &m);
            let v = semipositivity_check(&m, &xd, alpha);
            let d = (1.0 - v).max(0.0);
            pos.record(d, || Witness::new(&m, &[xd.to_ambient()], d).with_note(format!("value = {v}")));
        }
    }
    let mut out = vec![t11.finish(), semi.finish(), reeb.finish()];
    if n1 > 0 {
        out.push(pos.finish());
    }
    Ok(out)
}

/// Seeded search for `|dΩ| > NONKAHLER_THRESHOLD`. Even samples use the
/// triple `(ξ₂, X, φ₁X)` with `X` transverse on `S₁` when `n₁ > 0`.
pub fn nonkahler_suite(n1: usize, n2: usize, st: &Structure, cfg: &SampleConfig) -> Result<VerificationReport> {
    let salt = 71 + 7 * n1 as u64 + n2 as u64 + matches!(st, Structure::Cem(_)) as u64 * 1000;
    let mut s = sampler(cfg, salt);
    let name = match st {
        Structure::Alpha(_) => "nonkahler-witness-j-alpha",
        Structure::Cem(_) => "nonkahler-witness-j-cem",
    };
    let mut r = VerificationReport::builder(name, NONKAHLER_THRESHOLD, CriterionKind::Exceeds);
    for k in 0..cfg.count.min(256) {
        let m = ProductPoint::random(&mut s, n1, n2);
        let (x, y, z) = if k % 2 == 0 && n1 > 0 {
            let xd = transverse1(&mut s, &m);
            let phi = ProductTangent {
                x1: SasakianSphere::new(n1).phi(&m.p1, &xd.x1),
                x2: xd.x2.clone(),
            };
            (m.xi2(), xd, phi)
        } else {
            (unit_tangent(&mut s, &m), unit_tangent(&mut s, &m), unit_tangent(&mut s, &m))
        };
        let d = nonkahler_witness(st, &m, &x, &y, &z, cfg)?;
        r.record(d, || Witness::new(&m, &[x.to_ambient(), y.to_ambient(), z.to_ambient()], d).with_note(st.to_string()));
    }
    Ok(r.finish())
}

/// Parameters of a full `verify` run.
#[derive(Clone, Debug)]
pub struct VerifyParams {
    pub n1: usize,
    pub n2: usize,
    pub alpha: AlphaParam,
    pub cem: CemParam,
    pub cfg: SampleConfig,
}

/// Every suite, in a fixed order.
pub fn verify_all(p: &VerifyParams) -> Result<Vec<VerificationReport>> {
    let cfg = &p.cfg;
    let mut out = Vec::new();
    let mut ns = vec![p.n1];
    if p.n2 != p.n1 {
        ns.push(p.n2);
    }
    for &n in &ns {
        out.push(sasakian_axioms(n, cfg)?);
        out.push(sasakian_normality(n, &cfg.clone().with_count(cfg.count.min(256)))?);
        out.extend(cone_suite(n, cfg)?);
    }
    out.extend(quotient_suite(p.n1, p.n2, &p.alpha, cfg)?);
    out.extend(structure_suite(p.n1, p.n2, &p.alpha, &p.cem, cfg)?);
    out.extend(integrability_suite(p.n1, p.n2, &p.alpha, &p.cem, cfg)?);
    out.extend(semipositivity_suite(p.n1, p.n2, &p.alpha, cfg)?);
    out.push(nonkahler_suite(p.n1, p.n2, &Structure::Cem(p.cem), cfg)?);
    out.push(nonkahler_suite(p.n1, p.n2, &Structure::Alpha(p.alpha), cfg)?);
    Ok(out)
}
