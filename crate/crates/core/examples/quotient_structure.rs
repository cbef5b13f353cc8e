//! The G_α quotient of C(S^3) × C(S^3) and the induced J_α.

use num::complex::Complex64;
use sasakian::cone::ConePoint;
use sasakian::product::{
    group_action, j_alpha, normalize_v, projection_pi, pushforward_pi, pushforward_pi_fd, ConePairTangent,
    ProductConePoint,
};
use sasakian::geom::EmbeddedPoint;
use sasakian::{AlphaParam, Sampler};

fn main() -> sasakian::Result<()> {
    let alpha: AlphaParam = "0.3+1.2i".parse()?;
    let mut rng = Sampler::new(3);
    let x = ProductConePoint::new(ConePoint::new(rng.point(1), 2.5)?, ConePoint::new(rng.point(1), 0.4)?);

    let v = normalize_v(x.cp1.t, x.cp2.t, &alpha)?;
    let y = group_action(v, &x, &alpha);
    println!("v = {v:.6}, radii after action: ({:.15}, {:.15})", y.cp1.t, y.cp2.t);

    let m = projection_pi(&x, &alpha)?;
    let w = Complex64::new(0.3, -2.0);
    let m2 = projection_pi(&group_action(w, &x, &alpha), &alpha)?;
    println!("π constant on orbits: {:.3e}", (m.ambient() - m2.ambient()).norm());

    let mut r1 = ConePairTangent::horizontal(&sasakian::ProductTangent::zero(&m));
    r1.u1.radial = x.cp1.t;
    let cf = pushforward_pi(&x, &r1, &alpha)?;
    let fd = pushforward_pi_fd(&x, &r1, &alpha, 1e-5)?;
    println!("dπ(R1) closed form vs FD: {:.3e}", cf.sub(&fd).norm());

    println!("Reeb block of J_alpha:\n{}", alpha.reeb_block());
    let jj = j_alpha(&m, &j_alpha(&m, &m.xi1(), &alpha), &alpha);
    println!("J_alpha² xi1 + xi1 = {:.3e}", jj.add(&m.xi1()).norm());
    Ok(())
}
