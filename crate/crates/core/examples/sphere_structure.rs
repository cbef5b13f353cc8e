//! The Sasakian structure on S^5 at a random point.

use sasakian::geom::SampleConfig;
use sasakian::sphere::{normality_defect, reeb_flow, sasakian_sample, SasakianStructure};
use sasakian::{SasakianSphere, Sampler};

fn main() -> sasakian::Result<()> {
    let s5 = SasakianSphere::new(2);
    let mut rng = Sampler::new(1);
    let p = rng.point(2);
    let x = rng.tangent(&p);
    let y = rng.tangent(&p);

    let sample = sasakian_sample(&s5, &p)?;
    println!("point      {:.4?}", p.coords().as_slice());
    println!("xi         {:.4?}", sample.xi.as_slice());
    println!("eta(xi)    {:.3e}", sample.eta(&sample.xi) - 1.0);
    println!("identities {:.3e}", sample.identity_defect(&x, &y));
    println!("d eta(X, phi X) = {:.6}", s5.d_eta(&p, &x, &s5.phi(&p, &x)));

    let cfg = SampleConfig::default();
    println!("normality  {:.3e}", normality_defect(&s5, &p, &x, &y, &cfg)?);

    // the flow is 2π-periodic
    let back = reeb_flow(&p, 2.0 * std::f64::consts::PI);
    println!("flow(2π)   {:.3e}", (back.coords() - p.coords()).norm());
    Ok(())
}
