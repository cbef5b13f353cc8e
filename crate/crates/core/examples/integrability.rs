//! Nijenhuis tensors of J_alpha, J_cem and a corrupted structure on S^5 × S^3.

use sasakian::checks::nijenhuis_defect;
use sasakian::product::ComplexStructure;
use sasakian::suites::corrupted_cem;
use sasakian::{AlphaParam, CemParam, ProductPoint, SampleConfig, Sampler};

fn worst<J: ComplexStructure>(j: &J, samples: usize) -> sasakian::Result<f64> {
    let cfg = SampleConfig::default();
    let mut rng = Sampler::new(4);
    let mut max: f64 = 0.0;
    for _ in 0..samples {
        let m = ProductPoint::random(&mut rng, 2, 1);
        let x = m.random_tangent(&mut rng);
        let y = m.random_tangent(&mut rng);
        max = max.max(nijenhuis_defect(j, &m, &x, &y, &cfg)?);
    }
    Ok(max)
}

fn main() -> sasakian::Result<()> {
    let alpha = AlphaParam::new(-1.0, 0.5)?;
    let cem = CemParam::new(0.4, 0.9)?;
    println!("J_alpha     max |N| = {:.3e}", worst(&alpha, 64)?);
    println!("J_cem       max |N| = {:.3e}", worst(&cem, 64)?);
    println!("corrupted   max |N| = {:.3e}", worst(&corrupted_cem(cem), 64)?);
    Ok(())
}
