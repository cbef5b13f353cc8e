//! Which member of the CEM family is J_alpha?

use sasakian::algebra::{cem_match_residual, cem_match_solve, match_equations};
use sasakian::product::{j_alpha, j_cem};
use sasakian::{AlphaParam, CemParam, ProductPoint, Sampler};

fn main() -> sasakian::Result<()> {
    let mut rng = Sampler::new(5);
    for s in ["i", "0.4330127018922193+0.75i", "2+1i", "-1+0.5i"] {
        let alpha: AlphaParam = s.parse()?;
        let res = cem_match_residual(&alpha);
        let Some(ab) = cem_match_solve(&alpha) else {
            println!("{alpha:>24}: no match, quartic = {}", res.value);
            continue;
        };
        let eqs = match_equations(&alpha, &ab);
        let m = ProductPoint::random(&mut rng, 1, 1);
        let x = m.random_tangent(&mut rng);
        let diff = j_alpha(&m, &x, &alpha).sub(&j_cem(&m, &x, &ab)).norm();
        println!(
            "{alpha:>24}: (a, b) = ({:+.6}, {:+.6})  quartic = {:<8} eqs = {:.1e}  |J_alpha X - J_cem X| = {diff:.1e}",
            ab.a,
            ab.b,
            res.value,
            eqs.iter().fold(0.0f64, |m, r| m.max(r.abs())),
        );
    }

    let a = AlphaParam::new(0.3, 1.2)?;
    let c = CemParam::new(0.3, 1.2)?;
    println!("M_alpha + M_cem^T =\n{}", a.reeb_block() + c.reeb_block().transpose());
    Ok(())
}
