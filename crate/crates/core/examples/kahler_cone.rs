//! J, ω and homotheties on the cone over S^3.

use sasakian::cone::{
    cone_j, cone_j_ambient, euler_field, homothety, homothety_push, kahler_form, reeb_field, ConePoint, ConeTangent,
};
use sasakian::Sampler;

fn main() -> sasakian::Result<()> {
    let mut rng = Sampler::new(2);
    let cp = ConePoint::new(rng.point(1), 1.7)?;
    let r = euler_field(&cp);
    let xi = reeb_field(&cp);
    println!("J R = xi ?    {}", cone_j(&cp, &r) == xi);
    println!("ω(R, xi)      {:.6}  (t² = {:.6})", kahler_form(&cp, &r, &xi), cp.t * cp.t);

    let u = ConeTangent::from_ambient(&cp, &rng.gaussian(4));
    let v = ConeTangent::from_ambient(&cp, &rng.gaussian(4));
    let a = cone_j(&cp, &u);
    let b = cone_j_ambient(&cp, &u);
    println!("structural vs chart J: {:.3e}", (a.base_part - b.base_part).norm() + (a.radial - b.radial).abs());

    for lambda in [0.5, 2.0, 7.0] {
        let img = homothety(&cp, lambda)?;
        let pulled = kahler_form(&img, &homothety_push(&u, lambda), &homothety_push(&v, lambda));
        println!("λ = {lambda}: h*ω / ω = {:.12}", pulled / kahler_form(&cp, &u, &v));
    }
    Ok(())
}
