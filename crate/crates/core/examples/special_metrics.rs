//! The special-metric table for a few (n1, n2, a, b).

use sasakian::algebra::{classify_special_metrics, gauduchon_polynomial, DimPair};
use sasakian::CemParam;

fn main() -> sasakian::Result<()> {
    let cases = [(0, 2, 0.5, 1.0), (1, 1, 0.0, 1.0), (1, 2, -1.0, 1.0), (2, 3, 0.3, 0.8), (3, 3, -0.5, 0.2)];
    for (n1, n2, a, b) in cases {
        let d = DimPair::new(n1, n2);
        let ab = CemParam::new(a, b)?;
        let v = classify_special_metrics(d, &ab, d.total())?;
        println!("(n1, n2, a, b) = ({n1}, {n2}, {a}, {b})  polynomial = {}", gauduchon_polynomial(d, &ab));
        println!("{}", serde_json::to_string(&v).unwrap());
    }
    Ok(())
}
