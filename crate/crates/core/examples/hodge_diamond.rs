//! Hodge diamonds of S^{2n1+1} × S^{2n2+1} and of a user model.

use sasakian::cohomology::model_file::{parse_model, write_model};
use sasakian::cohomology::{
    diamond_consistency, dolbeault_hodge_numbers, kunneth_betti_sphere_product, sasakian_betti, cpn_model,
    sphere_product_model,
};

fn main() -> sasakian::Result<()> {
    for (n1, n2) in [(1, 0), (1, 1), (2, 1)] {
        let model = sphere_product_model(n1, n2);
        let d = dolbeault_hodge_numbers(&model, n1 + n2 + 1)?;
        let ok = diamond_consistency(&d, &kunneth_betti_sphere_product(n1, n2)).passed;
        println!("S{} x S{}  (consistent: {ok})\n{d}", 2 * n1 + 1, 2 * n2 + 1);
    }

    let b = sasakian_betti(&cpn_model(3), 3)?;
    println!("S7 Betti numbers known from basic cohomology: {:?}", b.known);

    let text = write_model(&sphere_product_model(1, 1));
    println!("model file:\n{text}");
    assert_eq!(parse_model(&text)?, sphere_product_model(1, 1));
    Ok(())
}
