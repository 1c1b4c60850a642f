// Expand prod_i (1 - t^{d - w_i}) two ways: factor by factor, and as the
// signed sum over all subsets of variables.
//
// cargo run --example numerator_identity

use milnor_orlik::series::{lemma_expansion, product_numerator};
use milnor_orlik::WeightSystem;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["1,1;3", "2,3;6", "5,3;15", "1,2,3,4;10", "3,5,7,2,9,1,4,6;40"] {
        let ws: WeightSystem = text.parse()?;
        let product = product_numerator(&ws)?;
        let expansion = lemma_expansion(&ws)?;
        println!("{text}");
        println!("  product   {product}");
        println!("  subsets   {expansion}");
        println!("  equal     {}", product == expansion);
        assert_eq!(product, expansion);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
