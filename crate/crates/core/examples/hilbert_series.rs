// Hilbert series of the weighted polynomial ring and the Poincare polynomial
// of the Milnor algebra, obtained by exact division.
//
// cargo run --example hilbert_series

use milnor_orlik::series::{denumerant, evaluate_at_one, milnor_poincare_polynomial, ring_hilbert_series};
use milnor_orlik::{Error, WeightSystem};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let weights = [2, 3];
    let hs = ring_hilbert_series(&weights, 12);
    let coeffs: Vec<String> = hs.coeffs().iter().map(ToString::to_string).collect();
    println!("HS_S for weights {weights:?}: {}", coeffs.join(" "));
    println!("D(100) for weights {weights:?} = {}", denumerant(100, &weights));

    for text in ["1,1;3", "2,3;6", "5,3;15", "6,4,3;12", "3,4;5"] {
        let ws: WeightSystem = text.parse()?;
        match milnor_poincare_polynomial(&ws) {
            Ok(p) => println!("{text:<10} HS_M = {p}    mu = {}", evaluate_at_one(&p)),
            Err(Error::NotPolynomial) => println!("{text:<10} not a polynomial: no isolated singularity of this type"),
            Err(e) => return Err(e.into()),
        }
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
