// Recover the weight system (w_1, ..., w_r; d) of a weighted-homogeneous polynomial.
//
// cargo run --example weight_inference

use milnor_orlik::grading::{infer_weight_system, is_weighted_homogeneous};
use milnor_orlik::poly;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        "x^3 + y^5",
        "x^3 + x*y^3",
        "x^4 + x*y^2",
        "x^2*y + y^3",
        "x^2 + y^3 + z^5",
        "x*y",
        "x^2 + y^3 + x*y",
    ];
    for text in cases {
        let f = poly::parse_polynomial(text, poly::scan_variables(text)?)?;
        match infer_weight_system(&f) {
            Ok(ws) => {
                assert!(is_weighted_homogeneous(&f, &ws)?);
                println!("{text:<20} type {ws}");
            }
            Err(e) => println!("{text:<20} {e}"),
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
