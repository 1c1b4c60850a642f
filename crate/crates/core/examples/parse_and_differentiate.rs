// Parse expanded polynomials, print them back, and take partial derivatives.
//
// cargo run --example parse_and_differentiate

use milnor_orlik::poly::{self, Polynomial};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = Polynomial::parse("x^3 + x*y^3 - 1/2 x y", &["x", "y"])?;
    println!("f          = {f}");
    for (name, fi) in f.variables().iter().zip(f.gradient()) {
        println!("df/d{name}      = {fi}");
    }

    // without an explicit list the variables are the sorted names in the text
    let text = "z^2 - 3 x y^2 + y x^3";
    let vars = poly::scan_variables(text)?;
    let g = poly::parse_polynomial(text, vars)?;
    println!("g          = {g}    (variables {:?})", g.variables());

    let product = f.try_mul(&Polynomial::parse("x - y", &["x", "y"])?)?;
    println!("f*(x - y)  = {product}");

    match Polynomial::parse("x^3 + * y", &["x", "y"]) {
        Ok(_) => unreachable!(),
        Err(e) => println!("bad input  -> {e}"),
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
