// Build the graded Koszul complex on the partial derivatives and check it
// degree by degree: exact for an isolated singularity, not exact otherwise.
//
// cargo run --example koszul_exactness

use milnor_orlik::koszul::{differential_matrix, koszul_shifts, verify_exactness};
use milnor_orlik::milnor::socle_bound;
use milnor_orlik::{Polynomial, WeightSystem};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = Polynomial::parse("x^3 + y^5", &["x", "y"])?;
    let ws: WeightSystem = "5,3;15".parse()?;
    let res = koszul_shifts(&ws)?;
    for (k, _) in res.terms.iter().enumerate() {
        println!("K_{k}: shifts {:?}", res.shifts(k));
    }

    let d2 = differential_matrix(&f, &ws, 2, 22)?;
    println!("d_2 in degree 22: {} x {} matrix", d2.nrows(), d2.ncols());

    let alpha_max = socle_bound(&ws) + ws.max_weight();
    let report = verify_exactness(&f, &ws, alpha_max)?;
    println!(
        "x^3 + y^5: exact {} / d^2 = 0 {} / coker dims {:?}",
        report.all_exact(),
        report.complex_property_holds(),
        report.coker_dims
    );

    let g = Polynomial::parse("x^2*y^2", &["x", "y"])?;
    let report = verify_exactness(&g, &"1,1;4".parse()?, 8)?;
    for s in report.failures() {
        println!(
            "x^2*y^2: homology at k={} in degree {} (kernel {} > image)",
            s.k, s.alpha, s.kernel_dim
        );
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
