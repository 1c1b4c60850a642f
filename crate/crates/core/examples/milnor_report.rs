// The Milnor number by formula, Hilbert series and graded linear algebra,
// cross-checked in one report.
//
// cargo run --example milnor_report

use milnor_orlik::milnor::full_report;
use milnor_orlik::{poly, WeightSystem};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cases: [(&str, Option<&str>); 5] = [
        ("x^3 + y^5", None),
        ("x^2*y + y^3", None),
        ("x^3 + y^3 + z^3", None),
        ("x^4 + x^2*y^2 + y^4", None),
        ("x^2*y^2", Some("1,1;4")),
    ];
    for (text, weights) in cases {
        let f = poly::parse_polynomial(text, poly::scan_variables(text)?)?;
        let ws: Option<WeightSystem> = weights.map(str::parse).transpose()?;
        let report = full_report(&f, ws.as_ref())?;
        println!(
            "{text:<20} type {:<10} formula {:<4} series {:<4} oracle {:<6} consistent {}",
            report.weight_system.to_string(),
            report.mu_formula.to_string(),
            report.mu_series.map_or("-".into(), |m| m.to_string()),
            report.mu_oracle.map_or("none".into(), |m| m.to_string()),
            report.consistent
        );
    }

    let f = poly::Polynomial::parse("x^3 + y^5", &["x", "y"])?;
    println!("{}", serde_json::to_string(&full_report(&f, None)?)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
