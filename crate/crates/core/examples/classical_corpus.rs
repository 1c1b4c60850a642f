// Run the bundled ADE and Brieskorn-Pham corpus through every route.
//
// cargo run --example classical_corpus

use milnor_orlik::corpus::{parse_corpus, run_corpus, CLASSICAL_CORPUS};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cases = parse_corpus(CLASSICAL_CORPUS)?;
    let outcomes = run_corpus(&cases);
    for o in &outcomes {
        let mu = match &o.report {
            Ok(r) => r.mu().map_or("non-isolated".into(), |m| m.to_string()),
            Err(e) => e.to_string(),
        };
        println!("{:<5} {:<12} {:<22} mu = {mu}", if o.passed { "ok" } else { "FAIL" }, o.case.name, o.case.polynomial.to_string());
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} passed", outcomes.len());
    if passed != outcomes.len() {
        return Err("corpus mismatch".into());
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
