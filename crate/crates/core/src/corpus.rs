//! Batch runs over a plain-text list of singularities.
//!
//! One case per line, `name ; polynomial ; expected`, where `expected` is a
//! Milnor number or `NONISOLATED`. Blank lines and lines starting with `#`
//! are skipped. Variables are the sorted names occurring in the polynomial.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::milnor::{self, MilnorReport};
use crate::poly::{self, Polynomial};

/// The ADE and Brieskorn-Pham cases shipped with the crate.
pub const CLASSICAL_CORPUS: &str = include_str!("../data/classical.corpus");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Mu(usize),
    NonIsolated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusCase {
    pub name: String,
    pub line: usize,
    pub polynomial: Polynomial,
    pub expected: Expectation,
}

#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub case: CorpusCase,
    pub report: Result<MilnorReport>,
    pub passed: bool,
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusCase>> {
    let mut cases = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Corpus { line, message };
        let fields: Vec<&str> = content.split(';').map(str::trim).collect();
        let [name, poly_text, expected] = fields[..] else {
            return Err(bad(format!("expected 3 `;`-separated fields, found {}", fields.len())));
        };
        let expected = match expected {
            "NONISOLATED" => Expectation::NonIsolated,
            n => Expectation::Mu(
                n.parse()
                    .map_err(|_| bad(format!("expected a Milnor number or NONISOLATED, got `{n}`")))?,
            ),
        };
        let polynomial = poly::scan_variables(poly_text)
            .and_then(|vars| poly::parse_polynomial(poly_text, vars))
            .map_err(|e| bad(e.to_string()))?;
        cases.push(CorpusCase {
            name: name.to_string(),
            line,
            polynomial,
            expected,
        });
    }
    Ok(cases)
}

pub fn run_case(case: &CorpusCase) -> CaseOutcome {
    let report = milnor::full_report(&case.polynomial, None);
    let passed = match (&report, case.expected) {
        (Ok(r), Expectation::Mu(mu)) => r.consistent && r.mu_oracle == Some(mu),
        (Ok(r), Expectation::NonIsolated) => !r.isolated,
        (Err(_), _) => false,
    };
    CaseOutcome {
        case: case.clone(),
        report,
        passed,
    }
}

/// Runs all cases in parallel; outcomes keep the input order.
pub fn run_corpus(cases: &[CorpusCase]) -> Vec<CaseOutcome> {
    cases.par_iter().map(run_case).collect()
}
