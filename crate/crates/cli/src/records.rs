//! Serialized forms. Every number is a decimal string so that exponents
//! beyond 64 bits survive downstream tools.

use num_bigint::BigUint;
use perfect_forge::lab::VerificationOutcome;
use perfect_forge::{ClassificationReport, Factorization, ShapeSolution, SolveReport};
use serde::{Deserialize, Serialize};

fn dec(k: &Option<BigUint>) -> Option<String> {
    k.as_ref().map(BigUint::to_string)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub n: String,
    pub factorization: Factorization,
    pub perfect_order: Option<String>,
    pub superperfect_order: Option<String>,
    pub mult_perfect_order: Option<String>,
    pub mult_e_perfect_order: Option<String>,
    pub mult_e_superperfect_order: Option<String>,
    pub e_perfect: bool,
    pub e_harmonic1: bool,
    pub e_harmonic2: bool,
    pub t0tstar_order: Option<String>,
    pub tstar0t_order: Option<String>,
    pub tstar_t_perfect: bool,
}

impl From<&ClassificationReport> for ClassifyRecord {
    fn from(r: &ClassificationReport) -> Self {
        let n = r.n.value_big().map(|v| v.to_string()).unwrap_or_else(|_| r.n.to_string());
        Self {
            n,
            factorization: r.n.clone(),
            perfect_order: dec(&r.perfect_order),
            superperfect_order: dec(&r.superperfect_order),
            mult_perfect_order: dec(&r.mult_perfect_order),
            mult_e_perfect_order: dec(&r.mult_e_perfect_order),
            mult_e_superperfect_order: dec(&r.mult_e_superperfect_order),
            e_perfect: r.e_perfect,
            e_harmonic1: r.e_harmonic1,
            e_harmonic2: r.e_harmonic2,
            t0tstar_order: dec(&r.t0tstar_order),
            tstar0t_order: dec(&r.tstar0t_order),
            tstar_t_perfect: r.tstar_t_perfect,
        }
    }
}

/// One class membership found by a range scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: String,
    pub class: String,
    pub order: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub family: String,
    pub k: String,
    pub shape: String,
    pub exponents: Vec<String>,
    pub witness: Vec<String>,
    pub r_max: Option<String>,
    pub alpha_max: Option<String>,
}

impl SolutionRecord {
    pub fn new(report: &SolveReport, sol: &ShapeSolution) -> Self {
        Self {
            family: report.family.name().to_string(),
            k: sol.k.to_string(),
            shape: sol.shape.render(),
            exponents: sol.shape.exponents().iter().map(u64::to_string).collect(),
            witness: sol.witness.iter().map(BigUint::to_string).collect(),
            r_max: report.search_box.map(|b| b.r_max.to_string()),
            alpha_max: report.search_box.map(|b| b.alpha_max.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub subject: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub theorem_id: String,
    pub range: String,
    pub checked: String,
    pub passed: bool,
    pub counterexamples: Vec<CounterexampleRecord>,
}

impl From<&VerificationOutcome> for OutcomeRecord {
    fn from(o: &VerificationOutcome) -> Self {
        Self {
            theorem_id: o.theorem_id.clone(),
            range: o.range_description.clone(),
            checked: o.checked.to_string(),
            passed: o.passed,
            counterexamples: o
                .counterexamples
                .iter()
                .map(|c| CounterexampleRecord {
                    subject: c.subject.to_string(),
                    reason: c.reason.clone(),
                })
                .collect(),
        }
    }
}
