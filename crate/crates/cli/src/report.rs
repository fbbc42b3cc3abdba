//! The machine-readable run report. Field order is declaration order, and
//! every polynomial goes through the canonical printer, so serialization is
//! deterministic. Coordinates are 1-based.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};
use yagzhev_core::calculus::Nilpotency;
use yagzhev_core::irreducibility::{CoordinateVerdict, Hypothesis, LinearFactor, TheoremOutcome, TheoremReport};
use yagzhev_core::text::print_canonical;
use yagzhev_core::yagzhev::{JacobianVerdict, ProofReplayReport};
use yagzhev_core::{Error, Polynomial};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<HypothesisChecks>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub polynomials: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobian: Option<JacobianRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<VerdictRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub replay: Vec<ReplayRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub instances: Vec<InstanceRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<OutcomeRecord>,
    pub exit_status: i32,
}

impl RunReport {
    pub fn new(command: &str, input_digest: String) -> Self {
        Self {
            schema: SCHEMA,
            command: command.to_string(),
            input_digest,
            hypotheses: None,
            polynomials: Vec::new(),
            jacobian: None,
            verdicts: Vec::new(),
            replay: Vec::new(),
            instances: Vec::new(),
            outcome: None,
            exit_status: 0,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HypothesisChecks {
    pub yagzhev_form: bool,
    pub symmetric_jacobian: Option<bool>,
    pub constant_jacobian: Option<bool>,
    pub determinant: Option<String>,
    pub nilpotent_hessian: Option<bool>,
    pub nilpotency_index: Option<usize>,
}

impl HypothesisChecks {
    pub fn from_theorem(report: &TheoremReport, arity: usize) -> Self {
        let violated = |h| matches!(&report.outcome, TheoremOutcome::HypothesisViolation { hypothesis, .. } if *hypothesis == h);
        let yagzhev_form = !violated(Hypothesis::YagzhevForm);
        Self {
            yagzhev_form,
            symmetric_jacobian: yagzhev_form.then(|| !violated(Hypothesis::SymmetricJacobian)),
            constant_jacobian: report.jacobian.as_ref().map(is_constant),
            determinant: report.jacobian.as_ref().map(|j| print_canonical(&j.determinant(arity))),
            nilpotent_hessian: report.hessian_nilpotency.as_ref().map(|h| h.nilpotent),
            nilpotency_index: report.hessian_nilpotency.as_ref().and_then(|h| h.index),
        }
    }

    pub fn from_replay(report: &ProofReplayReport, arity: usize) -> Self {
        Self {
            yagzhev_form: true,
            symmetric_jacobian: Some(true),
            constant_jacobian: Some(is_constant(&report.jacobian)),
            determinant: Some(print_canonical(&report.jacobian.determinant(arity))),
            nilpotent_hessian: Some(report.hessian_nilpotency.nilpotent),
            nilpotency_index: report.hessian_nilpotency.index,
        }
    }
}

fn is_constant(j: &JacobianVerdict) -> bool {
    matches!(j, JacobianVerdict::Constant(_))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct JacobianRecord {
    /// Row-major entries `dF_i/dx_j`.
    pub matrix: Vec<Vec<String>>,
    pub determinant: String,
    pub symmetric: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OracleRecord {
    pub bound: u32,
    pub linear_factor: Option<String>,
    pub cofactor: Option<String>,
}

impl OracleRecord {
    pub fn new(bound: u32, found: Option<&LinearFactor>) -> Self {
        Self {
            bound,
            linear_factor: found.map(|f| print_canonical(&f.linear)),
            cofactor: found.map(|f| print_canonical(&f.quotient)),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerdictRecord {
    pub coordinate: usize,
    pub verdict: String,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRecord>,
}

impl VerdictRecord {
    pub fn new(v: &CoordinateVerdict) -> Self {
        Self {
            coordinate: v.coordinate + 1,
            verdict: format!("{:?}", v.verdict),
            witness: v.witness.as_ref().map(|w| witness_text(&w.p1, &w.p2)),
            oracle: None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self.verdict.as_str() {
            "ReducibleWithWitness" => "reducible",
            "TrivialLinear" => "linear (irreducible)",
            _ => "irreducible",
        }
    }
}

/// `(p1) * (1 + q)` for `p2 = 1 + q`.
pub fn witness_text(p1: &Polynomial, p2: &Polynomial) -> String {
    let q = p2 - &Polynomial::one(p2.arity());
    let q = print_canonical(&q);
    match q.strip_prefix('-') {
        Some(rest) => format!("({}) * (1 - {})", print_canonical(p1), rest),
        None => format!("({}) * (1 + {})", print_canonical(p1), q),
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StepRecord {
    pub step: u8,
    pub name: &'static str,
    pub passed: bool,
    pub details: BTreeMap<&'static str, String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ContradictionRecord {
    pub step: u8,
    pub kind: String,
    pub residue: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReplayRecord {
    pub coordinate: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<HypothesisChecks>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<StepRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub contradictions: Vec<ContradictionRecord>,
}

impl ReplayRecord {
    pub fn precondition_not_met(coordinate: usize, reason: String) -> Self {
        Self {
            coordinate: coordinate + 1,
            status: "PreconditionNotMet",
            reason: Some(reason),
            checks: None,
            steps: Vec::new(),
            contradictions: Vec::new(),
        }
    }

    pub fn from_report(r: &ProofReplayReport, arity: usize) -> Self {
        let p = print_canonical;
        let mut steps = Vec::new();
        let mut push = |step: u8, name, passed, details: Vec<(&'static str, String)>| {
            steps.push(StepRecord { step, name, passed, details: details.into_iter().collect() });
        };
        if let Some(s) = &r.decomposition {
            push(1, "decomposition", s.passed, vec![
                ("g", p(&s.g)),
                ("h", p(&s.h)),
                ("linear_component", p(&s.linear_component)),
                ("q", p(&s.q)),
                ("a_symmetric", s.a_symmetric.to_string()),
            ]);
        }
        if let Some(s) = &r.relations {
            let failing: Vec<String> = s
                .relations
                .iter()
                .filter(|rel| !rel.holds)
                .map(|rel| {
                    format!("c{}{} = {} != {}*{}", rel.row + 1, rel.col + 1, rel.c, rel.multiplier, rel.a)
                })
                .collect();
            let held = s.relations.iter().filter(|rel| rel.holds).count();
            let mut details = vec![("held", format!("{}/{}", held, s.relations.len()))];
            if !failing.is_empty() {
                details.push(("violated", failing.join("; ")));
            }
            push(2, "coefficient relations", s.passed, details);
        }
        if let Some(s) = &r.restriction {
            push(3, "restriction", s.passed, vec![
                ("r", p(&s.r)),
                ("restricted_determinant", p(&s.restricted_determinant)),
                ("block_determinant", p(&s.block_determinant)),
            ]);
        }
        if let Some(s) = &r.reconstruction {
            push(4, "reconstruction", s.passed, vec![("reconstructed", p(&s.reconstructed))]);
        }
        if let Some(s) = &r.trace {
            push(5, "hessian trace", s.passed, vec![
                ("trace", p(&s.trace)),
                ("residue", p(&s.residue)),
                ("predicted_residue", p(&s.predicted_residue)),
            ]);
        }
        Self {
            coordinate: r.pivot + 1,
            status: "Contradiction",
            reason: None,
            checks: Some(HypothesisChecks::from_replay(r, arity)),
            steps,
            contradictions: r
                .contradictions
                .iter()
                .map(|c| ContradictionRecord {
                    step: c.step.number(),
                    kind: format!("{:?}", c.kind),
                    residue: p(&c.residue),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InstanceRecord {
    pub index: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilpotency_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potential: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub map: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OutcomeRecord {
    pub result: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coordinate: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
}

impl OutcomeRecord {
    pub fn plain(result: &str) -> Self {
        Self { result: result.into(), hypothesis: None, coordinate: None, residue: None, summary: None }
    }

    pub fn from_theorem(outcome: &TheoremOutcome) -> Self {
        match outcome {
            TheoremOutcome::Verified => Self::plain("Verified"),
            TheoremOutcome::HypothesisViolation { hypothesis, coordinate, residue } => Self {
                hypothesis: Some(format!("{hypothesis:?}")),
                coordinate: coordinate.map(|k| k + 1),
                residue: Some(print_canonical(residue)),
                ..Self::plain("HypothesisViolation")
            },
            TheoremOutcome::TheoremCounterexample { coordinate } => Self {
                coordinate: Some(coordinate + 1),
                ..Self::plain("TheoremCounterexample")
            },
        }
    }

    /// Hypothesis violations detected as core errors.
    pub fn from_error(e: &Error) -> Option<Self> {
        let (hypothesis, coordinate, residue) = match e {
            Error::NotYagzhevForm { coordinate, stray } => ("YagzhevForm", Some(*coordinate), Some(stray)),
            Error::NotSymmetric { coordinate, residue } => ("SymmetricJacobian", Some(*coordinate), Some(residue)),
            Error::NotQuartic => ("QuarticPotential", None, None),
            _ => return None,
        };
        Some(Self {
            hypothesis: Some(hypothesis.into()),
            coordinate: coordinate.map(|k| k + 1),
            residue: residue.map(print_canonical),
            summary: Some(e.to_string()),
            ..Self::plain("HypothesisViolation")
        })
    }
}

pub fn nilpotency_text(n: &Nilpotency) -> String {
    match (n.nilpotent, n.index, n.exact) {
        (true, Some(i), true) => format!("yes (index {i})"),
        (true, Some(i), false) => format!("yes (index at most {i})"),
        _ => "no".into(),
    }
}
