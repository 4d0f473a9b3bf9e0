//! Three-valued results of the decision procedures.

use std::fmt;

use crate::lifting::{LiftProblem, LiftRecord};
use crate::sset::GenId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Yes,
    No,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Yes => 0,
            Outcome::No => 1,
            Outcome::Inconclusive => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Witness {
    /// A lift for every lifting problem that was enumerated.
    Lifts(Vec<LiftRecord>),
    /// A lifting problem with no solution.
    Unfillable(LiftProblem),
    /// What ran out.
    Budget(String),
    /// The first vertex at which a per-vertex criterion decided the outcome.
    AtVertex { vertex: GenId, detail: Box<Verdict> },
    /// A homological degree where two sides differ.
    Degree { degree: usize, detail: String },
    /// The conditions that were checked and held.
    Checks(Vec<String>),
    /// Verdicts of the sub-checks, in order.
    Parts(Vec<Verdict>),
    /// A morphism, inverse pair, or similar explicit datum.
    Datum(String),
    /// A bisimplicial cell `(m, n)`, with horn index `k` when the cell is a horn cell.
    Cell { m: usize, n: usize, k: Option<usize>, detail: Box<Verdict> },
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Bounds, budgets and variants the verdict is relative to.
    pub scope: String,
    pub witness: Witness,
}

impl Verdict {
    pub fn yes(scope: impl Into<String>, witness: Witness) -> Self {
        Verdict { outcome: Outcome::Yes, scope: scope.into(), witness }
    }

    pub fn no(scope: impl Into<String>, witness: Witness) -> Self {
        Verdict { outcome: Outcome::No, scope: scope.into(), witness }
    }

    pub fn inconclusive(scope: impl Into<String>, what: impl Into<String>) -> Self {
        Verdict { outcome: Outcome::Inconclusive, scope: scope.into(), witness: Witness::Budget(what.into()) }
    }

    pub fn is_yes(&self) -> bool {
        self.outcome == Outcome::Yes
    }

    pub fn is_no(&self) -> bool {
        self.outcome == Outcome::No
    }

    pub fn is_inconclusive(&self) -> bool {
        self.outcome == Outcome::Inconclusive
    }

    /// Conjunction: the first `No` wins, then any `Inconclusive`, else `Yes`.
    pub fn all(scope: impl Into<String>, parts: Vec<Verdict>) -> Verdict {
        let scope = scope.into();
        if let Some(no) = parts.iter().find(|v| v.is_no()) {
            return Verdict { outcome: Outcome::No, scope, witness: Witness::Parts(vec![no.clone()]) };
        }
        let outcome = if parts.iter().any(|v| v.is_inconclusive()) { Outcome::Inconclusive } else { Outcome::Yes };
        Verdict { outcome, scope, witness: Witness::Parts(parts) }
    }

    pub fn with_scope(mut self, scope: impl Into<String>) -> Self {
        self.scope = scope.into();
        self
    }

    /// A short one-line summary for reports.
    pub fn summary(&self) -> String {
        let detail = match &self.witness {
            Witness::Lifts(l) => format!("{} lifting problems solved", l.len()),
            Witness::Unfillable(p) => format!("unfillable problem against {}", p.member),
            Witness::Budget(s) => format!("budget: {s}"),
            Witness::AtVertex { vertex, detail } => format!("at vertex {vertex:?}: {}", detail.summary()),
            Witness::Degree { degree, detail } => format!("degree {degree}: {detail}"),
            Witness::Checks(c) => c.join("; "),
            Witness::Parts(p) => match p.iter().find(|v| !v.is_yes()) {
                Some(v) => v.summary(),
                None => format!("{} sub-checks", p.len()),
            },
            Witness::Datum(s) => s.clone(),
            Witness::Cell { m, n, k: Some(k), detail } => format!("cell (m,n,k)=({m},{n},{k}): {}", detail.summary()),
            Witness::Cell { m, n, k: None, detail } => format!("bidegree ({m},{n}): {}", detail.summary()),
        };
        format!("{} [{}] {}", self.outcome.as_str(), self.scope, detail)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}
