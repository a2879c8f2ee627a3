use std::fmt;

use serde::Serialize;

use crate::error::Error;

/// Integer grid parameters of a check; unused slots are `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Params {
    pub n: Option<i64>,
    pub m: Option<i64>,
    pub s: Option<i64>,
    pub t: Option<i64>,
}

impl Params {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn n(n: i64) -> Self {
        Self {
            n: Some(n),
            ..Self::default()
        }
    }

    pub fn nm(n: i64, m: i64) -> Self {
        Self {
            n: Some(n),
            m: Some(m),
            ..Self::default()
        }
    }

    pub fn nmst(n: i64, m: i64, s: i64, t: i64) -> Self {
        Self {
            n: Some(n),
            m: Some(m),
            s: Some(s),
            t: Some(t),
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [("n", self.n), ("m", self.m), ("s", self.s), ("t", self.t)]
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| format!("{k}={v}")))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Result of checking one relation `lhs = rhs` after reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationOutcome {
    pub relation: String,
    pub holds: bool,
    /// Marks a diagnostic whose violation is the expected outcome.
    pub expected_failure: bool,
    pub lhs: String,
    pub rhs: String,
}

impl RelationOutcome {
    pub fn compare<T: PartialEq + fmt::Display>(relation: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        Self {
            relation: relation.into(),
            holds: lhs == rhs,
            expected_failure: false,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    pub fn engine_error(relation: impl Into<String>, err: &Error) -> Self {
        Self {
            relation: relation.into(),
            holds: false,
            expected_failure: false,
            lhs: err.to_string(),
            rhs: String::new(),
        }
    }

    pub fn expecting_failure(mut self) -> Self {
        self.expected_failure = true;
        self
    }

    /// Holds, or is an expected failure that was indeed violated.
    pub fn passes(&self) -> bool {
        self.holds != self.expected_failure
    }

    pub fn status(&self) -> &'static str {
        if self.holds {
            "holds"
        } else {
            "violated"
        }
    }
}

/// All relations checked at one grid point of one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub suite: String,
    pub family: String,
    pub params: Params,
    pub outcomes: Vec<RelationOutcome>,
}

#[derive(Serialize)]
struct JsonLine<'a> {
    suite: &'a str,
    family: &'a str,
    params: &'a Params,
    relation: &'a str,
    status: &'a str,
    expected: bool,
    lhs: &'a str,
    rhs: &'a str,
}

impl RelationReport {
    pub fn new(suite: impl Into<String>, family: impl Into<String>, params: Params) -> Self {
        Self {
            suite: suite.into(),
            family: family.into(),
            params,
            outcomes: Vec::new(),
        }
    }

    pub fn push(&mut self, outcome: RelationOutcome) {
        self.outcomes.push(outcome);
    }

    /// Append another report's outcomes, prefixing their relation names.
    pub fn absorb(&mut self, prefix: &str, other: RelationReport) {
        for mut o in other.outcomes {
            if !prefix.is_empty() {
                o.relation = format!("{prefix}.{}", o.relation);
            }
            self.outcomes.push(o);
        }
    }

    /// Like [`absorb`](Self::absorb), recording an engine error as a violation.
    pub fn absorb_result(&mut self, prefix: &str, other: crate::error::Result<RelationReport>) {
        match other {
            Ok(r) => self.absorb(prefix, r),
            Err(e) => self.push(RelationOutcome::engine_error(prefix, &e)),
        }
    }

    /// Every outcome holds.
    pub fn holds(&self) -> bool {
        self.outcomes.iter().all(|o| o.holds)
    }

    /// Every outcome passes, counting expected failures as passes.
    pub fn passes(&self) -> bool {
        self.outcomes.iter().all(RelationOutcome::passes)
    }

    pub fn unexpected(&self) -> impl Iterator<Item = &RelationOutcome> {
        self.outcomes.iter().filter(|o| !o.passes())
    }

    pub fn outcome(&self, relation: &str) -> Option<&RelationOutcome> {
        self.outcomes.iter().find(|o| o.relation == relation)
    }

    /// One JSON object per relation.
    pub fn json_lines(&self) -> Vec<String> {
        self.outcomes
            .iter()
            .map(|o| {
                serde_json::to_string(&JsonLine {
                    suite: &self.suite,
                    family: &self.family,
                    params: &self.params,
                    relation: &o.relation,
                    status: o.status(),
                    expected: o.expected_failure,
                    lhs: &o.lhs,
                    rhs: &o.rhs,
                })
                .expect("report lines serialize")
            })
            .collect()
    }
}

/// Deterministic report order: by suite, family, then parameters.
pub fn sort_reports(reports: &mut [RelationReport]) {
    reports.sort_by(|a, b| {
        (&a.suite, &a.family, &a.params).cmp(&(&b.suite, &b.family, &b.params))
    });
}
