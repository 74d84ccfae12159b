//! Outcome of an exhaustive identity check.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactlin::Scalar;

/// One basis tuple where the two sides of an identity disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub condition: String,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Every failing tuple found, plus how many tuples were checked per
/// condition. A report passes exactly when it holds no failures.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Repr", try_from = "Repr")]
pub struct VerificationReport {
    pub checked: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Repr {
    pass: bool,
    checked: BTreeMap<String, u64>,
    failures: Vec<Failure>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

impl From<VerificationReport> for Repr {
    fn from(r: VerificationReport) -> Repr {
        Repr {
            pass: r.passed(),
            checked: r.checked,
            failures: r.failures,
            notes: r.notes,
        }
    }
}

impl TryFrom<Repr> for VerificationReport {
    type Error = String;

    fn try_from(r: Repr) -> Result<Self, String> {
        if r.pass != r.failures.is_empty() {
            return Err("report \"pass\" flag disagrees with its failure list".into());
        }
        Ok(VerificationReport {
            checked: r.checked,
            failures: r.failures,
            notes: r.notes,
        })
    }
}

pub fn format_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("({})", parts.join(", "))
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Compares two coordinate vectors for `condition` at `inputs`.
    /// Returns whether they agree.
    pub fn compare(
        &mut self,
        condition: &str,
        inputs: impl FnOnce() -> Vec<String>,
        lhs: &[Scalar],
        rhs: &[Scalar],
    ) -> bool {
        let ok = lhs == rhs;
        self.record(condition, ok, || (inputs(), format_vector(lhs), format_vector(rhs)));
        ok
    }

    /// Records a check whose outcome was decided by the caller; `detail` is
    /// only evaluated on failure.
    pub fn record(
        &mut self,
        condition: &str,
        ok: bool,
        detail: impl FnOnce() -> (Vec<String>, String, String),
    ) {
        *self.checked.entry(condition.to_string()).or_default() += 1;
        if !ok {
            let (inputs, lhs, rhs) = detail();
            self.failures.push(Failure {
                condition: condition.to_string(),
                inputs,
                lhs,
                rhs,
            });
        }
    }

    /// Registers a condition with no tuples to check (so it still shows up).
    pub fn touch(&mut self, condition: &str) {
        self.checked.entry(condition.to_string()).or_default();
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for (k, v) in other.checked {
            *self.checked.entry(k).or_default() += v;
        }
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }

    /// Merges `other` with every condition label prefixed by `prefix/`.
    pub fn merge_prefixed(&mut self, prefix: &str, other: VerificationReport) {
        for (k, v) in other.checked {
            *self.checked.entry(format!("{prefix}/{k}")).or_default() += v;
        }
        self.failures
            .extend(other.failures.into_iter().map(|mut f| {
                f.condition = format!("{prefix}/{}", f.condition);
                f
            }));
        self.notes.extend(other.notes);
    }

    /// Merges `other` with every condition collapsed into `label`.
    pub fn absorb_as(&mut self, label: &str, other: VerificationReport) {
        *self.checked.entry(label.to_string()).or_default() += other.total_checked();
        self.failures.extend(other.failures.into_iter().map(|mut f| {
            f.condition = label.to_string();
            f
        }));
        self.notes.extend(other.notes);
    }

    /// Condition labels with at least one failure, sorted and deduplicated.
    pub fn failed_conditions(&self) -> Vec<String> {
        let mut labels: Vec<String> = self.failures.iter().map(|f| f.condition.clone()).collect();
        labels.sort();
        labels.dedup();
        labels
    }

    pub fn failures_of(&self, condition: &str) -> usize {
        self.failures.iter().filter(|f| f.condition == condition).count()
    }

    pub fn total_checked(&self) -> u64 {
        self.checked.values().sum()
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("pass ({} checks)", self.total_checked())
        } else {
            format!(
                "{} failure(s) in {}",
                self.failures.len(),
                self.failed_conditions().join(", ")
            )
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        for (label, n) in &self.checked {
            let bad = self.failures_of(label);
            let status = if bad == 0 { "ok" } else { "FAIL" };
            writeln!(f, "  {status:<4} {label}: {n} checked, {bad} failed")?;
        }
        for fail in &self.failures {
            writeln!(
                f,
                "  [{}] at ({}): lhs = {}, rhs = {}",
                fail.condition,
                fail.inputs.join(", "),
                fail.lhs,
                fail.rhs
            )?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_tracks_failures() {
        let mut r = VerificationReport::new();
        let one = [Scalar::one()];
        let zero = [Scalar::zero()];
        assert!(r.compare("a", Vec::new, &one, &one));
        assert!(r.passed());
        assert!(!r.compare("b", || vec!["e1".into()], &one, &zero));
        assert!(!r.passed());
        assert_eq!(r.failed_conditions(), vec!["b".to_string()]);
        assert_eq!(r.total_checked(), 2);
    }

    #[test]
    fn json_round_trip_keeps_pass_flag() {
        let mut r = VerificationReport::new();
        r.compare("cmc2", || vec!["e1".into(), "e2".into()], &[Scalar::one()], &[Scalar::zero()]);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"pass\":false"));
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn inconsistent_pass_flag_is_rejected() {
        let text = r#"{"pass":false,"checked":{},"failures":[]}"#;
        assert!(serde_json::from_str::<VerificationReport>(text).is_err());
    }

    #[test]
    fn prefixed_merge_renames_conditions() {
        let mut inner = VerificationReport::new();
        inner.compare("x", Vec::new, &[Scalar::one()], &[Scalar::zero()]);
        let mut outer = VerificationReport::new();
        outer.merge_prefixed("source", inner);
        assert_eq!(outer.failures[0].condition, "source/x");
    }
}
