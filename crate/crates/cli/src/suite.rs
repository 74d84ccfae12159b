//! Check orchestration and the machine-readable result.

use std::fmt;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use filippov_core::{
    build_skeletal, build_strict_from_crossed_module, build_strict_from_symplectic, delta_squared_zero,
    extract_crossed_module, extract_quadruple, is_cocycle, symplectic_pipeline_report, verify_lod_relations, Error,
    Representation, ThreeLie2Algebra, ThreeLieAlgebra, VerificationReport,
};
use serde::{Deserialize, Serialize};

use crate::definition::{Definition, DomainObject};
use crate::error::CliError;

pub const SCHEMA: &str = "filippov-lab/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Axioms,
    Lod,
    Cocycle,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::All => "all",
            Suite::Axioms => "axioms",
            Suite::Lod => "lod",
            Suite::Cocycle => "cocycle",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    /// Highest arity of the induced-bracket relations to check.
    pub max_arity: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            suite: Suite::All,
            trials: 50,
            seed: 0,
            max_arity: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub check: String,
    pub pass: bool,
    pub report: VerificationReport,
}

/// Outcome of one `verify` run. Timing is kept out of the JSON form so that
/// identical inputs give byte-identical machine reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteResult {
    pub schema: String,
    pub name: String,
    pub kind: String,
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl SuiteResult {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("results serialize");
        text.push('\n');
        text
    }

    /// Parses a saved result, checking the schema tag and the pass flags.
    pub fn from_json(text: &str) -> Result<SuiteResult, CliError> {
        let r: SuiteResult = serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if r.schema != SCHEMA {
            return Err(CliError::Shape(format!("unsupported report schema {:?}", r.schema)));
        }
        if r.checks.iter().any(|c| c.pass != c.report.passed()) || r.pass != r.checks.iter().all(|c| c.pass) {
            return Err(CliError::Shape("report pass flags disagree with its failures".into()));
        }
        Ok(r)
    }

    /// Labels of failing conditions, as `check/condition`.
    pub fn failed_conditions(&self) -> Vec<String> {
        self.checks
            .iter()
            .flat_map(|c| c.report.failed_conditions().into_iter().map(move |f| format!("{}/{f}", c.check)))
            .collect()
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({}), suite {}, seed {}, trials {}", self.name, self.kind, self.suite, self.seed, self.trials)?;
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {}: {}", c.check, c.report.summary())?;
            if !c.pass {
                for line in c.report.to_string().lines().skip(1) {
                    writeln!(f, "  {line}")?;
                }
            }
        }
        writeln!(f, "result: {}", if self.pass { "pass" } else { "FAIL" })?;
        if let Some(t) = self.elapsed {
            writeln!(f, "elapsed: {:.3} s", t.as_secs_f64())?;
        }
        Ok(())
    }
}

struct Collector {
    checks: Vec<CheckResult>,
}

impl Collector {
    fn push(&mut self, check: &str, report: VerificationReport) {
        self.checks.push(CheckResult {
            check: check.to_string(),
            pass: report.passed(),
            report,
        });
    }

    /// Records a check whose verifier may refuse its input; refusals with
    /// a report become failing checks.
    fn push_result(&mut self, check: &str, result: filippov_core::Result<VerificationReport>) -> Result<(), CliError> {
        match result {
            Ok(r) => self.push(check, r),
            Err(e) => match CliError::from(e) {
                CliError::Rejected { what, report } => {
                    let mut r = *report;
                    if r.passed() {
                        r.record(check, false, || (vec![], what.clone(), "accepted input".into()));
                    } else {
                        r.note(what);
                    }
                    self.push(check, r);
                }
                other => return Err(other),
            },
        }
        Ok(())
    }

    fn round_trip(&mut self, check: &str, same: bool) {
        let mut r = VerificationReport::new();
        r.record("round_trip", same, || (vec![], "extracted object".into(), "original object".into()));
        self.push(check, r);
    }
}

fn wants(suite: Suite, part: Suite) -> bool {
    suite == Suite::All || suite == part
}

fn not_applicable(suite: Suite, kind: &str) -> CliError {
    CliError::Shape(format!("suite \"{suite}\" does not apply to kind \"{kind}\""))
}

fn algebra_checks(c: &mut Collector, a: &ThreeLieAlgebra) -> Result<(), CliError> {
    c.push("fundamental_identity", a.check_fundamental_identity());
    c.push("ad_derivation", a.check_ad_derivations());
    c.push_result("leibniz", a.check_leibniz_fundamental())
}

fn delta_squared(
    c: &mut Collector,
    prefix: &str,
    a: &ThreeLieAlgebra,
    rep: &Representation,
    opts: &SuiteOptions,
) -> Result<(), CliError> {
    for p in 1..=2 {
        c.push_result(&format!("{prefix}/p{p}"), delta_squared_zero(a, rep, p, opts.trials, opts.seed))?;
    }
    Ok(())
}

fn lod(c: &mut Collector, l: &ThreeLie2Algebra, opts: &SuiteOptions) -> Result<(), CliError> {
    c.push_result("lod", verify_lod_relations(l, opts.max_arity))
}

/// The built object, or `None` when the input was refused; a refusal is
/// already reported by the axiom checks.
fn built<T>(result: filippov_core::Result<T>) -> Result<Option<T>, CliError> {
    match result {
        Ok(x) => Ok(Some(x)),
        Err(e) => match CliError::from(e) {
            CliError::Rejected { .. } => Ok(None),
            other => Err(other),
        },
    }
}

/// Runs the checks `opts.suite` selects for the object's kind.
pub fn run_suite(def: &Definition, opts: &SuiteOptions) -> Result<SuiteResult, CliError> {
    let started = Instant::now();
    let mut c = Collector { checks: Vec::new() };
    let suite = opts.suite;
    let kind = def.kind();
    match &def.object {
        DomainObject::ThreeLie(a) => {
            if suite == Suite::Lod {
                return Err(not_applicable(suite, kind));
            }
            if wants(suite, Suite::Axioms) {
                algebra_checks(&mut c, a)?;
            }
            if wants(suite, Suite::Cocycle) {
                delta_squared(&mut c, "delta_squared/trivial", a, &Representation::zero(a.dim(), a.dim()), opts)?;
                delta_squared(&mut c, "delta_squared/adjoint", a, &Representation::adjoint(a), opts)?;
            }
        }
        DomainObject::Representation { algebra, rep, .. } => {
            if suite == Suite::Lod {
                return Err(not_applicable(suite, kind));
            }
            if wants(suite, Suite::Axioms) {
                c.push("fundamental_identity", algebra.check_fundamental_identity());
                c.push_result("representation", algebra.check_representation(rep))?;
            }
            if wants(suite, Suite::Cocycle) {
                delta_squared(&mut c, "delta_squared", algebra, rep, opts)?;
            }
        }
        DomainObject::TwoTerm(l) => {
            if suite == Suite::Cocycle {
                return Err(not_applicable(suite, kind));
            }
            if wants(suite, Suite::Axioms) {
                c.push("two_term", l.verify_two_term());
            }
            if wants(suite, Suite::Lod) {
                lod(&mut c, l, opts)?;
            }
        }
        DomainObject::Homomorphism(h) => {
            if suite != Suite::All && suite != Suite::Axioms {
                return Err(not_applicable(suite, kind));
            }
            c.push("source", h.source().verify_two_term());
            c.push("target", h.target().verify_two_term());
            c.push_result("homomorphism", h.verify())?;
        }
        DomainObject::TwoHomomorphism(t) => {
            if suite != Suite::All && suite != Suite::Axioms {
                return Err(not_applicable(suite, kind));
            }
            c.push_result("source", t.source().verify())?;
            c.push_result("target", t.target().verify())?;
            c.push_result("two_homomorphism", t.verify())?;
        }
        DomainObject::CrossedModule(cm) => {
            if suite == Suite::Cocycle {
                return Err(not_applicable(suite, kind));
            }
            if wants(suite, Suite::Axioms) {
                c.push_result("crossed_module", cm.verify())?;
            }
            if let Some(l) = built(build_strict_from_crossed_module(cm))? {
                if suite == Suite::All {
                    c.push("strict", l.verify_two_term());
                    c.round_trip("strict_round_trip", built(extract_crossed_module(&l))?.as_ref() == Some(cm));
                }
                if wants(suite, Suite::Lod) {
                    lod(&mut c, &l, opts)?;
                }
            } else if suite == Suite::Lod {
                c.push_result("crossed_module", cm.verify())?;
            }
        }
        DomainObject::Symplectic(s) => {
            if suite == Suite::Cocycle {
                return Err(not_applicable(suite, kind));
            }
            if wants(suite, Suite::Axioms) {
                c.push("symplectic", s.check());
            }
            let valid = s.check().passed();
            if valid && suite == Suite::All {
                c.push_result("pipeline", symplectic_pipeline_report(s))?;
            }
            if wants(suite, Suite::Lod) {
                match built(build_strict_from_symplectic(s))? {
                    Some(l) if valid => lod(&mut c, &l, opts)?,
                    _ if suite == Suite::Lod => c.push("symplectic", s.check()),
                    _ => {}
                }
            }
        }
        DomainObject::Quadruple(q) => {
            if wants(suite, Suite::Axioms) {
                c.push_result("quadruple", q.check())?;
            }
            if wants(suite, Suite::Cocycle) {
                c.push_result("theta_cocycle", is_cocycle(&q.algebra, &q.rep, &q.theta))?;
                delta_squared(&mut c, "delta_squared", &q.algebra, &q.rep, opts)?;
            }
            if suite == Suite::All || suite == Suite::Lod {
                match built(build_skeletal(q))? {
                    Some(l) => {
                        if suite == Suite::All {
                            c.push("skeletal", l.verify_two_term());
                            c.round_trip("skeletal_round_trip", built(extract_quadruple(&l))?.as_ref() == Some(q));
                        }
                        lod(&mut c, &l, opts)?;
                    }
                    None if suite == Suite::Lod => c.push_result("quadruple", q.check())?,
                    None => {}
                }
            }
        }
        DomainObject::PreLie(p) => {
            if suite != Suite::All && suite != Suite::Axioms {
                return Err(not_applicable(suite, kind));
            }
            c.push("pre_lie", p.verify());
            match p.commutator_algebra() {
                Ok(comm) => {
                    c.push("commutator_fundamental_identity", comm.check_fundamental_identity());
                    c.push_result("left_multiplication", comm.check_representation(&p.left_multiplication()))?;
                }
                Err(Error::PreconditionFailed { .. }) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    let pass = c.checks.iter().all(|x| x.pass);
    Ok(SuiteResult {
        schema: SCHEMA.to_string(),
        name: def.name.clone(),
        kind: kind.to_string(),
        suite,
        seed: opts.seed,
        trials: opts.trials,
        pass,
        checks: c.checks,
        elapsed: Some(started.elapsed()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::definition::parse_definition;

    const FIXTURE: &str = include_str!("../../../fixtures/example56_crossed_module.json");
    const PERTURBED: &str = include_str!("../../../fixtures/example56_perturbed.json");

    fn run(text: &str, suite: Suite) -> Result<SuiteResult, CliError> {
        let opts = SuiteOptions {
            suite,
            trials: 5,
            ..SuiteOptions::default()
        };
        run_suite(&parse_definition(text)?, &opts)
    }

    #[test]
    fn fixture_passes_every_suite_that_applies() {
        for suite in [Suite::All, Suite::Axioms, Suite::Lod] {
            let r = run(FIXTURE, suite).unwrap();
            assert!(r.pass, "{r}");
        }
        assert!(matches!(run(FIXTURE, Suite::Cocycle), Err(CliError::Shape(_))));
    }

    #[test]
    fn perturbed_fixture_names_the_broken_equation() {
        let r = run(PERTURBED, Suite::Axioms).unwrap();
        assert!(!r.pass);
        assert!(r.failed_conditions().contains(&"crossed_module/cmc2".to_string()));
        // The constructions need a valid crossed module, so `lod` reports
        // the crossed-module failure instead.
        let r = run(PERTURBED, Suite::Lod).unwrap();
        assert!(!r.pass);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn json_round_trips_and_is_deterministic() {
        let a = run(FIXTURE, Suite::All).unwrap();
        let b = run(FIXTURE, Suite::All).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(!a.to_json().contains("elapsed"));
        let mut back = SuiteResult::from_json(&a.to_json()).unwrap();
        back.elapsed = a.elapsed;
        assert_eq!(back, a);
    }

    #[test]
    fn tampered_reports_are_rejected() {
        let text = run(PERTURBED, Suite::Axioms).unwrap().to_json();
        let flipped = text.replacen("\"pass\": false", "\"pass\": true", 1);
        assert!(SuiteResult::from_json(&flipped).is_err());
        let other = text.replace(SCHEMA, "filippov-lab/0");
        assert!(matches!(SuiteResult::from_json(&other), Err(CliError::Shape(_))));
    }

    #[test]
    fn cocycle_suite_on_an_algebra() {
        let text = r#"{"kind": "three_lie", "name": "t", "basis": ["e1", "e2", "e3"],
                       "brackets": [{"args": ["e1", "e2", "e3"], "value": {"e1": "1"}}]}"#;
        let r = run(text, Suite::Cocycle).unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.checks.len(), 4);
        assert!(matches!(run(text, Suite::Lod), Err(CliError::Shape(_))));
    }
}
