//! The `construct` subcommand: one definition file in, another out.

use std::fmt;

use clap::ValueEnum;
use filippov_core::{
    build_skeletal, build_strict_from_crossed_module, build_strict_from_symplectic, extract_crossed_module,
    extract_quadruple, induced_pre_lie,
};

use crate::definition::{Definition, DomainObject};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    /// quadruple → two_term with d = 0
    Skeletal,
    /// crossed_module → two_term with l5 = 0
    StrictFromCrossed,
    /// two_term with l5 = 0 → crossed_module
    CrossedFromStrict,
    /// two_term with d = 0 → quadruple
    QuadrupleFromSkeletal,
    /// symplectic → pre_lie
    PreLieFromSymplectic,
    /// symplectic → two_term on g* → g
    StrictFromSymplectic,
}

impl Construction {
    pub fn input_kind(self) -> &'static str {
        match self {
            Construction::Skeletal => "quadruple",
            Construction::StrictFromCrossed => "crossed_module",
            Construction::CrossedFromStrict | Construction::QuadrupleFromSkeletal => "two_term",
            Construction::PreLieFromSymplectic | Construction::StrictFromSymplectic => "symplectic",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

/// Applies `how` to `def`. A valid input of the wrong kind is a shape error;
/// an input that fails the construction's precondition is rejected.
pub fn construct(how: Construction, def: &Definition) -> Result<Definition, CliError> {
    let wrong_kind = || {
        CliError::Shape(format!(
            "construction \"{how}\" takes a \"{}\" file, got \"{}\"",
            how.input_kind(),
            def.kind()
        ))
    };
    let object = match (how, &def.object) {
        (Construction::Skeletal, DomainObject::Quadruple(q)) => DomainObject::TwoTerm(build_skeletal(q)?),
        (Construction::StrictFromCrossed, DomainObject::CrossedModule(cm)) => {
            DomainObject::TwoTerm(build_strict_from_crossed_module(cm)?)
        }
        (Construction::CrossedFromStrict, DomainObject::TwoTerm(l)) => {
            DomainObject::CrossedModule(extract_crossed_module(l)?)
        }
        (Construction::QuadrupleFromSkeletal, DomainObject::TwoTerm(l)) => {
            DomainObject::Quadruple(extract_quadruple(l)?)
        }
        (Construction::PreLieFromSymplectic, DomainObject::Symplectic(s)) => {
            DomainObject::PreLie(induced_pre_lie(s)?)
        }
        (Construction::StrictFromSymplectic, DomainObject::Symplectic(s)) => {
            DomainObject::TwoTerm(build_strict_from_symplectic(s)?)
        }
        _ => return Err(wrong_kind()),
    };
    Ok(Definition::new(format!("{}:{how}", def.name), object))
}
