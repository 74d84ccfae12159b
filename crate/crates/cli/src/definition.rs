//! JSON definition files.
//!
//! Every file is one object with a `"kind"` and a `"name"`. Bases are label
//! lists; brackets and other multilinear maps are lists of entries
//! `{"args": [labels], "value": {label: "p/q"}}`; matrices are arrays of rows
//! of rational strings. Entries accumulate, so listing the same slot twice
//! adds the values, and an entry that repeats an argument inside a skew slot
//! contributes nothing.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use filippov_core::{
    action_blocks, bracket_blocks, cochain_blocks, l5_blocks, phi2_blocks, BlockTensor, Cochain, CrossedModule,
    Homomorphism, Matrix, Representation, Scalar, SkeletalQuadruple, SymplecticThreeLie, ThreeLie2Algebra,
    ThreeLieAlgebra, ThreePreLie, TwoHomomorphism, Vector,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const KINDS: [&str; 9] = [
    "three_lie",
    "representation",
    "two_term",
    "homomorphism",
    "two_homomorphism",
    "crossed_module",
    "symplectic",
    "quadruple",
    "pre_lie",
];

/// One multilinear-map entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub args: Vec<String>,
    pub value: BTreeMap<String, String>,
}

pub type Rows = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThreeLieFile {
    pub kind: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub kind: String,
    pub name: String,
    pub algebra: ThreeLieFile,
    pub space: Vec<String>,
    /// Entries `(x, y, v) ↦ ρ(x, y)v`.
    #[serde(default)]
    pub action: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoTermFile {
    pub kind: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<[usize; 2]>,
    pub basis0: Vec<String>,
    pub basis1: Vec<String>,
    /// `dim V0` rows by `dim V1` columns; omitted means zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Rows>,
    #[serde(default)]
    pub l3: Vec<Entry>,
    #[serde(default)]
    pub l5: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomomorphismFile {
    pub kind: String,
    pub name: String,
    pub source: TwoTermFile,
    pub target: TwoTermFile,
    pub phi0: Rows,
    pub phi1: Rows,
    #[serde(default)]
    pub phi2: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoHomomorphismFile {
    pub kind: String,
    pub name: String,
    pub source: HomomorphismFile,
    pub target: HomomorphismFile,
    /// `dim V1'` rows by `dim V0` columns.
    pub tau: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedModuleFile {
    pub kind: String,
    pub name: String,
    pub g: ThreeLieFile,
    pub h: ThreeLieFile,
    /// `dim h` rows by `dim g` columns.
    pub mu: Rows,
    /// Entries `(h1, h2, g) ↦ α(h1, h2)g`.
    #[serde(default)]
    pub alpha: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymplecticFile {
    pub kind: String,
    pub name: String,
    pub algebra: ThreeLieFile,
    /// Entry `(i, j)` is `ω(e_i, e_j)`.
    pub omega: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadrupleFile {
    pub kind: String,
    pub name: String,
    pub algebra: ThreeLieFile,
    pub space: Vec<String>,
    #[serde(default)]
    pub action: Vec<Entry>,
    /// Entries `(x1, y1, x2, y2, z) ↦ Θ(x1∧y1, x2∧y2, z)`.
    #[serde(default)]
    pub theta: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreLieFile {
    pub kind: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<Entry>,
}

/// A parsed file, before labels and rationals are resolved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
// Parsed files are short-lived, so boxing the larger variants buys nothing.
#[allow(clippy::large_enum_variant)]
pub enum DefinitionFile {
    ThreeLie(ThreeLieFile),
    Representation(RepresentationFile),
    TwoTerm(TwoTermFile),
    Homomorphism(HomomorphismFile),
    TwoHomomorphism(TwoHomomorphismFile),
    CrossedModule(CrossedModuleFile),
    Symplectic(SymplecticFile),
    Quadruple(QuadrupleFile),
    PreLie(PreLieFile),
}

/// The domain object a file describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainObject {
    ThreeLie(ThreeLieAlgebra),
    Representation {
        algebra: ThreeLieAlgebra,
        space_labels: Vec<String>,
        rep: Representation,
    },
    TwoTerm(ThreeLie2Algebra),
    Homomorphism(Homomorphism),
    TwoHomomorphism(TwoHomomorphism),
    CrossedModule(CrossedModule),
    Symplectic(SymplecticThreeLie),
    Quadruple(SkeletalQuadruple),
    PreLie(ThreePreLie),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub object: DomainObject,
}

fn position_error(e: serde_json::Error) -> CliError {
    CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses the JSON layer only.
pub fn parse_file(text: &str) -> Result<DefinitionFile, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(position_error)?;
    let kind = match value.get("kind") {
        Some(serde_json::Value::String(k)) => k.clone(),
        _ => {
            return Err(CliError::Parse {
                line: 1,
                column: 1,
                message: "expected an object with a string field \"kind\"".into(),
            })
        }
    };
    fn typed<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
        serde_json::from_str(text).map_err(position_error)
    }
    let file = match kind.as_str() {
        "three_lie" => DefinitionFile::ThreeLie(typed(text)?),
        "representation" => DefinitionFile::Representation(typed(text)?),
        "two_term" => DefinitionFile::TwoTerm(typed(text)?),
        "homomorphism" => DefinitionFile::Homomorphism(typed(text)?),
        "two_homomorphism" => DefinitionFile::TwoHomomorphism(typed(text)?),
        "crossed_module" => DefinitionFile::CrossedModule(typed(text)?),
        "symplectic" => DefinitionFile::Symplectic(typed(text)?),
        "quadruple" => DefinitionFile::Quadruple(typed(text)?),
        "pre_lie" => DefinitionFile::PreLie(typed(text)?),
        _ => return Err(CliError::UnknownKind(kind)),
    };
    Ok(file)
}

/// Parses a file and resolves it into its domain object.
pub fn parse_definition(text: &str) -> Result<Definition, CliError> {
    parse_file(text)?.resolve()
}

fn expect_kind(found: &str, expected: &str, at: &str) -> Result<(), CliError> {
    if found == expected {
        Ok(())
    } else {
        Err(CliError::Shape(format!("{at}: expected kind \"{expected}\", found \"{found}\"")))
    }
}

fn check_basis(labels: &[String], dim: Option<usize>, at: &str) -> Result<(), CliError> {
    let mut seen = HashSet::new();
    for l in labels {
        if l.is_empty() {
            return Err(CliError::Shape(format!("{at}: empty basis label")));
        }
        if !seen.insert(l.as_str()) {
            return Err(CliError::Shape(format!("{at}: duplicate basis label \"{l}\"")));
        }
    }
    match dim {
        Some(n) if n != labels.len() => Err(CliError::Shape(format!(
            "{at}: declared dimension {n} but {} basis labels",
            labels.len()
        ))),
        _ => Ok(()),
    }
}

fn index_of(labels: &[String], label: &str, at: &str) -> Result<usize, CliError> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| CliError::UnknownLabel {
            label: label.to_string(),
            at: at.to_string(),
        })
}

fn rational(text: &str, at: &str) -> Result<Scalar, CliError> {
    text.parse().map_err(|_| CliError::BadRational {
        literal: text.to_string(),
        at: at.to_string(),
    })
}

fn vector_of(value: &BTreeMap<String, String>, labels: &[String], at: &str) -> Result<Vector, CliError> {
    let mut v = vec![Scalar::zero(); labels.len()];
    for (label, c) in value {
        v[index_of(labels, label, at)?] += &rational(c, at)?;
    }
    Ok(v)
}

fn matrix_of(rows: &Rows, nrows: usize, ncols: usize, at: &str) -> Result<Matrix, CliError> {
    if rows.len() != nrows {
        return Err(CliError::Shape(format!("{at}: expected {nrows} rows, found {}", rows.len())));
    }
    let mut m = Matrix::zeros(nrows, ncols);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(CliError::Shape(format!(
                "{at}: row {} has {} entries, expected {ncols}",
                r + 1,
                row.len()
            )));
        }
        for (c, x) in row.iter().enumerate() {
            m.set(r, c, rational(x, &format!("{at}[{}][{}]", r + 1, c + 1))?);
        }
    }
    Ok(m)
}

/// Adds every entry into `tensor`; argument `k` resolves against `args[k]`.
fn fill(
    tensor: &mut BlockTensor,
    entries: &[Entry],
    args: &[&[String]],
    out: &[String],
    at: &str,
) -> Result<(), CliError> {
    for (n, e) in entries.iter().enumerate() {
        let here = format!("{at}[{n}]");
        if e.args.len() != args.len() {
            return Err(CliError::Shape(format!(
                "{here}: expected {} arguments, found {}",
                args.len(),
                e.args.len()
            )));
        }
        let idx = e
            .args
            .iter()
            .zip(args)
            .map(|(a, labels)| index_of(labels, a, &here))
            .collect::<Result<Vec<_>, _>>()?;
        let v = vector_of(&e.value, out, &here)?;
        for (coord, c) in v.iter().enumerate() {
            if !c.is_zero() {
                tensor.bump(&idx, coord, c)?;
            }
        }
    }
    Ok(())
}

fn algebra_of(f: &ThreeLieFile, at: &str) -> Result<ThreeLieAlgebra, CliError> {
    expect_kind(&f.kind, "three_lie", at)?;
    check_basis(&f.basis, f.dim, at)?;
    let n = f.basis.len();
    let mut t = BlockTensor::zeros(bracket_blocks(n), n);
    let b = f.basis.as_slice();
    fill(&mut t, &f.brackets, &[b, b, b], b, &format!("{at}.brackets"))?;
    Ok(ThreeLieAlgebra::from_tensor(f.basis.clone(), t)?)
}

fn action_of(
    entries: &[Entry],
    algebra: &[String],
    space: &[String],
    at: &str,
) -> Result<Representation, CliError> {
    let mut t = BlockTensor::zeros(action_blocks(algebra.len(), space.len()), space.len());
    fill(&mut t, entries, &[algebra, algebra, space], space, at)?;
    Ok(Representation::from_tensor(algebra.len(), space.len(), t)?)
}

fn two_term_of(f: &TwoTermFile, at: &str) -> Result<ThreeLie2Algebra, CliError> {
    expect_kind(&f.kind, "two_term", at)?;
    let (n0, n1) = (f.basis0.len(), f.basis1.len());
    check_basis(&f.basis0, f.dims.map(|d| d[0]), &format!("{at}.basis0"))?;
    check_basis(&f.basis1, f.dims.map(|d| d[1]), &format!("{at}.basis1"))?;
    if let Some(l) = f.basis0.iter().find(|l| f.basis1.contains(l)) {
        return Err(CliError::Shape(format!("{at}: label \"{l}\" is in both basis0 and basis1")));
    }
    let d = match &f.d {
        Some(rows) => matrix_of(rows, n0, n1, &format!("{at}.d"))?,
        None => Matrix::zeros(n0, n1),
    };
    let mut l3_000 = BlockTensor::zeros(bracket_blocks(n0), n0);
    let mut l3_001 = BlockTensor::zeros(action_blocks(n0, n1), n1);
    for (n, e) in f.l3.iter().enumerate() {
        let here = format!("{at}.l3[{n}]");
        if e.args.len() != 3 {
            return Err(CliError::Shape(format!("{here}: expected 3 arguments, found {}", e.args.len())));
        }
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for (pos, a) in e.args.iter().enumerate() {
            if let Some(i) = f.basis0.iter().position(|l| l == a) {
                even.push(i);
            } else if let Some(i) = f.basis1.iter().position(|l| l == a) {
                odd.push((pos, i));
            } else {
                return Err(CliError::UnknownLabel {
                    label: a.clone(),
                    at: here,
                });
            }
        }
        match odd.as_slice() {
            [] => {
                let v = vector_of(&e.value, &f.basis0, &here)?;
                for (coord, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    l3_000.bump(&even, coord, c)?;
                }
            }
            [(pos, h)] => {
                // Moving the degree-1 argument to the end is a cyclic shift
                // (even) from the front and a transposition from the middle.
                let sign = if *pos == 1 { -Scalar::one() } else { Scalar::one() };
                let v = vector_of(&e.value, &f.basis1, &here)?;
                let idx = [even[0], even[1], *h];
                for (coord, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    l3_001.bump(&idx, coord, &(&sign * c))?;
                }
            }
            _ => {
                if !vector_of(&e.value, &[f.basis0.clone(), f.basis1.clone()].concat(), &here)?
                    .iter()
                    .all(Scalar::is_zero)
                {
                    return Err(CliError::Shape(format!(
                        "{here}: l3 vanishes on two or more degree-1 arguments"
                    )));
                }
            }
        }
    }
    let mut l5 = BlockTensor::zeros(l5_blocks(n0), n1);
    let b0 = f.basis0.as_slice();
    fill(&mut l5, &f.l5, &[b0; 5], &f.basis1, &format!("{at}.l5"))?;
    Ok(ThreeLie2Algebra::new(f.basis0.clone(), f.basis1.clone(), d, l3_000, l3_001, l5)?)
}

fn homomorphism_of(f: &HomomorphismFile, at: &str) -> Result<Homomorphism, CliError> {
    expect_kind(&f.kind, "homomorphism", at)?;
    let s = two_term_of(&f.source, &format!("{at}.source"))?;
    let t = two_term_of(&f.target, &format!("{at}.target"))?;
    let phi0 = matrix_of(&f.phi0, t.dim0(), s.dim0(), &format!("{at}.phi0"))?;
    let phi1 = matrix_of(&f.phi1, t.dim1(), s.dim1(), &format!("{at}.phi1"))?;
    let mut phi2 = BlockTensor::zeros(phi2_blocks(s.dim0()), t.dim1());
    let b0 = s.labels0();
    fill(&mut phi2, &f.phi2, &[b0, b0, b0], t.labels1(), &format!("{at}.phi2"))?;
    Ok(Homomorphism::new(Arc::new(s), Arc::new(t), phi0, phi1, phi2)?)
}

impl DefinitionFile {
    pub fn kind(&self) -> &str {
        match self {
            DefinitionFile::ThreeLie(f) => &f.kind,
            DefinitionFile::Representation(f) => &f.kind,
            DefinitionFile::TwoTerm(f) => &f.kind,
            DefinitionFile::Homomorphism(f) => &f.kind,
            DefinitionFile::TwoHomomorphism(f) => &f.kind,
            DefinitionFile::CrossedModule(f) => &f.kind,
            DefinitionFile::Symplectic(f) => &f.kind,
            DefinitionFile::Quadruple(f) => &f.kind,
            DefinitionFile::PreLie(f) => &f.kind,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            DefinitionFile::ThreeLie(f) => &f.name,
            DefinitionFile::Representation(f) => &f.name,
            DefinitionFile::TwoTerm(f) => &f.name,
            DefinitionFile::Homomorphism(f) => &f.name,
            DefinitionFile::TwoHomomorphism(f) => &f.name,
            DefinitionFile::CrossedModule(f) => &f.name,
            DefinitionFile::Symplectic(f) => &f.name,
            DefinitionFile::Quadruple(f) => &f.name,
            DefinitionFile::PreLie(f) => &f.name,
        }
    }

    /// Resolves labels and rationals and builds the domain object.
    pub fn resolve(&self) -> Result<Definition, CliError> {
        let object = match self {
            DefinitionFile::ThreeLie(f) => DomainObject::ThreeLie(algebra_of(f, "file")?),
            DefinitionFile::Representation(f) => {
                let algebra = algebra_of(&f.algebra, "algebra")?;
                check_basis(&f.space, None, "space")?;
                let rep = action_of(&f.action, algebra.labels(), &f.space, "action")?;
                DomainObject::Representation {
                    algebra,
                    space_labels: f.space.clone(),
                    rep,
                }
            }
            DefinitionFile::TwoTerm(f) => DomainObject::TwoTerm(two_term_of(f, "file")?),
            DefinitionFile::Homomorphism(f) => DomainObject::Homomorphism(homomorphism_of(f, "file")?),
            DefinitionFile::TwoHomomorphism(f) => {
                let phi = homomorphism_of(&f.source, "source")?;
                let psi = homomorphism_of(&f.target, "target")?;
                let tau = matrix_of(&f.tau, phi.target().dim1(), phi.source().dim0(), "tau")?;
                DomainObject::TwoHomomorphism(TwoHomomorphism::new(Arc::new(phi), Arc::new(psi), tau)?)
            }
            DefinitionFile::CrossedModule(f) => {
                let g = algebra_of(&f.g, "g")?;
                let h = algebra_of(&f.h, "h")?;
                let mu = matrix_of(&f.mu, h.dim(), g.dim(), "mu")?;
                let alpha = action_of(&f.alpha, h.labels(), g.labels(), "alpha")?;
                DomainObject::CrossedModule(CrossedModule { g, h, mu, alpha })
            }
            DefinitionFile::Symplectic(f) => {
                let algebra = algebra_of(&f.algebra, "algebra")?;
                let n = algebra.dim();
                let omega = matrix_of(&f.omega, n, n, "omega")?;
                DomainObject::Symplectic(SymplecticThreeLie { algebra, omega })
            }
            DefinitionFile::Quadruple(f) => {
                let algebra = algebra_of(&f.algebra, "algebra")?;
                check_basis(&f.space, None, "space")?;
                let rep = action_of(&f.action, algebra.labels(), &f.space, "action")?;
                let (n, m) = (algebra.dim(), f.space.len());
                let mut t = BlockTensor::zeros(cochain_blocks(3, n), m);
                let b = algebra.labels();
                fill(&mut t, &f.theta, &[b; 5], &f.space, "theta")?;
                DomainObject::Quadruple(SkeletalQuadruple {
                    theta: Cochain::from_tensor(3, n, m, t)?,
                    algebra,
                    space_labels: f.space.clone(),
                    rep,
                })
            }
            DefinitionFile::PreLie(f) => {
                check_basis(&f.basis, f.dim, "file")?;
                let n = f.basis.len();
                let mut t = BlockTensor::zeros(action_blocks(n, n), n);
                let b = f.basis.as_slice();
                fill(&mut t, &f.brackets, &[b, b, b], b, "brackets")?;
                DomainObject::PreLie(ThreePreLie::from_tensor(f.basis.clone(), t)?)
            }
        };
        Ok(Definition {
            name: self.name().to_string(),
            object,
        })
    }
}

// Writing files back out.

fn value_map(v: &[Scalar], labels: &[String]) -> BTreeMap<String, String> {
    v.iter()
        .zip(labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| (l.clone(), c.to_string()))
        .collect()
}

fn entries_of(t: &BlockTensor, args: &[&[String]], out: &[String]) -> Vec<Entry> {
    t.nonzero_entries()
        .into_iter()
        .map(|(idx, v)| Entry {
            args: idx.iter().zip(args).map(|(&i, labels)| labels[i].clone()).collect(),
            value: value_map(&v, out),
        })
        .collect()
}

fn rows_of(m: &Matrix) -> Rows {
    m.to_rows()
        .into_iter()
        .map(|row| row.iter().map(Scalar::to_string).collect())
        .collect()
}

fn algebra_file(a: &ThreeLieAlgebra, name: String) -> ThreeLieFile {
    let b = a.labels();
    ThreeLieFile {
        kind: "three_lie".into(),
        name,
        dim: Some(b.len()),
        basis: b.to_vec(),
        brackets: entries_of(a.bracket_tensor(), &[b, b, b], b),
    }
}

/// Degree-1 labels made disjoint from the degree-0 ones by priming.
fn disjoint_labels(labels0: &[String], labels1: &[String]) -> Vec<String> {
    labels1
        .iter()
        .map(|l| {
            let mut l = l.clone();
            while labels0.contains(&l) {
                l.push('\'');
            }
            l
        })
        .collect()
}

fn two_term_file(l: &ThreeLie2Algebra, name: String) -> TwoTermFile {
    let b0 = l.labels0();
    let b1 = disjoint_labels(b0, l.labels1());
    let mut l3 = entries_of(l.l3_000(), &[b0, b0, b0], b0);
    l3.extend(entries_of(l.l3_001(), &[b0, b0, &b1], &b1));
    TwoTermFile {
        kind: "two_term".into(),
        name,
        dims: Some([b0.len(), b1.len()]),
        basis0: b0.to_vec(),
        l5: entries_of(l.l5(), &[b0; 5], &b1),
        basis1: b1,
        d: Some(rows_of(l.d())),
        l3,
    }
}

fn homomorphism_file(h: &Homomorphism, name: &str) -> HomomorphismFile {
    let source = two_term_file(h.source(), format!("{name}/source"));
    let target = two_term_file(h.target(), format!("{name}/target"));
    let b0 = source.basis0.as_slice();
    HomomorphismFile {
        kind: "homomorphism".into(),
        name: name.to_string(),
        phi0: rows_of(h.phi0()),
        phi1: rows_of(h.phi1()),
        phi2: entries_of(h.phi2(), &[b0, b0, b0], &target.basis1),
        source,
        target,
    }
}

impl Definition {
    pub fn new(name: impl Into<String>, object: DomainObject) -> Self {
        Definition {
            name: name.into(),
            object,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.object {
            DomainObject::ThreeLie(_) => "three_lie",
            DomainObject::Representation { .. } => "representation",
            DomainObject::TwoTerm(_) => "two_term",
            DomainObject::Homomorphism(_) => "homomorphism",
            DomainObject::TwoHomomorphism(_) => "two_homomorphism",
            DomainObject::CrossedModule(_) => "crossed_module",
            DomainObject::Symplectic(_) => "symplectic",
            DomainObject::Quadruple(_) => "quadruple",
            DomainObject::PreLie(_) => "pre_lie",
        }
    }

    pub fn to_file(&self) -> DefinitionFile {
        let name = self.name.clone();
        match &self.object {
            DomainObject::ThreeLie(a) => DefinitionFile::ThreeLie(algebra_file(a, name)),
            DomainObject::Representation {
                algebra,
                space_labels,
                rep,
            } => {
                let b = algebra.labels();
                DefinitionFile::Representation(RepresentationFile {
                    kind: "representation".into(),
                    algebra: algebra_file(algebra, format!("{name}/algebra")),
                    name,
                    space: space_labels.clone(),
                    action: entries_of(rep.tensor(), &[b, b, space_labels], space_labels),
                })
            }
            DomainObject::TwoTerm(l) => DefinitionFile::TwoTerm(two_term_file(l, name)),
            DomainObject::Homomorphism(h) => DefinitionFile::Homomorphism(homomorphism_file(h, &name)),
            DomainObject::TwoHomomorphism(t) => DefinitionFile::TwoHomomorphism(TwoHomomorphismFile {
                kind: "two_homomorphism".into(),
                source: homomorphism_file(t.source(), &format!("{name}/source")),
                target: homomorphism_file(t.target(), &format!("{name}/target")),
                tau: rows_of(t.tau()),
                name,
            }),
            DomainObject::CrossedModule(cm) => {
                let (bg, bh) = (cm.g.labels(), cm.h.labels());
                DefinitionFile::CrossedModule(CrossedModuleFile {
                    kind: "crossed_module".into(),
                    g: algebra_file(&cm.g, format!("{name}/g")),
                    h: algebra_file(&cm.h, format!("{name}/h")),
                    mu: rows_of(&cm.mu),
                    alpha: entries_of(cm.alpha.tensor(), &[bh, bh, bg], bg),
                    name,
                })
            }
            DomainObject::Symplectic(s) => DefinitionFile::Symplectic(SymplecticFile {
                kind: "symplectic".into(),
                algebra: algebra_file(&s.algebra, format!("{name}/algebra")),
                omega: rows_of(&s.omega),
                name,
            }),
            DomainObject::Quadruple(q) => {
                let (b, v) = (q.algebra.labels(), q.space_labels.as_slice());
                DefinitionFile::Quadruple(QuadrupleFile {
                    kind: "quadruple".into(),
                    algebra: algebra_file(&q.algebra, format!("{name}/algebra")),
                    space: v.to_vec(),
                    action: entries_of(q.rep.tensor(), &[b, b, v], v),
                    theta: entries_of(q.theta.tensor(), &[b; 5], v),
                    name,
                })
            }
            DomainObject::PreLie(p) => {
                let b = p.labels();
                DefinitionFile::PreLie(PreLieFile {
                    kind: "pre_lie".into(),
                    dim: Some(b.len()),
                    basis: b.to_vec(),
                    brackets: entries_of(p.tensor(), &[b, b, b], b),
                    name,
                })
            }
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.to_file()).expect("definition files serialize");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use filippov_core::corpus::{
        abelian_symplectic_plane, example_crossed_module, heisenberg4, random_skeletal_quadruple, two_term_corpus,
    };
    use filippov_core::{identity_homomorphism, induced_pre_lie, TwoHomomorphism};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const FIXTURE: &str = include_str!("../../../fixtures/example56_crossed_module.json");

    fn three_lie(brackets: &str) -> String {
        format!(r#"{{"kind": "three_lie", "name": "t", "basis": ["e1", "e2", "e3"], "brackets": [{brackets}]}}"#)
    }

    #[test]
    fn fixture_is_the_standard_crossed_module() {
        let def = parse_definition(FIXTURE).unwrap();
        assert_eq!(def.name, "example56");
        assert_eq!(def.object, DomainObject::CrossedModule(example_crossed_module()));
    }

    #[test]
    fn repeated_arguments_contribute_zero() {
        let text = three_lie(r#"{"args": ["e1", "e1", "e3"], "value": {"e2": "5"}}"#);
        let DomainObject::ThreeLie(a) = parse_definition(&text).unwrap().object else {
            panic!("wrong kind")
        };
        assert!(a.is_abelian());
    }

    #[test]
    fn entries_respect_skew_order_and_accumulate() {
        let text = three_lie(
            r#"{"args": ["e2", "e1", "e3"], "value": {"e1": "1/2"}},
               {"args": ["e3", "e1", "e2"], "value": {"e1": "-3/2"}}"#,
        );
        let DomainObject::ThreeLie(a) = parse_definition(&text).unwrap().object else {
            panic!("wrong kind")
        };
        assert_eq!(a.bracket(0, 1, 2).unwrap()[0], Scalar::from_int(-2));
    }

    #[test]
    fn zero_denominator_is_a_bad_rational() {
        let text = three_lie(r#"{"args": ["e1", "e2", "e3"], "value": {"e1": "1/0"}}"#);
        assert!(matches!(parse_definition(&text), Err(CliError::BadRational { literal, .. }) if literal == "1/0"));
    }

    #[test]
    fn unknown_fields_are_rejected_with_a_position() {
        let text = "{\"kind\": \"three_lie\", \"name\": \"t\",\n \"basis\": [], \"colour\": 1}";
        match parse_definition(text) {
            Err(CliError::Parse { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("colour"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        assert!(matches!(
            parse_definition("{\"kind\": \"three_lie\",\n\n  oops}"),
            Err(CliError::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn unknown_kind_and_label() {
        assert!(matches!(
            parse_definition(r#"{"kind": "lie_bialgebra", "name": "x"}"#),
            Err(CliError::UnknownKind(k)) if k == "lie_bialgebra"
        ));
        let text = three_lie(r#"{"args": ["e1", "e2", "e4"], "value": {}}"#);
        assert!(matches!(parse_definition(&text), Err(CliError::UnknownLabel { label, .. }) if label == "e4"));
    }

    #[test]
    fn nested_kind_must_match() {
        let text = FIXTURE.replacen("\"three_lie\"", "\"pre_lie\"", 1);
        assert!(matches!(parse_definition(&text), Err(CliError::Shape(_))));
    }

    #[test]
    fn degree_one_argument_may_sit_anywhere() {
        let text = |args: &str, c: &str| {
            format!(
                r#"{{"kind": "two_term", "name": "t", "basis0": ["x", "y"], "basis1": ["f"],
                    "l3": [{{"args": {args}, "value": {{"f": "{c}"}}}}]}}"#
            )
        };
        let parsed = |args: &str, c: &str| parse_definition(&text(args, c)).unwrap().object;
        let last = parsed(r#"["x", "y", "f"]"#, "1");
        assert_eq!(parsed(r#"["f", "x", "y"]"#, "1"), last);
        assert_eq!(parsed(r#"["x", "f", "y"]"#, "-1"), last);
        let bad = text(r#"["x", "f", "f"]"#, "1");
        assert!(matches!(parse_definition(&bad), Err(CliError::Shape(_))));
    }

    fn round_trips(def: Definition) {
        let text = def.to_json();
        let back = parse_definition(&text).unwrap();
        assert_eq!(back, def, "{text}");
    }

    #[test]
    fn every_kind_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cm = example_crossed_module();
        let a = heisenberg4();
        round_trips(Definition::new("a", DomainObject::ThreeLie(a.clone())));
        round_trips(Definition::new(
            "r",
            DomainObject::Representation {
                algebra: cm.h.clone(),
                space_labels: cm.g.labels().to_vec(),
                rep: cm.alpha.clone(),
            },
        ));
        round_trips(Definition::new("cm", DomainObject::CrossedModule(cm)));
        let s = abelian_symplectic_plane();
        round_trips(Definition::new("p", DomainObject::PreLie(induced_pre_lie(&s).unwrap())));
        round_trips(Definition::new("s", DomainObject::Symplectic(s)));
        let rep = Representation::adjoint(&a);
        let q = random_skeletal_quadruple(&a, rep, vec!["v1".into(), "v2".into(), "v3".into(), "v4".into()], &mut rng)
            .unwrap();
        round_trips(Definition::new("q", DomainObject::Quadruple(q)));
        for (name, l) in two_term_corpus(&mut rng) {
            // Overlapping labels are renamed on output, so only disjoint ones
            // come back identical.
            if l.labels0().iter().all(|x| !l.labels1().contains(x)) {
                round_trips(Definition::new(name, DomainObject::TwoTerm(l.clone())));
                let id = Arc::new(identity_homomorphism(Arc::new(l)));
                round_trips(Definition::new("id", DomainObject::Homomorphism((*id).clone())));
                round_trips(Definition::new("tau", DomainObject::TwoHomomorphism(TwoHomomorphism::identity(id))));
            }
        }
    }

    #[test]
    fn overlapping_labels_are_primed() {
        assert_eq!(
            disjoint_labels(&["e1".into(), "e1'".into()], &["e1".into(), "e2".into()]),
            vec!["e1''".to_string(), "e2".to_string()]
        );
    }
}
