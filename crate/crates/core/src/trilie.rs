//! 3-Lie algebras, fundamental objects and representations.

use crate::error::{Error, Result};
use crate::exactlin::skew::{combinations, comb_rank, tuples};
use crate::exactlin::{vector, Block, BlockTensor, Matrix, Scalar, Vector};
use crate::report::VerificationReport;

/// Default basis labels `{prefix}1, …, {prefix}n`.
pub fn numbered_labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn labelled(labels: &[String], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| labels[i].clone()).collect()
}

/// A finite-dimensional vector space with a totally skew trilinear bracket.
/// Only increasing index triples are stored; the bracket is well formed by
/// construction but need not satisfy the fundamental identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThreeLieAlgebra {
    labels: Vec<String>,
    bracket: BlockTensor,
}

pub fn bracket_blocks(n: usize) -> Vec<Block> {
    vec![Block::Skew { dim: n, arity: 3 }]
}

impl ThreeLieAlgebra {
    /// The abelian algebra on the given basis labels.
    pub fn abelian(labels: Vec<String>) -> Self {
        let n = labels.len();
        ThreeLieAlgebra {
            labels,
            bracket: BlockTensor::zeros(bracket_blocks(n), n),
        }
    }

    pub fn from_tensor(labels: Vec<String>, bracket: BlockTensor) -> Result<Self> {
        let n = labels.len();
        if bracket.blocks() != bracket_blocks(n).as_slice() || bracket.out_dim() != n {
            return Err(Error::dims("bracket tensor", n, bracket.out_dim()));
        }
        Ok(ThreeLieAlgebra { labels, bracket })
    }

    /// Builds an algebra from `(i, j, k) ↦ [e_i, e_j, e_k]` entries.
    pub fn from_brackets(labels: Vec<String>, entries: &[([usize; 3], Vector)]) -> Result<Self> {
        let mut a = ThreeLieAlgebra::abelian(labels);
        for (idx, v) in entries {
            a.set_bracket(*idx, v)?;
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn bracket_tensor(&self) -> &BlockTensor {
        &self.bracket
    }

    pub fn set_bracket(&mut self, idx: [usize; 3], value: &[Scalar]) -> Result<()> {
        self.bracket.set(&idx, value)
    }

    /// `[e_i, e_j, e_k]` for indices in any order.
    pub fn bracket(&self, i: usize, j: usize, k: usize) -> Result<Vector> {
        self.bracket.value(&[i, j, k])
    }

    /// `[a, b, c]` for coordinate vectors.
    pub fn bracket_of(&self, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Result<Vector> {
        self.bracket.apply(&[a, b, c])
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    pub fn unit(&self, i: usize) -> Vector {
        vector::unit(self.dim(), i)
    }

    /// Checks the fundamental identity on every tuple with `x1 < x2` and
    /// `x3 < x4 < x5`; skew-symmetry of both sides covers the rest.
    pub fn check_fundamental_identity(&self) -> VerificationReport {
        let n = self.dim();
        let mut report = VerificationReport::new();
        report.touch("fundamental_identity");
        let e = |i: usize| self.unit(i);
        for x in combinations(n, 2) {
            for y in combinations(n, 3) {
                let (x1, x2, x3, x4, x5) = (e(x[0]), e(x[1]), e(y[0]), e(y[1]), e(y[2]));
                let lhs = self.br(&x1, &x2, &self.br(&x3, &x4, &x5));
                let mut rhs = self.br(&self.br(&x1, &x2, &x3), &x4, &x5);
                rhs = vector::add(&rhs, &self.br(&x3, &self.br(&x1, &x2, &x4), &x5));
                rhs = vector::add(&rhs, &self.br(&x3, &x4, &self.br(&x1, &x2, &x5)));
                report.compare(
                    "fundamental_identity",
                    || labelled(&self.labels, &[x[0], x[1], y[0], y[1], y[2]]),
                    &lhs,
                    &rhs,
                );
            }
        }
        report
    }

    fn br(&self, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Vector {
        self.bracket_of(a, b, c).expect("vectors sized to the algebra")
    }

    /// Matrix of `z ↦ [e_i, e_j, z]`.
    pub fn ad(&self, i: usize, j: usize) -> Result<Matrix> {
        let n = self.dim();
        for index in [i, j] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, dim: n });
            }
        }
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            let col = self.bracket(i, j, k)?;
            for (r, v) in col.into_iter().enumerate() {
                m.set(r, k, v);
            }
        }
        Ok(m)
    }

    /// Checks `D[a,b,c] = [Da,b,c] + [a,Db,c] + [a,b,Dc]` on increasing
    /// basis triples, recording failures under `condition`.
    pub fn check_derivation(
        &self,
        d: &Matrix,
        condition: &str,
        context: &[String],
        report: &mut VerificationReport,
    ) -> Result<()> {
        let n = self.dim();
        if d.rows() != n || d.cols() != n {
            return Err(Error::dims("derivation matrix", n, d.rows()));
        }
        report.touch(condition);
        for t in combinations(n, 3) {
            let (a, b, c) = (self.unit(t[0]), self.unit(t[1]), self.unit(t[2]));
            let lhs = d.mul_vec(&self.bracket(t[0], t[1], t[2])?);
            let mut rhs = self.bracket_of(&d.column(t[0]), &b, &c)?;
            rhs = vector::add(&rhs, &self.bracket_of(&a, &d.column(t[1]), &c)?);
            rhs = vector::add(&rhs, &self.bracket_of(&a, &b, &d.column(t[2]))?);
            report.compare(
                condition,
                || {
                    let mut inputs = context.to_vec();
                    inputs.extend(labelled(&self.labels, &t));
                    inputs
                },
                &lhs,
                &rhs,
            );
        }
        Ok(())
    }

    /// `[X, Y]_F = [x1, x2, y1] ∧ y2 + y1 ∧ [x1, x2, y2]`, extended bilinearly.
    pub fn fundamental_bracket(
        &self,
        x: &FundamentalElement,
        y: &FundamentalElement,
    ) -> Result<FundamentalElement> {
        let n = self.dim();
        if x.dim() != n || y.dim() != n {
            return Err(Error::dims("fundamental element", n, x.dim().max(y.dim())));
        }
        let mut out = FundamentalElement::zero(n);
        for ((x1, x2), cx) in x.terms() {
            for ((y1, y2), cy) in y.terms() {
                let c = &cx * &cy;
                let first = self.bracket(x1, x2, y1)?;
                out.add_wedge(&c, &first, &self.unit(y2));
                let second = self.bracket(x1, x2, y2)?;
                out.add_wedge(&c, &self.unit(y1), &second);
            }
        }
        Ok(out)
    }

    /// Left Leibniz identity `[X,[Y,Z]] = [[X,Y],Z] + [Y,[X,Z]]` for the
    /// fundamental bracket on all basis wedge triples.
    pub fn check_leibniz_fundamental(&self) -> Result<VerificationReport> {
        let fi = self.check_fundamental_identity();
        if !fi.passed() {
            return Err(Error::precondition("bracket fails the fundamental identity", fi));
        }
        let n = self.dim();
        let wedges: Vec<(Vec<usize>, FundamentalElement)> = combinations(n, 2)
            .map(|p| {
                let w = FundamentalElement::wedge(n, p[0], p[1]);
                (p, w)
            })
            .collect();
        let mut report = VerificationReport::new();
        report.touch("leibniz");
        for (px, x) in &wedges {
            for (py, y) in &wedges {
                let xy = self.fundamental_bracket(x, y)?;
                for (pz, z) in &wedges {
                    let lhs = self.fundamental_bracket(x, &self.fundamental_bracket(y, z)?)?;
                    let rhs = self
                        .fundamental_bracket(&xy, z)?
                        .add(&self.fundamental_bracket(y, &self.fundamental_bracket(x, z)?)?);
                    report.record("leibniz", lhs == rhs, || {
                        (
                            [px, py, pz]
                                .iter()
                                .map(|p| format!("{}∧{}", self.labels[p[0]], self.labels[p[1]]))
                                .collect(),
                            lhs.render(&self.labels),
                            rhs.render(&self.labels),
                        )
                    });
                }
            }
        }
        Ok(report)
    }

    /// Verifies the two defining conditions of a representation on all
    /// basis wedge pairs and on tuples `x, y1 < y2 < y3`.
    pub fn check_representation(&self, rep: &Representation) -> Result<VerificationReport> {
        let n = self.dim();
        if rep.algebra_dim() != n {
            return Err(Error::dims("representation algebra", n, rep.algebra_dim()));
        }
        let pairs: Vec<Vec<usize>> = combinations(n, 2).collect();
        let mats: Vec<Matrix> = pairs
            .iter()
            .map(|p| rep.matrix(p[0], p[1]))
            .collect::<Result<_>>()?;
        let mut report = VerificationReport::new();
        report.touch("rep_commutator");
        report.touch("rep_bracket");
        for (a, pa) in pairs.iter().enumerate() {
            for (b, pb) in pairs.iter().enumerate() {
                let lhs = mats[a].commutator(&mats[b]);
                let xy = self.fundamental_bracket(
                    &FundamentalElement::wedge(n, pa[0], pa[1]),
                    &FundamentalElement::wedge(n, pb[0], pb[1]),
                )?;
                let rhs = rep.of_element(&xy)?;
                report.record("rep_commutator", lhs == rhs, || {
                    (
                        labelled(&self.labels, &[pa[0], pa[1], pb[0], pb[1]]),
                        format!("{lhs:?}"),
                        format!("{rhs:?}"),
                    )
                });
            }
        }
        for x in 0..n {
            for y in combinations(n, 3) {
                let inner = self.bracket(y[0], y[1], y[2])?;
                let mut lhs = Matrix::zeros(rep.space_dim(), rep.space_dim());
                for (m, c) in inner.iter().enumerate() {
                    if !c.is_zero() {
                        lhs = &lhs + &rep.matrix(x, m)?.scale(c);
                    }
                }
                let term = |a: usize, b: usize, c: usize| -> Result<Matrix> {
                    rep.matrix(a, b)?.checked_mul(&rep.matrix(x, c)?)
                };
                let rhs = &(&term(y[1], y[2], y[0])? - &term(y[0], y[2], y[1])?)
                    + &term(y[0], y[1], y[2])?;
                report.record("rep_bracket", lhs == rhs, || {
                    (
                        labelled(&self.labels, &[x, y[0], y[1], y[2]]),
                        format!("{lhs:?}"),
                        format!("{rhs:?}"),
                    )
                });
            }
        }
        Ok(report)
    }

    /// `ad_{(e_i, e_j)}` is a derivation for every pair `i < j`.
    pub fn check_ad_derivations(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        report.touch("ad_derivation");
        for p in combinations(self.dim(), 2) {
            let ad = self.ad(p[0], p[1]).expect("indices in range");
            self.check_derivation(&ad, "ad_derivation", &labelled(&self.labels, &p), &mut report)
                .expect("square matrix of the algebra's size");
        }
        report
    }

    /// Index of a label, if present.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// An element of `Λ²g`, stored on increasing index pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FundamentalElement {
    dim: usize,
    coeffs: Vec<Scalar>,
}

impl FundamentalElement {
    pub fn zero(dim: usize) -> Self {
        FundamentalElement {
            dim,
            coeffs: vector::zeros(dim * dim.saturating_sub(1) / 2),
        }
    }

    /// `e_i ∧ e_j`; zero when `i == j`.
    pub fn wedge(dim: usize, i: usize, j: usize) -> Self {
        let mut w = FundamentalElement::zero(dim);
        w.add_basis_wedge(&Scalar::one(), i, j);
        w
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn add_basis_wedge(&mut self, c: &Scalar, i: usize, j: usize) {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs[comb_rank(&[i, j])] += c,
            std::cmp::Ordering::Greater => self.coeffs[comb_rank(&[j, i])] -= c,
            std::cmp::Ordering::Equal => {}
        }
    }

    /// `self += c · (a ∧ b)` for coordinate vectors `a`, `b`.
    pub fn add_wedge(&mut self, c: &Scalar, a: &[Scalar], b: &[Scalar]) {
        for (i, ai) in a.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                self.add_basis_wedge(&(c * ai * bj), i, j);
            }
        }
    }

    /// Coefficient of `e_i ∧ e_j` (antisymmetric in `i`, `j`).
    pub fn coefficient(&self, i: usize, j: usize) -> Scalar {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs[comb_rank(&[i, j])].clone(),
            std::cmp::Ordering::Greater => -&self.coeffs[comb_rank(&[j, i])],
            std::cmp::Ordering::Equal => Scalar::zero(),
        }
    }

    /// Nonzero terms as `((i, j), coefficient)` with `i < j`.
    pub fn terms(&self) -> Vec<((usize, usize), Scalar)> {
        combinations(self.dim, 2)
            .filter_map(|p| {
                let c = &self.coeffs[comb_rank(&p)];
                (!c.is_zero()).then(|| ((p[0], p[1]), c.clone()))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.coeffs)
    }

    pub fn add(&self, other: &FundamentalElement) -> FundamentalElement {
        FundamentalElement {
            dim: self.dim,
            coeffs: vector::add(&self.coeffs, &other.coeffs),
        }
    }

    pub fn scale(&self, c: &Scalar) -> FundamentalElement {
        FundamentalElement {
            dim: self.dim,
            coeffs: vector::scale(c, &self.coeffs),
        }
    }

    pub fn render(&self, labels: &[String]) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".into();
        }
        terms
            .iter()
            .map(|((i, j), c)| format!("{c}·{}∧{}", labels[*i], labels[*j]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A skew family of operators `ρ(e_i, e_j)` on a coefficient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    algebra_dim: usize,
    space_dim: usize,
    /// `ρ(e_i, e_j) v_a` at `[i, j, a]`.
    action: BlockTensor,
}

pub fn action_blocks(n: usize, m: usize) -> Vec<Block> {
    vec![Block::Skew { dim: n, arity: 2 }, Block::Free { dim: m }]
}

impl Representation {
    pub fn zero(algebra_dim: usize, space_dim: usize) -> Self {
        Representation {
            algebra_dim,
            space_dim,
            action: BlockTensor::zeros(action_blocks(algebra_dim, space_dim), space_dim),
        }
    }

    pub fn from_tensor(algebra_dim: usize, space_dim: usize, action: BlockTensor) -> Result<Self> {
        if action.blocks() != action_blocks(algebra_dim, space_dim).as_slice()
            || action.out_dim() != space_dim
        {
            return Err(Error::dims("representation tensor", space_dim, action.out_dim()));
        }
        Ok(Representation {
            algebra_dim,
            space_dim,
            action,
        })
    }

    /// The adjoint representation `ρ(x, y) = ad_{(x, y)}`.
    pub fn adjoint(a: &ThreeLieAlgebra) -> Self {
        let n = a.dim();
        let action = BlockTensor::from_fn(action_blocks(n, n), n, |k| a.bracket(k[0], k[1], k[2]))
            .expect("bracket values have the algebra's dimension");
        Representation {
            algebra_dim: n,
            space_dim: n,
            action,
        }
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn tensor(&self) -> &BlockTensor {
        &self.action
    }

    /// Sets `ρ(e_i, e_j)`; `ρ(e_j, e_i)` becomes its negative.
    pub fn set_matrix(&mut self, i: usize, j: usize, m: &Matrix) -> Result<()> {
        if m.rows() != self.space_dim || m.cols() != self.space_dim {
            return Err(Error::dims("representation matrix", self.space_dim, m.rows()));
        }
        for a in 0..self.space_dim {
            self.action.set(&[i, j, a], &m.column(a))?;
        }
        Ok(())
    }

    pub fn matrix(&self, i: usize, j: usize) -> Result<Matrix> {
        let m = self.space_dim;
        let mut out = Matrix::zeros(m, m);
        for a in 0..m {
            for (r, v) in self.action.value(&[i, j, a])?.into_iter().enumerate() {
                out.set(r, a, v);
            }
        }
        Ok(out)
    }

    /// `ρ(e_i, e_j) v`.
    pub fn act(&self, i: usize, j: usize, v: &[Scalar]) -> Result<Vector> {
        let mut out = vector::zeros(self.space_dim);
        for (a, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            self.action.accumulate(&[i, j, a], c, &mut out)?;
        }
        Ok(out)
    }

    /// `ρ(x, y) v` for coordinate vectors.
    pub fn act_on(&self, x: &[Scalar], y: &[Scalar], v: &[Scalar]) -> Result<Vector> {
        self.action.apply(&[x, y, v])
    }

    /// `ρ(X)` for a fundamental element `X`.
    pub fn of_element(&self, x: &FundamentalElement) -> Result<Matrix> {
        let mut out = Matrix::zeros(self.space_dim, self.space_dim);
        for ((i, j), c) in x.terms() {
            out = &out + &self.matrix(i, j)?.scale(&c);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.action.is_zero()
    }
}

/// Every basis tuple of length `k` over `0..n`, for exhaustive property tests.
pub fn all_tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    tuples(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::skew::skew_canon;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    /// `ℝ³` with `[e1, e2, e3] = e1`.
    fn example_algebra() -> ThreeLieAlgebra {
        ThreeLieAlgebra::from_brackets(numbered_labels("e", 3), &[([0, 1, 2], vec![s(1), s(0), s(0)])])
            .unwrap()
    }

    #[test]
    fn single_bracket_algebra_passes() {
        assert!(example_algebra().check_fundamental_identity().passed());
    }

    #[test]
    fn abelian_algebra_passes() {
        let a = ThreeLieAlgebra::abelian(numbered_labels("e", 4));
        assert!(a.check_fundamental_identity().passed());
        assert!(a.ad(1, 2).unwrap().is_zero());
    }

    /// Direct expansion over all 5-tuples, independent of the canonical
    /// enumeration used by the checker.
    fn identity_holds_everywhere(a: &ThreeLieAlgebra) -> bool {
        let n = a.dim();
        let e = |i| a.unit(i);
        tuples(n, 5).all(|t| {
            let b = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| a.bracket_of(x, y, z).unwrap();
            let (x1, x2, x3, x4, x5) = (e(t[0]), e(t[1]), e(t[2]), e(t[3]), e(t[4]));
            let lhs = b(&x1, &x2, &b(&x3, &x4, &x5));
            let rhs = vector::add(
                &vector::add(&b(&b(&x1, &x2, &x3), &x4, &x5), &b(&x3, &b(&x1, &x2, &x4), &x5)),
                &b(&x3, &x4, &b(&x1, &x2, &x5)),
            );
            lhs == rhs
        })
    }

    #[test]
    fn two_bracket_algebra_agrees_with_full_expansion() {
        let a = ThreeLieAlgebra::from_brackets(
            numbered_labels("e", 4),
            &[
                ([0, 1, 2], vec![s(1), s(0), s(0), s(0)]),
                ([0, 1, 3], vec![s(0), s(0), s(0), s(1)]),
            ],
        )
        .unwrap();
        assert_eq!(a.check_fundamental_identity().passed(), identity_holds_everywhere(&a));
    }

    #[test]
    fn ad_of_example() {
        let a = example_algebra();
        let ad = a.ad(1, 2).unwrap();
        assert_eq!(ad, Matrix::from_ints(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]));
        assert!(a.ad(0, 0).unwrap().is_zero());
    }

    #[test]
    fn fundamental_bracket_examples() {
        let a = example_algebra();
        let w = |i, j| FundamentalElement::wedge(3, i, j);
        let xy = a.fundamental_bracket(&w(0, 1), &w(1, 2)).unwrap();
        assert_eq!(xy, w(0, 1).scale(&s(-1)));
        let yx = a.fundamental_bracket(&w(1, 2), &w(0, 1)).unwrap();
        assert_eq!(yx, w(0, 1));
        let ab = ThreeLieAlgebra::abelian(numbered_labels("e", 3));
        assert!(ab.fundamental_bracket(&w(0, 1), &w(0, 1)).unwrap().is_zero());
    }

    #[test]
    fn leibniz_holds_for_example_and_is_gated() {
        assert!(example_algebra().check_leibniz_fundamental().unwrap().passed());
        // [e1,e2,e3] = e4, [e1,e2,e4] = e3 fails the fundamental identity.
        let bad = ThreeLieAlgebra::from_brackets(
            numbered_labels("e", 4),
            &[
                ([0, 1, 2], vec![s(0), s(0), s(0), s(1)]),
                ([0, 1, 3], vec![s(0), s(0), s(1), s(0)]),
                ([0, 2, 3], vec![s(1), s(0), s(0), s(0)]),
            ],
        )
        .unwrap();
        assert!(!bad.check_fundamental_identity().passed());
        assert!(matches!(
            bad.check_leibniz_fundamental(),
            Err(Error::PreconditionFailed { .. })
        ));
    }

    #[test]
    fn bracket_is_skew_under_all_permutations() {
        let a = example_algebra();
        for t in tuples(3, 3) {
            let canon = skew_canon(&t, 3).unwrap();
            let want = if canon.sign.as_i64() == 0 {
                vector::zeros(3)
            } else {
                vector::scale(
                    &s(canon.sign.as_i64()),
                    &a.bracket(canon.indices[0], canon.indices[1], canon.indices[2]).unwrap(),
                )
            };
            assert_eq!(a.bracket(t[0], t[1], t[2]).unwrap(), want);
        }
    }

    #[test]
    fn zero_and_adjoint_representations() {
        let a = example_algebra();
        assert!(a.check_representation(&Representation::zero(3, 2)).unwrap().passed());
        assert!(a.check_representation(&Representation::adjoint(&a)).unwrap().passed());
        assert!(a.check_ad_derivations().passed());
    }

    #[test]
    fn representation_matrix_is_skew() {
        let mut r = Representation::zero(3, 2);
        let m = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        r.set_matrix(2, 0, &m).unwrap();
        assert_eq!(r.matrix(0, 2).unwrap(), -&m);
        assert!(r.matrix(1, 1).unwrap().is_zero());
        assert_eq!(r.act(2, 0, &[s(1), s(0)]).unwrap(), vec![s(1), s(3)]);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = example_algebra();
        assert!(matches!(
            a.check_representation(&Representation::zero(4, 1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
