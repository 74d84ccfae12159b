//! The graded wedge square `Λ²V` of a 2-term 3-Lie∞ algebra and the
//! strongly homotopy Leibniz structure induced on it by `d`, `l3` and `l5`.
//!
//! `Λ²V` lives in degrees 0, 1 and 2: `Λ²V0`, `V0 ∧ V1` and the graded
//! wedge of `V1` with itself, where `f ∧ g = g ∧ f` since both are odd.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::skew::{combinations, tuples};
use crate::exactlin::{vector, Scalar, Vector};
use crate::homotopy::{Graded, ThreeLie2Algebra};
use crate::report::VerificationReport;

/// A basis wedge of `Λ²V` in canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WedgeKey {
    /// `x_i ∧ x_j` with `i < j`.
    Even(usize, usize),
    /// `x_i ∧ f_a`.
    Mixed(usize, usize),
    /// `f_a ∧ f_b` with `a ≤ b`.
    Odd(usize, usize),
}

impl WedgeKey {
    pub fn degree(self) -> i32 {
        match self {
            WedgeKey::Even(..) => 0,
            WedgeKey::Mixed(..) => 1,
            WedgeKey::Odd(..) => 2,
        }
    }

    pub fn render(self, labels0: &[String], labels1: &[String]) -> String {
        match self {
            WedgeKey::Even(i, j) => format!("{}∧{}", labels0[i], labels0[j]),
            WedgeKey::Mixed(i, a) => format!("{}∧{}", labels0[i], labels1[a]),
            WedgeKey::Odd(a, b) => format!("{}∧{}", labels1[a], labels1[b]),
        }
    }
}

fn even_index(i: usize, j: usize) -> usize {
    i + j * (j - 1) / 2
}

fn odd_index(a: usize, b: usize) -> usize {
    a + b * (b + 1) / 2
}

/// Every basis wedge, degree by degree, in storage order.
pub fn wedge_basis(dim0: usize, dim1: usize) -> Vec<WedgeKey> {
    let mut keys = Vec::new();
    for j in 0..dim0 {
        keys.extend((0..j).map(|i| WedgeKey::Even(i, j)));
    }
    for i in 0..dim0 {
        keys.extend((0..dim1).map(|a| WedgeKey::Mixed(i, a)));
    }
    for b in 0..dim1 {
        keys.extend((0..=b).map(|a| WedgeKey::Odd(a, b)));
    }
    keys
}

/// An element of `Λ²V`, stored as coordinates in each of the three degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WedgeElement {
    dim0: usize,
    dim1: usize,
    even: Vector,
    mixed: Vector,
    odd: Vector,
}

impl WedgeElement {
    pub fn zero(dim0: usize, dim1: usize) -> Self {
        WedgeElement {
            dim0,
            dim1,
            even: vector::zeros(dim0 * dim0.saturating_sub(1) / 2),
            mixed: vector::zeros(dim0 * dim1),
            odd: vector::zeros(dim1 * (dim1 + 1) / 2),
        }
    }

    pub fn basis(dim0: usize, dim1: usize, key: WedgeKey) -> Self {
        let mut w = Self::zero(dim0, dim1);
        *w.slot(key) = Scalar::one();
        w
    }

    /// `u ∧ v` for homogeneous `u`, `v`.
    pub fn wedge(dim0: usize, dim1: usize, u: &Graded, v: &Graded) -> Self {
        let mut w = Self::zero(dim0, dim1);
        w.add_wedge(&Scalar::one(), u, v);
        w
    }

    fn slot(&mut self, key: WedgeKey) -> &mut Scalar {
        match key {
            WedgeKey::Even(i, j) => &mut self.even[even_index(i, j)],
            WedgeKey::Mixed(i, a) => &mut self.mixed[i * self.dim1 + a],
            WedgeKey::Odd(a, b) => &mut self.odd[odd_index(a, b)],
        }
    }

    pub fn coefficient(&self, key: WedgeKey) -> Scalar {
        match key {
            WedgeKey::Even(i, j) => self.even[even_index(i, j)].clone(),
            WedgeKey::Mixed(i, a) => self.mixed[i * self.dim1 + a].clone(),
            WedgeKey::Odd(a, b) => self.odd[odd_index(a, b)].clone(),
        }
    }

    /// `self += c · (u ∧ v)`, rewriting into canonical basis wedges with the
    /// graded antisymmetry `u ∧ v = −(−1)^{|u||v|} v ∧ u`.
    pub fn add_wedge(&mut self, c: &Scalar, u: &Graded, v: &Graded) {
        if c.is_zero() {
            return;
        }
        let support = |g: &Graded| -> Vec<usize> {
            (0..g.coords.len()).filter(|&i| !g.coords[i].is_zero()).collect()
        };
        let (su, sv) = (support(u), support(v));
        for &p in &su {
            for &q in &sv {
                let coeff = c * &(&u.coords[p] * &v.coords[q]);
                let (key, negate) = match (u.degree, v.degree) {
                    (0, 0) if p == q => continue,
                    (0, 0) if p < q => (WedgeKey::Even(p, q), false),
                    (0, 0) => (WedgeKey::Even(q, p), true),
                    (0, 1) => (WedgeKey::Mixed(p, q), false),
                    (1, 0) => (WedgeKey::Mixed(q, p), true),
                    (1, 1) => (WedgeKey::Odd(p.min(q), p.max(q)), false),
                    _ => continue,
                };
                let s = self.slot(key);
                if negate {
                    *s -= coeff;
                } else {
                    *s += coeff;
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn axpy(&mut self, c: &Scalar, other: &WedgeElement) {
        vector::axpy(&mut self.even, c, &other.even);
        vector::axpy(&mut self.mixed, c, &other.mixed);
        vector::axpy(&mut self.odd, c, &other.odd);
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.even) && vector::is_zero(&self.mixed) && vector::is_zero(&self.odd)
    }

    /// Nonzero coordinates against [`wedge_basis`].
    pub fn terms(&self) -> Vec<(WedgeKey, Scalar)> {
        let mut out = Vec::new();
        let mut push = |key: WedgeKey, c: &Scalar| {
            if !c.is_zero() {
                out.push((key, c.clone()));
            }
        };
        for j in 0..self.dim0 {
            for i in 0..j {
                push(WedgeKey::Even(i, j), &self.even[even_index(i, j)]);
            }
        }
        for i in 0..self.dim0 {
            for a in 0..self.dim1 {
                push(WedgeKey::Mixed(i, a), &self.mixed[i * self.dim1 + a]);
            }
        }
        for b in 0..self.dim1 {
            for a in 0..=b {
                push(WedgeKey::Odd(a, b), &self.odd[odd_index(a, b)]);
            }
        }
        out
    }

    pub fn render(&self, labels0: &[String], labels1: &[String]) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(k, c)| format!("{c}·{}", k.render(labels0, labels1)))
            .collect();
        parts.join(" + ")
    }
}

fn koszul(exponent: i32) -> Scalar {
    if exponent.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// The maps `𝔩_1 = l̃1`, `𝔩_2 = l̃3`, `𝔩_3 = l̃5` on `Λ²V`. Higher ones
/// vanish for a 2-term algebra.
#[derive(Debug)]
pub struct InducedBrackets<'a> {
    l: &'a ThreeLie2Algebra,
    memo: RefCell<HashMap<Vec<WedgeKey>, WedgeElement>>,
}

impl<'a> InducedBrackets<'a> {
    pub fn new(l: &'a ThreeLie2Algebra) -> Self {
        InducedBrackets {
            l,
            memo: RefCell::new(HashMap::new()),
        }
    }

    fn zero(&self) -> WedgeElement {
        WedgeElement::zero(self.l.dim0(), self.l.dim1())
    }

    fn factors(&self, key: WedgeKey) -> (Graded, Graded) {
        let l = self.l;
        match key {
            WedgeKey::Even(i, j) => (l.e0(i), l.e0(j)),
            WedgeKey::Mixed(i, a) => (l.e0(i), l.e1(a)),
            WedgeKey::Odd(a, b) => (l.e1(a), l.e1(b)),
        }
    }

    /// `l̃_{2n+1}(X_1, …, X_{n+1}) =
    ///   (−1)^{|x_{n+1}|(|X_1|+…+|X_n|+n−1)} x_{n+1} ∧ l(X_1, …, X_n, y_{n+1})
    ///   + l(X_1, …, X_n, x_{n+1}) ∧ y_{n+1}` on basis wedges.
    fn on_basis(&self, keys: &[WedgeKey]) -> WedgeElement {
        let l = self.l;
        let mut out = self.zero();
        let n = keys.len() - 1;
        let (x, y) = self.factors(keys[n]);
        let front: Vec<(Graded, Graded)> = keys[..n].iter().map(|&k| self.factors(k)).collect();
        let apply = |z: &Graded| -> Graded {
            match n {
                0 => l.apply_d(z),
                1 => l.l3(&front[0].0, &front[0].1, z),
                _ => l.l5_graded([&front[0].0, &front[0].1, &front[1].0, &front[1].1, z]),
            }
        };
        let front_degree: i32 = keys[..n].iter().map(|k| k.degree()).sum();
        let sign = koszul(x.degree * (front_degree + n as i32 - 1));
        out.add_wedge(&sign, &x, &apply(&y));
        out.add_wedge(&Scalar::one(), &apply(&x), &y);
        out
    }

    /// `𝔩_n` on arbitrary elements, extended multilinearly. Arities above 3
    /// give zero.
    pub fn apply(&self, n: usize, args: &[&WedgeElement]) -> Result<WedgeElement> {
        if n == 0 || args.len() != n {
            return Err(Error::UnsupportedArity(n));
        }
        for a in args {
            if a.dim0 != self.l.dim0() || a.dim1 != self.l.dim1() {
                return Err(Error::dims("wedge element", self.l.dim0(), a.dim0));
            }
        }
        let mut out = self.zero();
        if n > 3 {
            return Ok(out);
        }
        let term_lists: Vec<Vec<(WedgeKey, Scalar)>> = args.iter().map(|a| a.terms()).collect();
        let mut keys = Vec::with_capacity(n);
        self.expand(&term_lists, Scalar::one(), &mut keys, &mut out);
        Ok(out)
    }

    fn expand(
        &self,
        lists: &[Vec<(WedgeKey, Scalar)>],
        coeff: Scalar,
        keys: &mut Vec<WedgeKey>,
        out: &mut WedgeElement,
    ) {
        let Some((first, rest)) = lists.split_first() else {
            let mut memo = self.memo.borrow_mut();
            let value = memo.entry(keys.clone()).or_insert_with(|| self.on_basis(keys));
            out.axpy(&coeff, value);
            return;
        };
        for (k, c) in first {
            keys.push(*k);
            self.expand(rest, &coeff * c, keys, out);
            keys.pop();
        }
    }
}

/// `𝔩_n(args)` for `n ∈ {1, 2, 3}`.
pub fn induced_bracket(l: &ThreeLie2Algebra, n: usize, args: &[&WedgeElement]) -> Result<WedgeElement> {
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedArity(n));
    }
    InducedBrackets::new(l).apply(n, args)
}

/// All `(p, q)`-unshuffles of `0..p+q`: the first `p` and the last `q`
/// images are each increasing.
pub fn unshuffles(p: usize, q: usize) -> Vec<Vec<usize>> {
    combinations(p + q, p)
        .map(|head| {
            let mut perm = head.clone();
            perm.extend((0..p + q).filter(|i| !head.contains(i)));
            perm
        })
        .collect()
}

/// `sgn(σ) · Ksgn(σ)` for the arrangement `σ` of elements with the given
/// degrees, `Ksgn` being the graded-symmetric Koszul sign.
pub fn antisymmetric_koszul(perm: &[usize], degrees: &[i32]) -> Scalar {
    let mut exponent = 0;
    for s in 0..perm.len() {
        for t in s + 1..perm.len() {
            if perm[s] > perm[t] {
                exponent += 1 + degrees[perm[s]] * degrees[perm[t]];
            }
        }
    }
    koszul(exponent)
}

/// One summand `l_i(…, l_j(…), …)` of the defining relation.
struct RelationTerm {
    description: String,
    value: WedgeElement,
}

/// The left-hand side of the defining relation of arity `n` on basis
/// wedges; it vanishes exactly when the relation holds. With `explain`,
/// also returns the nonzero summands.
fn relation(brackets: &InducedBrackets, keys: &[WedgeKey], explain: bool) -> (WedgeElement, Vec<RelationTerm>) {
    let n = keys.len();
    let degrees: Vec<i32> = keys.iter().map(|k| k.degree()).collect();
    let dims = (brackets.l.dim0(), brackets.l.dim1());
    let args: Vec<WedgeElement> = keys.iter().map(|&k| WedgeElement::basis(dims.0, dims.1, k)).collect();
    let name = |i: usize| format!("X{}", i + 1);
    let mut total = brackets.zero();
    let mut terms = Vec::new();
    for j in 1..=n {
        let i = n + 1 - j;
        if i > 3 || j > 3 {
            continue;
        }
        for k in j..=n {
            let (p, q) = (k - j, j - 1);
            for sigma in unshuffles(p, q) {
                let front: i32 = sigma[..p].iter().map(|&s| degrees[s]).sum();
                let exponent = ((k + 1 - j) * (j - 1)) as i32 + j as i32 * front;
                let sign = &koszul(exponent) * &antisymmetric_koszul(&sigma, &degrees);

                let mut inner_args: Vec<&WedgeElement> = sigma[p..].iter().map(|&s| &args[s]).collect();
                inner_args.push(&args[k - 1]);
                let inner = brackets.apply(j, &inner_args).expect("arity matches");

                let mut outer_args: Vec<&WedgeElement> = sigma[..p].iter().map(|&s| &args[s]).collect();
                outer_args.push(&inner);
                outer_args.extend(args[k..].iter());
                let value = brackets.apply(i, &outer_args).expect("arity matches");
                if value.is_zero() {
                    continue;
                }
                total.axpy(&sign, &value);
                if !explain {
                    continue;
                }

                let mut inner_names: Vec<String> = sigma[p..].iter().map(|&s| name(s)).collect();
                inner_names.push(name(k - 1));
                let mut outer_names: Vec<String> = sigma[..p].iter().map(|&s| name(s)).collect();
                outer_names.push(format!("l{j}({})", inner_names.join(", ")));
                outer_names.extend((k..n).map(name));
                let sign_text = if sign.is_negative() { "−" } else { "+" };
                terms.push(RelationTerm {
                    description: format!("{sign_text}l{i}({})", outer_names.join(", ")),
                    value,
                });
            }
        }
    }
    (total, terms)
}

/// Wedges of degree 0 only: the inputs on which the arity-4 relation is
/// evaluated.
fn relation_inputs(l: &ThreeLie2Algebra, n: usize) -> Vec<WedgeKey> {
    let all = wedge_basis(l.dim0(), l.dim1());
    if n <= 3 {
        all
    } else {
        all.into_iter().filter(|k| k.degree() == 0).collect()
    }
}

/// Evaluates the defining relations of arity `1..=max_n` on basis wedge
/// tuples (degree-0 inputs only at arity 4), without first checking that
/// `l` is a 2-term 3-Lie∞ algebra.
pub fn evaluate_lod_relations(l: &ThreeLie2Algebra, max_n: usize) -> Result<VerificationReport> {
    scan_relations(l, max_n, false)
}

/// As [`evaluate_lod_relations`], but stops at the first violated relation.
/// The report then holds at most one failure.
pub fn find_lod_violation(l: &ThreeLie2Algebra, max_n: usize) -> Result<VerificationReport> {
    scan_relations(l, max_n, true)
}

fn scan_relations(l: &ThreeLie2Algebra, max_n: usize, stop_early: bool) -> Result<VerificationReport> {
    if !(1..=4).contains(&max_n) {
        return Err(Error::UnsupportedArity(max_n));
    }
    let brackets = InducedBrackets::new(l);
    let mut report = VerificationReport::new();
    for n in 1..=max_n {
        let label = format!("lod_n{n}");
        report.touch(&label);
        let inputs = relation_inputs(l, n);
        for t in tuples(inputs.len(), n) {
            let keys: Vec<WedgeKey> = t.iter().map(|&i| inputs[i]).collect();
            let (total, _) = relation(&brackets, &keys, false);
            let ok = total.is_zero();
            report.record(&label, ok, || {
                let (_, terms) = relation(&brackets, &keys, true);
                let (l0, l1) = (l.labels0(), l.labels1());
                let inputs = keys.iter().map(|k| k.render(l0, l1)).collect();
                let breakdown: Vec<String> = terms
                    .iter()
                    .map(|t| format!("{} = {}", t.description, t.value.render(l0, l1)))
                    .collect();
                (inputs, format!("{} [{}]", total.render(l0, l1), breakdown.join("; ")), "0".into())
            });
            if stop_early && !ok {
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// As [`evaluate_lod_relations`], requiring `l` to pass the 2-term checks.
pub fn verify_lod_relations(l: &ThreeLie2Algebra, max_n: usize) -> Result<VerificationReport> {
    if !(1..=4).contains(&max_n) {
        return Err(Error::UnsupportedArity(max_n));
    }
    let r = l.verify_two_term();
    if !r.passed() {
        return Err(Error::precondition("not a 2-term 3-Lie∞ algebra", r));
    }
    evaluate_lod_relations(l, max_n)
}

impl fmt::Display for WedgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WedgeKey::Even(i, j) => write!(f, "x{}∧x{}", i + 1, j + 1),
            WedgeKey::Mixed(i, a) => write!(f, "x{}∧f{}", i + 1, a + 1),
            WedgeKey::Odd(a, b) => write!(f, "f{}∧f{}", a + 1, b + 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::tests::example_strict;
    use crate::trilie::FundamentalElement;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn unshuffle_counts_are_binomial() {
        for p in 0..5 {
            for q in 0..5 {
                let all = unshuffles(p, q);
                assert_eq!(all.len(), factorial(p + q) / (factorial(p) * factorial(q)));
                let mut sorted = all.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), all.len());
                for perm in &all {
                    assert!(perm[..p].windows(2).all(|w| w[0] < w[1]));
                    assert!(perm[p..].windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
    }

    #[test]
    fn koszul_sign_of_a_transposition() {
        let swap = [1, 0];
        assert_eq!(antisymmetric_koszul(&swap, &[0, 0]), -Scalar::one());
        assert_eq!(antisymmetric_koszul(&swap, &[1, 0]), -Scalar::one());
        assert_eq!(antisymmetric_koszul(&swap, &[1, 1]), Scalar::one());
        assert_eq!(antisymmetric_koszul(&[0, 1, 2], &[1, 1, 1]), Scalar::one());
    }

    #[test]
    fn graded_wedge_symmetries() {
        let l = example_strict();
        let (x, y, f, g) = (l.e0(0), l.e0(1), l.e1(0), l.e1(2));
        let w = |u: &Graded, v: &Graded| WedgeElement::wedge(3, 3, u, v);
        let mut neg = w(&f, &x);
        neg.axpy(&Scalar::one(), &w(&x, &f));
        assert!(neg.is_zero());
        assert_eq!(w(&f, &g), w(&g, &f));
        assert!(w(&x, &x).is_zero());
        assert!(!w(&f, &f).is_zero());
        let mut anti = w(&x, &y);
        anti.axpy(&Scalar::one(), &w(&y, &x));
        assert!(anti.is_zero());
        for key in wedge_basis(3, 3) {
            let (u, v) = InducedBrackets::new(&l).factors(key);
            assert_eq!(w(&u, &v), WedgeElement::basis(3, 3, key));
        }
    }

    #[test]
    fn degree_zero_bracket_is_the_fundamental_bracket() {
        let l = example_strict();
        let a = l.degree_zero_algebra();
        let keys: Vec<WedgeKey> = wedge_basis(3, 3).into_iter().filter(|k| k.degree() == 0).collect();
        for &p in &keys {
            for &q in &keys {
                let (WedgeKey::Even(i, j), WedgeKey::Even(k, m)) = (p, q) else { unreachable!() };
                let expected = a
                    .fundamental_bracket(&FundamentalElement::wedge(3, i, j), &FundamentalElement::wedge(3, k, m))
                    .unwrap();
                let got = induced_bracket(
                    &l,
                    2,
                    &[&WedgeElement::basis(3, 3, p), &WedgeElement::basis(3, 3, q)],
                )
                .unwrap();
                for (r, s) in keys.iter().map(|&k| match k {
                    WedgeKey::Even(r, s) => (r, s),
                    _ => unreachable!(),
                }) {
                    assert_eq!(got.coefficient(WedgeKey::Even(r, s)), expected.coefficient(r, s));
                }
                assert!(got.terms().iter().all(|(k, _)| k.degree() == 0));
            }
        }
        let got = induced_bracket(
            &l,
            2,
            &[
                &WedgeElement::basis(3, 3, WedgeKey::Even(0, 1)),
                &WedgeElement::basis(3, 3, WedgeKey::Even(1, 2)),
            ],
        )
        .unwrap();
        assert_eq!(got.terms(), vec![(WedgeKey::Even(0, 1), -Scalar::one())]);
    }

    #[test]
    fn strict_and_skeletal_vanishing() {
        let strict = example_strict();
        let basis = wedge_basis(3, 3);
        let b = |k| WedgeElement::basis(3, 3, k);
        for t in tuples(basis.len(), 3).step_by(7) {
            let args = [b(basis[t[0]]), b(basis[t[1]]), b(basis[t[2]])];
            assert!(induced_bracket(&strict, 3, &[&args[0], &args[1], &args[2]]).unwrap().is_zero());
        }
        let mut skeletal = strict.clone();
        *skeletal.d_mut() = crate::exactlin::Matrix::zeros(3, 3);
        for &k in &basis {
            assert!(induced_bracket(&skeletal, 1, &[&b(k)]).unwrap().is_zero());
        }
    }

    #[test]
    fn differential_squares_to_zero_and_lowers_degree() {
        let l = example_strict();
        let br = InducedBrackets::new(&l);
        for k in wedge_basis(3, 3) {
            let once = br.apply(1, &[&WedgeElement::basis(3, 3, k)]).unwrap();
            assert!(once.terms().iter().all(|(j, _)| j.degree() == k.degree() - 1));
            assert!(br.apply(1, &[&once]).unwrap().is_zero());
        }
    }

    #[test]
    fn strict_example_satisfies_relations_through_arity_four() {
        let r = verify_lod_relations(&example_strict(), 4).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked["lod_n3"], 18 * 18 * 18);
        assert_eq!(r.checked["lod_n4"], 81);
    }

    #[test]
    fn perturbed_bracket_breaks_a_relation() {
        let mut l = example_strict();
        l.l3_001_mut().bump(&[0, 1, 0], 1, &Scalar::one()).unwrap();
        assert!(!l.verify_two_term().passed());
        assert!(matches!(verify_lod_relations(&l, 3), Err(Error::PreconditionFailed { .. })));
        let r = evaluate_lod_relations(&l, 3).unwrap();
        assert!(!r.passed());
        assert!(r.failures[0].lhs.contains('['));
    }

    #[test]
    fn arity_bounds() {
        let l = example_strict();
        assert!(matches!(evaluate_lod_relations(&l, 5), Err(Error::UnsupportedArity(5))));
        assert!(matches!(induced_bracket(&l, 4, &[]), Err(Error::UnsupportedArity(4))));
    }
}
