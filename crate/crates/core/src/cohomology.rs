//! Cochains of a 3-Lie algebra with values in a representation, and the
//! coboundary operator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{vector, Block, BlockTensor, Scalar, Vector};
use crate::report::{format_vector, VerificationReport};
use crate::trilie::{labelled, FundamentalElement, Representation, ThreeLieAlgebra};

/// Highest degree accepted as input to the coboundary.
pub const MAX_DEGREE: usize = 3;

/// A `p`-cochain: `p − 1` wedge arguments from `Λ²g` followed by one
/// argument from `g`, with values in the representation space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    algebra_dim: usize,
    space_dim: usize,
    values: BlockTensor,
}

pub fn cochain_blocks(degree: usize, n: usize) -> Vec<Block> {
    let mut blocks = vec![Block::Skew { dim: n, arity: 2 }; degree - 1];
    blocks.push(Block::Free { dim: n });
    blocks
}

impl Cochain {
    pub fn zero(degree: usize, algebra_dim: usize, space_dim: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::UnsupportedDegree(0));
        }
        Ok(Cochain {
            degree,
            algebra_dim,
            space_dim,
            values: BlockTensor::zeros(cochain_blocks(degree, algebra_dim), space_dim),
        })
    }

    pub fn from_tensor(degree: usize, algebra_dim: usize, space_dim: usize, values: BlockTensor) -> Result<Self> {
        let shape = Cochain::zero(degree, algebra_dim, space_dim)?;
        if !shape.values.same_shape(&values) {
            return Err(Error::dims("cochain tensor", space_dim, values.out_dim()));
        }
        Ok(Cochain { values, ..shape })
    }

    /// A cochain with independent integer entries drawn from `-3..=3`.
    pub fn random(degree: usize, algebra_dim: usize, space_dim: usize, rng: &mut impl Rng) -> Result<Self> {
        let blocks = cochain_blocks(degree.max(1), algebra_dim);
        let values = BlockTensor::from_fn(blocks, space_dim, |_| {
            Ok((0..space_dim).map(|_| Scalar::from_int(rng.random_range(-3..=3))).collect())
        })?;
        Cochain::from_tensor(degree, algebra_dim, space_dim, values)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn tensor(&self) -> &BlockTensor {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    /// Value at basis arguments: wedge pairs `(x_j, y_j)` in any order, then `z`.
    pub fn value(&self, pairs: &[(usize, usize)], z: usize) -> Result<Vector> {
        if pairs.len() + 1 != self.degree {
            return Err(Error::dims("cochain arguments", self.degree - 1, pairs.len()));
        }
        let mut idx: Vec<usize> = pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
        idx.push(z);
        self.values.value(&idx)
    }

    /// `out += c · α(W_1, …, W_{p−1}, z)` for fundamental elements `W_j`
    /// and a coordinate vector `z`.
    fn accumulate_general(
        &self,
        wedges: &[&FundamentalElement],
        z: &[Scalar],
        c: &Scalar,
        out: &mut [Scalar],
    ) -> Result<()> {
        let terms: Vec<Vec<((usize, usize), Scalar)>> = wedges.iter().map(|w| w.terms()).collect();
        let mut idx = vec![0usize; 2 * wedges.len() + 1];
        self.expand(&terms, 0, c.clone(), &mut idx, z, out)
    }

    fn expand(
        &self,
        terms: &[Vec<((usize, usize), Scalar)>],
        slot: usize,
        c: Scalar,
        idx: &mut Vec<usize>,
        z: &[Scalar],
        out: &mut [Scalar],
    ) -> Result<()> {
        if slot == terms.len() {
            for (k, zk) in z.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                idx[2 * slot] = k;
                self.values.accumulate(idx, &(&c * zk), out)?;
            }
            return Ok(());
        }
        for ((a, b), w) in &terms[slot] {
            idx[2 * slot] = *a;
            idx[2 * slot + 1] = *b;
            self.expand(terms, slot + 1, &c * w, idx, z, out)?;
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Cochain) -> Result<Cochain> {
        Ok(Cochain {
            values: self.values.checked_add(&other.values)?,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain {
            values: self.values.scale(c),
            ..self.clone()
        }
    }
}

fn check_shapes(a: &ThreeLieAlgebra, rep: &Representation, alpha: &Cochain) -> Result<()> {
    if rep.algebra_dim() != a.dim() {
        return Err(Error::dims("representation algebra", a.dim(), rep.algebra_dim()));
    }
    if alpha.algebra_dim != a.dim() {
        return Err(Error::dims("cochain domain", a.dim(), alpha.algebra_dim));
    }
    if alpha.space_dim != rep.space_dim() {
        return Err(Error::dims("cochain values", rep.space_dim(), alpha.space_dim));
    }
    if alpha.degree > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(alpha.degree));
    }
    Ok(())
}

fn check_preconditions(a: &ThreeLieAlgebra, rep: &Representation) -> Result<()> {
    let fi = a.check_fundamental_identity();
    if !fi.passed() {
        return Err(Error::precondition("bracket fails the fundamental identity", fi));
    }
    let r = a.check_representation(rep)?;
    if !r.passed() {
        return Err(Error::precondition("not a representation", r));
    }
    Ok(())
}

/// `(δα)(X_1, …, X_p, z)` at basis arguments given in any order.
pub fn coboundary_at(
    a: &ThreeLieAlgebra,
    rep: &Representation,
    alpha: &Cochain,
    pairs: &[(usize, usize)],
    z: usize,
) -> Result<Vector> {
    check_shapes(a, rep, alpha)?;
    let p = alpha.degree;
    if pairs.len() != p {
        return Err(Error::dims("coboundary arguments", p, pairs.len()));
    }
    let n = a.dim();
    let wedges: Vec<FundamentalElement> = pairs
        .iter()
        .map(|&(x, y)| FundamentalElement::wedge(n, x, y))
        .collect();
    let zv = a.unit(z);
    let sign = |k: usize| if k.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
    let mut out = vector::zeros(rep.space_dim());

    // Positions below are 1-based to keep the alternating signs readable.
    for j in 1..=p {
        for k in j + 1..=p {
            let merged = a.fundamental_bracket(&wedges[j - 1], &wedges[k - 1])?;
            let args: Vec<&FundamentalElement> = (1..=p)
                .filter(|&i| i != j)
                .map(|i| if i == k { &merged } else { &wedges[i - 1] })
                .collect();
            alpha.accumulate_general(&args, &zv, &sign(j), &mut out)?;
        }
    }
    for j in 1..=p {
        let (x, y) = pairs[j - 1];
        let acted = a.bracket(x, y, z)?;
        let args: Vec<&FundamentalElement> = (1..=p).filter(|&i| i != j).map(|i| &wedges[i - 1]).collect();
        alpha.accumulate_general(&args, &acted, &sign(j), &mut out)?;
    }
    for j in 1..=p {
        let (x, y) = pairs[j - 1];
        let args: Vec<&FundamentalElement> = (1..=p).filter(|&i| i != j).map(|i| &wedges[i - 1]).collect();
        let mut inner = vector::zeros(rep.space_dim());
        alpha.accumulate_general(&args, &zv, &Scalar::one(), &mut inner)?;
        vector::axpy(&mut out, &sign(j + 1), &rep.act(x, y, &inner)?);
    }
    let (xp, yp) = pairs[p - 1];
    let head: Vec<&FundamentalElement> = wedges[..p - 1].iter().collect();
    for (first, second, arg) in [(yp, z, xp), (z, xp, yp)] {
        let mut inner = vector::zeros(rep.space_dim());
        alpha.accumulate_general(&head, &a.unit(arg), &Scalar::one(), &mut inner)?;
        vector::axpy(&mut out, &sign(p + 1), &rep.act(first, second, &inner)?);
    }
    Ok(out)
}

fn coboundary_unchecked(a: &ThreeLieAlgebra, rep: &Representation, alpha: &Cochain) -> Result<Cochain> {
    check_shapes(a, rep, alpha)?;
    let p = alpha.degree;
    let n = a.dim();
    let values = BlockTensor::from_fn(cochain_blocks(p + 1, n), rep.space_dim(), |key| {
        let pairs: Vec<(usize, usize)> = key[..2 * p].chunks(2).map(|c| (c[0], c[1])).collect();
        coboundary_at(a, rep, alpha, &pairs, key[2 * p])
    })?;
    Cochain::from_tensor(p + 1, n, rep.space_dim(), values)
}

/// `δα`, a cochain of one degree higher.
pub fn coboundary(a: &ThreeLieAlgebra, rep: &Representation, alpha: &Cochain) -> Result<Cochain> {
    check_shapes(a, rep, alpha)?;
    check_preconditions(a, rep)?;
    coboundary_unchecked(a, rep, alpha)
}

fn slot_labels(a: &ThreeLieAlgebra, key: &[usize]) -> Vec<String> {
    let (pairs, z) = key.split_at(key.len() - 1);
    let mut out: Vec<String> = pairs
        .chunks(2)
        .map(|c| format!("{}∧{}", a.label(c[0]), a.label(c[1])))
        .collect();
    out.extend(labelled(a.labels(), z));
    out
}

fn report_nonzero(a: &ThreeLieAlgebra, condition: &str, c: &Cochain, report: &mut VerificationReport) {
    let zero = vector::zeros(c.space_dim);
    for key in c.values.canonical_keys() {
        let v = c.values.value(&key).expect("canonical key");
        report.record(condition, v == zero, || {
            (slot_labels(a, &key), format_vector(&v), format_vector(&zero))
        });
    }
}

/// Passes iff `δα = 0`; failures list the nonzero slots of `δα`.
pub fn is_cocycle(a: &ThreeLieAlgebra, rep: &Representation, alpha: &Cochain) -> Result<VerificationReport> {
    let d = coboundary(a, rep, alpha)?;
    let mut report = VerificationReport::new();
    report.touch("cocycle");
    report_nonzero(a, "cocycle", &d, &mut report);
    Ok(report)
}

/// Applies `δ` twice to `trials` random cochains of degree `p ∈ {1, 2}`.
pub fn delta_squared_zero(
    a: &ThreeLieAlgebra,
    rep: &Representation,
    p: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if !(1..=2).contains(&p) {
        return Err(Error::UnsupportedDegree(p));
    }
    check_preconditions(a, rep)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport::new();
    let condition = format!("delta_squared_p{p}");
    report.touch(&condition);
    for _ in 0..trials {
        let alpha = Cochain::random(p, a.dim(), rep.space_dim(), &mut rng)?;
        let dd = coboundary_unchecked(a, rep, &coboundary_unchecked(a, rep, &alpha)?)?;
        report_nonzero(a, &condition, &dd, &mut report);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::skew::tuples;
    use crate::trilie::numbered_labels;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn example_algebra() -> ThreeLieAlgebra {
        ThreeLieAlgebra::from_brackets(numbered_labels("e", 3), &[([0, 1, 2], vec![s(1), s(0), s(0)])])
            .unwrap()
    }

    #[test]
    fn degree_one_matches_hand_instantiation() {
        // (δα)(x∧y, z) = ρ(x,y)α(z) + ρ(y,z)α(x) + ρ(z,x)α(y) − α([x,y,z])
        let a = example_algebra();
        let rep = Representation::adjoint(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let alpha = Cochain::random(1, 3, 3, &mut rng).unwrap();
        let al = |i: usize| alpha.value(&[], i).unwrap();
        for t in tuples(3, 3) {
            let (x, y, z) = (t[0], t[1], t[2]);
            let mut want = rep.act(x, y, &al(z)).unwrap();
            want = vector::add(&want, &rep.act(y, z, &al(x)).unwrap());
            want = vector::add(&want, &rep.act(z, x, &al(y)).unwrap());
            let br = a.bracket(x, y, z).unwrap();
            let mut image = vector::zeros(3);
            for (k, c) in br.iter().enumerate() {
                vector::axpy(&mut image, c, &al(k));
            }
            want = vector::sub(&want, &image);
            assert_eq!(coboundary_at(&a, &rep, &alpha, &[(x, y)], z).unwrap(), want);
        }
    }

    #[test]
    fn trivial_coefficients_example() {
        let a = example_algebra();
        let rep = Representation::zero(3, 1);
        let mut alpha = Cochain::zero(1, 3, 1).unwrap();
        alpha.values.set(&[0], &[s(1)]).unwrap();
        let d = coboundary(&a, &rep, &alpha).unwrap();
        assert_eq!(d.value(&[(1, 2)], 0).unwrap(), vec![s(-1)]);
    }

    #[test]
    fn abelian_with_zero_action_has_zero_coboundary() {
        let a = ThreeLieAlgebra::abelian(numbered_labels("e", 3));
        let rep = Representation::zero(3, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in 1..=3 {
            let alpha = Cochain::random(p, 3, 2, &mut rng).unwrap();
            assert!(coboundary(&a, &rep, &alpha).unwrap().is_zero());
            assert!(is_cocycle(&a, &rep, &alpha).unwrap().passed());
        }
    }

    #[test]
    fn zero_cochain_is_a_cocycle() {
        let a = example_algebra();
        let rep = Representation::adjoint(&a);
        assert!(is_cocycle(&a, &rep, &Cochain::zero(3, 3, 3).unwrap()).unwrap().passed());
    }

    #[test]
    fn delta_squared_vanishes() {
        let a = example_algebra();
        for rep in [Representation::adjoint(&a), Representation::zero(3, 1)] {
            for p in 1..=2 {
                assert!(delta_squared_zero(&a, &rep, p, 5, 11).unwrap().passed());
            }
        }
    }

    #[test]
    fn degree_limits() {
        let a = example_algebra();
        let rep = Representation::zero(3, 1);
        let alpha = Cochain::zero(4, 3, 1).unwrap();
        assert!(matches!(coboundary(&a, &rep, &alpha), Err(Error::UnsupportedDegree(4))));
        assert!(matches!(delta_squared_zero(&a, &rep, 3, 1, 0), Err(Error::UnsupportedDegree(3))));
    }

    #[test]
    fn coboundary_is_skew_in_each_pair() {
        let a = example_algebra();
        let rep = Representation::adjoint(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let alpha = Cochain::random(2, 3, 3, &mut rng).unwrap();
        for t in tuples(3, 5) {
            let base = coboundary_at(&a, &rep, &alpha, &[(t[0], t[1]), (t[2], t[3])], t[4]).unwrap();
            let first = coboundary_at(&a, &rep, &alpha, &[(t[1], t[0]), (t[2], t[3])], t[4]).unwrap();
            let second = coboundary_at(&a, &rep, &alpha, &[(t[0], t[1]), (t[3], t[2])], t[4]).unwrap();
            assert_eq!(first, vector::neg(&base));
            assert_eq!(second, vector::neg(&base));
        }
    }

    #[test]
    fn coboundary_is_linear() {
        let a = example_algebra();
        let rep = Representation::adjoint(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for p in 1..=3 {
            let x = Cochain::random(p, 3, 3, &mut rng).unwrap();
            let y = Cochain::random(p, 3, 3, &mut rng).unwrap();
            let (ca, cb) = (Scalar::new(2, 3).unwrap(), Scalar::new(-5, 7).unwrap());
            let combo = x.scale(&ca).checked_add(&y.scale(&cb)).unwrap();
            let lhs = coboundary(&a, &rep, &combo).unwrap();
            let rhs = coboundary(&a, &rep, &x)
                .unwrap()
                .scale(&ca)
                .checked_add(&coboundary(&a, &rep, &y).unwrap().scale(&cb))
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
