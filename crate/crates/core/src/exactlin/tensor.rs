//! Multilinear maps stored on canonical index tuples.
//!
//! A [`BlockTensor`] takes its arguments in consecutive blocks. Inside a
//! skew block only strictly increasing index tuples are stored; any other
//! order is decoded through [`skew_canon`](super::skew::skew_canon).

use std::fmt;

use super::matrix::Matrix;
use super::scalar::Scalar;
use super::skew::{binomial, comb_rank, combinations, sort_parity};
use super::vector::{self, Vector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    /// `arity` arguments from a space of dimension `dim`, totally skew.
    Skew { dim: usize, arity: usize },
    /// One argument with no symmetry.
    Free { dim: usize },
}

impl Block {
    pub fn arity(self) -> usize {
        match self {
            Block::Skew { arity, .. } => arity,
            Block::Free { .. } => 1,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Block::Skew { dim, .. } | Block::Free { dim } => dim,
        }
    }

    /// Number of stored slots for this block.
    pub fn size(self) -> usize {
        match self {
            Block::Skew { dim, arity } => binomial(dim, arity),
            Block::Free { dim } => dim,
        }
    }

    /// Per-block keys in storage (colex) order.
    fn keys(self) -> Vec<Vec<usize>> {
        match self {
            Block::Skew { dim, arity } => {
                let mut keys: Vec<Vec<usize>> = combinations(dim, arity).collect();
                keys.sort_by_key(|k| comb_rank(k));
                keys
            }
            Block::Free { dim } => (0..dim).map(|i| vec![i]).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlockTensor {
    blocks: Vec<Block>,
    out_dim: usize,
    data: Vec<Scalar>,
}

impl BlockTensor {
    pub fn zeros(blocks: Vec<Block>, out_dim: usize) -> Self {
        let slots: usize = blocks.iter().map(|b| b.size()).product();
        BlockTensor {
            blocks,
            out_dim,
            data: vec![Scalar::zero(); slots * out_dim],
        }
    }

    /// Fills every canonical slot from `f`, which must return an
    /// `out_dim`-vector.
    pub fn from_fn(
        blocks: Vec<Block>,
        out_dim: usize,
        mut f: impl FnMut(&[usize]) -> Result<Vector>,
    ) -> Result<Self> {
        let mut t = BlockTensor::zeros(blocks, out_dim);
        for (slot, key) in t.canonical_keys().into_iter().enumerate() {
            let v = f(&key)?;
            if v.len() != out_dim {
                return Err(Error::dims("tensor value", out_dim, v.len()));
            }
            t.data[slot * out_dim..(slot + 1) * out_dim].clone_from_slice(&v);
        }
        Ok(t)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    /// Total number of arguments.
    pub fn arity(&self) -> usize {
        self.blocks.iter().map(|b| b.arity()).sum()
    }

    pub fn same_shape(&self, other: &BlockTensor) -> bool {
        self.blocks == other.blocks && self.out_dim == other.out_dim
    }

    /// Slot position and sign for an arbitrary index tuple; `None` when a
    /// skew block repeats an index.
    fn locate(&self, indices: &[usize]) -> Result<Option<(usize, bool)>> {
        if indices.len() != self.arity() {
            return Err(Error::dims("tensor arguments", self.arity(), indices.len()));
        }
        let mut slot = 0;
        let mut negate = false;
        let mut at = 0;
        let mut buf = [0usize; 8];
        for block in &self.blocks {
            let k = block.arity();
            let part = &indices[at..at + k];
            at += k;
            if let Some(&index) = part.iter().find(|&&i| i >= block.dim()) {
                return Err(Error::IndexOutOfRange {
                    index,
                    dim: block.dim(),
                });
            }
            let rank = match block {
                Block::Free { .. } => part[0],
                Block::Skew { .. } => {
                    let sorted = &mut buf[..k];
                    sorted.copy_from_slice(part);
                    negate ^= sort_parity(sorted);
                    if sorted.windows(2).any(|w| w[0] == w[1]) {
                        return Ok(None);
                    }
                    comb_rank(sorted)
                }
            };
            slot = slot * block.size() + rank;
        }
        Ok(Some((slot, negate)))
    }

    fn slot(&self, slot: usize) -> &[Scalar] {
        &self.data[slot * self.out_dim..(slot + 1) * self.out_dim]
    }

    /// Value at an index tuple in any order.
    pub fn value(&self, indices: &[usize]) -> Result<Vector> {
        let mut out = vector::zeros(self.out_dim);
        self.accumulate(indices, &Scalar::one(), &mut out)?;
        Ok(out)
    }

    /// `out += coeff * T(indices)`.
    pub fn accumulate(&self, indices: &[usize], coeff: &Scalar, out: &mut [Scalar]) -> Result<()> {
        if out.len() != self.out_dim {
            return Err(Error::dims("tensor output", self.out_dim, out.len()));
        }
        if let Some((slot, negate)) = self.locate(indices)? {
            if negate {
                vector::axpy(out, &-coeff, self.slot(slot));
            } else {
                vector::axpy(out, coeff, self.slot(slot));
            }
        }
        Ok(())
    }

    /// Sets the value so that `value(indices) == v`. Tuples that repeat an
    /// index inside a skew block are ignored, since the tensor vanishes there.
    pub fn set(&mut self, indices: &[usize], v: &[Scalar]) -> Result<()> {
        if v.len() != self.out_dim {
            return Err(Error::dims("tensor value", self.out_dim, v.len()));
        }
        if let Some((slot, negate)) = self.locate(indices)? {
            let n = self.out_dim;
            let target = &mut self.data[slot * n..(slot + 1) * n];
            for (t, x) in target.iter_mut().zip(v) {
                *t = if negate { -x } else { x.clone() };
            }
        }
        Ok(())
    }

    /// Adds `delta` to a single output coordinate at `indices`, respecting
    /// the skew sign. Used to build perturbed copies.
    pub fn bump(&mut self, indices: &[usize], coordinate: usize, delta: &Scalar) -> Result<()> {
        if coordinate >= self.out_dim {
            return Err(Error::IndexOutOfRange {
                index: coordinate,
                dim: self.out_dim,
            });
        }
        if let Some((slot, negate)) = self.locate(indices)? {
            let entry = &mut self.data[slot * self.out_dim + coordinate];
            if negate {
                *entry -= delta;
            } else {
                *entry += delta;
            }
        }
        Ok(())
    }

    /// Every canonical index tuple, in storage order.
    pub fn canonical_keys(&self) -> Vec<Vec<usize>> {
        let mut keys: Vec<Vec<usize>> = vec![Vec::new()];
        for block in &self.blocks {
            let part = block.keys();
            keys = keys
                .into_iter()
                .flat_map(|prefix| {
                    part.iter().map(move |p| {
                        let mut k = prefix.clone();
                        k.extend_from_slice(p);
                        k
                    })
                })
                .collect();
        }
        keys
    }

    /// Canonical tuples with a nonzero value, paired with that value.
    pub fn nonzero_entries(&self) -> Vec<(Vec<usize>, Vector)> {
        self.canonical_keys()
            .into_iter()
            .enumerate()
            .filter_map(|(slot, key)| {
                let v = self.slot(slot);
                (!vector::is_zero(v)).then(|| (key, v.to_vec()))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.data)
    }

    /// Multilinear evaluation on coordinate vectors, one per argument.
    pub fn apply(&self, args: &[&[Scalar]]) -> Result<Vector> {
        let mut out = vector::zeros(self.out_dim);
        self.apply_into(args, &Scalar::one(), &mut out)?;
        Ok(out)
    }

    /// `out += coeff * T(args)`.
    pub fn apply_into(&self, args: &[&[Scalar]], coeff: &Scalar, out: &mut [Scalar]) -> Result<()> {
        if args.len() != self.arity() {
            return Err(Error::dims("tensor arguments", self.arity(), args.len()));
        }
        let mut at = 0;
        for block in &self.blocks {
            for arg in &args[at..at + block.arity()] {
                if arg.len() != block.dim() {
                    return Err(Error::dims("tensor argument", block.dim(), arg.len()));
                }
            }
            at += block.arity();
        }
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|a| (0..a.len()).filter(|&i| !a[i].is_zero()).collect())
            .collect();
        if coeff.is_zero() || supports.iter().any(Vec::is_empty) {
            return Ok(());
        }
        let mut cursor = vec![0usize; args.len()];
        let mut indices = vec![0usize; args.len()];
        loop {
            for (slot, (&pos, support)) in cursor.iter().zip(&supports).enumerate() {
                indices[slot] = support[pos];
            }
            // Tuples repeating an index in a skew block vanish; skip them
            // before doing any rational arithmetic.
            if let Some((slot, negate)) = self.locate(&indices)? {
                let mut c = if negate { -coeff } else { coeff.clone() };
                for (arg, &i) in args.iter().zip(&indices) {
                    c *= &arg[i];
                }
                vector::axpy(out, &c, self.slot(slot));
            }
            let mut slot = args.len();
            loop {
                if slot == 0 {
                    return Ok(());
                }
                slot -= 1;
                cursor[slot] += 1;
                if cursor[slot] < supports[slot].len() {
                    break;
                }
                cursor[slot] = 0;
            }
        }
    }

    /// The tensor `M ∘ T`.
    pub fn map_output(&self, m: &Matrix) -> Result<BlockTensor> {
        if m.cols() != self.out_dim {
            return Err(Error::dims("output map", self.out_dim, m.cols()));
        }
        let mut out = BlockTensor::zeros(self.blocks.clone(), m.rows());
        let slots = self.data.len().checked_div(self.out_dim).unwrap_or(0);
        for slot in 0..slots {
            let image = m.mul_vec(self.slot(slot));
            out.data[slot * m.rows()..(slot + 1) * m.rows()].clone_from_slice(&image);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> BlockTensor {
        BlockTensor {
            blocks: self.blocks.clone(),
            out_dim: self.out_dim,
            data: vector::scale(c, &self.data),
        }
    }

    pub fn checked_add(&self, other: &BlockTensor) -> Result<BlockTensor> {
        self.zip(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &BlockTensor) -> Result<BlockTensor> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &BlockTensor, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<BlockTensor> {
        if !self.same_shape(other) {
            return Err(Error::dims("tensor shape", self.data.len(), other.data.len()));
        }
        Ok(BlockTensor {
            blocks: self.blocks.clone(),
            out_dim: self.out_dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }
}

impl fmt::Debug for BlockTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (key, v) in self.nonzero_entries() {
            map.entry(&key, &v);
        }
        map.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::skew::{skew_canon, tuples};
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn bracket_shape(n: usize) -> BlockTensor {
        BlockTensor::zeros(vec![Block::Skew { dim: n, arity: 3 }], n)
    }

    #[test]
    fn skew_decoding_matches_canon_sign() {
        let mut t = bracket_shape(4);
        t.set(&[0, 1, 2], &[s(1), s(0), s(0), s(2)]).unwrap();
        for idx in tuples(4, 3) {
            let canon = skew_canon(&idx, 4).unwrap();
            let v = t.value(&idx).unwrap();
            if canon.indices == [0, 1, 2] {
                assert_eq!(v[0], s(canon.sign.as_i64()));
                assert_eq!(v[3], s(2 * canon.sign.as_i64()));
            } else {
                assert!(vector::is_zero(&v));
            }
        }
    }

    #[test]
    fn setting_a_permuted_tuple_stores_the_signed_value() {
        let mut t = bracket_shape(3);
        t.set(&[2, 1, 0], &[s(5), s(0), s(0)]).unwrap();
        assert_eq!(t.value(&[0, 1, 2]).unwrap(), vec![s(-5), s(0), s(0)]);
    }

    #[test]
    fn repeated_index_set_is_ignored() {
        let mut t = bracket_shape(3);
        t.set(&[0, 0, 2], &[s(5), s(0), s(0)]).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn mixed_blocks_count_slots() {
        let t = BlockTensor::zeros(
            vec![Block::Skew { dim: 4, arity: 2 }, Block::Skew { dim: 4, arity: 3 }],
            2,
        );
        assert_eq!(t.canonical_keys().len(), 6 * 4);
        assert_eq!(t.arity(), 5);
    }

    #[test]
    fn out_of_range_is_reported() {
        let t = bracket_shape(3);
        assert!(matches!(
            t.value(&[0, 1, 3]),
            Err(Error::IndexOutOfRange { index: 3, dim: 3 })
        ));
    }

    proptest! {
        #[test]
        fn apply_agrees_with_basis_expansion(
            entries in proptest::collection::vec(-3i64..4, 4 * 3),
            a in proptest::collection::vec(-2i64..3, 3),
            b in proptest::collection::vec(-2i64..3, 3),
            c in proptest::collection::vec(-2i64..3, 3),
        ) {
            // Free-then-skew layout: T(u; v, w) with v, w skew.
            let mut t = BlockTensor::zeros(
                vec![Block::Free { dim: 3 }, Block::Skew { dim: 3, arity: 2 }],
                1,
            );
            for (slot, key) in t.canonical_keys().into_iter().enumerate() {
                t.set(&key, &[s(entries[slot])]).unwrap();
            }
            let (a, b, c): (Vector, Vector, Vector) = (
                a.into_iter().map(s).collect(),
                b.into_iter().map(s).collect(),
                c.into_iter().map(s).collect(),
            );
            let got = t.apply(&[&a, &b, &c]).unwrap();
            let mut want = Scalar::zero();
            for (i, ai) in a.iter().enumerate() {
                for (j, bj) in b.iter().enumerate() {
                    for (k, ck) in c.iter().enumerate() {
                        want += ai * bj * ck * &t.value(&[i, j, k]).unwrap()[0];
                    }
                }
            }
            prop_assert_eq!(&got[0], &want);
            let swapped = t.apply(&[&a, &c, &b]).unwrap();
            prop_assert_eq!(&swapped[0], &-want);
        }
    }
}
