//! Canonical ordering of skew-symmetric index tuples.

use crate::error::{Error, Result};

/// Sign carried by a canonicalized index tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
    /// The tuple had a repeated index, so every skew tensor vanishes on it.
    Zero,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::Zero => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewSlot {
    /// Sorted indices. Left in input order-sorted form even when `sign` is zero.
    pub indices: Vec<usize>,
    pub sign: Sign,
}

/// Sorts `indices` and returns the sign of the sorting permutation, or
/// [`Sign::Zero`] if an index repeats.
pub fn skew_canon(indices: &[usize], dim: usize) -> Result<SkewSlot> {
    if let Some(&index) = indices.iter().find(|&&i| i >= dim) {
        return Err(Error::IndexOutOfRange { index, dim });
    }
    let mut sorted = indices.to_vec();
    let odd = sort_parity(&mut sorted);
    let repeated = sorted.windows(2).any(|w| w[0] == w[1]);
    Ok(SkewSlot {
        indices: sorted,
        sign: if repeated {
            Sign::Zero
        } else {
            Sign::from_parity(odd)
        },
    })
}

/// Insertion-sorts in place and reports whether an odd number of
/// transpositions was needed. Tuples here have at most seven entries.
pub(crate) fn sort_parity(v: &mut [usize]) -> bool {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    odd
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Position of a strictly increasing tuple among all `k`-subsets, in colex order.
pub fn comb_rank(sorted: &[usize]) -> usize {
    sorted
        .iter()
        .enumerate()
        .map(|(t, &c)| binomial(c, t + 1))
        .sum()
}

/// All strictly increasing `k`-tuples from `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        current: if k <= n { Some((0..k).collect()) } else { None },
    }
}

pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// Every tuple in `0..n` of length `k` (the full Cartesian power).
pub fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.checked_pow(k as u32).unwrap_or(0);
    let total = if n == 0 && k == 0 { 1 } else { total };
    (0..total).map(move |mut code| {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        t
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_transposition_is_odd() {
        let s = skew_canon(&[2, 1, 3], 4).unwrap();
        assert_eq!(s.indices, vec![1, 2, 3]);
        assert_eq!(s.sign, Sign::Minus);
    }

    #[test]
    fn repeated_index_gives_zero() {
        let s = skew_canon(&[1, 1, 3], 4).unwrap();
        assert_eq!(s.indices, vec![1, 1, 3]);
        assert_eq!(s.sign, Sign::Zero);
    }

    #[test]
    fn reversal_of_three_has_three_inversions() {
        let s = skew_canon(&[3, 2, 1], 4).unwrap();
        assert_eq!(s.indices, vec![1, 2, 3]);
        assert_eq!(s.sign, Sign::Minus);
    }

    #[test]
    fn out_of_range_index_is_an_error() {
        assert!(matches!(
            skew_canon(&[0, 5], 3),
            Err(Error::IndexOutOfRange { index: 5, dim: 3 })
        ));
    }

    #[test]
    fn colex_rank_is_a_bijection() {
        for n in 0..7 {
            for k in 0..=n {
                let mut seen: Vec<usize> = combinations(n, k).map(|c| comb_rank(&c)).collect();
                assert_eq!(seen.len(), binomial(n, k));
                seen.sort_unstable();
                assert_eq!(seen, (0..binomial(n, k)).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn tuples_enumerates_cartesian_power() {
        assert_eq!(tuples(3, 2).count(), 9);
        assert_eq!(tuples(2, 0).count(), 1);
        assert_eq!(tuples(0, 2).count(), 0);
    }

    fn inversions(p: &[usize]) -> usize {
        let mut n = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    n += 1;
                }
            }
        }
        n
    }

    proptest! {
        #[test]
        fn sign_is_multiplicative_under_permutation(
            base in proptest::sample::subsequence((0..9usize).collect::<Vec<_>>(), 1..7),
            perm_seed in any::<u64>(),
        ) {
            // A random permutation of the positions, built by a seeded shuffle.
            let k = base.len();
            let mut perm: Vec<usize> = (0..k).collect();
            let mut s = perm_seed;
            for i in (1..k).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let permuted: Vec<usize> = perm.iter().map(|&p| base[p]).collect();
            let original = skew_canon(&base, 9).unwrap();
            let moved = skew_canon(&permuted, 9).unwrap();
            let sgn = Sign::from_parity(inversions(&perm) % 2 == 1);
            prop_assert_eq!(moved.sign, sgn.times(original.sign));
            prop_assert_eq!(moved.indices, original.indices);
        }
    }
}
