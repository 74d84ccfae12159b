//! Dense exact matrices and fraction-free elimination.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scalar::Scalar;
use super::vector::{self, Vector};
use crate::error::{Error, Result};

/// Row-major dense matrix. Linear maps act on column vectors, so column `j`
/// holds the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::dims("matrix entries", rows * cols, entries.len()));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from row vectors; every row must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::dims("matrix row", cols, row.len()));
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            entries,
        })
    }

    /// Convenience constructor for integer literals. Panics on ragged input.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| Scalar::from_int(x)).collect()
            })
            .collect();
        Matrix::from_rows(data, cols).expect("checked above")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = vector::zeros(self.rows);
        for (c, vc) in v.iter().enumerate() {
            if vc.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                o.add_product(self.get(r, c), vc);
            }
        }
        out
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::dims("matrix product", self.cols, rhs.rows));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.entry_mut(r, c).add_product(a, rhs.get(k, c));
                }
            }
        }
        Ok(out)
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        &(self * rhs) - &(rhs * self)
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        match eliminate(self, None) {
            Ok(done) => Ok(done.determinant),
            Err(Error::SingularMatrix) => Ok(Scalar::zero()),
            Err(e) => Err(e),
        }
    }
}

/// Unique `x` with `m x = b`.
pub fn solve_linear(m: &Matrix, b: &[Scalar]) -> Result<Vector> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if b.len() != m.rows {
        return Err(Error::dims("right-hand side", m.rows, b.len()));
    }
    let rhs = Matrix::from_entries(b.len(), 1, b.to_vec())?;
    Ok(eliminate(m, Some(rhs))?.solution.column(0))
}

pub fn invert(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(eliminate(m, Some(Matrix::identity(m.rows)))?.solution)
}

/// A basis of `{x : m x = 0}`, one vector per free column of the reduced
/// row echelon form.
pub fn nullspace(m: &Matrix) -> Vec<Vector> {
    let mut rows = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        let Some(p) = (r..m.rows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.rows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.rows {
            break;
        }
    }
    (0..m.cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vector::zeros(m.cols);
            v[free] = Scalar::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[i][free];
            }
            v
        })
        .collect()
}

struct Elimination {
    determinant: Scalar,
    solution: Matrix,
}

/// Fraction-free Gauss-Jordan elimination (Bareiss) on `[m | rhs]`.
///
/// Each row is first scaled to integers; every intermediate entry is then a
/// minor of the scaled system, so all divisions by the previous pivot are exact.
fn eliminate(m: &Matrix, rhs: Option<Matrix>) -> Result<Elimination> {
    let n = m.rows;
    let extra = rhs.as_ref().map_or(0, |r| r.cols);
    let width = n + extra;

    let mut scale_product = BigInt::one();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for r in 0..n {
        let mut row: Vec<&Scalar> = m.row(r).iter().collect();
        if let Some(b) = &rhs {
            row.extend(b.row(r));
        }
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        scale_product *= &lcm;
        rows.push(
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect(),
        );
    }

    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let pivot = (k..n)
            .find(|&r| !rows[r][k].is_zero())
            .ok_or(Error::SingularMatrix)?;
        if pivot != k {
            rows.swap(pivot, k);
            negate = !negate;
        }
        let (before, rest) = rows.split_at_mut(k);
        let (pivot_row, after) = rest.split_first_mut().expect("k < n");
        let akk = pivot_row[k].clone();
        for row in before.iter_mut().chain(after.iter_mut()) {
            let aik = row[k].clone();
            for j in 0..width {
                let num = &akk * &row[j] - &aik * &pivot_row[j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "inexact fraction-free division");
                row[j] = q;
            }
        }
        prev = akk;
    }

    // Every diagonal entry now equals `prev`, the determinant of the scaled,
    // row-permuted system.
    let mut det_scaled = prev.clone();
    if negate {
        det_scaled = -det_scaled;
    }
    let determinant = Scalar::from_big(det_scaled, scale_product)?;

    let mut solution = Matrix::zeros(n, extra);
    for (r, row) in rows.iter().enumerate() {
        for j in 0..extra {
            let value = Scalar::from_big(row[n + j].clone(), prev.clone())?;
            solution.set(r, j, value);
        }
    }
    Ok(Elimination {
        determinant,
        solution,
    })
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn nullspace_vectors_are_killed_and_counted() {
        let m = Matrix::from_ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let basis = nullspace(&m);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(vector::is_zero(&m.mul_vec(v)));
        }
        assert!(nullspace(&Matrix::identity(3)).is_empty());
        assert_eq!(nullspace(&Matrix::zeros(2, 3)).len(), 3);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = ints(&[3, -1, 7]);
        assert_eq!(solve_linear(&Matrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn solve_zero_matrix_is_singular() {
        let err = solve_linear(&Matrix::zeros(2, 2), &ints(&[1, 0])).unwrap_err();
        assert!(matches!(err, Error::SingularMatrix));
    }

    #[test]
    fn solve_two_by_two_matches_cramer() {
        // Cramer: det = -2, x = (1*4 - 2*1)/-2 = -1, y = (1*1 - 3*1)/-2 = 1.
        let m = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(solve_linear(&m, &ints(&[1, 1])).unwrap(), ints(&[-1, 1]));
        assert_eq!(m.determinant().unwrap(), Scalar::from_int(-2));
    }

    #[test]
    fn invert_rotation() {
        let m = Matrix::from_ints(&[&[0, 1], &[-1, 0]]);
        let inv = invert(&m).unwrap();
        assert_eq!(inv, Matrix::from_ints(&[&[0, -1], &[1, 0]]));
        assert_eq!(&m * &inv, Matrix::identity(2));
    }

    #[test]
    fn invert_rank_one_is_singular() {
        let m = Matrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert!(matches!(invert(&m), Err(Error::SingularMatrix)));
        assert!(m.determinant().unwrap().is_zero());
    }

    #[test]
    fn non_square_is_rejected() {
        let m = Matrix::zeros(2, 3);
        assert!(matches!(invert(&m), Err(Error::NotSquare { .. })));
        assert!(matches!(
            solve_linear(&m, &ints(&[1, 1])),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn determinant_handles_row_swaps_and_fractions() {
        let half = Scalar::new(1, 2).unwrap();
        let m = Matrix::from_rows(
            vec![
                vec![Scalar::zero(), half.clone(), Scalar::one()],
                vec![Scalar::from_int(2), Scalar::zero(), Scalar::one()],
                vec![Scalar::one(), Scalar::one(), Scalar::zero()],
            ],
            3,
        )
        .unwrap();
        // Cofactor expansion along the first row: -1/2*(0-1) + 1*(2-0) = 5/2.
        assert_eq!(m.determinant().unwrap(), Scalar::new(5, 2).unwrap());
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
        let entries = (0..n * n)
            .map(|_| Scalar::new(rng.random_range(-9..=9), rng.random_range(1..=4)).unwrap())
            .collect();
        Matrix::from_entries(n, n, entries).unwrap()
    }

    #[test]
    fn random_solves_multiply_back_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut solved = 0;
        while solved < 1000 {
            let n = rng.random_range(1..=6);
            let m = random_matrix(&mut rng, n);
            let b: Vector = (0..n)
                .map(|_| Scalar::new(rng.random_range(-9..=9), rng.random_range(1..=3)).unwrap())
                .collect();
            match solve_linear(&m, &b) {
                Ok(x) => {
                    assert_eq!(m.mul_vec(&x), b);
                    solved += 1;
                }
                Err(Error::SingularMatrix) => assert!(m.determinant().unwrap().is_zero()),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn random_inverses_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.random_range(1..=6);
            let m = random_matrix(&mut rng, n);
            if let Ok(inv) = invert(&m) {
                assert_eq!(&m * &inv, Matrix::identity(n));
                assert_eq!(&inv * &m, Matrix::identity(n));
                let det = m.determinant().unwrap();
                assert_eq!(&det * inv.determinant().unwrap(), Scalar::one());
            }
        }
    }
}
