//! Exact rational matrix kernel: rank, linear solve, and integer nullspace
//! vectors with a prescribed nonzero coordinate. No floating point anywhere.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{HomError, Result};

/// Dense matrix over the rationals; entries stay normalized by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    Unique(Vec<BigRational>),
    Inconsistent,
    Underdetermined,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut m = Self::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.data[r * cols + c] = f(r, c);
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| BigRational::from_integer(BigInt::from(rows[i][j])))
    }

    pub fn from_biguint_rows(rows: &[Vec<BigUint>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| {
            BigRational::from_integer(rows[i][j].clone().into())
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul_int_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = BigRational::zero();
                for c in 0..self.cols {
                    acc += self.get(r, c) * BigRational::from_integer(v[c].clone());
                }
                debug_assert!(acc.is_integer());
                acc.to_integer()
            })
            .collect()
    }

    /// Row echelon reduction; returns (echelon data, pivot columns).
    fn echelon(&self) -> (Vec<BigRational>, Vec<usize>) {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..cols {
            if row >= rows {
                break;
            }
            let Some(pr) = (row..rows).find(|&r| !a[r * cols + col].is_zero()) else {
                continue;
            };
            for c in 0..cols {
                a.swap(row * cols + c, pr * cols + c);
            }
            let inv = a[row * cols + col].recip();
            for c in col..cols {
                let v = a[row * cols + c].clone() * &inv;
                a[row * cols + c] = v;
            }
            for r in 0..rows {
                if r != row && !a[r * cols + col].is_zero() {
                    let factor = a[r * cols + col].clone();
                    for c in col..cols {
                        let delta = a[row * cols + c].clone() * &factor;
                        a[r * cols + c] -= delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Exact solve of `self * x = b`.
    pub fn solve(&self, b: &[BigRational]) -> Result<SolveOutcome> {
        if b.len() != self.rows {
            return Err(HomError::Dimension(format!(
                "matrix has {} rows, vector has {}",
                self.rows,
                b.len()
            )));
        }
        // eliminate on the augmented matrix
        let mut aug = Self::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (a, pivots) = aug.echelon();
        let cols = self.cols + 1;
        if pivots.contains(&self.cols) {
            return Ok(SolveOutcome::Inconsistent);
        }
        if pivots.len() < self.cols {
            return Ok(SolveOutcome::Underdetermined);
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = a[r * cols + self.cols].clone();
        }
        Ok(SolveOutcome::Unique(x))
    }

    /// An integer vector `p` with `self * p = 0` and `p[pivot_col] != 0`,
    /// primitive with its first nonzero entry positive. Exists exactly when
    /// the pivot column lies in the span of the remaining columns (which the
    /// caller guarantees through rank facts).
    pub fn integer_nullspace_with_pivot(&self, pivot_col: usize) -> Result<Vec<BigInt>> {
        if pivot_col >= self.cols {
            return Err(HomError::Dimension(format!(
                "pivot column {pivot_col} out of range for {} columns",
                self.cols
            )));
        }
        // express the pivot column through the others: M' x = -col_pivot
        let others: Vec<usize> = (0..self.cols).filter(|&c| c != pivot_col).collect();
        let reduced = Self::from_fn(self.rows, others.len(), |r, j| {
            self.get(r, others[j]).clone()
        });
        let rhs: Vec<BigRational> = (0..self.rows)
            .map(|r| -self.get(r, pivot_col).clone())
            .collect();
        let x = match reduced.solve(&rhs)? {
            SolveOutcome::Unique(x) => x,
            SolveOutcome::Inconsistent => {
                return Err(HomError::NoSuchVector(
                    "pivot column is independent of the remaining columns".into(),
                ))
            }
            SolveOutcome::Underdetermined => {
                return Err(HomError::NoSuchVector(
                    "remaining columns are linearly dependent".into(),
                ))
            }
        };
        let mut p = vec![BigRational::zero(); self.cols];
        for (j, &c) in others.iter().enumerate() {
            p[c] = x[j].clone();
        }
        p[pivot_col] = BigRational::one();
        Ok(normalize_to_integers(&p))
    }
}

/// Clears denominators by their lcm and divides by the gcd; flips signs so
/// the first nonzero entry is positive.
fn normalize_to_integers(v: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for x in &mut ints {
            *x /= &gcd;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                *x = -x.clone();
            }
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn rank_examples() {
        let m = RationalMatrix::from_i64_rows(&[vec![2, 3], vec![2, 4]]);
        assert_eq!(m.rank(), 2);
        let m = RationalMatrix::from_i64_rows(&[vec![2, 3, 3], vec![2, 4, 6], vec![0, 2, 6]]);
        assert_eq!(m.rank(), 2);
        let id = RationalMatrix::from_fn(4, 4, |i, j| if i == j { rat(1) } else { rat(0) });
        assert_eq!(id.rank(), 4);
    }

    #[test]
    fn rank_transpose_invariant() {
        let m = RationalMatrix::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_unique_and_tagged() {
        let m = RationalMatrix::from_i64_rows(&[vec![2, 3], vec![2, 4]]);
        match m.solve(&[rat(3), rat(6)]).unwrap() {
            SolveOutcome::Unique(x) => {
                // 2x + 3y = 3, 2x + 4y = 6 -> y = 3, x = -3
                assert_eq!(x[0], rat(-3));
                assert_eq!(x[1], rat(3));
            }
            other => panic!("expected unique solution, got {other:?}"),
        }
        let singular = RationalMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(
            singular.solve(&[rat(1), rat(2)]).unwrap(),
            SolveOutcome::Underdetermined
        );
        assert_eq!(
            singular.solve(&[rat(1), rat(3)]).unwrap(),
            SolveOutcome::Inconsistent
        );
        assert!(m.solve(&[rat(1)]).is_err());
    }

    #[test]
    fn nullspace_pivot_basics() {
        let m = RationalMatrix::from_i64_rows(&[vec![1, 1]]);
        let p = m.integer_nullspace_with_pivot(1).unwrap();
        assert_eq!(m.mul_int_vec(&p), vec![BigInt::from(0)]);
        assert!(!p[1].is_zero());
        // primitive, first nonzero positive
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(-1)]);
    }

    #[test]
    fn nullspace_on_dependency_matrix() {
        let m = RationalMatrix::from_i64_rows(&[vec![2, 3, 3], vec![2, 4, 6], vec![0, 2, 6]]);
        let p = m.integer_nullspace_with_pivot(2).unwrap();
        assert!(m.mul_int_vec(&p).iter().all(|x| x.is_zero()));
        assert!(!p[2].is_zero());
    }

    #[test]
    fn nullspace_rejects_independent_pivot() {
        let m = RationalMatrix::from_i64_rows(&[vec![1, 0], vec![0, 1]]);
        assert!(matches!(
            m.integer_nullspace_with_pivot(1),
            Err(HomError::NoSuchVector(_))
        ));
    }

    #[test]
    fn solve_identity_on_random_invertible() {
        // fixed pseudo-random invertible-ish matrices, retry shift keeps them nonsingular
        let entries = [
            [3, 1, 4, 1, 5],
            [9, 2, 6, 5, 3],
            [5, 8, 9, 7, 9],
            [3, 2, 3, 8, 4],
            [6, 2, 6, 4, 3],
        ];
        let m = RationalMatrix::from_fn(5, 5, |i, j| rat(entries[i][j]));
        assert_eq!(m.rank(), 5);
        let b: Vec<BigRational> = (0..5).map(|i| rat(i as i64 + 1)).collect();
        match m.solve(&b).unwrap() {
            SolveOutcome::Unique(x) => {
                for r in 0..5 {
                    let mut acc = BigRational::zero();
                    for c in 0..5 {
                        acc += m.get(r, c) * &x[c];
                    }
                    assert_eq!(acc, b[r]);
                }
            }
            other => panic!("expected unique, got {other:?}"),
        }
    }
}
