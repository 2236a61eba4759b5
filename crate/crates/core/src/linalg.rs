//! Exact linear algebra over Q by fraction-free row reduction.
//!
//! Each row is scaled to a primitive integer vector, then eliminated with
//! integer cross-multiplication and content removal. Pivot columns are taken
//! in column order, so callers that lay out columns in graded-lex monomial
//! order get reproducible kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

/// Reduced echelon form with primitive integer rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Builds the matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has the wrong length");
            for (i, v) in col.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn echelon(&self) -> Echelon {
        reduce(integer_rows(&self.data), self.cols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Kernel basis: one vector per free column, in column order, with a 1 in
    /// its free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    if !row[f].is_zero() {
                        x[p] = -Rational::new(row[f].clone(), row[p].clone());
                    }
                }
                x
            })
            .collect()
    }

    /// A solution of `Ax = b` with all free variables zero, or `None` when inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let augmented: Vec<Vec<Rational>> = self
            .data
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let mut r = row.clone();
                r.push(bi.clone());
                r
            })
            .collect();
        let ech = reduce(integer_rows(&augmented), self.cols + 1);
        if ech.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            x[p] = Rational::new(row[self.cols].clone(), row[p].clone());
        }
        Some(x)
    }

    /// The unique minimum-Euclidean-norm solution of `Ax = b`, or `None` when inconsistent.
    ///
    /// Computed as `x = Aᵀy` with `(AAᵀ)y = b`; the result lies in the row
    /// space, so it does not depend on which particular `y` is found.
    pub fn solve_min_norm(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        let at = self.transpose();
        let gram = self.mul(&at);
        let y = gram.solve(b)?;
        let x = at.mul_vec(&y);
        (self.mul_vec(&x) == b).then_some(x)
    }
}

fn integer_rows(data: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    data.iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect()
        })
        .filter(|r: &Vec<BigInt>| r.iter().any(|c| !c.is_zero()))
        .collect()
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in row.iter_mut() {
            *c /= &g;
        }
    }
}

fn reduce(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    for r in rows.iter_mut() {
        make_primitive(r);
    }
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        if rows[next][col].is_negative() {
            for c in rows[next].iter_mut() {
                *c = -&*c;
            }
        }
        let pivot_row = rows[next].clone();
        let p = &pivot_row[col];
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (c, pc) in row.iter_mut().zip(&pivot_row) {
                *c = &*c * p - &f * pc;
            }
            make_primitive(row);
        }
        pivots.push(col);
        next += 1;
    }
    rows.truncate(next);
    Echelon { rows, pivots, cols }
}
