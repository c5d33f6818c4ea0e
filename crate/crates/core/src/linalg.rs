//! Exact linear algebra over the rationals.
//!
//! Everything that ends up as a dimension count goes through here. There is
//! no floating point anywhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Dense row-major matrix with rational entries.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self[(r, c)].to_string()).collect())
            .collect();
        write!(f, "QMatrix{rows:?}")
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        QMatrix {
            rows,
            cols,
            data: entries.iter().map(|&v| rat(v)).collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = v.clone();
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Columns `start..start+len` as a new matrix.
    pub fn column_block(&self, start: usize, len: usize) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows, len);
        for r in 0..self.rows {
            for c in 0..len {
                out[(r, c)] = self[(r, start + c)].clone();
            }
        }
        out
    }

    /// Rows `start..start+len` as a new matrix.
    pub fn row_block(&self, start: usize, len: usize) -> QMatrix {
        let mut out = QMatrix::zeros(len, self.cols);
        for r in 0..len {
            for c in 0..self.cols {
                out[(r, c)] = self[(start + r, c)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = m[(lead, col)].recip();
            for c in col..m.cols {
                let v = &m[(lead, c)] * &inv;
                m[(lead, c)] = v;
            }
            for r in 0..m.rows {
                if r == lead || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let sub = &factor * &m[(lead, c)];
                    if !sub.is_zero() {
                        m[(r, c)] -= sub;
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rational::one();
        }
        let Rref { matrix, pivots } = aug.rref();
        if (0..n).any(|i| pivots.get(i) != Some(&i)) {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = matrix[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel, one column per basis vector, scaled to be integral.
    pub fn kernel(&self) -> QMatrix {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -matrix[(row, f)].clone();
            }
            basis.push(integralize(v));
        }
        QMatrix::from_columns(self.cols, &basis)
    }

    /// Quotient map onto the cokernel of `self`.
    ///
    /// Returns a matrix `q` with `q * self = 0` whose row count is
    /// `self.rows() - rank`; `q` is surjective.
    pub fn cokernel_map(&self) -> QMatrix {
        quotient_map(self.rows, &self.transpose())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
}

/// Quotient map `k^dim -> k^dim / span(rows of generators)`.
///
/// The quotient coordinates are the non-pivot coordinates after reduction
/// against the echelon basis of the subspace.
pub fn quotient_map(dim: usize, generators: &QMatrix) -> QMatrix {
    debug_assert_eq!(generators.cols(), dim);
    let Rref { matrix, pivots } = generators.rref();
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let mut q = QMatrix::zeros(free.len(), dim);
    for (s, &j) in free.iter().enumerate() {
        q[(s, j)] = Rational::one();
        for (t, &p) in pivots.iter().enumerate() {
            let coeff = &matrix[(t, j)];
            if !coeff.is_zero() {
                q[(s, p)] = -coeff.clone();
            }
        }
    }
    q
}

/// Scales a rational vector by the lcm of its denominators and divides by
/// the gcd of the resulting numerators.
pub fn integralize(v: Vec<Rational>) -> Vec<Rational> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    let sign_flip = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| {
            let y = x / &g;
            Rational::from_integer(if sign_flip { -y } else { y })
        })
        .collect()
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..rows {
            let lead = m[r][col].clone();
            for c in col..cols {
                let v = (&pivot * &m[r][c] - &lead * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank of the span of a set of vectors of length `dim`.
pub fn span_rank(dim: usize, vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() || dim == 0 {
        return 0;
    }
    QMatrix::from_columns(dim, vectors).rank()
}

/// Echelon basis of the span of `vectors` (each of length `dim`).
pub fn span_basis(dim: usize, vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if vectors.is_empty() || dim == 0 {
        return Vec::new();
    }
    let mut rows = QMatrix::zeros(vectors.len(), dim);
    for (r, v) in vectors.iter().enumerate() {
        for (c, x) in v.iter().enumerate() {
            rows[(r, c)] = x.clone();
        }
    }
    let Rref { matrix, pivots } = rows.rref();
    (0..pivots.len()).map(|r| matrix.row(r).to_vec()).collect()
}
