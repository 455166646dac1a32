//! Dense exact-rational matrices and the handful of integer routines the rest
//! of the crate needs: fraction-free rank, linear solves, inversion, nullspace
//! and Smith normal form. Everything is arbitrary precision; no floats.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Result, TlError};

pub type Q = BigRational;

pub fn q_int(v: i64) -> Q {
    BigRational::from_integer(BigInt::from(v))
}

/// Row-major dense matrix over exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl std::fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| q_int(rows[i][j]))
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Q]) {
        assert_eq!(col.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = col[i].clone();
        }
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            m.set_column(j, col);
        }
        m
    }

    /// Matrix product, skipping zero entries; the representation matrices in
    /// this crate stay sparse under products so this matters in practice.
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    let cell = &mut out[(i, j)];
                    *cell = &*cell + prod;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = &*a + b;
        }
        out
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = &*a - b;
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Q::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() || v[j].is_zero() {
                    continue;
                }
                out[i] = &out[i] + a * &v[j];
            }
        }
        out
    }

    /// Exact rank by fraction-free (Bareiss) elimination: denominators are
    /// cleared row by row and the elimination stays in BigInt.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let lcm = (0..self.cols).fold(BigInt::one(), |acc, j| {
                    acc.lcm(self[(i, j)].denom())
                });
                (0..self.cols)
                    .map(|j| {
                        let e = &self[(i, j)];
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect()
            })
            .collect();
        bareiss_rank(&mut m)
    }

    /// Solve `self * X = rhs` for any one solution, or None if inconsistent.
    pub fn solve(&self, rhs: &QMatrix) -> Option<QMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.rows;
        let m = self.cols;
        let k = rhs.cols;
        let mut aug = QMatrix::zeros(n, m + k);
        for i in 0..n {
            for j in 0..m {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..k {
                aug[(i, m + j)] = rhs[(i, j)].clone();
            }
        }
        let pivots = aug.reduce(m);
        // Inconsistent if any nonzero row lives only in the rhs block.
        for i in 0..n {
            let lhs_zero = (0..m).all(|j| aug[(i, j)].is_zero());
            let rhs_zero = (m..m + k).all(|j| aug[(i, j)].is_zero());
            if lhs_zero && !rhs_zero {
                return None;
            }
        }
        let mut x = QMatrix::zeros(m, k);
        for (row, col) in pivots.iter().enumerate() {
            for j in 0..k {
                x[(*col, j)] = aug[(row, m + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let x = self.solve(&QMatrix::identity(n))?;
        if self.mul(&x) == QMatrix::identity(n) {
            Some(x)
        } else {
            None
        }
    }

    /// Basis of the right nullspace, as columns.
    pub fn nullspace(&self) -> QMatrix {
        let mut red = self.clone();
        let pivots = red.reduce(self.cols);
        let pivot_cols: Vec<usize> = pivots.clone();
        let free_cols: Vec<usize> = (0..self.cols)
            .filter(|c| !pivot_cols.contains(c))
            .collect();
        let mut basis = QMatrix::zeros(self.cols, free_cols.len());
        for (b, &fc) in free_cols.iter().enumerate() {
            basis[(fc, b)] = Q::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                basis[(pc, b)] = -red[(row, fc)].clone();
            }
        }
        basis
    }

    /// In-place reduced row echelon form of the first `lhs_cols` columns
    /// (remaining columns are carried along). Returns pivot column indices.
    fn reduce(&mut self, lhs_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..lhs_cols {
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                let tmp = self[(p, j)].clone();
                self[(p, j)] = self[(row, j)].clone();
                self[(row, j)] = tmp;
            }
            let inv = self[(row, col)].clone();
            for j in 0..self.cols {
                self[(row, j)] = &self[(row, j)] / &inv;
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for j in 0..self.cols {
                        let delta = &factor * &self[(row, j)];
                        self[(r, j)] = &self[(r, j)] - delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }
}

/// Fraction-free Gaussian elimination over the integers (Bareiss), returning
/// the rank. Consumes the matrix.
fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        for r in row + 1..rows {
            for c in col + 1..cols {
                let num = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                m[r][c] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Integer matrix used for boundary operators and torsion computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl std::ops::Index<(usize, usize)> for ZMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ZMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl ZMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rational(&self) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |i, j| {
            BigRational::from_integer(self[(i, j)].clone())
        })
    }

    /// Invariant factors d_1 | d_2 | ... of the Smith normal form, nontrivial
    /// and trivial alike (all positive, ones included).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut m = self.clone();
        let mut factors = Vec::new();
        let mut top = 0;
        loop {
            let Some((pi, pj)) = m.smallest_nonzero(top) else {
                break;
            };
            m.swap_rows(top, pi);
            m.swap_cols(top, pj);
            // Clear the pivot row and column; restart if a remainder shrinks
            // the pivot.
            let mut again = false;
            for r in top + 1..m.rows {
                if m[(r, top)].is_zero() {
                    continue;
                }
                let q = &m[(r, top)] / &m[(top, top)];
                m.row_sub(r, top, &q);
                if !m[(r, top)].is_zero() {
                    again = true;
                }
            }
            for c in top + 1..m.cols {
                if m[(top, c)].is_zero() {
                    continue;
                }
                let q = &m[(top, c)] / &m[(top, top)];
                m.col_sub(c, top, &q);
                if !m[(top, c)].is_zero() {
                    again = true;
                }
            }
            if again {
                continue;
            }
            // Pivot must divide every remaining entry; if not, fold the
            // offending row in and retry.
            let mut fixed = true;
            'scan: for r in top + 1..m.rows {
                for c in top + 1..m.cols {
                    if (&m[(r, c)] % &m[(top, top)]).is_zero() {
                        continue;
                    }
                    m.row_add(top, r);
                    fixed = false;
                    break 'scan;
                }
            }
            if !fixed {
                continue;
            }
            factors.push(m[(top, top)].abs());
            top += 1;
            if top == m.rows || top == m.cols {
                break;
            }
        }
        factors
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].clone()).collect())
            .collect();
        bareiss_rank(&mut rows)
    }

    fn smallest_nonzero(&self, from: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in from..self.rows {
            for j in from..self.cols {
                if self[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if self[(i, j)].abs() < self[(bi, bj)].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let x = self[(a, j)].clone();
            self[(a, j)] = self[(b, j)].clone();
            self[(b, j)] = x;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let x = self[(i, a)].clone();
            self[(i, a)] = self[(i, b)].clone();
            self[(i, b)] = x;
        }
    }

    fn row_sub(&mut self, r: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let delta = q * &self[(src, j)];
            self[(r, j)] = &self[(r, j)] - delta;
        }
    }

    fn col_sub(&mut self, c: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let delta = q * &self[(i, src)];
            self[(i, c)] = &self[(i, c)] - delta;
        }
    }

    fn row_add(&mut self, r: usize, src: usize) {
        for j in 0..self.cols {
            let delta = self[(src, j)].clone();
            self[(r, j)] = &self[(r, j)] + delta;
        }
    }
}

/// Incremental echelon-form accumulator for span computations. Keeps the
/// original inserted vectors alongside the reduced forms.
pub struct SpanBasis {
    dim: usize,
    reduced: Vec<Vec<Q>>,
    pivots: Vec<usize>,
    originals: Vec<Vec<Q>>,
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        SpanBasis {
            dim,
            reduced: Vec::new(),
            pivots: Vec::new(),
            originals: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.originals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.originals.is_empty()
    }

    pub fn originals(&self) -> &[Vec<Q>] {
        &self.originals
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for (b, &p) in self.reduced.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let factor = w[p].clone();
                for (wi, bi) in w.iter_mut().zip(b) {
                    let delta = &factor * bi;
                    *wi = &*wi - delta;
                }
            }
        }
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].clone();
        for wi in w.iter_mut() {
            *wi = &*wi / &inv;
        }
        self.reduced.push(w);
        self.pivots.push(p);
        self.originals.push(v.to_vec());
        true
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        for (b, &p) in self.reduced.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let factor = w[p].clone();
                for (wi, bi) in w.iter_mut().zip(b) {
                    let delta = &factor * bi;
                    *wi = &*wi - delta;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    /// Matrix whose columns are the inserted (original) basis vectors.
    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_columns(self.dim, &self.originals)
    }
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let parts: Vec<&str> = s.split('/').collect();
    let bad = || TlError::Other(format!("cannot parse rational: {s:?}"));
    match parts.as_slice() {
        [a] => {
            let n: BigInt = a.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        [a, b] => {
            let n: BigInt = a.parse().map_err(|_| bad())?;
            let d: BigInt = b.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent rank oracle: plain rational row reduction, no Bareiss.
    fn rref_rank(m: &QMatrix) -> usize {
        let mut a = m.clone();
        let mut rank = 0;
        for col in 0..a.cols() {
            let Some(p) = (rank..a.rows()).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            for j in 0..a.cols() {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(rank, j)].clone();
                a[(rank, j)] = tmp;
            }
            for r in 0..a.rows() {
                if r != rank && !a[(r, col)].is_zero() {
                    let f = &a[(r, col)] / &a[(rank, col)];
                    for j in 0..a.cols() {
                        let delta = &f * &a[(rank, j)];
                        a[(r, j)] = &a[(r, j)] - delta;
                    }
                }
            }
            rank += 1;
            if rank == a.rows() {
                break;
            }
        }
        rank
    }

    /// Independent SNF oracle: i-th determinantal divisor as the gcd of all
    /// i x i minors; invariant factors are their successive quotients.
    fn determinantal_divisor_factors(m: &ZMatrix) -> Vec<BigInt> {
        fn minors(m: &ZMatrix, k: usize) -> Vec<BigInt> {
            fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
                if k == 0 {
                    return vec![vec![]];
                }
                let mut out = Vec::new();
                for first in 0..n {
                    for mut rest in combos(n - first - 1, k - 1) {
                        for r in rest.iter_mut() {
                            *r += first + 1;
                        }
                        rest.insert(0, first);
                        out.push(rest);
                    }
                }
                out
            }
            fn det(m: &ZMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
                if rows.len() == 1 {
                    return m[(rows[0], cols[0])].clone();
                }
                let mut acc = BigInt::zero();
                for (i, &r) in rows.iter().enumerate() {
                    let sub_rows: Vec<usize> =
                        rows.iter().cloned().filter(|&x| x != r).collect();
                    let term = &m[(r, cols[0])] * det(m, &sub_rows, &cols[1..]);
                    if i % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                acc
            }
            let mut out = Vec::new();
            for rows in combos(m.rows(), k) {
                for cols in combos(m.cols(), k) {
                    out.push(det(m, &rows, &cols));
                }
            }
            out
        }
        let r = m.rank();
        let mut factors = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=r {
            let g = minors(m, k)
                .into_iter()
                .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
            factors.push(&g / &prev);
            prev = g;
        }
        factors
    }

    fn zmat(rows: &[&[i64]]) -> ZMatrix {
        let mut m = ZMatrix::zeros(rows.len(), rows[0].len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    #[test]
    fn bareiss_rank_matches_rref_oracle() {
        let cases: Vec<QMatrix> = vec![
            QMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]),
            QMatrix::from_int_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]),
            QMatrix::from_int_rows(&[vec![0, 0], vec![0, 0]]),
            QMatrix::from_int_rows(&[vec![2, 0, 1], vec![0, 3, 1]]),
            QMatrix::identity(5),
        ];
        for m in &cases {
            assert_eq!(m.rank(), rref_rank(m));
        }
    }

    #[test]
    fn rank_handles_rational_entries() {
        let mut m = QMatrix::zeros(2, 2);
        m[(0, 0)] = BigRational::new(BigInt::from(1), BigInt::from(2));
        m[(0, 1)] = BigRational::new(BigInt::from(1), BigInt::from(3));
        m[(1, 0)] = BigRational::new(BigInt::from(3), BigInt::from(2));
        m[(1, 1)] = BigRational::new(BigInt::from(1), BigInt::from(1));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_and_inverse_round_trip() {
        let a = QMatrix::from_int_rows(&[vec![2, 1, 0], vec![1, 1, 1], vec![0, 3, 1]]);
        let inv = a.inverse().expect("invertible");
        assert_eq!(a.mul(&inv), QMatrix::identity(3));
        assert_eq!(inv.mul(&a), QMatrix::identity(3));

        let singular = QMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());

        let rhs = QMatrix::from_int_rows(&[vec![1], vec![3]]);
        assert!(singular.solve(&rhs).is_none());
        let ok_rhs = QMatrix::from_int_rows(&[vec![1], vec![2]]);
        let wide = QMatrix::from_int_rows(&[vec![1, 0, 1], vec![0, 1, 1]]);
        let x = wide.solve(&ok_rhs).expect("consistent");
        assert_eq!(wide.mul(&x), ok_rhs);
    }

    #[test]
    fn nullspace_is_killed_by_matrix() {
        let a = QMatrix::from_int_rows(&[vec![1, 2, 3], vec![4, 5, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.cols(), 1);
        assert!(a.mul(&ns).is_zero());
    }

    #[test]
    fn smith_factors_match_determinantal_divisor_oracle() {
        let cases = vec![
            zmat(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]),
            zmat(&[&[1, 0], &[0, 2]]),
            zmat(&[&[2, 0], &[0, 2]]),
            zmat(&[&[0, 0], &[0, 0]]),
            zmat(&[&[3, 1, -4], &[2, -3, 1], &[-4, 2, 3]]),
            zmat(&[&[6, 10], &[10, 6]]),
        ];
        for m in &cases {
            assert_eq!(m.invariant_factors(), determinantal_divisor_factors(m));
        }
    }

    #[test]
    fn span_basis_tracks_dimension() {
        let mut sp = SpanBasis::new(3);
        assert!(sp.insert(&[q_int(1), q_int(0), q_int(1)]));
        assert!(sp.insert(&[q_int(0), q_int(1), q_int(0)]));
        assert!(!sp.insert(&[q_int(2), q_int(3), q_int(2)]));
        assert_eq!(sp.len(), 2);
        assert!(sp.contains(&[q_int(5), q_int(-1), q_int(5)]));
        assert!(!sp.contains(&[q_int(0), q_int(0), q_int(1)]));
    }

    #[test]
    fn parse_rational_accepts_both_forms() {
        assert_eq!(parse_rational("3").unwrap(), q_int(3));
        assert_eq!(
            parse_rational("-5/10").unwrap(),
            BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
