//! Dense matrices over cyclotomic fields with exact Gaussian elimination.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Cyclotomic;
use crate::error::{Error, Result};

pub type Vector = Vec<Cyclotomic>;

#[derive(Clone, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

/// Solution set of `M·x = b`: one particular solution plus a kernel basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution {
    pub particular: Vector,
    pub kernel: Vec<Vector>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Cyclotomic::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Cyclotomic::one())
    }

    pub fn scalar(n: usize, value: &Cyclotomic) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = value.clone();
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Cyclotomic,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension(
                "column length differs from row count".into(),
            ));
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
    }

    pub fn diagonal(values: &[Cyclotomic]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = v.clone();
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Cyclotomic) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }

    pub fn trace(&self) -> Cyclotomic {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, factor: &Cyclotomic) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| if x.is_zero() { x.clone() } else { x * factor })
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Kronecker product; `self` indexes the outer blocks.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Block `(block_row, block_col)` of size `size × size`.
    pub fn block(&self, block_row: usize, block_col: usize, size: usize) -> Self {
        Self::from_fn(size, size, |i, j| {
            self.get(block_row * size + i, block_col * size + j).clone()
        })
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "hstack {} vs {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "vstack {} vs {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Cyclotomic::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, exp: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = Self::identity(self.rows);
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    /// Reduced row echelon form; pivots are the first nonzero entry in each column.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            if !inv.is_one() {
                for j in col..m.cols {
                    let idx = row * m.cols + j;
                    if !m.data[idx].is_zero() {
                        m.data[idx] = &m.data[idx] * &inv;
                    }
                }
            }
            let pivot_row: Vec<(usize, Cyclotomic)> = (col..m.cols)
                .filter(|&j| !m.get(row, j).is_zero())
                .map(|j| (j, m.get(row, j).clone()))
                .collect();
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for (j, v) in &pivot_row {
                    let idx = r * m.cols + j;
                    m.data[idx] -= &(&factor * v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vector> {
        let Echelon { reduced, pivots } = self.echelon();
        kernel_from_echelon(&reduced, &pivots)
    }

    /// All solutions of `self · x = b`.
    pub fn solve_affine(&self, b: &[Cyclotomic]) -> Result<AffineSolution> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "rhs has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = ExactMatrix::from_fn(self.rows, 1, |i, _| b[i].clone());
        let Echelon { reduced, pivots } = self.hstack(&rhs)?.echelon();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Infeasible);
        }
        let mut particular = vec![Cyclotomic::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            particular[p] = reduced.get(r, self.cols).clone();
        }
        let coefficients =
            ExactMatrix::from_fn(reduced.rows, self.cols, |i, j| reduced.get(i, j).clone());
        Ok(AffineSolution {
            particular,
            kernel: kernel_from_echelon(&coefficients, &pivots),
        })
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let Echelon { reduced, pivots } = self.hstack(&Self::identity(n)).ok()?.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| reduced.get(i, n + j).clone()))
    }
}

fn kernel_from_echelon(reduced: &ExactMatrix, pivots: &[usize]) -> Vec<Vector> {
    let cols = reduced.cols;
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Cyclotomic::zero(); cols];
            v[f] = Cyclotomic::one();
            for (r, &p) in pivots.iter().enumerate() {
                let x = reduced.get(r, f);
                if !x.is_zero() {
                    v[p] = -x;
                }
            }
            v
        })
        .collect()
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &'a ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;

    fn add(self, rhs: &'a ExactMatrix) -> ExactMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix sum dimension mismatch"
        );
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;

    fn sub(self, rhs: &'a ExactMatrix) -> ExactMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix difference dimension mismatch"
        );
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;

    fn neg(self) -> ExactMatrix {
        self.map(|x| -x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, zeta};
    use proptest::prelude::*;

    fn int_matrix(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Cyclotomic::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(ExactMatrix::identity(3).kernel().is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        assert_eq!(ExactMatrix::zeros(2, 3).kernel().len(), 3);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = int_matrix(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Cyclotomic::is_zero));
        }
    }

    #[test]
    fn solve_identity() {
        let b = vec![q(1, 2), zeta(6, 1), Cyclotomic::from_int(-4)];
        let sol = ExactMatrix::identity(3).solve_affine(&b).unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn solve_zero_with_nonzero_rhs_is_infeasible() {
        let b = vec![Cyclotomic::one(), Cyclotomic::zero()];
        assert_eq!(
            ExactMatrix::zeros(2, 2).solve_affine(&b),
            Err(Error::Infeasible)
        );
    }

    #[test]
    fn inverse_over_cyclotomics() {
        let w = zeta(6, 1);
        let m = ExactMatrix::from_rows(vec![
            vec![w.clone(), Cyclotomic::one()],
            vec![Cyclotomic::zero(), w.conj()],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, ExactMatrix::identity(2));
        assert!(ExactMatrix::zeros(2, 2).inverse().is_none());
    }

    #[test]
    fn kron_dimensions_and_blocks() {
        let a = int_matrix(&[&[1, 2], &[3, 4]]);
        let b = ExactMatrix::identity(3);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
        assert_eq!(
            k.block(1, 0, 3),
            ExactMatrix::scalar(3, &Cyclotomic::from_int(3))
        );
    }

    fn small_matrix() -> impl Strategy<Value = ExactMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec((-2i64..3, 0i64..6), r * c).prop_map(move |entries| {
                let data: Vec<Cyclotomic> = entries
                    .into_iter()
                    .map(|(a, k)| &q(a, 1) * &zeta(6, k))
                    .collect();
                ExactMatrix::from_fn(r, c, |i, j| data[i * c + j].clone())
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let kernel = m.kernel();
            prop_assert_eq!(m.rank() + kernel.len(), m.cols());
            for v in &kernel {
                prop_assert!(m.mul_vec(v).iter().all(Cyclotomic::is_zero));
            }
        }

        #[test]
        fn rank_of_adjoint(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.conj_transpose().rank());
            prop_assert_eq!(m.conj_transpose().conj_transpose(), m);
        }

        #[test]
        fn affine_solutions_resubstitute(m in small_matrix(), seed in prop::collection::vec(-3i64..4, 4)) {
            let x: Vec<Cyclotomic> = (0..m.cols()).map(|i| Cyclotomic::from_int(seed[i % seed.len()])).collect();
            let b = m.mul_vec(&x);
            let sol = m.solve_affine(&b).unwrap();
            let residual = m.mul_vec(&sol.particular);
            prop_assert_eq!(residual, b);
            for v in &sol.kernel {
                prop_assert!(m.mul_vec(v).iter().all(Cyclotomic::is_zero));
            }
        }
    }
}
