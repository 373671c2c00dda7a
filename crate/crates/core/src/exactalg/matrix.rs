//! Dense matrices over an exact [`Field`].

use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct DenseMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    pub reduced: DenseMatrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> fmt::Debug for DenseMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.field.render(self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> DenseMatrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        Self {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            field,
            rows,
            cols,
            entries,
        }
    }

    /// Rows of integers, reduced into `field`. All rows must have equal length.
    pub fn from_i64_rows(field: F, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows.iter().flatten().map(|&v| field.from_i64(v)).collect();
        Self::new(field, r, c, entries)
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: F, rows: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("column length".into()));
        }
        let cols = columns.len();
        Ok(Self::from_fn(field, rows, cols, |i, j| columns[j][i].clone()))
    }

    /// Matrix whose rows are the given vectors (each of length `cols`).
    pub fn from_rows(field: F, cols: usize, rows: &[Vec<F::Elem>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("row length".into()));
        }
        let entries = rows.iter().flatten().cloned().collect();
        Self::new(field, rows.len(), cols, entries)
    }

    pub fn field(&self) -> &F {
        &self.field
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

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        self.entries[i * self.cols + j] = v;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<F::Elem> {
        self.entries
    }

    pub fn row(&self, i: usize) -> Vec<F::Elem> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Self::new(self.field.clone(), self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Self::new(self.field.clone(), self.rows, self.cols, entries)
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let entries = self.entries.iter().map(|a| self.field.mul(a, s)).collect();
        Self {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    let prod = f.mul(a, other.get(k, j));
                    out.entries[idx] = f.add(&out.entries[idx], &prod);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(self.get(i, j), &v[j])))
            })
            .collect())
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.field.clone(), self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> F::Elem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// Gauss-Jordan elimination, pivoting on the first nonzero entry of each column.
    pub fn echelon(&self) -> Echelon<F> {
        let order: Vec<usize> = (0..self.rows).collect();
        self.echelon_with_row_order(&order)
    }

    /// Gauss-Jordan elimination where candidate pivot rows are scanned in `order`.
    /// The rank does not depend on the order; the tests use this to compare
    /// different pivot sequences.
    pub fn echelon_with_row_order(&self, order: &[usize]) -> Echelon<F> {
        let f = self.field.clone();
        let mut m = Self::from_fn(f.clone(), self.rows, self.cols, |i, j| {
            self.get(order[i], j).clone()
        });
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right null space `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(reduced.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let augmented = Self::from_fn(f.clone(), self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let Echelon { reduced, pivots } = augmented.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.field;
        let aug = Self::from_fn(f.clone(), n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(f.clone(), n, n, |i, j| reduced.get(i, n + j).clone()))
    }

    pub fn determinant(&self) -> Result<F::Elem> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot)?;
            for i in c + 1..n {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

/// Rank of a family of vectors of equal length.
pub fn span_rank<F: Field>(field: &F, len: usize, vectors: &[Vec<F::Elem>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    DenseMatrix::from_rows(field.clone(), len, vectors)
        .expect("equal-length vectors")
        .rank()
}

/// Indices of a maximal independent subfamily, chosen greedily in order.
pub fn independent_subset<F: Field>(field: &F, len: usize, vectors: &[Vec<F::Elem>]) -> Vec<usize> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = DenseMatrix::from_columns(field.clone(), len, vectors).expect("equal-length vectors");
    m.echelon().pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{PrimeField, Rationals};

    fn q(rows: &[Vec<i64>]) -> DenseMatrix<Rationals> {
        DenseMatrix::from_i64_rows(Rationals, rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(DenseMatrix::identity(Rationals, 3).rank(), 3);
        assert_eq!(DenseMatrix::zeros(Rationals, 4, 4).rank(), 0);
        assert_eq!(q(&[vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(DenseMatrix::identity(Rationals, 2).kernel_basis().is_empty());

        let m = q(&[vec![1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let f = Rationals;
        assert_eq!(k[0][0], f.neg(&k[0][1]));
        assert!(!f.is_zero(&k[0][0]));

        let f5 = PrimeField::new(5).unwrap();
        let z = DenseMatrix::from_i64_rows(f5, &[vec![0, 0]]).unwrap();
        let k = z.kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(span_rank(&f5, 2, &k), 2);
    }

    #[test]
    fn solve_examples() {
        let f = Rationals;
        let id = DenseMatrix::identity(f, 3);
        let b = vec![f.from_i64(4), f.from_i64(-1), f.from_i64(7)];
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);

        let a = q(&[vec![1, 0], vec![0, 0]]);
        assert_eq!(a.solve(&[f.zero(), f.one()]).unwrap(), None);

        let a = q(&[vec![1, 1]]);
        let x = a.solve(&[f.from_i64(2)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![f.from_i64(2)]);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = q(&[vec![1, 1]]);
        assert!(a.solve(&[Rationals.one(), Rationals.one()]).is_err());
    }

    #[test]
    fn inverse_and_determinant() {
        let f = PrimeField::new(101).unwrap();
        let m = DenseMatrix::from_i64_rows(f, &[vec![2, 1], vec![7, 4]]).unwrap();
        assert_eq!(m.determinant().unwrap(), 1);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), DenseMatrix::identity(f, 2));
        let s = DenseMatrix::from_i64_rows(f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert_eq!(s.determinant().unwrap(), 0);
    }

    #[test]
    fn mismatched_shapes() {
        let a = DenseMatrix::zeros(Rationals, 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.add(&DenseMatrix::zeros(Rationals, 3, 2)).is_err());
        assert!(DenseMatrix::new(Rationals, 2, 2, vec![Rationals.one()]).is_err());
    }
}
