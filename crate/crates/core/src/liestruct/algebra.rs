use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::exactalg::matrix::span_rank;
use crate::exactalg::{DenseMatrix, Field};

pub type Mat<F> = DenseMatrix<F>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Gl,
    Sl,
    Custom,
}

/// `x y - y x`.
pub fn bracket<F: Field>(x: &Mat<F>, y: &Mat<F>) -> Result<Mat<F>> {
    if !x.is_square() || x.rows() != y.rows() || x.cols() != y.cols() {
        return Err(Error::DimensionMismatch(format!(
            "bracket of {}x{} and {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    x.mul(y)?.sub(&y.mul(x)?)
}

/// `e_{ij}`.
pub fn elementary<F: Field>(field: &F, n: usize, i: usize, j: usize) -> Mat<F> {
    let mut m = Mat::zeros(field.clone(), n, n);
    m.set(i, j, field.one());
    m
}

/// Nilpotent Jordan matrix with superdiagonal blocks of sizes `lambda`.
pub fn jordan_matrix<F: Field>(field: &F, lambda: &Partition) -> Mat<F> {
    let n = lambda.n();
    let mut m = Mat::zeros(field.clone(), n, n);
    let mut start = 0;
    for &b in lambda.parts() {
        for k in 0..b.saturating_sub(1) {
            m.set(start + k, start + k + 1, field.one());
        }
        start += b;
    }
    m
}

/// Jordan type of a nilpotent matrix, read off from `rank(x^k)`.
pub fn jordan_type<F: Field>(x: &Mat<F>) -> Result<Partition> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch("jordan type of a non-square matrix".into()));
    }
    let n = x.rows();
    let mut ranks = vec![n];
    let mut power = Mat::identity(x.field().clone(), n);
    for _ in 0..n {
        power = power.mul(x)?;
        ranks.push(power.rank());
    }
    if ranks[n] != 0 {
        return Err(Error::NotNilpotent);
    }
    // lambda'_k = rank(x^{k-1}) - rank(x^k)
    let dual: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).filter(|&d| d > 0).collect();
    Ok(Partition::new(dual)
        .map_err(|_| Error::NotNilpotent)?
        .transpose())
}

/// A Lie algebra of `n x n` matrices with the trace pairing `<X, Y> = tr(XY)`.
#[derive(Debug, Clone)]
pub struct MatrixLieAlgebra<F: Field> {
    field: F,
    n: usize,
    kind: AlgebraKind,
    basis: Vec<Mat<F>>,
    // coordinates: solve on `pivot_rows` of the flattened basis
    pivot_rows: Vec<usize>,
    pivot_inverse: Mat<F>,
    pairing_nondegenerate: bool,
}

impl<F: Field> MatrixLieAlgebra<F> {
    pub fn gl(field: F, n: usize) -> Self {
        let basis = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| elementary(&field, n, i, j))
            .collect();
        Self::build(field, n, AlgebraKind::Gl, basis).expect("gl_n basis is valid")
    }

    /// Basis: `e_ij` for `i < j` (row-major), then `h_i = e_ii - e_{i+1,i+1}`,
    /// then `e_ji` for `i < j`. For `n = 2` this is `(E, H, F)`.
    pub fn sl(field: F, n: usize) -> Self {
        let mut basis = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                basis.push(elementary(&field, n, i, j));
            }
        }
        for i in 0..n.saturating_sub(1) {
            basis.push(cartan_element(&field, n, i));
        }
        for i in 0..n {
            for j in i + 1..n {
                basis.push(elementary(&field, n, j, i));
            }
        }
        Self::build(field, n, AlgebraKind::Sl, basis).expect("sl_n basis is valid")
    }

    /// User-supplied basis; independence and bracket closure are checked.
    pub fn custom(field: F, n: usize, basis: Vec<Mat<F>>) -> Result<Self> {
        let alg = Self::build(field, n, AlgebraKind::Custom, basis)?;
        for (i, x) in alg.basis.iter().enumerate() {
            for y in &alg.basis[i + 1..] {
                if !alg.contains(&bracket(x, y)?) {
                    return Err(Error::NotASubalgebra("basis span is not closed under bracket".into()));
                }
            }
        }
        Ok(alg)
    }

    fn build(field: F, n: usize, kind: AlgebraKind, basis: Vec<Mat<F>>) -> Result<Self> {
        if basis.iter().any(|b| b.rows() != n || b.cols() != n) {
            return Err(Error::DimensionMismatch(format!("basis matrices must be {n}x{n}")));
        }
        let flat: Vec<Vec<F::Elem>> = basis.iter().map(|b| b.entries().to_vec()).collect();
        let d = basis.len();
        if span_rank(&field, n * n, &flat) != d {
            return Err(Error::DependentBasis);
        }
        // rows of the (n^2 x d) coordinate matrix that form an invertible block
        let (pivot_rows, pivot_inverse) = if d == 0 {
            (Vec::new(), Mat::zeros(field.clone(), 0, 0))
        } else {
            let coord = Mat::from_columns(field.clone(), n * n, &flat)?;
            let rows = coord.transpose().echelon().pivots;
            let block = Mat::from_fn(field.clone(), d, d, |i, j| coord.get(rows[i], j).clone());
            (rows, block.inverse()?)
        };
        let mut alg = Self {
            field,
            n,
            kind,
            basis,
            pivot_rows,
            pivot_inverse,
            pairing_nondegenerate: false,
        };
        alg.pairing_nondegenerate = alg.pairing_matrix().rank() == d;
        Ok(alg)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat<F>] {
        &self.basis
    }

    pub fn pairing_nondegenerate(&self) -> bool {
        self.pairing_nondegenerate
    }

    pub fn zero(&self) -> Mat<F> {
        Mat::zeros(self.field.clone(), self.n, self.n)
    }

    pub fn bracket(&self, x: &Mat<F>, y: &Mat<F>) -> Result<Mat<F>> {
        bracket(x, y)
    }

    /// `tr(XY)`.
    pub fn pairing(&self, x: &Mat<F>, y: &Mat<F>) -> Result<F::Elem> {
        Ok(x.mul(y)?.trace())
    }

    /// Gram matrix of the trace pairing on the basis.
    pub fn pairing_matrix(&self) -> Mat<F> {
        let d = self.dim();
        Mat::from_fn(self.field.clone(), d, d, |i, j| {
            self.pairing(&self.basis[i], &self.basis[j]).expect("square basis")
        })
    }

    /// Coordinates of `x` in the basis, or `None` when `x` is not in the span.
    pub fn try_coords(&self, x: &Mat<F>) -> Option<Vec<F::Elem>> {
        if x.rows() != self.n || x.cols() != self.n {
            return None;
        }
        let rhs: Vec<F::Elem> = self.pivot_rows.iter().map(|&r| x.entries()[r].clone()).collect();
        let c = if self.dim() == 0 {
            Vec::new()
        } else {
            self.pivot_inverse.mul_vec(&rhs).ok()?
        };
        (self.from_coords(&c) == *x).then_some(c)
    }

    pub fn coords(&self, x: &Mat<F>) -> Result<Vec<F::Elem>> {
        self.try_coords(x)
            .ok_or_else(|| Error::InvalidArgument("matrix is not in the algebra".into()))
    }

    pub fn contains(&self, x: &Mat<F>) -> bool {
        self.try_coords(x).is_some()
    }

    pub fn from_coords(&self, c: &[F::Elem]) -> Mat<F> {
        let f = &self.field;
        let mut out = self.zero();
        for (b, ci) in self.basis.iter().zip(c) {
            if f.is_zero(ci) {
                continue;
            }
            out = out.add(&b.scale(ci)).expect("same shape");
        }
        out
    }

    /// Matrix of `x -> [x, e]` in basis coordinates (columns indexed by the basis).
    pub fn ad_right_matrix(&self, e: &Mat<F>) -> Result<Mat<F>> {
        let cols: Vec<Vec<F::Elem>> = self
            .basis
            .iter()
            .map(|b| bracket(b, e).map(|m| m.into_entries()))
            .collect::<Result<_>>()?;
        Mat::from_columns(self.field.clone(), self.n * self.n, &cols)
    }
}

/// `h_i = e_ii - e_{i+1,i+1}`.
pub fn cartan_element<F: Field>(field: &F, n: usize, i: usize) -> Mat<F> {
    let mut m = Mat::zeros(field.clone(), n, n);
    m.set(i, i, field.one());
    m.set(i + 1, i + 1, field.neg(&field.one()));
    m
}

/// `dim span{[b, e] : b in basis}`, the dimension of the adjoint orbit through `e`.
pub fn ad_orbit_tangent_rank<F: Field>(alg: &MatrixLieAlgebra<F>, e: &Mat<F>) -> Result<usize> {
    Ok(alg.ad_right_matrix(e)?.rank())
}
