//! Symplectic dimension of antisymmetric forms on linear spaces, and of
//! varieties represented by finite lists of sampled tangent data.
//!
//! For a form `w` on `W`, `sdim(W) = (dim W - dim rad w) / 2 = rank(w) / 2`.
//! A variety enters only through [`PointedSample`]s; its symplectic
//! dimension is the maximum over the samples, and zero for no samples.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::matrix::span_rank;
use crate::exactalg::{DenseMatrix, Field, PrimeField, SeededRng};

/// Gram matrix of an antisymmetric bilinear form on a declared basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AntisymmetricForm<F: Field> {
    gram: DenseMatrix<F>,
    rank: usize,
}

impl<F: Field> AntisymmetricForm<F> {
    pub fn new(gram: DenseMatrix<F>) -> Result<Self> {
        let f = gram.field().clone();
        if f.characteristic() == 2 {
            return Err(Error::NotAntisymmetric("characteristic 2 is not supported".into()));
        }
        if !gram.is_square() {
            return Err(Error::NotAntisymmetric(format!(
                "{}x{} Gram matrix",
                gram.rows(),
                gram.cols()
            )));
        }
        let n = gram.rows();
        for i in 0..n {
            if !f.is_zero(gram.get(i, i)) {
                return Err(Error::NotAntisymmetric(format!("nonzero diagonal entry {i}")));
            }
            for j in i + 1..n {
                if *gram.get(i, j) != f.neg(gram.get(j, i)) {
                    return Err(Error::NotAntisymmetric(format!("entries ({i},{j}) and ({j},{i})")));
                }
            }
        }
        let rank = gram.rank();
        if rank % 2 != 0 {
            return Err(Error::NotAntisymmetric(format!("odd rank {rank}")));
        }
        Ok(Self { gram, rank })
    }

    pub fn zero(field: F, dim: usize) -> Self {
        Self {
            gram: DenseMatrix::zeros(field, dim, dim),
            rank: 0,
        }
    }

    /// The standard symplectic form on `F^{2n}` with `w(e_i, e_{n+i}) = 1`.
    pub fn standard(field: F, n: usize) -> Self {
        let gram = DenseMatrix::from_fn(field.clone(), 2 * n, 2 * n, |i, j| {
            if j == i + n {
                field.one()
            } else if i == j + n {
                field.neg(&field.one())
            } else {
                field.zero()
            }
        });
        Self { gram, rank: 2 * n }
    }

    pub fn gram(&self) -> &DenseMatrix<F> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank == self.dim()
    }

    pub fn eval(&self, u: &[F::Elem], v: &[F::Elem]) -> Result<F::Elem> {
        let gv = self.gram.mul_vec(v)?;
        let f = self.gram.field();
        if u.len() != gv.len() {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        Ok(u.iter().zip(&gv).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
    }

    pub fn radical(&self) -> Vec<Vec<F::Elem>> {
        self.gram.kernel_basis()
    }
}

impl AntisymmetricForm<PrimeField> {
    /// Uniformly random antisymmetric Gram matrix of the given size.
    pub fn random(field: PrimeField, dim: usize, rng: &mut SeededRng) -> Self {
        let p = field.modulus();
        let mut gram = DenseMatrix::zeros(field, dim, dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let v = rng.random_range(0..p);
                gram.set(i, j, v);
                gram.set(j, i, field.neg(&v));
            }
        }
        Self::new(gram).expect("antisymmetric by construction")
    }
}

/// `rank(gram) / 2`.
pub fn sdim_linear<F: Field>(form: &AntisymmetricForm<F>) -> Result<usize> {
    let r = form.gram.rank();
    if r % 2 != 0 {
        return Err(Error::NotAntisymmetric(format!("odd rank {r}")));
    }
    Ok(r / 2)
}

/// Gram matrix of `w` restricted to the span of `sub` (coordinates in the
/// form's basis), in the given basis of the subspace.
pub fn restrict_form<F: Field>(form: &AntisymmetricForm<F>, sub: &[Vec<F::Elem>]) -> Result<AntisymmetricForm<F>> {
    let f = form.gram.field().clone();
    let d = form.dim();
    if sub.iter().any(|v| v.len() != d) {
        return Err(Error::DimensionMismatch(format!("subspace vectors must have length {d}")));
    }
    if span_rank(&f, d, sub) != sub.len() {
        return Err(Error::DependentBasis);
    }
    if sub.is_empty() {
        return Ok(AntisymmetricForm::zero(f, 0));
    }
    let s = DenseMatrix::from_columns(f, d, sub)?;
    let g = s.transpose().mul(&form.gram)?.mul(&s)?;
    AntisymmetricForm::new(g)
}

/// Whether `V = span(sub)` contains its orthogonal `V^perp` for the
/// nondegenerate form `w`; equivalently `sdim(V) = dim V - dim W / 2`.
pub fn is_coisotropic<F: Field>(sub: &[Vec<F::Elem>], form: &AntisymmetricForm<F>) -> Result<bool> {
    if !form.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    let f = form.gram.field().clone();
    let d = form.dim();
    if sub.iter().any(|v| v.len() != d) {
        return Err(Error::DimensionMismatch(format!("subspace vectors must have length {d}")));
    }
    let rank_v = span_rank(&f, d, sub);
    if sub.is_empty() {
        // V = 0, V^perp = W
        return Ok(d == 0);
    }
    let s = DenseMatrix::from_columns(f.clone(), d, sub)?;
    let pairing = s.transpose().mul(&form.gram)?;
    let perp = pairing.kernel_basis();
    let mut joined = sub.to_vec();
    joined.extend(perp);
    Ok(span_rank(&f, d, &joined) == rank_v)
}

/// A sampled point of a variety with a tangent subspace and the ambient
/// 2-form restricted to it.
#[derive(Debug, Clone, PartialEq)]
pub struct PointedSample<F: Field> {
    pub point: Vec<F::Elem>,
    pub tangent_basis: Vec<Vec<F::Elem>>,
    pub form_on_t: AntisymmetricForm<F>,
    pub component_label: Option<String>,
}

impl<F: Field> PointedSample<F> {
    pub fn new(
        point: Vec<F::Elem>,
        tangent_basis: Vec<Vec<F::Elem>>,
        form_on_t: AntisymmetricForm<F>,
        component_label: Option<String>,
    ) -> Result<Self> {
        if form_on_t.dim() != tangent_basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "form of dimension {} on {} tangent vectors",
                form_on_t.dim(),
                tangent_basis.len()
            )));
        }
        if let Some(len) = tangent_basis.first().map(Vec::len) {
            let f = form_on_t.gram().field().clone();
            if tangent_basis.iter().any(|v| v.len() != len) {
                return Err(Error::DimensionMismatch("ragged tangent basis".into()));
            }
            if span_rank(&f, len, &tangent_basis) != tangent_basis.len() {
                return Err(Error::DependentBasis);
            }
        }
        Ok(Self {
            point,
            tangent_basis,
            form_on_t,
            component_label,
        })
    }

    /// Sample with tangent data given as a subspace of a space carrying `ambient`.
    pub fn from_ambient(
        point: Vec<F::Elem>,
        ambient: &AntisymmetricForm<F>,
        tangent_basis: Vec<Vec<F::Elem>>,
        component_label: Option<String>,
    ) -> Result<Self> {
        let form = restrict_form(ambient, &tangent_basis)?;
        Self::new(point, tangent_basis, form, component_label)
    }

    pub fn tangent_dim(&self) -> usize {
        self.tangent_basis.len()
    }

    pub fn sdim(&self) -> usize {
        self.form_on_t.rank() / 2
    }
}

/// Maximum of `sdim` over the samples; zero for an empty list.
pub fn sdim_samples<F: Field>(samples: &[PointedSample<F>]) -> usize {
    samples.iter().map(PointedSample::sdim).max().unwrap_or(0)
}

/// Checks `sdim(w|l) <= sdim(w|l_big)` for `span(l) ⊆ span(l_big)` and
/// returns whether it holds.
pub fn semicontinuity_witness<F: Field>(
    form: &AntisymmetricForm<F>,
    l: &[Vec<F::Elem>],
    l_big: &[Vec<F::Elem>],
) -> Result<bool> {
    let f = form.gram.field().clone();
    let d = form.dim();
    let rank_big = span_rank(&f, d, l_big);
    let mut joined = l_big.to_vec();
    joined.extend(l.iter().cloned());
    if span_rank(&f, d, &joined) != rank_big {
        return Err(Error::NotNested);
    }
    let small = sdim_linear(&restrict_form(form, l)?)?;
    let big = sdim_linear(&restrict_form(form, l_big)?)?;
    Ok(small <= big)
}

/// Closed integer interval `[lower, upper]` bounding a symplectic dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SdimInterval {
    pub lower: usize,
    pub upper: usize,
}

impl SdimInterval {
    pub fn new(lower: usize, upper: usize) -> Result<Self> {
        if lower > upper {
            return Err(Error::UnsoundInterval { lower, upper });
        }
        Ok(Self { lower, upper })
    }

    pub fn exact(value: usize) -> Self {
        Self {
            lower: value,
            upper: value,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn value(&self) -> Option<usize> {
        self.is_exact().then_some(self.lower)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lower <= v && v <= self.upper
    }

    /// Componentwise maximum.
    pub fn max(&self, other: &Self) -> Self {
        Self {
            lower: self.lower.max(other.lower),
            upper: self.upper.max(other.upper),
        }
    }

    /// Componentwise `<=`.
    pub fn le(&self, other: &Self) -> bool {
        self.lower <= other.lower && self.upper <= other.upper
    }
}
