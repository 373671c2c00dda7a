//! The Kirillov-Kostant-Souriau form on a nilpotent orbit, through the
//! identification of `g*` with `g` by the trace pairing.

use crate::error::{Error, Result};
use crate::exactalg::Field;
use crate::liestruct::{bracket, Mat, MatrixLieAlgebra};
use crate::symplin::AntisymmetricForm;

/// KKS form at the base point `a`: `w([x,a],[y,a]) = tr(a [x,y])`.
#[derive(Debug, Clone)]
pub struct KksForm<'g, F: Field> {
    alg: &'g MatrixLieAlgebra<F>,
    base_point: Mat<F>,
    ad: Mat<F>,
}

impl<'g, F: Field> KksForm<'g, F> {
    pub fn new(alg: &'g MatrixLieAlgebra<F>, a: Mat<F>) -> Result<Self> {
        if !alg.contains(&a) {
            return Err(Error::InvalidArgument("base point is not in the Lie algebra".into()));
        }
        let ad = alg.ad_right_matrix(&a)?;
        Ok(Self {
            alg,
            base_point: a,
            ad,
        })
    }

    pub fn base_point(&self) -> &Mat<F> {
        &self.base_point
    }

    pub fn algebra(&self) -> &MatrixLieAlgebra<F> {
        self.alg
    }

    /// Some `x` in `g` with `[x, a] = u`.
    pub fn preimage(&self, u: &Mat<F>) -> Result<Mat<F>> {
        if u.rows() != self.base_point.rows() || u.cols() != self.base_point.cols() {
            return Err(Error::DimensionMismatch("tangent vector has the wrong shape".into()));
        }
        match self.ad.solve(u.entries())? {
            Some(c) => Ok(self.alg.from_coords(&c)),
            None => Err(Error::NotTangent),
        }
    }

    /// `tr(a [x, y])` for preimages `x`, `y`.
    pub fn pair_preimages(&self, x: &Mat<F>, y: &Mat<F>) -> Result<F::Elem> {
        self.base_point.mul(&bracket(x, y)?).map(|m| m.trace())
    }

    pub fn eval(&self, u: &Mat<F>, v: &Mat<F>) -> Result<F::Elem> {
        let x = self.preimage(u)?;
        let y = self.preimage(v)?;
        self.pair_preimages(&x, &y)
    }

    /// Gram matrix `tr(a [x_i, x_j])` on a list of preimages. Its rank is twice
    /// the symplectic dimension of `span [x_i, a]`.
    pub fn gram_on_preimages(&self, xs: &[Mat<F>]) -> Result<AntisymmetricForm<F>> {
        kks_gram(self.alg.field(), &self.base_point, xs)
    }
}

/// `tr(a [x_i, x_j]) = tr([a, x_i] x_j)`.
pub fn kks_gram<F: Field>(field: &F, a: &Mat<F>, xs: &[Mat<F>]) -> Result<AntisymmetricForm<F>> {
    let d = xs.len();
    let images: Vec<Mat<F>> = xs.iter().map(|x| bracket(a, x)).collect::<Result<_>>()?;
    let mut gram = Mat::zeros(field.clone(), d, d);
    for i in 0..d {
        for j in i + 1..d {
            let v = images[i].mul(&xs[j])?.trace();
            gram.set(j, i, field.neg(&v));
            gram.set(i, j, v);
        }
    }
    AntisymmetricForm::new(gram)
}

/// `kks_eval(a, u, v)`: solve `[x,a] = u`, `[y,a] = v` and return `tr(a [x,y])`.
pub fn kks_eval<F: Field>(alg: &MatrixLieAlgebra<F>, a: &Mat<F>, u: &Mat<F>, v: &Mat<F>) -> Result<F::Elem> {
    KksForm::new(alg, a.clone())?.eval(u, v)
}

/// Pullback of the KKS form at `e` to `g` along `x -> [x, e]`, in the basis of `g`.
pub fn kirillov_gram<F: Field>(alg: &MatrixLieAlgebra<F>, e: &Mat<F>) -> Result<AntisymmetricForm<F>> {
    kks_gram(alg.field(), e, alg.basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{DenseMatrix, Rationals};
    use crate::liestruct::{jordan_matrix, Partition};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn sl2_values() {
        let g = MatrixLieAlgebra::sl(Rationals, 2);
        let (e, h, f) = (g.basis()[0].clone(), g.basis()[1].clone(), g.basis()[2].clone());
        let two_e = e.scale(&q(2));
        let minus_h = h.scale(&q(-1));
        assert_eq!(kks_eval(&g, &e, &two_e, &minus_h).unwrap(), q(-2));
        assert_eq!(kks_eval(&g, &e, &two_e, &two_e).unwrap(), q(0));
        assert_eq!(kks_eval(&g, &e, &g.zero(), &minus_h).unwrap(), q(0));
        assert_eq!(kks_eval(&g, &e, &f, &two_e), Err(Error::NotTangent));
    }

    #[test]
    fn kirillov_gram_values() {
        let g = MatrixLieAlgebra::sl(Rationals, 2);
        let e = g.basis()[0].clone();
        let form = kirillov_gram(&g, &e).unwrap();
        let expected = DenseMatrix::from_i64_rows(Rationals, &[vec![0, 0, 0], vec![0, 0, -2], vec![0, 2, 0]]).unwrap();
        assert_eq!(form.gram(), &expected);
        assert_eq!(form.rank(), 2);
        assert_eq!(kirillov_gram(&g, &g.zero()).unwrap().rank(), 0);
        let gl3 = MatrixLieAlgebra::gl(Rationals, 3);
        let lambda: Partition = "2,1".parse().unwrap();
        assert_eq!(kirillov_gram(&gl3, &jordan_matrix(&Rationals, &lambda)).unwrap().rank(), 4);
    }
}
