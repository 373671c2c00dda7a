//! Univariate polynomials over `F_p`, root finding, and the bivariate
//! resultant used by the slice-and-solve sampler.

use std::fmt;

use super::field::{Field, PrimeField};
use super::matrix::DenseMatrix;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients from the constant term upward.
/// Always normalized: no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly(p={}, {:?})", self.field.modulus(), self.coeffs)
    }
}

impl UniPoly {
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| field.elem(c)).collect();
        let mut p = Self { field, coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.reduce_i64(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: PrimeField) -> Self {
        Self::new(field, vec![0, 1])
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, c| f.add(&f.mul(&acc, &x), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.add(&a, &b)
            })
            .collect();
        Self::new(self.field, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::new(self.field, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn scale(&self, s: u64) -> Self {
        let f = &self.field;
        Self::new(self.field, self.coeffs.iter().map(|c| f.mul(c, &s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let f = &self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(self.field, out)
    }

    /// Euclidean division `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let f = &self.field;
        let inv_lead = f.inv(&divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(self.field), Self::zero(self.field)));
        };
        if nd < dd {
            return Ok((Self::zero(self.field), self.clone()));
        }
        let mut quot = vec![0u64; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = f.mul(&rem[k + dd], &inv_lead);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, d));
            }
        }
        Ok((Self::new(self.field, quot), Self::new(self.field, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut acc = Self::constant(self.field, 1).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            base = base.mul(&base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.reduce_i64(i as i64)))
            .collect();
        Self::new(self.field, coeffs)
    }

    /// Lagrange interpolation through `(xs[i], ys[i])`; the `xs` must be distinct.
    pub fn interpolate(field: PrimeField, xs: &[u64], ys: &[u64]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::DimensionMismatch("interpolation nodes".into()));
        }
        let f = &field;
        let mut acc = Self::zero(field);
        for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
            if yi == 0 {
                continue;
            }
            let mut basis = Self::constant(field, 1);
            let mut denom = 1u64;
            for (j, &xj) in xs.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = basis.mul(&Self::new(field, vec![f.neg(&xj), 1]));
                denom = f.mul(&denom, &f.sub(&xi, &xj));
            }
            let scale = f.mul(&yi, &f.inv(&denom)?);
            acc = acc.add(&basis.scale(scale));
        }
        Ok(acc)
    }
}

/// All roots of `p` in `F_p`, sorted ascending.
///
/// Distinct-degree step: `g = gcd(p, x^q - x)` collects the linear factors.
/// Equal-degree step: `g` is split with `gcd(g, (x + d)^((q-1)/2) - 1)` for
/// shifts `d = 0, 1, 2, ...` until only linear pieces remain. The shift
/// sequence is fixed, so results are reproducible.
pub fn univariate_roots(p: &UniPoly) -> Result<Vec<u64>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = p.field();
    let q = field.modulus();
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    if q == 2 {
        return Ok((0..2).filter(|&x| p.eval(x) == 0).collect());
    }
    let f = p.monic();
    let x = UniPoly::x(field);
    let xq = x.pow_mod(q, &f)?;
    let g = f.gcd(&xq.sub(&x));
    let mut roots = Vec::new();
    split_linear(&g, q, &mut roots, 0)?;
    roots.sort_unstable();
    Ok(roots)
}

fn split_linear(g: &UniPoly, q: u64, roots: &mut Vec<u64>, start: u64) -> Result<()> {
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            // monic x + c
            roots.push(g.field().neg(&g.coeffs()[0]));
            return Ok(());
        }
        _ => {}
    }
    let field = g.field();
    for attempt in 0..q {
        let shift = start.wrapping_add(attempt) % q;
        let t = UniPoly::new(field, vec![shift, 1]);
        let h = t.pow_mod((q - 1) / 2, g)?.sub(&UniPoly::constant(field, 1));
        let d = g.gcd(&h);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && Some(dd) < g.degree() {
            let (other, _) = g.div_rem(&d)?;
            let next = (shift + 1) % q;
            split_linear(&d, q, roots, next)?;
            split_linear(&other.monic(), q, roots, next)?;
            return Ok(());
        }
    }
    // unreachable for squarefree products of distinct linear factors, q odd
    Err(Error::InvalidArgument("root splitting did not terminate".into()))
}

/// Polynomial in two variables `(s, t)` over `F_p`, stored densely as
/// `coeffs[i][j]` = coefficient of `s^i t^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: PrimeField,
    coeffs: Vec<Vec<u64>>,
}

impl BiPoly {
    pub fn new(field: PrimeField, coeffs: Vec<Vec<u64>>) -> Self {
        Self { field, coeffs }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Degree bound in `t` (number of stored columns minus one).
    pub fn t_degree_bound(&self) -> usize {
        self.coeffs.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn s_degree_bound(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|&c| c == 0)
    }

    pub fn eval(&self, s: u64, t: u64) -> u64 {
        self.in_t(s).eval(t)
    }

    /// Specialize `s` and return the univariate polynomial in `t`.
    pub fn in_t(&self, s: u64) -> UniPoly {
        let f = &self.field;
        let width = self.t_degree_bound() + 1;
        let mut out = vec![0u64; width];
        let mut spow = 1u64;
        for row in &self.coeffs {
            for (j, c) in row.iter().enumerate() {
                out[j] = f.add(&out[j], &f.mul(c, &spow));
            }
            spow = f.mul(&spow, &s);
        }
        UniPoly::new(self.field, out)
    }

    /// Specialize `t` and return the univariate polynomial in `s`.
    pub fn in_s(&self, t: u64) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| UniPoly::new(self.field, row.clone()).eval(t))
            .collect();
        UniPoly::new(self.field, coeffs)
    }

    /// Recover a polynomial of degree `<= deg` in each variable from the
    /// values `value(s, t)` on the grid `0..=deg` squared.
    pub fn interpolate_grid(field: PrimeField, deg: usize, mut value: impl FnMut(u64, u64) -> u64) -> Result<Self> {
        let nodes: Vec<u64> = (0..=deg as u64).collect();
        // for each s node, interpolate in t
        let rows_t: Vec<UniPoly> = nodes
            .iter()
            .map(|&s| {
                let ys: Vec<u64> = nodes.iter().map(|&t| value(s, t)).collect();
                UniPoly::interpolate(field, &nodes, &ys)
            })
            .collect::<Result<_>>()?;
        // then, coefficient by coefficient of t, interpolate in s
        let mut coeffs = vec![vec![0u64; deg + 1]; deg + 1];
        for j in 0..=deg {
            let ys: Vec<u64> = rows_t.iter().map(|p| p.coeffs().get(j).copied().unwrap_or(0)).collect();
            let in_s = UniPoly::interpolate(field, &nodes, &ys)?;
            for (i, c) in in_s.coeffs().iter().enumerate() {
                coeffs[i][j] = *c;
            }
        }
        Ok(Self::new(field, coeffs))
    }
}

/// Determinant of the Sylvester matrix of `a` and `b` built with the formal
/// degrees `da`, `db` (leading coefficients may vanish).
fn sylvester_det(field: PrimeField, a: &[u64], da: usize, b: &[u64], db: usize) -> u64 {
    let n = da + db;
    if n == 0 {
        return 1;
    }
    let coef = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
    let m = DenseMatrix::from_fn(field, n, n, |r, c| {
        if r < db {
            // row r holds a shifted by r, highest degree first
            c.checked_sub(r).filter(|&k| k <= da).map_or(0, |k| coef(a, da - k))
        } else {
            let r = r - db;
            c.checked_sub(r).filter(|&k| k <= db).map_or(0, |k| coef(b, db - k))
        }
    });
    m.determinant().expect("square")
}

/// `Res_t(a, b)` as a polynomial in `s`, computed by evaluating the Sylvester
/// determinant at enough points of `s` and interpolating.
pub fn resultant_in_t(a: &BiPoly, b: &BiPoly) -> Result<UniPoly> {
    let field = a.field();
    let da = a.t_degree_bound();
    let db = b.t_degree_bound();
    // deg_s(Res) <= da * deg_s(b) + db * deg_s(a)
    let bound = da * b.s_degree_bound() + db * a.s_degree_bound();
    let xs: Vec<u64> = (0..=bound as u64).collect();
    if xs.len() as u64 > field.modulus() {
        return Err(Error::InvalidArgument("field too small for resultant interpolation".into()));
    }
    let ys: Vec<u64> = xs
        .iter()
        .map(|&s| {
            let pa = a.in_t(s);
            let pb = b.in_t(s);
            sylvester_det(field, pa.coeffs(), da, pb.coeffs(), db)
        })
        .collect();
    UniPoly::interpolate(field, &xs, &ys)
}
