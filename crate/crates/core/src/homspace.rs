//! Homogeneous spaces `X = G/H` given by Lie algebras: annihilators, orbit
//! dimensions at sampled cosets, generic modality, complexity and the
//! orbitwise `Xi`-complexity.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::matrix::span_rank;
use crate::exactalg::{per_prime, Field, Genericity, PrimeField, SeededRng};
use crate::liestruct::{
    bracket, cartan_element, elementary, AlgebraKind, Mat, MatrixLieAlgebra, ParabolicComposition, Partition,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SubalgebraName {
    Torus,
    Borel,
    Parabolic(ParabolicComposition),
    Nilradical(ParabolicComposition),
    Trivial,
    Full,
    Custom,
}

impl fmt::Display for SubalgebraName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Torus => write!(f, "torus"),
            Self::Borel => write!(f, "borel"),
            Self::Parabolic(c) => write!(f, "parabolic({c})"),
            Self::Nilradical(c) => write!(f, "nilradical({c})"),
            Self::Trivial => write!(f, "trivial"),
            Self::Full => write!(f, "full"),
            Self::Custom => write!(f, "custom"),
        }
    }
}

/// A Lie subalgebra `h` of a matrix Lie algebra `g`, given by a basis.
#[derive(Debug, Clone)]
pub struct SubalgebraSpec<F: Field> {
    ambient: Arc<MatrixLieAlgebra<F>>,
    basis: Vec<Mat<F>>,
    name: SubalgebraName,
}

impl<F: Field> SubalgebraSpec<F> {
    /// Checks membership in `g`, independence and bracket closure.
    pub fn new(ambient: Arc<MatrixLieAlgebra<F>>, basis: Vec<Mat<F>>, name: SubalgebraName) -> Result<Self> {
        let f = ambient.field().clone();
        if basis.iter().any(|b| !ambient.contains(b)) {
            return Err(Error::NotASubalgebra("basis element outside the ambient algebra".into()));
        }
        let n = ambient.n();
        let flat: Vec<Vec<F::Elem>> = basis.iter().map(|b| b.entries().to_vec()).collect();
        let d = span_rank(&f, n * n, &flat);
        if d != basis.len() {
            return Err(Error::DependentBasis);
        }
        for (i, x) in basis.iter().enumerate() {
            for y in &basis[i + 1..] {
                let mut with = flat.clone();
                with.push(bracket(x, y)?.into_entries());
                if span_rank(&f, n * n, &with) != d {
                    return Err(Error::NotASubalgebra(format!("{name} basis is not closed under bracket")));
                }
            }
        }
        Ok(Self { ambient, basis, name })
    }

    /// Diagonal matrices in `g`.
    pub fn torus(g: Arc<MatrixLieAlgebra<F>>) -> Result<Self> {
        let f = g.field().clone();
        let n = g.n();
        let basis = match g.kind() {
            AlgebraKind::Gl => (0..n).map(|i| elementary(&f, n, i, i)).collect(),
            AlgebraKind::Sl => (0..n.saturating_sub(1)).map(|i| cartan_element(&f, n, i)).collect(),
            AlgebraKind::Custom => {
                return Err(Error::InvalidArgument("named subalgebras need a gl or sl ambient".into()))
            }
        };
        Self::new(g, basis, SubalgebraName::Torus)
    }

    pub fn borel(g: Arc<MatrixLieAlgebra<F>>) -> Result<Self> {
        let n = g.n();
        let mut s = Self::parabolic(g, ParabolicComposition::borel(n))?;
        s.name = SubalgebraName::Borel;
        Ok(s)
    }

    /// Block-upper-triangular matrices in `g`.
    pub fn parabolic(g: Arc<MatrixLieAlgebra<F>>, comp: ParabolicComposition) -> Result<Self> {
        let f = g.field().clone();
        let n = g.n();
        check_composition(&g, &comp)?;
        let off_diagonal = comp.parabolic_positions().into_iter().filter(|(i, j)| i != j);
        let basis = match g.kind() {
            AlgebraKind::Gl => comp
                .parabolic_positions()
                .into_iter()
                .map(|(i, j)| elementary(&f, n, i, j))
                .collect(),
            AlgebraKind::Sl => off_diagonal
                .map(|(i, j)| elementary(&f, n, i, j))
                .chain((0..n.saturating_sub(1)).map(|i| cartan_element(&f, n, i)))
                .collect(),
            AlgebraKind::Custom => {
                return Err(Error::InvalidArgument("named subalgebras need a gl or sl ambient".into()))
            }
        };
        Self::new(g, basis, SubalgebraName::Parabolic(comp))
    }

    /// Block-strictly-upper-triangular matrices `n_P`.
    pub fn nilradical(g: Arc<MatrixLieAlgebra<F>>, comp: ParabolicComposition) -> Result<Self> {
        check_composition(&g, &comp)?;
        if g.kind() == AlgebraKind::Custom {
            return Err(Error::InvalidArgument("named subalgebras need a gl or sl ambient".into()));
        }
        let basis = crate::liestruct::nilradical_basis(g.field(), &comp);
        Self::new(g, basis, SubalgebraName::Nilradical(comp))
    }

    /// Strictly upper triangular matrices.
    pub fn unipotent(g: Arc<MatrixLieAlgebra<F>>) -> Result<Self> {
        let n = g.n();
        Self::nilradical(g, ParabolicComposition::borel(n))
    }

    pub fn trivial(g: Arc<MatrixLieAlgebra<F>>) -> Self {
        Self {
            ambient: g,
            basis: Vec::new(),
            name: SubalgebraName::Trivial,
        }
    }

    pub fn full(g: Arc<MatrixLieAlgebra<F>>) -> Self {
        let basis = g.basis().to_vec();
        Self {
            ambient: g,
            basis,
            name: SubalgebraName::Full,
        }
    }

    pub fn custom(g: Arc<MatrixLieAlgebra<F>>, basis: Vec<Mat<F>>) -> Result<Self> {
        Self::new(g, basis, SubalgebraName::Custom)
    }

    pub fn ambient(&self) -> &Arc<MatrixLieAlgebra<F>> {
        &self.ambient
    }

    pub fn basis(&self) -> &[Mat<F>] {
        &self.basis
    }

    pub fn name(&self) -> &SubalgebraName {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &Mat<F>) -> bool {
        let f = self.ambient.field();
        let n = self.ambient.n();
        let mut flat: Vec<Vec<F::Elem>> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        flat.push(x.entries().to_vec());
        span_rank(f, n * n, &flat) == self.dim()
    }

    /// Whether `self ⊆ other` as subspaces.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// The normalizer `{x in g : [x, h] ⊆ h}`; its group preserves `h^perp`.
    pub fn normalizer(&self) -> Result<Self> {
        let g = &self.ambient;
        let f = g.field().clone();
        // x = sum c_k g_k with [x, h_j] in h for all j
        let perp = h_perp(self)?;
        // [x, h_j] in h  <=>  tr(xi [x, h_j]) = 0 for all xi in h^perp
        // (valid because the trace pairing on g is nondegenerate)
        if !g.pairing_nondegenerate() {
            return Err(Error::InvalidArgument("normalizer needs a nondegenerate trace pairing".into()));
        }
        let mut rows = Vec::new();
        for hj in &self.basis {
            for xi in perp.basis() {
                let row: Vec<F::Elem> = g
                    .basis()
                    .iter()
                    .map(|gk| g.pairing(xi, &bracket(gk, hj).expect("square")).expect("square"))
                    .collect();
                rows.push(row);
            }
        }
        let kernel = if rows.is_empty() {
            (0..g.dim())
                .map(|k| (0..g.dim()).map(|l| if k == l { f.one() } else { f.zero() }).collect())
                .collect()
        } else {
            Mat::from_rows(f.clone(), g.dim(), &rows)?.kernel_basis()
        };
        let basis: Vec<Mat<F>> = kernel.iter().map(|c| g.from_coords(c)).collect();
        Self::new(self.ambient.clone(), basis, SubalgebraName::Custom)
    }
}

fn check_composition<F: Field>(g: &MatrixLieAlgebra<F>, comp: &ParabolicComposition) -> Result<()> {
    if comp.n() != g.n() {
        return Err(Error::InvalidComposition(format!(
            "composition {comp} does not sum to n = {}",
            g.n()
        )));
    }
    Ok(())
}

/// `h^perp = {xi in g : tr(xi x) = 0 for all x in h}`.
#[derive(Debug, Clone)]
pub struct AnnihilatorSpace<F: Field> {
    basis: Vec<Mat<F>>,
}

impl<F: Field> AnnihilatorSpace<F> {
    pub fn basis(&self) -> &[Mat<F>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn from_basis(basis: Vec<Mat<F>>) -> Self {
        Self { basis }
    }

    pub fn contains(&self, x: &Mat<F>) -> bool {
        let Some(first) = self.basis.first() else {
            return x.is_zero();
        };
        let f = first.field().clone();
        let len = first.rows() * first.cols();
        let mut flat: Vec<Vec<F::Elem>> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        flat.push(x.entries().to_vec());
        span_rank(&f, len, &flat) == self.dim()
    }
}

pub fn h_perp<F: Field>(h: &SubalgebraSpec<F>) -> Result<AnnihilatorSpace<F>> {
    let g = h.ambient();
    let f = g.field().clone();
    if h.dim() == 0 {
        return Ok(AnnihilatorSpace {
            basis: g.basis().to_vec(),
        });
    }
    let rows: Vec<Vec<F::Elem>> = h
        .basis()
        .iter()
        .map(|x| g.basis().iter().map(|b| g.pairing(x, b)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let pairing = Mat::from_rows(f, g.dim(), &rows)?;
    let basis = pairing.kernel_basis().iter().map(|c| g.from_coords(c)).collect();
    Ok(AnnihilatorSpace { basis })
}

/// `X = G/H`, represented through `g` and `h`.
#[derive(Debug, Clone)]
pub struct HomogeneousSpace<F: Field> {
    h: SubalgebraSpec<F>,
}

impl<F: Field> HomogeneousSpace<F> {
    pub fn new(h: SubalgebraSpec<F>) -> Self {
        Self { h }
    }

    pub fn g(&self) -> &Arc<MatrixLieAlgebra<F>> {
        self.h.ambient()
    }

    pub fn h(&self) -> &SubalgebraSpec<F> {
        &self.h
    }

    /// `dim g - dim h`.
    pub fn dim(&self) -> usize {
        self.g().dim() - self.h.dim()
    }
}

/// `g x g^{-1}`.
pub fn conjugate<F: Field>(g: &Mat<F>, g_inv: &Mat<F>, x: &Mat<F>) -> Result<Mat<F>> {
    g.mul(x)?.mul(g_inv)
}

/// Dimension of the orbit of (the group of) `k` through the coset `gH`: the
/// rank of `k -> g / Ad(g) h`.
pub fn orbit_rank_at<F: Field>(k: &SubalgebraSpec<F>, x: &HomogeneousSpace<F>, g: &Mat<F>) -> Result<usize> {
    let alg = x.g();
    let n = alg.n();
    if g.rows() != n || g.cols() != n {
        return Err(Error::DimensionMismatch(format!("group element must be {n}x{n}")));
    }
    let g_inv = g.inverse()?;
    let f = alg.field().clone();
    let mut flat: Vec<Vec<F::Elem>> = x
        .h()
        .basis()
        .iter()
        .map(|y| conjugate(g, &g_inv, y).map(Mat::into_entries))
        .collect::<Result<_>>()?;
    let base = x.h().dim();
    flat.extend(k.basis().iter().map(|b| b.entries().to_vec()));
    Ok(span_rank(&f, n * n, &flat) - base)
}

fn random_elem(field: &PrimeField, rng: &mut SeededRng) -> u64 {
    rng.random_range(0..field.modulus())
}

fn random_nonzero(field: &PrimeField, rng: &mut SeededRng) -> u64 {
    rng.random_range(1..field.modulus())
}

/// Rescale the first row so the determinant is one.
fn normalize_sl(m: &mut Mat<PrimeField>) -> Result<()> {
    let f = *m.field();
    let det = m.determinant()?;
    let inv = f.inv(&det)?;
    for j in 0..m.cols() {
        let v = f.mul(m.get(0, j), &inv);
        m.set(0, j, v);
    }
    Ok(())
}

/// Which closed subgroup to draw random elements from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSampler {
    Full,
    Parabolic(ParabolicComposition),
    Torus,
}

/// Random invertible element of the chosen subgroup of `GL_n` or `SL_n`;
/// retries on singular draws.
pub fn random_group_element(
    alg: &MatrixLieAlgebra<PrimeField>,
    which: &GroupSampler,
    rng: &mut SeededRng,
) -> Result<Mat<PrimeField>> {
    let f = *alg.field();
    let n = alg.n();
    let kind = alg.kind();
    if kind == AlgebraKind::Custom {
        return Err(Error::InvalidArgument("group sampling needs a gl or sl ambient".into()));
    }
    let block = match which {
        GroupSampler::Full => vec![0; n],
        GroupSampler::Parabolic(c) => {
            if c.n() != n {
                return Err(Error::InvalidComposition(format!("composition {c} does not sum to {n}")));
            }
            c.block_of()
        }
        GroupSampler::Torus => (0..n).collect(),
    };
    loop {
        let mut m = Mat::from_fn(f, n, n, |i, j| {
            let allowed = match which {
                GroupSampler::Torus => i == j,
                _ => block[i] <= block[j],
            };
            match (allowed, i == j) {
                (false, _) => 0,
                (true, true) if matches!(which, GroupSampler::Torus) => random_nonzero(&f, rng),
                (true, _) => random_elem(&f, rng),
            }
        });
        if f.is_zero(&m.determinant()?) {
            continue;
        }
        if kind == AlgebraKind::Sl {
            normalize_sl(&mut m)?;
        }
        return Ok(m);
    }
}

/// Outcome of a generic-modality computation on one field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModalitySample {
    pub value: usize,
    pub max_orbit_rank: usize,
    pub trials: usize,
}

/// `dim X - max` over `trials` random cosets of the `k`-orbit dimension.
pub fn generic_modality(
    k: &SubalgebraSpec<PrimeField>,
    x: &HomogeneousSpace<PrimeField>,
    trials: usize,
    rng: &mut SeededRng,
) -> Result<ModalitySample> {
    if trials == 0 {
        return Err(Error::InvalidArgument("generic modality needs at least one trial".into()));
    }
    let mut best = 0;
    for t in 0..trials {
        let mut trial_rng = rng.derive(t as u64);
        let g = random_group_element(x.g(), &GroupSampler::Full, &mut trial_rng)?;
        best = best.max(orbit_rank_at(k, x, &g)?);
        if best == x.dim() {
            break;
        }
    }
    Ok(ModalitySample {
        value: x.dim() - best,
        max_orbit_rank: best,
        trials,
    })
}

/// Complexity: the generic modality of the standard Borel.
pub fn complexity(x: &HomogeneousSpace<PrimeField>, trials: usize, rng: &mut SeededRng) -> Result<ModalitySample> {
    let b = SubalgebraSpec::borel(x.g().clone())?;
    generic_modality(&b, x, trials, rng)
}

/// An `H`-stable piece of `X` for modality computations: its dimension and
/// sample cosets (group elements) that are generic in it.
#[derive(Debug, Clone)]
pub struct Stratum<F: Field> {
    pub dim: usize,
    pub points: Vec<Mat<F>>,
}

/// `max` over strata of `dim(stratum) - max orbit rank` at its sample points.
pub fn modality_from_strata<F: Field>(
    k: &SubalgebraSpec<F>,
    x: &HomogeneousSpace<F>,
    strata: &[Stratum<F>],
) -> Result<usize> {
    let mut m = 0;
    for s in strata {
        let mut best = 0;
        for g in &s.points {
            best = best.max(orbit_rank_at(k, x, g)?);
        }
        if best > s.dim {
            return Err(Error::InvalidArgument(format!(
                "orbit of dimension {best} inside a stratum of dimension {}",
                s.dim
            )));
        }
        m = m.max(s.dim - best);
    }
    Ok(m)
}

/// `dim(O ∩ h^perp) - dim O / 2`; `None` for an empty intersection.
pub fn c_orbit(lambda: &Partition, dim_intersection: Option<usize>) -> Option<i64> {
    dim_intersection.map(|d| d as i64 - (lambda.orbit_dim() / 2) as i64)
}

/// Which classical group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Gl,
    Sl,
}

/// `GL_n` or `SL_n`, written `gl3` / `sl3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub n: usize,
}

impl GroupSpec {
    pub fn algebra<F: Field>(&self, field: F) -> MatrixLieAlgebra<F> {
        match self.kind {
            GroupKind::Gl => MatrixLieAlgebra::gl(field, self.n),
            GroupKind::Sl => MatrixLieAlgebra::sl(field, self.n),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            GroupKind::Gl => "gl",
            GroupKind::Sl => "sl",
        };
        write!(f, "{k}{}", self.n)
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (kind, rest) = if let Some(r) = s.strip_prefix("gl") {
            (GroupKind::Gl, r)
        } else if let Some(r) = s.strip_prefix("sl") {
            (GroupKind::Sl, r)
        } else {
            return Err(Error::Config(format!("unknown group {s:?}; expected e.g. sl3 or gl2")));
        };
        let n: usize = rest
            .parse()
            .map_err(|_| Error::Config(format!("bad rank in group {s:?}")))?;
        if n == 0 {
            return Err(Error::Config("group rank must be positive".into()));
        }
        Ok(Self { kind, n })
    }
}

/// Field-independent description of `h`. Custom bases are integer matrices,
/// reduced modulo each prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SubgroupSpec {
    Torus,
    Borel,
    Unipotent,
    Parabolic(ParabolicComposition),
    Nilradical(ParabolicComposition),
    Trivial,
    Full,
    Custom(Vec<Vec<Vec<i64>>>),
}

impl SubgroupSpec {
    pub fn subalgebra(&self, g: Arc<MatrixLieAlgebra<PrimeField>>) -> Result<SubalgebraSpec<PrimeField>> {
        match self {
            Self::Torus => SubalgebraSpec::torus(g),
            Self::Borel => SubalgebraSpec::borel(g),
            Self::Unipotent => SubalgebraSpec::unipotent(g),
            Self::Parabolic(c) => SubalgebraSpec::parabolic(g, c.clone()),
            Self::Nilradical(c) => SubalgebraSpec::nilradical(g, c.clone()),
            Self::Trivial => Ok(SubalgebraSpec::trivial(g)),
            Self::Full => Ok(SubalgebraSpec::full(g)),
            Self::Custom(mats) => {
                let f = *g.field();
                let basis = mats
                    .iter()
                    .map(|rows| Mat::from_i64_rows(f, rows))
                    .collect::<Result<Vec<_>>>()?;
                if basis.iter().any(|m| m.rows() != g.n() || m.cols() != g.n()) {
                    return Err(Error::Config(format!("custom basis matrices must be {0}x{0}", g.n())));
                }
                SubalgebraSpec::custom(g, basis)
            }
        }
    }

    /// The composition of the parabolic normalizing `h` for the named
    /// parabolic-type subalgebras.
    pub fn parabolic_type(&self, n: usize) -> Option<ParabolicComposition> {
        match self {
            Self::Borel | Self::Unipotent => Some(ParabolicComposition::borel(n)),
            Self::Parabolic(c) | Self::Nilradical(c) => Some(c.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Torus => write!(f, "torus"),
            Self::Borel => write!(f, "borel"),
            Self::Unipotent => write!(f, "unipotent"),
            Self::Parabolic(c) => write!(f, "parabolic:{c}"),
            Self::Nilradical(c) => write!(f, "nilradical:{c}"),
            Self::Trivial => write!(f, "trivial"),
            Self::Full => write!(f, "full"),
            Self::Custom(_) => write!(f, "custom"),
        }
    }
}

impl FromStr for SubgroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(c) = s.strip_prefix("parabolic:") {
            return Ok(Self::Parabolic(c.parse()?));
        }
        if let Some(c) = s.strip_prefix("nilradical:") {
            return Ok(Self::Nilradical(c.parse()?));
        }
        match s {
            "torus" => Ok(Self::Torus),
            "borel" => Ok(Self::Borel),
            "unipotent" => Ok(Self::Unipotent),
            "trivial" => Ok(Self::Trivial),
            "full" => Ok(Self::Full),
            _ => Err(Error::Config(format!(
                "unknown subgroup {s:?}; expected torus, borel, unipotent, trivial, full, parabolic:<comp> or nilradical:<comp>"
            ))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SubgroupRepr {
    Named(String),
    Custom { basis: Vec<Vec<Vec<i64>>> },
}

impl Serialize for SubgroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Custom(basis) => SubgroupRepr::Custom { basis: basis.clone() }.serialize(s),
            other => SubgroupRepr::Named(other.to_string()).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for SubgroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match SubgroupRepr::deserialize(d)? {
            SubgroupRepr::Named(s) => s.parse().map_err(serde::de::Error::custom),
            SubgroupRepr::Custom { basis } => Ok(Self::Custom(basis)),
        }
    }
}

/// `G/H` before a field is chosen.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseSpec {
    pub group: GroupSpec,
    pub subgroup: SubgroupSpec,
}

impl CaseSpec {
    pub fn new(group: GroupSpec, subgroup: SubgroupSpec) -> Self {
        Self { group, subgroup }
    }

    pub fn space(&self, field: PrimeField) -> Result<HomogeneousSpace<PrimeField>> {
        let g = Arc::new(self.group.algebra(field));
        Ok(HomogeneousSpace::new(self.subgroup.subalgebra(g)?))
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.group, self.subgroup)
    }
}

/// One value per prime, plus the combined value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverPrimes<T> {
    pub value: T,
    pub per_prime: Vec<(u64, T)>,
}

const MODALITY_PURPOSE: u64 = 0x10;

/// Generic `k`-modality of `G/H` on every prime of the run; the combined value
/// is the minimum, since a non-generic draw can only lower an orbit rank.
pub fn generic_modality_over_primes(
    case: &CaseSpec,
    acting: &SubgroupSpec,
    gen: &Genericity,
) -> Result<OverPrimes<usize>> {
    let primes = gen.select_primes()?;
    let runs = per_prime(&primes, |i, f| {
        let x = case.space(f)?;
        let k = acting.subalgebra(x.g().clone())?;
        let mut rng = gen.rng_for(MODALITY_PURPOSE, i);
        generic_modality(&k, &x, gen.trials, &mut rng).map(|m| m.value)
    })?;
    combine_min(primes, runs)
}

pub fn complexity_over_primes(case: &CaseSpec, gen: &Genericity) -> Result<OverPrimes<usize>> {
    generic_modality_over_primes(case, &SubgroupSpec::Borel, gen)
}

fn combine_min(primes: Vec<u64>, runs: Vec<usize>) -> Result<OverPrimes<usize>> {
    let value = runs.iter().copied().min().ok_or_else(|| Error::Config("no primes".into()))?;
    Ok(OverPrimes {
        value,
        per_prime: primes.into_iter().zip(runs).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> PrimeField {
        PrimeField::new(2_147_483_647).unwrap()
    }

    fn sl(n: usize) -> Arc<MatrixLieAlgebra<PrimeField>> {
        Arc::new(MatrixLieAlgebra::sl(fp(), n))
    }

    #[test]
    fn h_perp_examples() {
        let g = sl(2);
        assert_eq!(h_perp(&SubalgebraSpec::full(g.clone())).unwrap().dim(), 0);
        assert_eq!(h_perp(&SubalgebraSpec::trivial(g.clone())).unwrap().dim(), 3);
        let t = SubalgebraSpec::torus(g.clone()).unwrap();
        let perp = h_perp(&t).unwrap();
        assert_eq!(perp.dim(), 2);
        let (e, f) = (g.basis()[0].clone(), g.basis()[2].clone());
        assert!(perp.contains(&e) && perp.contains(&f));
        assert!(!perp.contains(&g.basis()[1]));
    }

    #[test]
    fn h_perp_dimension_and_orthogonality() {
        for n in 2..=4 {
            let g = sl(n);
            let hs = vec![
                SubalgebraSpec::torus(g.clone()).unwrap(),
                SubalgebraSpec::borel(g.clone()).unwrap(),
                SubalgebraSpec::unipotent(g.clone()).unwrap(),
            ];
            for h in hs {
                let perp = h_perp(&h).unwrap();
                assert_eq!(perp.dim(), g.dim() - h.dim());
                for xi in perp.basis() {
                    for y in h.basis() {
                        assert_eq!(g.pairing(xi, y).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn named_subalgebras() {
        let g = sl(3);
        assert_eq!(SubalgebraSpec::torus(g.clone()).unwrap().dim(), 2);
        assert_eq!(SubalgebraSpec::borel(g.clone()).unwrap().dim(), 5);
        let p = SubalgebraSpec::parabolic(g.clone(), "2,1".parse().unwrap()).unwrap();
        assert_eq!(p.dim(), 6);
        assert!(SubalgebraSpec::parabolic(g.clone(), "2,2".parse().unwrap()).is_err());
        let gl = Arc::new(MatrixLieAlgebra::gl(fp(), 3));
        assert_eq!(SubalgebraSpec::borel(gl).unwrap().dim(), 6);
    }

    #[test]
    fn normalizer_of_unipotent_is_borel() {
        let g = sl(3);
        let u = SubalgebraSpec::unipotent(g.clone()).unwrap();
        let nu = u.normalizer().unwrap();
        let b = SubalgebraSpec::borel(g.clone()).unwrap();
        assert_eq!(nu.dim(), b.dim());
        assert!(nu.is_contained_in(&b));
        let t = SubalgebraSpec::torus(g).unwrap();
        assert_eq!(t.normalizer().unwrap().dim(), 2);
    }

    #[test]
    fn orbit_rank_examples() {
        let g = sl(2);
        let mut rng = SeededRng::new(1, 0);
        let full = SubalgebraSpec::full(g.clone());
        let t = SubalgebraSpec::torus(g.clone()).unwrap();
        let b = SubalgebraSpec::borel(g.clone()).unwrap();
        let x_b = HomogeneousSpace::new(b.clone());
        let x_t = HomogeneousSpace::new(t.clone());
        let r = random_group_element(&g, &GroupSampler::Full, &mut rng).unwrap();
        assert_eq!(orbit_rank_at(&full, &x_b, &r).unwrap(), x_b.dim());
        let id = Mat::identity(fp(), 2);
        assert_eq!(orbit_rank_at(&t, &x_b, &id).unwrap(), 0);
        assert_eq!(orbit_rank_at(&b, &x_t, &r).unwrap(), 2);
        let singular = Mat::zeros(fp(), 2, 2);
        assert_eq!(orbit_rank_at(&b, &x_t, &singular), Err(Error::Singular));
    }

    #[test]
    fn modality_examples() {
        let g = sl(2);
        let mut rng = SeededRng::new(2, 0);
        let t = SubalgebraSpec::torus(g.clone()).unwrap();
        let b = SubalgebraSpec::borel(g.clone()).unwrap();
        let x_t = HomogeneousSpace::new(t.clone());
        let x_b = HomogeneousSpace::new(b.clone());
        assert_eq!(generic_modality(&SubalgebraSpec::full(g.clone()), &x_t, 3, &mut rng).unwrap().value, 0);
        assert_eq!(generic_modality(&t, &x_t, 5, &mut rng).unwrap().value, 1);
        assert_eq!(generic_modality(&b, &x_b, 5, &mut rng).unwrap().value, 0);
        assert!(generic_modality(&b, &x_b, 0, &mut rng).is_err());
    }

    #[test]
    fn complexity_examples() {
        let g = sl(2);
        let mut rng = SeededRng::new(3, 0);
        let spaces = [
            (SubalgebraSpec::borel(g.clone()).unwrap(), 0),
            (SubalgebraSpec::torus(g.clone()).unwrap(), 0),
            (SubalgebraSpec::trivial(g.clone()), 1),
        ];
        for (h, expected) in spaces {
            let x = HomogeneousSpace::new(h);
            assert_eq!(complexity(&x, 5, &mut rng).unwrap().value, expected);
        }
    }

    #[test]
    fn c_orbit_examples() {
        let zero = Partition::zero_orbit(2);
        let reg = Partition::regular(2);
        assert_eq!(c_orbit(&zero, Some(0)), Some(0));
        assert_eq!(c_orbit(&reg, Some(1)), Some(0));
        assert_eq!(c_orbit(&reg, Some(2)), Some(1));
        assert_eq!(c_orbit(&reg, None), None);
    }

    #[test]
    fn sampled_group_elements_have_unit_determinant() {
        let g = sl(3);
        let mut rng = SeededRng::new(4, 0);
        for which in [
            GroupSampler::Full,
            GroupSampler::Torus,
            GroupSampler::Parabolic("1,2".parse().unwrap()),
        ] {
            let m = random_group_element(&g, &which, &mut rng).unwrap();
            assert_eq!(m.determinant().unwrap(), 1);
        }
    }

    #[test]
    fn specs_parse_and_round_trip() {
        let g: GroupSpec = "sl3".parse().unwrap();
        assert_eq!(g, GroupSpec { kind: GroupKind::Sl, n: 3 });
        assert_eq!(g.to_string(), "sl3");
        assert!("so3".parse::<GroupSpec>().is_err());
        assert!("sl0".parse::<GroupSpec>().is_err());
        for s in ["torus", "borel", "unipotent", "trivial", "full", "parabolic:2,1", "nilradical:1,2"] {
            let h: SubgroupSpec = s.parse().unwrap();
            assert_eq!(h.to_string(), s);
            let json = serde_json::to_string(&h).unwrap();
            assert_eq!(serde_json::from_str::<SubgroupSpec>(&json).unwrap(), h);
        }
        let custom = SubgroupSpec::Custom(vec![vec![vec![1, 0], vec![0, -1]]]);
        let json = serde_json::to_string(&custom).unwrap();
        assert_eq!(serde_json::from_str::<SubgroupSpec>(&json).unwrap(), custom);
        let x = CaseSpec::new("sl2".parse().unwrap(), custom).space(fp()).unwrap();
        assert_eq!(x.dim(), 2);
    }

    #[test]
    fn complexity_over_primes_examples() {
        let gen = Genericity::default();
        let case = |h: &str| CaseSpec::new("sl3".parse().unwrap(), h.parse().unwrap());
        assert_eq!(complexity_over_primes(&case("torus"), &gen).unwrap().value, 1);
        assert_eq!(complexity_over_primes(&case("trivial"), &gen).unwrap().value, 3);
        assert_eq!(complexity_over_primes(&case("parabolic:2,1"), &gen).unwrap().value, 0);
        let r = complexity_over_primes(&case("borel"), &gen).unwrap();
        assert_eq!(r.per_prime.len(), 5);
    }
}
