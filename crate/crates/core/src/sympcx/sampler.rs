//! Samplers for `O ∩ h^perp`: closed-form linear families for the named
//! subgroups, slices solved by resultants, and conjugation of representatives.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::sample::{Catalog, IntersectionContext, IntersectionSample};
use crate::error::{Error, Result};
use crate::exactalg::{resultant_in_t, univariate_roots, BiPoly, Field, PrimeField, SeededRng, UniPoly};
use crate::homspace::{conjugate, random_group_element};
use crate::liestruct::weyl::permutations;
use crate::liestruct::{elementary, jordan_type, Mat, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    #[default]
    Auto,
    Catalog,
    SliceSolve,
    Conjugation,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Auto => "auto",
            Self::Catalog => "catalog",
            Self::SliceSolve => "slice_solve",
            Self::Conjugation => "conjugation",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "auto" => Ok(Self::Auto),
            "catalog" => Ok(Self::Catalog),
            "slice_solve" => Ok(Self::SliceSolve),
            "conjugation" => Ok(Self::Conjugation),
            _ => Err(Error::Config(format!("unknown sampler strategy {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerConfig {
    pub strategy: Strategy,
    /// Target number of points.
    pub count: usize,
    /// Maximum number of random draws per orbit and prime.
    pub retry_budget: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::Auto,
            count: 8,
            retry_budget: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Emptiness {
    Nonempty,
    CertifiedEmpty { reason: String },
    /// No `F_p` point was found; this does not prove emptiness.
    PossiblyEmpty { attempts: usize },
}

#[derive(Debug, Clone)]
pub struct SampleBatch {
    pub samples: Vec<IntersectionSample<PrimeField>>,
    pub attempts: usize,
    pub emptiness: Emptiness,
}

/// A coordinate subspace of `h^perp` spanned by elementary matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Family {
    label: String,
    positions: Vec<(usize, usize)>,
}

fn is_subset(a: &[(usize, usize)], b: &[(usize, usize)]) -> bool {
    a.iter().all(|p| b.contains(p))
}

/// `n ∩ Ad(w) n` for every permutation `w`, restricted to `allowed`.
fn steinberg_families(n: usize, allowed: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut out: Vec<Vec<(usize, usize)>> = Vec::new();
    for w in permutations(n) {
        let fam: Vec<(usize, usize)> = allowed.iter().copied().filter(|&(i, j)| w[i] < w[j]).collect();
        if !fam.is_empty() && !out.contains(&fam) {
            out.push(fam);
        }
    }
    out
}

/// Largest rank for which the torus families use every permutation conjugate.
const TORUS_FULL_ENUMERATION: usize = 4;

fn families(ctx: &IntersectionContext, lambda: &Partition) -> Vec<Family> {
    let n = ctx.x.g().n();
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    match &ctx.catalog {
        Catalog::Trivial => {
            let mut positions = Vec::new();
            let mut start = 0;
            for &b in lambda.parts() {
                positions.extend((start..start + b - 1).map(|k| (k, k + 1)));
                start += b;
            }
            vec![Family {
                label: format!("jordan({lambda})"),
                positions,
            }]
        }
        Catalog::ParabolicType {
            comp,
            perp_is_nilradical,
        } => {
            let allowed = if *perp_is_nilradical {
                comp.nilradical_positions()
            } else {
                upper
            };
            steinberg_families(n, &allowed)
                .into_iter()
                .enumerate()
                .map(|(i, positions)| Family {
                    label: format!("steinberg#{i}"),
                    positions,
                })
                .collect()
        }
        Catalog::Torus => {
            let base = steinberg_families(n, &upper);
            let pis = if n <= TORUS_FULL_ENUMERATION {
                permutations(n)
            } else {
                vec![(0..n).collect()]
            };
            let mut out: Vec<Vec<(usize, usize)>> = Vec::new();
            for pi in &pis {
                for fam in &base {
                    let mut moved: Vec<(usize, usize)> = fam.iter().map(|&(i, j)| (pi[i], pi[j])).collect();
                    moved.sort_unstable();
                    if !out.contains(&moved) {
                        out.push(moved);
                    }
                }
            }
            out.into_iter()
                .enumerate()
                .map(|(i, positions)| Family {
                    label: format!("permuted#{i}"),
                    positions,
                })
                .collect()
        }
        Catalog::Full | Catalog::None => Vec::new(),
    }
}

fn random_nonzero(f: &PrimeField, rng: &mut SeededRng) -> u64 {
    rng.random_range(1..f.modulus())
}

fn basis_of(f: &PrimeField, n: usize, positions: &[(usize, usize)]) -> Vec<Mat<PrimeField>> {
    positions.iter().map(|&(i, j)| elementary(f, n, i, j)).collect()
}

fn random_point(f: &PrimeField, n: usize, positions: &[(usize, usize)], rng: &mut SeededRng) -> Mat<PrimeField> {
    let mut m = Mat::zeros(*f, n, n);
    for &(i, j) in positions {
        m.set(i, j, random_nonzero(f, rng));
    }
    m
}

struct Budget {
    used: usize,
    limit: usize,
}

impl Budget {
    fn take(&mut self) -> bool {
        if self.used >= self.limit {
            return false;
        }
        self.used += 1;
        true
    }
}

/// Families whose random points have type `lambda`, keeping only those not
/// strictly contained in another such family.
fn lambda_families(
    ctx: &IntersectionContext,
    lambda: &Partition,
    fams: &[Family],
    budget: &mut Budget,
    rng: &mut SeededRng,
) -> Result<Vec<Family>> {
    let f = *ctx.field();
    let n = ctx.x.g().n();
    let mut hits = Vec::new();
    for fam in fams {
        if !budget.take() {
            break;
        }
        if jordan_type(&random_point(&f, n, &fam.positions, rng))? == *lambda {
            hits.push(fam.clone());
        }
    }
    let maximal = hits
        .iter()
        .filter(|a| {
            !hits
                .iter()
                .any(|b| b.positions.len() > a.positions.len() && is_subset(&a.positions, &b.positions))
        })
        .cloned()
        .collect();
    Ok(maximal)
}

fn conjugated(
    ctx: &IntersectionContext,
    a0: Mat<PrimeField>,
    basis: Vec<Mat<PrimeField>>,
    rng: &mut SeededRng,
) -> Result<(Mat<PrimeField>, Vec<Mat<PrimeField>>)> {
    let Some(group) = ctx.catalog.normalizer_group() else {
        return Ok((a0, basis));
    };
    let g = random_group_element(ctx.x.g(), &group, rng)?;
    let g_inv = g.inverse()?;
    let a = conjugate(&g, &g_inv, &a0)?;
    let basis = basis
        .iter()
        .map(|b| conjugate(&g, &g_inv, b))
        .collect::<Result<_>>()?;
    Ok((a, basis))
}

fn catalog_samples(
    ctx: &IntersectionContext,
    lambda: &Partition,
    config: &SamplerConfig,
    budget: &mut Budget,
    rng: &mut SeededRng,
    keep_family: bool,
) -> Result<Vec<IntersectionSample<PrimeField>>> {
    let f = *ctx.field();
    let n = ctx.x.g().n();
    let fams = families(ctx, lambda);
    if fams.is_empty() {
        return Ok(Vec::new());
    }
    let lam = lambda_families(ctx, lambda, &fams, budget, rng)?;
    let mut out = Vec::new();
    if !lam.is_empty() {
        let target = config.count.max(lam.len());
        // conjugation: one fixed representative per family
        let reps: Vec<Mat<PrimeField>> = lam.iter().map(|fam| random_point(&f, n, &fam.positions, rng)).collect();
        let mut i = 0;
        while out.len() < target && budget.take() {
            let k = i % lam.len();
            i += 1;
            let fam = &lam[k];
            let a0 = if keep_family {
                random_point(&f, n, &fam.positions, rng)
            } else {
                reps[k].clone()
            };
            if jordan_type(&a0)? != *lambda {
                continue;
            }
            let (a, basis) = conjugated(ctx, a0, basis_of(&f, n, &fam.positions), rng)?;
            let family = keep_family.then_some(basis.as_slice());
            out.push(ctx.analyze(a, lambda, family, fam.label.clone())?);
        }
        return Ok(out);
    }
    // no family has generic type lambda: try random coordinate subfamilies
    let mut i = 0;
    while out.len() < config.count && budget.take() {
        let fam = &fams[i % fams.len()];
        i += 1;
        let sub: Vec<(usize, usize)> = fam.positions.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
        if sub.is_empty() {
            continue;
        }
        let a0 = random_point(&f, n, &sub, rng);
        if jordan_type(&a0)? != *lambda {
            continue;
        }
        let (a, basis) = conjugated(ctx, a0, basis_of(&f, n, &sub), rng)?;
        let family = keep_family.then_some(basis.as_slice());
        out.push(ctx.analyze(a, lambda, family, format!("{}/sub", fam.label))?);
    }
    Ok(out)
}

/// `e_1, ..., e_n` of the eigenvalues, from power sums by Newton's identities.
fn elementary_symmetric(m: &Mat<PrimeField>) -> Vec<u64> {
    let f = *m.field();
    let n = m.rows();
    let mut power = m.clone();
    let mut p = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            power = power.mul(m).expect("square");
        }
        p.push(power.trace());
    }
    let mut e = vec![f.one()];
    for k in 1..=n {
        let mut acc = f.zero();
        for i in 1..=k {
            let term = f.mul(&e[k - i], &p[i - 1]);
            acc = if i % 2 == 1 { f.add(&acc, &term) } else { f.sub(&acc, &term) };
        }
        let inv_k = f.inv(&f.from_i64(k as i64)).expect("p > n");
        e.push(f.mul(&acc, &inv_k));
    }
    e.split_off(1)
}

fn combo(m0: &Mat<PrimeField>, terms: &[(&Mat<PrimeField>, u64)]) -> Mat<PrimeField> {
    let mut m = m0.clone();
    for (b, c) in terms {
        m = m.add(&b.scale(c)).expect("same shape");
    }
    m
}

/// One slice: random values on all but at most two coordinates of `h^perp`
/// (each set to zero with probability `zero_prob`), then solve the nilpotency
/// equations in the remaining two. Returns the nilpotent solutions of type `lambda`.
fn slice_attempt(
    ctx: &IntersectionContext,
    lambda: &Partition,
    zero_prob: f64,
    rng: &mut SeededRng,
) -> Result<Vec<Mat<PrimeField>>> {
    let f = *ctx.field();
    let basis = ctx.perp.basis();
    let m = basis.len();
    let n = ctx.x.g().n();
    if m == 0 {
        return Ok(Vec::new());
    }
    let i = rng.random_range(0..m);
    let j = if m > 1 {
        let j = rng.random_range(0..m - 1);
        if j >= i {
            j + 1
        } else {
            j
        }
    } else {
        i
    };
    let mut a0 = Mat::zeros(f, n, n);
    for (k, b) in basis.iter().enumerate() {
        if k == i || k == j || rng.random_bool(zero_prob) {
            continue;
        }
        a0 = a0.add(&b.scale(&rng.random_range(0..f.modulus())))?;
    }
    let (a1, a2) = (&basis[i], &basis[j]);
    let mut candidates: Vec<(u64, u64)> = Vec::new();
    if m == 1 {
        let xs: Vec<u64> = (0..=n as u64).collect();
        let evals: Vec<Vec<u64>> = xs.iter().map(|&s| elementary_symmetric(&combo(&a0, &[(a1, s)]))).collect();
        let mut g = UniPoly::zero(f);
        for k in 0..n {
            let ys: Vec<u64> = evals.iter().map(|e| e[k]).collect();
            g = g.gcd(&UniPoly::interpolate(f, &xs, &ys)?);
        }
        let roots = if g.is_zero() {
            vec![rng.random_range(0..f.modulus())]
        } else {
            univariate_roots(&g)?
        };
        candidates.extend(roots.into_iter().map(|s| (s, 0)));
    } else {
        let mut grid = vec![vec![Vec::new(); n + 1]; n + 1];
        for (s, row) in grid.iter_mut().enumerate() {
            for (t, cell) in row.iter_mut().enumerate() {
                *cell = elementary_symmetric(&combo(&a0, &[(a1, s as u64), (a2, t as u64)]));
            }
        }
        let poly_of = |weights: &[u64]| {
            BiPoly::interpolate_grid(f, n, |s, t| {
                let e = &grid[s as usize][t as usize];
                weights.iter().zip(e).fold(0, |acc, (w, v)| f.add(&acc, &f.mul(w, v)))
            })
        };
        let mut eqs = Vec::new();
        for k in 0..n {
            let mut w = vec![0; n];
            w[k] = 1;
            let p = poly_of(&w)?;
            if !p.is_zero() {
                eqs.push(p);
            }
        }
        let random_t = |rng: &mut SeededRng| rng.random_range(0..f.modulus());
        let solve_one = |g: &BiPoly, rng: &mut SeededRng| -> Result<Vec<(u64, u64)>> {
            let s0 = rng.random_range(0..f.modulus());
            let p = g.in_t(s0);
            if p.is_zero() {
                return Ok(vec![(s0, random_t(rng))]);
            }
            Ok(univariate_roots(&p)?.into_iter().map(|t| (s0, t)).collect())
        };
        match eqs.len() {
            0 => candidates.push((random_t(rng), random_t(rng))),
            1 => candidates.extend(solve_one(&eqs[0], rng)?),
            _ => {
                let w1: Vec<u64> = (0..n).map(|_| rng.random_range(1..f.modulus())).collect();
                let w2: Vec<u64> = (0..n).map(|_| rng.random_range(1..f.modulus())).collect();
                let g1 = poly_of(&w1)?;
                let g2 = poly_of(&w2)?;
                let res = resultant_in_t(&g1, &g2)?;
                if res.is_zero() {
                    candidates.extend(solve_one(&g1, rng)?);
                } else {
                    for s0 in univariate_roots(&res)? {
                        let g = g1.in_t(s0).gcd(&g2.in_t(s0));
                        if g.is_zero() {
                            candidates.push((s0, random_t(rng)));
                        } else if g.degree().unwrap_or(0) > 0 {
                            candidates.extend(univariate_roots(&g)?.into_iter().map(|t| (s0, t)));
                        }
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for (s, t) in candidates {
        let point = if m == 1 {
            combo(&a0, &[(a1, s)])
        } else {
            combo(&a0, &[(a1, s), (a2, t)])
        };
        if elementary_symmetric(&point).iter().all(|c| *c == 0) && jordan_type(&point)? == *lambda {
            out.push(point);
        }
    }
    Ok(out)
}

fn slice_samples(
    ctx: &IntersectionContext,
    lambda: &Partition,
    count: usize,
    limit: usize,
    allow_zeros: bool,
    budget: &mut Budget,
    rng: &mut SeededRng,
) -> Result<Vec<IntersectionSample<PrimeField>>> {
    let mut out = Vec::new();
    let start = budget.used;
    while out.len() < count && budget.used - start < limit && budget.take() {
        let used = budget.used - start;
        // plain slices first, then slices with random zero patterns
        let zero_prob = if allow_zeros && used > limit / 2 {
            [0.25, 0.5, 0.75][rng.random_range(0..3)]
        } else {
            0.0
        };
        for a in slice_attempt(ctx, lambda, zero_prob, rng)? {
            if out.len() >= count {
                break;
            }
            out.push(ctx.analyze(a, lambda, None, "slice".into())?);
        }
    }
    Ok(out)
}

/// Slices solved without zero patterns, as a supplement to catalog families.
const SLICE_SUPPLEMENT_FACTOR: usize = 16;

/// Up to `config.count` points of `O ∩ h^perp` with Jordan type exactly `lambda`.
pub fn sample_intersection(
    ctx: &IntersectionContext,
    lambda: &Partition,
    config: &SamplerConfig,
    rng: &mut SeededRng,
) -> Result<SampleBatch> {
    let n = ctx.x.g().n();
    if lambda.n() != n {
        return Err(Error::InvalidPartition(format!("{lambda} is not a partition of {n}")));
    }
    let empty = |reason: &str| SampleBatch {
        samples: Vec::new(),
        attempts: 0,
        emptiness: Emptiness::CertifiedEmpty {
            reason: reason.to_string(),
        },
    };
    if lambda.is_zero_orbit() {
        let zero = ctx.x.g().zero();
        let s = ctx.analyze(zero, lambda, None, "zero".into())?;
        return Ok(SampleBatch {
            samples: vec![s],
            attempts: 0,
            emptiness: Emptiness::Nonempty,
        });
    }
    if ctx.perp.dim() == 0 {
        return Ok(empty("h^perp = 0 contains only the zero orbit"));
    }
    if let Some(reason) = ctx.catalog.certified_empty(lambda) {
        return Ok(empty(reason));
    }
    let mut budget = Budget {
        used: 0,
        limit: config.retry_budget,
    };
    let has_families = !matches!(ctx.catalog, Catalog::Full | Catalog::None);
    let needs_slices = matches!(ctx.catalog, Catalog::Torus | Catalog::None);
    let mut samples = match config.strategy {
        Strategy::Catalog => catalog_samples(ctx, lambda, config, &mut budget, rng, true)?,
        Strategy::Conjugation => catalog_samples(ctx, lambda, config, &mut budget, rng, false)?,
        Strategy::SliceSolve => slice_samples(ctx, lambda, config.count, usize::MAX, true, &mut budget, rng)?,
        Strategy::Auto => {
            let mut s = if has_families {
                catalog_samples(ctx, lambda, config, &mut budget, rng, true)?
            } else {
                Vec::new()
            };
            if needs_slices {
                let cap = SLICE_SUPPLEMENT_FACTOR * config.count;
                s.extend(slice_samples(ctx, lambda, config.count, cap, false, &mut budget, rng)?);
            }
            if s.is_empty() {
                s = slice_samples(ctx, lambda, config.count, usize::MAX, true, &mut budget, rng)?;
            }
            s
        }
    };
    samples.retain(|s| s.jordan_check == *lambda);
    let emptiness = if samples.is_empty() {
        Emptiness::PossiblyEmpty { attempts: budget.used }
    } else {
        Emptiness::Nonempty
    };
    Ok(SampleBatch {
        samples,
        attempts: budget.used,
        emptiness,
    })
}
