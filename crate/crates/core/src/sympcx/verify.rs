//! Checks of the identities relating symplectic complexity to complexity,
//! modality and `c_Xi`, each side computed by its own code path.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use super::invariant::{sc_orbit, sc_orbit_over_primes, sc_set, OrbitSet};
use super::kks::kks_gram;
use super::sample::{Catalog, IntersectionContext};
use super::sampler::{sample_intersection, SamplerConfig, Strategy};
use crate::error::{Error, Result};
use crate::exactalg::matrix::span_rank;
use crate::exactalg::{per_prime, Field, Genericity, PrimeField};
use crate::homspace::{
    complexity_over_primes, generic_modality_over_primes, orbit_rank_at, CaseSpec, GroupKind, GroupSpec, HomogeneousSpace, SubalgebraSpec, SubgroupSpec,
};
use crate::liestruct::{
    bracket, double_coset_representatives, jordan_type, richardson_partition, Mat, ParabolicComposition, Partition,
};
use crate::symplin::SdimInterval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// PASS only if every part passes; any FAIL wins.
    pub fn all(parts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Pass;
        for v in parts {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Pass => {}
            }
        }
        out
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
            Self::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub kind: String,
    pub detail: Value,
}

impl Certificate {
    pub fn new(kind: &str, detail: Value) -> Self {
        Self {
            kind: kind.to_string(),
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportValue {
    Value(Value),
    Interval(SdimInterval),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScReport {
    pub invariant: String,
    pub value: ReportValue,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub samples_used: usize,
    pub certificates: Vec<Certificate>,
    pub verdict: Option<Verdict>,
}

/// Which identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    /// `sc_Xi(X) >= max(c_Xi(X), 0)`.
    I,
    /// `sc` of the Richardson closure of `P` equals the `P`-modality.
    III,
    /// `sc_N(X) = c(X)`.
    IV,
    /// Equivalence of `sc = 0`, `c_Xi <= 0` and finitely many `P`-orbits.
    CorB,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::I => "i",
            Self::III => "iii",
            Self::IV => "iv",
            Self::CorB => "cor-b",
        })
    }
}

impl FromStr for Clause {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "i" => Ok(Self::I),
            "iii" => Ok(Self::III),
            "iv" => Ok(Self::IV),
            "cor-b" | "cor_b" | "corb" => Ok(Self::CorB),
            other => Err(Error::Config(format!("unknown clause {other:?}; expected i, iii, iv or cor-b"))),
        }
    }
}

/// A theorem check: the clause and its data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoremCheck {
    I { case: CaseSpec, orbits: OrbitSet },
    III { case: CaseSpec, p: ParabolicComposition },
    IV { case: CaseSpec },
    CorB { case: CaseSpec, p: ParabolicComposition },
}

pub fn verify_theorem_a(check: &TheoremCheck, gen: &Genericity, sampler: &SamplerConfig) -> Result<ScReport> {
    match check {
        TheoremCheck::I { case, orbits } => verify_clause_i(case, orbits, gen, sampler),
        TheoremCheck::III { case, p } => verify_clause_iii(case, p, gen),
        TheoremCheck::IV { case } => verify_clause_iv(case, gen, sampler),
        TheoremCheck::CorB { case, p } => verify_cor_b(case, p, gen, sampler),
    }
}

fn orbit_certificates(set: &super::invariant::ScSet) -> Vec<Certificate> {
    set.orbits
        .iter()
        .map(|o| {
            Certificate::new(
                "sc_orbit",
                json!({
                    "orbit": o.lambda,
                    "interval": o.interval,
                    "symplectic_lower": o.symplectic_lower,
                    "dim_intersection": o.dim_estimate,
                    "dim_exact": o.dim_exact,
                    "c_orbit": o.c_orbit,
                    "emptiness": o.emptiness,
                    "samples": o.samples,
                }),
            )
        })
        .collect()
}

fn samples_used(set: &super::invariant::ScSet) -> usize {
    set.orbits.iter().map(|o| o.samples).sum()
}

pub fn verify_clause_iv(case: &CaseSpec, gen: &Genericity, sampler: &SamplerConfig) -> Result<ScReport> {
    let set = sc_set(case, &OrbitSet::NilpotentCone, gen, sampler)?;
    let c = complexity_over_primes(case, gen)?;
    let verdict = if !set.interval.contains(c.value) {
        Verdict::Fail
    } else if set.interval.value() == Some(c.value) {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    let mut certificates = vec![Certificate::new(
        "complexity",
        json!({ "value": c.value, "per_prime": c.per_prime, "trials": gen.trials }),
    )];
    certificates.extend(orbit_certificates(&set));
    Ok(ScReport {
        invariant: format!("sc_N({case}) = c({case})"),
        value: ReportValue::Interval(set.interval),
        primes: set.primes.clone(),
        seed: gen.seed,
        samples_used: samples_used(&set),
        certificates,
        verdict: Some(verdict),
    })
}

pub fn verify_clause_i(
    case: &CaseSpec,
    orbits: &OrbitSet,
    gen: &Genericity,
    sampler: &SamplerConfig,
) -> Result<ScReport> {
    let set = sc_set(case, orbits, gen, sampler)?;
    let mut verdicts = Vec::new();
    let mut certificates = Vec::new();
    for o in &set.orbits {
        let target = o.c_orbit.map_or(0, |c| c.max(0) as usize);
        // the symplectic lower bound does not use c_O itself
        let v = if o.symplectic_lower >= target && o.interval.lower >= target {
            Verdict::Pass
        } else if o.interval.upper < target {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        };
        verdicts.push(v);
        certificates.push(Certificate::new(
            "orbit_inequality",
            json!({
                "orbit": o.lambda,
                "interval": o.interval,
                "symplectic_lower": o.symplectic_lower,
                "c_orbit": o.c_orbit,
                "max_c_orbit_0": target,
                "verdict": v,
            }),
        ));
    }
    certificates.extend(orbit_certificates(&set));
    Ok(ScReport {
        invariant: format!("sc_Xi({case}) >= max(c_Xi, 0) for Xi = {orbits}"),
        value: ReportValue::Interval(set.interval),
        primes: set.primes.clone(),
        seed: gen.seed,
        samples_used: samples_used(&set),
        certificates,
        verdict: Some(Verdict::all(verdicts)),
    })
}

/// Permutation matrix sending `e_j` to `e_{w(j)}`, with one column negated in
/// `SL_n` when `w` is odd.
pub fn permutation_matrix(f: &PrimeField, w: &[usize], kind: GroupKind) -> Mat<PrimeField> {
    let n = w.len();
    let mut m = Mat::zeros(*f, n, n);
    for (j, &i) in w.iter().enumerate() {
        m.set(i, j, f.one());
    }
    if kind == GroupKind::Sl {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count();
        if inversions % 2 == 1 && n > 0 {
            let i = w[0];
            m.set(i, 0, f.neg(&f.one()));
        }
    }
    m
}

/// `dim P·wQ/Q = dim p - dim(p ∩ Ad(w) q)`, counted on matrix positions.
fn double_coset_orbit_dim(p: &ParabolicComposition, q: &ParabolicComposition, w: &[usize]) -> usize {
    let pp = p.parabolic_positions();
    let bp = p.block_of();
    let moved = q.parabolic_positions().into_iter().map(|(i, j)| (w[i], w[j]));
    let common = moved.filter(|&(i, j)| bp[i] <= bp[j]).count();
    pp.len() - common
}

const RICHARDSON_PURPOSE: u64 = 0x30;

#[derive(Debug, Clone, Serialize)]
struct RichardsonOnPrime {
    prime: u64,
    samples: usize,
    richardson_type_hits: usize,
    isotropic: bool,
    max_orbit_dim: usize,
    strata_ranks_match: bool,
    open_stratum_rank: usize,
}

/// Clause (iii) for `X = G/Q` with `Q` parabolic: the `P`-orbits are the
/// finitely many double cosets, so the `P`-modality is 0; on the other side
/// `[p, a]` at a Richardson `a` in `n_P` is isotropic (`tr(a [p,p]) = 0`) and
/// of full dimension `dim n_P`.
pub fn verify_clause_iii(case: &CaseSpec, p: &ParabolicComposition, gen: &Genericity) -> Result<ScReport> {
    let n = case.group.n;
    if p.n() != n {
        return Err(Error::InvalidComposition(format!("{p} does not sum to {n}")));
    }
    let q = match case.subgroup.clone() {
        SubgroupSpec::Parabolic(q) => q,
        SubgroupSpec::Borel => ParabolicComposition::borel(n),
        _ => return verify_clause_iii_generic(case, p, gen),
    };
    let reps = double_coset_representatives(n, p, &q)?;
    let declared: Vec<usize> = reps.iter().map(|w| double_coset_orbit_dim(p, &q, w)).collect();
    let rich = richardson_partition(p);
    let primes = gen.select_primes()?;
    let kind = case.group.kind;
    let runs: Vec<RichardsonOnPrime> = per_prime(&primes, |i, f| {
        let x = case.space(f)?;
        let pa = SubalgebraSpec::parabolic(x.g().clone(), p.clone())?;
        let mut ranks = Vec::with_capacity(reps.len());
        for w in &reps {
            ranks.push(orbit_rank_at(&pa, &x, &permutation_matrix(&f, w, kind))?);
        }
        let strata_ranks_match = ranks == declared;
        let open_stratum_rank = ranks.iter().copied().max().unwrap_or(0);
        let nil = SubalgebraSpec::nilradical(x.g().clone(), p.clone())?;
        let mut rng = gen.rng_for(RICHARDSON_PURPOSE, i);
        let mut isotropic = true;
        let mut hits = 0;
        let mut max_orbit_dim = 0;
        for _ in 0..gen.trials {
            let a = random_in(&f, n, nil.basis(), &mut rng);
            if jordan_type(&a)? == rich {
                hits += 1;
            }
            let gram = kks_gram(&f, &a, pa.basis())?;
            isotropic &= gram.gram().is_zero();
            let images: Vec<Vec<u64>> = pa
                .basis()
                .iter()
                .map(|y| bracket(y, &a).map(Mat::into_entries))
                .collect::<Result<_>>()?;
            max_orbit_dim = max_orbit_dim.max(span_rank(&f, n * n, &images));
        }
        Ok(RichardsonOnPrime {
            prime: f.modulus(),
            samples: gen.trials,
            richardson_type_hits: hits,
            isotropic,
            max_orbit_dim,
            strata_ranks_match,
            open_stratum_rank,
        })
    })?;
    let dim_x = {
        let any = case.space(PrimeField::new(primes[0])?)?;
        any.dim()
    };
    // modality over the double-coset stratification: max(dim stratum - orbit rank)
    let strata_ok = runs.iter().all(|r| r.strata_ranks_match);
    let p_modality = if strata_ok { Some(0usize) } else { None };
    let isotropic = runs.iter().all(|r| r.isotropic);
    let attained = runs.iter().all(|r| r.max_orbit_dim == p.nilradical_dim());
    let rich_found = runs.iter().all(|r| r.richardson_type_hits > 0);
    let open_ok = runs.iter().all(|r| r.open_stratum_rank == dim_x) && declared.iter().max() == Some(&dim_x);
    let sc_upper = if isotropic { 0 } else { p.nilradical_dim() };
    let interval = SdimInterval::new(0, sc_upper)?;
    let verdict = if !isotropic {
        Verdict::Fail
    } else if strata_ok && attained && rich_found && open_ok && p_modality == interval.value() {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    let certificates = vec![
        Certificate::new(
            "double_cosets",
            json!({
                "p": p,
                "q": q,
                "count": reps.len(),
                "representatives": reps,
                "stratum_dims": declared,
                "dim_x": dim_x,
            }),
        ),
        Certificate::new(
            "p_modality",
            json!({ "value": p_modality, "strata_ranks_match": strata_ok, "open_stratum": open_ok }),
        ),
        Certificate::new(
            "richardson_isotropy",
            json!({
                "richardson": rich,
                "dim_n_p": p.nilradical_dim(),
                "isotropic": isotropic,
                "dim_attained": attained,
                "per_prime": runs,
            }),
        ),
    ];
    Ok(ScReport {
        invariant: format!("sc_closure(O_P)({case}) = P-modality, P = {p}"),
        value: ReportValue::Interval(interval),
        primes,
        seed: gen.seed,
        samples_used: gen.trials * gen.primes,
        certificates,
        verdict: Some(verdict),
    })
}

/// Clause (iii) without a known stratification: the generic `P`-modality is
/// only a lower bound for the modality, so the check can fail but not pass.
fn verify_clause_iii_generic(case: &CaseSpec, p: &ParabolicComposition, gen: &Genericity) -> Result<ScReport> {
    let sampler = SamplerConfig::default();
    let set = sc_set(case, &OrbitSet::RichardsonClosure(p.clone()), gen, &sampler)?;
    let d = generic_modality_over_primes(case, &SubgroupSpec::Parabolic(p.clone()), gen)?;
    let verdict = if d.value > set.interval.upper {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    };
    let mut certificates = vec![Certificate::new(
        "p_modality",
        json!({
            "value": null,
            "generic_modality": d.value,
            "note": "requires stratification input",
        }),
    )];
    certificates.extend(orbit_certificates(&set));
    Ok(ScReport {
        invariant: format!("sc_closure(O_P)({case}) = P-modality, P = {p}"),
        value: ReportValue::Interval(set.interval),
        primes: set.primes.clone(),
        seed: gen.seed,
        samples_used: samples_used(&set),
        certificates,
        verdict: Some(verdict),
    })
}

fn random_in(f: &PrimeField, n: usize, basis: &[Mat<PrimeField>], rng: &mut crate::exactalg::SeededRng) -> Mat<PrimeField> {
    use rand::Rng;
    let mut m = Mat::zeros(*f, n, n);
    for b in basis {
        m = m.add(&b.scale(&rng.random_range(0..f.modulus()))).expect("same shape");
    }
    m
}

/// Equivalence of (a) `sc_closure(O_P) = 0`, (b) `c_Xi <= 0` for the closure
/// and (c) finitely many `P`-orbits. Each is evaluated to true, false or unknown.
pub fn verify_cor_b(
    case: &CaseSpec,
    p: &ParabolicComposition,
    gen: &Genericity,
    sampler: &SamplerConfig,
) -> Result<ScReport> {
    let n = case.group.n;
    let set = sc_set(case, &OrbitSet::RichardsonClosure(p.clone()), gen, sampler)?;
    let a = if set.interval.value() == Some(0) {
        Some(true)
    } else if set.interval.lower > 0 {
        Some(false)
    } else {
        None
    };
    let c_xi = set.c_xi();
    let all_exact = set.orbits.iter().all(|o| o.dim_exact);
    let b = match c_xi {
        Some(c) if c > 0 => Some(false),
        _ if all_exact => Some(true),
        _ => None,
    };
    let (c, finite_how) = match &case.subgroup {
        SubgroupSpec::Parabolic(q) => (Some(true), json!({ "double_cosets": double_coset_representatives(n, p, q)?.len() })),
        SubgroupSpec::Borel => (
            Some(true),
            json!({ "double_cosets": double_coset_representatives(n, p, &ParabolicComposition::borel(n))?.len() }),
        ),
        _ => {
            let d = generic_modality_over_primes(case, &SubgroupSpec::Parabolic(p.clone()), gen)?;
            let is_borel = p.blocks().iter().all(|&b| b == 1);
            // for a Borel, finitely many orbits is equivalent to an open orbit
            let c = if d.value > 0 {
                Some(false)
            } else if is_borel {
                Some(true)
            } else {
                None
            };
            (c, json!({ "generic_modality": d.value }))
        }
    };
    let known: Vec<bool> = [a, b, c].into_iter().flatten().collect();
    let verdict = if known.windows(2).any(|w| w[0] != w[1]) {
        Verdict::Fail
    } else if known.len() == 3 {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    let mut certificates = vec![Certificate::new(
        "equivalence",
        json!({
            "sc_zero": a,
            "xi_spherical": b,
            "c_xi": c_xi,
            "finitely_many_orbits": c,
            "finiteness": finite_how,
        }),
    )];
    certificates.extend(orbit_certificates(&set));
    Ok(ScReport {
        invariant: format!("sc_closure(O_P)({case}) = 0 <=> c_Xi <= 0 <=> finitely many P-orbits, P = {p}"),
        value: ReportValue::Interval(set.interval),
        primes: set.primes.clone(),
        seed: gen.seed,
        samples_used: samples_used(&set),
        certificates,
        verdict: Some(verdict),
    })
}

const ORBITAL_PURPOSE: u64 = 0x40;

#[derive(Debug, Clone, Serialize)]
struct OrbitalOnPrime {
    prime: u64,
    samples: usize,
    isotropic: bool,
    max_borel_orbit_dim: usize,
    interval: SdimInterval,
}

/// For `H = B`: sample `O ∩ n`, check that `tr(a [b, b]) = 0` exactly and that
/// some `B`-orbit reaches `dim O / 2`.
pub fn orbital_variety_check(lambda: &Partition, n: usize, gen: &Genericity, sampler: &SamplerConfig) -> Result<ScReport> {
    if lambda.n() != n {
        return Err(Error::InvalidPartition(format!("{lambda} is not a partition of {n}")));
    }
    let case = CaseSpec::new(GroupSpec { kind: GroupKind::Sl, n }, SubgroupSpec::Borel);
    let sampler = SamplerConfig {
        strategy: Strategy::Catalog,
        count: sampler.count.max(gen.trials),
        ..*sampler
    };
    let half = lambda.orbit_dim() / 2;
    let primes = gen.select_primes()?;
    let runs: Vec<OrbitalOnPrime> = per_prime(&primes, |i, f| {
        let x: HomogeneousSpace<PrimeField> = case.space(f)?;
        let ctx = IntersectionContext::new(x, Catalog::of(&case.subgroup, n))?;
        let mut rng = gen.rng_for(ORBITAL_PURPOSE, i);
        let batch = sample_intersection(&ctx, lambda, &sampler, &mut rng)?;
        let b = ctx.x.h().basis();
        let mut isotropic = true;
        let mut max_dim = 0;
        for s in &batch.samples {
            isotropic &= kks_gram(&f, &s.a, b)?.gram().is_zero();
            let images: Vec<Vec<u64>> = b
                .iter()
                .map(|y| bracket(y, &s.a).map(Mat::into_entries))
                .collect::<Result<_>>()?;
            max_dim = max_dim.max(span_rank(&f, n * n, &images));
        }
        let interval = sc_orbit(&ctx, lambda, &batch)?.interval;
        Ok(OrbitalOnPrime {
            prime: f.modulus(),
            samples: batch.samples.len(),
            isotropic,
            max_borel_orbit_dim: max_dim,
            interval,
        })
    })?;
    let exhausted = runs.iter().any(|r| r.samples == 0);
    let isotropic = runs.iter().all(|r| r.isotropic);
    let too_big = runs.iter().any(|r| r.max_borel_orbit_dim > half);
    let attained = runs.iter().all(|r| r.max_borel_orbit_dim == half);
    let verdict = if !isotropic || too_big {
        Verdict::Fail
    } else if exhausted || !attained {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    let interval = runs
        .iter()
        .filter(|r| r.samples > 0)
        .fold(SdimInterval::exact(0), |acc, r| acc.max(&r.interval));
    let samples: usize = runs.iter().map(|r| r.samples).sum();
    Ok(ScReport {
        invariant: format!("O ∩ n isotropic of dimension dim O / 2 for O = {lambda} in sl{n}"),
        value: ReportValue::Interval(interval),
        primes,
        seed: gen.seed,
        samples_used: samples,
        certificates: vec![Certificate::new(
            "orbital_variety",
            json!({
                "orbit": lambda,
                "half_orbit_dim": half,
                "isotropic": isotropic,
                "dim_attained": attained,
                "sampler_exhausted": exhausted,
                "per_prime": runs,
            }),
        )],
        verdict: Some(verdict),
    })
}

/// Evidence for `sc_O(X) = max(c_O(X), 0)`; reports data, never a verdict.
pub fn question_evidence(
    case: &CaseSpec,
    lambda: &Partition,
    gen: &Genericity,
    sampler: &SamplerConfig,
) -> Result<ScReport> {
    let o = sc_orbit_over_primes(case, lambda, gen, sampler)?;
    let status = match o.c_orbit {
        None => "consistent (empty intersection, by convention)",
        Some(c) => {
            let target = c.max(0) as usize;
            if o.interval.value() == Some(target) {
                "equal"
            } else if o.interval.contains(target) {
                "consistent"
            } else {
                "inconsistent"
            }
        }
    };
    Ok(ScReport {
        invariant: format!("sc_O({case}) vs max(c_O, 0) for O = {lambda}"),
        value: ReportValue::Interval(o.interval),
        primes: o.per_prime.iter().map(|r| r.prime).collect(),
        seed: gen.seed,
        samples_used: o.samples,
        certificates: vec![Certificate::new(
            "evidence",
            json!({
                "orbit": o.lambda,
                "c_orbit": o.c_orbit,
                "dim_intersection": o.dim_estimate,
                "emptiness": o.emptiness,
                "status": status,
            }),
        )],
        verdict: None,
    })
}
