//! `sc_O(G/H) = sdim(O ∩ h^perp)` as an interval, and `sc_Xi` as the maximum
//! over the orbits in `Xi`, evaluated on every prime of the run.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::sample::{Catalog, IntersectionContext, IntersectionSample};
use super::sampler::{sample_intersection, Emptiness, SampleBatch, SamplerConfig};
use crate::error::{Error, Result};
use crate::exactalg::{per_prime, Genericity, PrimeField};
use crate::homspace::CaseSpec;
use crate::liestruct::{dominance_leq, richardson_partition, ParabolicComposition, Partition};
use crate::symplin::SdimInterval;

/// A union `Xi` of nilpotent orbits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrbitSet {
    Explicit(Vec<Partition>),
    NilpotentCone,
    RichardsonClosure(ParabolicComposition),
}

impl OrbitSet {
    pub fn orbits(&self, n: usize) -> Result<Vec<Partition>> {
        match self {
            Self::Explicit(list) => {
                if let Some(bad) = list.iter().find(|l| l.n() != n) {
                    return Err(Error::InvalidPartition(format!("{bad} is not a partition of {n}")));
                }
                Ok(list.clone())
            }
            Self::NilpotentCone => Ok(Partition::all(n)),
            Self::RichardsonClosure(c) => {
                if c.n() != n {
                    return Err(Error::InvalidComposition(format!("{c} does not sum to {n}")));
                }
                let rich = richardson_partition(c);
                let mut out = Vec::new();
                for l in Partition::all(n) {
                    if dominance_leq(&l, &rich)? {
                        out.push(l);
                    }
                }
                Ok(out)
            }
        }
    }
}

impl fmt::Display for OrbitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NilpotentCone => write!(f, "nilpotent_cone"),
            Self::RichardsonClosure(c) => write!(f, "richardson_closure:{c}"),
            Self::Explicit(list) => {
                let parts: Vec<String> = list.iter().map(Partition::to_string).collect();
                write!(f, "{}", parts.join(";"))
            }
        }
    }
}

impl FromStr for OrbitSet {
    type Err = Error;

    /// `nilpotent_cone`, `richardson_closure:2,1`, or partitions separated by `;`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "nilpotent_cone" {
            return Ok(Self::NilpotentCone);
        }
        if let Some(c) = s.strip_prefix("richardson_closure:") {
            return Ok(Self::RichardsonClosure(c.parse()?));
        }
        if s.is_empty() {
            return Ok(Self::Explicit(Vec::new()));
        }
        let list = s.split(';').map(str::parse).collect::<Result<Vec<Partition>>>()?;
        Ok(Self::Explicit(list))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OrbitSetRepr {
    Named(String),
    Explicit(Vec<Partition>),
    Richardson { richardson_closure: ParabolicComposition },
}

impl Serialize for OrbitSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::NilpotentCone => OrbitSetRepr::Named("nilpotent_cone".into()).serialize(s),
            Self::Explicit(list) => OrbitSetRepr::Explicit(list.clone()).serialize(s),
            Self::RichardsonClosure(c) => OrbitSetRepr::Richardson {
                richardson_closure: c.clone(),
            }
            .serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for OrbitSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match OrbitSetRepr::deserialize(d)? {
            OrbitSetRepr::Named(s) if s == "nilpotent_cone" => Ok(Self::NilpotentCone),
            OrbitSetRepr::Named(s) => Err(serde::de::Error::custom(format!(
                "unknown orbit set {s:?}; use \"nilpotent_cone\", a list of partitions or {{\"richardson_closure\": [...]}}"
            ))),
            OrbitSetRepr::Explicit(list) => Ok(Self::Explicit(list)),
            OrbitSetRepr::Richardson { richardson_closure } => Ok(Self::RichardsonClosure(richardson_closure)),
        }
    }
}

/// `sc_O` evaluated on one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitOnPrime {
    pub prime: u64,
    pub interval: SdimInterval,
    pub symplectic_lower: usize,
    pub dim_estimate: Option<usize>,
    pub dim_exact: bool,
    pub samples: usize,
    pub exact_samples: usize,
    pub attempts: usize,
    pub emptiness: Emptiness,
}

/// Interval for `sdim(O ∩ h^perp)` from a batch of samples:
/// `lower = max(0, c_O, max certified sdim)`, `upper = max` over samples of the
/// per-sample upper bound, lowered to 0 when the catalog proves isotropy.
pub fn sc_orbit(
    ctx: &IntersectionContext,
    lambda: &Partition,
    batch: &SampleBatch,
) -> Result<OrbitOnPrime> {
    let prime = ctx.field().modulus();
    let samples: &[IntersectionSample<PrimeField>] = &batch.samples;
    if samples.is_empty() {
        return Ok(OrbitOnPrime {
            prime,
            interval: SdimInterval::exact(0),
            symplectic_lower: 0,
            dim_estimate: None,
            dim_exact: matches!(batch.emptiness, Emptiness::CertifiedEmpty { .. }),
            samples: 0,
            exact_samples: 0,
            attempts: batch.attempts,
            emptiness: batch.emptiness.clone(),
        });
    }
    let symplectic_lower = samples.iter().map(|s| s.certified_sdim).max().unwrap_or(0);
    let known = ctx.catalog.known_dim(lambda);
    let certified_dim = samples.iter().map(IntersectionSample::certified_dim).max().unwrap_or(0);
    let dim_estimate = known.unwrap_or(certified_dim);
    let exact_samples = samples.iter().filter(|s| s.exactness.is_some()).count();
    let dim_exact = known.is_some() || exact_samples == samples.len();
    let c = dim_estimate as i64 - (lambda.orbit_dim() / 2) as i64;
    let lower = symplectic_lower.max(c.max(0) as usize);
    let mut upper = samples.iter().map(IntersectionSample::upper).max().unwrap_or(0);
    if ctx.catalog.isotropic() {
        upper = 0;
    }
    let interval = SdimInterval::new(lower, upper)?;
    Ok(OrbitOnPrime {
        prime,
        interval,
        symplectic_lower,
        dim_estimate: Some(dim_estimate),
        dim_exact,
        samples: samples.len(),
        exact_samples,
        attempts: batch.attempts,
        emptiness: batch.emptiness.clone(),
    })
}

/// `sc_O` merged over the primes of a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScOrbit {
    pub lambda: Partition,
    pub interval: SdimInterval,
    pub symplectic_lower: usize,
    pub dim_estimate: Option<usize>,
    pub dim_exact: bool,
    pub c_orbit: Option<i64>,
    pub emptiness: Emptiness,
    pub samples: usize,
    pub per_prime: Vec<OrbitOnPrime>,
}

fn merge(lambda: Partition, runs: Vec<OrbitOnPrime>) -> Result<ScOrbit> {
    let found: Vec<&OrbitOnPrime> = runs.iter().filter(|r| r.samples > 0).collect();
    let emptiness = if !found.is_empty() {
        Emptiness::Nonempty
    } else if let Some(r) = runs.iter().find(|r| matches!(r.emptiness, Emptiness::CertifiedEmpty { .. })) {
        r.emptiness.clone()
    } else {
        Emptiness::PossiblyEmpty {
            attempts: runs.iter().map(|r| r.attempts).sum(),
        }
    };
    let lower = found.iter().map(|r| r.interval.lower).max().unwrap_or(0);
    let upper = found.iter().map(|r| r.interval.upper).max().unwrap_or(0);
    let dim_estimate = found.iter().filter_map(|r| r.dim_estimate).max();
    let dim_exact = if found.is_empty() {
        runs.iter().all(|r| r.dim_exact)
    } else {
        found.iter().any(|r| r.dim_exact && r.dim_estimate == dim_estimate)
    };
    let c_orbit = crate::homspace::c_orbit(&lambda, dim_estimate);
    Ok(ScOrbit {
        interval: SdimInterval::new(lower, upper)?,
        symplectic_lower: found.iter().map(|r| r.symplectic_lower).max().unwrap_or(0),
        dim_estimate,
        dim_exact,
        c_orbit,
        emptiness,
        samples: runs.iter().map(|r| r.samples).sum(),
        lambda,
        per_prime: runs,
    })
}

/// `sc_Xi` with the per-orbit breakdown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScSet {
    pub interval: SdimInterval,
    pub primes: Vec<u64>,
    pub orbits: Vec<ScOrbit>,
}

impl ScSet {
    /// `c_Xi`: the largest `c_O` over orbits meeting `h^perp`.
    pub fn c_xi(&self) -> Option<i64> {
        self.orbits.iter().filter_map(|o| o.c_orbit).max()
    }
}

const SAMPLER_PURPOSE: u64 = 0x20;

/// Samples every orbit of `Xi` on every prime and merges.
pub fn sc_set(case: &CaseSpec, orbits: &OrbitSet, gen: &Genericity, sampler: &SamplerConfig) -> Result<ScSet> {
    let n = case.group.n;
    let list = orbits.orbits(n)?;
    let primes = gen.select_primes()?;
    let catalog = Catalog::of(&case.subgroup, n);
    let runs: Vec<Vec<OrbitOnPrime>> = per_prime(&primes, |i, f| {
        let ctx = IntersectionContext::new(case.space(f)?, catalog.clone())?;
        let base = gen.rng_for(SAMPLER_PURPOSE, i);
        list.iter()
            .enumerate()
            .map(|(k, lambda)| {
                let mut rng = base.derive(k as u64);
                let batch = sample_intersection(&ctx, lambda, sampler, &mut rng)?;
                sc_orbit(&ctx, lambda, &batch)
            })
            .collect()
    })?;
    let mut merged = Vec::with_capacity(list.len());
    for (k, lambda) in list.into_iter().enumerate() {
        let per: Vec<OrbitOnPrime> = runs.iter().map(|r| r[k].clone()).collect();
        merged.push(merge(lambda, per)?);
    }
    let interval = merged
        .iter()
        .fold(SdimInterval::exact(0), |acc, o| acc.max(&o.interval));
    Ok(ScSet {
        interval,
        primes,
        orbits: merged,
    })
}

/// `sc_O` for a single orbit over all primes.
pub fn sc_orbit_over_primes(
    case: &CaseSpec,
    lambda: &Partition,
    gen: &Genericity,
    sampler: &SamplerConfig,
) -> Result<ScOrbit> {
    let set = sc_set(case, &OrbitSet::Explicit(vec![lambda.clone()]), gen, sampler)?;
    Ok(set.orbits.into_iter().next().expect("one orbit"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(s: &str, h: &str) -> CaseSpec {
        CaseSpec::new(s.parse().unwrap(), h.parse().unwrap())
    }

    fn quick() -> Genericity {
        Genericity {
            primes: 2,
            ..Genericity::default()
        }
    }

    #[test]
    fn sl2_examples() {
        let s = SamplerConfig::default();
        let o = sc_orbit_over_primes(&case("sl2", "torus"), &Partition::regular(2), &quick(), &s).unwrap();
        assert_eq!(o.interval, SdimInterval::exact(0));
        assert_eq!(o.c_orbit, Some(0));
        let o = sc_orbit_over_primes(&case("sl2", "trivial"), &Partition::regular(2), &quick(), &s).unwrap();
        assert_eq!(o.interval, SdimInterval::exact(1));
        assert_eq!(o.c_orbit, Some(1));
    }

    #[test]
    fn empty_orbit_set_is_zero() {
        let r = sc_set(&case("sl2", "torus"), &OrbitSet::Explicit(vec![]), &quick(), &SamplerConfig::default()).unwrap();
        assert_eq!(r.interval, SdimInterval::exact(0));
        assert!(r.orbits.is_empty());
        assert_eq!(r.c_xi(), None);
    }

    #[test]
    fn orbit_set_syntax() {
        let all: OrbitSet = "nilpotent_cone".parse().unwrap();
        assert_eq!(all.orbits(3).unwrap().len(), 3);
        let r: OrbitSet = "richardson_closure:2,1".parse().unwrap();
        let orbits = r.orbits(3).unwrap();
        assert!(orbits.contains(&"2,1".parse().unwrap()));
        assert!(!orbits.contains(&Partition::regular(3)));
        let e: OrbitSet = "2,1;1,1,1".parse().unwrap();
        assert_eq!(e.orbits(3).unwrap().len(), 2);
        assert!(e.orbits(4).is_err());
    }

    #[test]
    fn same_seed_same_result() {
        let s = SamplerConfig::default();
        let a = sc_set(&case("sl3", "torus"), &OrbitSet::NilpotentCone, &quick(), &s).unwrap();
        let b = sc_set(&case("sl3", "torus"), &OrbitSet::NilpotentCone, &quick(), &s).unwrap();
        assert_eq!(a, b);
    }
}
