//! Command-line surface: configuration, dispatch and the JSON report.

use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{DenseMatrix, Genericity, PrimeField, Rationals};
use crate::homspace::{complexity_over_primes, generic_modality_over_primes, CaseSpec, GroupSpec, SubgroupSpec};
use crate::liestruct::{
    ad_orbit_tangent_rank, double_coset_representatives, jordan_matrix, jordan_type, nilradical_basis,
    richardson_partition, ParabolicComposition, Partition,
};
use crate::sympcx::{
    kirillov_gram, orbital_variety_check, question_evidence, sc_orbit_over_primes, sc_set, verify_theorem_a,
    Certificate, Clause, OrbitSet, ReportValue, SamplerConfig, Strategy, TheoremCheck, Verdict,
};
use crate::symplin::{sdim_linear, AntisymmetricForm};

pub const REPORT_VERSION: &str = "1";
pub const SEED_ENV: &str = "SYMCX_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Subcommand)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    OrbitDim,
    JordanType,
    Richardson,
    DoubleCosets,
    SdimLinear,
    KksRank,
    Complexity,
    GenericModality,
    COrbit,
    ScOrbit,
    ScSet,
    OrbitalVariety,
    Verify,
    QuestionEvidence,
}

impl CommandName {
    fn as_str(self) -> &'static str {
        match self {
            Self::OrbitDim => "orbit-dim",
            Self::JordanType => "jordan-type",
            Self::Richardson => "richardson",
            Self::DoubleCosets => "double-cosets",
            Self::SdimLinear => "sdim-linear",
            Self::KksRank => "kks-rank",
            Self::Complexity => "complexity",
            Self::GenericModality => "generic-modality",
            Self::COrbit => "c-orbit",
            Self::ScOrbit => "sc-orbit",
            Self::ScSet => "sc-set",
            Self::OrbitalVariety => "orbital-variety",
            Self::Verify => "verify",
            Self::QuestionEvidence => "question-evidence",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Sampling {
    pub prime_bits: u32,
    pub primes: usize,
    pub trials: usize,
    pub retry_budget: usize,
    pub seed: u64,
    pub strategy: Strategy,
    pub count: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        let g = Genericity::default();
        let s = SamplerConfig::default();
        Self {
            prime_bits: g.prime_bits,
            primes: g.primes,
            trials: g.trials,
            retry_budget: s.retry_budget,
            seed: g.seed,
            strategy: s.strategy,
            count: s.count,
        }
    }
}

impl Sampling {
    pub fn genericity(&self) -> Genericity {
        Genericity {
            prime_bits: self.prime_bits,
            primes: self.primes,
            trials: self.trials,
            seed: self.seed,
        }
    }

    pub fn sampler(&self) -> SamplerConfig {
        SamplerConfig {
            strategy: self.strategy,
            count: self.count,
            retry_budget: self.retry_budget,
        }
    }
}

/// One command with its inputs. The same schema is used for config files and
/// for the `config_echo` field of reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<SubgroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub acting: Option<SubgroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<Partition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_set: Option<OrbitSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clause: Option<ClauseName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<ParabolicComposition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<ParabolicComposition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_intersection: Option<usize>,
    #[serde(default)]
    pub sampling: Sampling,
}

/// Serde form of [`Clause`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClauseName {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "iii")]
    III,
    #[serde(rename = "iv")]
    IV,
    #[serde(rename = "cor-b")]
    CorB,
}

impl From<Clause> for ClauseName {
    fn from(c: Clause) -> Self {
        match c {
            Clause::I => Self::I,
            Clause::III => Self::III,
            Clause::IV => Self::IV,
            Clause::CorB => Self::CorB,
        }
    }
}

impl RunConfig {
    pub fn new(command: CommandName) -> Self {
        Self {
            command,
            group: None,
            subgroup: None,
            acting: None,
            orbit: None,
            orbit_set: None,
            clause: None,
            n: None,
            p: None,
            q: None,
            matrix: None,
            dim_intersection: None,
            sampling: Sampling::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.sampling.genericity().validate()?;
        if self.sampling.count == 0 {
            return Err(Error::Config("sampling.count must be positive".into()));
        }
        if let (Some(g), Some(o)) = (&self.group, &self.orbit) {
            if o.n() != g.n {
                return Err(Error::Config(format!("orbit {o} is not a partition of {}", g.n)));
            }
        }
        Ok(())
    }

    fn group(&self) -> Result<GroupSpec> {
        self.group.ok_or_else(|| missing("group"))
    }

    fn case(&self) -> Result<CaseSpec> {
        let subgroup = self.subgroup.clone().ok_or_else(|| missing("subgroup"))?;
        Ok(CaseSpec::new(self.group()?, subgroup))
    }

    fn orbit(&self) -> Result<Partition> {
        self.orbit.clone().ok_or_else(|| missing("orbit"))
    }

    fn p(&self) -> Result<ParabolicComposition> {
        self.p.clone().ok_or_else(|| missing("p"))
    }

    fn matrix(&self) -> Result<&Vec<Vec<i64>>> {
        self.matrix.as_ref().ok_or_else(|| missing("matrix"))
    }
}

fn missing(field: &str) -> Error {
    Error::Config(format!("missing required input `{field}`"))
}

#[derive(Debug, Parser)]
#[command(name = "symcx", version, about = "Exact symplectic complexity of type-A homogeneous spaces")]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Dimension of the nilpotent orbit with Jordan type --orbit.
    OrbitDim(Flags),
    /// Jordan type of the nilpotent integer --matrix.
    JordanType(Flags),
    /// Richardson orbit of the parabolic --p.
    Richardson(Flags),
    /// Number of double cosets W_P \ S_n / W_Q.
    DoubleCosets(Flags),
    /// Symplectic dimension of the antisymmetric integer --matrix.
    SdimLinear(Flags),
    /// Rank of the pulled-back KKS form at J_orbit (or at --matrix).
    KksRank(Flags),
    /// Complexity of G/H.
    Complexity(Flags),
    /// Generic modality of --acting on G/H.
    GenericModality(Flags),
    /// c_O(G/H) = dim(O ∩ h^perp) - dim O / 2.
    COrbit(Flags),
    /// sc_O(G/H) as an interval.
    ScOrbit(Flags),
    /// sc_Xi(G/H) as an interval.
    ScSet(Flags),
    /// Isotropy and dimension of O ∩ n.
    OrbitalVariety(Flags),
    /// Check one clause: i, iii, iv or cor-b.
    Verify(Flags),
    /// Compare sc_O with max(c_O, 0).
    QuestionEvidence(Flags),
}

#[derive(Debug, Args)]
struct Flags {
    /// JSON config file; inline flags override its fields.
    #[arg(long)]
    config: Option<String>,
    /// gl<n> or sl<n>.
    #[arg(long)]
    group: Option<String>,
    /// torus, borel, unipotent, trivial, full, parabolic:<comp>, nilradical:<comp>.
    #[arg(long)]
    subgroup: Option<String>,
    /// Acting subgroup for generic-modality, same syntax as --subgroup.
    #[arg(long)]
    acting: Option<String>,
    /// Partition such as 2,1.
    #[arg(long)]
    orbit: Option<String>,
    /// nilpotent_cone, richardson_closure:<comp>, or partitions separated by ';'.
    #[arg(long)]
    orbit_set: Option<String>,
    #[arg(long)]
    clause: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    /// Integer matrix as JSON rows, e.g. [[0,1],[0,0]].
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long)]
    dim_intersection: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    primes: Option<usize>,
    #[arg(long)]
    prime_bits: Option<u32>,
    #[arg(long)]
    retry_budget: Option<usize>,
    /// auto, catalog, slice_solve or conjugation.
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long)]
    count: Option<usize>,
    /// Report wall-clock time in elapsed_ms (otherwise null, keeping reports reproducible).
    #[arg(long)]
    timing: bool,
}

impl CliCommand {
    fn split(self) -> (CommandName, Flags) {
        match self {
            Self::OrbitDim(f) => (CommandName::OrbitDim, f),
            Self::JordanType(f) => (CommandName::JordanType, f),
            Self::Richardson(f) => (CommandName::Richardson, f),
            Self::DoubleCosets(f) => (CommandName::DoubleCosets, f),
            Self::SdimLinear(f) => (CommandName::SdimLinear, f),
            Self::KksRank(f) => (CommandName::KksRank, f),
            Self::Complexity(f) => (CommandName::Complexity, f),
            Self::GenericModality(f) => (CommandName::GenericModality, f),
            Self::COrbit(f) => (CommandName::COrbit, f),
            Self::ScOrbit(f) => (CommandName::ScOrbit, f),
            Self::ScSet(f) => (CommandName::ScSet, f),
            Self::OrbitalVariety(f) => (CommandName::OrbitalVariety, f),
            Self::Verify(f) => (CommandName::Verify, f),
            Self::QuestionEvidence(f) => (CommandName::QuestionEvidence, f),
        }
    }
}

fn build_config(command: CommandName, flags: &Flags, env_seed: Option<&str>) -> Result<RunConfig> {
    let mut cfg = match &flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
            let cfg: RunConfig = serde_json::from_str(&text).map_err(|e| Error::Config(format!("{path}: {e}")))?;
            if cfg.command != command {
                return Err(Error::Config(format!(
                    "config is for `{}` but the subcommand is `{}`",
                    cfg.command.as_str(),
                    command.as_str()
                )));
            }
            cfg
        }
        None => RunConfig::new(command),
    };
    if let Some(g) = &flags.group {
        cfg.group = Some(g.parse()?);
    }
    if let Some(h) = &flags.subgroup {
        cfg.subgroup = Some(h.parse()?);
    }
    if let Some(h) = &flags.acting {
        cfg.acting = Some(h.parse()?);
    }
    if let Some(o) = &flags.orbit {
        cfg.orbit = Some(o.parse()?);
    }
    if let Some(o) = &flags.orbit_set {
        cfg.orbit_set = Some(o.parse()?);
    }
    if let Some(c) = &flags.clause {
        cfg.clause = Some(c.parse::<Clause>()?.into());
    }
    if let Some(n) = flags.n {
        cfg.n = Some(n);
    }
    if let Some(p) = &flags.p {
        cfg.p = Some(p.parse()?);
    }
    if let Some(q) = &flags.q {
        cfg.q = Some(q.parse()?);
    }
    if let Some(m) = &flags.matrix {
        cfg.matrix = Some(serde_json::from_str(m).map_err(|e| Error::Config(format!("--matrix: {e}")))?);
    }
    if let Some(d) = flags.dim_intersection {
        cfg.dim_intersection = Some(d);
    }
    let s = &mut cfg.sampling;
    if let Some(v) = flags.seed {
        s.seed = v;
    }
    if let Some(v) = flags.trials {
        s.trials = v;
    }
    if let Some(v) = flags.primes {
        s.primes = v;
    }
    if let Some(v) = flags.prime_bits {
        s.prime_bits = v;
    }
    if let Some(v) = flags.retry_budget {
        s.retry_budget = v;
    }
    if let Some(v) = &flags.strategy {
        s.strategy = v.parse()?;
    }
    if let Some(v) = flags.count {
        s.count = v;
    }
    if let Some(v) = env_seed {
        s.seed = v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("{SEED_ENV}={v:?} is not an unsigned integer")))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// What a command produced, before it is wrapped in a report.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub result: ReportValue,
    pub primes: Vec<u64>,
    pub certificates: Vec<Certificate>,
    pub verdict: Option<Verdict>,
}

impl Outcome {
    fn value(v: Value) -> Self {
        Self {
            result: ReportValue::Value(v),
            primes: Vec::new(),
            certificates: Vec::new(),
            verdict: None,
        }
    }

    fn with(mut self, cert: Certificate) -> Self {
        self.certificates.push(cert);
        self
    }
}

fn rational_matrix(rows: &[Vec<i64>]) -> Result<DenseMatrix<Rationals>> {
    DenseMatrix::from_i64_rows(Rationals, rows)
}

fn n_of(cfg: &RunConfig) -> Result<usize> {
    if let Some(n) = cfg.n {
        return Ok(n);
    }
    if let Some(g) = cfg.group {
        return Ok(g.n);
    }
    if let Some(o) = &cfg.orbit {
        return Ok(o.n());
    }
    Err(missing("n"))
}

/// Runs one configured command.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let gen = cfg.sampling.genericity();
    let sampler = cfg.sampling.sampler();
    match cfg.command {
        CommandName::OrbitDim => {
            let lambda = cfg.orbit()?;
            let g = cfg.group.unwrap_or(GroupSpec {
                kind: crate::homspace::GroupKind::Gl,
                n: lambda.n(),
            });
            let alg = g.algebra(Rationals);
            let rank = ad_orbit_tangent_rank(&alg, &jordan_matrix(&Rationals, &lambda))?;
            Ok(Outcome::value(json!(lambda.orbit_dim())).with(Certificate::new(
                "ad_rank",
                json!({ "algebra": g.to_string(), "rank": rank, "agrees": rank == lambda.orbit_dim() }),
            )))
        }
        CommandName::JordanType => {
            let m = rational_matrix(cfg.matrix()?)?;
            Ok(Outcome::value(json!(jordan_type(&m)?)))
        }
        CommandName::Richardson => {
            let p = cfg.p()?;
            let rich = richardson_partition(&p);
            let primes = gen.select_primes()?;
            let f = PrimeField::new(primes[0])?;
            let mut rng = gen.rng_for(0x50, 0);
            let mut hits = 0;
            for _ in 0..gen.trials {
                let mut m = DenseMatrix::zeros(f, p.n(), p.n());
                for b in nilradical_basis(&f, &p) {
                    use rand::Rng;
                    m = m.add(&b.scale(&rng.random_range(0..f.modulus())))?;
                }
                hits += usize::from(jordan_type(&m)? == rich);
            }
            let mut out = Outcome::value(json!(rich)).with(Certificate::new(
                "random_nilradical_elements",
                json!({ "trials": gen.trials, "richardson_type": hits }),
            ));
            out.primes = vec![primes[0]];
            Ok(out)
        }
        CommandName::DoubleCosets => {
            let n = n_of(cfg)?;
            let p = cfg.p()?;
            let q = cfg.q.clone().ok_or_else(|| missing("q"))?;
            let reps = double_coset_representatives(n, &p, &q)?;
            Ok(Outcome::value(json!(reps.len())).with(Certificate::new("representatives", json!(reps))))
        }
        CommandName::SdimLinear => {
            let form = AntisymmetricForm::new(rational_matrix(cfg.matrix()?)?)?;
            Ok(Outcome::value(json!(sdim_linear(&form)?)).with(Certificate::new("rank", json!(form.rank()))))
        }
        CommandName::KksRank => {
            let (alg, e, expected) = match (&cfg.matrix, &cfg.orbit) {
                (Some(rows), _) => {
                    let e = rational_matrix(rows)?;
                    let g = cfg.group.unwrap_or(GroupSpec {
                        kind: crate::homspace::GroupKind::Gl,
                        n: e.rows(),
                    });
                    let expected = jordan_type(&e).ok().map(|l| l.orbit_dim());
                    (g.algebra(Rationals), e, expected)
                }
                (None, Some(lambda)) => {
                    let g = cfg.group.unwrap_or(GroupSpec {
                        kind: crate::homspace::GroupKind::Gl,
                        n: lambda.n(),
                    });
                    (g.algebra(Rationals), jordan_matrix(&Rationals, lambda), Some(lambda.orbit_dim()))
                }
                (None, None) => return Err(missing("orbit or matrix")),
            };
            let gram = kirillov_gram(&alg, &e)?;
            Ok(Outcome::value(json!(gram.rank())).with(Certificate::new(
                "orbit_dim",
                json!({ "expected": expected, "agrees": expected.map(|d| d == gram.rank()) }),
            )))
        }
        CommandName::Complexity => {
            let r = complexity_over_primes(&cfg.case()?, &gen)?;
            let mut out = Outcome::value(json!(r.value))
                .with(Certificate::new("per_prime", json!(r.per_prime)));
            out.primes = r.per_prime.iter().map(|(p, _)| *p).collect();
            Ok(out)
        }
        CommandName::GenericModality => {
            let acting = cfg.acting.clone().ok_or_else(|| missing("acting"))?;
            let r = generic_modality_over_primes(&cfg.case()?, &acting, &gen)?;
            let mut out = Outcome::value(json!(r.value))
                .with(Certificate::new("per_prime", json!(r.per_prime)));
            out.primes = r.per_prime.iter().map(|(p, _)| *p).collect();
            Ok(out)
        }
        CommandName::COrbit => {
            let lambda = cfg.orbit()?;
            if let Some(d) = cfg.dim_intersection {
                let c = crate::homspace::c_orbit(&lambda, Some(d));
                return Ok(Outcome::value(json!(c)).with(Certificate::new(
                    "inputs",
                    json!({ "dim_intersection": d, "half_orbit_dim": lambda.orbit_dim() / 2 }),
                )));
            }
            let o = sc_orbit_over_primes(&cfg.case()?, &lambda, &gen, &sampler)?;
            let mut out = Outcome::value(json!(o.c_orbit)).with(Certificate::new(
                "dim_intersection",
                json!({ "estimate": o.dim_estimate, "exact": o.dim_exact, "emptiness": o.emptiness }),
            ));
            out.primes = o.per_prime.iter().map(|r| r.prime).collect();
            Ok(out)
        }
        CommandName::ScOrbit => {
            let lambda = cfg.orbit()?;
            let o = sc_orbit_over_primes(&cfg.case()?, &lambda, &gen, &sampler)?;
            Ok(Outcome {
                result: ReportValue::Interval(o.interval),
                primes: o.per_prime.iter().map(|r| r.prime).collect(),
                certificates: vec![Certificate::new("sc_orbit", serde_json::to_value(&o).map_err(json_err)?)],
                verdict: None,
            })
        }
        CommandName::ScSet => {
            let xi = cfg.orbit_set.clone().unwrap_or(OrbitSet::NilpotentCone);
            let s = sc_set(&cfg.case()?, &xi, &gen, &sampler)?;
            let certificates = s
                .orbits
                .iter()
                .map(|o| {
                    Certificate::new(
                        "sc_orbit",
                        json!({
                            "orbit": o.lambda,
                            "interval": o.interval,
                            "c_orbit": o.c_orbit,
                            "emptiness": o.emptiness,
                            "samples": o.samples,
                        }),
                    )
                })
                .collect();
            Ok(Outcome {
                result: ReportValue::Interval(s.interval),
                primes: s.primes,
                certificates,
                verdict: None,
            })
        }
        CommandName::OrbitalVariety => {
            let lambda = cfg.orbit()?;
            report_outcome(orbital_variety_check(&lambda, lambda.n(), &gen, &sampler)?)
        }
        CommandName::Verify => {
            let clause = cfg.clause.ok_or_else(|| missing("clause"))?;
            let case = cfg.case()?;
            let check = match clause {
                ClauseName::I => TheoremCheck::I {
                    orbits: match (&cfg.orbit_set, &cfg.orbit) {
                        (Some(s), _) => s.clone(),
                        (None, Some(o)) => OrbitSet::Explicit(vec![o.clone()]),
                        (None, None) => OrbitSet::NilpotentCone,
                    },
                    case,
                },
                ClauseName::III => TheoremCheck::III { case, p: cfg.p()? },
                ClauseName::IV => TheoremCheck::IV { case },
                ClauseName::CorB => TheoremCheck::CorB { case, p: cfg.p()? },
            };
            report_outcome(verify_theorem_a(&check, &gen, &sampler)?)
        }
        CommandName::QuestionEvidence => {
            report_outcome(question_evidence(&cfg.case()?, &cfg.orbit()?, &gen, &sampler)?)
        }
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Config(format!("serialization failed: {e}"))
}

fn report_outcome(r: crate::sympcx::ScReport) -> Result<Outcome> {
    let mut certificates = vec![Certificate::new(
        "invariant",
        json!({ "statement": r.invariant, "samples_used": r.samples_used }),
    )];
    certificates.extend(r.certificates);
    Ok(Outcome {
        result: r.value,
        primes: r.primes,
        certificates,
        verdict: r.verdict,
    })
}

/// The report object; field order is the emitted key order.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub command: &'static str,
    pub config_echo: RunConfig,
    pub primes_used: Vec<u64>,
    pub result: ReportValue,
    pub certificates: Vec<Certificate>,
    pub verdict: Option<Verdict>,
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
struct ErrorReport {
    version: &'static str,
    error: ErrorBody,
}

#[derive(Debug, Clone, Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
}

fn error_json(kind: &'static str, message: String) -> String {
    let r = ErrorReport {
        version: REPORT_VERSION,
        error: ErrorBody { kind, message },
    };
    serde_json::to_string_pretty(&r).expect("plain data serializes")
}

pub fn exit_code(verdict: Option<Verdict>) -> i32 {
    match verdict {
        None | Some(Verdict::Pass) => 0,
        Some(Verdict::Fail) => 2,
        Some(Verdict::Inconclusive) => 3,
    }
}

/// Parses `argv`, runs the command and returns the exit code and the text to
/// print on standard output. `env_seed` is the value of `SYMCX_SEED`, if set.
pub fn run<I, T>(argv: I, env_seed: Option<&str>) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    (0, e.to_string())
                }
                _ => (1, error_json("usage", e.to_string().trim_end().to_string())),
            };
        }
    };
    let (command, flags) = cli.command.split();
    let cfg = match build_config(command, &flags, env_seed) {
        Ok(c) => c,
        Err(e) => return (1, error_json("config", e.to_string())),
    };
    let start = Instant::now();
    let outcome = match execute(&cfg) {
        Ok(o) => o,
        Err(e @ Error::Config(_)) => return (1, error_json("config", e.to_string())),
        Err(e) => return (1, error_json("input", e.to_string())),
    };
    let elapsed_ms = flags.timing.then(|| start.elapsed().as_millis() as u64);
    let report = Report {
        version: REPORT_VERSION,
        command: command.as_str(),
        config_echo: cfg,
        primes_used: outcome.primes,
        result: outcome.result,
        certificates: outcome.certificates,
        verdict: outcome.verdict,
        elapsed_ms,
    };
    let text = serde_json::to_string_pretty(&report).expect("plain data serializes");
    (exit_code(report.verdict), text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_verdicts() {
        assert_eq!(exit_code(None), 0);
        assert_eq!(exit_code(Some(Verdict::Pass)), 0);
        assert_eq!(exit_code(Some(Verdict::Fail)), 2);
        assert_eq!(exit_code(Some(Verdict::Inconclusive)), 3);
    }

    #[test]
    fn config_defaults_round_trip() {
        let cfg = RunConfig::new(CommandName::ScSet);
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), cfg);
        let partial: RunConfig = serde_json::from_str(r#"{"command":"sc-set","sampling":{"seed":4}}"#).unwrap();
        assert_eq!(partial.sampling.seed, 4);
        assert_eq!(partial.sampling.primes, 5);
    }
}
