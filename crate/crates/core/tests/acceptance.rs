//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines are always printed; exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;
use symcx::exactalg::{Field, Genericity, PrimeField, Rationals, SeededRng};
use symcx::homspace::{CaseSpec, SubgroupSpec};
use symcx::liestruct::{
    ad_orbit_tangent_rank, jordan_matrix, jordan_type, nilradical_basis, richardson_partition, weyl_double_coset_count,
    Mat, MatrixLieAlgebra, ParabolicComposition, Partition,
};
use symcx::symplin::{
    is_coisotropic, restrict_form, sdim_linear, sdim_samples, semicontinuity_witness, AntisymmetricForm,
    PointedSample, SdimInterval,
};
use symcx::sympcx::{
    kirillov_gram, orbital_variety_check, verify_clause_i, verify_clause_iii, verify_clause_iv, verify_cor_b,
    OrbitSet, ReportValue, SamplerConfig, ScReport, Verdict,
};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn master_seed() -> u64 {
    std::env::var("SYMCX_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

fn gen() -> Genericity {
    Genericity {
        seed: master_seed(),
        ..Genericity::default()
    }
}

fn case(g: &str, h: &str) -> CaseSpec {
    CaseSpec::new(g.parse().unwrap(), h.parse().unwrap())
}

fn json(r: &ScReport) -> String {
    serde_json::to_string(r).expect("reports serialize")
}

fn criterion_1() -> Outcome {
    let mut count = 0;
    for n in 1..=6 {
        let alg = MatrixLieAlgebra::gl(Rationals, n);
        for lambda in Partition::all(n) {
            let rank = ad_orbit_tangent_rank(&alg, &jordan_matrix(&Rationals, &lambda)).map_err(|e| e.to_string())?;
            let oracle = n * n - common::centralizer_dim(&common::jordan(lambda.parts()), common::P);
            check(rank == lambda.orbit_dim() && rank == oracle, || {
                format!("{lambda}: formula {} rank {rank} oracle {oracle}", lambda.orbit_dim())
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} partitions of n <= 6"))
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    for n in 1..=5 {
        let alg = MatrixLieAlgebra::gl(Rationals, n);
        for lambda in Partition::all(n) {
            let gram = kirillov_gram(&alg, &jordan_matrix(&Rationals, &lambda)).map_err(|e| e.to_string())?;
            check(gram.rank() == lambda.orbit_dim(), || {
                format!("{lambda}: rank {} vs orbit dim {}", gram.rank(), lambda.orbit_dim())
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} partitions of n <= 5"))
}

fn criterion_3() -> Outcome {
    let g = gen();
    let f = PrimeField::new(g.select_primes().map_err(|e| e.to_string())?[0]).unwrap();
    let mut rng = g.rng_for(0x70, 0);
    let mut worst = 100;
    let mut comps = 0;
    for n in 1..=6 {
        for p in ParabolicComposition::all(n) {
            let rich = richardson_partition(&p);
            let basis = nilradical_basis(&f, &p);
            let mut hits = 0;
            for _ in 0..100 {
                let mut x = Mat::zeros(f, n, n);
                for b in &basis {
                    x = x.add(&b.scale(&rng.random_range(0..f.modulus()))).unwrap();
                }
                hits += usize::from(jordan_type(&x).map_err(|e| e.to_string())? == rich);
            }
            worst = worst.min(hits);
            comps += 1;
            check(hits >= 99, || format!("P({p}): {hits}/100"))?;
        }
    }
    Ok(format!("{comps} compositions, worst {worst}/100"))
}

const THEOREM_CASES: [(&str, &str); 10] = [
    ("sl2", "torus"),
    ("sl2", "unipotent"),
    ("sl2", "borel"),
    ("sl2", "trivial"),
    ("sl3", "torus"),
    ("sl3", "borel"),
    ("sl4", "borel"),
    ("sl3", "trivial"),
    ("sl4", "trivial"),
    ("sl4", "torus"),
];

fn criterion_4(reports: &mut Vec<String>) -> Outcome {
    let s = SamplerConfig::default();
    for (g, h) in THEOREM_CASES {
        let c = case(g, h);
        let r = verify_clause_iv(&c, &gen(), &s).map_err(|e| e.to_string())?;
        reports.push(json(&r));
        check(r.verdict == Some(Verdict::Pass), || format!("{c}: {:?} {:?}", r.verdict, r.value))?;
        if h == "trivial" {
            let n = c.group.n;
            let expected = ReportValue::Interval(SdimInterval::exact(n * (n - 1) / 2));
            check(r.value == expected, || format!("{c}: {:?}, expected dim G/B", r.value))?;
        }
    }
    Ok(format!("{} cases, sc_N exact and equal to c", THEOREM_CASES.len()))
}

fn criterion_5(reports: &mut Vec<String>) -> Outcome {
    let s = SamplerConfig::default();
    let mut checks = 0;
    for (g, h) in THEOREM_CASES {
        let c = case(g, h);
        for lambda in Partition::all(c.group.n) {
            let r = verify_clause_i(&c, &OrbitSet::Explicit(vec![lambda.clone()]), &gen(), &s)
                .map_err(|e| e.to_string())?;
            reports.push(json(&r));
            check(r.verdict == Some(Verdict::Pass), || format!("{c} O={lambda}: {:?}", r.verdict))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} single-orbit sets"))
}

fn criterion_6(reports: &mut Vec<String>) -> Outcome {
    let s = SamplerConfig::default();
    let mut pairs = 0;
    for n in 2..=4 {
        let group = format!("sl{n}").parse().unwrap();
        for p in ParabolicComposition::all(n) {
            for q in ParabolicComposition::all(n) {
                let c = CaseSpec::new(group, SubgroupSpec::Parabolic(q.clone()));
                let count = weyl_double_coset_count(n, &p, &q).map_err(|e| e.to_string())?;
                check(count >= 1, || format!("P={p} Q={q}: no double cosets"))?;
                let iii = verify_clause_iii(&c, &p, &gen()).map_err(|e| e.to_string())?;
                let cor = verify_cor_b(&c, &p, &gen(), &s).map_err(|e| e.to_string())?;
                let iso = iii
                    .certificates
                    .iter()
                    .find(|c| c.kind == "richardson_isotropy")
                    .map(|c| (c.detail["isotropic"] == true, c.detail["dim_attained"] == true));
                check(iso == Some((true, true)), || format!("P={p} Q={q}: isotropy/attained {iso:?}"))?;
                check(iii.verdict == Some(Verdict::Pass) && cor.verdict == Some(Verdict::Pass), || {
                    format!("P={p} Q={q}: iii {:?} cor-b {:?}", iii.verdict, cor.verdict)
                })?;
                reports.push(json(&iii));
                reports.push(json(&cor));
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} parabolic pairs"))
}

fn criterion_7(reports: &mut Vec<String>) -> Outcome {
    let s = SamplerConfig::default();
    let mut count = 0;
    for n in 1..=4 {
        for lambda in Partition::all(n) {
            let r = orbital_variety_check(&lambda, n, &gen(), &s).map_err(|e| e.to_string())?;
            reports.push(json(&r));
            check(r.verdict == Some(Verdict::Pass), || format!("{lambda}: {:?}", r.verdict))?;
            count += 1;
        }
    }
    Ok(format!("{count} orbits"))
}

fn random_vectors(rng: &mut SeededRng, k: usize, d: usize) -> Vec<Vec<u64>> {
    (0..k).map(|_| (0..d).map(|_| rng.random_range(0..common::P)).collect()).collect()
}

fn oracle_sdim(form: &AntisymmetricForm<PrimeField>, sub: &[Vec<u64>]) -> usize {
    let rows: Vec<Vec<u64>> = sub.iter().map(|u| sub.iter().map(|v| form.eval(u, v).unwrap()).collect()).collect();
    common::rank_mod(&rows, common::P) / 2
}

fn criterion_8() -> Outcome {
    let f = PrimeField::new(common::P).unwrap();
    let mut rng = SeededRng::new(master_seed(), 0x80);
    let err = |e: symcx::Error| e.to_string();
    // rank parity on sparse random forms of every size
    for d in 0..=12 {
        for _ in 0..20 {
            let mut form = AntisymmetricForm::random(f, d, &mut rng);
            if d > 2 {
                let k = rng.random_range(0..d);
                let rows: Vec<Vec<u64>> = (0..d)
                    .map(|i| (0..d).map(|j| if i < k && j < k { 0 } else { *form.gram().get(i, j) }).collect())
                    .collect();
                form = AntisymmetricForm::new(symcx::exactalg::DenseMatrix::from_rows(f, d, &rows).map_err(err)?)
                    .map_err(err)?;
            }
            let rows: Vec<Vec<u64>> = (0..d).map(|i| form.gram().row(i)).collect();
            let r = common::rank_mod(&rows, common::P);
            check(r % 2 == 0 && sdim_linear(&form).map_err(err)? * 2 == r, || format!("parity, d={d}"))?;
        }
    }
    // coisotropic subspaces of the standard 6-dimensional space
    let std6 = AntisymmetricForm::standard(f, 3);
    for mask in 0u32..64 {
        let idx: Vec<usize> = (0..6).filter(|i| mask >> i & 1 == 1).collect();
        let sub: Vec<Vec<u64>> = idx.iter().map(|&i| (0..6).map(|j| u64::from(i == j)).collect()).collect();
        let oracle = (0..6).all(|j| idx.contains(&j) || idx.contains(&((j + 3) % 6)));
        check(is_coisotropic(&sub, &std6).map_err(err)? == oracle, || format!("coisotropic mask {mask:06b}"))?;
        check(oracle == (oracle_sdim(&std6, &sub) + 3 == idx.len()), || format!("sdim mask {mask:06b}"))?;
    }
    // monotonicity on nested pairs
    let mut nested = 0;
    while nested < 500 {
        let d = rng.random_range(1..=10);
        let form = AntisymmetricForm::random(f, d, &mut rng);
        let kb = rng.random_range(0..=d);
        let big = random_vectors(&mut rng, kb, d);
        if common::rank_mod(&big, common::P) != kb {
            continue;
        }
        let ks = rng.random_range(0..=kb);
        let small: Vec<Vec<u64>> = random_vectors(&mut rng, ks, kb)
            .iter()
            .map(|c| (0..d).map(|j| c.iter().zip(&big).fold(0, |s, (a, v)| f.add(&s, &f.mul(a, &v[j])))).collect())
            .collect();
        if common::rank_mod(&small, common::P) != ks {
            continue;
        }
        check(semicontinuity_witness(&form, &small, &big).map_err(err)?, || "monotonicity".into())?;
        let s = sdim_linear(&restrict_form(&form, &small).map_err(err)?).map_err(err)?;
        check(s == oracle_sdim(&form, &small) && s <= oracle_sdim(&form, &big), || "monotonicity oracle".into())?;
        nested += 1;
    }
    // lower semicontinuity along pencils A + tB
    for _ in 0..500 {
        let d = rng.random_range(1..=10);
        let a = AntisymmetricForm::random(f, d, &mut rng);
        // a degenerate special member: zero out a corner block of B
        let k = rng.random_range(0..=d);
        let b = AntisymmetricForm::random(f, d, &mut rng);
        let b_rows: Vec<Vec<u64>> =
            (0..d).map(|i| (0..d).map(|j| if i < k || j < k { 0 } else { *b.gram().get(i, j) }).collect()).collect();
        let at = |t: u64| {
            let g = b_rows
                .iter()
                .enumerate()
                .map(|(i, row)| row.iter().enumerate().map(|(j, v)| f.add(&f.mul(&t, a.gram().get(i, j)), v)).collect())
                .collect::<Vec<Vec<u64>>>();
            AntisymmetricForm::new(symcx::exactalg::DenseMatrix::from_rows(f, d, &g).unwrap()).unwrap()
        };
        let special = sdim_linear(&at(0)).map_err(err)?;
        let generic = (1..=d as u64 + 1).map(|t| sdim_linear(&at(t)).unwrap()).max().unwrap();
        check(special <= generic, || format!("semicontinuity d={d}: {special} > {generic}"))?;
    }
    // union of sample lists is the maximum
    for _ in 0..200 {
        let ambient = AntisymmetricForm::random(f, 8, &mut rng);
        let m = rng.random_range(0..6);
        let mut samples = Vec::new();
        for _ in 0..m {
            let k = rng.random_range(0..=8);
            let t = random_vectors(&mut rng, k, 8);
            if common::rank_mod(&t, common::P) == k {
                samples.push(PointedSample::from_ambient(vec![0; 8], &ambient, t, None).map_err(err)?);
            }
        }
        let oracle = samples.iter().map(|s| oracle_sdim(&ambient, &s.tangent_basis)).max().unwrap_or(0);
        let (l, r) = samples.split_at(samples.len() / 2);
        check(sdim_samples(&samples) == oracle && oracle == sdim_samples(l).max(sdim_samples(r)), || {
            "union = max".into()
        })?;
    }
    Ok("parity, 64 coordinate subspaces, 500 nested, 500 pencils, 200 unions".into())
}

fn criterion_9(first: &[String]) -> Outcome {
    let mut again = Vec::new();
    criterion_4(&mut again)?;
    criterion_5(&mut again)?;
    criterion_6(&mut again)?;
    criterion_7(&mut again)?;
    check(again.len() == first.len(), || format!("{} vs {} reports", first.len(), again.len()))?;
    if let Some(i) = (0..first.len()).find(|&i| first[i] != again[i]) {
        return Err(format!("report {i} differs"));
    }
    let argv = ["symcx", "sc-set", "--group", "sl3", "--subgroup", "torus"];
    let seed = master_seed().to_string();
    let a = symcx::cli::run(argv, Some(&seed));
    let b = symcx::cli::run(argv, Some(&seed));
    check(a == b, || "CLI report differs".into())?;
    Ok(format!("{} theorem reports and a CLI report byte-identical", first.len()))
}

fn main() {
    let mut reports = Vec::new();
    let mut failed = 0;
    let mut line = |id: usize, name: &str, limit: Duration, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let (ok, detail) = match out {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took {took:?}, limit {limit:?}")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {id} [{}] {name}: {detail} ({} ms, limit {} s)",
            if ok { "PASS" } else { "FAIL" },
            took.as_millis(),
            limit.as_secs()
        );
    };
    let s = Duration::from_secs;
    line(1, "orbit dimension formula", s(10), &mut criterion_1);
    line(2, "Kirillov Gram rank", s(10), &mut criterion_2);
    line(3, "Richardson consistency", s(30), &mut criterion_3);
    line(4, "sc_N = complexity", s(300), &mut || criterion_4(&mut reports));
    line(5, "sc_Xi >= max(c_Xi, 0)", s(120), &mut || criterion_5(&mut reports));
    line(6, "parabolic pairs: P-modality and finiteness", s(120), &mut || criterion_6(&mut reports));
    line(7, "orbital varieties", s(60), &mut || criterion_7(&mut reports));
    line(8, "linear symplectic property suites", s(60), &mut criterion_8);
    line(9, "determinism", s(600), &mut || criterion_9(&reports));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
