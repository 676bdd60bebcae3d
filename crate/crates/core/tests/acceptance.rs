//! Acceptance suite: one line per criterion, then a single assertion.

mod common;

use std::time::{Duration, Instant};

use common::{corpus, Exterior};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sullivan::algebra::{scalar, GeneratorTable, Polynomial};
use sullivan::cohomology::{betti_table, full_betti_table, poincare_duality_check, CohomologyOptions};
use sullivan::corpus::{run_corpus, DEFAULT_DIR};
use sullivan::format::parse_polynomial;
use sullivan::purity::{is_elliptic, pure_ideal, QuotientDimension};
use sullivan::random::{random_quadratic, random_two_stage, RandomParams};
use sullivan::rank::{
    construct_lemma_extension, parse_extension, rank_bounds, search_lower_bound, verify_extension, BoundsOptions,
    ExtensionSpec,
};
use sullivan::structure::{
    gottlieb_report, hypothesis_check, maximality, quadratic_block_matrix, two_stage_split, wang,
};
use sullivan::{Execution, SullivanModel};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn extension(name: &str) -> ExtensionSpec {
    parse_extension(&std::fs::read_to_string(format!("{DEFAULT_DIR}/{name}.ext")).unwrap()).unwrap()
}

fn full_total(m: &SullivanModel) -> Result<usize, String> {
    let evidence = ok(is_elliptic(m))?;
    Ok(ok(full_betti_table(m, &evidence, &CohomologyOptions::default()))?.total)
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let elapsed = start.elapsed();
    if elapsed > limit {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let m = corpus("M2");
    let evidence = ok(is_elliptic(&m))?;
    let table = ok(full_betti_table(&m, &evidence, &CohomologyOptions::default()))?;
    ensure!(table.total == 6, "total {}", table.total);
    let profile: Vec<(usize, usize)> = table.nonzero();
    ensure!(profile == vec![(0, 1), (3, 2), (8, 2), (11, 1)], "profile {profile:?}");
    ensure!(table.get(6) == 0, "b6 = {}", table.get(6));
    let duality = ok(poincare_duality_check(&m, &evidence, &CohomologyOptions::default()))?;
    ensure!(duality.holds && duality.formal_dimension == 11, "duality {duality:?}");
    within(Duration::from_secs(1), start)?;
    Ok("total 6, profile (1,2,0,2,1) in degrees (0,3,6,8,11), dual about 11".into())
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    for (n, bound) in [(3usize, 8usize), (4, 64)] {
        let start = Instant::now();
        let m = corpus(&format!("M{n}"));
        let total = full_total(&m)?;
        ensure!(total >= bound, "M{n}: {total} < {bound}");
        let oracle: usize = Exterior::from_model(&m).betti().iter().sum();
        ensure!(oracle == total, "M{n}: oracle {oracle} vs {total}");
        within(Duration::from_secs(60), start)?;
        notes.push(format!("M{n} total {total} >= {bound}, oracle agrees"));
    }
    Ok(notes.join("; "))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut totals = Vec::new();
    for n in 1..=3usize {
        let m = corpus(&format!("ex3.5-n{n}"));
        let expected = (4usize.pow(n as u32 + 1) + 2) / 3;
        let total = full_total(&m)?;
        ensure!(total == expected, "n = {n}: {total} vs {expected}");
        let g = gottlieb_report(&m, Execution::default()).total;
        ensure!(g == n, "n = {n}: Gottlieb total {g}");
        totals.push(total.to_string());
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("totals {}, Gottlieb totals 1, 2, 3", totals.join(", ")))
}

fn criterion_4() -> Outcome {
    let m = corpus("nonmaximal");
    let d = ok(two_stage_split(&m))?;
    let analysis = ok(maximality(&m, &d))?;
    ensure!(!analysis.k_basis.is_empty(), "K = 0");
    let rep = analysis.repair.ok_or("no repair")?;
    ensure!(rep.decomposition.r() == 2, "dim V' = {}", rep.decomposition.r());
    let t = rep.model.table();
    let v1 = t.id("v1").ok_or("v1 missing")?;
    let dv1 = t.display(rep.model.differential(v1)).to_string();
    ensure!(dv1 == "u2*u3", "d'v1 = {dv1}");
    ok(rep.to_original.check_chain_map(&rep.model, &m))?;
    let rank = ok(quadratic_block_matrix(&m, &d))?.rank;
    ensure!(rank == 2 && d.p() == 3, "skew rank {rank}, p {}", d.p());
    Ok("K != 0, dim V' = 2, d'v1 = u2*u3, skew rank 2 < 3".into())
}

fn criterion_5() -> Outcome {
    let m = corpus("ex3.1");
    let evidence = ok(is_elliptic(&m))?;
    let t = m.table();
    let ideal: Vec<String> = evidence.ideal.iter().filter(|p| !p.is_zero()).map(|p| t.display(p).to_string()).collect();
    ensure!(evidence.elliptic, "base not elliptic");
    ensure!(ideal == ["w^2"] && evidence.quotient_dimension == QuotientDimension::Finite(2), "pure part {ideal:?}");
    let spec = extension("ex3.1");
    let cert = verify_extension(&spec);
    ensure!(cert.rank == Some(1), "certificate {:?}", cert.checks);
    let total = ok(spec.total())?;
    let basis = ok(pure_ideal(&total))?.groebner();
    let a21 = ok(parse_polynomial(total.table(), "a^21"))?;
    ensure!(basis.contains(&a21), "a^21 not in the pure ideal");
    let bounds = ok(rank_bounds(&m, &[spec], &BoundsOptions::default()))?;
    ensure!(bounds.dim_v_minus_dim_u_even == Some(0), "{:?}", bounds.dim_v_minus_dim_u_even);
    ensure!(bounds.lower.value == 1, "lower {}", bounds.lower.value);
    Ok("base pure part Q[w]/(w^2), certificate n = 1, a^21 in (a^3 w, w^2 + a^18), 0 < 1".into())
}

fn criterion_6() -> Outcome {
    let m = corpus("ex3.2");
    let cert = verify_extension(&extension("ex3.2"));
    ensure!(cert.rank == Some(3), "certificate {:?}", cert.checks);
    let u1 = m.table().id("u1").unwrap();
    let data = ok(wang(&m, u1, &CohomologyOptions::default()))?;
    ensure!(data.exact && data.total == 2 * data.dim_ker, "total {} ker {}", data.total, data.dim_ker);
    ensure!(data.total == full_total(&m)?, "Wang total differs from direct total");
    ensure!(data.total >= 32, "total {}", data.total);
    let d = ok(two_stage_split(&m))?;
    ensure!(hypothesis_check(&m, &d).stable_separated.is_none(), "stable-separated reported true");
    Ok(format!("rk0 >= 3, total {} = 2 * {} >= 2^5, not stable-separated", data.total, data.dim_ker))
}

fn criterion_7() -> Outcome {
    let opts = BoundsOptions::default();
    let m = corpus("ex3.4-M");
    let b = ok(rank_bounds(&m, &[], &opts))?;
    ensure!(b.upper_chi == 0 && b.upper == 0 && b.exact, "M bounds {:?}", b.upper);
    let spec = extension("ex3.4-MN");
    let cert = verify_extension(&spec);
    ensure!(cert.rank == Some(1), "certificate {:?}", cert.checks);
    let e = cert.ellipticity.as_ref().ok_or("no ellipticity evidence")?;
    let t = spec.table();
    let ideal: Vec<String> = e.ideal.iter().filter(|p| !p.is_zero()).map(|p| t.display(p).to_string()).collect();
    ensure!(ideal == ["x^2", "a^3", "w^2"], "pure ideal {ideal:?}");
    ensure!(e.elliptic, "product extension not elliptic");
    let n = corpus("ex3.4-N");
    let b = ok(rank_bounds(&n, &[], &opts))?;
    ensure!(b.upper_chi == 6 && b.upper == 6 && b.upper_thm.is_none(), "N bounds {} {}", b.upper_chi, b.upper);
    let report = ok(run_corpus("ex3.4-N"))?;
    let entry = report.get("ex3.4-N").ok_or("corpus entry missing")?;
    ensure!(entry.passed(), "corpus entry failed");
    ensure!(entry.computed.get("annotation").is_some_and(|a| a.contains("rk0 = 0")), "annotation missing");
    Ok("rk0(M) = 0, rk0(MxN) >= 1 with ideal (x^2, a^3, w^2), N upper 6 with annotation".into())
}

fn random_homogeneous(rng: &mut ChaCha8Rng, t: &GeneratorTable, n: usize) -> Polynomial {
    let basis = t.basis(n);
    let mut p = Polynomial::zero();
    if basis.is_empty() {
        return p;
    }
    for _ in 0..rng.gen_range(1..=3) {
        p.add_term(basis[rng.gen_range(0..basis.len())].clone(), scalar(rng.gen_range(-3..=3)));
    }
    p
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let opts = CohomologyOptions { execution: Execution::Sequential, ..Default::default() };
    let shapes = [(2, 1), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4), (5, 2), (5, 3)];
    let seeds: Vec<u64> = (0..200).collect();
    let failures: Vec<String> = sullivan::par::map(Execution::Parallel, &seeds, |&seed| {
        let (p, r) = shapes[seed as usize % shapes.len()];
        let params = RandomParams { p, r, degrees: 3..=7 };
        let check = || -> Result<(), String> {
            let m = ok(random_two_stage(seed, &params))?;
            let evidence = ok(is_elliptic(&m))?;
            ensure!(evidence.elliptic, "not elliptic");
            let d = ok(two_stage_split(&m))?;
            let table = ok(full_betti_table(&m, &evidence, &opts))?;
            ensure!(table.total >= 1 << (d.r() - d.q()), "total {} below 2^{}", table.total, d.r() - d.q());
            ensure!(ok(poincare_duality_check(&m, &evidence, &opts))?.holds, "duality fails");
            let w = ok(wang(&m, 0, &opts))?;
            ensure!(w.exact && w.total == table.total, "Wang total {} vs {}", w.total, table.total);
            for candidate in [m, ok(random_quadratic(seed, &params))?] {
                let d = ok(two_stage_split(&candidate))?;
                let maximal = ok(maximality(&candidate, &d))?.maximal;
                let rank = ok(quadratic_block_matrix(&candidate, &d))?.rank;
                ensure!(maximal == (rank == d.p()), "maximality {maximal} but rank {rank}, p {}", d.p());
            }
            Ok(())
        };
        check().err().map(|e| format!("seed {seed}: {e}"))
    })
    .into_iter()
    .flatten()
    .collect();
    ensure!(failures.is_empty(), "{}", failures.join("; "));

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let models: Vec<SullivanModel> = ["M3", "ex3.5-n3", "ex3.1", "ex3.4-MN", "lemma"].iter().map(|n| corpus(n)).collect();
    for i in 0..1000 {
        let m = &models[i % models.len()];
        let t = m.table();
        let (a, b, c) = (rng.gen_range(0..30), rng.gen_range(0..30), rng.gen_range(0..30));
        let x = random_homogeneous(&mut rng, t, a);
        let y = random_homogeneous(&mut rng, t, b);
        let z = random_homogeneous(&mut rng, t, c);
        ensure!(m.d(&m.d(&x)).is_zero(), "d^2 x != 0 in {}", m.name());
        let sign = if a * b % 2 == 1 { scalar(-1) } else { scalar(1) };
        ensure!(t.mul(&x, &y) == t.mul(&y, &x).scale(&sign), "Koszul sign fails in {}", m.name());
        ensure!(t.mul(&t.mul(&x, &y), &z) == t.mul(&x, &t.mul(&y, &z)), "associativity fails");
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("200 seeds and 1000 triples in {:.1} s", start.elapsed().as_secs_f64()))
}

fn criterion_9() -> Outcome {
    let m = corpus("lemma");
    let d = ok(two_stage_split(&m))?;
    let search = ok(search_lower_bound(&m, &d, 64, Execution::default()))?;
    let expected = d.r() - d.q();
    ensure!(search.best.rank == Some(1) && expected == 1, "search {:?}, expected {expected}", search.best.rank);
    let v2 = m.table().id("v2").unwrap();
    let spec = ok(construct_lemma_extension(&m, &[v2]))?;
    ensure!(verify_extension(&spec).rank == Some(1), "lemma extension fails");
    let total = ok(spec.total())?;
    ensure!(total.len() == 4, "total has {} generators", total.len());
    let direct = ok(betti_table(&total, 30, &CohomologyOptions::default()))?;
    let top = direct.nonzero().last().map(|&(n, _)| n);
    ensure!(direct.total == 4 && top == Some(4), "direct cohomology {:?}", direct.nonzero());
    Ok("certificate n = 1 = dim V - dim U^even; direct H of the total has dimension 4 up to degree 30".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("M2 Betti profile and duality", criterion_1),
        ("odd-free family lower bound and dense oracle", criterion_2),
        ("Gottlieb versus rank family", criterion_3),
        ("non-maximal V repair", criterion_4),
        ("rank above dim V - dim U^even", criterion_5),
        ("three-torus extension and Wang sequence", criterion_6),
        ("product extension and Euler characteristic bound", criterion_7),
        ("random-model property suites", criterion_8),
        ("lemma extension", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("criterion {} PASS ({name}, {secs:.2} s): {detail}", i + 1),
            Err(e) => {
                println!("criterion {} FAIL ({name}, {secs:.2} s): {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
