use sullivan::cohomology::{full_betti_table, poincare_duality_check, CohomologyOptions};
use sullivan::purity::is_elliptic;
use sullivan::random::{random_quadratic, random_two_stage, RandomParams};
use sullivan::rank::{rank_bounds, BoundsOptions};
use sullivan::structure::{maximality, quadratic_block_matrix, two_stage_split, wang};
use sullivan::{Execution, SullivanModel};

const SEEDS: u64 = 240;

fn params(seed: u64) -> RandomParams {
    let shapes = [(2, 1), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4), (5, 2), (5, 3)];
    let (p, r) = shapes[(seed % shapes.len() as u64) as usize];
    RandomParams { p, r, degrees: 3..=7 }
}

fn models() -> Vec<SullivanModel> {
    (0..SEEDS).map(|s| random_two_stage(s, &params(s)).unwrap()).collect()
}

fn seq() -> CohomologyOptions {
    CohomologyOptions { execution: Execution::Sequential, ..Default::default() }
}

#[test]
fn general_two_stage_inequality_and_duality() {
    let opts = seq();
    let results = sullivan::par::map(Execution::Parallel, &models(), |m| {
        let evidence = is_elliptic(m).unwrap();
        assert!(evidence.elliptic);
        let d = two_stage_split(m).unwrap();
        assert!(maximality(m, &d).unwrap().maximal, "{}", m.name());
        let table = full_betti_table(m, &evidence, &opts).unwrap();
        let exponent = d.r() - d.q();
        assert!(table.total >= 1 << exponent, "{}: {} < 2^{exponent}", m.name(), table.total);
        let duality = poincare_duality_check(m, &evidence, &opts).unwrap();
        assert!(duality.holds, "{}: {:?}", m.name(), duality.violations);
        table.total
    });
    assert_eq!(results.len() as u64, SEEDS);
}

#[test]
fn maximality_iff_full_skew_rank() {
    let mut seen = [0usize; 2];
    for seed in 0..SEEDS {
        for m in [random_two_stage(seed, &params(seed)).unwrap(), random_quadratic(seed, &params(seed)).unwrap()] {
            let d = two_stage_split(&m).unwrap();
            let matrix = quadratic_block_matrix(&m, &d).unwrap();
            let analysis = maximality(&m, &d).unwrap();
            assert_eq!(analysis.maximal, matrix.rank == d.p(), "{}", m.name());
            assert_eq!(analysis.maximal, analysis.k_basis.is_empty());
            seen[analysis.maximal as usize] += 1;
            if let Some(rep) = analysis.repair {
                rep.to_original.check_chain_map(&rep.model, &m).unwrap();
                rep.from_original.check_chain_map(&m, &rep.model).unwrap();
                assert!(rep.decomposition.r() > d.r());
            }
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "both directions exercised: {seen:?}");
}

#[test]
fn wang_totals() {
    let opts = seq();
    let models = models();
    let totals = sullivan::par::map(Execution::Parallel, &models, |m| {
        let evidence = is_elliptic(m).unwrap();
        let total = full_betti_table(m, &evidence, &opts).unwrap().total;
        let data = wang(m, 0, &opts).unwrap();
        assert!(data.exact, "{}", m.name());
        assert_eq!(data.total, total, "{}", m.name());
        assert_eq!(total, data.dim_ker + data.dim_coker);
    });
    assert_eq!(totals.len() as u64, SEEDS);
}

#[test]
fn bounds_are_consistent() {
    let opts = BoundsOptions { cohomology: seq(), ..Default::default() };
    for (seed, m) in models().iter().enumerate().step_by(4) {
        let b = rank_bounds(m, &[], &opts).unwrap();
        assert!(b.consistent(), "seed {seed}: {:?}", b.notes);
        assert!(b.trc.holds, "seed {seed}");
        assert!(b.lower.value <= b.upper_chi);
    }
}

#[test]
fn deterministic_generation() {
    for seed in [0, 17, 99] {
        assert_eq!(random_two_stage(seed, &params(seed)), random_two_stage(seed, &params(seed)));
    }
}
