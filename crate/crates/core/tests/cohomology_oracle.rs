mod common;

use common::{corpus, Exterior};
use sullivan::cohomology::{self, betti_table, full_betti_table, CohomologyOptions};
use sullivan::purity::is_elliptic;
use sullivan::structure::wang;
use sullivan::{Execution, SullivanModel};

fn full(m: &SullivanModel) -> sullivan::BettiTable {
    full_betti_table(m, &is_elliptic(m).unwrap(), &CohomologyOptions::default()).unwrap()
}

#[test]
fn dense_oracle_agrees_on_odd_models() {
    for name in ["M2", "M3", "M4", "ex3.5-n2", "ex3.5-n3", "nonmaximal", "ex3.2"] {
        let m = corpus(name);
        let oracle = Exterior::from_model(&m).betti();
        let top: usize = (0..m.len()).map(|g| m.table().degree(g) as usize).sum();
        let table = betti_table(&m, top, &CohomologyOptions::default()).unwrap();
        assert_eq!(table.betti, oracle, "{name}");
    }
}

#[test]
fn odd_free_family_meets_lower_bound() {
    for (name, n) in [("M3", 3u32), ("M4", 4)] {
        let total = full(&corpus(name)).total;
        assert!(total >= 1 << (n * (n - 1) / 2), "{name}: {total}");
    }
}

#[test]
fn kunneth() {
    let pairs = [("M2", "lemma"), ("ex3.4-M", "M2"), ("M2", "M2")];
    for (a, b) in pairs {
        let (ma, mb) = (corpus(a), corpus(b));
        let product = full(&ma.tensor(&mb));
        let (ta, tb) = (full(&ma), full(&mb));
        assert_eq!(product.total, ta.total * tb.total, "{a} x {b}");
        for n in 0..=product.max_degree {
            let expected: usize = (0..=n).map(|i| ta.get(i) * tb.get(n - i)).sum();
            assert_eq!(product.get(n), expected, "{a} x {b} degree {n}");
        }
    }
}

#[test]
fn euler_characteristic_of_chains_and_cohomology() {
    for name in ["M3", "ex3.5-n3", "nonmaximal", "lemma", "ex3.4-M"] {
        let m = corpus(name);
        let top: usize = (0..m.len()).map(|g| m.table().degree(g) as usize).sum();
        let table = betti_table(&m, top, &CohomologyOptions::default()).unwrap();
        if m.table().even_ids().is_empty() {
            assert_eq!(table.euler_characteristic(), table.chain_euler_characteristic(), "{name}");
        }
        let elliptic = full(&m);
        if m.chi_pi() < 0 {
            assert_eq!(elliptic.euler_characteristic(), 0, "{name}");
        }
    }
    let m = corpus("ex3.4-M");
    assert_eq!(full(&m).euler_characteristic(), 2);
}

#[test]
fn poincare_duality_on_corpus() {
    for name in ["M2", "M4", "ex3.1", "ex3.4-MN", "ex3.2"] {
        let m = corpus(name);
        let check = cohomology::poincare_duality_check(&m, &is_elliptic(&m).unwrap(), &CohomologyOptions::default()).unwrap();
        assert!(check.holds, "{name}: {:?}", check.violations);
        assert_eq!(full(&m).get(check.formal_dimension), 1);
    }
}

#[test]
fn wang_exactness() {
    let opts = CohomologyOptions::default();
    for name in ["M2", "M3", "ex3.5-n2", "ex3.5-n3", "ex3.2"] {
        let m = corpus(name);
        let data = wang(&m, 0, &opts).unwrap();
        assert!(data.exact, "{name}");
        assert_eq!(data.total, full(&m).total, "{name}");
        assert_eq!(data.total, data.dim_ker + data.dim_coker, "{name}");
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let m = corpus("M4");
    let seq = CohomologyOptions { execution: Execution::Sequential, ..Default::default() };
    let par = CohomologyOptions { execution: Execution::Parallel, ..Default::default() };
    assert_eq!(betti_table(&m, 42, &seq).unwrap(), betti_table(&m, 42, &par).unwrap());
}
