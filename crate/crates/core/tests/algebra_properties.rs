use std::sync::LazyLock;

use proptest::prelude::*;
use sullivan::algebra::{scalar, GeneratorTable, Monomial, Polynomial};
use sullivan::format::{parse_model, parse_polynomial, print_model, print_polynomial};
use sullivan::random::{random_two_stage, RandomParams};
use sullivan::SullivanModel;

fn table_strategy() -> impl Strategy<Value = GeneratorTable> {
    prop::collection::vec(1i64..=6, 2..=5).prop_map(|degrees| {
        let mut t = GeneratorTable::new();
        for (i, d) in degrees.into_iter().enumerate() {
            t.push(&format!("g{i}"), d).unwrap();
        }
        t
    })
}

fn poly_from(t: &GeneratorTable, words: &[(i64, Vec<usize>)]) -> Polynomial {
    let raw: Vec<_> = words
        .iter()
        .map(|(c, w)| (scalar(*c), w.iter().map(|&g| g % t.len()).collect()))
        .collect();
    t.normalize(&raw)
}

fn words() -> impl Strategy<Value = Vec<(i64, Vec<usize>)>> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0usize..6, 0..=3)), 0..=4)
}

/// A homogeneous element of degree `n`, as a combination of basis monomials.
fn homogeneous(t: &GeneratorTable, n: usize, picks: &[(usize, i64)]) -> Polynomial {
    let basis = t.basis(n);
    let mut p = Polynomial::zero();
    if basis.is_empty() {
        return p;
    }
    for &(i, c) in picks {
        p.add_term(basis[i % basis.len()].clone(), scalar(c));
    }
    p
}

fn picks() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..64, -3i64..=3), 1..=3)
}

fn series_coefficients(t: &GeneratorTable, max: usize) -> Vec<u128> {
    let mut coeffs = vec![0u128; max + 1];
    coeffs[0] = 1;
    for g in t.generators() {
        let d = g.degree as usize;
        if g.is_odd() {
            for n in (d..=max).rev() {
                coeffs[n] += coeffs[n - d];
            }
        } else {
            for n in d..=max {
                coeffs[n] += coeffs[n - d];
            }
        }
    }
    coeffs
}

static MODELS: LazyLock<Vec<SullivanModel>> = LazyLock::new(|| {
    ["M3", "ex3.5-n3", "ex3.1", "ex3.4-MN", "nonmaximal", "lemma"]
        .iter()
        .map(|n| {
            let path = format!("{}/{n}.model", sullivan::corpus::DEFAULT_DIR);
            parse_model(&std::fs::read_to_string(path).unwrap()).unwrap()
        })
        .collect()
});

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn koszul_sign_law(t in table_strategy(), m in 0usize..12, n in 0usize..12, a in picks(), b in picks()) {
        let x = homogeneous(&t, m, &a);
        let y = homogeneous(&t, n, &b);
        let sign = if m * n % 2 == 1 { scalar(-1) } else { scalar(1) };
        prop_assert_eq!(t.mul(&x, &y), t.mul(&y, &x).scale(&sign));
    }

    #[test]
    fn associative_and_distributive(t in table_strategy(), a in words(), b in words(), c in words()) {
        let (x, y, z) = (poly_from(&t, &a), poly_from(&t, &b), poly_from(&t, &c));
        prop_assert_eq!(t.mul(&t.mul(&x, &y), &z), t.mul(&x, &t.mul(&y, &z)));
        prop_assert_eq!(t.mul(&x, &(&y + &z)), &t.mul(&x, &y) + &t.mul(&x, &z));
        prop_assert_eq!(t.mul(&(&x + &y), &z), &t.mul(&x, &z) + &t.mul(&y, &z));
    }

    #[test]
    fn normalize_is_idempotent(t in table_strategy(), a in words()) {
        let p = poly_from(&t, &a);
        let raw: Vec<_> = p
            .terms()
            .map(|(m, c)| {
                let word = m.generators().flat_map(|g| std::iter::repeat_n(g, m.exponent(g) as usize)).collect();
                (c.clone(), word)
            })
            .collect();
        prop_assert_eq!(t.normalize(&raw), p);
    }

    #[test]
    fn polynomial_round_trip(t in table_strategy(), a in words()) {
        let p = poly_from(&t, &a);
        prop_assert_eq!(parse_polynomial(&t, &print_polynomial(&t, &p)).unwrap(), p);
    }

    #[test]
    fn d_squared_and_leibniz(which in 0usize..6, m in 0usize..40, n in 0usize..40, a in picks(), b in picks()) {
        let model = &MODELS[which];
        let t = model.table();
        let x = homogeneous(t, m, &a);
        let y = homogeneous(t, n, &b);
        prop_assert!(model.d(&model.d(&x)).is_zero());
        let sign = if m % 2 == 1 { scalar(-1) } else { scalar(1) };
        let expected = &t.mul(&model.d(&x), &y) + &t.mul(&x, &model.d(&y)).scale(&sign);
        prop_assert_eq!(model.d(&t.mul(&x, &y)), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn basis_sizes_match_generating_function(t in table_strategy()) {
        let sizes = t.basis_sizes(40);
        prop_assert_eq!(&sizes[..=40], &series_coefficients(&t, 40)[..]);
        for n in [0usize, 5, 11, 17] {
            prop_assert_eq!(t.basis(n).len() as u128, sizes[n]);
        }
    }

    #[test]
    fn model_round_trip(seed in 0u64..10_000, p in 2usize..=5) {
        let params = RandomParams { p, r: if p == 2 { 1 } else { 2 }, degrees: 1..=9 };
        let m = random_two_stage(seed, &params).unwrap();
        let text = print_model(&m);
        let again = parse_model(&text).unwrap();
        prop_assert_eq!(print_model(&again), text);
        prop_assert_eq!(again, m);
    }
}

#[test]
fn odd_squares_vanish() {
    let t = GeneratorTable::from_pairs(&[("x", 3), ("y", 2)]).unwrap();
    let x = Polynomial::generator(0);
    assert!(t.mul(&x, &x).is_zero());
    let y2 = t.mul(&Polynomial::generator(1), &Polynomial::generator(1));
    assert_eq!(y2, Polynomial::monomial(Monomial::power(1, 2)));
}
