//! Seeded odd-only quadratic two-stage models.
//!
//! A model has generators `u1..up` of one odd degree `k` and `v1..vr` of
//! degree `2k - 1` with `d v_l = Σ_{i<j} M^l_{ij} u_i u_j`. Every such model
//! is elliptic because all generators are odd.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{scalar, GeneratorTable, Monomial, Polynomial, Scalar};
use crate::linalg;
use crate::model::SullivanModel;

const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RandomError {
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("no admissible sample after {0} attempts")]
    Exhausted(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomParams {
    pub p: usize,
    pub r: usize,
    /// Candidate degrees for `U`; only odd values are used.
    pub degrees: RangeInclusive<u32>,
}

impl RandomParams {
    pub fn new(p: usize, r: usize) -> Self {
        RandomParams { p, r, degrees: 3..=3 }
    }

    fn odd_degrees(&self) -> Vec<u32> {
        self.degrees.clone().filter(|d| d % 2 == 1).collect()
    }

    pub fn validate(&self) -> Result<(), RandomError> {
        let pairs = self.p * self.p.saturating_sub(1) / 2;
        let bad = |s: String| Err(RandomError::Inadmissible(s));
        if self.p < 2 {
            return bad(format!("p = {} but at least two generators are needed", self.p));
        }
        if self.r == 0 || self.r > pairs {
            return bad(format!("r = {} outside 1..={pairs}", self.r));
        }
        if self.p % 2 == 1 && self.r < 2 {
            return bad(format!("a single skew matrix of odd size {} is singular", self.p));
        }
        if self.odd_degrees().is_empty() {
            return bad(format!("no odd degree in {:?}", self.degrees));
        }
        Ok(())
    }
}

fn skew_rank(p: usize, coefficients: &[Vec<i64>]) -> (usize, usize) {
    let pairs: Vec<(usize, usize)> = (0..p).flat_map(|i| (i + 1..p).map(move |j| (i, j))).collect();
    let rows: Vec<Vec<Scalar>> = coefficients.iter().map(|c| c.iter().map(|&x| scalar(x)).collect()).collect();
    let mut stacked = Vec::new();
    for c in coefficients {
        let mut block = vec![vec![scalar(0); p]; p];
        for (&(i, j), &x) in pairs.iter().zip(c) {
            block[i][j] = scalar(x);
            block[j][i] = scalar(-x);
        }
        stacked.extend(block);
    }
    (linalg::dense_rank(&rows), linalg::dense_rank(&stacked))
}

fn build(seed: u64, params: &RandomParams, degree: u32, coefficients: &[Vec<i64>]) -> SullivanModel {
    let p = params.p;
    let mut table = GeneratorTable::new();
    for i in 1..=p {
        table.push(&format!("u{i}"), degree as i64).expect("fresh name");
    }
    for l in 1..=params.r {
        table.push(&format!("v{l}"), 2 * degree as i64 - 1).expect("fresh name");
    }
    let pairs: Vec<(usize, usize)> = (0..p).flat_map(|i| (i + 1..p).map(move |j| (i, j))).collect();
    let mut values = vec![Polynomial::zero(); p];
    for c in coefficients {
        let mut dv = Polynomial::zero();
        for (&(i, j), &x) in pairs.iter().zip(c) {
            if x != 0 {
                dv.add_term(Monomial::from_sorted(&[(i, 1), (j, 1)]), scalar(x));
            }
        }
        values.push(dv);
    }
    SullivanModel::new(format!("random-{seed}-p{p}-r{}", params.r), table, values).expect("quadratic model is valid")
}

fn sample(rng: &mut ChaCha8Rng, params: &RandomParams) -> (u32, Vec<Vec<i64>>) {
    let degrees = params.odd_degrees();
    let degree = degrees[rng.gen_range(0..degrees.len())];
    let pairs = params.p * (params.p - 1) / 2;
    let coefficients = (0..params.r)
        .map(|_| (0..pairs).map(|_| rng.gen_range(-2..=2)).collect())
        .collect();
    (degree, coefficients)
}

/// Samples linearly independent skew matrices with stacked rank `p`, so
/// that the decomposition `U = {u_i}`, `V = {v_l}` is maximal.
pub fn random_two_stage(seed: u64, params: &RandomParams) -> Result<SullivanModel, RandomError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let (degree, coefficients) = sample(&mut rng, params);
        if skew_rank(params.p, &coefficients) == (params.r, params.p) {
            return Ok(build(seed, params, degree, &coefficients));
        }
    }
    Err(RandomError::Exhausted(MAX_ATTEMPTS))
}

/// Like [`random_two_stage`] but keeps the first sample, whatever its
/// skew rank. Differentials may be dependent or zero.
pub fn random_quadratic(seed: u64, params: &RandomParams) -> Result<SullivanModel, RandomError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (degree, coefficients) = sample(&mut rng, params);
    Ok(build(seed, params, degree, &coefficients))
}
