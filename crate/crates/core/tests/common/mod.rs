//! Helpers shared by the integration tests: corpus loading and an
//! independent dense oracle for exterior-algebra models.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use sullivan::format::parse_model;
use sullivan::SullivanModel;

pub fn corpus(name: &str) -> SullivanModel {
    let path = format!("{}/{name}.model", sullivan::corpus::DEFAULT_DIR);
    parse_model(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Exterior algebra on odd generators with monomials as bitmasks.
pub struct Exterior {
    degrees: Vec<usize>,
    /// `d` of each generator as `(coefficient, mask)` terms.
    d: Vec<Vec<(i64, u32)>>,
}

impl Exterior {
    pub fn from_model(m: &SullivanModel) -> Self {
        let t = m.table();
        let degrees = (0..m.len()).map(|g| t.degree(g) as usize).collect::<Vec<_>>();
        assert!(degrees.iter().all(|d| d % 2 == 1), "oracle handles odd generators only");
        let d = (0..m.len())
            .map(|g| {
                m.differential(g)
                    .terms()
                    .map(|(mono, c)| {
                        let mask = mono.generators().fold(0u32, |acc, h| acc | 1 << h);
                        (c.to_integer().try_into().unwrap(), mask)
                    })
                    .collect()
            })
            .collect();
        Exterior { degrees, d }
    }

    fn degree(&self, mask: u32) -> usize {
        (0..self.degrees.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.degrees[i]).sum()
    }

    /// Sign of moving the generators of `b` past those of `a` with index above.
    fn product(a: u32, b: u32) -> Option<(i64, u32)> {
        if a & b != 0 {
            return None;
        }
        let mut swaps = 0;
        for i in 0..32 {
            if b >> i & 1 == 1 {
                swaps += (a >> (i + 1)).count_ones();
            }
        }
        Some((if swaps % 2 == 0 { 1 } else { -1 }, a | b))
    }

    fn d_mask(&self, mask: u32) -> Vec<(i64, u32)> {
        let mut out = Vec::new();
        let mut before = 0u32;
        for g in 0..self.degrees.len() {
            if mask >> g & 1 == 0 {
                continue;
            }
            let rest = mask & !((1u32 << (g + 1)) - 1);
            let sign = if self.degree(before) % 2 == 0 { 1 } else { -1 };
            for &(c, t) in &self.d[g] {
                if let Some((s1, left)) = Self::product(before, t) {
                    if let Some((s2, full)) = Self::product(left, rest) {
                        out.push((sign * c * s1 * s2, full));
                    }
                }
            }
            before |= 1 << g;
        }
        out
    }

    pub fn betti(&self) -> Vec<usize> {
        let n = self.degrees.len();
        let top: usize = self.degrees.iter().sum();
        let mut by_degree = vec![Vec::new(); top + 2];
        for mask in 0..1u32 << n {
            by_degree[self.degree(mask)].push(mask);
        }
        let ranks: Vec<usize> = (0..=top)
            .map(|k| {
                let target = &by_degree[k + 1];
                let rows: Vec<Vec<BigRational>> = by_degree[k]
                    .iter()
                    .map(|&mask| {
                        let mut row = vec![BigRational::zero(); target.len()];
                        for (c, t) in self.d_mask(mask) {
                            let j = target.iter().position(|&x| x == t).unwrap();
                            row[j] += BigRational::from_integer(BigInt::from(c));
                        }
                        row
                    })
                    .collect();
                dense_rank(rows)
            })
            .collect();
        (0..=top)
            .map(|k| by_degree[k].len() - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] })
            .collect()
    }
}

pub fn dense_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = BigRational::one() / rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] * &inv;
                for k in c..cols {
                    let delta = &f * &rows[rank][k];
                    rows[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}
