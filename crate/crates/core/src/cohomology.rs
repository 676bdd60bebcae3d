//! Degree-wise cohomology by exact sparse linear algebra.
//!
//! The cochain space in degree `n` has the canonical monomial basis
//! `basis(n)`; `d_n` is stored column by column. Betti numbers come from
//! fraction-free ranks. Cohomology bases are fixed by reducing the kernel of
//! `d_n`, in kernel order, against the boundaries, which makes induced maps
//! reproducible.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{GeneratorTable, Monomial, Polynomial, Scalar};
use crate::linalg::{self, Echelon, SparseVec};
use crate::model::{Derivation, ModelError, SullivanModel};
use crate::par::{self, Execution};
use crate::purity::EllipticityReport;
use crate::report::Report;

/// Default bound on the summed cochain dimensions of a table request.
pub const DEFAULT_CAP: u128 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologyOptions {
    pub cap: u128,
    pub execution: Execution,
}

impl Default for CohomologyOptions {
    fn default() -> Self {
        CohomologyOptions {
            cap: DEFAULT_CAP,
            execution: Execution::default(),
        }
    }
}

impl CohomologyOptions {
    pub fn sequential() -> Self {
        CohomologyOptions {
            execution: Execution::Sequential,
            ..Self::default()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("cochain dimensions exceed the cap of {cap} at degree {degree} (cumulative {size})")]
    CapExceeded { degree: usize, size: u128, cap: u128 },
    #[error("element of degree {degree} is not a cocycle")]
    NotACocycle { degree: usize },
    #[error("derivation does not commute with d on `{generator}`: residual {residual}")]
    NotCommuting { generator: String, residual: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn index_of(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

fn coordinates(index: &HashMap<Monomial, usize>, p: &Polynomial) -> SparseVec {
    let mut v: SparseVec = p
        .terms()
        .map(|(m, c)| (*index.get(m).expect("monomial of the expected degree"), c.clone()))
        .collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

fn polynomial(basis: &[Monomial], v: &SparseVec) -> Polynomial {
    let mut p = Polynomial::zero();
    for (i, c) in v {
        p.add_term(basis[*i].clone(), c.clone());
    }
    p
}

/// `d : Λ^n → Λ^{n+1}` in canonical bases.
#[derive(Debug, Clone)]
pub struct DegreeSlice {
    pub degree: usize,
    pub basis: Vec<Monomial>,
    pub target: Vec<Monomial>,
    /// Column `j` is `d(basis[j])` in coordinates of `target`.
    pub columns: Vec<SparseVec>,
}

impl DegreeSlice {
    pub fn new(m: &SullivanModel, n: usize) -> Self {
        let t = m.table();
        let basis = t.basis(n);
        let target = t.basis(n + 1);
        let index = index_of(&target);
        let columns = basis
            .iter()
            .map(|b| coordinates(&index, &m.d(&Polynomial::monomial(b.clone()))))
            .collect();
        DegreeSlice {
            degree: n,
            basis,
            target,
            columns,
        }
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.columns)
    }

    /// Dense matrix with rows indexed by `target` and columns by `basis`.
    pub fn dense(&self) -> Vec<Vec<Scalar>> {
        let mut rows = vec![vec![Scalar::zero(); self.basis.len()]; self.target.len()];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col {
                rows[*i][j] = c.clone();
            }
        }
        rows
    }
}

fn rank_of_d(m: &SullivanModel, n: usize) -> usize {
    DegreeSlice::new(m, n).rank()
}

/// `dim H^n`.
pub fn betti(m: &SullivanModel, n: usize) -> usize {
    let size = m.table().basis(n).len();
    let below = if n == 0 { 0 } else { rank_of_d(m, n - 1) };
    size - rank_of_d(m, n) - below
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub betti: Vec<usize>,
    /// `dim Λ^n` for the same degrees.
    pub chain_dims: Vec<u128>,
    pub total: usize,
    pub max_degree: usize,
    /// Set when the table reaches the formal dimension of an elliptic model.
    pub complete: bool,
}

impl BettiTable {
    pub fn get(&self, n: usize) -> usize {
        self.betti.get(n).copied().unwrap_or(0)
    }

    /// `(degree, b_n)` for every nonzero Betti number.
    pub fn nonzero(&self) -> Vec<(usize, usize)> {
        self.betti
            .iter()
            .enumerate()
            .filter(|(_, &b)| b > 0)
            .map(|(n, &b)| (n, b))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i128 {
        self.betti
            .iter()
            .enumerate()
            .map(|(n, &b)| if n % 2 == 0 { b as i128 } else { -(b as i128) })
            .sum()
    }

    pub fn chain_euler_characteristic(&self) -> i128 {
        self.chain_dims
            .iter()
            .enumerate()
            .map(|(n, &c)| if n % 2 == 0 { c as i128 } else { -(c as i128) })
            .sum()
    }

    /// Lines `betti[n]` for every degree with nonzero cochains, then totals.
    pub fn report(&self) -> Report {
        let mut r = Report::new();
        for (n, &b) in self.betti.iter().enumerate() {
            if self.chain_dims[n] > 0 {
                r.push(format!("betti[{n}]"), b);
            }
        }
        r.push("total", self.total);
        r.push("complete", self.complete);
        r
    }
}

fn check_cap(table: &GeneratorTable, max_degree: usize, cap: u128) -> Result<Vec<u128>, CohomologyError> {
    let sizes = table.basis_sizes(max_degree + 1);
    let mut cumulative: u128 = 0;
    for (n, &s) in sizes.iter().enumerate() {
        cumulative = cumulative.saturating_add(s);
        if cumulative > cap {
            return Err(CohomologyError::CapExceeded {
                degree: n,
                size: cumulative,
                cap,
            });
        }
    }
    Ok(sizes)
}

/// Betti numbers in degrees `0..=max_degree`; never marked complete.
pub fn betti_table(
    m: &SullivanModel,
    max_degree: usize,
    opts: &CohomologyOptions,
) -> Result<BettiTable, CohomologyError> {
    let sizes = check_cap(m.table(), max_degree, opts.cap)?;
    let ranks = par::map_range(opts.execution, 0..max_degree + 1, |n| rank_of_d(m, n));
    let betti: Vec<usize> = (0..=max_degree)
        .map(|n| {
            let below = if n == 0 { 0 } else { ranks[n - 1] };
            sizes[n] as usize - ranks[n] - below
        })
        .collect();
    Ok(BettiTable {
        total: betti.iter().sum(),
        chain_dims: sizes[..=max_degree].to_vec(),
        betti,
        max_degree,
        complete: false,
    })
}

/// Betti table up to the formal dimension of an elliptic model.
pub fn full_betti_table(
    m: &SullivanModel,
    evidence: &EllipticityReport,
    opts: &CohomologyOptions,
) -> Result<BettiTable, CohomologyError> {
    let top = m.formal_dimension(evidence)?;
    let mut table = betti_table(m, top, opts)?;
    table.complete = true;
    Ok(table)
}

/// A cohomology class: a representative cocycle and its coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: usize,
    pub representative: Polynomial,
    pub coordinates: Vec<Scalar>,
}

const BOUNDARY: usize = usize::MAX;

/// Chosen basis of `H^n` with coordinate extraction.
#[derive(Debug, Clone)]
pub struct CohomologyBasis {
    pub degree: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    reps: Vec<SparseVec>,
    echelon: Echelon,
}

impl CohomologyBasis {
    pub fn new(m: &SullivanModel, n: usize) -> Self {
        let here = DegreeSlice::new(m, n);
        let mut echelon = Echelon::new();
        if n > 0 {
            for col in DegreeSlice::new(m, n - 1).columns {
                echelon.insert(&col, BOUNDARY);
            }
        }
        let mut reps = Vec::new();
        for z in linalg::kernel(&here.columns) {
            let red = echelon.reduce_leading(&z);
            if !red.remainder.is_empty() {
                echelon.insert_reduced(red.remainder.clone(), reps.len());
                reps.push(red.remainder);
            }
        }
        CohomologyBasis {
            degree: n,
            index: index_of(&here.basis),
            basis: here.basis,
            reps,
            echelon,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representative(&self, k: usize) -> Polynomial {
        polynomial(&self.basis, &self.reps[k])
    }

    pub fn representatives(&self) -> Vec<Polynomial> {
        (0..self.dim()).map(|k| self.representative(k)).collect()
    }

    /// Coordinates of the class of a cocycle of this degree.
    pub fn coordinates(&self, p: &Polynomial) -> Result<Vec<Scalar>, CohomologyError> {
        let red = self.echelon.reduce_leading(&coordinates(&self.index, p));
        if !red.remainder.is_empty() {
            return Err(CohomologyError::NotACocycle { degree: self.degree });
        }
        let mut out = vec![Scalar::zero(); self.dim()];
        for (tag, c) in red.used {
            if tag != BOUNDARY {
                out[tag] += c;
            }
        }
        Ok(out)
    }

    pub fn class(&self, p: &Polynomial) -> Result<CohomologyClass, CohomologyError> {
        Ok(CohomologyClass {
            degree: self.degree,
            representative: p.clone(),
            coordinates: self.coordinates(p)?,
        })
    }

    pub fn is_exact(&self, p: &Polynomial) -> Result<bool, CohomologyError> {
        Ok(self.coordinates(p)?.iter().all(Zero::is_zero))
    }
}

pub fn cohomology_bases(m: &SullivanModel, max_degree: usize, exec: Execution) -> Vec<CohomologyBasis> {
    par::map_range(exec, 0..max_degree + 1, |n| CohomologyBasis::new(m, n))
}

/// One homogeneous piece `H^n → H^{n+k}` of an induced map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedBlock {
    pub source_degree: usize,
    pub target_degree: usize,
    /// Column `j` is the image of source basis class `j`.
    pub columns: Vec<Vec<Scalar>>,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    pub degree: i64,
    pub max_degree: usize,
    pub dims: Vec<usize>,
    pub blocks: Vec<InducedBlock>,
    /// `dim ker` per source degree.
    pub kernel: Vec<usize>,
    /// `dim coker` per target degree.
    pub cokernel: Vec<usize>,
}

impl InducedMap {
    pub fn total_kernel(&self) -> usize {
        self.kernel.iter().sum()
    }

    pub fn total_cokernel(&self) -> usize {
        self.cokernel.iter().sum()
    }

    pub fn total_rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank).sum()
    }

    fn block_from(&self, n: usize) -> Option<&InducedBlock> {
        self.blocks.iter().find(|b| b.source_degree == n)
    }

    /// Whether the map composed with itself vanishes.
    pub fn squares_to_zero(&self) -> bool {
        self.blocks.iter().all(|first| {
            let Some(second) = self.block_from(first.target_degree) else {
                return true;
            };
            first.columns.iter().all(|col| {
                (0..self.dims[second.target_degree]).all(|i| {
                    col.iter()
                        .zip(&second.columns)
                        .fold(Scalar::zero(), |acc, (c, scol)| acc + c * &scol[i])
                        .is_zero()
                })
            })
        })
    }
}

/// Checks `dθ - (-1)^{|θ|} θd = 0` on every generator.
pub fn check_commutes(m: &SullivanModel, theta: &Derivation) -> Result<(), CohomologyError> {
    let t = m.table();
    let sign = if theta.degree.rem_euclid(2) == 0 { Scalar::one() } else { -Scalar::one() };
    for g in 0..m.len() {
        let gen = Polynomial::generator(g);
        let mut r = m.d(&theta.apply(t, &gen));
        r.add_scaled(&theta.apply(t, m.differential(g)), &-sign.clone());
        if !r.is_zero() {
            return Err(CohomologyError::NotCommuting {
                generator: t.name(g).to_string(),
                residual: t.display(&r).to_string(),
            });
        }
    }
    Ok(())
}

/// Matrix of `θ*` between cohomology bases in degrees `0..=max_degree`.
///
/// Degrees outside that window count as zero, so `max_degree` should reach
/// the formal dimension when totals are wanted.
pub fn induced_map_on_h(
    m: &SullivanModel,
    theta: &Derivation,
    max_degree: usize,
    opts: &CohomologyOptions,
) -> Result<InducedMap, CohomologyError> {
    check_commutes(m, theta)?;
    check_cap(m.table(), max_degree, opts.cap)?;
    let bases = cohomology_bases(m, max_degree, opts.execution);
    let dims: Vec<usize> = bases.iter().map(CohomologyBasis::dim).collect();
    let t = m.table();
    let sources: Vec<usize> = (0..=max_degree)
        .filter(|&n| {
            let target = n as i64 + theta.degree;
            dims[n] > 0 && target >= 0 && target <= max_degree as i64
        })
        .collect();
    let blocks: Vec<Result<InducedBlock, CohomologyError>> = par::map(opts.execution, &sources, |&n| {
        let target = (n as i64 + theta.degree) as usize;
        let columns = bases[n]
            .representatives()
            .iter()
            .map(|rep| bases[target].coordinates(&theta.apply(t, rep)))
            .collect::<Result<Vec<_>, _>>()?;
        let rank = linalg::dense_rank(&columns);
        Ok(InducedBlock {
            source_degree: n,
            target_degree: target,
            columns,
            rank,
        })
    });
    let blocks = blocks.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut kernel = dims.clone();
    let mut cokernel = dims.clone();
    for b in &blocks {
        kernel[b.source_degree] -= b.rank;
        cokernel[b.target_degree] -= b.rank;
    }
    Ok(InducedMap {
        degree: theta.degree,
        max_degree,
        dims,
        blocks,
        kernel,
        cokernel,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityCheck {
    pub holds: bool,
    pub formal_dimension: usize,
    /// `(n, b_n, b_{D-n})` wherever the two differ.
    pub violations: Vec<(usize, usize, usize)>,
}

/// Dimension symmetry `b_n = b_{D-n}` about the formal dimension `D`.
pub fn poincare_duality_check(
    m: &SullivanModel,
    evidence: &EllipticityReport,
    opts: &CohomologyOptions,
) -> Result<DualityCheck, CohomologyError> {
    let table = full_betti_table(m, evidence, opts)?;
    let top = table.max_degree;
    let violations: Vec<(usize, usize, usize)> = (0..=top)
        .filter(|&n| table.get(n) != table.get(top - n))
        .map(|n| (n, table.get(n), table.get(top - n)))
        .collect();
    Ok(DualityCheck {
        holds: violations.is_empty(),
        formal_dimension: top,
        violations,
    })
}
