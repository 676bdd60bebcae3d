//! Two-stage structure: decomposition, maximality of `V` and its repair,
//! the quadratic skew block matrix, theorem hypotheses, Gottlieb dimensions
//! and Wang derivations.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{GenId, GeneratorTable, Monomial, Polynomial, Scalar};
use crate::cohomology::{self, CohomologyError, CohomologyOptions, InducedMap};
use crate::linalg::{self, SparseVec};
use crate::model::{apply_derivation, Derivation, ModelError, ModelMorphism, SullivanModel};
use crate::par::{self, Execution};
use crate::purity::{self, PurityError};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("not two-stage: d{generator} involves `{offending}`, which is not a cocycle")]
    NotTwoStage { generator: String, offending: String },
    #[error("d{generator} is not quadratic in U; use the maximality analysis instead")]
    NotQuadratic { generator: String },
    #[error("`{0}` cannot be a Wang base: it must be an odd cocycle generator")]
    BadWangBase(String),
    #[error("`{0}` occurs linearly in a differential")]
    LinearWangBase(String),
    #[error("fibre of the Wang extension is not elliptic")]
    FibreNotElliptic,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Purity(#[from] PurityError),
}

/// `W = U ⊕ V` with `dU = 0` and `dV ⊆ ΛU`, as generator id lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoStageDecomposition {
    pub u: Vec<GenId>,
    pub v: Vec<GenId>,
    pub u_odd: Vec<GenId>,
    pub u_even: Vec<GenId>,
    /// Whether every generator of `V` has odd degree.
    pub v_odd: bool,
}

impl TwoStageDecomposition {
    pub fn from_parts(table: &GeneratorTable, mut u: Vec<GenId>, mut v: Vec<GenId>) -> Self {
        u.sort_unstable();
        v.sort_unstable();
        let (u_odd, u_even) = u.iter().partition(|&&g| table.is_odd(g));
        TwoStageDecomposition {
            v_odd: v.iter().all(|&g| table.is_odd(g)),
            u,
            v,
            u_odd,
            u_even,
        }
    }

    pub fn p(&self) -> usize {
        self.u_odd.len()
    }

    pub fn q(&self) -> usize {
        self.u_even.len()
    }

    pub fn r(&self) -> usize {
        self.v.len()
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new();
        r.push("two_stage", true);
        r.push("dimU_odd", self.p());
        r.push("dimU_even", self.q());
        r.push("dimV", self.r());
        r
    }
}

/// Splits with `V` as large as possible: cocycles that no differential uses
/// go to `V` unless they are even.
pub fn two_stage_split(m: &SullivanModel) -> Result<TwoStageDecomposition, StructureError> {
    let t = m.table();
    let mut used = vec![false; m.len()];
    for g in 0..m.len() {
        for h in m.differential(g).generators_used() {
            if h != g {
                used[h] = true;
            }
        }
    }
    let in_u = |g: GenId| m.is_cocycle_generator(g) && (used[g] || !t.is_odd(g));
    let u: Vec<GenId> = (0..m.len()).filter(|&g| in_u(g)).collect();
    let v: Vec<GenId> = (0..m.len()).filter(|&g| !in_u(g)).collect();
    for &g in &v {
        if let Some(h) = m.differential(g).generators_used().into_iter().find(|&h| !in_u(h)) {
            return Err(StructureError::NotTwoStage {
                generator: t.name(g).to_string(),
                offending: t.name(h).to_string(),
            });
        }
    }
    Ok(TwoStageDecomposition::from_parts(t, u, v))
}

/// `i_{u*}`: the degree `-|u|` derivation with `u ↦ 1` and every other generator ↦ 0.
pub fn contract(table: &GeneratorTable, u: GenId, p: &Polynomial) -> Polynomial {
    let mut values = vec![Polynomial::zero(); table.len()];
    values[u] = Polynomial::one();
    apply_derivation(table, -(table.degree(u) as i64), &values, p)
}

/// Result of enlarging `V` until the maximality map is injective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Repair {
    pub model: SullivanModel,
    pub decomposition: TwoStageDecomposition,
    /// Repaired model → original, on generators.
    pub to_original: ModelMorphism,
    /// Original → repaired, on generators.
    pub from_original: ModelMorphism,
    pub passes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalityAnalysis {
    /// `(u, [i_{u*} d v for v in V])` for every `u` in `U`.
    pub l_matrix: Vec<(GenId, Vec<Polynomial>)>,
    /// Kernel vectors as combinations of `U` duals, reduced echelon per degree.
    pub k_basis: Vec<Vec<(GenId, Scalar)>>,
    pub maximal: bool,
    pub repair: Option<Repair>,
}

impl MaximalityAnalysis {
    pub fn report(&self) -> Report {
        let mut r = Report::new();
        r.push("maximal", self.maximal);
        r.push("dimK", self.k_basis.len());
        if let Some(rep) = &self.repair {
            r.push("repaired.dimU", rep.decomposition.u.len());
            r.push("repaired.dimV", rep.decomposition.r());
            let t = rep.model.table();
            for &v in &rep.decomposition.v {
                r.push(format!("repaired.d[{}]", t.name(v)), t.display(rep.model.differential(v)));
            }
        }
        r
    }
}

fn l_columns(m: &SullivanModel, decomp: &TwoStageDecomposition) -> Vec<(GenId, Vec<Polynomial>)> {
    let t = m.table();
    decomp
        .u
        .iter()
        .map(|&u| (u, decomp.v.iter().map(|&v| contract(t, u, m.differential(v))).collect()))
        .collect()
}

/// Kernel of `u* ↦ i_{u*} d|_V`, one degree of `U` at a time.
fn l_kernel(m: &SullivanModel, columns: &[(GenId, Vec<Polynomial>)]) -> Vec<Vec<(GenId, Scalar)>> {
    let t = m.table();
    let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (k, (u, _)) in columns.iter().enumerate() {
        by_degree.entry(t.degree(*u)).or_default().push(k);
    }
    let mut out = Vec::new();
    for group in by_degree.values() {
        let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
        let vectors: Vec<SparseVec> = group
            .iter()
            .map(|&k| {
                let mut v: SparseVec = Vec::new();
                for (slot, p) in columns[k].1.iter().enumerate() {
                    for (mono, c) in p.terms() {
                        let next = index.len();
                        let i = *index.entry((slot, mono.clone())).or_insert(next);
                        v.push((i, c.clone()));
                    }
                }
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect();
        let kernel = linalg::kernel(&vectors);
        if kernel.is_empty() {
            continue;
        }
        let dense: Vec<Vec<Scalar>> = kernel.iter().map(|k| linalg::to_dense(k, group.len())).collect();
        let (rows, _) = linalg::rref(dense);
        for row in rows {
            out.push(
                row.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (columns[group[j]].0, c))
                    .collect(),
            );
        }
    }
    out
}

/// One pass of the repair: `U₁ = K^⊥`, `V₁ = V ⊕ X^⊥`, written in new
/// generators that reuse the old names and ids.
fn repair_pass(
    m: &SullivanModel,
    decomp: &TwoStageDecomposition,
    k_basis: &[Vec<(GenId, Scalar)>],
) -> Result<(SullivanModel, TwoStageDecomposition, ModelMorphism, ModelMorphism), StructureError> {
    let t = m.table();
    // old generators as polynomials in the new ones, and conversely
    let mut old_in_new: Vec<Polynomial> = (0..m.len()).map(Polynomial::generator).collect();
    let mut new_in_old: Vec<Polynomial> = (0..m.len()).map(Polynomial::generator).collect();
    let mut freed = Vec::new();
    for kappa in k_basis {
        let pivot = kappa[0].0;
        freed.push(pivot);
        for (f, c) in &kappa[1..] {
            // y_f = u_f - c u_pivot, so u_f = y_f + c x_pivot
            new_in_old[*f].add_term(Monomial::generator(pivot), -c.clone());
            old_in_new[*f].add_term(Monomial::generator(pivot), c.clone());
        }
    }
    let to_original = ModelMorphism { values: new_in_old };
    let from_original = ModelMorphism { values: old_in_new };
    let differential: Vec<Polynomial> = (0..m.len())
        .map(|g| from_original.apply(t, &m.d(&to_original.values[g])))
        .collect();
    let repaired = SullivanModel::new(m.name(), t.clone(), differential)?;
    let u: Vec<GenId> = decomp.u.iter().copied().filter(|g| !freed.contains(g)).collect();
    let mut v = decomp.v.clone();
    v.extend(freed);
    let decomposition = TwoStageDecomposition::from_parts(t, u, v);
    Ok((repaired, decomposition, to_original, from_original))
}

fn compose(first: &ModelMorphism, second: &ModelMorphism, table: &GeneratorTable) -> ModelMorphism {
    ModelMorphism {
        values: first.values.iter().map(|p| second.apply(table, p)).collect(),
    }
}

pub fn maximality(m: &SullivanModel, decomp: &TwoStageDecomposition) -> Result<MaximalityAnalysis, StructureError> {
    let l_matrix = l_columns(m, decomp);
    let k_basis = l_kernel(m, &l_matrix);
    if k_basis.is_empty() {
        return Ok(MaximalityAnalysis {
            l_matrix,
            k_basis,
            maximal: true,
            repair: None,
        });
    }
    let t = m.table();
    let mut model = m.clone();
    let mut current = decomp.clone();
    let mut kernel = k_basis.clone();
    let mut to_original = ModelMorphism::identity(t);
    let mut from_original = ModelMorphism::identity(t);
    let mut passes = 0;
    while !kernel.is_empty() {
        let (next, next_decomp, to_prev, from_prev) = repair_pass(&model, &current, &kernel)?;
        to_original = compose(&to_prev, &to_original, t);
        from_original = compose(&from_original, &from_prev, t);
        model = next;
        current = next_decomp;
        passes += 1;
        kernel = l_kernel(&model, &l_columns(&model, &current));
    }
    to_original.check_chain_map(&model, m)?;
    from_original.check_chain_map(m, &model)?;
    Ok(MaximalityAnalysis {
        l_matrix,
        k_basis,
        maximal: false,
        repair: Some(Repair {
            model,
            decomposition: current,
            to_original,
            from_original,
            passes,
        }),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticBlockMatrix {
    /// One skew `p × p` matrix per generator of `V`, indexed by `U^odd`.
    pub blocks: Vec<Vec<Vec<Scalar>>>,
    pub p: usize,
    pub rank: usize,
    pub left_inverse_exists: bool,
}

impl QuadraticBlockMatrix {
    /// The stacked `rp × p` matrix.
    pub fn stacked(&self) -> Vec<Vec<Scalar>> {
        self.blocks.iter().flatten().cloned().collect()
    }

    /// A `p × rp` matrix `N` with `N M = I`, when one exists.
    pub fn left_inverse(&self) -> Option<Vec<Vec<Scalar>>> {
        if !self.left_inverse_exists {
            return None;
        }
        let m = self.stacked();
        let mut chosen: Vec<usize> = Vec::new();
        for i in 0..m.len() {
            let mut trial: Vec<Vec<Scalar>> = chosen.iter().map(|&k| m[k].clone()).collect();
            trial.push(m[i].clone());
            if linalg::dense_rank(&trial) == trial.len() {
                chosen.push(i);
            }
            if chosen.len() == self.p {
                break;
            }
        }
        let square: Vec<Vec<Scalar>> = chosen.iter().map(|&k| m[k].clone()).collect();
        let inv = linalg::inverse(&square)?;
        let mut n = vec![vec![Scalar::zero(); m.len()]; self.p];
        for (row, inv_row) in n.iter_mut().zip(&inv) {
            for (col, &k) in chosen.iter().enumerate() {
                row[k] = inv_row[col].clone();
            }
        }
        Some(n)
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new();
        r.push("skew.p", self.p);
        r.push("skew.r", self.blocks.len());
        r.push("skew.rank", self.rank);
        r.push("skew.left_inverse", self.left_inverse_exists);
        r
    }
}

pub fn is_quadratic(m: &SullivanModel, decomp: &TwoStageDecomposition) -> bool {
    decomp
        .v
        .iter()
        .all(|&v| m.differential(v).monomials().all(|mono| mono.word_length() == 2))
}

pub fn quadratic_block_matrix(
    m: &SullivanModel,
    decomp: &TwoStageDecomposition,
) -> Result<QuadraticBlockMatrix, StructureError> {
    let t = m.table();
    let p = decomp.p();
    let position: HashMap<GenId, usize> = decomp.u_odd.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut blocks = Vec::with_capacity(decomp.r());
    for &v in &decomp.v {
        let mut block = vec![vec![Scalar::zero(); p]; p];
        for (mono, c) in m.differential(v).terms() {
            if mono.word_length() != 2 {
                return Err(StructureError::NotQuadratic {
                    generator: t.name(v).to_string(),
                });
            }
            let gens: Vec<GenId> = mono.generators().collect();
            if let [a, b] = gens[..] {
                if let (Some(&i), Some(&j)) = (position.get(&a), position.get(&b)) {
                    block[i][j] += c;
                    block[j][i] -= c;
                }
            }
        }
        blocks.push(block);
    }
    let stacked: Vec<Vec<Scalar>> = blocks.iter().flatten().cloned().collect();
    let rank = linalg::dense_rank(&stacked);
    Ok(QuadraticBlockMatrix {
        blocks,
        p,
        rank,
        left_inverse_exists: rank == p,
    })
}

/// Witness parameters for the stable and separated hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StableSeparated {
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub u: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub pure: bool,
    pub odd_only: bool,
    pub quadratic_differential: bool,
    /// `U^even` is concentrated in one degree (vacuous when empty).
    pub u_even_single_degree: bool,
    /// Smallest `r ≥ 1` witnessing condition (A).
    pub condition_a: Option<u32>,
    /// Smallest `s ≥ 1` witnessing condition (B).
    pub condition_b: Option<u32>,
    pub stable_separated: Option<StableSeparated>,
    pub chi_pi: i64,
}

impl HypothesisReport {
    pub fn report(&self) -> Report {
        let mut r = Report::new();
        r.push("pure", self.pure);
        r.push("odd_only", self.odd_only);
        r.push("quadratic", self.quadratic_differential);
        r.push("u_even_single_degree", self.u_even_single_degree);
        r.push("condition_a", self.condition_a.is_some());
        r.push("condition_b", self.condition_b.is_some());
        r.push("stable_separated", self.stable_separated.is_some());
        r.push("chi_pi", self.chi_pi);
        r
    }
}

/// `X^i = 0` for `i ≤ n`.
fn connected(degrees: &[u32], n: i64) -> bool {
    degrees.iter().all(|&d| d as i64 > n)
}

/// `X^i = 0` for `i ≥ n`.
fn co_connected(degrees: &[u32], n: i64) -> bool {
    degrees.iter().all(|&d| (d as i64) < n)
}

pub fn hypothesis_check(m: &SullivanModel, decomp: &TwoStageDecomposition) -> HypothesisReport {
    let t = m.table();
    let degrees = |ids: &[GenId]| ids.iter().map(|&g| t.degree(g)).collect::<Vec<u32>>();
    let odd = degrees(&decomp.u_odd);
    let even = degrees(&decomp.u_even);
    let u_deg = degrees(&decomp.u);
    let v_deg = degrees(&decomp.v);
    let bound = t.generators().iter().map(|g| g.degree).max().unwrap_or(0) as i64 + 2;

    let condition_a = (1..=bound)
        .find(|&r| connected(&odd, 2 * r - 1) && co_connected(&even, 2 * r + 2))
        .map(|r| r as u32);
    let condition_b = (1..=bound)
        .find(|&s| co_connected(&odd, 2 * s + 1) && connected(&even, 4 * s - 4))
        .map(|s| s as u32);

    let odd_only = t.even_ids().is_empty();
    let mut stable_separated = None;
    if odd_only {
        'search: for r in (1..=bound).rev() {
            for s in r..=2 * r {
                if !(connected(&u_deg, r - 1) && co_connected(&u_deg, s + 1)) {
                    continue;
                }
                let t_par = v_deg.iter().map(|&d| d as i64).min().unwrap_or(s).max(s);
                let u_par = v_deg.iter().map(|&d| d as i64).max().unwrap_or(t_par).max(t_par);
                if u_par <= s + r && connected(&v_deg, t_par - 1) && co_connected(&v_deg, u_par + 1) {
                    stable_separated = Some(StableSeparated {
                        r: r as u32,
                        s: s as u32,
                        t: t_par as u32,
                        u: u_par as u32,
                    });
                    break 'search;
                }
            }
        }
    }

    let mut even_degrees = even.clone();
    even_degrees.dedup();
    HypothesisReport {
        pure: purity::is_pure(m),
        odd_only,
        quadratic_differential: is_quadratic(m, decomp),
        u_even_single_degree: even_degrees.len() <= 1,
        condition_a,
        condition_b,
        stable_separated,
        chi_pi: m.chi_pi(),
    }
}

/// `dim G_n`: duals of degree-`n` generators that extend to a degree `-n`
/// derivation `θ` with `dθ = (-1)^n θd`.
pub fn gottlieb_dim(m: &SullivanModel, n: u32) -> usize {
    let t = m.table();
    let sign = if n.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
    // unknowns: coefficient of monomial b in θ(h)
    let mut unknowns: Vec<(GenId, Monomial)> = Vec::new();
    for h in 0..m.len() {
        let deg = t.degree(h);
        if deg >= n {
            for b in t.basis((deg - n) as usize) {
                unknowns.push((h, b));
            }
        }
    }
    let mut index: HashMap<(GenId, Monomial), usize> = HashMap::new();
    let columns: Vec<SparseVec> = unknowns
        .iter()
        .map(|(h, b)| {
            let mut values = vec![Polynomial::zero(); m.len()];
            values[*h] = Polynomial::monomial(b.clone());
            let mut col: SparseVec = Vec::new();
            for g in 0..m.len() {
                let mut residual = apply_derivation(t, -(n as i64), &values, m.differential(g));
                residual = residual.scale(&-sign.clone());
                if g == *h {
                    residual.accumulate(&m.d(&Polynomial::monomial(b.clone())));
                }
                for (mono, c) in residual.terms() {
                    let next = index.len();
                    let i = *index.entry((g, mono.clone())).or_insert(next);
                    col.push((i, c.clone()));
                }
            }
            col.sort_by_key(|(i, _)| *i);
            col
        })
        .collect();
    let scalar_slots: Vec<usize> = unknowns
        .iter()
        .enumerate()
        .filter(|(_, (h, _))| t.degree(*h) == n)
        .map(|(k, _)| k)
        .collect();
    if scalar_slots.is_empty() {
        return 0;
    }
    let projected: Vec<SparseVec> = linalg::kernel(&columns)
        .into_iter()
        .map(|v| {
            v.into_iter()
                .filter_map(|(k, c)| scalar_slots.iter().position(|&s| s == k).map(|p| (p, c)))
                .collect()
        })
        .collect();
    linalg::rank(&projected)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GottliebReport {
    /// `dim G_n` for every generator degree `n`.
    pub dims: BTreeMap<u32, usize>,
    pub total: usize,
}

impl GottliebReport {
    pub fn report(&self) -> Report {
        let mut r = Report::new();
        for (n, d) in &self.dims {
            r.push(format!("gottlieb[{n}]"), d);
        }
        r.push("gottlieb.total", self.total);
        r
    }
}

pub fn gottlieb_report(m: &SullivanModel, exec: Execution) -> GottliebReport {
    let mut degrees: Vec<u32> = m.table().generators().iter().map(|g| g.degree).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let values = par::map(exec, &degrees, |&n| gottlieb_dim(m, n));
    let dims: BTreeMap<u32, usize> = degrees.into_iter().zip(values).collect();
    GottliebReport {
        total: dims.values().sum(),
        dims,
    }
}

/// Extension over a single odd cocycle `u0` and its Wang derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WangData {
    pub base: GenId,
    pub base_name: String,
    pub fibre: SullivanModel,
    /// Fibre generator → original generator.
    pub fibre_ids: Vec<GenId>,
    pub theta: Derivation,
    pub induced: InducedMap,
    pub dim_ker: usize,
    pub dim_coker: usize,
    pub total: usize,
    pub exact: bool,
    pub theta_squared_zero: bool,
}

impl WangData {
    pub fn report(&self) -> Report {
        let mut r = Report::new();
        r.push("wang.base", &self.base_name);
        r.push("wang.ker", self.dim_ker);
        r.push("wang.coker", self.dim_coker);
        r.push("wang.total", self.total);
        r.push("wang.exact", self.exact);
        r.push("wang.theta_squared_zero", self.theta_squared_zero);
        r
    }
}

pub fn wang(m: &SullivanModel, u0: GenId, opts: &CohomologyOptions) -> Result<WangData, StructureError> {
    let t = m.table();
    if !t.is_odd(u0) || !m.is_cocycle_generator(u0) {
        return Err(StructureError::BadWangBase(t.name(u0).to_string()));
    }
    let linear = Monomial::generator(u0);
    if m.differentials().iter().any(|p| !p.coefficient(&linear).is_zero()) {
        return Err(StructureError::LinearWangBase(t.name(u0).to_string()));
    }
    let keep: Vec<bool> = (0..m.len()).map(|g| g != u0).collect();
    let (fibre, map) = m.restrict(&keep);
    let fibre_ids: Vec<GenId> = (0..m.len()).filter(|&g| g != u0).collect();
    let u0_degree = t.degree(u0) as usize;
    let theta_values: Vec<Polynomial> = fibre_ids
        .iter()
        .map(|&g| {
            let mut value = Polynomial::zero();
            for (mono, c) in m.differential(g).terms() {
                if !mono.contains(u0) {
                    continue;
                }
                let prefix: usize = mono
                    .factors()
                    .iter()
                    .take_while(|(h, _)| (*h as GenId) < u0)
                    .map(|&(h, e)| t.degree(h as GenId) as usize * e as usize)
                    .sum();
                let rest: Vec<(GenId, u32)> = mono
                    .factors()
                    .iter()
                    .filter(|(h, _)| *h as GenId != u0)
                    .map(|&(h, e)| (map[h as GenId].expect("kept generator"), e))
                    .collect();
                let sign_negative = (prefix * u0_degree) % 2 == 1;
                value.add_term(Monomial::from_sorted(&rest), if sign_negative { -c.clone() } else { c.clone() });
            }
            value
        })
        .collect();
    let theta = Derivation::new(fibre.table(), 1 - t.degree(u0) as i64, theta_values)?;
    let fibre_evidence = purity::is_elliptic(&fibre)?;
    if !fibre_evidence.elliptic {
        return Err(StructureError::FibreNotElliptic);
    }
    let top = fibre.formal_dimension(&fibre_evidence)?;
    let induced = cohomology::induced_map_on_h(&fibre, &theta, top, opts)?;
    let evidence = purity::is_elliptic(m)?;
    let total = cohomology::full_betti_table(m, &evidence, opts)?.total;
    let dim_ker = induced.total_kernel();
    let dim_coker = induced.total_cokernel();
    Ok(WangData {
        base: u0,
        base_name: t.name(u0).to_string(),
        theta_squared_zero: induced.squares_to_zero(),
        exact: total == dim_ker + dim_coker,
        fibre,
        fibre_ids,
        theta,
        induced,
        dim_ker,
        dim_coker,
        total,
    })
}
