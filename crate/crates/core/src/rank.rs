//! Rational toral rank: extensions over degree-2 bases, certificates,
//! the subset search for lower bounds and the bounds aggregator.
//!
//! An [`ExtensionSpec`] describes `(Λ(a_1..a_n) ⊗ ΛW, D)`. Its generator
//! table lists the base generators first, then the fibre generators in
//! their original order. Text form:
//!
//! ```text
//! model ex
//! gen u1 : 3
//! gen u2 : 3
//! gen v : 5
//! d v = u1*u2
//! base a : 2
//! D v = u1*u2 + a^3
//! ```
//!
//! Generators without a `D` line keep their fibre differential.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, GenId, GeneratorTable, Monomial, Polynomial};
use crate::cohomology::{self, CohomologyError, CohomologyOptions};
use crate::format::{self, build_model, parse_statements, resolve_differentials, FormatError, Statement};
use crate::model::{topological_order, ModelError, SullivanModel};
use crate::par::{self, Execution};
use crate::purity::{self, EllipticityReport, PurityError};
use crate::report::Report;
use crate::structure::{self, StructureError, TwoStageDecomposition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RankError {
    #[error("model `{0}` is not elliptic")]
    NotElliptic(String),
    #[error("`{0}` has even degree and cannot carry a base perturbation")]
    EvenGenerator(String),
    #[error("certificate `{0}` is for a different model")]
    ForeignCertificate(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Purity(#[from] PurityError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSpec {
    fibre: SullivanModel,
    base: Vec<(String, u32)>,
    table: GeneratorTable,
    /// Total differential where it differs from the lifted fibre one, by total id.
    perturbed: BTreeMap<GenId, Polynomial>,
}

impl ExtensionSpec {
    pub fn new(fibre: SullivanModel, base: Vec<(String, u32)>) -> Result<Self, RankError> {
        let mut table = GeneratorTable::new();
        for (name, degree) in &base {
            table.push(name, *degree as i64)?;
        }
        for g in fibre.table().generators() {
            table.push(&g.name, g.degree as i64)?;
        }
        Ok(ExtensionSpec {
            fibre,
            base,
            table,
            perturbed: BTreeMap::new(),
        })
    }

    /// Sets `D g` for a total generator id; the value is over [`Self::table`].
    pub fn set_differential(&mut self, g: GenId, value: Polynomial) -> Result<(), RankError> {
        if g >= self.table.len() {
            return Err(AlgebraError::ForeignGenerator { id: g, len: self.table.len() }.into());
        }
        self.table.check_polynomial(&value)?;
        if value == self.lifted(g) {
            self.perturbed.remove(&g);
        } else {
            self.perturbed.insert(g, value);
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        self.fibre.name()
    }

    pub fn fibre(&self) -> &SullivanModel {
        &self.fibre
    }

    pub fn base(&self) -> &[(String, u32)] {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    /// Total id of a fibre generator.
    pub fn total_id(&self, fibre_id: GenId) -> GenId {
        fibre_id + self.n()
    }

    pub fn lift(&self, p: &Polynomial) -> Polynomial {
        let n = self.n();
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            out.add_term(m.reindex_monotone(|g| g + n), c.clone());
        }
        out
    }

    fn lifted(&self, g: GenId) -> Polynomial {
        if g < self.n() {
            Polynomial::zero()
        } else {
            self.lift(self.fibre.differential(g - self.n()))
        }
    }

    pub fn differential(&self, g: GenId) -> Polynomial {
        self.perturbed.get(&g).cloned().unwrap_or_else(|| self.lifted(g))
    }

    pub fn total(&self) -> Result<SullivanModel, ModelError> {
        let values = (0..self.table.len()).map(|g| self.differential(g)).collect();
        SullivanModel::new(self.name(), self.table.clone(), values)
    }

    /// Drops every term that involves a base generator.
    pub fn reduce_mod_base(&self, p: &Polynomial) -> Polynomial {
        let n = self.n();
        p.filter(|m| m.generators().all(|g| g >= n))
    }
}

pub fn parse_extension(text: &str) -> Result<ExtensionSpec, RankError> {
    let mut name = String::new();
    let mut fibre_table = GeneratorTable::new();
    let mut fibre_diffs = Vec::new();
    let mut total_diffs = Vec::new();
    let mut base = Vec::new();
    for s in parse_statements(text)? {
        match s {
            Statement::Model { name: n } => name = n,
            Statement::Gen { name, degree, line } => {
                fibre_table
                    .push(&name, degree)
                    .map_err(|source| FormatError::Algebra { line, source })?;
            }
            Statement::Base { name, degree, line } => {
                if degree <= 0 {
                    return Err(FormatError::Algebra {
                        line,
                        source: AlgebraError::NonPositiveDegree { name, degree },
                    }
                    .into());
                }
                base.push((name, degree as u32));
            }
            Statement::Diff { name, column, poly, total } => {
                if total {
                    total_diffs.push((name, column, poly));
                } else {
                    fibre_diffs.push((name, column, poly));
                }
            }
        }
    }
    let values = resolve_differentials(&fibre_table, &fibre_diffs)?;
    let fibre = build_model(name, fibre_table, values)?;
    let mut spec = ExtensionSpec::new(fibre, base)?;
    let table = spec.table.clone();
    for (g, (_, p)) in resolve_differentials(&table, &total_diffs)? {
        spec.set_differential(g, p)?;
    }
    Ok(spec)
}

pub fn print_extension(spec: &ExtensionSpec) -> String {
    let mut out = format::print_model(&spec.fibre);
    for (name, degree) in &spec.base {
        out.push_str(&format!("base {name} : {degree}\n"));
    }
    for (g, p) in &spec.perturbed {
        out.push_str(&format!(
            "D {} = {}\n",
            spec.table.name(*g),
            format::print_polynomial(&spec.table, p)
        ));
    }
    out
}

impl fmt::Display for ExtensionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_extension(self))
    }
}

/// One verification step and its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub spec: ExtensionSpec,
    pub checks: Vec<Check>,
    pub ellipticity: Option<EllipticityReport>,
    /// `Some(n)` when every check passed: `rk0 ≥ n`.
    pub rank: Option<usize>,
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        self.rank.is_some()
    }

    /// Re-verifies from the serialized text.
    pub fn recheck(&self) -> Result<bool, RankError> {
        let spec = parse_extension(&print_extension(&self.spec))?;
        let again = verify_extension(&spec);
        Ok(again.rank == self.rank && spec == self.spec)
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new();
        for c in &self.checks {
            r.push(format!("check.{}", c.name), c.passed);
        }
        r.push("certificate.n", self.spec.n());
        r.push("certificate.valid", self.is_valid());
        r
    }
}

fn check(name: &'static str, failures: Vec<String>) -> Check {
    Check {
        name,
        passed: failures.is_empty(),
        detail: failures.join("; "),
    }
}

/// Runs the base, restriction, `D² = 0`, ordering and ellipticity checks.
pub fn verify_extension(spec: &ExtensionSpec) -> Certificate {
    let t = &spec.table;
    let n = spec.n();
    let mut checks = Vec::new();

    let mut failures = Vec::new();
    for (i, (name, degree)) in spec.base.iter().enumerate() {
        if *degree != 2 {
            failures.push(format!("base generator {name} has degree {degree}"));
        }
        let d = spec.differential(i);
        if !d.is_zero() {
            failures.push(format!("D{name} = {}", t.display(&d)));
        }
    }
    let total = match spec.total() {
        Ok(m) => Some(m),
        Err(e) => {
            failures.push(e.to_string());
            None
        }
    };
    checks.push(check("base", failures));

    let restriction: Vec<String> = (n..t.len())
        .filter_map(|g| {
            let residual = &spec.reduce_mod_base(&spec.differential(g)) - &spec.lift(spec.fibre.differential(g - n));
            (!residual.is_zero()).then(|| format!("D{} - d{} = {} mod base", t.name(g), t.name(g), t.display(&residual)))
        })
        .collect();
    checks.push(check("restriction", restriction));

    let Some(total) = total else {
        return Certificate {
            spec: spec.clone(),
            checks,
            ellipticity: None,
            rank: None,
        };
    };

    let structure = total.check();
    checks.push(check(
        "d_squared",
        structure
            .d_squared_failures
            .iter()
            .map(|(g, p)| format!("D²{} = {}", t.name(*g), t.display(p)))
            .collect(),
    ));

    let deps: Vec<Vec<GenId>> = (n..t.len())
        .map(|g| {
            spec.differential(g)
                .generators_used()
                .into_iter()
                .filter(|&h| h >= n)
                .map(|h| h - n)
                .collect()
        })
        .collect();
    let ordering = match topological_order(&deps) {
        Some(_) => Vec::new(),
        None => vec!["fibre generators admit no triangular ordering".to_string()],
    };
    checks.push(check("ks_order", ordering));

    let ellipticity = purity::is_elliptic(&total).ok();
    let elliptic = ellipticity.as_ref().is_some_and(|e| e.elliptic);
    checks.push(check(
        "elliptic",
        if elliptic {
            Vec::new()
        } else {
            vec!["pure quotient is infinite dimensional".to_string()]
        },
    ));

    let rank = checks.iter().all(|c| c.passed).then_some(n);
    Certificate {
        spec: spec.clone(),
        checks,
        ellipticity,
        rank,
    }
}

fn fresh_base_names(table: &GeneratorTable, n: usize) -> Vec<String> {
    (1..=n)
        .map(|i| {
            let mut name = format!("a{i}");
            while table.id(&name).is_some() {
                name.push('\'');
            }
            name
        })
        .collect()
}

/// `D v_i = d v_i + a_i^{(|v_i|+1)/2}` for `v_i` in `vpp`, `D = d` elsewhere.
pub fn construct_lemma_extension(m: &SullivanModel, vpp: &[GenId]) -> Result<ExtensionSpec, RankError> {
    let t = m.table();
    if let Some(&v) = vpp.iter().find(|&&v| !t.is_odd(v)) {
        return Err(RankError::EvenGenerator(t.name(v).to_string()));
    }
    let names = fresh_base_names(t, vpp.len());
    let mut spec = ExtensionSpec::new(m.clone(), names.into_iter().map(|n| (n, 2)).collect())?;
    for (i, &v) in vpp.iter().enumerate() {
        let g = spec.total_id(v);
        let mut value = spec.differential(g);
        value.add_term(Monomial::power(i, t.degree(v).div_ceil(2)), crate::algebra::scalar(1));
        spec.set_differential(g, value)?;
    }
    Ok(spec)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundSearch {
    pub best: Certificate,
    /// Fibre generators that received a base perturbation.
    pub chosen: Vec<GenId>,
    pub tried: usize,
    pub partial: bool,
    /// `dim V - dim U^even` when the lemma's hypotheses hold.
    pub expected: Option<usize>,
    /// Lemma hypotheses hold but no certificate of the expected size was found.
    pub defect: bool,
}

fn combinations(items: &[GenId], k: usize) -> Vec<Vec<GenId>> {
    fn rec(items: &[GenId], k: usize, start: usize, cur: &mut Vec<GenId>, out: &mut Vec<Vec<GenId>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Tries lemma extensions over subsets of the odd part of `V`, largest
/// first and lexicographic within a size; `budget` bounds the number of
/// nonempty candidates.
pub fn search_lower_bound(
    m: &SullivanModel,
    decomp: &TwoStageDecomposition,
    budget: usize,
    exec: Execution,
) -> Result<LowerBoundSearch, RankError> {
    let t = m.table();
    let odd_v: Vec<GenId> = decomp.v.iter().copied().filter(|&v| t.is_odd(v)).collect();
    let hyp = structure::hypothesis_check(m, decomp);
    let elliptic = purity::is_elliptic(m)?.elliptic;
    let expected = (elliptic && decomp.v_odd && hyp.u_even_single_degree)
        .then(|| decomp.r().saturating_sub(decomp.q()));

    let mut tried = 0;
    let mut partial = false;
    let mut found: Option<(Vec<GenId>, Certificate)> = None;
    'sizes: for k in (1..=odd_v.len()).rev() {
        let all = combinations(&odd_v, k);
        let mut start = 0;
        while start < all.len() {
            let room = budget - tried;
            if room == 0 {
                partial = true;
                break 'sizes;
            }
            let batch = &all[start..all.len().min(start + room)];
            let results: Vec<Result<Certificate, RankError>> = par::map(exec, batch, |subset| {
                Ok(verify_extension(&construct_lemma_extension(m, subset)?))
            });
            tried += batch.len();
            for (subset, cert) in batch.iter().zip(results) {
                let cert = cert?;
                if cert.is_valid() {
                    found = Some((subset.clone(), cert));
                    break 'sizes;
                }
            }
            start += batch.len();
        }
    }
    let (chosen, best) = match found {
        Some(f) => f,
        None => (Vec::new(), verify_extension(&construct_lemma_extension(m, &[])?)),
    };
    let size = best.rank.unwrap_or(0);
    Ok(LowerBoundSearch {
        defect: !partial && expected.is_some_and(|e| size < e),
        best,
        chosen,
        tried,
        partial,
        expected,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub value: usize,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrcVerdict {
    pub total: usize,
    pub exponent: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankBounds {
    pub lower: Bound,
    pub upper_chi: usize,
    pub upper_thm: Option<Bound>,
    pub upper: usize,
    pub exact: bool,
    /// Whether an exact-rank corollary applies to the (maximal) decomposition.
    pub corollary: Option<String>,
    pub dim_v_minus_dim_u_even: Option<i64>,
    pub two_stage: bool,
    pub maximal: Option<bool>,
    pub search: Option<LowerBoundSearch>,
    pub trc: TrcVerdict,
    pub notes: Vec<String>,
}

impl RankBounds {
    pub fn consistent(&self) -> bool {
        self.lower.value <= self.upper
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new();
        r.push("rk0.lower", self.lower.value);
        r.push("rk0.upper", self.upper);
        r.push("rk0.exact", self.exact);
        r.push("rk0.upper_chi", self.upper_chi);
        r.push(
            "rk0.upper_thm",
            self.upper_thm.as_ref().map_or("none".to_string(), |b| b.value.to_string()),
        );
        if let Some(d) = self.dim_v_minus_dim_u_even {
            r.push("rk0.dimV_minus_dimU_even", d);
        }
        r.push("trc.lhs", self.trc.total);
        r.push("trc.rhs", format!("2^{}", self.trc.exponent));
        r.push("trc.holds", self.trc.holds);
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsOptions {
    pub budget: usize,
    pub cohomology: CohomologyOptions,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        BoundsOptions {
            budget: 4096,
            cohomology: CohomologyOptions::default(),
        }
    }
}

/// Aggregates the Euler characteristic bound, theorem bounds whose
/// hypotheses are machine-checked, searched and supplied certificates, and
/// the toral rank conjecture inequality.
pub fn rank_bounds(
    m: &SullivanModel,
    certificates: &[ExtensionSpec],
    opts: &BoundsOptions,
) -> Result<RankBounds, RankError> {
    let evidence = purity::is_elliptic(m)?;
    if !evidence.elliptic {
        return Err(RankError::NotElliptic(m.name().to_string()));
    }
    let upper_chi = (-m.chi_pi()).max(0) as usize;
    let mut notes = Vec::new();
    let mut lower = Bound {
        value: 0,
        source: "trivial extension".to_string(),
    };
    let mut upper_thm: Option<Bound> = None;
    let mut corollary = None;
    let mut search = None;
    let mut maximal = None;
    let mut dim_v_minus_dim_u_even = None;

    let split = structure::two_stage_split(m);
    let two_stage = split.is_ok();
    if let Ok(decomp) = split {
        let analysis = structure::maximality(m, &decomp)?;
        maximal = Some(analysis.maximal);
        let (model, decomp) = match analysis.repair {
            Some(rep) => {
                notes.push(format!("V enlarged to dimension {} by the maximality repair", rep.decomposition.r()));
                (rep.model, rep.decomposition)
            }
            None => (m.clone(), decomp),
        };
        let hyp = structure::hypothesis_check(&model, &decomp);
        let dim_v = decomp.r();
        let dim_u_even = decomp.q();
        dim_v_minus_dim_u_even = Some(dim_v as i64 - dim_u_even as i64);
        let simply_connected = model.table().generators().iter().all(|g| g.degree >= 2);
        if !simply_connected {
            notes.push("generators of degree 1: theorem bounds need a simply connected model".to_string());
        }
        let mut candidates = Vec::new();
        if simply_connected && decomp.v_odd && hyp.quadratic_differential && (hyp.condition_a.is_some() || hyp.condition_b.is_some()) {
            let which = if hyp.condition_a.is_some() { "A" } else { "B" };
            candidates.push(Bound {
                value: dim_v.saturating_sub(dim_u_even),
                source: format!("two-stage even and odd theorem, condition ({which})"),
            });
            if hyp.u_even_single_degree {
                corollary = Some("quadratic, connectivity condition and U^even in one degree".to_string());
            }
        }
        if simply_connected && hyp.odd_only && hyp.stable_separated.is_some() {
            candidates.push(Bound {
                value: dim_v,
                source: "stable and separated theorem".to_string(),
            });
            corollary = Some("odd generators only, stable and separated".to_string());
        }
        upper_thm = candidates.into_iter().min_by_key(|b| b.value);

        if decomp.v_odd {
            let s = search_lower_bound(&model, &decomp, opts.budget, opts.cohomology.execution)?;
            if let Some(n) = s.best.rank {
                if n > lower.value {
                    lower = Bound {
                        value: n,
                        source: "lemma extension found by subset search".to_string(),
                    };
                }
            }
            if s.defect {
                notes.push("lemma hypotheses hold but the search fell short of dim V - dim U^even".to_string());
            }
            if s.partial {
                notes.push(format!("search budget exhausted after {} candidates", s.tried));
            }
            search = Some(s);
        }
    }

    for spec in certificates {
        if spec.fibre().fingerprint() != m.fingerprint() {
            return Err(RankError::ForeignCertificate(spec.name().to_string()));
        }
        let cert = verify_extension(spec);
        match cert.rank {
            Some(n) if n > lower.value => {
                lower = Bound {
                    value: n,
                    source: format!("supplied extension `{}`", spec.name()),
                }
            }
            Some(_) => {}
            None => notes.push(format!("supplied extension `{}` failed verification", spec.name())),
        }
    }

    let upper = upper_thm.as_ref().map_or(upper_chi, |b| b.value.min(upper_chi));
    if let Some(d) = dim_v_minus_dim_u_even {
        if (lower.value as i64) > d {
            notes.push(format!(
                "certified lower bound {} exceeds dim V - dim U^even = {d}",
                lower.value
            ));
        }
    }
    if lower.value < upper {
        notes.push(format!("gap: {} <= rk0 <= {upper}", lower.value));
    }
    if lower.value > upper {
        notes.push("inconsistent bounds: lower exceeds upper".to_string());
    }

    let total = cohomology::full_betti_table(m, &evidence, &opts.cohomology)?.total;
    let holds = lower.value < usize::BITS as usize && total >= 1usize << lower.value;
    let lower_value = lower.value;
    Ok(RankBounds {
        exact: lower.value == upper,
        lower,
        upper_chi,
        upper_thm,
        upper,
        corollary,
        dim_v_minus_dim_u_even,
        two_stage,
        maximal,
        search,
        trc: TrcVerdict {
            total,
            exponent: lower_value,
            holds,
        },
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_model;

    fn m2() -> SullivanModel {
        parse_model("model M2; gen u1:3; gen u2:3; gen v12:5; d v12 = u1*u2").unwrap()
    }

    #[test]
    fn lemma_extension_of_m2() {
        let m = m2();
        let spec = construct_lemma_extension(&m, &[2]).unwrap();
        assert_eq!(
            print_extension(&spec),
            "model M2\ngen u1 : 3\ngen u2 : 3\ngen v12 : 5\nd v12 = u1*u2\nbase a1 : 2\nD v12 = a1^3 + u1*u2\n"
        );
        let cert = verify_extension(&spec);
        assert_eq!(cert.rank, Some(1));
        assert!(cert.recheck().unwrap());
    }

    #[test]
    fn lemma_rejects_even_generators() {
        let m = parse_model("gen w:2; gen v:3; d v = w^2").unwrap();
        assert!(matches!(construct_lemma_extension(&m, &[0]), Err(RankError::EvenGenerator(_))));
    }

    #[test]
    fn trivial_extension_certifies_zero() {
        let m = m2();
        let cert = verify_extension(&construct_lemma_extension(&m, &[]).unwrap());
        assert_eq!(cert.rank, Some(0));
    }

    #[test]
    fn failing_checks_are_reported() {
        let text = "gen u1:3; gen u2:3; gen v:5; base a:4; D v = u1*u2\n";
        let spec = parse_extension(text).unwrap();
        let cert = verify_extension(&spec);
        assert!(!cert.is_valid());
        let failed: Vec<&str> = cert.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert_eq!(failed, vec!["base", "restriction", "elliptic"]);
    }

    #[test]
    fn extension_round_trip() {
        let text = "model t\ngen u1 : 3\ngen u2 : 3\ngen v : 5\nd v = u1*u2\nbase a : 2\nD u2 = a^2\nD v = a^3 + u1*u2\n";
        let spec = parse_extension(text).unwrap();
        assert_eq!(print_extension(&spec), text);
        let cert = verify_extension(&spec);
        assert!(cert.checks.iter().any(|c| c.name == "d_squared" && !c.passed));
    }

    #[test]
    fn search_on_m2() {
        let m = m2();
        let d = structure::two_stage_split(&m).unwrap();
        let s = search_lower_bound(&m, &d, 100, Execution::Sequential).unwrap();
        assert_eq!(s.best.rank, Some(1));
        assert_eq!(s.expected, Some(1));
        assert!(!s.defect && !s.partial);
    }

    #[test]
    fn bounds_of_m2() {
        let b = rank_bounds(&m2(), &[], &BoundsOptions::default()).unwrap();
        assert_eq!(b.lower.value, 1);
        assert_eq!(b.upper, 1);
        assert!(b.exact);
        assert!(b.trc.holds);
        assert_eq!(b.report().get("trc.rhs"), Some("2^1"));
    }
}
