//! Sullivan models, derivations and morphisms.
//!
//! A [`SullivanModel`] stores its differential on generators only; the
//! extension to the whole free algebra is recomputed on demand through the
//! Leibniz rule.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BinaryHeap};
use std::cmp::Reverse;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::algebra::{AlgebraError, GenId, GeneratorTable, Monomial, Polynomial, Scalar};
use crate::purity::EllipticityReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("differential of `{generator}` must be homogeneous of degree {expected}, found {found}")]
    Inhomogeneous {
        generator: String,
        expected: i64,
        found: String,
    },
    #[error("expected {expected} differential values, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("ellipticity evidence is required: {0}")]
    EllipticityRequired(String),
    #[error("morphism does not commute with differentials on `{generator}`")]
    NotAChainMap { generator: String },
    #[error("morphism does not preserve the degree of `{generator}`")]
    DegreeMismatch { generator: String },
}

/// Degree-`degree` derivation determined by its values on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub degree: i64,
    pub values: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(table: &GeneratorTable, degree: i64, values: Vec<Polynomial>) -> Result<Self, ModelError> {
        if values.len() != table.len() {
            return Err(ModelError::WrongArity {
                expected: table.len(),
                found: values.len(),
            });
        }
        for (g, v) in values.iter().enumerate() {
            table.check_polynomial(v)?;
            check_homogeneous(table, g, v, table.degree(g) as i64 + degree)?;
        }
        Ok(Derivation { degree, values })
    }

    pub fn zero(table: &GeneratorTable, degree: i64) -> Self {
        Derivation {
            degree,
            values: vec![Polynomial::zero(); table.len()],
        }
    }

    pub fn apply(&self, table: &GeneratorTable, p: &Polynomial) -> Polynomial {
        apply_derivation(table, self.degree, &self.values, p)
    }
}

fn check_homogeneous(
    table: &GeneratorTable,
    g: GenId,
    value: &Polynomial,
    expected: i64,
) -> Result<(), ModelError> {
    if value.is_zero() {
        return Ok(());
    }
    match table.homogeneous_degree(value) {
        Some(d) if d as i64 == expected => Ok(()),
        found => Err(ModelError::Inhomogeneous {
            generator: table.name(g).to_string(),
            expected,
            found: found.map_or_else(|| "mixed degrees".to_string(), |d| d.to_string()),
        }),
    }
}

/// Leibniz extension of generator values with Koszul signs:
/// `θ(xy) = θ(x)y + (-1)^(|θ||x|) x θ(y)`.
pub fn apply_derivation(
    table: &GeneratorTable,
    degree: i64,
    values: &[Polynomial],
    p: &Polynomial,
) -> Polynomial {
    let mut out = Polynomial::zero();
    let odd_derivation = degree.rem_euclid(2) == 1;
    for (m, c) in p.terms() {
        let factors = m.factors();
        let mut prefix_degree = 0usize;
        for k in 0..factors.len() {
            let (g, e) = factors[k];
            let g = g as GenId;
            let value = &values[g];
            if !value.is_zero() {
                let prefix = Monomial::from_sorted(
                    &factors[..k]
                        .iter()
                        .map(|&(h, f)| (h as GenId, f))
                        .collect::<Vec<_>>(),
                );
                let mut rest: Vec<(GenId, u32)> = Vec::with_capacity(factors.len());
                if e > 1 {
                    rest.push((g, e - 1));
                }
                rest.extend(factors[k + 1..].iter().map(|&(h, f)| (h as GenId, f)));
                let suffix = Monomial::from_sorted(&rest);
                let negative = odd_derivation && prefix_degree % 2 == 1;
                let mut coef = c * Scalar::from_integer(e.into());
                if negative {
                    coef = -coef;
                }
                let left = table.mul(&Polynomial::term(coef, prefix), value);
                let term = table.mul(&left, &Polynomial::monomial(suffix));
                out.accumulate(&term);
            }
            prefix_degree += table.degree(g) as usize * e as usize;
        }
    }
    out
}

/// Algebra map given on generators; values live in the target algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelMorphism {
    pub values: Vec<Polynomial>,
}

impl ModelMorphism {
    pub fn identity(table: &GeneratorTable) -> Self {
        ModelMorphism {
            values: (0..table.len()).map(Polynomial::generator).collect(),
        }
    }

    pub fn apply(&self, target: &GeneratorTable, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let mut acc = Polynomial::constant(c.clone());
            for &(g, e) in m.factors() {
                for _ in 0..e {
                    acc = target.mul(&acc, &self.values[g as GenId]);
                }
            }
            out.accumulate(&acc);
        }
        out
    }

    /// Checks degree preservation and `φ∘d = d∘φ` on every generator.
    pub fn check_chain_map(&self, source: &SullivanModel, target: &SullivanModel) -> Result<(), ModelError> {
        if self.values.len() != source.table().len() {
            return Err(ModelError::WrongArity {
                expected: source.table().len(),
                found: self.values.len(),
            });
        }
        for g in 0..source.table().len() {
            let name = source.table().name(g).to_string();
            let v = &self.values[g];
            if !v.is_zero() && target.table().homogeneous_degree(v) != Some(source.table().degree(g) as usize) {
                return Err(ModelError::DegreeMismatch { generator: name });
            }
            let lhs = self.apply(target.table(), source.differential(g));
            let rhs = target.d(v);
            if lhs != rhs {
                return Err(ModelError::NotAChainMap { generator: name });
            }
        }
        Ok(())
    }
}

/// Result of the structural checks on a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub d_squared_zero: bool,
    /// Generators with `d(d g) != 0`, with the residual.
    pub d_squared_failures: Vec<(GenId, Polynomial)>,
    pub minimal: bool,
    /// Generators whose differential has a linear term.
    pub linear_terms: Vec<GenId>,
    pub nilpotent: bool,
    pub witness_order: Option<Vec<GenId>>,
}

/// A free graded-commutative algebra with a differential given on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SullivanModel {
    name: String,
    table: GeneratorTable,
    differential: Vec<Polynomial>,
}

impl SullivanModel {
    pub fn new(name: impl Into<String>, table: GeneratorTable, differential: Vec<Polynomial>) -> Result<Self, ModelError> {
        if differential.len() != table.len() {
            return Err(ModelError::WrongArity {
                expected: table.len(),
                found: differential.len(),
            });
        }
        for (g, v) in differential.iter().enumerate() {
            table.check_polynomial(v)?;
            check_homogeneous(&table, g, v, table.degree(g) as i64 + 1)?;
        }
        Ok(SullivanModel {
            name: name.into(),
            table,
            differential,
        })
    }

    pub fn from_map(
        name: impl Into<String>,
        table: GeneratorTable,
        differential: BTreeMap<GenId, Polynomial>,
    ) -> Result<Self, ModelError> {
        let mut values = vec![Polynomial::zero(); table.len()];
        for (g, p) in differential {
            if g >= table.len() {
                return Err(AlgebraError::ForeignGenerator { id: g, len: table.len() }.into());
            }
            values[g] = p;
        }
        Self::new(name, table, values)
    }

    pub fn empty() -> Self {
        SullivanModel {
            name: String::new(),
            table: GeneratorTable::new(),
            differential: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn differential(&self, g: GenId) -> &Polynomial {
        &self.differential[g]
    }

    pub fn differentials(&self) -> &[Polynomial] {
        &self.differential
    }

    pub fn generator(&self, name: &str) -> Option<GenId> {
        self.table.id(name)
    }

    pub fn as_derivation(&self) -> Derivation {
        Derivation {
            degree: 1,
            values: self.differential.clone(),
        }
    }

    /// `d` extended to the whole algebra.
    pub fn d(&self, p: &Polynomial) -> Polynomial {
        apply_derivation(&self.table, 1, &self.differential, p)
    }

    pub fn is_cocycle_generator(&self, g: GenId) -> bool {
        self.differential[g].is_zero()
    }

    pub fn check(&self) -> StructureReport {
        let mut failures = Vec::new();
        for g in 0..self.len() {
            let dd = self.d(&self.differential[g]);
            if !dd.is_zero() {
                failures.push((g, dd));
            }
        }
        let linear_terms: Vec<GenId> = (0..self.len())
            .filter(|&g| self.differential[g].monomials().any(|m| m.word_length() == 1))
            .collect();
        let witness_order = self.nilpotence_order();
        StructureReport {
            d_squared_zero: failures.is_empty(),
            d_squared_failures: failures,
            minimal: linear_terms.is_empty(),
            linear_terms,
            nilpotent: witness_order.is_some(),
            witness_order,
        }
    }

    /// Ordering with `d w_i ∈ Λ(w_1..w_{i-1})`, smallest ready id first.
    pub fn nilpotence_order(&self) -> Option<Vec<GenId>> {
        let deps: Vec<Vec<GenId>> = self.differential.iter().map(|p| p.generators_used()).collect();
        topological_order(&deps)
    }

    pub fn chi_pi(&self) -> i64 {
        let even = self.table.even_ids().len() as i64;
        let odd = self.table.odd_ids().len() as i64;
        even - odd
    }

    /// `Σ_odd |w| - Σ_even (|w| - 1)`, without any ellipticity check.
    pub fn formal_dimension_unchecked(&self) -> i64 {
        self.table
            .generators()
            .iter()
            .map(|g| {
                if g.is_odd() {
                    g.degree as i64
                } else {
                    -(g.degree as i64 - 1)
                }
            })
            .sum()
    }

    pub fn formal_dimension(&self, evidence: &EllipticityReport) -> Result<usize, ModelError> {
        if evidence.fingerprint != self.fingerprint() {
            return Err(ModelError::EllipticityRequired(
                "the report was computed for a different model".into(),
            ));
        }
        if !evidence.elliptic {
            return Err(ModelError::EllipticityRequired(format!(
                "model `{}` is not elliptic",
                self.name
            )));
        }
        Ok(self.formal_dimension_unchecked().max(0) as usize)
    }

    /// Hash of the generator table and differential, ignoring the name.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.table.generators().hash(&mut h);
        self.differential.hash(&mut h);
        h.finish()
    }

    /// Tensor product; colliding names of `other` get a `'` suffix until unique.
    pub fn tensor(&self, other: &SullivanModel) -> SullivanModel {
        let mut table = self.table.clone();
        for g in other.table.generators() {
            let mut name = g.name.clone();
            while table.id(&name).is_some() || (name != g.name && other.table.id(&name).is_some()) {
                name.push('\'');
            }
            table
                .push(&name, g.degree as i64)
                .expect("fresh name with a valid degree");
        }
        let offset = self.len();
        let mut differential = self.differential.clone();
        for p in &other.differential {
            let mut q = Polynomial::zero();
            for (m, c) in p.terms() {
                q.add_term(m.reindex_monotone(|g| g + offset), c.clone());
            }
            differential.push(q);
        }
        let name = match (self.name.is_empty(), other.name.is_empty()) {
            (true, _) => other.name.clone(),
            (_, true) => self.name.clone(),
            _ => format!("{}x{}", self.name, other.name),
        };
        SullivanModel {
            name,
            table,
            differential,
        }
    }

    /// Submodel on the generators for which `keep` holds, with the other
    /// generators set to zero in every differential.
    pub fn restrict(&self, keep: &[bool]) -> (SullivanModel, Vec<Option<GenId>>) {
        let mut table = GeneratorTable::new();
        let mut map = vec![None; self.len()];
        for g in 0..self.len() {
            if keep[g] {
                map[g] = Some(table.push(self.table.name(g), self.table.degree(g) as i64).unwrap());
            }
        }
        let differential = (0..self.len())
            .filter(|&g| keep[g])
            .map(|g| {
                let mut q = Polynomial::zero();
                for (m, c) in self.differential[g].terms() {
                    if m.generators().all(|h| keep[h]) {
                        q.add_term(m.reindex_monotone(|h| map[h].unwrap()), c.clone());
                    }
                }
                q
            })
            .collect();
        (
            SullivanModel {
                name: self.name.clone(),
                table,
                differential,
            },
            map,
        )
    }
}

/// Kahn's algorithm over `deps[g]` = generators that must precede `g`.
pub(crate) fn topological_order(deps: &[Vec<GenId>]) -> Option<Vec<GenId>> {
    let n = deps.len();
    let mut indegree: Vec<usize> = deps.iter().map(|d| d.len()).collect();
    let mut dependents: Vec<Vec<GenId>> = vec![Vec::new(); n];
    for (g, ds) in deps.iter().enumerate() {
        for &h in ds {
            dependents[h].push(g);
        }
    }
    let mut ready: BinaryHeap<Reverse<GenId>> = (0..n).filter(|&g| indegree[g] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(g)) = ready.pop() {
        order.push(g);
        for &h in &dependents[g] {
            indegree[h] -= 1;
            if indegree[h] == 0 {
                ready.push(Reverse(h));
            }
        }
    }
    (order.len() == n).then_some(order)
}
