//! Associated pure models and the ellipticity decision.
//!
//! A model is elliptic exactly when `Q[W^even] / (d_σ W^odd)` is finite
//! dimensional, where `d_σ` keeps only the part of `d` on odd generators
//! that lies in the even subalgebra. Finiteness is read off a reduced
//! Gröbner basis: every even variable needs a pure power among the leading
//! monomials.

use std::fmt;

use thiserror::Error;

use crate::algebra::{GenId, GeneratorTable, Monomial, Polynomial};
use crate::groebner::{groebner, GroebnerBasis, Poly, Ring};
use crate::model::{ModelError, SullivanModel};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PurityError {
    #[error("ideal generator involves the odd generator `{0}`")]
    OddGenerator(String),
    #[error("associated pure differential does not square to zero on `{0}`")]
    NotADifferential(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A model with `d(even) = 0` and `d(odd) ∈ Λ(W^even)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureModel {
    model: SullivanModel,
}

impl PureModel {
    pub fn model(&self) -> &SullivanModel {
        &self.model
    }

    pub fn into_model(self) -> SullivanModel {
        self.model
    }

    /// `d_σ` of every odd generator, in generator order, zeros dropped.
    pub fn odd_images(&self) -> Vec<Polynomial> {
        let t = self.model.table();
        t.odd_ids()
            .into_iter()
            .map(|g| self.model.differential(g).clone())
            .filter(|p| !p.is_zero())
            .collect()
    }
}

fn even_part(table: &GeneratorTable, p: &Polynomial) -> Polynomial {
    p.filter(|m| m.generators().all(|g| !table.is_odd(g)))
}

pub fn is_pure(m: &SullivanModel) -> bool {
    let t = m.table();
    (0..m.len()).all(|g| {
        let d = m.differential(g);
        if t.is_odd(g) {
            &even_part(t, d) == d
        } else {
            d.is_zero()
        }
    })
}

pub fn associated_pure(m: &SullivanModel) -> Result<PureModel, PurityError> {
    let t = m.table();
    let values: Vec<Polynomial> = (0..m.len())
        .map(|g| {
            if t.is_odd(g) {
                even_part(t, m.differential(g))
            } else {
                Polynomial::zero()
            }
        })
        .collect();
    let model = SullivanModel::new(m.name(), t.clone(), values)?;
    for g in 0..model.len() {
        if !model.d(model.differential(g)).is_zero() {
            return Err(PurityError::NotADifferential(t.name(g).to_string()));
        }
    }
    Ok(PureModel { model })
}

/// Ideal in the polynomial ring on the even generators of a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialIdeal {
    table: GeneratorTable,
    vars: Vec<GenId>,
    generators: Vec<Polynomial>,
}

impl PolynomialIdeal {
    pub fn new(table: &GeneratorTable, generators: Vec<Polynomial>) -> Result<Self, PurityError> {
        for p in &generators {
            if let Some(g) = p.generators_used().into_iter().find(|&g| table.is_odd(g)) {
                return Err(PurityError::OddGenerator(table.name(g).to_string()));
            }
        }
        Ok(PolynomialIdeal {
            table: table.clone(),
            vars: table.even_ids(),
            generators,
        })
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn vars(&self) -> &[GenId] {
        &self.vars
    }

    pub fn ring(&self) -> Ring {
        Ring::new(self.vars.iter().map(|&g| self.table.degree(g)).collect())
    }

    fn to_poly(&self, ring: &Ring, p: &Polynomial) -> Poly {
        Poly::from_terms(
            ring,
            p.terms().map(|(m, c)| {
                let mut e = ring.one();
                for &(g, k) in m.factors() {
                    let i = self
                        .vars
                        .binary_search(&(g as GenId))
                        .expect("ideal polynomials use even generators only");
                    e[i] = k;
                }
                (e, c.clone())
            }),
        )
    }

    fn monomial_of(&self, e: &[u32]) -> Monomial {
        let pairs: Vec<(GenId, u32)> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| (self.vars[i], k))
            .collect();
        Monomial::from_sorted(&pairs)
    }

    fn polynomial_of(&self, p: &Poly) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e, c) in p.terms() {
            out.add_term(self.monomial_of(e), c.clone());
        }
        out
    }

    pub fn groebner(&self) -> IdealBasis {
        let ring = self.ring();
        let gens: Vec<Poly> = self.generators.iter().map(|p| self.to_poly(&ring, p)).collect();
        IdealBasis {
            basis: groebner(&ring, &gens),
            ideal: self.clone(),
        }
    }
}

/// Reduced Gröbner basis of a [`PolynomialIdeal`], in generator terms.
#[derive(Debug, Clone)]
pub struct IdealBasis {
    ideal: PolynomialIdeal,
    basis: GroebnerBasis,
}

impl IdealBasis {
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.basis.polys().iter().map(|p| self.ideal.polynomial_of(p)).collect()
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let ring = self.basis.ring();
        self.ideal.polynomial_of(&self.basis.reduce(&self.ideal.to_poly(ring, p)))
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.basis.is_zero_dimensional()
    }

    pub fn quotient_dimension(&self) -> QuotientDimension {
        match self.basis.quotient_dimension() {
            Some(n) => QuotientDimension::Finite(n),
            None => QuotientDimension::Infinite,
        }
    }

    /// Leading pure power for each variable that has one.
    pub fn witnesses(&self) -> Vec<(GenId, Monomial)> {
        self.basis
            .pure_powers()
            .into_iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|e| (self.ideal.vars[i], Monomial::power(self.ideal.vars[i], e))))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientDimension {
    Finite(u128),
    Infinite,
}

impl QuotientDimension {
    pub fn finite(self) -> Option<u128> {
        match self {
            QuotientDimension::Finite(n) => Some(n),
            QuotientDimension::Infinite => None,
        }
    }
}

impl fmt::Display for QuotientDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDimension::Finite(n) => write!(f, "{n}"),
            QuotientDimension::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticityReport {
    pub elliptic: bool,
    pub quotient_dimension: QuotientDimension,
    /// `d_σ` images of the odd generators.
    pub ideal: Vec<Polynomial>,
    pub groebner_basis: Vec<Polynomial>,
    /// Pure-power leading monomial per even generator.
    pub witness: Vec<(GenId, Monomial)>,
    pub fingerprint: u64,
    table: GeneratorTable,
}

impl EllipticityReport {
    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new();
        r.push("elliptic", self.elliptic);
        r.push("quotient_dim", self.quotient_dimension);
        let ideal: Vec<String> = self
            .ideal
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| self.table.display(p).to_string())
            .collect();
        r.push("pure_ideal", format!("({})", ideal.join(", ")));
        for (g, m) in &self.witness {
            r.push(format!("witness[{}]", self.table.name(*g)), self.table.monomial_string(m));
        }
        r
    }
}

/// Builds the ideal `(d_σ W^odd)` of a model.
pub fn pure_ideal(m: &SullivanModel) -> Result<PolynomialIdeal, PurityError> {
    let pure = associated_pure(m)?;
    PolynomialIdeal::new(m.table(), pure.odd_images())
}

pub fn is_elliptic(m: &SullivanModel) -> Result<EllipticityReport, PurityError> {
    let ideal = pure_ideal(m)?;
    let basis = ideal.groebner();
    let quotient_dimension = basis.quotient_dimension();
    Ok(EllipticityReport {
        elliptic: quotient_dimension != QuotientDimension::Infinite,
        quotient_dimension,
        groebner_basis: basis.polynomials(),
        witness: basis.witnesses(),
        ideal: ideal.generators,
        fingerprint: m.fingerprint(),
        table: m.table().clone(),
    })
}
