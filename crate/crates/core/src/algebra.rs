//! Free graded-commutative algebras over the rationals.
//!
//! A [`GeneratorTable`] fixes an ordered list of homogeneous generators. Odd
//! generators behave as exterior variables, even generators as polynomial
//! variables. [`Monomial`]s are kept in canonical form (factors sorted by
//! generator id) and [`Polynomial`]s are finite maps from monomials to
//! nonzero rational coefficients. All products reorder factors into canonical
//! order and accumulate the Koszul sign `(-1)^(|x||y|)` for every
//! transposition of two odd factors.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

/// Exact rational coefficient.
pub type Scalar = BigRational;

/// Index of a generator in its table.
pub type GenId = usize;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("generator `{name}` has degree {degree}; degrees must be at least 1")]
    NonPositiveDegree { name: String, degree: i64 },
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("generator id {id} is out of range for a table with {len} generators")]
    ForeignGenerator { id: GenId, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

pub(crate) fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Ordered generator list; ids are dense `0..len` in declaration order.
#[derive(Debug, Clone, Default)]
pub struct GeneratorTable {
    gens: Vec<Generator>,
    index: HashMap<String, GenId>,
}

impl PartialEq for GeneratorTable {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for GeneratorTable {}

impl GeneratorTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, i64)]) -> Result<Self, AlgebraError> {
        let mut table = Self::new();
        for (name, degree) in pairs {
            table.push(name.as_ref(), *degree)?;
        }
        Ok(table)
    }

    pub fn push(&mut self, name: &str, degree: i64) -> Result<GenId, AlgebraError> {
        if !valid_identifier(name) {
            return Err(AlgebraError::InvalidName(name.to_string()));
        }
        if degree <= 0 || degree > u32::MAX as i64 {
            return Err(AlgebraError::NonPositiveDegree {
                name: name.to_string(),
                degree,
            });
        }
        if self.index.contains_key(name) {
            return Err(AlgebraError::DuplicateName(name.to_string()));
        }
        let id = self.gens.len();
        self.gens.push(Generator {
            name: name.to_string(),
            degree: degree as u32,
        });
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn get(&self, id: GenId) -> &Generator {
        &self.gens[id]
    }

    pub fn degree(&self, id: GenId) -> u32 {
        self.gens[id].degree
    }

    pub fn is_odd(&self, id: GenId) -> bool {
        self.gens[id].is_odd()
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.gens[id].name
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.index.get(name).copied()
    }

    pub fn odd_ids(&self) -> Vec<GenId> {
        (0..self.len()).filter(|&i| self.is_odd(i)).collect()
    }

    pub fn even_ids(&self) -> Vec<GenId> {
        (0..self.len()).filter(|&i| !self.is_odd(i)).collect()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> usize {
        m.factors()
            .iter()
            .map(|&(g, e)| self.degree(g as GenId) as usize * e as usize)
            .sum()
    }

    /// Degree of a homogeneous polynomial; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self, p: &Polynomial) -> Option<usize> {
        let mut degrees = p.terms.keys().map(|m| self.monomial_degree(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn check_polynomial(&self, p: &Polynomial) -> Result<(), AlgebraError> {
        for m in p.monomials() {
            for &(g, _) in m.factors() {
                if g as usize >= self.len() {
                    return Err(AlgebraError::ForeignGenerator {
                        id: g as usize,
                        len: self.len(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Product of two monomials: the sign and canonical result, or `None`
    /// when an odd generator would appear twice.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let (fa, fb) = (a.factors(), b.factors());
        let mut out = SmallVec::with_capacity(fa.len() + fb.len());
        let mut negative = false;
        // odd factors of `a` not yet merged, i.e. with larger id than the current `b` factor
        let odd_in_a: usize = fa.iter().filter(|f| self.is_odd(f.0 as GenId)).count();
        let mut odd_a_passed = 0usize;
        let (mut i, mut j) = (0, 0);
        while i < fa.len() || j < fb.len() {
            let take_a = j == fb.len() || (i < fa.len() && fa[i].0 < fb[j].0);
            if take_a {
                if self.is_odd(fa[i].0 as GenId) {
                    odd_a_passed += 1;
                }
                out.push(fa[i]);
                i += 1;
            } else if i < fa.len() && fa[i].0 == fb[j].0 {
                let g = fa[i].0;
                if self.is_odd(g as GenId) {
                    return None;
                }
                out.push((g, fa[i].1 + fb[j].1));
                i += 1;
                j += 1;
            } else {
                if self.is_odd(fb[j].0 as GenId) && (odd_in_a - odd_a_passed) % 2 == 1 {
                    negative = !negative;
                }
                out.push(fb[j]);
                j += 1;
            }
        }
        Some((negative, Monomial(out)))
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some((neg, m)) = self.mul_monomials(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Product with a check that both operands only use generators of this table.
    pub fn try_mul(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_polynomial(a)?;
        self.check_polynomial(b)?;
        Ok(self.mul(a, b))
    }

    pub fn pow(&self, p: &Polynomial, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = self.mul(&acc, p);
        }
        acc
    }

    /// Canonical form of a single product of generators given in arbitrary
    /// order (repetitions allowed). Returns `None` when the product vanishes.
    pub fn canonical_product(&self, factors: &[GenId]) -> Option<(bool, Monomial)> {
        let mut seq: Vec<GenId> = factors.to_vec();
        let mut negative = false;
        // insertion sort, counting transpositions of odd pairs
        for k in 1..seq.len() {
            let mut pos = k;
            while pos > 0 && seq[pos - 1] > seq[pos] {
                if self.is_odd(seq[pos - 1]) && self.is_odd(seq[pos]) {
                    negative = !negative;
                }
                seq.swap(pos - 1, pos);
                pos -= 1;
            }
        }
        let mut out: SmallVec<[(u32, u32); 8]> = SmallVec::new();
        for g in seq {
            match out.last_mut() {
                Some(last) if last.0 as GenId == g => {
                    if self.is_odd(g) {
                        return None;
                    }
                    last.1 += 1;
                }
                _ => out.push((g as u32, 1)),
            }
        }
        Some((negative, Monomial(out)))
    }

    /// Builds a canonical polynomial from raw `(coefficient, factor list)` terms.
    pub fn normalize(&self, raw: &[(Scalar, Vec<GenId>)]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (c, factors) in raw {
            if let Some((neg, m)) = self.canonical_product(factors) {
                out.add_term(m, if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// All monomials of total degree `n`, in canonical order.
    pub fn basis(&self, n: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current: SmallVec<[(u32, u32); 8]> = SmallVec::new();
        self.basis_rec(0, n, &mut current, &mut out);
        out
    }

    fn basis_rec(
        &self,
        g: GenId,
        remaining: usize,
        current: &mut SmallVec<[(u32, u32); 8]>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(Monomial(current.clone()));
            return;
        }
        if g == self.len() {
            return;
        }
        let deg = self.degree(g) as usize;
        let max_exp = if self.is_odd(g) { 1 } else { remaining / deg };
        for e in (0..=max_exp.min(remaining / deg)).rev() {
            if e > 0 {
                current.push((g as u32, e as u32));
            }
            self.basis_rec(g + 1, remaining - e * deg, current, out);
            if e > 0 {
                current.pop();
            }
        }
    }

    /// `|basis(n)|` for `n = 0..=max`, from the Poincaré series of the free algebra.
    pub fn basis_sizes(&self, max: usize) -> Vec<u128> {
        let mut sizes = vec![0u128; max + 1];
        sizes[0] = 1;
        for g in &self.gens {
            let d = g.degree as usize;
            if g.is_odd() {
                for n in (d..=max).rev() {
                    sizes[n] = sizes[n].saturating_add(sizes[n - d]);
                }
            } else {
                for n in d..=max {
                    sizes[n] = sizes[n].saturating_add(sizes[n - d]);
                }
            }
        }
        sizes
    }

    pub fn display<'a>(&'a self, p: &'a Polynomial) -> PolyDisplay<'a> {
        PolyDisplay { table: self, poly: p }
    }

    pub fn monomial_string(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "1".to_string();
        }
        m.factors()
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    self.name(g as GenId).to_string()
                } else {
                    format!("{}^{}", self.name(g as GenId), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Canonical monomial: `(generator id, exponent)` pairs sorted by id.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(u32, u32); 8]>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn generator(g: GenId) -> Self {
        let mut v = SmallVec::new();
        v.push((g as u32, 1));
        Monomial(v)
    }

    pub fn power(g: GenId, e: u32) -> Self {
        if e == 0 {
            return Self::unit();
        }
        let mut v = SmallVec::new();
        v.push((g as u32, e));
        Monomial(v)
    }

    /// Builds from pairs that are already sorted, duplicate free and nonzero.
    pub fn from_sorted(pairs: &[(GenId, u32)]) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        Monomial(
            pairs
                .iter()
                .filter(|p| p.1 > 0)
                .map(|&(g, e)| (g as u32, e))
                .collect(),
        )
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.0.iter().map(|f| f.1).sum()
    }

    pub fn exponent(&self, g: GenId) -> u32 {
        self.0
            .iter()
            .find(|f| f.0 as GenId == g)
            .map_or(0, |f| f.1)
    }

    pub fn contains(&self, g: GenId) -> bool {
        self.exponent(g) > 0
    }

    pub fn generators(&self) -> impl Iterator<Item = GenId> + '_ {
        self.0.iter().map(|f| f.0 as GenId)
    }

    /// Renames generator ids; the map must be strictly increasing on the ids present.
    pub(crate) fn reindex_monotone(&self, map: impl Fn(GenId) -> GenId) -> Monomial {
        Monomial(self.0.iter().map(|&(g, e)| (map(g as GenId) as u32, e)).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| if e == 1 { format!("g{g}") } else { format!("g{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Canonical order: exponent vectors compared lexicographically by generator
/// id, larger vectors first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        for k in 0..a.len().min(b.len()) {
            if a[k].0 != b[k].0 {
                // the side holding the smaller id has a nonzero exponent where the other has zero
                return if a[k].0 < b[k].0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
            if a[k].1 != b[k].1 {
                return b[k].1.cmp(&a[k].1);
            }
        }
        b.len().cmp(&a.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite linear combination of canonical monomials with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(c, Monomial::unit())
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Scalar::one(), m)
    }

    pub fn generator(g: GenId) -> Self {
        Self::monomial(Monomial::generator(g))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Polynomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    pub fn accumulate(&mut self, other: &Polynomial) {
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d.clone());
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero();
        out.add_scaled(self, c);
        out
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest generator id used, if any.
    pub fn max_generator(&self) -> Option<GenId> {
        self.terms
            .keys()
            .filter_map(|m| m.factors().last().map(|f| f.0 as GenId))
            .max()
    }

    pub fn uses(&self, g: GenId) -> bool {
        self.terms.keys().any(|m| m.contains(g))
    }

    pub fn generators_used(&self) -> Vec<GenId> {
        let mut out: Vec<GenId> = self.terms.keys().flat_map(|m| m.generators()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Relabels generators through an arbitrary map, re-canonicalizing signs.
    pub fn relabel(&self, target: &GeneratorTable, map: impl Fn(GenId) -> GenId) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            for &(g, e) in m.factors() {
                for _ in 0..e {
                    factors.push(map(g as GenId));
                }
            }
            if let Some((neg, mm)) = target.canonical_product(&factors) {
                out.add_term(mm, if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// Multiplies all coefficients by the lcm of their denominators and
    /// returns the resulting integer coefficients in term order.
    pub fn integer_coefficients(&self) -> Vec<BigInt> {
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        self.terms
            .values()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next()
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c}*{m:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub struct PolyDisplay<'a> {
    table: &'a GeneratorTable,
    poly: &'a Polynomial,
}

pub(crate) fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_unit() {
                write!(f, "{}", format_scalar(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", self.table.monomial_string(m))?;
            } else {
                write!(f, "{}*{}", format_scalar(&abs), self.table.monomial_string(m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd3() -> GeneratorTable {
        GeneratorTable::from_pairs(&[("u1", 3), ("u2", 3), ("v12", 5)]).unwrap()
    }

    #[test]
    fn koszul_sign_on_swap() {
        let t = odd3();
        let p = t.mul(&Polynomial::generator(1), &Polynomial::generator(0));
        let expected = Polynomial::term(
            scalar(-1),
            Monomial::from_sorted(&[(0, 1), (1, 1)]),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn odd_square_vanishes() {
        let t = odd3();
        let u1 = Polynomial::generator(0);
        assert!(t.mul(&u1, &u1).is_zero());
    }

    #[test]
    fn even_generators_commute_and_accumulate() {
        let t = GeneratorTable::from_pairs(&[("w", 2)]).unwrap();
        let w = Polynomial::generator(0);
        let w2 = t.mul(&w, &w);
        assert_eq!(t.mul(&w, &w2), Polynomial::monomial(Monomial::power(0, 3)));
    }

    #[test]
    fn basis_examples() {
        let t = odd3();
        let b8 = t.basis(8);
        assert_eq!(
            b8,
            vec![
                Monomial::from_sorted(&[(0, 1), (2, 1)]),
                Monomial::from_sorted(&[(1, 1), (2, 1)])
            ]
        );
        assert_eq!(t.basis(0), vec![Monomial::unit()]);
        let total: usize = (0..=11).map(|n| t.basis(n).len()).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn normalize_examples() {
        let t = odd3();
        let p = t.normalize(&[(scalar(1), vec![1, 0]), (scalar(1), vec![0, 1])]);
        assert!(p.is_zero());
        let tw = GeneratorTable::from_pairs(&[("w", 2)]).unwrap();
        let p = tw.normalize(&[(ratio(1, 2), vec![0, 0])]);
        assert_eq!(p, Polynomial::term(ratio(1, 2), Monomial::power(0, 2)));
        let t3 = GeneratorTable::from_pairs(&[("u1", 1), ("u2", 1), ("u3", 1)]).unwrap();
        let p = t3.normalize(&[
            (scalar(1), vec![0, 2]),
            (scalar(-1), vec![0, 1]),
            (scalar(1), vec![1, 2]),
        ]);
        assert_eq!(t3.display(&p).to_string(), "-u1*u2 + u1*u3 + u2*u3");
    }

    #[test]
    fn table_rejects_bad_generators() {
        let mut t = GeneratorTable::new();
        assert!(matches!(
            t.push("x", 0),
            Err(AlgebraError::NonPositiveDegree { .. })
        ));
        t.push("x", 2).unwrap();
        assert_eq!(t.push("x", 3), Err(AlgebraError::DuplicateName("x".into())));
        assert!(matches!(t.push("1x", 3), Err(AlgebraError::InvalidName(_))));
    }

    #[test]
    fn try_mul_rejects_foreign_ids() {
        let t = odd3();
        let foreign = Polynomial::generator(7);
        assert!(matches!(
            t.try_mul(&foreign, &Polynomial::one()),
            Err(AlgebraError::ForeignGenerator { id: 7, len: 3 })
        ));
    }

    #[test]
    fn basis_sizes_match_enumeration() {
        let t = GeneratorTable::from_pairs(&[("a", 2), ("u", 3), ("w", 4), ("v", 5)]).unwrap();
        let sizes = t.basis_sizes(30);
        for (n, s) in sizes.iter().enumerate() {
            assert_eq!(*s as usize, t.basis(n).len(), "degree {n}");
        }
    }
}
