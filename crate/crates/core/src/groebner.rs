//! Gröbner bases over the rationals in a weighted polynomial ring.
//!
//! Monomials are exponent vectors; the order is weighted degree first and
//! reverse lexicographic on ties (the last variable with differing exponent
//! decides, smaller exponent wins). Buchberger's algorithm runs with the
//! coprime and chain criteria and the result is the unique reduced, monic
//! basis sorted by increasing leading monomial.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::Zero;

use crate::algebra::Scalar;

pub type Exponents = Vec<u32>;

/// Commutative polynomial ring `Q[x_0..x_{k-1}]` with positive weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    weights: Vec<u32>,
}

impl Ring {
    pub fn new(weights: Vec<u32>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        Ring { weights }
    }

    pub fn vars(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, e: &[u32]) -> u64 {
        e.iter().zip(&self.weights).map(|(&a, &w)| a as u64 * w as u64).sum()
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.weight(a).cmp(&self.weight(b)).then_with(|| {
            for (x, y) in a.iter().zip(b).rev() {
                if x != y {
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        })
    }

    pub fn one(&self) -> Exponents {
        vec![0; self.vars()]
    }

    pub fn var(&self, i: usize, e: u32) -> Exponents {
        let mut v = self.one();
        v[i] = e;
        v
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn product(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Polynomial with terms sorted by decreasing monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: Vec<(Exponents, Scalar)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    /// Collects arbitrary terms into canonical form.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Exponents, Scalar)>) -> Self {
        let mut v: Vec<(Exponents, Scalar)> = terms.into_iter().collect();
        v.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Exponents, Scalar)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Exponents, Scalar)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Exponents, Scalar)> {
        self.terms.first()
    }

    fn monic(mut self) -> Self {
        if let Some((_, c)) = self.terms.first() {
            let inv = c.recip();
            for (_, t) in self.terms.iter_mut() {
                *t = &*t * &inv;
            }
        }
        self
    }

    /// `self - c * x^shift * other`.
    fn sub_shifted(&self, ring: &Ring, c: &Scalar, shift: &[u32], other: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let shifted: Vec<(Exponents, Scalar)> = other
            .terms
            .iter()
            .map(|(e, k)| (product(e, shift), -(c * k)))
            .collect();
        while i < self.terms.len() || j < shifted.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == shifted.len() {
                Ordering::Greater
            } else {
                ring.cmp(&self.terms[i].0, &shifted[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &self.terms[i].1 + &shifted[j].1;
                    if !s.is_zero() {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }
}

/// Full normal form of `f` modulo `basis`.
pub fn reduce(ring: &Ring, f: &Poly, basis: &[Poly]) -> Poly {
    let mut rest = f.clone();
    let mut remainder: Vec<(Exponents, Scalar)> = Vec::new();
    while let Some((e, c)) = rest.terms.first().cloned() {
        let divisor = basis
            .iter()
            .find(|g| g.leading().is_some_and(|(lg, _)| divides(lg, &e)));
        match divisor {
            Some(g) => {
                let (lg, lc) = g.leading().expect("nonzero divisor");
                rest = rest.sub_shifted(ring, &(&c / lc), &quotient(&e, lg), g);
            }
            None => {
                remainder.push((e, c));
                rest.terms.remove(0);
            }
        }
    }
    Poly { terms: remainder }
}

fn s_polynomial(ring: &Ring, f: &Poly, g: &Poly) -> Poly {
    let (lf, cf) = f.leading().expect("nonzero");
    let (lg, cg) = g.leading().expect("nonzero");
    let l = lcm(lf, lg);
    let shift = quotient(&l, lf);
    let a = Poly {
        terms: f.terms.iter().map(|(e, c)| (product(e, &shift), c / cf)).collect(),
    };
    a.sub_shifted(ring, &cg.recip(), &quotient(&l, lg), g)
}

/// Reduced Gröbner basis of an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    polys: Vec<Poly>,
}

pub fn groebner(ring: &Ring, generators: &[Poly]) -> GroebnerBasis {
    let mut basis: Vec<Poly> = generators
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.clone().monic())
        .collect();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while let Some(&pair) = pending
        .iter()
        .min_by(|a, b| {
            let la = lcm(&basis[a.0].terms[0].0, &basis[a.1].terms[0].0);
            let lb = lcm(&basis[b.0].terms[0].0, &basis[b.1].terms[0].0);
            ring.cmp(&la, &lb).then(a.cmp(b))
        })
    {
        pending.remove(&pair);
        let (i, j) = pair;
        let li = &basis[i].terms[0].0;
        let lj = &basis[j].terms[0].0;
        if coprime(li, lj) {
            continue;
        }
        let l = lcm(li, lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k].terms[0].0, &l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(ring, &basis[i], &basis[j]);
        let r = reduce(ring, &s, &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.monic());
            for m in 0..k {
                pending.insert((m, k));
            }
        }
    }
    GroebnerBasis::from_groebner(ring, basis)
}

impl GroebnerBasis {
    fn from_groebner(ring: &Ring, mut basis: Vec<Poly>) -> Self {
        basis.sort_by(|a, b| ring.cmp(&a.terms[0].0, &b.terms[0].0));
        let mut minimal: Vec<Poly> = Vec::new();
        for p in basis {
            if !minimal.iter().any(|q| divides(&q.terms[0].0, &p.terms[0].0)) {
                minimal.push(p);
            }
        }
        let reduced: Vec<Poly> = (0..minimal.len())
            .map(|k| {
                let others: Vec<Poly> = minimal
                    .iter()
                    .enumerate()
                    .filter(|(m, _)| *m != k)
                    .map(|(_, p)| p.clone())
                    .collect();
                let head = Poly { terms: vec![minimal[k].terms[0].clone()] };
                let tail = Poly { terms: minimal[k].terms[1..].to_vec() };
                let mut r = reduce(ring, &tail, &others);
                r.terms.insert(0, head.terms[0].clone());
                r.monic()
            })
            .collect();
        GroebnerBasis {
            ring: ring.clone(),
            polys: reduced,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        reduce(&self.ring, f, &self.polys)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<&Exponents> {
        self.polys.iter().map(|p| &p.terms[0].0).collect()
    }

    /// Smallest pure power of each variable among the leading monomials.
    pub fn pure_powers(&self) -> Vec<Option<u32>> {
        let mut out = vec![None; self.ring.vars()];
        for e in self.leading_monomials() {
            let support: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
            if let [i] = support[..] {
                out[i] = Some(out[i].map_or(e[i], |x: u32| x.min(e[i])));
            }
        }
        out
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.pure_powers().iter().all(Option::is_some)
    }

    /// Number of standard monomials, or `None` when infinite.
    pub fn quotient_dimension(&self) -> Option<u128> {
        if self.polys.iter().any(|p| p.terms[0].0.iter().all(|&x| x == 0)) {
            return Some(0);
        }
        let bounds: Vec<u32> = self.pure_powers().into_iter().collect::<Option<_>>()?;
        let leads: Vec<&Exponents> = self.leading_monomials();
        let mut e = self.ring.one();
        Some(count_standard(0, &bounds, &leads, &mut e))
    }
}

fn count_standard(i: usize, bounds: &[u32], leads: &[&Exponents], e: &mut Exponents) -> u128 {
    if i == bounds.len() {
        return 1;
    }
    let mut total = 0;
    for x in 0..bounds[i] {
        e[i] = x;
        if leads.iter().any(|l| divides(l, e)) {
            break;
        }
        total += count_standard(i + 1, bounds, leads, e);
    }
    e[i] = 0;
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar;

    fn poly(ring: &Ring, terms: &[(&[u32], i64)]) -> Poly {
        Poly::from_terms(ring, terms.iter().map(|(e, c)| (e.to_vec(), scalar(*c))))
    }

    #[test]
    fn grevlex_ordering() {
        let r = Ring::new(vec![1, 1, 1]);
        assert_eq!(r.cmp(&[2, 0, 0], &[0, 1, 0]), Ordering::Greater);
        // same degree: x1*x2 > x0*x2 (x2 exponent ties, x1 exponent decides)
        assert_eq!(r.cmp(&[1, 1, 0], &[1, 0, 1]), Ordering::Greater);
        assert_eq!(r.cmp(&[0, 2, 0], &[1, 0, 1]), Ordering::Greater);
        let w = Ring::new(vec![2, 18]);
        assert_eq!(w.cmp(&[9, 0], &[0, 1]), Ordering::Greater);
    }

    #[test]
    fn monomial_ideal_is_already_reduced() {
        let r = Ring::new(vec![2, 2, 2]);
        let gens = vec![poly(&r, &[(&[2, 0, 0], -1)]), poly(&r, &[(&[0, 5, 0], 1)]), poly(&r, &[(&[0, 0, 6], 1)])];
        let g = groebner(&r, &gens);
        assert_eq!(g.polys().len(), 3);
        assert_eq!(g.pure_powers(), vec![Some(2), Some(5), Some(6)]);
        assert_eq!(g.quotient_dimension(), Some(60));
    }

    #[test]
    fn principal_ideal() {
        let r = Ring::new(vec![12]);
        let g = groebner(&r, &[poly(&r, &[(&[2], 3)])]);
        assert_eq!(g.polys(), &[poly(&r, &[(&[2], 1)])]);
        assert_eq!(g.quotient_dimension(), Some(2));
    }

    #[test]
    fn coordinate_axes_are_not_zero_dimensional() {
        let r = Ring::new(vec![2, 2]);
        let g = groebner(&r, &[poly(&r, &[(&[1, 1], 1)])]);
        assert!(!g.is_zero_dimensional());
        assert_eq!(g.quotient_dimension(), None);
    }

    #[test]
    fn unit_ideal_has_empty_quotient() {
        let r = Ring::new(vec![2]);
        let g = groebner(&r, &[poly(&r, &[(&[0], 5)]), poly(&r, &[(&[3], 1)])]);
        assert_eq!(g.polys(), &[poly(&r, &[(&[0], 1)])]);
        assert_eq!(g.quotient_dimension(), Some(0));
    }
}
