//! Graded-commutative polynomial rings over `F_p` presented by generators and relations.
//!
//! Odd-degree generators anticommute and square to zero when `p > 2`; for `p = 2` every
//! generator is treated as commuting. Relations may only involve even generators, so the
//! normal form is "exterior rule on odd generators, then reduction by a Gröbner basis of the
//! relations". Ideal-theoretic operations work on rings without odd generators; use
//! [`commutative_reduction`] to get there.

pub mod groebner;
mod hom;
mod ideal;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

pub use groebner::{Mono, MonomialOrder, RawPoly};
pub use hom::{commutative_reduction, RingHom};
pub use ideal::{HomogeneousIdeal, DEFAULT_SPAIR_BUDGET};

use groebner::{normal_form, normalize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    /// Anticommuting and square-zero; only ever set when `p > 2` and the degree is odd.
    pub odd: bool,
}

#[derive(Debug, PartialEq, Eq)]
pub struct GradedPolyRing {
    field: Field,
    gens: Vec<Generator>,
    relations: Vec<RawPoly>,
    relation_gb: Vec<RawPoly>,
}

pub type Ring = Arc<GradedPolyRing>;

const ORDER: MonomialOrder = MonomialOrder::GrevLex;

impl GradedPolyRing {
    /// Build a ring from `(name, degree)` pairs and relations in the polynomial grammar.
    pub fn new(field: &Field, gens: &[(&str, i32)], relations: &[&str]) -> Result<Ring> {
        let owned: Vec<(String, i32)> = gens.iter().map(|(n, d)| (n.to_string(), *d)).collect();
        let rels: Vec<String> = relations.iter().map(|s| s.to_string()).collect();
        GradedPolyRing::from_parts(field, &owned, &rels)
    }

    pub fn from_parts(field: &Field, gens: &[(String, i32)], relations: &[String]) -> Result<Ring> {
        if !field.is_prime_field() {
            return Err(Error::Usage(
                "polynomial rings are defined over prime fields".into(),
            ));
        }
        let p = field.characteristic();
        let mut seen = std::collections::BTreeSet::new();
        let mut generators = Vec::with_capacity(gens.len());
        for (name, degree) in gens {
            if *degree == 0 {
                return Err(Error::Usage(format!("generator {name} has degree 0")));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::Usage(format!("duplicate generator name {name}")));
            }
            if !parse::is_identifier(name) {
                return Err(Error::Usage(format!(
                    "{name:?} is not a valid generator name"
                )));
            }
            generators.push(Generator {
                name: name.clone(),
                degree: *degree,
                odd: p > 2 && degree % 2 != 0,
            });
        }
        let mut raw_relations = Vec::new();
        for text in relations {
            let r = parse::parse_raw(field, &generators, text)?;
            if r.is_empty() {
                continue;
            }
            if raw_degree(&generators, &r).is_none() {
                return Err(Error::Usage(format!(
                    "relation {text:?} is not homogeneous"
                )));
            }
            if r.iter()
                .any(|(m, _)| m.iter().zip(&generators).any(|(&e, g)| e > 0 && g.odd))
            {
                return Err(Error::Usage(format!(
                    "relation {text:?} involves an odd generator; only even relations are supported"
                )));
            }
            raw_relations.push(r);
        }
        let relation_gb =
            groebner::groebner_basis(field, ORDER, &raw_relations, DEFAULT_SPAIR_BUDGET)?;
        Ok(Arc::new(GradedPolyRing {
            field: field.clone(),
            gens: generators,
            relations: raw_relations,
            relation_gb,
        }))
    }

    /// Free polynomial ring (graded-commutative if `p > 2` and some degrees are odd).
    pub fn free(field: &Field, gens: &[(&str, i32)]) -> Result<Ring> {
        GradedPolyRing::new(field, gens, &[])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn relations(&self) -> &[RawPoly] {
        &self.relations
    }

    pub fn relation_basis(&self) -> &[RawPoly] {
        &self.relation_gb
    }

    /// No anticommuting generators: ideal theory applies directly.
    pub fn is_commutative(&self) -> bool {
        self.gens.iter().all(|g| !g.odd)
    }

    pub fn monomial_degree(&self, m: &[u32]) -> i32 {
        m.iter()
            .zip(&self.gens)
            .map(|(&e, g)| e as i32 * g.degree)
            .sum()
    }

    /// Standard monomials (odd exponents at most one, not divisible by a relation lead)
    /// of the given degree. Requires positive generator degrees.
    pub fn standard_monomials(&self, degree: i32) -> Vec<Mono> {
        assert!(
            self.gens.iter().all(|g| g.degree > 0),
            "standard monomials need positive degrees"
        );
        let mut out = Vec::new();
        let mut current = vec![0u32; self.gens.len()];
        self.enumerate_monomials(0, degree, &mut current, &mut out);
        out.retain(|m| {
            !self
                .relation_gb
                .iter()
                .any(|g| groebner::divides(&g[0].0, m))
        });
        out.sort_by(|a, b| ORDER.cmp(b, a));
        out
    }

    fn enumerate_monomials(
        &self,
        idx: usize,
        remaining: i32,
        current: &mut Vec<u32>,
        out: &mut Vec<Mono>,
    ) {
        if idx == self.gens.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let g = &self.gens[idx];
        let max = if g.odd {
            1.min(remaining / g.degree)
        } else {
            remaining / g.degree
        };
        for e in 0..=max {
            current[idx] = e as u32;
            self.enumerate_monomials(idx + 1, remaining - e * g.degree, current, out);
        }
        current[idx] = 0;
    }

    /// Dimension of each graded piece `0..=max_degree`.
    pub fn hilbert_function(&self, max_degree: i32) -> Vec<usize> {
        (0..=max_degree)
            .map(|d| self.standard_monomials(d).len())
            .collect()
    }

    fn format_monomial(&self, m: &[u32]) -> String {
        let factors: Vec<String> = m
            .iter()
            .zip(&self.gens)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| {
                if e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        factors.join("*")
    }

    /// Human-readable presentation, e.g. `F_3[eta1(1), theta1(2)] / (...)`.
    pub fn describe(&self) -> String {
        let gens: Vec<String> = self
            .gens
            .iter()
            .map(|g| format!("{}({})", g.name, g.degree))
            .collect();
        let mut s = format!("F_{}[{}]", self.characteristic(), gens.join(", "));
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| self.format_raw(r)).collect();
            s.push_str(&format!(" / ({})", rels.join(", ")));
        }
        s
    }

    pub(crate) fn format_raw(&self, f: &RawPoly) -> String {
        if f.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in f.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let mono = self.format_monomial(m);
            match (mono.is_empty(), *c) {
                (true, c) => out.push_str(&c.to_string()),
                (false, 1) => out.push_str(&mono),
                (false, c) => out.push_str(&format!("{c}*{mono}")),
            }
        }
        out
    }
}

/// Weighted degree of a raw polynomial if homogeneous; `Some(0)` for the zero polynomial.
pub(crate) fn raw_degree(gens: &[Generator], f: &RawPoly) -> Option<i32> {
    let mut degrees = f.iter().map(|(m, _)| {
        m.iter()
            .zip(gens)
            .map(|(&e, g)| e as i32 * g.degree)
            .sum::<i32>()
    });
    let first = degrees.next().unwrap_or(0);
    degrees.all(|d| d == first).then_some(first)
}

/// Product of monomials in the free graded-commutative algebra: `None` if an odd generator
/// would appear twice, otherwise the product and whether the sign flips.
pub(crate) fn monomial_product(gens: &[Generator], a: &[u32], b: &[u32]) -> Option<(Mono, bool)> {
    let mut sign = false;
    // Moving each odd factor of b left past the odd factors of a with larger index.
    let mut odd_in_a_after = 0u32;
    for i in (0..gens.len()).rev() {
        if !gens[i].odd {
            continue;
        }
        if b[i] > 0 {
            if a[i] > 0 {
                return None;
            }
            if odd_in_a_after % 2 == 1 {
                sign = !sign;
            }
        }
        odd_in_a_after += a[i];
    }
    Some((a.iter().zip(b).map(|(x, y)| x + y).collect(), sign))
}

pub(crate) fn raw_mul(field: &Field, gens: &[Generator], a: &RawPoly, b: &RawPoly) -> RawPoly {
    let mut terms = Vec::with_capacity(a.len() * b.len());
    for (ma, ca) in a {
        for (mb, cb) in b {
            if let Some((m, flip)) = monomial_product(gens, ma, mb) {
                let c = field.mul(*ca, *cb);
                terms.push((m, if flip { field.neg(c) } else { c }));
            }
        }
    }
    normalize(field, ORDER, terms)
}

/// An element of a [`GradedPolyRing`], always in normal form.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: RawPoly,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.format_raw(&self.terms))
    }
}

impl Polynomial {
    /// Normal form of raw terms (any order, possibly unreduced) in `ring`.
    pub fn from_raw(ring: &Ring, terms: Vec<(Mono, Elem)>) -> Polynomial {
        let f = normalize(&ring.field, ORDER, terms);
        // Exterior rule: odd exponents above one vanish.
        let f: RawPoly = f
            .into_iter()
            .filter(|(m, _)| m.iter().zip(&ring.gens).all(|(&e, g)| !g.odd || e <= 1))
            .collect();
        let terms = normal_form(&ring.field, ORDER, &f, &ring.relation_gb);
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Polynomial> {
        let raw = parse::parse_raw(&ring.field, &ring.gens, text)?;
        Ok(Polynomial::from_raw(ring, raw))
    }

    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: vec![],
        }
    }

    pub fn constant(ring: &Ring, c: i64) -> Polynomial {
        Polynomial::from_raw(
            ring,
            vec![(vec![0; ring.num_gens()], ring.field.from_int(c))],
        )
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, 1)
    }

    pub fn var(ring: &Ring, i: usize) -> Polynomial {
        let mut m = vec![0; ring.num_gens()];
        m[i] = 1;
        Polynomial::from_raw(ring, vec![(m, 1)])
    }

    pub fn monomial(ring: &Ring, m: Mono, c: Elem) -> Polynomial {
        Polynomial::from_raw(ring, vec![(m, c)])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &RawPoly {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weighted degree if homogeneous (zero counts as homogeneous of every degree; reports 0).
    pub fn degree(&self) -> Option<i32> {
        raw_degree(&self.ring.gens, &self.terms)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().is_some()
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(self.ring == other.ring, "polynomials from different rings");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Polynomial {
            ring: self.ring.clone(),
            terms: normalize(&self.ring.field, ORDER, terms),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field.neg(1))
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> Polynomial {
        let f = &self.ring.field;
        let terms = if c == 0 {
            vec![]
        } else {
            self.terms
                .iter()
                .map(|(m, x)| (m.clone(), f.mul(*x, c)))
                .collect()
        };
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let prod = raw_mul(&self.ring.field, &self.ring.gens, &self.terms, &other.terms);
        Polynomial {
            ring: self.ring.clone(),
            terms: normal_form(&self.ring.field, ORDER, &prod, &self.ring.relation_gb),
        }
    }

    pub fn pow(&self, e: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn leading_monomial(&self) -> Option<&Mono> {
        self.terms.first().map(|t| &t.0)
    }

    /// Evaluate at a point of `field^n` (an extension of the ring's prime field).
    pub fn eval(&self, field: &Field, point: &[Elem]) -> Elem {
        assert_eq!(point.len(), self.ring.num_gens());
        assert_eq!(field.characteristic(), self.ring.characteristic());
        self.terms.iter().fold(0, |acc, (m, c)| {
            let v = m
                .iter()
                .zip(point)
                .fold(*c, |v, (&e, &x)| field.mul(v, field.pow(x, e as u64)));
            field.add(acc, v)
        })
    }

    pub fn cmp_leading(&self, other: &Polynomial) -> Ordering {
        match (self.leading_monomial(), other.leading_monomial()) {
            (None, None) => Ordering::Equal,
            (None, _) => Ordering::Less,
            (_, None) => Ordering::Greater,
            (Some(a), Some(b)) => ORDER.cmp(a, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn exterior_rule_for_odd_primes() {
        let r = GradedPolyRing::free(&f(3), &[("eta1", 1), ("eta2", 1), ("theta1", 2)]).unwrap();
        let e1 = Polynomial::var(&r, 0);
        let e2 = Polynomial::var(&r, 1);
        assert!(e1.mul(&e1).is_zero());
        assert_eq!(e1.mul(&e2), e2.mul(&e1).neg());
        assert!(!r.is_commutative());
    }

    #[test]
    fn p2_is_commutative() {
        let r = GradedPolyRing::free(&f(2), &[("eta1", 1), ("eta2", 1)]).unwrap();
        let e1 = Polynomial::var(&r, 0);
        assert!(!e1.mul(&e1).is_zero());
        assert!(r.is_commutative());
    }

    #[test]
    fn relations_give_normal_forms() {
        let r = GradedPolyRing::new(&f(2), &[("eta", 1), ("theta", 2)], &["eta^2"]).unwrap();
        let eta = Polynomial::parse(&r, "eta").unwrap();
        assert!(eta.mul(&eta).is_zero());
        assert_eq!(r.hilbert_function(4), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn hilbert_of_exterior_tensor_polynomial() {
        let r = GradedPolyRing::free(
            &f(3),
            &[("eta1", 1), ("eta2", 1), ("theta1", 2), ("theta2", 2)],
        )
        .unwrap();
        // (1+t)^2 / (1-t^2)^2: 1, 2, 3, 4, 5, ...
        assert_eq!(r.hilbert_function(5), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn rejects_bad_relations() {
        assert!(GradedPolyRing::new(&f(2), &[("x", 1), ("y", 2)], &["x + y"]).is_err());
        assert!(GradedPolyRing::new(&f(3), &[("e", 1), ("t", 2)], &["e*t"]).is_err());
        assert!(GradedPolyRing::new(&f(2), &[("x", 1), ("x", 1)], &[]).is_err());
    }

    #[test]
    fn display_round_trips() {
        let r = GradedPolyRing::free(&f(5), &[("x1", 2), ("x2", 2)]).unwrap();
        let p = Polynomial::parse(&r, "3*x1^2*x2 - x2^3 + 7*x1*x2^2").unwrap();
        let again = Polynomial::parse(&r, &p.to_string()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn evaluation_over_extension() {
        let r = GradedPolyRing::free(&f(2), &[("x", 1), ("y", 1)]).unwrap();
        let p = Polynomial::parse(&r, "x^2 + x*y + y^2").unwrap();
        let f4 = Field::new(2, 2).unwrap();
        // t is a root of x^2 + x + 1, so (t, 1) is a zero.
        assert_eq!(p.eval(&f4, &[2, 1]), 0);
        assert_ne!(p.eval(&f4, &[1, 0]), 0);
    }
}
