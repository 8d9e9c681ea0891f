use std::fmt;
use std::sync::OnceLock;

use super::groebner::{self, groebner_basis, is_unit_ideal, normal_form, MonomialOrder, RawPoly};
use super::{Polynomial, Ring};
use crate::error::{Error, Result};

/// Default cap on S-pairs per Gröbner computation.
pub const DEFAULT_SPAIR_BUDGET: usize = 200_000;

const ORDER: MonomialOrder = MonomialOrder::GrevLex;

/// A homogeneous ideal given by generators, with a lazily computed Gröbner basis of
/// `generators + relations` in the ambient free polynomial ring.
#[derive(Clone)]
pub struct HomogeneousIdeal {
    ring: Ring,
    gens: Vec<Polynomial>,
    budget: usize,
    gb: OnceLock<Result<Vec<RawPoly>>>,
}

impl fmt::Debug for HomogeneousIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for HomogeneousIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = match self.canonical_generators() {
            Ok(g) => g.iter().map(|p| p.to_string()).collect(),
            Err(_) => self.gens.iter().map(|p| p.to_string()).collect(),
        };
        write!(
            f,
            "({})",
            if gens.is_empty() {
                "0".to_string()
            } else {
                gens.join(", ")
            }
        )
    }
}

impl HomogeneousIdeal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<HomogeneousIdeal> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::Usage(
                    "ideal generator lives in a different ring".into(),
                ));
            }
            if !g.is_homogeneous() {
                return Err(Error::Usage(format!(
                    "ideal generator {g} is not homogeneous"
                )));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(HomogeneousIdeal {
            ring: ring.clone(),
            gens,
            budget: DEFAULT_SPAIR_BUDGET,
            gb: OnceLock::new(),
        })
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<HomogeneousIdeal> {
        let polys = gens
            .iter()
            .map(|s| Polynomial::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        HomogeneousIdeal::new(ring, polys)
    }

    pub fn zero(ring: &Ring) -> HomogeneousIdeal {
        HomogeneousIdeal::new(ring, vec![]).expect("empty generator list")
    }

    pub fn unit(ring: &Ring) -> HomogeneousIdeal {
        HomogeneousIdeal::new(ring, vec![Polynomial::one(ring)]).expect("constants are homogeneous")
    }

    /// The ideal generated by all generators of positive degree.
    pub fn irrelevant(ring: &Ring) -> HomogeneousIdeal {
        let gens = (0..ring.num_gens())
            .map(|i| Polynomial::var(ring, i))
            .collect();
        HomogeneousIdeal::new(ring, gens).expect("variables are homogeneous")
    }

    pub fn with_budget(mut self, budget: usize) -> HomogeneousIdeal {
        self.budget = budget;
        self.gb = OnceLock::new();
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    fn require_commutative(&self) -> Result<()> {
        if self.ring.is_commutative() {
            Ok(())
        } else {
            Err(Error::Usage(
                "ideal operations need a commutative ring; apply commutative_reduction first"
                    .into(),
            ))
        }
    }

    /// Reduced Gröbner basis (grevlex, declared generator order) of generators plus relations.
    pub fn groebner(&self) -> Result<&[RawPoly]> {
        self.require_commutative()?;
        let result = self.gb.get_or_init(|| {
            let mut input: Vec<RawPoly> = self.ring.relation_basis().to_vec();
            input.extend(self.gens.iter().map(|g| g.terms().clone()));
            groebner_basis(self.ring.field(), ORDER, &input, self.budget)
        });
        result.as_deref().map_err(Clone::clone)
    }

    /// Gröbner elements that are nonzero modulo the ring relations, as ring elements.
    pub fn canonical_generators(&self) -> Result<Vec<Polynomial>> {
        let gb = self.groebner()?;
        Ok(gb
            .iter()
            .map(|g| Polynomial::from_raw(&self.ring, g.clone()))
            .filter(|p| !p.is_zero())
            .collect())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::Usage("membership test across rings".into()));
        }
        let gb = self.groebner()?;
        Ok(normal_form(self.ring.field(), ORDER, f.terms(), gb).is_empty())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(is_unit_ideal(self.groebner()?))
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.canonical_generators()?.is_empty())
    }

    /// `f ∈ √I`, by checking `1 ∈ I + (1 - t f)` in the ring extended by `t`.
    pub fn contains_radical(&self, f: &Polynomial) -> Result<bool> {
        if self.contains(f)? {
            return Ok(true);
        }
        let field = self.ring.field();
        let n = self.ring.num_gens();
        let extend = |p: &RawPoly| -> RawPoly {
            p.iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m.push(0);
                    (m, *c)
                })
                .collect()
        };
        let mut input: Vec<RawPoly> = self.groebner()?.iter().map(extend).collect();
        let mut aux = vec![(vec![0; n + 1], 1)];
        for (m, c) in f.terms() {
            let mut m = m.clone();
            m.push(1);
            aux.push((m, field.neg(*c)));
        }
        input.push(groebner::normalize(field, ORDER, aux));
        let gb = groebner_basis(field, ORDER, &input, self.budget)?;
        Ok(is_unit_ideal(&gb))
    }

    pub fn sum(&self, other: &HomogeneousIdeal) -> HomogeneousIdeal {
        assert!(self.ring == other.ring, "ideal sum across rings");
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        HomogeneousIdeal::new(&self.ring, gens)
            .expect("homogeneous generators")
            .with_budget(self.budget)
    }

    pub fn product(&self, other: &HomogeneousIdeal) -> HomogeneousIdeal {
        assert!(self.ring == other.ring, "ideal product across rings");
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.mul(b)))
            .collect();
        HomogeneousIdeal::new(&self.ring, gens)
            .expect("homogeneous generators")
            .with_budget(self.budget)
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &HomogeneousIdeal) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `self ⊆ √other`, equivalently `V(other) ⊆ V(self)`.
    pub fn is_radical_subset(&self, other: &HomogeneousIdeal) -> Result<bool> {
        for g in &self.gens {
            if !other.contains_radical(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, by comparing reduced Gröbner bases.
    pub fn same_ideal(&self, other: &HomogeneousIdeal) -> Result<bool> {
        Ok(self.ring == other.ring && self.groebner()? == other.groebner()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::GradedPolyRing;
    use proptest::prelude::*;

    fn kxy(p: u32) -> Ring {
        GradedPolyRing::free(&Field::prime(p).unwrap(), &[("x", 2), ("y", 2)]).unwrap()
    }

    #[test]
    fn groebner_examples() {
        let r = kxy(2);
        assert!(HomogeneousIdeal::zero(&r).groebner().unwrap().is_empty());
        let i = HomogeneousIdeal::parse(&r, &["x^2", "x*y"]).unwrap();
        assert_eq!(i.canonical_generators().unwrap().len(), 2);
        let j = HomogeneousIdeal::parse(&r, &["x+y", "x"]).unwrap();
        let gens: Vec<String> = j
            .canonical_generators()
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(gens, vec!["y", "x"]);
    }

    #[test]
    fn membership_examples() {
        let r = kxy(2);
        let x = HomogeneousIdeal::parse(&r, &["x"]).unwrap();
        assert!(x.contains(&Polynomial::zero(&r)).unwrap());
        assert!(!x.contains(&Polynomial::parse(&r, "y").unwrap()).unwrap());
        let i = HomogeneousIdeal::parse(&r, &["x^2", "x*y"]).unwrap();
        assert!(i
            .contains(&Polynomial::parse(&r, "x^2*y").unwrap())
            .unwrap());
    }

    #[test]
    fn radical_examples() {
        let r = kxy(3);
        let i = HomogeneousIdeal::parse(&r, &["x^2"]).unwrap();
        assert!(i
            .contains_radical(&Polynomial::parse(&r, "x").unwrap())
            .unwrap());
        assert!(!i
            .contains_radical(&Polynomial::parse(&r, "y").unwrap())
            .unwrap());
        let unit = HomogeneousIdeal::unit(&r);
        assert!(unit
            .contains_radical(&Polynomial::parse(&r, "x*y + y^2").unwrap())
            .unwrap());
        let j = HomogeneousIdeal::parse(&r, &["x^2*y^3 + x^3*y^2"]).unwrap();
        assert!(j
            .contains_radical(&Polynomial::parse(&r, "x^2*y + x*y^2").unwrap())
            .unwrap());
        assert!(!j
            .contains_radical(&Polynomial::parse(&r, "x*y").unwrap())
            .unwrap());
    }

    #[test]
    fn rejects_inhomogeneous_and_noncommutative() {
        let r = kxy(2);
        assert!(HomogeneousIdeal::parse(&r, &["x + 1"]).is_err());
        let s =
            GradedPolyRing::free(&Field::prime(3).unwrap(), &[("eta", 1), ("theta", 2)]).unwrap();
        let i = HomogeneousIdeal::parse(&s, &["theta"]).unwrap();
        assert!(matches!(i.groebner(), Err(Error::Usage(_))));
    }

    fn poly_strategy() -> impl Strategy<Value = (Vec<(u32, u32, i64)>,)> {
        (prop::collection::vec((0u32..3, 0u32..3, 0i64..5), 1..4),)
    }

    fn build(r: &Ring, terms: &[(u32, u32, i64)], degree: u32) -> Polynomial {
        // Homogenize by forcing the y-exponent.
        let raw = terms
            .iter()
            .filter(|(a, _, _)| *a <= degree)
            .map(|&(a, _, c)| (vec![a, degree - a], r.field().from_int(c)))
            .collect();
        Polynomial::from_raw(r, raw)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn groebner_is_idempotent(a in poly_strategy(), b in poly_strategy()) {
            let r = kxy(3);
            let i = HomogeneousIdeal::new(&r, vec![build(&r, &a.0, 2), build(&r, &b.0, 3)]).unwrap();
            let again = HomogeneousIdeal::new(&r, i.canonical_generators().unwrap()).unwrap();
            prop_assert_eq!(i.groebner().unwrap(), again.groebner().unwrap());
        }

        #[test]
        fn membership_is_closed_under_combinations(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            let r = kxy(5);
            let f = build(&r, &a.0, 2);
            let g = build(&r, &b.0, 2);
            let i = HomogeneousIdeal::new(&r, vec![f.clone(), g.clone()]).unwrap();
            let coef = build(&r, &c.0, 1);
            let combo = coef.mul(&f).add(&Polynomial::var(&r, 0).mul(&g));
            prop_assert!(i.contains(&combo).unwrap());
        }

        #[test]
        fn radical_membership_is_power_invariant(a in poly_strategy(), b in poly_strategy(), k in 2u64..4) {
            let r = kxy(2);
            let i = HomogeneousIdeal::new(&r, vec![build(&r, &a.0, 2)]).unwrap();
            let f = build(&r, &b.0, 1);
            prop_assert_eq!(i.contains_radical(&f).unwrap(), i.contains_radical(&f.pow(k)).unwrap());
        }
    }
}
