use std::sync::Arc;

use super::groebner::{groebner_basis, normal_form, MonomialOrder, RawPoly};
use super::{GradedPolyRing, HomogeneousIdeal, Polynomial, Ring, DEFAULT_SPAIR_BUDGET};
use crate::error::{Error, Result};

/// A degree-preserving algebra map given by the images of the source generators.
#[derive(Clone, Debug)]
pub struct RingHom {
    source: Ring,
    target: Ring,
    images: Vec<Polynomial>,
}

impl RingHom {
    pub fn new(source: &Ring, target: &Ring, images: Vec<Polynomial>) -> Result<RingHom> {
        if source.characteristic() != target.characteristic() {
            return Err(Error::Usage(
                "ring map between different characteristics".into(),
            ));
        }
        if images.len() != source.num_gens() {
            return Err(Error::Usage(format!(
                "ring map needs {} images, got {}",
                source.num_gens(),
                images.len()
            )));
        }
        for (g, img) in source.generators().iter().zip(&images) {
            if img.ring() != target {
                return Err(Error::Usage(format!(
                    "image of {} lives in the wrong ring",
                    g.name
                )));
            }
            if !img.is_zero() && img.degree() != Some(g.degree) {
                return Err(Error::Usage(format!(
                    "image of {} is not homogeneous of degree {}",
                    g.name, g.degree
                )));
            }
        }
        let hom = RingHom {
            source: source.clone(),
            target: target.clone(),
            images,
        };
        for r in source.relations() {
            if !hom.apply_raw(r).is_zero() {
                return Err(Error::Usage(format!(
                    "relation {} does not map to zero",
                    source.format_raw(r)
                )));
            }
        }
        Ok(hom)
    }

    /// Images given as polynomial strings in the target ring.
    pub fn parse(source: &Ring, target: &Ring, images: &[&str]) -> Result<RingHom> {
        let imgs = images
            .iter()
            .map(|s| Polynomial::parse(target, s))
            .collect::<Result<Vec<_>>>()?;
        RingHom::new(source, target, imgs)
    }

    pub fn identity(ring: &Ring) -> RingHom {
        let images = (0..ring.num_gens())
            .map(|i| Polynomial::var(ring, i))
            .collect();
        RingHom {
            source: ring.clone(),
            target: ring.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    fn apply_raw(&self, f: &RawPoly) -> Polynomial {
        let mut acc = Polynomial::zero(&self.target);
        for (m, c) in f {
            let mut term = Polynomial::constant(&self.target, 1).scale(*c);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&self.images[i].pow(e as u64));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        assert!(
            f.ring() == &self.source,
            "ring map applied to an element of another ring"
        );
        self.apply_raw(f.terms())
    }

    /// The ideal generated by the images of `ideal`'s generators.
    pub fn apply_ideal(&self, ideal: &HomogeneousIdeal) -> HomogeneousIdeal {
        let gens = ideal.generators().iter().map(|g| self.apply(g)).collect();
        HomogeneousIdeal::new(&self.target, gens)
            .expect("images of homogeneous elements are homogeneous")
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RingHom) -> Result<RingHom> {
        if inner.target != self.source {
            return Err(Error::Usage("composition of incompatible ring maps".into()));
        }
        let images = inner.images.iter().map(|g| self.apply(g)).collect();
        Ok(RingHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    fn require_commutative(&self) -> Result<()> {
        if self.source.is_commutative() && self.target.is_commutative() {
            Ok(())
        } else {
            Err(Error::Usage(
                "elimination needs commutative rings; apply commutative_reduction first".into(),
            ))
        }
    }

    /// Graph ideal in `k[target vars, source vars]`: `(x_i - φ(x_i))` plus the target relations
    /// plus `extra` (target polynomials).
    fn graph_input(&self, extra: &[RawPoly]) -> Vec<RawPoly> {
        let m = self.target.num_gens();
        let n = self.source.num_gens();
        let field = self.target.field();
        let lift_target = |p: &RawPoly| -> RawPoly {
            p.iter()
                .map(|(mono, c)| {
                    let mut full = mono.clone();
                    full.extend(std::iter::repeat_n(0, n));
                    (full, *c)
                })
                .collect()
        };
        let order = MonomialOrder::Elimination(m);
        let mut input: Vec<RawPoly> = Vec::new();
        for (i, img) in self.images.iter().enumerate() {
            let mut terms = lift_target(img.terms());
            terms = terms
                .into_iter()
                .map(|(mono, c)| (mono, field.neg(c)))
                .collect();
            let mut x = vec![0; m + n];
            x[m + i] = 1;
            terms.push((x, 1));
            input.push(super::groebner::normalize(field, order, terms));
        }
        for r in self.target.relation_basis().iter().chain(extra) {
            input.push(super::groebner::normalize(field, order, lift_target(r)));
        }
        input
    }

    /// `φ^{-1}(J)` as an ideal of the source, by elimination over the graph ideal.
    pub fn contract(&self, j: &HomogeneousIdeal) -> Result<HomogeneousIdeal> {
        self.require_commutative()?;
        if j.ring() != &self.target {
            return Err(Error::Usage(
                "contract needs an ideal of the target ring".into(),
            ));
        }
        let m = self.target.num_gens();
        let order = MonomialOrder::Elimination(m);
        let extra: Vec<RawPoly> = j.generators().iter().map(|g| g.terms().clone()).collect();
        let gb = groebner_basis(
            self.target.field(),
            order,
            &self.graph_input(&extra),
            DEFAULT_SPAIR_BUDGET,
        )?;
        let gens = gb
            .into_iter()
            .filter(|g| g.iter().all(|(mono, _)| mono[..m].iter().all(|&e| e == 0)))
            .map(|g| {
                Polynomial::from_raw(
                    &self.source,
                    g.into_iter()
                        .map(|(mono, c)| (mono[m..].to_vec(), c))
                        .collect(),
                )
            })
            .filter(|p| !p.is_zero())
            .collect();
        HomogeneousIdeal::new(&self.source, gens)
    }

    pub fn kernel(&self) -> Result<HomogeneousIdeal> {
        self.contract(&HomogeneousIdeal::zero(&self.target))
    }

    /// Whether `f` lies in the image of this map (subalgebra membership).
    pub fn image_contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.image_contains_all(std::slice::from_ref(f))?[0])
    }

    /// Subalgebra membership for several elements against one elimination basis.
    pub fn image_contains_all(&self, fs: &[Polynomial]) -> Result<Vec<bool>> {
        self.require_commutative()?;
        if fs.iter().any(|f| f.ring() != &self.target) {
            return Err(Error::Usage(
                "image membership needs an element of the target".into(),
            ));
        }
        let m = self.target.num_gens();
        let n = self.source.num_gens();
        let order = MonomialOrder::Elimination(m);
        let field = self.target.field();
        let gb = groebner_basis(field, order, &self.graph_input(&[]), DEFAULT_SPAIR_BUDGET)?;
        Ok(fs
            .iter()
            .map(|f| {
                let lifted = super::groebner::normalize(
                    field,
                    order,
                    f.terms()
                        .iter()
                        .map(|(mono, c)| {
                            let mut full = mono.clone();
                            full.extend(std::iter::repeat_n(0, n));
                            (full, *c)
                        })
                        .collect(),
                );
                let nf = normal_form(field, order, &lifted, &gb);
                nf.iter().all(|(mono, _)| mono[..m].iter().all(|&e| e == 0))
            })
            .collect())
    }
}

/// Quotient by the odd generators: the identity when there are none (in particular for `p = 2`).
pub fn commutative_reduction(ring: &Ring) -> (Ring, RingHom) {
    if ring.is_commutative() {
        return (ring.clone(), RingHom::identity(ring));
    }
    let keep: Vec<usize> = (0..ring.num_gens())
        .filter(|&i| !ring.gens[i].odd)
        .collect();
    let drop_odd = |p: &RawPoly| -> RawPoly {
        p.iter()
            .map(|(m, c)| (keep.iter().map(|&i| m[i]).collect(), *c))
            .collect()
    };
    let gens = keep.iter().map(|&i| ring.gens[i].clone()).collect();
    let relations: Vec<RawPoly> = ring.relations.iter().map(drop_odd).collect();
    let relation_gb = groebner_basis(
        &ring.field,
        MonomialOrder::GrevLex,
        &relations,
        DEFAULT_SPAIR_BUDGET,
    )
    .expect("relations already have a Gröbner basis");
    let reduced: Ring = Arc::new(GradedPolyRing {
        field: ring.field.clone(),
        gens,
        relations,
        relation_gb,
    });
    let mut next = 0;
    let images = ring
        .gens
        .iter()
        .map(|g| {
            if g.odd {
                Polynomial::zero(&reduced)
            } else {
                next += 1;
                Polynomial::var(&reduced, next - 1)
            }
        })
        .collect();
    let hom = RingHom {
        source: ring.clone(),
        target: reduced.clone(),
        images,
    };
    (reduced, hom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn contract_diagonal() {
        let src = GradedPolyRing::free(&f(3), &[("x", 2), ("y", 2)]).unwrap();
        let tgt = GradedPolyRing::free(&f(3), &[("t", 2)]).unwrap();
        let phi = RingHom::parse(&src, &tgt, &["t", "t"]).unwrap();
        let ker = phi.kernel().unwrap();
        let expected = HomogeneousIdeal::parse(&src, &["x - y"]).unwrap();
        assert!(ker.same_ideal(&expected).unwrap());
    }

    #[test]
    fn contract_augmentation() {
        let src = GradedPolyRing::free(&f(2), &[("x", 1)]).unwrap();
        let tgt = GradedPolyRing::free(&f(2), &[]).unwrap();
        let phi = RingHom::new(&src, &tgt, vec![Polynomial::zero(&tgt)]).unwrap();
        let ker = phi.kernel().unwrap();
        assert!(ker
            .same_ideal(&HomogeneousIdeal::parse(&src, &["x"]).unwrap())
            .unwrap());
    }

    #[test]
    fn contract_of_nonzero_ideal() {
        // k[x] -> k[t], x -> t^2; preimage of (t^3) is (x^2).
        let src = GradedPolyRing::free(&f(5), &[("x", 4)]).unwrap();
        let tgt = GradedPolyRing::free(&f(5), &[("t", 2)]).unwrap();
        let phi = RingHom::parse(&src, &tgt, &["t^2"]).unwrap();
        let j = HomogeneousIdeal::parse(&tgt, &["t^3"]).unwrap();
        let c = phi.contract(&j).unwrap();
        assert!(c
            .same_ideal(&HomogeneousIdeal::parse(&src, &["x^2"]).unwrap())
            .unwrap());
    }

    #[test]
    fn rejects_bad_maps() {
        let src = GradedPolyRing::new(&f(2), &[("eta", 1), ("theta", 2)], &["eta^2"]).unwrap();
        let tgt = GradedPolyRing::free(&f(2), &[("u", 1)]).unwrap();
        assert!(RingHom::parse(&src, &tgt, &["u", "u^2"]).is_err());
        assert!(RingHom::parse(&src, &tgt, &["0", "u"]).is_err());
        assert!(RingHom::parse(&src, &tgt, &["0", "u^2"]).is_ok());
    }

    #[test]
    fn commutative_reduction_examples() {
        let r = GradedPolyRing::free(&f(3), &[("eta1", 1), ("theta1", 2)]).unwrap();
        let (red, q) = commutative_reduction(&r);
        assert_eq!(red.num_gens(), 1);
        assert_eq!(red.generators()[0].name, "theta1");
        assert!(q.apply(&Polynomial::parse(&r, "eta1").unwrap()).is_zero());
        assert_eq!(
            q.apply(&Polynomial::parse(&r, "theta1^2").unwrap())
                .to_string(),
            "theta1^2"
        );

        let r2 = GradedPolyRing::new(&f(2), &[("eta", 1), ("theta", 2)], &["eta^2"]).unwrap();
        let (red2, _) = commutative_reduction(&r2);
        assert_eq!(red2, r2);
    }

    #[test]
    fn image_membership() {
        // Z/4 datum: k[eta, theta]/(eta^2) -> k[u], eta -> 0, theta -> u^2.
        let src = GradedPolyRing::new(&f(2), &[("eta", 1), ("theta", 2)], &["eta^2"]).unwrap();
        let tgt = GradedPolyRing::free(&f(2), &[("u", 1)]).unwrap();
        let phi = RingHom::parse(&src, &tgt, &["0", "u^2"]).unwrap();
        assert!(phi
            .image_contains(&Polynomial::parse(&tgt, "u^2").unwrap())
            .unwrap());
        assert!(!phi
            .image_contains(&Polynomial::parse(&tgt, "u").unwrap())
            .unwrap());
        assert!(!phi
            .image_contains(&Polynomial::parse(&tgt, "u^3").unwrap())
            .unwrap());
        let ker = phi.kernel().unwrap();
        assert!(ker
            .same_ideal(&HomogeneousIdeal::parse(&src, &["eta"]).unwrap())
            .unwrap());
    }

    #[test]
    fn compose_and_identity() {
        let a = GradedPolyRing::free(&f(3), &[("x", 2)]).unwrap();
        let b = GradedPolyRing::free(&f(3), &[("y", 2), ("z", 2)]).unwrap();
        let phi = RingHom::parse(&a, &b, &["y + z"]).unwrap();
        let psi = RingHom::parse(&b, &a, &["x", "2*x"]).unwrap();
        let c = psi.compose(&phi).unwrap();
        assert_eq!(c.images()[0], Polynomial::parse(&a, "0").unwrap());
        let id = RingHom::identity(&a).compose(&psi).unwrap();
        assert_eq!(id.images(), psi.images());
    }
}
