use std::collections::BTreeMap;

use super::{GroupData, GroupModule};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// A subgroup given by generator words (exponent vectors over the ambient generators),
/// presented as the product of the cyclic groups they generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: GroupData,
    basis: Vec<Vec<u32>>,
    group: GroupData,
    // Ambient element -> exponent vector over the subgroup generators.
    coords: BTreeMap<Vec<u32>, Vec<u32>>,
}

impl Subgroup {
    pub fn new(ambient: &GroupData, basis: Vec<Vec<u32>>) -> Result<Subgroup> {
        let r = ambient.rank();
        let mut words = Vec::with_capacity(basis.len());
        for w in &basis {
            if w.len() != r {
                return Err(Error::Usage(format!(
                    "subgroup word {w:?} needs {r} exponents"
                )));
            }
            let reduced: Vec<u32> = w.iter().zip(ambient.orders()).map(|(x, o)| x % o).collect();
            if reduced.iter().all(|&x| x == 0) {
                return Err(Error::Usage("subgroup generator is the identity".into()));
            }
            words.push(reduced);
        }
        let orders: Vec<u32> = words.iter().map(|w| ambient.element_order(w)).collect();
        let group = GroupData::new(ambient.field(), &orders)?;
        let mut coords = BTreeMap::new();
        for e in group.elements() {
            let mut x = vec![0u32; r];
            for (w, &k) in words.iter().zip(&e) {
                for _ in 0..k {
                    x = ambient.add(&x, w);
                }
            }
            if coords.insert(x, e).is_some() {
                return Err(Error::Usage(
                    "subgroup words are not independent (their product map is not injective)"
                        .into(),
                ));
            }
        }
        Ok(Subgroup {
            ambient: ambient.clone(),
            basis: words,
            group,
            coords,
        })
    }

    pub fn whole(ambient: &GroupData) -> Subgroup {
        let basis = (0..ambient.rank())
            .map(|i| {
                let mut w = vec![0; ambient.rank()];
                w[i] = 1;
                w
            })
            .collect();
        Subgroup::new(ambient, basis).expect("standard generators are independent")
    }

    pub fn trivial(ambient: &GroupData) -> Subgroup {
        Subgroup::new(ambient, vec![]).expect("empty basis")
    }

    pub fn ambient(&self) -> &GroupData {
        &self.ambient
    }

    /// The subgroup as an abstract group on its own generators.
    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn index(&self) -> usize {
        self.ambient.order() / self.order()
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        self.coords.contains_key(x)
    }

    /// Coordinates of an ambient element of the subgroup over the subgroup generators.
    pub fn coordinates(&self, x: &[u32]) -> Option<&Vec<u32>> {
        self.coords.get(x)
    }

    /// Coset representatives: the lexicographically first element of each coset.
    pub fn coset_representatives(&self) -> Vec<Vec<u32>> {
        let mut reps: Vec<Vec<u32>> = Vec::new();
        for g in self.ambient.elements() {
            let neg = self.ambient.neg(&g);
            if !reps
                .iter()
                .any(|c| self.contains(&self.ambient.add(c, &neg)))
            {
                reps.push(g);
            }
        }
        reps
    }

    pub fn describe(&self) -> String {
        let words: Vec<String> = self
            .basis
            .iter()
            .map(|w| {
                format!(
                    "({})",
                    w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        format!("<{}> in {}", words.join(", "), self.ambient.describe())
    }
}

impl GroupModule {
    /// Restriction: generator `j` of `H` acts by the ambient action of its word.
    pub fn restrict(&self, h: &Subgroup) -> Result<GroupModule> {
        if self.group() != h.ambient() {
            return Err(Error::Usage(
                "restriction to a subgroup of a different group".into(),
            ));
        }
        let gens = h.basis().iter().map(|w| self.act(w)).collect();
        Ok(GroupModule {
            group: h.group().clone(),
            dim: self.dim(),
            gens,
        })
    }

    /// Induction `Y ↑ G = ⊕_c e_c ⊗ Y` over the lexicographic coset representatives `c`;
    /// `g · (e_c ⊗ y) = e_{c'} ⊗ h·y` where `g + c = c' + h`.
    pub fn induce(&self, h: &Subgroup) -> Result<GroupModule> {
        if self.group() != h.group() {
            return Err(Error::Usage(
                "induced module must live over the subgroup".into(),
            ));
        }
        let g = h.ambient();
        let reps = h.coset_representatives();
        let n = self.dim();
        let dim = reps.len() * n;
        let mut gens = Vec::with_capacity(g.rank());
        for i in 0..g.rank() {
            let mut unit = vec![0u32; g.rank()];
            unit[i] = 1;
            let mut m = Matrix::zeros(g.field(), dim, dim);
            for (ci, c) in reps.iter().enumerate() {
                let moved = g.add(&unit, c);
                let (cj, hw) = reps
                    .iter()
                    .enumerate()
                    .find_map(|(j, c2)| {
                        h.coordinates(&g.add(&moved, &g.neg(c2)))
                            .map(|w| (j, w.clone()))
                    })
                    .expect("coset representatives cover the group");
                m.set_block(cj * n, ci * n, &self.act(&hw));
            }
            gens.push(m);
        }
        Ok(GroupModule {
            group: g.clone(),
            dim,
            gens,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::modrep::hom_basis;

    fn e(p: u32, r: usize) -> GroupData {
        GroupData::elementary(p, r).unwrap()
    }

    #[test]
    fn subgroup_validation() {
        let g = e(3, 2);
        assert!(Subgroup::new(&g, vec![vec![1, 2]]).is_ok());
        assert!(Subgroup::new(&g, vec![vec![1, 1], vec![2, 2]]).is_err());
        assert!(Subgroup::new(&g, vec![vec![0, 0]]).is_err());
        assert_eq!(
            Subgroup::new(&g, vec![vec![1, 1]])
                .unwrap()
                .coset_representatives(),
            vec![vec![0, 0], vec![0, 1], vec![0, 2]]
        );
        let z4 = GroupData::new(&Field::prime(2).unwrap(), &[4]).unwrap();
        let h = Subgroup::new(&z4, vec![vec![2]]).unwrap();
        assert_eq!(h.group().orders(), &[2]);
        assert_eq!(h.index(), 2);
    }

    #[test]
    fn restriction_examples() {
        let g = e(2, 2);
        let a = GroupModule::free(&g, 1);
        assert_eq!(a.restrict(&Subgroup::whole(&g)).unwrap(), a);
        for w in [vec![1, 0], vec![0, 1], vec![1, 1]] {
            let h = Subgroup::new(&g, vec![w]).unwrap();
            let r = a.restrict(&h).unwrap();
            assert!(r.is_free());
            assert_eq!(r.dim() / h.order(), 2);
            assert_eq!(
                GroupModule::trivial(&g).restrict(&h).unwrap(),
                GroupModule::trivial(h.group())
            );
        }
    }

    #[test]
    fn induction_examples() {
        let g = e(2, 2);
        let y = GroupModule::shifted_cyclic(&g, &[1, 1], 2).unwrap();
        assert_eq!(y.induce(&Subgroup::whole(&g)).unwrap(), y);
        let triv = Subgroup::trivial(&g);
        let ind = GroupModule::trivial(triv.group()).induce(&triv).unwrap();
        assert_eq!(ind, GroupModule::free(&g, 1));
        let h = Subgroup::new(&g, vec![vec![1, 1]]).unwrap();
        let k = GroupModule::trivial(h.group());
        let kh = k.induce(&h).unwrap();
        assert_eq!(kh.dim(), 2);
        assert!(GroupModule::from_matrices(&g, 2, kh.generators().to_vec()).is_ok());
        // Index-3 induction over a non-elementary group.
        let z9 = GroupData::new(&Field::prime(3).unwrap(), &[9, 3]).unwrap();
        let sub = Subgroup::new(&z9, vec![vec![3, 1]]).unwrap();
        let m = GroupModule::shifted_cyclic(sub.group(), &[1], 2).unwrap();
        let im = m.induce(&sub).unwrap();
        assert_eq!(im.dim(), 2 * sub.index());
        assert!(GroupModule::from_matrices(&z9, im.dim(), im.generators().to_vec()).is_ok());
    }

    #[test]
    fn restriction_of_induction_contains_original() {
        // Mackey for abelian groups: (Y↑G)↓H ≅ Y^{[G:H]}; check via Hom dimensions.
        let g = e(3, 2);
        let h = Subgroup::new(&g, vec![vec![1, 2]]).unwrap();
        let y = GroupModule::shifted_cyclic(h.group(), &[1], 2).unwrap();
        let back = y.induce(&h).unwrap().restrict(&h).unwrap();
        let sum =
            GroupModule::direct_sum_all(h.group(), &[y.clone(), y.clone(), y.clone()]).unwrap();
        assert_eq!(
            hom_basis(&back, &back).unwrap().len(),
            hom_basis(&sum, &sum).unwrap().len()
        );
    }
}
