//! Finite-dimensional modules over group algebras of finite abelian p-groups.
//!
//! A module is stored by the matrices of the group generators `G_i`; the nilpotent
//! generators of `kG = k[z]/(z_i^{ord_i})` are `z_i = G_i - I`.

pub mod corpus;
mod hom;
mod subgroup;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::{EchelonBasis, Matrix};

pub use hom::{frobenius_witness, hom_basis, tensor_swap, ModuleMap};
pub use subgroup::Subgroup;

/// `Z/ord_1 × … × Z/ord_r` with every order a power of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupData {
    field: Field,
    orders: Vec<u32>,
}

impl GroupData {
    pub fn new(field: &Field, orders: &[u32]) -> Result<GroupData> {
        if !field.is_prime_field() {
            return Err(Error::Usage(
                "group algebras are built over prime fields".into(),
            ));
        }
        let p = field.characteristic();
        for &o in orders {
            let mut q = o;
            while q > 1 && q % p == 0 {
                q /= p;
            }
            if o < p || q != 1 {
                return Err(Error::Usage(format!(
                    "cyclic factor order {o} is not a positive power of {p}"
                )));
            }
        }
        Ok(GroupData {
            field: field.clone(),
            orders: orders.to_vec(),
        })
    }

    /// `(Z/p)^r`.
    pub fn elementary(p: u32, r: usize) -> Result<GroupData> {
        GroupData::new(&Field::prime(p)?, &vec![p; r])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&o| o as usize).product()
    }

    pub fn is_elementary(&self) -> bool {
        let p = self.characteristic();
        self.orders.iter().all(|&o| o == p)
    }

    /// All elements as exponent vectors, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for &o in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..o).map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        out
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), o)| (x + y) % o)
            .collect()
    }

    pub fn neg(&self, a: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(&self.orders)
            .map(|(x, o)| (o - x % o) % o)
            .collect()
    }

    /// Order of the element with exponent vector `w`.
    pub fn element_order(&self, w: &[u32]) -> u32 {
        w.iter()
            .zip(&self.orders)
            .map(|(&x, &o)| o / gcd(x % o, o))
            .max()
            .unwrap_or(1)
    }

    pub fn describe(&self) -> String {
        if self.orders.is_empty() {
            return "1".into();
        }
        self.orders
            .iter()
            .map(|o| format!("Z/{o}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if a == 0 {
        b
    } else {
        gcd(b % a, a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModule {
    group: GroupData,
    dim: usize,
    gens: Vec<Matrix>,
}

impl GroupModule {
    /// Validates shapes, commutativity and `G_i^{ord_i} = I`.
    pub fn from_matrices(group: &GroupData, dim: usize, gens: Vec<Matrix>) -> Result<GroupModule> {
        if gens.len() != group.rank() {
            return Err(Error::Usage(format!(
                "module needs {} generator matrices, got {}",
                group.rank(),
                gens.len()
            )));
        }
        for (i, g) in gens.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::Usage(format!(
                    "g{} is {}x{}, expected {dim}x{dim}",
                    i + 1,
                    g.rows(),
                    g.cols()
                )));
            }
            if g.field() != group.field() {
                return Err(Error::Usage(format!("g{} is over the wrong field", i + 1)));
            }
            let o = group.orders[i];
            if g.pow(o as u64) != Matrix::identity(group.field(), dim) {
                return Err(Error::Invalid(format!("g{}^{o} != I", i + 1)));
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if gens[i].mul(&gens[j]) != gens[j].mul(&gens[i]) {
                    return Err(Error::Invalid(format!(
                        "g{}*g{} != g{}*g{}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(GroupModule {
            group: group.clone(),
            dim,
            gens,
        })
    }

    /// Build from the nilpotent actions `z_i`, setting `G_i = I + z_i`.
    pub fn from_nilpotents(group: &GroupData, dim: usize, zs: Vec<Matrix>) -> Result<GroupModule> {
        let id = Matrix::identity(group.field(), dim);
        GroupModule::from_matrices(group, dim, zs.iter().map(|z| id.add(z)).collect())
    }

    pub fn trivial(group: &GroupData) -> GroupModule {
        let id = Matrix::identity(group.field(), 1);
        GroupModule {
            group: group.clone(),
            dim: 1,
            gens: vec![id; group.rank()],
        }
    }

    /// `kG^rank`, basis `e_j ⊗ g` with group elements in lexicographic order.
    pub fn free(group: &GroupData, rank: usize) -> GroupModule {
        let elems = group.elements();
        let index = |v: &[u32]| -> usize {
            v.iter()
                .zip(&group.orders)
                .fold(0, |acc, (&x, &o)| acc * o as usize + x as usize)
        };
        let n = elems.len();
        let gens = (0..group.rank())
            .map(|i| {
                let mut unit = vec![0u32; group.rank()];
                unit[i] = 1;
                let mut m = Matrix::zeros(group.field(), n, n);
                for (c, e) in elems.iter().enumerate() {
                    m.set(index(&group.add(e, &unit)), c, 1);
                }
                let blocks: Vec<&Matrix> = std::iter::repeat_n(&m, rank).collect();
                Matrix::block_diag(group.field(), &blocks)
            })
            .collect();
        GroupModule {
            group: group.clone(),
            dim: n * rank,
            gens,
        }
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn field(&self) -> &Field {
        self.group.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    /// `z_i = G_i - I`.
    pub fn nilpotent(&self, i: usize) -> Matrix {
        self.gens[i].sub(&Matrix::identity(self.field(), self.dim))
    }

    pub fn nilpotents(&self) -> Vec<Matrix> {
        (0..self.group.rank()).map(|i| self.nilpotent(i)).collect()
    }

    /// Action of the group element with exponent vector `w`.
    pub fn act(&self, w: &[u32]) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dim);
        for (g, &e) in self.gens.iter().zip(w) {
            if e > 0 {
                m = m.mul(&g.pow(e as u64));
            }
        }
        m
    }

    pub fn direct_sum(&self, other: &GroupModule) -> Result<GroupModule> {
        self.same_group(other)?;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| Matrix::block_diag(self.field(), &[a, b]))
            .collect();
        Ok(GroupModule {
            group: self.group.clone(),
            dim: self.dim + other.dim,
            gens,
        })
    }

    pub fn direct_sum_all(group: &GroupData, parts: &[GroupModule]) -> Result<GroupModule> {
        let mut acc = GroupModule {
            group: group.clone(),
            dim: 0,
            gens: vec![Matrix::zeros(group.field(), 0, 0); group.rank()],
        };
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    fn same_group(&self, other: &GroupModule) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::Usage(format!(
                "modules over different groups ({} vs {})",
                self.group.describe(),
                other.group.describe()
            )))
        }
    }

    /// Diagonal action `G_i ⊗ G_i`; basis index `a * dim(other) + b`.
    pub fn tensor_diag(&self, other: &GroupModule) -> Result<GroupModule> {
        self.same_group(other)?;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.kron(b))
            .collect();
        Ok(GroupModule {
            group: self.group.clone(),
            dim: self.dim * other.dim,
            gens,
        })
    }

    /// Contragredient action `(G_i^{-1})ᵀ`.
    pub fn dual(&self) -> GroupModule {
        let gens = self
            .gens
            .iter()
            .zip(&self.group.orders)
            .map(|(g, &o)| g.pow(o as u64 - 1).transpose())
            .collect();
        GroupModule {
            group: self.group.clone(),
            dim: self.dim,
            gens,
        }
    }

    /// Projective (= free, as `kG` is local) iff the norm element `Π z_i^{ord_i - 1}` acts
    /// with rank `dim / |G|`.
    pub fn is_free(&self) -> bool {
        let order = self.group.order();
        if !self.dim.is_multiple_of(order) {
            return false;
        }
        self.free_rank() == self.dim / order
    }

    fn norm_matrix(&self) -> Matrix {
        let mut norm = Matrix::identity(self.field(), self.dim);
        for (i, &o) in self.group.orders.iter().enumerate() {
            norm = norm.mul(&self.nilpotent(i).pow(o as u64 - 1));
        }
        norm
    }

    /// Number of free summands in a decomposition of the module: the rank of the norm element.
    pub fn free_rank(&self) -> usize {
        self.norm_matrix().rank()
    }

    /// The module with its free summands removed. Vectors `v` whose norms `N v` are
    /// independent generate a free submodule, which is a summand because `kG` is
    /// self-injective; the quotient by it is the core.
    pub fn stable_core(&self) -> GroupModule {
        let norm = self.norm_matrix();
        let (_, pivots) = norm.rref();
        if pivots.is_empty() {
            return self.clone();
        }
        let vectors: Vec<Vec<Elem>> = pivots
            .iter()
            .map(|&c| {
                let mut v = vec![0; self.dim];
                v[c] = 1;
                v
            })
            .collect();
        self.quotient(&vectors)
    }

    /// Smallest submodule containing the given vectors.
    pub fn submodule_basis(&self, vectors: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
        let mut basis = EchelonBasis::new(self.field(), self.dim);
        let mut queue: Vec<Vec<Elem>> = vectors.to_vec();
        while let Some(v) = queue.pop() {
            if basis.insert(&v) {
                for g in &self.gens {
                    queue.push(g.mul_vec(&v));
                }
            }
        }
        basis.basis().to_vec()
    }

    /// The submodule generated by `vectors`, on its echelon basis.
    pub fn submodule(&self, vectors: &[Vec<Elem>]) -> GroupModule {
        let basis = self.submodule_basis(vectors);
        let f = self.field();
        let mut echelon = EchelonBasis::new(f, self.dim);
        for v in &basis {
            echelon.insert(v);
        }
        let rows = echelon.basis().to_vec();
        let pivots = echelon.pivots().to_vec();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                // Coordinates of a vector in the span are its entries at the pivots.
                let cols: Vec<Vec<Elem>> = rows
                    .iter()
                    .map(|v| pivots.iter().map(|&pc| g.mul_vec(v)[pc]).collect())
                    .collect();
                Matrix::from_columns(f, rows.len(), &cols)
            })
            .collect();
        GroupModule {
            group: self.group.clone(),
            dim: rows.len(),
            gens,
        }
    }

    /// Quotient by the submodule generated by `vectors`, on the complement spanned by the
    /// non-pivot standard basis vectors.
    pub fn quotient(&self, vectors: &[Vec<Elem>]) -> GroupModule {
        let mut sub = EchelonBasis::new(self.field(), self.dim);
        for v in self.submodule_basis(vectors) {
            sub.insert(&v);
        }
        let pivots: Vec<usize> = sub.pivots().to_vec();
        let free_cols: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let q = free_cols.len();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut m = Matrix::zeros(self.field(), q, q);
                for (j, &c) in free_cols.iter().enumerate() {
                    let mut image = g.column(c);
                    sub.reduce(&mut image);
                    for (i, &r) in free_cols.iter().enumerate() {
                        m.set(i, j, image[r]);
                    }
                }
                m
            })
            .collect();
        GroupModule {
            group: self.group.clone(),
            dim: q,
            gens,
        }
    }

    /// The module `k[u]/(u^len)` with `z_i` acting as `alpha_i u` (a cyclic shifted-subgroup
    /// module for elementary abelian groups).
    pub fn shifted_cyclic(group: &GroupData, alpha: &[Elem], len: usize) -> Result<GroupModule> {
        if alpha.len() != group.rank() {
            return Err(Error::Usage(
                "shifted_cyclic needs one coefficient per generator".into(),
            ));
        }
        let f = group.field();
        let mut u = Matrix::zeros(f, len, len);
        for i in 0..len.saturating_sub(1) {
            u.set(i + 1, i, 1);
        }
        GroupModule::from_nilpotents(group, len, alpha.iter().map(|&a| u.scale(a)).collect())
    }

    pub fn describe(&self) -> String {
        format!("module of dim {} over {}", self.dim, self.group.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(p: u32, r: usize) -> GroupData {
        GroupData::elementary(p, r).unwrap()
    }

    #[test]
    fn group_validation() {
        let f2 = Field::prime(2).unwrap();
        assert!(GroupData::new(&f2, &[2, 4]).is_ok());
        assert!(GroupData::new(&f2, &[3]).is_err());
        assert!(GroupData::new(&f2, &[1]).is_err());
        assert_eq!(e(3, 2).order(), 9);
        assert_eq!(GroupData::new(&f2, &[4]).unwrap().element_order(&[2]), 2);
    }

    #[test]
    fn trivial_and_free() {
        let g = e(2, 2);
        let k = GroupModule::trivial(&g);
        assert!(k
            .generators()
            .iter()
            .all(|m| *m == Matrix::identity(g.field(), 1)));
        let a = GroupModule::free(&g, 1);
        assert_eq!(a.dim(), 4);
        assert!(a.is_free());
        assert!(!k.is_free());
        // Regular representation: g1 moves (0,0) to (1,0), index 2.
        assert_eq!(a.generators()[0].get(2, 0), 1);
    }

    #[test]
    fn from_matrices_validation() {
        let g = e(2, 2);
        let f = g.field().clone();
        let a = Matrix::from_int_rows(&f, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = Matrix::from_int_rows(&f, &[vec![1, 0], vec![1, 1]]).unwrap();
        let err = GroupModule::from_matrices(&g, 2, vec![a.clone(), b]).unwrap_err();
        assert!(err.to_string().contains("g1*g2"), "{err}");
        let g3 = e(3, 1);
        let bad = Matrix::from_int_rows(g3.field(), &[vec![2]]).unwrap();
        assert!(GroupModule::from_matrices(&g3, 1, vec![bad])
            .unwrap_err()
            .to_string()
            .contains("g1^3"));
        assert!(GroupModule::from_matrices(&g, 2, vec![a.clone(), a]).is_ok());
    }

    #[test]
    fn tensor_and_dual() {
        let g = e(3, 2);
        let k = GroupModule::trivial(&g);
        let m = GroupModule::shifted_cyclic(&g, &[1, 2], 2).unwrap();
        assert_eq!(k.tensor_diag(&m).unwrap(), m);
        let a = GroupModule::free(&g, 1);
        let am = a.tensor_diag(&m).unwrap();
        assert_eq!(am.dim(), 18);
        assert!(am.is_free());
        assert_eq!(k.dual(), k);
        assert_eq!(m.dual().dual(), m);
        assert!(a.dual().is_free());
    }

    #[test]
    fn quotients() {
        let g = e(2, 2);
        let a = GroupModule::free(&g, 1);
        // kG / (z1) has dimension 2.
        let z1 = a.nilpotent(0).column(0);
        let q = a.quotient(&[z1]);
        assert_eq!(q.dim(), 2);
        assert!(GroupModule::from_matrices(&g, q.dim(), q.generators().to_vec()).is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn shifted_nilpotence(a in 0u32..3, b in 0u32..3, c in 0u32..3, d in 0u32..3) {
            let g = e(3, 2);
            let m = GroupModule::shifted_cyclic(&g, &[1, 2], 3).unwrap()
                .direct_sum(&GroupModule::shifted_cyclic(&g, &[a, b], 2).unwrap()).unwrap()
                .tensor_diag(&GroupModule::shifted_cyclic(&g, &[c, d], 3).unwrap()).unwrap();
            let u = m.nilpotent(0).scale(c).add(&m.nilpotent(1).scale(d));
            prop_assert!(u.pow(3).is_zero());
        }
    }
}
