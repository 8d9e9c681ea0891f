use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GroupModule, Subgroup};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: GroupModule,
    target: GroupModule,
    matrix: Matrix,
}

impl ModuleMap {
    /// Validates shape and `M G_i^{src} = G_i^{tgt} M` for every generator.
    pub fn new(source: &GroupModule, target: &GroupModule, matrix: Matrix) -> Result<ModuleMap> {
        if source.group() != target.group() {
            return Err(Error::Usage(
                "module map between modules over different groups".into(),
            ));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Usage(format!(
                "module map is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        for (i, (gs, gt)) in source
            .generators()
            .iter()
            .zip(target.generators())
            .enumerate()
        {
            if matrix.mul(gs) != gt.mul(&matrix) {
                return Err(Error::Invalid(format!(
                    "map does not commute with g{}",
                    i + 1
                )));
            }
        }
        Ok(ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn identity(m: &GroupModule) -> ModuleMap {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(m.field(), m.dim()),
        }
    }

    pub fn source(&self) -> &GroupModule {
        &self.source
    }

    pub fn target(&self) -> &GroupModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_invertible()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMap) -> Result<ModuleMap> {
        if inner.target != self.source {
            return Err(Error::Usage(
                "composition of incompatible module maps".into(),
            ));
        }
        Ok(ModuleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix),
        })
    }
}

/// Basis of `Hom_{kG}(M, N)` as `dim N × dim M` matrices.
pub fn hom_basis(m: &GroupModule, n: &GroupModule) -> Result<Vec<Matrix>> {
    if m.group() != n.group() {
        return Err(Error::Usage(
            "Hom between modules over different groups".into(),
        ));
    }
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(vec![]);
    }
    // Row-major vec(T): vec(T z_M) = (I ⊗ z_Mᵀ) vec T and vec(z_N T) = (z_N ⊗ I) vec T.
    let mut system = Matrix::zeros(f, 0, dm * dn);
    for (zm, zn) in m.nilpotents().iter().zip(n.nilpotents()) {
        let block = Matrix::identity(f, dn)
            .kron(&zm.transpose())
            .sub(&zn.kron(&Matrix::identity(f, dm)));
        system = system.vstack(&block);
    }
    let kernel = if system.rows() == 0 {
        (0..dm * dn)
            .map(|i| {
                let mut v = vec![0; dm * dn];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        system.kernel_basis()
    };
    kernel
        .into_iter()
        .map(|v| Matrix::from_vec(f, dn, dm, v))
        .collect()
}

/// The swap `M ⊗ N → N ⊗ M`, `a ⊗ b ↦ b ⊗ a`.
pub fn tensor_swap(m: &GroupModule, n: &GroupModule) -> Result<ModuleMap> {
    let mn = m.tensor_diag(n)?;
    let nm = n.tensor_diag(m)?;
    let mut p = Matrix::zeros(m.field(), mn.dim(), mn.dim());
    for a in 0..m.dim() {
        for b in 0..n.dim() {
            p.set(b * m.dim() + a, a * n.dim() + b, 1);
        }
    }
    ModuleMap::new(&mn, &nm, p)
}

const WITNESS_SEED: u64 = 0x7e57_5eed;
const WITNESS_TRIES: usize = 4096;

/// An invertible intertwiner `(X↓_H ⊗ Y)↑G → X ⊗ Y↑G`, found by solving for the
/// intertwiner space and trying seeded random combinations.
pub fn frobenius_witness(x: &GroupModule, y: &GroupModule, h: &Subgroup) -> Result<ModuleMap> {
    if x.group() != h.ambient() || y.group() != h.group() {
        return Err(Error::Usage(
            "frobenius_witness needs X over G and Y over H".into(),
        ));
    }
    let lhs = x.restrict(h)?.tensor_diag(y)?.induce(h)?;
    let rhs = x.tensor_diag(&y.induce(h)?)?;
    let basis = hom_basis(&lhs, &rhs)?;
    let f = x.field();
    let p = f.characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED);
    if basis.len() == 1 && basis[0].is_invertible() {
        return ModuleMap::new(&lhs, &rhs, basis[0].clone());
    }
    for _ in 0..WITNESS_TRIES {
        if basis.is_empty() {
            break;
        }
        let mut m = Matrix::zeros(f, rhs.dim(), lhs.dim());
        for b in &basis {
            let c = rng.gen_range(0..p);
            if c != 0 {
                m = m.add(&b.scale(c));
            }
        }
        if m.is_invertible() {
            return ModuleMap::new(&lhs, &rhs, m);
        }
    }
    if lhs.dim() == 0 && rhs.dim() == 0 {
        return ModuleMap::new(&lhs, &rhs, Matrix::zeros(f, 0, 0));
    }
    Err(Error::Internal(format!(
        "no invertible intertwiner found among {} solutions ({} tries)",
        basis.len(),
        WITNESS_TRIES
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::GroupData;
    use proptest::prelude::*;

    fn e(p: u32, r: usize) -> GroupData {
        GroupData::elementary(p, r).unwrap()
    }

    /// The projection-formula map `e_c ⊗ (x ⊗ y) ↦ c·x ⊗ (e_c ⊗ y)`.
    fn explicit_frobenius(x: &GroupModule, y: &GroupModule, h: &Subgroup) -> Matrix {
        let reps = h.coset_representatives();
        let (dx, dy) = (x.dim(), y.dim());
        let n = reps.len() * dx * dy;
        let mut m = Matrix::zeros(x.field(), n, n);
        for (ci, c) in reps.iter().enumerate() {
            let cx = x.act(c);
            for a in 0..dx {
                for b in 0..dy {
                    let src = ci * dx * dy + a * dy + b;
                    for a2 in 0..dx {
                        let v = cx.get(a2, a);
                        if v != 0 {
                            let tgt = a2 * (reps.len() * dy) + ci * dy + b;
                            m.set(tgt, src, v);
                        }
                    }
                }
            }
        }
        m
    }

    #[test]
    fn hom_of_trivial_and_free() {
        let g = e(2, 2);
        let k = GroupModule::trivial(&g);
        let a = GroupModule::free(&g, 1);
        assert_eq!(hom_basis(&k, &k).unwrap().len(), 1);
        assert_eq!(hom_basis(&a, &a).unwrap().len(), 4);
        assert_eq!(hom_basis(&a, &k).unwrap().len(), 1);
    }

    #[test]
    fn witness_examples() {
        let g = e(2, 2);
        let h = Subgroup::new(&g, vec![vec![1, 1]]).unwrap();
        let x = GroupModule::shifted_cyclic(&g, &[1, 0], 2).unwrap();
        let k = GroupModule::trivial(h.group());
        let w = frobenius_witness(&x, &k, &h).unwrap();
        assert!(w.is_isomorphism());
        assert_eq!(w.source().dim(), 2 * x.dim());
        let whole = Subgroup::whole(&g);
        let y = GroupModule::shifted_cyclic(whole.group(), &[1, 1], 2).unwrap();
        assert!(frobenius_witness(&x, &y, &whole).unwrap().is_isomorphism());
        let triv = GroupModule::trivial(&g);
        assert!(frobenius_witness(&triv, &k, &h).unwrap().is_isomorphism());
    }

    #[test]
    fn explicit_map_is_an_intertwiner() {
        let g = e(3, 2);
        let h = Subgroup::new(&g, vec![vec![1, 1]]).unwrap();
        let x = GroupModule::shifted_cyclic(&g, &[1, 2], 2).unwrap();
        let y = GroupModule::shifted_cyclic(h.group(), &[1], 2).unwrap();
        let lhs = x
            .restrict(&h)
            .unwrap()
            .tensor_diag(&y)
            .unwrap()
            .induce(&h)
            .unwrap();
        let rhs = x.tensor_diag(&y.induce(&h).unwrap()).unwrap();
        let m = ModuleMap::new(&lhs, &rhs, explicit_frobenius(&x, &y, &h)).unwrap();
        assert!(m.is_isomorphism());
    }

    #[test]
    fn swap_is_an_isomorphism() {
        let g = e(3, 2);
        let a = GroupModule::shifted_cyclic(&g, &[1, 2], 3).unwrap();
        let b = GroupModule::shifted_cyclic(&g, &[0, 1], 2).unwrap();
        let s = tensor_swap(&a, &b).unwrap();
        assert!(s.is_isomorphism());
        let back = tensor_swap(&b, &a).unwrap();
        assert_eq!(
            back.compose(&s).unwrap(),
            ModuleMap::identity(&a.tensor_diag(&b).unwrap())
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn witness_on_random_triples(a in 0u32..3, b in 0u32..3, len in 1usize..3, hw in 0usize..4, ylen in 1usize..3) {
            let g = e(3, 2);
            let words = [vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]];
            let h = Subgroup::new(&g, vec![words[hw].clone()]).unwrap();
            let x = GroupModule::shifted_cyclic(&g, &[a, b], len).unwrap();
            let y = GroupModule::shifted_cyclic(h.group(), &[1], ylen).unwrap();
            let w = frobenius_witness(&x, &y, &h).unwrap();
            prop_assert!(w.is_isomorphism());
            prop_assert!(ModuleMap::new(w.source(), w.target(), w.matrix().clone()).is_ok());
            // Tensor associativity, up to the canonical identification of bases.
            let t1 = x.tensor_diag(&x).unwrap().tensor_diag(&x).unwrap();
            let t2 = x.tensor_diag(&x.tensor_diag(&x).unwrap()).unwrap();
            prop_assert_eq!(t1, t2);
        }
    }
}
