//! The quasi-isomorphism `Λ → B`, the bimodule `F = Hom_k(S, k) ⊗ Λ`, the functor
//! `- ⊗_S F` on semifree modules, and `Ext_Λ(k, k)`.

use std::collections::HashMap;
use std::hash::Hash;

use super::{
    dg_homology, exterior_algebra, homology_quotient, koszul_dg, symmetric_algebra, DgAlgebra,
    DgElement, DgModule, DgMono, Side,
};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::homalg::{AlgModule, FiniteAlgebra, Resolution};
use crate::matrix::Matrix;
use crate::modrep::GroupData;

/// Largest total dimension of a truncated module built here.
pub const DIMENSION_BUDGET: usize = 50_000;

/// Basis keys per degree on a window, with reverse lookup.
struct Graded<K> {
    lo: i32,
    bases: Vec<Vec<K>>,
    index: Vec<HashMap<K, usize>>,
}

impl<K: Clone + Eq + Hash> Graded<K> {
    fn new(lo: i32, bases: Vec<Vec<K>>) -> Graded<K> {
        let index = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();
        Graded { lo, bases, index }
    }

    fn hi(&self) -> i32 {
        self.lo + self.bases.len() as i32 - 1
    }

    fn basis(&self, n: i32) -> &[K] {
        if n < self.lo || n > self.hi() {
            &[]
        } else {
            &self.bases[(n - self.lo) as usize]
        }
    }

    fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// Matrix from degree `n` to `n + shift` of a map given on basis keys.
    fn matrix(
        &self,
        field: &Field,
        n: i32,
        shift: i32,
        image: impl Fn(&K) -> Vec<(K, Elem)>,
    ) -> Matrix {
        let rows = self.basis(n + shift).len();
        let mut m = Matrix::zeros(field, rows, self.basis(n).len());
        for (c, k) in self.basis(n).iter().enumerate() {
            for (t, x) in image(k) {
                let r = self.index[(n + shift - self.lo) as usize][&t];
                m.set(r, c, field.add(m.get(r, c), x));
            }
        }
        m
    }

    fn actions(
        &self,
        field: &Field,
        shift: i32,
        image: impl Fn(&K) -> Vec<(K, Elem)>,
    ) -> Vec<Option<Matrix>> {
        (self.lo..=self.hi())
            .map(|n| {
                (n + shift >= self.lo && n + shift <= self.hi())
                    .then(|| self.matrix(field, n, shift, &image))
            })
            .collect()
    }
}

/// `φ: Λ(ξ_1..ξ_r) → B` with `φ(ξ_i) = z_i^{p-1} y_i`.
pub fn phi_map(p: u32, r: usize) -> Result<(DgAlgebra, DgAlgebra, Vec<DgElement>)> {
    let group = GroupData::elementary(p, r)?;
    let b = koszul_dg(&group)?;
    let lambda = exterior_algebra(group.field(), r, &vec![-1; r])?;
    let images = (0..r)
        .map(|i| b.mul(&b.pow(&b.var(i), p as u64 - 1), &b.var(r + i)))
        .collect();
    Ok((lambda, b, images))
}

fn apply_algebra_map(
    src: &DgAlgebra,
    tgt: &DgAlgebra,
    images: &[DgElement],
    a: &DgElement,
) -> DgElement {
    let mut out = DgElement::zero();
    for (m, &c) in a.terms() {
        let mut term = tgt.scale(&tgt.one(), c);
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                term = tgt.mul(&term, &images[i]);
            }
        }
        out = tgt.add(&out, &term);
    }
    debug_assert_eq!(src.num_gens(), images.len());
    out
}

#[derive(Clone, Debug)]
pub struct PhiReport {
    pub p: u32,
    pub r: usize,
    pub window: (i32, i32),
    /// `dim H^n(B)` on the window.
    pub homology_b: Vec<(i32, usize)>,
    pub lambda_dims: Vec<(i32, usize)>,
    /// `φ(ξ_i)` are odd, square to zero and anticommute in `B`.
    pub respects_relations: bool,
    /// `d φ = φ d` on every basis element in the window.
    pub commutes_with_d: bool,
    pub bijective: bool,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.respects_relations && self.commutes_with_d && self.bijective
    }
}

/// Verifies that `φ: Λ → B` is a dg algebra map inducing a bijection on homology in `window`.
pub fn phi_quasi_iso_check(p: u32, r: usize, window: (i32, i32)) -> Result<PhiReport> {
    let (lambda, b, images) = phi_map(p, r)?;
    let f = b.field().clone();
    let mut respects_relations = true;
    for i in 0..r {
        respects_relations &= b.degree_of(&images[i]) == Some(-1);
        for j in i..r {
            let ij = b.mul(&images[i], &images[j]);
            let ji = b.mul(&images[j], &images[i]);
            respects_relations &= b.add(&ij, &ji).is_zero();
            if i == j {
                respects_relations &= ij.is_zero();
            }
        }
    }
    let module = DgModule::regular(&b, window.0 - 1, window.1 + 1)?;
    let homology = dg_homology(&module, window)?;
    let mut commutes_with_d = true;
    let mut bijective = true;
    let mut lambda_dims = Vec::new();
    for n in window.0..=window.1 {
        let q = homology_quotient(&module, n);
        let basis = lambda.basis(n)?;
        lambda_dims.push((n, basis.len()));
        let mut cols = Vec::new();
        for m in basis {
            let x = lambda.monomial(m, 1);
            let img = apply_algebra_map(&lambda, &b, &images, &x);
            let dphi = b.d(&img);
            let phid = apply_algebra_map(&lambda, &b, &images, &lambda.d(&x));
            commutes_with_d &= dphi == phid;
            match q.coordinates(&b.coordinates(&img, n)?) {
                Some(c) => cols.push(c),
                None => commutes_with_d = false,
            }
        }
        let square =
            cols.len() == q.dim() && Matrix::from_columns(&f, q.dim(), &cols).rank() == q.dim();
        bijective &= square;
    }
    Ok(PhiReport {
        p,
        r,
        window,
        homology_b: homology.dims,
        lambda_dims,
        respects_relations,
        commutes_with_d,
        bijective,
    })
}

/// Basis key of `F`: a dual monomial `(x^a)^*` and an exterior monomial.
type FKey = (DgMono, DgMono);

fn f_basis(s: &DgAlgebra, lambda: &DgAlgebra, truncation: u32, n: i32) -> Result<Vec<FKey>> {
    let r = s.num_gens() as i32;
    let mut out = Vec::new();
    for m in 0..=truncation as i32 {
        let ext = -n - 2 * m;
        if !(0..=r).contains(&ext) {
            continue;
        }
        for a in s.basis(2 * m)? {
            for l in lambda.basis(-ext)? {
                out.push((a.clone(), l));
            }
        }
    }
    Ok(out)
}

/// `x^b · (x^a)^* = (x^{a-b})^*`, or zero.
fn contract(a: &[u32], b: &[u32]) -> Option<DgMono> {
    a.iter().zip(b).map(|(&x, &y)| x.checked_sub(y)).collect()
}

fn exterior_product(
    lambda: &DgAlgebra,
    left: &DgElement,
    right: &DgElement,
) -> Vec<(DgMono, Elem)> {
    lambda
        .mul(left, right)
        .terms()
        .iter()
        .map(|(m, &c)| (m.clone(), c))
        .collect()
}

/// `d(f ⊗ λ) = Σ_i x_i f ⊗ ξ_i λ`.
fn f_differential(lambda: &DgAlgebra, key: &FKey) -> Vec<(FKey, Elem)> {
    let (a, l) = key;
    let mut out = Vec::new();
    for i in 0..a.len() {
        if a[i] == 0 {
            continue;
        }
        let mut a2 = a.clone();
        a2[i] -= 1;
        for (m, c) in exterior_product(lambda, &lambda.var(i), &lambda.monomial(l.clone(), 1)) {
            out.push(((a2.clone(), m), c));
        }
    }
    out
}

/// `F = Hom_k(S, k) ⊗ Λ` truncated to dual monomials of degree at most `truncation`, with
/// `S` and `Λ` generated in degrees 2 and -1. Both actions are recorded as dg modules on the
/// same graded pieces.
#[derive(Clone, Debug)]
pub struct BggBimodule {
    pub s: DgAlgebra,
    pub lambda: DgAlgebra,
    pub truncation: u32,
    /// Right `Λ`-module structure.
    pub over_lambda: DgModule,
    /// Left `S`-module structure.
    pub over_s: DgModule,
    /// Degrees where the truncated homology agrees with that of `F`.
    pub certified: (i32, i32),
}

impl BggBimodule {
    /// `x_i (v ξ_j) = (x_i v) ξ_j` on every piece of the window.
    pub fn actions_commute(&self) -> bool {
        let m = &self.over_lambda;
        (m.lo()..=m.hi()).all(|n| {
            (0..self.s.num_gens()).all(|i| {
                (0..self.lambda.num_gens()).all(|j| {
                    let (Some(a), Some(b)) = (self.over_s.action(i, n), m.action(j, n + 2)) else {
                        return true;
                    };
                    let (Some(c), Some(d)) = (m.action(j, n), self.over_s.action(i, n - 1)) else {
                        return true;
                    };
                    b.mul(a) == d.mul(c)
                })
            })
        })
    }
}

pub fn bgg_bimodule(field: &Field, r: usize, truncation: u32) -> Result<BggBimodule> {
    if truncation < 1 {
        return Err(Error::Usage("truncation must be at least 1".into()));
    }
    let s = symmetric_algebra(field, r, &vec![2; r])?;
    let lambda = exterior_algebra(field, r, &vec![-1; r])?;
    let lo = -2 * truncation as i32 - r as i32;
    let hi = 1;
    let bases = (lo..=hi)
        .map(|n| f_basis(&s, &lambda, truncation, n))
        .collect::<Result<Vec<_>>>()?;
    let g = Graded::new(lo, bases);
    check_budget(&g)?;
    let diffs: Vec<Matrix> = (lo..hi)
        .map(|n| g.matrix(field, n, 1, |k| f_differential(&lambda, k)))
        .collect();
    let right: Vec<Vec<Option<Matrix>>> = (0..r)
        .map(|j| {
            g.actions(field, -1, |(a, l)| {
                exterior_product(&lambda, &lambda.monomial(l.clone(), 1), &lambda.var(j))
                    .into_iter()
                    .map(|(m, c)| ((a.clone(), m), c))
                    .collect()
            })
        })
        .collect();
    let left: Vec<Vec<Option<Matrix>>> = (0..r)
        .map(|i| {
            let mut unit = vec![0; r];
            unit[i] = 1;
            g.actions(field, 2, |(a, l)| {
                contract(a, &unit)
                    .map(|a2| ((a2, l.clone()), 1))
                    .into_iter()
                    .collect()
            })
        })
        .collect();
    let over_lambda = DgModule::new(&lambda, Side::Right, lo, g.dims(), diffs.clone(), right)?;
    let over_s = DgModule::new(&s, Side::Left, lo, g.dims(), diffs, left)?;
    Ok(BggBimodule {
        s,
        lambda,
        truncation,
        over_lambda,
        over_s,
        certified: (-2 * truncation as i32, 0),
    })
}

fn check_budget<K: Clone + Eq + Hash>(g: &Graded<K>) -> Result<()> {
    let total: usize = g.dims().iter().sum();
    if total > DIMENSION_BUDGET {
        return Err(Error::Budget(format!(
            "truncated module has dimension {total} > {DIMENSION_BUDGET}"
        )));
    }
    Ok(())
}

/// A semifree dg `S`-module: free on `e_j` in degree `degrees[j]`, with
/// `d(e_j) = Σ_k s_{kj} e_k` and `|s_{kj}| = |e_j| + 1 - |e_k|`.
#[derive(Clone, Debug)]
pub struct SemifreeModule {
    s: DgAlgebra,
    degrees: Vec<i32>,
    differential: Vec<Vec<(usize, DgElement)>>,
}

impl SemifreeModule {
    pub fn new(
        s: &DgAlgebra,
        degrees: Vec<i32>,
        differential: Vec<Vec<(usize, DgElement)>>,
    ) -> Result<SemifreeModule> {
        if !s.has_zero_differential() || s.generators().iter().any(|g| g.odd) {
            return Err(Error::Usage(
                "semifree modules are over a symmetric algebra".into(),
            ));
        }
        if differential.len() != degrees.len() {
            return Err(Error::Usage(
                "one differential entry per basis element".into(),
            ));
        }
        for (j, row) in differential.iter().enumerate() {
            for (k, c) in row {
                if *k >= degrees.len() {
                    return Err(Error::Usage(format!("d(e_{j}) refers to e_{k}")));
                }
                if let Some(d) = s.degree_of(c) {
                    if d != degrees[j] + 1 - degrees[*k] {
                        return Err(Error::Invalid(format!(
                            "coefficient of e_{k} in d(e_{j}) has degree {d}"
                        )));
                    }
                }
            }
        }
        let m = SemifreeModule {
            s: s.clone(),
            degrees,
            differential,
        };
        for j in 0..m.rank() {
            let mut acc: Vec<DgElement> = vec![DgElement::zero(); m.rank()];
            for (k, c) in &m.differential[j] {
                for (l, c2) in &m.differential[*k] {
                    acc[*l] = s.add(&acc[*l], &s.mul(c2, c));
                }
            }
            if acc.iter().any(|x| !x.is_zero()) {
                return Err(Error::Invalid(format!("d^2(e_{j}) != 0")));
            }
        }
        Ok(m)
    }

    pub fn free(s: &DgAlgebra, degrees: Vec<i32>) -> Result<SemifreeModule> {
        let n = degrees.len();
        SemifreeModule::new(s, degrees, vec![vec![]; n])
    }

    /// `S/(x_i)` via its resolution `S e_1 → S e_0`, `d(e_1) = x_i e_0`.
    pub fn quotient_by_variable(s: &DgAlgebra, i: usize) -> Result<SemifreeModule> {
        let x = s.var(i);
        let e = s.generators()[i].degree;
        SemifreeModule::new(s, vec![0, e - 1], vec![vec![], vec![(0, x)]])
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }
}

/// `M ⊗_S F` as a right `Λ`-module on a truncation of `F`.
#[derive(Clone, Debug)]
pub struct BggImage {
    pub module: DgModule,
    /// Degrees where the homology agrees with that of the untruncated tensor product.
    pub certified: (i32, i32),
}

type TKey = (usize, DgMono, DgMono);

/// `M ⊗_S F` for semifree `M`; this computes the derived tensor product.
pub fn bgg_apply(m: &SemifreeModule, truncation: u32) -> Result<BggImage> {
    if m.rank() == 0 {
        return Err(Error::Usage("zero module".into()));
    }
    let s = &m.s;
    let field = s.field().clone();
    let r = s.num_gens();
    if s.generators().iter().any(|g| g.degree != 2) {
        return Err(Error::Usage(
            "bgg_apply needs S generated in degree 2".into(),
        ));
    }
    let bim = bgg_bimodule(&field, r, truncation)?;
    let lambda = bim.lambda.clone();
    let (emin, emax) = (
        *m.degrees.iter().min().unwrap(),
        *m.degrees.iter().max().unwrap(),
    );
    let lo = emin - 2 * truncation as i32 - r as i32;
    let hi = emax + 1;
    let bases = (lo..=hi)
        .map(|n| {
            let mut out = Vec::new();
            for (j, &e) in m.degrees.iter().enumerate() {
                for (a, l) in f_basis(s, &lambda, truncation, n - e)? {
                    out.push((j, a, l));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let g: Graded<TKey> = Graded::new(lo, bases);
    check_budget(&g)?;
    let differential = |(j, a, l): &TKey| -> Vec<(TKey, Elem)> {
        let mut out = Vec::new();
        for (k, coeff) in &m.differential[*j] {
            for (b, &c) in coeff.terms() {
                if let Some(a2) = contract(a, b) {
                    out.push(((*k, a2, l.clone()), c));
                }
            }
        }
        let sign = if m.degrees[*j] % 2 != 0 {
            field.neg(1)
        } else {
            1
        };
        for ((a2, l2), c) in f_differential(&lambda, &(a.clone(), l.clone())) {
            out.push(((*j, a2, l2), field.mul(sign, c)));
        }
        out
    };
    let diffs: Vec<Matrix> = (lo..hi)
        .map(|n| g.matrix(&field, n, 1, differential))
        .collect();
    let actions: Vec<Vec<Option<Matrix>>> = (0..r)
        .map(|t| {
            g.actions(&field, -1, |(j, a, l)| {
                exterior_product(&lambda, &lambda.monomial(l.clone(), 1), &lambda.var(t))
                    .into_iter()
                    .map(|(mm, c)| ((*j, a.clone(), mm), c))
                    .collect()
            })
        })
        .collect();
    let module = DgModule::new(&lambda, Side::Right, lo, g.dims(), diffs, actions)?;
    Ok(BggImage {
        module,
        certified: (emax - 2 * truncation as i32, emax),
    })
}

/// `dim Ext^n_Λ(k, k)` for `0 ≤ n ≤ max_degree`, from the minimal resolution of `k` over an
/// exterior algebra with zero differential, totalized: a generator of `P_h` in internal degree
/// `g` contributes to `Ext^{h - g}`.
pub fn ext_over_dg(lambda: &DgAlgebra, max_degree: usize) -> Result<Vec<usize>> {
    let gens = lambda.generators();
    if !lambda.has_zero_differential()
        || gens.is_empty()
        || gens.iter().any(|g| !g.odd || g.degree >= 0)
    {
        return Err(Error::Usage(
            "ext_over_dg needs an exterior algebra on odd negative generators".into(),
        ));
    }
    let deg = gens[0].degree;
    if gens.iter().any(|g| g.degree != deg) {
        return Err(Error::Usage(
            "ext_over_dg needs all generators in one degree".into(),
        ));
    }
    let alg = FiniteAlgebra::exterior(lambda.field(), gens.len(), deg);
    // Generators of P_h sit in internal degree h·deg, so only h ≤ D / (1 - deg) contribute.
    let length = max_degree / (1 - deg) as usize;
    let res = Resolution::minimal(&alg, &AlgModule::trivial(&alg), length.max(1))?;
    let mut dims = vec![0; max_degree + 1];
    for h in 0..=length {
        for &gdeg in res.generator_degrees(h) {
            let n = h as i32 - gdeg;
            if (0..=max_degree as i32).contains(&n) {
                dims[n as usize] += 1;
            }
        }
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn phi_small_cases() {
        for p in [2, 3, 5] {
            let rep = phi_quasi_iso_check(p, 1, (-1, 0)).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.homology_b, [(-1, 1), (0, 1)]);
        }
        let rep = phi_quasi_iso_check(2, 2, (-2, 0)).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.homology_b, [(-2, 1), (-1, 2), (0, 1)]);
        let (_, b, images) = phi_map(3, 1).unwrap();
        assert_eq!(b.format(&images[0]), "z1^2*y1");
        assert!(b.d(&images[0]).is_zero());
    }

    #[test]
    fn bimodule_small() {
        let f = bgg_bimodule(&fp(2), 1, 2).unwrap();
        let m = &f.over_lambda;
        assert_eq!(
            m.dims(),
            [(-5, 1), (-4, 1), (-3, 1), (-2, 1), (-1, 1), (0, 1), (1, 0)]
        );
        let ranks: Vec<usize> = (-5..0).map(|n| m.differential(n).unwrap().rank()).collect();
        assert_eq!(ranks, [0, 1, 0, 1, 0]);
        assert!(f.actions_commute());
        let h = dg_homology(m, f.certified).unwrap();
        assert_eq!(h.total(), 1);
        assert_eq!(h.dim(0), 1);
        // The truncation leaves a spurious class just below the certified window.
        assert_eq!(dg_homology(m, (-5 + 1, 0)).unwrap().dim(-4), 0);
    }

    #[test]
    fn bgg_apply_examples() {
        let s = symmetric_algebra(&fp(2), 1, &[2]).unwrap();
        let img = bgg_apply(&SemifreeModule::free(&s, vec![0]).unwrap(), 4).unwrap();
        let h = dg_homology(&img.module, img.certified).unwrap();
        assert_eq!((h.total(), h.dim(0)), (1, 1));

        let img = bgg_apply(&SemifreeModule::free(&s, vec![0, 0]).unwrap(), 4).unwrap();
        let h = dg_homology(&img.module, img.certified).unwrap();
        assert_eq!((h.total(), h.dim(0)), (2, 2));

        // S/(x) goes to a shift of the free module Λ: one-dimensional homology in two
        // adjacent degrees, and nothing else.
        let img = bgg_apply(&SemifreeModule::quotient_by_variable(&s, 0).unwrap(), 4).unwrap();
        let h = dg_homology(&img.module, img.certified).unwrap();
        assert_eq!(
            h.dims
                .iter()
                .filter(|(_, d)| *d > 0)
                .copied()
                .collect::<Vec<_>>(),
            [(0, 1), (1, 1)]
        );
    }

    #[test]
    fn ext_over_exterior() {
        let l1 = exterior_algebra(&fp(2), 1, &[-1]).unwrap();
        assert_eq!(ext_over_dg(&l1, 8).unwrap(), [1, 0, 1, 0, 1, 0, 1, 0, 1]);
        let l2 = exterior_algebra(&fp(3), 2, &[-1, -1]).unwrap();
        assert_eq!(ext_over_dg(&l2, 8).unwrap(), [1, 0, 2, 0, 3, 0, 4, 0, 5]);
        assert_eq!(ext_over_dg(&l2, 0).unwrap(), [1]);
    }
}
