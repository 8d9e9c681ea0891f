//! Cohomology of abelian p-groups from the minimal resolution of `k`: the presented ring
//! `R = Ext*(k, k)`, chain-level lifts of its generators, and `Ext*(k, C)` for bounded
//! complexes `C` with the action of `R`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::algebra::{free_left_mult, AlgModule, FiniteAlgebra, Resolution};
use super::complex::WindowedComplex;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::matrix::{EchelonBasis, LinearSolver, Matrix, Quotient};
use crate::modrep::GroupData;
use crate::poly::{GradedPolyRing, HomogeneousIdeal, Mono, Polynomial, Ring};

/// A chain map `f_a : P_{a+d} → P_a` over the resolution of `k`, stored by the images of
/// the free generators.
#[derive(Clone, Debug)]
pub struct ChainLift {
    degree: usize,
    // images[a][j] = f_a(e_j) in P_a, for generators e_j of P_{a+d}.
    images: Vec<Vec<Vec<Elem>>>,
}

impl ChainLift {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of stored maps `f_0, …, f_{len-1}`.
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, a: usize, j: usize) -> &[Elem] {
        &self.images[a][j]
    }

    /// k-linear matrix of `f_a`.
    pub fn matrix(&self, res: &Resolution, a: usize) -> Matrix {
        let alg = res.algebra();
        let n = alg.dim();
        let rows = res.rank(a) * n;
        let mut m = Matrix::zeros(alg.field(), rows, res.rank(a + self.degree) * n);
        for (j, img) in self.images[a].iter().enumerate() {
            for u in 0..n {
                let col = free_left_mult(alg, u, img);
                for (r, &x) in col.iter().enumerate() {
                    if x != 0 {
                        m.set(r, j * n + u, x);
                    }
                }
            }
        }
        m
    }
}

/// `H*(G; k)` for `G = Z/q_1 × … × Z/q_r`, with generators `eta_i` (degree 1) and, when
/// `q_i > 2`, `theta_i` (degree 2). For `p = 2, q_i ≥ 4` the relation `eta_i^2 = 0` holds.
pub struct GroupCohomology {
    group: GroupData,
    alg: FiniteAlgebra,
    res: Resolution,
    ring: Ring,
    gen_classes: Vec<Vec<Elem>>,
    lifts: Vec<ChainLift>,
    solvers: Vec<LinearSolver>,
}

impl fmt::Debug for GroupCohomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupCohomology({}, length {})",
            self.group.describe(),
            self.res.length()
        )
    }
}

fn word_index(alg: &FiniteAlgebra, word: &[usize]) -> Option<usize> {
    (0..alg.dim()).find(|&u| alg.basis_word(u) == word)
}

/// `Σ_u c[u] M_u` for an algebra element `c` and basis actions `M_u`.
fn element_action(actions: &[Matrix], c: &[Elem], dim: usize) -> Matrix {
    let f = actions[0].field();
    let mut m = Matrix::zeros(f, dim, dim);
    for (u, &x) in c.iter().enumerate() {
        if x != 0 {
            m = m.add(&actions[u].scale(x));
        }
    }
    m
}

/// Matrix of `φ ↦ φ ∘ g` from `Hom_A(P_src, V)` to `Hom_A(P_tgt, V)`, where `g(e_j) = images[j]`
/// and both Hom spaces are `V^{rank}` with blocks per generator.
fn pullback_matrix(
    alg_dim: usize,
    images: &[Vec<Elem>],
    src_rank: usize,
    actions: &[Matrix],
    dim: usize,
) -> Matrix {
    let f = actions[0].field();
    let mut m = Matrix::zeros(f, images.len() * dim, src_rank * dim);
    if dim == 0 {
        return m;
    }
    for (j, img) in images.iter().enumerate() {
        for i in 0..src_rank {
            let c = &img[i * alg_dim..(i + 1) * alg_dim];
            if c.iter().any(|&x| x != 0) {
                m.set_block(j * dim, i * dim, &element_action(actions, c, dim));
            }
        }
    }
    m
}

impl GroupCohomology {
    /// Resolve `k` through `P_length` and extract the ring generators.
    pub fn new(group: &GroupData, length: usize) -> Result<GroupCohomology> {
        let f = group.field();
        if !f.is_prime_field() {
            return Err(Error::Usage(
                "group cohomology is computed over the prime field".into(),
            ));
        }
        let p = f.characteristic();
        let length = length.max(3);
        let alg = FiniteAlgebra::group_algebra(group);
        let res = Resolution::minimal(&alg, &AlgModule::trivial(&alg), length)?;
        let r = group.rank();
        // P_1 generator mapping to z_i.
        let mut a_of = vec![usize::MAX; r];
        for j in 0..res.rank(1) {
            let img = res.image(1, j);
            let nz: Vec<usize> = (0..img.len()).filter(|&u| img[u] != 0).collect();
            let pure = nz.len() == 1 && img[nz[0]] == 1 && alg.basis_word(nz[0]).len() == 1;
            if !pure {
                return Err(Error::Internal(
                    "first syzygies are not the augmentation generators".into(),
                ));
            }
            a_of[alg.basis_word(nz[0])[0]] = j;
        }
        if a_of.contains(&usize::MAX) {
            return Err(Error::Internal("missing first syzygy generator".into()));
        }
        let mut names: Vec<(String, i32)> = Vec::new();
        let mut relations: Vec<String> = Vec::new();
        let mut gen_classes: Vec<Vec<Elem>> = Vec::new();
        for (i, &j) in a_of.iter().enumerate() {
            let mut eta = vec![0; res.rank(1)];
            eta[j] = 1;
            names.push((format!("eta{}", i + 1), 1));
            gen_classes.push(eta);
            if p == 2 && group.orders()[i] > 2 {
                relations.push(format!("eta{}^2", i + 1));
            }
        }
        for (i, &q) in group.orders().iter().enumerate() {
            if q == 2 {
                continue;
            }
            let top =
                word_index(&alg, &vec![i; q as usize - 1]).expect("z_i^(q-1) is a basis word");
            let theta: Vec<Elem> = (0..res.rank(2))
                .map(|e| res.coefficient(2, a_of[i], e)[top])
                .collect();
            names.push((format!("theta{}", i + 1), 2));
            gen_classes.push(theta);
        }
        let ring = GradedPolyRing::from_parts(f, &names, &relations)?;
        let solvers = (0..=length)
            .map(|a| LinearSolver::new(res.differential(a)))
            .collect();
        let mut coh = GroupCohomology {
            group: group.clone(),
            alg,
            res,
            ring,
            gen_classes,
            lifts: vec![],
            solvers,
        };
        let lifts = (0..coh.gen_classes.len())
            .map(|g| {
                coh.lift_cocycle(
                    &coh.gen_classes[g],
                    coh.ring.generators()[g].degree as usize,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        coh.lifts = lifts;
        Ok(coh)
    }

    /// Shared instance with resolution length at least `length`, computed once per group.
    pub fn shared(group: &GroupData, length: usize) -> Result<Arc<GroupCohomology>> {
        type Cache = Mutex<HashMap<String, Arc<GroupCohomology>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let key = format!("{group:?}");
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(c) = cache.lock().expect("cohomology cache").get(&key) {
            if c.length() >= length {
                return Ok(c.clone());
            }
        }
        let fresh = Arc::new(GroupCohomology::new(group, length)?);
        let mut guard = cache.lock().expect("cohomology cache");
        let entry = guard.entry(key).or_insert_with(|| fresh.clone());
        if entry.length() < fresh.length() {
            *entry = fresh.clone();
        }
        Ok(entry.clone())
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.alg
    }

    pub fn resolution(&self) -> &Resolution {
        &self.res
    }

    pub fn length(&self) -> usize {
        self.res.length()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Cocycle of ring generator `g`, as values on the generators of `P_{|g|}`.
    pub fn generator_class(&self, g: usize) -> &[Elem] {
        &self.gen_classes[g]
    }

    pub fn generator_lift(&self, g: usize) -> &ChainLift {
        &self.lifts[g]
    }

    /// Lift a cocycle `α` on the generators of `P_d` to a chain map `P_{•+d} → P_•`
    /// through the full length of the resolution.
    pub fn lift_cocycle(&self, alpha: &[Elem], d: usize) -> Result<ChainLift> {
        if d > self.length() || alpha.len() != self.res.rank(d) {
            return Err(Error::Usage(format!(
                "cocycle of degree {d} does not match the resolution"
            )));
        }
        let n = self.alg.dim();
        let f0: Vec<Vec<Elem>> = alpha
            .iter()
            .map(|&a| {
                let mut v = vec![0; n];
                v[0] = a;
                v
            })
            .collect();
        let mut images = vec![f0];
        for a in 1..=self.length() - d {
            let prev = ChainLift {
                degree: d,
                images: images.clone(),
            }
            .matrix(&self.res, a - 1);
            let mut level = Vec::with_capacity(self.res.rank(a + d));
            for j in 0..self.res.rank(a + d) {
                let rhs = prev.mul_vec(self.res.image(a + d, j));
                let x = self.solvers[a].solve(&rhs).ok_or_else(|| {
                    Error::Internal(format!("lifting system inconsistent at level {a}"))
                })?;
                level.push(x);
            }
            images.push(level);
        }
        Ok(ChainLift { degree: d, images })
    }

    /// `α · φ = φ ∘ f_α` on a cocycle `φ` of `Hom_A(P_a, k)`.
    fn act_on_trivial(&self, g: usize, a: usize, phi: &[Elem]) -> Vec<Elem> {
        let n = self.alg.dim();
        let lift = &self.lifts[g];
        (0..self.res.rank(a + lift.degree))
            .map(|j| {
                let img = lift.image(a, j);
                let f = self.group.field();
                phi.iter()
                    .enumerate()
                    .fold(0, |acc, (i, &x)| f.add(acc, f.mul(x, img[i * n])))
            })
            .collect()
    }

    /// Cocycle of a standard monomial on `P_{deg}`; generators apply highest index first.
    pub fn monomial_class(&self, m: &[u32]) -> Result<Vec<Elem>> {
        let deg = self.ring.monomial_degree(m) as usize;
        if deg > self.length() {
            return Err(Error::Window(format!(
                "monomial of degree {deg} beyond the resolution"
            )));
        }
        let mut phi = vec![1];
        let mut a = 0usize;
        for g in (0..m.len()).rev() {
            for _ in 0..m[g] {
                phi = self.act_on_trivial(g, a, &phi);
                a += self.lifts[g].degree;
            }
        }
        Ok(phi)
    }

    /// Class in `Ext^d(k, k)` of a homogeneous ring element.
    pub fn class_of(&self, r: &Polynomial) -> Result<(usize, Vec<Elem>)> {
        let d = r
            .degree()
            .ok_or_else(|| Error::Usage("the zero element has no degree".into()))?;
        if !r.is_homogeneous() || d < 0 {
            return Err(Error::Usage("class_of needs a homogeneous element".into()));
        }
        let d = d as usize;
        let f = self.group.field();
        let mut v = vec![0; self.res.rank(d.min(self.length()))];
        for (m, c) in r.terms() {
            let cls = self.monomial_class(m)?;
            for (x, y) in v.iter_mut().zip(cls) {
                *x = f.add(*x, f.mul(*c, y));
            }
        }
        Ok((d, v))
    }

    /// Dimensions where the presented ring and the resolution disagree, up to `max_degree`:
    /// `(degree, monomial count, Betti number, rank of monomial classes)`.
    pub fn presentation_mismatches(
        &self,
        max_degree: usize,
    ) -> Result<Vec<(usize, usize, usize, usize)>> {
        let mut out = Vec::new();
        for d in 0..=max_degree.min(self.length()) {
            let monos = self.ring.standard_monomials(d as i32);
            let mut span = EchelonBasis::new(self.group.field(), self.res.rank(d));
            for m in &monos {
                span.insert(&self.monomial_class(m)?);
            }
            if monos.len() != self.res.rank(d) || span.rank() != self.res.rank(d) {
                out.push((d, monos.len(), self.res.rank(d), span.rank()));
            }
        }
        Ok(out)
    }

    /// `Ext^n(k, C)` for `n` in `[lo(C), max_degree]`, computed on the total complex
    /// `Hom_A(P, C)` with `Dφ = d_C φ - (-1)^n φ d_P`, and the action of each ring generator
    /// by `α · φ = (-1)^{|α| b} φ ∘ f_α` on components with values in `C^b`.
    pub fn ext_table(&self, c: &WindowedComplex, max_degree: i32) -> Result<ExtTable> {
        if c.group() != &self.group {
            return Err(Error::Usage("complex lives over a different group".into()));
        }
        let f = self.group.field();
        if c.components().is_empty() || c.total_dim() == 0 {
            return Ok(ExtTable::zero(&self.ring, 0, max_degree, c.describe()));
        }
        let (lo, hi) = (c.lo(), c.hi());
        if !(c.in_window(lo) && c.in_window(hi)) {
            return Err(Error::Window(format!(
                "complex certified on {:?} but occupies degrees {lo}..{hi}",
                c.window()
            )));
        }
        let needed = (max_degree + 1 - lo).max(0) as usize;
        if needed > self.length() {
            return Err(Error::Window(format!(
                "Ext up to degree {max_degree} needs a resolution of length {needed}"
            )));
        }
        let len = self.length() as i32;
        let n_alg = self.alg.dim();
        let actions: HashMap<i32, Vec<Matrix>> = (lo..=hi)
            .map(|b| (b, self.alg.basis_actions(&c.component(b).nilpotents())))
            .collect();
        let dim_c = |b: i32| c.component(b).dim();
        // Blocks of T^n: (a, b) with a + b = n, ordered by a.
        let blocks = |n: i32| -> Vec<(i32, i32)> {
            (0..=len)
                .map(|a| (a, n - a))
                .filter(|&(_, b)| b >= lo && b <= hi)
                .collect()
        };
        let offsets = |n: i32| -> (Vec<usize>, usize) {
            let mut acc = 0;
            let offs = blocks(n)
                .iter()
                .map(|&(a, b)| {
                    let o = acc;
                    acc += self.res.rank(a as usize) * dim_c(b);
                    o
                })
                .collect();
            (offs, acc)
        };
        let tot_diff = |n: i32| -> Matrix {
            let (so, sdim) = offsets(n);
            let (to, tdim) = offsets(n + 1);
            let tb = blocks(n + 1);
            let mut m = Matrix::zeros(f, tdim, sdim);
            let sign = if n.rem_euclid(2) == 0 { f.neg(1) } else { 1 };
            for (s, &(a, b)) in blocks(n).iter().enumerate() {
                let rank = self.res.rank(a as usize);
                if let Some(t) = tb.iter().position(|&x| x == (a, b + 1)) {
                    let block = Matrix::identity(f, rank).kron(&c.differential(b));
                    m.set_block(to[t], so[s], &block);
                }
                if let Some(t) = tb.iter().position(|&x| x == (a + 1, b)) {
                    let images: Vec<Vec<Elem>> = (0..self.res.rank(a as usize + 1))
                        .map(|j| self.res.image(a as usize + 1, j).to_vec())
                        .collect();
                    let block =
                        pullback_matrix(n_alg, &images, rank, &actions[&b], dim_c(b)).scale(sign);
                    m.set_block(to[t], so[s], &block);
                }
            }
            m
        };
        let mut diffs: HashMap<i32, Matrix> = HashMap::new();
        for n in (lo - 1)..=max_degree {
            diffs.insert(n, tot_diff(n));
        }
        let mut quotients = Vec::new();
        for n in lo..=max_degree {
            let d_out = &diffs[&n];
            let d_in = &diffs[&(n - 1)];
            let dim = offsets(n).1;
            let cycles: Vec<Vec<Elem>> = if d_out.rows() == 0 {
                (0..dim).map(|i| unit(dim, i)).collect()
            } else {
                d_out.kernel_basis()
            };
            let boundaries: Vec<Vec<Elem>> = (0..d_in.cols()).map(|j| d_in.column(j)).collect();
            quotients.push(Quotient::new(f, dim, &boundaries, &cycles));
        }
        // Generator actions on classes.
        let mut gen_actions = Vec::new();
        for (g, lift) in self.lifts.iter().enumerate() {
            let d = self.ring.generators()[g].degree;
            let mut per_degree = Vec::new();
            for n in lo..=max_degree - d {
                let (so, _) = offsets(n);
                let (to, tdim) = offsets(n + d);
                let tb = blocks(n + d);
                let mut psi = Matrix::zeros(f, tdim, offsets(n).1);
                for (s, &(a, b)) in blocks(n).iter().enumerate() {
                    let Some(t) = tb.iter().position(|&x| x == (a + d, b)) else {
                        continue;
                    };
                    if a as usize >= lift.len() {
                        return Err(Error::Internal(
                            "lift shorter than the total complex".into(),
                        ));
                    }
                    let images: Vec<Vec<Elem>> = (0..self.res.rank((a + d) as usize))
                        .map(|j| lift.image(a as usize, j).to_vec())
                        .collect();
                    let mut block = pullback_matrix(
                        n_alg,
                        &images,
                        self.res.rank(a as usize),
                        &actions[&b],
                        dim_c(b),
                    );
                    if (d * b).rem_euclid(2) == 1 {
                        block = block.scale(f.neg(1));
                    }
                    psi.set_block(to[t], so[s], &block);
                }
                let q_src = &quotients[(n - lo) as usize];
                let q_tgt = &quotients[(n + d - lo) as usize];
                let cols: Vec<Vec<Elem>> = q_src
                    .representatives()
                    .iter()
                    .map(|v| {
                        q_tgt.coordinates(&psi.mul_vec(v)).ok_or_else(|| {
                            Error::Internal("generator action does not preserve cocycles".into())
                        })
                    })
                    .collect::<Result<_>>()?;
                per_degree.push(Matrix::from_columns(f, q_tgt.dim(), &cols));
            }
            gen_actions.push(per_degree);
        }
        Ok(ExtTable {
            ring: self.ring.clone(),
            lo,
            hi: max_degree,
            dims: quotients.iter().map(Quotient::dim).collect(),
            quotients,
            gen_actions,
            description: c.describe(),
        })
    }
}

fn unit(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `Ext^n(k, C)` for `lo ≤ n ≤ hi` with the action of the generators of `R`.
#[derive(Clone, Debug)]
pub struct ExtTable {
    ring: Ring,
    lo: i32,
    hi: i32,
    dims: Vec<usize>,
    quotients: Vec<Quotient>,
    // gen_actions[g][n - lo]: Ext^n → Ext^{n + |g|}, present while n + |g| ≤ hi.
    gen_actions: Vec<Vec<Matrix>>,
    description: String,
}

impl ExtTable {
    fn zero(ring: &Ring, lo: i32, hi: i32, description: String) -> ExtTable {
        let f = ring.field().clone();
        let n = (hi - lo + 1).max(0) as usize;
        let gen_actions = ring
            .generators()
            .iter()
            .map(|g| {
                (0..(hi - g.degree - lo + 1).max(0))
                    .map(|_| Matrix::zeros(&f, 0, 0))
                    .collect()
            })
            .collect();
        ExtTable {
            ring: ring.clone(),
            lo,
            hi,
            dims: vec![0; n],
            quotients: (0..n).map(|_| Quotient::new(&f, 0, &[], &[])).collect(),
            gen_actions,
            description,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.hi
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn dim(&self, n: i32) -> usize {
        if n < self.lo || n > self.hi {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    /// `(n, dim Ext^n)` over the table range.
    pub fn dims(&self) -> Vec<(i32, usize)> {
        (self.lo..=self.hi).map(|n| (n, self.dim(n))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Cocycle representatives of a basis of `Ext^n`.
    pub fn basis(&self, n: i32) -> &[Vec<Elem>] {
        self.quotients[(n - self.lo) as usize].representatives()
    }

    /// Action of generator `g` on `Ext^n`, if `n + |g|` is inside the table.
    pub fn generator_action(&self, g: usize, n: i32) -> Option<Matrix> {
        let d = self.ring.generators()[g].degree;
        if n < self.lo || n + d > self.hi {
            return None;
        }
        let m = &self.gen_actions[g][(n - self.lo) as usize];
        if m.rows() == 0 && m.cols() == 0 && (self.dim(n) > 0 || self.dim(n + d) > 0) {
            return Some(Matrix::zeros(
                self.ring.field(),
                self.dim(n + d),
                self.dim(n),
            ));
        }
        Some(m.clone())
    }

    /// Action of a monomial on `Ext^n`; generators apply highest index first.
    pub fn monomial_action(&self, m: &[u32], n: i32) -> Option<Matrix> {
        let f = self.ring.field();
        let mut acc = Matrix::identity(f, self.dim(n));
        let mut cur = n;
        for g in (0..m.len()).rev() {
            for _ in 0..m[g] {
                let a = self.generator_action(g, cur)?;
                acc = a.mul(&acc);
                cur += self.ring.generators()[g].degree;
            }
        }
        Some(acc)
    }

    /// Degrees `≤ up_to` in which `Ext` needs new generators as an `R`-module, with counts.
    pub fn module_generator_degrees(&self, up_to: i32) -> Vec<(i32, usize)> {
        let f = self.ring.field();
        let mut out = Vec::new();
        for n in self.lo..=up_to.min(self.hi) {
            let dim = self.dim(n);
            if dim == 0 {
                continue;
            }
            let mut span = EchelonBasis::new(f, dim);
            for (g, gen) in self.ring.generators().iter().enumerate() {
                let src = n - gen.degree;
                if src < self.lo {
                    continue;
                }
                if let Some(a) = self.generator_action(g, src) {
                    for j in 0..a.cols() {
                        span.insert(&a.column(j));
                    }
                }
            }
            if span.rank() < dim {
                out.push((n, dim - span.rank()));
            }
        }
        out
    }

    /// Homogeneous elements of degree `1 ≤ d ≤ degree_bound - g` acting as zero on
    /// `Ext^{≤ degree_bound - d}`, where `g` is the top degree of a module generator seen up
    /// to `degree_bound`. Returns the ideal they generate in `R` and `g`. A table that is
    /// zero through `degree_bound` gives the unit ideal.
    pub fn annihilator(&self, degree_bound: i32) -> Result<(HomogeneousIdeal, Option<i32>)> {
        let bound = degree_bound.min(self.hi);
        let f = self.ring.field();
        let gens = self.module_generator_degrees(bound);
        let Some(top) = gens.last().map(|x| x.0) else {
            return Ok((HomogeneousIdeal::unit(&self.ring), None));
        };
        let mut polys = Vec::new();
        for d in 1..=(bound - top) {
            let monos: Vec<Mono> = self.ring.standard_monomials(d);
            if monos.is_empty() {
                continue;
            }
            let mut columns: Vec<Vec<Elem>> = vec![Vec::new(); monos.len()];
            for n in self.lo..=(bound - d) {
                if self.dim(n) == 0 || self.dim(n + d) == 0 {
                    continue;
                }
                for (k, m) in monos.iter().enumerate() {
                    let a = self.monomial_action(m, n).expect("inside the table");
                    columns[k].extend_from_slice(a.data());
                }
            }
            let rows = columns[0].len();
            let kernel: Vec<Vec<Elem>> = if rows == 0 {
                (0..monos.len()).map(|i| unit(monos.len(), i)).collect()
            } else {
                Matrix::from_columns(f, rows, &columns).kernel_basis()
            };
            for v in kernel {
                let terms = monos
                    .iter()
                    .cloned()
                    .zip(v)
                    .filter(|(_, c)| *c != 0)
                    .collect();
                polys.push(Polynomial::from_raw(&self.ring, terms));
            }
        }
        Ok((HomogeneousIdeal::new(&self.ring, polys)?, Some(top)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::modrep::GroupModule;

    fn coh(p: u32, r: usize, len: usize) -> GroupCohomology {
        GroupCohomology::new(&GroupData::elementary(p, r).unwrap(), len).unwrap()
    }

    #[test]
    fn ring_presentations() {
        assert_eq!(coh(2, 1, 4).ring().describe(), "F_2[eta1(1)]");
        assert_eq!(coh(3, 1, 4).ring().describe(), "F_3[eta1(1), theta1(2)]");
        assert_eq!(coh(2, 2, 4).ring().describe(), "F_2[eta1(1), eta2(1)]");
        let z4 = GroupData::new(&Field::prime(2).unwrap(), &[4]).unwrap();
        let c = GroupCohomology::new(&z4, 8).unwrap();
        assert_eq!(c.ring().describe(), "F_2[eta1(1), theta1(2)] / (eta1^2)");
        assert!(c.presentation_mismatches(7).unwrap().is_empty());
    }

    #[test]
    fn presentations_match_resolutions() {
        for (p, r) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let c = coh(p, r, 7);
            assert!(
                c.presentation_mismatches(7).unwrap().is_empty(),
                "p={p} r={r}"
            );
        }
    }

    #[test]
    fn eta_lift_multiplies_by_z() {
        let c = coh(2, 1, 4);
        let lift = c.lift_cocycle(c.generator_class(0), 1).unwrap();
        // Every P_a is k[Z/2] with d = z; the lift of eta is the identity shift, so
        // d ∘ f realises multiplication by z.
        let res = c.resolution();
        let z = c.algebra().generator(0).clone();
        for a in 1..3 {
            assert_eq!(lift.matrix(res, a), Matrix::identity(c.group().field(), 2));
            assert_eq!(res.differential(a).mul(&lift.matrix(res, a)), z);
        }
        let zero = c.lift_cocycle(&[0], 1).unwrap();
        assert!(zero.matrix(c.resolution(), 2).is_zero());
        let id = c.lift_cocycle(&[1], 0).unwrap();
        assert_eq!(
            id.matrix(c.resolution(), 3),
            Matrix::identity(c.group().field(), 2)
        );
    }

    #[test]
    fn ext_of_trivial_module() {
        let c = coh(2, 2, 8);
        let k = WindowedComplex::concentrated(&GroupModule::trivial(c.group()), 0);
        let t = c.ext_table(&k, 7).unwrap();
        assert_eq!(
            t.dims().iter().map(|x| x.1).collect::<Vec<_>>(),
            (1..=8).collect::<Vec<_>>()
        );
        assert!(t.annihilator(7).unwrap().0.is_zero().unwrap());
        assert_eq!(t.module_generator_degrees(7), vec![(0, 1)]);
    }

    #[test]
    fn ext_of_free_module() {
        let c = coh(2, 2, 8);
        let a = WindowedComplex::concentrated(&GroupModule::free(c.group(), 1), 0);
        let t = c.ext_table(&a, 7).unwrap();
        assert_eq!(t.dim(0), 1);
        assert!((1..=7).all(|n| t.dim(n) == 0));
        let ann = t.annihilator(7).unwrap().0;
        assert!(ann
            .same_ideal(&HomogeneousIdeal::irrelevant(c.ring()))
            .unwrap());
    }

    #[test]
    fn eta_is_periodicity_on_z2() {
        let c = coh(2, 1, 8);
        let k = WindowedComplex::concentrated(&GroupModule::trivial(c.group()), 0);
        let t = c.ext_table(&k, 7).unwrap();
        for n in 0..7 {
            assert!(t.generator_action(0, n).unwrap().is_invertible());
        }
    }

    #[test]
    fn shifted_complex_shifts_ext() {
        let c = coh(3, 1, 9);
        let k = GroupModule::trivial(c.group());
        let t0 = c
            .ext_table(&WindowedComplex::concentrated(&k, 0), 6)
            .unwrap();
        let t2 = c
            .ext_table(&WindowedComplex::concentrated(&k, -2), 4)
            .unwrap();
        assert_eq!(t2.lo(), -2);
        for n in 0..=6 {
            assert_eq!(t0.dim(n), t2.dim(n - 2));
        }
    }
}
