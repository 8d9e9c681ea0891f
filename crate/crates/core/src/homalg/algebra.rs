//! Finite-dimensional local algebras given by left-multiplication matrices, and graded
//! minimal free resolutions over them.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::{EchelonBasis, Matrix};
use crate::modrep::{GroupData, GroupModule};

/// A local algebra with a basis of words in its generators. Basis element 0 is the unit
/// and the remaining basis elements span the radical.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    field: Field,
    gens: Vec<Matrix>,
    gen_degrees: Vec<i32>,
    words: Vec<Vec<usize>>,
    degrees: Vec<i32>,
    // Left multiplication by each basis element.
    left: Vec<Matrix>,
}

impl FiniteAlgebra {
    fn build(
        field: &Field,
        gens: Vec<Matrix>,
        gen_degrees: Vec<i32>,
        words: Vec<Vec<usize>>,
    ) -> FiniteAlgebra {
        let n = words.len();
        let left: Vec<Matrix> = words
            .iter()
            .map(|w| {
                w.iter()
                    .fold(Matrix::identity(field, n), |acc, &g| acc.mul(&gens[g]))
            })
            .collect();
        let degrees = words
            .iter()
            .map(|w| w.iter().map(|&g| gen_degrees[g]).sum())
            .collect();
        let alg = FiniteAlgebra {
            field: field.clone(),
            gens,
            gen_degrees,
            words,
            degrees,
            left,
        };
        debug_assert!((0..n).all(|u| alg.left[u].column(0) == unit_vec(n, u)));
        alg
    }

    /// `kG = k[z]/(z_i^{ord_i})` with `z_i = g_i - 1`, monomial basis in lexicographic
    /// exponent order; everything in internal degree 0.
    pub fn group_algebra(group: &GroupData) -> FiniteAlgebra {
        let f = group.field();
        let elems = group.elements();
        let n = elems.len();
        let index = |v: &[u32]| -> usize {
            v.iter()
                .zip(group.orders())
                .fold(0, |acc, (&x, &o)| acc * o as usize + x as usize)
        };
        let gens = (0..group.rank())
            .map(|i| {
                let mut m = Matrix::zeros(f, n, n);
                for (c, a) in elems.iter().enumerate() {
                    if a[i] + 1 < group.orders()[i] {
                        let mut b = a.clone();
                        b[i] += 1;
                        m.set(index(&b), c, 1);
                    }
                }
                m
            })
            .collect();
        let words = elems
            .iter()
            .map(|a| {
                a.iter()
                    .enumerate()
                    .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
                    .collect()
            })
            .collect();
        FiniteAlgebra::build(f, gens, vec![0; group.rank()], words)
    }

    /// Exterior algebra on `r` generators of the given internal degree; basis `ξ_S` for
    /// subsets ordered by size, then lexicographically.
    pub fn exterior(field: &Field, r: usize, degree: i32) -> FiniteAlgebra {
        let mut subsets: Vec<Vec<usize>> = (0u32..1 << r)
            .map(|mask| (0..r).filter(|&i| mask & (1 << i) != 0).collect())
            .collect();
        subsets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        let n = subsets.len();
        let gens = (0..r)
            .map(|i| {
                let mut m = Matrix::zeros(field, n, n);
                for (c, s) in subsets.iter().enumerate() {
                    if s.contains(&i) {
                        continue;
                    }
                    let mut t = s.clone();
                    t.push(i);
                    t.sort_unstable();
                    let sign = s.iter().filter(|&&x| x < i).count() % 2 == 1;
                    let row = subsets.iter().position(|u| *u == t).unwrap();
                    m.set(row, c, if sign { field.neg(1) } else { 1 });
                }
                m
            })
            .collect();
        FiniteAlgebra::build(field, gens, vec![degree; r], subsets)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn generator(&self, i: usize) -> &Matrix {
        &self.gens[i]
    }

    pub fn generator_degree(&self, i: usize) -> i32 {
        self.gen_degrees[i]
    }

    pub fn basis_word(&self, u: usize) -> &[usize] {
        &self.words[u]
    }

    pub fn basis_degree(&self, u: usize) -> i32 {
        self.degrees[u]
    }

    pub fn left_mult(&self, u: usize) -> &Matrix {
        &self.left[u]
    }

    /// Product `a * b` of algebra elements in basis coordinates.
    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let mut out = vec![0; self.dim()];
        for (u, &c) in a.iter().enumerate() {
            if c != 0 {
                let v = self.left[u].mul_vec(b);
                for (o, x) in out.iter_mut().zip(v) {
                    *o = self.field.add(*o, self.field.mul(c, x));
                }
            }
        }
        out
    }

    /// Action matrices of every basis element on a module given by generator actions.
    pub fn basis_actions(&self, actions: &[Matrix]) -> Vec<Matrix> {
        let dim = actions.first().map_or(0, Matrix::rows);
        self.words
            .iter()
            .map(|w| {
                w.iter()
                    .fold(Matrix::identity(&self.field, dim), |acc, &g| {
                        acc.mul(&actions[g])
                    })
            })
            .collect()
    }
}

fn unit_vec(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// A module over a [`FiniteAlgebra`]: generator actions plus an internal degree per basis vector.
#[derive(Clone, Debug)]
pub struct AlgModule {
    pub actions: Vec<Matrix>,
    pub degrees: Vec<i32>,
}

impl AlgModule {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// The trivial module `k` in internal degree 0.
    pub fn trivial(alg: &FiniteAlgebra) -> AlgModule {
        AlgModule {
            actions: vec![Matrix::zeros(alg.field(), 1, 1); alg.num_gens()],
            degrees: vec![0],
        }
    }

    pub fn from_group_module(m: &GroupModule) -> AlgModule {
        AlgModule {
            actions: m.nilpotents(),
            degrees: vec![0; m.dim()],
        }
    }
}

/// Minimal free resolution `… → P_1 → P_0 → M`. `P_n = ⊕_j A e_j` with basis `(j, u)` at
/// index `j * dim A + u`.
#[derive(Clone, Debug)]
pub struct Resolution {
    alg: FiniteAlgebra,
    module_dim: usize,
    gen_degrees: Vec<Vec<i32>>,
    images: Vec<Vec<Vec<Elem>>>,
    maps: Vec<Matrix>,
}

/// `u · v` for `v` in a free module of rank `v.len() / dim A`.
pub fn free_left_mult(alg: &FiniteAlgebra, u: usize, v: &[Elem]) -> Vec<Elem> {
    let n = alg.dim();
    let mut out = Vec::with_capacity(v.len());
    for block in v.chunks(n) {
        out.extend(alg.left_mult(u).mul_vec(block));
    }
    out
}

/// k-linear matrix of the A-linear map from a free module sending `e_j` to `images[j]`,
/// where `act(u, x)` is the action of basis element `u` on the target.
fn free_map(
    alg: &FiniteAlgebra,
    images: &[Vec<Elem>],
    target_dim: usize,
    act: &dyn Fn(usize, &[Elem]) -> Vec<Elem>,
) -> Matrix {
    let n = alg.dim();
    let mut m = Matrix::zeros(alg.field(), target_dim, images.len() * n);
    for (j, img) in images.iter().enumerate() {
        for u in 0..n {
            let col = act(u, img);
            for (r, &x) in col.iter().enumerate() {
                if x != 0 {
                    m.set(r, j * n + u, x);
                }
            }
        }
    }
    m
}

fn vector_degree(v: &[Elem], degrees: &[i32]) -> Option<i32> {
    v.iter()
        .zip(degrees)
        .find(|(&x, _)| x != 0)
        .map(|(_, &d)| d)
}

/// Minimal generators of the submodule with basis `sub` (homogeneous vectors), as a
/// complement of its radical, chosen degree by degree in basis order.
fn minimal_generators(
    alg: &FiniteAlgebra,
    sub: &[Vec<Elem>],
    degrees: &[i32],
    act_gen: &dyn Fn(usize, &[Elem]) -> Vec<Elem>,
) -> Vec<(Vec<Elem>, i32)> {
    let dim = degrees.len();
    let mut span = EchelonBasis::new(alg.field(), dim);
    for v in sub {
        for g in 0..alg.num_gens() {
            span.insert(&act_gen(g, v));
        }
    }
    let mut tagged: Vec<(i32, usize)> = sub
        .iter()
        .enumerate()
        .filter_map(|(i, v)| vector_degree(v, degrees).map(|d| (d, i)))
        .collect();
    tagged.sort();
    let mut out = Vec::new();
    for (d, i) in tagged {
        if span.insert(&sub[i]) {
            out.push((sub[i].clone(), d));
        }
    }
    out
}

impl Resolution {
    /// Resolve `module` through `P_length`.
    pub fn minimal(alg: &FiniteAlgebra, module: &AlgModule, length: usize) -> Result<Resolution> {
        if module.actions.len() != alg.num_gens() {
            return Err(Error::Usage(
                "module actions do not match the algebra generators".into(),
            ));
        }
        let n = alg.dim();
        let basis_actions = alg.basis_actions(&module.actions);
        let mut res = Resolution {
            alg: alg.clone(),
            module_dim: module.dim(),
            gen_degrees: vec![],
            images: vec![],
            maps: vec![],
        };
        // Step 0: generators of M itself.
        let whole: Vec<Vec<Elem>> = (0..module.dim())
            .map(|i| unit_vec(module.dim(), i))
            .collect();
        let act_m = |g: usize, v: &[Elem]| module.actions[g].mul_vec(v);
        let gens0 = minimal_generators(alg, &whole, &module.degrees, &act_m);
        let images0: Vec<Vec<Elem>> = gens0.iter().map(|g| g.0.clone()).collect();
        let map0 = free_map(alg, &images0, module.dim(), &|u, v| {
            basis_actions[u].mul_vec(v)
        });
        res.gen_degrees.push(gens0.iter().map(|g| g.1).collect());
        res.images.push(images0);
        res.maps.push(map0);
        for _ in 1..=length {
            let prev = res.maps.last().unwrap();
            let prev_degrees = res.free_degrees(res.gen_degrees.len() - 1);
            let kernel = prev.kernel_basis();
            let act_free = |g: usize, v: &[Elem]| -> Vec<Elem> {
                v.chunks(n)
                    .flat_map(|b| alg.generator(g).mul_vec(b))
                    .collect()
            };
            let gens = minimal_generators(alg, &kernel, &prev_degrees, &act_free);
            let images: Vec<Vec<Elem>> = gens.iter().map(|g| g.0.clone()).collect();
            let map = free_map(alg, &images, prev.cols(), &|u, v| free_left_mult(alg, u, v));
            res.gen_degrees.push(gens.iter().map(|g| g.1).collect());
            res.images.push(images);
            res.maps.push(map);
        }
        Ok(res)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.alg
    }

    pub fn length(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn rank(&self, n: usize) -> usize {
        self.gen_degrees[n].len()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.gen_degrees.iter().map(Vec::len).collect()
    }

    pub fn generator_degrees(&self, n: usize) -> &[i32] {
        &self.gen_degrees[n]
    }

    /// Internal degree of every basis vector `(j, u)` of `P_n`.
    pub fn free_degrees(&self, n: usize) -> Vec<i32> {
        self.gen_degrees[n]
            .iter()
            .flat_map(|&d| (0..self.alg.dim()).map(move |u| d + self.alg.basis_degree(u)))
            .collect()
    }

    /// `d_n(e_j)`: in `P_{n-1}` for `n ≥ 1`, in the module for `n = 0`.
    pub fn image(&self, n: usize, j: usize) -> &[Elem] {
        &self.images[n][j]
    }

    /// k-linear matrix of `d_n` (`n = 0` is the augmentation onto the module).
    pub fn differential(&self, n: usize) -> &Matrix {
        &self.maps[n]
    }

    /// Coefficient `c_{ij} ∈ A` of `e_i` in `d_n(e_j)`, for `n ≥ 1`.
    pub fn coefficient(&self, n: usize, i: usize, j: usize) -> &[Elem] {
        let a = self.alg.dim();
        &self.images[n][j][i * a..(i + 1) * a]
    }

    /// Minimality: every `d_n` with `n ≥ 1` has all coefficients in the radical.
    pub fn is_minimal(&self) -> bool {
        (1..self.maps.len()).all(|n| {
            (0..self.rank(n))
                .all(|j| (0..self.rank(n - 1)).all(|i| self.coefficient(n, i, j)[0] == 0))
        })
    }
}
