//! Cohomological support from annihilators of `Ext*(k, X)`, and Koszul objects.

use super::cohomology::{ExtTable, GroupCohomology};
use super::complex::WindowedComplex;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::lattice::SpecSet;
use crate::matrix::{LinearSolver, Matrix};
use crate::modrep::{GroupData, GroupModule};
use crate::poly::{commutative_reduction, HomogeneousIdeal, Polynomial, Ring};

pub const DEFAULT_DEGREE_BOUND: i32 = 10;
pub const DEFAULT_STABILIZATION_WINDOW: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportOptions {
    pub degree_bound: i32,
    pub window: i32,
}

impl Default for SupportOptions {
    fn default() -> Self {
        SupportOptions {
            degree_bound: DEFAULT_DEGREE_BOUND,
            window: DEFAULT_STABILIZATION_WINDOW,
        }
    }
}

/// Outcome of an annihilator computation.
#[derive(Clone, Debug)]
pub struct SupportReport {
    /// The annihilator candidate in `R = H*(G, k)`.
    pub ideal: HomogeneousIdeal,
    /// Its image in `R` modulo odd generators.
    pub reduced: HomogeneousIdeal,
    pub support: SpecSet,
    pub degree_bound: i32,
    /// Top degree of an `R`-module generator of `Ext` seen up to the bound.
    pub generator_top: Option<i32>,
    /// `V(ann_{D'})` was the same for every `D'` in `[D - W, D]`.
    pub stabilized: bool,
    pub stabilization_window: (i32, i32),
}

/// The ring `R` modulo its odd generators, in which supports live.
pub fn support_ring(group: &GroupData) -> Result<Ring> {
    let coh = GroupCohomology::shared(group, 3)?;
    Ok(commutative_reduction(coh.ring()).0)
}

/// `Ext^n(k, C)` for `n ≤ max_degree` with the action of `R = Ext*(k, k)`.
pub fn ext_table(c: &WindowedComplex, max_degree: i32) -> Result<ExtTable> {
    let lo = if c.components().is_empty() { 0 } else { c.lo() };
    let length = (max_degree + 1 - lo).max(3) as usize;
    GroupCohomology::shared(c.group(), length)?.ext_table(c, max_degree)
}

/// `Ext*(k, k)` up to `max_degree` with its presented ring.
pub fn ext_ring(group: &GroupData, max_degree: i32) -> Result<(Ring, ExtTable)> {
    let k = WindowedComplex::concentrated(&GroupModule::trivial(group), 0);
    let t = ext_table(&k, max_degree)?;
    Ok((t.ring().clone(), t))
}

/// `Ext*(X, X) = H*(G, End X)` up to `max_degree`, with the action of `R`.
pub fn r_action_table(x: &WindowedComplex, max_degree: i32) -> Result<ExtTable> {
    ext_table(&x.end_complex()?, max_degree)
}

fn report_from_table(table: &ExtTable, opts: SupportOptions) -> Result<SupportReport> {
    let hom = commutative_reduction(table.ring()).1;
    let d = opts.degree_bound;
    let mut last = None;
    let mut stabilized = true;
    let lo = (d - opts.window).max(table.lo());
    for bound in lo..=d {
        let (ideal, top) = table.annihilator(bound)?;
        let reduced = hom.apply_ideal(&ideal);
        let support = SpecSet::v_of(&reduced)?;
        if let Some((_, _, _, prev)) = &last {
            if !SpecSet::equals(prev, &support)? {
                stabilized = false;
            }
        }
        last = Some((ideal, reduced, top, support));
    }
    let (ideal, reduced, generator_top, support) = last.expect("window is non-empty");
    Ok(SupportReport {
        ideal,
        reduced,
        support,
        degree_bound: d,
        generator_top,
        stabilized,
        stabilization_window: (lo, d),
    })
}

/// Annihilator of `Ext*(k, X)` up to the degree bound, with stabilization status. For a
/// p-group `V(ann Ext*(X, X)) = V(ann Ext*(k, X))` since `k` builds every object.
pub fn annihilator_candidate(x: &WindowedComplex, opts: SupportOptions) -> Result<SupportReport> {
    if opts.degree_bound < 1 || opts.window < 0 {
        return Err(Error::Usage(
            "degree bound must be positive and the window non-negative".into(),
        ));
    }
    let table = ext_table(x, opts.degree_bound)?;
    report_from_table(&table, opts)
}

/// Cohomological support of a bounded complex.
pub fn supp(x: &WindowedComplex, opts: SupportOptions) -> Result<SpecSet> {
    Ok(annihilator_candidate(x, opts)?.support)
}

/// Support of a module. Free summands only contribute the closed point, so `Ext` is
/// computed on the core.
pub fn supp_module_report(m: &GroupModule, opts: SupportOptions) -> Result<SupportReport> {
    let core = m.stable_core();
    if core.dim() == 0 && m.dim() > 0 {
        let ring = support_ring(m.group())?;
        let coh = GroupCohomology::shared(m.group(), 3)?;
        let irrelevant = HomogeneousIdeal::irrelevant(&ring);
        return Ok(SupportReport {
            ideal: HomogeneousIdeal::irrelevant(coh.ring()),
            support: SpecSet::v_of(&irrelevant)?,
            reduced: irrelevant,
            degree_bound: opts.degree_bound,
            generator_top: Some(0),
            stabilized: true,
            stabilization_window: (opts.degree_bound - opts.window, opts.degree_bound),
        });
    }
    annihilator_candidate(&WindowedComplex::concentrated(&core, 0), opts)
}

pub fn supp_module(m: &GroupModule, opts: SupportOptions) -> Result<SpecSet> {
    Ok(supp_module_report(m, opts)?.support)
}

/// `P_a` of the resolution of `k` as a `kG`-module.
fn free_term(coh: &GroupCohomology, a: usize) -> Result<GroupModule> {
    let alg = coh.algebra();
    let rank = coh.resolution().rank(a);
    let zs = (0..alg.num_gens())
        .map(|i| {
            let g = alg.generator(i);
            Matrix::block_diag(alg.field(), &vec![g; rank])
        })
        .collect();
    GroupModule::from_nilpotents(coh.group(), rank * alg.dim(), zs)
}

/// `Ω^d k = im(d_d) ⊆ P_{d-1}`, with its inclusion and a section of `d_d` on its basis.
fn syzygy(coh: &GroupCohomology, d: usize) -> Result<(GroupModule, Matrix, Vec<Vec<Elem>>)> {
    let res = coh.resolution();
    let dd = res.differential(d);
    let f = coh.group().field();
    let (_, pivots) = dd.rref();
    let basis: Vec<Vec<Elem>> = pivots.iter().map(|&c| dd.column(c)).collect();
    let incl = Matrix::from_columns(f, dd.rows(), &basis);
    let solver = LinearSolver::new(&incl);
    let ambient = free_term(coh, d - 1)?;
    let gens = ambient
        .generators()
        .iter()
        .map(|g| {
            let cols: Vec<Vec<Elem>> = basis
                .iter()
                .map(|w| {
                    solver
                        .solve(&g.mul_vec(w))
                        .expect("syzygies form a submodule")
                })
                .collect();
            Matrix::from_columns(f, basis.len(), &cols)
        })
        .collect();
    let omega = GroupModule::from_matrices(coh.group(), basis.len(), gens)?;
    let sections = pivots
        .iter()
        .map(|&c| {
            let mut v = vec![0; dd.cols()];
            v[c] = 1;
            v
        })
        .collect();
    Ok((omega, incl, sections))
}

/// `r̄ : Ω^d k → k`, `r̄(d_d x) = α(x)`, as a row over the syzygy basis.
fn syzygy_functional(coh: &GroupCohomology, alpha: &[Elem], sections: &[Vec<Elem>]) -> Matrix {
    let f = coh.group().field();
    let n = coh.algebra().dim();
    let row: Vec<Elem> = sections
        .iter()
        .map(|x| {
            alpha
                .iter()
                .enumerate()
                .fold(0, |acc, (j, &a)| f.add(acc, f.mul(a, x[j * n])))
        })
        .collect();
    Matrix::from_rows(f, row.len(), &[row])
}

/// `kos(k, α)` for a class `α ∈ Ext^d(k, k)`, `d ≥ 1`: the cone of the chain map from
/// `Q = [Ω^d → P_{d-1} → … → P_0] ≃ k` to `Σ^d k` given by `r̄` in degree `-d`.
pub fn koszul_of_trivial(group: &GroupData, d: usize, alpha: &[Elem]) -> Result<WindowedComplex> {
    if d == 0 {
        return Err(Error::Usage(
            "Koszul objects of degree-zero classes are handled by the caller".into(),
        ));
    }
    let coh = GroupCohomology::shared(group, d + 1)?;
    if alpha.len() != coh.resolution().rank(d) {
        return Err(Error::Usage(format!("class does not live on P_{d}")));
    }
    let (omega, incl, sections) = syzygy(&coh, d)?;
    let mut components = vec![omega];
    let mut diffs = vec![incl];
    for a in (0..d).rev() {
        components.push(free_term(&coh, a)?);
        if a > 0 {
            diffs.push(coh.resolution().differential(a).clone());
        }
    }
    let full = (i32::MIN, i32::MAX);
    let q = WindowedComplex::new(group, -(d as i32), components, diffs, full)?;
    let target = WindowedComplex::concentrated(&GroupModule::trivial(group), -(d as i32));
    let f = group.field();
    let mut maps = vec![syzygy_functional(&coh, alpha, &sections)];
    for a in (0..d).rev() {
        maps.push(Matrix::zeros(f, 0, q.component(-(a as i32)).dim()));
    }
    q.cone(&target, &maps)
}

/// `kos(X, r) = kos(k, r) ⊗ X`.
pub fn koszul_object(x: &WindowedComplex, r: &Polynomial) -> Result<WindowedComplex> {
    let coh = GroupCohomology::shared(x.group(), 3)?;
    if r.ring() != coh.ring() {
        return Err(Error::Usage(
            "Koszul element must live in the cohomology ring of the group".into(),
        ));
    }
    if r.is_zero() {
        return Err(Error::Usage(
            "the zero element has no degree; use koszul_object_of_class".into(),
        ));
    }
    let d = r.degree().expect("nonzero");
    if d == 0 {
        // A nonzero scalar: the cone of an isomorphism.
        return WindowedComplex::new(x.group(), 0, vec![], vec![], x.window());
    }
    let coh = GroupCohomology::shared(x.group(), d as usize + 1)?;
    let (d, alpha) = coh.class_of(r)?;
    koszul_object_of_class(x, d, &alpha)
}

/// `kos(X, α)` for a class given on the generators of `P_d`; `α = 0` gives the cone of the
/// zero map.
pub fn koszul_object_of_class(
    x: &WindowedComplex,
    d: usize,
    alpha: &[Elem],
) -> Result<WindowedComplex> {
    koszul_of_trivial(x.group(), d, alpha)?.tensor(x)
}

/// Iterated Koszul object over a list of homogeneous generators, in order.
pub fn koszul_ideal(x: &WindowedComplex, gens: &[Polynomial]) -> Result<WindowedComplex> {
    let mut cur = x.clone();
    for r in gens {
        if r.is_zero() {
            return Err(Error::Usage(
                "zero generators carry no degree; drop them".into(),
            ));
        }
        cur = koszul_object(&cur, r)?;
    }
    Ok(cur)
}

/// The Carlson module `L_α = ker(r̄ : Ω^d k → k)`, or `Ω^d k` itself when `α = 0`.
pub fn carlson_module(group: &GroupData, d: usize, alpha: &[Elem]) -> Result<GroupModule> {
    let coh = GroupCohomology::shared(group, d + 1)?;
    let (omega, _, sections) = syzygy(&coh, d)?;
    let functional = syzygy_functional(&coh, alpha, &sections);
    if functional.is_zero() {
        return Ok(omega);
    }
    let f = group.field();
    let basis = functional.kernel_basis();
    let incl = Matrix::from_columns(f, omega.dim(), &basis);
    let solver = LinearSolver::new(&incl);
    let gens = omega
        .generators()
        .iter()
        .map(|g| {
            let cols: Vec<Vec<Elem>> = basis
                .iter()
                .map(|w| solver.solve(&g.mul_vec(w)).expect("kernel of a module map"))
                .collect();
            Matrix::from_columns(f, basis.len(), &cols)
        })
        .collect();
    GroupModule::from_matrices(group, basis.len(), gens)
}

/// Compact stand-in for `kos(X, a)`: the core of `L_{r_1} ⊗ … ⊗ L_{r_n} ⊗ X`, stripping
/// free summands after each factor. `None` means the Koszul object is zero (a generator
/// is a nonzero scalar, or `X = 0`).
pub fn compact_koszul_module(x: &GroupModule, gens: &[Polynomial]) -> Result<Option<GroupModule>> {
    if x.dim() == 0 {
        return Ok(None);
    }
    let mut cur = x.stable_core();
    let mut nonzero = true;
    for r in gens {
        if r.is_zero() {
            continue;
        }
        let d = r.degree().expect("nonzero");
        if d == 0 {
            nonzero = false;
            break;
        }
        let coh = GroupCohomology::shared(x.group(), d as usize + 1)?;
        let (d, alpha) = coh.class_of(r)?;
        let carlson = carlson_module(x.group(), d, &alpha)?;
        if alpha.iter().all(|&a| a == 0) {
            // Cone of zero: X ⊕ shifts of X, the same support.
            continue;
        }
        cur = carlson.tensor_diag(&cur)?.stable_core();
    }
    Ok(if nonzero { Some(cur) } else { None })
}

/// Support of `kos(X, a)` through the compact model: the core's support, the closed point
/// when only free summands remain, and `∅` for the zero object.
pub fn supp_koszul_module(
    x: &GroupModule,
    gens: &[Polynomial],
    opts: SupportOptions,
) -> Result<SpecSet> {
    match compact_koszul_module(x, gens)? {
        None => SpecSet::empty(&support_ring(x.group())?),
        Some(core) if core.dim() == 0 => {
            SpecSet::v_of(&HomogeneousIdeal::irrelevant(&support_ring(x.group())?))
        }
        Some(core) => supp_module(&core, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: u32, r: usize) -> GroupData {
        GroupData::elementary(p, r).unwrap()
    }

    fn opts() -> SupportOptions {
        SupportOptions {
            degree_bound: 6,
            window: 2,
        }
    }

    fn ring(group: &GroupData) -> Ring {
        GroupCohomology::shared(group, 3).unwrap().ring().clone()
    }

    fn v(group: &GroupData, gens: &[&str]) -> SpecSet {
        let r = support_ring(group).unwrap();
        SpecSet::v_of(&HomogeneousIdeal::parse(&r, gens).unwrap()).unwrap()
    }

    #[test]
    fn supports_of_basic_modules() {
        let e = g(2, 2);
        let k = GroupModule::trivial(&e);
        assert!(supp_module(&k, opts())
            .unwrap()
            .equals(&SpecSet::whole(&support_ring(&e).unwrap()).unwrap())
            .unwrap());
        let free = GroupModule::free(&e, 1);
        assert!(supp_module(&free, opts())
            .unwrap()
            .equals(&v(&e, &["eta1", "eta2"]))
            .unwrap());
        let direct = supp(&WindowedComplex::concentrated(&free, 0), opts()).unwrap();
        assert!(direct.equals(&v(&e, &["eta1", "eta2"])).unwrap());
        let zero = GroupModule::direct_sum_all(&e, &[]).unwrap();
        assert!(supp_module(&zero, opts()).unwrap().is_empty());
        let report = supp_module_report(&k, opts()).unwrap();
        assert!(report.stabilized);
    }

    #[test]
    fn koszul_of_eta_on_z2_is_free() {
        let e = g(2, 1);
        let r = Polynomial::parse(&ring(&e), "eta1").unwrap();
        let k = WindowedComplex::concentrated(&GroupModule::trivial(&e), 0);
        let kos = koszul_object(&k, &r).unwrap();
        let h = kos.homology_dims();
        let nonzero: Vec<_> = h.iter().filter(|x| x.1 > 0).collect();
        assert_eq!(nonzero.len(), 1);
        let (deg, dim) = *nonzero[0];
        assert_eq!(dim, 2);
        assert!(kos.homology_module(deg).is_free());
    }

    #[test]
    fn koszul_of_zero_adds_shifted_copy() {
        let e = g(2, 2);
        let k = WindowedComplex::concentrated(&GroupModule::trivial(&e), 0);
        let kos = koszul_object_of_class(&k, 1, &[0, 0]).unwrap();
        let total: usize = kos.homology_dims().iter().map(|x| x.1).sum();
        assert_eq!(total, 2);
    }

    #[test]
    fn koszul_supports_cone_and_compact_agree() {
        let e = g(2, 2);
        let r = ring(&e);
        let k = GroupModule::trivial(&e);
        for gens in [
            vec!["eta1"],
            vec!["eta1 + eta2"],
            vec!["eta1", "eta2"],
            vec!["eta1^2 + eta1*eta2"],
        ] {
            let polys: Vec<Polynomial> = gens
                .iter()
                .map(|s| Polynomial::parse(&r, s).unwrap())
                .collect();
            let cone = koszul_ideal(&WindowedComplex::concentrated(&k, 0), &polys).unwrap();
            let s_cone = supp(&cone, opts()).unwrap();
            let s_compact = supp_koszul_module(&k, &polys, opts()).unwrap();
            let expected = v(&e, &gens);
            assert!(
                s_cone.equals(&expected).unwrap(),
                "{gens:?}: cone gave {s_cone}"
            );
            assert!(
                s_compact.equals(&expected).unwrap(),
                "{gens:?}: compact gave {s_compact}"
            );
        }
    }

    #[test]
    fn koszul_support_odd_prime() {
        let e = g(3, 2);
        let r = ring(&e);
        let k = GroupModule::trivial(&e);
        let theta = Polynomial::parse(&r, "theta1").unwrap();
        let s = supp_koszul_module(&k, &[theta], opts()).unwrap();
        assert!(s.equals(&v(&e, &["theta1"])).unwrap(), "got {s}");
        let cone = koszul_object(
            &WindowedComplex::concentrated(&k, 0),
            &Polynomial::parse(&r, "eta1").unwrap(),
        )
        .unwrap();
        // eta1 is nilpotent, so kos(k, eta1) has full support.
        assert!(supp(&cone, opts())
            .unwrap()
            .equals(&SpecSet::whole(&support_ring(&e).unwrap()).unwrap())
            .unwrap());
    }

    #[test]
    fn r_action_on_free_and_trivial() {
        let e = g(2, 2);
        let free = WindowedComplex::concentrated(&GroupModule::free(&e, 1), 0);
        let t = r_action_table(&free, 4).unwrap();
        assert_eq!(t.dim(0), 4);
        assert!((1..=4).all(|n| t.dim(n) == 0));
        let k = WindowedComplex::concentrated(&GroupModule::trivial(&e), 0);
        let tk = r_action_table(&k, 4).unwrap();
        let (_, tr) = ext_ring(&e, 4).unwrap();
        assert_eq!(tk.dims(), tr.dims());
        let e1 = g(2, 1);
        let t1 = r_action_table(
            &WindowedComplex::concentrated(&GroupModule::trivial(&e1), 0),
            5,
        )
        .unwrap();
        assert!((0..5).all(|n| t1.generator_action(0, n).unwrap().is_invertible()));
    }

    #[test]
    fn suspension_and_sum_invariance() {
        let e = g(2, 2);
        let x = GroupModule::shifted_cyclic(&e, &[1, 0], 2).unwrap();
        let cx = WindowedComplex::concentrated(&x, 0);
        let s0 = supp(&cx, opts()).unwrap();
        assert!(s0
            .equals(&supp(&cx.suspension(2), opts()).unwrap())
            .unwrap());
        let y = GroupModule::shifted_cyclic(&e, &[0, 1], 2).unwrap();
        let cy = WindowedComplex::concentrated(&y, 0);
        let sum = supp(&cx.direct_sum(&cy).unwrap(), opts()).unwrap();
        assert!(sum
            .equals(&s0.join(&supp(&cy, opts()).unwrap()).unwrap())
            .unwrap());
        assert_eq!(s0.to_string(), "V(eta1)");
    }
}
