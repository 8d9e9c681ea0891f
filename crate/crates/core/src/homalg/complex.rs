use crate::error::{Error, Result};
use crate::field::Elem;
use crate::matrix::{Matrix, Quotient};
use crate::modrep::{GroupData, GroupModule};

/// A bounded cochain complex of `kG`-modules `C^lo → … → C^hi`, with the degree range in
/// which its cohomology is certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowedComplex {
    group: GroupData,
    lo: i32,
    components: Vec<GroupModule>,
    differentials: Vec<Matrix>,
    window: (i32, i32),
}

fn zero_module(group: &GroupData) -> GroupModule {
    GroupModule::direct_sum_all(group, &[]).expect("empty sum")
}

impl WindowedComplex {
    /// Validates shapes, equivariance of each differential and `d ∘ d = 0`.
    pub fn new(
        group: &GroupData,
        lo: i32,
        components: Vec<GroupModule>,
        differentials: Vec<Matrix>,
        window: (i32, i32),
    ) -> Result<WindowedComplex> {
        if components.is_empty() {
            return Ok(WindowedComplex {
                group: group.clone(),
                lo: 0,
                components,
                differentials: vec![],
                window,
            });
        }
        if differentials.len() + 1 != components.len() {
            return Err(Error::Usage(
                "a complex with n components needs n - 1 differentials".into(),
            ));
        }
        for (i, c) in components.iter().enumerate() {
            if c.group() != group {
                return Err(Error::Usage(format!(
                    "component in degree {} is over another group",
                    lo + i as i32
                )));
            }
        }
        for (i, d) in differentials.iter().enumerate() {
            let (s, t) = (&components[i], &components[i + 1]);
            let deg = lo + i as i32;
            if d.rows() != t.dim() || d.cols() != s.dim() {
                return Err(Error::Usage(format!(
                    "differential in degree {deg} has the wrong shape"
                )));
            }
            for (gs, gt) in s.generators().iter().zip(t.generators()) {
                if d.mul(gs) != gt.mul(d) {
                    return Err(Error::Invalid(format!(
                        "differential in degree {deg} is not G-equivariant"
                    )));
                }
            }
            if i + 1 < differentials.len() && !differentials[i + 1].mul(d).is_zero() {
                return Err(Error::Invalid(format!("d∘d != 0 starting in degree {deg}")));
            }
        }
        Ok(WindowedComplex {
            group: group.clone(),
            lo,
            components,
            differentials,
            window,
        })
    }

    /// A module placed in a single degree.
    pub fn concentrated(m: &GroupModule, degree: i32) -> WindowedComplex {
        WindowedComplex {
            group: m.group().clone(),
            lo: degree,
            components: vec![m.clone()],
            differentials: vec![],
            window: (i32::MIN, i32::MAX),
        }
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.components.len() as i32 - 1
    }

    pub fn window(&self) -> (i32, i32) {
        self.window
    }

    pub fn in_window(&self, degree: i32) -> bool {
        self.window.0 <= degree && degree <= self.window.1
    }

    pub fn component(&self, degree: i32) -> GroupModule {
        let i = degree - self.lo;
        if i >= 0 && (i as usize) < self.components.len() {
            self.components[i as usize].clone()
        } else {
            zero_module(&self.group)
        }
    }

    pub fn components(&self) -> &[GroupModule] {
        &self.components
    }

    /// `d^degree : C^degree → C^{degree+1}`, zero outside the stored range.
    pub fn differential(&self, degree: i32) -> Matrix {
        let i = degree - self.lo;
        if i >= 0 && (i as usize) < self.differentials.len() {
            self.differentials[i as usize].clone()
        } else {
            Matrix::zeros(
                self.group.field(),
                self.component(degree + 1).dim(),
                self.component(degree).dim(),
            )
        }
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(GroupModule::dim).sum()
    }

    /// Cycles modulo boundaries in one degree.
    fn homology_quotient(&self, degree: i32) -> (Quotient, GroupModule) {
        let c = self.component(degree);
        let f = self.group.field();
        let d_out = self.differential(degree);
        let d_in = self.differential(degree - 1);
        let cycles = if d_out.rows() == 0 {
            (0..c.dim()).map(|i| unit(c.dim(), i)).collect()
        } else {
            d_out.kernel_basis()
        };
        let boundaries: Vec<Vec<Elem>> = (0..d_in.cols()).map(|j| d_in.column(j)).collect();
        (Quotient::new(f, c.dim(), &boundaries, &cycles), c)
    }

    pub fn homology_dim(&self, degree: i32) -> usize {
        self.homology_quotient(degree).0.dim()
    }

    /// `(degree, dim H^degree)` over the stored range.
    pub fn homology_dims(&self) -> Vec<(i32, usize)> {
        (self.lo..=self.hi())
            .map(|d| (d, self.homology_dim(d)))
            .collect()
    }

    /// `H^degree` with its induced `kG`-action.
    pub fn homology_module(&self, degree: i32) -> GroupModule {
        let (q, c) = self.homology_quotient(degree);
        let f = self.group.field();
        let gens = c
            .generators()
            .iter()
            .map(|g| {
                let cols: Vec<Vec<Elem>> = q
                    .representatives()
                    .iter()
                    .map(|v| q.coordinates(&g.mul_vec(v)).expect("cycles are G-stable"))
                    .collect();
                Matrix::from_columns(f, q.dim(), &cols)
            })
            .collect();
        GroupModule::from_matrices(&self.group, q.dim(), gens)
            .expect("homology of a complex of modules")
    }

    /// `Σ^k C`: `(Σ^k C)^n = C^{n+k}` with differential `(-1)^k d`.
    pub fn suspension(&self, k: i32) -> WindowedComplex {
        let f = self.group.field();
        let sign = if k % 2 == 0 { 1 } else { f.neg(1) };
        WindowedComplex {
            group: self.group.clone(),
            lo: self.lo - k,
            components: self.components.clone(),
            differentials: self.differentials.iter().map(|d| d.scale(sign)).collect(),
            window: (
                self.window.0.saturating_sub(k),
                self.window.1.saturating_sub(k),
            ),
        }
    }

    fn span_with(&self, other: &WindowedComplex) -> (i32, i32) {
        match (self.components.is_empty(), other.components.is_empty()) {
            (true, true) => (0, -1),
            (true, false) => (other.lo, other.hi()),
            (false, true) => (self.lo, self.hi()),
            (false, false) => (self.lo.min(other.lo), self.hi().max(other.hi())),
        }
    }

    fn intersect_windows(a: (i32, i32), b: (i32, i32)) -> (i32, i32) {
        (a.0.max(b.0), a.1.min(b.1))
    }

    pub fn direct_sum(&self, other: &WindowedComplex) -> Result<WindowedComplex> {
        if self.group != other.group {
            return Err(Error::Usage(
                "direct sum of complexes over different groups".into(),
            ));
        }
        let (lo, hi) = self.span_with(other);
        let f = self.group.field();
        let components = (lo..=hi)
            .map(|d| self.component(d).direct_sum(&other.component(d)))
            .collect::<Result<Vec<_>>>()?;
        let differentials = (lo..hi)
            .map(|d| Matrix::block_diag(f, &[&self.differential(d), &other.differential(d)]))
            .collect();
        WindowedComplex::new(
            &self.group,
            lo,
            components,
            differentials,
            Self::intersect_windows(self.window, other.window),
        )
    }

    /// `(C ⊗ D)^n = ⊕_{i+j=n} C^i ⊗ D^j`, `d(c ⊗ e) = dc ⊗ e + (-1)^i c ⊗ de`, diagonal action.
    pub fn tensor(&self, other: &WindowedComplex) -> Result<WindowedComplex> {
        if self.group != other.group {
            return Err(Error::Usage(
                "tensor product of complexes over different groups".into(),
            ));
        }
        let f = self.group.field();
        if self.components.is_empty() || other.components.is_empty() {
            return WindowedComplex::new(&self.group, 0, vec![], vec![], (i32::MIN, i32::MAX));
        }
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        // Summands of degree n: pairs (i, j) with i + j = n, ordered by i.
        let summands = |n: i32| -> Vec<(i32, i32)> {
            (self.lo..=self.hi())
                .map(|i| (i, n - i))
                .filter(|&(_, j)| j >= other.lo && j <= other.hi())
                .collect()
        };
        let mut components = Vec::new();
        for n in lo..=hi {
            let parts = summands(n)
                .into_iter()
                .map(|(i, j)| self.component(i).tensor_diag(&other.component(j)))
                .collect::<Result<Vec<_>>>()?;
            components.push(GroupModule::direct_sum_all(&self.group, &parts)?);
        }
        let mut differentials = Vec::new();
        for n in lo..hi {
            let src = summands(n);
            let tgt = summands(n + 1);
            let offsets = |list: &[(i32, i32)]| -> Vec<usize> {
                let mut acc = 0;
                list.iter()
                    .map(|&(i, j)| {
                        let o = acc;
                        acc += self.component(i).dim() * other.component(j).dim();
                        o
                    })
                    .collect()
            };
            let (so, to) = (offsets(&src), offsets(&tgt));
            let mut m = Matrix::zeros(
                f,
                components[(n + 1 - lo) as usize].dim(),
                components[(n - lo) as usize].dim(),
            );
            for (s, &(i, j)) in src.iter().enumerate() {
                let ci = self.component(i).dim();
                let dj = other.component(j).dim();
                if let Some(t) = tgt.iter().position(|&x| x == (i + 1, j)) {
                    let block = self.differential(i).kron(&Matrix::identity(f, dj));
                    m.set_block(to[t], so[s], &block);
                }
                if let Some(t) = tgt.iter().position(|&x| x == (i, j + 1)) {
                    let mut block = Matrix::identity(f, ci).kron(&other.differential(j));
                    if i.rem_euclid(2) == 1 {
                        block = block.scale(f.neg(1));
                    }
                    m.set_block(to[t], so[s], &block);
                }
            }
            differentials.push(m);
        }
        let window = Self::intersect_windows(self.window, other.window);
        WindowedComplex::new(&self.group, lo, components, differentials, window)
    }

    /// Tensor with a module placed in degree 0.
    pub fn tensor_module(&self, m: &GroupModule) -> Result<WindowedComplex> {
        self.tensor(&WindowedComplex::concentrated(m, 0))
    }

    /// Cone of a degree-0 chain map `f: self → target` given by `maps[n - lo]` on
    /// `C^n → D^n` for `n` in `self`'s range: `Cone^n = C^{n+1} ⊕ D^n`,
    /// `d = [[-d_C, 0], [f, d_D]]`.
    pub fn cone(&self, target: &WindowedComplex, maps: &[Matrix]) -> Result<WindowedComplex> {
        if self.group != target.group {
            return Err(Error::Usage(
                "cone of a map between complexes over different groups".into(),
            ));
        }
        let f = self.group.field();
        let map_at = |n: i32| -> Matrix {
            let i = n - self.lo;
            if !self.components.is_empty() && i >= 0 && (i as usize) < maps.len() {
                maps[i as usize].clone()
            } else {
                Matrix::zeros(f, target.component(n).dim(), self.component(n).dim())
            }
        };
        for n in self.lo..=self.hi() {
            let m = map_at(n);
            if target.differential(n).mul(&m) != map_at(n + 1).mul(&self.differential(n)) {
                return Err(Error::Invalid(format!(
                    "cone: map is not a chain map in degree {n}"
                )));
            }
        }
        let shifted = self.suspension(1);
        let (lo, hi) = shifted.span_with(target);
        let components = (lo..=hi)
            .map(|n| self.component(n + 1).direct_sum(&target.component(n)))
            .collect::<Result<Vec<_>>>()?;
        let differentials = (lo..hi)
            .map(|n| {
                let (c1, c2) = (self.component(n + 1).dim(), self.component(n + 2).dim());
                let (t1, t2) = (target.component(n).dim(), target.component(n + 1).dim());
                let mut m = Matrix::zeros(f, c2 + t2, c1 + t1);
                m.set_block(0, 0, &self.differential(n + 1).scale(f.neg(1)));
                m.set_block(c2, 0, &map_at(n + 1));
                m.set_block(c2, c1, &target.differential(n));
                m
            })
            .collect();
        let window = Self::intersect_windows(shifted.window, target.window);
        WindowedComplex::new(&self.group, lo, components, differentials, window)
    }

    /// Hom complex `End^m = ⊕_i Hom(C^i, C^{i+m})` with conjugation action and
    /// `D f = d f - (-1)^m f d`. Entries of `f` are stored row-major.
    pub fn end_complex(&self) -> Result<WindowedComplex> {
        let f = self.group.field();
        if self.components.is_empty() {
            return Ok(self.clone());
        }
        let span = self.hi() - self.lo;
        let pieces = |m: i32| -> Vec<i32> {
            (self.lo..=self.hi())
                .filter(|&i| i + m <= self.hi() && i + m >= self.lo)
                .collect()
        };
        let hom_module = |i: i32, m: i32| -> Result<GroupModule> {
            let (s, t) = (self.component(i), self.component(i + m));
            let gens = s
                .generators()
                .iter()
                .zip(t.generators())
                .zip(self.group.orders())
                .map(|((gs, gt), &o)| gt.kron(&gs.pow(o as u64 - 1).transpose()))
                .collect();
            GroupModule::from_matrices(&self.group, s.dim() * t.dim(), gens)
        };
        let mut components = Vec::new();
        for m in -span..=span {
            let parts = pieces(m)
                .into_iter()
                .map(|i| hom_module(i, m))
                .collect::<Result<Vec<_>>>()?;
            components.push(GroupModule::direct_sum_all(&self.group, &parts)?);
        }
        let mut differentials = Vec::new();
        for m in -span..span {
            let src = pieces(m);
            let tgt = pieces(m + 1);
            let offsets = |list: &[i32], deg: i32| -> Vec<usize> {
                let mut acc = 0;
                list.iter()
                    .map(|&i| {
                        let o = acc;
                        acc += self.component(i).dim() * self.component(i + deg).dim();
                        o
                    })
                    .collect()
            };
            let (so, to) = (offsets(&src, m), offsets(&tgt, m + 1));
            let rows = components[(m + 1 + span) as usize].dim();
            let cols = components[(m + span) as usize].dim();
            let mut d = Matrix::zeros(f, rows, cols);
            for (s, &i) in src.iter().enumerate() {
                let (ci, cim) = (self.component(i).dim(), self.component(i + m).dim());
                // d ∘ f lands in Hom(C^i, C^{i+m+1}).
                if let Some(t) = tgt.iter().position(|&x| x == i) {
                    let block = self.differential(i + m).kron(&Matrix::identity(f, ci));
                    d.set_block(to[t], so[s], &block);
                }
                // -(-1)^m f ∘ d lands in Hom(C^{i-1}, C^{i+m}).
                if let Some(t) = tgt.iter().position(|&x| x == i - 1) {
                    let mut block =
                        Matrix::identity(f, cim).kron(&self.differential(i - 1).transpose());
                    if m.rem_euclid(2) == 0 {
                        block = block.scale(f.neg(1));
                    }
                    d.set_block(to[t], so[s], &block);
                }
            }
            differentials.push(d);
        }
        WindowedComplex::new(
            &self.group,
            -span,
            components,
            differentials,
            (i32::MIN, i32::MAX),
        )
    }

    pub fn describe(&self) -> String {
        if self.components.is_empty() {
            return "0".into();
        }
        let dims: Vec<String> = self
            .components
            .iter()
            .map(|c| c.dim().to_string())
            .collect();
        format!(
            "complex in degrees {}..{} with dims [{}]",
            self.lo,
            self.hi(),
            dims.join(", ")
        )
    }
}

fn unit(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: u32, r: usize) -> GroupData {
        GroupData::elementary(p, r).unwrap()
    }

    /// `A --z1--> A` over `k[Z/2 x Z/2]`, in degrees 0, 1.
    fn two_term(group: &GroupData) -> WindowedComplex {
        let a = GroupModule::free(group, 1);
        let z = a.nilpotent(0);
        WindowedComplex::new(group, 0, vec![a.clone(), a], vec![z], (0, 1)).unwrap()
    }

    #[test]
    fn rejects_bad_complexes() {
        let group = g(2, 2);
        let a = GroupModule::free(&group, 1);
        let id = Matrix::identity(group.field(), 4);
        assert!(WindowedComplex::new(
            &group,
            0,
            vec![a.clone(), a.clone(), a.clone()],
            vec![id.clone(), id],
            (0, 2)
        )
        .is_err());
        let bad = Matrix::identity(group.field(), 4).scale(0).add(&{
            let mut m = Matrix::zeros(group.field(), 4, 4);
            m.set(0, 1, 1);
            m
        });
        assert!(WindowedComplex::new(&group, 0, vec![a.clone(), a], vec![bad], (0, 1)).is_err());
    }

    #[test]
    fn homology_of_multiplication() {
        let group = g(2, 2);
        let c = two_term(&group);
        assert_eq!(c.homology_dims(), vec![(0, 2), (1, 2)]);
        let h0 = c.homology_module(0);
        assert_eq!(h0.dim(), 2);
    }

    #[test]
    fn suspension_and_sum() {
        let group = g(2, 2);
        let c = two_term(&group);
        let s = c.suspension(3);
        assert_eq!((s.lo(), s.hi()), (-3, -2));
        assert_eq!(s.homology_dim(-3), 2);
        let sum = c.direct_sum(&s).unwrap();
        assert_eq!(sum.total_dim(), 16);
        assert_eq!(sum.homology_dim(0), 2);
        assert_eq!(sum.homology_dim(-2), 2);
    }

    #[test]
    fn tensor_squares_to_zero() {
        let group = g(3, 2);
        let a = GroupModule::free(&group, 1);
        let z = a.nilpotent(1);
        let c =
            WindowedComplex::new(&group, -1, vec![a.clone(), a], vec![z.pow(2)], (-1, 0)).unwrap();
        let t = c.tensor(&c).unwrap();
        assert_eq!((t.lo(), t.hi()), (-2, 0));
        // Künneth over k: H(C) has dims 6, 6.
        let total: usize = t.homology_dims().iter().map(|x| x.1).sum();
        assert_eq!(total, 144);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let group = g(2, 2);
        let c = two_term(&group);
        let ids: Vec<Matrix> = c
            .components()
            .iter()
            .map(|m| Matrix::identity(group.field(), m.dim()))
            .collect();
        let cone = c.cone(&c, &ids).unwrap();
        assert!(cone.homology_dims().iter().all(|&(_, d)| d == 0));
        let zero: Vec<Matrix> = c
            .components()
            .iter()
            .map(|m| Matrix::zeros(group.field(), m.dim(), m.dim()))
            .collect();
        let cz = c.cone(&c, &zero).unwrap();
        let total: usize = cz.homology_dims().iter().map(|x| x.1).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn end_complex_is_a_complex() {
        let group = g(2, 2);
        let c = two_term(&group);
        let e = c.end_complex().unwrap();
        assert_eq!((e.lo(), e.hi()), (-1, 1));
        assert_eq!(e.total_dim(), 64);
        // H^0(End C) = chain maps modulo null-homotopic ones, over k: dims of H(C) squared sum.
        let total: usize = e.homology_dims().iter().map(|x| x.1).sum();
        assert_eq!(total, 16);
        let x = GroupModule::shifted_cyclic(&group, &[1, 1], 2).unwrap();
        let ex = WindowedComplex::concentrated(&x, 0).end_complex().unwrap();
        assert_eq!(ex.component(0).dim(), 4);
    }
}
