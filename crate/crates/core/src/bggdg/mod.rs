//! Graded-commutative dg algebras on monomial bases, dg modules on finite degree windows,
//! and the BGG machinery for exterior and symmetric algebras.

mod bgg;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::{Matrix, Quotient};
use crate::modrep::GroupData;

pub use bgg::{
    bgg_apply, bgg_bimodule, ext_over_dg, phi_map, phi_quasi_iso_check, BggBimodule, BggImage,
    PhiReport, SemifreeModule, DIMENSION_BUDGET,
};

pub type DgMono = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgGenerator {
    pub name: String,
    pub degree: i32,
    /// Anticommuting and square-zero. Always equal to the parity of the degree.
    pub odd: bool,
    /// `x^n = 0` for an even generator.
    pub nilpotency: Option<u32>,
}

impl DgGenerator {
    pub fn new(name: &str, degree: i32, nilpotency: Option<u32>) -> DgGenerator {
        DgGenerator {
            name: name.into(),
            degree,
            odd: degree % 2 != 0,
            nilpotency,
        }
    }
}

/// A sparse element: monomial exponent vectors with nonzero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct DgElement {
    terms: BTreeMap<DgMono, Elem>,
}

impl DgElement {
    pub fn zero() -> DgElement {
        DgElement::default()
    }

    pub fn terms(&self) -> &BTreeMap<DgMono, Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, field: &Field, m: DgMono, c: Elem) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                let v = field.add(*o.get(), c);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }
}

/// Graded-commutative algebra `k[even gens] ⊗ Λ(odd gens)` modulo `x^n` for nilpotent even
/// generators, with a differential given on generators and extended by the Leibniz rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgAlgebra {
    field: Field,
    gens: Vec<DgGenerator>,
    differential: Vec<DgElement>,
}

impl DgAlgebra {
    pub fn new(
        field: &Field,
        gens: Vec<DgGenerator>,
        differential: Vec<DgElement>,
    ) -> Result<DgAlgebra> {
        if differential.len() != gens.len() {
            return Err(Error::Usage(format!(
                "{} generators but {} differential values",
                gens.len(),
                differential.len()
            )));
        }
        for g in &gens {
            if g.odd != (g.degree % 2 != 0) {
                return Err(Error::Invalid(format!(
                    "generator {} has parity opposite to its degree",
                    g.name
                )));
            }
            if g.odd && g.nilpotency.is_some() {
                return Err(Error::Invalid(format!(
                    "odd generator {} already squares to zero",
                    g.name
                )));
            }
            if g.nilpotency == Some(0) {
                return Err(Error::Invalid(format!(
                    "generator {} has nilpotency 0",
                    g.name
                )));
            }
        }
        let alg = DgAlgebra {
            field: field.clone(),
            gens,
            differential,
        };
        for (i, dg) in alg.differential.iter().enumerate() {
            let g = &alg.gens[i];
            if let Some(d) = alg.degree_of(dg) {
                if d != g.degree + 1 {
                    return Err(Error::Invalid(format!(
                        "d({}) has degree {d}, expected {}",
                        g.name,
                        g.degree + 1
                    )));
                }
            }
            if !alg.d(dg).is_zero() {
                return Err(Error::Invalid(format!("d^2({}) is not zero", g.name)));
            }
            // d(x^n) = n x^{n-1} d(x) must vanish when x^n = 0.
            if let Some(n) = g.nilpotency {
                let lhs = alg.mul(&alg.pow(&alg.var(i), n as u64 - 1), dg);
                if !alg.scale(&lhs, field.from_int(n as i64)).is_zero() {
                    return Err(Error::Invalid(format!(
                        "d is incompatible with {}^{n} = 0",
                        g.name
                    )));
                }
            }
        }
        Ok(alg)
    }

    /// A field viewed as a dg algebra concentrated in degree 0.
    pub fn ground(field: &Field) -> DgAlgebra {
        DgAlgebra {
            field: field.clone(),
            gens: vec![],
            differential: vec![],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generators(&self) -> &[DgGenerator] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn generator_differential(&self, i: usize) -> &DgElement {
        &self.differential[i]
    }

    pub fn has_zero_differential(&self) -> bool {
        self.differential.iter().all(DgElement::is_zero)
    }

    pub fn mono_degree(&self, m: &[u32]) -> i32 {
        m.iter()
            .zip(&self.gens)
            .map(|(&e, g)| e as i32 * g.degree)
            .sum()
    }

    /// Degree of a homogeneous element; `None` for zero.
    pub fn degree_of(&self, a: &DgElement) -> Option<i32> {
        let mut it = a.terms.keys().map(|m| self.mono_degree(m));
        let d = it.next()?;
        assert!(it.all(|e| e == d), "inhomogeneous dg element");
        Some(d)
    }

    fn admissible(&self, m: &[u32]) -> bool {
        m.iter().zip(&self.gens).all(|(&e, g)| {
            if g.odd {
                e <= 1
            } else {
                g.nilpotency.is_none_or(|n| e < n)
            }
        })
    }

    pub fn one(&self) -> DgElement {
        self.monomial(vec![0; self.gens.len()], 1)
    }

    pub fn var(&self, i: usize) -> DgElement {
        let mut m = vec![0; self.gens.len()];
        m[i] = 1;
        self.monomial(m, 1)
    }

    pub fn monomial(&self, m: DgMono, c: Elem) -> DgElement {
        let mut out = DgElement::zero();
        if self.admissible(&m) {
            out.add_term(&self.field, m, c);
        }
        out
    }

    pub fn add(&self, a: &DgElement, b: &DgElement) -> DgElement {
        let mut out = a.clone();
        for (m, &c) in &b.terms {
            out.add_term(&self.field, m.clone(), c);
        }
        out
    }

    pub fn scale(&self, a: &DgElement, c: Elem) -> DgElement {
        let mut out = DgElement::zero();
        for (m, &x) in &a.terms {
            out.add_term(&self.field, m.clone(), self.field.mul(x, c));
        }
        out
    }

    pub fn sub(&self, a: &DgElement, b: &DgElement) -> DgElement {
        self.add(a, &self.scale(b, self.field.neg(1)))
    }

    /// `m · n` in normal order, with the Koszul sign of moving odd letters of `n` left past
    /// the later odd letters of `m`.
    fn mono_mul(&self, m: &[u32], n: &[u32]) -> Option<(DgMono, bool)> {
        let prod: DgMono = m.iter().zip(n).map(|(a, b)| a + b).collect();
        if !self.admissible(&prod) {
            return None;
        }
        let mut swaps = 0u32;
        for (j, g) in self.gens.iter().enumerate() {
            if g.odd && n[j] == 1 {
                swaps += (j + 1..self.gens.len())
                    .filter(|&i| self.gens[i].odd && m[i] == 1)
                    .count() as u32;
            }
        }
        Some((prod, swaps % 2 == 1))
    }

    pub fn mul(&self, a: &DgElement, b: &DgElement) -> DgElement {
        let mut out = DgElement::zero();
        for (m, &x) in &a.terms {
            for (n, &y) in &b.terms {
                if let Some((prod, neg)) = self.mono_mul(m, n) {
                    let c = self.field.mul(x, y);
                    out.add_term(&self.field, prod, if neg { self.field.neg(c) } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &DgElement, e: u64) -> DgElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Leibniz rule on the letters of each monomial: `d(uv) = d(u) v + (-1)^{|u|} u d(v)`.
    pub fn d(&self, a: &DgElement) -> DgElement {
        let mut out = DgElement::zero();
        for (m, &c) in &a.terms {
            let letters: Vec<usize> = m
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
                .collect();
            let mut prefix = vec![0u32; self.gens.len()];
            for (t, &g) in letters.iter().enumerate() {
                let mut suffix = vec![0u32; self.gens.len()];
                for &h in &letters[t + 1..] {
                    suffix[h] += 1;
                }
                let sign = if self.mono_degree(&prefix) % 2 != 0 {
                    self.field.neg(c)
                } else {
                    c
                };
                let term = self.mul(
                    &self.mul(&self.monomial(prefix.clone(), sign), &self.differential[g]),
                    &self.monomial(suffix, 1),
                );
                out = self.add(&out, &term);
                prefix[g] += 1;
            }
        }
        out
    }

    /// Monomial basis of the degree-`n` piece, ordered by word length and then with earlier
    /// generators first.
    pub fn basis(&self, n: i32) -> Result<Vec<DgMono>> {
        let bounded = |g: &DgGenerator| g.odd || g.nilpotency.is_some();
        let finite: i32 = self
            .gens
            .iter()
            .filter(|g| bounded(g))
            .map(|g| {
                g.degree.abs()
                    * if g.odd {
                        1
                    } else {
                        g.nilpotency.unwrap() as i32 - 1
                    }
            })
            .sum();
        let signs: Vec<i32> = self
            .gens
            .iter()
            .filter(|g| !bounded(g))
            .map(|g| g.degree.signum())
            .collect();
        if signs.contains(&0) || (signs.contains(&1) && signs.contains(&-1)) {
            return Err(Error::Usage(
                "graded pieces are infinite-dimensional".into(),
            ));
        }
        let caps: Vec<u32> = self
            .gens
            .iter()
            .map(|g| {
                if g.odd {
                    1
                } else if let Some(k) = g.nilpotency {
                    k - 1
                } else {
                    ((n.abs() + finite) / g.degree.abs()) as u32
                }
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.gens.len()];
        self.enumerate(0, &caps, &mut cur, n, &mut out);
        out.sort_by(|a, b| {
            let la: u32 = a.iter().sum();
            let lb: u32 = b.iter().sum();
            la.cmp(&lb).then_with(|| b.cmp(a))
        });
        Ok(out)
    }

    fn enumerate(&self, i: usize, caps: &[u32], cur: &mut DgMono, n: i32, out: &mut Vec<DgMono>) {
        if i == self.gens.len() {
            if self.mono_degree(cur) == n {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=caps[i] {
            cur[i] = e;
            self.enumerate(i + 1, caps, cur, n, out);
        }
        cur[i] = 0;
    }

    pub fn dim(&self, n: i32) -> Result<usize> {
        Ok(self.basis(n)?.len())
    }

    /// Coordinates of a homogeneous element in [`basis`](Self::basis)`(n)`.
    pub fn coordinates(&self, a: &DgElement, n: i32) -> Result<Vec<Elem>> {
        let basis = self.basis(n)?;
        let mut v = vec![0; basis.len()];
        for (m, &c) in &a.terms {
            let i = basis
                .iter()
                .position(|b| b == m)
                .ok_or_else(|| Error::Usage(format!("element has a term outside degree {n}")))?;
            v[i] = c;
        }
        Ok(v)
    }

    pub fn element(&self, n: i32, coords: &[Elem]) -> Result<DgElement> {
        let basis = self.basis(n)?;
        let mut out = DgElement::zero();
        for (m, &c) in basis.into_iter().zip(coords) {
            out.add_term(&self.field, m, c);
        }
        Ok(out)
    }

    /// Matrix of `d: A^n → A^{n+1}`.
    pub fn differential_matrix(&self, n: i32) -> Result<Matrix> {
        let src = self.basis(n)?;
        let rows = self.dim(n + 1)?;
        let cols = src
            .iter()
            .map(|m| self.coordinates(&self.d(&self.monomial(m.clone(), 1)), n + 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(&self.field, rows, &cols))
    }

    /// Matrix of `x ↦ x·a` (`right`) or `x ↦ a·x` from `A^n` to `A^{n+|a|}`.
    pub fn multiplication_matrix(&self, a: &DgElement, n: i32, right: bool) -> Result<Matrix> {
        let e = self.degree_of(a).unwrap_or(0);
        let src = self.basis(n)?;
        let rows = self.dim(n + e)?;
        let cols = src
            .iter()
            .map(|m| {
                let x = self.monomial(m.clone(), 1);
                let prod = if right {
                    self.mul(&x, a)
                } else {
                    self.mul(a, &x)
                };
                self.coordinates(&prod, n + e)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(&self.field, rows, &cols))
    }

    pub fn format(&self, a: &DgElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, &c)) in a.terms.iter().rev().enumerate() {
            let word: Vec<String> = m
                .iter()
                .zip(&self.gens)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, g)| {
                    if e == 1 {
                        g.name.clone()
                    } else {
                        format!("{}^{e}", g.name)
                    }
                })
                .collect();
            let word = if word.is_empty() {
                "1".to_string()
            } else {
                word.join("*")
            };
            let (neg, mag) =
                if self.field.characteristic() > 2 && c > self.field.characteristic() / 2 {
                    (true, self.field.neg(c))
                } else {
                    (false, c)
                };
            let sep = match (i, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out.push_str(sep);
            if mag != 1 {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&word);
        }
        out
    }
}

/// `Λ(ξ_1..ξ_r)` with zero differential; degrees must be odd.
pub fn exterior_algebra(field: &Field, r: usize, degrees: &[i32]) -> Result<DgAlgebra> {
    if degrees.len() != r {
        return Err(Error::Usage(format!(
            "{r} generators but {} degrees",
            degrees.len()
        )));
    }
    if let Some(d) = degrees.iter().find(|d| *d % 2 == 0) {
        return Err(Error::Invalid(format!(
            "exterior generator of even degree {d}"
        )));
    }
    let gens = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| DgGenerator::new(&format!("xi{}", i + 1), d, None))
        .collect();
    DgAlgebra::new(field, gens, vec![DgElement::zero(); r])
}

/// `k[x_1..x_r]` with zero differential; degrees must be even and positive.
pub fn symmetric_algebra(field: &Field, r: usize, degrees: &[i32]) -> Result<DgAlgebra> {
    if degrees.len() != r {
        return Err(Error::Usage(format!(
            "{r} generators but {} degrees",
            degrees.len()
        )));
    }
    if let Some(d) = degrees.iter().find(|&&d| d % 2 != 0 || d <= 0) {
        return Err(Error::Invalid(format!(
            "symmetric generator of degree {d} (needs even positive)"
        )));
    }
    let gens = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| DgGenerator::new(&format!("x{}", i + 1), d, None))
        .collect();
    DgAlgebra::new(field, gens, vec![DgElement::zero(); r])
}

/// Koszul complex `B = kE ⊗ Λ(y_1..y_r)` of `E = (Z/p)^r`: `z_i` in degree 0 with `z_i^p = 0`,
/// `y_i` in degree -1, `d(y_i) = z_i`.
pub fn koszul_dg(group: &GroupData) -> Result<DgAlgebra> {
    if !group.is_elementary() || !group.field().is_prime_field() {
        return Err(Error::Usage(
            "the Koszul dg algebra needs an elementary abelian group over F_p".into(),
        ));
    }
    let (r, p) = (group.rank(), group.characteristic());
    let field = group.field();
    let mut gens: Vec<DgGenerator> = (0..r)
        .map(|i| DgGenerator::new(&format!("z{}", i + 1), 0, Some(p)))
        .collect();
    gens.extend((0..r).map(|i| DgGenerator::new(&format!("y{}", i + 1), -1, None)));
    let mut diff = vec![DgElement::zero(); r];
    for i in 0..r {
        let mut m = vec![0; 2 * r];
        m[i] = 1;
        let mut e = DgElement::zero();
        e.add_term(field, m, 1);
        diff.push(e);
    }
    DgAlgebra::new(field, gens, diff)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A dg module known on the degree window `[lo, hi]`: pieces, `d^n: M^n → M^{n+1}` for
/// `lo ≤ n < hi`, and the action of each algebra generator where source and target both
/// lie in the window.
#[derive(Clone, Debug)]
pub struct DgModule {
    algebra: DgAlgebra,
    side: Side,
    lo: i32,
    dims: Vec<usize>,
    diffs: Vec<Matrix>,
    // actions[g][n - lo]
    actions: Vec<Vec<Option<Matrix>>>,
}

impl DgModule {
    pub fn new(
        algebra: &DgAlgebra,
        side: Side,
        lo: i32,
        dims: Vec<usize>,
        diffs: Vec<Matrix>,
        actions: Vec<Vec<Option<Matrix>>>,
    ) -> Result<DgModule> {
        let m = DgModule {
            algebra: algebra.clone(),
            side,
            lo,
            dims,
            diffs,
            actions,
        };
        m.validate()?;
        Ok(m)
    }

    /// A complex of vector spaces over the ground field.
    pub fn complex(
        field: &Field,
        lo: i32,
        dims: Vec<usize>,
        diffs: Vec<Matrix>,
    ) -> Result<DgModule> {
        DgModule::new(
            &DgAlgebra::ground(field),
            Side::Right,
            lo,
            dims,
            diffs,
            vec![],
        )
    }

    /// `A` as a right module over itself on `[lo, hi]`.
    pub fn regular(algebra: &DgAlgebra, lo: i32, hi: i32) -> Result<DgModule> {
        if hi < lo {
            return Err(Error::Usage("empty window".into()));
        }
        let dims = (lo..=hi)
            .map(|n| algebra.dim(n))
            .collect::<Result<Vec<_>>>()?;
        let diffs = (lo..hi)
            .map(|n| algebra.differential_matrix(n))
            .collect::<Result<Vec<_>>>()?;
        let actions = (0..algebra.num_gens())
            .map(|g| {
                let e = algebra.generators()[g].degree;
                (lo..=hi)
                    .map(|n| {
                        if (lo..=hi).contains(&(n + e)) {
                            algebra
                                .multiplication_matrix(&algebra.var(g), n, true)
                                .map(Some)
                        } else {
                            Ok(None)
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        DgModule::new(algebra, Side::Right, lo, dims, diffs, actions)
    }

    fn validate(&self) -> Result<()> {
        let f = self.algebra.field();
        let width = self.dims.len();
        if width == 0 {
            return Err(Error::Usage("dg module needs a nonempty window".into()));
        }
        if self.diffs.len() != width - 1 {
            return Err(Error::Usage(format!(
                "window of width {width} needs {} differentials",
                width - 1
            )));
        }
        for (i, d) in self.diffs.iter().enumerate() {
            if d.rows() != self.dims[i + 1] || d.cols() != self.dims[i] || d.field() != f {
                return Err(Error::Usage(format!(
                    "differential in degree {} has the wrong shape",
                    self.lo + i as i32
                )));
            }
        }
        for i in 0..width.saturating_sub(2) {
            if !self.diffs[i + 1].mul(&self.diffs[i]).is_zero() {
                return Err(Error::Invalid(format!(
                    "d^2 != 0 in degree {}",
                    self.lo + i as i32
                )));
            }
        }
        if self.actions.len() != self.algebra.num_gens() {
            return Err(Error::Usage(
                "one action table per algebra generator".into(),
            ));
        }
        for (g, table) in self.actions.iter().enumerate() {
            let e = self.algebra.generators()[g].degree;
            if table.len() != width {
                return Err(Error::Usage("action table must cover the window".into()));
            }
            for (i, a) in table.iter().enumerate() {
                let n = self.lo + i as i32;
                let inside = self.in_window(n + e);
                match a {
                    Some(a) if inside => {
                        if a.rows() != self.dim(n + e) || a.cols() != self.dims[i] {
                            return Err(Error::Usage(format!(
                                "action of generator {g} in degree {n} has the wrong shape"
                            )));
                        }
                    }
                    None if !inside => {}
                    _ => {
                        return Err(Error::Usage(format!(
                            "action of generator {g} in degree {n} is missing or extra"
                        )))
                    }
                }
            }
        }
        self.check_relations()?;
        self.check_leibniz()
    }

    fn check_relations(&self) -> Result<()> {
        let gens = self.algebra.generators();
        for n in self.lo..=self.hi() {
            for g in 0..gens.len() {
                for h in g..gens.len() {
                    let (Some(gh), Some(hg)) =
                        (self.act_word(&[g, h], n), self.act_word(&[h, g], n))
                    else {
                        continue;
                    };
                    let sign = if gens[g].odd && gens[h].odd {
                        self.algebra.field().neg(1)
                    } else {
                        1
                    };
                    if gh != hg.scale(sign) {
                        return Err(Error::Invalid(format!(
                            "{} and {} do not graded-commute on degree {n}",
                            gens[g].name, gens[h].name
                        )));
                    }
                    if g == h && gens[g].odd && !gh.is_zero() {
                        return Err(Error::Invalid(format!(
                            "{} does not square to zero",
                            gens[g].name
                        )));
                    }
                }
                if let Some(k) = gens[g].nilpotency {
                    if let Some(m) = self.act_word(&vec![g; k as usize], n) {
                        if !m.is_zero() {
                            return Err(Error::Invalid(format!(
                                "{}^{k} acts nontrivially",
                                gens[g].name
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Right: `d(m a) = d(m) a + (-1)^{|m|} m d(a)`. Left: `d(a m) = d(a) m + (-1)^{|a|} a d(m)`.
    fn check_leibniz(&self) -> Result<()> {
        let f = self.algebra.field();
        for (g, gen) in self.algebra.generators().iter().enumerate() {
            let e = gen.degree;
            let dg = self.algebra.generator_differential(g);
            for n in self.lo..=self.hi() {
                let (Some(a), Some(d_after)) = (self.action(g, n), self.differential(n + e)) else {
                    continue;
                };
                let (Some(d_before), Some(a_next)) = (self.differential(n), self.action(g, n + 1))
                else {
                    continue;
                };
                let Some(ad) = self.act_element(dg, e + 1, n) else {
                    continue;
                };
                let lhs = d_after.mul(a);
                let through = a_next.mul(d_before);
                let rhs = match self.side {
                    // m ↦ d(m)·g + (-1)^{|m|} m·d(g)
                    Side::Right => through.add(&if n % 2 != 0 { ad.scale(f.neg(1)) } else { ad }),
                    // m ↦ d(g)·m + (-1)^{|g|} g·d(m)
                    Side::Left => ad.add(&if e % 2 != 0 {
                        through.scale(f.neg(1))
                    } else {
                        through
                    }),
                };
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "Leibniz rule fails for {} on degree {n}",
                        gen.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &DgAlgebra {
        &self.algebra
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn in_window(&self, n: i32) -> bool {
        (self.lo..=self.hi()).contains(&n)
    }

    pub fn dim(&self, n: i32) -> usize {
        if self.in_window(n) {
            self.dims[(n - self.lo) as usize]
        } else {
            0
        }
    }

    pub fn dims(&self) -> Vec<(i32, usize)> {
        (self.lo..=self.hi()).map(|n| (n, self.dim(n))).collect()
    }

    /// `d^n`, when both `n` and `n + 1` are in the window.
    pub fn differential(&self, n: i32) -> Option<&Matrix> {
        if n >= self.lo && n < self.hi() {
            Some(&self.diffs[(n - self.lo) as usize])
        } else {
            None
        }
    }

    pub fn action(&self, g: usize, n: i32) -> Option<&Matrix> {
        if self.in_window(n) {
            self.actions[g][(n - self.lo) as usize].as_ref()
        } else {
            None
        }
    }

    /// Action of a word of generators, applied in module order: for a right module
    /// `m ↦ m·g_1·g_2…`, for a left module `m ↦ g_1·(g_2·(… m))`.
    pub fn act_word(&self, word: &[usize], n: i32) -> Option<Matrix> {
        let order: Vec<usize> = match self.side {
            Side::Right => word.to_vec(),
            Side::Left => word.iter().rev().copied().collect(),
        };
        let mut acc = Matrix::identity(self.algebra.field(), self.dim(n));
        let mut deg = n;
        for g in order {
            let a = self.action(g, deg)?;
            acc = a.mul(&acc);
            deg += self.algebra.generators()[g].degree;
        }
        Some(acc)
    }

    /// Action of a homogeneous algebra element of degree `e` on `M^n`.
    pub fn act_element(&self, a: &DgElement, e: i32, n: i32) -> Option<Matrix> {
        let f = self.algebra.field();
        if let Some(d) = self.algebra.degree_of(a) {
            assert_eq!(d, e, "element degree mismatch");
        }
        let mut acc = Matrix::zeros(f, self.dim(n + e), self.dim(n));
        if a.is_zero() {
            return self.in_window(n + e).then_some(acc);
        }
        for (m, &c) in a.terms() {
            let word: Vec<usize> = m
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
                .collect();
            acc = acc.add(&self.act_word(&word, n)?.scale(c));
        }
        Some(acc)
    }
}

/// Homology on a window, with echelon representatives.
#[derive(Clone, Debug)]
pub struct DgHomology {
    pub window: (i32, i32),
    pub dims: Vec<(i32, usize)>,
    pub representatives: Vec<Vec<Vec<Elem>>>,
}

impl DgHomology {
    pub fn dim(&self, n: i32) -> usize {
        self.dims
            .iter()
            .find(|(m, _)| *m == n)
            .map_or(0, |(_, d)| *d)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().map(|(_, d)| d).sum()
    }
}

fn quotient_at(m: &DgModule, n: i32) -> Quotient {
    let f = m.algebra().field();
    let dim = m.dim(n);
    let cycles = match m.differential(n) {
        Some(d) => d.kernel_basis(),
        None => (0..dim).map(|i| unit(dim, i)).collect(),
    };
    let boundaries: Vec<Vec<Elem>> = match m.differential(n - 1) {
        Some(d) => (0..d.cols()).map(|c| d.column(c)).collect(),
        None => vec![],
    };
    Quotient::new(f, dim, &boundaries, &cycles)
}

fn unit(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `H^n(M)` for `n` in `window`, which must lie in the module window shrunk by one on each side.
pub fn dg_homology(m: &DgModule, window: (i32, i32)) -> Result<DgHomology> {
    let (a, b) = window;
    if a < m.lo() + 1 || b > m.hi() - 1 {
        return Err(Error::Window(format!(
            "homology on [{a}, {b}] needs the module on [{}, {}], have [{}, {}]",
            a - 1,
            b + 1,
            m.lo(),
            m.hi()
        )));
    }
    let mut dims = Vec::new();
    let mut representatives = Vec::new();
    for n in a..=b {
        let q = quotient_at(m, n);
        dims.push((n, q.dim()));
        representatives.push(q.representatives().to_vec());
    }
    Ok(DgHomology {
        window,
        dims,
        representatives,
    })
}

pub(crate) fn homology_quotient(m: &DgModule, n: i32) -> Quotient {
    quotient_at(m, n)
}

impl fmt::Display for DgAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .gens
            .iter()
            .map(|g| format!("{}({})", g.name, g.degree))
            .collect();
        write!(f, "F_{}<{}>", self.field.characteristic(), gens.join(", "))
    }
}
