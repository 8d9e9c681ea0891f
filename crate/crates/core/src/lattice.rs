//! Specialization-closed subsets of `Spec R` as finite unions of closed sets `V(a)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{HomogeneousIdeal, Polynomial, Ring, RingHom};

/// `∪ᵢ V(aᵢ)` over a commutative graded ring, kept in canonical form: no unit components,
/// no component contained in another, components sorted by their printed generators.
#[derive(Clone)]
pub struct SpecSet {
    ring: Ring,
    components: Vec<HomogeneousIdeal>,
}

impl fmt::Debug for SpecSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for SpecSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.components.iter().map(|a| format!("V{a}")).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

fn sort_key(a: &HomogeneousIdeal) -> (usize, String) {
    let s = a.to_string();
    (s.len(), s)
}

/// `V(a) ⊆ ∪ⱼ V(bⱼ)`, i.e. every generator of `Πⱼ bⱼ` lies in `√a`.
fn closed_in_union(a: &HomogeneousIdeal, bs: &[HomogeneousIdeal]) -> Result<bool> {
    for b in bs {
        if b.is_radical_subset(a)? {
            return Ok(true);
        }
    }
    if bs.len() < 2 {
        return Ok(false);
    }
    let mut product = bs[0].clone();
    for b in &bs[1..] {
        product = product.product(b);
    }
    product.is_radical_subset(a)
}

impl SpecSet {
    fn check_ring(ring: &Ring) -> Result<()> {
        if ring.is_commutative() {
            Ok(())
        } else {
            Err(Error::Usage(
                "SpecSet needs a commutative ring; apply commutative_reduction first".into(),
            ))
        }
    }

    /// Canonicalize an arbitrary list of components.
    pub fn from_components(ring: &Ring, components: Vec<HomogeneousIdeal>) -> Result<SpecSet> {
        SpecSet::check_ring(ring)?;
        let mut comps = Vec::new();
        for a in components {
            if a.ring() != ring {
                return Err(Error::Usage("SpecSet component from another ring".into()));
            }
            if a.is_unit()? {
                continue;
            }
            comps.push(HomogeneousIdeal::new(ring, a.canonical_generators()?)?);
        }
        comps.sort_by_key(sort_key);
        comps.dedup_by(|x, y| x.to_string() == y.to_string());
        let n = comps.len();
        let mut sub = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    sub[i][j] = comps[j].is_radical_subset(&comps[i])?;
                }
            }
        }
        let kept = comps
            .into_iter()
            .enumerate()
            .filter(|&(i, _)| !(0..n).any(|j| j != i && sub[i][j] && (!sub[j][i] || j < i)))
            .map(|(_, a)| a)
            .collect();
        Ok(SpecSet {
            ring: ring.clone(),
            components: kept,
        })
    }

    pub fn v_of(a: &HomogeneousIdeal) -> Result<SpecSet> {
        SpecSet::from_components(a.ring(), vec![a.clone()])
    }

    pub fn empty(ring: &Ring) -> Result<SpecSet> {
        SpecSet::from_components(ring, vec![])
    }

    pub fn whole(ring: &Ring) -> Result<SpecSet> {
        SpecSet::v_of(&HomogeneousIdeal::zero(ring))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn components(&self) -> &[HomogeneousIdeal] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Generator strings of each component, for reports.
    pub fn component_strings(&self) -> Vec<Vec<String>> {
        self.components
            .iter()
            .map(|a| a.generators().iter().map(Polynomial::to_string).collect())
            .collect()
    }

    fn same_ring(&self, other: &SpecSet) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::Usage("SpecSets over different rings".into()))
        }
    }

    pub fn meet(&self, other: &SpecSet) -> Result<SpecSet> {
        self.same_ring(other)?;
        let comps = self
            .components
            .iter()
            .flat_map(|a| other.components.iter().map(move |b| a.sum(b)))
            .collect();
        SpecSet::from_components(&self.ring, comps)
    }

    pub fn join(&self, other: &SpecSet) -> Result<SpecSet> {
        self.same_ring(other)?;
        let comps = self
            .components
            .iter()
            .chain(&other.components)
            .cloned()
            .collect();
        SpecSet::from_components(&self.ring, comps)
    }

    pub fn leq(&self, other: &SpecSet) -> Result<bool> {
        self.same_ring(other)?;
        for a in &self.components {
            if !closed_in_union(a, &other.components)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Semantic equality: `leq` both ways.
    pub fn equals(&self, other: &SpecSet) -> Result<bool> {
        Ok(self.leq(other)? && other.leq(self)?)
    }

    /// `(Spec φ)^{-1}(U)` for `φ: R → S` and `U ⊆ Spec R`: componentwise `V(φ(a)S)`.
    pub fn preimage(phi: &RingHom, u: &SpecSet) -> Result<SpecSet> {
        if u.ring != *phi.source() {
            return Err(Error::Usage(
                "preimage needs a SpecSet over the source ring".into(),
            ));
        }
        let comps = u.components.iter().map(|a| phi.apply_ideal(a)).collect();
        SpecSet::from_components(phi.target(), comps)
    }

    /// Closure of the image of `W ⊆ Spec S` in `Spec R`: componentwise `V(φ^{-1}(b))`.
    /// Equals the image itself when `S` is module-finite over `φ(R)`.
    pub fn closed_image(phi: &RingHom, w: &SpecSet) -> Result<SpecSet> {
        if w.ring != *phi.target() {
            return Err(Error::Usage(
                "closed_image needs a SpecSet over the target ring".into(),
            ));
        }
        let comps = w
            .components
            .iter()
            .map(|b| phi.contract(b))
            .collect::<Result<Vec<_>>>()?;
        SpecSet::from_components(phi.source(), comps)
    }
}

/// Closure of `gens` under binary meet and join, capped at `limit` elements.
pub fn sublattice(gens: &[SpecSet], limit: usize) -> Result<Vec<SpecSet>> {
    let mut elems: Vec<SpecSet> = Vec::new();
    let push = |s: SpecSet, elems: &mut Vec<SpecSet>| -> Result<bool> {
        for e in elems.iter() {
            if e.equals(&s)? {
                return Ok(false);
            }
        }
        if elems.len() >= limit {
            return Err(Error::Budget(format!(
                "sublattice exceeds {limit} elements"
            )));
        }
        elems.push(s);
        Ok(true)
    };
    for g in gens {
        push(g.clone(), &mut elems)?;
    }
    let mut changed = true;
    while changed {
        changed = false;
        let n = elems.len();
        for i in 0..n {
            for j in i + 1..n {
                let m = elems[i].meet(&elems[j])?;
                let jn = elems[i].join(&elems[j])?;
                changed |= push(m, &mut elems)?;
                changed |= push(jn, &mut elems)?;
            }
        }
    }
    Ok(elems)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram (edges point from smaller to larger) of labelled SpecSets; equal sets are
/// merged into one node whose label lists every name.
pub fn hasse_dot(elements: &[(String, SpecSet)]) -> Result<String> {
    let mut classes: Vec<(Vec<String>, SpecSet)> = Vec::new();
    'outer: for (name, s) in elements {
        for (names, rep) in classes.iter_mut() {
            if rep.equals(s)? {
                names.push(name.clone());
                continue 'outer;
            }
        }
        classes.push((vec![name.clone()], s.clone()));
    }
    let n = classes.len();
    let mut lt = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                lt[i][j] = classes[i].1.leq(&classes[j].1)?;
            }
        }
    }
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, (names, s)) in classes.iter().enumerate() {
        let label = format!("{}\\n{}", names.join(" = "), s);
        out.push_str(&format!(
            "  n{i} [label=\"{}\"];\n",
            dot_escape(&label).replace("\\\\n", "\\n")
        ));
    }
    for i in 0..n {
        for j in 0..n {
            if lt[i][j] && !(0..n).any(|k| k != i && k != j && lt[i][k] && lt[k][j]) {
                out.push_str(&format!("  n{i} -> n{j};\n"));
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
