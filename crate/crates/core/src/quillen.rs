//! Cohomology presentations of elementary abelian groups, restriction maps, F-isomorphisms,
//! limit families and the subgroup theorem checked against computed supports.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::homalg::{supp_module, GroupCohomology, SupportOptions};
use crate::lattice::SpecSet;
use crate::modrep::{GroupData, GroupModule, Subgroup};
use crate::poly::{commutative_reduction, HomogeneousIdeal, Polynomial, Ring, RingHom};
use crate::rankvariety::{point_in_supp, projective_points, RankPoint};

pub const DEFAULT_CERTIFICATION_BOUND: usize = 8;
pub const DEFAULT_T_MAX: u32 = 3;
/// Rank points tried per subgroup-theorem check.
pub const DEFAULT_SPOT_CHECKS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Builtin { p: u32, r: usize },
    User(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Builtin { p, r } => write!(f, "builtin (Z/{p})^{r}"),
            Provenance::User(name) => write!(f, "user {name}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyPresentation {
    pub ring: Ring,
    pub provenance: Provenance,
    /// Degree up to which the presentation was compared with computed `Ext` dimensions.
    pub certified_to: Option<usize>,
}

impl CohomologyPresentation {
    pub fn user(name: &str, ring: &Ring) -> CohomologyPresentation {
        CohomologyPresentation {
            ring: ring.clone(),
            provenance: Provenance::User(name.into()),
            certified_to: None,
        }
    }
}

/// `H*((Z/p)^r; F_p)`: `k[eta_i]` for `p = 2`, `Λ(eta_i) ⊗ k[theta_i]` otherwise, certified
/// against the minimal resolution up to degree 8.
pub fn builtin_cohomology(p: u32, r: usize) -> Result<CohomologyPresentation> {
    builtin_cohomology_certified(p, r, DEFAULT_CERTIFICATION_BOUND)
}

pub fn builtin_cohomology_certified(
    p: u32,
    r: usize,
    bound: usize,
) -> Result<CohomologyPresentation> {
    if r == 0 {
        return Err(Error::Usage(
            "builtin cohomology needs rank at least 1".into(),
        ));
    }
    let group = GroupData::elementary(p, r)?;
    let coh = GroupCohomology::shared(&group, bound.max(3))?;
    let bad = coh.presentation_mismatches(bound)?;
    if let Some((d, monos, rank, span)) = bad.first() {
        return Err(Error::Internal(format!(
            "presentation fails in degree {d}: {monos} monomials, Ext rank {rank}, span {span}"
        )));
    }
    Ok(CohomologyPresentation {
        ring: coh.ring().clone(),
        provenance: Provenance::Builtin { p, r },
        certified_to: Some(bound),
    })
}

fn uncertified_builtin(p: u32, r: usize) -> Result<CohomologyPresentation> {
    let coh = GroupCohomology::shared(&GroupData::elementary(p, r)?, 3)?;
    Ok(CohomologyPresentation {
        ring: coh.ring().clone(),
        provenance: Provenance::Builtin { p, r },
        certified_to: None,
    })
}

#[derive(Clone, Debug)]
pub struct RestrictionDatum {
    pub source: CohomologyPresentation,
    pub target: CohomologyPresentation,
    pub hom: RingHom,
    pub subgroup: Option<Subgroup>,
}

impl RestrictionDatum {
    /// The induced map between the rings modulo odd generators, where supports live.
    pub fn reduced_hom(&self) -> Result<RingHom> {
        reduce_hom(&self.hom)
    }
}

/// `φ` modulo odd generators on both sides.
pub fn reduce_hom(hom: &RingHom) -> Result<RingHom> {
    let (src, _) = commutative_reduction(hom.source());
    let (tgt, pt) = commutative_reduction(hom.target());
    let images = src
        .generators()
        .iter()
        .map(|g| {
            let i = hom
                .source()
                .gen_index(&g.name)
                .expect("reduction keeps generator names");
            pt.apply(&hom.images()[i])
        })
        .collect();
    RingHom::new(&src, &tgt, images)
}

/// Restriction `H*(E) → H*(E')` for `E' ≤ E = (Z/p)^r`, where column `j` of the inclusion
/// matrix is the `j`-th generator of `E'` written in the generators of `E`.
pub fn restriction_hom(p: u32, columns: &[Vec<u32>]) -> Result<RestrictionDatum> {
    let r = columns
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::Usage("inclusion matrix has no columns".into()))?;
    let ambient = GroupData::elementary(p, r)?;
    let sub = Subgroup::new(&ambient, columns.to_vec())
        .map_err(|_| Error::Usage("inclusion matrix has dependent columns".into()))?;
    restriction_for(&sub)
}

pub fn restriction_for(sub: &Subgroup) -> Result<RestrictionDatum> {
    let ambient = sub.ambient();
    if !ambient.is_elementary() || !ambient.field().is_prime_field() {
        return Err(Error::Usage(
            "restriction maps are built in only for elementary abelian groups over F_p".into(),
        ));
    }
    let p = ambient.characteristic();
    let (r, rs) = (ambient.rank(), sub.basis().len());
    let source = uncertified_builtin(p, r)?;
    let target = uncertified_builtin(p, rs)?;
    let field = ambient.field();
    let (sr, tr) = (&source.ring, &target.ring);
    let image = |prefix: &str, i: usize| -> Polynomial {
        let mut acc = Polynomial::zero(tr);
        for (j, w) in sub.basis().iter().enumerate() {
            if w[i] != 0 {
                let v = tr
                    .gen_index(&format!("{prefix}{}", j + 1))
                    .expect("builtin generator");
                acc = acc.add(&Polynomial::var(tr, v).scale(field.from_int(w[i] as i64)));
            }
        }
        acc
    };
    let images = sr
        .generators()
        .iter()
        .map(|g| {
            let (prefix, idx) = if let Some(n) = g.name.strip_prefix("theta") {
                ("theta", n)
            } else {
                (
                    "eta",
                    g.name.strip_prefix("eta").expect("builtin generator"),
                )
            };
            image(
                prefix,
                idx.parse::<usize>().expect("numbered generator") - 1,
            )
        })
        .collect();
    let hom = RingHom::new(sr, tr, images)?;
    Ok(RestrictionDatum {
        source,
        target,
        hom,
        subgroup: Some(sub.clone()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Nothing failed, but some certificate needs `t > t_max`.
    Inconclusive(u32),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "true"),
            Verdict::Fail => write!(f, "false"),
            Verdict::Inconclusive(t) => write!(f, "inconclusive({t})"),
        }
    }
}

/// An element together with the least `t ≤ t_max` witnessing its condition, if found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub element: String,
    pub t: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct FIsoReport {
    pub verdict: Verdict,
    /// Kernel generators with the least `t` such that `g^{p^t} = 0`.
    pub kernel: Vec<Certificate>,
    /// Kernel generators outside the nilradical.
    pub non_nilpotent: Vec<String>,
    /// Target monomials with the least `t` such that `s^{p^t}` is in the image.
    pub image: Vec<Certificate>,
    pub degree_bound: i32,
    pub t_max: u32,
}

/// Checks that `φ` is an F-isomorphism: nilpotent kernel, and every target monomial of degree
/// at most `degree_bound` has a `p^t`-th power in the image. Odd generators are nilpotent and
/// square to zero, so the test runs on the reductions modulo odd generators.
pub fn f_isomorphism_check(phi: &RingHom, degree_bound: i32, t_max: u32) -> Result<FIsoReport> {
    let phi = if phi.source().is_commutative() && phi.target().is_commutative() {
        phi.clone()
    } else {
        reduce_hom(phi)?
    };
    let p = phi.source().characteristic() as u64;
    let zero = HomogeneousIdeal::zero(phi.source());
    let mut kernel = Vec::new();
    let mut non_nilpotent = Vec::new();
    for g in phi.kernel()?.canonical_generators()? {
        if !zero.contains_radical(&g)? {
            non_nilpotent.push(g.to_string());
            continue;
        }
        let t = (0..=t_max).find(|&t| g.pow(p.pow(t)).is_zero());
        kernel.push(Certificate {
            element: g.to_string(),
            t,
        });
    }

    let target = phi.target();
    let mut monos: Vec<Polynomial> = Vec::new();
    for d in 0..=degree_bound {
        for m in target.standard_monomials(d) {
            monos.push(Polynomial::monomial(target, m, 1));
        }
    }
    let mut found: Vec<Option<u32>> = vec![None; monos.len()];
    for t in 0..=t_max {
        let open: Vec<usize> = (0..monos.len()).filter(|&i| found[i].is_none()).collect();
        if open.is_empty() {
            break;
        }
        let powers: Vec<Polynomial> = open.iter().map(|&i| monos[i].pow(p.pow(t))).collect();
        for (&i, ok) in open.iter().zip(phi.image_contains_all(&powers)?) {
            if ok {
                found[i] = Some(t);
            }
        }
    }
    let image: Vec<Certificate> = monos
        .iter()
        .zip(found)
        .map(|(m, t)| Certificate {
            element: m.to_string(),
            t,
        })
        .collect();

    let verdict = if !non_nilpotent.is_empty() {
        Verdict::Fail
    } else if kernel.iter().chain(&image).any(|c| c.t.is_none()) {
        Verdict::Inconclusive(t_max)
    } else {
        Verdict::Pass
    };
    Ok(FIsoReport {
        verdict,
        kernel,
        non_nilpotent,
        image,
        degree_bound,
        t_max,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Inclusion,
    Conjugation,
}

/// A ring map `H*(from) → H*(to)` between members of an indexed family.
#[derive(Clone, Debug)]
pub struct FamilyMap {
    pub kind: MapKind,
    pub from: String,
    pub to: String,
    pub hom: RingHom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub holds: bool,
    pub checked: usize,
    /// `(from, to)` of every map with `φ(u_from) ≠ u_to`.
    pub violations: Vec<(String, String)>,
}

/// Whether `φ(u_from) = u_to` for every supplied map.
pub fn limit_family_check(
    family: &BTreeMap<String, Polynomial>,
    maps: &[FamilyMap],
) -> Result<LimitReport> {
    let mut violations = Vec::new();
    for m in maps {
        let get = |label: &str| {
            family
                .get(label)
                .ok_or_else(|| Error::Usage(format!("family has no member labelled {label}")))
        };
        let (u, v) = (get(&m.from)?, get(&m.to)?);
        if u.ring() != m.hom.source() || v.ring() != m.hom.target() {
            return Err(Error::Usage(format!(
                "map {} -> {} does not match the family rings",
                m.from, m.to
            )));
        }
        if m.hom.apply(u) != *v {
            violations.push((m.from.clone(), m.to.clone()));
        }
    }
    Ok(LimitReport {
        holds: violations.is_empty(),
        checked: maps.len(),
        violations,
    })
}

/// All nontrivial subgroups of `(Z/p)^r`, each with its reduced row echelon basis,
/// ordered by rank and then by basis.
pub fn elementary_subgroups(p: u32, r: usize) -> Result<Vec<Subgroup>> {
    let ambient = GroupData::elementary(p, r)?;
    let mut out = Vec::new();
    for k in 1..=r {
        let mut bases = Vec::new();
        for pivots in combinations(r, k) {
            let slots: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let pivots = pivots.clone();
                    (pivots[i] + 1..r)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (i, c))
                })
                .collect();
            let total = (p as usize).pow(slots.len() as u32);
            for mut code in 0..total {
                let mut rows = vec![vec![0u32; r]; k];
                for (i, &c) in pivots.iter().enumerate() {
                    rows[i][c] = 1;
                }
                for &(i, c) in &slots {
                    rows[i][c] = (code % p as usize) as u32;
                    code /= p as usize;
                }
                bases.push(rows);
            }
        }
        bases.sort();
        for b in bases {
            out.push(Subgroup::new(&ambient, b)?);
        }
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in (k - 1)..n {
        for mut c in combinations(last, k - 1) {
            c.push(last);
            out.push(c);
        }
    }
    out
}

/// Label of a subgroup by its basis words, e.g. `<(1,0),(0,1)>`.
pub fn subgroup_label(sub: &Subgroup) -> String {
    let words: Vec<String> = sub
        .basis()
        .iter()
        .map(|w| {
            format!(
                "({})",
                w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    format!("<{}>", words.join(","))
}

/// Restriction maps between all nontrivial subgroups `E' < E''` of `(Z/p)^r`, plus the
/// identity conjugations of the abelian ambient group.
pub fn elementary_family_maps(p: u32, r: usize) -> Result<Vec<FamilyMap>> {
    let subs = elementary_subgroups(p, r)?;
    let mut maps = Vec::new();
    for big in &subs {
        let label = subgroup_label(big);
        let ring = uncertified_builtin(p, big.basis().len())?.ring;
        maps.push(FamilyMap {
            kind: MapKind::Conjugation,
            from: label.clone(),
            to: label.clone(),
            hom: RingHom::identity(&ring),
        });
        for small in &subs {
            if small.basis().len() >= big.basis().len()
                || !small.basis().iter().all(|w| big.contains(w))
            {
                continue;
            }
            let cols: Vec<Vec<u32>> = small
                .basis()
                .iter()
                .map(|w| big.coordinates(w).expect("contained").clone())
                .collect();
            let datum = restriction_hom(p, &cols)?;
            maps.push(FamilyMap {
                kind: MapKind::Inclusion,
                from: label.clone(),
                to: subgroup_label(small),
                hom: datum.hom,
            });
        }
    }
    Ok(maps)
}

/// The family `u_{E'} = res_{E,E'}(u)` over all nontrivial subgroups of `E = (Z/p)^r`.
pub fn restricted_family(p: u32, u: &Polynomial) -> Result<BTreeMap<String, Polynomial>> {
    let r = u
        .ring()
        .generators()
        .iter()
        .filter(|g| g.name.starts_with("eta"))
        .count();
    let mut out = BTreeMap::new();
    for sub in elementary_subgroups(p, r)? {
        let datum = restriction_for(&sub)?;
        if datum.source.ring != *u.ring() {
            return Err(Error::Usage(
                "family generator must live in the builtin cohomology ring".into(),
            ));
        }
        out.insert(subgroup_label(&sub), datum.hom.apply(u));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SubgroupTheoremReport {
    /// `supp(X↓E')`.
    pub restricted: SpecSet,
    /// `(res*)^{-1} supp(X)`.
    pub pulled_back: SpecSet,
    pub equal: bool,
    pub spot_checks: usize,
    /// Rank points `β` of `E'` where `X↓E'` and `X` at the image of `β` disagree on freeness.
    pub spot_failures: Vec<String>,
}

impl SubgroupTheoremReport {
    pub fn passed(&self) -> bool {
        self.equal && self.spot_failures.is_empty()
    }
}

fn rank_field(group: &GroupData) -> Result<Field> {
    Field::new(group.characteristic(), 2)
}

/// `supp(X↓E')` against the preimage of `supp(X)` along restriction, with rank-point spot checks.
pub fn subgroup_theorem_check(
    x: &GroupModule,
    sub: &Subgroup,
    opts: SupportOptions,
) -> Result<SubgroupTheoremReport> {
    if x.group() != sub.ambient() {
        return Err(Error::Usage("subgroup of a different group".into()));
    }
    let datum = restriction_for(sub)?;
    let red = datum.reduced_hom()?;
    let restricted_module = x.restrict(sub)?;
    let restricted = supp_module(&restricted_module, opts)?;
    let pulled_back = SpecSet::preimage(&red, &supp_module(x, opts)?)?;
    let equal = restricted.equals(&pulled_back)?;

    let field = rank_field(x.group())?;
    let (points, _) = projective_points(&field, sub.basis().len(), DEFAULT_SPOT_CHECKS);
    let mut spot_failures = Vec::new();
    for beta in &points {
        let mut alpha = vec![0; x.group().rank()];
        for (b, w) in beta.coords().iter().zip(sub.basis()) {
            for (a, &e) in alpha.iter_mut().zip(w) {
                *a = field.add(*a, field.mul(*b, field.from_int(e as i64)));
            }
        }
        let image = RankPoint::new(&field, alpha)?;
        if point_in_supp(&restricted_module, beta)? != point_in_supp(x, &image)? {
            spot_failures.push(beta.to_string());
        }
    }
    Ok(SubgroupTheoremReport {
        restricted,
        pulled_back,
        equal,
        spot_checks: points.len(),
        spot_failures,
    })
}

#[derive(Clone, Debug)]
pub struct InductionReport {
    /// `supp(Y↑G)`.
    pub induced: SpecSet,
    /// Closure of `res*(supp Y)`.
    pub image: SpecSet,
    pub equal: bool,
}

/// `supp(Y↑G)` against the closed image of `supp(Y)` along restriction.
pub fn induction_check(
    y: &GroupModule,
    sub: &Subgroup,
    opts: SupportOptions,
) -> Result<InductionReport> {
    let red = restriction_for(sub)?.reduced_hom()?;
    let induced = supp_module(&y.induce(sub)?, opts)?;
    let image = SpecSet::closed_image(&red, &supp_module(y, opts)?)?;
    let equal = induced.equals(&image)?;
    Ok(InductionReport {
        induced,
        image,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::{compact_koszul_module, ext_ring};
    use crate::poly::GradedPolyRing;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn builtin_presentations() {
        let c = builtin_cohomology(2, 1).unwrap();
        assert_eq!(c.ring.describe(), "F_2[eta1(1)]");
        assert_eq!(c.certified_to, Some(8));
        let c = builtin_cohomology(3, 2).unwrap();
        assert_eq!(
            c.ring.describe(),
            "F_3[eta1(1), eta2(1), theta1(2), theta2(2)]"
        );
        assert!(!c.ring.is_commutative());
        let (_, t) = ext_ring(&GroupData::elementary(3, 2).unwrap(), 8).unwrap();
        let hilb = c.ring.hilbert_function(8);
        assert_eq!(
            hilb,
            t.dims().into_iter().map(|(_, d)| d).collect::<Vec<_>>()
        );
        assert!(builtin_cohomology(2, 0).is_err());
    }

    #[test]
    fn restriction_examples() {
        let id = restriction_hom(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(id.hom.images(), RingHom::identity(&id.source.ring).images());

        let diag = restriction_hom(2, &[vec![1, 1]]).unwrap();
        let names: Vec<String> = diag.hom.images().iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["eta1", "eta1"]);

        let axis = restriction_hom(2, &[vec![1, 0]]).unwrap();
        let names: Vec<String> = axis.hom.images().iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["eta1", "0"]);

        let p3 = restriction_hom(3, &[vec![1, 2]]).unwrap();
        let names: Vec<String> = p3.hom.images().iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["eta1", "2*eta1", "theta1", "2*theta1"]);
        let red = p3.reduced_hom().unwrap();
        assert_eq!(
            red.images()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>(),
            ["theta1", "2*theta1"]
        );

        assert!(restriction_hom(2, &[vec![1, 1], vec![1, 1]]).is_err());
        assert!(restriction_hom(3, &[vec![1, 2], vec![2, 1]]).is_err());
    }

    #[test]
    fn f_isomorphism_examples() {
        let ring = builtin_cohomology(3, 2).unwrap().ring;
        let rep = f_isomorphism_check(&RingHom::identity(&ring), 4, DEFAULT_T_MAX).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.image.iter().all(|c| c.t == Some(0)));

        let kx = GradedPolyRing::free(&f2(), &[("x", 1)]).unwrap();
        let k = GradedPolyRing::free(&f2(), &[]).unwrap();
        let phi = RingHom::new(&kx, &k, vec![Polynomial::zero(&k)]).unwrap();
        let rep = f_isomorphism_check(&phi, 4, DEFAULT_T_MAX).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert_eq!(rep.non_nilpotent, ["x"]);

        let z4 = GradedPolyRing::new(&f2(), &[("eta", 1), ("theta", 2)], &["eta^2"]).unwrap();
        let z2 = GradedPolyRing::free(&f2(), &[("e", 1)]).unwrap();
        let res = RingHom::parse(&z4, &z2, &["0", "e^2"]).unwrap();
        let rep = f_isomorphism_check(&res, 6, DEFAULT_T_MAX).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(
            rep.kernel,
            [Certificate {
                element: "eta".into(),
                t: Some(1)
            }]
        );
        let e = rep.image.iter().find(|c| c.element == "e").unwrap();
        assert_eq!(e.t, Some(1));

        let rep = f_isomorphism_check(&res, 6, 0).unwrap();
        assert_eq!(rep.verdict, Verdict::Inconclusive(0));
    }

    #[test]
    fn limit_family_examples() {
        let maps = elementary_family_maps(2, 2).unwrap();
        // Three lines, the whole group, and one inclusion of each line.
        assert_eq!(
            maps.iter().filter(|m| m.kind == MapKind::Inclusion).count(),
            3
        );
        assert_eq!(maps.len(), 7);

        let ring = builtin_cohomology(2, 2).unwrap().ring;
        let zero = restricted_family(2, &Polynomial::zero(&ring)).unwrap();
        assert!(limit_family_check(&zero, &maps).unwrap().holds);

        let u = Polynomial::parse(&ring, "eta1^2 + eta2^2").unwrap();
        let mut fam = restricted_family(2, &u).unwrap();
        assert!(limit_family_check(&fam, &maps).unwrap().holds);
        assert!(fam["<(1,1)>"].is_zero());

        let line = fam.get_mut("<(0,1)>").unwrap();
        *line = line.add(&Polynomial::parse(line.ring(), "eta1^2").unwrap());
        let rep = limit_family_check(&fam, &maps).unwrap();
        assert!(!rep.holds);
        assert_eq!(
            rep.violations,
            [("<(1,0),(0,1)>".to_string(), "<(0,1)>".to_string())]
        );

        fam.remove("<(0,1)>");
        assert!(limit_family_check(&fam, &maps).is_err());
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(elementary_subgroups(2, 3).unwrap().len(), 7 + 7 + 1);
        assert_eq!(elementary_subgroups(3, 2).unwrap().len(), 4 + 1);
    }

    #[test]
    fn subgroup_theorem_examples() {
        let g = GroupData::elementary(2, 2).unwrap();
        let opts = SupportOptions::default();
        let axis = Subgroup::new(&g, vec![vec![0, 1]]).unwrap();

        let rep = subgroup_theorem_check(&GroupModule::trivial(&g), &axis, opts).unwrap();
        assert!(rep.passed());
        assert!(rep
            .restricted
            .equals(&SpecSet::whole(rep.restricted.ring()).unwrap())
            .unwrap());

        let rep = subgroup_theorem_check(&GroupModule::free(&g, 1), &axis, opts).unwrap();
        assert!(rep.passed());
        let closed = SpecSet::v_of(&HomogeneousIdeal::irrelevant(rep.restricted.ring())).unwrap();
        assert!(rep.restricted.equals(&closed).unwrap());

        let ring = builtin_cohomology(2, 2).unwrap().ring;
        let eta1 = Polynomial::parse(&ring, "eta1").unwrap();
        let l = compact_koszul_module(&GroupModule::trivial(&g), &[eta1])
            .unwrap()
            .unwrap();
        let rep = subgroup_theorem_check(&l, &axis, opts).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep
            .restricted
            .equals(&SpecSet::whole(rep.restricted.ring()).unwrap())
            .unwrap());
        let other = Subgroup::new(&g, vec![vec![1, 0]]).unwrap();
        let rep = subgroup_theorem_check(&l, &other, opts).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.restricted.equals(&closed).unwrap());
    }

    #[test]
    fn induction_examples() {
        let g = GroupData::elementary(3, 2).unwrap();
        let h = Subgroup::new(&g, vec![vec![1, 1]]).unwrap();
        let rep = induction_check(
            &GroupModule::trivial(h.group()),
            &h,
            SupportOptions::default(),
        )
        .unwrap();
        assert!(rep.equal, "{rep:?}");
        assert_eq!(rep.induced.component_strings().len(), 1);
    }
}
