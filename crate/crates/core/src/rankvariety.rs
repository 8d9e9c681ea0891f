//! Rank varieties of modules over elementary abelian groups: freeness along shifted cyclic
//! subgroups `⟨1 + Σ α_i z_i⟩`, used as a pointwise oracle for cohomological support.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::homalg::{supp_module_report, SupportOptions};
use crate::lattice::SpecSet;
use crate::matrix::Matrix;
use crate::modrep::GroupModule;
use crate::poly::Polynomial;

pub const DEFAULT_POINT_BUDGET: usize = 200_000;

/// A projective point, scaled so that its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankPoint {
    field: Field,
    coords: Vec<Elem>,
}

impl RankPoint {
    pub fn new(field: &Field, coords: Vec<Elem>) -> Result<RankPoint> {
        let Some(first) = coords.iter().position(|&x| x != 0) else {
            return Err(Error::Usage("the zero vector is not a rank point".into()));
        };
        let inv = field.inv(coords[first]).expect("nonzero");
        let coords = coords.iter().map(|&x| field.mul(x, inv)).collect();
        Ok(RankPoint {
            field: field.clone(),
            coords,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }
}

impl fmt::Display for RankPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|&x| self.field.format_elem(x))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn check_elementary(m: &GroupModule) -> Result<()> {
    if !m.group().is_elementary() {
        return Err(Error::Usage(
            "rank varieties need an elementary abelian group".into(),
        ));
    }
    Ok(())
}

/// `U_α = Σ α_i (G_i - I)` over the field of `α`; `U_α^p = 0`.
pub fn shifted_matrix(m: &GroupModule, alpha: &RankPoint) -> Result<Matrix> {
    check_elementary(m)?;
    if alpha.coords.len() != m.group().rank() {
        return Err(Error::Usage(format!(
            "rank point needs {} coordinates",
            m.group().rank()
        )));
    }
    let f = &alpha.field;
    if f.characteristic() != m.field().characteristic()
        || !(m.field().is_prime_field() || m.field() == f)
    {
        return Err(Error::Usage(
            "rank point must live over an extension of the module's field".into(),
        ));
    }
    let mut u = Matrix::zeros(f, m.dim(), m.dim());
    for (z, &a) in m.nilpotents().iter().zip(&alpha.coords) {
        if a != 0 {
            u = u.add(&z.extend_scalars(f).scale(a));
        }
    }
    Ok(u)
}

/// Freeness of the restriction to `⟨1 + U_α⟩`: `rank U_α^{p-1} = dim / p`.
pub fn is_free_at(m: &GroupModule, alpha: &RankPoint) -> Result<bool> {
    let p = m.field().characteristic() as usize;
    let u = shifted_matrix(m, alpha)?;
    if !m.dim().is_multiple_of(p) {
        return Ok(false);
    }
    Ok(u.pow(p as u64 - 1).rank() == m.dim() / p)
}

pub fn point_in_supp(m: &GroupModule, alpha: &RankPoint) -> Result<bool> {
    Ok(!is_free_at(m, alpha)?)
}

/// All projective points of `P^{r-1}(field)` in a fixed order: by position of the leading
/// 1, then lexicographically in the remaining coordinates.
pub fn projective_points(field: &Field, r: usize, budget: usize) -> (Vec<RankPoint>, bool) {
    let q = field.order() as usize;
    let mut out = Vec::new();
    for lead in 0..r {
        let free = r - lead - 1;
        let count = q.checked_pow(free as u32).unwrap_or(usize::MAX);
        for idx in 0..count {
            if out.len() >= budget {
                return (out, true);
            }
            let mut coords = vec![0; r];
            coords[lead] = 1;
            let mut x = idx;
            for pos in (lead + 1..r).rev() {
                coords[pos] = (x % q) as Elem;
                x /= q;
            }
            out.push(RankPoint {
                field: field.clone(),
                coords,
            });
        }
    }
    (out, false)
}

/// Every projective point over `F_{p^m}` with its membership in the rank variety.
#[derive(Clone, Debug)]
pub struct PointClassification {
    pub field: Field,
    pub points: Vec<(RankPoint, bool)>,
    /// The point budget ran out before all points were classified.
    pub truncated: bool,
}

impl PointClassification {
    pub fn support(&self) -> Vec<&RankPoint> {
        self.points.iter().filter(|x| x.1).map(|x| &x.0).collect()
    }
}

pub fn supp_points(m: &GroupModule, ext_degree: u32) -> Result<PointClassification> {
    supp_points_with_budget(m, ext_degree, DEFAULT_POINT_BUDGET)
}

pub fn supp_points_with_budget(
    m: &GroupModule,
    ext_degree: u32,
    budget: usize,
) -> Result<PointClassification> {
    check_elementary(m)?;
    let field = Field::new(m.field().characteristic(), ext_degree)?;
    let (pts, truncated) = projective_points(&field, m.group().rank(), budget);
    let points = pts
        .into_iter()
        .map(|pt| point_in_supp(m, &pt).map(|b| (pt, b)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PointClassification {
        field,
        points,
        truncated,
    })
}

/// Whether a point lies in a support set, reading each support-ring generator (one per
/// cyclic factor) as the corresponding coordinate.
pub fn point_in_specset(set: &SpecSet, alpha: &RankPoint) -> Result<bool> {
    if set.ring().num_gens() != alpha.coords.len() {
        return Err(Error::Usage(
            "support ring and rank point have different ranks".into(),
        ));
    }
    Ok(set.components().iter().any(|c| {
        c.generators()
            .iter()
            .all(|g| g.eval(&alpha.field, &alpha.coords) == 0)
    }))
}

/// Comparison of the rank variety with `V(ann_D)`.
#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub support: SpecSet,
    pub stabilized: bool,
    pub points_checked: usize,
    pub certified_points: usize,
    /// Points in the rank variety outside the computed support: a degree-bound failure.
    pub failures: Vec<RankPoint>,
    /// Points of the computed support where the module is free.
    pub overshoot: Vec<RankPoint>,
    /// Components of the computed support with no rational witness over the chosen field.
    pub advisories: Vec<String>,
    /// The computed support is only the irrelevant ideal, which has no projective point.
    pub closed_point_only: bool,
    pub truncated: bool,
}

impl CrossCheckReport {
    pub fn is_consistent(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn cross_check(
    m: &GroupModule,
    opts: SupportOptions,
    ext_degree: u32,
) -> Result<CrossCheckReport> {
    let report = supp_module_report(m, opts)?;
    let points = supp_points(m, ext_degree)?;
    let support = report.support;
    let mut failures = Vec::new();
    let mut overshoot = Vec::new();
    let mut certified = Vec::new();
    for (pt, in_rank) in &points.points {
        let in_coh = point_in_specset(&support, pt)?;
        if *in_rank {
            certified.push(pt);
            if !in_coh {
                failures.push(pt.clone());
            }
        } else if in_coh {
            overshoot.push(pt.clone());
        }
    }
    let mut advisories = Vec::new();
    let mut closed_point_only = !support.is_empty();
    for c in support.components() {
        let irrelevant = (0..c.ring().num_gens())
            .map(|i| c.contains_radical(&Polynomial::var(c.ring(), i)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        if irrelevant {
            continue;
        }
        closed_point_only = false;
        let witnessed = certified.iter().any(|pt| {
            c.generators()
                .iter()
                .all(|g| g.eval(&pt.field, &pt.coords) == 0)
        });
        if !witnessed {
            advisories.push(format!("no F_{}-point on V{}", points.field.order(), c));
        }
    }
    Ok(CrossCheckReport {
        support,
        stabilized: report.stabilized,
        points_checked: points.points.len(),
        certified_points: certified.len(),
        failures,
        overshoot,
        advisories,
        closed_point_only,
        truncated: points.truncated,
    })
}
