use std::collections::BTreeMap;

use serde_json::{json, Value};
use ttg_core::bggdg::{
    bgg_apply, bgg_bimodule, dg_homology, ext_over_dg, exterior_algebra, phi_quasi_iso_check,
    symmetric_algebra, SemifreeModule,
};
use ttg_core::homalg::{
    compact_koszul_module, ext_ring, supp_koszul_module, supp_module, supp_module_report,
    GroupCohomology, SupportOptions,
};
use ttg_core::lattice::{hasse_dot, sublattice, SpecSet};
use ttg_core::modrep::GroupModule;
use ttg_core::poly::{commutative_reduction, HomogeneousIdeal, Polynomial, Ring};
use ttg_core::quillen::{
    elementary_family_maps, f_isomorphism_check, induction_check, restricted_family,
    subgroup_theorem_check, Certificate, Verdict,
};
use ttg_core::rankvariety::{cross_check, supp_points};
use ttg_core::Error;

use crate::report::{Check, Report, Status};
use crate::workspace::{module_block, CohomologyEntry, Diagnostic, ModuleEntry, Oracle, Workspace};

pub const DEFAULT_DEGREE_BOUND: i32 = 10;
pub const DEFAULT_STABILIZE: i32 = 3;
pub const DEFAULT_EXT_DEGREE: u32 = 2;
pub const DEFAULT_TMAX: u32 = 3;
pub const DEFAULT_TRUNCATION: u32 = 6;
pub const CERTIFICATION_DEGREE: usize = 8;
const LATTICE_LIMIT: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub degree_bound: i32,
    pub stabilize: i32,
    pub ext_degree: u32,
    pub oracle: Oracle,
    pub tmax: u32,
    pub truncation: u32,
}

impl Options {
    pub fn support(&self) -> SupportOptions {
        SupportOptions {
            degree_bound: self.degree_bound,
            window: self.stabilize,
        }
    }

    fn json(&self) -> Value {
        json!({
            "degree_bound": self.degree_bound,
            "stabilize": self.stabilize,
            "ext_degree": self.ext_degree,
            "oracle": self.oracle.name(),
            "tmax": self.tmax,
            "truncation": self.truncation,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Failure {
    Parse(Vec<Diagnostic>),
    Usage(String),
    Budget(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) | Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Internal(_) => 1,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Parse(ds) => ds
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join("\n"),
            Failure::Usage(m) => format!("usage error: {m}"),
            Failure::Budget(m) => format!("budget exceeded: {m}"),
            Failure::Internal(m) => format!("internal error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Budget(m) => {
                Failure::Budget(format!("{m} (lower --truncation or shrink the input)"))
            }
            Error::Window(m) => {
                Failure::Budget(format!("{m} (raise --degree-bound or --truncation)"))
            }
            Error::Internal(m) => Failure::Internal(m),
            Error::Usage(m) | Error::Invalid(m) | Error::Parse(m) => Failure::Usage(m),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub dot: Option<String>,
}

type Out = Result<Outcome, Failure>;

fn usage<T>(m: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(m.into()))
}

fn module<'a>(ws: &'a Workspace, name: &str) -> Result<&'a ModuleEntry, Failure> {
    ws.modules
        .get(name)
        .ok_or_else(|| Failure::Usage(format!("unknown module '{name}'")))
}

fn whole_group_module<'a>(ws: &'a Workspace, name: &str) -> Result<&'a GroupModule, Failure> {
    let m = module(ws, name)?;
    match &m.over {
        Some(h) => usage(format!(
            "module '{name}' lives over subgroup '{h}', not the whole group"
        )),
        None => Ok(&m.module),
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

/// Names `Spec R` and the closed point, otherwise prints the canonical form.
fn describe_support(s: &SpecSet) -> Result<String, Failure> {
    let ring = s.ring();
    if s.is_empty() {
        return Ok("∅".into());
    }
    if s.equals(&SpecSet::whole(ring)?)? {
        return Ok("Spec R".into());
    }
    if s.equals(&SpecSet::v_of(&HomogeneousIdeal::irrelevant(ring))?)? {
        return Ok("V(R+)".into());
    }
    Ok(s.to_string())
}

fn spec_json(s: &SpecSet) -> Result<Value, Failure> {
    Ok(json!({
        "canonical": s.to_string(),
        "components": s.component_strings(),
        "summary": describe_support(s)?,
    }))
}

fn base_inputs(path: &str, opts: &Options, extra: Value) -> Value {
    let mut v = json!({ "workspace": path, "options": opts.json() });
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

fn report(command: &str, inputs: Value, result: Value, checks: Vec<Check>) -> Outcome {
    Outcome {
        report: Report {
            command: command.into(),
            inputs,
            result,
            checks,
        },
        dot: None,
    }
}

pub fn support(ws: &Workspace, path: &str, name: &str, opts: &Options) -> Out {
    let m = &module(ws, name)?.module;
    let mut result = BTreeMap::new();
    let mut checks = Vec::new();
    result.insert("module_dim".to_string(), json!(m.dim()));
    if opts.oracle != Oracle::Rank {
        let rep = supp_module_report(m, opts.support())?;
        result.insert("annihilator".into(), json!(rep.ideal.to_string()));
        result.insert("annihilator_reduced".into(), json!(rep.reduced.to_string()));
        result.insert("support".into(), spec_json(&rep.support)?);
        result.insert("degree_bound".into(), json!(rep.degree_bound));
        result.insert("stabilized".into(), json!(rep.stabilized));
        result.insert(
            "stabilization_window".into(),
            json!([rep.stabilization_window.0, rep.stabilization_window.1]),
        );
        result.insert("generator_top".into(), json!(rep.generator_top));
        let (a, b) = rep.stabilization_window;
        checks.push(if rep.stabilized {
            Check::new(
                "stabilized",
                Status::Pass,
                format!("V(ann) constant for degree bounds {a}..{b}"),
            )
        } else {
            Check::new(
                "stabilized",
                Status::Inconclusive,
                format!("V(ann) changed within {a}..{b}; raise --degree-bound"),
            )
        });
    }
    if opts.oracle != Oracle::Ann {
        let pts = supp_points(m, opts.ext_degree)?;
        result.insert(
            "rank_variety".into(),
            json!({
                "field_order": pts.field.order(),
                "points_checked": pts.points.len(),
                "support_points": pts.support().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "truncated": pts.truncated,
            }),
        );
    }
    if opts.oracle == Oracle::Both {
        let cc = cross_check(m, opts.support(), opts.ext_degree)?;
        result.insert(
            "cross_check".into(),
            json!({
                "certified_points": cc.certified_points,
                "failures": strings(&cc.failures),
                "overshoot": strings(&cc.overshoot),
                "advisories": cc.advisories,
                "closed_point_only": cc.closed_point_only,
            }),
        );
        let witness = if cc.is_consistent() {
            format!(
                "{} rank-certified points all lie in the support",
                cc.certified_points
            )
        } else {
            format!(
                "rank-certified points outside the support: {}",
                strings(&cc.failures).join(", ")
            )
        };
        checks.push(Check::from_bool(
            "oracle-agreement",
            cc.is_consistent(),
            witness,
        ));
    }
    let inputs = base_inputs(path, opts, json!({ "module": name }));
    Ok(report("support", inputs, json!(result), checks))
}

fn ideal_in_cohomology(ws: &Workspace, name: &str) -> Result<(Vec<Polynomial>, Ring), Failure> {
    let ideal = ws
        .ideals
        .get(name)
        .ok_or_else(|| Failure::Usage(format!("unknown ideal '{name}'")))?;
    let group = ws.group().map_err(Failure::Usage)?;
    let coh = GroupCohomology::shared(group, 3)?;
    if ideal.ring().describe() != coh.ring().describe() {
        return usage(format!(
            "ideal '{name}' does not live in the cohomology ring of the group"
        ));
    }
    Ok((ideal.generators().to_vec(), coh.ring().clone()))
}

pub fn koszul(ws: &Workspace, path: &str, name: &str, ideal: &str, opts: &Options) -> Out {
    let x = whole_group_module(ws, name)?;
    let (gens, coh_ring) = ideal_in_cohomology(ws, ideal)?;
    let kos = compact_koszul_module(x, &gens)?;
    let supp_kos = supp_koszul_module(x, &gens, opts.support())?;
    let supp_x = supp_module(x, opts.support())?;
    let ring = supp_x.ring().clone();
    let (_, red) = commutative_reduction(&coh_ring);
    let reduced: Vec<Polynomial> = gens.iter().map(|g| red.apply(g)).collect();
    let va = SpecSet::v_of(&HomogeneousIdeal::new(&ring, reduced)?)?;
    let expected = supp_x.meet(&va)?;
    let equal = supp_kos.equals(&expected)?;
    let label = format!("kos_{name}_{ideal}");
    let result = json!({
        "koszul_dim": kos.as_ref().map_or(0, |m| m.dim()),
        "projective": kos.is_none(),
        "support": spec_json(&supp_kos)?,
        "module_support": spec_json(&supp_x)?,
        "ideal_variety": spec_json(&va)?,
        "degree_bound": opts.degree_bound,
        "module_block": kos.as_ref().map(|m| module_block(&label, m, None)),
    });
    let witness = format!("supp(kos) = {supp_kos}, supp(X) ∧ V(a) = {expected}");
    let inputs = base_inputs(path, opts, json!({ "module": name, "ideal": ideal }));
    Ok(report(
        "koszul",
        inputs,
        result,
        vec![Check::from_bool("koszul-support", equal, witness)],
    ))
}

fn subgroup<'a>(ws: &'a Workspace, name: &str) -> Result<&'a ttg_core::modrep::Subgroup, Failure> {
    ws.subgroups
        .get(name)
        .ok_or_else(|| Failure::Usage(format!("unknown subgroup '{name}'")))
}

pub fn restrict(ws: &Workspace, path: &str, name: &str, sub_name: &str, opts: &Options) -> Out {
    let x = whole_group_module(ws, name)?;
    let sub = subgroup(ws, sub_name)?;
    let res = x.restrict(sub)?;
    let rep = subgroup_theorem_check(x, sub, opts.support())?;
    let result = json!({
        "subgroup": sub.describe(),
        "restricted_dim": res.dim(),
        "restricted_support": spec_json(&rep.restricted)?,
        "pulled_back_support": spec_json(&rep.pulled_back)?,
        "spot_checks": rep.spot_checks,
        "degree_bound": opts.degree_bound,
        "module_block": module_block(&format!("{name}_{sub_name}"), &res, Some(sub_name)),
    });
    let witness = if rep.spot_failures.is_empty() {
        format!(
            "supp(X restricted) = {}, res*^-1 supp(X) = {}",
            rep.restricted, rep.pulled_back
        )
    } else {
        format!("rank points disagree: {}", rep.spot_failures.join(", "))
    };
    let inputs = base_inputs(path, opts, json!({ "module": name, "subgroup": sub_name }));
    Ok(report(
        "restrict",
        inputs,
        result,
        vec![Check::from_bool("subgroup-theorem", rep.passed(), witness)],
    ))
}

pub fn induce(ws: &Workspace, path: &str, name: &str, sub_name: &str, opts: &Options) -> Out {
    let y = module(ws, name)?;
    if y.over.as_deref() != Some(sub_name) {
        return usage(format!(
            "module '{name}' must be declared with 'over = {sub_name}'"
        ));
    }
    let sub = subgroup(ws, sub_name)?;
    let ind = y.module.induce(sub)?;
    let rep = induction_check(&y.module, sub, opts.support())?;
    let result = json!({
        "subgroup": sub.describe(),
        "induced_dim": ind.dim(),
        "induced_support": spec_json(&rep.induced)?,
        "image_support": spec_json(&rep.image)?,
        "degree_bound": opts.degree_bound,
        "module_block": module_block(&format!("{name}_ind"), &ind, None),
    });
    let witness = format!(
        "supp(Y induced) = {}, res*(supp Y) = {}",
        rep.induced, rep.image
    );
    let inputs = base_inputs(path, opts, json!({ "module": name, "subgroup": sub_name }));
    Ok(report(
        "induce",
        inputs,
        result,
        vec![Check::from_bool("induction-support", rep.equal, witness)],
    ))
}

pub const BGG_CHECKS: [&str; 5] = ["phi-check", "bimodule", "apply", "ext", "all"];

fn elementary_rank(ws: &Workspace) -> Result<(u32, usize), Failure> {
    let g = ws.group().map_err(Failure::Usage)?;
    if !g.is_elementary() {
        return usage("bgg checks need an elementary abelian group");
    }
    Ok((g.characteristic(), g.rank()))
}

fn dims_text(d: &[usize]) -> String {
    format!(
        "({})",
        d.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

pub fn bgg(ws: &Workspace, path: &str, check: &str, opts: &Options) -> Out {
    if !BGG_CHECKS.contains(&check) {
        return usage(format!(
            "unknown bgg check '{check}' (expected one of {})",
            BGG_CHECKS.join(", ")
        ));
    }
    let (p, r) = elementary_rank(ws)?;
    let field = ws.field.clone();
    let all = check == "all";
    let mut result = BTreeMap::new();
    let mut checks = Vec::new();
    if all || check == "phi-check" {
        let rep = phi_quasi_iso_check(p, r, (-(r as i32), 0))?;
        let mut hb = rep.homology_b.clone();
        hb.sort_by_key(|&(deg, _)| -deg);
        let dims: Vec<usize> = hb.iter().map(|&(_, d)| d).collect();
        result.insert(
            "phi".to_string(),
            json!({
                "homology_dims": dims,
                "lambda_dims": rep.lambda_dims.iter().map(|&(n, d)| json!([n, d])).collect::<Vec<_>>(),
                "respects_relations": rep.respects_relations,
                "commutes_with_d": rep.commutes_with_d,
                "bijective": rep.bijective,
            }),
        );
        checks.push(Check::from_bool(
            "phi-quasi-isomorphism",
            rep.passed(),
            format!("H^-n(B) dims {}", dims_text(&dims)),
        ));
    }
    if all || check == "bimodule" {
        let bim = bgg_bimodule(&field, r, opts.truncation)?;
        let h = dg_homology(&bim.over_lambda, bim.certified)?;
        let ok = bim.actions_commute() && h.total() == 1 && h.dim(0) == 1;
        result.insert(
            "bimodule".to_string(),
            json!({
                "truncation": opts.truncation,
                "certified_window": [bim.certified.0, bim.certified.1],
                "homology": h.dims.iter().map(|&(n, d)| json!([n, d])).collect::<Vec<_>>(),
                "actions_commute": bim.actions_commute(),
            }),
        );
        checks.push(Check::from_bool(
            "bimodule-resolves-k",
            ok,
            format!("total homology {} in window", h.total()),
        ));
    }
    if all || check == "apply" {
        let s = symmetric_algebra(&field, r, &vec![2; r])?;
        let img = bgg_apply(&SemifreeModule::free(&s, vec![0])?, opts.truncation)?;
        let h = dg_homology(&img.module, img.certified)?;
        result.insert(
            "apply".to_string(),
            json!({
                "certified_window": [img.certified.0, img.certified.1],
                "homology": h.dims.iter().map(|&(n, d)| json!([n, d])).collect::<Vec<_>>(),
            }),
        );
        checks.push(Check::from_bool(
            "bgg-of-s-is-k",
            h.total() == 1 && h.dim(0) == 1,
            format!("total homology {} in window", h.total()),
        ));
    }
    if all || check == "ext" {
        let top = opts.degree_bound.max(0) as usize;
        let lambda = exterior_algebra(&field, r, &vec![-1; r])?;
        let s = symmetric_algebra(&field, r, &vec![2; r])?;
        let ext = ext_over_dg(&lambda, top)?;
        let sym: Vec<usize> = (0..=top)
            .map(|n| s.dim(n as i32))
            .collect::<Result<_, _>>()?;
        result.insert(
            "ext".to_string(),
            json!({ "ext_dims": ext, "symmetric_dims": sym, "max_degree": top }),
        );
        checks.push(Check::from_bool(
            "ext-over-exterior",
            ext == sym,
            format!("Ext dims {}", dims_text(&ext)),
        ));
    }
    let inputs = base_inputs(path, opts, json!({ "check": check, "p": p, "r": r }));
    Ok(report("bgg", inputs, json!(result), checks))
}

fn named_set(ws: &Workspace, name: &str, opts: &Options) -> Result<SpecSet, Failure> {
    if let Some(ideal) = ws.ideals.get(name) {
        let (red_ring, red) = commutative_reduction(ideal.ring());
        let gens: Vec<Polynomial> = ideal.generators().iter().map(|g| red.apply(g)).collect();
        return Ok(SpecSet::v_of(&HomogeneousIdeal::new(&red_ring, gens)?)?);
    }
    if let Some(m) = ws.modules.get(name) {
        return Ok(supp_module(&m.module, opts.support())?);
    }
    usage(format!("'{name}' is neither an ideal nor a module"))
}

pub fn lattice(ws: &Workspace, path: &str, names: &[String], opts: &Options) -> Out {
    if names.is_empty() {
        return usage("lattice needs at least one ideal or module name");
    }
    let gens: Vec<SpecSet> = names
        .iter()
        .map(|n| named_set(ws, n, opts))
        .collect::<Result<_, _>>()?;
    let ring = gens[0].ring().describe();
    if let Some(i) = gens.iter().position(|g| g.ring().describe() != ring) {
        return usage(format!(
            "'{}' lives in a different ring than '{}'",
            names[i], names[0]
        ));
    }
    let mut elems = sublattice(&gens, LATTICE_LIMIT)?;
    let bottom = SpecSet::empty(gens[0].ring())?;
    if !elems.iter().any(|e| e.is_empty()) {
        elems.push(bottom);
    }
    let mut labelled: Vec<(String, SpecSet)> = Vec::new();
    let mut unnamed = 0;
    for e in &elems {
        let mut label = Vec::new();
        for (n, g) in names.iter().zip(&gens) {
            if g.equals(e)? && !label.contains(n) {
                label.push(n.clone());
            }
        }
        let label = if !label.is_empty() {
            label.join(" = ")
        } else if e.is_empty() {
            "⊥".to_string()
        } else {
            unnamed += 1;
            format!("#{unnamed}")
        };
        labelled.push((label, e.clone()));
    }
    let dot = hasse_dot(&labelled)?;
    let mut closed = true;
    for a in &elems {
        for b in &elems {
            for c in [a.meet(b)?, a.join(b)?] {
                let mut found = false;
                for e in &elems {
                    if e.equals(&c)? {
                        found = true;
                        break;
                    }
                }
                closed &= found;
            }
        }
    }
    let result = json!({
        "ring": ring,
        "size": elems.len(),
        "elements": labelled
            .iter()
            .map(|(l, s)| json!({ "label": l, "set": s.to_string() }))
            .collect::<Vec<_>>(),
    });
    let inputs = base_inputs(path, opts, json!({ "names": names }));
    let mut out = report(
        "lattice",
        inputs,
        result,
        vec![Check::from_bool(
            "closed-under-meet-and-join",
            closed,
            format!("{} elements", elems.len()),
        )],
    );
    out.dot = Some(dot);
    Ok(out)
}

pub const QUILLEN_CHECKS: [&str; 3] = ["fiso", "certify", "limit"];

/// Compares a presentation's Hilbert function with the `Ext` dimensions of its group.
fn certify(name: &str, entry: &CohomologyEntry) -> Result<(Check, Value), Failure> {
    let Some(group) = &entry.group else {
        let c = Check::new(
            "presentation-certified",
            Status::Inconclusive,
            format!("'{name}' names no group to compare with"),
        );
        return Ok((c, Value::Null));
    };
    let (_, table) = ext_ring(group, CERTIFICATION_DEGREE as i32)?;
    let ext: Vec<usize> = (0..=CERTIFICATION_DEGREE as i32)
        .map(|n| table.dim(n))
        .collect();
    let hilbert = entry
        .presentation
        .ring
        .hilbert_function(CERTIFICATION_DEGREE as i32);
    let ok = ext == hilbert;
    let witness = format!(
        "Ext dims {} vs presentation {} to degree {CERTIFICATION_DEGREE}",
        dims_text(&ext),
        dims_text(&hilbert)
    );
    let detail =
        json!({ "group": group.describe(), "ext_dims": ext, "presentation_dims": hilbert });
    Ok((
        Check::from_bool("presentation-certified", ok, witness),
        detail,
    ))
}

fn certificates(cs: &[Certificate]) -> Vec<Value> {
    cs.iter()
        .map(|c| json!({ "element": c.element, "t": c.t }))
        .collect()
}

pub fn quillen(ws: &Workspace, path: &str, check: &str, name: &str, opts: &Options) -> Out {
    let inputs = base_inputs(path, opts, json!({ "check": check, "name": name }));
    match check {
        "fiso" => {
            let d = ws
                .data
                .get(name)
                .ok_or_else(|| Failure::Usage(format!("unknown datum '{name}'")))?;
            let rep = f_isomorphism_check(&d.hom, opts.degree_bound, opts.tmax)?;
            let status = match rep.verdict {
                Verdict::Pass => Status::Pass,
                Verdict::Fail => Status::Fail,
                Verdict::Inconclusive(_) => Status::Inconclusive,
            };
            let t = rep.image.iter().filter_map(|c| c.t).max().unwrap_or(0);
            let witness = match rep.verdict {
                Verdict::Fail if !rep.non_nilpotent.is_empty() => {
                    format!(
                        "kernel element not nilpotent: {}",
                        rep.non_nilpotent.join(", ")
                    )
                }
                Verdict::Fail => "some target generator has no p-power in the image".to_string(),
                Verdict::Pass => format!("kernel nilpotent, image reached with t = {t}"),
                Verdict::Inconclusive(tm) => format!("no certificate with t <= {tm}; raise --tmax"),
            };
            let mut checks = vec![Check::new("f-isomorphism", status, witness)];
            let mut cert = Value::Null;
            if let Some(entry) = ws.cohomology.get(&d.source) {
                let (c, detail) = certify(&d.source, entry)?;
                checks.push(c);
                cert = detail;
            }
            let result = json!({
                "source": d.source,
                "target": d.target,
                "map": d.hom.images().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "verdict": rep.verdict.to_string(),
                "kernel": certificates(&rep.kernel),
                "non_nilpotent": rep.non_nilpotent,
                "image": certificates(&rep.image),
                "degree_bound": rep.degree_bound,
                "t_max": rep.t_max,
                "source_certification": cert,
            });
            Ok(report("quillen", inputs, result, checks))
        }
        "certify" => {
            let entry = ws
                .cohomology
                .get(name)
                .ok_or_else(|| Failure::Usage(format!("unknown cohomology '{name}'")))?;
            let (c, detail) = certify(name, entry)?;
            let result = json!({
                "presentation": entry.presentation.ring.describe(),
                "provenance": entry.presentation.provenance.to_string(),
                "certification": detail,
            });
            Ok(report("quillen", inputs, result, vec![c]))
        }
        "limit" => {
            let fam = ws
                .families
                .get(name)
                .ok_or_else(|| Failure::Usage(format!("unknown family '{name}'")))?;
            let (p, r) = elementary_rank(ws)?;
            let mut family = restricted_family(p, &fam.u)?;
            for (label, text) in &fam.overrides {
                let ring = family.get(label).map(|f| f.ring().clone()).ok_or_else(|| {
                    Failure::Usage(format!("family has no subgroup labelled '{label}'"))
                })?;
                family.insert(label.clone(), Polynomial::parse(&ring, text)?);
            }
            let maps = elementary_family_maps(p, r)?;
            let rep = ttg_core::quillen::limit_family_check(&family, &maps)?;
            let witness = if rep.holds {
                format!("{} maps compatible", rep.checked)
            } else {
                let v: Vec<String> = rep
                    .violations
                    .iter()
                    .map(|(a, b)| format!("{a} -> {b}"))
                    .collect();
                format!("incompatible along {}", v.join(", "))
            };
            let result = json!({
                "u": fam.u.to_string(),
                "family": family.iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<BTreeMap<_, _>>(),
                "maps_checked": rep.checked,
                "violations": rep.violations.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
            });
            Ok(report(
                "quillen",
                inputs,
                result,
                vec![Check::from_bool("limit-compatibility", rep.holds, witness)],
            ))
        }
        _ => usage(format!(
            "unknown quillen check '{check}' (expected one of {})",
            QUILLEN_CHECKS.join(", ")
        )),
    }
}
