//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons, wall-clock limits.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ttg_core::bggdg::{
    bgg_apply, bgg_bimodule, dg_homology, ext_over_dg, exterior_algebra, phi_quasi_iso_check,
    symmetric_algebra, SemifreeModule,
};
use ttg_core::homalg::{
    ext_ring, supp_koszul_module, supp_module, AlgModule, FiniteAlgebra, GroupCohomology,
    Resolution, SupportOptions,
};
use ttg_core::lattice::SpecSet;
use ttg_core::modrep::corpus::{corpus, random_module};
use ttg_core::modrep::{frobenius_witness, GroupData, GroupModule, Subgroup};
use ttg_core::poly::{
    commutative_reduction, GradedPolyRing, HomogeneousIdeal, Polynomial, Ring, RingHom,
};
use ttg_core::quillen::{
    builtin_cohomology, elementary_subgroups, f_isomorphism_check, induction_check,
    restriction_hom, subgroup_theorem_check, Verdict,
};
use ttg_core::rankvariety::{cross_check, point_in_supp, projective_points};
use ttg_core::Field;

type Res = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Res);

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

const D10: SupportOptions = SupportOptions {
    degree_bound: 10,
    window: 3,
};

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Monomials of degree `n` in `k[eta_1..eta_r]` (p = 2) or `Λ(eta) ⊗ k[theta]` (p odd).
fn presented_count(p: u32, r: usize, n: usize) -> usize {
    if p == 2 {
        return binomial(n + r - 1, r - 1);
    }
    (0..=r.min(n))
        .filter(|j| (n - j).is_multiple_of(2))
        .map(|j| binomial(r, j) * binomial((n - j) / 2 + r - 1, r - 1))
        .sum()
}

fn criterion1() -> Res {
    let mut checked = 0;
    for (p, r) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
        let g = GroupData::elementary(p, r).map_err(err)?;
        let alg = FiniteAlgebra::group_algebra(&g);
        let res = Resolution::minimal(&alg, &AlgModule::trivial(&alg), 10).map_err(err)?;
        let betti = res.betti();
        let expected: Vec<usize> = (0..=10).map(|n| presented_count(p, r, n)).collect();
        if betti[..=10] != expected[..] {
            return Err(format!(
                "(Z/{p})^{r}: Betti {:?} vs monomials {expected:?}",
                &betti[..=10]
            ));
        }
        let ring = GroupCohomology::shared(&g, 3).map_err(err)?.ring().clone();
        if ring.hilbert_function(10) != expected {
            return Err(format!(
                "(Z/{p})^{r}: presented ring has Hilbert function {:?}",
                ring.hilbert_function(10)
            ));
        }
        checked += 1;
    }
    Ok(format!(
        "{checked} groups, Betti numbers to degree 10 equal monomial counts"
    ))
}

fn random_element(rng: &mut ChaCha8Rng, ring: &Ring, degree: i32) -> Polynomial {
    let p = ring.characteristic();
    let monos = ring.standard_monomials(degree);
    loop {
        let mut f = Polynomial::zero(ring);
        for m in &monos {
            f = f.add(&Polynomial::monomial(ring, m.clone(), rng.gen_range(0..p)));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

fn random_ideal(rng: &mut ChaCha8Rng, ring: &Ring) -> Vec<Polynomial> {
    let n = rng.gen_range(1..3);
    (0..n)
        .map(|_| {
            let d = rng.gen_range(1..3);
            random_element(rng, ring, d)
        })
        .collect()
}

fn variety(gens: &[Polynomial]) -> Result<SpecSet, String> {
    let (ring, red) = commutative_reduction(gens[0].ring());
    let reduced = gens.iter().map(|g| red.apply(g)).collect();
    SpecSet::v_of(&HomogeneousIdeal::new(&ring, reduced).map_err(err)?).map_err(err)
}

fn same(a: &SpecSet, b: &SpecSet) -> Result<bool, String> {
    Ok(a.leq(b).map_err(err)? && b.leq(a).map_err(err)?)
}

fn criterion2() -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut ideals, mut modules) = (0, 0);
    for p in [2, 3] {
        let g = GroupData::elementary(p, 2).map_err(err)?;
        let ring = GroupCohomology::shared(&g, 3).map_err(err)?.ring().clone();
        let k = GroupModule::trivial(&g);
        for _ in 0..10 {
            let a = random_ideal(&mut rng, &ring);
            let s = supp_koszul_module(&k, &a, D10).map_err(err)?;
            let v = variety(&a)?;
            if !same(&s, &v)? {
                return Err(format!("supp(kos(k, {a:?})) = {s}, V(a) = {v}"));
            }
            ideals += 1;
        }
        for _ in 0..5 {
            let x = random_module(&mut rng, &g, 8);
            let a = random_ideal(&mut rng, &ring);
            let s = supp_koszul_module(&x, &a, D10).map_err(err)?;
            let expected = supp_module(&x, D10)
                .map_err(err)?
                .meet(&variety(&a)?)
                .map_err(err)?;
            if !same(&s, &expected)? {
                return Err(format!(
                    "{}: supp(kos) = {s}, supp ∧ V(a) = {expected}",
                    x.describe()
                ));
            }
            modules += 1;
        }
    }
    Ok(format!("{ideals} ideals with supp(kos(k,a)) = V(a), {modules} modules with supp(kos(X,a)) = supp(X) ∧ V(a)"))
}

fn oracle_corpus() -> Result<Vec<GroupModule>, String> {
    let mut out = Vec::new();
    for (p, seed) in [(2, 31), (3, 32)] {
        out.extend(corpus(
            &GroupData::elementary(p, 2).map_err(err)?,
            seed,
            16,
            12,
        ));
    }
    Ok(out)
}

fn criterion3() -> Res {
    let modules = oracle_corpus()?;
    let (mut points, mut advisories) = (0, 0);
    for m in &modules {
        let cc = cross_check(m, D10, 2).map_err(err)?;
        if !cc.failures.is_empty() {
            return Err(format!(
                "{}: certified points outside the support: {:?}",
                m.describe(),
                cc.failures
            ));
        }
        points += cc.certified_points;
        advisories += cc.advisories.len();
    }
    Ok(format!(
        "{} modules, {points} certified points inside, 0 hard failures, {advisories} advisories",
        modules.len()
    ))
}

fn criterion4() -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut evaluated = 0;
    for i in 0..20 {
        let p = if i < 10 { 2 } else { 3 };
        let g = GroupData::elementary(p, 2).map_err(err)?;
        let (m, n) = (
            random_module(&mut rng, &g, 6),
            random_module(&mut rng, &g, 6),
        );
        let t = m.tensor_diag(&n).map_err(err)?;
        let (pts, _) = projective_points(&Field::new(p, 2).map_err(err)?, 2, 10_000);
        for pt in &pts {
            let lhs = point_in_supp(&t, pt).map_err(err)?;
            let rhs = point_in_supp(&m, pt).map_err(err)? && point_in_supp(&n, pt).map_err(err)?;
            if lhs != rhs {
                return Err(format!("pair {i} at {pt}: tensor {lhs}, factors {rhs}"));
            }
            evaluated += 1;
        }
    }
    Ok(format!("20 pairs, {evaluated} point evaluations agree"))
}

fn criterion5() -> Res {
    let modules = oracle_corpus()?;
    let mut checks = 0;
    for m in &modules {
        let subs = elementary_subgroups(m.group().characteristic(), 2).map_err(err)?;
        let lines: Vec<&Subgroup> = subs.iter().filter(|s| s.basis().len() == 1).collect();
        let expected_lines = if m.group().characteristic() == 2 {
            3
        } else {
            4
        };
        if lines.len() != expected_lines {
            return Err(format!("found {} order-p subgroups", lines.len()));
        }
        for h in lines {
            let rep = subgroup_theorem_check(m, h, D10).map_err(err)?;
            if !rep.equal {
                return Err(format!(
                    "{} on {}: {} vs {}",
                    m.describe(),
                    h.describe(),
                    rep.restricted,
                    rep.pulled_back
                ));
            }
            checks += 1;
        }
    }
    Ok(format!(
        "{checks} (module, subgroup) pairs with supp(X restricted) = preimage"
    ))
}

fn criterion6() -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..20 {
        let p = if i % 2 == 0 { 2 } else { 3 };
        let g = GroupData::elementary(p, 2).map_err(err)?;
        let subs: Vec<Subgroup> = elementary_subgroups(p, 2)
            .map_err(err)?
            .into_iter()
            .filter(|s| s.basis().len() == 1)
            .collect();
        let h = &subs[rng.gen_range(0..subs.len())];
        let x = random_module(&mut rng, &g, 4);
        let y = random_module(&mut rng, h.group(), 3);
        let w = frobenius_witness(&x, &y, h).map_err(err)?;
        let (src, tgt, mat) = (w.source(), w.target(), w.matrix());
        if src.dim() != tgt.dim() || mat.rank() != src.dim() {
            return Err(format!("triple {i}: witness is not invertible"));
        }
        for (a, b) in src.generators().iter().zip(tgt.generators()) {
            if mat.mul(a) != b.mul(mat) {
                return Err(format!("triple {i}: witness does not intertwine"));
            }
        }
    }
    Ok("20 triples, invertible intertwiners verified".into())
}

fn criterion7() -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checks = 0;
    for p in [2, 3] {
        for h in elementary_subgroups(p, 2)
            .map_err(err)?
            .into_iter()
            .filter(|s| s.basis().len() < 2)
        {
            for _ in 0..10 {
                let y = random_module(&mut rng, h.group(), 4);
                let rep = induction_check(&y, &h, D10).map_err(err)?;
                if !rep.equal {
                    return Err(format!(
                        "{} along {}: {} vs {}",
                        y.describe(),
                        h.describe(),
                        rep.induced,
                        rep.image
                    ));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} induced modules with supp = closed image"))
}

fn criterion8() -> Res {
    for p in [2, 3] {
        let f = Field::prime(p).map_err(err)?;
        for r in 1..=3 {
            let rep = phi_quasi_iso_check(p, r, (-(r as i32), 0)).map_err(err)?;
            let dims_ok = rep
                .homology_b
                .iter()
                .all(|&(n, d)| d == binomial(r, (-n) as usize));
            if !rep.passed() || !dims_ok {
                return Err(format!("p={p} r={r}: phi check {rep:?}"));
            }
            let bim = bgg_bimodule(&f, r, 6).map_err(err)?;
            let h = dg_homology(&bim.over_lambda, bim.certified).map_err(err)?;
            if h.total() != 1 || h.dim(0) != 1 {
                return Err(format!("p={p} r={r}: H(F_6) = {:?}", h.dims));
            }
            let lambda = exterior_algebra(&f, r, &vec![-1; r]).map_err(err)?;
            let s = symmetric_algebra(&f, r, &vec![2; r]).map_err(err)?;
            let sym: Vec<usize> = (0..=8)
                .map(|n| s.dim(n))
                .collect::<Result<_, _>>()
                .map_err(err)?;
            let ext = ext_over_dg(&lambda, 8).map_err(err)?;
            if ext != sym {
                return Err(format!("p={p} r={r}: Ext over Λ {ext:?} vs S {sym:?}"));
            }
            let img =
                bgg_apply(&SemifreeModule::free(&s, vec![0]).map_err(err)?, 6).map_err(err)?;
            let hs = dg_homology(&img.module, img.certified).map_err(err)?;
            if hs.total() != 1 {
                return Err(format!("p={p} r={r}: bgg_apply(S) homology {:?}", hs.dims));
            }
        }
    }
    Ok("p in {2,3}, r <= 3: H(B) binomial, H(F_6) = k, Ext over Λ = S to degree 8, bgg_apply(S) = k".into())
}

fn criterion9() -> Res {
    let id = restriction_hom(2, &[vec![1, 0], vec![0, 1]]).map_err(err)?;
    if f_isomorphism_check(&id.hom, 10, 3).map_err(err)?.verdict != Verdict::Pass {
        return Err("identity does not pass".into());
    }
    let f2 = Field::prime(2).map_err(err)?;
    let kx = GradedPolyRing::free(&f2, &[("x", 1)]).map_err(err)?;
    let k = GradedPolyRing::free(&f2, &[]).map_err(err)?;
    let collapse = RingHom::new(&kx, &k, vec![Polynomial::zero(&k)]).map_err(err)?;
    let rep = f_isomorphism_check(&collapse, 10, 3).map_err(err)?;
    if rep.verdict != Verdict::Fail || rep.non_nilpotent.is_empty() {
        return Err(format!("k[x] -> k: {rep:?}"));
    }
    let z4 = GradedPolyRing::new(&f2, &[("eta", 1), ("theta", 2)], &["eta^2"]).map_err(err)?;
    let z2 = builtin_cohomology(2, 1).map_err(err)?.ring;
    let res = RingHom::parse(&z4, &z2, &["0", "eta1^2"]).map_err(err)?;
    let rep = f_isomorphism_check(&res, 10, 3).map_err(err)?;
    let t = rep.image.iter().filter_map(|c| c.t).max();
    if rep.verdict != Verdict::Pass || t != Some(1) {
        return Err(format!("Z/4 datum: verdict {} with t = {t:?}", rep.verdict));
    }
    let (_, table) = ext_ring(&GroupData::new(&f2, &[4]).map_err(err)?, 8).map_err(err)?;
    let ext: Vec<usize> = (0..=8).map(|n| table.dim(n)).collect();
    if ext != z4.hilbert_function(8) || ext != vec![1; 9] {
        return Err(format!(
            "Ext over k[z]/(z^4) {ext:?} vs presentation {:?}",
            z4.hilbert_function(8)
        ));
    }
    Ok("identity passes, k[x] -> k fails F1, Z/4 -> Z/2 passes with t = 1, source certified to degree 8".into())
}

const POOL: [&str; 8] = [
    "x",
    "y",
    "z",
    "x*y",
    "x + y",
    "y*z + x^2",
    "x*z",
    "x^2 + y*z + z^2",
];

fn random_set(rng: &mut ChaCha8Rng, ring: &Ring) -> Result<SpecSet, String> {
    let comps = (0..rng.gen_range(0..3))
        .map(|_| {
            let gens: Vec<&str> = (0..rng.gen_range(1..3))
                .map(|_| POOL[rng.gen_range(0..POOL.len())])
                .collect();
            HomogeneousIdeal::parse(ring, &gens).map_err(err)
        })
        .collect::<Result<Vec<_>, _>>()?;
    SpecSet::from_components(ring, comps).map_err(err)
}

fn criterion10() -> Res {
    let ring = GradedPolyRing::free(
        &Field::prime(2).map_err(err)?,
        &[("x", 1), ("y", 1), ("z", 1)],
    )
    .map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..200 {
        let (a, b, c) = (
            random_set(&mut rng, &ring)?,
            random_set(&mut rng, &ring)?,
            random_set(&mut rng, &ring)?,
        );
        let meet = |x: &SpecSet, y: &SpecSet| x.meet(y).map_err(err);
        let join = |x: &SpecSet, y: &SpecSet| x.join(y).map_err(err);
        let eq = |x: &SpecSet, y: &SpecSet| x.equals(y).map_err(err);
        let absorption = eq(&meet(&a, &join(&a, &b)?)?, &a)? && eq(&join(&a, &meet(&a, &b)?)?, &a)?;
        let distributive = eq(
            &meet(&a, &join(&b, &c)?)?,
            &join(&meet(&a, &b)?, &meet(&a, &c)?)?,
        )?;
        let leq = a.leq(&b).map_err(err)?;
        let leq_consistent = leq == eq(&meet(&a, &b)?, &a)? && leq == eq(&join(&a, &b)?, &b)?;
        let canonical = eq(&a, &b)? == (a.to_string() == b.to_string());
        if !(absorption && distributive && leq_consistent && canonical) {
            return Err(format!(
                "triple {i} ({a}; {b}; {c}): absorption {absorption}, distributivity {distributive}, leq {leq_consistent}, canonical {canonical}"
            ));
        }
    }
    Ok("200 triples satisfy absorption, distributivity and leq-consistency".into())
}

fn criterion11() -> Res {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let ws = |f: &str| dir.join(f).to_string_lossy().into_owned();
    let (klein, plane, quillen) = (ws("klein.ttg"), ws("plane.ttg"), ws("quillen.ttg"));
    let runs: Vec<Vec<&str>> = vec![
        vec!["check", &klein],
        vec!["support", &klein, "k"],
        vec!["support", &klein, "F"],
        vec!["support", &klein, "M"],
        vec!["support", &klein, "L"],
        vec!["koszul", &klein, "M", "a"],
        vec!["restrict", &klein, "M", "H"],
        vec!["induce", &klein, "Y", "H"],
        vec!["bgg", &klein, "all"],
        vec!["lattice", &plane, "vx", "vy"],
        vec!["lattice", &klein, "k", "M", "L", "a"],
        vec!["quillen", &quillen, "fiso", "res"],
        vec!["quillen", &quillen, "fiso", "collapse"],
        vec!["quillen", &quillen, "certify", "HZ4"],
        vec!["quillen", &quillen, "limit", "u"],
        vec!["quillen", &quillen, "limit", "broken"],
    ];
    let mut dots = 0;
    for args in &runs {
        let go = || ttg_cli::run(std::iter::once("ttg").chain(args.iter().copied()));
        let (a, b) = (go(), go());
        if a.json.is_none() {
            return Err(format!("{args:?} produced no report: {}", a.stderr));
        }
        if a.json != b.json || a.dot != b.dot {
            return Err(format!("{args:?} differs between runs"));
        }
        dots += a.dot.is_some() as usize;
    }
    Ok(format!(
        "{} commands byte-identical across two runs ({dots} with DOT)",
        runs.len()
    ))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("Ext-ring dimensions", 10, criterion1),
        ("Koszul support identity", 120, criterion2),
        ("Oracle agreement", 300, criterion3),
        ("Tensor-product support", 120, criterion4),
        ("Subgroup theorem", 300, criterion5),
        ("Frobenius reciprocity", 60, criterion6),
        ("Induction support", 120, criterion7),
        ("BGG suite", 120, criterion8),
        ("F-isomorphism checker", 60, criterion9),
        ("Lattice laws", 60, criterion10),
        ("Determinism", 60, criterion11),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (tag, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {limit} s limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "{tag} criterion {} ({name}): {detail} [{:.2} s]",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
