use ttg_core::bggdg::{
    bgg_apply, bgg_bimodule, dg_homology, ext_over_dg, exterior_algebra, phi_quasi_iso_check,
    symmetric_algebra, SemifreeModule,
};
use ttg_core::Field;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn phi_is_a_quasi_isomorphism() {
    for p in [2, 3] {
        for r in 1..=3 {
            let rep = phi_quasi_iso_check(p, r, (-(r as i32), 0)).unwrap();
            assert!(rep.passed(), "p={p} r={r}: {rep:?}");
            for (n, d) in rep.homology_b {
                assert_eq!(d, binomial(r, (-n) as usize), "p={p} r={r} degree {n}");
            }
        }
    }
}

#[test]
fn bimodule_resolves_k() {
    for p in [2, 3] {
        let f = Field::prime(p).unwrap();
        for r in 1..=3 {
            let bim = bgg_bimodule(&f, r, 6).unwrap();
            assert!(bim.actions_commute());
            let h = dg_homology(&bim.over_lambda, bim.certified).unwrap();
            assert_eq!((h.total(), h.dim(0)), (1, 1), "p={p} r={r}");
        }
    }
}

#[test]
fn bgg_sends_s_to_k() {
    for r in 1..=3 {
        let f = Field::prime(3).unwrap();
        let s = symmetric_algebra(&f, r, &vec![2; r]).unwrap();
        let img = bgg_apply(&SemifreeModule::free(&s, vec![0]).unwrap(), 6).unwrap();
        let h = dg_homology(&img.module, img.certified).unwrap();
        assert_eq!((h.total(), h.dim(0)), (1, 1), "r={r}");
    }
}

#[test]
fn ext_over_exterior_is_symmetric() {
    for p in [2, 3] {
        let f = Field::prime(p).unwrap();
        for r in 1..=3 {
            let lambda = exterior_algebra(&f, r, &vec![-1; r]).unwrap();
            let s = symmetric_algebra(&f, r, &vec![2; r]).unwrap();
            let expected: Vec<usize> = (0..=8).map(|n| s.dim(n).unwrap()).collect();
            assert_eq!(ext_over_dg(&lambda, 8).unwrap(), expected, "p={p} r={r}");
        }
    }
}
