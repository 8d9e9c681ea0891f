use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ttg_core::homalg::{
    koszul_ideal, supp, supp_koszul_module, supp_module, supp_module_report, GroupCohomology,
    SupportOptions, WindowedComplex,
};
use ttg_core::lattice::SpecSet;
use ttg_core::modrep::corpus::random_module;
use ttg_core::modrep::GroupData;
use ttg_core::poly::{commutative_reduction, HomogeneousIdeal, Polynomial, Ring};

const OPTS: SupportOptions = SupportOptions {
    degree_bound: 8,
    window: 3,
};

fn group(p: u32) -> GroupData {
    GroupData::elementary(p, 2).unwrap()
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

fn variety(gens: &[Polynomial]) -> SpecSet {
    let (ring, red) = commutative_reduction(gens[0].ring());
    let reduced = gens.iter().map(|g| red.apply(g)).collect();
    SpecSet::v_of(&HomogeneousIdeal::new(&ring, reduced).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn annihilator_is_monotone(p in prop::sample::select(vec![2u32, 3]), seed in any::<u64>()) {
        let g = group(p);
        let m = random_module(&mut ChaCha8Rng::seed_from_u64(seed), &g, 8);
        let small = supp_module_report(&m, SupportOptions { degree_bound: 6, window: 2 }).unwrap();
        let big = supp_module_report(&m, SupportOptions { degree_bound: 7, window: 2 }).unwrap();
        // Compared modulo odd generators, where ideal membership is defined.
        for f in big.reduced.generators() {
            prop_assert!(small.reduced.contains(f).unwrap(), "{} not in {}", f, small.reduced);
        }
    }

    #[test]
    fn suspension_keeps_support(p in prop::sample::select(vec![2u32, 3]), seed in any::<u64>(), k in -2i32..3) {
        let g = group(p);
        let m = random_module(&mut ChaCha8Rng::seed_from_u64(seed), &g, 6);
        let x = WindowedComplex::concentrated(&m, 0);
        let a = supp(&x, OPTS).unwrap();
        let b = supp(&x.suspension(k), OPTS).unwrap();
        prop_assert!(a.equals(&b).unwrap(), "{} vs {}", a, b);
    }

    #[test]
    fn sum_is_join(p in prop::sample::select(vec![2u32, 3]), seed in any::<u64>()) {
        let g = group(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m, n) = (random_module(&mut rng, &g, 6), random_module(&mut rng, &g, 6));
        let s = supp_module(&m.direct_sum(&n).unwrap(), OPTS).unwrap();
        let j = supp_module(&m, OPTS).unwrap().join(&supp_module(&n, OPTS).unwrap()).unwrap();
        prop_assert!(s.equals(&j).unwrap(), "{} vs {}", s, j);
    }

    #[test]
    fn koszul_support_is_meet(p in prop::sample::select(vec![2u32, 3]), seed in any::<u64>()) {
        let g = group(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&mut rng, &g, 6);
        let ring = GroupCohomology::shared(&g, 3).unwrap().ring().clone();
        let gens = vec![random_element(&mut rng, &ring, 2)];
        let lhs = supp_koszul_module(&m, &gens, OPTS).unwrap();
        let rhs = supp_module(&m, OPTS).unwrap().meet(&variety(&gens)).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap(), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn koszul_complexes_square_to_zero(p in prop::sample::select(vec![2u32, 3]), seed in any::<u64>()) {
        let g = group(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&mut rng, &g, 4);
        let ring = GroupCohomology::shared(&g, 3).unwrap().ring().clone();
        let degree = rng.gen_range(1..3);
        let x = koszul_ideal(&WindowedComplex::concentrated(&m, 0), &[random_element(&mut rng, &ring, degree)]).unwrap();
        for n in x.lo()..x.hi() {
            prop_assert!(x.differential(n + 1).mul(&x.differential(n)).is_zero());
        }
    }
}
