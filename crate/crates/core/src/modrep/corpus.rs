//! Seeded random modules for property tests and the acceptance corpus.

use rand::Rng;

use super::{GroupData, GroupModule};
use crate::field::Elem;

fn random_vector<R: Rng>(rng: &mut R, p: u32, n: usize) -> Vec<Elem> {
    loop {
        let v: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

fn random_alpha<R: Rng>(rng: &mut R, group: &GroupData) -> Vec<Elem> {
    random_vector(rng, group.characteristic(), group.rank())
}

/// A nonzero module of dimension at most `max_dim` over a prime field, drawn from a mix of
/// constructions: quotients and submodules of free modules, sums and tensor products of
/// shifted cyclic modules, and the trivial module.
pub fn random_module<R: Rng>(rng: &mut R, group: &GroupData, max_dim: usize) -> GroupModule {
    let p = group.characteristic();
    let order = group.order();
    loop {
        let m = match rng.gen_range(0..7) {
            6 if max_dim >= 2 => {
                let a = random_module(rng, group, max_dim / 2);
                let b = random_module(rng, group, max_dim / 2);
                a.direct_sum(&b).unwrap()
            }
            0 => {
                let rank = rng.gen_range(1..=2);
                let free = GroupModule::free(group, rank);
                let count = rng.gen_range(1..=2);
                let vs: Vec<Vec<Elem>> = (0..count)
                    .map(|_| random_vector(rng, p, order * rank))
                    .collect();
                free.quotient(&vs)
            }
            1 => {
                let rank = rng.gen_range(1..=2);
                let free = GroupModule::free(group, rank);
                let vs: Vec<Vec<Elem>> = (0..rng.gen_range(1..=2))
                    .map(|_| random_vector(rng, p, order * rank))
                    .collect();
                free.submodule(&vs)
            }
            2 => {
                let a = GroupModule::shifted_cyclic(
                    group,
                    &random_alpha(rng, group),
                    rng.gen_range(1..=p as usize),
                )
                .unwrap();
                let b = GroupModule::shifted_cyclic(
                    group,
                    &random_alpha(rng, group),
                    rng.gen_range(1..=p as usize),
                )
                .unwrap();
                a.direct_sum(&b).unwrap()
            }
            3 => {
                let a = GroupModule::shifted_cyclic(
                    group,
                    &random_alpha(rng, group),
                    rng.gen_range(2..=p as usize),
                )
                .unwrap();
                let b = GroupModule::shifted_cyclic(
                    group,
                    &random_alpha(rng, group),
                    rng.gen_range(2..=p as usize),
                )
                .unwrap();
                a.tensor_diag(&b).unwrap()
            }
            4 => {
                // Quotient of a free module by a random vector and its radical layer.
                let free = GroupModule::free(group, 1);
                let v = random_vector(rng, p, order);
                let extra = random_vector(rng, p, order);
                free.quotient(&[v, extra])
                    .direct_sum(&GroupModule::trivial(group))
                    .unwrap()
            }
            _ => GroupModule::shifted_cyclic(
                group,
                &random_alpha(rng, group),
                rng.gen_range(1..=p as usize),
            )
            .unwrap(),
        };
        if m.dim() > 0 && m.dim() <= max_dim {
            return m;
        }
    }
}

/// `count` modules from a fixed seed.
pub fn corpus(group: &GroupData, seed: u64, count: usize, max_dim: usize) -> Vec<GroupModule> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_module(&mut rng, group, max_dim))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_bounded() {
        let g = GroupData::elementary(3, 2).unwrap();
        let a = corpus(&g, 7, 12, 12);
        let b = corpus(&g, 7, 12, 12);
        assert_eq!(a, b);
        assert!(a.iter().all(|m| m.dim() >= 1 && m.dim() <= 12));
        let a = GroupModule::free(&g, 1);
        let sub = a.submodule(&[a.nilpotent(1).column(0)]);
        assert_eq!(sub.dim(), 6);
    }
}
