//! Seeded random instances for property tests and the `generate` command.

use catcoh_core::abelian::{FPAbelianGroup, IntMatrix};
use catcoh_core::fincat::{concrete_closure, free_category, FinCategory, MorId};
use catcoh_core::natsys::NaturalSystem;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20240611;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The free category on a random acyclic graph with `2..=max_objects`
/// objects `x0, x1, ...` and `1..=max_arrows` edges `e0, e1, ...`, each going
/// from a lower to a higher object. Returns the category and its edges.
pub fn dag(rng: &mut impl Rng, max_objects: usize, max_arrows: usize) -> (FinCategory, Vec<MorId>) {
    let n = rng.gen_range(2..=max_objects.max(2));
    let m = rng.gen_range(1..=max_arrows.max(1));
    let objs: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let edges: Vec<(String, usize, usize)> = (0..m)
        .map(|k| {
            let s = rng.gen_range(0..n - 1);
            let t = rng.gen_range(s + 1..n);
            (format!("e{k}"), s, t)
        })
        .collect();
    let o: Vec<&str> = objs.iter().map(String::as_str).collect();
    let e: Vec<(&str, &str, &str)> = edges.iter().map(|(n, s, t)| (n.as_str(), o[*s], o[*t])).collect();
    let c = free_category(&o, &e).expect("acyclic graphs have finite free categories");
    let gens = edges.iter().map(|(n, _, _)| c.mor_by_name(n).expect("edge is a morphism")).collect();
    (c, gens)
}

/// `Z/modulus` everywhere, with `a^*` and `b_*` multiplication by products of
/// per-edge weights. Weights are multiplicative along paths, so this is a
/// natural system on any free category.
pub fn weighted_system(rng: &mut impl Rng, c: &FinCategory, edges: &[MorId], modulus: u64) -> NaturalSystem {
    let alpha: Vec<i64> = edges.iter().map(|_| rng.gen_range(-2..=2)).collect();
    let beta: Vec<i64> = edges.iter().map(|_| rng.gen_range(-2..=2)).collect();
    let weight = |w: &[i64], f: MorId| -> i64 {
        if c.is_identity(f) {
            return 1;
        }
        c.mor_name(f)
            .split('.')
            .map(|e| {
                let k = edges.iter().position(|&g| c.mor_name(g) == e).expect("paths are made of edges");
                w[k]
            })
            .product()
    };
    let a: Vec<i64> = c.morphisms().map(|f| weight(&alpha, f)).collect();
    let b: Vec<i64> = c.morphisms().map(|f| weight(&beta, f)).collect();
    NaturalSystem::scalar(c, modulus, &a, &b).expect("multiplicative weights give a natural system")
}

/// A category of functions between at most `max_objects` sets of size at
/// most 3, generated by one or two random functions, with at most
/// `max_morphisms` morphisms. Retries until the bound holds.
pub fn concrete(rng: &mut impl Rng, max_objects: usize, max_morphisms: usize) -> FinCategory {
    loop {
        let nsets = rng.gen_range(1..=max_objects.max(1));
        let sizes: Vec<usize> = (0..nsets).map(|_| rng.gen_range(1..=3)).collect();
        let ngens = rng.gen_range(1..=2);
        let gens: Vec<(usize, usize, Vec<usize>)> = (0..ngens)
            .map(|_| {
                let s = rng.gen_range(0..nsets);
                let t = rng.gen_range(0..nsets);
                let table = (0..sizes[s]).map(|_| rng.gen_range(0..sizes[t])).collect();
                (s, t, table)
            })
            .collect();
        if let Ok(c) = concrete_closure(&sizes, &gens, max_morphisms) {
            return c;
        }
    }
}

/// The constant system on a cyclic group of order in `2..=max_order`.
pub fn constant_cyclic(rng: &mut impl Rng, c: &FinCategory, max_order: u64) -> NaturalSystem {
    let m = rng.gen_range(2..=max_order.max(2));
    NaturalSystem::constant(c, &FPAbelianGroup::cyclic(m))
}

/// A matrix of shape at most `max_dim x max_dim` with entries in `-bound..=bound`,
/// biased towards small and repeated entries so that torsion shows up.
pub fn matrix(rng: &mut impl Rng, max_dim: usize, bound: i64) -> IntMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let palette: Vec<i64> = (0..4).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntMatrix::from_fn(rows, cols, |_, _| {
        if rng.gen_bool(0.3) {
            (*palette.choose(rng).expect("nonempty")).into()
        } else {
            rng.gen_range(-bound..=bound).into()
        }
    })
}
