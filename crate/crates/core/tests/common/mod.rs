#![allow(dead_code)]

use catcoh_core::abelian::IntMatrix;
use catcoh_core::fincat::{concrete_closure, free_category, FinCategory, MorId};
use catcoh_core::natsys::NaturalSystem;

/// Deterministic choices drawn from a proptest-generated byte tape.
pub struct Tape {
    bytes: Vec<u8>,
    pos: usize,
}

impl Tape {
    pub fn new(bytes: Vec<u8>) -> Self {
        Tape { bytes, pos: 0 }
    }

    /// A value below `n`; an exhausted tape yields zeros.
    pub fn below(&mut self, n: usize) -> usize {
        if n <= 1 {
            return 0;
        }
        let b = self.bytes.get(self.pos).copied().unwrap_or(0);
        self.pos += 1;
        b as usize % n
    }

    pub fn exhausted(&self) -> bool {
        self.pos >= self.bytes.len()
    }
}

/// A free category on a random acyclic graph with edges `e0, e1, ...` going
/// from lower to higher objects.
pub fn random_dag(t: &mut Tape, max_objects: usize, max_edges: usize) -> (FinCategory, Vec<String>) {
    let n = 2 + t.below(max_objects - 1);
    let objs: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let m = 1 + t.below(max_edges);
    let mut edges = Vec::new();
    for k in 0..m {
        let s = t.below(n - 1);
        let tg = s + 1 + t.below(n - 1 - s);
        edges.push((format!("e{k}"), objs[s].clone(), objs[tg].clone()));
    }
    let o: Vec<&str> = objs.iter().map(String::as_str).collect();
    let e: Vec<(&str, &str, &str)> = edges.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    let c = free_category(&o, &e).expect("acyclic graphs give finite free categories");
    (c, edges.into_iter().map(|e| e.0).collect())
}

/// Edge letters of a path morphism, outermost first.
pub fn path_edges(c: &FinCategory, f: MorId) -> Vec<String> {
    if c.is_identity(f) {
        return Vec::new();
    }
    c.mor_name(f).split('.').map(str::to_string).collect()
}

/// `Z/modulus` on a free category with `a^*`, `b_*` multiplication by
/// products of independent edge weights.
pub fn weighted_system(c: &FinCategory, edges: &[String], modulus: u64, t: &mut Tape) -> NaturalSystem {
    let alpha: Vec<i64> = edges.iter().map(|_| t.below(5) as i64 - 2).collect();
    let beta: Vec<i64> = edges.iter().map(|_| t.below(5) as i64 - 2).collect();
    let weight = |w: &[i64], f: MorId| -> i64 {
        path_edges(c, f).iter().map(|e| w[edges.iter().position(|x| x == e).unwrap()]).product()
    };
    let a: Vec<i64> = c.morphisms().map(|f| weight(&alpha, f)).collect();
    let b: Vec<i64> = c.morphisms().map(|f| weight(&beta, f)).collect();
    NaturalSystem::scalar(c, modulus, &a, &b).expect("scalar maps are well defined")
}

/// A category of functions between sets of size at most 3.
pub fn random_concrete(t: &mut Tape, max_morphisms: usize) -> Option<FinCategory> {
    let nsets = 1 + t.below(2);
    let sizes: Vec<usize> = (0..nsets).map(|_| 1 + t.below(3)).collect();
    let ngens = 1 + t.below(2);
    let mut gens = Vec::new();
    for _ in 0..ngens {
        let s = t.below(nsets);
        let tg = t.below(nsets);
        let tab = (0..sizes[s]).map(|_| t.below(sizes[tg])).collect();
        gens.push((s, tg, tab));
    }
    concrete_closure(&sizes, &gens, max_morphisms).ok()
}

pub fn random_matrix(t: &mut Tape, max_dim: usize, bound: i64) -> IntMatrix {
    let rows = 1 + t.below(max_dim);
    let cols = 1 + t.below(max_dim);
    IntMatrix::from_fn(rows, cols, |_, _| (t.below((2 * bound + 1) as usize) as i64 - bound).into())
}
