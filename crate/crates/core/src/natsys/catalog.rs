//! Small natural systems with cartesian closed structure, used as fixtures
//! and as CLI examples.

use crate::abelian::{FPAbelianGroup, Int, IntMatrix};
use crate::fincat::{boolean_square, chain3, CCStructure, Exponential, FinCategory, MorId, ObjId, Product};

use super::NaturalSystem;

fn m(c: &FinCategory, n: &str) -> MorId {
    c.mor_by_name(n).expect("catalog name")
}

fn o(c: &FinCategory, n: &str) -> ObjId {
    c.obj_by_name(n).expect("catalog name")
}

/// On the chain, `D_f = Z/2` unless `f` ends at the top, with terminal `1`,
/// products `X x 1 = X` and exponentials `Z^1 = Z`.
pub fn chain_top_system() -> (FinCategory, NaturalSystem, CCStructure) {
    let c = chain3();
    let top = o(&c, "1");
    let d = NaturalSystem::from_fn(
        &c,
        |f| if c.tgt(f) == top { FPAbelianGroup::zero() } else { FPAbelianGroup::cyclic(2) },
        |_, f| if c.tgt(f) == top { IntMatrix::zeros(0, 0) } else { IntMatrix::identity(1) },
        |b, f| {
            let r = usize::from(c.tgt(b) != top);
            IntMatrix::from_fn(r, usize::from(c.tgt(f) != top), |_, _| Int::from(1))
        },
    )
    .unwrap();
    let mut s = CCStructure::new();
    s.set_terminal(top);
    for x in c.objects() {
        let bang = c.hom(x, top)[0];
        s.add_product(x, top, Product { object: x, p1: c.id(x), p2: bang });
        s.add_exponential(top, x, Exponential { object: x, ev: c.id(x) });
    }
    (c, d, s)
}

/// The Boolean square with `D = Z/4` on `id_0`, `0_b`, `id_b` and zero
/// elsewhere; `(0_b)^* : D_(id_b) -> D_(0_b)` is multiplication by 2.
pub fn square_counterexample() -> (FinCategory, NaturalSystem, CCStructure) {
    let c = boolean_square();
    let live = [m(&c, "id_0"), m(&c, "0_b"), m(&c, "id_b")];
    let bad = (m(&c, "0_b"), m(&c, "id_b"));
    let g = |f: MorId| if live.contains(&f) { FPAbelianGroup::cyclic(4) } else { FPAbelianGroup::zero() };
    let k = |f: MorId| usize::from(live.contains(&f));
    let d = NaturalSystem::from_fn(
        &c,
        g,
        |a, f| {
            let v = if (a, f) == bad { 2 } else { 1 };
            IntMatrix::from_fn(k(c.comp(f, a)), k(f), |_, _| Int::from(v))
        },
        |b, f| IntMatrix::from_fn(k(c.comp(b, f)), k(f), |_, _| Int::from(1)),
    )
    .unwrap();
    let (zero, a, b, one) = (o(&c, "0"), o(&c, "a"), o(&c, "b"), o(&c, "1"));
    let mut s = CCStructure::new();
    s.set_terminal(one);
    s.add_product(b, a, Product { object: zero, p1: m(&c, "0_b"), p2: m(&c, "0_a") });
    s.add_product(zero, a, Product { object: zero, p1: c.id(zero), p2: m(&c, "0_a") });
    s.add_exponential(a, b, Exponential { object: b, ev: m(&c, "0_b") });
    (c, d, s)
}
