use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{CategoryBuilder, FinCategory, MorId, ObjId};

/// The category whose objects are the morphisms of `base`; a morphism
/// `f -> g` is a pair `(a, b)` with `b . f . a = g`.
#[derive(Clone, Debug)]
pub struct FactorizationCategory {
    pub category: FinCategory,
    /// Object `i` of `category` is morphism `objects[i]` of the base.
    pub objects: Vec<MorId>,
    /// Morphism `k` of `category` is the pair `pairs[k] = (a, b)`.
    pub pairs: Vec<(MorId, MorId)>,
}

impl FactorizationCategory {
    pub fn pair(&self, m: MorId) -> (MorId, MorId) {
        self.pairs[m.0]
    }

    pub fn object_of(&self, f: MorId) -> ObjId {
        ObjId(f.0)
    }
}

pub fn factorization_category(c: &FinCategory) -> FactorizationCategory {
    let mut b = CategoryBuilder::new();
    let mut pairs = Vec::new();
    let mut index = alloc::collections::BTreeMap::new();
    for f in c.morphisms() {
        let name = c.mor_name(f);
        let (x, y) = (c.src(f), c.tgt(f));
        b.object_with_identity(name, &format!("({},{}):{}", c.mor_name(c.id(x)), c.mor_name(c.id(y)), name))
            .expect("morphism names are distinct");
        pairs.push((c.id(x), c.id(y)));
        index.insert((f, c.id(x), c.id(y)), b.id(ObjId(f.0)));
    }
    for f in c.morphisms() {
        let (x, y) = (c.src(f), c.tgt(f));
        for w in c.objects() {
            for &a in c.hom(w, x) {
                for z in c.objects() {
                    for &bm in c.hom(y, z) {
                        if c.is_identity(a) && c.is_identity(bm) {
                            continue;
                        }
                        let g = c.comp(bm, c.comp(f, a));
                        let name = format!("({},{}):{}", c.mor_name(a), c.mor_name(bm), c.mor_name(f));
                        let m = b.morphism(&name, ObjId(f.0), ObjId(g.0)).expect("names are distinct");
                        pairs.push((a, bm));
                        index.insert((f, a, bm), m);
                    }
                }
            }
        }
    }
    let sources: Vec<MorId> = {
        let mut s = vec![MorId(0); pairs.len()];
        for (&(f, _, _), &m) in &index {
            s[m.0] = f;
        }
        s
    };
    // (a', b') . (a, b) = (a . a', b' . b)
    for (k2, &(a2, b2)) in pairs.iter().enumerate() {
        for (k1, &(a1, b1)) in pairs.iter().enumerate() {
            let (m1, m2) = (MorId(k1), MorId(k2));
            let f = sources[k1];
            let g = c.comp(b1, c.comp(f, a1));
            if sources[k2] != g {
                continue;
            }
            if c.is_identity(a1) && c.is_identity(b1) || c.is_identity(a2) && c.is_identity(b2) {
                continue;
            }
            let h = index[&(f, c.comp(a1, a2), c.comp(b2, b1))];
            b.compose(m2, m1, h).expect("composite is well typed");
        }
    }
    let category = b.build().expect("factorization table is total");
    FactorizationCategory { category, objects: c.morphisms().collect(), pairs }
}

/// A composable chain `λ_1, ..., λ_n` with `tgt λ_(i+1) = src λ_i`.
///
/// For `n = 0` the chain is empty and `composite` is the identity of the object.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct NerveTuple {
    pub chain: Vec<MorId>,
    pub composite: MorId,
}

impl NerveTuple {
    pub fn degree(&self) -> usize {
        self.chain.len()
    }
}

/// All composable `n`-chains, identities included, in lexicographic order of
/// morphism ids.
pub fn nerve(c: &FinCategory, n: usize) -> Vec<NerveTuple> {
    nerve_filtered(c, n, false)
}

/// Chains in which no entry is an identity; degree 0 is unchanged.
pub fn nerve_normalized(c: &FinCategory, n: usize) -> Vec<NerveTuple> {
    nerve_filtered(c, n, true)
}

fn nerve_filtered(c: &FinCategory, n: usize, skip_ids: bool) -> Vec<NerveTuple> {
    if n == 0 {
        return c.objects().map(|x| NerveTuple { chain: Vec::new(), composite: c.id(x) }).collect();
    }
    let usable = |f: MorId| !(skip_ids && c.is_identity(f));
    let mut out: Vec<NerveTuple> =
        c.morphisms().filter(|&f| usable(f)).map(|f| NerveTuple { chain: vec![f], composite: f }).collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for t in &out {
            let last = *t.chain.last().expect("nonempty chain");
            for &f in c.hom_into(c.src(last)) {
                if !usable(f) {
                    continue;
                }
                let mut chain = t.chain.clone();
                chain.push(f);
                next.push(NerveTuple { chain, composite: c.comp(t.composite, f) });
            }
        }
        out = next;
    }
    out
}

/// `|N_n|` by the transfer-matrix recurrence, without enumerating; saturates
/// at `u128::MAX`.
pub fn nerve_count(c: &FinCategory, n: usize, normalized: bool) -> u128 {
    let k = c.num_objects();
    if n == 0 {
        return k as u128;
    }
    let mut m = vec![0u128; k * k];
    for f in c.morphisms() {
        if normalized && c.is_identity(f) {
            continue;
        }
        m[c.src(f).0 * k + c.tgt(f).0] += 1;
    }
    // paths[x] = number of chains of the current length starting at x
    let mut paths = vec![1u128; k];
    for _ in 0..n {
        let mut next = vec![0u128; k];
        for x in 0..k {
            for y in 0..k {
                let step = m[x * k + y].saturating_mul(paths[y]);
                next[x] = next[x].saturating_add(step);
            }
        }
        paths = next;
    }
    paths.into_iter().fold(0u128, |a, b| a.saturating_add(b))
}
