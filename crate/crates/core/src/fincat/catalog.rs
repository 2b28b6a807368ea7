//! Small categories used throughout the tests and the command-line examples.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{CCStructure, CategoryBuilder, CategoryError, Exponential, FinCategory, FinFunctor, MorId, ObjId, Product};

/// One object, one morphism.
pub fn terminal_category() -> FinCategory {
    let mut b = CategoryBuilder::new();
    b.object("*").expect("fresh");
    b.build().expect("valid")
}

/// A group as a one-object category on `*`. Element `0` is the identity and
/// `mul(i, j)` is the index of `i . j`.
pub fn group_category(names: &[&str], mul: impl Fn(usize, usize) -> usize) -> Result<FinCategory, CategoryError> {
    let mut b = CategoryBuilder::new();
    let star = b.object_with_identity("*", names.first().copied().unwrap_or("id_*"))?;
    let mut ids = vec![b.id(star)];
    for n in &names[1..] {
        ids.push(b.morphism(n, star, star)?);
    }
    for i in 1..names.len() {
        for j in 1..names.len() {
            b.compose(ids[i], ids[j], ids[mul(i, j)])?;
        }
    }
    b.build()
}

/// The cyclic group of order `n` with generator `gen`; `gen^k` is named `gen<k>`.
pub fn cyclic_group(n: usize, gen: &str) -> FinCategory {
    let mut names = vec![String::from("id_*")];
    for k in 1..n {
        names.push(if k == 1 { String::from(gen) } else { format!("{gen}{k}") });
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    group_category(&refs, |i, j| (i + j) % n).expect("cyclic table is valid")
}

/// The group of order two, with generator `s`.
pub fn bc2() -> FinCategory {
    cyclic_group(2, "s")
}

/// Objects `0`, `1` and a single arrow `f : 0 -> 1`.
pub fn arrow() -> FinCategory {
    let mut b = CategoryBuilder::new();
    let x = b.object("0").expect("fresh");
    let y = b.object("1").expect("fresh");
    b.morphism("f", x, y).expect("fresh");
    b.build().expect("valid")
}

/// The preorder on `names` given by `leq`; `x <= y` is named `x_y`.
///
/// `leq` must be reflexive and transitive.
pub fn poset(names: &[&str], leq: impl Fn(usize, usize) -> bool) -> Result<FinCategory, CategoryError> {
    let mut b = CategoryBuilder::new();
    let objs: Vec<ObjId> = names.iter().map(|n| b.object(n)).collect::<Result<_, _>>()?;
    let n = names.len();
    let mut mor = BTreeMap::new();
    for i in 0..n {
        mor.insert((i, i), b.id(objs[i]));
        for j in 0..n {
            if i != j && leq(i, j) {
                let m = b.morphism(&format!("{}_{}", names[i], names[j]), objs[i], objs[j])?;
                mor.insert((i, j), m);
            }
        }
    }
    for (&(j, k), &g) in &mor {
        for (&(i, j2), &f) in &mor {
            if j2 != j || i == j || j == k {
                continue;
            }
            let h = *mor.get(&(i, k)).ok_or_else(|| CategoryError::MissingComposite {
                g: String::from(names[j]),
                f: String::from(names[i]),
            })?;
            b.compose(g, f, h)?;
        }
    }
    b.build()
}

/// The chain `0 <= 1 <= ... <= n-1` with objects named by their index.
pub fn chain(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(|i| format!("{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    poset(&refs, |i, j| i <= j).expect("chain is a poset")
}

/// The three-element chain `0 <= m <= 1`.
pub fn chain3() -> FinCategory {
    poset(&["0", "m", "1"], |i, j| i <= j).expect("chain is a poset")
}

/// The Boolean algebra `0 <= a, b <= 1` with `a`, `b` incomparable.
pub fn boolean_square() -> FinCategory {
    // 0, a, b, 1
    poset(&["0", "a", "b", "1"], |i, j| i == j || i == 0 || j == 3).expect("valid poset")
}

/// The full cartesian closed structure of a preorder: top, meets and
/// implications, if all of them exist.
pub fn heyting_structure(c: &FinCategory) -> Option<CCStructure> {
    let le = |x: ObjId, y: ObjId| !c.hom(x, y).is_empty();
    let objs: Vec<ObjId> = c.objects().collect();
    let greatest =
        |cands: Vec<ObjId>| -> Option<ObjId> { cands.iter().copied().find(|&g| cands.iter().all(|&x| le(x, g))) };
    let top = greatest(objs.clone())?;
    let mut s = CCStructure::new();
    s.set_terminal(top);
    for &x in &objs {
        for &y in &objs {
            let m = greatest(objs.iter().copied().filter(|&w| le(w, x) && le(w, y)).collect())?;
            s.add_product(x, y, Product { object: m, p1: c.hom(m, x)[0], p2: c.hom(m, y)[0] });
        }
    }
    for &y in &objs {
        for &z in &objs {
            let meet = |w: ObjId| s.product(w, y).expect("all meets recorded").object;
            let e = greatest(objs.iter().copied().filter(|&w| le(meet(w), z)).collect())?;
            let ev = c.hom(meet(e), z)[0];
            s.add_exponential(y, z, Exponential { object: e, ev });
        }
    }
    Some(s)
}

/// The chain `0 <= m <= 1` with meets and Heyting implication.
pub fn chain3_heyting() -> (FinCategory, CCStructure) {
    let c = chain3();
    let s = heyting_structure(&c).expect("a chain is a Heyting algebra");
    (c, s)
}

/// The free category on a finite acyclic graph: morphisms are paths, a path
/// `e_n ... e_1` is named `e_n.....e_1`.
pub fn free_category(objects: &[&str], edges: &[(&str, &str, &str)]) -> Result<FinCategory, CategoryError> {
    const MAX_PATHS: usize = 4096;
    let mut b = CategoryBuilder::new();
    let objs: Vec<ObjId> = objects.iter().map(|n| b.object(n)).collect::<Result<_, _>>()?;
    let obj = |n: &str| {
        objects
            .iter()
            .position(|o| *o == n)
            .map(|i| objs[i])
            .ok_or_else(|| CategoryError::UnknownObject(String::from(n)))
    };
    let mut edge_ends = Vec::new();
    for &(_, s, t) in edges {
        edge_ends.push((obj(s)?, obj(t)?));
    }
    // paths as edge index lists, first edge applied first
    let mut paths: Vec<Vec<usize>> = (0..edges.len()).map(|e| vec![e]).collect();
    let mut frontier = paths.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let end = edge_ends[*p.last().expect("nonempty")].1;
            for (e, &(s, _)) in edge_ends.iter().enumerate() {
                if s == end {
                    let mut q = p.clone();
                    q.push(e);
                    next.push(q);
                }
            }
        }
        paths.extend(next.iter().cloned());
        if paths.len() > MAX_PATHS {
            return Err(CategoryError::TooLarge(paths.len()));
        }
        frontier = next;
    }
    let mut ids = BTreeMap::new();
    for p in &paths {
        let label: Vec<&str> = p.iter().rev().map(|&e| edges[e].0).collect();
        let m = b.morphism(&label.join("."), edge_ends[p[0]].0, edge_ends[*p.last().expect("nonempty")].1)?;
        ids.insert(p.clone(), m);
    }
    for (p, &f) in &ids {
        for (q, &g) in &ids {
            if edge_ends[*p.last().expect("nonempty")].1 == edge_ends[q[0]].0 {
                let mut pq = p.clone();
                pq.extend_from_slice(q);
                b.compose(g, f, ids[&pq])?;
            }
        }
    }
    b.build()
}

/// The group of order two on two isomorphic objects `*` and `*'`.
///
/// Hom-sets all have two elements `(x, y, k)` with `k` in `Z/2`, composing by
/// addition. Returns the category with the inclusion of [`bc2`] at `*` and
/// the collapse onto [`bc2`].
pub fn bc2_with_clone() -> (FinCategory, FinFunctor, FinFunctor) {
    let mut b = CategoryBuilder::new();
    let objs = [b.object("*").expect("fresh"), b.object("*'").expect("fresh")];
    let names = [["s", "s'"], ["i", "j"]];
    // table[(x, y, k)] = morphism
    let mut table = BTreeMap::new();
    for x in 0..2 {
        for y in 0..2 {
            for k in 0..2 {
                let m = if x == y {
                    if k == 0 {
                        b.id(objs[x])
                    } else {
                        b.morphism(names[0][x], objs[x], objs[y]).expect("fresh")
                    }
                } else {
                    let base = names[1][x];
                    let n = if k == 0 { String::from(base) } else { format!("{base}s") };
                    b.morphism(&n, objs[x], objs[y]).expect("fresh")
                };
                table.insert((x, y, k), m);
            }
        }
    }
    for (&(y, z, k2), &g) in &table {
        for (&(x, y2, k1), &f) in &table {
            if y2 == y {
                b.compose(g, f, table[&(x, z, (k1 + k2) % 2)]).expect("well typed");
            }
        }
    }
    let clone = b.build().expect("valid");
    let base = bc2();
    let s = base.mor_by_name("s").expect("bc2 has s");
    let incl = FinFunctor::new(base.clone(), clone.clone(), vec![ObjId(0)], vec![table[&(0, 0, 0)], table[&(0, 0, 1)]])
        .expect("inclusion is a functor");
    let mut mor_map = vec![MorId(0); clone.num_morphisms()];
    for (&(_, _, k), &m) in &table {
        mor_map[m.0] = if k == 0 { base.id(ObjId(0)) } else { s };
    }
    let collapse =
        FinFunctor::new(clone.clone(), base, vec![ObjId(0), ObjId(0)], mor_map).expect("collapse is a functor");
    (clone, incl, collapse)
}

/// A concrete category: objects are the sets `{0..n_i}` and morphisms are all
/// composites of the given functions `(src, tgt, table)`, deduplicated.
pub fn concrete_closure(
    set_sizes: &[usize],
    generators: &[(usize, usize, Vec<usize>)],
    max_morphisms: usize,
) -> Result<FinCategory, CategoryError> {
    type Func = (usize, usize, Vec<usize>);
    let mut funcs: Vec<Func> = (0..set_sizes.len()).map(|i| (i, i, (0..set_sizes[i]).collect())).collect();
    let mut index: BTreeMap<Func, usize> = funcs.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    for g in generators {
        let (s, t, tab) = g;
        if *s >= set_sizes.len()
            || *t >= set_sizes.len()
            || tab.len() != set_sizes[*s]
            || tab.iter().any(|&v| v >= set_sizes[*t])
        {
            return Err(CategoryError::UnknownMorphism(format!("generator {s}->{t}")));
        }
        if !index.contains_key(g) {
            index.insert(g.clone(), funcs.len());
            funcs.push(g.clone());
        }
    }
    let mut done = 0;
    loop {
        let n = funcs.len();
        if done == n {
            break;
        }
        for i in 0..n {
            for j in 0..n {
                if i < done && j < done {
                    continue;
                }
                let (fs, ft, ftab) = &funcs[j];
                let (gs, gt, gtab) = &funcs[i];
                if ft != gs {
                    continue;
                }
                let comp: Func = (*fs, *gt, ftab.iter().map(|&v| gtab[v]).collect());
                if !index.contains_key(&comp) {
                    index.insert(comp.clone(), funcs.len());
                    funcs.push(comp);
                    if funcs.len() > max_morphisms {
                        return Err(CategoryError::TooLarge(funcs.len()));
                    }
                }
            }
        }
        done = n;
    }
    let mut b = CategoryBuilder::new();
    let objs: Vec<ObjId> = (0..set_sizes.len()).map(|i| b.object(&format!("S{i}"))).collect::<Result<_, _>>()?;
    let mut ids = Vec::with_capacity(funcs.len());
    for (k, (s, t, _)) in funcs.iter().enumerate() {
        if k < set_sizes.len() {
            ids.push(b.id(objs[k]));
        } else {
            ids.push(b.morphism(&format!("m{k}"), objs[*s], objs[*t])?);
        }
    }
    for (i, (gs, gt, gtab)) in funcs.iter().enumerate() {
        for (j, (fs, ft, ftab)) in funcs.iter().enumerate() {
            if ft == gs && i >= set_sizes.len() && j >= set_sizes.len() {
                let comp: Func = (*fs, *gt, ftab.iter().map(|&v| gtab[v]).collect());
                b.compose(ids[i], ids[j], ids[index[&comp]])?;
            }
        }
    }
    b.build()
}
