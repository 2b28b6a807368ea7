//! Presentations of abelian groups and of categories, finite-product
//! theories and cartesian closed categories as many-sorted theories.
//!
//! The last two have infinitely many sorts; they are truncated by a bound
//! on the object expressions, and only equation instances whose terms stay
//! inside the truncation are generated.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{EqLogicError, Equation, Signature, Term};
use crate::freeccc::ObjExpr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub signature: Signature,
    pub equations: Vec<Equation>,
}

/// One sort `G`; `zero`, `neg`, `add`; unit, inverse, associativity and
/// commutativity, in that order.
pub fn abelian_group_presentation() -> Presentation {
    let mut sig = Signature::new(&["G"]).expect("one sort");
    sig.add_op::<&str>("zero", &[], "G").expect("fresh");
    sig.add_op("neg", &["G"], "G").expect("fresh");
    sig.add_op("add", &["G", "G"], "G").expect("fresh");
    let v = |n: &str| Term::var(n, "G");
    let add = |a: Term, b: Term| Term::app("add", alloc::vec![a, b]);
    let eqs = [
        (add(v("x"), Term::constant("zero")), v("x")),
        (add(v("x"), Term::app("neg", alloc::vec![v("x")])), Term::constant("zero")),
        (add(add(v("x1"), v("x2")), v("x3")), add(v("x1"), add(v("x2"), v("x3")))),
        (add(v("x1"), v("x2")), add(v("x2"), v("x1"))),
    ];
    let equations = eqs.into_iter().map(|(l, r)| Equation::new(&sig, l, r).expect("well sorted")).collect();
    Presentation { signature: sig, equations }
}

/// The sort of morphisms from `x` to `y`.
pub fn hom_sort(x: &str, y: &str) -> String {
    format!("({x}, {y})")
}

fn comp_name(x: &str, y: &str, z: &str) -> String {
    format!("comp[{x}, {y}, {z}]")
}

fn id_name(x: &str) -> String {
    format!("id[{x}]")
}

/// Category operations and laws over the given object names.
fn add_category_part(sig: &mut Signature, eqs: &mut Vec<Equation>, objects: &[String]) -> Result<(), EqLogicError> {
    for x in objects {
        for y in objects {
            sig.add_sort(&hom_sort(x, y))?;
        }
    }
    for x in objects {
        for y in objects {
            for z in objects {
                sig.add_op(&comp_name(x, y, z), &[hom_sort(y, z), hom_sort(x, y)], &hom_sort(x, z))?;
            }
        }
    }
    for x in objects {
        sig.add_op::<String>(&id_name(x), &[], &hom_sort(x, x))?;
    }
    // (x . y) . z = x . (y . z) with z : W -> X, y : X -> Y, x : Y -> Z
    for w in objects {
        for x in objects {
            for y in objects {
                for z in objects {
                    let (vx, vy, vz) = (
                        Term::var("x", &hom_sort(y, z)),
                        Term::var("y", &hom_sort(x, y)),
                        Term::var("z", &hom_sort(w, x)),
                    );
                    let l = comp(w, x, z, comp(x, y, z, vx.clone(), vy.clone()), vz.clone());
                    let r = comp(w, y, z, vx, comp(w, x, y, vy, vz));
                    eqs.push(Equation::new(sig, l, r)?);
                }
            }
        }
    }
    for x in objects {
        for y in objects {
            let f = Term::var("x", &hom_sort(x, y));
            let r = comp(x, x, y, f.clone(), Term::constant(&id_name(x)));
            eqs.push(Equation::new(sig, r, f.clone())?);
            let l = comp(x, y, y, Term::constant(&id_name(y)), f.clone());
            eqs.push(Equation::new(sig, l, f)?);
        }
    }
    Ok(())
}

fn comp(x: &str, y: &str, z: &str, g: Term, f: Term) -> Term {
    Term::app(&comp_name(x, y, z), alloc::vec![g, f])
}

/// Sorts `(X, Y)`, operations `comp[X, Y, Z]` and `id[X]`, associativity and
/// the two identity laws for every choice of objects.
pub fn cat_presentation(objects: &[&str]) -> Result<Presentation, EqLogicError> {
    if objects.is_empty() {
        return Err(EqLogicError::Algebra("no objects".into()));
    }
    let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
    let mut signature = Signature::default();
    let mut equations = Vec::new();
    add_category_part(&mut signature, &mut equations, &objects)?;
    Ok(Presentation { signature, equations })
}

/// Words over `sorts` of length at most `maxlen`, shortest first. The empty
/// word is written `1` and letters are separated by spaces.
fn words(sorts: &[&str], maxlen: usize) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = alloc::vec![Vec::new()];
    let mut layer: Vec<Vec<String>> = alloc::vec![Vec::new()];
    for _ in 0..maxlen {
        let mut next = Vec::new();
        for w in &layer {
            for s in sorts {
                let mut v = w.clone();
                v.push(s.to_string());
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn word_name(w: &[String]) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.join(" ")
    }
}

/// Finite-product theory on `sorts`, truncated to words of length at most
/// `maxlen`: the category part, tupling `pair[U; Y1 ... Yn]` and projections
/// `p<i>[X1 ... Xn]`, with the laws `p_i . <x_1, ..., x_n> = x_i`,
/// `<x_1, ..., x_n> . y = <x_1 . y, ..., x_n . y>` and `<p_1, ..., p_n> = id`.
pub fn law_presentation(sorts: &[&str], maxlen: usize) -> Result<Presentation, EqLogicError> {
    if maxlen == 0 {
        return Err(EqLogicError::Algebra("bound must be at least 1".into()));
    }
    let ws = words(sorts, maxlen);
    let names: Vec<String> = ws.iter().map(|w| word_name(w)).collect();
    let mut sig = Signature::default();
    let mut eqs = Vec::new();
    add_category_part(&mut sig, &mut eqs, &names)?;
    let pair_name = |u: &str, y: &str| format!("pair[{u}; {y}]");
    let proj_name = |i: usize, y: &str| format!("p{}[{y}]", i + 1);
    for u in &names {
        for y in &ws {
            let args: Vec<String> = y.iter().map(|s| hom_sort(u, s)).collect();
            sig.add_op(&pair_name(u, &word_name(y)), &args, &hom_sort(u, &word_name(y)))?;
        }
    }
    for y in ws.iter().filter(|y| !y.is_empty()) {
        let yn = word_name(y);
        for (i, s) in y.iter().enumerate() {
            sig.add_op::<String>(&proj_name(i, &yn), &[], &hom_sort(&yn, s))?;
        }
    }
    let xs = |u: &str, y: &[String]| -> Vec<Term> {
        y.iter().enumerate().map(|(i, s)| Term::var(&format!("x{}", i + 1), &hom_sort(u, s))).collect()
    };
    for u in &names {
        for y in ws.iter().filter(|y| !y.is_empty()) {
            let yn = word_name(y);
            let tuple = Term::app(&pair_name(u, &yn), xs(u, y));
            for (i, s) in y.iter().enumerate() {
                let l = comp(u, &yn, s, Term::constant(&proj_name(i, &yn)), tuple.clone());
                eqs.push(Equation::new(&sig, l, xs(u, y)[i].clone())?);
            }
        }
    }
    for v in &names {
        for u in &names {
            for y in &ws {
                let yn = word_name(y);
                let yv = Term::var("y", &hom_sort(v, u));
                let l = comp(v, u, &yn, Term::app(&pair_name(u, &yn), xs(u, y)), yv.clone());
                let parts = xs(u, y).into_iter().zip(y).map(|(x, s)| comp(v, u, s, x, yv.clone())).collect();
                eqs.push(Equation::new(&sig, l, Term::app(&pair_name(v, &yn), parts))?);
            }
        }
    }
    for y in &ws {
        let yn = word_name(y);
        let projs = (0..y.len()).map(|i| Term::constant(&proj_name(i, &yn))).collect();
        eqs.push(Equation::new(&sig, Term::app(&pair_name(&yn, &yn), projs), Term::constant(&id_name(&yn)))?);
    }
    Ok(Presentation { signature: sig, equations: eqs })
}

/// Object expressions over `sorts` of depth at most `maxdepth`, where sorts
/// and `1` have depth 0.
pub(crate) fn bimag_objects(sorts: &[&str], maxdepth: usize) -> Vec<ObjExpr> {
    let mut all: Vec<ObjExpr> = sorts.iter().map(|s| ObjExpr::sort(s)).collect();
    all.push(ObjExpr::Unit);
    for _ in 0..maxdepth {
        let mut next = all.clone();
        for a in &all {
            for b in &all {
                next.push(ObjExpr::prod(a.clone(), b.clone()));
                next.push(ObjExpr::exp(a.clone(), b.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        next.retain(|o| seen.insert(o.clone()));
        all = next;
    }
    all
}

/// The truncation used for the cartesian closed presentation: expressions of
/// depth at most `maxdepth`, plus `Z^Y * Y` for each `Z^Y` among them so that
/// every exponential has its evaluation map.
pub(crate) fn ccc_objects(sorts: &[&str], maxdepth: usize) -> Vec<ObjExpr> {
    let mut all = bimag_objects(sorts, maxdepth);
    let extra: Vec<ObjExpr> = all
        .iter()
        .filter_map(|o| match o {
            ObjExpr::Exp(_, y) => Some(ObjExpr::prod(o.clone(), (**y).clone())),
            _ => None,
        })
        .collect();
    for o in extra {
        if !all.contains(&o) {
            all.push(o);
        }
    }
    all
}

/// Operations of the truncated cartesian closed presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum CccOp {
    Comp(ObjExpr, ObjExpr, ObjExpr),
    Id(ObjExpr),
    Bang(ObjExpr),
    /// `Pair(w, a, b) : (W, A) x (W, B) -> (W, A * B)`.
    Pair(ObjExpr, ObjExpr, ObjExpr),
    Proj1(ObjExpr, ObjExpr),
    Proj2(ObjExpr, ObjExpr),
    /// `Ev(y, z) : 1 -> (Z^Y * Y, Z)`.
    Ev(ObjExpr, ObjExpr),
    /// `Lam(x, y, z) : (X * Y, Z) -> (X, Z^Y)`.
    Lam(ObjExpr, ObjExpr, ObjExpr),
}

/// Cartesian closed theory on `sorts`, truncated to object expressions of
/// depth at most `maxdepth` together with the domains `Z^Y * Y` of the
/// evaluation maps. On top of the category part it has `bang[W]`,
/// `pair[W; A, B]`, `p1[A, B]`, `p2[A, B]`, `ev[Y, Z]` and `lam[X, Y, Z]`,
/// with the product, terminal and exponential laws, where `f x id` stands for
/// `<f . p1, id . p2>`.
pub fn ccc_presentation(sorts: &[&str], maxdepth: usize) -> Result<Presentation, EqLogicError> {
    Ok(ccc_ops(sorts, maxdepth)?.0)
}

pub(crate) fn ccc_ops(sorts: &[&str], maxdepth: usize) -> Result<(Presentation, Vec<(String, CccOp)>), EqLogicError> {
    if maxdepth == 0 {
        return Err(EqLogicError::Algebra("bound must be at least 1".into()));
    }
    let objs = ccc_objects(sorts, maxdepth);
    let inside: BTreeSet<ObjExpr> = objs.iter().cloned().collect();
    let names: Vec<String> = objs.iter().map(|o| o.to_string()).collect();
    let mut sig = Signature::default();
    let mut eqs = Vec::new();
    add_category_part(&mut sig, &mut eqs, &names)?;
    let mut ops: Vec<(String, CccOp)> = Vec::new();
    for x in &objs {
        for y in &objs {
            for z in &objs {
                ops.push((
                    comp_name(&x.to_string(), &y.to_string(), &z.to_string()),
                    CccOp::Comp(x.clone(), y.clone(), z.clone()),
                ));
            }
        }
    }
    for x in &objs {
        ops.push((id_name(&x.to_string()), CccOp::Id(x.clone())));
    }

    let hs = |a: &ObjExpr, b: &ObjExpr| hom_sort(&a.to_string(), &b.to_string());
    let unit = ObjExpr::Unit;
    let bang = |w: &ObjExpr| format!("bang[{w}]");
    let pair = |w: &ObjExpr, a: &ObjExpr, b: &ObjExpr| format!("pair[{w}; {a}, {b}]");
    let p1 = |a: &ObjExpr, b: &ObjExpr| format!("p1[{a}, {b}]");
    let p2 = |a: &ObjExpr, b: &ObjExpr| format!("p2[{a}, {b}]");
    let ev = |y: &ObjExpr, z: &ObjExpr| format!("ev[{y}, {z}]");
    let lam = |x: &ObjExpr, y: &ObjExpr, z: &ObjExpr| format!("lam[{x}, {y}, {z}]");
    let prod = |a: &ObjExpr, b: &ObjExpr| ObjExpr::prod(a.clone(), b.clone());
    let exp = |z: &ObjExpr, y: &ObjExpr| ObjExpr::exp(z.clone(), y.clone());
    let has = |o: &ObjExpr| inside.contains(o);

    for w in &objs {
        sig.add_op::<String>(&bang(w), &[], &hs(w, &unit))?;
        ops.push((bang(w), CccOp::Bang(w.clone())));
    }
    for a in &objs {
        for b in &objs {
            let ab = prod(a, b);
            if !has(&ab) {
                continue;
            }
            sig.add_op::<String>(&p1(a, b), &[], &hs(&ab, a))?;
            ops.push((p1(a, b), CccOp::Proj1(a.clone(), b.clone())));
            sig.add_op::<String>(&p2(a, b), &[], &hs(&ab, b))?;
            ops.push((p2(a, b), CccOp::Proj2(a.clone(), b.clone())));
            for w in &objs {
                sig.add_op(&pair(w, a, b), &[hs(w, a), hs(w, b)], &hs(w, &ab))?;
                ops.push((pair(w, a, b), CccOp::Pair(w.clone(), a.clone(), b.clone())));
            }
        }
    }
    for y in &objs {
        for z in &objs {
            let zy = exp(z, y);
            if has(&zy) && has(&prod(&zy, y)) {
                sig.add_op::<String>(&ev(y, z), &[], &hs(&prod(&zy, y), z))?;
                ops.push((ev(y, z), CccOp::Ev(y.clone(), z.clone())));
            }
            if !has(&zy) {
                continue;
            }
            for x in &objs {
                let xy = prod(x, y);
                if has(&xy) {
                    sig.add_op(&lam(x, y, z), &[hs(&xy, z)], &hs(x, &zy))?;
                    ops.push((lam(x, y, z), CccOp::Lam(x.clone(), y.clone(), z.clone())));
                }
            }
        }
    }

    let cmp = |x: &ObjExpr, y: &ObjExpr, z: &ObjExpr, g: Term, f: Term| {
        comp(&x.to_string(), &y.to_string(), &z.to_string(), g, f)
    };
    let k = |n: String| Term::constant(&n);
    // bang[1] = id[1] and bang[W] . y = bang[V]
    eqs.push(Equation::new(&sig, k(bang(&unit)), k(id_name("1")))?);
    for v in &objs {
        for w in &objs {
            let y = Term::var("y", &hs(v, w));
            eqs.push(Equation::new(&sig, cmp(v, w, &unit, k(bang(w)), y), k(bang(v)))?);
        }
    }
    for a in &objs {
        for b in &objs {
            let ab = prod(a, b);
            if !has(&ab) {
                continue;
            }
            let id_pair = Term::app(&pair(&ab, a, b), alloc::vec![k(p1(a, b)), k(p2(a, b))]);
            eqs.push(Equation::new(&sig, id_pair, k(id_name(&ab.to_string())))?);
            for w in &objs {
                let (x1, x2) = (Term::var("x1", &hs(w, a)), Term::var("x2", &hs(w, b)));
                let t = Term::app(&pair(w, a, b), alloc::vec![x1.clone(), x2.clone()]);
                eqs.push(Equation::new(&sig, cmp(w, &ab, a, k(p1(a, b)), t.clone()), x1.clone())?);
                eqs.push(Equation::new(&sig, cmp(w, &ab, b, k(p2(a, b)), t.clone()), x2.clone())?);
                for v in &objs {
                    let y = Term::var("y", &hs(v, w));
                    let l = cmp(v, w, &ab, t.clone(), y.clone());
                    let r = Term::app(
                        &pair(v, a, b),
                        alloc::vec![cmp(v, w, a, x1.clone(), y.clone()), cmp(v, w, b, x2.clone(), y)],
                    );
                    eqs.push(Equation::new(&sig, l, r)?);
                }
            }
        }
    }
    for x in &objs {
        for y in &objs {
            for z in &objs {
                let (xy, zy) = (prod(x, y), exp(z, y));
                let zyy = prod(&zy, y);
                if !(has(&xy) && has(&zy) && has(&zyy)) {
                    continue;
                }
                // f x id_Y : X * Y -> A * Y for f : X -> A
                let times_id = |f: Term, a: &ObjExpr| {
                    Term::app(
                        &pair(&xy, a, y),
                        alloc::vec![
                            cmp(&xy, x, a, f, k(p1(x, y))),
                            cmp(&xy, y, y, k(id_name(&y.to_string())), k(p2(x, y))),
                        ],
                    )
                };
                let g = Term::var("g", &hs(&xy, z));
                let lg = Term::app(&lam(x, y, z), alloc::vec![g.clone()]);
                let l = cmp(&xy, &zyy, z, k(ev(y, z)), times_id(lg, &zy));
                eqs.push(Equation::new(&sig, l, g)?);
                let h = Term::var("h", &hs(x, &zy));
                let inner = cmp(&xy, &zyy, z, k(ev(y, z)), times_id(h.clone(), &zy));
                eqs.push(Equation::new(&sig, Term::app(&lam(x, y, z), alloc::vec![inner]), h)?);
            }
        }
    }
    Ok((Presentation { signature: sig, equations: eqs }, ops))
}
