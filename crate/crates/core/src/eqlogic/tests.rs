use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::fincat::{bc2, boolean_square, chain3_heyting, heyting_structure};
use crate::freeccc::ObjExpr;

fn g(n: &str) -> Term {
    Term::var(n, "G")
}

fn add(a: Term, b: Term) -> Term {
    Term::app("add", vec![a, b])
}

fn zero() -> Term {
    Term::constant("zero")
}

fn one_sort(name: &str, elems: usize) -> BTreeMap<String, Vec<String>> {
    [(name.to_string(), (0..elems).map(|i| i.to_string()).collect())].into_iter().collect()
}

fn cyclic(n: usize) -> FinAlgebra {
    let p = abelian_group_presentation();
    FinAlgebra::from_fn(p.signature, one_sort("G", n), |op, a| match op {
        "zero" => 0,
        "neg" => (n - a[0]) % n,
        _ => (a[0] + a[1]) % n,
    })
    .unwrap()
}

fn sub(pairs: &[(&str, Term)]) -> Substitution {
    pairs.iter().map(|(n, t)| ((n.to_string(), "G".to_string()), t.clone())).collect()
}

#[test]
fn refl_proves_reflexivity() {
    let p = abelian_group_presentation();
    let goal = Equation::new(&p.signature, g("x"), g("x")).unwrap();
    assert!(check_proof(&p.signature, &p.equations, &Proof::Refl(g("x")), &goal).is_ok());
}

#[test]
fn hand_proof_of_unit_and_commutativity() {
    // (x + 0) + y = x + y = y + x
    let p = abelian_group_presentation();
    let step1 = Proof::cong("add", vec![Proof::Axiom(0), Proof::Refl(g("y"))]);
    let step2 = Proof::subst(Proof::Axiom(3), sub(&[("x1", g("x")), ("x2", g("y"))]));
    let proof = Proof::trans(step1, step2);
    let goal = Equation::new(&p.signature, add(add(g("x"), zero()), g("y")), add(g("y"), g("x"))).unwrap();
    check_proof(&p.signature, &p.equations, &proof, &goal).unwrap();
    // and the reverse direction by symmetry
    let rev = Equation::new(&p.signature, goal.rhs.clone(), goal.lhs.clone()).unwrap();
    check_proof(&p.signature, &p.equations, &Proof::sym(proof), &rev).unwrap();
}

#[test]
fn broken_step_reports_path() {
    let p = abelian_group_presentation();
    // trans whose children do not meet in the middle, under a sym
    let bad = Proof::sym(Proof::trans(Proof::Axiom(0), Proof::Axiom(1)));
    let goal = Equation::new(&p.signature, g("x"), g("x")).unwrap();
    let err = check_proof(&p.signature, &p.equations, &bad, &goal).unwrap_err();
    assert_eq!(err.path, vec![0]);
    assert!(err.to_string().contains("root.0"));
    // a cong with a child of the wrong sort sits at its own node
    let mut sig = Signature::new(&["A", "B"]).unwrap();
    sig.add_op("f", &["A"], "B").unwrap();
    let c = Proof::cong("f", vec![Proof::Refl(Term::var("y", "B"))]);
    let err = conclusion(&sig, &[], &Proof::sym(Proof::sym(c))).unwrap_err();
    assert_eq!(err.path, vec![0, 0]);
    // a valid proof of the wrong goal fails at the root
    let err = check_proof(&p.signature, &p.equations, &Proof::Axiom(0), &goal).unwrap_err();
    assert!(err.path.is_empty());
    assert!(conclusion(&p.signature, &p.equations, &Proof::Axiom(7)).is_err());
}

#[test]
fn subst_checks_sorts() {
    let mut sig = Signature::new(&["A", "B"]).unwrap();
    sig.add_op::<&str>("b", &[], "B").unwrap();
    let mut s = Substitution::new();
    s.insert(("x".into(), "A".into()), Term::constant("b"));
    let err = conclusion(&sig, &[], &Proof::subst(Proof::Refl(Term::var("x", "A")), s)).unwrap_err();
    assert!(err.path.is_empty());
}

#[test]
fn cyclic_groups_are_models() {
    let p = abelian_group_presentation();
    for n in 1..6 {
        let a = cyclic(n);
        assert!(p.equations.iter().all(|e| a.satisfies(e)), "Z/{n}");
    }
}

#[test]
fn left_zero_magma_is_not_commutative() {
    let p = abelian_group_presentation();
    let a = FinAlgebra::from_fn(p.signature.clone(), one_sort("G", 2), |op, a| match op {
        "add" => a[0],
        _ => 0,
    })
    .unwrap();
    let comm = &p.equations[3];
    let v = a.counterexample(comm).unwrap();
    let x1 = v[&("x1".to_string(), "G".to_string())];
    let x2 = v[&("x2".to_string(), "G".to_string())];
    assert_ne!(x1, x2);
    let refl = Equation::new(&p.signature, g("x"), g("x")).unwrap();
    assert!(a.satisfies(&refl));
}

#[test]
fn term_evaluation_in_z2() {
    let a = cyclic(2);
    let mut v = Valuation::new();
    v.insert(("x".into(), "G".into()), 1);
    v.insert(("y".into(), "G".into()), 1);
    assert_eq!(interpret_term(&a, &add(add(g("x"), g("x")), g("y")), &v).unwrap(), 1);
    assert_eq!(interpret_term(&a, &zero(), &v).unwrap(), 0);
    assert_eq!(interpret_term(&a, &g("x"), &v).unwrap(), 1);
    assert!(interpret_term(&a, &g("z"), &v).is_err());
}

#[test]
fn algebra_validation() {
    let p = abelian_group_presentation();
    let mut tables: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    tables.insert("zero".into(), vec![0]);
    tables.insert("neg".into(), vec![0, 1]);
    tables.insert("add".into(), vec![0, 1, 1]);
    assert!(FinAlgebra::new(p.signature.clone(), one_sort("G", 2), tables.clone()).is_err());
    tables.insert("add".into(), vec![0, 1, 1, 2]);
    assert!(FinAlgebra::new(p.signature.clone(), one_sort("G", 2), tables.clone()).is_err());
    tables.insert("add".into(), vec![0, 1, 1, 0]);
    assert!(FinAlgebra::new(p.signature, one_sort("G", 2), tables).is_ok());
}

#[test]
fn equation_well_formedness() {
    let p = abelian_group_presentation();
    let mut sig = p.signature.clone();
    sig.add_sort("H").unwrap();
    assert!(matches!(Equation::new(&sig, g("x"), Term::var("y", "H")), Err(EqLogicError::SideSorts(..))));
    assert!(matches!(Equation::with_context(&sig, vec![], g("x"), g("x")), Err(EqLogicError::FreeVariable(_))));
    assert!(matches!(add(g("x"), Term::var("y", "H")).sort(&sig), Err(EqLogicError::ArgumentSort { .. })));
    assert!(sig.add_op::<&str>("zero", &[], "G").is_err());
}

#[test]
fn cat_presentation_counts() {
    let p = cat_presentation(&["*"]).unwrap();
    assert_eq!((p.signature.sorts().len(), p.signature.ops().len(), p.equations.len()), (1, 2, 3));
    let p = cat_presentation(&["a", "b"]).unwrap();
    assert_eq!(p.signature.sorts().len(), 4);
    let comps = p.signature.ops().iter().filter(|o| o.name.starts_with("comp")).count();
    assert_eq!((comps, p.signature.ops().len() - comps), (8, 2));
    // 16 associativity instances and 2 identity laws per sort
    assert_eq!(p.equations.len(), 16 + 8);
}

#[test]
fn singleton_carriers_give_codiscrete_category() {
    let objs = ["a", "b", "c"];
    let p = cat_presentation(&objs).unwrap();
    let carriers = p.signature.sorts().iter().map(|s| (s.clone(), vec![String::from("m")])).collect();
    let a = FinAlgebra::from_fn(p.signature, carriers, |_, _| 0).unwrap();
    let c = algebra_to_category(&objs, &a).unwrap();
    c.validate().unwrap();
    assert_eq!(c.num_morphisms(), 9);
    assert!(c.objects().all(|x| c.objects().all(|y| c.hom(x, y).len() == 1)));
}

#[test]
fn bc2_table_gives_bc2() {
    let p = cat_presentation(&["*"]).unwrap();
    let s = hom_sort_of("*");
    let carriers = [(s, vec!["1".to_string(), "s".to_string()])].into_iter().collect();
    let a = FinAlgebra::from_fn(p.signature, carriers, |op, a| if op == "id[*]" { 0 } else { a[0] ^ a[1] }).unwrap();
    let c = algebra_to_category(&["*"], &a).unwrap();
    c.validate().unwrap();
    let b = bc2();
    assert_eq!(c.num_morphisms(), b.num_morphisms());
    let s = c.mor_by_name("s").unwrap();
    assert!(c.is_identity(c.comp(s, s)));
    // round trip through the algebra of a category
    let back = category_to_algebra(&b).unwrap();
    let p = cat_presentation(&[b.obj_name(b.objects().next().unwrap())]).unwrap();
    assert!(p.equations.iter().all(|e| back.satisfies(e)));
}

fn hom_sort_of(x: &str) -> String {
    alloc::format!("({x}, {x})")
}

#[test]
fn non_associative_table_is_rejected() {
    let p = cat_presentation(&["*"]).unwrap();
    let carriers = [(hom_sort_of("*"), vec!["e".into(), "a".into(), "b".into()])].into_iter().collect();
    // e is a two-sided unit; a.a = b, everything else lands on a
    let a = FinAlgebra::from_fn(p.signature.clone(), carriers, |op, a| {
        if op == "id[*]" {
            return 0;
        }
        match (a[0], a[1]) {
            (0, y) => y,
            (x, 0) => x,
            (1, 1) => 2,
            _ => 1,
        }
    })
    .unwrap();
    let err = algebra_to_category(&["*"], &a).unwrap_err();
    match err {
        EqLogicError::Unsatisfied { index, equation } => {
            assert_eq!(index, 0);
            assert!(equation.contains("comp"));
        }
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn category_algebras_round_trip() {
    let c = boolean_square();
    let a = category_to_algebra(&c).unwrap();
    let names: Vec<&str> = c.objects().map(|x| c.obj_name(x)).collect();
    let back = algebra_to_category(&names, &a).unwrap();
    assert_eq!(back.num_morphisms(), c.num_morphisms());
    back.validate().unwrap();
}

#[test]
fn law_presentation_small() {
    let p = law_presentation(&["X"], 1).unwrap();
    let names: Vec<&str> = p.signature.ops().iter().map(|o| o.name.as_str()).collect();
    assert!(names.contains(&"pair[X; X]"));
    assert!(names.contains(&"p1[X]"));
    assert!(names.contains(&"pair[1; 1]"));
    assert!(!names.iter().any(|n| n.starts_with("p2")));
    assert_eq!(p.signature.sorts().len(), 4);
    for e in &p.equations {
        assert_eq!(e.lhs.sort(&p.signature).unwrap(), e.rhs.sort(&p.signature).unwrap());
    }
    assert!(law_presentation(&["X"], 0).is_err());
}

#[test]
fn ccc_presentation_is_well_sorted() {
    let p = ccc_presentation(&["X"], 1).unwrap();
    // X, 1, the eight depth-one expressions over them and four evaluation domains
    assert_eq!(p.signature.sorts().len(), 14 * 14);
    for e in &p.equations {
        assert_eq!(e.lhs.sort(&p.signature).unwrap(), e.rhs.sort(&p.signature).unwrap());
    }
    let ev = p.signature.ops().iter().filter(|o| o.name.starts_with("ev[")).count();
    assert_eq!(ev, 4);
    assert!(p.signature.op("ev[X, X]").is_some());
    assert!(p.signature.op("lam[X, X, X]").is_some());
}

#[test]
fn heyting_chain_satisfies_ccc_laws() {
    let (c, s) = chain3_heyting();
    let objects: BTreeMap<String, _> = [("X".to_string(), c.obj_by_name("m").unwrap())].into_iter().collect();
    let (p, a) = ccc_algebra(&c, &s, &objects, &["X"], 1).unwrap();
    for (i, e) in p.equations.iter().enumerate() {
        assert!(a.satisfies(e), "equation {i}: {e}");
    }
    // the square as a Boolean algebra, one sort per generator
    let sq = boolean_square();
    let st = heyting_structure(&sq).unwrap();
    let names: Vec<&str> = sq.objects().map(|x| sq.obj_name(x)).collect();
    let objects: BTreeMap<String, _> = [("X".to_string(), sq.obj_by_name(names[1]).unwrap())].into_iter().collect();
    let (p, a) = ccc_algebra(&sq, &st, &objects, &["X"], 1).unwrap();
    assert!(p.equations.iter().all(|e| a.satisfies(e)));
    let _ = ObjExpr::Unit;
}
