//! Canonical text for declarations; the output parses back to the same values.

use std::collections::BTreeMap;
use std::fmt::{self, Write};

use catcoh_core::abelian::{FPAbelianGroup, IntMatrix};
use catcoh_core::eqlogic::{Equation, Proof, Term};
use catcoh_core::fincat::{CCStructure, FinCategory};
use catcoh_core::natsys::NaturalSystem;

use super::theory::{is_plain_op, is_plain_sort};
use super::{CccDecl, Document, ProofDecl, TheoryDecl};

/// `[a b; c d]`.
pub fn matrix(m: &IntMatrix) -> String {
    let rows: Vec<String> =
        (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

/// `Z^r / [relation rows]`, or `Z^r` without relations.
pub fn group(g: &FPAbelianGroup) -> String {
    let rels = g.relations();
    if rels.cols() == 0 {
        format!("Z^{}", g.ngens())
    } else {
        format!("Z^{} / {}", g.ngens(), matrix(&rels.transpose()))
    }
}

fn sort(s: &str) -> String {
    if is_plain_sort(s) {
        s.to_string()
    } else {
        format!("\"{s}\"")
    }
}

fn op(s: &str) -> String {
    if is_plain_op(s) {
        s.to_string()
    } else {
        format!("\"{s}\"")
    }
}

pub fn category(name: &str, c: &FinCategory) -> String {
    let mut out = format!("category {name}\n");
    for x in c.objects() {
        let id = c.mor_name(c.id(x));
        if id != format!("id_{}", c.obj_name(x)) {
            let _ = writeln!(out, "identity {id} : {}", c.obj_name(x));
        }
    }
    let _ = write!(out, "{c}");
    out
}

pub fn structure(category: &str, c: &FinCategory, s: &CCStructure) -> String {
    let mut out = format!("structure on {category}\n");
    let o = |x| c.obj_name(x);
    let m = |f| c.mor_name(f);
    if let Some(t) = s.terminal() {
        let _ = writeln!(out, "terminal: {}", o(t));
    }
    for ((x, y), p) in s.products() {
        let _ = writeln!(out, "product {} {} = {} with p1={}, p2={}", o(x), o(y), o(p.object), m(p.p1), m(p.p2));
    }
    for ((y, z), e) in s.exponentials() {
        let _ = writeln!(out, "exp {} {} = {} with ev={}", o(y), o(z), o(e.object), m(e.ev));
    }
    out
}

/// Every group and every map that the builder would not fill in by itself.
pub fn natsys(name: &str, over: &str, d: &NaturalSystem) -> String {
    let c = d.base();
    let mut out = format!("natsys {name} over {over}\n");
    for f in c.morphisms() {
        let _ = writeln!(out, "group {} = {}", c.mor_name(f), group(d.value(f)));
    }
    let nonzero = |f| d.value(f).ngens() > 0;
    for f in c.morphisms() {
        for &a in c.hom_into(c.src(f)) {
            if !c.is_identity(a) && nonzero(f) && nonzero(c.comp(f, a)) {
                let _ = writeln!(out, "pre {} on {} = {}", c.mor_name(a), c.mor_name(f), matrix(d.pre_matrix(a, f)));
            }
        }
        for b in c.morphisms().filter(|&b| c.src(b) == c.tgt(f)) {
            if !c.is_identity(b) && nonzero(f) && nonzero(c.comp(b, f)) {
                let _ = writeln!(out, "post {} on {} = {}", c.mor_name(b), c.mor_name(f), matrix(d.post_matrix(b, f)));
            }
        }
    }
    out
}

/// How to print variables so that they read back with the same sorts.
struct Names<'a> {
    context: &'a [(String, String)],
    declared: &'a BTreeMap<String, String>,
}

impl Names<'_> {
    fn resolves(&self, name: &str) -> Option<&str> {
        match self.context.iter().find(|(n, _)| n == name) {
            Some((_, s)) => Some(s),
            None => self.declared.get(name).map(String::as_str),
        }
    }

    fn term(&self, t: &Term) -> String {
        match t {
            Term::Var { name, sort: s } => {
                if self.resolves(name) == Some(s.as_str()) {
                    name.clone()
                } else {
                    format!("{name}:{}", sort(s))
                }
            }
            Term::App { op: o, args } if args.is_empty() => {
                if self.resolves(o).is_some() || !is_plain_op(o) {
                    format!("{}()", op(o))
                } else {
                    o.clone()
                }
            }
            Term::App { op: o, args } => {
                let a: Vec<String> = args.iter().map(|x| self.term(x)).collect();
                format!("{}({})", op(o), a.join(", "))
            }
        }
    }

    fn proof(&self, p: &Proof) -> String {
        match p {
            Proof::Axiom(i) => format!("axiom({i})"),
            Proof::Refl(t) => format!("refl({})", self.term(t)),
            Proof::Sym(q) => format!("sym({})", self.proof(q)),
            Proof::Trans(q, r) => format!("trans({}, {})", self.proof(q), self.proof(r)),
            Proof::Subst(q, sigma) => {
                let mut s = format!("subst({}", self.proof(q));
                for (k, ((n, so), t)) in sigma.iter().enumerate() {
                    s.push_str(if k == 0 { "; " } else { ", " });
                    let _ = write!(s, "{n}:{} := {}", sort(so), self.term(t));
                }
                s.push(')');
                s
            }
            Proof::Cong(o, qs) => {
                let a: Vec<String> = qs.iter().map(|q| self.proof(q)).collect();
                format!("cong({}; {})", op(o), a.join(", "))
            }
        }
    }
}

fn context(ctx: &[(String, String)]) -> String {
    if ctx.is_empty() {
        return String::new();
    }
    let mut groups: Vec<(Vec<&str>, &str)> = Vec::new();
    for (n, s) in ctx {
        match groups.last_mut() {
            Some((names, gs)) if *gs == s.as_str() => names.push(n),
            _ => groups.push((vec![n.as_str()], s.as_str())),
        }
    }
    let parts: Vec<String> = groups.iter().map(|(ns, s)| format!("{} : {}", ns.join(" "), sort(s))).collect();
    format!("forall {}. ", parts.join(", "))
}

pub fn equation(e: &Equation, declared: &BTreeMap<String, String>) -> String {
    let names = Names { context: &e.context, declared };
    format!("{}{} = {}", context(&e.context), names.term(&e.lhs), names.term(&e.rhs))
}

pub fn theory(t: &TheoryDecl) -> String {
    let sig = &t.signature;
    let mut out = format!("signature {}\n", t.name);
    let sorts: Vec<String> = sig.sorts().iter().map(|s| sort(s)).collect();
    let _ = writeln!(out, "sorts: {}", sorts.join(" "));
    for o in sig.ops() {
        let args: Vec<String> = o.args.iter().map(|s| sort(s)).collect();
        let sep = if args.is_empty() { "" } else { " " };
        let _ = writeln!(out, "op {} : {}{sep}-> {}", op(&o.name), args.join(" "), sort(&o.result));
    }
    let mut by_sort: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (n, s) in &t.vars {
        by_sort.entry(s).or_default().push(n);
    }
    for (s, ns) in by_sort {
        let _ = writeln!(out, "var {} : {}", ns.join(" "), sort(s));
    }
    if !t.equations.is_empty() {
        out.push_str("equations\n");
        for e in &t.equations {
            let _ = writeln!(out, "{}", equation(e, &t.vars));
        }
    }
    out
}

pub fn proof(p: &ProofDecl, t: &TheoryDecl) -> String {
    let names = Names { context: &p.goal.context, declared: &t.vars };
    format!("proof {} for {}\ngoal {}\nby {}\n", p.name, p.theory, equation(&p.goal, &t.vars), names.proof(&p.proof))
}

pub fn ccc(d: &CccDecl) -> String {
    let mut out = format!("ccc {}\n", d.name);
    let _ = writeln!(out, "sorts: {}", d.signature.sorts.join(" "));
    for g in &d.signature.generators {
        let _ = writeln!(out, "gen {} : {} -> {}", g.name, g.src, g.tgt);
    }
    for t in &d.terms {
        let _ = writeln!(out, "term {} = {}", t.name, t.term);
    }
    out
}

/// The canonical text of a file; parsing it gives back the same declarations.
impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut blocks = Vec::new();
        for c in &self.categories {
            blocks.push(category(&c.name, &c.category));
            for s in self.structures.iter().filter(|s| s.category == c.name) {
                blocks.push(structure(&c.name, &c.category, &s.structure));
            }
            for d in self.natsys.iter().filter(|d| d.over == c.name) {
                blocks.push(natsys(&d.name, &d.over, &d.system));
            }
        }
        for t in &self.theories {
            blocks.push(theory(t));
            for p in self.proofs.iter().filter(|p| p.theory == t.name) {
                blocks.push(proof(p, t));
            }
        }
        for d in &self.cccs {
            blocks.push(ccc(d));
        }
        f.write_str(&blocks.join("\n"))
    }
}
