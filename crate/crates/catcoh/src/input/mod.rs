//! The line-oriented input format.
//!
//! A file is a sequence of blocks, each opened by a header line:
//!
//! ```text
//! category NAME            objects: X Y / mor f : X -> Y / compose g f = h / identity e : X
//! structure on CAT         terminal: T / product X Y = P with p1=a, p2=b / exp Y Z = E with ev=e
//! natsys NAME over CAT     group f = Z^r / [rows] / pre a on f = [..] / post b on f = [..] / constant G
//! signature NAME           sorts: S T / op f : S T -> S / var x y : S
//! equations [NAME]         forall x : S. lhs = rhs
//! proof NAME [for SIG]     goal EQUATION / have h = STEP / by STEP
//! ccc NAME                 sorts: A B / gen f : A -> B ^ A / term t = curry(ev . <f . p1, p2>)
//! ```
//!
//! `#` starts a comment. `compose g f = h` records `g . f = h`; composites
//! with identities are implicit. `exp Y Z = E` declares `E = Z^Y`.

mod cursor;
pub mod print;
pub mod surface;
mod theory;

use std::collections::BTreeMap;

use catcoh_core::abelian::{FPAbelianGroup, IntMatrix};
use catcoh_core::eqlogic::{Equation, Proof, Signature};
use catcoh_core::fincat::{CCStructure, CategoryBuilder, Exponential, FinCategory, MorId, ObjId, Product};
use catcoh_core::freeccc::{CCSignature, MorExpr};
use catcoh_core::natsys::{NatSysBuilder, NaturalSystem};

use cursor::Cursor;
pub use surface::{parse_object, parse_term};
pub use theory::ProofSource;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct CategoryDecl {
    pub name: String,
    pub line: usize,
    pub category: FinCategory,
}

#[derive(Clone, Debug)]
pub struct StructureDecl {
    pub category: String,
    pub line: usize,
    pub structure: CCStructure,
}

#[derive(Clone, Debug)]
pub struct NatSysDecl {
    pub name: String,
    pub over: String,
    pub line: usize,
    pub system: NaturalSystem,
}

#[derive(Clone, Debug)]
pub struct TheoryDecl {
    pub name: String,
    pub line: usize,
    pub signature: Signature,
    /// Default sorts of bare variable names.
    pub vars: BTreeMap<String, String>,
    pub equations: Vec<Equation>,
    pub equation_lines: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ProofDecl {
    pub name: String,
    pub theory: String,
    pub line: usize,
    pub goal: Equation,
    pub proof: Proof,
    pub source: ProofSource,
}

#[derive(Clone, Debug)]
pub struct TermDecl {
    pub name: String,
    pub line: usize,
    pub term: MorExpr,
}

#[derive(Clone, Debug)]
pub struct CccDecl {
    pub name: String,
    pub line: usize,
    pub signature: CCSignature,
    pub terms: Vec<TermDecl>,
}

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub categories: Vec<CategoryDecl>,
    pub structures: Vec<StructureDecl>,
    pub natsys: Vec<NatSysDecl>,
    pub theories: Vec<TheoryDecl>,
    pub proofs: Vec<ProofDecl>,
    pub cccs: Vec<CccDecl>,
}

impl Document {
    pub fn category(&self, name: &str) -> Option<&CategoryDecl> {
        self.categories.iter().find(|c| c.name == name)
    }

    pub fn theory(&self, name: &str) -> Option<&TheoryDecl> {
        self.theories.iter().find(|t| t.name == name)
    }

    /// The first structure declared on `category`.
    pub fn structure_on(&self, category: &str) -> Option<&StructureDecl> {
        self.structures.iter().find(|s| s.category == category)
    }
}

/// A name with the column it was read at.
type Located = (String, usize);

struct PendingCategory {
    name: String,
    line: usize,
    objects: Option<(Vec<(String, usize)>, usize)>,
    identities: Vec<(String, String, usize, usize)>,
    mors: Vec<(String, Located, Located, usize, usize)>,
    composes: Vec<([Located; 3], usize)>,
}

struct PendingNatSys {
    name: String,
    over: String,
    line: usize,
    builder: NatSysBuilder,
    constant: Option<(FPAbelianGroup, usize)>,
    explicit: Option<usize>,
}

struct PendingProof {
    name: String,
    theory: usize,
    line: usize,
    goal: Option<Equation>,
    by: Option<(Proof, ProofSource)>,
    haves: BTreeMap<String, (Proof, ProofSource)>,
}

enum Block {
    None,
    Category(PendingCategory),
    Structure(usize),
    NatSys(PendingNatSys),
    Signature(usize),
    Equations(usize),
    Proof(PendingProof),
    Ccc(usize),
}

const HEADERS: [&str; 7] = ["category", "structure", "natsys", "signature", "equations", "proof", "ccc"];

/// Parses a whole file. Category laws, functor laws and proofs are not
/// checked here; see [`crate::check`].
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut p = Parser { doc: Document::default(), block: Block::None };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut c = Cursor::new(line, i + 1);
        if c.at_end() {
            continue;
        }
        let header = HEADERS.iter().find(|h| c.clone().eat_keyword(h));
        match header {
            Some(h) => {
                p.finish()?;
                c.eat_keyword(h);
                p.header(h, &mut c)?;
            }
            None => p.body(&mut c)?,
        }
    }
    p.finish()?;
    Ok(p.doc)
}

struct Parser {
    doc: Document,
    block: Block,
}

fn lookup_mor(c: &Cursor, cat: &FinCategory, name: &str, col: usize) -> Result<MorId, ParseError> {
    cat.mor_by_name(name).ok_or_else(|| c.error_at(col, format!("unknown morphism `{name}`")))
}

fn lookup_obj(c: &Cursor, cat: &FinCategory, name: &str, col: usize) -> Result<ObjId, ParseError> {
    cat.obj_by_name(name).ok_or_else(|| c.error_at(col, format!("unknown object `{name}`")))
}

impl Parser {
    fn header(&mut self, h: &str, c: &mut Cursor) -> Result<(), ParseError> {
        let line = c.line();
        match h {
            "category" => {
                let (name, col) = c.name()?;
                c.end()?;
                if self.doc.category(&name).is_some() {
                    return Err(c.error_at(col, format!("duplicate category `{name}`")));
                }
                self.block = Block::Category(PendingCategory {
                    name,
                    line,
                    objects: None,
                    identities: Vec::new(),
                    mors: Vec::new(),
                    composes: Vec::new(),
                });
            }
            "structure" => {
                if !c.eat_keyword("on") {
                    return Err(c.error("expected `on CATEGORY`"));
                }
                let (name, col) = c.name()?;
                c.end()?;
                if self.doc.category(&name).is_none() {
                    return Err(c.error_at(col, format!("unknown category `{name}`")));
                }
                self.doc.structures.push(StructureDecl { category: name, line, structure: CCStructure::new() });
                self.block = Block::Structure(self.doc.structures.len() - 1);
            }
            "natsys" => {
                let (name, ncol) = c.name()?;
                if !c.eat_keyword("over") {
                    return Err(c.error("expected `over CATEGORY`"));
                }
                let (over, col) = c.name()?;
                c.end()?;
                if self.doc.natsys.iter().any(|d| d.name == name) {
                    return Err(c.error_at(ncol, format!("duplicate natural system `{name}`")));
                }
                let cat =
                    self.doc.category(&over).ok_or_else(|| c.error_at(col, format!("unknown category `{over}`")))?;
                let builder = NatSysBuilder::new(&cat.category);
                self.block = Block::NatSys(PendingNatSys { name, over, line, builder, constant: None, explicit: None });
            }
            "signature" => {
                let (name, col) = c.name()?;
                c.end()?;
                if self.doc.theory(&name).is_some() {
                    return Err(c.error_at(col, format!("duplicate signature `{name}`")));
                }
                self.doc.theories.push(TheoryDecl {
                    name,
                    line,
                    signature: Signature::default(),
                    vars: BTreeMap::new(),
                    equations: Vec::new(),
                    equation_lines: Vec::new(),
                });
                self.block = Block::Signature(self.doc.theories.len() - 1);
            }
            "equations" => {
                let idx = self.theory_ref(c)?;
                c.end()?;
                self.block = Block::Equations(idx);
            }
            "proof" => {
                let (name, col) = c.name()?;
                if self.doc.proofs.iter().any(|p| p.name == name) {
                    return Err(c.error_at(col, format!("duplicate proof `{name}`")));
                }
                let theory = if c.eat_keyword("for") {
                    self.theory_ref(c)?
                } else {
                    self.theory_ref(&mut Cursor::new("", line))?
                };
                c.end()?;
                self.block =
                    Block::Proof(PendingProof { name, theory, line, goal: None, by: None, haves: BTreeMap::new() });
            }
            "ccc" => {
                let (name, col) = c.name()?;
                c.end()?;
                if self.doc.cccs.iter().any(|d| d.name == name) {
                    return Err(c.error_at(col, format!("duplicate ccc `{name}`")));
                }
                self.doc.cccs.push(CccDecl { name, line, signature: CCSignature::default(), terms: Vec::new() });
                self.block = Block::Ccc(self.doc.cccs.len() - 1);
            }
            _ => unreachable!("known headers"),
        }
        Ok(())
    }

    /// A named signature, or the latest one when no name follows.
    fn theory_ref(&self, c: &mut Cursor) -> Result<usize, ParseError> {
        if c.at_end() {
            return match self.doc.theories.len() {
                0 => Err(c.error("no signature declared yet")),
                n => Ok(n - 1),
            };
        }
        let (name, col) = c.name()?;
        self.doc
            .theories
            .iter()
            .position(|t| t.name == name)
            .ok_or_else(|| c.error_at(col, format!("unknown signature `{name}`")))
    }

    fn body(&mut self, c: &mut Cursor) -> Result<(), ParseError> {
        match &mut self.block {
            Block::None => Err(c.error(format!("expected a block header ({})", HEADERS.join(", ")))),
            Block::Category(p) => category_line(p, c),
            Block::Structure(i) => {
                let decl = &self.doc.structures[*i];
                let cat = &self.doc.category(&decl.category).expect("checked at the header").category;
                let mut s = decl.structure.clone();
                structure_line(cat, &mut s, c)?;
                self.doc.structures[*i].structure = s;
                Ok(())
            }
            Block::NatSys(p) => natsys_line(p, c),
            Block::Signature(i) => signature_line(&mut self.doc.theories[*i], c),
            Block::Equations(i) => {
                let t = &mut self.doc.theories[*i];
                let e = theory::equation(c, &t.signature, &t.vars)?;
                t.equations.push(e);
                t.equation_lines.push(c.line());
                Ok(())
            }
            Block::Proof(p) => proof_line(&self.doc.theories[p.theory], p, c),
            Block::Ccc(i) => ccc_line(&mut self.doc.cccs[*i], c),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match std::mem::replace(&mut self.block, Block::None) {
            Block::Category(p) => {
                let decl = build_category(p)?;
                self.doc.categories.push(decl);
            }
            Block::NatSys(p) => {
                let at = |msg: String| ParseError { line: p.line, col: 1, message: msg };
                let system = match p.constant {
                    Some((g, _)) => NaturalSystem::constant(p.builder.base(), &g),
                    None => p.builder.build().map_err(|e| at(e.to_string()))?,
                };
                self.doc.natsys.push(NatSysDecl { name: p.name, over: p.over, line: p.line, system });
            }
            Block::Proof(p) => {
                let at = |msg: &str| ParseError { line: p.line, col: 1, message: msg.to_string() };
                let goal = p.goal.ok_or_else(|| at("proof has no `goal` line"))?;
                let (proof, source) = p.by.ok_or_else(|| at("proof has no `by` line"))?;
                let theory = self.doc.theories[p.theory].name.clone();
                self.doc.proofs.push(ProofDecl { name: p.name, theory, line: p.line, goal, proof, source });
            }
            _ => {}
        }
        Ok(())
    }
}

fn category_line(p: &mut PendingCategory, c: &mut Cursor) -> Result<(), ParseError> {
    let line = c.line();
    let (kw, col) = c.name()?;
    match kw.as_str() {
        "objects" => {
            c.expect(":")?;
            if p.objects.is_some() {
                return Err(c.error_at(col, "objects listed twice"));
            }
            let mut objs = Vec::new();
            while !c.at_end() {
                objs.push(c.name()?);
                c.eat(",");
            }
            p.objects = Some((objs, line));
        }
        "identity" => {
            let (name, ncol) = c.name()?;
            c.expect(":")?;
            let (obj, ocol) = c.name()?;
            c.end()?;
            p.identities.push((name, obj, line, ocol));
            let _ = ncol;
        }
        "mor" => {
            let (name, ncol) = c.name()?;
            c.expect(":")?;
            let s = c.name()?;
            c.expect("->")?;
            let t = c.name()?;
            c.end()?;
            p.mors.push((name, s, t, line, ncol));
        }
        "compose" => {
            let g = c.name()?;
            let f = c.name()?;
            c.expect("=")?;
            let h = c.name()?;
            c.end()?;
            p.composes.push(([g, f, h], line));
        }
        _ => return Err(c.error_at(col, format!("unknown category line `{kw}`"))),
    }
    Ok(())
}

fn build_category(p: PendingCategory) -> Result<CategoryDecl, ParseError> {
    let err = |line: usize, col: usize, message: String| ParseError { line, col, message };
    let (objs, oline) = p.objects.ok_or_else(|| err(p.line, 1, "category has no `objects:` line".into()))?;
    if objs.is_empty() {
        return Err(err(oline, 1, "category must have at least one object".into()));
    }
    let mut idnames: BTreeMap<&str, &str> = BTreeMap::new();
    for (name, obj, line, ocol) in &p.identities {
        if !objs.iter().any(|(o, _)| o == obj) {
            return Err(err(*line, *ocol, format!("unknown object `{obj}`")));
        }
        idnames.insert(obj, name);
    }
    let mut b = CategoryBuilder::new();
    for (o, col) in &objs {
        let r = match idnames.get(o.as_str()) {
            Some(id) => b.object_with_identity(o, id),
            None => b.object(o),
        };
        r.map_err(|e| err(oline, *col, e.to_string()))?;
    }
    for (name, (s, scol), (t, tcol), line, ncol) in &p.mors {
        let sx = b.obj_by_name(s).ok_or_else(|| err(*line, *scol, format!("unknown object `{s}`")))?;
        let tx = b.obj_by_name(t).ok_or_else(|| err(*line, *tcol, format!("unknown object `{t}`")))?;
        b.morphism(name, sx, tx).map_err(|e| err(*line, *ncol, e.to_string()))?;
    }
    for ([g, f, h], line) in &p.composes {
        let look = |(n, col): &(String, usize)| {
            b.mor_by_name(n).ok_or_else(|| err(*line, *col, format!("unknown morphism `{n}`")))
        };
        let (gm, fm, hm) = (look(g)?, look(f)?, look(h)?);
        b.compose(gm, fm, hm).map_err(|e| err(*line, g.1, e.to_string()))?;
    }
    let category = b.build().map_err(|e| err(p.line, 1, e.to_string()))?;
    Ok(CategoryDecl { name: p.name, line: p.line, category })
}

fn structure_line(cat: &FinCategory, s: &mut CCStructure, c: &mut Cursor) -> Result<(), ParseError> {
    let (kw, col) = c.name()?;
    let obj = |c: &mut Cursor| -> Result<ObjId, ParseError> {
        let (n, col) = c.name()?;
        lookup_obj(c, cat, &n, col)
    };
    let named = |c: &mut Cursor, key: &str| -> Result<MorId, ParseError> {
        c.ws();
        let kcol = c.col();
        let (k, _) = c.name()?;
        if k != key {
            return Err(c.error_at(kcol, format!("expected `{key}=`")));
        }
        c.expect("=")?;
        let (n, col) = c.name()?;
        lookup_mor(c, cat, &n, col)
    };
    match kw.as_str() {
        "terminal" => {
            c.expect(":")?;
            let t = obj(c)?;
            s.set_terminal(t);
        }
        "product" => {
            let (x, y) = (obj(c)?, obj(c)?);
            c.expect("=")?;
            let p = obj(c)?;
            if !c.eat_keyword("with") {
                return Err(c.error("expected `with`"));
            }
            let p1 = named(c, "p1")?;
            c.expect(",")?;
            let p2 = named(c, "p2")?;
            s.add_product(x, y, Product { object: p, p1, p2 });
        }
        "exp" => {
            let (y, z) = (obj(c)?, obj(c)?);
            c.expect("=")?;
            let e = obj(c)?;
            if !c.eat_keyword("with") {
                return Err(c.error("expected `with`"));
            }
            let ev = named(c, "ev")?;
            s.add_exponential(y, z, Exponential { object: e, ev });
        }
        _ => return Err(c.error_at(col, format!("unknown structure line `{kw}`"))),
    }
    c.end()
}

fn natsys_line(p: &mut PendingNatSys, c: &mut Cursor) -> Result<(), ParseError> {
    let (kw, col) = c.name()?;
    let cat = p.builder.base().clone();
    if kw == "constant" {
        if let Some(l) = p.explicit {
            return Err(c.error_at(col, format!("`constant` cannot be mixed with the explicit lines (line {l})")));
        }
        let g = c.group()?;
        c.end()?;
        p.constant = Some((g, c.line()));
        return Ok(());
    }
    if let Some((_, l)) = &p.constant {
        return Err(c.error_at(col, format!("natural system already given as `constant` on line {l}")));
    }
    p.explicit.get_or_insert(c.line());
    match kw.as_str() {
        "group" => {
            let (f, fcol) = c.name()?;
            let f = lookup_mor(c, &cat, &f, fcol)?;
            c.expect("=")?;
            let g = c.group()?;
            c.end()?;
            p.builder.set_value(f, g);
        }
        "pre" | "post" => {
            let (a, acol) = c.name()?;
            let a = lookup_mor(c, &cat, &a, acol)?;
            if !c.eat_keyword("on") {
                return Err(c.error("expected `on`"));
            }
            let (f, fcol) = c.name()?;
            let f = lookup_mor(c, &cat, &f, fcol)?;
            let composable = if kw == "pre" { cat.compose(f, a) } else { cat.compose(a, f) };
            let target = composable.ok_or_else(|| {
                c.error_at(acol, format!("`{}` and `{}` do not compose", cat.mor_name(a), cat.mor_name(f)))
            })?;
            let size = |m: MorId| {
                p.builder
                    .value(m)
                    .map(FPAbelianGroup::ngens)
                    .ok_or_else(|| c.error_at(fcol, format!("declare `group {}` before maps on it", cat.mor_name(m))))
            };
            let (n, m) = (size(f)?, size(target)?);
            c.expect("=")?;
            let mat: IntMatrix = c.matrix(m, n)?;
            c.end()?;
            let r = if kw == "pre" { p.builder.set_pre(a, f, mat) } else { p.builder.set_post(a, f, mat) };
            r.map_err(|e| c.error_at(acol, e.to_string()))?;
        }
        _ => return Err(c.error_at(col, format!("unknown natsys line `{kw}`"))),
    }
    Ok(())
}

fn signature_line(t: &mut TheoryDecl, c: &mut Cursor) -> Result<(), ParseError> {
    let (kw, col) = c.ident()?;
    match kw.as_str() {
        "sorts" => {
            c.expect(":")?;
            while !c.at_end() {
                c.ws();
                let scol = c.col();
                let s = theory::sort(c)?;
                t.signature.add_sort(&s).map_err(|e| c.error_at(scol, e.to_string()))?;
            }
        }
        "op" => {
            let (name, ncol) = theory::op_name(c)?;
            c.expect(":")?;
            let mut args = Vec::new();
            while !c.at("->") {
                c.ws();
                let scol = c.col();
                let s = theory::sort(c)?;
                if !t.signature.has_sort(&s) {
                    return Err(c.error_at(scol, format!("unknown sort `{s}`")));
                }
                args.push(s);
            }
            c.expect("->")?;
            c.ws();
            let rcol = c.col();
            let res = theory::sort(c)?;
            c.end()?;
            if !t.signature.has_sort(&res) {
                return Err(c.error_at(rcol, format!("unknown sort `{res}`")));
            }
            t.signature.add_op(&name, &args, &res).map_err(|e| c.error_at(ncol, e.to_string()))?;
        }
        "var" => {
            let mut names = Vec::new();
            while !c.at(":") {
                names.push(c.ident()?.0);
            }
            c.expect(":")?;
            c.ws();
            let scol = c.col();
            let s = theory::sort(c)?;
            c.end()?;
            if !t.signature.has_sort(&s) {
                return Err(c.error_at(scol, format!("unknown sort `{s}`")));
            }
            for n in names {
                t.vars.insert(n, s.clone());
            }
        }
        _ => return Err(c.error_at(col, format!("unknown signature line `{kw}`"))),
    }
    Ok(())
}

fn proof_line(t: &TheoryDecl, p: &mut PendingProof, c: &mut Cursor) -> Result<(), ParseError> {
    let (kw, col) = c.ident()?;
    match kw.as_str() {
        "goal" => {
            if p.goal.is_some() {
                return Err(c.error_at(col, "second `goal` line"));
            }
            p.goal = Some(theory::equation(c, &t.signature, &t.vars)?);
        }
        "have" | "by" => {
            let goal = p.goal.as_ref().ok_or_else(|| c.error_at(col, "`goal` must come first"))?;
            let name = if kw == "have" {
                let (n, ncol) = c.ident()?;
                if p.haves.contains_key(&n) {
                    return Err(c.error_at(ncol, format!("`{n}` already defined")));
                }
                c.expect("=")?;
                Some(n)
            } else {
                None
            };
            let reader = theory::ProofReader {
                sig: &t.signature,
                scope: theory::Scope { context: &goal.context, declared: &t.vars },
                haves: &p.haves,
            };
            let step = reader.proof(c)?;
            c.end()?;
            match name {
                Some(n) => {
                    p.haves.insert(n, step);
                }
                None if p.by.is_some() => return Err(c.error_at(col, "second `by` line")),
                None => p.by = Some(step),
            }
        }
        _ => return Err(c.error_at(col, format!("unknown proof line `{kw}`"))),
    }
    Ok(())
}

fn ccc_line(d: &mut CccDecl, c: &mut Cursor) -> Result<(), ParseError> {
    let (kw, col) = c.ident()?;
    match kw.as_str() {
        "sorts" => {
            c.expect(":")?;
            while !c.at_end() {
                let (s, scol) = c.ident()?;
                if s == "1" || d.signature.sorts.contains(&s) {
                    return Err(c.error_at(scol, format!("bad or duplicate sort `{s}`")));
                }
                d.signature.sorts.push(s);
            }
        }
        "gen" => {
            let (name, ncol) = c.ident()?;
            c.expect(":")?;
            c.ws();
            let scol = c.col();
            let src = surface::object(c)?;
            c.expect("->")?;
            let tgt = surface::object(c)?;
            c.end()?;
            for o in [&src, &tgt] {
                d.signature.check_object(o).map_err(|e| c.error_at(scol, e.to_string()))?;
            }
            if d.signature.generator(&name).is_some() {
                return Err(c.error_at(ncol, format!("duplicate generator `{name}`")));
            }
            d.signature = std::mem::take(&mut d.signature).with_generator(&name, src, tgt);
        }
        "term" => {
            let (name, ncol) = c.ident()?;
            if d.terms.iter().any(|t| t.name == name) {
                return Err(c.error_at(ncol, format!("duplicate term `{name}`")));
            }
            c.expect("=")?;
            let term = surface::term(c, &d.signature)?;
            c.end()?;
            d.terms.push(TermDecl { name, line: c.line(), term });
        }
        _ => return Err(c.error_at(col, format!("unknown ccc line `{kw}`"))),
    }
    Ok(())
}
