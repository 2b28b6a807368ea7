//! Objects and morphism terms of free cartesian closed categories.
//!
//! Annotations on `id`, `bang`, `p1`, `p2` and `ev` may be left out; they
//! are reconstructed by unification against the generator types.

use catcoh_core::freeccc::{CCSignature, MorExpr, ObjExpr};

use super::cursor::Cursor;
use super::ParseError;

pub(crate) fn object(c: &mut Cursor) -> Result<ObjExpr, ParseError> {
    let mut o = power(c)?;
    while c.eat("*") {
        o = ObjExpr::prod(o, power(c)?);
    }
    Ok(o)
}

// `^` is right associative and binds tighter than `*`.
fn power(c: &mut Cursor) -> Result<ObjExpr, ParseError> {
    let base = atom(c)?;
    if c.eat("^") {
        Ok(ObjExpr::exp(base, power(c)?))
    } else {
        Ok(base)
    }
}

fn atom(c: &mut Cursor) -> Result<ObjExpr, ParseError> {
    if c.eat("(") {
        let o = object(c)?;
        c.expect(")")?;
        return Ok(o);
    }
    let (w, _) = c.ident()?;
    Ok(if w == "1" { ObjExpr::Unit } else { ObjExpr::Sort(w) })
}

/// A type expression with unknowns.
#[derive(Clone, Debug, PartialEq)]
enum Ty {
    Meta(usize),
    Sort(String),
    Unit,
    Prod(Box<Ty>, Box<Ty>),
    Exp(Box<Ty>, Box<Ty>),
}

impl From<&ObjExpr> for Ty {
    fn from(o: &ObjExpr) -> Self {
        match o {
            ObjExpr::Sort(s) => Ty::Sort(s.clone()),
            ObjExpr::Unit => Ty::Unit,
            ObjExpr::Prod(a, b) => Ty::Prod(Box::new((&**a).into()), Box::new((&**b).into())),
            ObjExpr::Exp(z, y) => Ty::Exp(Box::new((&**z).into()), Box::new((&**y).into())),
        }
    }
}

fn prod(a: Ty, b: Ty) -> Ty {
    Ty::Prod(Box::new(a), Box::new(b))
}

fn exp(z: Ty, y: Ty) -> Ty {
    Ty::Exp(Box::new(z), Box::new(y))
}

#[derive(Debug)]
enum Node {
    Gen(String),
    Id(Ty),
    Bang(Ty),
    P1(Ty, Ty),
    P2(Ty, Ty),
    Ev(Ty, Ty),
    Comp(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Curry(Box<Term>),
}

#[derive(Debug)]
struct Term {
    node: Node,
    col: usize,
    src: Ty,
    tgt: Ty,
}

struct Infer<'s> {
    sig: &'s CCSignature,
    subst: Vec<Option<Ty>>,
}

impl Infer<'_> {
    fn fresh(&mut self) -> Ty {
        self.subst.push(None);
        Ty::Meta(self.subst.len() - 1)
    }

    fn walk(&self, t: &Ty) -> Ty {
        match t {
            Ty::Meta(m) => match &self.subst[*m] {
                Some(u) => self.walk(u),
                None => t.clone(),
            },
            Ty::Prod(a, b) => prod(self.walk(a), self.walk(b)),
            Ty::Exp(z, y) => exp(self.walk(z), self.walk(y)),
            _ => t.clone(),
        }
    }

    fn occurs(&self, m: usize, t: &Ty) -> bool {
        match self.walk(t) {
            Ty::Meta(k) => k == m,
            Ty::Prod(a, b) | Ty::Exp(a, b) => self.occurs(m, &a) || self.occurs(m, &b),
            _ => false,
        }
    }

    fn unify(&mut self, a: &Ty, b: &Ty) -> bool {
        match (self.walk(a), self.walk(b)) {
            (Ty::Meta(m), Ty::Meta(k)) if m == k => true,
            (Ty::Meta(m), t) | (t, Ty::Meta(m)) => {
                if self.occurs(m, &t) {
                    return false;
                }
                self.subst[m] = Some(t);
                true
            }
            (Ty::Sort(x), Ty::Sort(y)) => x == y,
            (Ty::Unit, Ty::Unit) => true,
            (Ty::Prod(a1, b1), Ty::Prod(a2, b2)) | (Ty::Exp(a1, b1), Ty::Exp(a2, b2)) => {
                self.unify(&a1, &a2) && self.unify(&b1, &b2)
            }
            _ => false,
        }
    }

    fn show(&self, t: &Ty) -> String {
        match self.walk(t) {
            Ty::Meta(m) => format!("?{m}"),
            Ty::Sort(s) => s,
            Ty::Unit => "1".to_string(),
            Ty::Prod(a, b) => format!("({} * {})", self.show(&a), self.show(&b)),
            Ty::Exp(z, y) => format!("({} ^ {})", self.show(&z), self.show(&y)),
        }
    }

    fn unify_at(&mut self, c: &Cursor, col: usize, a: &Ty, b: &Ty) -> Result<(), ParseError> {
        if self.unify(a, b) {
            Ok(())
        } else {
            Err(c.error_at(col, format!("type mismatch: `{}` vs `{}`", self.show(a), self.show(b))))
        }
    }

    fn annotation(&mut self, c: &mut Cursor, n: usize) -> Result<Vec<Ty>, ParseError> {
        if !c.eat("[") {
            return Ok((0..n).map(|_| self.fresh()).collect());
        }
        let mut out = Vec::new();
        for k in 0..n {
            if k > 0 {
                c.expect(",")?;
            }
            c.ws();
            let col = c.col();
            let o = object(c)?;
            self.sig.check_object(&o).map_err(|e| c.error_at(col, e.to_string()))?;
            out.push(Ty::from(&o));
        }
        c.expect("]")?;
        Ok(out)
    }

    fn term(&mut self, c: &mut Cursor) -> Result<Term, ParseError> {
        let g = self.app(c)?;
        c.ws();
        let col = c.col();
        if !c.eat(".") {
            return Ok(g);
        }
        let f = self.term(c)?;
        self.unify_at(c, col, &f.tgt, &g.src)?;
        let (src, tgt) = (f.src.clone(), g.tgt.clone());
        Ok(Term { node: Node::Comp(Box::new(g), Box::new(f)), col, src, tgt })
    }

    fn app(&mut self, c: &mut Cursor) -> Result<Term, ParseError> {
        c.ws();
        let col = c.col();
        if c.eat("(") {
            let t = self.term(c)?;
            c.expect(")")?;
            return Ok(t);
        }
        if c.eat("<") {
            let f = self.term(c)?;
            c.expect(",")?;
            let g = self.term(c)?;
            c.expect(">")?;
            self.unify_at(c, col, &f.src, &g.src)?;
            let (src, tgt) = (f.src.clone(), prod(f.tgt.clone(), g.tgt.clone()));
            return Ok(Term { node: Node::Pair(Box::new(f), Box::new(g)), col, src, tgt });
        }
        let (w, _) = c.ident()?;
        let (node, src, tgt) = match w.as_str() {
            "curry" => {
                c.expect("(")?;
                let f = self.term(c)?;
                c.expect(")")?;
                let (x, y) = (self.fresh(), self.fresh());
                self.unify_at(c, col, &f.src, &prod(x.clone(), y.clone()))?;
                let tgt = exp(f.tgt.clone(), y);
                (Node::Curry(Box::new(f)), x, tgt)
            }
            "id" => {
                let a = self.annotation(c, 1)?.remove(0);
                (Node::Id(a.clone()), a.clone(), a)
            }
            "bang" => {
                let a = self.annotation(c, 1)?.remove(0);
                (Node::Bang(a.clone()), a, Ty::Unit)
            }
            "p1" | "p2" => {
                let ab = self.annotation(c, 2)?;
                let (a, b) = (ab[0].clone(), ab[1].clone());
                let src = prod(a.clone(), b.clone());
                if w == "p1" {
                    (Node::P1(a.clone(), b), src, a)
                } else {
                    (Node::P2(a, b.clone()), src, b)
                }
            }
            "ev" => {
                let yz = self.annotation(c, 2)?;
                let (y, z) = (yz[0].clone(), yz[1].clone());
                let src = prod(exp(z.clone(), y.clone()), y.clone());
                (Node::Ev(y, z.clone()), src, z)
            }
            _ => {
                let g = self.sig.generator(&w).ok_or_else(|| c.error_at(col, format!("unknown generator `{w}`")))?;
                (Node::Gen(w.clone()), Ty::from(&g.src), Ty::from(&g.tgt))
            }
        };
        Ok(Term { node, col, src, tgt })
    }

    fn resolve(&self, c: &Cursor, col: usize, what: &str, t: &Ty) -> Result<ObjExpr, ParseError> {
        Ok(match self.walk(t) {
            Ty::Meta(_) => return Err(c.error_at(col, format!("cannot infer the type of `{what}`"))),
            Ty::Sort(s) => ObjExpr::Sort(s),
            Ty::Unit => ObjExpr::Unit,
            Ty::Prod(a, b) => ObjExpr::prod(self.resolve(c, col, what, &a)?, self.resolve(c, col, what, &b)?),
            Ty::Exp(z, y) => ObjExpr::exp(self.resolve(c, col, what, &z)?, self.resolve(c, col, what, &y)?),
        })
    }

    fn finish(&self, c: &Cursor, t: &Term) -> Result<MorExpr, ParseError> {
        let r = |what: &str, ty: &Ty| self.resolve(c, t.col, what, ty);
        Ok(match &t.node {
            Node::Gen(n) => MorExpr::Gen(n.clone()),
            Node::Id(a) => MorExpr::Id(r("id", a)?),
            Node::Bang(a) => MorExpr::Bang(r("bang", a)?),
            Node::P1(a, b) => MorExpr::Proj1(r("p1", a)?, r("p1", b)?),
            Node::P2(a, b) => MorExpr::Proj2(r("p2", a)?, r("p2", b)?),
            Node::Ev(y, z) => MorExpr::Ev(r("ev", y)?, r("ev", z)?),
            Node::Comp(g, f) => MorExpr::comp(self.finish(c, g)?, self.finish(c, f)?),
            Node::Pair(f, g) => MorExpr::pair(self.finish(c, f)?, self.finish(c, g)?),
            Node::Curry(f) => MorExpr::curry(self.finish(c, f)?),
        })
    }
}

/// A term over `sig`; the cursor must be at the start of the term.
pub(crate) fn term(c: &mut Cursor, sig: &CCSignature) -> Result<MorExpr, ParseError> {
    let mut inf = Infer { sig, subst: Vec::new() };
    let t = inf.term(c)?;
    inf.finish(c, &t)
}

/// Parses a whole term from a string, reporting columns within it.
pub fn parse_term(sig: &CCSignature, text: &str) -> Result<MorExpr, ParseError> {
    let mut c = Cursor::new(text, 1);
    let t = term(&mut c, sig)?;
    c.end()?;
    Ok(t)
}

pub fn parse_object(text: &str) -> Result<ObjExpr, ParseError> {
    let mut c = Cursor::new(text, 1);
    let o = object(&mut c)?;
    c.end()?;
    Ok(o)
}
