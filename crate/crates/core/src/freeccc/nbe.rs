//! Normalization by evaluation.
//!
//! A term `e : X -> Y` is read as a lambda term with one free variable of
//! type `X`. Evaluation goes into a semantic domain where neutral terms are
//! reflected with full eta expansion at `1`, products and exponentials;
//! reification yields the eta-long beta-normal form, with variables as de
//! Bruijn levels so that equal terms give identical normal forms.

use alloc::boxed::Box;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{typecheck, CCSignature, FreeCccError, MorExpr, ObjExpr};

/// Default bound on the size of inputs and normal forms.
pub const DEFAULT_SIZE_LIMIT: usize = 10_000;

/// Eta-long beta-normal terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nf {
    Lam(Box<Nf>),
    Pair(Box<Nf>, Box<Nf>),
    Unit,
    /// Only at sort types.
    Ne(Ne),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ne {
    /// De Bruijn level; level 0 is the input.
    Var(usize),
    Fst(Box<Ne>),
    Snd(Box<Ne>),
    App(Box<Ne>, Box<Nf>),
    Gen(String, Box<Nf>),
}

/// A normal form with its type and canonical combinator term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub nf: Nf,
    pub term: MorExpr,
    pub src: ObjExpr,
    pub tgt: ObjExpr,
}

#[derive(Clone)]
enum Val {
    Ne(Ne),
    Unit,
    Pair(Rc<Val>, Rc<Val>),
    /// `w -> body(<env, w>)`.
    Clo(Rc<MorExpr>, Rc<Val>),
    /// A neutral at `cod ^ dom`.
    Fun(Ne, Rc<ObjExpr>, Rc<ObjExpr>),
}

struct Machine<'a> {
    sig: &'a CCSignature,
    depth: usize,
    budget: usize,
    limit: usize,
}

impl Machine<'_> {
    fn tick(&mut self) -> Result<(), FreeCccError> {
        if self.budget == 0 {
            return Err(FreeCccError::TooLarge { size: self.limit + 1, limit: self.limit });
        }
        self.budget -= 1;
        Ok(())
    }

    fn reflect(&mut self, ty: &ObjExpr, ne: Ne) -> Val {
        match ty {
            ObjExpr::Sort(_) => Val::Ne(ne),
            ObjExpr::Unit => Val::Unit,
            ObjExpr::Prod(a, b) => {
                let l = self.reflect(a, Ne::Fst(Box::new(ne.clone())));
                let r = self.reflect(b, Ne::Snd(Box::new(ne)));
                Val::Pair(Rc::new(l), Rc::new(r))
            }
            ObjExpr::Exp(z, y) => Val::Fun(ne, Rc::new((**y).clone()), Rc::new((**z).clone())),
        }
    }

    fn reify(&mut self, ty: &ObjExpr, v: &Val) -> Result<Nf, FreeCccError> {
        self.tick()?;
        Ok(match ty {
            ObjExpr::Unit => Nf::Unit,
            ObjExpr::Prod(a, b) => {
                let (l, r) = split(v);
                Nf::Pair(Box::new(self.reify(a, &l)?), Box::new(self.reify(b, &r)?))
            }
            ObjExpr::Exp(z, y) => {
                let var = self.reflect(y, Ne::Var(self.depth));
                self.depth += 1;
                let body = self.apply(v, var).and_then(|w| self.reify(z, &w));
                self.depth -= 1;
                Nf::Lam(Box::new(body?))
            }
            ObjExpr::Sort(_) => match v {
                Val::Ne(ne) => Nf::Ne(ne.clone()),
                _ => unreachable!("values at sort types are neutral"),
            },
        })
    }

    fn apply(&mut self, f: &Val, w: Val) -> Result<Val, FreeCccError> {
        match f {
            Val::Clo(body, env) => self.eval(body, Val::Pair(env.clone(), Rc::new(w))),
            Val::Fun(ne, dom, cod) => {
                let arg = self.reify(dom, &w)?;
                Ok(self.reflect(cod, Ne::App(Box::new(ne.clone()), Box::new(arg))))
            }
            _ => unreachable!("values at exponential types are functions"),
        }
    }

    fn eval(&mut self, e: &MorExpr, v: Val) -> Result<Val, FreeCccError> {
        self.tick()?;
        Ok(match e {
            MorExpr::Gen(n) => {
                let g = self.sig.generator(n).ok_or_else(|| FreeCccError::UnknownGenerator(n.clone()))?;
                let arg = self.reify(&g.src, &v)?;
                let tgt = g.tgt.clone();
                self.reflect(&tgt, Ne::Gen(n.clone(), Box::new(arg)))
            }
            MorExpr::Id(_) => v,
            MorExpr::Bang(_) => Val::Unit,
            MorExpr::Proj1(..) => (*split(&v).0).clone(),
            MorExpr::Proj2(..) => (*split(&v).1).clone(),
            MorExpr::Ev(..) => {
                let (f, w) = split(&v);
                self.apply(&f, (*w).clone())?
            }
            MorExpr::Comp(g, f) => {
                let mid = self.eval(f, v)?;
                self.eval(g, mid)?
            }
            MorExpr::Pair(f, g) => {
                let l = self.eval(f, v.clone())?;
                let r = self.eval(g, v)?;
                Val::Pair(Rc::new(l), Rc::new(r))
            }
            MorExpr::Curry(f) => Val::Clo(Rc::new((**f).clone()), Rc::new(v)),
        })
    }
}

fn split(v: &Val) -> (Rc<Val>, Rc<Val>) {
    match v {
        Val::Pair(a, b) => (a.clone(), b.clone()),
        _ => unreachable!("values at product types are pairs"),
    }
}

/// Normal form of a well-typed term, within [`DEFAULT_SIZE_LIMIT`].
pub fn normalize(sig: &CCSignature, e: &MorExpr) -> Result<NormalForm, FreeCccError> {
    normalize_with_limit(sig, e, DEFAULT_SIZE_LIMIT)
}

pub fn normalize_with_limit(sig: &CCSignature, e: &MorExpr, limit: usize) -> Result<NormalForm, FreeCccError> {
    let size = e.size();
    if size > limit {
        return Err(FreeCccError::TooLarge { size, limit });
    }
    let (src, tgt) = typecheck(sig, e)?;
    // evaluation and reification share one step budget
    let mut m = Machine { sig, depth: 1, budget: limit.saturating_mul(8), limit };
    let input = m.reflect(&src, Ne::Var(0));
    let v = m.eval(e, input)?;
    let nf = m.reify(&tgt, &v)?;
    let mut rb = Readback { sig, ctx: alloc::vec![src.clone()], objs: alloc::vec![src.clone()] };
    let term = rb.nf(&nf, &tgt);
    if term.size() > limit {
        return Err(FreeCccError::TooLarge { size: term.size(), limit });
    }
    Ok(NormalForm { nf, term, src, tgt })
}

/// Whether two terms of the same type are equal in the free CCC.
pub fn equal(sig: &CCSignature, e1: &MorExpr, e2: &MorExpr) -> Result<bool, FreeCccError> {
    let n1 = normalize(sig, e1)?;
    let n2 = normalize(sig, e2)?;
    if (&n1.src, &n1.tgt) != (&n2.src, &n2.tgt) {
        return Err(FreeCccError::TypeMismatch(
            alloc::format!("{} -> {}", n1.src, n1.tgt),
            alloc::format!("{} -> {}", n2.src, n2.tgt),
        ));
    }
    Ok(n1.nf == n2.nf)
}

/// Reads a normal form in context `x0 : X, x1 : A1, ...` back as a term
/// out of `((X * A1) * A2) ...`.
struct Readback<'a> {
    sig: &'a CCSignature,
    /// Types of the variables by level.
    ctx: Vec<ObjExpr>,
    /// `objs[k]` is the context object with `k + 1` variables.
    objs: Vec<ObjExpr>,
}

/// `g . f`, dropping identities.
fn comp(g: MorExpr, f: MorExpr) -> MorExpr {
    match (&g, &f) {
        (MorExpr::Id(_), _) => f,
        (_, MorExpr::Id(_)) => g,
        _ => MorExpr::comp(g, f),
    }
}

impl Readback<'_> {
    fn context(&self) -> ObjExpr {
        self.objs.last().expect("nonempty context").clone()
    }

    /// Projection from the context object of length `k` to variable `i`.
    fn var(&self, i: usize, k: usize) -> MorExpr {
        if k == 1 {
            return MorExpr::Id(self.objs[0].clone());
        }
        let (prev, last) = (self.objs[k - 2].clone(), self.ctx[k - 1].clone());
        if i == k - 1 {
            MorExpr::Proj2(prev, last)
        } else {
            comp(self.var(i, k - 1), MorExpr::Proj1(prev, last))
        }
    }

    fn nf(&mut self, nf: &Nf, ty: &ObjExpr) -> MorExpr {
        match (nf, ty) {
            (Nf::Unit, _) => MorExpr::Bang(self.context()),
            (Nf::Pair(a, b), ObjExpr::Prod(ta, tb)) => MorExpr::pair(self.nf(a, ta), self.nf(b, tb)),
            (Nf::Lam(body), ObjExpr::Exp(z, y)) => {
                let ext = ObjExpr::prod(self.context(), (**y).clone());
                self.ctx.push((**y).clone());
                self.objs.push(ext);
                let t = self.nf(body, z);
                self.ctx.pop();
                self.objs.pop();
                MorExpr::curry(t)
            }
            (Nf::Ne(ne), _) => self.ne(ne).0,
            _ => unreachable!("normal forms are well typed"),
        }
    }

    fn ne(&mut self, ne: &Ne) -> (MorExpr, ObjExpr) {
        match ne {
            Ne::Var(i) => (self.var(*i, self.ctx.len()), self.ctx[*i].clone()),
            Ne::Fst(n) => {
                let (t, ty) = self.ne(n);
                let ObjExpr::Prod(a, b) = ty else { unreachable!("projection of a product") };
                (comp(MorExpr::Proj1((*a).clone(), (*b).clone()), t), *a)
            }
            Ne::Snd(n) => {
                let (t, ty) = self.ne(n);
                let ObjExpr::Prod(a, b) = ty else { unreachable!("projection of a product") };
                (comp(MorExpr::Proj2((*a).clone(), (*b).clone()), t), *b)
            }
            Ne::App(n, arg) => {
                let (t, ty) = self.ne(n);
                let ObjExpr::Exp(z, y) = ty else { unreachable!("application of a function") };
                let a = self.nf(arg, &y);
                (comp(MorExpr::Ev((*y).clone(), (*z).clone()), MorExpr::pair(t, a)), *z)
            }
            Ne::Gen(name, arg) => {
                let g = self.sig.generator(name).expect("typechecked").clone();
                let a = self.nf(arg, &g.src);
                (comp(MorExpr::Gen(name.to_string()), a), g.tgt)
            }
        }
    }
}
