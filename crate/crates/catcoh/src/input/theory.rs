//! Signatures, equations and proofs of many-sorted equational logic.

use std::collections::BTreeMap;

use catcoh_core::eqlogic::{Equation, Proof, Signature, Substitution, Term};

use super::cursor::{is_ident_char, Cursor};
use super::ParseError;

/// A sort: an identifier, a parenthesized group kept verbatim, or a quoted string.
pub(crate) fn sort(c: &mut Cursor) -> Result<String, ParseError> {
    if c.at("\"") {
        return c.quoted();
    }
    if c.eat("(") {
        return Ok(format!("({})", c.balanced('(', ')')?));
    }
    Ok(c.ident()?.0)
}

/// An operation name: an identifier with an optional `[...]` suffix, or a quoted string.
pub(crate) fn op_name(c: &mut Cursor) -> Result<(String, usize), ParseError> {
    c.ws();
    let col = c.col();
    if c.at("\"") {
        return Ok((c.quoted()?, col));
    }
    let (mut w, _) = c.ident()?;
    if c.eat("[") {
        w = format!("{w}[{}]", c.balanced('[', ']')?);
    }
    Ok((w, col))
}

pub(crate) fn is_plain_sort(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_ident_char)
}

pub(crate) fn is_plain_op(s: &str) -> bool {
    let head = s.find('[').unwrap_or(s.len());
    if head == 0 || !s[..head].chars().all(is_ident_char) {
        return false;
    }
    let tail = &s[head..];
    if tail.is_empty() {
        return true;
    }
    // a single balanced bracket group ending the name
    let mut depth = 0i32;
    for (i, ch) in tail.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth == 0 && i + 1 != tail.len() {
                    return false;
                }
            }
            '"' => return false,
            _ => {}
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

/// Variables in scope while reading a term.
pub(crate) struct Scope<'a> {
    pub context: &'a [(String, String)],
    pub declared: &'a BTreeMap<String, String>,
}

pub(crate) fn term(c: &mut Cursor, sig: &Signature, scope: &Scope) -> Result<Term, ParseError> {
    let (name, col) = op_name(c)?;
    if c.eat("(") {
        let mut args = Vec::new();
        if !c.eat(")") {
            loop {
                args.push(term(c, sig, scope)?);
                if c.eat(")") {
                    break;
                }
                c.expect(",")?;
            }
        }
        let t = Term::app(&name, args);
        t.sort(sig).map_err(|e| c.error_at(col, e.to_string()))?;
        return Ok(t);
    }
    if c.eat(":") {
        let s = sort(c)?;
        if !sig.has_sort(&s) {
            return Err(c.error_at(col, format!("unknown sort `{s}`")));
        }
        return Ok(Term::var(&name, &s));
    }
    if let Some((_, s)) = scope.context.iter().find(|(n, _)| *n == name) {
        return Ok(Term::var(&name, s));
    }
    if let Some(s) = scope.declared.get(&name) {
        return Ok(Term::var(&name, s));
    }
    match sig.op(&name) {
        Some(op) if op.args.is_empty() => Ok(Term::constant(&name)),
        Some(_) => Err(c.error_at(col, format!("`{name}` needs arguments"))),
        None => Err(c.error_at(col, format!("unknown variable or operation `{name}`"))),
    }
}

/// `forall x y : S, z : T.` or nothing.
pub(crate) fn context(c: &mut Cursor, sig: &Signature) -> Result<Vec<(String, String)>, ParseError> {
    let mut ctx = Vec::new();
    if !c.eat_keyword("forall") {
        return Ok(ctx);
    }
    loop {
        let mut names = Vec::new();
        while !c.at(":") {
            names.push(c.ident()?.0);
        }
        c.expect(":")?;
        c.ws();
        let col = c.col();
        let s = sort(c)?;
        if !sig.has_sort(&s) {
            return Err(c.error_at(col, format!("unknown sort `{s}`")));
        }
        if names.is_empty() {
            return Err(c.error_at(col, "no variables before the sort"));
        }
        ctx.extend(names.into_iter().map(|n| (n, s.clone())));
        if c.eat(".") {
            return Ok(ctx);
        }
        c.expect(",")?;
    }
}

pub(crate) fn equation(
    c: &mut Cursor,
    sig: &Signature,
    declared: &BTreeMap<String, String>,
) -> Result<Equation, ParseError> {
    c.ws();
    let start = c.col();
    let ctx = context(c, sig)?;
    let explicit = !ctx.is_empty();
    let scope = Scope { context: &ctx, declared };
    let l = term(c, sig, &scope)?;
    c.expect("=")?;
    let r = term(c, sig, &scope)?;
    c.end()?;
    let e = if explicit { Equation::with_context(sig, ctx, l, r) } else { Equation::new(sig, l, r) };
    e.map_err(|e| c.error_at(start, e.to_string()))
}

/// Where each proof node came from, mirroring the proof tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofSource {
    pub line: usize,
    pub col: usize,
    pub children: Vec<ProofSource>,
}

impl ProofSource {
    /// The node at a child-index path; the deepest existing node if the path runs out.
    pub fn at(&self, path: &[usize]) -> &ProofSource {
        match path.split_first() {
            Some((&k, rest)) if k < self.children.len() => self.children[k].at(rest),
            _ => self,
        }
    }
}

pub(crate) struct ProofReader<'a> {
    pub sig: &'a Signature,
    pub scope: Scope<'a>,
    pub haves: &'a BTreeMap<String, (Proof, ProofSource)>,
}

impl ProofReader<'_> {
    pub fn proof(&self, c: &mut Cursor) -> Result<(Proof, ProofSource), ParseError> {
        c.ws();
        let (line, col) = (c.line(), c.col());
        let (w, _) = c.ident()?;
        let leaf = |p: Proof| (p, ProofSource { line, col, children: Vec::new() });
        let node = |p: Proof, children: Vec<ProofSource>| (p, ProofSource { line, col, children });
        if !c.at("(") {
            return self.haves.get(&w).cloned().ok_or_else(|| c.error_at(col, format!("unknown proof step `{w}`")));
        }
        c.expect("(")?;
        let out = match w.as_str() {
            "axiom" => leaf(Proof::Axiom(c.usize()?)),
            "refl" => leaf(Proof::Refl(term(c, self.sig, &self.scope)?)),
            "sym" => {
                let (p, s) = self.proof(c)?;
                node(Proof::sym(p), vec![s])
            }
            "trans" => {
                let (p, s) = self.proof(c)?;
                c.expect(",")?;
                let (q, t) = self.proof(c)?;
                node(Proof::trans(p, q), vec![s, t])
            }
            "subst" => {
                let (p, s) = self.proof(c)?;
                let mut sigma = Substitution::new();
                if c.eat(";") {
                    loop {
                        let (name, vcol) = c.ident()?;
                        let declared = if !c.at(":=") && c.eat(":") { Some(sort(c)?) } else { None };
                        c.expect(":=")?;
                        let t = term(c, self.sig, &self.scope)?;
                        let st = t.sort(self.sig).map_err(|e| c.error_at(vcol, e.to_string()))?;
                        let vs = declared.or_else(|| self.scope.declared.get(&name).cloned()).unwrap_or(st);
                        sigma.insert((name, vs), t);
                        if !c.eat(",") {
                            break;
                        }
                    }
                }
                node(Proof::subst(p, sigma), vec![s])
            }
            "cong" => {
                let (op, ocol) = op_name(c)?;
                if self.sig.op(&op).is_none() {
                    return Err(c.error_at(ocol, format!("unknown operation `{op}`")));
                }
                let (mut ps, mut ss) = (Vec::new(), Vec::new());
                if c.eat(";") && !c.at(")") {
                    loop {
                        let (p, s) = self.proof(c)?;
                        ps.push(p);
                        ss.push(s);
                        if !c.eat(",") {
                            break;
                        }
                    }
                }
                node(Proof::Cong(op, ps), ss)
            }
            _ => return Err(c.error_at(col, format!("unknown proof rule `{w}`"))),
        };
        c.expect(")")?;
        Ok(out)
    }
}
