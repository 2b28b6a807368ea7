//! Many-sorted equational logic: signatures, terms, equations, checkable
//! proofs in the six-rule calculus, and finite algebras.

mod algebra;
mod presentations;

pub use algebra::{algebra_to_category, category_to_algebra, ccc_algebra, interpret_term, FinAlgebra, Valuation};
pub use presentations::{
    abelian_group_presentation, cat_presentation, ccc_presentation, law_presentation, Presentation,
};

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EqLogicError {
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("duplicate sort `{0}`")]
    DuplicateSort(String),
    #[error("duplicate operation `{0}`")]
    DuplicateOp(String),
    #[error("`{op}` expects {expected} arguments, got {got}")]
    Arity { op: String, expected: usize, got: usize },
    #[error("argument {index} of `{op}` has sort `{got}`, expected `{expected}`")]
    ArgumentSort { op: String, index: usize, expected: String, got: String },
    #[error("sides have sorts `{0}` and `{1}`")]
    SideSorts(String, String),
    #[error("variable `{0}` is not in the context")]
    FreeVariable(String),
    #[error("algebra: {0}")]
    Algebra(String),
    #[error("equation {index} fails: {equation}")]
    Unsatisfied { index: usize, equation: String },
    #[error(transparent)]
    Proof(#[from] ProofError),
}

/// `name : args -> result`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpDecl {
    pub name: String,
    pub args: Vec<String>,
    pub result: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    sorts: Vec<String>,
    ops: Vec<OpDecl>,
    op_index: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new<S: AsRef<str>>(sorts: &[S]) -> Result<Self, EqLogicError> {
        let mut sig = Signature::default();
        for s in sorts {
            sig.add_sort(s.as_ref())?;
        }
        Ok(sig)
    }

    pub fn add_sort(&mut self, s: &str) -> Result<(), EqLogicError> {
        if self.has_sort(s) {
            return Err(EqLogicError::DuplicateSort(s.to_string()));
        }
        self.sorts.push(s.to_string());
        Ok(())
    }

    pub fn add_op<S: AsRef<str>>(&mut self, name: &str, args: &[S], result: &str) -> Result<(), EqLogicError> {
        if self.op_index.contains_key(name) {
            return Err(EqLogicError::DuplicateOp(name.to_string()));
        }
        for s in args.iter().map(AsRef::as_ref).chain([result]) {
            if !self.has_sort(s) {
                return Err(EqLogicError::UnknownSort(s.to_string()));
            }
        }
        self.op_index.insert(name.to_string(), self.ops.len());
        self.ops.push(OpDecl {
            name: name.to_string(),
            args: args.iter().map(|s| s.as_ref().to_string()).collect(),
            result: result.to_string(),
        });
        Ok(())
    }

    pub fn sorts(&self) -> &[String] {
        &self.sorts
    }

    pub fn ops(&self) -> &[OpDecl] {
        &self.ops
    }

    pub fn has_sort(&self, s: &str) -> bool {
        self.sorts.iter().any(|t| t == s)
    }

    pub fn op(&self, name: &str) -> Option<&OpDecl> {
        self.op_index.get(name).map(|&i| &self.ops[i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var { name: String, sort: String },
    App { op: String, args: Vec<Term> },
}

impl Term {
    pub fn var(name: &str, sort: &str) -> Self {
        Term::Var { name: name.to_string(), sort: sort.to_string() }
    }

    pub fn app(op: &str, args: Vec<Term>) -> Self {
        Term::App { op: op.to_string(), args }
    }

    pub fn constant(op: &str) -> Self {
        Term::app(op, Vec::new())
    }

    /// The sort of a well-formed term.
    pub fn sort(&self, sig: &Signature) -> Result<String, EqLogicError> {
        match self {
            Term::Var { sort, .. } => {
                if !sig.has_sort(sort) {
                    return Err(EqLogicError::UnknownSort(sort.clone()));
                }
                Ok(sort.clone())
            }
            Term::App { op, args } => {
                let decl = sig.op(op).ok_or_else(|| EqLogicError::UnknownOp(op.clone()))?;
                if decl.args.len() != args.len() {
                    return Err(EqLogicError::Arity { op: op.clone(), expected: decl.args.len(), got: args.len() });
                }
                for (i, (a, want)) in args.iter().zip(&decl.args).enumerate() {
                    let got = a.sort(sig)?;
                    if &got != want {
                        return Err(EqLogicError::ArgumentSort {
                            op: op.clone(),
                            index: i,
                            expected: want.clone(),
                            got,
                        });
                    }
                }
                Ok(decl.result.clone())
            }
        }
    }

    /// Variables as `(name, sort)`.
    pub fn vars(&self, out: &mut BTreeSet<(String, String)>) {
        match self {
            Term::Var { name, sort } => {
                out.insert((name.clone(), sort.clone()));
            }
            Term::App { args, .. } => args.iter().for_each(|a| a.vars(out)),
        }
    }

    /// Simultaneous substitution; unmapped variables stay.
    pub fn subst(&self, sigma: &Substitution) -> Term {
        match self {
            Term::Var { name, sort } => {
                sigma.get(&(name.clone(), sort.clone())).cloned().unwrap_or_else(|| self.clone())
            }
            Term::App { op, args } => Term::App { op: op.clone(), args: args.iter().map(|a| a.subst(sigma)).collect() },
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var { .. } => 1,
            Term::App { args, .. } => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

/// Nullary operations print bare, like variables; a context disambiguates.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var { name, .. } => f.write_str(name),
            Term::App { op, args } if args.is_empty() => f.write_str(op),
            Term::App { op, args } => {
                write!(f, "{op}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Keys are `(name, sort)`.
pub type Substitution = BTreeMap<(String, String), Term>;

/// `lhs = rhs` in a context of sorted variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub context: Vec<(String, String)>,
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    /// The context is the variables of both sides, sorted.
    pub fn new(sig: &Signature, lhs: Term, rhs: Term) -> Result<Self, EqLogicError> {
        let mut vars = BTreeSet::new();
        lhs.vars(&mut vars);
        rhs.vars(&mut vars);
        Self::with_context(sig, vars.into_iter().collect(), lhs, rhs)
    }

    pub fn with_context(
        sig: &Signature,
        context: Vec<(String, String)>,
        lhs: Term,
        rhs: Term,
    ) -> Result<Self, EqLogicError> {
        let (a, b) = (lhs.sort(sig)?, rhs.sort(sig)?);
        if a != b {
            return Err(EqLogicError::SideSorts(a, b));
        }
        let mut vars = BTreeSet::new();
        lhs.vars(&mut vars);
        rhs.vars(&mut vars);
        if let Some((n, _)) = vars.iter().find(|v| !context.contains(v)) {
            return Err(EqLogicError::FreeVariable(n.clone()));
        }
        for (_, s) in &context {
            if !sig.has_sort(s) {
                return Err(EqLogicError::UnknownSort(s.clone()));
            }
        }
        Ok(Equation { context, lhs, rhs })
    }

    pub fn sort(&self, sig: &Signature) -> Result<String, EqLogicError> {
        self.lhs.sort(sig)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Proof trees; each node's conclusion is computed from its children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proof {
    Axiom(usize),
    Refl(Term),
    Sym(Box<Proof>),
    Trans(Box<Proof>, Box<Proof>),
    Subst(Box<Proof>, Substitution),
    Cong(String, Vec<Proof>),
}

impl Proof {
    pub fn sym(p: Proof) -> Self {
        Proof::Sym(Box::new(p))
    }

    pub fn trans(p: Proof, q: Proof) -> Self {
        Proof::Trans(Box::new(p), Box::new(q))
    }

    pub fn subst(p: Proof, sigma: Substitution) -> Self {
        Proof::Subst(Box::new(p), sigma)
    }

    pub fn cong(op: &str, ps: Vec<Proof>) -> Self {
        Proof::Cong(op.to_string(), ps)
    }

    pub fn size(&self) -> usize {
        match self {
            Proof::Axiom(_) | Proof::Refl(_) => 1,
            Proof::Sym(p) | Proof::Subst(p, _) => 1 + p.size(),
            Proof::Trans(p, q) => 1 + p.size() + q.size(),
            Proof::Cong(_, ps) => 1 + ps.iter().map(Proof::size).sum::<usize>(),
        }
    }
}

/// A rejected node, located by child indices from the root.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid proof step at {}: {reason}", fmt_path(path))]
pub struct ProofError {
    pub path: Vec<usize>,
    pub reason: String,
}

fn fmt_path(path: &[usize]) -> String {
    if path.is_empty() {
        return "root".to_string();
    }
    let parts: Vec<String> = path.iter().map(|i| i.to_string()).collect();
    format!("root.{}", parts.join("."))
}

/// The equation a proof derives from `axioms`.
pub fn conclusion(sig: &Signature, axioms: &[Equation], p: &Proof) -> Result<(Term, Term), ProofError> {
    let mut path = Vec::new();
    conclude(sig, axioms, p, &mut path)
}

fn conclude(
    sig: &Signature,
    axioms: &[Equation],
    p: &Proof,
    path: &mut Vec<usize>,
) -> Result<(Term, Term), ProofError> {
    let fail = |path: &[usize], reason: String| ProofError { path: path.to_vec(), reason };
    let child = |k: usize, q: &Proof, path: &mut Vec<usize>| {
        path.push(k);
        let r = conclude(sig, axioms, q, path);
        path.pop();
        r
    };
    match p {
        Proof::Axiom(i) => {
            let e = axioms.get(*i).ok_or_else(|| fail(path, format!("no axiom {i}")))?;
            Ok((e.lhs.clone(), e.rhs.clone()))
        }
        Proof::Refl(t) => {
            t.sort(sig).map_err(|e| fail(path, e.to_string()))?;
            Ok((t.clone(), t.clone()))
        }
        Proof::Sym(q) => {
            let (a, b) = child(0, q, path)?;
            Ok((b, a))
        }
        Proof::Trans(q, r) => {
            let (a, b) = child(0, q, path)?;
            let (b2, c) = child(1, r, path)?;
            if b != b2 {
                return Err(fail(path, format!("middle terms differ: `{b}` vs `{b2}`")));
            }
            Ok((a, c))
        }
        Proof::Subst(q, sigma) => {
            for ((name, sort), t) in sigma {
                let got = t.sort(sig).map_err(|e| fail(path, e.to_string()))?;
                if &got != sort {
                    return Err(fail(path, format!("`{name}` of sort `{sort}` replaced by a term of sort `{got}`")));
                }
            }
            let (a, b) = child(0, q, path)?;
            Ok((a.subst(sigma), b.subst(sigma)))
        }
        Proof::Cong(op, qs) => {
            let decl = sig.op(op).ok_or_else(|| fail(path, format!("unknown operation `{op}`")))?;
            if decl.args.len() != qs.len() {
                return Err(fail(path, format!("`{op}` expects {} arguments, got {}", decl.args.len(), qs.len())));
            }
            let (mut ls, mut rs) = (Vec::new(), Vec::new());
            for (k, q) in qs.iter().enumerate() {
                let (a, b) = child(k, q, path)?;
                let s = a.sort(sig).map_err(|e| fail(path, e.to_string()))?;
                if s != decl.args[k] {
                    return Err(fail(path, format!("argument {k} of `{op}` has sort `{s}`")));
                }
                ls.push(a);
                rs.push(b);
            }
            Ok((Term::app(op, ls), Term::app(op, rs)))
        }
    }
}

/// Checks that `p` derives exactly `goal` from `axioms`.
pub fn check_proof(sig: &Signature, axioms: &[Equation], p: &Proof, goal: &Equation) -> Result<(), ProofError> {
    let (l, r) = conclusion(sig, axioms, p)?;
    if l != goal.lhs || r != goal.rhs {
        return Err(ProofError { path: Vec::new(), reason: format!("proves `{l} = {r}`, not `{goal}`") });
    }
    Ok(())
}

#[cfg(test)]
mod tests;
