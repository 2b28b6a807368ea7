//! The free cartesian closed category on a signature of sorts and generators.
//!
//! Equality of morphism terms is decided by normalization by evaluation into
//! a simply typed lambda calculus with products and unit, followed by a
//! readback to a canonical combinator term.

mod interpret;
mod nbe;

pub use interpret::{interpret, translate_object, Interpretation};
pub use nbe::{equal, normalize, normalize_with_limit, Ne, Nf, NormalForm, DEFAULT_SIZE_LIMIT};

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::fincat::StructureError;

/// Objects: sorts, `1`, `A * B` and `Z ^ Y`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjExpr {
    Sort(String),
    Unit,
    Prod(Box<ObjExpr>, Box<ObjExpr>),
    /// `Exp(z, y)` is `Z ^ Y`.
    Exp(Box<ObjExpr>, Box<ObjExpr>),
}

impl ObjExpr {
    pub fn sort(name: &str) -> Self {
        ObjExpr::Sort(name.to_string())
    }

    pub fn prod(a: ObjExpr, b: ObjExpr) -> Self {
        ObjExpr::Prod(Box::new(a), Box::new(b))
    }

    /// `z ^ y`.
    pub fn exp(z: ObjExpr, y: ObjExpr) -> Self {
        ObjExpr::Exp(Box::new(z), Box::new(y))
    }

    pub fn size(&self) -> usize {
        match self {
            ObjExpr::Sort(_) | ObjExpr::Unit => 1,
            ObjExpr::Prod(a, b) | ObjExpr::Exp(a, b) => 1 + a.size() + b.size(),
        }
    }

    fn sorts<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            ObjExpr::Sort(s) => out.push(s),
            ObjExpr::Unit => {}
            ObjExpr::Prod(a, b) | ObjExpr::Exp(a, b) => {
                a.sorts(out);
                b.sorts(out);
            }
        }
    }
}

// `^` binds tighter than `*`, and `*` associates to the left.
impl fmt::Display for ObjExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjExpr::Sort(s) => f.write_str(s),
            ObjExpr::Unit => f.write_str("1"),
            ObjExpr::Prod(a, b) => {
                write!(f, "{a} * ")?;
                match **b {
                    ObjExpr::Prod(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            ObjExpr::Exp(z, y) => {
                let atom = |o: &ObjExpr| matches!(o, ObjExpr::Sort(_) | ObjExpr::Unit);
                if atom(z) {
                    write!(f, "{z} ^ ")?;
                } else {
                    write!(f, "({z}) ^ ")?;
                }
                if atom(y) {
                    write!(f, "{y}")
                } else {
                    write!(f, "({y})")
                }
            }
        }
    }
}

/// Morphism terms with their structural maps annotated by type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MorExpr {
    Gen(String),
    Id(ObjExpr),
    Bang(ObjExpr),
    Proj1(ObjExpr, ObjExpr),
    Proj2(ObjExpr, ObjExpr),
    /// `Ev(y, z) : Z^Y * Y -> Z`.
    Ev(ObjExpr, ObjExpr),
    /// `Comp(g, f)` is `g . f`.
    Comp(Box<MorExpr>, Box<MorExpr>),
    Pair(Box<MorExpr>, Box<MorExpr>),
    Curry(Box<MorExpr>),
}

impl MorExpr {
    pub fn gen(name: &str) -> Self {
        MorExpr::Gen(name.to_string())
    }

    pub fn comp(g: MorExpr, f: MorExpr) -> Self {
        MorExpr::Comp(Box::new(g), Box::new(f))
    }

    pub fn pair(f: MorExpr, g: MorExpr) -> Self {
        MorExpr::Pair(Box::new(f), Box::new(g))
    }

    pub fn curry(f: MorExpr) -> Self {
        MorExpr::Curry(Box::new(f))
    }

    /// `f x g = <f . p1, g . p2>` on `A * B`.
    pub fn times(f: MorExpr, a: &ObjExpr, g: MorExpr, b: &ObjExpr) -> Self {
        MorExpr::pair(
            MorExpr::comp(f, MorExpr::Proj1(a.clone(), b.clone())),
            MorExpr::comp(g, MorExpr::Proj2(a.clone(), b.clone())),
        )
    }

    /// Number of nodes, counting type annotations.
    pub fn size(&self) -> usize {
        match self {
            MorExpr::Gen(_) => 1,
            MorExpr::Id(a) | MorExpr::Bang(a) => 1 + a.size(),
            MorExpr::Proj1(a, b) | MorExpr::Proj2(a, b) | MorExpr::Ev(a, b) => 1 + a.size() + b.size(),
            MorExpr::Comp(g, f) | MorExpr::Pair(g, f) => 1 + g.size() + f.size(),
            MorExpr::Curry(f) => 1 + f.size(),
        }
    }
}

// `.` associates to the right.
impl fmt::Display for MorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorExpr::Gen(n) => f.write_str(n),
            MorExpr::Id(a) => write!(f, "id[{a}]"),
            MorExpr::Bang(a) => write!(f, "bang[{a}]"),
            MorExpr::Proj1(a, b) => write!(f, "p1[{a}, {b}]"),
            MorExpr::Proj2(a, b) => write!(f, "p2[{a}, {b}]"),
            MorExpr::Ev(y, z) => write!(f, "ev[{y}, {z}]"),
            MorExpr::Comp(g, h) => {
                if matches!(**g, MorExpr::Comp(..)) {
                    write!(f, "({g}) . {h}")
                } else {
                    write!(f, "{g} . {h}")
                }
            }
            MorExpr::Pair(a, b) => write!(f, "<{a}, {b}>"),
            MorExpr::Curry(a) => write!(f, "curry({a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub src: ObjExpr,
    pub tgt: ObjExpr,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CCSignature {
    pub sorts: Vec<String>,
    pub generators: Vec<Generator>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeCccError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("duplicate sort `{0}`")]
    DuplicateSort(String),
    #[error("cannot compose `{g}` after `{f}`: `{mid_f}` is not `{mid_g}`")]
    CompositionMismatch { g: String, f: String, mid_f: String, mid_g: String },
    #[error("pairing `{0}` and `{1}` with different sources")]
    PairingMismatch(String, String),
    #[error("curry of `{0}`, whose source is not a product")]
    CurryNotProduct(String),
    #[error("types differ: {0} vs {1}")]
    TypeMismatch(String, String),
    #[error("term size {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("no object for `{0}` in the target category")]
    MissingObject(String),
    #[error("generator `{0}` is assigned a morphism of the wrong type")]
    AssignmentType(String),
}

impl CCSignature {
    pub fn new(sorts: &[&str]) -> Self {
        CCSignature { sorts: sorts.iter().map(|s| s.to_string()).collect(), generators: Vec::new() }
    }

    pub fn with_generator(mut self, name: &str, src: ObjExpr, tgt: ObjExpr) -> Self {
        self.generators.push(Generator { name: name.to_string(), src, tgt });
        self
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    /// Distinct names, declared sorts.
    pub fn validate(&self) -> Result<(), FreeCccError> {
        for (i, s) in self.sorts.iter().enumerate() {
            if self.sorts[..i].contains(s) {
                return Err(FreeCccError::DuplicateSort(s.clone()));
            }
        }
        for (i, g) in self.generators.iter().enumerate() {
            if self.generators[..i].iter().any(|h| h.name == g.name) {
                return Err(FreeCccError::DuplicateGenerator(g.name.clone()));
            }
            self.check_object(&g.src)?;
            self.check_object(&g.tgt)?;
        }
        Ok(())
    }

    pub fn check_object(&self, o: &ObjExpr) -> Result<(), FreeCccError> {
        let mut names = Vec::new();
        o.sorts(&mut names);
        match names.into_iter().find(|s| !self.sorts.iter().any(|t| t == s)) {
            Some(s) => Err(FreeCccError::UnknownSort(s.to_string())),
            None => Ok(()),
        }
    }
}

/// The unique `(src, tgt)` of a term.
pub fn typecheck(sig: &CCSignature, e: &MorExpr) -> Result<(ObjExpr, ObjExpr), FreeCccError> {
    use MorExpr::*;
    let checked = |o: &ObjExpr| sig.check_object(o).map(|_| o.clone());
    Ok(match e {
        Gen(n) => {
            let g = sig.generator(n).ok_or_else(|| FreeCccError::UnknownGenerator(n.clone()))?;
            (checked(&g.src)?, checked(&g.tgt)?)
        }
        Id(a) => (checked(a)?, a.clone()),
        Bang(a) => (checked(a)?, ObjExpr::Unit),
        Proj1(a, b) => (ObjExpr::prod(checked(a)?, checked(b)?), a.clone()),
        Proj2(a, b) => (ObjExpr::prod(checked(a)?, checked(b)?), b.clone()),
        Ev(y, z) => (ObjExpr::prod(ObjExpr::exp(checked(z)?, checked(y)?), y.clone()), z.clone()),
        Comp(g, f) => {
            let (a, b) = typecheck(sig, f)?;
            let (b2, c) = typecheck(sig, g)?;
            if b != b2 {
                return Err(FreeCccError::CompositionMismatch {
                    g: g.to_string(),
                    f: f.to_string(),
                    mid_f: b.to_string(),
                    mid_g: b2.to_string(),
                });
            }
            (a, c)
        }
        Pair(f, g) => {
            let (a, b) = typecheck(sig, f)?;
            let (a2, c) = typecheck(sig, g)?;
            if a != a2 {
                return Err(FreeCccError::PairingMismatch(f.to_string(), g.to_string()));
            }
            (a, ObjExpr::prod(b, c))
        }
        Curry(f) => match typecheck(sig, f)? {
            (ObjExpr::Prod(x, y), z) => (*x, ObjExpr::Exp(Box::new(z), y)),
            _ => return Err(FreeCccError::CurryNotProduct(f.to_string())),
        },
    })
}
