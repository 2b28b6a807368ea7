//! Explicit finite categories given by composition tables.
//!
//! Objects and morphisms are dense indices ([`ObjId`], [`MorId`]) with
//! attached names. Composition is a dense `|Mor| x |Mor|` table.

mod catalog;
mod factor;
mod functor;
mod structure;

pub use catalog::*;
pub use factor::{factorization_category, nerve, nerve_count, nerve_normalized, FactorizationCategory, NerveTuple};
pub use functor::{FinFunctor, FunctorError};
pub use structure::{CCStructure, Exponential, Product, StructureError};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ObjId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MorId(pub usize);

impl ObjId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl MorId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("category must have at least one object")]
    NoObjects,
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism `{0}`")]
    DuplicateMorphism(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("`{g}` . `{f}` is not composable")]
    NotComposable { g: String, f: String },
    #[error("composite `{g}` . `{f}` = `{h}` has the wrong source or target")]
    CompositeType { g: String, f: String, h: String },
    #[error("missing composite `{g}` . `{f}`")]
    MissingComposite { g: String, f: String },
    #[error("conflicting composites for `{g}` . `{f}`: `{first}` and `{second}`")]
    ConflictingComposite { g: String, f: String, first: String, second: String },
    #[error("category too large: {0} morphisms")]
    TooLarge(usize),
}

/// A failed category law, as found by [`FinCategory::validate`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CategoryViolation {
    #[error("left identity fails: {id} . {f} = {got}")]
    LeftIdentity { id: String, f: String, got: String },
    #[error("right identity fails: {f} . {id} = {got}")]
    RightIdentity { f: String, id: String, got: String },
    #[error("associativity fails at ({h}, {g}, {f}): ({h} . {g}) . {f} = {left} but {h} . ({g} . {f}) = {right}")]
    Associativity { h: String, g: String, f: String, left: String, right: String },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinCategory {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    identity: Vec<MorId>,
    /// `comp[g * n + f]` is `g . f` when `tgt f == src g`.
    comp: Vec<Option<MorId>>,
    /// Hom-sets indexed `x * |Ob| + y`, sorted by id.
    homs: Vec<Vec<MorId>>,
    /// Morphisms with a given target, sorted by id.
    into_cache: Vec<Vec<MorId>>,
    obj_index: BTreeMap<String, ObjId>,
    mor_index: BTreeMap<String, MorId>,
}

impl FinCategory {
    pub fn num_objects(&self) -> usize {
        self.obj_names.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.mor_names.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjId> + Clone {
        (0..self.obj_names.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = MorId> + Clone {
        (0..self.mor_names.len()).map(MorId)
    }

    #[inline]
    pub fn src(&self, f: MorId) -> ObjId {
        self.src[f.0]
    }

    #[inline]
    pub fn tgt(&self, f: MorId) -> ObjId {
        self.tgt[f.0]
    }

    #[inline]
    pub fn id(&self, x: ObjId) -> MorId {
        self.identity[x.0]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.src[f.0].0] == f
    }

    /// `g . f`, if composable.
    #[inline]
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.comp[g.0 * self.mor_names.len() + f.0]
    }

    /// `g . f`; panics unless `tgt f == src g`.
    #[inline]
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f).unwrap_or_else(|| panic!("{} . {} is not composable", self.mor_name(g), self.mor_name(f)))
    }

    /// Composite of `fs[0] . fs[1] . ... . fs[n-1]`; `None` on an empty list.
    pub fn comp_chain(&self, fs: &[MorId]) -> Option<MorId> {
        let (&last, rest) = fs.split_last()?;
        rest.iter().rev().try_fold(last, |acc, &g| self.compose(g, acc))
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.homs[x.0 * self.obj_names.len() + y.0]
    }

    pub fn obj_name(&self, x: ObjId) -> &str {
        &self.obj_names[x.0]
    }

    pub fn mor_name(&self, f: MorId) -> &str {
        &self.mor_names[f.0]
    }

    pub fn obj_by_name(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn mor_by_name(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    /// Some two-sided inverse of `f`.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (x, y) = (self.src(f), self.tgt(f));
        self.hom(y, x).iter().copied().find(|&g| self.comp(g, f) == self.id(x) && self.comp(f, g) == self.id(y))
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    /// Whether every hom-set has at most one element.
    pub fn is_preorder(&self) -> bool {
        self.homs.iter().all(|h| h.len() <= 1)
    }

    /// Checks the identity and associativity laws.
    ///
    /// Triples are visited in lexicographic order of `(h, g, f)`, so the
    /// report names the first failing one in that order.
    pub fn validate(&self) -> Result<(), CategoryViolation> {
        for f in self.morphisms() {
            let left = self.comp(self.id(self.tgt(f)), f);
            if left != f {
                return Err(CategoryViolation::LeftIdentity {
                    id: self.mor_name(self.id(self.tgt(f))).to_string(),
                    f: self.mor_name(f).to_string(),
                    got: self.mor_name(left).to_string(),
                });
            }
            let right = self.comp(f, self.id(self.src(f)));
            if right != f {
                return Err(CategoryViolation::RightIdentity {
                    f: self.mor_name(f).to_string(),
                    id: self.mor_name(self.id(self.src(f))).to_string(),
                    got: self.mor_name(right).to_string(),
                });
            }
        }
        for h in self.morphisms() {
            for g in self.morphisms() {
                let Some(hg) = self.compose(h, g) else { continue };
                for &f in self.hom_into(self.src(g)) {
                    let gf = self.comp(g, f);
                    let (left, right) = (self.comp(hg, f), self.comp(h, gf));
                    if left != right {
                        return Err(CategoryViolation::Associativity {
                            h: self.mor_name(h).to_string(),
                            g: self.mor_name(g).to_string(),
                            f: self.mor_name(f).to_string(),
                            left: self.mor_name(left).to_string(),
                            right: self.mor_name(right).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// All morphisms with target `y`, sorted by id.
    pub fn hom_into(&self, y: ObjId) -> &[MorId] {
        &self.into_cache[y.0]
    }
}

/// Incremental constructor for [`FinCategory`].
///
/// Every object gets an identity named `id_X`. Composites with an identity
/// are implicit; all other composable pairs must be given.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    identity: Vec<MorId>,
    comp: BTreeMap<(MorId, MorId), MorId>,
    obj_index: BTreeMap<String, ObjId>,
    mor_index: BTreeMap<String, MorId>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an object and its identity `id_<name>`.
    pub fn object(&mut self, name: &str) -> Result<ObjId, CategoryError> {
        self.object_with_identity(name, &format!("id_{name}"))
    }

    pub fn object_with_identity(&mut self, name: &str, id_name: &str) -> Result<ObjId, CategoryError> {
        if self.obj_index.contains_key(name) {
            return Err(CategoryError::DuplicateObject(name.to_string()));
        }
        if self.mor_index.contains_key(id_name) {
            return Err(CategoryError::DuplicateMorphism(id_name.to_string()));
        }
        let x = ObjId(self.obj_names.len());
        self.obj_names.push(name.to_string());
        self.obj_index.insert(name.to_string(), x);
        let id = self.push_mor(id_name, x, x);
        self.identity.push(id);
        Ok(x)
    }

    fn push_mor(&mut self, name: &str, s: ObjId, t: ObjId) -> MorId {
        let f = MorId(self.mor_names.len());
        self.mor_names.push(name.to_string());
        self.mor_index.insert(name.to_string(), f);
        self.src.push(s);
        self.tgt.push(t);
        f
    }

    pub fn morphism(&mut self, name: &str, s: ObjId, t: ObjId) -> Result<MorId, CategoryError> {
        if self.mor_index.contains_key(name) {
            return Err(CategoryError::DuplicateMorphism(name.to_string()));
        }
        Ok(self.push_mor(name, s, t))
    }

    pub fn obj_by_name(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn mor_by_name(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn id(&self, x: ObjId) -> MorId {
        self.identity[x.0]
    }

    /// Records `g . f = h`.
    pub fn compose(&mut self, g: MorId, f: MorId, h: MorId) -> Result<(), CategoryError> {
        let name = |m: MorId| self.mor_names[m.0].clone();
        if self.tgt[f.0] != self.src[g.0] {
            return Err(CategoryError::NotComposable { g: name(g), f: name(f) });
        }
        if self.src[h.0] != self.src[f.0] || self.tgt[h.0] != self.tgt[g.0] {
            return Err(CategoryError::CompositeType { g: name(g), f: name(f), h: name(h) });
        }
        match self.comp.get(&(g, f)) {
            Some(&old) if old != h => {
                Err(CategoryError::ConflictingComposite { g: name(g), f: name(f), first: name(old), second: name(h) })
            }
            _ => {
                self.comp.insert((g, f), h);
                Ok(())
            }
        }
    }

    pub fn compose_by_name(&mut self, g: &str, f: &str, h: &str) -> Result<(), CategoryError> {
        let look = |n: &str| self.mor_by_name(n).ok_or_else(|| CategoryError::UnknownMorphism(n.to_string()));
        let (g, f, h) = (look(g)?, look(f)?, look(h)?);
        self.compose(g, f, h)
    }

    pub fn build(self) -> Result<FinCategory, CategoryError> {
        let n_obj = self.obj_names.len();
        if n_obj == 0 {
            return Err(CategoryError::NoObjects);
        }
        let n = self.mor_names.len();
        if n > 1 << 15 {
            return Err(CategoryError::TooLarge(n));
        }
        let mut comp = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                if self.tgt[f] != self.src[g] {
                    continue;
                }
                let (gm, fm) = (MorId(g), MorId(f));
                let h = match self.comp.get(&(gm, fm)) {
                    Some(&h) => h,
                    None if self.identity[self.src[g].0] == gm => fm,
                    None if self.identity[self.tgt[f].0] == fm => gm,
                    None => {
                        return Err(CategoryError::MissingComposite {
                            g: self.mor_names[g].clone(),
                            f: self.mor_names[f].clone(),
                        })
                    }
                };
                comp[g * n + f] = Some(h);
            }
        }
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        let mut into_cache = vec![Vec::new(); n_obj];
        for f in 0..n {
            homs[self.src[f].0 * n_obj + self.tgt[f].0].push(MorId(f));
            into_cache[self.tgt[f].0].push(MorId(f));
        }
        Ok(FinCategory {
            obj_names: self.obj_names,
            mor_names: self.mor_names,
            src: self.src,
            tgt: self.tgt,
            identity: self.identity,
            comp,
            homs,
            into_cache,
            obj_index: self.obj_index,
            mor_index: self.mor_index,
        })
    }
}

impl fmt::Display for FinCategory {
    /// Writes the category in the line-oriented file syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("objects:")?;
        for x in self.objects() {
            write!(f, " {}", self.obj_name(x))?;
        }
        f.write_str("\n")?;
        for m in self.morphisms().filter(|&m| !self.is_identity(m)) {
            writeln!(f, "mor {} : {} -> {}", self.mor_name(m), self.obj_name(self.src(m)), self.obj_name(self.tgt(m)))?;
        }
        for g in self.morphisms().filter(|&m| !self.is_identity(m)) {
            for h in self.morphisms().filter(|&m| !self.is_identity(m)) {
                if let Some(c) = self.compose(g, h) {
                    writeln!(f, "compose {} {} = {}", self.mor_name(g), self.mor_name(h), self.mor_name(c))?;
                }
            }
        }
        Ok(())
    }
}
