use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{FinCategory, MorId, ObjId};

/// A chosen product cone `X <- P -> Y`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Product {
    pub object: ObjId,
    pub p1: MorId,
    pub p2: MorId,
}

/// A chosen exponential `E = Z^Y` with `ev : E x Y -> Z`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Exponential {
    pub object: ObjId,
    pub ev: MorId,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("no terminal object chosen")]
    NoTerminal,
    #[error("`{object}` has {count} maps into the terminal object")]
    NotTerminal { object: String, count: usize },
    #[error("no product chosen for ({0}, {1})")]
    NoProduct(String, String),
    #[error("no exponential chosen for ({0}, {1})")]
    NoExponential(String, String),
    #[error("projections of the product ({0}, {1}) have the wrong type")]
    ProjectionType(String, String),
    #[error("evaluation of the exponential ({0}, {1}) has the wrong type")]
    EvalType(String, String),
    #[error("product ({x}, {y}): {count} mediating morphisms for <{f1}, {f2}>")]
    Mediating { x: String, y: String, f1: String, f2: String, count: usize },
    #[error("exponential ({y}, {z}): {count} transposes of `{f}`")]
    Transpose { y: String, z: String, f: String, count: usize },
    #[error("morphism `{0}` has the wrong type")]
    WrongType(String),
}

/// Chosen finite-product and exponential structure on a finite category.
///
/// The structure may be partial: only the recorded cones are checked, and
/// exponential transposes are checked for those `X` whose product with the
/// exponent is recorded.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct CCStructure {
    terminal: Option<ObjId>,
    products: BTreeMap<(ObjId, ObjId), Product>,
    exponentials: BTreeMap<(ObjId, ObjId), Exponential>,
}

fn name(c: &FinCategory, f: MorId) -> String {
    c.mor_name(f).to_string()
}

fn oname(c: &FinCategory, x: ObjId) -> String {
    c.obj_name(x).to_string()
}

impl CCStructure {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_terminal(&mut self, x: ObjId) {
        self.terminal = Some(x);
    }

    pub fn add_product(&mut self, x: ObjId, y: ObjId, p: Product) {
        self.products.insert((x, y), p);
    }

    /// Records `Z^Y`.
    pub fn add_exponential(&mut self, y: ObjId, z: ObjId, e: Exponential) {
        self.exponentials.insert((y, z), e);
    }

    pub fn terminal(&self) -> Option<ObjId> {
        self.terminal
    }

    pub fn product(&self, x: ObjId, y: ObjId) -> Option<&Product> {
        self.products.get(&(x, y))
    }

    pub fn exponential(&self, y: ObjId, z: ObjId) -> Option<&Exponential> {
        self.exponentials.get(&(y, z))
    }

    pub fn products(&self) -> impl Iterator<Item = ((ObjId, ObjId), &Product)> {
        self.products.iter().map(|(k, v)| (*k, v))
    }

    pub fn exponentials(&self) -> impl Iterator<Item = ((ObjId, ObjId), &Exponential)> {
        self.exponentials.iter().map(|(k, v)| (*k, v))
    }

    /// The map `X -> 1`, when it exists.
    pub fn bang(&self, c: &FinCategory, x: ObjId) -> Result<MorId, StructureError> {
        let t = self.terminal.ok_or(StructureError::NoTerminal)?;
        c.hom(x, t).first().copied().ok_or_else(|| StructureError::NotTerminal { object: oname(c, x), count: 0 })
    }

    fn product_or_err(&self, c: &FinCategory, x: ObjId, y: ObjId) -> Result<&Product, StructureError> {
        self.product(x, y).ok_or_else(|| StructureError::NoProduct(oname(c, x), oname(c, y)))
    }

    fn mediating(&self, c: &FinCategory, p: &Product, f1: MorId, f2: MorId) -> Vec<MorId> {
        c.hom(c.src(f1), p.object).iter().copied().filter(|&h| c.comp(p.p1, h) == f1 && c.comp(p.p2, h) == f2).collect()
    }

    /// The unique `h` with `p1 . h = f1` and `p2 . h = f2`.
    pub fn pairing(&self, c: &FinCategory, x: ObjId, y: ObjId, f1: MorId, f2: MorId) -> Result<MorId, StructureError> {
        let p = self.product_or_err(c, x, y)?;
        if c.tgt(f1) != x || c.tgt(f2) != y || c.src(f1) != c.src(f2) {
            return Err(StructureError::WrongType(alloc::format!("<{}, {}>", name(c, f1), name(c, f2))));
        }
        match self.mediating(c, p, f1, f2).as_slice() {
            [h] => Ok(*h),
            hs => Err(StructureError::Mediating {
                x: oname(c, x),
                y: oname(c, y),
                f1: name(c, f1),
                f2: name(c, f2),
                count: hs.len(),
            }),
        }
    }

    /// `h x k : W x V -> X x Y` using the chosen products at both ends.
    pub fn product_map(&self, c: &FinCategory, h: MorId, k: MorId) -> Result<MorId, StructureError> {
        let (w, v) = (c.src(h), c.src(k));
        let (x, y) = (c.tgt(h), c.tgt(k));
        let pwv = *self.product_or_err(c, w, v)?;
        self.pairing(c, x, y, c.comp(h, pwv.p1), c.comp(k, pwv.p2))
    }

    /// The unique `h : X -> Z^Y` with `ev . (h x id_Y) = f` for `f : X x Y -> Z`.
    pub fn lambda(&self, c: &FinCategory, x: ObjId, y: ObjId, f: MorId) -> Result<MorId, StructureError> {
        let z = c.tgt(f);
        let pxy = *self.product_or_err(c, x, y)?;
        if c.src(f) != pxy.object {
            return Err(StructureError::WrongType(name(c, f)));
        }
        let e = *self.exponential(y, z).ok_or_else(|| StructureError::NoExponential(oname(c, y), oname(c, z)))?;
        let mut found = Vec::new();
        for &h in c.hom(x, e.object) {
            let h1 = self.product_map(c, h, c.id(y))?;
            if c.comp(e.ev, h1) == f {
                found.push(h);
            }
        }
        match found.as_slice() {
            [h] => Ok(*h),
            hs => Err(StructureError::Transpose { y: oname(c, y), z: oname(c, z), f: name(c, f), count: hs.len() }),
        }
    }

    pub fn validate_terminal(&self, c: &FinCategory) -> Result<(), StructureError> {
        let Some(t) = self.terminal else { return Ok(()) };
        for x in c.objects() {
            let n = c.hom(x, t).len();
            if n != 1 {
                return Err(StructureError::NotTerminal { object: oname(c, x), count: n });
            }
        }
        Ok(())
    }

    pub fn validate_products(&self, c: &FinCategory) -> Result<(), StructureError> {
        for (&(x, y), p) in &self.products {
            if c.src(p.p1) != p.object || c.tgt(p.p1) != x || c.src(p.p2) != p.object || c.tgt(p.p2) != y {
                return Err(StructureError::ProjectionType(oname(c, x), oname(c, y)));
            }
            for w in c.objects() {
                for &f1 in c.hom(w, x) {
                    for &f2 in c.hom(w, y) {
                        let n = self.mediating(c, p, f1, f2).len();
                        if n != 1 {
                            return Err(StructureError::Mediating {
                                x: oname(c, x),
                                y: oname(c, y),
                                f1: name(c, f1),
                                f2: name(c, f2),
                                count: n,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Assumes the products are valid.
    pub fn validate_exponentials(&self, c: &FinCategory) -> Result<(), StructureError> {
        for (&(y, z), e) in &self.exponentials {
            let pey =
                self.product(e.object, y).ok_or_else(|| StructureError::NoProduct(oname(c, e.object), oname(c, y)))?;
            if c.src(e.ev) != pey.object || c.tgt(e.ev) != z {
                return Err(StructureError::EvalType(oname(c, y), oname(c, z)));
            }
            for x in c.objects() {
                let Some(pxy) = self.product(x, y) else { continue };
                for &f in c.hom(pxy.object, z) {
                    self.lambda(c, x, y, f)?;
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self, c: &FinCategory) -> Result<(), StructureError> {
        self.validate_terminal(c)?;
        self.validate_products(c)?;
        self.validate_exponentials(c)
    }

    /// Whether terminal, all binary products and all exponentials are chosen.
    pub fn is_complete(&self, c: &FinCategory) -> bool {
        let n = c.num_objects();
        self.terminal.is_some() && self.products.len() == n * n && self.exponentials.len() == n * n
    }
}
