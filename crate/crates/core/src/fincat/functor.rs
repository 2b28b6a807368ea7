use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{FinCategory, MorId, ObjId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctorError {
    #[error("object map has {found} entries, expected {expected}")]
    ObjectMapSize { expected: usize, found: usize },
    #[error("morphism map has {found} entries, expected {expected}")]
    MorphismMapSize { expected: usize, found: usize },
    #[error("image of `{0}` has the wrong source or target")]
    Endpoints(String),
    #[error("identity of `{0}` is not preserved")]
    Identity(String),
    #[error("composite `{g}` . `{f}` is not preserved")]
    Composition { g: String, f: String },
    #[error("functor is not an equivalence: {0}")]
    NotEquivalence(&'static str),
}

/// A functor between finite categories, stored as index maps.
#[derive(Clone, Debug)]
pub struct FinFunctor {
    src: FinCategory,
    dst: FinCategory,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

impl FinFunctor {
    /// Checks endpoints, identities and composition.
    pub fn new(
        src: FinCategory,
        dst: FinCategory,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<Self, FunctorError> {
        if obj_map.len() != src.num_objects() {
            return Err(FunctorError::ObjectMapSize { expected: src.num_objects(), found: obj_map.len() });
        }
        if mor_map.len() != src.num_morphisms() {
            return Err(FunctorError::MorphismMapSize { expected: src.num_morphisms(), found: mor_map.len() });
        }
        for f in src.morphisms() {
            let ff = mor_map[f.0];
            if dst.src(ff) != obj_map[src.src(f).0] || dst.tgt(ff) != obj_map[src.tgt(f).0] {
                return Err(FunctorError::Endpoints(src.mor_name(f).to_string()));
            }
        }
        for x in src.objects() {
            if mor_map[src.id(x).0] != dst.id(obj_map[x.0]) {
                return Err(FunctorError::Identity(src.obj_name(x).to_string()));
            }
        }
        for g in src.morphisms() {
            for &f in src.hom_into(src.src(g)) {
                if mor_map[src.comp(g, f).0] != dst.comp(mor_map[g.0], mor_map[f.0]) {
                    return Err(FunctorError::Composition {
                        g: src.mor_name(g).to_string(),
                        f: src.mor_name(f).to_string(),
                    });
                }
            }
        }
        Ok(FinFunctor { src, dst, obj_map, mor_map })
    }

    pub fn identity(c: &FinCategory) -> Self {
        FinFunctor { src: c.clone(), dst: c.clone(), obj_map: c.objects().collect(), mor_map: c.morphisms().collect() }
    }

    pub fn src(&self) -> &FinCategory {
        &self.src
    }

    pub fn dst(&self) -> &FinCategory {
        &self.dst
    }

    #[inline]
    pub fn obj(&self, x: ObjId) -> ObjId {
        self.obj_map[x.0]
    }

    #[inline]
    pub fn mor(&self, f: MorId) -> MorId {
        self.mor_map[f.0]
    }

    pub fn obj_map(&self) -> &[ObjId] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[MorId] {
        &self.mor_map
    }

    /// `other . self`.
    pub fn then(&self, other: &FinFunctor) -> Option<FinFunctor> {
        if other.src != self.dst {
            return None;
        }
        Some(FinFunctor {
            src: self.src.clone(),
            dst: other.dst.clone(),
            obj_map: self.obj_map.iter().map(|&x| other.obj(x)).collect(),
            mor_map: self.mor_map.iter().map(|&f| other.mor(f)).collect(),
        })
    }

    pub fn is_identity_on_objects(&self) -> bool {
        self.src.num_objects() == self.dst.num_objects() && self.obj_map.iter().enumerate().all(|(i, x)| x.0 == i)
    }

    fn hom_image(&self, x: ObjId, y: ObjId) -> (usize, Vec<MorId>) {
        let mut img: Vec<MorId> = self.src.hom(x, y).iter().map(|&f| self.mor(f)).collect();
        img.sort();
        img.dedup();
        (self.src.hom(x, y).len(), img)
    }

    pub fn is_faithful(&self) -> bool {
        self.src.objects().all(|x| {
            self.src.objects().all(|y| {
                let (n, img) = self.hom_image(x, y);
                img.len() == n
            })
        })
    }

    pub fn is_full(&self) -> bool {
        self.src.objects().all(|x| {
            self.src.objects().all(|y| {
                let (_, img) = self.hom_image(x, y);
                img.len() == self.dst.hom(self.obj(x), self.obj(y)).len()
            })
        })
    }

    /// Every object of `dst` is isomorphic to an image object.
    pub fn is_essentially_surjective(&self) -> bool {
        self.dst
            .objects()
            .all(|z| self.obj_map.iter().any(|&x| x == z || self.dst.hom(x, z).iter().any(|&f| self.dst.is_iso(f))))
    }

    pub fn check_equivalence(&self) -> Result<(), FunctorError> {
        if !self.is_faithful() {
            return Err(FunctorError::NotEquivalence("not faithful"));
        }
        if !self.is_full() {
            return Err(FunctorError::NotEquivalence("not full"));
        }
        if !self.is_essentially_surjective() {
            return Err(FunctorError::NotEquivalence("not essentially surjective"));
        }
        Ok(())
    }
}
