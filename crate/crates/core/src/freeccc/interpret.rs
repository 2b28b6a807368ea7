use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};

use super::{typecheck, CCSignature, FreeCccError, MorExpr, ObjExpr};
use crate::fincat::{CCStructure, FinCategory, MorId, ObjId, StructureError};

/// Sorts and generators sent into a finite category with chosen structure.
#[derive(Clone, Debug)]
pub struct Interpretation<'a> {
    pub category: &'a FinCategory,
    pub structure: &'a CCStructure,
    pub objects: BTreeMap<String, ObjId>,
    pub generators: BTreeMap<String, MorId>,
}

/// The object denoted by `o`, using the chosen terminal, products and exponentials.
pub fn translate_object(
    s: &CCStructure,
    objects: &BTreeMap<String, ObjId>,
    o: &ObjExpr,
) -> Result<ObjId, FreeCccError> {
    Ok(match o {
        ObjExpr::Sort(n) => *objects.get(n).ok_or_else(|| FreeCccError::MissingObject(n.clone()))?,
        ObjExpr::Unit => s.terminal().ok_or(StructureError::NoTerminal)?,
        ObjExpr::Prod(a, b) => {
            let (x, y) = (translate_object(s, objects, a)?, translate_object(s, objects, b)?);
            s.product(x, y).ok_or_else(|| FreeCccError::MissingObject(o.to_string()))?.object
        }
        ObjExpr::Exp(z, y) => {
            let (zz, yy) = (translate_object(s, objects, z)?, translate_object(s, objects, y)?);
            s.exponential(yy, zz).ok_or_else(|| FreeCccError::MissingObject(o.to_string()))?.object
        }
    })
}

impl Interpretation<'_> {
    pub fn object(&self, o: &ObjExpr) -> Result<ObjId, FreeCccError> {
        translate_object(self.structure, &self.objects, o)
    }

    /// Every generator is assigned a morphism between the translated ends.
    pub fn check(&self, sig: &CCSignature) -> Result<(), FreeCccError> {
        let c = self.category;
        for g in &sig.generators {
            let m = *self.generators.get(&g.name).ok_or_else(|| FreeCccError::UnknownGenerator(g.name.clone()))?;
            if m.0 >= c.num_morphisms() || c.src(m) != self.object(&g.src)? || c.tgt(m) != self.object(&g.tgt)? {
                return Err(FreeCccError::AssignmentType(g.name.clone()));
            }
        }
        Ok(())
    }

    fn morphism(&self, sig: &CCSignature, e: &MorExpr) -> Result<MorId, FreeCccError> {
        let (c, s) = (self.category, self.structure);
        let prod = |a: &ObjExpr, b: &ObjExpr| -> Result<crate::fincat::Product, FreeCccError> {
            let (x, y) = (self.object(a)?, self.object(b)?);
            s.product(x, y)
                .copied()
                .ok_or_else(|| FreeCccError::MissingObject(ObjExpr::prod(a.clone(), b.clone()).to_string()))
        };
        Ok(match e {
            MorExpr::Gen(n) => self.generators[n],
            MorExpr::Id(a) => c.id(self.object(a)?),
            MorExpr::Bang(a) => s.bang(c, self.object(a)?)?,
            MorExpr::Proj1(a, b) => prod(a, b)?.p1,
            MorExpr::Proj2(a, b) => prod(a, b)?.p2,
            MorExpr::Ev(y, z) => {
                let (yy, zz) = (self.object(y)?, self.object(z)?);
                s.exponential(yy, zz)
                    .ok_or_else(|| FreeCccError::MissingObject(ObjExpr::exp(z.clone(), y.clone()).to_string()))?
                    .ev
            }
            MorExpr::Comp(g, f) => {
                let (gm, fm) = (self.morphism(sig, g)?, self.morphism(sig, f)?);
                c.compose(gm, fm).ok_or_else(|| FreeCccError::AssignmentType(e.to_string()))?
            }
            MorExpr::Pair(f, g) => {
                let (fm, gm) = (self.morphism(sig, f)?, self.morphism(sig, g)?);
                s.pairing(c, c.tgt(fm), c.tgt(gm), fm, gm)?
            }
            MorExpr::Curry(f) => {
                let (ObjExpr::Prod(x, y), _) = typecheck(sig, f)? else {
                    return Err(FreeCccError::CurryNotProduct(f.to_string()));
                };
                let fm = self.morphism(sig, f)?;
                s.lambda(c, self.object(&x)?, self.object(&y)?, fm)?
            }
        })
    }
}

/// The morphism denoted by `e` under the unique structure-preserving
/// extension of the generator assignment.
pub fn interpret(sig: &CCSignature, interp: &Interpretation<'_>, e: &MorExpr) -> Result<MorId, FreeCccError> {
    interp.check(sig)?;
    typecheck(sig, e)?;
    interp.morphism(sig, e)
}
