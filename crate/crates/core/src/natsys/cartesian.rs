use alloc::vec::Vec;

use super::{NatSysError, NaturalSystem};
use crate::abelian::{direct_sum, GroupHom, IntMatrix};
use crate::fincat::{CCStructure, MorId, ObjId};

/// Which condition a verdict refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Condition {
    /// `D_f = 0` for `f` into the terminal object.
    Terminal,
    /// `xi -> (p1_* xi, p2_* xi)` is bijective for `f` into the chosen `X x Y`.
    Product { x: ObjId, y: ObjId },
    /// `xi -> ev_* phi_h(xi, 0)` is bijective for `h : X -> Z^Y`.
    Exponential { x: ObjId, y: ObjId, z: ObjId },
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub morphism: MorId,
    pub condition: Condition,
    pub holds: bool,
    /// The map that was tested, kept when it fails.
    pub failing_map: Option<GroupHom>,
}

#[derive(Clone, Debug, Default)]
pub struct CartesianReport {
    pub verdicts: Vec<Verdict>,
}

impl CartesianReport {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.holds)
    }
}

fn verdict(morphism: MorId, condition: Condition, map: GroupHom, holds: bool) -> Verdict {
    Verdict { morphism, condition, holds, failing_map: if holds { None } else { Some(map) } }
}

/// The map `D_f -> D_(p1 f) + D_(p2 f)`.
fn product_map(d: &NaturalSystem, p1: MorId, p2: MorId, f: MorId) -> GroupHom {
    let c = d.base();
    let (f1, f2) = (c.comp(p1, f), c.comp(p2, f));
    let sum = direct_sum(&[d.value(f1).clone(), d.value(f2).clone()]);
    let m = d.post_matrix(p1, f).vcat(d.post_matrix(p2, f));
    GroupHom::new(d.value(f).clone(), sum.group, m).expect("stacked maps are well defined")
}

/// Checks the nullary and binary conditions for every recorded cone.
pub fn is_cartesian(d: &NaturalSystem, s: &CCStructure) -> CartesianReport {
    let c = d.base();
    let mut verdicts = Vec::new();
    if let Some(t) = s.terminal() {
        for x in c.objects() {
            for &f in c.hom(x, t) {
                let g = d.value(f);
                let map = GroupHom::identity(g);
                verdicts.push(verdict(f, Condition::Terminal, map, g.is_trivial()));
            }
        }
    }
    for ((x, y), p) in s.products() {
        for w in c.objects() {
            for &f in c.hom(w, p.object) {
                let map = product_map(d, p.p1, p.p2, f);
                let ok = map.is_isomorphism();
                verdicts.push(verdict(f, Condition::Product { x, y }, map, ok));
            }
        }
    }
    CartesianReport { verdicts }
}

/// For every recorded exponential `Z^Y` and every `h : X -> Z^Y` with `X x Y`
/// recorded, tests bijectivity of
/// `D_h -> D_(h.p1) -> D_(h x 1) -> D_(ev.(h x 1))`, where the middle step
/// inverts the cartesian map of `E x Y` at `h x 1` on `(xi, 0)`.
pub fn is_cartesian_closed(d: &NaturalSystem, s: &CCStructure) -> Result<CartesianReport, NatSysError> {
    if !is_cartesian(d, s).holds() {
        return Err(NatSysError::NotCartesian);
    }
    let c = d.base();
    let mut verdicts = Vec::new();
    for ((y, z), e) in s.exponentials() {
        let pey = *s.product(e.object, y).ok_or(NatSysError::NotCartesian)?;
        for x in c.objects() {
            let Some(&pxy) = s.product(x, y) else { continue };
            for &h in c.hom(x, e.object) {
                let h1 = s.product_map(c, h, c.id(y)).map_err(|_| NatSysError::NotCartesian)?;
                // D_h -> D_(h . p1)
                let pull = d.pre_matrix(pxy.p1, h);
                let iso = product_map(d, pey.p1, pey.p2, h1);
                let inv = iso.inverse().ok_or(NatSysError::NotCartesian)?;
                let first = d.value(c.comp(pey.p1, h1)).ngens();
                let second = d.value(c.comp(pey.p2, h1)).ngens();
                // (xi, 0) in the direct sum
                let include = IntMatrix::identity(first).vcat(&IntMatrix::zeros(second, first));
                let phi = inv.matrix().mul(&include).mul(pull);
                let m = d.post_matrix(e.ev, h1).mul(&phi);
                let map = GroupHom::new(d.value(h).clone(), d.value(c.comp(e.ev, h1)).clone(), m)
                    .expect("composite of homomorphisms");
                let ok = map.is_isomorphism();
                verdicts.push(verdict(h, Condition::Exponential { x, y, z }, map, ok));
            }
        }
    }
    Ok(CartesianReport { verdicts })
}
