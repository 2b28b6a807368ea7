use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::{FiniteSystem, LinExtError, TwoCochain, DEFAULT_MAX_FIBER};
use crate::abelian::Lattice;
use crate::bwcoh::{bw_complex, BWOptions};
use crate::fincat::MorId;
use crate::natsys::NaturalSystem;

/// Equivalence classes of extensions of `C` by `D`.
#[derive(Clone, Debug)]
pub struct Classification {
    pub count: usize,
    /// One cocycle per class, the lexicographically least in its class.
    pub representatives: Vec<TwoCochain>,
    pub cocycles: usize,
    pub coboundaries: usize,
}

/// Steps a mixed-radix counter; false once it wraps around.
fn step(digits: &mut [usize], radix: &[usize]) -> bool {
    for (d, &r) in digits.iter_mut().zip(radix).rev() {
        *d += 1;
        if *d < r {
            return true;
        }
        *d = 0;
    }
    false
}

/// Enumerates normalized 2-cocycles and quotients by normalized coboundaries.
///
/// `limit` bounds both the number of candidate 2-cochains and of 1-cochains.
pub fn classify(d: &NaturalSystem, limit: u128) -> Result<Classification, LinExtError> {
    let fin = FiniteSystem::new(d, DEFAULT_MAX_FIBER)?;
    let c = d.base();
    let pairs = fin.pairs();
    let radix: Vec<usize> = pairs.iter().map(|&(f, g)| fin.order(c.comp(f, g))).collect();
    let space = radix.iter().fold(1u128, |a, &r| a.saturating_mul(r as u128));
    if space > limit {
        return Err(LinExtError::TooLarge(space));
    }
    let movers: Vec<MorId> = c.morphisms().filter(|&f| !c.is_identity(f)).collect();
    let radix1: Vec<usize> = movers.iter().map(|&f| fin.order(f)).collect();
    let space1 = radix1.iter().fold(1u128, |a, &r| a.saturating_mul(r as u128));
    if space1 > limit {
        return Err(LinExtError::TooLarge(space1));
    }
    // coboundaries δb(f, g) = f_* b(g) - b(fg) + g^* b(f)
    let mut bounds: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut b = vec![0usize; movers.len()];
    let mut bval = vec![0usize; c.num_morphisms()];
    loop {
        for (k, &f) in movers.iter().enumerate() {
            bval[f.0] = b[k];
        }
        let v: Vec<usize> = pairs
            .iter()
            .map(|&(f, g)| {
                let fg = c.comp(f, g);
                let x = fin.post(f, g, bval[g.0]);
                let x = fin.sub(fg, x, bval[fg.0]);
                fin.add(fg, x, fin.pre(g, f, bval[f.0]))
            })
            .collect();
        bounds.insert(v);
        if !step(&mut b, &radix1) {
            break;
        }
    }
    let bounds: Vec<Vec<usize>> = bounds.into_iter().collect();

    let mut keys: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut z = vec![0usize; pairs.len()];
    let mut ncocycles = 0;
    loop {
        let cv: BTreeMap<(MorId, MorId), usize> =
            pairs.iter().zip(&z).filter(|(_, &x)| x != 0).map(|(&p, &x)| (p, x)).collect();
        if fin.cocycle_failure(&cv).is_none() {
            ncocycles += 1;
            let key = bounds
                .iter()
                .map(|beta| {
                    pairs
                        .iter()
                        .enumerate()
                        .map(|(i, &(f, g))| fin.add(c.comp(f, g), z[i], beta[i]))
                        .collect::<Vec<usize>>()
                })
                .min()
                .expect("zero is a coboundary");
            keys.insert(key);
        }
        if !step(&mut z, &radix) {
            break;
        }
    }
    let representatives = keys.iter().map(|k| fin.cochain_from_indices(&pairs, k)).collect();
    Ok(Classification { count: keys.len(), representatives, cocycles: ncocycles, coboundaries: bounds.len() })
}

/// Whether two normalized cocycles differ by a coboundary, decided by a
/// lattice membership test in the normalized complex.
pub fn are_equivalent(d: &NaturalSystem, c1: &TwoCochain, c2: &TwoCochain) -> Result<bool, LinExtError> {
    let cx = bw_complex(d, 2, BWOptions::default()).map_err(|_| LinExtError::TooLarge(0))?;
    let v1 = cx.cochain_vector(2, &c1.as_chains());
    let v2 = cx.cochain_vector(2, &c2.as_chains());
    let diff: Vec<_> = v1.iter().zip(&v2).map(|(a, b)| a - b).collect();
    let delta = cx.complex().differentials()[1].matrix();
    let rel = cx.complex().group(2).relations().clone();
    Ok(Lattice::spanned_by(&delta.hcat(&rel)).contains(&diff))
}
