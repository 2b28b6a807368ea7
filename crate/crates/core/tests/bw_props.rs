mod common;

use catcoh_core::abelian::Int;
use catcoh_core::bwcoh::{bw_complex, BWOptions};
use catcoh_core::der::ker_delta1_decomposition;
use catcoh_core::fincat::MorId;
use catcoh_core::linext::{are_equivalent, classify, LinExtError};
use catcoh_core::natsys::NaturalSystem;
use common::{random_concrete, random_dag, weighted_system, Tape};
use proptest::prelude::*;

const MODULI: [u64; 5] = [0, 2, 3, 4, 6];

fn assert_complex(d: &NaturalSystem, nmax: usize, opts: BWOptions) -> Result<(), TestCaseError> {
    let bw = bw_complex(d, nmax, opts).unwrap();
    let ds = bw.complex().differentials();
    for w in ds.windows(2) {
        prop_assert!(w[1].compose(&w[0]).unwrap().is_zero());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn free_categories_have_no_higher_cohomology(bytes in prop::collection::vec(any::<u8>(), 40)) {
        let mut t = Tape::new(bytes);
        let (c, edges) = random_dag(&mut t, 4, 4);
        let m = MODULI[t.below(MODULI.len())];
        let d = weighted_system(&c, &edges, m, &mut t);
        prop_assert!(d.validate().is_ok());
        assert_complex(&d, 3, BWOptions::default())?;
        let bw = bw_complex(&d, 4, BWOptions::default()).unwrap();
        prop_assert!(bw.cohomology(2).is_trivial());
        prop_assert!(bw.cohomology(3).is_trivial());
    }

    #[test]
    fn decomposition_on_random_free_categories(bytes in prop::collection::vec(any::<u8>(), 40)) {
        let mut t = Tape::new(bytes);
        let (c, edges) = random_dag(&mut t, 4, 4);
        let m = MODULI[t.below(MODULI.len())];
        let d = weighted_system(&c, &edges, m, &mut t);
        let ids: Vec<MorId> = edges.iter().map(|e| c.mor_by_name(e).unwrap()).collect();
        let split = t.below(ids.len() + 1);
        let dec = ker_delta1_decomposition(&d, &ids[..split], &ids[split..]).unwrap();
        prop_assert!(dec.holds(), "{:?}", dec);
    }

    #[test]
    fn concrete_categories_give_complexes(bytes in prop::collection::vec(any::<u8>(), 30)) {
        let mut t = Tape::new(bytes);
        let Some(c) = random_concrete(&mut t, 12) else { return Ok(()) };
        prop_assert!(c.validate().is_ok());
        let m = MODULI[1 + t.below(MODULI.len() - 1)];
        let d = NaturalSystem::constant(&c, &catcoh_core::abelian::FPAbelianGroup::cyclic(m));
        assert_complex(&d, 2, BWOptions::full())?;
        // normalized and full cochains compute the same groups
        let n = bw_complex(&d, 2, BWOptions::default()).unwrap();
        let f = bw_complex(&d, 2, BWOptions::full()).unwrap();
        for k in 0..=1 {
            prop_assert_eq!(n.cohomology(k).invariant_factors(), f.cohomology(k).invariant_factors());
        }
    }

    #[test]
    fn pullback_along_identity_is_unchanged(bytes in prop::collection::vec(any::<u8>(), 40)) {
        let mut t = Tape::new(bytes);
        let (c, edges) = random_dag(&mut t, 3, 3);
        let d = weighted_system(&c, &edges, 4, &mut t);
        let id = catcoh_core::fincat::FinFunctor::identity(&c);
        let p = NaturalSystem::pullback(&id, &d);
        prop_assert!(p.validate().is_ok());
        for f in c.morphisms() {
            for &a in c.hom_into(c.src(f)) {
                prop_assert_eq!(p.pre_matrix(a, f), d.pre_matrix(a, f));
            }
        }
    }

    #[test]
    fn classification_matches_second_cohomology(bytes in prop::collection::vec(any::<u8>(), 30)) {
        let mut t = Tape::new(bytes);
        let Some(c) = random_concrete(&mut t, 6) else { return Ok(()) };
        let m = [2u64, 3][t.below(2)];
        let d = NaturalSystem::constant(&c, &catcoh_core::abelian::FPAbelianGroup::cyclic(m));
        let cl = match classify(&d, 1 << 14) {
            Ok(cl) => cl,
            Err(LinExtError::TooLarge(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let h2 = bw_complex(&d, 3, BWOptions::default()).unwrap().cohomology(2);
        prop_assert_eq!(Some(Int::from(cl.count)), h2.order());
        let reps = &cl.representatives;
        for i in 0..reps.len() {
            for j in i + 1..reps.len().min(i + 4) {
                prop_assert!(!are_equivalent(&d, &reps[i], &reps[j]).unwrap());
            }
        }
    }
}
