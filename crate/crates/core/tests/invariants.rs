use layercraft::arrangement::{Arrangement, GroupKind};
use layercraft::corpus::{self, CorpusParams};
use layercraft::geometry::{self, IdealKind, IdealTest};
use layercraft::poset::Poset;
use layercraft::rootsys::{self, LatticeKind, RootError, RootType};
use proptest::prelude::*;

fn atom_count(arr: &Arrangement) -> usize {
    arr.characters.iter().map(|c| usize::try_from(&c.content).unwrap()).sum()
}

/// Every accepted M-ideal of corank one: `P` is pure, and an atom lies
/// outside the ideal exactly when its only common lower bound with each
/// maximal element of the ideal is the bottom.
fn check_m_ideals(p: &Poset) -> Result<usize, String> {
    let atoms = p.atoms();
    let r = p.rank();
    let whole = p.whole();
    let mut accepted = 0;
    for mask in 1u32..(1 << atoms.len()) {
        let chosen: Vec<usize> = (0..atoms.len()).filter(|&k| mask >> k & 1 == 1).map(|k| atoms[k]).collect();
        let q = p.closure(p.bottom(), &chosen);
        if p.sub_rank(&q) + 1 != r {
            continue;
        }
        let Some(w) = geometry::check_ideal_in(p, &whole, &q.elems, IdealKind::M, IdealTest::Definition) else { continue };
        accepted += 1;
        if p.maximal().iter().any(|&m| p.rank_of(m) != r) {
            return Err("M-ideal in an impure poset".into());
        }
        let q_max = p.sub_maximal(&q);
        for &a in &atoms {
            let outside = !w.atom_set.contains(&a);
            let meets_bottom = q_max.iter().all(|&y| {
                let mut common = p.down_set(y).clone();
                common.intersect_with(p.down_set(a));
                p.maximal_of(&common) == vec![p.bottom()]
            });
            if outside != meets_bottom {
                return Err(format!("atom {} breaks the bottom-meet characterization", p.label(a)));
            }
        }
    }
    Ok(accepted)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn layer_posets_are_geometric(seed in any::<u64>()) {
        let arr = corpus::random_arrangement(seed, &CorpusParams::default());
        let (p, _) = arr.layer_poset(None).unwrap();
        prop_assert!(geometry::is_geometric_poset(&p).unwrap());
    }

    #[test]
    fn accepted_m_ideals_are_pure_and_meet_atoms_at_bottom(seed in any::<u64>()) {
        let arr = corpus::random_arrangement(seed, &CorpusParams { group: Some(GroupKind::Torus), ..CorpusParams::default() });
        let (p, _) = arr.layer_poset(None).unwrap();
        prop_assume!(p.atoms().len() <= 10 && p.rank() > 0);
        check_m_ideals(&p).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn m_ideal_checks_on_fixtures() {
    for p in [layercraft::fixtures::b2_poset(), layercraft::fixtures::d2_poset()] {
        assert!(check_m_ideals(&p).unwrap() > 0);
    }
    let (p, _) = layercraft::fixtures::matrix_s(GroupKind::Torus).layer_poset(None).unwrap();
    check_m_ideals(&p).unwrap();
}

fn ideals(ranks: &[(RootType, usize)]) -> Vec<rootsys::RootIdeal> {
    ranks.iter().flat_map(|&(ty, l)| rootsys::all_ideals(ty, l).unwrap()).collect()
}

#[test]
fn change_of_basis_factors_every_ideal() {
    for ideal in ideals(&[(RootType::A, 3), (RootType::B, 3), (RootType::C, 3), (RootType::B, 4), (RootType::C, 4)]) {
        let (s, t, p) = rootsys::coefficient_matrices(&ideal);
        assert_eq!(p.mul(&s), t, "{:?}", ideal.column_labels());
    }
}

#[test]
fn predicted_exponents_sum_to_atom_count() {
    let mut covered = 0;
    for ideal in ideals(&[(RootType::A, 3), (RootType::B, 3), (RootType::C, 3), (RootType::B, 4), (RootType::C, 4)]) {
        for lat in [LatticeKind::Integer, LatticeKind::Root] {
            let arr = rootsys::build_arrangement(&ideal, lat, GroupKind::Torus).unwrap();
            match rootsys::predicted_exponents(&ideal, lat) {
                Ok(e) => {
                    covered += 1;
                    assert_eq!(e.iter().sum::<usize>(), atom_count(&arr), "{:?} {lat:?}", ideal.column_labels());
                }
                Err(RootError::NotCovered(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
    assert!(covered > 200);
}

#[test]
fn type_b_lattices_give_isomorphic_posets() {
    for ideal in ideals(&[(RootType::B, 2), (RootType::B, 3)]) {
        let build = |lat| rootsys::build_arrangement(&ideal, lat, GroupKind::Torus).unwrap().layer_poset(None).unwrap().0;
        let (a, b) = (build(LatticeKind::Root), build(LatticeKind::Integer));
        assert!(a.is_isomorphic(&b).is_some(), "{:?}", ideal.column_labels());
    }
}
