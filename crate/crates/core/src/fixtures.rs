//! Small hand-entered posets and arrangements used throughout the tests and
//! the command line `--fixture` option.

use crate::arrangement::{Arrangement, GroupKind};
use crate::poset::Poset;

fn hand(elements: &[&str], covers: &[(&str, &str)]) -> Poset {
    Poset::from_labeled(elements, covers).expect("fixture is a valid ranked poset")
}

/// Layer poset of the toric arrangement `t1, t2, t1t2, t1t2^-1` in `(S^1)^2`.
pub fn b2_poset() -> Poset {
    let atoms = ["t1=1", "t2=1", "t1t2=1", "t1t2^-1=1"];
    let mut covers: Vec<(&str, &str)> = atoms.iter().map(|&a| ("0", a)).collect();
    covers.extend(atoms.iter().map(|&a| (a, "(1,1)")));
    covers.push(("t1t2=1", "(-1,-1)"));
    covers.push(("t1t2^-1=1", "(-1,-1)"));
    hand(&["0", "t1=1", "t2=1", "t1t2=1", "t1t2^-1=1", "(1,1)", "(-1,-1)"], &covers)
}

/// The five-element poset generated by `t1t2=1` and `t1t2^-1=1` in [`b2_poset`].
pub fn d2_poset() -> Poset {
    hand(
        &["0", "t1t2=1", "t1t2^-1=1", "(1,1)", "(-1,-1)"],
        &[
            ("0", "t1t2=1"),
            ("0", "t1t2^-1=1"),
            ("t1t2=1", "(1,1)"),
            ("t1t2^-1=1", "(1,1)"),
            ("t1t2=1", "(-1,-1)"),
            ("t1t2^-1=1", "(-1,-1)"),
        ],
    )
}

/// Rank 2, six atoms; `7` covers 1,2,3, `9` covers 4,5,6 and `8` covers all six.
/// Its characteristic polynomial is `(t-3)^2` but it is not divisional.
pub fn pi3w_poset() -> Poset {
    let mut covers: Vec<(&str, &str)> = Vec::new();
    let atoms = ["1", "2", "3", "4", "5", "6"];
    for a in atoms {
        covers.push(("0", a));
        covers.push((a, "8"));
    }
    for a in &atoms[..3] {
        covers.push((a, "7"));
    }
    for a in &atoms[3..] {
        covers.push((a, "9"));
    }
    hand(&["0", "1", "2", "3", "4", "5", "6", "7", "8", "9"], &covers)
}

/// Inductive with exponents {1,3} but not geometric: `x∨a2` is a single
/// element while `a3` and `a4` have two minimal upper bounds `y` and `w`.
pub fn ind_not_geo_poset() -> Poset {
    hand(
        &["0", "x", "a2", "a3", "a4", "xa2", "y", "w"],
        &[
            ("0", "x"),
            ("0", "a2"),
            ("0", "a3"),
            ("0", "a4"),
            ("x", "xa2"),
            ("a2", "xa2"),
            ("a3", "y"),
            ("a4", "y"),
            ("a3", "w"),
            ("a4", "w"),
        ],
    )
}

pub fn b2_torus() -> Arrangement {
    Arrangement::from_i64(GroupKind::Torus, 2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]]).expect("valid")
}

/// Columns `H1..H6` of the 3×6 matrix whose toric arrangement is inductive
/// while the hyperplane arrangement is not even factorable.
pub const MATRIX_S: [[i64; 6]; 3] = [[1, 0, 1, 0, 1, 0], [0, 1, 1, 0, 0, 1], [0, 0, 0, 1, -1, -1]];

pub fn matrix_s(group: GroupKind) -> Arrangement {
    let cols: Vec<Vec<i64>> = (0..6).map(|j| (0..3).map(|i| MATRIX_S[i][j]).collect()).collect();
    let labels = (1..=6).map(|i| format!("H{i}")).collect();
    Arrangement::new(group, 3, cols.iter().map(|c| crate::intlat::big_vec(c)).collect(), Some(labels)).expect("valid")
}

/// Named fixtures for the command line.
pub fn named_poset(name: &str) -> Option<Poset> {
    match name {
        "b2" => Some(b2_poset()),
        "d2" => Some(d2_poset()),
        "pi3w" => Some(pi3w_poset()),
        "ind-not-geo" => Some(ind_not_geo_poset()),
        _ => None,
    }
}

pub const POSET_FIXTURES: [&str; 4] = ["b2", "d2", "pi3w", "ind-not-geo"];
