//! Hunt for layer posets that are divisional but neither inductive nor
//! lattices.

use layercraft::arrangement::{Arrangement, GroupKind};
use layercraft::budget::Budget;
use layercraft::classify::Searcher;
use layercraft::geometry;
use layercraft::poset::Poset;
use rayon::prelude::*;
use serde::Serialize;

use crate::input::{ArrangementSpec, InputSpec, FIXTURE_NAMES};

const STEP_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Candidate,
    Lattice,
    NotLocallyGeometric,
    NotDivisional,
    Inductive,
    Undecided,
}

pub fn verdict(p: &Poset) -> Verdict {
    if geometry::is_lattice(p) {
        return Verdict::Lattice;
    }
    if !geometry::is_locally_geometric(p) {
        return Verdict::NotLocallyGeometric;
    }
    let budget = Budget::new(STEP_BUDGET);
    let whole = p.whole();
    match Searcher::new(p, &budget).divisional(&whole) {
        Err(_) => return Verdict::Undecided,
        Ok(None) => return Verdict::NotDivisional,
        Ok(Some(_)) => {}
    }
    let budget = Budget::new(STEP_BUDGET);
    match Searcher::new(p, &budget).inductive(&whole) {
        Err(_) => Verdict::Undecided,
        Ok(Some(_)) => Verdict::Inductive,
        Ok(None) => Verdict::Candidate,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureVerdict {
    pub fixture: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchLog {
    pub schema_version: u32,
    pub max_atoms: usize,
    pub examined: usize,
    pub undecided: usize,
    pub candidates: Vec<InputSpec>,
    pub fixtures: Vec<FixtureVerdict>,
}

/// Nonzero vectors up to sign: first nonzero entry positive.
fn vectors_up_to_sign(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-bound; dim];
    loop {
        if v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) {
            out.push(v.clone());
        }
        let mut i = 0;
        loop {
            if i == dim {
                return out;
            }
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = -bound;
            i += 1;
        }
    }
}

fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(s) = stack.pop() {
        if !s.is_empty() {
            out.push(s.clone());
        }
        if s.len() < k {
            let from = s.last().map_or(0, |&x| x + 1);
            for i in from..n {
                let mut t = s.clone();
                t.push(i);
                stack.push(t);
            }
        }
    }
    out.sort();
    out
}

/// Toric arrangements with at most `max_atoms` atoms: dimension 1 and 2 with
/// entries in [-2, 2], dimension 3 with entries in [-1, 1].
pub fn candidates_space(max_atoms: usize) -> Vec<Arrangement> {
    let mut out = Vec::new();
    for (dim, bound) in [(1, 2), (2, 2), (3, 1)] {
        let vs = vectors_up_to_sign(dim, bound);
        for s in subsets_up_to(vs.len(), max_atoms) {
            let chosen: Vec<Vec<i64>> = s.iter().map(|&i| vs[i].clone()).collect();
            let arr = Arrangement::from_i64(GroupKind::Torus, dim, &chosen).expect("nonzero vectors");
            let atoms: usize = arr.characters.iter().map(|c| usize::try_from(&c.content).unwrap_or(usize::MAX)).sum();
            if atoms <= max_atoms {
                out.push(arr);
            }
        }
    }
    out
}

fn spec_of(arr: &Arrangement, chars: Vec<Vec<i64>>) -> InputSpec {
    InputSpec::Arrangement(ArrangementSpec { group: arr.group, dim: arr.dim, characters: chars, labels: None })
}

pub fn search(max_atoms: usize) -> SearchLog {
    let space = candidates_space(max_atoms);
    let results: Vec<(Verdict, InputSpec)> = space
        .par_iter()
        .map(|arr| {
            let chars = arr.characters.iter().map(|c| c.vector.iter().map(|x| i64::try_from(x).expect("small")).collect()).collect();
            let spec = spec_of(arr, chars);
            match arr.layer_poset(None) {
                Ok((p, _)) => (verdict(&p), spec),
                Err(_) => (Verdict::Undecided, spec),
            }
        })
        .collect();
    let undecided = results.iter().filter(|(v, _)| *v == Verdict::Undecided).count();
    let candidates = results.iter().filter(|(v, _)| *v == Verdict::Candidate).map(|(_, s)| s.clone()).collect();
    let fixtures = FIXTURE_NAMES
        .iter()
        .map(|&name| {
            let spec = InputSpec::fixture(name).expect("listed fixture");
            let p = match &spec {
                InputSpec::Poset(ps) => ps.build().expect("valid fixture"),
                InputSpec::Arrangement(a) => a.build().expect("valid fixture").layer_poset(None).expect("small").0,
                InputSpec::RootIdeal(_) => unreachable!("no root-ideal fixtures"),
            };
            FixtureVerdict { fixture: name.to_string(), verdict: verdict(&p) }
        })
        .collect();
    SearchLog { schema_version: crate::report::SCHEMA_VERSION, max_atoms, examined: results.len(), undecided, candidates, fixtures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use layercraft::fixtures;

    #[test]
    fn vector_enumeration() {
        assert_eq!(vectors_up_to_sign(1, 2), vec![vec![1], vec![2]]);
        assert_eq!(vectors_up_to_sign(2, 2).len(), 12);
        assert_eq!(vectors_up_to_sign(3, 1).len(), 13);
        assert_eq!(subsets_up_to(4, 2).len(), 4 + 6);
    }

    #[test]
    fn fixture_verdicts() {
        assert_eq!(verdict(&fixtures::pi3w_poset()), Verdict::NotDivisional);
        let (real, _) = fixtures::matrix_s(GroupKind::Real).layer_poset(None).unwrap();
        assert_eq!(verdict(&real), Verdict::Lattice);
        assert_eq!(verdict(&fixtures::b2_poset()), Verdict::Inductive);
    }

    #[test]
    fn tiny_run_is_empty() {
        let log = search(3);
        assert!(log.examined > 500);
        assert_eq!(log.undecided, 0);
        assert!(log.candidates.is_empty());
    }
}
