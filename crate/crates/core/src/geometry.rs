//! Lattice-theoretic predicates, M-/TM-ideals and supersolvable chains.
//!
//! Ideal checks and chain searches work on [`SubPoset`] views so that the
//! recursive classifiers can use them without materializing posets. Every view
//! handed in must be join-closed in its ambient poset (generated subposets and
//! their upper sets are), which makes ambient joins and view joins agree.

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::budget::{Budget, Exhausted};
use crate::poset::{Poset, SubPoset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("poset is not a lattice")]
    NotALattice,
    #[error("poset is not locally geometric")]
    NotLocallyGeometric,
    #[error(transparent)]
    Budget(#[from] Exhausted),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IdealKind {
    M,
    TM,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealWitness {
    pub kind: IdealKind,
    pub atom_set: Vec<usize>,
    pub elements: Vec<usize>,
    pub rank: usize,
    /// (maximal element of P, its modular partner in max(Q))
    pub modular_partners: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainWitness {
    pub kind: IdealKind,
    /// Ideals of rank 0, 1, ..., r (the last one is P itself).
    pub ideals: Vec<IdealWitness>,
    pub d: Vec<usize>,
}

pub fn is_lattice(p: &Poset) -> bool {
    is_lattice_budgeted(p, &Budget::unlimited()).unwrap_or(false)
}

/// A finite poset with 0̂ is a lattice iff every pair has exactly one minimal
/// upper bound.
pub fn is_lattice_budgeted(p: &Poset, budget: &Budget) -> Result<bool, Exhausted> {
    let n = p.len();
    for x in 0..n {
        budget.spend(n as u64)?;
        for y in x + 1..n {
            if p.leq(x, y) || p.leq(y, x) {
                continue;
            }
            if p.mub(x, y).len() != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_geometric_lattice(p: &Poset) -> Result<bool, GeometryError> {
    if !is_lattice(p) {
        return Err(GeometryError::NotALattice);
    }
    let atoms = p.atoms();
    for x in 0..p.len() {
        for &y in p.up_covers(x) {
            if !atoms.iter().any(|&a| p.leq(a, y) && !p.leq(a, x)) {
                return Ok(false);
            }
        }
        for &a in &atoms {
            if p.leq(a, x) {
                continue;
            }
            let j = p.mub(x, a);
            if j.len() != 1 || p.rank_of(j[0]) != p.rank_of(x) + 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_locally_geometric(p: &Poset) -> bool {
    is_locally_geometric_budgeted(p, &Budget::unlimited()).unwrap_or(false)
}

/// Every lower interval is a geometric lattice. Checked without
/// materializing intervals: an interval `[0̂, x]` contains `u, v` and all their
/// minimal upper bounds below `x`, so interval joins fail to be unique exactly
/// when two minimal upper bounds of a pair share an upper bound.
pub fn is_locally_geometric_budgeted(p: &Poset, budget: &Budget) -> Result<bool, Exhausted> {
    let n = p.len();
    let atoms = p.atoms();
    let mut atom_set = FixedBitSet::with_capacity(n);
    for &a in &atoms {
        atom_set.insert(a);
    }
    for u in 0..n {
        budget.spend(n as u64)?;
        for &y in p.up_covers(u) {
            let mut new_atoms = p.down_set(y).clone();
            new_atoms.intersect_with(&atom_set);
            new_atoms.difference_with(p.down_set(u));
            if new_atoms.is_clear() {
                return Ok(false);
            }
        }
        for &a in &atoms {
            if p.leq(a, u) {
                continue;
            }
            if p.mub(u, a).iter().any(|&m| p.rank_of(m) != p.rank_of(u) + 1) {
                return Ok(false);
            }
        }
        for v in u + 1..n {
            if p.leq(u, v) || p.leq(v, u) {
                continue;
            }
            let m = p.mub(u, v);
            for (i, &m1) in m.iter().enumerate() {
                for &m2 in &m[i + 1..] {
                    if !p.up_set(m1).is_disjoint(p.up_set(m2)) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

pub fn is_geometric_poset(p: &Poset) -> Result<bool, GeometryError> {
    if !is_locally_geometric(p) {
        return Err(GeometryError::NotLocallyGeometric);
    }
    Ok(is_geometric_poset_budgeted(p, &Budget::unlimited())?)
}

/// Definition check, reduced per pair (x, y): with N(x) the atoms that are
/// below x or have no common upper bound with x, the condition fails exactly
/// when the atoms of N(x) below y already join to y in the lattice `P_{<=y}`,
/// because then they contain an independent set of size rk(y) joining to y.
/// Comparable pairs never fail.
pub fn is_geometric_poset_budgeted(p: &Poset, budget: &Budget) -> Result<bool, Exhausted> {
    let n = p.len();
    let atoms = p.atoms();
    for x in 0..n {
        budget.spend(n as u64)?;
        let mut nx = FixedBitSet::with_capacity(n);
        for &a in &atoms {
            if p.leq(a, x) || p.up_set(a).is_disjoint(p.up_set(x)) {
                nx.insert(a);
            }
        }
        for &y in p.by_rank() {
            if p.rank_of(y) <= p.rank_of(x) || p.leq(x, y) {
                continue;
            }
            let mut s = nx.clone();
            s.intersect_with(p.down_set(y));
            if s.is_clear() {
                continue;
            }
            let reaches_y = !p.down_covers(y).iter().any(|&u| s.is_subset(p.down_set(u)));
            if reaches_y {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Definitional modular-element test in a geometric lattice.
pub fn is_modular(p: &Poset, x: usize) -> Result<bool, GeometryError> {
    if !is_lattice(p) {
        return Err(GeometryError::NotALattice);
    }
    let join = |a: usize, b: usize| p.mub(a, b)[0];
    let meet = |a: usize, b: usize| {
        let mut s = p.down_set(a).clone();
        s.intersect_with(p.down_set(b));
        p.maximal_of(&s)[0]
    };
    for z in p.down_set(x).ones() {
        for y in 0..p.len() {
            if meet(x, join(y, z)) != join(meet(x, y), z) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rank criterion for modularity of `y` inside the geometric lattice
/// `view_{<= top}`: rk y + rk w = rk(y ∧ w) + rk(y ∨ w) for all w.
pub fn is_modular_in_interval(p: &Poset, view: &SubPoset, top: usize, y: usize) -> bool {
    let mut interval = p.down_set(top).clone();
    interval.intersect_with(&view.elems);
    let rk = |z: usize| p.rank_of(z);
    for w in interval.ones() {
        let mut below = p.down_set(y).clone();
        below.intersect_with(p.down_set(w));
        below.intersect_with(&interval);
        let meet_rank = below.ones().map(rk).max().unwrap_or(0);
        let mut above = p.up_set(y).clone();
        above.intersect_with(p.up_set(w));
        above.intersect_with(&interval);
        // in a lattice the join has the least rank among upper bounds
        let Some(join_rank) = above.ones().map(rk).min() else { return false };
        if rk(y) + rk(w) != meet_rank + join_rank {
            return false;
        }
    }
    true
}

struct IdealCheck<'a> {
    p: &'a Poset,
    view: &'a SubPoset,
    q: &'a FixedBitSet,
}

impl<'a> IdealCheck<'a> {
    fn q_atoms(&self) -> Vec<usize> {
        self.p.sub_atoms(self.view).into_iter().filter(|&a| self.q.contains(a)).collect()
    }

    fn outside_atoms(&self) -> Vec<usize> {
        self.p.sub_atoms(self.view).into_iter().filter(|&a| !self.q.contains(a)).collect()
    }

    fn q_rank(&self) -> usize {
        let base = self.p.rank_of(self.view.base);
        self.q.ones().map(|x| self.p.rank_of(x) - base).max().unwrap_or(0)
    }

    /// Pure, join-closed, proper order ideal of rank rk(P) - 1.
    fn structural(&self) -> bool {
        let p = self.p;
        let r = p.sub_rank(self.view);
        if !self.q.contains(self.view.base) || !self.q.is_subset(&self.view.elems) || self.q == &self.view.elems {
            return false;
        }
        if r == 0 || self.q_rank() != r - 1 {
            return false;
        }
        let base_rank = p.rank_of(self.view.base);
        for y in self.q.ones() {
            let mut below = p.down_set(y).clone();
            below.intersect_with(&self.view.elems);
            if !below.is_subset(self.q) {
                return false;
            }
        }
        let qr = self.q_rank();
        if p.maximal_of(self.q).iter().any(|&m| p.rank_of(m) - base_rank != qr) {
            return false;
        }
        // join-closed: no element outside Q is a minimal upper bound of the Q-elements below it
        for y in self.view.elems.ones() {
            if self.q.contains(y) {
                continue;
            }
            let mut t = p.down_set(y).clone();
            t.intersect_with(self.q);
            if t.count_ones(..) <= 1 {
                continue;
            }
            if !p.down_covers(y).iter().any(|&u| t.is_subset(p.down_set(u))) {
                return false;
            }
        }
        true
    }

    /// Condition (1) (`unique = false`) or (1*) (`unique = true`).
    fn join_condition(&self, unique: bool) -> bool {
        let outside = self.outside_atoms();
        for y in self.q.ones() {
            for &a in &outside {
                let k = self.p.mub(a, y).len();
                if k == 0 || (unique && k != 1) {
                    return false;
                }
            }
        }
        true
    }

    /// Condition (2); returns the chosen partners.
    fn modular_partners(&self) -> Option<Vec<(usize, usize)>> {
        let p = self.p;
        let qmax = p.maximal_of(self.q);
        let mut out = Vec::new();
        for x in p.sub_maximal(self.view) {
            let partner = qmax.iter().copied().find(|&y| p.leq(y, x) && is_modular_in_interval(p, self.view, x, y))?;
            out.push((x, partner));
        }
        Some(out)
    }

    /// Pair criterion on geometric posets: every minimal upper bound of two
    /// distinct outside atoms lies above some atom of Q.
    fn gpmi(&self) -> bool {
        let outside = self.outside_atoms();
        let q_atoms = self.q_atoms();
        for (i, &a1) in outside.iter().enumerate() {
            for &a2 in &outside[i + 1..] {
                for z in self.p.mub(a1, a2) {
                    if !q_atoms.iter().any(|&a3| self.p.leq(a3, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn witness(&self, kind: IdealKind, partners: Vec<(usize, usize)>) -> IdealWitness {
        IdealWitness { kind, atom_set: self.q_atoms(), elements: self.q.ones().collect(), rank: self.q_rank(), modular_partners: partners }
    }
}

/// How ideal conditions are decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealTest {
    /// Conditions (1)/(1*) and (2) as defined.
    Definition,
    /// The pair criterion valid on geometric posets, plus (1*) for TM.
    Geometric,
}

/// Checks whether `q` is an M- or TM-ideal of rank rk(P) - 1 in the view.
pub fn check_ideal_in(p: &Poset, view: &SubPoset, q: &FixedBitSet, kind: IdealKind, test: IdealTest) -> Option<IdealWitness> {
    let c = IdealCheck { p, view, q };
    if !c.structural() {
        return None;
    }
    match test {
        IdealTest::Definition => {
            if !c.join_condition(kind == IdealKind::TM) {
                return None;
            }
            let partners = c.modular_partners()?;
            Some(c.witness(kind, partners))
        }
        IdealTest::Geometric => {
            if !c.gpmi() || (kind == IdealKind::TM && !c.join_condition(true)) {
                return None;
            }
            let partners = c.modular_partners().expect("pair criterion implies modular partners on geometric posets");
            Some(c.witness(kind, partners))
        }
    }
}

pub fn check_m_ideal(p: &Poset, q: &[usize]) -> Option<IdealWitness> {
    check_ideal_in(p, &p.whole(), &to_set(p, q), IdealKind::M, IdealTest::Definition)
}

pub fn check_tm_ideal(p: &Poset, q: &[usize]) -> Option<IdealWitness> {
    check_ideal_in(p, &p.whole(), &to_set(p, q), IdealKind::TM, IdealTest::Definition)
}

fn to_set(p: &Poset, elems: &[usize]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(p.len());
    for &x in elems {
        s.insert(x);
    }
    s
}

pub fn is_supersolvable(p: &Poset) -> Result<Option<ChainWitness>, GeometryError> {
    chain_search_checked(p, IdealKind::M)
}

pub fn is_strictly_supersolvable(p: &Poset) -> Result<Option<ChainWitness>, GeometryError> {
    chain_search_checked(p, IdealKind::TM)
}

fn chain_search_checked(p: &Poset, kind: IdealKind) -> Result<Option<ChainWitness>, GeometryError> {
    if !is_locally_geometric(p) {
        return Err(GeometryError::NotLocallyGeometric);
    }
    let geometric = is_geometric_poset_budgeted(p, &Budget::unlimited())?;
    let test = if geometric { IdealTest::Geometric } else { IdealTest::Definition };
    Ok(chain_search(p, &p.whole(), kind, test, &Budget::unlimited())?)
}

/// Searches for an M-chain (or TM-chain) of the view, top-down: a rank
/// r - 1 ideal is chosen among closures of atom subsets (in deterministic
/// include-first order) and the search recurses into it.
pub fn chain_search(p: &Poset, view: &SubPoset, kind: IdealKind, test: IdealTest, budget: &Budget) -> Result<Option<ChainWitness>, Exhausted> {
    let r = p.sub_rank(view);
    let top = IdealWitness {
        kind,
        atom_set: p.sub_atoms(view),
        elements: view.elems.ones().collect(),
        rank: r,
        modular_partners: Vec::new(),
    };
    if r == 0 {
        return Ok(Some(ChainWitness { kind, ideals: vec![top], d: Vec::new() }));
    }
    let atoms = p.sub_atoms(view);
    let mut found = None;
    let mut state = vec![Choice::Open; atoms.len()];
    ideal_candidates(p, view, &atoms, 0, &mut state, kind, test, budget, &mut |witness| {
        let sub = SubPoset { base: view.base, elems: to_set(p, &witness.elements) };
        match chain_search(p, &sub, kind, test, budget)? {
            Some(mut chain) => {
                let d = top.atom_set.len() - witness.atom_set.len();
                chain.ideals.pop();
                chain.ideals.push(witness);
                chain.ideals.push(top.clone());
                chain.d.push(d);
                found = Some(chain);
                Ok(true)
            }
            None => Ok(false),
        }
    })?;
    Ok(found)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Choice {
    Open,
    In,
    Out,
}

/// Enumerates rank r - 1 ideals; `accept` returns true to stop.
#[allow(clippy::too_many_arguments)]
fn ideal_candidates(
    p: &Poset,
    view: &SubPoset,
    atoms: &[usize],
    k: usize,
    state: &mut Vec<Choice>,
    kind: IdealKind,
    test: IdealTest,
    budget: &Budget,
    accept: &mut dyn FnMut(IdealWitness) -> Result<bool, Exhausted>,
) -> Result<bool, Exhausted> {
    budget.spend(1)?;
    let r = p.sub_rank(view);
    let chosen: Vec<usize> = atoms.iter().zip(state.iter()).filter(|(_, c)| **c == Choice::In).map(|(&a, _)| a).collect();
    let closure = p.closure(view.base, &chosen);
    // order ideal: every atom below a closure element must be included
    let mut forced = Vec::new();
    for (i, &a) in atoms.iter().enumerate() {
        if state[i] == Choice::In {
            continue;
        }
        let below = closure.elems.ones().any(|z| p.leq(a, z));
        if below {
            if state[i] == Choice::Out {
                return Ok(false);
            }
            forced.push(i);
        }
    }
    if !forced.is_empty() {
        for &i in &forced {
            state[i] = Choice::In;
        }
        let stop = ideal_candidates(p, view, atoms, k, state, kind, test, budget, accept)?;
        for &i in &forced {
            state[i] = Choice::Open;
        }
        return Ok(stop);
    }
    if p.sub_rank(&closure) >= r {
        return Ok(false);
    }
    if test == IdealTest::Geometric && !pairs_still_possible(p, atoms, state) {
        return Ok(false);
    }
    let Some(next) = (k..atoms.len()).find(|&i| state[i] == Choice::Open) else {
        if p.sub_rank(&closure) + 1 != r {
            return Ok(false);
        }
        return match check_ideal_in(p, view, &closure.elems, kind, test) {
            Some(w) => accept(w),
            None => Ok(false),
        };
    };
    for choice in [Choice::In, Choice::Out] {
        state[next] = choice;
        if ideal_candidates(p, view, atoms, next + 1, state, kind, test, budget, accept)? {
            state[next] = Choice::Open;
            return Ok(true);
        }
    }
    state[next] = Choice::Open;
    Ok(false)
}

/// Pair-criterion pruning: two excluded atoms whose join component lies above
/// no atom that could still be included rule the branch out.
fn pairs_still_possible(p: &Poset, atoms: &[usize], state: &[Choice]) -> bool {
    let out: Vec<usize> = atoms.iter().zip(state).filter(|(_, c)| **c == Choice::Out).map(|(&a, _)| a).collect();
    let maybe_in: Vec<usize> = atoms.iter().zip(state).filter(|(_, c)| **c != Choice::Out).map(|(&a, _)| a).collect();
    for (i, &a1) in out.iter().enumerate() {
        for &a2 in &out[i + 1..] {
            for z in p.mub(a1, a2) {
                if !maybe_in.iter().any(|&a3| p.leq(a3, z)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Re-checks a chain witness from scratch with the definitional test.
pub fn verify_chain(p: &Poset, view: &SubPoset, chain: &ChainWitness) -> bool {
    let r = p.sub_rank(view);
    if chain.ideals.len() != r + 1 || chain.d.len() != r {
        return false;
    }
    for i in 0..r {
        let outer = SubPoset { base: view.base, elems: to_set(p, &chain.ideals[i + 1].elements) };
        let inner = to_set(p, &chain.ideals[i].elements);
        if p.sub_rank(&outer) != i + 1 {
            return false;
        }
        if check_ideal_in(p, &outer, &inner, chain.kind, IdealTest::Definition).is_none() {
            return false;
        }
        if chain.d[i] != chain.ideals[i + 1].atom_set.len() - chain.ideals[i].atom_set.len() {
            return false;
        }
    }
    chain.ideals[r].elements == view.elems.ones().collect::<Vec<_>>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn boolean(n: usize) -> Poset {
        let labels: Vec<String> = (0..1usize << n).map(|m| format!("{m:b}")).collect();
        let mut covers = Vec::new();
        for m in 0..1usize << n {
            for i in 0..n {
                if m & (1 << i) == 0 {
                    covers.push((m, m | (1 << i)));
                }
            }
        }
        Poset::from_covers(labels, &covers).unwrap()
    }

    fn chain4() -> Poset {
        Poset::from_labeled(&["0", "a", "b", "c"], &[("0", "a"), ("a", "b"), ("b", "c")]).unwrap()
    }

    /// U_{3,4}: four points in general position in the plane.
    fn u34() -> Poset {
        let mut labels = vec!["0".to_string()];
        let pts = ["a", "b", "c", "d"];
        labels.extend(pts.iter().map(|s| s.to_string()));
        let mut covers = Vec::new();
        let mut lines = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                lines.push((i, j));
            }
        }
        for (k, &(i, j)) in lines.iter().enumerate() {
            labels.push(format!("{}{}", pts[i], pts[j]));
            covers.push((1 + i, 5 + k));
            covers.push((1 + j, 5 + k));
        }
        labels.push("top".into());
        for i in 0..4 {
            covers.push((0, 1 + i));
        }
        for k in 0..lines.len() {
            covers.push((5 + k, 5 + lines.len()));
        }
        Poset::from_covers(labels, &covers).unwrap()
    }

    #[test]
    fn lattice_examples() {
        assert!(is_lattice(&boolean(2)));
        assert!(!is_lattice(&fixtures::b2_poset()));
        assert!(is_lattice(&Poset::from_labeled(&["0"], &[]).unwrap()));
    }

    #[test]
    fn geometric_lattice_examples() {
        assert!(is_geometric_lattice(&boolean(3)).unwrap());
        assert!(!is_geometric_lattice(&chain4()).unwrap());
        let p = fixtures::b2_poset();
        let below = p.materialize(&SubPoset { base: p.bottom(), elems: p.down_set(p.find("(1,1)").unwrap()).clone() });
        assert!(is_geometric_lattice(&below).unwrap());
        assert_eq!(is_geometric_lattice(&p), Err(GeometryError::NotALattice));
    }

    #[test]
    fn locally_geometric_examples() {
        assert!(is_locally_geometric(&fixtures::b2_poset()));
        assert!(is_locally_geometric(&fixtures::pi3w_poset()));
        assert!(!is_locally_geometric(&chain4()));
        assert!(is_locally_geometric(&fixtures::ind_not_geo_poset()));
    }

    /// Oracle: materialize every lower interval and run the lattice checks.
    fn locally_geometric_oracle(p: &Poset) -> bool {
        (0..p.len()).all(|x| {
            let sub = p.materialize(&SubPoset { base: p.bottom(), elems: p.down_set(x).clone() });
            is_geometric_lattice(&sub).unwrap_or(false)
        })
    }

    #[test]
    fn locally_geometric_agrees_with_interval_oracle() {
        for p in [fixtures::b2_poset(), fixtures::pi3w_poset(), fixtures::ind_not_geo_poset(), fixtures::d2_poset(), chain4(), u34(), boolean(3)] {
            assert_eq!(is_locally_geometric(&p), locally_geometric_oracle(&p));
        }
    }

    /// Oracle: the definition with explicit atom subsets.
    fn geometric_poset_oracle(p: &Poset) -> bool {
        let atoms = p.atoms();
        for x in 0..p.len() {
            for y in 0..p.len() {
                if p.rank_of(x) >= p.rank_of(y) {
                    continue;
                }
                for mask in 0u32..(1 << atoms.len()) {
                    let i: Vec<usize> = (0..atoms.len()).filter(|k| mask >> k & 1 == 1).map(|k| atoms[k]).collect();
                    if i.len() != p.rank_of(y) || !p.joins(&i).contains(&y) {
                        continue;
                    }
                    if !i.iter().any(|&a| !p.leq(a, x) && !p.mub(a, x).is_empty()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn geometric_poset_examples() {
        assert!(is_geometric_poset(&fixtures::b2_poset()).unwrap());
        assert!(!is_geometric_poset(&fixtures::ind_not_geo_poset()).unwrap());
        assert!(is_geometric_poset(&boolean(3)).unwrap());
        assert_eq!(is_geometric_poset(&chain4()), Err(GeometryError::NotLocallyGeometric));
        for p in [fixtures::b2_poset(), fixtures::pi3w_poset(), fixtures::ind_not_geo_poset(), fixtures::d2_poset(), u34()] {
            assert_eq!(is_geometric_poset(&p).unwrap(), geometric_poset_oracle(&p));
        }
    }

    #[test]
    fn modular_examples() {
        let u = u34();
        assert!(is_modular(&u, u.bottom()).unwrap());
        assert!(is_modular(&u, u.find("top").unwrap()).unwrap());
        for a in u.atoms() {
            assert!(is_modular(&u, a).unwrap());
        }
        assert!(!is_modular(&u, u.find("ab").unwrap()).unwrap());
        let b = boolean(3);
        for x in 0..b.len() {
            assert!(is_modular(&b, x).unwrap());
            let top = b.find("111").unwrap();
            assert!(is_modular_in_interval(&b, &b.whole(), top, x));
        }
        let ab = u.find("ab").unwrap();
        assert!(!is_modular_in_interval(&u, &u.whole(), u.find("top").unwrap(), ab));
    }

    #[test]
    fn m_ideal_examples() {
        let p = fixtures::b2_poset();
        let blue = p.find("t1t2^-1=1").unwrap();
        let q = [p.bottom(), blue];
        let w = check_m_ideal(&p, &q).expect("rank-1 M-ideal");
        assert_eq!(w.rank, 1);
        assert_eq!(w.modular_partners.len(), 2);
        assert!(check_tm_ideal(&p, &q).is_none());
        assert!(check_m_ideal(&p, &[p.bottom(), p.find("t1=1").unwrap()]).is_none());
        let all: Vec<usize> = (0..p.len()).collect();
        assert!(check_tm_ideal(&p, &all).is_none());
        let d2 = fixtures::d2_poset();
        assert!(check_m_ideal(&d2, &[d2.bottom()]).is_none());
    }

    #[test]
    fn supersolvable_examples() {
        let p = fixtures::b2_poset();
        let ss = is_supersolvable(&p).unwrap().expect("supersolvable");
        assert!(verify_chain(&p, &p.whole(), &ss));
        assert!(is_strictly_supersolvable(&p).unwrap().is_none());
        let d2 = fixtures::d2_poset();
        assert!(is_supersolvable(&d2).unwrap().is_some());
        assert_eq!(is_supersolvable(&chain4()), Err(GeometryError::NotLocallyGeometric));
    }

    #[test]
    fn gpmi_agrees_with_definition_on_b2_candidates() {
        let p = fixtures::b2_poset();
        let atoms = p.atoms();
        for mask in 0u32..(1 << atoms.len()) {
            let b: Vec<usize> = (0..atoms.len()).filter(|k| mask >> k & 1 == 1).map(|k| atoms[k]).collect();
            let q = p.closure(p.bottom(), &b);
            let def = check_ideal_in(&p, &p.whole(), &q.elems, IdealKind::M, IdealTest::Definition);
            let geo = check_ideal_in(&p, &p.whole(), &q.elems, IdealKind::M, IdealTest::Geometric);
            assert_eq!(def, geo, "mask {mask}");
        }
    }
}
