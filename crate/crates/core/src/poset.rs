//! Finite ranked posets with a unique minimum.
//!
//! A [`Poset`] is built from cover data and is immutable afterwards. Order
//! queries go through lazily computed up/down bitsets. Subposets used by the
//! recursive classifiers are [`SubPoset`] views into one ambient poset, keyed
//! by their base element; their ranks are ambient ranks shifted by the base.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("poset has no elements")]
    Empty,
    #[error("poset has {} minimal elements ({}); a unique minimum is required", .0.len(), .0.join(", "))]
    MultipleMinima(Vec<String>),
    #[error("poset is not ranked: maximal chains below {0} have different lengths")]
    NotRanked(String),
    #[error("cover relation contains a cycle through {0}")]
    CycleDetected(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("{0} is not an atom")]
    NotAnAtom(String),
}

/// Integer polynomial, coefficients indexed by power of `t`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyZ(Vec<i64>);

impl PolyZ {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyZ(coeffs)
    }

    pub fn zero() -> Self {
        PolyZ(Vec::new())
    }

    pub fn one() -> Self {
        PolyZ(vec![1])
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        PolyZ(c)
    }

    /// `prod (t - r)` over the given roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots.iter().fold(Self::one(), |p, &r| p.mul(&PolyZ(vec![-r, 1])))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> i64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &PolyZ) -> PolyZ {
        let n = self.0.len().max(other.0.len());
        PolyZ::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &PolyZ) -> PolyZ {
        let n = self.0.len().max(other.0.len());
        PolyZ::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &PolyZ) -> PolyZ {
        if self.is_zero() || other.is_zero() {
            return PolyZ::zero();
        }
        let mut c = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        PolyZ::new(c)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> PolyZ {
        if self.is_zero() {
            return PolyZ::zero();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.0);
        PolyZ(c)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, c| acc * t + c)
    }

    /// Exact quotient by a monic divisor; `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &PolyZ) -> Option<PolyZ> {
        assert_eq!(divisor.leading(), 1, "division by a non-monic polynomial");
        let dd = divisor.degree().expect("monic polynomial is nonzero");
        let Some(nd) = self.degree() else { return Some(PolyZ::zero()) };
        if nd < dd {
            return None;
        }
        let mut rem = self.0.clone();
        let mut q = vec![0; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let f = rem[k + dd];
            q[k] = f;
            if f != 0 {
                for (i, c) in divisor.0.iter().enumerate() {
                    rem[k + i] -= f * c;
                }
            }
        }
        rem.iter().all(|&c| c == 0).then(|| PolyZ::new(q))
    }

    pub fn divides(&self, other: &PolyZ) -> bool {
        other.div_exact(self).is_some()
    }
}

impl fmt::Display for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyZ({self})")
    }
}

#[derive(Clone, Debug)]
struct Order {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

/// A finite ranked poset with unique minimum, stored by its Hasse diagram.
#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    up_covers: Vec<Vec<usize>>,
    down_covers: Vec<Vec<usize>>,
    rank: Vec<usize>,
    bottom: usize,
    by_rank: Vec<usize>,
    order: OnceLock<Order>,
}

/// A subposet of an ambient poset: a set of elements with a distinguished
/// minimum `base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubPoset {
    pub base: usize,
    pub elems: FixedBitSet,
}

impl Poset {
    /// Validates cover data given by element indices. Redundant covers are
    /// removed by transitive reduction.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let n = labels.len();
        if n == 0 {
            return Err(PosetError::Empty);
        }
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(PosetError::UnknownElement(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(PosetError::CycleDetected(labels[a].clone()));
            }
            if !succ[a].contains(&b) {
                succ[a].push(b);
            }
        }

        // Kahn's algorithm doubles as cycle detection.
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let minima: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        let mut stack: Vec<usize> = minima.iter().rev().copied().collect();
        let mut deg = indeg.clone();
        while let Some(x) = stack.pop() {
            topo.push(x);
            for &y in &succ[x] {
                deg[y] -= 1;
                if deg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        if topo.len() < n {
            let culprit = (0..n).find(|&i| deg[i] > 0).unwrap();
            return Err(PosetError::CycleDetected(labels[culprit].clone()));
        }
        if minima.len() != 1 {
            return Err(PosetError::MultipleMinima(minima.iter().map(|&i| labels[i].clone()).collect()));
        }
        let bottom = minima[0];

        // Strict descendants, in reverse topological order, for the reduction.
        let mut desc = vec![FixedBitSet::with_capacity(n); n];
        for &x in topo.iter().rev() {
            let mut d = FixedBitSet::with_capacity(n);
            for &y in &succ[x] {
                d.insert(y);
                d.union_with(&desc[y]);
            }
            desc[x] = d;
        }
        let mut up_covers = vec![Vec::new(); n];
        let mut down_covers = vec![Vec::new(); n];
        for x in 0..n {
            for &y in &succ[x] {
                let redundant = succ[x].iter().any(|&w| w != y && desc[w].contains(y));
                if !redundant {
                    up_covers[x].push(y);
                    down_covers[y].push(x);
                }
            }
        }
        for v in up_covers.iter_mut().chain(down_covers.iter_mut()) {
            v.sort_unstable();
        }

        let mut rank = vec![0usize; n];
        for &x in &topo {
            for &y in &up_covers[x] {
                rank[y] = rank[y].max(rank[x] + 1);
            }
        }
        for &y in &topo {
            if down_covers[y].iter().any(|&x| rank[x] + 1 != rank[y]) {
                return Err(PosetError::NotRanked(labels[y].clone()));
            }
        }
        Ok(Self::assemble(labels, up_covers, down_covers, rank, bottom))
    }

    /// Validates cover data given by element labels.
    pub fn from_labeled<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Poset, PosetError> {
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.as_ref(), i).is_some() {
                return Err(PosetError::DuplicateElement(e.as_ref().to_string()));
            }
        }
        let lookup = |s: &S| index.get(s.as_ref()).copied().ok_or_else(|| PosetError::UnknownElement(s.as_ref().to_string()));
        let pairs = covers.iter().map(|(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<Vec<_>, PosetError>>()?;
        Self::from_covers(elements.iter().map(|e| e.as_ref().to_string()).collect(), &pairs)
    }

    /// Builds a poset from data already known to be a valid ranked Hasse
    /// diagram (used for layer posets).
    pub(crate) fn from_trusted(labels: Vec<String>, up_covers: Vec<Vec<usize>>, rank: Vec<usize>, bottom: usize) -> Poset {
        let n = labels.len();
        let mut down_covers = vec![Vec::new(); n];
        for (x, ups) in up_covers.iter().enumerate() {
            for &y in ups {
                down_covers[y].push(x);
            }
        }
        for v in &mut down_covers {
            v.sort_unstable();
        }
        Self::assemble(labels, up_covers, down_covers, rank, bottom)
    }

    fn assemble(labels: Vec<String>, up_covers: Vec<Vec<usize>>, down_covers: Vec<Vec<usize>>, rank: Vec<usize>, bottom: usize) -> Poset {
        let mut by_rank: Vec<usize> = (0..labels.len()).collect();
        by_rank.sort_by_key(|&i| (rank[i], i));
        Poset { labels, up_covers, down_covers, rank, bottom, by_rank, order: OnceLock::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn rank_of(&self, x: usize) -> usize {
        self.rank[x]
    }

    /// rk(P): the largest element rank.
    pub fn rank(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn up_covers(&self, x: usize) -> &[usize] {
        &self.up_covers[x]
    }

    pub fn down_covers(&self, x: usize) -> &[usize] {
        &self.down_covers[x]
    }

    /// Elements sorted by (rank, index).
    pub fn by_rank(&self) -> &[usize] {
        &self.by_rank
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.up_covers[self.bottom].clone()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.up_covers[x].is_empty()).collect()
    }

    pub fn num_covers(&self) -> usize {
        self.up_covers.iter().map(Vec::len).sum()
    }

    pub fn rank_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.rank() + 1];
        for &r in &self.rank {
            c[r] += 1;
        }
        c
    }

    fn order(&self) -> &Order {
        self.order.get_or_init(|| {
            let n = self.len();
            let mut down = vec![FixedBitSet::with_capacity(n); n];
            for &x in &self.by_rank {
                let mut d = FixedBitSet::with_capacity(n);
                d.insert(x);
                for &c in &self.down_covers[x] {
                    d.union_with(&down[c]);
                }
                down[x] = d;
            }
            let mut up = vec![FixedBitSet::with_capacity(n); n];
            for &x in self.by_rank.iter().rev() {
                let mut u = FixedBitSet::with_capacity(n);
                u.insert(x);
                for &c in &self.up_covers[x] {
                    u.union_with(&up[c]);
                }
                up[x] = u;
            }
            Order { up, down }
        })
    }

    /// `{y : y >= x}` including `x`.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.order().up[x]
    }

    /// `{y : y <= x}` including `x`.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.order().down[x]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order().down[b].contains(a)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Möbius values `mu(bottom, x)` for every element.
    pub fn mobius_from_bottom(&self) -> Vec<i64> {
        self.mobius_from(&self.whole())
    }

    /// Full Möbius function on comparable pairs.
    pub fn mobius(&self) -> BTreeMap<(usize, usize), i64> {
        let mut out = BTreeMap::new();
        for a in 0..self.len() {
            let view = SubPoset { base: a, elems: self.up_set(a).clone() };
            let mu = self.mobius_from(&view);
            for b in view.elems.ones() {
                out.insert((a, b), mu[b]);
            }
        }
        out
    }

    pub fn char_poly(&self) -> PolyZ {
        self.sub_char_poly(&self.whole())
    }

    /// Minimal common upper bounds of `t` (the minimal elements when `t` is
    /// empty).
    pub fn joins(&self, t: &[usize]) -> Vec<usize> {
        let mut common = FixedBitSet::with_capacity(self.len());
        common.insert_range(..);
        for &x in t {
            common.intersect_with(self.up_set(x));
        }
        self.minimal_of_upset(&common)
    }

    /// Minimal upper bounds of a pair.
    pub fn mub(&self, a: usize, b: usize) -> Vec<usize> {
        let mut common = self.up_set(a).clone();
        common.intersect_with(self.up_set(b));
        self.minimal_of_upset(&common)
    }

    /// Minimal elements of an up-closed set: those with no lower cover inside.
    pub fn minimal_of_upset(&self, set: &FixedBitSet) -> Vec<usize> {
        set.ones().filter(|&z| self.down_covers[z].iter().all(|&c| !set.contains(c))).collect()
    }

    /// Minimal elements of a set.
    pub fn minimal_of(&self, set: &FixedBitSet) -> Vec<usize> {
        set.ones()
            .filter(|&y| {
                let mut below = self.down_set(y).clone();
                below.set(y, false);
                below.is_disjoint(set)
            })
            .collect()
    }

    /// Maximal elements of a set.
    pub fn maximal_of(&self, set: &FixedBitSet) -> Vec<usize> {
        set.ones()
            .filter(|&y| {
                let mut above = self.up_set(y).clone();
                above.set(y, false);
                above.is_disjoint(set)
            })
            .collect()
    }

    pub fn generated_subposet(&self, b: &[usize]) -> Poset {
        self.materialize(&self.closure(self.bottom, b))
    }

    pub fn upper_set(&self, x: usize) -> Poset {
        self.materialize(&SubPoset { base: x, elems: self.up_set(x).clone() })
    }

    /// `rk(P) - rk(P(A \ {a}))`.
    pub fn separator_epsilon(&self, a: usize) -> Result<usize, PosetError> {
        if !self.up_covers[self.bottom].contains(&a) {
            return Err(PosetError::NotAnAtom(self.labels[a].clone()));
        }
        let whole = self.whole();
        Ok(self.sub_epsilon(&whole, a))
    }

    // ---- subposet views ----

    pub fn whole(&self) -> SubPoset {
        let mut elems = FixedBitSet::with_capacity(self.len());
        elems.insert_range(..);
        SubPoset { base: self.bottom, elems }
    }

    pub fn sub_rank(&self, s: &SubPoset) -> usize {
        s.elems.ones().map(|x| self.rank[x]).max().unwrap_or(self.rank[s.base]) - self.rank[s.base]
    }

    pub fn sub_rank_of(&self, s: &SubPoset, x: usize) -> usize {
        self.rank[x] - self.rank[s.base]
    }

    pub fn sub_atoms(&self, s: &SubPoset) -> Vec<usize> {
        let r = self.rank[s.base] + 1;
        s.elems.ones().filter(|&x| self.rank[x] == r).collect()
    }

    pub fn sub_maximal(&self, s: &SubPoset) -> Vec<usize> {
        self.maximal_of(&s.elems)
    }

    /// Closure of `atoms` under joins of subsets, inside the ambient upper
    /// set at `base`. An element joins the closure when it is a minimal upper
    /// bound of the closure elements below it; one pass in rank order
    /// suffices because membership only depends on lower elements, and only
    /// lower covers need testing as potential smaller upper bounds.
    pub fn closure(&self, base: usize, atoms: &[usize]) -> SubPoset {
        let n = self.len();
        let mut elems = FixedBitSet::with_capacity(n);
        elems.insert(base);
        let mut reach = FixedBitSet::with_capacity(n);
        for &a in atoms {
            elems.insert(a);
            reach.union_with(self.up_set(a));
        }
        let base_rank = self.rank[base];
        for &y in &self.by_rank {
            if self.rank[y] <= base_rank + 1 || !reach.contains(y) || elems.contains(y) {
                continue;
            }
            let mut t = self.down_set(y).clone();
            t.intersect_with(&elems);
            let count = t.count_ones(..);
            if count <= 1 {
                continue;
            }
            let dominated = self.down_covers[y].iter().any(|&u| t.is_subset(self.down_set(u)));
            if !dominated {
                elems.insert(y);
            }
        }
        SubPoset { base, elems }
    }

    pub fn sub_upper(&self, s: &SubPoset, x: usize) -> SubPoset {
        let mut elems = s.elems.clone();
        elems.intersect_with(self.up_set(x));
        SubPoset { base: x, elems }
    }

    /// `mu(base, x)` for x in the view (zero elsewhere).
    pub fn mobius_from(&self, s: &SubPoset) -> Vec<i64> {
        let mut mu = vec![0i64; self.len()];
        for &x in &self.by_rank {
            if !s.elems.contains(x) {
                continue;
            }
            if x == s.base {
                mu[x] = 1;
                continue;
            }
            let mut below = self.down_set(x).clone();
            below.intersect_with(&s.elems);
            below.set(x, false);
            mu[x] = -below.ones().map(|c| mu[c]).sum::<i64>();
        }
        mu
    }

    pub fn sub_char_poly(&self, s: &SubPoset) -> PolyZ {
        let r = self.sub_rank(s);
        let mu = self.mobius_from(s);
        let mut c = vec![0i64; r + 1];
        for x in s.elems.ones() {
            c[r - self.sub_rank_of(s, x)] += mu[x];
        }
        PolyZ::new(c)
    }

    /// Separator value of atom `a` inside the view.
    pub fn sub_epsilon(&self, s: &SubPoset, a: usize) -> usize {
        let rest: Vec<usize> = self.sub_atoms(s).into_iter().filter(|&b| b != a).collect();
        let deleted = self.closure(s.base, &rest);
        self.sub_rank(s) - self.sub_rank(&deleted)
    }

    /// Materializes a view as a standalone poset (ranks shifted by the base).
    pub fn materialize(&self, s: &SubPoset) -> Poset {
        let members: Vec<usize> = self.by_rank.iter().copied().filter(|&x| s.elems.contains(x)).collect();
        let mut index = HashMap::with_capacity(members.len());
        for (i, &x) in members.iter().enumerate() {
            index.insert(x, i);
        }
        let mut up_covers = vec![Vec::new(); members.len()];
        for (j, &y) in members.iter().enumerate() {
            let mut below = self.down_set(y).clone();
            below.intersect_with(&s.elems);
            below.set(y, false);
            for x in self.maximal_of(&below) {
                up_covers[index[&x]].push(j);
            }
        }
        for v in &mut up_covers {
            v.sort_unstable();
        }
        let base_rank = self.rank[s.base];
        let rank = members.iter().map(|&x| self.rank[x] - base_rank).collect();
        let labels = members.iter().map(|&x| self.labels[x].clone()).collect();
        Poset::from_trusted(labels, up_covers, rank, index[&s.base])
    }

    /// Order isomorphism `self -> other` as an index map, if one exists.
    pub fn is_isomorphic(&self, other: &Poset) -> Option<Vec<usize>> {
        iso::find(self, other)
    }
}

mod iso {
    use super::Poset;
    use std::collections::HashMap;

    /// Colour refinement on the disjoint union of both Hasse diagrams, started
    /// from (rank, up-degree, down-degree).
    fn refine(p: &Poset, q: &Poset) -> (Vec<usize>, Vec<usize>) {
        let n = p.len();
        let total = n + q.len();
        let node = |i: usize| -> (&Poset, usize) { if i < n { (p, i) } else { (q, i - n) } };
        let mut colour: Vec<usize> = {
            let sig: Vec<(usize, usize, usize)> = (0..total)
                .map(|i| {
                    let (g, x) = node(i);
                    (g.rank_of(x), g.up_covers(x).len(), g.down_covers(x).len())
                })
                .collect();
            canon(&sig)
        };
        let mut classes = colour.iter().max().map_or(0, |m| m + 1);
        loop {
            let sig: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..total)
                .map(|i| {
                    let (g, x) = node(i);
                    let off = if i < n { 0 } else { n };
                    let mut ups: Vec<usize> = g.up_covers(x).iter().map(|&y| colour[y + off]).collect();
                    let mut downs: Vec<usize> = g.down_covers(x).iter().map(|&y| colour[y + off]).collect();
                    ups.sort_unstable();
                    downs.sort_unstable();
                    (colour[i], ups, downs)
                })
                .collect();
            let next = canon(&sig);
            let next_classes = next.iter().max().map_or(0, |m| m + 1);
            colour = next;
            if next_classes == classes {
                break;
            }
            classes = next_classes;
        }
        (colour[..n].to_vec(), colour[n..].to_vec())
    }

    fn canon<T: Ord + Clone>(sig: &[T]) -> Vec<usize> {
        let mut sorted: Vec<T> = sig.to_vec();
        sorted.sort();
        sorted.dedup();
        sig.iter().map(|s| sorted.binary_search(s).unwrap()).collect()
    }

    pub(super) fn find(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
        if p.len() != q.len() || p.num_covers() != q.num_covers() || p.rank_counts() != q.rank_counts() {
            return None;
        }
        if p.char_poly() != q.char_poly() {
            return None;
        }
        let (cp, cq) = refine(p, q);
        let mut hist: HashMap<usize, isize> = HashMap::new();
        for &c in &cp {
            *hist.entry(c).or_default() += 1;
        }
        for &c in &cq {
            *hist.entry(c).or_default() -= 1;
        }
        if hist.values().any(|&v| v != 0) {
            return None;
        }
        let order: Vec<usize> = p.by_rank().to_vec();
        let mut map = vec![usize::MAX; p.len()];
        let mut used = vec![false; q.len()];
        let mut steps = 0u64;
        if extend(p, q, &cp, &cq, &order, 0, &mut map, &mut used, &mut steps) {
            Some(map)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        p: &Poset,
        q: &Poset,
        cp: &[usize],
        cq: &[usize],
        order: &[usize],
        k: usize,
        map: &mut [usize],
        used: &mut [bool],
        steps: &mut u64,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        *steps += 1;
        let x = order[k];
        let candidates: Vec<usize> = match p.down_covers(x).first() {
            None => (0..q.len()).filter(|&y| q.down_covers(y).is_empty()).collect(),
            Some(&c) => q.up_covers(map[c]).to_vec(),
        };
        for y in candidates {
            if used[y] || cq[y] != cp[x] {
                continue;
            }
            let mut images: Vec<usize> = p.down_covers(x).iter().map(|&c| map[c]).collect();
            images.sort_unstable();
            if images != q.down_covers(y) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if extend(p, q, cp, cq, order, k + 1, map, used, steps) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        false
    }
}
