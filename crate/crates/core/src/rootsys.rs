//! Positive systems of types A, B and C, their ideals, and the arrangements
//! defined by coefficient matrices of root subsets.
//!
//! Type A with rank parameter ℓ is the positive system of `A_{ℓ-1}` sitting in
//! ℤ^ℓ as the roots `ε_i − ε_j`, i.e. the ideal of `Φ⁺(B_ℓ)` generated by
//! `ε_1 − ε_ℓ`.

use std::cmp::Reverse;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{Arrangement, ArrangementError, GroupKind, LayerData};
use crate::classify::Multiset;
use crate::intlat::{big_vec, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unsupported root system type {0}")]
    UnsupportedType(String),
    #[error("rank must be at least 1")]
    RankTooSmall,
    #[error("{0} is not a positive root of the system")]
    NotAPositiveRoot(String),
    #[error("invalid extension parameter {0}")]
    InvalidExtensionParameter(usize),
    #[error("not covered: {0}")]
    NotCovered(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
}

impl std::str::FromStr for RootType {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        match s {
            "A" | "a" => Ok(RootType::A),
            "B" | "b" => Ok(RootType::B),
            "C" | "c" => Ok(RootType::C),
            other => Err(RootError::UnsupportedType(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    /// Columns in simple-root coordinates.
    Root,
    /// Columns in ε coordinates.
    Integer,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub eps: Vec<i64>,
    pub simple: Vec<i64>,
    pub height: i64,
}

impl Root {
    fn new(ty: RootType, eps: Vec<i64>) -> Root {
        let simple = simple_coords(ty, &eps);
        let height = simple.iter().sum();
        Root { eps, simple, height }
    }

    /// Smallest index with a nonzero ε coordinate.
    pub fn leading_index(&self) -> usize {
        self.eps.iter().position(|&c| c != 0).expect("roots are nonzero")
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.eps.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}e{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}e{}", i + 1)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Inverts `ε = P·s`: partial sums of ε, the last halved for type C.
fn simple_coords(ty: RootType, eps: &[i64]) -> Vec<i64> {
    let l = eps.len();
    let mut acc = 0;
    let mut s: Vec<i64> = eps
        .iter()
        .map(|&e| {
            acc += e;
            acc
        })
        .collect();
    if ty == RootType::C {
        debug_assert!(s[l - 1] % 2 == 0);
        s[l - 1] /= 2;
    }
    s
}

/// Change of basis with `T = P·S`.
pub fn change_of_basis(ty: RootType, l: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(l);
    for i in 1..l {
        p[(i, i - 1)] = (-1).into();
    }
    if ty == RootType::C {
        p[(l - 1, l - 1)] = 2.into();
    }
    p
}

fn unit(l: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; l];
    v[i] = c;
    v
}

fn pair(l: usize, i: usize, j: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; l];
    v[i] = 1;
    v[j] = sign;
    v
}

/// Positive roots ordered by height, ties by simple coordinates descending.
pub fn positive_system(ty: RootType, l: usize) -> Result<Vec<Root>, RootError> {
    if l == 0 {
        return Err(RootError::RankTooSmall);
    }
    let mut eps = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            eps.push(pair(l, i, j, -1));
            if ty != RootType::A {
                eps.push(pair(l, i, j, 1));
            }
        }
        match ty {
            RootType::A => {}
            RootType::B => eps.push(unit(l, i, 1)),
            RootType::C => eps.push(unit(l, i, 2)),
        }
    }
    let mut roots: Vec<Root> = eps.into_iter().map(|e| Root::new(ty, e)).collect();
    roots.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| b.simple.cmp(&a.simple)));
    Ok(roots)
}

/// `β₁ ≤ β₂` iff `β₂ − β₁` is a nonnegative combination of simple roots.
pub fn root_leq(b1: &Root, b2: &Root) -> bool {
    b1.simple.iter().zip(&b2.simple).all(|(x, y)| x <= y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootIdeal {
    pub ty: RootType,
    pub rank: usize,
    /// In the order of [`positive_system`].
    pub roots: Vec<Root>,
    pub generators: Vec<Root>,
    /// Type-B extension: `ε_i` replaced by `2ε_i` for `i ≥ p` (1-based).
    pub extension: Option<usize>,
}

fn find_root(system: &[Root], eps: &[i64]) -> Option<Root> {
    system.iter().find(|r| r.eps == eps).cloned()
}

pub fn ideal_closure(ty: RootType, l: usize, generators: &[Vec<i64>]) -> Result<RootIdeal, RootError> {
    let system = positive_system(ty, l)?;
    let mut gens = Vec::new();
    for g in generators {
        let r = find_root(&system, g).ok_or_else(|| RootError::NotAPositiveRoot(format!("{g:?}")))?;
        gens.push(r);
    }
    let roots = system.iter().filter(|r| gens.iter().any(|g| root_leq(r, g))).cloned().collect();
    Ok(RootIdeal { ty, rank: l, roots, generators: gens, extension: None })
}

pub fn full_system(ty: RootType, l: usize) -> Result<RootIdeal, RootError> {
    let roots = positive_system(ty, l)?;
    let generators = maximal_roots(&roots);
    Ok(RootIdeal { ty, rank: l, roots, generators, extension: None })
}

fn maximal_roots(roots: &[Root]) -> Vec<Root> {
    roots.iter().filter(|r| !roots.iter().any(|s| s != *r && root_leq(r, s))).cloned().collect()
}

pub fn is_ideal(ty: RootType, l: usize, subset: &[Root]) -> bool {
    let Ok(system) = positive_system(ty, l) else { return false };
    subset.iter().all(|b| system.contains(b) && system.iter().all(|a| !root_leq(a, b) || subset.contains(a)))
}

/// Every order ideal, via antichain enumeration over the root poset.
pub fn all_ideals(ty: RootType, l: usize) -> Result<Vec<RootIdeal>, RootError> {
    let system = positive_system(ty, l)?;
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(system: &[Root], start: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(chosen.clone());
        for k in start..system.len() {
            if chosen.iter().all(|&c| !root_leq(&system[c], &system[k]) && !root_leq(&system[k], &system[c])) {
                chosen.push(k);
                rec(system, k + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut antichains = Vec::new();
    rec(&system, 0, &mut chosen, &mut antichains);
    for a in antichains {
        let gens: Vec<Vec<i64>> = a.iter().map(|&k| system[k].eps.clone()).collect();
        out.push(ideal_closure(ty, l, &gens)?);
    }
    Ok(out)
}

impl RootIdeal {
    pub fn extension(&self, p: usize) -> Result<RootIdeal, RootError> {
        if self.ty != RootType::B || p == 0 || p > self.rank + 1 {
            return Err(RootError::InvalidExtensionParameter(p));
        }
        Ok(RootIdeal { extension: Some(p), ..self.clone() })
    }

    fn doubled(&self, r: &Root) -> bool {
        match self.extension {
            Some(p) => r.eps.iter().filter(|&&c| c != 0).count() == 1 && r.leading_index() + 1 >= p,
            None => false,
        }
    }

    /// Columns in ε coordinates, one per root, after the extension.
    pub fn eps_columns(&self) -> Vec<Vec<i64>> {
        self.roots.iter().map(|r| if self.doubled(r) { r.eps.iter().map(|c| 2 * c).collect() } else { r.eps.clone() }).collect()
    }

    pub fn simple_columns(&self) -> Vec<Vec<i64>> {
        self.roots
            .iter()
            .map(|r| if self.doubled(r) { r.simple.iter().map(|c| 2 * c).collect() } else { r.simple.clone() })
            .collect()
    }

    pub fn column_labels(&self) -> Vec<String> {
        self.roots.iter().map(|r| if self.doubled(r) { format!("2{r}") } else { r.to_string() }).collect()
    }

    pub fn contains_eps(&self, eps: &[i64]) -> bool {
        self.roots.iter().any(|r| r.eps == eps)
    }
}

/// `(S_Ψ, T_Ψ, P)` with `T = P·S` checked.
pub fn coefficient_matrices(ideal: &RootIdeal) -> (IntMatrix, IntMatrix, IntMatrix) {
    let l = ideal.rank;
    let s = IntMatrix::from_columns(l, &ideal.simple_columns());
    let t = IntMatrix::from_columns(l, &ideal.eps_columns());
    let p = change_of_basis(ideal.ty, l);
    assert_eq!(p.mul(&s), t, "T = P·S");
    (s, t, p)
}

pub fn build_arrangement(ideal: &RootIdeal, lattice: LatticeKind, group: GroupKind) -> Result<Arrangement, RootError> {
    let cols = match lattice {
        LatticeKind::Root => ideal.simple_columns(),
        LatticeKind::Integer => ideal.eps_columns(),
    };
    Ok(Arrangement::new(group, ideal.rank, cols.iter().map(|c| big_vec(c)).collect(), Some(ideal.column_labels()))?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealStats {
    pub height_distribution: Vec<usize>,
    pub dual_partition: Multiset,
    /// `E_i^+` and `E_i^-` as the partner indices `j` (1-based).
    pub e_plus: Vec<Vec<usize>>,
    pub e_minus: Vec<Vec<usize>>,
    pub b_plus: Vec<usize>,
    pub b_minus: Vec<usize>,
    pub b: Vec<usize>,
    /// Indices `i` with `ε_i` (type B) or `2ε_i` (type C) in the ideal.
    pub short_or_long: Vec<usize>,
    pub extension: Option<usize>,
}

pub fn stats(ideal: &RootIdeal) -> IdealStats {
    let l = ideal.rank;
    let max_h = ideal.roots.iter().map(|r| r.height).max().unwrap_or(0) as usize;
    let mut height_distribution = vec![0usize; max_h];
    for r in &ideal.roots {
        height_distribution[r.height as usize - 1] += 1;
    }
    let mut dual_partition = Vec::with_capacity(l);
    let mut prev = l;
    for (k, &t) in height_distribution.iter().enumerate() {
        dual_partition.extend(std::iter::repeat_n(k, prev.saturating_sub(t)));
        prev = t;
    }
    dual_partition.extend(std::iter::repeat_n(max_h, prev));
    dual_partition.sort_unstable();

    let mut e_plus = vec![Vec::new(); l];
    let mut e_minus = vec![Vec::new(); l];
    let mut short_or_long = Vec::new();
    for r in &ideal.roots {
        let nz: Vec<usize> = (0..l).filter(|&k| r.eps[k] != 0).collect();
        if nz.len() == 1 {
            short_or_long.push(nz[0] + 1);
        } else {
            let (i, j) = (nz[0], nz[1]);
            if r.eps[j] > 0 {
                e_plus[i].push(j + 1);
            } else {
                e_minus[i].push(j + 1);
            }
        }
    }
    for v in e_plus.iter_mut().chain(e_minus.iter_mut()) {
        v.sort_unstable();
    }
    short_or_long.sort_unstable();
    let b_plus: Vec<usize> = e_plus.iter().map(Vec::len).collect();
    let b_minus: Vec<usize> = e_minus.iter().map(Vec::len).collect();
    let b = b_plus.iter().zip(&b_minus).map(|(x, y)| x + y).collect();
    IdealStats { height_distribution, dual_partition, e_plus, e_minus, b_plus, b_minus, b, short_or_long, extension: ideal.extension }
}

/// Parameters of the type-C formulas (1-based, `ℓ+1` for an empty minimum).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeCParams {
    pub n: usize,
    pub s: usize,
}

pub fn type_c_params(ideal: &RootIdeal) -> TypeCParams {
    let st = stats(ideal);
    let l = ideal.rank;
    let s = st.short_or_long.first().copied().unwrap_or(l + 1);
    let n_edges = (1..=l).find(|&i| st.b[i - 1] > 0).unwrap_or(l + 1);
    // an ideal whose only roots are long roots 2ε_i still has n ≤ s
    TypeCParams { n: n_edges.min(s), s }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeBParams {
    pub n: usize,
    pub a: usize,
    pub s: usize,
    pub t: usize,
    /// `m(i)` for `s ≤ i ≤ ℓ`, when `E_i^+ ≠ ∅`.
    pub m: Vec<Option<usize>>,
    pub p: usize,
}

/// Type-B parameters with `a = min{i ≥ n : ε_i ∈ ℐ}`.
pub fn type_b_params(ideal: &RootIdeal) -> Option<TypeBParams> {
    let st = stats(ideal);
    let l = ideal.rank;
    let first_short = *st.short_or_long.first()?;
    let n = (1..=l).find(|&i| st.b[i - 1] > 0).unwrap_or(l + 1).min(first_short);
    let a = st.short_or_long.iter().copied().find(|&i| i >= n)?;
    let s = (a..=l).find(|&i| st.b_plus[i - 1] > 0).unwrap_or(l + 1);
    let p = ideal.extension.unwrap_or(l + 1);
    let m: Vec<Option<usize>> = (1..=l).map(|i| st.e_plus[i - 1].first().copied()).collect();
    let t = (s..=l).find(|&i| m[i - 1].is_some_and(|mi| mi < p)).unwrap_or(l + 1);
    Some(TypeBParams { n, a, s, t, m, p })
}

/// Exponents predicted for the toric arrangement of `ideal` (after its
/// extension, if any) in the given lattice.
pub fn predicted_exponents(ideal: &RootIdeal, lattice: LatticeKind) -> Result<Multiset, RootError> {
    let l = ideal.rank;
    let st = stats(ideal);
    let mut out = match ideal.ty {
        RootType::A => st.dual_partition.clone(),
        RootType::C => {
            let TypeCParams { n, s } = type_c_params(ideal);
            let mut e = vec![0; n - 1];
            e.extend((n..s).map(|i| st.b[i - 1]));
            match lattice {
                LatticeKind::Integer => e.extend((s..=l).map(|i| 2 * (l - i + 1))),
                LatticeKind::Root if s <= l => {
                    e.extend((s..l).map(|i| 2 * (l - i)));
                    e.push(l - s + 1);
                }
                LatticeKind::Root => {}
            }
            e
        }
        RootType::B => {
            if let Some(p) = ideal.extension {
                let s = type_b_params(ideal).map_or(l + 1, |b| b.s);
                if p < s {
                    return Err(RootError::NotCovered(format!("extension parameter p = {p} is below s = {s}")));
                }
            }
            match type_b_params(ideal) {
                // no short root: an ideal of the type A subsystem
                None => st.dual_partition.clone(),
                Some(TypeBParams { n, a, t, p, .. }) => {
                    if t > l && p <= l {
                        return Err(RootError::NotCovered("no index i ≥ s with m(i) < p".into()));
                    }
                    let mut e = vec![0; n - 1];
                    let top = 2 * l + 2 - p - t;
                    if t <= l || top > 0 {
                        e.push(top);
                    }
                    for i in n..l {
                        e.push(if (a..t).contains(&i) { st.b[i - 1] + 1 } else { st.b[i - 1] });
                    }
                    if t > l {
                        // [a, t-1] reaches ℓ, where b_ℓ = 0
                        e.push(1);
                    }
                    e
                }
            }
        }
    };
    if out.len() != l {
        return Err(RootError::NotCovered(format!("formula produced {} exponents for rank {l}", out.len())));
    }
    out.sort_unstable();
    Ok(out)
}

/// The simpler multiset `{2ℓ−p+1} ∪ {b_i}_{i<ℓ}` valid when `E_1^+ ≠ ∅` and `m < p`.
pub fn short_form_exponents(ideal: &RootIdeal) -> Option<Multiset> {
    let st = stats(ideal);
    let l = ideal.rank;
    let p = ideal.extension.unwrap_or(l + 1);
    let m = *st.e_plus.first()?.first()?;
    if ideal.ty != RootType::B || m >= p {
        return None;
    }
    let mut e = vec![2 * l + 1 - p];
    e.extend(st.b[..l - 1].iter().copied());
    e.sort_unstable();
    Some(e)
}

/// Atom order for guided classification: roots grouped by leading index,
/// groups from the last index down, and within a group the negative edges,
/// the short root, the positive edges `ε_i+ε_j` with `j ≥ p`, those with
/// `j < p`, then the long root. Atoms of one root follow the layer order.
pub fn guided_atom_order(ideal: &RootIdeal, data: &LayerData) -> Vec<usize> {
    let p = ideal.extension.unwrap_or(ideal.rank + 1);
    let key = |r: &Root| {
        let i = r.leading_index();
        let nz: Vec<usize> = (0..r.eps.len()).filter(|&k| r.eps[k] != 0).collect();
        let class = if nz.len() == 1 {
            if r.eps[i] == 2 || ideal.doubled(r) { 4 } else { 1 }
        } else if r.eps[nz[1]] < 0 {
            0
        } else if nz[1] + 1 >= p {
            2
        } else {
            3
        };
        (Reverse(i), class, nz.get(1).copied().unwrap_or(0))
    };
    let mut idx: Vec<usize> = (0..ideal.roots.len()).collect();
    idx.sort_by_key(|&k| key(&ideal.roots[k]));
    let mut seen = std::collections::HashSet::new();
    let mut order = Vec::new();
    for k in idx {
        for &a in &data.character_atoms[k] {
            if seen.insert(a) {
                order.push(a);
            }
        }
    }
    order
}

/// Parses `e1-e5`, `e2+e3`, `2e3`, `e4` into ε coordinates.
pub fn parse_root_expr(s: &str, l: usize) -> Result<Vec<i64>, RootError> {
    let bytes = s.as_bytes();
    let mut v = vec![0i64; l];
    let mut pos = 0;
    let err = |offset: usize, message: &str| RootError::Parse { offset, message: message.to_string() };
    let mut first = true;
    while pos < bytes.len() {
        let mut sign = 1;
        if !first || matches!(bytes[pos], b'+' | b'-') {
            match bytes[pos] {
                b'+' => {}
                b'-' => sign = -1,
                _ => return Err(err(pos, "expected '+' or '-'")),
            }
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let coeff: i64 = if pos > start { s[start..pos].parse().map_err(|_| err(start, "bad coefficient"))? } else { 1 };
        if pos >= bytes.len() || bytes[pos] != b'e' {
            return Err(err(pos, "expected 'e'"));
        }
        pos += 1;
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == start {
            return Err(err(pos, "expected an index"));
        }
        let i: usize = s[start..pos].parse().map_err(|_| err(start, "bad index"))?;
        if i == 0 || i > l {
            return Err(err(start, "index out of range"));
        }
        v[i - 1] += sign * coeff;
        first = false;
    }
    if first {
        return Err(err(0, "empty expression"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::factor_positive_integer_roots;
    use crate::poset::PolyZ;

    fn eps(ty: RootType, l: usize) -> Vec<Vec<i64>> {
        positive_system(ty, l).unwrap().into_iter().map(|r| r.eps).collect()
    }

    #[test]
    fn rank_two_systems() {
        assert_eq!(eps(RootType::B, 2), vec![vec![1, -1], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(eps(RootType::C, 2), vec![vec![1, -1], vec![0, 2], vec![1, 1], vec![2, 0]]);
        let a = eps(RootType::A, 3);
        assert_eq!(a, vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]);
        assert!(matches!(positive_system(RootType::B, 0), Err(RootError::RankTooSmall)));
    }

    #[test]
    fn coefficient_matrices_rank_two() {
        let (s, t, p) = coefficient_matrices(&full_system(RootType::B, 2).unwrap());
        assert_eq!(s, IntMatrix::from_rows(4, vec![big_vec(&[1, 0, 1, 1]), big_vec(&[0, 1, 1, 2])]));
        assert_eq!(t, IntMatrix::from_rows(4, vec![big_vec(&[1, 0, 1, 1]), big_vec(&[-1, 1, 0, 1])]));
        assert_eq!(p.determinant(), 1.into());
        let (sc, tc, pc) = coefficient_matrices(&full_system(RootType::C, 2).unwrap());
        assert_eq!(tc, IntMatrix::from_rows(4, vec![big_vec(&[1, 0, 1, 2]), big_vec(&[-1, 2, 1, 0])]));
        // rows of the type B matrix switched
        assert_eq!(sc, IntMatrix::from_rows(4, vec![big_vec(&[1, 0, 1, 2]), big_vec(&[0, 1, 1, 1])]));
        assert_eq!(pc.determinant(), 2.into());
        let single = ideal_closure(RootType::B, 2, &[vec![1, -1]]).unwrap();
        let (s1, t1, _) = coefficient_matrices(&single);
        assert_eq!((s1.column(0), t1.column(0)), (big_vec(&[1, 0]), big_vec(&[1, -1])));
    }

    #[test]
    fn change_of_basis_determinants() {
        for l in 1..6 {
            assert_eq!(change_of_basis(RootType::B, l).determinant(), 1.into());
            assert_eq!(change_of_basis(RootType::C, l).determinant(), 2.into());
        }
    }

    #[test]
    fn order_examples() {
        let sys = positive_system(RootType::B, 2).unwrap();
        let r = |e: &[i64]| find_root(&sys, e).unwrap();
        assert!(root_leq(&r(&[0, 1]), &r(&[0, 1])));
        assert!(root_leq(&r(&[0, 1]), &r(&[1, 0])));
        assert!(!root_leq(&r(&[1, -1]), &r(&[0, 1])) && !root_leq(&r(&[0, 1]), &r(&[1, -1])));
    }

    #[test]
    fn c5_ideal_from_two_generators() {
        let i = ideal_closure(RootType::C, 5, &[vec![1, 0, 0, 0, -1], vec![0, 1, 1, 0, 0]]).unwrap();
        assert_eq!(i.roots.len(), 19);
        let st = stats(&i);
        assert_eq!(st.b_minus[0], 4);
        assert_eq!(st.b_plus[0], 0);
        assert_eq!(st.b[1], 6);
        assert_eq!(st.short_or_long, vec![3, 4, 5]);
        assert_eq!(type_c_params(&i), TypeCParams { n: 1, s: 3 });
        assert!(is_ideal(RootType::C, 5, &i.roots));
        assert_eq!(predicted_exponents(&i, LatticeKind::Integer).unwrap(), vec![2, 4, 4, 6, 6]);
        assert_eq!(predicted_exponents(&i, LatticeKind::Root).unwrap(), vec![2, 3, 4, 4, 6]);
        let atoms: usize = i.eps_columns().iter().map(|c| c.iter().map(|x| x.unsigned_abs()).fold(0, num_integer::gcd) as usize).sum();
        assert_eq!(atoms, 22);
    }

    #[test]
    fn full_c5_parameters() {
        let f = full_system(RootType::C, 5).unwrap();
        let st = stats(&f);
        assert_eq!(st.b, (1..=5).map(|i| 2 * (5 - i)).collect::<Vec<_>>());
        assert_eq!(type_c_params(&f), TypeCParams { n: 1, s: 1 });
    }

    #[test]
    fn dual_partition_examples() {
        let b2 = full_system(RootType::B, 2).unwrap();
        assert_eq!(stats(&b2).height_distribution, vec![2, 1, 1]);
        assert_eq!(stats(&b2).dual_partition, vec![1, 3]);
        let empty = ideal_closure(RootType::C, 4, &[]).unwrap();
        assert!(empty.roots.is_empty());
        assert_eq!(stats(&empty).dual_partition, vec![0; 4]);
        for ty in [RootType::A, RootType::B, RootType::C] {
            assert_eq!(predicted_exponents(&ideal_closure(ty, 3, &[]).unwrap(), LatticeKind::Root).unwrap(), vec![0, 0, 0]);
        }
    }

    /// Brute-force χ of the real B₂ arrangement: count points of 𝔽_q² off
    /// the four lines for a few primes q and interpolate.
    #[test]
    fn b2_dual_partition_matches_finite_field_count() {
        let lines = [[1i64, -1], [0, 1], [1, 0], [1, 1]];
        for q in [5i64, 7, 11, 13] {
            let count = (0..q).flat_map(|x| (0..q).map(move |y| (x, y))).filter(|(x, y)| lines.iter().all(|l| (l[0] * x + l[1] * y).rem_euclid(q) != 0)).count() as i64;
            assert_eq!(count, (q - 1) * (q - 3));
        }
        assert_eq!(factor_positive_integer_roots(&PolyZ::from_roots(&[1, 3])).unwrap(), Some(stats(&full_system(RootType::B, 2).unwrap()).dual_partition));
    }

    #[test]
    fn extensions() {
        let b2 = full_system(RootType::B, 2).unwrap();
        assert_eq!(b2.extension(3).unwrap().eps_columns(), b2.eps_columns());
        assert!(matches!(b2.extension(4), Err(RootError::InvalidExtensionParameter(4))));
        assert!(full_system(RootType::C, 2).unwrap().extension(1).is_err());
        let b5 = b5_table_ideal();
        let cols = b5.extension(4).unwrap().eps_columns();
        assert!(cols.contains(&vec![0, 0, 0, 2, 0]) && cols.contains(&vec![0, 0, 0, 0, 2]));
        assert!(cols.contains(&vec![0, 0, 1, 0, 0]) && !cols.contains(&vec![0, 0, 0, 1, 0]));
    }

    pub(crate) fn b5_table_ideal() -> RootIdeal {
        ideal_closure(RootType::B, 5, &[vec![1, 0, 0, 1, 0], vec![0, 1, 1, 0, 0]]).unwrap()
    }

    #[test]
    fn b5_table_parameters() {
        let i = b5_table_ideal();
        assert_eq!(i.roots.len(), 23);
        let e = i.extension(4).unwrap();
        let bp = type_b_params(&e).unwrap();
        assert_eq!((bp.n, bp.a, bp.s, bp.t), (1, 1, 1, 2));
        assert_eq!(bp.m[1], Some(3));
        assert_eq!(predicted_exponents(&e, LatticeKind::Integer).unwrap(), vec![2, 4, 6, 6, 7]);
    }

    #[test]
    fn full_rank_three_root_lattice() {
        for ty in [RootType::B, RootType::C] {
            assert_eq!(predicted_exponents(&full_system(ty, 3).unwrap(), LatticeKind::Root).unwrap(), vec![2, 3, 4]);
        }
    }

    #[test]
    fn ideal_counts() {
        // Catalan numbers for type A, central binomials for B and C
        assert_eq!(all_ideals(RootType::A, 4).unwrap().len(), 14);
        assert_eq!(all_ideals(RootType::B, 3).unwrap().len(), 20);
        assert_eq!(all_ideals(RootType::C, 3).unwrap().len(), 20);
        for i in all_ideals(RootType::B, 3).unwrap() {
            assert!(is_ideal(RootType::B, 3, &i.roots));
        }
        assert!(is_ideal(RootType::B, 3, &positive_system(RootType::B, 3).unwrap()));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_root_expr("e1-e5", 5).unwrap(), vec![1, 0, 0, 0, -1]);
        assert_eq!(parse_root_expr("2e3", 5).unwrap(), vec![0, 0, 2, 0, 0]);
        assert_eq!(parse_root_expr("e2+e3", 3).unwrap(), vec![0, 1, 1]);
        assert!(matches!(parse_root_expr("e1*e2", 2), Err(RootError::Parse { offset: 2, .. })));
        assert!(parse_root_expr("e7", 3).is_err());
        assert!(parse_root_expr("", 3).is_err());
    }
}
