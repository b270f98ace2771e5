//! Central integral arrangements in `G^ℓ` for `G = ℝ` (hyperplanes) or
//! `G = S¹` (hypertori), and their posets of layers.
//!
//! A layer is stored as a saturated sublattice `Λ ⊆ ℤ^ℓ` (the characters that
//! are constant on it) plus the value of that constant on each Hermite basis
//! row, as an element of ℚ/ℤ (`t^λ = exp(2πi·value)`). Saturation makes the
//! layer connected, and the Hermite basis makes the pair canonical.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intlat::{self, content_and_primitive, hermite_normal_form, left_kernel, saturate, smith_normal_form, IntMatrix, Sublattice};
use crate::poset::{PolyZ, Poset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("character {0} is the zero vector")]
    ZeroCharacter(usize),
    #[error("character {index} has length {got}, expected {expected}")]
    LengthMismatch { index: usize, expected: usize, got: usize },
    #[error("layer count exceeded the budget of {0}")]
    BudgetExceeded(usize),
    #[error("layer not found in the poset")]
    LayerNotFound,
    #[error("element {0} is not an atom")]
    AtomNotFound(usize),
    #[error("{0} labels given for {1} characters")]
    LabelCount(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Real,
    Torus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub vector: Vec<BigInt>,
    pub content: BigInt,
    pub primitive: Vec<BigInt>,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layer {
    pub lattice: Sublattice,
    /// Values in `[0, 1)` on the Hermite basis rows of `lattice`.
    pub values: Vec<BigRational>,
}

fn frac(q: &BigRational) -> BigRational {
    q - q.floor()
}

fn dot_q(row: &[BigInt], values: &[BigRational]) -> BigRational {
    row.iter().zip(values).fold(BigRational::zero(), |acc, (c, v)| acc + BigRational::from_integer(c.clone()) * v)
}

impl Layer {
    pub fn whole(dim: usize) -> Self {
        Layer { lattice: Sublattice::zero(dim), values: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Value of the layer's character on a vector of its lattice.
    pub fn value_on(&self, v: &[BigInt]) -> Option<BigRational> {
        let coeffs = intlat::express_in_basis(v, &self.lattice).ok()??;
        if !coeffs.iter().all(|c| c.is_integer()) {
            return None;
        }
        let ints: Vec<BigInt> = coeffs.iter().map(|c| c.to_integer()).collect();
        Some(frac(&dot_q(&ints, &self.values)))
    }

    /// Reverse inclusion of layers: `self ≤ other` iff `other ⊆ self` as sets.
    pub fn leq(&self, other: &Layer) -> bool {
        let b = self.lattice.basis();
        (0..b.rows()).all(|i| other.value_on(b.row(i)).as_ref() == Some(&self.values[i]))
    }
}

/// Connected components of the solution set of `t^{g_i} = exp(2πi v_i)`
/// (torus) or `<g_i, x> = 0` (real) for generator rows `g_i`.
fn components(gens: &IntMatrix, values: &[BigRational], group: GroupKind) -> Vec<Layer> {
    let dim = gens.cols();
    if group == GroupKind::Real {
        let (sat, _) = saturate(&Sublattice::from_generators(gens));
        let values = vec![BigRational::zero(); sat.rank()];
        return vec![Layer { lattice: sat, values }];
    }
    // consistency on relations among generators
    let kernel = left_kernel(gens);
    for i in 0..kernel.rows() {
        if !dot_q(kernel.row(i), values).is_integer() {
            return Vec::new();
        }
    }
    let (h, u) = hermite_normal_form(gens);
    let s = (0..h.rows()).filter(|&i| !h.is_zero_row(i)).count();
    if s == 0 {
        return vec![Layer::whole(dim)];
    }
    let h_top = h.select_rows(|i| i < s);
    let v_h: Vec<BigRational> = (0..s).map(|i| frac(&dot_q(u.row(i), values))).collect();
    let m = Sublattice::from_generators(&h_top);
    let (sat, _) = saturate(&m);
    // h_top = C * sat.basis
    let c_rows: Vec<Vec<BigInt>> = (0..s)
        .map(|i| {
            intlat::express_in_basis(h_top.row(i), &sat)
                .expect("same ambient rank")
                .expect("lattice lies in its saturation")
                .into_iter()
                .map(|q| {
                    debug_assert!(q.is_integer());
                    q.to_integer()
                })
                .collect()
        })
        .collect();
    let c = IntMatrix::from_rows(s, c_rows);
    // C w ≡ v_h (mod 1); with U C V = D and w = V z: d_i z_i ≡ (U v_h)_i
    let snf = smith_normal_form(&c);
    let uv: Vec<BigRational> = (0..s).map(|i| dot_q(snf.left.row(i), &v_h)).collect();
    let mut out = Vec::new();
    let d: Vec<BigInt> = snf.diagonal.clone();
    let counts: Vec<usize> = d.iter().map(|x| x.to_usize().expect("small torsion")).collect();
    let mut k = vec![0usize; s];
    loop {
        let z: Vec<BigRational> = (0..s)
            .map(|i| (uv[i].clone() + BigRational::from_integer(BigInt::from(k[i]))) / BigRational::from_integer(d[i].clone()))
            .collect();
        let w: Vec<BigRational> = (0..s).map(|i| frac(&dot_q(&snf.right.row_vec(i), &z))).collect();
        out.push(Layer { lattice: sat.clone(), values: w });
        let mut pos = 0;
        loop {
            if pos == s {
                out.sort();
                return out;
            }
            k[pos] += 1;
            if k[pos] < counts[pos] {
                break;
            }
            k[pos] = 0;
            pos += 1;
        }
    }
}

/// Layers of the atom of a single character.
pub fn atom_layers(c: &Character, group: GroupKind, dim: usize) -> Vec<Layer> {
    let prim = IntMatrix::from_rows(dim, vec![c.primitive.clone()]);
    match group {
        GroupKind::Real => components(&prim, &[BigRational::zero()], group),
        GroupKind::Torus => {
            let d = &c.content;
            let mut out: Vec<Layer> = num_iter(d)
                .into_iter()
                .flat_map(|k| components(&prim, &[BigRational::new(k, d.clone())], group))
                .collect();
            out.sort();
            out
        }
    }
}

fn num_iter(d: &BigInt) -> Vec<BigInt> {
    let n = d.to_usize().expect("small content");
    (0..n).map(BigInt::from).collect()
}

/// All components of `X ∩ Y`.
pub fn join_layers(x: &Layer, y: &Layer, group: GroupKind) -> Vec<Layer> {
    let gens = x.lattice.basis().vstack(y.lattice.basis());
    let mut values = x.values.clone();
    values.extend(y.values.iter().cloned());
    components(&gens, &values, group)
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub group: GroupKind,
    pub dim: usize,
    pub characters: Vec<Character>,
    pub warnings: Vec<String>,
}

/// Element data of a built layer poset, indexed like the poset.
#[derive(Clone, Debug)]
pub struct LayerData {
    pub layers: Vec<Layer>,
    /// For each character, its atom elements.
    pub character_atoms: Vec<Vec<usize>>,
}

impl Arrangement {
    pub fn new(group: GroupKind, dim: usize, vectors: Vec<Vec<BigInt>>, labels: Option<Vec<String>>) -> Result<Self, ArrangementError> {
        if let Some(l) = &labels {
            if l.len() != vectors.len() {
                return Err(ArrangementError::LabelCount(l.len(), vectors.len()));
            }
        }
        let mut characters: Vec<Character> = Vec::new();
        let mut warnings = Vec::new();
        for (i, v) in vectors.into_iter().enumerate() {
            if v.len() != dim {
                return Err(ArrangementError::LengthMismatch { index: i, expected: dim, got: v.len() });
            }
            let (content, primitive) = content_and_primitive(&v).map_err(|_| ArrangementError::ZeroCharacter(i))?;
            let label = labels.as_ref().map(|l| l[i].clone()).unwrap_or_else(|| default_char_label(&v, group));
            if characters.iter().any(|c| c.vector == v) {
                let msg = format!("duplicate character {label} ignored");
                log::warn!("{msg}");
                warnings.push(msg);
                continue;
            }
            characters.push(Character { vector: v, content, primitive, label });
        }
        Ok(Arrangement { group, dim, characters, warnings })
    }

    pub fn from_i64(group: GroupKind, dim: usize, vectors: &[Vec<i64>]) -> Result<Self, ArrangementError> {
        Self::new(group, dim, vectors.iter().map(|v| intlat::big_vec(v)).collect(), None)
    }

    /// Characters given as matrix columns.
    pub fn from_columns(group: GroupKind, m: &IntMatrix, labels: Option<Vec<String>>) -> Result<Self, ArrangementError> {
        let cols = (0..m.cols()).map(|j| m.column(j)).collect();
        Self::new(group, m.rows(), cols, labels)
    }

    /// Builds the poset of layers by breadth-first closure over ranks.
    pub fn layer_poset(&self, cap: Option<usize>) -> Result<(Poset, LayerData), ArrangementError> {
        let cap = cap.unwrap_or(usize::MAX);
        let mut atoms: BTreeMap<Layer, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.characters.iter().enumerate() {
            for l in atom_layers(c, self.group, self.dim) {
                atoms.entry(l).or_default().push(i);
            }
        }
        for (l, chars) in &atoms {
            if chars.len() > 1 {
                let names: Vec<&str> = chars.iter().map(|&i| self.characters[i].label.as_str()).collect();
                let _ = l;
                let msg = format!("characters {} share an atom layer; it is counted once", names.join(", "));
                log::warn!("{msg}");
            }
        }
        let atom_list: Vec<Layer> = atoms.keys().cloned().collect();

        let mut ranks: Vec<Vec<Layer>> = vec![vec![Layer::whole(self.dim)]];
        let mut edges: Vec<Vec<(usize, usize)>> = Vec::new(); // per rank k: (index in rank k, index in rank k+1)
        if !atom_list.is_empty() {
            ranks.push(atom_list.clone());
            edges.push((0..atom_list.len()).map(|j| (0, j)).collect());
        }
        let mut total = 1 + atom_list.len();
        if total > cap {
            return Err(ArrangementError::BudgetExceeded(total));
        }
        let group = self.group;
        loop {
            let k = ranks.len() - 1;
            if k == 0 {
                break;
            }
            let frontier = &ranks[k];
            let found: Vec<Vec<Layer>> = frontier
                .par_iter()
                .map(|x| {
                    let mut ups: Vec<Layer> = atom_list
                        .iter()
                        .flat_map(|a| join_layers(x, a, group))
                        .filter(|y| y.rank() == k + 1)
                        .collect();
                    ups.sort();
                    ups.dedup();
                    ups
                })
                .collect();
            let mut next: BTreeMap<Layer, usize> = BTreeMap::new();
            for ups in &found {
                for y in ups {
                    next.entry(y.clone()).or_insert(0);
                }
            }
            if next.is_empty() {
                break;
            }
            total += next.len();
            if total > cap {
                return Err(ArrangementError::BudgetExceeded(total));
            }
            for (i, v) in next.values_mut().enumerate() {
                *v = i;
            }
            let mut e = Vec::new();
            for (xi, ups) in found.iter().enumerate() {
                for y in ups {
                    e.push((xi, next[y]));
                }
            }
            edges.push(e);
            ranks.push(next.into_keys().collect());
        }

        let mut offsets = vec![0usize];
        for r in &ranks {
            offsets.push(offsets.last().unwrap() + r.len());
        }
        let n = *offsets.last().unwrap();
        let mut up_covers = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            for &(a, b) in e {
                up_covers[offsets[k] + a].push(offsets[k + 1] + b);
            }
        }
        for v in &mut up_covers {
            v.sort_unstable();
        }
        let mut rank = Vec::with_capacity(n);
        let mut layers = Vec::with_capacity(n);
        for (k, r) in ranks.into_iter().enumerate() {
            for l in r {
                rank.push(k);
                layers.push(l);
            }
        }
        let labels = layers.iter().map(|l| layer_label(l, self.group, self.dim)).collect();
        let poset = Poset::from_trusted(labels, up_covers, rank, 0);
        let mut character_atoms = vec![Vec::new(); self.characters.len()];
        for (j, l) in atom_list.iter().enumerate() {
            for &c in &atoms[l] {
                character_atoms[c].push(offsets[1] + j);
            }
        }
        Ok((poset, LayerData { layers, character_atoms }))
    }

    /// Rank of the arrangement: rank of the lattice spanned by all characters.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = self.characters.iter().map(|c| c.vector.clone()).collect();
        Sublattice::from_generators(&IntMatrix::from_rows(self.dim, rows)).rank()
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    /// Arrangement characteristic polynomial `t^{ℓ - rk} χ_L(t)` (g = 1).
    pub fn char_poly(&self, poset: &Poset) -> PolyZ {
        poset.char_poly().shift(self.dim - poset.rank())
    }

    /// `{0^{ℓ - rk}} ∪ exp(L)` when the layer poset is factorable.
    pub fn exponents(&self, poset: &Poset) -> Option<Vec<usize>> {
        let e = crate::classify::factor_positive_integer_roots(&poset.char_poly()).ok()??;
        let mut out = vec![0; self.dim - poset.rank()];
        out.extend(e);
        out.sort_unstable();
        Some(out)
    }

    /// Central real arrangement of the characters with a component through
    /// the layer `x`.
    pub fn localization(&self, poset: &Poset, data: &LayerData, x: usize) -> Result<Arrangement, ArrangementError> {
        if x >= poset.len() {
            return Err(ArrangementError::LayerNotFound);
        }
        let mut vectors = Vec::new();
        let mut labels = Vec::new();
        for (i, c) in self.characters.iter().enumerate() {
            if data.character_atoms[i].iter().any(|&a| poset.leq(a, x)) {
                vectors.push(c.primitive.clone());
                labels.push(c.label.clone());
            }
        }
        Arrangement::new(GroupKind::Real, self.dim, vectors, Some(labels))
    }

    pub fn find_layer(&self, data: &LayerData, layer: &Layer) -> Option<usize> {
        data.layers.iter().position(|l| l == layer)
    }
}

/// The restriction to an atom: the upper set of the layer poset there.
pub fn restriction_poset(poset: &Poset, h: usize) -> Result<Poset, ArrangementError> {
    if !poset.atoms().contains(&h) {
        return Err(ArrangementError::AtomNotFound(h));
    }
    Ok(poset.upper_set(h))
}

/// Whether `X ∩ H` is connected (and nonempty) for the character `h`:
/// exactly one component over all atom layers of `h`.
pub fn check_arrangement_tm_condition(arr: &Arrangement, x: &Layer, h: &Character) -> bool {
    let total: usize = atom_layers(h, arr.group, arr.dim).iter().map(|a| join_layers(x, a, arr.group).len()).sum();
    total == 1
}

fn default_char_label(v: &[BigInt], group: GroupKind) -> String {
    match group {
        GroupKind::Torus => format!("{}=1", monomial(v)),
        GroupKind::Real => format!("{}=0", linear_form(v)),
    }
}

fn monomial(v: &[BigInt]) -> String {
    let mut s = String::new();
    for (i, e) in v.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            let _ = write!(s, "t{}", i + 1);
        } else {
            let _ = write!(s, "t{}^{}", i + 1, e);
        }
    }
    s
}

fn linear_form(v: &[BigInt]) -> String {
    let mut s = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else if s.is_empty() { "" } else { "+" };
        let a = c.abs();
        if a.is_one() {
            let _ = write!(s, "{sign}x{}", i + 1);
        } else {
            let _ = write!(s, "{sign}{a}x{}", i + 1);
        }
    }
    s
}

/// `exp(2πi q)` written as 1, -1, or e(q).
fn root_of_unity(q: &BigRational) -> String {
    if q.is_zero() {
        "1".into()
    } else if q == &BigRational::new(BigInt::one(), BigInt::from(2)) {
        "-1".into()
    } else {
        format!("e({}/{})", q.numer(), q.denom())
    }
}

/// Display label: ambient space for 0̂, coordinates for torus points, and
/// defining equations otherwise.
pub fn layer_label(l: &Layer, group: GroupKind, dim: usize) -> String {
    let b = l.lattice.basis();
    if l.rank() == 0 {
        return match group {
            GroupKind::Torus => format!("(S^1)^{dim}"),
            GroupKind::Real => format!("R^{dim}"),
        };
    }
    if l.rank() == dim {
        // full saturated lattice: Hermite basis is the identity
        let coords: Vec<String> = match group {
            GroupKind::Torus => l.values.iter().map(root_of_unity).collect(),
            GroupKind::Real => vec!["0".into(); dim],
        };
        return format!("({})", coords.join(","));
    }
    let eqs: Vec<String> = (0..b.rows())
        .map(|i| match group {
            GroupKind::Torus => format!("{}={}", monomial(b.row(i)), root_of_unity(&l.values[i])),
            GroupKind::Real => format!("{}=0", linear_form(b.row(i))),
        })
        .collect();
    eqs.join(", ")
}

/// Integer content of a BigInt vector, as used by the atom-count invariant.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::intlat::big_vec;

    fn ch(v: &[i64]) -> Character {
        let vector = big_vec(v);
        let (content, primitive) = content_and_primitive(&vector).unwrap();
        Character { vector, content, primitive, label: String::new() }
    }

    #[test]
    fn atom_layer_examples() {
        let t = atom_layers(&ch(&[0, 2]), GroupKind::Torus, 2);
        assert_eq!(t.len(), 2);
        let labels: Vec<String> = t.iter().map(|l| layer_label(l, GroupKind::Torus, 2)).collect();
        assert_eq!(labels, vec!["t2=1", "t2=-1"]);
        assert_eq!(atom_layers(&ch(&[1, 1]), GroupKind::Torus, 2).len(), 1);
        assert_eq!(atom_layers(&ch(&[0, 2]), GroupKind::Real, 2), atom_layers(&ch(&[0, 1]), GroupKind::Real, 2));
        let neg = atom_layers(&ch(&[-1, 0, 3]), GroupKind::Torus, 3);
        assert_eq!(neg.len(), 1);
        assert_eq!(layer_label(&neg[0], GroupKind::Torus, 3), "t1t3^-3=1");
    }

    #[test]
    fn join_examples() {
        let a = &atom_layers(&ch(&[1, 1]), GroupKind::Torus, 2)[0];
        let b = &atom_layers(&ch(&[1, -1]), GroupKind::Torus, 2)[0];
        let j = join_layers(a, b, GroupKind::Torus);
        let labels: Vec<String> = j.iter().map(|l| layer_label(l, GroupKind::Torus, 2)).collect();
        assert_eq!(labels, vec!["(1,1)", "(-1,-1)"]);
        let t1 = atom_layers(&ch(&[2, 0]), GroupKind::Torus, 2);
        assert!(join_layers(&t1[0], &t1[1], GroupKind::Torus).is_empty());
        let ra = &atom_layers(&ch(&[1, 1]), GroupKind::Real, 2)[0];
        let rb = &atom_layers(&ch(&[1, -1]), GroupKind::Real, 2)[0];
        let rj = join_layers(ra, rb, GroupKind::Real);
        assert_eq!(rj.len(), 1);
        assert_eq!(rj[0].rank(), 2);
    }

    /// Brute force: `t^{c1} = t^{c2} = 1` cuts out a finite group of order
    /// `|det|`, so every solution is a point of `(μ_N)^2` with `N = |det|`.
    #[test]
    fn point_counts_match_brute_force_torsion_points() {
        let chars = [[1i64, 1], [1, -1], [2, 1], [1, 3], [0, 2], [3, -2]];
        for (i, c1) in chars.iter().enumerate() {
            for c2 in &chars[i + 1..] {
                let n = (c1[0] * c2[1] - c1[1] * c2[0]).abs();
                let mut brute = 0;
                for x in 0..n {
                    for y in 0..n {
                        if (c1[0] * x + c1[1] * y).rem_euclid(n) == 0 && (c2[0] * x + c2[1] * y).rem_euclid(n) == 0 {
                            brute += 1;
                        }
                    }
                }
                let fast: usize = atom_layers(&ch(c1), GroupKind::Torus, 2)
                    .iter()
                    .flat_map(|a| {
                        atom_layers(&ch(c2), GroupKind::Torus, 2)
                            .into_iter()
                            .flat_map(|b| join_layers(a, &b, GroupKind::Torus))
                            .collect::<Vec<_>>()
                    })
                    .count();
                assert_eq!(fast, brute, "{c1:?} {c2:?}");
            }
        }
    }

    #[test]
    fn b2_layer_poset_matches_hand_entry() {
        let arr = fixtures::b2_torus();
        let (p, _) = arr.layer_poset(None).unwrap();
        assert_eq!(p.len(), 7);
        assert_eq!(p.num_covers(), 10);
        assert_eq!(p.char_poly(), PolyZ::from_roots(&[2, 2]));
        assert!(p.is_isomorphic(&fixtures::b2_poset()).is_some());
        for l in ["t1=1", "t2=1", "t1t2=1", "t1t2^-1=1", "(1,1)", "(-1,-1)"] {
            assert!(p.find(l).is_some(), "{l}");
        }
    }

    #[test]
    fn empty_arrangement() {
        let arr = Arrangement::from_i64(GroupKind::Torus, 3, &[]).unwrap();
        let (p, _) = arr.layer_poset(None).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(arr.char_poly(&p), PolyZ::monomial(3));
        assert_eq!(arr.exponents(&p), Some(vec![0, 0, 0]));
    }

    #[test]
    fn matrix_s_counts() {
        let (p, _) = fixtures::matrix_s(GroupKind::Torus).layer_poset(None).unwrap();
        assert_eq!(p.rank_counts(), vec![1, 6, 9, 2]);
        let real = fixtures::matrix_s(GroupKind::Real);
        let (q, _) = real.layer_poset(None).unwrap();
        assert_eq!(real.char_poly(&q), PolyZ::from_roots(&[1]).mul(&PolyZ::new(vec![7, -5, 1])));
        assert_eq!(real.exponents(&q), None);
    }

    #[test]
    fn localization_examples() {
        let arr = fixtures::b2_torus();
        let (p, data) = arr.layer_poset(None).unwrap();
        assert!(arr.localization(&p, &data, p.bottom()).unwrap().characters.is_empty());
        let loc = arr.localization(&p, &data, p.find("(-1,-1)").unwrap()).unwrap();
        let vs: Vec<Vec<BigInt>> = loc.characters.iter().map(|c| c.vector.clone()).collect();
        assert_eq!(vs, vec![big_vec(&[1, 1]), big_vec(&[1, -1])]);
        assert!(arr.localization(&p, &data, 99).is_err());
    }

    #[test]
    fn restriction_examples() {
        let arr = fixtures::b2_torus();
        let (p, _) = arr.layer_poset(None).unwrap();
        let r = restriction_poset(&p, p.find("t1t2^-1=1").unwrap()).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r.char_poly(), PolyZ::from_roots(&[2]));
        assert!(restriction_poset(&p, p.bottom()).is_err());
    }

    #[test]
    fn tm_condition_examples() {
        let arr = fixtures::b2_torus();
        let (p, data) = arr.layer_poset(None).unwrap();
        let layer = |l: &str| data.layers[p.find(l).unwrap()].clone();
        assert!(check_arrangement_tm_condition(&arr, &layer("t2=1"), &ch(&[1, 1])));
        assert!(!check_arrangement_tm_condition(&arr, &layer("t1t2=1"), &ch(&[1, -1])));
        let a2 = Arrangement::from_i64(GroupKind::Torus, 3, &[vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]).unwrap();
        let (q, qd) = a2.layer_poset(None).unwrap();
        let x = qd.layers[q.find("t1t2^-1=1").unwrap()].clone();
        assert!(check_arrangement_tm_condition(&a2, &x, &ch(&[0, 0, 1])));
    }

    #[test]
    fn order_matches_layer_inclusion() {
        let (p, data) = fixtures::matrix_s(GroupKind::Torus).layer_poset(None).unwrap();
        for x in 0..p.len() {
            for y in 0..p.len() {
                assert_eq!(p.leq(x, y), data.layers[x].leq(&data.layers[y]), "{} {}", p.label(x), p.label(y));
            }
        }
    }

    #[test]
    fn duplicates_warn() {
        let arr = Arrangement::from_i64(GroupKind::Torus, 2, &[vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(arr.characters.len(), 1);
        assert_eq!(arr.warnings.len(), 1);
        assert!(matches!(Arrangement::from_i64(GroupKind::Torus, 2, &[vec![0, 0]]), Err(ArrangementError::ZeroCharacter(0))));
    }

    mod props {
        use super::*;
        use crate::corpus;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn torus_atoms_count_contents_and_order_is_inclusion(seed in any::<u64>()) {
                let arr = corpus::random_arrangement(seed, &corpus::CorpusParams { group: Some(GroupKind::Torus), ..Default::default() });
                let (p, data) = arr.layer_poset(None).unwrap();
                let distinct_primitives = {
                    let mut v: Vec<_> = arr
                        .characters
                        .iter()
                        .map(|c| {
                            let neg: Vec<BigInt> = c.primitive.iter().map(|x| -x).collect();
                            c.primitive.clone().max(neg)
                        })
                        .collect();
                    v.sort();
                    v.dedup();
                    v.len()
                };
                if distinct_primitives == arr.characters.len() {
                    let total: usize = arr.characters.iter().map(|c| c.content.to_usize().unwrap()).sum();
                    prop_assert_eq!(p.atoms().len(), total);
                }
                if p.len() <= 50 {
                    for x in 0..p.len() {
                        for y in 0..p.len() {
                            prop_assert_eq!(p.leq(x, y), data.layers[x].leq(&data.layers[y]));
                        }
                    }
                }
            }
        }
    }
}
