//! Factorable, divisional and inductive posets; induction tables; the
//! classification report.
//!
//! Searches run on [`SubPoset`] views of one ambient poset and memoize on the
//! key (base element, atom set). For locally geometric posets a view is the
//! join-closure of its atoms above its base, so the key determines the view.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::budget::{Budget, Exhausted};
use crate::geometry::{self, ChainWitness, IdealKind, IdealTest};
use crate::poset::{PolyZ, Poset, SubPoset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("poset is not locally geometric")]
    NotLocallyGeometric,
    #[error("element {0} is not an atom")]
    AtomNotFound(String),
    #[error("polynomial {0} is not monic")]
    NotMonic(String),
    #[error("guided ordering fails divisibility at step {step}")]
    DivisibilityFailed { step: usize },
    #[error("guided ordering: restriction at step {step} could not be shown inductive")]
    RestrictionNotInductive { step: usize },
    #[error(transparent)]
    Budget(#[from] Exhausted),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Sorted multiset of nonnegative integers.
pub type Multiset = Vec<usize>;

fn msort(mut v: Multiset) -> Multiset {
    v.sort_unstable();
    v
}

/// Removes one copy of each element of `sub` from `sup`; `None` if `sub` is
/// not contained.
fn multiset_minus(sup: &[usize], sub: &[usize]) -> Option<Multiset> {
    let mut rest = sup.to_vec();
    for x in sub {
        let i = rest.iter().position(|y| y == x)?;
        rest.remove(i);
    }
    Some(rest)
}

pub fn triple(p: &Poset, a: usize) -> Result<(Poset, Poset), ClassifyError> {
    if !p.atoms().contains(&a) {
        return Err(ClassifyError::AtomNotFound(p.label(a).to_string()));
    }
    let rest: Vec<usize> = p.atoms().into_iter().filter(|&b| b != a).collect();
    Ok((p.generated_subposet(&rest), p.upper_set(a)))
}

pub fn deletion_restriction_residual(p: &Poset, a: usize) -> Result<PolyZ, ClassifyError> {
    if !geometry::is_locally_geometric(p) {
        return Err(ClassifyError::NotLocallyGeometric);
    }
    let (del, res) = triple(p, a)?;
    let eps = p.rank() - del.rank();
    Ok(residual_parts(&p.char_poly(), eps, &del.char_poly(), &res.char_poly()))
}

fn residual_parts(chi: &PolyZ, eps: usize, chi_del: &PolyZ, chi_res: &PolyZ) -> PolyZ {
    chi.sub(&chi_del.shift(eps).sub(chi_res))
}

/// Residual for an atom of a view, without materializing.
pub fn view_residual(p: &Poset, view: &SubPoset, a: usize) -> PolyZ {
    let rest: Vec<usize> = p.sub_atoms(view).into_iter().filter(|&b| b != a).collect();
    let del = p.closure(view.base, &rest);
    let res = p.sub_upper(view, a);
    let eps = p.sub_rank(view) - p.sub_rank(&del);
    residual_parts(&p.sub_char_poly(view), eps, &p.sub_char_poly(&del), &p.sub_char_poly(&res))
}

/// Positive integer roots with multiplicity, if `poly` splits completely over
/// them.
pub fn factor_positive_integer_roots(poly: &PolyZ) -> Result<Option<Multiset>, ClassifyError> {
    if poly.leading() != 1 {
        return Err(ClassifyError::NotMonic(poly.to_string()));
    }
    let mut rest = poly.clone();
    let mut roots = Vec::new();
    while rest.degree().unwrap_or(0) > 0 {
        let c0 = rest.coeff(0).unsigned_abs();
        if c0 == 0 {
            return Ok(None);
        }
        let mut found = None;
        let mut d = 1u64;
        while d * d <= c0 {
            if c0.is_multiple_of(d) {
                for cand in [d, c0 / d] {
                    if rest.eval(cand as i64) == 0 {
                        found = Some(cand);
                        break;
                    }
                }
                if found.is_some() {
                    break;
                }
            }
            d += 1;
        }
        let Some(r) = found else { return Ok(None) };
        rest = rest.div_exact(&PolyZ::from_roots(&[r as i64])).expect("root divides");
        roots.push(r as usize);
    }
    Ok(Some(msort(roots)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionalChain {
    pub elements: Vec<usize>,
    pub exponents: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionRow {
    pub exp_deletion: Multiset,
    pub atom: usize,
    pub exp_restriction: Multiset,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restriction_table: Option<Box<InductionTable>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionTable {
    pub base: usize,
    pub rows: Vec<InductionRow>,
    pub exponents: Multiset,
}

impl InductionTable {
    pub fn atom_order(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.atom).collect()
    }

    /// Drops nested restriction certificates below the given depth.
    pub fn truncated(&self, depth: usize) -> InductionTable {
        let rows = self
            .rows
            .iter()
            .map(|r| InductionRow {
                restriction_table: if depth == 0 { None } else { r.restriction_table.as_ref().map(|t| Box::new(t.truncated(depth - 1))) },
                ..r.clone()
            })
            .collect();
        InductionTable { base: self.base, rows, exponents: self.exponents.clone() }
    }
}

/// Exponent bookkeeping of the addition rule. Returns the new exponents or
/// `None` when the rule does not apply.
pub fn addition_rule(exp_del: &[usize], exp_res: &[usize], separator: bool) -> Option<Multiset> {
    if separator {
        if msort(exp_del.to_vec()) != msort(exp_res.to_vec()) {
            return None;
        }
        let mut e = exp_del.to_vec();
        e.push(1);
        Some(msort(e))
    } else {
        let extra = multiset_minus(exp_del, exp_res)?;
        if extra.len() != 1 {
            return None;
        }
        let mut e = exp_res.to_vec();
        e.push(extra[0] + 1);
        Some(msort(e))
    }
}

type Key = (usize, Vec<usize>);

/// Search state shared across a classification: memo tables and effort.
pub struct Searcher<'a> {
    pub p: &'a Poset,
    pub budget: &'a Budget,
    inductive_memo: HashMap<Key, Option<Multiset>>,
    order_memo: HashMap<Key, Vec<usize>>,
    divisional_memo: HashMap<Key, Option<Vec<usize>>>,
    chi_memo: HashMap<Key, PolyZ>,
    /// Disable memoization (used as a test oracle).
    pub memoize: bool,
}

impl<'a> Searcher<'a> {
    pub fn new(p: &'a Poset, budget: &'a Budget) -> Self {
        Searcher {
            p,
            budget,
            inductive_memo: HashMap::new(),
            order_memo: HashMap::new(),
            divisional_memo: HashMap::new(),
            chi_memo: HashMap::new(),
            memoize: true,
        }
    }

    fn key(&self, v: &SubPoset) -> Key {
        (v.base, self.p.sub_atoms(v))
    }

    fn chi(&mut self, v: &SubPoset) -> PolyZ {
        let k = self.key(v);
        if let Some(c) = self.chi_memo.get(&k) {
            return c.clone();
        }
        let c = self.p.sub_char_poly(v);
        if self.memoize {
            self.chi_memo.insert(k, c.clone());
        }
        c
    }

    fn deletion(&self, v: &SubPoset, a: usize) -> SubPoset {
        let rest: Vec<usize> = self.p.sub_atoms(v).into_iter().filter(|&b| b != a).collect();
        self.p.closure(v.base, &rest)
    }

    /// Exhaustive inductive decision: exponents when the view is inductive.
    pub fn inductive(&mut self, v: &SubPoset) -> Result<Option<Multiset>, Exhausted> {
        let atoms = self.p.sub_atoms(v);
        if atoms.is_empty() {
            return Ok(Some(Vec::new()));
        }
        let key = (v.base, atoms.clone());
        if let Some(r) = self.inductive_memo.get(&key) {
            return Ok(r.clone());
        }
        self.budget.spend(1)?;
        let chi_v = self.chi(v);
        let r = self.p.sub_rank(v);
        let mut result = None;
        for &a in &atoms {
            let del = self.deletion(v, a);
            let res = self.p.sub_upper(v, a);
            let chi_del = self.chi(&del);
            let chi_res = self.chi(&res);
            if !chi_res.divides(&chi_del) {
                continue;
            }
            let Some(e_res) = self.inductive(&res)? else { continue };
            let Some(e_del) = self.inductive(&del)? else { continue };
            let separator = self.p.sub_rank(&del) + 1 == r;
            let Some(e) = addition_rule(&e_del, &e_res, separator) else { continue };
            debug_assert_eq!(chi_v, PolyZ::from_roots(&e.iter().map(|&x| x as i64).collect::<Vec<_>>()));
            let mut order = self.order_memo.get(&self.key(&del)).cloned().unwrap_or_default();
            order.push(a);
            self.order_memo.insert(key.clone(), order);
            result = Some(e);
            break;
        }
        if self.memoize || result.is_some() {
            self.inductive_memo.insert(key, result.clone());
        }
        Ok(result)
    }

    /// Atom order found by a successful [`Self::inductive`] call.
    fn found_order(&self, v: &SubPoset) -> Vec<usize> {
        self.order_memo.get(&self.key(v)).cloned().unwrap_or_default()
    }

    /// Builds the full certificate for an inductive view.
    pub fn inductive_table(&mut self, v: &SubPoset) -> Result<Option<InductionTable>, Exhausted> {
        if self.inductive(v)?.is_none() {
            return Ok(None);
        }
        let order = self.found_order(v);
        self.table_from_order(v, &order).map(Some)
    }

    /// Replays a known-good order into a table, with nested certificates.
    fn table_from_order(&mut self, v: &SubPoset, order: &[usize]) -> Result<InductionTable, Exhausted> {
        let mut rows = Vec::new();
        let mut exps: Multiset = Vec::new();
        let mut prefix = Vec::new();
        let mut prev = self.p.closure(v.base, &[]);
        for &a in order {
            prefix.push(a);
            let cur = self.p.closure(v.base, &prefix);
            let res = self.p.sub_upper(&cur, a);
            let e_res = self.inductive(&res)?.expect("restriction was certified inductive");
            let nested = if self.p.sub_rank(&res) >= 2 { self.inductive_table(&res)?.map(Box::new) } else { None };
            let separator = self.p.sub_rank(&prev) + 1 == self.p.sub_rank(&cur);
            let next = addition_rule(&exps, &e_res, separator).expect("order was certified");
            rows.push(InductionRow { exp_deletion: exps.clone(), atom: a, exp_restriction: e_res, restriction_table: nested });
            exps = next;
            prev = cur;
        }
        Ok(InductionTable { base: v.base, rows, exponents: exps })
    }

    /// Guided inductive construction: atoms are added in the given order and
    /// every restriction must be inductive (guided by the inherited order
    /// first, exhaustive search second) with its polynomial dividing the
    /// deletion's.
    pub fn guided(&mut self, v: &SubPoset, order: &[usize]) -> Result<InductionTable, ClassifyError> {
        let mut rows = Vec::new();
        let mut exps: Multiset = Vec::new();
        let mut prefix: Vec<usize> = Vec::new();
        let mut prev = self.p.closure(v.base, &[]);
        for (step, &a) in order.iter().enumerate() {
            self.budget.spend(1)?;
            prefix.push(a);
            let cur = self.p.closure(v.base, &prefix);
            let res = self.p.sub_upper(&cur, a);
            let chi_prev = self.chi(&prev);
            let chi_res = self.chi(&res);
            if !chi_res.divides(&chi_prev) {
                return Err(ClassifyError::DivisibilityFailed { step });
            }
            let nested = self.restriction_certificate(&res, &prefix)?;
            let Some(nested) = nested else {
                return Err(ClassifyError::RestrictionNotInductive { step });
            };
            let separator = self.p.sub_rank(&prev) + 1 == self.p.sub_rank(&cur);
            let Some(next) = addition_rule(&exps, &nested.exponents, separator) else {
                return Err(ClassifyError::InternalInconsistency(format!("addition rule fails at step {step} despite divisibility")));
            };
            let cert = (self.p.sub_rank(&res) >= 2).then(|| Box::new(nested.clone()));
            rows.push(InductionRow { exp_deletion: exps.clone(), atom: a, exp_restriction: nested.exponents.clone(), restriction_table: cert });
            exps = next;
            prev = cur;
        }
        if prev.elems != v.elems {
            return Err(ClassifyError::InternalInconsistency("guided order does not generate the poset".into()));
        }
        Ok(InductionTable { base: v.base, rows, exponents: exps })
    }

    /// Certificate for a restriction: inherited order first, then exhaustive.
    fn restriction_certificate(&mut self, res: &SubPoset, prefix: &[usize]) -> Result<Option<InductionTable>, ClassifyError> {
        let key = self.key(res);
        if let Some(known) = self.inductive_memo.get(&key).cloned() {
            return match known {
                Some(_) => Ok(self.inductive_table(res)?),
                None => Ok(None),
            };
        }
        let inherited = inherited_order(self.p, res, prefix);
        match self.guided(res, &inherited) {
            Ok(t) => {
                self.inductive_memo.insert(key.clone(), Some(t.exponents.clone()));
                self.order_memo.insert(key, t.atom_order());
                Ok(Some(t))
            }
            Err(ClassifyError::Budget(e)) => Err(ClassifyError::Budget(e)),
            Err(ClassifyError::InternalInconsistency(m)) => Err(ClassifyError::InternalInconsistency(m)),
            Err(_) => Ok(self.inductive_table(res)?),
        }
    }

    /// Depth-first divisional chain search.
    pub fn divisional(&mut self, v: &SubPoset) -> Result<Option<Vec<usize>>, Exhausted> {
        let atoms = self.p.sub_atoms(v);
        if atoms.is_empty() {
            return Ok(Some(vec![v.base]));
        }
        let key = (v.base, atoms.clone());
        if let Some(r) = self.divisional_memo.get(&key) {
            return Ok(r.clone());
        }
        self.budget.spend(1)?;
        let chi_v = self.chi(v);
        let mut result = None;
        for &a in &atoms {
            let up = self.p.sub_upper(v, a);
            if !self.chi(&up).divides(&chi_v) {
                continue;
            }
            if let Some(mut chain) = self.divisional(&up)? {
                chain.insert(0, v.base);
                result = Some(chain);
                break;
            }
        }
        if self.memoize {
            self.divisional_memo.insert(key, result.clone());
        }
        Ok(result)
    }

    pub fn divisional_chain(&mut self, v: &SubPoset) -> Result<Option<DivisionalChain>, Exhausted> {
        let Some(elements) = self.divisional(v)? else { return Ok(None) };
        let mut counts = Vec::new();
        for &x in &elements {
            let up = self.p.sub_upper(v, x);
            counts.push(self.p.sub_atoms(&up).len());
        }
        let exponents = counts.windows(2).map(|w| w[0] - w[1]).collect();
        Ok(Some(DivisionalChain { elements, exponents }))
    }
}

/// Orders the atoms of a restriction `res` (base `a`) by the earliest prefix
/// atom other than `a` lying below each of them.
pub fn inherited_order(p: &Poset, res: &SubPoset, prefix: &[usize]) -> Vec<usize> {
    let mut atoms = p.sub_atoms(res);
    let pos = |c: usize| prefix.iter().position(|&b| b != res.base && p.leq(b, c)).unwrap_or(usize::MAX);
    atoms.sort_by_key(|&c| (pos(c), c));
    atoms
}

pub fn is_divisional(p: &Poset) -> Result<Option<DivisionalChain>, ClassifyError> {
    if !geometry::is_locally_geometric(p) {
        return Err(ClassifyError::NotLocallyGeometric);
    }
    let budget = Budget::unlimited();
    Ok(Searcher::new(p, &budget).divisional_chain(&p.whole())?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InductiveMode {
    Exhaustive,
    Guided(Vec<usize>),
}

pub fn is_inductive(p: &Poset, mode: &InductiveMode) -> Result<Option<InductionTable>, ClassifyError> {
    if !geometry::is_locally_geometric(p) {
        return Err(ClassifyError::NotLocallyGeometric);
    }
    let budget = Budget::unlimited();
    let mut s = Searcher::new(p, &budget);
    match mode {
        InductiveMode::Exhaustive => Ok(s.inductive_table(&p.whole())?),
        InductiveMode::Guided(order) => s.guided(&p.whole(), order).map(Some),
    }
}

/// How table exponents are written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentConvention {
    /// Exponents of the posets themselves.
    Poset,
    /// Arrangement exponents in ambient dimension `dim`: poset exponents
    /// padded with zeros (restrictions live in dimension `dim - 1`).
    Arrangement { dim: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("induction table row {row}: {reason}")]
pub struct TableError {
    pub row: usize,
    pub reason: String,
}

fn strip(exps: &[usize], rank: usize, dim: Option<usize>, row: usize, what: &str) -> Result<Multiset, TableError> {
    let nonzero: Multiset = msort(exps.iter().copied().filter(|&e| e != 0).collect());
    if let Some(d) = dim {
        if exps.len() != d || nonzero.len() != rank {
            return Err(TableError { row, reason: format!("{what} exponents {exps:?} do not fit dimension {d} and rank {rank}") });
        }
    } else if exps.contains(&0) {
        return Err(TableError { row, reason: format!("{what} exponents {exps:?} contain zero") });
    }
    Ok(nonzero)
}

/// Replays a table: every row's triple, divisibility and exponent update,
/// and the inductiveness of each restriction (from its nested certificate or,
/// when absent, by search).
pub fn verify_induction_table(p: &Poset, table: &InductionTable, convention: ExponentConvention) -> Result<(), TableError> {
    let base = table.base;
    let view = SubPoset { base, elems: p.up_set(base).clone() };
    verify_in(p, &view, table, convention)
}

fn verify_in(p: &Poset, view: &SubPoset, table: &InductionTable, convention: ExponentConvention) -> Result<(), TableError> {
    let base = view.base;
    let (dim, res_dim) = match convention {
        ExponentConvention::Poset => (None, None),
        ExponentConvention::Arrangement { dim } => (Some(dim), Some(dim.saturating_sub(1))),
    };
    let mut atoms = p.sub_atoms(view);
    atoms.sort_unstable();
    let mut listed = table.atom_order();
    listed.sort_unstable();
    if atoms != listed {
        return Err(TableError { row: 0, reason: "rows do not list each atom exactly once".into() });
    }
    let budget = Budget::new(5_000_000);
    let mut exps: Multiset = Vec::new();
    let mut prefix = Vec::new();
    let mut prev = p.closure(base, &[]);
    for (i, row) in table.rows.iter().enumerate() {
        prefix.push(row.atom);
        let cur = p.closure(base, &prefix);
        let res = p.sub_upper(&cur, row.atom);
        let recorded_del = strip(&row.exp_deletion, p.sub_rank(&prev), dim, i, "deletion")?;
        if recorded_del != exps {
            return Err(TableError { row: i, reason: format!("deletion exponents {recorded_del:?}, replay gives {exps:?}") });
        }
        let recorded_res = strip(&row.exp_restriction, p.sub_rank(&res), res_dim, i, "restriction")?;
        let chi_prev = p.sub_char_poly(&prev);
        let chi_res = p.sub_char_poly(&res);
        if !chi_res.divides(&chi_prev) {
            return Err(TableError { row: i, reason: format!("{chi_res} does not divide {chi_prev}") });
        }
        match &row.restriction_table {
            Some(nested) => {
                if nested.base != row.atom {
                    return Err(TableError { row: i, reason: "nested certificate has the wrong base".into() });
                }
                verify_in(p, &res, nested, ExponentConvention::Poset).map_err(|e| TableError { row: i, reason: format!("nested: {e}") })?;
                if nested.exponents != recorded_res {
                    return Err(TableError { row: i, reason: "nested certificate exponents differ".into() });
                }
            }
            None => {
                let mut s = Searcher::new(p, &budget);
                match s.inductive(&res) {
                    Ok(Some(e)) if e == recorded_res => {}
                    Ok(Some(e)) => return Err(TableError { row: i, reason: format!("restriction exponents {e:?}, table says {recorded_res:?}") }),
                    Ok(None) => return Err(TableError { row: i, reason: "restriction is not inductive".into() }),
                    Err(_) => return Err(TableError { row: i, reason: "restriction check exceeded its budget".into() }),
                }
            }
        }
        let separator = p.sub_rank(&prev) + 1 == p.sub_rank(&cur);
        exps = addition_rule(&exps, &recorded_res, separator)
            .ok_or_else(|| TableError { row: i, reason: "addition rule does not apply".into() })?;
        prev = cur;
    }
    if prev.elems != view.elems {
        return Err(TableError { row: table.rows.len(), reason: "rows do not generate the poset".into() });
    }
    let final_exps = strip(&table.exponents, p.sub_rank(view), dim, table.rows.len(), "final")?;
    if final_exps != exps {
        return Err(TableError { row: table.rows.len(), reason: format!("final exponents {final_exps:?}, replay gives {exps:?}") });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    True,
    False,
    Skipped,
}

impl Flag {
    pub fn from_bool(b: bool) -> Self {
        if b { Flag::True } else { Flag::False }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Flags {
    pub lattice: Flag,
    pub locally_geometric: Flag,
    pub geometric: Flag,
    pub factorable: Flag,
    pub divisional: Flag,
    pub inductive: Flag,
    pub supersolvable: Flag,
    pub strictly_supersolvable: Flag,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificates {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induction_table: Option<InductionTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisional_chain: Option<DivisionalChain>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_chain: Option<ChainWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tm_chain: Option<ChainWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub flags: Flags,
    pub char_poly: PolyZ,
    pub exponents: Option<Multiset>,
    pub certificates: Certificates,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub element_cap: usize,
    pub step_budget: u64,
    pub inductive_mode: InductiveMode,
    /// Atom order whose prefix closures are tried first as a chain of ideals.
    pub chain_hint: Option<Vec<usize>>,
    /// The poset is a layer poset, hence geometric.
    pub geometric_by_construction: bool,
    pub run_supersolvable: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            element_cap: 200_000,
            step_budget: 2_000_000,
            inductive_mode: InductiveMode::Exhaustive,
            chain_hint: None,
            geometric_by_construction: false,
            run_supersolvable: true,
        }
    }
}

/// Prefix-closure chain along an atom order: Q_i is the largest prefix
/// closure of rank i.
pub fn prefix_chain(p: &Poset, view: &SubPoset, order: &[usize]) -> Vec<SubPoset> {
    let r = p.sub_rank(view);
    let mut chain = vec![p.closure(view.base, &[])];
    let mut best: Vec<Option<SubPoset>> = vec![None; r + 1];
    for k in 1..=order.len() {
        let c = p.closure(view.base, &order[..k]);
        let rk = p.sub_rank(&c);
        best[rk] = Some(c);
    }
    for c in best.into_iter().skip(1).flatten() {
        chain.push(c);
    }
    chain
}

/// Checks a candidate chain of views as an M-/TM-chain and builds the witness.
pub fn chain_witness_from(p: &Poset, chain: &[SubPoset], kind: IdealKind, test: IdealTest) -> Option<ChainWitness> {
    let r = chain.len().checked_sub(1)?;
    let mut ideals = Vec::new();
    let mut d = Vec::new();
    for i in 0..r {
        if p.sub_rank(&chain[i]) != i || p.sub_rank(&chain[i + 1]) != i + 1 {
            return None;
        }
        let w = geometry::check_ideal_in(p, &chain[i + 1], &chain[i].elems, kind, test)?;
        d.push(p.sub_atoms(&chain[i + 1]).len() - w.atom_set.len());
        ideals.push(w);
    }
    let top = &chain[r];
    ideals.push(geometry::IdealWitness {
        kind,
        atom_set: p.sub_atoms(top),
        elements: top.elems.ones().collect(),
        rank: r,
        modular_partners: Vec::new(),
    });
    Some(ChainWitness { kind, ideals, d })
}

fn decided<T>(r: Result<T, Exhausted>, notes: &mut Vec<String>, what: &str) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(_) => {
            notes.push(format!("{what}: effort budget exhausted"));
            None
        }
    }
}

pub fn classification_report(p: &Poset, opts: &ReportOptions) -> Result<ClassificationReport, ClassifyError> {
    let chi = p.char_poly();
    let mut notes = Vec::new();
    let factor = factor_positive_integer_roots(&chi)?;
    let mut flags = Flags {
        lattice: Flag::Skipped,
        locally_geometric: Flag::Skipped,
        geometric: Flag::Skipped,
        factorable: Flag::from_bool(factor.is_some()),
        divisional: Flag::Skipped,
        inductive: Flag::Skipped,
        supersolvable: Flag::Skipped,
        strictly_supersolvable: Flag::Skipped,
    };
    let mut certs = Certificates { induction_table: None, divisional_chain: None, m_chain: None, tm_chain: None };
    if p.len() > opts.element_cap {
        notes.push(format!("{} elements exceed the cap of {}", p.len(), opts.element_cap));
        return Ok(ClassificationReport { flags, char_poly: chi, exponents: factor, certificates: certs, notes });
    }
    let whole = p.whole();
    let structural_budget = Budget::new(opts.step_budget.saturating_mul(64));

    flags.lattice = match decided(geometry::is_lattice_budgeted(p, &structural_budget), &mut notes, "lattice") {
        Some(b) => Flag::from_bool(b),
        None => Flag::Skipped,
    };
    let lg = decided(geometry::is_locally_geometric_budgeted(p, &structural_budget), &mut notes, "locally geometric");
    flags.locally_geometric = match lg {
        Some(b) => Flag::from_bool(b),
        None if opts.geometric_by_construction => {
            notes.push("locally geometric: layer poset".into());
            Flag::True
        }
        None => Flag::Skipped,
    };
    if flags.locally_geometric == Flag::True {
        flags.geometric = match decided(geometry::is_geometric_poset_budgeted(p, &structural_budget), &mut notes, "geometric") {
            Some(b) => Flag::from_bool(b),
            None if opts.geometric_by_construction => {
                notes.push("geometric: layer poset".into());
                Flag::True
            }
            None => Flag::Skipped,
        };
    } else if flags.locally_geometric == Flag::False {
        flags.geometric = Flag::False;
        notes.push("not locally geometric: divisional, inductive and supersolvable are undefined".into());
        flags.divisional = Flag::False;
        flags.inductive = Flag::False;
        flags.supersolvable = Flag::False;
        flags.strictly_supersolvable = Flag::False;
    }
    if opts.geometric_by_construction && flags.geometric == Flag::False {
        return Err(ClassifyError::InternalInconsistency("layer poset is not geometric".into()));
    }

    if flags.locally_geometric == Flag::True {
        let budget = Budget::new(opts.step_budget);
        let mut s = Searcher::new(p, &budget);
        if let Some(chain) = decided(s.divisional_chain(&whole), &mut notes, "divisional") {
            flags.divisional = Flag::from_bool(chain.is_some());
            certs.divisional_chain = chain;
        }

        let budget = Budget::new(opts.step_budget);
        let mut s = Searcher::new(p, &budget);
        let table = match &opts.inductive_mode {
            InductiveMode::Exhaustive => decided(s.inductive_table(&whole), &mut notes, "inductive"),
            InductiveMode::Guided(order) => match s.guided(&whole, order) {
                Ok(t) => Some(Some(t)),
                Err(ClassifyError::InternalInconsistency(m)) => return Err(ClassifyError::InternalInconsistency(m)),
                Err(e) => {
                    notes.push(format!("guided induction failed ({e}); falling back to exhaustive search"));
                    decided(s.inductive_table(&whole), &mut notes, "inductive")
                }
            },
        };
        if let Some(t) = table {
            flags.inductive = Flag::from_bool(t.is_some());
            certs.induction_table = t;
        }

        if opts.run_supersolvable {
            let test = if flags.geometric == Flag::True { IdealTest::Geometric } else { IdealTest::Definition };
            for kind in [IdealKind::TM, IdealKind::M] {
                let hinted = opts.chain_hint.as_ref().and_then(|order| chain_witness_from(p, &prefix_chain(p, &whole, order), kind, test));
                let found = match hinted {
                    Some(w) => Some(Some(w)),
                    None => {
                        let budget = Budget::new(opts.step_budget);
                        decided(geometry::chain_search(p, &whole, kind, test, &budget), &mut notes, "supersolvable")
                    }
                };
                match (kind, found) {
                    (IdealKind::TM, Some(w)) => {
                        flags.strictly_supersolvable = Flag::from_bool(w.is_some());
                        if w.is_some() {
                            // a TM-chain is an M-chain
                            flags.supersolvable = Flag::True;
                            certs.tm_chain = w;
                            break;
                        }
                    }
                    (IdealKind::M, Some(w)) => {
                        flags.supersolvable = Flag::from_bool(w.is_some());
                        certs.m_chain = w;
                    }
                    _ => {}
                }
            }
        }
    }

    let exponents = factor.clone();
    check_consistency(p, &flags, &certs, &factor)?;
    Ok(ClassificationReport { flags, char_poly: chi, exponents, certificates: certs, notes })
}

fn check_consistency(p: &Poset, flags: &Flags, certs: &Certificates, factor: &Option<Multiset>) -> Result<(), ClassifyError> {
    let bad = |m: &str| Err(ClassifyError::InternalInconsistency(m.to_string()));
    let implies = |a: Flag, b: Flag| !(a == Flag::True && b == Flag::False);
    if !implies(flags.strictly_supersolvable, flags.inductive) {
        return bad("strictly supersolvable but not inductive");
    }
    if !implies(flags.inductive, flags.divisional) {
        return bad("inductive but not divisional");
    }
    if !implies(flags.divisional, flags.factorable) {
        return bad("divisional but not factorable");
    }
    if !implies(flags.strictly_supersolvable, flags.supersolvable) {
        return bad("strictly supersolvable but not supersolvable");
    }
    if let Some(t) = &certs.induction_table {
        if Some(&t.exponents) != factor.as_ref() {
            return bad("induction table exponents differ from the roots of the characteristic polynomial");
        }
    }
    if let Some(c) = &certs.divisional_chain {
        if Some(&msort(c.exponents.clone())) != factor.as_ref() {
            return bad("divisional exponents differ from the roots of the characteristic polynomial");
        }
        if c.exponents.iter().sum::<usize>() != p.atoms().len() {
            return bad("divisional exponents do not sum to the atom count");
        }
    }
    if let Some(c) = &certs.tm_chain {
        if Some(&msort(c.d.clone())) != factor.as_ref() {
            return bad("TM-chain exponents differ from the roots of the characteristic polynomial");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn atom(p: &Poset, l: &str) -> usize {
        p.find(l).unwrap()
    }

    #[test]
    fn triple_examples() {
        let single = Poset::from_labeled(&["0", "x"], &[("0", "x")]).unwrap();
        let (d, r) = triple(&single, 1).unwrap();
        assert_eq!((d.len(), r.len()), (1, 1));
        let p = fixtures::b2_poset();
        let (d, r) = triple(&p, atom(&p, "t1t2^-1=1")).unwrap();
        assert_eq!(d.len(), 5);
        assert_eq!(d.char_poly(), PolyZ::from_roots(&[1, 2]));
        assert_eq!(r.len(), 3);
        let pi = fixtures::pi3w_poset();
        for a in pi.atoms() {
            assert_eq!(triple(&pi, a).unwrap().1.char_poly(), PolyZ::from_roots(&[2]));
        }
        assert!(matches!(triple(&p, p.bottom()), Err(ClassifyError::AtomNotFound(_))));
    }

    #[test]
    fn residual_vanishes_on_fixtures() {
        for p in [fixtures::b2_poset(), fixtures::pi3w_poset(), fixtures::ind_not_geo_poset(), fixtures::d2_poset()] {
            for a in p.atoms() {
                assert!(deletion_restriction_residual(&p, a).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn factoring_examples() {
        assert_eq!(factor_positive_integer_roots(&PolyZ::new(vec![4, -4, 1])).unwrap(), Some(vec![2, 2]));
        assert_eq!(factor_positive_integer_roots(&PolyZ::new(vec![7, -5, 1])).unwrap(), None);
        assert_eq!(factor_positive_integer_roots(&PolyZ::new(vec![2, -2, 1])).unwrap(), None);
        assert_eq!(factor_positive_integer_roots(&PolyZ::one()).unwrap(), Some(vec![]));
        assert_eq!(factor_positive_integer_roots(&PolyZ::new(vec![0, 1])).unwrap(), None);
        assert!(factor_positive_integer_roots(&PolyZ::new(vec![1, 2])).is_err());
        assert_eq!(factor_positive_integer_roots(&PolyZ::from_roots(&[6, 7, 6, 4, 2])).unwrap(), Some(vec![2, 4, 6, 6, 7]));
    }

    #[test]
    fn divisional_examples() {
        let c = is_divisional(&fixtures::b2_poset()).unwrap().unwrap();
        assert_eq!(msort(c.exponents.clone()), vec![2, 2]);
        assert!(is_divisional(&fixtures::pi3w_poset()).unwrap().is_none());
        let t = is_divisional(&Poset::from_labeled(&["0"], &[]).unwrap()).unwrap().unwrap();
        assert!(t.exponents.is_empty());
    }

    #[test]
    fn inductive_examples() {
        let p = fixtures::b2_poset();
        let t = is_inductive(&p, &InductiveMode::Exhaustive).unwrap().unwrap();
        assert_eq!(t.exponents, vec![2, 2]);
        verify_induction_table(&p, &t, ExponentConvention::Poset).unwrap();
        assert!(is_inductive(&fixtures::d2_poset(), &InductiveMode::Exhaustive).unwrap().is_none());
        let q = fixtures::ind_not_geo_poset();
        assert_eq!(is_inductive(&q, &InductiveMode::Exhaustive).unwrap().unwrap().exponents, vec![1, 3]);
    }

    fn row(del: &[usize], a: usize, res: &[usize]) -> InductionRow {
        InductionRow { exp_deletion: del.to_vec(), atom: a, exp_restriction: res.to_vec(), restriction_table: None }
    }

    #[test]
    fn known_tables_replay() {
        let p = fixtures::b2_poset();
        let [a1, a2, a3, a4] = ["t1=1", "t2=1", "t1t2=1", "t1t2^-1=1"].map(|l| atom(&p, l));
        let table = InductionTable {
            base: p.bottom(),
            rows: vec![row(&[], a1, &[]), row(&[1], a2, &[1]), row(&[1, 1], a3, &[1]), row(&[1, 2], a4, &[2])],
            exponents: vec![2, 2],
        };
        verify_induction_table(&p, &table, ExponentConvention::Poset).unwrap();
        let guided = is_inductive(&p, &InductiveMode::Guided(vec![a1, a2, a3, a4])).unwrap().unwrap();
        assert_eq!(guided.rows.iter().map(|r| r.exp_restriction.clone()).collect::<Vec<_>>(), vec![vec![], vec![1], vec![1], vec![2]]);

        let mut swapped = table.clone();
        swapped.rows.swap(2, 3);
        let err = verify_induction_table(&p, &swapped, ExponentConvention::Poset).unwrap_err();
        assert_eq!(err.row, 2);

        let q = fixtures::ind_not_geo_poset();
        let [x, a2, a3, a4] = ["x", "a2", "a3", "a4"].map(|l| atom(&q, l));
        let t = InductionTable {
            base: q.bottom(),
            rows: vec![row(&[], x, &[]), row(&[1], a3, &[]), row(&[2], a4, &[2]), row(&[1, 2], a2, &[1])],
            exponents: vec![1, 3],
        };
        verify_induction_table(&q, &t, ExponentConvention::Poset).unwrap();
    }

    #[test]
    fn guided_divisibility_failure() {
        let d2 = fixtures::d2_poset();
        let atoms = d2.atoms();
        assert!(matches!(is_inductive(&d2, &InductiveMode::Guided(atoms)), Err(ClassifyError::DivisibilityFailed { step: 1 })));
    }

    #[test]
    fn reports_on_fixtures() {
        let r = classification_report(&fixtures::b2_poset(), &ReportOptions::default()).unwrap();
        let f = &r.flags;
        assert_eq!(
            (f.lattice, f.geometric, f.factorable, f.divisional, f.inductive, f.supersolvable, f.strictly_supersolvable),
            (Flag::False, Flag::True, Flag::True, Flag::True, Flag::True, Flag::True, Flag::False)
        );
        assert_eq!(r.exponents, Some(vec![2, 2]));

        let r = classification_report(&fixtures::pi3w_poset(), &ReportOptions::default()).unwrap();
        assert_eq!((r.flags.factorable, r.flags.divisional, r.flags.inductive), (Flag::True, Flag::False, Flag::False));
        assert_eq!(r.exponents, Some(vec![3, 3]));
    }

    /// Oracle: the recursive definition with no memo and no pruning order,
    /// returning only the decision.
    fn inductive_oracle(p: &Poset) -> bool {
        if p.atoms().is_empty() {
            return true;
        }
        p.atoms().into_iter().any(|a| {
            let (del, res) = triple(p, a).unwrap();
            res.char_poly().divides(&del.char_poly()) && inductive_oracle(&res) && inductive_oracle(&del)
        })
    }

    fn divisional_oracle(p: &Poset) -> bool {
        if p.atoms().is_empty() {
            return true;
        }
        p.atoms().into_iter().any(|a| {
            let res = p.upper_set(a);
            res.char_poly().divides(&p.char_poly()) && divisional_oracle(&res)
        })
    }

    #[test]
    fn memoized_search_matches_oracles_on_fixtures() {
        for p in [fixtures::b2_poset(), fixtures::pi3w_poset(), fixtures::ind_not_geo_poset(), fixtures::d2_poset()] {
            let budget = Budget::unlimited();
            let mut s = Searcher::new(&p, &budget);
            assert_eq!(s.inductive(&p.whole()).unwrap().is_some(), inductive_oracle(&p));
            assert_eq!(s.divisional(&p.whole()).unwrap().is_some(), divisional_oracle(&p));
            let mut plain = Searcher::new(&p, &budget);
            plain.memoize = false;
            assert_eq!(plain.inductive(&p.whole()).unwrap(), s.inductive(&p.whole()).unwrap());
        }
    }

    mod props {
        use super::*;
        use crate::corpus;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn memo_and_oracle_agree_on_small_corpus(seed in any::<u64>()) {
                let arr = corpus::random_arrangement(seed, &corpus::CorpusParams::default());
                let (p, _) = arr.layer_poset(None).unwrap();
                prop_assume!(p.atoms().len() <= 6);
                let budget = Budget::unlimited();
                let mut s = Searcher::new(&p, &budget);
                let memo = s.inductive(&p.whole()).unwrap();
                prop_assert_eq!(memo.is_some(), inductive_oracle(&p));
                prop_assert_eq!(s.divisional(&p.whole()).unwrap().is_some(), divisional_oracle(&p));
                if let Some(t) = s.inductive_table(&p.whole()).unwrap() {
                    prop_assert!(verify_induction_table(&p, &t, ExponentConvention::Poset).is_ok());
                    prop_assert_eq!(Some(t.exponents), factor_positive_integer_roots(&p.char_poly()).unwrap());
                }
                for a in p.atoms() {
                    prop_assert!(view_residual(&p, &p.whole(), a).is_zero());
                }
            }
        }
    }
}
