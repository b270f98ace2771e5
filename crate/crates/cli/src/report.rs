use std::fmt::Write as _;
use std::time::Instant;

use layercraft::arrangement::{Arrangement, ArrangementError};
use layercraft::classify::{
    classification_report, ClassificationReport, ClassifyError, Flag, Flags, InductionTable, InductiveMode, Multiset, ReportOptions,
};
use layercraft::geometry::ChainWitness;
use layercraft::poset::{PolyZ, Poset};
use layercraft::rootsys::{self, RootError, RootIdeal};
use serde::Serialize;

use crate::input::InputSpec;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Exhaustive,
    Guided,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub element_cap: usize,
    pub mode: Mode,
    pub timing: bool,
}

/// A built poset with whatever produced it.
pub struct Built {
    pub poset: Poset,
    pub arrangement: Option<Arrangement>,
    pub ideal: Option<RootIdeal>,
    /// Atom order for guided induction and chain hints.
    pub order: Vec<usize>,
}

fn arrangement_error(e: ArrangementError) -> CliError {
    match e {
        ArrangementError::BudgetExceeded(n) => CliError::Budget(format!("more than {n} layers")),
        other => CliError::Input(other.to_string()),
    }
}

pub fn build(spec: &InputSpec, element_cap: usize) -> Result<Built, CliError> {
    match spec {
        InputSpec::Arrangement(a) => {
            let arr = a.build()?;
            let (poset, data) = arr.layer_poset(Some(element_cap)).map_err(arrangement_error)?;
            let order = data.character_atoms.iter().flatten().copied().collect();
            Ok(Built { poset, arrangement: Some(arr), ideal: None, order })
        }
        InputSpec::Poset(p) => {
            let poset = p.build()?;
            if poset.len() > element_cap {
                return Err(CliError::Budget(format!("{} elements exceed the cap of {element_cap}", poset.len())));
            }
            let order = poset.atoms();
            Ok(Built { poset, arrangement: None, ideal: None, order })
        }
        InputSpec::RootIdeal(r) => {
            let ideal = r.build()?;
            let arr = rootsys::build_arrangement(&ideal, r.lattice, r.group()).map_err(|e| match e {
                RootError::Arrangement(a) => arrangement_error(a),
                other => CliError::Input(other.to_string()),
            })?;
            let (poset, data) = arr.layer_poset(Some(element_cap)).map_err(arrangement_error)?;
            let order = rootsys::guided_atom_order(&ideal, &data);
            Ok(Built { poset, arrangement: Some(arr), ideal: Some(ideal), order })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetSummary {
    pub elements: usize,
    pub rank: usize,
    pub rank_counts: Vec<usize>,
    pub atoms: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub exp_deletion: Multiset,
    pub atom: String,
    pub exp_restriction: Multiset,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableOut {
    pub rows: Vec<TableRow>,
    pub exponents: Multiset,
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisionalOut {
    pub elements: Vec<String>,
    pub exponents: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainOut {
    /// Atoms of each ideal, from rank 0 up to the whole poset.
    pub ideal_atoms: Vec<Vec<String>>,
    pub d: Vec<usize>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CertificatesOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induction_table: Option<TableOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisional_chain: Option<DivisionalOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_chain: Option<ChainOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tm_chain: Option<ChainOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prediction {
    pub predicted: Option<Multiset>,
    pub computed: Option<Multiset>,
    pub matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub input: InputSpec,
    pub poset: PosetSummary,
    /// Constant coefficient first.
    pub char_poly: PolyZ,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrangement_char_poly: Option<PolyZ>,
    pub flags: Flags,
    pub exponents: Option<Multiset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrangement_exponents: Option<Vec<usize>>,
    pub certificates: CertificatesOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prediction: Option<Prediction>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

fn table_out(p: &Poset, t: &InductionTable) -> TableOut {
    let rows = t
        .rows
        .iter()
        .map(|r| TableRow { exp_deletion: r.exp_deletion.clone(), atom: p.label(r.atom).to_string(), exp_restriction: r.exp_restriction.clone() })
        .collect();
    TableOut { rows, exponents: t.exponents.clone() }
}

fn chain_out(p: &Poset, c: &ChainWitness) -> ChainOut {
    let ideal_atoms = c.ideals.iter().map(|w| w.atom_set.iter().map(|&a| p.label(a).to_string()).collect()).collect();
    ChainOut { ideal_atoms, d: c.d.clone() }
}

fn certificates_out(p: &Poset, rep: &ClassificationReport) -> CertificatesOut {
    let c = &rep.certificates;
    CertificatesOut {
        induction_table: c.induction_table.as_ref().map(|t| table_out(p, t)),
        divisional_chain: c.divisional_chain.as_ref().map(|d| DivisionalOut {
            elements: d.elements.iter().map(|&x| p.label(x).to_string()).collect(),
            exponents: d.exponents.clone(),
        }),
        m_chain: c.m_chain.as_ref().map(|w| chain_out(p, w)),
        tm_chain: c.tm_chain.as_ref().map(|w| chain_out(p, w)),
    }
}

fn classify_error(e: ClassifyError) -> CliError {
    match e {
        ClassifyError::InternalInconsistency(m) => CliError::Inconsistency(m),
        ClassifyError::Budget(_) => CliError::Budget("classification step budget exhausted".into()),
        other => CliError::Inconsistency(other.to_string()),
    }
}

pub fn analyze(spec: &InputSpec, opts: &AnalyzeOptions) -> Result<Report, CliError> {
    let start = Instant::now();
    let built = build(spec, opts.element_cap)?;
    let p = &built.poset;
    let inductive_mode = match opts.mode {
        Mode::Exhaustive => InductiveMode::Exhaustive,
        Mode::Guided => InductiveMode::Guided(built.order.clone()),
    };
    let ropts = ReportOptions {
        element_cap: opts.element_cap,
        inductive_mode,
        chain_hint: built.ideal.as_ref().map(|_| built.order.clone()),
        geometric_by_construction: built.arrangement.is_some(),
        ..ReportOptions::default()
    };
    let rep = classification_report(p, &ropts).map_err(classify_error)?;
    let mut notes = rep.notes.clone();
    if let Some(arr) = &built.arrangement {
        notes.extend(arr.warnings.iter().cloned());
    }
    let arrangement_exponents = built.arrangement.as_ref().and_then(|a| a.exponents(p));
    let prediction = match (&built.ideal, spec) {
        (Some(ideal), InputSpec::RootIdeal(r)) => Some(predict(ideal, r.lattice, arrangement_exponents.clone(), &rep.flags)?),
        _ => None,
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        input: spec.clone(),
        poset: PosetSummary { elements: p.len(), rank: p.rank(), rank_counts: p.rank_counts(), atoms: p.atoms().len() },
        char_poly: rep.char_poly.clone(),
        arrangement_char_poly: built.arrangement.as_ref().map(|a| a.char_poly(p)),
        flags: rep.flags.clone(),
        exponents: rep.exponents.clone(),
        arrangement_exponents,
        certificates: certificates_out(p, &rep),
        prediction,
        notes,
        timing_ms: opts.timing.then(|| start.elapsed().as_millis()),
    })
}

/// A covered prediction that disagrees with an inductive computation is an
/// internal inconsistency.
fn predict(ideal: &RootIdeal, lattice: rootsys::LatticeKind, computed: Option<Vec<usize>>, flags: &Flags) -> Result<Prediction, CliError> {
    match rootsys::predicted_exponents(ideal, lattice) {
        Ok(pred) => {
            let matches = computed.as_ref().map(|c| *c == pred);
            if matches == Some(false) && flags.inductive == Flag::True {
                return Err(CliError::Inconsistency(format!("predicted exponents {pred:?}, computed {:?}", computed.unwrap_or_default())));
            }
            Ok(Prediction { predicted: Some(pred), computed, matches, note: None })
        }
        Err(RootError::NotCovered(why)) => Ok(Prediction { predicted: None, computed, matches: None, note: Some(format!("no prediction: {why}")) }),
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

fn flag(f: Flag) -> &'static str {
    match f {
        Flag::True => "true",
        Flag::False => "false",
        Flag::Skipped => "skipped",
    }
}

fn braces(v: &[usize]) -> String {
    format!("{{{}}}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "elements: {} (by rank {:?}), rank {}, atoms {}", r.poset.elements, r.poset.rank_counts, r.poset.rank, r.poset.atoms);
    let _ = writeln!(s, "characteristic polynomial: {}", r.char_poly);
    if let Some(c) = &r.arrangement_char_poly {
        let _ = writeln!(s, "arrangement polynomial: {c}");
    }
    let f = &r.flags;
    for (name, v) in [
        ("lattice", f.lattice),
        ("locally geometric", f.locally_geometric),
        ("geometric", f.geometric),
        ("factorable", f.factorable),
        ("divisional", f.divisional),
        ("inductive", f.inductive),
        ("supersolvable", f.supersolvable),
        ("strictly supersolvable", f.strictly_supersolvable),
    ] {
        let _ = writeln!(s, "{name}: {}", flag(v));
    }
    if let Some(e) = &r.exponents {
        let _ = writeln!(s, "exponents: {}", braces(e));
    }
    if let Some(t) = &r.certificates.induction_table {
        let _ = writeln!(s, "induction table:");
        for row in &t.rows {
            let _ = writeln!(s, "  {:<12} {:<16} {}", braces(&row.exp_deletion), row.atom, braces(&row.exp_restriction));
        }
        let _ = writeln!(s, "  {}", braces(&t.exponents));
    }
    if let Some(p) = &r.prediction {
        match (&p.predicted, p.matches) {
            (Some(pred), m) => {
                let _ = writeln!(s, "predicted: {} (match: {})", braces(pred), m.map_or("n/a".to_string(), |b| b.to_string()));
            }
            (None, _) => {
                let _ = writeln!(s, "predicted: {}", p.note.as_deref().unwrap_or("none"));
            }
        }
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    if let Some(ms) = r.timing_ms {
        let _ = writeln!(s, "time: {ms} ms");
    }
    s
}
