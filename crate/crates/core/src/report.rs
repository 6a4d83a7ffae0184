//! Machine-readable reports.
//!
//! All rationals are rendered `"a/b"` and large integers as decimal strings,
//! so the output is exact and byte-identical across runs.
//!
//! CSV, one row per verdict:
//!
//! | column | content |
//! |---|---|
//! | `ring` | ring name |
//! | `p` | characteristic |
//! | `dim` | Krull dimension |
//! | `free_rank` | free rank of `Cl(R)` |
//! | `invariant_factors` | `;`-separated, empty if none |
//! | `torsion_cardinality` | `|tors(Cl(R))|` |
//! | `exact_signature` | `s(R)` |
//! | `inverse_signature` | `1/s(R)` |
//! | `inequality_holds` | `true`/`false` |
//! | `equality` | `true`/`false` |
//! | `levels` | `;`-separated exponents with witness rows |
//! | `last_q`, `last_a_e`, `last_s_e`, `last_n_e` | largest witness row, empty if none |
//! | `skipped_levels` | `;`-separated exponents dropped by the cap or `q_max` |
//!
//! JSON has the same fields per verdict plus a `witnesses` array of
//! `{e, q, a_e, s_e, n_e, rank}` objects, and a top-level `failures` array.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ringfile::fmt_rational;
use crate::verify::{CorpusRun, RingFailure, TheoremVerdict, WitnessRow};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub e: u32,
    pub q: String,
    pub a_e: u64,
    pub s_e: String,
    pub n_e: u64,
    pub rank: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub ring: String,
    pub p: u64,
    pub dim: usize,
    pub free_rank: usize,
    pub invariant_factors: Vec<String>,
    pub torsion_cardinality: String,
    pub exact_signature: String,
    pub inverse_signature: String,
    pub inequality_holds: bool,
    pub equality: bool,
    pub witnesses: Vec<WitnessRecord>,
    pub skipped_levels: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub ring: String,
    pub p: u64,
    pub error: String,
    pub cap_exceeded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub verdicts: Vec<VerdictRecord>,
    pub failures: Vec<FailureRecord>,
}

impl From<&WitnessRow> for WitnessRecord {
    fn from(w: &WitnessRow) -> Self {
        WitnessRecord {
            e: w.e,
            q: w.q.to_string(),
            a_e: w.a_e,
            s_e: fmt_rational(&w.s_e),
            n_e: w.n_e,
            rank: w.rank.to_string(),
        }
    }
}

impl From<&TheoremVerdict> for VerdictRecord {
    fn from(v: &TheoremVerdict) -> Self {
        VerdictRecord {
            ring: v.ring.clone(),
            p: v.p,
            dim: v.dim,
            free_rank: v.free_rank,
            invariant_factors: v.invariant_factors.iter().map(ToString::to_string).collect(),
            torsion_cardinality: v.torsion_cardinality.to_string(),
            exact_signature: fmt_rational(&v.exact_signature),
            inverse_signature: fmt_rational(&v.bound()),
            inequality_holds: v.inequality_holds,
            equality: v.equality,
            witnesses: v.witnesses.iter().map(WitnessRecord::from).collect(),
            skipped_levels: v.skipped_levels.clone(),
        }
    }
}

impl From<&RingFailure> for FailureRecord {
    fn from(f: &RingFailure) -> Self {
        FailureRecord {
            ring: f.ring.clone(),
            p: f.p,
            error: f.error.clone(),
            cap_exceeded: f.cap_exceeded,
        }
    }
}

impl From<&CorpusRun> for CorpusReport {
    fn from(run: &CorpusRun) -> Self {
        CorpusReport {
            verdicts: run.verdicts.iter().map(VerdictRecord::from).collect(),
            failures: run.failures.iter().map(FailureRecord::from).collect(),
        }
    }
}

pub const CSV_HEADER: [&str; 16] = [
    "ring",
    "p",
    "dim",
    "free_rank",
    "invariant_factors",
    "torsion_cardinality",
    "exact_signature",
    "inverse_signature",
    "inequality_holds",
    "equality",
    "levels",
    "last_q",
    "last_a_e",
    "last_s_e",
    "last_n_e",
    "skipped_levels",
];

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

pub fn to_csv(records: &[VerdictRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| crate::error::Error::Internal(e.to_string());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in records {
        let last = r.witnesses.last();
        let levels: Vec<u32> = r.witnesses.iter().map(|w| w.e).collect();
        w.write_record([
            r.ring.clone(),
            r.p.to_string(),
            r.dim.to_string(),
            r.free_rank.to_string(),
            r.invariant_factors.join(";"),
            r.torsion_cardinality.clone(),
            r.exact_signature.clone(),
            r.inverse_signature.clone(),
            r.inequality_holds.to_string(),
            r.equality.to_string(),
            join(&levels),
            last.map_or(String::new(), |w| w.q.clone()),
            last.map_or(String::new(), |w| w.a_e.to_string()),
            last.map_or(String::new(), |w| w.s_e.clone()),
            last.map_or(String::new(), |w| w.n_e.to_string()),
            join(&r.skipped_levels),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| crate::error::Error::Internal(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn to_json(report: &CorpusReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}
