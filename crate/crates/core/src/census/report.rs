//! Serialized forms of a [`CensusReport`]: JSON document, CSV rows and a
//! plain-text table.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::classify::GroupClass;
use crate::error::{Error, Result};
use crate::vocab::Vocabulary;

use super::{CensusKey, CensusReport, Mode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyRow {
    pub spt: usize,
    pub spt_star: usize,
    pub class: GroupClass,
    pub q: usize,
    pub s: usize,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnlabelledDocument {
    pub total: u64,
    pub keys: Vec<KeyRow>,
}

/// The JSON report. Elapsed time is left out so that reruns are
/// byte-identical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub vocab: Vocabulary,
    pub n: usize,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub total: u64,
    pub keys: Vec<KeyRow>,
    pub unlabelled: Option<UnlabelledDocument>,
}

fn rows(map: &BTreeMap<CensusKey, u64>) -> Vec<KeyRow> {
    map.iter()
        .map(|(k, &count)| KeyRow {
            spt: k.spt,
            spt_star: k.spt_star,
            class: k.class,
            q: k.q,
            s: k.s,
            count,
        })
        .collect()
}

fn from_rows(rows: &[KeyRow]) -> Result<BTreeMap<CensusKey, u64>> {
    let mut map = BTreeMap::new();
    for r in rows {
        let key = CensusKey {
            spt: r.spt,
            spt_star: r.spt_star,
            class: r.class,
            q: r.q,
            s: r.s,
        };
        if map.insert(key, r.count).is_some() {
            return Err(Error::Parse(format!("duplicate key {key:?} in report")));
        }
    }
    Ok(map)
}

impl CensusReport {
    pub fn to_document(&self) -> ReportDocument {
        let (mode, samples, seed) = match self.mode {
            Mode::Exhaustive => ("exhaustive", None, None),
            Mode::Sampled { samples, seed } => ("sampled", Some(samples), Some(seed)),
        };
        ReportDocument {
            vocab: self.vocab.clone(),
            n: self.n,
            mode: mode.into(),
            samples,
            seed,
            total: self.total,
            keys: rows(&self.labelled),
            unlabelled: self.unlabelled.as_ref().map(|u| UnlabelledDocument {
                total: u.values().sum(),
                keys: rows(u),
            }),
        }
    }

    pub fn from_document(doc: &ReportDocument) -> Result<Self> {
        let mode = match (doc.mode.as_str(), doc.samples, doc.seed) {
            ("exhaustive", _, _) => Mode::Exhaustive,
            ("sampled", Some(samples), Some(seed)) => Mode::Sampled { samples, seed },
            (m, _, _) => return Err(Error::Parse(format!("bad report mode {m:?}"))),
        };
        let labelled = from_rows(&doc.keys)?;
        if labelled.values().sum::<u64>() != doc.total {
            return Err(Error::Parse("report counts do not sum to its total".into()));
        }
        let unlabelled = doc
            .unlabelled
            .as_ref()
            .map(|u| from_rows(&u.keys))
            .transpose()?;
        Ok(CensusReport {
            vocab: doc.vocab.clone(),
            n: doc.n,
            mode,
            labelled,
            unlabelled,
            total: doc.total,
            elapsed: Duration::ZERO,
        })
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(&self.to_document())?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        CensusReport::from_document(&serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        CensusReport::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    /// One CSV row per key; unlabelled rows follow the labelled ones.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        #[derive(Serialize)]
        struct CsvRow<'a> {
            n: usize,
            counting: &'a str,
            spt: usize,
            spt_star: usize,
            class: GroupClass,
            q: usize,
            s: usize,
            count: u64,
        }
        let mut w = csv::Writer::from_writer(out);
        let mut emit = |counting: &str, map: &BTreeMap<CensusKey, u64>| -> Result<()> {
            for (k, &count) in map {
                w.serialize(CsvRow {
                    n: self.n,
                    counting,
                    spt: k.spt,
                    spt_star: k.spt_star,
                    class: k.class,
                    q: k.q,
                    s: k.s,
                    count,
                })?;
            }
            Ok(())
        };
        emit("labelled", &self.labelled)?;
        if let Some(u) = &self.unlabelled {
            emit("unlabelled", u)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let mode = match self.mode {
            Mode::Exhaustive => "exhaustive".to_string(),
            Mode::Sampled { samples, seed } => format!("sampled ({samples} samples, seed {seed})"),
        };
        let _ = writeln!(out, "vocabulary {}  n={}  {mode}", self.vocab, self.n);
        let w = self
            .labelled
            .keys()
            .map(|k| k.class.to_string().len())
            .max()
            .unwrap_or(0)
            .max(7);
        let _ = writeln!(
            out,
            "{:>4} {:>5} {:<w$} {:>3} {:>4} {:>14} {:>10} {:>12}",
            "spt", "spt*", "class", "q", "s", "count", "fraction", "unlabelled"
        );
        for (k, &count) in &self.labelled {
            let frac = count as f64 / self.total.max(1) as f64;
            let unl = self
                .unlabelled
                .as_ref()
                .map(|u| u.get(k).copied().unwrap_or(0).to_string())
                .unwrap_or_else(|| "-".into());
            let _ = writeln!(
                out,
                "{:>4} {:>5} {:<w$} {:>3} {:>4} {:>14} {:>10.6} {:>12}",
                k.spt,
                k.spt_star,
                k.class.to_string(),
                k.q,
                k.s,
                count,
                frac,
                unl
            );
        }
        let unl_total = self
            .unlabelled_total()
            .map(|t| t.to_string())
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "total {}  rigid {}  unlabelled {unl_total}",
            self.total,
            self.rigid()
        );
        out
    }
}
