//! Predicates over census keys and ratio tables across reports.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::classify::GroupClass;
use crate::error::{Error, Result};

use super::{CensusKey, CensusReport, Mode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Spt,
    SptStar,
    Q,
    S,
}

impl Field {
    fn of(self, k: &CensusKey) -> usize {
        match self {
            Field::Spt => k.spt,
            Field::SptStar => k.spt_star,
            Field::Q => k.q,
            Field::S => k.s,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Field::Spt => "spt",
            Field::SptStar => "spt*",
            Field::Q => "q",
            Field::S => "s",
        }
    }

    fn parse(s: &str) -> Option<Field> {
        Some(match s.trim() {
            "spt" => Field::Spt,
            "spt*" | "spt_star" => Field::SptStar,
            "q" => Field::Q,
            "s" => Field::S,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Term {
    Any,
    Rigid,
    NonRigid,
    /// `lo <= field <= hi`
    Range(Field, usize, usize),
    Class(GroupClass),
}

impl Term {
    fn holds(&self, k: &CensusKey) -> bool {
        match *self {
            Term::Any => true,
            Term::Rigid => k.is_rigid(),
            Term::NonRigid => !k.is_rigid(),
            Term::Range(f, lo, hi) => (lo..=hi).contains(&f.of(k)),
            Term::Class(c) => k.class == c,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Any => f.write_str("all"),
            Term::Rigid => f.write_str("rigid"),
            Term::NonRigid => f.write_str("nonrigid"),
            Term::Class(c) => write!(f, "class={c}"),
            Term::Range(field, lo, hi) => {
                let name = field.name();
                match (*lo, *hi) {
                    (a, b) if a == b => write!(f, "{name}={a}"),
                    (a, usize::MAX) => write!(f, "{name}>={a}"),
                    (0, b) => write!(f, "{name}<={b}"),
                    (a, b) => write!(f, "{a}<={name}<={b}"),
                }
            }
        }
    }
}

/// A conjunction of conditions on a [`CensusKey`], written like
/// `spt*=3`, `spt>=2 & class=Z2^1`, `2<=spt*<=6` or `nonrigid`.
///
/// Fields are `spt`, `spt*`, `q` and `s`, compared with `=`, `>=`, `<=`,
/// `>` or `<`; `class=` takes a group class name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicate {
    terms: Vec<Term>,
}

impl Predicate {
    pub fn all() -> Self {
        Predicate {
            terms: vec![Term::Any],
        }
    }

    pub fn holds(&self, key: &CensusKey) -> bool {
        self.terms.iter().all(|t| t.holds(key))
    }
}

fn number(s: &str, whole: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad number {:?} in predicate {whole:?}", s.trim())))
}

fn parse_term(raw: &str, whole: &str) -> Result<Term> {
    let t = raw.trim().replace('≥', ">=").replace('≤', "<=");
    let bad = || Error::Parse(format!("cannot parse predicate term {raw:?} in {whole:?}"));
    match t.as_str() {
        "all" | "*" => return Ok(Term::Any),
        "rigid" => return Ok(Term::Rigid),
        "nonrigid" => return Ok(Term::NonRigid),
        _ => {}
    }
    if let Some(c) = t.strip_prefix("class=") {
        return c.trim().parse().map(Term::Class).map_err(|_| bad());
    }
    // lo<=field<=hi
    let parts: Vec<&str> = t.split("<=").collect();
    if parts.len() == 3 {
        let field = Field::parse(parts[1]).ok_or_else(bad)?;
        return Ok(Term::Range(
            field,
            number(parts[0], whole)?,
            number(parts[2], whole)?,
        ));
    }
    for (op, make) in [
        (">=", (|v| (v, usize::MAX)) as fn(usize) -> (usize, usize)),
        ("<=", |v| (0, v)),
        (">", |v| (v + 1, usize::MAX)),
        ("<", |v: usize| (0, v.saturating_sub(1))),
        ("=", |v| (v, v)),
    ] {
        if let Some((lhs, rhs)) = t.split_once(op) {
            let field = Field::parse(lhs).ok_or_else(bad)?;
            let v = number(rhs, whole)?;
            if op == "<" && v == 0 {
                return Err(Error::Parse(format!("{whole:?} can never hold")));
            }
            let (lo, hi) = make(v);
            return Ok(Term::Range(field, lo, hi));
        }
    }
    Err(bad())
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = s
            .split(['&', ','])
            .filter(|t| !t.trim().is_empty())
            .map(|t| parse_term(t, s))
            .collect::<Result<Vec<_>>>()?;
        if terms.is_empty() {
            return Err(Error::Parse("empty predicate".into()));
        }
        Ok(Predicate { terms })
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(Term::to_string).collect();
        f.write_str(&parts.join(" & "))
    }
}

impl Serialize for Predicate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One row of a ratio table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub n: usize,
    pub num: u64,
    pub den: u64,
    /// `num/den` as written, or `undefined` for an empty denominator.
    pub exact: String,
    pub fraction: Option<f64>,
    /// Binomial standard error of the fraction; sampled reports only.
    pub std_error: Option<f64>,
}

fn row(n: usize, num: u64, den: u64, sampled: bool) -> RatioRow {
    if den == 0 {
        return RatioRow {
            n,
            num,
            den,
            exact: "undefined".into(),
            fraction: None,
            std_error: None,
        };
    }
    let p = num as f64 / den as f64;
    RatioRow {
        n,
        num,
        den,
        exact: format!("{num}/{den}"),
        fraction: Some(p),
        std_error: sampled.then(|| (p * (1.0 - p).max(0.0) / den as f64).sqrt()),
    }
}

fn check_compatible(reports: &[CensusReport]) -> Result<()> {
    let Some(first) = reports.first() else {
        return Ok(());
    };
    for r in &reports[1..] {
        if r.vocab != first.vocab {
            return Err(Error::Precondition(format!(
                "reports mix vocabularies {} and {}",
                first.vocab, r.vocab
            )));
        }
        let same_kind = matches!(
            (first.mode, r.mode),
            (Mode::Exhaustive, Mode::Exhaustive) | (Mode::Sampled { .. }, Mode::Sampled { .. })
        );
        if !same_kind {
            return Err(Error::Precondition(
                "reports mix exhaustive and sampled modes".into(),
            ));
        }
    }
    Ok(())
}

/// `|{num}| / |{den}|` over labelled counts, one row per report in order.
pub fn ratio_table(
    reports: &[CensusReport],
    num: &Predicate,
    den: &Predicate,
) -> Result<Vec<RatioRow>> {
    check_compatible(reports)?;
    Ok(reports
        .iter()
        .map(|r| {
            let sampled = matches!(r.mode, Mode::Sampled { .. });
            row(
                r.n,
                r.count_where(|k| num.holds(k)),
                r.count_where(|k| den.holds(k)),
                sampled,
            )
        })
        .collect())
}

/// Same as [`ratio_table`] over isomorphism-class counts. Every report must
/// carry unlabelled counts.
pub fn unlabelled_ratio_table(
    reports: &[CensusReport],
    num: &Predicate,
    den: &Predicate,
) -> Result<Vec<RatioRow>> {
    check_compatible(reports)?;
    reports
        .iter()
        .map(|r| {
            let missing =
                || Error::Precondition(format!("report for n={} has no unlabelled counts", r.n));
            let a = r.unlabelled_where(|k| num.holds(k)).ok_or_else(missing)?;
            let b = r.unlabelled_where(|k| den.holds(k)).ok_or_else(missing)?;
            Ok(row(r.n, a, b, false))
        })
        .collect()
}
