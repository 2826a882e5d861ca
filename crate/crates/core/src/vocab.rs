//! Relational vocabularies.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which tuples a structure is allowed to contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureClass {
    /// Every tuple is admissible.
    All,
    /// Tuples with a repeated coordinate are excluded.
    Irreflexive,
    /// Irreflexive, and each relation is closed under permuting coordinates.
    IrreflexiveSymmetric,
}

impl StructureClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureClass::All => "all",
            StructureClass::Irreflexive => "irreflexive",
            StructureClass::IrreflexiveSymmetric => "irreflexive-symmetric",
        }
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StructureClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "all" => Ok(StructureClass::All),
            "irreflexive" => Ok(StructureClass::Irreflexive),
            "irreflexive-symmetric" | "irreflexive_symmetric" => {
                Ok(StructureClass::IrreflexiveSymmetric)
            }
            other => Err(Error::InvalidVocabulary(format!(
                "unknown structure class `{other}`"
            ))),
        }
    }
}

/// A finite relational signature: one arity per relation symbol.
///
/// `max_arity` (r), `top_count` (k, symbols of arity r) and `sub_top_count`
/// (l, symbols of arity r - 1) are fixed at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawVocabulary", into = "RawVocabulary")]
pub struct Vocabulary {
    arities: Vec<usize>,
    class: StructureClass,
    r: usize,
    k: usize,
    l: usize,
}

#[derive(Serialize, Deserialize)]
struct RawVocabulary {
    arities: Vec<usize>,
    #[serde(default = "default_class")]
    class: StructureClass,
}

fn default_class() -> StructureClass {
    StructureClass::All
}

impl TryFrom<RawVocabulary> for Vocabulary {
    type Error = Error;

    fn try_from(raw: RawVocabulary) -> Result<Self> {
        Vocabulary::new(raw.arities, raw.class)
    }
}

impl From<Vocabulary> for RawVocabulary {
    fn from(v: Vocabulary) -> Self {
        RawVocabulary {
            arities: v.arities,
            class: v.class,
        }
    }
}

impl Vocabulary {
    pub fn new(arities: Vec<usize>, class: StructureClass) -> Result<Self> {
        if arities.is_empty() {
            return Err(Error::InvalidVocabulary("no relation symbols".into()));
        }
        if arities.contains(&0) {
            return Err(Error::InvalidVocabulary("arity 0 is not allowed".into()));
        }
        let r = *arities.iter().max().unwrap();
        if r < 2 {
            return Err(Error::InvalidVocabulary(
                "at least one relation symbol must have arity >= 2".into(),
            ));
        }
        if r > 16 {
            return Err(Error::InvalidVocabulary(format!(
                "arity {r} is unreasonably large"
            )));
        }
        let k = arities.iter().filter(|&&a| a == r).count();
        let l = arities.iter().filter(|&&a| a == r - 1).count();
        Ok(Vocabulary {
            arities,
            class,
            r,
            k,
            l,
        })
    }

    /// Shorthand for an unrestricted vocabulary.
    pub fn with_arities(arities: &[usize]) -> Result<Self> {
        Vocabulary::new(arities.to_vec(), StructureClass::All)
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }

    pub fn class(&self) -> StructureClass {
        self.class
    }

    pub fn symbol_count(&self) -> usize {
        self.arities.len()
    }

    /// Largest arity (r).
    pub fn max_arity(&self) -> usize {
        self.r
    }

    /// Number of symbols of maximal arity (k).
    pub fn top_count(&self) -> usize {
        self.k
    }

    /// Number of symbols of arity one below the maximum (l).
    pub fn sub_top_count(&self) -> usize {
        self.l
    }

    /// Parses `"2,2"` style arity lists.
    pub fn parse_arities(list: &str, class: StructureClass) -> Result<Self> {
        let arities = list
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidVocabulary(format!("bad arity `{}`", s.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Vocabulary::new(arities, class)
    }
}

impl fmt::Display for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.arities.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}] ({})", list.join(","), self.class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_values() {
        let v = Vocabulary::with_arities(&[3, 2, 3, 1]).unwrap();
        assert_eq!((v.max_arity(), v.top_count(), v.sub_top_count()), (3, 2, 1));
        let v = Vocabulary::with_arities(&[2]).unwrap();
        assert_eq!((v.max_arity(), v.top_count(), v.sub_top_count()), (2, 1, 0));
    }

    #[test]
    fn rejects_degenerate_signatures() {
        assert!(Vocabulary::with_arities(&[]).is_err());
        assert!(Vocabulary::with_arities(&[1, 1]).is_err());
        assert!(Vocabulary::with_arities(&[2, 0]).is_err());
    }

    #[test]
    fn json_config() {
        let v: Vocabulary =
            serde_json::from_str(r#"{"arities":[2,2],"class":"irreflexive"}"#).unwrap();
        assert_eq!(v.arities(), &[2, 2]);
        assert_eq!(v.class(), StructureClass::Irreflexive);
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"arities":[2,2],"class":"irreflexive"}"#
        );
        assert!(serde_json::from_str::<Vocabulary>(r#"{"arities":[1]}"#).is_err());
    }
}
