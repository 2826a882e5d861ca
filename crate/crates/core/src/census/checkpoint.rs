//! Checkpoint files.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "RGC1"  u8 version
//! u32 vocab-json length, vocab JSON bytes
//! u32 n
//! u8 mode (0 exhaustive, 1 sampled) [sampled: u64 samples, u64 seed]
//! u64 chunk size
//! u32 range count, then (u64 start, u64 end) per completed range
//! u32 key count, then per key:
//!     u32 spt, u32 spt*, u8 class tag, u32 class arg, u8 abelian, u32 exponent,
//!     u32 q, u32 s, u64 count, u64 automorphism-order sum
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::classify::GroupClass;
use crate::error::{Error, Result};
use crate::vocab::Vocabulary;

use super::tally::{KeyTally, Tally};
use super::{CensusKey, Mode};

const MAGIC: &[u8; 4] = b"RGC1";
const VERSION: u8 = 1;

/// Everything needed to continue an interrupted census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub vocab: Vocabulary,
    pub n: usize,
    pub mode: Mode,
    pub chunk_size: u64,
    pub tally: Tally,
}

fn class_parts(c: GroupClass) -> (u8, u32, u8, u32) {
    match c {
        GroupClass::Trivial => (0, 0, 0, 0),
        GroupClass::Z2Power(t) => (1, t, 0, 0),
        GroupClass::Z3 => (2, 0, 0, 0),
        GroupClass::Sym3 => (3, 0, 0, 0),
        GroupClass::Z2PowerTimesZ3(t) => (4, t, 0, 0),
        GroupClass::Z2PowerTimesSym3(t) => (5, t, 0, 0),
        GroupClass::Other {
            order,
            abelian,
            exponent,
        } => (6, order as u32, abelian as u8, exponent as u32),
    }
}

fn class_from_parts(tag: u8, arg: u32, abelian: u8, exponent: u32) -> Result<GroupClass> {
    Ok(match tag {
        0 => GroupClass::Trivial,
        1 => GroupClass::Z2Power(arg),
        2 => GroupClass::Z3,
        3 => GroupClass::Sym3,
        4 => GroupClass::Z2PowerTimesZ3(arg),
        5 => GroupClass::Z2PowerTimesSym3(arg),
        6 => GroupClass::Other {
            order: arg as usize,
            abelian: abelian != 0,
            exponent: exponent as usize,
        },
        t => return Err(Error::Checkpoint(format!("unknown class tag {t}"))),
    })
}

impl Checkpoint {
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        let vocab = serde_json::to_vec(&self.vocab)?;
        out.extend_from_slice(&(vocab.len() as u32).to_le_bytes());
        out.extend_from_slice(&vocab);
        out.extend_from_slice(&(self.n as u32).to_le_bytes());
        match self.mode {
            Mode::Exhaustive => out.push(0),
            Mode::Sampled { samples, seed } => {
                out.push(1);
                out.extend_from_slice(&samples.to_le_bytes());
                out.extend_from_slice(&seed.to_le_bytes());
            }
        }
        out.extend_from_slice(&self.chunk_size.to_le_bytes());
        let ranges = self.tally.ranges();
        out.extend_from_slice(&(ranges.len() as u32).to_le_bytes());
        for &(a, b) in ranges {
            out.extend_from_slice(&a.to_le_bytes());
            out.extend_from_slice(&b.to_le_bytes());
        }
        let counts = self.tally.counts();
        out.extend_from_slice(&(counts.len() as u32).to_le_bytes());
        for (k, t) in counts {
            let (tag, arg, abelian, exponent) = class_parts(k.class);
            out.extend_from_slice(&(k.spt as u32).to_le_bytes());
            out.extend_from_slice(&(k.spt_star as u32).to_le_bytes());
            out.push(tag);
            out.extend_from_slice(&arg.to_le_bytes());
            out.push(abelian);
            out.extend_from_slice(&exponent.to_le_bytes());
            out.extend_from_slice(&(k.q as u32).to_le_bytes());
            out.extend_from_slice(&(k.s as u32).to_le_bytes());
            out.extend_from_slice(&t.count.to_le_bytes());
            out.extend_from_slice(&t.aut_sum.to_le_bytes());
        }
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4)? != MAGIC {
            return Err(Error::Checkpoint("bad magic".into()));
        }
        let version = r.u8()?;
        if version != VERSION {
            return Err(Error::Checkpoint(format!("unsupported version {version}")));
        }
        let vlen = r.u32()? as usize;
        let vocab: Vocabulary = serde_json::from_slice(r.take(vlen)?)
            .map_err(|e| Error::Checkpoint(format!("vocabulary: {e}")))?;
        let n = r.u32()? as usize;
        let mode = match r.u8()? {
            0 => Mode::Exhaustive,
            1 => Mode::Sampled {
                samples: r.u64()?,
                seed: r.u64()?,
            },
            m => return Err(Error::Checkpoint(format!("unknown mode {m}"))),
        };
        let chunk_size = r.u64()?;
        if chunk_size == 0 {
            return Err(Error::Checkpoint("zero chunk size".into()));
        }
        let nranges = r.u32()? as usize;
        let mut ranges = Vec::with_capacity(nranges.min(1 << 16));
        for _ in 0..nranges {
            ranges.push((r.u64()?, r.u64()?));
        }
        let nkeys = r.u32()? as usize;
        let mut counts = BTreeMap::new();
        for _ in 0..nkeys {
            let spt = r.u32()? as usize;
            let spt_star = r.u32()? as usize;
            let tag = r.u8()?;
            let arg = r.u32()?;
            let abelian = r.u8()?;
            let exponent = r.u32()?;
            let class = class_from_parts(tag, arg, abelian, exponent)?;
            let q = r.u32()? as usize;
            let s = r.u32()? as usize;
            let count = r.u64()?;
            let aut_sum = r.u64()?;
            let key = CensusKey {
                spt,
                spt_star,
                class,
                q,
                s,
            };
            if counts.insert(key, KeyTally { count, aut_sum }).is_some() {
                return Err(Error::Checkpoint("duplicate key".into()));
            }
        }
        if r.pos != bytes.len() {
            return Err(Error::Checkpoint("trailing bytes".into()));
        }
        let tally = Tally::from_parts(ranges, counts)?;
        Ok(Checkpoint {
            vocab,
            n,
            mode,
            chunk_size,
            tally,
        })
    }

    /// Writes to a sibling temporary file and renames over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let bytes = self.to_bytes()?;
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&bytes)?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut bytes = Vec::new();
        fs::File::open(path)?.read_to_end(&mut bytes)?;
        Checkpoint::from_bytes(&bytes)
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| Error::Checkpoint("truncated file".into()))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Checkpoint {
        let mut tally = Tally::for_range(0, 4096);
        tally.add(CensusKey::rigid(), 4000, 4000);
        tally.add(
            CensusKey {
                spt: 2,
                spt_star: 2,
                class: GroupClass::Z2Power(1),
                q: 1,
                s: 2,
            },
            90,
            180,
        );
        tally.add(
            CensusKey {
                spt: 4,
                spt_star: 4,
                class: GroupClass::Other {
                    order: 8,
                    abelian: false,
                    exponent: 4,
                },
                q: 1,
                s: 3,
            },
            6,
            48,
        );
        Checkpoint {
            vocab: Vocabulary::with_arities(&[2]).unwrap(),
            n: 4,
            mode: Mode::Sampled {
                samples: 10_000,
                seed: 42,
            },
            chunk_size: 4096,
            tally,
        }
    }

    #[test]
    fn round_trip() {
        let c = sample();
        let bytes = c.to_bytes().unwrap();
        assert_eq!(&bytes[..5], b"RGC1\x01");
        assert_eq!(Checkpoint::from_bytes(&bytes).unwrap(), c);
    }

    #[test]
    fn rejects_damage() {
        let bytes = sample().to_bytes().unwrap();
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(
            Checkpoint::from_bytes(&bad),
            Err(Error::Checkpoint(_))
        ));
        let mut bad = bytes.clone();
        bad[4] = 9;
        assert!(Checkpoint::from_bytes(&bad).is_err());
        assert!(Checkpoint::from_bytes(&bytes[..bytes.len() - 3]).is_err());
        let mut long = bytes.clone();
        long.push(0);
        assert!(Checkpoint::from_bytes(&long).is_err());
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.rgc");
        sample().save(&path).unwrap();
        assert_eq!(Checkpoint::load(&path).unwrap(), sample());
    }
}
