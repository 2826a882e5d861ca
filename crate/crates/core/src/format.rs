//! Binary structure files.
//!
//! ```text
//! "RSTR"  u8 version (1)  u32 n (little-endian)
//! u8 symbol count, then one u8 arity per symbol
//! per symbol: n^arity bits, least significant bit first, padded to a byte
//! ```
//!
//! Tuple index 0 is bit 0 of the first byte of its relation. The file does
//! not record the structure class; readers supply it.

use std::path::Path;

use crate::error::{Error, Result};
use crate::layout::tuple_len;
use crate::structure::Structure;
use crate::vocab::{StructureClass, Vocabulary};

const MAGIC: &[u8; 4] = b"RSTR";
const VERSION: u8 = 1;

impl Structure {
    pub fn to_file_bytes(&self) -> Result<Vec<u8>> {
        let arities = self.vocab().arities();
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(self.n() as u32).to_le_bytes());
        out.push(
            u8::try_from(arities.len())
                .map_err(|_| Error::InvalidVocabulary("more than 255 symbols".into()))?,
        );
        out.extend(arities.iter().map(|&a| a as u8));
        for (symbol, &a) in arities.iter().enumerate() {
            let bits = tuple_len(self.n(), a)?;
            let bytes: Vec<u8> = self
                .relation_words(symbol)
                .iter()
                .flat_map(|w| w.to_le_bytes())
                .collect();
            out.extend_from_slice(&bytes[..bits.div_ceil(8)]);
        }
        Ok(out)
    }

    /// Parses a structure file, reading the relations under `class`.
    pub fn from_file_bytes(bytes: &[u8], class: StructureClass) -> Result<Self> {
        let bad = |what: &str| Error::InvalidStructure(format!("structure file: {what}"));
        if bytes.len() < 10 || &bytes[..4] != MAGIC {
            return Err(bad("bad magic"));
        }
        if bytes[4] != VERSION {
            return Err(bad(&format!("unsupported version {}", bytes[4])));
        }
        let n = u32::from_le_bytes(bytes[5..9].try_into().unwrap()) as usize;
        let count = bytes[9] as usize;
        let mut pos = 10;
        let arities: Vec<usize> = bytes
            .get(pos..pos + count)
            .ok_or_else(|| bad("truncated arity list"))?
            .iter()
            .map(|&a| a as usize)
            .collect();
        pos += count;
        let vocab = Vocabulary::new(arities, class)?;
        let mut relations = Vec::with_capacity(count);
        for &a in vocab.arities() {
            let bits = tuple_len(n, a)?;
            let chunk = bytes
                .get(pos..pos + bits.div_ceil(8))
                .ok_or_else(|| bad("truncated bitmap"))?;
            pos += chunk.len();
            if bits % 8 != 0 && chunk[chunk.len() - 1] >> (bits % 8) != 0 {
                return Err(bad("padding bits set"));
            }
            let mut words = vec![0u64; bits.div_ceil(64)];
            for (i, &b) in chunk.iter().enumerate() {
                words[i / 8] |= (b as u64) << (8 * (i % 8));
            }
            relations.push(words);
        }
        if pos != bytes.len() {
            return Err(bad("trailing bytes"));
        }
        Structure::from_relation_words(&vocab, n, relations)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_file_bytes()?)?;
        Ok(())
    }

    pub fn load(path: &Path, class: StructureClass) -> Result<Self> {
        Structure::from_file_bytes(&std::fs::read(path)?, class)
    }
}
