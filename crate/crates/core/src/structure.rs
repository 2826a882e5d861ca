//! Finite relational structures on `{0, .., n-1}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::RngCore;

use crate::error::{Error, Result};
use crate::iso::IsoSearch;
use crate::layout::{decode_index, encode_index, tuple_len, SlotLayout, NO_SLOT};
use crate::perm::Permutation;
use crate::vocab::{StructureClass, Vocabulary};

/// A structure: a universe size plus one tuple bitmap per relation symbol.
///
/// Bitmaps cover the whole tuple index space (`n^arity` bits), including
/// inadmissible tuples, which are always clear.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    vocab: Vocabulary,
    n: usize,
    relations: Vec<Vec<u64>>,
}

/// Read access to tuple membership, shared by [`Structure`] and the census'
/// packed encodings.
pub(crate) trait TupleBits {
    fn bit(&self, symbol: usize, index: usize) -> bool;
}

impl TupleBits for Structure {
    #[inline]
    fn bit(&self, symbol: usize, index: usize) -> bool {
        self.relations[symbol][index / 64] >> (index % 64) & 1 == 1
    }
}

impl Structure {
    /// The structure with every relation empty.
    pub fn empty(vocab: &Vocabulary, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidStructure("universe must be nonempty".into()));
        }
        if n > Permutation::MAX_DEGREE {
            return Err(Error::TooLarge(format!("universe of size {n}")));
        }
        let relations = vocab
            .arities()
            .iter()
            .map(|&a| Ok(vec![0u64; tuple_len(n, a)?.div_ceil(64)]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Structure {
            vocab: vocab.clone(),
            n,
            relations,
        })
    }

    /// Builds a structure from 0-based tuples, one list per symbol.
    pub fn from_tuples(vocab: &Vocabulary, n: usize, tuples: &[&[&[usize]]]) -> Result<Self> {
        if tuples.len() != vocab.symbol_count() {
            return Err(Error::InvalidStructure(format!(
                "{} tuple lists for {} symbols",
                tuples.len(),
                vocab.symbol_count()
            )));
        }
        let mut m = Structure::empty(vocab, n)?;
        for (symbol, list) in tuples.iter().enumerate() {
            for t in list.iter() {
                m.insert(symbol, t)?;
            }
        }
        Ok(m)
    }

    /// Adds a tuple. For the symmetric class every reordering is added too.
    pub fn insert(&mut self, symbol: usize, tuple: &[usize]) -> Result<()> {
        let arity = *self
            .vocab
            .arities()
            .get(symbol)
            .ok_or_else(|| Error::InvalidStructure(format!("no symbol {symbol}")))?;
        if tuple.len() != arity {
            return Err(Error::InvalidStructure(format!(
                "tuple {tuple:?} has length {} but symbol {symbol} has arity {arity}",
                tuple.len()
            )));
        }
        if let Some(&bad) = tuple.iter().find(|&&a| a >= self.n) {
            return Err(Error::InvalidStructure(format!(
                "point {bad} outside [0, {})",
                self.n
            )));
        }
        let mut sorted = tuple.to_vec();
        sorted.sort_unstable();
        let distinct = sorted.windows(2).all(|w| w[0] < w[1]);
        match self.vocab.class() {
            StructureClass::All => self.set_bit(symbol, encode_index(tuple, self.n)),
            _ if !distinct => {
                return Err(Error::InvalidStructure(format!(
                    "tuple {tuple:?} repeats a point in an irreflexive vocabulary"
                )))
            }
            StructureClass::Irreflexive => self.set_bit(symbol, encode_index(tuple, self.n)),
            StructureClass::IrreflexiveSymmetric => {
                for p in permutations_of(&sorted) {
                    self.set_bit(symbol, encode_index(&p, self.n));
                }
            }
        }
        Ok(())
    }

    fn set_bit(&mut self, symbol: usize, index: usize) {
        self.relations[symbol][index / 64] |= 1 << (index % 64);
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, symbol: usize, tuple: &[usize]) -> bool {
        tuple.len() == self.vocab.arities()[symbol]
            && tuple.iter().all(|&a| a < self.n)
            && self.bit(symbol, encode_index(tuple, self.n))
    }

    /// The 0-based tuples of one relation in increasing index order.
    pub fn tuples(&self, symbol: usize) -> Vec<Vec<usize>> {
        let arity = self.vocab.arities()[symbol];
        let len = self.n.pow(arity as u32);
        let mut coords = vec![0; arity];
        (0..len)
            .filter(|&i| self.bit(symbol, i))
            .map(|i| {
                decode_index(i, self.n, arity, &mut coords);
                coords.clone()
            })
            .collect()
    }

    /// Raw bitmap of one relation; bit `i` of word `i / 64` is tuple index `i`.
    pub fn relation_words(&self, symbol: usize) -> &[u64] {
        &self.relations[symbol]
    }

    pub(crate) fn from_relation_words(
        vocab: &Vocabulary,
        n: usize,
        relations: Vec<Vec<u64>>,
    ) -> Result<Self> {
        let layout = SlotLayout::new(vocab, n)?;
        let mut m = Structure::empty(vocab, n)?;
        if relations.len() != m.relations.len() {
            return Err(Error::InvalidStructure("wrong number of relations".into()));
        }
        for (symbol, (words, space)) in relations.into_iter().zip(&layout.spaces).enumerate() {
            if words.len() != m.relations[symbol].len() {
                return Err(Error::InvalidStructure(
                    "bitmap has the wrong length".into(),
                ));
            }
            for idx in 0..space.len {
                let set = words[idx / 64] >> (idx % 64) & 1 == 1;
                let slot = space.slot_of[idx];
                if slot == NO_SLOT {
                    if set {
                        return Err(Error::InvalidStructure(format!(
                            "inadmissible tuple index {idx} set for symbol {symbol}"
                        )));
                    }
                    continue;
                }
                let rep_set = {
                    let rep = space.slots[slot as usize] as usize;
                    words[rep / 64] >> (rep % 64) & 1 == 1
                };
                if set != rep_set {
                    return Err(Error::InvalidStructure(format!(
                        "relation {symbol} is not closed under reordering"
                    )));
                }
            }
            let tail = space.len % 64;
            if tail != 0 && words.last().is_some_and(|w| w >> tail != 0) {
                return Err(Error::InvalidStructure("padding bits set".into()));
            }
            m.relations[symbol] = words;
        }
        Ok(m)
    }

    /// The slot encoding.
    pub fn encode(&self) -> StructureEncoding {
        let layout = SlotLayout::new(&self.vocab, self.n).expect("structure was validated");
        self.encode_with(&layout)
    }

    pub(crate) fn encode_with(&self, layout: &SlotLayout) -> StructureEncoding {
        let mut digits = vec![0u64; layout.width.div_ceil(64).max(1)];
        for (symbol, (space, &offset)) in layout.spaces.iter().zip(&layout.offsets).enumerate() {
            for (slot, &rep) in space.slots.iter().enumerate() {
                if self.bit(symbol, rep as usize) {
                    let pos = offset + slot;
                    digits[pos / 64] |= 1 << (pos % 64);
                }
            }
        }
        StructureEncoding(BigUint::from_slice(&to_u32_digits(&digits)))
    }

    /// Inverse of [`Structure::encode`].
    pub fn decode(vocab: &Vocabulary, n: usize, code: &StructureEncoding) -> Result<Self> {
        let layout = SlotLayout::new(vocab, n)?;
        if code.0.bits() as usize > layout.width {
            return Err(Error::InvalidStructure(format!(
                "encoding {code} exceeds {} slots",
                layout.width
            )));
        }
        let digits = code.0.to_u64_digits();
        let bit = |pos: usize| {
            digits
                .get(pos / 64)
                .is_some_and(|w| w >> (pos % 64) & 1 == 1)
        };
        Ok(Structure::from_slot_fn(vocab, &layout, bit))
    }

    pub(crate) fn from_slot_bits(vocab: &Vocabulary, layout: &SlotLayout, code: u64) -> Self {
        Structure::from_slot_fn(vocab, layout, |pos| code >> pos & 1 == 1)
    }

    fn from_slot_fn(vocab: &Vocabulary, layout: &SlotLayout, bit: impl Fn(usize) -> bool) -> Self {
        let mut m = Structure::empty(vocab, layout.n).expect("layout was validated");
        for (symbol, (space, &offset)) in layout.spaces.iter().zip(&layout.offsets).enumerate() {
            for idx in 0..space.len {
                let slot = space.slot_of[idx];
                if slot != NO_SLOT && bit(offset + slot as usize) {
                    m.set_bit(symbol, idx);
                }
            }
        }
        m
    }

    /// The image `g(M)`: a tuple `t` is in `g(M)` iff `g⁻¹(t)` is in `M`.
    pub fn relabel(&self, g: &Permutation) -> Structure {
        assert_eq!(g.degree(), self.n);
        let mut out = Structure {
            relations: vec![],
            ..self.clone()
        };
        out.relations = self.relations.iter().map(|w| vec![0; w.len()]).collect();
        for (symbol, &arity) in self.vocab.arities().iter().enumerate() {
            let len = self.n.pow(arity as u32);
            let mut coords = vec![0; arity];
            for idx in (0..len).filter(|&i| self.bit(symbol, i)) {
                decode_index(idx, self.n, arity, &mut coords);
                coords.iter_mut().for_each(|c| *c = g.apply(*c));
                out.set_bit(symbol, encode_index(&coords, self.n));
            }
        }
        out
    }

    /// Restriction to the points in `subset`, re-indexed in increasing order.
    pub fn induced_substructure(&self, subset: &[usize]) -> Result<Structure> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut points = subset.to_vec();
        points.sort_unstable();
        points.dedup();
        if points.len() != subset.len() || points.iter().any(|&p| p >= self.n) {
            return Err(Error::InvalidStructure(format!(
                "{subset:?} is not a subset of the universe"
            )));
        }
        let k = points.len();
        let mut out = Structure::empty(&self.vocab, k)?;
        for (symbol, &arity) in self.vocab.arities().iter().enumerate() {
            let len = k.pow(arity as u32);
            let mut coords = vec![0; arity];
            for idx in 0..len {
                decode_index(idx, k, arity, &mut coords);
                coords.iter_mut().for_each(|c| *c = points[*c]);
                if self.bit(symbol, encode_index(&coords, self.n)) {
                    out.set_bit(symbol, idx);
                }
            }
        }
        Ok(out)
    }

    /// Whether `f` maps `self` isomorphically onto `other`.
    pub fn is_isomorphism(&self, f: &Permutation, other: &Structure) -> bool {
        if self.vocab.arities() != other.vocab.arities()
            || self.n != other.n
            || f.degree() != self.n
        {
            return false;
        }
        self.vocab
            .arities()
            .iter()
            .enumerate()
            .all(|(symbol, &arity)| {
                let len = self.n.pow(arity as u32);
                let mut coords = vec![0; arity];
                (0..len).all(|idx| {
                    decode_index(idx, self.n, arity, &mut coords);
                    coords.iter_mut().for_each(|c| *c = f.apply(*c));
                    self.bit(symbol, idx) == other.bit(symbol, encode_index(&coords, self.n))
                })
            })
    }

    /// Every isomorphism from `self` onto `other`, in lexicographic order.
    /// Empty when the universes differ in size.
    pub fn find_isomorphisms(&self, other: &Structure) -> Vec<Permutation> {
        if self.n != other.n || self.vocab.arities() != other.vocab.arities() {
            return Vec::new();
        }
        let search = IsoSearch::new(self.n, self.vocab.arities());
        let mut out = Vec::new();
        search.run(self, other, |imgs| {
            out.push(Permutation::from_raw(imgs.to_vec()));
            true
        });
        out
    }
}

fn to_u32_digits(words: &[u64]) -> Vec<u32> {
    words
        .iter()
        .flat_map(|&w| [w as u32, (w >> 32) as u32])
        .collect()
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    crate::perm::all_permutations(items.len())
        .into_iter()
        .map(|p| (0..items.len()).map(|i| items[p.apply(i)]).collect())
        .collect()
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Structure(n={}", self.n)?;
        for symbol in 0..self.relations.len() {
            write!(f, ", R{symbol}={:?}", self.tuples(symbol))?;
        }
        f.write_str(")")
    }
}

/// A structure's slot encoding as a nonnegative integer. Text form is
/// lowercase hex with a `0x` prefix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct StructureEncoding(pub BigUint);

impl StructureEncoding {
    pub fn from_u64(x: u64) -> Self {
        StructureEncoding(BigUint::from(x))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for StructureEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{}", self.0.to_str_radix(16))
    }
}

impl FromStr for StructureEncoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix("0x")
            .or_else(|| t.strip_prefix("0X"))
            .unwrap_or(t);
        let t: String = t.chars().filter(|&c| c != '_').collect();
        if t.is_empty() {
            return Err(Error::Parse(format!("empty hex encoding `{s}`")));
        }
        BigUint::parse_bytes(t.as_bytes(), 16)
            .map(StructureEncoding)
            .ok_or_else(|| Error::Parse(format!("bad hex encoding `{s}`")))
    }
}

/// Largest encoding width [`enumerate_structures`] accepts.
pub const MAX_ENUMERATION_WIDTH: usize = 63;

/// Every structure in `S_n`, in increasing encoding order.
pub fn enumerate_structures(
    vocab: &Vocabulary,
    n: usize,
) -> Result<impl Iterator<Item = Structure>> {
    let layout = SlotLayout::new(vocab, n)?;
    if layout.width > MAX_ENUMERATION_WIDTH {
        return Err(Error::TooLarge(format!(
            "S_{n} over {vocab} ({} slots)",
            layout.width
        )));
    }
    let vocab = vocab.clone();
    let count = 1u64 << layout.width;
    Ok((0..count).map(move |code| Structure::from_slot_bits(&vocab, &layout, code)))
}

/// A uniformly random member of `S_n`: every slot is set independently with
/// probability 1/2, drawn in slot order 64 slots per `next_u64`.
pub fn sample_structure<R: RngCore + ?Sized>(
    vocab: &Vocabulary,
    n: usize,
    rng: &mut R,
) -> Result<Structure> {
    let layout = SlotLayout::new(vocab, n)?;
    Ok(sample_with(vocab, &layout, rng))
}

pub(crate) fn sample_with<R: RngCore + ?Sized>(
    vocab: &Vocabulary,
    layout: &SlotLayout,
    rng: &mut R,
) -> Structure {
    let words: Vec<u64> = (0..layout.width.div_ceil(64))
        .map(|_| rng.next_u64())
        .collect();
    Structure::from_slot_fn(vocab, layout, |pos| words[pos / 64] >> (pos % 64) & 1 == 1)
}
