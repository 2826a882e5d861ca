//! Tuple indexing and admissible slots.
//!
//! A tuple `(a_1, .., a_m)` over `{0, .., n-1}` has index
//! `sum a_j * n^(m-j)`, first coordinate most significant. The admissible
//! tuples of a symbol, one representative per orbit of the class's
//! coordinate symmetry, are its *slots*, numbered in increasing tuple-index
//! order. A structure's encoding has one bit per slot, symbols concatenated
//! in vocabulary order with the first symbol in the low bits.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::vocab::{StructureClass, Vocabulary};

pub(crate) const NO_SLOT: u32 = u32::MAX;

/// Upper bound on `n^arity` for one relation bitmap.
pub const MAX_RELATION_BITS: usize = 1 << 24;

#[derive(Debug, Clone)]
pub(crate) struct TupleSpace {
    pub n: usize,
    pub arity: usize,
    pub len: usize,
    /// Tuple index of each slot's representative.
    pub slots: Vec<u32>,
    /// Slot of every tuple index, `NO_SLOT` when inadmissible.
    pub slot_of: Vec<u32>,
}

pub(crate) fn tuple_len(n: usize, arity: usize) -> Result<usize> {
    u32::try_from(arity)
        .ok()
        .and_then(|a| n.checked_pow(a))
        .filter(|&len| len <= MAX_RELATION_BITS)
        .ok_or_else(|| Error::TooLarge(format!("a relation of arity {arity} on {n} points")))
}

pub(crate) fn decode_index(mut idx: usize, n: usize, arity: usize, out: &mut [usize]) {
    for j in (0..arity).rev() {
        out[j] = idx % n;
        idx /= n;
    }
}

pub(crate) fn encode_index(coords: &[usize], n: usize) -> usize {
    coords.iter().fold(0, |acc, &c| acc * n + c)
}

impl TupleSpace {
    pub fn new(n: usize, arity: usize, class: StructureClass) -> Result<Self> {
        let len = tuple_len(n, arity)?;
        let mut slot_of = vec![NO_SLOT; len];
        let mut slots = Vec::new();
        let mut coords = vec![0usize; arity];
        let mut sorted = vec![0usize; arity];
        for (idx, slot) in slot_of.iter_mut().enumerate() {
            decode_index(idx, n, arity, &mut coords);
            sorted.copy_from_slice(&coords);
            sorted.sort_unstable();
            let distinct = sorted.windows(2).all(|w| w[0] < w[1]);
            match class {
                StructureClass::All => {
                    *slot = slots.len() as u32;
                    slots.push(idx as u32);
                }
                StructureClass::Irreflexive => {
                    if distinct {
                        *slot = slots.len() as u32;
                        slots.push(idx as u32);
                    }
                }
                StructureClass::IrreflexiveSymmetric => {
                    if distinct && coords.windows(2).all(|w| w[0] < w[1]) {
                        *slot = slots.len() as u32;
                        slots.push(idx as u32);
                    }
                }
            }
        }
        if class == StructureClass::IrreflexiveSymmetric {
            // every reordering of a representative shares its slot
            for idx in 0..len {
                decode_index(idx, n, arity, &mut coords);
                sorted.copy_from_slice(&coords);
                sorted.sort_unstable();
                if sorted.windows(2).all(|w| w[0] < w[1]) {
                    slot_of[idx] = slot_of[encode_index(&sorted, n)];
                }
            }
        }
        Ok(TupleSpace {
            n,
            arity,
            len,
            slots,
            slot_of,
        })
    }

    /// Tuple index of `g` applied coordinatewise to tuple `idx`.
    pub fn image_index(&self, g: &Permutation, idx: usize) -> usize {
        let mut rem = idx;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.arity {
            out += g.apply(rem % self.n) * scale;
            rem /= self.n;
            scale *= self.n;
        }
        out
    }

    /// Every tuple index carrying the given slot.
    #[cfg(test)]
    pub fn tuples_of_slot(&self, slot: u32) -> impl Iterator<Item = usize> + '_ {
        self.slot_of
            .iter()
            .enumerate()
            .filter(move |&(_, &s)| s == slot)
            .map(|(i, _)| i)
    }
}

/// Slot spaces for every symbol of a vocabulary at a fixed universe size.
#[derive(Debug, Clone)]
pub struct SlotLayout {
    pub(crate) n: usize,
    pub(crate) spaces: Vec<TupleSpace>,
    pub(crate) offsets: Vec<usize>,
    pub(crate) width: usize,
}

impl SlotLayout {
    pub fn new(vocab: &Vocabulary, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidStructure("universe must be nonempty".into()));
        }
        if n > Permutation::MAX_DEGREE {
            return Err(Error::TooLarge(format!("universe of size {n}")));
        }
        let mut spaces = Vec::with_capacity(vocab.symbol_count());
        let mut offsets = Vec::with_capacity(vocab.symbol_count());
        let mut width = 0;
        for &arity in vocab.arities() {
            let space = TupleSpace::new(n, arity, vocab.class())?;
            offsets.push(width);
            width += space.slots.len();
            spaces.push(space);
        }
        Ok(SlotLayout {
            n,
            spaces,
            offsets,
            width,
        })
    }

    /// Total number of admissible slots, i.e. `log2 |S_n|`.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The permutation `g` induces on encoding bits.
    pub(crate) fn slot_permutation(&self, g: &Permutation) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.width);
        for (space, &offset) in self.spaces.iter().zip(&self.offsets) {
            for &rep in &space.slots {
                let img = space.image_index(g, rep as usize);
                out.push((offset + space.slot_of[img] as usize) as u32);
            }
        }
        out
    }

    /// Number of cycles of `g` acting on the slots.
    pub fn slot_cycle_count(&self, g: &Permutation) -> usize {
        let perm = self.slot_permutation(g);
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = perm[x] as usize;
            }
        }
        cycles
    }
}

/// Number of admissible slots for `vocab` on `n` points.
pub fn slot_count(vocab: &Vocabulary, n: usize) -> Result<usize> {
    Ok(SlotLayout::new(vocab, n)?.width())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_counts_by_class() {
        let v = |a: &[usize], c| Vocabulary::new(a.to_vec(), c).unwrap();
        assert_eq!(slot_count(&v(&[2], StructureClass::All), 3).unwrap(), 9);
        assert_eq!(
            slot_count(&v(&[2], StructureClass::Irreflexive), 3).unwrap(),
            6
        );
        assert_eq!(
            slot_count(&v(&[2], StructureClass::IrreflexiveSymmetric), 3).unwrap(),
            3
        );
        assert_eq!(
            slot_count(&v(&[3], StructureClass::IrreflexiveSymmetric), 4).unwrap(),
            4
        );
        assert_eq!(
            slot_count(&v(&[3, 1], StructureClass::Irreflexive), 3).unwrap(),
            6 + 3
        );
        assert_eq!(slot_count(&v(&[2, 2], StructureClass::All), 2).unwrap(), 8);
    }

    #[test]
    fn tuple_index_is_big_endian_in_coordinates() {
        let mut c = [0; 3];
        decode_index(encode_index(&[2, 0, 1], 3), 3, 3, &mut c);
        assert_eq!(c, [2, 0, 1]);
        assert_eq!(encode_index(&[1, 0], 4), 4);
    }

    #[test]
    fn symmetric_slots_are_shared() {
        let s = TupleSpace::new(3, 2, StructureClass::IrreflexiveSymmetric).unwrap();
        assert_eq!(
            s.slot_of[encode_index(&[0, 1], 3)],
            s.slot_of[encode_index(&[1, 0], 3)]
        );
        assert_eq!(s.slot_of[encode_index(&[1, 1], 3)], NO_SLOT);
        assert_eq!(s.tuples_of_slot(0).count(), 2);
    }

    #[test]
    fn guards_huge_relations() {
        assert!(TupleSpace::new(300, 4, StructureClass::All).is_err());
    }
}
