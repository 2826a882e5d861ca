//! Per-structure census key computation.
//!
//! Rigidity is decided first: a structure has a nontrivial automorphism iff
//! it is invariant under some permutation of prime order, and invariance
//! under `g` is the same as invariance under `<g>`. So one generator per
//! prime-order cyclic subgroup of `Sym_n` is tested, each as an early-exit
//! scan over the slot pairs it moves. Only invariant structures get a full
//! automorphism search, and the statistics of each distinct group are
//! cached.

use std::collections::HashMap;

use crate::automorphism::profile_of_group;
use crate::group::PermGroup;
use crate::iso::IsoSearch;
use crate::layout::{SlotLayout, NO_SLOT};
use crate::perm::{all_permutations, Permutation};
use crate::structure::{Structure, TupleBits};
use crate::vocab::Vocabulary;

use super::CensusKey;

/// Identifies a cached group; 0 is the trivial group.
pub(crate) type GroupId = u32;

pub(crate) struct Classifier {
    layout: SlotLayout,
    /// Moved slot pairs `(j, g(j))` of each candidate generator.
    candidates: Vec<Vec<(u8, u8)>>,
    search: IsoSearch,
    ids: HashMap<Vec<u8>, GroupId>,
    entries: Vec<(CensusKey, u64)>,
    scratch: Vec<u8>,
}

/// A slot encoding that fits in one word.
struct Packed<'a> {
    code: u64,
    layout: &'a SlotLayout,
}

impl TupleBits for Packed<'_> {
    #[inline]
    fn bit(&self, symbol: usize, index: usize) -> bool {
        let slot = self.layout.spaces[symbol].slot_of[index];
        slot != NO_SLOT && self.code >> (self.layout.offsets[symbol] + slot as usize) & 1 == 1
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Classifier {
    pub fn new(vocab: &Vocabulary, n: usize) -> crate::Result<Self> {
        let layout = SlotLayout::new(vocab, n)?;
        let mut gens: Vec<Permutation> = Vec::new();
        if layout.width <= 64 && n <= crate::automorphism::MAX_AUT_DEGREE {
            for g in all_permutations(n) {
                let ord = g.order();
                if !is_prime(ord) {
                    continue;
                }
                // keep the least generator of <g>
                if (2..ord).all(|k| g <= g.pow(k)) {
                    gens.push(g);
                }
            }
        }
        gens.sort_by_key(|g| (g.support_size(), g.clone()));
        let candidates = gens
            .iter()
            .map(|g| {
                layout
                    .slot_permutation(g)
                    .iter()
                    .enumerate()
                    .filter(|&(j, &gj)| j != gj as usize)
                    .map(|(j, &gj)| (j as u8, gj as u8))
                    .collect()
            })
            .collect();
        let search = IsoSearch::new(n, vocab.arities());
        let mut ids = HashMap::new();
        ids.insert((0..n as u8).collect::<Vec<u8>>(), 0);
        Ok(Classifier {
            layout,
            candidates,
            search,
            ids,
            entries: vec![(CensusKey::rigid(), 1)],
            scratch: Vec::new(),
        })
    }

    pub fn entry(&self, id: GroupId) -> (CensusKey, u64) {
        self.entries[id as usize]
    }

    #[inline]
    fn invariant_under_some_candidate(&self, code: u64) -> bool {
        self.candidates
            .iter()
            .any(|pairs| pairs.iter().all(|&(a, b)| (code >> a ^ code >> b) & 1 == 0))
    }

    /// Group of the structure with slot encoding `code`.
    pub fn classify_code(&mut self, code: u64) -> GroupId {
        if !self.invariant_under_some_candidate(code) {
            return 0;
        }
        let packed = Packed {
            code,
            layout: &self.layout,
        };
        let mut scratch = std::mem::take(&mut self.scratch);
        scratch.clear();
        self.search.run(&packed, &packed, |imgs| {
            scratch.extend_from_slice(imgs);
            true
        });
        let id = self.intern(&scratch);
        self.scratch = scratch;
        id
    }

    /// Group of an arbitrary structure on the classifier's universe.
    pub fn classify_structure(&mut self, m: &Structure) -> GroupId {
        let mut scratch = std::mem::take(&mut self.scratch);
        scratch.clear();
        self.search.run(m, m, |imgs| {
            scratch.extend_from_slice(imgs);
            true
        });
        let id = self.intern(&scratch);
        self.scratch = scratch;
        id
    }

    fn intern(&mut self, flat: &[u8]) -> GroupId {
        if let Some(&id) = self.ids.get(flat) {
            return id;
        }
        let n = self.layout.n;
        let elements: Vec<Permutation> = flat
            .chunks_exact(n)
            .map(|c| Permutation::from_raw(c.to_vec()))
            .collect();
        let order = elements.len() as u64;
        let prof = profile_of_group(PermGroup::from_elements(n, elements));
        let key = CensusKey {
            spt: prof.spt,
            spt_star: prof.spt_star,
            class: prof.class,
            q: prof.stats.q,
            s: prof.stats.s,
        };
        let id = self.entries.len() as GroupId;
        self.entries.push((key, order));
        self.ids.insert(flat.to_vec(), id);
        id
    }
}
