//! Automorphism groups of structures and the support statistics built on
//! them, plus labelled/unlabelled counting.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::classify::{classify, GroupClass};
use crate::error::{Error, Result};
use crate::group::{OrbitStats, PermGroup};
use crate::iso::IsoSearch;
use crate::layout::SlotLayout;
use crate::perm::{all_permutations, Permutation};
use crate::structure::{Structure, StructureEncoding};
use crate::vocab::Vocabulary;

/// Largest universe for which automorphism groups are materialized.
pub const MAX_AUT_DEGREE: usize = 8;

/// Largest universe for Burnside counting and canonical forms.
pub const MAX_COUNT_DEGREE: usize = 8;

pub fn automorphism_group(m: &Structure) -> Result<PermGroup> {
    if m.n() > MAX_AUT_DEGREE {
        return Err(Error::DegreeGuard {
            what: "automorphism groups",
            degree: m.n(),
            limit: MAX_AUT_DEGREE,
        });
    }
    let search = IsoSearch::new(m.n(), m.vocab().arities());
    let mut elements = Vec::new();
    search.run(m, m, |imgs| {
        elements.push(Permutation::from_raw(imgs.to_vec()));
        true
    });
    Ok(PermGroup::from_elements(m.n(), elements))
}

/// Everything the reports need to know about `Aut(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutProfile {
    pub group: PermGroup,
    /// Largest support of a single automorphism.
    pub spt: usize,
    /// Size of the union of non-singleton orbits.
    pub spt_star: usize,
    pub spt_star_set: Vec<usize>,
    /// The group restricted to `spt_star_set`, re-indexed.
    pub restricted: PermGroup,
    pub stats: OrbitStats,
    pub class: GroupClass,
}

pub fn profile(m: &Structure) -> Result<AutProfile> {
    Ok(profile_of_group(automorphism_group(m)?))
}

/// Support statistics of a permutation group viewed as `Aut(M)`.
pub fn profile_of_group(group: PermGroup) -> AutProfile {
    let spt = group.max_element_support();
    let spt_star_set: Vec<usize> = group
        .point_orbits()
        .into_iter()
        .filter(|o| o.len() > 1)
        .flatten()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let restricted = if spt_star_set.is_empty() {
        PermGroup::trivial(0)
    } else {
        group
            .restrict(&spt_star_set)
            .expect("non-singleton orbits form a union of orbits")
    };
    let stats = if spt_star_set.is_empty() {
        OrbitStats {
            p: 0,
            q: 0,
            s: 0,
            point_orbits: vec![],
            pair_orbits: vec![],
        }
    } else {
        restricted.orbit_stats()
    };
    let class = classify(&group);
    AutProfile {
        spt,
        spt_star: spt_star_set.len(),
        spt_star_set,
        restricted,
        stats,
        class,
        group,
    }
}

/// The `aut` report document.
#[derive(Debug, Clone, Serialize)]
pub struct AutSummary {
    pub n: usize,
    pub aut_order: usize,
    pub generators: Vec<String>,
    pub spt: usize,
    pub spt_star: usize,
    pub spt_star_set: Vec<usize>,
    pub class: GroupClass,
    pub q: usize,
    pub s: usize,
}

impl AutProfile {
    pub fn summary(&self) -> AutSummary {
        AutSummary {
            n: self.group.degree(),
            aut_order: self.group.order(),
            generators: self
                .group
                .generators()
                .iter()
                .map(|g| g.to_string())
                .collect(),
            spt: self.spt,
            spt_star: self.spt_star,
            spt_star_set: self.spt_star_set.iter().map(|p| p + 1).collect(),
            class: self.class,
            q: self.stats.q,
            s: self.stats.s,
        }
    }
}

/// `|{M in S_n : g in Aut(M)}|`, i.e. `2^(cycles of g on the slots)`.
pub fn fixed_structure_count(g: &Permutation, vocab: &Vocabulary, n: usize) -> Result<BigUint> {
    if g.degree() != n {
        return Err(Error::InvalidPermutation(format!(
            "degree {} does not match universe size {n}",
            g.degree()
        )));
    }
    let layout = SlotLayout::new(vocab, n)?;
    Ok(BigUint::one() << layout.slot_cycle_count(g))
}

/// Number of isomorphism classes in `S_n`, by Burnside's lemma.
pub fn unlabelled_count(vocab: &Vocabulary, n: usize) -> Result<BigUint> {
    if n > MAX_COUNT_DEGREE {
        return Err(Error::DegreeGuard {
            what: "Burnside counting",
            degree: n,
            limit: MAX_COUNT_DEGREE,
        });
    }
    let layout = SlotLayout::new(vocab, n)?;
    let perms = all_permutations(n);
    let mut total = BigUint::zero();
    for g in &perms {
        total += BigUint::one() << layout.slot_cycle_count(g);
    }
    Ok(total / BigUint::from(perms.len()))
}

/// Smallest encoding over all relabelings of `m`. Two structures are
/// isomorphic iff their canonical forms agree.
pub fn canonical_form(m: &Structure) -> Result<StructureEncoding> {
    if m.n() > MAX_COUNT_DEGREE {
        return Err(Error::DegreeGuard {
            what: "canonical forms",
            degree: m.n(),
            limit: MAX_COUNT_DEGREE,
        });
    }
    let layout = SlotLayout::new(m.vocab(), m.n())?;
    Ok(all_permutations(m.n())
        .iter()
        .map(|g| m.relabel(g).encode_with(&layout))
        .min()
        .expect("Sym_n is nonempty"))
}
