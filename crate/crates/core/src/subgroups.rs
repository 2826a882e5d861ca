//! All subgroups of a small symmetric group, by cyclic extension.
//!
//! Seeds are the cyclic subgroups; every known subgroup `H` is then
//! extended by each element outside it and closed. `<H, g>` only depends on
//! the double coset `HgH`, so one element per double coset is tried.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{all_permutations, Permutation};

pub const MAX_SUBGROUP_DEGREE: usize = 6;

const WORDS: usize = 12; // 720 bits covers Sym6

type Bits = [u64; WORDS];

struct SymTable {
    elements: Vec<Permutation>,
    mul: Vec<u16>,
    len: usize,
}

impl SymTable {
    fn new(degree: usize) -> Self {
        let elements = all_permutations(degree);
        let len = elements.len();
        let index: HashMap<&Permutation, u16> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i as u16))
            .collect();
        let mut mul = vec![0u16; len * len];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                mul[a * len + b] = index[&pa.compose(pb)];
            }
        }
        SymTable { elements, mul, len }
    }

    #[inline]
    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.len + b as usize]
    }
}

#[inline]
fn test(bits: &Bits, i: u16) -> bool {
    bits[i as usize / 64] >> (i % 64) & 1 == 1
}

#[inline]
fn set(bits: &mut Bits, i: u16) {
    bits[i as usize / 64] |= 1 << (i % 64);
}

struct Found {
    bits: Bits,
    elements: Vec<u16>,
    gens: Vec<u16>,
}

/// `<H, g>` for a subgroup `H` (given by elements and generators).
fn extend(table: &SymTable, h: &Found, g: u16) -> Found {
    let mut bits = h.bits;
    let mut elements = h.elements.clone();
    let mut gens = h.gens.clone();
    gens.push(g);
    let sub_len = h.elements.len();
    let mut reps = vec![0u16];
    let mut idx = 0;
    while idx < reps.len() {
        let rep = reps[idx];
        idx += 1;
        for &s in &gens {
            let x = table.mul(rep, s);
            if test(&bits, x) {
                continue;
            }
            for j in 0..sub_len {
                let y = table.mul(elements[j], x);
                set(&mut bits, y);
                elements.push(y);
            }
            reps.push(x);
        }
    }
    Found {
        bits,
        elements,
        gens,
    }
}

/// Every subgroup of `Sym_degree`, without duplicates, ordered by group order
/// and then by element list.
pub fn subgroups_of_sym(degree: usize) -> Result<Vec<PermGroup>> {
    if degree == 0 || degree > MAX_SUBGROUP_DEGREE {
        return Err(Error::DegreeGuard {
            what: "subgroup enumeration",
            degree,
            limit: MAX_SUBGROUP_DEGREE,
        });
    }
    let table = SymTable::new(degree);
    let identity: u16 = 0;
    let trivial = {
        let mut bits = [0u64; WORDS];
        set(&mut bits, identity);
        Found {
            bits,
            elements: vec![identity],
            gens: vec![],
        }
    };
    let mut known: HashMap<Bits, usize> = HashMap::new();
    let mut groups: Vec<Found> = Vec::new();
    known.insert(trivial.bits, 0);
    groups.push(trivial);

    let mut i = 0;
    while i < groups.len() {
        let mut tried = groups[i].bits;
        for g in 0..table.len as u16 {
            if test(&tried, g) {
                continue;
            }
            let h = &groups[i];
            for &a in &h.elements {
                let ag = table.mul(a, g);
                for &b in &h.elements {
                    set(&mut tried, table.mul(ag, b));
                }
            }
            let k = extend(&table, h, g);
            if let std::collections::hash_map::Entry::Vacant(e) = known.entry(k.bits) {
                e.insert(groups.len());
                groups.push(k);
            }
        }
        i += 1;
    }

    let mut out: Vec<PermGroup> = groups
        .into_iter()
        .map(|f| {
            let mut elements: Vec<u16> = f.elements;
            elements.sort_unstable();
            let perms: Vec<Permutation> = elements
                .iter()
                .map(|&e| table.elements[e as usize].clone())
                .collect();
            let gens: Vec<Permutation> = f
                .gens
                .iter()
                .map(|&e| table.elements[e as usize].clone())
                .collect();
            PermGroup::close_in(degree, &gens)
                .inspect(|g| {
                    debug_assert_eq!(g.elements(), perms.as_slice());
                })
                .expect("generators share the degree")
        })
        .collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements().cmp(b.elements()))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Independent route: close every generator pair.
    fn two_generated(degree: usize) -> HashSet<Vec<Permutation>> {
        let all = all_permutations(degree);
        let mut out = HashSet::new();
        for a in &all {
            for b in &all {
                let g = PermGroup::close_in(degree, &[a.clone(), b.clone()]).unwrap();
                out.insert(g.elements().to_vec());
            }
        }
        out
    }

    #[test]
    fn counts_match_pair_closure() {
        for (d, expected) in [(1, 1), (2, 2), (3, 6), (4, 30)] {
            let subs = subgroups_of_sym(d).unwrap();
            assert_eq!(subs.len(), expected, "Sym{d}");
            let ours: HashSet<Vec<Permutation>> =
                subs.iter().map(|g| g.elements().to_vec()).collect();
            assert_eq!(ours.len(), subs.len());
            assert_eq!(ours, two_generated(d));
        }
    }

    #[test]
    fn sym5_and_sym6_counts() {
        assert_eq!(subgroups_of_sym(5).unwrap().len(), 156);
        let s6 = subgroups_of_sym(6).unwrap();
        assert_eq!(s6.len(), 1455);
        assert!(s6.iter().all(|g| 720 % g.order() == 0));
    }

    #[test]
    fn fixed_point_free_subgroups_of_sym3() {
        let fpf: Vec<_> = subgroups_of_sym(3)
            .unwrap()
            .into_iter()
            .filter(|g| !g.has_fixed_point())
            .collect();
        assert_eq!(
            fpf.iter().map(PermGroup::order).collect::<Vec<_>>(),
            vec![3, 6]
        );
    }

    #[test]
    fn every_result_is_a_group() {
        for g in subgroups_of_sym(4).unwrap() {
            assert!(g.is_valid(), "{g:?}");
        }
    }

    #[test]
    fn degree_guard() {
        assert!(matches!(
            subgroups_of_sym(7),
            Err(Error::DegreeGuard { .. })
        ));
        assert!(subgroups_of_sym(0).is_err());
    }
}
