use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::CensusKey;

/// Counts for one key: structures, and the sum of their automorphism group
/// orders (which yields the number of isomorphism classes).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KeyTally {
    pub count: u64,
    pub aut_sum: u64,
}

/// Partial census counters over a set of completed work ranges. Merging is
/// associative and commutative; overlapping ranges are refused.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    ranges: Vec<(u64, u64)>,
    counts: BTreeMap<CensusKey, KeyTally>,
}

impl Tally {
    pub fn new() -> Self {
        Tally::default()
    }

    /// A tally covering `[start, end)` with no counts yet.
    pub fn for_range(start: u64, end: u64) -> Self {
        let ranges = if start < end {
            vec![(start, end)]
        } else {
            vec![]
        };
        Tally {
            ranges,
            counts: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, key: CensusKey, count: u64, aut_sum: u64) {
        if count == 0 {
            return;
        }
        let e = self.counts.entry(key).or_default();
        e.count += count;
        e.aut_sum += aut_sum;
    }

    pub fn ranges(&self) -> &[(u64, u64)] {
        &self.ranges
    }

    pub fn counts(&self) -> &BTreeMap<CensusKey, KeyTally> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.values().map(|t| t.count).sum()
    }

    /// Number of work units covered by the ranges.
    pub fn covered(&self) -> u64 {
        self.ranges.iter().map(|(a, b)| b - a).sum()
    }

    pub fn covers(&self, start: u64, end: u64) -> bool {
        self.ranges.iter().any(|&(a, b)| a <= start && end <= b)
    }

    pub fn merge(&mut self, other: &Tally) -> Result<()> {
        let mut ranges = self.ranges.clone();
        ranges.extend_from_slice(&other.ranges);
        ranges.sort_unstable();
        let mut coalesced: Vec<(u64, u64)> = Vec::with_capacity(ranges.len());
        for (a, b) in ranges {
            match coalesced.last_mut() {
                Some(last) if a < last.1 => {
                    return Err(Error::Checkpoint(format!(
                        "range overlap: [{a}, {b}) intersects [{}, {})",
                        last.0, last.1
                    )))
                }
                Some(last) if a == last.1 => last.1 = b,
                _ => coalesced.push((a, b)),
            }
        }
        self.ranges = coalesced;
        for (k, t) in &other.counts {
            self.add(*k, t.count, t.aut_sum);
        }
        Ok(())
    }

    pub(crate) fn from_parts(
        ranges: Vec<(u64, u64)>,
        counts: BTreeMap<CensusKey, KeyTally>,
    ) -> Result<Self> {
        let mut t = Tally {
            ranges: vec![],
            counts,
        };
        for (a, b) in ranges {
            if a > b {
                return Err(Error::Checkpoint(format!("inverted range [{a}, {b})")));
            }
            t.merge(&Tally::for_range(a, b))?;
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::GroupClass;
    use proptest::prelude::*;

    fn key(spt: usize) -> CensusKey {
        CensusKey {
            spt,
            spt_star: spt,
            class: GroupClass::Z2Power(1),
            q: 1,
            s: 2,
        }
    }

    #[test]
    fn merge_coalesces_and_rejects_overlap() {
        let mut a = Tally::for_range(0, 10);
        a.add(key(2), 3, 6);
        let mut b = Tally::for_range(10, 20);
        b.add(key(2), 1, 2);
        a.merge(&b).unwrap();
        assert_eq!(a.ranges(), &[(0, 20)]);
        assert_eq!(
            a.counts()[&key(2)],
            KeyTally {
                count: 4,
                aut_sum: 8
            }
        );
        assert!(a.merge(&Tally::for_range(15, 25)).is_err());
        assert!(a.covers(5, 10));
        assert!(!a.covers(15, 25));
    }

    fn arb_tally(slot: u64) -> impl Strategy<Value = Tally> {
        proptest::collection::vec((2usize..5, 1u64..100), 0..4).prop_map(move |entries| {
            let mut t = Tally::for_range(slot * 100, slot * 100 + 100);
            for (spt, c) in entries {
                t.add(key(spt), c, 2 * c);
            }
            t
        })
    }

    proptest! {
        #[test]
        fn merge_is_a_commutative_monoid(a in arb_tally(0), b in arb_tally(1), c in arb_tally(2)) {
            let mut ab = a.clone();
            ab.merge(&b).unwrap();
            let mut ba = b.clone();
            ba.merge(&a).unwrap();
            prop_assert_eq!(&ab, &ba);

            let mut ab_c = ab.clone();
            ab_c.merge(&c).unwrap();
            let mut bc = b.clone();
            bc.merge(&c).unwrap();
            let mut a_bc = a.clone();
            a_bc.merge(&bc).unwrap();
            prop_assert_eq!(&ab_c, &a_bc);

            let mut with_unit = a.clone();
            with_unit.merge(&Tally::new()).unwrap();
            prop_assert_eq!(with_unit, a);
        }
    }
}
