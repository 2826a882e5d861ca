//! Backtracking search for isomorphisms between two structures on the same
//! universe.
//!
//! Points are assigned images in order `0, 1, ..`. After point `d` is
//! assigned, every tuple whose largest coordinate is `d` is checked, so a
//! branch dies as soon as any fully-assigned tuple disagrees. Images are
//! also restricted to points with the same incidence profile.

use crate::structure::TupleBits;

pub(crate) struct IsoSearch {
    n: usize,
    arities: Vec<usize>,
    /// `levels[s][d]`: flattened coordinates of the tuples of symbol `s`
    /// whose largest coordinate is `d`.
    levels: Vec<Vec<Vec<u8>>>,
}

impl IsoSearch {
    pub fn new(n: usize, arities: &[usize]) -> Self {
        assert!(n <= 64, "isomorphism search supports at most 64 points");
        let levels = arities
            .iter()
            .map(|&arity| {
                let mut by_level = vec![Vec::new(); n];
                let len = n.pow(arity as u32);
                let mut coords = vec![0usize; arity];
                for idx in 0..len {
                    crate::layout::decode_index(idx, n, arity, &mut coords);
                    let top = coords.iter().copied().max().unwrap_or(0);
                    by_level[top].extend(coords.iter().map(|&c| c as u8));
                }
                by_level
            })
            .collect();
        IsoSearch {
            n,
            arities: arities.to_vec(),
            levels,
        }
    }

    /// Incidence profile of every point: for each symbol, the number of
    /// tuples having the point at each coordinate, and whether the constant
    /// tuple on the point is present.
    fn profiles<S: TupleBits>(&self, m: &S) -> Vec<Vec<u32>> {
        let n = self.n;
        let width: usize = self.arities.iter().map(|a| a + 1).sum();
        let mut prof = vec![vec![0u32; width]; n];
        let mut base = 0;
        let mut coords = vec![0usize; self.arities.iter().copied().max().unwrap_or(0)];
        for (s, &arity) in self.arities.iter().enumerate() {
            let len = n.pow(arity as u32);
            for idx in 0..len {
                if !m.bit(s, idx) {
                    continue;
                }
                crate::layout::decode_index(idx, n, arity, &mut coords[..arity]);
                for (j, &c) in coords[..arity].iter().enumerate() {
                    prof[c][base + j] += 1;
                }
                if coords[..arity].iter().all(|&c| c == coords[0]) {
                    prof[coords[0]][base + arity] += 1;
                }
            }
            base += arity + 1;
        }
        prof
    }

    /// Calls `visit` with the image table of each isomorphism `a -> b` in
    /// lexicographic order; `visit` returns `false` to stop early.
    pub fn run<A: TupleBits, B: TupleBits>(
        &self,
        a: &A,
        b: &B,
        mut visit: impl FnMut(&[u8]) -> bool,
    ) {
        let pa = self.profiles(a);
        let pb = self.profiles(b);
        let candidates: Vec<Vec<u8>> = pa
            .iter()
            .map(|p| {
                (0..self.n)
                    .filter(|&c| &pb[c] == p)
                    .map(|c| c as u8)
                    .collect()
            })
            .collect();
        if candidates.iter().any(|c| c.is_empty()) {
            return;
        }
        let mut imgs = vec![0u8; self.n];
        self.descend(a, b, &candidates, 0, 0, &mut imgs, &mut visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn descend<A: TupleBits, B: TupleBits>(
        &self,
        a: &A,
        b: &B,
        candidates: &[Vec<u8>],
        depth: usize,
        used: u64,
        imgs: &mut [u8],
        visit: &mut impl FnMut(&[u8]) -> bool,
    ) -> bool {
        if depth == self.n {
            return visit(imgs);
        }
        for &c in &candidates[depth] {
            if used >> c & 1 == 1 {
                continue;
            }
            imgs[depth] = c;
            if self.consistent(a, b, depth, imgs)
                && !self.descend(a, b, candidates, depth + 1, used | 1 << c, imgs, visit)
            {
                return false;
            }
        }
        true
    }

    #[inline]
    fn consistent<A: TupleBits, B: TupleBits>(
        &self,
        a: &A,
        b: &B,
        depth: usize,
        imgs: &[u8],
    ) -> bool {
        let n = self.n;
        for (s, &arity) in self.arities.iter().enumerate() {
            for t in self.levels[s][depth].chunks_exact(arity) {
                let src = t.iter().fold(0usize, |acc, &c| acc * n + c as usize);
                let dst = t
                    .iter()
                    .fold(0usize, |acc, &c| acc * n + imgs[c as usize] as usize);
                if a.bit(s, src) != b.bit(s, dst) {
                    return false;
                }
            }
        }
        true
    }
}
