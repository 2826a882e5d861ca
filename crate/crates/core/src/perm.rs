//! Permutations of a finite point set.
//!
//! Points are 0-based in the API. Cycle notation, the only text form, is
//! 1-based: `(1 2)(3 4)` swaps points 0 and 1 and points 2 and 3.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, .., n-1}`, stored as its image table.
///
/// Ordering is lexicographic on the image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    imgs: Vec<u8>,
}

impl Permutation {
    pub const MAX_DEGREE: usize = 255;

    pub fn identity(n: usize) -> Self {
        assert!(n <= Self::MAX_DEGREE);
        Permutation {
            imgs: (0..n as u8).collect(),
        }
    }

    pub fn from_images(imgs: &[usize]) -> Result<Self> {
        let n = imgs.len();
        if n > Self::MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &i in imgs {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{imgs:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            imgs: imgs.iter().map(|&i| i as u8).collect(),
        })
    }

    pub(crate) fn from_raw(imgs: Vec<u8>) -> Self {
        debug_assert!({
            let mut s = imgs.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v as usize)
        });
        Permutation { imgs }
    }

    /// Builds a permutation of degree `n` from 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut imgs: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (j, &a) in cycle.iter().enumerate() {
                if a >= n || touched[a] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} repeated or out of range",
                        a + 1
                    )));
                }
                touched[a] = true;
                imgs[a] = cycle[(j + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&imgs)
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4 5)`. `()` is the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` in `{text}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
            let body = &open[..close];
            let points = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<usize>() {
                    Ok(p) if p >= 1 => Ok(p - 1),
                    _ => Err(Error::Parse(format!("bad point `{s}` in `{text}`"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.imgs.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.imgs[point] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.imgs
    }

    pub fn is_identity(&self) -> bool {
        self.imgs.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            imgs: other.imgs.iter().map(|&x| self.imgs[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.imgs.len()];
        for (i, &v) in self.imgs.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { imgs: inv }
    }

    /// `f ∘ self ∘ f⁻¹`.
    pub fn conjugate_by(&self, f: &Permutation) -> Permutation {
        f.compose(self).compose(&f.inverse())
    }

    pub fn order(&self) -> usize {
        let mut acc = 1usize;
        for cycle in self.cycles() {
            acc = lcm(acc, cycle.len());
        }
        acc
    }

    pub fn pow(&self, mut e: usize) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Points moved by this permutation.
    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) != i).collect()
    }

    pub fn support_size(&self) -> usize {
        self.imgs
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i != v as usize)
            .count()
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.degree())
    }
}

/// All permutations of degree `n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(Permutation { imgs: cur.clone() });
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}
