//! Explicit permutation groups.
//!
//! A [`PermGroup`] keeps its full element list, sorted lexicographically by
//! image table, next to a generating sub-list. All groups handled here are
//! small (degree at most 8), so closure is done by direct multiplication.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Equality and hashing look at the element set only.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl std::hash::Hash for PermGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.degree.hash(state);
        self.elements.hash(state);
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup(degree={}, order={}, gens=[",
            self.degree,
            self.order()
        )?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("])")
    }
}

/// Closure of `gens` under composition, by Dimino-style coset extension.
/// Returns the elements in discovery order.
fn closure_elements(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let mut elements = vec![Permutation::identity(degree)];
    let mut seen: HashSet<Permutation> = elements.iter().cloned().collect();
    let mut current: Vec<Permutation> = Vec::new();
    for g in gens {
        if seen.contains(g) {
            continue;
        }
        current.push(g.clone());
        // `elements` is the subgroup H generated so far; add cosets of H
        // until closed under every generator seen so far.
        let subgroup_len = elements.len();
        let mut reps = vec![g.clone()];
        for i in 0..subgroup_len {
            let x = elements[i].compose(g);
            seen.insert(x.clone());
            elements.push(x);
        }
        let mut rep_idx = 0;
        while rep_idx < reps.len() {
            let rep = reps[rep_idx].clone();
            rep_idx += 1;
            for s in &current {
                let x = rep.compose(s);
                if seen.contains(&x) {
                    continue;
                }
                for i in 0..subgroup_len {
                    let y = elements[i].compose(&x);
                    seen.insert(y.clone());
                    elements.push(y);
                }
                reps.push(x);
            }
        }
    }
    elements
}

impl PermGroup {
    /// The trivial group of the given degree.
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            elements: vec![Permutation::identity(degree)],
            generators: vec![],
        }
    }

    /// The group generated by `gens`. An empty list needs `degree` to be
    /// known, see [`PermGroup::close_in`].
    pub fn close(gens: &[Permutation]) -> Result<Self> {
        let degree = gens
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::InvalidPermutation("no generators given".into()))?;
        PermGroup::close_in(degree, gens)
    }

    pub fn close_in(degree: usize, gens: &[Permutation]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::MixedDegrees(degree, g.degree()));
        }
        let mut elements = closure_elements(degree, gens);
        elements.sort_unstable();
        let generators = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        Ok(PermGroup {
            degree,
            elements,
            generators,
        })
    }

    /// Wraps a list already known to be a group and picks a small generating
    /// set greedily from it.
    pub(crate) fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut generators = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
        for e in &elements {
            if span.len() == elements.len() {
                break;
            }
            if !span.contains(e) {
                generators.push(e.clone());
                span = closure_elements(degree, &generators).into_iter().collect();
            }
        }
        debug_assert_eq!(span.len(), elements.len());
        PermGroup {
            degree,
            elements,
            generators,
        }
    }

    pub fn symmetric(degree: usize) -> Self {
        PermGroup::from_elements(degree, crate::perm::all_permutations(degree))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }

    /// Checks identity, closure and inverses directly on the element list.
    pub fn is_valid(&self) -> bool {
        let set: HashSet<&Permutation> = self.elements.iter().collect();
        self.elements.windows(2).all(|w| w[0] < w[1])
            && set.contains(&Permutation::identity(self.degree))
            && self.elements.iter().all(|a| set.contains(&a.inverse()))
            && self
                .elements
                .iter()
                .all(|a| self.elements.iter().all(|b| set.contains(&a.compose(b))))
            && self.generators.iter().all(|g| set.contains(g))
            && closure_elements(self.degree, &self.generators).len() == self.elements.len()
    }

    /// `f H f⁻¹`.
    pub fn conjugate_by(&self, f: &Permutation) -> PermGroup {
        PermGroup {
            degree: self.degree,
            elements: {
                let mut e: Vec<_> = self.elements.iter().map(|g| g.conjugate_by(f)).collect();
                e.sort_unstable();
                e
            },
            generators: self.generators.iter().map(|g| g.conjugate_by(f)).collect(),
        }
    }

    /// Restriction to `points`, which must be a union of orbits, re-indexed
    /// in increasing order.
    pub fn restrict(&self, points: &[usize]) -> Result<PermGroup> {
        let mut pts = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        let mut index = vec![usize::MAX; self.degree];
        for (i, &p) in pts.iter().enumerate() {
            if p >= self.degree {
                return Err(Error::InvalidPermutation(format!("point {p} out of range")));
            }
            index[p] = i;
        }
        let map = |g: &Permutation| -> Result<Permutation> {
            let imgs = pts
                .iter()
                .map(|&p| match index[g.apply(p)] {
                    usize::MAX => Err(Error::Precondition(format!(
                        "{:?} is not a union of orbits",
                        points
                    ))),
                    i => Ok(i),
                })
                .collect::<Result<Vec<_>>>()?;
            Permutation::from_images(&imgs)
        };
        let elements = self.elements.iter().map(map).collect::<Result<Vec<_>>>()?;
        let generators = self
            .generators
            .iter()
            .map(map)
            .collect::<Result<Vec<_>>>()?;
        let mut out = PermGroup::from_elements(pts.len(), elements);
        let gens: Vec<_> = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        if closure_elements(pts.len(), &gens).len() == out.order() {
            out.generators = gens;
        }
        Ok(out)
    }

    /// Points moved by at least one element, and how many there are.
    pub fn support(&self) -> (Vec<usize>, usize) {
        support_of(self.degree, &self.generators)
    }

    /// Largest support of a single element.
    pub fn max_element_support(&self) -> usize {
        self.elements
            .iter()
            .map(Permutation::support_size)
            .max()
            .unwrap_or(0)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree)
            .filter(|&a| self.generators.iter().all(|g| g.apply(a) == a))
            .collect()
    }

    pub fn has_fixed_point(&self) -> bool {
        !self.fixed_points().is_empty()
    }

    /// Orbits on points, each sorted, ordered by least element.
    pub fn point_orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for a in 0..self.degree {
                uf.union(a, g.apply(a));
            }
        }
        uf.classes()
    }

    /// Orbits on ordered pairs under the coordinatewise action.
    pub fn pair_orbits(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.degree;
        let mut uf = UnionFind::new(n * n);
        for g in &self.generators {
            for a in 0..n {
                for b in 0..n {
                    uf.union(a * n + b, g.apply(a) * n + g.apply(b));
                }
            }
        }
        uf.classes()
            .into_iter()
            .map(|c| c.into_iter().map(|i| (i / n, i % n)).collect())
            .collect()
    }

    pub fn orbit_stats(&self) -> OrbitStats {
        let point_orbits = self.point_orbits();
        let pair_orbits = self.pair_orbits();
        OrbitStats {
            p: self.degree,
            q: point_orbits.len(),
            s: pair_orbits.len(),
            point_orbits,
            pair_orbits,
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        self.elements
            .iter()
            .fold(1, |acc, g| crate::perm::lcm(acc, g.order()))
    }

    pub fn center(&self) -> Vec<Permutation> {
        self.elements
            .iter()
            .filter(|z| self.generators.iter().all(|g| g.compose(z) == z.compose(g)))
            .cloned()
            .collect()
    }

    /// Multiset of element orders as `order -> count`.
    pub fn order_profile(&self) -> Vec<(usize, usize)> {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for g in &self.elements {
            *counts.entry(g.order()).or_default() += 1;
        }
        let mut v: Vec<_> = counts.into_iter().collect();
        v.sort_unstable();
        v
    }

    /// Generator list in cycle notation, for serialization.
    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        let gens = spec
            .generators
            .iter()
            .map(|s| Permutation::parse_cycles(spec.degree, s))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::close_in(spec.degree, &gens)
    }
}

/// Serialized group: degree plus generators in cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<String>,
}

/// Points moved by the group generated by `perms`.
pub fn support_of(degree: usize, perms: &[Permutation]) -> (Vec<usize>, usize) {
    let moved: Vec<usize> = (0..degree)
        .filter(|&a| perms.iter().any(|g| g.apply(a) != a))
        .collect();
    let count = moved.len();
    (moved, count)
}

/// Orbit counts of a permutation group on its points and on ordered pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitStats {
    /// Size of the underlying set.
    pub p: usize,
    /// Orbits on points.
    pub q: usize,
    /// Orbits on ordered pairs.
    pub s: usize,
    pub point_orbits: Vec<Vec<usize>>,
    pub pair_orbits: Vec<Vec<(usize, usize)>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so classes come out ordered
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn g(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::close(&gens.iter().map(|s| p(n, s)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(g(2, &["(1 2)"]).order(), 2);
        let s3 = g(3, &["(1 2 3)", "(1 2)"]);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3, PermGroup::symmetric(3));
        let klein = g(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(klein.order(), 4);
        assert!(klein
            .elements()
            .iter()
            .filter(|e| !e.is_identity())
            .all(|e| e.order() == 2));
        assert!(klein.is_valid() && s3.is_valid());
        assert!(matches!(
            PermGroup::close(&[p(2, "(1 2)"), p(3, "(1 2)")]),
            Err(Error::MixedDegrees(2, 3))
        ));
    }

    #[test]
    fn closure_is_idempotent_and_order_independent() {
        let a = g(5, &["(1 2 3)", "(3 4)", "(4 5)"]);
        let b = g(5, &["(4 5)", "(3 4)", "(1 2 3)"]);
        assert_eq!(a.elements(), b.elements());
        assert_eq!(a.order(), 120);
        let again = PermGroup::close(a.elements()).unwrap();
        assert_eq!(again.elements(), a.elements());
    }

    #[test]
    fn support_examples() {
        assert_eq!(PermGroup::trivial(5).support(), (vec![], 0));
        assert_eq!(g(4, &["(1 2)"]).support(), (vec![0, 1], 2));
        assert_eq!(
            g(6, &["(1 2)", "(4 5 6)"]).support(),
            (vec![0, 1, 3, 4, 5], 5)
        );
    }

    #[test]
    fn orbit_stats_examples() {
        let st = g(4, &["(1 2)(3 4)"]).orbit_stats();
        assert_eq!((st.p, st.q, st.s), (4, 2, 8));
        let st = g(5, &["(1 2)", "(3 4 5)"]).orbit_stats();
        assert_eq!((st.p, st.q, st.s), (5, 2, 7));
        let st = g(3, &["(1 2 3)"]).orbit_stats();
        assert_eq!((st.p, st.q, st.s), (3, 1, 3));
        assert_eq!(st.pair_orbits.iter().map(Vec::len).sum::<usize>(), 9);
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(g(3, &["(1 2)"]).fixed_points(), vec![2]);
        assert!(!PermGroup::symmetric(3).has_fixed_point());
        assert_eq!(PermGroup::trivial(2).fixed_points(), vec![0, 1]);
    }

    #[test]
    fn restriction_reindexes() {
        let h = g(5, &["(2 4)"]);
        let r = h.restrict(&[1, 3]).unwrap();
        assert_eq!(r.degree(), 2);
        assert_eq!(r.order(), 2);
        assert!(h.restrict(&[1, 2]).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let h = g(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let spec = h.to_spec();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            json,
            r#"{"degree":4,"generators":["(1 2)(3 4)","(1 3)(2 4)"]}"#
        );
        assert_eq!(
            PermGroup::from_spec(&serde_json::from_str(&json).unwrap()).unwrap(),
            h
        );
    }
}
