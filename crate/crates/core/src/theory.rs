//! Closed-form objects about typical automorphism groups and exact checks of
//! the finite group-theoretic statements behind them.

use serde::Serialize;

use crate::automorphism::{automorphism_group, profile_of_group};
use crate::classify::{classify, GroupClass};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::structure::Structure;
use crate::subgroups::subgroups_of_sym;
use crate::vocab::Vocabulary;

/// Parameters of the β polynomial: `k` symbols of maximal arity `r` and
/// `l` symbols of arity `r - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BetaParams {
    pub k: i64,
    pub l: i64,
    pub r: i64,
}

impl BetaParams {
    pub fn new(k: i64, l: i64, r: i64) -> Result<Self> {
        if k < 1 || l < 0 || r < 2 {
            return Err(Error::Precondition(format!(
                "need k >= 1, l >= 0, r >= 2 (got k={k}, l={l}, r={r})"
            )));
        }
        Ok(BetaParams { k, l, r })
    }

    pub fn of_vocabulary(v: &Vocabulary) -> Self {
        BetaParams {
            k: v.top_count() as i64,
            l: v.sub_top_count() as i64,
            r: v.max_arity() as i64,
        }
    }

    fn r_choose_2(&self) -> i64 {
        self.r * (self.r - 1) / 2
    }
}

/// `k C(r,2) x² − k r (r−1) x y − l (r−1) x + l (r−1) y + k C(r,2) z`.
pub fn beta(x: i64, y: i64, z: i64, p: BetaParams) -> i64 {
    let c = p.r_choose_2();
    p.k * c * x * x - p.k * p.r * (p.r - 1) * x * y - p.l * (p.r - 1) * x
        + p.l * (p.r - 1) * y
        + p.k * c * z
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BetaGap {
    pub i: i64,
    pub gap: i64,
    pub expected: i64,
    pub holds: bool,
}

/// `β(2i+2, i+1, 2(i+1)²) − β(2i+1, i, 2i²−2i+3)` against `2k C(r,2)(2i−1)`.
pub fn beta_gap(i: i64, p: BetaParams) -> Result<BetaGap> {
    if i < 1 || p.r < 3 {
        return Err(Error::Precondition(format!(
            "need i >= 1 and r >= 3 (got i={i}, r={})",
            p.r
        )));
    }
    let even = beta(2 * i + 2, i + 1, 2 * (i + 1) * (i + 1), p);
    let odd = beta(2 * i + 1, i, 2 * i * i - 2 * i + 3, p);
    let expected = 2 * p.k * p.r_choose_2() * (2 * i - 1);
    Ok(BetaGap {
        i,
        gap: even - odd,
        expected,
        holds: even - odd == expected,
    })
}

/// Which groups are typical for structures with at least `m` moved points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub m: usize,
    pub r: usize,
    /// `m` rounded up to even: the typical value of `spt*`.
    pub m_prime: usize,
    pub classes: Vec<GroupClass>,
}

pub fn predict(m: usize, r: usize) -> Result<Prediction> {
    if m < 2 {
        return Err(Error::Precondition(format!(
            "m must be at least 2 (got {m})"
        )));
    }
    if r < 2 {
        return Err(Error::Precondition(format!(
            "r must be at least 2 (got {r})"
        )));
    }
    let m_prime = if m.is_multiple_of(2) { m } else { m + 1 };
    let classes = if r == 2 {
        (1..=m_prime / 2)
            .map(|i| GroupClass::Z2Power(i as u32))
            .collect()
    } else {
        vec![GroupClass::Z2Power(1)]
    };
    Ok(Prediction {
        m,
        r,
        m_prime,
        classes,
    })
}

/// An embedding of `A` onto `Spt*(M)`, as the list of images of `A`'s points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub images: Vec<usize>,
}

/// Shared setup for membership and fullness: validated inputs plus the
/// restricted automorphism group of `M`.
struct SupportContext {
    spt_star_set: Vec<usize>,
    support: Option<Structure>,
    restricted: PermGroup,
}

fn check_pair(a: &Structure, h: &PermGroup) -> Result<PermGroup> {
    let aut_a = automorphism_group(a)?;
    if aut_a.has_fixed_point() {
        return Err(Error::Precondition("Aut(A) has a fixed point".into()));
    }
    if h.degree() != a.n() {
        return Err(Error::Precondition(format!(
            "H has degree {} but A has {} points",
            h.degree(),
            a.n()
        )));
    }
    if !h.is_subgroup_of(&aut_a) {
        return Err(Error::Precondition("H is not a subgroup of Aut(A)".into()));
    }
    if h.has_fixed_point() {
        return Err(Error::Precondition("H has a fixed point".into()));
    }
    Ok(aut_a)
}

fn support_context(a: &Structure, h: &PermGroup, m: &Structure) -> Result<SupportContext> {
    check_pair(a, h)?;
    if a.vocab().arities() != m.vocab().arities() {
        return Err(Error::Precondition(
            "A and M have different vocabularies".into(),
        ));
    }
    let prof = profile_of_group(automorphism_group(m)?);
    let support = if prof.spt_star_set.is_empty() {
        None
    } else {
        Some(m.induced_substructure(&prof.spt_star_set)?)
    };
    Ok(SupportContext {
        spt_star_set: prof.spt_star_set,
        support,
        restricted: prof.restricted,
    })
}

/// Isomorphisms `f: A -> M|Spt*(M)` with `f H f⁻¹ ≤ Aut(M)|Spt*(M)`, in
/// re-indexed coordinates.
fn qualifying_maps(a: &Structure, h: &PermGroup, ctx: &SupportContext) -> Vec<Permutation> {
    let Some(support) = &ctx.support else {
        return vec![];
    };
    if support.n() != a.n() {
        return vec![];
    }
    a.find_isomorphisms(support)
        .into_iter()
        .filter(|f| {
            h.generators()
                .iter()
                .all(|s| ctx.restricted.contains(&s.conjugate_by(f)))
        })
        .collect()
}

/// Whether `M ∈ S_n(A, H)`, with a witness embedding when it is.
pub fn membership(a: &Structure, h: &PermGroup, m: &Structure) -> Result<Option<Witness>> {
    let ctx = support_context(a, h, m)?;
    Ok(qualifying_maps(a, h, &ctx)
        .into_iter()
        .next()
        .map(|f| Witness {
            images: (0..a.n()).map(|i| ctx.spt_star_set[f.apply(i)]).collect(),
        }))
}

/// Whether `H` is the full automorphism group of `M ∈ S_n(A, H)`: every
/// qualifying isomorphism conjugates `H` onto all of `Aut(M)|Spt*(M)`.
pub fn is_full(a: &Structure, h: &PermGroup, m: &Structure) -> Result<bool> {
    let ctx = support_context(a, h, m)?;
    let maps = qualifying_maps(a, h, &ctx);
    if maps.is_empty() {
        return Err(Error::NotMember);
    }
    // H_f ≤ restricted and |H_f| = |H| for every qualifying f
    Ok(h.order() == ctx.restricted.order())
}

/// One named check of the lemma suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub scope: String,
    pub pass: bool,
    pub inspected: usize,
    pub counterexample: Option<String>,
}

fn describe(h: &PermGroup) -> String {
    let gens: Vec<String> = h.generators().iter().map(|g| g.to_string()).collect();
    format!(
        "degree {} <{}> ({})",
        h.degree(),
        gens.join(", "),
        classify(h)
    )
}

/// Fixed-point-free groups on three points are `Z3` or `Sym3`.
pub fn check_three_point_groups() -> Result<CheckResult> {
    let groups: Vec<PermGroup> = subgroups_of_sym(3)?
        .into_iter()
        .filter(|g| !g.has_fixed_point())
        .collect();
    let bad = groups
        .iter()
        .find(|g| !matches!(classify(g), GroupClass::Z3 | GroupClass::Sym3));
    Ok(CheckResult {
        check: "three-point-fixed-point-free".into(),
        scope: "subgroups of Sym3 without fixed points".into(),
        pass: bad.is_none(),
        inspected: groups.len(),
        counterexample: bad.map(describe),
    })
}

/// On `2i` points, all point and pair orbits of size 2 forces `H ≅ Z2` and
/// `s(H) = 2i²`.
pub fn check_doubleton_orbits(max_degree: usize) -> Result<CheckResult> {
    let mut inspected = 0;
    let mut counterexample = None;
    let mut degrees = Vec::new();
    for d in (2..=max_degree.min(crate::subgroups::MAX_SUBGROUP_DEGREE)).step_by(2) {
        degrees.push(format!("Sym{d}"));
        let i = d / 2;
        for h in subgroups_of_sym(d)? {
            let st = h.orbit_stats();
            let all_two = st.point_orbits.iter().all(|o| o.len() == 2)
                && st.pair_orbits.iter().all(|o| o.len() == 2);
            if !all_two {
                continue;
            }
            inspected += 1;
            if classify(&h) != GroupClass::Z2Power(1) || st.s != 2 * i * i {
                counterexample.get_or_insert_with(|| describe(&h));
            }
        }
    }
    Ok(CheckResult {
        check: "doubleton-orbits".into(),
        scope: format!("subgroups of {}", degrees.join(", ")),
        pass: counterexample.is_none() && inspected > 0,
        inspected,
        counterexample,
    })
}

/// Orbit sizes of a group on its points, sorted.
fn orbit_sizes(h: &PermGroup) -> Vec<usize> {
    let mut v: Vec<usize> = h.point_orbits().iter().map(Vec::len).collect();
    v.sort_unstable();
    v
}

/// On `2i+1 = 5` points, among fixed-point-free groups with one orbit of
/// size 3 and the rest of size 2, the largest `s` is `2i² − 2i + 3` and is
/// attained only by `Z2 x Z3`.
pub fn check_tripleton_maximizers() -> Result<CheckResult> {
    let i = 2usize;
    let degree = 2 * i + 1;
    let mut shape = vec![2; i - 1];
    shape.push(3);
    let candidates: Vec<PermGroup> = subgroups_of_sym(degree)?
        .into_iter()
        .filter(|h| !h.has_fixed_point() && orbit_sizes(h) == shape)
        .collect();
    let best = candidates
        .iter()
        .map(|h| h.orbit_stats().s)
        .max()
        .unwrap_or(0);
    let maximizers: Vec<&PermGroup> = candidates
        .iter()
        .filter(|h| h.orbit_stats().s == best)
        .collect();
    let expected = 2 * i * i - 2 * i + 3;
    let bad = maximizers
        .iter()
        .find(|h| classify(h) != GroupClass::Z2PowerTimesZ3(1))
        .map(|h| describe(h));
    let counterexample = if best != expected {
        Some(format!("max s = {best}, expected {expected}"))
    } else {
        bad
    };
    Ok(CheckResult {
        check: "tripleton-maximizers".into(),
        scope: format!(
            "subgroups of Sym{degree} with orbit sizes {shape:?}: {} groups, {} maximizers",
            candidates.len(),
            maximizers.len()
        ),
        pass: counterexample.is_none() && !maximizers.is_empty(),
        inspected: candidates.len(),
        counterexample,
    })
}

/// The β gap identity over `i ∈ [1,20], k ∈ [1,4], l ∈ [0,4], r ∈ [3,6]`.
pub fn check_beta_gap_sweep() -> CheckResult {
    let mut inspected = 0;
    let mut counterexample = None;
    for i in 1..=20 {
        for k in 1..=4 {
            for l in 0..=4 {
                for r in 3..=6 {
                    inspected += 1;
                    let p = BetaParams { k, l, r };
                    let gap = beta_gap(i, p).expect("parameters in range");
                    if !gap.holds {
                        counterexample.get_or_insert_with(|| {
                            format!(
                                "i={i} k={k} l={l} r={r}: gap {} != {}",
                                gap.gap, gap.expected
                            )
                        });
                    }
                }
            }
        }
    }
    CheckResult {
        check: "beta-gap".into(),
        scope: "i in [1,20], k in [1,4], l in [0,4], r in [3,6]".into(),
        pass: counterexample.is_none(),
        inspected,
        counterexample,
    }
}

/// Runs the checks whose degree fits under `max_degree`.
pub fn verify_lemma_suite(max_degree: usize) -> Result<Vec<CheckResult>> {
    if max_degree > crate::subgroups::MAX_SUBGROUP_DEGREE {
        return Err(Error::DegreeGuard {
            what: "the lemma suite",
            degree: max_degree,
            limit: crate::subgroups::MAX_SUBGROUP_DEGREE,
        });
    }
    let mut out = Vec::new();
    if max_degree >= 3 {
        out.push(check_three_point_groups()?);
    }
    if max_degree >= 2 {
        out.push(check_doubleton_orbits(max_degree)?);
    }
    if max_degree >= 5 {
        out.push(check_tripleton_maximizers()?);
    }
    out.push(check_beta_gap_sweep());
    Ok(out)
}

/// Largest number of point orbits of a fixed-point-free subgroup of
/// `Sym_degree`, with the sorted orbit-size lists attaining it.
pub fn max_orbit_count_without_fixed_points(degree: usize) -> Result<(usize, Vec<Vec<usize>>)> {
    let mut best = 0;
    let mut shapes: Vec<Vec<usize>> = Vec::new();
    for h in subgroups_of_sym(degree)?
        .into_iter()
        .filter(|h| !h.has_fixed_point())
    {
        let sizes = orbit_sizes(&h);
        match sizes.len().cmp(&best) {
            std::cmp::Ordering::Greater => {
                best = sizes.len();
                shapes = vec![sizes];
            }
            std::cmp::Ordering::Equal if !shapes.contains(&sizes) => shapes.push(sizes),
            _ => {}
        }
    }
    shapes.sort();
    Ok((best, shapes))
}

/// The pair `(g(A), g H g⁻¹)`.
pub fn conjugate_pair(a: &Structure, h: &PermGroup, g: &Permutation) -> (Structure, PermGroup) {
    (a.relabel(g), h.conjugate_by(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    /// Term-by-term expansion kept separate from `beta`.
    fn beta_reference(x: i64, y: i64, z: i64, k: i64, l: i64, r: i64) -> i64 {
        let binom = (1..=r).product::<i64>() / (2 * (1..=r - 2).product::<i64>());
        let t1 = k * binom * x.pow(2);
        let t2 = -(k * r * (r - 1) * x * y);
        let t3 = -(l * (r - 1) * x);
        let t4 = l * (r - 1) * y;
        let t5 = k * binom * z;
        t1 + t2 + t3 + t4 + t5
    }

    #[test]
    fn beta_examples() {
        let p = BetaParams::new(1, 1, 3).unwrap();
        assert_eq!(beta(3, 1, 3, p), 14);
        assert_eq!(beta(4, 2, 8, p), 20);
        assert_eq!(beta(0, 0, 0, p), 0);
        for (x, y, z) in [(5, 2, 13), (-3, 7, 1), (10, 5, 50)] {
            for (k, l, r) in [(1, 0, 2), (2, 3, 4), (4, 4, 6)] {
                assert_eq!(
                    beta(x, y, z, BetaParams::new(k, l, r).unwrap()),
                    beta_reference(x, y, z, k, l, r)
                );
            }
        }
    }

    #[test]
    fn beta_gap_examples() {
        let g = beta_gap(1, BetaParams::new(1, 1, 3).unwrap()).unwrap();
        assert_eq!((g.gap, g.holds), (6, true));
        let g = beta_gap(2, BetaParams::new(1, 0, 3).unwrap()).unwrap();
        assert_eq!((g.gap, g.holds), (18, true));
        let g = beta_gap(1, BetaParams::new(2, 3, 4).unwrap()).unwrap();
        assert_eq!((g.gap, g.holds), (24, true));
        assert!(beta_gap(0, BetaParams::new(1, 1, 3).unwrap()).is_err());
        assert!(beta_gap(1, BetaParams::new(1, 1, 2).unwrap()).is_err());
    }

    #[test]
    fn predictions() {
        let p = predict(3, 2).unwrap();
        assert_eq!(p.m_prime, 4);
        assert_eq!(
            p.classes,
            vec![GroupClass::Z2Power(1), GroupClass::Z2Power(2)]
        );
        assert_eq!(predict(2, 3).unwrap().classes, vec![GroupClass::Z2Power(1)]);
        assert_eq!(predict(2, 2).unwrap().m_prime, 2);
        assert_eq!(predict(7, 4).unwrap().classes, vec![GroupClass::Z2Power(1)]);
        assert!(predict(1, 2).is_err());
        for m in 2..50 {
            let p = predict(m, 2).unwrap();
            assert!(p.m_prime.is_multiple_of(2) && p.m_prime >= m && p.m_prime <= m + 1);
        }
    }

    fn binary() -> Vocabulary {
        Vocabulary::with_arities(&[2]).unwrap()
    }

    fn st(n: usize, tuples: &[&[usize]]) -> Structure {
        Structure::from_tuples(&binary(), n, &[tuples]).unwrap()
    }

    fn sym2() -> PermGroup {
        PermGroup::symmetric(2)
    }

    #[test]
    fn membership_examples() {
        let a = st(2, &[&[0, 1], &[1, 0]]);
        let yes = st(4, &[&[0, 1], &[1, 0], &[2, 3]]);
        let w = membership(&a, &sym2(), &yes).unwrap().expect("member");
        assert_eq!(w.images, vec![0, 1]);
        assert!(is_full(&a, &sym2(), &yes).unwrap());

        let too_big = st(4, &[&[0, 1], &[1, 0]]);
        assert_eq!(membership(&a, &sym2(), &too_big).unwrap(), None);
        let rigid = st(4, &[&[0, 1]]);
        assert_eq!(membership(&a, &sym2(), &rigid).unwrap(), None);
        assert!(matches!(
            is_full(&a, &sym2(), &rigid),
            Err(Error::NotMember)
        ));
    }

    #[test]
    fn fullness_examples() {
        let e2 = st(2, &[]);
        assert!(is_full(&e2, &sym2(), &e2).unwrap());
        let e3 = st(3, &[]);
        let a3 = PermGroup::close(&[Permutation::parse_cycles(3, "(1 2 3)").unwrap()]).unwrap();
        assert!(membership(&e3, &a3, &e3).unwrap().is_some());
        assert!(!is_full(&e3, &a3, &e3).unwrap());
    }

    #[test]
    fn precondition_violations_are_errors() {
        let rigid_a = st(2, &[&[0, 1]]);
        let m = st(2, &[]);
        assert!(matches!(
            membership(&rigid_a, &PermGroup::trivial(2), &m),
            Err(Error::Precondition(_))
        ));
        let a = st(2, &[]);
        assert!(matches!(
            membership(&a, &PermGroup::trivial(2), &m),
            Err(Error::Precondition(_))
        ));
        let a = st(2, &[&[0, 1], &[1, 0]]);
        let foreign = PermGroup::symmetric(3);
        assert!(matches!(
            membership(&a, &foreign, &m),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn membership_is_invariant_under_relabeling() {
        let a = st(3, &[&[0, 1], &[1, 2], &[2, 0]]);
        let h = PermGroup::close(&[Permutation::parse_cycles(3, "(1 2 3)").unwrap()]).unwrap();
        let m = st(5, &[&[1, 2], &[2, 4], &[4, 1], &[0, 3], &[3, 3]]);
        let base = membership(&a, &h, &m).unwrap().is_some();
        assert!(base);
        for sigma in all_permutations(5) {
            assert_eq!(
                membership(&a, &h, &m.relabel(&sigma)).unwrap().is_some(),
                base
            );
        }
        for g in all_permutations(3) {
            let (a2, h2) = conjugate_pair(&a, &h, &g);
            assert_eq!(membership(&a2, &h2, &m).unwrap().is_some(), base);
        }
    }

    #[test]
    fn suite_small_degrees() {
        let r = check_three_point_groups().unwrap();
        assert!(r.pass);
        assert_eq!(r.inspected, 2);
        let r = check_tripleton_maximizers().unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.inspected >= 1);
        let r = check_beta_gap_sweep();
        assert!(r.pass);
        assert_eq!(r.inspected, 20 * 4 * 5 * 4);
        let r = check_doubleton_orbits(4).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn orbit_count_bounds() {
        for d in [2usize, 4, 6] {
            let (best, shapes) = max_orbit_count_without_fixed_points(d).unwrap();
            assert_eq!(best, d / 2);
            assert_eq!(shapes, vec![vec![2; d / 2]]);
        }
        for d in [3usize, 5] {
            let i = d / 2;
            let (best, shapes) = max_orbit_count_without_fixed_points(d).unwrap();
            assert_eq!(best, i);
            let mut expected = vec![2; i - 1];
            expected.push(3);
            assert_eq!(shapes, vec![expected]);
        }
    }
}
