//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every criterion is checked against an oracle written here from scratch
//! (brute-force permutation scans, direct orbit computations, hand-coded
//! Burnside sums) rather than against the library's own internals.

use std::collections::{BTreeSet, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use rigidity::census::{ratio_table, Predicate};
use rigidity::subgroups::subgroups_of_sym;
use rigidity::theory::{self, BetaParams};
use rigidity::{
    canonical_form, classify, unlabelled_count, Census, CensusKey, GroupClass, Mode, PermGroup,
    Structure, Vocabulary,
};

// ---- oracle toolkit: permutations as plain vectors ----

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

fn elements(h: &PermGroup) -> Vec<Vec<usize>> {
    h.elements()
        .iter()
        .map(|g| g.images().iter().map(|&x| x as usize).collect())
        .collect()
}

fn point_orbits(els: &[Vec<usize>], n: usize) -> Vec<BTreeSet<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let orbit: BTreeSet<usize> = els.iter().map(|g| g[x]).collect();
        for &y in &orbit {
            seen[y] = true;
        }
        out.push(orbit);
    }
    out
}

fn pair_orbits(els: &[Vec<usize>], n: usize) -> Vec<BTreeSet<(usize, usize)>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if seen.contains(&(a, b)) {
                continue;
            }
            let orbit: BTreeSet<(usize, usize)> = els.iter().map(|g| (g[a], g[b])).collect();
            seen.extend(orbit.iter().copied());
            out.push(orbit);
        }
    }
    out
}

fn element_order(g: &[usize]) -> usize {
    let mut p = g.to_vec();
    let mut k = 1;
    while !is_identity(&p) {
        p = compose(g, &p);
        k += 1;
    }
    k
}

fn abelian(els: &[Vec<usize>]) -> bool {
    els.iter()
        .all(|a| els.iter().all(|b| compose(a, b) == compose(b, a)))
}

// ---- oracle toolkit: structures as bit codes over n^arity tuples ----

fn tuple_index(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

fn tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    (0..n.pow(arity as u32))
        .map(|mut i| {
            let mut t = vec![0; arity];
            for j in (0..arity).rev() {
                t[j] = i % n;
                i /= n;
            }
            t
        })
        .collect()
}

/// For each permutation, the image of every tuple index.
fn tuple_tables(n: usize, arity: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let ts = tuples(n, arity);
    perms(n)
        .into_iter()
        .map(|p| {
            let table = ts
                .iter()
                .map(|t| tuple_index(&t.iter().map(|&x| p[x]).collect::<Vec<_>>(), n))
                .collect();
            (p, table)
        })
        .collect()
}

fn relabel_code(code: u64, table: &[usize]) -> u64 {
    let mut out = 0;
    for (i, &j) in table.iter().enumerate() {
        if code >> i & 1 == 1 {
            out |= 1 << j;
        }
    }
    out
}

fn brute_aut(code: u64, tables: &[(Vec<usize>, Vec<usize>)]) -> Vec<Vec<usize>> {
    tables
        .iter()
        .filter(|(_, t)| relabel_code(code, t) == code)
        .map(|(p, _)| p.clone())
        .collect()
}

fn moved_union(els: &[Vec<usize>]) -> BTreeSet<usize> {
    els.iter()
        .flat_map(|g| {
            g.iter()
                .enumerate()
                .filter(|(i, &x)| *i != x)
                .map(|(i, _)| i)
        })
        .collect()
}

/// Number of cycles of `p` acting on tuples of the given arity.
fn tuple_cycles(p: &[usize], n: usize, arity: usize) -> u32 {
    let table: Vec<usize> = tuples(n, arity)
        .iter()
        .map(|t| tuple_index(&t.iter().map(|&x| p[x]).collect::<Vec<_>>(), n))
        .collect();
    let mut seen = vec![false; table.len()];
    let mut cycles = 0;
    for s in 0..table.len() {
        if !seen[s] {
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = table[x];
            }
        }
    }
    cycles
}

fn burnside_oracle(n: usize, arity: usize) -> u128 {
    let ps = perms(n);
    let sum: u128 = ps.iter().map(|p| 1u128 << tuple_cycles(p, n, arity)).sum();
    sum / ps.len() as u128
}

// ---- harness ----

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn binary() -> Vocabulary {
    Vocabulary::with_arities(&[2]).unwrap()
}

fn exhaustive(v: &Vocabulary, n: usize, threads: usize) -> rigidity::CensusReport {
    Census::new(v, n, Mode::Exhaustive)
        .threads(threads)
        .run()
        .unwrap()
}

fn threads() -> usize {
    std::thread::available_parallelism().map_or(1, |t| t.get())
}

fn criterion_1() -> Outcome {
    // oracle: every subset of Sym3 closed under composition
    let all = perms(3);
    let mut groups = Vec::new();
    for mask in 1u32..(1 << all.len()) {
        let set: Vec<&Vec<usize>> = (0..all.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &all[i])
            .collect();
        let closed = set
            .iter()
            .all(|a| set.iter().all(|b| set.contains(&&compose(a, b))));
        if closed {
            groups.push(set);
        }
    }
    let fpf: Vec<usize> = groups
        .iter()
        .filter(|g| (0..3).all(|x| g.iter().any(|p| p[x] != x)))
        .map(|g| g.len())
        .collect();
    let mut fpf_sorted = fpf.clone();
    fpf_sorted.sort();
    let check = theory::check_three_point_groups().unwrap();
    let lib: Vec<GroupClass> = subgroups_of_sym(3)
        .unwrap()
        .iter()
        .filter(|h| !h.has_fixed_point())
        .map(classify)
        .collect();
    let pass = groups.len() == 6
        && fpf_sorted == vec![3, 6]
        && check.pass
        && check.inspected == 2
        && lib.len() == 2
        && lib.contains(&GroupClass::Z3)
        && lib.contains(&GroupClass::Sym3);
    ok(
        pass,
        format!(
            "oracle: {} subgroups, fixed-point-free orders {fpf_sorted:?}; library: {lib:?}",
            groups.len()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut inspected = 0;
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    for d in [2usize, 4, 6] {
        let subs = subgroups_of_sym(d).unwrap();
        counts.push(subs.len());
        for h in &subs {
            let els = elements(h);
            let all_two = point_orbits(&els, d).iter().all(|o| o.len() == 2)
                && pair_orbits(&els, d).iter().all(|o| o.len() == 2);
            if !all_two {
                continue;
            }
            inspected += 1;
            let i = d / 2;
            let s = pair_orbits(&els, d).len();
            if els.len() != 2 || s != 2 * i * i || classify(h) != GroupClass::Z2Power(1) {
                bad.push(format!("{h:?}"));
            }
        }
    }
    let lib = theory::check_doubleton_orbits(6).unwrap();
    let pass =
        counts == vec![2, 30, 1455] && bad.is_empty() && lib.pass && lib.inspected == inspected;
    ok(
        pass,
        format!(
            "subgroup counts {counts:?}; {inspected} groups with all orbits of size 2, all order 2 with s=2i^2; bad {bad:?}"
        ),
    )
}

fn criterion_3() -> Outcome {
    let subs = subgroups_of_sym(5).unwrap();
    let mut candidates = Vec::new();
    for h in &subs {
        let els = elements(h);
        let mut sizes: Vec<usize> = point_orbits(&els, 5).iter().map(|o| o.len()).collect();
        sizes.sort();
        if sizes == vec![2, 3] {
            candidates.push((h, pair_orbits(&els, 5).len(), els));
        }
    }
    let best = candidates.iter().map(|c| c.1).max().unwrap_or(0);
    let maximizers: Vec<_> = candidates.iter().filter(|c| c.1 == best).collect();
    // Z2 x Z3 is the cyclic group of order 6
    let all_z6 = maximizers.iter().all(|(_, _, els)| {
        els.len() == 6 && abelian(els) && els.iter().any(|g| element_order(g) == 6)
    });
    let lib_classes = maximizers
        .iter()
        .all(|(h, _, _)| classify(h) == GroupClass::Z2PowerTimesZ3(1));
    let lib = theory::check_tripleton_maximizers().unwrap();
    ok(
        best == 7 && !maximizers.is_empty() && all_z6 && lib_classes && lib.pass,
        format!(
            "{} fixed-point-free groups with orbit sizes 2+3, max s = {best}, {} maximizers, all cyclic of order 6: {all_z6}",
            candidates.len(),
            maximizers.len()
        ),
    )
}

fn criterion_4() -> Outcome {
    fn c2(r: i64) -> i64 {
        r * (r - 1) / 2
    }
    fn beta(x: i64, y: i64, z: i64, k: i64, l: i64, r: i64) -> i64 {
        k * c2(r) * x * x - k * r * (r - 1) * x * y - l * (r - 1) * x
            + l * (r - 1) * y
            + k * c2(r) * z
    }
    let mut checked = 0;
    let mut bad = 0;
    for i in 1..=20i64 {
        for k in 1..=4 {
            for l in 0..=4 {
                for r in 3..=6 {
                    checked += 1;
                    let gap = beta(2 * i + 2, i + 1, 2 * (i + 1) * (i + 1), k, l, r)
                        - beta(2 * i + 1, i, 2 * i * i - 2 * i + 3, k, l, r);
                    let lib = theory::beta_gap(i, BetaParams::new(k, l, r).unwrap()).unwrap();
                    if gap != 2 * k * c2(r) * (2 * i - 1) || lib.gap != gap || !lib.holds {
                        bad += 1;
                    }
                }
            }
        }
    }
    let sweep = theory::check_beta_gap_sweep();
    ok(
        bad == 0 && sweep.pass && sweep.inspected == checked,
        format!("{checked} parameter tuples, {bad} mismatches"),
    )
}

/// Brute-force census of binary relations: (rigid, spt*=2, Z3, Sym3, unlabelled).
fn census_oracle(n: usize) -> (u64, u64, u64, u64, u64, u64) {
    let tables = tuple_tables(n, 2);
    let (mut rigid, mut two, mut z3, mut sym3) = (0, 0, 0, 0);
    let mut canon = HashSet::new();
    let total = 1u64 << (n * n);
    for code in 0..total {
        let aut = brute_aut(code, &tables);
        let star = moved_union(&aut).len();
        match (aut.len(), star) {
            (1, _) => rigid += 1,
            (_, 2) => two += 1,
            (3, 3) => z3 += 1,
            (6, 3) => sym3 += 1,
            _ => {}
        }
        canon.insert(
            tables
                .iter()
                .map(|(_, t)| relabel_code(code, t))
                .min()
                .unwrap(),
        );
    }
    (total, rigid, two, z3, sym3, canon.len() as u64)
}

fn criterion_5() -> (Outcome, Duration) {
    let v = binary();
    let started = Instant::now();
    let r2 = exhaustive(&v, 2, 1);
    let r3 = exhaustive(&v, 3, 1);
    let elapsed = started.elapsed();
    let o2 = census_oracle(2);
    let o3 = census_oracle(3);
    let key2 = CensusKey {
        spt: 2,
        spt_star: 2,
        class: GroupClass::Z2Power(1),
        q: 1,
        s: 2,
    };
    let lib2 = (
        r2.total,
        r2.rigid(),
        r2.count_where(|k| k.spt_star == 2),
        r2.labelled.get(&key2).copied().unwrap_or(0),
        r2.unlabelled_total().unwrap(),
    );
    let z3 = r3.count_where(|k| k.class == GroupClass::Z3);
    let sym3 = r3.count_where(|k| k.class == GroupClass::Sym3);
    let lib3 = (
        r3.rigid(),
        r3.count_where(|k| k.spt_star == 2),
        r3.count_where(|k| k.spt_star == 3),
        z3,
        sym3,
        r3.unlabelled_total().unwrap(),
    );
    let pass = lib2 == (16, 12, 4, 4, 10)
        && (o2.0, o2.1, o2.2, o2.5) == (16, 12, 4, 10)
        && lib3 == (420, 84, 8, 4, 4, 104)
        && (o3.1, o3.2, o3.3, o3.4, o3.5) == (420, 84, 4, 4, 104)
        && elapsed < Duration::from_secs(1);
    (
        ok(
            pass,
            format!(
                "n=2 {lib2:?}, n=3 {lib3:?}; brute force agrees: n=2 {:?}, n=3 {:?}",
                (o2.0, o2.1, o2.2, o2.5),
                (o3.1, o3.2, o3.3, o3.4, o3.5)
            ),
        ),
        elapsed,
    )
}

fn law_violations(r: &rigidity::CensusReport) -> Vec<CensusKey> {
    r.labelled
        .keys()
        .filter(|k| {
            k.spt_star == 1
                || k.spt > k.spt_star
                || (k.spt_star == 2 && k.class != GroupClass::Z2Power(1))
                || (k.spt_star == 3 && !matches!(k.class, GroupClass::Z3 | GroupClass::Sym3))
                || ((k.spt == 0 && k.spt_star == 0) != (k.class == GroupClass::Trivial))
        })
        .copied()
        .collect()
}

fn criterion_6() -> (Outcome, Duration) {
    let started = Instant::now();
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for n in 1..=4 {
        let r = exhaustive(&binary(), n, threads());
        bad.extend(law_violations(&r));
        notes.push(format!("[2] n={n}: {} keys", r.labelled.len()));
    }
    let ternary = Vocabulary::with_arities(&[3]).unwrap();
    let r = exhaustive(&ternary, 3, threads());
    let elapsed = started.elapsed();
    bad.extend(law_violations(&r));
    let total_ok = r.total == 1 << 27;
    let burnside_ok = r.unlabelled_total().map(u128::from) == Some(burnside_oracle(3, 3));
    notes.push(format!(
        "[3] n=3: {} structures, {} keys",
        r.total,
        r.labelled.len()
    ));

    // Every automorphism group at n <= 4 is a subgroup of Sym_n; restricting
    // any of them to its non-singleton orbits gives an isomorphic group.
    let mut restriction_ok = true;
    for d in 1..=4 {
        for h in subgroups_of_sym(d).unwrap() {
            let (support, _) = h.support();
            let restricted = if support.is_empty() {
                PermGroup::trivial(0)
            } else {
                h.restrict(&support).unwrap()
            };
            restriction_ok &= restricted.order() == h.order()
                && (h.is_trivial() || rigidity::are_isomorphic(&h, &restricted));
        }
    }
    // and directly, structure by structure, on three points
    let tables = tuple_tables(3, 2);
    for code in 0..512u64 {
        let m =
            Structure::decode(&binary(), 3, &rigidity::StructureEncoding::from_u64(code)).unwrap();
        let p = rigidity::profile(&m).unwrap();
        let aut = brute_aut(code, &tables);
        restriction_ok &= p.group.order() == aut.len() && p.restricted.order() == aut.len();
    }
    let pass = bad.is_empty()
        && total_ok
        && burnside_ok
        && restriction_ok
        && elapsed < Duration::from_secs(15 * 60);
    (
        ok(
            pass,
            format!(
                "{}; violations {bad:?}; arity-3 unlabelled matches Burnside oracle: {burnside_ok}; restriction isomorphic to full group: {restriction_ok}",
                notes.join(", ")
            ),
        ),
        elapsed,
    )
}

fn criterion_7() -> (Outcome, Duration) {
    let v = binary();
    let r3 = exhaustive(&v, 3, threads());
    let started = Instant::now();
    let r5 = exhaustive(&v, 5, threads());
    let elapsed = started.elapsed();
    let reports = [r3, r5];
    let p = |s: &str| s.parse::<Predicate>().unwrap();
    let odd = ratio_table(&reports, &p("spt*=3"), &p("spt*=2")).unwrap();
    let z2 = ratio_table(&reports, &p("spt>=2 & class=Z2^1"), &p("spt>=2")).unwrap();
    let f = |rows: &[rigidity::census::RatioRow], i: usize| rows[i].fraction.unwrap();
    let unl_ok = reports[1].unlabelled_total().map(u128::from) == Some(burnside_oracle(5, 2));
    let pass = odd[0].exact == "8/84"
        && f(&odd, 1) < f(&odd, 0)
        && f(&z2, 1) > f(&z2, 0)
        && reports[1].total == 1 << 25
        && unl_ok
        && elapsed < Duration::from_secs(10 * 60);
    (
        ok(
            pass,
            format!(
                "spt*=3/spt*=2: n=3 {} ({:.4}) > n=5 {} ({:.4}); Z2 within spt>=2: n=3 {:.4} < n=5 {:.4}; n=5 unlabelled matches Burnside oracle: {unl_ok}",
                odd[0].exact,
                f(&odd, 0),
                odd[1].exact,
                f(&odd, 1),
                f(&z2, 0),
                f(&z2, 1)
            ),
        ),
        elapsed,
    )
}

fn criterion_8() -> Outcome {
    let v = binary();
    let mut rows = Vec::new();
    let mut pass = true;
    for n in 1..=4 {
        let burnside = unlabelled_count(&v, n).unwrap();
        let tables = tuple_tables(n, 2);
        let mut oracle = HashSet::new();
        let mut library = HashSet::new();
        for code in 0..1u64 << (n * n) {
            oracle.insert(
                tables
                    .iter()
                    .map(|(_, t)| relabel_code(code, t))
                    .min()
                    .unwrap(),
            );
            let m = Structure::decode(&v, n, &rigidity::StructureEncoding::from_u64(code)).unwrap();
            library.insert(canonical_form(&m).unwrap());
        }
        let b = burnside.to_string();
        pass &= b == oracle.len().to_string() && b == library.len().to_string();
        rows.push(format!("n={n}: {b}/{}/{}", oracle.len(), library.len()));
    }
    ok(
        pass && rows.last().unwrap().starts_with("n=4: 3044"),
        format!("burnside/oracle dedup/canonical dedup: {}", rows.join(", ")),
    )
}

fn criterion_9() -> Outcome {
    let v = binary();
    let st = |n: usize, t: &[&[usize]]| Structure::from_tuples(&v, n, &[t]).unwrap();
    let a = st(2, &[&[0, 1], &[1, 0]]);
    let h = PermGroup::symmetric(2);
    let cases = [
        (st(4, &[&[0, 1], &[1, 0], &[2, 3]]), true),
        (st(4, &[&[0, 1], &[1, 0]]), false),
        (st(4, &[&[0, 1]]), false),
    ];
    // oracle over Sym4: Spt* of M, then every bijection of A onto it
    let tables = tuple_tables(4, 2);
    let mut verdicts = Vec::new();
    let mut pass = true;
    for (m, expected) in &cases {
        let code = m.encode().to_u64().unwrap();
        let aut = brute_aut(code, &tables);
        let star: Vec<usize> = moved_union(&aut).into_iter().collect();
        let oracle = star.len() == 2 && {
            let (x, y) = (star[0], star[1]);
            let edge = |p: usize, q: usize| code >> (p * 4 + q) & 1 == 1;
            let iso = edge(x, y) && edge(y, x) && !edge(x, x) && !edge(y, y);
            let swap_in_aut = aut.iter().any(|g| g[x] == y && g[y] == x);
            iso && swap_in_aut
        };
        let lib = theory::membership(&a, &h, m).unwrap();
        pass &= lib.is_some() == *expected && oracle == *expected;
        if let Some(w) = &lib {
            pass &= w.images == vec![0, 1] && theory::is_full(&a, &h, m).unwrap();
        }
        verdicts.push(format!(
            "{}{}",
            lib.is_some(),
            lib.as_ref()
                .map_or(String::new(), |w| format!(" via {:?}", w.images))
        ));
    }
    let rigid = &cases[2].0;
    pass &= matches!(
        theory::is_full(&a, &h, rigid),
        Err(rigidity::Error::NotMember)
    );
    ok(
        pass,
        format!("verdicts {verdicts:?}; oracle over Sym4 agrees"),
    )
}

fn criterion_10() -> Outcome {
    let v = binary();
    let jsons: Vec<String> = [1, 4, 8]
        .iter()
        .map(|&t| exhaustive(&v, 4, t).to_json().unwrap())
        .collect();
    let lib_same = jsons.windows(2).all(|w| w[0] == w[1]);
    let sampled: Vec<String> = [1, 4, 8]
        .iter()
        .map(|&t| {
            Census::new(
                &v,
                5,
                Mode::Sampled {
                    samples: 20_000,
                    seed: 42,
                },
            )
            .threads(t)
            .chunk_size(1024)
            .run()
            .unwrap()
            .to_json()
            .unwrap()
        })
        .collect();
    let sampled_same = sampled.windows(2).all(|w| w[0] == w[1]);
    let bin = env!("CARGO_BIN_EXE_rigidity");
    let cli: Vec<Vec<u8>> = ["1", "4", "8"]
        .iter()
        .map(|t| {
            Command::new(bin)
                .args([
                    "census",
                    "--arities",
                    "2",
                    "--n",
                    "4",
                    "--format",
                    "json",
                    "--threads",
                    t,
                ])
                .output()
                .unwrap()
                .stdout
        })
        .collect();
    let cli_same = cli.windows(2).all(|w| w[0] == w[1]) && cli[0] == jsons[0].as_bytes();
    ok(
        lib_same && sampled_same && cli_same,
        format!(
            "exhaustive JSON identical: {lib_same}; sampled JSON identical: {sampled_same}; CLI bytes identical: {cli_same}"
        ),
    )
}

fn main() {
    let mut failures = 0;
    let mut report = |id: u32, title: &str, run: &dyn Fn() -> (Outcome, Option<Duration>)| {
        let started = Instant::now();
        let (o, timed) = run();
        let took = timed.unwrap_or_else(|| started.elapsed());
        if !o.pass {
            failures += 1;
        }
        println!(
            "{} criterion {id:>2}: {title} ({:.2}s) - {}",
            if o.pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            o.detail
        );
    };
    let untimed = |f: fn() -> Outcome| move || (f(), None);
    let timed = |f: fn() -> (Outcome, Duration)| {
        move || {
            let (o, d) = f();
            (o, Some(d))
        }
    };
    report(
        1,
        "fixed-point-free groups on 3 points are Z3 or Sym3",
        &untimed(criterion_1),
    );
    report(
        2,
        "all orbits of size 2 force Z2 with s = 2i^2",
        &untimed(criterion_2),
    );
    report(
        3,
        "max s on 2+3 orbits is 7, attained only by Z2xZ3",
        &untimed(criterion_3),
    );
    report(
        4,
        "beta gap identity over the parameter box",
        &untimed(criterion_4),
    );
    report(
        5,
        "census regression for binary relations, n = 2, 3",
        &timed(criterion_5),
    );
    report(
        6,
        "per-structure laws across full censuses",
        &timed(criterion_6),
    );
    report(7, "trend from n = 3 to n = 5", &timed(criterion_7));
    report(
        8,
        "Burnside counts equal canonical-form dedup",
        &untimed(criterion_8),
    );
    report(9, "membership and fullness examples", &untimed(criterion_9));
    report(
        10,
        "determinism across thread counts",
        &untimed(criterion_10),
    );
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
