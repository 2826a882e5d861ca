//! Abstract isomorphism of small permutation groups and the class labels
//! used in reports.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Isomorphism type of a group, as far as the reports distinguish them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupClass {
    Trivial,
    /// `(Z2)^t`, t >= 1.
    Z2Power(u32),
    Z3,
    Sym3,
    /// `(Z2)^t x Z3`, t >= 1.
    Z2PowerTimesZ3(u32),
    /// `(Z2)^t x Sym3`, t >= 1.
    Z2PowerTimesSym3(u32),
    Other {
        order: usize,
        abelian: bool,
        exponent: usize,
    },
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupClass::Trivial => f.write_str("Trivial"),
            GroupClass::Z2Power(t) => write!(f, "Z2^{t}"),
            GroupClass::Z3 => f.write_str("Z3"),
            GroupClass::Sym3 => f.write_str("Sym3"),
            GroupClass::Z2PowerTimesZ3(t) => write!(f, "Z2^{t}xZ3"),
            GroupClass::Z2PowerTimesSym3(t) => write!(f, "Z2^{t}xSym3"),
            GroupClass::Other {
                order,
                abelian,
                exponent,
            } => {
                write!(
                    f,
                    "Other(order={order},abelian={abelian},exponent={exponent})"
                )
            }
        }
    }
}

impl FromStr for GroupClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown group class `{s}`"));
        let power = |t: &str| t.parse::<u32>().ok().filter(|&t| t >= 1);
        match s {
            "Trivial" | "1" => return Ok(GroupClass::Trivial),
            "Z3" => return Ok(GroupClass::Z3),
            "Sym3" => return Ok(GroupClass::Sym3),
            "Z2" => return Ok(GroupClass::Z2Power(1)),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("Z2^") {
            if let Some(t) = rest.strip_suffix("xZ3") {
                return power(t).map(GroupClass::Z2PowerTimesZ3).ok_or_else(bad);
            }
            if let Some(t) = rest.strip_suffix("xSym3") {
                return power(t).map(GroupClass::Z2PowerTimesSym3).ok_or_else(bad);
            }
            return power(rest).map(GroupClass::Z2Power).ok_or_else(bad);
        }
        if let Some(body) = s.strip_prefix("Other(").and_then(|r| r.strip_suffix(')')) {
            let mut order = None;
            let mut abelian = None;
            let mut exponent = None;
            for part in body.split(',') {
                let (k, v) = part.split_once('=').ok_or_else(bad)?;
                match k.trim() {
                    "order" => order = v.trim().parse().ok(),
                    "abelian" => abelian = v.trim().parse().ok(),
                    "exponent" => exponent = v.trim().parse().ok(),
                    _ => return Err(bad()),
                }
            }
            return match (order, abelian, exponent) {
                (Some(order), Some(abelian), Some(exponent)) => Ok(GroupClass::Other {
                    order,
                    abelian,
                    exponent,
                }),
                _ => Err(bad()),
            };
        }
        Err(bad())
    }
}

impl Serialize for GroupClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Labels `h` by its abstract isomorphism type.
pub fn classify(h: &PermGroup) -> GroupClass {
    let order = h.order();
    let abelian = h.is_abelian();
    let exponent = h.exponent();
    let two_power = |x: usize| x.is_power_of_two().then(|| x.trailing_zeros());
    match order {
        1 => return GroupClass::Trivial,
        3 => return GroupClass::Z3,
        6 if !abelian => return GroupClass::Sym3,
        _ => {}
    }
    if exponent == 2 {
        if let Some(t) = two_power(order) {
            return GroupClass::Z2Power(t);
        }
    }
    if abelian && exponent == 6 && order.is_multiple_of(3) {
        if let Some(t) = two_power(order / 3).filter(|&t| t >= 1) {
            return GroupClass::Z2PowerTimesZ3(t);
        }
    }
    if !abelian && order.is_multiple_of(6) {
        if let Some(t) = two_power(order / 6).filter(|&t| t >= 1) {
            let center = h.center();
            let central_involutions = center.iter().all(|z| z.is_identity() || z.order() == 2);
            if center.len() == 1 << t && central_involutions {
                if let Some(model) = z2_power_times_sym3(t) {
                    if are_isomorphic(h, &model) {
                        return GroupClass::Z2PowerTimesSym3(t);
                    }
                }
            }
        }
    }
    GroupClass::Other {
        order,
        abelian,
        exponent,
    }
}

/// `(Z2)^t x Sym3` acting on `3 + 2t` points.
fn z2_power_times_sym3(t: u32) -> Option<PermGroup> {
    let degree = 3 + 2 * t as usize;
    if degree > Permutation::MAX_DEGREE || t > 6 {
        return None;
    }
    let mut gens = vec![
        Permutation::from_cycles(degree, &[&[0, 1, 2]]).ok()?,
        Permutation::from_cycles(degree, &[&[0, 1]]).ok()?,
    ];
    for j in 0..t as usize {
        gens.push(Permutation::from_cycles(degree, &[&[3 + 2 * j, 4 + 2 * j]]).ok()?);
    }
    PermGroup::close_in(degree, &gens).ok()
}

/// Whether `g` and `h` are isomorphic as abstract groups.
///
/// Cheap invariants first; then backtracking over images of a generating
/// set of `g`, each candidate map checked for being a well-defined
/// injective homomorphism by walking the Cayley graph.
pub fn are_isomorphic(g: &PermGroup, h: &PermGroup) -> bool {
    if g.order() != h.order() {
        return false;
    }
    if g.order() == 1 {
        return true;
    }
    if g.is_abelian() != h.is_abelian() || g.order_profile() != h.order_profile() {
        return false;
    }
    let gens = minimal_generators(g);
    let g_tab = Table::new(g);
    let h_tab = Table::new(h);
    let gen_idx: Vec<usize> = gens.iter().map(|x| g_tab.index[x]).collect();
    let candidates: Vec<Vec<usize>> = gen_idx
        .iter()
        .map(|&gi| {
            let ord = g_tab.orders[gi];
            (0..h_tab.len())
                .filter(|&j| h_tab.orders[j] == ord)
                .collect()
        })
        .collect();
    let mut choice = vec![0usize; gens.len()];
    search(&g_tab, &h_tab, &gen_idx, &candidates, 0, &mut choice)
}

fn search(
    g: &Table,
    h: &Table,
    gens: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    choice: &mut [usize],
) -> bool {
    if depth == gens.len() {
        return extends_to_isomorphism(g, h, gens, choice);
    }
    for &c in &candidates[depth] {
        choice[depth] = c;
        if search(g, h, gens, candidates, depth + 1, choice) {
            return true;
        }
    }
    false
}

fn extends_to_isomorphism(g: &Table, h: &Table, gens: &[usize], images: &[usize]) -> bool {
    let mut phi = vec![usize::MAX; g.len()];
    let mut hit = vec![false; h.len()];
    phi[g.identity] = h.identity;
    hit[h.identity] = true;
    let mut queue = vec![g.identity];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let target = h.mul(phi[x], t);
            if phi[y] == usize::MAX {
                if hit[target] {
                    return false;
                }
                phi[y] = target;
                hit[target] = true;
                queue.push(y);
            } else if phi[y] != target {
                return false;
            }
        }
    }
    queue.len() == g.len()
}

fn minimal_generators(g: &PermGroup) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span = PermGroup::trivial(g.degree());
    let pool = g.generators().iter().chain(g.elements());
    for x in pool {
        if span.order() == g.order() {
            break;
        }
        if !span.contains(x) {
            gens.push(x.clone());
            span = PermGroup::close_in(g.degree(), &gens).expect("same degree");
        }
    }
    gens
}

/// Elements indexed for multiplication by lookup.
struct Table<'a> {
    elements: &'a [Permutation],
    index: HashMap<&'a Permutation, usize>,
    orders: Vec<usize>,
    identity: usize,
}

impl<'a> Table<'a> {
    fn new(g: &'a PermGroup) -> Self {
        let elements = g.elements();
        let index: HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let identity = index[&Permutation::identity(g.degree())];
        Table {
            elements,
            index,
            orders: elements.iter().map(Permutation::order).collect(),
            identity,
        }
    }

    fn len(&self) -> usize {
        self.elements.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }
}
