//! Subgroups of Sym_n grouped by isomorphism class.
//!
//!     cargo run --example subgroups -- 5

use std::collections::BTreeMap;

use rigidity::classify;
use rigidity::subgroups::subgroups_of_sym;

fn main() -> rigidity::Result<()> {
    let d: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(4);
    let subgroups = subgroups_of_sym(d)?;
    let mut by_class: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for h in &subgroups {
        let e = by_class.entry(classify(h).to_string()).or_default();
        e.0 += 1;
        e.1 += usize::from(!h.has_fixed_point());
    }
    println!("Sym{d} has {} subgroups", subgroups.len());
    for (class, (count, fpf)) in by_class {
        println!("  {class:<45} {count:>5}  ({fpf} without fixed points)");
    }
    Ok(())
}
