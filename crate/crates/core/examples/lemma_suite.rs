//! Exact checks over the subgroups of small symmetric groups.
//!
//!     cargo run --example lemma_suite

use rigidity::subgroups::subgroups_of_sym;
use rigidity::theory::{max_orbit_count_without_fixed_points, verify_lemma_suite};

fn main() -> rigidity::Result<()> {
    for d in 1..=6 {
        println!("Sym{d}: {} subgroups", subgroups_of_sym(d)?.len());
    }
    for d in 2..=6 {
        let (best, shapes) = max_orbit_count_without_fixed_points(d)?;
        println!("degree {d}: at most {best} orbits without fixed points, attained by {shapes:?}");
    }
    let mut ok = true;
    for r in verify_lemma_suite(6)? {
        ok &= r.pass;
        println!(
            "{} {:<30} {} ({} inspected)",
            if r.pass { "pass" } else { "FAIL" },
            r.check,
            r.scope,
            r.inspected
        );
    }
    std::process::exit(if ok { 0 } else { 1 });
}
