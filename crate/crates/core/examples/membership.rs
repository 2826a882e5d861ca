//! Deciding membership in S_n(A, H) and fullness of H.
//!
//!     cargo run --example membership

use rigidity::theory::{is_full, membership};
use rigidity::{PermGroup, Permutation, Structure, Vocabulary};

fn main() -> rigidity::Result<()> {
    let v = Vocabulary::with_arities(&[2])?;
    // A: a symmetric edge on two points, H = Sym2
    let a = Structure::from_tuples(&v, 2, &[&[&[0, 1], &[1, 0]]])?;
    let h = PermGroup::symmetric(2);
    let candidates = [
        (
            "edge {1,2} plus arc 3->4",
            Structure::from_tuples(&v, 4, &[&[&[0, 1], &[1, 0], &[2, 3]]])?,
        ),
        (
            "edge {1,2} alone",
            Structure::from_tuples(&v, 4, &[&[&[0, 1], &[1, 0]]])?,
        ),
        (
            "single arc 1->2",
            Structure::from_tuples(&v, 4, &[&[&[0, 1]]])?,
        ),
    ];
    for (name, m) in &candidates {
        match membership(&a, &h, m)? {
            Some(w) => {
                let images: Vec<usize> = w.images.iter().map(|p| p + 1).collect();
                println!(
                    "{name:<28} member, A -> {images:?}, full: {}",
                    is_full(&a, &h, m)?
                );
            }
            None => println!("{name:<28} not a member"),
        }
    }

    // a proper subgroup is never full
    let e3 = Structure::empty(&v, 3)?;
    let z3 = PermGroup::close(&[Permutation::parse_cycles(3, "(1 2 3)")?])?;
    println!(
        "empty 3-set with Z3: member {}, full {}",
        membership(&e3, &z3, &e3)?.is_some(),
        is_full(&e3, &z3, &e3)?
    );
    Ok(())
}
