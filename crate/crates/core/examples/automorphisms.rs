//! Automorphism groups and support statistics of a few small structures.
//!
//!     cargo run --example automorphisms

use rigidity::{profile, Structure, Vocabulary};

fn main() -> rigidity::Result<()> {
    let graphs = Vocabulary::with_arities(&[2])?;
    let cases: Vec<(&str, Structure)> = vec![
        (
            "one arc on 3 points",
            Structure::from_tuples(&graphs, 3, &[&[&[0, 1]]])?,
        ),
        (
            "directed triangle",
            Structure::from_tuples(&graphs, 3, &[&[&[0, 1], &[1, 2], &[2, 0]]])?,
        ),
        (
            "two disjoint edges",
            Structure::from_tuples(&graphs, 4, &[&[&[0, 1], &[1, 0], &[2, 3], &[3, 2]]])?,
        ),
        ("empty relation on 4 points", Structure::empty(&graphs, 4)?),
        (
            "arc plus a loop",
            Structure::from_tuples(&graphs, 3, &[&[&[0, 1], &[2, 2]]])?,
        ),
    ];
    for (name, m) in cases {
        let p = profile(&m)?;
        let gens: Vec<String> = p.group.generators().iter().map(|g| g.to_string()).collect();
        println!(
            "{name:<28} encoding {}  |Aut|={:<3} class={:<10} spt={} spt*={} q={} s={}  gens [{}]",
            m.encode(),
            p.group.order(),
            p.class.to_string(),
            p.spt,
            p.spt_star,
            p.stats.q,
            p.stats.s,
            gens.join(", ")
        );
    }
    Ok(())
}
