//! The β polynomial, its gap identity and the predicted typical groups.
//!
//!     cargo run --example beta

use rigidity::theory::{beta, beta_gap, predict, BetaParams};
use rigidity::Vocabulary;

fn main() -> rigidity::Result<()> {
    let vocab = Vocabulary::with_arities(&[3, 2])?;
    let p = BetaParams::of_vocabulary(&vocab);
    println!("vocabulary {vocab}: k={} l={} r={}", p.k, p.l, p.r);
    for i in 1..=4 {
        let odd = beta(2 * i + 1, i, 2 * i * i - 2 * i + 3, p);
        let even = beta(2 * i + 2, i + 1, 2 * (i + 1) * (i + 1), p);
        let g = beta_gap(i, p)?;
        println!(
            "i={i}: beta odd {odd:>4}  even {even:>4}  gap {:>4} (expected {:>4})",
            g.gap, g.expected
        );
    }
    for (m, r) in [(2, 2), (3, 2), (5, 2), (3, 3)] {
        let pr = predict(m, r)?;
        let classes: Vec<String> = pr.classes.iter().map(|c| c.to_string()).collect();
        println!(
            "spt >= {m}, arity {r}: spt* typically {}, groups {}",
            pr.m_prime,
            classes.join(", ")
        );
    }
    Ok(())
}
