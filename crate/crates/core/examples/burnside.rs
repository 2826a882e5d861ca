//! Isomorphism classes counted two ways: Burnside's lemma and
//! deduplication of canonical forms.
//!
//!     cargo run --example burnside

use std::collections::HashSet;

use rigidity::{
    canonical_form, enumerate_structures, unlabelled_count, StructureClass, Vocabulary,
};

fn main() -> rigidity::Result<()> {
    let vocabs = [
        Vocabulary::with_arities(&[2])?,
        Vocabulary::new(vec![2], StructureClass::IrreflexiveSymmetric)?,
        Vocabulary::with_arities(&[1, 2])?,
    ];
    for v in &vocabs {
        for n in 1..=4 {
            let burnside = unlabelled_count(v, n)?;
            let canonical = if rigidity::slot_count(v, n)? <= 16 {
                let mut seen = HashSet::new();
                for m in enumerate_structures(v, n)? {
                    seen.insert(canonical_form(&m)?);
                }
                seen.len().to_string()
            } else {
                "-".into()
            };
            println!("{v} n={n}: burnside {burnside:>8}  canonical {canonical:>8}");
        }
    }
    Ok(())
}
