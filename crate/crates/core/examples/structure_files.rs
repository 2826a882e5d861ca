//! Slot encodings and the binary structure file format.
//!
//!     cargo run --example structure_files

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigidity::{sample_structure, Structure, StructureClass, StructureEncoding, Vocabulary};

fn main() -> rigidity::Result<()> {
    let v = Vocabulary::new(vec![2, 1], StructureClass::Irreflexive)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let m = sample_structure(&v, 4, &mut rng)?;
    let code = m.encode();
    println!("{} slots, encoding {code}", rigidity::slot_count(&v, 4)?);
    for (symbol, arity) in v.arities().iter().enumerate() {
        println!("  symbol {symbol} (arity {arity}): {:?}", m.tuples(symbol));
    }
    let back = Structure::decode(&v, 4, &code.to_string().parse::<StructureEncoding>()?)?;
    assert_eq!(back, m);

    let bytes = m.to_file_bytes()?;
    let hex: Vec<String> = bytes.iter().map(|b| format!("{b:02x}")).collect();
    println!("file bytes: {}", hex.join(" "));
    assert_eq!(
        Structure::from_file_bytes(&bytes, StructureClass::Irreflexive)?,
        m
    );
    println!("round trip ok");
    Ok(())
}
