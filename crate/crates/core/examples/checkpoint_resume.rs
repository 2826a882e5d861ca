//! Interrupt a census, then resume it from its checkpoint.
//!
//!     cargo run --example checkpoint_resume

use rigidity::{Census, Error, Mode, Vocabulary};

fn main() -> rigidity::Result<()> {
    let vocab = Vocabulary::with_arities(&[2])?;
    let dir = std::env::temp_dir().join(format!("rigidity-resume-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("n4.rgc");
    let census = || {
        Census::new(&vocab, 4, Mode::Exhaustive)
            .chunk_size(4096)
            .checkpoint(&path)
    };

    match census().stop_after_chunks(8).run() {
        Err(Error::Interrupted { completed, total }) => {
            println!(
                "stopped after {completed}/{total} chunks, checkpoint at {}",
                path.display()
            )
        }
        other => println!("unexpected: {other:?}"),
    }
    let resumed = census().threads(2).run()?;
    let fresh = Census::new(&vocab, 4, Mode::Exhaustive).run()?;
    println!(
        "resumed report equals a fresh run: {}",
        resumed.to_json()? == fresh.to_json()?
    );
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
