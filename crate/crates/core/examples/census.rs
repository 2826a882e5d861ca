//! Exhaustive census of binary relations on up to four points.
//!
//!     cargo run --example census -- 4

use rigidity::{Census, Mode, Vocabulary};

fn main() -> rigidity::Result<()> {
    let max_n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(4);
    let vocab = Vocabulary::with_arities(&[2])?;
    for n in 2..=max_n {
        let report = Census::new(&vocab, n, Mode::Exhaustive)
            .threads(std::thread::available_parallelism().map_or(1, |t| t.get()))
            .run()?;
        print!("{}", report.to_table());
        println!("({:.2?})\n", report.elapsed);
    }
    Ok(())
}
