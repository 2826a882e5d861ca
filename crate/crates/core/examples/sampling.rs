//! Sampled census: estimates with standard errors, reproducible from the seed.
//!
//!     cargo run --example sampling -- 6 200000 42

use rigidity::census::{ratio_table, Predicate};
use rigidity::{Census, Mode, Vocabulary};

fn main() -> rigidity::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(6);
    let samples: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(200_000);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(42);
    let vocab = Vocabulary::with_arities(&[2])?;
    let report = Census::new(&vocab, n, Mode::Sampled { samples, seed })
        .threads(std::thread::available_parallelism().map_or(1, |t| t.get()))
        .run()?;
    print!("{}", report.to_table());
    let all = Predicate::all();
    for p in ["nonrigid", "spt*=2", "spt*>=3"] {
        let row = &ratio_table(std::slice::from_ref(&report), &p.parse()?, &all)?[0];
        println!(
            "{p:<9} {:>8} hits  fraction {:.6} +- {:.6}",
            row.num,
            row.fraction.unwrap_or(f64::NAN),
            row.std_error.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
