//! Ratio tables across universe sizes.
//!
//!     cargo run --example trend -- 5

use rigidity::census::{ratio_table, unlabelled_ratio_table, Predicate};
use rigidity::{Census, CensusReport, Mode, Vocabulary};

fn show(title: &str, rows: &[rigidity::census::RatioRow]) {
    println!("{title}");
    for r in rows {
        let f = r
            .fraction
            .map_or("undefined".to_string(), |f| format!("{f:.6}"));
        println!("  n={}  {:>14}  {f}", r.n, r.exact);
    }
}

fn main() -> rigidity::Result<()> {
    let max_n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(5);
    let vocab = Vocabulary::with_arities(&[2])?;
    let threads = std::thread::available_parallelism().map_or(1, |t| t.get());
    let reports: Vec<CensusReport> = (2..=max_n)
        .map(|n| {
            Census::new(&vocab, n, Mode::Exhaustive)
                .threads(threads)
                .run()
        })
        .collect::<rigidity::Result<_>>()?;
    let p = |s: &str| s.parse::<Predicate>();
    show(
        "spt*=3 / spt*=2",
        &ratio_table(&reports, &p("spt*=3")?, &p("spt*=2")?)?,
    );
    show(
        "Z2 within spt>=2",
        &ratio_table(&reports, &p("spt>=2 & class=Z2^1")?, &p("spt>=2")?)?,
    );
    show(
        "nonrigid / all",
        &ratio_table(&reports, &p("nonrigid")?, &p("all")?)?,
    );
    show(
        "spt*=3 / spt*=2, isomorphism classes",
        &unlabelled_ratio_table(&reports, &p("spt*=3")?, &p("spt*=2")?)?,
    );
    Ok(())
}
