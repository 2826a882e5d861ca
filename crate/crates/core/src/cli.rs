//! The `rigidity` command line.
//!
//! Exit status is 0 on success, 1 when a verification check fails and 2 on
//! usage or configuration errors, which are reported as a single line on
//! stderr.

use std::fmt::Write as _;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::automorphism::profile;
use crate::census::{
    ratio_table, unlabelled_ratio_table, Census, CensusReport, Mode, Predicate, RatioRow,
};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::structure::{Structure, StructureEncoding};
use crate::theory::{self, BetaParams};
use crate::vocab::{StructureClass, Vocabulary};

#[derive(Debug, Parser)]
#[command(
    name = "rigidity",
    version,
    about = "Automorphism groups of finite relational structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Args)]
struct Output {
    /// Output format; defaults to a table on a terminal and JSON otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the result to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report timing on stderr.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Debug, Args)]
struct VocabArgs {
    /// Comma-separated arities, e.g. `2,2`.
    #[arg(long)]
    arities: Option<String>,
    #[arg(long, default_value = "all")]
    class: String,
    /// JSON vocabulary, e.g. `{"arities":[2,2],"class":"all"}`.
    #[arg(long, conflicts_with = "arities")]
    vocab_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Worker threads.
    #[arg(long, env = "RIGIDITY_THREADS")]
    threads: Option<usize>,
    /// Resume from and keep updating this checkpoint file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, default_value_t = crate::census::DEFAULT_CHUNK_SIZE, hide = true)]
    chunk_size: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exhaustive census of S_n.
    Census {
        #[command(flatten)]
        vocab: VocabArgs,
        /// Universe size, or an inclusive range such as `2..5`.
        #[arg(long)]
        n: String,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Sampled census of S_n.
    Sample {
        #[command(flatten)]
        vocab: VocabArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Ratio table across saved census reports.
    Trend {
        /// Comma-separated report files.
        #[arg(long, value_delimiter = ',', required = true)]
        reports: Vec<PathBuf>,
        /// Numerator predicate, e.g. `spt*=3`.
        #[arg(long)]
        num: String,
        /// Denominator predicate, e.g. `spt*=2`.
        #[arg(long)]
        den: String,
        /// Value substituted for `T` in the predicates.
        #[arg(long)]
        t: Option<usize>,
        /// Count isomorphism classes instead of labelled structures.
        #[arg(long)]
        unlabelled: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Automorphism group and support statistics of one structure.
    Aut {
        #[command(flatten)]
        vocab: VocabArgs,
        #[arg(long)]
        n: Option<usize>,
        /// Hex slot encoding.
        #[arg(long, conflicts_with = "file")]
        encoding: Option<String>,
        /// Structure file.
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate the β polynomial.
    Beta {
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
        #[arg(long, allow_hyphen_values = true)]
        z: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        r: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Check the β gap identity at one parameter point.
    BetaGap {
        #[arg(long)]
        i: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        r: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Typical automorphism groups for structures with spt >= m.
    Predict {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Run the exact group-theoretic checks.
    VerifyLemmas {
        #[arg(long, default_value_t = crate::subgroups::MAX_SUBGROUP_DEGREE)]
        max_degree: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Decide whether M belongs to S_n(A, H).
    Membership {
        #[command(flatten)]
        vocab: VocabArgs,
        /// Size of A.
        #[arg(long)]
        a_n: Option<usize>,
        /// Hex encoding of A.
        #[arg(long)]
        a: Option<String>,
        #[arg(long, conflicts_with = "a")]
        a_file: Option<PathBuf>,
        /// Generators of H in cycle notation on A's points, separated by `;`.
        #[arg(long)]
        h: String,
        /// Size of M.
        #[arg(long)]
        m_n: Option<usize>,
        /// Hex encoding of M.
        #[arg(long)]
        m: Option<String>,
        #[arg(long, conflicts_with = "m")]
        m_file: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

/// Parses `argv` (including the program name), runs the command on the
/// process streams and returns the exit status.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let terminal = std::io::stdout().is_terminal();
    run(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
        terminal,
    )
}

/// Like [`dispatch`] with explicit streams. `terminal` selects the default
/// output format.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write, terminal: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let text = e.render().to_string();
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("usage error");
            let _ = writeln!(err, "{}", line.trim());
            return 2;
        }
    };
    match execute(cli.command, out, err, terminal) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.to_string().replace('\n', " "));
            2
        }
    }
}

fn vocabulary(args: &VocabArgs) -> Result<Vocabulary> {
    if let Some(path) = &args.vocab_file {
        return Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?);
    }
    let class: StructureClass = args.class.parse()?;
    let list = args
        .arities
        .as_deref()
        .ok_or_else(|| Error::InvalidVocabulary("give --arities or --vocab-file".into()))?;
    Vocabulary::parse_arities(list, class)
}

fn threads(run: &RunArgs) -> usize {
    run.threads
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn n_range(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("bad universe size `{text}`"));
    let (lo, hi) = match text.split_once("..").or_else(|| text.split_once('-')) {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let n = text.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn structure(
    vocab: &Vocabulary,
    n: Option<usize>,
    encoding: Option<&str>,
    file: Option<&Path>,
    what: &str,
) -> Result<Structure> {
    if let Some(path) = file {
        let m = Structure::load(path, vocab.class())?;
        if m.vocab().arities() != vocab.arities() {
            return Err(Error::InvalidStructure(format!(
                "{} has arities {:?}, expected {:?}",
                path.display(),
                m.vocab().arities(),
                vocab.arities()
            )));
        }
        return Ok(m);
    }
    let code: StructureEncoding = encoding
        .ok_or_else(|| Error::Parse(format!("give an encoding or a file for {what}")))?
        .parse()?;
    let n = n.ok_or_else(|| Error::Parse(format!("give the universe size of {what}")))?;
    Structure::decode(vocab, n, &code)
}

struct Sink<'a> {
    out: &'a mut dyn Write,
    path: Option<PathBuf>,
    format: Format,
}

impl<'a> Sink<'a> {
    fn new(output: &Output, out: &'a mut dyn Write, terminal: bool) -> Self {
        let format = output
            .format
            .unwrap_or(if terminal && output.out.is_none() {
                Format::Table
            } else {
                Format::Json
            });
        Sink {
            out,
            path: output.out.clone(),
            format,
        }
    }

    fn emit(&mut self, text: &str) -> Result<()> {
        match &self.path {
            Some(p) => std::fs::write(p, text)?,
            None => self.out.write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn json<T: Serialize>(&mut self, value: &T) -> Result<()> {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        self.emit(&s)
    }

    fn csv<T: Serialize>(&mut self, rows: &[T]) -> Result<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            w.serialize(r)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        self.emit(&String::from_utf8_lossy(&bytes))
    }

    fn no_csv(&self, command: &str) -> Result<()> {
        Err(Error::Parse(format!(
            "csv output is not available for {command}"
        )))
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write, terminal: bool) -> Result<i32> {
    match cmd {
        Command::Census {
            vocab,
            n,
            run,
            output,
        } => {
            let vocab = vocabulary(&vocab)?;
            let sizes = n_range(&n)?;
            if sizes.len() > 1 && run.checkpoint.is_some() {
                return Err(Error::Parse("--checkpoint needs a single --n".into()));
            }
            let mut reports = Vec::new();
            for n in sizes {
                let mut c = Census::new(&vocab, n, Mode::Exhaustive)
                    .threads(threads(&run))
                    .chunk_size(run.chunk_size);
                if let Some(p) = &run.checkpoint {
                    c = c.checkpoint(p);
                }
                let r = c.run()?;
                if output.verbose {
                    let _ = writeln!(err, "n={n}: {} structures in {:.3?}", r.total, r.elapsed);
                }
                reports.push(r);
            }
            emit_reports(&reports, &output, out, terminal)
        }
        Command::Sample {
            vocab,
            n,
            samples,
            seed,
            run,
            output,
        } => {
            let vocab = vocabulary(&vocab)?;
            let mut c = Census::new(&vocab, n, Mode::Sampled { samples, seed })
                .threads(threads(&run))
                .chunk_size(run.chunk_size);
            if let Some(p) = &run.checkpoint {
                c = c.checkpoint(p);
            }
            let r = c.run()?;
            if output.verbose {
                let _ = writeln!(err, "{samples} samples in {:.3?}", r.elapsed);
            }
            emit_reports(&[r], &output, out, terminal)
        }
        Command::Trend {
            reports,
            num,
            den,
            t,
            unlabelled,
            output,
        } => {
            let subst = |p: &str| match t {
                Some(t) => p.replace('T', &t.to_string()),
                None => p.to_string(),
            };
            let num: Predicate = subst(&num).parse()?;
            let den: Predicate = subst(&den).parse()?;
            let loaded = reports
                .iter()
                .map(|p| {
                    CensusReport::load(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
                })
                .collect::<Result<Vec<_>>>()?;
            let rows = if unlabelled {
                unlabelled_ratio_table(&loaded, &num, &den)?
            } else {
                ratio_table(&loaded, &num, &den)?
            };
            let mut sink = Sink::new(&output, out, terminal);
            match sink.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Doc<'a> {
                        numerator: &'a Predicate,
                        denominator: &'a Predicate,
                        counting: &'a str,
                        rows: &'a [RatioRow],
                    }
                    let counting = if unlabelled { "unlabelled" } else { "labelled" };
                    sink.json(&Doc {
                        numerator: &num,
                        denominator: &den,
                        counting,
                        rows: &rows,
                    })?
                }
                Format::Csv => sink.csv(&rows)?,
                Format::Table => {
                    let mut s = format!("numerator: {num}\ndenominator: {den}\n");
                    let _ = writeln!(
                        s,
                        "{:>3} {:>14} {:>14} {:>12} {:>10}",
                        "n", "num", "den", "fraction", "stderr"
                    );
                    for r in &rows {
                        let frac = r
                            .fraction
                            .map_or("undefined".to_string(), |f| format!("{f:.6}"));
                        let se = r.std_error.map_or("-".to_string(), |e| format!("{e:.6}"));
                        let _ = writeln!(
                            s,
                            "{:>3} {:>14} {:>14} {:>12} {:>10}",
                            r.n, r.num, r.den, frac, se
                        );
                    }
                    sink.emit(&s)?
                }
            }
            Ok(0)
        }
        Command::Aut {
            vocab,
            n,
            encoding,
            file,
            output,
        } => {
            let vocab = vocabulary(&vocab)?;
            let m = structure(
                &vocab,
                n,
                encoding.as_deref(),
                file.as_deref(),
                "the structure",
            )?;
            let summary = profile(&m)?.summary();
            let mut sink = Sink::new(&output, out, terminal);
            match sink.format {
                Format::Json => sink.json(&summary)?,
                Format::Csv => sink.no_csv("aut")?,
                Format::Table => {
                    let set: Vec<String> =
                        summary.spt_star_set.iter().map(|p| p.to_string()).collect();
                    let text = format!(
                        "|Aut| = {}\ngenerators: {}\nclass: {}\nspt = {}  spt* = {}  Spt* = {{{}}}\nq = {}  s = {}\n",
                        summary.aut_order,
                        if summary.generators.is_empty() { "none".into() } else { summary.generators.join(" ") },
                        summary.class,
                        summary.spt,
                        summary.spt_star,
                        set.join(", "),
                        summary.q,
                        summary.s
                    );
                    sink.emit(&text)?
                }
            }
            Ok(0)
        }
        Command::Beta {
            x,
            y,
            z,
            k,
            l,
            r,
            output,
        } => {
            let p = BetaParams::new(k, l, r)?;
            #[derive(Serialize)]
            struct Row {
                x: i64,
                y: i64,
                z: i64,
                k: i64,
                l: i64,
                r: i64,
                beta: i64,
            }
            let row = Row {
                x,
                y,
                z,
                k,
                l,
                r,
                beta: theory::beta(x, y, z, p),
            };
            let mut sink = Sink::new(&output, out, terminal);
            match sink.format {
                Format::Json => sink.json(&row)?,
                Format::Csv => sink.csv(&[row])?,
                Format::Table => sink.emit(&format!("beta({x}, {y}, {z}) = {}\n", row.beta))?,
            }
            Ok(0)
        }
        Command::BetaGap { i, k, l, r, output } => {
            let gap = theory::beta_gap(i, BetaParams::new(k, l, r)?)?;
            #[derive(Serialize)]
            struct Row {
                i: i64,
                k: i64,
                l: i64,
                r: i64,
                gap: i64,
                expected: i64,
                check: &'static str,
            }
            let check = if gap.holds { "pass" } else { "fail" };
            let row = Row {
                i,
                k,
                l,
                r,
                gap: gap.gap,
                expected: gap.expected,
                check,
            };
            let mut sink = Sink::new(&output, out, terminal);
            match sink.format {
                Format::Json => sink.json(&row)?,
                Format::Csv => sink.csv(&[row])?,
                Format::Table => sink.emit(&format!("{}\ncheck={check}\n", gap.gap))?,
            }
            Ok(if gap.holds { 0 } else { 1 })
        }
        Command::Predict { m, r, output } => {
            let p = theory::predict(m, r)?;
            let mut sink = Sink::new(&output, out, terminal);
            match sink.format {
                Format::Json => sink.json(&p)?,
                Format::Csv => sink.no_csv("predict")?,
                Format::Table => {
                    let classes: Vec<String> = p.classes.iter().map(|c| c.to_string()).collect();
                    sink.emit(&format!(
                        "m'={}\nclasses: {}\n",
                        p.m_prime,
                        classes.join(", ")
                    ))?
                }
            }
            Ok(0)
        }
        Command::VerifyLemmas { max_degree, output } => {
            let results = theory::verify_lemma_suite(max_degree)?;
            let mut sink = Sink::new(&output, out, terminal);
            match sink.format {
                Format::Json => sink.json(&results)?,
                Format::Csv => sink.csv(&results)?,
                Format::Table => {
                    let mut s = String::new();
                    for r in &results {
                        let verdict = if r.pass { "pass" } else { "FAIL" };
                        let _ = writeln!(
                            s,
                            "{verdict}  {}  ({}; {} inspected)",
                            r.check, r.scope, r.inspected
                        );
                        if let Some(c) = &r.counterexample {
                            let _ = writeln!(s, "      counterexample: {c}");
                        }
                    }
                    sink.emit(&s)?
                }
            }
            Ok(if results.iter().all(|r| r.pass) { 0 } else { 1 })
        }
        Command::Membership {
            vocab,
            a_n,
            a,
            a_file,
            h,
            m_n,
            m,
            m_file,
            output,
        } => {
            let vocab = vocabulary(&vocab)?;
            let a = structure(&vocab, a_n, a.as_deref(), a_file.as_deref(), "A")?;
            let m = structure(&vocab, m_n, m.as_deref(), m_file.as_deref(), "M")?;
            let gens = h
                .split(';')
                .filter(|g| !g.trim().is_empty())
                .map(|g| Permutation::parse_cycles(a.n(), g))
                .collect::<Result<Vec<_>>>()?;
            let h = if gens.is_empty() {
                PermGroup::trivial(a.n())
            } else {
                PermGroup::close(&gens)?
            };
            let witness = theory::membership(&a, &h, &m)?;
            let full = match witness {
                Some(_) => Some(theory::is_full(&a, &h, &m)?),
                None => None,
            };
            #[derive(Serialize)]
            struct Doc {
                member: bool,
                witness: Option<Vec<usize>>,
                full: Option<bool>,
            }
            let doc = Doc {
                member: witness.is_some(),
                witness: witness.map(|w| w.images.iter().map(|p| p + 1).collect()),
                full,
            };
            let mut sink = Sink::new(&output, out, terminal);
            match sink.format {
                Format::Json => sink.json(&doc)?,
                Format::Csv => sink.no_csv("membership")?,
                Format::Table => {
                    let text = match (&doc.witness, doc.full) {
                        (Some(w), Some(full)) => {
                            let pts: Vec<String> = w
                                .iter()
                                .enumerate()
                                .map(|(i, p)| format!("{}->{p}", i + 1))
                                .collect();
                            format!(
                                "member: yes\nwitness: {}\nfull: {}\n",
                                pts.join(" "),
                                if full { "yes" } else { "no" }
                            )
                        }
                        _ => "member: no\n".to_string(),
                    };
                    sink.emit(&text)?
                }
            }
            Ok(0)
        }
    }
}

fn emit_reports(
    reports: &[CensusReport],
    output: &Output,
    out: &mut dyn Write,
    terminal: bool,
) -> Result<i32> {
    let mut sink = Sink::new(output, out, terminal);
    match sink.format {
        Format::Json => {
            if let [single] = reports {
                sink.emit(&single.to_json()?)?
            } else {
                let docs: Vec<_> = reports.iter().map(CensusReport::to_document).collect();
                sink.json(&docs)?
            }
        }
        Format::Csv => {
            let mut buf = Vec::new();
            for (i, r) in reports.iter().enumerate() {
                let mut part = Vec::new();
                r.write_csv(&mut part)?;
                // keep a single header line
                let skip = if i == 0 {
                    0
                } else {
                    part.iter().position(|&b| b == b'\n').map_or(0, |p| p + 1)
                };
                buf.extend_from_slice(&part[skip..]);
            }
            sink.emit(&String::from_utf8_lossy(&buf))?
        }
        Format::Table => {
            let text: Vec<String> = reports.iter().map(CensusReport::to_table).collect();
            sink.emit(&text.join("\n"))?
        }
    }
    Ok(0)
}
