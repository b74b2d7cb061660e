use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use smith_core::chain::{is_quasi_iso, ChainComplex};
use smith_core::corpus;
use smith_core::dg::{main_theorem_check, DGAlgebraNU};
use smith_core::format::{self, Document};
use smith_core::report::{Check, Report};
use smith_core::{algebra, suite, Error, Field};

#[derive(Parser)]
#[command(name = "smith", version, about = "Exact checks for Smith ideals, augmented algebras and their non-unital counterparts")]
struct Cli {
    /// One `CHECK <name> PASS|FAIL [witness]` line per check.
    #[arg(long, global = true)]
    porcelain: bool,

    /// Field for generated instances: `Q` or `FP:<p>`.
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field)]
    field: Field,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Batch {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Check the invariants of any supported file.
    Validate { file: PathBuf },
    /// Emit `k ⊕ A` for a non-unital algebra.
    Unitalize {
        file: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Emit the kernel of the augmentation of an augmented algebra.
    Augker {
        file: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Verify both unitalization/kernel roundtrip isomorphisms.
    Roundtrip { file: PathBuf },
    /// Build the Smith ideal of an algebra and verify it.
    SmithCheck { file: PathBuf },
    /// Monoidal and adjunction identities on random arrows, or on every pair
    /// of arrows in the given files.
    MonoidalCheck {
        #[command(flatten)]
        batch: Batch,
        #[arg(long, default_value_t = 5)]
        max_dim: usize,
        files: Vec<PathBuf>,
    },
    /// Homology of a complex, or of both ends of a chain map.
    Homology { file: PathBuf },
    /// Unit and counit comparisons for random chain maps.
    StableCheck {
        #[command(flatten)]
        batch: Batch,
    },
    /// Strict roundtrip `A → ker(ε_{k⊕A})` for a dg algebra.
    DgRoundtrip { file: PathBuf },
    /// Homotopy checks for `A ↪ k ⊕ A`.
    MainTheorem { file: PathBuf },
    /// Generated instances in the file formats above.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// `truncated_polynomial N`, `upper_triangular N`, `cyclic_group_algebra N`,
    /// `square_zero N`, `dg_square_zero DEGREE DIM`, `random_arrow SEED MAX_DIM [COUNT]`,
    /// `random_complex SEED RANGE MAX_DIM`, `random_chain_map SEED RANGE MAX_DIM`.
    Dump { family: String, params: Vec<String> },
}

fn parse_field(s: &str) -> Result<Field, String> {
    if s == "Q" {
        return Ok(Field::Rationals);
    }
    let p = s
        .strip_prefix("FP:")
        .ok_or_else(|| format!("expected Q or FP:<p>, got `{s}`"))?;
    let p: u64 = p.parse().map_err(|_| format!("bad characteristic `{p}`"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

/// A failure that stops a command before its checks run: unreadable or
/// malformed input, or the wrong kind of file. Exits with status 2.
struct Fatal(String);

impl From<Error> for Fatal {
    fn from(e: Error) -> Self {
        Fatal(e.to_string())
    }
}

fn read(path: &Path) -> Result<Document, Fatal> {
    let text = fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    format::parse_document(&text).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn wrong_kind(doc: &Document, wanted: &str) -> Fatal {
    Fatal(format!("expected {wanted}, found {}", doc.kind()))
}

fn write_output(output: Option<&Path>, text: &str) -> Result<(), Fatal> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Fatal(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs `count` seeded instances in parallel; the report keeps index order.
fn batch(name: &str, b: &Batch, run: impl Fn(u64) -> Report + Sync) -> Report {
    let reports: Vec<Report> = (0..b.count)
        .into_par_iter()
        .map(|i| run(b.seed.wrapping_add(i)))
        .collect();
    let mut out = Report::new(name);
    for (i, r) in reports.into_iter().enumerate() {
        out.absorb(&format!("instance{i}"), r);
    }
    out
}

fn as_dg(doc: Document) -> Result<DGAlgebraNU, Fatal> {
    match doc {
        Document::DGAlgebra(a) => Ok(a),
        Document::Complex(c) => Ok(DGAlgebraNU::zero_mult(c)),
        Document::NonUnital(a) => Ok(DGAlgebraNU::from_algebra(&a)),
        other => Err(wrong_kind(&other, "a dg algebra or non-unital algebra")),
    }
}

fn homology_lines(label: &str, c: &ChainComplex) -> String {
    c.homology()
        .into_iter()
        .map(|(n, h)| format!("{label}H_{n} = {h}\n"))
        .collect()
}

fn run(cli: &Cli) -> Result<Report, Fatal> {
    let field = cli.field;
    match &cli.command {
        Command::Validate { file } => Ok(suite::validate(&read(file)?)),
        Command::Unitalize { file, output } => {
            let a = match read(file)? {
                Document::NonUnital(a) => a,
                other => return Err(wrong_kind(&other, "a non-unital algebra")),
            };
            let mut report = Report::new("unitalize");
            report.push(a.associativity_check());
            if report.passed() {
                let b = algebra::unitalize(&a)?;
                report.checks.extend(b.checks());
                write_output(output.as_deref(), &format::emit_augmented(&b))?;
            }
            Ok(report)
        }
        Command::Augker { file, output } => {
            let b = match read(file)? {
                Document::Augmented(b) => b,
                other => return Err(wrong_kind(&other, "an augmented algebra")),
            };
            let mut report = Report::new("augker");
            report.checks.extend(b.checks());
            if report.passed() {
                let (k, _) = algebra::augmentation_kernel(&b)?;
                report.push(k.associativity_check());
                write_output(output.as_deref(), &format::emit_nonunital(&k))?;
            }
            Ok(report)
        }
        Command::Roundtrip { file } => match read(file)? {
            Document::NonUnital(a) => Ok(suite::roundtrip_nonunital(&a)),
            Document::Augmented(b) => Ok(suite::roundtrip_augmented(&b)),
            other => Err(wrong_kind(&other, "a non-unital or augmented algebra")),
        },
        Command::SmithCheck { file } => match read(file)? {
            Document::NonUnital(a) => Ok(suite::smith_nonunital(&a)),
            Document::Augmented(b) => Ok(suite::smith_augmented(&b)),
            other => Err(wrong_kind(&other, "a non-unital or augmented algebra")),
        },
        Command::MonoidalCheck { batch: b, max_dim, files } => {
            if files.is_empty() {
                return Ok(batch("monoidal-check", b, |s| suite::monoidal_instance(s, field, *max_dim)));
            }
            let mut arrows = Vec::new();
            for f in files {
                match read(f)? {
                    Document::Arrows(a) => arrows.extend(a),
                    other => return Err(wrong_kind(&other, "an arrow file")),
                }
            }
            if let Some(a) = arrows.iter().find(|a| a.field() != arrows[0].field()) {
                return Err(Fatal(format!("arrows over {} and {}", arrows[0].field(), a.field())));
            }
            let pairs: Vec<(usize, usize)> = (0..arrows.len())
                .flat_map(|i| (0..arrows.len()).map(move |j| (i, j)))
                .collect();
            let reports: Vec<Report> = pairs
                .par_iter()
                .map(|&(i, j)| suite::monoidal_pair(&arrows[i], &arrows[j], b.seed))
                .collect();
            let mut out = Report::new("monoidal-check");
            for (&(i, j), r) in pairs.iter().zip(reports) {
                out.absorb(&format!("pair{i}_{j}"), r);
            }
            Ok(out)
        }
        Command::Homology { file } => {
            let doc = read(file)?;
            match &doc {
                Document::Complex(c) => print!("{}", homology_lines("", c)),
                Document::ChainMap(f) => {
                    print!("{}", homology_lines("source ", &f.src));
                    print!("{}", homology_lines("target ", &f.dst));
                    let qi = is_quasi_iso(f)?;
                    println!("quasi-isomorphism: {}", if qi { "yes" } else { "no" });
                }
                Document::DGAlgebra(a) => print!("{}", homology_lines("", &a.carrier)),
                other => return Err(wrong_kind(other, "a complex or chain map")),
            }
            let mut report = suite::validate(&doc);
            report.command = "homology".into();
            Ok(report)
        }
        Command::StableCheck { batch: b } => Ok(batch("stable-check", b, |s| {
            let mut r = suite::stable_instance(s, field);
            r.absorb("degree0", suite::degree_zero_instance(s, field));
            r
        })),
        Command::DgRoundtrip { file } => Ok(suite::dg_roundtrip(&as_dg(read(file)?)?)),
        Command::MainTheorem { file } => Ok(main_theorem_check(&as_dg(read(file)?)?)),
        Command::Corpus { action: CorpusAction::Dump { family, params } } => {
            print!("{}", dump(field, family, params)?);
            let mut r = Report::new("corpus dump");
            r.push(Check::pass("generated"));
            Ok(r)
        }
    }
}

fn dump(field: Field, family: &str, params: &[String]) -> Result<String, Fatal> {
    let nums: Vec<u64> = params
        .iter()
        .map(|p| p.parse().map_err(|_| Fatal(format!("parameter `{p}` is not a non-negative integer"))))
        .collect::<Result<_, _>>()?;
    let want = |n: std::ops::RangeInclusive<usize>| -> Result<(), Fatal> {
        if n.contains(&nums.len()) {
            Ok(())
        } else {
            Err(Fatal(format!("{family} takes {} to {} parameters", n.start(), n.end())))
        }
    };
    let positive = |v: u64| -> Result<usize, Fatal> {
        if v == 0 {
            Err(Fatal(format!("{family} needs n >= 1")))
        } else {
            Ok(v as usize)
        }
    };
    Ok(match family {
        "truncated_polynomial" => {
            want(1..=1)?;
            format::emit_augmented(&corpus::truncated_polynomial(field, positive(nums[0])?))
        }
        "upper_triangular" => {
            want(1..=1)?;
            format::emit_augmented(&corpus::upper_triangular(field, positive(nums[0])?))
        }
        "cyclic_group_algebra" => {
            want(1..=1)?;
            format::emit_augmented(&corpus::cyclic_group_algebra(field, positive(nums[0])?))
        }
        "square_zero" => {
            want(1..=1)?;
            format::emit_nonunital(&corpus::square_zero(field, nums[0] as usize))
        }
        "dg_square_zero" => {
            want(2..=2)?;
            format::emit_dg(&DGAlgebraNU::square_zero(field, nums[0] as i32, nums[1] as usize))
        }
        "random_arrow" => {
            want(2..=3)?;
            let count = nums.get(2).copied().unwrap_or(1);
            let arrows: Vec<_> = (0..count)
                .map(|i| corpus::random_arrow(nums[0].wrapping_add(i), field, nums[1] as usize))
                .collect();
            format::emit_arrows(&arrows)
        }
        "random_complex" => {
            want(3..=3)?;
            format::emit_complex(&corpus::random_complex(nums[0], field, nums[1] as usize, nums[2] as usize))
        }
        "random_chain_map" => {
            want(3..=3)?;
            format::emit_chain_map(&corpus::random_chain_map(nums[0], field, nums[1] as usize, nums[2] as usize))
        }
        other => return Err(Fatal(format!("unknown family `{other}`"))),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = if cli.porcelain {
                report.porcelain()
            } else if matches!(cli.command, Command::Corpus { .. }) {
                String::new()
            } else {
                format!("{report}\n")
            };
            // Keep stdout clean when it carries an emitted file.
            let emits = matches!(
                &cli.command,
                Command::Unitalize { output: None, .. } | Command::Augker { output: None, .. }
            );
            if emits {
                eprint!("{text}");
            } else {
                print!("{text}");
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
