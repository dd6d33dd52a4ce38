//! `augcat`: decide isomorphism of augmentations from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use augcat::augment::{enumerate_augmentations, Augmentation};
use augcat::classify::{audit_report, classify, ClassifyOptions, DEFAULT_LIMIT};
use augcat::error::ClassifyError;
use augcat::homcx::{bilinearized_cohomology_dims, format_dims, poincare_polynomial, Hom0Element, HomSlice};
use augcat::homotopy::{find_with_mode, is_dilated_homotopy, DilatedHomotopy, SearchMode, Verdict};
use augcat::{Dga, Field};
use augcat_oracle::golden::{self, Golden};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Parser)]
#[command(name = "augcat", version, about = "Isomorphism of augmentations of link-graded dgas over GF(2^m)")]
struct Cli {
    /// Override the coefficient field, e.g. `2^2`.
    #[arg(long, global = true, value_name = "2^m")]
    field: Option<String>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check grading, composability, d^2 = 0 and energies.
    Validate { dga: PathBuf },
    /// List every augmentation, one per line.
    Augs { dga: PathBuf },
    /// Decide whether two augmentations are isomorphic.
    Iso {
        dga: PathBuf,
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
    /// Check a dilated homotopy witness.
    Verify {
        dga: PathBuf,
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Partition all augmentations into isomorphism classes.
    Classes {
        dga: PathBuf,
        #[arg(long)]
        json: bool,
        /// Decide every ordered pair and print the audit report.
        #[arg(long)]
        audit: bool,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Bilinearized cohomology dimensions of a pair.
    Bch {
        dga: PathBuf,
        #[command(flatten)]
        pair: Pair,
    },
    /// Test whether a Hom^0 element is a cocycle.
    Cocycle {
        dga: PathBuf,
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        elem: PathBuf,
    },
    /// Compare the fast path with the brute-force oracle on random pairs.
    Selfcheck {
        dga: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Regenerate corpus goldens from the oracle and diff them against the
    /// fast path.
    Regen {
        #[arg(long, default_value = "corpus")]
        corpus: PathBuf,
        /// Compare against the files on disk instead of writing them.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args)]
struct Pair {
    #[arg(long)]
    e1: PathBuf,
    #[arg(long)]
    e2: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Full,
    Plain,
    Dilation,
}

impl From<Mode> for SearchMode {
    fn from(m: Mode) -> SearchMode {
        match m {
            Mode::Full => SearchMode::Full,
            Mode::Plain => SearchMode::PlainOnly,
            Mode::Dilation => SearchMode::DilationOnly,
        }
    }
}

enum Failure {
    Usage(String),
    Parse(String),
    Invalid(String),
    /// Negative verdict; the explanation has already been printed.
    Negative,
    Guard(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Negative => 4,
            Failure::Guard(_) => 5,
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

struct Ctx {
    field: Option<Field>,
    seed: u64,
}

impl Ctx {
    fn load_unchecked(&self, path: &Path) -> Result<Dga, Failure> {
        Dga::parse_with_field(&read(path)?, self.field).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
    }

    fn load(&self, path: &Path) -> Result<Dga, Failure> {
        let dga = self.load_unchecked(path)?;
        let report = dga.validate();
        if !report.is_valid() {
            return Err(Failure::Invalid(format!("{}: {report}", path.display())));
        }
        Ok(dga)
    }

    fn pair(&self, dga: &Dga, p: &Pair) -> Result<(Augmentation, Augmentation), Failure> {
        let one = |path: &Path| {
            Augmentation::parse(dga, &read(path)?).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
        };
        Ok((one(&p.e1)?, one(&p.e2)?))
    }
}

fn run(cli: Cli) -> Outcome {
    let field = cli
        .field
        .as_deref()
        .map(Field::parse_label)
        .transpose()
        .map_err(|e| Failure::Usage(format!("--field: {e}")))?;
    let ctx = Ctx { field, seed: cli.seed };
    match cli.command {
        Command::Validate { dga } => {
            let d = ctx.load_unchecked(&dga)?;
            let report = d.validate();
            print!("{report}");
            if report.is_valid() {
                Ok(())
            } else {
                Err(Failure::Invalid(String::new()))
            }
        }
        Command::Augs { dga } => {
            let d = ctx.load(&dga)?;
            for a in enumerate_augmentations(&d) {
                println!("{}", a.to_text(&d));
            }
            Ok(())
        }
        Command::Iso { dga, pair, mode } => {
            let d = ctx.load(&dga)?;
            let (e1, e2) = ctx.pair(&d, &pair)?;
            match find_with_mode(&d, &e1, &e2, mode.into()) {
                Some(h) => {
                    println!("ISO");
                    print!("{}", h.to_text(&d));
                    Ok(())
                }
                None => {
                    println!("NOT-ISO");
                    Err(Failure::Negative)
                }
            }
        }
        Command::Verify { dga, pair, witness } => {
            let d = ctx.load(&dga)?;
            let (e1, e2) = ctx.pair(&d, &pair)?;
            let h = DilatedHomotopy::parse(&d, &read(&witness)?)
                .map_err(|e| Failure::Parse(format!("{}: {e}", witness.display())))?;
            match is_dilated_homotopy(&d, &e1, &e2, &h).map_err(|e| Failure::Parse(e.to_string()))? {
                Verdict::Holds => {
                    println!("HOLDS");
                    Ok(())
                }
                Verdict::FailsAt(g) => {
                    println!("FAILS at {}", d.name(g));
                    Err(Failure::Negative)
                }
            }
        }
        Command::Classes {
            dga,
            json,
            audit,
            mode,
            limit,
        } => {
            let d = ctx.load(&dga)?;
            let opts = ClassifyOptions {
                mode: mode.into(),
                full_audit: audit,
                limit,
            };
            let c = classify(&d, &opts).map_err(|e| match e {
                ClassifyError::TooManyAugmentations { .. } => Failure::Guard(e.to_string()),
                other => Failure::Invalid(other.to_string()),
            })?;
            if json {
                print!("{}", golden::from_classification(&d, &stem(&dga), &c).to_json());
            } else {
                println!("augmentations: {}", c.augmentations.len());
                println!("class\tsize\tdilation-only\tbch\trepresentative");
                for (k, class) in c.classes.iter().enumerate() {
                    println!(
                        "{k}\t{}\t{}\t{}\t{}",
                        class.len(),
                        if class.dilation_only { "yes" } else { "no" },
                        poincare_polynomial(&class.bch),
                        c.augmentations[class.representative()].to_text(&d)
                    );
                }
            }
            if audit {
                eprint!("{}", audit_report(&c));
                if !c.audit.is_clean() {
                    return Err(Failure::Negative);
                }
            }
            Ok(())
        }
        Command::Bch { dga, pair } => {
            let d = ctx.load(&dga)?;
            let (e1, e2) = ctx.pair(&d, &pair)?;
            let dims = bilinearized_cohomology_dims(&d, &e1, &e2).map_err(|e| Failure::Invalid(e.to_string()))?;
            print!("{}", format_dims(&dims));
            println!("poincare: {}", poincare_polynomial(&dims));
            Ok(())
        }
        Command::Cocycle { dga, pair, elem } => {
            let d = ctx.load(&dga)?;
            let (e1, e2) = ctx.pair(&d, &pair)?;
            let a = Hom0Element::parse(&d, &read(&elem)?).map_err(|e| Failure::Parse(format!("{}: {e}", elem.display())))?;
            let m1 = HomSlice::new(&d, &e1, &e2).m1(&a).map_err(|e| Failure::Parse(e.to_string()))?;
            if m1.is_zero() {
                println!("COCYCLE");
                Ok(())
            } else {
                println!("NOT-COCYCLE");
                println!("m1 = {}", m1.display(&d));
                Err(Failure::Negative)
            }
        }
        Command::Selfcheck { dga, samples } => selfcheck(&ctx, &dga, samples),
        Command::Regen { corpus, check } => regen(&ctx, &corpus, check),
    }
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn selfcheck(ctx: &Ctx, path: &Path, samples: usize) -> Outcome {
    let d = ctx.load(path)?;
    let augs = enumerate_augmentations(&d);
    let brute = augcat_oracle::brute_augmentations(&d).ok_or_else(|| Failure::Guard("oracle search too large".into()))?;
    let mut sorted = augs.clone();
    sorted.sort();
    let mut mismatches = Vec::new();
    if sorted != brute {
        mismatches.push(format!("enumeration: fast {} oracle {}", augs.len(), brute.len()));
    }
    let mut rng = StdRng::seed_from_u64(ctx.seed);
    let mut iso = 0;
    let rounds = if augs.is_empty() { 0 } else { samples };
    for _ in 0..rounds {
        let (i, j) = (rng.gen_range(0..augs.len()), rng.gen_range(0..augs.len()));
        let fast = find_with_mode(&d, &augs[i], &augs[j], SearchMode::Full);
        let truth = augcat_oracle::has_witness(&d, &augs[i], &augs[j])
            .ok_or_else(|| Failure::Guard("oracle search too large".into()))?;
        if fast.is_some() != truth {
            mismatches.push(format!("#{i} -> #{j}: fast {} oracle {truth}", fast.is_some()));
        }
        if let Some(w) = fast {
            iso += 1;
            if !augcat_oracle::naive_check(&d, &augs[i], &augs[j], &w) {
                mismatches.push(format!("#{i} -> #{j}: witness rejected by oracle"));
            }
        }
    }
    println!("augmentations: {}", augs.len());
    println!("pairs sampled: {samples} (seed {}), isomorphic: {iso}", ctx.seed);
    if mismatches.is_empty() {
        println!("selfcheck: ok");
        Ok(())
    } else {
        for m in &mismatches {
            println!("mismatch: {m}");
        }
        Err(Failure::Negative)
    }
}

fn regen(ctx: &Ctx, dir: &Path, check: bool) -> Outcome {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "dga"))
        .collect();
    paths.sort();
    let mut failures = 0;
    for path in &paths {
        let id = stem(path);
        let d = ctx.load(path)?;
        let oracle = golden::from_oracle(&d, &id).ok_or_else(|| Failure::Guard(format!("{id}: oracle search too large")))?;
        let c = classify(&d, &ClassifyOptions::default()).map_err(|e| Failure::Guard(format!("{id}: {e}")))?;
        let fast = golden::from_classification(&d, &id, &c);
        let target = path.with_extension("json");
        let status = if fast != oracle {
            failures += 1;
            "DIVERGES (fast path vs oracle)"
        } else if check {
            match fs::read_to_string(&target).ok().and_then(|t| Golden::from_json(&t).ok()) {
                Some(g) if g == oracle => "ok",
                Some(_) => {
                    failures += 1;
                    "STALE"
                }
                None => {
                    failures += 1;
                    "MISSING"
                }
            }
        } else {
            fs::write(&target, oracle.to_json()).map_err(|e| Failure::Usage(format!("{}: {e}", target.display())))?;
            "written"
        };
        println!(
            "{id}: {} augmentations, {} classes: {status}",
            oracle.augmentations,
            oracle.classes.len()
        );
    }
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Parse(m) | Failure::Invalid(m) | Failure::Guard(m) if !m.is_empty() => {
                    eprintln!("error: {m}")
                }
                _ => {}
            }
            ExitCode::from(f.code())
        }
    }
}
