use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use lexpoint::output;
use lexpoint::sample::{random_points, random_pool};
use lexpoint::{
    buchberger_moller, groebner_basis, reduce_basis, Field, FieldSpec, FieldVisitor, PointSetDocument,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Lex Gröbner bases, staircases and triangular decompositions of finite
/// point sets.
#[derive(Debug, Parser)]
#[command(name = "lexpoint", version)]
struct Cli {
    /// Worker threads for building independent generators.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal (or reduced) lex Gröbner basis of the vanishing ideal.
    Gb {
        input: PathBuf,
        #[arg(long)]
        reduced: bool,
    },
    /// Standard monomials in ascending lex order.
    Stdmon { input: PathBuf },
    /// Multi-indices with their blocks and families.
    Indices { input: PathBuf },
    /// Triangular cells with their towers.
    Triangular { input: PathBuf },
    /// Run every invariant check and report each one.
    Verify { input: PathBuf },
    /// Specialize the basis at a point of a projection.
    Specialize {
        input: PathBuf,
        /// Comma-separated coordinates, e.g. `1,0`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        alpha: Vec<String>,
        /// Number of leading variables fixed; defaults to the length of `--alpha`.
        #[arg(long)]
        level: Option<usize>,
    },
    /// Time the construction against Buchberger-Möller on random sets (CSV).
    Bench {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "Fp:32003")]
        field: FieldSpec,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        dims: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "10,20,40,80")]
        sizes: Vec<usize>,
        /// Repetitions per configuration; the fastest run is reported.
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

/// A failure reported as `{"error": kind, "message": text}` on stderr.
#[derive(Debug)]
struct Failure {
    kind: &'static str,
    message: String,
}

impl From<lexpoint::Error> for Failure {
    fn from(e: lexpoint::Error) -> Self {
        Failure {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

struct Outcome {
    stdout: String,
    success: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, success: true }
    }
}

/// Runs one file-based subcommand once the field of the document is known.
struct Run<'a> {
    command: &'a Command,
    doc: &'a PointSetDocument,
    parallel: bool,
}

impl FieldVisitor for Run<'_> {
    type Output = Result<Outcome, Failure>;

    fn visit<F: Field>(self, k: F) -> Self::Output {
        let v = self.doc.load(&k)?;
        let out = match self.command {
            Command::Gb { reduced, .. } => Outcome::ok(output::gb_document(&k, &v, *reduced, self.parallel)?),
            Command::Stdmon { .. } => Outcome::ok(output::stdmon_document(&k, &v)?),
            Command::Indices { .. } => Outcome::ok(output::indices_document(&k, &v)?),
            Command::Triangular { .. } => Outcome::ok(output::triangular_document(&k, &v)?),
            Command::Verify { .. } => {
                let report = output::verify_point_set(&k, &v)?;
                Outcome {
                    stdout: output::to_pretty(&report)?,
                    success: report.passed(),
                }
            }
            Command::Specialize { alpha, level, .. } => {
                let alpha = alpha.iter().map(|a| k.parse(a.trim())).collect::<Result<Vec<_>, _>>()?;
                let level = level.unwrap_or(alpha.len());
                Outcome::ok(output::specialize_document(&k, &v, &alpha, level)?)
            }
            Command::Bench { .. } => unreachable!("bench reads no input"),
        };
        Ok(out)
    }
}

struct Bench<'a> {
    seed: u64,
    dims: &'a [usize],
    sizes: &'a [usize],
    reps: usize,
}

fn fastest<T>(reps: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut best = None;
    let mut last = None;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        let value = f();
        let took = start.elapsed();
        best = Some(best.map_or(took, |b: Duration| b.min(took)));
        last = Some(value);
    }
    (best.expect("at least one run"), last.expect("at least one run"))
}

impl FieldVisitor for Bench<'_> {
    type Output = Result<Outcome, Failure>;

    fn visit<F: Field>(self, k: F) -> Self::Output {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut csv = String::from("field,n,points,construction_us,buchberger_moller_us,agree\n");
        for &n in self.dims {
            for &size in self.sizes {
                // a pool wide enough that `size` distinct points exist
                let width = ((4.0 * size as f64).powf(1.0 / n as f64).ceil() as usize).max(2);
                let hi = match k.spec().cardinality() {
                    Some(q) => (q - 1).min(1000) as i64,
                    None => 1000,
                };
                let pool = random_pool(&mut rng, width, 0, hi);
                let v = random_points(&k, &mut rng, n, size, &pool);
                let (ours_t, ours) = fastest(self.reps, || groebner_basis(&k, &v));
                let (bm_t, bm) = fastest(self.reps, || buchberger_moller(&k, &v));
                let agree = reduce_basis(&k, &ours?)? == bm?;
                log::info!("n={n} points={} agree={agree}", v.len());
                csv.push_str(&format!(
                    "{},{n},{},{},{},{agree}\n",
                    k.spec(),
                    v.len(),
                    ours_t.as_micros(),
                    bm_t.as_micros()
                ));
            }
        }
        Ok(Outcome::ok(csv))
    }
}

fn input_of(command: &Command) -> Option<&PathBuf> {
    match command {
        Command::Gb { input, .. }
        | Command::Stdmon { input }
        | Command::Indices { input }
        | Command::Triangular { input }
        | Command::Verify { input }
        | Command::Specialize { input, .. } => Some(input),
        Command::Bench { .. } => None,
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure {
                kind: "thread_pool",
                message: e.to_string(),
            })?;
    }
    if let Command::Bench {
        seed,
        field,
        dims,
        sizes,
        reps,
    } = &cli.command
    {
        return field.visit(Bench {
            seed: *seed,
            dims,
            sizes,
            reps: *reps,
        })?;
    }
    let path = input_of(&cli.command).expect("file-based subcommand");
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        kind: "io",
        message: format!("{}: {e}", path.display()),
    })?;
    let doc = PointSetDocument::from_json(&text)?;
    doc.field.visit(Run {
        command: &cli.command,
        doc: &doc,
        parallel: cli.jobs.is_some_and(|j| j > 1),
    })?
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("LEXPOINT_LOG")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            let obj = serde_json::json!({ "error": f.kind, "message": f.message });
            eprintln!("{obj}");
            ExitCode::from(2)
        }
    }
}
