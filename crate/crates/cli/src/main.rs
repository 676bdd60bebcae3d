//! `sullivan`: command-line front end for Sullivan model computations.
//!
//! Exit codes: 0 success, 1 failed assertion or corpus mismatch, 2 input
//! error, 3 resource cap hit.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sullivan::cohomology::{self, CohomologyError, CohomologyOptions, DEFAULT_CAP};
use sullivan::corpus::{self, CorpusError};
use sullivan::format::{parse_model, print_model};
use sullivan::purity::{self, PurityError};
use sullivan::random::{self, RandomParams};
use sullivan::rank::{self, BoundsOptions, RankError};
use sullivan::report::Report;
use sullivan::structure::{self, StructureError};
use sullivan::{Execution, SullivanModel};

#[derive(Parser)]
#[command(name = "sullivan", version, about = "Exact computations on finite Sullivan models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone, Copy)]
struct Common {
    /// Compute cohomology up to this degree instead of the formal dimension.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Largest cumulative basis size before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u128,
    /// Print `key = value` lines only.
    #[arg(long, global = true)]
    machine: bool,
    /// Seed for random generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
}

impl Common {
    fn cohomology(&self) -> CohomologyOptions {
        CohomologyOptions {
            cap: self.cap,
            execution: if self.sequential {
                Execution::Sequential
            } else {
                Execution::default()
            },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a model: d² = 0, minimality, nilpotence.
    Check { file: PathBuf },
    /// Betti numbers up to the formal dimension or `--max-degree`.
    Betti { file: PathBuf },
    /// Print the associated pure model.
    Pure { file: PathBuf },
    /// Decide ellipticity through the pure ideal.
    Elliptic { file: PathBuf },
    /// Two-stage decomposition U ⊕ V.
    Split { file: PathBuf },
    /// Maximality of V and, when needed, the repaired model.
    Maximalize { file: PathBuf },
    /// Skew block matrix of a quadratic two-stage model.
    Matrix { file: PathBuf },
    /// Connectivity hypotheses of the rank theorems.
    Hypotheses { file: PathBuf },
    /// Dimensions of the Gottlieb groups.
    Gottlieb { file: PathBuf },
    /// Wang sequence over an odd cocycle generator.
    Wang {
        file: PathBuf,
        /// Base generator; defaults to the first odd cocycle generator.
        #[arg(long)]
        base: Option<String>,
    },
    /// Bounds for the rational toral rank.
    Bounds {
        file: PathBuf,
        /// Extension files whose verified size raises the lower bound.
        #[arg(long = "certificate")]
        certificates: Vec<PathBuf>,
        /// Maximum number of subsets tried by the lower-bound search.
        #[arg(long, default_value_t = 4096)]
        budget: usize,
    },
    /// Verify an extension file, or build one from a model with `--lemma`.
    Certify {
        file: PathBuf,
        /// Comma-separated odd generators of V to perturb.
        #[arg(long, value_delimiter = ',')]
        lemma: Option<Vec<String>>,
    },
    /// Run the bundled example corpus.
    Corpus {
        /// Glob over entry names.
        #[arg(default_value = "*")]
        filter: String,
        #[arg(long, default_value = corpus::DEFAULT_DIR)]
        dir: PathBuf,
    },
    /// Generate a seeded odd-only quadratic two-stage model.
    Random {
        #[arg(long, default_value_t = 3)]
        p: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// Smallest candidate degree for U.
        #[arg(long, default_value_t = 3)]
        min_degree: u32,
        /// Largest candidate degree for U.
        #[arg(long, default_value_t = 3)]
        max_degree_u: u32,
    },
}

enum Failure {
    Assertion(String),
    Input(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Assertion(_) => 1,
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Assertion(m) | Failure::Input(m) | Failure::Cap(m) => m,
        }
    }
}

fn is_cap(e: &CohomologyError) -> bool {
    matches!(e, CohomologyError::CapExceeded { .. })
}

impl From<CohomologyError> for Failure {
    fn from(e: CohomologyError) -> Self {
        if is_cap(&e) {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Cohomology(c) => c.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<RankError> for Failure {
    fn from(e: RankError) -> Self {
        match e {
            RankError::Cohomology(c) => c.into(),
            RankError::Structure(s) => s.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<PurityError> for Failure {
    fn from(e: PurityError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<SullivanModel, Failure> {
    parse_model(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(common: &Common, report: &Report) {
    if common.machine {
        print!("{report}");
        return;
    }
    let width = report.entries().iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in report.entries() {
        println!("{k:width$}  {v}");
    }
}

fn note(common: &Common, text: &str) {
    if !common.machine {
        println!("{text}");
    }
}

fn run(cli: &Cli) -> Outcome {
    let common = &cli.common;
    let opts = common.cohomology();
    match &cli.command {
        Command::Check { file } => {
            let m = load(file)?;
            let check = m.check();
            let mut r = Report::new();
            r.push("generators", m.len());
            r.push("d_squared_zero", check.d_squared_zero);
            r.push("minimal", check.minimal);
            r.push("nilpotent", check.nilpotent);
            r.push("chi_pi", m.chi_pi());
            emit(common, &r);
            if !(check.d_squared_zero && check.minimal && check.nilpotent) {
                return Err(Failure::Assertion(format!("{} is not a minimal Sullivan model", file.display())));
            }
        }
        Command::Betti { file } => {
            let m = load(file)?;
            let table = match common.max_degree {
                Some(n) => cohomology::betti_table(&m, n, &opts)?,
                None => {
                    let evidence = purity::is_elliptic(&m)?;
                    if !evidence.elliptic {
                        return Err(Failure::Input(
                            "model is not elliptic; pass --max-degree for a truncated table".into(),
                        ));
                    }
                    cohomology::full_betti_table(&m, &evidence, &opts)?
                }
            };
            emit(common, &table.report());
        }
        Command::Pure { file } => {
            let pure = purity::associated_pure(&load(file)?)?;
            print!("{}", print_model(pure.model()));
        }
        Command::Elliptic { file } => {
            emit(common, &purity::is_elliptic(&load(file)?)?.report());
        }
        Command::Split { file } => {
            let m = load(file)?;
            let d = structure::two_stage_split(&m)?;
            let mut r = d.report();
            let t = m.table();
            let names = |ids: &[usize]| ids.iter().map(|&g| t.name(g)).collect::<Vec<_>>().join(" ");
            r.push("U", names(&d.u));
            r.push("V", names(&d.v));
            emit(common, &r);
        }
        Command::Maximalize { file } => {
            let m = load(file)?;
            let analysis = structure::maximality(&m, &structure::two_stage_split(&m)?)?;
            emit(common, &analysis.report());
            if let Some(rep) = &analysis.repair {
                note(common, "");
                print!("{}", print_model(&rep.model));
            }
        }
        Command::Matrix { file } => {
            let m = load(file)?;
            let d = structure::two_stage_split(&m)?;
            let q = structure::quadratic_block_matrix(&m, &d)?;
            emit(common, &q.report());
            if !common.machine {
                for (v, block) in d.v.iter().zip(&q.blocks) {
                    println!("M[{}]", m.table().name(*v));
                    for row in block {
                        let cells: Vec<String> = row.iter().map(|c| format!("{c:>3}")).collect();
                        println!("  {}", cells.join(" "));
                    }
                }
            }
        }
        Command::Hypotheses { file } => {
            let m = load(file)?;
            let d = structure::two_stage_split(&m)?;
            emit(common, &structure::hypothesis_check(&m, &d).report());
        }
        Command::Gottlieb { file } => {
            emit(common, &structure::gottlieb_report(&load(file)?, opts.execution).report());
        }
        Command::Wang { file, base } => {
            let m = load(file)?;
            let t = m.table();
            let u0 = match base {
                Some(name) => t
                    .id(name)
                    .ok_or_else(|| Failure::Input(format!("unknown generator `{name}`")))?,
                None => (0..m.len())
                    .find(|&g| t.is_odd(g) && m.is_cocycle_generator(g))
                    .ok_or_else(|| Failure::Input("no odd cocycle generator".into()))?,
            };
            emit(common, &structure::wang(&m, u0, &opts)?.report());
        }
        Command::Bounds { file, certificates, budget } => {
            let m = load(file)?;
            let specs = certificates
                .iter()
                .map(|p| rank::parse_extension(&read(p)?).map_err(Failure::from))
                .collect::<Result<Vec<_>, _>>()?;
            let bounds = rank::rank_bounds(
                &m,
                &specs,
                &BoundsOptions {
                    budget: *budget,
                    cohomology: opts,
                },
            )?;
            let mut r = bounds.report();
            r.push("rk0.lower_source", &bounds.lower.source);
            if let Some(b) = &bounds.upper_thm {
                r.push("rk0.upper_thm_source", &b.source);
            }
            for n in &bounds.notes {
                r.push("note", n);
            }
            emit(common, &r);
            if !bounds.trc.holds || !bounds.consistent() {
                return Err(Failure::Assertion("bounds are inconsistent or violate the TRC inequality".into()));
            }
        }
        Command::Certify { file, lemma } => {
            let spec = match lemma {
                Some(names) => {
                    let m = load(file)?;
                    let ids = names
                        .iter()
                        .map(|n| {
                            m.table()
                                .id(n)
                                .ok_or_else(|| Failure::Input(format!("unknown generator `{n}`")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    rank::construct_lemma_extension(&m, &ids)?
                }
                None => rank::parse_extension(&read(file)?)?,
            };
            let cert = rank::verify_extension(&spec);
            if lemma.is_some() && !common.machine {
                print!("{spec}");
                println!();
            }
            emit(common, &cert.report());
            for c in cert.checks.iter().filter(|c| !c.passed) {
                note(common, &format!("{}: {}", c.name, c.detail));
            }
            if !cert.is_valid() {
                return Err(Failure::Assertion("extension failed verification".into()));
            }
        }
        Command::Corpus { filter, dir } => {
            let report = corpus::run_corpus_in(dir, filter, &opts)?;
            if common.machine {
                for e in &report.entries {
                    println!("{}.pass = {}", e.name, e.passed());
                }
            } else {
                print!("{report}");
            }
            if report.cap_hit() {
                return Err(Failure::Cap("an entry hit the basis-size cap".into()));
            }
            if !report.passed() {
                return Err(Failure::Assertion("corpus mismatch".into()));
            }
        }
        Command::Random { p, r, min_degree, max_degree_u } => {
            let params = RandomParams {
                p: *p,
                r: *r,
                degrees: *min_degree..=*max_degree_u,
            };
            let m = random::random_two_stage(common.seed, &params).map_err(|e| Failure::Input(e.to_string()))?;
            print!("{}", print_model(&m));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
