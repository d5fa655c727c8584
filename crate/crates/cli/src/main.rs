//! gl3trace: verify the GL3 pre-trace formula over finite fields.
//!
//! Exit codes: 0 success, 1 an oracle-vs-oracle identity failed,
//! 2 budget exceeded, 3 configuration or input error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gl3trace::geometric::{FnEntry, SphericalFn};
use gl3trace::gf::DeltaRule;
use gl3trace::gl3::ClassDescriptor;
use gl3trace::halfspace::KOrbits;
use gl3trace::report::{self, RunConfig, DEFAULT_BUDGET};
use gl3trace::{Error, Exec};

#[derive(Parser)]
#[command(name = "gl3trace", version, about = "Exact checks of the GL3 pre-trace formula over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Both sides of the pre-trace formula, the character check, the worked
    /// identities and (when gcd(n, 6) = 1) the decomposition.
    Verify(Common),
    /// Closed form and oracle for one conjugacy class of GL3(F_q).
    Orbital {
        #[command(flatten)]
        common: Common,
        /// Class label, e.g. `hyp2:1,2,4` or `par1:1`.
        #[arg(long)]
        class: String,
        /// f when no --f-table is given.
        #[arg(long, value_enum, default_value = "random")]
        f: BuiltinFn,
    },
    /// Multiplicities of the irreducibles of GL3(F_q) in Ind 1.
    Decompose(Common),
    /// Canonical K-orbit representatives, for authoring f-tables.
    Orbits(Common),
    /// The character of Ind 1 on every class, with the fixed-point oracle.
    Chars(Common),
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Defining polynomial of F_q over F_p, coefficients low to high,
    /// comma-separated and monic.
    #[arg(long, value_delimiter = ',')]
    poly: Option<Vec<u64>>,
    #[arg(long, default_value = "first-nonresidue")]
    delta_rule: DeltaRule,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of seeded random test functions.
    #[arg(long, default_value_t = 5)]
    num_f: usize,
    /// Upper bound on the operations of any single enumeration.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// JSON list of {orbit_rep, value} entries; unlisted orbits get 0.
    #[arg(long)]
    f_table: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Run every loop on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuiltinFn {
    One,
    Delta,
    Random,
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            p: self.p,
            n: self.n,
            poly: self.poly.clone(),
            delta_rule: self.delta_rule,
            seed: self.seed,
            num_f: self.num_f,
            budget: self.budget,
            exec: if self.sequential { Exec::Sequential } else { Exec::Parallel },
        }
    }
}

enum Failure {
    Lib(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = match &cli.command {
        Command::Verify(c) => (c, verify(c)),
        Command::Orbital { common, class, f } => (common, orbital(common, class, *f)),
        Command::Decompose(c) => (c, decompose(c)),
        Command::Orbits(c) => (c, orbits(c)),
        Command::Chars(c) => (c, chars(c)),
    };
    match result {
        Ok((text, ok)) => {
            if let Err(e) = emit(common, &text) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(3);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: an oracle-vs-oracle identity failed; see `checks` in the report");
                ExitCode::from(1)
            }
        }
        Err(Failure::Lib(e @ Error::BudgetExceeded { .. })) => {
            eprintln!("error: {e}");
            eprintln!("hint: raise --budget, or pick a smaller field");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn emit(c: &Common, text: &str) -> std::io::Result<()> {
    match &c.out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn json<T: serde::Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("report serializes");
    s.push('\n');
    s
}

fn csv_only_json(c: &Common, what: &str) -> Result<(), Failure> {
    if c.format == Format::Csv {
        return Err(Failure::Input(format!("{what} has no CSV form; use --format json")));
    }
    Ok(())
}

fn verify(c: &Common) -> Outcome {
    csv_only_json(c, "verify")?;
    let r = report::verify(&c.config())?;
    Ok((json(&r), r.passed))
}

fn load_fn(c: &Common, orbits: &KOrbits, builtin: BuiltinFn) -> Result<SphericalFn, Failure> {
    match &c.f_table {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let entries: Vec<FnEntry> =
                serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(SphericalFn::from_entries(orbits, &entries)?)
        }
        None => Ok(match builtin {
            BuiltinFn::One => SphericalFn::one(orbits),
            BuiltinFn::Delta => SphericalFn::delta_p0(orbits),
            BuiltinFn::Random => SphericalFn::random(orbits, c.seed),
        }),
    }
}

fn orbital(c: &Common, class: &str, builtin: BuiltinFn) -> Outcome {
    csv_only_json(c, "orbital")?;
    let cfg = c.config();
    let d: ClassDescriptor = class.parse()?;
    let hs = cfg.halfspace()?;
    let orbits = KOrbits::build(&hs, cfg.budget)?;
    let f = load_fn(c, &orbits, builtin)?;
    let r = report::orbital(&cfg, &orbits, &d, &f)?;
    Ok((json(&r), true))
}

fn decompose(c: &Common) -> Outcome {
    let r = report::decompose_report(&c.config())?;
    let text = match c.format {
        Format::Json => json(&r),
        Format::Csv => {
            let mut s = String::from("family,case,condition,count,dimension,multiplicity,expanded\n");
            for row in &r.decomposition.rows {
                s += &format!(
                    "{:?},{},\"{}\",{},{},{},{}\n",
                    row.family,
                    row.case,
                    row.condition,
                    row.count,
                    row.dimension,
                    gl3trace::geometric::rational_string(&row.closed),
                    gl3trace::geometric::rational_string(&row.expanded)
                );
            }
            s
        }
    };
    Ok((text, true))
}

fn orbits(c: &Common) -> Outcome {
    let cfg = c.config();
    let hs = cfg.halfspace()?;
    let orbits = KOrbits::build(&hs, cfg.budget)?;
    let rows = orbits.rows();
    let text = match c.format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("id,a1,a2,a3,b1,b2,b3,size\n");
            for r in &rows {
                s += &format!("{},{},{},{},{},{},{},{}\n", r.id, r.a1, r.a2, r.a3, r.b1, r.b2, r.b3, r.size);
            }
            s
        }
    };
    Ok((text, true))
}

fn chars(c: &Common) -> Outcome {
    let r = report::chars_report(&c.config())?;
    let ok = r.character.orthogonality_holds();
    let text = match c.format {
        Format::Json => json(&r),
        Format::Csv => {
            let mut s = String::from("class,class_size,chi,fixed_cosets\n");
            for row in &r.character.rows {
                s += &format!(
                    "\"{}\",{},{},{}\n",
                    row.descriptor,
                    row.class_size,
                    gl3trace::geometric::rational_string(&row.closed),
                    row.oracle
                );
            }
            s
        }
    };
    Ok((text, ok))
}
