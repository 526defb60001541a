use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use milnor_core::classify::{
    canonical_form, enumerate_classes, equivalent_2n_lh, group_order, link_trivial_2n_lh, s_value,
    set_cache_dir, CanonicalForm, ENUMERATION_LIMIT,
};
use milnor_core::diagram::{braid_to_diagram, diagram_from_json, parse_braid, StringLinkDiagram};
use milnor_core::milnor::{mu, mu_table, LinkInvariant, Sequence};
use milnor_core::Error;
use num_bigint::BigInt;
use serde_json::{json, Value};

/// Milnor invariants of string links and their classification up to
/// 2n-moves and link-homotopy.
#[derive(Parser)]
#[command(name = "milnor", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One μ-invariant.
    Mu {
        #[command(flatten)]
        input: Input,
        /// Index sequence, e.g. `112` or `1,10,2`.
        #[arg(long)]
        seq: String,
    },
    /// All μ-invariants up to a given length.
    Table {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        /// Only sequences with distinct indices.
        #[arg(long)]
        non_repeated: bool,
    },
    /// Decide (2n+lh)-equivalence of two braids.
    Classify {
        /// Modulus of the 2n-move, at least 1
        #[arg(long)]
        n: u64,
        /// First braid word.
        #[arg(long)]
        a: String,
        /// Second braid word.
        #[arg(long)]
        b: String,
    },
    /// Canonical exponents `y_π` of the (2n+lh)-class.
    Canonical {
        /// Modulus of the 2n-move, at least 1
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        input: Input,
    },
    /// The finite group of (2n+lh)-classes of m-component string links.
    Group {
        /// Number of components
        #[arg(long)]
        m: usize,
        /// Modulus of the 2n-move, at least 1
        #[arg(long)]
        n: u64,
        /// Print the group order `n^{s_m}`.
        #[arg(long)]
        order: bool,
        /// List every class (groups of order at most 10000).
        #[arg(long, conflicts_with = "order")]
        enumerate: bool,
    },
    /// Whether the closure is (2n+lh)-equivalent to the trivial link.
    LinkTrivial {
        /// Modulus of the 2n-move, at least 1
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Pure braid, e.g. "m=2: s1^4".
    #[arg(long)]
    braid: Option<String>,
    /// Path to a diagram JSON file.
    #[arg(long)]
    diagram: Option<PathBuf>,
}

impl Input {
    fn load(&self) -> Result<StringLinkDiagram, Error> {
        match (&self.braid, &self.diagram) {
            (Some(b), _) => braid_to_diagram(&parse_braid(b)?),
            (None, Some(path)) => read_diagram(path),
            (None, None) => unreachable!("clap requires one input"),
        }
    }
}

fn read_diagram(path: &Path) -> Result<StringLinkDiagram, Error> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    diagram_from_json(&text)
}

/// What a command produced: JSON for `--json`, text otherwise.
struct Report {
    json: Value,
    text: String,
}

fn invariant_json(inv: &LinkInvariant) -> Value {
    json!({
        "sequence": inv.sequence.indices(),
        "delta_n": inv.delta_n.to_string(),
        "mu_bar_n": inv.mu_bar_n.to_string(),
    })
}

fn form_text(form: &CanonicalForm) -> String {
    form.exponents()
        .iter()
        .map(|(pi, y)| format!("{pi} {y}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(command: &Command) -> Result<Report, Error> {
    match command {
        Command::Mu { input, seq } => {
            let seq: Sequence = seq.parse()?;
            let value = mu(&input.load()?, &seq)?;
            Ok(Report {
                json: json!({ "mu": value.to_string() }),
                text: format!("μ({seq}) = {value}"),
            })
        }
        Command::Table {
            input,
            max_len,
            non_repeated,
        } => {
            let table = mu_table(&input.load()?, *max_len, *non_repeated)?;
            let text = table
                .entries()
                .into_iter()
                .map(|(s, v)| format!("{s}\t{v}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report {
                json: table.to_json(),
                text,
            })
        }
        Command::Classify { n, a, b } => {
            let a = braid_to_diagram(&parse_braid(a)?)?;
            let b = braid_to_diagram(&parse_braid(b)?)?;
            let e = equivalent_2n_lh(&a, &b, *n)?;
            let mut json = json!({ "equivalent": e.equivalent });
            let mut text = format!("equivalent: {}", e.equivalent);
            if let Some(w) = &e.witness {
                json["witness"] = json!({
                    "sequence": w.sequence.indices(),
                    "mu_a": w.mu_a.to_string(),
                    "mu_b": w.mu_b.to_string(),
                });
                text.push_str(&format!(
                    "\nwitness: μ({}) = {} vs {} (mod {n})",
                    w.sequence, w.mu_a, w.mu_b
                ));
            }
            Ok(Report { json, text })
        }
        Command::Canonical { n, input } => {
            let form = canonical_form(&input.load()?, *n)?;
            Ok(Report {
                json: serde_json::to_value(&form)?,
                text: form_text(&form),
            })
        }
        Command::Group {
            m,
            n,
            order: _,
            enumerate,
        } => {
            let order = group_order(*m, *n)?;
            let s_m = s_value(*m);
            let mut json = json!({ "order": order.to_string(), "s_m": s_m });
            let mut text = format!("order {order} = {n}^{s_m}");
            if *enumerate {
                if order > BigInt::from(ENUMERATION_LIMIT) {
                    return Err(Error::InvalidArgument(format!(
                        "--enumerate needs n^s_m <= {ENUMERATION_LIMIT}, got {order}"
                    )));
                }
                let classes = enumerate_classes(*m, *n)?;
                json["classes"] = serde_json::to_value(&classes)?;
                for c in &classes {
                    text.push('\n');
                    text.push_str(
                        &c.exponents()
                            .iter()
                            .map(|(_, y)| y.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                    );
                }
            }
            Ok(Report { json, text })
        }
        Command::LinkTrivial { n, input } => {
            let report = link_trivial_2n_lh(&input.load()?, *n)?;
            let json = json!({
                "trivial": report.trivial,
                "failures": report.failures.iter().map(invariant_json).collect::<Vec<_>>(),
            });
            let mut text = format!("trivial: {}", report.trivial);
            for f in &report.failures {
                text.push_str(&format!(
                    "\n{}: Δ^(n) = {}, μ̄^(n) = {}",
                    f.sequence, f.delta_n, f.mu_bar_n
                ));
            }
            Ok(Report { json, text })
        }
    }
}

/// 2: unparsable input; 3: violated precondition; 4: internal inconsistency.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::Json(_) => 2,
        Error::Inconsistency(_) => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(dir) = std::env::var_os("MILNOR_CACHE_DIR") {
        set_cache_dir(Some(PathBuf::from(dir)));
    }
    match run(&cli.command) {
        Ok(report) => {
            let out = if cli.json {
                report.json.to_string()
            } else {
                report.text
            };
            // A closed pipe is not a failure of the computation.
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
