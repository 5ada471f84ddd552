//! Command-line front end. [`run`] is the whole program minus process I/O so
//! it can be driven from tests.

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::cantor::{eval_pl, to_prefix_map, NAdic};
use crate::diagram::PairedDiagram;
use crate::dot::render_dot;
use crate::error::Error;
use crate::forest::{count_trees, LeafAddress};
use crate::operad::{independence_check, square_fill};
use crate::suites::{run_suite, Suite, SuiteConfig};
use crate::text::{self, format_word, inferred_arity, parse_cut_spec, parse_cut_tree, parse_diagram, parse_morphism};

pub const DEFAULT_SEED: u64 = 7;

#[derive(Parser, Debug)]
#[command(name = "htgroups", version, about = "Paired forest diagrams for the Higman-Thompson groups V(n,r)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Fallback {
    /// Arity used when no element has an internal node
    #[arg(long, default_value_t = 2)]
    arity: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the reduced form of a diagram
    Reduce {
        diagram: String,
        #[command(flatten)]
        fallback: Fallback,
    },
    /// Multiply diagrams; the rightmost factor acts first
    Mul {
        #[arg(required = true, num_args = 2..)]
        diagrams: Vec<String>,
        #[command(flatten)]
        fallback: Fallback,
    },
    /// Invert a diagram
    Inv {
        diagram: String,
        #[command(flatten)]
        fallback: Fallback,
    },
    /// Decide whether two diagrams are the same group element
    Eq {
        x: String,
        y: String,
        #[command(flatten)]
        fallback: Fallback,
    },
    /// Apply the prefix map of a diagram to a finite word
    Act {
        diagram: String,
        #[arg(long)]
        word: String,
        /// 1-based component of the word
        #[arg(long, default_value_t = 1)]
        component: usize,
        #[command(flatten)]
        fallback: Fallback,
    },
    /// Evaluate the piecewise-linear map at an n-adic point p/n^e
    Eval {
        diagram: String,
        #[arg(long, allow_hyphen_values = true)]
        rational: String,
        #[arg(long, default_value_t = 1)]
        component: usize,
        #[command(flatten)]
        fallback: Fallback,
    },
    /// Print the prefix-substitution rules of a diagram
    Rules {
        diagram: String,
        #[arg(long)]
        canonical: bool,
        #[command(flatten)]
        fallback: Fallback,
    },
    /// Report membership in F(n,r) and T(n,r)
    Member {
        diagram: String,
        #[command(flatten)]
        fallback: Fallback,
    },
    /// Map V(n,r) into V(n,r+1)
    Stabilize {
        diagram: String,
        #[command(flatten)]
        fallback: Fallback,
    },
    /// The isomorphism V(n,r) -> V(n,r+n-1), or its inverse
    Periodicity {
        diagram: String,
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        fallback: Fallback,
    },
    /// Seeded random reduced element
    Random {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        roots: usize,
        #[arg(long)]
        carets: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Number of n-ary trees with the given number of leaves
    Count {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        leaves: usize,
    },
    /// Graphviz rendering of a diagram
    Dot {
        diagram: String,
        #[command(flatten)]
        fallback: Fallback,
    },
    /// PROP morphisms, written `perm;forest`
    Prop {
        #[command(subcommand)]
        op: PropOp,
    },
    /// Whether the given integers are multiplicatively independent
    Independent {
        #[arg(required = true)]
        numbers: Vec<u64>,
    },
    /// Tiling of the unit cube by a cut tree `(axis,parts: child,...)`
    Boxes {
        tree: String,
        /// Part counts per axis, axes separated by ';', e.g. "2;3"
        #[arg(long)]
        dims: String,
    },
    /// Run a seeded property suite
    Check {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[arg(long, default_value_t = 1)]
        roots: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_carets: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PropOp {
    /// g ∘ f
    Compose {
        g: String,
        f: String,
        #[command(flatten)]
        fallback: Fallback,
    },
    /// Legs u, v with f ∘ u = g ∘ v
    SquareFill {
        f: String,
        g: String,
        #[command(flatten)]
        fallback: Fallback,
    },
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Domain(String),
    Suite(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Arity shared by all operands: the first one with an internal node fixes it.
fn common_arity(inputs: &[&str], fallback: &Fallback) -> usize {
    inputs.iter().find_map(|s| inferred_arity(s)).unwrap_or(fallback.arity)
}

fn diagrams(inputs: &[&str], fallback: &Fallback) -> Result<Vec<PairedDiagram>, Failure> {
    let n = common_arity(inputs, fallback);
    inputs
        .iter()
        .enumerate()
        .map(|(i, s)| parse_diagram(s, n).map_err(|e| Failure::Domain(format!("argument {}: {e}", i + 1))))
        .collect()
}

fn diagram(input: &str, fallback: &Fallback) -> Result<PairedDiagram, Failure> {
    Ok(diagrams(&[input], fallback)?.remove(0))
}

fn execute(command: Command) -> Result<String, Failure> {
    Ok(match command {
        Command::Reduce { diagram: s, fallback } => format!("{}\n", diagram(&s, &fallback)?.reduce()),
        Command::Mul { diagrams: ss, fallback } => {
            let refs: Vec<&str> = ss.iter().map(String::as_str).collect();
            let ds = diagrams(&refs, &fallback)?;
            let mut acc = ds[0].reduce();
            for d in &ds[1..] {
                acc = acc.multiply(d)?;
            }
            format!("{acc}\n")
        }
        Command::Inv { diagram: s, fallback } => format!("{}\n", diagram(&s, &fallback)?.invert()),
        Command::Eq { x, y, fallback } => {
            let ds = diagrams(&[&x, &y], &fallback)?;
            if ds[0].arity() != ds[1].arity() || ds[0].roots() != ds[1].roots() {
                return Err(Failure::Domain("elements belong to different groups".into()));
            }
            format!("{}\n", ds[0].equivalent(&ds[1]))
        }
        Command::Act { diagram: s, word, component, fallback } => {
            let d = diagram(&s, &fallback)?;
            let root = component_index(component, d.roots())?;
            let w = text::parse_word(&word, d.arity())?;
            let image = to_prefix_map(&d).apply(&LeafAddress::new(root, w))?;
            format!("{}:{}\n", image.root + 1, format_word(&image.word, d.arity()))
        }
        Command::Eval { diagram: s, rational, component, fallback } => {
            let d = diagram(&s, &fallback)?;
            let root = component_index(component, d.roots())?;
            let x = NAdic::parse(&rational, d.arity(), root)?;
            let y = eval_pl(&d, &x)?;
            format!("{}:{}\n", y.component() + 1, y)
        }
        Command::Rules { diagram: s, canonical, fallback } => {
            let pm = to_prefix_map(&diagram(&s, &fallback)?);
            let pm = if canonical { pm.canonical() } else { pm };
            pm.rules().iter().map(|(u, v)| format!("{u} -> {v}\n")).collect()
        }
        Command::Member { diagram: s, fallback } => {
            let d = diagram(&s, &fallback)?;
            format!("F {}\nT {}\n", d.is_in_f(), d.is_in_t())
        }
        Command::Stabilize { diagram: s, fallback } => format!("{}\n", diagram(&s, &fallback)?.stabilize()),
        Command::Periodicity { diagram: s, inverse, fallback } => {
            let d = diagram(&s, &fallback)?;
            let image = if inverse { d.periodicity_inverse()? } else { d.periodicity_iso() };
            format!("{image}\n")
        }
        Command::Random { arity, roots, carets, seed } => {
            format!("{}\n", PairedDiagram::random(arity, roots, carets, seed)?)
        }
        Command::Count { arity, leaves } => {
            if arity < 2 {
                return Err(Error::InvalidArity(arity).into());
            }
            format!("{}\n", count_trees(arity, leaves))
        }
        Command::Dot { diagram: s, fallback } => render_dot(&diagram(&s, &fallback)?),
        Command::Prop { op } => match op {
            PropOp::Compose { g, f, fallback } => {
                let n = common_arity(&[&g, &f], &fallback);
                let (g, f) = (parse_morphism(&g, n)?, parse_morphism(&f, n)?);
                format!("{}\n", g.compose(&f)?)
            }
            PropOp::SquareFill { f, g, fallback } => {
                let n = common_arity(&[&f, &g], &fallback);
                let (f, g) = (parse_morphism(&f, n)?, parse_morphism(&g, n)?);
                let (u, v) = square_fill(&f, &g)?;
                format!("{u}\n{v}\n")
            }
        },
        Command::Independent { numbers } => {
            if let Some(bad) = numbers.iter().find(|&&n| n < 2) {
                return Err(Failure::Domain(format!("{bad} is below 2")));
            }
            format!("{}\n", independence_check(&numbers))
        }
        Command::Boxes { tree, dims } => {
            let spec = parse_cut_spec(&dims)?;
            let ct = parse_cut_tree(&tree, &spec)?;
            ct.boxes().iter().map(|b| format!("{b}\n")).collect()
        }
        Command::Check { suite, arity, roots, trials, seed, max_carets } => {
            let cfg = SuiteConfig { arity, roots, trials, seed, max_carets, ..SuiteConfig::default() };
            let report = run_suite(suite, &cfg)?;
            let text = format!("{report}\n");
            if !report.passed() {
                return Err(Failure::Suite(text));
            }
            text
        }
    })
}

fn component_index(component: usize, roots: usize) -> Result<usize, Failure> {
    if component == 0 || component > roots {
        return Err(Failure::Domain(format!("component {component} out of range 1..={roots}")));
    }
    Ok(component - 1)
}

/// Run the program on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: rendered, stderr: String::new() }
                }
                _ => Outcome { code: 1, stdout: String::new(), stderr: rendered },
            };
        }
    };
    match execute(cli.command) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Failure::Domain(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Suite(report)) => Outcome { code: 2, stdout: report, stderr: String::new() },
    }
}
