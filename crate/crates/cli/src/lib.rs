//! The `gkat` command-line tool: learning runs, canonical acceptors,
//! equivalence checks, minimisation and the query-count benchmark.
//!
//! Exit codes: 0 success, 1 inequivalent, 2 usage or input error,
//! 3 resource cap exceeded, 4 internal or I/O failure.

pub mod bench;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use canonical::{AcceptorKind, CanonError, Construction, SuccinctAutomaton};
use clap::{Args, Parser, Subcommand, ValueEnum};
use expr_deriv::{expr_to_automaton, DerivError};
use gkat_automata::{
    g_from_dot, g_to_dot, moore_to_dot, split_letter, to_moore, AtomSet, GAutomaton,
};
use gkat_core::{parse_expr, Alphabet, Atom, GkatError, GuardedString, GuardedWord};
use learners::{gl_star, l_star, ExprTeacher, GlOptions, LearnError, TraceEvent};

pub use bench::{bench, bench_csv, run_cell, Algo, BenchRecord, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "gkat",
    version,
    about = "Learning and canonical acceptors for GKAT automata"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Learn the minimal automaton of an expression with GL* or L*.
    Learn(LearnArgs),
    /// Build a canonical succinct acceptor of a regular expression.
    Canonize(CanonizeArgs),
    /// Reproduce the membership-query tables of the benchmark suites.
    Bench(BenchArgs),
    /// Decide whether two expressions denote the same language.
    Equiv(EquivArgs),
    /// Print the minimal automaton of an expression or a regex.
    Minimise(MinimiseArgs),
}

#[derive(Debug, Args)]
pub struct AlphabetArgs {
    /// Primitive tests, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub tests: Vec<String>,
    /// Primitive actions, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub actions: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    /// The learned automaton in Graphviz format.
    Dot,
    /// The final observation table.
    Csv,
}

#[derive(Debug, Args)]
pub struct LearnArgs {
    #[command(flatten)]
    pub alphabet: AlphabetArgs,
    /// Target expression.
    #[arg(long)]
    pub expr: String,
    #[arg(long, value_enum, default_value = "gl")]
    pub algo: Algo,
    /// Add only the suffixes of the distinguishing part of a counterexample.
    #[arg(long)]
    pub optimize_cex: bool,
    /// Fill table cells that determinism forces to 0 without asking.
    #[arg(long)]
    pub infer_zeros: bool,
    /// Check every inferred 0 with an uncharged query.
    #[arg(long, requires = "infer_zeros")]
    pub verify_inferred: bool,
    #[arg(long, value_enum, default_value = "dot")]
    pub emit: Emit,
    /// Write the artifact here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write a CSV transcript of queries, closing steps and hypotheses.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CanonizeArgs {
    /// One of rfsa, atomaton, distromaton, xor, xorcaba.
    #[arg(long, value_parser = parse_construction)]
    pub construction: Construction,
    #[arg(long)]
    pub regex: String,
    /// Letters, comma-separated; defaults to the letters of the regex.
    #[arg(long)]
    pub alphabet: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Run one suite only.
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    /// Include 8 and 9 tests.
    #[arg(long)]
    pub full: bool,
    /// Explicit numbers of tests, comma-separated, each in 1..=9.
    #[arg(long, value_delimiter = ',')]
    pub n_tests: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EquivArgs {
    #[command(flatten)]
    pub alphabet: AlphabetArgs,
    /// Read LEFT and RIGHT as G-automaton DOT files, as written by `learn`
    /// or `minimise`, instead of expressions.
    #[arg(long)]
    pub files: bool,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Args)]
pub struct MinimiseArgs {
    #[command(flatten)]
    pub alphabet: AlphabetArgs,
    /// Expression whose minimal G-automaton is printed.
    #[arg(long, conflicts_with = "regex", required_unless_present = "regex")]
    pub expr: Option<String>,
    /// Regex whose minimal DFA is printed.
    #[arg(long)]
    pub regex: Option<String>,
    /// Regex letters, comma-separated.
    #[arg(long = "alphabet", requires = "regex")]
    pub letters: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_construction(s: &str) -> Result<Construction, String> {
    s.parse().map_err(|e: CanonError| e.to_string())
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Cap(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Cap(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<GkatError> for CliError {
    fn from(e: GkatError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<DerivError> for CliError {
    fn from(e: DerivError) -> Self {
        CliError::Cap(e.to_string())
    }
}

impl From<LearnError> for CliError {
    fn from(e: LearnError) -> Self {
        match e {
            LearnError::Deriv(d) => d.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<CanonError> for CliError {
    fn from(e: CanonError) -> Self {
        match e {
            CanonError::Cap(_) => CliError::Cap(e.to_string()),
            CanonError::Invariant(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

/// Result of a successful command: the exit code, the primary artifact
/// and a report for standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub report: String,
}

fn alphabet_of(args: &AlphabetArgs) -> Result<Alphabet, CliError> {
    Ok(Alphabet::new(&args.tests, &args.actions)?)
}

fn letters_of(spec: &str) -> Result<Vec<char>, CliError> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let mut it = s.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(CliError::Usage(format!("`{s}` is not a single letter"))),
            }
        })
        .collect()
}

fn deliver(out: &Option<PathBuf>, text: String) -> Result<String, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn render_atom_set(alphabet: &Alphabet, set: &AtomSet) -> String {
    let atoms: Vec<String> = set
        .ones()
        .map(|i| alphabet.render_atom(Atom(i as u32)))
        .collect();
    format!("{{{}}}", atoms.join(","))
}

fn moore_dot(alphabet: &Alphabet, m: &gkat_automata::MooreAutomaton<AtomSet>) -> String {
    let na = alphabet.num_actions();
    moore_to_dot(
        m,
        |l| {
            let (a, p) = split_letter(l, na);
            format!("{}|{}", alphabet.render_atom(a), alphabet.actions()[p])
        },
        |o| render_atom_set(alphabet, o),
    )
}

fn trace_csv(events: &[TraceEvent]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["kind", "payload"])
        .expect("writing to memory");
    for e in events {
        w.write_record([e.kind.as_str(), e.payload.as_str()])
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("utf-8 output")
}

fn learn(args: &LearnArgs) -> Result<Output, CliError> {
    let alphabet = alphabet_of(&args.alphabet)?;
    let e = parse_expr(&args.expr, &alphabet)?;
    let mut teacher = ExprTeacher::new(&alphabet, &e)?;
    let tracing = args.trace.is_some();
    let (artifact, stats, states, trace) = match args.algo {
        Algo::Gl => {
            let opts = GlOptions {
                optimize_cex: args.optimize_cex,
                infer_zeros: args.infer_zeros,
                verify_inferred: args.verify_inferred,
                trace: tracing,
            };
            let r = gl_star(&mut teacher, opts)?;
            let artifact = match args.emit {
                Emit::Dot => g_to_dot(&r.automaton),
                Emit::Csv => r.table.to_csv(),
            };
            (artifact, r.stats, r.automaton.num_states(), r.trace)
        }
        Algo::Lstar => {
            if args.optimize_cex || args.infer_zeros {
                return Err(CliError::Usage(
                    "--optimize-cex and --infer-zeros apply to --algo gl".into(),
                ));
            }
            let r = l_star(&mut teacher, tracing)?;
            let artifact = match args.emit {
                Emit::Dot => moore_dot(&alphabet, &r.automaton),
                Emit::Csv => r.table.to_csv(),
            };
            (artifact, r.stats, r.automaton.num_states(), r.trace)
        }
    };
    if let Some(path) = &args.trace {
        std::fs::write(path, trace_csv(&trace))?;
    }
    let report = format!(
        "algo,membership_queries,equivalence_queries,failed_equivalence_queries,states\n{},{},{},{},{}\n",
        args.algo.name(),
        stats.membership,
        stats.equivalence,
        stats.failed_equivalence,
        states
    );
    Ok(Output {
        code: 0,
        stdout: deliver(&args.out, artifact)?,
        report,
    })
}

fn canonize(args: &CanonizeArgs) -> Result<Output, CliError> {
    let letters = args.alphabet.as_deref().map(letters_of).transpose()?;
    let dfa = canonical::minimal_dfa(&args.regex, letters.as_deref())?;
    let c = canonical::canonize_full(&dfa, args.construction)?;
    let report = format!(
        "construction={} states={} minimal_dfa_states={} classes={} generators={}\n",
        args.construction.name(),
        c.automaton.num_states(),
        c.dfa.num_states(),
        c.algebra.num_classes(),
        c.generators.len()
    );
    Ok(Output {
        code: 0,
        stdout: deliver(&args.out, c.automaton.to_dot())?,
        report,
    })
}

fn run_bench(args: &BenchArgs) -> Result<Output, CliError> {
    let ns: Vec<usize> = if !args.n_tests.is_empty() {
        if let Some(n) = args.n_tests.iter().find(|n| !(1..=9).contains(*n)) {
            return Err(CliError::Usage(format!("--n-tests {n} is outside 1..=9")));
        }
        args.n_tests.clone()
    } else if args.full {
        (1..=9).collect()
    } else {
        (1..=7).collect()
    };
    let suites: Vec<Suite> = match args.suite {
        Some(s) => vec![s],
        None => Suite::ALL.to_vec(),
    };
    let start = Instant::now();
    let records = bench(&suites, &ns)?;
    Ok(Output {
        code: 0,
        stdout: deliver(&args.out, bench_csv(&records))?,
        report: format!("{} cells in {:.2?}\n", records.len(), start.elapsed()),
    })
}

/// A shortest guarded string in exactly one of the languages of two
/// G-automata over the same alphabet, least in letter order.
pub fn difference_witness(a: &GAutomaton, b: &GAutomaton) -> Option<GuardedString> {
    let (ma, mb) = (to_moore(&a.minimise()), to_moore(&b.minimise()));
    let letters = ma.bisim_cex(&mb)?;
    let (oa, ob) = (ma.accepts(&letters), mb.accepts(&letters));
    let alphabet = a.alphabet();
    let atom = alphabet
        .atoms()
        .find(|x| oa.contains(x.index()) != ob.contains(x.index()))
        .expect("differing outputs differ on some atom");
    let na = alphabet.num_actions();
    let word = GuardedWord::from_pairs(letters.iter().map(|&l| split_letter(l, na)).collect());
    Some(word.then(&GuardedString::atom(atom)))
}

fn equiv(args: &EquivArgs) -> Result<Output, CliError> {
    let alphabet = alphabet_of(&args.alphabet)?;
    let operand = |text: &str| -> Result<GAutomaton, CliError> {
        if args.files {
            let dot = std::fs::read_to_string(text)
                .map_err(|e| CliError::Usage(format!("cannot read `{text}`: {e}")))?;
            g_from_dot(&dot, &alphabet).map_err(|e| CliError::Usage(format!("{text}: {e}")))
        } else {
            Ok(expr_to_automaton(&alphabet, &parse_expr(text, &alphabet)?)?)
        }
    };
    let left = operand(&args.left)?;
    let right = operand(&args.right)?;
    Ok(match difference_witness(&left, &right) {
        None => Output {
            code: 0,
            stdout: "equivalent\n".into(),
            report: String::new(),
        },
        Some(w) => {
            let side = if left.accepts(&w) { "left" } else { "right" };
            Output {
                code: 1,
                stdout: format!(
                    "inequivalent: {} (accepted by {side} only)\n",
                    w.render(&alphabet)
                ),
                report: String::new(),
            }
        }
    })
}

fn minimise(args: &MinimiseArgs) -> Result<Output, CliError> {
    if let Some(text) = &args.expr {
        let alphabet = alphabet_of(&args.alphabet)?;
        let m = expr_to_automaton(&alphabet, &parse_expr(text, &alphabet)?)?.minimise();
        return Ok(Output {
            code: 0,
            report: format!("states={}\n", m.num_states()),
            stdout: deliver(&args.out, g_to_dot(&m))?,
        });
    }
    let regex = args
        .regex
        .as_deref()
        .expect("clap requires --expr or --regex");
    let letters = args.letters.as_deref().map(letters_of).transpose()?;
    let dfa = canonical::minimal_dfa(regex, letters.as_deref())?;
    let delta = (0..dfa.num_states())
        .map(|q| {
            (0..dfa.alphabet().len())
                .map(|l| vec![dfa.step(q, l)])
                .collect()
        })
        .collect();
    let accepting: Vec<usize> = (0..dfa.num_states())
        .filter(|&q| dfa.is_accepting(q))
        .collect();
    let as_nfa = SuccinctAutomaton::new(
        AcceptorKind::Nfa,
        dfa.alphabet().to_vec(),
        delta,
        &accepting,
        &[dfa.initial()],
    )?;
    Ok(Output {
        code: 0,
        report: format!("states={}\n", dfa.num_states()),
        stdout: deliver(&args.out, as_nfa.to_dot())?,
    })
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Learn(a) => learn(a),
        Command::Canonize(a) => canonize(a),
        Command::Bench(a) => run_bench(a),
        Command::Equiv(a) => equiv(a),
        Command::Minimise(a) => minimise(a),
    }
}

/// Parses `args`, runs the command, prints its output and returns the
/// exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            let _ = std::io::stdout().flush();
            eprint!("{}", out.report);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
