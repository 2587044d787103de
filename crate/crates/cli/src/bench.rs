//! The query-count benchmark suites.

use std::time::{Duration, Instant};

use gkat_core::{parse_expr, Alphabet};
use learners::{gl_star, l_star, ExprTeacher, GlOptions, LearnError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Suite {
    /// `if t1 then do p1 else do p2` over actions `p1, p2, p3`.
    Ifelse,
    /// `(while t1 do p1); do p2` over actions `p1, p2`.
    While,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Algo {
    /// GL*, learning G-automata.
    Gl,
    /// L*, learning Moore machines.
    Lstar,
}

impl Suite {
    pub const ALL: [Suite; 2] = [Suite::Ifelse, Suite::While];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ifelse => "ifelse",
            Suite::While => "while",
        }
    }

    pub fn alphabet(self, n_tests: usize) -> Alphabet {
        let tests: Vec<String> = (1..=n_tests).map(|i| format!("t{i}")).collect();
        let actions: &[&str] = match self {
            Suite::Ifelse => &["p1", "p2", "p3"],
            Suite::While => &["p1", "p2"],
        };
        Alphabet::new(&tests, actions).expect("suite alphabets are valid")
    }

    pub fn expression(self) -> &'static str {
        match self {
            Suite::Ifelse => "if t1 then do p1 else do p2",
            Suite::While => "(while t1 do p1); do p2",
        }
    }

    pub fn teacher(self, n_tests: usize) -> ExprTeacher {
        let a = self.alphabet(n_tests);
        let e = parse_expr(self.expression(), &a).expect("suite expressions parse");
        ExprTeacher::new(&a, &e).expect("suite targets are small")
    }
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Gl => "gl",
            Algo::Lstar => "lstar",
        }
    }
}

/// One benchmark measurement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub suite: Suite,
    pub n_tests: usize,
    pub n_actions: usize,
    pub algo: Algo,
    pub membership_queries: u64,
    pub equivalence_queries: u64,
    pub states: usize,
    pub wall: Duration,
}

/// Learns the suite target with `n_tests` tests by plain GL* or by L*.
pub fn run_cell(suite: Suite, n_tests: usize, algo: Algo) -> Result<BenchRecord, LearnError> {
    let start = Instant::now();
    let mut teacher = suite.teacher(n_tests);
    let (stats, states) = match algo {
        Algo::Gl => {
            let r = gl_star(&mut teacher, GlOptions::default())?;
            (r.stats, r.automaton.num_states())
        }
        Algo::Lstar => {
            let r = l_star(&mut teacher, false)?;
            (r.stats, r.automaton.num_states())
        }
    };
    Ok(BenchRecord {
        suite,
        n_tests,
        n_actions: suite.alphabet(n_tests).num_actions(),
        algo,
        membership_queries: stats.membership,
        equivalence_queries: stats.equivalence,
        states,
        wall: start.elapsed(),
    })
}

/// Runs every `(suite, n, algo)` cell on its own thread and returns the
/// records ordered by suite, then `n`, then algorithm.
pub fn bench(suites: &[Suite], ns: &[usize]) -> Result<Vec<BenchRecord>, LearnError> {
    let cells: Vec<(Suite, usize, Algo)> = suites
        .iter()
        .flat_map(|&s| {
            ns.iter()
                .flat_map(move |&n| [(s, n, Algo::Gl), (s, n, Algo::Lstar)])
        })
        .collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = cells
            .iter()
            .map(|&(s, n, a)| scope.spawn(move || run_cell(s, n, a)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("benchmark cell panicked"))
            .collect()
    })
}

/// CSV with columns `suite,n_tests,algo,membership_queries,
/// equivalence_queries,states`, one line per record in the given order.
pub fn bench_csv(records: &[BenchRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "suite",
        "n_tests",
        "algo",
        "membership_queries",
        "equivalence_queries",
        "states",
    ])
    .expect("writing to memory");
    for r in records {
        w.write_record([
            r.suite.name().to_string(),
            r.n_tests.to_string(),
            r.algo.name().to_string(),
            r.membership_queries.to_string(),
            r.equivalence_queries.to_string(),
            r.states.to_string(),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("utf-8 output")
}
