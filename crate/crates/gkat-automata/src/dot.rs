//! Graphviz output. Nodes are named `q0..qn` in breadth-first order from
//! the initial state, followed by unreachable states in index order. The
//! initial state is marked by an edge from a point-shaped pseudo-node.
//! [`g_from_dot`] reads the G-automaton format back.

use std::fmt::Write;
use std::hash::Hash;

use gkat_core::{Alphabet, Atom};

use crate::error::AutomataError;
use crate::gauto::{GAutomaton, Outcome};
use crate::moore::MooreAutomaton;

fn naming(order: Vec<usize>, n: usize) -> Vec<usize> {
    let mut name = vec![usize::MAX; n];
    let mut next = 0;
    for x in order.into_iter().chain(0..n) {
        if name[x] == usize::MAX {
            name[x] = next;
            next += 1;
        }
    }
    name
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT rendering of a G-automaton. Edges are labelled `atom|action` and the
/// accepted atoms of a state are listed in its `accept` attribute.
pub fn g_to_dot(aut: &GAutomaton) -> String {
    let alphabet = aut.alphabet();
    let n = aut.num_states();
    let name = naming(aut.bfs_order(), n);
    let mut by_name: Vec<usize> = (0..n).collect();
    by_name.sort_by_key(|&x| name[x]);
    let mut s = String::new();
    writeln!(s, "digraph G {{").unwrap();
    writeln!(s, "  rankdir=LR;").unwrap();
    writeln!(s, "  init [shape=point];").unwrap();
    for &x in &by_name {
        let acc: Vec<String> = alphabet
            .atoms()
            .filter(|&a| aut.delta(x, a) == Outcome::Accept)
            .map(|a| alphabet.render_atom(a))
            .collect();
        writeln!(
            s,
            "  q{} [shape=circle, accept=\"{}\"];",
            name[x],
            escape(&acc.join(","))
        )
        .unwrap();
    }
    writeln!(s, "  init -> q{};", name[aut.initial()]).unwrap();
    for &x in &by_name {
        for a in alphabet.atoms() {
            if let Outcome::Step(p, y) = aut.delta(x, a) {
                writeln!(
                    s,
                    "  q{} -> q{} [label=\"{}|{}\"];",
                    name[x],
                    name[y],
                    escape(&alphabet.render_atom(a)),
                    escape(&alphabet.actions()[p])
                )
                .unwrap();
            }
        }
    }
    writeln!(s, "}}").unwrap();
    s
}

/// DOT rendering of a Moore machine, with caller-supplied renderings of
/// letters and outputs. Parallel edges are merged into one edge whose label
/// lists the letters separated by `, `.
pub fn moore_to_dot<O, L, R>(m: &MooreAutomaton<O>, letter: L, output: R) -> String
where
    O: Clone + Eq + Hash,
    L: Fn(usize) -> String,
    R: Fn(&O) -> String,
{
    let n = m.num_states();
    let name = naming(m.bfs_order(), n);
    let mut by_name: Vec<usize> = (0..n).collect();
    by_name.sort_by_key(|&x| name[x]);
    let mut s = String::new();
    writeln!(s, "digraph M {{").unwrap();
    writeln!(s, "  rankdir=LR;").unwrap();
    writeln!(s, "  init [shape=point];").unwrap();
    for &x in &by_name {
        writeln!(
            s,
            "  q{} [shape=circle, out=\"{}\"];",
            name[x],
            escape(&output(m.output(x)))
        )
        .unwrap();
    }
    writeln!(s, "  init -> q{};", name[m.initial()]).unwrap();
    for &x in &by_name {
        let mut targets: Vec<(usize, Vec<String>)> = Vec::new();
        for l in 0..m.num_letters() {
            let y = name[m.step(x, l)];
            match targets.iter_mut().find(|(t, _)| *t == y) {
                Some((_, ls)) => ls.push(letter(l)),
                None => targets.push((y, vec![letter(l)])),
            }
        }
        targets.sort_by_key(|(t, _)| *t);
        for (y, ls) in targets {
            writeln!(
                s,
                "  q{} -> q{} [label=\"{}\"];",
                name[x],
                y,
                escape(&ls.join(", "))
            )
            .unwrap();
        }
    }
    writeln!(s, "}}").unwrap();
    s
}

fn unescape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => out.extend(chars.next()),
            c => out.push(c),
        }
    }
    out
}

/// The contents of the quoted attribute `key="..."` in `line`.
fn attribute(line: &str, key: &str) -> Option<String> {
    let start = line.find(&format!("{key}=\""))? + key.len() + 2;
    let rest = &line[start..];
    let mut end = None;
    let mut escaped = false;
    for (i, c) in rest.char_indices() {
        match c {
            '\\' if !escaped => escaped = true,
            '"' if !escaped => {
                end = Some(i);
                break;
            }
            _ => escaped = false,
        }
    }
    Some(unescape(&rest[..end?]))
}

fn state_name(token: &str) -> Option<usize> {
    token.strip_prefix('q')?.parse().ok()
}

/// Reads the format written by [`g_to_dot`] back into a G-automaton over
/// `alphabet`. States are `q0..qn` and must all be declared; atoms without
/// an edge or an `accept` entry reject.
pub fn g_from_dot(text: &str, alphabet: &Alphabet) -> Result<GAutomaton, AutomataError> {
    let malformed =
        |line: usize, msg: String| AutomataError::Malformed(format!("line {}: {msg}", line + 1));
    let atom = |line: usize, s: &str| {
        alphabet
            .parse_atom(s.trim())
            .map_err(|e| malformed(line, e.to_string()))
    };
    let mut delta: Vec<Option<Vec<Outcome>>> = Vec::new();
    let mut edges: Vec<(usize, usize, usize, Atom, usize)> = Vec::new();
    let mut initial = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty()
            || line == "}"
            || line.starts_with("digraph")
            || line.starts_with("rankdir")
            || line.starts_with("init [")
        {
            continue;
        }
        let head = line.split_whitespace().next().unwrap_or_default();
        if let Some(rest) = line.strip_prefix("init -> ") {
            let target = rest.trim_end_matches(';').trim();
            initial = Some(
                state_name(target).ok_or_else(|| malformed(i, format!("bad state `{target}`")))?,
            );
        } else if line.contains("->") {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let (x, y) = match parts.as_slice() {
                [x, "->", y, ..] => (state_name(x), state_name(y)),
                _ => (None, None),
            };
            let (x, y) = x.zip(y).ok_or_else(|| malformed(i, "bad edge".into()))?;
            let label = attribute(line, "label")
                .ok_or_else(|| malformed(i, "edge without label".into()))?;
            let (a, p) = label
                .rsplit_once('|')
                .ok_or_else(|| malformed(i, format!("label `{label}` is not atom|action")))?;
            let p = alphabet
                .action_index(p.trim())
                .ok_or_else(|| malformed(i, format!("unknown action `{p}`")))?;
            edges.push((i, x, y, atom(i, a)?, p));
        } else if let Some(x) = state_name(head) {
            let accept = attribute(line, "accept").unwrap_or_default();
            let mut row = vec![Outcome::Reject; alphabet.num_atoms()];
            for a in accept.split(',').filter(|s| !s.trim().is_empty()) {
                row[atom(i, a)?.index()] = Outcome::Accept;
            }
            if delta.len() <= x {
                delta.resize(x + 1, None);
            }
            if delta[x].replace(row).is_some() {
                return Err(malformed(i, format!("state q{x} declared twice")));
            }
        } else {
            return Err(malformed(i, format!("unexpected `{line}`")));
        }
    }
    let mut delta: Vec<Vec<Outcome>> = delta
        .into_iter()
        .enumerate()
        .map(|(x, row)| {
            row.ok_or_else(|| AutomataError::Malformed(format!("state q{x} is not declared")))
        })
        .collect::<Result<_, _>>()?;
    for (i, x, y, a, p) in edges {
        if x >= delta.len() || y >= delta.len() {
            return Err(malformed(i, "edge between undeclared states".into()));
        }
        let cell = &mut delta[x][a.index()];
        if *cell != Outcome::Reject {
            return Err(malformed(
                i,
                format!("state q{x} has two outcomes on one atom"),
            ));
        }
        *cell = Outcome::Step(p, y);
    }
    let initial = initial.ok_or_else(|| AutomataError::Malformed("no initial state".into()))?;
    GAutomaton::new(alphabet.clone(), delta, initial)
}
