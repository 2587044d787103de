use gkat_automata::{g_isomorphic, to_moore};
use gkat_core::{parse_expr, Alphabet, Atom, GuardedString, GuardedWord};
use learners::*;

fn while_teacher() -> ExprTeacher {
    let a = Alphabet::new(&["b"], &["p", "q"]).unwrap();
    let e = parse_expr("(while b do p); q", &a).unwrap();
    ExprTeacher::new(&a, &e).unwrap()
}

fn tests_named(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("t{i}")).collect()
}

fn ifelse_teacher(n: usize) -> ExprTeacher {
    let a = Alphabet::new(&tests_named(n), &["p1", "p2", "p3"]).unwrap();
    let e = parse_expr("if t1 then p1 else p2", &a).unwrap();
    ExprTeacher::new(&a, &e).unwrap()
}

fn loop_teacher(n: usize) -> ExprTeacher {
    let a = Alphabet::new(&tests_named(n), &["p1", "p2"]).unwrap();
    let e = parse_expr("(while t1 do p1); p2", &a).unwrap();
    ExprTeacher::new(&a, &e).unwrap()
}

fn gl(mut t: ExprTeacher, optimize_cex: bool) -> GlResult {
    let opts = GlOptions {
        optimize_cex,
        ..GlOptions::default()
    };
    gl_star(&mut t, opts).unwrap()
}

#[test]
fn while_example_gl_star_plain() {
    let t = while_teacher();
    let target = t.target().clone();
    let r = gl(t, false);
    assert_eq!(r.stats.membership, 36);
    assert_eq!(r.stats.equivalence, 2);
    assert_eq!(r.stats.failed_equivalence, 1);
    assert_eq!(r.automaton.num_states(), 2);
    assert!(g_isomorphic(&r.automaton, &target));
    let a = r.table.alphabet().clone();
    let cex: Vec<String> = r.counterexamples.iter().map(|z| z.render(&a)).collect();
    assert_eq!(cex, ["b p !b q b"]);
    assert_eq!(r.table.num_rows(), 9);
    assert_eq!(r.table.columns().len(), 4);
}

#[test]
fn while_example_initial_table_is_not_closed() {
    let mut t = while_teacher();
    let table = GlTable::new(&mut t, GlOptions::default()).unwrap();
    let a = table.alphabet().clone();
    let defect = table.closedness_defect().unwrap();
    assert_eq!(defect.render(&a), "!b q");
    assert_eq!(GuardedTeacher::stats(&t).membership, 10);
}

#[test]
fn while_example_first_hypothesis_has_no_loop() {
    let mut t = while_teacher();
    let mut table = GlTable::new(&mut t, GlOptions::default()).unwrap();
    let w = table.closedness_defect().unwrap();
    table.close_with(&w, &mut t).unwrap();
    assert!(table.closedness_defect().is_none());
    let h = table.hypothesis().unwrap();
    assert_eq!(h.num_states(), 2);
    assert_eq!(h.delta(0, Atom(0)), gkat_automata::Outcome::Reject);
}

#[test]
fn while_example_gl_star_optimized() {
    let r = gl(while_teacher(), true);
    assert_eq!(r.stats.membership, 27);
    assert_eq!(r.table.columns().len(), 3);
    let a = r.table.alphabet().clone();
    assert_eq!(r.table.columns()[2].render(&a), "!b q b");
}

#[test]
fn while_example_l_star() {
    let mut t = while_teacher();
    let target = to_moore(t.target()).minimise();
    let r = l_star(&mut t, false).unwrap();
    assert_eq!(r.stats.membership, 78);
    assert_eq!(r.stats.failed_equivalence, 1);
    assert_eq!(r.counterexamples, [vec![1, 3]]);
    assert_eq!(r.table.render_word(&r.counterexamples[0]), "b q !b q");
    assert_eq!(r.automaton.num_states(), 3);
    assert!(r.automaton.isomorphic(&target));
    assert_eq!(r.table.num_rows(), 13);
    assert_eq!(r.table.columns().len(), 3);
}

#[test]
fn ifelse_first_hypothesis_is_correct() {
    let r = gl(ifelse_teacher(1), false);
    assert_eq!(r.stats.membership, 26);
    assert_eq!(r.stats.equivalence, 1);
    assert!(r.counterexamples.is_empty());
    let mut t = ifelse_teacher(1);
    assert_eq!(l_star(&mut t, false).unwrap().stats.membership, 114);
}

#[test]
fn suite_counts_follow_closed_forms() {
    for n in 1..=4u32 {
        let a = 2u64.pow(n);
        assert_eq!(
            gl(ifelse_teacher(n as usize), false).stats.membership,
            a * (6 * a + 1)
        );
        assert_eq!(
            gl(loop_teacher(n as usize), false).stats.membership,
            (4 * a + 1) * (a + 2)
        );
        let mut t = ifelse_teacher(n as usize);
        assert_eq!(
            l_star(&mut t, false).unwrap().stats.membership,
            3 * a * (9 * a + 1)
        );
        let mut t = loop_teacher(n as usize);
        assert_eq!(
            l_star(&mut t, false).unwrap().stats.membership,
            3 * a * (6 * a + 1)
        );
    }
}

#[test]
fn frozen_suite_values() {
    let got: Vec<u64> = (1..=3)
        .map(|n| gl(loop_teacher(n), false).stats.membership)
        .collect();
    assert_eq!(got, [36, 102, 330]);
    let got: Vec<u64> = (1..=3)
        .map(|n| {
            l_star(&mut ifelse_teacher(n), false)
                .unwrap()
                .stats
                .membership
        })
        .collect();
    assert_eq!(got, [114, 444, 1752]);
}

#[test]
fn zero_inference_saves_queries_and_survives_audit() {
    let mut t = while_teacher();
    let opts = GlOptions {
        infer_zeros: true,
        verify_inferred: true,
        ..GlOptions::default()
    };
    let r = gl_star(&mut t, opts).unwrap();
    assert!(r.stats.membership < 36);
    assert_eq!(r.stats.verification as usize, r.table.num_inferred());
    assert!(r.table.num_inferred() > 0);
    assert!(g_isomorphic(&r.automaton, t.target()));
}

#[test]
fn distinct_strings_are_counted() {
    let mut t = while_teacher().track_distinct();
    let r = gl_star(&mut t, GlOptions::default()).unwrap();
    let distinct = r.stats.distinct_membership.unwrap();
    assert!(distinct <= r.stats.membership);
    assert!(distinct > 0);
}

#[test]
fn trace_and_csv() {
    let mut t = while_teacher();
    let opts = GlOptions {
        trace: true,
        ..GlOptions::default()
    };
    let r = gl_star(&mut t, opts).unwrap();
    let queries = r
        .trace
        .iter()
        .filter(|e| e.kind == TraceKind::Query)
        .count();
    assert_eq!(queries, 36);
    assert!(r
        .trace
        .iter()
        .any(|e| e.kind == TraceKind::Cex && e.payload == "b p !b q b"));
    let csv = r.table.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "part,row,b,!b,!b q b,b p !b q b");
    assert_eq!(lines.next().unwrap(), "S,ε,0,0,1,1");
    assert_eq!(csv.lines().count(), 10);
}

#[test]
fn table_rows_are_stored_once() {
    let r = gl(while_teacher(), false);
    let a = r.table.alphabet().clone();
    let bq = GuardedWord::empty().extend(a.parse_atom("!b").unwrap(), 1);
    assert!(r.table.row(&bq).is_some());
    let s: Vec<String> = r.table.s_words().map(|w| w.render(&a)).collect();
    assert_eq!(s, ["ε", "!b q"]);
    let z = GuardedString::parse("b p !b q b", &a).unwrap();
    assert!(r.table.columns().contains(&z));
}
