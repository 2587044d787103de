use expr_deriv::*;
use gkat_automata::{g_isomorphic, GAutomaton, Outcome};
use gkat_core::{lang_upto, parse_expr, Alphabet, Atom, Expr};

fn ab() -> Alphabet {
    Alphabet::new(&["b"], &["p", "q"]).unwrap()
}

const B: Atom = Atom(0);
const NB: Atom = Atom(1);

#[test]
fn accept_atom_examples() {
    let a = ab();
    assert!(accept_atom(&a, &parse_expr("assert b", &a).unwrap(), B));
    assert!(!accept_atom(&a, &parse_expr("p", &a).unwrap(), B));
    assert!(!accept_atom(&a, &parse_expr("p", &a).unwrap(), NB));
    assert!(!accept_atom(
        &a,
        &parse_expr("(while b do p); q", &a).unwrap(),
        NB
    ));
}

#[test]
fn derive_step_examples() {
    let a = ab();
    let e = parse_expr("(while b do p); q", &a).unwrap();
    assert_eq!(derive_step(&a, &e, B), DerivOutcome::Step(0, canonical(&e)));
    assert_eq!(derive_step(&a, &e, NB), DerivOutcome::Step(1, Expr::one()));
    assert_eq!(
        derive_step(&a, &Expr::Act(0), NB),
        DerivOutcome::Step(0, Expr::one())
    );
}

#[test]
fn canonical_form_examples() {
    let a = ab();
    let e = parse_expr("((p; 1); (1; q)); p", &a).unwrap();
    assert_eq!(canonical(&e), parse_expr("p; (q; p)", &a).unwrap());
    assert_eq!(canonical(&parse_expr("0; p", &a).unwrap()), Expr::zero());
    assert_eq!(canonical(&parse_expr("1; 1", &a).unwrap()), Expr::one());
    assert_eq!(
        canonical(&parse_expr("p; 0; q", &a).unwrap()),
        parse_expr("p; 0", &a).unwrap()
    );
}

#[test]
fn while_example_minimises_to_two_states() {
    let a = ab();
    let e = parse_expr("(while b do p); q", &a).unwrap();
    let aut = expr_to_automaton(&a, &e).unwrap();
    let golden = GAutomaton::new(
        a.clone(),
        vec![
            vec![Outcome::Step(0, 0), Outcome::Step(1, 1)],
            vec![Outcome::Accept, Outcome::Accept],
        ],
        0,
    )
    .unwrap();
    assert!(g_isomorphic(&aut.minimise(), &golden));
    for w in lang_upto(&a, &e, 3).strings {
        assert!(aut.accepts(&w));
    }
}

#[test]
fn zero_compiles_to_single_rejecting_state() {
    let a = ab();
    let aut = expr_to_automaton(&a, &parse_expr("assert 0", &a).unwrap()).unwrap();
    assert_eq!(aut.num_states(), 1);
    assert!(a.atoms().all(|x| aut.delta(0, x) == Outcome::Reject));
}

#[test]
fn if_example_minimises_to_two_states() {
    let a = Alphabet::new(&["t1"], &["p1", "p2", "p3"]).unwrap();
    let e = parse_expr("if t1 then do p1 else do p2", &a).unwrap();
    let m = expr_to_automaton(&a, &e).unwrap().minimise();
    assert_eq!(m.num_states(), 2);
}

#[test]
fn state_cap_is_enforced() {
    let a = ab();
    let e = parse_expr("(while b do p); q", &a).unwrap();
    assert_eq!(
        expr_to_automaton_capped(&a, &e, 1),
        Err(DerivError::StateCap(1))
    );
}
