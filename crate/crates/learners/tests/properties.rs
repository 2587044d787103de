use gkat_automata::{g_isomorphic, to_moore};
use gkat_core::*;
use learners::*;
use proptest::prelude::*;

fn alphabet(tests: usize, actions: usize) -> Alphabet {
    let t: Vec<String> = (0..tests).map(|i| format!("t{i}")).collect();
    let p: Vec<String> = (0..actions).map(|i| format!("p{i}")).collect();
    Alphabet::new(&t, &p).unwrap()
}

fn bexpr(tests: usize) -> impl Strategy<Value = BExpr> {
    let leaf = prop_oneof![
        Just(BExpr::Zero),
        Just(BExpr::One),
        (0..tests).prop_map(BExpr::Test)
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BExpr::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BExpr::or(a, b)),
            inner.prop_map(BExpr::not),
        ]
    })
}

fn expr(tests: usize, actions: usize) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0..actions).prop_map(Expr::Act),
        bexpr(tests).prop_map(Expr::Test)
    ];
    leaf.prop_recursive(4, 24, 3, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(e, f)| Expr::seq(e, f)),
            (bexpr(tests), inner.clone(), inner.clone()).prop_map(|(b, e, f)| Expr::ite(b, e, f)),
            (bexpr(tests), inner).prop_map(|(b, e)| Expr::while_do(b, e)),
        ]
    })
}

fn case() -> impl Strategy<Value = (Alphabet, Expr)> {
    (1usize..=2, 1usize..=2).prop_flat_map(|(t, p)| (Just(alphabet(t, p)), expr(t, p)))
}

fn options() -> impl Strategy<Value = GlOptions> {
    (any::<bool>(), any::<bool>()).prop_map(|(optimize_cex, infer_zeros)| GlOptions {
        optimize_cex,
        infer_zeros,
        verify_inferred: true,
        trace: false,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gl_star_learns_the_language((a, e) in case(), opts in options()) {
        let mut t = ExprTeacher::new(&a, &e).unwrap();
        let r = gl_star(&mut t, opts).unwrap();
        let lang = lang_upto(&a, &e, 3);
        for w in enumerate_upto(&a, 3) {
            prop_assert_eq!(r.automaton.accepts(&w), lang.contains(&w), "{}", w.render(&a));
        }
        prop_assert!(g_isomorphic(&r.automaton, t.target()));
        prop_assert!(r.stats.failed_equivalence as usize <= r.automaton.num_states());
        prop_assert_eq!(r.stats.equivalence, r.stats.failed_equivalence + 1);
    }

    #[test]
    fn gl_star_final_table_is_well_formed((a, e) in case(), opts in options()) {
        let mut t = ExprTeacher::new(&a, &e).unwrap();
        let r = gl_star(&mut t, opts).unwrap();
        let table = &r.table;
        prop_assert!(table.closedness_defect().is_none());
        let s: Vec<GuardedWord> = table.s_words().cloned().collect();
        prop_assert_eq!(s.len(), r.automaton.num_states());
        for w in &s {
            if let Some((_, init)) = w.pairs().split_last() {
                prop_assert!(s.contains(&GuardedWord::from_pairs(init.to_vec())));
            }
        }
        for c in table.columns() {
            for suffix in c.suffixes() {
                prop_assert!(table.columns().contains(&suffix));
            }
        }
        for w in &s {
            let row = table.row(w).unwrap();
            for (i, c) in table.columns().iter().enumerate() {
                prop_assert_eq!(row.contains(i), t.target().accepts(&w.then(c)));
            }
        }
        let cells = table.num_rows() * table.columns().len();
        prop_assert!(r.stats.membership as usize + table.num_inferred() >= cells);
    }

    #[test]
    fn gl_star_respects_the_query_bound((a, e) in case()) {
        let mut t = ExprTeacher::new(&a, &e).unwrap();
        let target = t.target().clone();
        let r = gl_star(&mut t, GlOptions::default()).unwrap();
        let n = to_moore(&target).minimise().num_states() as u64;
        // With a one-state Moore machine the language is empty and the bound is 0.
        prop_assume!(n >= 2);
        let (at, sigma) = (a.num_atoms() as u64, a.num_actions() as u64);
        let m = r.counterexamples.iter().map(|z| z.action_len() as u64).max().unwrap_or(0);
        let bound = ((n - 1) + (n - 1) * at * sigma) * (at + m * (n - 1));
        prop_assert!(r.stats.membership <= bound, "{} > {}", r.stats.membership, bound);
    }

    #[test]
    fn l_star_learns_the_moore_machine((a, e) in case()) {
        let mut t = ExprTeacher::new(&a, &e).unwrap();
        let target = to_moore(t.target()).minimise();
        let r = l_star(&mut t, false).unwrap();
        prop_assert!(r.automaton.isomorphic(&target));
        prop_assert_eq!(r.stats.membership % a.num_atoms() as u64, 0);
        prop_assert!(r.table.closedness_defect().is_none());
    }
}
