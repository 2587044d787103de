use gkat_core::*;
use proptest::prelude::*;

fn alphabet() -> Alphabet {
    Alphabet::new(&["b", "c"], &["p", "q"]).unwrap()
}

fn bexpr() -> impl Strategy<Value = BExpr> {
    let leaf = prop_oneof![
        Just(BExpr::Zero),
        Just(BExpr::One),
        (0usize..2).prop_map(BExpr::Test)
    ];
    leaf.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BExpr::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BExpr::or(a, b)),
            inner.prop_map(BExpr::not),
        ]
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0usize..2).prop_map(Expr::Act),
        bexpr().prop_map(Expr::Test)
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(e, f)| Expr::seq(e, f)),
            (bexpr(), inner.clone(), inner.clone()).prop_map(|(b, e, f)| Expr::ite(b, e, f)),
            (bexpr(), inner).prop_map(|(b, e)| Expr::while_do(b, e)),
        ]
    })
}

fn guarded_string() -> impl Strategy<Value = GuardedString> {
    (0u32..4, prop::collection::vec((0usize..2, 0u32..4), 0..4)).prop_map(|(a, rest)| {
        let mut w = GuardedString::atom(Atom(a));
        for (p, b) in rest {
            w.push(p, Atom(b));
        }
        w
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_parse_round_trip(e in expr()) {
        let a = alphabet();
        let text = e.display(&a).to_string();
        prop_assert_eq!(parse_expr(&text, &a).unwrap(), e, "{}", text);
    }

    #[test]
    fn windows_are_monotone(e in expr()) {
        let a = alphabet();
        let small = lang_upto(&a, &e, 2);
        let large = lang_upto(&a, &e, 3);
        prop_assert!(small.strings.is_subset(&large.strings));
        prop_assert_eq!(large.truncate(2).strings, small.strings);
    }

    #[test]
    fn expression_languages_are_deterministic(e in expr()) {
        let a = alphabet();
        prop_assert!(is_deterministic(&lang_upto(&a, &e, 3)));
    }

    #[test]
    fn fusion_is_associative_with_atom_unit(e in expr(), f in expr(), g in expr()) {
        let a = alphabet();
        let (l, k, m) = (lang_upto(&a, &e, 3), lang_upto(&a, &f, 3), lang_upto(&a, &g, 3));
        prop_assert_eq!(fusion(&fusion(&l, &k), &m), fusion(&l, &fusion(&k, &m)));
        let unit = lang_upto(&a, &Expr::one(), 3);
        prop_assert_eq!(fusion(&unit, &l), l.clone());
        prop_assert_eq!(fusion(&l, &unit), l);
    }

    #[test]
    fn suffixes_count_and_closure(z in guarded_string()) {
        let sufs = z.suffixes();
        prop_assert_eq!(sufs.len(), z.atoms().len());
        prop_assert_eq!(&sufs[0], &z);
        for s in &sufs {
            prop_assert_eq!(s.last_atom(), z.last_atom());
            for t in s.suffixes() {
                prop_assert!(sufs.contains(&t));
            }
        }
    }

    #[test]
    fn sequencing_matches_fusion(e in expr(), f in expr()) {
        let a = alphabet();
        let seq = lang_upto(&a, &Expr::seq(e.clone(), f.clone()), 3);
        prop_assert_eq!(seq, fusion(&lang_upto(&a, &e, 3), &lang_upto(&a, &f, 3)));
    }
}
