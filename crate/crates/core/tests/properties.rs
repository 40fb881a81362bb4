use proptest::prelude::*;
use webskein::engine::{engine_by_name, OracleEngine};
use webskein::invariants::{homfly_pn, k_invariant, skein_oracle_pn};
use webskein::linkdiag::{from_braid, parse_json, to_json, Coloring};
use webskein::qlaurent::{qbinom, reduce_mod_pqp, LPoly};
use webskein::web::{canonicalize, compile};

fn lpoly() -> impl Strategy<Value = LPoly> {
    prop::collection::vec((-8i64..8, -20i64..20), 0..6).prop_map(LPoly::from_terms)
}

fn braid() -> impl Strategy<Value = (Vec<i32>, usize)> {
    (2usize..=4).prop_flat_map(|strands| {
        let gen = (1..strands as i32, any::<bool>()).prop_map(|(g, inv)| if inv { -g } else { g });
        (prop::collection::vec(gen, 0..7), Just(strands))
    })
}

proptest! {
    #[test]
    fn ring_laws(a in lpoly(), b in lpoly(), c in lpoly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(a.qconj().qconj(), a.clone());
        prop_assert_eq!((&a * &b).qconj(), &a.qconj() * &b.qconj());
    }

    #[test]
    fn json_round_trip(a in lpoly()) {
        let back: LPoly = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn mod_reduction_is_a_ring_map(a in lpoly(), b in lpoly(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let lhs = reduce_mod_pqp(&(&a * &b), p);
        let rhs = reduce_mod_pqp(&a, p).mul(&reduce_mod_pqp(&b, p));
        prop_assert_eq!(lhs.to_pairs(), rhs.to_pairs());
    }

    #[test]
    fn qbinom_pascal(m in 1i64..9, k in 1i64..9) {
        prop_assume!(k < m);
        // [m, k] = v^{k} [m-1, k] + v^{-(m-k)} [m-1, k-1] in v = q^{1/2}
        let rhs = qbinom(m - 1, k).shift(k) + qbinom(m - 1, k - 1).shift(-(m - k));
        prop_assert_eq!(qbinom(m, k), rhs);
        prop_assert_eq!(qbinom(m, k), qbinom(m, m - k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn engines_agree_on_braids((word, strands) in braid(), n in 2u32..=3) {
        let d = from_braid(&word, strands).unwrap();
        let mu = Coloring::uniform(d.components().len(), 1);
        let oracle = k_invariant(&d, &mu, n, &OracleEngine).unwrap();
        let rewrite = engine_by_name("rewrite-with-fallback").unwrap();
        prop_assert_eq!(k_invariant(&d, &mu, n, rewrite.as_ref()).unwrap(), oracle);
        prop_assert_eq!(homfly_pn(&d, n, &OracleEngine).unwrap(), skein_oracle_pn(&d, n));
    }

    #[test]
    fn diagram_json_round_trip((word, strands) in braid()) {
        let d = from_braid(&word, strands).unwrap();
        let back = parse_json(&to_json(&d)).unwrap();
        prop_assert_eq!(skein_oracle_pn(&back, 2), skein_oracle_pn(&d, 2));
    }

    #[test]
    fn canonicalize_is_idempotent((word, strands) in braid()) {
        let w = compile(&from_braid(&word, strands).unwrap(), 3).unwrap();
        let c = canonicalize(&w);
        prop_assert_eq!(canonicalize(&c), c);
    }
}
