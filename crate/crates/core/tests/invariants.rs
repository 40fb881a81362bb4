mod common;

use common::*;
use webskein::engine::OracleEngine;
use webskein::invariants::{bracket, homfly_pn, k_invariant, skein_oracle_pn};
use webskein::linkdiag::{from_braid, parse_json, parse_pd, Coloring, Diagram};
use webskein::qlaurent::{qbinom, qint};
use webskein::LPoly;

#[test]
fn trefoil_agrees_with_skein() {
    let t = parse_pd(TREFOIL_PD).unwrap();
    for n in 1..=4 {
        assert_eq!(
            homfly_pn(&t, n, &OracleEngine).unwrap(),
            skein_oracle_pn(&t, n),
            "n={n}"
        );
    }
}

fn unknot(color: u32) -> Diagram {
    parse_json(&format!(
        r#"{{"crossings":[],"closures":[[1,1]],"coloring":{{"0":{color}}}}}"#
    ))
    .unwrap()
}

fn curl(sign: i8, color: u32) -> Diagram {
    let pd = if sign > 0 { "X[1,1,2,2]" } else { "X[2,1,1,2]" };
    let d = parse_pd(pd).unwrap();
    assert_eq!(d.writhe(), sign as i64);
    d.with_uniform_color(color)
}

#[test]
fn bracket_examples() {
    let e = OracleEngine;
    for n in 2..=5 {
        for i in 1..n {
            let mu = Coloring(vec![i]);
            assert_eq!(
                bracket(&unknot(i), &mu, n, &e).unwrap(),
                qbinom(n as i64, i as i64)
            );
            let framing = (i * (n - i + 1)) as i64;
            let c = bracket(&curl(1, i), &mu, n, &e).unwrap();
            assert_eq!(c, qbinom(n as i64, i as i64).shift(framing), "n={n} i={i}");
            let c = bracket(&curl(-1, i), &mu, n, &e).unwrap();
            assert_eq!(c, qbinom(n as i64, i as i64).shift(-framing), "n={n} i={i}");
            assert_eq!(
                k_invariant(&curl(1, i), &mu, n, &e).unwrap(),
                qbinom(n as i64, i as i64)
            );
        }
        assert!(bracket(&Diagram::empty(), &Coloring(vec![]), n, &e)
            .unwrap()
            .is_one());
    }
}

#[test]
fn homfly_examples() {
    let e = OracleEngine;
    for n in 1..=4 {
        assert_eq!(homfly_pn(&unknot(1), n, &e).unwrap(), qint(n));
        assert!(homfly_pn(&Diagram::empty(), n, &e).unwrap().is_one());
    }
    for d in base_corpus() {
        assert!(homfly_pn(&d, 1, &e).unwrap().is_one());
    }
}

#[test]
fn skein_oracle_examples() {
    assert!(skein_oracle_pn(&Diagram::empty(), 3).is_one());
    for c in 1..=3 {
        let unlink = from_braid(&[], c).unwrap();
        assert_eq!(skein_oracle_pn(&unlink, 2), qint(2).pow(c as u32));
    }
    // Positive Hopf link by hand: switching one crossing gives the unlink,
    // smoothing it gives a positive curl.
    let v = |k| LPoly::v_pow(k);
    let unknot = qint(2);
    let z = v(1) - v(-1);
    let expect = (unknot.pow(2)).shift(-4) + (z * unknot).shift(-2);
    assert_eq!(skein_oracle_pn(&from_braid(&[1, 1], 2).unwrap(), 2), expect);
    // Jones polynomial of the positive Hopf link is -t^{1/2} - t^{5/2}
    // when the unknot is 1; here the unknot is -(t^{1/2} + t^{-1/2}) with q = t^{-1}.
    let jones_times_unknot = (v(-1) + v(-5)) * (v(1) + v(-1));
    assert_eq!(expect, jones_times_unknot);
}

#[test]
fn corpus_agrees_with_skein() {
    let e = OracleEngine;
    for d in corpus(5) {
        for n in 1..=4 {
            assert_eq!(
                homfly_pn(&d, n, &e).unwrap(),
                skein_oracle_pn(&d, n),
                "n={n} {d:?}"
            );
        }
    }
}

fn colorings(d: &Diagram, n: u32) -> Vec<Coloring> {
    let c = d.components().len();
    let mut out = vec![Coloring::uniform(c, 1)];
    if n > 2 {
        out.push(Coloring::uniform(c, n - 1));
        out.push(Coloring((0..c).map(|k| 1 + (k as u32 % (n - 1))).collect()));
    }
    out
}

#[test]
fn k_invariant_is_invariant_under_moves() {
    use webskein::linkdiag::{apply_reidemeister, move_sites, Move};
    let e = OracleEngine;
    for d in base_corpus() {
        for n in [2, 3] {
            for mu in colorings(&d, n) {
                let k = k_invariant(&d, &mu, n, &e).unwrap();
                let b = bracket(&d, &mu, n, &e).unwrap();
                let colored = d.with_coloring(&mu).unwrap();
                for mv in move_sites(&colored) {
                    let moved = apply_reidemeister(&colored, &mv).unwrap();
                    let mu2 = moved.coloring();
                    assert_eq!(
                        k_invariant(&moved, &mu2, n, &e).unwrap(),
                        k,
                        "{} on {d:?}",
                        mv.name()
                    );
                    if !matches!(mv, Move::R1 { .. } | Move::R1Inverse { .. }) {
                        assert_eq!(bracket(&moved, &mu2, n, &e).unwrap(), b, "{}", mv.name());
                    }
                }
            }
        }
    }
}

#[test]
fn skein_conformance() {
    let e = OracleEngine;
    for d in corpus(9) {
        for ci in 0..d.crossing_count() {
            let (plus, minus) = if d.crossings[ci].sign > 0 {
                (d.clone(), d.switch(ci))
            } else {
                (d.switch(ci), d.clone())
            };
            let zero = d.smooth(ci);
            for n in 2..=4 {
                let lhs = homfly_pn(&plus, n, &e).unwrap().shift(n as i64)
                    - homfly_pn(&minus, n, &e).unwrap().shift(-(n as i64));
                let rhs = (LPoly::v_pow(1) - LPoly::v_pow(-1)) * homfly_pn(&zero, n, &e).unwrap();
                assert_eq!(lhs, rhs, "n={n} crossing {ci} of {d:?}");
            }
        }
    }
}

#[test]
fn mirror_conjugates() {
    let e = OracleEngine;
    for d in base_corpus() {
        for n in [2, 3, 4] {
            for mu in colorings(&d, n) {
                let k = k_invariant(&d, &mu, n, &e).unwrap();
                let m = k_invariant(&d.mirror(), &mu, n, &e).unwrap();
                assert_eq!(m, k.qconj());
            }
        }
    }
}

#[test]
fn disjoint_union_multiplies() {
    let e = OracleEngine;
    let a = parse_pd(TREFOIL_PD).unwrap();
    let b = parse_pd(FIGURE_EIGHT_PD).unwrap();
    let both = from_braid(&[1, 1, 1, -3, 4, -3, 4], 5).unwrap();
    let trefoil = from_braid(&[1, 1, 1], 2).unwrap();
    let eight = from_braid(&[-1, 2, -1, 2], 3).unwrap();
    for n in [2, 3] {
        let p = |d: &Diagram| homfly_pn(d, n, &e).unwrap();
        assert_eq!(p(&a), p(&trefoil));
        assert_eq!(p(&b), p(&eight));
        assert_eq!(p(&both), p(&a) * p(&b));
    }
}
