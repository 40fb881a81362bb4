use webskein::oracle::{enumerate_states, eval_web};
use webskein::qlaurent::{qbinom, qint};
use webskein::web::build::{circle, close_pair, close_strand, ladder, Rung};
use webskein::web::{Slice, SliceWeb, Turn};
use webskein::LPoly;

/// Small two-rail contexts used to close up local pictures.
fn contexts() -> Vec<Vec<Rung>> {
    vec![
        vec![],
        vec![Rung::Left(1)],
        vec![Rung::Right(1)],
        vec![Rung::Left(1), Rung::Right(2)],
        vec![Rung::Right(1), Rung::Left(1)],
        vec![Rung::Left(2), Rung::Right(1), Rung::Left(1)],
    ]
}

fn inverse(rungs: &[Rung]) -> Vec<Rung> {
    rungs
        .iter()
        .rev()
        .map(|r| match *r {
            Rung::Left(k) => Rung::Right(k),
            Rung::Right(k) => Rung::Left(k),
        })
        .collect()
}

/// Evaluates `fragment` (an upward two-rail piece from `bottom` to `top`)
/// in every closing context that fits, returning one value per context.
fn in_contexts(
    n: u32,
    bottom: (u32, u32),
    top: (u32, u32),
    fragment: &[Slice],
) -> Vec<Option<LPoly>> {
    let mut out = Vec::new();
    for pre in contexts() {
        for post in contexts() {
            // The pre-context must end at `bottom`: start from where its
            // inverse takes `bottom`.
            let Some((_, start)) = ladder(0, bottom, &inverse(&pre)) else {
                continue;
            };
            let Some((pre_slices, reached)) = ladder(0, start, &pre) else {
                continue;
            };
            assert_eq!(reached, bottom);
            let Some((post_slices, end)) = ladder(0, top, &post) else {
                continue;
            };
            let mut mid = pre_slices;
            mid.extend_from_slice(fragment);
            mid.extend(post_slices);
            let w = close_pair(start, end, &mid);
            out.push(Some(eval_web(&w, n).unwrap()));
        }
    }
    out
}

fn combine(terms: &[(LPoly, Vec<Option<LPoly>>)]) -> Vec<LPoly> {
    let len = terms[0].1.len();
    (0..len)
        .map(|c| {
            terms
                .iter()
                .map(|(coef, vals)| coef * vals[c].as_ref().unwrap())
                .sum()
        })
        .collect()
}

#[test]
fn circle_is_quantum_binomial() {
    for n in 1..=6 {
        for i in 1..=n {
            for turn in [Turn::Ccw, Turn::Cw] {
                assert_eq!(
                    eval_web(&circle(i, turn), n).unwrap(),
                    qbinom(n as i64, i as i64)
                );
            }
        }
    }
}

#[test]
fn circle_states_match_weight_formula() {
    let states = enumerate_states(&circle(1, Turn::Ccw), 2).unwrap();
    assert_eq!(states.len(), 2);
    assert_eq!(states[0].0.edges, vec![vec![1]]);
    assert_eq!(states[0].1, LPoly::v_pow(1));
    assert_eq!(states[1].0.edges, vec![vec![2]]);
    assert_eq!(states[1].1, LPoly::v_pow(-1));

    let states = enumerate_states(&circle(1, Turn::Ccw), 3).unwrap();
    let weights: Vec<_> = states.iter().map(|s| s.1.clone()).collect();
    assert_eq!(
        weights,
        vec![LPoly::v_pow(2), LPoly::one(), LPoly::v_pow(-2)]
    );
    assert_eq!(weights.into_iter().sum::<LPoly>(), qint(3));

    for n in 1..=5 {
        let states = enumerate_states(&circle(n, Turn::Cw), n).unwrap();
        assert_eq!(states.len(), 1);
        assert!(states[0].1.is_one());
    }
}

#[test]
fn zigzag_equals_circle() {
    // A strand that goes up, turns down, and turns up again before closing.
    for n in 2..=4 {
        for i in 1..n {
            let w = SliceWeb::closed(vec![
                Slice::cup(0, i, Turn::Cw),
                Slice::cup(1, i, Turn::Ccw),
                Slice::cap(0, i, Turn::Cw),
                Slice::cap(0, i, Turn::Cw),
            ]);
            assert_eq!(
                eval_web(&w, n).unwrap(),
                qbinom(n as i64, i as i64),
                "n={n} i={i}"
            );
        }
    }
}

#[test]
fn theta_web() {
    for n in 2..=5u32 {
        for i in 1..n {
            for j in 1..=(n - i) {
                let w = close_pair((i, j), (i, j), &[]);
                let expect = qbinom((i + j) as i64, i as i64) * qbinom(n as i64, (i + j) as i64);
                assert_eq!(eval_web(&w, n).unwrap(), expect);
                assert_eq!(eval_web(&w.reversed(), n).unwrap(), expect);
            }
        }
    }
}

#[test]
fn bigon_in_context() {
    for n in 2..=5u32 {
        for a in 1..=n {
            for b in 0..=(n - a) {
                for j in 1..a {
                    let bigon = [Slice::split(0, j, a - j), Slice::merge(0, j, a - j)];
                    let lhs = in_contexts(n, (a, b), (a, b), &bigon);
                    let rhs = in_contexts(n, (a, b), (a, b), &[]);
                    let f = qbinom(a as i64, j as i64);
                    for (l, r) in lhs.iter().zip(&rhs) {
                        assert_eq!(
                            l.as_ref().unwrap(),
                            &(&f * r.as_ref().unwrap()),
                            "n={n} a={a} b={b} j={j}"
                        );
                    }
                }
            }
        }
    }
}

/// Checks the ladder switch of `[Left(r), Right(s)]` from `(b1, b2)` in
/// every closing context. Returns the number of surviving right-hand terms,
/// or `None` when the switch does not apply in this direction.
fn square_identity(n: u32, (b1, b2): (u32, u32), r: u32, s: u32) -> Option<usize> {
    let (lhs, (t1, t2)) = ladder(0, (b1, b2), &[Rung::Left(r), Rung::Right(s)])?;
    if t1 > b2 {
        return None;
    }
    let l = b2 - t1;
    let k = r.min(s);
    let mut terms = vec![];
    for m in 0..=t1.min(b1) {
        let coef = qbinom(l as i64, k as i64 - m as i64);
        if coef.is_zero() {
            continue;
        }
        let down = m + b1.saturating_sub(t1);
        let up = m + t1.saturating_sub(b1);
        let (slices, top) = ladder(0, (b1, b2), &[Rung::Right(down), Rung::Left(up)]).unwrap();
        assert_eq!(top, (t1, t2));
        terms.push((coef, in_contexts(n, (b1, b2), (t1, t2), &slices)));
    }
    let got: Vec<LPoly> = in_contexts(n, (b1, b2), (t1, t2), &lhs)
        .into_iter()
        .map(Option::unwrap)
        .collect();
    let expect = if terms.is_empty() {
        vec![LPoly::zero(); got.len()]
    } else {
        combine(&terms)
    };
    assert_eq!(got, expect, "n={n} b=({b1},{b2}) r={r} s={s}");
    Some(terms.len())
}

/// Square relation in ladder form: a leftward rung below a rightward rung
/// equals a sum of rightward-below-leftward ladders. Both the shrinking
/// (b1 >= t1) and growing (b1 < t1) shapes are swept.
#[test]
fn ladder_square_relation() {
    let (mut shrinking, mut growing) = (0, 0);
    for n in 2..=5u32 {
        for b1 in 0..=n {
            for b2 in 0..=(n - b1) {
                for r in 1..=b2 {
                    for s in 1..=(b1 + r) {
                        if square_identity(n, (b1, b2), r, s).is_some() {
                            if s >= r {
                                shrinking += 1;
                            } else {
                                growing += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(shrinking > 20 && growing > 20, "{shrinking} {growing}");
}

/// With no rung on one side only the m = 0 term survives, with coefficient 1.
#[test]
fn square_anchor_k_zero() {
    for n in 2..=5u32 {
        for b1 in 1..=n {
            for b2 in 0..=(n - b1) {
                for s in b1.saturating_sub(b2).max(1)..=b1 {
                    assert_eq!(square_identity(n, (b1, b2), 0, s), Some(1));
                }
            }
        }
    }
}

/// With an empty left rail the sum collapses to one ladder with
/// coefficient qbinom(l, k).
#[test]
fn square_anchor_i_zero() {
    let mut checked = 0;
    for n in 2..=5u32 {
        for b2 in 1..=n {
            for r in 1..=b2 {
                for s in 1..=r {
                    let l = b2 - (r - s);
                    let terms = square_identity(n, (0, b2), r, s);
                    if qbinom(l as i64, s as i64).is_zero() {
                        assert_eq!(terms, Some(0));
                    } else {
                        assert_eq!(terms, Some(1));
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 10);
}

/// Closes a three-strand fragment (colors a, b, c left to right) by fanning
/// one strand out in both associations.
fn three_strand_contexts(n: u32, (a, b, c): (u32, u32, u32), top: &[Slice]) -> Vec<LPoly> {
    let fans = [
        vec![Slice::split(0, a + b, c), Slice::split(0, a, b)],
        vec![Slice::split(0, a, b + c), Slice::split(1, b, c)],
    ];
    fans.iter()
        .map(|fan| {
            let mut middle = fan.clone();
            middle.extend_from_slice(top);
            eval_web(&close_strand(a + b + c, &middle), n).unwrap()
        })
        .collect()
}

#[test]
fn merge_reassociation() {
    for n in 3..=5u32 {
        for a in 1..n {
            for b in 1..(n - a) {
                for c in 1..=(n - a - b) {
                    let left = [Slice::merge(0, a, b), Slice::merge(0, a + b, c)];
                    let right = [Slice::merge(1, b, c), Slice::merge(0, a, b + c)];
                    assert_eq!(
                        three_strand_contexts(n, (a, b, c), &left),
                        three_strand_contexts(n, (a, b, c), &right)
                    );
                }
            }
        }
    }
}

#[test]
fn split_reassociation() {
    for n in 3..=5u32 {
        for a in 1..n {
            for b in 1..(n - a) {
                for c in 1..=(n - a - b) {
                    let close = |fan: &[Slice]| -> Vec<LPoly> {
                        // Reverse the roles: fan out with the fragment, merge back both ways.
                        let merges = [
                            vec![Slice::merge(0, a, b), Slice::merge(0, a + b, c)],
                            vec![Slice::merge(1, b, c), Slice::merge(0, a, b + c)],
                        ];
                        merges
                            .iter()
                            .map(|m| {
                                let mut middle = fan.to_vec();
                                middle.extend_from_slice(m);
                                eval_web(&close_strand(a + b + c, &middle), n).unwrap()
                            })
                            .collect()
                    };
                    let left = [Slice::split(0, a + b, c), Slice::split(0, a, b)];
                    let right = [Slice::split(0, a, b + c), Slice::split(1, b, c)];
                    assert_eq!(close(&left), close(&right));
                }
            }
        }
    }
}

#[test]
fn relcheck_harness_passes() {
    for n in 2..=5 {
        let rep = webskein::relcheck::run(n, 3).unwrap();
        assert!(rep.all_passed(), "{rep:?}");
        if n >= 3 {
            for r in [
                "circle",
                "bigon",
                "four-valent merge",
                "four-valent split",
                "rectangle 1",
                "rectangle 2",
            ] {
                assert!(
                    rep.relations
                        .iter()
                        .any(|c| c.relation == r && c.passed > 0),
                    "n={n} {r}"
                );
            }
        }
    }
    let rep = webskein::relcheck::run(5, 2).unwrap();
    assert!(rep.all_passed());
}
