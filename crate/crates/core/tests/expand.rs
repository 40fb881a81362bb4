use webskein::engine::{Engine, OracleEngine};
use webskein::linkdiag::from_braid;
use webskein::oracle::{eval_diagram, eval_web};
use webskein::web::build::Rung;
use webskein::web::{compile, compile_braid, crossing_terms, expand_crossings};
use webskein::LPoly;

fn v(k: i64) -> LPoly {
    LPoly::v_pow(k)
}

#[test]
fn fundamental_crossing_expansions() {
    // Positive: v times the identity minus the H web; negative conjugates.
    let pos = crossing_terms(1, 1, 1);
    assert_eq!(pos.len(), 2);
    assert_eq!(pos[0], (v(1), vec![Rung::Left(0), Rung::Right(0)]));
    assert_eq!(pos[1], (-v(0), vec![Rung::Left(1), Rung::Right(1)]));
    let neg = crossing_terms(1, 1, -1);
    assert_eq!(neg[0], (v(-1), vec![Rung::Left(0), Rung::Right(0)]));
    assert_eq!(neg[1], (-v(0), vec![Rung::Left(1), Rung::Right(1)]));
}

#[test]
fn mixed_color_expansion() {
    // j = 2 over i = 1: two ladders with signs (-1)^{(j+1)i} and its negation.
    let t = crossing_terms(2, 1, 1);
    assert_eq!(t.len(), 2);
    assert_eq!(t[0], (-v(1), vec![Rung::Left(0), Rung::Right(1)]));
    assert_eq!(t[1], (v(0), vec![Rung::Left(1), Rung::Right(2)]));
    let t = crossing_terms(1, 2, 1);
    assert_eq!(t.len(), 2);
    assert_eq!(t[0].0, -v(1));
}

#[test]
fn expansion_term_bound() {
    for (word, strands) in [
        (vec![1, 1, 1], 2),
        (vec![1, -2, 1, -2], 3),
        (vec![1, 2, 1, 2], 3),
    ] {
        let w = compile_braid(&word, strands, &vec![1; strands]).unwrap();
        let sum = expand_crossings(&w, 3).unwrap();
        assert!(sum.len() <= 1 << word.len());
        assert!(sum.terms.iter().all(|(_, web)| !web.has_crossings()));
    }
}

#[test]
fn local_tables_match_full_expansion() {
    for (word, strands, colors) in [
        (vec![1, 1, 1], 2, vec![1, 1]),
        (vec![1, 1], 2, vec![1, 2]),
        (vec![1, -2, 1, -2], 3, vec![1, 1, 1]),
        (vec![1, 1, 1], 2, vec![2, 2]),
    ] {
        for n in 2..=4 {
            if colors.iter().any(|&c| c >= n) {
                continue;
            }
            let d = from_braid(&word, strands).unwrap();
            let mu = webskein::linkdiag::Coloring(
                d.components()
                    .iter()
                    .map(|cyc| colors[cyc[0] % strands])
                    .collect(),
            );
            let w = compile(&d.with_coloring(&mu).unwrap(), n).unwrap();
            let mut direct = LPoly::zero();
            for (c, web) in expand_crossings(&w, n).unwrap().terms {
                direct += &(c * eval_web(&web, n).unwrap());
            }
            assert_eq!(eval_diagram(&w, n).unwrap(), direct);
            assert_eq!(OracleEngine.eval_diagram(&w, n).unwrap(), direct);
        }
    }
}
