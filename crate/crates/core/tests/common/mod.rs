#![allow(dead_code)]

use webskein::linkdiag::{apply_reidemeister, from_braid, move_sites, parse_pd, Diagram};

pub const TREFOIL_PD: &str = "X[4,2,5,1], X[2,6,3,5], X[6,4,1,3]";
pub const FIGURE_EIGHT_PD: &str = "X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]";

pub fn base_corpus() -> Vec<Diagram> {
    vec![
        parse_pd(TREFOIL_PD).unwrap(),
        parse_pd("X[1,1,2,2]").unwrap(),
        parse_pd(FIGURE_EIGHT_PD).unwrap(),
        from_braid(&[1, -2, 1, -2], 3).unwrap(),
        from_braid(&[1, 1], 2).unwrap(),
        from_braid(&[1, 2, 1], 3).unwrap(),
        from_braid(&[], 3).unwrap(),
        from_braid(&[1, -1, 2, 3, -2, 1, 3], 4).unwrap(),
        from_braid(&[1, 1, 1, 1, 1, 1, 1], 2).unwrap(),
    ]
}

/// Base diagrams plus every `stride`-th Reidemeister move applied to each.
pub fn corpus(stride: usize) -> Vec<Diagram> {
    let mut v = base_corpus();
    for d in base_corpus() {
        for mv in move_sites(&d).into_iter().step_by(stride) {
            if let Ok(e) = apply_reidemeister(&d, &mv) {
                v.push(e);
            }
        }
    }
    v
}
