mod common;

use webskein::linkdiag::Diagram;
use webskein::oracle;
use webskein::web::build::{close_pair, ladder, Rung};
use webskein::web::planar::{PlanarWeb, VertexKind};
use webskein::web::{compile, to_slices, Slice, SliceWeb, Turn};

fn colored(d: &Diagram, i: usize) -> Diagram {
    d.with_uniform_color(1 + (i as u32 % 2))
}

#[test]
fn diagram_round_trips_through_planar_map() {
    for (i, d) in common::corpus(5).iter().enumerate() {
        let d = colored(d, i);
        let g = PlanarWeb::from_diagram(&d);
        assert!(g.euler_ok(), "euler fails for diagram {i}");
        let direct = compile(&d, 3).unwrap();
        let via = to_slices(&g).unwrap();
        let back = PlanarWeb::from_slices(&via, 3).unwrap();
        assert_eq!(back.canonical_key(), g.canonical_key(), "diagram {i}");
        assert_eq!(
            oracle::eval_diagram(&via, 3).unwrap(),
            oracle::eval_diagram(&direct, 3).unwrap(),
            "diagram {i}"
        );
    }
}

#[test]
fn planar_webs_round_trip() {
    let mk = |bottom: (u32, u32), rungs: &[Rung]| {
        let (sl, top) = ladder(0, bottom, rungs).unwrap();
        close_pair(bottom, top, &sl)
    };
    let webs: Vec<SliceWeb> = vec![
        mk((1, 1), &[Rung::Left(1)]),
        mk((2, 1), &[Rung::Left(1), Rung::Right(2)]),
        mk((1, 2), &[Rung::Right(1), Rung::Left(1), Rung::Right(1)]),
        mk((2, 2), &[Rung::Left(1), Rung::Right(2), Rung::Left(1)]),
    ];
    for (i, w) in webs.iter().enumerate() {
        let g = PlanarWeb::from_slices(w, 4).unwrap();
        assert!(g.euler_ok());
        g.validate(4).unwrap();
        let again = to_slices(&g).unwrap();
        assert_eq!(
            PlanarWeb::from_slices(&again, 4).unwrap().canonical_key(),
            g.canonical_key()
        );
        assert_eq!(
            oracle::eval_web(&again, 4).unwrap(),
            oracle::eval_web(w, 4).unwrap(),
            "web {i}"
        );
        for f in g.faces() {
            assert!(f.size() % 2 == 1 || f.has_valid_sign_type() || f.size() == 0);
        }
    }
}

#[test]
fn face_counts() {
    let mut circle = PlanarWeb::default();
    circle.add_edge(1);
    assert_eq!(circle.faces().len(), 2);

    let mut theta = PlanarWeb::default();
    let s = theta.add_vertex(VertexKind::Split);
    let m = theta.add_vertex(VertexKind::Merge);
    let top = theta.add_edge(2);
    let a = theta.add_edge(1);
    let b = theta.add_edge(1);
    theta.attach(top, s, 0);
    theta.attach(top, m, 2);
    theta.attach(b, s, 1);
    theta.attach(b, m, 1);
    theta.attach(a, s, 2);
    theta.attach(a, m, 0);
    theta.validate(3).unwrap();
    let faces = theta.faces();
    assert_eq!(faces.len(), 3);
    assert!(faces
        .iter()
        .all(|f| f.size() == 2 && f.has_valid_sign_type()));
    assert!(theta.euler_ok());
}

#[test]
fn slice_web_validation() {
    let circle = SliceWeb::closed(vec![
        Slice::cup(0, 1, Turn::Ccw),
        Slice::cap(0, 1, Turn::Ccw),
    ]);
    assert!(circle.validate(2).is_ok());

    let det = close_pair((1, 2), (1, 2), &[]);
    assert!(det.validate(3).is_ok());
    let wide = close_pair((2, 2), (2, 2), &[]);
    let err = wide.validate(3).unwrap_err().to_string();
    assert!(err.contains("color exceeds n"), "{err}");

    let open = SliceWeb::closed(vec![Slice::cup(0, 1, Turn::Ccw)]);
    assert!(open.validate(2).is_err());
}
