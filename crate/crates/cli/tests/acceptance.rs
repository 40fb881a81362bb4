//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use webskein::engine::OracleEngine;
use webskein::invariants::{bracket, homfly_pn, k_invariant, skein_oracle_pn};
use webskein::linkdiag::{
    apply_reidemeister, from_braid, move_sites, parse_pd, Coloring, Diagram, Move, Tangle,
};
use webskein::oracle::eval_web;
use webskein::periodicity::{check_cover, check_mirror_congruence, Status};
use webskein::qlaurent::LPoly;
use webskein::reduce::{reduce_web, Outcome};
use webskein::web::build::Rung;
use webskein::web::{compile, crossing_terms, expand_crossings};
use webskein::{engine_by_name, relcheck};

const TREFOIL_PD: &str = "X[4,2,5,1], X[2,6,3,5], X[6,4,1,3]";
const FIGURE_EIGHT_PD: &str = "X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]";

type Checked = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Checked);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Torus braids, `σ1σ2^{-1}` iterates and the figure-eight, all color 1.
fn braid_corpus() -> Vec<Diagram> {
    let mut v: Vec<Diagram> = (1..=7)
        .map(|k| from_braid(&vec![1; k], 2).unwrap())
        .collect();
    for m in 1..=5 {
        let word: Vec<i32> = (0..m).flat_map(|_| [1, -2]).collect();
        v.push(from_braid(&word, 3).unwrap());
    }
    v.push(parse_pd(FIGURE_EIGHT_PD).unwrap());
    v
}

/// Mixed corpus used by the move, skein and mirror checks.
fn corpus() -> Vec<Diagram> {
    vec![
        parse_pd(TREFOIL_PD).unwrap(),
        parse_pd("X[1,1,2,2]").unwrap(),
        parse_pd(FIGURE_EIGHT_PD).unwrap(),
        from_braid(&[1, -2, 1, -2], 3).unwrap(),
        from_braid(&[1, 1], 2).unwrap(),
        from_braid(&[1, 2, 1], 3).unwrap(),
        from_braid(&[], 3).unwrap(),
        from_braid(&[1, -1, 2, 3, -2, 1, 3], 4).unwrap(),
        from_braid(&[1, 1, 1, 1, 1], 2).unwrap(),
    ]
}

/// Every coloring with colors in `1..=min(2, n - 1)`.
fn colorings(components: usize, n: u32) -> Vec<Coloring> {
    let top = 2.min(n - 1);
    let mut out = vec![Vec::new()];
    for _ in 0..components {
        out = out
            .into_iter()
            .flat_map(|c: Vec<u32>| {
                (1..=top).map(move |x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    out.into_iter().map(Coloring).collect()
}

fn relations() -> Checked {
    let mut checked = 0;
    for n in 2..=5 {
        let rep = relcheck::run(n, 3).map_err(|e| e.to_string())?;
        for r in &rep.relations {
            ensure(r.failed == 0, || {
                format!("{} failed {} times at n={n}", r.relation, r.failed)
            })?;
            checked += r.passed;
        }
        for name in ["rectangle anchor k=0", "rectangle anchor i=0"] {
            ensure(
                rep.relations
                    .iter()
                    .any(|r| r.relation == name && r.passed > 0),
                || format!("{name} not exercised at n={n}"),
            )?;
        }
    }
    Ok(format!("{checked} relation instances"))
}

fn expansions() -> Checked {
    let v = LPoly::v_pow;
    let identity = vec![Rung::Left(0), Rung::Right(0)];
    let h = vec![Rung::Left(1), Rung::Right(1)];
    for (sign, k) in [(1i8, 1), (-1, -1)] {
        let got = crossing_terms(1, 1, sign);
        let expect = vec![(v(k), identity.clone()), (-v(0), h.clone())];
        ensure(got == expect, || format!("sign {sign}: {got:?}"))?;
    }
    Ok("q^{±1/2} and -1 terms".into())
}

fn cross_engine() -> Checked {
    let mut webs = 0;
    for n in 2..=4 {
        for d in braid_corpus() {
            let w = compile(&d, n).map_err(|e| e.to_string())?;
            let sum = expand_crossings(&w, n).map_err(|e| e.to_string())?;
            for (_, web) in &sum.terms {
                let oracle = eval_web(web, n).map_err(|e| e.to_string())?;
                match reduce_web(web, n).map_err(|e| e.to_string())? {
                    Outcome::Value(r) => {
                        ensure(r == oracle, || format!("value mismatch at n={n}"))?
                    }
                    Outcome::Stuck(_) => {
                        return Err(format!("stuck at n={n}, {} crossings", d.crossing_count()))
                    }
                }
                webs += 1;
            }
        }
    }
    Ok(format!("{webs} webs"))
}

fn invariance() -> Checked {
    let e = OracleEngine;
    let mut moves = 0;
    for d in corpus() {
        for n in [2, 3] {
            for mu in colorings(d.components().len(), n) {
                let colored = d.with_coloring(&mu).map_err(|e| e.to_string())?;
                let k = k_invariant(&colored, &mu, n, &e).map_err(|e| e.to_string())?;
                let b = bracket(&colored, &mu, n, &e).map_err(|e| e.to_string())?;
                for mv in move_sites(&colored) {
                    let moved = apply_reidemeister(&colored, &mv).map_err(|e| e.to_string())?;
                    let mu2 = moved.coloring();
                    let k2 = k_invariant(&moved, &mu2, n, &e).map_err(|e| e.to_string())?;
                    ensure(k2 == k, || format!("{} changed K_{n}", mv.name()))?;
                    if let Move::R1 { arc, sign, .. } = mv {
                        let i = colored.arc_colors[arc] as i64;
                        let framing = i * (n as i64 - i + 1) * sign as i64;
                        let b2 = bracket(&moved, &mu2, n, &e).map_err(|e| e.to_string())?;
                        ensure(b2 == b.shift(framing), || {
                            format!("R1 framing on color {i} at n={n}")
                        })?;
                    }
                    moves += 1;
                }
            }
        }
    }
    ensure(moves >= 200, || format!("only {moves} move instances"))?;
    Ok(format!("{moves} move instances"))
}

fn skein() -> Checked {
    let e = OracleEngine;
    let p = |d: &Diagram, n| homfly_pn(d, n, &e).map_err(|e| e.to_string());
    let mut checked = 0;
    for d in corpus() {
        ensure(p(&d, 1)?.is_one(), || "P_1 is not 1".into())?;
        for ci in 0..d.crossing_count() {
            let (plus, minus) = if d.crossings[ci].sign > 0 {
                (d.clone(), d.switch(ci))
            } else {
                (d.switch(ci), d.clone())
            };
            let zero = d.smooth(ci);
            for n in 2..=4 {
                let lhs = p(&plus, n)?.shift(n as i64) - p(&minus, n)?.shift(-(n as i64));
                let rhs = (LPoly::v_pow(1) - LPoly::v_pow(-1)) * p(&zero, n)?;
                ensure(lhs == rhs, || format!("crossing {ci} at n={n}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} crossing instances"))
}

fn jones() -> Checked {
    let e = OracleEngine;
    let mut ds = vec![
        parse_pd(TREFOIL_PD).unwrap(),
        parse_pd(FIGURE_EIGHT_PD).unwrap(),
        from_braid(&[1, 1], 2).unwrap(),
        from_braid(&[1; 5], 2).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let strands = rng.gen_range(2..=4usize);
        let len = rng.gen_range(1..=8);
        let word: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        ds.push(from_braid(&word, strands).unwrap());
    }
    for d in &ds {
        let h = homfly_pn(d, 2, &e).map_err(|e| e.to_string())?;
        ensure(h == skein_oracle_pn(d, 2), || {
            format!("Jones mismatch on {} crossings", d.crossing_count())
        })?;
    }
    Ok(format!("{} links", ds.len()))
}

fn positive_controls() -> Checked {
    let engine = engine_by_name("oracle").unwrap();
    let tangles = [
        Tangle::uniform(vec![1], 2),
        Tangle::uniform(vec![1, 1], 2),
        Tangle::uniform(vec![1, 2], 3),
    ];
    let mut runs = 0;
    for t in &tangles {
        for p in [2, 3, 5] {
            for n in [2, 3] {
                let (factor, mirror) =
                    check_cover(t, p, n, engine.as_ref()).map_err(|e| e.to_string())?;
                ensure(factor.is_consistent() && mirror.is_consistent(), || {
                    format!("{:?} p={p} n={n}", t.word)
                })?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} covers consistent"))
}

fn negative_control() -> Checked {
    let engine = engine_by_name("oracle").unwrap();
    let d = parse_pd(TREFOIL_PD).unwrap();
    let v = check_mirror_congruence(&d, &Coloring::uniform(1, 1), 7, 2, engine.as_ref())
        .map_err(|e| e.to_string())?;
    ensure(v.status == Status::Obstructed, || {
        "trefoil not obstructed at p=7".into()
    })?;
    // Coefficients mod 7, v-exponents mod 14.
    let diff = skein_oracle_pn(&d, 2) - skein_oracle_pn(&d.mirror(), 2);
    let mut hand = std::collections::BTreeMap::new();
    for (e, c) in diff.terms() {
        let c = c.to_string().parse::<i64>().unwrap();
        *hand.entry(e.rem_euclid(14)).or_insert(0i64) += c;
    }
    hand.values_mut().for_each(|c| *c = c.rem_euclid(7));
    hand.retain(|_, c| *c != 0);
    let got: std::collections::BTreeMap<i64, i64> = v
        .witness
        .as_ref()
        .map(|w| w.terms().map(|(e, c)| (e, c as i64)).collect())
        .unwrap_or_default();
    ensure(!hand.is_empty() && got == hand, || {
        format!("residue {got:?} vs hand {hand:?}")
    })?;
    Ok(format!("residue with {} terms", got.len()))
}

fn mirror_conjugation() -> Checked {
    let e = OracleEngine;
    let mut checked = 0;
    for d in corpus() {
        for n in [2, 3] {
            for mu in colorings(d.components().len(), n) {
                let k = k_invariant(&d, &mu, n, &e).map_err(|e| e.to_string())?;
                let m = k_invariant(&d.mirror(), &mu, n, &e).map_err(|e| e.to_string())?;
                ensure(m == k.qconj(), || format!("n={n} coloring {:?}", mu.0))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} colored diagrams"))
}

fn performance() -> Checked {
    let dir = std::env::temp_dir().join(format!("webskein-acceptance-{}", std::process::id()));
    let cache = dir.join("cache.json");
    let cases: [(&str, &str); 3] = [
        ("1,1,1,1,1,1,1,1,1,1", "2"),
        ("1,-2,1,-2,1,-2,1,-2,1,-2", "3"),
        ("1,-2,3,1,-2,3,1,-2,3,-1", "4"),
    ];
    let mut worst = Duration::ZERO;
    for (word, strands) in cases {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_webskein"))
            .args([
                "--cache",
                cache.to_str().unwrap(),
                "eval",
                "--braid",
                word,
                "--strands",
                strands,
                "--n",
                "4",
            ])
            .output()
            .map_err(|e| e.to_string())?;
        let took = start.elapsed();
        ensure(out.status.success(), || {
            String::from_utf8_lossy(&out.stderr).into_owned()
        })?;
        ensure(took < Duration::from_secs(60), || {
            format!("{word} took {took:?}")
        })?;
        worst = worst.max(took);
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!(
        "slowest 10-crossing eval {:.2}s",
        worst.as_secs_f64()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("relation identities", relations),
        ("expansion consistency", expansions),
        ("cross-engine equality", cross_engine),
        ("Reidemeister invariance", invariance),
        ("skein conformance", skein),
        ("Jones agreement", jones),
        ("periodicity positive controls", positive_controls),
        ("periodicity negative control", negative_control),
        ("mirror conjugation", mirror_conjugation),
        ("performance envelope", performance),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}, {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
