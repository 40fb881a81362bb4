use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::braid::from_braid_colored;
use super::diagram::{ArcUnion, Coloring, Crossing, Diagram};
use crate::error::{Error, Result};

/// Parses planar-diagram text `X[a,b,c,d], ...` (optionally wrapped in
/// `PD[...]`). Each `X` lists arcs counterclockwise from the incoming under
/// arc. Over-strand direction is inferred from arc use counts, falling back
/// to consecutive numbering along components.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let mut body = text.trim();
    if let Some(rest) = body.strip_prefix("PD[") {
        body = rest
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse("unterminated PD[".into()))?;
    }
    let mut quads: Vec<[i64; 4]> = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let after = rest
            .strip_prefix("X[")
            .ok_or_else(|| Error::Parse(format!("expected X[ at {rest:?}")))?;
        let close = after
            .find(']')
            .ok_or_else(|| Error::Parse("unterminated X[".into()))?;
        let nums: Vec<i64> = after[..close]
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad arc label {:?}", t.trim())))
            })
            .collect::<Result<_>>()?;
        if nums.len() != 4 {
            return Err(Error::Parse("X[...] needs four arcs".into()));
        }
        quads.push([nums[0], nums[1], nums[2], nums[3]]);
        rest = after[close + 1..]
            .trim_start()
            .trim_start_matches(',')
            .trim_start();
    }
    pd_from_quads(&quads)
}

fn pd_from_quads(quads: &[[i64; 4]]) -> Result<Diagram> {
    let mut uses: BTreeMap<i64, u32> = BTreeMap::new();
    for q in quads {
        for &a in q {
            *uses.entry(a).or_default() += 1;
        }
    }
    if let Some((&a, _)) = uses.iter().find(|(_, &k)| k != 2) {
        return Err(Error::ArcUseCount(a));
    }
    // ins/outs fixed so far per label; `choice[k]` is Some(true) when the
    // over strand runs d -> b.
    let mut ins: BTreeMap<i64, u32> = BTreeMap::new();
    let mut outs: BTreeMap<i64, u32> = BTreeMap::new();
    for q in quads {
        *ins.entry(q[0]).or_default() += 1;
        *outs.entry(q[2]).or_default() += 1;
    }
    let mut choice: Vec<Option<bool>> = vec![None; quads.len()];
    let apply =
        |k: usize, pos: bool, ins: &mut BTreeMap<i64, u32>, outs: &mut BTreeMap<i64, u32>| {
            let (i, o) = if pos {
                (quads[k][3], quads[k][1])
            } else {
                (quads[k][1], quads[k][3])
            };
            *ins.entry(i).or_default() += 1;
            *outs.entry(o).or_default() += 1;
        };
    loop {
        let mut progressed = false;
        for k in 0..quads.len() {
            if choice[k].is_some() {
                continue;
            }
            let (b, d) = (quads[k][1], quads[k][3]);
            let has = |m: &BTreeMap<i64, u32>, a: i64| m.get(&a).copied().unwrap_or(0) > 0;
            let forced = if b == d || has(&ins, b) || has(&outs, d) {
                Some(true)
            } else if has(&outs, b) || has(&ins, d) {
                Some(false)
            } else {
                None
            };
            if let Some(pos) = forced {
                choice[k] = Some(pos);
                apply(k, pos, &mut ins, &mut outs);
                progressed = true;
            }
        }
        if progressed {
            continue;
        }
        let Some(k) = choice.iter().position(Option::is_none) else {
            break;
        };
        let (b, d) = (quads[k][1], quads[k][3]);
        let pos = b - d == 1 || d - b > 1;
        choice[k] = Some(pos);
        apply(k, pos, &mut ins, &mut outs);
    }
    for a in uses.keys() {
        if ins.get(a).copied().unwrap_or(0) != 1 || outs.get(a).copied().unwrap_or(0) != 1 {
            return Err(Error::InconsistentOrientation);
        }
    }
    let index: BTreeMap<i64, usize> = uses.keys().enumerate().map(|(i, &a)| (a, i)).collect();
    let crossings = quads
        .iter()
        .zip(&choice)
        .map(|(q, pos)| Crossing {
            sign: if pos.unwrap() { 1 } else { -1 },
            ends: q.map(|a| index[&a]),
        })
        .collect();
    let d = Diagram {
        crossings,
        arc_colors: vec![1; index.len()],
        loops: Vec::new(),
    };
    d.validate()?;
    Ok(d.normalized())
}

#[derive(Serialize, Deserialize)]
struct JsonCrossing {
    sign: i8,
    over: [i64; 2],
    under: [i64; 2],
}

#[derive(Serialize, Deserialize)]
struct JsonDiagram {
    #[serde(default)]
    crossings: Vec<JsonCrossing>,
    #[serde(default)]
    closures: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coloring: Option<BTreeMap<String, u32>>,
}

#[derive(Deserialize)]
struct JsonBraid {
    strands: usize,
    word: Vec<i32>,
    #[serde(default)]
    colors: Option<Vec<u32>>,
}

/// Parses the JSON diagram schema, or a braid given as
/// `{"strands": k, "word": [...]}`. Components are indexed by least arc
/// label for the `coloring` map; a missing map colors everything 1.
pub fn parse_json(text: &str) -> Result<Diagram> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("word").is_some() {
        let b: JsonBraid =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        let colors = b.colors.unwrap_or_else(|| vec![1; b.strands]);
        return from_braid_colored(&b.word, b.strands, &colors);
    }
    let j: JsonDiagram = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let mut in_uses: BTreeMap<i64, u32> = BTreeMap::new();
    let mut out_uses: BTreeMap<i64, u32> = BTreeMap::new();
    for c in &j.crossings {
        if c.sign != 1 && c.sign != -1 {
            return Err(Error::Parse("crossing sign must be ±1".into()));
        }
        *in_uses.entry(c.over[0]).or_default() += 1;
        *in_uses.entry(c.under[0]).or_default() += 1;
        *out_uses.entry(c.over[1]).or_default() += 1;
        *out_uses.entry(c.under[1]).or_default() += 1;
    }
    for [x, y] in &j.closures {
        *in_uses.entry(*x).or_default() += 1;
        *out_uses.entry(*y).or_default() += 1;
    }
    let labels: BTreeSet<i64> = in_uses.keys().chain(out_uses.keys()).copied().collect();
    for &a in &labels {
        let (i, o) = (
            in_uses.get(&a).copied().unwrap_or(0),
            out_uses.get(&a).copied().unwrap_or(0),
        );
        if i + o != 2 {
            return Err(Error::ArcUseCount(a));
        }
        if i != 1 {
            return Err(Error::InconsistentOrientation);
        }
    }
    let raw: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let mut u = ArcUnion::new(raw.len());
    for [x, y] in &j.closures {
        u.union(raw[x], raw[y]);
    }
    // Class ids in order of their least label.
    let mut class_id: BTreeMap<usize, usize> = BTreeMap::new();
    for k in 0..raw.len() {
        let r = u.find(k);
        let next = class_id.len();
        class_id.entry(r).or_insert(next);
    }
    let id = |a: i64, u: &mut ArcUnion| class_id[&u.find(raw[&a])];
    let crossings: Vec<Crossing> = j
        .crossings
        .iter()
        .map(|c| {
            Crossing::from_strands(
                c.sign,
                (id(c.over[0], &mut u), id(c.over[1], &mut u)),
                (id(c.under[0], &mut u), id(c.under[1], &mut u)),
            )
        })
        .collect();
    let mut referenced = vec![false; class_id.len()];
    for c in &crossings {
        for &a in &c.ends {
            referenced[a] = true;
        }
    }
    let loops = (0..class_id.len()).filter(|&a| !referenced[a]).collect();
    let mut d = Diagram {
        crossings,
        arc_colors: vec![1; class_id.len()],
        loops,
    };
    d.validate()?;
    if let Some(map) = &j.coloring {
        let comps = d.components().len();
        let mut colors = Vec::with_capacity(comps);
        for k in 0..comps {
            colors.push(*map.get(&k.to_string()).ok_or(Error::ColoringNotTotal)?);
        }
        d = d.with_coloring(&Coloring(colors))?;
    }
    Ok(d.normalized())
}

/// Serializes to the JSON diagram schema with arcs labelled from 1.
pub fn to_json(d: &Diagram) -> String {
    let label = |a: usize| a as i64 + 1;
    let crossings = d
        .crossings
        .iter()
        .map(|c| {
            let (oi, oo) = c.over();
            let (ui, uo) = c.under();
            JsonCrossing {
                sign: c.sign,
                over: [label(oi), label(oo)],
                under: [label(ui), label(uo)],
            }
        })
        .collect();
    let closures = d.loops.iter().map(|&a| [label(a), label(a)]).collect();
    let coloring = d
        .coloring()
        .0
        .iter()
        .enumerate()
        .map(|(k, &c)| (k.to_string(), c))
        .collect();
    serde_json::to_string(&JsonDiagram {
        crossings,
        closures,
        coloring: Some(coloring),
    })
    .expect("diagram JSON is serializable")
}
