//! Turning command-line arguments into diagrams, tangles and colorings.

use std::fs;
use std::path::PathBuf;

use clap::Args;
use webskein::linkdiag::{from_braid_colored, parse_json, parse_pd, Coloring, Diagram, Tangle};
use webskein::{Error, Result};

#[derive(Args, Debug, Clone, Default)]
pub struct DiagramArgs {
    /// Planar diagram code, `X[a,b,c,d], ...`.
    #[arg(long, group = "input")]
    pub pd: Option<String>,
    /// Diagram in the JSON schema, or a braid `{"strands":k,"word":[...]}`.
    #[arg(long, group = "input")]
    pub json: Option<PathBuf>,
    /// Braid word as generator indices, e.g. `1,1,-2` or `sigma1 sigma2^-1`.
    #[arg(long, group = "input", allow_hyphen_values = true)]
    pub braid: Option<String>,
    /// Strand count for `--braid` (default: one more than the largest index).
    #[arg(long)]
    pub strands: Option<usize>,
    /// Color every component with this color.
    #[arg(long, conflicts_with = "coloring")]
    pub color: Option<u32>,
    /// Per-component colors, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub coloring: Vec<u32>,
}

/// Parses `1,-2,1`, `1 -2 1` or `sigma1 sigma2^-1 sigma1`.
pub fn parse_word(text: &str) -> Result<Vec<i32>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let bad = || Error::Parse(format!("bad braid generator {t:?}"));
            let t = t
                .strip_prefix("sigma")
                .or_else(|| t.strip_prefix('s'))
                .unwrap_or(t);
            let (idx, inv) = match t.strip_suffix("^-1") {
                Some(base) => (base, true),
                None => (t, false),
            };
            let g: i32 = idx.parse().map_err(|_| bad())?;
            if g == 0 {
                return Err(bad());
            }
            Ok(if inv { -g } else { g })
        })
        .collect()
}

fn default_strands(word: &[i32]) -> usize {
    word.iter()
        .map(|g| g.unsigned_abs() as usize + 1)
        .max()
        .unwrap_or(1)
}

impl DiagramArgs {
    pub fn diagram(&self) -> Result<Diagram> {
        let d = if let Some(pd) = &self.pd {
            parse_pd(pd)?
        } else if let Some(path) = &self.json {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            parse_json(&text)?
        } else if let Some(word) = &self.braid {
            let word = parse_word(word)?;
            let strands = self.strands.unwrap_or_else(|| default_strands(&word));
            from_braid_colored(&word, strands, &vec![1; strands])?
        } else {
            return Err(Error::Parse(
                "no diagram given (use --pd, --json or --braid)".into(),
            ));
        };
        Ok(d)
    }

    /// The requested coloring; without flags, the diagram's own colors.
    pub fn coloring(&self, d: &Diagram) -> Coloring {
        let k = d.components().len();
        if let Some(c) = self.color {
            Coloring::uniform(k, c)
        } else if !self.coloring.is_empty() {
            Coloring(self.coloring.clone())
        } else {
            d.coloring()
        }
    }

    /// The diagram with the requested coloring applied.
    pub fn colored(&self) -> Result<(Diagram, Coloring)> {
        let d = self.diagram()?;
        let mu = self.coloring(&d);
        Ok((d.with_coloring(&mu)?, mu))
    }
}

/// A tangle from a braid word with per-strand colors.
pub fn tangle(
    word: &str,
    strands: Option<usize>,
    color: Option<u32>,
    coloring: &[u32],
) -> Result<Tangle> {
    let word = parse_word(word)?;
    let strands = strands.unwrap_or_else(|| default_strands(&word));
    let colors = match color {
        Some(c) => vec![c; strands],
        None if !coloring.is_empty() => coloring.to_vec(),
        None => vec![1; strands],
    };
    Ok(Tangle::new(word, strands, colors))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words() {
        assert_eq!(parse_word("1,1,-2").unwrap(), vec![1, 1, -2]);
        assert_eq!(parse_word("sigma1 sigma2^-1").unwrap(), vec![1, -2]);
        assert_eq!(parse_word("").unwrap(), Vec::<i32>::new());
        assert!(parse_word("sigma0").is_err());
        assert!(parse_word("x").is_err());
    }
}
