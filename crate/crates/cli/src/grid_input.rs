//! Node CSV for `integral`: header `node,weight,phi,f,g,h`, one row per node.

use std::path::Path;

use serde::Deserialize;
use two_inner_core::integral::{QuadratureGrid, WeightedTriple};

use crate::error::CliError;

pub const HEADER: [&str; 6] = ["node", "weight", "phi", "f", "g", "h"];

#[derive(Debug, Deserialize)]
struct Row {
    node: f64,
    weight: f64,
    phi: f64,
    f: f64,
    g: f64,
    h: f64,
}

pub fn load(path: &Path) -> Result<(QuadratureGrid, WeightedTriple), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse(&text).map_err(|m| CliError::parse(path, m))
}

pub fn parse(text: &str) -> Result<(QuadratureGrid, WeightedTriple), String> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| e.to_string())?.clone();
    if header.iter().collect::<Vec<_>>() != HEADER {
        return Err(format!("expected header `{}`, got `{}`", HEADER.join(","), header.iter().collect::<Vec<_>>().join(",")));
    }
    let mut rows = Vec::new();
    for (i, rec) in reader.deserialize::<Row>().enumerate() {
        rows.push(rec.map_err(|e| format!("row {}: {e}", i + 1))?);
    }
    if rows.is_empty() {
        return Err("no data rows".into());
    }
    let col = |f: fn(&Row) -> f64| rows.iter().map(f).collect::<Vec<_>>();
    let grid = QuadratureGrid::new(col(|r| r.node), col(|r| r.weight)).map_err(|e| e.to_string())?;
    let triple = WeightedTriple::new(col(|r| r.f), col(|r| r.g), col(|r| r.h), col(|r| r.phi)).map_err(|e| e.to_string())?;
    Ok((grid, triple))
}

/// CSV text for a grid and triple, with round-trippable numbers.
pub fn render(grid: &QuadratureGrid, triple: &WeightedTriple) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    for i in 0..grid.len() {
        let cells = [grid.nodes()[i], grid.weights()[i], triple.phi[i], triple.f[i], triple.g[i], triple.h[i]];
        out.push_str(&cells.iter().map(|c| format!("{c:e}")).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let grid = QuadratureGrid::simpson(1.0, 2.0, 11).unwrap();
        let t = WeightedTriple::sample(&grid, |s| s * s, |s| s, |_| 1.0, |_| 1.0).unwrap();
        let (g2, t2) = parse(&render(&grid, &t)).unwrap();
        assert_eq!(grid, g2);
        assert_eq!(t, t2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse("").unwrap_err().contains("header"));
        assert!(parse("node,weight,phi,f,g,h\n").unwrap_err().contains("no data"));
        assert!(parse("node,weight,phi,f,g\n0,1,1,1,1\n").unwrap_err().contains("header"));
        assert!(parse("node,weight,phi,f,g,h\n0,1,1,1,1,1\n1,1,1,1\n").unwrap_err().contains("row 2"));
        assert!(parse("node,weight,phi,f,g,h\n0,1,1,1,1,x\n1,1,1,1,1,1\n").unwrap_err().contains("row 1"));
    }
}
