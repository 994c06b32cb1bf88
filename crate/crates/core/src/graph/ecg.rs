//! The `.ecg` edge-colored graph text format.
//!
//! ```text
//! ecg 1
//! n <N>
//! t <T>
//! e <u> <v> <c>      one per edge, u < v, sorted by (u, v)
//! ```

use super::MultiColoredGraph;
use crate::text::{expect_count, lines, parse_nat};
use crate::Result;

pub fn to_ecg(g: &MultiColoredGraph) -> String {
    let mut out = format!("ecg 1\nn {}\nt {}\n", g.n(), g.t());
    for (u, v, c) in g.edges() {
        out.push_str(&format!("e {u} {v} {c}\n"));
    }
    out
}

pub fn parse_ecg(input: &str) -> Result<MultiColoredGraph> {
    let ls = lines(input)?;
    let header = |i: usize, what: &str| {
        ls.get(i).copied().ok_or_else(|| crate::text::ParseError::new(i + 1, 1, format!("missing `{what}` line")))
    };
    let magic = header(0, "ecg 1")?;
    let args = magic.keyword("ecg")?;
    expect_count(&magic, &args, 1)?;
    if args[0].1 != "1" {
        return Err(magic.error(args[0].0, format!("unsupported version `{}`", args[0].1)).into());
    }
    let nl = header(1, "n")?;
    let args = nl.keyword("n")?;
    expect_count(&nl, &args, 1)?;
    let n = parse_nat(&nl, args[0].0, args[0].1)?;
    let tl = header(2, "t")?;
    let args = tl.keyword("t")?;
    expect_count(&tl, &args, 1)?;
    let t = parse_nat(&tl, args[0].0, args[0].1)?;
    let mut g = MultiColoredGraph::new(n, t).map_err(|e| nl.error(1, e.to_string()))?;
    let mut prev: Option<(usize, usize)> = None;
    for line in &ls[3..] {
        let args = line.keyword("e")?;
        expect_count(line, &args, 3)?;
        let u = parse_nat(line, args[0].0, args[0].1)?;
        let v = parse_nat(line, args[1].0, args[1].1)?;
        let c = parse_nat(line, args[2].0, args[2].1)?;
        if u >= v {
            return Err(line.error(args[1].0, "edge endpoints must satisfy u < v").into());
        }
        if v >= n {
            return Err(line.error(args[1].0, format!("vertex {v} out of range 0..{n}")).into());
        }
        if c >= t {
            return Err(line.error(args[2].0, format!("color {c} out of range 0..{t}")).into());
        }
        if prev.is_some_and(|p| p >= (u, v)) {
            return Err(line.error(1, "edges must be strictly sorted by (u, v)").into());
        }
        prev = Some((u, v));
        g.add_edge(u, v, c).map_err(|e| line.error(1, e.to_string()))?;
    }
    Ok(g)
}
