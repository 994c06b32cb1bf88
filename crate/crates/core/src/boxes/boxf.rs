//! The `.boxf` box-family text format.
//!
//! ```text
//! boxf 1
//! d <D>
//! axes <n1> ... <nD>
//! sub <set_1>;...;<set_D>     comma-separated ascending indices, possibly empty
//! ```

use super::{BoxFamily, DiscreteBox, SubBox};
use crate::text::{expect_count, join_indices, lines, parse_index_list, parse_nat, ParseError};
use crate::Result;

pub fn to_boxf(fam: &BoxFamily) -> String {
    let sizes: Vec<String> = fam.space.sizes().iter().map(usize::to_string).collect();
    let mut out = format!("boxf 1\nd {}\naxes {}\n", fam.space.d(), sizes.join(" "));
    for sb in fam.subs() {
        let sets: Vec<String> = (0..fam.space.d()).map(|i| join_indices(&sb.set(i))).collect();
        out.push_str(&format!("sub {}\n", sets.join(";")));
    }
    out
}

pub fn parse_boxf(input: &str) -> Result<BoxFamily> {
    let ls = lines(input)?;
    let magic = ls[0];
    let args = magic.keyword("boxf")?;
    expect_count(&magic, &args, 1)?;
    if args[0].1 != "1" {
        return Err(magic.error(args[0].0, format!("unsupported version `{}`", args[0].1)).into());
    }
    let dl = *ls.get(1).ok_or_else(|| ParseError::new(2, 1, "missing `d` line"))?;
    let args = dl.keyword("d")?;
    expect_count(&dl, &args, 1)?;
    let d = parse_nat(&dl, args[0].0, args[0].1)?;
    let al = *ls.get(2).ok_or_else(|| ParseError::new(3, 1, "missing `axes` line"))?;
    let args = al.keyword("axes")?;
    expect_count(&al, &args, d)?;
    let sizes = args.iter().map(|&(c, t)| parse_nat(&al, c, t)).collect::<Result<Vec<_>, _>>()?;
    let space = DiscreteBox::new(sizes.clone()).map_err(|e| al.error(1, e.to_string()))?;
    let mut subs = Vec::new();
    for line in &ls[3..] {
        if !line.text.starts_with("sub ") {
            return Err(line.error(1, "expected `sub <set>;...`").into());
        }
        let body = &line.text[4..];
        let parts: Vec<&str> = body.split(';').collect();
        if parts.len() != d {
            return Err(line.error(5, format!("expected {d} axis sets, found {}", parts.len())).into());
        }
        let mut col = 5;
        let mut sets = Vec::with_capacity(d);
        for (axis, part) in parts.iter().enumerate() {
            let set = parse_index_list(line, col, part, true)?;
            if let Some(&a) = set.iter().find(|&&a| a >= sizes[axis]) {
                return Err(line.error(col, format!("index {a} outside axis {axis} of size {}", sizes[axis])).into());
            }
            sets.push(set);
            col += part.len() + 1;
        }
        subs.push(SubBox::from_sets(&sets)?);
    }
    BoxFamily::new(space, subs)
}
