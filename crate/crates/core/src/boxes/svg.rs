use std::fmt::Write;

use super::BoxFamily;
use crate::Result;

const CELL: usize = 24;
const MARGIN: usize = 4;

/// Fill color of sub-box `idx`: hues spaced by the golden angle.
fn fill(idx: usize) -> String {
    let hue = (idx as f64 * 137.507_764_050_037_85) % 360.0;
    let lightness = if idx % 2 == 0 { 72 } else { 60 };
    format!("hsl({hue:.1},65%,{lightness}%)")
}

/// Unit cells filled by owning sub-box (white when uncovered) and strokes on
/// every cell side that separates two owners or borders the box. Axis 1 runs
/// left to right, axis 2 top to bottom.
pub fn render_svg(fam: &BoxFamily) -> Result<String> {
    super::require_plane(fam)?;
    let (n1, n2) = (fam.space.sizes()[0], fam.space.sizes()[1]);
    let (w, h) = (n1 * CELL + 2 * MARGIN, n2 * CELL + 2 * MARGIN);
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    let owners: Vec<Vec<Option<usize>>> = (0..n1).map(|x| (0..n2).map(|y| fam.owner(&[x, y])).collect()).collect();
    for y in 0..n2 {
        for x in 0..n1 {
            let (px, py) = (MARGIN + x * CELL, MARGIN + y * CELL);
            let (color, owner) = match owners[x][y] {
                Some(o) => (fill(o), o.to_string()),
                None => ("#ffffff".to_string(), "none".to_string()),
            };
            writeln!(
                out,
                r#"<rect class="cell" data-owner="{owner}" x="{px}" y="{py}" width="{CELL}" height="{CELL}" fill="{color}"/>"#
            )
            .unwrap();
        }
    }
    let owner = |x: isize, y: isize| -> Option<Option<usize>> {
        (x >= 0 && y >= 0 && (x as usize) < n1 && (y as usize) < n2).then(|| owners[x as usize][y as usize])
    };
    let border = |out: &mut String, x1: usize, y1: usize, x2: usize, y2: usize| {
        writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="2"/>"#,
            MARGIN + x1 * CELL,
            MARGIN + y1 * CELL,
            MARGIN + x2 * CELL,
            MARGIN + y2 * CELL
        )
        .unwrap();
    };
    // vertical segments at x = 0..=n1, horizontal at y = 0..=n2
    for x in 0..=n1 {
        for y in 0..n2 {
            let (a, b) = (owner(x as isize - 1, y as isize), owner(x as isize, y as isize));
            if a.is_none() || b.is_none() || a != b {
                border(&mut out, x, y, x, y + 1);
            }
        }
    }
    for y in 0..=n2 {
        for x in 0..n1 {
            let (a, b) = (owner(x as isize, y as isize - 1), owner(x as isize, y as isize));
            if a.is_none() || b.is_none() || a != b {
                border(&mut out, x, y, x + 1, y);
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxes::{figure1_partition, grid_partition, BoxFamily, DiscreteBox};
    use std::collections::HashSet;

    fn owners(svg: &str) -> Vec<String> {
        svg.lines()
            .filter(|l| l.starts_with("<rect"))
            .map(|l| l.split("data-owner=\"").nth(1).unwrap().split('"').next().unwrap().to_string())
            .collect()
    }

    #[test]
    fn figure1_cells() {
        let svg = render_svg(&figure1_partition(4, 6, 6).unwrap()).unwrap();
        let o = owners(&svg);
        assert_eq!(o.len(), 36);
        assert_eq!(o.iter().collect::<HashSet<_>>().len(), 12);
        assert_eq!(svg, render_svg(&figure1_partition(4, 6, 6).unwrap()).unwrap());
    }

    #[test]
    fn empty_family() {
        let fam = BoxFamily::new(DiscreteBox::new(vec![2, 2]).unwrap(), vec![]).unwrap();
        let o = owners(&render_svg(&fam).unwrap());
        assert_eq!(o, vec!["none"; 4]);
    }

    #[test]
    fn grid_fills() {
        let fam = grid_partition(&DiscreteBox::new(vec![3, 3]).unwrap(), &[3, 3]).unwrap();
        let svg = render_svg(&fam).unwrap();
        assert_eq!(owners(&svg).iter().collect::<HashSet<_>>().len(), 9);
        let fills: HashSet<&str> = svg.lines().filter_map(|l| l.split("fill=\"").nth(1)).collect();
        assert_eq!(fills.len(), 9);
        let cube = grid_partition(&DiscreteBox::new(vec![2, 2, 2]).unwrap(), &[1, 1, 1]).unwrap();
        assert!(render_svg(&cube).is_err());
    }
}
