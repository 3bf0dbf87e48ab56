//! ASCII and SVG pictures of a mosaic.
//!
//! The ASCII form is the unrotated grid, one 3×3 character block per tile. The
//! SVG form draws the front projection: the grid turned 45° counterclockwise,
//! with cusps as sharp horizontal points and a break in the understrand at
//! every crossing. Output depends only on the mosaic.

use std::fmt::Write;

use crate::error::Error;
use crate::invariants::trace;
use crate::tile::{Edge, Mosaic, Strand, Tile};

/// Bumped whenever the SVG markup changes shape.
pub const SVG_STYLE_VERSION: u32 = 1;

/// Half the diagonal of a tile in SVG user units.
const H: i64 = 24;
const PAD: i64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Ascii,
    Svg,
}

impl std::str::FromStr for Style {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "ascii" => Ok(Style::Ascii),
            "svg" => Ok(Style::Svg),
            other => Err(Error::Domain(format!("unknown render style {other:?}"))),
        }
    }
}

pub fn render(m: &Mosaic, style: Style) -> String {
    match style {
        Style::Ascii => render_ascii(m),
        Style::Svg => render_svg(m),
    }
}

fn center_char(t: Tile) -> char {
    match t {
        Tile::T0 => ' ',
        Tile::T1 | Tile::T2 | Tile::T3 | Tile::T4 => '+',
        Tile::T5 => '-',
        Tile::T6 | Tile::T10 => '|',
        Tile::T7 => '/',
        Tile::T8 => '\\',
    }
}

pub fn render_ascii(m: &Mosaic) -> String {
    let (rows, cols) = (m.rows(), m.cols());
    let mut grid = vec![vec![' '; 3 * cols]; 3 * rows];
    for r in 0..rows {
        for c in 0..cols {
            let t = m.get(r + 1, c + 1);
            let (y, x) = (3 * r, 3 * c);
            grid[y + 1][x + 1] = center_char(t);
            if t == Tile::T0 {
                grid[y + 1][x + 1] = '.';
                continue;
            }
            let mask = t.mask();
            if mask & Edge::N.bit() != 0 {
                grid[y][x + 1] = '|';
            }
            if mask & Edge::S.bit() != 0 {
                grid[y + 2][x + 1] = '|';
            }
            if mask & Edge::W.bit() != 0 {
                grid[y + 1][x] = '-';
            }
            if mask & Edge::E.bit() != 0 {
                grid[y + 1][x + 2] = '-';
            }
        }
    }
    let mut out = String::new();
    for line in grid {
        let s: String = line.into_iter().collect();
        out.push_str(s.trim_end());
        out.push('\n');
    }
    out.push_str("legend: . blank, + corner, - T5, | T6, / T7, \\ T8, | with stubs on all sides T10 (vertical over)\n");
    out.push_str("grid view; in the front N is upper-left, E upper-right, S lower-right, W lower-left\n");
    out
}

type Pt = (i64, i64);

fn tile_center(r: usize, c: usize, cols: usize) -> Pt {
    (PAD + (r + c + 1) as i64 * H, PAD + (r as i64 - c as i64 + cols as i64) * H)
}

fn edge_mid(center: Pt, e: Edge) -> Pt {
    let (dx, dy) = e.role();
    (center.0 + dx as i64 * H / 2, center.1 - dy as i64 * H / 2)
}

fn toward(a: Pt, b: Pt) -> Pt {
    ((a.0 + b.0) / 2, (a.1 + b.1) / 2)
}

/// Path commands for one strand traversal from `from` to `to`, excluding the
/// initial move.
fn strand_segment(d: &mut String, center: Pt, from: Edge, to: Edge) {
    let a = edge_mid(center, from);
    let b = edge_mid(center, to);
    let ca = toward(a, center);
    let cb = toward(b, center);
    if (Strand { a: from, b: to }).is_cusp() {
        // Branches approach the cusp from the side their endpoints lie on.
        let s = if from.is_left() { -H / 3 } else { H / 3 };
        let p = center;
        let _ = write!(d, " C{} {} {} {} {} {}", ca.0, ca.1, p.0 + s, p.1, p.0, p.1);
        let _ = write!(d, " C{} {} {} {} {} {}", p.0 + s, p.1, cb.0, cb.1, b.0, b.1);
    } else {
        let _ = write!(d, " C{} {} {} {} {} {}", ca.0, ca.1, cb.0, cb.1, b.0, b.1);
    }
}

pub fn render_svg(m: &Mosaic) -> String {
    let (rows, cols) = (m.rows(), m.cols());
    let size = 2 * PAD + (rows + cols) as i64 * H;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}" data-style-version="{SVG_STYLE_VERSION}" data-rows="{rows}" data-cols="{cols}">"#
    );
    s.push_str("<style>.grid{fill:none;stroke:#ddd;stroke-width:1}.component,.strand{fill:none;stroke:#000;stroke-width:2;stroke-linejoin:round}.gap{stroke:#fff;stroke-width:8}.over{stroke:#000;stroke-width:2}</style>\n");
    s.push_str(r##"<rect width="100%" height="100%" fill="#fff"/>"##);
    s.push('\n');
    s.push_str("<g class=\"grid\">\n");
    for r in 0..rows {
        for c in 0..cols {
            let (cx, cy) = tile_center(r, c, cols);
            let _ = writeln!(
                s,
                r#"<path d="M{} {} L{} {} L{} {} L{} {} Z"/>"#,
                cx - H,
                cy,
                cx,
                cy - H,
                cx + H,
                cy,
                cx,
                cy + H
            );
        }
    }
    s.push_str("</g>\n");
    match trace(m) {
        Ok(components) => {
            for comp in components {
                let Some(first) = comp.steps.first() else { continue };
                let c0 = tile_center(first.cell / cols, first.cell % cols, cols);
                let start = edge_mid(c0, first.from);
                let mut d = format!("M{} {}", start.0, start.1);
                let mut cusps = 0;
                for st in &comp.steps {
                    let center = tile_center(st.cell / cols, st.cell % cols, cols);
                    if (Strand { a: st.from, b: st.to }).is_cusp() {
                        cusps += 1;
                    }
                    strand_segment(&mut d, center, st.from, st.to);
                }
                d.push_str(" Z");
                let _ = writeln!(s, r#"<path class="component" data-cusps="{cusps}" d="{d}"/>"#);
            }
        }
        // Not a closed diagram: draw each tile's strands on their own.
        Err(_) => {
            for r in 0..rows {
                for c in 0..cols {
                    let center = tile_center(r, c, cols);
                    for st in m.get(r + 1, c + 1).strands() {
                        let a = edge_mid(center, st.a);
                        let mut d = format!("M{} {}", a.0, a.1);
                        strand_segment(&mut d, center, st.a, st.b);
                        let _ = writeln!(s, r#"<path class="strand" d="{d}"/>"#);
                    }
                }
            }
        }
    }
    for r in 0..rows {
        for c in 0..cols {
            if m.get(r + 1, c + 1) != Tile::T10 {
                continue;
            }
            let center = tile_center(r, c, cols);
            let e = edge_mid(center, Edge::E);
            let (dx, dy) = ((e.0 - center.0) / 2, (e.1 - center.1) / 2);
            let _ = writeln!(
                s,
                r#"<line class="gap" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                center.0 - dx,
                center.1 - dy,
                center.0 + dx,
                center.1 + dy
            );
            let n = edge_mid(center, Edge::N);
            let so = edge_mid(center, Edge::S);
            let _ = writeln!(s, r#"<line class="over" x1="{}" y1="{}" x2="{}" y2="{}"/>"#, n.0, n.1, so.0, so.1);
        }
    }
    s.push_str("</svg>\n");
    s
}
