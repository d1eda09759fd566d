//! Deterministic drawings of one- and two-dimensional images.

use std::fmt::Write;

use crate::digital::{DigitalImage, LatticePoint};

const PITCH: i64 = 40;
const MARGIN: i64 = 20;
const RADIUS: i64 = 6;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];
const GLYPHS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";

/// An image to draw, with an optional group index per point used for tinting.
pub struct Scene<'a> {
    pub image: &'a DigitalImage,
    pub groups: Option<Vec<usize>>,
}

fn plane(p: &LatticePoint) -> (i64, i64) {
    if p.dim() == 1 {
        (p.coord(0), 0)
    } else {
        (p.coord(0), p.coord(1))
    }
}

fn extent(x: &DigitalImage) -> (i64, i64, i64, i64) {
    let (lo, hi) = x.bounds();
    if x.dim() == 1 {
        (lo[0], 0, hi[0], 0)
    } else {
        (lo[0], lo[1], hi[0], hi[1])
    }
}

pub fn svg(scene: &Scene) -> String {
    let x = scene.image;
    let (x0, y0, x1, y1) = extent(x);
    let at = |p: &LatticePoint| {
        let (a, b) = plane(p);
        (MARGIN + (a - x0) * PITCH, MARGIN + (y1 - b) * PITCH)
    };
    let width = 2 * MARGIN + (x1 - x0) * PITCH;
    let height = 2 * MARGIN + (y1 - y0) * PITCH;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, r##"<g stroke="#555555" stroke-width="2">"##).unwrap();
    for (i, j) in x.adjacent_pairs() {
        let (ax, ay) = at(x.point(i));
        let (bx, by) = at(x.point(j));
        writeln!(out, r#"<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}"/>"#).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, r#"<g stroke="black" stroke-width="1">"#).unwrap();
    for (i, p) in x.points().iter().enumerate() {
        let (cx, cy) = at(p);
        let fill = match &scene.groups {
            Some(g) => PALETTE[g[i] % PALETTE.len()],
            None => "white",
        };
        writeln!(
            out,
            r#"<circle cx="{cx}" cy="{cy}" r="{RADIUS}" fill="{fill}"/>"#
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}

/// One text row per lattice row, top row first: `.` for absent points, `o` for points, or
/// a letter per group when tinted.
pub fn ascii(scene: &Scene) -> String {
    let x = scene.image;
    let (x0, y0, x1, y1) = extent(x);
    let mut out = String::new();
    for b in (y0..=y1).rev() {
        for a in x0..=x1 {
            let p = if x.dim() == 1 {
                LatticePoint::from([a])
            } else {
                LatticePoint::from([a, b])
            };
            let glyph = match (x.index_of(&p), &scene.groups) {
                (None, _) => '.',
                (Some(_), None) => 'o',
                (Some(i), Some(g)) => GLYPHS[g[i] % GLYPHS.len()] as char,
            };
            out.push(glyph);
        }
        out.push('\n');
    }
    out
}
