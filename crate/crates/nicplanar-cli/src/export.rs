//! DOT and SVG renderings of the planarization of an embedding.
//!
//! The SVG uses a barycentric (Tutte) layout: the longest face is pinned to a
//! regular polygon and every other vertex is moved to the average of its
//! neighbors until the positions settle. For 3-connected planarizations,
//! such as those of maximal embeddings, the drawing is planar with convex
//! faces. For other inputs it is only a debugging aid.

use std::fmt::Write;

use nicplanar::embedding::{faces_of_rotation, NicEmbedding};

/// DOT of the planarization; crossing dummies are drawn as small squares.
pub fn planarization_dot(emb: &NicEmbedding) -> String {
    let mut s = String::from("graph planarization {\n  node [shape=circle, fontsize=10];\n");
    for v in 0..emb.n_planarization() {
        if emb.is_dummy(v) {
            let _ = writeln!(
                s,
                "  \"{}\" [shape=square, width=0.12, label=\"\"];",
                emb.vertex_name(v)
            );
        } else {
            let _ = writeln!(s, "  \"{v}\";");
        }
    }
    for (v, r) in emb.rotation().iter().enumerate() {
        for &w in r {
            if v < w {
                let _ = writeln!(
                    s,
                    "  \"{}\" -- \"{}\";",
                    emb.vertex_name(v),
                    emb.vertex_name(w)
                );
            }
        }
    }
    s.push_str("}\n");
    s
}

/// Barycentric coordinates in the unit square for all planarization vertices.
pub fn tutte_layout(emb: &NicEmbedding) -> Vec<(f64, f64)> {
    let rot = emb.rotation();
    let np = rot.len();
    let mut pos = vec![(0.5, 0.5); np];
    let mut fixed = vec![false; np];
    if let Ok(fm) = faces_of_rotation(rot) {
        if let Some(outer) = fm.faces.iter().max_by_key(|f| f.len()) {
            let k = outer.len() as f64;
            for (i, &v) in outer.corners.iter().enumerate() {
                let a = std::f64::consts::TAU * i as f64 / k;
                pos[v] = (0.5 + 0.5 * a.cos(), 0.5 + 0.5 * a.sin());
                fixed[v] = true;
            }
        }
    }
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for v in 0..np {
            if fixed[v] || rot[v].is_empty() {
                continue;
            }
            let d = rot[v].len() as f64;
            let (sx, sy) = rot[v]
                .iter()
                .fold((0.0, 0.0), |(x, y), &w| (x + pos[w].0, y + pos[w].1));
            let p = (sx / d, sy / d);
            delta = delta.max((p.0 - pos[v].0).abs() + (p.1 - pos[v].1).abs());
            pos[v] = p;
        }
        if delta < 1e-9 {
            break;
        }
    }
    pos
}

/// SVG drawing of the planarization with straight edges.
pub fn planarization_svg(emb: &NicEmbedding) -> String {
    const SIZE: f64 = 800.0;
    const PAD: f64 = 30.0;
    let pos = tutte_layout(emb);
    let at = |v: usize| {
        (
            PAD + pos[v].0 * (SIZE - 2.0 * PAD),
            PAD + pos[v].1 * (SIZE - 2.0 * PAD),
        )
    };
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    );
    s.push_str("<g stroke=\"black\" stroke-width=\"1\">\n");
    for (v, r) in emb.rotation().iter().enumerate() {
        for &w in r {
            if v < w {
                let ((x1, y1), (x2, y2)) = (at(v), at(w));
                let _ = writeln!(
                    s,
                    "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\"/>"
                );
            }
        }
    }
    s.push_str("</g>\n<g font-size=\"9\" text-anchor=\"middle\">\n");
    for v in 0..emb.n_planarization() {
        let (x, y) = at(v);
        if emb.is_dummy(v) {
            let _ = writeln!(
                s,
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"6\" height=\"6\" fill=\"red\"/>",
                x - 3.0,
                y - 3.0
            );
        } else {
            let _ = writeln!(
                s,
                "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"7\" fill=\"white\" stroke=\"black\"/>"
            );
            let _ = writeln!(s, "<text x=\"{x:.2}\" y=\"{:.2}\">{v}</text>", y + 3.0);
        }
    }
    s.push_str("</g>\n</svg>\n");
    s
}
