use std::f64::consts::TAU;
use std::fmt::Write as _;

use super::newick::{display_root, rooted_children};
use super::nj::UnrootedTree;

/// A drawn node; coordinates are in branch-length units.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedNode {
    pub x: f64,
    pub y: f64,
    pub label: Option<String>,
}

/// Node coordinates plus the edges between them.
#[derive(Debug, Clone, PartialEq)]
pub struct Drawing {
    pub nodes: Vec<PlacedNode>,
    /// `(a, b, branch length)`.
    pub edges: Vec<(usize, usize, f64)>,
}

/// Equal-angle layout: starting from the same node the Newick export hangs
/// the tree from, each subtree gets an angular wedge proportional to its leaf
/// count and each edge is drawn along the bisector of its child's wedge with
/// its branch length.
pub fn layout_tree(t: &UnrootedTree) -> Drawing {
    let n = t.nodes.len();
    let adj = t.adjacency();
    let root = display_root(t, &adj);
    let (children, _) = rooted_children(t, &adj, root);

    let mut leaves = vec![0usize; n];
    fn count(v: usize, children: &[Vec<(usize, f64)>], t: &UnrootedTree, leaves: &mut [usize]) -> usize {
        let own = usize::from(t.nodes[v].is_some());
        let c = own + children[v].iter().map(|&(c, _)| count(c, children, t, leaves)).sum::<usize>();
        leaves[v] = c;
        c
    }
    count(root, &children, t, &mut leaves);

    let mut pos = vec![(0.0, 0.0); n];
    // (node, wedge start, wedge width)
    let mut stack = vec![(root, 0.0, TAU)];
    while let Some((v, start, width)) = stack.pop() {
        let below: usize = children[v].iter().map(|&(c, _)| leaves[c]).sum();
        let mut a = start;
        for &(c, len) in &children[v] {
            let w = width * leaves[c] as f64 / below.max(1) as f64;
            let theta = a + w / 2.0;
            pos[c] = (pos[v].0 + len * theta.cos(), pos[v].1 + len * theta.sin());
            stack.push((c, a, w));
            a += w;
        }
    }
    Drawing {
        nodes: pos
            .into_iter()
            .zip(&t.nodes)
            .map(|((x, y), label)| PlacedNode { x, y, label: label.clone() })
            .collect(),
        edges: t.edges.clone(),
    }
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

impl Drawing {
    fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.nodes {
            b = (b.0.min(p.x), b.1.min(p.y), b.2.max(p.x), b.3.max(p.y));
        }
        b
    }

    /// SVG picture with a uniform scale, so drawn lengths stay proportional
    /// to branch lengths.
    pub fn to_svg(&self) -> String {
        const SIZE: f64 = 600.0;
        const MARGIN: f64 = 90.0;
        let (x0, y0, x1, y1) = self.bounds();
        let span = (x1 - x0).max(y1 - y0);
        let scale = if span > 0.0 { (SIZE - 2.0 * MARGIN) / span } else { 1.0 };
        let tx = |x: f64| MARGIN + (x - x0) * scale;
        // SVG y grows downwards
        let ty = |y: f64| MARGIN + (y1 - y) * scale;
        let w = 2.0 * MARGIN + (x1 - x0) * scale;
        let h = 2.0 * MARGIN + (y1 - y0) * scale;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
        );
        s.push_str("<g stroke=\"black\" stroke-width=\"1.5\">\n");
        for &(a, b, _) in &self.edges {
            let (pa, pb) = (&self.nodes[a], &self.nodes[b]);
            let _ = writeln!(
                s,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                tx(pa.x),
                ty(pa.y),
                tx(pb.x),
                ty(pb.y)
            );
        }
        s.push_str("</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n");
        for p in &self.nodes {
            if let Some(l) = &p.label {
                let anchor = if p.x < (x0 + x1) / 2.0 { "end" } else { "start" };
                let dx = if anchor == "end" { -4.0 } else { 4.0 };
                let _ = writeln!(
                    s,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="2.5"/><text x="{:.2}" y="{:.2}" text-anchor="{anchor}">{}</text>"#,
                    tx(p.x),
                    ty(p.y),
                    tx(p.x) + dx,
                    ty(p.y) + 4.0,
                    escape_xml(l)
                );
            }
        }
        s.push_str("</g>\n</svg>\n");
        s
    }

    /// Graphviz DOT with pinned positions (`neato -n` keeps them).
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph tree {\n  node [shape=point];\n");
        for (i, p) in self.nodes.iter().enumerate() {
            match &p.label {
                Some(l) => {
                    let _ = writeln!(
                        s,
                        "  n{i} [shape=plaintext, label=\"{}\", pos=\"{:.6},{:.6}!\"];",
                        l.replace('\\', "\\\\").replace('"', "\\\""),
                        p.x,
                        p.y
                    );
                }
                None => {
                    let _ = writeln!(s, "  n{i} [pos=\"{:.6},{:.6}!\"];", p.x, p.y);
                }
            }
        }
        for &(a, b, len) in &self.edges {
            let _ = writeln!(s, "  n{a} -- n{b} [len={len:.6}];");
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::newick::parse_newick;

    fn angle(d: &Drawing, label: &str) -> f64 {
        let p = d.nodes.iter().find(|p| p.label.as_deref() == Some(label)).unwrap();
        p.y.atan2(p.x).to_degrees().rem_euclid(360.0)
    }

    #[test]
    fn star_tree_spacing() {
        let d = layout_tree(&parse_newick("(a:1,b:1,c:1,d:1);").unwrap());
        let mut angles: Vec<f64> = ["a", "b", "c", "d"].iter().map(|l| angle(&d, l)).collect();
        angles.sort_by(f64::total_cmp);
        for w in angles.windows(2) {
            assert!((w[1] - w[0] - 90.0).abs() < 1e-9);
        }
    }

    #[test]
    fn drawn_lengths_match_branch_lengths() {
        let d = layout_tree(&parse_newick("((a:0.3,b:1.2):0.5,c:0.9,(d:0.1,(e:2,f:0.4):0.05):0.7);").unwrap());
        for &(a, b, len) in &d.edges {
            let (pa, pb) = (&d.nodes[a], &d.nodes[b]);
            let drawn = (pa.x - pb.x).hypot(pa.y - pb.y);
            assert!((drawn - len).abs() <= 1e-3 * len.max(1e-12), "{drawn} vs {len}");
        }
    }

    #[test]
    fn svg_and_dot_are_deterministic() {
        let t = parse_newick("(x<y:1,b:2,c:3);").unwrap();
        let d = layout_tree(&t);
        let svg = d.to_svg();
        assert!(svg.starts_with("<svg") && svg.contains("x&lt;y"));
        assert_eq!(svg, layout_tree(&t).to_svg());
        let dot = d.to_dot();
        assert!(dot.contains("label=\"b\"") && dot.matches(" -- ").count() == 3);
    }
}
