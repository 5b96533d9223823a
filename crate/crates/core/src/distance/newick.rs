use std::fmt::Write as _;

use super::nj::UnrootedTree;
use crate::error::{Error, Result};

/// Node the tree is hung from when written out or drawn: the internal node
/// next to the lexicographically smallest leaf, or that leaf itself when the
/// tree has no internal node.
pub(crate) fn display_root(t: &UnrootedTree, adj: &[Vec<(usize, f64)>]) -> usize {
    let smallest = t
        .nodes
        .iter()
        .enumerate()
        .filter_map(|(i, l)| l.as_deref().map(|l| (l, i)))
        .min()
        .map(|(_, i)| i)
        .unwrap_or(0);
    adj[smallest]
        .iter()
        .map(|&(w, _)| w)
        .find(|&w| t.nodes[w].is_none())
        .unwrap_or(smallest)
}

/// Children of every node when hung from `root`, each list ordered by the
/// smallest leaf label below the child. Returns `(children, min_label)`.
pub(crate) fn rooted_children<'a>(
    t: &'a UnrootedTree,
    adj: &[Vec<(usize, f64)>],
    root: usize,
) -> (Vec<Vec<(usize, f64)>>, Vec<Option<&'a str>>) {
    let n = t.nodes.len();
    let mut children = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &(w, len) in &adj[v] {
            if parent[w] == usize::MAX {
                parent[w] = v;
                children[v].push((w, len));
                stack.push(w);
            }
        }
    }
    let mut min_label: Vec<Option<&str>> = t.nodes.iter().map(|l| l.as_deref()).collect();
    for &v in order.iter().rev() {
        if v != root {
            let p = parent[v];
            min_label[p] = match (min_label[p], min_label[v]) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
    }
    for c in &mut children {
        c.sort_by(|x, y| min_label[x.0].cmp(&min_label[y.0]));
    }
    (children, min_label)
}

/// Six decimals with trailing zeros trimmed.
pub fn format_length(len: f64) -> String {
    let s = format!("{len:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    match s {
        "-0" | "" => "0".to_string(),
        s => s.to_string(),
    }
}

fn needs_quotes(label: &str) -> bool {
    label.is_empty() || !label.chars().all(|c| c.is_alphanumeric() || matches!(c, '-' | '.' | '*' | '+' | '/'))
}

fn write_label(out: &mut String, label: &str) {
    if needs_quotes(label) {
        out.push('\'');
        out.push_str(&label.replace('\'', "''"));
        out.push('\'');
    } else {
        out.push_str(label);
    }
}

/// Newick text of `t`, ending in `;`.
///
/// The tree is hung from the internal node adjacent to the smallest leaf
/// label; children are ordered by their smallest descendant label and
/// lengths use six decimals with trailing zeros trimmed. Labels outside
/// `[A-Za-z0-9.+*/-]` are single-quoted.
pub fn export_newick(t: &UnrootedTree) -> String {
    let adj = t.adjacency();
    let root = display_root(t, &adj);
    let (children, _) = rooted_children(t, &adj, root);
    let mut out = String::new();
    if t.nodes[root].is_some() && !children[root].is_empty() {
        // no internal node: a leaf pair or a single leaf
        out.push('(');
        write_label(&mut out, t.nodes[root].as_deref().unwrap());
        out.push_str(":0");
        for &(c, len) in &children[root] {
            out.push(',');
            write_subtree(&mut out, t, &children, c);
            let _ = write!(out, ":{}", format_length(len));
        }
        out.push_str(");");
        return out;
    }
    write_subtree(&mut out, t, &children, root);
    out.push(';');
    out
}

fn write_subtree(out: &mut String, t: &UnrootedTree, children: &[Vec<(usize, f64)>], v: usize) {
    if children[v].is_empty() {
        if let Some(l) = &t.nodes[v] {
            write_label(out, l);
        }
        return;
    }
    out.push('(');
    for (i, &(c, len)) in children[v].iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_subtree(out, t, children, c);
        let _ = write!(out, ":{}", format_length(len));
    }
    out.push(')');
}

/// Parses Newick text into an unrooted tree. Internal labels are dropped,
/// missing lengths read as 0 and unlabeled degree-2 nodes (including a
/// bifurcating root) are suppressed by merging their two edges.
pub fn parse_newick(text: &str) -> Result<UnrootedTree> {
    let mut p = Parser {
        s: text.as_bytes(),
        text,
        pos: 0,
        nodes: Vec::new(),
        edges: Vec::new(),
    };
    p.skip_ws();
    p.subtree()?;
    p.skip_ws();
    if p.peek() != Some(b';') {
        return Err(p.error("expected ';'"));
    }
    p.pos += 1;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.error("trailing text after ';'"));
    }
    let tree = suppress_degree_two(UnrootedTree {
        nodes: p.nodes,
        edges: p.edges,
    });
    tree.validate()?;
    Ok(tree)
}

struct Parser<'a> {
    s: &'a [u8],
    text: &'a str,
    pos: usize,
    nodes: Vec<Option<String>>,
    edges: Vec<(usize, usize, f64)>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::validation(format!("newick: {msg} at byte {}", self.pos))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn subtree(&mut self) -> Result<usize> {
        self.skip_ws();
        let v = self.nodes.len();
        self.nodes.push(None);
        let mut kids = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            loop {
                let c = self.subtree()?;
                let len = self.length()?;
                kids.push((c, len));
                self.skip_ws();
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected ',' or ')'")),
                }
            }
        }
        let label = self.label()?;
        if kids.is_empty() {
            match label {
                Some(l) => self.nodes[v] = Some(l),
                None => return Err(self.error("leaf without a label")),
            }
        }
        for (c, len) in kids {
            self.edges.push((v, c, len));
        }
        Ok(v)
    }

    fn label(&mut self) -> Result<Option<String>> {
        self.skip_ws();
        if self.peek() == Some(b'\'') {
            self.pos += 1;
            let mut out = String::new();
            loop {
                let rest = &self.text[self.pos..];
                let Some(q) = rest.find('\'') else {
                    return Err(self.error("unterminated quoted label"));
                };
                out.push_str(&rest[..q]);
                self.pos += q + 1;
                if self.peek() == Some(b'\'') {
                    out.push('\'');
                    self.pos += 1;
                } else {
                    return Ok(Some(out));
                }
            }
        }
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| !c.is_ascii_whitespace() && !b"(),:;[]'".contains(&c))
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(None);
        }
        Ok(Some(self.text[start..self.pos].replace('_', " ")))
    }

    fn length(&mut self) -> Result<f64> {
        self.skip_ws();
        if self.peek() != Some(b':') {
            return Ok(0.0);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_digit() || matches!(c, b'.' | b'-' | b'+' | b'e' | b'E'))
        {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse::<f64>()
            .map_err(|_| self.error("bad branch length"))
    }
}

fn suppress_degree_two(mut t: UnrootedTree) -> UnrootedTree {
    loop {
        let adj = t.adjacency();
        let Some(v) = (0..t.nodes.len()).find(|&v| t.nodes[v].is_none() && adj[v].len() == 2) else {
            break;
        };
        let (a, la) = adj[v][0];
        let (b, lb) = adj[v][1];
        t.edges.retain(|&(x, y, _)| x != v && y != v);
        t.edges.push((a, b, la + lb));
        t.nodes.remove(v);
        for e in &mut t.edges {
            if e.0 > v {
                e.0 -= 1;
            }
            if e.1 > v {
                e.1 -= 1;
            }
        }
    }
    t
}
