//! Accessible pointed graphs: the data model, the `apg v1` text format,
//! DOT export, and descendant subgraphs.
//!
//! An [`Apg`] is a finite directed graph together with a distinguished
//! point from which every node is reachable. Construction validates all
//! invariants eagerly, so no invalid `Apg` value ever exists.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A node name: a nonempty string over `[A-Za-z0-9_]`.
///
/// Comparison is lexicographic byte order; algorithms treat names as opaque.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_valid_name(&name) {
            Ok(NodeId(name))
        } else {
            Err(Error::InvalidName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for NodeId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// A finite accessible pointed graph.
///
/// Nodes keep their declaration order; children are stored as duplicate-free
/// sets. Equality ignores node order (same names, same point, same edges).
#[derive(Clone, Debug)]
pub struct Apg {
    names: Vec<NodeId>,
    index: HashMap<String, usize>,
    children: Vec<Vec<usize>>,
    point: usize,
}

impl Apg {
    /// Builds and validates a graph from declarations in order.
    ///
    /// Rejects duplicate declarations, undeclared or duplicated children,
    /// an undeclared point, and nodes unreachable from the point.
    pub fn new(decls: Vec<(NodeId, Vec<NodeId>)>, point: NodeId) -> Result<Self> {
        let mut names = Vec::with_capacity(decls.len());
        let mut index = HashMap::with_capacity(decls.len());
        for (name, _) in &decls {
            if index.insert(name.0.clone(), names.len()).is_some() {
                return Err(Error::DuplicateDeclaration(name.0.clone()));
            }
            names.push(name.clone());
        }
        let mut children = Vec::with_capacity(decls.len());
        for (name, kids) in &decls {
            let mut resolved = Vec::with_capacity(kids.len());
            for child in kids {
                let ci = *index
                    .get(child.as_str())
                    .ok_or_else(|| Error::UndeclaredNode(child.0.clone()))?;
                resolved.push(ci);
            }
            resolved.sort_unstable();
            for w in resolved.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateChild {
                        node: name.0.clone(),
                        child: names[w[0]].0.clone(),
                    });
                }
            }
            children.push(resolved);
        }
        let point = *index
            .get(point.as_str())
            .ok_or(Error::UndeclaredNode(point.0))?;

        let g = Apg {
            names,
            index,
            children,
            point,
        };
        if let Some(unreached) = g.first_unreachable() {
            return Err(Error::NotAccessible(g.names[unreached].0.clone()));
        }
        Ok(g)
    }

    fn first_unreachable(&self) -> Option<usize> {
        let seen = self.reachable_from(self.point);
        (0..self.names.len()).find(|&i| !seen[i])
    }

    pub(crate) fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.names.len()];
        let mut queue = VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &c in &self.children[v] {
                if !seen[c] {
                    seen[c] = true;
                    queue.push_back(c);
                }
            }
        }
        seen
    }

    /// Parses the `apg v1` text format.
    ///
    /// Line 1 is `apg v1`, line 2 is `point <name>`, then one line per node:
    /// `<name>: <child> <child> ...` with single spaces and LF endings.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.split('\n').enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| syntax(1, "empty input"))?;
        if header != "apg v1" {
            return Err(syntax(1, "expected header `apg v1`"));
        }
        let (_, point_line) = lines
            .next()
            .ok_or_else(|| syntax(2, "missing `point <name>` line"))?;
        let point_name = point_line
            .strip_prefix("point ")
            .ok_or_else(|| syntax(2, "expected `point <name>`"))?;
        let point = NodeId::new(point_name)?;

        let mut decls = Vec::new();
        let mut trailing = false;
        for (i, line) in lines {
            let lineno = i + 1;
            if line.is_empty() {
                trailing = true;
                continue;
            }
            if trailing {
                return Err(syntax(lineno, "content after blank line"));
            }
            let (name, rest) = line
                .split_once(':')
                .ok_or_else(|| syntax(lineno, "expected `<name>: <children>`"))?;
            let name = NodeId::new(name)?;
            let mut kids = Vec::new();
            if !rest.is_empty() {
                let rest = rest
                    .strip_prefix(' ')
                    .ok_or_else(|| syntax(lineno, "expected single space after `:`"))?;
                for tok in rest.split(' ') {
                    if tok.is_empty() {
                        return Err(syntax(lineno, "double space in child list"));
                    }
                    kids.push(NodeId::new(tok)?);
                }
            }
            decls.push((name, kids));
        }
        Apg::new(decls, point)
    }

    /// Serializes to `apg v1` text: point first, remaining nodes in
    /// lexicographic order, children sorted, trailing newline.
    pub fn to_text(&self) -> String {
        let mut out = String::from("apg v1\n");
        out.push_str("point ");
        out.push_str(self.names[self.point].as_str());
        out.push('\n');
        for i in self.serialization_order() {
            out.push_str(self.names[i].as_str());
            out.push(':');
            for name in self.sorted_child_names(i) {
                out.push(' ');
                out.push_str(name);
            }
            out.push('\n');
        }
        out
    }

    fn serialization_order(&self) -> Vec<usize> {
        let mut rest: Vec<usize> = (0..self.names.len()).filter(|&i| i != self.point).collect();
        rest.sort_unstable_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        let mut order = Vec::with_capacity(self.names.len());
        order.push(self.point);
        order.extend(rest);
        order
    }

    fn sorted_child_names(&self, i: usize) -> Vec<&str> {
        let mut kids: Vec<&str> = self.children[i].iter().map(|&c| self.names[c].as_str()).collect();
        kids.sort_unstable();
        kids
    }

    /// Deterministic DOT export: nodes in lexicographic order, point drawn
    /// as a double circle, edges sorted by (source, target).
    pub fn to_dot(&self) -> String {
        let mut order: Vec<usize> = (0..self.names.len()).collect();
        order.sort_unstable_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        let mut out = String::from("digraph apg {\n");
        for &i in &order {
            out.push_str("  \"");
            out.push_str(self.names[i].as_str());
            if i == self.point {
                out.push_str("\" [shape=doublecircle];\n");
            } else {
                out.push_str("\";\n");
            }
        }
        let mut edges: Vec<(&str, &str)> = self
            .edges()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        edges.sort_unstable();
        for (a, b) in edges {
            out.push_str("  \"");
            out.push_str(a);
            out.push_str("\" -> \"");
            out.push_str(b);
            out.push_str("\";\n");
        }
        out.push_str("}\n");
        out
    }

    /// The subgraph below `a`: nodes reachable from `a`, pointed at `a`.
    pub fn descendant(&self, a: &NodeId) -> Result<Apg> {
        let start = self.idx(a)?;
        Ok(self.descendant_at(start))
    }

    pub(crate) fn descendant_at(&self, start: usize) -> Apg {
        let seen = self.reachable_from(start);
        let kept: Vec<usize> = (0..self.names.len()).filter(|&i| seen[i]).collect();
        let mut remap = vec![usize::MAX; self.names.len()];
        for (new, &old) in kept.iter().enumerate() {
            remap[old] = new;
        }
        let names: Vec<NodeId> = kept.iter().map(|&i| self.names[i].clone()).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.0.clone(), i))
            .collect();
        let children = kept
            .iter()
            .map(|&i| {
                let mut kids: Vec<usize> = self.children[i].iter().map(|&c| remap[c]).collect();
                kids.sort_unstable();
                kids
            })
            .collect();
        Apg {
            names,
            index,
            children,
            point: remap[start],
        }
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    pub fn point(&self) -> &NodeId {
        &self.names[self.point]
    }

    /// Nodes in declaration order.
    pub fn nodes(&self) -> &[NodeId] {
        &self.names
    }

    pub fn contains(&self, a: &NodeId) -> bool {
        self.index.contains_key(a.as_str())
    }

    /// Children of `a` in lexicographic order.
    pub fn children_of(&self, a: &NodeId) -> Result<Vec<&NodeId>> {
        let i = self.idx(a)?;
        let mut kids: Vec<&NodeId> = self.children[i].iter().map(|&c| &self.names[c]).collect();
        kids.sort_unstable();
        Ok(kids)
    }

    pub fn has_edge(&self, a: &NodeId, b: &NodeId) -> bool {
        match (self.idx(a), self.idx(b)) {
            (Ok(i), Ok(j)) => self.children[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    /// All edges as (parent, child) pairs, in declaration order of parents.
    pub fn edges(&self) -> impl Iterator<Item = (&NodeId, &NodeId)> {
        self.children.iter().enumerate().flat_map(move |(i, kids)| {
            kids.iter().map(move |&c| (&self.names[i], &self.names[c]))
        })
    }

    pub(crate) fn idx(&self, a: &NodeId) -> Result<usize> {
        self.index
            .get(a.as_str())
            .copied()
            .ok_or_else(|| Error::UnknownNode(a.0.clone()))
    }

    pub(crate) fn point_idx(&self) -> usize {
        self.point
    }

    pub(crate) fn child_indices(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub(crate) fn name(&self, i: usize) -> &NodeId {
        &self.names[i]
    }

    /// Parents of each node, as sorted index lists.
    pub(crate) fn parent_indices(&self) -> Vec<Vec<usize>> {
        let mut parents = vec![Vec::new(); self.names.len()];
        for (i, kids) in self.children.iter().enumerate() {
            for &c in kids {
                parents[c].push(i);
            }
        }
        for p in &mut parents {
            p.sort_unstable();
            p.dedup();
        }
        parents
    }

    fn edge_name_set(&self) -> BTreeSet<(&str, &str)> {
        self.edges()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect()
    }
}

impl PartialEq for Apg {
    fn eq(&self, other: &Self) -> bool {
        if self.point() != other.point() || self.names.len() != other.names.len() {
            return false;
        }
        let mine: BTreeSet<&str> = self.names.iter().map(NodeId::as_str).collect();
        let theirs: BTreeSet<&str> = other.names.iter().map(NodeId::as_str).collect();
        mine == theirs && self.edge_name_set() == other.edge_name_set()
    }
}

impl Eq for Apg {}

fn syntax(line: usize, msg: &str) -> Error {
    Error::Syntax {
        line,
        msg: msg.to_string(),
    }
}

/// Picks a name not yet in `used`, starting from `base` and then
/// `base2`, `base3`, ... Inserts the chosen name into `used`.
pub(crate) fn unique_name(base: String, used: &mut std::collections::HashSet<String>) -> String {
    if used.insert(base.clone()) {
        return base;
    }
    for k in 2usize.. {
        let candidate = format!("{base}_{k}");
        if used.insert(candidate.clone()) {
            return candidate;
        }
    }
    unreachable!()
}
