//! Well-founded decorations and canonical pictures.
//!
//! A decoration assigns to every node the set of its children's values;
//! on well-founded graphs it exists and is unique (the Mostowski collapse).

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Apg, NodeId};
use crate::set::SetLiteral;

/// The unique node-to-set assignment of a well-founded graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoration {
    assignment: BTreeMap<NodeId, SetLiteral>,
}

impl Decoration {
    pub fn get(&self, a: &NodeId) -> Option<&SetLiteral> {
        self.assignment.get(a)
    }

    /// Pairs in lexicographic node order.
    pub fn iter(&self) -> impl Iterator<Item = (&NodeId, &SetLiteral)> {
        self.assignment.iter()
    }

    /// True iff every node's value is exactly the set of its children's values.
    pub fn satisfies_equation(&self, g: &Apg) -> bool {
        g.nodes().iter().all(|a| {
            let kids = g.children_of(a).expect("node of g");
            let expected = SetLiteral::new(
                kids.iter()
                    .map(|c| self.assignment[*c].clone())
                    .collect(),
            );
            self.assignment.get(a) == Some(&expected)
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.assignment.values().all(|v| seen.insert(v.clone()))
    }
}

/// Computes the decoration of a well-founded graph children-first.
///
/// Fails with `CyclicGraph` when the graph has a directed cycle, naming a
/// node on the cycle.
pub fn decorate_wf(g: &Apg) -> Result<Decoration> {
    let order = topo_children_first(g)?;
    let mut values: Vec<Option<SetLiteral>> = vec![None; g.node_count()];
    for i in order {
        let elems = g
            .child_indices(i)
            .iter()
            .map(|&c| values[c].clone().expect("children decorated first"))
            .collect();
        values[i] = Some(SetLiteral::new(elems));
    }
    let assignment = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| (g.name(i).clone(), v.expect("all nodes decorated")))
        .collect();
    Ok(Decoration { assignment })
}

/// Children-first topological order, or the name of a node on a cycle.
fn topo_children_first(g: &Apg) -> Result<Vec<usize>> {
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let n = g.node_count();
    let mut color = vec![WHITE; n];
    let mut order = Vec::with_capacity(n);
    // Iterative DFS; the second visit of a frame emits the node.
    let mut stack: Vec<(usize, bool)> = Vec::new();
    for root in 0..n {
        if color[root] != WHITE {
            continue;
        }
        stack.push((root, false));
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                color[v] = BLACK;
                order.push(v);
                continue;
            }
            if color[v] == BLACK {
                continue;
            }
            if color[v] == GREY {
                return Err(Error::CyclicGraph(g.name(v).as_str().to_string()));
            }
            color[v] = GREY;
            stack.push((v, true));
            for &c in g.child_indices(v) {
                match color[c] {
                    BLACK => {}
                    GREY => return Err(Error::CyclicGraph(g.name(c).as_str().to_string())),
                    _ => stack.push((c, false)),
                }
            }
        }
    }
    Ok(order)
}

/// The canonical picture of `x`: one node per member of the transitive
/// closure of `{x}`, an edge from each set to each of its members, pointed
/// at `x`. Node names are `s0`, `s1`, ... in increasing term order.
pub fn canonical_picture(x: &SetLiteral) -> Apg {
    let mut closure: Vec<SetLiteral> = Vec::new();
    let mut seen: HashMap<SetLiteral, usize> = HashMap::new();
    collect_closure(x, &mut closure, &mut seen);
    closure.sort_unstable();
    let rank_of: HashMap<&SetLiteral, usize> =
        closure.iter().enumerate().map(|(i, s)| (s, i)).collect();

    let decls = closure
        .iter()
        .map(|s| {
            let name = NodeId::new(format!("s{}", rank_of[s])).expect("generated name");
            let kids = s
                .elements()
                .iter()
                .map(|e| NodeId::new(format!("s{}", rank_of[e])).expect("generated name"))
                .collect();
            (name, kids)
        })
        .collect();
    let point = NodeId::new(format!("s{}", rank_of[x])).expect("generated name");
    Apg::new(decls, point).expect("canonical picture is a valid apg")
}

fn collect_closure(
    x: &SetLiteral,
    closure: &mut Vec<SetLiteral>,
    seen: &mut HashMap<SetLiteral, usize>,
) {
    if seen.contains_key(x) {
        return;
    }
    seen.insert(x.clone(), closure.len());
    closure.push(x.clone());
    for e in x.elements() {
        collect_closure(e, closure, seen);
    }
}

/// True iff the (well-founded) graph depicts `x` at its point.
pub fn is_picture_of(g: &Apg, x: &SetLiteral) -> Result<bool> {
    let d = decorate_wf(g)?;
    Ok(d.get(g.point()) == Some(x))
}
