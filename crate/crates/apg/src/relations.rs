//! Binary relations between accessible pointed graphs: isomorphism ≅,
//! Finsler equivalence ≅* (isomorphism of stars), Scott equivalence ≅t,
//! the maximum bisimulation, and decoration-like homomorphisms ⇝ / ↔,
//! together with verifiers for user-supplied witnesses.
//!
//! Witness-returning searches are deterministic: sources are processed in
//! lexicographic name order and targets tried in lexicographic name order,
//! so the first witness found is the least one.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{Apg, NodeId};
use crate::refine::{
    stable_blocks, union_partition, use_parallel, Digraph, Partition, SigKind, Side,
};

/// A function from the nodes of one graph to the nodes of another.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodeMap {
    pairs: BTreeMap<NodeId, NodeId>,
}

impl NodeMap {
    pub fn new() -> Self {
        NodeMap::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        NodeMap {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn identity(g: &Apg) -> Self {
        NodeMap::from_pairs(g.nodes().iter().map(|n| (n.clone(), n.clone())))
    }

    pub fn insert(&mut self, from: NodeId, to: NodeId) {
        self.pairs.insert(from, to);
    }

    pub fn get(&self, a: &NodeId) -> Option<&NodeId> {
        self.pairs.get(a)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in lexicographic source order.
    pub fn iter(&self) -> impl Iterator<Item = (&NodeId, &NodeId)> {
        self.pairs.iter()
    }

    /// The inverse map, if this map is injective.
    pub fn inverse(&self) -> Option<NodeMap> {
        let mut inv = BTreeMap::new();
        for (a, b) in &self.pairs {
            if inv.insert(b.clone(), a.clone()).is_some() {
                return None;
            }
        }
        Some(NodeMap { pairs: inv })
    }
}

/// A concrete set of node pairs across two graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairRelation {
    pairs: BTreeSet<(NodeId, NodeId)>,
}

impl PairRelation {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        PairRelation {
            pairs: pairs.into_iter().collect(),
        }
    }

    /// Every pair of nodes of `g` and `h`.
    pub fn full(g: &Apg, h: &Apg) -> Self {
        PairRelation::from_pairs(
            g.nodes()
                .iter()
                .flat_map(|a| h.nodes().iter().map(move |b| (a.clone(), b.clone()))),
        )
    }

    pub fn identity(g: &Apg) -> Self {
        PairRelation::from_pairs(g.nodes().iter().map(|n| (n.clone(), n.clone())))
    }

    /// Pairs (a in `g`, b in `h`) sharing a block of `p`.
    pub fn from_partition(p: &Partition, g: &Apg, h: &Apg) -> Self {
        let mut pairs = BTreeSet::new();
        for a in g.nodes() {
            for b in h.nodes() {
                if p.same_block((Side::Left, a), (Side::Right, b)) {
                    pairs.insert((a.clone(), b.clone()));
                }
            }
        }
        PairRelation { pairs }
    }

    pub fn contains(&self, a: &NodeId, b: &NodeId) -> bool {
        self.pairs.contains(&(a.clone(), b.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(NodeId, NodeId)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// True iff `a` and `a2` have the same set of children in `g`.
pub fn same_children(g: &Apg, a: &NodeId, a2: &NodeId) -> Result<bool> {
    let i = g.idx(a)?;
    let j = g.idx(a2)?;
    Ok(g.child_indices(i) == g.child_indices(j))
}

/// Adds a fresh point above the existing one when the point has a parent;
/// otherwise returns the graph unchanged. The fresh node inherits the
/// point's children and is named `_star`, or `_star0`, `_star1`, ... on
/// collision.
pub fn star(g: &Apg) -> Apg {
    let point = g.point_idx();
    let has_parent = (0..g.node_count()).any(|v| g.child_indices(v).contains(&point));
    if !has_parent {
        return g.clone();
    }
    let taken: HashSet<&str> = g.nodes().iter().map(NodeId::as_str).collect();
    let fresh = std::iter::once("_star".to_string())
        .chain((0..).map(|k| format!("_star{k}")))
        .find(|name| !taken.contains(name.as_str()))
        .expect("unbounded name supply");
    let fresh = NodeId::new(fresh).expect("generated name");

    let mut decls: Vec<(NodeId, Vec<NodeId>)> = g
        .nodes()
        .iter()
        .map(|n| {
            (
                n.clone(),
                g.children_of(n).expect("node of g").into_iter().cloned().collect(),
            )
        })
        .collect();
    let point_children: Vec<NodeId> = g
        .children_of(g.point())
        .expect("point of g")
        .into_iter()
        .cloned()
        .collect();
    decls.push((fresh.clone(), point_children));
    Apg::new(decls, fresh).expect("star of a valid apg is valid")
}

/// Finsler equivalence: isomorphism of the two stars.
pub fn finsler_eq(g: &Apg, h: &Apg) -> bool {
    isomorphic(&star(g), &star(h)).is_some()
}

/// Coarsest exact (counting) refinement partition of the disjoint union:
/// blockmates have, for every block K, the same number of children in K.
pub fn scott_partition(g: &Apg, h: &Apg) -> Partition {
    let n = g.node_count() + h.node_count();
    union_partition(g, h, SigKind::Counting, use_parallel(n))
}

/// Scott equivalence of the two pointed graphs.
pub fn scott_eq(g: &Apg, h: &Apg) -> bool {
    let p = scott_partition(g, h);
    p.same_block((Side::Left, g.point()), (Side::Right, h.point()))
}

/// Coarsest partition of the disjoint union in which blockmates' children
/// hit exactly the same set of blocks.
pub fn max_bisim_partition(g: &Apg, h: &Apg) -> Partition {
    let n = g.node_count() + h.node_count();
    union_partition(g, h, SigKind::Existential, use_parallel(n))
}

/// True iff the points are related by the maximum bisimulation.
pub fn bisimilar(g: &Apg, h: &Apg) -> bool {
    let p = max_bisim_partition(g, h);
    p.same_block((Side::Left, g.point()), (Side::Right, h.point()))
}

/// Checks a candidate decoration-like homomorphism: `f` must cover every
/// node of `g`, land in `h`, send point to point, and satisfy
/// `children(f(a)) = f(children(a))` at every node.
pub fn verify_dhom(g: &Apg, h: &Apg, f: &NodeMap) -> Result<bool> {
    let mut image = vec![0usize; g.node_count()];
    for (i, a) in g.nodes().iter().enumerate() {
        let b = f
            .get(a)
            .ok_or_else(|| Error::IncompleteMap(a.as_str().to_string()))?;
        image[i] = h
            .idx(b)
            .map_err(|_| Error::IncompleteMap(a.as_str().to_string()))?;
    }
    if image[g.point_idx()] != h.point_idx() {
        return Ok(false);
    }
    for v in 0..g.node_count() {
        let mut mapped: Vec<usize> = g.child_indices(v).iter().map(|&c| image[c]).collect();
        mapped.sort_unstable();
        mapped.dedup();
        if mapped != h.child_indices(image[v]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the local bisimulation conditions for a concrete pair set:
/// the points are related, and for every related pair each child on one
/// side has a related child on the other.
pub fn check_bisimulation(g: &Apg, h: &Apg, r: &PairRelation) -> bool {
    if !r.contains(g.point(), h.point()) {
        return false;
    }
    for (a, b) in r.iter() {
        let (Ok(ca), Ok(cb)) = (g.children_of(a), h.children_of(b)) else {
            return false;
        };
        let forth = ca
            .iter()
            .all(|c| cb.iter().any(|d| r.contains(c, d)));
        let back = cb
            .iter()
            .all(|d| ca.iter().any(|c| r.contains(c, d)));
        if !forth || !back {
            return false;
        }
    }
    true
}

/// Point-preserving edge-preserving-and-reflecting bijection, if any.
/// Returns the lexicographically least witness.
pub fn isomorphic(g: &Apg, h: &Apg) -> Option<NodeMap> {
    if g.node_count() != h.node_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let n = g.node_count();
    let dg = Digraph::union(g, h);
    let colors = stable_blocks(&dg, SigKind::Counting, false);
    let in_deg_g = in_degrees(g);
    let in_deg_h = in_degrees(h);

    // Iso-invariant per node: (stable color, out-degree, in-degree).
    let mut left: Vec<(u32, usize, usize)> = (0..n)
        .map(|v| (colors[v], g.child_indices(v).len(), in_deg_g[v]))
        .collect();
    let mut right: Vec<(u32, usize, usize)> = (0..n)
        .map(|v| (colors[n + v], h.child_indices(v).len(), in_deg_h[v]))
        .collect();
    let inv_left = left.clone();
    let inv_right = right.clone();
    left.sort_unstable();
    right.sort_unstable();
    if left != right || inv_left[g.point_idx()] != inv_right[h.point_idx()] {
        return None;
    }

    let order = lex_order(g);
    let targets_lex = lex_order(h);
    let cand: Vec<Vec<usize>> = (0..n)
        .map(|s| {
            if s == g.point_idx() {
                vec![h.point_idx()]
            } else {
                targets_lex
                    .iter()
                    .copied()
                    .filter(|&t| t != h.point_idx() && inv_left[s] == inv_right[t])
                    .collect()
            }
        })
        .collect();

    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    if iso_search(g, h, &order, &cand, 0, &mut assign, &mut used) {
        let pairs = (0..n).map(|s| {
            (
                g.name(s).clone(),
                h.name(assign[s].expect("complete assignment")).clone(),
            )
        });
        Some(NodeMap::from_pairs(pairs))
    } else {
        None
    }
}

fn iso_search(
    g: &Apg,
    h: &Apg,
    order: &[usize],
    cand: &[Vec<usize>],
    depth: usize,
    assign: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let s = order[depth];
    for &t in &cand[s] {
        if used[t] {
            continue;
        }
        let consistent = has_edge_idx(g, s, s) == has_edge_idx(h, t, t)
            && order[..depth].iter().all(|&s2| {
                let t2 = assign[s2].expect("assigned earlier");
                has_edge_idx(g, s, s2) == has_edge_idx(h, t, t2)
                    && has_edge_idx(g, s2, s) == has_edge_idx(h, t2, t)
            });
        if !consistent {
            continue;
        }
        assign[s] = Some(t);
        used[t] = true;
        if iso_search(g, h, order, cand, depth + 1, assign, used) {
            return true;
        }
        assign[s] = None;
        used[t] = false;
    }
    false
}

fn has_edge_idx(g: &Apg, a: usize, b: usize) -> bool {
    g.child_indices(a).binary_search(&b).is_ok()
}

fn in_degrees(g: &Apg) -> Vec<usize> {
    let mut deg = vec![0usize; g.node_count()];
    for v in 0..g.node_count() {
        for &c in g.child_indices(v) {
            deg[c] += 1;
        }
    }
    deg
}

/// Node indices sorted by name.
fn lex_order(g: &Apg) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_unstable_by(|&a, &b| g.name(a).cmp(g.name(b)));
    order
}

/// Searches for a decoration-like homomorphism from `g` onto `h` and
/// returns the lexicographically least witness, or `None`.
///
/// D-homomorphisms out of an accessible graph are onto, so `|g| < |h|`
/// refutes immediately. Candidate targets are restricted to the source's
/// maximum-bisimulation block; the backtracking search propagates the
/// children equation through cover counts as nodes are assigned.
pub fn dhom_exists(g: &Apg, h: &Apg) -> Option<NodeMap> {
    let ng = g.node_count();
    let nh = h.node_count();
    if ng < nh {
        return None;
    }
    let dg = Digraph::union(g, h);
    let blocks = stable_blocks(&dg, SigKind::Existential, false);
    if blocks[g.point_idx()] != blocks[ng + h.point_idx()] {
        return None;
    }
    let targets_lex = lex_order(h);
    let cand: Vec<Vec<usize>> = (0..ng)
        .map(|s| {
            if s == g.point_idx() {
                vec![h.point_idx()]
            } else {
                targets_lex
                    .iter()
                    .copied()
                    .filter(|&t| {
                        blocks[s] == blocks[ng + t]
                            && h.child_indices(t).len() <= g.child_indices(s).len()
                    })
                    .collect()
            }
        })
        .collect();
    if cand.iter().any(Vec::is_empty) {
        return None;
    }

    let mut search = DhomSearch {
        g,
        h,
        parents: g.parent_indices(),
        order: lex_order(g),
        cand,
        assign: vec![None; ng],
        unassigned_kids: (0..ng).map(|v| g.child_indices(v).len()).collect(),
        covered: vec![HashMap::new(); ng],
        image_count: vec![0u32; nh],
        uncovered_targets: nh,
    };
    if search.run(0) {
        let pairs = (0..ng).map(|s| {
            (
                g.name(s).clone(),
                h.name(search.assign[s].expect("complete assignment")).clone(),
            )
        });
        let witness = NodeMap::from_pairs(pairs);
        debug_assert_eq!(verify_dhom(g, h, &witness), Ok(true));
        Some(witness)
    } else {
        None
    }
}

enum Undo {
    /// `image_count[t]` was incremented.
    Image(usize),
    /// `unassigned_kids[p]` was decremented.
    KidDec(usize),
    /// `covered[p][t]` was incremented.
    Cover(usize, usize),
}

struct DhomSearch<'a> {
    g: &'a Apg,
    h: &'a Apg,
    parents: Vec<Vec<usize>>,
    order: Vec<usize>,
    cand: Vec<Vec<usize>>,
    assign: Vec<Option<usize>>,
    /// Per source node: edges to still-unassigned children.
    unassigned_kids: Vec<usize>,
    /// Per assigned source node: target children hit so far, with
    /// multiplicity (distinct covered targets = map size).
    covered: Vec<HashMap<usize, u32>>,
    image_count: Vec<u32>,
    uncovered_targets: usize,
}

impl DhomSearch<'_> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let s = self.order[depth];
        for ci in 0..self.cand[s].len() {
            let t = self.cand[s][ci];
            if let Some(log) = self.apply(s, t, depth) {
                if self.run(depth + 1) {
                    return true;
                }
                self.rollback(s, log);
            }
        }
        false
    }

    /// Assigns `f(s) = t` and propagates the children equation through
    /// cover counts. Returns the undo log, or rolls back and returns None.
    fn apply(&mut self, s: usize, t: usize, depth: usize) -> Option<Vec<Undo>> {
        let g = self.g;
        let h = self.h;
        let mut log = Vec::new();
        self.assign[s] = Some(t);
        self.image_count[t] += 1;
        if self.image_count[t] == 1 {
            self.uncovered_targets -= 1;
        }
        log.push(Undo::Image(t));

        // Every not-yet-hit target still needs a preimage among the
        // remaining unassigned sources (the map must be onto).
        let remaining = self.order.len() - depth - 1;
        let mut ok = self.uncovered_targets <= remaining;

        if ok {
            // Edges p -> s with p assigned: the image of s must be a child
            // of the image of p.
            let parents = std::mem::take(&mut self.parents[s]);
            for &p in &parents {
                self.unassigned_kids[p] -= 1;
                log.push(Undo::KidDec(p));
                if let Some(tp) = self.assign[p] {
                    if !has_edge_idx(h, tp, t) {
                        ok = false;
                        break;
                    }
                    *self.covered[p].entry(t).or_insert(0) += 1;
                    log.push(Undo::Cover(p, t));
                }
            }
            self.parents[s] = parents;
        }

        if ok {
            // Edges s -> c with c already assigned. Self-loops were handled
            // above, where s counts among its own parents.
            for &c in g.child_indices(s) {
                if c == s {
                    continue;
                }
                let Some(tc) = self.assign[c] else { continue };
                if !has_edge_idx(h, t, tc) {
                    ok = false;
                    break;
                }
                *self.covered[s].entry(tc).or_insert(0) += 1;
                log.push(Undo::Cover(s, tc));
            }
        }

        if ok {
            // Bound checks only after every contribution of this step is
            // recorded; checking inside the loops above can reject a state
            // whose missing cover arrives a few edges later.
            let parents = std::mem::take(&mut self.parents[s]);
            ok = parents.iter().all(|&p| {
                self.assign[p]
                    .is_none_or(|tp| self.cover_bound_holds(p, tp))
            }) && self.cover_bound_holds(s, t);
            self.parents[s] = parents;
        }

        if ok {
            Some(log)
        } else {
            self.rollback(s, log);
            None
        }
    }

    /// `children(f(p))` not yet covered must still be coverable by the
    /// unassigned children of `p`.
    fn cover_bound_holds(&self, p: usize, tp: usize) -> bool {
        let total = self.h.child_indices(tp).len();
        total - self.covered[p].len() <= self.unassigned_kids[p]
    }

    fn rollback(&mut self, s: usize, log: Vec<Undo>) {
        for op in log.into_iter().rev() {
            match op {
                Undo::Image(t) => {
                    self.image_count[t] -= 1;
                    if self.image_count[t] == 0 {
                        self.uncovered_targets += 1;
                    }
                }
                Undo::KidDec(p) => self.unassigned_kids[p] += 1,
                Undo::Cover(p, t) => {
                    let slot = self.covered[p].get_mut(&t).expect("covered entry");
                    *slot -= 1;
                    if *slot == 0 {
                        self.covered[p].remove(&t);
                    }
                }
            }
        }
        self.assign[s] = None;
    }
}

/// True iff decoration-like homomorphisms exist in both directions.
pub fn mutual_dhom(g: &Apg, h: &Apg) -> bool {
    dhom_exists(g, h).is_some() && dhom_exists(h, g).is_some()
}
