//! Canonical forms and constructive witnesses: the bisimulation collapse,
//! iterated collapses for the isomorphism/Finsler/Scott notions, the
//! bisimulation product with its projections, joinability, bounded
//! unfoldings, and flat equation systems over circular definitions.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::decorate::canonical_picture;
use crate::error::{Error, Result};
use crate::graph::{unique_name, Apg, NodeId};
use crate::refine::{single_blocks, SigKind};
use crate::relations::{
    check_bisimulation, finsler_eq, isomorphic, max_bisim_partition, NodeMap, PairRelation,
};
use crate::set::SetLiteral;

/// Quotients `g` by the given block ids. Block names are the least member
/// name; edges join blocks whose representatives are joined.
fn quotient(g: &Apg, ids: &[u32]) -> (Apg, NodeMap) {
    let mut members: HashMap<u32, Vec<usize>> = HashMap::new();
    for (i, &id) in ids.iter().enumerate() {
        members.entry(id).or_default().push(i);
    }
    let mut block_name: HashMap<u32, NodeId> = HashMap::new();
    for (&id, nodes) in &members {
        let least = nodes
            .iter()
            .map(|&i| g.name(i))
            .min()
            .expect("nonempty block");
        block_name.insert(id, least.clone());
    }
    let mut block_ids: Vec<u32> = members.keys().copied().collect();
    block_ids.sort_unstable_by(|a, b| block_name[a].cmp(&block_name[b]));

    let decls = block_ids
        .iter()
        .map(|id| {
            let mut kids: BTreeSet<NodeId> = BTreeSet::new();
            for &i in &members[id] {
                for &c in g.child_indices(i) {
                    kids.insert(block_name[&ids[c]].clone());
                }
            }
            (block_name[id].clone(), kids.into_iter().collect())
        })
        .collect();
    let point = block_name[&ids[g.point_idx()]].clone();
    let q = Apg::new(decls, point).expect("quotient of an accessible graph is accessible");
    let map = NodeMap::from_pairs(
        g.nodes()
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), block_name[&ids[i]].clone())),
    );
    (q, map)
}

/// The bisimulation collapse: quotient by the maximum bisimulation on the
/// graph itself. The result is strongly extensional and bisimilar to the
/// input.
pub fn collapse_afa(g: &Apg) -> Apg {
    collapse_afa_with_map(g).0
}

/// [`collapse_afa`] together with the quotient map, which is a
/// decoration-like homomorphism.
pub fn collapse_afa_with_map(g: &Apg) -> (Apg, NodeMap) {
    let ids = single_blocks(g, SigKind::Existential);
    quotient(g, &ids)
}

/// Which subgraph equivalence an iterated collapse quotients by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollapseRel {
    Iso,
    Finsler,
    Scott,
}

/// Repeatedly quotients by `rel`-equivalence classes of descendant
/// subgraphs until the result is `rel`-extensional. One quotient round can
/// create newly equivalent pairs, so this iterates; it terminates because
/// the node count strictly decreases.
pub fn collapse_iter(g: &Apg, rel: CollapseRel) -> Apg {
    collapse_iter_with_map(g, rel).0
}

/// [`collapse_iter`] together with the composite quotient map.
pub fn collapse_iter_with_map(g: &Apg, rel: CollapseRel) -> (Apg, NodeMap) {
    let mut current = g.clone();
    let mut composite = NodeMap::identity(g);
    loop {
        let ids = subgraph_classes(&current, rel);
        let distinct: HashSet<u32> = ids.iter().copied().collect();
        if distinct.len() == current.node_count() {
            return (current, composite);
        }
        let (q, step) = quotient(&current, &ids);
        composite = NodeMap::from_pairs(composite.iter().map(|(a, b)| {
            (
                a.clone(),
                step.get(b).expect("step map total on current").clone(),
            )
        }));
        current = q;
    }
}

/// Class ids of descendant subgraphs under `rel`, one per node.
fn subgraph_classes(g: &Apg, rel: CollapseRel) -> Vec<u32> {
    match rel {
        CollapseRel::Scott => single_blocks(g, SigKind::Counting),
        CollapseRel::Iso | CollapseRel::Finsler => {
            let subs: Vec<Apg> = (0..g.node_count()).map(|i| g.descendant_at(i)).collect();
            let related = |a: &Apg, b: &Apg| match rel {
                CollapseRel::Iso => isomorphic(a, b).is_some(),
                CollapseRel::Finsler => finsler_eq(a, b),
                CollapseRel::Scott => unreachable!(),
            };
            // Group by comparing against one representative per class;
            // sound because both relations are equivalences.
            let mut reps: Vec<usize> = Vec::new();
            let mut ids = vec![0u32; g.node_count()];
            for v in 0..g.node_count() {
                match reps.iter().position(|&r| related(&subs[r], &subs[v])) {
                    Some(k) => ids[v] = k as u32,
                    None => {
                        ids[v] = reps.len() as u32;
                        reps.push(v);
                    }
                }
            }
            ids
        }
    }
}

/// The synchronized product over a concrete bisimulation: nodes are the
/// related pairs reachable from (point, point), edges fire when both
/// components step. Returns the product and the two projections; each
/// projection is a decoration-like homomorphism.
pub fn product_bisim(g: &Apg, h: &Apg, r: &PairRelation) -> Result<(Apg, NodeMap, NodeMap)> {
    if !check_bisimulation(g, h, r) {
        return Err(Error::NotABisimulation);
    }
    let start = (g.point().clone(), h.point().clone());
    let mut used: HashSet<String> = HashSet::new();
    let mut names: HashMap<(NodeId, NodeId), NodeId> = HashMap::new();
    let mut order: Vec<(NodeId, NodeId)> = Vec::new();
    let mut queue = VecDeque::new();

    let intern = |pair: &(NodeId, NodeId), used: &mut HashSet<String>| -> NodeId {
        NodeId::new(unique_name(format!("{}_{}", pair.0, pair.1), used)).expect("generated name")
    };
    names.insert(start.clone(), intern(&start, &mut used));
    order.push(start.clone());
    queue.push_back(start);

    let mut edges: Vec<((NodeId, NodeId), (NodeId, NodeId))> = Vec::new();
    while let Some(pair) = queue.pop_front() {
        let ca = g.children_of(&pair.0).expect("node of g");
        let cb = h.children_of(&pair.1).expect("node of h");
        for a in &ca {
            for b in &cb {
                let next = ((*a).clone(), (*b).clone());
                if !r.contains(&next.0, &next.1) {
                    continue;
                }
                if !names.contains_key(&next) {
                    names.insert(next.clone(), intern(&next, &mut used));
                    order.push(next.clone());
                    queue.push_back(next.clone());
                }
                edges.push((pair.clone(), next));
            }
        }
    }

    let mut kids: HashMap<&(NodeId, NodeId), BTreeSet<NodeId>> = HashMap::new();
    for (from, to) in &edges {
        kids.entry(from).or_default().insert(names[to].clone());
    }
    let decls = order
        .iter()
        .map(|pair| {
            let k = kids.remove(pair).unwrap_or_default();
            (names[pair].clone(), k.into_iter().collect())
        })
        .collect();
    let point = names[&order[0]].clone();
    let product = Apg::new(decls, point).expect("product reachable from its point");

    let proj1 = NodeMap::from_pairs(order.iter().map(|p| (names[p].clone(), p.0.clone())));
    let proj2 = NodeMap::from_pairs(order.iter().map(|p| (names[p].clone(), p.1.clone())));
    Ok((product, proj1, proj2))
}

/// A common ⇝-ancestor of the two graphs when they are bisimilar: the
/// product over the maximum bisimulation. Present exactly when the graphs
/// are bisimilar.
pub fn joinable(g: &Apg, h: &Apg) -> Option<Apg> {
    let partition = max_bisim_partition(g, h);
    let relation = PairRelation::from_partition(&partition, g, h);
    if !relation.contains(g.point(), h.point()) {
        return None;
    }
    let (product, _, _) =
        product_bisim(g, h, &relation).expect("maximum bisimulation passes the checker");
    Some(product)
}

/// The tree of all paths from the point of length at most `d`. Nodes are
/// named by their path (components joined by `_`, deduplicated on
/// collision); frontier nodes at depth `d` have no children.
pub fn unfold_depth(g: &Apg, d: usize) -> Apg {
    let mut used: HashSet<String> = HashSet::new();
    let root = NodeId::new(unique_name(g.point().as_str().to_string(), &mut used))
        .expect("generated name");
    let mut decls: Vec<(NodeId, Vec<NodeId>)> = Vec::new();
    // (assigned name, underlying node index, remaining depth)
    let mut queue = VecDeque::new();
    queue.push_back((root.clone(), g.point_idx(), d));
    while let Some((name, v, left)) = queue.pop_front() {
        let mut kids = Vec::new();
        if left > 0 {
            let mut child_names: Vec<&NodeId> = g
                .child_indices(v)
                .iter()
                .map(|&c| g.name(c))
                .collect();
            child_names.sort_unstable();
            for c in child_names {
                let child_name =
                    NodeId::new(unique_name(format!("{name}_{c}"), &mut used))
                        .expect("generated name");
                let ci = g.idx(c).expect("child of g");
                kids.push(child_name.clone());
                queue.push_back((child_name, ci, left - 1));
            }
        }
        decls.push((name, kids));
    }
    Apg::new(decls, root).expect("path tree is accessible from its root")
}

/// One term on the right side of a flat equation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FlatTerm {
    Var(NodeId),
    Literal(SetLiteral),
}

/// A system of flat set equations `x = { t, ... }` with a designated root.
/// Right-side variables must be defined; terms nested inside braces are
/// pure literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatSystem {
    equations: BTreeMap<NodeId, BTreeSet<FlatTerm>>,
    root: NodeId,
}

impl FlatSystem {
    pub fn new(equations: BTreeMap<NodeId, BTreeSet<FlatTerm>>, root: NodeId) -> Result<Self> {
        for terms in equations.values() {
            for term in terms {
                if let FlatTerm::Var(v) = term {
                    if !equations.contains_key(v) {
                        return Err(Error::UndefinedVariable(v.as_str().to_string()));
                    }
                }
            }
        }
        if !equations.contains_key(&root) {
            return Err(Error::UndefinedVariable(root.as_str().to_string()));
        }
        Ok(FlatSystem { equations, root })
    }

    /// Parses the line format: `<var> = { <term>, ... }` equations plus a
    /// required `root <var>` line. Blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut equations: BTreeMap<NodeId, BTreeSet<FlatTerm>> = BTreeMap::new();
        let mut root: Option<NodeId> = None;
        for (i, raw) in text.split('\n').enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(var) = line.strip_prefix("root ") {
                if root.is_some() {
                    return Err(Error::Syntax {
                        line: lineno,
                        msg: "more than one root line".into(),
                    });
                }
                root = Some(NodeId::new(var.trim())?);
                continue;
            }
            let (lhs, rhs) = line.split_once('=').ok_or(Error::Syntax {
                line: lineno,
                msg: "expected `<var> = { ... }` or `root <var>`".into(),
            })?;
            let var = NodeId::new(lhs.trim())?;
            let terms = parse_terms(rhs.trim(), lineno)?;
            if equations.insert(var.clone(), terms).is_some() {
                return Err(Error::DuplicateDeclaration(var.as_str().to_string()));
            }
        }
        let root = root.ok_or(Error::NoRoot)?;
        FlatSystem::new(equations, root)
    }

    pub fn root(&self) -> &NodeId {
        &self.root
    }

    pub fn equations(&self) -> &BTreeMap<NodeId, BTreeSet<FlatTerm>> {
        &self.equations
    }
}

fn parse_terms(rhs: &str, lineno: usize) -> Result<BTreeSet<FlatTerm>> {
    let err = |msg: &str| Error::Syntax {
        line: lineno,
        msg: msg.into(),
    };
    let inner = rhs
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| err("right side must be braced"))?;
    let mut terms = BTreeSet::new();
    for part in split_top_level(inner) {
        let part = part.trim();
        if part.is_empty() {
            return Err(err("empty term"));
        }
        if part.starts_with('{') {
            terms.insert(FlatTerm::Literal(SetLiteral::parse(part)?));
        } else {
            terms.insert(FlatTerm::Var(NodeId::new(part)?));
        }
    }
    Ok(terms)
}

/// Splits on commas not nested inside braces. Empty input yields nothing.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    let mut any = false;
    for (i, c) in s.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
                any = true;
            }
            c if !c.is_whitespace() => any = true,
            _ => {}
        }
    }
    if any {
        parts.push(&s[start..]);
    }
    parts
}

/// Builds the graph of the system (variable nodes plus canonical-picture
/// subgraphs for literal terms), restricts it to the part reachable from
/// the root, and returns its bisimulation collapse.
pub fn solve_flat_system(s: &FlatSystem) -> Apg {
    let mut used: HashSet<String> = s
        .equations
        .keys()
        .map(|v| v.as_str().to_string())
        .collect();
    let mut decls: Vec<(NodeId, Vec<NodeId>)> = Vec::new();
    let mut extra: Vec<(NodeId, Vec<NodeId>)> = Vec::new();
    let mut lit_counter = 0usize;
    for (var, terms) in &s.equations {
        let mut kids = Vec::new();
        for term in terms {
            match term {
                FlatTerm::Var(v) => kids.push(v.clone()),
                FlatTerm::Literal(lit) => {
                    let cp = canonical_picture(lit);
                    let prefix = format!("_lit{lit_counter}");
                    lit_counter += 1;
                    let rename: HashMap<&NodeId, NodeId> = cp
                        .nodes()
                        .iter()
                        .map(|n| {
                            let fresh = unique_name(format!("{prefix}_{n}"), &mut used);
                            (n, NodeId::new(fresh).expect("generated name"))
                        })
                        .collect();
                    for n in cp.nodes() {
                        let sub_kids = cp
                            .children_of(n)
                            .expect("node of picture")
                            .into_iter()
                            .map(|c| rename[c].clone())
                            .collect();
                        extra.push((rename[n].clone(), sub_kids));
                    }
                    kids.push(rename[cp.point()].clone());
                }
            }
        }
        decls.push((var.clone(), kids));
    }
    decls.extend(extra);

    // Keep only what the root reaches; unreachable definitions are legal
    // in the text but play no part in the depicted set.
    let adjacency: HashMap<&NodeId, &Vec<NodeId>> =
        decls.iter().map(|(n, kids)| (n, kids)).collect();
    let mut reachable: HashSet<&NodeId> = HashSet::new();
    let mut queue = VecDeque::new();
    reachable.insert(&s.root);
    queue.push_back(&s.root);
    while let Some(v) = queue.pop_front() {
        for c in adjacency[v] {
            if reachable.insert(c) {
                queue.push_back(c);
            }
        }
    }
    let kept = decls
        .iter()
        .filter(|(n, _)| reachable.contains(n))
        .cloned()
        .collect();
    let g = Apg::new(kept, s.root.clone()).expect("restricted to the reachable part");
    collapse_afa(&g)
}
