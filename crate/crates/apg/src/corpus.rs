//! Graph generators for tests and benchmarks: exhaustive enumeration of
//! small graphs, seeded random graphs, and bisimilar-by-construction
//! variants.

use rand::Rng;

use crate::graph::{unique_name, Apg, NodeId};

fn name(i: usize) -> NodeId {
    NodeId::new(format!("n{i}")).expect("generated name")
}

/// Every accessible pointed graph with 1..=`max_nodes` nodes, point fixed
/// at the first node, produced by enumerating all child maps and keeping
/// the accessible ones. Sizes above 4 get prohibitively large.
pub fn enumerate_apgs(max_nodes: usize) -> Vec<Apg> {
    let mut out = Vec::new();
    for n in 1..=max_nodes {
        let mut masks = vec![0u32; n];
        loop {
            if mask_accessible(n, &masks) {
                out.push(from_masks(n, &masks));
            }
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                masks[i] += 1;
                if masks[i] < (1 << n) {
                    break;
                }
                masks[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    out
}

fn mask_accessible(n: usize, masks: &[u32]) -> bool {
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0u32;
        for (v, mask) in masks.iter().enumerate() {
            if frontier & (1 << v) != 0 {
                next |= mask & !seen;
            }
        }
        seen |= next;
        frontier = next;
    }
    seen == (1 << n) - 1
}

fn from_masks(n: usize, masks: &[u32]) -> Apg {
    let decls = (0..n)
        .map(|v| {
            let kids = (0..n).filter(|&c| masks[v] & (1 << c) != 0).map(name).collect();
            (name(v), kids)
        })
        .collect();
    Apg::new(decls, name(0)).expect("accessible by filter")
}

/// A random accessible graph with exactly `nodes` nodes and roughly
/// `edges` edges: a random in-tree backbone from the point plus random
/// extra edges (self-loops allowed).
pub fn random_apg(rng: &mut impl Rng, nodes: usize, edges: usize) -> Apg {
    assert!(nodes >= 1);
    let mut kids: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); nodes];
    for v in 1..nodes {
        let parent = rng.gen_range(0..v);
        kids[parent].insert(v);
    }
    let mut placed = nodes - 1;
    let mut attempts = 0usize;
    while placed < edges && attempts < edges * 20 {
        attempts += 1;
        let a = rng.gen_range(0..nodes);
        let b = rng.gen_range(0..nodes);
        if kids[a].insert(b) {
            placed += 1;
        }
    }
    let decls = (0..nodes)
        .map(|v| (name(v), kids[v].iter().map(|&c| name(c)).collect()))
        .collect();
    Apg::new(decls, name(0)).expect("backbone keeps everything reachable")
}

/// A graph drawn from the same space as [`enumerate_apgs`]: uniformly
/// random child masks on 1..=`max_nodes` nodes, rejected until accessible.
pub fn random_apg_up_to(rng: &mut impl Rng, max_nodes: usize) -> Apg {
    loop {
        let n = rng.gen_range(1..=max_nodes);
        let masks: Vec<u32> = (0..n).map(|_| rng.gen_range(0..1u32 << n)).collect();
        if mask_accessible(n, &masks) {
            return from_masks(n, &masks);
        }
    }
}

/// A graph bisimilar to `g` by construction: repeatedly duplicates a node
/// that has a parent (same children, fresh name) and hangs the copy under
/// one of the parents. The copy is bisimilar to the original, and adding
/// it to a parent's children does not change that parent's set of child
/// classes, so the points stay bisimilar.
pub fn blowup_bisimilar(rng: &mut impl Rng, g: &Apg, rounds: usize) -> Apg {
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
    let mut used: std::collections::HashSet<String> = g
        .nodes()
        .iter()
        .map(|n| n.as_str().to_string())
        .collect();

    for _ in 0..rounds {
        let parented: Vec<usize> = (0..decls.len())
            .filter(|&v| {
                decls
                    .iter()
                    .any(|(_, kids)| kids.contains(&decls[v].0))
            })
            .collect();
        let Some(&v) = pick(rng, &parented) else { break };
        let copy_of = decls[v].0.clone();
        let copy_kids = decls[v].1.clone();
        let fresh = NodeId::new(unique_name(format!("{copy_of}_c"), &mut used))
            .expect("generated name");
        let parents: Vec<usize> = (0..decls.len())
            .filter(|&u| decls[u].1.contains(&copy_of))
            .collect();
        let &u = pick(rng, &parents).expect("v has a parent");
        decls.push((fresh.clone(), copy_kids));
        decls[u].1.push(fresh);
    }
    Apg::new(decls, g.point().clone()).expect("blowup keeps the graph valid")
}

fn pick<'a, T>(rng: &mut impl Rng, xs: &'a [T]) -> Option<&'a T> {
    if xs.is_empty() {
        None
    } else {
        Some(&xs[rng.gen_range(0..xs.len())])
    }
}
