//! Partition refinement over one or two graphs.
//!
//! Both stable partitions used by the relations module come from the same
//! engine: starting from a single block, nodes are repeatedly split by the
//! signature of their children under the current partition until nothing
//! changes. The counting signature (multiset of child blocks) yields the
//! Scott partition; the existential signature (set of child blocks) yields
//! the maximum-bisimulation partition.
//!
//! Signature construction and the grouping sort are data-parallel; with the
//! `parallel` feature they run on rayon for graphs past a size threshold.

use std::collections::HashMap;

use crate::graph::{Apg, NodeId};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Which side of a two-graph disjoint union a node belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A partition of the disjoint union of two node sets into blocks.
///
/// Blocks are disjoint, cover the universe, list members in (side, name)
/// order, and are themselves ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<(Side, NodeId)>>,
    lookup: HashMap<(Side, String), usize>,
}

impl Partition {
    pub fn blocks(&self) -> &[Vec<(Side, NodeId)>] {
        &self.blocks
    }

    pub fn block_index(&self, side: Side, node: &NodeId) -> Option<usize> {
        self.lookup.get(&(side, node.as_str().to_string())).copied()
    }

    pub fn same_block(&self, a: (Side, &NodeId), b: (Side, &NodeId)) -> bool {
        match (self.block_index(a.0, a.1), self.block_index(b.0, b.1)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    fn from_ids(g: &Apg, h: Option<&Apg>, ids: &[u32]) -> Partition {
        let mut members: Vec<Vec<(Side, NodeId)>> = Vec::new();
        let mut by_id: HashMap<u32, usize> = HashMap::new();
        let n_left = g.node_count();
        for (i, &id) in ids.iter().enumerate() {
            let entry = if i < n_left {
                (Side::Left, g.name(i).clone())
            } else {
                let h = h.expect("right side present");
                (Side::Right, h.name(i - n_left).clone())
            };
            let slot = *by_id.entry(id).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[slot].push(entry);
        }
        for block in &mut members {
            block.sort_unstable();
        }
        members.sort_unstable_by(|a, b| a[0].cmp(&b[0]));
        let mut lookup = HashMap::new();
        for (bi, block) in members.iter().enumerate() {
            for (side, name) in block {
                lookup.insert((*side, name.as_str().to_string()), bi);
            }
        }
        Partition {
            blocks: members,
            lookup,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SigKind {
    /// Multiset of child blocks: exact (counting) refinement.
    Counting,
    /// Set of child blocks: bisimulation refinement.
    Existential,
}

/// Flattened child lists of one or two graphs laid end to end.
pub(crate) struct Digraph {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl Digraph {
    pub(crate) fn single(g: &Apg) -> Digraph {
        Digraph::build(&[g])
    }

    pub(crate) fn union(g: &Apg, h: &Apg) -> Digraph {
        Digraph::build(&[g, h])
    }

    fn build(graphs: &[&Apg]) -> Digraph {
        let n: usize = graphs.iter().map(|g| g.node_count()).sum();
        let m: usize = graphs.iter().map(|g| g.edge_count()).sum();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(m);
        offsets.push(0);
        let mut base = 0u32;
        for g in graphs {
            for v in 0..g.node_count() {
                for &c in g.child_indices(v) {
                    targets.push(base + c as u32);
                }
                offsets.push(targets.len() as u32);
            }
            base += g.node_count() as u32;
        }
        Digraph { offsets, targets }
    }

    pub(crate) fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub(crate) fn children(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }
}

fn signature(dg: &Digraph, blocks: &[u32], v: usize, kind: SigKind) -> Vec<u32> {
    let mut buf: Vec<u32> = dg.children(v).iter().map(|&c| blocks[c as usize]).collect();
    buf.sort_unstable();
    match kind {
        SigKind::Existential => {
            buf.dedup();
            buf
        }
        SigKind::Counting => {
            let mut out = Vec::with_capacity(buf.len() * 2);
            let mut i = 0;
            while i < buf.len() {
                let b = buf[i];
                let mut count = 0u32;
                while i < buf.len() && buf[i] == b {
                    count += 1;
                    i += 1;
                }
                out.push(b);
                out.push(count);
            }
            out
        }
    }
}

/// Runs refinement to the greatest fixpoint and returns a block id per node.
/// Ids are contiguous and deterministic for a fixed input.
pub(crate) fn stable_blocks(dg: &Digraph, kind: SigKind, parallel: bool) -> Vec<u32> {
    let n = dg.n();
    let mut blocks = vec![0u32; n];
    let mut count = 1usize;
    loop {
        let sigs = compute_sigs(dg, &blocks, kind, parallel);
        let mut order: Vec<u32> = (0..n as u32).collect();
        sort_by_key(&mut order, &blocks, &sigs, parallel);

        let mut next = vec![0u32; n];
        let mut next_count = 0u32;
        let mut prev: Option<u32> = None;
        for &v in &order {
            let vi = v as usize;
            if let Some(p) = prev {
                let pi = p as usize;
                if blocks[pi] != blocks[vi] || sigs[pi] != sigs[vi] {
                    next_count += 1;
                }
            }
            next[vi] = next_count;
            prev = Some(v);
        }
        let next_count = next_count as usize + 1;
        blocks = next;
        if next_count == count {
            return blocks;
        }
        count = next_count;
    }
}

fn compute_sigs(dg: &Digraph, blocks: &[u32], kind: SigKind, parallel: bool) -> Vec<Vec<u32>> {
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..dg.n())
            .into_par_iter()
            .map(|v| signature(dg, blocks, v, kind))
            .collect();
    }
    let _ = parallel;
    (0..dg.n()).map(|v| signature(dg, blocks, v, kind)).collect()
}

fn sort_by_key(order: &mut [u32], blocks: &[u32], sigs: &[Vec<u32>], parallel: bool) {
    let key = |v: &u32| {
        let i = *v as usize;
        (blocks[i], sigs[i].as_slice())
    };
    #[cfg(feature = "parallel")]
    if parallel {
        order.par_sort_unstable_by(|a, b| key(a).cmp(&key(b)));
        return;
    }
    let _ = parallel;
    order.sort_unstable_by(|a, b| key(a).cmp(&key(b)));
}

/// Node count past which the parallel code path pays off. The bench
/// suite puts the crossover between the 20k and 200k union sizes on a
/// 2-core box; below it the fork-join and merge overhead dominates.
pub(crate) const PAR_THRESHOLD: usize = 65_536;

pub(crate) fn use_parallel(n: usize) -> bool {
    cfg!(feature = "parallel") && n >= PAR_THRESHOLD
}

pub(crate) fn union_partition(g: &Apg, h: &Apg, kind: SigKind, parallel: bool) -> Partition {
    let dg = Digraph::union(g, h);
    let ids = stable_blocks(&dg, kind, parallel);
    Partition::from_ids(g, Some(h), &ids)
}

/// Stable block ids over a single graph's nodes, in node-index order.
pub(crate) fn single_blocks(g: &Apg, kind: SigKind) -> Vec<u32> {
    let dg = Digraph::single(g);
    stable_blocks(&dg, kind, use_parallel(dg.n()))
}

/// Sequential Scott (counting) partition, regardless of features. Exists so
/// benchmarks can compare both code paths in one build.
pub fn scott_partition_seq(g: &Apg, h: &Apg) -> Partition {
    union_partition(g, h, SigKind::Counting, false)
}

/// Sequential maximum-bisimulation partition; see [`scott_partition_seq`].
pub fn max_bisim_partition_seq(g: &Apg, h: &Apg) -> Partition {
    union_partition(g, h, SigKind::Existential, false)
}

#[cfg(feature = "parallel")]
pub fn scott_partition_par(g: &Apg, h: &Apg) -> Partition {
    union_partition(g, h, SigKind::Counting, true)
}

#[cfg(feature = "parallel")]
pub fn max_bisim_partition_par(g: &Apg, h: &Apg) -> Partition {
    union_partition(g, h, SigKind::Existential, true)
}
