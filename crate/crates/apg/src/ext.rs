//! Extensionality notions: a graph is ~-extensional when no two distinct
//! nodes have ~-related descendant subgraphs. Instantiated at plain
//! children equality, ≅, ≅*, ≅t, the maximum bisimulation, and mutual
//! d-homomorphism.

use std::collections::HashMap;

use crate::graph::{Apg, NodeId};
use crate::refine::{single_blocks, SigKind};
use crate::relations::{finsler_eq, isomorphic, mutual_dhom};

/// The relation a ~-extensionality check is instantiated at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtRelation {
    Iso,
    Finsler,
    Scott,
    Bisim,
    MutualDhom,
}

/// Outcome of classifying one graph under all six notions.
///
/// Each field holds the least violating pair when the notion fails, `None`
/// when it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtReport {
    pub extensional: Option<(NodeId, NodeId)>,
    pub iso_ext: Option<(NodeId, NodeId)>,
    pub finsler_ext: Option<(NodeId, NodeId)>,
    pub scott_ext: Option<(NodeId, NodeId)>,
    pub strongly_ext: Option<(NodeId, NodeId)>,
    pub mutual_dhom_ext: Option<(NodeId, NodeId)>,
}

impl ExtReport {
    pub fn is_extensional(&self) -> bool {
        self.extensional.is_none()
    }
    pub fn is_iso_ext(&self) -> bool {
        self.iso_ext.is_none()
    }
    pub fn is_finsler_ext(&self) -> bool {
        self.finsler_ext.is_none()
    }
    pub fn is_scott_ext(&self) -> bool {
        self.scott_ext.is_none()
    }
    pub fn is_strongly_ext(&self) -> bool {
        self.strongly_ext.is_none()
    }
    pub fn is_mutual_dhom_ext(&self) -> bool {
        self.mutual_dhom_ext.is_none()
    }

    /// Notion name and witness in report order; the names double as CLI
    /// and JSON keys.
    pub fn entries(&self) -> [(&'static str, &Option<(NodeId, NodeId)>); 6] {
        [
            ("extensional", &self.extensional),
            ("iso-extensional", &self.iso_ext),
            ("finsler-extensional", &self.finsler_ext),
            ("scott-extensional", &self.scott_ext),
            ("strongly-extensional", &self.strongly_ext),
            ("mutual-dhom-extensional", &self.mutual_dhom_ext),
        ]
    }
}

/// Least pair of distinct nodes with equal children sets, if any.
pub fn is_extensional(g: &Apg) -> Option<(NodeId, NodeId)> {
    let mut groups: HashMap<&[usize], Vec<&NodeId>> = HashMap::new();
    for (i, n) in g.nodes().iter().enumerate() {
        groups.entry(g.child_indices(i)).or_default().push(n);
    }
    least_pair_of_groups(groups.into_values())
}

/// Least pair of distinct nodes whose descendant subgraphs are related by
/// `rel`, if any.
///
/// For the Scott and bisimulation notions this runs one refinement over
/// the graph itself: a node's refinement class is determined by its
/// descendant subgraph alone, so blockmates are exactly the nodes with
/// related subgraphs. The other notions compare descendant subgraphs
/// pairwise.
pub fn is_ext_wrt(g: &Apg, rel: ExtRelation) -> Option<(NodeId, NodeId)> {
    match rel {
        ExtRelation::Scott => refinement_witness(g, SigKind::Counting),
        ExtRelation::Bisim => refinement_witness(g, SigKind::Existential),
        ExtRelation::Iso => {
            let subs = descendant_cache(g);
            pairwise_witness(g, |a, b| isomorphic(&subs[a], &subs[b]).is_some())
        }
        ExtRelation::Finsler => {
            let subs = descendant_cache(g);
            pairwise_witness(g, |a, b| finsler_eq(&subs[a], &subs[b]))
        }
        ExtRelation::MutualDhom => {
            let subs = descendant_cache(g);
            pairwise_witness(g, |a, b| mutual_dhom(&subs[a], &subs[b]))
        }
    }
}

/// Like [`is_ext_wrt`] with a caller-supplied relation on descendant
/// subgraphs, scanned pairwise in lexicographic order.
pub fn is_ext_wrt_oracle(
    g: &Apg,
    mut rel: impl FnMut(&Apg, &Apg) -> bool,
) -> Option<(NodeId, NodeId)> {
    let subs = descendant_cache(g);
    pairwise_witness(g, |a, b| rel(&subs[a], &subs[b]))
}

/// Evaluates all six notions. The Finsler entry is computed both directly
/// (≅*-relatedness of subgraphs) and as extensional-and-≅-extensional;
/// the two routes always agree, and disagreement would be an internal
/// error worth stopping for.
pub fn classify(g: &Apg) -> ExtReport {
    let extensional = is_extensional(g);
    let subs = descendant_cache(g);
    let iso_ext = pairwise_witness(g, |a, b| isomorphic(&subs[a], &subs[b]).is_some());
    let finsler_ext = pairwise_witness(g, |a, b| finsler_eq(&subs[a], &subs[b]));
    let composed_holds = extensional.is_none() && iso_ext.is_none();
    assert_eq!(
        finsler_ext.is_none(),
        composed_holds,
        "finsler-extensionality routes disagree on {}",
        g.to_text()
    );
    let scott_ext = refinement_witness(g, SigKind::Counting);
    let strongly_ext = refinement_witness(g, SigKind::Existential);
    let mutual_dhom_ext = pairwise_witness(g, |a, b| mutual_dhom(&subs[a], &subs[b]));
    ExtReport {
        extensional,
        iso_ext,
        finsler_ext,
        scott_ext,
        strongly_ext,
        mutual_dhom_ext,
    }
}

fn descendant_cache(g: &Apg) -> Vec<Apg> {
    (0..g.node_count()).map(|i| g.descendant_at(i)).collect()
}

fn refinement_witness(g: &Apg, kind: SigKind) -> Option<(NodeId, NodeId)> {
    let ids = single_blocks(g, kind);
    let mut groups: HashMap<u32, Vec<&NodeId>> = HashMap::new();
    for (i, n) in g.nodes().iter().enumerate() {
        groups.entry(ids[i]).or_default().push(n);
    }
    least_pair_of_groups(groups.into_values())
}

fn least_pair_of_groups<'a>(
    groups: impl Iterator<Item = Vec<&'a NodeId>>,
) -> Option<(NodeId, NodeId)> {
    let mut best: Option<(NodeId, NodeId)> = None;
    for mut members in groups {
        if members.len() < 2 {
            continue;
        }
        members.sort_unstable();
        let pair = (members[0].clone(), members[1].clone());
        if best.as_ref().is_none_or(|b| pair < *b) {
            best = Some(pair);
        }
    }
    best
}

/// Pairs (a, b) with a < b in lexicographic order; the first related pair
/// is the least witness.
fn pairwise_witness(
    g: &Apg,
    mut related: impl FnMut(usize, usize) -> bool,
) -> Option<(NodeId, NodeId)> {
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_unstable_by(|&a, &b| g.name(a).cmp(g.name(b)));
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if related(order[i], order[j]) {
                return Some((g.name(order[i]).clone(), g.name(order[j]).clone()));
            }
        }
    }
    None
}
