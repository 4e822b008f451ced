//! Finitely presented infinite graphs: one ω-chain `b0 <- b1 <- b2 <- ...`
//! where every chain node also loops on itself, plus finitely many
//! singleton nodes whose chain children are ultimately periodic index
//! sets. The module also hosts the gallery of named example graphs.
//!
//! The self-loops keep the chain extensional (children(b0) = {b0},
//! children(bi) = {bi, b(i-1)} are pairwise distinct) and rigid (the
//! subgraph below bi has exactly i+1 nodes), which is what the
//! extensionality suite on truncations relies on.
//!
//! Witnesses against the infinite presentations are verified exactly:
//! chain cases by a finite case split, singleton cases by decidable
//! index-set arithmetic. Truncations give finite shadows for everything
//! that needs isomorphism search.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{is_valid_name, Apg, NodeId};

/// An arithmetic progression start, start+period, start+2·period, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Progression {
    start: u64,
    period: u64,
}

impl Progression {
    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn period(&self) -> u64 {
        self.period
    }
}

/// An ultimately periodic set of naturals: a finite base plus finitely
/// many arithmetic progressions.
///
/// Values are kept in a canonical normal form — the progressions all carry
/// the minimal eventual period, start inside one period window past the
/// minimal threshold, and the base holds exactly the members below the
/// threshold — so semantic equality is structural equality.
///
/// Normalization materializes one window of length lcm(periods); keep
/// periods modest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet {
    base: BTreeSet<u64>,
    progressions: Vec<Progression>,
}

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet {
            base: BTreeSet::new(),
            progressions: Vec::new(),
        }
    }

    /// Builds and normalizes. Periods must be positive.
    pub fn new(
        base: impl IntoIterator<Item = u64>,
        progressions: impl IntoIterator<Item = (u64, u64)>,
    ) -> Self {
        let base: BTreeSet<u64> = base.into_iter().collect();
        let progs: Vec<Progression> = progressions
            .into_iter()
            .map(|(start, period)| {
                assert!(period > 0, "progression period must be positive");
                Progression { start, period }
            })
            .collect();
        normalize(&base, &progs)
    }

    pub fn contains(&self, n: u64) -> bool {
        raw_contains(&self.base, &self.progressions, n)
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty() && self.progressions.is_empty()
    }

    /// True iff the set has no progressions, i.e. finitely many members.
    pub fn is_finite(&self) -> bool {
        self.progressions.is_empty()
    }

    /// Largest member of a finite set.
    pub fn max_finite(&self) -> Option<u64> {
        if self.is_finite() {
            self.base.iter().next_back().copied()
        } else {
            None
        }
    }

    pub fn base(&self) -> &BTreeSet<u64> {
        &self.base
    }

    pub fn progressions(&self) -> &[Progression] {
        &self.progressions
    }

    /// Exact image under the chain rule b0 ↦ b0, b(i+1) ↦ b(i):
    /// every member i ≥ 1 drops to i−1, and 0 stays present when 0 or 1
    /// was a member.
    pub fn shift_down(&self) -> IndexSet {
        let mut base: BTreeSet<u64> = self.base.iter().filter(|&&n| n >= 1).map(|n| n - 1).collect();
        let progs: Vec<(u64, u64)> = self
            .progressions
            .iter()
            .map(|p| {
                if p.start >= 1 {
                    (p.start - 1, p.period)
                } else {
                    // Members ≥ 1 of (0, p) are p, 2p, ...
                    (p.period - 1, p.period)
                }
            })
            .collect();
        if self.contains(0) || self.contains(1) {
            base.insert(0);
        }
        IndexSet::new(base, progs)
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet::new(
            self.base.iter().chain(other.base.iter()).copied(),
            self.progressions
                .iter()
                .chain(other.progressions.iter())
                .map(|p| (p.start, p.period)),
        )
    }

    /// Members not exceeding `n`, ascending.
    pub fn members_up_to(&self, n: u64) -> Vec<u64> {
        let mut out: BTreeSet<u64> = self.base.iter().copied().filter(|&m| m <= n).collect();
        for p in &self.progressions {
            let mut m = p.start;
            while m <= n {
                out.insert(m);
                m += p.period;
            }
        }
        out.into_iter().collect()
    }
}

/// Semantic equality of two ultimately periodic sets.
pub fn index_eq(s: &IndexSet, t: &IndexSet) -> bool {
    s == t
}

fn raw_contains(base: &BTreeSet<u64>, progs: &[Progression], n: u64) -> bool {
    base.contains(&n)
        || progs
            .iter()
            .any(|p| n >= p.start && (n - p.start).is_multiple_of(p.period))
}

/// Rewrites to the canonical form: find the minimal eventual period p*
/// (a divisor of the lcm of all periods), then the minimal threshold N*
/// from which p*-periodicity holds, and re-express the set as
/// (members below N*, one progression per inhabited residue starting in
/// [N*, N*+p*)).
fn normalize(base: &BTreeSet<u64>, progs: &[Progression]) -> IndexSet {
    let contains = |n: u64| raw_contains(base, progs, n);
    let horizon = base
        .iter()
        .copied()
        .chain(progs.iter().map(|p| p.start))
        .max()
        .map_or(0, |m| m + 1);
    let lcm_all = progs.iter().fold(1u64, |acc, p| lcm(acc, p.period));

    let window: Vec<bool> = (0..lcm_all).map(|i| contains(horizon + i)).collect();
    let min_period = (1..=lcm_all)
        .filter(|d| lcm_all % d == 0)
        .find(|&d| {
            (0..lcm_all).all(|i| window[i as usize] == window[((i + d) % lcm_all) as usize])
        })
        .expect("the lcm itself is always a period");

    let mut threshold = horizon;
    while threshold > 0 && contains(threshold - 1) == contains(threshold - 1 + min_period) {
        threshold -= 1;
    }

    let new_base: BTreeSet<u64> = (0..threshold).filter(|&n| contains(n)).collect();
    let new_progs: Vec<Progression> = (threshold..threshold + min_period)
        .filter(|&r| contains(r))
        .map(|r| Progression {
            start: r,
            period: min_period,
        })
        .collect();
    // A finite set normalizes to an empty tail: every residue past the
    // threshold tests false.
    IndexSet {
        base: new_base,
        progressions: new_progs,
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        let mut parts: Vec<String> = Vec::new();
        if !self.base.is_empty() {
            let inner: Vec<String> = self.base.iter().map(u64::to_string).collect();
            parts.push(format!("{{{}}}", inner.join(",")));
        }
        for p in &self.progressions {
            parts.push(format!("{}+{}k", p.start, p.period));
        }
        f.write_str(&parts.join(" u "))
    }
}

/// A finitely presented infinite graph: finitely many singleton nodes over
/// one ω-chain. Every chain node loops on itself and steps down,
/// `b0 -> b0` and `b(i+1) -> b(i+1), b(i)`; each singleton points at other
/// singletons and at the chain positions in its index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaPresentation {
    root: NodeId,
    chain: String,
    singletons: Vec<NodeId>,
    children: BTreeMap<NodeId, (BTreeSet<NodeId>, IndexSet)>,
}

impl OmegaPresentation {
    /// Validates: distinct singleton names that cannot collide with chain
    /// node names, declared children, a declared root that reaches every
    /// singleton, and a path from the root to chain position 0.
    pub fn new(
        root: NodeId,
        chain: impl Into<String>,
        decls: Vec<(NodeId, BTreeSet<NodeId>, IndexSet)>,
    ) -> Result<Self> {
        let chain = chain.into();
        if !is_valid_name(&chain) {
            return Err(Error::InvalidName(chain));
        }
        let mut singletons = Vec::with_capacity(decls.len());
        let mut children = BTreeMap::new();
        for (name, sings, indices) in decls {
            if let Some(rest) = name.as_str().strip_prefix(chain.as_str()) {
                if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::InvalidName(name.as_str().to_string()));
                }
            }
            if children.contains_key(&name) {
                return Err(Error::DuplicateDeclaration(name.as_str().to_string()));
            }
            singletons.push(name.clone());
            children.insert(name, (sings, indices));
        }
        for (sings, _) in children.values() {
            for c in sings {
                if !children.contains_key(c) {
                    return Err(Error::UndeclaredNode(c.as_str().to_string()));
                }
            }
        }
        if !children.contains_key(&root) {
            return Err(Error::UndeclaredNode(root.as_str().to_string()));
        }
        let p = OmegaPresentation {
            root,
            chain,
            singletons,
            children,
        };
        let reachable = p.reachable_singletons(&p.root);
        if let Some(missing) = p.singletons.iter().find(|s| !reachable.contains(*s)) {
            return Err(Error::NotAccessible(missing.as_str().to_string()));
        }
        if !reachable
            .iter()
            .any(|s| p.children[s].1.contains(0))
        {
            return Err(Error::NotAccessible(format!("{}0", p.chain)));
        }
        Ok(p)
    }

    pub fn root(&self) -> &NodeId {
        &self.root
    }

    pub fn chain(&self) -> &str {
        &self.chain
    }

    pub fn singletons(&self) -> &[NodeId] {
        &self.singletons
    }

    pub fn singleton_children(&self, s: &NodeId) -> Result<&BTreeSet<NodeId>> {
        self.children
            .get(s)
            .map(|(sings, _)| sings)
            .ok_or_else(|| Error::UnknownNode(s.as_str().to_string()))
    }

    pub fn chain_children(&self, s: &NodeId) -> Result<&IndexSet> {
        self.children
            .get(s)
            .map(|(_, idx)| idx)
            .ok_or_else(|| Error::UnknownNode(s.as_str().to_string()))
    }

    fn reachable_singletons(&self, from: &NodeId) -> BTreeSet<NodeId> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(from.clone());
        queue.push_back(from.clone());
        while let Some(v) = queue.pop_front() {
            for c in &self.children[&v].0 {
                if seen.insert(c.clone()) {
                    queue.push_back(c.clone());
                }
            }
        }
        seen
    }

    /// Supremum of chain indices reachable from `from`'s subgraph:
    /// `None` means the subgraph touches unboundedly large positions.
    fn chain_sup(&self, from: &NodeId) -> ChainExtent {
        let mut sup: Option<u64> = None;
        for s in self.reachable_singletons(from) {
            let idx = &self.children[&s].1;
            if !idx.is_finite() {
                return ChainExtent::Infinite;
            }
            if let Some(m) = idx.max_finite() {
                sup = Some(sup.map_or(m, |cur| cur.max(m)));
            }
        }
        match sup {
            Some(m) => ChainExtent::UpTo(m),
            None => ChainExtent::None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ChainExtent {
    None,
    UpTo(u64),
    Infinite,
}

impl fmt::Display for OmegaPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "omega v1")?;
        writeln!(f, "root {}", self.root)?;
        writeln!(
            f,
            "chain {c}: {c}0 -> {c}0, {c}(i+1) -> {c}(i+1) {c}(i)",
            c = self.chain
        )?;
        for s in &self.singletons {
            let (sings, idx) = &self.children[s];
            let names: Vec<&str> = sings.iter().map(NodeId::as_str).collect();
            writeln!(f, "node {s}: singletons [{}]; indices {idx}", names.join(" "))?;
        }
        Ok(())
    }
}

/// A witness map between subgraphs of one presentation: singletons map by
/// the table, the chain maps by the fixed rule b0 ↦ b0, b(i+1) ↦ b(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicWitness {
    singleton_map: BTreeMap<NodeId, NodeId>,
}

impl SymbolicWitness {
    pub fn new(pairs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        SymbolicWitness {
            singleton_map: pairs.into_iter().collect(),
        }
    }

    pub fn get(&self, s: &NodeId) -> Option<&NodeId> {
        self.singleton_map.get(s)
    }
}

/// Chain index in one of two shapes: a concrete constant, or t+k for a
/// universally quantified natural t. Offsets stay positive whenever a
/// predecessor is taken, so the instances 0, 1, t+2 cover every natural
/// after two reductions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum SymIx {
    Const(u64),
    TPlus(u64),
}

/// Children of a chain node: b0 -> {b0}, b(i) -> {b(i), b(i-1)}.
fn chain_children_sym(i: SymIx) -> Vec<SymIx> {
    match i {
        SymIx::Const(0) => vec![SymIx::Const(0)],
        SymIx::Const(k) => vec![SymIx::Const(k), SymIx::Const(k - 1)],
        SymIx::TPlus(k) => {
            assert!(k >= 1, "symbolic predecessor needs a positive offset");
            vec![SymIx::TPlus(k), SymIx::TPlus(k - 1)]
        }
    }
}

/// The chain rule of every witness: b0 ↦ b0, b(i) ↦ b(i-1).
fn chain_map(i: SymIx) -> SymIx {
    match i {
        SymIx::Const(0) => SymIx::Const(0),
        SymIx::Const(k) => SymIx::Const(k - 1),
        SymIx::TPlus(k) => {
            assert!(k >= 1, "symbolic predecessor needs a positive offset");
            SymIx::TPlus(k - 1)
        }
    }
}

fn image(of: &[SymIx]) -> Vec<SymIx> {
    let mut out: Vec<SymIx> = of.iter().map(|&i| chain_map(i)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Verifies `children(f(b_i)) = f(children(b_i))` for every chain index by
/// the finite case split i = 0, i = 1, i = t+2 (the image on the left of
/// the generic case lands at t+1 >= 1, so no case needs a predecessor of
/// an unconstrained index).
fn chain_cases_hold() -> bool {
    [SymIx::Const(0), SymIx::Const(1), SymIx::TPlus(2)]
        .into_iter()
        .all(|i| {
            let mut lhs = chain_children_sym(chain_map(i));
            lhs.sort_unstable();
            lhs.dedup();
            lhs == image(&chain_children_sym(i))
        })
}

/// Exact verification of the children equation for a witness between the
/// descendant subgraphs at `source` and `target`.
///
/// Chain nodes are handled by the finite case split; each singleton `s`
/// needs its mapped singleton children to be exactly the singleton
/// children of `f(s)` and `shift_down` of its index set to equal the index
/// set of `f(s)`.
pub fn verify_dhom_symbolic(
    p: &OmegaPresentation,
    w: &SymbolicWitness,
    source: &NodeId,
    target: &NodeId,
) -> Result<bool> {
    for s in [source, target] {
        if !p.children.contains_key(s) {
            return Err(Error::UnknownNode(s.as_str().to_string()));
        }
    }
    let reachable_src = p.reachable_singletons(source);
    for s in &reachable_src {
        if w.get(s).is_none() {
            return Err(Error::NotTotal(s.as_str().to_string()));
        }
    }
    if w.get(source) != Some(target) {
        return Ok(false);
    }
    let reachable_tgt = p.reachable_singletons(target);
    if reachable_src
        .iter()
        .any(|s| !reachable_tgt.contains(w.get(s).expect("checked total")))
    {
        return Ok(false);
    }

    // The image of the source chain must fit inside the target chain.
    let src_extent = p.chain_sup(source);
    let tgt_extent = p.chain_sup(target);
    match (src_extent, tgt_extent) {
        (ChainExtent::None, _) => {}
        (ChainExtent::Infinite, ChainExtent::Infinite) => {}
        (ChainExtent::Infinite, _) => return Ok(false),
        (ChainExtent::UpTo(_), ChainExtent::Infinite) => {}
        (ChainExtent::UpTo(s), ChainExtent::UpTo(t)) => {
            if t < s.saturating_sub(1) {
                return Ok(false);
            }
        }
        (ChainExtent::UpTo(_), ChainExtent::None) => return Ok(false),
    }
    if src_extent != ChainExtent::None && !chain_cases_hold() {
        return Ok(false);
    }

    for s in &reachable_src {
        let t = w.get(s).expect("checked total");
        let (s_sings, s_idx) = &p.children[s];
        let (t_sings, t_idx) = &p.children[t];
        let mapped: BTreeSet<NodeId> = s_sings
            .iter()
            .map(|x| w.get(x).expect("children of reachable are reachable").clone())
            .collect();
        if &mapped != t_sings {
            return Ok(false);
        }
        if !index_eq(&s_idx.shift_down(), t_idx) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finite shadow of the presentation: chain positions 0..=n, singleton
/// edges with indices above n dropped, accessibility revalidated.
pub fn truncate(p: &OmegaPresentation, n: u64) -> Result<Apg> {
    let chain_name = |i: u64| NodeId::new(format!("{}{}", p.chain, i)).expect("generated name");
    let mut decls: Vec<(NodeId, Vec<NodeId>)> = Vec::new();
    for s in &p.singletons {
        let (sings, idx) = &p.children[s];
        let mut kids: Vec<NodeId> = sings.iter().cloned().collect();
        kids.extend(idx.members_up_to(n).into_iter().map(chain_name));
        decls.push((s.clone(), kids));
    }
    decls.push((chain_name(0), vec![chain_name(0)]));
    for i in 1..=n {
        decls.push((chain_name(i), vec![chain_name(i), chain_name(i - 1)]));
    }
    Apg::new(decls, p.root.clone())
}

/// The ω-chain graph with two parents whose index sets swap under the
/// chain shift: children(a) = {0} ∪ odds, children(ap) = evens, root
/// r -> {a, ap}. Extensional and iso-extensional at every truncation
/// past 0, yet the symbolic witnesses show the subgraphs at a and ap are
/// mutually d-homomorphic. The subgraph below b1 is the Q2 graph.
pub fn make_j() -> OmegaPresentation {
    let node = |s: &str| NodeId::new(s).expect("static name");
    OmegaPresentation::new(
        node("r"),
        "b",
        vec![
            (
                node("r"),
                [node("a"), node("ap")].into_iter().collect(),
                IndexSet::empty(),
            ),
            (node("a"), BTreeSet::new(), IndexSet::new([0], [(1, 2)])),
            (node("ap"), BTreeSet::new(), IndexSet::new([0], [(0, 2)])),
        ],
    )
    .expect("J is well formed")
}

/// Two nodes a -> {a}, b -> {a, b}, pointed at b: extensional and
/// mutual-d-homomorphism-extensional but not strongly extensional.
pub fn make_q2() -> Apg {
    Apg::parse("apg v1\npoint b\na: a\nb: a b").expect("static graph")
}

/// The self-loop (the Ω picture).
pub fn make_omega1() -> Apg {
    Apg::parse("apg v1\npoint x\nx: x").expect("static graph")
}

/// The 2-cycle pointed at a.
pub fn make_omega2() -> Apg {
    Apg::parse("apg v1\npoint a\na: b\nb: a").expect("static graph")
}

/// Point above two childless nodes.
pub fn make_vee() -> Apg {
    Apg::parse("apg v1\npoint p\np: a b\na:\nb:").expect("static graph")
}

pub fn gallery_names() -> [&'static str; 5] {
    ["omega-J", "Q2", "omega1", "omega2", "vee"]
}

/// The finite gallery graphs by name; `omega-J` is not finite and returns
/// `None` like unknown names do.
pub fn gallery_graph(name: &str) -> Option<Apg> {
    match name {
        "Q2" => Some(make_q2()),
        "omega1" => Some(make_omega1()),
        "omega2" => Some(make_omega2()),
        "vee" => Some(make_vee()),
        _ => None,
    }
}
