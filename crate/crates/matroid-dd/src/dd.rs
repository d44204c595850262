//! Reduced ordered binary decision diagrams, in both the BDD and the ZDD
//! flavor, over a fixed element order.
//!
//! A [`Store`] owns the nodes of one computation family. Nodes are
//! hash-consed: [`Store::make_node`] first applies the kind's deletion rule —
//! a BDD drops a node whose two children coincide, a ZDD drops a node whose
//! 1-child is `⊥` — and then shares any node that already exists. Diagrams
//! built this way are canonical per kind: two construction routes over the
//! same store yield the same root exactly when they describe the same family.
//!
//! Labels are positions in the store's [`ElementOrder`]; the two terminals
//! carry the sentinel label `n`, which makes them sort after every real
//! element in ordering checks. Every non-terminal reaches the `⊤` terminal
//! (checked by [`Store::audit`]): a node that couldn't would describe the
//! empty family and would have been reduced away.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use crate::family::{FamilyError, SetFamily, MAX_GROUND};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DdError {
    #[error("element `{0}` appears twice in the order")]
    DuplicateElement(String),
    #[error("order of {0} elements exceeds the supported maximum of {MAX_GROUND}")]
    OrderTooLarge(usize),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("label {label} out of range for ground size {ground}")]
    LabelRange { label: usize, ground: usize },
    #[error("node label {label} does not precede its children (lo label {lo_label}, hi label {hi_label})")]
    LabelOrder { label: usize, lo_label: usize, hi_label: usize },
    #[error("node id {0:?} does not belong to this store")]
    ForeignNode(NodeId),
    #[error("family over {family} elements does not fit a store over {store}")]
    GroundMismatch { family: usize, store: usize },
    #[error("{rule} violated at node {node:?}")]
    ReductionViolated { rule: &'static str, node: NodeId },
    #[error("node {0:?} cannot reach the 1-terminal")]
    DeadNode(NodeId),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// A total order on named elements; label `i` in a diagram means the `i`-th
/// element here. Equality is by the name sequence.
#[derive(Debug, Clone)]
pub struct ElementOrder {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for ElementOrder {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}
impl Eq for ElementOrder {}

impl ElementOrder {
    pub fn new(names: Vec<String>) -> Result<Self, DdError> {
        if names.len() > MAX_GROUND {
            return Err(DdError::OrderTooLarge(names.len()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(DdError::DuplicateElement(name.clone()));
            }
        }
        Ok(ElementOrder { names, index })
    }

    /// The order `e1 < e2 < … < en`.
    pub fn indexed(n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("e{i}")).collect()).expect("generated names are distinct")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Translates a list of element names into a mask over this order.
    pub fn mask_of<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<u64, DdError> {
        let mut mask = 0u64;
        for name in names {
            let i = self
                .index_of(name)
                .ok_or_else(|| DdError::UnknownElement(name.to_string()))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Renders a mask as `{a,b,c}` in this order.
    pub fn format_subset(&self, mask: u64) -> String {
        let mut out = String::from("{");
        let mut first = true;
        for i in 0..self.names.len() {
            if mask >> i & 1 == 1 {
                if !first {
                    out.push(',');
                }
                out.push_str(&self.names[i]);
                first = false;
            }
        }
        out.push('}');
        out
    }

    /// The order induced on the elements selected by `mask`, keeping relative
    /// positions.
    pub fn induced(&self, mask: u64) -> ElementOrder {
        let names = (0..self.names.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.names[i].clone())
            .collect();
        ElementOrder::new(names).expect("subset of distinct names")
    }

    /// Re-expresses a mask over this order as a mask over `target`, which must
    /// contain every named element.
    pub fn remap_mask(&self, mask: u64, target: &ElementOrder) -> Result<u64, DdError> {
        let mut out = 0u64;
        for i in 0..self.names.len() {
            if mask >> i & 1 == 1 {
                let j = target
                    .index_of(&self.names[i])
                    .ok_or_else(|| DdError::UnknownElement(self.names[i].clone()))?;
                out |= 1 << j;
            }
        }
        Ok(out)
    }
}

/// Which reduction rule a diagram lives under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DdKind {
    Bdd,
    Zdd,
}

impl fmt::Display for DdKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DdKind::Bdd => "bdd",
            DdKind::Zdd => "zdd",
        })
    }
}

/// Index of a node within its store. `0` and `1` are the terminals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    /// The 0-terminal `⊥` (empty family).
    pub const BOT: NodeId = NodeId(0);
    /// The 1-terminal `⊤`.
    pub const TOP: NodeId = NodeId(1);

    pub fn is_terminal(self) -> bool {
        self.0 < 2
    }
}

/// A non-terminal: element label plus 0- and 1-successors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Node {
    pub label: usize,
    pub lo: NodeId,
    pub hi: NodeId,
}

/// Arena and unique table for one family of diagram computations.
pub struct Store {
    order: Arc<ElementOrder>,
    nodes: Vec<Node>,
    unique: HashMap<Node, NodeId>,
}

/// A diagram handle: reduction kind plus root node in some [`Store`].
#[derive(Debug, Clone)]
pub struct Diagram {
    kind: DdKind,
    root: NodeId,
    order: Arc<ElementOrder>,
}

impl Diagram {
    pub fn kind(&self) -> DdKind {
        self.kind
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn order(&self) -> &Arc<ElementOrder> {
        &self.order
    }
}

impl Store {
    pub fn new(order: ElementOrder) -> Self {
        Self::with_order(Arc::new(order))
    }

    pub fn with_order(order: Arc<ElementOrder>) -> Self {
        Store { order, nodes: Vec::new(), unique: HashMap::new() }
    }

    pub fn order(&self) -> &Arc<ElementOrder> {
        &self.order
    }

    pub fn ground_size(&self) -> usize {
        self.order.len()
    }

    /// Number of non-terminal nodes ever created (not per-diagram size).
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// The label of a node; terminals report the sentinel `n`.
    pub fn label(&self, id: NodeId) -> usize {
        if id.is_terminal() {
            self.order.len()
        } else {
            self.nodes[id.0 as usize - 2].label
        }
    }

    /// The record behind a non-terminal id, or `None` for terminals.
    pub fn node(&self, id: NodeId) -> Option<Node> {
        if id.is_terminal() {
            None
        } else {
            Some(self.nodes[id.0 as usize - 2])
        }
    }

    fn check_id(&self, id: NodeId) -> Result<(), DdError> {
        if (id.0 as usize) < self.nodes.len() + 2 {
            Ok(())
        } else {
            Err(DdError::ForeignNode(id))
        }
    }

    /// Creates (or finds) the node `(label, lo, hi)` after applying the
    /// kind's deletion rule. Labels must strictly precede child labels.
    pub fn make_node(&mut self, kind: DdKind, label: usize, lo: NodeId, hi: NodeId) -> Result<NodeId, DdError> {
        let n = self.order.len();
        if label >= n {
            return Err(DdError::LabelRange { label, ground: n });
        }
        self.check_id(lo)?;
        self.check_id(hi)?;
        let (lo_label, hi_label) = (self.label(lo), self.label(hi));
        if label >= lo_label || label >= hi_label {
            return Err(DdError::LabelOrder { label, lo_label, hi_label });
        }
        match kind {
            DdKind::Bdd if lo == hi => return Ok(lo),
            DdKind::Zdd if hi == NodeId::BOT => return Ok(lo),
            _ => {}
        }
        let node = Node { label, lo, hi };
        if let Some(&id) = self.unique.get(&node) {
            return Ok(id);
        }
        let id = NodeId(u32::try_from(self.nodes.len() + 2).expect("store of fewer than 2^32 nodes"));
        self.nodes.push(node);
        self.unique.insert(node, id);
        Ok(id)
    }

    /// Builds the reduced diagram of an explicit family by recursive splitting
    /// on the first element, memoized on the remaining canonical family.
    pub fn from_family(&mut self, kind: DdKind, family: &SetFamily) -> Result<Diagram, DdError> {
        let n = self.order.len();
        if family.ground_size() != n {
            return Err(DdError::GroundMismatch { family: family.ground_size(), store: n });
        }
        let mut memo: HashMap<(usize, Vec<u64>), NodeId> = HashMap::new();
        let root = self.family_node(kind, 0, family.members().to_vec(), &mut memo)?;
        Ok(Diagram { kind, root, order: Arc::clone(&self.order) })
    }

    fn family_node(
        &mut self,
        kind: DdKind,
        level: usize,
        members: Vec<u64>,
        memo: &mut HashMap<(usize, Vec<u64>), NodeId>,
    ) -> Result<NodeId, DdError> {
        if members.is_empty() {
            return Ok(NodeId::BOT);
        }
        if level == self.order.len() {
            debug_assert_eq!(members, [0]);
            return Ok(NodeId::TOP);
        }
        if let Some(&id) = memo.get(&(level, members.clone())) {
            return Ok(id);
        }
        let bit = 1u64 << level;
        let lo_members: Vec<u64> = members.iter().copied().filter(|m| m & bit == 0).collect();
        let hi_members: Vec<u64> = members.iter().copied().filter(|m| m & bit != 0).map(|m| m & !bit).collect();
        let lo = self.family_node(kind, level + 1, lo_members, memo)?;
        let hi = self.family_node(kind, level + 1, hi_members, memo)?;
        let id = self.make_node(kind, level, lo, hi)?;
        memo.insert((level, members), id);
        Ok(id)
    }

    /// A diagram whose family is empty (`⊥` root).
    pub fn bottom(&self, kind: DdKind) -> Diagram {
        Diagram { kind, root: NodeId::BOT, order: Arc::clone(&self.order) }
    }

    /// Wraps an existing root. The root must belong to this store.
    pub fn diagram(&self, kind: DdKind, root: NodeId) -> Result<Diagram, DdError> {
        self.check_id(root)?;
        Ok(Diagram { kind, root, order: Arc::clone(&self.order) })
    }

    /// Membership test under the diagram's semantics.
    pub fn contains(&self, d: &Diagram, subset: u64) -> bool {
        match d.kind {
            DdKind::Bdd => {
                let mut node = d.root;
                loop {
                    match self.node(node) {
                        None => return node == NodeId::TOP,
                        Some(nd) => {
                            node = if subset >> nd.label & 1 == 1 { nd.hi } else { nd.lo };
                        }
                    }
                }
            }
            DdKind::Zdd => {
                let mut node = d.root;
                let mut rest = subset;
                loop {
                    match self.node(node) {
                        None => return node == NodeId::TOP && rest == 0,
                        Some(nd) => {
                            // elements skipped below this label are absent in a ZDD
                            if rest & ((1u64 << nd.label) - 1) != 0 {
                                return false;
                            }
                            if rest >> nd.label & 1 == 1 {
                                rest &= !(1u64 << nd.label);
                                node = nd.hi;
                            } else {
                                node = nd.lo;
                            }
                        }
                    }
                }
            }
        }
    }

    /// Number of subsets the diagram represents. A BDD's skipped levels are
    /// free choices, so the result can reach `2^n` — hence a big integer.
    pub fn count(&self, d: &Diagram) -> BigUint {
        match d.kind {
            DdKind::Zdd => {
                let mut memo: HashMap<NodeId, BigUint> = HashMap::new();
                self.count_zdd(d.root, &mut memo)
            }
            DdKind::Bdd => {
                let mut memo: HashMap<(usize, NodeId), BigUint> = HashMap::new();
                self.count_bdd(0, d.root, &mut memo)
            }
        }
    }

    fn count_zdd(&self, id: NodeId, memo: &mut HashMap<NodeId, BigUint>) -> BigUint {
        match self.node(id) {
            None => BigUint::from(u8::from(id == NodeId::TOP)),
            Some(nd) => {
                if let Some(c) = memo.get(&id) {
                    return c.clone();
                }
                let c = self.count_zdd(nd.lo, memo) + self.count_zdd(nd.hi, memo);
                memo.insert(id, c.clone());
                c
            }
        }
    }

    fn count_bdd(&self, level: usize, id: NodeId, memo: &mut HashMap<(usize, NodeId), BigUint>) -> BigUint {
        if id == NodeId::BOT {
            return BigUint::from(0u8);
        }
        if level == self.order.len() {
            return BigUint::from(1u8);
        }
        if let Some(c) = memo.get(&(level, id)) {
            return c.clone();
        }
        let c = match self.node(id) {
            Some(nd) if nd.label == level => {
                self.count_bdd(level + 1, nd.lo, memo) + self.count_bdd(level + 1, nd.hi, memo)
            }
            // level skipped: the element is unconstrained
            _ => self.count_bdd(level + 1, id, memo) * 2u8,
        };
        memo.insert((level, id), c.clone());
        c
    }

    /// The represented family, explicitly. Exponential in skipped BDD levels.
    pub fn enumerate(&self, d: &Diagram) -> SetFamily {
        let mut out = Vec::new();
        match d.kind {
            DdKind::Zdd => self.enum_zdd(d.root, 0, &mut out),
            DdKind::Bdd => self.enum_bdd(0, d.root, 0, &mut out),
        }
        SetFamily::new(self.order.len(), out).expect("diagram stays in ground")
    }

    fn enum_zdd(&self, id: NodeId, prefix: u64, out: &mut Vec<u64>) {
        match self.node(id) {
            None => {
                if id == NodeId::TOP {
                    out.push(prefix);
                }
            }
            Some(nd) => {
                self.enum_zdd(nd.lo, prefix, out);
                self.enum_zdd(nd.hi, prefix | 1 << nd.label, out);
            }
        }
    }

    fn enum_bdd(&self, level: usize, id: NodeId, prefix: u64, out: &mut Vec<u64>) {
        if id == NodeId::BOT {
            return;
        }
        if level == self.order.len() {
            out.push(prefix);
            return;
        }
        match self.node(id) {
            Some(nd) if nd.label == level => {
                self.enum_bdd(level + 1, nd.lo, prefix, out);
                self.enum_bdd(level + 1, nd.hi, prefix | 1 << level, out);
            }
            _ => {
                self.enum_bdd(level + 1, id, prefix, out);
                self.enum_bdd(level + 1, id, prefix | 1 << level, out);
            }
        }
    }

    /// Non-terminal nodes reachable from the root, in a deterministic
    /// (depth-first, 0-arc first) discovery order.
    pub fn reachable(&self, root: NodeId) -> Vec<NodeId> {
        let mut seen = vec![false; self.nodes.len() + 2];
        let mut out = Vec::new();
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if id.is_terminal() || seen[id.0 as usize] {
                continue;
            }
            seen[id.0 as usize] = true;
            out.push(id);
            let nd = self.nodes[id.0 as usize - 2];
            // push hi first so lo is explored first
            stack.push(nd.hi);
            stack.push(nd.lo);
        }
        out
    }

    /// Count of reachable non-terminals per level; length `n`.
    pub fn level_widths(&self, d: &Diagram) -> Vec<usize> {
        let mut widths = vec![0usize; self.order.len()];
        for id in self.reachable(d.root) {
            widths[self.label(id)] += 1;
        }
        widths
    }

    /// Total number of non-terminal nodes in the diagram.
    pub fn size(&self, d: &Diagram) -> usize {
        self.reachable(d.root).len()
    }

    /// The largest level width (0 for a terminal-only diagram).
    pub fn width(&self, d: &Diagram) -> usize {
        self.level_widths(d).into_iter().max().unwrap_or(0)
    }

    /// GraphViz rendering: circles labeled with element names, terminal boxes
    /// `⊥`/`⊤`, dashed 0-arcs, solid 1-arcs, one rank per level. Output is
    /// stable across runs for equal diagrams.
    pub fn to_dot(&self, d: &Diagram) -> String {
        let reach = self.reachable(d.root);
        let mut name: HashMap<NodeId, String> = HashMap::new();
        for (i, &id) in reach.iter().enumerate() {
            name.insert(id, format!("n{i}"));
        }
        let node_name = |id: NodeId| -> String {
            match id {
                NodeId::BOT => "bot".into(),
                NodeId::TOP => "top".into(),
                other => name[&other].clone(),
            }
        };

        let mut used_bot = d.root == NodeId::BOT;
        let mut used_top = d.root == NodeId::TOP;
        for &id in &reach {
            let nd = self.node(id).expect("reachable is non-terminal");
            for child in [nd.lo, nd.hi] {
                used_bot |= child == NodeId::BOT;
                used_top |= child == NodeId::TOP;
            }
        }

        let mut s = String::new();
        s.push_str("digraph diagram {\n  rankdir=TB;\n");
        for &id in &reach {
            let nd = self.node(id).unwrap();
            writeln!(
                s,
                "  {} [shape=circle, label=\"{}\"];",
                node_name(id),
                self.order.name(nd.label)
            )
            .unwrap();
        }
        if used_bot {
            s.push_str("  bot [shape=box, label=\"⊥\"];\n");
        }
        if used_top {
            s.push_str("  top [shape=box, label=\"⊤\"];\n");
        }
        for level in 0..self.order.len() {
            let rank: Vec<&NodeId> = reach.iter().filter(|&&id| self.label(id) == level).collect();
            if rank.len() > 1 {
                s.push_str("  { rank=same;");
                for id in rank {
                    write!(s, " {};", node_name(*id)).unwrap();
                }
                s.push_str(" }\n");
            }
        }
        for &id in &reach {
            let nd = self.node(id).unwrap();
            writeln!(s, "  {} -> {} [style=dashed];", node_name(id), node_name(nd.lo)).unwrap();
            writeln!(s, "  {} -> {} [style=solid];", node_name(id), node_name(nd.hi)).unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// Verifies reducedness of the reachable part: strict label ordering, the
    /// kind's deletion rule, node sharing, and that every node reaches `⊤`.
    pub fn audit(&self, d: &Diagram) -> Result<(), DdError> {
        let reach = self.reachable(d.root);
        let mut seen: HashMap<Node, NodeId> = HashMap::new();
        let mut reaches_top: HashMap<NodeId, bool> = HashMap::new();
        // children have larger labels, so evaluating in reverse discovery order
        // is not necessarily bottom-up; recurse with memo instead
        fn top_reach(store: &Store, id: NodeId, memo: &mut HashMap<NodeId, bool>) -> bool {
            match store.node(id) {
                None => id == NodeId::TOP,
                Some(nd) => {
                    if let Some(&b) = memo.get(&id) {
                        return b;
                    }
                    let b = top_reach(store, nd.lo, memo) || top_reach(store, nd.hi, memo);
                    memo.insert(id, b);
                    b
                }
            }
        }
        for &id in &reach {
            let nd = self.node(id).unwrap();
            if nd.label >= self.order.len() {
                return Err(DdError::LabelRange { label: nd.label, ground: self.order.len() });
            }
            let (lo_label, hi_label) = (self.label(nd.lo), self.label(nd.hi));
            if nd.label >= lo_label || nd.label >= hi_label {
                return Err(DdError::LabelOrder { label: nd.label, lo_label, hi_label });
            }
            match d.kind {
                DdKind::Bdd if nd.lo == nd.hi => {
                    return Err(DdError::ReductionViolated { rule: "bdd node deletion", node: id })
                }
                DdKind::Zdd if nd.hi == NodeId::BOT => {
                    return Err(DdError::ReductionViolated { rule: "zdd node deletion", node: id })
                }
                _ => {}
            }
            if seen.insert(nd, id).is_some() {
                return Err(DdError::ReductionViolated { rule: "node sharing", node: id });
            }
            if !top_reach(self, id, &mut reaches_top) {
                return Err(DdError::DeadNode(id));
            }
        }
        Ok(())
    }
}
