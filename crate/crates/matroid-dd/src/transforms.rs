//! Structural conversions between the diagram representations of a matroid.
//!
//! Three local rewrites connect the eight diagrams of a matroid and its dual:
//!
//! * [`clutter_bdd_to_zdd`] — a BDD of a clutter re-read under ZDD semantics
//!   is the same family, because a clutter BDD cannot skip a level except on
//!   arcs into `⊥` (a skipped element would be a don't-care, and the two
//!   completions it generates would nest). Rebuilding through the ZDD
//!   deletion rule therefore only removes nodes; the family is unchanged.
//! * [`swap_arcs`] — exchanging every 0-arc with its 1-arc complements each
//!   represented set. On a BDD this maps the basis diagram of a matroid to
//!   the basis diagram of its dual; on a basis ZDD it yields, node for node,
//!   the independence BDD of the dual.
//! * [`bases_to_independents`] — redirecting every 0-arc that points to `⊥`
//!   onto the sibling 1-arc turns the basis diagram of a matroid into its
//!   independent-set diagram. This is a property of matroid exchange, not of
//!   clutters in general: the function happily rewrites any diagram, and
//!   tests exhibit a clutter where the result is not the downward closure.
//!
//! [`size_relations_report`] builds all eight diagrams in one store and
//! checks every size relation these rewrites induce.

use std::collections::HashMap;

use thiserror::Error;

use crate::build::{build_dd, BuildError, BuildTarget};
use crate::dd::{DdError, DdKind, Diagram, NodeId, Store};
use crate::matroid::Matroid;

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("family is not a clutter: {contained} is contained in {container}")]
    NotAClutter { contained: String, container: String },
    #[error("expected a {expected} diagram, got a {got} diagram")]
    KindMismatch { expected: DdKind, got: DdKind },
    #[error("arc swap changed the node count from {before} to {after}; the input was not a clutter diagram")]
    SwapAudit { before: usize, after: usize },
    #[error(transparent)]
    Dd(#[from] DdError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

fn ensure_clutter(store: &Store, d: &Diagram) -> Result<(), TransformError> {
    if let Some((a, b)) = store.enumerate(d).find_containing_pair() {
        return Err(TransformError::NotAClutter {
            contained: d.order().format_subset(a),
            container: d.order().format_subset(b),
        });
    }
    Ok(())
}

fn rezdd(store: &mut Store, id: NodeId, memo: &mut HashMap<NodeId, NodeId>) -> Result<NodeId, DdError> {
    if id.is_terminal() {
        return Ok(id);
    }
    if let Some(&out) = memo.get(&id) {
        return Ok(out);
    }
    let nd = store.node(id).expect("non-terminal id");
    let lo = rezdd(store, nd.lo, memo)?;
    let hi = rezdd(store, nd.hi, memo)?;
    let out = store.make_node(DdKind::Zdd, nd.label, lo, hi)?;
    memo.insert(id, out);
    Ok(out)
}

/// Converts the BDD of a clutter into the ZDD of the same family.
///
/// The node count can only shrink. Errors if the input is not a BDD or the
/// family is not a clutter (the rewrite would change the family then, since a
/// skipped BDD level is a free choice but a skipped ZDD level is an absence).
pub fn clutter_bdd_to_zdd(store: &mut Store, d: &Diagram) -> Result<Diagram, TransformError> {
    if d.kind() != DdKind::Bdd {
        return Err(TransformError::KindMismatch { expected: DdKind::Bdd, got: d.kind() });
    }
    ensure_clutter(store, d)?;
    let root = rezdd(store, d.root(), &mut HashMap::new())?;
    Ok(store.diagram(DdKind::Zdd, root)?)
}

fn swap_node(store: &mut Store, id: NodeId, memo: &mut HashMap<NodeId, NodeId>) -> Result<NodeId, DdError> {
    if id.is_terminal() {
        return Ok(id);
    }
    if let Some(&out) = memo.get(&id) {
        return Ok(out);
    }
    let nd = store.node(id).expect("non-terminal id");
    let lo = swap_node(store, nd.lo, memo)?;
    let hi = swap_node(store, nd.hi, memo)?;
    let out = store.make_node(DdKind::Bdd, nd.label, hi, lo)?;
    memo.insert(id, out);
    Ok(out)
}

/// Exchanges the 0- and 1-arc of every node, producing a BDD.
///
/// On a BDD input the result is the BDD of the complemented family (each set
/// replaced by its complement), and the node count is always preserved. On a
/// ZDD input the rewrite is only meaningful for clutters — a clutter ZDD has
/// no node with equal children, so every node survives the BDD deletion rule
/// and the result is the independence BDD of the dual matroid when the input
/// was a basis ZDD. A changed node count means the input was no clutter and
/// is reported as [`TransformError::SwapAudit`].
pub fn swap_arcs(store: &mut Store, d: &Diagram) -> Result<Diagram, TransformError> {
    let before = store.size(d);
    let root = swap_node(store, d.root(), &mut HashMap::new())?;
    let out = store.diagram(DdKind::Bdd, root)?;
    let after = store.size(&out);
    if after != before {
        return Err(TransformError::SwapAudit { before, after });
    }
    Ok(out)
}

fn lift_node(
    store: &mut Store,
    kind: DdKind,
    id: NodeId,
    memo: &mut HashMap<NodeId, NodeId>,
) -> Result<NodeId, DdError> {
    if id.is_terminal() {
        return Ok(id);
    }
    if let Some(&out) = memo.get(&id) {
        return Ok(out);
    }
    let nd = store.node(id).expect("non-terminal id");
    let hi = lift_node(store, kind, nd.hi, memo)?;
    let lo = if nd.lo == NodeId::BOT { hi } else { lift_node(store, kind, nd.lo, memo)? };
    let out = store.make_node(kind, nd.label, lo, hi)?;
    memo.insert(id, out);
    Ok(out)
}

/// Redirects every 0-arc into `⊥` onto the node's own 1-arc, keeping the kind.
///
/// When the input represents the bases of a matroid this produces the diagram
/// of its independent sets — skipping an element can never hurt — and on a
/// ZDD no node is lost, which is why basis and independence ZDDs of a matroid
/// have the same size. On families without the exchange property the result
/// is some under-approximation of the downward closure; no check is made.
pub fn bases_to_independents(store: &mut Store, d: &Diagram) -> Result<Diagram, TransformError> {
    let root = lift_node(store, d.kind(), d.root(), &mut HashMap::new())?;
    Ok(store.diagram(d.kind(), root)?)
}

/// Node counts of the eight diagrams of a matroid and its dual, all built in
/// one store over the same element order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramSizes {
    pub zdd_isets: usize,
    pub zdd_bases: usize,
    pub bdd_isets: usize,
    pub bdd_bases: usize,
    pub zdd_isets_dual: usize,
    pub zdd_bases_dual: usize,
    pub bdd_isets_dual: usize,
    pub bdd_bases_dual: usize,
}

/// One size relation between two of the eight diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: &'static str,
    pub lhs: usize,
    pub op: &'static str,
    pub rhs: usize,
    pub pass: bool,
}

fn rel(name: &'static str, lhs: usize, op: &'static str, rhs: usize) -> RelationCheck {
    let pass = match op {
        "=" => lhs == rhs,
        "<=" => lhs <= rhs,
        other => unreachable!("unknown relation operator {other}"),
    };
    RelationCheck { name, lhs, op, rhs, pass }
}

/// All size relations between the eight diagrams that the arc rewrites imply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeRelationsReport {
    pub sizes: DiagramSizes,
    pub checks: Vec<RelationCheck>,
}

impl SizeRelationsReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Builds the eight diagrams of `m` and its dual in `store` and evaluates the
/// nine size relations between them: basis and independence ZDDs coincide in
/// size, basis BDDs of dual matroids coincide, a basis ZDD matches the dual's
/// independence BDD, and basis BDDs dominate the other diagrams of the same
/// matroid.
pub fn size_relations_report(m: &Matroid, store: &mut Store) -> Result<SizeRelationsReport, TransformError> {
    let dual = m.dual();
    let size = |m: &Matroid, target: BuildTarget, store: &mut Store| -> Result<usize, BuildError> {
        let d = build_dd(m, store, target)?;
        Ok(store.size(&d))
    };
    let sizes = DiagramSizes {
        zdd_isets: size(m, BuildTarget::zdd_independents(), store)?,
        zdd_bases: size(m, BuildTarget::zdd_bases(), store)?,
        bdd_isets: size(m, BuildTarget::bdd_independents(), store)?,
        bdd_bases: size(m, BuildTarget::bdd_bases(), store)?,
        zdd_isets_dual: size(&dual, BuildTarget::zdd_independents(), store)?,
        zdd_bases_dual: size(&dual, BuildTarget::zdd_bases(), store)?,
        bdd_isets_dual: size(&dual, BuildTarget::bdd_independents(), store)?,
        bdd_bases_dual: size(&dual, BuildTarget::bdd_bases(), store)?,
    };
    let s = sizes;
    let checks = vec![
        rel("zdd_isets_eq_zdd_bases", s.zdd_isets, "=", s.zdd_bases),
        rel("zdd_bases_le_bdd_bases", s.zdd_bases, "<=", s.bdd_bases),
        rel("bdd_isets_le_bdd_bases", s.bdd_isets, "<=", s.bdd_bases),
        rel("zdd_bases_eq_bdd_isets_dual", s.zdd_bases, "=", s.bdd_isets_dual),
        rel("bdd_bases_eq_bdd_bases_dual", s.bdd_bases, "=", s.bdd_bases_dual),
        rel("bdd_isets_eq_zdd_bases_dual", s.bdd_isets, "=", s.zdd_bases_dual),
        rel("bdd_isets_dual_le_bdd_bases_dual", s.bdd_isets_dual, "<=", s.bdd_bases_dual),
        rel("zdd_bases_dual_le_bdd_bases_dual", s.zdd_bases_dual, "<=", s.bdd_bases_dual),
        rel("zdd_isets_dual_eq_zdd_bases_dual", s.zdd_isets_dual, "=", s.zdd_bases_dual),
    ];
    Ok(SizeRelationsReport { sizes, checks })
}
