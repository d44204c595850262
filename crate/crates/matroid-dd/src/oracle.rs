//! Rank and independence queries answered from an independence ZDD.
//!
//! Once the independence sets of a matroid live in a ZDD, greedy rank
//! computation never has to leave the diagram: walking from the root, an
//! element of the query set is taken whenever the walk stands on its label
//! (the 1-arc of a reduced ZDD node is never `⊥`, so taking is always
//! possible), and discarded whenever the walk has already passed it — a
//! skipped level means the element extends no independent set below. Matroid
//! exchange makes this greedy sweep exact, and each query inspects at most
//! `n + |X|` nodes, independent of how many sets the diagram encodes.

use thiserror::Error;

use crate::dd::{DdKind, Diagram, NodeId, Store};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("rank queries need a zdd diagram")]
    NotZdd,
    #[error("walk reached the 0-terminal; the diagram does not represent the independent sets of a matroid")]
    Malformed,
}

/// A query result together with the number of nodes the walk inspected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleAnswer<T> {
    pub value: T,
    pub visits: usize,
}

/// Membership of `x` in the family of a ZDD, inspecting at most `n` nodes.
pub fn zdd_independence(store: &Store, d: &Diagram, x: u64) -> Result<OracleAnswer<bool>, OracleError> {
    if d.kind() != DdKind::Zdd {
        return Err(OracleError::NotZdd);
    }
    let mut node = d.root();
    let mut rest = x;
    let mut visits = 0usize;
    loop {
        let Some(nd) = store.node(node) else {
            return Ok(OracleAnswer { value: node == NodeId::TOP && rest == 0, visits });
        };
        visits += 1;
        // elements below this label were skipped: absent from every member
        if rest & ((1u64 << nd.label) - 1) != 0 {
            return Ok(OracleAnswer { value: false, visits });
        }
        if rest >> nd.label & 1 == 1 {
            rest &= !(1u64 << nd.label);
            node = nd.hi;
        } else {
            node = nd.lo;
        }
    }
}

/// The rank of `x` in the matroid whose independent sets `d` represents.
///
/// Greedy walk in diagram order: `label < min(x)` descends the 0-arc,
/// `label > min(x)` discards `min(x)` (the skipped element is in no member
/// below), `label = min(x)` takes the element and descends the 1-arc. The
/// walk inspects at most `n + |x|` nodes. Reaching `⊥` is impossible over a
/// downward-closed nonempty family and reports
/// [`OracleError::Malformed`].
pub fn zdd_rank(store: &Store, d: &Diagram, x: u64) -> Result<OracleAnswer<usize>, OracleError> {
    if d.kind() != DdKind::Zdd {
        return Err(OracleError::NotZdd);
    }
    let mut node = d.root();
    let mut rest = x;
    let mut rank = 0usize;
    let mut visits = 0usize;
    loop {
        if rest == 0 {
            return Ok(OracleAnswer { value: rank, visits });
        }
        let Some(nd) = store.node(node) else {
            return if node == NodeId::TOP {
                // nothing below the last taken element can be added
                Ok(OracleAnswer { value: rank, visits })
            } else {
                Err(OracleError::Malformed)
            };
        };
        visits += 1;
        let min = rest.trailing_zeros() as usize;
        if nd.label < min {
            node = nd.lo;
        } else if nd.label > min {
            // the walk passed min's level: min extends nothing taken so far
            rest &= !(1u64 << min);
        } else {
            rest &= !(1u64 << min);
            rank += 1;
            node = nd.hi;
        }
    }
}
