//! Building reduced diagrams straight from an independence oracle.
//!
//! The builder walks the element order top-down. At each step the behaviour
//! of the remaining elements is captured by a bitvector over suffix subsets —
//! "which completions stay independent" — and nodes are memoized on that
//! signature, so two prefixes that leave the same minor share a subtree. The
//! resulting diagram is reduced and canonical because every node still goes
//! through [`Store::make_node`].
//!
//! [`enumerate_family`] is the brutish alternative: list every subset and ask
//! the oracle. It exists so the clever path has something to be checked
//! against.

use std::collections::HashMap;

use thiserror::Error;

use crate::dd::{DdError, DdKind, Diagram, NodeId, Store};
use crate::family::SetFamily;
use crate::matroid::Matroid;

/// Default ground-size cap for [`build_dd`]; signatures take `2^n` bits.
pub const DEFAULT_MAX_GROUND: usize = 24;

/// Hard cap for the unguarded entry points (a 32 MiB signature at the root).
const HARD_MAX_GROUND: usize = 28;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("ground set of {n} elements exceeds the build limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("store order and matroid ground set name different elements")]
    OrderMismatch,
    #[error(transparent)]
    Dd(#[from] DdError),
}

/// Which family of subsets the diagram should represent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetFamily {
    IndependentSets,
    Bases,
}

/// Diagram kind plus target family: the four diagrams of a matroid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildTarget {
    pub kind: DdKind,
    pub target: TargetFamily,
}

impl BuildTarget {
    pub const fn zdd_independents() -> Self {
        BuildTarget { kind: DdKind::Zdd, target: TargetFamily::IndependentSets }
    }

    pub const fn zdd_bases() -> Self {
        BuildTarget { kind: DdKind::Zdd, target: TargetFamily::Bases }
    }

    pub const fn bdd_independents() -> Self {
        BuildTarget { kind: DdKind::Bdd, target: TargetFamily::IndependentSets }
    }

    pub const fn bdd_bases() -> Self {
        BuildTarget { kind: DdKind::Bdd, target: TargetFamily::Bases }
    }
}

/// Position `j` of the store order as an index into the matroid's ground
/// order; errors unless the two orders name the same element set.
fn order_positions(m: &Matroid, store: &Store) -> Result<Vec<usize>, BuildError> {
    let order = store.order();
    if order.len() != m.n() {
        return Err(BuildError::OrderMismatch);
    }
    (0..order.len())
        .map(|j| m.ground().index_of(order.name(j)).ok_or(BuildError::OrderMismatch))
        .collect()
}

/// Builds the target diagram in `store`, refusing ground sets larger than
/// [`DEFAULT_MAX_GROUND`]. The store's order is the variable order; it may be
/// any permutation of the matroid's ground set.
pub fn build_dd(m: &Matroid, store: &mut Store, target: BuildTarget) -> Result<Diagram, BuildError> {
    build_dd_limited(m, store, target, DEFAULT_MAX_GROUND)
}

/// [`build_dd`] with an explicit ground-size cap.
pub fn build_dd_limited(
    m: &Matroid,
    store: &mut Store,
    target: BuildTarget,
    max_n: usize,
) -> Result<Diagram, BuildError> {
    if m.n() > max_n {
        return Err(BuildError::TooLarge { n: m.n(), max: max_n });
    }
    build_dd_via_minors(m, store, target)
}

/// One suffix-signature: bit `u` says whether the prefix choices extend
/// independently by the suffix subset encoded by `u`.
type Bits = Vec<u64>;

fn words(bits: usize) -> usize {
    bits.div_ceil(64)
}

fn get(bits: &Bits, u: usize) -> bool {
    bits[u >> 6] >> (u & 63) & 1 == 1
}

fn set(bits: &mut Bits, u: usize) {
    bits[u >> 6] |= 1 << (u & 63);
}

struct Builder<'a> {
    store: &'a mut Store,
    kind: DdKind,
    n: usize,
    memo: HashMap<(usize, Bits, Option<usize>), NodeId>,
}

impl Builder<'_> {
    /// `needed` is the number of elements a basis still has to pick up, or
    /// `None` when every independent completion counts.
    fn node(&mut self, level: usize, bits: Bits, needed: Option<usize>) -> Result<NodeId, DdError> {
        if level == self.n {
            let accept = get(&bits, 0) && matches!(needed, None | Some(0));
            return Ok(if accept { NodeId::TOP } else { NodeId::BOT });
        }
        let key = (level, bits, needed);
        if let Some(&id) = self.memo.get(&key) {
            return Ok(id);
        }
        let suffix = 1usize << (self.n - level - 1);
        let mut lo_bits = vec![0u64; words(suffix)];
        let mut hi_bits = vec![0u64; words(suffix)];
        for u in 0..suffix {
            if get(&key.1, u << 1) {
                set(&mut lo_bits, u);
            }
            if get(&key.1, u << 1 | 1) {
                set(&mut hi_bits, u);
            }
        }
        let lo = self.node(level + 1, lo_bits, needed)?;
        let hi = match needed {
            Some(0) => NodeId::BOT,
            Some(k) => self.node(level + 1, hi_bits, Some(k - 1))?,
            None => self.node(level + 1, hi_bits, None)?,
        };
        let id = self.store.make_node(self.kind, level, lo, hi)?;
        self.memo.insert(key, id);
        Ok(id)
    }
}

/// The top-down builder itself, guarded only by the hard cap. The root
/// signature queries the oracle once per subset; below the root, signatures
/// are sliced, never re-queried.
pub fn build_dd_via_minors(
    m: &Matroid,
    store: &mut Store,
    target: BuildTarget,
) -> Result<Diagram, BuildError> {
    if m.n() > HARD_MAX_GROUND {
        return Err(BuildError::TooLarge { n: m.n(), max: HARD_MAX_GROUND });
    }
    let positions = order_positions(m, store)?;
    let n = m.n();
    let mut root_bits = vec![0u64; words(1 << n)];
    for u in 0..1usize << n {
        let mut ground_mask = 0u64;
        for (j, &i) in positions.iter().enumerate() {
            if u >> j & 1 == 1 {
                ground_mask |= 1 << i;
            }
        }
        if m.is_independent(ground_mask) {
            set(&mut root_bits, u);
        }
    }
    let needed = match target.target {
        TargetFamily::IndependentSets => None,
        TargetFamily::Bases => Some(m.rank_full()),
    };
    let mut builder = Builder { store, kind: target.kind, n, memo: HashMap::new() };
    let root = builder.node(0, root_bits, needed)?;
    Ok(store.diagram(target.kind, root)?)
}

/// Lists the target family by querying the oracle on every subset, as masks
/// over `store_order`-style positions given by the matroid's own ground
/// order permuted to `positions`. Exponential; capped like [`build_dd`].
pub fn enumerate_family(
    m: &Matroid,
    store: &Store,
    target: TargetFamily,
) -> Result<SetFamily, BuildError> {
    if m.n() > DEFAULT_MAX_GROUND {
        return Err(BuildError::TooLarge { n: m.n(), max: DEFAULT_MAX_GROUND });
    }
    let positions = order_positions(m, store)?;
    let n = m.n();
    let rank = m.rank_full() as u32;
    let mut members = Vec::new();
    for u in 0..1u64 << n {
        if matches!(target, TargetFamily::Bases) && u.count_ones() != rank {
            continue;
        }
        let mut ground_mask = 0u64;
        for (j, &i) in positions.iter().enumerate() {
            if u >> j & 1 == 1 {
                ground_mask |= 1 << i;
            }
        }
        if m.is_independent(ground_mask) {
            members.push(u);
        }
    }
    Ok(SetFamily::new(n, members).expect("masks stay inside the ground set"))
}
