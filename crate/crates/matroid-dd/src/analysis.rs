//! Width analysis: counting minors across an element order and relating them
//! to diagram level widths.
//!
//! Fix an order and a boundary after the first `i` elements. Two independent
//! prefix subsets are equivalent when they extend independently by exactly
//! the same suffix subsets; the equivalence classes are the distinct minors
//! visible at that boundary, captured here as [`MinorSignature`]s. Level
//! widths of the four diagrams never exceed the number of such minors, and
//! the width of the independence ZDD is exactly the number of minors in
//! which the next element is not a loop. [`check_width_bounds`] verifies
//! these facts per level, with the sharper per-class bounds where a class
//! theorem exists (1 for free matroids, `λ+1` for uniform ones, `2^λ` for
//! partition and nested ones). Laminar matroids get the generic bound only:
//! [`laminar_counterexample`] constructs, for any `k`, a laminar matroid and
//! an order whose boundary connectivity stays at 2 while the independence
//! ZDD grows a level of width `k+2`.
//!
//! [`pathwidth_exact`] minimizes the maximum boundary connectivity over all
//! element orders by dynamic programming over prefix sets, and
//! [`good_order`] returns the defining order for the classes where that
//! order is known to be optimal.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::build::{build_dd, BuildError, BuildTarget};
use crate::dd::{DdError, ElementOrder, Store};
use crate::family::full_mask;
use crate::matroid::{ClassTag, Matroid, MatroidError};

/// Largest suffix a signature bitvector will hold (`2^22` bits ≈ 0.5 MiB).
pub const MAX_SIGNATURE_SUFFIX: usize = 22;

/// Largest ground set [`pathwidth_exact`] will take regardless of its cap.
pub const MAX_PATHWIDTH_GROUND: usize = 22;

/// Default ground-size cap for [`pathwidth_exact`].
pub const DEFAULT_PATHWIDTH_MAX: usize = 16;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("prefix length {prefix} exceeds the ground size {n}")]
    PrefixOutOfRange { prefix: usize, n: usize },
    #[error("subset {subset:#b} is not contained in the first {prefix} elements")]
    NotInPrefix { subset: u64, prefix: usize },
    #[error("suffix of {suffix} elements exceeds the signature limit of {max}")]
    SuffixTooLarge { suffix: usize, max: usize },
    #[error("ground set of {n} elements exceeds the analysis limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("no class theorem applies to a {0} matroid")]
    UnsupportedClass(ClassTag),
    #[error("order and matroid ground set name different elements")]
    OrderMismatch,
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Dd(#[from] DdError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// Which suffix subsets extend a given prefix subset independently.
///
/// Bit `u` (a mask over suffix positions) is set when prefix ∪ suffix-subset
/// is independent. Equal signatures mean equal minors on the suffix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinorSignature {
    suffix_size: usize,
    bits: Vec<u64>,
}

impl MinorSignature {
    pub fn suffix_size(&self) -> usize {
        self.suffix_size
    }

    /// Does the suffix subset `u` (mask over suffix positions) extend the
    /// underlying prefix independently?
    pub fn admits(&self, u: u64) -> bool {
        debug_assert!(u < 1 << self.suffix_size);
        self.bits[(u >> 6) as usize] >> (u & 63) & 1 == 1
    }

    /// Is the first suffix element a non-loop of this minor?
    pub fn first_element_is_nonloop(&self) -> bool {
        self.suffix_size > 0 && self.admits(1)
    }
}

/// Position `j` of `order` as an index into the matroid's ground order.
fn positions(m: &Matroid, order: &ElementOrder) -> Result<Vec<usize>, AnalysisError> {
    if order.len() != m.n() {
        return Err(AnalysisError::OrderMismatch);
    }
    (0..order.len())
        .map(|j| m.ground().index_of(order.name(j)).ok_or(AnalysisError::OrderMismatch))
        .collect()
}

fn ground_mask(positions: &[usize], mask_in_order: u64) -> u64 {
    let mut out = 0u64;
    for (j, &i) in positions.iter().enumerate() {
        if mask_in_order >> j & 1 == 1 {
            out |= 1 << i;
        }
    }
    out
}

fn signature_guard(m: &Matroid, prefix_len: usize) -> Result<usize, AnalysisError> {
    let n = m.n();
    if prefix_len > n {
        return Err(AnalysisError::PrefixOutOfRange { prefix: prefix_len, n });
    }
    let suffix = n - prefix_len;
    if suffix > MAX_SIGNATURE_SUFFIX {
        return Err(AnalysisError::SuffixTooLarge { suffix, max: MAX_SIGNATURE_SUFFIX });
    }
    Ok(suffix)
}

fn signature_bits(m: &Matroid, pos: &[usize], prefix_len: usize, x: u64, suffix: usize) -> Vec<u64> {
    let x_ground = ground_mask(pos, x);
    let mut bits = vec![0u64; (1usize << suffix).div_ceil(64)];
    for u in 0..1u64 << suffix {
        let s_ground = ground_mask(&pos[prefix_len..], u);
        if m.is_independent(x_ground | s_ground) {
            bits[(u >> 6) as usize] |= 1 << (u & 63);
        }
    }
    bits
}

/// The signature of one prefix subset `x` (mask over the first `prefix_len`
/// positions of `order`) against all suffix subsets.
pub fn minor_signature(
    m: &Matroid,
    order: &ElementOrder,
    prefix_len: usize,
    x: u64,
) -> Result<MinorSignature, AnalysisError> {
    let suffix = signature_guard(m, prefix_len)?;
    if x & !full_mask(prefix_len) != 0 {
        return Err(AnalysisError::NotInPrefix { subset: x, prefix: prefix_len });
    }
    let pos = positions(m, order)?;
    Ok(MinorSignature { suffix_size: suffix, bits: signature_bits(m, &pos, prefix_len, x, suffix) })
}

/// All signatures of independent prefix subsets, each with the sorted list of
/// prefix subsets (masks over `order` positions) that produce it.
pub fn quotient_classes(
    m: &Matroid,
    order: &ElementOrder,
    prefix_len: usize,
) -> Result<Vec<(MinorSignature, Vec<u64>)>, AnalysisError> {
    let suffix = signature_guard(m, prefix_len)?;
    let pos = positions(m, order)?;
    let mut classes: BTreeMap<Vec<u64>, Vec<u64>> = BTreeMap::new();
    for x in 0..1u64 << prefix_len {
        if !m.is_independent(ground_mask(&pos, x)) {
            continue;
        }
        let bits = signature_bits(m, &pos, prefix_len, x, suffix);
        classes.entry(bits).or_default().push(x);
    }
    Ok(classes
        .into_iter()
        .map(|(bits, members)| (MinorSignature { suffix_size: suffix, bits }, members))
        .collect())
}

/// Number of distinct minors at the boundary after `prefix_len` elements.
pub fn count_minors_on_prefix(
    m: &Matroid,
    order: &ElementOrder,
    prefix_len: usize,
) -> Result<usize, AnalysisError> {
    Ok(quotient_classes(m, order, prefix_len)?.len())
}

/// Number of distinct minors at the boundary in which the next element is
/// not a loop; requires `prefix_len < n`.
pub fn count_nonloop_minors(
    m: &Matroid,
    order: &ElementOrder,
    prefix_len: usize,
) -> Result<usize, AnalysisError> {
    if prefix_len >= m.n() {
        return Err(AnalysisError::PrefixOutOfRange { prefix: prefix_len + 1, n: m.n() });
    }
    Ok(quotient_classes(m, order, prefix_len)?
        .iter()
        .filter(|(sig, _)| sig.first_element_is_nonloop())
        .count())
}

/// Per-level facts relating diagram widths to minor counts and connectivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthRow {
    /// Level index: nodes labeled with the element at this order position.
    pub level: usize,
    /// Connectivity `λ` of the prefix before this level.
    pub lambda: usize,
    /// Distinct minors at that boundary.
    pub minor_count: usize,
    /// Distinct minors in which this level's element is not a loop.
    pub nonloop_minor_count: usize,
    pub w_bdd_isets: usize,
    pub w_bdd_bases: usize,
    pub w_zdd_isets: usize,
    pub w_zdd_bases: usize,
    /// The class width bound for this level.
    pub bound: u64,
    pub pass: bool,
}

/// Level-by-level width verification for one matroid under one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthReport {
    pub class: ClassTag,
    pub rows: Vec<WidthRow>,
}

impl WidthReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Builds the four diagrams of `m` in `store` and checks, per level: every
/// width is at most the minor count, the independence-ZDD width equals the
/// non-loop minor count, and widths and minor counts respect the class bound
/// (1 / `λ+1` / `2^λ` for free / uniform / partition-or-nested; the minor
/// count itself for every other class).
pub fn check_width_bounds(m: &Matroid, store: &mut Store) -> Result<WidthReport, AnalysisError> {
    let order = store.order().as_ref().clone();
    let pos = positions(m, &order)?;
    let w_zi = {
        let d = build_dd(m, store, BuildTarget::zdd_independents())?;
        store.level_widths(&d)
    };
    let w_zb = {
        let d = build_dd(m, store, BuildTarget::zdd_bases())?;
        store.level_widths(&d)
    };
    let w_bi = {
        let d = build_dd(m, store, BuildTarget::bdd_independents())?;
        store.level_widths(&d)
    };
    let w_bb = {
        let d = build_dd(m, store, BuildTarget::bdd_bases())?;
        store.level_widths(&d)
    };
    let mut rows = Vec::with_capacity(m.n());
    for level in 0..m.n() {
        let lambda = m.connectivity(ground_mask(&pos, full_mask(level)));
        let minor_count = count_minors_on_prefix(m, &order, level)?;
        let nonloop = count_nonloop_minors(m, &order, level)?;
        let (bound, class_ok) = match m.class() {
            ClassTag::Free => (1u64, minor_count == 1),
            ClassTag::Uniform => ((lambda + 1) as u64, minor_count == lambda + 1),
            ClassTag::Partition | ClassTag::Nested => {
                (1u64 << lambda, (minor_count as u64) <= 1u64 << lambda)
            }
            _ => (minor_count as u64, true),
        };
        let widths = [w_bi[level], w_bb[level], w_zi[level], w_zb[level]];
        let universal = widths.iter().all(|&w| w <= minor_count) && w_zi[level] == nonloop;
        let bounded = widths.iter().all(|&w| w as u64 <= bound);
        rows.push(WidthRow {
            level,
            lambda,
            minor_count,
            nonloop_minor_count: nonloop,
            w_bdd_isets: w_bi[level],
            w_bdd_bases: w_bb[level],
            w_zdd_isets: w_zi[level],
            w_zdd_bases: w_zb[level],
            bound,
            pass: universal && class_ok && bounded,
        });
    }
    Ok(WidthReport { class: m.class(), rows })
}

/// One boundary of a direct sum compared against the contributing block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumLevelRow {
    pub level: usize,
    /// Minor count of the block at the corresponding boundary.
    pub expected: usize,
    /// Minor count of the sum at this boundary.
    pub got: usize,
    pub pass: bool,
}

/// Verification that a direct sum behaves blockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSumReport {
    pub rows: Vec<SumLevelRow>,
    /// `|I(M₁ ⊕ M₂)| = |I(M₁)| · |I(M₂)|`.
    pub isets_count_multiplies: bool,
    /// `|B(M₁ ⊕ M₂)| = |B(M₁)| · |B(M₂)|`.
    pub bases_count_multiplies: bool,
    /// `r(M₁ ⊕ M₂) = r(M₁) + r(M₂)`.
    pub rank_adds: bool,
}

impl DirectSumReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
            && self.isets_count_multiplies
            && self.bases_count_multiplies
            && self.rank_adds
    }
}

/// Checks that under the block-contiguous order of `a.direct_sum(b)`, every
/// boundary of the sum sees exactly the minors of the block it cuts, and that
/// set counts multiply while ranks add.
pub fn direct_sum_minor_check(a: &Matroid, b: &Matroid) -> Result<DirectSumReport, AnalysisError> {
    let sum = a.direct_sum(b)?;
    let sum_order = sum.ground().as_ref().clone();
    let (oa, ob) = (a.ground().as_ref().clone(), b.ground().as_ref().clone());
    let mut rows = Vec::with_capacity(sum.n() + 1);
    for level in 0..=sum.n() {
        let expected = if level <= a.n() {
            count_minors_on_prefix(a, &oa, level)?
        } else {
            count_minors_on_prefix(b, &ob, level - a.n())?
        };
        let got = count_minors_on_prefix(&sum, &sum_order, level)?;
        rows.push(SumLevelRow { level, expected, got, pass: expected == got });
    }

    let count = |m: &Matroid, target: BuildTarget| -> Result<num_bigint::BigUint, AnalysisError> {
        let mut store = Store::new(m.ground().as_ref().clone());
        let d = build_dd(m, &mut store, target)?;
        Ok(store.count(&d))
    };
    let isets_count_multiplies = count(&sum, BuildTarget::zdd_independents())?
        == count(a, BuildTarget::zdd_independents())? * count(b, BuildTarget::zdd_independents())?;
    let bases_count_multiplies = count(&sum, BuildTarget::zdd_bases())?
        == count(a, BuildTarget::zdd_bases())? * count(b, BuildTarget::zdd_bases())?;
    let rank_adds = sum.rank_full() == a.rank_full() + b.rank_full();
    Ok(DirectSumReport { rows, isets_count_multiplies, bases_count_multiplies, rank_adds })
}

/// An optimal element order together with the width it achieves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pathwidth {
    /// The minimum over all orders of the maximum boundary connectivity.
    pub width: usize,
    /// An order achieving it (lexicographically first among optima).
    pub order: ElementOrder,
}

/// Exact matroid pathwidth by dynamic programming over prefix sets:
/// `best(S) = min over e ∉ S of max(λ(S ∪ e), best(S ∪ e))`. Exponential in
/// the ground size; refuses more than `max_n` elements (hard limit
/// [`MAX_PATHWIDTH_GROUND`]).
pub fn pathwidth_exact(m: &Matroid, max_n: usize) -> Result<Pathwidth, AnalysisError> {
    let n = m.n();
    let cap = max_n.min(MAX_PATHWIDTH_GROUND);
    if n > cap {
        return Err(AnalysisError::TooLarge { n, max: cap });
    }
    let full = full_mask(n);
    // greedy basis of every subset, extending the basis of the subset without
    // its highest element: one oracle call per subset
    let mut basis = vec![0u64; 1usize << n];
    for s in 1..1u64 << n {
        let top = 1u64 << (63 - s.leading_zeros());
        let rest = basis[(s & !top) as usize];
        basis[s as usize] = if m.is_independent(rest | top) { rest | top } else { rest };
    }
    let rank = |s: u64| -> usize { basis[s as usize].count_ones() as usize };
    let lambda = |s: u64| -> usize { rank(s) + rank(full & !s) - rank(full) };

    let mut best: Vec<i8> = vec![-1; 1usize << n];
    fn solve(s: u64, n: usize, full: u64, lambda: &dyn Fn(u64) -> usize, best: &mut [i8]) -> usize {
        if s == full {
            return 0;
        }
        if best[s as usize] >= 0 {
            return best[s as usize] as usize;
        }
        let mut value = usize::MAX;
        for e in 0..n {
            if s >> e & 1 == 0 {
                let next = s | 1 << e;
                let cost = lambda(next).max(solve(next, n, full, lambda, best));
                value = value.min(cost);
            }
        }
        best[s as usize] = i8::try_from(value).expect("connectivity fits i8");
        value
    }
    let width = solve(0, n, full, &lambda, &mut best);

    // lexicographic reconstruction: at each prefix take the least element
    // that stays on an optimal completion
    let mut names = Vec::with_capacity(n);
    let mut s = 0u64;
    while s != full {
        for e in 0..n {
            if s >> e & 1 == 1 {
                continue;
            }
            let next = s | 1 << e;
            let tail = if next == full { 0 } else { best[next as usize] as usize };
            let goal = if s == 0 { width } else { best[s as usize] as usize };
            if lambda(next).max(tail) <= goal {
                names.push(m.ground().name(e).to_string());
                s = next;
                break;
            }
        }
    }
    let order = ElementOrder::new(names)?;
    Ok(Pathwidth { width, order })
}

/// The defining order of a matroid whose class theorem says that order is
/// width-optimal: the ground order for free, uniform, partition (blocks
/// contiguous by construction) and nested (shell order) matroids.
pub fn good_order(m: &Matroid) -> Result<ElementOrder, AnalysisError> {
    match m.class() {
        ClassTag::Free | ClassTag::Uniform | ClassTag::Partition | ClassTag::Nested => {
            Ok(m.ground().as_ref().clone())
        }
        other => Err(AnalysisError::UnsupportedClass(other)),
    }
}

/// A laminar matroid and an order keeping boundary connectivity at 2 while
/// the independence ZDD grows a level of width `k + 2`.
///
/// On `2(k+2)` elements, each pair `{e_{2j−1}, e_{2j}}` is capped at 1 and
/// each even prefix `{e_1, …, e_{2j}}` (from `j = 2`) at 2; the order lists
/// the odd elements first. After the odd elements the connectivity is 2,
/// but every odd element blocks a different partner, so the minors at that
/// boundary stay pairwise distinct. From `k = 3` on, the width exceeds the
/// `2^λ` bound that partition and nested matroids obey.
pub fn laminar_counterexample(k: usize) -> Result<(Matroid, ElementOrder), AnalysisError> {
    let blocks = k + 2;
    let n = 2 * blocks;
    if n > crate::build::DEFAULT_MAX_GROUND {
        return Err(AnalysisError::TooLarge { n, max: crate::build::DEFAULT_MAX_GROUND });
    }
    let elements: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let mut constraints: Vec<(Vec<String>, usize)> = Vec::new();
    for j in 1..=blocks {
        constraints.push((vec![format!("e{}", 2 * j - 1), format!("e{}", 2 * j)], 1));
    }
    for j in 2..=blocks {
        constraints.push(((1..=2 * j).map(|i| format!("e{i}")).collect(), 2));
    }
    let m = Matroid::laminar(&elements, &constraints)?;
    let order: Vec<String> = (1..=n)
        .step_by(2)
        .chain((2..=n).step_by(2))
        .map(|i| format!("e{i}"))
        .collect();
    Ok((m, ElementOrder::new(order)?))
}
