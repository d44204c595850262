//! Matroids as independence oracles.
//!
//! A [`Matroid`] is an ordered ground set plus a total predicate on its
//! subsets (masks over ground positions). Class constructors install a
//! predicate that evaluates the defining structure directly — interval
//! counting, bipartite matching, forest checks, GF(2) elimination, explicit
//! membership — and derived matroids (dual, deletion, contraction, direct
//! sum) evaluate through their parents instead of materializing anything.
//! Rank is computed greedily from the predicate, which is exactly what the
//! exchange axiom licenses.

use std::sync::Arc;

use thiserror::Error;

use crate::dd::{DdError, ElementOrder};
use crate::family::{full_mask, IndependenceAxioms, SetFamily, MAX_GROUND};

type Pred = Arc<dyn Fn(u64) -> bool + Send + Sync>;

#[derive(Debug, Error)]
pub enum MatroidError {
    #[error(transparent)]
    Order(#[from] DdError),
    #[error("rank {rank} exceeds ground size {n}")]
    RankTooLarge { rank: usize, n: usize },
    #[error("ground sets overlap on element `{0}`")]
    NameCollision(String),
    #[error("subset uses elements outside the ground set")]
    OutOfGround,
    #[error("sets {a} and {b} overlap without containment; the family is not laminar")]
    NotLaminar { a: String, b: String },
    #[error("duplicate set {0} in the laminar family")]
    DuplicateLaminarSet(String),
    #[error("presentation is not a chain: set {0} is not contained in set {1}")]
    NotAChain(usize, usize),
    #[error("index {0} outside the ground range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error("edge endpoint {endpoint} out of range for {vertices} vertices")]
    BadEdge { endpoint: usize, vertices: usize },
    #[error("matrix row {row} has {got} entries, expected {want}")]
    RaggedMatrix { row: usize, got: usize, want: usize },
    #[error("matrix entry {0} is not 0 or 1")]
    NotABit(u8),
    #[error("more than {MAX_GROUND} matrix rows")]
    TooManyRows,
    #[error("family violates the independence axioms")]
    NotAMatroid { verdict: IndependenceAxioms },
    #[error("contraction basis is not a maximal independent subset of the contracted set")]
    BadContractionBasis,
}

/// How a matroid was obtained; minors, duals, and mixed sums report `Derived`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassTag {
    Free,
    Uniform,
    Partition,
    Nested,
    Transversal,
    Laminar,
    Graphic,
    Gf2,
    Explicit,
    Derived,
}

impl std::fmt::Display for ClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClassTag::Free => "free",
            ClassTag::Uniform => "uniform",
            ClassTag::Partition => "partition",
            ClassTag::Nested => "nested",
            ClassTag::Transversal => "transversal",
            ClassTag::Laminar => "laminar",
            ClassTag::Graphic => "graphic",
            ClassTag::Gf2 => "gf2",
            ClassTag::Explicit => "explicit",
            ClassTag::Derived => "derived",
        })
    }
}

/// A basis together with the order under which it is the greedy maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleBasis {
    /// Mask over the matroid's ground order.
    pub basis: u64,
    /// The comparison order used by the greedy sweep.
    pub order: ElementOrder,
}

#[derive(Clone)]
pub struct Matroid {
    ground: Arc<ElementOrder>,
    class: ClassTag,
    pred: Pred,
    rank: usize,
}

impl std::fmt::Debug for Matroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Matroid")
            .field("class", &self.class)
            .field("rank", &self.rank)
            .field("ground", &self.ground.names())
            .finish()
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl Matroid {
    fn assemble(ground: ElementOrder, class: ClassTag, pred: Pred) -> Self {
        let ground = Arc::new(ground);
        let rank = greedy_rank(&pred, full_mask(ground.len()), ground.len());
        Matroid { ground, class, pred, rank }
    }

    /// Every subset independent.
    pub fn free(n: usize) -> Self {
        Self::free_with(ElementOrder::indexed(n))
    }

    pub fn free_with(ground: ElementOrder) -> Self {
        Self::assemble(ground, ClassTag::Free, Arc::new(|_| true))
    }

    /// Independence is cardinality at most `rank`.
    pub fn uniform(rank: usize, n: usize) -> Result<Self, MatroidError> {
        Self::uniform_with(rank, ElementOrder::indexed(n))
    }

    pub fn uniform_with(rank: usize, ground: ElementOrder) -> Result<Self, MatroidError> {
        if rank > ground.len() {
            return Err(MatroidError::RankTooLarge { rank, n: ground.len() });
        }
        let pred: Pred = Arc::new(move |x: u64| x.count_ones() as usize <= rank);
        Ok(Self::assemble(ground, ClassTag::Uniform, pred))
    }

    /// Direct sum of uniform blocks `(rank, size)`, laid out contiguously as
    /// `e1..eN`, so the ground order is block-contiguous by construction.
    pub fn partition(blocks: &[(usize, usize)]) -> Result<Self, MatroidError> {
        let total: usize = blocks.iter().map(|&(_, sz)| sz).sum();
        let ground = ElementOrder::new(names("e", total))?;
        let mut spans = Vec::with_capacity(blocks.len());
        let mut at = 0usize;
        for &(rank, size) in blocks {
            if rank > size {
                return Err(MatroidError::RankTooLarge { rank, n: size });
            }
            spans.push((full_mask(size) << at, rank));
            at += size;
        }
        let pred: Pred = Arc::new(move |x: u64| {
            spans.iter().all(|&(mask, rank)| (x & mask).count_ones() as usize <= rank)
        });
        Ok(Self::assemble(ground, ClassTag::Partition, pred))
    }

    /// The matroid on `e1..en` whose bases are the `|gale|`-subsets whose
    /// sorted elements are componentwise at most the sorted `gale` indices
    /// (1-based). The ground order `e1 < … < en` is the defining order.
    pub fn nested_from_gale(n: usize, gale: &[usize]) -> Result<Self, MatroidError> {
        let mut g: Vec<usize> = gale.to_vec();
        g.sort_unstable();
        for w in g.windows(2) {
            if w[0] == w[1] {
                return Err(MatroidError::DuplicateIndex(w[0]));
            }
        }
        for &v in &g {
            if v == 0 || v > n {
                return Err(MatroidError::IndexOutOfRange(v, n));
            }
        }
        let ground = ElementOrder::new(names("e", n))?;
        // 0-based positions of the defining basis, ascending
        let g0: Vec<usize> = g.iter().map(|&v| v - 1).collect();
        let r = g0.len();
        let pred: Pred = Arc::new(move |x: u64| {
            let k = x.count_ones() as usize;
            if k > r {
                return false;
            }
            // match the t-th largest chosen element against the t-th largest
            // defining element; a subset extends to a dominated basis exactly
            // when every such pair is ordered
            let mut rest = x;
            for t in 0..k {
                let top = 63 - rest.leading_zeros() as usize;
                if top > g0[r - 1 - t] {
                    return false;
                }
                rest &= !(1u64 << top);
            }
            true
        });
        Ok(Self::assemble(ground, ClassTag::Nested, pred))
    }

    /// Nested matroid from a chain presentation `A1 ⊆ A2 ⊆ … ⊆ Am`.
    ///
    /// `elements` names the full ground set (it may contain elements outside
    /// every `A_i`; those are loops). The constructed ground order lists `A1`
    /// first, then `A2 ∖ A1`, and so on, with the leftover elements last.
    pub fn nested_from_presentation(
        elements: &[String],
        sets: &[Vec<String>],
    ) -> Result<Self, MatroidError> {
        let given = ElementOrder::new(elements.to_vec())?;
        let masks: Vec<u64> = sets
            .iter()
            .map(|s| given.mask_of(s.iter().map(String::as_str)))
            .collect::<Result<_, _>>()?;
        for i in 1..masks.len() {
            if masks[i - 1] & !masks[i] != 0 {
                return Err(MatroidError::NotAChain(i, i + 1));
            }
        }
        // shell order: A1 first, then each difference, then loops
        let mut ordered: Vec<String> = Vec::with_capacity(elements.len());
        let mut placed = 0u64;
        for &m in &masks {
            let fresh = m & !placed;
            for (i, name) in given.names().iter().enumerate() {
                if fresh >> i & 1 == 1 {
                    ordered.push(name.clone());
                }
            }
            placed |= m;
        }
        for (i, name) in given.names().iter().enumerate() {
            if placed >> i & 1 == 0 {
                ordered.push(name.clone());
            }
        }
        let ground = ElementOrder::new(ordered)?;
        let remapped: Vec<u64> = masks
            .iter()
            .map(|&m| given.remap_mask(m, &ground))
            .collect::<Result<_, _>>()?;
        let pred: Pred = Arc::new(move |x: u64| has_transversal(x, &remapped));
        Ok(Self::assemble(ground, ClassTag::Nested, pred))
    }

    /// Transversal matroid: a subset is independent when it has a system of
    /// distinct representatives into the presentation sets.
    pub fn transversal(elements: &[String], sets: &[Vec<String>]) -> Result<Self, MatroidError> {
        let ground = ElementOrder::new(elements.to_vec())?;
        let masks: Vec<u64> = sets
            .iter()
            .map(|s| ground.mask_of(s.iter().map(String::as_str)))
            .collect::<Result<_, _>>()?;
        let pred: Pred = Arc::new(move |x: u64| has_transversal(x, &masks));
        Ok(Self::assemble(ground, ClassTag::Transversal, pred))
    }

    /// Laminar matroid: independence is `|X ∩ A| ≤ c(A)` for every set of a
    /// laminar family. Rejects non-laminar inputs and duplicate sets.
    pub fn laminar(
        elements: &[String],
        constraints: &[(Vec<String>, usize)],
    ) -> Result<Self, MatroidError> {
        let ground = ElementOrder::new(elements.to_vec())?;
        let mut caps: Vec<(u64, usize)> = Vec::with_capacity(constraints.len());
        for (set, cap) in constraints {
            let mask = ground.mask_of(set.iter().map(String::as_str))?;
            if caps.iter().any(|&(m, _)| m == mask) {
                return Err(MatroidError::DuplicateLaminarSet(ground.format_subset(mask)));
            }
            caps.push((mask, *cap));
        }
        for (i, &(a, _)) in caps.iter().enumerate() {
            for &(b, _) in &caps[i + 1..] {
                let meet = a & b;
                if meet != 0 && meet != a && meet != b {
                    return Err(MatroidError::NotLaminar {
                        a: ground.format_subset(a),
                        b: ground.format_subset(b),
                    });
                }
            }
        }
        let pred: Pred = Arc::new(move |x: u64| {
            caps.iter().all(|&(mask, cap)| (x & mask).count_ones() as usize <= cap)
        });
        Ok(Self::assemble(ground, ClassTag::Laminar, pred))
    }

    /// Cycle matroid of a multigraph on `vertices` vertices; edge `i` becomes
    /// element `e{i+1}`. Independent sets are the forests.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Self, MatroidError> {
        for &(u, v) in edges {
            for endpoint in [u, v] {
                if endpoint >= vertices {
                    return Err(MatroidError::BadEdge { endpoint, vertices });
                }
            }
        }
        let ground = ElementOrder::new(names("e", edges.len()))?;
        let edges: Vec<(usize, usize)> = edges.to_vec();
        let pred: Pred = Arc::new(move |x: u64| {
            let mut parent: Vec<usize> = (0..vertices).collect();
            fn find(parent: &mut [usize], mut v: usize) -> usize {
                while parent[v] != v {
                    parent[v] = parent[parent[v]];
                    v = parent[v];
                }
                v
            }
            for (i, &(u, v)) in edges.iter().enumerate() {
                if x >> i & 1 == 1 {
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru == rv {
                        return false;
                    }
                    parent[ru] = rv;
                }
            }
            true
        });
        Ok(Self::assemble(ground, ClassTag::Graphic, pred))
    }

    /// Column matroid of a 0/1 matrix over GF(2); `columns` names the ground
    /// elements, `rows` are the matrix rows in column order.
    pub fn gf2(columns: &[String], rows: &[Vec<u8>]) -> Result<Self, MatroidError> {
        let ground = ElementOrder::new(columns.to_vec())?;
        let n = ground.len();
        if rows.len() > MAX_GROUND {
            return Err(MatroidError::TooManyRows);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatroidError::RaggedMatrix { row: i + 1, got: row.len(), want: n });
            }
            if let Some(&bad) = row.iter().find(|&&b| b > 1) {
                return Err(MatroidError::NotABit(bad));
            }
        }
        // column vectors as bit rows: bit r of cols[j] is entry (r, j)
        let mut cols = vec![0u64; n];
        for (r, row) in rows.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                cols[j] |= (b as u64) << r;
            }
        }
        let pred: Pred = Arc::new(move |x: u64| {
            let mut pivots: Vec<u64> = Vec::new();
            for (j, &col) in cols.iter().enumerate() {
                if x >> j & 1 == 0 {
                    continue;
                }
                let mut v = col;
                for &p in &pivots {
                    // eliminate against the pivot's lowest set bit
                    if v & (p & p.wrapping_neg()) != 0 {
                        v ^= p;
                    }
                }
                if v == 0 {
                    return false;
                }
                pivots.push(v);
            }
            true
        });
        Ok(Self::assemble(ground, ClassTag::Gf2, pred))
    }

    /// Matroid given by its independent sets, validated against the axioms.
    pub fn from_independent_family(
        elements: &[String],
        family: &SetFamily,
    ) -> Result<Self, MatroidError> {
        let ground = ElementOrder::new(elements.to_vec())?;
        debug_assert_eq!(family.ground_size(), ground.len());
        let verdict = family.check_independence_axioms();
        if !verdict.all_pass() {
            return Err(MatroidError::NotAMatroid { verdict });
        }
        let members: Vec<u64> = family.members().to_vec();
        let pred: Pred = Arc::new(move |x: u64| members.binary_search(&x).is_ok());
        Ok(Self::assemble(ground, ClassTag::Explicit, pred))
    }

    pub fn ground(&self) -> &Arc<ElementOrder> {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn class(&self) -> ClassTag {
        self.class
    }

    /// Independence of a subset, given as a mask over the ground order.
    pub fn is_independent(&self, x: u64) -> bool {
        assert_eq!(x & !full_mask(self.n()), 0, "subset outside the ground set");
        (self.pred)(x)
    }

    /// Rank of a subset: size of a greedy maximal independent subset.
    pub fn rank(&self, x: u64) -> usize {
        assert_eq!(x & !full_mask(self.n()), 0, "subset outside the ground set");
        greedy_rank(&self.pred, x, self.n())
    }

    /// Rank of the whole matroid.
    pub fn rank_full(&self) -> usize {
        self.rank
    }

    /// The connectivity value `λ(X) = r(X) + r(E∖X) − r(M)`.
    pub fn connectivity(&self, x: u64) -> usize {
        self.rank(x) + self.rank(full_mask(self.n()) & !x) - self.rank
    }

    pub fn is_loop(&self, element: usize) -> bool {
        !self.is_independent(1 << element)
    }

    /// An element in every basis, i.e. a loop of the dual.
    pub fn is_coloop(&self, element: usize) -> bool {
        self.rank(full_mask(self.n()) & !(1 << element)) < self.rank
    }

    /// Dual matroid: `X` is independent exactly when deleting it keeps the
    /// rank of the whole matroid.
    pub fn dual(&self) -> Matroid {
        let parent = self.clone();
        let full = full_mask(self.n());
        let pred: Pred = Arc::new(move |x: u64| parent.rank(full & !x) == parent.rank_full());
        Matroid {
            ground: Arc::clone(&self.ground),
            class: ClassTag::Derived,
            pred,
            rank: self.n() - self.rank,
        }
    }

    /// Deletes the elements of `x`; the remaining order is induced.
    pub fn delete(&self, x: u64) -> Result<Matroid, MatroidError> {
        self.minor(x, 0)
    }

    /// Contracts the elements of `x`, fixing the greedy basis of the
    /// restriction to `x` under the ground order. Any maximal independent
    /// subset of `x` yields the same minor.
    pub fn contract(&self, x: u64) -> Result<Matroid, MatroidError> {
        self.minor(0, x)
    }

    /// Contraction with an explicitly chosen basis of `M|x`.
    pub fn contract_with_basis(&self, x: u64, basis: u64) -> Result<Matroid, MatroidError> {
        if x & !full_mask(self.n()) != 0 {
            return Err(MatroidError::OutOfGround);
        }
        if basis & !x != 0
            || !self.is_independent(basis)
            || greedy_rank(&self.pred, x, self.n()) != basis.count_ones() as usize
        {
            return Err(MatroidError::BadContractionBasis);
        }
        self.minor_with_contraction_basis(0, x, basis)
    }

    /// The minor `M ∖ delete / contract`. The two masks must be disjoint
    /// subsets of the ground set.
    pub fn minor(&self, delete: u64, contract: u64) -> Result<Matroid, MatroidError> {
        if (delete | contract) & !full_mask(self.n()) != 0 || delete & contract != 0 {
            return Err(MatroidError::OutOfGround);
        }
        let basis = greedy_basis(&self.pred, contract, self.n());
        self.minor_with_contraction_basis(delete, contract, basis)
    }

    fn minor_with_contraction_basis(
        &self,
        delete: u64,
        contract: u64,
        basis: u64,
    ) -> Result<Matroid, MatroidError> {
        let keep = full_mask(self.n()) & !(delete | contract);
        let ground = self.ground.induced(keep);
        let positions: Vec<usize> = (0..self.n()).filter(|i| keep >> i & 1 == 1).collect();
        let parent_pred = Arc::clone(&self.pred);
        let pred: Pred = Arc::new(move |x: u64| {
            let mut lifted = basis;
            for (j, &i) in positions.iter().enumerate() {
                if x >> j & 1 == 1 {
                    lifted |= 1 << i;
                }
            }
            parent_pred(lifted)
        });
        Ok(Matroid::assemble(ground, ClassTag::Derived, pred))
    }

    /// Direct sum; ground names must be disjoint. Sums of free, uniform, and
    /// partition matroids are partition matroids (block-contiguous by
    /// construction), anything else is `Derived`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        for name in other.ground.names() {
            if self.ground.index_of(name).is_some() {
                return Err(MatroidError::NameCollision(name.clone()));
            }
        }
        let mut combined = self.ground.names().to_vec();
        combined.extend_from_slice(other.ground.names());
        let ground = ElementOrder::new(combined)?;
        let class = if matches!(self.class, ClassTag::Free | ClassTag::Uniform | ClassTag::Partition)
            && matches!(other.class, ClassTag::Free | ClassTag::Uniform | ClassTag::Partition)
        {
            ClassTag::Partition
        } else {
            ClassTag::Derived
        };
        let (left, right) = (Arc::clone(&self.pred), Arc::clone(&other.pred));
        let split = self.n();
        let left_mask = full_mask(split);
        let pred: Pred = Arc::new(move |x: u64| left(x & left_mask) && right(x >> split));
        Ok(Matroid::assemble(ground, class, pred))
    }

    /// The greedy-maximal basis with respect to `order`: sweep from the last
    /// element of `order` down, keeping everything that stays independent.
    /// The result dominates every basis componentwise in `order`.
    pub fn gale_basis(&self, order: &ElementOrder) -> Result<GaleBasis, MatroidError> {
        if order.len() != self.n() {
            return Err(MatroidError::OutOfGround);
        }
        let mut basis_in_order = 0u64;
        let mut ground_mask = 0u64;
        for pos in (0..order.len()).rev() {
            let candidate_order = basis_in_order | 1 << pos;
            let candidate_ground = order.remap_mask(candidate_order, &self.ground)?;
            if self.is_independent(candidate_ground) {
                basis_in_order = candidate_order;
                ground_mask = candidate_ground;
            }
        }
        Ok(GaleBasis { basis: ground_mask, order: order.clone() })
    }

    /// All independent sets, as masks over the ground order. Exponential.
    pub fn independent_family(&self) -> SetFamily {
        let n = self.n();
        let members = (0u64..1 << n).filter(|&x| (self.pred)(x));
        SetFamily::new(n, members).expect("masks stay in ground")
    }

    /// All bases, as masks over the ground order. Exponential.
    pub fn basis_family(&self) -> SetFamily {
        let n = self.n();
        let r = self.rank as u32;
        let members = (0u64..1 << n).filter(|&x| x.count_ones() == r && (self.pred)(x));
        SetFamily::new(n, members).expect("masks stay in ground")
    }
}

/// Greedy maximal independent subset of `within`, sweeping positions upward.
fn greedy_basis(pred: &Pred, within: u64, n: usize) -> u64 {
    let mut basis = 0u64;
    for i in 0..n {
        if within >> i & 1 == 1 && pred(basis | 1 << i) {
            basis |= 1 << i;
        }
    }
    basis
}

fn greedy_rank(pred: &Pred, within: u64, n: usize) -> usize {
    greedy_basis(pred, within, n).count_ones() as usize
}

/// Does `x` have a system of distinct representatives into `sets`?
/// Augmenting-path bipartite matching, elements on the left.
fn has_transversal(x: u64, sets: &[u64]) -> bool {
    let elements: Vec<usize> = (0..64).filter(|&i| x >> i & 1 == 1).collect();
    if elements.len() > sets.len() {
        return false;
    }
    // matched_to[s] = index into `elements` currently represented by set s
    let mut matched_to: Vec<Option<usize>> = vec![None; sets.len()];
    fn augment(
        e: usize,
        elements: &[usize],
        sets: &[u64],
        matched_to: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for (s, &mask) in sets.iter().enumerate() {
            if visited[s] || mask >> elements[e] & 1 == 0 {
                continue;
            }
            visited[s] = true;
            let free = match matched_to[s] {
                None => true,
                Some(other) => augment(other, elements, sets, matched_to, visited),
            };
            if free {
                matched_to[s] = Some(e);
                return true;
            }
        }
        false
    }
    for e in 0..elements.len() {
        let mut visited = vec![false; sets.len()];
        if !augment(e, &elements, sets, &mut matched_to, &mut visited) {
            return false;
        }
    }
    true
}
