//! Explicit set families over a small ground set.
//!
//! A family is a deduplicated list of subsets, each subset a bit mask over
//! element indices `0..n`. Members are kept sorted by numeric value, so two
//! families are equal exactly when their representations are equal, and
//! iteration order is canonical everywhere (witness selection, diagram
//! construction, reports).

use thiserror::Error;

/// Largest ground set a `u64`-mask family can hold.
pub const MAX_GROUND: usize = 63;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("ground set of size {0} exceeds the supported maximum of {MAX_GROUND}")]
    GroundTooLarge(usize),
    #[error("member {member:#b} uses elements outside a ground set of size {ground}")]
    MemberOutOfRange { member: u64, ground: usize },
}

/// A family of subsets of `{0, .., ground_size-1}` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground_size: usize,
    members: Vec<u64>,
}

/// Outcome of a single axiom check; a failure carries the sets that violate it.
///
/// Witness layout by axiom:
/// * (I1)/(B1): empty witness — the required member is missing entirely.
/// * (I2): `[superset, subset]` — `superset` is in the family, `subset` is not.
/// * (I3): `[smaller, larger]` — no element of `larger ∖ smaller` extends `smaller`.
/// * (B2): `[b1, b2, x]` — no exchange for `x ∈ b1 ∖ b2` (singleton mask `x`).
/// * (B2*): `[b1, b2, x]` — no `y ∈ b1 ∖ b2` with `(b1 ∖ y) ∪ x` in the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomCheck {
    Pass,
    Fail { witness: Vec<u64> },
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomCheck::Pass)
    }
}

/// Verdict of [`SetFamily::check_independence_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceAxioms {
    /// The empty set is a member.
    pub i1: AxiomCheck,
    /// Downward closure.
    pub i2: AxiomCheck,
    /// Augmentation between members of different cardinality.
    pub i3: AxiomCheck,
}

impl IndependenceAxioms {
    pub fn all_pass(&self) -> bool {
        self.i1.passed() && self.i2.passed() && self.i3.passed()
    }
}

/// Verdict of [`SetFamily::check_basis_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisAxioms {
    /// Nonemptiness.
    pub b1: AxiomCheck,
    /// Exchange: for `x ∈ b1 ∖ b2` some `y ∈ b2 ∖ b1` has `(b1 ∖ x) ∪ y` a member.
    pub b2: AxiomCheck,
    /// Dual exchange: for `x ∈ b2 ∖ b1` some `y ∈ b1 ∖ b2` has `(b1 ∖ y) ∪ x` a member.
    pub b2_star: AxiomCheck,
}

impl BasisAxioms {
    pub fn all_pass(&self) -> bool {
        self.b1.passed() && self.b2.passed() && self.b2_star.passed()
    }
}

impl SetFamily {
    /// Builds a family, deduplicating and sorting the members.
    pub fn new(ground_size: usize, members: impl IntoIterator<Item = u64>) -> Result<Self, FamilyError> {
        if ground_size > MAX_GROUND {
            return Err(FamilyError::GroundTooLarge(ground_size));
        }
        let full = full_mask(ground_size);
        let mut members: Vec<u64> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m & !full != 0) {
            return Err(FamilyError::MemberOutOfRange { member: bad, ground: ground_size });
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { ground_size, members })
    }

    /// The family with no members at all.
    pub fn empty(ground_size: usize) -> Self {
        SetFamily { ground_size, members: Vec::new() }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, subset: u64) -> bool {
        self.members.binary_search(&subset).is_ok()
    }

    /// True when no member contains another.
    pub fn is_clutter(&self) -> bool {
        self.find_containing_pair().is_none()
    }

    /// First pair `(contained, container)` of distinct members with
    /// `contained ⊂ container`, in canonical member order.
    pub fn find_containing_pair(&self) -> Option<(u64, u64)> {
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i + 1..] {
                // members are sorted, so a < b numerically; only a ⊂ b is possible
                if a & !b == 0 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// All subsets of all members.
    pub fn downward_closure(&self) -> SetFamily {
        let mut out: Vec<u64> = Vec::new();
        for &m in &self.members {
            // standard submask walk, including m itself and the empty set
            let mut s = m;
            loop {
                out.push(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & m;
            }
        }
        SetFamily::new(self.ground_size, out).expect("closure stays in ground")
    }

    /// The family of complements `{E ∖ S : S ∈ F}`.
    pub fn complement_family(&self) -> SetFamily {
        let full = full_mask(self.ground_size);
        SetFamily::new(self.ground_size, self.members.iter().map(|&m| full & !m))
            .expect("complement stays in ground")
    }

    /// Exhaustively checks (I1), (I2), (I3); quadratic in the family size.
    pub fn check_independence_axioms(&self) -> IndependenceAxioms {
        let i1 = if self.contains(0) {
            AxiomCheck::Pass
        } else {
            AxiomCheck::Fail { witness: vec![] }
        };

        let mut i2 = AxiomCheck::Pass;
        'outer_i2: for &m in &self.members {
            let mut bits = m;
            while bits != 0 {
                let e = bits & bits.wrapping_neg();
                bits &= !e;
                if !self.contains(m & !e) {
                    i2 = AxiomCheck::Fail { witness: vec![m, m & !e] };
                    break 'outer_i2;
                }
            }
        }

        let mut i3 = AxiomCheck::Pass;
        'outer_i3: for &small in &self.members {
            for &large in &self.members {
                if small.count_ones() >= large.count_ones() {
                    continue;
                }
                let mut candidates = large & !small;
                let mut extended = false;
                while candidates != 0 {
                    let e = candidates & candidates.wrapping_neg();
                    candidates &= !e;
                    if self.contains(small | e) {
                        extended = true;
                        break;
                    }
                }
                if !extended {
                    i3 = AxiomCheck::Fail { witness: vec![small, large] };
                    break 'outer_i3;
                }
            }
        }

        IndependenceAxioms { i1, i2, i3 }
    }

    /// Exhaustively checks (B1), (B2), (B2*); quadratic in the family size.
    pub fn check_basis_axioms(&self) -> BasisAxioms {
        let b1 = if self.members.is_empty() {
            AxiomCheck::Fail { witness: vec![] }
        } else {
            AxiomCheck::Pass
        };

        let mut b2 = AxiomCheck::Pass;
        'outer_b2: for &b1_set in &self.members {
            for &b2_set in &self.members {
                let mut xs = b1_set & !b2_set;
                while xs != 0 {
                    let x = xs & xs.wrapping_neg();
                    xs &= !x;
                    let mut ys = b2_set & !b1_set;
                    let mut ok = false;
                    while ys != 0 {
                        let y = ys & ys.wrapping_neg();
                        ys &= !y;
                        if self.contains((b1_set & !x) | y) {
                            ok = true;
                            break;
                        }
                    }
                    if !ok {
                        b2 = AxiomCheck::Fail { witness: vec![b1_set, b2_set, x] };
                        break 'outer_b2;
                    }
                }
            }
        }

        let mut b2_star = AxiomCheck::Pass;
        'outer_b2s: for &b1_set in &self.members {
            for &b2_set in &self.members {
                let mut xs = b2_set & !b1_set;
                while xs != 0 {
                    let x = xs & xs.wrapping_neg();
                    xs &= !x;
                    let mut ys = b1_set & !b2_set;
                    let mut ok = false;
                    while ys != 0 {
                        let y = ys & ys.wrapping_neg();
                        ys &= !y;
                        if self.contains((b1_set & !y) | x) {
                            ok = true;
                            break;
                        }
                    }
                    if !ok {
                        b2_star = AxiomCheck::Fail { witness: vec![b1_set, b2_set, x] };
                        break 'outer_b2s;
                    }
                }
            }
        }

        BasisAxioms { b1, b2, b2_star }
    }
}

/// Mask with the low `n` bits set.
pub fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= MAX_GROUND);
    (1u64 << n) - 1
}
