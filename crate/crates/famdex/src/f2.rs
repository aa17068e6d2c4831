//! Exact F2 linear algebra on the spaces V, Z, V'_D together with the
//! interval characterization of the subspace family and its scalar
//! invariants.
//!
//! Vectors of V are finite sets of basis indices i >= 1, stored as bit
//! masks (bit i-1 represents the i-th basis vector). Vectors of Z use
//! indices i >= 0. For the quotient space V'_D (D odd) each coset is stored
//! by its unique representative whose support omits index D; that
//! representative assignment is linear, so V'_D is modelled concretely as
//! the span of indices 1..D-1.

use serde::Serialize;
use thiserror::Error;

/// Hard cap on basis indices so supports fit in machine words.
pub const MAX_BOUND: u32 = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum F2Error {
    #[error("subspace is not a member of the interval family")]
    NotIntervalFamily,
    #[error("vector has nonzero invariant, not in the zero-level set")]
    NotInZeroV,
    #[error("operands live in different ambient spaces")]
    AmbientMismatch,
    #[error("index {0} outside the allowed range")]
    BadIndex(u32),
    #[error("bound {0} exceeds the supported cap {MAX_BOUND}")]
    BoundTooLarge(u32),
}

/// Ambient space of a vector or subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Ambient {
    /// V with basis e_1, e_2, ...
    V,
    /// Z with basis g_0, g_1, ...
    Z,
    /// V'_D = V_D / <e_1 + e_3 + ... + e_D> for odd D, modelled on indices 1..D-1.
    Vprime(u32),
}

/// Vector of V or V'_D as a support mask; bit i-1 holds the coefficient of e_i.
pub type Mask = u64;

/// e_i as a mask.
pub fn e(i: u32) -> Mask {
    assert!((1..=MAX_BOUND).contains(&i));
    1u64 << (i - 1)
}

/// e_a + e_{a+1} + ... + e_b.
pub fn e_interval(a: u32, b: u32) -> Mask {
    assert!(1 <= a && a <= b && b <= MAX_BOUND);
    let hi = if b == 64 { !0u64 } else { (1u64 << b) - 1 };
    hi & !((1u64 << (a - 1)) - 1)
}

/// e_1 + e_3 + ... + e_D for odd D.
pub fn eta(d: u32) -> Mask {
    assert!(d % 2 == 1);
    let mut m = 0;
    let mut i = 1;
    while i <= d {
        m |= e(i);
        i += 2;
    }
    m
}

/// All indices of V_D.
pub fn full_mask(d: u32) -> Mask {
    if d == 0 {
        0
    } else {
        e_interval(1, d)
    }
}

/// Odd-index part of V_D.
pub fn odd_mask(d: u32) -> Mask {
    let mut m = 0;
    let mut i = 1;
    while i <= d {
        m |= e(i);
        i += 2;
    }
    m
}

/// Even-index part of V_D.
pub fn even_mask(d: u32) -> Mask {
    full_mask(d) & !odd_mask(d)
}

/// Support as an ascending list of 1-based indices.
pub fn support(m: Mask) -> Vec<u32> {
    (0..64).filter(|b| m >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Largest support index, or 0 for the zero vector.
pub fn max_index(m: Mask) -> u32 {
    if m == 0 {
        0
    } else {
        64 - m.leading_zeros()
    }
}

/// Canonical coset representative in V'_D: the member whose support omits D.
pub fn vprime_rep(m: Mask, d: u32) -> Mask {
    debug_assert!(d % 2 == 1);
    if m & e(d) != 0 {
        m ^ eta(d)
    } else {
        m
    }
}

/// The symplectic pairing (e_i, e_j) = 1 iff |i - j| = 1, extended bilinearly.
/// On V'_D representatives this computes the induced nondegenerate form.
pub fn symplectic(x: Mask, y: Mask) -> u8 {
    (((x & (y << 1)).count_ones() + (x & (y >> 1)).count_ones()) % 2) as u8
}

/// A subspace in canonical reduced echelon form. Rows have strictly
/// increasing pivots (least set bit) and each pivot is absent from every
/// other row, so equal subspaces have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    rows: Vec<Mask>,
}

impl Subspace {
    pub fn zero() -> Self {
        Subspace { rows: vec![] }
    }

    pub fn from_vectors<I: IntoIterator<Item = Mask>>(vs: I) -> Self {
        let mut s = Self::zero();
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn span_of(vs: &[Mask]) -> Self {
        Self::from_vectors(vs.iter().copied())
    }

    /// Reduce a vector modulo the subspace; zero iff the vector is a member.
    pub fn reduce(&self, mut v: Mask) -> Mask {
        for &row in &self.rows {
            let pivot = row & row.wrapping_neg();
            if v & pivot != 0 {
                v ^= row;
            }
        }
        v
    }

    pub fn contains(&self, v: Mask) -> bool {
        self.reduce(v) == 0
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|&r| self.contains(r))
    }

    /// Insert a vector, keeping canonical form. Returns true if dim grew.
    pub fn insert(&mut self, v: Mask) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let pivot = v & v.wrapping_neg();
        // clear the new pivot from existing rows
        for row in &mut self.rows {
            if *row & pivot != 0 {
                *row ^= v;
            }
        }
        let pos = self
            .rows
            .iter()
            .position(|r| (r & r.wrapping_neg()) > pivot)
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, v);
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Mask] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.trailing_zeros() + 1).collect()
    }

    /// Largest index appearing in any row, 0 for the zero space.
    pub fn max_index(&self) -> u32 {
        self.rows.iter().map(|&r| max_index(r)).max().unwrap_or(0)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for &r in &other.rows {
            s.insert(r);
        }
        s
    }

    /// Intersection with the set of masks supported inside `space_mask`.
    /// Valid when `space_mask` is a coordinate subspace (union of axes).
    pub fn intersect_coordinate(&self, space_mask: Mask) -> Subspace {
        // eliminate coordinates outside space_mask from the row space
        let mut work: Vec<Mask> = self.rows.clone();
        let mut result = Subspace::zero();
        for bit in (0..64).rev() {
            let b = 1u64 << bit;
            if space_mask & b != 0 {
                continue;
            }
            if let Some(idx) = work.iter().position(|&r| r & b != 0) {
                let pivot_row = work.remove(idx);
                for r in &mut work {
                    if *r & b != 0 {
                        *r ^= pivot_row;
                    }
                }
            }
        }
        for r in work {
            debug_assert!(r & !space_mask == 0);
            result.insert(r);
        }
        result
    }

    /// All elements, in ascending mask order. Exponential in dim; for desk
    /// scale dims only.
    pub fn elements(&self) -> Vec<Mask> {
        let k = self.rows.len();
        assert!(k <= 24, "subspace too large to enumerate");
        let mut out = Vec::with_capacity(1 << k);
        for bits in 0..(1u32 << k) {
            let mut v = 0;
            for (i, &r) in self.rows.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    v ^= r;
                }
            }
            out.push(v);
        }
        out.sort_unstable();
        out
    }

    /// Serialize as ascending index lists in echelon order.
    pub fn to_index_lists(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(|&r| support(r)).collect()
    }
}

/// The unique system of intervals attached to a member of the family.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IntervalBasis {
    /// Pairs (a_k, b_k), sorted lexicographically.
    pub intervals: Vec<(u32, u32)>,
}

impl IntervalBasis {
    pub fn spanning_vectors(&self) -> Vec<Mask> {
        self.intervals.iter().map(|&(a, b)| e_interval(a, b)).collect()
    }

    pub fn span(&self) -> Subspace {
        Subspace::from_vectors(self.spanning_vectors().into_iter())
    }

    /// Multiplicity function: how many intervals contain index j.
    pub fn multiplicity(&self, j: u32) -> u32 {
        self.intervals
            .iter()
            .filter(|&&(a, b)| a <= j && j <= b)
            .count() as u32
    }
}

/// Conditions the interval system of a family member must satisfy:
/// endpoint parity per interval, odd-offset interior indices covered by a
/// strictly nested interval, and pairwise separation-or-strict-nesting.
pub fn valid_interval_system(iv: &[(u32, u32)]) -> bool {
    for &(a, b) in iv {
        if a > b || a == 0 {
            return false;
        }
        if (a + b) % 2 != 0 {
            return false; // a and b must agree mod 2
        }
    }
    for (k, &(a, b)) in iv.iter().enumerate() {
        // interior odd-offset indices must be covered strictly inside
        let mut c = a + 1;
        while c < b {
            if !iv
                .iter()
                .any(|&(a2, b2)| a < a2 && a2 <= c && c <= b2 && b2 < b)
            {
                return false;
            }
            c += 2;
        }
        for (k2, &(a2, b2)) in iv.iter().enumerate() {
            if k2 <= k {
                continue;
            }
            let separated = a2 >= b + 2 || a >= b2 + 2;
            let nested = (a < a2 && b2 < b) || (a2 < a && b < b2);
            if !(separated || nested) {
                return false;
            }
            if (a, b) == (a2, b2) {
                return false;
            }
        }
    }
    true
}

/// Recover the unique interval system of a family member, doubling as the
/// membership test. Pivots of the echelon basis are the left endpoints;
/// right endpoints are searched among indices b with e_[a,b] in E, pruned
/// by the pairwise conditions.
pub fn interval_basis_of(e_sub: &Subspace) -> Result<IntervalBasis, F2Error> {
    let r = e_sub.dim();
    if r == 0 {
        return Ok(IntervalBasis { intervals: vec![] });
    }
    let pivots = e_sub.pivots();
    let maxb = e_sub.max_index();
    // candidate right endpoints per pivot
    let mut candidates: Vec<Vec<u32>> = Vec::with_capacity(r);
    for &a in &pivots {
        let mut c = vec![];
        let mut b = a;
        while b <= maxb {
            if e_sub.contains(e_interval(a, b)) {
                c.push(b);
            }
            b += 2;
        }
        if c.is_empty() {
            return Err(F2Error::NotIntervalFamily);
        }
        candidates.push(c);
    }
    let mut chosen: Vec<(u32, u32)> = Vec::with_capacity(r);
    if search_intervals(&pivots, &candidates, &mut chosen, 0) {
        chosen.sort_unstable();
        let basis = IntervalBasis { intervals: chosen };
        debug_assert_eq!(&basis.span(), e_sub);
        Ok(basis)
    } else {
        Err(F2Error::NotIntervalFamily)
    }
}

fn search_intervals(
    pivots: &[u32],
    candidates: &[Vec<u32>],
    chosen: &mut Vec<(u32, u32)>,
    k: usize,
) -> bool {
    if k == pivots.len() {
        return valid_interval_system(chosen);
    }
    let a = pivots[k];
    for &b in &candidates[k] {
        // pairwise check against intervals already chosen
        let ok = chosen.iter().all(|&(a2, b2)| {
            let separated = a >= b2 + 2 || a2 >= b + 2;
            let nested = (a2 < a && b < b2) || (a < a2 && b2 < b);
            separated || nested
        });
        if !ok {
            continue;
        }
        chosen.push((a, b));
        if search_intervals(pivots, candidates, chosen, k + 1) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Enumerate every valid interval system with endpoints at most `maxb`.
/// This is the definitional oracle for the family; the inductive
/// construction is checked against the subspaces it spans. The recursion
/// prunes only on the pairwise condition (monotone under extension); the
/// interior-coverage condition is filtered at the end.
pub fn enumerate_interval_systems(maxb: u32) -> Vec<IntervalBasis> {
    enumerate_interval_systems_raw(maxb)
        .into_iter()
        .filter(|sys| valid_interval_system(sys))
        .map(|intervals| IntervalBasis { intervals })
        .collect()
}

/// Distinct subspaces spanned by the valid interval systems within bound.
pub fn enumerate_family_subspaces(maxb: u32) -> Vec<Subspace> {
    let mut seen = std::collections::BTreeSet::new();
    for sys in enumerate_interval_systems(maxb) {
        seen.insert(sys.span());
    }
    seen.into_iter().collect()
}

/// All pairwise-compatible interval collections; interior coverage not yet checked.
fn enumerate_interval_systems_raw(maxb: u32) -> Vec<Vec<(u32, u32)>> {
    let mut all: Vec<(u32, u32)> = vec![];
    for a in 1..=maxb {
        let mut b = a;
        while b <= maxb {
            all.push((a, b));
            b += 2;
        }
    }
    let mut out = vec![];
    let mut cur: Vec<(u32, u32)> = vec![];
    fn pair_ok(x: (u32, u32), y: (u32, u32)) -> bool {
        let (a, b) = x;
        let (a2, b2) = y;
        let separated = a >= b2 + 2 || a2 >= b + 2;
        let nested = (a2 < a && b < b2) || (a < a2 && b2 < b);
        (separated || nested) && x != y
    }
    fn rec(
        all: &[(u32, u32)],
        start: usize,
        cur: &mut Vec<(u32, u32)>,
        out: &mut Vec<Vec<(u32, u32)>>,
    ) {
        out.push(cur.clone());
        for i in start..all.len() {
            if cur.iter().all(|&c| pair_ok(c, all[i])) {
                cur.push(all[i]);
                rec(all, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    rec(&all, 0, &mut cur, &mut out);
    out
}

/// Count all interval systems spanning E, for uniqueness audits.
pub fn count_interval_systems_spanning(e_sub: &Subspace, maxb: u32) -> usize {
    enumerate_interval_systems_raw(maxb)
        .into_iter()
        .filter(|sys| valid_interval_system(sys))
        .filter(|sys| {
            sys.len() == e_sub.dim()
                && sys.iter().all(|&(a, b)| e_sub.contains(e_interval(a, b)))
        })
        .count()
}

/// Triangular-number parity used by the marking vector.
fn triangle_parity(f: u32) -> u32 {
    (f * (f + 1) / 2) % 2
}

/// The marking vector of a family member: index j is set when the number of
/// intervals containing j has triangular number of odd parity.
pub fn epsilon(e_sub: &Subspace) -> Result<Mask, F2Error> {
    let basis = interval_basis_of(e_sub)?;
    Ok(epsilon_of_basis(&basis))
}

pub fn epsilon_of_basis(basis: &IntervalBasis) -> Mask {
    let maxb = basis.intervals.iter().map(|&(_, b)| b).max().unwrap_or(0);
    let mut m = 0;
    for j in 1..=maxb {
        if triangle_parity(basis.multiplicity(j)) == 1 {
            m |= e(j);
        }
    }
    m
}

/// The unique decomposition of a vector into maximal runs of consecutive
/// indices; consecutive runs are separated by at least two.
pub fn gap_decompose(x: Mask) -> Vec<(u32, u32)> {
    let mut out = vec![];
    let mut m = x;
    while m != 0 {
        let a = m.trailing_zeros() + 1;
        let mut b = a;
        while b < 64 && m >> b & 1 == 1 {
            b += 1;
        }
        out.push((a, b));
        m &= !(e_interval(a, b));
    }
    out
}

/// Signed count over the runs whose endpoints have opposite parity, each
/// weighted by the parity sign of its left endpoint.
pub fn u_invariant(x: Mask) -> i64 {
    let mut total = 0i64;
    for (a, b) in gap_decompose(x) {
        if (a + b) % 2 == 1 {
            total += if a % 2 == 1 { -1 } else { 1 };
        }
    }
    total
}

/// All vectors of V_D in the zero level set of the invariant.
pub fn zero_v_set(d: u32) -> Vec<Mask> {
    assert!(d <= 24, "enumeration bound");
    (0..(1u64 << d)).filter(|&m| u_invariant(m) == 0).collect()
}

/// The fixed-point-free involution x -> x + (e_1 + e_3 + ... + e_D) on the
/// zero level set, for odd D.
pub fn theta(x: Mask, d: u32) -> Result<Mask, F2Error> {
    assert!(d % 2 == 1, "involution defined for odd bounds");
    if u_invariant(x) != 0 {
        return Err(F2Error::NotInZeroV);
    }
    Ok(x ^ eta(d))
}

/// Mask over the Z basis; bit i holds the coefficient of g_i.
pub type ZMask = u128;

/// The linear isomorphism onto the sum-zero subspace of Z: e_i maps to
/// g_{i-1} + g_i.
pub fn xi(x: Mask) -> ZMask {
    let x = x as u128;
    x ^ (x << 1)
}

/// Count of even support indices minus count of odd support indices in Z.
pub fn u_tilde(z: ZMask) -> i64 {
    const EVEN: u128 = {
        let mut m = 0u128;
        let mut i = 0;
        while i < 128 {
            m |= 1u128 << i;
            i += 2;
        }
        m
    };
    let even = (z & EVEN).count_ones() as i64;
    let odd = (z & !EVEN).count_ones() as i64;
    even - odd
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_is_canonical() {
        let a = Subspace::from_vectors([e(1) ^ e(2) ^ e(3), e(2)]);
        let b = Subspace::from_vectors([e(2), e(1) ^ e(3), e(1) ^ e(2) ^ e(3)]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.pivots(), vec![1, 2]);
    }

    #[test]
    fn interval_basis_examples() {
        // zero subspace -> empty system
        assert_eq!(
            interval_basis_of(&Subspace::zero()).unwrap().intervals,
            vec![]
        );
        // span{e1+e2+e3, e2} -> [(1,3),(2,2)]
        let e_sub = Subspace::from_vectors([e(1) ^ e(2) ^ e(3), e(2)]);
        assert_eq!(
            interval_basis_of(&e_sub).unwrap().intervals,
            vec![(1, 3), (2, 2)]
        );
        // span{e1+e2} violates endpoint parity
        let bad = Subspace::from_vectors([e(1) ^ e(2)]);
        assert_eq!(interval_basis_of(&bad), Err(F2Error::NotIntervalFamily));
        // a lone [1,3] fails the interior coverage condition
        let lone = Subspace::from_vectors([e(1) ^ e(2) ^ e(3)]);
        assert_eq!(interval_basis_of(&lone), Err(F2Error::NotIntervalFamily));
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&Subspace::zero()).unwrap(), 0);
        let e_sub = Subspace::from_vectors([e(1) ^ e(2) ^ e(3), e(2)]);
        assert_eq!(epsilon(&e_sub).unwrap(), e(1) ^ e(2) ^ e(3));
        let single = Subspace::from_vectors([e(2)]);
        assert_eq!(epsilon(&single).unwrap(), e(2));
    }

    #[test]
    fn gap_decomposition_examples() {
        assert_eq!(gap_decompose(0), vec![]);
        assert_eq!(gap_decompose(e(1) ^ e(2) ^ e(4)), vec![(1, 2), (4, 4)]);
        assert_eq!(gap_decompose(e(1) ^ e(3)), vec![(1, 1), (3, 3)]);
    }

    #[test]
    fn u_invariant_examples() {
        assert_eq!(u_invariant(0), 0);
        assert_eq!(u_invariant(e(1) ^ e(2)), -1);
        assert_eq!(u_invariant(e(1)), 0);
    }

    #[test]
    fn zero_set_counts() {
        assert_eq!(zero_v_set(0), vec![0]);
        let z2 = zero_v_set(2);
        assert_eq!(z2, vec![0, e(1), e(2)]);
        assert_eq!(zero_v_set(5).len(), 20);
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(0, 1).unwrap(), e(1));
        assert_eq!(theta(e(1), 1).unwrap(), 0);
        assert_eq!(theta(e(2), 3).unwrap(), e(1) ^ e(2) ^ e(3));
        assert_eq!(theta(e(1) ^ e(2), 3), Err(F2Error::NotInZeroV));
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi(e(1)), 0b11); // g_0 + g_1
        assert_eq!(xi(0), 0);
        assert_eq!(xi(e(1) ^ e(2)), 0b101); // g_0 + g_2
        assert_eq!(u_tilde(xi(e(1) ^ e(2))), 2);
        assert_eq!(u_tilde(0), 0);
        assert_eq!(u_tilde(0b11), 0);
    }

    #[test]
    fn symplectic_examples() {
        assert_eq!(symplectic(e(1), e(2)), 1);
        assert_eq!(symplectic(e(1), e(3)), 0);
        for m in 0..64u64 {
            assert_eq!(symplectic(m, m), 0);
        }
    }

    #[test]
    fn vprime_rep_is_linear() {
        let d = 5;
        for x in 0..(1u64 << d) {
            for y in 0..(1u64 << d) {
                assert_eq!(
                    vprime_rep(x, d) ^ vprime_rep(y, d),
                    vprime_rep(x ^ y, d)
                );
            }
        }
    }

    #[test]
    fn induced_form_matches_on_representatives() {
        let d = 5;
        for x in 0..(1u64 << d) {
            for y in 0..(1u64 << d) {
                assert_eq!(
                    symplectic(vprime_rep(x, d), vprime_rep(y, d)),
                    symplectic(x, y)
                );
            }
        }
    }

    #[test]
    fn coordinate_intersection() {
        let s = Subspace::from_vectors([e(1) ^ e(2), e(3)]);
        let odd = s.intersect_coordinate(odd_mask(4));
        assert_eq!(odd, Subspace::from_vectors([e(3)]));
    }
}
