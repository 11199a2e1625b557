//! The abstract tightness framework over F2: a vector space V, a subspace
//! U, and a designated set P ∋ 0 such that every coset of V/U contains at
//! most one element of P. Tight and strongly tight sets, the Σ invariant as
//! a sum of unique P-representatives over the generated subgroup of V/U,
//! and exhaustive verification of the two structure theorems (Σ = 0 for
//! almost-strongly-tight sets iff strongly tight; the subset ladder).
//!
//! Elements of V are bit masks; dim V is capped at 12 so everything stays
//! exhaustively enumerable.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AbstractError {
    #[error("dim {0} out of range (1..=12)")]
    DimOutOfRange(usize),
    #[error("0 must be an element of P")]
    ZeroNotInP,
    #[error("coset uniqueness violated: {0:#b} and {1:#b} lie in the same coset of U")]
    CosetUniqueness(u16, u16),
    #[error("element {0:#b} outside V")]
    OutOfRange(u16),
    #[error("set is not tight: {0:#b} + U contains no element of P")]
    NotTight(u16),
}

/// The triple (V, U, P).
#[derive(Clone, Debug)]
pub struct TightContext {
    dim: usize,
    u_basis: Vec<u16>,
    p: Vec<u16>,
    /// coset representative (reduced mod U) -> the P element in that coset
    reps: BTreeMap<u16, u16>,
    spans: bool,
}

fn reduce_basis(mut vectors: Vec<u16>) -> Vec<u16> {
    let mut basis: Vec<u16> = vec![];
    vectors.retain(|&v| v != 0);
    for mut v in vectors {
        for &b in &basis {
            let pivot = 15 - b.leading_zeros() as u16;
            if (v >> pivot) & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by_key(|x| std::cmp::Reverse(*x));
        }
    }
    // full back-substitution for a canonical reduced basis
    let snapshot = basis.clone();
    basis.clear();
    for v in snapshot {
        let mut r = v;
        for &b in &basis {
            let pivot = 15 - b.leading_zeros() as u16;
            if (r >> pivot) & 1 == 1 {
                r ^= b;
            }
        }
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by_key(|x| std::cmp::Reverse(*x));
        }
    }
    basis
}

fn reduce_by(basis: &[u16], mut v: u16) -> u16 {
    for &b in basis {
        let pivot = 15 - b.leading_zeros() as u16;
        if (v >> pivot) & 1 == 1 {
            v ^= b;
        }
    }
    v
}

/// Subspace spanned by a slice, enumerated (2^rank elements, sorted).
pub fn span(vectors: &[u16]) -> Vec<u16> {
    let basis = reduce_basis(vectors.to_vec());
    let mut out = Vec::with_capacity(1 << basis.len());
    for mask in 0u32..(1 << basis.len()) {
        let mut v = 0u16;
        for (i, b) in basis.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                v ^= b;
            }
        }
        out.push(v);
    }
    out.sort_unstable();
    out.dedup();
    out
}

impl TightContext {
    pub fn new(dim: usize, u_basis: &[u16], p: &[u16]) -> Result<Self, AbstractError> {
        if dim == 0 || dim > 12 {
            return Err(AbstractError::DimOutOfRange(dim));
        }
        let mask = (1u32 << dim) - 1;
        for &x in u_basis.iter().chain(p) {
            if (x as u32) & !mask != 0 {
                return Err(AbstractError::OutOfRange(x));
            }
        }
        let u_basis = reduce_basis(u_basis.to_vec());
        let mut p: Vec<u16> = p.to_vec();
        p.sort_unstable();
        p.dedup();
        if !p.contains(&0) {
            return Err(AbstractError::ZeroNotInP);
        }
        let mut reps: BTreeMap<u16, u16> = BTreeMap::new();
        for &x in &p {
            let r = reduce_by(&u_basis, x);
            if let Some(&prev) = reps.get(&r) {
                return Err(AbstractError::CosetUniqueness(prev, x));
            }
            reps.insert(r, x);
        }
        let spans = reduce_basis(p.clone()).len() == dim;
        Ok(TightContext {
            dim,
            u_basis,
            p,
            reps,
            spans,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn u_basis(&self) -> &[u16] {
        &self.u_basis
    }

    pub fn p(&self) -> &[u16] {
        &self.p
    }

    /// Whether P spans V (not required by the theorems; recorded).
    pub fn p_spans(&self) -> bool {
        self.spans
    }

    pub fn in_p(&self, v: u16) -> bool {
        self.p.binary_search(&v).is_ok()
    }

    /// The unique element of P in v + U, if any.
    pub fn p_rep(&self, v: u16) -> Option<u16> {
        self.reps.get(&reduce_by(&self.u_basis, v)).copied()
    }

    pub fn in_p_plus_u(&self, v: u16) -> bool {
        self.p_rep(v).is_some()
    }

    /// S is tight when ⟨S⟩ ⊆ P + U.
    pub fn is_tight(&self, s: &[u16]) -> bool {
        span(s).iter().all(|&v| self.in_p_plus_u(v))
    }

    /// S is strongly tight when ⟨S⟩ ⊆ P.
    pub fn is_strongly_tight(&self, s: &[u16]) -> bool {
        span(s).iter().all(|&v| self.in_p(v))
    }

    /// Σ_S: the sum of the unique P-representatives of the subgroup
    /// generated by the image of S in V/U. Requires tightness.
    pub fn sigma(&self, s: &[u16]) -> Result<u16, AbstractError> {
        let mut acc = 0u16;
        for v in span(s) {
            match self.p_rep(v) {
                Some(p) => acc ^= p,
                None => return Err(AbstractError::NotTight(v)),
            }
        }
        Ok(acc)
    }
}

/// The derived table p_{S'} over subset masks of a tight set.
#[derive(Clone, Debug)]
pub struct SubsetFamily {
    pub elements: Vec<u16>,
    pub reps: BTreeMap<u32, u16>,
}

impl SubsetFamily {
    pub fn new(ctx: &TightContext, s: &[u16]) -> Result<Self, AbstractError> {
        let mut reps = BTreeMap::new();
        for mask in 0u32..(1 << s.len()) {
            let mut sum = 0u16;
            for (i, &x) in s.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    sum ^= x;
                }
            }
            let rep = ctx.p_rep(sum).ok_or(AbstractError::NotTight(sum))?;
            reps.insert(mask, rep);
        }
        debug_assert_eq!(reps[&0], 0, "p_∅ = 0");
        Ok(SubsetFamily {
            elements: s.to_vec(),
            reps,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub s: Vec<u16>,
    pub strongly_tight: bool,
    pub sigma: u16,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct VerifyReport {
    pub sets_checked: u64,
    pub skipped_degenerate: u64,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn merge(&mut self, other: &VerifyReport) {
        self.sets_checked += other.sets_checked;
        self.skipped_degenerate += other.skipped_degenerate;
        self.violations.extend(other.violations.iter().cloned());
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Almost strongly tight: tight, with every proper subset strongly tight.
fn almost_strongly_tight(ctx: &TightContext, s: &[u16]) -> bool {
    if !ctx.is_tight(s) {
        return false;
    }
    for drop in 0..s.len() {
        let sub: Vec<u16> = s
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != drop)
            .map(|(_, &x)| x)
            .collect();
        if !ctx.is_strongly_tight(&sub) {
            return false;
        }
    }
    true
}

/// Exhaustively checks "an almost strongly tight set is strongly tight iff
/// Σ_S = 0" on all S ⊆ P∖{0} with 1 < |S| ≤ max_size. Sets with
/// |⟨S⟩| ≤ 2 are skipped (the sum-over-a-noncyclic-group argument needs a
/// noncyclic group; drawing S from P∖{0} makes this automatic except for
/// singletons). Violations are reported, not swallowed.
pub fn verify_prep(ctx: &TightContext, max_size: usize) -> VerifyReport {
    let mut report = VerifyReport::default();
    let nonzero: Vec<u16> = ctx.p().iter().copied().filter(|&x| x != 0).collect();
    for k in 2..=max_size.min(nonzero.len()) {
        for combo in subsets_of_size(nonzero.len(), k) {
            let s: Vec<u16> = combo.iter().map(|&i| nonzero[i]).collect();
            if span(&s).len() <= 2 {
                report.skipped_degenerate += 1;
                continue;
            }
            if !almost_strongly_tight(ctx, &s) {
                continue;
            }
            let strongly = ctx.is_strongly_tight(&s);
            let sigma = ctx.sigma(&s).expect("tight by construction");
            report.sets_checked += 1;
            if strongly != (sigma == 0) {
                report.violations.push(Violation {
                    s,
                    strongly_tight: strongly,
                    sigma,
                    detail: "prep biconditional failed".into(),
                });
            }
        }
    }
    report
}

/// Exhaustively checks the ladder: a tight S is strongly tight iff
/// Σ_{S'} = 0 for every subset S' of cardinality > 1.
pub fn verify_ladder(ctx: &TightContext, max_size: usize) -> VerifyReport {
    let mut report = VerifyReport::default();
    let nonzero: Vec<u16> = ctx.p().iter().copied().filter(|&x| x != 0).collect();
    for k in 2..=max_size.min(nonzero.len()) {
        for combo in subsets_of_size(nonzero.len(), k) {
            let s: Vec<u16> = combo.iter().map(|&i| nonzero[i]).collect();
            if !ctx.is_tight(&s) {
                continue;
            }
            let strongly = ctx.is_strongly_tight(&s);
            let mut all_sigmas_zero = true;
            let mut first_nonzero = 0u16;
            for mask in 1u32..(1 << k) {
                if (mask as u32).count_ones() < 2 {
                    continue;
                }
                let sub: Vec<u16> = (0..k)
                    .filter(|i| (mask >> i) & 1 == 1)
                    .map(|i| s[i])
                    .collect();
                let sigma = ctx.sigma(&sub).expect("subsets of tight sets are tight");
                if sigma != 0 {
                    all_sigmas_zero = false;
                    first_nonzero = sigma;
                    break;
                }
            }
            report.sets_checked += 1;
            if strongly != all_sigmas_zero {
                report.violations.push(Violation {
                    s,
                    strongly_tight: strongly,
                    sigma: first_nonzero,
                    detail: "ladder biconditional failed".into(),
                });
            }
        }
    }
    report
}

/// Reduced-echelon bases of all subspaces of F2^n of dimension d.
pub fn subspaces_of_dim(n: usize, d: usize) -> Vec<Vec<u16>> {
    assert!(n <= 12 && d <= n);
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for pivot_combo in subsets_of_size(n, d) {
        // pivots as bit positions, ascending; rows in RREF have a leading 1
        // at their pivot, zeros at other pivots, free bits elsewhere above.
        let pivots: Vec<usize> = pivot_combo.clone();
        let mut free_positions: Vec<Vec<usize>> = Vec::with_capacity(d);
        for (r, &p) in pivots.iter().enumerate() {
            let free: Vec<usize> = (p + 1..n).filter(|j| !pivots[r..].contains(j)).collect();
            free_positions.push(free);
        }
        let total_free: usize = free_positions.iter().map(|f| f.len()).sum();
        for mask in 0u64..(1u64 << total_free) {
            let mut rows = Vec::with_capacity(d);
            let mut bit = 0;
            for (r, &p) in pivots.iter().enumerate() {
                let mut row = 1u16 << p;
                for &j in &free_positions[r] {
                    if (mask >> bit) & 1 == 1 {
                        row |= 1 << j;
                    }
                    bit += 1;
                }
                rows.push(row);
            }
            out.push(rows);
        }
    }
    out
}

/// All subspaces of codimension at most `max_codim`.
pub fn subspaces_of_codim_at_most(n: usize, max_codim: usize) -> Vec<Vec<u16>> {
    let mut out = vec![];
    for c in 0..=max_codim.min(n) {
        out.extend(subspaces_of_dim(n, n - c));
    }
    out
}

/// Seeded random P for a given (dim, U): grows P by adding elements from
/// fresh cosets while coset-uniqueness allows, up to `target` elements.
pub fn random_p<R: Rng>(dim: usize, u_basis: &[u16], target: usize, rng: &mut R) -> Vec<u16> {
    let u = reduce_basis(u_basis.to_vec());
    let mut p = vec![0u16];
    let mut used = std::collections::BTreeSet::new();
    used.insert(0u16);
    let order = 1u32 << dim;
    let mut attempts = 0;
    while p.len() < target && attempts < 8 * order {
        attempts += 1;
        let v = (rng.gen_range(0..order)) as u16;
        let r = reduce_by(&u, v);
        if used.insert(r) {
            p.push(v);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn construction_validates() {
        // P = V on F2^2 with U = 0.
        let ctx = TightContext::new(2, &[], &[0, 1, 2, 3]).unwrap();
        assert!(ctx.p_spans());
        assert!(ctx.is_tight(&[1, 2]) && ctx.is_strongly_tight(&[1, 2]));
        // 0 must be in P.
        assert_eq!(
            TightContext::new(2, &[], &[1, 2]).unwrap_err(),
            AbstractError::ZeroNotInP
        );
        // coset uniqueness: U = span{e1}, P containing 2 and 3 collides.
        assert!(matches!(
            TightContext::new(2, &[1], &[0, 2, 3]),
            Err(AbstractError::CosetUniqueness(_, _))
        ));
    }

    #[test]
    fn tightness_spec_examples() {
        // V = F2^2, U = 0, P = {0, e1, e2}: S = {e1,e2} is not tight.
        let ctx = TightContext::new(2, &[], &[0, 1, 2]).unwrap();
        assert!(!ctx.is_tight(&[1, 2]));
        // P = V: everything is tight and strongly tight.
        let full = TightContext::new(2, &[], &[0, 1, 2, 3]).unwrap();
        assert!(full.is_tight(&[1, 2]));
        assert!(full.is_strongly_tight(&[1, 2]));
        assert_eq!(full.sigma(&[1, 2]).unwrap(), 0, "sum over the Klein group");
    }

    #[test]
    fn sigma_crafted_table() {
        // V = F2^3 (bits e1=1, e2=2, e3=4), U = span{e3},
        // P = {0, e1, e2, e1+e2+e3}: Σ_{e1,e2} = e3.
        let ctx = TightContext::new(3, &[4], &[0, 1, 2, 7]).unwrap();
        assert!(ctx.is_tight(&[1, 2]));
        assert!(!ctx.is_strongly_tight(&[1, 2]));
        assert_eq!(ctx.sigma(&[1, 2]).unwrap(), 4);
        // prep: {e1,e2} is almost strongly tight with Σ ≠ 0 → not strongly.
        let report = verify_prep(&ctx, 4);
        assert!(report.violations.is_empty());
        assert!(report.sets_checked >= 1);
        let ladder = verify_ladder(&ctx, 4);
        assert!(ladder.violations.is_empty());
        // Σ lands in U whenever |⟨S⟩| > 2.
        for s in [[1u16, 2], [1, 7], [2, 7]] {
            if ctx.is_tight(&s) {
                let sig = ctx.sigma(&s).unwrap();
                assert_eq!(reduce_by(ctx.u_basis(), sig), 0, "Σ_S ∈ U");
            }
        }
    }

    #[test]
    fn monotonicity_and_theorems_random_fuzz() {
        let mut rng = StdRng::seed_from_u64(2718);
        for dim in 2..=5usize {
            for u in subspaces_of_codim_at_most(dim, 2) {
                for _ in 0..6 {
                    let p = random_p(dim, &u, 1 << dim.min(4), &mut rng);
                    let Ok(ctx) = TightContext::new(dim, &u, &p) else {
                        continue;
                    };
                    let nonzero: Vec<u16> =
                        ctx.p().iter().copied().filter(|&x| x != 0).collect();
                    // monotonicity: subsets of (strongly) tight sets stay so
                    for combo in subsets_of_size(nonzero.len(), 3.min(nonzero.len())) {
                        let s: Vec<u16> = combo.iter().map(|&i| nonzero[i]).collect();
                        if ctx.is_tight(&s) {
                            for drop in 0..s.len() {
                                let sub: Vec<u16> = s
                                    .iter()
                                    .enumerate()
                                    .filter(|(i, _)| *i != drop)
                                    .map(|(_, &x)| x)
                                    .collect();
                                assert!(ctx.is_tight(&sub));
                            }
                        }
                        if ctx.is_strongly_tight(&s) {
                            assert!(ctx.is_tight(&s), "strongly tight is tight");
                        }
                    }
                    let prep = verify_prep(&ctx, 4);
                    assert!(prep.violations.is_empty(), "{:?}", prep.violations);
                    let ladder = verify_ladder(&ctx, 4);
                    assert!(ladder.violations.is_empty(), "{:?}", ladder.violations);
                }
            }
        }
    }

    #[test]
    fn sigma_invariance_under_reordering_and_regenerating() {
        let ctx = TightContext::new(3, &[4], &[0, 1, 2, 7]).unwrap();
        let a = ctx.sigma(&[1, 2]).unwrap();
        let b = ctx.sigma(&[2, 1]).unwrap();
        assert_eq!(a, b);
        // replacing S by another generating set of ⟨S⟩ keeps Σ (same
        // subgroup, same representative table).
        let c = ctx.sigma(&[1, 3]).unwrap(); // span{e1, e1+e2} = span{e1,e2}
        assert_eq!(a, c);
    }

    #[test]
    fn subspace_enumeration_counts() {
        // Gaussian binomials over F2: [4 choose 1] = 15, [4 choose 2] = 35.
        assert_eq!(subspaces_of_dim(4, 1).len(), 15);
        assert_eq!(subspaces_of_dim(4, 2).len(), 35);
        assert_eq!(subspaces_of_dim(4, 3).len(), 15);
        assert_eq!(subspaces_of_dim(4, 4).len(), 1);
        // codim ≤ 2 in F2^5: 1 + 31 + 155.
        assert_eq!(subspaces_of_codim_at_most(5, 2).len(), 187);
        // every enumerated basis is independent with the right span size
        for b in subspaces_of_dim(4, 2) {
            assert_eq!(span(&b).len(), 4);
        }
    }

    #[test]
    fn subset_family_table() {
        let ctx = TightContext::new(3, &[4], &[0, 1, 2, 7]).unwrap();
        let fam = SubsetFamily::new(&ctx, &[1, 2]).unwrap();
        assert_eq!(fam.reps[&0b00], 0);
        assert_eq!(fam.reps[&0b01], 1);
        assert_eq!(fam.reps[&0b10], 2);
        assert_eq!(fam.reps[&0b11], 7, "p_{{1,2}} = e1+e2+e3");
    }
}
