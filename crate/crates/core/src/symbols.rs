//! The additive symbol calculus for quadratic Pfister forms in
//! characteristic 2: symbols ((α₁,…,α_{n−1},β)) with
//! ((α₁,…,α_{n−1},β)) = [[α₁,…,α_{n−1}, α₁⋯α_{n−1}β]], formal F2-sums of
//! symbols, and a sound normal form implementing multi-additivity, the
//! alternating rule, zero- and square-entry kills, and migration of square
//! factors between entries.
//!
//! The calculus is deliberately incomplete: a nonempty normal form means
//! "not provable zero in this calculus", never "nonzero".

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::field2::{assert_same_ctx, Ctx, FieldElement, Poly};
use crate::quadform::{QuadformError, QuadraticForm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymbolsError {
    #[error("tensor factor must be nonzero")]
    ZeroTensorFactor,
    #[error("subset-sum construction inapplicable: {0}")]
    ConstructionInapplicable(String),
    #[error("fold mismatch: expected {expected}, got {got}")]
    FoldMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Quadform(#[from] QuadformError),
}

/// The symbol ((e₁,…,eₙ)). Entries keep their construction order (the last
/// entry is the quadratic slot of the expansion); equality is up to
/// permutation, per the symmetry theorem.
#[derive(Clone)]
pub struct QPfisterSymbol {
    entries: Vec<FieldElement>,
}

impl QPfisterSymbol {
    pub fn new(entries: Vec<FieldElement>) -> Self {
        assert!(!entries.is_empty(), "symbols have at least one entry");
        for w in entries.windows(2) {
            assert_same_ctx(w[0].ctx(), w[1].ctx());
        }
        QPfisterSymbol { entries }
    }

    /// The canonical representative of the zero class: all entries zero.
    pub fn hyperbolic(ctx: &Ctx, fold: usize) -> Self {
        QPfisterSymbol::new(vec![FieldElement::zero(ctx); fold])
    }

    pub fn fold(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn ctx(&self) -> &Ctx {
        self.entries[0].ctx()
    }

    pub fn has_zero_entry(&self) -> bool {
        self.entries.iter().any(|e| e.is_zero())
    }

    pub fn sorted_entries(&self) -> Vec<FieldElement> {
        let mut v = self.entries.clone();
        v.sort();
        v
    }

    /// ((e₁,…,eₙ)) = ⟨⟨e₁,…,e_{n−1}⟩⟩ ⊗ [1, e₁⋯e_{n−1}eₙ]; a zero entry
    /// gives the hyperbolic 2ⁿ-dimensional form.
    pub fn expand(&self) -> QuadraticForm {
        let ctx = self.ctx();
        let n = self.fold();
        if self.has_zero_entry() {
            return QuadraticForm::hyperbolic(ctx, 1 << (n - 1));
        }
        let slot = FieldElement::product(ctx, &self.entries);
        crate::quadform::mpf(ctx, &self.entries[..n - 1], &slot)
            .expect("nonzero entries tensor cleanly")
    }
}

impl PartialEq for QPfisterSymbol {
    fn eq(&self, other: &Self) -> bool {
        self.sorted_entries() == other.sorted_entries()
    }
}
impl Eq for QPfisterSymbol {}

impl PartialOrd for QPfisterSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for QPfisterSymbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sorted_entries().cmp(&other.sorted_entries())
    }
}

impl fmt::Display for QPfisterSymbol {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "((")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(out, ",")?;
            }
            write!(out, "{e}")?;
        }
        write!(out, "))")
    }
}

impl fmt::Debug for QPfisterSymbol {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

/// A formal F2-combination of symbols of a common fold.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolSum {
    ctx: Ctx,
    fold: usize,
    terms: Vec<QPfisterSymbol>,
}

impl SymbolSum {
    pub fn zero(ctx: &Ctx, fold: usize) -> Self {
        SymbolSum {
            ctx: ctx.clone(),
            fold,
            terms: vec![],
        }
    }

    pub fn from_symbols(ctx: &Ctx, symbols: Vec<QPfisterSymbol>) -> Result<Self, SymbolsError> {

        let fold = symbols.first().map(|s| s.fold()).unwrap_or(1);
        let mut sum = SymbolSum::zero(ctx, fold);
        for s in symbols {
            sum.add_symbol(s)?;
        }
        Ok(sum)
    }

    pub fn singleton(symbol: QPfisterSymbol) -> Self {
        let ctx = symbol.ctx().clone();
        let fold = symbol.fold();
        SymbolSum {
            ctx,
            fold,
            terms: vec![symbol],
        }
    }

    pub fn add_symbol(&mut self, s: QPfisterSymbol) -> Result<(), SymbolsError> {
        if s.fold() != self.fold {
            return Err(SymbolsError::FoldMismatch {
                expected: self.fold,
                got: s.fold(),
            });
        }
        self.terms.push(s);
        Ok(())
    }

    pub fn add(&self, other: &SymbolSum) -> Result<SymbolSum, SymbolsError> {
        let mut out = self.clone();
        for t in &other.terms {
            out.add_symbol(t.clone())?;
        }
        Ok(out)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn fold(&self) -> usize {
        self.fold
    }

    pub fn terms(&self) -> &[QPfisterSymbol] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Expansions of all terms, for specialization-based evidence.
    pub fn expand_terms(&self) -> Vec<QuadraticForm> {
        self.terms.iter().map(|s| s.expand()).collect()
    }

    /// Canonical normal form: entries are split into F2-independent atoms
    /// (monomials, and Laurent monomials when the reduced denominator is a
    /// monomial; other rational entries stay whole), symbols with a zero,
    /// square, or repeated entry are dropped, square factors are migrated
    /// onto one entry, and identical symbols cancel in pairs.
    pub fn normalize(&self) -> SymbolSum {
        let mut counts: BTreeMap<Vec<FieldElement>, usize> = BTreeMap::new();
        for symbol in &self.terms {
            let atom_lists: Vec<Vec<FieldElement>> =
                symbol.entries.iter().map(|e| atomize(&self.ctx, e)).collect();
            if atom_lists.iter().any(|l| l.is_empty()) {
                continue; // a zero entry kills the symbol
            }
            let mut index = vec![0usize; atom_lists.len()];
            loop {
                let choice: Vec<FieldElement> = index
                    .iter()
                    .zip(&atom_lists)
                    .map(|(&i, l)| l[i].clone())
                    .collect();
                if let Some(key) = canonical_entries(&self.ctx, choice) {
                    *counts.entry(key).or_insert(0) += 1;
                }
                // advance the mixed-radix counter
                let mut pos = 0;
                loop {
                    if pos == index.len() {
                        break;
                    }
                    index[pos] += 1;
                    if index[pos] < atom_lists[pos].len() {
                        break;
                    }
                    index[pos] = 0;
                    pos += 1;
                }
                if pos == index.len() {
                    break;
                }
            }
        }
        let terms: Vec<QPfisterSymbol> = counts
            .into_iter()
            .filter(|(_, c)| c % 2 == 1)
            .map(|(k, _)| QPfisterSymbol::new(k))
            .collect();
        SymbolSum {
            ctx: self.ctx.clone(),
            fold: self.fold,
            terms,
        }
    }

    /// True iff the normal form is empty. Sound: true implies the Witt
    /// class is zero. False means "not provable in this calculus".
    pub fn is_formally_hyperbolic(&self) -> bool {
        self.normalize().is_empty()
    }
}

impl fmt::Display for SymbolSum {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(out, " + ")?;
            }
            write!(out, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolSum {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

/// Split a field element into F2-independent additive atoms.
/// Zero yields no atoms. Polynomials split into coefficient-basis monomials;
/// fractions with monomial denominator split into Laurent monomials; other
/// fractions are atomic.
fn atomize(ctx: &Ctx, e: &FieldElement) -> Vec<FieldElement> {
    if e.is_zero() {
        return vec![];
    }
    if !e.den().is_monomial() {
        return vec![e.clone()];
    }
    let mut out = vec![];
    for (mono, coeff) in e.num().terms() {
        for bit in 0..ctx.field().k() {
            if (coeff >> bit) & 1 == 1 {
                let atom_num = Poly::monomial(ctx, mono.clone(), 1 << bit);
                out.push(
                    FieldElement::new(atom_num, e.den().clone())
                        .expect("monomial denominator is nonzero"),
                );
            }
        }
    }
    out
}

/// Squarefree part and square excess of an atom: atom = excess · sf with
/// excess a perfect square. For Laurent atoms the squarefree part is the
/// product of variables with odd exponent; opaque rational atoms are their
/// own squarefree part unless they are themselves squares.
fn sf_decompose(ctx: &Ctx, atom: &FieldElement) -> (FieldElement, FieldElement) {
    if atom.num().is_monomial() && atom.den().is_monomial() {
        let (num_exp, _) = atom.num().min_term().unwrap();
        let (den_exp, _) = atom.den().min_term().unwrap();
        let mut sf_exp = vec![0u16; ctx.nvars()];
        for i in 0..ctx.nvars() {
            let z = num_exp[i] as i64 - den_exp[i] as i64;
            if z.rem_euclid(2) == 1 {
                sf_exp[i] = 1;
            }
        }
        let sf = FieldElement::from_poly(Poly::monomial(ctx, sf_exp, 1));
        let excess = atom.div(&sf).expect("squarefree part is nonzero");
        debug_assert!(excess.is_square());
        (sf, excess)
    } else if atom.is_square() {
        (FieldElement::one(ctx), atom.clone())
    } else {
        (atom.clone(), FieldElement::one(ctx))
    }
}

/// Canonical entry vector of a symbol with atomic entries, or None when a
/// rewrite rule kills the symbol. Sound rules (fold n ≥ 2):
///   - zero entry: hyperbolic;
///   - two literally equal entries: alternating;
///   - an entry that is a perfect square: ⟨1, t²⟩ ≅ ⟨1,1⟩ splits off;
///   - ((σ²x, y, …)) = ((x, σ²y, …)): square factors migrate, so all square
///     excess is consolidated onto the largest squarefree part, and a
///     repeated squarefree part kills the symbol whenever the excess can be
///     parked on a third entry (n ≥ 3) or is trivial.
/// At fold 1 only the zero rule applies ([1,t²] need not be hyperbolic).
fn canonical_entries(ctx: &Ctx, mut entries: Vec<FieldElement>) -> Option<Vec<FieldElement>> {
    if entries.iter().any(|e| e.is_zero()) {
        return None;
    }
    entries.sort();
    if entries.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let n = entries.len();
    if n == 1 {
        return Some(entries);
    }
    let parts: Vec<(FieldElement, FieldElement)> =
        entries.iter().map(|e| sf_decompose(ctx, e)).collect();
    if parts.iter().any(|(sf, _)| sf.is_one()) {
        return None;
    }
    let mut excess = FieldElement::one(ctx);
    for (_, ex) in &parts {
        excess = excess.mul(ex);
    }
    let mut sfs: Vec<FieldElement> = parts.into_iter().map(|(sf, _)| sf).collect();
    sfs.sort();
    let duplicate = sfs.windows(2).any(|w| w[0] == w[1]);
    if duplicate {
        if excess.is_one() || n >= 3 {
            return None;
        }
        // n = 2 with a nontrivial excess: ((a, σ²a)) is not provably zero.
        let last = sfs.pop().unwrap();
        sfs.push(last.mul(&excess));
        return Some(sfs);
    }
    let last = sfs.pop().unwrap();
    sfs.push(last.mul(&excess));
    Some(sfs)
}

/// The symbol whose expansion is [[g₁,…,g_m, slot]] = ⟨⟨g₁,…,g_m⟩⟩⊗[1,slot]:
/// entries (g₁,…,g_m, slot/(g₁⋯g_m)).
pub fn mpf_symbol(
    ctx: &Ctx,
    gens: &[FieldElement],
    slot: &FieldElement,
) -> Result<QPfisterSymbol, SymbolsError> {
    if gens.iter().any(|g| g.is_zero()) {
        return Err(SymbolsError::ZeroTensorFactor);
    }
    let prod = FieldElement::product(ctx, gens);
    let mut entries = gens.to_vec();
    entries.push(slot.div(&prod).expect("nonzero product"));
    Ok(QPfisterSymbol::new(entries))
}

/// ⟨⟨B⟩⟩ ⊗ ψ as a single (fold+1)-symbol.
pub fn tensor_one(b: &FieldElement, psi: &QPfisterSymbol) -> Result<QPfisterSymbol, SymbolsError> {
    if b.is_zero() {
        return Err(SymbolsError::ZeroTensorFactor);
    }
    let r = psi.fold();
    let mut entries = Vec::with_capacity(r + 1);
    entries.push(b.clone());
    entries.extend_from_slice(&psi.entries()[..r - 1]);
    entries.push(psi.entries()[r - 1].div(b).expect("nonzero factor"));
    Ok(QPfisterSymbol::new(entries))
}

/// ⟨⟨g₁,…,g_t⟩⟩ ⊗ ψ expanded into the sum of the (fold+1)-symbols
/// ⟨⟨∏_{i∈T} gᵢ⟩⟩ ⊗ ψ over the nonempty subsets T — the Witt-group identity
/// behind the subset-sum induction of the Σ closed form.
pub fn tensor_expand(
    gens: &[FieldElement],
    psi: &QPfisterSymbol,
) -> Result<SymbolSum, SymbolsError> {
    let ctx = psi.ctx().clone();
    let mut sum = SymbolSum::zero(&ctx, psi.fold() + 1);
    for mask in 1u32..(1 << gens.len()) {
        let mut prod = FieldElement::one(&ctx);
        for (i, g) in gens.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                prod = prod.mul(g);
            }
        }
        sum.add_symbol(tensor_one(&prod, psi)?)?;
    }
    Ok(sum)
}

/// For a family ψᵢ omitting exactly one element of a common ground set
/// (the Eq.-of-the-strongly-tight-family shape), the single symbol ψ′ with
/// ψ′ ~ Σ_{i∈I} ψᵢ: entries are the ground elements outside I together with
/// the sums g_{i₀}+gᵢ for i ∈ I∖{i₀}, i₀ = min I. The cancellation is
/// verified by `normalize` before returning.
pub fn subset_sum_symbol(
    psis: &[QPfisterSymbol],
    subset: &[usize],
) -> Result<QPfisterSymbol, SymbolsError> {
    if psis.is_empty() || subset.is_empty() {
        return Err(SymbolsError::ConstructionInapplicable(
            "empty family or empty index set".into(),
        ));
    }
    let ctx = psis[0].ctx().clone();
    // Infer the ground set and the omitted element of each form.
    let mut ground: Vec<FieldElement> = vec![];
    for psi in psis {
        for e in psi.entries() {
            if !ground.contains(e) {
                ground.push(e.clone());
            }
        }
    }
    ground.sort();
    if ground.len() != psis.len() {
        return Err(SymbolsError::ConstructionInapplicable(format!(
            "ground set has {} elements for {} forms",
            ground.len(),
            psis.len()
        )));
    }
    let mut omitted: Vec<FieldElement> = vec![];
    for psi in psis {
        if psi.fold() + 1 != ground.len() {
            return Err(SymbolsError::ConstructionInapplicable(
                "form fold does not match ground set".into(),
            ));
        }
        let missing: Vec<&FieldElement> = ground
            .iter()
            .filter(|g| !psi.entries().contains(g))
            .collect();
        if missing.len() != 1 {
            return Err(SymbolsError::ConstructionInapplicable(
                "a form does not omit exactly one ground element".into(),
            ));
        }
        omitted.push(missing[0].clone());
    }
    for i in subset {
        if *i >= psis.len() {
            return Err(SymbolsError::ConstructionInapplicable(format!(
                "index {i} out of range"
            )));
        }
    }
    let i0 = *subset.iter().min().unwrap();
    let in_subset = |g: &FieldElement| subset.iter().any(|&i| omitted[i] == *g);
    let mut entries: Vec<FieldElement> = ground
        .iter()
        .filter(|g| !in_subset(g))
        .cloned()
        .collect();
    for &i in subset {
        if i != i0 {
            entries.push(omitted[i0].add(&omitted[i]));
        }
    }
    let candidate = QPfisterSymbol::new(entries);
    // Verify ψ′ + Σ_{i∈I} ψᵢ normalizes to zero; report, never guess.
    let mut check = SymbolSum::singleton(candidate.clone());
    for &i in subset {
        check.add_symbol(psis[i].clone())?;
    }
    if !check.is_formally_hyperbolic() {
        return Err(SymbolsError::ConstructionInapplicable(
            "candidate does not cancel the subset sum".into(),
        ));
    }
    let _ = ctx;
    Ok(candidate)
}

/// Prop.-style representatives of a right-linked family ⟨⟨βᵢ⟩⟩ ⊗ φ: subset
/// mask ↦ ⟨⟨β_{i₁}⋯β_{i_k}⟩⟩ ⊗ φ, empty set ↦ 0 (hyperbolic).
pub fn right_linked_representatives(
    betas: &[FieldElement],
    phi: &QPfisterSymbol,
) -> Result<BTreeMap<u32, QPfisterSymbol>, SymbolsError> {
    if betas.iter().any(|b| b.is_zero()) {
        return Err(SymbolsError::ZeroTensorFactor);
    }
    let ctx = phi.ctx().clone();
    let mut out = BTreeMap::new();
    out.insert(0u32, QPfisterSymbol::hyperbolic(&ctx, phi.fold() + 1));
    for mask in 1u32..(1 << betas.len()) {
        let mut prod = FieldElement::one(&ctx);
        for (i, b) in betas.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                prod = prod.mul(b);
            }
        }
        out.insert(mask, tensor_one(&prod, phi)?);
    }
    Ok(out)
}

/// Representatives of a left-linked family b ⊗ [1,αᵢ]: subset mask ↦
/// b ⊗ [1, α_{i₁} + ⋯ + α_{i_k}]; these are equalities in I_q^nF.
pub fn left_linked_representatives(
    alphas: &[FieldElement],
    b_gens: &[FieldElement],
) -> Result<BTreeMap<u32, QPfisterSymbol>, SymbolsError> {
    assert!(!alphas.is_empty());
    let ctx = alphas[0].ctx().clone();
    let mut out = BTreeMap::new();
    out.insert(0u32, QPfisterSymbol::hyperbolic(&ctx, b_gens.len() + 1));
    for mask in 1u32..(1 << alphas.len()) {
        let mut slot = FieldElement::zero(&ctx);
        for (i, a) in alphas.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                slot = slot.add(a);
            }
        }
        let sym = if slot.is_zero() {
            QPfisterSymbol::hyperbolic(&ctx, b_gens.len() + 1)
        } else {
            mpf_symbol(&ctx, b_gens, &slot)?
        };
        out.insert(mask, sym);
    }
    Ok(out)
}
