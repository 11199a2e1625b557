//! Set-level linkage analysis: tightness and strong tightness of sets of
//! Pfister symbols, the Σ invariant (sum of the unique Pfister
//! representatives over the generated subgroup), left/right pair-linkage
//! criteria, quaternion-algebra wrappers through norm forms, Albert forms,
//! and the anisotropic-dimension bounds for Σ of quaternion sets.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field2::{Ctx, FieldElement, MonomialValuation};
use crate::oracle::{
    isotropy_search, monice_betas_of_symbol, monice_certificate, value_disjoint_certificate,
    Certificate, Decision, Evidence, SearchConfig, Witness,
};
use crate::quadform::{Block, QuadformError, QuadraticForm};
use crate::symbols::{
    mpf_symbol, tensor_one, QPfisterSymbol, SymbolSum, SymbolsError,
};

#[derive(Debug, Error)]
pub enum LinkageError {
    #[error("missing representative for subset mask {0:#b}")]
    MissingRepresentative(u32),
    #[error("structure tag does not match the forms: {0}")]
    StructureMismatch(String),
    #[error("inconsistent certified verdicts: {0}")]
    InconsistentVerdicts(String),
    #[error("hypotheses not established: {0}")]
    HypothesesNotEstablished(String),
    #[error(transparent)]
    Symbols(#[from] SymbolsError),
    #[error(transparent)]
    Quadform(#[from] QuadformError),
}

/// Three-valued outcome of a linkage question.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict")]
pub enum PairLinkage {
    Linked {
        route: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<Witness>,
    },
    NotLinked {
        route: String,
        certificate: Certificate,
    },
    Unknown {
        evidence: Evidence,
    },
}

impl PairLinkage {
    pub fn is_linked(&self) -> bool {
        matches!(self, PairLinkage::Linked { .. })
    }
    pub fn is_not_linked(&self) -> bool {
        matches!(self, PairLinkage::NotLinked { .. })
    }
    pub fn is_unknown(&self) -> bool {
        matches!(self, PairLinkage::Unknown { .. })
    }

    /// Two verdicts on the same question must never certify opposites.
    pub fn consistent_with(&self, other: &PairLinkage) -> bool {
        !(self.is_linked() && other.is_not_linked())
            && !(self.is_not_linked() && other.is_linked())
    }
}

impl fmt::Display for PairLinkage {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairLinkage::Linked { route, .. } => write!(out, "linked ({route})"),
            PairLinkage::NotLinked { route, .. } => write!(out, "not linked ({route})"),
            PairLinkage::Unknown { .. } => write!(out, "unknown"),
        }
    }
}

/// Structure tag of a set of n-fold Pfister symbols.
#[derive(Clone, Debug)]
pub enum SetStructure {
    /// Forms are ⟨⟨βᵢ⟩⟩ ⊗ φ for a common (n−1)-fold quadratic φ.
    RightLinked {
        betas: Vec<FieldElement>,
        phi: QPfisterSymbol,
    },
    /// Forms are b ⊗ [1, αᵢ] for a common bilinear (n−1)-fold b.
    LeftLinked {
        alphas: Vec<FieldElement>,
        b_gens: Vec<FieldElement>,
    },
    /// No structure: subset representatives must be supplied by the caller.
    General {
        reps: BTreeMap<u32, QPfisterSymbol>,
    },
}

#[derive(Clone, Debug)]
pub struct PfisterSet {
    forms: Vec<QPfisterSymbol>,
    structure: SetStructure,
}

impl PfisterSet {
    /// Validates that the structure tag matches the forms literally.
    pub fn new(
        forms: Vec<QPfisterSymbol>,
        structure: SetStructure,
    ) -> Result<Self, LinkageError> {
        assert!(!forms.is_empty());
        match &structure {
            SetStructure::RightLinked { betas, phi } => {
                if betas.len() != forms.len() {
                    return Err(LinkageError::StructureMismatch(
                        "one beta per form required".into(),
                    ));
                }
                for (b, f) in betas.iter().zip(&forms) {
                    if tensor_one(b, phi)? != *f {
                        return Err(LinkageError::StructureMismatch(format!(
                            "form {f} does not factor as <<{b}>> ⊗ {phi}"
                        )));
                    }
                }
            }
            SetStructure::LeftLinked { alphas, b_gens } => {
                if alphas.len() != forms.len() {
                    return Err(LinkageError::StructureMismatch(
                        "one alpha per form required".into(),
                    ));
                }
                let ctx = forms[0].ctx().clone();
                for (a, f) in alphas.iter().zip(&forms) {
                    if mpf_symbol(&ctx, b_gens, a)? != *f {
                        return Err(LinkageError::StructureMismatch(format!(
                            "form {f} does not factor as b ⊗ [1,{a}]"
                        )));
                    }
                }
            }
            SetStructure::General { .. } => {}
        }
        Ok(PfisterSet { forms, structure })
    }

    pub fn forms(&self) -> &[QPfisterSymbol] {
        &self.forms
    }

    pub fn structure(&self) -> &SetStructure {
        &self.structure
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn fold(&self) -> usize {
        self.forms[0].fold()
    }

    pub fn ctx(&self) -> &Ctx {
        self.forms[0].ctx()
    }

    /// Subset representatives: mask T ↦ the Pfister symbol representing
    /// Σ_{i∈T} forms[i] modulo the next filtration step.
    pub fn representatives(&self) -> Result<BTreeMap<u32, QPfisterSymbol>, LinkageError> {
        let ctx = self.ctx().clone();
        match &self.structure {
            SetStructure::RightLinked { betas, phi } => {
                Ok(crate::symbols::right_linked_representatives(betas, phi)?)
            }
            SetStructure::LeftLinked { alphas, b_gens } => {
                Ok(crate::symbols::left_linked_representatives(alphas, b_gens)?)
            }
            SetStructure::General { reps } => {
                let mut out = BTreeMap::new();
                out.insert(0u32, QPfisterSymbol::hyperbolic(&ctx, self.fold()));
                for mask in 1u32..(1 << self.forms.len()) {
                    let rep = reps
                        .get(&mask)
                        .ok_or(LinkageError::MissingRepresentative(mask))?;
                    out.insert(mask, rep.clone());
                }
                Ok(out)
            }
        }
    }
}

/// The Σ invariant: the symbolic sum of all nonempty-subset representatives
/// and, for right-linked sets, the closed form ⟨⟨β₁,…,β_s⟩⟩ ⊗ φ.
#[derive(Clone, Debug)]
pub struct SigmaInvariant {
    pub reps: BTreeMap<u32, QPfisterSymbol>,
    pub symbolic: SymbolSum,
    pub closed_form: Option<QPfisterSymbol>,
}

impl SigmaInvariant {
    /// Formal route: does the symbolic sum normalize to zero?
    pub fn normalizes_to_zero(&self) -> bool {
        self.symbolic.is_formally_hyperbolic()
    }
}

/// Σ of a structured set. For a General set without supplied
/// representatives this errors: tightness is never decided automatically.
pub fn sigma(set: &PfisterSet) -> Result<SigmaInvariant, LinkageError> {
    let ctx = set.ctx().clone();
    let reps = set.representatives()?;
    let mut symbolic = SymbolSum::zero(&ctx, set.fold());
    for (mask, rep) in &reps {
        if *mask == 0 {
            continue;
        }
        symbolic.add_symbol(rep.clone())?;
    }
    let closed_form = match set.structure() {
        SetStructure::RightLinked { betas, phi } => {
            let mut entries: Vec<FieldElement> = betas.clone();
            let r = phi.fold();
            entries.extend_from_slice(&phi.entries()[..r - 1]);
            let prod = FieldElement::product(&ctx, betas);
            entries.push(phi.entries()[r - 1].div(&prod).expect("nonzero betas"));
            Some(QPfisterSymbol::new(entries))
        }
        _ => None,
    };
    Ok(SigmaInvariant {
        reps,
        symbolic,
        closed_form,
    })
}

/// Ladder evaluation: Σ_{S'} for every subset S' of size > 1, via the
/// formal normal form. Strong tightness (formal route) holds iff all of
/// them normalize to zero.
#[derive(Clone, Debug)]
pub struct LadderReport {
    pub subset_sigma_zero: BTreeMap<u32, bool>,
    pub strongly_tight_formal: bool,
    /// normalize(rep_T + Σ_{i∈T} forms) = 0 for every T: the subset sums
    /// are literally represented by single symbols.
    pub representative_consistency: BTreeMap<u32, bool>,
}

pub fn strong_tightness_ladder(set: &PfisterSet) -> Result<LadderReport, LinkageError> {
    let ctx = set.ctx().clone();
    let reps = set.representatives()?;
    let s = set.len();
    let mut subset_sigma_zero = BTreeMap::new();
    let mut representative_consistency = BTreeMap::new();
    for mask in 1u32..(1 << s) {
        let mut check = SymbolSum::singleton(reps[&mask].clone());
        for (i, f) in set.forms().iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                check.add_symbol(f.clone())?;
            }
        }
        representative_consistency.insert(mask, check.is_formally_hyperbolic());
        if mask.count_ones() >= 2 {
            let mut sub_sigma = SymbolSum::zero(&ctx, set.fold());
            for sub in 1u32..(1 << s) {
                if sub & !mask == 0 {
                    sub_sigma.add_symbol(reps[&sub].clone())?;
                }
            }
            subset_sigma_zero.insert(mask, sub_sigma.is_formally_hyperbolic());
        }
    }
    let strongly_tight_formal = subset_sigma_zero.values().all(|&b| b);
    Ok(LadderReport {
        subset_sigma_zero,
        strongly_tight_formal,
        representative_consistency,
    })
}

/// Left-linkage of a right-linked pair [[β,α₁,…,α_{n−1}]],
/// [[γ,α₁,…,α_{n−1}]]: linked iff π = [[γ,β,α₁,…,α_{n−1}]] is hyperbolic.
/// Routes: formal normal form (linked), monomial-valuation certificate
/// (not linked), bounded isotropy search on π (linked); else unknown.
pub fn pair_left_linkage_rightlinked(
    beta: &FieldElement,
    gamma: &FieldElement,
    alphas: &[FieldElement],
    v: &MonomialValuation,
    search: &SearchConfig,
) -> Result<PairLinkage, LinkageError> {
    assert!(!alphas.is_empty(), "need the common right slots");
    let ctx = beta.ctx().clone();
    let n1 = alphas.len(); // n-1
    let mut gens = vec![gamma.clone(), beta.clone()];
    gens.extend_from_slice(&alphas[..n1 - 1]);
    let pi = mpf_symbol(&ctx, &gens, &alphas[n1 - 1])?;
    if SymbolSum::singleton(pi.clone()).is_formally_hyperbolic() {
        return Ok(PairLinkage::Linked {
            route: "pi normalizes to zero".into(),
            witness: None,
        });
    }
    if let Decision::CertifiedAnisotropic { certificate } =
        monice_certificate(&monice_betas_of_symbol(&pi), v)
    {
        return Ok(PairLinkage::NotLinked {
            route: "pi certified anisotropic".into(),
            certificate,
        });
    }
    match isotropy_search(&pi.expand(), search) {
        Decision::IsotropicWitness { witness } => Ok(PairLinkage::Linked {
            route: "isotropic pi (Pfister forms are hyperbolic when isotropic)".into(),
            witness: Some(witness),
        }),
        Decision::Unknown { evidence } => Ok(PairLinkage::Unknown { evidence }),
        Decision::CertifiedAnisotropic { certificate } => Ok(PairLinkage::NotLinked {
            route: "pi certified anisotropic".into(),
            certificate,
        }),
    }
}

/// A presentation φ = b ⊗ [[β, α]] with b the bilinear Pfister form on
/// `b_gens` (possibly empty), needed to build pure subforms.
#[derive(Clone, Debug)]
pub struct PfisterPresentation {
    pub b_gens: Vec<FieldElement>,
    pub beta: FieldElement,
    pub alpha: FieldElement,
}

impl PfisterPresentation {
    pub fn fold(&self) -> usize {
        self.b_gens.len() + 2
    }

    pub fn symbol(&self, ctx: &Ctx) -> Result<QPfisterSymbol, SymbolsError> {
        let mut gens = vec![self.beta.clone()];
        gens.extend_from_slice(&self.b_gens);
        mpf_symbol(ctx, &gens, &self.alpha)
    }

    pub fn pure_subform(&self, ctx: &Ctx) -> Result<QuadraticForm, QuadformError> {
        let b = crate::quadform::BilinearDiag::pfister(ctx, &self.b_gens)?;
        crate::quadform::pure_subform(&b, &self.beta, &self.alpha)
    }
}

/// Outcome of the Witt-index pair criterion i_W(φ' ⊥ ψ') ≥ 2^{n−1} − 1.
#[derive(Clone, Debug)]
pub struct FaivreOutcome {
    pub bound: usize,
    pub planes_found: usize,
    pub residual: QuadraticForm,
    pub decision: PairLinkage,
}

/// The pure-subform criterion: left-linked iff the Witt index of φ' ⊥ ψ'
/// reaches 2^{n−1} − 1. The rewriting lower bound is sound but incomplete,
/// so only the "linked" direction can be certified here.
pub fn faivre_pair_criterion(
    phi: &PfisterPresentation,
    psi: &PfisterPresentation,
    ctx: &Ctx,
) -> Result<FaivreOutcome, LinkageError> {
    assert_eq!(phi.fold(), psi.fold());
    let n = phi.fold();
    let bound = (1usize << (n - 1)) - 1;
    let sum = phi.pure_subform(ctx)?.orth_sum(&psi.pure_subform(ctx)?);
    let lower = crate::quadform::witt_index_lower_bound(&sum);
    let decision = if lower.planes >= bound {
        PairLinkage::Linked {
            route: format!(
                "witt_index_lower_bound({}) >= {bound} on the pure subforms",
                lower.planes
            ),
            witness: None,
        }
    } else {
        PairLinkage::Unknown {
            evidence: Evidence {
                note: format!(
                    "lower bound {} below the threshold {bound}; the bound is not complete",
                    lower.planes
                ),
                ..Evidence::default()
            },
        }
    };
    Ok(FaivreOutcome {
        bound,
        planes_found: lower.planes,
        residual: lower.residual,
        decision,
    })
}

/// Quaternion algebra [α, β) with x² + x = α, y² = β, yxy⁻¹ = x + 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionAlgebra {
    pub alpha: FieldElement,
    pub beta: FieldElement,
}

impl QuaternionAlgebra {
    pub fn new(alpha: FieldElement, beta: FieldElement) -> Result<Self, LinkageError> {
        if beta.is_zero() {
            return Err(LinkageError::StructureMismatch(
                "quaternion presentation needs beta != 0".into(),
            ));
        }
        Ok(QuaternionAlgebra { alpha, beta })
    }

    /// Norm form [[β, α]] as a 2-fold symbol.
    pub fn norm_form(&self) -> QPfisterSymbol {
        let ctx = self.beta.ctx().clone();
        if self.alpha.is_zero() {
            // [[β, 0]] is hyperbolic.
            return QPfisterSymbol::new(vec![self.beta.clone(), FieldElement::zero(&ctx)]);
        }
        mpf_symbol(&ctx, &[self.beta.clone()], &self.alpha).expect("beta nonzero")
    }
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "[{}, {})", self.alpha, self.beta)
    }
}

/// Albert form of Q₁ ⊗ Q₂: β₁[1,α₁] ⊥ β₂[1,α₂] ⊥ [1, α₁+α₂].
pub fn albert_form(q1: &QuaternionAlgebra, q2: &QuaternionAlgebra) -> QuadraticForm {
    let ctx = q1.beta.ctx().clone();
    let one = FieldElement::one(&ctx);
    let unit = |alpha: &FieldElement| QuadraticForm::binary(one.clone(), alpha.clone());
    unit(&q1.alpha)
        .scale(&q1.beta)
        .expect("beta nonzero")
        .orth_sum(&unit(&q2.alpha).scale(&q2.beta).expect("beta nonzero"))
        .orth_sum(&unit(&q1.alpha.add(&q2.alpha)))
}

/// Alb' = β₁[1,α₁] ⊥ β₂[1,α₂] ⊥ ⟨1⟩, the inseparable-linkage form.
pub fn albert_prime(q1: &QuaternionAlgebra, q2: &QuaternionAlgebra) -> QuadraticForm {
    let ctx = q1.beta.ctx().clone();
    let one = FieldElement::one(&ctx);
    let unit = |alpha: &FieldElement| QuadraticForm::binary(one.clone(), alpha.clone());
    unit(&q1.alpha)
        .scale(&q1.beta)
        .expect("beta nonzero")
        .orth_sum(&unit(&q2.alpha).scale(&q2.beta).expect("beta nonzero"))
        .orth_sum(&QuadraticForm::unary(one))
}

/// Common inseparable maximal subfield (left linkage of the norm forms):
/// decided through the isotropy of Alb'.
pub fn insep_pair_test(
    q1: &QuaternionAlgebra,
    q2: &QuaternionAlgebra,
    v: &MonomialValuation,
    search: &SearchConfig,
) -> PairLinkage {
    let form = albert_prime(q1, q2);
    let blocks = vec![
        (q1.beta.clone(), q1.alpha.clone()),
        (q2.beta.clone(), q2.alpha.clone()),
    ];
    if let Decision::CertifiedAnisotropic { certificate } =
        value_disjoint_certificate(&blocks, true, v)
    {
        return PairLinkage::NotLinked {
            route: "Alb' certified anisotropic".into(),
            certificate,
        };
    }
    match isotropy_search(&form, search) {
        Decision::IsotropicWitness { witness } => PairLinkage::Linked {
            route: "Alb' isotropic".into(),
            witness: Some(witness),
        },
        Decision::Unknown { evidence } => PairLinkage::Unknown { evidence },
        Decision::CertifiedAnisotropic { certificate } => PairLinkage::NotLinked {
            route: "Alb' certified anisotropic".into(),
            certificate,
        },
    }
}

/// Common separable maximal subfield (right linkage of the norm forms):
/// decided through the isotropy of the Albert form.
pub fn sep_pair_test(
    q1: &QuaternionAlgebra,
    q2: &QuaternionAlgebra,
    v: &MonomialValuation,
    search: &SearchConfig,
) -> PairLinkage {
    let form = albert_form(q1, q2);
    let a12 = q1.alpha.add(&q2.alpha);
    let ctx = q1.beta.ctx().clone();
    let mut blocks = vec![
        (q1.beta.clone(), q1.alpha.clone()),
        (q2.beta.clone(), q2.alpha.clone()),
    ];
    if !a12.is_zero() {
        blocks.push((FieldElement::one(&ctx), a12.clone()));
    }
    if a12.is_zero() {
        // [1,0] is an explicit hyperbolic plane: (0,1) in its coordinates.
        let witness: Vec<FieldElement> = {
            let mut w = vec![FieldElement::zero(&ctx); form.dimension()];
            w[form.dimension() - 1] = FieldElement::one(&ctx);
            w
        };
        return PairLinkage::Linked {
            route: "Albert form isotropic ([1,0] block)".into(),
            witness: Witness::checked(&form, witness),
        };
    }
    if let Decision::CertifiedAnisotropic { certificate } =
        value_disjoint_certificate(&blocks, false, v)
    {
        return PairLinkage::NotLinked {
            route: "Albert form certified anisotropic".into(),
            certificate,
        };
    }
    match isotropy_search(&form, search) {
        Decision::IsotropicWitness { witness } => PairLinkage::Linked {
            route: "Albert form isotropic".into(),
            witness: Some(witness),
        },
        Decision::Unknown { evidence } => PairLinkage::Unknown { evidence },
        Decision::CertifiedAnisotropic { certificate } => PairLinkage::NotLinked {
            route: "Albert form certified anisotropic".into(),
            certificate,
        },
    }
}

/// Caller-supplied tightness data for a quaternion triple.
#[derive(Clone, Debug)]
pub struct TripleRepresentatives {
    pub q12: QPfisterSymbol,
    pub q13: QPfisterSymbol,
    pub q23: QPfisterSymbol,
    pub q123: QPfisterSymbol,
}

/// Σ of a tight quaternion triple: the seven-term sum
/// φ₁ ⊥ φ₂ ⊥ φ₃ ⊥ φ₁₂ ⊥ φ₁₃ ⊥ φ₂₃ ⊥ φ₁₂₃.
pub fn triple_sigma(
    q1: &QuaternionAlgebra,
    q2: &QuaternionAlgebra,
    q3: &QuaternionAlgebra,
    reps: &TripleRepresentatives,
) -> Result<SigmaInvariant, LinkageError> {
    let ctx = q1.beta.ctx().clone();
    let table: BTreeMap<u32, QPfisterSymbol> = [
        (0b000, QPfisterSymbol::hyperbolic(&ctx, 2)),
        (0b001, q1.norm_form()),
        (0b010, q2.norm_form()),
        (0b100, q3.norm_form()),
        (0b011, reps.q12.clone()),
        (0b101, reps.q13.clone()),
        (0b110, reps.q23.clone()),
        (0b111, reps.q123.clone()),
    ]
    .into_iter()
    .collect();
    let mut symbolic = SymbolSum::zero(&ctx, 2);
    for (mask, rep) in &table {
        if *mask != 0 {
            symbolic.add_symbol(rep.clone())?;
        }
    }
    Ok(SigmaInvariant {
        reps: table,
        symbolic,
        closed_form: None,
    })
}

/// The [1,*]-cancellation representative of a Σ built from 2-fold symbols:
/// each summand [[b,a]] = [1, ba] ⊥ [b, a] contributes its scaled block,
/// and the [1,*] parts merge into a single [1, Σ bᵢaᵢ]. The result has
/// dimension 2·#summands + 2.
#[derive(Clone, Debug)]
pub struct DimBoundReport {
    pub summands: usize,
    pub constructed: QuadraticForm,
    pub dim: usize,
    pub bound: usize,
    pub within_bound: bool,
}

/// Bound dim(an(Σ)) ≤ 2^{s+1} via the [1,*]-cancellation construction;
/// with a left-linked pair among the represented elements, three summands
/// cancel and the bound tightens to 2^{s+1} − 6. `cancelled_masks` names
/// the summands removed under the Prop.-1ll+ hypothesis.
pub fn dim_bound_check(
    sigma: &SigmaInvariant,
    s: usize,
    cancelled_masks: Option<(u32, u32)>,
) -> Result<DimBoundReport, LinkageError> {
    let ctx = sigma.symbolic.ctx().clone();
    if sigma.symbolic.fold() != 2 {
        return Err(LinkageError::StructureMismatch(
            "dimension bound applies to 2-fold (quaternion) representatives".into(),
        ));
    }
    let mut skip: Vec<u32> = vec![];
    if let Some((m1, m2)) = cancelled_masks {
        skip = vec![m1, m2, m1 ^ m2];
    }
    let mut scaled_blocks: Vec<Block> = vec![];
    let mut unit_slot = FieldElement::zero(&ctx);
    let mut summands = 0usize;
    for (mask, rep) in &sigma.reps {
        if *mask == 0 || skip.contains(mask) {
            continue;
        }
        summands += 1;
        if rep.has_zero_entry() {
            // hyperbolic summand: [1,0] ⊥ [0,0]; contributes nothing to
            // the anisotropic part but keeps the block count honest.
            scaled_blocks.push(Block::Binary(
                FieldElement::zero(&ctx),
                FieldElement::zero(&ctx),
            ));
            continue;
        }
        let x = rep.entries()[0].clone();
        let y = rep.entries()[1].clone();
        unit_slot = unit_slot.add(&x.mul(&y));
        scaled_blocks.push(Block::Binary(x, y));
    }
    let mut constructed = QuadraticForm::from_blocks(&ctx, scaled_blocks);
    constructed = constructed.orth_sum(&QuadraticForm::binary(
        FieldElement::one(&ctx),
        unit_slot,
    ));
    let dim = constructed.dimension();
    let bound = if cancelled_masks.is_some() {
        (1usize << (s + 1)) - 6
    } else {
        1usize << (s + 1)
    };
    Ok(DimBoundReport {
        summands,
        constructed,
        dim,
        bound,
        within_bound: dim <= bound,
    })
}

/// Annihilator identity: when the forms ⟨⟨αᵢ⟩⟩ ⊗ ψ are pairwise
/// left-linked, ⟨⟨α₁⟩⟩ ⊥ ⋯ ⊥ ⟨⟨α_s⟩⟩ ⊥ ⟨⟨α₁⋯α_s⟩⟩ annihilates ψ.
/// Premises are established formally (each ⟨⟨αᵢ,αⱼ⟩⟩ ⊗ ψ must normalize to
/// zero); the identity is then checked by the normal form.
#[derive(Clone, Debug)]
pub struct AnnihilatorReport {
    pub premises: Vec<((usize, usize), bool)>,
    pub identity_formal: bool,
}

pub fn annihilator_identity_check(
    alphas: &[FieldElement],
    psi: &QPfisterSymbol,
) -> Result<AnnihilatorReport, LinkageError> {
    let ctx = psi.ctx().clone();
    let mut premises = vec![];
    let mut all_ok = true;
    for i in 0..alphas.len() {
        for j in i + 1..alphas.len() {
            let pi = tensor_one(&alphas[i], &tensor_one(&alphas[j], psi)?)?;
            let ok = SymbolSum::singleton(pi).is_formally_hyperbolic();
            all_ok &= ok;
            premises.push(((i, j), ok));
        }
    }
    if !all_ok {
        return Err(LinkageError::HypothesesNotEstablished(format!(
            "pairwise left-linkage not formally established: {premises:?}"
        )));
    }
    let mut sum = SymbolSum::zero(&ctx, psi.fold() + 1);
    for a in alphas {
        sum.add_symbol(tensor_one(a, psi)?)?;
    }
    let prod = FieldElement::product(&ctx, alphas);
    sum.add_symbol(tensor_one(&prod, psi)?)?;
    Ok(AnnihilatorReport {
        premises,
        identity_formal: sum.is_formally_hyperbolic(),
    })
}
