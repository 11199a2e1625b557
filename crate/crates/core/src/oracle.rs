//! Three-valued isotropy decisions: valuation certificates for anisotropy,
//! exhaustive/sampled witness search for isotropy, and specialization-based
//! statistical evidence for Witt-class claims.
//!
//! Anisotropy over function fields is semi-decidable at best, so Unknown is
//! a first-class verdict and is never silently coerced.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::field2::{
    Ctx, Ff, Field2Error, FieldElement, GammaClass, GammaSubgroup, MonomialValuation, Poly,
};
use crate::quadform::{QuadformError, QuadraticForm, WittClassFinite};
use crate::symbols::{QPfisterSymbol, SymbolSum};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("certificate hypotheses not verified: {0}")]
    HypothesesNotVerified(String),
    #[error(transparent)]
    Field(#[from] Field2Error),
    #[error(transparent)]
    Quadform(#[from] QuadformError),
}

/// A specialization point that disproves a Witt-zero claim.
#[derive(Debug, Error, Clone, Serialize)]
#[error("claim refuted by specialization at {point:?} (anisotropic dimension {})", witt.dim_anisotropic)]
pub struct RefutedBySpecialization {
    pub point: Vec<Ff>,
    pub witt: WittClassFinite,
}

/// Hypothesis data checked for the k-variable monomial-valuation lemma:
/// ν(β₁) < 0 and the ν̄(βᵢ) linearly independent in Γ/2Γ certify that
/// [[β_k,…,β₁]] is anisotropic.
#[derive(Clone, Debug)]
pub struct MoniceCertificate {
    pub betas: Vec<FieldElement>,
    pub values: Vec<Vec<i64>>,
    pub beta1_negative: bool,
    pub matrix_rank: usize,
}

impl MoniceCertificate {
    pub fn holds(&self) -> bool {
        self.beta1_negative && self.matrix_rank == self.betas.len()
    }

    /// The subgroup ν̄(D(φ)) ⊆ Γ/2Γ spanned by the ν̄(βᵢ).
    pub fn value_subgroup(&self, m: usize) -> GammaSubgroup {
        let classes: Vec<GammaClass> = self
            .values
            .iter()
            .map(|v| GammaClass::from_vector(v))
            .collect();
        GammaSubgroup::span(m, &classes)
    }
}

impl Serialize for MoniceCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MoniceCertificate", 5)?;
        st.serialize_field("lemma", "monice")?;
        let betas: Vec<String> = self.betas.iter().map(|b| b.to_string()).collect();
        st.serialize_field("betas", &betas)?;
        st.serialize_field("values", &self.values)?;
        st.serialize_field("beta1_negative", &self.beta1_negative)?;
        st.serialize_field("matrix_rank", &self.matrix_rank)?;
        st.end()
    }
}

/// Hypothesis data for the discrete-valuation variant: ν(β) = ν(γ) < 0 and
/// ν̄(α), ν̄(β) independent certify α[1,β] ⊥ [1,γ] anisotropic.
#[derive(Clone, Debug)]
pub struct Monice2Certificate {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub value_beta: Vec<i64>,
    pub value_gamma: Vec<i64>,
    pub matrix_rank: usize,
}

impl Serialize for Monice2Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Monice2Certificate", 5)?;
        st.serialize_field("lemma", "monice2")?;
        st.serialize_field(
            "form",
            &format!("{}[1,{}] _|_ [1,{}]", self.alpha, self.beta, self.gamma),
        )?;
        st.serialize_field("value_beta", &self.value_beta)?;
        st.serialize_field("value_gamma", &self.value_gamma)?;
        st.serialize_field("matrix_rank", &self.matrix_rank)?;
        st.end()
    }
}

/// Generalized monice2-style certificate for ⊥ᵢ cᵢ[1,dᵢ] (⊥ ⟨1⟩): each
/// block anisotropic by ν̄(dᵢ) ≠ 0 with ν(dᵢ) < 0, and the value classes
/// ν̄(cᵢ)·{0, ν̄(dᵢ)} pairwise disjoint (plus disjoint from {0} when the
/// unit block is present), so distinct blocks can never cancel.
#[derive(Clone, Debug)]
pub struct ValueDisjointCertificate {
    pub blocks: Vec<(FieldElement, FieldElement)>,
    pub with_unit: bool,
    pub classes: Vec<Vec<GammaClass>>,
}

impl Serialize for ValueDisjointCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ValueDisjointCertificate", 4)?;
        st.serialize_field("lemma", "monice2-family value disjointness")?;
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|(c, d)| format!("{c}[1,{d}]"))
            .collect();
        st.serialize_field("blocks", &blocks)?;
        st.serialize_field("with_unit", &self.with_unit)?;
        let classes: Vec<Vec<Vec<u8>>> = self
            .classes
            .iter()
            .map(|cl| cl.iter().map(|g| g.to_vec()).collect())
            .collect();
        st.serialize_field("value_classes", &classes)?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "lemma")]
pub enum Certificate {
    #[serde(rename = "monice")]
    Monice(MoniceCertificate),
    #[serde(rename = "monice2")]
    Monice2(Monice2Certificate),
    #[serde(rename = "value-disjoint")]
    ValueDisjoint(ValueDisjointCertificate),
}

/// A nonzero vector with form value 0; re-checked on construction.
#[derive(Clone, Debug)]
pub struct Witness {
    pub vector: Vec<FieldElement>,
}

impl Witness {
    pub fn checked(form: &QuadraticForm, vector: Vec<FieldElement>) -> Option<Witness> {
        if vector.iter().all(|x| x.is_zero()) {
            return None;
        }
        match form.evaluate(&vector) {
            Ok(v) if v.is_zero() => Some(Witness { vector }),
            _ => None,
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.vector.iter().map(|x| x.to_string()).collect();
        strings.serialize(s)
    }
}

/// Summary of an inconclusive search or an unverified hypothesis.
#[derive(Clone, Debug, Serialize, Default)]
pub struct Evidence {
    pub note: String,
    pub trials: u64,
    pub seed: Option<u64>,
    pub degree_bound: Option<u16>,
    pub exhaustive: bool,
}

/// Three-valued isotropy verdict.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict")]
pub enum Decision {
    CertifiedAnisotropic { certificate: Certificate },
    IsotropicWitness { witness: Witness },
    Unknown { evidence: Evidence },
}

impl Decision {
    pub fn unknown(note: impl Into<String>) -> Decision {
        Decision::Unknown {
            evidence: Evidence {
                note: note.into(),
                ..Evidence::default()
            },
        }
    }

    pub fn is_certified_anisotropic(&self) -> bool {
        matches!(self, Decision::CertifiedAnisotropic { .. })
    }

    pub fn is_isotropic(&self) -> bool {
        matches!(self, Decision::IsotropicWitness { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Decision::Unknown { .. })
    }
}

/// The monomial-valuation anisotropy certificate for φ = [[β_k,…,β₁]]
/// (betas[0] is β₁, the quadratic slot). CertifiedAnisotropic when ν(β₁) < 0
/// and the ν̄(βᵢ) are independent; the lemma is sufficient, not necessary,
/// so failures yield Unknown.
pub fn monice_certificate(betas: &[FieldElement], v: &MonomialValuation) -> Decision {
    if betas.is_empty() || betas.iter().any(|b| b.is_zero()) {
        return Decision::unknown("monice: empty or zero slot");
    }
    let mut values = Vec::with_capacity(betas.len());
    for b in betas {
        match v.value(b) {
            Ok(val) => values.push(val),
            Err(_) => return Decision::unknown("monice: valuation undefined"),
        }
    }
    let beta1_negative = v.is_negative(&betas[0]).unwrap_or(false);
    let classes: Vec<GammaClass> = values.iter().map(|x| GammaClass::from_vector(x)).collect();
    let rank = GammaSubgroup::span(v.rank(), &classes).rank();
    let cert = MoniceCertificate {
        betas: betas.to_vec(),
        values,
        beta1_negative,
        matrix_rank: rank,
    };
    if cert.holds() {
        Decision::CertifiedAnisotropic {
            certificate: Certificate::Monice(cert),
        }
    } else {
        Decision::unknown(format!(
            "monice hypotheses fail: nu(beta1) negative = {}, rank = {} of {}",
            cert.beta1_negative,
            cert.matrix_rank,
            cert.betas.len()
        ))
    }
}

/// The monice β-list of a symbol ((e₁,…,eₙ)) viewed as
/// [[e₁,…,e_{n−1}, e₁⋯eₙ]]: the quadratic slot first, then the bilinear
/// generators.
pub fn monice_betas_of_symbol(psi: &QPfisterSymbol) -> Vec<FieldElement> {
    let ctx = psi.ctx();
    let n = psi.fold();
    let mut out = Vec::with_capacity(n);
    out.push(FieldElement::product(ctx, psi.entries()));
    out.extend_from_slice(&psi.entries()[..n - 1]);
    out
}

/// ν̄(D(φ)) for a certified monice instance: the span of the ν̄(βᵢ).
pub fn value_set_mod2(
    betas: &[FieldElement],
    v: &MonomialValuation,
) -> Result<GammaSubgroup, OracleError> {
    if betas.is_empty() {
        return Ok(GammaSubgroup::zero(v.rank()));
    }
    match monice_certificate(betas, v) {
        Decision::CertifiedAnisotropic {
            certificate: Certificate::Monice(cert),
        } => Ok(cert.value_subgroup(v.rank())),
        _ => Err(OracleError::HypothesesNotVerified(
            "value_set_mod2 requires the monice hypotheses".into(),
        )),
    }
}

/// Common-subform obstruction: when ⋂ᵢ ν̄(D(ψᵢ)) = 0 in Γ/2Γ, no
/// 2-dimensional form is a common subform of the certified ψᵢ (any common
/// restriction would have a zero class in every ν̄(D(ψᵢ)), contradicting
/// the per-form nonvanishing on 2-dimensional subspaces).
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub certificates: Vec<MoniceCertificate>,
    pub value_sets: Vec<GammaSubgroup>,
    pub intersection: GammaSubgroup,
    pub obstructed: bool,
}

pub fn common_subform_obstruction(
    psis: &[QPfisterSymbol],
    v: &MonomialValuation,
) -> Result<ObstructionReport, OracleError> {
    let mut certificates = Vec::with_capacity(psis.len());
    let mut value_sets = Vec::with_capacity(psis.len());
    for psi in psis {
        let betas = monice_betas_of_symbol(psi);
        match monice_certificate(&betas, v) {
            Decision::CertifiedAnisotropic {
                certificate: Certificate::Monice(cert),
            } => {
                value_sets.push(cert.value_subgroup(v.rank()));
                certificates.push(cert);
            }
            _ => {
                return Err(OracleError::HypothesesNotVerified(format!(
                    "form {psi} is not monice-certified"
                )));
            }
        }
    }
    let mut intersection = match value_sets.first() {
        Some(first) => first.clone(),
        None => GammaSubgroup::zero(v.rank()),
    };
    for s in &value_sets[1..] {
        intersection = intersection.intersect(s);
    }
    let obstructed = intersection.is_zero();
    Ok(ObstructionReport {
        certificates,
        value_sets,
        intersection,
        obstructed,
    })
}

/// Discrete-valuation certificate for α[1,β] ⊥ [1,γ]: CertifiedAnisotropic
/// when ν(β) = ν(γ) < 0 and ν̄(α), ν̄(β) are independent; else Unknown.
pub fn monice2_certificate(
    alpha: &FieldElement,
    beta: &FieldElement,
    gamma: &FieldElement,
    v: &MonomialValuation,
) -> Decision {
    if alpha.is_zero() || beta.is_zero() || gamma.is_zero() {
        return Decision::unknown("monice2: zero coefficient");
    }
    let (vb, vg, va) = match (v.value(beta), v.value(gamma), v.value(alpha)) {
        (Ok(b), Ok(g), Ok(a)) => (b, g, a),
        _ => return Decision::unknown("monice2: valuation undefined"),
    };
    let negative = v.is_negative(beta).unwrap_or(false);
    let rank = GammaSubgroup::span(
        v.rank(),
        &[GammaClass::from_vector(&va), GammaClass::from_vector(&vb)],
    )
    .rank();
    if vb == vg && negative && rank == 2 {
        Decision::CertifiedAnisotropic {
            certificate: Certificate::Monice2(Monice2Certificate {
                alpha: alpha.clone(),
                beta: beta.clone(),
                gamma: gamma.clone(),
                value_beta: vb,
                value_gamma: vg,
                matrix_rank: rank,
            }),
        }
    } else {
        Decision::unknown(format!(
            "monice2 hypotheses fail: nu(beta)=nu(gamma) is {}, negative is {negative}, rank {rank}",
            vb == vg
        ))
    }
}

/// Generalized value-disjointness certificate for ⊥ᵢ cᵢ[1,dᵢ] (⊥ ⟨1⟩).
pub fn value_disjoint_certificate(
    blocks: &[(FieldElement, FieldElement)],
    with_unit: bool,
    v: &MonomialValuation,
) -> Decision {
    if blocks.is_empty() {
        return Decision::unknown("value-disjoint: no blocks");
    }
    let mut classes: Vec<Vec<GammaClass>> = vec![];
    for (c, d) in blocks {
        if c.is_zero() || d.is_zero() {
            return Decision::unknown("value-disjoint: zero coefficient");
        }
        let (vc, vd) = match (v.value_mod2(c), v.value_mod2(d)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Decision::unknown("value-disjoint: valuation undefined"),
        };
        if !v.is_negative(d).unwrap_or(false) {
            return Decision::unknown("value-disjoint: slot has non-negative value");
        }
        if vd.is_zero() {
            return Decision::unknown("value-disjoint: slot value in 2Γ");
        }
        classes.push(vec![vc, vc.add(&vd)]);
    }
    if with_unit {
        classes.push(vec![GammaClass::zero(v.rank())]);
    }
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            for x in &classes[i] {
                if classes[j].contains(x) {
                    return Decision::unknown(format!(
                        "value-disjoint: classes of blocks {i} and {j} intersect"
                    ));
                }
            }
        }
    }
    if with_unit {
        classes.pop();
    }
    Decision::CertifiedAnisotropic {
        certificate: Certificate::ValueDisjoint(ValueDisjointCertificate {
            blocks: blocks.to_vec(),
            with_unit,
            classes,
        }),
    }
}

/// Search configuration for isotropy witnesses.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Total degree bound for polynomial coordinates.
    pub degree_bound: u16,
    pub seed: u64,
    /// Random samples once the exhaustive space is too large.
    pub trials: u64,
    /// Exhaustive enumeration is used while (#monomials · dim) stays at or
    /// below this bit count.
    pub exhaustive_bit_cap: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            degree_bound: 2,
            seed: 0,
            trials: 10_000,
            exhaustive_bit_cap: 20,
        }
    }
}

fn monomials_up_to(ctx: &Ctx, degree: u16) -> Vec<Poly> {
    let m = ctx.nvars();
    let mut exps: Vec<Vec<u16>> = vec![vec![]];
    for _ in 0..m {
        let mut next = vec![];
        for e in &exps {
            let used: u16 = e.iter().sum();
            for d in 0..=(degree - used) {
                let mut e2 = e.clone();
                e2.push(d);
                next.push(e2);
            }
        }
        exps = next;
    }
    exps.sort();
    exps.into_iter()
        .map(|e| Poly::monomial(ctx, e, 1))
        .collect()
}

/// Search for an isotropic vector with polynomial coordinates over F2
/// coefficients of bounded total degree: exhaustive while the space is
/// small, constant-coordinate enumeration plus seeded random sampling
/// beyond. The first witness in the fixed enumeration order wins, so the
/// outcome is seed-deterministic.
pub fn isotropy_search(form: &QuadraticForm, cfg: &SearchConfig) -> Decision {
    let ctx = form.ctx().clone();
    let dim = form.dimension();
    if dim == 0 {
        return Decision::unknown("empty form");
    }
    let monos = monomials_up_to(&ctx, cfg.degree_bound);
    let bits_total = (monos.len() * dim) as u32;

    let eval_candidate = |coords: &[FieldElement]| -> Option<Witness> {
        Witness::checked(form, coords.to_vec())
    };

    if bits_total <= cfg.exhaustive_bit_cap {
        // Full enumeration over F2 coefficient masks.
        let per = monos.len();
        for mask in 1u64..(1u64 << bits_total) {
            let coords: Vec<FieldElement> = (0..dim)
                .map(|i| {
                    let mut p = Poly::zero(&ctx);
                    for (j, mono) in monos.iter().enumerate() {
                        if (mask >> (i * per + j)) & 1 == 1 {
                            p = p.add(mono);
                        }
                    }
                    FieldElement::from_poly(p)
                })
                .collect();
            if let Some(w) = eval_candidate(&coords) {
                return Decision::IsotropicWitness { witness: w };
            }
        }
        return Decision::Unknown {
            evidence: Evidence {
                note: "exhaustive search found no witness".into(),
                trials: (1u64 << bits_total) - 1,
                seed: None,
                degree_bound: Some(cfg.degree_bound),
                exhaustive: true,
            },
        };
    }

    // Tier 0: constant coordinates over F2.
    if dim <= 20 {
        for mask in 1u64..(1u64 << dim) {
            let coords: Vec<FieldElement> = (0..dim)
                .map(|i| {
                    if (mask >> i) & 1 == 1 {
                        FieldElement::one(&ctx)
                    } else {
                        FieldElement::zero(&ctx)
                    }
                })
                .collect();
            if let Some(w) = eval_candidate(&coords) {
                return Decision::IsotropicWitness { witness: w };
            }
        }
    }
    // Seeded random sampling of sparse polynomial coordinates.
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.trials {
        let coords: Vec<FieldElement> = (0..dim)
            .map(|_| {
                let mut p = Poly::zero(&ctx);
                for _ in 0..rng.gen_range(0..=2u32) {
                    let j = rng.gen_range(0..monos.len());
                    p = p.add(&monos[j]);
                }
                FieldElement::from_poly(p)
            })
            .collect();
        if let Some(w) = eval_candidate(&coords) {
            return Decision::IsotropicWitness { witness: w };
        }
    }
    Decision::Unknown {
        evidence: Evidence {
            note: "sampled search found no witness".into(),
            trials: cfg.trials,
            seed: Some(cfg.seed),
            degree_bound: Some(cfg.degree_bound),
            exhaustive: false,
        },
    }
}

/// Outcome of an all-pass specialization run.
#[derive(Clone, Debug, Serialize)]
pub struct WittEvidence {
    pub trials: u64,
    pub seed: u64,
    pub poles_skipped: u64,
    pub exhaustive: bool,
}

/// Sample specializations of the orthogonal sum of `forms` and check that
/// each one is Witt-zero over the base finite field. A single failure
/// refutes the claim (hard error); all-pass is evidence only. Poles are
/// skipped by rejection. When the whole point space is at most `trials`
/// points the run is exhaustive.
pub fn witt_zero_evidence(
    forms: &[QuadraticForm],
    trials: u64,
    seed: u64,
) -> Result<WittEvidence, RefutedBySpecialization> {
    assert!(!forms.is_empty(), "no forms to specialize");
    let ctx = forms[0].ctx().clone();
    let q = ctx.field().order() as u64;
    let m = ctx.nvars() as u32;
    let space: Option<u64> = q.checked_pow(m).filter(|s| *s <= trials);
    let mut poles = 0u64;
    let mut done = 0u64;

    let check = |point: &[Ff]| -> Result<bool, RefutedBySpecialization> {
        let mut total = crate::quadform::FfForm::new(ctx.field(), vec![]);
        for f in forms {
            match f.specialize(point) {
                Ok(ff) => total = total.orth_sum(&ff),
                Err(_) => return Ok(false), // pole
            }
        }
        let witt = total
            .witt_decompose()
            .expect("symbol expansions are nonsingular");
        if witt.dim_anisotropic != 0 {
            return Err(RefutedBySpecialization {
                point: point.to_vec(),
                witt,
            });
        }
        Ok(true)
    };

    if let Some(space) = space {
        for idx in 0..space {
            let mut point = vec![0 as Ff; m as usize];
            let mut t = idx;
            for slot in point.iter_mut() {
                *slot = (t % q) as Ff;
                t /= q;
            }
            if check(&point)? {
                done += 1;
            } else {
                poles += 1;
            }
        }
        return Ok(WittEvidence {
            trials: done,
            seed,
            poles_skipped: poles,
            exhaustive: true,
        });
    }

    let mut rng = StdRng::seed_from_u64(seed);
    let budget = trials.saturating_mul(100);
    let mut attempts = 0u64;
    while done < trials {
        attempts += 1;
        if attempts > budget {
            break;
        }
        let point: Vec<Ff> = (0..m).map(|_| rng.gen_range(0..q) as Ff).collect();
        if check(&point)? {
            done += 1;
        } else {
            poles += 1;
        }
    }
    Ok(WittEvidence {
        trials: done,
        seed,
        poles_skipped: poles,
        exhaustive: false,
    })
}

/// Witt-zero evidence for a formal symbol sum (expansions of all terms).
pub fn specialization_witt_evidence(
    claim: &SymbolSum,
    trials: u64,
    seed: u64,
) -> Result<WittEvidence, RefutedBySpecialization> {
    if claim.terms().is_empty() {
        return Ok(WittEvidence {
            trials,
            seed,
            poles_skipped: 0,
            exhaustive: true,
        });
    }
    witt_zero_evidence(&claim.expand_terms(), trials, seed)
}

/// Evidence that two lists of forms have equal Witt classes: in
/// characteristic 2 a form is its own negative, so equality is the
/// vanishing of the concatenation.
pub fn witt_equal_evidence(
    lhs: &[QuadraticForm],
    rhs: &[QuadraticForm],
    trials: u64,
    seed: u64,
) -> Result<WittEvidence, RefutedBySpecialization> {
    let mut all = lhs.to_vec();
    all.extend(rhs.iter().cloned());
    witt_zero_evidence(&all, trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field2::FieldContext;
    use crate::field2::FiniteField;
    use crate::symbols::mpf_symbol;

    fn ctx(k: u8, vars: &[&str]) -> Ctx {
        FieldContext::new(FiniteField::new(k).unwrap(), vars)
    }

    fn v(c: &Ctx, name: &str) -> FieldElement {
        FieldElement::var_named(c, name).unwrap()
    }

    #[test]
    fn monice_certifies_the_canonical_instance() {
        // ((b,a)) = [[b, ba]] over F2(a,b): betas = (ba, b), values
        // (-1,-1) and (0,-1): negative slot, rank 2 -> certified.
        let c = ctx(1, &["a", "b"]);
        let (a, b) = (v(&c, "a"), v(&c, "b"));
        let val = MonomialValuation::new(&c);
        let betas = vec![b.mul(&a), b.clone()];
        let d = monice_certificate(&betas, &val);
        assert!(d.is_certified_anisotropic(), "{d:?}");
        // beta1 = 1 has value 0, not negative -> Unknown.
        let d = monice_certificate(&[FieldElement::one(&c), b.clone()], &val);
        assert!(d.is_unknown());
        // certified instance: bounded searches find no witness.
        let sym = QPfisterSymbol::new(vec![b.clone(), a.clone()]);
        let form = sym.expand();
        let exhaustive = isotropy_search(
            &form,
            &SearchConfig {
                degree_bound: 1,
                ..SearchConfig::default()
            },
        );
        assert!(exhaustive.is_unknown());
        let sampled = isotropy_search(
            &form,
            &SearchConfig {
                degree_bound: 2,
                seed: 7,
                trials: 4000,
                exhaustive_bit_cap: 12,
            },
        );
        assert!(sampled.is_unknown());
    }

    #[test]
    fn monice_part_one_value_of_vector_is_a_diagonal_value() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let c = ctx(1, &["a", "b"]);
        let (a, b) = (v(&c, "a"), v(&c, "b"));
        let val = MonomialValuation::new(&c);
        let form = QPfisterSymbol::new(vec![b.clone(), a.clone()]).expand();
        let dim = form.dimension();
        let mut rng = StdRng::seed_from_u64(123);
        let mut checked = 0;
        while checked < 1000 {
            let w: Vec<FieldElement> = (0..dim)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        FieldElement::zero(&c)
                    } else {
                        let e = vec![rng.gen_range(0..3u16), rng.gen_range(0..3u16)];
                        FieldElement::from_poly(Poly::monomial(&c, e, 1))
                    }
                })
                .collect();
            if w.iter().all(|x| x.is_zero()) {
                continue;
            }
            let value = form.evaluate(&w).unwrap();
            assert!(!value.is_zero(), "certified form must be anisotropic");
            let vv = val.value(&value).unwrap();
            let mut diag_match = false;
            for i in 0..dim {
                if w[i].is_zero() {
                    continue;
                }
                let mut e = vec![FieldElement::zero(&c); dim];
                e[i] = w[i].clone();
                let dvi = form.evaluate(&e).unwrap();
                if !dvi.is_zero() && val.value(&dvi).unwrap() == vv {
                    diag_match = true;
                    break;
                }
            }
            assert!(diag_match, "nu(phi(w)) equals nu of some diagonal contribution");
            checked += 1;
        }
    }

    #[test]
    fn value_sets_and_obstruction() {
        let c = ctx(1, &["a", "b"]);
        let (a, b) = (v(&c, "a"), v(&c, "b"));
        let val = MonomialValuation::new(&c);
        // single beta = a spans {(1,0)}
        let s = value_set_mod2(&[a.clone()], &val).unwrap();
        assert_eq!(s.rank(), 1);
        assert!(s.contains(&GammaClass { m: 2, bits: 0b01 }));
        // empty list is the zero subgroup
        assert!(value_set_mod2(&[], &val).unwrap().is_zero());
        // uncertified hypotheses are an error
        assert!(value_set_mod2(&[FieldElement::one(&c)], &val).is_err());
        // two identical forms: intersection is the full value group of one,
        // nonzero -> no obstruction.
        let psi = QPfisterSymbol::new(vec![b.clone(), a.clone()]);
        let rep = common_subform_obstruction(&[psi.clone(), psi], &val).unwrap();
        assert!(!rep.obstructed);
        assert_eq!(rep.intersection.rank(), 2);
    }

    #[test]
    fn monice2_matches_realization_example() {
        // K = k(a,b) with the (a⁻¹,b⁻¹)-valuation (ν(a) > ν(b)):
        // a[1,b] ⊥ [1,a+b] is certified anisotropic.
        let c = ctx(1, &["a", "b"]);
        let (a, b) = (v(&c, "a"), v(&c, "b"));
        let val = MonomialValuation::new(&c);
        let d = monice2_certificate(&a, &b, &a.add(&b), &val);
        assert!(d.is_certified_anisotropic(), "{d:?}");
        // gamma of value zero fails the hypotheses.
        let d = monice2_certificate(&a, &b, &FieldElement::one(&c), &val);
        assert!(d.is_unknown());
        // certified instance: degree-2 sampled isotropy search finds nothing.
        let form = QuadraticForm::binary(FieldElement::one(&c), b.clone())
            .scale(&a)
            .unwrap()
            .orth_sum(&QuadraticForm::binary(
                FieldElement::one(&c),
                a.add(&b),
            ));
        let d = isotropy_search(
            &form,
            &SearchConfig {
                degree_bound: 2,
                seed: 1,
                trials: 4000,
                exhaustive_bit_cap: 12,
            },
        );
        assert!(d.is_unknown());
    }

    #[test]
    fn isotropy_search_finds_witnesses() {
        let c = ctx(1, &["a"]);
        let a = v(&c, "a");
        let one = FieldElement::one(&c);
        let zero = FieldElement::zero(&c);
        // H has witness (1,0), the first in enumeration order.
        let h = QuadraticForm::hyperbolic_plane(&c);
        match isotropy_search(&h, &SearchConfig::default()) {
            Decision::IsotropicWitness { witness } => {
                assert_eq!(witness.vector, vec![one.clone(), zero.clone()]);
            }
            other => panic!("expected witness, got {other:?}"),
        }
        // [1,a] ⊥ [1,a]: values cancel at ((1,0),(1,0)).
        let f = QuadraticForm::binary(one.clone(), a.clone());
        let ff = f.orth_sum(&f);
        match isotropy_search(&ff, &SearchConfig::default()) {
            Decision::IsotropicWitness { witness } => {
                assert_eq!(
                    witness.vector,
                    vec![one.clone(), zero.clone(), one.clone(), zero.clone()]
                );
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn specialization_evidence_and_refutation() {
        // Formally-true claim passes 200 trials over F16.
        let c = ctx(4, &["a", "b"]);
        let (a, b) = (v(&c, "a"), v(&c, "b"));
        let claim = SymbolSum::from_symbols(
            &c,
            vec![
                QPfisterSymbol::new(vec![a.clone(), b.clone()]),
                QPfisterSymbol::new(vec![b.clone(), a.clone()]),
            ],
        )
        .unwrap();
        let ev = specialization_witt_evidence(&claim, 200, 11).unwrap();
        assert_eq!(ev.trials, 200);
        // Every 2-fold Pfister form is hyperbolic over a finite field, so
        // fold >= 2 claims cannot be refuted; the refutation path needs a
        // fold-1 claim: [1,a] = 0 is false at any point with Tr(a) = 1.
        let c4 = ctx(2, &["a"]);
        let a4 = v(&c4, "a");
        let one_fold = SymbolSum::singleton(QPfisterSymbol::new(vec![a4]));
        let refuted = specialization_witt_evidence(&one_fold, 100, 3);
        let err = refuted.expect_err("claim is false");
        assert_eq!(err.witt.dim_anisotropic, 2);
        assert!(!c4.field().in_artin_schreier_image(err.witt.arf));
    }

    #[test]
    fn value_disjoint_certificate_generic_albert_prime() {
        // Alb' = b1[1,a1] ⊥ b2[1,a2] ⊥ <1> over F2(a1,a2,b1,b2).
        let c = ctx(1, &["a1", "a2", "b1", "b2"]);
        let blocks = vec![
            (v(&c, "b1"), v(&c, "a1")),
            (v(&c, "b2"), v(&c, "a2")),
        ];
        let val = MonomialValuation::new(&c);
        let d = value_disjoint_certificate(&blocks, true, &val);
        assert!(d.is_certified_anisotropic(), "{d:?}");
        // Overlapping classes yield Unknown: b2 = b1.
        let blocks = vec![
            (v(&c, "b1"), v(&c, "a1")),
            (v(&c, "b1"), v(&c, "a1")),
        ];
        assert!(value_disjoint_certificate(&blocks, true, &val).is_unknown());
    }

    #[test]
    fn mpf_symbol_betas_roundtrip() {
        let c = ctx(1, &["a", "b", "g"]);
        let (a, b, g) = (v(&c, "a"), v(&c, "b"), v(&c, "g"));
        let sym = mpf_symbol(&c, &[g.clone(), b.clone()], &a).unwrap();
        let betas = monice_betas_of_symbol(&sym);
        // slot first: product of all entries = g·b·(a/(gb)) = a
        assert_eq!(betas[0], a);
        assert_eq!(&betas[1..], &[g, b]);
    }
}
