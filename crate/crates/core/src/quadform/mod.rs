//! Quadratic and bilinear forms as block sums: evaluation, orthogonal
//! operations, scaling, Pfister tensor products, the Arf invariant, and
//! Witt-index lower bounds by sound block rewriting.
//!
//! A form is an orthogonal sum of unary blocks ⟨a⟩ (value a·u²) and binary
//! blocks [a,b] (value a·u₁² + u₁u₂ + b·u₂²). In characteristic 2 a form is
//! nonsingular exactly when it has no unary blocks.

pub mod ffq;

use std::fmt;

use thiserror::Error;

use crate::field2::{assert_same_ctx, Ctx, Field2Error, FieldElement};

pub use ffq::{FfBlock, FfForm, WittClassFinite};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuadformError {
    #[error("vector length {got} does not match form dimension {want}")]
    DimensionMismatch { want: usize, got: usize },
    #[error("scaling by zero is not allowed")]
    ZeroScalar,
    #[error("bilinear diagonal entries must be nonzero")]
    ZeroEntry,
    #[error("operation requires a nonsingular form (no unary blocks)")]
    SingularForm,
    #[error("bilinear diagonal is not of Pfister shape")]
    NotPfisterShape,
    #[error("form has non-constant coefficients (finite-field operation)")]
    NotConstant,
    #[error(transparent)]
    Field(#[from] Field2Error),
}

/// One orthogonal block of a quadratic form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    Unary(FieldElement),
    Binary(FieldElement, FieldElement),
}

impl Block {
    pub fn dimension(&self) -> usize {
        match self {
            Block::Unary(_) => 1,
            Block::Binary(_, _) => 2,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    ctx: Ctx,
    blocks: Vec<Block>,
}

impl QuadraticForm {
    pub fn empty(ctx: &Ctx) -> Self {
        QuadraticForm {
            ctx: ctx.clone(),
            blocks: vec![],
        }
    }

    pub fn from_blocks(ctx: &Ctx, blocks: Vec<Block>) -> Self {
        QuadraticForm {
            ctx: ctx.clone(),
            blocks,
        }
    }

    pub fn unary(a: FieldElement) -> Self {
        let ctx = a.ctx().clone();
        QuadraticForm {
            ctx,
            blocks: vec![Block::Unary(a)],
        }
    }

    pub fn binary(a: FieldElement, b: FieldElement) -> Self {
        assert_same_ctx(a.ctx(), b.ctx());
        let ctx = a.ctx().clone();
        QuadraticForm {
            ctx,
            blocks: vec![Block::Binary(a, b)],
        }
    }

    /// The hyperbolic plane H = [0,0].
    pub fn hyperbolic_plane(ctx: &Ctx) -> Self {
        Self::binary(FieldElement::zero(ctx), FieldElement::zero(ctx))
    }

    /// n × H.
    pub fn hyperbolic(ctx: &Ctx, n: usize) -> Self {
        let blocks = (0..n)
            .map(|_| Block::Binary(FieldElement::zero(ctx), FieldElement::zero(ctx)))
            .collect();
        QuadraticForm {
            ctx: ctx.clone(),
            blocks,
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.dimension()).sum()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.blocks.iter().all(|b| matches!(b, Block::Binary(_, _)))
    }

    /// Block-wise sum of quadratic values.
    pub fn evaluate(&self, w: &[FieldElement]) -> Result<FieldElement, QuadformError> {
        if w.len() != self.dimension() {
            return Err(QuadformError::DimensionMismatch {
                want: self.dimension(),
                got: w.len(),
            });
        }
        let mut acc = FieldElement::zero(&self.ctx);
        let mut i = 0;
        for block in &self.blocks {
            match block {
                Block::Unary(a) => {
                    acc = acc.add(&a.mul(&w[i].square()));
                    i += 1;
                }
                Block::Binary(a, b) => {
                    let (u, v) = (&w[i], &w[i + 1]);
                    acc = acc.add(&a.mul(&u.square()));
                    acc = acc.add(&u.mul(v));
                    acc = acc.add(&b.mul(&v.square()));
                    i += 2;
                }
            }
        }
        Ok(acc)
    }

    /// Orthogonal sum: block concatenation.
    pub fn orth_sum(&self, other: &QuadraticForm) -> QuadraticForm {
        assert_same_ctx(&self.ctx, &other.ctx);
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        QuadraticForm {
            ctx: self.ctx.clone(),
            blocks,
        }
    }

    /// Scalar multiple: c·[a,b] = [ca, b/c] (isometric under
    /// (u₁,u₂) ↦ (u₁, c·u₂)) and c·⟨a⟩ = ⟨ca⟩.
    pub fn scale(&self, c: &FieldElement) -> Result<QuadraticForm, QuadformError> {
        if c.is_zero() {
            return Err(QuadformError::ZeroScalar);
        }
        let blocks = self
            .blocks
            .iter()
            .map(|block| match block {
                Block::Unary(a) => Block::Unary(c.mul(a)),
                Block::Binary(a, b) => {
                    Block::Binary(c.mul(a), b.div(c).expect("nonzero scalar"))
                }
            })
            .collect();
        Ok(QuadraticForm {
            ctx: self.ctx.clone(),
            blocks,
        })
    }

    /// Arf invariant Δ(⊥[aᵢ,bᵢ]) = Σ aᵢbᵢ, defined modulo ℘(F).
    pub fn arf(&self) -> Result<FieldElement, QuadformError> {
        if !self.is_nonsingular() {
            return Err(QuadformError::SingularForm);
        }
        let mut acc = FieldElement::zero(&self.ctx);
        for block in &self.blocks {
            if let Block::Binary(a, b) = block {
                acc = acc.add(&a.mul(b));
            }
        }
        Ok(acc)
    }

    /// Specialize every coefficient at a point, yielding a form over the
    /// base finite field. PoleAtPoint if any denominator vanishes.
    pub fn specialize(&self, point: &[crate::field2::Ff]) -> Result<FfForm, Field2Error> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for block in &self.blocks {
            blocks.push(match block {
                Block::Unary(a) => FfBlock::Unary(a.eval(point)?),
                Block::Binary(a, b) => FfBlock::Binary(a.eval(point)?, b.eval(point)?),
            });
        }
        Ok(FfForm::new(self.ctx.field(), blocks))
    }

    /// View a form whose coefficients are all constants as a finite-field
    /// form; errors otherwise (Witt machinery is finite-field only).
    pub fn constants_only(&self) -> Result<FfForm, QuadformError> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for block in &self.blocks {
            blocks.push(match block {
                Block::Unary(a) => FfBlock::Unary(
                    a.as_polynomial()
                        .and_then(|p| p.constant_value())
                        .ok_or(QuadformError::NotConstant)?,
                ),
                Block::Binary(a, b) => {
                    let av = a
                        .as_polynomial()
                        .and_then(|p| p.constant_value())
                        .ok_or(QuadformError::NotConstant)?;
                    let bv = b
                        .as_polynomial()
                        .and_then(|p| p.constant_value())
                        .ok_or(QuadformError::NotConstant)?;
                    FfBlock::Binary(av, bv)
                }
            });
        }
        Ok(FfForm::new(self.ctx.field(), blocks))
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(out, "(empty form)");
        }
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(out, " _|_ ")?;
            }
            match block {
                Block::Unary(a) => write!(out, "<{a}>")?,
                Block::Binary(a, b) => write!(out, "[{a},{b}]")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

/// Diagonal symmetric bilinear form ⟨α₁,…,αₙ⟩; entries nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearDiag {
    entries: Vec<FieldElement>,
}

impl BilinearDiag {
    pub fn new(entries: Vec<FieldElement>) -> Result<Self, QuadformError> {
        if entries.iter().any(|e| e.is_zero()) {
            return Err(QuadformError::ZeroEntry);
        }
        assert!(!entries.is_empty(), "empty bilinear diagonal");
        Ok(BilinearDiag { entries })
    }

    /// The bilinear Pfister form ⟨⟨g₁,…,g_s⟩⟩ = ⟨1,g₁⟩⊗⋯⊗⟨1,g_s⟩, with
    /// entries in subset-product order (index mask t ↦ ∏_{i∈t} gᵢ).
    pub fn pfister(ctx: &Ctx, gens: &[FieldElement]) -> Result<Self, QuadformError> {
        if gens.iter().any(|g| g.is_zero()) {
            return Err(QuadformError::ZeroEntry);
        }
        let mut entries = Vec::with_capacity(1 << gens.len());
        for mask in 0u32..(1 << gens.len()) {
            let mut prod = FieldElement::one(ctx);
            for (i, g) in gens.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    prod = prod.mul(g);
                }
            }
            entries.push(prod);
        }
        Ok(BilinearDiag { entries })
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn fold(&self) -> Option<u32> {
        let n = self.entries.len();
        if n.is_power_of_two() {
            Some(n.trailing_zeros())
        } else {
            None
        }
    }

    /// Pfister shape: 2^m entries, the first of which is 1.
    pub fn is_pfister_shape(&self) -> bool {
        self.fold().is_some() && self.entries[0].is_one()
    }

    /// Pure part b′ with b = ⟨1⟩ ⊥ b′.
    pub fn pure_part(&self) -> Result<Vec<FieldElement>, QuadformError> {
        if !self.is_pfister_shape() {
            return Err(QuadformError::NotPfisterShape);
        }
        Ok(self.entries[1..].to_vec())
    }

    /// ⟨β₁,…,βₙ⟩ ⊗ φ = β₁φ ⊥ ⋯ ⊥ βₙφ.
    pub fn tensor(&self, form: &QuadraticForm) -> Result<QuadraticForm, QuadformError> {
        let mut out = QuadraticForm::empty(form.ctx());
        for e in &self.entries {
            out = out.orth_sum(&form.scale(e)?);
        }
        Ok(out)
    }
}

/// ⟨β₁,…,βₙ⟩ ⊗ φ.
pub fn tensor_bilinear(
    b: &BilinearDiag,
    form: &QuadraticForm,
) -> Result<QuadraticForm, QuadformError> {
    b.tensor(form)
}

/// The quadratic n-fold Pfister form [[g₁,…,g_{n−1}, δ]] =
/// ⟨⟨g₁,…,g_{n−1}⟩⟩ ⊗ [1, δ].
pub fn mpf(ctx: &Ctx, gens: &[FieldElement], slot: &FieldElement) -> Result<QuadraticForm, QuadformError> {
    let base = QuadraticForm::binary(FieldElement::one(ctx), slot.clone());
    if gens.is_empty() {
        return Ok(base);
    }
    BilinearDiag::pfister(ctx, gens)?.tensor(&base)
}

/// Pure subform of φ = b ⊗ [[β,α]] (b a bilinear Pfister diagonal):
/// φ′ = b′ ⊗ [1,α] ⊥ b ⊗ ⟨β⟩ ⊗ [1,α] ⊥ ⟨1⟩, of dimension dim(φ) − 1.
pub fn pure_subform(
    b: &BilinearDiag,
    beta: &FieldElement,
    alpha: &FieldElement,
) -> Result<QuadraticForm, QuadformError> {
    let ctx = beta.ctx().clone();
    if beta.is_zero() {
        return Err(QuadformError::ZeroEntry);
    }
    let pure = b.pure_part()?;
    let unit = QuadraticForm::binary(FieldElement::one(&ctx), alpha.clone());
    let mut out = QuadraticForm::empty(&ctx);
    for e in &pure {
        out = out.orth_sum(&unit.scale(e)?);
    }
    for e in b.entries() {
        out = out.orth_sum(&unit.scale(&e.mul(beta))?);
    }
    Ok(out.orth_sum(&QuadraticForm::unary(FieldElement::one(&ctx))))
}

/// Result of the sound block-rewriting lower bound for the Witt index.
#[derive(Clone, Debug)]
pub struct WittLowerBound {
    /// Number of hyperbolic planes extracted; i_W(φ) is at least this.
    pub planes: usize,
    /// What is left after extraction (Witt-equivalent to φ up to the
    /// extracted planes; singular blocks are carried through).
    pub residual: QuadraticForm,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field2::{Ff, FieldContext, FiniteField};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ctx(k: u8, vars: &[&str]) -> Ctx {
        FieldContext::new(FiniteField::new(k).unwrap(), vars)
    }

    fn v(c: &Ctx, name: &str) -> FieldElement {
        FieldElement::var_named(c, name).unwrap()
    }

    #[test]
    fn orth_sum_examples() {
        let c = ctx(1, &["a", "b"]);
        let one = FieldElement::one(&c);
        let f = QuadraticForm::binary(one.clone(), v(&c, "a"))
            .orth_sum(&QuadraticForm::binary(one.clone(), v(&c, "b")));
        assert_eq!(f.dimension(), 4);
        assert!(f.is_nonsingular());
        assert_eq!(f.orth_sum(&QuadraticForm::empty(&c)), f);
    }

    #[test]
    fn unary_pair_value_sets_agree() {
        // <1> ⊥ <1> and <1> ⊥ <0> attain the same values (u₂ ↦ u₁+u₂).
        for k in [1u8, 2, 4] {
            let f = FiniteField::new(k).unwrap();
            let a = FfForm::new(f, vec![FfBlock::Unary(1), FfBlock::Unary(1)]);
            let b = FfForm::new(f, vec![FfBlock::Unary(1), FfBlock::Unary(0)]);
            assert_eq!(a.value_set(), b.value_set());
        }
    }

    #[test]
    fn scale_examples() {
        let c = ctx(1, &["a", "b", "u1", "u2"]);
        let (a, b) = (v(&c, "a"), v(&c, "b"));
        let form = QuadraticForm::binary(FieldElement::one(&c), a.clone());
        // scale(1, φ) = φ
        assert_eq!(form.scale(&FieldElement::one(&c)).unwrap(), form);
        // scale(b, [1,a]) = [b, a/b], pointwise equal to b·[1,a] under
        // (u₁,u₂) ↦ (u₁, b·u₂) — exact symbolic identity.
        let scaled = form.scale(&b).unwrap();
        assert_eq!(
            scaled,
            QuadraticForm::binary(b.clone(), a.div(&b).unwrap())
        );
        let (u1, u2) = (v(&c, "u1"), v(&c, "u2"));
        let lhs = scaled.evaluate(&[u1.clone(), b.mul(&u2)]).unwrap();
        let rhs = b.mul(&form.evaluate(&[u1, u2]).unwrap());
        assert_eq!(lhs, rhs);
        // scaling by a zero scalar is rejected
        assert_eq!(
            form.scale(&FieldElement::zero(&c)),
            Err(QuadformError::ZeroScalar)
        );
    }

    #[test]
    fn square_scaling_is_isometric_value_sets_over_f16() {
        let f = FiniteField::new(4).unwrap();
        for c in 1..f.order() as Ff {
            let c2 = f.mul(c, c);
            for d in f.elements() {
                let plain = FfForm::new(f, vec![FfBlock::Binary(1, d)]);
                // c²·[1,d] = [c², d/c²]
                let scaled = FfForm::new(f, vec![FfBlock::Binary(c2, f.div(d, c2))]);
                assert_eq!(plain.value_set(), scaled.value_set());
            }
        }
    }

    #[test]
    fn tensor_examples() {
        let c = ctx(1, &["a", "g", "d"]);
        let (a, g) = (v(&c, "a"), v(&c, "g"));
        let one = FieldElement::one(&c);
        // <1,g> ⊗ [1,a] is the 2-fold Pfister form [[g,a]], dimension 4.
        let b = BilinearDiag::new(vec![one.clone(), g.clone()]).unwrap();
        let form = b.tensor(&QuadraticForm::binary(one.clone(), a.clone())).unwrap();
        assert_eq!(form, mpf(&c, &[g.clone()], &a).unwrap());
        assert_eq!(form.dimension(), 4);
        // <1> ⊗ φ = φ
        let triv = BilinearDiag::new(vec![one.clone()]).unwrap();
        let any = QuadraticForm::binary(a.clone(), g.clone());
        assert_eq!(triv.tensor(&any).unwrap(), any);
        // <1,1> ⊗ [1,d] has Witt index 2 (doubling), already by rewriting.
        let dbl = BilinearDiag::new(vec![one.clone(), one.clone()]).unwrap();
        let dd = dbl
            .tensor(&QuadraticForm::binary(one.clone(), v(&c, "d")))
            .unwrap();
        assert_eq!(witt_index_lower_bound(&dd).planes, 2);
        // zero entries are rejected
        assert!(BilinearDiag::new(vec![one, FieldElement::zero(&c)]).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let c = ctx(1, &["a", "g"]);
        let (a, g) = (v(&c, "a"), v(&c, "g"));
        let one = FieldElement::one(&c);
        let zero = FieldElement::zero(&c);
        let form = QuadraticForm::binary(one.clone(), a.clone());
        assert_eq!(form.evaluate(&[one.clone(), zero.clone()]).unwrap(), one);
        assert_eq!(form.evaluate(&[zero.clone(), one.clone()]).unwrap(), a);
        assert!(matches!(
            form.evaluate(&[one.clone()]),
            Err(QuadformError::DimensionMismatch { want: 2, got: 1 })
        ));
        // [[g,a]] = [1,a] ⊥ [g, a/g]: the last coordinate vector gives a/g
        // in normalized blocks, and γ·α at (0,0,0,γ) after the basis change.
        let pf = mpf(&c, &[g.clone()], &a).unwrap();
        let at = |w: &[FieldElement]| pf.evaluate(w).unwrap();
        assert_eq!(
            at(&[zero.clone(), zero.clone(), zero.clone(), one.clone()]),
            a.div(&g).unwrap()
        );
        assert_eq!(
            at(&[zero.clone(), zero.clone(), zero.clone(), g.clone()]),
            g.mul(&a)
        );
    }

    #[test]
    fn arf_examples() {
        let c = ctx(1, &["a", "g"]);
        let (a, g) = (v(&c, "a"), v(&c, "g"));
        let one = FieldElement::one(&c);
        assert_eq!(
            QuadraticForm::binary(one.clone(), a.clone()).arf().unwrap(),
            a
        );
        assert!(QuadraticForm::hyperbolic_plane(&c).arf().unwrap().is_zero());
        assert_eq!(
            QuadraticForm::unary(one.clone()).arf(),
            Err(QuadformError::SingularForm)
        );
        // Δ([[g,a]]) lands in ℘ under every specialization (it is in I_q²);
        // with [ca, b/c] blocks the Arf invariant is a·g/g + ... = 0 exactly.
        let pf = mpf(&c, &[g.clone()], &a).unwrap();
        assert!(pf.arf().unwrap().is_zero());
        // Δ is additive and exactly preserved by scaling.
        let form = QuadraticForm::binary(a.clone(), g.clone());
        let scaled = form.scale(&a.add(&g)).unwrap();
        assert_eq!(scaled.arf().unwrap(), form.arf().unwrap());
    }

    #[test]
    fn pure_subform_shapes() {
        let c = ctx(1, &["a", "b", "g"]);
        let (a, b, g) = (v(&c, "a"), v(&c, "b"), v(&c, "g"));
        let one = FieldElement::one(&c);
        // n = 2 (b = <1>): φ' of [[b,a]] is b[1,a] ⊥ <1>, dimension 3.
        let trivial = BilinearDiag::new(vec![one.clone()]).unwrap();
        let p = pure_subform(&trivial, &b, &a).unwrap();
        let expect = QuadraticForm::binary(one.clone(), a.clone())
            .scale(&b)
            .unwrap()
            .orth_sum(&QuadraticForm::unary(one.clone()));
        assert_eq!(p, expect);
        assert_eq!(p.dimension(), 3);
        // n = 3 (b = <1,g>): dim(φ') = 2³ − 1 = 7.
        let bg = BilinearDiag::pfister(&c, &[g.clone()]).unwrap();
        let p3 = pure_subform(&bg, &b, &a).unwrap();
        assert_eq!(p3.dimension(), 7);
        // non-Pfister diagonals are rejected
        let bad = BilinearDiag::new(vec![g.clone()]).unwrap();
        assert_eq!(
            pure_subform(&bad, &b, &a).unwrap_err(),
            QuadformError::NotPfisterShape
        );
    }

    #[test]
    fn witt_lower_bound_examples() {
        let c = ctx(1, &["a", "b", "g"]);
        let (a, b, g) = (v(&c, "a"), v(&c, "b"), v(&c, "g"));
        let one = FieldElement::one(&c);
        // H ⊥ H → ≥ 2
        let hh = QuadraticForm::hyperbolic(&c, 2);
        assert_eq!(witt_index_lower_bound(&hh).planes, 2);
        // [1,a] ⊥ [1,a] → ≥ 1 (the rewriting in fact extracts both planes)
        let f = QuadraticForm::binary(one.clone(), a.clone());
        let lb = witt_index_lower_bound(&f.orth_sum(&f));
        assert!(lb.planes >= 1);
        // Residual θ for φ = [[b,a]], ψ = [[g,a]]: pure subforms leave
        // <1> ⊥ (<b,g> ⊗ [1,a]) ⊥ <0> exposed with no plane extracted.
        let trivial = BilinearDiag::new(vec![one.clone()]).unwrap();
        let fp = pure_subform(&trivial, &b, &a).unwrap();
        let gp = pure_subform(&trivial, &g, &a).unwrap();
        let lb = witt_index_lower_bound(&fp.orth_sum(&gp));
        assert_eq!(lb.planes, 0);
        let base = QuadraticForm::binary(one.clone(), a.clone());
        let theta_binaries: Vec<Block> = base
            .scale(&b)
            .unwrap()
            .orth_sum(&base.scale(&g).unwrap())
            .blocks()
            .to_vec();
        for blk in theta_binaries {
            assert!(lb.residual.blocks().contains(&blk));
        }
        assert!(lb.residual.blocks().contains(&Block::Unary(one.clone())));
        assert!(lb
            .residual
            .blocks()
            .contains(&Block::Unary(FieldElement::zero(&c))));
    }

    #[test]
    fn lower_bound_is_sound_under_specialization() {
        // planes never exceed the exact finite-field Witt index.
        let c = ctx(2, &["a", "b"]);
        let mut rng = StdRng::seed_from_u64(99);
        let q = c.field().order() as u16;
        let rand_fe = |rng: &mut StdRng, c: &Ctx| {
            let mut p = crate::field2::Poly::zero(c);
            for _ in 0..rng.gen_range(0..3) {
                let exp: Vec<u16> = (0..c.nvars()).map(|_| rng.gen_range(0..2)).collect();
                let coeff = rng.gen_range(0..q);
                p = p.add(&crate::field2::Poly::monomial(c, exp, coeff));
            }
            FieldElement::from_poly(p)
        };
        for _ in 0..200 {
            let nblocks = rng.gen_range(1..=3);
            let blocks: Vec<Block> = (0..nblocks)
                .map(|_| Block::Binary(rand_fe(&mut rng, &c), rand_fe(&mut rng, &c)))
                .collect();
            let form = QuadraticForm::from_blocks(&c, blocks);
            let lb = witt_index_lower_bound(&form);
            for _ in 0..10 {
                let point: Vec<Ff> = (0..c.nvars()).map(|_| rng.gen_range(0..q)).collect();
                let Ok(ff) = form.specialize(&point) else {
                    continue;
                };
                let exact = ff.witt_index_exact().unwrap();
                assert!(
                    lb.planes <= exact,
                    "lower bound {} exceeds exact Witt index {exact} for {form}",
                    lb.planes
                );
            }
        }
    }

    #[test]
    fn specialization_commutes_with_evaluation() {
        let c = ctx(2, &["a", "b"]);
        let (a, b) = (v(&c, "a"), v(&c, "b"));
        let one = FieldElement::one(&c);
        let form = QuadraticForm::binary(a.clone(), b.clone())
            .orth_sum(&QuadraticForm::unary(one.clone()));
        let mut rng = StdRng::seed_from_u64(17);
        let q = c.field().order() as u16;
        for _ in 0..200 {
            let point: Vec<Ff> = (0..2).map(|_| rng.gen_range(0..q)).collect();
            let w: Vec<FieldElement> = vec![
                a.add(&b),
                b.clone(),
                a.mul(&b).add(&one),
            ];
            let sym = form.evaluate(&w).unwrap();
            let Ok(sym_val) = sym.eval(&point) else { continue };
            let ff = form.specialize(&point).unwrap();
            let w_val: Vec<Ff> = w.iter().map(|x| x.eval(&point).unwrap()).collect();
            assert_eq!(ff.evaluate(&w_val), sym_val);
        }
    }
}

/// Count hyperbolic planes extractable by sound rewriting:
///   - [a,b₁] ⊥ [a,b₂] ≅ [a,b₁+b₂] ⊥ H  (the I_q¹ addition law; the literal
///     duplicate [a,b] ⊥ [a,b] is the b₁ = b₂ case),
///   - [a,0] ≅ [0,b] ≅ H,
///   - ⟨c⟩ ⊥ ⟨c⟩ ≅ ⟨c⟩ ⊥ ⟨0⟩  (substitution u₂ ↦ u₁+u₂; no plane).
/// This is a lower bound only; completeness over function fields is not
/// claimed.
pub fn witt_index_lower_bound(form: &QuadraticForm) -> WittLowerBound {
    let ctx = form.ctx().clone();
    let mut planes = 0usize;
    let mut binaries: Vec<(FieldElement, FieldElement)> = vec![];
    let mut unaries: Vec<FieldElement> = vec![];
    for block in form.blocks() {
        match block {
            Block::Unary(a) => unaries.push(a.clone()),
            Block::Binary(a, b) => binaries.push((a.clone(), b.clone())),
        }
    }
    // Merge binaries sharing a first slot, deterministically by sorted slot.
    binaries.sort();
    let mut merged: Vec<(FieldElement, FieldElement)> = vec![];
    for (a, b) in binaries {
        match merged.last_mut() {
            Some((la, lb)) if *la == a => {
                *lb = lb.add(&b);
                planes += 1;
            }
            _ => merged.push((a, b)),
        }
    }
    // Extract blocks with a zero slot.
    let mut residual_blocks: Vec<Block> = vec![];
    for (a, b) in merged {
        if a.is_zero() || b.is_zero() {
            planes += 1;
        } else {
            residual_blocks.push(Block::Binary(a, b));
        }
    }
    // ⟨c⟩ ⊥ ⟨c⟩ ≅ ⟨c⟩ ⊥ ⟨0⟩ rewriting on the unary part.
    unaries.sort();
    let mut prev: Option<&FieldElement> = None;
    let mut rewritten: Vec<FieldElement> = vec![];
    for u in &unaries {
        if prev == Some(u) && !u.is_zero() {
            rewritten.push(FieldElement::zero(&ctx));
        } else {
            rewritten.push(u.clone());
            prev = Some(u);
        }
    }
    residual_blocks.extend(rewritten.into_iter().map(Block::Unary));
    WittLowerBound {
        planes,
        residual: QuadraticForm::from_blocks(&ctx, residual_blocks),
    }
}
