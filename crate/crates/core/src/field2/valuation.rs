//! Monomial valuations on F_{2^k}(α₁,…,α_m) with value group Γ = Z^m.
//!
//! The monomial ∏αᵢ^{eᵢ} has value (−e₁,…,−e_m); the value of a polynomial
//! is the minimum of its monomial values under the right-to-left
//! lexicographic total order on Z^m, and values extend to fractions by
//! ν(num/den) = ν(num) − ν(den). Because distinct monomials have distinct
//! values, ν(fg) = ν(f) + ν(g) holds exactly.

use std::cmp::Ordering;

use serde::Serialize;

use super::fraction::FieldElement;
use super::poly::Poly;
use super::{Ctx, Field2Error};

/// Right-to-left lexicographic comparison on Z^m: the rightmost differing
/// coordinate decides.
pub fn rtl_lex_cmp(a: &[i64], b: &[i64]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// The (α₁⁻¹,…,α_m⁻¹)-adic valuation on the rational function field of a
/// context, with Γ = Z^m ordered right-to-left lexicographically.
#[derive(Clone, Debug)]
pub struct MonomialValuation {
    ctx: Ctx,
}

impl MonomialValuation {
    pub fn new(ctx: &Ctx) -> Self {
        MonomialValuation { ctx: ctx.clone() }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.ctx.nvars()
    }

    fn poly_value(&self, p: &Poly) -> Result<Vec<i64>, Field2Error> {
        if p.is_zero() {
            return Err(Field2Error::ValuationOfZero);
        }
        let mut best: Option<Vec<i64>> = None;
        for (m, _) in p.terms() {
            let v: Vec<i64> = m.iter().map(|&e| -(e as i64)).collect();
            best = Some(match best {
                None => v,
                Some(b) => {
                    if rtl_lex_cmp(&v, &b) == Ordering::Less {
                        v
                    } else {
                        b
                    }
                }
            });
        }
        Ok(best.unwrap())
    }

    /// ν(f) ∈ Z^m.
    pub fn value(&self, f: &FieldElement) -> Result<Vec<i64>, Field2Error> {
        let n = self.poly_value(f.num())?;
        let d = self.poly_value(f.den())?;
        Ok(n.iter().zip(&d).map(|(a, b)| a - b).collect())
    }

    /// ν̄(f) ∈ Γ/2Γ = (Z/2Z)^m.
    pub fn value_mod2(&self, f: &FieldElement) -> Result<GammaClass, Field2Error> {
        Ok(GammaClass::from_vector(&self.value(f)?))
    }

    /// Whether ν(f) < 0 in the right-to-left lexicographic order.
    pub fn is_negative(&self, f: &FieldElement) -> Result<bool, Field2Error> {
        let v = self.value(f)?;
        let zero = vec![0i64; v.len()];
        Ok(rtl_lex_cmp(&v, &zero) == Ordering::Less)
    }
}

/// An element of Γ/2Γ = (Z/2Z)^m, as a bit mask (bit i = parity of the
/// i-th coordinate).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GammaClass {
    pub m: usize,
    pub bits: u32,
}

impl GammaClass {
    pub fn zero(m: usize) -> Self {
        GammaClass { m, bits: 0 }
    }

    pub fn from_vector(v: &[i64]) -> Self {
        let mut bits = 0u32;
        for (i, &x) in v.iter().enumerate() {
            if x.rem_euclid(2) == 1 {
                bits |= 1 << i;
            }
        }
        GammaClass { m: v.len(), bits }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn add(&self, other: &GammaClass) -> GammaClass {
        assert_eq!(self.m, other.m);
        GammaClass {
            m: self.m,
            bits: self.bits ^ other.bits,
        }
    }

    pub fn to_vec(&self) -> Vec<u8> {
        (0..self.m).map(|i| ((self.bits >> i) & 1) as u8).collect()
    }
}

/// An F2-subspace of Γ/2Γ, kept as a reduced row-echelon basis of bit masks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaSubgroup {
    pub m: usize,
    basis: Vec<u32>,
}

impl GammaSubgroup {
    pub fn zero(m: usize) -> Self {
        GammaSubgroup { m, basis: vec![] }
    }

    pub fn span(m: usize, vectors: &[GammaClass]) -> Self {
        let mut s = GammaSubgroup::zero(m);
        for v in vectors {
            assert_eq!(v.m, m);
            s.insert(v.bits);
        }
        s
    }

    fn reduce(&self, mut v: u32) -> u32 {
        for &b in &self.basis {
            let pivot = 31 - b.leading_zeros();
            if (v >> pivot) & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    fn insert(&mut self, v: u32) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        self.basis.push(r);
        self.basis.sort_unstable_by_key(|b| std::cmp::Reverse(*b));
        // Back-substitute to keep the basis reduced.
        let basis = self.basis.clone();
        self.basis.clear();
        for b in basis {
            let r = self.reduce(b);
            if r != 0 {
                self.basis.push(r);
                self.basis.sort_unstable_by_key(|b| std::cmp::Reverse(*b));
            }
        }
        true
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &GammaClass) -> bool {
        assert_eq!(v.m, self.m);
        self.reduce(v.bits) == 0
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// All 2^rank elements.
    pub fn enumerate(&self) -> Vec<GammaClass> {
        let r = self.basis.len();
        let mut out = Vec::with_capacity(1 << r);
        for mask in 0u32..(1 << r) {
            let mut v = 0u32;
            for (i, b) in self.basis.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    v ^= b;
                }
            }
            out.push(GammaClass { m: self.m, bits: v });
        }
        out.sort();
        out
    }

    pub fn intersect(&self, other: &GammaSubgroup) -> GammaSubgroup {
        assert_eq!(self.m, other.m);
        let (small, big) = if self.rank() <= other.rank() {
            (self, other)
        } else {
            (other, self)
        };
        let vecs: Vec<GammaClass> = small
            .enumerate()
            .into_iter()
            .filter(|v| big.contains(v))
            .collect();
        GammaSubgroup::span(self.m, &vecs)
    }
}
