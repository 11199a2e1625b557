//! The fraction field F_{2^k}(α₁,…,α_m): canonical num/den pairs.
//!
//! Canonical form: gcd(num, den) = 1 and the minimal term of the denominator
//! (under the global term order) has coefficient 1. Equality of field
//! elements is then bit-exact.

use std::fmt;

use super::finite::Ff;
use super::poly::Poly;
use super::{assert_same_ctx, Ctx, Field2Error};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    num: Poly,
    den: Poly,
}

impl FieldElement {
    /// Canonical representative of num/den.
    pub fn new(num: Poly, den: Poly) -> Result<Self, Field2Error> {
        if den.is_zero() {
            return Err(Field2Error::ZeroDenominator);
        }
        assert_same_ctx(num.ctx(), den.ctx());
        let ctx = num.ctx().clone();
        if num.is_zero() {
            return Ok(FieldElement {
                num,
                den: Poly::one(&ctx),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g);
        let mut den = den.exact_div(&g);
        // Scale so that den's minimal term has coefficient 1.
        let (_, c) = den.min_term().unwrap();
        if c != 1 {
            let inv = ctx.field().inv(c);
            num = num.mul_constant(inv);
            den = den.mul_constant(inv);
        }
        Ok(FieldElement { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = Poly::one(p.ctx());
        FieldElement { num: p, den: one }
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Self::from_poly(Poly::zero(ctx))
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::from_poly(Poly::one(ctx))
    }

    pub fn constant(ctx: &Ctx, c: Ff) -> Self {
        Self::from_poly(Poly::constant(ctx, c))
    }

    pub fn var(ctx: &Ctx, index: usize) -> Self {
        Self::from_poly(Poly::var(ctx, index))
    }

    pub fn var_named(ctx: &Ctx, name: &str) -> Option<Self> {
        Poly::var_named(ctx, name).map(Self::from_poly)
    }

    pub fn ctx(&self) -> &Ctx {
        self.num.ctx()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Poly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Scale a known-coprime pair into canonical form (no gcd).
    fn from_reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            let one = Poly::one(den.ctx());
            return FieldElement { num, den: one };
        }
        let (_, c) = den.min_term().expect("nonzero denominator");
        if c == 1 {
            FieldElement { num, den }
        } else {
            let inv = den.ctx().field().inv(c);
            FieldElement {
                num: num.mul_constant(inv),
                den: den.mul_constant(inv),
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Keep the gcd computations on small operands: with reduced inputs
        // and g = gcd(d1,d2), the only common factors of the sum and the
        // denominator divide g.
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            let den = self.den.mul(&other.den);
            return Self::from_reduced(num, den);
        }
        let d2g = other.den.exact_div(&g);
        let t = self.num.mul(&d2g).add(&other.num.mul(&self.den.exact_div(&g)));
        if t.is_zero() {
            return FieldElement::zero(self.ctx());
        }
        let g2 = t.gcd(&g);
        let num = t.exact_div(&g2);
        let den = self.den.exact_div(&g2).mul(&d2g);
        Self::from_reduced(num, den)
    }

    /// Subtraction coincides with addition in characteristic 2.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(other)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FieldElement::zero(self.ctx());
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = self.num.exact_div(&g1).mul(&other.num.exact_div(&g2));
        let den = self.den.exact_div(&g2).mul(&other.den.exact_div(&g1));
        Self::from_reduced(num, den)
    }

    pub fn inv(&self) -> Result<Self, Field2Error> {
        if self.num.is_zero() {
            return Err(Field2Error::ZeroDenominator);
        }
        Ok(Self::from_reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, Field2Error> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, Field2Error> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = FieldElement::one(self.ctx());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Product over a slice; 1 for the empty product.
    pub fn product(ctx: &Ctx, items: &[FieldElement]) -> FieldElement {
        items
            .iter()
            .fold(FieldElement::one(ctx), |acc, x| acc.mul(x))
    }

    pub fn sum(ctx: &Ctx, items: &[FieldElement]) -> FieldElement {
        items
            .iter()
            .fold(FieldElement::zero(ctx), |acc, x| acc.add(x))
    }

    /// Perfect-square test: in a perfect field of characteristic 2, f = g²
    /// iff the reduced numerator and denominator are both squares.
    pub fn is_square(&self) -> bool {
        self.num.is_square() && self.den.is_square()
    }

    /// Evaluate at a point; PoleAtPoint when the denominator vanishes.
    pub fn eval(&self, point: &[Ff]) -> Result<Ff, Field2Error> {
        let d = self.den.eval(point);
        if d == 0 {
            return Err(Field2Error::PoleAtPoint);
        }
        let n = self.num.eval(point);
        Ok(self.ctx().field().div(n, d))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.num_terms() > 1 {
                write!(out, "({})", self.num)
            } else {
                write!(out, "{}", self.num)
            }
        } else {
            // Single parentheses only: "((" is the symbol-literal token.
            write!(out, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field2::{FieldContext, FiniteField};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ctx() -> Ctx {
        FieldContext::new(FiniteField::new(2).unwrap(), &["a", "b"])
    }

    fn random_fe(ctx: &Ctx, rng: &mut StdRng) -> FieldElement {
        let rand_poly = |rng: &mut StdRng| {
            let mut p = Poly::zero(ctx);
            for _ in 0..rng.gen_range(0..4) {
                let exp: Vec<u16> = (0..ctx.nvars()).map(|_| rng.gen_range(0..3)).collect();
                let c = rng.gen_range(0..ctx.field().order()) as crate::field2::Ff;
                p = p.add(&Poly::monomial(ctx, exp, c));
            }
            p
        };
        loop {
            let den = rand_poly(rng);
            if !den.is_zero() {
                return FieldElement::new(rand_poly(rng), den).unwrap();
            }
        }
    }

    #[test]
    fn normalize_spec_examples() {
        let ctx = ctx();
        let a = Poly::var(&ctx, 0);
        let b = Poly::var(&ctx, 1);
        // (a^2, a) -> a/1
        let e = FieldElement::new(a.pow(2), a.clone()).unwrap();
        assert_eq!(e, FieldElement::from_poly(a.clone()));
        assert!(e.is_polynomial());
        // (a*b + b^2, b) -> (a+b)/1
        let e = FieldElement::new(a.mul(&b).add(&b.pow(2)), b.clone()).unwrap();
        assert_eq!(e, FieldElement::from_poly(a.add(&b)));
        // (1,1) -> 1
        let e = FieldElement::new(Poly::one(&ctx), Poly::one(&ctx)).unwrap();
        assert!(e.is_one());
    }

    #[test]
    fn normalize_is_idempotent_and_scale_invariant() {
        let ctx = ctx();
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..300 {
            let e = random_fe(&ctx, &mut rng);
            // idempotent
            let again = FieldElement::new(e.num().clone(), e.den().clone()).unwrap();
            assert_eq!(e, again);
            // fe_normalize(a/b) = fe_normalize(ac/bc) for random nonzero c
            let c = loop {
                let c = random_fe(&ctx, &mut rng);
                if !c.is_zero() {
                    break c;
                }
            };
            let scaled = FieldElement::new(
                e.num().mul(c.num()).mul(c.den()),
                e.den().mul(c.num()).mul(c.den()),
            );
            if !e.is_zero() {
                assert_eq!(e, scaled.unwrap());
            }
        }
    }

    #[test]
    fn field_ops_agree_with_evaluation() {
        // specialize commutes with +,*,/ at non-pole points (homomorphism law).
        let ctx = ctx();
        let q = ctx.field().order() as u16;
        let mut rng = StdRng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 1000 {
            let e = random_fe(&ctx, &mut rng);
            let f = random_fe(&ctx, &mut rng);
            let point: Vec<_> = (0..ctx.nvars()).map(|_| rng.gen_range(0..q)).collect();
            let (ev, fv) = match (e.eval(&point), f.eval(&point)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => continue, // pole: caller must resample
            };
            let field = ctx.field();
            if let Ok(s) = e.add(&f).eval(&point) {
                assert_eq!(s, field.add(ev, fv));
            } else {
                panic!("sum has pole where operands do not");
            }
            if let Ok(p) = e.mul(&f).eval(&point) {
                assert_eq!(p, field.mul(ev, fv));
            } else {
                panic!("product has pole where operands do not");
            }
            checked += 1;
        }
    }

    #[test]
    fn pole_detection() {
        let ctx = ctx();
        let a = FieldElement::var(&ctx, 0);
        let b = FieldElement::var(&ctx, 1);
        let e = a.div(&b).unwrap();
        assert_eq!(e.eval(&[1, 0]), Err(Field2Error::PoleAtPoint));
        // a+b at a=1,b=1 over the prime subfield
        assert_eq!(a.add(&b).eval(&[1, 1]), Ok(0));
    }

    #[test]
    fn zero_denominator_rejected() {
        let ctx = ctx();
        assert_eq!(
            FieldElement::new(Poly::one(&ctx), Poly::zero(&ctx)),
            Err(Field2Error::ZeroDenominator)
        );
    }
}
