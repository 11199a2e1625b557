//! Sparse multivariate polynomials over F_{2^k}.
//!
//! Terms map dense exponent vectors to nonzero coefficients. The global term
//! order is lexicographic with variable 0 most significant, which is exactly
//! the ordering of the underlying BTreeMap keys: the first key is the minimal
//! term, the last key the leading term.

use std::collections::BTreeMap;
use std::fmt;

use super::finite::Ff;
use super::{assert_same_ctx, Ctx, Field2Error};

/// Exponent vector; always `ctx.nvars()` entries.
pub type Mono = Vec<u16>;

pub(crate) fn mono_mul(a: &[u16], b: &[u16]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn mono_div(a: &[u16], b: &[u16]) -> Option<Mono> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_sub(*y))
        .collect::<Option<Mono>>()
}

#[derive(Clone)]
pub struct Poly {
    ctx: Ctx,
    terms: BTreeMap<Mono, Ff>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        assert_same_ctx(&self.ctx, &other.ctx);
        self.terms == other.terms
    }
}
impl Eq for Poly {}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl Poly {
    pub fn zero(ctx: &Ctx) -> Self {
        Poly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Ctx, c: Ff) -> Self {
        let mut p = Poly::zero(ctx);
        if c != 0 {
            p.terms.insert(vec![0; ctx.nvars()], c);
        }
        p
    }

    pub fn one(ctx: &Ctx) -> Self {
        Poly::constant(ctx, 1)
    }

    pub fn var(ctx: &Ctx, index: usize) -> Self {
        assert!(index < ctx.nvars());
        let mut exp = vec![0u16; ctx.nvars()];
        exp[index] = 1;
        let mut p = Poly::zero(ctx);
        p.terms.insert(exp, 1);
        p
    }

    pub fn var_named(ctx: &Ctx, name: &str) -> Option<Self> {
        ctx.var_index(name).map(|i| Poly::var(ctx, i))
    }

    pub fn monomial(ctx: &Ctx, exp: Mono, c: Ff) -> Self {
        assert_eq!(exp.len(), ctx.nvars());
        let mut p = Poly::zero(ctx);
        if c != 0 {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| *c == 1 && m.iter().all(|&e| e == 0))
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Ff> {
        if self.is_zero() {
            Some(0)
        } else if self.is_constant() {
            self.terms.values().next().copied()
        } else {
            None
        }
    }

    /// True when the polynomial is a single term c·∏αᵢ^eᵢ.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, Ff)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Leading (maximal) term under the global lex order.
    pub fn leading_term(&self) -> Option<(&Mono, Ff)> {
        self.terms.iter().next_back().map(|(m, c)| (m, *c))
    }

    /// Minimal term under the global lex order.
    pub fn min_term(&self) -> Option<(&Mono, Ff)> {
        self.terms.iter().next().map(|(m, c)| (m, *c))
    }

    fn insert_term(&mut self, m: Mono, c: Ff) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = *e.get() ^ c;
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_same_ctx(&self.ctx, &other.ctx);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), *c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_same_ctx(&self.ctx, &other.ctx);
        let f = self.ctx.field();
        let mut out = Poly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(mono_mul(ma, mb), f.mul(*ca, *cb));
            }
        }
        out
    }

    pub fn mul_constant(&self, c: Ff) -> Poly {
        let f = self.ctx.field();
        let mut out = Poly::zero(&self.ctx);
        if c == 0 {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), f.mul(*a, c));
        }
        out
    }

    pub fn mul_monomial(&self, exp: &[u16], c: Ff) -> Poly {
        let f = self.ctx.field();
        let mut out = Poly::zero(&self.ctx);
        if c == 0 {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(mono_mul(m, exp), f.mul(*a, c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.mul_constant(self.ctx.field().inv(c)),
        }
    }

    /// Division with remainder under the global term order: self = q·d + r,
    /// no term of r divisible by the leading term of d.
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly), Field2Error> {
        assert_same_ctx(&self.ctx, &d.ctx);
        if d.is_zero() {
            return Err(Field2Error::DivisionByZero);
        }
        let f = self.ctx.field();
        let (dm, dc) = {
            let (m, c) = d.leading_term().unwrap();
            (m.clone(), c)
        };
        let dc_inv = f.inv(dc);
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ctx);
        let mut out_r = Poly::zero(&self.ctx);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c)) {
            match mono_div(&m, &dm) {
                Some(q_exp) => {
                    let q_coeff = f.mul(c, dc_inv);
                    quot.insert_term(q_exp.clone(), q_coeff);
                    rem = rem.add(&d.mul_monomial(&q_exp, q_coeff));
                }
                None => {
                    // Move the irreducible leading term to the remainder.
                    out_r.insert_term(m.clone(), c);
                    rem.terms.remove(&m);
                }
            }
        }
        Ok((quot, out_r))
    }

    /// Exact division; panics if not divisible (internal use only).
    pub(crate) fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.divmod(d).expect("exact_div by zero");
        assert!(r.is_zero(), "exact_div: not divisible");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        match other.divmod(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Greatest common divisor, monic-normalized. Recursive primitive PRS on
    /// the highest occurring variable.
    pub fn gcd(&self, other: &Poly) -> Poly {
        assert_same_ctx(&self.ctx, &other.ctx);
        let g = gcd_inner(self, other);
        g.monic()
    }

    /// Highest variable index with a nonzero exponent somewhere, if any.
    fn main_var(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for m in self.terms.keys() {
            for (i, &e) in m.iter().enumerate().rev() {
                if e > 0 {
                    best = Some(best.map_or(i, |b| b.max(i)));
                    break;
                }
            }
        }
        best
    }

    /// Degree in variable x.
    fn deg_in(&self, x: usize) -> i64 {
        self.terms
            .keys()
            .map(|m| m[x] as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Coefficients as polynomials in the remaining variables, keyed by the
    /// exponent of x.
    fn coeffs_in(&self, x: usize) -> BTreeMap<u16, Poly> {
        let mut out: BTreeMap<u16, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m[x];
            let mut rest = m.clone();
            rest[x] = 0;
            out.entry(e)
                .or_insert_with(|| Poly::zero(&self.ctx))
                .insert_term(rest, *c);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn lead_coeff_in(&self, x: usize) -> Poly {
        let d = self.deg_in(x);
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            if m[x] as i64 == d {
                let mut rest = m.clone();
                rest[x] = 0;
                out.insert_term(rest, *c);
            }
        }
        out
    }

    /// Evaluate at a point assigning a field value to every variable.
    pub fn eval(&self, point: &[Ff]) -> Ff {
        assert_eq!(point.len(), self.ctx.nvars());
        let f = self.ctx.field();
        let mut acc: Ff = 0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = f.mul(t, f.pow(point[i], e as u64));
                }
            }
            acc ^= t;
        }
        acc
    }

    /// True when every exponent in every term is even; in characteristic 2
    /// (perfect base field) this is exactly "is a perfect square".
    pub fn is_square(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.iter().all(|&e| e % 2 == 0))
    }

    /// The square root of a perfect square.
    pub fn square_root(&self) -> Option<Poly> {
        if !self.is_square() {
            return None;
        }
        let f = self.ctx.field();
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let half: Mono = m.iter().map(|&e| e / 2).collect();
            out.terms.insert(half, f.sqrt(*c));
        }
        Some(out)
    }
}

/// Pseudo-remainder of u by v with respect to variable x (both must involve
/// x with deg_x(v) >= 1, deg_x(u) >= deg_x(v)).
fn prem(u: &Poly, v: &Poly, x: usize) -> Poly {
    let dv = v.deg_in(x);
    let lv = v.lead_coeff_in(x);
    let mut r = u.clone();
    while !r.is_zero() && r.deg_in(x) >= dv {
        let dr = r.deg_in(x);
        let lr = r.lead_coeff_in(x);
        // r <- lv*r + lr*x^(dr-dv)*v kills the x^dr part (char 2: + is -).
        let mut shift = vec![0u16; u.ctx.nvars()];
        shift[x] = (dr - dv) as u16;
        r = lv.mul(&r).add(&lr.mul(&v.mul_monomial(&shift, 1)));
    }
    r
}

fn content_in(p: &Poly, x: usize) -> Poly {
    let mut cont = Poly::zero(&p.ctx);
    for (_, coeff) in p.coeffs_in(x) {
        cont = gcd_inner(&cont, &coeff);
        if cont.is_constant() && !cont.is_zero() {
            return Poly::one(&p.ctx);
        }
    }
    cont.monic()
}

fn gcd_inner(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(&a.ctx);
    }
    let x = a.main_var().max(b.main_var()).unwrap();
    if a.deg_in(x) == 0 || b.deg_in(x) == 0 {
        // x occurs in only one of them: gcd divides that one's content.
        let (with_x, without) = if a.deg_in(x) > 0 { (a, b) } else { (b, a) };
        return gcd_inner(&content_in(with_x, x), without);
    }
    let cont_a = content_in(a, x);
    let cont_b = content_in(b, x);
    let cont_g = gcd_inner(&cont_a, &cont_b);
    let mut u = a.exact_div(&cont_a);
    let mut v = b.exact_div(&cont_b);
    if u.deg_in(x) < v.deg_in(x) {
        std::mem::swap(&mut u, &mut v);
    }
    while !v.is_zero() {
        let r = prem(&u, &v, x);
        u = v;
        v = if r.is_zero() {
            r
        } else {
            let c = content_in(&r, x);
            r.exact_div(&c)
        };
    }
    // u is the primitive gcd in x; strip any residual content.
    let u = u.exact_div(&content_in(&u, x));
    cont_g.mul(&u)
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let names = self.ctx.vars();
        let mut first = true;
        // Display leading term first.
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let is_const_mono = m.iter().all(|&e| e == 0);
            let mut wrote = false;
            if *c != 1 || is_const_mono {
                if *c > 9 {
                    write!(out, "{:#x}", c)?;
                } else {
                    write!(out, "{}", c)?;
                }
                wrote = true;
            }
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(out, "*")?;
                }
                wrote = true;
                write!(out, "{}", names[i])?;
                if e > 1 {
                    write!(out, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
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

    fn ctx2() -> Ctx {
        FieldContext::new(FiniteField::new(1).unwrap(), &["a", "b", "g"])
    }

    fn random_poly(ctx: &Ctx, rng: &mut StdRng, max_terms: usize, max_deg: u16) -> Poly {
        let mut p = Poly::zero(ctx);
        let f = ctx.field();
        for _ in 0..rng.gen_range(0..=max_terms) {
            let exp: Mono = (0..ctx.nvars())
                .map(|_| rng.gen_range(0..=max_deg))
                .collect();
            let c = rng.gen_range(0..f.order()) as Ff;
            p = p.add(&Poly::monomial(ctx, exp, c));
        }
        p
    }

    #[test]
    fn char_two_addition() {
        let ctx = ctx2();
        let a = Poly::var(&ctx, 0);
        let b = Poly::var(&ctx, 1);
        let s = a.add(&b);
        assert!(s.add(&s).is_zero(), "(a+b) + (a+b) = 0");
    }

    #[test]
    fn gcd_spec_examples() {
        let ctx = ctx2();
        let a = Poly::var(&ctx, 0);
        let b = Poly::var(&ctx, 1);
        // gcd(a^2 + a*b, a) = a
        let p = a.pow(2).add(&a.mul(&b));
        assert_eq!(p.gcd(&a), a);
        // a^2 + b^2 = (a+b)^2; gcd(a^2+b^2, a+b) = a+b
        let sq = a.pow(2).add(&b.pow(2));
        let ab = a.add(&b);
        assert_eq!(sq, ab.pow(2), "Frobenius in characteristic 2");
        assert_eq!(sq.gcd(&ab), ab);
    }

    #[test]
    fn divmod_contract() {
        let ctx = ctx2();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let a = random_poly(&ctx, &mut rng, 6, 3);
            let d = random_poly(&ctx, &mut rng, 4, 2);
            if d.is_zero() {
                assert!(a.divmod(&d).is_err());
                continue;
            }
            let (q, r) = a.divmod(&d).unwrap();
            assert_eq!(q.mul(&d).add(&r), a, "a = q*d + r");
            // No term of r is divisible by the leading monomial of d.
            let (dm, _) = d.leading_term().unwrap();
            for (m, _) in r.terms() {
                assert!(mono_div(m, dm).is_none());
            }
        }
    }

    #[test]
    fn mul_commutative_associative_random_triples() {
        for k in [1u8, 2, 4] {
            let ctx = FieldContext::new(FiniteField::new(k).unwrap(), &["a", "b"]);
            let mut rng = StdRng::seed_from_u64(k as u64);
            for _ in 0..200 {
                let p = random_poly(&ctx, &mut rng, 4, 2);
                let q = random_poly(&ctx, &mut rng, 4, 2);
                let r = random_poly(&ctx, &mut rng, 4, 2);
                assert_eq!(p.mul(&q), q.mul(&p));
                assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
                assert_eq!(p.add(&q), q.add(&p));
                assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
                assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
            }
        }
    }

    #[test]
    fn gcd_divides_both_and_absorbs_common_factor() {
        for k in [1u8, 2] {
            let ctx = FieldContext::new(FiniteField::new(k).unwrap(), &["a", "b", "g"]);
            let mut rng = StdRng::seed_from_u64(100 + k as u64);
            for _ in 0..120 {
                let a = random_poly(&ctx, &mut rng, 3, 2);
                let b = random_poly(&ctx, &mut rng, 3, 2);
                let g = random_poly(&ctx, &mut rng, 3, 1);
                let d = a.gcd(&b);
                if !a.is_zero() || !b.is_zero() {
                    assert!(d.divides(&a) && d.divides(&b), "gcd divides both");
                }
                if !g.is_zero() && (!a.is_zero() || !b.is_zero()) {
                    let d2 = a.mul(&g).gcd(&b.mul(&g));
                    assert!(
                        g.divides(&d2),
                        "common factor absorbed: gcd({a}*{g},{b}*{g}) = {d2}"
                    );
                    assert!(d2.divides(&a.mul(&g)) && d2.divides(&b.mul(&g)));
                }
            }
        }
    }

    #[test]
    fn square_detection() {
        let ctx = ctx2();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let p = random_poly(&ctx, &mut rng, 4, 2);
            let sq = p.mul(&p);
            assert!(sq.is_square());
            assert_eq!(sq.square_root().unwrap().mul(&sq.square_root().unwrap()), sq);
            if !p.is_square() {
                assert!(p.square_root().is_none());
            }
        }
    }
}
