//! Quadratic forms with coefficients in a finite field F_{2^k}:
//! specializations of symbolic forms, Arf-based Witt decomposition of
//! nonsingular forms, and an exact (greedy hyperbolic-splitting) Witt index
//! for small possibly-singular forms.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::field2::{Ff, FiniteField};

use super::QuadformError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FfBlock {
    Unary(Ff),
    Binary(Ff, Ff),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FfForm {
    field: FiniteField,
    blocks: Vec<FfBlock>,
}

/// Witt class of a nonsingular form over a finite field: the anisotropic
/// part has dimension 0 or 2, with the Arf class deciding which.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WittClassFinite {
    pub witt_index: usize,
    pub dim_anisotropic: usize,
    /// Arf invariant Σ aᵢbᵢ of the input form (a representative of the
    /// residue class modulo ℘).
    pub arf: Ff,
}

impl FfForm {
    pub fn new(field: FiniteField, blocks: Vec<FfBlock>) -> Self {
        FfForm { field, blocks }
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn blocks(&self) -> &[FfBlock] {
        &self.blocks
    }

    pub fn dimension(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| match b {
                FfBlock::Unary(_) => 1,
                FfBlock::Binary(_, _) => 2,
            })
            .sum()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.blocks.iter().all(|b| matches!(b, FfBlock::Binary(_, _)))
    }

    pub fn orth_sum(&self, other: &FfForm) -> FfForm {
        assert_eq!(self.field, other.field);
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        FfForm::new(self.field, blocks)
    }

    pub fn evaluate(&self, w: &[Ff]) -> Ff {
        assert_eq!(w.len(), self.dimension());
        let f = self.field;
        let mut acc: Ff = 0;
        let mut i = 0;
        for block in &self.blocks {
            match block {
                FfBlock::Unary(a) => {
                    acc ^= f.mul(*a, f.mul(w[i], w[i]));
                    i += 1;
                }
                FfBlock::Binary(a, b) => {
                    let (u, v) = (w[i], w[i + 1]);
                    acc ^= f.mul(*a, f.mul(u, u));
                    acc ^= f.mul(u, v);
                    acc ^= f.mul(*b, f.mul(v, v));
                    i += 2;
                }
            }
        }
        acc
    }

    pub fn arf(&self) -> Result<Ff, QuadformError> {
        if !self.is_nonsingular() {
            return Err(QuadformError::SingularForm);
        }
        let f = self.field;
        let mut acc: Ff = 0;
        for block in &self.blocks {
            if let FfBlock::Binary(a, b) = block {
                acc ^= f.mul(*a, *b);
            }
        }
        Ok(acc)
    }

    /// Witt decomposition over the finite field: witt_index = dim/2 when
    /// Δ(φ) ∈ ℘(F_q), else dim/2 − 1 with a 2-dimensional anisotropic part
    /// of Arf class Δ(φ). Rejects singular forms.
    pub fn witt_decompose(&self) -> Result<WittClassFinite, QuadformError> {
        let arf = self.arf()?;
        let r = self.dimension() / 2;
        if self.field.in_artin_schreier_image(arf) {
            Ok(WittClassFinite {
                witt_index: r,
                dim_anisotropic: 0,
                arf,
            })
        } else {
            assert!(r >= 1, "nonsingular forms have even dimension >= 2");
            Ok(WittClassFinite {
                witt_index: r - 1,
                dim_anisotropic: 2,
                arf,
            })
        }
    }

    /// All vectors of F_q^dim in a fixed counting order.
    fn vectors(&self) -> impl Iterator<Item = Vec<Ff>> + '_ {
        let q = self.field.order() as u64;
        let n = self.dimension();
        let total = q.checked_pow(n as u32).expect("space too large");
        (0..total).map(move |mut idx| {
            let mut v = vec![0 as Ff; n];
            for slot in v.iter_mut() {
                *slot = (idx % q) as Ff;
                idx /= q;
            }
            v
        })
    }

    /// First nonzero isotropic vector in counting order, by exhaustive scan.
    pub fn find_isotropic_vector(&self) -> Option<Vec<Ff>> {
        self.vectors()
            .skip(1)
            .find(|v| self.evaluate(v) == 0)
    }

    /// The value set D(φ) ∪ {0}, by exhaustive scan.
    pub fn value_set(&self) -> BTreeSet<Ff> {
        self.vectors().map(|v| self.evaluate(&v)).collect()
    }

    /// Exact Witt index by greedy hyperbolic splitting, valid for singular
    /// forms too. None when q^dim exceeds the scan budget.
    pub fn witt_index_exact(&self) -> Option<usize> {
        let q = self.field.order() as u64;
        let bits = (64 - q.leading_zeros() as u64 - 1) * self.dimension() as u64;
        if bits > 22 {
            return None;
        }
        Some(GramForm::from_blocks(self).witt_index_greedy())
    }
}

/// Upper-triangular Gram representation q(x) = Σ_{i<=j} m[i][j] xᵢxⱼ,
/// closed under restriction to subspaces (which block forms are not).
pub(crate) struct GramForm {
    field: FiniteField,
    n: usize,
    m: Vec<Vec<Ff>>,
}

impl GramForm {
    pub(crate) fn from_blocks(form: &FfForm) -> Self {
        let n = form.dimension();
        let mut m = vec![vec![0 as Ff; n]; n];
        let mut i = 0;
        for block in form.blocks() {
            match block {
                FfBlock::Unary(a) => {
                    m[i][i] = *a;
                    i += 1;
                }
                FfBlock::Binary(a, b) => {
                    m[i][i] = *a;
                    m[i][i + 1] = 1;
                    m[i + 1][i + 1] = *b;
                    i += 2;
                }
            }
        }
        GramForm {
            field: form.field(),
            n,
            m,
        }
    }

    fn evaluate(&self, v: &[Ff]) -> Ff {
        let f = self.field;
        let mut acc: Ff = 0;
        for i in 0..self.n {
            if v[i] == 0 {
                continue;
            }
            for j in i..self.n {
                acc ^= f.mul(self.m[i][j], f.mul(v[i], v[j]));
            }
        }
        acc
    }

    /// Polar form b(u,v) = q(u+v) + q(u) + q(v).
    fn polar(&self, u: &[Ff], v: &[Ff]) -> Ff {
        let f = self.field;
        let mut acc: Ff = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.m[i][j] == 0 {
                    continue;
                }
                let t = f.add(f.mul(u[i], v[j]), f.mul(u[j], v[i]));
                acc ^= f.mul(self.m[i][j], t);
            }
        }
        acc
    }

    fn vectors(&self) -> impl Iterator<Item = Vec<Ff>> + '_ {
        let q = self.field.order() as u64;
        let n = self.n;
        let total = q.pow(n as u32);
        (0..total).map(move |mut idx| {
            let mut v = vec![0 as Ff; n];
            for slot in v.iter_mut() {
                *slot = (idx % q) as Ff;
                idx /= q;
            }
            v
        })
    }

    /// Greedy hyperbolic splitting: find an isotropic vector outside the
    /// radical of the polar form, split off the plane it spans with a
    /// polar-dual vector, restrict to the orthogonal complement, repeat.
    /// Witt decomposition makes the greedy count exact.
    pub(crate) fn witt_index_greedy(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        let f = self.field;
        let basis: Vec<Vec<Ff>> = (0..self.n)
            .map(|i| {
                let mut e = vec![0 as Ff; self.n];
                e[i] = 1;
                e
            })
            .collect();
        let found = self.vectors().skip(1).find_map(|v| {
            if self.evaluate(&v) != 0 {
                return None;
            }
            basis
                .iter()
                .find(|e| self.polar(&v, e) != 0)
                .map(|e| (v.clone(), e.clone()))
        });
        let (v, mut u) = match found {
            Some(p) => p,
            None => return 0,
        };
        // Scale u so that b(v,u) = 1.
        let c = self.polar(&v, &u);
        let cinv = f.inv(c);
        for x in u.iter_mut() {
            *x = f.mul(*x, cinv);
        }
        // Basis of {x : b(v,x) = 0 and b(u,x) = 0}.
        let rows: Vec<Vec<Ff>> = vec![
            basis.iter().map(|e| self.polar(&v, e)).collect(),
            basis.iter().map(|e| self.polar(&u, e)).collect(),
        ];
        let comp = nullspace(f, &rows, self.n);
        assert_eq!(comp.len(), self.n - 2, "polar rank of a split plane is 2");
        // Restrict the quadratic form to the complement.
        let k = comp.len();
        let mut m = vec![vec![0 as Ff; k]; k];
        for i in 0..k {
            m[i][i] = self.evaluate(&comp[i]);
            for j in i + 1..k {
                m[i][j] = self.polar(&comp[i], &comp[j]);
            }
        }
        let rest = GramForm {
            field: f,
            n: k,
            m,
        };
        1 + rest.witt_index_greedy()
    }
}

/// Basis of the right nullspace of a small matrix over F_q.
fn nullspace(f: FiniteField, rows: &[Vec<Ff>], n: usize) -> Vec<Vec<Ff>> {
    let mut mat: Vec<Vec<Ff>> = rows.to_vec();
    let mut pivots: Vec<usize> = vec![];
    let mut rank = 0;
    for col in 0..n {
        let Some(r) = (rank..mat.len()).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(rank, r);
        let inv = f.inv(mat[rank][col]);
        for x in mat[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r2 in 0..mat.len() {
            if r2 != rank && mat[r2][col] != 0 {
                let c = mat[r2][col];
                for j in 0..n {
                    let t = f.mul(c, mat[rank][j]);
                    mat[r2][j] = f.add(mat[r2][j], t);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let mut out = vec![];
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0 as Ff; n];
        v[free] = 1;
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = mat[r][free];
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(k: u8) -> FiniteField {
        FiniteField::new(k).unwrap()
    }

    #[test]
    fn hyperbolic_plane_over_f2() {
        let form = FfForm::new(f(1), vec![FfBlock::Binary(0, 0)]);
        let w = form.witt_decompose().unwrap();
        assert_eq!((w.witt_index, w.dim_anisotropic), (1, 0));
        assert_eq!(form.find_isotropic_vector(), Some(vec![1, 0]));
    }

    #[test]
    fn one_one_anisotropic_over_f2() {
        // [1,1] over F2: Arf = 1 ∉ ℘(F2), anisotropic; exhaustive over the
        // 4 vectors confirms.
        let form = FfForm::new(f(1), vec![FfBlock::Binary(1, 1)]);
        let w = form.witt_decompose().unwrap();
        assert_eq!((w.witt_index, w.dim_anisotropic), (0, 2));
        assert_eq!(form.find_isotropic_vector(), None);
        // Doubling: [1,1] ⊥ [1,1] has Witt index 2.
        let doubled = form.orth_sum(&form);
        let w2 = doubled.witt_decompose().unwrap();
        assert_eq!((w2.witt_index, w2.dim_anisotropic), (2, 0));
        assert_eq!(doubled.witt_index_exact(), Some(2));
    }

    #[test]
    fn greedy_matches_arf_on_random_nonsingular() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(5);
        for k in [1u8, 2] {
            let field = f(k);
            let q = field.order() as u16;
            for _ in 0..60 {
                let blocks: Vec<FfBlock> = (0..rng.gen_range(1..=3))
                    .map(|_| FfBlock::Binary(rng.gen_range(0..q), rng.gen_range(0..q)))
                    .collect();
                let form = FfForm::new(field, blocks);
                let w = form.witt_decompose().unwrap();
                assert_eq!(form.witt_index_exact(), Some(w.witt_index));
            }
        }
    }

    #[test]
    fn singular_rejected_by_witt_but_handled_by_greedy() {
        let form = FfForm::new(f(1), vec![FfBlock::Binary(1, 1), FfBlock::Unary(1)]);
        assert_eq!(form.witt_decompose(), Err(QuadformError::SingularForm));
        // [1,1] ⊥ <1> over F2 is isotropic with a hyperbolic plane inside.
        assert_eq!(form.witt_index_exact(), Some(1));
    }
}
