//! Arithmetic in the finite fields F_{2^k}.
//!
//! Elements are bit patterns of polynomials over F2 reduced modulo a fixed
//! irreducible polynomial of degree k. Addition is XOR, every element is a
//! square (Frobenius is bijective), and the Artin-Schreier image
//! ℘(F) = {u² + u} is the kernel of the absolute trace.

use serde::Serialize;

use super::Field2Error;

/// Element of F_{2^k}, as the bit pattern of its polynomial representative.
pub type Ff = u16;

/// Irreducible polynomials over F2, degree 1..=8, low-weight classics.
/// Bit i is the coefficient of x^i.
const IRREDUCIBLE: [u32; 8] = [
    0b11,        // x + 1
    0b111,       // x^2 + x + 1
    0b1011,      // x^3 + x + 1
    0b10011,     // x^4 + x + 1
    0b100101,    // x^5 + x^2 + 1
    0b1000011,   // x^6 + x + 1
    0b10000011,  // x^7 + x + 1
    0b100011011, // x^8 + x^4 + x^3 + x + 1
];

/// The field F_{2^k} for 1 <= k <= 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteField {
    k: u8,
    #[serde(skip)]
    modulus: u32,
}

impl FiniteField {
    pub fn new(k: u8) -> Result<Self, Field2Error> {
        if k == 0 || k as usize > IRREDUCIBLE.len() {
            return Err(Field2Error::UnsupportedFieldDegree(k));
        }
        Ok(FiniteField {
            k,
            modulus: IRREDUCIBLE[k as usize - 1],
        })
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    /// Number of elements, 2^k.
    pub fn order(&self) -> u32 {
        1 << self.k
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn contains(&self, a: Ff) -> bool {
        (a as u32) < self.order()
    }

    pub fn add(&self, a: Ff, b: Ff) -> Ff {
        a ^ b
    }

    pub fn mul(&self, a: Ff, b: Ff) -> Ff {
        // Carryless multiply, then reduce modulo the irreducible polynomial.
        let mut prod: u32 = 0;
        let (a, b) = (a as u32, b as u32);
        for i in 0..self.k as u32 {
            if (b >> i) & 1 == 1 {
                prod ^= a << i;
            }
        }
        let deg_m = self.k as u32;
        let mut bit = 31 - prod.leading_zeros().min(31);
        while prod != 0 && bit >= deg_m {
            prod ^= self.modulus << (bit - deg_m);
            if prod == 0 {
                break;
            }
            bit = 31 - prod.leading_zeros();
        }
        prod as Ff
    }

    pub fn pow(&self, a: Ff, mut e: u64) -> Ff {
        let mut base = a;
        let mut acc: Ff = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Ff) -> Ff {
        assert!(a != 0, "inverse of zero in F_{{2^{}}}", self.k);
        // a^(2^k - 2)
        self.pow(a, self.order() as u64 - 2)
    }

    pub fn div(&self, a: Ff, b: Ff) -> Ff {
        self.mul(a, self.inv(b))
    }

    /// The unique square root (Frobenius is bijective in characteristic 2).
    pub fn sqrt(&self, a: Ff) -> Ff {
        self.pow(a, 1u64 << (self.k - 1))
    }

    /// Absolute trace F_{2^k} -> F_2, as 0 or 1.
    pub fn trace(&self, a: Ff) -> Ff {
        let mut acc = a;
        let mut frob = a;
        for _ in 1..self.k {
            frob = self.mul(frob, frob);
            acc ^= frob;
        }
        acc
    }

    /// Whether c = u² + u for some u, i.e. c ∈ ℘(F_{2^k}).
    /// Decidable by the trace: ℘ is the kernel of the absolute trace.
    pub fn in_artin_schreier_image(&self, c: Ff) -> bool {
        self.trace(c) == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = Ff> {
        0..self.order() as Ff
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Degree of a polynomial bit pattern, -1 for zero.
    fn deg(p: u32) -> i32 {
        31 - p.leading_zeros() as i32
    }

    /// Carryless multiplication without reduction (plain F2[x] product).
    fn clmul(a: u32, b: u32) -> u32 {
        let mut r = 0;
        for i in 0..32 {
            if (b >> i) & 1 == 1 {
                r ^= a << i;
            }
        }
        r
    }

    fn poly_rem(mut a: u32, b: u32) -> u32 {
        while deg(a) >= deg(b) && a != 0 {
            a ^= b << (deg(a) - deg(b));
        }
        a
    }

    #[test]
    fn moduli_are_irreducible() {
        // Trial division by every polynomial of degree 1..=k/2.
        for (i, &m) in IRREDUCIBLE.iter().enumerate() {
            let k = (i + 1) as i32;
            assert_eq!(deg(m), k);
            for d in 2u32..(1 << (k / 2 + 1)) {
                if deg(d) >= 1 && deg(d) <= k / 2 {
                    assert!(poly_rem(m, d) != 0, "modulus {m:#b} divisible by {d:#b}");
                }
            }
        }
    }

    #[test]
    fn mul_matches_schoolbook_reduction() {
        for k in 1..=8u8 {
            let f = FiniteField::new(k).unwrap();
            let q = f.order().min(32);
            for a in 0..q as Ff {
                for b in 0..q as Ff {
                    let expect = poly_rem(clmul(a as u32, b as u32), f.modulus()) as Ff;
                    assert_eq!(f.mul(a, b), expect);
                }
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        for k in 1..=4u8 {
            let f = FiniteField::new(k).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, a), 0, "characteristic 2");
                assert_eq!(f.mul(f.sqrt(a), f.sqrt(a)), a, "sqrt is Frobenius inverse");
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn artin_schreier_matches_exhaustive_search() {
        for k in 1..=4u8 {
            let f = FiniteField::new(k).unwrap();
            for c in f.elements() {
                let exhaustive = f.elements().any(|u| f.add(f.mul(u, u), u) == c);
                assert_eq!(
                    f.in_artin_schreier_image(c),
                    exhaustive,
                    "trace test disagrees with search at c={c} over F_{{2^{k}}}"
                );
            }
        }
    }

    #[test]
    fn artin_schreier_spec_values() {
        // c = 0 is ℘(0) over any field.
        for k in 1..=8u8 {
            let f = FiniteField::new(k).unwrap();
            assert!(f.in_artin_schreier_image(0));
        }
        // c = 1 over F2: u ∈ {0,1} gives u²+u = 0, never 1.
        assert!(!FiniteField::new(1).unwrap().in_artin_schreier_image(1));
        // c = 1 over F4: ω²+ω = 1 for a generator ω.
        assert!(FiniteField::new(2).unwrap().in_artin_schreier_image(1));
    }
}
