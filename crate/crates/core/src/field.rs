//! Small finite fields `𝔽_q`, `q ∈ {2,3,4,5,7,8,9}`.
//!
//! Elements are integers `0..q`; for `q = pᵏ` the base-`p` digits of an
//! element are the coefficients of a polynomial reduced modulo a fixed
//! irreducible polynomial.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("no field of order {0} is supported (choose 2, 3, 4, 5, 7, 8 or 9)")]
pub struct UnsupportedField(pub u32);

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    k: u32,
    /// Low-order coefficients of the monic modulus (degree `k`).
    modulus: Vec<u32>,
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self, UnsupportedField> {
        let (p, k, modulus) = match q {
            2 | 3 | 5 | 7 => (q, 1, vec![0]),
            4 => (2, 2, vec![1, 1]),    // x² + x + 1
            8 => (2, 3, vec![1, 1, 0]), // x³ + x + 1
            9 => (3, 2, vec![1, 0]),    // x² + 1
            _ => return Err(UnsupportedField(q)),
        };
        Ok(FiniteField { p, k, modulus })
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.k)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Additive basis `1, x, .., x^{k-1}`.
    pub fn additive_basis(&self) -> Vec<u32> {
        (0..self.k).map(|i| self.p.pow(i)).collect()
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let mut a = a;
        (0..self.k)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s: Vec<u32> =
            self.digits(a).iter().zip(self.digits(b)).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let s: Vec<u32> = self.digits(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.pack(&s)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (p, k) = (self.p, self.k as usize);
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * k];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // reduce using x^k = -(modulus low terms)
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, m) in self.modulus.iter().enumerate() {
                let sub = (c * m) % p;
                prod[deg - k + i] = (prod[deg - k + i] + p - sub) % p;
            }
        }
        self.pack(&prod[..k])
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        let q = self.order();
        (2..q)
            .chain(std::iter::once(1))
            .find(|&g| {
                let mut x = 1;
                let mut n = 0;
                loop {
                    x = self.mul(x, g);
                    n += 1;
                    if x == 1 {
                        break;
                    }
                }
                n == q - 1
            })
            .expect("finite fields have primitive elements")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_field(q: u32) {
        let f = FiniteField::new(q).unwrap();
        for a in 0..q {
            assert_eq!(f.add(a, f.neg(a)), 0);
            assert_eq!(f.mul(a, 1), a);
            if a != 0 {
                let inverses = (0..q).filter(|&b| f.mul(a, b) == 1).count();
                assert_eq!(inverses, 1, "q={q} a={a}");
            }
            for b in 0..q {
                for c in 0..q {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                }
            }
        }
    }

    #[test]
    fn all_supported_orders_are_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            check_field(q);
        }
        assert!(FiniteField::new(6).is_err());
    }

    #[test]
    fn gf4_has_characteristic_two() {
        let f = FiniteField::new(4).unwrap();
        assert_eq!(f.add(3, 3), 0);
        // x·x = x + 1
        assert_eq!(f.mul(2, 2), 3);
    }
}
