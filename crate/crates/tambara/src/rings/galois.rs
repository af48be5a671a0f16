//! Exact arithmetic in small Galois fields GF(p^k).
//!
//! Elements are coefficient vectors over GF(p), little-endian, reduced
//! modulo a fixed irreducible polynomial. We use the Conway polynomial for
//! each (p, k) so that element labels are reproducible and the standard
//! norm-compatible embeddings between fields of the same characteristic
//! exist (the README records the table).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Conway polynomial C_{p,k}, little-endian including the leading 1, or None
/// if outside the supported table.
fn conway(p: u64, k: usize) -> Option<Vec<u64>> {
    let poly: &[u64] = match (p, k) {
        (2, 1) => &[1, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (2, 7) => &[1, 1, 0, 0, 0, 0, 0, 1],
        (2, 8) => &[1, 0, 1, 1, 1, 0, 0, 0, 1],
        (3, 1) => &[1, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (5, 1) => &[3, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (5, 4) => &[2, 4, 4, 0, 1],
        (7, 1) => &[4, 1],
        (7, 2) => &[3, 6, 1],
        (7, 3) => &[4, 0, 6, 1],
        (11, 1) => &[9, 1],
        (11, 2) => &[2, 7, 1],
        (13, 1) => &[11, 1],
        (13, 2) => &[2, 12, 1],
        _ => return None,
    };
    Some(poly.to_vec())
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// GF(p^k) with Conway modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    pub p: u64,
    pub k: usize,
    /// Modulus, little-endian, degree k, monic.
    modulus: Vec<u64>,
}

impl GaloisField {
    pub fn new(p: u64, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Structure(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Structure("extension degree must be positive".into()));
        }
        let modulus = conway(p, k).ok_or_else(|| {
            Error::Structure(format!("no Conway polynomial in the table for ({p},{k})"))
        })?;
        let size = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if size > 1 << 20 {
            return Err(Error::CapExceeded(format!("GF({p}^{k}) too large")));
        }
        Ok(GaloisField { p, k, modulus })
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.k]
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.k];
        v[0] = 1 % self.p;
        v
    }

    /// n·1 for an integer n.
    pub fn from_int(&self, n: i64) -> Vec<u64> {
        let mut v = vec![0; self.k];
        v[0] = n.rem_euclid(self.p as i64) as u64;
        v
    }

    /// The class of x (the Conway generator).
    pub fn generator(&self) -> Vec<u64> {
        if self.k == 1 {
            // x ≡ -c0 mod (x + c0)
            let mut v = vec![0; 1];
            v[0] = (self.p - self.modulus[0] % self.p) % self.p;
            v
        } else {
            let mut v = vec![0; self.k];
            v[1] = 1;
            v
        }
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        (0..self.k).map(|i| (a[i] + b[i]) % self.p).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        (0..self.k)
            .map(|i| (self.p - a[i] % self.p) % self.p)
            .collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        // Schoolbook product then reduction by the monic modulus.
        let mut prod = vec![0u64; 2 * self.k];
        for i in 0..self.k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.k {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % self.p;
            }
        }
        for d in (self.k..2 * self.k).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            // x^d ≡ -Σ modulus[i]·x^(d-k+i)
            for i in 0..self.k {
                let m = self.modulus[i] % self.p;
                let sub = (c * m) % self.p;
                let idx = d - self.k + i;
                prod[idx] = (prod[idx] + self.p * self.p - sub) % self.p;
            }
        }
        prod.truncate(self.k);
        prod
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn inv(&self, a: &[u64]) -> Result<Vec<u64>> {
        if self.is_zero(a) {
            return Err(Error::Precondition("inverse of zero".into()));
        }
        Ok(self.pow(a, self.size() - 2))
    }

    /// Elements in mixed-radix order of their coefficient vectors.
    pub fn enumerate(&self) -> Vec<Vec<u64>> {
        let n = self.size();
        (0..n).map(|i| self.elt_at(i)).collect()
    }

    pub fn elt_at(&self, mut idx: u64) -> Vec<u64> {
        let mut v = vec![0; self.k];
        for c in v.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        v
    }

    pub fn index_of(&self, a: &[u64]) -> u64 {
        let mut idx = 0;
        for i in (0..self.k).rev() {
            idx = idx * self.p + a[i] % self.p;
        }
        idx
    }

    /// Evaluate a polynomial with field coefficients at a field element.
    pub fn eval_poly(&self, coeffs: &[Vec<u64>], at: &[u64]) -> Vec<u64> {
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, at), c);
        }
        acc
    }

    /// The norm-compatible embedding GF(p^k) → GF(p^m) for k | m: the Conway
    /// generator maps to y^((p^m−1)/(p^k−1)) where y generates the target.
    /// Returns the image of the generator; verified to satisfy the source
    /// modulus.
    pub fn embedding_generator_image(&self, target: &GaloisField) -> Result<Vec<u64>> {
        if self.p != target.p || target.k % self.k != 0 {
            return Err(Error::Precondition(format!(
                "GF({}^{}) does not embed in GF({}^{})",
                self.p, self.k, target.p, target.k
            )));
        }
        let e = (target.size() - 1) / (self.size() - 1);
        let img = target.pow(&target.generator(), e);
        let promoted: Vec<Vec<u64>> = self
            .modulus
            .iter()
            .map(|&c| target.from_int(c as i64))
            .collect();
        if !target.is_zero(&target.eval_poly(&promoted, &img)) {
            return Err(Error::Inconsistency(
                "Conway compatibility violated: embedding image is not a root".into(),
            ));
        }
        Ok(img)
    }

    /// Map an element along the embedding determined by a generator image.
    pub fn embed_via(&self, target: &GaloisField, gen_image: &[u64], a: &[u64]) -> Vec<u64> {
        let mut acc = target.zero();
        let mut power = target.one();
        for i in 0..self.k {
            let term = target.mul(&power, &target.from_int(a[i] as i64));
            acc = target.add(&acc, &term);
            power = target.mul(&power, gen_image);
        }
        acc
    }

    /// All field embeddings into the target, as images of the generator
    /// (roots of the source modulus in the target). There are k of them when
    /// k | target.k, none otherwise.
    pub fn all_embeddings(&self, target: &GaloisField) -> Vec<Vec<u64>> {
        if self.p != target.p {
            return Vec::new();
        }
        let promoted: Vec<Vec<u64>> = self
            .modulus
            .iter()
            .map(|&c| target.from_int(c as i64))
            .collect();
        target
            .enumerate()
            .into_iter()
            .filter(|cand| target.is_zero(&target.eval_poly(&promoted, cand)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f4 = GaloisField::new(2, 2).unwrap();
        let x = f4.generator();
        // x² = x + 1 under x² + x + 1.
        assert_eq!(f4.mul(&x, &x), vec![1, 1]);
        assert_eq!(f4.pow(&x, 3), f4.one());
        // Field norm to F2: a·a² = a³ = 1 for every a ≠ 0.
        for a in f4.enumerate() {
            if !f4.is_zero(&a) {
                assert_eq!(f4.mul(&a, &f4.pow(&a, 2)), f4.one());
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)] {
            let f = GaloisField::new(p, k).unwrap();
            let elems = f.enumerate();
            for a in &elems {
                assert!(f.is_zero(&f.add(a, &f.neg(a))));
                assert_eq!(f.mul(a, &f.one()), *a);
                if !f.is_zero(a) {
                    assert_eq!(f.mul(a, &f.inv(a).unwrap()), f.one());
                }
            }
            for a in &elems {
                for b in &elems {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in &elems {
                        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn embeddings_f2_tower() {
        let f2 = GaloisField::new(2, 1).unwrap();
        let f4 = GaloisField::new(2, 2).unwrap();
        let f16 = GaloisField::new(2, 4).unwrap();
        assert_eq!(f2.all_embeddings(&f4).len(), 1);
        assert_eq!(f4.all_embeddings(&f16).len(), 2);
        assert_eq!(f4.all_embeddings(&GaloisField::new(2, 3).unwrap()).len(), 0);
        let img = f4.embedding_generator_image(&f16).unwrap();
        for a in f4.enumerate() {
            for b in f4.enumerate() {
                let lhs = f4.embed_via(&f16, &img, &f4.mul(&a, &b));
                let rhs = f16.mul(
                    &f4.embed_via(&f16, &img, &a),
                    &f4.embed_via(&f16, &img, &b),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        let f9 = GaloisField::new(3, 2).unwrap();
        for i in 0..9 {
            assert_eq!(f9.index_of(&f9.elt_at(i)), i);
        }
    }
}
