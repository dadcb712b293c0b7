//! Table-driven arithmetic in GF(p^k).
//!
//! Element `i` stands for the polynomial whose coefficients are the base-`p`
//! digits of `i`, least significant digit first. So in GF(4), element 2 is `x`
//! and element 3 is `x + 1`. The reduction modulus is the first monic
//! irreducible polynomial of degree `k` when coefficient vectors are compared
//! lexicographically from the constant term upwards.

use crate::error::{Error, Result};

/// Index of a field element in `0..q`.
pub type Elem = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    p: u32,
    k: u32,
    q: usize,
    /// Coefficients of the modulus, constant term first, leading 1 included.
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `n` as `p^k` when possible.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut rest = n;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

// Dense polynomial helpers over GF(p), coefficient vectors constant term first.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = (lead * c) % p;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn digits(mut n: usize, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % p as usize) as u32);
        n /= p as usize;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> usize {
    d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Monic polynomials of the given degree, in lexicographic order of their
/// coefficient vectors read from the constant term upwards.
fn monic_polys(degree: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as usize).pow(degree as u32);
    (0..count).map(move |n| {
        // Reverse the digits so the constant term varies slowest.
        let mut low: Vec<u32> = digits(n, p, degree);
        low.reverse();
        low.push(1);
        low
    })
}

/// Irreducibility over GF(p) by trial division with every monic polynomial
/// of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = poly_trim(poly.to_vec());
    let deg = match poly.len() {
        0 | 1 => return false,
        n => n - 1,
    };
    if *poly.last().unwrap() != 1 {
        return false;
    }
    (1..=deg / 2).all(|d| monic_polys(d, p).all(|f| !poly_rem_monic(&poly, &f, p).is_empty()))
}

impl FieldTable {
    /// Builds GF(p^k) with the default order cap of 256.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        Self::with_cap(p, k, crate::caps::Caps::default().field_order)
    }

    pub fn with_cap(p: u64, k: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::BadDegree);
        }
        let order = p.checked_pow(k).filter(|&o| o <= cap).ok_or(Error::OrderTooLarge {
            order: p.saturating_pow(k),
            cap,
        })?;
        let p = p as u32;
        let q = order as usize;
        let kk = k as usize;
        let modulus = monic_polys(kk, p)
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial exists in every degree");

        let polys: Vec<Vec<u32>> = (0..q).map(|i| digits(i, p, kk)).collect();
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u32> = polys[a].iter().zip(&polys[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum, p) as Elem;
                let prod = poly_rem_monic(&poly_mul(&polys[a], &polys[b], p), &modulus, p);
                mul[a * q + b] = undigits(&prod, p) as Elem;
            }
        }
        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elem;
            if a != 0 {
                inv[a] = (1..q)
                    .find(|&b| mul[a * q + b] == 1)
                    .expect("nonzero elements are invertible modulo an irreducible") as Elem;
            }
        }
        Ok(Self {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    /// Builds GF(q) for a prime power `q`.
    pub fn of_order(q: u64, cap: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::with_cap(p, k, cap)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> Option<usize> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    /// Smallest element of maximal multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> Elem {
        (1..self.q as Elem)
            .find(|&a| self.multiplicative_order(a) == Some(self.q - 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_axioms() {
        let f = FieldTable::new(2, 1).unwrap();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn gf4_x_squared_is_x_plus_one() {
        let f = FieldTable::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x = 2, x + 1 = 3
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn gf8_every_nonzero_has_order_dividing_seven() {
        let f = FieldTable::new(2, 3).unwrap();
        // (1,0,0) is x^3 + 1 = (x + 1)(x^2 + x + 1); next is x^3 + x^2 + 1.
        assert_eq!(f.modulus(), &[1, 0, 1, 1]);
        for e in 1..8 {
            assert_eq!(f.pow(e, 7), 1, "element {e}");
        }
    }

    #[test]
    fn modulus_prefers_low_degree_order() {
        // (1,0,0,1) precedes (1,1,0,0) when the constant term is compared first.
        let f = FieldTable::new(2, 4).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 0, 1, 1]);
        let f9 = FieldTable::new(3, 2).unwrap();
        // x^2 + 1 is irreducible over GF(3) and comes first.
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldTable::new(4, 1), Err(Error::NotPrime(4)));
        assert_eq!(FieldTable::new(2, 0), Err(Error::BadDegree));
        assert!(matches!(FieldTable::new(2, 9), Err(Error::OrderTooLarge { .. })));
        assert!(FieldTable::with_cap(2, 9, 512).is_ok());
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(matches!(FieldTable::of_order(12, 256), Err(Error::NotPrimePower(12))));
    }

    #[test]
    fn irreducibility_by_trial_division() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2)); // (x + 1)^2
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2)); // (x^2 + x + 1)^2
        assert!(is_irreducible(&[2, 1, 1], 3));
    }
}
