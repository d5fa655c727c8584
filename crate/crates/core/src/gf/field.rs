//! The finite field F_q = F_p[x]/(poly) with table-driven arithmetic.
//!
//! An element is stored as the integer whose base-`p` digits are its
//! polynomial coefficients (constant term least significant). Elements of
//! the prime field therefore keep their usual integer value.

use serde::Serialize;

use super::{poly, prime};
use crate::error::{Error, Result};

/// Element of F_q in digit encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Largest field order for which arithmetic tables are built.
pub const MAX_TABLE_ORDER: u64 = 1 << 22;
const ADD_TABLE_MAX: u64 = 1024;

/// How the cube nonresidue is picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeltaRule {
    /// The non-cube with the smallest digit encoding.
    #[default]
    FirstNonresidue,
    /// The fixed generator of F_q^x.
    Generator,
}

impl std::str::FromStr for DeltaRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first-nonresidue" => Ok(DeltaRule::FirstNonresidue),
            "generator" => Ok(DeltaRule::Generator),
            other => Err(Error::Parse(format!("unknown delta rule `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FieldCtx {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    /// Monic defining polynomial, coefficients low-to-high.
    pub poly: Vec<u64>,
    pub generator: Fe,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// Configuration block echoed in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldConfig {
    pub p: String,
    pub n: String,
    pub poly: Vec<String>,
    pub generator: Vec<String>,
    pub delta: Option<Vec<String>>,
}

impl FieldCtx {
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// Builds F_{p^n}. Without `poly` the smallest monic irreducible of
    /// degree `n` is used.
    pub fn new(p: u64, n: u32, poly: Option<Vec<u64>>) -> Result<Self> {
        if !prime::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidPolynomial("degree must be positive".into()));
        }
        let q = (p as u128).pow(n);
        if q > MAX_TABLE_ORDER as u128 {
            return Err(Error::FieldTooLarge(q));
        }
        let q = q as u64;
        let poly = match poly {
            Some(f) => {
                let f = poly::trim(f);
                if poly::degree(&f) != Some(n as usize) || f[n as usize] != 1 {
                    return Err(Error::InvalidPolynomial(format!(
                        "expected a monic polynomial of degree {n}, got {f:?}"
                    )));
                }
                if f.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidPolynomial(format!(
                        "coefficients must lie in 0..{p}"
                    )));
                }
                if !poly::is_irreducible(&f, p) {
                    return Err(Error::ReduciblePolynomial { poly: f, p });
                }
                f
            }
            None => poly::smallest_irreducible(n, p),
        };
        let slow = SlowField { p, n, poly: &poly };
        let factors = prime::prime_divisors(q - 1);
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&r| slow.pow(g, (q - 1) / r) != 1))
            .expect("F_q^x is cyclic");
        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u64;
        for i in 0..(q - 1) as usize {
            exp[i] = x as u32;
            exp[i + q as usize - 1] = x as u32;
            log[x as usize] = i as u32;
            x = slow.mul(x, generator);
        }
        let neg = (0..q).map(|a| slow.neg(a) as u32).collect();
        let add = (q <= ADD_TABLE_MAX).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = slow.add(a, b) as u32;
                }
            }
            t
        });
        Ok(FieldCtx { p, n, q, poly, generator: Fe(generator as u32), exp, log, neg, add })
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Iterates all elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q as u32).map(Fe)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> + Clone {
        (1..self.q as u32).map(Fe)
    }

    /// Embeds an integer through F_p.
    pub fn from_int(&self, k: i64) -> Fe {
        Fe(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn is_prime_subfield(&self, a: Fe) -> bool {
        (a.0 as u64) < self.p
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if let Some(t) = &self.add {
            return Fe(t[(a.0 as u64 * self.q + b.0 as u64) as usize]);
        }
        let mut out = 0u64;
        let mut place = 1u64;
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fe(out as u32)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let l = self.log[a.0 as usize];
        Some(Fe(self.exp[((self.q - 1) as u32 - l) as usize % (self.q as usize - 1)]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let l = self.log[a.0 as usize] as u128 * e as u128 % (self.q - 1) as u128;
        Fe(self.exp[l as usize])
    }

    /// Discrete logarithm to the fixed generator.
    pub fn log(&self, a: Fe) -> Option<u64> {
        (a.0 != 0).then(|| self.log[a.0 as usize] as u64)
    }

    pub fn exp(&self, k: u64) -> Fe {
        Fe(self.exp[(k % (self.q - 1)) as usize])
    }

    /// Position in the total order "zero first, then by generator exponent".
    #[inline]
    pub fn rank(&self, a: Fe) -> u32 {
        if a.0 == 0 {
            0
        } else {
            self.log[a.0 as usize] + 1
        }
    }

    pub fn from_rank(&self, r: u32) -> Fe {
        if r == 0 {
            Fe::ZERO
        } else {
            Fe(self.exp[r as usize - 1])
        }
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fe) -> Option<u64> {
        let l = self.log(a)?;
        Some((self.q - 1) / num_integer::gcd(l, self.q - 1))
    }

    pub fn is_cube(&self, a: Fe) -> bool {
        a.0 != 0 && self.log[a.0 as usize] as u64 % num_integer::gcd(3, self.q - 1) == 0
    }

    pub fn is_square(&self, a: Fe) -> bool {
        a.0 != 0 && self.log[a.0 as usize] as u64 % num_integer::gcd(2, self.q - 1) == 0
    }

    /// A cube nonresidue, which exists exactly when q = 1 (mod 3).
    pub fn cube_nonresidue(&self, rule: DeltaRule) -> Result<Fe> {
        if self.q % 3 != 1 {
            return Err(Error::NotCongruent1Mod3(self.q));
        }
        let d = match rule {
            DeltaRule::FirstNonresidue => self.nonzero().find(|&a| !self.is_cube(a)),
            DeltaRule::Generator => Some(self.generator),
        };
        let d = d.expect("q = 1 mod 3 has non-cubes");
        debug_assert_ne!(self.pow(d, (self.q - 1) / 3), Fe::ONE);
        Ok(d)
    }

    /// The nonsquare used in elliptic class representatives: the first
    /// nonsquare in generator-power order, i.e. the generator itself.
    /// `None` in characteristic 2, where every element is a square.
    pub fn nonsquare(&self) -> Option<Fe> {
        (self.p != 2).then_some(self.generator)
    }

    /// Norm from F_q down to F_p.
    pub fn norm_to_prime(&self, a: Fe) -> Fe {
        self.pow(a, (self.q - 1) / (self.p - 1))
    }

    /// Base-`p` digits of an element (polynomial coefficients).
    pub fn coords(&self, a: Fe) -> Vec<u64> {
        let mut x = a.0 as u64;
        (0..self.n)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u64]) -> Result<Fe> {
        if coords.len() > self.n as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!("bad coordinates {coords:?} for F_{}", self.q)));
        }
        Ok(Fe(coords.iter().rev().fold(0u64, |acc, &c| acc * self.p + c) as u32))
    }

    pub fn config(&self, delta: Option<Fe>) -> FieldConfig {
        let s = |v: Vec<u64>| v.into_iter().map(|c| c.to_string()).collect();
        FieldConfig {
            p: self.p.to_string(),
            n: self.n.to_string(),
            poly: s(self.poly.clone()),
            generator: s(self.coords(self.generator)),
            delta: delta.map(|d| s(self.coords(d))),
        }
    }
}

/// Polynomial-arithmetic field used only while building the tables.
struct SlowField<'a> {
    p: u64,
    n: u32,
    poly: &'a [u64],
}

impl SlowField<'_> {
    fn digits(&self, mut a: u64) -> Vec<u64> {
        (0..self.n)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, f: &[u64]) -> u64 {
        f.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.encode(&s)
    }

    fn neg(&self, a: u64) -> u64 {
        let s: Vec<u64> = self.digits(a).iter().map(|&u| (self.p - u) % self.p).collect();
        self.encode(&s)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let prod = poly::mul(&self.digits(a), &self.digits(b), self.p);
        self.encode(&poly::rem(&prod, self.poly, self.p))
    }

    fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_errors() {
        assert_eq!(FieldCtx::prime(4).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            FieldCtx::new(2, 2, Some(vec![1, 0, 1])),
            Err(Error::ReduciblePolynomial { .. })
        ));
        assert_eq!(FieldCtx::prime(7).unwrap().q, 7);
        assert_eq!(FieldCtx::prime(2).unwrap().q, 2);
    }

    #[test]
    fn f4_default_polynomial() {
        let f = FieldCtx::new(2, 2, None).unwrap();
        assert_eq!(f.poly, vec![1, 1, 1]);
        assert_eq!(f.mult_order(f.generator), Some(3));
    }

    #[test]
    fn cube_nonresidues() {
        let f7 = FieldCtx::prime(7).unwrap();
        let cubes: Vec<u32> = f7.nonzero().filter(|&a| f7.is_cube(a)).map(|a| a.0).collect();
        assert_eq!(cubes, vec![1, 6]);
        assert_eq!(f7.cube_nonresidue(DeltaRule::FirstNonresidue).unwrap(), Fe(2));
        let f4 = FieldCtx::new(2, 2, None).unwrap();
        let d = f4.cube_nonresidue(DeltaRule::FirstNonresidue).unwrap();
        assert_eq!(f4.mult_order(d), Some(3));
        assert_eq!(
            FieldCtx::prime(5).unwrap().cube_nonresidue(DeltaRule::default()),
            Err(Error::NotCongruent1Mod3(5))
        );
    }

    #[test]
    fn cube_image_size() {
        for (p, n) in [(2, 2), (7, 1), (13, 1), (2, 4), (5, 1), (3, 2), (2, 3)] {
            let f = FieldCtx::new(p, n, None).unwrap();
            let mut img: Vec<Fe> = f.nonzero().map(|a| f.pow(a, 3)).collect();
            img.sort();
            img.dedup();
            let expect = if f.q % 3 == 1 { (f.q - 1) / 3 } else { f.q - 1 };
            assert_eq!(img.len() as u64, expect, "q = {}", f.q);
        }
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative() {
        for (p, n) in [(2, 2), (2, 6), (3, 3), (7, 2)] {
            let f = FieldCtx::new(p, n, None).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn prime_field_norm_is_onto() {
        let f = FieldCtx::new(2, 2, None).unwrap();
        assert_eq!(f.norm_to_prime(f.generator), Fe::ONE);
        let f = FieldCtx::new(7, 2, None).unwrap();
        let mut img: Vec<Fe> = f.nonzero().map(|a| f.norm_to_prime(a)).collect();
        img.sort();
        img.dedup();
        assert_eq!(img.len(), 6);
        assert!(img.iter().all(|&a| f.is_prime_subfield(a)));
    }

    #[test]
    fn coords_round_trip() {
        let f = FieldCtx::new(3, 3, None).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coords(&f.coords(a)).unwrap(), a);
        }
    }

    #[test]
    fn digitwise_addition_matches_table() {
        // q = 2187 is above the addition-table cutoff
        let big = FieldCtx::new(3, 7, None).unwrap();
        assert!(big.add.is_none());
        for a in (0..big.q as u32).step_by(97).map(Fe) {
            for b in (0..big.q as u32).step_by(89).map(Fe) {
                let s = big.add(a, b);
                assert_eq!(big.sub(s, b), a);
                let (ca, cb, cs) = (big.coords(a), big.coords(b), big.coords(s));
                for i in 0..7 {
                    assert_eq!((ca[i] + cb[i]) % 3, cs[i]);
                }
            }
        }
    }
}
