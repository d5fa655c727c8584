//! The finite upper half-space H_q = G/K.
//!
//! A point is a pair (alpha, beta) of elements of F_q(t), t^3 = delta, with
//! alpha_2 beta_3 - alpha_3 beta_2 != 0. GL3(F_q) acts by fractional-linear
//! maps; the base point is p0 = (t^2, t) and K is its stabilizer.

pub mod domains;
mod korbits;

pub use domains::{domain_size, fundamental_domain, verify_fundamental_domain, DomainCheck};
pub use korbits::{KOrbits, OrbitRow};

use std::sync::Arc;

use crate::error::{check_budget, Error, Result};
use crate::gf::{Fe, FieldCtx, Fq3, Tower};
use crate::gl3::Gl3Mat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HPoint {
    pub alpha: Fq3,
    pub beta: Fq3,
}

impl HPoint {
    pub fn new(alpha: Fq3, beta: Fq3) -> Self {
        HPoint { alpha, beta }
    }

    /// Coordinates (alpha_1, alpha_2, alpha_3, beta_1, beta_2, beta_3).
    pub fn coords(&self) -> [Fe; 6] {
        let (a, b) = (self.alpha, self.beta);
        [a[0], a[1], a[2], b[0], b[1], b[2]]
    }

    pub fn from_coords(c: [Fe; 6]) -> Self {
        HPoint { alpha: [c[0], c[1], c[2]], beta: [c[3], c[4], c[5]] }
    }
}

/// The affine matrix [[a, b, c], [d, e, f], [0, 0, 1]].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineRep {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
    pub e: Fe,
    pub f: Fe,
}

impl AffineRep {
    pub fn matrix(&self) -> Gl3Mat {
        let (z, o) = (Fe::ZERO, Fe::ONE);
        Gl3Mat([self.a, self.b, self.c, self.d, self.e, self.f, z, z, o])
    }
}

/// |H_q| = (q^2 - 1)(q - 1) q^3.
pub fn halfspace_size(q: u64) -> u128 {
    let q = q as u128;
    (q * q - 1) * (q - 1) * q * q * q
}

#[derive(Debug, Clone)]
pub struct HalfSpace {
    pub tower: Arc<Tower>,
}

impl HalfSpace {
    pub fn new(tower: Tower) -> Self {
        HalfSpace { tower: Arc::new(tower) }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.tower.base
    }

    pub fn q(&self) -> u64 {
        self.tower.q()
    }

    pub fn is_valid(&self, z: &HPoint) -> bool {
        let f = self.field();
        let (a, b) = (&z.alpha, &z.beta);
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])) != Fe::ZERO
    }

    pub fn base_point(&self) -> HPoint {
        let (z, o) = (Fe::ZERO, Fe::ONE);
        HPoint { alpha: [z, z, o], beta: [z, o, z] }
    }

    /// Fractional-linear action g.(alpha, beta).
    pub fn act(&self, g: &Gl3Mat, z: &HPoint) -> Result<HPoint> {
        let tw = &*self.tower;
        let row = |i: usize| {
            let s = tw.add(&tw.scale(g.at(i, 0), &z.alpha), &tw.scale(g.at(i, 1), &z.beta));
            tw.add(&s, &tw.embed(g.at(i, 2)))
        };
        let den = tw.inv(&row(2)).ok_or(Error::DenominatorZero)?;
        let out = HPoint { alpha: tw.mul(&row(0), &den), beta: tw.mul(&row(1), &den) };
        if !self.is_valid(&out) {
            return Err(Error::InvalidPoint);
        }
        Ok(out)
    }

    /// g.p0, the image of the base point.
    pub fn act_p0(&self, g: &Gl3Mat) -> Result<HPoint> {
        let col = |i: usize| [g.at(i, 2), g.at(i, 1), g.at(i, 0)];
        let tw = &*self.tower;
        let den = tw.inv(&col(2)).ok_or(Error::DenominatorZero)?;
        let out = HPoint { alpha: tw.mul(&col(0), &den), beta: tw.mul(&col(1), &den) };
        if !self.is_valid(&out) {
            return Err(Error::InvalidPoint);
        }
        Ok(out)
    }

    /// Position in the total order: lexicographic on (alpha_1, ..., beta_3),
    /// field elements ranked zero first, then by generator exponent.
    #[inline]
    pub fn key(&self, z: &HPoint) -> u64 {
        let f = self.field();
        let q = f.q;
        z.coords().iter().fold(0u64, |acc, &x| acc * q + f.rank(x) as u64)
    }

    pub fn from_key(&self, mut k: u64) -> HPoint {
        let f = self.field();
        let mut c = [Fe::ZERO; 6];
        for x in c.iter_mut().rev() {
            *x = f.from_rank((k % f.q) as u32);
            k /= f.q;
        }
        HPoint::from_coords(c)
    }

    pub fn key_space(&self) -> u64 {
        self.q().pow(6)
    }

    /// All points of H_q in key order.
    pub fn enumerate(&self, budget: u64) -> Result<impl Iterator<Item = HPoint> + '_> {
        check_budget("half-space enumeration", self.key_space() as u128, budget)?;
        Ok((0..self.key_space()).map(|k| self.from_key(k)).filter(|z| self.is_valid(z)))
    }

    /// The element a + b t + c t^2 of F_q(t)^x as a matrix in K.
    pub fn k_matrix(&self, z: &Fq3) -> Gl3Mat {
        let f = self.field();
        let d = self.tower.delta;
        let [a, b, c] = *z;
        Gl3Mat([a, f.mul(c, d), f.mul(b, d), b, a, f.mul(c, d), c, b, a])
    }

    /// K, listed as the images of the nonzero elements of F_q(t).
    pub fn stabilizer_k(&self) -> Vec<Gl3Mat> {
        self.tower.elements().filter(|z| !self.tower.is_zero(z)).map(|z| self.k_matrix(&z)).collect()
    }

    /// Representatives of K/Z: c = 1; c = 0, b = 1; and the identity.
    pub fn k_mod_center(&self) -> Vec<Gl3Mat> {
        let f = self.field();
        let (z, o) = (Fe::ZERO, Fe::ONE);
        let mut out = Vec::new();
        for a in f.elements() {
            for b in f.elements() {
                out.push(self.k_matrix(&[a, b, o]));
            }
        }
        for a in f.elements() {
            out.push(self.k_matrix(&[a, o, z]));
        }
        out.push(self.k_matrix(&[o, z, z]));
        out
    }

    /// The unique affine matrix y with y.p0 = z.
    pub fn point_to_affine(&self, z: &HPoint) -> AffineRep {
        let (a, b) = (z.alpha, z.beta);
        AffineRep { a: a[2], b: a[1], c: a[0], d: b[2], e: b[1], f: b[0] }
    }

    pub fn affine_to_point(&self, y: &AffineRep) -> Result<HPoint> {
        self.act_p0(&y.matrix())
    }
}
