//! The cubic extension F_q(t) with t^3 = delta, isomorphic to F_{q^3}.
//!
//! Elements are coordinate triples (x1, x2, x3) meaning x1 + x2 t + x3 t^2.

use std::sync::Arc;

use super::field::{DeltaRule, Fe, FieldCtx};
use super::prime;
use crate::error::{Error, Result};

pub type Fq3 = [Fe; 3];

const TOP_TABLE_MAX: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Fp,
    Fq,
    Fq3,
}

/// An element tagged with the level it is considered to live at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldElem {
    Fp(Fe),
    Fq(Fe),
    Fq3(Fq3),
}

impl FieldElem {
    pub fn level(&self) -> Level {
        match self {
            FieldElem::Fp(_) => Level::Fp,
            FieldElem::Fq(_) => Level::Fq,
            FieldElem::Fq3(_) => Level::Fq3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Tower {
    pub base: Arc<FieldCtx>,
    pub delta: Fe,
    /// Primitive cube root of unity delta^((q-1)/3); t^q = omega t.
    pub omega: Fe,
    pub generator: Fq3,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Tower {
    pub fn new(base: FieldCtx, rule: DeltaRule) -> Result<Self> {
        let base = Arc::new(base);
        let delta = base.cube_nonresidue(rule)?;
        Self::with_delta(base, delta)
    }

    pub fn with_delta(base: Arc<FieldCtx>, delta: Fe) -> Result<Self> {
        if base.q % 3 != 1 {
            return Err(Error::NotCongruent1Mod3(base.q));
        }
        if base.is_cube(delta) {
            return Err(Error::Parse("delta must be a cube nonresidue".into()));
        }
        let omega = base.pow(delta, (base.q - 1) / 3);
        let mut tower = Tower { base, delta, omega, generator: [Fe::ZERO; 3], exp: vec![], log: vec![] };
        let q = tower.base.q;
        let n3 = q * q * q - 1;
        let factors = prime::prime_divisors(n3);
        let generator = (1..=n3)
            .map(|i| tower.from_index(i))
            .find(|&g| factors.iter().all(|&r| tower.pow_slow(g, n3 / r) != tower.one()))
            .expect("F_{q^3}^x is cyclic");
        tower.generator = generator;
        if n3 < TOP_TABLE_MAX {
            let mut exp = vec![0u32; 2 * n3 as usize];
            let mut log = vec![u32::MAX; n3 as usize + 1];
            let mut x = tower.one();
            for i in 0..n3 as usize {
                let idx = tower.index(&x) as u32;
                exp[i] = idx;
                exp[i + n3 as usize] = idx;
                log[idx as usize] = i as u32;
                x = tower.mul_slow(&x, &generator);
            }
            tower.exp = exp;
            tower.log = log;
        }
        Ok(tower)
    }

    pub fn q(&self) -> u64 {
        self.base.q
    }

    pub fn has_tables(&self) -> bool {
        !self.log.is_empty()
    }

    pub fn zero(&self) -> Fq3 {
        [Fe::ZERO; 3]
    }

    pub fn one(&self) -> Fq3 {
        [Fe::ONE, Fe::ZERO, Fe::ZERO]
    }

    /// The cube root t of delta.
    pub fn t(&self) -> Fq3 {
        [Fe::ZERO, Fe::ONE, Fe::ZERO]
    }

    pub fn embed(&self, a: Fe) -> Fq3 {
        [a, Fe::ZERO, Fe::ZERO]
    }

    pub fn is_zero(&self, a: &Fq3) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// Dense index x1 + x2 q + x3 q^2.
    #[inline]
    pub fn index(&self, a: &Fq3) -> u64 {
        let q = self.base.q;
        a[0].0 as u64 + q * (a[1].0 as u64 + q * a[2].0 as u64)
    }

    pub fn from_index(&self, i: u64) -> Fq3 {
        let q = self.base.q;
        [Fe((i % q) as u32), Fe((i / q % q) as u32), Fe((i / (q * q)) as u32)]
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq3> + '_ {
        let q = self.base.q;
        (0..q * q * q).map(|i| self.from_index(i))
    }

    pub fn add(&self, a: &Fq3, b: &Fq3) -> Fq3 {
        let f = &self.base;
        [f.add(a[0], b[0]), f.add(a[1], b[1]), f.add(a[2], b[2])]
    }

    pub fn sub(&self, a: &Fq3, b: &Fq3) -> Fq3 {
        let f = &self.base;
        [f.sub(a[0], b[0]), f.sub(a[1], b[1]), f.sub(a[2], b[2])]
    }

    pub fn scale(&self, c: Fe, a: &Fq3) -> Fq3 {
        let f = &self.base;
        [f.mul(c, a[0]), f.mul(c, a[1]), f.mul(c, a[2])]
    }

    /// Schoolbook product reduced with t^3 = delta.
    pub fn mul_slow(&self, a: &Fq3, b: &Fq3) -> Fq3 {
        let f = &self.base;
        let m = |x: Fe, y: Fe| f.mul(x, y);
        let d = self.delta;
        let c0 = f.add(m(a[0], b[0]), m(d, f.add(m(a[1], b[2]), m(a[2], b[1]))));
        let c1 = f.add(f.add(m(a[0], b[1]), m(a[1], b[0])), m(d, m(a[2], b[2])));
        let c2 = f.add(f.add(m(a[0], b[2]), m(a[1], b[1])), m(a[2], b[0]));
        [c0, c1, c2]
    }

    #[inline]
    pub fn mul(&self, a: &Fq3, b: &Fq3) -> Fq3 {
        if !self.has_tables() {
            return self.mul_slow(a, b);
        }
        let (ia, ib) = (self.index(a), self.index(b));
        if ia == 0 || ib == 0 {
            return self.zero();
        }
        self.from_index(self.exp[(self.log[ia as usize] + self.log[ib as usize]) as usize] as u64)
    }

    /// Norm to F_q, equal to the determinant of multiplication by `a`.
    pub fn norm(&self, a: &Fq3) -> Fe {
        let (c, d) = self.cofactors(a);
        d.iter().zip(&c).fold(Fe::ZERO, |acc, (&x, &y)| self.base.add(acc, self.base.mul(x, y)))
    }

    // First column of the adjugate of the multiplication matrix, and the
    // matching first-row entries so that det = sum row[i] * cof[i].
    fn cofactors(&self, a: &Fq3) -> ([Fe; 3], [Fe; 3]) {
        let f = &self.base;
        let d = self.delta;
        let c0 = f.sub(f.mul(a[0], a[0]), f.mul(d, f.mul(a[1], a[2])));
        let c1 = f.sub(f.mul(d, f.mul(a[2], a[2])), f.mul(a[0], a[1]));
        let c2 = f.sub(f.mul(a[1], a[1]), f.mul(a[0], a[2]));
        ([c0, c1, c2], [a[0], f.mul(d, a[2]), f.mul(d, a[1])])
    }

    pub fn inv(&self, a: &Fq3) -> Option<Fq3> {
        if self.has_tables() {
            let i = self.index(a);
            if i == 0 {
                return None;
            }
            let n3 = self.log.len() as u32 - 1;
            let l = self.log[i as usize];
            return Some(self.from_index(self.exp[((n3 - l) % n3) as usize] as u64));
        }
        let (c, _) = self.cofactors(a);
        let ni = self.base.inv(self.norm(a))?;
        Some(self.scale(ni, &c))
    }

    pub fn div(&self, a: &Fq3, b: &Fq3) -> Option<Fq3> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow_slow(&self, a: Fq3, mut e: u64) -> Fq3 {
        let mut r = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(&r, &b);
            }
            b = self.mul_slow(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn pow(&self, a: &Fq3, e: u64) -> Fq3 {
        self.pow_slow(*a, e)
    }

    /// x -> x^q, computed as x1 + x2 omega t + x3 omega^2 t^2.
    pub fn frobenius(&self, a: &Fq3) -> Fq3 {
        let f = &self.base;
        let w2 = f.mul(self.omega, self.omega);
        [a[0], f.mul(self.omega, a[1]), f.mul(w2, a[2])]
    }

    pub fn log(&self, a: &Fq3) -> Option<u64> {
        let i = self.index(a);
        (self.has_tables() && i != 0).then(|| self.log[i as usize] as u64)
    }

    pub fn mult_order(&self, a: &Fq3) -> Option<u64> {
        if self.is_zero(a) {
            return None;
        }
        let q = self.base.q;
        let n3 = q * q * q - 1;
        let mut ord = n3;
        for r in prime::prime_divisors(n3) {
            while ord % r == 0 && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        Some(ord)
    }

    /// Norm between tower levels.
    pub fn norm_to(&self, x: FieldElem, to: Level) -> Result<FieldElem> {
        let f = &self.base;
        match (x, to) {
            (FieldElem::Fq3(a), Level::Fq) => Ok(FieldElem::Fq(self.norm(&a))),
            (FieldElem::Fq3(a), Level::Fp) => Ok(FieldElem::Fp(f.norm_to_prime(self.norm(&a)))),
            (FieldElem::Fq(a), Level::Fp) => Ok(FieldElem::Fp(f.norm_to_prime(a))),
            (x, to) => Err(Error::LevelMismatch(format!(
                "no norm from {:?} to {to:?}",
                x.level()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(p: u64, n: u32) -> Tower {
        Tower::new(FieldCtx::new(p, n, None).unwrap(), DeltaRule::default()).unwrap()
    }

    #[test]
    fn defining_relation_and_generator() {
        let tw = tower(2, 2);
        let t = tw.t();
        assert_eq!(tw.mul(&tw.mul(&t, &t), &t), tw.embed(tw.delta));
        assert_eq!(tw.mult_order(&tw.generator), Some(63));
        assert_eq!(tw.elements().filter(|a| !tw.is_zero(a)).count(), 63);
    }

    #[test]
    fn table_and_schoolbook_products_agree() {
        for (p, n) in [(2, 2), (7, 1)] {
            let tw = tower(p, n);
            for a in tw.elements() {
                for b in tw.elements().step_by(5) {
                    assert_eq!(tw.mul(&a, &b), tw.mul_slow(&a, &b));
                }
                if !tw.is_zero(&a) {
                    let (c, _) = tw.cofactors(&a);
                    let adj = tw.scale(tw.base.inv(tw.norm(&a)).unwrap(), &c);
                    assert_eq!(tw.inv(&a), Some(adj));
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_base() {
        let tw = tower(2, 2);
        for a in tw.elements() {
            assert_eq!(tw.frobenius(&a), tw.pow(&a, 4));
            let fixed = tw.frobenius(&a) == a;
            assert_eq!(fixed, a[1].is_zero() && a[2].is_zero());
            let f3 = tw.frobenius(&tw.frobenius(&tw.frobenius(&a)));
            assert_eq!(f3, a);
        }
    }

    #[test]
    fn norms() {
        let tw = tower(7, 1);
        let f = tw.base.clone();
        for a in f.nonzero() {
            assert_eq!(tw.norm(&tw.embed(a)), f.pow(a, 3));
        }
        assert_eq!(tw.norm(&tw.t()), tw.delta);
        // multiplicative and onto F_q^x
        let mut img = std::collections::BTreeSet::new();
        for a in tw.elements().filter(|a| !tw.is_zero(a)) {
            let b = tw.generator;
            assert_eq!(tw.norm(&tw.mul(&a, &b)), f.mul(tw.norm(&a), tw.norm(&b)));
            img.insert(tw.norm(&a));
        }
        assert_eq!(img.len(), 6);
        let f4 = tower(2, 2);
        let w = f4.base.generator;
        assert_eq!(f4.norm_to(FieldElem::Fq(w), Level::Fp), Ok(FieldElem::Fp(Fe::ONE)));
        assert!(matches!(
            f4.norm_to(FieldElem::Fp(Fe::ONE), Level::Fq3),
            Err(Error::LevelMismatch(_))
        ));
    }
}
