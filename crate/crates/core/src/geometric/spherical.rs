//! K-bi-invariant functions, stored as one rational value per K-orbit of
//! H_q. Evaluating at g means looking up the orbit of g.p0.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Fe;
use crate::gl3::Gl3Mat;
use crate::halfspace::{HPoint, KOrbits};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalFn {
    values: Vec<BigRational>,
}

/// JSON form of one table entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FnEntry {
    pub orbit_rep: [u32; 6],
    pub value: String,
}

pub fn rational_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl SphericalFn {
    pub fn from_values(values: Vec<BigRational>) -> Self {
        SphericalFn { values }
    }

    pub fn constant(orbits: &KOrbits, c: BigRational) -> Self {
        SphericalFn { values: vec![c; orbits.len()] }
    }

    pub fn one(orbits: &KOrbits) -> Self {
        Self::constant(orbits, BigRational::one())
    }

    /// Indicator of the double coset K, i.e. of the orbit {p0}.
    pub fn delta_p0(orbits: &KOrbits) -> Self {
        let mut values = vec![BigRational::zero(); orbits.len()];
        values[orbits.orbit_of(&orbits.hs.base_point()) as usize] = BigRational::one();
        SphericalFn { values }
    }

    /// Values num/den with num in [-5, 5] and den in [1, 6].
    pub fn random(orbits: &KOrbits, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..orbits.len())
            .map(|_| {
                let n: i64 = rng.gen_range(-5..=5);
                let d: i64 = rng.gen_range(1..=6);
                BigRational::new(n.into(), d.into())
            })
            .collect();
        SphericalFn { values }
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, orbit: u32) -> &BigRational {
        &self.values[orbit as usize]
    }

    pub fn at_point(&self, orbits: &KOrbits, z: &HPoint) -> &BigRational {
        self.value(orbits.orbit_of(z))
    }

    pub fn at(&self, orbits: &KOrbits, g: &Gl3Mat) -> &BigRational {
        self.value(orbits.orbit_of_matrix(g))
    }

    /// Sum of f over a multiset of points given by per-orbit counts.
    pub fn pair(&self, tally: &[i64]) -> BigRational {
        assert_eq!(tally.len(), self.values.len(), "tally from a different orbit table");
        let mut acc = BigRational::zero();
        for (&c, v) in tally.iter().zip(&self.values) {
            if c != 0 && !v.is_zero() {
                acc += v * BigRational::from_integer(c.into());
            }
        }
        acc
    }

    pub fn to_entries(&self, orbits: &KOrbits) -> Vec<FnEntry> {
        orbits
            .reps()
            .iter()
            .zip(&self.values)
            .map(|(z, v)| FnEntry { orbit_rep: z.coords().map(|x| x.0), value: rational_string(v) })
            .collect()
    }

    /// Orbits not listed get the value 0; every listed point must be a
    /// canonical orbit representative.
    pub fn from_entries(orbits: &KOrbits, entries: &[FnEntry]) -> Result<Self> {
        let mut values = vec![BigRational::zero(); orbits.len()];
        let q = orbits.hs.q() as u32;
        for e in entries {
            if e.orbit_rep.iter().any(|&c| c >= q) {
                return Err(Error::Parse(format!("coordinate out of range in {:?}", e.orbit_rep)));
            }
            let z = HPoint::from_coords(e.orbit_rep.map(Fe));
            if !orbits.hs.is_valid(&z) {
                return Err(Error::InvalidPoint);
            }
            let o = orbits
                .orbit_of_rep(&z)
                .ok_or_else(|| Error::Parse(format!("{:?} is not a canonical orbit representative", e.orbit_rep)))?;
            values[o as usize] = parse_rational(&e.value)?;
        }
        Ok(SphericalFn { values })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{DeltaRule, FieldCtx, Tower};
    use crate::gl3::mat;
    use crate::halfspace::HalfSpace;

    fn orbits() -> KOrbits {
        let hs = HalfSpace::new(Tower::new(FieldCtx::new(2, 2, None).unwrap(), DeltaRule::default()).unwrap());
        KOrbits::build(&hs, 1 << 30).unwrap()
    }

    #[test]
    fn seeded_and_round_trips() {
        let ko = orbits();
        let f = SphericalFn::random(&ko, 3);
        assert_eq!(f, SphericalFn::random(&ko, 3));
        assert_ne!(f, SphericalFn::random(&ko, 4));
        let entries = f.to_entries(&ko);
        let json = serde_json::to_string(&entries).unwrap();
        let back: Vec<FnEntry> = serde_json::from_str(&json).unwrap();
        assert_eq!(SphericalFn::from_entries(&ko, &back).unwrap(), f);
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn delta_and_bi_invariance() {
        let ko = orbits();
        let hs = &ko.hs;
        let f = hs.field();
        let d = SphericalFn::delta_p0(&ko);
        assert_eq!(d.values().iter().filter(|v| !v.is_zero()).count(), 1);
        assert!(d.at(&ko, &Gl3Mat::identity()).is_one());
        let g = SphericalFn::random(&ko, 11);
        let k = hs.stabilizer_k();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let x = loop {
                let m = Gl3Mat(std::array::from_fn(|_| Fe(rng.gen_range(0..4))));
                if !mat::det(f, &m).is_zero() {
                    break m;
                }
            };
            let (k1, k2) = (k[rng.gen_range(0..k.len())], k[rng.gen_range(0..k.len())]);
            let kxh = mat::mul(f, &k1, &mat::mul(f, &x, &k2));
            assert_eq!(g.at(&ko, &kxh), g.at(&ko, &x));
        }
    }

    #[test]
    fn rejects_non_representatives() {
        let ko = orbits();
        let not_rep = ko.hs.enumerate(1 << 30).unwrap().find(|z| ko.orbit_of_rep(z).is_none()).unwrap();
        let e = FnEntry { orbit_rep: not_rep.coords().map(|x| x.0), value: "1".into() };
        assert!(SphericalFn::from_entries(&ko, &[e]).is_err());
    }
}
