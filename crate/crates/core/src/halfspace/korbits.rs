//! K-orbits on H_q, i.e. the double cosets K\G/K.
//!
//! Points are swept in key order; the first point of each new orbit is its
//! minimum and becomes the canonical representative.

use serde::Serialize;

use super::{HPoint, HalfSpace};
use crate::error::{check_budget, Result};
use crate::gl3::Gl3Mat;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct KOrbits {
    pub hs: HalfSpace,
    id: Vec<u32>,
    reps: Vec<HPoint>,
    sizes: Vec<u64>,
}

/// One CSV row: canonical representative and orbit size.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitRow {
    pub id: u32,
    pub a1: u32,
    pub a2: u32,
    pub a3: u32,
    pub b1: u32,
    pub b2: u32,
    pub b3: u32,
    pub size: u64,
}

impl KOrbits {
    pub fn build(hs: &HalfSpace, budget: u64) -> Result<Self> {
        check_budget("K-orbit table", hs.key_space() as u128, budget)?;
        let kz = hs.k_mod_center();
        let mut id = vec![NONE; hs.key_space() as usize];
        let (mut reps, mut sizes) = (Vec::new(), Vec::new());
        for k in 0..hs.key_space() {
            if id[k as usize] != NONE {
                continue;
            }
            let z = hs.from_key(k);
            if !hs.is_valid(&z) {
                continue;
            }
            let o = reps.len() as u32;
            let mut size = 0;
            for g in &kz {
                let w = hs.key(&hs.act(g, &z).expect("K preserves H_q")) as usize;
                if id[w] == NONE {
                    id[w] = o;
                    size += 1;
                }
            }
            reps.push(z);
            sizes.push(size);
        }
        Ok(KOrbits { hs: hs.clone(), id, reps, sizes })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[HPoint] {
        &self.reps
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    #[inline]
    pub fn orbit_of(&self, z: &HPoint) -> u32 {
        let o = self.id[self.hs.key(z) as usize];
        debug_assert_ne!(o, NONE, "point outside H_q");
        o
    }

    /// Orbit of g.p0; this is how a K-bi-invariant function sees g.
    #[inline]
    pub fn orbit_of_matrix(&self, g: &Gl3Mat) -> u32 {
        self.orbit_of(&self.hs.act_p0(g).expect("invertible matrix"))
    }

    /// The minimal point of the K-orbit of `z`.
    pub fn canonical_rep(&self, z: &HPoint) -> HPoint {
        self.reps[self.orbit_of(z) as usize]
    }

    pub fn orbit_of_rep(&self, z: &HPoint) -> Option<u32> {
        let o = *self.id.get(self.hs.key(z) as usize)?;
        (o != NONE && self.reps[o as usize] == *z).then_some(o)
    }

    /// Counts of the given points per orbit.
    pub fn histogram(&self, points: impl IntoIterator<Item = HPoint>) -> Vec<i64> {
        let mut h = vec![0i64; self.len()];
        for z in points {
            h[self.orbit_of(&z) as usize] += 1;
        }
        h
    }

    pub fn rows(&self) -> Vec<OrbitRow> {
        self.reps
            .iter()
            .zip(&self.sizes)
            .enumerate()
            .map(|(i, (z, &size))| {
                let c = z.coords().map(|x| x.0);
                OrbitRow { id: i as u32, a1: c[0], a2: c[1], a3: c[2], b1: c[3], b2: c[4], b3: c[5], size }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::hs;
    use super::*;

    #[test]
    fn orbit_table_q4() {
        let h = hs(2, 2);
        let ko = KOrbits::build(&h, 1 << 30).unwrap();
        assert_eq!(ko.sizes().iter().sum::<u64>(), 2880);
        assert_eq!(ko.len(), 140);
        let p0 = h.base_point();
        assert_eq!(ko.sizes()[ko.orbit_of(&p0) as usize], 1);
        let k = h.stabilizer_k();
        for z in h.enumerate(1 << 30).unwrap() {
            let r = ko.canonical_rep(&z);
            assert_eq!(ko.canonical_rep(&r), r);
            assert!(h.key(&r) <= h.key(&z));
            for g in k.iter().step_by(5) {
                assert_eq!(ko.canonical_rep(&h.act(g, &z).unwrap()), r);
            }
        }
    }
}
