//! The horocycle transform
//! Hf(kappa) = sum over x, y in F_q and xi in the GL2-class of kappa of
//! f([[xi11, xi12, x], [xi21, xi22, y], [0, 0, 1]] p0).

use num_rational::BigRational;

use crate::error::Result;
use crate::gl3::gl2::{self, Mat2};
use crate::halfspace::{HPoint, HalfSpace, KOrbits};

use super::SphericalFn;

/// The q^2 |class(kappa)| points summed by Hf(kappa).
pub fn horocycle_points(hs: &HalfSpace, kappa: &Mat2) -> Result<Vec<HPoint>> {
    let f = hs.field();
    let class = gl2::conjugacy_class(f, kappa)?;
    let mut out = Vec::with_capacity(class.len() * (f.q * f.q) as usize);
    for xi in &class {
        let [a, b, c, d] = xi.0;
        for x in f.elements() {
            for y in f.elements() {
                // [[a, b, x], [c, d, y], [0, 0, 1]] p0 = (x + b t + a t^2, y + d t + c t^2)
                out.push(HPoint::new([x, b, a], [y, d, c]));
            }
        }
    }
    Ok(out)
}

pub fn horocycle_tally(orbits: &KOrbits, kappa: &Mat2) -> Result<Vec<i64>> {
    Ok(orbits.histogram(horocycle_points(&orbits.hs, kappa)?))
}

pub fn horocycle_transform(f: &SphericalFn, orbits: &KOrbits, kappa: &Mat2) -> Result<BigRational> {
    Ok(f.pair(&horocycle_tally(orbits, kappa)?))
}

/// Number of terms in Hf(kappa), which is Hf(kappa) for f = 1; needs no
/// orbit table.
pub fn horocycle_count(hs: &HalfSpace, kappa: &Mat2) -> Result<u128> {
    let f = hs.field();
    Ok(gl2::conjugacy_class(f, kappa)?.len() as u128 * (f.q as u128).pow(2))
}
