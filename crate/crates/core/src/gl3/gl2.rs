//! 2x2 matrices over F_q, used by the horocycle transform.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldCtx};

/// Row-major [[a, b], [c, d]].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2(pub [Fe; 4]);

impl Mat2 {
    pub fn scalar(a: Fe) -> Self {
        Mat2([a, Fe::ZERO, Fe::ZERO, a])
    }

    pub fn diag(a: Fe, b: Fe) -> Self {
        Mat2([a, Fe::ZERO, Fe::ZERO, b])
    }
}

pub fn det(f: &FieldCtx, m: &Mat2) -> Fe {
    f.sub(f.mul(m.0[0], m.0[3]), f.mul(m.0[1], m.0[2]))
}

pub fn mul(f: &FieldCtx, x: &Mat2, y: &Mat2) -> Mat2 {
    let (a, b) = (&x.0, &y.0);
    let e = |i: usize, j: usize| f.add(f.mul(a[2 * i], b[j]), f.mul(a[2 * i + 1], b[2 + j]));
    Mat2([e(0, 0), e(0, 1), e(1, 0), e(1, 1)])
}

pub fn inv(f: &FieldCtx, m: &Mat2) -> Result<Mat2> {
    let d = f.inv(det(f, m)).ok_or(Error::Singular)?;
    let e = &m.0;
    Ok(Mat2([f.mul(d, e[3]), f.neg(f.mul(d, e[1])), f.neg(f.mul(d, e[2])), f.mul(d, e[0])]))
}

/// All of GL2(F_q).
pub fn gl2_elements(f: &FieldCtx) -> Vec<Mat2> {
    let q = f.q as u32;
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let m = Mat2([Fe(a), Fe(b), Fe(c), Fe(d)]);
                    if !det(f, &m).is_zero() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// The GL2(F_q)-conjugacy class of `k`, sorted.
pub fn conjugacy_class(f: &FieldCtx, k: &Mat2) -> Result<Vec<Mat2>> {
    if det(f, k).is_zero() {
        return Err(Error::SingularKappa);
    }
    let set: BTreeSet<Mat2> = gl2_elements(f)
        .iter()
        .map(|x| mul(f, &inv(f, x).expect("invertible"), &mul(f, k, x)))
        .collect();
    Ok(set.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_sizes_over_f4() {
        let f = FieldCtx::new(2, 2, None).unwrap();
        assert_eq!(gl2_elements(&f).len(), 180);
        assert_eq!(conjugacy_class(&f, &Mat2::scalar(Fe::ONE)).unwrap().len(), 1);
        assert_eq!(conjugacy_class(&f, &Mat2::diag(Fe(1), Fe(2))).unwrap().len(), 20);
        let jordan = Mat2([Fe(1), Fe(1), Fe(0), Fe(1)]);
        assert_eq!(conjugacy_class(&f, &jordan).unwrap().len(), 15);
        assert_eq!(conjugacy_class(&f, &Mat2([Fe::ZERO; 4])), Err(Error::SingularKappa));
    }
}
