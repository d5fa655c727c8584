//! 3x3 matrices over F_q, row-major.

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldCtx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gl3Mat(pub [Fe; 9]);

impl Gl3Mat {
    pub fn new(f: &FieldCtx, entries: [Fe; 9]) -> Result<Self> {
        let m = Gl3Mat(entries);
        if det(f, &m).is_zero() {
            return Err(Error::Singular);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self::scalar(Fe::ONE)
    }

    pub fn scalar(a: Fe) -> Self {
        Self::diag(a, a, a)
    }

    pub fn diag(a: Fe, b: Fe, c: Fe) -> Self {
        let z = Fe::ZERO;
        Gl3Mat([a, z, z, z, b, z, z, z, c])
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Fe {
        self.0[3 * i + j]
    }

    /// Builds a matrix from small integers reduced into F_p.
    pub fn from_ints(f: &FieldCtx, e: [i64; 9]) -> Self {
        Gl3Mat(e.map(|x| f.from_int(x)))
    }

    /// Dense index sum e_i q^i, the key used by visited sets.
    #[inline]
    pub fn key(&self, q: u64) -> u64 {
        self.0.iter().rev().fold(0u64, |acc, e| acc * q + e.0 as u64)
    }

    pub fn from_key(mut k: u64, q: u64) -> Self {
        let mut e = [Fe::ZERO; 9];
        for x in e.iter_mut() {
            *x = Fe((k % q) as u32);
            k /= q;
        }
        Gl3Mat(e)
    }

    pub fn is_scalar(&self) -> bool {
        let m = &self.0;
        m[0] == m[4] && m[4] == m[8] && [1, 2, 3, 5, 6, 7].iter().all(|&i| m[i].is_zero())
    }
}

#[inline]
pub fn mul(f: &FieldCtx, a: &Gl3Mat, b: &Gl3Mat) -> Gl3Mat {
    let mut out = [Fe::ZERO; 9];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = f.mul(a.0[3 * i], b.0[j]);
            s = f.add(s, f.mul(a.0[3 * i + 1], b.0[3 + j]));
            s = f.add(s, f.mul(a.0[3 * i + 2], b.0[6 + j]));
            out[3 * i + j] = s;
        }
    }
    Gl3Mat(out)
}

pub fn sub(f: &FieldCtx, a: &Gl3Mat, b: &Gl3Mat) -> Gl3Mat {
    let mut out = a.0;
    for (o, &y) in out.iter_mut().zip(&b.0) {
        *o = f.sub(*o, y);
    }
    Gl3Mat(out)
}

pub fn scale(f: &FieldCtx, c: Fe, a: &Gl3Mat) -> Gl3Mat {
    Gl3Mat(a.0.map(|x| f.mul(c, x)))
}

#[inline]
pub fn det(f: &FieldCtx, m: &Gl3Mat) -> Fe {
    let e = &m.0;
    let t0 = f.mul(e[0], f.sub(f.mul(e[4], e[8]), f.mul(e[5], e[7])));
    let t1 = f.mul(e[1], f.sub(f.mul(e[3], e[8]), f.mul(e[5], e[6])));
    let t2 = f.mul(e[2], f.sub(f.mul(e[3], e[7]), f.mul(e[4], e[6])));
    f.add(f.sub(t0, t1), t2)
}

pub fn adjugate(f: &FieldCtx, m: &Gl3Mat) -> Gl3Mat {
    let e = &m.0;
    let c = |a: usize, b: usize, c: usize, d: usize| f.sub(f.mul(e[a], e[b]), f.mul(e[c], e[d]));
    Gl3Mat([
        c(4, 8, 5, 7),
        c(2, 7, 1, 8),
        c(1, 5, 2, 4),
        c(5, 6, 3, 8),
        c(0, 8, 2, 6),
        c(2, 3, 0, 5),
        c(3, 7, 4, 6),
        c(1, 6, 0, 7),
        c(0, 4, 1, 3),
    ])
}

pub fn inv(f: &FieldCtx, m: &Gl3Mat) -> Result<Gl3Mat> {
    let d = f.inv(det(f, m)).ok_or(Error::Singular)?;
    Ok(scale(f, d, &adjugate(f, m)))
}

/// `x^-1 m x`.
pub fn conj(f: &FieldCtx, m: &Gl3Mat, x: &Gl3Mat) -> Result<Gl3Mat> {
    Ok(mul(f, &inv(f, x)?, &mul(f, m, x)))
}

pub fn trace(f: &FieldCtx, m: &Gl3Mat) -> Fe {
    f.add(f.add(m.0[0], m.0[4]), m.0[8])
}

/// Characteristic polynomial det(xI - m) as monic coefficients
/// `[c0, c1, c2, 1]`, low-to-high.
pub fn char_poly(f: &FieldCtx, m: &Gl3Mat) -> [Fe; 4] {
    let e = &m.0;
    let minor = |a: usize, b: usize, c: usize, d: usize| f.sub(f.mul(e[a], e[b]), f.mul(e[c], e[d]));
    let s2 = f.add(f.add(minor(0, 4, 1, 3), minor(0, 8, 2, 6)), minor(4, 8, 5, 7));
    [f.neg(det(f, m)), s2, f.neg(trace(f, m)), Fe::ONE]
}

pub fn rank(f: &FieldCtx, m: &Gl3Mat) -> usize {
    let mut rows: Vec<[Fe; 3]> = (0..3).map(|i| [m.at(i, 0), m.at(i, 1), m.at(i, 2)]).collect();
    let mut r = 0;
    for col in 0..3 {
        let Some(piv) = (r..3).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][col]).expect("pivot is nonzero");
        for i in 0..3 {
            if i != r && !rows[i][col].is_zero() {
                let c = f.mul(rows[i][col], inv);
                for j in 0..3 {
                    rows[i][j] = f.sub(rows[i][j], f.mul(c, rows[r][j]));
                }
            }
        }
        r += 1;
    }
    r
}

/// `x^-1 m x` for x = I + c E_ij (i != j), via one column and one row op.
#[inline]
pub fn conj_elementary(f: &FieldCtx, m: &Gl3Mat, i: usize, j: usize, c: Fe) -> Gl3Mat {
    let mut e = m.0;
    // m x: column j += c * column i
    for r in 0..3 {
        e[3 * r + j] = f.add(e[3 * r + j], f.mul(c, e[3 * r + i]));
    }
    // x^-1 (m x): row i -= c * row j
    for col in 0..3 {
        e[3 * i + col] = f.sub(e[3 * i + col], f.mul(c, e[3 * j + col]));
    }
    Gl3Mat(e)
}

/// `x^-1 m x` for x = diag(g, 1, 1).
#[inline]
pub fn conj_diag0(f: &FieldCtx, m: &Gl3Mat, g: Fe, g_inv: Fe) -> Gl3Mat {
    let mut e = m.0;
    e[1] = f.mul(g_inv, e[1]);
    e[2] = f.mul(g_inv, e[2]);
    e[3] = f.mul(g, e[3]);
    e[6] = f.mul(g, e[6]);
    Gl3Mat(e)
}

/// |GL3(F_q)| = (q^3 - 1)(q^3 - q)(q^3 - q^2).
pub fn group_order(q: u64) -> u128 {
    let q = q as u128;
    (q * q * q - 1) * (q * q * q - q) * (q * q * q - q * q)
}

/// |GL2(F_q)|.
pub fn gl2_order(q: u64) -> u128 {
    let q = q as u128;
    (q * q - 1) * (q * q - q)
}

/// Calls `visit` on every element of GL3(F_q). The first row is split
/// across workers; `fold`/`merge` combine per-worker accumulators.
pub fn fold_gl3<A, I, F, M>(f: &FieldCtx, exec: crate::Exec, init: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, &Gl3Mat) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let q = f.q;
    let q3 = q * q * q;
    exec.fold_range(
        1..q3,
        &init,
        |mut acc, r0| {
            let row = |k: u64| [Fe((k % q) as u32), Fe((k / q % q) as u32), Fe((k / (q * q)) as u32)];
            let a = row(r0);
            for r1 in 1..q3 {
                let b = row(r1);
                // skip rows parallel to the first: all 2x2 minors vanish
                let m01 = f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]));
                let m02 = f.sub(f.mul(a[0], b[2]), f.mul(a[2], b[0]));
                let m12 = f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1]));
                if m01.is_zero() && m02.is_zero() && m12.is_zero() {
                    continue;
                }
                for r2 in 1..q3 {
                    let c = row(r2);
                    let d = f.add(f.sub(f.mul(c[2], m01), f.mul(c[1], m02)), f.mul(c[0], m12));
                    if d.is_zero() {
                        continue;
                    }
                    acc = fold(acc, &Gl3Mat([a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]]));
                }
            }
            acc
        },
        merge,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(group_order(2), 168);
        assert_eq!(group_order(4), 181_440);
        assert_eq!(group_order(7), 33_784_128);
    }

    #[test]
    fn enumeration_counts_invertible_matrices() {
        for (p, n) in [(2, 1), (3, 1), (2, 2)] {
            let f = FieldCtx::new(p, n, None).unwrap();
            let count = fold_gl3(
                &f,
                crate::Exec::Parallel,
                || 0u128,
                |acc, m| {
                    assert!(!det(&f, m).is_zero());
                    acc + 1
                },
                |a, b| a + b,
            );
            assert_eq!(count, group_order(f.q));
        }
    }

    #[test]
    fn inverse_and_char_poly() {
        let f = FieldCtx::prime(7).unwrap();
        assert_eq!(det(&f, &Gl3Mat::identity()), Fe::ONE);
        // [[0,1,-y],[1,0,-x],[0,0,1]]^-1 = [[0,1,x],[1,0,y],[0,0,1]]
        for (x, y) in [(2, 5), (0, 3), (6, 6)] {
            let m = Gl3Mat::from_ints(&f, [0, 1, -y, 1, 0, -x, 0, 0, 1]);
            let expect = Gl3Mat::from_ints(&f, [0, 1, x, 1, 0, y, 0, 0, 1]);
            assert_eq!(inv(&f, &m).unwrap(), expect);
        }
        let (a, b) = (Fe(3), Fe(5));
        let cp = char_poly(&f, &Gl3Mat::diag(a, a, b));
        // (x-3)^2 (x-5) = x^3 - 11x^2 + 39x - 45
        assert_eq!(cp, [f.from_int(-45), f.from_int(39), f.from_int(-11), Fe::ONE]);
        assert_eq!(Gl3Mat::new(&f, [Fe::ZERO; 9]), Err(Error::Singular));
    }

    #[test]
    fn fast_conjugations_match_products() {
        let f = FieldCtx::new(2, 2, None).unwrap();
        let m = Gl3Mat([Fe(1), Fe(2), Fe(3), Fe(0), Fe(1), Fe(2), Fe(3), Fe(3), Fe(1)]);
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                for c in f.elements() {
                    let mut x = Gl3Mat::identity();
                    x.0[3 * i + j] = c;
                    assert_eq!(conj_elementary(&f, &m, i, j, c), conj(&f, &m, &x).unwrap());
                }
            }
        }
        let g = f.generator;
        let x = Gl3Mat::diag(g, Fe::ONE, Fe::ONE);
        assert_eq!(conj_diag0(&f, &m, g, f.inv(g).unwrap()), conj(&f, &m, &x).unwrap());
    }

    #[test]
    fn key_round_trip() {
        let m = Gl3Mat([Fe(1), Fe(6), Fe(3), Fe(0), Fe(1), Fe(2), Fe(5), Fe(4), Fe(1)]);
        assert_eq!(Gl3Mat::from_key(m.key(7), 7), m);
    }
}
