//! Conjugacy-class types of GL3 over a finite field and their canonical
//! representatives.
//!
//! Eight types: central a I; diag(a,a,b); diag(a,b,c); three non-semisimple
//! types (a single 2-block with eigenvalue a, a regular unipotent times a,
//! a 2-block for a next to a distinct b); irreducible characteristic
//! polynomial; quadratic irreducible factor times a rational eigenvalue.

use std::fmt;

use serde::Serialize;

use super::mat::{self, Gl3Mat};
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldCtx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Central,
    Hyp1,
    Hyp2,
    Par1,
    Par2,
    Par3,
    Ell1,
    Ell2,
}

impl ClassKind {
    pub const ALL: [ClassKind; 8] = [
        ClassKind::Central,
        ClassKind::Hyp1,
        ClassKind::Hyp2,
        ClassKind::Par1,
        ClassKind::Par2,
        ClassKind::Par3,
        ClassKind::Ell1,
        ClassKind::Ell2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassKind::Central => "central",
            ClassKind::Hyp1 => "hyp1",
            ClassKind::Hyp2 => "hyp2",
            ClassKind::Par1 => "par1",
            ClassKind::Par2 => "par2",
            ClassKind::Par3 => "par3",
            ClassKind::Ell1 => "ell1",
            ClassKind::Ell2 => "ell2",
        }
    }

    /// Centralizer order of any class of this kind in GL3(F_q).
    pub fn centralizer_order(self, q: u64) -> u128 {
        let q = q as u128;
        match self {
            ClassKind::Central => mat::group_order(q as u64),
            ClassKind::Hyp1 => mat::gl2_order(q as u64) * (q - 1),
            ClassKind::Hyp2 => (q - 1).pow(3),
            ClassKind::Par1 => q.pow(3) * (q - 1).pow(2),
            ClassKind::Par2 => q * q * (q - 1),
            ClassKind::Par3 => q * (q - 1).pow(2),
            ClassKind::Ell1 => q.pow(3) - 1,
            ClassKind::Ell2 => (q * q - 1) * (q - 1),
        }
    }

    /// Number of classes of this kind in GL3(F_q).
    pub fn class_count(self, q: u64) -> u128 {
        let q = q as u128;
        match self {
            ClassKind::Central | ClassKind::Par1 | ClassKind::Par2 => q - 1,
            ClassKind::Hyp1 | ClassKind::Par3 => (q - 1) * (q - 2),
            ClassKind::Hyp2 => (q - 1) * (q - 2) * q.saturating_sub(3) / 6,
            ClassKind::Ell1 => (q.pow(3) - q) / 3,
            ClassKind::Ell2 => (q - 1) * (q * q - q) / 2,
        }
    }
}

impl std::str::FromStr for ClassKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClassKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown class kind `{s}`")))
    }
}

/// A conjugacy class of GL3 over the ambient field.
///
/// Cubic and quadratic factors are stored as monic coefficient lists
/// low-to-high without the leading 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassDescriptor {
    Central(Fe),
    /// diag(a, a, b), a != b.
    Hyp1(Fe, Fe),
    /// Three distinct eigenvalues, sorted.
    Hyp2([Fe; 3]),
    Par1(Fe),
    Par2(Fe),
    /// Jordan 2-block for `a`, eigenvalue `b` once.
    Par3(Fe, Fe),
    /// Irreducible characteristic polynomial x^3 + c2 x^2 + c1 x + c0.
    Ell1([Fe; 3]),
    /// Irreducible factor x^2 + c1 x + c0 and rational eigenvalue `m`.
    Ell2 { quad: [Fe; 2], m: Fe },
}

impl ClassDescriptor {
    pub fn kind(&self) -> ClassKind {
        match self {
            ClassDescriptor::Central(_) => ClassKind::Central,
            ClassDescriptor::Hyp1(..) => ClassKind::Hyp1,
            ClassDescriptor::Hyp2(_) => ClassKind::Hyp2,
            ClassDescriptor::Par1(_) => ClassKind::Par1,
            ClassDescriptor::Par2(_) => ClassKind::Par2,
            ClassDescriptor::Par3(..) => ClassKind::Par3,
            ClassDescriptor::Ell1(_) => ClassKind::Ell1,
            ClassDescriptor::Ell2 { .. } => ClassKind::Ell2,
        }
    }

    pub fn hyp2(a: Fe, b: Fe, c: Fe) -> Self {
        let mut s = [a, b, c];
        s.sort();
        ClassDescriptor::Hyp2(s)
    }

    /// Field elements appearing as parameters.
    pub fn params(&self) -> Vec<Fe> {
        match *self {
            ClassDescriptor::Central(a) | ClassDescriptor::Par1(a) | ClassDescriptor::Par2(a) => vec![a],
            ClassDescriptor::Hyp1(a, b) | ClassDescriptor::Par3(a, b) => vec![a, b],
            ClassDescriptor::Hyp2(s) | ClassDescriptor::Ell1(s) => s.to_vec(),
            ClassDescriptor::Ell2 { quad, m } => vec![quad[0], quad[1], m],
        }
    }

    pub fn from_params(kind: ClassKind, p: &[Fe]) -> Result<Self> {
        let want = match kind {
            ClassKind::Central | ClassKind::Par1 | ClassKind::Par2 => 1,
            ClassKind::Hyp1 | ClassKind::Par3 => 2,
            _ => 3,
        };
        if p.len() != want {
            return Err(Error::Parse(format!("{} takes {want} parameters", kind.name())));
        }
        Ok(match kind {
            ClassKind::Central => ClassDescriptor::Central(p[0]),
            ClassKind::Par1 => ClassDescriptor::Par1(p[0]),
            ClassKind::Par2 => ClassDescriptor::Par2(p[0]),
            ClassKind::Hyp1 => ClassDescriptor::Hyp1(p[0], p[1]),
            ClassKind::Par3 => ClassDescriptor::Par3(p[0], p[1]),
            ClassKind::Hyp2 => ClassDescriptor::hyp2(p[0], p[1], p[2]),
            ClassKind::Ell1 => ClassDescriptor::Ell1([p[0], p[1], p[2]]),
            ClassKind::Ell2 => ClassDescriptor::Ell2 { quad: [p[0], p[1]], m: p[2] },
        })
    }

    /// Checks the parameter constraints of the kind over `f`.
    pub fn validate(&self, f: &FieldCtx) -> Result<()> {
        let in_field = self.params().iter().all(|a| (a.0 as u64) < f.q);
        let ok = in_field
            && match *self {
                ClassDescriptor::Central(a) | ClassDescriptor::Par1(a) | ClassDescriptor::Par2(a) => {
                    !a.is_zero()
                }
                ClassDescriptor::Hyp1(a, b) | ClassDescriptor::Par3(a, b) => {
                    !a.is_zero() && !b.is_zero() && a != b
                }
                ClassDescriptor::Hyp2(s) => {
                    s.iter().all(|x| !x.is_zero()) && s[0] != s[1] && s[1] != s[2] && s[0] != s[2]
                }
                ClassDescriptor::Ell1(c) => roots(f, &[c[0], c[1], c[2], Fe::ONE]).is_empty(),
                ClassDescriptor::Ell2 { quad, m } => {
                    !m.is_zero() && roots(f, &[quad[0], quad[1], Fe::ONE]).is_empty()
                }
            };
        if ok {
            Ok(())
        } else {
            Err(Error::Parse(format!("invalid class parameters `{self}` over F_{}", f.q)))
        }
    }

    /// Whether every parameter lies in the prime field.
    pub fn over_prime_field(&self, f: &FieldCtx) -> bool {
        self.params().iter().all(|&a| f.is_prime_subfield(a))
    }

    /// Canonical representative. Shapes: Par1 = [[a,0,a],[0,a,0],[0,0,a]],
    /// Par2 = [[a,a,0],[0,a,a],[0,0,a]], Par3 = [[a,0,0],[a,a,0],[0,0,b]],
    /// Ell1 = companion matrix, Ell2 = [[k, l xi, 0],[l, k, 0],[0, 0, m]] in odd
    /// characteristic with xi the field's fixed nonsquare, companion block in
    /// characteristic 2.
    pub fn representative(&self, f: &FieldCtx) -> Gl3Mat {
        let z = Fe::ZERO;
        match *self {
            ClassDescriptor::Central(a) => Gl3Mat::scalar(a),
            ClassDescriptor::Hyp1(a, b) => Gl3Mat::diag(a, a, b),
            ClassDescriptor::Hyp2([a, b, c]) => Gl3Mat::diag(a, b, c),
            ClassDescriptor::Par1(a) => Gl3Mat([a, z, a, z, a, z, z, z, a]),
            ClassDescriptor::Par2(a) => Gl3Mat([a, a, z, z, a, a, z, z, a]),
            ClassDescriptor::Par3(a, b) => Gl3Mat([a, z, z, a, a, z, z, z, b]),
            ClassDescriptor::Ell1([c0, c1, c2]) => {
                Gl3Mat([z, z, f.neg(c0), Fe::ONE, z, f.neg(c1), z, Fe::ONE, f.neg(c2)])
            }
            ClassDescriptor::Ell2 { quad, m } => match self.ell2_params(f) {
                Some((k, l, xi)) => Gl3Mat([k, f.mul(l, xi), z, l, k, z, z, z, m]),
                None => Gl3Mat([z, f.neg(quad[0]), z, Fe::ONE, f.neg(quad[1]), z, z, z, m]),
            },
        }
    }

    /// For Ell2 in odd characteristic: (k, l, xi) with
    /// x^2 + c1 x + c0 = (x - k)^2 - l^2 xi, l the root of smaller rank.
    pub fn ell2_params(&self, f: &FieldCtx) -> Option<(Fe, Fe, Fe)> {
        let ClassDescriptor::Ell2 { quad, .. } = *self else { return None };
        let xi = f.nonsquare()?;
        let half = f.inv(f.from_int(2))?;
        let k = f.neg(f.mul(quad[1], half));
        let l2 = f.div(f.sub(f.mul(k, k), quad[0]), xi)?;
        let l = f
            .nonzero()
            .filter(|&l| f.mul(l, l) == l2)
            .min_by_key(|&l| f.rank(l))?;
        Some((k, l, xi))
    }
}

impl serde::Serialize for ClassDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for ClassDescriptor {
    /// `kind:p1,p2,...` with field elements in digit encoding; parsed back
    /// by `FromStr`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params().iter().map(|a| a.0.to_string()).collect();
        write!(out, "{}:{}", self.kind().name(), ps.join(","))
    }
}

impl std::str::FromStr for ClassDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (k, rest) = s.split_once(':').ok_or_else(|| Error::Parse(format!("bad class `{s}`")))?;
        let kind: ClassKind = k.trim().parse()?;
        let params = rest
            .split(',')
            .map(|x| x.trim().parse::<u32>().map(Fe).map_err(|_| Error::Parse(format!("bad class `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        ClassDescriptor::from_params(kind, &params)
    }
}

/// Roots of a polynomial (coefficients low-to-high) by exhaustive search.
pub fn roots(f: &FieldCtx, poly: &[Fe]) -> Vec<Fe> {
    f.elements().filter(|&x| eval(f, poly, x).is_zero()).collect()
}

fn eval(f: &FieldCtx, poly: &[Fe], x: Fe) -> Fe {
    poly.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Divides a monic polynomial by (x - r), dropping the remainder.
fn deflate(f: &FieldCtx, poly: &[Fe], r: Fe) -> Vec<Fe> {
    let n = poly.len() - 1;
    let mut out = vec![Fe::ZERO; n];
    let mut carry = Fe::ZERO;
    for i in (0..n).rev() {
        carry = f.add(poly[i + 1], f.mul(carry, r));
        out[i] = carry;
    }
    out
}

/// Classifies by factoring the characteristic polynomial over the ambient
/// field and reading the Jordan structure off ranks of m - aI.
pub fn classify(f: &FieldCtx, m: &Gl3Mat) -> ClassDescriptor {
    let cp = mat::char_poly(f, m);
    let rs = roots(f, &cp);
    match rs.len() {
        0 => ClassDescriptor::Ell1([cp[0], cp[1], cp[2]]),
        3 => ClassDescriptor::hyp2(rs[0], rs[1], rs[2]),
        1 => {
            let a = rs[0];
            let quad = deflate(f, &cp, a);
            if !roots(f, &quad).is_empty() {
                // triple root
                match mat::rank(f, &mat::sub(f, m, &Gl3Mat::scalar(a))) {
                    0 => ClassDescriptor::Central(a),
                    1 => ClassDescriptor::Par1(a),
                    _ => ClassDescriptor::Par2(a),
                }
            } else {
                ClassDescriptor::Ell2 { quad: [quad[0], quad[1]], m: a }
            }
        }
        _ => {
            let (x, y) = (rs[0], rs[1]);
            // the double root is the one that survives deflation
            let rest = deflate(f, &deflate(f, &cp, x), y);
            let double = f.neg(rest[0]);
            let single = if double == x { y } else { x };
            match mat::rank(f, &mat::sub(f, m, &Gl3Mat::scalar(double))) {
                1 => ClassDescriptor::Hyp1(double, single),
                _ => ClassDescriptor::Par3(double, single),
            }
        }
    }
}

/// Monic irreducible polynomials of degree 2 or 3 as coefficient lists
/// without the leading 1.
pub fn irreducible_monics(f: &FieldCtx, degree: usize) -> Vec<Vec<Fe>> {
    let q = f.q;
    (0..q.pow(degree as u32))
        .map(|i| (0..degree).map(|k| Fe((i / q.pow(k as u32) % q) as u32)).collect::<Vec<_>>())
        .filter(|c| {
            let mut poly = c.clone();
            poly.push(Fe::ONE);
            roots(f, &poly).is_empty()
        })
        .collect()
}
