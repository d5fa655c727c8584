//! Closed forms for the orbital sums I_G(f, gamma), one per class kind.
//!
//! A closed form is a rational combination of f(p0), horocycle transforms
//! and explicit point sums. Branches for the elliptic kinds follow n mod 3
//! (cubic) and n mod 2 (quadratic).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gf::{Fe, Fq3};
use crate::gl3::classify::roots;
use crate::gl3::gl2::Mat2;
use crate::gl3::{mat, ClassDescriptor, ClassKind, Gl3Mat};
use crate::halfspace::{HPoint, HalfSpace, KOrbits};

use super::horocycle::horocycle_tally;
use super::SphericalFn;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    /// f(p0)
    BasePoint,
    /// Hf(kappa)
    Horocycle(Mat2),
    /// Sum of f over the listed points.
    Points(Vec<HPoint>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub formula: &'static str,
    pub terms: Vec<(BigRational, Term)>,
    /// Summands whose matrix does not map p0 into H_q; they are left out.
    pub undefined: usize,
}

/// Which elliptic closed form applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// The characteristic factor splits over F_q (3 | n cubic, 2 | n quadratic).
    Split,
    Nonsplit,
}

/// A linear functional on spherical functions: sum of coeff * (tally . f).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linear {
    pub parts: Vec<(BigRational, Vec<i64>)>,
}

impl Linear {
    pub fn tally(t: Vec<i64>) -> Self {
        Linear { parts: vec![(BigRational::one(), t)] }
    }

    pub fn eval(&self, f: &SphericalFn) -> BigRational {
        self.parts.iter().map(|(c, t)| c * f.pair(t)).sum()
    }
}

impl ClosedForm {
    fn single(formula: &'static str, coeff: BigRational, term: Term) -> Self {
        ClosedForm { formula, terms: vec![(coeff, term)], undefined: 0 }
    }

    pub fn linear(&self, orbits: &KOrbits) -> Result<Linear> {
        let mut parts = Vec::new();
        for (c, term) in &self.terms {
            let t = match term {
                Term::BasePoint => orbits.histogram([orbits.hs.base_point()]),
                Term::Horocycle(k) => horocycle_tally(orbits, k)?,
                Term::Points(ps) => orbits.histogram(ps.iter().copied()),
            };
            parts.push((c.clone(), t));
        }
        Ok(Linear { parts })
    }

    pub fn eval(&self, f: &SphericalFn, orbits: &KOrbits) -> Result<BigRational> {
        Ok(self.linear(orbits)?.eval(f))
    }
}

fn int(x: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn k_mod_z(q: u64) -> BigRational {
    let q = q as u128;
    int(q * q + q + 1)
}

/// The branch the field dictates for an elliptic kind.
pub fn elliptic_branch(kind: ClassKind, n: u32) -> Option<Branch> {
    let split = match kind {
        ClassKind::Ell1 => n % 3 == 0,
        ClassKind::Ell2 => n % 2 == 0,
        _ => return None,
    };
    Some(if split { Branch::Split } else { Branch::Nonsplit })
}

/// The closed form for `d`, a class with parameters in F_q, on the branch
/// the field dictates.
pub fn orbital_sum_closed_form(hs: &HalfSpace, d: &ClassDescriptor) -> Result<ClosedForm> {
    match elliptic_branch(d.kind(), hs.field().n) {
        Some(b) => closed_form_for_branch(hs, d, b),
        None => non_elliptic(hs, d),
    }
}

pub fn orbital_sum_closed(f: &SphericalFn, orbits: &KOrbits, d: &ClassDescriptor) -> Result<BigRational> {
    orbital_sum_closed_form(&orbits.hs, d)?.eval(f, orbits)
}

/// The elliptic closed form on an explicit branch; asking for a branch the
/// field does not allow is an error.
pub fn closed_form_for_branch(hs: &HalfSpace, d: &ClassDescriptor, branch: Branch) -> Result<ClosedForm> {
    let f = hs.field();
    let expected = elliptic_branch(d.kind(), f.n)
        .ok_or_else(|| Error::WrongBranch(format!("{} has no elliptic branches", d.kind().name())))?;
    if expected != branch {
        return Err(Error::WrongBranch(format!(
            "{:?} branch requested for {} but n = {} selects {:?}",
            branch,
            d.kind().name(),
            f.n,
            expected
        )));
    }
    match (*d, branch) {
        (ClassDescriptor::Ell1(c), Branch::Split) => {
            let rs = roots(f, &[c[0], c[1], c[2], Fe::ONE]);
            let x3 = *rs.first().ok_or_else(|| Error::WrongBranch("cubic has no root in F_q".into()))?;
            let x1 = f.pow(x3, f.p);
            let x2 = f.pow(x1, f.p);
            if rs.len() != 3 || !rs.contains(&x1) || !rs.contains(&x2) || x1 == x3 {
                return Err(Error::UnsupportedKind("cubic is not irreducible over F_p".into()));
            }
            Ok(diagonal_form(hs, "|K/Z| Hf(diag(xi1/xi3, xi2/xi3)), xi1 = xi3^p, xi2 = xi3^(p^2)", x1, x2, x3))
        }
        (ClassDescriptor::Ell1(c), Branch::Nonsplit) => cubic_sum(hs, c),
        (ClassDescriptor::Ell2 { quad, m }, Branch::Split) => {
            let rs = roots(f, &[quad[0], quad[1], Fe::ONE]);
            let e2 = *rs.first().ok_or_else(|| Error::WrongBranch("quadratic has no root in F_q".into()))?;
            let e1 = f.pow(e2, f.p);
            if e1 == e2 || !rs.contains(&e1) {
                return Err(Error::UnsupportedKind("quadratic is not irreducible over F_p".into()));
            }
            Ok(diagonal_form(hs, "|K/Z| Hf(diag(eta1/e, eta2/e)), eta1 = eta2^p", e1, e2, m))
        }
        (ClassDescriptor::Ell2 { m, .. }, Branch::Nonsplit) => {
            if !roots(f, &[d.params()[0], d.params()[1], Fe::ONE]).is_empty() {
                return Err(Error::WrongBranch("quadratic splits over F_q".into()));
            }
            let (k, l, xi) = d
                .ell2_params(f)
                .ok_or_else(|| Error::UnsupportedKind("the nonsplit quadratic form needs odd characteristic".into()))?;
            let mi = f.inv(m).ok_or(Error::Singular)?;
            let kappa = Mat2([f.mul(k, mi), f.mul(f.mul(l, xi), mi), f.mul(l, mi), f.mul(k, mi)]);
            let (p, q) = (f.p as u128, f.q as u128);
            let coeff = BigRational::new(
                BigInt::from((q * q * q - 1) * (q * q - 1)),
                BigInt::from((p - 1) * (p * p - 1)),
            );
            Ok(ClosedForm::single(
                "(q^3-1)(q^2-1)/((p-1)(p^2-1)) Hf([[k/m, l xi/m], [l/m, k/m]])",
                coeff,
                Term::Horocycle(kappa),
            ))
        }
        _ => unreachable!("branch checked above"),
    }
}

/// (q^2+q+1) Hf(diag(a/c, b/c)) for an ordered triple.
pub fn diagonal_form(hs: &HalfSpace, formula: &'static str, a: Fe, b: Fe, c: Fe) -> ClosedForm {
    let f = hs.field();
    let ci = f.inv(c).expect("nonzero eigenvalue");
    ClosedForm::single(formula, k_mod_z(f.q), Term::Horocycle(Mat2::diag(f.mul(a, ci), f.mul(b, ci))))
}

fn non_elliptic(hs: &HalfSpace, d: &ClassDescriptor) -> Result<ClosedForm> {
    let f = hs.field();
    let kz = k_mod_z(f.q);
    Ok(match *d {
        ClassDescriptor::Central(_) => ClosedForm::single("f(p0)", BigRational::one(), Term::BasePoint),
        ClassDescriptor::Hyp1(a, b) => {
            let r = f.div(a, b).ok_or(Error::Singular)?;
            ClosedForm::single("(q^2+q+1) Hf((a/b) I)", kz, Term::Horocycle(Mat2::scalar(r)))
        }
        ClassDescriptor::Hyp2([a, b, c]) => diagonal_form(hs, "(q^2+q+1) Hf(diag(a/c, b/c))", a, b, c),
        ClassDescriptor::Par1(_) => ClosedForm {
            formula: "(q^2+q+1) (Hf(I) - f(p0))",
            terms: vec![(kz.clone(), Term::Horocycle(Mat2::scalar(Fe::ONE))), (-kz, Term::BasePoint)],
            undefined: 0,
        },
        ClassDescriptor::Par2(_) => {
            let (z, o) = (Fe::ZERO, Fe::ONE);
            let mut pts = vec![HPoint::new([z, o, o], [o, o, z])];
            for v in f.elements() {
                let alpha = [o, f.neg(f.mul(v, v)), f.sub(o, v)];
                pts.push(HPoint::new(alpha, [z, f.add(v, o), o]));
            }
            ClosedForm::single(
                "(q^2+q+1) (f(t^2+t, t+1) + sum_v f((1-v) t^2 - v^2 t + 1, t^2 + (v+1) t))",
                kz,
                Term::Points(pts),
            )
        }
        ClassDescriptor::Par3(a, b) => {
            let r = f.div(a, b).ok_or(Error::Singular)?;
            ClosedForm::single("(q^2+q+1) Hf([[a/b, 1], [0, a/b]])", kz, Term::Horocycle(Mat2([r, Fe::ONE, Fe::ZERO, r])))
        }
        ClassDescriptor::Ell1(_) | ClassDescriptor::Ell2 { .. } => unreachable!("elliptic kinds dispatch on branch"),
    })
}

/// An element of F_q(t) whose matrix in K has characteristic polynomial
/// x^3 + c2 x^2 + c1 x + c0.
pub fn cubic_root_in_k(hs: &HalfSpace, c: [Fe; 3]) -> Option<Fq3> {
    let f = hs.field();
    let want = [c[0], c[1], c[2], Fe::ONE];
    hs.tower.elements().find(|z| mat::char_poly(f, &hs.k_matrix(z)) == want)
}

/// The entrywise matrix X(a, .., f) with y^-1 gamma y = X / (bd - ae) for
/// gamma = [[al, ep d, be d], [be, al, ep d], [ep, be, al]] and
/// y = [[a, b, c], [d, e, f], [0, 0, 1]].
pub fn cubic_sum_matrix(hs: &HalfSpace, z: Fq3, y: [Fe; 6]) -> Gl3Mat {
    let fl = hs.field();
    let dl = hs.tower.delta;
    let [al, be, ep] = z;
    let [a, b, c, d, e, f] = y;
    let m = |x: Fe, y: Fe| fl.mul(x, y);
    let m3 = |x: Fe, y: Fe, w: Fe| fl.mul(fl.mul(x, y), w);
    let add = |xs: &[Fe]| xs.iter().fold(Fe::ZERO, |acc, &x| fl.add(acc, x));
    let neg = |x: Fe| fl.neg(x);
    let det = fl.sub(m(b, d), m(a, e));
    let x11 = add(&[
        m(al, det),
        m(be, add(&[m(a, b), m3(c, d, e), neg(m3(b, d, f))])),
        m(ep, add(&[m3(a, c, e), neg(m3(a, b, f)), neg(m3(d, e, dl))])),
    ]);
    let x21 = add(&[
        m(be, add(&[m3(a, d, f), neg(m(a, a)), neg(m3(c, d, d))])),
        m(ep, add(&[m3(a, a, f), neg(m3(a, c, d)), m3(d, d, dl)])),
    ]);
    let x31 = add(&[m(be, d), m(ep, a)]);
    let x12 = add(&[
        m(be, add(&[m3(c, e, e), neg(m3(b, e, f)), m(b, b)])),
        m(ep, add(&[m3(b, c, e), neg(m3(b, b, f)), neg(m3(e, e, dl))])),
    ]);
    let x22 = add(&[
        m(al, det),
        m(be, add(&[m3(a, e, f), neg(m3(c, d, e)), neg(m(a, b))])),
        m(ep, add(&[m3(a, b, f), neg(m3(b, c, d)), m3(d, e, dl)])),
    ]);
    let x32 = add(&[m(be, e), m(ep, b)]);
    let x13 = m(be, add(&[m3(c, e, f), m(b, c), neg(m3(b, f, f)), neg(m(e, dl))]));
    let x23 = add(&[
        m(be, add(&[m3(a, f, f), neg(m3(c, d, f)), neg(m(a, c)), m(d, dl)])),
        m(ep, add(&[m3(a, c, f), neg(m3(a, c, c)), m3(d, f, dl), neg(m(a, dl))])),
    ]);
    let x33 = add(&[al, m(be, f), m(ep, c)]);
    Gl3Mat([x11, x12, x13, x21, x22, x23, x31, x32, x33])
}

fn cubic_sum(hs: &HalfSpace, c: [Fe; 3]) -> Result<ClosedForm> {
    let f = hs.field();
    let z = cubic_root_in_k(hs, c).ok_or_else(|| Error::WrongBranch("cubic splits over F_q".into()))?;
    let els: Vec<Fe> = f.elements().collect();
    let mut pts = Vec::new();
    let mut undefined = 0;
    for &a in &els {
        for &b in &els {
            for &d in &els {
                for &e in &els {
                    if f.mul(b, d) == f.mul(a, e) {
                        continue;
                    }
                    for &cc in &els {
                        for &ff in &els {
                            // the scalar 1/(bd - ae) acts trivially on H_q
                            match hs.act_p0(&cubic_sum_matrix(hs, z, [a, b, cc, d, e, ff])) {
                                Ok(p) => pts.push(p),
                                Err(_) => undefined += 1,
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(ClosedForm {
        formula: "sum over a..f in F_q, bd - ae != 0, of f(X(a..f) p0) with X the entrywise elliptic matrix",
        terms: vec![(BigRational::one(), Term::Points(pts))],
        undefined,
    })
}
