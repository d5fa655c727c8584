//! Fundamental domains for centralizers acting on H_q, and an exhaustive
//! checker.
//!
//! Points are written (alpha, beta) with alpha = a1 + a2 t + a3 t^2.

use serde::Serialize;

use super::{HPoint, HalfSpace};
use crate::error::{check_budget, Error, Result};
use crate::gf::Fe;
use crate::gl3::centralizer::centralizer_elements;
use crate::gl3::{ClassKind, Gl3Mat};

/// The parameterized domain for the centralizer of a G-class of `kind`.
/// Ell2 means a quadratic-elliptic class of GL3(F_q) itself, whose
/// centralizer is F_{q^2}^x x F_q^x.
pub fn fundamental_domain(hs: &HalfSpace, kind: ClassKind) -> Result<Vec<HPoint>> {
    let f = hs.field();
    let (z, o) = (Fe::ZERO, Fe::ONE);
    let all: Vec<Fe> = f.elements().collect();
    let units: Vec<Fe> = f.nonzero().collect();
    let pt = |a: [Fe; 3], b: [Fe; 3]| HPoint::new(a, b);
    let mut out = Vec::new();
    match kind {
        ClassKind::Central => out.push(hs.base_point()),
        ClassKind::Hyp1 => {
            for &u in &all {
                for &v in &all {
                    out.push(pt([u, o, z], [v, z, o]));
                }
            }
        }
        ClassKind::Hyp2 => {
            for &x in &all {
                for &r in &all {
                    for &y in &all {
                        for &s in &all {
                            if f.mul(y, s) != o {
                                out.push(pt([x, o, y], [r, s, o]));
                            }
                        }
                    }
                    for &s in &units {
                        out.push(pt([x, z, o], [r, o, s]));
                    }
                    for &y in &units {
                        out.push(pt([x, y, o], [r, o, z]));
                    }
                    out.push(pt([x, z, o], [r, o, z]));
                }
            }
        }
        ClassKind::Par1 => {
            for &u in &units {
                for &v in &all {
                    out.push(pt([z, u, z], [z, v, o]));
                }
            }
            for &u in &units {
                out.push(pt([z, o, u], [z, o, z]));
            }
        }
        ClassKind::Par2 => {
            for &v in &all {
                out.push(pt([z, o, z], [z, v, o]));
            }
            out.push(hs.base_point());
        }
        ClassKind::Par3 => {
            for &v in &all {
                for &s in &all {
                    for &r in &units {
                        for &u in &all {
                            out.push(pt([v, o, u], [s, z, r]));
                        }
                        out.push(pt([v, z, o], [s, r, z]));
                    }
                }
            }
        }
        ClassKind::Ell2 => {
            for &x in &all {
                for &u in &all {
                    for &v in &units {
                        for &y in &all {
                            out.push(pt([x, u, v], [y, o, z]));
                        }
                    }
                }
            }
        }
        ClassKind::Ell1 => {
            return Err(Error::UnsupportedKind("no parameterized domain for the cubic elliptic centralizer".into()))
        }
    }
    Ok(out)
}

/// Number of points `fundamental_domain` emits.
pub fn domain_size(kind: ClassKind, q: u64) -> Option<u128> {
    let q = q as u128;
    Some(match kind {
        ClassKind::Central => 1,
        ClassKind::Hyp1 => q * q,
        ClassKind::Hyp2 => q * q * q * (q + 1),
        ClassKind::Par1 => q * q - 1,
        ClassKind::Par2 => q + 1,
        ClassKind::Par3 => q * q * (q * q - 1),
        ClassKind::Ell2 => q * q * q * (q - 1),
        ClassKind::Ell1 => return None,
    })
}

/// Outcome of an exhaustive domain check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DomainCheck {
    pub points: usize,
    /// Domain points lying in the orbit of an earlier domain point.
    pub repeated: usize,
    /// Points of H_q reached by no domain point.
    pub uncovered: usize,
}

impl DomainCheck {
    pub fn is_fundamental(&self) -> bool {
        self.repeated == 0 && self.uncovered == 0
    }
}

/// Checks that `domain` meets every orbit of `group` on H_q exactly once.
pub fn check_domain(hs: &HalfSpace, domain: &[HPoint], group: &[Gl3Mat], budget: u64) -> Result<DomainCheck> {
    check_budget("domain check", domain.len() as u128 * group.len() as u128, budget)?;
    check_budget("domain check", hs.key_space() as u128, budget)?;
    const NONE: u32 = u32::MAX;
    let mut owner = vec![NONE; hs.key_space() as usize];
    let mut repeated = 0;
    for (i, d) in domain.iter().enumerate() {
        if !hs.is_valid(d) || owner[hs.key(d) as usize] != NONE {
            repeated += 1;
            continue;
        }
        for g in group {
            let w = hs.key(&hs.act(g, d)?) as usize;
            owner[w] = i as u32;
        }
    }
    let covered = owner.iter().filter(|&&o| o != NONE).count() as u128;
    let uncovered = (super::halfspace_size(hs.q()) - covered) as usize;
    Ok(DomainCheck { points: domain.len(), repeated, uncovered })
}

/// Verifies the domain for the G-class kind of `gamma` against the
/// brute-force centralizer of `gamma`.
pub fn verify_fundamental_domain(hs: &HalfSpace, kind: ClassKind, gamma: &Gl3Mat, budget: u64) -> Result<DomainCheck> {
    let domain = fundamental_domain(hs, kind)?;
    let group = centralizer_elements(hs.field(), gamma, budget)?;
    check_domain(hs, &domain, &group, budget)
}

#[cfg(test)]
mod tests {
    use super::super::tests::hs;
    use super::*;
    use crate::gl3::ClassDescriptor;

    #[test]
    fn sizes_match_parameterization() {
        for (p, n) in [(2, 2), (7, 1)] {
            let h = hs(p, n);
            for kind in ClassKind::ALL {
                match fundamental_domain(&h, kind) {
                    Ok(d) => {
                        assert_eq!(d.len() as u128, domain_size(kind, h.q()).unwrap(), "{kind:?}");
                        assert!(d.iter().all(|z| h.is_valid(z)));
                    }
                    Err(e) => assert!(matches!(e, Error::UnsupportedKind(_)) && kind == ClassKind::Ell1),
                }
            }
        }
        let h4 = hs(2, 2);
        assert_eq!(fundamental_domain(&h4, ClassKind::Hyp1).unwrap().len(), 16);
        assert_eq!(fundamental_domain(&h4, ClassKind::Par2).unwrap().len(), 5);
        assert_eq!(fundamental_domain(&hs(7, 1), ClassKind::Ell2).unwrap().len(), 2058);
    }

    #[test]
    fn hyp1_domain_and_mutation() {
        let h = hs(2, 2);
        let f = h.field();
        let gamma = ClassDescriptor::Hyp1(Fe::ONE, f.generator).representative(f);
        assert!(verify_fundamental_domain(&h, ClassKind::Hyp1, &gamma, 1 << 30).unwrap().is_fundamental());
        let mut dom = fundamental_domain(&h, ClassKind::Hyp1).unwrap();
        let group = centralizer_elements(f, &gamma, 1 << 30).unwrap();
        dom.pop();
        let c = check_domain(&h, &dom, &group, 1 << 30).unwrap();
        assert!(!c.is_fundamental());
        assert!(c.uncovered > 0);
    }
}
