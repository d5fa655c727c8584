//! Conjugacy-class tables, either from descriptors with closed-form sizes or
//! by classifying every group element.

use std::collections::BTreeMap;

use serde::Serialize;

use super::classify::{classify, irreducible_monics, ClassDescriptor, ClassKind};
use super::mat::{self, Gl3Mat};
use crate::error::{check_budget, Result};
use crate::gf::{Fe, FieldCtx};
use crate::Exec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassData {
    pub descriptor: ClassDescriptor,
    pub representative: Gl3Mat,
    pub class_size: u128,
    pub centralizer_order: u128,
}

/// All class descriptors of GL3 over `f`, in a fixed order.
pub fn descriptors(f: &FieldCtx) -> Vec<ClassDescriptor> {
    let units: Vec<Fe> = f.nonzero().collect();
    let mut out = Vec::new();
    out.extend(units.iter().map(|&a| ClassDescriptor::Central(a)));
    for &a in &units {
        for &b in units.iter().filter(|&&b| b != a) {
            out.push(ClassDescriptor::Hyp1(a, b));
        }
    }
    for (i, &a) in units.iter().enumerate() {
        for (j, &b) in units.iter().enumerate().skip(i + 1) {
            for &c in &units[j + 1..] {
                out.push(ClassDescriptor::hyp2(a, b, c));
            }
        }
    }
    out.extend(units.iter().map(|&a| ClassDescriptor::Par1(a)));
    out.extend(units.iter().map(|&a| ClassDescriptor::Par2(a)));
    for &a in &units {
        for &b in units.iter().filter(|&&b| b != a) {
            out.push(ClassDescriptor::Par3(a, b));
        }
    }
    for c in irreducible_monics(f, 3) {
        out.push(ClassDescriptor::Ell1([c[0], c[1], c[2]]));
    }
    for quad in irreducible_monics(f, 2) {
        for &m in &units {
            out.push(ClassDescriptor::Ell2 { quad: [quad[0], quad[1]], m });
        }
    }
    out
}

/// Class table from descriptors, with sizes |G| / |G_gamma| from the
/// standard centralizer orders.
pub fn parametric_classes(f: &FieldCtx) -> Vec<ClassData> {
    let order = mat::group_order(f.q);
    descriptors(f)
        .into_iter()
        .map(|d| {
            let c = d.kind().centralizer_order(f.q);
            ClassData { descriptor: d, representative: d.representative(f), class_size: order / c, centralizer_order: c }
        })
        .collect()
}

/// Class table by classifying all of GL3(F_q).
pub fn enumerated_classes(f: &FieldCtx, budget: u64, exec: Exec) -> Result<Vec<ClassData>> {
    let order = mat::group_order(f.q);
    check_budget("full group enumeration", order, budget)?;
    let counts = mat::fold_gl3(
        f,
        exec,
        BTreeMap::<ClassDescriptor, u128>::new,
        |mut acc, m| {
            *acc.entry(classify(f, m)).or_default() += 1;
            acc
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    );
    // report in descriptor order; every class must be one of the descriptors
    debug_assert_eq!(counts.len(), descriptors(f).len());
    Ok(descriptors(f)
        .into_iter()
        .filter_map(|d| counts.get(&d).map(|&size| (d, size)))
        .map(|(d, size)| ClassData {
            descriptor: d,
            representative: d.representative(f),
            class_size: size,
            centralizer_order: order / size,
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassMode {
    Parametric,
    Enumerate { budget: u64 },
}

pub fn conjugacy_classes(f: &FieldCtx, mode: ClassMode, exec: Exec) -> Result<Vec<ClassData>> {
    match mode {
        ClassMode::Parametric => Ok(parametric_classes(f)),
        ClassMode::Enumerate { budget } => enumerated_classes(f, budget, exec),
    }
}

/// One CSV-ready row of a class table.
#[derive(Debug, Clone, Serialize)]
pub struct ClassRow {
    pub kind: &'static str,
    pub params: String,
    pub class_size: String,
    pub centralizer_order: String,
}

pub fn class_rows(classes: &[ClassData]) -> Vec<ClassRow> {
    classes
        .iter()
        .map(|c| ClassRow {
            kind: c.descriptor.kind().name(),
            params: c.descriptor.params().iter().map(|a| a.0.to_string()).collect::<Vec<_>>().join(" "),
            class_size: c.class_size.to_string(),
            centralizer_order: c.centralizer_order.to_string(),
        })
        .collect()
}

/// Number of classes of each kind.
pub fn kind_counts(classes: &[ClassData]) -> BTreeMap<ClassKind, usize> {
    let mut out = BTreeMap::new();
    for c in classes {
        *out.entry(c.descriptor.kind()).or_default() += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl3_f2_has_six_classes() {
        let f = FieldCtx::prime(2).unwrap();
        let cls = enumerated_classes(&f, 1 << 20, Exec::Parallel).unwrap();
        assert_eq!(cls.len(), 6);
        assert_eq!(cls.iter().map(|c| c.class_size).sum::<u128>(), 168);
        let counts = kind_counts(&cls);
        assert_eq!(counts[&ClassKind::Ell1], 2);
        assert_eq!(counts[&ClassKind::Ell2], 1);
        assert_eq!(cls, parametric_classes(&f));
    }

    #[test]
    fn parametric_counts() {
        for p in [2u64, 3, 5, 7] {
            let f = FieldCtx::prime(p).unwrap();
            let cls = parametric_classes(&f);
            assert_eq!(cls.iter().map(|c| c.class_size).sum::<u128>(), mat::group_order(p));
            let counts = kind_counts(&cls);
            for k in ClassKind::ALL {
                assert_eq!(counts.get(&k).copied().unwrap_or(0) as u128, k.class_count(p), "{k:?} p={p}");
            }
        }
        let f7 = FieldCtx::prime(7).unwrap();
        assert_eq!(kind_counts(&parametric_classes(&f7))[&ClassKind::Hyp2], 20);
        assert_eq!(parametric_classes(&f7).len(), 336);
    }
}
