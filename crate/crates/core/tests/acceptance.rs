//! Acceptance suite: one status line per criterion.
//!
//! PASS      the criterion holds as stated.
//! LEDGERED  a printed formula disagrees with its oracle; the test asserts
//!           exactly the known disagreement, so anything else still fails.
//! FAIL      anything unexpected; the process exits nonzero.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use gl3trace::geometric::closed::{closed_form_for_branch, elliptic_branch, Branch, Term};
use gl3trace::geometric::side::GeometricSide;
use gl3trace::geometric::{orbital_sum_closed_form, SphericalFn};
use gl3trace::gf::chars::Family;
use gl3trace::gf::{DeltaRule, Fe, FieldCtx, Tower};
use gl3trace::gl3::classes::{enumerated_classes, parametric_classes};
use gl3trace::gl3::classify::irreducible_monics;
use gl3trace::gl3::{classify, mat, ClassDescriptor, ClassKind, Gl3Mat};
use gl3trace::halfspace::{halfspace_size, verify_fundamental_domain, HalfSpace, KOrbits};
use gl3trace::report::CUBIC_SPLIT_LIMITATION;
use gl3trace::spectral::chi::{compare_with_oracle, gamma_orbits_on_halfspace, InducedCharOracle};
use gl3trace::spectral::examples::{base_point_identity, constant_identity};
use gl3trace::spectral::multiplicity::{decompose, dual_square_sum, group_order_big};
use gl3trace::{Error, Exec};

const BUDGET: u64 = 1 << 34;

enum Status {
    Pass(String),
    Ledgered(String),
}

struct Ctx {
    f4: GeometricSide,
    f7: GeometricSide,
}

fn hs(p: u64, n: u32) -> HalfSpace {
    HalfSpace::new(Tower::new(FieldCtx::new(p, n, None).unwrap(), DeltaRule::default()).unwrap())
}

fn side(p: u64, n: u32) -> GeometricSide {
    let ko = KOrbits::build(&hs(p, n), BUDGET).unwrap();
    GeometricSide::build(&ko, BUDGET, Exec::Parallel).unwrap()
}

fn int(x: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Geometric side against the direct double sum.
fn trace_identity(c: &Ctx) -> Status {
    let mut fs = vec![SphericalFn::one(&c.f4.orbits), SphericalFn::delta_p0(&c.f4.orbits)];
    fs.extend((0..20).map(|s| SphericalFn::random(&c.f4.orbits, s)));
    for f in &fs {
        let v = c.f4.evaluate(f);
        assert_eq!(v.oracle_total, v.direct_trace);
    }
    for s in 0..5 {
        let v = c.f7.evaluate(&SphericalFn::random(&c.f7.orbits, 100 + s));
        assert_eq!(v.oracle_total, v.direct_trace);
    }
    Status::Pass(format!("{} functions at q = 4, 5 at q = 7, exact", fs.len()))
}

/// Closed-form orbital sums against conjugacy-class tallies.
fn closed_forms(c: &Ctx) -> Status {
    let fs7: Vec<_> = (0..5).map(|s| SphericalFn::random(&c.f7.orbits, s)).collect();
    let fs4: Vec<_> = (0..5).map(|s| SphericalFn::random(&c.f4.orbits, s)).collect();
    let mut matched = BTreeSet::new();
    let mut mismatched = BTreeSet::new();
    let mut rows = 0;
    let mut sweep = |s: &GeometricSide, fs: &[SphericalFn], kinds: &[ClassKind], q: u64| {
        for t in s.terms.iter().filter(|t| kinds.contains(&t.descriptor.kind())) {
            let lin = &t.closed.as_ref().unwrap_or_else(|e| panic!("{}: no closed form: {e}", t.descriptor)).linear;
            let ok = fs.iter().all(|f| lin.eval(f) == f.pair(&t.oracle));
            rows += 1;
            if ok { &mut matched } else { &mut mismatched }.insert((t.descriptor.kind(), q));
        }
    };
    sweep(&c.f7, &fs7, &ClassKind::ALL, 7);
    sweep(&c.f4, &fs4, &[ClassKind::Ell1, ClassKind::Ell2], 4);
    let kinds = |s: &BTreeSet<(ClassKind, u64)>| s.iter().map(|(k, _)| *k).collect::<BTreeSet<_>>();
    // every class of a kind behaves the same way
    assert!(matched.is_disjoint(&mismatched));
    assert_eq!(kinds(&mismatched), BTreeSet::from([ClassKind::Par2, ClassKind::Ell1]));
    assert_eq!(matched.len() + mismatched.len(), 10);
    let names = |s: &BTreeSet<(ClassKind, u64)>| {
        s.iter().map(|(k, q)| format!("{}@{q}", k.name())).collect::<Vec<_>>().join(" ")
    };
    Status::Ledgered(format!(
        "{rows} classes; match: {}; ledgered mismatch: {}",
        names(&matched),
        names(&mismatched)
    ))
}

fn representative(f: &FieldCtx, kind: ClassKind) -> Gl3Mat {
    let units: Vec<Fe> = f.nonzero().collect();
    let (o, g) = (Fe::ONE, f.generator);
    let d = match kind {
        ClassKind::Hyp1 => ClassDescriptor::Hyp1(o, g),
        ClassKind::Hyp2 => ClassDescriptor::hyp2(units[0], units[1], units[2]),
        ClassKind::Par1 => ClassDescriptor::Par1(o),
        ClassKind::Par2 => ClassDescriptor::Par2(o),
        ClassKind::Par3 => ClassDescriptor::Par3(o, g),
        ClassKind::Ell2 => {
            let c = &irreducible_monics(f, 2)[0];
            ClassDescriptor::Ell2 { quad: [c[0], c[1]], m: o }
        }
        _ => unreachable!(),
    };
    d.representative(f)
}

/// Listed fundamental domains against brute-force centralizers.
fn domains() -> Status {
    let kinds = [ClassKind::Hyp1, ClassKind::Hyp2, ClassKind::Par1, ClassKind::Par2, ClassKind::Par3, ClassKind::Ell2];
    let mut detail = Vec::new();
    for (p, n) in [(2, 2), (7, 1)] {
        let h = hs(p, n);
        for kind in kinds {
            let c = verify_fundamental_domain(&h, kind, &representative(h.field(), kind), BUDGET).unwrap();
            if kind == ClassKind::Par2 {
                assert_eq!(c.repeated, 0);
                assert!(c.uncovered > 0);
                detail.push(format!("par2@{}: {} orbits missed", h.q(), c.uncovered));
            } else {
                assert!(c.is_fundamental(), "{kind:?} at q = {}: {c:?}", h.q());
            }
        }
    }
    Status::Ledgered(format!("5 kinds exact at q = 4, 7; {}", detail.join(", ")))
}

/// The character of Ind 1 against fixed-coset counts.
fn character() -> Status {
    let h = hs(2, 2);
    let oracle = InducedCharOracle::new(&h, BUDGET).unwrap();
    let cmp = compare_with_oracle(&oracle, Exec::Parallel).unwrap();
    assert!(cmp.all_match());
    assert_eq!(cmp.dimension, "1080");
    let id = cmp.rows.iter().find(|r| r.descriptor == ClassDescriptor::Central(Fe::ONE)).unwrap();
    assert_eq!(id.oracle, 1080);
    assert!(cmp.orthogonality_holds());
    assert_eq!(cmp.weighted_sum, "181440");
    Status::Pass(format!("{} classes of GL3(F_4) exact; chi(1) = 1080; sum = 181440", cmp.rows.len()))
}

/// f = 1 and f = indicator of p0.
fn worked_identities(c: &Ctx) -> Status {
    for s in [&c.f4, &c.f7] {
        assert!(constant_identity(s).holds);
    }
    let b = base_point_identity(&c.f4);
    assert_eq!(b.k_order, "63");
    assert_eq!(b.direct_trace, "1134");
    assert_eq!(b.quotient, "18");
    assert!(b.quotient_is_nonnegative_integer);
    let oracle = InducedCharOracle::new(c.f4.hs(), BUDGET).unwrap();
    assert_eq!(gamma_orbits_on_halfspace(&oracle, Exec::Parallel).unwrap(), b.quotient_value());
    assert_eq!(b.printed, "180/7");
    assert!(!b.printed_matches);
    let b7 = base_point_identity(&c.f7);
    assert_eq!((b7.quotient.as_str(), b7.printed_matches), ("1", true));
    Status::Ledgered(format!(
        "f = 1 gives |G| at q = 4, 7; indicator: {} / 63 = 18 (Burnside agrees), printed 180/7",
        b.direct_trace
    ))
}

/// Multiplicity tables in the regime gcd(n, 6) = 1.
fn decomposition() -> Status {
    let mut empty_case_values = BTreeSet::new();
    for (p, n) in [(7u64, 1u32), (13, 1), (7, 5), (13, 5), (31, 5), (7, 7)] {
        let r = decompose(p, n).unwrap();
        for row in &r.rows {
            assert_eq!(row.closed, row.expanded, "({p},{n}) {:?} {}", row.family, row.case);
            if row.is_empty() {
                if !row.closed.is_zero() {
                    empty_case_values.insert((n, row.family, row.case, row.closed.to_string()));
                }
                continue;
            }
            assert!(row.is_nonnegative_integer(), "({p},{n}) {:?} {}", row.family, row.case);
            if n == 1 {
                let trivial = row.family == Family::Alpha && row.case == 3;
                assert_eq!(row.closed, int(trivial as u128), "{:?} {}", row.family, row.case);
            }
        }
        assert!(r.checksums.dimension_ok() && r.checksums.squares_ok(), "({p},{n})");
    }
    let r = decompose(7, 5).unwrap();
    let q = BigInt::from(7).pow(5);
    let index = group_order_big(&q) / group_order_big(&BigInt::from(7));
    assert_eq!(r.checksums.dimension_sum, index.to_string());
    for q in [4i64, 7, 13] {
        assert_eq!(dual_square_sum(&BigInt::from(q)), group_order_big(&BigInt::from(q)));
    }
    // values printed for cases no character falls into, all at q = p
    let expected: BTreeSet<_> = [(Family::PiAb, 4, "1"), (Family::PiAbc, 4, "1"), (Family::Rho, 4, "-1"), (Family::Sigma, 3, "1")]
        .into_iter()
        .map(|(f, c, v)| (1u32, f, c, v.to_string()))
        .collect();
    assert_eq!(empty_case_values, expected);
    Status::Ledgered(
        "every case with characters is a nonnegative integer; checksums exact; at n = 1 the printed forms give \
         rho case 4 = -1 and 1 for pi_ab case 4, pi_abc case 4, sigma case 3, all with no characters"
            .into(),
    )
}

/// Counts of classes, points and stabilizers.
fn structural_counts() -> Status {
    let f2 = FieldCtx::prime(2).unwrap();
    let classes = enumerated_classes(&f2, BUDGET, Exec::Parallel).unwrap();
    assert_eq!(classes.len(), 6);
    assert_eq!(classes.iter().map(|c| c.class_size).sum::<u128>(), 168);
    assert_eq!(parametric_classes(&f2).len(), 6);
    for (p, n) in [(2, 2), (7, 1)] {
        let h = hs(p, n);
        let points = h.enumerate(BUDGET).unwrap().count() as u128;
        let k = h.stabilizer_k().len() as u128;
        assert_eq!(points, halfspace_size(h.q()));
        assert_eq!(mat::group_order(h.q()), k * points);
        if h.q() == 4 {
            assert_eq!((points, k), (2880, 63));
        }
    }
    Status::Pass("GL3(F_2): 6 classes, 168 elements; |H_4| = 2880, |K| = 63; |G| = |K||H_q| at q = 4, 7".into())
}

/// The cubic-elliptic branch for 3 | n, by code path only.
fn cubic_split_branch() -> Status {
    for (n, b) in [(1, Branch::Nonsplit), (2, Branch::Nonsplit), (3, Branch::Split), (5, Branch::Nonsplit), (6, Branch::Split)] {
        assert_eq!(elliptic_branch(ClassKind::Ell1, n), Some(b));
    }
    let h64 = hs(2, 6);
    let f = h64.field();
    let h4 = hs(2, 2);
    let kz = int(64 * 64 + 64 + 1);
    let f2 = FieldCtx::prime(2).unwrap();
    let cubics = irreducible_monics(&f2, 3);
    assert_eq!(cubics.len(), 2);
    for c in &cubics {
        let d = ClassDescriptor::Ell1([c[0], c[1], c[2]]);
        assert!(matches!(closed_form_for_branch(&h64, &d, Branch::Nonsplit), Err(Error::WrongBranch(_))));
        assert!(matches!(closed_form_for_branch(&h4, &d, Branch::Split), Err(Error::WrongBranch(_))));
        // over F_64 the class splits into three Frobenius-conjugate eigenvalues
        let ClassDescriptor::Hyp2(eig) = classify(f, &d.representative(f)) else { panic!("not diagonalizable") };
        let cf = orbital_sum_closed_form(&h64, &d).unwrap();
        assert_eq!(cf.terms.len(), 1);
        let (coeff, Term::Horocycle(kappa)) = &cf.terms[0] else { panic!("not a horocycle term") };
        assert_eq!(*coeff, kz);
        let x3 = eig.iter().copied().find(|&x| kappa.0[0] == f.div(f.pow(x, 2), x).unwrap()).unwrap();
        let (x1, x2) = (f.pow(x3, 2), f.pow(x3, 4));
        assert!(eig.contains(&x1) && eig.contains(&x2) && x1 != x3 && x2 != x3);
        let expect = [f.div(x1, x3).unwrap(), Fe::ZERO, Fe::ZERO, f.div(x2, x3).unwrap()];
        assert_eq!(kappa.0, expect);
        // the same shape as the second-hyperbolic form with that labeling
        let hyp = orbital_sum_closed_form(&h64, &ClassDescriptor::Hyp2([x1, x2, x3])).unwrap();
        assert_eq!(hyp.terms, cf.terms);
    }
    assert!(CUBIC_SPLIT_LIMITATION.contains("3 | n"));
    Status::Pass("branch dispatch for n = 1..6; both F_2 cubics over F_64 reduce to the diagonal form; not oracle-checked (stated in every report)".into())
}

fn main() {
    std::panic::set_hook(Box::new(|info| {
        if let Some(l) = info.location() {
            eprintln!("panic at {}:{}", l.file(), l.line());
        }
    }));
    let t = Instant::now();
    let ctx = Ctx { f4: side(2, 2), f7: side(7, 1) };
    println!("acceptance: geometric sides built in {:.1}s", t.elapsed().as_secs_f64());
    let criteria: [(&str, Box<dyn Fn() -> Status + '_>); 8] = [
        ("pre-trace identity", Box::new(|| trace_identity(&ctx))),
        ("closed-form orbital sums", Box::new(|| closed_forms(&ctx))),
        ("fundamental domains", Box::new(domains)),
        ("induced character", Box::new(character)),
        ("worked identities", Box::new(|| worked_identities(&ctx))),
        ("decomposition", Box::new(decomposition)),
        ("structural counts", Box::new(structural_counts)),
        ("cubic split branch", Box::new(cubic_split_branch)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let line = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(Status::Pass(d)) => format!("PASS      {d}"),
            Ok(Status::Ledgered(d)) => format!("LEDGERED  {d}"),
            Err(e) => {
                failed += 1;
                let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
                format!("FAIL      {}", msg.unwrap_or_default())
            }
        };
        println!("criterion {} ({name}): {line} [{:.1}s]", i + 1, t.elapsed().as_secs_f64());
    }
    if failed > 0 {
        eprintln!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
}
