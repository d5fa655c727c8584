//! Property tests for field arithmetic, the action on H_q, spherical
//! functions, the induced-character oracle and the multiplicity tables.

use std::sync::OnceLock;

use num_traits::Signed;
use proptest::prelude::*;

use gl3trace::geometric::SphericalFn;
use gl3trace::gf::{DeltaRule, Fe, FieldCtx, Tower};
use gl3trace::gl3::{mat, Gl3Mat};
use gl3trace::halfspace::{HalfSpace, KOrbits};
use gl3trace::spectral::chi::{InducedCharOracle, Subgroup};
use gl3trace::spectral::multiplicity::decompose;
use gl3trace::Exec;

struct Fixture {
    orbits: KOrbits,
    f: SphericalFn,
    k: Vec<Gl3Mat>,
    oracle: InducedCharOracle,
}

fn f4() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let hs = HalfSpace::new(Tower::new(FieldCtx::new(2, 2, None).unwrap(), DeltaRule::default()).unwrap());
        let orbits = KOrbits::build(&hs, 1 << 30).unwrap();
        Fixture {
            f: SphericalFn::random(&orbits, 11),
            k: hs.stabilizer_k(),
            oracle: InducedCharOracle::new(&hs, 1 << 30).unwrap(),
            orbits,
        }
    })
}

fn fields() -> &'static [FieldCtx] {
    static F: OnceLock<Vec<FieldCtx>> = OnceLock::new();
    F.get_or_init(|| [(2, 2), (2, 3), (7, 1), (5, 2), (3, 3)].map(|(p, n)| FieldCtx::new(p, n, None).unwrap()).to_vec())
}

fn gl3(f: &FieldCtx, e: [u32; 9]) -> Gl3Mat {
    let m = Gl3Mat(e.map(|x| Fe(x % f.q as u32)));
    // m - lambda I is invertible unless lambda is an eigenvalue; q >= 4 > 3
    (0..f.q as u32)
        .map(|l| {
            let mut s = m.clone();
            for i in 0..3 {
                s.0[4 * i] = f.sub(s.0[4 * i], Fe(l));
            }
            s
        })
        .find(|s| !mat::det(f, s).is_zero())
        .expect("at most three eigenvalues")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(i in 0usize..5, a: u32, b: u32, c: u32) {
        let f = &fields()[i];
        let [a, b, c] = [a, b, c].map(|x| Fe(x % f.q as u32));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
        }
        // Frobenius is additive and fixes exactly F_p
        let fr = |x| f.pow(x, f.p);
        prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
        prop_assert_eq!(fr(a) == a, f.is_prime_subfield(a));
    }

    #[test]
    fn cubic_extension_axioms(a: [u32; 3], b: [u32; 3], c: [u32; 3]) {
        let t = &f4().orbits.hs.tower;
        let q = t.q() as u32;
        let [a, b, c] = [a, b, c].map(|v| v.map(|x| Fe(x % q)));
        prop_assert_eq!(t.mul(&t.mul(&a, &b), &c), t.mul(&a, &t.mul(&b, &c)));
        prop_assert_eq!(t.mul(&a, &t.add(&b, &c)), t.add(&t.mul(&a, &b), &t.mul(&a, &c)));
        prop_assert_eq!(t.mul(&a, &b), t.mul_slow(&a, &b));
        let f = t.base.as_ref();
        prop_assert_eq!(t.norm(&t.mul(&a, &b)), f.mul(t.norm(&a), t.norm(&b)));
        if !t.is_zero(&a) {
            prop_assert_eq!(t.mul(&a, &t.inv(&a).unwrap()), t.one());
        }
    }

    #[test]
    fn action_is_a_group_action(g: [u32; 9], h: [u32; 9], z: u64) {
        let fx = f4();
        let hs = &fx.orbits.hs;
        let f = hs.field();
        let (g, h) = (gl3(f, g), gl3(f, h));
        let pts = fx.orbits.reps();
        let z = pts[(z % pts.len() as u64) as usize];
        prop_assert_eq!(hs.act(&Gl3Mat::identity(), &z).unwrap(), z);
        let gh = mat::mul(f, &g, &h);
        prop_assert_eq!(hs.act(&gh, &z).unwrap(), hs.act(&g, &hs.act(&h, &z).unwrap()).unwrap());
        prop_assert!(hs.is_valid(&hs.act(&g, &z).unwrap()));
    }

    #[test]
    fn spherical_functions_are_bi_invariant(x: [u32; 9], k: usize, h: usize) {
        let fx = f4();
        let f = fx.orbits.hs.field();
        let x = gl3(f, x);
        let (k, h) = (&fx.k[k % fx.k.len()], &fx.k[h % fx.k.len()]);
        let kxh = mat::mul(f, k, &mat::mul(f, &x, h));
        prop_assert_eq!(fx.f.at(&fx.orbits, &kxh), fx.f.at(&fx.orbits, &x));
    }

    #[test]
    fn fixed_coset_counts_are_class_functions(g: [u32; 9], x: [u32; 9]) {
        let fx = f4();
        let f = fx.orbits.hs.field();
        let (g, x) = (gl3(f, g), gl3(f, x));
        let conj = mat::conj(f, &g, &x).unwrap();
        for s in [Subgroup::Gamma, Subgroup::K] {
            prop_assert_eq!(
                fx.oracle.fixed_cosets(&g, s, Exec::Sequential).unwrap(),
                fx.oracle.fixed_cosets(&conj, s, Exec::Sequential).unwrap()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn multiplicities_are_nonnegative_integers(pi in 0usize..10, ni in 0usize..3) {
        let p = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29][pi];
        let n = [1u32, 5, 7][ni];
        prop_assume!(p.checked_pow(n).map_or(false, |q| q < 1 << 40));
        let r = decompose(p, n).unwrap();
        for row in r.rows.iter().filter(|r| !r.is_empty()) {
            prop_assert!(row.closed.is_integer() && !row.closed.is_negative(), "({}, {}) {:?} {}", p, n, row.family, row.case);
            prop_assert_eq!(&row.closed, &row.expanded);
        }
        prop_assert!(r.checksums.dimension_ok() && r.checksums.squares_ok() && r.checksums.dual_ok());
    }
}
