use monoidlab::catalog::quad::{parse_quad, qr_ideal_membership};
use monoidlab::catalog::{lookup, REGISTRY};
use monoidlab::QuadInt;
use proptest::prelude::*;

fn q(m: i64, n: i64) -> QuadInt {
    QuadInt::new(m, n)
}

/// m + n·i√3 ∈ a·R by solving for the quotient with integer arithmetic.
fn in_principal(x: QuadInt, a: QuadInt) -> bool {
    let norm = a.m * a.m + 3 * a.n * a.n;
    // x·conj(a) = (xm·am + 3·xn·an) + (xn·am − xm·an)·i√3
    let re = x.m * a.m + 3 * x.n * a.n;
    let im = x.n * a.m - x.m * a.n;
    re % norm == 0 && im % norm == 0
}

#[test]
fn multiplication_rule() {
    assert_eq!(q(1, 1).mul(&q(1, -1)), q(4, 0));
    assert_eq!(q(2, 3).mul(&q(-1, 4)), q(2 * -1 - 3 * 3 * 4, 2 * 4 + 3 * -1));
    assert_eq!(q(1, 1).conj(), q(1, -1));
    assert_eq!(q(1, 1).norm(), 4);
}

#[test]
fn parse_examples() {
    assert_eq!(parse_quad("1+r").unwrap(), q(1, 1));
    assert_eq!(parse_quad("-2-3r").unwrap(), q(-2, -3));
    assert_eq!(parse_quad("r").unwrap(), q(0, 1));
    assert_eq!(parse_quad("7").unwrap(), q(7, 0));
    assert!(parse_quad("").is_err());
    assert!(parse_quad("1+s").is_err());
}

#[test]
fn ideal_membership_examples() {
    assert!(qr_ideal_membership(&q(4, 0), &[q(1, 1)], None).unwrap());
    assert!(!qr_ideal_membership(&q(1, 0), &[q(2, 0)], None).unwrap());
    // 2·(1+i√3) ∈ (1+i√3)R, so 1+i√3 ∈ 2⁻¹(1+i√3)R.
    assert!(qr_ideal_membership(&q(1, 1), &[q(1, 1)], Some(&q(2, 0))).unwrap());
    assert!(!qr_ideal_membership(&q(1, 1), &[q(2, 0)], None).unwrap());
    assert!(qr_ideal_membership(&q(1, 0), &[], None).is_err());
    assert!(qr_ideal_membership(&q(1, 0), &[q(0, 0)], None).is_err());
    assert!(qr_ideal_membership(&q(1, 0), &[q(1, 0)], Some(&q(0, 0))).is_err());
}

#[test]
fn half_integer_ring_is_three_translates() {
    // With z = 2y: y ∈ R̄ iff m ≡ n mod 2, and R̄ = R ∪ αR ∪ α²R with α = (1+i√3)/2.
    for m in -30i64..=30 {
        for n in -30i64..=30 {
            let z = q(m, n);
            let in_r = qr_ideal_membership(&z, &[q(2, 0)], None).unwrap();
            let in_alpha = qr_ideal_membership(&z, &[q(1, 1)], None).unwrap();
            let in_alpha2 = qr_ideal_membership(&z, &[q(-1, 1)], None).unwrap();
            assert_eq!(in_r, in_principal(z, q(2, 0)), "{m} {n}");
            assert_eq!(in_alpha, in_principal(z, q(1, 1)), "{m} {n}");
            assert_eq!(in_alpha2, in_principal(z, q(-1, 1)), "{m} {n}");
            assert_eq!(in_r || in_alpha || in_alpha2, (m - n) % 2 == 0, "{m} {n}");
        }
    }
}

#[test]
fn strict_inclusions() {
    // 2α = 1+i√3 lies in 2R̄ but not 2R; 2α² likewise.
    for w in [q(1, 1), q(-1, 1)] {
        assert!(!qr_ideal_membership(&w, &[q(2, 0)], None).unwrap());
        assert!(qr_ideal_membership(&w, &[w], None).unwrap());
    }
    // 2 ∈ (1+i√3)R fails while 4 ∈ (1+i√3)R holds.
    assert!(!qr_ideal_membership(&q(2, 0), &[q(1, 1)], None).unwrap());
    assert!(qr_ideal_membership(&q(4, 0), &[q(1, 1)], None).unwrap());
}

#[test]
fn every_annotation_is_anchored() {
    for name in [
        "nat", "nat2", "free2", "free-product:3", "numerical:1", "braid:3", "bs:1,2", "thompson", "thompson-op", "axb-Z",
        "quad-ring-ax-b", "raam:path3", "raam:triangle", "raam:square",
    ] {
        let e = lookup(name).unwrap();
        for a in &e.annotations {
            assert!(!a.anchor.trim().is_empty(), "{name}: {}", a.fact);
        }
    }
}

#[test]
fn lookup_examples() {
    let e = lookup("numerical:1").unwrap();
    assert!(e.annotations.iter().any(|a| a.check.as_ref().is_some_and(|(c, s)| c == "independence" && s == "Violated")));
    let e = lookup("free2").unwrap();
    assert!(e.records_toeplitz());
    assert!(e.annotations.iter().any(|a| a.check.as_ref().is_some_and(|(c, s)| c == "reversibility" && s == "Violated")));
    assert!(lookup("braid:3").unwrap().complete());
    assert!(lookup("no-such-monoid").is_err());
    assert!(lookup("numerical:x").is_err());
    assert!(!REGISTRY.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn norm_is_multiplicative(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000, d in -1000i64..1000) {
        let (x, y) = (q(a, b), q(c, d));
        prop_assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
    }

    #[test]
    fn divides_inverts_multiplication(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
        let (x, y) = (q(a, b), q(c, d));
        prop_assume!(!x.is_zero());
        prop_assert_eq!(x.divides(&x.mul(&y)), Some(y));
        prop_assert!(qr_ideal_membership(&x.mul(&y), &[x], None).unwrap());
    }

    #[test]
    fn membership_matches_direct_division(a in -20i64..20, b in -20i64..20, m in -40i64..40, n in -40i64..40) {
        let g = q(a, b);
        prop_assume!(!g.is_zero());
        prop_assert_eq!(qr_ideal_membership(&q(m, n), &[g], None).unwrap(), in_principal(q(m, n), g));
    }
}
