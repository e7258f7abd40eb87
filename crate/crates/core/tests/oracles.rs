//! Frozen reference values. Q_9, Q_10, the m = 12, 15 sums, the series at 0 and
//! the sample roots come from an independent computer-algebra run (plain
//! recurrence with polynomial division, direct Taylor expansion of w_n, and a
//! separate multiprecision root finder).

use num::{BigInt, BigRational, Zero};

use yv_core::exactpoly::{inverse_power_sums, newton_power_sums, PolyError, QuotientRing};
use yv_core::gen::{
    check_divisibility, mod4_reduction, rational_solution, valuation_checks,
    verify_irrationality_premises, wronskian_check,
};
use yv_core::relations::{cross_sum_residue, self_sum_residue};
use yv_core::roots::{self, cube_reduce};
use yv_core::series::{self, SeriesKind};
use yv_core::{generate, mp, IntPoly, RatPoly, RationalSolution};

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn big(s: &str) -> BigInt {
    s.parse().unwrap()
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn bigs(v: &[&str]) -> Vec<BigInt> {
    v.iter().map(|s| big(s)).collect()
}

#[test]
fn small_products_and_quotients() {
    assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
    assert_eq!(&p(&[0, 1]) * &p(&[4, 0, 0, 1]), p(&[0, 4, 0, 0, 1]));
    let sq = &p(&[4, 0, 0, 1]) * &p(&[4, 0, 0, 1]);
    assert_eq!(sq, p(&[16, 0, 0, 8, 0, 0, 1]));
    assert_eq!(sq.exact_div(&p(&[4, 0, 0, 1])).unwrap(), p(&[4, 0, 0, 1]));
    assert!(matches!(
        p(&[5, 0, 0, 1]).exact_div(&p(&[4, 0, 0, 1])),
        Err(PolyError::NonZeroRemainder { .. })
    ));
    assert_eq!(
        p(&[-80, 0, 0, 20, 0, 0, 1]).derivative(),
        p(&[0, 0, 60, 0, 0, 6])
    );
}

#[test]
fn evaluation_and_reversal() {
    assert_eq!(
        p(&[4, 0, 0, 1]).evaluate_int(&BigInt::zero()),
        BigInt::from(4)
    );
    assert_eq!(p(&[0, 1]).evaluate(&q(1, 2)), q(1, 2));
    assert_eq!(
        p(&[-80, 0, 0, 20, 0, 0, 1]).reverse_nonzero().unwrap(),
        p(&[1, 0, 0, 20, 0, 0, -80])
    );
    assert_eq!(
        p(&[0, 1]).reverse_nonzero(),
        Err(PolyError::ZeroConstantTerm)
    );
}

#[test]
fn power_sums_by_newton() {
    let s = newton_power_sums(&p(&[-80, 20, 1]), 2);
    assert_eq!(s, vec![q(-20, 1), q(560, 1)]);
    let s = newton_power_sums(&p(&[4, 0, 0, 1]), 3);
    assert_eq!(s, vec![q(0, 1), q(0, 1), q(-12, 1)]);
    assert_eq!(newton_power_sums(&p(&[-5, 1]), 1), vec![q(5, 1)]);
}

#[test]
fn gcd_and_inverse() {
    assert_eq!(
        p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).primitive_part(),
        p(&[-1, 1])
    );
    let g = RatPoly::gcd(
        &p(&[4, 0, 0, 1]).to_rat(),
        &p(&[-80, 0, 0, 20, 0, 0, 1]).to_rat(),
    );
    assert!(g.is_one());

    let ring = QuotientRing::from_int(&p(&[4, 0, 0, 1])).unwrap();
    let inv = ring.generator().inv().unwrap();
    assert_eq!(
        inv.residue(),
        &RatPoly::new(vec![q(0, 1), q(0, 1), q(-1, 4)])
    );
    assert!(ring.one().inv().unwrap().is_one());
    let ring = QuotientRing::from_int(&p(&[-1, 0, 1])).unwrap();
    let e = ring.reduce_int(&p(&[-1, 1]));
    assert!(matches!(e.inv(), Err(PolyError::NotInvertible { .. })));
}

#[test]
fn table_members_and_beyond() {
    let recs = generate(10).unwrap();
    assert_eq!(recs[2].poly(), &p(&[4, 0, 0, 1]));
    assert_eq!(recs[4].poly(), &p(&[0, 11200, 0, 0, 0, 0, 0, 60, 0, 0, 1]));
    assert_eq!(
        recs[5].compressed(),
        bigs(&["1", "140", "2800", "78400", "-3136000", "-6272000"])
    );
    assert_eq!(recs[1].compressed(), bigs(&["1"]));
    let q9 = bigs(&[
        "1",
        "1320",
        "646800",
        "160160000",
        "21525504000",
        "1876485811200",
        "46132742656000",
        "8403341506560000",
        "483515342069760000",
        "-318108851847987200000",
        "-18430315465453731840000",
        "-558505348189165977600000",
        "9636955027577765888000000",
        "-404752111158266167296000000",
        "-4047521111582661672960000000",
        "5396694815443548897280000000",
    ]);
    assert_eq!(recs[9].compressed(), q9);
    let q10 = bigs(&[
        "1",
        "1980",
        "1544400",
        "639038400",
        "155387232000",
        "24080581324800",
        "2227039406592000",
        "182934280488960000",
        "4351638078627840000",
        "-2587344319342182400000",
        "716670308138534830080000",
        "136012478911949832192000000",
        "9157516514955772035072000000",
        "56029256530337130872832000000",
        "11766143871370797483294720000000",
        "-299121524196626496019759104000000",
        "-17947291451797589761185546240000000",
        "0",
        "-558360178500369459236883660800000000",
    ]);
    assert_eq!(recs[10].compressed(), q10);
    assert!(recs[10].has_zero_root());
}

#[test]
fn divisibility_valuation_and_mod4() {
    let recs = generate(8).unwrap();
    assert!(check_divisibility(&recs[5]).passed());
    assert!(check_divisibility(&recs[0]).passed());
    assert_eq!(recs[6].compressed()[4], big("-17248000"));
    assert_eq!(&recs[6].compressed()[4] % 256, BigInt::zero());
    assert_eq!((recs[2].x_n(), recs[2].p_n()), (&BigInt::from(4), 2));
    assert_eq!(
        (recs[5].x_n(), recs[5].p_n()),
        (&BigInt::from(-6272000), 10)
    );
    assert!(valuation_checks(&recs).passed());
    for n in [1, 3, 4] {
        assert!(mod4_reduction(&recs[n]).passed());
    }
    for n in [0, 3, 8] {
        assert!(verify_irrationality_premises(&recs[n]).passed());
    }
    assert!(wronskian_check(&recs, 1).passed());
    assert!(wronskian_check(&recs, 2).passed());
}

#[test]
fn first_rational_solutions() {
    let recs = generate(3).unwrap();
    let w1 = RationalSolution::reduced(1, p(&[-1]), p(&[0, 1]));
    assert!(rational_solution(&recs, 1).unwrap().same_function(&w1));
    // 1/z - 3z^2/(z^3+4) = (4 - 2z^3) / (z^4 + 4z)
    let w2 = RationalSolution::reduced(2, p(&[4, 0, 0, -2]), p(&[0, 4, 0, 0, 1]));
    assert!(rational_solution(&recs, 2).unwrap().same_function(&w2));
    assert!(rational_solution(&recs, -2)
        .unwrap()
        .same_function(&w2.negated()));
    assert!(rational_solution(&recs, 0).unwrap().numerator().is_zero());
}

#[test]
fn cube_reduction() {
    let recs = generate(4).unwrap();
    let r2 = cube_reduce(&recs[2]).unwrap();
    assert_eq!((r2.y_poly(), r2.zero_root()), (&p(&[4, 1]), false));
    let r3 = cube_reduce(&recs[3]).unwrap();
    assert_eq!(r3.y_poly(), &p(&[-80, 20, 1]));
    let r4 = cube_reduce(&recs[4]).unwrap();
    assert_eq!(
        (r4.y_poly(), r4.zero_root()),
        (&p(&[11200, 0, 60, 1]), true)
    );
}

/// Exact rational value of a plain decimal literal.
fn dec(s: &str) -> BigRational {
    let (neg, s) = s.strip_prefix('-').map_or((false, s), |t| (true, t));
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let v = BigRational::new(
        big(&format!("{int}{frac}")),
        BigInt::from(10).pow(frac.len() as u32),
    );
    if neg {
        -v
    } else {
        v
    }
}

fn close(a: &mp::Complex, re: &str, im: &str) -> bool {
    let want = mp::Complex::new(
        mp::real_from_ratio(&dec(re), 256),
        mp::real_from_ratio(&dec(im), 256),
    );
    (a - &want).log2_abs() < -120.0
}

#[test]
fn sample_roots_match_reference() {
    let recs = generate(5).unwrap();
    let r3 = roots::roots_of(&recs[3], 256).unwrap();
    assert!(r3
        .roots()
        .iter()
        .any(|z| close(z, "1.506109580086941962278287061652288453086", "0")));
    assert!(r3.roots().iter().any(|z| close(
        z,
        "1.430463439391651982833304724986413950844",
        "-2.47763535539606457582066084994695823999"
    )));
    let r5 = roots::roots_of(&recs[5], 256).unwrap();
    assert!(r5.roots().iter().any(|z| close(
        z,
        "2.619459150810817097140769877600261343059",
        "-2.088544713195385438981465052612764361055"
    )));
    // z^3 = -4: all three roots on |z| = 4^(1/3).
    let r2 = roots::roots_of(&recs[2], 256).unwrap();
    for z in r2.roots() {
        assert!((mp::to_f64(&z.abs()) - 4f64.cbrt()).abs() < 1e-12);
    }
    let r1 = roots::roots_of(&recs[1], 256).unwrap();
    assert_eq!(r1.len(), 1);
    assert!(r1.includes_zero());
}

#[test]
fn inverse_sums_reference() {
    let recs = generate(7).unwrap();
    let want = [
        (2, 3, q(-3, 4)),
        (3, 3, q(3, 4)),
        (2, 6, q(3, 16)),
        (3, 6, q(21, 80)),
        (5, 4, q(0, 1)),
        (1, 9, q(0, 1)),
        (4, 12, q(27, 156800)),
        (4, 15, q(9, 1254400)),
        (5, 12, q(5007, 22400)),
        (5, 15, q(-18309, 156800)),
        (7, 12, q(35883, 22422400)),
        (7, 15, q(11637, 179379200)),
    ];
    for (n, m, s) in want {
        let got = inverse_power_sums(recs[n].poly(), m);
        assert_eq!(got[m - 1], s, "n = {n}, m = {m}");
    }
}

#[test]
fn series_at_zero_reference() {
    let recs = generate(7).unwrap();
    let want: [(u32, [BigRational; 4]); 4] = [
        (2, [q(-3, 4), q(3, 16), q(-3, 64), q(3, 256)]),
        (4, [q(-3, 4), q(-33, 112), q(-849, 11200), q(-1371, 62720)]),
        (5, [q(-3, 2), q(6, 7), q(-597, 1400), q(17511, 78400)]),
        (6, [q(3, 1), q(3, 20), q(1083, 1120), q(2031, 24640)]),
    ];
    for (n, c) in want {
        let s = series::series_at_zero(&recs, n, 12).unwrap();
        assert_eq!(s.kind, SeriesKind::for_n(n));
        for (i, v) in c.iter().enumerate() {
            assert_eq!(&s.coeff(3 * i + 2), v, "n = {n}, order {}", 3 * i + 2);
        }
        for k in (0..=12).filter(|k| k % 3 != 2) {
            assert!(s.coeff(k).is_zero(), "n = {n}, order {k}");
        }
    }
}

#[test]
fn quotient_ring_sums() {
    let cube = p(&[4, 0, 0, 1]);
    let z = p(&[0, 1]);
    assert!(cross_sum_residue(&z, &cube, 1).unwrap().is_zero());
    assert!(cross_sum_residue(&z, &cube, 2).unwrap().is_zero());
    let minus_quarter_sq = RatPoly::new(vec![q(0, 1), q(0, 1), q(-1, 4)]);
    assert_eq!(
        cross_sum_residue(&cube, &z, 1).unwrap().residue(),
        &minus_quarter_sq
    );
    assert_eq!(
        self_sum_residue(&cube, 1).unwrap().residue(),
        &minus_quarter_sq
    );
    // z^2 - 2: S_1 at a root is 1/(2a) = a/4.
    let s = self_sum_residue(&p(&[-2, 0, 1]), 1).unwrap();
    assert_eq!(s.residue(), &RatPoly::new(vec![q(0, 1), q(1, 4)]));
    assert!(self_sum_residue(&z, 1).unwrap().is_zero());
    // S_2 over the roots of z^3 + 4 is -a/12.
    let s2 = self_sum_residue(&cube, 2).unwrap();
    assert_eq!(s2.residue(), &RatPoly::new(vec![q(0, 1), q(-1, 12)]));
}
