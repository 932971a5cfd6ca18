use modbog_core::ramification::{
    companion_square, crystalline_charpoly, cyclo_profile, delta, frobenius_charpoly, frobp_square_scalar,
    herbrand_eta, ram_jumps, ram_profile, ramification_group_order, ratio_bound_check, RamError,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn odd_primes(max: u64) -> Vec<u64> {
    (3..=max).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

fn grid() -> Vec<(u64, u64, u32)> {
    let mut out = Vec::new();
    for p in odd_primes(50) {
        for k in (2..=20).step_by(2) {
            for n in 1..=4 {
                out.push((p, k, n));
            }
        }
    }
    out
}

#[test]
fn reference_values() {
    let r = ram_profile(5, 2, 2).unwrap();
    assert_eq!((r.e_n, r.i_n), (600, 24));
    assert_eq!(r.group, vec![24, 5, 5]);
    let r = ram_profile(5, 4, 2).unwrap();
    assert_eq!((r.d, r.i_n), (3, 8));
    assert_eq!(ram_profile(59, 2, 1).unwrap().e_n, 3480);
    assert_eq!(delta(59, 2).unwrap(), 3480);
}

#[test]
fn jumps_partition_the_index_range() {
    for (p, k, n) in grid() {
        let r = ram_profile(p, k, n).unwrap();
        let jumps = ram_jumps(p, k, n).unwrap();
        if n == 1 {
            assert!(jumps.is_empty());
            assert_eq!(r.i_n, 0);
            continue;
        }
        assert_eq!(jumps[0].lo, 1, "({p}, {k}, {n})");
        assert_eq!(jumps.last().unwrap().hi, r.i_n, "({p}, {k}, {n})");
        for w in jumps.windows(2) {
            assert_eq!(w[0].hi + 1, w[1].lo, "({p}, {k}, {n})");
        }
        assert!(jumps.iter().all(|j| j.lo <= j.hi));
    }
}

#[test]
fn ratio_bound_holds() {
    for (p, k, n) in grid() {
        assert!(ratio_bound_check(p, k, n).unwrap(), "({p}, {k}, {n})");
    }
}

/// `φ(u) = Σ_{t=1}^{u} |G_t|/|G_0|`, summed over constant stretches.
fn upper_breaks(g0: u64, stretches: &[(u64, u64, u64)]) -> Vec<BigRational> {
    let mut phi = BigRational::zero();
    let mut out = Vec::new();
    for &(lo, hi, order) in stretches {
        phi += BigRational::new(BigInt::from((hi - lo + 1) * order), BigInt::from(g0));
        out.push(phi.clone());
    }
    out
}

/// The extensions are abelian, so by Hasse–Arf every upper break is an
/// integer.
#[test]
fn upper_breaks_are_integral() {
    for (p, k, n) in grid() {
        let r = ram_profile(p, k, n).unwrap();
        let stretches: Vec<(u64, u64, u64)> =
            r.jumps.iter().map(|j| (j.lo, j.hi, ramification_group_order(&r, j.lo))).collect();
        let breaks = upper_breaks(r.e_n, &stretches);
        for (j, b) in breaks.iter().enumerate() {
            assert!(b.is_integer(), "({p}, {k}, {n}): {b}");
            assert_eq!(b.to_integer(), BigInt::from(j + 1));
        }
        assert_eq!(ramification_group_order(&r, r.i_n + 1), 1);
        if n > 1 {
            assert_eq!(ramification_group_order(&r, r.i_n), (p * p) as u64);
            assert_eq!(r.last_group.iter().product::<u64>(), p * p);
        }
        assert_eq!(r.group.iter().product::<u64>(), r.e_n);
    }
    for p in odd_primes(50) {
        for n in 1..=4 {
            let c = cyclo_profile(p, n).unwrap();
            let stretches: Vec<(u64, u64, u64)> = c.jumps.iter().map(|j| (j.lo, j.hi, p.pow(n - j.j))).collect();
            for (j, b) in upper_breaks(c.e_n, &stretches).iter().enumerate() {
                assert_eq!(*b, BigRational::from_integer(BigInt::from(j + 1)));
            }
        }
    }
}

#[test]
fn herbrand_matches_its_integral() {
    // η(r) for a tame layer of degree d: ∫_0^r dt/d.
    for d in 1..30u64 {
        for r in 0..100u64 {
            let expected = BigRational::new(BigInt::from(r), BigInt::from(d));
            assert_eq!(herbrand_eta(r, d).unwrap(), expected);
        }
    }
    assert!(herbrand_eta(3, 0).is_err());
}

#[test]
fn input_validation() {
    assert_eq!(ram_profile(5, 3, 2), Err(RamError::OddWeight(3)));
    assert_eq!(ram_profile(4, 2, 2), Err(RamError::BadPrime(4)));
    assert!(matches!(ram_profile(5, 2, 0), Err(RamError::Invalid(_))));
    assert_eq!(ram_profile(1_000_003, 2, 4), Err(RamError::Overflow));
}

#[test]
fn companion_matrix_squares_to_scalar() {
    for (p, k) in [(5u64, 2u64), (59, 2), (7, 6)] {
        let c = BigInt::from(p).pow(k as u32 - 1);
        let sq = companion_square(&c);
        assert_eq!(sq, [-c.clone(), BigInt::zero(), BigInt::zero(), -c.clone()]);
        assert_eq!(frobp_square_scalar(p, k).unwrap(), -c);
    }
}

#[test]
fn frobenius_determinant() {
    for ell in [2u64, 3, 7, 11] {
        for k in (2..=12).step_by(2) {
            let f = frobenius_charpoly(ell, &BigInt::from(5), k);
            assert!(f.det_is_cyclotomic);
            assert_eq!(f.constant, num_bigint::BigUint::from(ell).pow(k as u32 - 1));
            assert_eq!(f.linear, BigInt::from(-5));
        }
    }
}

proptest! {
    #[test]
    fn crystalline_charpoly_is_consistent(
        p in prop::sample::select(vec![5u64, 7, 11, 59]),
        kp in 2u64..8,
        a in -1000i64..1000,
        chi in prop::sample::select(vec![1i8, -1]),
    ) {
        let a = BigInt::from(a);
        let c = crystalline_charpoly(kp, &a, chi, p).unwrap();
        prop_assert!(c.verified);
        prop_assert_eq!(&c.charpoly.constant, &BigInt::from(p).pow(kp as u32 - 1));
        // Cayley–Hamilton on φ.
        let [x0, x1, x2, x3] = c.phi.clone();
        let sq = [&x0 * &x0 + &x1 * &x2, &x0 * &x1 + &x1 * &x3, &x2 * &x0 + &x3 * &x2, &x2 * &x1 + &x3 * &x3];
        let l = &c.charpoly.linear;
        let k0 = &c.charpoly.constant;
        let ch = [&sq[0] + l * &x0 + k0, &sq[1] + l * &x1, &sq[2] + l * &x2, &sq[3] + l * &x3 + k0];
        prop_assert!(ch.iter().all(Zero::is_zero));
        prop_assert_eq!(c.linear_is_minus_a, chi == 1 || a.is_zero());
    }

    #[test]
    fn zero_trace_gives_x2_plus_constant(p in prop::sample::select(vec![5u64, 7, 59]), kp in 2u64..8) {
        let c = crystalline_charpoly(kp, &BigInt::zero(), 1, p).unwrap();
        prop_assert!(c.charpoly.linear.is_zero());
        prop_assert!(c.verified && c.linear_is_minus_a);
        prop_assert!(!c.charpoly.constant.is_one());
    }
}
