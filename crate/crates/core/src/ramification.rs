//! Closed-form ramification data for the Lubin–Tate tower over Q_q, q = p²,
//! cut down by the weight, and for the cyclotomic tower over Q_p.

use std::ops::{Add, Mul, Neg};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fp::{gcd, is_prime};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RamError {
    #[error("weight k = {0} must be even")]
    OddWeight(u64),
    #[error("{0} is not a prime ≥ 3")]
    BadPrime(u64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("value exceeds 64 bits")]
    Overflow,
}

fn check_pk(p: u64, k: u64) -> Result<(), RamError> {
    if p < 3 || !is_prime(p) {
        return Err(RamError::BadPrime(p));
    }
    if k < 2 {
        return Err(RamError::Invalid(format!("weight k = {k} must be at least 2")));
    }
    if k % 2 == 1 {
        return Err(RamError::OddWeight(k));
    }
    Ok(())
}

fn q_of(p: u64) -> Result<u64, RamError> {
    p.checked_mul(p).ok_or(RamError::Overflow)
}

fn pow(b: u64, e: u64) -> Result<u64, RamError> {
    let e = u32::try_from(e).map_err(|_| RamError::Overflow)?;
    b.checked_pow(e).ok_or(RamError::Overflow)
}

/// `δ = (q−1)/gcd(q−1, k−1)` with `q = p²`.
pub fn delta(p: u64, k: u64) -> Result<u64, RamError> {
    check_pk(p, k)?;
    let q = q_of(p)?;
    Ok((q - 1) / gcd(q - 1, k - 1))
}

/// One step of the upper filtration: `G_i` for `lo ≤ i ≤ hi` is the Galois
/// group over the level-`j` field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Jump {
    pub lo: u64,
    pub hi: u64,
    pub j: u32,
}

impl Serialize for Jump {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(3))?;
        seq.serialize_element(&self.lo)?;
        seq.serialize_element(&self.hi)?;
        seq.serialize_element(&self.j)?;
        seq.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamProfile {
    pub p: u64,
    pub k: u64,
    pub q: u64,
    pub d: u64,
    pub delta: u64,
    pub n: u32,
    pub e_n: u64,
    pub i_n: u64,
    pub jumps: Vec<Jump>,
    /// Invariant factors of the full Galois group.
    pub group: Vec<u64>,
    /// Invariant factors of the last nontrivial ramification group.
    pub last_group: Vec<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Index ranges `[⌈q^{j−1}/d⌉, ⌊(q^j−1)/d⌋]` for `j = 1..n−1`.
pub fn ram_jumps(p: u64, k: u64, n: u32) -> Result<Vec<Jump>, RamError> {
    check_pk(p, k)?;
    if n == 0 {
        return Err(RamError::Invalid("level n must be at least 1".into()));
    }
    let q = q_of(p)?;
    let d = gcd(q - 1, k - 1);
    (1..n)
        .map(|j| {
            let lo = pow(q, u64::from(j) - 1)?.div_ceil(d);
            let hi = (pow(q, u64::from(j))? - 1) / d;
            Ok(Jump { lo, hi, j })
        })
        .collect()
}

pub fn ram_profile(p: u64, k: u64, n: u32) -> Result<RamProfile, RamError> {
    let delta = delta(p, k)?;
    if n == 0 {
        return Err(RamError::Invalid("level n must be at least 1".into()));
    }
    let q = q_of(p)?;
    let d = gcd(q - 1, k - 1);
    let qn1 = pow(q, u64::from(n) - 1)?;
    let e_n = delta.checked_mul(qn1).ok_or(RamError::Overflow)?;
    let i_n = (qn1 - 1) / d;
    let jumps = ram_jumps(p, k, n)?;
    let (group, last_group) = if n == 1 {
        (vec![delta], vec![delta])
    } else {
        let pn1 = pow(p, u64::from(n) - 1)?;
        (vec![delta, pn1, pn1], vec![p, p])
    };
    let mut warnings = Vec::new();
    if !crate::modforms::check_p3(p, k).holds {
        warnings.push(format!("(P3) fails for (p, k) = ({p}, {k}); the last-group statement is unsupported"));
    }
    Ok(RamProfile { p, k, q, d, delta, n, e_n, i_n, jumps, group, last_group, warnings })
}

/// Order of `G_i` in the filtration of `ram_profile(p, k, n)`; 1 past the
/// last jump.
pub fn ramification_group_order(profile: &RamProfile, i: u64) -> u64 {
    if i == 0 {
        return profile.e_n;
    }
    profile
        .jumps
        .iter()
        .find(|jump| jump.lo <= i && i <= jump.hi)
        .map(|jump| profile.q.pow(profile.n - jump.j))
        .unwrap_or(1)
}

/// Human-readable form of an invariant-factor list, e.g. `(Z/5)^2`.
pub fn describe_group(invariants: &[u64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < invariants.len() {
        let m = invariants[i];
        let run = invariants[i..].iter().take_while(|&&x| x == m).count();
        parts.push(if run == 1 { format!("Z/{m}") } else { format!("(Z/{m})^{run}") });
        i += run;
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" x ")
    }
}

/// Ramification data of Q_p(ζ_{p^n})/Q_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycloProfile {
    pub p: u64,
    pub n: u32,
    pub e_n: u64,
    pub i_n: u64,
    pub jumps: Vec<Jump>,
    pub last_group_order: u64,
}

pub fn cyclo_profile(p: u64, n: u32) -> Result<CycloProfile, RamError> {
    if !is_prime(p) {
        return Err(RamError::BadPrime(p));
    }
    if n == 0 {
        return Err(RamError::Invalid("level n must be at least 1".into()));
    }
    let pn1 = pow(p, u64::from(n) - 1)?;
    let e_n = (p - 1).checked_mul(pn1).ok_or(RamError::Overflow)?;
    let jumps = (1..n)
        .map(|j| Ok(Jump { lo: pow(p, u64::from(j) - 1)?, hi: pow(p, u64::from(j))? - 1, j }))
        .collect::<Result<Vec<_>, RamError>>()?;
    let last_group_order = if n == 1 { p - 1 } else { p };
    Ok(CycloProfile { p, n, e_n, i_n: pn1 - 1, jumps, last_group_order })
}

/// Herbrand's transition `r ↦ r/d`, exact.
pub fn herbrand_eta(r: u64, d: u64) -> Result<BigRational, RamError> {
    if d == 0 {
        return Err(RamError::Invalid("d must be positive".into()));
    }
    // (1/d)·(r + 1 + (d − 1)) − 1
    let sum = BigUint::from(r) + 1u32 + (d - 1);
    Ok(BigRational::new(sum.into(), d.into()) - BigRational::one())
}

/// Characteristic polynomial `X² + c₁X + c₀` as `(c₁, c₀)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadratic<T> {
    pub linear: T,
    pub constant: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystallineCharpoly<T> {
    pub charpoly: Quadratic<T>,
    /// φ on the basis `(e₁, e₂)`, row-major.
    pub phi: [T; 4],
    /// Trace and determinant of `phi` agree with `charpoly`.
    pub verified: bool,
    /// Whether the linear coefficient equals `−a` (it is `−aχ`).
    pub linear_is_minus_a: bool,
}

/// `φ(e₁) = p^{k′−1}χ² e₂`, `φ(e₂) = −e₁ + aχ e₂` with `χ = chi_p ∈ {±1}`.
///
/// The trace of this matrix is `aχ`, so the returned polynomial is
/// `X² − aχX + χ²p^{k′−1}`.
pub fn crystalline_charpoly<T>(k_prime: u64, a: &T, chi_p: i8, p: u64) -> Result<CrystallineCharpoly<T>, RamError>
where
    T: Clone + PartialEq + Zero + One + Neg<Output = T> + Add<Output = T> + Mul<Output = T> + From<u64>,
{
    if k_prime < 2 {
        return Err(RamError::Invalid(format!("k' = {k_prime} must be at least 2")));
    }
    if chi_p != 1 && chi_p != -1 {
        return Err(RamError::Invalid("chi_p must be ±1".into()));
    }
    let chi = if chi_p == 1 { T::one() } else { -T::one() };
    let pk = T::from(pow(p, k_prime - 1)?);
    let phi = [T::zero(), -T::one(), chi.clone() * chi.clone() * pk, a.clone() * chi.clone()];
    let trace = phi[0].clone() + phi[3].clone();
    let det = phi[0].clone() * phi[3].clone() + -(phi[1].clone() * phi[2].clone());
    let charpoly =
        Quadratic { linear: -(a.clone() * chi.clone()), constant: chi.clone() * chi * T::from(pow(p, k_prime - 1)?) };
    let verified = -trace == charpoly.linear && det == charpoly.constant;
    let linear_is_minus_a = charpoly.linear == -a.clone();
    Ok(CrystallineCharpoly { charpoly, phi, verified, linear_is_minus_a })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusCharpoly<T> {
    pub linear: T,
    pub constant: BigUint,
    /// `ℓ^{k−1}` equals the cyclotomic value `ε^{k−1}(Frob_ℓ)`.
    pub det_is_cyclotomic: bool,
}

/// `X² − a_ℓX + ℓ^{k−1}`. The condition `ℓ ∤ Np` is the caller's.
pub fn frobenius_charpoly<T: Clone + Neg<Output = T>>(ell: u64, a_ell: &T, k: u64) -> FrobeniusCharpoly<T> {
    let constant = BigUint::from(ell).pow(k.saturating_sub(1) as u32);
    let cyclotomic = (0..k.saturating_sub(1)).fold(BigUint::one(), |acc, _| acc * ell);
    FrobeniusCharpoly { linear: -a_ell.clone(), det_is_cyclotomic: constant == cyclotomic, constant }
}

/// `ρ(Frob_p)² = −p^{k−1}·I`, from squaring the companion matrix of
/// `X² + p^{k−1}`.
pub fn frobp_square_scalar(p: u64, k: u64) -> Result<num_bigint::BigInt, RamError> {
    if k < 1 {
        return Err(RamError::Invalid("k must be positive".into()));
    }
    let c = num_bigint::BigInt::from(p).pow(k as u32 - 1);
    let m = companion_square(&c);
    debug_assert!(m[1].is_zero() && m[2].is_zero() && m[0] == m[3]);
    Ok(m[0].clone())
}

/// Square of `[[0, −c], [1, 0]]`, the companion matrix of `X² + c`.
pub fn companion_square(c: &num_bigint::BigInt) -> [num_bigint::BigInt; 4] {
    let m = [num_bigint::BigInt::zero(), -c.clone(), num_bigint::BigInt::one(), num_bigint::BigInt::zero()];
    [
        &m[0] * &m[0] + &m[1] * &m[2],
        &m[0] * &m[1] + &m[1] * &m[3],
        &m[2] * &m[0] + &m[3] * &m[2],
        &m[2] * &m[1] + &m[3] * &m[3],
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum BoundKind {
    Cyclotomic,
    Modular { deg_k: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H2Constants {
    #[serde(with = "crate::bigstr")]
    pub c1: BigUint,
    #[serde(with = "crate::bigstr")]
    pub c2: BigUint,
    pub kind: BoundKind,
}

pub fn h2_constants(kind: BoundKind, p: u64) -> Result<H2Constants, RamError> {
    if !is_prime(p) {
        return Err(RamError::BadPrime(p));
    }
    let pb = BigUint::from(p);
    Ok(match kind {
        BoundKind::Cyclotomic => H2Constants { c1: pb.clone(), c2: pb, kind },
        BoundKind::Modular { deg_k } => {
            if p < 5 {
                return Err(RamError::Invalid(format!("modular constants need p ≥ 5, got {p}")));
            }
            if deg_k == 0 {
                return Err(RamError::Invalid("degK must be positive".into()));
            }
            H2Constants { c1: pb.pow(2), c2: pb.pow(4 * deg_k), kind }
        }
    })
}

/// `e_n ≤ (q−1)(i_n+1)`, i.e. `e_n/(i_n+1) ≤ q−1`.
pub fn ratio_bound_check(p: u64, k: u64, n: u32) -> Result<bool, RamError> {
    let prof = ram_profile(p, k, n)?;
    let rhs = (prof.q as u128 - 1) * (prof.i_n as u128 + 1);
    Ok(prof.e_n as u128 <= rhs)
}

/// `ε(τ^{p−1}) = M^{2(p−1)}` for the cyclotomic value `M` of τ.
pub fn h1_witness(p: u64, m: u64) -> Result<BigUint, RamError> {
    if p < 5 || !is_prime(p) {
        return Err(RamError::Invalid(format!("p = {p} must be a prime ≥ 5")));
    }
    if m < 2 {
        return Err(RamError::Invalid("M must be at least 2".into()));
    }
    Ok(BigUint::from(m).pow(2 * (p as u32 - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn delta_examples() {
        assert_eq!(delta(5, 2), Ok(24));
        assert_eq!(delta(5, 4), Ok(8));
        assert_eq!(delta(59, 2), Ok(3480));
        assert_eq!(delta(5, 3), Err(RamError::OddWeight(3)));
    }

    #[test]
    fn profiles() {
        let r = ram_profile(5, 2, 1).unwrap();
        assert_eq!((r.e_n, r.i_n), (24, 0));
        assert_eq!(r.group, vec![24]);
        assert_eq!(describe_group(&r.last_group), "Z/24");
        assert!(r.jumps.is_empty());
        let r = ram_profile(5, 2, 2).unwrap();
        assert_eq!((r.e_n, r.i_n), (600, 24));
        assert_eq!(r.group, vec![24, 5, 5]);
        assert_eq!(describe_group(&r.last_group), "(Z/5)^2");
        assert_eq!(ram_profile(59, 2, 1).unwrap().e_n, 3480);
    }

    #[test]
    fn jump_examples() {
        assert_eq!(ram_jumps(5, 2, 2).unwrap(), vec![Jump { lo: 1, hi: 24, j: 1 }]);
        assert_eq!(ram_jumps(5, 2, 3).unwrap(), vec![Jump { lo: 1, hi: 24, j: 1 }, Jump { lo: 25, hi: 624, j: 2 }]);
        assert_eq!(ram_profile(5, 2, 3).unwrap().i_n, 624);
        let r = ram_profile(5, 4, 2).unwrap();
        assert_eq!((r.d, r.i_n), (3, 8));
        assert_eq!(r.jumps, vec![Jump { lo: 1, hi: 8, j: 1 }]);
    }

    #[test]
    fn profile_json_key_order() {
        let json = serde_json::to_string(&ram_profile(5, 2, 2).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"p":5,"k":2,"q":25,"d":1,"delta":24,"n":2,"e_n":600,"i_n":24,"jumps":[[1,24,1]],"group":[24,5,5],"last_group":[5,5]}"#
        );
    }

    #[test]
    fn group_orders_along_filtration() {
        let r = ram_profile(5, 2, 3).unwrap();
        assert_eq!(ramification_group_order(&r, 0), 24 * 625);
        assert_eq!(ramification_group_order(&r, 1), 625);
        assert_eq!(ramification_group_order(&r, 25), 25);
        assert_eq!(ramification_group_order(&r, 625), 1);
    }

    #[test]
    fn herbrand() {
        assert_eq!(herbrand_eta(0, 7).unwrap(), BigRational::zero());
        assert_eq!(herbrand_eta(24, 3).unwrap(), BigRational::from_integer(8.into()));
        assert_eq!(herbrand_eta(5, 1).unwrap(), BigRational::from_integer(5.into()));
    }

    #[test]
    fn charpolys() {
        let c = crystalline_charpoly(2, &BigInt::zero(), 1, 5).unwrap();
        assert_eq!(c.charpoly, Quadratic { linear: BigInt::zero(), constant: BigInt::from(5) });
        assert!(c.verified);
        let twisted = crystalline_charpoly(4, &BigInt::from(3), -1, 7).unwrap();
        assert!(twisted.verified);
        assert!(!twisted.linear_is_minus_a);
        assert_eq!(twisted.charpoly.linear, BigInt::from(3));

        let f = frobenius_charpoly(2, &BigInt::from(-1), 2);
        assert_eq!((f.linear, f.constant), (BigInt::from(1), BigUint::from(2u32)));
        assert!(f.det_is_cyclotomic);
    }

    #[test]
    fn frobenius_square() {
        assert_eq!(frobp_square_scalar(5, 2).unwrap(), BigInt::from(-5));
        assert_eq!(frobp_square_scalar(59, 2).unwrap(), BigInt::from(-59));
        assert_eq!(frobp_square_scalar(7, 6).unwrap(), BigInt::from(-16807));
    }

    #[test]
    fn constants() {
        let c = h2_constants(BoundKind::Cyclotomic, 5).unwrap();
        assert_eq!((c.c1, c.c2), (5u32.into(), 5u32.into()));
        let c = h2_constants(BoundKind::Modular { deg_k: 1 }, 5).unwrap();
        assert_eq!((c.c1, c.c2), (25u32.into(), 625u32.into()));
        let c = h2_constants(BoundKind::Modular { deg_k: 2 }, 11).unwrap();
        assert_eq!((c.c1, c.c2), (121u32.into(), 214358881u32.into()));
        assert_eq!(h1_witness(5, 2).unwrap(), 256u32.into());
        assert_eq!(h1_witness(7, 2).unwrap(), 4096u32.into());
    }

    #[test]
    fn ratio_examples() {
        assert!(ratio_bound_check(5, 2, 2).unwrap());
        assert!(ratio_bound_check(5, 2, 1).unwrap());
        assert!(ratio_bound_check(7, 4, 3).unwrap());
    }

    #[test]
    fn cyclotomic_profile() {
        let c = cyclo_profile(5, 3).unwrap();
        assert_eq!((c.e_n, c.i_n), (100, 24));
        assert_eq!(c.jumps, vec![Jump { lo: 1, hi: 4, j: 1 }, Jump { lo: 5, hi: 24, j: 2 }]);
        assert!(c.e_n <= c.p * (c.i_n + 1));
    }
}
