//! The acceleration exponent λ and the height constant `c = log(p/2)/(2p^λ)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::HeightError;
use crate::ramification::{h2_constants, BoundKind};

/// A rule producing λ from `(p, C1, C2)`.
pub trait AccelerationPolicy {
    fn lambda(&self, p: u64, c1: &BigUint, c2: &BigUint) -> BigUint;
}

/// Iterate `a ← min(2a, a+1)` from `a = 1/C1` until `a ≥ C2`; λ is the
/// number of steps.
#[derive(Clone, Copy, Debug, Default)]
pub struct UltrametricDoubling;

impl AccelerationPolicy for UltrametricDoubling {
    fn lambda(&self, _p: u64, c1: &BigUint, c2: &BigUint) -> BigUint {
        assert!(!c1.is_zero() && !c2.is_zero(), "C1, C2 must be positive");
        let target = BigRational::from_integer(BigInt::from(c2.clone()));
        let one = BigRational::one();
        let mut a = BigRational::new(BigInt::one(), BigInt::from(c1.clone()));
        let mut steps = BigUint::zero();
        // Below 1 the step doubles; from 1 on it adds 1.
        while a < one && a < target {
            a = &a + &a;
            steps += 1u32;
        }
        if a < target {
            let gap = (&target - &a).ceil().to_integer();
            steps += gap.to_biguint().expect("positive gap");
        }
        steps
    }
}

pub fn acceleration_lambda(p: u64, c1: &BigUint, c2: &BigUint) -> BigUint {
    UltrametricDoubling.lambda(p, c1, c2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundConstant {
    /// `log c = log log(p/2) − log 2 − λ log p`.
    pub log_c: f64,
    pub log_c_expr: String,
    /// `c` in scientific notation, available even when `c` underflows.
    pub c_decimal: String,
    pub c: Option<f64>,
}

fn scientific(log_c: f64, c: Option<f64>) -> String {
    if let Some(c) = c {
        return format!("{c:.6e}");
    }
    let l10 = log_c / std::f64::consts::LN_10;
    let mut exp = l10.floor();
    let mut mant = 10f64.powf(l10 - exp);
    if mant >= 9.9999995 {
        mant /= 10.0;
        exp += 1.0;
    }
    format!("{mant:.6}e{exp}")
}

pub fn bound_constant(p: u64, lambda: &BigUint) -> Result<BoundConstant, HeightError> {
    if p <= 2 {
        return Err(HeightError::NonpositiveConstant(p));
    }
    let lam = lambda.to_f64().expect("finite");
    let pf = p as f64;
    let log_c = (pf / 2.0).ln().ln() - std::f64::consts::LN_2 - lam * pf.ln();
    let c = Some(log_c.exp()).filter(|c| c.is_normal());
    Ok(BoundConstant {
        log_c,
        log_c_expr: format!("log(log({p}/2)) - log(2) - {lambda}*log({p})"),
        c_decimal: scientific(log_c, c),
        c,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundParams {
    pub p: u64,
    #[serde(with = "crate::bigstr")]
    pub c1: BigUint,
    #[serde(with = "crate::bigstr")]
    pub c2: BigUint,
    #[serde(with = "crate::bigstr")]
    pub lambda: BigUint,
    pub kind: BoundKind,
    pub log_c: f64,
    pub log_c_expr: String,
    pub c_decimal: String,
    pub c: Option<f64>,
}

pub fn bogomolov_bound(p: u64, kind: BoundKind) -> Result<BoundParams, HeightError> {
    bogomolov_bound_with(&UltrametricDoubling, p, kind)
}

pub fn bogomolov_bound_with(
    policy: &dyn AccelerationPolicy,
    p: u64,
    kind: BoundKind,
) -> Result<BoundParams, HeightError> {
    if p < 5 {
        return Err(HeightError::Invalid(format!("the bound needs p ≥ 5, got {p}")));
    }
    let h2 = h2_constants(kind, p).map_err(|e| HeightError::Invalid(e.to_string()))?;
    let lambda = policy.lambda(p, &h2.c1, &h2.c2);
    let bc = bound_constant(p, &lambda)?;
    Ok(BoundParams {
        p,
        c1: h2.c1,
        c2: h2.c2,
        lambda,
        kind,
        log_c: bc.log_c,
        log_c_expr: bc.log_c_expr,
        c_decimal: bc.c_decimal,
        c: bc.c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_examples() {
        let b = |x: u64| BigUint::from(x);
        assert_eq!(acceleration_lambda(5, &b(1), &b(1)), b(0));
        assert_eq!(acceleration_lambda(5, &b(5), &b(5)), b(7));
        // 0.04 → 1.28 in 5 doublings, then 624 unit steps to 625.28.
        assert_eq!(acceleration_lambda(5, &b(25), &b(625)), b(5 + 624));
    }

    #[test]
    fn constants() {
        let c = bound_constant(5, &BigUint::from(7u32)).unwrap();
        let direct = 2.5f64.ln() / (2.0 * 5f64.powi(7));
        assert!((c.c.unwrap() - direct).abs() < 1e-18);
        assert!(c.c_decimal.starts_with("5.864"));
        let c = bound_constant(59, &BigUint::zero()).unwrap();
        assert!((c.c.unwrap() - 29.5f64.ln() / 2.0).abs() < 1e-12);
        assert_eq!(bound_constant(2, &BigUint::zero()), Err(HeightError::NonpositiveConstant(2)));
    }

    #[test]
    fn modular_underflow() {
        let b = bogomolov_bound(11, BoundKind::Modular { deg_k: 2 }).unwrap();
        assert_eq!(b.c2, BigUint::from(11u64.pow(8)));
        assert!(b.c.is_none());
        assert!(b.log_c.is_finite() && b.log_c < 0.0);
        let e: f64 = b.c_decimal.split('e').nth(1).unwrap().parse().unwrap();
        assert!((e - b.log_c / std::f64::consts::LN_10).abs() < 1.0);
    }
}
