//! Weil heights via Mahler measure, root-of-unity detection, and the
//! explicit Bogomolov constants.

mod bound;
mod irreducible;
pub mod poly;
mod roots;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

pub use bound::{
    acceleration_lambda, bogomolov_bound, bogomolov_bound_with, bound_constant, AccelerationPolicy, BoundConstant,
    BoundParams, UltrametricDoubling,
};
pub use irreducible::{irreducibility, Irreducibility, MAX_CHECKED_DEGREE};
pub use roots::{isolate, IsolatedRoots};

/// Largest accepted numerical error on a height.
pub const HEIGHT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeightError {
    #[error("the zero polynomial has no roots")]
    ZeroPolynomial,
    #[error("constant polynomial {0} has no roots")]
    ConstantPolynomial(String),
    #[error("polynomial is reducible: factor {0}")]
    ReduciblePolynomial(String),
    #[error("could not isolate the roots (error bound {0:e})")]
    RootIsolationFailure(f64),
    #[error("log(p/2) <= 0 for p = {0}; the constant is not positive")]
    NonpositiveConstant(u64),
    #[error("invalid input: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IrreducibleFlag {
    Proven,
    Unchecked,
}

/// An algebraic number, represented by its minimal polynomial over Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    min_poly: Vec<BigInt>,
    irreducible: IrreducibleFlag,
}

impl AlgebraicNumber {
    /// Normalizes to a primitive polynomial with positive leading
    /// coefficient. A polynomial shown to be reducible is rejected.
    pub fn new(coeffs: &[BigInt]) -> Result<Self, HeightError> {
        let f = poly::primitive(coeffs);
        match poly::degree(&f) {
            None => return Err(HeightError::ZeroPolynomial),
            Some(0) => return Err(HeightError::ConstantPolynomial(f[0].to_string())),
            Some(_) => {}
        }
        let irreducible = match irreducibility(&f) {
            Irreducibility::Irreducible => IrreducibleFlag::Proven,
            Irreducibility::Unchecked => IrreducibleFlag::Unchecked,
            Irreducibility::Reducible(g) => return Err(HeightError::ReduciblePolynomial(poly::render(&g))),
        };
        Ok(AlgebraicNumber { min_poly: f, irreducible })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self, HeightError> {
        Self::new(&coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
    }

    pub fn parse(s: &str) -> Result<Self, HeightError> {
        Self::new(&poly::parse_coeffs(s).map_err(HeightError::Invalid)?)
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn irreducible(&self) -> IrreducibleFlag {
        self.irreducible
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HeightValue {
    pub value: f64,
    pub abs_error: f64,
    /// The number is a root of unity (or zero), so the height is exactly 0.
    pub torsion: bool,
}

/// `x^m ≡ 1 (mod f)` for some `m ≤ 2d² + 2`; a root of unity of degree
/// `d = φ(m)` has `m ≤ 2d²`.
pub fn is_root_of_unity(a: &AlgebraicNumber) -> bool {
    let f = &a.min_poly;
    let d = a.degree();
    if !f[d].is_one() || !f[0].abs().is_one() {
        return false;
    }
    // Roots of unity have all conjugates on the unit circle, so |coeffs|
    // are bounded by binomials.
    let bound = (0..=d).map(|k| binomial(d, k)).collect::<Vec<_>>();
    if f.iter().zip(&bound).any(|(c, b)| c.abs() > *b) {
        return false;
    }
    let mut r: Vec<BigInt> = vec![BigInt::one()];
    for _ in 1..=2 * d * d + 2 {
        // r ← x·r mod f, f monic
        r.insert(0, BigInt::zero());
        if r.len() > d {
            let top = r.pop().expect("nonempty");
            for (ri, fi) in r.iter_mut().zip(f.iter()) {
                *ri -= &top * fi;
            }
        }
        if r[0].is_one() && r[1..].iter().all(Zero::is_zero) {
            return true;
        }
    }
    false
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn ln_abs(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.abs().to_f64().expect("finite").ln()
    } else {
        let shift = bits - 900;
        ((x.abs() >> shift).to_f64().expect("finite")).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// `h(α) = (1/d)(log|a_d| + Σ log⁺|αᵢ|)` with a certified error bound.
pub fn weil_height(a: &AlgebraicNumber) -> Result<HeightValue, HeightError> {
    let f = &a.min_poly;
    let d = a.degree();
    if is_root_of_unity(a) || (d == 1 && f[0].is_zero()) {
        return Ok(HeightValue { value: 0.0, abs_error: 0.0, torsion: true });
    }
    if d == 1 {
        // h(p/q) = log max(|p|, |q|)
        let m = f[0].abs().max(f[1].abs());
        let value = ln_abs(&m);
        return Ok(HeightValue { value, abs_error: 4.0 * f64::EPSILON * value.max(1.0), torsion: false });
    }
    let coeffs: Vec<f64> = f.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(HeightError::Invalid("coefficients exceed floating-point range".into()));
    }
    let roots = isolate(&coeffs).ok_or(HeightError::RootIsolationFailure(f64::INFINITY))?;
    let lead = ln_abs(&f[d]);
    let mut sum = lead;
    let mut err = 4.0 * f64::EPSILON * lead.abs();
    for (z, &r) in roots.centers.iter().zip(&roots.radii) {
        let m = z.norm();
        let v = m.ln().max(0.0);
        let hi = (m + r).ln().max(0.0);
        let lo = if m > r { (m - r).ln().max(0.0) } else { 0.0 };
        sum += v;
        err += (hi - v).max(v - lo) + 4.0 * f64::EPSILON * v;
    }
    let value = sum / d as f64;
    let abs_error = err / d as f64 + 2.0 * d as f64 * f64::EPSILON * value;
    if !(abs_error <= HEIGHT_TOLERANCE) {
        return Err(HeightError::RootIsolationFailure(abs_error));
    }
    Ok(HeightValue { value: value.max(0.0), abs_error, torsion: false })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmpiricalEntry {
    pub min_poly: String,
    pub torsion: bool,
    pub height: f64,
    pub abs_error: f64,
    /// Certainly below the bound: `h + error < c`.
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmpiricalReport {
    pub c: f64,
    pub entries: Vec<EmpiricalEntry>,
    pub violations: usize,
}

/// For each α, either α is torsion or `h(α) ≥ c`.
pub fn empirical_bound_check(sample: &[AlgebraicNumber], c: f64) -> Result<EmpiricalReport, HeightError> {
    let mut entries = Vec::with_capacity(sample.len());
    for a in sample {
        let h = weil_height(a)?;
        entries.push(EmpiricalEntry {
            min_poly: poly::render(a.min_poly()),
            torsion: h.torsion,
            height: h.value,
            abs_error: h.abs_error,
            violation: !h.torsion && h.value + h.abs_error < c,
        });
    }
    let violations = entries.iter().filter(|e| e.violation).count();
    Ok(EmpiricalReport { c, entries, violations })
}
