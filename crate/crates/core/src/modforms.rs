//! Newform eigenvalue records and the supersingular-prime hypotheses
//! (P0)–(P3).

use std::collections::BTreeMap;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fp::{is_prime, primes_in};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecordError {
    #[error("missing a_n for n in {0:?}")]
    MissingCoefficient(Vec<u64>),
    #[error("record invariant violated: {0}")]
    InvariantViolation(String),
}

/// How the coordinate vectors of `a_n` are to be read.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Basis {
    /// Powers `1, β, β², …` of a root `β` of `field_poly`.
    Power,
    /// Basis element `i` is `numerators[i] / denominators[i]`, numerators
    /// written in the power basis.
    Explicit { numerators: Vec<Vec<i64>>, denominators: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModFormRecord {
    pub label: String,
    pub level: u64,
    pub weight: u64,
    /// Defining polynomial of the Hecke field, constant term first.
    pub field_poly: Vec<i64>,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_disc: Option<i64>,
    /// Index of the order generated by the `a_n` in the maximal order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hecke_ring_index: Option<u64>,
    pub basis: Basis,
    pub an: BTreeMap<u64, Vec<i64>>,
}

/// Parsed `N.k.x.y` label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    pub level: u64,
    pub weight: u64,
    pub character: String,
    pub orbit: String,
}

pub fn parse_label(label: &str) -> Option<Label> {
    let parts: Vec<&str> = label.split('.').collect();
    let [n, k, x, y] = parts.as_slice() else {
        return None;
    };
    let alpha = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_lowercase());
    if !alpha(x) || !alpha(y) {
        return None;
    }
    let level: u64 = n.parse().ok().filter(|&n| n > 0)?;
    let weight: u64 = k.parse().ok().filter(|&k| k > 0)?;
    Some(Label { level, weight, character: x.to_string(), orbit: y.to_string() })
}

impl ModFormRecord {
    /// The basis element `i` as power-basis coordinates.
    fn basis_element(&self, i: usize) -> Vec<BigRational> {
        match &self.basis {
            Basis::Power => {
                (0..self.degree).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()
            }
            Basis::Explicit { numerators, denominators } => {
                let den = BigInt::from(denominators[i]);
                numerators[i].iter().map(|&c| BigRational::new(c.into(), den.clone())).collect()
            }
        }
    }

    /// `a_n` in power-basis coordinates.
    pub fn an_power_basis(&self, n: u64) -> Result<Vec<BigRational>, RecordError> {
        let coords = self.an.get(&n).ok_or(RecordError::MissingCoefficient(vec![n]))?;
        let mut out = vec![BigRational::zero(); self.degree];
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis_element(i)) {
                *o += b * BigInt::from(c);
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), RecordError> {
        let bad = |m: String| Err(RecordError::InvariantViolation(m));
        let Some(label) = parse_label(&self.label) else {
            return bad(format!("malformed label {:?}", self.label));
        };
        if label.level != self.level || label.weight != self.weight {
            return bad(format!("label {} disagrees with level {} / weight {}", self.label, self.level, self.weight));
        }
        if self.weight < 2 || self.weight % 2 == 1 {
            return bad(format!("weight {} must be even and at least 2", self.weight));
        }
        if self.degree == 0 || self.field_poly.len() != self.degree + 1 || self.field_poly.last() != Some(&1) {
            return bad(format!("field_poly must be monic of degree {}", self.degree));
        }
        if let Basis::Explicit { numerators, denominators } = &self.basis {
            if numerators.len() != self.degree
                || denominators.len() != self.degree
                || numerators.iter().any(|v| v.len() != self.degree)
                || denominators.iter().any(|&d| d <= 0)
            {
                return bad("explicit basis has the wrong shape".into());
            }
        }
        if self.hecke_ring_index == Some(0) {
            return bad("hecke_ring_index must be positive".into());
        }
        for (n, v) in &self.an {
            if *n == 0 || v.len() != self.degree {
                return bad(format!("a_{n} has {} coordinates, expected {}", v.len(), self.degree));
            }
        }
        let a1 = self.an_power_basis(1).map_err(|_| RecordError::InvariantViolation("a_1 is missing".into()))?;
        let one: Vec<BigRational> =
            (0..self.degree).map(|j| if j == 0 { BigRational::one() } else { BigRational::zero() }).collect();
        if a1 != one {
            return bad("a_1 must equal 1".into());
        }
        Ok(())
    }

    /// Largest `B` such that every `a_n` with `n ≤ B` is present.
    pub fn coefficient_bound(&self) -> u64 {
        (1..).take_while(|n| self.an.contains_key(n)).last().unwrap_or(0)
    }
}

/// Exact coordinate vector with negation, for characteristic polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeCoords(pub Vec<i64>);

impl Neg for HeckeCoords {
    type Output = HeckeCoords;
    fn neg(self) -> HeckeCoords {
        HeckeCoords(self.0.into_iter().map(|c| -c).collect())
    }
}

/// (P0): `p ∤ N`.
pub fn check_p0(level: u64, p: u64) -> bool {
    level % p != 0
}

/// (P1): `a_p = 0`, compared coordinate-wise.
pub fn check_p1(rec: &ModFormRecord, p: u64) -> Result<bool, RecordError> {
    let v = rec.an.get(&p).ok_or(RecordError::MissingCoefficient(vec![p]))?;
    Ok(v.iter().all(|&c| c == 0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct P3Verdict {
    pub holds: bool,
    /// `p ≥ 2k − 1`, which implies the divisibility conditions.
    pub footnote_sufficient: bool,
}

/// (P3): `p ≥ 5`, `p ∤ k−1` and `(p+1)/2 ∤ k−1`.
pub fn check_p3(p: u64, k: u64) -> P3Verdict {
    let km1 = k.saturating_sub(1);
    let holds = p >= 5 && km1 % p != 0 && km1 % ((p + 1) / 2) != 0;
    P3Verdict { holds, footnote_sufficient: p + 1 >= 2 * k }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum P2Evidence {
    ProvenRibetCriterion,
    HeuristicRationalField,
    Unknown,
}

/// Graded evidence for large image (P2). Missing data degrades to
/// `Unknown`.
pub fn check_p2_evidence(rec: &ModFormRecord, p: u64) -> P2Evidence {
    let n = rec.level;
    let ribet = rec.weight == 2
        && is_prime(n)
        && (6 * (n - 1)) % p != 0
        && rec.field_disc.is_some_and(|d| d % p as i64 != 0)
        && rec.hecke_ring_index == Some(1);
    if ribet {
        P2Evidence::ProvenRibetCriterion
    } else if rec.degree == 1 && check_p1(rec, p) == Ok(true) {
        P2Evidence::HeuristicRationalField
    } else {
        P2Evidence::Unknown
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    pub label: String,
    pub p: u64,
    #[serde(rename = "P0")]
    pub p0: bool,
    #[serde(rename = "P1")]
    pub p1: bool,
    #[serde(rename = "P3")]
    pub p3: bool,
    #[serde(rename = "P2_evidence")]
    pub p2_evidence: P2Evidence,
    /// P0 ∧ P1 ∧ P3.
    pub eligible: bool,
    /// `eligible` and the (P2) evidence is not `Unknown`.
    pub overall: bool,
}

pub fn assumption_report(rec: &ModFormRecord, p: u64) -> Result<AssumptionReport, RecordError> {
    let p0 = check_p0(rec.level, p);
    let p1 = check_p1(rec, p)?;
    let p3 = check_p3(p, rec.weight).holds;
    let p2_evidence = check_p2_evidence(rec, p);
    let eligible = p0 && p1 && p3;
    Ok(AssumptionReport {
        label: rec.label.clone(),
        p,
        p0,
        p1,
        p3,
        p2_evidence,
        eligible,
        overall: eligible && p2_evidence != P2Evidence::Unknown,
    })
}

/// Reports for every prime `p ≤ p_max` with `a_p = 0`, sorted by `p`.
pub fn scan(rec: &ModFormRecord, p_max: u64) -> Result<Vec<AssumptionReport>, RecordError> {
    let primes = primes_in(2, p_max);
    let missing: Vec<u64> = primes.iter().copied().filter(|p| !rec.an.contains_key(p)).collect();
    if !missing.is_empty() {
        return Err(RecordError::MissingCoefficient(missing));
    }
    let reports: Result<Vec<Option<AssumptionReport>>, RecordError> = primes
        .par_iter()
        .map(|&p| Ok(if check_p1(rec, p)? { Some(assumption_report(rec, p)?) } else { None }))
        .collect();
    Ok(reports?.into_iter().flatten().collect())
}
