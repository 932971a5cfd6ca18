//! Finite products of local commutative F_p-algebras.
//!
//! Every local factor is presented as `F_p[t, x] / (f(t), x^e)` where `f` is
//! monic irreducible of degree `m` (so the residue field is `F_{p^m}`) and `x`
//! is nilpotent of order `e`. The prime field is `m = e = 1`. Coordinates of a
//! local element are indexed `i * m + j` for the monomial `x^i t^j`; a product
//! algebra concatenates the factor coordinates in order.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::fp::{self, poly};
use crate::subspace::{Ambient, Subspace};

/// Hard cap on the number of algebra elements any enumeration will visit.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NonPrimeP(u64),
    #[error("defining polynomial {poly:?} is not irreducible of degree {degree} mod {p}")]
    ReduciblePolynomial { poly: Vec<i64>, degree: usize, p: u64 },
    #[error("factors of a product algebra must share one characteristic (found {0} and {1})")]
    MixedCharacteristic(u64, u64),
    #[error("invalid local algebra: {0}")]
    InvalidSpec(String),
    #[error("operands belong to different algebras")]
    MixedParents,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("enumeration of {size} elements exceeds the limit {limit}")]
    TooLarge { size: String, limit: u64 },
    #[error("cannot parse algebra spec {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalKind {
    PrimeField,
    FieldExtension { degree: usize },
    TruncatedPoly { nilpotency: usize },
    ExtTruncated { degree: usize, nilpotency: usize },
}

/// One local factor `A_i`, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct LocalAlgebraSpec {
    pub p: u64,
    pub kind: LocalKind,
    /// Defining polynomial of the residue field extension, constant term
    /// first, as integers to be reduced mod p. Empty for prime residue field.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modulus: Vec<i64>,
}

impl LocalAlgebraSpec {
    pub fn prime_field(p: u64) -> Self {
        LocalAlgebraSpec { p, kind: LocalKind::PrimeField, modulus: Vec::new() }
    }

    pub fn extension(p: u64, modulus: Vec<i64>) -> Self {
        let degree = modulus.len().saturating_sub(1);
        LocalAlgebraSpec { p, kind: LocalKind::FieldExtension { degree }, modulus }
    }

    pub fn truncated(p: u64, nilpotency: usize) -> Self {
        LocalAlgebraSpec { p, kind: LocalKind::TruncatedPoly { nilpotency }, modulus: Vec::new() }
    }

    pub fn ext_truncated(p: u64, modulus: Vec<i64>, nilpotency: usize) -> Self {
        let degree = modulus.len().saturating_sub(1);
        LocalAlgebraSpec { p, kind: LocalKind::ExtTruncated { degree, nilpotency }, modulus }
    }

    /// `F_{p^m}` using the lexicographically least monic irreducible
    /// polynomial of degree `m`.
    pub fn default_extension(p: u64, degree: usize) -> Self {
        Self::extension(p, least_modulus(p, degree))
    }

    pub fn default_ext_truncated(p: u64, degree: usize, nilpotency: usize) -> Self {
        Self::ext_truncated(p, least_modulus(p, degree), nilpotency)
    }

    fn shape(&self) -> (usize, usize) {
        match self.kind {
            LocalKind::PrimeField => (1, 1),
            LocalKind::FieldExtension { degree } => (degree, 1),
            LocalKind::TruncatedPoly { nilpotency } => (1, nilpotency),
            LocalKind::ExtTruncated { degree, nilpotency } => (degree, nilpotency),
        }
    }
}

fn least_modulus(p: u64, degree: usize) -> Vec<i64> {
    if degree <= 1 || !fp::is_prime(p) {
        return vec![0, 1];
    }
    poly::least_irreducible(degree, p).into_iter().map(|c| c as i64).collect()
}

/// A validated local factor with its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    spec: LocalAlgebraSpec,
    residue_degree: usize,
    nilpotency: usize,
    modulus: Vec<u64>,
    dim: usize,
    /// `table[a * dim + b]` is the product of basis vectors `a` and `b`.
    table: Vec<Vec<u64>>,
}

impl LocalFactor {
    fn new(spec: LocalAlgebraSpec) -> Result<Self, AlgebraError> {
        let p = spec.p;
        if !fp::is_prime(p) {
            return Err(AlgebraError::NonPrimeP(p));
        }
        let (m, e) = spec.shape();
        if m == 0 || e == 0 {
            return Err(AlgebraError::InvalidSpec(format!("degree {m} and nilpotency {e} must be at least 1")));
        }
        let modulus: Vec<u64> = if m == 1 && spec.modulus.is_empty() {
            vec![0, 1]
        } else {
            spec.modulus.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect()
        };
        let monic = modulus.len() == m + 1 && modulus[m] == 1;
        if !monic || !poly::is_irreducible(&modulus, p) {
            return Err(AlgebraError::ReduciblePolynomial { poly: spec.modulus.clone(), degree: m, p });
        }
        let dim = m * e;
        // t^j for j < 2m - 1, reduced mod f.
        let t_pows: Vec<Vec<u64>> = (0..2 * m).map(|j| poly::x_pow_mod(j as u64, &modulus, p)).collect();
        let mut table = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                let (ia, ja) = (a / m, a % m);
                let (ib, jb) = (b / m, b % m);
                let mut v = vec![0u64; dim];
                let i = ia + ib;
                if i < e {
                    for (j, &c) in t_pows[ja + jb].iter().enumerate() {
                        v[i * m + j] = c;
                    }
                }
                table.push(v);
            }
        }
        Ok(LocalFactor { spec, residue_degree: m, nilpotency: e, modulus, dim, table })
    }

    pub fn spec(&self) -> &LocalAlgebraSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn residue_degree(&self) -> usize {
        self.residue_degree
    }

    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn p(&self) -> u64 {
        self.spec.p
    }

    /// (p^m - 1) p^{m(e-1)}
    pub fn unit_count(&self) -> BigUint {
        let q = BigUint::from(self.p()).pow(self.residue_degree as u32);
        (&q - 1u32) * q.pow(self.nilpotency as u32 - 1)
    }

    fn mul(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let p = self.p();
        out.iter_mut().for_each(|c| *c = 0);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = x * y % p;
                for (o, &t) in out.iter_mut().zip(&self.table[i * self.dim + j]) {
                    if t != 0 {
                        *o = (*o + xy * t) % p;
                    }
                }
            }
        }
    }

    fn is_unit(&self, a: &[u64]) -> bool {
        a[..self.residue_degree].iter().any(|&c| c != 0)
    }

    fn pow(&self, a: &[u64], exp: &BigUint) -> Vec<u64> {
        let mut acc = vec![0u64; self.dim];
        acc[0] = 1;
        let mut tmp = vec![0u64; self.dim];
        for bit in (0..exp.bits()).rev() {
            self.mul(&acc, &acc, &mut tmp);
            std::mem::swap(&mut acc, &mut tmp);
            if exp.bit(bit) {
                self.mul(&acc, a, &mut tmp);
                std::mem::swap(&mut acc, &mut tmp);
            }
        }
        acc
    }

    fn inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        if !self.is_unit(a) {
            return None;
        }
        Some(self.pow(a, &(self.unit_count() - 1u32)))
    }

    fn units(&self) -> Vec<Vec<u64>> {
        let p = self.p();
        let total = p.pow(self.dim as u32);
        (0..total)
            .map(|code| {
                // Big-endian digits so the enumeration is lexicographic.
                let mut v = vec![0u64; self.dim];
                let mut c = code;
                for slot in v.iter_mut().rev() {
                    *slot = c % p;
                    c /= p;
                }
                v
            })
            .filter(|v| self.is_unit(v))
            .collect()
    }
}

/// `A = A_1 × … × A_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductAlgebra {
    p: u64,
    factors: Vec<LocalFactor>,
    offsets: Vec<usize>,
    dim: usize,
}

pub fn make_algebra(specs: Vec<LocalAlgebraSpec>, p: u64) -> Result<Arc<ProductAlgebra>, AlgebraError> {
    ProductAlgebra::new(specs, p).map(Arc::new)
}

impl ProductAlgebra {
    pub fn new(specs: Vec<LocalAlgebraSpec>, p: u64) -> Result<Self, AlgebraError> {
        if !fp::is_prime(p) {
            return Err(AlgebraError::NonPrimeP(p));
        }
        if specs.is_empty() {
            return Err(AlgebraError::InvalidSpec("a product needs at least one factor".into()));
        }
        let mut factors = Vec::with_capacity(specs.len());
        let mut offsets = Vec::with_capacity(specs.len());
        let mut dim = 0;
        for spec in specs {
            if spec.p != p {
                return Err(AlgebraError::MixedCharacteristic(p, spec.p));
            }
            let f = LocalFactor::new(spec)?;
            offsets.push(dim);
            dim += f.dim;
            factors.push(f);
        }
        Ok(ProductAlgebra { p, factors, offsets, dim })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// F_p-dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factors(&self) -> &[LocalFactor] {
        &self.factors
    }

    pub fn factor_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.factors[i].dim
    }

    /// |A| = p^dim
    pub fn size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.dim as u32)
    }

    pub fn unit_count(&self) -> BigUint {
        self.factors.iter().map(LocalFactor::unit_count).fold(BigUint::one(), |a, b| a * b)
    }

    pub fn check_enumerable(&self) -> Result<(), AlgebraError> {
        let size = self.size();
        if size > BigUint::from(ENUMERATION_LIMIT) {
            return Err(AlgebraError::TooLarge { size: size.to_string(), limit: ENUMERATION_LIMIT });
        }
        Ok(())
    }

    // Raw coordinate arithmetic, shared with the matrix code.

    pub fn zero_coords(&self) -> Vec<u64> {
        vec![0; self.dim]
    }

    pub fn one_coords(&self) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        for &o in &self.offsets {
            v[o] = 1;
        }
        v
    }

    pub fn scalar_coords(&self, c: u64) -> Vec<u64> {
        let c = c % self.p;
        let mut v = vec![0; self.dim];
        for &o in &self.offsets {
            v[o] = c;
        }
        v
    }

    pub fn add_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn sub_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }

    pub fn neg_raw(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    pub fn scale_raw(&self, c: u64, a: &[u64]) -> Vec<u64> {
        let c = c % self.p;
        a.iter().map(|x| x * c % self.p).collect()
    }

    pub fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.dim];
        self.mul_into(a, b, &mut out);
        out
    }

    pub fn mul_into(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        for (i, f) in self.factors.iter().enumerate() {
            let r = self.factor_range(i);
            f.mul(&a[r.clone()], &b[r.clone()], &mut out[r]);
        }
    }

    pub fn is_unit_raw(&self, a: &[u64]) -> bool {
        self.factors.iter().enumerate().all(|(i, f)| f.is_unit(&a[self.factor_range(i)]))
    }

    pub fn inv_raw(&self, a: &[u64]) -> Option<Vec<u64>> {
        let mut out = vec![0; self.dim];
        for (i, f) in self.factors.iter().enumerate() {
            let r = self.factor_range(i);
            out[r.clone()].copy_from_slice(&f.inv(&a[r])?);
        }
        Some(out)
    }

    /// The F_p-scalar `c` if `a` lies in the diagonal copy of F_p.
    pub fn as_scalar_raw(&self, a: &[u64]) -> Option<u64> {
        let c = a[0];
        (self.scalar_coords(c) == a).then_some(c)
    }

    pub fn is_zero_raw(a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }
}

/// An element of a [`ProductAlgebra`], always stored fully reduced so that
/// structural equality is ring equality.
#[derive(Clone)]
pub struct AlgebraElement {
    alg: Arc<ProductAlgebra>,
    coords: Vec<u64>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && same_parent(&self.alg, &other.alg)
    }
}

impl Eq for AlgebraElement {}

impl std::hash::Hash for AlgebraElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

pub fn same_parent(a: &Arc<ProductAlgebra>, b: &Arc<ProductAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AlgebraElement {
    pub fn new(alg: &Arc<ProductAlgebra>, coords: Vec<u64>) -> Self {
        assert_eq!(coords.len(), alg.dim, "coordinate count must match the algebra dimension");
        let p = alg.p;
        let coords = coords.into_iter().map(|c| c % p).collect();
        AlgebraElement { alg: Arc::clone(alg), coords }
    }

    pub fn from_i64(alg: &Arc<ProductAlgebra>, coords: &[i64]) -> Self {
        let p = alg.p as i64;
        Self::new(alg, coords.iter().map(|c| c.rem_euclid(p) as u64).collect())
    }

    pub fn zero(alg: &Arc<ProductAlgebra>) -> Self {
        Self::new(alg, alg.zero_coords())
    }

    pub fn one(alg: &Arc<ProductAlgebra>) -> Self {
        Self::new(alg, alg.one_coords())
    }

    pub fn scalar(alg: &Arc<ProductAlgebra>, c: u64) -> Self {
        Self::new(alg, alg.scalar_coords(c))
    }

    /// The idempotent projecting onto factor `i`.
    pub fn idempotent(alg: &Arc<ProductAlgebra>, i: usize) -> Self {
        let mut v = alg.zero_coords();
        v[alg.offsets[i]] = 1;
        Self::new(alg, v)
    }

    pub fn parent(&self) -> &Arc<ProductAlgebra> {
        &self.alg
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Coordinates of the `i`-th local component.
    pub fn component(&self, i: usize) -> &[u64] {
        &self.coords[self.alg.factor_range(i)]
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_parent(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(AlgebraError::MixedParents)
        }
    }

    fn wrap(&self, coords: Vec<u64>) -> Self {
        AlgebraElement { alg: Arc::clone(&self.alg), coords }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self.wrap(self.alg.add_raw(&self.coords, &other.coords)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self.wrap(self.alg.sub_raw(&self.coords, &other.coords)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self.wrap(self.alg.mul_raw(&self.coords, &other.coords)))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.alg.neg_raw(&self.coords))
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        self.alg.inv_raw(&self.coords).map(|c| self.wrap(c)).ok_or(AlgebraError::NotAUnit)
    }

    pub fn square(&self) -> Self {
        self.wrap(self.alg.mul_raw(&self.coords, &self.coords))
    }

    pub fn is_unit(&self) -> bool {
        self.alg.is_unit_raw(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        ProductAlgebra::is_zero_raw(&self.coords)
    }
}

/// All units of `A`, in lexicographic order of their per-factor coordinates
/// (first factor most significant).
pub fn units(alg: &Arc<ProductAlgebra>) -> Result<Vec<AlgebraElement>, AlgebraError> {
    alg.check_enumerable()?;
    let local: Vec<Vec<Vec<u64>>> = alg.factors.iter().map(LocalFactor::units).collect();
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for choices in &local {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for c in choices {
                let mut v = prefix.clone();
                v.extend_from_slice(c);
                next.push(v);
            }
        }
        out = next;
    }
    debug_assert_eq!(BigUint::from(out.len()), alg.unit_count());
    Ok(out.into_iter().map(|c| AlgebraElement { alg: Arc::clone(alg), coords: c }).collect())
}

/// F_p-span of `{u² : u ∈ A^×}`, and whether it is all of `A`.
pub fn span_of_unit_squares(alg: &Arc<ProductAlgebra>) -> Result<(Subspace, bool), AlgebraError> {
    let mut span = Subspace::zero(alg.p, Ambient::Algebra, alg.dim);
    for u in units(alg)? {
        span.insert(&u.square().coords);
        if span.is_full() {
            break;
        }
    }
    let full = span.is_full();
    Ok((span, full))
}

impl fmt::Display for ProductAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|fac| {
                let p = self.p;
                let mut s = match fac.residue_degree {
                    1 => format!("F{p}"),
                    m => format!("F{p}^{m}"),
                };
                if fac.nilpotency > 1 {
                    s.push_str(&format!("[x]/x^{}", fac.nilpotency));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// A parsed algebra description: `F<p>`, `F<p>^<m>`, `F<p>[x]/x^<e>` or
/// `F<p>^<m>[x]/x^<e>`, joined by `x` for products. The literal `Fp` stands
/// for the prime supplied separately. Extensions use the lexicographically
/// least monic irreducible polynomial of their degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub p: u64,
    pub factors: Vec<LocalAlgebraSpec>,
}

impl AlgebraSpec {
    pub fn parse(input: &str, default_p: Option<u64>) -> Result<Self, AlgebraError> {
        let err = |reason: &str| AlgebraError::Parse { input: input.to_string(), reason: reason.to_string() };
        let s: Vec<char> =
            input.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '×' { 'x' } else { c }).collect();
        let mut pos = 0;
        let mut factors = Vec::new();
        let mut prime: Option<u64> = None;

        let number = |pos: &mut usize| -> Option<u64> {
            let start = *pos;
            while *pos < s.len() && s[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                return None;
            }
            s[start..*pos].iter().collect::<String>().parse().ok()
        };

        loop {
            if s.get(pos) != Some(&'F') {
                return Err(err("expected 'F' at the start of a factor"));
            }
            pos += 1;
            let p = if s.get(pos) == Some(&'p') {
                pos += 1;
                default_p.ok_or_else(|| err("'Fp' used without a prime"))?
            } else {
                number(&mut pos).ok_or_else(|| err("expected a prime after 'F'"))?
            };
            if let Some(q) = prime {
                if q != p {
                    return Err(AlgebraError::MixedCharacteristic(q, p));
                }
            }
            prime = Some(p);
            let mut degree = 1;
            if s.get(pos) == Some(&'^') {
                pos += 1;
                degree = number(&mut pos).ok_or_else(|| err("expected a degree after '^'"))? as usize;
            }
            let mut nilpotency = 1;
            let tail: String = s[pos..].iter().take(6).collect();
            if tail == "[x]/x^" {
                pos += 6;
                nilpotency = number(&mut pos).ok_or_else(|| err("expected an exponent after 'x^'"))? as usize;
            }
            factors.push(match (degree, nilpotency) {
                (1, 1) => LocalAlgebraSpec::prime_field(p),
                (m, 1) => LocalAlgebraSpec::default_extension(p, m),
                (1, e) => LocalAlgebraSpec::truncated(p, e),
                (m, e) => LocalAlgebraSpec::default_ext_truncated(p, m, e),
            });
            match s.get(pos) {
                None => break,
                Some('x') => pos += 1,
                Some(_) => return Err(err("expected 'x' between factors")),
            }
        }
        Ok(AlgebraSpec { p: prime.expect("at least one factor"), factors })
    }

    pub fn build(self) -> Result<Arc<ProductAlgebra>, AlgebraError> {
        make_algebra(self.factors, self.p)
    }
}

impl FromStr for AlgebraSpec {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgebraSpec::parse(s, None)
    }
}

/// Number of elements as `u64`, when it fits.
pub fn size_u64(alg: &ProductAlgebra) -> Option<u64> {
    alg.size().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> Arc<ProductAlgebra> {
        s.parse::<AlgebraSpec>().unwrap().build().unwrap()
    }

    #[test]
    fn make_algebra_examples() {
        let a = make_algebra(vec![LocalAlgebraSpec::prime_field(5)], 5).unwrap();
        assert_eq!(a.dim(), 1);
        let b = alg("F5xF5");
        assert_eq!(b.dim(), 2);
        assert_eq!(AlgebraElement::idempotent(&b, 0).coords(), &[1, 0]);
        assert_eq!(AlgebraElement::idempotent(&b, 1).coords(), &[0, 1]);
        let c = alg("F5[x]/x^2");
        assert_eq!(c.dim(), 2);
        assert_eq!(c.unit_count(), BigUint::from(20u32));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_algebra(vec![LocalAlgebraSpec::prime_field(6)], 6), Err(AlgebraError::NonPrimeP(6)));
        // x^2 + 1 = (x + 2)(x + 3) mod 5
        let err = make_algebra(vec![LocalAlgebraSpec::extension(5, vec![1, 0, 1])], 5).unwrap_err();
        assert!(matches!(err, AlgebraError::ReduciblePolynomial { .. }));
        let err =
            make_algebra(vec![LocalAlgebraSpec::prime_field(5), LocalAlgebraSpec::prime_field(7)], 5).unwrap_err();
        assert_eq!(err, AlgebraError::MixedCharacteristic(5, 7));
    }

    #[test]
    fn inverse_examples() {
        let f5 = alg("F5");
        assert_eq!(AlgebraElement::scalar(&f5, 2).inv().unwrap(), AlgebraElement::scalar(&f5, 3));
        let dual = alg("F5[x]/x^2");
        let one_plus_x = AlgebraElement::new(&dual, vec![1, 1]);
        assert_eq!(one_plus_x.inv().unwrap().coords(), &[1, 4]);
        let prod = alg("F5xF5");
        assert_eq!(AlgebraElement::new(&prod, vec![2, 0]).inv(), Err(AlgebraError::NotAUnit));
    }

    #[test]
    fn mixed_parents_rejected() {
        let a = alg("F5");
        let b = alg("F7");
        assert_eq!(AlgebraElement::one(&a).add(&AlgebraElement::one(&b)), Err(AlgebraError::MixedParents));
        // Structurally equal algebras built separately are the same parent.
        let a2 = alg("F5");
        assert!(AlgebraElement::one(&a).mul(&AlgebraElement::one(&a2)).is_ok());
    }

    #[test]
    fn unit_enumeration_counts() {
        assert_eq!(units(&alg("F5")).unwrap().len(), 4);
        let u: Vec<u64> = units(&alg("F5")).unwrap().iter().map(|e| e.coords()[0]).collect();
        assert_eq!(u, vec![1, 2, 3, 4]);
        assert_eq!(units(&alg("F5xF5")).unwrap().len(), 16);
        assert_eq!(units(&alg("F5[x]/x^2")).unwrap().len(), 20);
        assert_eq!(units(&alg("F5^2")).unwrap().len(), 24);
        assert_eq!(units(&alg("F3^2[x]/x^2")).unwrap().len(), 8 * 9);
    }

    #[test]
    fn enumeration_guard() {
        let big = alg("F1031xF1031");
        assert!(matches!(units(&big), Err(AlgebraError::TooLarge { .. })));
    }

    #[test]
    fn unit_squares_examples() {
        let (s, full) = span_of_unit_squares(&alg("F5")).unwrap();
        assert!(full);
        assert_eq!(s.dim(), 1);
        assert!(span_of_unit_squares(&alg("F5xF5")).unwrap().1);
        let (s, full) = span_of_unit_squares(&alg("F3xF3")).unwrap();
        assert!(!full);
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&[1, 1]));
    }

    #[test]
    fn idempotents_decompose_one() {
        let a = alg("F5xF5^2xF5[x]/x^3");
        let r = a.factors().len();
        let es: Vec<_> = (0..r).map(|i| AlgebraElement::idempotent(&a, i)).collect();
        let mut sum = AlgebraElement::zero(&a);
        for (i, ei) in es.iter().enumerate() {
            assert_eq!(ei.square(), *ei);
            for (j, ej) in es.iter().enumerate() {
                if i != j {
                    assert!(ei.mul(ej).unwrap().is_zero());
                }
            }
            sum = sum.add(ei).unwrap();
        }
        assert_eq!(sum, AlgebraElement::one(&a));
    }

    #[test]
    fn extension_field_arithmetic() {
        // F_25 = F_5[t]/(t^2 + 2): t^2 = -2 = 3.
        let f25 = alg("F5^2");
        assert_eq!(f25.factors()[0].modulus(), &[2, 0, 1]);
        let t = AlgebraElement::new(&f25, vec![0, 1]);
        assert_eq!(t.square().coords(), &[3, 0]);
        for u in units(&f25).unwrap() {
            assert_eq!(u.mul(&u.inv().unwrap()).unwrap(), AlgebraElement::one(&f25));
        }
    }

    #[test]
    fn parse_round_trip() {
        for s in ["F5", "F5xF5", "F5[x]/x^2", "F7^2xF7[x]/x^3", "F3^2[x]/x^2"] {
            assert_eq!(alg(s).to_string(), s);
        }
        let spec = AlgebraSpec::parse("Fp x Fp", Some(11)).unwrap();
        assert_eq!(spec.p, 11);
        assert_eq!(spec.factors.len(), 2);
        assert!("G5".parse::<AlgebraSpec>().is_err());
        assert!("F5xx".parse::<AlgebraSpec>().is_err());
        assert!(matches!("F5xF7".parse::<AlgebraSpec>(), Err(AlgebraError::MixedCharacteristic(5, 7))));
    }
}
