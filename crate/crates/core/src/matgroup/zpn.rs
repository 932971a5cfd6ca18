use std::fmt;

use crate::fp::{gcd, inv_mod, is_prime};
use crate::ramification;

use super::group::det_index;
use super::MatGroupError;

/// A 2×2 matrix over Z/p^n, entries `[a, b, c, d]` row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2ZpN {
    p: u64,
    n: u32,
    modulus: u64,
    m: [u64; 4],
}

impl fmt::Display for Mat2ZpN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]] mod {}^{}", self.p, self.n)
    }
}

impl Mat2ZpN {
    /// Entries are reduced mod p^n. Requires p prime, n ≥ 1 and p^n < 2^62.
    pub fn new(p: u64, n: u32, entries: [i64; 4]) -> Result<Self, MatGroupError> {
        if !is_prime(p) {
            return Err(MatGroupError::PreconditionViolated(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(MatGroupError::InvalidLevel("n must be at least 1".into()));
        }
        let modulus = p
            .checked_pow(n)
            .filter(|&q| q < 1 << 62)
            .ok_or_else(|| MatGroupError::InvalidLevel(format!("{p}^{n} is too large")))?;
        let m = entries.map(|e| e.rem_euclid(modulus as i64) as u64);
        Ok(Mat2ZpN { p, n, modulus, m })
    }

    pub fn identity(p: u64, n: u32) -> Result<Self, MatGroupError> {
        Self::new(p, n, [1, 0, 0, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> [u64; 4] {
        self.m
    }

    fn with(&self, m: [u64; 4]) -> Self {
        Mat2ZpN { m, ..*self }
    }

    fn mulm(&self, x: u64, y: u64) -> u64 {
        ((x as u128 * y as u128) % self.modulus as u128) as u64
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.p, self.n), (other.p, other.n), "matrices over different rings");
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = other.m;
        let q = self.modulus;
        self.with([
            (self.mulm(a, e) + self.mulm(b, g)) % q,
            (self.mulm(a, f) + self.mulm(b, h)) % q,
            (self.mulm(c, e) + self.mulm(d, g)) % q,
            (self.mulm(c, f) + self.mulm(d, h)) % q,
        ])
    }

    pub fn det(&self) -> u64 {
        let [a, b, c, d] = self.m;
        (self.mulm(a, d) + self.modulus - self.mulm(b, c)) % self.modulus
    }

    pub fn trace(&self) -> u64 {
        (self.m[0] + self.m[3]) % self.modulus
    }

    pub fn is_invertible(&self) -> bool {
        self.det() % self.p != 0
    }

    pub fn inverse(&self) -> Result<Self, MatGroupError> {
        let q = self.modulus;
        let di = inv_mod(self.det(), q).ok_or(MatGroupError::SingularMatrix)?;
        let [a, b, c, d] = self.m;
        Ok(self.with([self.mulm(di, d), self.mulm(di, (q - b) % q), self.mulm(di, (q - c) % q), self.mulm(di, a)]))
    }

    /// Entries reduced mod p.
    pub fn mod_p(&self) -> [u64; 4] {
        self.m.map(|x| x % self.p)
    }
}

/// `A` with `M = I + p^{n−1}A (mod p^n)`, entries mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MatLog {
    pub p: u64,
    pub a: [u64; 4],
    pub trace: u64,
    /// Whether `det M ≡ 1 + trace(A)·p^{n−1} (mod p^n)`.
    pub det_identity: bool,
}

pub fn mat_log(m: &Mat2ZpN) -> Result<MatLog, MatGroupError> {
    if m.n < 2 {
        return Err(MatGroupError::InvalidLevel("the log map needs n ≥ 2".into()));
    }
    let p = m.p;
    let step = m.modulus / p;
    let id = [1, 0, 0, 1];
    let mut a = [0u64; 4];
    for i in 0..4 {
        let diff = (m.m[i] + m.modulus - id[i]) % m.modulus;
        if diff % step != 0 {
            return Err(MatGroupError::NotUnipotentAtLevel(m.n - 1));
        }
        a[i] = diff / step;
    }
    let trace = (a[0] + a[3]) % p;
    let det_identity = m.det() == (1 + trace * step) % m.modulus;
    Ok(MatLog { p, a, trace, det_identity })
}

fn mul_p(x: [u64; 4], y: [u64; 4], p: u64) -> [u64; 4] {
    let [a, b, c, d] = x;
    let [e, f, g, h] = y;
    [(a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p]
}

/// Whether `log(gσg⁻¹) = ḡ·log(σ)·ḡ⁻¹` with `ḡ = g mod p`.
pub fn log_equivariance_check(sigma: &Mat2ZpN, g: &Mat2ZpN) -> Result<bool, MatGroupError> {
    let gi = g.inverse()?;
    let lhs = mat_log(&g.mul(sigma).mul(&gi))?;
    let log = mat_log(sigma)?;
    let rhs = mul_p(mul_p(g.mod_p(), log.a, g.p), gi.mod_p(), g.p);
    Ok(lhs.a == rhs)
}

/// Whether `δ(p, k) > 2s` with `s = (p−1)/gcd(k−1, p−1)`.
pub fn delta_vs_2s_check(p: u64, k: u64) -> Result<bool, MatGroupError> {
    let pre = |msg: String| Err(MatGroupError::PreconditionViolated(msg));
    if p < 5 || !is_prime(p) {
        return pre(format!("p = {p} must be a prime ≥ 5"));
    }
    if k < 2 || k % 2 == 1 {
        return pre(format!("k = {k} must be even and ≥ 2"));
    }
    if (k - 1) % ((p + 1) / 2) == 0 || (k - 1) % (p + 1) == 0 {
        return pre(format!("(p+1)/2 divides k−1 for (p, k) = ({p}, {k})"));
    }
    let delta = ramification::delta(p, k).map_err(|e| MatGroupError::PreconditionViolated(e.to_string()))?;
    debug_assert_eq!(det_index(p, k), (p - 1) / gcd(k - 1, p - 1));
    Ok(delta > 2 * det_index(p, k))
}
