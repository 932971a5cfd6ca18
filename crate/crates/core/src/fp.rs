//! Small-prime arithmetic: residues mod p, integer helpers, and dense
//! polynomials over F_p (coefficient vectors, constant term first).

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in `lo..=hi`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m` (any modulus), if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Smallest generator of the cyclic group F_p^×.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let order = p - 1;
    let factors = prime_factors(order);
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, order / q, p) != 1)).expect("F_p^x is cyclic")
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over F_p.
pub mod poly {
    use super::inv_mod;

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn degree(a: &[u64]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    /// Remainder of `a` modulo a nonzero `m`.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let dm = degree(m).expect("nonzero modulus");
        let lead_inv = inv_mod(m[dm], p).expect("p prime");
        let mut r = trim(a.to_vec());
        while let Some(dr) = degree(&r) {
            if dr < dm {
                break;
            }
            let c = r[dr] * lead_inv % p;
            let shift = dr - dm;
            for (i, &mi) in m.iter().enumerate().take(dm + 1) {
                r[i + shift] = (r[i + shift] + p - c * mi % p) % p;
            }
            r = trim(r);
        }
        r
    }

    /// Quotient and remainder of `a` by a nonzero `m`.
    pub fn divrem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let dm = degree(m).expect("nonzero modulus");
        let lead_inv = inv_mod(m[dm], p).expect("p prime");
        let mut r = trim(a.to_vec());
        let mut q = vec![0u64; r.len().saturating_sub(dm).max(1)];
        while let Some(dr) = degree(&r) {
            if dr < dm {
                break;
            }
            let c = r[dr] * lead_inv % p;
            let shift = dr - dm;
            q[shift] = c;
            for (i, &mi) in m.iter().enumerate().take(dm + 1) {
                r[i + shift] = (r[i + shift] + p - c * mi % p) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
    }

    /// Degrees of the irreducible factors of a squarefree `f`, ascending,
    /// by distinct-degree factorization.
    pub fn factor_degrees(f: &[u64], p: u64) -> Vec<usize> {
        let mut f = trim(f.iter().map(|c| c % p).collect());
        let mut out = Vec::new();
        let x = vec![0, 1];
        let mut xp = x.clone();
        let mut i = 1;
        while degree(&f).is_some_and(|d| d >= 2 * i) {
            xp = frobenius_iterate(&rem(&xp, &f, p), &f, p);
            let g = gcd(&sub(&xp, &x, p), &f, p);
            let dg = degree(&g).unwrap_or(0);
            if dg > 0 {
                out.extend(std::iter::repeat_n(i, dg / i));
                f = divrem(&f, &g, p).0;
            }
            i += 1;
        }
        if let Some(d) = degree(&f) {
            if d > 0 {
                out.push(d);
            }
        }
        out
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        if let Some(d) = degree(&x) {
            let inv = inv_mod(x[d], p).expect("p prime");
            for c in &mut x {
                *c = *c * inv % p;
            }
        }
        x
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), m, p)
    }

    /// `x^(p^i) mod m` by repeated p-th powering.
    fn frobenius_iterate(x_pow: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = x_pow.to_vec();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    /// Rabin-style irreducibility test: a polynomial of degree m over F_p is
    /// irreducible iff gcd(x^(p^i) - x, f) = 1 for every i <= m/2.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let f = trim(f.iter().map(|c| c % p).collect());
        let Some(m) = degree(&f) else {
            return false;
        };
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut xp = rem(&x, &f, p);
        for _ in 1..=m / 2 {
            xp = frobenius_iterate(&xp, &f, p);
            let g = gcd(&sub(&xp, &x, p), &f, p);
            if degree(&g) != Some(0) {
                return false;
            }
        }
        true
    }

    /// Lexicographically least monic irreducible polynomial of degree `m`
    /// over F_p, enumerating the lower coefficients as a base-p counter.
    pub fn least_irreducible(m: usize, p: u64) -> Vec<u64> {
        let total = (p as u128).pow(m as u32);
        for code in 0..total {
            let mut f = Vec::with_capacity(m + 1);
            let mut c = code;
            for _ in 0..m {
                f.push((c % p as u128) as u64);
                c /= p as u128;
            }
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// `x^e mod m`.
    pub fn x_pow_mod(e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = rem(&[0, 1], m, p);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }
}
