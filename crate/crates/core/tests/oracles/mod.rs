//! Reference computations used to cross-check the library.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// `log M(f)` by Jensen's formula, trapezoid rule on `n` points of the unit
/// circle. Accurate only when no root is near the circle.
pub fn mahler_jensen(f: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for j in 0..n {
        let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64);
        let v = f.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c);
        sum += v.norm().ln();
    }
    sum / n as f64
}

/// Smallest `|f(z)|` on a grid of the unit circle.
pub fn min_on_circle(f: &[f64], n: usize) -> f64 {
    (0..n)
        .map(|j| {
            let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64);
            f.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// `log M(f)` by Graeffe root squaring: after `k` steps `g` has the roots
/// `α^(2^k)`, and `M(g) ≤ ‖g‖₂ ≤ 2^d M(g)`. Returns `(estimate, bound)` with
/// `log M(f) ∈ [estimate − bound, estimate]`. Coefficients are exact
/// integers, truncated to a few hundred bits when they grow.
pub fn mahler_graeffe(f: &[BigInt], k: u32) -> (f64, f64) {
    let d = f.len() - 1;
    let mut g: Vec<BigInt> = f.to_vec();
    let mut log_scale = 0.0f64;
    for step in 0..k {
        // g(x)g(−x) = h(x²)
        let mut h = vec![BigInt::zero(); d + 1];
        for (i, a) in g.iter().enumerate() {
            for (j, b) in g.iter().enumerate() {
                if (i + j) % 2 == 0 {
                    let t = a * b;
                    if j % 2 == 1 {
                        h[(i + j) / 2] -= t;
                    } else {
                        h[(i + j) / 2] += t;
                    }
                }
            }
        }
        let bits = h.iter().map(|c| c.bits()).max().unwrap();
        if bits > 600 {
            let shift = bits - 300;
            h.iter_mut().for_each(|c| *c = &*c >> shift);
            // Each later step squares this scale factor.
            log_scale += shift as f64 * std::f64::consts::LN_2 / 2f64.powi(step as i32 + 1);
        }
        g = h;
    }
    let bits = g.iter().map(|c| c.bits()).max().unwrap();
    let shift = bits.saturating_sub(60);
    let norm = g.iter().map(|c| (c >> shift).to_f64().unwrap().powi(2)).sum::<f64>().sqrt();
    let log_norm = norm.ln() + shift as f64 * std::f64::consts::LN_2;
    let scale = 2f64.powi(k as i32);
    (log_scale + log_norm / scale, d as f64 * std::f64::consts::LN_2 / scale)
}

pub fn to_f64(f: &[BigInt]) -> Vec<f64> {
    f.iter().map(|c| c.to_f64().unwrap()).collect()
}

/// Cyclotomic polynomial `Φ_n` by dividing `x^n − 1` by `Φ_d`, `d | n`.
pub fn cyclotomic(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::zero(); n + 1];
    f[0] = -BigInt::one();
    f[n] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            f = exact_div(&f, &cyclotomic(d));
        }
    }
    f
}

fn exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(&b[db]);
        assert!(rem.is_zero());
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    assert!(r.iter().all(Zero::is_zero));
    q
}

/// Characteristic polynomial of `α^m` for the roots `α` of `f`, as a
/// primitive integer polynomial: companion matrix power, then
/// Faddeev–LeVerrier over Q.
pub fn charpoly_of_power(f: &[BigInt], m: u32) -> Vec<BigInt> {
    let d = f.len() - 1;
    let lead = BigRational::from_integer(f[d].clone());
    let mut c = vec![vec![BigRational::zero(); d]; d];
    for i in 1..d {
        c[i][i - 1] = BigRational::one();
    }
    for i in 0..d {
        c[i][d - 1] = -BigRational::from_integer(f[i].clone()) / &lead;
    }
    let mut a = identity(d);
    for _ in 0..m {
        a = matmul(&a, &c);
    }
    // M_k = A M_{k−1} + c_{d−k+1} I, c_{d−k} = −tr(A M_k)/k
    let mut coeffs = vec![BigRational::zero(); d + 1];
    coeffs[d] = BigRational::one();
    let mut mk = vec![vec![BigRational::zero(); d]; d];
    for k in 1..=d {
        let mut next = matmul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[d - k + 1];
        }
        mk = next;
        let am = matmul(&a, &mk);
        let tr = (0..d).fold(BigRational::zero(), |s, i| s + &am[i][i]);
        coeffs[d - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.iter().map(|c| c / &g).collect()
}

fn identity(d: usize) -> Vec<Vec<BigRational>> {
    (0..d).map(|i| (0..d).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect()
}

fn matmul(x: &[Vec<BigRational>], y: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let d = x.len();
    (0..d).map(|i| (0..d).map(|j| (0..d).fold(BigRational::zero(), |s, k| s + &x[i][k] * &y[k][j])).collect()).collect()
}

/// The squarefree part of a polynomial: divide by `gcd(f, f')` over Q.
pub fn squarefree(f: &[BigInt]) -> Vec<BigInt> {
    let q: Vec<BigRational> = f.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let dq: Vec<BigRational> =
        q.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect();
    let g = rat_gcd(q.clone(), dq);
    let quot = rat_div(&q, &g);
    let den = quot.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = quot.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    ints.iter().map(|c| c / &g * &sign).collect()
}

fn rat_trim(mut f: Vec<BigRational>) -> Vec<BigRational> {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = rat_trim(a.to_vec());
    let db = b.len() - 1;
    while r.len() > db {
        let c = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        r = rat_trim(r);
    }
    r
}

fn rat_div(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigRational::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / b.last().unwrap();
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    q
}

fn rat_gcd(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    b = rat_trim(b);
    while !b.is_empty() {
        let r = rat_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// λ by walking `a ← min(2a, a+1)` one step at a time.
pub fn lambda_by_simulation(c1: u64, c2: u64) -> u64 {
    let mut a = BigRational::new(BigInt::one(), BigInt::from(c1));
    let target = BigRational::from_integer(BigInt::from(c2));
    let mut steps = 0;
    while a < target {
        let doubled = &a + &a;
        let incr = &a + BigRational::one();
        a = doubled.min(incr);
        steps += 1;
    }
    steps
}
