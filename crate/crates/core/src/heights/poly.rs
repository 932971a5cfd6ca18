//! Integer polynomials as coefficient vectors, constant term first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub fn trim(mut f: Vec<BigInt>) -> Vec<BigInt> {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

pub fn degree(f: &[BigInt]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divide out the content and make the leading coefficient positive.
pub fn primitive(f: &[BigInt]) -> Vec<BigInt> {
    let f = trim(f.to_vec());
    let Some(lead) = f.last() else {
        return f;
    };
    let mut g = content(&f);
    if lead.is_negative() {
        g = -g;
    }
    f.iter().map(|c| c / &g).collect()
}

pub fn eval(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

pub fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    trim(f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

/// `x^d f(1/x)`.
pub fn reverse(f: &[BigInt]) -> Vec<BigInt> {
    let mut r = trim(f.to_vec());
    r.reverse();
    trim(r)
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Exact quotient `a / b` over Z, or `None` if `b` does not divide `a`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = degree(b)?;
    let mut r = trim(a.to_vec());
    let Some(da) = degree(&r) else {
        return Some(Vec::new());
    };
    if da < db {
        return None;
    }
    let mut q = vec![BigInt::zero(); da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            return None;
        }
        let (c, rem) = r[dr].div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &c * bi;
        }
        q[shift] = c;
        r = trim(r);
    }
    Some(trim(q))
}

/// Pseudo-remainder of `a` by `b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b).expect("nonzero divisor");
    let lead = &b[db];
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x *= lead;
        }
        for (i, bi) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &c * bi;
        }
        r = trim(r);
    }
    r
}

/// Primitive gcd over Z by the primitive remainder sequence.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = primitive(a);
    let mut y = primitive(b);
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while degree(&y).is_some() {
        let r = primitive(&prem(&x, &y));
        x = y;
        y = r;
    }
    let g = primitive(&x);
    if degree(&g) == Some(0) {
        return vec![BigInt::from(1)];
    }
    g
}

/// `f / gcd(f, f')`, primitive.
pub fn squarefree_part(f: &[BigInt]) -> Vec<BigInt> {
    let f = primitive(f);
    let g = gcd(&f, &derivative(&f));
    if degree(&g).unwrap_or(0) == 0 {
        return f;
    }
    primitive(&div_exact(&f, &g).expect("gcd divides"))
}

/// Parse `"c0,c1,...,cd"`.
pub fn parse_coeffs(s: &str) -> Result<Vec<BigInt>, String> {
    s.split(',').map(|t| t.trim().parse::<BigInt>().map_err(|e| format!("bad coefficient {t:?}: {e}"))).collect()
}

/// `3x^2 - x + 1` style rendering, highest degree first.
pub fn render(f: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, c) in f.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let one = a == BigInt::from(1);
        match i {
            0 => out.push_str(&a.to_string()),
            _ => {
                if !one {
                    out.push_str(&a.to_string());
                }
                out.push('x');
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
