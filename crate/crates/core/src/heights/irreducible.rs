//! Irreducibility over Q for small-degree integer polynomials.
//!
//! Factorization patterns modulo small primes restrict the possible degrees
//! of a factor; any degree that survives is searched for with Kronecker's
//! interpolation method.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly;
use crate::fp::{self, primes_in};

/// Degree up to which irreducibility is decided.
pub const MAX_CHECKED_DEGREE: usize = 8;

/// Kronecker search budget, in interpolated candidates.
const KRONECKER_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A proper factor of positive degree.
    Reducible(Vec<BigInt>),
    /// Not decided: degree too high or search budget exhausted.
    Unchecked,
}

fn reduce_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    f.iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue fits")).collect()
}

/// Possible degrees of a factor of `f` over Z, from factorization patterns
/// modulo a few good primes.
fn allowed_degrees(f: &[BigInt]) -> BTreeSet<usize> {
    let d = poly::degree(f).unwrap_or(0);
    let mut allowed: BTreeSet<usize> = (0..=d).collect();
    let mut used = 0;
    for p in primes_in(3, 400) {
        let fp = reduce_mod(f, p);
        if fp[d] == 0 {
            continue;
        }
        let g = fp::poly::gcd(&fp, &fp::poly::derivative(&fp, p), p);
        if fp::poly::degree(&g) != Some(0) {
            continue;
        }
        let mut sums = BTreeSet::from([0usize]);
        for deg in fp::poly::factor_degrees(&fp, p) {
            let next: Vec<usize> = sums.iter().map(|s| s + deg).collect();
            sums.extend(next);
        }
        allowed = allowed.intersection(&sums).copied().collect();
        used += 1;
        if allowed.len() <= 2 || used >= 20 {
            break;
        }
    }
    allowed
}

fn divisors(n: &BigInt, cap: u64) -> Option<Vec<i128>> {
    let n = n.abs().to_i128()?;
    if n == 0 {
        return None;
    }
    let mut out = Vec::new();
    let mut i: i128 = 1;
    while i * i <= n {
        if i as u64 > cap {
            return None;
        }
        if n % i == 0 {
            out.push(i);
            if i * i != n {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    Some(out)
}

/// `D·L_i(x)` for the Lagrange basis on `xs`, with the common denominator
/// `D`.
fn lagrange_basis(xs: &[i128]) -> Option<(Vec<Vec<i128>>, i128)> {
    let m = xs.len();
    let mut numers = Vec::with_capacity(m);
    let mut denoms = Vec::with_capacity(m);
    for i in 0..m {
        let mut num = vec![1i128];
        let mut den = 1i128;
        for j in 0..m {
            if i == j {
                continue;
            }
            let mut next = vec![0i128; num.len() + 1];
            for (k, &c) in num.iter().enumerate() {
                next[k + 1] = next[k + 1].checked_add(c)?;
                next[k] = next[k].checked_sub(c.checked_mul(xs[j])?)?;
            }
            num = next;
            den = den.checked_mul(xs[i] - xs[j])?;
        }
        numers.push(num);
        denoms.push(den);
    }
    let lcm = denoms.iter().try_fold(1i128, |acc, &d| {
        let g = acc.gcd(&d.abs());
        (acc / g).checked_mul(d.abs())
    })?;
    let scaled = numers
        .into_iter()
        .zip(denoms)
        .map(|(num, den)| num.into_iter().map(|c| c.checked_mul(lcm / den)).collect::<Option<Vec<i128>>>())
        .collect::<Option<Vec<_>>>()?;
    Some((scaled, lcm))
}

/// Search for a factor of degree `m` by interpolation through divisors of
/// `f` at `m+1` integer points. `Err(())` when the budget is exceeded.
fn kronecker(f: &[BigInt], m: usize, budget: &mut u64) -> Result<Option<Vec<BigInt>>, ()> {
    let mut candidates: Vec<(i128, Vec<i128>)> = Vec::new();
    let mut x: i128 = 0;
    let mut step = 0;
    while candidates.len() < 2 * m + 4 && step < 64 {
        let v = poly::eval(f, &BigInt::from(x));
        if v.is_zero() {
            return Ok(Some(vec![BigInt::from(-x), BigInt::from(1)]));
        }
        if let Some(ds) = divisors(&v, 10_000_000) {
            candidates.push((x, ds));
        }
        step += 1;
        x = if x > 0 { -x } else { -x + 1 };
    }
    if candidates.len() < m + 1 {
        return Err(());
    }
    candidates.sort_by_key(|(_, ds)| ds.len());
    candidates.truncate(m + 1);
    let xs: Vec<i128> = candidates.iter().map(|c| c.0).collect();
    let (basis, den) = lagrange_basis(&xs).ok_or(())?;
    // Value choices: positive divisors at the first point (fixing the sign
    // of the factor), signed divisors elsewhere.
    let choices: Vec<Vec<i128>> = candidates
        .iter()
        .enumerate()
        .map(|(i, (_, ds))| if i == 0 { ds.clone() } else { ds.iter().flat_map(|&d| [d, -d]).collect() })
        .collect();
    let total = choices.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64)).ok_or(())?;
    if total > *budget {
        return Err(());
    }
    *budget -= total;
    let mut idx = vec![0usize; m + 1];
    loop {
        let mut g = vec![0i128; m + 1];
        let mut ok = true;
        'acc: for (i, &j) in idx.iter().enumerate() {
            let v = choices[i][j];
            for (gk, bk) in g.iter_mut().zip(&basis[i]) {
                match bk.checked_mul(v).and_then(|t| gk.checked_add(t)) {
                    Some(s) => *gk = s,
                    None => {
                        ok = false;
                        break 'acc;
                    }
                }
            }
        }
        if !ok {
            return Err(());
        }
        if g.iter().all(|c| c % den == 0) {
            let g: Vec<BigInt> = poly::trim(g.iter().map(|c| BigInt::from(c / den)).collect());
            if poly::degree(&g) == Some(m) && poly::div_exact(f, &g).is_some() {
                return Ok(Some(g));
            }
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return Ok(None);
            }
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Decide irreducibility over Q of a primitive `f` with positive degree.
pub fn irreducibility(f: &[BigInt]) -> Irreducibility {
    let f = poly::primitive(f);
    let Some(d) = poly::degree(&f) else {
        return Irreducibility::Unchecked;
    };
    if d <= 1 {
        return Irreducibility::Irreducible;
    }
    let sf = poly::squarefree_part(&f);
    if poly::degree(&sf) != Some(d) {
        let g = poly::gcd(&f, &poly::derivative(&f));
        return Irreducibility::Reducible(g);
    }
    if f[0].is_zero() {
        return Irreducibility::Reducible(vec![BigInt::zero(), BigInt::from(1)]);
    }
    let allowed = allowed_degrees(&f);
    let to_try: Vec<usize> = allowed.into_iter().filter(|&m| m >= 1 && 2 * m <= d).collect();
    if to_try.is_empty() {
        return Irreducibility::Irreducible;
    }
    if d > MAX_CHECKED_DEGREE {
        return Irreducibility::Unchecked;
    }
    let mut budget = KRONECKER_BUDGET;
    for m in to_try {
        match kronecker(&f, m, &mut budget) {
            Ok(Some(g)) => return Irreducibility::Reducible(g),
            Ok(None) => {}
            Err(()) => return Irreducibility::Unchecked,
        }
    }
    Irreducibility::Irreducible
}
