//! Sample subgroups of GL₂(F_p) for exercising the normal-closure criterion:
//! `|H| > 2s` and `det(H) = (F_p^×)^{k−1}` force `H` to normally generate Ĝ.
//!
//! Exhaustive subgroup enumeration is out of reach, so the families cover
//! split and non-split Cartan subgroups and their normalizers, Borel-type
//! groups, the cyclic order-δ subgroup of the non-split torus, and the full
//! groups.

use crate::finite_algebra::{make_algebra, LocalAlgebraSpec};
use crate::fp::{gcd, pow_mod, primitive_root};

use super::group::det_index;
use super::{GroupSet, Mat2, MatGroupError, GROUP_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CuratedSubgroup {
    pub name: String,
    /// Generators over F_p, row-major.
    pub generators: Vec<[u64; 4]>,
    pub order: usize,
    /// Whether `|H| > 2s` and `det(H) = (F_p^×)^{k−1}`.
    pub eligible: bool,
}

fn mul(x: [u64; 4], y: [u64; 4], p: u64) -> [u64; 4] {
    let [a, b, c, d] = x;
    let [e, f, g, h] = y;
    [(a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p]
}

fn pow(x: [u64; 4], mut e: u64, p: u64) -> [u64; 4] {
    let mut acc = [1, 0, 0, 1];
    let mut b = x;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b, p);
        }
        b = mul(b, b, p);
        e >>= 1;
    }
    acc
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Multiplication by a generator of F_{p²}^× = F_p[t]/(t² − c) on the basis
/// {1, t}, with `c` the least non-residue.
fn nonsplit_generator(p: u64) -> [u64; 4] {
    let c = (2..p).find(|&c| pow_mod(c, (p - 1) / 2, p) == p - 1).expect("p odd");
    let order = p * p - 1;
    let factors = crate::fp::prime_factors(order);
    for code in p..p * p {
        let (a, b) = (code % p, code / p);
        let m = [a, b * c % p, b, a];
        if factors.iter().all(|&r| pow(m, order / r, p) != [1, 0, 0, 1]) {
            return m;
        }
    }
    unreachable!("F_(p^2)^x is cyclic")
}

/// Candidate subgroups for `(p, k)`, each tagged with whether it meets the
/// hypotheses of the normal-closure criterion.
pub fn curated_subgroups(p: u64, k: u64) -> Result<Vec<CuratedSubgroup>, MatGroupError> {
    if p < 5 || !crate::fp::is_prime(p) {
        return Err(MatGroupError::PreconditionViolated(format!("p = {p} must be a prime ≥ 5")));
    }
    let w = primitive_root(p);
    let diag = |x: u64, y: u64| [x % p, 0, 0, y % p];
    let s_one = [1, 1, 0, 1];
    let t_one = [1, 0, 1, 1];
    let swap = [0, 1, 1, 0];
    let flip = [1, 0, 0, p - 1];
    let zeta = nonsplit_generator(p);
    let q1 = p * p - 1;
    let d = gcd(q1, k.saturating_sub(1));
    let g = gcd(k.saturating_sub(1), p - 1);

    let mut families: Vec<(String, Vec<[u64; 4]>)> = Vec::new();
    for j in 0..p - 1 {
        families.push((format!("split cyclic diag(w, w^{j})"), vec![diag(w, pow_mod(w, j, p))]));
    }
    families.push(("split Cartan".into(), vec![diag(w, 1), diag(1, w)]));
    families.push(("split Cartan normalizer".into(), vec![diag(w, 1), diag(1, w), swap]));
    families.push(("split cyclic with swap".into(), vec![diag(pow_mod(w, g, p), 1), swap]));
    for m in divisors(q1) {
        if m < q1 {
            families.push((format!("non-split cyclic of order {}", q1 / m), vec![pow(zeta, m, p)]));
            families.push((format!("non-split normalizer of order {}", 2 * q1 / m), vec![pow(zeta, m, p), flip]));
        }
    }
    families.push((format!("ramification torus of order {}", q1 / d), vec![pow(zeta, d, p)]));
    families.push(("Borel".into(), vec![diag(w, 1), diag(1, w), s_one]));
    families.push(("Borel with det twist".into(), vec![diag(pow_mod(w, g, p), 1), s_one]));
    families.push(("scalars and unipotent".into(), vec![diag(w, w), s_one]));
    families.push(("SL2".into(), vec![s_one, t_one]));
    families.push(("Ghat(F_p)".into(), vec![s_one, t_one, diag(pow_mod(w, g, p), 1)]));
    families.push(("GL2".into(), vec![s_one, t_one, diag(w, 1)]));

    let alg = make_algebra(vec![LocalAlgebraSpec::prime_field(p)], p)?;
    let s = det_index(p, k);
    let mut out = Vec::with_capacity(families.len());
    for (name, gens) in families {
        let mats = gens.iter().map(|&m| Mat2::scalar_entries(&alg, m.map(|c| c as i64))).collect();
        let h = GroupSet::generate(&alg, mats, GROUP_LIMIT)?;
        let dets = h.determinants();
        let det_ok = dets.len() as u64 == s && dets.iter().all(|d| pow_mod(d[0], s, p) == 1);
        let eligible = det_ok && h.order() as u64 > 2 * s;
        out.push(CuratedSubgroup { name, generators: gens, order: h.order(), eligible });
    }
    Ok(out)
}
