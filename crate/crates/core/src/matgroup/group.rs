use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::finite_algebra::{same_parent, AlgebraElement, ProductAlgebra};
use crate::fp::{gcd, pow_mod, primitive_root};

use super::mat2::{decode_key, key_of, mul_raw};
use super::{elementary_s, elementary_t, Mat2, MatGroupError};

/// Upper bound on the number of elements any enumerated group may have.
pub const GROUP_LIMIT: u64 = 1 << 22;

/// A finite matrix group stored as a set of canonical keys.
///
/// Elements iterate in lexicographic order of their coordinates.
#[derive(Clone)]
pub struct GroupSet {
    alg: Arc<ProductAlgebra>,
    generators: Vec<Mat2>,
    keys: Vec<u128>,
    index: HashSet<u128>,
}

impl fmt::Debug for GroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupSet")
            .field("algebra", &self.alg.to_string())
            .field("order", &self.keys.len())
            .field("generators", &self.generators)
            .finish()
    }
}

/// One header line, then one matrix per line.
impl fmt::Display for GroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# group p={} algebra={} order={}", self.alg.p(), self.alg, self.order())?;
        for m in self.iter() {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

fn check_keyable(alg: &ProductAlgebra) -> Result<(), MatGroupError> {
    let fits = u32::try_from(4 * alg.dim()).ok().and_then(|e| (alg.p() as u128).checked_pow(e)).is_some();
    if fits {
        Ok(())
    } else {
        Err(MatGroupError::TooLarge { size: format!("{}^4", alg.size()), limit: GROUP_LIMIT })
    }
}

/// Breadth-first closure under right multiplication.
///
/// `keys`/`index` must already be closed under `gens[..fresh_from]`; existing
/// elements are only multiplied by the fresh generators.
fn close(
    alg: &ProductAlgebra,
    gens: &[Mat2],
    fresh_from: usize,
    keys: &mut Vec<u128>,
    index: &mut HashSet<u128>,
    limit: u64,
) -> Result<(), MatGroupError> {
    let p = alg.p();
    let len = 4 * alg.dim();
    let mut x = vec![0u64; len];
    let mut y = vec![0u64; len];
    let mut scratch = vec![0u64; alg.dim()];
    let existing = keys.len();
    let mut i = 0;
    while i < keys.len() {
        decode_key(keys[i], p, &mut x);
        let active = if i < existing { &gens[fresh_from..] } else { gens };
        for g in active {
            mul_raw(alg, &x, g.raw(), &mut y, &mut scratch);
            let k = key_of(&y, p).expect("keyable algebra");
            if index.insert(k) {
                keys.push(k);
                if keys.len() as u64 > limit {
                    return Err(MatGroupError::TooLarge { size: format!(">{limit}"), limit });
                }
            }
        }
        i += 1;
    }
    Ok(())
}

impl GroupSet {
    /// The subgroup generated by `gens`.
    pub fn generate(alg: &Arc<ProductAlgebra>, gens: Vec<Mat2>, limit: u64) -> Result<Self, MatGroupError> {
        check_keyable(alg)?;
        for g in &gens {
            if !same_parent(alg, g.algebra()) {
                return Err(crate::finite_algebra::AlgebraError::MixedParents.into());
            }
            if !alg.is_unit_raw(&g.det_raw()) {
                return Err(MatGroupError::SingularMatrix);
            }
        }
        let id = Mat2::identity(alg).key().expect("keyable algebra");
        let mut keys = vec![id];
        let mut index = HashSet::from([id]);
        close(alg, &gens, 0, &mut keys, &mut index, limit)?;
        keys.sort_unstable();
        Ok(GroupSet { alg: Arc::clone(alg), generators: gens, keys, index })
    }

    /// The subgroup generated by `self` and `extra`.
    pub fn extended(&self, extra: &[Mat2], limit: u64) -> Result<Self, MatGroupError> {
        let mut gens = self.generators.clone();
        let fresh_from = gens.len();
        for g in extra {
            if !self.alg.is_unit_raw(&g.det_raw()) {
                return Err(MatGroupError::SingularMatrix);
            }
            gens.push(g.clone());
        }
        let mut keys = self.keys.clone();
        let mut index = self.index.clone();
        close(&self.alg, &gens, fresh_from, &mut keys, &mut index, limit)?;
        keys.sort_unstable();
        Ok(GroupSet { alg: Arc::clone(&self.alg), generators: gens, keys, index })
    }

    pub fn algebra(&self) -> &Arc<ProductAlgebra> {
        &self.alg
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        same_parent(&self.alg, m.algebra()) && m.key().is_some_and(|k| self.index.contains(&k))
    }

    pub fn keys(&self) -> &[u128] {
        &self.keys
    }

    pub fn iter(&self) -> impl Iterator<Item = Mat2> + '_ {
        self.keys.iter().map(|&k| Mat2::from_key(&self.alg, k))
    }

    /// Checks closure under right multiplication by the generators and under
    /// inversion.
    pub fn verify_closed(&self) -> bool {
        let id = Mat2::identity(&self.alg);
        if !self.contains(&id) {
            return false;
        }
        self.iter().all(|x| {
            self.generators.iter().all(|g| self.contains(&x.mul(g)))
                && x.inverse().map(|xi| self.contains(&xi)).unwrap_or(false)
        })
    }

    /// Whether `self` is normalized by every generator of `g`.
    pub fn is_normal_in(&self, g: &GroupSet) -> bool {
        self.keys.iter().all(|&k| g.index.contains(&k))
            && self
                .generators
                .iter()
                .all(|h| g.generators.iter().all(|x| h.conjugate_by(x).map(|c| self.contains(&c)).unwrap_or(false)))
    }

    /// Distinct determinants, sorted.
    pub fn determinants(&self) -> Vec<Vec<u64>> {
        let mut dets: Vec<Vec<u64>> = self.iter().map(|m| m.det_raw()).collect();
        dets.sort_unstable();
        dets.dedup();
        dets
    }
}

/// `|SL₂(A)|` as the product of the local orders `q(q²−1)·q^{3(e−1)}`,
/// `q = p^m` the residue field size and `e` the nilpotency index.
pub fn sl2_order(alg: &ProductAlgebra) -> BigUint {
    alg.factors().iter().fold(BigUint::one(), |acc, f| {
        let q = BigUint::from(alg.p()).pow(f.residue_degree() as u32);
        let local = &q * (&q * &q - 1u32) * q.pow(3 * (f.nilpotency() as u32 - 1));
        acc * local
    })
}

/// `(p−1)/gcd(k−1, p−1)`, the order of `(F_p^×)^{k−1}`.
pub(crate) fn det_index(p: u64, k: u64) -> u64 {
    (p - 1) / gcd(k.saturating_sub(1), p - 1)
}

pub fn ghat_order(alg: &ProductAlgebra, k: u64) -> BigUint {
    sl2_order(alg) * det_index(alg.p(), k)
}

/// `S(b)` and `T(b)` for `b` running over the coordinate basis of `A`.
pub fn sl2_generators(alg: &Arc<ProductAlgebra>) -> Vec<Mat2> {
    let mut gens = Vec::with_capacity(2 * alg.dim());
    for i in 0..alg.dim() {
        let mut b = alg.zero_coords();
        b[i] = 1;
        let b = AlgebraElement::new(alg, b);
        gens.push(elementary_s(&b));
        gens.push(elementary_t(&b));
    }
    gens
}

fn guard(predicted: &BigUint) -> Result<(), MatGroupError> {
    if predicted.to_u64().is_none_or(|n| n > GROUP_LIMIT) {
        return Err(MatGroupError::TooLarge { size: predicted.to_string(), limit: GROUP_LIMIT });
    }
    Ok(())
}

pub fn enumerate_sl2(alg: &Arc<ProductAlgebra>) -> Result<GroupSet, MatGroupError> {
    guard(&sl2_order(alg))?;
    GroupSet::generate(alg, sl2_generators(alg), GROUP_LIMIT)
}

/// `Ĝ(A) = {γ ∈ GL₂(A) : det γ ∈ (F_p^×)^{k−1}}`, generated by `SL₂(A)` and
/// `diag(x, 1)` with `x` generating `(F_p^×)^{k−1}`.
pub fn enumerate_ghat(alg: &Arc<ProductAlgebra>, k: u64) -> Result<GroupSet, MatGroupError> {
    guard(&ghat_order(alg, k))?;
    let p = alg.p();
    let mut gens = sl2_generators(alg);
    if p > 2 {
        let x = pow_mod(primitive_root(p), gcd(k.saturating_sub(1), p - 1), p);
        if x != 1 {
            gens.push(Mat2::diag(alg, &alg.scalar_coords(x), &alg.one_coords()));
        }
    }
    GroupSet::generate(alg, gens, GROUP_LIMIT)
}

/// Whether `det γ` is a scalar lying in `(F_p^×)^{k−1}`.
pub fn ghat_membership(gamma: &Mat2, k: u64) -> Result<bool, MatGroupError> {
    let alg = gamma.algebra();
    let det = gamma.det_raw();
    if !alg.is_unit_raw(&det) {
        return Err(MatGroupError::SingularMatrix);
    }
    let Some(c) = alg.as_scalar_raw(&det) else {
        return Ok(false);
    };
    let p = alg.p();
    Ok(pow_mod(c, det_index(p, k), p) == 1)
}

/// A matrix over F_p, embedded diagonally.
pub fn embed_fp_matrix(alg: &Arc<ProductAlgebra>, m: [u64; 4]) -> Mat2 {
    Mat2::scalar_entries(alg, m.map(|c| c as i64))
}

/// Smallest normal subgroup of `g` containing `h_gens`.
///
/// Conjugates of the current generators by the generators of `g` are added
/// until none falls outside the subgroup built so far.
pub fn normal_closure(h_gens: &[Mat2], g: &GroupSet) -> Result<GroupSet, MatGroupError> {
    for h in h_gens {
        if !g.contains(h) {
            return Err(MatGroupError::NotSubgroup(h.to_string()));
        }
    }
    let limit = g.order() as u64;
    let mut gens: Vec<Mat2> = Vec::new();
    for h in h_gens {
        if !h.is_identity() && !gens.contains(h) {
            gens.push(h.clone());
        }
    }
    let mut n = GroupSet::generate(g.algebra(), gens.clone(), limit)?;
    let mut i = 0;
    while i < gens.len() {
        let h = gens[i].clone();
        for x in g.generators() {
            let c = h.conjugate_by(x)?;
            if !n.contains(&c) {
                n = n.extended(std::slice::from_ref(&c), limit)?;
                gens.push(c);
            }
        }
        i += 1;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_algebra::{make_algebra, LocalAlgebraSpec};

    fn f5() -> Arc<ProductAlgebra> {
        make_algebra(vec![LocalAlgebraSpec::prime_field(5)], 5).unwrap()
    }

    #[test]
    fn sl2_orders() {
        let a = f5();
        let g = enumerate_sl2(&a).unwrap();
        assert_eq!(g.order(), 120);
        assert!(g.verify_closed());
        let b = make_algebra(vec![LocalAlgebraSpec::truncated(5, 2)], 5).unwrap();
        assert_eq!(enumerate_sl2(&b).unwrap().order(), 15000);
        assert_eq!(sl2_order(&b), BigUint::from(15000u32));
    }

    #[test]
    fn ghat_orders() {
        let a = f5();
        assert_eq!(enumerate_ghat(&a, 2).unwrap().order(), 480);
        assert_eq!(enumerate_ghat(&a, 5).unwrap().order(), 120);
        assert_eq!(enumerate_ghat(&a, 4).unwrap().order(), 480);
    }

    #[test]
    fn membership() {
        let a = f5();
        assert!(ghat_membership(&Mat2::identity(&a), 3).unwrap());
        assert!(ghat_membership(&Mat2::scalar_entries(&a, [2, 0, 0, 1]), 4).unwrap());
        // det 2 is not a square mod 5.
        assert!(!ghat_membership(&Mat2::scalar_entries(&a, [2, 0, 0, 1]), 3).unwrap());
        assert_eq!(ghat_membership(&Mat2::zero(&a), 2), Err(MatGroupError::SingularMatrix));
    }

    #[test]
    fn closures_of_small_subgroups() {
        let a = f5();
        let g = enumerate_sl2(&a).unwrap();
        assert_eq!(normal_closure(&[Mat2::identity(&a)], &g).unwrap().order(), 1);
        let minus = Mat2::scalar_entries(&a, [-1, 0, 0, -1]);
        let n = normal_closure(&[minus], &g).unwrap();
        assert_eq!(n.order(), 2);
        assert!(n.is_normal_in(&g));
        let outside = Mat2::scalar_entries(&a, [2, 0, 0, 1]);
        assert!(matches!(normal_closure(&[outside], &g), Err(MatGroupError::NotSubgroup(_))));
    }

    #[test]
    fn guard_rejects_large_groups() {
        let a = make_algebra(vec![LocalAlgebraSpec::prime_field(13); 2], 13).unwrap();
        assert!(matches!(enumerate_sl2(&a), Err(MatGroupError::TooLarge { .. })));
    }

    #[test]
    fn serialization_is_sorted() {
        let g = enumerate_sl2(&f5()).unwrap();
        let text = g.to_string();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("# group p=5 algebra=F5 order=120"));
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 120);
        assert_eq!(rows[0], "0 1 4 0");
        assert!(g.keys().windows(2).all(|w| w[0] < w[1]));
    }
}
