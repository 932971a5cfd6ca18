use std::fmt;
use std::sync::Arc;

use crate::finite_algebra::{same_parent, AlgebraElement, ProductAlgebra};

use super::MatGroupError;

/// A 2×2 matrix over a [`ProductAlgebra`], entries stored row-major as
/// concatenated reduced coordinate vectors.
#[derive(Clone)]
pub struct Mat2 {
    alg: Arc<ProductAlgebra>,
    data: Vec<u64>,
}

impl PartialEq for Mat2 {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data && same_parent(&self.alg, &other.alg)
    }
}

impl Eq for Mat2 {}

impl std::hash::Hash for Mat2 {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.data.hash(state);
    }
}

impl PartialOrd for Mat2 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mat2 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.data.cmp(&other.data)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.alg.dim();
        write!(
            f,
            "[[{:?}, {:?}], [{:?}, {:?}]]",
            &self.data[..d],
            &self.data[d..2 * d],
            &self.data[2 * d..3 * d],
            &self.data[3 * d..]
        )
    }
}

/// Entries in row order, each as comma-joined coordinates.
impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.alg.dim();
        let parts: Vec<String> =
            self.data.chunks(d).map(|c| c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Mat2 {
    pub fn from_raw(alg: &Arc<ProductAlgebra>, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), 4 * alg.dim(), "a 2×2 matrix needs four entries");
        let p = alg.p();
        Mat2 { alg: Arc::clone(alg), data: data.into_iter().map(|c| c % p).collect() }
    }

    pub fn new(entries: [&AlgebraElement; 4]) -> Result<Self, MatGroupError> {
        let alg = entries[0].parent();
        let mut data = Vec::with_capacity(4 * alg.dim());
        for e in entries {
            if !same_parent(alg, e.parent()) {
                return Err(MatGroupError::Algebra(crate::finite_algebra::AlgebraError::MixedParents));
            }
            data.extend_from_slice(e.coords());
        }
        Ok(Mat2 { alg: Arc::clone(alg), data })
    }

    /// Build from four raw coordinate vectors.
    pub fn from_entries(alg: &Arc<ProductAlgebra>, a: &[u64], b: &[u64], c: &[u64], d: &[u64]) -> Self {
        let data = [a, b, c, d].concat();
        Self::from_raw(alg, data)
    }

    pub fn identity(alg: &Arc<ProductAlgebra>) -> Self {
        let one = alg.one_coords();
        let zero = alg.zero_coords();
        Self::from_entries(alg, &one, &zero, &zero, &one)
    }

    pub fn zero(alg: &Arc<ProductAlgebra>) -> Self {
        Mat2 { alg: Arc::clone(alg), data: vec![0; 4 * alg.dim()] }
    }

    /// `diag(x, y)`
    pub fn diag(alg: &Arc<ProductAlgebra>, x: &[u64], y: &[u64]) -> Self {
        let zero = alg.zero_coords();
        Self::from_entries(alg, x, &zero, &zero, y)
    }

    /// Integer matrix over the diagonal copy of F_p.
    pub fn scalar_entries(alg: &Arc<ProductAlgebra>, m: [i64; 4]) -> Self {
        let p = alg.p() as i64;
        let e: Vec<Vec<u64>> = m.iter().map(|&c| alg.scalar_coords(c.rem_euclid(p) as u64)).collect();
        Self::from_entries(alg, &e[0], &e[1], &e[2], &e[3])
    }

    pub fn algebra(&self) -> &Arc<ProductAlgebra> {
        &self.alg
    }

    pub fn raw(&self) -> &[u64] {
        &self.data
    }

    /// Raw coordinates of entry `(row, col)`.
    pub fn entry_raw(&self, row: usize, col: usize) -> &[u64] {
        let d = self.alg.dim();
        let k = 2 * row + col;
        &self.data[k * d..(k + 1) * d]
    }

    pub fn entry(&self, row: usize, col: usize) -> AlgebraElement {
        AlgebraElement::new(&self.alg, self.entry_raw(row, col).to_vec())
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        assert!(same_parent(&self.alg, &other.alg), "matrices over different algebras");
        let mut out = vec![0; self.data.len()];
        let mut scratch = vec![0; self.alg.dim()];
        mul_raw(&self.alg, &self.data, &other.data, &mut out, &mut scratch);
        Mat2 { alg: Arc::clone(&self.alg), data: out }
    }

    pub fn add(&self, other: &Mat2) -> Mat2 {
        Mat2 { alg: Arc::clone(&self.alg), data: self.alg.add_raw(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &Mat2) -> Mat2 {
        Mat2 { alg: Arc::clone(&self.alg), data: self.alg.sub_raw(&self.data, &other.data) }
    }

    pub fn scale(&self, c: u64) -> Mat2 {
        Mat2 { alg: Arc::clone(&self.alg), data: self.alg.scale_raw(c, &self.data) }
    }

    pub fn det_raw(&self) -> Vec<u64> {
        let alg = &self.alg;
        let ad = alg.mul_raw(self.entry_raw(0, 0), self.entry_raw(1, 1));
        let bc = alg.mul_raw(self.entry_raw(0, 1), self.entry_raw(1, 0));
        alg.sub_raw(&ad, &bc)
    }

    pub fn det(&self) -> AlgebraElement {
        AlgebraElement::new(&self.alg, self.det_raw())
    }

    pub fn trace_raw(&self) -> Vec<u64> {
        self.alg.add_raw(self.entry_raw(0, 0), self.entry_raw(1, 1))
    }

    pub fn trace(&self) -> AlgebraElement {
        AlgebraElement::new(&self.alg, self.trace_raw())
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity(&self.alg)
    }

    pub fn inverse(&self) -> Result<Mat2, MatGroupError> {
        let alg = &self.alg;
        let det_inv = alg.inv_raw(&self.det_raw()).ok_or(MatGroupError::SingularMatrix)?;
        let a = alg.mul_raw(&det_inv, self.entry_raw(1, 1));
        let b = alg.mul_raw(&det_inv, &alg.neg_raw(self.entry_raw(0, 1)));
        let c = alg.mul_raw(&det_inv, &alg.neg_raw(self.entry_raw(1, 0)));
        let d = alg.mul_raw(&det_inv, self.entry_raw(0, 0));
        Ok(Self::from_entries(alg, &a, &b, &c, &d))
    }

    /// `g · self · g⁻¹`
    pub fn conjugate_by(&self, g: &Mat2) -> Result<Mat2, MatGroupError> {
        Ok(g.mul(self).mul(&g.inverse()?))
    }

    /// Mixed-radix index of the coordinate tuple; lexicographic order on
    /// matrices equals numeric order on keys. `None` if it overflows.
    pub fn key(&self) -> Option<u128> {
        key_of(&self.data, self.alg.p())
    }

    pub fn from_key(alg: &Arc<ProductAlgebra>, key: u128) -> Self {
        let mut data = vec![0u64; 4 * alg.dim()];
        decode_key(key, alg.p(), &mut data);
        Mat2 { alg: Arc::clone(alg), data }
    }
}

/// Product of two raw matrices into `out`; `scratch` holds one entry.
pub(crate) fn mul_raw(alg: &ProductAlgebra, x: &[u64], y: &[u64], out: &mut [u64], scratch: &mut [u64]) {
    let d = alg.dim();
    let p = alg.p();
    let e = |k: usize| k * d..(k + 1) * d;
    for row in 0..2 {
        for col in 0..2 {
            let o = e(2 * row + col);
            alg.mul_into(&x[e(2 * row)], &y[e(col)], &mut out[o.clone()]);
            alg.mul_into(&x[e(2 * row + 1)], &y[e(2 + col)], scratch);
            for (a, b) in out[o].iter_mut().zip(scratch.iter()) {
                *a = (*a + b) % p;
            }
        }
    }
}

pub(crate) fn decode_key(mut key: u128, p: u64, out: &mut [u64]) {
    let p = p as u128;
    for slot in out.iter_mut().rev() {
        *slot = (key % p) as u64;
        key /= p;
    }
}

pub(crate) fn key_of(data: &[u64], p: u64) -> Option<u128> {
    let p = p as u128;
    data.iter().try_fold(0u128, |acc, &c| acc.checked_mul(p)?.checked_add(c as u128))
}

/// `S(α) = [[1, α], [0, 1]]`
pub fn elementary_s(alpha: &AlgebraElement) -> Mat2 {
    let alg = alpha.parent();
    Mat2::from_entries(alg, &alg.one_coords(), alpha.coords(), &alg.zero_coords(), &alg.one_coords())
}

/// `T(α) = [[1, 0], [α, 1]]`
pub fn elementary_t(alpha: &AlgebraElement) -> Mat2 {
    let alg = alpha.parent();
    Mat2::from_entries(alg, &alg.one_coords(), &alg.zero_coords(), alpha.coords(), &alg.one_coords())
}
