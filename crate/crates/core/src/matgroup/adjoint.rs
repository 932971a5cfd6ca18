use std::sync::Arc;

use rayon::prelude::*;

use crate::finite_algebra::{AlgebraError, ProductAlgebra};
use crate::subspace::{Ambient, Subspace};

use super::group::sl2_generators;
use super::{Mat2, MatGroupError};

/// Coordinates `(a, b, c)` of a trace-zero matrix `[[a, b], [c, −a]]`.
pub fn trace_zero_vector(m: &Mat2) -> Result<Vec<u64>, MatGroupError> {
    if !ProductAlgebra::is_zero_raw(&m.trace_raw()) {
        return Err(MatGroupError::NonzeroTrace);
    }
    Ok([m.entry_raw(0, 0), m.entry_raw(0, 1), m.entry_raw(1, 0)].concat())
}

pub fn from_trace_zero_vector(alg: &Arc<ProductAlgebra>, v: &[u64]) -> Mat2 {
    let d = alg.dim();
    assert_eq!(v.len(), 3 * d, "trace-zero coordinates have length 3·dim");
    let a = &v[..d];
    Mat2::from_entries(alg, a, &v[d..2 * d], &v[2 * d..], &alg.neg_raw(a))
}

/// Smallest `SL₂(A)`-stable subspace of `M₂(A)⁰` containing `seed`.
pub fn adjoint_orbit_span(seed: &Mat2) -> Result<Subspace, MatGroupError> {
    let alg = seed.algebra();
    let v = trace_zero_vector(seed)?;
    let gens = sl2_generators(alg);
    let mut span = Subspace::zero(alg.p(), Ambient::TraceZero, 3 * alg.dim());
    let mut work = Vec::new();
    if span.insert(&v) {
        work.push(v);
    }
    while let Some(v) = work.pop() {
        let m = from_trace_zero_vector(alg, &v);
        for g in &gens {
            let w = trace_zero_vector(&m.conjugate_by(g)?)?;
            if span.insert(&w) {
                work.push(w);
            }
        }
    }
    Ok(span)
}

/// Checks that every nonzero seed in `M₂(F_p)⁰` (embedded diagonally) spans
/// all of `M₂(A)⁰`. Returns the number of seeds tested.
pub fn adjoint_irreducibility(alg: &Arc<ProductAlgebra>) -> Result<(bool, u64), MatGroupError> {
    let p = alg.p();
    let n = p
        .checked_pow(3)
        .filter(|&n| n <= 1 << 24)
        .ok_or_else(|| MatGroupError::Algebra(AlgebraError::TooLarge { size: format!("{p}^3"), limit: 1 << 24 }))?;
    let results: Result<Vec<bool>, MatGroupError> = (1..n)
        .into_par_iter()
        .map(|code| {
            let (a, b, c) = (code % p, code / p % p, code / (p * p));
            let seed = super::embed_fp_matrix(alg, [a, b, c, (p - a) % p]);
            Ok(adjoint_orbit_span(&seed)?.is_full())
        })
        .collect();
    Ok((results?.into_iter().all(|ok| ok), n - 1))
}

/// `M̂₂(A)`: matrices whose trace lies in the diagonal copy of F_p, in the
/// full `4·dim` coordinates.
pub fn trace_in_fp_space(alg: &Arc<ProductAlgebra>) -> Subspace {
    let d = alg.dim();
    let mut s = Subspace::zero(alg.p(), Ambient::TraceInFp, 4 * d);
    for i in 0..3 * d {
        let mut v = vec![0; 3 * d];
        v[i] = 1;
        s.insert(from_trace_zero_vector(alg, &v).raw());
    }
    s.insert(Mat2::identity(alg).raw());
    s
}
