//! The brute-force verification suite run on a single algebra.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;

use crate::finite_algebra::{span_of_unit_squares, ProductAlgebra};

use super::{
    adjoint_irreducibility, embed_fp_matrix, enumerate_ghat, enumerate_sl2, ghat_order, normal_closure, sl2_order,
    MatGroupError,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub holds: bool,
    pub observed: String,
    pub expected: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub algebra: String,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    pub checks: Vec<Check>,
    pub all_hold: bool,
}

/// Runs, in order: the span of unit squares, `|SL₂(A)|` against the closed
/// form, the normal closure of the diagonal `SL₂(F_p)`, adjoint
/// irreducibility over every nonzero seed in `M₂(F_p)⁰`, and `|Ĝ(A)|` when
/// `k` is given. Timings are recorded only on request so that the report
/// is otherwise deterministic.
pub fn verification_suite(
    alg: &Arc<ProductAlgebra>,
    k: Option<u64>,
    timings: bool,
) -> Result<SuiteReport, MatGroupError> {
    let mut checks = Vec::new();
    let mut timed = |name: &'static str, f: &mut dyn FnMut() -> Result<(bool, String, String), MatGroupError>| {
        let start = Instant::now();
        let (holds, observed, expected) = f()?;
        let elapsed_ms = timings.then(|| start.elapsed().as_millis());
        checks.push(Check { name, holds, observed, expected, elapsed_ms });
        Ok::<(), MatGroupError>(())
    };
    let p = alg.p();
    timed("unit_squares_span", &mut || {
        let (span, full) = span_of_unit_squares(alg)?;
        Ok((full, format!("dim {}", span.dim()), format!("dim {}", alg.dim())))
    })?;
    let sl2 = enumerate_sl2(alg)?;
    timed("sl2_order", &mut || {
        let n = BigUint::from(sl2.order());
        let closed = sl2_order(alg);
        Ok((n == closed, n.to_string(), closed.to_string()))
    })?;
    timed("normal_closure_of_diagonal_sl2", &mut || {
        let h = [embed_fp_matrix(alg, [1, 1, 0, 1]), embed_fp_matrix(alg, [1, 0, 1, 1])];
        let n = normal_closure(&h, &sl2)?;
        Ok((n.order() == sl2.order(), n.order().to_string(), sl2.order().to_string()))
    })?;
    timed("adjoint_irreducibility", &mut || {
        let (ok, seeds) = adjoint_irreducibility(alg)?;
        let observed = if ok { "every seed spans" } else { "some seed spans a proper subspace" };
        Ok((ok, format!("{observed} ({seeds} seeds)"), format!("dim {}", 3 * alg.dim())))
    })?;
    if let Some(k) = k {
        timed("ghat_order", &mut || {
            let n = BigUint::from(enumerate_ghat(alg, k)?.order());
            let closed = ghat_order(alg, k);
            Ok((n == closed, n.to_string(), closed.to_string()))
        })?;
    }
    let all_hold = checks.iter().all(|c| c.holds);
    Ok(SuiteReport { algebra: alg.to_string(), p, k, checks, all_hold })
}
