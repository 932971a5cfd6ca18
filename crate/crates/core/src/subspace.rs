//! F_p-subspaces of F_p^n kept in reduced row echelon form.

use std::fmt;

use crate::fp::inv_mod;

/// What a [`Subspace`] lives inside; only used for reporting and
/// serialization.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    /// The algebra itself, coordinates in its F_p-basis.
    Algebra,
    /// Trace-zero 2×2 matrices, coordinates `(a, b, c)` for `[[a, b], [c, -a]]`.
    TraceZero,
    /// 2×2 matrices whose trace lies in F_p.
    TraceInFp,
    /// Plain F_p^n.
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: u64,
    ambient: Ambient,
    ambient_dim: usize,
    /// RREF rows, sorted by pivot column.
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u64, ambient: Ambient, ambient_dim: usize) -> Self {
        Subspace { p, ambient, ambient_dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(p: u64, ambient: Ambient, ambient_dim: usize) -> Self {
        let mut s = Self::zero(p, ambient, ambient_dim);
        for i in 0..ambient_dim {
            let mut v = vec![0; ambient_dim];
            v[i] = 1;
            s.insert(&v);
        }
        s
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Reduce `v` against the current basis; the result is zero iff `v` lies
    /// in the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let p = self.p;
        let mut w: Vec<u64> = v.iter().map(|c| c % p).collect();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = w[piv];
            if c != 0 {
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = (*wi + p - c * ri % p) % p;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    /// Add `v` to the span. Returns `true` if the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(piv) = w.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = inv_mod(w[piv], p).expect("p prime");
        for c in &mut w {
            *c = *c * inv % p;
        }
        // Clear the new pivot column from the existing rows.
        for row in &mut self.rows {
            let c = row[piv];
            if c != 0 {
                for (ri, wi) in row.iter_mut().zip(&w) {
                    *ri = (*ri + p - c * wi % p) % p;
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < piv);
        self.rows.insert(pos, w);
        self.pivots.insert(pos, piv);
        true
    }

    pub fn span<'a>(p: u64, ambient: Ambient, ambient_dim: usize, vs: impl IntoIterator<Item = &'a [u64]>) -> Self {
        let mut s = Self::zero(p, ambient, ambient_dim);
        for v in vs {
            s.insert(v);
        }
        s
    }
}

/// Line-oriented text form: a header line, then one basis vector per line
/// with space-separated coordinates.
impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ambient = match self.ambient {
            Ambient::Algebra => "algebra",
            Ambient::TraceZero => "trace_zero",
            Ambient::TraceInFp => "trace_in_fp",
            Ambient::Plain => "plain",
        };
        writeln!(f, "# subspace p={} ambient={} ambient_dim={} dim={}", self.p, ambient, self.ambient_dim, self.dim())?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
