//! Residue-level kernels for searches over finite rings ℤ/n: flat `u64`
//! vectors, incremental echelon forms modulo a prime, and structure-constant
//! tables for fast algebra products.

use crate::algebras::SharedSpec;
use crate::error::{Error, Result};
use crate::rings::{mod_inverse, RingElem, RingSpec};

pub(crate) fn to_residues(v: &[RingElem]) -> Vec<u64> {
    v.iter()
        .map(|x| x.residue().expect("finite ring element"))
        .collect()
}

pub(crate) fn from_residues(ring: RingSpec, v: &[u64]) -> Vec<RingElem> {
    v.iter().map(|&r| ring.from_residue(r)).collect()
}

/// Every vector of `(ℤ/m)^n` in lexicographic order, flattened.
pub(crate) fn all_vectors(m: u64, n: usize) -> Vec<u64> {
    let total = (m as usize).pow(n as u32);
    let mut out = Vec::with_capacity(total * n);
    let mut digits = vec![0u64; n];
    for _ in 0..total {
        out.extend_from_slice(&digits);
        for k in (0..n).rev() {
            digits[k] += 1;
            if digits[k] < m {
                break;
            }
            digits[k] = 0;
        }
    }
    out
}

/// Row-reduced set of vectors over 𝔽p supporting push/pop, used to keep a
/// partial list of columns linearly independent during backtracking.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new(p: u64) -> Self {
        Echelon {
            p,
            rows: Vec::new(),
        }
    }

    /// Reduces `v` modulo `p` against the stored rows.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut w: Vec<u64> = v.iter().map(|&x| x % p).collect();
        for (piv, row) in &self.rows {
            let f = w[*piv];
            if f != 0 {
                for (a, b) in w.iter_mut().zip(row) {
                    *a = (*a + p - (f * b) % p) % p;
                }
            }
        }
        w
    }

    #[cfg(test)]
    pub fn in_span(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Pushes `v` if it is independent of the stored rows. Stored rows are
    /// never modified, so `pop` is exact.
    pub fn try_push(&mut self, v: &[u64]) -> bool {
        let mut w = self.reduce(v);
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = mod_inverse(w[piv], self.p).expect("nonzero residue mod a prime");
        for x in w.iter_mut() {
            *x = (*x * inv) % self.p;
        }
        self.rows.push((piv, w));
        true
    }

    pub fn pop(&mut self) {
        self.rows.pop();
    }
}

/// Structure constants of a finite algebra: `e_i e_j = Σ_k c_ijk e_k`.
#[derive(Clone, Debug)]
pub(crate) struct ResidueAlgebra {
    pub m: u64,
    pub n: usize,
    // per (i, j): sparse list of (k, c_ijk)
    table: Vec<Vec<(usize, u64)>>,
    pub one: Vec<u64>,
}

impl ResidueAlgebra {
    pub fn new(spec: &SharedSpec) -> Result<Self> {
        let m = spec.ring().require_finite()?;
        if m >= 1 << 32 {
            return Err(Error::UnsupportedRing {
                ring: spec.ring(),
                reason: "structure tables need a modulus below 2^32".into(),
            });
        }
        let n = spec.rank();
        let basis = spec.basis_elements();
        let mut table = Vec::with_capacity(n * n);
        for x in &basis {
            for y in &basis {
                let p = to_residues((x * y).coords());
                table.push(p.into_iter().enumerate().filter(|&(_, c)| c != 0).collect());
            }
        }
        Ok(ResidueAlgebra {
            m,
            n,
            table,
            one: to_residues(spec.one().coords()),
        })
    }

    pub fn mul_into(&self, x: &[u64], y: &[u64], out: &mut [u64]) {
        let m = self.m as u128;
        let mut acc = [0u128; 16];
        let acc = &mut acc[..self.n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let xy = (xi as u128 * yj as u128) % m;
                for &(k, c) in &self.table[i * self.n + j] {
                    acc[k] += xy * c as u128;
                }
            }
        }
        for (o, a) in out.iter_mut().zip(acc.iter()) {
            *o = (a % m) as u64;
        }
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.n];
        self.mul_into(x, y, &mut out);
        out
    }
}
