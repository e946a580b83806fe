//! Square matrices over a base ring acting on coordinate vectors by
//! `(Tv)_i = Σ_j T_ij v_j`. Column `j` is the image of the basis vector `e_j`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebras::{AlgElem, SharedSpec};
use crate::error::{Error, Result};
use crate::rings::{RingElem, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinMap {
    ring: RingSpec,
    n: usize,
    // row-major
    entries: Vec<RingElem>,
}

impl LinMap {
    pub fn identity(ring: RingSpec, n: usize) -> Self {
        LinMap::from_fn(
            ring,
            n,
            |i, j| if i == j { ring.one() } else { ring.zero() },
        )
    }

    pub fn from_fn(ring: RingSpec, n: usize, mut f: impl FnMut(usize, usize) -> RingElem) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        LinMap { ring, n, entries }
    }

    pub fn from_rows(ring: RingSpec, rows: &[Vec<RingElem>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for x in row {
                if x.ring() != ring {
                    return Err(Error::RingMismatch(ring, x.ring()));
                }
                entries.push(x.clone());
            }
        }
        Ok(LinMap { ring, n, entries })
    }

    pub fn from_i64_rows(ring: RingSpec, rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<RingElem>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| ring.from_i64(x)).collect())
            .collect();
        LinMap::from_rows(ring, &rows)
    }

    /// Builds the matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(ring: RingSpec, cols: &[Vec<RingElem>]) -> Result<Self> {
        let n = cols.len();
        if let Some(c) = cols.iter().find(|c| c.len() != n) {
            return Err(Error::RankMismatch {
                expected: n,
                got: c.len(),
            });
        }
        Ok(LinMap::from_fn(ring, n, |i, j| cols[j][i].clone()))
    }

    /// The matrix of a linear map on an algebra, given by its values on the
    /// canonical basis.
    pub fn of_algebra_map(spec: &SharedSpec, f: impl Fn(&AlgElem) -> AlgElem) -> Self {
        let cols: Vec<Vec<RingElem>> = spec
            .basis_elements()
            .iter()
            .map(|e| f(e).coords().to_vec())
            .collect();
        LinMap::from_columns(spec.ring(), &cols).expect("images have the algebra's rank")
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[i * self.n + j]
    }

    pub fn column(&self, j: usize) -> Vec<RingElem> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<RingElem>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn row_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    pub fn apply(&self, v: &[RingElem]) -> Result<Vec<RingElem>> {
        if v.len() != self.n {
            return Err(Error::RankMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok(self
            .entries
            .chunks(self.n)
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(self.ring.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn apply_elem(&self, x: &AlgElem) -> Result<AlgElem> {
        x.spec().element(self.apply(x.coords())?)
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &LinMap) -> Result<LinMap> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.n != other.n {
            return Err(Error::RankMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let n = self.n;
        Ok(LinMap::from_fn(self.ring, n, |i, j| {
            (0..n).fold(self.ring.zero(), |acc, k| {
                &acc + &(self.get(i, k) * other.get(k, j))
            })
        }))
    }

    pub fn sub(&self, other: &LinMap) -> LinMap {
        LinMap::from_fn(self.ring, self.n, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn transpose(&self) -> LinMap {
        LinMap::from_fn(self.ring, self.n, |i, j| self.get(j, i).clone())
    }

    pub fn det(&self) -> RingElem {
        determinant(self.ring, self.n, |i, j| self.get(i, j).clone())
    }

    pub fn is_invertible(&self) -> bool {
        self.det().is_unit()
    }

    /// det⁻¹ · adj(T).
    pub fn inverse(&self) -> Result<LinMap> {
        let d = self.det().inv().map_err(|_| Error::NotInvertible)?;
        let n = self.n;
        if n == 1 {
            return Ok(LinMap::from_fn(self.ring, 1, |_, _| d.clone()));
        }
        Ok(LinMap::from_fn(self.ring, n, |i, j| {
            // adj_ij = (−1)^{i+j} · minor with row j and column i removed
            let minor = determinant(self.ring, n - 1, |r, c| {
                let r = if r >= j { r + 1 } else { r };
                let c = if c >= i { c + 1 } else { c };
                self.get(r, c).clone()
            });
            let signed = if (i + j) % 2 == 0 { minor } else { -minor };
            &d * &signed
        }))
    }

    /// Rank over a field (ℚ, 𝔽p or ℤ/p with p prime).
    pub fn rank(&self) -> Result<usize> {
        if !self.ring.is_field() {
            return Err(Error::UnsupportedRing {
                ring: self.ring,
                reason: "rank is computed over fields only".into(),
            });
        }
        let mut m = self.rows();
        let n = self.n;
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][col].inv()?;
            for r in 0..n {
                if r != rank && !m[r][col].is_zero() {
                    let f = &m[r][col] * &inv;
                    for c in col..n {
                        let t = &f * &m[rank][c];
                        m[r][c] = &m[r][c] - &t;
                    }
                }
            }
            rank += 1;
        }
        Ok(rank)
    }
}

impl fmt::Display for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .row_strings()
            .into_iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Fraction-free Gaussian elimination over ℤ.
pub(crate) fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub(crate) fn determinant(
    ring: RingSpec,
    n: usize,
    get: impl Fn(usize, usize) -> RingElem,
) -> RingElem {
    match ring {
        RingSpec::Rationals => {
            // scale each row to integers, then divide back
            let mut rows = Vec::with_capacity(n);
            let mut scale = BigInt::one();
            for i in 0..n {
                let row: Vec<_> = (0..n).map(|j| get(i, j).to_rational().unwrap()).collect();
                let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                rows.push(
                    row.iter()
                        .map(|q| q.numer() * (&l / q.denom()))
                        .collect::<Vec<_>>(),
                );
                scale *= l;
            }
            ring.fraction(&bareiss(rows), &scale)
                .expect("nonzero scale")
        }
        _ => {
            let rows = (0..n)
                .map(|i| (0..n).map(|j| get(i, j).to_bigint().unwrap()).collect())
                .collect();
            ring.from_bigint(&bareiss(rows))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Leibniz expansion as an independent determinant oracle.
    fn leibniz(m: &LinMap) -> RingElem {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for k in 0..n {
                    let mut q = p.clone();
                    q.insert(k, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.dim();
        let mut acc = m.ring().zero();
        for p in perms(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let term = (0..n).fold(m.ring().one(), |t, i| &t * m.get(i, p[i]));
            acc = if inversions % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    #[test]
    fn determinant_matches_leibniz() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for ring in [
            RingSpec::Integers,
            RingSpec::Rationals,
            RingSpec::ModRing(9),
            RingSpec::ModRing(8),
            RingSpec::PrimeField(5),
        ] {
            for n in 1..=5 {
                for _ in 0..20 {
                    let m = LinMap::from_fn(ring, n, |_, _| {
                        if rng.gen_bool(0.3) {
                            ring.zero()
                        } else {
                            crate::algebras::random_ring_elem(ring, &mut rng)
                        }
                    });
                    assert_eq!(m.det(), leibniz(&m), "{ring} {m}");
                    if let Ok(inv) = m.inverse() {
                        assert!(m.compose(&inv).unwrap().is_identity());
                        assert!(inv.compose(&m).unwrap().is_identity());
                    } else {
                        assert!(!m.det().is_unit());
                    }
                }
            }
        }
    }

    #[test]
    fn non_local_inverse() {
        // invertible over Z/6 although no entry is a unit
        let r = RingSpec::ModRing(6);
        let m = LinMap::from_i64_rows(r, &[&[2, 3], &[3, 2]]).unwrap();
        assert!(m.is_invertible());
        assert!(m.compose(&m.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn rank_and_apply() {
        let f2 = RingSpec::PrimeField(2);
        let m = LinMap::from_i64_rows(f2, &[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(m.rank().unwrap(), 2);
        assert!(LinMap::identity(RingSpec::Integers, 3).rank().is_err());
        let v: Vec<_> = [1, 0, 1].iter().map(|&x| f2.from_i64(x)).collect();
        assert_eq!(m.apply(&v).unwrap(), vec![f2.one(), f2.one(), f2.one()]);
        assert!(m.apply(&v[..2]).is_err());
        assert_eq!(m.column(2), vec![f2.zero(), f2.zero(), f2.one()]);
    }
}
