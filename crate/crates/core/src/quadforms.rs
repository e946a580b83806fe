//! Quadratic forms `q(x) = Σ_{i≤j} c_ij x_i x_j` on free modules of finite
//! rank: norm forms of algebras, polar matrices, representation counts,
//! diagonalization, isotropy and isometry search.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;

use crate::algebras::AlgebraSpec;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::finite::{all_vectors, from_residues, Echelon};
use crate::linmap::LinMap;
use crate::rings::{prime_divisors, RingElem, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadForm {
    ring: RingSpec,
    rank: usize,
    // upper triangle, row by row: c_00, c_01, …, c_0n, c_11, …
    coeffs: Vec<RingElem>,
}

fn tri_index(rank: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * rank - i * (i.saturating_sub(1)) / 2 - i + j
}

impl QuadForm {
    pub fn from_fn(
        ring: RingSpec,
        rank: usize,
        mut f: impl FnMut(usize, usize) -> RingElem,
    ) -> Self {
        let mut coeffs = Vec::with_capacity(rank * (rank + 1) / 2);
        for i in 0..rank {
            for j in i..rank {
                coeffs.push(f(i, j));
            }
        }
        QuadForm { ring, rank, coeffs }
    }

    /// The form with the given upper-triangular coefficients (`c_ij`, i ≤ j,
    /// row by row).
    pub fn new(ring: RingSpec, rank: usize, coeffs: Vec<RingElem>) -> Result<Self> {
        let expected = rank * (rank + 1) / 2;
        if coeffs.len() != expected {
            return Err(Error::RankMismatch {
                expected,
                got: coeffs.len(),
            });
        }
        if let Some(c) = coeffs.iter().find(|c| c.ring() != ring) {
            return Err(Error::RingMismatch(ring, c.ring()));
        }
        Ok(QuadForm { ring, rank, coeffs })
    }

    pub fn diagonal(ring: RingSpec, entries: &[RingElem]) -> Self {
        QuadForm::from_fn(ring, entries.len(), |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                ring.zero()
            }
        })
    }

    pub fn diagonal_i64(ring: RingSpec, entries: &[i64]) -> Self {
        let e: Vec<_> = entries.iter().map(|&x| ring.from_i64(x)).collect();
        QuadForm::diagonal(ring, &e)
    }

    pub fn zero(ring: RingSpec, rank: usize) -> Self {
        QuadForm::from_fn(ring, rank, |_, _| ring.zero())
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `c_ij` for either order of the indices.
    pub fn coeff(&self, i: usize, j: usize) -> &RingElem {
        &self.coeffs[tri_index(self.rank, i, j)]
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rank).all(|i| (i + 1..self.rank).all(|j| self.coeff(i, j).is_zero()))
    }

    fn check_len(&self, v: &[RingElem]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn eval(&self, v: &[RingElem]) -> Result<RingElem> {
        self.check_len(v)?;
        let mut acc = self.ring.zero();
        for i in 0..self.rank {
            for j in i..self.rank {
                let c = self.coeff(i, j);
                if !c.is_zero() {
                    acc = &acc + &(&(c * &v[i]) * &v[j]);
                }
            }
        }
        Ok(acc)
    }

    pub fn polar_matrix(&self) -> PolarMatrix {
        let ring = self.ring;
        PolarMatrix(LinMap::from_fn(ring, self.rank, |i, j| {
            let c = self.coeff(i, j);
            if i == j {
                c + c
            } else {
                c.clone()
            }
        }))
    }

    /// b(x, y) = q(x + y) − q(x) − q(y).
    pub fn polar(&self, x: &[RingElem], y: &[RingElem]) -> Result<RingElem> {
        self.polar_matrix().bilinear(x, y)
    }

    /// True when the polar matrix has unit determinant.
    pub fn is_nonsingular(&self) -> bool {
        self.polar_matrix().0.det().is_unit()
    }

    /// The form `v ↦ q(Tv)`.
    pub fn compose(&self, t: &LinMap) -> Result<QuadForm> {
        if t.dim() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: t.dim(),
            });
        }
        if t.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring, t.ring()));
        }
        let cols: Vec<_> = (0..self.rank).map(|j| t.column(j)).collect();
        let polar = self.polar_matrix();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for i in 0..self.rank {
            coeffs.push(self.eval(&cols[i])?);
            for j in i + 1..self.rank {
                coeffs.push(polar.bilinear(&cols[i], &cols[j])?);
            }
        }
        QuadForm::new(self.ring, self.rank, coeffs)
    }

    /// Number of vectors taking each value, found by a full scan.
    pub fn representation_counts(&self, budget: &Budget) -> Result<BTreeMap<RingElem, u64>> {
        let m = self.ring.require_finite()?;
        let total = m.checked_pow(self.rank as u32).unwrap_or(u64::MAX);
        budget.reserve(total)?;
        budget.charge(total)?;
        let form = ResidueForm::new(self);
        let vectors = all_vectors(m, self.rank);
        let mut counts = vec![0u64; m as usize];
        for v in vectors.chunks(self.rank.max(1)) {
            counts[form.eval(v) as usize] += 1;
        }
        if self.rank == 0 {
            counts = vec![0; m as usize];
            counts[0] = 1;
        }
        Ok(counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(r, c)| (self.ring.from_residue(r as u64), c))
            .collect())
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in 0..self.rank {
            for j in i..self.rank {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let mono = if i == j {
                    format!("x{}^2", i + 1)
                } else {
                    format!("x{}x{}", i + 1, j + 1)
                };
                terms.push(format!("{c}·{mono}"));
            }
        }
        if terms.is_empty() {
            write!(f, "0 (rank {} over {})", self.rank, self.ring)
        } else {
            write!(f, "{} over {}", terms.join(" + "), self.ring)
        }
    }
}

/// Symmetric matrix `M` with `M_ii = 2c_ii`, `M_ij = M_ji = c_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarMatrix(pub LinMap);

impl PolarMatrix {
    pub fn bilinear(&self, x: &[RingElem], y: &[RingElem]) -> Result<RingElem> {
        let my = self.0.apply(y)?;
        if x.len() != my.len() {
            return Err(Error::RankMismatch {
                expected: my.len(),
                got: x.len(),
            });
        }
        Ok(x.iter()
            .zip(&my)
            .fold(self.0.ring().zero(), |acc, (a, b)| &acc + &(a * b)))
    }

    pub fn det(&self) -> RingElem {
        self.0.det()
    }
}

/// The norm form of a composition algebra in its canonical basis.
pub fn form_from_algebra(spec: &AlgebraSpec) -> QuadForm {
    let shared = spec.clone().into_shared();
    let basis = shared.basis_elements();
    let norms: Vec<RingElem> = basis.iter().map(|e| e.norm()).collect();
    QuadForm::from_fn(spec.ring(), spec.rank(), |i, j| {
        if i == j {
            norms[i].clone()
        } else {
            &(&(&basis[i] + &basis[j]).norm() - &norms[i]) - &norms[j]
        }
    })
}

/// Residue copy of a form over ℤ/m for tight loops.
#[derive(Clone, Debug)]
pub(crate) struct ResidueForm {
    pub m: u64,
    pub n: usize,
    // full upper-triangular coefficient grid, zeros below the diagonal
    coeff: Vec<u64>,
    // polar matrix
    polar: Vec<u64>,
}

impl ResidueForm {
    pub fn new(q: &QuadForm) -> Self {
        let m = q.ring.modulus().expect("finite ring");
        let n = q.rank;
        let mut coeff = vec![0u64; n * n];
        let mut polar = vec![0u64; n * n];
        for i in 0..n {
            for j in i..n {
                let c = q.coeff(i, j).residue().unwrap();
                coeff[i * n + j] = c;
                if i == j {
                    polar[i * n + i] = (2 * c as u128 % m as u128) as u64;
                } else {
                    polar[i * n + j] = c;
                    polar[j * n + i] = c;
                }
            }
        }
        ResidueForm { m, n, coeff, polar }
    }

    pub fn eval(&self, v: &[u64]) -> u64 {
        let m = self.m as u128;
        let mut acc = 0u128;
        for i in 0..self.n {
            if v[i] == 0 {
                continue;
            }
            let mut row = 0u128;
            for j in i..self.n {
                row += self.coeff[i * self.n + j] as u128 * v[j] as u128 % m;
            }
            acc = (acc + (row % m) * v[i] as u128) % m;
        }
        acc as u64
    }

    pub fn polar_entry(&self, i: usize, j: usize) -> u64 {
        self.polar[i * self.n + j]
    }

    pub fn bilinear(&self, x: &[u64], y: &[u64]) -> u64 {
        let m = self.m as u128;
        let mut acc = 0u128;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            let mut row = 0u128;
            for j in 0..self.n {
                row += self.polar[i * self.n + j] as u128 * y[j] as u128 % m;
            }
            acc = (acc + (row % m) * x[i] as u128) % m;
        }
        acc as u64
    }
}

/// Result of [`diagonalize`]: `form(v) = q(transform · v)` identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonalization {
    pub form: QuadForm,
    pub transform: LinMap,
}

/// Congruence diagonalization by completing squares, allowing a degenerate
/// (zero) tail. Requires a field in which 2 is a unit.
fn diagonalize_any(q: &QuadForm) -> Result<Diagonalization> {
    let ring = q.ring;
    if !ring.two_is_unit() {
        return Err(Error::CharTwo(ring));
    }
    if !ring.is_field() {
        return Err(Error::UnsupportedRing {
            ring,
            reason: "diagonalization needs a field".into(),
        });
    }
    let n = q.rank;
    let half = ring.from_i64(2).inv()?;
    // Gram matrix G with q(v) = vᵀGv
    let mut g: Vec<Vec<RingElem>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        q.coeff(i, i).clone()
                    } else {
                        &half * q.coeff(i, j)
                    }
                })
                .collect()
        })
        .collect();
    // columns of the change of basis
    let mut t: Vec<Vec<RingElem>> = LinMap::identity(ring, n).rows().into_iter().collect();

    fn add_multiple(
        g: &mut [Vec<RingElem>],
        t: &mut [Vec<RingElem>],
        dst: usize,
        src: usize,
        f: &RingElem,
    ) {
        // e_dst ← e_dst + f·e_src
        let n = g.len();
        for r in 0..n {
            let v = &g[r][dst] + &(f * &g[r][src]);
            g[r][dst] = v;
        }
        for c in 0..n {
            let v = &g[dst][c] + &(f * &g[src][c]);
            g[dst][c] = v;
        }
        for r in 0..n {
            let v = &t[r][dst] + &(f * &t[r][src]);
            t[r][dst] = v;
        }
    }

    for k in 0..n {
        if g[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !g[j][j].is_zero()) {
                g.swap(k, j);
                for row in g.iter_mut() {
                    row.swap(k, j);
                }
                for row in t.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !g[k][j].is_zero()) {
                add_multiple(&mut g, &mut t, k, j, &ring.one());
            } else {
                continue;
            }
        }
        let pivot_inv = g[k][k].inv()?;
        for j in k + 1..n {
            if !g[k][j].is_zero() {
                let f = -(&g[k][j] * &pivot_inv);
                add_multiple(&mut g, &mut t, j, k, &f);
            }
        }
    }
    let diag: Vec<RingElem> = (0..n).map(|i| g[i][i].clone()).collect();
    Ok(Diagonalization {
        form: QuadForm::diagonal(ring, &diag),
        transform: LinMap::from_rows(ring, &t)?,
    })
}

/// Diagonalizes a non-singular form over ℚ or 𝔽p (p odd).
pub fn diagonalize(q: &QuadForm) -> Result<Diagonalization> {
    if !q.ring.two_is_unit() {
        return Err(Error::CharTwo(q.ring));
    }
    if q.ring.is_field() && !q.is_nonsingular() {
        return Err(Error::Singular);
    }
    diagonalize_any(q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isotropy {
    /// A nonzero vector on which the form vanishes.
    Isotropic(Vec<RingElem>),
    Anisotropic,
    Unknown,
}

/// Decides isotropy exhaustively over finite rings; over ℤ and ℚ uses a
/// diagonal sign certificate and answers `Unknown` when it is inconclusive.
pub fn is_isotropic(q: &QuadForm, budget: &Budget) -> Result<Isotropy> {
    match q.ring {
        RingSpec::ModRing(m) | RingSpec::PrimeField(m) => {
            let form = ResidueForm::new(q);
            let total = m.checked_pow(q.rank as u32).unwrap_or(u64::MAX);
            budget.reserve(total)?;
            let vectors = all_vectors(m, q.rank);
            for v in vectors.chunks(q.rank.max(1)).skip(1) {
                budget.charge(1)?;
                if form.eval(v) == 0 {
                    return Ok(Isotropy::Isotropic(from_residues(q.ring, v)));
                }
            }
            Ok(Isotropy::Anisotropic)
        }
        RingSpec::Rationals => rational_isotropy(q),
        RingSpec::Integers => {
            // isotropic over ℤ iff over ℚ: clear denominators of a witness
            let qq = QuadForm::from_fn(RingSpec::Rationals, q.rank, |i, j| {
                RingSpec::Rationals.from_bigint(&q.coeff(i, j).to_bigint().unwrap())
            });
            Ok(match rational_isotropy(&qq)? {
                Isotropy::Isotropic(w) => {
                    let l = w.iter().fold(BigInt::one(), |acc, x| {
                        acc.lcm(x.to_rational().unwrap().denom())
                    });
                    Isotropy::Isotropic(
                        w.iter()
                            .map(|x| {
                                let r = x.to_rational().unwrap()
                                    * num_rational::BigRational::from_integer(l.clone());
                                RingSpec::Integers.from_bigint(&r.to_integer())
                            })
                            .collect(),
                    )
                }
                other => other,
            })
        }
    }
}

fn rational_isotropy(q: &QuadForm) -> Result<Isotropy> {
    let d = diagonalize_any(q)?;
    let ring = q.ring;
    let n = q.rank;
    let diag: Vec<RingElem> = (0..n).map(|i| d.form.coeff(i, i).clone()).collect();
    let mut e = vec![ring.zero(); n];
    if let Some(k) = diag.iter().position(|x| x.is_zero()) {
        e[k] = ring.one();
        return Ok(Isotropy::Isotropic(d.transform.apply(&e)?));
    }
    let pos = diag
        .iter()
        .filter(|x| x.sign() == Some(Ordering::Greater))
        .count();
    if n == 0 || pos == 0 || pos == n {
        return Ok(Isotropy::Anisotropic);
    }
    for i in 0..n {
        for j in 0..n {
            if diag[i].sign() == Some(Ordering::Greater) && diag[j].sign() == Some(Ordering::Less) {
                let ratio = -(&diag[j] * &diag[i].inv()?);
                if let Some(s) = ratio.rational_sqrt() {
                    e[i] = s;
                    e[j] = ring.one();
                    return Ok(Isotropy::Isotropic(d.transform.apply(&e)?));
                }
            }
        }
    }
    Ok(Isotropy::Unknown)
}

/// True when `t` is invertible and `q1(v) = q2(t v)` coefficient-wise.
pub fn is_isometry(q1: &QuadForm, q2: &QuadForm, t: &LinMap) -> bool {
    t.is_invertible() && q2.compose(t).map(|c| &c == q1).unwrap_or(false)
}

/// Backtracking over the images of the basis vectors. `limit` stops after
/// that many isometries have been found.
pub(crate) fn search_isometries(
    q1: &QuadForm,
    q2: &QuadForm,
    budget: &Budget,
    limit: Option<usize>,
) -> Result<Vec<LinMap>> {
    if q1.ring != q2.ring {
        return Err(Error::RingMismatch(q1.ring, q2.ring));
    }
    if q1.rank != q2.rank {
        return Err(Error::RankMismatch {
            expected: q1.rank,
            got: q2.rank,
        });
    }
    let ring = q1.ring;
    let m = ring.require_finite()?;
    let n = q1.rank;
    if n == 0 {
        return Ok(vec![LinMap::identity(ring, 0)]);
    }
    let total = m.checked_pow(n as u32).unwrap_or(u64::MAX);
    budget.reserve(total)?;
    budget.charge(total)?;
    let f1 = ResidueForm::new(q1);
    let f2 = ResidueForm::new(q2);
    let vectors = all_vectors(m, n);
    let values: Vec<u64> = vectors.chunks(n).map(|v| f2.eval(v)).collect();
    // candidates for column i: vectors with q2(t) = q1(e_i)
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let target = f1.coeff[i * n + i];
            (0..values.len()).filter(|&k| values[k] == target).collect()
        })
        .collect();
    let primes = prime_divisors(m);

    struct Search<'a> {
        n: usize,
        vectors: &'a [u64],
        candidates: &'a [Vec<usize>],
        f1: &'a ResidueForm,
        f2: &'a ResidueForm,
        budget: &'a Budget,
        limit: Option<usize>,
    }

    impl Search<'_> {
        fn vec(&self, k: usize) -> &[u64] {
            &self.vectors[k * self.n..(k + 1) * self.n]
        }

        fn dfs(
            &self,
            chosen: &mut Vec<usize>,
            echelons: &mut [Echelon],
            out: &mut Vec<Vec<usize>>,
        ) -> Result<()> {
            let i = chosen.len();
            if i == self.n {
                out.push(chosen.clone());
                return Ok(());
            }
            for &k in &self.candidates[i] {
                if self.limit.is_some_and(|l| out.len() >= l) {
                    return Ok(());
                }
                self.budget.charge(1)?;
                let t = self.vec(k);
                let polar_ok = chosen
                    .iter()
                    .enumerate()
                    .all(|(a, &ka)| self.f2.bilinear(self.vec(ka), t) == self.f1.polar_entry(a, i));
                if !polar_ok {
                    continue;
                }
                let mut pushed = 0;
                for e in echelons.iter_mut() {
                    if e.try_push(t) {
                        pushed += 1;
                    } else {
                        break;
                    }
                }
                if pushed == echelons.len() {
                    chosen.push(k);
                    self.dfs(chosen, echelons, out)?;
                    chosen.pop();
                }
                for e in echelons[..pushed].iter_mut() {
                    e.pop();
                }
            }
            Ok(())
        }
    }

    let search = Search {
        n,
        vectors: &vectors,
        candidates: &candidates,
        f1: &f1,
        f2: &f2,
        budget,
        limit,
    };
    let new_echelons = || primes.iter().map(|&p| Echelon::new(p)).collect::<Vec<_>>();
    let run_branch = |k: usize| -> Result<Vec<Vec<usize>>> {
        let mut echelons = new_echelons();
        let t = search.vec(k);
        let mut out = Vec::new();
        if echelons.iter_mut().all(|e| e.try_push(t)) {
            search.dfs(&mut vec![k], &mut echelons, &mut out)?;
        }
        Ok(out)
    };
    let found: Vec<Vec<usize>> = match limit {
        // first-found in sequential order
        Some(l) => {
            let mut out = Vec::new();
            for &k in &candidates[0] {
                budget.charge(1)?;
                out.extend(run_branch(k)?);
                if out.len() >= l {
                    out.truncate(l);
                    break;
                }
            }
            out
        }
        None => {
            let branches: Vec<Result<Vec<Vec<usize>>>> =
                candidates[0].par_iter().map(|&k| run_branch(k)).collect();
            let mut out = Vec::new();
            for b in branches {
                out.extend(b?);
            }
            out
        }
    };
    Ok(found
        .into_iter()
        .map(|cols| {
            let cols: Vec<Vec<RingElem>> = cols
                .iter()
                .map(|&k| from_residues(ring, search.vec(k)))
                .collect();
            LinMap::from_columns(ring, &cols).expect("square")
        })
        .collect())
}

/// First isometry `T` with `q1(v) = q2(Tv)` in deterministic search order, or
/// `None` when exhaustive search proves none exists.
pub fn find_isometry(q1: &QuadForm, q2: &QuadForm, budget: &Budget) -> Result<Option<LinMap>> {
    let found = search_isometries(q1, q2, budget, Some(1))?;
    Ok(found.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::AlgebraSpec;

    fn f(p: u64) -> RingSpec {
        RingSpec::PrimeField(p)
    }

    fn vecs(ring: RingSpec, n: usize) -> Vec<Vec<RingElem>> {
        let m = ring.modulus().unwrap();
        all_vectors(m, n)
            .chunks(n)
            .map(|v| from_residues(ring, v))
            .collect()
    }

    #[test]
    fn triangle_indexing() {
        let n = 4;
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                assert_eq!(tri_index(n, i, j), k);
                assert_eq!(tri_index(n, j, i), k);
                k += 1;
            }
        }
    }

    #[test]
    fn algebra_forms() {
        let z = RingSpec::Integers;
        let m2 = form_from_algebra(&AlgebraSpec::m2(z));
        for i in 0..4 {
            for j in i..4 {
                let expect = match (i, j) {
                    (0, 3) => 1,
                    (1, 2) => -1,
                    _ => 0,
                };
                assert_eq!(m2.coeff(i, j), &z.from_i64(expect));
            }
        }
        let h =
            form_from_algebra(&AlgebraSpec::quaternion_i64(RingSpec::Rationals, -1, -1).unwrap());
        assert_eq!(
            h,
            QuadForm::diagonal_i64(RingSpec::Rationals, &[1, 1, 1, 1])
        );
        let coords: Vec<_> = [1, 2, 3, 4].iter().map(|&x| z.from_i64(x)).collect();
        assert_eq!(m2.eval(&coords).unwrap(), z.from_i64(-2));
        assert!(m2.eval(&coords[..3]).is_err());
    }

    #[test]
    fn eval_examples() {
        let q4 = QuadForm::diagonal_i64(RingSpec::Rationals, &[1, 1, 1, 1]);
        let ones = vec![RingSpec::Rationals.one(); 4];
        assert_eq!(q4.eval(&ones).unwrap(), RingSpec::Rationals.from_i64(4));
        assert!(q4
            .eval(&vec![RingSpec::Rationals.zero(); 4])
            .unwrap()
            .is_zero());
    }

    #[test]
    fn nonsingularity() {
        assert!(form_from_algebra(&AlgebraSpec::zorn(f(2))).is_nonsingular());
        for (a, b) in [(1, 1), (2, 3), (4, 2)] {
            let spec = AlgebraSpec::quaternion_i64(f(5), a, b).unwrap();
            let q = form_from_algebra(&spec);
            assert!(q.is_nonsingular());
            let ab = f(5).from_i64(a * b);
            assert_eq!(q.polar_matrix().det(), &f(5).from_i64(16) * &(&ab * &ab));
        }
        assert!(!QuadForm::diagonal_i64(RingSpec::Integers, &[1]).is_nonsingular());
    }

    #[test]
    fn polarization_exhaustive() {
        for ring in [f(2), f(3), RingSpec::ModRing(4)] {
            let forms = [
                form_from_algebra(&AlgebraSpec::m2(ring)),
                QuadForm::from_fn(ring, 3, |i, j| ring.from_i64((i + 2 * j + 1) as i64)),
            ];
            for q in &forms {
                let vs = vecs(ring, q.rank());
                for x in &vs {
                    for y in &vs {
                        let s: Vec<_> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                        let lhs =
                            &(&q.eval(&s).unwrap() - &q.eval(x).unwrap()) - &q.eval(y).unwrap();
                        assert_eq!(q.polar(x, y).unwrap(), lhs);
                    }
                    for t in ring.elements().unwrap() {
                        let tx: Vec<_> = x.iter().map(|a| &t * a).collect();
                        assert_eq!(q.eval(&tx).unwrap(), &t.square() * &q.eval(x).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn representation_count_examples() {
        let b = Budget::default();
        let det = form_from_algebra(&AlgebraSpec::m2(f(2)));
        let counts = det.representation_counts(&b).unwrap();
        assert_eq!(counts, BTreeMap::from([(f(2).zero(), 10), (f(2).one(), 6)]));
        let zero = QuadForm::zero(f(3), 1).representation_counts(&b).unwrap();
        assert_eq!(zero, BTreeMap::from([(f(3).zero(), 3)]));
        let one = QuadForm::diagonal_i64(f(3), &[1])
            .representation_counts(&b)
            .unwrap();
        assert_eq!(one, BTreeMap::from([(f(3).zero(), 1), (f(3).one(), 2)]));
        assert!(QuadForm::zero(RingSpec::Rationals, 1)
            .representation_counts(&b)
            .is_err());
        assert!(matches!(
            form_from_algebra(&AlgebraSpec::zorn(f(5))).representation_counts(&Budget::new(1000)),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn diagonalize_examples() {
        let q = RingSpec::Rationals;
        let d4 = QuadForm::diagonal_i64(q, &[1, 1, 1, 1]);
        let d = diagonalize(&d4).unwrap();
        assert_eq!(d.form, d4);
        assert!(d.transform.is_identity());

        let det = form_from_algebra(&AlgebraSpec::m2(q));
        let d = diagonalize(&det).unwrap();
        assert!(d.form.is_diagonal());
        assert_eq!(det.compose(&d.transform).unwrap(), d.form);
        assert!(d.transform.is_invertible());
        let signs: Vec<_> = (0..4).map(|i| d.form.coeff(i, i).sign().unwrap()).collect();
        assert_eq!(signs.iter().filter(|s| **s == Ordering::Greater).count(), 2);
        assert_eq!(signs.iter().filter(|s| **s == Ordering::Less).count(), 2);

        assert_eq!(
            diagonalize(&form_from_algebra(&AlgebraSpec::m2(f(2)))),
            Err(Error::CharTwo(f(2)))
        );
        assert_eq!(
            diagonalize(&QuadForm::diagonal_i64(q, &[1, 0])),
            Err(Error::Singular)
        );
    }

    #[test]
    fn diagonalize_over_prime_fields() {
        for p in [3, 5, 7] {
            let ring = f(p);
            for spec in [
                AlgebraSpec::m2(ring),
                AlgebraSpec::zorn(ring),
                AlgebraSpec::split_doubled(ring),
            ] {
                let qf = form_from_algebra(&spec);
                let d = diagonalize(&qf).unwrap();
                assert!(d.form.is_diagonal());
                assert_eq!(qf.compose(&d.transform).unwrap(), d.form);
            }
        }
    }

    #[test]
    fn isotropy_examples() {
        let b = Budget::default();
        let q = RingSpec::Rationals;
        let split = form_from_algebra(&AlgebraSpec::split_doubled(q));
        // (I, I) is null
        let ii: Vec<_> = [1, 0, 0, 1, 1, 0, 0, 1]
            .iter()
            .map(|&x| q.from_i64(x))
            .collect();
        assert!(split.eval(&ii).unwrap().is_zero());
        match is_isotropic(&split, &b).unwrap() {
            Isotropy::Isotropic(w) => {
                assert!(w.iter().any(|x| !x.is_zero()));
                assert!(split.eval(&w).unwrap().is_zero());
            }
            other => panic!("expected isotropic, got {other:?}"),
        }
        assert_eq!(
            is_isotropic(&QuadForm::diagonal_i64(q, &[1, 1, 1, 1]), &b).unwrap(),
            Isotropy::Anisotropic
        );
        assert!(matches!(
            is_isotropic(&form_from_algebra(&AlgebraSpec::zorn(f(2))), &b).unwrap(),
            Isotropy::Isotropic(_)
        ));
        // x² − 2y² is anisotropic over ℚ but the sign test cannot decide it
        assert_eq!(
            is_isotropic(&QuadForm::diagonal_i64(q, &[1, -2]), &b).unwrap(),
            Isotropy::Unknown
        );
        assert_eq!(
            is_isotropic(&QuadForm::diagonal_i64(f(3), &[1, 1]), &b).unwrap(),
            Isotropy::Anisotropic
        );
        let zm2 = form_from_algebra(&AlgebraSpec::m2(RingSpec::Integers));
        match is_isotropic(&zm2, &b).unwrap() {
            Isotropy::Isotropic(w) => assert!(zm2.eval(&w).unwrap().is_zero()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn isometry_examples() {
        let b = Budget::default();
        let q = form_from_algebra(&AlgebraSpec::m2(f(3)));
        let t = find_isometry(&q, &q, &b).unwrap().unwrap();
        assert!(is_isometry(&q, &q, &t));

        let a = QuadForm::diagonal_i64(f(5), &[1, 1]);
        let c = QuadForm::diagonal_i64(f(5), &[1, -1]);
        let t = find_isometry(&a, &c, &b).unwrap().unwrap();
        assert!(is_isometry(&a, &c, &t));

        let a = QuadForm::diagonal_i64(f(3), &[1, 1]);
        let c = QuadForm::diagonal_i64(f(3), &[1, 2]);
        assert_eq!(find_isometry(&a, &c, &b).unwrap(), None);

        let qq = QuadForm::diagonal_i64(RingSpec::Rationals, &[1]);
        assert_eq!(
            find_isometry(&qq, &qq, &b),
            Err(Error::InfiniteRing(RingSpec::Rationals))
        );
        assert!(find_isometry(&a, &QuadForm::diagonal_i64(f(3), &[1]), &b).is_err());
    }

    #[test]
    fn isometry_search_uses_unit_determinant_over_z9() {
        let b = Budget::default();
        let r = RingSpec::ModRing(9);
        let q = form_from_algebra(&AlgebraSpec::quaternion_i64(r, 2, 5).unwrap());
        let h = form_from_algebra(&AlgebraSpec::m2(r));
        let t = find_isometry(&q, &h, &b).unwrap().expect("split over Z/9");
        assert!(is_isometry(&q, &h, &t));
    }

    // Plain filter over all of GL2(F3) as an oracle for the enumerator.
    #[test]
    fn orthogonal_count_of_hyperbolic_plane() {
        let ring = f(3);
        let h = QuadForm::from_fn(
            ring,
            2,
            |i, j| if i != j { ring.one() } else { ring.zero() },
        );
        let found = search_isometries(&h, &h, &Budget::default(), None).unwrap();
        let mut brute = 0;
        for v in vecs(ring, 4) {
            let t = LinMap::from_rows(ring, &[v[..2].to_vec(), v[2..].to_vec()]).unwrap();
            if is_isometry(&h, &h, &t) {
                brute += 1;
            }
        }
        // diag(t, 1/t) and the swap composed with it
        assert_eq!(brute, 4);
        assert_eq!(found.len(), 4);
    }
}
