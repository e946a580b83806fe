use rayon::prelude::*;

use crate::algebras::AlgebraSpec;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::finite::{all_vectors, from_residues, to_residues, Echelon, ResidueAlgebra};
use crate::linmap::LinMap;

use super::{GroupKind, PointSet};

/// A linear map known on a subspace, stored as augmented rows `[x | T x]`
/// in semi-echelon form with pivots in the source part.
#[derive(Clone)]
struct PartialHom<'a> {
    alg: &'a ResidueAlgebra,
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
    images: Echelon,
    // unreduced source/image pairs spanning the domain, in insertion order
    pairs: Vec<(Vec<u64>, Vec<u64>)>,
}

enum Added {
    New,
    Known,
}

struct Conflict;

impl<'a> PartialHom<'a> {
    fn new(alg: &'a ResidueAlgebra) -> Self {
        PartialHom {
            alg,
            p: alg.m,
            rows: Vec::new(),
            images: Echelon::new(alg.m),
            pairs: Vec::new(),
        }
    }

    fn n(&self) -> usize {
        self.alg.n
    }

    fn is_total(&self) -> bool {
        self.rows.len() == self.n()
    }

    fn reduce(&self, mut w: Vec<u64>) -> Vec<u64> {
        let p = self.p;
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

    /// Records `T x = y`, failing if this contradicts what is known or
    /// makes `T` non-injective.
    fn add(&mut self, x: &[u64], y: &[u64]) -> std::result::Result<Added, Conflict> {
        let n = self.n();
        let w = self.reduce(x.iter().chain(y).copied().collect());
        let Some(piv) = w[..n].iter().position(|&c| c != 0) else {
            return if w[n..].iter().all(|&c| c == 0) {
                Ok(Added::Known)
            } else {
                Err(Conflict)
            };
        };
        if !self.images.try_push(y) {
            return Err(Conflict);
        }
        let inv = crate::rings::mod_inverse(w[piv], self.p).expect("prime field");
        let w = w.into_iter().map(|c| c * inv % self.p).collect();
        self.rows.push((piv, w));
        self.pairs.push((x.to_vec(), y.to_vec()));
        Ok(Added::New)
    }

    /// Extends the domain to the subalgebra it generates, checking
    /// multiplicativity on every pair of known basis elements.
    fn close(&mut self, mut k: usize) -> std::result::Result<(), Conflict> {
        while k < self.pairs.len() {
            for a in 0..=k {
                for (i, j) in [(a, k), (k, a)] {
                    let x = self.alg.mul(&self.pairs[i].0, &self.pairs[j].0);
                    let y = self.alg.mul(&self.pairs[i].1, &self.pairs[j].1);
                    self.add(&x, &y)?;
                }
            }
            k += 1;
        }
        Ok(())
    }

    /// Images of the standard basis once the map is total.
    fn columns(&self) -> Vec<Vec<u64>> {
        let n = self.n();
        (0..n)
            .map(|j| {
                let mut e = vec![0u64; 2 * n];
                e[j] = 1;
                let w = self.reduce(e);
                // the reduction subtracts T e_j from the zero image part
                w[n..].iter().map(|&c| (self.p - c) % self.p).collect()
            })
            .collect()
    }
}

/// Enumerates the automorphism group of an algebra over a prime field by
/// backtracking over the images of a generating set of basis elements.
///
/// Each generator `g` satisfies `g² = tr(g)·g − n(g)·1`, so only vectors
/// satisfying the same relation are tried as its image. After each choice
/// the map is extended to the generated subalgebra and checked to be
/// multiplicative and injective there.
pub fn aut_enumerate(spec: &AlgebraSpec, budget: &Budget) -> Result<PointSet<LinMap>> {
    let ring = spec.ring();
    if !matches!(ring, crate::rings::RingSpec::PrimeField(_)) {
        return Err(Error::UnsupportedRing {
            ring,
            reason: "automorphism enumeration needs a prime field".into(),
        });
    }
    let shared = spec.clone().into_shared();
    let alg = ResidueAlgebra::new(&shared)?;
    let (p, n) = (alg.m, alg.n);
    let total = p.checked_pow(n as u32).unwrap_or(u64::MAX);
    budget.reserve(total)?;
    budget.charge(total)?;

    let basis = shared.basis_elements();
    let unit = |i: usize| -> Vec<u64> { to_residues(basis[i].coords()) };
    let mut root = PartialHom::new(&alg);
    if root.add(&alg.one, &alg.one).is_err() {
        unreachable!("empty map accepts 1 ↦ 1");
    }
    let _ = root.close(0);
    // greedy generators: basis elements outside the subalgebra generated so far
    let mut generators = Vec::new();
    let mut probe = root.clone();
    for i in 0..n {
        let e = unit(i);
        let start = probe.pairs.len();
        if let Ok(Added::New) = probe.add(&e, &e) {
            generators.push(i);
            if probe.close(start).is_err() {
                unreachable!("identity is multiplicative");
            }
        }
        if probe.is_total() {
            break;
        }
    }

    let vectors = all_vectors(p, n);
    let candidates: Vec<Vec<&[u64]>> = generators
        .iter()
        .map(|&i| {
            let tr = basis[i].trace().residue().unwrap();
            let nm = basis[i].norm().residue().unwrap();
            vectors
                .chunks(n)
                .filter(|t| {
                    let sq = alg.mul(t, t);
                    (0..n).all(|k| {
                        let rhs = (tr * t[k] % p + p - nm * alg.one[k] % p) % p;
                        sq[k] == rhs
                    })
                })
                .collect()
        })
        .collect();

    fn dfs(
        state: &PartialHom,
        level: usize,
        generators: &[usize],
        candidates: &[Vec<&[u64]>],
        unit: &dyn Fn(usize) -> Vec<u64>,
        budget: &Budget,
        out: &mut Vec<Vec<Vec<u64>>>,
    ) -> Result<()> {
        if level == generators.len() {
            if state.is_total() {
                out.push(state.columns());
            }
            return Ok(());
        }
        let g = unit(generators[level]);
        for t in &candidates[level] {
            budget.charge(1)?;
            let mut next = state.clone();
            let start = next.pairs.len();
            if next.add(&g, t).is_err() || next.close(start).is_err() {
                continue;
            }
            dfs(&next, level + 1, generators, candidates, unit, budget, out)?;
        }
        Ok(())
    }

    let found: Vec<Vec<Vec<u64>>> = if generators.is_empty() {
        vec![root.columns()]
    } else {
        let g0 = unit(generators[0]);
        let branches: Vec<Result<Vec<Vec<Vec<u64>>>>> = candidates[0]
            .par_iter()
            .map(|t| {
                budget.charge(1)?;
                let mut out = Vec::new();
                let mut next = root.clone();
                let start = next.pairs.len();
                if next.add(&g0, t).is_ok() && next.close(start).is_ok() {
                    dfs(&next, 1, &generators, &candidates, &unit, budget, &mut out)?;
                }
                Ok(out)
            })
            .collect();
        let mut all = Vec::new();
        for b in branches {
            all.extend(b?);
        }
        all
    };
    let maps = found
        .into_iter()
        .map(|cols| {
            let cols: Vec<_> = cols.iter().map(|c| from_residues(ring, c)).collect();
            LinMap::from_columns(ring, &cols).expect("square")
        })
        .collect();
    Ok(PointSet::new(GroupKind::Aut, maps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouppoints::is_algebra_automorphism;
    use crate::quadforms::{form_from_algebra, is_isometry};
    use crate::rings::RingSpec;

    #[test]
    fn aut_of_m2_is_pgl2() {
        for (p, order) in [(2, 6), (3, 24)] {
            let spec = AlgebraSpec::m2(RingSpec::PrimeField(p));
            let aut = aut_enumerate(&spec, &Budget::default()).unwrap();
            assert_eq!(aut.len(), order);
            assert!(aut.is_group());
            for t in aut.elements() {
                assert!(is_algebra_automorphism(&spec, t).unwrap());
            }
        }
    }

    #[test]
    fn aut_of_hamilton_over_f3() {
        // split over 𝔽₃, so again PGL₂(𝔽₃)
        let spec = AlgebraSpec::quaternion_i64(RingSpec::PrimeField(3), -1, -1).unwrap();
        let aut = aut_enumerate(&spec, &Budget::default()).unwrap();
        assert_eq!(aut.len(), 24);
        let q = form_from_algebra(&spec);
        assert!(aut.elements().iter().all(|t| is_isometry(&q, &q, t)));
    }

    #[test]
    fn rejects_composite_moduli_and_small_budgets() {
        let spec = AlgebraSpec::m2(RingSpec::ModRing(4));
        assert!(matches!(
            aut_enumerate(&spec, &Budget::default()),
            Err(Error::UnsupportedRing { .. })
        ));
        let zorn = AlgebraSpec::zorn(RingSpec::PrimeField(2));
        assert!(matches!(
            aut_enumerate(&zorn, &Budget::new(100)),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
