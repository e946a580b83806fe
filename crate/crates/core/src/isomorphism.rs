//! Isomorphism search between quaternion algebras over finite rings.

use crate::algebras::{AlgElem, AlgebraKind, AlgebraSpec};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::finite::{all_vectors, from_residues, Echelon, ResidueAlgebra};
use crate::linmap::LinMap;
use crate::rings::prime_divisors;

/// Searches for an algebra isomorphism from `QuaternionSC(a, b)` onto `dst`
/// by looking for `u, v ∈ dst` with `u² = a`, `v² = b`, `uv = −vu` and
/// `1, u, v, uv` a basis. The first pair in lexicographic order wins.
///
/// The returned map sends the canonical basis `1, i, j, ij` of `src` to
/// `1, u, v, uv` in the coordinates of `dst`.
pub fn find_quaternion_isomorphism(
    src: &AlgebraSpec,
    dst: &AlgebraSpec,
    budget: &Budget,
) -> Result<Option<LinMap>> {
    let AlgebraKind::Quaternion { a, b } = src.kind() else {
        return Err(Error::InvalidAlgebra {
            field: "kind".into(),
            reason: format!(
                "expected a quaternion presentation, got {}",
                src.descriptor()
            ),
        });
    };
    if src.ring() != dst.ring() {
        return Err(Error::RingMismatch(src.ring(), dst.ring()));
    }
    if !dst.is_associative() || dst.rank() != 4 {
        return Err(Error::InvalidAlgebra {
            field: "kind".into(),
            reason: format!("{} is not a quaternion algebra", dst.descriptor()),
        });
    }
    let ring = dst.ring();
    let m = ring.require_finite()?;
    let n = 4;
    let total = m.pow(4);
    budget.reserve(total)?;
    budget.charge(total)?;
    let shared = dst.clone().into_shared();
    let alg = ResidueAlgebra::new(&shared)?;
    let one = alg.one.clone();
    let scalar = |t: u64| -> Vec<u64> {
        one.iter()
            .map(|&o| (o as u128 * t as u128 % m as u128) as u64)
            .collect()
    };
    let a_one = scalar(a.residue().unwrap());
    let b_one = scalar(b.residue().unwrap());
    let vectors = all_vectors(m, n);
    let roots = |target: &[u64]| -> Vec<&[u64]> {
        vectors
            .chunks(n)
            .filter(|u| alg.mul(u, u) == target)
            .collect()
    };
    let us = roots(&a_one);
    let vs = roots(&b_one);
    let primes = prime_divisors(m);
    for u in &us {
        for v in &vs {
            budget.charge(1)?;
            let uv = alg.mul(u, v);
            let vu = alg.mul(v, u);
            if uv.iter().zip(&vu).any(|(x, y)| (x + y) % m != 0) {
                continue;
            }
            let cols = [one.as_slice(), u, v, uv.as_slice()];
            let independent = primes.iter().all(|&p| {
                let mut e = Echelon::new(p);
                cols.iter().all(|c| e.try_push(c))
            });
            if independent {
                let cols: Vec<_> = cols.iter().map(|c| from_residues(ring, c)).collect();
                return Ok(Some(LinMap::from_columns(ring, &cols)?));
            }
        }
    }
    Ok(None)
}

/// True when `t` is an invertible unital linear map carrying products of
/// basis elements of `src` to products in `dst`.
pub fn is_algebra_isomorphism(src: &AlgebraSpec, dst: &AlgebraSpec, t: &LinMap) -> Result<bool> {
    if t.dim() != src.rank() || t.dim() != dst.rank() {
        return Err(Error::RankMismatch {
            expected: src.rank(),
            got: t.dim(),
        });
    }
    let src = src.clone().into_shared();
    let dst = dst.clone().into_shared();
    let image = |x: &AlgElem| -> Result<AlgElem> { dst.element(t.apply(x.coords())?) };
    if !t.is_invertible() || image(&src.one())? != dst.one() {
        return Ok(false);
    }
    let basis = src.basis_elements();
    let images: Vec<_> = basis.iter().map(&image).collect::<Result<_>>()?;
    for (x, tx) in basis.iter().zip(&images) {
        for (y, ty) in basis.iter().zip(&images) {
            if image(&(x * y))? != tx * ty {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::RingSpec;

    #[test]
    fn split_quaternions_map_onto_m2() {
        let b = Budget::default();
        for ring in [
            RingSpec::PrimeField(3),
            RingSpec::PrimeField(5),
            RingSpec::ModRing(9),
        ] {
            let m2 = AlgebraSpec::m2(ring);
            for (x, y) in [(1, 1), (2, 2), (-1, -1)] {
                let q = AlgebraSpec::quaternion_i64(ring, x, y).unwrap();
                let t = find_quaternion_isomorphism(&q, &m2, &b)
                    .unwrap()
                    .expect("split");
                assert!(is_algebra_isomorphism(&q, &m2, &t).unwrap());
            }
        }
    }

    #[test]
    fn rejects_non_quaternion_source() {
        let r = RingSpec::PrimeField(3);
        let b = Budget::default();
        assert!(find_quaternion_isomorphism(&AlgebraSpec::m2(r), &AlgebraSpec::m2(r), &b).is_err());
        let q = AlgebraSpec::quaternion_i64(r, 1, 1).unwrap();
        assert!(find_quaternion_isomorphism(&q, &AlgebraSpec::zorn(r), &b).is_err());
        let rq = AlgebraSpec::quaternion_i64(RingSpec::Rationals, -1, -1).unwrap();
        assert!(find_quaternion_isomorphism(&rq, &rq, &b).is_err());
    }

    #[test]
    fn identity_is_an_isomorphism_and_swap_is_not() {
        let r = RingSpec::PrimeField(5);
        let q = AlgebraSpec::quaternion_i64(r, 2, 3).unwrap();
        assert!(is_algebra_isomorphism(&q, &q, &LinMap::identity(r, 4)).unwrap());
        let swap = LinMap::from_i64_rows(
            r,
            &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]],
        )
        .unwrap();
        assert!(!is_algebra_isomorphism(&q, &q, &swap).unwrap());
    }
}
