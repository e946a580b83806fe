//! Composition algebras as values: M₂, structure-constant quaternions (a, b),
//! Zorn vector matrices and the doubling construction.
//!
//! Canonical bases, fixed everywhere in the crate:
//!
//! | kind                 | basis                                   |
//! |----------------------|-----------------------------------------|
//! | `M2`                 | E11, E12, E21, E22                      |
//! | `Quaternion { a, b }`| 1, i, j, ij  with i² = a, j² = b, ij = −ji |
//! | `Zorn`               | d1, d2, u1, u2, u3, w1, w2, w3          |
//! | `Doubled`            | base basis on (x, 0), then on (0, y)    |
//!
//! A Zorn element `[[a, v], [w, b]]` has coordinates (a, b, v1, v2, v3, w1,
//! w2, w3). Its product is
//!
//! ```text
//! [[a, v],[w, b]]·[[a', v'],[w', b']] =
//!   [[aa' + ⟨v, w'⟩,  a v' + b' v − w × w'],
//!    [a' w + b w' + v × v',  bb' + ⟨w, v'⟩]]
//! ```
//!
//! with norm `ab − ⟨v, w⟩`. The doubling of a quaternionic base `A` with
//! involution σ and unit λ multiplies as
//! `(x, y)(u, v) = (xu + λ·v σ(y), σ(x) v + u y)` and has norm
//! `N(x) − λ·N(y)`. At λ = 1 over M₂ this is the split octonion algebra built
//! from two copies of M₂ with norm det(x) − det(y).
//!
//! Trace is the polarization of the norm against 1 and conjugation is
//! `trace(x)·1 − x` for every kind.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;

use crate::error::{Error, Result};
use crate::mat2;
use crate::rings::{RingElem, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    M2,
    Quaternion {
        a: RingElem,
        b: RingElem,
    },
    Zorn,
    /// Doubling of an `M2` or `Quaternion` base with parameter λ.
    Doubled {
        base: Box<AlgebraKind>,
        lambda: RingElem,
    },
}

impl AlgebraKind {
    pub fn rank(&self) -> usize {
        match self {
            AlgebraKind::M2 | AlgebraKind::Quaternion { .. } => 4,
            AlgebraKind::Zorn | AlgebraKind::Doubled { .. } => 8,
        }
    }

    pub fn is_associative(&self) -> bool {
        self.rank() == 4
    }

    fn one_coords(&self, ring: RingSpec) -> Vec<RingElem> {
        let (o, z) = (ring.one(), ring.zero());
        match self {
            AlgebraKind::M2 => vec![o, z.clone(), z, ring.one()],
            AlgebraKind::Quaternion { .. } => {
                let mut v = vec![z; 4];
                v[0] = o;
                v
            }
            AlgebraKind::Zorn => {
                let mut v = vec![z; 8];
                v[0] = o.clone();
                v[1] = o;
                v
            }
            AlgebraKind::Doubled { base, .. } => {
                let mut v = base.one_coords(ring);
                v.extend(std::iter::repeat_n(z, 4));
                v
            }
        }
    }

    fn mul(&self, ring: RingSpec, x: &[RingElem], y: &[RingElem]) -> Vec<RingElem> {
        match self {
            AlgebraKind::M2 => mat2::mul_coords(x, y).to_vec(),
            AlgebraKind::Quaternion { a, b } => quaternion_mul(a, b, x, y),
            AlgebraKind::Zorn => zorn_mul(x, y),
            AlgebraKind::Doubled { base, lambda } => {
                let (x1, y1) = x.split_at(4);
                let (u, v) = y.split_at(4);
                let sy = base.conj(ring, y1);
                let sx = base.conj(ring, x1);
                let xu = base.mul(ring, x1, u);
                let vsy = base.mul(ring, v, &sy);
                let sxv = base.mul(ring, &sx, v);
                let uy = base.mul(ring, u, y1);
                let mut out: Vec<RingElem> = xu
                    .iter()
                    .zip(&vsy)
                    .map(|(p, q)| p + &(lambda * q))
                    .collect();
                out.extend(sxv.iter().zip(&uy).map(|(p, q)| p + q));
                out
            }
        }
    }

    fn norm(&self, x: &[RingElem]) -> RingElem {
        match self {
            AlgebraKind::M2 => mat2::det_coords(x),
            AlgebraKind::Quaternion { a, b } => {
                let ab = a * b;
                &(&(&x[0].square() - &(a * &x[1].square())) - &(b * &x[2].square()))
                    + &(&ab * &x[3].square())
            }
            AlgebraKind::Zorn => {
                let dot = &(&(&x[2] * &x[5]) + &(&x[3] * &x[6])) + &(&x[4] * &x[7]);
                &(&x[0] * &x[1]) - &dot
            }
            AlgebraKind::Doubled { base, lambda } => {
                let (p, q) = x.split_at(4);
                &base.norm(p) - &(lambda * &base.norm(q))
            }
        }
    }

    fn trace(&self, ring: RingSpec, x: &[RingElem]) -> RingElem {
        let one = self.one_coords(ring);
        let shifted: Vec<RingElem> = x.iter().zip(&one).map(|(p, q)| p + q).collect();
        &(&self.norm(&shifted) - &self.norm(x)) - &self.norm(&one)
    }

    fn conj(&self, ring: RingSpec, x: &[RingElem]) -> Vec<RingElem> {
        let t = self.trace(ring, x);
        self.one_coords(ring)
            .iter()
            .zip(x)
            .map(|(o, c)| &(&t * o) - c)
            .collect()
    }

    fn descriptor(&self) -> String {
        match self {
            AlgebraKind::M2 => "m2".into(),
            AlgebraKind::Quaternion { a, b } => format!("quaternion({a},{b})"),
            AlgebraKind::Zorn => "zorn".into(),
            AlgebraKind::Doubled { base, lambda } => {
                format!("doubled({},{lambda})", base.descriptor())
            }
        }
    }
}

fn quaternion_mul(a: &RingElem, b: &RingElem, x: &[RingElem], y: &[RingElem]) -> Vec<RingElem> {
    let ab = a * b;
    let p = |i: usize, j: usize| &x[i] * &y[j];
    vec![
        &(&(&p(0, 0) + &(a * &p(1, 1))) + &(b * &p(2, 2))) - &(&ab * &p(3, 3)),
        &(&(&p(0, 1) + &p(1, 0)) - &(b * &p(2, 3))) + &(b * &p(3, 2)),
        &(&(&p(0, 2) + &p(2, 0)) + &(a * &p(1, 3))) - &(a * &p(3, 1)),
        &(&(&p(0, 3) + &p(3, 0)) + &p(1, 2)) - &p(2, 1),
    ]
}

fn dot3(v: &[RingElem], w: &[RingElem]) -> RingElem {
    &(&(&v[0] * &w[0]) + &(&v[1] * &w[1])) + &(&v[2] * &w[2])
}

fn cross3(v: &[RingElem], w: &[RingElem]) -> [RingElem; 3] {
    [
        &(&v[1] * &w[2]) - &(&v[2] * &w[1]),
        &(&v[2] * &w[0]) - &(&v[0] * &w[2]),
        &(&v[0] * &w[1]) - &(&v[1] * &w[0]),
    ]
}

fn zorn_mul(x: &[RingElem], y: &[RingElem]) -> Vec<RingElem> {
    let (a, b, v, w) = (&x[0], &x[1], &x[2..5], &x[5..8]);
    let (a2, b2, v2, w2) = (&y[0], &y[1], &y[2..5], &y[5..8]);
    let ww = cross3(w, w2);
    let vv = cross3(v, v2);
    let mut out = Vec::with_capacity(8);
    out.push(&(a * a2) + &dot3(v, w2));
    out.push(&(b * b2) + &dot3(w, v2));
    for k in 0..3 {
        out.push(&(&(a * &v2[k]) + &(b2 * &v[k])) - &ww[k]);
    }
    for k in 0..3 {
        out.push(&(&(a2 * &w[k]) + &(b * &w2[k])) + &vv[k]);
    }
    out
}

/// A composition algebra over a base ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    ring: RingSpec,
    kind: AlgebraKind,
}

impl AlgebraSpec {
    pub fn m2(ring: RingSpec) -> Self {
        AlgebraSpec {
            ring,
            kind: AlgebraKind::M2,
        }
    }

    pub fn zorn(ring: RingSpec) -> Self {
        AlgebraSpec {
            ring,
            kind: AlgebraKind::Zorn,
        }
    }

    /// The quaternion algebra (a, b); needs 2, a and b to be units.
    pub fn quaternion(ring: RingSpec, a: RingElem, b: RingElem) -> Result<Self> {
        let invalid = |field: &str, reason: String| Error::InvalidAlgebra {
            field: field.into(),
            reason,
        };
        if !ring.two_is_unit() {
            return Err(invalid("ring", format!("2 is not a unit in {ring}")));
        }
        for (name, x) in [("a", &a), ("b", &b)] {
            if x.ring() != ring {
                return Err(invalid(name, format!("{x} is not in {ring}")));
            }
            if !x.is_unit() {
                return Err(invalid(name, format!("{x} is not a unit in {ring}")));
            }
        }
        Ok(AlgebraSpec {
            ring,
            kind: AlgebraKind::Quaternion { a, b },
        })
    }

    pub fn quaternion_i64(ring: RingSpec, a: i64, b: i64) -> Result<Self> {
        AlgebraSpec::quaternion(ring, ring.from_i64(a), ring.from_i64(b))
    }

    /// Doubling of an `M2` or `Quaternion` base with a unit λ.
    pub fn doubled(base: AlgebraSpec, lambda: RingElem) -> Result<Self> {
        let invalid = |field: &str, reason: String| Error::InvalidAlgebra {
            field: field.into(),
            reason,
        };
        if !base.kind.is_associative() {
            return Err(invalid(
                "base",
                format!(
                    "base must be m2 or quaternion, got {}",
                    base.kind.descriptor()
                ),
            ));
        }
        if lambda.ring() != base.ring {
            return Err(invalid(
                "lambda",
                format!("{lambda} is not in {}", base.ring),
            ));
        }
        if !lambda.is_unit() {
            return Err(invalid(
                "lambda",
                format!("{lambda} is not a unit in {}", base.ring),
            ));
        }
        Ok(AlgebraSpec {
            ring: base.ring,
            kind: AlgebraKind::Doubled {
                base: Box::new(base.kind),
                lambda,
            },
        })
    }

    /// Doubling of M₂ with λ = 1: split octonions with norm det(x) − det(y).
    pub fn split_doubled(ring: RingSpec) -> Self {
        AlgebraSpec::doubled(AlgebraSpec::m2(ring), ring.one()).expect("1 is a unit")
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    pub fn is_associative(&self) -> bool {
        self.kind.is_associative()
    }

    /// Short stable descriptor such as `doubled(m2,1)`.
    pub fn descriptor(&self) -> String {
        self.kind.descriptor()
    }

    pub fn require_associative(&self) -> Result<()> {
        if self.is_associative() {
            Ok(())
        } else {
            Err(Error::NonAssociativeKind(self.descriptor()))
        }
    }

    pub fn element(&self, coords: Vec<RingElem>) -> Result<AlgElem> {
        self.clone().into_shared().element(coords)
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<AlgElem> {
        self.element(coords.iter().map(|&c| self.ring.from_i64(c)).collect())
    }

    pub fn one(&self) -> AlgElem {
        self.clone().into_shared().one()
    }

    pub fn zero(&self) -> AlgElem {
        self.clone().into_shared().zero()
    }

    pub fn basis(&self, i: usize) -> AlgElem {
        self.clone().into_shared().basis(i)
    }

    pub fn into_shared(self) -> SharedSpec {
        SharedSpec(Arc::new(self))
    }

    pub fn elements(&self) -> Result<Vec<AlgElem>> {
        self.clone().into_shared().elements()
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgElem {
        self.clone().into_shared().random_element(rng)
    }

    /// Number of elements of a finite algebra, saturating at `u64::MAX`.
    pub fn size(&self) -> Result<u64> {
        let m = self.ring.require_finite()?;
        Ok(m.checked_pow(self.rank() as u32).unwrap_or(u64::MAX))
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.descriptor(), self.ring)
    }
}

/// Reference-counted [`AlgebraSpec`] shared by the elements it creates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SharedSpec(Arc<AlgebraSpec>);

impl std::ops::Deref for SharedSpec {
    type Target = AlgebraSpec;
    fn deref(&self) -> &AlgebraSpec {
        &self.0
    }
}

impl SharedSpec {
    fn wrap(&self, coords: Vec<RingElem>) -> AlgElem {
        AlgElem {
            spec: self.clone(),
            coords,
        }
    }

    pub fn element(&self, coords: Vec<RingElem>) -> Result<AlgElem> {
        if coords.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: coords.len(),
            });
        }
        if let Some(c) = coords.iter().find(|c| c.ring() != self.ring) {
            return Err(Error::RingMismatch(self.ring, c.ring()));
        }
        Ok(self.wrap(coords))
    }

    pub fn one(&self) -> AlgElem {
        self.wrap(self.kind.one_coords(self.ring))
    }

    pub fn zero(&self) -> AlgElem {
        self.wrap(vec![self.ring.zero(); self.rank()])
    }

    pub fn basis(&self, i: usize) -> AlgElem {
        let mut c = vec![self.ring.zero(); self.rank()];
        c[i] = self.ring.one();
        self.wrap(c)
    }

    pub fn basis_elements(&self) -> Vec<AlgElem> {
        (0..self.rank()).map(|i| self.basis(i)).collect()
    }

    /// All elements, lexicographic in coordinates (first coordinate most
    /// significant).
    pub fn elements(&self) -> Result<Vec<AlgElem>> {
        let ring_elems = self.ring.elements()?;
        let m = ring_elems.len();
        let n = self.rank();
        let total = self.size()? as usize;
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0usize; n];
        for _ in 0..total {
            out.push(self.wrap(digits.iter().map(|&d| ring_elems[d].clone()).collect()));
            for k in (0..n).rev() {
                digits[k] += 1;
                if digits[k] < m {
                    break;
                }
                digits[k] = 0;
            }
        }
        Ok(out)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgElem {
        let coords = (0..self.rank())
            .map(|_| random_ring_elem(self.ring, rng))
            .collect();
        self.wrap(coords)
    }
}

/// Uniform on finite rings; small integers on ℤ; small fractions on ℚ.
pub fn random_ring_elem<R: Rng + ?Sized>(ring: RingSpec, rng: &mut R) -> RingElem {
    match ring {
        RingSpec::Integers => ring.from_i64(rng.gen_range(-10..=10)),
        RingSpec::Rationals => {
            let p = BigInt::from(rng.gen_range(-12i64..=12));
            let q = BigInt::from(rng.gen_range(1i64..=6));
            ring.fraction(&p, &q).expect("nonzero denominator")
        }
        RingSpec::ModRing(m) | RingSpec::PrimeField(m) => ring.from_residue(rng.gen_range(0..m)),
    }
}

/// An element of a composition algebra, as coordinates in the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElem {
    spec: SharedSpec,
    coords: Vec<RingElem>,
}

impl PartialOrd for AlgElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl AlgElem {
    pub fn spec(&self) -> &SharedSpec {
        &self.spec
    }

    pub fn ring(&self) -> RingSpec {
        self.spec.ring
    }

    pub fn coords(&self) -> &[RingElem] {
        &self.coords
    }

    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &AlgElem) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch(
                self.spec.to_string(),
                other.spec.to_string(),
            ));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &AlgElem) -> Result<AlgElem> {
        self.check(other)?;
        Ok(self.spec.wrap(
            self.spec
                .kind
                .mul(self.spec.ring, &self.coords, &other.coords),
        ))
    }

    pub fn checked_add(&self, other: &AlgElem) -> Result<AlgElem> {
        self.check(other)?;
        Ok(self.spec.wrap(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(p, q)| p + q)
                .collect(),
        ))
    }

    pub fn checked_sub(&self, other: &AlgElem) -> Result<AlgElem> {
        self.check(other)?;
        Ok(self.spec.wrap(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(p, q)| p - q)
                .collect(),
        ))
    }

    pub fn neg(&self) -> AlgElem {
        self.spec.wrap(self.coords.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, t: &RingElem) -> AlgElem {
        self.spec.wrap(self.coords.iter().map(|c| t * c).collect())
    }

    pub fn norm(&self) -> RingElem {
        self.spec.kind.norm(&self.coords)
    }

    /// Polarization of the norm against 1.
    pub fn trace(&self) -> RingElem {
        self.spec.kind.trace(self.spec.ring, &self.coords)
    }

    /// trace(x)·1 − x.
    pub fn conj(&self) -> AlgElem {
        self.spec
            .wrap(self.spec.kind.conj(self.spec.ring, &self.coords))
    }

    /// conj(x)·norm(x)⁻¹ when the norm is a unit.
    pub fn inv(&self) -> Result<AlgElem> {
        let n = self.norm().inv()?;
        Ok(self.conj().scale(&n))
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coord_strings().join(", "))
    }
}

macro_rules! alg_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&AlgElem> for &AlgElem {
            type Output = AlgElem;
            fn $method(self, rhs: &AlgElem) -> AlgElem {
                self.$checked(rhs).expect("algebra mismatch in arithmetic")
            }
        }
    };
}
alg_binop!(Mul, mul, checked_mul);
alg_binop!(Add, add, checked_add);
alg_binop!(Sub, sub, checked_sub);

/// The fixed isomorphism from Zorn vector matrices onto the doubled M₂
/// (λ = 1) over the same ring:
///
/// ```text
/// [[a, v], [w, b]]  ↦  ( [[a, v1], [w1, b]],  [[w3, w2], [−v2, v3]] )
/// ```
pub fn zorn_doubled_iso(x: &AlgElem) -> Result<AlgElem> {
    if x.spec.kind != AlgebraKind::Zorn {
        return Err(Error::InvalidAlgebra {
            field: "kind".into(),
            reason: format!("expected zorn, got {}", x.spec.descriptor()),
        });
    }
    let c = &x.coords;
    let target = AlgebraSpec::split_doubled(x.ring());
    target.element(vec![
        c[0].clone(),
        c[2].clone(),
        c[5].clone(),
        c[1].clone(),
        c[7].clone(),
        c[6].clone(),
        -&c[3],
        c[4].clone(),
    ])
}
