//! Groups of points over finite rings: SL₁ and μ₂, the map
//! `f(x, y): q ↦ x q y⁻¹` with its kernel, the orbit map and its section,
//! orthogonal groups of norm forms with the Dickson invariant, and algebra
//! automorphisms.

mod automorphisms;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::algebras::{AlgElem, AlgebraSpec, SharedSpec};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linmap::LinMap;
use crate::mat2::Mat2;
use crate::quadforms::{is_isometry, search_isometries, QuadForm};
use crate::rings::{RingElem, RingSpec};

pub use automorphisms::aut_enumerate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    Sl1,
    Mu2,
    O,
    So,
    Aut,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Sl1 => "SL1",
            GroupKind::Mu2 => "MU2",
            GroupKind::O => "O",
            GroupKind::So => "SO",
            GroupKind::Aut => "AUT",
        })
    }
}

impl FromStr for GroupKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "SL1" => GroupKind::Sl1,
            "MU2" => GroupKind::Mu2,
            "O" => GroupKind::O,
            "SO" => GroupKind::So,
            "AUT" => GroupKind::Aut,
            _ => {
                return Err(format!(
                    "unknown group '{s}' (expected O, SO, SL1, MU2 or AUT)"
                ))
            }
        })
    }
}

/// A finite set of points, kept sorted and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet<T> {
    kind: GroupKind,
    elements: Vec<T>,
}

impl<T: Ord> PointSet<T> {
    pub fn new(kind: GroupKind, mut elements: Vec<T>) -> Self {
        elements.sort();
        elements.dedup();
        PointSet { kind, elements }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<T> {
        self.elements
    }

    pub fn contains(&self, x: &T) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    /// Checks that the set contains `identity` and is closed under `mul`.
    ///
    /// Elements are added greedily as generators; the subgroup they generate
    /// is grown by right multiplication with generators only, and must stay
    /// inside the set and exhaust it. For a finite set of invertible elements
    /// this is equivalent to being a subgroup.
    pub fn is_closed_under(&self, identity: &T, mul: impl Fn(&T, &T) -> T) -> bool
    where
        T: Clone,
    {
        if !self.contains(identity) {
            return false;
        }
        let mut reached: BTreeSet<T> = BTreeSet::from([identity.clone()]);
        let mut gens: Vec<T> = Vec::new();
        for s in &self.elements {
            if reached.contains(s) {
                continue;
            }
            gens.push(s.clone());
            let mut frontier: Vec<T> = reached.iter().cloned().collect();
            while let Some(x) = frontier.pop() {
                for g in &gens {
                    let y = mul(&x, g);
                    if !self.contains(&y) {
                        return false;
                    }
                    if reached.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
        }
        reached.len() == self.elements.len()
    }
}

impl PointSet<LinMap> {
    pub fn is_group(&self) -> bool {
        let Some(first) = self.elements.first() else {
            return false;
        };
        let id = LinMap::identity(first.ring(), first.dim());
        self.is_closed_under(&id, |a, b| a.compose(b).expect("same shape"))
    }
}

impl PointSet<AlgElem> {
    pub fn is_group(&self) -> bool {
        let Some(first) = self.elements.first() else {
            return false;
        };
        self.is_closed_under(&first.spec().one(), |a, b| a * b)
    }
}

fn require_norm_one(x: &AlgElem) -> Result<()> {
    if x.norm().is_one() {
        Ok(())
    } else {
        Err(Error::NotNormOne)
    }
}

/// All elements of norm 1. This is a group for the associative kinds; for
/// octonion kinds it is only the norm-one set.
pub fn sl1_elements(spec: &AlgebraSpec, budget: &Budget) -> Result<PointSet<AlgElem>> {
    let size = spec.size()?;
    budget.reserve(size)?;
    budget.charge(size)?;
    let elems = spec.elements()?;
    Ok(PointSet::new(
        GroupKind::Sl1,
        elems.into_iter().filter(|x| x.norm().is_one()).collect(),
    ))
}

/// The square roots of unity `{t : t² = 1}`.
pub fn mu2_elements(ring: RingSpec) -> Result<PointSet<RingElem>> {
    let elems = ring.elements()?;
    Ok(PointSet::new(
        GroupKind::Mu2,
        elems.into_iter().filter(|t| t.square().is_one()).collect(),
    ))
}

/// Matrix of `q ↦ x q y⁻¹` for norm-one `x, y` in an associative algebra.
pub fn f_map(x: &AlgElem, y: &AlgElem) -> Result<LinMap> {
    if x.spec() != y.spec() {
        return Err(Error::SpecMismatch(
            x.spec().descriptor(),
            y.spec().descriptor(),
        ));
    }
    x.spec().require_associative()?;
    require_norm_one(x)?;
    require_norm_one(y)?;
    let y_inv = y.inv()?;
    Ok(LinMap::of_algebra_map(x.spec(), |q| &(x * q) * &y_inv))
}

/// All `(x, y) ∈ SL₁ × SL₁` with `f(x, y) = id`, in lexicographic order.
pub fn f_kernel(spec: &AlgebraSpec, budget: &Budget) -> Result<Vec<(AlgElem, AlgElem)>> {
    spec.require_associative()?;
    let sl1 = sl1_elements(spec, budget)?;
    let pairs = (sl1.len() as u64).pow(2);
    budget.reserve(pairs)?;
    budget.charge(pairs)?;
    let id = LinMap::identity(spec.ring(), spec.rank());
    let mut out = Vec::new();
    for x in sl1.elements() {
        for y in sl1.elements() {
            if f_map(x, y)? == id {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(out)
}

/// The diagonal image `t ↦ (t·1, t·1)` of μ₂ in SL₁ × SL₁.
pub fn mu2_diagonal(spec: &AlgebraSpec) -> Result<Vec<(AlgElem, AlgElem)>> {
    let one = spec.one();
    let mut out: Vec<_> = mu2_elements(spec.ring())?
        .elements()
        .iter()
        .map(|t| (one.scale(t), one.scale(t)))
        .collect();
    out.sort();
    Ok(out)
}

/// The orbit map `g ↦ g·1`.
pub fn orbit_map_u(g: &LinMap, spec: &AlgebraSpec) -> Result<AlgElem> {
    if g.dim() != spec.rank() {
        return Err(Error::RankMismatch {
            expected: spec.rank(),
            got: g.dim(),
        });
    }
    spec.element(g.apply(spec.one().coords())?)
}

/// Matrix of left translation `x ↦ q x` by a norm-one element.
pub fn left_translation_s(q: &AlgElem) -> Result<LinMap> {
    q.spec().require_associative()?;
    require_norm_one(q)?;
    Ok(LinMap::of_algebra_map(q.spec(), |x| q * x))
}

/// Every isometry of `q` onto itself, sorted.
pub fn orthogonal_elements(q: &QuadForm, budget: &Budget) -> Result<PointSet<LinMap>> {
    Ok(PointSet::new(
        GroupKind::O,
        search_isometries(q, q, budget, None)?,
    ))
}

/// The kernel of the Dickson invariant inside `O(q)`.
pub fn special_orthogonal(q: &QuadForm, budget: &Budget) -> Result<PointSet<LinMap>> {
    let o = orthogonal_elements(q, budget)?;
    let mut so = Vec::with_capacity(o.len() / 2);
    for g in o.into_elements() {
        if dickson(&g, q)? == 0 {
            so.push(g);
        }
    }
    Ok(PointSet::new(GroupKind::So, so))
}

/// The Dickson invariant of `g ∈ O(q)`: from the determinant (1 ↦ 0,
/// −1 ↦ 1) when 2 is a unit or the ring is ℤ, and `rank(g − id) mod 2`
/// over 𝔽₂.
pub fn dickson(g: &LinMap, q: &QuadForm) -> Result<u8> {
    if !is_isometry(q, q, g) {
        return Err(Error::NotOrthogonal);
    }
    let ring = g.ring();
    if ring.two_is_unit() || ring == RingSpec::Integers {
        let d = g.det();
        if d.is_one() {
            Ok(0)
        } else if (-&d).is_one() {
            Ok(1)
        } else {
            Err(Error::UnsupportedRing {
                ring,
                reason: format!("orthogonal map of determinant {d}, neither 1 nor -1"),
            })
        }
    } else if ring.is_field() {
        let id = LinMap::identity(ring, g.dim());
        Ok((g.sub(&id).rank()? % 2) as u8)
    } else {
        Err(Error::UnsupportedRing {
            ring,
            reason: "Dickson invariant needs 2 to be a unit or a field of characteristic 2".into(),
        })
    }
}

/// Matrix of `x ↦ trace(x)·1 − x`.
pub fn canonical_involution_map(spec: &AlgebraSpec) -> LinMap {
    LinMap::of_algebra_map(&spec.clone().into_shared(), |x| x.conj())
}

/// True when `t` is invertible, fixes 1 and is multiplicative on basis pairs.
pub fn is_algebra_automorphism(spec: &AlgebraSpec, t: &LinMap) -> Result<bool> {
    crate::isomorphism::is_algebra_isomorphism(spec, spec, t)
}

/// `φ_{a,b}: (X, Y) ↦ (a X a⁻¹, a Y b⁻¹)` on the doubled M₂ with λ = 1, for
/// `a, b ∈ SL₂`.
pub fn phi_family(a: &Mat2, b: &Mat2) -> Result<LinMap> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring(), b.ring()));
    }
    if !a.det().is_one() || !b.det().is_one() {
        return Err(Error::NotNormOne);
    }
    let spec = AlgebraSpec::split_doubled(a.ring()).into_shared();
    let (a_inv, b_inv) = (a.inv()?, b.inv()?);
    Ok(LinMap::of_algebra_map(&spec, |z| {
        let x = Mat2::from_coords(&z.coords()[..4]).expect("rank 4 block");
        let y = Mat2::from_coords(&z.coords()[4..]).expect("rank 4 block");
        let x2 = a.mul(&x).and_then(|m| m.mul(&a_inv)).expect("same ring");
        let y2 = a.mul(&y).and_then(|m| m.mul(&b_inv)).expect("same ring");
        let coords = x2
            .into_coords()
            .into_iter()
            .chain(y2.into_coords())
            .collect();
        spec.element(coords).expect("rank 8")
    }))
}

/// Matrix of the fixed isomorphism from Zorn vector matrices onto the
/// doubled M₂.
pub fn zorn_doubled_map(ring: RingSpec) -> LinMap {
    let zorn: SharedSpec = AlgebraSpec::zorn(ring).into_shared();
    LinMap::of_algebra_map(&zorn, |x| {
        crate::algebras::zorn_doubled_iso(x).expect("Zorn element")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadforms::form_from_algebra;

    fn f(p: u64) -> RingSpec {
        RingSpec::PrimeField(p)
    }

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn group_kind_names() {
        for k in [
            GroupKind::Sl1,
            GroupKind::Mu2,
            GroupKind::O,
            GroupKind::So,
            GroupKind::Aut,
        ] {
            assert_eq!(k.to_string().parse::<GroupKind>().unwrap(), k);
        }
        assert!("GL".parse::<GroupKind>().is_err());
    }

    #[test]
    fn sl1_orders() {
        for (p, n) in [(2, 6), (3, 24), (5, 120)] {
            let s = sl1_elements(&AlgebraSpec::m2(f(p)), &budget()).unwrap();
            assert_eq!(s.len(), n);
            assert!(s.is_group());
        }
        assert!(sl1_elements(&AlgebraSpec::m2(RingSpec::Rationals), &budget()).is_err());
    }

    #[test]
    fn mu2_examples() {
        let r = RingSpec::ModRing(8);
        let m = mu2_elements(r).unwrap();
        let expect: Vec<_> = [1, 3, 5, 7].iter().map(|&x| r.from_i64(x)).collect();
        assert_eq!(m.elements(), &expect[..]);
        let m5 = mu2_elements(f(5)).unwrap();
        assert_eq!(m5.elements(), &[f(5).from_i64(1), f(5).from_i64(4)]);
        assert_eq!(mu2_elements(f(2)).unwrap().len(), 1);
    }

    #[test]
    fn f_map_basics() {
        let spec = AlgebraSpec::m2(f(3)).into_shared();
        let one = spec.one();
        let id = LinMap::identity(f(3), 4);
        assert_eq!(f_map(&one, &one).unwrap(), id);
        assert_eq!(f_map(&one.neg(), &one.neg()).unwrap(), id);
        let sl1 = sl1_elements(&spec, &budget()).unwrap();
        let q = form_from_algebra(&spec);
        for x in sl1.elements() {
            for y in sl1.elements() {
                let g = f_map(x, y).unwrap();
                assert_eq!(orbit_map_u(&g, &spec).unwrap(), x * &y.inv().unwrap());
                assert!(is_isometry(&q, &q, &g));
                assert!(g.det().is_one());
            }
        }
        assert_eq!(f_map(&spec.basis(0), &one), Err(Error::NotNormOne));
        let z = AlgebraSpec::zorn(f(3)).into_shared();
        assert!(matches!(
            f_map(&z.one(), &z.one()),
            Err(Error::NonAssociativeKind(_))
        ));
    }

    #[test]
    fn kernel_is_mu2() {
        let cases = [
            AlgebraSpec::m2(f(2)),
            AlgebraSpec::m2(f(3)),
            AlgebraSpec::quaternion_i64(f(5), 2, 3).unwrap(),
        ];
        for spec in &cases {
            assert_eq!(
                f_kernel(spec, &budget()).unwrap(),
                mu2_diagonal(spec).unwrap()
            );
        }
        assert_eq!(f_kernel(&cases[1], &budget()).unwrap().len(), 2);
        assert_eq!(f_kernel(&cases[0], &budget()).unwrap().len(), 1);
    }

    #[test]
    fn section_law() {
        let spec = AlgebraSpec::m2(f(5));
        let q = form_from_algebra(&spec);
        for x in sl1_elements(&spec, &budget()).unwrap().elements() {
            let s = left_translation_s(x).unwrap();
            assert_eq!(&orbit_map_u(&s, &spec).unwrap(), x);
            assert!(s.det().is_one());
            assert!(is_isometry(&q, &q, &s));
        }
        assert!(left_translation_s(&spec.one()).unwrap().is_identity());
        assert_eq!(
            orbit_map_u(&LinMap::identity(f(5), 4), &spec).unwrap(),
            spec.one()
        );
        assert!(orbit_map_u(&LinMap::identity(f(5), 3), &spec).is_err());
    }

    #[test]
    fn small_orthogonal_groups() {
        let one = QuadForm::diagonal_i64(f(3), &[1]);
        let o = orthogonal_elements(&one, &budget()).unwrap();
        let expect = [
            LinMap::from_i64_rows(f(3), &[&[1]]).unwrap(),
            LinMap::from_i64_rows(f(3), &[&[2]]).unwrap(),
        ];
        assert_eq!(o.elements(), &expect[..]);

        let det2 = form_from_algebra(&AlgebraSpec::m2(f(2)));
        let o = orthogonal_elements(&det2, &budget()).unwrap();
        assert_eq!(o.len(), 72);
        assert!(o.is_group());
        let so = special_orthogonal(&det2, &budget()).unwrap();
        assert_eq!(so.len(), 36);
        assert!(so.is_group());
    }

    // Plain filter over all 4×4 matrices over 𝔽₂ as an oracle for the 72.
    #[test]
    fn orthogonal_group_of_det_form_over_f2_by_filter() {
        let ring = f(2);
        let q = form_from_algebra(&AlgebraSpec::m2(ring));
        let o = orthogonal_elements(&q, &budget()).unwrap();
        let mut count = 0;
        for bits in 0u32..(1 << 16) {
            let t = LinMap::from_fn(ring, 4, |i, j| {
                ring.from_residue(((bits >> (4 * i + j)) & 1) as u64)
            });
            if is_isometry(&q, &q, &t) {
                assert!(o.contains(&t));
                count += 1;
            }
        }
        assert_eq!(count, 72);
    }

    #[test]
    fn dickson_examples() {
        let h = AlgebraSpec::quaternion_i64(RingSpec::Rationals, -1, -1).unwrap();
        let sigma = canonical_involution_map(&h);
        let diag = LinMap::from_i64_rows(
            RingSpec::Rationals,
            &[
                &[1, 0, 0, 0],
                &[0, -1, 0, 0],
                &[0, 0, -1, 0],
                &[0, 0, 0, -1],
            ],
        )
        .unwrap();
        assert_eq!(sigma, diag);
        assert_eq!(sigma.det(), RingSpec::Rationals.from_i64(-1));
        let qh = form_from_algebra(&h);
        assert_eq!(dickson(&sigma, &qh).unwrap(), 1);
        assert_eq!(
            dickson(&LinMap::identity(RingSpec::Rationals, 4), &qh).unwrap(),
            0
        );

        let m2 = AlgebraSpec::m2(f(2));
        let s2 = canonical_involution_map(&m2);
        assert_eq!(s2.sub(&LinMap::identity(f(2), 4)).rank().unwrap(), 1);
        assert_eq!(dickson(&s2, &form_from_algebra(&m2)).unwrap(), 1);

        let not_orth = LinMap::from_i64_rows(f(3), &[&[2]]).unwrap();
        assert_eq!(
            dickson(&not_orth, &QuadForm::diagonal_i64(f(3), &[0])).unwrap(),
            1
        );
        let scale2 = LinMap::from_i64_rows(f(5), &[&[2]]).unwrap();
        assert_eq!(
            dickson(&scale2, &QuadForm::diagonal_i64(f(5), &[1])),
            Err(Error::NotOrthogonal)
        );
        let z4 = RingSpec::ModRing(4);
        let q4 = form_from_algebra(&AlgebraSpec::m2(z4));
        assert!(matches!(
            dickson(&LinMap::identity(z4, 4), &q4),
            Err(Error::UnsupportedRing { .. })
        ));
    }

    #[test]
    fn involution_on_doubled_and_squares() {
        let spec = AlgebraSpec::split_doubled(f(5));
        let sigma = canonical_involution_map(&spec);
        assert!(sigma.compose(&sigma).unwrap().is_identity());
        let q = form_from_algebra(&spec);
        assert_eq!(dickson(&sigma, &q).unwrap(), 1);
        let x = spec.element_i64(&[1, 2, 3, 4, 1, 0, 2, 3]).unwrap();
        let image = sigma.apply_elem(&x).unwrap();
        assert_eq!(
            image,
            spec.element_i64(&[4, -2, -3, 1, -1, 0, -2, -3]).unwrap()
        );
    }

    #[test]
    fn decomposition_over_f2() {
        let m2 = AlgebraSpec::m2(f(2));
        let q = form_from_algebra(&m2);
        let sigma = canonical_involution_map(&m2);
        let o = orthogonal_elements(&q, &budget()).unwrap();
        let so = special_orthogonal(&q, &budget()).unwrap();
        let coset = PointSet::new(
            GroupKind::O,
            so.elements()
                .iter()
                .map(|g| sigma.compose(g).unwrap())
                .collect(),
        );
        assert_eq!(coset.len(), so.len());
        assert!(coset
            .elements()
            .iter()
            .all(|g| !so.contains(g) && o.contains(g)));
        assert_eq!(so.len() + coset.len(), o.len());
    }

    #[test]
    fn automorphism_membership() {
        let z = AlgebraSpec::zorn(f(3));
        assert!(is_algebra_automorphism(&z, &LinMap::identity(f(3), 8)).unwrap());
        assert!(!is_algebra_automorphism(&z, &canonical_involution_map(&z)).unwrap());
        assert!(is_algebra_automorphism(&z, &LinMap::identity(f(3), 4)).is_err());
    }

    #[test]
    fn phi_family_over_f3() {
        let ring = f(3);
        let sl2: Vec<Mat2> = sl1_elements(&AlgebraSpec::m2(ring), &budget())
            .unwrap()
            .elements()
            .iter()
            .map(|x| Mat2::from_coords(x.coords()).unwrap())
            .collect();
        let spec = AlgebraSpec::split_doubled(ring);
        let q = form_from_algebra(&spec);
        let mut maps = BTreeSet::new();
        for a in &sl2 {
            for b in &sl2 {
                let phi = phi_family(a, b).unwrap();
                assert!(is_algebra_automorphism(&spec, &phi).unwrap());
                assert!(is_isometry(&q, &q, &phi));
                maps.insert(phi);
            }
        }
        assert_eq!(maps.len(), 288);
        let id = Mat2::identity(ring);
        assert!(phi_family(&id, &id).unwrap().is_identity());
        assert!(phi_family(&id.neg(), &id.neg()).unwrap().is_identity());
        assert_eq!(
            phi_family(&Mat2::from_i64(ring, [1, 0, 0, 0]), &id),
            Err(Error::NotNormOne)
        );
    }

    #[test]
    fn zorn_map_is_an_isomorphism() {
        let ring = f(3);
        let t = zorn_doubled_map(ring);
        let ok = crate::isomorphism::is_algebra_isomorphism(
            &AlgebraSpec::zorn(ring),
            &AlgebraSpec::split_doubled(ring),
            &t,
        )
        .unwrap();
        assert!(ok);
    }
}
