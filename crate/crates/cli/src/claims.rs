//! The named claims run by `cayley verify`.

use std::collections::BTreeSet;
use std::time::Instant;

use cayley_core::algebras::random_ring_elem;
use cayley_core::grouppoints::{
    aut_enumerate, canonical_involution_map, dickson, f_kernel, f_map, is_algebra_automorphism,
    left_translation_s, mu2_diagonal, mu2_elements, orbit_map_u, orthogonal_elements, phi_family,
    sl1_elements, zorn_doubled_map, PointSet,
};
use cayley_core::identities::{check_identity, Coverage, Identity};
use cayley_core::isomorphism::find_quaternion_isomorphism;
use cayley_core::quadforms::{
    find_isometry, form_from_algebra, is_isometry, is_isotropic, Isotropy,
};
use cayley_core::{
    AlgElem, AlgebraKind, AlgebraSpec, Budget, Error, LinMap, Mat2, RingElem, RingSpec,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::{Outcome, Report, Witness};
use crate::CliError;

pub const CLAIMS: [&str; 12] = [
    "norm-mult",
    "composition-identities",
    "alternative-laws",
    "associativity",
    "norm-nonsingular",
    "lemma-ker-f",
    "prop-max-section",
    "lemma-dickson",
    "prop-phi-family",
    "zorn-doubled-iso",
    "thm-isometric",
    "prop-g2-aut",
];

/// Seed for every sampled check, so reports are reproducible.
pub const SAMPLE_SEED: u64 = 20_240_601;

pub const DEFAULT_SAMPLES: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverageChoice {
    /// Exhaustive over finite rings, sampled otherwise.
    Auto,
    Exhaustive,
    Samples(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub coverage: CoverageChoice,
    pub budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            coverage: CoverageChoice::Auto,
            budget: Budget::DEFAULT_LIMIT,
        }
    }
}

struct Ctx<'a> {
    spec: &'a AlgebraSpec,
    coverage: Coverage,
    budget: Budget,
}

impl Ctx<'_> {
    fn exhaustive(&self) -> bool {
        self.coverage == Coverage::Exhaustive
    }

    fn samples(&self) -> u64 {
        match self.coverage {
            Coverage::Samples { count, .. } => count,
            Coverage::Exhaustive => DEFAULT_SAMPLES,
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(SAMPLE_SEED)
    }
}

fn resolve(choice: CoverageChoice, ring: RingSpec) -> Coverage {
    match choice {
        CoverageChoice::Auto if ring.is_finite() => Coverage::Exhaustive,
        CoverageChoice::Auto => Coverage::Samples {
            count: DEFAULT_SAMPLES,
            seed: SAMPLE_SEED,
        },
        CoverageChoice::Exhaustive => Coverage::Exhaustive,
        CoverageChoice::Samples(count) => Coverage::Samples {
            count,
            seed: SAMPLE_SEED,
        },
    }
}

fn wrong_kind(spec: &AlgebraSpec, wanted: &str) -> Error {
    Error::InvalidAlgebra {
        field: "kind".into(),
        reason: format!("claim needs {wanted}, got {}", spec.descriptor()),
    }
}

fn is_inapplicable(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidAlgebra { .. } | Error::NonAssociativeKind(_)
    )
}

fn is_skippable(e: &Error) -> bool {
    matches!(
        e,
        Error::BudgetExceeded(_)
            | Error::InfiniteRing(_)
            | Error::UnsupportedRing { .. }
            | Error::CharTwo(_)
    )
}

fn labelled(args: &[AlgElem]) -> Vec<Witness> {
    ["x", "y", "z"]
        .iter()
        .zip(args)
        .map(|(l, a)| Witness::elem(*l, a))
        .collect()
}

fn identity_claim(ctx: &Ctx, ids: &[Identity]) -> cayley_core::Result<Outcome> {
    if ctx.exhaustive() {
        let size = ctx.spec.size()?;
        let total = ids.iter().fold(0u64, |acc, id| {
            acc.saturating_add(size.checked_pow(id.arity() as u32).unwrap_or(u64::MAX))
        });
        ctx.budget.reserve(total)?;
    }
    let mut o = Outcome::pass();
    for &id in ids {
        let out = check_identity(ctx.spec, id, ctx.coverage, &ctx.budget)?;
        o.count(&format!("{id}.checked"), out.checked);
        if !out.holds() {
            o.count(&format!("{id}.failures"), out.failures);
            let w = out.witness.expect("failures come with a witness");
            o.fail(format!("{id} fails"), labelled(&w));
        }
    }
    Ok(o)
}

fn associativity(ctx: &Ctx) -> cayley_core::Result<Outcome> {
    let out = check_identity(ctx.spec, Identity::Associative, ctx.coverage, &ctx.budget)?;
    let mut o = Outcome::pass();
    o.count("triples", out.checked);
    o.count("failures", out.failures);
    if ctx.spec.is_associative() {
        if let Some(w) = out.witness {
            o.fail("associativity fails", labelled(&w));
        }
    } else {
        match out.witness {
            Some(w) => {
                o.note("associativity fails as expected for an octonion algebra");
                o.witnesses.extend(labelled(&w));
            }
            None if ctx.exhaustive() => {
                o.fail("no associativity failure in an octonion algebra", vec![]);
            }
            None => {
                o = Outcome::skipped(format!(
                    "no associativity failure among {} samples",
                    out.checked
                ));
            }
        }
    }
    Ok(o)
}

fn norm_nonsingular(ctx: &Ctx) -> cayley_core::Result<Outcome> {
    let q = form_from_algebra(ctx.spec);
    let det = q.polar_matrix().det();
    let mut o = Outcome::pass();
    o.count("rank", q.rank() as u64);
    if !q.is_nonsingular() {
        o.fail(
            "polar determinant is not a unit",
            vec![Witness::scalars("polar-det", &[det])],
        );
    }
    Ok(o)
}

fn so_test(g: &LinMap, q: &cayley_core::QuadForm) -> cayley_core::Result<bool> {
    if !is_isometry(q, q, g) {
        return Ok(false);
    }
    match dickson(g, q) {
        Ok(d) => Ok(d == 0),
        Err(Error::UnsupportedRing { .. }) => Ok(g.det().is_one()),
        Err(e) => Err(e),
    }
}

fn lemma_ker_f(ctx: &Ctx) -> cayley_core::Result<Outcome> {
    let spec = ctx.spec;
    spec.require_associative()?;
    let q = form_from_algebra(spec);
    let sl1 = sl1_elements(spec, &ctx.budget)?;
    let kernel = f_kernel(spec, &ctx.budget)?;
    let diagonal = mu2_diagonal(spec)?;
    let mut o = Outcome::pass();
    o.count("sl1", sl1.len() as u64);
    o.count("pairs", (sl1.len() as u64).pow(2));
    o.count("kernel", kernel.len() as u64);
    o.count("mu2", mu2_elements(spec.ring())?.len() as u64);
    if kernel != diagonal {
        let extra = kernel.iter().find(|p| !diagonal.contains(p));
        let missing = diagonal.iter().find(|p| !kernel.contains(p));
        let (label, (x, y)) = match (extra, missing) {
            (Some(p), _) => ("kernel-not-in-mu2", p),
            (None, Some(p)) => ("mu2-not-in-kernel", p),
            (None, None) => unreachable!("sets differ"),
        };
        o.fail(
            "kernel of f differs from the diagonal image of mu2",
            vec![
                Witness::elem(format!("{label}.x"), x),
                Witness::elem(format!("{label}.y"), y),
            ],
        );
    }
    let mut image = BTreeSet::new();
    for x in sl1.elements() {
        for y in sl1.elements() {
            let g = f_map(x, y)?;
            if !so_test(&g, &q)? {
                o.fail(
                    "f(x, y) is not in SO",
                    vec![Witness::elem("x", x), Witness::elem("y", y)],
                );
            }
            image.insert(g);
        }
    }
    o.count("image", image.len() as u64);
    Ok(o)
}

fn prop_max_section(ctx: &Ctx) -> cayley_core::Result<Outcome> {
    let spec = ctx.spec;
    spec.require_associative()?;
    let q = form_from_algebra(spec);
    let sl1 = sl1_elements(spec, &ctx.budget)?;
    let mut o = Outcome::pass();
    o.count("sl1", sl1.len() as u64);
    for x in sl1.elements() {
        let s = left_translation_s(x)?;
        if &orbit_map_u(&s, spec)? != x {
            o.fail("u(s(q)) differs from q", vec![Witness::elem("q", x)]);
        }
        if !s.det().is_one() {
            o.fail("det s(q) is not 1", vec![Witness::elem("q", x)]);
        }
        if !is_isometry(&q, &q, &s) {
            o.fail(
                "s(q) does not preserve the norm",
                vec![Witness::elem("q", x)],
            );
        }
    }
    Ok(o)
}

/// Rings over which rank-4 orthogonal groups are enumerated in full.
fn o_enumerable(spec: &AlgebraSpec) -> bool {
    matches!(spec.ring(), RingSpec::PrimeField(p) if p <= 5) && spec.rank() == 4
}

fn lemma_dickson(ctx: &Ctx) -> cayley_core::Result<Outcome> {
    let spec = ctx.spec;
    let q = form_from_algebra(spec);
    let sigma = canonical_involution_map(spec);
    let mut o = Outcome::pass();
    if !sigma.compose(&sigma)?.is_identity() {
        o.fail(
            "canonical involution does not square to 1",
            vec![Witness::map("sigma", &sigma)],
        );
    }
    if !is_isometry(&q, &q, &sigma) {
        o.fail(
            "canonical involution does not preserve the norm",
            vec![Witness::map("sigma", &sigma)],
        );
        return Ok(o);
    }
    let d = dickson(&sigma, &q)?;
    o.count("dickson_sigma", d as u64);
    if d != 1 {
        o.fail(
            "Dickson invariant of the canonical involution is 0",
            vec![Witness::map("sigma", &sigma)],
        );
    }
    if !o_enumerable(spec) {
        o.note("orthogonal group enumerated only for rank 4 over F2, F3, F5");
        return Ok(o);
    }
    let orth = orthogonal_elements(&q, &ctx.budget)?;
    let mut so = Vec::new();
    for g in orth.elements() {
        if dickson(g, &q)? == 0 {
            so.push(g.clone());
        }
    }
    let so = PointSet::new(cayley_core::grouppoints::GroupKind::So, so);
    o.count("o", orth.len() as u64);
    o.count("so", so.len() as u64);
    for g in so.elements() {
        let h = sigma.compose(g)?;
        if so.contains(&h) || !orth.contains(&h) {
            o.fail(
                "sigma·SO is not a coset disjoint from SO",
                vec![Witness::map("g", g)],
            );
            break;
        }
    }
    if 2 * so.len() != orth.len() {
        o.fail("O is not SO ⊔ sigma·SO", vec![]);
    }
    Ok(o)
}

fn is_split_doubled(spec: &AlgebraSpec) -> bool {
    matches!(spec.kind(), AlgebraKind::Doubled { base, lambda }
        if **base == AlgebraKind::M2 && lambda.is_one())
}

fn random_sl2(ring: RingSpec, rng: &mut ChaCha8Rng) -> Mat2 {
    let one = ring.one();
    let zero = ring.zero();
    let upper = Mat2::new(
        one.clone(),
        random_ring_elem(ring, rng),
        zero.clone(),
        one.clone(),
    )
    .unwrap();
    let lower = Mat2::new(one.clone(), zero, random_ring_elem(ring, rng), one.clone()).unwrap();
    let upper2 = Mat2::new(one.clone(), random_ring_elem(ring, rng), ring.zero(), one).unwrap();
    upper.mul(&lower).and_then(|m| m.mul(&upper2)).unwrap()
}

fn prop_phi_family(ctx: &Ctx) -> cayley_core::Result<Outcome> {
    let spec = ctx.spec;
    if !is_split_doubled(spec) {
        return Err(wrong_kind(spec, "doubled(m2,1)"));
    }
    let ring = spec.ring();
    let q = form_from_algebra(spec);
    let shared = spec.clone().into_shared();
    let mut o = Outcome::pass();
    if ring.is_finite() && ctx.exhaustive() {
        let sl2: Vec<Mat2> = sl1_elements(&AlgebraSpec::m2(ring), &ctx.budget)?
            .elements()
            .iter()
            .map(|x| Mat2::from_coords(x.coords()))
            .collect::<cayley_core::Result<_>>()?;
        let pairs = (sl2.len() as u64).pow(2);
        ctx.budget.reserve(pairs * 64)?;
        ctx.budget.charge(pairs * 64)?;
        let mut maps = BTreeSet::new();
        for a in &sl2 {
            for b in &sl2 {
                let phi = phi_family(a, b)?;
                let bad = |what: &str| {
                    (
                        format!("phi(a, b) {what}"),
                        vec![
                            Witness::scalars("a", a.coords()),
                            Witness::scalars("b", b.coords()),
                        ],
                    )
                };
                if !is_algebra_automorphism(spec, &phi)? {
                    let (r, w) = bad("is not an automorphism");
                    o.fail(r, w);
                }
                if !is_isometry(&q, &q, &phi) {
                    let (r, w) = bad("does not preserve the norm");
                    o.fail(r, w);
                }
                maps.insert(phi);
            }
        }
        let mu2 = mu2_elements(ring)?.len() as u64;
        o.count("pairs", pairs);
        o.count("distinct", maps.len() as u64);
        o.count("kernel", mu2);
        if maps.len() as u64 * mu2 != pairs {
            o.fail(
                format!(
                    "expected {} distinct maps, found {}",
                    pairs / mu2,
                    maps.len()
                ),
                vec![],
            );
        }
    } else {
        let n = ctx.samples();
        ctx.budget.reserve(n)?;
        ctx.budget.charge(n)?;
        let mut rng = ctx.rng();
        for _ in 0..n {
            let a = random_sl2(ring, &mut rng);
            let b = random_sl2(ring, &mut rng);
            let phi = phi_family(&a, &b)?;
            let x = shared.random_element(&mut rng);
            let y = shared.random_element(&mut rng);
            let px = phi.apply_elem(&x)?;
            let py = phi.apply_elem(&y)?;
            let ab = vec![
                Witness::scalars("a", a.coords()),
                Witness::scalars("b", b.coords()),
            ];
            if px.norm() != x.norm() {
                let mut w = ab.clone();
                w.push(Witness::elem("x", &x));
                o.fail("phi(a, b) does not preserve the norm", w);
            }
            if phi.apply_elem(&(&x * &y))? != &px * &py {
                let mut w = ab.clone();
                w.extend([Witness::elem("x", &x), Witness::elem("y", &y)]);
                o.fail("phi(a, b) is not multiplicative", w);
            }
            if phi_family(&a.neg(), &b.neg())? != phi {
                o.fail("phi(-a, -b) differs from phi(a, b)", ab);
            }
        }
        o.count("samples", n);
    }
    Ok(o)
}

fn zorn_doubled_iso(ctx: &Ctx) -> cayley_core::Result<Outcome> {
    let spec = ctx.spec;
    if *spec.kind() != AlgebraKind::Zorn {
        return Err(wrong_kind(spec, "zorn"));
    }
    let ring = spec.ring();
    let t = zorn_doubled_map(ring);
    let target = AlgebraSpec::split_doubled(ring).into_shared();
    let image = |x: &AlgElem| {
        target
            .element(t.apply(x.coords()).expect("rank 8"))
            .expect("rank 8")
    };
    let shared = spec.clone().into_shared();
    let mut o = Outcome::pass();
    if image(&shared.one()) != target.one() {
        o.fail("iso is not unital", vec![]);
    }
    let (elems, pairs): (Vec<AlgElem>, Vec<(AlgElem, AlgElem)>) =
        if ring.is_finite() && ctx.exhaustive() {
            let size = shared.size()?;
            let total = size.saturating_mul(size);
            ctx.budget.reserve(total)?;
            ctx.budget.charge(total)?;
            let elems = shared.elements()?;
            o.count("elements", elems.len() as u64);
            o.count("pairs", total);
            let images: Vec<AlgElem> = elems.iter().map(image).collect();
            for (x, ix) in elems.iter().zip(&images) {
                if ix.norm() != x.norm() {
                    o.fail(
                        "iso does not preserve the norm",
                        vec![Witness::elem("x", x)],
                    );
                }
            }
            let first_bad = (0..elems.len()).into_par_iter().find_first(|&i| {
                elems
                    .iter()
                    .zip(&images)
                    .any(|(y, iy)| image(&(&elems[i] * y)) != &images[i] * iy)
            });
            if let Some(i) = first_bad {
                let (y, _) = elems
                    .iter()
                    .zip(&images)
                    .find(|(y, iy)| image(&(&elems[i] * *y)) != &images[i] * *iy)
                    .expect("found above");
                o.fail(
                    "iso is not multiplicative",
                    labelled(&[elems[i].clone(), y.clone()]),
                );
            }
            (Vec::new(), Vec::new())
        } else {
            let n = ctx.samples();
            ctx.budget.reserve(n)?;
            ctx.budget.charge(n)?;
            let mut rng = ctx.rng();
            let pairs: Vec<_> = (0..n)
                .map(|_| {
                    (
                        shared.random_element(&mut rng),
                        shared.random_element(&mut rng),
                    )
                })
                .collect();
            o.count("samples", n);
            (pairs.iter().map(|p| p.0.clone()).collect(), pairs)
        };
    for x in &elems {
        if image(x).norm() != x.norm() {
            o.fail(
                "iso does not preserve the norm",
                vec![Witness::elem("x", x)],
            );
        }
    }
    for (x, y) in &pairs {
        if image(&(x * y)) != &image(x) * &image(y) {
            o.fail(
                "iso is not multiplicative",
                labelled(&[x.clone(), y.clone()]),
            );
        }
    }
    Ok(o)
}

fn thm_isometric(ctx: &Ctx) -> cayley_core::Result<Outcome> {
    let spec = ctx.spec;
    let ring = spec.ring();
    if !matches!(
        spec.kind(),
        AlgebraKind::M2 | AlgebraKind::Quaternion { .. }
    ) {
        return Err(wrong_kind(spec, "a quaternion algebra"));
    }
    let m2 = AlgebraSpec::m2(ring);
    let q = form_from_algebra(spec);
    let qm = form_from_algebra(&m2);
    let mut o = Outcome::pass();
    match ring {
        RingSpec::Integers => Err(Error::InfiniteRing(ring)),
        RingSpec::Rationals => {
            let m2_null = match is_isotropic(&qm, &ctx.budget)? {
                Isotropy::Isotropic(w) => w,
                _ => unreachable!("the determinant form is isotropic"),
            };
            let e12 = m2.basis(1);
            match is_isotropic(&q, &ctx.budget)? {
                Isotropy::Anisotropic => {
                    // no zero divisors on one side, a nilpotent on the other
                    if !(&e12 * &e12).is_zero() {
                        o.fail("E12 is not nilpotent in M2", vec![]);
                    }
                    o.note("norm anisotropic vs isotropic; division algebra vs zero divisor E12");
                    o.witnesses
                        .push(Witness::scalars("m2-null-vector", &m2_null));
                    o.witnesses.push(Witness::elem("m2-nilpotent", &e12));
                    Ok(o)
                }
                Isotropy::Isotropic(_) if *spec.kind() == AlgebraKind::M2 => {
                    o.note("M2 against itself");
                    Ok(o)
                }
                Isotropy::Isotropic(w) => {
                    let mut s = Outcome::skipped(
                        "norm is isotropic over Q; isometry with M2 is not decided",
                    );
                    s.witnesses.push(Witness::scalars("null-vector", &w));
                    Ok(s)
                }
                Isotropy::Unknown => Ok(Outcome::skipped("isotropy over Q not decided")),
            }
        }
        _ => {
            let iso = match spec.kind() {
                AlgebraKind::M2 => Some(LinMap::identity(ring, 4)),
                _ => find_quaternion_isomorphism(spec, &m2, &ctx.budget)?,
            };
            let isometry = find_isometry(&q, &qm, &ctx.budget)?;
            o.count("isomorphic_to_m2", iso.is_some() as u64);
            o.count("isometric_to_m2", isometry.is_some() as u64);
            if let Some(t) = &iso {
                o.witnesses.push(Witness::map("isomorphism", t));
            }
            if let Some(t) = &isometry {
                o.witnesses.push(Witness::map("isometry", t));
            }
            if iso.is_some() != isometry.is_some() {
                o.fail("isomorphism and isometry with M2 disagree", vec![]);
            }
            Ok(o)
        }
    }
}

/// |G₂(𝔽q)| for octonions, |PGL₂(𝔽q)| for quaternions.
fn expected_aut_order(spec: &AlgebraSpec, q: u64) -> u64 {
    if spec.rank() == 8 {
        q.pow(6) * (q.pow(6) - 1) * (q * q - 1)
    } else {
        q * (q * q - 1)
    }
}

const AUT_ORDER_LIMIT: u64 = 100_000;

fn prop_g2_aut(ctx: &Ctx) -> cayley_core::Result<Outcome> {
    let spec = ctx.spec;
    if spec.is_associative() {
        return Err(wrong_kind(spec, "an octonion algebra"));
    }
    let RingSpec::PrimeField(p) = spec.ring() else {
        return Err(Error::UnsupportedRing {
            ring: spec.ring(),
            reason: "automorphism enumeration needs a prime field".into(),
        });
    };
    let expected = expected_aut_order(spec, p);
    if expected > AUT_ORDER_LIMIT {
        return Ok(Outcome::skipped(format!(
            "expected order {expected} is above the enumeration limit {AUT_ORDER_LIMIT}"
        )));
    }
    let aut = aut_enumerate(spec, &ctx.budget)?;
    let q = form_from_algebra(spec);
    let mut o = Outcome::pass();
    o.count("order", aut.len() as u64);
    o.count("expected", expected);
    if aut.len() as u64 != expected {
        o.fail(
            format!("order {} differs from {expected}", aut.len()),
            vec![],
        );
    }
    for t in aut.elements() {
        if !is_algebra_automorphism(spec, t)? {
            o.fail(
                "enumerated map is not an automorphism",
                vec![Witness::map("t", t)],
            );
        }
        if !is_isometry(&q, &q, t) {
            o.fail(
                "automorphism does not preserve the norm",
                vec![Witness::map("t", t)],
            );
        }
    }
    if !aut.is_group() {
        o.fail("enumerated set is not closed under composition", vec![]);
    }
    // transport the phi-family into the algebra's own coordinates
    let ring = spec.ring();
    let to_doubled = if is_split_doubled(spec) {
        Some(LinMap::identity(ring, 8))
    } else if *spec.kind() == AlgebraKind::Zorn {
        Some(zorn_doubled_map(ring))
    } else {
        None
    };
    if let Some(m) = to_doubled {
        let m_inv = m.inverse()?;
        let sl2: Vec<Mat2> = sl1_elements(&AlgebraSpec::m2(ring), &ctx.budget)?
            .elements()
            .iter()
            .map(|x| Mat2::from_coords(x.coords()))
            .collect::<cayley_core::Result<_>>()?;
        let mut inside = 0;
        for a in &sl2 {
            for b in &sl2 {
                let t = m_inv.compose(&phi_family(a, b)?.compose(&m)?)?;
                if aut.contains(&t) {
                    inside += 1;
                } else {
                    o.fail(
                        "phi(a, b) is missing from the enumeration",
                        vec![Witness::map("phi", &t)],
                    );
                }
            }
        }
        o.count("phi_pairs_inside", inside);
    }
    Ok(o)
}

fn run_claim(id: &str, ctx: &Ctx) -> Result<cayley_core::Result<Outcome>, CliError> {
    Ok(match id {
        "norm-mult" => identity_claim(ctx, &[Identity::NormMultiplicative]),
        "composition-identities" => identity_claim(
            ctx,
            &[
                Identity::ConjugateNorm,
                Identity::ConjugateInvolutive,
                Identity::ConjugateAntiMultiplicative,
            ],
        ),
        "alternative-laws" => identity_claim(
            ctx,
            &[
                Identity::LeftAlternative,
                Identity::RightAlternative,
                Identity::Flexible,
                Identity::Moufang,
            ],
        ),
        "associativity" => associativity(ctx),
        "norm-nonsingular" => norm_nonsingular(ctx),
        "lemma-ker-f" => lemma_ker_f(ctx),
        "prop-max-section" => prop_max_section(ctx),
        "lemma-dickson" => lemma_dickson(ctx),
        "prop-phi-family" => prop_phi_family(ctx),
        "zorn-doubled-iso" => zorn_doubled_iso(ctx),
        "thm-isometric" => thm_isometric(ctx),
        "prop-g2-aut" => prop_g2_aut(ctx),
        other => return Err(CliError::UnknownClaim(other.to_string())),
    })
}

/// Runs one claim, or every claim for `"all"`. Inapplicable claims are an
/// error when named and skipped under `"all"`.
pub fn verify(
    claim: &str,
    spec: &AlgebraSpec,
    opts: &VerifyOptions,
) -> Result<Vec<Report>, CliError> {
    let ids: Vec<&str> = if claim == "all" {
        CLAIMS.to_vec()
    } else if CLAIMS.contains(&claim) {
        vec![claim]
    } else {
        return Err(CliError::UnknownClaim(claim.to_string()));
    };
    let all = claim == "all";
    let run_one = |id: &str| -> Result<Report, CliError> {
        let ctx = Ctx {
            spec,
            coverage: resolve(opts.coverage, spec.ring()),
            budget: Budget::new(opts.budget),
        };
        let start = Instant::now();
        let outcome = match run_claim(id, &ctx)? {
            Ok(o) => o,
            Err(e) if is_inapplicable(&e) && all => {
                Outcome::skipped(format!("not applicable: {e}"))
            }
            Err(e) if is_skippable(&e) => Outcome::skipped(e.to_string()),
            Err(e) => return Err(CliError::Core(e)),
        };
        Ok(Report::new(
            id,
            spec.ring().to_string(),
            spec.descriptor(),
            outcome,
            start.elapsed().as_millis() as u64,
        ))
    };
    // claims run in parallel; collect keeps the claim order
    ids.into_par_iter().map(run_one).collect()
}

/// Re-evaluates the identity named in a failure report on its witness.
/// Returns `true` when the witness really violates the identity.
pub fn recheck_identity_witness(
    spec: &AlgebraSpec,
    identity: Identity,
    witnesses: &[Witness],
) -> Result<bool, CliError> {
    let shared = spec.clone().into_shared();
    let args: Vec<AlgElem> = witnesses
        .iter()
        .take(identity.arity())
        .map(|w| {
            let coords: Vec<RingElem> = w
                .coords
                .iter()
                .map(|c| spec.ring().parse_elem(c))
                .collect::<cayley_core::Result<_>>()?;
            shared.element(coords)
        })
        .collect::<cayley_core::Result<_>>()?;
    if args.len() != identity.arity() {
        return Err(CliError::Parse(format!(
            "{identity} needs {} witnesses",
            identity.arity()
        )));
    }
    Ok(!identity.holds(&args))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn f(p: u64) -> RingSpec {
        RingSpec::PrimeField(p)
    }

    fn ctx(spec: &AlgebraSpec) -> Ctx<'_> {
        Ctx {
            spec,
            coverage: resolve(CoverageChoice::Auto, spec.ring()),
            budget: Budget::default(),
        }
    }

    #[test]
    fn failing_identity_witness_rechecks() {
        let zorn = AlgebraSpec::zorn(f(2));
        let o = identity_claim(&ctx(&zorn), &[Identity::Associative]).unwrap();
        assert_eq!(o.verdict.status, Status::Fail);
        assert!(recheck_identity_witness(&zorn, Identity::Associative, &o.witnesses).unwrap());
        assert!(!recheck_identity_witness(&zorn, Identity::Moufang, &o.witnesses).unwrap());
    }

    #[test]
    fn associativity_claim_by_kind() {
        let zorn = AlgebraSpec::zorn(f(2));
        let o = associativity(&ctx(&zorn)).unwrap();
        assert!(o.is_pass());
        assert_eq!(o.witnesses.len(), 3);
        let m2 = AlgebraSpec::m2(f(3));
        let o = associativity(&ctx(&m2)).unwrap();
        assert!(o.is_pass() && o.witnesses.is_empty());
    }

    #[test]
    fn kernel_claim_counts() {
        let o = lemma_ker_f(&ctx(&AlgebraSpec::m2(f(3)))).unwrap();
        assert!(o.is_pass());
        assert_eq!(o.counts["kernel"], 2);
        assert_eq!(o.counts["pairs"], 576);
        assert_eq!(o.counts["image"], 288);
    }

    #[test]
    fn dickson_claim_over_f2_and_q() {
        let o = lemma_dickson(&ctx(&AlgebraSpec::m2(f(2)))).unwrap();
        assert!(o.is_pass());
        assert_eq!((o.counts["o"], o.counts["so"]), (72, 36));
        let h = AlgebraSpec::quaternion_i64(RingSpec::Rationals, -1, -1).unwrap();
        let o = lemma_dickson(&ctx(&h)).unwrap();
        assert!(o.is_pass());
        assert_eq!(o.counts["dickson_sigma"], 1);
    }

    #[test]
    fn phi_claim_sampled_over_q() {
        let spec = AlgebraSpec::split_doubled(RingSpec::Rationals);
        let mut c = ctx(&spec);
        c.coverage = Coverage::Samples {
            count: 50,
            seed: SAMPLE_SEED,
        };
        assert!(prop_phi_family(&c).unwrap().is_pass());
    }

    #[test]
    fn theorem_claim_on_hamilton() {
        let h = AlgebraSpec::quaternion_i64(RingSpec::Rationals, -1, -1).unwrap();
        let o = thm_isometric(&ctx(&h)).unwrap();
        assert!(o.is_pass());
        let labels: Vec<_> = o.witnesses.iter().map(|w| w.label.as_str()).collect();
        assert_eq!(labels, ["m2-null-vector", "m2-nilpotent"]);
        let split = AlgebraSpec::quaternion_i64(RingSpec::Rationals, 1, 1).unwrap();
        assert_eq!(
            thm_isometric(&ctx(&split)).unwrap().verdict.status,
            Status::Skipped
        );
    }

    #[test]
    fn expected_orders() {
        assert_eq!(expected_aut_order(&AlgebraSpec::zorn(f(2)), 2), 12_096);
        assert_eq!(expected_aut_order(&AlgebraSpec::m2(f(3)), 3), 24);
    }

    #[test]
    fn random_sl2_has_det_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert!(random_sl2(RingSpec::Rationals, &mut rng).det().is_one());
        }
    }
}
