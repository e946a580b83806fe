//! Quaternion algebras are classified by their norms: compares the partition
//! of all `QuaternionSC(a, b)` by algebra isomorphism with the partition by
//! norm isometry.

use std::collections::BTreeSet;
use std::time::Instant;

use cayley_core::isomorphism::find_quaternion_isomorphism;
use cayley_core::quadforms::{find_isometry, form_from_algebra, is_isotropic, Isotropy, QuadForm};
use cayley_core::{AlgebraSpec, Budget, Error, RingSpec};

use crate::report::{Outcome, Report, Witness};
use crate::CliError;

pub const CLAIM: &str = "norm-theorem";

/// First-fit class labels: `labels[i]` is the index of the first earlier
/// representative equivalent to item `i`.
fn first_fit<T>(
    items: &[T],
    mut equiv: impl FnMut(&T, &T) -> cayley_core::Result<bool>,
) -> cayley_core::Result<Vec<usize>> {
    let mut reps: Vec<usize> = Vec::new();
    let mut labels = Vec::with_capacity(items.len());
    for (i, x) in items.iter().enumerate() {
        let mut found = None;
        for (c, &r) in reps.iter().enumerate() {
            if equiv(x, &items[r])? {
                found = Some(c);
                break;
            }
        }
        labels.push(found.unwrap_or_else(|| {
            reps.push(i);
            reps.len() - 1
        }));
    }
    Ok(labels)
}

fn is_isomorphic(x: &AlgebraSpec, y: &AlgebraSpec, budget: &Budget) -> cayley_core::Result<bool> {
    if x == y {
        return Ok(true);
    }
    Ok(find_quaternion_isomorphism(x, y, budget)?.is_some())
}

fn finite(ring: RingSpec, budget: &Budget) -> cayley_core::Result<Outcome> {
    let units = ring.units()?;
    let mut algebras = vec![AlgebraSpec::m2(ring)];
    for a in &units {
        for b in &units {
            algebras.push(AlgebraSpec::quaternion(ring, a.clone(), b.clone())?);
        }
    }
    let forms: Vec<QuadForm> = algebras.iter().map(form_from_algebra).collect();
    // M2 comes first and serves only as a representative
    let iso = first_fit(&algebras, |x, y| is_isomorphic(x, y, budget))?;
    let isometry = first_fit(&forms, |x, y| Ok(find_isometry(x, y, budget)?.is_some()))?;
    let counts: BTreeSet<_> = forms
        .iter()
        .map(|q| q.representation_counts(budget))
        .collect::<cayley_core::Result<_>>()?;
    let classes = |labels: &[usize]| labels.iter().max().map_or(0, |m| m + 1) as u64;
    let mut o = Outcome::pass();
    o.count("pairs", (algebras.len() - 1) as u64);
    o.count("isomorphism_classes", classes(&iso));
    o.count("isometry_classes", classes(&isometry));
    o.count("count_classes", counts.len() as u64);
    o.count(
        "split",
        iso.iter().skip(1).filter(|&&c| c == 0).count() as u64,
    );
    if let Some(i) = (0..iso.len()).find(|&i| iso[i] != isometry[i]) {
        o.fail(
            format!(
                "{} is classed differently by isomorphism and by isometry",
                algebras[i].descriptor()
            ),
            vec![Witness {
                label: "algebra".into(),
                coords: vec![algebras[i].descriptor()],
            }],
        );
    }
    Ok(o)
}

fn rational_witness() -> cayley_core::Result<Outcome> {
    let q = RingSpec::Rationals;
    let hamilton = AlgebraSpec::quaternion_i64(q, -1, -1)?;
    let m2 = AlgebraSpec::m2(q);
    let budget = Budget::default();
    let mut o = Outcome::pass();
    match is_isotropic(&form_from_algebra(&hamilton), &budget)? {
        Isotropy::Anisotropic => {
            o.note("Hamilton norm anisotropic, M2 norm isotropic; E12 is a nilpotent of M2")
        }
        other => o.fail(
            format!("Hamilton norm not certified anisotropic: {other:?}"),
            vec![],
        ),
    }
    match is_isotropic(&form_from_algebra(&m2), &budget)? {
        Isotropy::Isotropic(w) => o.witnesses.push(Witness::scalars("m2-null-vector", &w)),
        other => o.fail(format!("M2 norm not shown isotropic: {other:?}"), vec![]),
    }
    let e12 = m2.basis(1);
    if !(&e12 * &e12).is_zero() {
        o.fail("E12 is not nilpotent", vec![Witness::elem("e12", &e12)]);
    }
    o.witnesses.push(Witness::elem("m2-nilpotent", &e12));
    o.count("pairs", 1);
    Ok(o)
}

/// Runs the experiment over `ring`. Over ℚ only the Hamilton versus M2
/// witness pair is examined.
pub fn run(ring: RingSpec, budget_limit: u64) -> Result<Report, CliError> {
    let start = Instant::now();
    let (algebra, outcome) = match ring {
        RingSpec::Rationals => ("quaternion(-1,-1) vs m2".to_string(), rational_witness()?),
        RingSpec::Integers => return Err(Error::InfiniteRing(ring).into()),
        _ if !ring.two_is_unit() => return Err(Error::CharTwo(ring).into()),
        _ => {
            let budget = Budget::new(budget_limit);
            let outcome = match finite(ring, &budget) {
                Err(e @ Error::BudgetExceeded(_)) => Outcome::skipped(e.to_string()),
                other => other?,
            };
            ("quaternion(a,b)".to_string(), outcome)
        }
    };
    Ok(Report::new(
        CLAIM,
        ring.to_string(),
        algebra,
        outcome,
        start.elapsed().as_millis() as u64,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_fit_labels() {
        let labels = first_fit(&[4, 1, 6, 3, 8], |x, y| Ok(x % 2 == y % 2)).unwrap();
        assert_eq!(labels, [0, 1, 0, 1, 0]);
    }

    #[test]
    fn f3_has_one_class() {
        let r = run(RingSpec::PrimeField(3), Budget::DEFAULT_LIMIT).unwrap();
        assert!(r.verdict.status == crate::report::Status::Pass, "{r:?}");
        assert_eq!(r.counts["pairs"], 4);
        assert_eq!(r.counts["isomorphism_classes"], 1);
        assert_eq!(r.counts["isometry_classes"], 1);
        assert_eq!(r.counts["count_classes"], 1);
        assert_eq!(r.counts["split"], 4);
    }

    #[test]
    fn rejected_rings() {
        assert!(matches!(
            run(RingSpec::Integers, 1),
            Err(CliError::Core(Error::InfiniteRing(_)))
        ));
        assert!(matches!(
            run(RingSpec::PrimeField(2), 1),
            Err(CliError::Core(Error::CharTwo(_)))
        ));
        assert!(matches!(
            run(RingSpec::ModRing(4), 1),
            Err(CliError::Core(Error::CharTwo(_)))
        ));
    }

    #[test]
    fn rational_pair_is_separated() {
        let r = run(RingSpec::Rationals, 1).unwrap();
        assert_eq!(r.verdict.status, crate::report::Status::Pass);
        assert_eq!(r.witnesses.len(), 2);
    }
}
