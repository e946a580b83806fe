//! `cayley group`: orders of the point groups of an algebra.

use std::time::Instant;

use cayley_core::grouppoints::{
    aut_enumerate, mu2_elements, orthogonal_elements, sl1_elements, special_orthogonal, GroupKind,
};
use cayley_core::quadforms::form_from_algebra;
use cayley_core::{AlgebraSpec, Budget, Error};

use crate::report::{Outcome, Report, Witness};
use crate::CliError;

fn enumerate(
    which: GroupKind,
    spec: &AlgebraSpec,
    budget: &Budget,
    list: bool,
) -> cayley_core::Result<Outcome> {
    let mut o = Outcome::pass();
    let (order, closed, elems): (usize, bool, Vec<Witness>) = match which {
        GroupKind::O | GroupKind::So | GroupKind::Aut => {
            let set = match which {
                GroupKind::O => orthogonal_elements(&form_from_algebra(spec), budget)?,
                GroupKind::So => special_orthogonal(&form_from_algebra(spec), budget)?,
                _ => aut_enumerate(spec, budget)?,
            };
            let w = if list {
                set.elements()
                    .iter()
                    .map(|t| Witness::map("g", t))
                    .collect()
            } else {
                vec![]
            };
            (set.len(), set.is_group(), w)
        }
        GroupKind::Sl1 => {
            let set = sl1_elements(spec, budget)?;
            let closed = !spec.is_associative() || set.is_group();
            let w = if list {
                set.elements()
                    .iter()
                    .map(|x| Witness::elem("g", x))
                    .collect()
            } else {
                vec![]
            };
            (set.len(), closed, w)
        }
        GroupKind::Mu2 => {
            let ring = spec.ring();
            ring.require_finite()?;
            let set = mu2_elements(ring)?;
            let closed = set.is_closed_under(&ring.one(), |a, b| a * b);
            let w = if list {
                set.elements()
                    .iter()
                    .map(|t| Witness::scalars("g", std::slice::from_ref(t)))
                    .collect()
            } else {
                vec![]
            };
            (set.len(), closed, w)
        }
    };
    o.count("order", order as u64);
    if !spec.is_associative() && which == GroupKind::Sl1 {
        o.note("norm-one elements of an octonion algebra form a Moufang loop, not a group");
    }
    if !closed {
        o.fail(
            format!("{which} elements are not closed under multiplication"),
            vec![],
        );
    }
    o.witnesses.extend(elems);
    Ok(o)
}

/// Enumerates one group. Budget exhaustion is reported as skipped.
pub fn run(
    which: GroupKind,
    spec: &AlgebraSpec,
    budget_limit: u64,
    list: bool,
) -> Result<Report, CliError> {
    let start = Instant::now();
    let budget = Budget::new(budget_limit);
    let outcome = match enumerate(which, spec, &budget, list) {
        Ok(o) => o,
        Err(e @ Error::BudgetExceeded(_)) => Outcome::skipped(e.to_string()),
        Err(e) => return Err(e.into()),
    };
    Ok(Report::new(
        &format!("group-{which}"),
        spec.ring().to_string(),
        spec.descriptor(),
        outcome,
        start.elapsed().as_millis() as u64,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cayley_core::RingSpec;

    fn order(which: GroupKind, spec: &AlgebraSpec) -> u64 {
        let r = run(which, spec, Budget::DEFAULT_LIMIT, false).unwrap();
        assert!(r.verdict.status == crate::report::Status::Pass, "{r:?}");
        r.counts["order"]
    }

    #[test]
    fn small_orders() {
        let f = RingSpec::PrimeField;
        assert_eq!(order(GroupKind::Sl1, &AlgebraSpec::m2(f(5))), 120);
        assert_eq!(order(GroupKind::O, &AlgebraSpec::m2(f(2))), 72);
        assert_eq!(order(GroupKind::So, &AlgebraSpec::m2(f(2))), 36);
        assert_eq!(
            order(GroupKind::Mu2, &AlgebraSpec::m2(RingSpec::ModRing(15))),
            4
        );
        assert_eq!(order(GroupKind::Aut, &AlgebraSpec::m2(f(3))), 24);
    }

    #[test]
    fn list_and_budget() {
        let spec = AlgebraSpec::m2(RingSpec::PrimeField(2));
        let r = run(GroupKind::Sl1, &spec, Budget::DEFAULT_LIMIT, true).unwrap();
        assert_eq!(r.witnesses.len(), 6);
        let r = run(GroupKind::O, &spec, 10, false).unwrap();
        assert_eq!(r.verdict.status, crate::report::Status::Skipped);
        let q = AlgebraSpec::m2(RingSpec::Rationals);
        assert!(matches!(
            run(GroupKind::Sl1, &q, 10, false),
            Err(CliError::Core(Error::InfiniteRing(_)))
        ));
    }
}
