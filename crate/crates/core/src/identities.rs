//! Polynomial identities of composition algebras checked on points:
//! exhaustively over finite rings, or on seeded random samples.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebras::{AlgElem, AlgebraSpec, SharedSpec};
use crate::budget::Budget;
use crate::error::Result;
use crate::finite::{to_residues, ResidueAlgebra};
use crate::linmap::LinMap;
use crate::quadforms::{form_from_algebra, ResidueForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// n(xy) = n(x) n(y)
    NormMultiplicative,
    /// x x̄ = x̄ x = n(x)·1
    ConjugateNorm,
    /// x̄̄ = x
    ConjugateInvolutive,
    /// (xy)‾ = ȳ x̄
    ConjugateAntiMultiplicative,
    /// x(xy) = (xx)y
    LeftAlternative,
    /// (yx)x = y(xx)
    RightAlternative,
    /// (xy)x = x(yx)
    Flexible,
    /// (xy)(zx) = (x(yz))x
    Moufang,
    /// (xy)z = x(yz)
    Associative,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::NormMultiplicative,
        Identity::ConjugateNorm,
        Identity::ConjugateInvolutive,
        Identity::ConjugateAntiMultiplicative,
        Identity::LeftAlternative,
        Identity::RightAlternative,
        Identity::Flexible,
        Identity::Moufang,
        Identity::Associative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::NormMultiplicative => "norm-multiplicative",
            Identity::ConjugateNorm => "conjugate-norm",
            Identity::ConjugateInvolutive => "conjugate-involutive",
            Identity::ConjugateAntiMultiplicative => "conjugate-anti-multiplicative",
            Identity::LeftAlternative => "left-alternative",
            Identity::RightAlternative => "right-alternative",
            Identity::Flexible => "flexible",
            Identity::Moufang => "moufang",
            Identity::Associative => "associative",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Identity::ConjugateNorm | Identity::ConjugateInvolutive => 1,
            Identity::Moufang | Identity::Associative => 3,
            _ => 2,
        }
    }

    /// Evaluates the identity on one tuple of `arity()` elements.
    pub fn holds(self, args: &[AlgElem]) -> bool {
        let x = &args[0];
        match self {
            Identity::NormMultiplicative => (x * &args[1]).norm() == &x.norm() * &args[1].norm(),
            Identity::ConjugateNorm => {
                let n = x.spec().one().scale(&x.norm());
                x * &x.conj() == n && &x.conj() * x == n
            }
            Identity::ConjugateInvolutive => &x.conj().conj() == x,
            Identity::ConjugateAntiMultiplicative => {
                let y = &args[1];
                (x * y).conj() == &y.conj() * &x.conj()
            }
            Identity::LeftAlternative => x * &(x * &args[1]) == &(x * x) * &args[1],
            Identity::RightAlternative => {
                let y = &args[1];
                &(y * x) * x == y * &(x * x)
            }
            Identity::Flexible => {
                let y = &args[1];
                &(x * y) * x == x * &(y * x)
            }
            Identity::Moufang => {
                let (y, z) = (&args[1], &args[2]);
                &(x * y) * &(z * x) == &(x * &(y * z)) * x
            }
            Identity::Associative => {
                let (y, z) = (&args[1], &args[2]);
                &(x * y) * z == x * &(y * z)
            }
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    /// Every tuple, in lexicographic order.
    Exhaustive,
    /// `count` random tuples from a fixed seed.
    Samples { count: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub identity: Identity,
    pub checked: u64,
    pub failures: u64,
    /// First failing tuple in scan order.
    pub witness: Option<Vec<AlgElem>>,
}

impl IdentityOutcome {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// Elements of a finite algebra as indices `0..|R|^n` in lexicographic
/// coordinate order, with products, norms and conjugates computed on residues.
struct IndexedAlgebra {
    m: u64,
    n: usize,
    size: usize,
    alg: ResidueAlgebra,
    form: ResidueForm,
    conj: Vec<u64>,
    // full product table when small enough
    table: Option<Vec<u32>>,
}

const TABLE_LIMIT: usize = 1024;

impl IndexedAlgebra {
    fn new(spec: &SharedSpec) -> Result<Self> {
        let alg = ResidueAlgebra::new(spec)?;
        let (m, n) = (alg.m, alg.n);
        let size = spec.size()? as usize;
        let form = ResidueForm::new(&form_from_algebra(spec));
        let sigma = LinMap::of_algebra_map(spec, |x| x.conj());
        let conj = sigma.rows().iter().flat_map(|r| to_residues(r)).collect();
        let mut out = IndexedAlgebra {
            m,
            n,
            size,
            alg,
            form,
            conj,
            table: None,
        };
        if size <= TABLE_LIMIT {
            let vs: Vec<Vec<u64>> = (0..size).map(|i| out.vector(i)).collect();
            let mut table = vec![0u32; size * size];
            table.par_chunks_mut(size).enumerate().for_each(|(i, row)| {
                for (j, slot) in row.iter_mut().enumerate() {
                    *slot = out.index(&out.alg.mul(&vs[i], &vs[j])) as u32;
                }
            });
            out.table = Some(table);
        }
        Ok(out)
    }

    fn vector(&self, mut i: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.n];
        for k in (0..self.n).rev() {
            v[k] = (i as u64) % self.m;
            i /= self.m as usize;
        }
        v
    }

    fn index(&self, v: &[u64]) -> usize {
        v.iter()
            .fold(0usize, |acc, &c| acc * self.m as usize + c as usize)
    }

    fn mul(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t[i * self.size + j] as usize,
            None => self.index(&self.alg.mul(&self.vector(i), &self.vector(j))),
        }
    }

    fn norm(&self, i: usize) -> u64 {
        self.form.eval(&self.vector(i))
    }

    fn conj(&self, i: usize) -> usize {
        let v = self.vector(i);
        let m = self.m as u128;
        let w: Vec<u64> = (0..self.n)
            .map(|r| {
                (0..self.n)
                    .map(|c| self.conj[r * self.n + c] as u128 * v[c] as u128 % m)
                    .sum::<u128>()
                    .rem_euclid(m) as u64
            })
            .collect();
        self.index(&w)
    }

    fn scalar(&self, t: u64) -> usize {
        let m = self.m as u128;
        let w: Vec<u64> = self
            .alg
            .one
            .iter()
            .map(|&o| (o as u128 * t as u128 % m) as u64)
            .collect();
        self.index(&w)
    }

    fn holds(&self, id: Identity, a: &[usize]) -> bool {
        let x = a[0];
        let mm = |p: usize, q: usize| self.mul(p, q);
        match id {
            Identity::NormMultiplicative => {
                let lhs = self.norm(mm(x, a[1]));
                lhs as u128 == (self.norm(x) as u128 * self.norm(a[1]) as u128) % self.m as u128
            }
            Identity::ConjugateNorm => {
                let n = self.scalar(self.norm(x));
                let c = self.conj(x);
                mm(x, c) == n && mm(c, x) == n
            }
            Identity::ConjugateInvolutive => self.conj(self.conj(x)) == x,
            Identity::ConjugateAntiMultiplicative => {
                self.conj(mm(x, a[1])) == mm(self.conj(a[1]), self.conj(x))
            }
            Identity::LeftAlternative => mm(x, mm(x, a[1])) == mm(mm(x, x), a[1]),
            Identity::RightAlternative => mm(mm(a[1], x), x) == mm(a[1], mm(x, x)),
            Identity::Flexible => mm(mm(x, a[1]), x) == mm(x, mm(a[1], x)),
            Identity::Moufang => mm(mm(x, a[1]), mm(a[2], x)) == mm(mm(x, mm(a[1], a[2])), x),
            Identity::Associative => mm(mm(x, a[1]), a[2]) == mm(x, mm(a[1], a[2])),
        }
    }
}

/// Checks `identity` on `spec` with the requested coverage.
///
/// Exhaustive scans need a finite ring and charge one budget unit per tuple;
/// the reported witness is the lexicographically first failing tuple.
pub fn check_identity(
    spec: &AlgebraSpec,
    identity: Identity,
    coverage: Coverage,
    budget: &Budget,
) -> Result<IdentityOutcome> {
    let shared = spec.clone().into_shared();
    let arity = identity.arity();
    match coverage {
        Coverage::Exhaustive => {
            let size = shared.size()?;
            let total = size.checked_pow(arity as u32).unwrap_or(u64::MAX);
            budget.reserve(total)?;
            let indexed = IndexedAlgebra::new(&shared)?;
            budget.charge(total)?;
            let inner = (size as usize).pow(arity as u32 - 1);
            // (failures, first failing inner index) per leading element
            let per_x: Vec<(u64, Option<usize>)> = (0..size as usize)
                .into_par_iter()
                .map(|x| {
                    let mut failures = 0;
                    let mut first = None;
                    let mut args = vec![x; arity];
                    for r in 0..inner {
                        let mut rest = r;
                        for k in (1..arity).rev() {
                            args[k] = rest % size as usize;
                            rest /= size as usize;
                        }
                        if !indexed.holds(identity, &args) {
                            failures += 1;
                            first.get_or_insert(r);
                        }
                    }
                    (failures, first)
                })
                .collect();
            let failures = per_x.iter().map(|p| p.0).sum();
            let witness = per_x.iter().enumerate().find_map(|(x, &(_, first))| {
                first.map(|r| {
                    let mut idx = vec![x; arity];
                    let mut rest = r;
                    for k in (1..arity).rev() {
                        idx[k] = rest % size as usize;
                        rest /= size as usize;
                    }
                    idx.iter()
                        .map(|&i| {
                            shared
                                .element(crate::finite::from_residues(
                                    shared.ring(),
                                    &indexed.vector(i),
                                ))
                                .expect("rank matches")
                        })
                        .collect()
                })
            });
            Ok(IdentityOutcome {
                identity,
                checked: total,
                failures,
                witness,
            })
        }
        Coverage::Samples { count, seed } => {
            budget.reserve(count)?;
            budget.charge(count)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failures = 0;
            let mut witness = None;
            for _ in 0..count {
                let args: Vec<AlgElem> = (0..arity)
                    .map(|_| shared.random_element(&mut rng))
                    .collect();
                if !identity.holds(&args) {
                    failures += 1;
                    witness.get_or_insert(args);
                }
            }
            Ok(IdentityOutcome {
                identity,
                checked: count,
                failures,
                witness,
            })
        }
    }
}
