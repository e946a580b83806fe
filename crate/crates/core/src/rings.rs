//! Base rings: ℤ, ℚ, ℤ/n and prime fields 𝔽p, with canonical element
//! representatives.
//!
//! Every [`RingElem`] carries its [`RingSpec`]; two elements are equal exactly
//! when their representations are equal. Integers are arbitrary precision,
//! rationals are kept reduced with a positive denominator, and residues are
//! stored as the least non-negative representative.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A supported base ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    Rationals,
    /// ℤ/n for any n ≥ 2.
    ModRing(u64),
    /// 𝔽p for a prime p.
    PrimeField(u64),
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn mod_inverse(x: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (x as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

impl RingSpec {
    /// Builds `F<p>`, rejecting composite `p`.
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::RingParse {
                input: format!("F{p}"),
                reason: format!("{p} is not prime"),
            });
        }
        Ok(RingSpec::PrimeField(p))
    }

    pub fn mod_ring(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::RingParse {
                input: format!("Z/{n}"),
                reason: "modulus must be at least 2".into(),
            });
        }
        Ok(RingSpec::ModRing(n))
    }

    /// The modulus of a finite ring, `None` for ℤ and ℚ.
    pub fn modulus(&self) -> Option<u64> {
        match *self {
            RingSpec::ModRing(n) | RingSpec::PrimeField(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.modulus().is_some()
    }

    /// Number of elements, `None` when infinite.
    pub fn size(&self) -> Option<u64> {
        self.modulus()
    }

    /// True for 𝔽p and for ℤ/p with p prime.
    pub fn is_field(&self) -> bool {
        match *self {
            RingSpec::Rationals | RingSpec::PrimeField(_) => true,
            RingSpec::ModRing(n) => is_prime(n),
            RingSpec::Integers => false,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    pub fn two_is_unit(&self) -> bool {
        match *self {
            RingSpec::Integers => false,
            RingSpec::Rationals => true,
            RingSpec::ModRing(n) | RingSpec::PrimeField(n) => n % 2 == 1,
        }
    }

    pub fn require_finite(&self) -> Result<u64> {
        self.modulus().ok_or(Error::InfiniteRing(*self))
    }

    pub fn zero(&self) -> RingElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> RingElem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> RingElem {
        let value = match *self {
            RingSpec::Integers => Value::Integer(n.clone()),
            RingSpec::Rationals => Value::Rational(BigRational::from_integer(n.clone())),
            RingSpec::ModRing(m) | RingSpec::PrimeField(m) => {
                let r = n.mod_floor(&BigInt::from(m));
                Value::Residue(r.to_u64().expect("residue fits in u64"))
            }
        };
        RingElem { ring: *self, value }
    }

    /// Residue `r mod n`; reduces out-of-range input. Panics on infinite rings.
    pub fn from_residue(&self, r: u64) -> RingElem {
        let m = self.modulus().expect("from_residue on an infinite ring");
        RingElem {
            ring: *self,
            value: Value::Residue(r % m),
        }
    }

    /// p/q in ℚ, or p·q⁻¹ in a finite ring when q is a unit.
    pub fn fraction(&self, p: &BigInt, q: &BigInt) -> Result<RingElem> {
        if q.is_zero() {
            return Err(Error::ElemParse {
                input: format!("{p}/{q}"),
                ring: *self,
                reason: "zero denominator".into(),
            });
        }
        match self {
            RingSpec::Rationals => Ok(RingElem {
                ring: *self,
                value: Value::Rational(BigRational::new(p.clone(), q.clone())),
            }),
            _ => {
                let den = self.from_bigint(q).inv()?;
                Ok(&self.from_bigint(p) * &den)
            }
        }
    }

    /// Parses a decimal integer or `p/q` into this ring.
    pub fn parse_elem(&self, s: &str) -> Result<RingElem> {
        let bad = |reason: &str| Error::ElemParse {
            input: s.to_string(),
            ring: *self,
            reason: reason.to_string(),
        };
        let t = s.trim();
        match t.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad("bad numerator"))?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad("bad denominator"))?;
                self.fraction(&p, &q)
            }
            None => {
                let n = BigInt::from_str(t).map_err(|_| bad("not an integer"))?;
                Ok(self.from_bigint(&n))
            }
        }
    }

    /// All elements of a finite ring in ascending residue order.
    pub fn elements(&self) -> Result<Vec<RingElem>> {
        let m = self.require_finite()?;
        Ok((0..m).map(|r| self.from_residue(r)).collect())
    }

    /// The units of a finite ring in ascending order.
    pub fn units(&self) -> Result<Vec<RingElem>> {
        Ok(self
            .elements()?
            .into_iter()
            .filter(|x| x.is_unit())
            .collect())
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::ModRing(n) => write!(f, "Z/{n}"),
            RingSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::RingParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let digits = |t: &str| -> Result<u64> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("expected a decimal modulus"));
            }
            t.parse::<u64>().map_err(|_| bad("modulus out of range"))
        };
        match s {
            "Z" => Ok(RingSpec::Integers),
            "Q" => Ok(RingSpec::Rationals),
            _ => {
                if let Some(n) = s.strip_prefix("Z/") {
                    let n = digits(n)?;
                    if n < 2 {
                        return Err(bad("modulus must be at least 2"));
                    }
                    Ok(RingSpec::ModRing(n))
                } else if let Some(p) = s.strip_prefix('F') {
                    let p = digits(p)?;
                    if !is_prime(p) {
                        return Err(bad("characteristic must be prime"));
                    }
                    Ok(RingSpec::PrimeField(p))
                } else {
                    Err(bad("expected Z, Q, Z/<n> or F<p>"))
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Value {
    Integer(BigInt),
    Rational(BigRational),
    Residue(u64),
}

/// An element of a [`RingSpec`] in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    ring: RingSpec,
    value: Value,
}

impl RingElem {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Integer(n) => n.is_zero(),
            Value::Rational(q) => q.is_zero(),
            Value::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Integer(n) => n.is_one(),
            Value::Rational(q) => q.is_one(),
            Value::Residue(r) => *r == 1,
        }
    }

    /// The least non-negative representative in a finite ring.
    pub fn residue(&self) -> Option<u64> {
        match self.value {
            Value::Residue(r) => Some(r),
            _ => None,
        }
    }

    /// Integer representative: the integer itself, or the residue lifted to
    /// `0..n`. `None` for ℚ.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match &self.value {
            Value::Integer(n) => Some(n.clone()),
            Value::Residue(r) => Some(BigInt::from(*r)),
            Value::Rational(_) => None,
        }
    }

    /// Value as a rational number; `None` in finite rings.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Integer(n) => Some(BigRational::from_integer(n.clone())),
            Value::Rational(q) => Some(q.clone()),
            Value::Residue(_) => None,
        }
    }

    /// Sign in ℤ or ℚ.
    pub fn sign(&self) -> Option<Ordering> {
        match &self.value {
            Value::Integer(n) => Some(n.cmp(&BigInt::zero())),
            Value::Rational(q) => Some(q.cmp(&BigRational::zero())),
            Value::Residue(_) => None,
        }
    }

    /// Re-reduces the representation. Always the identity on values built by
    /// this module.
    pub fn canonicalize(&self) -> RingElem {
        match &self.value {
            Value::Integer(n) => self.ring.from_bigint(n),
            Value::Rational(q) => RingElem {
                ring: self.ring,
                value: Value::Rational(BigRational::new(q.numer().clone(), q.denom().clone())),
            },
            Value::Residue(r) => self.ring.from_residue(*r),
        }
    }

    fn check(&self, other: &RingElem) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    fn combine(
        &self,
        other: &RingElem,
        int: impl Fn(&BigInt, &BigInt) -> BigInt,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        res: impl Fn(u128, u128, u128) -> u128,
    ) -> Result<RingElem> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Integer(a), Value::Integer(b)) => Value::Integer(int(a, b)),
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(rat(a, b)),
            (Value::Residue(a), Value::Residue(b)) => {
                let m = self.ring.modulus().unwrap() as u128;
                Value::Residue((res(*a as u128, *b as u128, m) % m) as u64)
            }
            _ => unreachable!("value variant always matches its ring"),
        };
        Ok(RingElem {
            ring: self.ring,
            value,
        })
    }

    pub fn checked_add(&self, other: &RingElem) -> Result<RingElem> {
        self.combine(other, |a, b| a + b, |a, b| a + b, |a, b, _| a + b)
    }

    pub fn checked_sub(&self, other: &RingElem) -> Result<RingElem> {
        self.combine(other, |a, b| a - b, |a, b| a - b, |a, b, m| a + (m - b))
    }

    pub fn checked_mul(&self, other: &RingElem) -> Result<RingElem> {
        self.combine(other, |a, b| a * b, |a, b| a * b, |a, b, _| a * b)
    }

    pub fn neg(&self) -> RingElem {
        let value = match &self.value {
            Value::Integer(n) => Value::Integer(-n),
            Value::Rational(q) => Value::Rational(-q),
            Value::Residue(r) => {
                let m = self.ring.modulus().unwrap();
                Value::Residue((m - r) % m)
            }
        };
        RingElem {
            ring: self.ring,
            value,
        }
    }

    /// Multiplicative inverse, or `NotAUnit`.
    pub fn inv(&self) -> Result<RingElem> {
        let not_unit = || Error::NotAUnit {
            value: self.to_string(),
            ring: self.ring,
        };
        let value = match &self.value {
            Value::Integer(n) => {
                if n.abs().is_one() {
                    Value::Integer(n.clone())
                } else {
                    return Err(not_unit());
                }
            }
            Value::Rational(q) => {
                if q.is_zero() {
                    return Err(not_unit());
                }
                Value::Rational(q.recip())
            }
            Value::Residue(r) => {
                let m = self.ring.modulus().unwrap();
                Value::Residue(mod_inverse(*r, m).ok_or_else(not_unit)?)
            }
        };
        Ok(RingElem {
            ring: self.ring,
            value,
        })
    }

    pub fn is_unit(&self) -> bool {
        match &self.value {
            Value::Integer(n) => n.abs().is_one(),
            Value::Rational(q) => !q.is_zero(),
            Value::Residue(r) => {
                let m = self.ring.modulus().unwrap();
                r.gcd(&m) == 1
            }
        }
    }

    pub fn square(&self) -> RingElem {
        self * self
    }

    pub fn pow(&self, e: u32) -> RingElem {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Square root in ℚ, when the value is a rational square.
    pub fn rational_sqrt(&self) -> Option<RingElem> {
        let q = self.to_rational()?;
        if q.is_negative() {
            return None;
        }
        let n = q.numer().sqrt();
        let d = q.denom().sqrt();
        if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
            Some(RingElem {
                ring: RingSpec::Rationals,
                value: Value::Rational(BigRational::new(n, d)),
            })
        } else {
            None
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Integer(n) => write!(f, "{n}"),
            Value::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Value::Residue(r) => write!(f, "{r}"),
        }
    }
}

// Operator forms panic on ring mismatch; use the `checked_*` methods when the
// operands are not already known to share a ring.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &RingElem) -> RingElem {
                self.$checked(rhs).expect("ring mismatch in arithmetic")
            }
        }
        impl $tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                (&self).$method(&rhs)
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::neg(self)
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::neg(&self)
    }
}

/// Binary arithmetic operator selector for [`elem_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Applies `op` to `x` (and `y` for the binary operators).
pub fn elem_arith(op: ArithOp, x: &RingElem, y: Option<&RingElem>) -> Result<RingElem> {
    match (op, y) {
        (ArithOp::Neg, _) => Ok(x.neg()),
        (ArithOp::Add, Some(y)) => x.checked_add(y),
        (ArithOp::Sub, Some(y)) => x.checked_sub(y),
        (ArithOp::Mul, Some(y)) => x.checked_mul(y),
        (_, None) => panic!("binary ring operation needs two operands"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z8() -> RingSpec {
        RingSpec::ModRing(8)
    }

    #[test]
    fn parse_specs() {
        assert_eq!("Z".parse::<RingSpec>().unwrap(), RingSpec::Integers);
        assert_eq!("Q".parse::<RingSpec>().unwrap(), RingSpec::Rationals);
        assert_eq!("Z/8".parse::<RingSpec>().unwrap(), RingSpec::ModRing(8));
        assert_eq!("F5".parse::<RingSpec>().unwrap(), RingSpec::PrimeField(5));
        for bad in [
            "F4", "F1", "Z/1", "Z/0", "z", "F", "Z/", "Z/-3", "Q ", "f5", "F+5",
        ] {
            assert!(bad.parse::<RingSpec>().is_err(), "{bad} should not parse");
        }
        for s in ["Z", "Q", "Z/9", "F7"] {
            assert_eq!(s.parse::<RingSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn spec_examples() {
        let five = z8().from_i64(5);
        assert_eq!(&five * &five, z8().one());
        let q = RingSpec::Rationals;
        let sum = &q.parse_elem("1/2").unwrap() + &q.parse_elem("1/3").unwrap();
        assert_eq!(sum, q.parse_elem("5/6").unwrap());
        assert_eq!(sum.to_string(), "5/6");
        let f5 = RingSpec::PrimeField(5);
        for x in f5.elements().unwrap() {
            assert_eq!(&f5.zero() + &x, x);
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(z8().from_i64(3).inv().unwrap(), z8().from_i64(3));
        assert!(matches!(
            z8().from_i64(2).inv(),
            Err(Error::NotAUnit { .. })
        ));
        for r in [
            RingSpec::Integers,
            RingSpec::Rationals,
            z8(),
            RingSpec::PrimeField(7),
        ] {
            assert_eq!(r.one().inv().unwrap(), r.one());
            assert!(r.zero().inv().is_err());
        }
        assert_eq!(
            RingSpec::Integers.from_i64(-1).inv().unwrap(),
            RingSpec::Integers.from_i64(-1)
        );
        assert!(RingSpec::Integers.from_i64(2).inv().is_err());
    }

    #[test]
    fn enumeration() {
        let z3 = RingSpec::ModRing(3);
        let xs: Vec<_> = z3
            .elements()
            .unwrap()
            .iter()
            .map(|x| x.residue().unwrap())
            .collect();
        assert_eq!(xs, vec![0, 1, 2]);
        assert_eq!(RingSpec::PrimeField(2).elements().unwrap().len(), 2);
        assert_eq!(
            RingSpec::Rationals.elements(),
            Err(Error::InfiniteRing(RingSpec::Rationals))
        );
        assert!(RingSpec::Integers.elements().is_err());
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = RingSpec::ModRing(5).one();
        let b = RingSpec::PrimeField(5).one();
        assert_eq!(
            a.checked_add(&b),
            Err(Error::RingMismatch(
                RingSpec::ModRing(5),
                RingSpec::PrimeField(5)
            ))
        );
        assert!(elem_arith(ArithOp::Mul, &a, Some(&b)).is_err());
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = RingSpec::Rationals;
        let x = q.parse_elem("6/-4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(x, q.parse_elem("-3/2").unwrap());
        assert_eq!(q.parse_elem("4/2").unwrap(), q.from_i64(2));
        assert!(q.parse_elem("1/0").is_err());
        assert_eq!(
            q.parse_elem("9/4")
                .unwrap()
                .rational_sqrt()
                .unwrap()
                .to_string(),
            "3/2"
        );
        assert!(q.parse_elem("2").unwrap().rational_sqrt().is_none());
    }

    #[test]
    fn finite_fraction_parsing() {
        let f5 = RingSpec::PrimeField(5);
        assert_eq!(f5.parse_elem("1/2").unwrap(), f5.from_i64(3));
        assert_eq!(f5.parse_elem("-1").unwrap(), f5.from_i64(4));
        assert!(z8().parse_elem("1/2").is_err());
    }

    // Exhaustive ring axioms on the small rings, and the unit oracle.
    #[test]
    fn ring_axioms_exhaustive() {
        for r in [
            RingSpec::PrimeField(2),
            RingSpec::PrimeField(3),
            RingSpec::PrimeField(5),
            RingSpec::PrimeField(7),
            RingSpec::ModRing(4),
            RingSpec::ModRing(6),
            z8(),
            RingSpec::ModRing(9),
        ] {
            let xs = r.elements().unwrap();
            for x in &xs {
                // unit iff brute-force inverse exists
                let brute = xs.iter().find(|y| (x * *y).is_one());
                assert_eq!(x.inv().ok().as_ref(), brute, "{r}: {x}");
                assert_eq!(x.canonicalize(), *x);
                assert_eq!(x + &x.neg(), r.zero());
                for y in &xs {
                    assert_eq!(x + y, y + x);
                    assert_eq!(x * y, y * x);
                    for z in &xs {
                        assert_eq!(&(x + y) + z, x + &(y + z));
                        assert_eq!(&(x * y) * z, x * &(y * z));
                        assert_eq!(x * &(y + z), &(x * y) + &(x * z));
                    }
                }
            }
        }
    }

    #[test]
    fn prime_helpers() {
        assert_eq!(prime_divisors(9), vec![3]);
        assert_eq!(prime_divisors(60), vec![2, 3, 5]);
        assert_eq!(prime_divisors(13), vec![13]);
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }
}
