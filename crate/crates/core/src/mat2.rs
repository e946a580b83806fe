//! 2×2 matrices over a base ring: the split quaternion algebra with
//! determinant as norm, trace, and the canonical involution
//! σ(X) = tr(X)·I − X.
//!
//! Coordinates are always ordered (E11, E12, E21, E22).

use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{RingElem, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    ring: RingSpec,
    e: [RingElem; 4],
}

impl Mat2 {
    /// Builds `[[e11, e12], [e21, e22]]`; all entries must share a ring.
    pub fn new(e11: RingElem, e12: RingElem, e21: RingElem, e22: RingElem) -> Result<Self> {
        let ring = e11.ring();
        for x in [&e12, &e21, &e22] {
            if x.ring() != ring {
                return Err(Error::RingMismatch(ring, x.ring()));
            }
        }
        Ok(Mat2 {
            ring,
            e: [e11, e12, e21, e22],
        })
    }

    pub fn from_i64(ring: RingSpec, e: [i64; 4]) -> Self {
        Mat2 {
            ring,
            e: e.map(|x| ring.from_i64(x)),
        }
    }

    /// From coordinates in the (E11, E12, E21, E22) order.
    pub fn from_coords(coords: &[RingElem]) -> Result<Self> {
        if coords.len() != 4 {
            return Err(Error::RankMismatch {
                expected: 4,
                got: coords.len(),
            });
        }
        Mat2::new(
            coords[0].clone(),
            coords[1].clone(),
            coords[2].clone(),
            coords[3].clone(),
        )
    }

    pub fn identity(ring: RingSpec) -> Self {
        Mat2::scalar(&ring.one())
    }

    pub fn zero(ring: RingSpec) -> Self {
        Mat2::scalar(&ring.zero())
    }

    pub fn scalar(t: &RingElem) -> Self {
        let z = t.ring().zero();
        Mat2 {
            ring: t.ring(),
            e: [t.clone(), z.clone(), z, t.clone()],
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn coords(&self) -> &[RingElem; 4] {
        &self.e
    }

    pub fn into_coords(self) -> [RingElem; 4] {
        self.e
    }

    pub fn get(&self, row: usize, col: usize) -> &RingElem {
        &self.e[2 * row + col]
    }

    fn same_ring(&self, other: &Mat2) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Mat2) -> Result<Mat2> {
        self.same_ring(other)?;
        Ok(Mat2 {
            ring: self.ring,
            e: mul_coords(&self.e, &other.e),
        })
    }

    pub fn add(&self, other: &Mat2) -> Result<Mat2> {
        self.same_ring(other)?;
        Ok(Mat2 {
            ring: self.ring,
            e: std::array::from_fn(|k| &self.e[k] + &other.e[k]),
        })
    }

    pub fn scale(&self, t: &RingElem) -> Mat2 {
        Mat2 {
            ring: self.ring,
            e: std::array::from_fn(|k| t * &self.e[k]),
        }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 {
            ring: self.ring,
            e: std::array::from_fn(|k| -&self.e[k]),
        }
    }

    pub fn det(&self) -> RingElem {
        det_coords(&self.e)
    }

    pub fn trace(&self) -> RingElem {
        &self.e[0] + &self.e[3]
    }

    /// The canonical involution tr(X)·I − X.
    pub fn sigma(&self) -> Mat2 {
        Mat2 {
            ring: self.ring,
            e: sigma_coords(&self.e),
        }
    }

    /// det(X)⁻¹ · σ(X), or `NotInvertible`.
    pub fn inv(&self) -> Result<Mat2> {
        let d = self.det().inv().map_err(|_| Error::NotInvertible)?;
        Ok(self.sigma().scale(&d))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0], self.e[1], self.e[2], self.e[3]
        )
    }
}

// Coordinate-level kernels shared with the algebra implementations.

pub(crate) fn mul_coords(x: &[RingElem], y: &[RingElem]) -> [RingElem; 4] {
    [
        &(&x[0] * &y[0]) + &(&x[1] * &y[2]),
        &(&x[0] * &y[1]) + &(&x[1] * &y[3]),
        &(&x[2] * &y[0]) + &(&x[3] * &y[2]),
        &(&x[2] * &y[1]) + &(&x[3] * &y[3]),
    ]
}

pub(crate) fn det_coords(x: &[RingElem]) -> RingElem {
    &(&x[0] * &x[3]) - &(&x[1] * &x[2])
}

pub(crate) fn sigma_coords(x: &[RingElem]) -> [RingElem; 4] {
    [x[3].clone(), -&x[1], -&x[2], x[0].clone()]
}
