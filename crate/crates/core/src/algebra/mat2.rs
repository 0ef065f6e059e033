use serde::{Deserialize, Serialize};
use std::ops::Mul;

use super::{AlgebraError, RatFunc};

/// Invertible 2x2 matrix over `Q(x)`, row major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMat2")]
pub struct Mat2RF {
    a11: RatFunc,
    a12: RatFunc,
    a21: RatFunc,
    a22: RatFunc,
}

#[derive(Deserialize)]
struct RawMat2 {
    a11: RatFunc,
    a12: RatFunc,
    a21: RatFunc,
    a22: RatFunc,
}

impl TryFrom<RawMat2> for Mat2RF {
    type Error = AlgebraError;
    fn try_from(r: RawMat2) -> Result<Self, AlgebraError> {
        Mat2RF::new(r.a11, r.a12, r.a21, r.a22)
    }
}

impl Mat2RF {
    pub fn new(a11: RatFunc, a12: RatFunc, a21: RatFunc, a22: RatFunc) -> Result<Self, AlgebraError> {
        let m = Mat2RF { a11, a12, a21, a22 };
        if m.det().is_zero() {
            return Err(AlgebraError::SingularMatrix);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Mat2RF {
            a11: RatFunc::one(),
            a12: RatFunc::zero(),
            a21: RatFunc::zero(),
            a22: RatFunc::one(),
        }
    }

    pub fn entries(&self) -> [&RatFunc; 4] {
        [&self.a11, &self.a12, &self.a21, &self.a22]
    }

    pub fn det(&self) -> RatFunc {
        &(&self.a11 * &self.a22) - &(&self.a12 * &self.a21)
    }

    pub fn trace(&self) -> RatFunc {
        &self.a11 + &self.a22
    }

    /// True iff the matrix is a scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        self.a12.is_zero() && self.a21.is_zero() && self.a11 == self.a22
    }
}

impl Mul<&Mat2RF> for &Mat2RF {
    type Output = Mat2RF;
    fn mul(self, o: &Mat2RF) -> Mat2RF {
        Mat2RF {
            a11: &(&self.a11 * &o.a11) + &(&self.a12 * &o.a21),
            a12: &(&self.a11 * &o.a12) + &(&self.a12 * &o.a22),
            a21: &(&self.a21 * &o.a11) + &(&self.a22 * &o.a21),
            a22: &(&self.a21 * &o.a12) + &(&self.a22 * &o.a22),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rational, UniPoly};

    fn c(v: i64) -> RatFunc {
        RatFunc::constant(Rational::from_integer(v.into()))
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(Mat2RF::new(c(1), c(2), c(2), c(4)), Err(AlgebraError::SingularMatrix));
    }

    #[test]
    fn cube_of_order_three_element_is_scalar() {
        let m = Mat2RF::new(c(0), c(-1), c(1), c(1)).unwrap();
        let m3 = &(&m * &m) * &m;
        assert!(m3.is_scalar());
        assert_eq!(m3.entries()[0], &c(-1));
    }

    #[test]
    fn det_is_multiplicative() {
        let x = RatFunc::from_poly(UniPoly::var());
        let a = Mat2RF::new(x.clone(), c(1), c(2), &x * &x).unwrap();
        let b = Mat2RF::new(c(3), x.clone(), c(-1), c(1)).unwrap();
        assert_eq!((&a * &b).det(), &a.det() * &b.det());
    }
}
