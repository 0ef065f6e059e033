//! Polynomials in `Q[v][u]`, stored as coefficient lists in the main variable
//! `u` whose entries are univariate polynomials in `v`. Used for the GCD of
//! dehomogenised trivariate forms.

use super::{uni_gcd, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RecPoly {
    pub coeffs: Vec<UniPoly>,
}

impl RecPoly {
    pub fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(UniPoly::is_zero) {
            coeffs.pop();
        }
        RecPoly { coeffs }
    }

    pub fn one() -> Self {
        RecPoly {
            coeffs: vec![UniPoly::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lc(&self) -> &UniPoly {
        self.coeffs.last().expect("nonzero")
    }

    /// Monic gcd of the coefficients.
    fn content(&self) -> UniPoly {
        let mut g = UniPoly::zero();
        for c in &self.coeffs {
            g = uni_gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_content(&self, c: &UniPoly) -> RecPoly {
        if c.is_one() {
            return self.clone();
        }
        RecPoly::new(
            self.coeffs
                .iter()
                .map(|a| a.div_exact(c).expect("content divides"))
                .collect(),
        )
    }

    fn mul_uni(&self, c: &UniPoly) -> RecPoly {
        RecPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Primitive part, scaled so its leading coefficient is monic in `v`.
    fn primitive(&self) -> (UniPoly, RecPoly) {
        let c = self.content();
        let mut p = self.div_content(&c);
        if let Some(lc) = p.coeffs.last().and_then(|l| l.leading_coeff()).cloned() {
            p = RecPoly::new(p.coeffs.iter().map(|a| a.scale(&lc.recip())).collect());
        }
        (c, p)
    }

    /// Pseudo-remainder of `self` by `b`.
    fn prem(&self, b: &RecPoly) -> RecPoly {
        let db = b.degree();
        let lcb = b.lc().clone();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= db {
            let k = r.degree() - db;
            let lr = r.lc().clone();
            let mut coeffs: Vec<UniPoly> = r.coeffs.iter().map(|a| a * &lcb).collect();
            for (i, bc) in b.coeffs.iter().enumerate() {
                coeffs[i + k] = &coeffs[i + k] - &(bc * &lr);
            }
            coeffs.pop();
            r = RecPoly::new(coeffs);
        }
        r
    }

    /// GCD via the primitive polynomial remainder sequence. The result is
    /// determined up to a nonzero rational factor.
    pub fn gcd(&self, other: &RecPoly) -> RecPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (ca, mut a) = self.primitive();
        let (cb, mut b) = other.primitive();
        let c = uni_gcd(&ca, &cb);
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let g = loop {
            if b.is_zero() {
                break a;
            }
            if b.degree() == 0 {
                break RecPoly::one();
            }
            let r = a.prem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive().1 };
        };
        g.mul_uni(&c)
    }
}
