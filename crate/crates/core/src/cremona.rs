//! Plane birational maps given by three homogeneous forms of equal degree.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::algebra::{tri_content_gcd, tri_divides, AlgebraError, RatFunc, Rational, TriHomPoly, UniPoly};
use crate::linsys::LinSys;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CremonaError {
    #[error("all components vanish identically")]
    AllZero,
    #[error("map is constant after removing common factors")]
    Constant,
    #[error("component {index} has degree {found}, expected {expected}")]
    DegreeMismatch { index: usize, found: u32, expected: u32 },
    #[error("invalid parameter: {0}")]
    BadParameter(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `(f0 : f1 : f2)` with no common factor, scaled so that the first nonzero
/// component has lex-leading coefficient 1. Equal maps therefore have equal
/// representatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MapJson", into = "MapJson")]
pub struct CremonaMap {
    f: [TriHomPoly; 3],
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    deg: u32,
    components: [TriHomPoly; 3],
}

impl TryFrom<MapJson> for CremonaMap {
    type Error = CremonaError;
    fn try_from(m: MapJson) -> Result<Self, CremonaError> {
        // a zero component parses as a degree-0 form
        let [a, b, c] = m.components.map(|p| {
            if p.is_zero() {
                TriHomPoly::zero(m.deg)
            } else {
                p
            }
        });
        for (index, p) in [&a, &b, &c].into_iter().enumerate() {
            if p.degree() != m.deg {
                return Err(CremonaError::DegreeMismatch {
                    index,
                    found: p.degree(),
                    expected: m.deg,
                });
            }
        }
        CremonaMap::from_components([a, b, c])
    }
}

impl From<CremonaMap> for MapJson {
    fn from(m: CremonaMap) -> MapJson {
        MapJson {
            deg: m.degree(),
            components: m.f,
        }
    }
}

impl CremonaMap {
    /// Removes the common factor and normalises. Birationality is not
    /// checked.
    pub fn from_components(f: [TriHomPoly; 3]) -> Result<Self, CremonaError> {
        let d = f
            .iter()
            .find(|p| !p.is_zero())
            .ok_or(CremonaError::AllZero)?
            .degree();
        for (index, p) in f.iter().enumerate() {
            if !p.is_zero() && p.degree() != d {
                return Err(CremonaError::DegreeMismatch {
                    index,
                    found: p.degree(),
                    expected: d,
                });
            }
        }
        let g = tri_content_gcd(&f[0], &f[1], &f[2]).map_err(|_| CremonaError::AllZero)?;
        let reduced: Vec<TriHomPoly> = f
            .iter()
            .map(|p| {
                if p.is_zero() {
                    TriHomPoly::zero(d - g.degree())
                } else {
                    p.div_exact(&g).expect("gcd divides")
                }
            })
            .collect();
        let lead = reduced
            .iter()
            .find_map(|p| p.leading_term().map(|(_, c)| c.clone()))
            .expect("not all zero");
        let inv = lead.recip();
        let f: [TriHomPoly; 3] = std::array::from_fn(|i| reduced[i].scale(&inv));
        if f[0].degree() == 0 {
            return Err(CremonaError::Constant);
        }
        Ok(CremonaMap { f })
    }

    pub fn identity() -> Self {
        CremonaMap {
            f: [TriHomPoly::x(), TriHomPoly::y(), TriHomPoly::z()],
        }
    }

    /// The map `(x, y) -> (xn/xd, yn/yd)` on the chart `z = 1`, each ratio
    /// given by forms of equal degree.
    pub fn from_affine(
        xn: &TriHomPoly,
        xd: &TriHomPoly,
        yn: &TriHomPoly,
        yd: &TriHomPoly,
    ) -> Result<Self, CremonaError> {
        if xd.is_zero() || yd.is_zero() {
            return Err(CremonaError::Algebra(AlgebraError::DivisionByZero));
        }
        Self::from_components([xn * yd, yn * xd, xd * yd])
    }

    pub fn degree(&self) -> u32 {
        self.f[0].degree()
    }

    pub fn components(&self) -> &[TriHomPoly; 3] {
        &self.f
    }

    /// `self o other`.
    pub fn compose(&self, other: &CremonaMap) -> Result<CremonaMap, CremonaError> {
        let f = self.f.clone().map(|p| p.substitute(&other.f));
        if f.iter().all(TriHomPoly::is_zero) {
            return Err(CremonaError::AllZero);
        }
        Self::from_components(f)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Image of a point, `None` where every component vanishes.
    pub fn eval(&self, p: &[Rational; 3]) -> Option<[Rational; 3]> {
        let v = self.f.clone().map(|q| q.eval(p));
        (!v.iter().all(Zero::is_zero)).then_some(v)
    }

    /// True iff `c` divides every minor `f_i x_j - f_j x_i`, i.e. the map sends
    /// each point of the curve `c = 0` where it is defined to itself.
    pub fn fixes_curve_pointwise(&self, c: &TriHomPoly) -> Result<bool, CremonaError> {
        let x = [TriHomPoly::x(), TriHomPoly::y(), TriHomPoly::z()];
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let minor = &(&self.f[i] * &x[j]) - &(&self.f[j] * &x[i]);
            if !tri_divides(c, &minor)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reads the map back as a member of the `G` family, if it is one.
    pub fn as_linear_g(&self) -> Option<LinearG> {
        if self.degree() != 1 {
            return None;
        }
        let lin = |p: &TriHomPoly| p.coeff(&[1, 0, 0]);
        let ly = self.f[1].coeff(&[0, 1, 0]);
        if ly.is_zero() {
            return None;
        }
        let s = ly.recip();
        let g = LinearG {
            a: lin(&self.f[0]) * &s,
            b: lin(&self.f[1]) * &s,
            c: lin(&self.f[2]) * &s,
        };
        (g.a != Rational::zero() && g.to_map() == *self).then_some(g)
    }
}

impl fmt::Display for CremonaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.f[0], self.f[1], self.f[2])
    }
}

/// `(a x : y + b x : z + c x)`, fixing the line `x = 0` pointwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearG {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl LinearG {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self, CremonaError> {
        if a.is_zero() {
            return Err(CremonaError::BadParameter("a must be nonzero"));
        }
        Ok(LinearG { a, b, c })
    }

    pub fn to_map(&self) -> CremonaMap {
        let x = TriHomPoly::x();
        CremonaMap::from_components([
            x.scale(&self.a),
            &TriHomPoly::y() + &x.scale(&self.b),
            &TriHomPoly::z() + &x.scale(&self.c),
        ])
        .expect("linear map with a != 0")
    }

    pub fn inverse(&self) -> LinearG {
        let ai = self.a.recip();
        LinearG {
            a: ai.clone(),
            b: -(&self.b * &ai),
            c: -(&self.c * &ai),
        }
    }

    /// `self o other`.
    pub fn then_after(&self, other: &LinearG) -> LinearG {
        LinearG {
            a: &self.a * &other.a,
            b: &other.b + &other.a * &self.b,
            c: &other.c + &other.a * &self.c,
        }
    }
}

pub fn make_linear_g(a: Rational, b: Rational, c: Rational) -> Result<CremonaMap, CremonaError> {
    Ok(LinearG::new(a, b, c)?.to_map())
}

/// `(x, y) -> (x / (alpha(y) x + beta(y)), y)` with `alpha, beta` in `Q(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HElement {
    pub alpha: RatFunc,
    pub beta: RatFunc,
}

fn max_deg(ps: &[&UniPoly]) -> u32 {
    ps.iter().filter_map(|p| p.degree()).max().unwrap_or(0) as u32
}

impl HElement {
    pub fn new(alpha: RatFunc, beta: RatFunc) -> Result<Self, CremonaError> {
        if beta.is_zero() {
            return Err(CremonaError::BadParameter("beta must be nonzero"));
        }
        Ok(HElement { alpha, beta })
    }

    pub fn to_map(&self) -> CremonaMap {
        let (an, ad, bn, bd) = (self.alpha.num(), self.alpha.den(), self.beta.num(), self.beta.den());
        let d = max_deg(&[an, ad, bn, bd]);
        // y -> y/z, all four homogenised to a common degree
        let hom = |p: &UniPoly| TriHomPoly::homogenize_uni(p, 1, 2, d);
        let (an, ad, bn, bd) = (hom(an), hom(ad), hom(bn), hom(bd));
        let x = TriHomPoly::x();
        let z = TriHomPoly::z();
        let xn = &(&x * &ad) * &bd;
        let xd = &(&(&an * &bd) * &x) + &(&(&bn * &ad) * &z);
        CremonaMap::from_affine(&xn, &xd, &TriHomPoly::y(), &z).expect("beta != 0")
    }

    pub fn inverse(&self) -> HElement {
        let bi = self.beta.inv().expect("beta != 0");
        HElement {
            alpha: -&(&self.alpha * &bi),
            beta: bi,
        }
    }
}

pub fn make_h_element(alpha: RatFunc, beta: RatFunc) -> Result<CremonaMap, CremonaError> {
    Ok(HElement::new(alpha, beta)?.to_map())
}

/// `(-x(mu y + nu z) : y(x + mu y + nu z) : z(x + mu y + nu z))`.
pub fn make_phi(mu: &Rational, nu: &Rational) -> Result<CremonaMap, CremonaError> {
    if mu.is_zero() && nu.is_zero() {
        return Err(CremonaError::BadParameter("mu and nu both zero"));
    }
    let (x, y, z) = (TriHomPoly::x(), TriHomPoly::y(), TriHomPoly::z());
    let l = &y.scale(mu) + &z.scale(nu);
    let m = &x + &l;
    CremonaMap::from_components([-&(&x * &l), &y * &m, &z * &m])
}

/// Intersection number of general members of two systems outside their
/// common base points. `shared` pairs a label of `l` with a label of `m`
/// naming the same point.
pub fn free_intersection(l: &LinSys, m: &LinSys, shared: &[(String, String)]) -> i64 {
    l.degree() * m.degree()
        - shared
            .iter()
            .map(|(a, b)| l.mult(a) * m.mult(b))
            .sum::<i64>()
}

/// [`free_intersection`] with points identified by equal labels.
pub fn free_intersection_same_labels(l: &LinSys, m: &LinSys) -> i64 {
    let shared: Vec<(String, String)> = l
        .mults()
        .keys()
        .filter(|k| m.mults().contains_key(*k))
        .map(|k| (k.clone(), k.clone()))
        .collect();
    free_intersection(l, m, &shared)
}
