//! The group of matrices `[[a1, h a2], [a2, a1]]` over `Q(x)` acting by
//! `y -> (a1 y + h a2) / (a2 y + a1)`, and orders of elements of
//! `PGL(2, Q(x))`.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::algebra::{is_squarefree, uni_gcd, AlgebraError, Mat2RF, RatFunc, Rational, TriHomPoly, UniPoly};
use crate::cremona::{CremonaError, CremonaMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JonqError {
    #[error("h must have even degree >= 4, got degree {0}")]
    BadDegree(usize),
    #[error("h has a repeated root")]
    NotSquarefree,
    #[error("a1^2 - h a2^2 vanishes")]
    Singular,
    #[error("elements built on different h")]
    MismatchedH,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `(a1, a2)` standing for `a1 + a2 sqrt(h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawJonq")]
pub struct JonqElement {
    h: UniPoly,
    a1: RatFunc,
    a2: RatFunc,
}

#[derive(Deserialize)]
struct RawJonq {
    h: UniPoly,
    a1: RatFunc,
    a2: RatFunc,
}

impl TryFrom<RawJonq> for JonqElement {
    type Error = JonqError;
    fn try_from(r: RawJonq) -> Result<Self, JonqError> {
        JonqElement::new(r.h, r.a1, r.a2)
    }
}

/// Checks that `h` is squarefree of degree `2g + 2` with `g >= 1`.
pub fn check_h(h: &UniPoly) -> Result<(), JonqError> {
    match h.degree() {
        Some(d) if d >= 4 && d % 2 == 0 => {}
        Some(d) => return Err(JonqError::BadDegree(d)),
        None => return Err(AlgebraError::ZeroPolynomial.into()),
    }
    if !is_squarefree(h)? {
        return Err(JonqError::NotSquarefree);
    }
    Ok(())
}

impl JonqElement {
    pub fn new(h: UniPoly, a1: RatFunc, a2: RatFunc) -> Result<Self, JonqError> {
        check_h(&h)?;
        let u = JonqElement { h, a1, a2 };
        if u.det().is_zero() {
            return Err(JonqError::Singular);
        }
        Ok(u)
    }

    pub fn identity(h: UniPoly) -> Result<Self, JonqError> {
        Self::new(h, RatFunc::one(), RatFunc::zero())
    }

    pub fn h(&self) -> &UniPoly {
        &self.h
    }

    pub fn a1(&self) -> &RatFunc {
        &self.a1
    }

    pub fn a2(&self) -> &RatFunc {
        &self.a2
    }

    /// Genus of `y^2 = h(x)`.
    pub fn genus(&self) -> u32 {
        (self.h.degree().unwrap_or(0) / 2 - 1) as u32
    }

    fn h_rf(&self) -> RatFunc {
        RatFunc::from_poly(self.h.clone())
    }

    /// `a1^2 - h a2^2`.
    pub fn det(&self) -> RatFunc {
        &(&self.a1 * &self.a1) - &(&self.h_rf() * &(&self.a2 * &self.a2))
    }

    pub fn mul(&self, o: &JonqElement) -> Result<JonqElement, JonqError> {
        if self.h != o.h {
            return Err(JonqError::MismatchedH);
        }
        let h = self.h_rf();
        Ok(JonqElement {
            a1: &(&self.a1 * &o.a1) + &(&h * &(&self.a2 * &o.a2)),
            a2: &(&self.a1 * &o.a2) + &(&self.a2 * &o.a1),
            h: self.h.clone(),
        })
    }

    pub fn invert(&self) -> JonqElement {
        let di = self.det().inv().expect("det != 0");
        JonqElement {
            a1: &self.a1 * &di,
            a2: -&(&self.a2 * &di),
            h: self.h.clone(),
        }
    }

    /// Equal as elements of `PGL(2, Q(x))`.
    pub fn projectively_eq(&self, o: &JonqElement) -> bool {
        self.h == o.h && &self.a1 * &o.a2 == &self.a2 * &o.a1
    }

    /// True iff the matrix is a scalar, i.e. `a2 = 0`.
    pub fn is_scalar(&self) -> bool {
        self.a2.is_zero()
    }

    pub fn to_matrix(&self) -> Mat2RF {
        Mat2RF::new(
            self.a1.clone(),
            &self.h_rf() * &self.a2,
            self.a2.clone(),
            self.a1.clone(),
        )
        .expect("det != 0")
    }

    pub fn to_cremona(&self) -> CremonaMap {
        jonquieres_map(&self.to_matrix()).expect("invertible matrix gives a birational map")
    }

    /// Expands `(a1 y + h a2)^2 - h (a2 y + a1)^2` and `(a1^2 - h a2^2)(y^2 - h)`
    /// as polynomials in `y` over `Q(x)` and compares them.
    pub fn fixes_hyperelliptic(&self) -> bool {
        let h = self.h_rf();
        let num = [&h * &self.a2, self.a1.clone()];
        let den = [self.a1.clone(), self.a2.clone()];
        let lhs = ysub(&ymul(&num, &num), &ymul(&yconst(&h), &ymul(&den, &den)));
        let rhs = ymul(&yconst(&self.det()), &[-&h, RatFunc::zero(), RatFunc::one()]);
        ytrim(lhs) == ytrim(rhs)
    }

    pub fn order(&self) -> PglOrder {
        pgl_order(&self.to_matrix()).expect("det != 0")
    }
}

impl fmt::Display for JonqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{a1}, ({h})*({a2})], [{a2}, {a1}]]",
            a1 = self.a1,
            a2 = self.a2,
            h = self.h
        )
    }
}

// polynomials in y over Q(x), lowest degree first
fn yconst(c: &RatFunc) -> Vec<RatFunc> {
    vec![c.clone()]
}

fn ymul(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(p * q);
        }
    }
    out
}

fn ysub(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    (0..a.len().max(b.len()))
        .map(|i| {
            let z = RatFunc::zero();
            a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)
        })
        .collect()
}

fn ytrim(mut v: Vec<RatFunc>) -> Vec<RatFunc> {
    while v.last().is_some_and(RatFunc::is_zero) {
        v.pop();
    }
    v
}

/// `y^2 z^(2g) - h(x, z)` with `h` homogenised to degree `2g + 2`.
pub fn hyperelliptic_curve(h: &UniPoly) -> Result<TriHomPoly, JonqError> {
    check_h(h)?;
    let d = h.degree().unwrap() as u32;
    let y2 = TriHomPoly::monomial(Rational::from_integer(1.into()), [0, 2, d - 2]);
    Ok(&y2 - &TriHomPoly::homogenize_uni(h, 0, 2, d))
}

/// The birational map `(x, y) -> (x, (a11 y + a12) / (a21 y + a22))`.
pub fn jonquieres_map(m: &Mat2RF) -> Result<CremonaMap, CremonaError> {
    let e = m.entries();
    // clear denominators with their lcm
    let mut l = UniPoly::one();
    for a in e {
        let g = uni_gcd(&l, a.den());
        l = (&l * a.den()).div_exact(&g).expect("gcd divides");
    }
    let p: Vec<UniPoly> = e
        .iter()
        .map(|a| (a.num() * &l).div_exact(a.den()).expect("den divides lcm"))
        .collect();
    let d = p.iter().filter_map(UniPoly::degree).max().unwrap_or(0) as u32;
    let hom = |q: &UniPoly| TriHomPoly::homogenize_uni(q, 0, 2, d);
    let (y, z) = (TriHomPoly::y(), TriHomPoly::z());
    let yn = &(&hom(&p[0]) * &y) + &(&hom(&p[1]) * &z);
    let yd = &(&hom(&p[2]) * &y) + &(&hom(&p[3]) * &z);
    CremonaMap::from_affine(&TriHomPoly::x(), &z, &yn, &yd)
}

/// Order in `PGL(2, Q(x))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PglOrder {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "4")]
    Four,
    #[serde(rename = "6")]
    Six,
    #[serde(rename = "infinite")]
    Infinite,
}

impl PglOrder {
    pub fn as_u32(self) -> Option<u32> {
        match self {
            PglOrder::One => Some(1),
            PglOrder::Two => Some(2),
            PglOrder::Three => Some(3),
            PglOrder::Four => Some(4),
            PglOrder::Six => Some(6),
            PglOrder::Infinite => None,
        }
    }
}

impl fmt::Display for PglOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_u32() {
            Some(n) => write!(f, "{n}"),
            None => f.write_str("infinite"),
        }
    }
}

/// `trace^2 / det`, invariant under scaling.
pub fn pgl_lambda(m: &Mat2RF) -> RatFunc {
    let t = m.trace();
    &(&t * &t) / &m.det()
}

/// The eigenvalue ratio of a finite-order element is a root of unity of
/// degree at most 2 over `Q`, so `lambda = 2 + zeta + 1/zeta` is one of
/// 4, 0, 1, 2, 3 for orders 1, 2, 3, 4, 6.
pub fn pgl_order(m: &Mat2RF) -> Result<PglOrder, AlgebraError> {
    if m.det().is_zero() {
        return Err(AlgebraError::SingularMatrix);
    }
    let Some(l) = pgl_lambda(m).as_constant() else {
        return Ok(PglOrder::Infinite);
    };
    let order = match l.to_integer() {
        _ if !l.is_integer() => PglOrder::Infinite,
        n if n == 4.into() => {
            if m.is_scalar() {
                PglOrder::One
            } else {
                PglOrder::Infinite
            }
        }
        n if n == 0.into() => PglOrder::Two,
        n if n == 1.into() => PglOrder::Three,
        n if n == 2.into() => PglOrder::Four,
        n if n == 3.into() => PglOrder::Six,
        _ => PglOrder::Infinite,
    };
    Ok(order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lambda: RatFunc,
    pub order: PglOrder,
    /// What the shape of the element forces: 1 if `a2 = 0`, 2 if `a1 = 0`,
    /// infinite otherwise.
    pub predicted: PglOrder,
    /// Order is 1, 2 or infinite and agrees with `predicted`.
    pub satisfied: bool,
}

/// A finite-order element of the group is an involution or trivial.
pub fn leminv_check(u: &JonqElement) -> LemmaReport {
    let m = u.to_matrix();
    let order = pgl_order(&m).expect("det != 0");
    let predicted = if u.a2.is_zero() {
        PglOrder::One
    } else if u.a1.is_zero() {
        PglOrder::Two
    } else {
        PglOrder::Infinite
    };
    LemmaReport {
        lambda: pgl_lambda(&m),
        order,
        predicted,
        satisfied: matches!(order, PglOrder::One | PglOrder::Two | PglOrder::Infinite)
            && order == predicted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    fn rf(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(up(c))
    }

    fn rfq(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(up(n), up(d)).unwrap()
    }

    fn h4() -> UniPoly {
        up(&[-1, 0, 0, 0, 1])
    }

    fn h6() -> UniPoly {
        up(&[1, 1, 0, 0, 0, 0, 1])
    }

    fn h8() -> UniPoly {
        // x^8 - 3x^5 + x - 2, squarefree (checked in a test below)
        up(&[-2, 1, 0, 0, 0, -3, 0, 0, 1])
    }

    fn el(h: UniPoly, a1: RatFunc, a2: RatFunc) -> JonqElement {
        JonqElement::new(h, a1, a2).unwrap()
    }

    #[test]
    fn h_validation() {
        assert_eq!(check_h(&up(&[1, 0, 1])), Err(JonqError::BadDegree(2)));
        assert_eq!(check_h(&up(&[0, 0, 0, 1, 0, 1])), Err(JonqError::BadDegree(5)));
        assert_eq!(check_h(&(&up(&[-1, 1]).pow(2) * &up(&[1, 0, 1]))), Err(JonqError::NotSquarefree));
        assert!(check_h(&h8()).is_ok());
        assert!(check_h(&h6()).is_ok());
        // a1^2 = h a2^2 forces a1 = a2 = 0 when h is squarefree
        assert_eq!(
            JonqElement::new(h4(), RatFunc::zero(), RatFunc::zero()),
            Err(JonqError::Singular)
        );
    }

    #[test]
    fn mul_examples() {
        let u = el(h4(), rf(&[0, 1]), rf(&[1]));
        let id = JonqElement::identity(h4()).unwrap();
        assert_eq!(u.mul(&id).unwrap(), u);
        let s = el(h4(), RatFunc::zero(), RatFunc::one());
        let s2 = s.mul(&s).unwrap();
        assert_eq!(s2.a1(), &RatFunc::from_poly(h4()));
        assert!(s2.a2().is_zero());
        assert!(s2.is_scalar());
        let other = el(h6(), RatFunc::one(), RatFunc::one());
        assert_eq!(u.mul(&other), Err(JonqError::MismatchedH));
    }

    #[test]
    fn invert_examples() {
        let id = JonqElement::identity(h4()).unwrap();
        assert_eq!(id.invert(), id);
        let s = el(h4(), RatFunc::zero(), RatFunc::one());
        let si = s.invert();
        assert_eq!(si.a2(), &RatFunc::from_poly(h4()).inv().unwrap());
        assert!(si.projectively_eq(&s));
        let u = el(h4(), rfq(&[1, 2], &[3, 0, 1]), rf(&[0, -1]));
        assert!(u.mul(&u.invert()).unwrap().is_scalar());
    }

    #[test]
    fn order_examples() {
        assert_eq!(pgl_order(&Mat2RF::identity()), Ok(PglOrder::One));
        let h = RatFunc::from_poly(h4());
        let m = Mat2RF::new(RatFunc::zero(), h, RatFunc::one(), RatFunc::zero()).unwrap();
        assert_eq!(pgl_order(&m), Ok(PglOrder::Two));
        let c = |v: i64| RatFunc::constant(Rational::from_integer(v.into()));
        let m = Mat2RF::new(c(0), c(-1), c(1), c(1)).unwrap();
        assert_eq!(pgl_order(&m), Ok(PglOrder::Three));
        // lambda = 4/2 and 9/3
        let m = Mat2RF::new(c(1), c(-1), c(1), c(1)).unwrap();
        assert_eq!(pgl_order(&m), Ok(PglOrder::Four));
        let m = Mat2RF::new(c(2), c(-1), c(1), c(1)).unwrap();
        assert_eq!(pgl_order(&m), Ok(PglOrder::Six));
        let unipotent = Mat2RF::new(c(1), c(1), c(0), c(1)).unwrap();
        assert_eq!(pgl_order(&unipotent), Ok(PglOrder::Infinite));
        let scalar = Mat2RF::new(rf(&[0, 1]), c(0), c(0), rf(&[0, 1])).unwrap();
        assert_eq!(pgl_order(&scalar), Ok(PglOrder::One));
    }

    #[test]
    fn orders_by_brute_force_powers() {
        // oracle: smallest k with m^k scalar, up to 12
        let c = |v: i64| RatFunc::constant(Rational::from_integer(v.into()));
        let mats = [
            Mat2RF::new(c(0), c(-1), c(1), c(1)).unwrap(),
            Mat2RF::new(c(1), c(-1), c(1), c(1)).unwrap(),
            Mat2RF::new(c(3), c(-1), c(3), c(1)).unwrap(),
            Mat2RF::new(c(2), c(-1), c(1), c(1)).unwrap(),
            Mat2RF::new(c(2), c(5), c(-1), c(-2)).unwrap(),
            Mat2RF::new(c(2), c(1), c(1), c(1)).unwrap(),
            Mat2RF::new(rf(&[0, 1]), c(1), c(1), c(0)).unwrap(),
        ];
        for m in &mats {
            let mut p = m.clone();
            let mut k = 1;
            while !p.is_scalar() && k < 12 {
                p = &p * m;
                k += 1;
            }
            let brute = if p.is_scalar() { Some(k) } else { None };
            assert_eq!(pgl_order(m).unwrap().as_u32(), brute, "{m:?}");
        }
    }

    #[test]
    fn lemma_examples() {
        let r = leminv_check(&el(h4(), RatFunc::zero(), RatFunc::one()));
        assert_eq!(r.order, PglOrder::Two);
        assert!(r.satisfied);
        let r = leminv_check(&JonqElement::identity(h4()).unwrap());
        assert_eq!(r.order, PglOrder::One);
        assert!(r.satisfied);
        let r = leminv_check(&el(h4(), rf(&[0, 1]), RatFunc::one()));
        assert_eq!(r.order, PglOrder::Infinite);
        // lambda = 4x^2 / (x^2 - x^4 + 1)
        assert_eq!(r.lambda, rfq(&[0, 0, 4], &[1, 0, 1, 0, -1]));
        assert!(r.satisfied);
    }

    #[test]
    fn hyperelliptic_identity_examples() {
        assert!(el(h4(), RatFunc::zero(), RatFunc::one()).fixes_hyperelliptic());
        assert!(JonqElement::identity(h4()).unwrap().fixes_hyperelliptic());
        assert!(el(h6(), rfq(&[1, 1], &[0, 0, 1]), rf(&[-3, 0, 2])).fixes_hyperelliptic());
    }

    #[test]
    fn involution_map() {
        let s = el(h4(), RatFunc::zero(), RatFunc::one());
        let m = s.to_cremona();
        // (x y z^2 : x^4 - z^4 : y z^3)
        let (x, y, z) = (TriHomPoly::x(), TriHomPoly::y(), TriHomPoly::z());
        let expect = CremonaMap::from_components([
            &(&x * &y) * &z.pow(2),
            &x.pow(4) - &z.pow(4),
            &y * &z.pow(3),
        ])
        .unwrap();
        assert_eq!(m, expect);
        assert!(m.compose(&m).unwrap().is_identity());
        let curve = hyperelliptic_curve(&h4()).unwrap();
        assert!(m.fixes_curve_pointwise(&curve).unwrap());
        assert!(!m.fixes_curve_pointwise(&TriHomPoly::x()).unwrap());
        assert!(JonqElement::identity(h4()).unwrap().to_cremona().is_identity());
    }

    #[test]
    fn curve_polynomial() {
        let c = hyperelliptic_curve(&h6()).unwrap();
        assert_eq!(c.degree(), 6);
        assert_eq!(c.coeff(&[0, 2, 4]), Rational::from_integer(1.into()));
        assert_eq!(c.coeff(&[6, 0, 0]), Rational::from_integer((-1).into()));
        assert_eq!(c.coeff(&[1, 0, 5]), Rational::from_integer((-1).into()));
    }

    #[test]
    fn json_shape() {
        let u = el(h4(), rf(&[0, 1]), rfq(&[1], &[1, 1]));
        let js = serde_json::to_string(&u).unwrap();
        assert!(js.starts_with(r#"{"h":[[[0],"-1/1"],[[4],"1/1"]],"a1":{"num":"#));
        assert_eq!(serde_json::from_str::<JonqElement>(&js).unwrap(), u);
        let bad = r#"{"h":[[[2],"1"],[[0],"1"]],"a1":{"num":[[[0],"1"]]},"a2":{"num":[]}}"#;
        assert!(serde_json::from_str::<JonqElement>(bad).is_err());
        assert_eq!(serde_json::to_string(&PglOrder::Infinite).unwrap(), r#""infinite""#);
    }

    fn small_rf() -> impl Strategy<Value = RatFunc> {
        (
            prop::collection::vec(-3i64..=3, 0..3),
            prop::collection::vec(-2i64..=2, 0..2),
        )
            .prop_map(|(n, d)| {
                let mut d = d;
                d.push(1);
                rfq(&n, &d)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn group_axioms(a in small_rf(), b in small_rf(), c in small_rf(), d in small_rf(), e in small_rf(), f in small_rf()) {
            let mk = |p: &RatFunc, q: &RatFunc| JonqElement::new(h6(), p.clone(), q.clone()).ok();
            let (Some(u), Some(v), Some(w)) = (mk(&a, &b), mk(&c, &d), mk(&e, &f)) else {
                return Ok(());
            };
            prop_assert_eq!(u.mul(&v).unwrap(), v.mul(&u).unwrap());
            prop_assert_eq!(
                u.mul(&v).unwrap().mul(&w).unwrap(),
                u.mul(&v.mul(&w).unwrap()).unwrap()
            );
            prop_assert_eq!(u.mul(&v).unwrap().det(), &u.det() * &v.det());
            prop_assert!(u.mul(&u.invert()).unwrap().is_scalar());
        }

        #[test]
        fn lemma_holds(a in small_rf(), b in small_rf()) {
            if let Ok(u) = JonqElement::new(h8(), a, b) {
                let r = leminv_check(&u);
                prop_assert!(r.satisfied, "{:?}", r);
                prop_assert!(u.fixes_hyperelliptic());
            }
        }
    }
}
