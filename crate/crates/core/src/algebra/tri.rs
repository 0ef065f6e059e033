use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::bivar::RecPoly;
use super::rational::{int, RatStr};
use super::uni::forward_owned;
use super::{AlgebraError, Rational, UniPoly};

/// Exponents of `x^i y^j z^k`. Array order is lexicographic with `x > y > z`.
pub type Monomial = [u32; 3];

/// Homogeneous polynomial in `x, y, z` over `Q`.
///
/// Every stored monomial has total degree `degree` and no stored coefficient
/// is zero. The zero polynomial carries a degree too, so that sums and
/// products of forms keep track of it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriHomPoly {
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

fn total(m: &Monomial) -> u32 {
    m[0] + m[1] + m[2]
}

impl TriHomPoly {
    pub fn new(
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            if total(&m) != degree {
                return Err(AlgebraError::MixedDegree(m, total(&m), degree));
            }
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(TriHomPoly { degree, terms: map })
    }

    /// Degree is read off the first term; an empty list gives the zero form of
    /// degree 0.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let terms: Vec<_> = terms.into_iter().collect();
        let degree = terms.first().map_or(0, |(m, _)| total(m));
        Self::new(degree, terms)
    }

    /// Convenience for tests and fixtures.
    pub fn from_i64_terms(terms: &[(Monomial, i64)]) -> Result<Self, AlgebraError> {
        Self::from_terms(terms.iter().map(|&(m, c)| (m, int(c))))
    }

    pub fn zero(degree: u32) -> Self {
        TriHomPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TriHomPoly {
            degree: total(&m),
            terms,
        }
    }

    /// The coordinate `x`, `y` or `z` for `i = 0, 1, 2`.
    pub fn var(i: usize) -> Self {
        let mut m = [0; 3];
        m[i] = 1;
        Self::monomial(Rational::one(), m)
    }

    pub fn x() -> Self {
        Self::var(0)
    }

    pub fn y() -> Self {
        Self::var(1)
    }

    pub fn z() -> Self {
        Self::var(2)
    }

    /// Homogenises `p(t)` to degree `degree` using variable `t_var` for `t`
    /// and `h_var` for the homogenising variable.
    pub fn homogenize_uni(p: &UniPoly, t_var: usize, h_var: usize, degree: u32) -> Self {
        let mut out = Self::zero(degree);
        for (e, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = e as u32;
            assert!(e <= degree, "homogenisation degree too small");
            let mut m = [0; 3];
            m[t_var] += e;
            m[h_var] += degree - e;
            out.terms.insert(m, c.clone());
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0 || self.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term for lex order `x > y > z`.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        TriHomPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Scales so the lex-leading coefficient is 1; zero stays zero.
    pub fn normalized(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[i] -= 1;
            out.terms.insert(m2, c * int(m[i] as i64));
        }
        out
    }

    pub fn eval(&self, p: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in 0..3 {
                for _ in 0..m[v] {
                    t *= &p[v];
                }
            }
            acc += t;
        }
        acc
    }

    /// `self(g0, g1, g2)`: substitutes forms of a common degree for the
    /// coordinates.
    pub fn substitute(&self, g: &[TriHomPoly; 3]) -> TriHomPoly {
        let dg = g[0].degree;
        let mut powers: [Vec<TriHomPoly>; 3] = [vec![], vec![], vec![]];
        for v in 0..3 {
            let max_e = self.terms.keys().map(|m| m[v]).max().unwrap_or(0);
            let mut cur = TriHomPoly::one();
            powers[v].push(cur.clone());
            for _ in 0..max_e {
                cur = &cur * &g[v];
                powers[v].push(cur.clone());
            }
        }
        let mut out = TriHomPoly::zero(self.degree * dg);
        for (m, c) in &self.terms {
            let t = &(&powers[0][m[0] as usize] * &powers[1][m[1] as usize])
                * &powers[2][m[2] as usize];
            out.add_scaled(&t, c);
        }
        out
    }

    fn add_scaled(&mut self, other: &TriHomPoly, c: &Rational) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        if self.is_zero() {
            self.degree = other.degree;
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degrees");
        for (m, a) in &other.terms {
            let e = self.terms.entry(*m).or_insert_with(Rational::zero);
            *e += a * c;
            if e.is_zero() {
                self.terms.remove(m);
            }
        }
    }

    /// `self(x, y, 1)` as a polynomial in `x` over `Q[y]`.
    fn dehomogenize(&self) -> RecPoly {
        let max_x = self.terms.keys().map(|m| m[0]).max().unwrap_or(0) as usize;
        let mut coeffs = vec![UniPoly::zero(); max_x + 1];
        for (m, c) in &self.terms {
            let slot = &mut coeffs[m[0] as usize];
            *slot = &*slot + &UniPoly::monomial(c.clone(), m[1] as usize);
        }
        RecPoly::new(coeffs)
    }

    fn homogenize(p: &RecPoly) -> TriHomPoly {
        let degree = p
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.degree().map(|d| (i + d) as u32))
            .max()
            .unwrap_or(0);
        let mut out = TriHomPoly::zero(degree);
        for (i, c) in p.coeffs.iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    let (i, j) = (i as u32, j as u32);
                    out.terms.insert([i, j, degree - i - j], a.clone());
                }
            }
        }
        out
    }

    fn min_z(&self) -> u32 {
        self.terms.keys().map(|m| m[2]).min().unwrap_or(0)
    }

    fn permuted(&self, perm: [usize; 3]) -> TriHomPoly {
        TriHomPoly {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| ([m[perm[0]], m[perm[1]], m[perm[2]]], c.clone()))
                .collect(),
        }
    }

    fn unpermuted(&self, perm: [usize; 3]) -> TriHomPoly {
        TriHomPoly {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut out = [0; 3];
                    for k in 0..3 {
                        out[perm[k]] = m[k];
                    }
                    (out, c.clone())
                })
                .collect(),
        }
    }

    /// Greatest common divisor, normalised so the lex-leading coefficient is
    /// 1. `gcd(0, 0)` is the zero form.
    pub fn gcd(&self, other: &TriHomPoly) -> TriHomPoly {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        if self.is_constant() || other.is_constant() {
            return TriHomPoly::one();
        }
        let perm = gcd_variable_order(self, other);
        let (a, b) = (self.permuted(perm), other.permuted(perm));
        let zpow = a.min_z().min(b.min_z());
        let g = a.dehomogenize().gcd(&b.dehomogenize());
        let g = &TriHomPoly::homogenize(&g) * &TriHomPoly::monomial(Rational::one(), [0, 0, zpow]);
        g.unpermuted(perm).normalized()
    }

    /// Exact quotient `self / c` if `c` divides `self`.
    pub fn div_exact(&self, c: &TriHomPoly) -> Option<TriHomPoly> {
        let (lm, lc) = c.leading_term()?;
        if self.is_zero() {
            return Some(TriHomPoly::zero(self.degree.saturating_sub(c.degree)));
        }
        if c.degree > self.degree {
            return None;
        }
        let lc_inv = lc.recip();
        let mut r = self.clone();
        let mut q = TriHomPoly::zero(self.degree - c.degree);
        while let Some((rm, rc)) = r.leading_term() {
            if (0..3).any(|v| rm[v] < lm[v]) {
                return None;
            }
            let qm = [rm[0] - lm[0], rm[1] - lm[1], rm[2] - lm[2]];
            let qc = rc * &lc_inv;
            let t = TriHomPoly::monomial(qc.clone(), qm);
            r.add_scaled(&(&t * c), &-Rational::one());
            q.terms.insert(qm, qc);
        }
        Some(q)
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = ["x", "y", "z"]
                .iter()
                .zip(m.iter())
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            let mono = mono.join("*");
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

/// Picks which variable to set to 1 and which to use as the main variable of
/// the remainder sequence: dehomogenise at the variable of largest degree and
/// recurse on the one of smallest degree.
fn gcd_variable_order(a: &TriHomPoly, b: &TriHomPoly) -> [usize; 3] {
    let deg = |v: usize| {
        let da = a.terms.keys().map(|m| m[v]).max().unwrap_or(0);
        let db = b.terms.keys().map(|m| m[v]).max().unwrap_or(0);
        da.min(db)
    };
    let mut vars = [0usize, 1, 2];
    vars.sort_by_key(|&v| (deg(v), v));
    // main variable first, coefficient variable second, dehomogenised last
    [vars[0], vars[1], vars[2]]
}

impl fmt::Display for TriHomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// Normalised gcd of three forms.
pub fn tri_content_gcd(
    f: &TriHomPoly,
    g: &TriHomPoly,
    k: &TriHomPoly,
) -> Result<TriHomPoly, AlgebraError> {
    if f.is_zero() && g.is_zero() && k.is_zero() {
        return Err(AlgebraError::AllZero);
    }
    Ok(f.gcd(g).gcd(k))
}

/// True iff `f = c * q` for some form `q`.
pub fn tri_divides(c: &TriHomPoly, f: &TriHomPoly) -> Result<bool, AlgebraError> {
    if c.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    Ok(f.div_exact(c).is_some())
}

impl Add<&TriHomPoly> for &TriHomPoly {
    type Output = TriHomPoly;
    /// Panics if both operands are nonzero with different degrees.
    fn add(self, o: &TriHomPoly) -> TriHomPoly {
        let mut out = self.clone();
        out.add_scaled(o, &Rational::one());
        out
    }
}

impl Sub<&TriHomPoly> for &TriHomPoly {
    type Output = TriHomPoly;
    fn sub(self, o: &TriHomPoly) -> TriHomPoly {
        let mut out = self.clone();
        out.add_scaled(o, &-Rational::one());
        out
    }
}

impl Mul<&TriHomPoly> for &TriHomPoly {
    type Output = TriHomPoly;
    fn mul(self, o: &TriHomPoly) -> TriHomPoly {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]];
                *terms.entry(m).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TriHomPoly {
            degree: self.degree + o.degree,
            terms,
        }
    }
}

impl Neg for &TriHomPoly {
    type Output = TriHomPoly;
    fn neg(self) -> TriHomPoly {
        self.scale(&-Rational::one())
    }
}

forward_owned!(TriHomPoly, Add add, Sub sub, Mul mul);

impl Serialize for TriHomPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(Monomial, RatStr)> = self
            .terms
            .iter()
            .map(|(m, c)| (*m, RatStr(c.clone())))
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TriHomPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms: Vec<(Monomial, RatStr)> = Vec::deserialize(d)?;
        TriHomPoly::from_terms(terms.into_iter().map(|(m, RatStr(c))| (m, c)))
            .map_err(serde::de::Error::custom)
    }
}
