//! Plane curves described by their degree and ordinary singular points.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

use crate::algebra::rational::serde_rational;
use crate::algebra::{Rational, TriHomPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("degree must be at least 1, got {0}")]
    BadDegree(i64),
    #[error("point {label}: multiplicity {mult} is below 2")]
    MultiplicityTooSmall { label: String, mult: i64 },
    #[error("point {label}: multiplicity {mult} exceeds degree {degree}")]
    MultiplicityExceedsDegree { label: String, mult: i64, degree: i64 },
    #[error("point {0}: only ordinary singularities are supported")]
    NotOrdinary(String),
    #[error("duplicate point label {0}")]
    DuplicateLabel(String),
    #[error("point {0}: projective coordinates are all zero")]
    ZeroPoint(String),
    #[error("declared data gives negative genus {0}")]
    NegativeGenus(i64),
    #[error("defining polynomial has degree {poly}, model has degree {degree}")]
    PolyDegreeMismatch { poly: u32, degree: i64 },
    #[error("defining polynomial has a repeated factor")]
    RepeatedFactor,
}

/// A labelled point, optionally with projective coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSpec {
    pub label: String,
    pub coords: Option<[Rational; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityData {
    pub point: PointSpec,
    pub multiplicity: u32,
}

/// JSON form of a curve:
/// `{"degree": n, "singularities": [{"label", "mult", "coords"}], "poly"}`.
///
/// This is the unchecked input; [`PlaneCurveModel::try_from`] enforces the
/// invariants and [`validate`](CurveData::validate) reports on them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveData {
    pub degree: i64,
    #[serde(default)]
    pub singularities: Vec<SingularityEntry>,
    #[serde(default)]
    pub poly: Option<TriHomPoly>,
    /// Irreducibility is asserted by the caller, never checked.
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityEntry {
    pub label: String,
    pub mult: i64,
    #[serde(default)]
    pub coords: Option<[Coord; 3]>,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub ordinary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coord(#[serde(with = "serde_rational")] pub Rational);

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

impl CurveData {
    /// Degree and multiplicities only, with labels `p1, p2, ...`.
    pub fn numeric(degree: i64, mults: &[i64]) -> Self {
        CurveData {
            degree,
            singularities: mults
                .iter()
                .enumerate()
                .map(|(i, &m)| SingularityEntry {
                    label: format!("p{}", i + 1),
                    mult: m,
                    coords: None,
                    ordinary: true,
                })
                .collect(),
            poly: None,
            irreducible: true,
        }
    }

    /// Runs every check and collects the outcome instead of stopping at the
    /// first failure.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let mut push = |name: &str, result: Result<(), String>| {
            checks.push(Check {
                name: name.to_string(),
                passed: result.is_ok(),
                detail: result.err(),
            });
        };

        push(
            "degree",
            (self.degree >= 1)
                .then_some(())
                .ok_or_else(|| format!("degree {} < 1", self.degree)),
        );

        let mut labels = BTreeSet::new();
        let mut label_err = None;
        for s in &self.singularities {
            if !labels.insert(s.label.as_str()) {
                label_err = Some(format!("duplicate label {}", s.label));
            }
        }
        push("labels", label_err.map_or(Ok(()), Err));

        let bad: Vec<String> = self
            .singularities
            .iter()
            .filter(|s| s.mult < 2 || s.mult > self.degree)
            .map(|s| {
                if s.mult < 2 {
                    format!("{}: multiplicity {} below 2", s.label, s.mult)
                } else {
                    format!(
                        "{}: multiplicity {} exceeds degree {}",
                        s.label, s.mult, self.degree
                    )
                }
            })
            .collect();
        push("multiplicities", if bad.is_empty() { Ok(()) } else { Err(bad.join("; ")) });

        let non_ord: Vec<&str> = self
            .singularities
            .iter()
            .filter(|s| !s.ordinary)
            .map(|s| s.label.as_str())
            .collect();
        push(
            "ordinary",
            if non_ord.is_empty() {
                Ok(())
            } else {
                Err(format!("non-ordinary points: {}", non_ord.join(", ")))
            },
        );

        push(
            "irreducible",
            self.irreducible
                .then_some(())
                .ok_or_else(|| "curve declared reducible".to_string()),
        );

        let g = genus_of(self.degree, self.singularities.iter().map(|s| s.mult));
        push(
            "genus",
            (g >= 0).then_some(()).ok_or_else(|| format!("genus {g} < 0")),
        );

        if let Some(f) = &self.poly {
            push(
                "poly_degree",
                (f.degree() as i64 == self.degree)
                    .then_some(())
                    .ok_or_else(|| format!("poly degree {} != {}", f.degree(), self.degree)),
            );
            push(
                "poly_squarefree",
                if f.is_zero() || has_repeated_factor(f) {
                    Err("polynomial is zero or has a repeated factor".into())
                } else {
                    Ok(())
                },
            );
            for s in &self.singularities {
                let Some(c) = &s.coords else { continue };
                let p = [c[0].0.clone(), c[1].0.clone(), c[2].0.clone()];
                let name = format!("mult_at_{}", s.label);
                if p.iter().all(Zero::is_zero) {
                    push(&name, Err("coordinates are all zero".into()));
                    continue;
                }
                let m = multiplicity_at(f, &p) as i64;
                push(
                    &name,
                    (m == s.mult)
                        .then_some(())
                        .ok_or_else(|| format!("declared {}, polynomial has {}", s.mult, m)),
                );
            }
        }

        let passed = checks.iter().all(|c| c.passed);
        ValidationReport {
            passed,
            genus: g,
            checks,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub genus: i64,
    pub checks: Vec<Check>,
}

/// `(d-1)(d-2)/2 - sum m(m-1)/2`.
pub fn genus_of(degree: i64, mults: impl IntoIterator<Item = i64>) -> i64 {
    (degree - 1) * (degree - 2) / 2 - mults.into_iter().map(|m| m * (m - 1) / 2).sum::<i64>()
}

fn has_repeated_factor(f: &TriHomPoly) -> bool {
    if f.is_constant() {
        return false;
    }
    let mut g = f.clone();
    for v in 0..3 {
        g = g.gcd(&f.partial(v));
        if g.is_constant() {
            return false;
        }
    }
    !g.is_constant()
}

/// Irreducible plane curve of degree `d` with ordinary singular points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurveModel {
    degree: u32,
    singularities: Vec<SingularityData>,
    defining_poly: Option<TriHomPoly>,
}

impl PlaneCurveModel {
    pub fn new(
        degree: u32,
        singularities: Vec<SingularityData>,
        defining_poly: Option<TriHomPoly>,
    ) -> Result<Self, CurveError> {
        let d = degree as i64;
        if degree < 1 {
            return Err(CurveError::BadDegree(d));
        }
        let mut labels = BTreeSet::new();
        for s in &singularities {
            let label = &s.point.label;
            if !labels.insert(label.clone()) {
                return Err(CurveError::DuplicateLabel(label.clone()));
            }
            if s.multiplicity < 2 {
                return Err(CurveError::MultiplicityTooSmall {
                    label: label.clone(),
                    mult: s.multiplicity as i64,
                });
            }
            if s.multiplicity > degree {
                return Err(CurveError::MultiplicityExceedsDegree {
                    label: label.clone(),
                    mult: s.multiplicity as i64,
                    degree: d,
                });
            }
            if let Some(c) = &s.point.coords {
                if c.iter().all(Zero::is_zero) {
                    return Err(CurveError::ZeroPoint(label.clone()));
                }
            }
        }
        let g = genus_of(d, singularities.iter().map(|s| s.multiplicity as i64));
        if g < 0 {
            return Err(CurveError::NegativeGenus(g));
        }
        if let Some(f) = &defining_poly {
            if f.degree() != degree {
                return Err(CurveError::PolyDegreeMismatch {
                    poly: f.degree(),
                    degree: d,
                });
            }
            if f.is_zero() || has_repeated_factor(f) {
                return Err(CurveError::RepeatedFactor);
            }
        }
        Ok(PlaneCurveModel {
            degree,
            singularities,
            defining_poly,
        })
    }

    /// Model from numbers alone, labels `p1, p2, ...`.
    pub fn numeric(degree: u32, mults: &[u32]) -> Result<Self, CurveError> {
        Self::try_from(&CurveData::numeric(
            degree as i64,
            &mults.iter().map(|&m| m as i64).collect::<Vec<_>>(),
        ))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn singularities(&self) -> &[SingularityData] {
        &self.singularities
    }

    pub fn defining_poly(&self) -> Option<&TriHomPoly> {
        self.defining_poly.as_ref()
    }

    /// Geometric genus, from the ordinary-singularity formula.
    pub fn genus(&self) -> i64 {
        genus_of(
            self.degree as i64,
            self.singularities.iter().map(|s| s.multiplicity as i64),
        )
    }
}

impl TryFrom<&CurveData> for PlaneCurveModel {
    type Error = CurveError;

    fn try_from(c: &CurveData) -> Result<Self, CurveError> {
        if c.degree < 1 || c.degree > u32::MAX as i64 {
            return Err(CurveError::BadDegree(c.degree));
        }
        let mut sings = Vec::with_capacity(c.singularities.len());
        for s in &c.singularities {
            if !s.ordinary {
                return Err(CurveError::NotOrdinary(s.label.clone()));
            }
            if s.mult < 2 {
                return Err(CurveError::MultiplicityTooSmall {
                    label: s.label.clone(),
                    mult: s.mult,
                });
            }
            if s.mult > c.degree {
                return Err(CurveError::MultiplicityExceedsDegree {
                    label: s.label.clone(),
                    mult: s.mult,
                    degree: c.degree,
                });
            }
            sings.push(SingularityData {
                point: PointSpec {
                    label: s.label.clone(),
                    coords: s
                        .coords
                        .as_ref()
                        .map(|[a, b, c]| [a.0.clone(), b.0.clone(), c.0.clone()]),
                },
                multiplicity: s.mult as u32,
            });
        }
        PlaneCurveModel::new(c.degree as u32, sings, c.poly.clone())
    }
}

impl TryFrom<CurveData> for PlaneCurveModel {
    type Error = CurveError;
    fn try_from(c: CurveData) -> Result<Self, CurveError> {
        PlaneCurveModel::try_from(&c)
    }
}

/// Order of vanishing of `f` at the projective point `p`: the least `k` such
/// that some `k`-th order partial derivative is nonzero there. Returns 0 when
/// `p` is off the curve.
pub fn multiplicity_at(f: &TriHomPoly, p: &[Rational; 3]) -> u32 {
    // all partial derivatives of the current order, keyed by multi-index
    let mut layer: BTreeMap<[u32; 3], TriHomPoly> = BTreeMap::from([([0, 0, 0], f.clone())]);
    for k in 0..=f.degree() {
        if layer.values().any(|g| !g.eval(p).is_zero()) {
            return k;
        }
        let mut next = BTreeMap::new();
        for (idx, g) in &layer {
            for v in 0..3 {
                let mut i2 = *idx;
                i2[v] += 1;
                next.entry(i2).or_insert_with(|| g.partial(v));
            }
        }
        layer = next;
    }
    f.degree() + 1
}
