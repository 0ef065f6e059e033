//! Numerical linear systems of plane curves on points in general position.
//!
//! A system `(n; mu_1, ..., mu_k)` stands for the curves of degree `n` having
//! multiplicity at least `mu_i` at the labelled point `p_i`. All arithmetic
//! here uses only these numbers: dimensions and genera come from the usual
//! parameter counts, fixed lines and conics from Bezout counts.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

use crate::curve::PlaneCurveModel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinSysError {
    #[error("adjoint system does not exist: genus {0} <= 1")]
    AdjointDoesNotExist(i64),
    #[error("invalid system: {0}")]
    Invalid(String),
    #[error("fixed-component removal left degree {0} < 0; input is inconsistent")]
    Degenerate(i64),
    #[error("quadratic transform gives negative degree {0}")]
    NegativeDegree(i64),
    #[error("quadratic transform gives multiplicity {value} < 0 at {label}")]
    NegativeMultiplicity { label: String, value: i64 },
    #[error("base points of a quadratic transform must be distinct")]
    RepeatedBasePoint,
    #[error("adjoint chain did not terminate after {0} steps")]
    ChainTooLong(usize),
}

/// `(n; mu_i)` with the zero multiplicities dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLinSys")]
pub struct LinSys {
    degree: i64,
    mults: BTreeMap<String, i64>,
}

#[derive(Deserialize)]
struct RawLinSys {
    degree: i64,
    #[serde(default)]
    mults: BTreeMap<String, i64>,
}

impl TryFrom<RawLinSys> for LinSys {
    type Error = LinSysError;
    fn try_from(r: RawLinSys) -> Result<Self, LinSysError> {
        LinSys::new(r.degree, r.mults)
    }
}

impl LinSys {
    pub fn new(
        degree: i64,
        mults: impl IntoIterator<Item = (String, i64)>,
    ) -> Result<Self, LinSysError> {
        if degree < 0 {
            return Err(LinSysError::Invalid(format!("degree {degree} < 0")));
        }
        let mut map = BTreeMap::new();
        for (label, m) in mults {
            if m < 0 {
                return Err(LinSysError::Invalid(format!("multiplicity {m} < 0 at {label}")));
            }
            if map.insert(label.clone(), m).is_some() {
                return Err(LinSysError::Invalid(format!("duplicate label {label}")));
            }
        }
        map.retain(|_, m| *m > 0);
        Ok(LinSys { degree, mults: map })
    }

    /// Labels `p1, p2, ...` in order.
    pub fn numeric(degree: i64, mults: &[i64]) -> Result<Self, LinSysError> {
        Self::new(
            degree,
            mults
                .iter()
                .enumerate()
                .map(|(i, &m)| (format!("p{}", i + 1), m)),
        )
    }

    /// The curve's own numerical class `(d; m_i)`.
    pub fn from_curve(c: &PlaneCurveModel) -> Self {
        LinSys {
            degree: c.degree() as i64,
            mults: c
                .singularities()
                .iter()
                .map(|s| (s.point.label.clone(), s.multiplicity as i64))
                .collect(),
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn mults(&self) -> &BTreeMap<String, i64> {
        &self.mults
    }

    pub fn mult(&self, label: &str) -> i64 {
        self.mults.get(label).copied().unwrap_or(0)
    }

    /// Multiplicities in decreasing order.
    pub fn sorted_mults(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.mults.values().copied().collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// True iff a relabelling of the points turns one system into the other.
    pub fn equivalent_up_to_labels(&self, other: &LinSys) -> bool {
        self.degree == other.degree && self.sorted_mults() == other.sorted_mults()
    }

    /// `n(n+3)/2 - sum mu(mu+1)/2`; nonpositive means empty for general points.
    pub fn virtual_dim(&self) -> i64 {
        let n = self.degree;
        n * (n + 3) / 2 - self.mults.values().map(|m| m * (m + 1) / 2).sum::<i64>()
    }

    /// Arithmetic genus of a general member, `(n-1)(n-2)/2 - sum mu(mu-1)/2`.
    pub fn member_genus(&self) -> i64 {
        let n = self.degree;
        (n - 1) * (n - 2) / 2 - self.mults.values().map(|m| m * (m - 1) / 2).sum::<i64>()
    }

    /// `n^2 - sum mu^2`.
    pub fn self_intersection(&self) -> i64 {
        self.degree * self.degree - self.mults.values().map(|m| m * m).sum::<i64>()
    }

    /// gcd of the degree and all multiplicities.
    pub fn content(&self) -> i64 {
        self.mults
            .values()
            .fold(self.degree, |g, &m| g.gcd(&m))
    }

    /// `(n-3; mu_i - 1)`, the adjoint of a general member before fixed parts
    /// are removed. Exists only for member genus above 1.
    pub fn adjoint_raw(&self) -> Result<LinSys, LinSysError> {
        let g = self.member_genus();
        if g <= 1 {
            return Err(LinSysError::AdjointDoesNotExist(g));
        }
        LinSys::new(
            self.degree - 3,
            self.mults.iter().map(|(l, m)| (l.clone(), (m - 1).max(0))),
        )
    }

    /// Every fixed line or conic that the Bezout counts detect in the current
    /// system: lines first, then conics, each in lexicographic label order.
    pub fn applicable_rules(&self) -> Vec<RemovedComponent> {
        let labels: Vec<&String> = self.mults.keys().collect();
        let n = self.degree;
        let mut rules = Vec::new();
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                if self.mults[labels[i]] + self.mults[labels[j]] > n {
                    rules.push(RemovedComponent::Line([labels[i].clone(), labels[j].clone()]));
                }
            }
        }
        if labels.len() >= 5 {
            for_each_subset(labels.len(), 5, |idx| {
                let s: i64 = idx.iter().map(|&k| self.mults[labels[k]]).sum();
                if s > 2 * n {
                    let through: [String; 5] = std::array::from_fn(|k| labels[idx[k]].clone());
                    rules.push(RemovedComponent::Conic(through));
                }
            });
        }
        rules
    }

    fn subtract(&self, c: &RemovedComponent) -> Result<LinSys, LinSysError> {
        let (dn, through): (i64, &[String]) = match c {
            RemovedComponent::Line(t) => (1, t),
            RemovedComponent::Conic(t) => (2, t),
        };
        let degree = self.degree - dn;
        if degree < 0 {
            return Err(LinSysError::Degenerate(degree));
        }
        let mut mults = self.mults.clone();
        for l in through {
            let m = mults.get_mut(l).expect("component passes through a base point");
            *m -= 1;
        }
        mults.retain(|_, m| *m > 0);
        Ok(LinSys { degree, mults })
    }

    /// Strips fixed lines and conics until none is detected, using the
    /// deterministic order of [`applicable_rules`](Self::applicable_rules).
    pub fn remove_fixed_components(&self) -> Result<(LinSys, Vec<Removed>), LinSysError> {
        self.remove_fixed_components_by(|_| 0)
    }

    /// Same as [`remove_fixed_components`](Self::remove_fixed_components) but
    /// `pick` chooses which applicable rule to apply next.
    pub fn remove_fixed_components_by(
        &self,
        mut pick: impl FnMut(&[RemovedComponent]) -> usize,
    ) -> Result<(LinSys, Vec<Removed>), LinSysError> {
        let mut cur = self.clone();
        let mut removed: BTreeMap<RemovedComponent, u32> = BTreeMap::new();
        loop {
            let rules = cur.applicable_rules();
            if rules.is_empty() {
                break;
            }
            let rule = &rules[pick(&rules).min(rules.len() - 1)];
            cur = cur.subtract(rule)?;
            *removed.entry(rule.clone()).or_default() += 1;
        }
        let removed = removed
            .into_iter()
            .map(|(component, count)| Removed { component, count })
            .collect();
        Ok((cur, removed))
    }

    /// If the system is `t` times an irreducible pencil, returns `t` and the
    /// pencil. Assumes fixed components are already gone.
    pub fn pencil_decompose(&self) -> Option<PencilReduction> {
        let c = self.content();
        if c < 2 {
            return None;
        }
        let p = LinSys {
            degree: self.degree / c,
            mults: self.mults.iter().map(|(l, m)| (l.clone(), m / c)).collect(),
        };
        (p.member_genus() == 0 && p.self_intersection() == 0 && p.virtual_dim() == 1).then_some(
            PencilReduction {
                content: c,
                pencil: p,
            },
        )
    }

    /// Adjoint, minus fixed lines and conics, replaced by its pencil when it
    /// is composed with one.
    pub fn adjoint_step(&self) -> Result<ChainStep, LinSysError> {
        let raw = self.adjoint_raw()?;
        let (reduced, removed) = raw.remove_fixed_components()?;
        let pencil = reduced.pencil_decompose();
        Ok(ChainStep {
            input: self.clone(),
            raw,
            removed,
            reduced,
            pencil,
        })
    }

    /// Image under the quadratic map based at three of the points:
    /// `n' = 2n - mu_1 - mu_2 - mu_3`, `mu'_i = n - mu_j - mu_k`.
    /// The base labels name the images of the contracted lines afterwards.
    pub fn quadratic_transform(&self, base: [&str; 3]) -> Result<LinSys, LinSysError> {
        if base[0] == base[1] || base[0] == base[2] || base[1] == base[2] {
            return Err(LinSysError::RepeatedBasePoint);
        }
        let n = self.degree;
        let m: [i64; 3] = base.map(|l| self.mult(l));
        let degree = 2 * n - m[0] - m[1] - m[2];
        if degree < 0 {
            return Err(LinSysError::NegativeDegree(degree));
        }
        let mut mults = self.mults.clone();
        for i in 0..3 {
            let v = n - m[(i + 1) % 3] - m[(i + 2) % 3];
            if v < 0 {
                return Err(LinSysError::NegativeMultiplicity {
                    label: base[i].to_string(),
                    value: v,
                });
            }
            mults.insert(base[i].to_string(), v);
        }
        mults.retain(|_, m| *m > 0);
        Ok(LinSys { degree, mults })
    }

    /// Successive adjoints starting from this system, stopping once the
    /// general member has genus at most 1 or the system is empty.
    pub fn chain(&self) -> Result<ChainReport, LinSysError> {
        run_chain(self.clone(), true)
    }
}

impl fmt::Display for LinSys {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.degree)?;
        if self.mults.is_empty() {
            return write!(f, " -)");
        }
        let parts: Vec<String> = self
            .mults
            .iter()
            .map(|(l, m)| format!(" {l}:{m}"))
            .collect();
        write!(f, "{})", parts.join(","))
    }
}

/// Calls `f` with every `k`-subset of `0..n`, lexicographically.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// A fixed line through two base points or conic through five.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "through", rename_all = "lowercase")]
pub enum RemovedComponent {
    Line([String; 2]),
    Conic([String; 5]),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Removed {
    pub component: RemovedComponent,
    pub count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilReduction {
    pub content: i64,
    pub pencil: LinSys,
}

/// One application of the adjoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub input: LinSys,
    pub raw: LinSys,
    pub removed: Vec<Removed>,
    /// `raw` with the removed components subtracted.
    pub reduced: LinSys,
    pub pencil: Option<PencilReduction>,
}

impl ChainStep {
    /// The system the next step starts from.
    pub fn output(&self) -> &LinSys {
        self.pencil.as_ref().map_or(&self.reduced, |p| &p.pencil)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    RationalPencil,
    EllipticPencil,
    EllipticNet,
    RationalSystem,
    Exhausted,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub steps: Vec<ChainStep>,
    pub terminal: LinSys,
    #[serde(rename = "class")]
    pub classification: Classification,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Classifies a system whose general member has genus at most 1, or which
/// is empty.
pub fn classify_terminal(l: &LinSys) -> (Classification, Option<String>) {
    let (g, v) = (l.member_genus(), l.virtual_dim());
    match (g, v) {
        (_, v) if v <= 0 => (Classification::Exhausted, None),
        (0, 1) => (Classification::RationalPencil, None),
        (1, 1) => (Classification::EllipticPencil, None),
        (1, 2) => (Classification::EllipticNet, None),
        (0, _) => (Classification::RationalSystem, None),
        (1, v) => (
            Classification::Exhausted,
            Some(format!("genus-1 system {l} of dimension {v} >= 3 has no known type")),
        ),
        (g, _) => (
            Classification::Exhausted,
            Some(format!("terminal system {l} has member genus {g}")),
        ),
    }
}

fn run_chain(start: LinSys, check_start_empty: bool) -> Result<ChainReport, LinSysError> {
    // the degree drops by at least 3 per step
    let max_steps = (start.degree as usize).div_ceil(3) + 1;
    let mut steps: Vec<ChainStep> = Vec::new();
    let mut cur = start;
    loop {
        let empty = cur.virtual_dim() <= 0 && (check_start_empty || !steps.is_empty());
        if empty || cur.member_genus() <= 1 {
            let (classification, warning) = classify_terminal(&cur);
            return Ok(ChainReport {
                steps,
                terminal: cur,
                classification,
                warnings: warning.into_iter().collect(),
            });
        }
        if steps.len() >= max_steps {
            return Err(LinSysError::ChainTooLong(steps.len()));
        }
        let step = cur.adjoint_step()?;
        cur = step.output().clone();
        steps.push(step);
    }
}

/// `(d-3; m_i - 1)` for a curve of genus above 1.
pub fn adjoint_raw(c: &PlaneCurveModel) -> Result<LinSys, LinSysError> {
    let g = c.genus();
    if g <= 1 {
        return Err(LinSysError::AdjointDoesNotExist(g));
    }
    LinSys::from_curve(c).adjoint_raw()
}

/// Successive adjoints of a curve of genus above 1.
pub fn adjoint_chain(c: &PlaneCurveModel) -> Result<ChainReport, LinSysError> {
    let g = c.genus();
    if g <= 1 {
        return Err(LinSysError::AdjointDoesNotExist(g));
    }
    run_chain(LinSys::from_curve(c), false)
}
