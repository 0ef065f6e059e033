//! Numerical types of rational pencils and their intersection with nodal
//! sextics.
//!
//! A pencil of rational curves of degree `n` with base multiplicities `m_i`
//! (proper or infinitely near) satisfies
//!
//! ```text
//! (n-1)(n-2)/2 - sum m_i(m_i-1)/2 = 0
//! (n+1)(n+2)/2 - sum m_i(m_i+1)/2 = 2
//! ```
//!
//! and so `3n - sum m_i = 2`.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::linsys::LinSys;

/// Largest `n_max` accepted by [`enumerate_pencil_types`] unless raised.
pub const DEFAULT_ENUM_BOUND: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PencilError {
    #[error("degree must be >= 1, got {0}")]
    BadDegree(i64),
    #[error("base multiplicities must be >= 1, got {0}")]
    BadMultiplicity(i64),
    #[error("({0}) is not a rational pencil type")]
    NotAPencil(String),
    #[error("node multiplicities must be >= 0, got {0}")]
    NegativeAssignment(i64),
    #[error("node multiplicities sum to {sum}, more than the base total {total}")]
    AssignmentTooLarge { sum: i64, total: i64 },
    #[error("n_max = {n_max} exceeds the enumeration bound {bound}")]
    BoundExceeded { n_max: i64, bound: i64 },
}

/// `(n; m_1 >= m_2 >= ...)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PencilType {
    pub n: i64,
    pub mults: Vec<i64>,
}

impl PencilType {
    /// Sorts the multiplicities; does not check the pencil equations.
    pub fn new(n: i64, mut mults: Vec<i64>) -> Result<Self, PencilError> {
        if n < 1 {
            return Err(PencilError::BadDegree(n));
        }
        if let Some(&m) = mults.iter().find(|&&m| m < 1) {
            return Err(PencilError::BadMultiplicity(m));
        }
        mults.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PencilType { n, mults })
    }

    /// The same numbers as a system on labels `p1, p2, ...`.
    pub fn to_linsys(&self) -> LinSys {
        LinSys::numeric(self.n, &self.mults).expect("nonnegative data")
    }

    pub fn report(&self) -> PencilReport {
        let n = self.n;
        let sum = |f: fn(i64) -> i64| self.mults.iter().map(|&m| f(m)).sum::<i64>();
        let eq1 = (n - 1) * (n - 2) / 2 - sum(|m| m * (m - 1) / 2);
        let eq2 = (n + 1) * (n + 2) / 2 - sum(|m| m * (m + 1) / 2) - 2;
        let eq3 = 3 * n - sum(|m| m) - 2;
        let valid = eq1 == 0 && eq2 == 0;
        PencilReport {
            n,
            mults: self.mults.clone(),
            residuals: Residuals { eq1, eq2, eq3 },
            valid,
            // eq3 = eq2 - eq1 identically
            eq3_follows: eq3 == eq2 - eq1,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.report().valid
    }
}

impl fmt::Display for PencilType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms: Vec<String> = self.mults.iter().map(i64::to_string).collect();
        write!(f, "{}; {{{}}}", self.n, ms.join(","))
    }
}

/// Left side minus right side of each equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residuals {
    pub eq1: i64,
    pub eq2: i64,
    pub eq3: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilReport {
    pub n: i64,
    pub mults: Vec<i64>,
    pub residuals: Residuals,
    /// Both defining equations hold.
    pub valid: bool,
    /// The third residual is the difference of the first two.
    pub eq3_follows: bool,
}

pub fn check_rational_pencil(n: i64, mults: &[i64]) -> Result<PencilReport, PencilError> {
    Ok(PencilType::new(n, mults.to_vec())?.report())
}

/// Free intersection `6n - 2 sum n_i` of a member of the pencil with a sextic
/// whose double points carry base points of multiplicities `n_i`.
pub fn sextic_free_intersection_bound(
    p: &PencilType,
    assignment: &[i64],
) -> Result<i64, PencilError> {
    if !p.is_valid() {
        return Err(PencilError::NotAPencil(p.to_string()));
    }
    if let Some(&a) = assignment.iter().find(|&&a| a < 0) {
        return Err(PencilError::NegativeAssignment(a));
    }
    let sum: i64 = assignment.iter().sum();
    let total: i64 = p.mults.iter().sum();
    if sum > total {
        return Err(PencilError::AssignmentTooLarge { sum, total });
    }
    Ok(6 * p.n - 2 * sum)
}

/// Every way of placing some of the base points at the 10 nodes of a
/// rational sextic, as sub-multisets of `p.mults` of size at most 10.
pub fn node_assignments(p: &PencilType) -> Vec<Vec<i64>> {
    let mut groups: Vec<(i64, usize)> = Vec::new();
    for &m in &p.mults {
        match groups.last_mut() {
            Some((v, c)) if *v == m => *c += 1,
            _ => groups.push((m, 1)),
        }
    }
    let mut out = Vec::new();
    fn rec(groups: &[(i64, usize)], room: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let Some(&(v, c)) = groups.first() else {
            out.push(cur.clone());
            return;
        };
        for k in 0..=c.min(room) {
            cur.extend(std::iter::repeat_n(v, k));
            rec(&groups[1..], room - k, cur, out);
            cur.truncate(cur.len() - k);
        }
    }
    rec(&groups, 10, &mut Vec::new(), &mut out);
    out
}

/// All pencil types with `n <= n_max`, ordered by `n` and then by the
/// multiplicity vector, largest first.
pub fn enumerate_pencil_types(n_max: i64, bound: i64) -> Result<Vec<PencilType>, PencilError> {
    if n_max > bound {
        return Err(PencilError::BoundExceeded { n_max, bound });
    }
    let mut out = Vec::new();
    for n in 1..=n_max {
        // the equations force sum m = 3n - 2 and sum m^2 = n^2
        let mut found = Vec::new();
        partitions(3 * n - 2, n, n * n, &mut Vec::new(), &mut found);
        for mults in found {
            let p = PencilType { n, mults };
            if p.is_valid() {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Non-increasing sequences with parts in `1..=max_part`, sum `rest` and sum
/// of squares exactly `sq`.
fn partitions(rest: i64, max_part: i64, sq: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if rest == 0 {
        if sq == 0 {
            out.push(cur.clone());
        }
        return;
    }
    // with parts >= 1 the sum of squares is at least the sum
    if sq < rest {
        return;
    }
    for m in (1..=max_part.min(rest)).rev() {
        if m * m > sq {
            continue;
        }
        cur.push(m);
        partitions(rest - m, m, sq - m * m, cur, out);
        cur.pop();
    }
}
