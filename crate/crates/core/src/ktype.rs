//! Spherical K-types `V^m`, indexed by dominant weights `m_1 >= ... >= m_r >= 0`,
//! and the Casimir eigenvalues of the spectrum generating operator.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::CaseSpec;
use crate::scalar::{int, rat, Rational, Scalar};

/// A dominant integral weight `m = (m_1, ..., m_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct KType(Vec<u32>);

impl KType {
    /// Fails unless the entries are weakly decreasing.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(format!("{entries:?}")));
        }
        Ok(KType(entries))
    }

    /// Like [`KType::new`] but also checks the length against the case.
    pub fn for_case(case: &CaseSpec, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != case.rank() {
            return Err(Error::RankMismatch(format!("{entries:?}"), entries.len(), case.rank()));
        }
        Self::new(entries)
    }

    pub fn zero(rank: usize) -> Self {
        KType(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `m_j`, 1-based.
    pub fn get(&self, j: usize) -> u32 {
        self.0[j - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `m + e_j` if dominant.
    pub fn raised(&self, j: usize) -> Option<KType> {
        if j == 0 || j > self.rank() {
            return None;
        }
        if j > 1 && self.0[j - 2] == self.0[j - 1] {
            return None;
        }
        let mut v = self.0.clone();
        v[j - 1] += 1;
        Some(KType(v))
    }

    /// `m - e_j` if dominant.
    pub fn lowered(&self, j: usize) -> Option<KType> {
        if j == 0 || j > self.rank() {
            return None;
        }
        let next = self.0.get(j).copied().unwrap_or(0);
        if self.0[j - 1] == 0 || self.0[j - 1] == next {
            return None;
        }
        let mut v = self.0.clone();
        v[j - 1] -= 1;
        Some(KType(v))
    }
}

impl TryFrom<Vec<u32>> for KType {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        KType::new(v)
    }
}

impl From<KType> for Vec<u32> {
    fn from(m: KType) -> Self {
        m.0
    }
}

impl fmt::Display for KType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for KType {
    type Err = Error;

    /// Comma-separated weights, optionally bracketed: `2,1`, `[2,1]`, `(2,1)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_matches(|c| matches!(c, '[' | ']' | '(' | ')'));
        let entries = t
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::ParseWeight(s.to_string()))?;
        KType::new(entries)
    }
}

/// `pi_m = (n/p) * sum_j (m_j^2 + (p - 1 - (j - 1) d) m_j)`.
pub fn pi<F: Scalar>(case: &CaseSpec, m: &KType) -> F {
    let mut acc = Rational::from_integer(0.into());
    for (idx, &mj) in m.entries().iter().enumerate() {
        let mj = int(mj as i64);
        let lin = case.p.clone() - int(1) - int(idx as i64 * case.d as i64);
        acc += mj.clone() * mj.clone() + lin * mj;
    }
    F::from_rational(&(case.n_q() / case.p.clone() * acc))
}

/// `m^+(j) = m_j + p/2 - (j - 1) d/2`.
pub fn m_plus(case: &CaseSpec, m: &KType, j: usize) -> Result<Rational> {
    case.check_index(j)?;
    Ok(int(m.get(j) as i64) + case.p.clone() / int(2) - rat((j as i64 - 1) * case.d as i64, 2))
}

/// `m^-(j) = (m_j - 1) + p/2 - (j - 1) d/2`.
pub fn m_minus(case: &CaseSpec, m: &KType, j: usize) -> Result<Rational> {
    Ok(m_plus(case, m, j)? - int(1))
}

/// The finite truncation `{ m >= 0 : m_1 <= M }` of the K-type lattice.
#[derive(Clone, Debug)]
pub struct LatticeBox {
    pub case: CaseSpec,
    pub bound: u32,
    members: Vec<KType>,
    index: HashMap<KType, usize>,
}

impl LatticeBox {
    /// Members in lexicographic order.
    pub fn members(&self) -> &[KType] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, m: &KType) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &KType) -> bool {
        self.index.contains_key(m)
    }
}

/// Enumerates every dominant `m` of the case's rank with `m_1 <= bound`.
pub fn enumerate_box(case: &CaseSpec, bound: u32) -> LatticeBox {
    fn fill(prefix: &mut Vec<u32>, cap: u32, left: usize, out: &mut Vec<KType>) {
        if left == 0 {
            out.push(KType(prefix.clone()));
            return;
        }
        for x in 0..=cap {
            prefix.push(x);
            fill(prefix, x, left - 1, out);
            prefix.pop();
        }
    }
    let mut members = Vec::new();
    fill(&mut Vec::with_capacity(case.rank()), bound, case.rank(), &mut members);
    let index = members.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    LatticeBox { case: case.clone(), bound, members, index }
}
