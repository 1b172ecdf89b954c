//! Unitarizable constituents, intertwiner spectra and their Gamma-ratio closed
//! forms.
//!
//! An intertwiner `I(nu) -> I(-nu)` acts on `V^m` by a scalar `t(m)`; along a
//! lattice edge
//!
//! ```text
//! t(m + e_j) / t(m) = (pi_{m+e_j} - pi_m - (2n/p) nu) / (pi_{m+e_j} - pi_m + (2n/p) nu)
//! ```
//!
//! and a constituent off the imaginary axis can only carry an invariant form if
//! `C(m) = 0` on all of its K-types.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coeffs::coeff_c_direct;
use crate::error::{Error, Result};
use crate::ktype::{enumerate_box, pi, KType};
use crate::root_data::{CaseSpec, Family};
use crate::scalar::{checked_div, format_short, int, rat, serde_ratio, serde_ratio_vec, Rational, Scalar};
use crate::series::{composition_series_closed, reducibility, ChainKind, CompositionSeries, SpectralParam};

/// `Gamma_{k,d}(m + s+) / Gamma_{k,d}(m + s-)` with
/// `Gamma_{k,d}(s) = prod_{j=1..k} Gamma(s_j - (j-1) d/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaRatio {
    pub k: usize,
    pub d: u32,
    #[serde(with = "serde_ratio_vec")]
    pub plus: Vec<Rational>,
    #[serde(with = "serde_ratio_vec")]
    pub minus: Vec<Rational>,
}

impl GammaRatio {
    /// Shifts broadcast from scalars.
    pub fn uniform(k: usize, d: u32, plus: Rational, minus: Rational) -> Self {
        GammaRatio { k, d, plus: vec![plus; k], minus: vec![minus; k] }
    }

    /// The constant 1 (empty product).
    pub fn one() -> Self {
        GammaRatio { k: 0, d: 0, plus: vec![], minus: vec![] }
    }

    /// Numerator and denominator with numerator and denominator swapped.
    pub fn inverted(&self) -> Self {
        GammaRatio { k: self.k, d: self.d, plus: self.minus.clone(), minus: self.plus.clone() }
    }

    /// Value at `m` divided by the value at `0`, as the finite product
    /// `prod_j prod_{i < m_j} (a_j + i)/(b_j + i)`.
    pub fn evaluate<F: Scalar>(&self, m: &KType) -> Result<F> {
        let mut acc = F::one();
        for j in 0..self.k {
            let shift = rat(j as i64 * self.d as i64, 2);
            let a = self.plus[j].clone() - shift.clone();
            let b = self.minus[j].clone() - shift;
            for i in 0..m.get(j + 1) {
                let num = F::from_rational(&(a.clone() + int(i as i64)));
                let den = F::from_rational(&(b.clone() + int(i as i64)));
                acc = acc * checked_div(num, den, "Gamma ratio (pole)")?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for GammaRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            return write!(f, "1");
        }
        let gamma = if self.k == 1 { "Γ".to_string() } else { format!("Γ_{{{},{}}}", self.k, self.d) };
        let arg = |v: &[Rational]| {
            if v.iter().all(|x| *x == v[0]) {
                if v[0].is_zero() {
                    "m".to_string()
                } else if v[0].is_negative() {
                    format!("m-{}", format_short(&-v[0].clone()))
                } else {
                    format!("m+{}", format_short(&v[0]))
                }
            } else {
                let parts: Vec<String> = v.iter().map(format_short).collect();
                format!("m+({})", parts.join(","))
            }
        };
        write!(f, "{gamma}({})/{gamma}({})", arg(&self.plus), arg(&self.minus))
    }
}

/// Where in the composition series a classified constituent sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    Bottom,
    Top,
}

/// One row of the classification: at `nu` the constituent at `position`
/// is unitarizable with spectrum `gamma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedUnitary {
    #[serde(with = "serde_ratio")]
    pub nu: Rational,
    pub position: Position,
    pub gamma: GammaRatio,
}

/// Every real `nu` carrying a unitarizable proper constituent, with the
/// constituent and its spectrum. Subrepresentations at negative `nu`,
/// mirrored as top quotients at `-nu`.
pub fn unitary_classification(case: &CaseSpec) -> Vec<ClassifiedUnitary> {
    let mut neg = Vec::new();
    match case.family {
        Family::SlReal { .. } | Family::SlComplex { .. } | Family::SlQuaternion { .. } | Family::E6Minus26 => {
            neg.push((-case.p.clone() / int(2), GammaRatio::one()));
        }
        Family::E6Split => {
            neg.push((int(-3), GammaRatio::one()));
            neg.push((rat(-3, 2), GammaRatio::uniform(1, 3, rat(9, 2), rat(3, 2))));
        }
        Family::E6Complex => {
            neg.push((int(-6), GammaRatio::one()));
            neg.push((int(-3), GammaRatio::uniform(1, 6, int(9), int(3))));
        }
        Family::SoSplit { r } => {
            for j in 0..r as i64 {
                let g = GammaRatio::uniform(j as usize + 1, 2, int(2 * r as i64 - j), int(j));
                neg.push((int(-(r as i64 - j)), g));
            }
        }
        Family::SoComplex { r } => {
            for j in 0..r as i64 {
                let g = GammaRatio::uniform(j as usize + 1, 4, int(2 * (2 * r as i64 - j)), int(2 * j));
                neg.push((int(-2 * (r as i64 - j)), g));
            }
        }
    }
    let mut out: Vec<ClassifiedUnitary> = neg
        .iter()
        .map(|(nu, g)| ClassifiedUnitary { nu: nu.clone(), position: Position::Bottom, gamma: g.clone() })
        .collect();
    out.extend(neg.into_iter().map(|(nu, g)| ClassifiedUnitary { nu: -nu, position: Position::Top, gamma: g.inverted() }));
    out.sort_by(|a, b| a.nu.cmp(&b.nu));
    out
}

/// A constituent of `I(nu)`: subquotient `layer` of the composition series
/// (0 is the bottom), or the whole of `I(nu)` when irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    pub series: Option<CompositionSeries>,
    pub layer: usize,
}

impl Constituent {
    pub fn of(case: &CaseSpec, nu: &SpectralParam, layer: usize) -> Result<Self> {
        let series = if reducibility(case, nu).reducible { Some(composition_series_closed(case, nu)?) } else { None };
        let count = series.as_ref().map_or(1, CompositionSeries::length);
        if layer >= count {
            return Err(Error::IndexOutOfRange { index: layer, rank: count - 1 });
        }
        Ok(Constituent { series, layer })
    }

    pub fn contains(&self, m: &KType) -> bool {
        self.series.as_ref().is_none_or(|s| s.layer_of(m) == self.layer)
    }

    pub fn position(&self) -> Option<Position> {
        let s = self.series.as_ref()?;
        if self.layer == 0 {
            Some(Position::Bottom)
        } else if self.layer + 1 == s.length() {
            Some(Position::Top)
        } else {
            None
        }
    }

    /// `L2(-3/2)`, `I(nu)/R1(2)`, `L3(-1)/L2(-1)`, `I(nu)`.
    pub fn name(&self) -> String {
        let Some(s) = &self.series else {
            return "I(nu)".to_string();
        };
        let names = s.member_names();
        let upper = if self.layer < names.len() { names[self.layer].clone() } else { "I(nu)".to_string() };
        if self.layer == 0 {
            upper
        } else {
            format!("{upper}/{}", names[self.layer - 1])
        }
    }

    /// Members inside the box `m_1 <= bound`, box-ordered.
    pub fn members(&self, case: &CaseSpec, bound: u32) -> Vec<KType> {
        enumerate_box(case, bound).members().iter().filter(|m| self.contains(m)).cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitaryVerdict {
    pub constituent: String,
    pub layer: usize,
    pub description: String,
    pub trivial: bool,
    pub unitary: bool,
    pub spectrum: Option<GammaRatio>,
}

/// Unitarity of every constituent of `I(nu)`, following the classification.
pub fn unitary_constituents(case: &CaseSpec, nu: &SpectralParam) -> Vec<UnitaryVerdict> {
    let on_axis = match nu {
        SpectralParam::PureImaginary => true,
        SpectralParam::RealRational(q) => q.is_zero(),
        SpectralParam::GenericNonReal => false,
    };
    let report = reducibility(case, nu);
    if !report.reducible {
        return vec![UnitaryVerdict {
            constituent: "I(nu)".into(),
            layer: 0,
            description: if on_axis { "irreducible unitary principal series".into() } else { "irreducible, not unitarizable".into() },
            trivial: false,
            unitary: on_axis,
            spectrum: None,
        }];
    }
    let q = nu.as_real().expect("reducible implies real");
    let series = composition_series_closed(case, nu).expect("reducible");
    let classified = unitary_classification(case);
    (0..series.length())
        .map(|layer| {
            let c = Constituent { series: Some(series.clone()), layer };
            let hit = c
                .position()
                .and_then(|pos| classified.iter().find(|e| &e.nu == q && e.position == pos));
            let trivial = is_trivial(&series, layer, case.rank());
            UnitaryVerdict {
                constituent: c.name(),
                layer,
                description: series.describe_layer(layer),
                trivial,
                unitary: hit.is_some(),
                spectrum: hit.map(|e| e.gamma.clone()),
            }
        })
        .collect()
}

fn is_trivial(series: &CompositionSeries, layer: usize, rank: usize) -> bool {
    // the one-dimensional constituent is {0}; it contains 0 and not e_1
    let zero = KType::zero(rank);
    let mut e1 = vec![0; rank];
    e1[0] = 1;
    let e1 = KType::new(e1).expect("dominant");
    series.layer_of(&zero) == layer && series.layer_of(&e1) != layer
}

/// `t(m)` on the K-types of a constituent inside a box, normalised to 1 at
/// the first member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwinerSpectrum {
    pub constituent: String,
    pub base: KType,
    pub entries: Vec<SpectrumEntry>,
    pub positive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub m: KType,
    #[serde(with = "serde_ratio")]
    pub t: Rational,
}

impl IntertwinerSpectrum {
    pub fn get(&self, m: &KType) -> Option<&Rational> {
        self.entries.iter().find(|e| &e.m == m).map(|e| &e.t)
    }
}

/// `t(m + e_j)/t(m)` from the eigenvalue relation; `None` when the
/// denominator vanishes.
pub fn recurrence_ratio(case: &CaseSpec, nu: &Rational, m: &KType, j: usize) -> Option<Rational> {
    let up = m.raised(j)?;
    let gap = pi::<Rational>(case, &up) - pi::<Rational>(case, m);
    let shift = case.two_n_over_p() * nu.clone();
    let den = gap.clone() + shift.clone();
    (!den.is_zero()).then(|| (gap - shift) / den)
}

/// Why a constituent fails the computational unitarity tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// `C(m) != 0` while `nu` is off the imaginary axis.
    DiagonalNonzero {
        m: KType,
        #[serde(with = "serde_ratio")]
        c: Rational,
    },
    /// The recurrence denominator vanishes on an edge inside the constituent.
    IllDefinedRatio { m: KType, j: usize },
    /// `t(m + e_j)/t(m) <= 0` on an edge inside the constituent.
    NonPositiveRatio {
        m: KType,
        j: usize,
        #[serde(with = "serde_ratio")]
        ratio: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub constituent: String,
    pub obstruction: Option<Obstruction>,
    pub note: Option<String>,
}

impl ObstructionReport {
    pub fn is_empty(&self) -> bool {
        self.obstruction.is_none()
    }
}

/// Lattice edges `m -> m + e_j` with both ends among `members`.
fn inner_edges(members: &[KType]) -> Vec<(&KType, usize, KType)> {
    let set: std::collections::HashSet<&KType> = members.iter().collect();
    let mut out = Vec::new();
    for m in members {
        for j in 1..=m.rank() {
            if let Some(up) = m.raised(j).filter(|up| set.contains(up)) {
                out.push((m, j, up));
            }
        }
    }
    out
}

/// First obstruction to unitarity on the box, or an empty report.
pub fn unitarity_obstruction(case: &CaseSpec, nu: &SpectralParam, layer: usize, bound: u32) -> Result<ObstructionReport> {
    let c = Constituent::of(case, nu, layer)?;
    let q = match nu {
        SpectralParam::PureImaginary => {
            return Ok(ObstructionReport {
                constituent: c.name(),
                obstruction: None,
                note: Some("unitary principal series".into()),
            })
        }
        other => other.as_real()?.clone(),
    };
    let members = c.members(case, bound);
    let mut report = ObstructionReport { constituent: c.name(), obstruction: None, note: None };
    if q.is_zero() {
        report.note = Some("unitary principal series".into());
    } else {
        for m in &members {
            let cm: Rational = coeff_c_direct(case, m)?;
            if !cm.is_zero() {
                report.obstruction = Some(Obstruction::DiagonalNonzero { m: m.clone(), c: cm });
                return Ok(report);
            }
        }
    }
    for (m, j, _) in inner_edges(&members) {
        match recurrence_ratio(case, &q, m, j) {
            None => {
                report.obstruction = Some(Obstruction::IllDefinedRatio { m: m.clone(), j });
                return Ok(report);
            }
            Some(ratio) if !ratio.is_positive() => {
                report.obstruction = Some(Obstruction::NonPositiveRatio { m: m.clone(), j, ratio });
                return Ok(report);
            }
            Some(_) => {}
        }
    }
    Ok(report)
}

/// Propagates `t` from the first member of the constituent along lattice
/// edges inside it, then checks every inner edge against the recurrence.
pub fn spectrum_by_recurrence(case: &CaseSpec, nu: &SpectralParam, layer: usize, bound: u32) -> Result<IntertwinerSpectrum> {
    let q = nu.as_real()?.clone();
    let c = Constituent::of(case, nu, layer)?;
    let members = c.members(case, bound);
    let Some(base) = members.first().cloned() else {
        return Err(Error::InsufficientBox { bound, needed: "a box meeting the constituent".into() });
    };
    if !q.is_zero() {
        for m in &members {
            let cm: Rational = coeff_c_direct(case, m)?;
            if !cm.is_zero() {
                return Err(Error::Obstructed(format!("C{m} = {} != 0 with nu off the imaginary axis", format_short(&cm))));
            }
        }
    }
    let ratio = |m: &KType, j: usize| {
        recurrence_ratio(case, &q, m, j)
            .ok_or_else(|| Error::Obstructed(format!("vanishing recurrence denominator at {m}, j = {j}")))
    };

    let mut t: HashMap<KType, Rational> = HashMap::from([(base.clone(), Rational::one())]);
    let mut queue = VecDeque::from([base.clone()]);
    while let Some(m) = queue.pop_front() {
        let tm = t[&m].clone();
        for j in 1..=case.rank() {
            if let Some(up) = m.raised(j).filter(|u| c.contains(u) && u.get(1) <= bound) {
                if !t.contains_key(&up) {
                    t.insert(up.clone(), tm.clone() * ratio(&m, j)?);
                    queue.push_back(up);
                }
            }
            if let Some(down) = m.lowered(j).filter(|d| c.contains(d)) {
                if !t.contains_key(&down) {
                    let r = ratio(&down, j)?;
                    if r.is_zero() {
                        return Err(Error::Obstructed(format!("zero recurrence ratio into {m}")));
                    }
                    t.insert(down.clone(), tm.clone() / r);
                    queue.push_back(down);
                }
            }
        }
    }
    if t.len() != members.len() {
        return Err(Error::Internal(format!(
            "constituent {} is not connected by lattice edges inside the box",
            c.name()
        )));
    }
    for (m, j, up) in inner_edges(&members) {
        if t[&up] != t[m].clone() * ratio(m, j)? {
            return Err(Error::Internal(format!("path dependence at {m} -> {up}")));
        }
    }
    let entries: Vec<SpectrumEntry> = members.iter().map(|m| SpectrumEntry { m: m.clone(), t: t[m].clone() }).collect();
    let positive = entries.iter().all(|e| e.t.is_positive());
    Ok(IntertwinerSpectrum { constituent: c.name(), base, entries, positive })
}

/// The Gamma-ratio spectrum of a classified unitarizable constituent.
pub fn spectrum_closed_form(case: &CaseSpec, nu: &SpectralParam, layer: usize) -> Result<GammaRatio> {
    let verdicts = unitary_constituents(case, nu);
    verdicts
        .into_iter()
        .find(|v| v.layer == layer && v.unitary)
        .and_then(|v| v.spectrum)
        .ok_or_else(|| Error::NoClosedForm(format!("constituent {layer} of I({nu}) for {case} is not unitarizable")))
}

/// `nu` together with the composition series kind for every `nu` that has a
/// unitarizable constituent.
pub fn unitary_points(case: &CaseSpec) -> Vec<(Rational, ChainKind)> {
    unitary_classification(case)
        .into_iter()
        .map(|e| {
            let kind = if e.position == Position::Bottom { ChainKind::Lower } else { ChainKind::Upper };
            (e.nu, kind)
        })
        .collect()
}
