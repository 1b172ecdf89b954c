//! Gelfand-Kirillov dimensions and the comparison with minimal nilpotent
//! orbits.
//!
//! The two sides are computed independently: the GK dimension of the small
//! constituent is one more than the degree in `m` of `dim V^(m,0,...,0)`,
//! found by counting roots; the orbit dimension comes from tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::{CaseSpec, Family};
use crate::roots::RootSystemData;

/// Which representation a GK dimension refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepKind {
    /// `I(nu)` for `nu` on the imaginary axis.
    UnitaryPrincipalSeries,
    /// The constituent spanned by the K-types `(m, 0, ..., 0)`.
    SmallConstituent,
}

impl std::str::FromStr for RepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "principal" | "ps" | "unitary_principal_series" => Ok(RepKind::UnitaryPrincipalSeries),
            "small" | "small_constituent" => Ok(RepKind::SmallConstituent),
            other => Err(Error::Unsupported(format!("representation kind `{other}`"))),
        }
    }
}

/// The root system of `k_C` carrying the ray, for the four families with a
/// small constituent.
pub fn root_system(case: &CaseSpec) -> Result<RootSystemData> {
    match case.family {
        Family::E6Split => Ok(RootSystemData::c4()),
        Family::E6Complex => Ok(RootSystemData::e6()),
        Family::SoSplit { r } => Ok(RootSystemData::b_times_b(r)),
        Family::SoComplex { r } => Ok(RootSystemData::d(2 * r + 1)),
        _ => Err(Error::Unsupported(format!("{case} has no distinguished ray constituent"))),
    }
}

/// Degree in `m` of `dim V^(m,0,...,0)`: positive roots not orthogonal to
/// the highest weight. Evaluated at two values of `m` to confirm it only
/// depends on the direction.
pub fn degree_count(case: &CaseSpec) -> Result<u32> {
    let roots = root_system(case)?;
    let d1 = roots.nonorthogonal_count(1);
    let d2 = roots.nonorthogonal_count(7);
    if d1 != d2 {
        return Err(Error::Internal(format!("degree count depends on m for {case}")));
    }
    Ok(d1 as u32)
}

pub fn gk_dimension(case: &CaseSpec, rep: RepKind) -> Result<u32> {
    match rep {
        RepKind::UnitaryPrincipalSeries => Ok(case.n),
        RepKind::SmallConstituent => Ok(degree_count(case)? + 1),
    }
}

/// Complex simple Lie algebras, for the half-dimension table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimpleType {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl SimpleType {
    /// Half the complex dimension of the minimal nilpotent orbit.
    pub fn half_min_orbit(self) -> u32 {
        match self {
            SimpleType::A(k) => k,
            SimpleType::B(k) => 2 * k - 2,
            SimpleType::C(k) => k,
            SimpleType::D(k) => 2 * k - 3,
            SimpleType::G2 => 3,
            SimpleType::F4 => 8,
            SimpleType::E6 => 11,
            SimpleType::E7 => 17,
            SimpleType::E8 => 29,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::A(k) => write!(f, "A{k}"),
            SimpleType::B(k) => write!(f, "B{k}"),
            SimpleType::C(k) => write!(f, "C{k}"),
            SimpleType::D(k) => write!(f, "D{k}"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// Real forms whose minimal `K_C`-orbits are not half of the complex ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExceptionalRealForm {
    /// `su*(2k)`
    SuStar(u32),
    /// `so(k+1, 1)`
    SoLorentz(u32),
    /// `sp(p, q)`
    Sp(u32, u32),
    E6Minus26,
    F4Minus20,
}

impl ExceptionalRealForm {
    pub fn min_orbit(self) -> u32 {
        match self {
            ExceptionalRealForm::SuStar(k) => 4 * k - 4,
            ExceptionalRealForm::SoLorentz(k) => k,
            ExceptionalRealForm::Sp(p, q) => 2 * (p + q) - 1,
            ExceptionalRealForm::E6Minus26 => 16,
            ExceptionalRealForm::F4Minus20 => 11,
        }
    }
}

impl fmt::Display for ExceptionalRealForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExceptionalRealForm::SuStar(k) => write!(f, "su*({})", 2 * k),
            ExceptionalRealForm::SoLorentz(k) => write!(f, "so({},1)", k + 1),
            ExceptionalRealForm::Sp(p, q) => write!(f, "sp({p},{q})"),
            ExceptionalRealForm::E6Minus26 => write!(f, "e6(-26)"),
            ExceptionalRealForm::F4Minus20 => write!(f, "f4(-20)"),
        }
    }
}

/// Which of the three cases determines `m(g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum OrbitTable {
    /// Real form whose complexification has minimal orbit of the given type:
    /// `m(g)` is half its dimension.
    HalfDimension { complex: SimpleType },
    /// One of the listed real forms.
    RealForm { form: ExceptionalRealForm },
    /// A complex group viewed as real: twice the value for its split form.
    Complex { complex: SimpleType },
}

impl OrbitTable {
    pub fn dim(&self) -> u32 {
        match self {
            OrbitTable::HalfDimension { complex } => complex.half_min_orbit(),
            OrbitTable::RealForm { form } => form.min_orbit(),
            OrbitTable::Complex { complex } => 2 * complex.half_min_orbit(),
        }
    }
}

pub fn orbit_table(case: &CaseSpec) -> OrbitTable {
    match case.family {
        Family::SlReal { r, s } => OrbitTable::HalfDimension { complex: SimpleType::A(r + s - 1) },
        Family::SlComplex { r, s } => OrbitTable::Complex { complex: SimpleType::A(r + s - 1) },
        Family::SlQuaternion { r, s } => OrbitTable::RealForm { form: ExceptionalRealForm::SuStar(r + s) },
        Family::E6Minus26 => OrbitTable::RealForm { form: ExceptionalRealForm::E6Minus26 },
        Family::SoSplit { r } => OrbitTable::HalfDimension { complex: SimpleType::D(2 * r + 1) },
        Family::SoComplex { r } => OrbitTable::Complex { complex: SimpleType::D(2 * r + 1) },
        Family::E6Split => OrbitTable::HalfDimension { complex: SimpleType::E6 },
        Family::E6Complex => OrbitTable::Complex { complex: SimpleType::E6 },
    }
}

/// `m(g)`, the dimension of the minimal nilpotent `K_C`-orbit in `p_C`.
pub fn minimal_orbit_dim(case: &CaseSpec) -> u32 {
    orbit_table(case).dim()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The associated variety is the closure of the minimal orbit.
    Minimal,
    /// A listed configuration where the two sides disagree.
    NotMinimal,
    /// Outside the configurations this comparison covers.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatedVariety {
    pub gk_dim: u32,
    pub min_orbit_dim: u32,
    pub verdict: Verdict,
}

/// Rank-one principal series, and the small constituents of the four ray
/// families, are decided by comparing `gk_dimension` with
/// `minimal_orbit_dim`; everything else is undetermined.
pub fn associated_variety_verdict(case: &CaseSpec, rep: RepKind) -> Result<AssociatedVariety> {
    let gk_dim = gk_dimension(case, rep)?;
    let min_orbit_dim = minimal_orbit_dim(case);
    let listed = match rep {
        RepKind::UnitaryPrincipalSeries => case.r == 1,
        RepKind::SmallConstituent => case.has_small_constituent(),
    };
    let verdict = match (listed, gk_dim == min_orbit_dim) {
        (false, _) => Verdict::Undetermined,
        (true, true) => Verdict::Minimal,
        (true, false) => Verdict::NotMinimal,
    };
    Ok(AssociatedVariety { gk_dim, min_orbit_dim, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::make_case;

    #[test]
    fn degree_counts() {
        assert_eq!(degree_count(&make_case(Family::E6Split).unwrap()).unwrap(), 10);
        assert_eq!(degree_count(&make_case(Family::E6Complex).unwrap()).unwrap(), 21);
        for r in 2..=4 {
            assert_eq!(degree_count(&make_case(Family::SoSplit { r }).unwrap()).unwrap(), 4 * r - 2);
            assert_eq!(degree_count(&make_case(Family::SoComplex { r }).unwrap()).unwrap(), 8 * r - 3);
        }
        assert!(degree_count(&make_case(Family::E6Minus26).unwrap()).is_err());
    }

    #[test]
    fn orbit_dimensions() {
        for r in 2..=4 {
            assert_eq!(minimal_orbit_dim(&make_case(Family::SoSplit { r }).unwrap()), 4 * r - 1);
            assert_eq!(minimal_orbit_dim(&make_case(Family::SoComplex { r }).unwrap()), 8 * r - 2);
        }
        assert_eq!(minimal_orbit_dim(&make_case(Family::E6Minus26).unwrap()), 16);
        assert_eq!(minimal_orbit_dim(&make_case(Family::E6Split).unwrap()), 11);
        assert_eq!(minimal_orbit_dim(&make_case(Family::E6Complex).unwrap()), 22);
        assert_eq!(ExceptionalRealForm::Sp(1, 2).min_orbit(), 5);
        assert_eq!(ExceptionalRealForm::SoLorentz(5).min_orbit(), 5);
        assert_eq!(SimpleType::B(3).half_min_orbit(), 4);
    }

    #[test]
    fn gk_values() {
        let e6c = make_case(Family::E6Complex).unwrap();
        assert_eq!(gk_dimension(&e6c, RepKind::SmallConstituent).unwrap(), 22);
        let slh = make_case(Family::SlQuaternion { r: 1, s: 3 }).unwrap();
        assert_eq!(gk_dimension(&slh, RepKind::UnitaryPrincipalSeries).unwrap(), 12);
        assert!(gk_dimension(&slh, RepKind::SmallConstituent).is_err());
    }

    #[test]
    fn verdicts() {
        for s in 2..=6 {
            for fam in [Family::SlReal { r: 1, s }, Family::SlComplex { r: 1, s }, Family::SlQuaternion { r: 1, s }] {
                let case = make_case(fam).unwrap();
                let v = associated_variety_verdict(&case, RepKind::UnitaryPrincipalSeries).unwrap();
                assert_eq!(v.verdict, Verdict::Minimal, "{case}");
            }
        }
        let e626 = make_case(Family::E6Minus26).unwrap();
        assert_eq!(associated_variety_verdict(&e626, RepKind::UnitaryPrincipalSeries).unwrap().verdict, Verdict::Minimal);
        let e66 = make_case(Family::E6Split).unwrap();
        let v = associated_variety_verdict(&e66, RepKind::SmallConstituent).unwrap();
        assert_eq!((v.gk_dim, v.min_orbit_dim, v.verdict), (11, 11, Verdict::Minimal));
        let sl = make_case(Family::SlReal { r: 2, s: 5 }).unwrap();
        let v = associated_variety_verdict(&sl, RepKind::UnitaryPrincipalSeries).unwrap();
        assert_eq!(v.gk_dim, 10);
        assert_eq!(v.verdict, Verdict::Undetermined);
    }
}
