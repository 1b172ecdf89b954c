//! Classification of the non-unital irreducible symmetric R-spaces and their
//! structure constants `(n, p, r, d, e, b)`.
//!
//! Constants are tabulated per family as functions of the family parameters;
//! the genus identity `p = (e + 1) + (r - 1) d + b/2` is re-checked on every
//! construction.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_ratio, int, parse_rational, rat, Rational};

/// The eight non-unital families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `sl(r+s, R)`, `s > r >= 1`.
    SlReal { r: u32, s: u32 },
    /// `sl(r+s, C)`, `s > r >= 1`.
    SlComplex { r: u32, s: u32 },
    /// `sl(r+s, H)`, `s > r >= 1`.
    SlQuaternion { r: u32, s: u32 },
    /// `e6(-26)`, rank one.
    E6Minus26,
    /// `so(2r+1, 2r+1)`, `r > 1`.
    SoSplit { r: u32 },
    /// `so(4r+2, C)`, `r > 1`.
    SoComplex { r: u32 },
    /// `e6(6)`.
    E6Split,
    /// `e6(C)`.
    E6Complex,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::SlReal { .. } => "SL_R",
            Family::SlComplex { .. } => "SL_C",
            Family::SlQuaternion { .. } => "SL_H",
            Family::E6Minus26 => "E6_26",
            Family::SoSplit { .. } => "SO_split",
            Family::SoComplex { .. } => "SO_C",
            Family::E6Split => "E6_6",
            Family::E6Complex => "E6_C",
        }
    }

    pub fn params(&self) -> BTreeMap<String, u32> {
        let mut out = BTreeMap::new();
        match *self {
            Family::SlReal { r, s } | Family::SlComplex { r, s } | Family::SlQuaternion { r, s } => {
                out.insert("r".to_string(), r);
                out.insert("s".to_string(), s);
            }
            Family::SoSplit { r } | Family::SoComplex { r } => {
                out.insert("r".to_string(), r);
            }
            _ => {}
        }
        out
    }

    fn from_tag(tag: &str, params: &BTreeMap<String, u32>) -> Result<Family> {
        let get = |k: &str| {
            params
                .get(k)
                .copied()
                .ok_or_else(|| Error::InvalidCase(format!("family {tag} needs parameter `{k}`")))
        };
        Ok(match tag {
            "SL_R" => Family::SlReal { r: get("r")?, s: get("s")? },
            "SL_C" => Family::SlComplex { r: get("r")?, s: get("s")? },
            "SL_H" => Family::SlQuaternion { r: get("r")?, s: get("s")? },
            "E6_26" => Family::E6Minus26,
            "SO_split" => Family::SoSplit { r: get("r")? },
            "SO_C" => Family::SoComplex { r: get("r")? },
            "E6_6" => Family::E6Split,
            "E6_C" => Family::E6Complex,
            other => return Err(Error::InvalidCase(format!("unknown family `{other}`"))),
        })
    }

    /// True for the families whose restricted root system is of type A.
    pub fn is_sl_type(&self) -> bool {
        matches!(
            self,
            Family::SlReal { .. } | Family::SlComplex { .. } | Family::SlQuaternion { .. } | Family::E6Minus26
        )
    }
}

/// A non-unital symmetric R-space with its structure constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CaseRepr", into = "CaseRepr")]
pub struct CaseSpec {
    pub family: Family,
    /// Dimension of the nilradical.
    pub n: u32,
    /// Genus.
    pub p: Rational,
    /// Split rank.
    pub r: u32,
    pub d: u32,
    pub e: u32,
    pub b: u32,
}

/// Builds the case for `family`, validating the parameter constraints.
pub fn make_case(family: Family) -> Result<CaseSpec> {
    let sl_check = |r: u32, s: u32, name: &str| -> Result<()> {
        if r >= 1 && s > r {
            Ok(())
        } else {
            Err(Error::InvalidCase(format!(
                "{name} requires s > r >= 1, got r = {r}, s = {s}"
            )))
        }
    };
    let so_check = |r: u32, name: &str| -> Result<()> {
        if r > 1 {
            Ok(())
        } else {
            Err(Error::InvalidCase(format!("{name} requires r > 1, got r = {r}")))
        }
    };

    // (n, p, r, d, e, b); for rank one the multiplicity d is recorded as 0.
    let (n, p, r, d, e, b) = match family {
        Family::SlReal { r, s } => {
            sl_check(r, s, "sl(r+s,R)")?;
            let d = if r == 1 { 0 } else { 1 };
            (r * s, rat((r + s) as i64, 2), r, d, 0, s - r)
        }
        Family::SlComplex { r, s } => {
            sl_check(r, s, "sl(r+s,C)")?;
            let d = if r == 1 { 0 } else { 2 };
            (2 * r * s, int((r + s) as i64), r, d, 1, 2 * (s - r))
        }
        Family::SlQuaternion { r, s } => {
            sl_check(r, s, "sl(r+s,H)")?;
            let d = if r == 1 { 0 } else { 4 };
            (4 * r * s, int(2 * (r + s) as i64), r, d, 3, 4 * (s - r))
        }
        Family::E6Minus26 => (16, int(12), 1, 0, 7, 8),
        Family::SoSplit { r } => {
            so_check(r, "so(2r+1,2r+1)")?;
            (r * (2 * r + 1), int(2 * r as i64), r, 2, 0, 2)
        }
        Family::SoComplex { r } => {
            so_check(r, "so(4r+2,C)")?;
            (2 * r * (2 * r + 1), int(4 * r as i64), r, 4, 1, 4)
        }
        Family::E6Split => (16, int(6), 2, 3, 0, 4),
        Family::E6Complex => (32, int(12), 2, 6, 1, 8),
    };

    let case = CaseSpec { family, n, p, r, d, e, b };
    if case.b == 0 {
        return Err(Error::Internal(format!("{case}: multiplicity b vanishes")));
    }
    if case.genus_from_multiplicities() != case.p {
        return Err(Error::Internal(format!("{case}: genus identity fails")));
    }
    Ok(case)
}

impl CaseSpec {
    /// `(e + 1) + (r - 1) d + b/2`.
    pub fn genus_from_multiplicities(&self) -> Rational {
        int(self.e as i64 + 1) + int((self.r as i64 - 1) * self.d as i64) + rat(self.b as i64, 2)
    }

    pub fn rank(&self) -> usize {
        self.r as usize
    }

    pub fn n_q(&self) -> Rational {
        int(self.n as i64)
    }

    pub fn d_q(&self) -> Rational {
        int(self.d as i64)
    }

    pub fn e_q(&self) -> Rational {
        int(self.e as i64)
    }

    pub fn b_q(&self) -> Rational {
        int(self.b as i64)
    }

    /// The prefactor `2n/p` of the spectrum generating relations.
    pub fn two_n_over_p(&self) -> Rational {
        int(2 * self.n as i64) / self.p.clone()
    }

    pub(crate) fn check_index(&self, k: usize) -> Result<()> {
        if k >= 1 && k <= self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: k, rank: self.rank() })
        }
    }

    /// Every family with the distinguished `(m, 0, ..., 0)` small constituent.
    pub fn has_small_constituent(&self) -> bool {
        matches!(
            self.family,
            Family::E6Split | Family::E6Complex | Family::SoSplit { .. } | Family::SoComplex { .. }
        )
    }

    /// Canonical case string, as accepted by [`FromStr`].
    pub fn name(&self) -> String {
        match self.family {
            Family::SlReal { r, s } => format!("sl(r={r},s={s},R)"),
            Family::SlComplex { r, s } => format!("sl(r={r},s={s},C)"),
            Family::SlQuaternion { r, s } => format!("sl(r={r},s={s},H)"),
            Family::E6Minus26 => "e6(-26)".to_string(),
            Family::SoSplit { r } => format!("so(r={r},split)"),
            Family::SoComplex { r } => format!("so(r={r},C)"),
            Family::E6Split => "e6(6)".to_string(),
            Family::E6Complex => "e6(C)".to_string(),
        }
    }
}

/// `rho_k = (p - 1)/2 - (k - 1) d/2`, cross-checked against
/// `(r - k) d/2 + e/2 + b/4`.
pub fn rho(case: &CaseSpec, k: usize) -> Result<Rational> {
    case.check_index(k)?;
    let k = k as i64;
    let first = (case.p.clone() - int(1)) / int(2) - rat((k - 1) * case.d as i64, 2);
    let second = rat((case.r as i64 - k) * case.d as i64, 2)
        + rat(case.e as i64, 2)
        + rat(case.b as i64, 4);
    if first != second {
        return Err(Error::Internal(format!("rho_{k} expressions disagree for {case}")));
    }
    Ok(first)
}

/// All `rho_1 .. rho_r`.
pub fn rho_vector(case: &CaseSpec) -> Vec<Rational> {
    (1..=case.rank())
        .map(|k| rho(case, k).expect("index in range"))
        .collect()
}

/// True iff `rho_r = 1/2`, the boundary where `B(m, r)` survives at `m_r = 0`.
pub fn has_half_rho_r(case: &CaseSpec) -> bool {
    rho(case, case.rank()).expect("index in range") == rat(1, 2)
}

/// Representative parameters for every family.
pub fn representative_cases() -> Vec<CaseSpec> {
    let mut families = Vec::new();
    for (r, s) in [(1, 2), (2, 5)] {
        families.push(Family::SlReal { r, s });
        families.push(Family::SlComplex { r, s });
        families.push(Family::SlQuaternion { r, s });
    }
    families.push(Family::E6Minus26);
    for r in 2..=4 {
        families.push(Family::SoSplit { r });
        families.push(Family::SoComplex { r });
    }
    families.push(Family::E6Split);
    families.push(Family::E6Complex);
    families
        .into_iter()
        .map(|f| make_case(f).expect("representative parameters are valid"))
        .collect()
}

/// One case per family, at the smallest admissible parameters.
pub fn catalogue() -> Vec<CaseSpec> {
    [
        Family::SlReal { r: 1, s: 2 },
        Family::SlComplex { r: 1, s: 2 },
        Family::SlQuaternion { r: 1, s: 2 },
        Family::E6Minus26,
        Family::SoSplit { r: 2 },
        Family::SoComplex { r: 2 },
        Family::E6Split,
        Family::E6Complex,
    ]
    .into_iter()
    .map(|f| make_case(f).expect("valid"))
    .collect()
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for CaseSpec {
    type Err = Error;

    /// Accepts `sl(r=2,s=5,R)`, `so(r=3,split)`, `so(r=2,C)`, `e6(6)`, `e6(C)`,
    /// `e6(-26)`. Whitespace and case of the field letters are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let fail = |reason: &str| Error::ParseCase {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let open = compact.find('(').ok_or_else(|| fail("expected `name(...)`"))?;
        if !compact.ends_with(')') {
            return Err(fail("missing closing parenthesis"));
        }
        let head = compact[..open].to_ascii_lowercase();
        let body = &compact[open + 1..compact.len() - 1];

        let mut named = BTreeMap::new();
        let mut bare = Vec::new();
        for item in body.split(',').filter(|t| !t.is_empty()) {
            match item.split_once('=') {
                Some((k, v)) => {
                    let v: u32 = v.parse().map_err(|_| fail("parameter values must be integers"))?;
                    named.insert(k.to_ascii_lowercase(), v);
                }
                None => bare.push(item.to_string()),
            }
        }
        let need = |k: &str| named.get(k).copied().ok_or_else(|| fail(&format!("missing `{k}=`")));
        let field = || -> Result<String> {
            match bare.as_slice() {
                [one] => Ok(one.clone()),
                _ => Err(fail("expected exactly one field / form tag")),
            }
        };

        let family = match head.as_str() {
            "sl" => {
                let (r, s_) = (need("r")?, need("s")?);
                match field()?.to_ascii_uppercase().as_str() {
                    "R" => Family::SlReal { r, s: s_ },
                    "C" => Family::SlComplex { r, s: s_ },
                    "H" => Family::SlQuaternion { r, s: s_ },
                    _ => return Err(fail("sl field must be R, C or H")),
                }
            }
            "so" => {
                let r = need("r")?;
                match field()?.to_ascii_lowercase().as_str() {
                    "split" | "r" => Family::SoSplit { r },
                    "c" => Family::SoComplex { r },
                    _ => return Err(fail("so form must be `split` or `C`")),
                }
            }
            "e6" => {
                if !named.is_empty() {
                    return Err(fail("e6 takes no named parameters"));
                }
                match field()?.to_ascii_lowercase().as_str() {
                    "6" => Family::E6Split,
                    "c" => Family::E6Complex,
                    "-26" => Family::E6Minus26,
                    _ => return Err(fail("e6 form must be 6, C or -26")),
                }
            }
            _ => return Err(fail("unknown family name; expected sl, so or e6")),
        };
        make_case(family)
    }
}

#[derive(Serialize, Deserialize)]
struct CaseRepr {
    family: String,
    params: BTreeMap<String, u32>,
    n: u32,
    p: String,
    r: u32,
    d: u32,
    e: u32,
    b: u32,
}

impl From<CaseSpec> for CaseRepr {
    fn from(c: CaseSpec) -> Self {
        CaseRepr {
            family: c.family.tag().to_string(),
            params: c.family.params(),
            n: c.n,
            p: format_ratio(&c.p),
            r: c.r,
            d: c.d,
            e: c.e,
            b: c.b,
        }
    }
}

impl TryFrom<CaseRepr> for CaseSpec {
    type Error = Error;

    fn try_from(repr: CaseRepr) -> Result<Self> {
        let case = make_case(Family::from_tag(&repr.family, &repr.params)?)?;
        let p = parse_rational(&repr.p)?;
        if (repr.n, &p, repr.r, repr.d, repr.e, repr.b) != (case.n, &case.p, case.r, case.d, case.e, case.b) {
            return Err(Error::InvalidCase(format!(
                "constants in payload do not match the classification for {case}"
            )));
        }
        Ok(case)
    }
}
