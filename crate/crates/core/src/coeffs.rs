//! Expansion coefficients of `phi_{e_1} * phi_m` in spherical vectors:
//!
//! ```text
//! omega(Z_0) phi_m = sum_k A(m,k) phi_{m+e_k} + sum_k B(m,k) phi_{m-e_k} + C(m) phi_m
//! ```
//!
//! `A` and `B` come from the product formula in the shifted variables
//! `y_k = m_k + rho_k`; `C` is defined by normalization (the direct route) and
//! independently given by a closed form (the closed route). The two routes must
//! agree exactly.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ktype::KType;
use crate::root_data::{has_half_rho_r, rho_vector, CaseSpec, Family};
use crate::scalar::{checked_div, int, rat, Scalar};

/// `A(m, .)`, `B(m, .)` and `C(m)` for one K-type.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTriple<F> {
    pub a: Vec<F>,
    pub b: Vec<F>,
    pub c: F,
}

fn lift<F: Scalar>(q: crate::scalar::Rational) -> F {
    F::from_rational(&q)
}

/// `y_k = m_k + rho_k` for every `k`.
fn shifted<F: Scalar>(case: &CaseSpec, m: &KType) -> Vec<F> {
    rho_vector(case)
        .into_iter()
        .zip(m.entries())
        .map(|(rk, &mk)| lift::<F>(int(mk as i64) + rk))
        .collect()
}

/// The raw product formula for `A(m, k)`; zero exactly when `m + e_k` leaves
/// the dominant cone.
pub fn a_formula<F: Scalar>(case: &CaseSpec, m: &KType, k: usize) -> Result<F> {
    case.check_index(k)?;
    let y = shifted::<F>(case, m);
    let two = F::from_int(2);
    let half_d = lift::<F>(rat(case.d as i64, 2));
    let half_b = lift::<F>(rat(case.b as i64, 2));
    let e = F::from_int(case.e as i64);
    let yk = y[k - 1].clone();
    let x = two * yk.clone();

    let mut num = (x.clone() + half_b.clone() + F::one()) * (x.clone() + half_b + e);
    let mut den = x.clone() * (x + F::one());
    for (j, yj) in y.iter().enumerate() {
        if j + 1 == k {
            continue;
        }
        num = num
            * (yk.clone() - yj.clone() + half_d.clone())
            * (yk.clone() + yj.clone() + half_d.clone());
        den = den * (yk.clone() - yj.clone()) * (yk.clone() + yj.clone());
    }
    let prefactor = lift::<F>(case.p.clone() / int(2 * case.n as i64));
    Ok(prefactor * checked_div(num, den, "A(m,k)")?)
}

/// The raw product formula for `B(m, k)`. At `k = r`, `m_r = 0`,
/// `rho_r = 1/2` the numerator factor `2y_r - b/2 - e` and the denominator
/// factor `2y_r - 1` are identical linear forms and are removed together.
pub fn b_formula<F: Scalar>(case: &CaseSpec, m: &KType, k: usize) -> Result<F> {
    case.check_index(k)?;
    let y = shifted::<F>(case, m);
    let two = F::from_int(2);
    let half_d = lift::<F>(rat(case.d as i64, 2));
    let half_b = lift::<F>(rat(case.b as i64, 2));
    let e = F::from_int(case.e as i64);
    let yk = y[k - 1].clone();
    let x = two * yk.clone();

    let cancel = is_cancellation_point(case, m, k);
    let mut num = x.clone() - half_b.clone() - F::one();
    let mut den = x.clone();
    if !cancel {
        num = num * (x.clone() - half_b - e);
        den = den * (x - F::one());
    }
    for (j, yj) in y.iter().enumerate() {
        if j + 1 == k {
            continue;
        }
        num = num
            * (yk.clone() + yj.clone() - half_d.clone())
            * (yk.clone() - yj.clone() - half_d.clone());
        den = den * (yk.clone() + yj.clone()) * (yk.clone() - yj.clone());
    }
    let prefactor = lift::<F>(case.p.clone() / int(2 * case.n as i64));
    Ok(prefactor * checked_div(num, den, "B(m,k)")?)
}

/// `k = r`, `m_r = 0` and `rho_r = 1/2`: the one place where `B(m, k)` is
/// nonzero although `m - e_k` is not dominant.
pub fn is_cancellation_point(case: &CaseSpec, m: &KType, k: usize) -> bool {
    k == case.rank() && m.get(k) == 0 && has_half_rho_r(case)
}

/// `A(m, k)`, checked against the dominance pattern: nonzero iff `m + e_k`
/// is dominant.
pub fn coeff_a<F: Scalar>(case: &CaseSpec, m: &KType, k: usize) -> Result<F> {
    check_rank(case, m)?;
    let v = a_formula::<F>(case, m, k)?;
    let expect_nonzero = m.raised(k).is_some();
    if expect_nonzero == v.is_zero() {
        return Err(Error::Internal(format!(
            "A({m},{k}) = {v:?} contradicts the dominance of m + e_{k} for {case}"
        )));
    }
    Ok(v)
}

/// `B(m, k)`, checked against the dominance pattern: nonzero iff `m - e_k`
/// is dominant or at the cancellation point.
pub fn coeff_b<F: Scalar>(case: &CaseSpec, m: &KType, k: usize) -> Result<F> {
    check_rank(case, m)?;
    let v = b_formula::<F>(case, m, k)?;
    let expect_nonzero = m.lowered(k).is_some() || is_cancellation_point(case, m, k);
    if expect_nonzero == v.is_zero() {
        return Err(Error::Internal(format!(
            "B({m},{k}) = {v:?} contradicts the dominance of m - e_{k} for {case}"
        )));
    }
    Ok(v)
}

/// `C(m) = 1 - sum_{m+e_k >= 0} A(m,k) - sum_{m-e_k >= 0} B(m,k)`.
pub fn coeff_c_direct<F: Scalar>(case: &CaseSpec, m: &KType) -> Result<F> {
    Ok(coeff_triple::<F>(case, m)?.c)
}

/// All coefficients of one K-type; `c` is the direct (normative) value.
pub fn coeff_triple<F: Scalar>(case: &CaseSpec, m: &KType) -> Result<CoeffTriple<F>> {
    check_rank(case, m)?;
    let mut a = Vec::with_capacity(case.rank());
    let mut b = Vec::with_capacity(case.rank());
    let mut c = F::one();
    for k in 1..=case.rank() {
        let ak = coeff_a::<F>(case, m, k)?;
        let bk = coeff_b::<F>(case, m, k)?;
        if m.raised(k).is_some() {
            c = c - ak.clone();
        }
        if m.lowered(k).is_some() {
            c = c - bk.clone();
        }
        a.push(ak);
        b.push(bk);
    }
    Ok(CoeffTriple { a, b, c })
}

/// Closed form for `C(m)` in `x_k = 2m_k + 2rho_k`:
///
/// * `d != 0, 2`: `rb/2n - K/(d(d-2)) * (1 - prod_k (x_k^2 - (d-1)^2)/(x_k^2 - 1))`
/// * `d = 0, 2`: `rb/2n + K * sum_k 1/(1 - x_k^2)`
///
/// with `K = p b (e + b/2 - 1)/(2n)`. When `x_r = 1` (only possible for
/// `rho_r = 1/2`, where `K = 0`) the identity behind the closed form counts the
/// surviving `B(m, r)`, which is added back.
pub fn coeff_c_closed<F: Scalar>(case: &CaseSpec, m: &KType) -> Result<F> {
    check_rank(case, m)?;
    let r = case.rank();
    let xs: Vec<F> = shifted::<F>(case, m)
        .into_iter()
        .map(|y| F::from_int(2) * y)
        .collect();
    let base = lift::<F>(int(case.r as i64 * case.b as i64) / int(2 * case.n as i64));
    let k_coeff = case.p.clone() * case.b_q() * (case.e_q() + rat(case.b as i64, 2) - int(1))
        / int(2 * case.n as i64);
    let at_boundary = xs[r - 1] == F::one();

    let mut c = base;
    if !k_coeff.is_zero() {
        if at_boundary {
            return Err(Error::Unsupported(format!(
                "closed form for C{m} at 2m_r + 2rho_r = 1 with nonzero correction for {case}"
            )));
        }
        let kq = lift::<F>(k_coeff);
        if case.d == 0 || case.d == 2 {
            let mut sum = F::zero();
            for x in &xs {
                sum = sum + checked_div(F::one(), F::one() - x.clone() * x.clone(), "closed C")?;
            }
            c = c + kq * sum;
        } else {
            let dm1 = F::from_int(case.d as i64 - 1);
            let mut prod = F::one();
            for x in &xs {
                let x2 = x.clone() * x.clone();
                prod = prod * checked_div(x2.clone() - dm1.clone() * dm1.clone(), x2 - F::one(), "closed C")?;
            }
            let dd = F::from_int(case.d as i64 * (case.d as i64 - 2));
            c = c - checked_div(kq, dd, "closed C")? * (F::one() - prod);
        }
    }
    if at_boundary {
        c = c + b_formula::<F>(case, m, r)?;
    }
    Ok(c)
}

/// Where `C(m)` vanishes, family by family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroLocus {
    /// Only at `m = 0` (type-A families and `e6(-26)`).
    Origin,
    /// Exactly on `m_2 = 0` (the two rank-two `e6` cases).
    SecondVanishes,
    /// Exactly on `m_r = 0` (the `so` families).
    LastVanishes,
}

impl ZeroLocus {
    pub fn contains(&self, m: &KType) -> bool {
        match self {
            ZeroLocus::Origin => m.is_zero(),
            ZeroLocus::SecondVanishes => m.get(2) == 0,
            ZeroLocus::LastVanishes => m.get(m.rank()) == 0,
        }
    }
}

pub fn c_zero_locus(case: &CaseSpec) -> ZeroLocus {
    match case.family {
        Family::SlReal { .. } | Family::SlComplex { .. } | Family::SlQuaternion { .. } | Family::E6Minus26 => {
            ZeroLocus::Origin
        }
        Family::E6Split | Family::E6Complex => ZeroLocus::SecondVanishes,
        Family::SoSplit { .. } | Family::SoComplex { .. } => ZeroLocus::LastVanishes,
    }
}

fn check_rank(case: &CaseSpec, m: &KType) -> Result<()> {
    if m.rank() != case.rank() {
        return Err(Error::RankMismatch(m.to_string(), m.rank(), case.rank()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktype::enumerate_box;
    use crate::root_data::{make_case, representative_cases};
    use crate::scalar::Rational;
    use approx::assert_relative_eq;

    fn km(v: &[u32]) -> KType {
        KType::new(v.to_vec()).unwrap()
    }

    /// Independent evaluation in the doubled variables `x_k = 2(m_k + rho_k)`,
    /// grouping each pair of linear factors as a difference of squares.
    fn oracle_ab(case: &CaseSpec, m: &KType, k: usize, upper: bool) -> Rational {
        let r = case.rank();
        let rho: Vec<Rational> = (1..=r)
            .map(|j| (case.p.clone() - int(1)) / int(2) - rat((j as i64 - 1) * case.d as i64, 2))
            .collect();
        let x: Vec<Rational> = (0..r).map(|j| int(2) * (int(m.entries()[j] as i64) + rho[j].clone())).collect();
        let alpha = rat(case.b as i64, 2) + int(1);
        let beta = rat(case.b as i64, 2) + int(case.e as i64);
        let gamma = int(case.d as i64);
        let xk = x[k - 1].clone();
        let sign = if upper { int(1) } else { int(-1) };
        let sx = sign.clone() * xk.clone();
        let mut val = (sx.clone() + alpha) / sx.clone();
        // (x + beta)/(x + 1) with the removable 0/0 at x = 1, beta = 1 for the lower sign
        let num = sx.clone() + beta;
        let den = sx.clone() + int(1);
        val *= if num.is_zero() && den.is_zero() { int(1) } else { num / den };
        for (j, xj) in x.iter().enumerate() {
            if j + 1 != k {
                let g = sx.clone() + gamma.clone();
                val *= (g.clone() * g - xj.clone() * xj.clone()) / (xk.clone() * xk.clone() - xj.clone() * xj.clone());
            }
        }
        case.p.clone() / int(2 * case.n as i64) * val
    }

    #[test]
    fn a_and_b_match_independent_evaluation() {
        let mut cases = representative_cases();
        cases.push(make_case(Family::SlReal { r: 2, s: 4 }).unwrap());
        cases.push(make_case(Family::SlReal { r: 1, s: 3 }).unwrap());
        for case in cases {
            for m in enumerate_box(&case, 5).members() {
                for k in 1..=case.rank() {
                    let a: Rational = a_formula(&case, m, k).unwrap();
                    assert_eq!(a, oracle_ab(&case, m, k, true), "A {case} {m} {k}");
                    let b: Rational = b_formula(&case, m, k).unwrap();
                    let want = if m.lowered(k).is_some() || is_cancellation_point(&case, m, k) {
                        oracle_ab(&case, m, k, false)
                    } else {
                        Rational::zero()
                    };
                    assert_eq!(b, want, "B {case} {m} {k}");
                }
            }
        }
    }

    #[test]
    fn rank_one_e6_26() {
        let case = make_case(Family::E6Minus26).unwrap();
        let a0: Rational = coeff_a(&case, &km(&[0]), 1).unwrap();
        assert_eq!(a0, int(1));
        let b0: Rational = coeff_b(&case, &km(&[0]), 1).unwrap();
        assert!(b0.is_zero());
        for mm in 0..=12u32 {
            let m = km(&[mm]);
            let x = mm as i64;
            let want = rat(x * (x + 11), 4 * (x + 5) * (x + 6));
            assert_eq!(coeff_c_direct::<Rational>(&case, &m).unwrap(), want);
            assert_eq!(coeff_c_closed::<Rational>(&case, &m).unwrap(), want);
        }
    }

    #[test]
    fn so_split_values() {
        for r in 2..=5u32 {
            let case = make_case(Family::SoSplit { r }).unwrap();
            let third = rat(1, 2 * r as i64 + 1);
            for m in enumerate_box(&case, 4).members() {
                let rr = r as usize;
                let c: Rational = coeff_c_direct(&case, m).unwrap();
                if m.get(rr) == 0 {
                    let b: Rational = coeff_b(&case, m, rr).unwrap();
                    assert_eq!(b, -third.clone());
                    assert!(c.is_zero());
                } else {
                    assert_eq!(c, third);
                }
            }
        }
    }

    #[test]
    fn e6_displayed_rational_functions() {
        let e66 = make_case(Family::E6Split).unwrap();
        let e6c = make_case(Family::E6Complex).unwrap();
        assert_eq!(coeff_c_direct::<Rational>(&e66, &km(&[1, 1])).unwrap(), rat(3, 16));
        for m in enumerate_box(&e66, 8).members() {
            let (a, b) = (m.get(1) as i64, m.get(2) as i64);
            let want6 = rat(
                b * (2 * a + 3) * (2 * a + 7) * (b + 2),
                4 * (a + 2) * (a + 3) * (2 * b + 1) * (2 * b + 3),
            );
            assert_eq!(coeff_c_direct::<Rational>(&e66, m).unwrap(), want6, "{m}");
            let wantc = rat(
                b * (a + 3) * (a + 8) * (b + 5),
                4 * (a + 5) * (a + 6) * (b + 2) * (b + 3),
            );
            assert_eq!(coeff_c_closed::<Rational>(&e6c, m).unwrap(), wantc, "{m}");
        }
    }

    #[test]
    fn so_complex_product_form() {
        for r in 2..=4u32 {
            let case = make_case(Family::SoComplex { r }).unwrap();
            for m in enumerate_box(&case, 4).members() {
                let mut want = rat(1, 2 * r as i64 + 1);
                for j in 1..=r as i64 {
                    let mj = m.get(j as usize) as i64;
                    let t = 2 * r as i64 - 2 * j;
                    want *= rat((mj + t) * (mj + t + 3), (mj + t + 1) * (mj + t + 2));
                }
                assert_eq!(coeff_c_direct::<Rational>(&case, m).unwrap(), want);
            }
        }
    }

    #[test]
    fn closed_equals_direct_and_locus() {
        let mut cases = representative_cases();
        for (r, s) in [(1, 3), (2, 4), (3, 5), (3, 4)] {
            cases.push(make_case(Family::SlReal { r, s }).unwrap());
            cases.push(make_case(Family::SlComplex { r, s }).unwrap());
        }
        for case in cases {
            let locus = c_zero_locus(&case);
            for m in enumerate_box(&case, 5).members() {
                let direct: Rational = coeff_c_direct(&case, m).unwrap();
                let closed: Rational = coeff_c_closed(&case, m).unwrap();
                assert_eq!(direct, closed, "{case} {m}");
                assert_eq!(locus.contains(m), direct.is_zero(), "{case} {m}");
            }
        }
    }

    #[test]
    fn a_is_positive_on_dominant_shifts() {
        for case in representative_cases() {
            for m in enumerate_box(&case, 4).members() {
                let t: CoeffTriple<Rational> = coeff_triple(&case, m).unwrap();
                for k in 1..=case.rank() {
                    if m.raised(k).is_some() {
                        assert!(t.a[k - 1] > Rational::zero());
                    } else {
                        assert!(t.a[k - 1].is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn float_evaluation_tracks_exact() {
        for case in representative_cases() {
            for m in enumerate_box(&case, 3).members() {
                let exact: Rational = coeff_c_closed(&case, m).unwrap();
                let approx: f64 = coeff_c_closed(&case, m).unwrap();
                let direct: f64 = coeff_c_direct(&case, m).unwrap();
                assert_relative_eq!(approx, f64::from_rational(&exact), epsilon = 1e-12, max_relative = 1e-10);
                assert_relative_eq!(direct, approx, epsilon = 1e-12, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn zero_locus_examples() {
        let slh = make_case(Family::SlQuaternion { r: 2, s: 3 }).unwrap();
        assert!(!c_zero_locus(&slh).contains(&km(&[1, 0])));
        let e66 = make_case(Family::E6Split).unwrap();
        assert!(c_zero_locus(&e66).contains(&km(&[5, 0])));
        let soc = make_case(Family::SoComplex { r: 2 }).unwrap();
        assert!(!c_zero_locus(&soc).contains(&km(&[3, 3])));
    }

    #[test]
    fn rank_mismatch_and_index_errors() {
        let e66 = make_case(Family::E6Split).unwrap();
        assert!(coeff_a::<Rational>(&e66, &km(&[1]), 1).is_err());
        assert!(matches!(
            coeff_b::<Rational>(&e66, &km(&[1, 0]), 3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }
}
