//! The rational-function identity behind the closed form of `C(m)`, checked
//! by brute force, and the Lagrange vanishing sums it rests on.
//!
//! ```text
//! a(x,k) = (x_k+alpha)(x_k+beta)/(x_k(x_k+1)) * prod_{j!=k} ((x_k+gamma)^2 - x_j^2)/(x_k^2 - x_j^2)
//! b(x,k) = (x_k-alpha)(x_k-beta)/(x_k(x_k-1)) * prod_{j!=k} ((x_k-gamma)^2 - x_j^2)/(x_k^2 - x_j^2)
//! d(x)   = sum_k a(x,k) + b(x,k)
//! ```

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ktype::KType;
use crate::root_data::{rho_vector, CaseSpec};
use crate::scalar::{int, rat, serde_ratio, serde_ratio_vec, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityInstance<F> {
    pub x: Vec<F>,
    pub alpha: F,
    pub beta: F,
    pub gamma: F,
}

/// Exact instance with `"num/den"` serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalInstance {
    #[serde(with = "serde_ratio_vec")]
    pub x: Vec<Rational>,
    #[serde(with = "serde_ratio")]
    pub alpha: Rational,
    #[serde(with = "serde_ratio")]
    pub beta: Rational,
    #[serde(with = "serde_ratio")]
    pub gamma: Rational,
}

impl From<RationalInstance> for IdentityInstance<Rational> {
    fn from(i: RationalInstance) -> Self {
        IdentityInstance { x: i.x, alpha: i.alpha, beta: i.beta, gamma: i.gamma }
    }
}

impl From<IdentityInstance<Rational>> for RationalInstance {
    fn from(i: IdentityInstance<Rational>) -> Self {
        RationalInstance { x: i.x, alpha: i.alpha, beta: i.beta, gamma: i.gamma }
    }
}

impl<F: Scalar> IdentityInstance<F> {
    pub fn rank(&self) -> usize {
        self.x.len()
    }

    /// `x_j != x_k` and `x_j != +-1`.
    pub fn validate(&self) -> Result<()> {
        for (k, xk) in self.x.iter().enumerate() {
            if *xk == F::one() || *xk == F::zero() - F::one() {
                return Err(Error::Degenerate(format!("x_{} = {xk:?} is +-1", k + 1)));
            }
            if self.x[..k].contains(xk) {
                return Err(Error::Degenerate(format!("x_{} = {xk:?} repeats", k + 1)));
            }
        }
        Ok(())
    }

    fn term(&self, k: usize, sign: F) -> Result<F> {
        let xk = self.x[k].clone();
        let sx = sign.clone() * xk.clone();
        let num = (sx.clone() + self.alpha.clone()) * (sx.clone() + self.beta.clone());
        let den = xk.clone() * (xk.clone() + sign.clone());
        if den.is_zero() {
            return Err(Error::Degenerate(format!("x_{} = {xk:?} kills x(x +- 1)", k + 1)));
        }
        let mut acc = num / den;
        for (j, xj) in self.x.iter().enumerate() {
            if j == k {
                continue;
            }
            let shifted = xk.clone() + sign.clone() * self.gamma.clone();
            let den = xk.clone() * xk.clone() - xj.clone() * xj.clone();
            if den.is_zero() {
                return Err(Error::Degenerate(format!("x_{} = +-x_{}", k + 1, j + 1)));
            }
            acc = acc * (shifted.clone() * shifted - xj.clone() * xj.clone()) / den;
        }
        Ok(acc)
    }

    pub fn a(&self, k: usize) -> Result<F> {
        self.term(k, F::one())
    }

    pub fn b(&self, k: usize) -> Result<F> {
        self.term(k, F::zero() - F::one())
    }
}

/// Direct summation of `a(x,k) + b(x,k)`.
pub fn d_bruteforce<F: Scalar>(inst: &IdentityInstance<F>) -> Result<F> {
    let mut acc = F::zero();
    for k in 0..inst.rank() {
        acc = acc + inst.a(k)? + inst.b(k)?;
    }
    Ok(acc)
}

/// Whether `gamma` falls in the `{0, 2}` branch.
pub fn is_special_gamma<F: Scalar>(gamma: &F) -> bool {
    gamma.is_zero() || *gamma == F::from_int(2)
}

/// ```text
/// gamma != 0,2: 2r + 2(1-alpha)(1-beta)/(gamma(gamma-2)) * (1 - prod_k ((gamma-1)^2 - x_k^2)/(1 - x_k^2))
/// gamma  = 0,2: 2r - 2(1-alpha)(1-beta) * sum_k 1/(1 - x_k^2)
/// ```
pub fn d_closed<F: Scalar>(inst: &IdentityInstance<F>) -> Result<F> {
    inst.validate()?;
    let one = F::one();
    let two = F::from_int(2);
    let r2 = F::from_int(2 * inst.rank() as i64);
    let weight = two.clone() * (one.clone() - inst.alpha.clone()) * (one.clone() - inst.beta.clone());
    if is_special_gamma(&inst.gamma) {
        let mut sum = F::zero();
        for x in &inst.x {
            sum = sum + one.clone() / (one.clone() - x.clone() * x.clone());
        }
        Ok(r2 - weight * sum)
    } else {
        let g1 = inst.gamma.clone() - one.clone();
        let mut prod = one.clone();
        for x in &inst.x {
            let x2 = x.clone() * x.clone();
            prod = prod * (g1.clone() * g1.clone() - x2.clone()) / (one.clone() - x2);
        }
        let denom = inst.gamma.clone() * (inst.gamma.clone() - two);
        Ok(r2 + weight / denom * (one - prod))
    }
}

/// `sum_k y_k^m / prod_{j!=k} (y_k - y_j)`; zero for `m < N - 1`, one for
/// `m = N - 1`.
pub fn lagrange_vanishing<F: Scalar>(y: &[F], m: u32) -> Result<F> {
    for (k, yk) in y.iter().enumerate() {
        if y[..k].contains(yk) {
            return Err(Error::Degenerate(format!("y_{} = {yk:?} repeats", k + 1)));
        }
    }
    let mut acc = F::zero();
    for (k, yk) in y.iter().enumerate() {
        let mut pow = F::one();
        for _ in 0..m {
            pow = pow * yk.clone();
        }
        let mut den = F::one();
        for (j, yj) in y.iter().enumerate() {
            if j != k {
                den = den * (yk.clone() - yj.clone());
            }
        }
        acc = acc + pow / den;
    }
    Ok(acc)
}

/// The substitution `x_k = 2(m_k + rho_k)`, `alpha = b/2 + 1`,
/// `beta = b/2 + e`, `gamma = d` tying `d(x)` to the coefficients.
pub fn instance_for(case: &CaseSpec, m: &KType) -> IdentityInstance<Rational> {
    let x = rho_vector(case)
        .into_iter()
        .zip(m.entries())
        .map(|(rk, &mk)| int(2) * (int(mk as i64) + rk))
        .collect();
    IdentityInstance {
        x,
        alpha: rat(case.b as i64, 2) + int(1),
        beta: rat(case.b as i64, 2) + int(case.e as i64),
        gamma: int(case.d as i64),
    }
}

/// `1 - (p/2n) d(x)` under [`instance_for`]; equals `C(m)` when
/// `2m_r + 2rho_r > 1`.
pub fn c_via_identity(case: &CaseSpec, m: &KType) -> Result<Rational> {
    let inst = instance_for(case, m);
    Ok(Rational::one() - case.p.clone() / int(2 * case.n as i64) * d_bruteforce(&inst)?)
}

fn random_rational<R: Rng>(rng: &mut R, span: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=max_den))
}

/// Random exact instance of rank `r` satisfying every hypothesis of both
/// sides (`x` distinct, `x_k != 0, +-1`, `x_k != -x_j`); `special` selects the
/// `gamma in {0, 2}` branch.
pub fn random_instance<R: Rng>(rng: &mut R, r: usize, special: bool) -> IdentityInstance<Rational> {
    let mut x: Vec<Rational> = Vec::with_capacity(r);
    while x.len() < r {
        let c = random_rational(rng, 30, 7);
        let bad = c.is_zero() || c == int(1) || c == int(-1) || x.iter().any(|y| *y == c || *y == -c.clone());
        if !bad {
            x.push(c);
        }
    }
    let gamma = if special {
        int(if rng.gen_bool(0.5) { 0 } else { 2 })
    } else {
        loop {
            let g = random_rational(rng, 12, 4);
            if !is_special_gamma(&g) {
                break g;
            }
        }
    };
    IdentityInstance { x, alpha: random_rational(rng, 12, 5), beta: random_rational(rng, 12, 5), gamma }
}

/// `n` pairwise distinct nonzero rationals.
pub fn random_distinct<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    let mut y: Vec<Rational> = Vec::with_capacity(n);
    while y.len() < n {
        let c = random_rational(rng, 40, 9);
        if !c.is_zero() && !y.contains(&c) {
            y.push(c);
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::coeff_c_direct;
    use crate::ktype::enumerate_box;
    use crate::root_data::{has_half_rho_r, make_case, representative_cases, Family};
    use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn lagrange_examples() {
        assert!(lagrange_vanishing(&q(&[1, 2, 3]), 0).unwrap().is_zero());
        assert_eq!(lagrange_vanishing(&q(&[1, 2, 3]), 2).unwrap(), int(1));
        assert!(lagrange_vanishing(&q(&[2, 7]), 0).unwrap().is_zero());
        assert!(lagrange_vanishing(&q(&[2, 2]), 0).is_err());
    }

    #[test]
    fn rank_one_is_empty_product() {
        let inst = IdentityInstance { x: q(&[3]), alpha: int(2), beta: int(4), gamma: int(5) };
        let a = rat(5 * 7, 3 * 4);
        let b = rat(-1, 6);
        assert_eq!(d_bruteforce(&inst).unwrap(), a + b);
        assert_eq!(d_bruteforce(&inst).unwrap(), d_closed(&inst).unwrap());
    }

    #[test]
    fn fixed_instances() {
        let inst = IdentityInstance { x: q(&[3, 5]), alpha: int(2), beta: int(4), gamma: int(3) };
        assert_eq!(d_bruteforce(&inst).unwrap(), d_closed(&inst).unwrap());
        let inst = IdentityInstance { x: q(&[3, 5, 8]), alpha: int(1), beta: int(1), gamma: rat(7, 3) };
        assert_eq!(d_bruteforce(&inst).unwrap(), int(6));
        let inst = IdentityInstance { x: q(&[3, 4]), alpha: int(2), beta: int(3), gamma: int(1) };
        assert_eq!(d_bruteforce(&inst).unwrap(), d_closed(&inst).unwrap());
    }

    #[test]
    fn degenerate_instances() {
        let inst = IdentityInstance { x: q(&[3, -3]), alpha: int(2), beta: int(4), gamma: int(3) };
        assert!(matches!(d_bruteforce(&inst), Err(Error::Degenerate(_))));
        let inst = IdentityInstance { x: q(&[1, 3]), alpha: int(2), beta: int(4), gamma: int(3) };
        assert!(d_closed(&inst).is_err());
        assert!(d_bruteforce(&inst).is_err());
    }

    #[test]
    fn seeded_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for special in [false, true] {
            for _ in 0..200 {
                let r = rng.gen_range(1..=5);
                let inst = random_instance(&mut rng, r, special);
                assert_eq!(is_special_gamma(&inst.gamma), special);
                assert_eq!(d_bruteforce(&inst).unwrap(), d_closed(&inst).unwrap(), "{inst:?}");
            }
        }
    }

    #[test]
    fn float_instances_track_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let inst = random_instance(&mut rng, 3, false);
            let exact = d_closed(&inst).unwrap();
            let f = IdentityInstance::<f64> {
                x: inst.x.iter().map(f64::from_rational).collect(),
                alpha: f64::from_rational(&inst.alpha),
                beta: f64::from_rational(&inst.beta),
                gamma: f64::from_rational(&inst.gamma),
            };
            let brute = d_bruteforce(&f).unwrap();
            let want = f64::from_rational(&exact);
            assert!((brute - want).abs() <= 1e-6 * (1.0 + want.abs()), "{brute} vs {want}");
        }
    }

    #[test]
    fn coefficient_consistency() {
        let mut cases = representative_cases();
        cases.push(make_case(Family::SlReal { r: 2, s: 4 }).unwrap());
        for case in cases {
            for m in enumerate_box(&case, 4).members() {
                if has_half_rho_r(&case) && m.get(case.rank()) == 0 {
                    continue;
                }
                assert_eq!(c_via_identity(&case, m).unwrap(), coeff_c_direct::<Rational>(&case, m).unwrap(), "{case} {m}");
            }
        }
    }

    #[test]
    fn instance_json_round_trip() {
        let inst = IdentityInstance { x: vec![rat(3, 2), int(5)], alpha: int(2), beta: rat(-1, 3), gamma: int(0) };
        let json = serde_json::to_string(&RationalInstance::from(inst.clone())).unwrap();
        assert!(json.contains("\"3/2\""));
        let back: RationalInstance = serde_json::from_str(&json).unwrap();
        assert_eq!(IdentityInstance::from(back), inst);
    }

    proptest! {
        #[test]
        fn lagrange_vanishes_below_degree(seed in any::<u64>(), n in 2usize..=8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let y = random_distinct(&mut rng, n);
            for m in 0..(n as u32 - 1) {
                prop_assert!(lagrange_vanishing(&y, m).unwrap().is_zero());
            }
            prop_assert_eq!(lagrange_vanishing(&y, n as u32 - 1).unwrap(), int(1));
        }
    }
}
