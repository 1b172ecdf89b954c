//! Runs the brute-force oracles against the closed forms and tallies the
//! outcome.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeffs::{c_zero_locus, coeff_c_closed, coeff_c_direct};
use crate::error::Result;
use crate::identity::{d_bruteforce, d_closed, lagrange_vanishing, random_distinct, random_instance};
use crate::ktype::enumerate_box;
use crate::root_data::catalogue;
use crate::scalar::{format_short, int, Rational};
use crate::series::{
    composition_series_closed, default_bound, reducibility_points, series_from_graph, CoeffTable, SpectralParam,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub total: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        CheckResult { name: name.to_string(), total: 0, failed: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

/// Identity trials per branch, Lagrange sums, coefficient routes and the
/// composition oracle on the smallest case of every family.
pub fn run_verification(trials: usize, seed: u64) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    for (name, special) in [("identity, gamma not in {0,2}", false), ("identity, gamma in {0,2}", true)] {
        let mut c = CheckResult::new(name);
        for _ in 0..trials {
            let r = rng.gen_range(1..=5);
            let inst = random_instance(&mut rng, r, special);
            let ok = matches!((d_bruteforce(&inst), d_closed(&inst)), (Ok(a), Ok(b)) if a == b);
            c.record(ok, || format!("{inst:?}"));
        }
        checks.push(c);
    }

    let mut c = CheckResult::new("lagrange vanishing");
    for t in 0..trials {
        let n = 2 + t % 7;
        let y = random_distinct(&mut rng, n);
        for m in 0..n as u32 - 1 {
            let ok = lagrange_vanishing(&y, m)?.is_zero();
            c.record(ok, || format!("N = {n}, m = {m}"));
        }
    }
    checks.push(c);

    let mut coeff = CheckResult::new("C closed = C direct, zero locus");
    let mut series = CheckResult::new("composition series: thresholds = condensation");
    for case in catalogue() {
        let locus = c_zero_locus(&case);
        for m in enumerate_box(&case, 4).members() {
            let direct: Rational = coeff_c_direct(&case, m)?;
            let closed: Rational = coeff_c_closed(&case, m)?;
            coeff.record(direct == closed && locus.contains(m) == direct.is_zero(), || format!("{case} {m}"));
        }
        let radius = case.p.clone() / int(2) + int(1);
        let points = reducibility_points(&case, &radius);
        let top = points.iter().map(|q| default_bound(&case, q)).max().unwrap_or(3);
        let table = CoeffTable::new(&case, top)?;
        for q in points {
            let nu = SpectralParam::real(q.clone());
            let graph = crate::series::build_graph_with(&table, &nu, default_bound(&case, &q))?;
            let ok = matches!(
                (series_from_graph(&graph), composition_series_closed(&case, &nu)),
                (Ok(a), Ok(b)) if a == b
            );
            series.record(ok, || format!("{case} nu = {}", format_short(&q)));
        }
    }
    checks.push(coeff);
    checks.push(series);

    Ok(VerifyReport { seed, trials, checks })
}
