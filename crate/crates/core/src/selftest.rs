//! Randomized invariant suites: power sums, GRS duality and the agreement of
//! the two hull-dimension formulas.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::gf::{prime_power, Elem, Field};
use crate::grs::{EvaluationSet, GrsSpec};
use crate::hull::{hull_report, verify_power_sums, LinearCode};
use crate::linalg::Matrix;
use crate::oracle::hull_dim_oracle;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestOptions {
    pub seed: u64,
    /// Random cases per field and suite.
    pub trials: usize,
    pub fields: Vec<u32>,
    /// Drops the sign of the extended dual's last coordinate, so the duality
    /// suite must report failures in odd characteristic.
    pub inject_fault: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            seed: 0x5eed,
            trials: 20,
            fields: (5..=27).filter(|&q| prime_power(q).is_some()).collect(),
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub fields: Vec<u32>,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

pub fn random_points(f: &Field, n: usize, rng: &mut impl Rng) -> Vec<Elem> {
    sample(rng, f.q() as usize, n)
        .into_iter()
        .map(|i| Elem(i as u32))
        .collect()
}

pub fn random_nonzero(f: &Field, n: usize, rng: &mut impl Rng) -> Vec<Elem> {
    (0..n).map(|_| Elem(rng.gen_range(1..f.q()))).collect()
}

pub fn random_matrix(f: &Field, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| Elem(rng.gen_range(0..f.q()))).collect())
        .collect();
    Matrix::from_rows(f, cols, data).expect("shape")
}

fn power_sum_suite(
    f: &Field,
    opts: &SelftestOptions,
    rng: &mut ChaCha8Rng,
    out: &mut SuiteResult,
) -> Result<()> {
    for _ in 0..opts.trials {
        let n = rng.gen_range(1..=f.q() as usize);
        let e = EvaluationSet::new(f, random_points(f, n, rng))?;
        out.cases += 1;
        if !verify_power_sums(&e) {
            out.failures.push(format!(
                "GF({}): power sums fail on {:?}",
                f.q(),
                enc(e.points())
            ));
        }
    }
    Ok(())
}

/// `GRS_k(a, v)^perp = GRS_{n-k}(a, u/v)` and
/// `GRS_k(a, v, inf)^perp = GRS_{n+1-k}(a, u/v, inf)` with the last
/// coordinate negated.
fn duality_suite(
    f: &Field,
    opts: &SelftestOptions,
    rng: &mut ChaCha8Rng,
    out: &mut SuiteResult,
) -> Result<()> {
    for _ in 0..opts.trials {
        let n = rng.gen_range(2..=f.q().min(12) as usize);
        let e = EvaluationSet::new(f, random_points(f, n, rng))?;
        let v = random_nonzero(f, n, rng);
        let w: Vec<Elem> = e
            .u()
            .iter()
            .zip(&v)
            .map(|(&u, &x)| f.div(u, x))
            .collect::<Result<_>>()?;
        let extended = rng.gen_bool(0.5);
        let k = rng.gen_range(1..=n - usize::from(!extended));
        let code = GrsSpec::new(e.clone(), v.clone(), k, extended)?;
        let dual_k = n + usize::from(extended) - k;
        let mut expected = GrsSpec::new(e, w, dual_k, extended)?.generator_matrix();
        if extended && !opts.inject_fault {
            let last = n;
            for r in 0..dual_k {
                expected.set(r, last, f.neg(expected.get(r, last)));
            }
        }
        out.cases += 1;
        if !code
            .generator_matrix()
            .nullspace()
            .same_row_space(&expected)
        {
            out.failures.push(format!(
                "GF({}): dual mismatch for n = {n}, k = {k}, extended = {extended}, a = {:?}",
                f.q(),
                enc(code.eval().points())
            ));
        }
    }
    Ok(())
}

fn oracle_suite(
    f: &Field,
    opts: &SelftestOptions,
    rng: &mut ChaCha8Rng,
    out: &mut SuiteResult,
) -> Result<()> {
    for _ in 0..opts.trials {
        let n = rng.gen_range(2..=10);
        let k = rng.gen_range(1..n);
        let g = random_matrix(f, k, n, rng).row_space_basis();
        if g.rows() == 0 {
            continue;
        }
        let code = LinearCode::new(g)?;
        let report = hull_report(&code);
        let stacked = hull_dim_oracle(&code);
        out.cases += 1;
        if report.hull_dim != stacked || report.hull_basis.rank() != report.hull_dim {
            out.failures.push(format!(
                "GF({}): gram formula {} vs stacked rank {stacked} on an [{n}, {}] code",
                f.q(),
                report.hull_dim,
                code.k()
            ));
        }
    }
    Ok(())
}

fn enc(x: &[Elem]) -> Vec<u32> {
    x.iter().map(|e| e.0).collect()
}

pub fn run(opts: &SelftestOptions) -> Result<SelftestReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut suites = vec![
        SuiteResult {
            name: "power-sums",
            cases: 0,
            failures: Vec::new(),
        },
        SuiteResult {
            name: "duality",
            cases: 0,
            failures: Vec::new(),
        },
        SuiteResult {
            name: "oracle-equivalence",
            cases: 0,
            failures: Vec::new(),
        },
    ];
    for &q in &opts.fields {
        let f = Field::with_order(q)?;
        power_sum_suite(&f, opts, &mut rng, &mut suites[0])?;
        duality_suite(&f, opts, &mut rng, &mut suites[1])?;
        oracle_suite(&f, opts, &mut rng, &mut suites[2])?;
    }
    Ok(SelftestReport {
        fields: opts.fields.clone(),
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_fields() {
        assert_eq!(
            SelftestOptions::default().fields,
            vec![5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27]
        );
    }

    #[test]
    fn suites_pass() {
        let report = run(&SelftestOptions::default()).unwrap();
        assert!(report.passed(), "{:?}", report.suites);
        assert!(report.suites.iter().all(|s| s.cases > 0));
    }

    #[test]
    fn injected_fault_is_caught() {
        let opts = SelftestOptions {
            inject_fault: true,
            ..SelftestOptions::default()
        };
        let report = run(&opts).unwrap();
        assert!(!report.passed());
        assert!(report.suites[0].passed());
        assert!(!report.suites[1].passed());
    }
}
