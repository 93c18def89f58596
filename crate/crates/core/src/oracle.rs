//! Brute-force ground truth: minimum distance, MDS checks, the stacked-rank
//! hull formula and the exhaustive census of small codes.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::hull::{hull_report, LinearCode};
use crate::linalg::Matrix;

pub const ENV_MAX_CODEWORDS: &str = "GRS_HULL_MAX_CODEWORDS";
pub const ENV_MAX_MINOR_K: &str = "GRS_HULL_MAX_MINOR_K";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleBudget {
    /// Cap on `q^k` for exhaustive enumeration.
    pub max_codewords: u64,
    /// Cap on the minor size for determinant-based MDS checks.
    pub max_minor_k: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_codewords: 1_000_000,
            max_minor_k: 5,
        }
    }
}

impl OracleBudget {
    pub fn new(max_codewords: u64, max_minor_k: usize) -> Result<OracleBudget> {
        if max_codewords == 0 || max_minor_k == 0 {
            return Err(Error::OutOfRange("oracle budgets must be positive".into()));
        }
        Ok(OracleBudget {
            max_codewords,
            max_minor_k,
        })
    }

    /// Defaults overridden by `GRS_HULL_MAX_CODEWORDS` / `GRS_HULL_MAX_MINOR_K`.
    pub fn from_env() -> Result<OracleBudget> {
        let mut b = OracleBudget::default();
        if let Ok(s) = std::env::var(ENV_MAX_CODEWORDS) {
            b.max_codewords = s.parse().map_err(|_| {
                Error::OutOfRange(format!("{ENV_MAX_CODEWORDS}={s} is not an integer"))
            })?;
        }
        if let Ok(s) = std::env::var(ENV_MAX_MINOR_K) {
            b.max_minor_k = s.parse().map_err(|_| {
                Error::OutOfRange(format!("{ENV_MAX_MINOR_K}={s} is not an integer"))
            })?;
        }
        OracleBudget::new(b.max_codewords, b.max_minor_k)
    }

    fn enumerable(&self, q: u32, k: usize) -> bool {
        (q as u64)
            .checked_pow(k as u32)
            .is_some_and(|count| count <= self.max_codewords)
    }
}

/// Exact minimum Hamming weight over all nonzero codewords.
///
/// Weights are scale invariant, so only messages whose first nonzero entry
/// is 1 are visited.
pub fn min_distance(code: &LinearCode, budget: &OracleBudget) -> Result<usize> {
    let f = code.field();
    let (n, k, q) = (code.n(), code.k(), f.q());
    if !budget.enumerable(q, k) {
        return Err(Error::BudgetExceeded(format!(
            "{q}^{k} codewords exceed {}",
            budget.max_codewords
        )));
    }
    let g = code.generator();
    // multiples[j][c] = c * row_j, c in encoding order.
    let multiples: Vec<Vec<Vec<Elem>>> = (0..k)
        .map(|j| {
            f.elements()
                .map(|c| g.row(j).iter().map(|&x| f.mul(c, x)).collect())
                .collect()
        })
        .collect();
    // Split work on (leading position, value of the next digit).
    let mut jobs = Vec::new();
    for lead in 0..k {
        if lead + 1 < k {
            jobs.extend(f.elements().map(|c| (lead, Some(c))));
        } else {
            jobs.push((lead, None));
        }
    }
    let best = jobs
        .par_iter()
        .map(|&(lead, next)| {
            let mut base = multiples[lead][1].clone();
            let mut free_from = lead + 1;
            if let Some(c) = next {
                add_into(f, &mut base, &multiples[lead + 1][c.0 as usize]);
                free_from = lead + 2;
            }
            min_weight_over(f, &base, &multiples[free_from..], n)
        })
        .min()
        .expect("k >= 1");
    Ok(best)
}

fn add_into(f: &Field, acc: &mut [Elem], v: &[Elem]) {
    for (a, &b) in acc.iter_mut().zip(v) {
        *a = f.add(*a, b);
    }
}

fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|e| !e.is_zero()).count()
}

/// Minimum weight of `base + sum_j multiples[j][x_j]` over all digit tuples.
fn min_weight_over(f: &Field, base: &[Elem], multiples: &[Vec<Vec<Elem>>], n: usize) -> usize {
    let q = f.q() as usize;
    let depth = multiples.len();
    if depth == 0 {
        return weight(base);
    }
    // delta[j][x] moves digit j from x to x + 1 (mod q).
    let delta: Vec<Vec<Vec<Elem>>> = multiples
        .iter()
        .map(|m| {
            (0..q)
                .map(|x| {
                    let next = &m[(x + 1) % q];
                    (0..n).map(|i| f.sub(next[i], m[x][i])).collect()
                })
                .collect()
        })
        .collect();
    let mut cw = base.to_vec();
    let mut digits = vec![0usize; depth];
    let mut best = weight(&cw);
    loop {
        let mut j = depth;
        loop {
            if j == 0 {
                return best;
            }
            j -= 1;
            let x = digits[j];
            add_into(f, &mut cw, &delta[j][x]);
            digits[j] = (x + 1) % q;
            if digits[j] != 0 {
                break;
            }
        }
        best = best.min(weight(&cw));
    }
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Every maximal minor of a `r x n` full-rank matrix is nonzero.
pub fn all_minors_nonzero(m: &Matrix) -> bool {
    let r = m.rows();
    let cols: Vec<Vec<usize>> = combinations(m.cols(), r).collect();
    cols.par_iter()
        .all(|c| !m.select_columns(c).determinant().expect("square").is_zero())
}

/// `d = n - k + 1`, decided by enumeration when affordable, otherwise by
/// the minors of the generator or of the dual generator.
pub fn is_mds(code: &LinearCode, budget: &OracleBudget) -> Result<bool> {
    let (n, k) = (code.n(), code.k());
    if k == n {
        return Ok(true);
    }
    if budget.enumerable(code.field().q(), k) {
        return Ok(min_distance(code, budget)? == n - k + 1);
    }
    if k <= budget.max_minor_k {
        return Ok(all_minors_nonzero(code.generator()));
    }
    if n - k <= budget.max_minor_k {
        return Ok(all_minors_nonzero(&code.dual_generator()));
    }
    Err(Error::BudgetExceeded(format!(
        "[{n}, {k}] over GF({}) exceeds both enumeration and minor budgets",
        code.field().q()
    )))
}

/// `n - rank([G; H])`, i.e. `dim C + dim C^perp - dim(C + C^perp)`.
pub fn hull_dim_oracle(code: &LinearCode) -> usize {
    let stacked = code
        .generator()
        .stack(&code.dual_generator())
        .expect("same field and width");
    code.n() - stacked.rank()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    /// Number of distinct `k`-dimensional subspaces visited.
    pub codes: usize,
    /// How many of them meet the Singleton bound.
    pub mds_codes: usize,
    /// Hull dimension histogram over the MDS codes.
    pub hull_dims: BTreeMap<usize, usize>,
}

/// Enumerates every `[n, k]` code over `field` (as canonical RREF bases of
/// all full-rank `k x n` matrices) and tallies hull dimensions of the MDS ones.
pub fn code_census(field: &Field, n: usize, k: usize, budget: &OracleBudget) -> Result<Census> {
    let q = field.q() as u64;
    let total = q
        .checked_pow((n * k) as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| Error::BudgetExceeded(format!("{q}^{} generator matrices", n * k)))?;
    let mut bases: BTreeSet<Vec<u32>> = BTreeSet::new();
    for idx in 0..total {
        let mut x = idx;
        let entries: Vec<Elem> = (0..n * k)
            .map(|_| {
                let e = Elem((x % q) as u32);
                x /= q;
                e
            })
            .collect();
        let rows = entries.chunks(n).map(|r| r.to_vec()).collect();
        let m = Matrix::from_rows(field, n, rows)?;
        let basis = m.row_space_basis();
        if basis.rows() == k {
            bases.insert(basis.row_vecs().concat().iter().map(|e| e.0).collect());
        }
    }
    let mut census = Census {
        q: field.q(),
        n,
        k,
        codes: bases.len(),
        mds_codes: 0,
        hull_dims: BTreeMap::new(),
    };
    for b in &bases {
        let rows: Vec<Vec<Elem>> = b
            .chunks(n)
            .map(|r| r.iter().map(|&e| Elem(e)).collect())
            .collect();
        let code = LinearCode::new(Matrix::from_rows(field, n, rows)?)?;
        let d = min_distance(&code, budget)?;
        debug_assert!(d + k <= n + 1, "Singleton bound");
        if d == n - k + 1 {
            census.mds_codes += 1;
            *census
                .hull_dims
                .entry(hull_report(&code).hull_dim)
                .or_default() += 1;
        }
    }
    Ok(census)
}

/// Hull-dimension census of all ternary `[4, 2, 3]` codes.
pub fn ternary_4_2_census() -> Census {
    let f = Field::new(3, 1, None).expect("GF(3)");
    code_census(&f, 4, 2, &OracleBudget::default()).expect("within budget")
}
