//! Hull-dimension reduction: from a self-orthogonal (extended) GRS seed to
//! MDS codes with any prescribed hull dimension, plus the explicit ternary codes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::grs::{EvaluationSet, GrsSpec};
use crate::hull::{certify, Certificate, Classification, LinearCode};
use crate::linalg::{Matrix, Poly};

/// `alpha != 0` and `alpha^2 != 1`.
pub fn is_valid_alpha(f: &Field, alpha: Elem) -> bool {
    f.contains(alpha) && !alpha.is_zero() && f.mul(alpha, alpha) != Elem::ONE
}

/// Smallest-enc element with `alpha != 0` and `alpha^2 != 1`.
pub fn choose_alpha(f: &Field) -> Result<Elem> {
    f.elements()
        .find(|&x| is_valid_alpha(f, x))
        .ok_or(Error::NoAlpha(f.q()))
}

/// Smallest-enc field element outside the evaluation set.
pub fn choose_b(f: &Field, e: &EvaluationSet) -> Result<Elem> {
    f.elements()
        .find(|&x| !e.contains(x))
        .ok_or(Error::NoFreePoint)
}

/// Smallest monic polynomial of the given degree with no root among `points`.
/// Coefficient vectors are ordered as base-q integers, constant term least
/// significant. Degree 0 gives the constant 1.
pub fn rootless_monic(f: &Field, points: &[Elem], degree: usize) -> Option<Poly> {
    let q = f.q() as u64;
    let total = q.checked_pow(degree as u32)?;
    (0..total).find_map(|idx| {
        let mut x = idx;
        let mut coeffs: Vec<Elem> = (0..degree)
            .map(|_| {
                let c = Elem((x % q) as u32);
                x /= q;
                c
            })
            .collect();
        coeffs.push(Elem::ONE);
        let p = Poly::new(f, coeffs);
        points.iter().all(|&a| !p.eval(a).is_zero()).then_some(p)
    })
}

/// A self-orthogonal (extended) GRS code of dimension `m` with a validated
/// certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedCode {
    spec: GrsSpec,
    certificate: Certificate,
}

impl SeedCode {
    /// Certifies `spec` at its own dimension.
    pub fn new(spec: GrsSpec) -> Result<SeedCode> {
        match certify(&spec)? {
            Some(certificate) => Ok(SeedCode { spec, certificate }),
            None => Err(Error::NotSelfOrthogonal(spec.k())),
        }
    }

    /// Accepts an externally supplied certificate after re-checking it.
    pub fn with_certificate(spec: GrsSpec, certificate: Certificate) -> Result<SeedCode> {
        if certificate.m != spec.k() || !certificate.validates(&spec) {
            return Err(Error::NotSelfOrthogonal(spec.k()));
        }
        Ok(SeedCode { spec, certificate })
    }

    pub fn spec(&self) -> &GrsSpec {
        &self.spec
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn m(&self) -> usize {
        self.spec.k()
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn extended(&self) -> bool {
        self.spec.extended()
    }

    pub fn field(&self) -> &Field {
        self.spec.field()
    }

    pub fn classification(&self) -> Classification {
        Classification::from_dims(self.spec.length(), self.m(), self.m())
    }
}

/// How a seed is turned into target codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Plain GRS seed to plain `[n, k]` codes, `0 <= l <= k <= m`.
    Grs,
    /// Extended seed to extended `[n+1, k]` codes, `0 <= l <= k <= m`.
    Egrs,
    /// Plain seed to extended `[n+1, k]` codes, `0 <= l <= k - 1`, `k <= m`.
    /// The top coefficient of every hull codeword is forced to vanish, so
    /// only `s = k - 1 - l` coordinates are scaled and no free point is needed.
    Extend,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Grs => "grs",
            Route::Egrs => "egrs",
            Route::Extend => "extend",
        }
    }

    /// Every `(k, l)` pair the route promises for a seed of dimension `m`.
    pub fn targets(self, m: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for k in 1..=m {
            let top = if self == Route::Extend { k - 1 } else { k };
            out.extend((0..=top).map(|l| (k, l)));
        }
        out
    }

    /// Length of the codes produced from a seed on `n` points.
    pub fn target_length(self, n: usize) -> usize {
        match self {
            Route::Grs => n,
            Route::Egrs | Route::Extend => n + 1,
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Route> {
        match s {
            "grs" => Ok(Route::Grs),
            "egrs" => Ok(Route::Egrs),
            "extend" => Ok(Route::Extend),
            _ => Err(Error::OutOfRange(format!("unknown route {s:?}"))),
        }
    }
}

/// Overrides for the otherwise deterministic choices of `alpha` and `b`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Choices {
    pub alpha: Option<Elem>,
    pub b: Option<Elem>,
}

/// Resolved parameters of one reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionPlan {
    pub route: Route,
    pub k: usize,
    pub l: usize,
    /// Number of leading coordinates scaled by `alpha`.
    pub s: usize,
    pub alpha: Elem,
    /// Root of `pi`, when `pi = (x - b)^{m-k}` with `m > k`.
    pub b: Option<Elem>,
    /// Multiplier polynomial, nonzero on every evaluation point.
    pub pi: Poly,
}

impl ReductionPlan {
    pub fn new(
        seed: &SeedCode,
        route: Route,
        k: usize,
        l: usize,
        choices: Choices,
    ) -> Result<ReductionPlan> {
        let f = seed.field();
        let m = seed.m();
        match (route, seed.extended()) {
            (Route::Grs, true) => {
                return Err(Error::OutOfRange(
                    "the grs route needs a plain GRS seed".into(),
                ))
            }
            (Route::Egrs, false) => {
                return Err(Error::OutOfRange(
                    "the egrs route needs an extended seed".into(),
                ))
            }
            _ => {}
        }
        if k == 0 || k > m {
            return Err(Error::OutOfRange(format!("k = {k} must lie in 1..={m}")));
        }
        if l > k {
            return Err(Error::OutOfRange(format!("l = {l} exceeds k = {k}")));
        }
        let alpha = match choices.alpha {
            Some(a) if is_valid_alpha(f, a) => a,
            Some(a) => {
                return Err(Error::OutOfRange(format!(
                    "alpha = {} must satisfy alpha != 0, alpha^2 != 1",
                    a.0
                )))
            }
            None => choose_alpha(f)?,
        };
        if let Some(b) = choices.b {
            if !f.contains(b) || seed.spec().eval().contains(b) {
                return Err(Error::OutOfRange(format!(
                    "b = {} must avoid every evaluation point",
                    b.0
                )));
            }
        }
        let one = Poly::one(f);
        let plan = |s, b, pi| ReductionPlan {
            route,
            k,
            l,
            s,
            alpha,
            b,
            pi,
        };
        match route {
            Route::Grs => {
                if choices.b.is_some() {
                    return Err(Error::OutOfRange("b is only used by the egrs route".into()));
                }
                Ok(plan(k - l, None, one))
            }
            Route::Extend => {
                if choices.b.is_some() {
                    return Err(Error::OutOfRange("b is only used by the egrs route".into()));
                }
                if l == k {
                    return Err(Error::OutOfRange(format!(
                        "the extend route reaches l <= k - 1, got l = k = {k}"
                    )));
                }
                if seed.extended() && k == m {
                    return Err(Error::OutOfRange(format!(
                        "an extended seed reaches k <= {} on the extend route",
                        m - 1
                    )));
                }
                Ok(plan(k - 1 - l, None, one))
            }
            Route::Egrs => {
                if k == m {
                    if choices.b.is_some() {
                        return Err(Error::OutOfRange("b is unused when k = m".into()));
                    }
                    return Ok(plan(k - l, None, one));
                }
                let e = seed.spec().eval();
                if choices.b.is_some() || e.len() < f.q() as usize {
                    let b = match choices.b {
                        Some(b) => b,
                        None => choose_b(f, e)?,
                    };
                    let pi = Poly::linear_root(f, b).pow(m - k);
                    return Ok(plan(k - l, Some(b), pi));
                }
                // Every point is used, so no (x - b) factor is available.
                if m - k >= 2 {
                    let pi = rootless_monic(f, e.points(), m - k)
                        .ok_or_else(|| Error::Unreachable("no rootless polynomial".into()))?;
                    return Ok(plan(k - l, None, pi));
                }
                if l < k {
                    return Ok(plan(k - 1 - l, None, one));
                }
                Err(Error::Unreachable(format!(
                    "k = {k}, l = {k} with m = {m}: a self-orthogonal extended GRS code on all {} points would need \
                     a monic quadratic taking only nonzero square values",
                    f.q()
                )))
            }
        }
    }

    /// Builds the target code from the seed's points and multipliers.
    pub fn apply(&self, seed: &SeedCode) -> Result<GrsSpec> {
        let f = seed.field();
        let e = seed.spec().eval();
        let v: Vec<Elem> = e
            .points()
            .iter()
            .zip(seed.spec().v())
            .enumerate()
            .map(|(i, (&a, &v))| {
                let w = f.mul(v, self.pi.eval(a));
                if i < self.s {
                    f.mul(self.alpha, w)
                } else {
                    w
                }
            })
            .collect();
        let extended = self.route != Route::Grs;
        GrsSpec::new(e.clone(), v, self.k, extended)
    }
}

/// `GRS_k(a, v')` with `v'_i = alpha v_i` for `i <= k - l`; hull dimension `l`.
pub fn reduce_hull_grs(seed: &SeedCode, k: usize, l: usize) -> Result<GrsSpec> {
    reduce(seed, Route::Grs, k, l, Choices::default())
}

/// `GRS_k(a, v', inf)` with `v'_i = [alpha] v_i pi(a_i)`; hull dimension `l`.
pub fn reduce_hull_egrs(seed: &SeedCode, k: usize, l: usize) -> Result<GrsSpec> {
    reduce(seed, Route::Egrs, k, l, Choices::default())
}

/// `GRS_k(a, v', inf)` from a plain seed; hull dimension `l <= k - 1`.
pub fn reduce_hull_extend(seed: &SeedCode, k: usize, l: usize) -> Result<GrsSpec> {
    reduce(seed, Route::Extend, k, l, Choices::default())
}

pub fn reduce(
    seed: &SeedCode,
    route: Route,
    k: usize,
    l: usize,
    choices: Choices,
) -> Result<GrsSpec> {
    ReductionPlan::new(seed, route, k, l, choices)?.apply(seed)
}

/// The explicit ternary codes not reachable by the reductions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TernaryKind {
    N2k1,
    N3k1,
    N4k1,
    N4k2,
}

impl TernaryKind {
    pub const ALL: [TernaryKind; 4] = [
        TernaryKind::N2k1,
        TernaryKind::N3k1,
        TernaryKind::N4k1,
        TernaryKind::N4k2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TernaryKind::N2k1 => "n2k1",
            TernaryKind::N3k1 => "n3k1",
            TernaryKind::N4k1 => "n4k1",
            TernaryKind::N4k2 => "n4k2",
        }
    }

    /// Number of multipliers the generator matrix takes.
    pub fn multipliers(self) -> usize {
        match self {
            TernaryKind::N2k1 => 2,
            _ => 3,
        }
    }

    pub fn n(self) -> usize {
        match self {
            TernaryKind::N2k1 => 2,
            TernaryKind::N3k1 => 3,
            TernaryKind::N4k1 | TernaryKind::N4k2 => 4,
        }
    }

    pub fn k(self) -> usize {
        match self {
            TernaryKind::N4k2 => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for TernaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TernaryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<TernaryKind> {
        TernaryKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown ternary code {s:?}")))
    }
}

/// Generator matrices `(v1 v2)`, `(v1 v2 v3)`, `(v1 v2 v3 1)` and
/// `[(v1 v2 v3 0), (0 v2 -v3 1)]` over GF(3).
pub fn ternary_codes(field: &Field, kind: TernaryKind, v: &[Elem]) -> Result<LinearCode> {
    if field.q() != 3 {
        return Err(Error::FieldMismatch);
    }
    if v.len() != kind.multipliers() {
        return Err(Error::Dimension(format!(
            "{kind} takes {} multipliers, got {}",
            kind.multipliers(),
            v.len()
        )));
    }
    for (i, &x) in v.iter().enumerate() {
        if !field.contains(x) {
            return Err(Error::InvalidElement { enc: x.0, q: 3 });
        }
        if x.is_zero() {
            return Err(Error::ZeroMultiplier(i));
        }
    }
    let z = Elem::ZERO;
    let rows = match kind {
        TernaryKind::N2k1 | TernaryKind::N3k1 => vec![v.to_vec()],
        TernaryKind::N4k1 => vec![vec![v[0], v[1], v[2], Elem::ONE]],
        TernaryKind::N4k2 => vec![
            vec![v[0], v[1], v[2], z],
            vec![z, v[1], field.neg(v[2]), Elem::ONE],
        ],
    };
    LinearCode::new(Matrix::from_rows(field, kind.n(), rows)?)
}
