//! Explicit self-orthogonal seeds: coset unions of roots of unity (even and
//! odd length), additive subgroups, and the twisted pair of cosets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::construct::{Route, SeedCode};
use crate::error::{Error, Result};
use crate::gf::{gcd, is_prime, prime_power, Elem, Field};
use crate::grs::{EvaluationSet, GrsSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    EvenCosets,
    OddCosets,
    Additive,
    TwistedPair,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::EvenCosets,
        Family::OddCosets,
        Family::Additive,
        Family::TwistedPair,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::EvenCosets => "even_cosets",
            Family::OddCosets => "odd_cosets",
            Family::Additive => "additive",
            Family::TwistedPair => "twisted_pair",
        }
    }

    pub fn variants(self) -> &'static [Variant] {
        match self {
            Family::EvenCosets => &[Variant::I, Variant::Ii, Variant::Iii, Variant::Iv],
            Family::OddCosets => &[Variant::I, Variant::Ii, Variant::Iii],
            Family::Additive => &[Variant::I, Variant::Ii],
            Family::TwistedPair => &[Variant::I],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::InvalidFamily(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    I,
    Ii,
    Iii,
    Iv,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::I => "i",
            Variant::Ii => "ii",
            Variant::Iii => "iii",
            Variant::Iv => "iv",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "i" => Ok(Variant::I),
            "ii" => Ok(Variant::Ii),
            "iii" => Ok(Variant::Iii),
            "iv" => Ok(Variant::Iv),
            _ => Err(Error::InvalidFamily(format!("unknown variant {s:?}"))),
        }
    }
}

/// Parameters of one family member. Unused fields stay `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: Family,
    pub variant: Variant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Elem>,
}

impl FamilyParams {
    fn bare(family: Family, variant: Variant) -> FamilyParams {
        FamilyParams {
            family,
            variant,
            r: None,
            m: None,
            t: None,
            mu: None,
            p: None,
            s: None,
            e: None,
            q: None,
            omega: None,
        }
    }

    pub fn even_cosets(r: u32, m: u32, t: u32, variant: Variant) -> FamilyParams {
        FamilyParams {
            r: Some(r),
            m: Some(m),
            t: Some(t),
            ..FamilyParams::bare(Family::EvenCosets, variant)
        }
    }

    pub fn odd_cosets(r: u32, m: u32, t: u32, variant: Variant) -> FamilyParams {
        FamilyParams {
            r: Some(r),
            m: Some(m),
            t: Some(t),
            ..FamilyParams::bare(Family::OddCosets, variant)
        }
    }

    pub fn additive(p: u32, s: u32, e: u32, variant: Variant) -> FamilyParams {
        FamilyParams {
            p: Some(p),
            s: Some(s),
            e: Some(e),
            ..FamilyParams::bare(Family::Additive, variant)
        }
    }

    pub fn twisted_pair(q: u32, t: u32) -> FamilyParams {
        FamilyParams {
            q: Some(q),
            t: Some(t),
            ..FamilyParams::bare(Family::TwistedPair, Variant::I)
        }
    }

    pub fn with_mu(mut self, mu: Vec<u32>) -> FamilyParams {
        self.mu = Some(mu);
        self
    }

    pub fn with_omega(mut self, omega: Elem) -> FamilyParams {
        self.omega = Some(omega);
        self
    }

    /// Checks the parameter invariants and returns the promised `(k, l)`
    /// range without building any field or code.
    pub fn advertised(&self) -> Result<Advertised> {
        let v = self.variant;
        if !self.family.variants().contains(&v) {
            return Err(invalid(format!("{} has no variant ({v})", self.family)));
        }
        match self.family {
            Family::EvenCosets => {
                let (r, q, m, t) = self.coset_shape()?;
                if t > (r + 1) / gcd(r + 1, m) {
                    return Err(invalid(format!(
                        "t = {t} exceeds (r+1)/gcd(r+1, m) = {}",
                        (r + 1) / gcd(r + 1, m)
                    )));
                }
                let n = (t * m) as usize;
                if !n.is_multiple_of(2) {
                    return Err(invalid(format!("n = tm = {n} must be even")));
                }
                match v {
                    Variant::I | Variant::Ii if ((q - 1) / m) % 2 != 0 => {
                        return Err(invalid(format!("(q-1)/m = {} must be even", (q - 1) / m)))
                    }
                    Variant::Iii | Variant::Iv if t % 2 == 0 && m % 2 == 0 && r % 4 == 1 => {
                        return Err(invalid(
                            "t even, m even and r = 1 mod 4 is the excluded case".into(),
                        ))
                    }
                    _ => {}
                }
                Ok(match v {
                    Variant::I => Advertised::new(Route::Grs, n, n / 2, n / 2),
                    Variant::Ii => Advertised::new(Route::Extend, n + 1, n / 2, (n - 1) / 2),
                    Variant::Iii => Advertised::new(Route::Grs, n + 1, n / 2, n / 2),
                    Variant::Iv => Advertised::new(Route::Egrs, n + 2, (n + 2) / 2, (n + 2) / 2),
                })
            }
            Family::OddCosets => {
                let (r, _, m, t) = self.coset_shape()?;
                let bound = (r + 1) / (2 * gcd(r + 1, m));
                if t > bound {
                    return Err(invalid(format!(
                        "t = {t} exceeds (r+1)/(2 gcd(r+1, m)) = {bound}"
                    )));
                }
                let n = (t * m) as usize;
                if n.is_multiple_of(2) {
                    return Err(invalid(format!("n = tm = {n} must be odd")));
                }
                Ok(match v {
                    Variant::I => Advertised::new(Route::Grs, n, (n - 1) / 2, (n - 1) / 2),
                    Variant::Ii => {
                        Advertised::new(Route::Egrs, n + 1, n.div_ceil(2), n.div_ceil(2))
                    }
                    _ => Advertised::new(Route::Extend, n + 2, n.div_ceil(2), n.div_ceil(2)),
                })
            }
            Family::Additive => {
                let (p, s, e) = (need(self.p, "p")?, need(self.s, "s")?, need(self.e, "e")?);
                if p == 2 || !is_prime(p) {
                    return Err(invalid(format!("p = {p} must be an odd prime")));
                }
                if s == 0 || e == 0 || e > s {
                    return Err(invalid(format!("need 1 <= e <= s, got e = {e}, s = {s}")));
                }
                field_order(p, 2 * s)?;
                let n = (p as usize).pow(2 * e);
                Ok(match v {
                    Variant::I => Advertised::new(Route::Grs, n, (n - 1) / 2, (n - 1) / 2),
                    _ => Advertised::new(Route::Egrs, n + 1, n.div_ceil(2), n.div_ceil(2)),
                })
            }
            Family::TwistedPair => {
                let (q, t) = (need(self.q, "q")?, need(self.t, "t")?);
                if prime_power(q).is_none() || q % 4 != 3 {
                    return Err(invalid(format!(
                        "q = {q} must be a prime power with q = 3 mod 4"
                    )));
                }
                if t % 2 == 0 || (q - 1) % t != 0 {
                    return Err(invalid(format!(
                        "t = {t} must be odd and divide q - 1 = {}",
                        q - 1
                    )));
                }
                let t = t as usize;
                Ok(Advertised::new(Route::Grs, 2 * t, t - 1, t - 1))
            }
        }
    }

    /// `(r, q = r^2, m, t)` for the coset families.
    fn coset_shape(&self) -> Result<(u32, u32, u32, u32)> {
        let (r, m, t) = (need(self.r, "r")?, need(self.m, "m")?, need(self.t, "t")?);
        match prime_power(r) {
            Some((p, _)) if p != 2 => {}
            _ => return Err(invalid(format!("r = {r} must be an odd prime power"))),
        }
        let q = r
            .checked_mul(r)
            .filter(|&q| q <= 1 << 16)
            .ok_or_else(|| invalid(format!("q = {r}^2 is too large")))?;
        if m == 0 || (q - 1) % m != 0 {
            return Err(invalid(format!("m = {m} must divide q - 1 = {}", q - 1)));
        }
        if t == 0 {
            return Err(invalid("t must be positive".into()));
        }
        Ok((r, q, m, t))
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidFamily(msg)
}

fn need(x: Option<u32>, name: &str) -> Result<u32> {
    x.ok_or_else(|| invalid(format!("missing parameter {name}")))
}

fn field_order(p: u32, m: u32) -> Result<u32> {
    p.checked_pow(m)
        .filter(|&q| q <= 1 << 16)
        .ok_or_else(|| invalid(format!("q = {p}^{m} is too large")))
}

/// The `(k, l)` range a family member promises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Advertised {
    pub route: Route,
    /// Length of the produced codes.
    pub length: usize,
    /// Dimension of the self-orthogonal seed.
    pub seed_m: usize,
    pub k_max: usize,
}

impl Advertised {
    fn new(route: Route, length: usize, seed_m: usize, k_max: usize) -> Advertised {
        Advertised {
            route,
            length,
            seed_m,
            k_max,
        }
    }

    pub fn targets(&self) -> Vec<(usize, usize)> {
        self.route
            .targets(self.k_max)
            .into_iter()
            .filter(|&(k, _)| k <= self.seed_m)
            .collect()
    }
}

/// A certified seed together with the route and range it is advertised for.
#[derive(Debug, Clone)]
pub struct FamilySeed {
    pub params: FamilyParams,
    pub seed: SeedCode,
    pub advertised: Advertised,
}

impl FamilySeed {
    pub fn route(&self) -> Route {
        self.advertised.route
    }

    pub fn targets(&self) -> Vec<(usize, usize)> {
        self.advertised.targets()
    }
}

/// Builds the seed for any family.
pub fn build(params: &FamilyParams) -> Result<FamilySeed> {
    match params.family {
        Family::EvenCosets => family_even_cosets(params),
        Family::OddCosets => family_odd_cosets(params),
        Family::Additive => family_additive(params),
        Family::TwistedPair => family_twisted_pair(params),
    }
}

/// `a_{c + (j-1)m} = alpha^c beta^{mu_j}`, `c = 1..m`, `j = 1..t`.
fn coset_points(f: &Field, r: u32, m: u32, mu: &[u32]) -> Result<Vec<Elem>> {
    let alpha = f.root_of_unity(m)?;
    let beta = f.root_of_unity(r + 1)?;
    let mut pts = Vec::with_capacity(mu.len() * m as usize);
    for &exp in mu {
        let b = f.pow(beta, exp as i64)?;
        for c in 1..=m {
            pts.push(f.mul(f.pow(alpha, c as i64)?, b));
        }
    }
    Ok(pts)
}

/// `beta^x` and `beta^y` lie in the same coset of the order-`m` subgroup.
fn same_coset(f: &Field, beta: Elem, x: u32, y: u32, m: u32) -> bool {
    let d = x as i64 - y as i64;
    f.pow(beta, d * m as i64).expect("beta is nonzero") == Elem::ONE
}

/// Default or validated coset exponents `0 <= mu_1 < ... < mu_t < r + 1`.
fn coset_exponents(f: &Field, params: &FamilyParams, even_only: bool) -> Result<Vec<u32>> {
    let (r, m, t) = (params.r.unwrap(), params.m.unwrap(), params.t.unwrap());
    let beta = f.root_of_unity(r + 1)?;
    if let Some(mu) = &params.mu {
        if mu.len() != t as usize {
            return Err(invalid(format!("{} coset exponents for t = {t}", mu.len())));
        }
        if mu.windows(2).any(|w| w[0] >= w[1]) || mu.iter().any(|&x| x > r) {
            return Err(invalid(format!(
                "coset exponents must increase strictly within 0..={r}"
            )));
        }
        if even_only && mu.iter().any(|x| x % 2 != 0) {
            return Err(invalid("coset exponents must be even".into()));
        }
        for (i, &x) in mu.iter().enumerate() {
            if mu[..i].iter().any(|&y| same_coset(f, beta, x, y, m)) {
                return Err(invalid(format!("exponent {x} repeats an earlier coset")));
            }
        }
        return Ok(mu.clone());
    }
    let step = if even_only { 2 } else { 1 };
    let mut mu: Vec<u32> = Vec::new();
    for x in (0..=r).step_by(step) {
        if mu.len() == t as usize {
            break;
        }
        if !mu.iter().any(|&y| same_coset(f, beta, x, y, m)) {
            mu.push(x);
        }
    }
    if mu.len() < t as usize {
        return Err(invalid(format!(
            "only {} distinct cosets available for t = {t}",
            mu.len()
        )));
    }
    Ok(mu)
}

/// `v_i = sqrt(scale_i * u_i)` after checking each radicand is a nonzero square.
fn multipliers(
    f: &Field,
    e: &EvaluationSet,
    scale: impl Fn(usize, Elem) -> Elem,
    what: &str,
) -> Result<Vec<Elem>> {
    e.points()
        .iter()
        .zip(e.u())
        .enumerate()
        .map(|(i, (&a, &u))| {
            let x = f.mul(scale(i, a), u);
            if x.is_zero() || !f.is_square(x) {
                return Err(Error::QrCheckFailed(format!(
                    "{what} is not a nonzero square at point {} (enc {})",
                    i + 1,
                    a.0
                )));
            }
            f.sqrt(x)
        })
        .collect()
}

fn finish(
    params: &FamilyParams,
    advertised: Advertised,
    e: EvaluationSet,
    v: Vec<Elem>,
) -> Result<FamilySeed> {
    let extended = advertised.route == Route::Egrs;
    let spec = GrsSpec::new(e, v, advertised.seed_m, extended)?;
    Ok(FamilySeed {
        params: params.clone(),
        seed: SeedCode::new(spec)?,
        advertised,
    })
}

/// Even-length unions of `t` cosets of the order-`m` roots of unity in
/// `GF(r^2)`, optionally with the point 0 appended.
pub fn family_even_cosets(params: &FamilyParams) -> Result<FamilySeed> {
    if params.family != Family::EvenCosets {
        return Err(invalid("expected even_cosets parameters".into()));
    }
    let adv = params.advertised()?;
    let (r, q, m, t) = params.coset_shape()?;
    let f = Field::with_order(q)?;
    let mu = coset_exponents(&f, params, false)?;
    let mut pts = coset_points(&f, r, m, &mu)?;
    let neg_one = f.neg(Elem::ONE);
    match params.variant {
        Variant::I | Variant::Ii => {
            let mu_sum: i64 = mu.iter().map(|&x| x as i64).sum();
            let exp = r.div_ceil(2) as i64 * (t as i64 - 1) - m as i64 * mu_sum;
            let lambda = f.gen_pow(exp);
            let inv_lambda = f.inv(lambda)?;
            let e = EvaluationSet::new(&f, pts)?;
            // lambda * prod(a_i - a_z) = lambda / u_i is a square iff u_i / lambda is.
            let v = multipliers(&f, &e, |_, _| inv_lambda, "lambda * prod(a_i - a_z)")?;
            finish(params, adv, e, v)
        }
        Variant::Iii => {
            pts.push(Elem::ZERO);
            let e = EvaluationSet::new(&f, pts)?;
            let v = multipliers(&f, &e, |_, _| Elem::ONE, "prod(a_i - a_z)")?;
            finish(params, adv, e, v)
        }
        Variant::Iv => {
            pts.push(Elem::ZERO);
            let e = EvaluationSet::new(&f, pts)?;
            let v = multipliers(&f, &e, |_, _| neg_one, "-prod(a_i - a_z)")?;
            finish(params, adv, e, v)
        }
    }
}

/// Odd-length unions of cosets with even exponents.
pub fn family_odd_cosets(params: &FamilyParams) -> Result<FamilySeed> {
    if params.family != Family::OddCosets {
        return Err(invalid("expected odd_cosets parameters".into()));
    }
    let adv = params.advertised()?;
    let (r, q, m, _) = params.coset_shape()?;
    let f = Field::with_order(q)?;
    let mu = coset_exponents(&f, params, true)?;
    let mut pts = coset_points(&f, r, m, &mu)?;
    let neg_one = f.neg(Elem::ONE);
    let (scale, what) = match params.variant {
        Variant::I => (Elem::ONE, "prod(a_i - a_z)"),
        Variant::Ii => (neg_one, "-prod(a_i - a_z)"),
        _ => {
            pts.push(Elem::ZERO);
            (neg_one, "-prod(a_i - a_z)")
        }
    };
    let e = EvaluationSet::new(&f, pts)?;
    let v = multipliers(&f, &e, |_, _| scale, what)?;
    finish(params, adv, e, v)
}

/// Points `x beta + y` for `x, y` in an `e`-dimensional GF(p)-subspace of
/// `GF(p^s)`, inside `GF(p^{2s})`.
pub fn family_additive(params: &FamilyParams) -> Result<FamilySeed> {
    if params.family != Family::Additive {
        return Err(invalid("expected additive parameters".into()));
    }
    let adv = params.advertised()?;
    let (p, s, e_dim) = (params.p.unwrap(), params.s.unwrap(), params.e.unwrap());
    let f = Field::new(p, 2 * s, None)?;
    let q = f.q();
    let r = p.pow(s);
    let gamma = f.gen_pow(((q - 1) / (r - 1)) as i64);
    // beta^{r+1} = 1 and beta outside GF(r), i.e. beta != +-1.
    let beta = f
        .nonzero()
        .find(|&b| f.pow(b, (r + 1) as i64).unwrap() == Elem::ONE && f.mul(b, b) != Elem::ONE)
        .ok_or_else(|| Error::Unreachable("no beta of order dividing r + 1".into()))?;
    let basis: Vec<Elem> = (0..e_dim)
        .map(|i| f.pow(gamma, i as i64).unwrap())
        .collect();
    let size = p.pow(e_dim);
    let subspace: Vec<Elem> = (0..size)
        .map(|idx| {
            let mut x = idx;
            f.sum(basis.iter().map(|&b| {
                let c = f.from_int((x % p) as i64);
                x /= p;
                f.mul(c, b)
            }))
        })
        .collect();
    let mut pts = Vec::with_capacity((size * size) as usize);
    for &y in &subspace {
        for &x in &subspace {
            pts.push(f.add(f.mul(x, beta), y));
        }
    }
    let e = EvaluationSet::new(&f, pts)?;
    let (scale, what) = match params.variant {
        Variant::I => (Elem::ONE, "prod(a_i - a_z)"),
        _ => (f.neg(Elem::ONE), "-prod(a_i - a_z)"),
    };
    let v = multipliers(&f, &e, |_, _| scale, what)?;
    finish(params, adv, e, v)
}

/// `(alpha, ..., alpha^t, w alpha, ..., w alpha^t)` for a primitive `t`-th
/// root of unity `alpha` and a non-square `w`, with `lambda(x) = t(1 - w^t)x`.
pub fn family_twisted_pair(params: &FamilyParams) -> Result<FamilySeed> {
    if params.family != Family::TwistedPair {
        return Err(invalid("expected twisted_pair parameters".into()));
    }
    let adv = params.advertised()?;
    let (q, t) = (params.q.unwrap(), params.t.unwrap());
    if t == 1 {
        return Err(invalid("t = 1 leaves no admissible seed dimension".into()));
    }
    let f = Field::with_order(q)?;
    let omega = match params.omega {
        Some(w) if f.contains(w) && !f.is_square(w) => w,
        Some(w) => return Err(invalid(format!("omega = {} must be a non-square", w.0))),
        None => f
            .nonzero()
            .find(|&x| !f.is_square(x))
            .expect("odd q has non-squares"),
    };
    let alpha = f.root_of_unity(t)?;
    let ti = t as i64;
    let mut pts: Vec<Elem> = (1..=ti).map(|i| f.pow(alpha, i).unwrap()).collect();
    pts.extend((1..=ti).map(|i| f.mul(omega, f.pow(alpha, i).unwrap())));
    let e = EvaluationSet::new(&f, pts)?;

    let c = f.mul(f.from_int(ti), f.sub(Elem::ONE, f.pow(omega, ti)?));
    if c.is_zero() {
        return Err(invalid("t(1 - omega^t) vanishes".into()));
    }
    // Closed forms for prod_{z != i}(a_i - a_z), checked against 1/u_i.
    let twist = f.neg(f.pow(omega, ti - 1)?);
    for i in 1..=ti {
        let first = f.mul(c, f.pow(alpha, -i)?);
        let second = f.mul(twist, first);
        let idx = (i - 1) as usize;
        if f.inv(e.u()[idx])? != first || f.inv(e.u()[idx + t as usize])? != second {
            return Err(Error::Unreachable(format!(
                "closed-form product mismatch at i = {i}"
            )));
        }
    }
    let v = multipliers(&f, &e, |_, a| f.mul(c, a), "lambda(a_i) u_i")?;
    finish(params, adv, e, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::reduce;
    use crate::construct::Choices;
    use crate::hull::{hull_report, Classification};

    fn check_targets(fs: &FamilySeed) {
        for (k, l) in fs.targets() {
            let out = reduce(&fs.seed, fs.route(), k, l, Choices::default()).unwrap();
            assert_eq!(out.length(), fs.advertised.length);
            assert_eq!(hull_report(&out.to_code()).hull_dim, l, "k = {k}, l = {l}");
        }
    }

    #[test]
    fn even_cosets_variants() {
        for v in [Variant::I, Variant::Ii, Variant::Iii, Variant::Iv] {
            let fs = build(&FamilyParams::even_cosets(5, 4, 1, v)).unwrap();
            assert!(fs.seed.spec().generator_matrix().gram().is_zero());
            check_targets(&fs);
        }
        let iv = build(&FamilyParams::even_cosets(7, 2, 1, Variant::Iv)).unwrap();
        assert_eq!(iv.seed.spec().length(), 3 + 1);
        assert_eq!(iv.seed.classification(), Classification::SelfDual);
    }

    #[test]
    fn even_cosets_exception_and_bounds() {
        let err = build(&FamilyParams::even_cosets(5, 2, 2, Variant::Iii)).unwrap_err();
        assert!(matches!(err, Error::InvalidFamily(_)));
        assert!(build(&FamilyParams::even_cosets(5, 2, 2, Variant::Iv)).is_err());
        assert!(build(&FamilyParams::even_cosets(7, 4, 3, Variant::I)).is_err());
        assert!(build(&FamilyParams::even_cosets(4, 3, 1, Variant::I)).is_err());
        // (q - 1)/m = 3 is odd.
        assert!(build(&FamilyParams::even_cosets(5, 8, 1, Variant::I)).is_err());
    }

    #[test]
    fn even_cosets_with_two_cosets() {
        let fs = build(&FamilyParams::even_cosets(7, 4, 2, Variant::I)).unwrap();
        assert_eq!(fs.seed.n(), 8);
        assert_eq!(fs.seed.m(), 4);
        assert!(fs.seed.spec().generator_matrix().gram().is_zero());
    }

    #[test]
    fn mu_override() {
        let base = FamilyParams::even_cosets(7, 4, 2, Variant::I);
        assert!(build(&base.clone().with_mu(vec![0, 2])).is_err());
        assert!(build(&base.clone().with_mu(vec![1, 0])).is_err());
        assert!(build(&base.with_mu(vec![1, 2])).is_ok());
    }

    #[test]
    fn odd_cosets_variants() {
        let lens = [
            (Variant::I, 3, 1),
            (Variant::Ii, 4, 2),
            (Variant::Iii, 4, 2),
        ];
        for (v, len, m) in lens {
            let fs = build(&FamilyParams::odd_cosets(5, 3, 1, v)).unwrap();
            assert_eq!(fs.seed.spec().length(), len);
            assert_eq!(fs.seed.m(), m);
            assert!(fs.seed.spec().generator_matrix().gram().is_zero());
            check_targets(&fs);
        }
        assert!(build(&FamilyParams::odd_cosets(5, 3, 1, Variant::Iv)).is_err());
        assert!(build(&FamilyParams::odd_cosets(5, 3, 2, Variant::I)).is_err());
    }

    #[test]
    fn additive_variants() {
        let ii = build(&FamilyParams::additive(3, 1, 1, Variant::Ii)).unwrap();
        assert_eq!(ii.seed.spec().length(), 10);
        assert_eq!(ii.seed.classification(), Classification::SelfDual);
        let i = build(&FamilyParams::additive(3, 2, 1, Variant::I)).unwrap();
        assert_eq!(i.seed.m(), 4);
        assert_eq!(i.seed.classification(), Classification::AlmostSelfDual);
        check_targets(&i);
        assert!(build(&FamilyParams::additive(3, 1, 2, Variant::I)).is_err());
        assert!(build(&FamilyParams::additive(2, 1, 1, Variant::I)).is_err());
    }

    #[test]
    fn twisted_pair_seeds() {
        let fs = build(&FamilyParams::twisted_pair(7, 3)).unwrap();
        assert_eq!(fs.seed.m(), 2);
        assert!(fs.seed.spec().generator_matrix().gram().is_zero());
        check_targets(&fs);
        assert!(build(&FamilyParams::twisted_pair(13, 3)).is_err());
        assert!(build(&FamilyParams::twisted_pair(7, 2)).is_err());
        assert!(build(&FamilyParams::twisted_pair(7, 1)).is_err());
        assert!(FamilyParams::twisted_pair(7, 1)
            .advertised()
            .unwrap()
            .targets()
            .is_empty());
        assert!(build(&FamilyParams::twisted_pair(7, 3).with_omega(Elem(2))).is_err());
        assert!(build(&FamilyParams::twisted_pair(7, 3).with_omega(Elem(5))).is_ok());
    }

    #[test]
    fn advertised_ranges() {
        let a = FamilyParams::even_cosets(5, 4, 1, Variant::Ii)
            .advertised()
            .unwrap();
        assert_eq!((a.length, a.seed_m, a.k_max), (5, 2, 1));
        assert_eq!(a.targets(), vec![(1, 0)]);
        let b = FamilyParams::odd_cosets(5, 3, 1, Variant::Iii)
            .advertised()
            .unwrap();
        assert_eq!(b.targets(), vec![(1, 0), (2, 0), (2, 1)]);
    }

    #[test]
    fn params_json() {
        let p = FamilyParams::twisted_pair(7, 3);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"family":"twisted_pair","variant":"i","t":3,"q":7}"#);
        assert_eq!(serde_json::from_str::<FamilyParams>(&s).unwrap(), p);
    }
}
