//! Euclidean hulls, self-orthogonality certificates and hull-membership
//! witnesses for (extended) GRS codes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::grs::{EvaluationSet, GrsSpec};
use crate::linalg::{Matrix, Poly};
use crate::oracle;

/// A linear code given by a full-row-rank generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: Matrix,
}

impl LinearCode {
    pub fn new(generator: Matrix) -> Result<LinearCode> {
        if generator.rows() == 0 || generator.rank() != generator.rows() {
            return Err(Error::RankDeficient);
        }
        Ok(LinearCode { generator })
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn dual_generator(&self) -> Matrix {
        self.generator.nullspace()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Lcd,
    SelfOrthogonal,
    DualContaining,
    SelfDual,
    AlmostSelfDual,
    Generic,
}

impl Classification {
    /// Most specific label for an `[n, k]` code with the given hull dimension.
    pub fn from_dims(n: usize, k: usize, hull_dim: usize) -> Classification {
        if hull_dim == k && 2 * k == n {
            Classification::SelfDual
        } else if hull_dim == k && n % 2 == 1 && n == 2 * k + 1 {
            Classification::AlmostSelfDual
        } else if hull_dim == k {
            Classification::SelfOrthogonal
        } else if hull_dim == 0 {
            Classification::Lcd
        } else if hull_dim == n - k {
            Classification::DualContaining
        } else {
            Classification::Generic
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Lcd => "lcd",
            Classification::SelfOrthogonal => "self-orthogonal",
            Classification::DualContaining => "dual-containing",
            Classification::SelfDual => "self-dual",
            Classification::AlmostSelfDual => "almost-self-dual",
            Classification::Generic => "generic",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HullReport {
    pub hull_dim: usize,
    #[serde(skip)]
    pub hull_basis: Matrix,
    #[serde(skip)]
    pub gram_rank: usize,
    pub classification: Classification,
    pub oracle_agrees: bool,
}

/// Hull dimension from the Gram matrix, cross-checked against the stacked
/// rank of generator and dual generator.
pub fn hull_report(code: &LinearCode) -> HullReport {
    let g = code.generator();
    let gram = g.gram();
    let gram_rank = gram.rank();
    let hull_dim = code.k() - gram_rank;
    // Gram is symmetric, so its null space is also the left null space.
    let kernel = gram.nullspace();
    let basis_rows = (0..kernel.rows())
        .map(|r| g.vec_mul(kernel.row(r)))
        .collect();
    let hull_basis = Matrix::from_rows(code.field(), code.n(), basis_rows).expect("shapes agree");
    HullReport {
        hull_dim,
        hull_basis,
        gram_rank,
        classification: Classification::from_dims(code.n(), code.k(), hull_dim),
        oracle_agrees: oracle::hull_dim_oracle(code) == hull_dim,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    /// `v_i^2 = lambda(a_i) u_i`, `deg lambda <= n - 2m`.
    Grs,
    /// As above with `deg lambda = n - 2m + 1` and leading coefficient -1.
    Egrs,
}

/// Certificate polynomial witnessing self-orthogonality of a dimension-`m`
/// (extended) GRS code. For [`CertificateKind::Egrs`], `lambda` is the full
/// polynomial including its forced `-x^{n-2m+1}` term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub lambda: Poly,
    pub kind: CertificateKind,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub lambda: Vec<Elem>,
    pub kind: CertificateKind,
    pub m: usize,
}

impl Certificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            lambda: self.lambda.coeffs().to_vec(),
            kind: self.kind,
            m: self.m,
        }
    }

    /// Degree of the forced leading term, for extended certificates.
    pub fn forced_degree(&self, n: usize) -> Option<usize> {
        match self.kind {
            CertificateKind::Grs => None,
            CertificateKind::Egrs => Some(n + 1 - 2 * self.m),
        }
    }

    /// The freely chosen coefficients `lambda_0 .. lambda_{n-2m}`.
    pub fn free_coefficients(&self, n: usize) -> Vec<Elem> {
        let top = match self.kind {
            CertificateKind::Grs => n - 2 * self.m + 1,
            CertificateKind::Egrs => n + 1 - 2 * self.m,
        };
        (0..top).map(|i| self.lambda.coeff(i)).collect()
    }

    /// Re-checks the defining conditions against a code's points and multipliers.
    pub fn validates(&self, spec: &GrsSpec) -> bool {
        let f = spec.field();
        let n = spec.n();
        let e = spec.eval();
        let values_ok = e
            .points()
            .iter()
            .zip(e.u())
            .zip(spec.v())
            .all(|((&a, &u), &v)| {
                let lhs = f.mul(self.lambda.eval(a), u);
                !lhs.is_zero() && lhs == f.mul(v, v)
            });
        if !values_ok || self.m == 0 {
            return false;
        }
        match self.kind {
            CertificateKind::Grs => {
                !spec.extended()
                    && 2 * self.m <= n
                    && self.lambda.degree().is_some_and(|d| d <= n - 2 * self.m)
            }
            CertificateKind::Egrs => {
                spec.extended()
                    && 2 * self.m <= n + 1
                    && self.lambda.degree() == Some(n + 1 - 2 * self.m)
                    && self.lambda.leading() == f.neg(Elem::ONE)
            }
        }
    }
}

/// The unique polynomial of degree `< n` through `(a_i, v_i^2 / u_i)`.
fn certificate_candidate(spec: &GrsSpec) -> Poly {
    let f = spec.field();
    let e = spec.eval();
    let pts: Vec<(Elem, Elem)> = e
        .points()
        .iter()
        .zip(e.u())
        .zip(spec.v())
        .map(|((&a, &u), &v)| (a, f.div(f.mul(v, v), u).expect("u_i is nonzero")))
        .collect();
    Poly::interpolate(f, &pts).expect("points are distinct")
}

/// Decides whether `GRS_m(a, v)` is self-orthogonal by interpolating the
/// certificate and inspecting its degree.
pub fn certify_grs_self_orthogonal(spec: &GrsSpec, m: usize) -> Result<Option<Certificate>> {
    if spec.extended() {
        return Err(Error::OutOfRange(
            "GRS certificate requested for an extended code".into(),
        ));
    }
    let n = spec.n();
    if m == 0 || 2 * m > n {
        return Err(Error::OutOfRange(format!(
            "m = {m} must lie in 1..={}",
            n / 2
        )));
    }
    let lambda = certificate_candidate(spec);
    let ok = lambda.degree().is_some_and(|d| d <= n - 2 * m);
    Ok(ok.then_some(Certificate {
        lambda,
        kind: CertificateKind::Grs,
        m,
    }))
}

/// Decides whether `GRS_m(a, v, inf)` is self-orthogonal: the interpolated
/// certificate must have degree exactly `n - 2m + 1` with leading coefficient
/// -1. At `m = (n + 1) / 2` this is the constant -1, i.e. `v_i^2 = -u_i`.
pub fn certify_egrs_self_orthogonal(spec: &GrsSpec, m: usize) -> Result<Option<Certificate>> {
    if !spec.extended() {
        return Err(Error::OutOfRange(
            "extended certificate requested for a plain GRS code".into(),
        ));
    }
    let n = spec.n();
    if m == 0 || 2 * m > n + 1 {
        return Err(Error::OutOfRange(format!(
            "m = {m} must lie in 1..={}",
            n.div_ceil(2)
        )));
    }
    let f = spec.field();
    let lambda = certificate_candidate(spec);
    let ok = lambda.degree() == Some(n + 1 - 2 * m) && lambda.leading() == f.neg(Elem::ONE);
    Ok(ok.then_some(Certificate {
        lambda,
        kind: CertificateKind::Egrs,
        m,
    }))
}

/// Certificate for the code's own dimension, when that dimension is in range.
pub fn certify(spec: &GrsSpec) -> Result<Option<Certificate>> {
    if spec.extended() {
        certify_egrs_self_orthogonal(spec, spec.k())
    } else {
        certify_grs_self_orthogonal(spec, spec.k())
    }
}

/// Returns `g` with `v_i^2 f(a_i) = u_i g(a_i)` and the degree bound (plus
/// `f_{k-1} = -g_{n-k}` when extended) exactly when `encode(f)` lies in the hull.
pub fn hull_membership(spec: &GrsSpec, msg: &Poly) -> Result<Option<Poly>> {
    let k = spec.k();
    if let Some(d) = msg.degree() {
        if d >= k {
            return Err(Error::DegreeTooLarge {
                degree: d,
                bound: k,
            });
        }
    }
    let f = spec.field();
    let n = spec.n();
    let e = spec.eval();
    let pts: Vec<(Elem, Elem)> = e
        .points()
        .iter()
        .zip(e.u())
        .zip(spec.v())
        .map(|((&a, &u), &v)| {
            let lhs = f.mul(f.mul(v, v), msg.eval(a));
            (a, f.div(lhs, u).expect("u_i is nonzero"))
        })
        .collect();
    let g = Poly::interpolate(f, &pts)?;
    let witness = if spec.extended() {
        // deg g <= n - k, with n - k = -1 meaning g = 0.
        let degree_ok = match (g.degree(), n.checked_sub(k)) {
            (None, _) => true,
            (Some(d), Some(bound)) => d <= bound,
            (Some(_), None) => false,
        };
        let top = n.checked_sub(k).map_or(Elem::ZERO, |i| g.coeff(i));
        degree_ok && msg.coeff(k - 1) == f.neg(top)
    } else {
        match g.degree() {
            None => true,
            Some(d) => d + k < n,
        }
    };
    Ok(witness.then_some(g))
}

/// `sum_i a_i^j u_i` for one exponent.
pub fn power_sum(e: &EvaluationSet, exponent: usize) -> Elem {
    let f = e.field();
    f.sum(
        e.points()
            .iter()
            .zip(e.u())
            .map(|(&a, &u)| f.mul(f.pow(a, exponent as i64).expect("nonnegative exponent"), u)),
    )
}

/// Checks `sum a_i^j u_i = 0` for `j <= n - 2` and `= 1` for `j = n - 1`.
pub fn verify_power_sums(e: &EvaluationSet) -> bool {
    let n = e.len();
    (0..n - 1).all(|j| power_sum(e, j).is_zero()) && power_sum(e, n - 1) == Elem::ONE
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    fn elems(x: &[u32]) -> Vec<Elem> {
        x.iter().map(|&e| Elem(e)).collect()
    }

    fn code(f: &Field, rows: &[&[u32]]) -> LinearCode {
        LinearCode::new(Matrix::from_encs(f, rows).unwrap()).unwrap()
    }

    #[test]
    fn ternary_hulls() {
        let f = gf(3);
        for v1 in 1..3 {
            for v2 in 1..3 {
                let r = hull_report(&code(&f, &[&[v1, v2]]));
                assert_eq!(r.hull_dim, 0);
                assert_eq!(r.classification, Classification::Lcd);
                for v3 in 1..3 {
                    let r = hull_report(&code(&f, &[&[v1, v2, v3]]));
                    assert_eq!(r.hull_dim, 1);
                    assert_eq!(r.classification, Classification::AlmostSelfDual);
                    assert!(r.oracle_agrees);
                }
            }
        }
    }

    #[test]
    fn self_dual_report() {
        let f = gf(3);
        let r = hull_report(&code(&f, &[&[1, 1, 1, 0], &[0, 1, 2, 1]]));
        assert_eq!(r.hull_dim, 2);
        assert_eq!(r.classification, Classification::SelfDual);
        assert_eq!(r.hull_basis.rows(), 2);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"hull_dim":2,"classification":"self-dual","oracle_agrees":true}"#
        );
    }

    #[test]
    fn classification_labels() {
        assert_eq!(Classification::from_dims(4, 1, 0), Classification::Lcd);
        assert_eq!(
            Classification::from_dims(6, 2, 2),
            Classification::SelfOrthogonal
        );
        assert_eq!(
            Classification::from_dims(6, 4, 2),
            Classification::DualContaining
        );
        assert_eq!(
            Classification::from_dims(9, 4, 4),
            Classification::AlmostSelfDual
        );
        assert_eq!(Classification::from_dims(9, 4, 1), Classification::Generic);
    }

    fn whole_field_spec(p: u32, v: Elem, k: usize, extended: bool) -> GrsSpec {
        let f = gf(p);
        let e = EvaluationSet::new(&f, f.enumerate()).unwrap();
        GrsSpec::new(e, vec![v; p as usize], k, extended).unwrap()
    }

    #[test]
    fn grs_certificate_on_whole_prime_field() {
        for p in [5u32, 7, 11, 13] {
            let m = ((p - 1) / 2) as usize;
            let spec = whole_field_spec(p, Elem::ONE, m, false);
            let cert = certify_grs_self_orthogonal(&spec, m)
                .unwrap()
                .expect("certificate");
            assert_eq!(cert.lambda, Poly::constant(spec.field(), Elem(p - 1)));
            assert!(cert.validates(&spec));
            assert!(spec.generator_matrix().gram().is_zero());
        }
    }

    #[test]
    fn grs_certificate_lost_after_nonsquare_scaling() {
        let f = gf(7);
        let e = EvaluationSet::new(&f, f.enumerate()).unwrap();
        let mut v = vec![Elem::ONE; 7];
        v[0] = Elem(3); // 3 is not a square mod 7
        let spec = GrsSpec::new(e, v, 3, false).unwrap();
        assert!(certify_grs_self_orthogonal(&spec, 3).unwrap().is_none());
        assert!(spec.generator_matrix().gram().rank() > 0);
    }

    #[test]
    fn egrs_certificate_on_whole_prime_field() {
        for p in [5u32, 7, 11, 13] {
            let m = p.div_ceil(2) as usize;
            let spec = whole_field_spec(p, Elem::ONE, m, true);
            let cert = certify_egrs_self_orthogonal(&spec, m)
                .unwrap()
                .expect("certificate");
            assert_eq!(cert.lambda, Poly::constant(spec.field(), Elem(p - 1)));
            assert_eq!(cert.free_coefficients(p as usize), Vec::<Elem>::new());
            assert!(spec.generator_matrix().gram().is_zero());

            // v_i = 2 gives v_i^2 = 4, so lambda becomes the constant -4.
            let scaled = whole_field_spec(p, Elem(2), m, true);
            assert!(certify_egrs_self_orthogonal(&scaled, m).unwrap().is_none());
            assert!(!scaled.generator_matrix().gram().is_zero());
        }
    }

    #[test]
    fn certificate_range_errors() {
        let spec = whole_field_spec(7, Elem::ONE, 2, false);
        assert!(certify_grs_self_orthogonal(&spec, 0).is_err());
        assert!(certify_grs_self_orthogonal(&spec, 4).is_err());
        assert!(certify_egrs_self_orthogonal(&spec, 1).is_err());
        let ext = whole_field_spec(7, Elem::ONE, 2, true);
        assert!(certify_egrs_self_orthogonal(&ext, 5).is_err());
    }

    #[test]
    fn membership_basics() {
        let f = gf(3);
        let e = EvaluationSet::new(&f, elems(&[0, 1])).unwrap();
        let lcd = GrsSpec::new(e, elems(&[1, 1]), 1, false).unwrap();
        assert_eq!(
            hull_membership(&lcd, &Poly::zero(&f)).unwrap(),
            Some(Poly::zero(&f))
        );
        for c in 1..3 {
            assert!(hull_membership(&lcd, &Poly::constant(&f, Elem(c)))
                .unwrap()
                .is_none());
        }
        let so = whole_field_spec(7, Elem::ONE, 3, false);
        let msg = Poly::from_encs(so.field(), &[1, 2, 3]);
        assert!(hull_membership(&so, &msg).unwrap().is_some());
        let too_big = Poly::from_encs(so.field(), &[0, 0, 0, 1]);
        assert!(hull_membership(&so, &too_big).is_err());
    }

    #[test]
    fn power_sums_small() {
        let f = gf(5);
        let e = EvaluationSet::new(&f, elems(&[0, 1, 2])).unwrap();
        let sums: Vec<Elem> = (0..3).map(|j| power_sum(&e, j)).collect();
        assert_eq!(sums, elems(&[0, 0, 1]));
        assert!(verify_power_sums(&e));
        assert!(verify_power_sums(
            &EvaluationSet::new(&f, elems(&[4])).unwrap()
        ));
    }
}
