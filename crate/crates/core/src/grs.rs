//! (Extended) generalized Reed-Solomon codes.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::hull::LinearCode;
use crate::linalg::{Matrix, Poly};

/// Distinct evaluation points `a_i` and `u_i = prod_{j != i} (a_i - a_j)^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationSet {
    field: Field,
    a: Vec<Elem>,
    u: Vec<Elem>,
}

impl EvaluationSet {
    pub fn new(field: &Field, a: Vec<Elem>) -> Result<EvaluationSet> {
        if a.is_empty() {
            return Err(Error::EmptyEvaluationSet);
        }
        let mut seen = HashSet::with_capacity(a.len());
        for &x in &a {
            if !field.contains(x) {
                return Err(Error::InvalidElement {
                    enc: x.0,
                    q: field.q(),
                });
            }
            if !seen.insert(x) {
                return Err(Error::DuplicatePoint(x.0));
            }
        }
        let u = a
            .iter()
            .enumerate()
            .map(|(i, &ai)| {
                let prod = field.product(
                    a.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, &aj)| field.sub(ai, aj)),
                );
                field.inv(prod).expect("points are distinct")
            })
            .collect();
        Ok(EvaluationSet {
            field: field.clone(),
            a,
            u,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn points(&self) -> &[Elem] {
        &self.a
    }

    pub fn u(&self) -> &[Elem] {
        &self.u
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.a.contains(&x)
    }
}

/// `GRS_k(a, v)` or, with `extended`, `GRS_k(a, v, inf)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GrsSpecJson", into = "GrsSpecJson")]
pub struct GrsSpec {
    eval: EvaluationSet,
    v: Vec<Elem>,
    k: usize,
    extended: bool,
}

/// `{"field": {...}, "a": [enc...], "v": [enc...], "k": int, "extended": bool}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrsSpecJson {
    pub field: Field,
    pub a: Vec<Elem>,
    pub v: Vec<Elem>,
    pub k: usize,
    pub extended: bool,
}

impl TryFrom<GrsSpecJson> for GrsSpec {
    type Error = Error;

    fn try_from(j: GrsSpecJson) -> Result<GrsSpec> {
        let eval = EvaluationSet::new(&j.field, j.a)?;
        GrsSpec::new(eval, j.v, j.k, j.extended)
    }
}

impl From<GrsSpec> for GrsSpecJson {
    fn from(s: GrsSpec) -> GrsSpecJson {
        GrsSpecJson {
            field: s.eval.field.clone(),
            a: s.eval.a,
            v: s.v,
            k: s.k,
            extended: s.extended,
        }
    }
}

impl GrsSpec {
    pub fn new(eval: EvaluationSet, v: Vec<Elem>, k: usize, extended: bool) -> Result<GrsSpec> {
        let n = eval.len();
        if v.len() != n {
            return Err(Error::Dimension(format!(
                "{} multipliers for {n} points",
                v.len()
            )));
        }
        for (i, &vi) in v.iter().enumerate() {
            if !eval.field.contains(vi) {
                return Err(Error::InvalidElement {
                    enc: vi.0,
                    q: eval.field.q(),
                });
            }
            if vi.is_zero() {
                return Err(Error::ZeroMultiplier(i));
            }
        }
        let max_k = if extended { n + 1 } else { n };
        if k == 0 || k > max_k {
            return Err(Error::OutOfRange(format!(
                "dimension k = {k} must lie in 1..={max_k}"
            )));
        }
        Ok(GrsSpec {
            eval,
            v,
            k,
            extended,
        })
    }

    pub fn field(&self) -> &Field {
        &self.eval.field
    }

    pub fn eval(&self) -> &EvaluationSet {
        &self.eval
    }

    pub fn v(&self) -> &[Elem] {
        &self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn extended(&self) -> bool {
        self.extended
    }

    /// Number of evaluation points.
    pub fn n(&self) -> usize {
        self.eval.len()
    }

    /// Code length: `n`, plus one when extended.
    pub fn length(&self) -> usize {
        self.n() + usize::from(self.extended)
    }

    /// Same points and multipliers, different dimension.
    pub fn with_k(&self, k: usize) -> Result<GrsSpec> {
        GrsSpec::new(self.eval.clone(), self.v.clone(), k, self.extended)
    }

    /// Row `r` is `(v_i a_i^r)`; the extended column is `e_{k-1}`.
    pub fn generator_matrix(&self) -> Matrix {
        let f = self.field();
        let mut g = Matrix::zeros(f, self.k, self.length());
        for (i, (&a, &v)) in self.eval.a.iter().zip(&self.v).enumerate() {
            let mut x = v;
            for r in 0..self.k {
                g.set(r, i, x);
                x = f.mul(x, a);
            }
        }
        if self.extended {
            g.set(self.k - 1, self.n(), Elem::ONE);
        }
        g
    }

    pub fn to_code(&self) -> LinearCode {
        LinearCode::new(self.generator_matrix()).expect("GRS generator matrices have full rank")
    }

    /// `(v_1 f(a_1), ..., v_n f(a_n) [, f_{k-1}])`.
    pub fn encode(&self, msg: &Poly) -> Result<Vec<Elem>> {
        if let Some(d) = msg.degree() {
            if d >= self.k {
                return Err(Error::DegreeTooLarge {
                    degree: d,
                    bound: self.k,
                });
            }
        }
        let f = self.field();
        let mut out: Vec<Elem> = self
            .eval
            .a
            .iter()
            .zip(&self.v)
            .map(|(&a, &v)| f.mul(v, msg.eval(a)))
            .collect();
        if self.extended {
            out.push(msg.coeff(self.k - 1));
        }
        Ok(out)
    }
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

    #[test]
    fn u_values_small() {
        let f = gf(5);
        let e = EvaluationSet::new(&f, elems(&[0, 1, 2])).unwrap();
        assert_eq!(e.u(), &elems(&[3, 4, 3])[..]);
        assert_eq!(f.sum(e.u().iter().copied()), Elem::ZERO);

        let single = EvaluationSet::new(&f, elems(&[3])).unwrap();
        assert_eq!(single.u(), &[Elem::ONE]);
    }

    /// Wilson: prod of the nonzero residues is -1, so u_i = -1 on all of GF(p).
    #[test]
    fn u_on_whole_prime_field() {
        for p in [3u32, 5, 7, 11, 13] {
            let f = gf(p);
            let e = EvaluationSet::new(&f, f.enumerate()).unwrap();
            let wilson = (1..p as u64).product::<u64>() % p as u64;
            assert_eq!(wilson, (p - 1) as u64);
            assert!(e.u().iter().all(|&u| u == Elem(p - 1)));
        }
    }

    #[test]
    fn eval_set_errors() {
        let f = gf(7);
        assert_eq!(
            EvaluationSet::new(&f, vec![]).unwrap_err(),
            Error::EmptyEvaluationSet
        );
        assert_eq!(
            EvaluationSet::new(&f, elems(&[1, 2, 1])).unwrap_err(),
            Error::DuplicatePoint(1)
        );
    }

    #[test]
    fn generator_rows() {
        let f = gf(3);
        let e = EvaluationSet::new(&f, elems(&[0, 1, 2])).unwrap();
        let v = elems(&[1, 2, 2]);
        let g1 = GrsSpec::new(e.clone(), v.clone(), 1, false)
            .unwrap()
            .generator_matrix();
        assert_eq!(g1.row(0), &v[..]);
        let g1e = GrsSpec::new(e.clone(), v.clone(), 1, true)
            .unwrap()
            .generator_matrix();
        assert_eq!(g1e.row(0), &elems(&[1, 2, 2, 1])[..]);
        // Second row (0, v_2, -v_3, 1) since a_3 = 2 = -1.
        let g2e = GrsSpec::new(e, v, 2, true).unwrap().generator_matrix();
        assert_eq!(g2e.row(1), &elems(&[0, 2, 1, 1])[..]);
        assert_eq!(g2e.row(0), &elems(&[1, 2, 2, 0])[..]);
    }

    #[test]
    fn encode_examples() {
        let f = gf(5);
        let e = EvaluationSet::new(&f, elems(&[0, 1, 2])).unwrap();
        let c = GrsSpec::new(e, elems(&[1, 1, 1]), 2, true).unwrap();
        assert_eq!(c.encode(&Poly::zero(&f)).unwrap(), elems(&[0, 0, 0, 0]));
        assert_eq!(c.encode(&Poly::one(&f)).unwrap(), elems(&[1, 1, 1, 0]));
        assert_eq!(
            c.encode(&Poly::from_encs(&f, &[0, 1])).unwrap(),
            elems(&[0, 1, 2, 1])
        );
        assert!(matches!(
            c.encode(&Poly::from_encs(&f, &[0, 0, 1])),
            Err(Error::DegreeTooLarge {
                degree: 2,
                bound: 2
            })
        ));
    }

    #[test]
    fn spec_validation() {
        let f = gf(7);
        let e = EvaluationSet::new(&f, elems(&[1, 2, 3])).unwrap();
        assert_eq!(
            GrsSpec::new(e.clone(), elems(&[1, 0, 1]), 1, false).unwrap_err(),
            Error::ZeroMultiplier(1)
        );
        assert!(GrsSpec::new(e.clone(), elems(&[1, 1, 1]), 4, false).is_err());
        assert!(GrsSpec::new(e.clone(), elems(&[1, 1, 1]), 4, true).is_ok());
        assert!(GrsSpec::new(e, elems(&[1, 1, 1]), 0, true).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = gf(9);
        let e = EvaluationSet::new(&f, elems(&[0, 3, 5, 8])).unwrap();
        let c = GrsSpec::new(e, elems(&[1, 2, 7, 4]), 2, true).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: GrsSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let bad = s.replace("\"v\":[1,2,7,4]", "\"v\":[1,0,7,4]");
        assert!(serde_json::from_str::<GrsSpec>(&bad).is_err());
    }
}
