use serde::{Deserialize, Serialize};

use grs_hull::hull::{certify, CertificateJson};
use grs_hull::oracle::{is_mds, min_distance, OracleBudget};
use grs_hull::{hull_report, Classification, Elem, Error, Field, GrsSpec, LinearCode, Matrix};

pub const SCHEMA: u32 = 1;

/// Everything `verify` recomputes about a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub length: usize,
    pub dimension: usize,
    pub hull_dim: usize,
    pub classification: Classification,
    pub oracle_agrees: bool,
    /// `None` when neither enumeration nor minors fit the budget.
    pub mds: Option<bool>,
    pub min_distance: Option<usize>,
    /// `u_i` for GRS inputs.
    pub u: Option<Vec<Elem>>,
    /// Self-orthogonality certificate at the code's own dimension, if any.
    pub certificate: Option<CertificateJson>,
}

impl Report {
    pub fn for_code(code: &LinearCode, budget: &OracleBudget) -> Report {
        let hull = hull_report(code);
        let (n, k) = (code.n(), code.k());
        let (min_distance, mds) = match min_distance(code, budget) {
            Ok(d) => (Some(d), Some(d == n - k + 1)),
            Err(_) => (None, is_mds(code, budget).ok()),
        };
        Report {
            length: n,
            dimension: k,
            hull_dim: hull.hull_dim,
            classification: hull.classification,
            oracle_agrees: hull.oracle_agrees,
            mds,
            min_distance,
            u: None,
            certificate: None,
        }
    }

    pub fn for_grs(spec: &GrsSpec, budget: &OracleBudget) -> Report {
        let mut r = Report::for_code(&spec.to_code(), budget);
        r.u = Some(spec.eval().u().to_vec());
        r.certificate = certify(spec).ok().flatten().map(|c| c.to_json());
        r
    }
}

/// A code either as GRS parameters or as an explicit generator matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CodeJson {
    Grs(GrsSpec),
    Matrix(GeneratorJson),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub field: Field,
    pub generator: Vec<Vec<Elem>>,
}

impl GeneratorJson {
    pub fn from_code(code: &LinearCode) -> GeneratorJson {
        GeneratorJson {
            field: code.field().clone(),
            generator: code.generator().row_vecs(),
        }
    }

    pub fn to_code(&self) -> Result<LinearCode, Error> {
        let cols = self.generator.first().map_or(0, Vec::len);
        for row in &self.generator {
            for &x in row {
                if !self.field.contains(x) {
                    return Err(Error::InvalidElement {
                        enc: x.0,
                        q: self.field.q(),
                    });
                }
            }
        }
        LinearCode::new(Matrix::from_rows(
            &self.field,
            cols,
            self.generator.clone(),
        )?)
    }
}

impl CodeJson {
    pub fn report(&self, budget: &OracleBudget) -> Result<Report, Error> {
        match self {
            CodeJson::Grs(spec) => Ok(Report::for_grs(spec, budget)),
            CodeJson::Matrix(g) => Ok(Report::for_code(&g.to_code()?, budget)),
        }
    }
}
