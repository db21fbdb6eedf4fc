use super::{Rational, RealsError, StepFamily};
use crate::hilbert::{Projection, ProjectionLattice, C64};
use crate::oml::{Element, FiniteOml};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// A jump value: an element name of a finite lattice, or a projection
/// matrix with entries `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JumpValue {
    Name(String),
    Matrix(Vec<Vec<[f64; 2]>>),
}

/// `{ "jumps": [["p/q", value], ...] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub jumps: Vec<(String, JumpValue)>,
}

fn parse_rational(s: &str) -> Result<Rational, RealsError> {
    s.trim().parse::<Rational>().map_err(|e| RealsError::Document(format!("bad rational `{s}`: {e}")))
}

impl FamilyDoc {
    pub fn from_json(text: &str) -> Result<Self, RealsError> {
        serde_json::from_str(text).map_err(|e| RealsError::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family document serialises")
    }

    pub fn from_lattice(l: &FiniteOml, u: &StepFamily<Element>) -> Self {
        FamilyDoc {
            jumps: u.jumps().iter().map(|(r, e)| (r.to_string(), JumpValue::Name(l.name(*e).to_string()))).collect(),
        }
    }

    /// Resolves names and validates the family.
    pub fn to_lattice(&self, l: &FiniteOml) -> Result<StepFamily<Element>, RealsError> {
        let mut jumps = Vec::with_capacity(self.jumps.len());
        for (r, v) in &self.jumps {
            let JumpValue::Name(n) = v else {
                return Err(RealsError::Document("expected element names".into()));
            };
            let e = l.elem(n).map_err(|e| RealsError::Document(e.to_string()))?;
            jumps.push((parse_rational(r)?, e));
        }
        StepFamily::new(l, jumps)
    }

    pub fn from_hilbert(u: &StepFamily<Projection>) -> Self {
        FamilyDoc {
            jumps: u
                .jumps()
                .iter()
                .map(|(r, p)| {
                    let m = p.matrix();
                    let rows = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect());
                    (r.to_string(), JumpValue::Matrix(rows.collect()))
                })
                .collect(),
        }
    }

    /// Reads projection matrices (checked within `tol`) and validates the
    /// family on their projection lattice.
    pub fn to_hilbert(&self, tol: f64) -> Result<(ProjectionLattice, StepFamily<Projection>), RealsError> {
        let mut jumps = Vec::with_capacity(self.jumps.len());
        let mut dim = None;
        for (r, v) in &self.jumps {
            let JumpValue::Matrix(rows) = v else {
                return Err(RealsError::Document("expected projection matrices".into()));
            };
            let n = rows.len();
            if rows.iter().any(|row| row.len() != n) {
                return Err(RealsError::Document("projection matrix must be square".into()));
            }
            match dim {
                None => dim = Some(n),
                Some(d) if d != n => return Err(RealsError::Dimension(d, n)),
                _ => {}
            }
            let m = DMatrix::from_fn(n, n, |i, j| C64::new(rows[i][j][0], rows[i][j][1]));
            let p = Projection::new(m, tol).map_err(|e| RealsError::Document(e.to_string()))?;
            jumps.push((parse_rational(r)?, p));
        }
        let lat = ProjectionLattice::new(dim.ok_or(RealsError::Empty)?);
        let u = StepFamily::new(&lat, jumps)?;
        Ok((lat, u))
    }
}
