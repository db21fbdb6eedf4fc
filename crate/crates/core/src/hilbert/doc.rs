use super::{CMat, CVec, HilbertError, Observable, Projection, StateVector, C64, EQ_TOL};
use serde::{Deserialize, Serialize};

/// Dense row-major complex matrix, each entry written as `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    pub vector: Vec<[f64; 2]>,
}

impl OperatorDoc {
    pub fn from_json(text: &str) -> Result<Self, HilbertError> {
        serde_json::from_str(text).map_err(|e| HilbertError::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("operator document serialises")
    }

    pub fn from_matrix(m: &CMat) -> Self {
        OperatorDoc {
            dim: m.nrows(),
            tol: None,
            matrix: (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        }
    }

    pub fn matrix(&self) -> Result<CMat, HilbertError> {
        if self.matrix.len() != self.dim || self.matrix.iter().any(|r| r.len() != self.dim) {
            return Err(HilbertError::Document(format!(
                "matrix must be {0}x{0}",
                self.dim
            )));
        }
        Ok(CMat::from_fn(self.dim, self.dim, |i, j| {
            let [re, im] = self.matrix[i][j];
            C64::new(re, im)
        }))
    }

    pub fn observable(&self) -> Result<Observable, HilbertError> {
        Observable::new(self.matrix()?, self.tol.unwrap_or(EQ_TOL))
    }

    pub fn projection(&self) -> Result<Projection, HilbertError> {
        Projection::new(self.matrix()?, self.tol.unwrap_or(1e-6))
    }
}

impl StateDoc {
    pub fn from_json(text: &str) -> Result<Self, HilbertError> {
        serde_json::from_str(text).map_err(|e| HilbertError::Document(e.to_string()))
    }

    pub fn from_state(s: &StateVector) -> Self {
        StateDoc {
            dim: s.dim(),
            tol: None,
            vector: s.vector().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn state(&self) -> Result<StateVector, HilbertError> {
        if self.vector.len() != self.dim {
            return Err(HilbertError::Dimension { expected: self.dim, got: self.vector.len() });
        }
        let v = CVec::from_iterator(self.dim, self.vector.iter().map(|&[re, im]| C64::new(re, im)));
        StateVector::new(v, self.tol.unwrap_or(1e-6))
    }
}
