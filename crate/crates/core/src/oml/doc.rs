use super::{FiniteOml, OmlError, OmlStructure};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// JSON form of a finite lattice. `le` may list cover pairs or any
/// generating set of the order; the reflexive transitive closure is taken.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub elements: Vec<String>,
    pub le: Vec<(String, String)>,
    pub ortho: BTreeMap<String, String>,
}

impl LatticeDoc {
    pub fn from_json(text: &str) -> Result<Self, OmlError> {
        serde_json::from_str(text).map_err(|e| OmlError::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lattice document serialises")
    }

    /// Resolves names and closes the order, without checking any axiom.
    pub fn to_structure(&self) -> Result<OmlStructure, OmlError> {
        let n = self.elements.len();
        let mut idx = HashMap::new();
        for (i, nm) in self.elements.iter().enumerate() {
            if idx.insert(nm.as_str(), i).is_some() {
                return Err(OmlError::DuplicateName(nm.clone()));
            }
        }
        let find = |s: &str| {
            idx.get(s)
                .copied()
                .ok_or_else(|| OmlError::UnknownElement(s.to_string()))
        };
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in &self.le {
            leq[find(a)?][find(b)?] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut ortho = vec![usize::MAX; n];
        for (a, b) in &self.ortho {
            ortho[find(a)?] = find(b)?;
        }
        if let Some(i) = ortho.iter().position(|&o| o == usize::MAX) {
            return Err(OmlError::Document(format!(
                "orthocomplement of `{}` is missing",
                self.elements[i]
            )));
        }
        Ok(OmlStructure { names: self.elements.clone(), leq, ortho })
    }

    pub fn to_lattice(&self) -> Result<FiniteOml, OmlError> {
        FiniteOml::new(self.to_structure()?)
    }

    /// Canonical document: elements in lattice order, sorted cover pairs.
    pub fn from_lattice(l: &FiniteOml) -> Self {
        let mut le = Vec::new();
        for a in l.elements() {
            for b in l.elements() {
                if a == b || !l.le(a, b) {
                    continue;
                }
                let between = l.elements().any(|c| c != a && c != b && l.le(a, c) && l.le(c, b));
                if !between {
                    le.push((l.name(a).to_string(), l.name(b).to_string()));
                }
            }
        }
        LatticeDoc {
            elements: l.names().to_vec(),
            le,
            ortho: l
                .elements()
                .map(|e| (l.name(e).to_string(), l.name(l.o(e)).to_string()))
                .collect(),
        }
    }
}

impl FiniteOml {
    pub fn from_json(text: &str) -> Result<Self, OmlError> {
        LatticeDoc::from_json(text)?.to_lattice()
    }

    pub fn to_json(&self) -> String {
        LatticeDoc::from_lattice(self).to_json()
    }
}
