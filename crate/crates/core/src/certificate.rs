//! Outcomes of the checks, with enough data attached to re-verify them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::linalg::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Certified,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Basis indices at which an axiom fails.
    BasisTriple { law: String, i: usize, j: usize, k: usize },
    /// Basis pair at which an identity fails.
    BasisPair { identity: String, i: usize, j: usize },
    Element { element: Vector },
    Pair { identity: String, a: Vector, b: Vector },
    Tuple { identity: String, elements: Vec<Vector> },
    /// Vectorized linear maps (column-major by source basis index).
    Maps { label: String, maps: Vec<Vector> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub generators_used: usize,
    pub seed: u64,
    pub dims: BTreeMap<String, usize>,
    /// Independent generating pairs behind a span claim, in insertion order.
    pub generators: Vec<(Vector, Vector)>,
    pub note: Option<String>,
}

impl Certificate {
    pub fn new(outcome: Outcome) -> Self {
        Certificate {
            outcome,
            witness: None,
            generators_used: 0,
            seed: 0,
            dims: BTreeMap::new(),
            generators: Vec::new(),
            note: None,
        }
    }

    pub fn certified() -> Self {
        Self::new(Outcome::Certified)
    }

    pub fn refuted(witness: Witness) -> Self {
        Certificate { witness: Some(witness), ..Self::new(Outcome::Refuted) }
    }

    pub fn inconclusive() -> Self {
        Self::new(Outcome::Inconclusive)
    }

    pub fn is_certified(&self) -> bool {
        self.outcome == Outcome::Certified
    }

    pub fn is_refuted(&self) -> bool {
        self.outcome == Outcome::Refuted
    }

    pub fn with_dim(mut self, name: &str, dim: usize) -> Self {
        self.dims.insert(name.to_string(), dim);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn dim(&self, name: &str) -> Option<usize> {
        self.dims.get(name).copied()
    }
}
