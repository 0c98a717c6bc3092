//! JSON file formats and report blocks.

use serde::{Deserialize, Serialize};

use crate::algebra::{to_pair, Pair, RawAlgebra};
use crate::involution::RawInvolution;
use crate::norms::NormKind;
use crate::spectrum::CharacterSpace;
use crate::tolerance::Tolerances;

/// Algebra input file. The optional keys feed the commands that need them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub unit: Vec<Pair>,
    pub structure_constants: Vec<Vec<Vec<Pair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<RawInvolution>,
    /// Element for `transform`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<Vec<Pair>>,
    /// Values on the characters, in report order, for `interpolate`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<Vec<Pair>>,
    /// Weights for the user-weighted ℓ¹ norm.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

impl AlgebraFile {
    pub fn raw(&self) -> RawAlgebra {
        RawAlgebra {
            dim: self.dim,
            unit: self.unit.clone(),
            structure_constants: self.structure_constants.clone(),
            basis_names: self.basis_names.clone(),
        }
    }

    pub fn from_raw(raw: RawAlgebra) -> Self {
        AlgebraFile {
            dim: raw.dim,
            unit: raw.unit,
            structure_constants: raw.structure_constants,
            basis_names: raw.basis_names,
            involution: None,
            element: None,
            function: None,
            weights: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterTable {
    pub count: usize,
    pub characters: Vec<Vec<Pair>>,
    /// Worst multiplicativity residual.
    pub residual: f64,
    pub radical_dim: usize,
}

impl CharacterTable {
    pub fn new(m: &CharacterSpace, radical_dim: usize) -> Self {
        CharacterTable {
            count: m.len(),
            characters: m.characters().iter().map(|c| c.values().iter().map(|&z| to_pair(z)).collect()).collect(),
            residual: m.worst_residual(),
            radical_dim,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormBlock {
    pub norm: NormKind,
    pub worst_contraction_ratio: f64,
    pub hom_norm: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Common header of every report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report<T: Serialize> {
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &str, seed: u64, tolerances: Tolerances, body: T) -> Self {
        Report { version: env!("CARGO_PKG_VERSION"), command: command.to_string(), seed, tolerances, body }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;

    #[test]
    fn unknown_keys_are_rejected() {
        let mut v = serde_json::to_value(AlgebraFile::from_raw(builtin::dual_numbers())).unwrap();
        assert!(serde_json::from_value::<AlgebraFile>(v.clone()).is_ok());
        v["colour"] = serde_json::json!("blue");
        assert!(serde_json::from_value::<AlgebraFile>(v).is_err());
    }

    #[test]
    fn field_order_is_irrelevant() {
        let text = r#"{"unit": [[1,0],[0,0]], "structure_constants": [[[[1,0],[0,0]],[[0,0],[1,0]]],[[[0,0],[1,0]],[[0,0],[0,0]]]], "dim": 2}"#;
        let f: AlgebraFile = serde_json::from_str(text).unwrap();
        let mut expected = builtin::dual_numbers();
        expected.basis_names = None;
        assert_eq!(f.raw(), expected);
    }
}
