//! The JSON operad spec format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::color::Flavor;
use crate::error::Result;

/// A presentation of an operad with transformations, as read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperadSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub flavor: Flavor,
    pub colors: Vec<String>,
    #[serde(default)]
    pub degree1: Degree1Spec,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub rewrites: Vec<RewriteSpec>,
    #[serde(default)]
    pub relations: RelationsSpec,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Degree1Spec {
    #[default]
    Trivial,
    IntegerTwist,
    Groupoid(GroupoidSpec),
    /// Finite groups of affine symmetries of each color's shape.
    Affine(BTreeMap<String, Vec<MapSpec>>),
}

/// A finite groupoid on the colors, given by tables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupoidSpec {
    pub elements: Vec<ElementSpec>,
    /// Identity element id for each color.
    pub identities: BTreeMap<String, String>,
    /// Triples `[a, b, c]` meaning `a` followed by `b` is `c`.
    pub products: Vec<[String; 3]>,
    #[serde(default)]
    pub inverses: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementSpec {
    pub id: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub id: String,
    pub inputs: Vec<String>,
    pub output: String,
    /// Affine embedding of each input shape into the output shape.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maps: Option<Vec<MapSpec>>,
}

/// `g * label = prefix · ((labels) * result)`: a degree-1 element above a
/// generator is traded for a prefix braid and labels on the inputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RewriteSpec {
    pub generator: String,
    pub label: String,
    /// Braid letters (braided flavor) or 1-based images (symmetric flavor).
    #[serde(default)]
    pub prefix: Vec<i64>,
    pub labels: Vec<String>,
    pub result: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationsSpec {
    #[default]
    None,
    Ribbon,
    Cube(CubeSpec),
    Affine(AffineSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeSpec {
    pub d: usize,
    #[serde(rename = "N")]
    pub n: Vec<Vec<u64>>,
}

/// Shapes (convex polytopes, vertex lists) for a geometric operad.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineSpec {
    pub dimension: usize,
    pub shapes: BTreeMap<String, Vec<Vec<String>>>,
}

/// An affine map `x ↦ linear·x + offset` with rational entries as strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapSpec {
    pub linear: Vec<Vec<String>>,
    pub offset: Vec<String>,
}

impl OperadSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_spec() {
        let s = r#"{"flavor":"planar","colors":["c"],
            "generators":[{"id":"caret","inputs":["c","c"],"output":"c"}]}"#;
        let spec = OperadSpec::from_json(s).unwrap();
        assert_eq!(spec.degree1, Degree1Spec::Trivial);
        assert_eq!(spec.relations, RelationsSpec::None);
        assert_eq!(OperadSpec::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn parses_cube_and_twist() {
        let s = r#"{"flavor":"braided","colors":["c"],"degree1":"integer-twist",
            "relations":{"cube":{"d":1,"N":[[2,3]]}}}"#;
        let spec = OperadSpec::from_json(s).unwrap();
        assert_eq!(spec.degree1, Degree1Spec::IntegerTwist);
        assert_eq!(spec.relations, RelationsSpec::Cube(CubeSpec { d: 1, n: vec![vec![2, 3]] }));
    }
}
