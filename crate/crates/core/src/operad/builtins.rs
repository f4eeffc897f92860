//! Ready-made operads.

use serde_json::{json, Value};

use super::model::Operad;
use crate::error::{Error, Result};

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "F",
    "V",
    "BV",
    "RV",
    "RV-free",
    "cube1",
    "cube2",
    "cube3",
    "squares-triangles",
    "binary-z2",
    "binary-z2-mutated",
];

fn load(v: Value) -> Operad {
    Operad::from_json(&v.to_string()).expect("built-in operad is valid")
}

fn binary(name: &str, flavor: &str) -> Value {
    json!({
        "name": name,
        "flavor": flavor,
        "colors": ["c"],
        "generators": [{"id": "caret", "inputs": ["c", "c"], "output": "c"}]
    })
}

/// The free planar operad on one binary generator (Thompson's `F`).
pub fn thompson_f() -> Operad {
    load(binary("F", "planar"))
}

/// The free symmetric operad on one binary generator (Thompson's `V`).
pub fn thompson_v() -> Operad {
    load(binary("V", "symmetric"))
}

/// The free braided operad on one binary generator (braided `V`).
pub fn braided_v() -> Operad {
    load(binary("BV", "braided"))
}

/// Braided `V` with integer twists and the ribbon relation
/// `caret * t^k = σ1^k · ((t^k, t^k) * caret)`.
pub fn ribbon_v() -> Operad {
    let mut v = binary("RV", "braided");
    v["degree1"] = json!("integer-twist");
    v["relations"] = json!("ribbon");
    load(v)
}

/// Integer twists on braided `V` with no relation: twists above a caret stay put.
pub fn ribbon_free() -> Operad {
    let mut v = binary("RV-free", "braided");
    v["degree1"] = json!("integer-twist");
    load(v)
}

/// The cube-cutting operad for `d` axes with cut counts `n[j]` on axis `j`.
/// Dimension 1 defaults to the planar flavor, higher dimensions to symmetric.
pub fn cube(d: usize, n: &[Vec<u64>], flavor: Option<&str>) -> Result<Operad> {
    let flavor = flavor.unwrap_or(if d == 1 { "planar" } else { "symmetric" });
    let v = json!({
        "name": format!("cube{d}"),
        "flavor": flavor,
        "colors": ["c"],
        "relations": {"cube": {"d": d, "N": n}}
    });
    Operad::from_json(&v.to_string())
}

fn map(lin: [[&str; 2]; 2], off: [&str; 2]) -> Value {
    json!({"linear": lin, "offset": off})
}

/// Two colors: the unit square `S` and the right triangle `T` with vertices
/// (0,0), (1,0), (0,1). Generators cut a square into four squares (`SSSS`),
/// a square into four triangles along both diagonals (`TTTT`), and a
/// triangle into two along its altitude (`TT`).
pub fn squares_triangles() -> Operad {
    let quarter = |a: &'static str, b: &'static str| map([["1/2", "0"], ["0", "1/2"]], [a, b]);
    // right angle of each diagonal quarter sits at the center
    let apex = |c1: [&'static str; 2], c2: [&'static str; 2]| map([[c1[0], c2[0]], [c1[1], c2[1]]], ["1/2", "1/2"]);
    let (dl, dr, ur, ul) = (["-1/2", "-1/2"], ["1/2", "-1/2"], ["1/2", "1/2"], ["-1/2", "1/2"]);
    let d4 = vec![
        map([["0", "-1"], ["1", "0"]], ["1", "0"]),
        map([["-1", "0"], ["0", "-1"]], ["1", "1"]),
        map([["0", "1"], ["-1", "0"]], ["0", "1"]),
        map([["0", "1"], ["1", "0"]], ["0", "0"]),
        map([["-1", "0"], ["0", "1"]], ["1", "0"]),
        map([["1", "0"], ["0", "-1"]], ["0", "1"]),
        map([["0", "-1"], ["-1", "0"]], ["1", "1"]),
    ];
    let z2 = vec![map([["0", "1"], ["1", "0"]], ["0", "0"])];
    load(json!({
        "name": "squares-triangles",
        "flavor": "symmetric",
        "colors": ["S", "T"],
        "degree1": {"affine": {"S": d4, "T": z2}},
        "relations": {"affine": {"dimension": 2, "shapes": {
            "S": [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]],
            "T": [["0", "0"], ["1", "0"], ["0", "1"]]
        }}},
        "generators": [
            {"id": "SSSS", "inputs": ["S", "S", "S", "S"], "output": "S",
             "maps": [quarter("0", "0"), quarter("1/2", "0"), quarter("0", "1/2"), quarter("1/2", "1/2")]},
            {"id": "TTTT", "inputs": ["T", "T", "T", "T"], "output": "S",
             "maps": [apex(dl, dr), apex(dr, ur), apex(ur, ul), apex(ul, dl)]},
            {"id": "TT", "inputs": ["T", "T"], "output": "T",
             "maps": [apex(dl, dr), apex(ul, dl)]}
        ]
    }))
}

/// One color with a `Z/2 = {e, s}` of transformations and one binary
/// generator. The coherent table swaps the inputs and labels both with `s`;
/// the mutated one labels only the first, which breaks `(caret*s)*s = caret`.
pub fn binary_z2(mutated: bool) -> Operad {
    let labels = if mutated { json!(["s", "e"]) } else { json!(["s", "s"]) };
    load(json!({
        "name": if mutated { "binary-z2-mutated" } else { "binary-z2" },
        "flavor": "symmetric",
        "colors": ["c"],
        "degree1": {"groupoid": {
            "elements": [{"id": "e", "from": "c", "to": "c"}, {"id": "s", "from": "c", "to": "c"}],
            "identities": {"c": "e"},
            "products": [["s", "s", "e"]]
        }},
        "generators": [{"id": "caret", "inputs": ["c", "c"], "output": "c"}],
        "rewrites": [{"generator": "caret", "label": "s", "prefix": [2, 1], "labels": labels, "result": "caret"}]
    }))
}

/// Looks up a built-in operad by name.
pub fn builtin(name: &str) -> Result<Operad> {
    Ok(match name {
        "F" => thompson_f(),
        "V" => thompson_v(),
        "BV" => braided_v(),
        "RV" => ribbon_v(),
        "RV-free" => ribbon_free(),
        "cube1" => cube(1, &[vec![2, 3]], None)?,
        "cube2" => cube(2, &[vec![2], vec![2]], None)?,
        "cube3" => cube(3, &[vec![2], vec![2], vec![2]], None)?,
        "squares-triangles" => squares_triangles(),
        "binary-z2" => binary_z2(false),
        "binary-z2-mutated" => binary_z2(true),
        _ => {
            return Err(Error::invalid(format!(
                "unknown built-in operad `{name}` (known: {})",
                BUILTIN_NAMES.join(", ")
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_load() {
        for name in BUILTIN_NAMES {
            builtin(name).unwrap();
        }
    }

    #[test]
    fn squares_triangles_shapes() {
        let op = squares_triangles();
        assert_eq!(op.generators().len(), 3);
        assert_eq!(op.symmetries(op.color("S").unwrap()).len(), 8);
        assert_eq!(op.symmetries(op.color("T").unwrap()).len(), 2);
    }

    #[test]
    fn cube_two_cut_squared_is_quarter_grid() {
        let op = cube(1, &[vec![2, 4]], None).unwrap();
        let c2 = op.generator_op(op.generator_id("C2").unwrap());
        let c4 = op.generator_op(op.generator_id("C4").unwrap());
        let both = op.compose_owned(&[c2.clone(), c2.clone()], &c2).unwrap();
        assert_eq!(both, c4);
    }
}
