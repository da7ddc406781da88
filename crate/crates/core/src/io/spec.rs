//! The JSON algebra description and the bundled examples.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, BoundQuiverAlgebra, Quiver, Relation};
use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: Rational,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_path_length: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{field}: {message}")]
    Reference { field: String, message: String },
}

fn reference(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Reference {
        field: field.into(),
        message: message.into(),
    }
}

/// Strict parse: unknown keys, duplicate names and dangling references are
/// all rejected.
pub fn parse_spec(text: &str) -> Result<AlgebraSpec, ParseError> {
    let spec: AlgebraSpec = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    spec.check()?;
    Ok(spec)
}

impl AlgebraSpec {
    fn check(&self) -> Result<(), ParseError> {
        if self.vertices.is_empty() {
            return Err(reference("vertices", "at least one vertex is required"));
        }
        let mut seen = HashSet::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if !seen.insert(v.as_str()) {
                return Err(reference(format!("vertices[{i}]"), format!("duplicate vertex {v:?}")));
            }
        }
        let mut names = HashSet::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if !names.insert(a.name.as_str()) {
                return Err(reference(format!("arrows[{i}].name"), format!("duplicate arrow {:?}", a.name)));
            }
            for (field, v) in [("from", &a.from), ("to", &a.to)] {
                if !seen.contains(v.as_str()) {
                    return Err(reference(format!("arrows[{i}].{field}"), format!("unknown vertex {v:?}")));
                }
            }
        }
        for (r, rel) in self.relations.iter().enumerate() {
            if rel.is_empty() {
                return Err(reference(format!("relations[{r}]"), "empty relation"));
            }
            for (t, term) in rel.iter().enumerate() {
                for (k, a) in term.path.iter().enumerate() {
                    if !names.contains(a.as_str()) {
                        return Err(reference(
                            format!("relations[{r}][{t}].path[{k}]"),
                            format!("unknown arrow {a:?}"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn quiver(&self) -> Result<Quiver, AlgebraError> {
        Quiver::new(
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| (a.name.clone(), a.from.clone(), a.to.clone()))
                .collect(),
        )
    }

    pub fn build(&self) -> Result<BoundQuiverAlgebra, AlgebraError> {
        let q = self.quiver()?;
        let rels = self
            .relations
            .iter()
            .map(|rel| {
                let terms: Vec<(Rational, Vec<&str>)> = rel
                    .iter()
                    .map(|t| (t.coeff.clone(), t.path.iter().map(String::as_str).collect()))
                    .collect();
                Relation::from_names(&q, &terms)
            })
            .collect::<Result<Vec<_>, _>>()?;
        BoundQuiverAlgebra::build(q, rels, self.max_path_length)
    }
}

pub const EXAMPLES: [&str; 6] = ["a2-path", "a3-rel", "sym-local", "jacobian-b", "preproj-a2", "one-simple"];

pub fn example_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "a2-path" => include_str!("../../algebras/a2-path.json"),
        "a3-rel" => include_str!("../../algebras/a3-rel.json"),
        "sym-local" => include_str!("../../algebras/sym-local.json"),
        "jacobian-b" => include_str!("../../algebras/jacobian-b.json"),
        "preproj-a2" => include_str!("../../algebras/preproj-a2.json"),
        "one-simple" => include_str!("../../algebras/one-simple.json"),
        _ => return None,
    })
}

/// Parses and builds a bundled example. Panics only if a bundled file is
/// broken, which the tests rule out.
pub fn example(name: &str) -> Option<BoundQuiverAlgebra> {
    let text = example_text(name)?;
    Some(
        parse_spec(text)
            .and_then(|s| s.build().map_err(|e| reference(name, e.to_string())))
            .unwrap_or_else(|e| panic!("bundled example {name} is invalid: {e}")),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_specs_parse() {
        let a2 = parse_spec(example_text("a2-path").unwrap()).unwrap();
        assert_eq!((a2.vertices.len(), a2.arrows.len(), a2.relations.len()), (2, 1, 0));
        let a3 = parse_spec(example_text("a3-rel").unwrap()).unwrap();
        assert_eq!((a3.vertices.len(), a3.arrows.len(), a3.relations.len()), (3, 2, 1));
        for name in EXAMPLES {
            assert!(example(name).is_some());
        }
    }

    #[test]
    fn bundled_dimensions() {
        let dims: Vec<(usize, usize)> = ["a2-path", "a3-rel", "sym-local", "preproj-a2", "one-simple"]
            .iter()
            .map(|n| {
                let a = example(n).unwrap();
                (a.dim(), a.loewy_length())
            })
            .collect();
        assert_eq!(dims, [(3, 2), (5, 2), (8, 3), (4, 2), (1, 1)]);
    }

    #[test]
    fn rejects_bad_documents() {
        let unknown_arrow = r#"{"vertices":["1","2"],"arrows":[{"name":"a","from":"1","to":"2"}],
            "relations":[[{"coeff":"1","path":["a","b"]}]]}"#;
        assert!(matches!(parse_spec(unknown_arrow), Err(ParseError::Reference { .. })));
        let unknown_key = r#"{"vertices":["1"],"arrows":[],"colour":"red"}"#;
        assert!(matches!(parse_spec(unknown_key), Err(ParseError::Syntax { .. })));
        let dup = r#"{"vertices":["1","1"],"arrows":[]}"#;
        assert!(matches!(parse_spec(dup), Err(ParseError::Reference { .. })));
        let bad_coeff = r#"{"vertices":["1"],"arrows":[{"name":"a","from":"1","to":"1"}],
            "relations":[[{"coeff":"1/0","path":["a","a"]}]]}"#;
        let err = parse_spec(bad_coeff).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }), "{err}");
    }
}
