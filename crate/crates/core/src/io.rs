//! The JSON hypergraph document.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "vertices": ["v1", "v2"],
//!   "hyperedges": [
//!     {"id": "h1", "coefficients": {"v1": 1, "v2": 1}},
//!     {"id": "h2", "coefficients": {"v1": 1, "v2": 2}}
//!   ]
//! }
//! ```
//!
//! Parsing goes through a small order-preserving tree so that duplicate keys are
//! reported instead of silently overwritten, and every schema problem carries a
//! path such as `hyperedges[1].coefficients.v2`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::de::{self, Deserialize, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::ser::{Serialize, SerializeMap, SerializeStruct, Serializer};
use thiserror::Error;

use crate::error::Error;
use crate::hypergraph::{build_hypergraph, Hypergraph, HypergraphSpec};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("invalid hypergraph at {path}: {source}")]
    Invalid { path: String, source: Error },
}

enum Node {
    Null,
    Bool,
    Number(f64),
    String(String),
    Array(Vec<Node>),
    Object(Vec<(String, Node)>),
}

impl Node {
    fn kind(&self) -> &'static str {
        match self {
            Node::Null => "null",
            Node::Bool => "a boolean",
            Node::Number(_) => "a number",
            Node::String(_) => "a string",
            Node::Array(_) => "an array",
            Node::Object(_) => "an object",
        }
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct NodeVisitor;
        impl<'de> Visitor<'de> for NodeVisitor {
            type Value = Node;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a JSON value")
            }
            fn visit_unit<E>(self) -> Result<Node, E> {
                Ok(Node::Null)
            }
            fn visit_bool<E>(self, _: bool) -> Result<Node, E> {
                Ok(Node::Bool)
            }
            fn visit_i64<E>(self, x: i64) -> Result<Node, E> {
                Ok(Node::Number(x as f64))
            }
            fn visit_u64<E>(self, x: u64) -> Result<Node, E> {
                Ok(Node::Number(x as f64))
            }
            fn visit_f64<E>(self, x: f64) -> Result<Node, E> {
                Ok(Node::Number(x))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Node, E> {
                Ok(Node::String(s.to_owned()))
            }
            fn visit_string<E>(self, s: String) -> Result<Node, E> {
                Ok(Node::String(s))
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Node, A::Error> {
                let mut out = Vec::new();
                while let Some(x) = seq.next_element()? {
                    out.push(x);
                }
                Ok(Node::Array(out))
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Node, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry()? {
                    out.push((k, v));
                }
                Ok(Node::Object(out))
            }
        }
        d.deserialize_any(NodeVisitor)
    }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

/// Keys of an object, rejecting duplicates and anything outside `allowed`.
fn fields<'a>(
    node: &'a Node,
    path: &str,
    allowed: &[&str],
) -> Result<HashMap<&'a str, &'a Node>, DocumentError> {
    let Node::Object(entries) = node else {
        return Err(schema(path, format!("expected an object, found {}", node.kind())));
    };
    let mut out = HashMap::new();
    for (k, v) in entries {
        if !allowed.contains(&k.as_str()) {
            return Err(schema(join(path, k), "unknown field"));
        }
        if out.insert(k.as_str(), v).is_some() {
            return Err(schema(join(path, k), "duplicate key"));
        }
    }
    Ok(out)
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_owned()
    } else {
        format!("{path}.{key}")
    }
}

fn required<'a>(
    map: &HashMap<&str, &'a Node>,
    path: &str,
    key: &str,
) -> Result<&'a Node, DocumentError> {
    map.get(key)
        .copied()
        .ok_or_else(|| schema(join(path, key), "missing field"))
}

fn string(node: &Node, path: &str) -> Result<String, DocumentError> {
    match node {
        Node::String(s) => Ok(s.clone()),
        other => Err(schema(path, format!("expected a string, found {}", other.kind()))),
    }
}

fn array<'a>(node: &'a Node, path: &str) -> Result<&'a [Node], DocumentError> {
    match node {
        Node::Array(a) => Ok(a),
        other => Err(schema(path, format!("expected an array, found {}", other.kind()))),
    }
}

/// Parses a document into a validated hypergraph.
pub fn parse(text: &str) -> Result<Hypergraph, DocumentError> {
    let root: Node = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let spec = to_spec(&root)?;
    build_hypergraph(&spec).map_err(|source| DocumentError::Invalid {
        path: String::new(),
        source,
    })
}

fn to_spec(root: &Node) -> Result<HypergraphSpec, DocumentError> {
    let top = fields(root, "", &["format_version", "vertices", "hyperedges"])?;
    match required(&top, "", "format_version")? {
        Node::Number(v) if *v == FORMAT_VERSION as f64 => {}
        Node::Number(v) => {
            return Err(schema(
                "format_version",
                format!("unsupported version {v}, expected {FORMAT_VERSION}"),
            ))
        }
        other => {
            return Err(schema(
                "format_version",
                format!("expected a number, found {}", other.kind()),
            ))
        }
    }

    let mut vertices = Vec::new();
    let mut vertex_pos = HashMap::new();
    for (i, v) in array(required(&top, "", "vertices")?, "vertices")?.iter().enumerate() {
        let path = format!("vertices[{i}]");
        let id = string(v, &path)?;
        if vertex_pos.insert(id.clone(), i).is_some() {
            return Err(invalid(path, Error::DuplicateIdentifier(id)));
        }
        vertices.push(id);
    }

    let mut spec = HypergraphSpec::new(vertices.clone());
    let mut covered = HashSet::new();
    let mut edge_ids = HashSet::new();
    for (j, e) in array(required(&top, "", "hyperedges")?, "hyperedges")?.iter().enumerate() {
        let path = format!("hyperedges[{j}]");
        let obj = fields(e, &path, &["id", "coefficients"])?;
        let id_path = join(&path, "id");
        let id = string(required(&obj, &path, "id")?, &id_path)?;
        if !edge_ids.insert(id.clone()) {
            return Err(invalid(id_path, Error::DuplicateIdentifier(id)));
        }
        let coeff_path = join(&path, "coefficients");
        let Node::Object(entries) = required(&obj, &path, "coefficients")? else {
            return Err(schema(coeff_path, "expected an object of vertex coefficients"));
        };
        if entries.is_empty() {
            return Err(invalid(coeff_path, Error::EmptyHyperedge(id)));
        }
        let mut seen = HashSet::new();
        let mut coefficients = Vec::with_capacity(entries.len());
        for (vertex, value) in entries {
            let entry_path = join(&coeff_path, vertex);
            if !seen.insert(vertex.as_str()) {
                return Err(schema(entry_path, "duplicate key"));
            }
            if !vertex_pos.contains_key(vertex) {
                return Err(invalid(entry_path, Error::UnknownVertex(vertex.clone())));
            }
            let c = match value {
                Node::Number(c) => *c,
                other => {
                    return Err(schema(
                        entry_path,
                        format!("expected a number, found {}", other.kind()),
                    ))
                }
            };
            if c == 0.0 {
                return Err(schema(entry_path, "coefficient must be nonzero"));
            }
            if !c.is_finite() {
                return Err(schema(entry_path, "coefficient must be finite"));
            }
            covered.insert(vertex.as_str());
            coefficients.push((vertex.clone(), c));
        }
        spec = spec.hyperedge(id, coefficients);
    }
    if let Some(i) = vertices.iter().position(|v| !covered.contains(v.as_str())) {
        return Err(invalid(
            format!("vertices[{i}]"),
            Error::IsolatedVertex(vertices[i].clone()),
        ));
    }
    if vertices.is_empty() {
        return Err(invalid("vertices", Error::NoVertices));
    }
    Ok(spec)
}

fn invalid(path: impl Into<String>, source: Error) -> DocumentError {
    DocumentError::Invalid {
        path: path.into(),
        source,
    }
}

/// Pretty-printed document; coefficients are listed in vertex order and printed
/// with the shortest representation that parses back to the same `f64`.
pub fn serialize(h: &Hypergraph) -> String {
    let mut s = serde_json::to_string_pretty(&Document(h)).expect("document serializes");
    s.push('\n');
    s
}

struct Document<'a>(&'a Hypergraph);
struct EdgeDoc<'a>(&'a Hypergraph, usize);
struct Coefficients<'a>(&'a Hypergraph, usize);

impl Serialize for Document<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let h = self.0;
        let mut st = s.serialize_struct("Document", 3)?;
        st.serialize_field("format_version", &FORMAT_VERSION)?;
        st.serialize_field("vertices", h.vertices())?;
        let edges: Vec<EdgeDoc> = (0..h.num_hyperedges()).map(|j| EdgeDoc(h, j)).collect();
        st.serialize_field("hyperedges", &edges)?;
        st.end()
    }
}

impl Serialize for EdgeDoc<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Hyperedge", 2)?;
        st.serialize_field("id", self.0.hyperedge(self.1).id())?;
        st.serialize_field("coefficients", &Coefficients(self.0, self.1))?;
        st.end()
    }
}

impl Serialize for Coefficients<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries = self.0.hyperedge(self.1).entries();
        let mut map = s.serialize_map(Some(entries.len()))?;
        for &(v, c) in entries {
            map.serialize_entry(&self.0.vertices()[v], &c)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_VERTEX: &str = r#"{
  "format_version": 1,
  "vertices": ["v1", "v2"],
  "hyperedges": [
    {"id": "h1", "coefficients": {"v1": 1, "v2": 1}},
    {"id": "h2", "coefficients": {"v1": 1, "v2": 2}}
  ]
}"#;

    #[test]
    fn parses_example() {
        let h = parse(TWO_VERTEX).unwrap();
        assert_eq!((h.num_vertices(), h.num_hyperedges()), (2, 2));
        assert_eq!(h.coefficient(1, 1), 2.0);
        assert_eq!(parse(&serialize(&h)).unwrap(), h);
    }

    #[test]
    fn zero_coefficient_is_a_schema_error_at_the_entry() {
        let doc = TWO_VERTEX.replace(r#""v2": 2"#, r#""v2": 0"#);
        assert_eq!(
            parse(&doc),
            Err(schema("hyperedges[1].coefficients.v2", "coefficient must be nonzero"))
        );
    }

    #[test]
    fn syntax_error_has_position() {
        let doc = TWO_VERTEX.replace(r#""v2": 2"#, r#""v2" 2"#);
        match parse(&doc) {
            Err(DocumentError::Syntax { line, .. }) => assert_eq!(line, 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        let doc = TWO_VERTEX.replace(r#""v1": 1, "v2": 2"#, r#""v1": 1, "v1": 2"#);
        assert_eq!(
            parse(&doc),
            Err(schema("hyperedges[1].coefficients.v1", "duplicate key"))
        );
    }

    #[test]
    fn semantic_errors_carry_paths() {
        let unknown = TWO_VERTEX.replace(r#""v2": 2"#, r#""v9": 2"#);
        assert!(matches!(
            parse(&unknown),
            Err(DocumentError::Invalid { ref path, source: Error::UnknownVertex(_) })
                if path == "hyperedges[1].coefficients.v9"
        ));
        let isolated = TWO_VERTEX.replace(r#"["v1", "v2"]"#, r#"["v1", "v2", "v3"]"#);
        assert!(matches!(
            parse(&isolated),
            Err(DocumentError::Invalid { ref path, source: Error::IsolatedVertex(_) })
                if path == "vertices[2]"
        ));
        let version = TWO_VERTEX.replace(r#""format_version": 1"#, r#""format_version": 2"#);
        assert!(matches!(parse(&version), Err(DocumentError::Schema { ref path, .. }) if path == "format_version"));
        let missing = TWO_VERTEX.replace(r#""format_version": 1,"#, "");
        assert_eq!(parse(&missing), Err(schema("format_version", "missing field")));
    }
}
