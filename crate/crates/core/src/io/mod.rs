//! The `.wdg.json` weighted-dual-graph format.
//!
//! ```json
//! {
//!   "arrows": [{"at": "E2", "weight": 1}],
//!   "edges": [["E1", "E2"]],
//!   "name": "example",
//!   "vertices": [{"genus": 1, "id": "E1", "self": -2}, {"genus": 0, "id": "E2", "self": -1}]
//! }
//! ```
//!
//! `genus` defaults to 0, `edges`/`arrows` default to empty, repeated edges
//! encode intersection multiplicity. The canonical serialization sorts keys,
//! indents by two spaces, keeps vertices in input order and sorts edges and
//! arrows by vertex index.

pub mod json;

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::graph::{Arrow, GraphError, Vertex, WeightedDualGraph};
use crate::lattice::Cycle;
use crate::rational::{format_q, parse_q, q, Q};
use json::{Json, Pos, Spanned};

pub const FILE_EXTENSION: &str = ".wdg.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticCode {
    Syntax,
    Schema,
    NoVertices,
    DuplicateId,
    UnknownId,
    NonNegativeSelf,
    NegativeGenus,
    BadArrowWeight,
    SelfLoop,
    Disconnected,
    NotNegativeDefinite,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::Syntax => "E001",
            DiagnosticCode::Schema => "E002",
            DiagnosticCode::NoVertices => "E003",
            DiagnosticCode::DuplicateId => "E004",
            DiagnosticCode::UnknownId => "E005",
            DiagnosticCode::NonNegativeSelf => "E006",
            DiagnosticCode::NegativeGenus => "E007",
            DiagnosticCode::BadArrowWeight => "E008",
            DiagnosticCode::SelfLoop => "E009",
            DiagnosticCode::Disconnected => "E010",
            DiagnosticCode::NotNegativeDefinite => "E011",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub pos: Pos,
    pub message: String,
}

impl Diagnostic {
    fn new(code: DiagnosticCode, pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: error[{}]: {}",
            self.pos,
            self.code.as_str(),
            self.message
        )
    }
}

impl std::error::Error for Diagnostic {}

fn schema(at: &Spanned, message: impl Into<String>) -> Diagnostic {
    Diagnostic::new(DiagnosticCode::Schema, at.pos, message)
}

fn members<'a>(
    v: &'a Spanned,
    what: &str,
    allowed: &[&str],
) -> Result<HashMap<&'a str, &'a Spanned>, Diagnostic> {
    let Json::Object(m) = &v.value else {
        return Err(schema(
            v,
            format!("{what} must be an object, found {}", v.kind()),
        ));
    };
    let mut out = HashMap::new();
    for (k, val) in m {
        let key = k.as_str().expect("object keys are strings");
        if !allowed.contains(&key) {
            return Err(schema(k, format!("unknown key `{key}` in {what}")));
        }
        if out.insert(key, val).is_some() {
            return Err(schema(k, format!("repeated key `{key}` in {what}")));
        }
    }
    Ok(out)
}

fn array<'a>(v: &'a Spanned, what: &str) -> Result<&'a [Spanned], Diagnostic> {
    match &v.value {
        Json::Array(items) => Ok(items),
        _ => Err(schema(
            v,
            format!("{what} must be an array, found {}", v.kind()),
        )),
    }
}

fn string<'a>(v: &'a Spanned, what: &str) -> Result<&'a str, Diagnostic> {
    v.as_str()
        .ok_or_else(|| schema(v, format!("{what} must be a string, found {}", v.kind())))
}

fn integer(v: &Spanned, what: &str) -> Result<i64, Diagnostic> {
    v.as_i64()
        .ok_or_else(|| schema(v, format!("{what} must be an integer, found {}", v.kind())))
}

fn syntax(text: &str) -> Result<Spanned, Diagnostic> {
    json::parse(text).map_err(|e| Diagnostic::new(DiagnosticCode::Syntax, e.pos, e.message))
}

/// Parses and fully validates a graph document.
pub fn parse(text: &str) -> Result<WeightedDualGraph, Diagnostic> {
    let root = syntax(text)?;
    let top = members(&root, "document", &["name", "vertices", "edges", "arrows"])?;

    let name = match top.get("name") {
        None => None,
        Some(v) if v.value == Json::Null => None,
        Some(v) => Some(string(v, "`name`")?.to_string()),
    };

    let Some(vertices_node) = top.get("vertices") else {
        return Err(schema(&root, "missing key `vertices`"));
    };
    let vertex_nodes = array(vertices_node, "`vertices`")?;
    if vertex_nodes.is_empty() {
        return Err(Diagnostic::new(
            DiagnosticCode::NoVertices,
            vertices_node.pos,
            "no vertices",
        ));
    }

    let mut vertices = Vec::with_capacity(vertex_nodes.len());
    let mut index: HashMap<String, usize> = HashMap::new();
    for node in vertex_nodes {
        let m = members(node, "vertex", &["id", "self", "genus"])?;
        let id_node = m
            .get("id")
            .ok_or_else(|| schema(node, "vertex is missing `id`"))?;
        let id = string(id_node, "`id`")?;
        let self_node = m
            .get("self")
            .ok_or_else(|| schema(node, format!("vertex `{id}` is missing `self`")))?;
        let self_int = integer(self_node, "`self`")?;
        if self_int >= 0 {
            return Err(Diagnostic::new(
                DiagnosticCode::NonNegativeSelf,
                self_node.pos,
                format!("vertex `{id}` has self-intersection {self_int}; must be <= -1"),
            ));
        }
        let genus = match m.get("genus") {
            None => 0,
            Some(g) => {
                let v = integer(g, "`genus`")?;
                u32::try_from(v).map_err(|_| {
                    Diagnostic::new(
                        DiagnosticCode::NegativeGenus,
                        g.pos,
                        format!("vertex `{id}` has genus {v}; must be a nonnegative integer"),
                    )
                })?
            }
        };
        if index.insert(id.to_string(), vertices.len()).is_some() {
            return Err(Diagnostic::new(
                DiagnosticCode::DuplicateId,
                id_node.pos,
                format!("duplicate vertex id `{id}`"),
            ));
        }
        vertices.push(Vertex::new(id, self_int, genus));
    }
    let lookup = |v: &Spanned, what: &str| -> Result<usize, Diagnostic> {
        let id = string(v, what)?;
        index.get(id).copied().ok_or_else(|| {
            Diagnostic::new(
                DiagnosticCode::UnknownId,
                v.pos,
                format!("{what} refers to unknown vertex `{id}`"),
            )
        })
    };

    let mut edges = Vec::new();
    if let Some(e) = top.get("edges") {
        for node in array(e, "`edges`")? {
            let pair = array(node, "edge")?;
            if pair.len() != 2 {
                return Err(schema(node, "edge must list exactly two vertex ids"));
            }
            let (i, j) = (lookup(&pair[0], "edge")?, lookup(&pair[1], "edge")?);
            if i == j {
                return Err(Diagnostic::new(
                    DiagnosticCode::SelfLoop,
                    node.pos,
                    format!(
                        "self-loop at `{}`; self-intersection belongs in `self`",
                        vertices[i].id
                    ),
                ));
            }
            edges.push((i, j));
        }
    }

    let mut arrows = Vec::new();
    if let Some(a) = top.get("arrows") {
        for node in array(a, "`arrows`")? {
            let m = members(node, "arrow", &["at", "weight"])?;
            let at_node = m
                .get("at")
                .ok_or_else(|| schema(node, "arrow is missing `at`"))?;
            let at = lookup(at_node, "arrow")?;
            let w_node = m
                .get("weight")
                .ok_or_else(|| schema(node, "arrow is missing `weight`"))?;
            let w = integer(w_node, "`weight`")?;
            if w < 1 {
                return Err(Diagnostic::new(
                    DiagnosticCode::BadArrowWeight,
                    w_node.pos,
                    format!(
                        "arrow weight {w} at `{}`; weights must be >= 1",
                        vertices[at].id
                    ),
                ));
            }
            arrows.push(Arrow {
                at,
                weight: w as u64,
            });
        }
    }

    WeightedDualGraph::new(name, vertices, edges, arrows).map_err(|e| {
        let vertex_pos = |id: &str| vertex_nodes[index[id]].pos;
        let (code, pos) = match &e {
            GraphError::Disconnected(id) => (DiagnosticCode::Disconnected, vertex_pos(id)),
            GraphError::NotNegativeDefinite { id, .. } => {
                (DiagnosticCode::NotNegativeDefinite, vertex_pos(id))
            }
            // Remaining variants are rejected above with their own positions.
            _ => (DiagnosticCode::Schema, root.pos),
        };
        Diagnostic::new(code, pos, e.to_string())
    })
}

/// Canonical text form (sorted keys, two-space indent, trailing newline).
pub fn serialize(graph: &WeightedDualGraph) -> String {
    let ids: Vec<&str> = graph.vertices().iter().map(|v| v.id.as_str()).collect();
    let mut doc = Map::new();
    if let Some(name) = graph.name() {
        doc.insert("name".into(), Value::String(name.to_string()));
    }
    doc.insert(
        "vertices".into(),
        Value::Array(
            graph
                .vertices()
                .iter()
                .map(|v| json!({"id": v.id, "self": v.self_intersection, "genus": v.genus}))
                .collect(),
        ),
    );
    doc.insert(
        "edges".into(),
        Value::Array(
            graph
                .edges()
                .iter()
                .map(|&(i, j)| json!([ids[i], ids[j]]))
                .collect(),
        ),
    );
    doc.insert(
        "arrows".into(),
        Value::Array(
            graph
                .arrows()
                .iter()
                .map(|a| json!({"at": ids[a.at], "weight": a.weight}))
                .collect(),
        ),
    );
    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
    s.push('\n');
    s
}

/// Parses a cycle document: an object mapping vertex ids to integers or
/// `"p/q"` strings. Omitted vertices get coefficient 0.
pub fn parse_cycle(text: &str, graph: &WeightedDualGraph) -> Result<Cycle, Diagnostic> {
    let root = syntax(text)?;
    let Json::Object(m) = &root.value else {
        return Err(schema(
            &root,
            format!("cycle must be an object, found {}", root.kind()),
        ));
    };
    let mut coeffs: Vec<Q> = vec![q(0); graph.len()];
    let mut seen = vec![false; graph.len()];
    for (k, v) in m {
        let id = k.as_str().expect("object keys are strings");
        let i = graph.index_of(id).ok_or_else(|| {
            Diagnostic::new(
                DiagnosticCode::UnknownId,
                k.pos,
                format!("cycle refers to unknown vertex `{id}`"),
            )
        })?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(schema(k, format!("repeated vertex `{id}` in cycle")));
        }
        coeffs[i] = match &v.value {
            Json::Number(_) => q(integer(v, "coefficient")?),
            Json::String(s) => {
                parse_q(s).ok_or_else(|| schema(v, format!("`{s}` is not a rational number")))?
            }
            _ => {
                return Err(schema(
                    v,
                    format!("coefficient must be a number, found {}", v.kind()),
                ))
            }
        };
    }
    Ok(Cycle::new(coeffs))
}

/// Inverse of [`parse_cycle`]; every vertex is listed.
pub fn serialize_cycle(cycle: &Cycle, graph: &WeightedDualGraph) -> String {
    let mut m = Map::new();
    for (v, c) in graph.vertices().iter().zip(cycle.coeffs()) {
        let value = match crate::rational::to_i64(c) {
            Some(i) => Value::from(i),
            None => Value::String(format_q(c)),
        };
        m.insert(v.id.clone(), value);
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
    s.push('\n');
    s
}
