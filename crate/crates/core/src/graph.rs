//! Weighted dual graphs of resolutions, with optional arrowheads.
//!
//! A vertex is an exceptional curve `E_i` carrying its self-intersection
//! `E_i^2` and genus `g_i`. Edges are a multiset: two curves meeting in `k`
//! points contribute `k` parallel edges. An arrow at `E_i` with weight `z`
//! records the coefficient of `E_i^*` in the cycle `Z = sum z_i E_i^*`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::lattice::IntersectionForm;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub self_intersection: i64,
    pub genus: u32,
}

impl Vertex {
    pub fn new(id: impl Into<String>, self_intersection: i64, genus: u32) -> Self {
        Vertex {
            id: id.into(),
            self_intersection,
            genus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    /// Index into the vertex list.
    pub at: usize,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("no vertices")]
    Empty,
    #[error("duplicate vertex id `{0}`")]
    DuplicateId(String),
    #[error("vertex index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("self-loop at vertex `{0}` (self-intersection belongs in `self`)")]
    SelfLoop(String),
    #[error("vertex `{id}` has self-intersection {value}; must be <= -1")]
    NonNegativeSelf { id: String, value: i64 },
    #[error("arrow at `{0}` has weight 0; weights must be >= 1")]
    ZeroArrowWeight(String),
    #[error("graph is disconnected: `{0}` is not reachable from the first vertex")]
    Disconnected(String),
    #[error("intersection form is not negative definite (leading minor {index} fails at `{id}`)")]
    NotNegativeDefinite { index: usize, id: String },
}

/// A validated weighted dual graph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDualGraph {
    name: Option<String>,
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    arrows: Vec<Arrow>,
}

impl WeightedDualGraph {
    /// Builds and validates a graph. Edges are index pairs (order within a
    /// pair and across the list is irrelevant; repetition is multiplicity).
    pub fn new(
        name: Option<String>,
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        arrows: Vec<Arrow>,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.id.as_str()) {
                return Err(GraphError::DuplicateId(v.id.clone()));
            }
        }
        let n = vertices.len();
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(i, j)| {
                if i >= n {
                    Err(GraphError::IndexOutOfRange(i))
                } else if j >= n {
                    Err(GraphError::IndexOutOfRange(j))
                } else if i == j {
                    Err(GraphError::SelfLoop(vertices[i].id.clone()))
                } else {
                    Ok((i.min(j), i.max(j)))
                }
            })
            .collect::<Result<_, _>>()?;
        edges.sort_unstable();
        for v in &vertices {
            if v.self_intersection >= 0 {
                return Err(GraphError::NonNegativeSelf {
                    id: v.id.clone(),
                    value: v.self_intersection,
                });
            }
        }
        let mut arrows = arrows;
        for a in &arrows {
            if a.at >= n {
                return Err(GraphError::IndexOutOfRange(a.at));
            }
            if a.weight == 0 {
                return Err(GraphError::ZeroArrowWeight(vertices[a.at].id.clone()));
            }
        }
        arrows.sort_unstable();

        let graph = WeightedDualGraph {
            name,
            vertices,
            edges,
            arrows,
        };
        if let Some(v) = graph.first_unreachable() {
            return Err(GraphError::Disconnected(graph.vertices[v].id.clone()));
        }
        if let Some(index) = IntersectionForm::of(&graph).first_failing_minor() {
            return Err(GraphError::NotNegativeDefinite {
                index: index + 1,
                id: graph.vertices[index].id.clone(),
            });
        }
        Ok(graph)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Canonical edge list: `(i, j)` with `i < j`, sorted, repeated for multiplicity.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Arrows sorted by vertex index, then weight.
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_multiplicity(&self, i: usize, j: usize) -> usize {
        let key = (i.min(j), i.max(j));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    /// Returns a copy with the arrows replaced.
    pub fn with_arrows(&self, arrows: Vec<Arrow>) -> Result<Self, GraphError> {
        WeightedDualGraph::new(
            self.name.clone(),
            self.vertices.clone(),
            self.edges.clone(),
            arrows,
        )
    }

    fn first_unreachable(&self) -> Option<usize> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().position(|s| !s)
    }
}
