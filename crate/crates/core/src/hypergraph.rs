//! Hypergraphs whose vertex–hyperedge incidences carry nonzero real coefficients.
//!
//! A [`Hypergraph`] is immutable once built. Vertex and hyperedge order is the
//! order given at construction and is never re-sorted, so every derived matrix,
//! spectrum and report is reproducible for the same input.

use std::collections::{HashMap, HashSet, VecDeque};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Input description of one hyperedge: identifier plus `(vertex id, coefficient)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperedgeSpec {
    pub id: String,
    pub coefficients: Vec<(String, f64)>,
}

impl HyperedgeSpec {
    pub fn new<I, S>(id: impl Into<String>, coefficients: I) -> Self
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        HyperedgeSpec {
            id: id.into(),
            coefficients: coefficients
                .into_iter()
                .map(|(v, c)| (v.into(), c))
                .collect(),
        }
    }
}

/// Unvalidated hypergraph description, turned into a [`Hypergraph`] by [`HypergraphSpec::build`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HypergraphSpec {
    pub vertices: Vec<String>,
    pub hyperedges: Vec<HyperedgeSpec>,
}

impl HypergraphSpec {
    pub fn new<I, S>(vertices: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        HypergraphSpec {
            vertices: vertices.into_iter().map(Into::into).collect(),
            hyperedges: Vec::new(),
        }
    }

    pub fn hyperedge<I, S>(mut self, id: impl Into<String>, coefficients: I) -> Self
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        self.hyperedges.push(HyperedgeSpec::new(id, coefficients));
        self
    }

    pub fn build(&self) -> Result<Hypergraph> {
        build_hypergraph(self)
    }
}

/// A validated hyperedge. Entries are `(vertex index, coefficient)` sorted by vertex index.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge {
    id: String,
    entries: Vec<(usize, f64)>,
}

impl Hyperedge {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    /// Number of vertices in the hyperedge, `|h|`.
    pub fn cardinality(&self) -> usize {
        self.entries.len()
    }

    pub fn contains(&self, vertex: usize) -> bool {
        self.position(vertex).is_some()
    }

    /// `C_{v,h}`; zero when the vertex is not in the hyperedge.
    pub fn coefficient(&self, vertex: usize) -> f64 {
        self.position(vertex).map_or(0.0, |p| self.entries[p].1)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(v, _)| v)
    }

    fn position(&self, vertex: usize) -> Option<usize> {
        self.entries.binary_search_by_key(&vertex, |&(v, _)| v).ok()
    }
}

/// A hypergraph with real coefficients.
///
/// Invariants, checked at construction:
/// * every stored coefficient is finite and nonzero, so `C_{v,h} = 0` exactly when `v ∉ h`;
/// * every vertex lies in at least one hyperedge, hence `deg v > 0`;
/// * vertex identifiers and hyperedge identifiers are unique within their lists.
///
/// Hyperedges form a multiset: two hyperedges may carry identical coefficient columns.
#[derive(Debug, Clone)]
pub struct Hypergraph {
    vertices: Vec<String>,
    hyperedges: Vec<Hyperedge>,
    vertex_lookup: HashMap<String, usize>,
    hyperedge_lookup: HashMap<String, usize>,
    /// Per vertex: `(hyperedge index, coefficient)` in hyperedge order.
    memberships: Vec<Vec<(usize, f64)>>,
    degrees: Vec<f64>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.hyperedges == other.hyperedges
    }
}

/// Validates a [`HypergraphSpec`] and builds the hypergraph.
pub fn build_hypergraph(spec: &HypergraphSpec) -> Result<Hypergraph> {
    let mut vertex_lookup = HashMap::with_capacity(spec.vertices.len());
    for (i, v) in spec.vertices.iter().enumerate() {
        if vertex_lookup.insert(v.clone(), i).is_some() {
            return Err(Error::DuplicateIdentifier(v.clone()));
        }
    }
    let mut hyperedges = Vec::with_capacity(spec.hyperedges.len());
    let mut seen = HashSet::new();
    for edge in &spec.hyperedges {
        if !seen.insert(edge.id.as_str()) {
            return Err(Error::DuplicateIdentifier(edge.id.clone()));
        }
        if edge.coefficients.is_empty() {
            return Err(Error::EmptyHyperedge(edge.id.clone()));
        }
        let mut entries = Vec::with_capacity(edge.coefficients.len());
        for (vertex, c) in &edge.coefficients {
            let &index = vertex_lookup
                .get(vertex)
                .ok_or_else(|| Error::UnknownVertex(vertex.clone()))?;
            if !c.is_finite() {
                return Err(Error::NonFiniteCoefficient {
                    hyperedge: edge.id.clone(),
                    vertex: vertex.clone(),
                });
            }
            if *c == 0.0 {
                return Err(Error::ZeroCoefficient {
                    hyperedge: edge.id.clone(),
                    vertex: vertex.clone(),
                });
            }
            entries.push((index, *c));
        }
        entries.sort_by_key(|&(v, _)| v);
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateIdentifier(format!(
                "{} in hyperedge {}",
                spec.vertices[w[0].0], edge.id
            )));
        }
        hyperedges.push(Hyperedge {
            id: edge.id.clone(),
            entries,
        });
    }
    Hypergraph::assemble(spec.vertices.clone(), hyperedges)
}

impl Hypergraph {
    /// Builds from vertex names and index-based hyperedges, enforcing the same
    /// invariants as [`build_hypergraph`].
    pub fn from_indexed(
        vertices: Vec<String>,
        hyperedges: Vec<(String, Vec<(usize, f64)>)>,
    ) -> Result<Hypergraph> {
        let spec = HypergraphSpec {
            hyperedges: hyperedges
                .into_iter()
                .map(|(id, entries)| {
                    let coefficients = entries
                        .into_iter()
                        .map(|(v, c)| {
                            let name = vertices
                                .get(v)
                                .cloned()
                                .unwrap_or_else(|| format!("#{v}"));
                            (name, c)
                        })
                        .collect();
                    HyperedgeSpec { id, coefficients }
                })
                .collect(),
            vertices,
        };
        build_hypergraph(&spec)
    }

    fn assemble(vertices: Vec<String>, hyperedges: Vec<Hyperedge>) -> Result<Hypergraph> {
        if vertices.is_empty() {
            return Err(Error::NoVertices);
        }
        let n = vertices.len();
        let mut memberships = vec![Vec::new(); n];
        for (j, h) in hyperedges.iter().enumerate() {
            for &(v, c) in &h.entries {
                memberships[v].push((j, c));
            }
        }
        if let Some(v) = memberships.iter().position(Vec::is_empty) {
            return Err(Error::IsolatedVertex(vertices[v].clone()));
        }
        let degrees = memberships
            .iter()
            .map(|m| m.iter().map(|&(_, c)| c * c).sum())
            .collect();
        let vertex_lookup = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let hyperedge_lookup = hyperedges
            .iter()
            .enumerate()
            .map(|(j, h)| (h.id.clone(), j))
            .collect();
        Ok(Hypergraph {
            vertices,
            hyperedges,
            vertex_lookup,
            hyperedge_lookup,
            memberships,
            degrees,
        })
    }

    /// Number of vertices, `N`.
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Number of hyperedges, `M`.
    pub fn num_hyperedges(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    pub fn hyperedge(&self, index: usize) -> &Hyperedge {
        &self.hyperedges[index]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertex_lookup
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_owned()))
    }

    pub fn hyperedge_index(&self, id: &str) -> Result<usize> {
        self.hyperedge_lookup
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownHyperedge(id.to_owned()))
    }

    /// Hyperedges containing vertex `v`, as `(hyperedge index, coefficient)`.
    pub fn memberships(&self, v: usize) -> &[(usize, f64)] {
        &self.memberships[v]
    }

    /// `C_{v,h}` by index.
    pub fn coefficient(&self, v: usize, h: usize) -> f64 {
        self.hyperedges[h].coefficient(v)
    }

    /// `deg v = Σ_h C_{v,h}²`.
    pub fn degree(&self, id: &str) -> Result<f64> {
        Ok(self.degrees[self.vertex_index(id)?])
    }

    pub fn degree_at(&self, v: usize) -> f64 {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn cardinality(&self, id: &str) -> Result<usize> {
        Ok(self.hyperedges[self.hyperedge_index(id)?].cardinality())
    }

    pub fn max_cardinality(&self) -> usize {
        self.hyperedges
            .iter()
            .map(Hyperedge::cardinality)
            .max()
            .unwrap_or(0)
    }

    /// Dense `N×M` incidence matrix with entries `C_{v_i,h_j}`.
    pub fn incidence_matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.num_vertices(), self.num_hyperedges());
        for (j, h) in self.hyperedges.iter().enumerate() {
            for &(i, c) in &h.entries {
                m[(i, j)] = c;
            }
        }
        m
    }

    /// Connected components as sorted vertex index lists, ordered by smallest member.
    ///
    /// Breadth-first search on the bipartite vertex–hyperedge incidence structure.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut label = vec![usize::MAX; n];
        let mut edge_seen = vec![false; self.num_hyperedges()];
        let mut components = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![start];
            label[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(h, _) in &self.memberships[v] {
                    if std::mem::replace(&mut edge_seen[h], true) {
                        continue;
                    }
                    for w in self.hyperedges[h].vertices() {
                        if label[w] == usize::MAX {
                            label[w] = id;
                            members.push(w);
                            queue.push_back(w);
                        }
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Sub-hypergraph on a union of connected components: the given vertices and
    /// every hyperedge lying entirely inside them. Original relative order is kept.
    pub fn restrict_to(&self, vertices: &[usize]) -> Result<Hypergraph> {
        let mut keep = vec![None; self.num_vertices()];
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for (new, &old) in sorted.iter().enumerate() {
            keep[old] = Some(new);
        }
        let names = sorted.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = self
            .hyperedges
            .iter()
            .filter(|h| h.vertices().all(|v| keep[v].is_some()))
            .map(|h| Hyperedge {
                id: h.id.clone(),
                entries: h.entries.iter().map(|&(v, c)| (keep[v].unwrap(), c)).collect(),
            })
            .collect();
        Hypergraph::assemble(names, edges)
    }

    /// Negates every coefficient of one hyperedge, i.e. switches `(h,+)` and `(h,−)`.
    pub fn flip_orientation(&self, id: &str) -> Result<Hypergraph> {
        let j = self.hyperedge_index(id)?;
        let mut hyperedges = self.hyperedges.clone();
        for e in &mut hyperedges[j].entries {
            e.1 = -e.1;
        }
        Hypergraph::assemble(self.vertices.clone(), hyperedges)
    }

    /// Weak deletion of a vertex set: the vertices leave `V` and every hyperedge,
    /// surviving coefficients are untouched, hyperedges left empty are dropped.
    pub fn weak_delete_vertices<S: AsRef<str>>(&self, removed: &[S]) -> Result<Hypergraph> {
        let mut gone = vec![false; self.num_vertices()];
        for id in removed {
            gone[self.vertex_index(id.as_ref())?] = true;
        }
        self.weak_delete_indices(&gone)
    }

    pub(crate) fn weak_delete_indices(&self, gone: &[bool]) -> Result<Hypergraph> {
        if gone.iter().all(|&g| g) {
            return Err(Error::DeleteAll);
        }
        let mut remap = vec![usize::MAX; self.num_vertices()];
        let mut names = Vec::new();
        for (v, name) in self.vertices.iter().enumerate() {
            if !gone[v] {
                remap[v] = names.len();
                names.push(name.clone());
            }
        }
        let edges: Vec<Hyperedge> = self
            .hyperedges
            .iter()
            .filter_map(|h| {
                let entries: Vec<_> = h
                    .entries
                    .iter()
                    .filter(|&&(v, _)| !gone[v])
                    .map(|&(v, c)| (remap[v], c))
                    .collect();
                (!entries.is_empty()).then(|| Hyperedge {
                    id: h.id.clone(),
                    entries,
                })
            })
            .collect();
        Hypergraph::assemble(names, edges).map_err(|e| match e {
            Error::IsolatedVertex(v) => Error::WouldIsolate(v),
            other => other,
        })
    }

    /// The spec this hypergraph was (or could have been) built from.
    pub fn to_spec(&self) -> HypergraphSpec {
        HypergraphSpec {
            vertices: self.vertices.clone(),
            hyperedges: self
                .hyperedges
                .iter()
                .map(|h| HyperedgeSpec {
                    id: h.id.clone(),
                    coefficients: h
                        .entries
                        .iter()
                        .map(|&(v, c)| (self.vertices[v].clone(), c))
                        .collect(),
                })
                .collect(),
        }
    }
}
