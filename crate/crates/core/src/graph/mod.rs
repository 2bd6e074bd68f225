//! Graphs, incidence arrays and adjacency construction.
//!
//! A [`Graph`] is a list of edge records, each with weighted source and
//! target vertices (more than one of either makes a hyperedge). Its
//! incidence arrays are edge-by-vertex arrays, and the adjacency array is
//! the product `E_outᵀ ⊕.⊗ E_in`. [`IncidencePair::oracle`] computes the
//! true adjacency pattern by enumeration, without touching `⊕` or `⊗`.

mod document;
pub mod random;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Value};
use crate::array::{ArrayError, AssociativeArray, Coord, Key, MatmulOptions, Triple};

pub use document::{check_word_consistency, document_adjacency, vocabulary_algebra, WordViolation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Source,
    Target,
}

impl std::fmt::Display for Endpoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Endpoint::Source => "source",
            Endpoint::Target => "target",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge key {0} is used twice")]
    DuplicateEdge(Key),
    #[error("edge {0} has no source vertex")]
    NoSources(Key),
    #[error("edge {0} has no target vertex")]
    NoTargets(Key),
    #[error("edge {edge} has a zero weight at {role} {vertex}")]
    ZeroWeight {
        edge: Key,
        vertex: Key,
        role: Endpoint,
    },
    #[error("edge {edge}, {role} {vertex}: {source}")]
    Weight {
        edge: Key,
        vertex: Key,
        role: Endpoint,
        source: Box<AlgebraError>,
    },
    #[error("edge {edge} lists {role} {vertex} twice with different weights")]
    ConflictingWeight {
        edge: Key,
        vertex: Key,
        role: Endpoint,
    },
    #[error("entry ({row}, {col}) is not a token set")]
    NotSetValued { row: Key, col: Key },
    #[error("document array is not square: row and column keysets differ")]
    NotSquare,
    #[error("word-consistency violation {0}")]
    Inconsistent(Box<WordViolation>),
    #[error(transparent)]
    Array(#[from] ArrayError),
}

/// One edge: its key plus weighted source and target vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRecord {
    pub key: Key,
    pub sources: BTreeMap<Key, Value>,
    pub targets: BTreeMap<Key, Value>,
}

impl EdgeRecord {
    /// A simple edge `src → dst`.
    pub fn simple(key: Key, src: Key, dst: Key, out_weight: Value, in_weight: Value) -> Self {
        EdgeRecord {
            key,
            sources: [(src, out_weight)].into(),
            targets: [(dst, in_weight)].into(),
        }
    }
}

/// A directed, weighted graph with possibly parallel edges, self-loops and
/// hyperedges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    edges: Vec<EdgeRecord>,
}

impl Graph {
    /// Checks edge keys are unique and every edge has a source and a target.
    pub fn new(edges: Vec<EdgeRecord>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for e in &edges {
            if !seen.insert(&e.key) {
                return Err(GraphError::DuplicateEdge(e.key.clone()));
            }
            if e.sources.is_empty() {
                return Err(GraphError::NoSources(e.key.clone()));
            }
            if e.targets.is_empty() {
                return Err(GraphError::NoTargets(e.key.clone()));
            }
        }
        Ok(Graph { edges })
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn vertices(&self) -> BTreeSet<&Key> {
        self.edges
            .iter()
            .flat_map(|e| e.sources.keys().chain(e.targets.keys()))
            .collect()
    }

    /// The same graph with every edge's sources and targets swapped.
    pub fn reverse(&self) -> Graph {
        Graph {
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    key: e.key.clone(),
                    sources: e.targets.clone(),
                    targets: e.sources.clone(),
                })
                .collect(),
        }
    }

    /// Builds the source and target incidence arrays. Every weight must be
    /// a nonzero member of `alg`.
    pub fn incidence_arrays(&self, alg: &Algebra) -> Result<IncidencePair, GraphError> {
        let mut out = Vec::new();
        let mut inc = Vec::new();
        for e in &self.edges {
            for (role, ends, dest) in [
                (Endpoint::Source, &e.sources, &mut out),
                (Endpoint::Target, &e.targets, &mut inc),
            ] {
                for (vertex, w) in ends {
                    check_weight(alg, &e.key, vertex, role, w)?;
                    dest.push(Triple::new(e.key.clone(), vertex.clone(), w.clone()));
                }
            }
        }
        Ok(IncidencePair {
            e_out: AssociativeArray::from_triples(out, alg)?,
            e_in: AssociativeArray::from_triples(inc, alg)?,
        })
    }
}

fn check_weight(
    alg: &Algebra,
    edge: &Key,
    vertex: &Key,
    role: Endpoint,
    w: &Value,
) -> Result<(), GraphError> {
    if let Err(source) = alg.check_member(w) {
        return Err(GraphError::Weight {
            edge: edge.clone(),
            vertex: vertex.clone(),
            role,
            source: Box::new(source),
        });
    }
    if alg.is_zero(w) {
        return Err(GraphError::ZeroWeight {
            edge: edge.clone(),
            vertex: vertex.clone(),
            role,
        });
    }
    Ok(())
}

/// Accumulates endpoint lines into edge records. Repeating an edge key adds
/// further sources and targets to the same (hyper)edge.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    edges: Vec<EdgeRecord>,
    index: HashMap<Key, usize>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `src → dst` to edge `edge`. Re-adding an endpoint with the same
    /// weight is a no-op; with a different weight it is an error.
    pub fn add(
        &mut self,
        edge: Key,
        src: Key,
        dst: Key,
        out_weight: Value,
        in_weight: Value,
    ) -> Result<(), GraphError> {
        let i = match self.index.get(&edge) {
            Some(&i) => i,
            None => {
                self.index.insert(edge.clone(), self.edges.len());
                self.edges.push(EdgeRecord {
                    key: edge.clone(),
                    sources: BTreeMap::new(),
                    targets: BTreeMap::new(),
                });
                self.edges.len() - 1
            }
        };
        let record = &mut self.edges[i];
        for (role, ends, vertex, w) in [
            (Endpoint::Source, &mut record.sources, src, out_weight),
            (Endpoint::Target, &mut record.targets, dst, in_weight),
        ] {
            match ends.get(&vertex) {
                Some(existing) if *existing != w => {
                    return Err(GraphError::ConflictingWeight { edge, vertex, role });
                }
                Some(_) => {}
                None => {
                    ends.insert(vertex, w);
                }
            }
        }
        Ok(())
    }

    pub fn build(self) -> Graph {
        // Every record received at least one source and one target on creation.
        Graph { edges: self.edges }
    }
}

/// Source (`e_out`) and target (`e_in`) incidence arrays of one graph.
/// Rows are edge keys, columns vertex keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidencePair {
    pub e_out: AssociativeArray,
    pub e_in: AssociativeArray,
}

impl IncidencePair {
    /// `E_outᵀ ⊕.⊗ E_in`, rows indexed by source vertices.
    pub fn adjacency(&self, alg: &Algebra) -> AssociativeArray {
        self.adjacency_with(alg, &MatmulOptions::default())
    }

    pub fn adjacency_with(&self, alg: &Algebra, opts: &MatmulOptions<'_>) -> AssociativeArray {
        self.e_out.transpose().matmul_with(&self.e_in, alg, opts)
    }

    /// `E_inᵀ ⊕.⊗ E_out`: the adjacency array of the reversed graph.
    pub fn reverse_adjacency(&self, alg: &Algebra) -> AssociativeArray {
        self.reverse_adjacency_with(alg, &MatmulOptions::default())
    }

    pub fn reverse_adjacency_with(
        &self,
        alg: &Algebra,
        opts: &MatmulOptions<'_>,
    ) -> AssociativeArray {
        self.e_in.transpose().matmul_with(&self.e_out, alg, opts)
    }

    /// Pairs `(x, y)` such that some edge has a stored entry in `e_out`
    /// column `x` and in `e_in` column `y`. Reads stored entries only.
    pub fn oracle(&self) -> BTreeSet<Coord> {
        let mut pairs = BTreeSet::new();
        for k in self.e_out.row_keys() {
            for (x, _) in self.e_out.row(k) {
                for (y, _) in self.e_in.row(k) {
                    pairs.insert((x.clone(), y.clone()));
                }
            }
        }
        pairs
    }

    /// The incidence pair of the reversed graph.
    pub fn swapped(&self) -> IncidencePair {
        IncidencePair {
            e_out: self.e_in.clone(),
            e_in: self.e_out.clone(),
        }
    }
}

/// Flips every coordinate of a support set.
pub fn flip(coords: &BTreeSet<Coord>) -> BTreeSet<Coord> {
    coords.iter().map(|(a, b)| (b.clone(), a.clone())).collect()
}

/// Whether `(AB)ᵀ = BᵀAᵀ` holds, comparing values as well as supports.
pub fn check_transpose_identity(a: &AssociativeArray, b: &AssociativeArray, alg: &Algebra) -> bool {
    a.matmul(b, alg).transpose() == b.transpose().matmul(&a.transpose(), alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_builtin, BuiltinParams};
    use crate::array::key;

    fn nat() -> Algebra {
        make_builtin("natural", &BuiltinParams::default()).unwrap()
    }

    fn simple(k: &str, a: &str, b: &str, alg: &Algebra) -> EdgeRecord {
        EdgeRecord::simple(key(k), key(a), key(b), alg.one().clone(), alg.one().clone())
    }

    fn coords(pairs: &[(&str, &str)]) -> BTreeSet<Coord> {
        pairs.iter().map(|(a, b)| (key(a), key(b))).collect()
    }

    fn path(alg: &Algebra) -> Graph {
        Graph::new(vec![
            simple("k1", "a", "b", alg),
            simple("k2", "b", "c", alg),
        ])
        .unwrap()
    }

    #[test]
    fn single_edge_incidence() {
        let n = nat();
        let g = Graph::new(vec![simple("k", "a", "b", &n)]).unwrap();
        let p = g.incidence_arrays(&n).unwrap();
        assert_eq!(p.e_out.support(), coords(&[("k", "a")]));
        assert_eq!(p.e_in.support(), coords(&[("k", "b")]));
        assert_eq!(p.e_out.get("k", "a", &n), &Value::int(1));
    }

    #[test]
    fn parallel_edges_incidence() {
        let z = make_builtin("integer_ring", &BuiltinParams::default()).unwrap();
        let g = Graph::new(vec![
            EdgeRecord::simple(key("k1"), key("a"), key("b"), Value::int(1), Value::int(1)),
            EdgeRecord::simple(key("k2"), key("a"), key("b"), Value::int(-1), Value::int(1)),
        ])
        .unwrap();
        let p = g.incidence_arrays(&z).unwrap();
        assert_eq!(p.e_out.get("k1", "a", &z), &Value::int(1));
        assert_eq!(p.e_out.get("k2", "a", &z), &Value::int(-1));
        assert_eq!(p.oracle(), coords(&[("a", "b")]));
        assert!(p.adjacency(&z).is_empty());
    }

    #[test]
    fn self_loop_incidence() {
        let ps = make_builtin("powerset", &BuiltinParams::universe(["x", "y"])).unwrap();
        let g = Graph::new(vec![EdgeRecord::simple(
            key("k"),
            key("a"),
            key("a"),
            Value::set(["x"]),
            Value::set(["y"]),
        )])
        .unwrap();
        let p = g.incidence_arrays(&ps).unwrap();
        assert_eq!((p.e_out.nnz(), p.e_in.nnz()), (1, 1));
        assert_eq!(p.oracle(), coords(&[("a", "a")]));
        assert!(p.adjacency(&ps).is_empty());
    }

    #[test]
    fn zero_weight_rejected() {
        let n = nat();
        let g = Graph::new(vec![EdgeRecord::simple(
            key("k"),
            key("a"),
            key("b"),
            Value::int(0),
            Value::int(1),
        )])
        .unwrap();
        assert!(matches!(
            g.incidence_arrays(&n),
            Err(GraphError::ZeroWeight {
                role: Endpoint::Source,
                ..
            })
        ));
    }

    #[test]
    fn graph_invariants() {
        let n = nat();
        assert!(matches!(
            Graph::new(vec![simple("k", "a", "b", &n), simple("k", "b", "c", &n)]),
            Err(GraphError::DuplicateEdge(_))
        ));
        let no_target = EdgeRecord {
            key: key("k"),
            sources: [(key("a"), Value::int(1))].into(),
            targets: BTreeMap::new(),
        };
        assert!(matches!(
            Graph::new(vec![no_target]),
            Err(GraphError::NoTargets(_))
        ));
    }

    #[test]
    fn path_adjacency_and_reverse() {
        let n = nat();
        let g = path(&n);
        let p = g.incidence_arrays(&n).unwrap();
        assert_eq!(p.adjacency(&n).support(), coords(&[("a", "b"), ("b", "c")]));
        assert_eq!(p.oracle(), coords(&[("a", "b"), ("b", "c")]));
        assert_eq!(
            p.reverse_adjacency(&n).support(),
            coords(&[("b", "a"), ("c", "b")])
        );
        let rp = g.reverse().incidence_arrays(&n).unwrap();
        assert_eq!(rp.oracle(), coords(&[("b", "a"), ("c", "b")]));
    }

    #[test]
    fn reverse_is_an_involution() {
        let n = nat();
        let g = Graph::new(vec![simple("k", "a", "b", &n), simple("l", "c", "c", &n)]).unwrap();
        let r = g.reverse();
        assert_eq!(r.edges()[0].sources, [(key("b"), Value::int(1))].into());
        assert_eq!(r.edges()[1], g.edges()[1]);
        assert_eq!(r.reverse(), g);
    }

    #[test]
    fn symmetric_digraph_reverse_matches_forward() {
        let n = nat();
        let g = Graph::new(vec![simple("k1", "a", "b", &n), simple("k2", "b", "a", &n)]).unwrap();
        let p = g.incidence_arrays(&n).unwrap();
        assert!(p.reverse_adjacency(&n).equal_support(&p.adjacency(&n)));
    }

    #[test]
    fn empty_graph() {
        let n = nat();
        let p = Graph::default().incidence_arrays(&n).unwrap();
        assert!(p.adjacency(&n).is_empty());
        assert!(p.reverse_adjacency(&n).is_empty());
        assert!(p.oracle().is_empty());
    }

    #[test]
    fn hyperedge_oracle() {
        let n = nat();
        let mut b = GraphBuilder::new();
        b.add(key("k"), key("a"), key("c"), Value::int(1), Value::int(1))
            .unwrap();
        b.add(key("k"), key("b"), key("c"), Value::int(1), Value::int(1))
            .unwrap();
        let g = b.build();
        assert_eq!(g.edges().len(), 1);
        let p = g.incidence_arrays(&n).unwrap();
        assert_eq!(p.oracle(), coords(&[("a", "c"), ("b", "c")]));
        assert_eq!(p.adjacency(&n).support(), p.oracle());
    }

    #[test]
    fn builder_rejects_conflicting_weights() {
        let mut b = GraphBuilder::new();
        b.add(key("k"), key("a"), key("c"), Value::int(1), Value::int(1))
            .unwrap();
        let err = b
            .add(key("k"), key("a"), key("d"), Value::int(2), Value::int(1))
            .unwrap_err();
        assert!(matches!(
            err,
            GraphError::ConflictingWeight {
                role: Endpoint::Source,
                ..
            }
        ));
    }

    #[test]
    fn transpose_identity_cases() {
        let n = nat();
        let a =
            AssociativeArray::from_triples([Triple::new(key("r"), key("k"), Value::int(2))], &n)
                .unwrap();
        let b =
            AssociativeArray::from_triples([Triple::new(key("k"), key("c"), Value::int(3))], &n)
                .unwrap();
        assert!(check_transpose_identity(&a, &b, &n));
        assert!(check_transpose_identity(
            &AssociativeArray::empty(&n),
            &b,
            &n
        ));
        assert!(check_transpose_identity(
            &a,
            &AssociativeArray::empty(&n),
            &n
        ));
    }
}
