//! Materialized origami flip graphs, their traversal metrics and exporters.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::vertex_count_formula;
use crate::enumerate::{enumerate_valid, MajorityFilter};
use crate::error::{OfgError, Result};
use crate::limits::Limits;
use crate::mv::{check_degree, MvAssignment};

/// One flip: `vertices[u]` and `vertices[v]` differ by flipping `face`
/// (1-based). Always `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub face: usize,
}

/// Vertices are valid assignments sorted by bit-packed value; one edge per
/// (vertex pair, face). Only `A_2` has two faces joining the same pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipGraph {
    degree: usize,
    vertices: Vec<MvAssignment>,
    edges: Vec<Edge>,
    multigraph: bool,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl FlipGraph {
    /// Assemble from a sorted vertex list and a predicate telling whether
    /// flipping a face of a vertex lands on another vertex.
    pub(crate) fn assemble<F>(degree: usize, vertices: Vec<MvAssignment>, flippable: F) -> Result<Self>
    where
        F: Fn(&MvAssignment, usize) -> bool + Sync,
    {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let edges: Vec<Edge> = vertices
            .par_iter()
            .enumerate()
            .flat_map_iter(|(u, mv)| {
                let vertices = &vertices;
                let flippable = &flippable;
                (0..degree).filter_map(move |face| {
                    if !flippable(mv, face) {
                        return None;
                    }
                    let w = mv.flip0(face);
                    let v = vertices.binary_search(&w).ok()?;
                    (v > u).then_some(Edge { u, v, face: face + 1 })
                })
            })
            .collect();
        Self::from_parts(degree, vertices, edges)
    }

    fn from_parts(degree: usize, vertices: Vec<MvAssignment>, mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort_unstable();
        let multigraph = edges.windows(2).any(|w| w[0].u == w[1].u && w[0].v == w[1].v);
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for e in &edges {
            adjacency[e.u].push((e.v, e.face));
            adjacency[e.v].push((e.u, e.face));
        }
        Ok(Self {
            degree,
            vertices,
            edges,
            multigraph,
            adjacency,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn vertices(&self) -> &[MvAssignment] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_multigraph(&self) -> bool {
        self.multigraph
    }

    pub fn index_of(&self, mv: &MvAssignment) -> Option<usize> {
        self.vertices.binary_search(mv).ok()
    }

    /// `(neighbor, face)` pairs of vertex `u`.
    pub fn neighbors(&self, u: usize) -> &[(usize, usize)] {
        &self.adjacency[u]
    }

    pub fn vertex_degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn contains_edge(&self, a: &MvAssignment, b: &MvAssignment, face: usize) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(x), Some(y)) => {
                let (u, v) = (x.min(y), x.max(y));
                self.edges.binary_search(&Edge { u, v, face }).is_ok()
            }
            _ => false,
        }
    }

    pub fn degree_histogram(&self) -> BTreeMap<usize, u64> {
        let mut hist = BTreeMap::new();
        for adj in &self.adjacency {
            *hist.entry(adj.len()).or_insert(0) += 1;
        }
        hist
    }

    /// Whether this graph has exactly the vertex set of `OFG(A_2n)`, so that
    /// rotations, reflections and complement act on it as automorphisms.
    pub fn is_full_uniform(&self) -> bool {
        let n = self.degree / 2;
        num_traits::ToPrimitive::to_usize(&vertex_count_formula(n)) == Some(self.vertices.len())
            && self.vertices.iter().all(MvAssignment::is_valid_uniform)
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertices.len()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &(v, _) in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: &MvAssignment, b: &MvAssignment) -> Option<u32> {
        let (s, t) = (self.index_of(a)?, self.index_of(b)?);
        self.bfs_distances(s)[t]
    }

    /// Connected-component label per vertex, labels dense from 0 in order of
    /// first vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.vertices.len()];
        let mut next = 0;
        for s in 0..self.vertices.len() {
            if label[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            label[s] = next;
            while let Some(u) = stack.pop() {
                for &(v, _) in &self.adjacency[u] {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    /// A proper 2-coloring, or `None` if some cycle is odd.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.vertices.len()];
        for s in 0..self.vertices.len() {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &self.adjacency[u] {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Eccentricities, connectivity and diameter. With
    /// [`BfsSources::SymmetryOrbits`] on a full `OFG(A_2n)`, one BFS runs per
    /// orbit of the rotation/reflection/complement group and its result is
    /// shared across the orbit; otherwise every vertex is a source.
    pub fn bfs_metrics(&self, sources: BfsSources) -> BfsMetrics {
        let use_orbits = sources == BfsSources::SymmetryOrbits && self.is_full_uniform();
        let representative: Vec<usize> = if use_orbits {
            self.vertices
                .iter()
                .map(|mv| self.index_of(&orbit_representative(mv)).expect("orbit stays in graph"))
                .collect()
        } else {
            (0..self.vertices.len()).collect()
        };
        let mut reps: Vec<usize> = representative.clone();
        reps.sort_unstable();
        reps.dedup();

        let results: Vec<(usize, u32, bool)> = reps
            .par_iter()
            .map(|&s| {
                let dist = self.bfs_distances(s);
                let reached = dist.iter().all(Option::is_some);
                let ecc = dist.iter().flatten().copied().max().unwrap_or(0);
                (s, ecc, reached)
            })
            .collect();
        let by_rep: BTreeMap<usize, (u32, bool)> =
            results.into_iter().map(|(s, e, r)| (s, (e, r))).collect();

        let eccentricities: Vec<u32> = representative.iter().map(|r| by_rep[r].0).collect();
        let connected = !self.vertices.is_empty() && by_rep.values().all(|&(_, r)| r);
        BfsMetrics {
            connected,
            diameter: eccentricities.iter().copied().max().unwrap_or(0),
            eccentricities,
            sources: by_rep.len(),
        }
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => self.to_dot(),
            ExportFormat::Json => self.to_json(),
            ExportFormat::Csv => self.to_csv(),
        }
    }

    /// Graphviz document; nodes are MV strings, edge labels are faces.
    pub fn to_dot(&self) -> String {
        let name = if self.is_full_uniform() { "ofg_a2n" } else { "ofg_c" };
        let mut out = format!("graph {name} {{\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\" [label=\"{}\"];",
                self.vertices[e.u], self.vertices[e.v], e.face
            );
        }
        out.push_str("}\n");
        out
    }

    /// `{degree, multigraph, vertices, edges: [[u, v, face], ...]}` on one
    /// line, followed by a newline.
    pub fn to_json(&self) -> String {
        let doc = GraphDocument {
            degree: self.degree,
            multigraph: self.multigraph,
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|e| [e.u, e.v, e.face]).collect(),
        };
        let mut s = serde_json::to_string(&doc).expect("graph serializes");
        s.push('\n');
        s
    }

    /// Edge list with header `u_mv,v_mv,face`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u_mv,v_mv,face\n");
        for e in &self.edges {
            let _ = writeln!(out, "{},{},{}", self.vertices[e.u], self.vertices[e.v], e.face);
        }
        out
    }

    /// Parse and validate a JSON graph document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDocument =
            serde_json::from_str(text).map_err(|e| OfgError::Format(e.to_string()))?;
        check_degree(doc.degree)?;
        if let Some(bad) = doc.vertices.iter().find(|v| v.degree() != doc.degree) {
            return Err(OfgError::Format(format!(
                "vertex {bad} does not have degree {}",
                doc.degree
            )));
        }
        if !doc.vertices.windows(2).all(|w| w[0] < w[1]) {
            return Err(OfgError::Format("vertices must be strictly ascending".into()));
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for [u, v, face] in doc.edges {
            if u >= v || v >= doc.vertices.len() || face == 0 || face > doc.degree {
                return Err(OfgError::Format(format!("bad edge [{u}, {v}, {face}]")));
            }
            if doc.vertices[u].flip0(face - 1) != doc.vertices[v] {
                return Err(OfgError::Format(format!(
                    "edge [{u}, {v}, {face}] does not join a face flip"
                )));
            }
            edges.push(Edge { u, v, face });
        }
        let graph = Self::from_parts(doc.degree, doc.vertices, edges)?;
        if graph.edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(OfgError::Format("duplicate edge".into()));
        }
        if graph.multigraph != doc.multigraph {
            return Err(OfgError::Format(format!(
                "multigraph flag {} disagrees with the edge list",
                doc.multigraph
            )));
        }
        Ok(graph)
    }
}

/// Smallest image of `mv` under the dihedral group of the vertex combined
/// with complement.
pub fn orbit_representative(mv: &MvAssignment) -> MvAssignment {
    let mut best = *mv;
    for base in [*mv, mv.reflect()] {
        for img in [base, base.complement()] {
            for r in 0..mv.degree() {
                best = best.min(img.rotate(r));
            }
        }
    }
    best
}

/// Build `OFG(A_2n)` with flippability decided by the blocked-face rule.
pub fn build_ofg_uniform(n: usize, limits: &Limits) -> Result<FlipGraph> {
    limits.check_n(n)?;
    let vertices = enumerate_valid(n, MajorityFilter::Both)?;
    FlipGraph::assemble(2 * n, vertices, |mv, face| {
        mv.is_flippable0(face, mv.majority().expect("enumerated vertices are valid"))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BfsSources {
    AllVertices,
    #[default]
    SymmetryOrbits,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsMetrics {
    pub connected: bool,
    /// Largest finite eccentricity (the diameter when connected).
    pub diameter: u32,
    /// Per vertex, the largest finite distance to any vertex.
    pub eccentricities: Vec<u32>,
    /// Number of BFS runs performed.
    pub sources: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Dot,
    Json,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = OfgError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            "csv" => Ok(ExportFormat::Csv),
            other => Err(OfgError::Format(format!("unknown export format {other:?}"))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    degree: usize,
    multigraph: bool,
    vertices: Vec<MvAssignment>,
    edges: Vec<[usize; 3]>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> FlipGraph {
        build_ofg_uniform(n, &Limits::default()).unwrap()
    }

    fn mv(s: &str) -> MvAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn small_graphs() {
        let g1 = a(1);
        assert_eq!((g1.vertex_count(), g1.edge_count()), (2, 2));
        assert!(g1.is_multigraph());
        let g2 = a(2);
        assert_eq!((g2.vertex_count(), g2.edge_count()), (8, 16));
        assert!(!g2.is_multigraph());
        let g3 = a(3);
        assert_eq!((g3.vertex_count(), g3.edge_count()), (30, 84));
        assert!(g2.contains_edge(&mv("MMMV"), &mv("MVVV"), 2));
        assert!(!g2.contains_edge(&mv("MMMV"), &mv("MVVV"), 1));
    }

    #[test]
    fn limit_guard() {
        let limits = Limits::default().with_max_n(3);
        assert!(matches!(
            build_ofg_uniform(4, &limits),
            Err(OfgError::LimitExceeded { .. })
        ));
    }

    #[test]
    fn metrics() {
        for n in 1..=4 {
            let g = a(n);
            let fast = g.bfs_metrics(BfsSources::SymmetryOrbits);
            let full = g.bfs_metrics(BfsSources::AllVertices);
            assert_eq!(fast.eccentricities, full.eccentricities, "n={n}");
            assert!(fast.connected && full.connected);
            assert_eq!(full.diameter as usize, n);
            assert!(fast.sources < full.sources || n == 1);
        }
        let g = a(2);
        assert_eq!(g.distance(&mv("MMMV"), &mv("VVVM")), Some(2));
        assert!(g.is_bipartite());
        assert_eq!(g.component_count(), 1);
    }

    #[test]
    fn exporters() {
        let g1 = a(1);
        let dot = g1.to_dot();
        assert_eq!(dot.matches(" -- ").count(), 2);
        assert!(dot.starts_with("graph ofg_a2n {"));
        assert!(dot.contains("\"VV\" -- \"MM\" [label=\"1\"];"));
        assert_eq!(
            g1.to_json(),
            "{\"degree\":2,\"multigraph\":true,\"vertices\":[\"VV\",\"MM\"],\"edges\":[[0,1,1],[0,1,2]]}\n"
        );
        assert_eq!(g1.to_csv(), "u_mv,v_mv,face\nVV,MM,1\nVV,MM,2\n");

        let g2 = a(2);
        let node_lines = g2.to_dot().lines().filter(|l| l.trim_end().ends_with("\";")).count();
        assert_eq!(node_lines, 8);
        assert!(g2.to_dot().contains("\"MVVV\" -- \"MMMV\" [label=\"2\"];"));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        for n in 1..=4 {
            let g = a(n);
            let text = g.to_json();
            let back = FlipGraph::from_json(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(back.to_json(), text);
        }
        let bad_edge = r#"{"degree":4,"multigraph":false,"vertices":["VVVM","MMMV"],"edges":[[0,1,1]]}"#;
        assert!(FlipGraph::from_json(bad_edge).is_err());
        let bad_flag = r#"{"degree":2,"multigraph":false,"vertices":["VV","MM"],"edges":[[0,1,1],[0,1,2]]}"#;
        assert!(FlipGraph::from_json(bad_flag).is_err());
        let unsorted = r#"{"degree":2,"multigraph":false,"vertices":["MM","VV"],"edges":[]}"#;
        assert!(FlipGraph::from_json(unsorted).is_err());
    }

    #[test]
    fn export_format_parse() {
        assert_eq!("DOT".parse::<ExportFormat>().unwrap(), ExportFormat::Dot);
        assert!("xml".parse::<ExportFormat>().is_err());
    }

    #[test]
    fn orbit_representatives_are_orbit_invariant() {
        let x = mv("MMVMVM");
        let r = orbit_representative(&x);
        assert_eq!(orbit_representative(&x.rotate(2)), r);
        assert_eq!(orbit_representative(&x.complement()), r);
        assert_eq!(orbit_representative(&x.reflect()), r);
        assert!(r <= x);
    }
}
