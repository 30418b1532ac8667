//! Directed mixture graphs and edge-set scoring.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Directed graph over mixtures. An edge `i→j` means "every source feeding
/// mixture `i` also feeds mixture `j`"; mixtures with the same source set
/// carry both directed edges. Self-loops are excluded — they would be
/// tautologies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixtureGraph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl MixtureGraph {
    /// An edgeless graph on `vertices` vertices (zero-based IDs).
    pub fn new(vertices: usize) -> Self {
        Self { vertices, edges: BTreeSet::new() }
    }

    /// Inserts `from→to`, rejecting self-loops and out-of-range vertices.
    /// Idempotent on repeats.
    pub fn add_edge(&mut self, from: usize, to: usize) -> Result<()> {
        if from == to {
            return Err(Error::InvalidEdge(format!("self-loop at vertex {from}")));
        }
        if from >= self.vertices || to >= self.vertices {
            return Err(Error::InvalidEdge(format!(
                "edge {from}→{to} outside a graph on {} vertices",
                self.vertices
            )));
        }
        self.edges.insert((from, to));
        Ok(())
    }

    /// Whether `from→to` is present.
    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Number of directed edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// DOT digraph with one-based vertex labels (every vertex listed, so
    /// isolated ones render too).
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph mixtures {\n");
        for v in 1..=self.vertices {
            writeln!(out, "  {v};").expect("writing to a String cannot fail");
        }
        for &(i, j) in &self.edges {
            writeln!(out, "  {} -> {};", i + 1, j + 1).expect("writing to a String cannot fail");
        }
        out.push_str("}\n");
        out
    }

    /// JSON object `{"vertices": J, "edges": [[i, j], …]}` with the same
    /// one-based labels as the DOT export.
    pub fn to_json(&self) -> String {
        let edges: Vec<[usize; 2]> = self.edges.iter().map(|&(i, j)| [i + 1, j + 1]).collect();
        serde_json::json!({ "vertices": self.vertices, "edges": edges }).to_string()
    }
}

/// Edge-set precision and recall of a predicted graph against a reference.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GraphScore {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    /// Fraction of predicted edges that are real; 1 when nothing was
    /// predicted (no prediction is vacuously precise).
    pub precision: f64,
    /// Fraction of real edges that were predicted; 1 when the reference has
    /// no edges.
    pub recall: f64,
}

/// Scores `predicted` against `truth` over the same vertex set.
pub fn score_graph(predicted: &MixtureGraph, truth: &MixtureGraph) -> Result<GraphScore> {
    if predicted.vertex_count() != truth.vertex_count() {
        return Err(Error::VertexCountMismatch {
            a: predicted.vertex_count(),
            b: truth.vertex_count(),
        });
    }
    let true_positives = predicted.edges().filter(|&(i, j)| truth.has_edge(i, j)).count();
    let false_positives = predicted.edge_count() - true_positives;
    let false_negatives = truth.edge_count() - true_positives;
    let ratio = |hits: usize, total: usize| if total == 0 { 1.0 } else { hits as f64 / total as f64 };
    Ok(GraphScore {
        true_positives,
        false_positives,
        false_negatives,
        precision: ratio(true_positives, true_positives + false_positives),
        recall: ratio(true_positives, true_positives + false_negatives),
    })
}
