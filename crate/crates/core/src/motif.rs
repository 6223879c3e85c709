//! Motif classes of sampled 3- and 4-node subgraphs.

use crate::graph::Graph;
use crate::signed::{Sign, SignedGraph};
use crate::state::SubgraphState;
use crate::{Error, Result};

/// Class of a connected 3-node subgraph of a signed graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Motif3 {
    OpenTriplet,
    /// `balanced` iff the number of negative edges is even.
    Triangle {
        balanced: bool,
    },
}

/// The six connected graphs on four nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Graphlet4 {
    Path,
    Star,
    Cycle,
    Paw,
    Diamond,
    Clique,
}

impl Graphlet4 {
    pub const ALL: [Graphlet4; 6] = [
        Graphlet4::Path,
        Graphlet4::Star,
        Graphlet4::Cycle,
        Graphlet4::Paw,
        Graphlet4::Diamond,
        Graphlet4::Clique,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Graphlet4::Path => "path",
            Graphlet4::Star => "star",
            Graphlet4::Cycle => "cycle",
            Graphlet4::Paw => "paw",
            Graphlet4::Diamond => "diamond",
            Graphlet4::Clique => "clique",
        }
    }

    pub fn motif(&self) -> Motif4 {
        match self {
            Graphlet4::Path => Motif4::LineShaped,
            Graphlet4::Clique => Motif4::Clique,
            _ => Motif4::Other,
        }
    }
}

/// Coarse class of a connected 4-node subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Motif4 {
    LineShaped,
    Clique,
    Other,
}

pub fn classify_motif_k3(sg: &SignedGraph, h: &SubgraphState) -> Result<Motif3> {
    if h.k() != 3 {
        return Err(Error::InvalidState("expected a 3-node state"));
    }
    h.validate(sg.graph())?;
    let v = h.nodes();
    let mut edges = 0;
    let mut negative = 0;
    for (a, b) in [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])] {
        if let Some(s) = sg.sign(a, b) {
            edges += 1;
            if s == Sign::Negative {
                negative += 1;
            }
        }
    }
    Ok(if edges == 3 {
        Motif3::Triangle {
            balanced: negative % 2 == 0,
        }
    } else {
        Motif3::OpenTriplet
    })
}

/// Isomorphism class of a connected 4-node induced subgraph, read off the
/// edge count and the degree multiset.
pub fn classify_graphlet4(g: &Graph, h: &SubgraphState) -> Result<Graphlet4> {
    if h.k() != 4 {
        return Err(Error::InvalidState("expected a 4-node state"));
    }
    h.validate(g)?;
    let v = h.nodes();
    let mut deg = [0u8; 4];
    let mut edges = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(v[i], v[j]) {
                deg[i] += 1;
                deg[j] += 1;
                edges += 1;
            }
        }
    }
    let max = *deg.iter().max().unwrap();
    Ok(match (edges, max) {
        (3, 3) => Graphlet4::Star,
        (3, _) => Graphlet4::Path,
        (4, 3) => Graphlet4::Paw,
        (4, _) => Graphlet4::Cycle,
        (5, _) => Graphlet4::Diamond,
        _ => Graphlet4::Clique,
    })
}

pub fn classify_motif_k4(g: &Graph, h: &SubgraphState) -> Result<Motif4> {
    classify_graphlet4(g, h).map(|c| c.motif())
}

/// Per-class sample counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MotifTally {
    pub samples: u64,
    pub open_triplet: u64,
    pub triangle: u64,
    pub balanced_triangle: u64,
    pub line_shaped: u64,
    pub clique: u64,
    pub other: u64,
    /// Counts per [`Graphlet4::ALL`] entry; filled by [`MotifTally::add_graphlet4`] only.
    pub graphlets: [u64; 6],
}

impl MotifTally {
    pub fn add_k3(&mut self, m: Motif3) {
        self.samples += 1;
        match m {
            Motif3::OpenTriplet => self.open_triplet += 1,
            Motif3::Triangle { balanced } => {
                self.triangle += 1;
                if balanced {
                    self.balanced_triangle += 1;
                }
            }
        }
    }

    pub fn add_k4(&mut self, m: Motif4) {
        self.samples += 1;
        match m {
            Motif4::LineShaped => self.line_shaped += 1,
            Motif4::Clique => self.clique += 1,
            Motif4::Other => self.other += 1,
        }
    }

    /// Like [`MotifTally::add_k4`], also counting the isomorphism class.
    pub fn add_graphlet4(&mut self, c: Graphlet4) {
        self.add_k4(c.motif());
        self.graphlets[c as usize] += 1;
    }

    pub fn merge(&mut self, o: &MotifTally) {
        self.samples += o.samples;
        self.open_triplet += o.open_triplet;
        self.triangle += o.triangle;
        self.balanced_triangle += o.balanced_triangle;
        self.line_shaped += o.line_shaped;
        self.clique += o.clique;
        self.other += o.other;
        for (a, b) in self.graphlets.iter_mut().zip(o.graphlets) {
            *a += b;
        }
    }

    /// `count / samples`, or 0 with no samples.
    pub fn ratio(&self, count: u64) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            count as f64 / self.samples as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed::SignedEdge;
    use alloc::vec::Vec;

    fn signed(edges: &[(u64, u64, i32)]) -> SignedGraph {
        let raw: Vec<SignedEdge> = edges
            .iter()
            .map(|&(source, target, rating)| SignedEdge {
                source,
                target,
                rating,
                time: 0,
            })
            .collect();
        SignedGraph::from_directed(raw).unwrap()
    }

    fn st(v: &[u32]) -> SubgraphState {
        SubgraphState::new(v).unwrap()
    }

    #[test]
    fn k3_classes() {
        let path = signed(&[(0, 1, 1), (1, 2, 1)]);
        assert_eq!(
            classify_motif_k3(&path, &st(&[0, 1, 2])).unwrap(),
            Motif3::OpenTriplet
        );
        let unbalanced = signed(&[(0, 1, 1), (1, 2, 1), (2, 0, -1)]);
        assert_eq!(
            classify_motif_k3(&unbalanced, &st(&[0, 1, 2])).unwrap(),
            Motif3::Triangle { balanced: false }
        );
        let balanced = signed(&[(0, 1, -1), (1, 2, -1), (2, 0, 1)]);
        assert_eq!(
            classify_motif_k3(&balanced, &st(&[0, 1, 2])).unwrap(),
            Motif3::Triangle { balanced: true }
        );
        assert!(classify_motif_k3(&path, &st(&[0, 1])).is_err());
    }

    #[test]
    fn k4_classes() {
        let p4 = Graph::from_dense_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let k4 =
            Graph::from_dense_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let star = Graph::from_dense_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let all = st(&[0, 1, 2, 3]);
        assert_eq!(classify_motif_k4(&p4, &all).unwrap(), Motif4::LineShaped);
        assert_eq!(classify_motif_k4(&k4, &all).unwrap(), Motif4::Clique);
        assert_eq!(classify_motif_k4(&star, &all).unwrap(), Motif4::Other);
        assert_eq!(classify_graphlet4(&star, &all).unwrap(), Graphlet4::Star);
        let disconnected = Graph::from_dense_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(classify_motif_k4(&disconnected, &all).is_err());
    }

    #[test]
    fn tally_counts() {
        let mut t = MotifTally::default();
        t.add_k3(Motif3::OpenTriplet);
        t.add_k3(Motif3::Triangle { balanced: true });
        t.add_k3(Motif3::Triangle { balanced: false });
        assert_eq!((t.samples, t.triangle, t.balanced_triangle), (3, 2, 1));
        assert!((t.ratio(t.open_triplet) - 1.0 / 3.0).abs() < 1e-15);
        let mut u = MotifTally::default();
        u.add_graphlet4(Graphlet4::Star);
        u.add_graphlet4(Graphlet4::Path);
        t.merge(&u);
        assert_eq!((t.samples, t.line_shaped, t.other), (5, 1, 1));
        assert_eq!(t.graphlets, [1, 1, 0, 0, 0, 0]);
    }
}
