use ksub_core::{Graph, StateGraph};
use serde::{Deserialize, Serialize};

/// Serialized k-state graph. States list original node labels; edges index `states`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateGraphJson {
    pub k: usize,
    pub states: Vec<Vec<u64>>,
    pub edges: Vec<[u32; 2]>,
    pub diameter: Option<usize>,
}

impl StateGraphJson {
    pub fn new(g: &Graph, sg: &StateGraph) -> Self {
        StateGraphJson {
            k: sg.k(),
            states: sg
                .states()
                .iter()
                .map(|s| s.nodes().iter().map(|&v| g.label(v)).collect())
                .collect(),
            edges: sg.edges().map(|(a, b)| [a as u32, b as u32]).collect(),
            diameter: sg.diameter(),
        }
    }
}
