//! JSON interchange for diagrams and networks. Packings serialize directly.

use serde::{Deserialize, Serialize};

use crate::diagram::{Node, NodeKind, StrandDiagram};
use crate::error::{Error, Result};
use crate::network::{Edge, SpinNetwork, Vertex};

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    kind: NodeKind,
    ports: Vec<usize>,
}

/// `{"nodes":[{"kind":"cup","ports":[0,1]}, ...], "wires":[[0,2], ...]}`.
/// Port order per kind: cup and cap `[left, right]`, crossing
/// `[bottom-left, bottom-right, top-left, top-right]`, through `[bottom, top]`.
#[derive(Serialize, Deserialize)]
struct DiagramDoc {
    nodes: Vec<NodeDoc>,
    wires: Vec<[usize; 2]>,
}

pub fn diagram_from_json(text: &str) -> Result<StrandDiagram> {
    let doc: DiagramDoc = serde_json::from_str(text)?;
    let port_count = doc
        .nodes
        .iter()
        .flat_map(|n| n.ports.iter())
        .chain(doc.wires.iter().flatten())
        .map(|&p| p + 1)
        .max()
        .unwrap_or(0);
    let nodes = doc.nodes.into_iter().map(|n| Node { kind: n.kind, ports: n.ports }).collect();
    let wires: Vec<(usize, usize)> = doc.wires.iter().map(|w| (w[0], w[1])).collect();
    StrandDiagram::from_parts(nodes, port_count, &wires)
}

pub fn diagram_to_json(d: &StrandDiagram) -> String {
    let doc = DiagramDoc {
        nodes: d
            .nodes()
            .iter()
            .map(|n| NodeDoc { kind: n.kind, ports: n.ports.clone() })
            .collect(),
        wires: d.wires().into_iter().map(|(a, b)| [a, b]).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data")
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    id: String,
    label: u32,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    closed: bool,
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    id: String,
    ends: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct NetworkDoc {
    edges: Vec<EdgeDoc>,
    vertices: Vec<VertexDoc>,
}

pub fn network_from_json(text: &str) -> Result<SpinNetwork> {
    let doc: NetworkDoc = serde_json::from_str(text)?;
    let mut index = std::collections::HashMap::new();
    for (k, e) in doc.edges.iter().enumerate() {
        if index.insert(e.id.clone(), k).is_some() {
            return Err(Error::Structural(format!("duplicate edge id {:?}", e.id)));
        }
    }
    let vertices = doc
        .vertices
        .into_iter()
        .map(|v| {
            let ends: [String; 3] = v.ends.try_into().map_err(|e: Vec<String>| {
                Error::Structural(format!("vertex {} has {} ends, expected 3", v.id, e.len()))
            })?;
            let mut idx = [0; 3];
            for (slot, name) in ends.iter().enumerate() {
                idx[slot] = *index.get(name).ok_or_else(|| {
                    Error::Structural(format!("vertex {} references unknown edge {name:?}", v.id))
                })?;
            }
            Ok(Vertex { id: v.id, ends: idx })
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = doc
        .edges
        .into_iter()
        .map(|e| Edge { id: e.id, label: e.label, closed: e.closed })
        .collect();
    SpinNetwork::new(edges, vertices)
}

pub fn network_to_json(net: &SpinNetwork) -> String {
    let doc = NetworkDoc {
        edges: net
            .edges()
            .iter()
            .map(|e| EdgeDoc { id: e.id.clone(), label: e.label, closed: e.closed })
            .collect(),
        vertices: net
            .vertices()
            .iter()
            .map(|v| VertexDoc {
                id: v.id.clone(),
                ends: v.ends.iter().map(|&e| net.edges()[e].id.clone()).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data")
}
