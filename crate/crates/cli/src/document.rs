//! The JSON graph format shared by every subcommand, and DOT export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hypersat::{EdgeId, EdgeSubgraph, Error, GridSpace, Result};
use serde::{Deserialize, Serialize};

/// `{"k":..,"d":..,"edges":[..],"meta":{..}}` with edges strictly ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub k: u32,
    pub d: u32,
    pub edges: Vec<u64>,
    #[serde(default)]
    pub meta: BTreeMap<String, serde_json::Value>,
}

impl GraphDocument {
    pub fn from_subgraph(g: &EdgeSubgraph, meta: BTreeMap<String, serde_json::Value>) -> Self {
        let space = g.space();
        GraphDocument { k: space.k(), d: space.d(), edges: g.edges().map(|e| e.0).collect(), meta }
    }

    /// Compact JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string(self).expect("plain data serializes");
        out.push('\n');
        out
    }

    /// Parses and validates a document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn space(&self) -> Result<GridSpace> {
        GridSpace::new(self.k, self.d)
    }

    pub fn validate(&self) -> Result<()> {
        let space = self.space()?;
        if self.edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("edge ids must be strictly ascending".into()));
        }
        if let Some(&e) = self.edges.iter().find(|&&e| !space.contains_edge(EdgeId(e))) {
            return Err(Error::InvalidParameter(format!("edge id {e} is outside P_{}^{}", self.k, self.d)));
        }
        Ok(())
    }

    pub fn to_subgraph(&self) -> Result<EdgeSubgraph> {
        self.validate()?;
        EdgeSubgraph::from_edges(&self.space()?, self.edges.iter().map(|&e| EdgeId(e)))
    }
}

pub const MAX_DOT_VERTICES: u64 = 1 << 20;

/// Undirected DOT graph. Nodes are labelled by coordinates, edges listed in
/// ascending id order.
pub fn export_dot(doc: &GraphDocument) -> Result<String> {
    doc.validate()?;
    let space = doc.space()?;
    if space.vertex_count() > MAX_DOT_VERTICES {
        return Err(Error::HostTooLarge(format!("DOT export is limited to {MAX_DOT_VERTICES} vertices")));
    }
    let mut out = String::from("graph hypersat {\n");
    for v in space.vertices() {
        let coords = space.decode(v).iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        writeln!(out, "  v{} [label=\"({coords})\"];", v.0).expect("write to string");
    }
    for &e in &doc.edges {
        let (a, b) = space.endpoints(EdgeId(e));
        writeln!(out, "  v{} -- v{};", a.0, b.0).expect("write to string");
    }
    out.push_str("}\n");
    Ok(out)
}
