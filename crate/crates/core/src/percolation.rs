//! Edge bootstrap percolation on grids.
//!
//! Starting from a spanning subgraph, an absent host edge may be added
//! whenever adding it completes a member of the pattern family. Because the
//! addition rule is monotone in the current graph, the closure does not depend
//! on the order in which edges are added. [`percolate`] computes it in rounds:
//! every round tests all absent edges against the graph as it stood at the
//! start of the round, then adds every edge that passed in ascending id order.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{EdgeId, GridSpace, VertexId};
use crate::subgraph::EdgeSubgraph;

/// Longest supported cycle is `2 * MAX_CYCLE_HALF_LENGTH`.
pub const MAX_CYCLE_HALF_LENGTH: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// Axis aligned copies of `P_r^m`.
    AxisSubgrid { r: u32, m: u32 },
    /// Copies of `Q_m` in a hypercube host; same as `AxisSubgrid { r: 2, m }`.
    Subcube { m: u32 },
    /// Cycles of exactly this (even) length.
    EvenCycle { length: u32 },
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::AxisSubgrid { r, m } => write!(f, "grid:{r}:{m}"),
            Pattern::Subcube { m } => write!(f, "subcube:{m}"),
            Pattern::EvenCycle { length } => write!(f, "cycle:{length}"),
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Accepts `subcube:<m>`, `grid:<r>:<m>` and `cycle:<length>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::param(format!("unrecognized family '{s}' (expected subcube:M, grid:R:M or cycle:L)"));
        let mut parts = s.trim().split(':');
        let kind = parts.next().ok_or_else(bad)?;
        let nums: Vec<u32> = parts.map(|p| p.parse::<u32>().map_err(|_| bad())).collect::<Result<_>>()?;
        let pattern = match (kind, nums.as_slice()) {
            ("subcube", &[m]) => Pattern::Subcube { m },
            ("grid", &[r, m]) => Pattern::AxisSubgrid { r, m },
            ("cycle", &[length]) => Pattern::EvenCycle { length },
            _ => return Err(bad()),
        };
        Ok(pattern)
    }
}

/// A pattern bound to a host grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternFamily {
    host: GridSpace,
    pattern: Pattern,
}

impl PatternFamily {
    pub fn new(host: &GridSpace, pattern: Pattern) -> Result<Self> {
        match pattern {
            Pattern::AxisSubgrid { r, m } => host.check_subgrid_params(r, m)?,
            Pattern::Subcube { m } => {
                if !host.is_hypercube() {
                    return Err(Error::param("subcube families need a hypercube host (k = 2)"));
                }
                host.check_subgrid_params(2, m)?;
            }
            Pattern::EvenCycle { length } => {
                if length % 2 != 0 || !(4..=2 * MAX_CYCLE_HALF_LENGTH).contains(&length) {
                    return Err(Error::param(format!(
                        "cycle length must be even and in [4, {}], got {length}",
                        2 * MAX_CYCLE_HALF_LENGTH
                    )));
                }
            }
        }
        Ok(PatternFamily { host: host.clone(), pattern })
    }

    pub fn subcube(host: &GridSpace, m: u32) -> Result<Self> {
        Self::new(host, Pattern::Subcube { m })
    }

    pub fn axis_subgrid(host: &GridSpace, r: u32, m: u32) -> Result<Self> {
        Self::new(host, Pattern::AxisSubgrid { r, m })
    }

    pub fn even_cycle(host: &GridSpace, length: u32) -> Result<Self> {
        Self::new(host, Pattern::EvenCycle { length })
    }

    pub fn host(&self) -> &GridSpace {
        &self.host
    }

    pub fn pattern(&self) -> Pattern {
        self.pattern
    }

    /// `(r, m)` for grid-like families.
    fn subgrid_params(&self) -> Option<(u32, u32)> {
        match self.pattern {
            Pattern::AxisSubgrid { r, m } => Some((r, m)),
            Pattern::Subcube { m } => Some((2, m)),
            Pattern::EvenCycle { .. } => None,
        }
    }

    /// Whether `edges` (sorted) is the edge set of a family member through `e`.
    pub fn is_member_through(&self, e: EdgeId, edges: &[EdgeId]) -> bool {
        if edges.binary_search(&e).is_err() || edges.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        if edges.iter().any(|&x| !self.host.contains_edge(x)) {
            return false;
        }
        match self.pattern {
            Pattern::EvenCycle { length } => edges.len() == length as usize && is_single_cycle(&self.host, edges),
            _ => {
                let (r, m) = self.subgrid_params().expect("grid family");
                self.host
                    .axis_subgrids_through_edge(e, r, m)
                    .map(|copies| copies.iter().any(|c| c.edges(&self.host) == edges))
                    .unwrap_or(false)
            }
        }
    }
}

fn is_single_cycle(space: &GridSpace, edges: &[EdgeId]) -> bool {
    use std::collections::HashMap;
    let mut adj: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
    for &e in edges {
        let (a, b) = space.endpoints(e);
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|n| n.len() != 2) {
        return false;
    }
    // walk the cycle from an arbitrary vertex
    let start = *adj.keys().min().expect("non-empty");
    let mut prev = start;
    let mut cur = adj[&start][0];
    let mut steps = 1;
    while cur != start {
        let n = &adj[&cur];
        let next = if n[0] != prev { n[0] } else { n[1] };
        prev = cur;
        cur = next;
        steps += 1;
        if steps > edges.len() {
            return false;
        }
    }
    steps == edges.len()
}

/// Looks for a family member that contains `e` and lies in `G + e`.
///
/// Returns the member's edge set, ascending. Any such copy is new, since it
/// uses `e`.
pub fn creates_new_copy(g: &EdgeSubgraph, e: EdgeId, family: &PatternFamily) -> Option<Vec<EdgeId>> {
    let space = g.space();
    match family.pattern {
        Pattern::EvenCycle { length } => {
            let (u, v) = space.endpoints(e);
            let path = find_path(g, e, u, v, length as usize - 1)?;
            let mut edges: Vec<EdgeId> =
                path.windows(2).map(|w| space.edge_between(w[0], w[1]).expect("path steps are host edges")).collect();
            edges.push(e);
            edges.sort_unstable();
            Some(edges)
        }
        _ => {
            let (r, m) = family.subgrid_params().expect("grid family");
            let copies = space.axis_subgrids_through_edge(e, r, m).ok()?;
            copies.into_iter().find_map(|copy| {
                let edges = copy.edges(space);
                edges.iter().all(|&x| x == e || g.contains(x)).then_some(edges)
            })
        }
    }
}

fn l1_distance(space: &GridSpace, a: VertexId, b: VertexId) -> usize {
    (0..space.d()).map(|i| space.coord(a, i).abs_diff(space.coord(b, i)) as usize).sum()
}

/// Simple path in `g - skip` from `from` to `to` with exactly `len` edges.
fn find_path(g: &EdgeSubgraph, skip: EdgeId, from: VertexId, to: VertexId, len: usize) -> Option<Vec<VertexId>> {
    let space = g.space();
    let mut path = vec![from];
    fn dfs(
        g: &EdgeSubgraph,
        space: &GridSpace,
        skip: EdgeId,
        to: VertexId,
        len: usize,
        path: &mut Vec<VertexId>,
    ) -> bool {
        let cur = *path.last().expect("non-empty");
        let remaining = len + 1 - path.len();
        if remaining == 0 {
            return cur == to;
        }
        let dist = l1_distance(space, cur, to);
        if dist > remaining || !(remaining - dist).is_multiple_of(2) {
            return false;
        }
        for next in g.neighbors(cur) {
            if space.edge_between(cur, next) == Some(skip) || path.contains(&next) {
                continue;
            }
            if next == to && remaining != 1 {
                continue;
            }
            path.push(next);
            if dfs(g, space, skip, to, len, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    dfs(g, space, skip, to, len, &mut path).then_some(path)
}

/// One step of a percolation certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Addition {
    pub edge: EdgeId,
    /// Edge set of the completed copy, ascending; contains `edge`.
    pub witness: Vec<EdgeId>,
}

#[derive(Clone, Debug)]
pub struct PercolationCertificate {
    pub order: Vec<Addition>,
    pub rounds: usize,
    pub final_graph: EdgeSubgraph,
}

impl PercolationCertificate {
    pub fn percolates(&self) -> bool {
        self.final_graph.is_full()
    }

    /// Line-oriented text form: `add <edge_id> witness <sorted edge ids>`.
    pub fn to_text(&self) -> String {
        additions_to_text(&self.order)
    }
}

pub fn additions_to_text(order: &[Addition]) -> String {
    let mut out = String::new();
    for a in order {
        write!(out, "add {} witness", a.edge).expect("write to string");
        for w in &a.witness {
            write!(out, " {w}").expect("write to string");
        }
        out.push('\n');
    }
    out
}

/// Parses the text form written by [`additions_to_text`]. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_certificate(text: &str) -> Result<Vec<Addition>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_ascii_whitespace();
        if tokens.next() != Some("add") {
            return Err(Error::parse(line_no, "expected 'add'"));
        }
        let edge = tokens
            .next()
            .and_then(|t| t.parse::<u64>().ok())
            .ok_or_else(|| Error::parse(line_no, "expected an edge id after 'add'"))?;
        if tokens.next() != Some("witness") {
            return Err(Error::parse(line_no, "expected 'witness'"));
        }
        let witness = tokens
            .map(|t| t.parse::<u64>().map(EdgeId).map_err(|_| Error::parse(line_no, format!("bad edge id '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        if witness.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::parse(line_no, "witness edge ids must be strictly ascending"));
        }
        out.push(Addition { edge: EdgeId(edge), witness });
    }
    Ok(out)
}

/// Round-based closure of `g0` under `family`, with a witness for every
/// added edge.
pub fn percolate(g0: &EdgeSubgraph, family: &PatternFamily) -> PercolationCertificate {
    assert_eq!(g0.space(), family.host(), "graph and family live on different hosts");
    let mut g = g0.clone();
    let mut order = Vec::new();
    let mut rounds = 0;
    loop {
        let candidates: Vec<EdgeId> = g.missing_edges().collect();
        let found: Vec<(EdgeId, Vec<EdgeId>)> =
            candidates.par_iter().filter_map(|&e| creates_new_copy(&g, e, family).map(|w| (e, w))).collect();
        if found.is_empty() {
            break;
        }
        rounds += 1;
        for (edge, witness) in found {
            g.insert(edge);
            order.push(Addition { edge, witness });
        }
    }
    PercolationCertificate { order, rounds, final_graph: g }
}

pub fn is_weakly_saturated(g0: &EdgeSubgraph, family: &PatternFamily) -> bool {
    percolate(g0, family).percolates()
}

/// Closure computed by repeatedly sweeping `order`, adding each addable edge
/// immediately. Edges missing from `order` are never added.
pub fn closure_in_order(g0: &EdgeSubgraph, family: &PatternFamily, order: &[EdgeId]) -> EdgeSubgraph {
    let mut g = g0.clone();
    loop {
        let mut changed = false;
        for &e in order {
            if !g.contains(e) && creates_new_copy(&g, e, family).is_some() {
                g.insert(e);
                changed = true;
            }
        }
        if !changed {
            return g;
        }
    }
}

/// Adds the edges of `order` one at a time, requiring each to complete a
/// copy at the moment it is added.
pub fn certify_order(g0: &EdgeSubgraph, family: &PatternFamily, order: &[EdgeId]) -> Result<PercolationCertificate> {
    let mut g = g0.clone();
    let mut additions = Vec::with_capacity(order.len());
    for (step, &e) in order.iter().enumerate() {
        if g.contains(e) {
            return Err(Error::InvalidCertificate { step, msg: format!("edge {e} is already present") });
        }
        let witness = creates_new_copy(&g, e, family)
            .ok_or_else(|| Error::InvalidCertificate { step, msg: format!("edge {e} completes no copy") })?;
        g.insert(e);
        additions.push(Addition { edge: e, witness });
    }
    Ok(PercolationCertificate { order: additions, rounds: 0, final_graph: g })
}

/// Replays a certificate from `g0`, checking every witness. Returns the final
/// graph.
pub fn verify_certificate(g0: &EdgeSubgraph, family: &PatternFamily, order: &[Addition]) -> Result<EdgeSubgraph> {
    let space = g0.space();
    let mut g = g0.clone();
    for (step, a) in order.iter().enumerate() {
        let fail = |msg: String| Error::InvalidCertificate { step, msg };
        if !space.contains_edge(a.edge) {
            return Err(fail(format!("edge {} outside the host", a.edge)));
        }
        if !g.insert(a.edge) {
            return Err(fail(format!("edge {} added twice", a.edge)));
        }
        if !family.is_member_through(a.edge, &a.witness) {
            return Err(fail(format!("witness for edge {} is not a family member through it", a.edge)));
        }
        if let Some(missing) = a.witness.iter().find(|&&w| !g.contains(w)) {
            return Err(fail(format!("witness edge {missing} is absent")));
        }
    }
    Ok(g)
}
