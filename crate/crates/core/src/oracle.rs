//! Brute-force ground truth on tiny hosts.
//!
//! Copies of the pattern are enumerated here from scratch (boxes by corner
//! and direction set, cycles by depth-first search) rather than through the
//! grid and percolation modules, so that the two can be checked against
//! each other.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{EdgeId, GridSpace, VertexId};
use crate::percolation::Pattern;
use crate::subgraph::EdgeSubgraph;

/// Subsets are bitmasks; no budget can raise the cap past this.
pub const MAX_ORACLE_EDGES: u64 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_host_edges: u64,
    pub time_limit: Duration,
    /// Stop at the first cardinality that works instead of scanning every
    /// subgraph.
    pub ascending: bool,
}

impl SearchBudget {
    pub fn wsat_default() -> Self {
        SearchBudget { max_host_edges: 16, time_limit: Duration::from_secs(600), ascending: true }
    }

    pub fn sat_default() -> Self {
        SearchBudget { max_host_edges: 12, time_limit: Duration::from_secs(600), ascending: true }
    }

    fn admit(&self, space: &GridSpace) -> Result<()> {
        if space.edge_count() > self.max_host_edges.min(MAX_ORACLE_EDGES) {
            return Err(Error::BudgetExhausted(format!(
                "host has {} edges, oracle cap is {}",
                space.edge_count(),
                self.max_host_edges.min(MAX_ORACLE_EDGES)
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub value: u64,
    /// Lowest-bitmask witness of that size, ascending.
    pub witness: Vec<EdgeId>,
}

fn box_copies(space: &GridSpace, r: u32, m: u32) -> Vec<Vec<EdgeId>> {
    let (k, d) = (space.k(), space.d());
    let mut out = Vec::new();
    for corner in space.vertices() {
        let c = space.decode(corner);
        for dirs in (0..d).combinations(m as usize) {
            if dirs.iter().any(|&i| c[i as usize] + r > k) {
                continue;
            }
            let mut edges = Vec::new();
            let ranges: Vec<std::ops::Range<u32>> = dirs.iter().map(|&i| c[i as usize]..c[i as usize] + r).collect();
            for offsets in ranges.into_iter().multi_cartesian_product() {
                let mut coords = c.clone();
                for (&i, &x) in dirs.iter().zip(&offsets) {
                    coords[i as usize] = x;
                }
                let v = space.encode(&coords).expect("inside the box");
                for (&i, &x) in dirs.iter().zip(&offsets) {
                    if x + 1 < c[i as usize] + r {
                        edges.push(space.edge(v, i).expect("upward edge"));
                    }
                }
            }
            edges.sort_unstable();
            out.push(edges);
        }
    }
    out
}

fn cycle_copies(space: &GridSpace, length: u32) -> Vec<Vec<EdgeId>> {
    fn extend(
        space: &GridSpace,
        start: VertexId,
        path: &mut Vec<VertexId>,
        length: usize,
        found: &mut BTreeSet<Vec<EdgeId>>,
    ) {
        let last = *path.last().expect("nonempty path");
        for w in space.neighbors(last) {
            if path.len() == length {
                if w == start {
                    let mut edges: Vec<EdgeId> = path
                        .iter()
                        .zip(path.iter().cycle().skip(1))
                        .map(|(&a, &b)| space.edge_between(a, b).expect("path edge"))
                        .collect();
                    edges.sort_unstable();
                    found.insert(edges);
                }
            } else if w > start && !path.contains(&w) {
                path.push(w);
                extend(space, start, path, length, found);
                path.pop();
            }
        }
    }
    let mut found = BTreeSet::new();
    for s in space.vertices() {
        extend(space, s, &mut vec![s], length as usize, &mut found);
    }
    found.into_iter().collect()
}

/// Every copy of `pattern` in the host, as sorted edge lists.
pub fn enumerate_copies(space: &GridSpace, pattern: Pattern) -> Result<Vec<Vec<EdgeId>>> {
    let (k, d) = (space.k(), space.d());
    if let Pattern::AxisSubgrid { m, .. } | Pattern::Subcube { m } = pattern {
        if m == 0 || m > d {
            return Err(Error::param(format!("pattern dimension {m} must be in 1..={d}")));
        }
    }
    match pattern {
        Pattern::AxisSubgrid { r, m } => {
            if r < 2 || r > k {
                return Err(Error::param(format!("side {r} must be in 2..={k}")));
            }
            Ok(box_copies(space, r, m))
        }
        Pattern::Subcube { m } => {
            if k != 2 {
                return Err(Error::param("subcube patterns need a hypercube host"));
            }
            Ok(box_copies(space, 2, m))
        }
        Pattern::EvenCycle { length } => {
            if length < 4 || length % 2 != 0 {
                return Err(Error::param(format!("cycle length {length} must be even and at least 4")));
            }
            Ok(cycle_copies(space, length))
        }
    }
}

fn masks(copies: &[Vec<EdgeId>]) -> Vec<u64> {
    copies.iter().map(|c| c.iter().fold(0u64, |acc, e| acc | 1 << e.0)).collect()
}

fn closure(mut g: u64, copies: &[u64]) -> u64 {
    loop {
        let before = g;
        for &c in copies {
            let missing = c & !g;
            if missing.count_ones() == 1 {
                g |= missing;
            }
        }
        if g == before {
            return g;
        }
    }
}

fn connected_spanning(space: &GridSpace, g: u64) -> bool {
    let n = space.vertex_count() as usize;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut components = n;
    let mut rest = g;
    while rest != 0 {
        let e = rest.trailing_zeros() as u64;
        rest &= rest - 1;
        let (a, b) = space.endpoints(EdgeId(e));
        let (ra, rb) = (find(&mut parent, a.index()), find(&mut parent, b.index()));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components == 1
}

fn to_edges(mask: u64) -> Vec<EdgeId> {
    (0..64).filter(|&i| mask >> i & 1 == 1).map(EdgeId).collect()
}

/// Smallest popcount among masks accepted by `accept`, with the lowest such
/// mask.
fn min_subset(n: u64, budget: &SearchBudget, accept: impl Fn(u64) -> bool + Sync) -> Result<OracleResult> {
    let started = Instant::now();
    let timed_out =
        || Error::BudgetExhausted(format!("oracle search exceeded {:.0} s", budget.time_limit.as_secs_f64()));
    let all: u64 = 1 << n;
    if budget.ascending {
        for c in 0..=n as u32 {
            if started.elapsed() > budget.time_limit {
                return Err(timed_out());
            }
            let hit = (0..all).into_par_iter().filter(|g| g.count_ones() == c).find_first(|&g| accept(g));
            if let Some(g) = hit {
                return Ok(OracleResult { value: c as u64, witness: to_edges(g) });
            }
        }
    } else {
        let best = (0..all).into_par_iter().filter(|&g| accept(g)).min_by_key(|&g| (g.count_ones(), g));
        if started.elapsed() > budget.time_limit {
            return Err(timed_out());
        }
        if let Some(g) = best {
            return Ok(OracleResult { value: g.count_ones() as u64, witness: to_edges(g) });
        }
    }
    Err(Error::param("no subgraph qualifies"))
}

/// Minimum size of a weakly saturated subgraph of the host.
pub fn min_wsat(space: &GridSpace, pattern: Pattern, budget: &SearchBudget) -> Result<OracleResult> {
    budget.admit(space)?;
    let copies = masks(&enumerate_copies(space, pattern)?);
    let full: u64 = if space.edge_count() == 64 { u64::MAX } else { (1 << space.edge_count()) - 1 };
    let cyclic = matches!(pattern, Pattern::EvenCycle { .. });
    min_subset(space.edge_count(), budget, |g| (!cyclic || connected_spanning(space, g)) && closure(g, &copies) == full)
}

/// Minimum size of a `Q_m`-saturated subgraph of a hypercube host.
pub fn min_sat(space: &GridSpace, m: u32, budget: &SearchBudget) -> Result<OracleResult> {
    budget.admit(space)?;
    let copies = masks(&enumerate_copies(space, Pattern::Subcube { m })?);
    let full: u64 = (1 << space.edge_count()) - 1;
    min_subset(space.edge_count(), budget, |g| {
        let mut covered = 0u64;
        for &c in &copies {
            let missing = c & !g;
            match missing.count_ones() {
                0 => return false,
                1 => covered |= missing,
                _ => {}
            }
        }
        covered == full & !g
    })
}

/// `g` has no `Q_m` and every absent edge completes one. Exhaustive.
pub fn is_saturated(g: &EdgeSubgraph, m: u32) -> Result<bool> {
    let space = g.space();
    if !space.is_hypercube() {
        return Err(Error::param("saturation checks need a hypercube host"));
    }
    let copies = enumerate_copies(space, Pattern::Subcube { m })?;
    let mut covered = EdgeSubgraph::empty(space)?;
    for copy in &copies {
        let mut missing = copy.iter().filter(|&&e| !g.contains(e));
        match (missing.next(), missing.next()) {
            (None, _) => return Ok(false),
            (Some(&e), None) => {
                covered.insert(e);
            }
            _ => {}
        }
    }
    Ok(g.missing_edges().all(|e| covered.contains(e)))
}

/// One line of a golden file: `host <k> <d> | <family> | <value> | <ids>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureLine {
    pub k: u32,
    pub d: u32,
    pub pattern: Pattern,
    pub value: u64,
    pub witness: Vec<EdgeId>,
}

impl fmt::Display for FixtureLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "host {} {} | {} | {} |", self.k, self.d, self.pattern, self.value)?;
        for e in &self.witness {
            write!(f, " {e}")?;
        }
        Ok(())
    }
}

impl FromStr for FixtureLine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_fixture_line(s, 1)
    }
}

fn parse_fixture_line(s: &str, line_no: usize) -> Result<FixtureLine> {
    let fields: Vec<&str> = s.split('|').map(str::trim).collect();
    let [host, family, value, witness] = fields.as_slice() else {
        return Err(Error::parse(line_no, "expected four '|'-separated fields"));
    };
    let host: Vec<&str> = host.split_ascii_whitespace().collect();
    let (k, d) = match host.as_slice() {
        ["host", k, d] => (
            k.parse().map_err(|_| Error::parse(line_no, format!("bad k '{k}'")))?,
            d.parse().map_err(|_| Error::parse(line_no, format!("bad d '{d}'")))?,
        ),
        _ => return Err(Error::parse(line_no, "expected 'host <k> <d>'")),
    };
    let pattern = family.parse().map_err(|e: Error| Error::parse(line_no, e.to_string()))?;
    let value = value.parse().map_err(|_| Error::parse(line_no, format!("bad value '{value}'")))?;
    let witness = witness
        .split_ascii_whitespace()
        .map(|t| t.parse().map(EdgeId).map_err(|_| Error::parse(line_no, format!("bad edge id '{t}'"))))
        .collect::<Result<Vec<_>>>()?;
    if witness.len() as u64 != value {
        return Err(Error::parse(line_no, "witness size differs from value"));
    }
    if witness.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::parse(line_no, "witness ids must be strictly ascending"));
    }
    Ok(FixtureLine { k, d, pattern, value, witness })
}

/// Parses a golden file, skipping blank lines and `#` comments.
pub fn parse_fixtures(text: &str) -> Result<Vec<FixtureLine>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| parse_fixture_line(l, i + 1))
        .collect()
}
