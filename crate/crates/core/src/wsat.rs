//! Exact weak saturation numbers for axis-aligned grids and the matching
//! extremal construction.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grid::{EdgeId, GridSpace, VertexId};
use crate::subgraph::EdgeSubgraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WsatParams {
    pub k: u32,
    pub r: u32,
    pub d: u32,
    pub m: u32,
}

impl WsatParams {
    pub fn new(k: u32, r: u32, d: u32, m: u32) -> Result<Self> {
        if r < 2 || k < r {
            return Err(Error::param(format!("need k >= r >= 2, got k = {k}, r = {r}")));
        }
        if m < 1 || d < m {
            return Err(Error::param(format!("need d >= m >= 1, got d = {d}, m = {m}")));
        }
        Ok(WsatParams { k, r, d, m })
    }
}

/// `base^exp` with `0^0 = 1`.
fn pow(base: u32, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

fn choose(n: u32, k: u32) -> BigInt {
    BigInt::from(binomial(BigUint::from(n), BigUint::from(k)))
}

/// `wsat*(P_k^d, P_r^m)`.
///
/// Vertices are grouped by `j` large coordinates (`>= r - 1`) and `i`
/// nonzero small ones; each contributes `i + min(j, m - 1)` edges.
pub fn wsat_grid_formula(k: u32, r: u32, d: u32, m: u32) -> Result<BigInt> {
    WsatParams::new(k, r, d, m)?;
    let mut total = BigInt::zero();
    for j in 0..=d {
        for i in 0..=d - j {
            let count = choose(d, j) * choose(d - j, i) * pow(k - r + 1, j) * pow(r - 2, i);
            total += BigInt::from(m - 1 + i) * &count;
            if j + 2 <= m {
                total -= BigInt::from(m - 1 - j) * &count;
            }
        }
    }
    Ok(total)
}

/// `wsat(Q_d, Q_m) = (m - 1) 2^d - sum_{j <= m - 2} (m - 1 - j) C(d, j)`.
pub fn wsat_cube_formula(d: u32, m: u32) -> Result<BigInt> {
    WsatParams::new(2, 2, d, m)?;
    let mut total = BigInt::from(m - 1) * pow(2, d);
    for j in 0..m.saturating_sub(1) {
        total -= BigInt::from(m - 1 - j) * choose(d, j);
    }
    Ok(total)
}

/// Downward edges from `v` kept by the construction: every nonzero small
/// coordinate, and the `min(L(v), m - 1)` lowest-indexed large ones.
fn kept_down_dirs(space: &GridSpace, v: VertexId, r: u32, m: u32) -> Vec<u32> {
    let mut large_left = m - 1;
    let mut out = Vec::new();
    for i in 0..space.d() {
        let c = space.coord(v, i);
        if c == 0 {
            continue;
        }
        if c + 1 < r {
            out.push(i);
        } else if large_left > 0 {
            large_left -= 1;
            out.push(i);
        }
    }
    out
}

/// The weakly saturated graph realizing [`wsat_grid_formula`].
pub fn build_wsat_graph(k: u32, r: u32, d: u32, m: u32) -> Result<EdgeSubgraph> {
    WsatParams::new(k, r, d, m)?;
    let space = GridSpace::new(k, d)?;
    let mut g = EdgeSubgraph::empty(&space)?;
    for v in space.vertices() {
        for i in kept_down_dirs(&space, v, r, m) {
            let below = space.step_down(v, i).expect("nonzero coordinate");
            g.insert(space.edge(below, i)?);
        }
    }
    Ok(g)
}

/// Missing edges ordered by the coordinate sum of their upper endpoint,
/// then by id.
pub fn canonical_percolation_order(g: &EdgeSubgraph) -> Vec<EdgeId> {
    let space = g.space();
    let mut missing: Vec<(u64, EdgeId)> = g.missing_edges().map(|e| (space.weight(space.endpoints(e).1), e)).collect();
    missing.sort_unstable();
    missing.into_iter().map(|(_, e)| e).collect()
}

/// Number of edges the construction keeps below `v`.
pub fn vertex_contribution(space: &GridSpace, v: VertexId, r: u32, m: u32) -> u64 {
    let stats = space.vertex_stats(v, r);
    let small = (0..space.d()).filter(|&i| (1..r - 1).contains(&space.coord(v, i))).count() as u64;
    small + (stats.large_count as u64).min(m as u64 - 1)
}
