//! Spanning trees of `P_k^d` that are weakly saturated for the even cycle
//! `C_{2l}` whenever `d >= l`.

use crate::error::{Error, Result};
use crate::grid::{GridSpace, VertexId};
use crate::subgraph::EdgeSubgraph;

/// The tree on `Q_l`: every vertex of weight `t` is joined to one vertex of
/// weight `t - 1`. The chain `x_t = 1^t 0^(l-t)` is kept together, and every
/// other vertex hangs off its smallest-id lower neighbour outside the chain.
pub fn build_base_tree(l: u32) -> Result<EdgeSubgraph> {
    if l < 2 {
        return Err(Error::param(format!("cycle half-length l = {l} must be at least 2")));
    }
    let space = GridSpace::hypercube(l)?;
    let mut g = EdgeSubgraph::empty(&space)?;
    let chain = |t: u32| (1u64 << t) - 1;
    for v in 1..1u64 << l {
        let t = v.count_ones();
        let parent = if t == 1 || v == chain(t) {
            chain(t - 1)
        } else {
            (0..l)
                .filter(|&b| v >> b & 1 == 1)
                .map(|b| v & !(1 << b))
                .filter(|&y| y != chain(t - 1))
                .min()
                .expect("weight >= 2 leaves a lower neighbour off the chain")
        };
        g.insert(space.edge_between(VertexId(v), VertexId(parent)).expect("adjacent"));
    }
    Ok(g)
}

/// A `(k^d - 1)`-edge spanning tree of `P_k^d`, weakly `C_{2l}`-saturated.
///
/// Extra dimensions are peeled off first: the tree for `d - 1` is placed on
/// the layer where the last coordinate is zero, plus every edge in the last
/// direction. Then side lengths: the tree for `k - 1` is placed on the
/// vertices with no coordinate equal to `k - 1`, and each remaining vertex
/// is joined downwards in the lowest coordinate where it equals `k - 1`.
pub fn build_cycle_tree(k: u32, d: u32, l: u32) -> Result<EdgeSubgraph> {
    if k < 2 || l < 2 || d < l {
        return Err(Error::param(format!("need k >= 2 and d >= l >= 2, got k = {k}, d = {d}, l = {l}")));
    }
    let space = GridSpace::new(k, d)?;
    if d > l {
        let smaller = build_cycle_tree(k, d - 1, l)?;
        let mut g = EdgeSubgraph::empty(&space)?;
        let sub = smaller.space();
        for e in smaller.edges() {
            let (a, b) = sub.endpoints(e);
            // vertex ids of the bottom layer coincide with those of P_k^(d-1)
            g.insert(space.edge_between(a, b).expect("adjacent in the bottom layer"));
        }
        for v in space.vertices() {
            if space.coord(v, d - 1) + 1 < k {
                g.insert(space.edge(v, d - 1)?);
            }
        }
        return Ok(g);
    }
    if k > 2 {
        let smaller = build_cycle_tree(k - 1, d, l)?;
        let sub = smaller.space();
        let mut g = EdgeSubgraph::empty(&space)?;
        let lift = |v: VertexId| space.encode(&sub.decode(v)).expect("coordinates below k - 1");
        for e in smaller.edges() {
            let (a, b) = sub.endpoints(e);
            g.insert(space.edge_between(lift(a), lift(b)).expect("adjacent"));
        }
        for v in space.vertices() {
            if let Some(i) = (0..d).find(|&i| space.coord(v, i) == k - 1) {
                let w = space.step_down(v, i).expect("k - 1 > 0");
                g.insert(space.edge(w, i)?);
            }
        }
        return Ok(g);
    }
    build_base_tree(l)
}
