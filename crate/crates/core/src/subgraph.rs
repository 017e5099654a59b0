use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::grid::{EdgeId, GridSpace, VertexId};

/// Hosts with more edges than this are not materialized.
pub const MAX_MATERIALIZED_EDGES: u64 = 1 << 28;

/// A spanning subgraph of a grid, stored as a dense edge-membership bitset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSubgraph {
    space: GridSpace,
    present: FixedBitSet,
}

impl EdgeSubgraph {
    pub fn empty(space: &GridSpace) -> Result<Self> {
        let n = space.edge_count();
        if n > MAX_MATERIALIZED_EDGES {
            return Err(Error::HostTooLarge(format!(
                "P_{}^{} has {n} edges, materialization limit is {MAX_MATERIALIZED_EDGES}",
                space.k(),
                space.d()
            )));
        }
        Ok(EdgeSubgraph { space: space.clone(), present: FixedBitSet::with_capacity(n as usize) })
    }

    pub fn full(space: &GridSpace) -> Result<Self> {
        let mut g = Self::empty(space)?;
        g.present.insert_range(..);
        Ok(g)
    }

    pub fn from_edges(space: &GridSpace, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let mut g = Self::empty(space)?;
        for e in edges {
            if !space.contains_edge(e) {
                return Err(Error::param(format!("edge id {e} outside the host")));
            }
            g.present.insert(e.index());
        }
        Ok(g)
    }

    pub fn space(&self) -> &GridSpace {
        &self.space
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        self.present.contains(e.index())
    }

    /// Returns true if the edge was absent.
    pub fn insert(&mut self, e: EdgeId) -> bool {
        !self.present.put(e.index())
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        let was = self.present.contains(e.index());
        self.present.set(e.index(), false);
        was
    }

    pub fn len(&self) -> usize {
        self.present.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.present.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.present.is_full()
    }

    /// Present edges, ascending.
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.present.ones().map(|i| EdgeId(i as u64))
    }

    /// Absent host edges, ascending.
    pub fn missing_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.present.zeroes().map(|i| EdgeId(i as u64))
    }

    pub fn is_subset(&self, other: &EdgeSubgraph) -> bool {
        self.present.is_subset(&other.present)
    }

    pub fn union_with(&mut self, other: &EdgeSubgraph) {
        self.present.union_with(&other.present);
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.space.incident_edges(v).into_iter().filter(|&e| self.contains(e)).count()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let d = self.space.d();
        (0..d).flat_map(move |i| {
            let down = self.space.step_down(v, i).filter(|&w| self.contains(self.space.edge_unchecked(w, i)));
            let up = self.space.step_up(v, i).filter(|_| self.contains(self.space.edge_unchecked(v, i)));
            down.into_iter().chain(up)
        })
    }

    /// Whether the subgraph connects every vertex of the host.
    pub fn is_connected_spanning(&self) -> bool {
        let n = self.space.vertex_count() as usize;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = n;
        for e in self.edges() {
            let (a, b) = self.space.endpoints(e);
            let (ra, rb) = (find(&mut parent, a.index()), find(&mut parent, b.index()));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components == 1
    }

    /// Acyclic and spanning-connected.
    pub fn is_spanning_tree(&self) -> bool {
        self.len() as u64 + 1 == self.space.vertex_count() && self.is_connected_spanning()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_and_counts() {
        let q = GridSpace::hypercube(3).unwrap();
        let mut g = EdgeSubgraph::empty(&q).unwrap();
        assert!(g.insert(EdgeId(3)));
        assert!(!g.insert(EdgeId(3)));
        assert_eq!(g.len(), 1);
        assert_eq!(g.missing_edges().count(), 11);
        assert!(g.remove(EdgeId(3)));
        assert!(g.is_empty());
        assert!(EdgeSubgraph::full(&q).unwrap().is_full());
    }

    #[test]
    fn rejects_foreign_edges() {
        let q = GridSpace::hypercube(2).unwrap();
        assert!(EdgeSubgraph::from_edges(&q, [EdgeId(4)]).is_err());
    }

    #[test]
    fn path_is_spanning_tree() {
        let q = GridSpace::hypercube(2).unwrap();
        let g = EdgeSubgraph::from_edges(&q, [EdgeId(0), EdgeId(1), EdgeId(2)]).unwrap();
        assert!(g.is_spanning_tree());
        let g = EdgeSubgraph::from_edges(&q, [EdgeId(0), EdgeId(1)]).unwrap();
        assert!(!g.is_connected_spanning());
        assert_eq!(g.neighbors(VertexId(0)).collect::<Vec<_>>(), vec![VertexId(1)]);
    }
}
