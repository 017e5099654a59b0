//! Grids `P_k^d` and hypercubes `Q_d = P_2^d`.
//!
//! Vertices are little-endian mixed-radix integers: the vertex with
//! coordinates `(c_0, .., c_{d-1})` has id `sum c_i * k^i`. On hypercubes the
//! id is the bitmask of the coordinates, with coordinate `i` at bit `i`.
//!
//! Every undirected edge has exactly one [`EdgeId`]. An edge is anchored at
//! its lower endpoint (`base`) and a direction `dir`; edge ids are grouped by
//! direction and are dense in `[0, d(k-1)k^(d-1))`.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The host grid `P_k^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridSpace {
    k: u32,
    d: u32,
    /// `k^0, .., k^d`
    powers: Vec<u64>,
    edges_per_dir: u64,
}

/// A maximal path of `k` vertices varying only coordinate `dir`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    pub dir: u32,
    /// The vertex of the line whose coordinate `dir` is zero.
    pub anchor: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexStats {
    /// Sum of the coordinates.
    pub weight: u64,
    /// Number of coordinates with value at least `r - 1`.
    pub large_count: u32,
}

impl GridSpace {
    pub fn new(k: u32, d: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::param(format!("side length k = {k} must be at least 2")));
        }
        if d < 1 {
            return Err(Error::param("dimension d must be at least 1"));
        }
        let mut powers = Vec::with_capacity(d as usize + 1);
        let mut p: u64 = 1;
        powers.push(p);
        for _ in 0..d {
            p = p
                .checked_mul(k as u64)
                .ok_or_else(|| Error::HostTooLarge(format!("{k}^{d} vertices overflow 64 bits")))?;
            powers.push(p);
        }
        let edges_per_dir = (k as u64 - 1) * powers[d as usize - 1];
        edges_per_dir
            .checked_mul(d as u64)
            .ok_or_else(|| Error::HostTooLarge(format!("edge count of P_{k}^{d} overflows 64 bits")))?;
        Ok(GridSpace { k, d, powers, edges_per_dir })
    }

    pub fn hypercube(d: u32) -> Result<Self> {
        Self::new(2, d)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_hypercube(&self) -> bool {
        self.k == 2
    }

    pub fn vertex_count(&self) -> u64 {
        self.powers[self.d as usize]
    }

    pub fn edge_count(&self) -> u64 {
        self.edges_per_dir * self.d as u64
    }

    pub fn line_count(&self) -> u64 {
        self.d as u64 * self.powers[self.d as usize - 1]
    }

    /// `k^i`
    pub fn power(&self, i: u32) -> u64 {
        self.powers[i as usize]
    }

    pub fn encode(&self, coords: &[u32]) -> Result<VertexId> {
        if coords.len() != self.d as usize {
            return Err(Error::param(format!("expected {} coordinates, got {}", self.d, coords.len())));
        }
        let mut id = 0u64;
        for (i, &c) in coords.iter().enumerate() {
            if c >= self.k {
                return Err(Error::CoordinateOutOfRange { index: i, value: c as u64, k: self.k });
            }
            id += c as u64 * self.powers[i];
        }
        Ok(VertexId(id))
    }

    pub fn decode(&self, v: VertexId) -> Vec<u32> {
        let k = self.k as u64;
        let mut rest = v.0;
        (0..self.d)
            .map(|_| {
                let c = rest % k;
                rest /= k;
                c as u32
            })
            .collect()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.0 < self.vertex_count()
    }

    #[inline]
    pub fn coord(&self, v: VertexId, i: u32) -> u32 {
        ((v.0 / self.powers[i as usize]) % self.k as u64) as u32
    }

    /// `v + e_i`, if it stays inside the grid.
    pub fn step_up(&self, v: VertexId, i: u32) -> Option<VertexId> {
        (self.coord(v, i) + 1 < self.k).then(|| VertexId(v.0 + self.powers[i as usize]))
    }

    /// `v - e_i`, if it stays inside the grid.
    pub fn step_down(&self, v: VertexId, i: u32) -> Option<VertexId> {
        (self.coord(v, i) > 0).then(|| VertexId(v.0 - self.powers[i as usize]))
    }

    /// All grid neighbours of `v`, ascending.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(2 * self.d as usize);
        for i in 0..self.d {
            out.extend(self.step_down(v, i));
            out.extend(self.step_up(v, i));
        }
        out.sort_unstable();
        out
    }

    pub fn weight(&self, v: VertexId) -> u64 {
        if self.k == 2 {
            return v.0.count_ones() as u64;
        }
        (0..self.d).map(|i| self.coord(v, i) as u64).sum()
    }

    pub fn vertex_stats(&self, v: VertexId, r: u32) -> VertexStats {
        let mut weight = 0;
        let mut large_count = 0;
        for i in 0..self.d {
            let c = self.coord(v, i);
            weight += c as u64;
            if c + 1 >= r {
                large_count += 1;
            }
        }
        VertexStats { weight, large_count }
    }

    /// The edge `{base, base + e_dir}`.
    pub fn edge(&self, base: VertexId, dir: u32) -> Result<EdgeId> {
        if dir >= self.d {
            return Err(Error::param(format!("direction {dir} out of range for d = {}", self.d)));
        }
        if !self.contains_vertex(base) {
            return Err(Error::param(format!("vertex {base} outside the host")));
        }
        if self.coord(base, dir) + 1 >= self.k {
            return Err(Error::param(format!("vertex {base} has no upper neighbour in direction {dir}")));
        }
        Ok(self.edge_unchecked(base, dir))
    }

    #[inline]
    pub(crate) fn edge_unchecked(&self, base: VertexId, dir: u32) -> EdgeId {
        let k = self.k as u64;
        let p = self.powers[dir as usize];
        let lower = base.0 % p;
        let c = (base.0 / p) % k;
        let upper = base.0 / (p * k);
        EdgeId(dir as u64 * self.edges_per_dir + lower + p * (c + (k - 1) * upper))
    }

    /// The edge joining `u` and `v`, if they are adjacent.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        if !self.contains_vertex(hi) {
            return None;
        }
        let diff = hi.0 - lo.0;
        let dir = self.powers[..self.d as usize].iter().position(|&p| p == diff)? as u32;
        (self.coord(lo, dir) + 1 < self.k).then(|| self.edge_unchecked(lo, dir))
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        e.0 < self.edge_count()
    }

    #[inline]
    pub fn edge_dir(&self, e: EdgeId) -> u32 {
        (e.0 / self.edges_per_dir) as u32
    }

    #[inline]
    pub fn edge_base(&self, e: EdgeId) -> VertexId {
        let k = self.k as u64;
        let dir = self.edge_dir(e);
        let p = self.powers[dir as usize];
        let idx = e.0 % self.edges_per_dir;
        let lower = idx % p;
        let rest = idx / p;
        let c = rest % (k - 1);
        let upper = rest / (k - 1);
        VertexId(lower + p * c + p * k * upper)
    }

    /// `(lower, upper)` endpoints.
    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let base = self.edge_base(e);
        (base, VertexId(base.0 + self.powers[self.edge_dir(e) as usize]))
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_count()).map(EdgeId)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId)
    }

    /// Edges incident to `v`, ascending.
    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        let mut out = Vec::with_capacity(2 * self.d as usize);
        for i in 0..self.d {
            if let Some(w) = self.step_down(v, i) {
                out.push(self.edge_unchecked(w, i));
            }
            if self.coord(v, i) + 1 < self.k {
                out.push(self.edge_unchecked(v, i));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn line_of_edge(&self, e: EdgeId) -> Line {
        let dir = self.edge_dir(e);
        let base = self.edge_base(e);
        let c = self.coord(base, dir) as u64;
        Line { dir, anchor: VertexId(base.0 - c * self.powers[dir as usize]) }
    }

    /// Dense index of a line in `[0, d k^(d-1))`.
    pub fn line_index(&self, line: Line) -> u64 {
        let k = self.k as u64;
        let p = self.powers[line.dir as usize];
        let lower = line.anchor.0 % p;
        let upper = line.anchor.0 / (p * k);
        line.dir as u64 * self.powers[self.d as usize - 1] + lower + p * upper
    }

    pub fn line_vertices(&self, line: Line) -> Vec<VertexId> {
        let p = self.powers[line.dir as usize];
        (0..self.k as u64).map(|c| VertexId(line.anchor.0 + c * p)).collect()
    }

    pub fn line_edges(&self, line: Line) -> Vec<EdgeId> {
        let p = self.powers[line.dir as usize];
        (0..self.k as u64 - 1).map(|c| self.edge_unchecked(VertexId(line.anchor.0 + c * p), line.dir)).collect()
    }

    pub fn lines(&self) -> impl Iterator<Item = Line> + '_ {
        (0..self.d).flat_map(move |dir| {
            let p = self.powers[dir as usize];
            let k = self.k as u64;
            (0..self.powers[self.d as usize - 1]).map(move |idx| {
                let lower = idx % p;
                let upper = idx / p;
                Line { dir, anchor: VertexId(lower + p * k * upper) }
            })
        })
    }

    pub(crate) fn check_subgrid_params(&self, r: u32, m: u32) -> Result<()> {
        if r < 2 || r > self.k {
            return Err(Error::param(format!("need 2 <= r <= k, got r = {r}, k = {}", self.k)));
        }
        if m < 1 || m > self.d {
            return Err(Error::param(format!("need 1 <= m <= d, got m = {m}, d = {}", self.d)));
        }
        Ok(())
    }

    /// Number of axis aligned copies of `P_r^m`: `C(d,m) (k-r+1)^m k^(d-m)`.
    pub fn axis_subgrid_count(&self, r: u32, m: u32) -> Result<u128> {
        self.check_subgrid_params(r, m)?;
        let binom = binomial_u128(self.d as u64, m as u64);
        let slide = (self.k - r + 1) as u128;
        let mut total = binom;
        for _ in 0..m {
            total = total.checked_mul(slide).ok_or_else(|| Error::HostTooLarge("subgrid count".into()))?;
        }
        for _ in m..self.d {
            total = total.checked_mul(self.k as u128).ok_or_else(|| Error::HostTooLarge("subgrid count".into()))?;
        }
        Ok(total)
    }

    /// All axis aligned copies of `P_r^m`, grouped by direction set.
    pub fn axis_subgrids(&self, r: u32, m: u32) -> Result<impl Iterator<Item = AxisSubgrid> + '_> {
        self.check_subgrid_params(r, m)?;
        let k = self.k;
        Ok((0..self.d).combinations(m as usize).flat_map(move |dirs| {
            let radix: Vec<u64> =
                (0..self.d).map(|i| if dirs.contains(&i) { (k - r + 1) as u64 } else { k as u64 }).collect();
            let count: u64 = radix.iter().product();
            (0..count).map(move |mut idx| {
                let mut corner = 0u64;
                for (i, &rad) in radix.iter().enumerate() {
                    corner += (idx % rad) * self.powers[i];
                    idx /= rad;
                }
                AxisSubgrid { r, dirs: dirs.clone(), corner: VertexId(corner) }
            })
        }))
    }

    /// Axis aligned copies of `P_r^m` that contain the edge `e`.
    pub fn axis_subgrids_through_edge(&self, e: EdgeId, r: u32, m: u32) -> Result<Vec<AxisSubgrid>> {
        self.check_subgrid_params(r, m)?;
        let dir = self.edge_dir(e);
        let base = self.edge_base(e);
        let coords = self.decode(base);
        let k = self.k;
        // Valid interval starts for each coordinate.
        let start_range = |i: u32| -> (u32, u32) {
            let c = coords[i as usize];
            if i == dir {
                // both c and c + 1 inside [s, s + r - 1]
                ((c + 2).saturating_sub(r), c.min(k - r))
            } else {
                ((c + 1).saturating_sub(r), c.min(k - r))
            }
        };
        let others: Vec<u32> = (0..self.d).filter(|&i| i != dir).collect();
        let mut out = Vec::new();
        for chosen in others.iter().copied().combinations(m as usize - 1) {
            let mut dirs = chosen.clone();
            dirs.push(dir);
            dirs.sort_unstable();
            let ranges: Vec<(u32, u32)> = dirs.iter().map(|&i| start_range(i)).collect();
            if ranges.iter().any(|&(lo, hi)| lo > hi) {
                continue;
            }
            // corner with all varying coordinates zeroed
            let mut fixed = base.0;
            for &i in &dirs {
                fixed -= coords[i as usize] as u64 * self.powers[i as usize];
            }
            let counts: Vec<u32> = ranges.iter().map(|&(lo, hi)| hi - lo + 1).collect();
            let total: u32 = counts.iter().product();
            for mut idx in 0..total {
                let mut corner = fixed;
                for (j, &i) in dirs.iter().enumerate() {
                    let s = ranges[j].0 + idx % counts[j];
                    idx /= counts[j];
                    corner += s as u64 * self.powers[i as usize];
                }
                out.push(AxisSubgrid { r, dirs: dirs.clone(), corner: VertexId(corner) });
            }
        }
        Ok(out)
    }
}

/// An axis aligned copy of `P_r^m`: the product of `m` intervals of length
/// `r` (in directions `dirs`) with singletons in the other coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AxisSubgrid {
    pub r: u32,
    /// Ascending, distinct.
    pub dirs: Vec<u32>,
    /// The vertex with the smallest coordinates; its value in each of `dirs`
    /// is the interval start, elsewhere the fixed value.
    pub corner: VertexId,
}

impl AxisSubgrid {
    pub fn m(&self) -> u32 {
        self.dirs.len() as u32
    }

    /// Expected edge count `m r^(m-1) (r-1)`.
    pub fn expected_edge_count(&self) -> u64 {
        let m = self.m() as u64;
        let r = self.r as u64;
        m * r.pow(self.m().saturating_sub(1)) * (r - 1)
    }

    pub fn is_valid_in(&self, space: &GridSpace) -> bool {
        space.contains_vertex(self.corner)
            && self.r >= 2
            && !self.dirs.is_empty()
            && self.dirs.windows(2).all(|w| w[0] < w[1])
            && self.dirs.iter().all(|&i| i < space.d() && space.coord(self.corner, i) + self.r <= space.k())
    }

    pub fn vertices(&self, space: &GridSpace) -> Vec<VertexId> {
        let r = self.r as u64;
        let total = r.pow(self.m());
        (0..total)
            .map(|mut idx| {
                let mut v = self.corner.0;
                for &i in &self.dirs {
                    v += (idx % r) * space.power(i);
                    idx /= r;
                }
                VertexId(v)
            })
            .collect()
    }

    /// All edges of the copy, ascending.
    pub fn edges(&self, space: &GridSpace) -> Vec<EdgeId> {
        let mut out = Vec::with_capacity(self.expected_edge_count() as usize);
        for v in self.vertices(space) {
            for &i in &self.dirs {
                let offset = space.coord(v, i) - space.coord(self.corner, i);
                if offset + 1 < self.r {
                    out.push(space.edge_unchecked(v, i));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn contains_vertex(&self, space: &GridSpace, v: VertexId) -> bool {
        (0..space.d()).all(|i| {
            let c = space.coord(v, i);
            let c0 = space.coord(self.corner, i);
            if self.dirs.contains(&i) {
                c >= c0 && c < c0 + self.r
            } else {
                c == c0
            }
        })
    }
}

/// Edge id of `{base, base ^ (1 << dir)}` in `Q_d`, where bit `dir` of
/// `base` is zero. Same numbering as [`GridSpace::edge`] with `k = 2`.
#[inline]
pub fn hypercube_edge(d: u32, base: u64, dir: u32) -> EdgeId {
    debug_assert!(base >> dir & 1 == 0);
    let lower = base & ((1u64 << dir) - 1);
    let upper = base >> (dir + 1);
    EdgeId(((dir as u64) << (d - 1)) | lower | (upper << dir))
}

pub(crate) fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u64) -> VertexId {
        VertexId(x)
    }

    #[test]
    fn encode_examples() {
        let q3 = GridSpace::new(2, 3).unwrap();
        assert_eq!(q3.encode(&[1, 0, 1]).unwrap(), v(5));
        let g = GridSpace::new(3, 2).unwrap();
        assert_eq!(g.encode(&[2, 1]).unwrap(), v(5));
        let p = GridSpace::new(4, 1).unwrap();
        assert_eq!(p.encode(&[0]).unwrap(), v(0));
    }

    #[test]
    fn encode_rejects_out_of_range() {
        let g = GridSpace::new(3, 2).unwrap();
        assert!(matches!(g.encode(&[3, 0]), Err(Error::CoordinateOutOfRange { index: 0, .. })));
        assert!(g.encode(&[0]).is_err());
    }

    #[test]
    fn rejects_overflowing_hosts() {
        assert!(GridSpace::new(2, 59).is_ok());
        assert!(matches!(GridSpace::new(2, 60), Err(Error::HostTooLarge(_))));
        assert!(matches!(GridSpace::new(2, 64), Err(Error::HostTooLarge(_))));
        assert!(matches!(GridSpace::new(10, 20), Err(Error::HostTooLarge(_))));
        assert!(GridSpace::new(1, 3).is_err());
        assert!(GridSpace::new(3, 0).is_err());
        assert!(GridSpace::hypercube(36).is_ok());
    }

    #[test]
    fn neighbor_examples() {
        let q3 = GridSpace::hypercube(3).unwrap();
        assert_eq!(q3.neighbors(v(0)), vec![v(1), v(2), v(4)]);
        let p = GridSpace::new(3, 1).unwrap();
        assert_eq!(p.neighbors(v(1)), vec![v(0), v(2)]);
        let g = GridSpace::new(3, 2).unwrap();
        assert_eq!(g.neighbors(v(4)), vec![v(1), v(3), v(5), v(7)]);
    }

    #[test]
    fn hypercube_ids_are_bitmasks() {
        let q = GridSpace::hypercube(5).unwrap();
        for x in q.vertices() {
            for i in 0..5 {
                assert_eq!(q.coord(x, i), ((x.0 >> i) & 1) as u32);
            }
        }
        // Q_2 edges in id order: 01, 23, 02, 13
        let q2 = GridSpace::hypercube(2).unwrap();
        let ends: Vec<_> = q2.edges().map(|e| q2.endpoints(e)).collect();
        assert_eq!(ends, vec![(v(0), v(1)), (v(2), v(3)), (v(0), v(2)), (v(1), v(3))]);
        let q5 = GridSpace::hypercube(5).unwrap();
        for e in q5.edges() {
            assert_eq!(hypercube_edge(5, q5.edge_base(e).0, q5.edge_dir(e)), e);
        }
    }

    #[test]
    fn subgrid_count_examples() {
        let q3 = GridSpace::hypercube(3).unwrap();
        assert_eq!(q3.axis_subgrids(2, 2).unwrap().count(), 6);
        let g = GridSpace::new(3, 2).unwrap();
        assert_eq!(g.axis_subgrids(2, 2).unwrap().count(), 4);
        let g = GridSpace::new(4, 2).unwrap();
        // brute force: every (dir, start, fixed) triple
        let brute = (0..2u32)
            .flat_map(|dir| (0..4u32).flat_map(move |start| (0..4u32).map(move |fixed| (dir, start, fixed))))
            .filter(|&(_, start, _)| start + 3 <= 4)
            .count();
        assert_eq!(brute, 16);
        assert_eq!(g.axis_subgrids(3, 1).unwrap().count(), 16);
        assert_eq!(g.axis_subgrid_count(3, 1).unwrap(), 16);
    }

    #[test]
    fn subgrid_parameter_errors() {
        let g = GridSpace::new(3, 2).unwrap();
        assert!(g.axis_subgrids(4, 1).is_err());
        assert!(g.axis_subgrids(1, 1).is_err());
        assert!(g.axis_subgrids(2, 3).is_err());
        assert!(g.axis_subgrids(2, 0).is_err());
    }

    #[test]
    fn vertex_stats_examples() {
        let g = GridSpace::new(4, 3).unwrap();
        let x = g.encode(&[3, 2, 0]).unwrap();
        assert_eq!(g.vertex_stats(x, 3), VertexStats { weight: 5, large_count: 2 });
        let q = GridSpace::hypercube(3).unwrap();
        assert_eq!(q.vertex_stats(v(7), 2), VertexStats { weight: 3, large_count: 3 });
        let g = GridSpace::new(3, 2).unwrap();
        assert_eq!(g.vertex_stats(v(0), 3), VertexStats { weight: 0, large_count: 0 });
    }

    #[test]
    fn lines_partition_edges() {
        for (k, d) in [(2, 3), (3, 2), (4, 3), (5, 2), (3, 4)] {
            let g = GridSpace::new(k, d).unwrap();
            let mut seen = vec![0u32; g.edge_count() as usize];
            let mut line_ids = Vec::new();
            for line in g.lines() {
                assert_eq!(g.line_vertices(line).len(), k as usize);
                let edges = g.line_edges(line);
                assert_eq!(edges.len(), k as usize - 1);
                for e in edges {
                    seen[e.index()] += 1;
                    assert_eq!(g.line_of_edge(e), line);
                }
                line_ids.push(g.line_index(line));
            }
            assert!(seen.iter().all(|&c| c == 1));
            line_ids.sort_unstable();
            assert_eq!(line_ids, (0..g.line_count()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn edges_through_edge_match_full_enumeration() {
        for (k, d, r, m) in [(2, 4, 2, 2), (3, 3, 2, 2), (4, 2, 3, 2), (4, 3, 3, 2), (3, 3, 3, 1), (2, 4, 2, 3)] {
            let g = GridSpace::new(k, d).unwrap();
            let all: Vec<_> = g.axis_subgrids(r, m).unwrap().collect();
            for e in g.edges() {
                let mut brute: Vec<_> = all.iter().filter(|s| s.edges(&g).binary_search(&e).is_ok()).cloned().collect();
                let mut fast = g.axis_subgrids_through_edge(e, r, m).unwrap();
                brute.sort();
                fast.sort();
                assert_eq!(brute, fast, "k={k} d={d} r={r} m={m} e={e}");
            }
        }
    }
}
