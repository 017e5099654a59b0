//! Edge vectors for the rank lower bound on weak saturation.
//!
//! Each edge `e` of `P_k^d` in direction `i` gets a vector `f_e` with the
//! moment vector `z_i` on both endpoint blocks and `y_t` on the block of its
//! line, where `t` is the larger endpoint coordinate. Every axis-aligned copy
//! of `P_r^m` carries a linear dependency among its edge vectors, so the rank
//! of all edge vectors bounds `wsat` from below.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{AxisSubgrid, EdgeId, GridSpace, VertexId};
use crate::wsat::WsatParams;

/// Hosts with more edges than this are not ranked.
pub const MAX_RANK_EDGES: u64 = 10_000;

/// `2^61 - 1`
const PRIME: u64 = (1 << 61) - 1;

/// `z_i = (i, i^2, ..., i^(m-1))` for `i = 1..=d`.
pub fn moment_vectors(d: u32, m: u32) -> Vec<Vec<BigInt>> {
    (1..=d as u64).map(|i| (1..m).map(|p| num_traits::pow(BigInt::from(i), p as usize)).collect()).collect()
}

/// `y_1, ..., y_{k-1}` in `Z^(r-2)`: the first `r - 2` are the standard
/// basis, and each later one is minus the sum of the `r - 2` before it.
pub fn y_vectors(k: u32, r: u32) -> Vec<Vec<BigInt>> {
    let dim = r as usize - 2;
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(k as usize - 1);
    for t in 0..k as usize - 1 {
        if t < dim {
            let mut y = vec![BigInt::zero(); dim];
            y[t] = BigInt::one();
            out.push(y);
        } else {
            let mut y = vec![BigInt::zero(); dim];
            for prev in &out[t - dim..t] {
                for (a, b) in y.iter_mut().zip(prev) {
                    *a -= b;
                }
            }
            out.push(y);
        }
    }
    out
}

/// Every `dim`-subset of `vectors` is linearly independent. Checked
/// exhaustively.
pub fn in_general_position(vectors: &[Vec<BigInt>], dim: usize) -> bool {
    vectors.iter().combinations(dim).all(|subset| {
        let rows: Vec<Vec<BigInt>> = subset.into_iter().cloned().collect();
        rank(&rows) == dim
    })
}

/// Any `r - 2` consecutive `y` vectors are independent and any `r - 1`
/// consecutive ones sum to zero.
pub fn y_laws_hold(k: u32, r: u32) -> bool {
    let ys = y_vectors(k, r);
    let dim = r as usize - 2;
    let independent = dim == 0 || ys.windows(dim).all(|w| rank(w) == dim);
    let sums_vanish = ys.windows(dim + 1).all(|w| (0..dim).all(|c| w.iter().map(|y| &y[c]).sum::<BigInt>().is_zero()));
    independent && sums_vanish
}

/// Block layout of the vector space: `m - 1` coordinates per vertex, then
/// `r - 2` per line.
#[derive(Clone, Debug)]
pub struct CertSpace {
    params: WsatParams,
    space: GridSpace,
    z: Vec<Vec<BigInt>>,
    y: Vec<Vec<BigInt>>,
}

/// Sparse vector: `(coordinate, value)` pairs, ascending by coordinate.
pub type EdgeVector = Vec<(usize, BigInt)>;

impl CertSpace {
    pub fn new(k: u32, r: u32, d: u32, m: u32) -> Result<Self> {
        let params = WsatParams::new(k, r, d, m)?;
        let space = GridSpace::new(k, d)?;
        Ok(CertSpace { params, space, z: moment_vectors(d, m), y: y_vectors(k, r) })
    }

    pub fn space(&self) -> &GridSpace {
        &self.space
    }

    pub fn vertex_dim(&self) -> usize {
        self.params.m as usize - 1
    }

    pub fn line_dim(&self) -> usize {
        self.params.r as usize - 2
    }

    pub fn dimension(&self) -> usize {
        self.space.vertex_count() as usize * self.vertex_dim() + self.space.line_count() as usize * self.line_dim()
    }

    pub fn vertex_block(&self, v: VertexId) -> usize {
        v.index() * self.vertex_dim()
    }

    pub fn line_block(&self, line_index: u64) -> usize {
        self.space.vertex_count() as usize * self.vertex_dim() + line_index as usize * self.line_dim()
    }

    pub fn edge_vector(&self, e: EdgeId) -> EdgeVector {
        let dir = self.space.edge_dir(e);
        let (a, b) = self.space.endpoints(e);
        let t = self.space.coord(b, dir) as usize;
        let z = &self.z[dir as usize];
        let line = self.space.line_index(self.space.line_of_edge(e));
        let mut out = Vec::with_capacity(2 * z.len() + self.line_dim());
        for v in [a, b] {
            let base = self.vertex_block(v);
            out.extend(z.iter().enumerate().map(|(c, x)| (base + c, x.clone())));
        }
        let base = self.line_block(line);
        out.extend(self.y[t - 1].iter().enumerate().map(|(c, x)| (base + c, x.clone())));
        out.retain(|(_, x)| !x.is_zero());
        out.sort_by_key(|&(c, _)| c);
        out
    }

    fn dense(&self, v: &EdgeVector) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dimension()];
        for (c, x) in v {
            out[*c] = x.clone();
        }
        out
    }
}

/// `f_e` for every edge, indexed by edge id.
pub fn build_edge_vectors(k: u32, r: u32, d: u32, m: u32) -> Result<(CertSpace, Vec<EdgeVector>)> {
    let cs = CertSpace::new(k, r, d, m)?;
    let vectors = (0..cs.space.edge_count()).into_par_iter().map(|e| cs.edge_vector(EdgeId(e))).collect();
    Ok((cs, vectors))
}

/// Exact rank by fraction-free (Bareiss) elimination.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        rest.par_iter_mut().for_each(|row| {
            let factor = std::mem::take(&mut row[col]);
            for j in col + 1..n_cols {
                let x = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = x / &prev;
            }
        });
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// Rank over `GF(2^61 - 1)`. Never exceeds the rational rank.
pub fn rank_mod_p(rows: &[Vec<BigInt>]) -> usize {
    let p = BigInt::from(PRIME);
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let r = ((x % &p) + &p) % &p;
                    u64::try_from(r).expect("reduced below p")
                })
                .collect()
        })
        .collect();
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % PRIME as u128) as u64;
    let inv = |x: u64| {
        let (mut base, mut exp, mut acc) = (x, PRIME - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    let n_cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(pr) = (rank..a.len()).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, pr);
        let scale = inv(a[rank][col]);
        for x in a[rank].iter_mut() {
            *x = mul(*x, scale);
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for j in col..n_cols {
                row[j] = (row[j] + PRIME - mul(f, pivot_row[j])) % PRIME;
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub rank_mod_p: usize,
}

impl RankReport {
    fn of(rows: &[Vec<BigInt>]) -> Self {
        RankReport { rank: rank(rows), rank_mod_p: rank_mod_p(rows) }
    }
}

/// Rank of the edge vectors of `edges`.
pub fn rank_of_edges(cs: &CertSpace, edges: impl IntoIterator<Item = EdgeId>) -> RankReport {
    let rows: Vec<Vec<BigInt>> = edges.into_iter().map(|e| cs.dense(&cs.edge_vector(e))).collect();
    RankReport::of(&rows)
}

/// Rank of all edge vectors of `P_k^d`.
pub fn rank_lower_bound(k: u32, r: u32, d: u32, m: u32) -> Result<RankReport> {
    let cs = CertSpace::new(k, r, d, m)?;
    let edges = cs.space.edge_count();
    if edges > MAX_RANK_EDGES {
        return Err(Error::HostTooLarge(format!("{edges} edges, rank limit is {MAX_RANK_EDGES}")));
    }
    Ok(rank_of_edges(&cs, cs.space.edges()))
}

/// Nonzero coefficients `d_e` with `sum d_e f_e = 0` over the edges of one
/// axis-aligned copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyCertificate {
    pub copy: AxisSubgrid,
    /// Ascending by edge id.
    pub coefficients: Vec<(EdgeId, BigRational)>,
    pub verified: bool,
}

#[derive(Serialize)]
struct CoefficientJson {
    edge: EdgeId,
    num: String,
    den: String,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    copy: &'a AxisSubgrid,
    coefficients: Vec<CoefficientJson>,
    verified: bool,
}

impl DependencyCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        let doc = CertificateJson {
            copy: &self.copy,
            coefficients: self
                .coefficients
                .iter()
                .map(|(e, c)| CoefficientJson { edge: *e, num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
            verified: self.verified,
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }
}

/// The one-dimensional null space of the columns `vectors`, normalized so
/// the first entry is 1.
fn null_vector(vectors: &[&Vec<BigInt>]) -> Result<Vec<BigRational>> {
    let n = vectors.len();
    let rows = vectors.first().map_or(0, |v| v.len());
    let mut a: Vec<Vec<BigRational>> =
        (0..rows).map(|i| vectors.iter().map(|v| BigRational::from_integer(v[i].clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        let lead = a[row][col].clone();
        for x in a[row].iter_mut() {
            *x /= &lead;
        }
        let pivot_row = a[row].clone();
        for (i, other) in a.iter_mut().enumerate() {
            if i != row && !other[col].is_zero() {
                let f = other[col].clone();
                for (x, p) in other.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return Err(Error::DegenerateNullSpace(format!("null space has dimension {}", free.len())));
    }
    let f = free[0];
    let mut c = vec![BigRational::zero(); n];
    c[f] = BigRational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        c[pc] = -a[r][f].clone();
    }
    if c.iter().any(Zero::is_zero) {
        return Err(Error::DegenerateNullSpace("a coefficient vanishes".into()));
    }
    let first = c[0].clone();
    Ok(c.into_iter().map(|x| x / &first).collect())
}

/// Coefficients `d_e = 2^(m(L)) c_i` for the copy, where `sum c_i z_i = 0`
/// over its directions and `m(L)` counts the directions in which an endpoint
/// of the edge's line sits strictly inside the copy.
pub fn dependency_certificate(copy: &AxisSubgrid, cs: &CertSpace) -> Result<DependencyCertificate> {
    let space = &cs.space;
    if copy.r != cs.params.r || copy.m() != cs.params.m || !copy.is_valid_in(space) {
        return Err(Error::param(format!("copy is not an axis-aligned P_{}^{} of the host", cs.params.r, cs.params.m)));
    }
    let zs: Vec<&Vec<BigInt>> = copy.dirs.iter().map(|&i| &cs.z[i as usize]).collect();
    let c = null_vector(&zs)?;
    let interior = |v: VertexId, skip: u32| {
        copy.dirs
            .iter()
            .filter(|&&j| j != skip)
            .filter(|&&j| {
                let off = space.coord(v, j) - space.coord(copy.corner, j);
                off > 0 && off + 1 < copy.r
            })
            .count() as u32
    };
    let coefficients: Vec<(EdgeId, BigRational)> = copy
        .edges(space)
        .into_iter()
        .map(|e| {
            let dir = space.edge_dir(e);
            let pos = copy.dirs.iter().position(|&j| j == dir).expect("copy edge in a copy direction");
            let (a, _) = space.endpoints(e);
            let scale = BigRational::from_integer(BigInt::one() << interior(a, dir));
            (e, scale * &c[pos])
        })
        .collect();

    let mut sum: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (e, coeff) in &coefficients {
        for (idx, x) in cs.edge_vector(*e) {
            *sum.entry(idx).or_insert_with(BigRational::zero) += coeff * BigRational::from_integer(x);
        }
    }
    let verified = sum.values().all(Zero::is_zero) && coefficients.iter().all(|(_, c)| !c.is_zero());
    Ok(DependencyCertificate { copy: copy.clone(), coefficients, verified })
}

/// Certificates for every copy of `P_r^m` in the host.
pub fn all_dependency_certificates(cs: &CertSpace) -> Result<Vec<DependencyCertificate>> {
    let copies: Vec<AxisSubgrid> = cs.space.axis_subgrids(cs.params.r, cs.params.m)?.collect();
    copies.par_iter().map(|copy| dependency_certificate(copy, cs)).collect()
}

/// Largest absolute numerator among certificate coefficients, for reports.
pub fn max_coefficient(cert: &DependencyCertificate) -> BigInt {
    cert.coefficients.iter().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wsat::{build_wsat_graph, wsat_grid_formula};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn moment_vector_examples() {
        assert_eq!(moment_vectors(3, 3), vec![ints(&[1, 1]), ints(&[2, 4]), ints(&[3, 9])]);
        assert_eq!(moment_vectors(2, 2), vec![ints(&[1]), ints(&[2])]);
        assert!(moment_vectors(4, 1).iter().all(Vec::is_empty));
        assert!(in_general_position(&moment_vectors(3, 3), 2));
        assert!(in_general_position(&moment_vectors(8, 4), 3));
        assert!(!in_general_position(&[ints(&[1, 2]), ints(&[2, 4])], 2));
    }

    #[test]
    fn y_vector_examples() {
        assert_eq!(y_vectors(4, 3), vec![ints(&[1]), ints(&[-1]), ints(&[1])]);
        assert_eq!(y_vectors(5, 4), vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[-1, -1]), ints(&[1, 0])]);
        assert_eq!(y_vectors(3, 2), vec![ints(&[]), ints(&[])]);
        for k in 2..=12 {
            for r in 2..=k {
                assert!(y_laws_hold(k, r), "k={k} r={r}");
            }
        }
    }

    #[test]
    fn edge_vector_examples() {
        let cs = CertSpace::new(2, 2, 2, 2).unwrap();
        let q = cs.space();
        let e = q.edge_between(VertexId(0), VertexId(1)).unwrap();
        assert_eq!(cs.edge_vector(e), vec![(0, BigInt::from(1)), (1, BigInt::from(1))]);

        let cs = CertSpace::new(3, 3, 1, 1).unwrap();
        let e = cs.space().edge_between(VertexId(1), VertexId(2)).unwrap();
        assert_eq!(cs.edge_vector(e), vec![(0, BigInt::from(-1))]);

        let (cs, vectors) = build_edge_vectors(4, 3, 2, 2).unwrap();
        for (e, v) in vectors.iter().enumerate() {
            let blocks: std::collections::BTreeSet<usize> =
                v.iter().map(|&(c, _)| if c < 16 { c } else { 16 + (c - 16) / cs.line_dim() }).collect();
            assert!(blocks.len() <= 3, "edge {e}");
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_lower_bound(2, 2, 3, 2).unwrap().rank, 7);
        assert_eq!(rank_lower_bound(3, 2, 2, 2).unwrap().rank, 8);
        assert_eq!(rank_lower_bound(2, 2, 2, 2).unwrap().rank, 3);
        let report = rank_lower_bound(3, 3, 2, 2).unwrap();
        assert_eq!(report.rank, 11);
        assert_eq!(report.rank_mod_p, 11);
    }

    #[test]
    fn rank_handles_dependent_rows() {
        let rows = vec![ints(&[1, 2, 3]), ints(&[2, 4, 6]), ints(&[0, 1, 1]), ints(&[1, 3, 4])];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank_mod_p(&rows), 2);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[ints(&[0, 0])]), 0);
    }

    #[test]
    fn wsat_graph_vectors_are_independent() {
        for (k, r, d, m) in [(2, 2, 3, 2), (3, 2, 2, 2), (3, 3, 2, 2), (4, 3, 2, 2), (2, 2, 3, 3)] {
            let cs = CertSpace::new(k, r, d, m).unwrap();
            let g = build_wsat_graph(k, r, d, m).unwrap();
            assert_eq!(rank_of_edges(&cs, g.edges()).rank, g.len(), "{k} {r} {d} {m}");
            assert_eq!(BigInt::from(g.len()), wsat_grid_formula(k, r, d, m).unwrap());
        }
    }

    #[test]
    fn certificate_examples() {
        let cs = CertSpace::new(2, 2, 2, 2).unwrap();
        let copy = cs.space().axis_subgrids(2, 2).unwrap().next().unwrap();
        let cert = dependency_certificate(&copy, &cs).unwrap();
        assert!(cert.verified);
        // c = (1, -1/2), all m(L) = 0
        let values: Vec<BigRational> = cert.coefficients.iter().map(|(_, c)| c.clone()).collect();
        assert_eq!(values, vec![rat(1, 1), rat(1, 1), rat(-1, 2), rat(-1, 2)]);

        let cs = CertSpace::new(3, 2, 2, 2).unwrap();
        let copy = cs.space().axis_subgrids(2, 2).unwrap().next().unwrap();
        assert!(dependency_certificate(&copy, &cs).unwrap().verified);

        let cs = CertSpace::new(3, 3, 1, 1).unwrap();
        let copy = cs.space().axis_subgrids(3, 1).unwrap().next().unwrap();
        let cert = dependency_certificate(&copy, &cs).unwrap();
        assert!(cert.verified);
        assert!(cert.coefficients.iter().all(|(_, c)| c.is_one()));

        let json = cert.to_json();
        assert_eq!(json["coefficients"][0]["num"], "1");
        assert_eq!(json["verified"], true);
    }

    #[test]
    fn certificates_for_all_copies() {
        for (k, r, d, m) in [(4, 3, 2, 2), (2, 2, 4, 3), (4, 4, 2, 2), (3, 3, 3, 2)] {
            let cs = CertSpace::new(k, r, d, m).unwrap();
            let certs = all_dependency_certificates(&cs).unwrap();
            assert!(!certs.is_empty());
            assert!(certs.iter().all(|c| c.verified), "{k} {r} {d} {m}");
        }
    }

    #[test]
    fn rejects_mismatched_copy() {
        let cs = CertSpace::new(3, 3, 2, 2).unwrap();
        let copy = cs.space().axis_subgrids(2, 2).unwrap().next().unwrap();
        assert!(dependency_certificate(&copy, &cs).is_err());
    }
}
