//! A sparse `Q_m`-saturated subgraph of `Q_d`.
//!
//! The coordinates of `Q_d` are split into `m` intervals of length
//! `6(2^t - 1)`, each cut into six blocks indexed by `(r, gamma)`, followed
//! by a tail of length `s`. Vertices are classified by how many blocks land
//! in a Hamming code, and edges are chosen by a local rule that depends on
//! the two endpoint classes, an edge colouring and a parity condition.

use std::fmt;
use std::time::Duration;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{find_coloring, hamming_code, EdgeColoring, HammingCode};
use crate::error::{Error, Result};
use crate::grid::{binomial_u128, hypercube_edge, AxisSubgrid, EdgeId, GridSpace, VertexId};
use crate::percolation::{creates_new_copy, PatternFamily};
use crate::subgraph::EdgeSubgraph;

/// Vertex ids are `u64` bitmasks.
pub const MAX_DIMENSION: u32 = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SatParams {
    m: u32,
    d: u32,
    t: u32,
    s: u32,
}

/// A contiguous run of coordinates in the layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    /// 1-based interval index; `m + 1` is the tail.
    pub interval: u32,
    /// `(r, gamma)` for the six blocks of an interval, `None` for the tail.
    pub label: Option<(u32, u32)>,
    pub start: u32,
    pub len: u32,
}

impl SatParams {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// `2^t - 1`, the length of one block.
    pub fn block_len(&self) -> u32 {
        (1 << self.t) - 1
    }

    pub fn interval_len(&self, i: u32) -> u32 {
        if i == self.m + 1 {
            self.s
        } else {
            6 * self.block_len()
        }
    }

    pub fn interval_start(&self, i: u32) -> u32 {
        debug_assert!((1..=self.m + 1).contains(&i));
        (i - 1) * 6 * self.block_len()
    }

    /// First coordinate of block `(i, r, gamma)`. Blocks are ordered
    /// `r * 3 + gamma` inside their interval.
    pub fn block_start(&self, i: u32, r: u32, gamma: u32) -> u32 {
        self.interval_start(i) + (r * 3 + gamma) * self.block_len()
    }

    /// 1-based interval containing coordinate `bit`.
    pub fn interval_of(&self, bit: u32) -> u32 {
        (bit / (6 * self.block_len()) + 1).min(self.m + 1)
    }

    pub fn blocks(&self) -> Vec<Block> {
        let n = self.block_len();
        let mut out = Vec::with_capacity(6 * self.m as usize + 1);
        for i in 1..=self.m {
            for r in 0..2 {
                for gamma in 0..3 {
                    out.push(Block {
                        interval: i,
                        label: Some((r, gamma)),
                        start: self.block_start(i, r, gamma),
                        len: n,
                    });
                }
            }
        }
        if self.s > 0 {
            out.push(Block { interval: self.m + 1, label: None, start: self.interval_start(self.m + 1), len: self.s });
        }
        out
    }
}

/// Finds the unique `t >= 1` and `0 <= s < 6m 2^t` with `d = 6m(2^t - 1) + s`.
pub fn derive_params(m: u32, d: u32) -> Result<SatParams> {
    if m < 2 {
        return Err(Error::param(format!("m = {m} must be at least 2")));
    }
    if d < 6 * m {
        return Err(Error::param(format!("d = {d} is below 6m = {}, so no t >= 1 fits", 6 * m)));
    }
    if d > MAX_DIMENSION {
        return Err(Error::HostTooLarge(format!("d = {d} exceeds {MAX_DIMENSION}")));
    }
    let (m64, d64) = (m as u64, d as u64);
    let mut t = 1u32;
    while d64 >= 6 * m64 * ((1u64 << (t + 1)) - 1) {
        t += 1;
    }
    let s = d64 - 6 * m64 * ((1u64 << t) - 1);
    Ok(SatParams { m, d, t, s: s as u32 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexClass {
    X,
    A(u32),
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexClass::X => write!(f, "X"),
            VertexClass::A(j) => write!(f, "A_{j}"),
        }
    }
}

/// Verification over everything, or over `samples` uniform draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checked: u64,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Observations {
    pub isolated_x_and_top: bool,
    pub a0_independent: bool,
    pub code_blocks_fix_interval: bool,
    pub tail_edges_stay_in_class: bool,
    pub no_code_to_code_edges: bool,
}

impl Observations {
    pub fn all(&self) -> bool {
        self.isolated_x_and_top
            && self.a0_independent
            && self.code_blocks_fix_interval
            && self.tail_edges_stay_in_class
            && self.no_code_to_code_edges
    }
}

/// Class sizes; `a[j] = |A_j|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub x: u128,
    pub a: Vec<u128>,
}

/// Exact class sizes. With `b = 2^(2^t-1) - |C|`, one interval avoids the
/// code in `b^6` ways and meets it in exactly one block in `6 |C| b^5` ways.
pub fn class_counts(params: &SatParams) -> ClassCounts {
    let n = params.block_len();
    let c = 1u128 << (n - params.t);
    let b = (1u128 << n) - c;
    let none = b.pow(6);
    let one = 6 * c * b.pow(5);
    let m = params.m;
    let a: Vec<u128> =
        (0..=m).map(|j| (binomial_u128(m as u64, j as u64) * one.pow(j) * none.pow(m - j)) << params.s).collect();
    let x = (1u128 << params.d) - a.iter().sum::<u128>();
    ClassCounts { x, a }
}

/// The construction's inputs: layout, code and the two colourings (of the
/// interval cube `Q_{6(2^t-1)}` and of the tail cube `Q_s`).
#[derive(Clone, Debug)]
pub struct SatConstruction {
    params: SatParams,
    code: HammingCode,
    phi1: EdgeColoring,
    phi2: EdgeColoring,
}

const CLASS_X: u8 = u8::MAX;

impl SatConstruction {
    pub fn new(params: SatParams, code: HammingCode, phi1: EdgeColoring, phi2: EdgeColoring) -> Result<Self> {
        if code.t() != params.t {
            return Err(Error::param(format!("code has t = {}, layout needs t = {}", code.t(), params.t)));
        }
        if phi1.s() != params.interval_len(1) {
            return Err(Error::param(format!(
                "interval colouring is on Q_{}, layout needs Q_{}",
                phi1.s(),
                params.interval_len(1)
            )));
        }
        if phi2.s() != params.s {
            return Err(Error::param(format!("tail colouring is on Q_{}, layout needs Q_{}", phi2.s(), params.s)));
        }
        Ok(SatConstruction { params, code, phi1, phi2 })
    }

    /// Builds the code and searches for both colourings.
    pub fn search(params: SatParams, seed: u64, budget: Duration) -> Result<Self> {
        let code = hamming_code(params.t)?;
        let phi1 = find_coloring(params.interval_len(1), seed, budget)?;
        let phi2 = find_coloring(params.s, seed, budget)?;
        Self::new(params, code, phi1, phi2)
    }

    pub fn params(&self) -> &SatParams {
        &self.params
    }

    pub fn code(&self) -> &HammingCode {
        &self.code
    }

    pub fn space(&self) -> Result<GridSpace> {
        GridSpace::hypercube(self.params.d)
    }

    #[inline]
    fn bits(v: u64, start: u32, len: u32) -> u64 {
        if len == 0 {
            0
        } else {
            (v >> start) & (u64::MAX >> (64 - len))
        }
    }

    /// `v(i)`, the restriction of `v` to interval `i` (the tail for `m + 1`).
    #[inline]
    pub fn interval_word(&self, v: u64, i: u32) -> u64 {
        Self::bits(v, self.params.interval_start(i), self.params.interval_len(i))
    }

    /// `v(i, r, gamma)`.
    #[inline]
    pub fn block_word(&self, v: u64, i: u32, r: u32, gamma: u32) -> u64 {
        Self::bits(v, self.params.block_start(i, r, gamma), self.params.block_len())
    }

    #[inline]
    fn in_code(&self, v: u64, i: u32, idx: u32) -> bool {
        self.code.contains(self.block_word(v, i, idx / 3, idx % 3))
    }

    fn class_code(&self, v: u64) -> u8 {
        let mut j = 0u8;
        for i in 1..=self.params.m {
            let hits = (0..6).filter(|&idx| self.in_code(v, i, idx)).count();
            if hits >= 2 {
                return CLASS_X;
            }
            j += hits as u8;
        }
        j
    }

    pub fn classify(&self, v: VertexId) -> VertexClass {
        match self.class_code(v.0) {
            CLASS_X => VertexClass::X,
            j => VertexClass::A(j as u32),
        }
    }

    /// Colour of the edge `u(k) v(k)` in the interval or tail cube.
    fn phi(&self, k: u32, u: u64, v: u64) -> u8 {
        let pos = (u ^ v).trailing_zeros() - self.params.interval_start(k);
        let base = self.interval_word(u & v, k);
        if k == self.params.m + 1 {
            self.phi2.color(hypercube_edge(self.params.s, base, pos))
        } else {
            self.phi1.color(hypercube_edge(self.params.interval_len(k), base, pos))
        }
    }

    fn check_adjacent(&self, u: VertexId, v: VertexId) -> Result<()> {
        let limit = self.params.d;
        if (u.0 ^ v.0).count_ones() != 1 || u.0 >> limit != 0 || v.0 >> limit != 0 {
            return Err(Error::NotAdjacent(u.0, v.0));
        }
        Ok(())
    }

    /// Whether `uv` is an edge of the base graph.
    pub fn edge_in_g(&self, u: VertexId, v: VertexId) -> Result<bool> {
        self.check_adjacent(u, v)?;
        Ok(self.edge_rule(u.0, v.0, self.class_code(u.0), self.class_code(v.0)))
    }

    fn edge_rule(&self, u: u64, v: u64, cu: u8, cv: u8) -> bool {
        let m = self.params.m;
        if cu == CLASS_X || cv == CLASS_X {
            return false;
        }
        let (lo, hi) = (cu.min(cv) as u32, cu.max(cv) as u32);
        if hi == lo + 1 {
            return hi < m;
        }
        if lo != hi || lo == 0 || lo >= m {
            return false;
        }
        let j = lo;
        let k = self.params.interval_of((u ^ v).trailing_zeros());
        if k <= m && (0..6).any(|idx| self.in_code(u, k, idx) && self.in_code(v, k, idx)) {
            return false;
        }
        let colour = self.phi(k, u, v) as u32;
        let base_parity = v.count_ones() + self.interval_word(v, k).count_ones() + j - 1;
        for i in (1..=m).filter(|&i| i != k) {
            let weight_i = self.interval_word(v, i).count_ones();
            for idx in (0..6).filter(|&idx| self.in_code(v, i, idx)) {
                let (r, gamma) = (idx / 3, idx % 3);
                if gamma != colour || (base_parity + weight_i) % 2 != r {
                    return false;
                }
            }
        }
        true
    }

    fn all_class_codes(&self) -> Vec<u8> {
        (0..1u64 << self.params.d).into_par_iter().map(|v| self.class_code(v)).collect()
    }

    /// Materializes the base graph on `Q_d`.
    pub fn build_base_graph(&self) -> Result<EdgeSubgraph> {
        let space = self.space()?;
        let mut g = EdgeSubgraph::empty(&space)?;
        let classes = self.all_class_codes();
        let present: Vec<u64> = (0..space.edge_count())
            .into_par_iter()
            .filter(|&e| {
                let (a, b) = space.endpoints(EdgeId(e));
                self.edge_rule(a.0, b.0, classes[a.index()], classes[b.index()])
            })
            .collect();
        for e in present {
            g.insert(EdgeId(e));
        }
        Ok(g)
    }

    /// The copy of `Q_m` through `uv` that appears once `uv` is added, for
    /// `u, v` in `A_0`.
    pub fn witness_subcube(&self, u: VertexId, v: VertexId) -> Result<AxisSubgrid> {
        self.check_adjacent(u, v)?;
        if self.class_code(u.0) != 0 || self.class_code(v.0) != 0 {
            return Err(Error::NotA0Pair);
        }
        let m = self.params.m;
        let uv_bit = (u.0 ^ v.0).trailing_zeros();
        let k = self.params.interval_of(uv_bit);
        let gamma = self.phi(k, u.0, v.0) as u32;
        let base_parity = v.0.count_ones() + self.interval_word(v.0, k).count_ones();
        let mut dirs = vec![uv_bit];
        for i in (1..=m).filter(|&i| i != k).take(m as usize - 1) {
            let r = (base_parity + self.interval_word(v.0, i).count_ones()) % 2;
            let word = self.block_word(v.0, i, r, gamma);
            let flip = (word ^ self.code.nearest_codeword(word)).trailing_zeros();
            dirs.push(self.params.block_start(i, r, gamma) + flip);
        }
        dirs.sort_unstable();
        let mask = dirs.iter().fold(0u64, |acc, &b| acc | 1 << b);
        Ok(AxisSubgrid { r: 2, dirs, corner: VertexId(v.0 & !mask) })
    }

    /// `w` has `2^m` vertices, contains `u` and `v`, and every edge other than
    /// `uv` is in the base graph.
    pub fn witness_is_valid(&self, u: VertexId, v: VertexId, w: &AxisSubgrid) -> bool {
        let Ok(space) = self.space() else { return false };
        if w.r != 2 || w.m() != self.params.m || !w.is_valid_in(&space) {
            return false;
        }
        if !w.contains_vertex(&space, u) || !w.contains_vertex(&space, v) {
            return false;
        }
        let uv = space.edge_between(u, v);
        w.edges(&space).into_iter().filter(|&e| Some(e) != uv).all(|e| {
            let (a, b) = space.endpoints(e);
            self.edge_rule(a.0, b.0, self.class_code(a.0), self.class_code(b.0))
        })
    }

    /// Checks `Q_m`-freeness of the base graph, exhaustively on the
    /// materialized graph or on uniformly random subcubes via the edge rule.
    pub fn verify_qm_free(&self, mode: CheckMode) -> Result<CheckReport> {
        match mode {
            CheckMode::Exhaustive => verify_qm_free(&self.build_base_graph()?, self.params.m),
            CheckMode::Sampled { samples, seed } => {
                let (d, m) = (self.params.d, self.params.m);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut passed = true;
                for _ in 0..samples {
                    let mut dirs: Vec<u32> =
                        sample(&mut rng, d as usize, m as usize).into_iter().map(|x| x as u32).collect();
                    dirs.sort_unstable();
                    let mask = dirs.iter().fold(0u64, |acc, &b| acc | 1 << b);
                    let corner = rng.random::<u64>() & (u64::MAX >> (64 - d)) & !mask;
                    if self.subcube_in_base(corner, &dirs) {
                        passed = false;
                        break;
                    }
                }
                Ok(CheckReport { checked: samples, passed })
            }
        }
    }

    fn subcube_in_base(&self, corner: u64, dirs: &[u32]) -> bool {
        (0..1u64 << dirs.len()).all(|sub| {
            let v = dirs.iter().enumerate().fold(corner, |acc, (j, &b)| acc | (sub >> j & 1) << b);
            dirs.iter().all(|&b| {
                v >> b & 1 == 1 || {
                    let u = v | 1 << b;
                    self.edge_rule(v, u, self.class_code(v), self.class_code(u))
                }
            })
        })
    }

    /// Validates the witness subcube of every (or `samples` random) host
    /// edges with both endpoints in `A_0`.
    pub fn verify_a0_saturation(&self, mode: CheckMode) -> Result<CheckReport> {
        let d = self.params.d;
        match mode {
            CheckMode::Exhaustive => {
                let space = self.space()?;
                EdgeSubgraph::empty(&space)?;
                let classes = self.all_class_codes();
                let (checked, failures) = (0..1u64 << d)
                    .into_par_iter()
                    .filter(|&v| classes[v as usize] == 0)
                    .map(|v| {
                        let mut checked = 0u64;
                        let mut failures = 0u64;
                        for b in (0..d).filter(|&b| v >> b & 1 == 0) {
                            let u = v | 1 << b;
                            if classes[u as usize] != 0 {
                                continue;
                            }
                            checked += 1;
                            if !self.a0_edge_ok(VertexId(u), VertexId(v)) {
                                failures += 1;
                            }
                        }
                        (checked, failures)
                    })
                    .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
                Ok(CheckReport { checked, passed: failures == 0 })
            }
            CheckMode::Sampled { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let max_attempts = samples.saturating_mul(100_000).max(100_000);
                let mut checked = 0u64;
                let mut attempts = 0u64;
                while checked < samples {
                    attempts += 1;
                    if attempts > max_attempts {
                        return Err(Error::BudgetExhausted(format!(
                            "found only {checked} of {samples} A_0 edges in {max_attempts} draws"
                        )));
                    }
                    let v = rng.random::<u64>() & (u64::MAX >> (64 - d));
                    let b = rng.random_range(0..d);
                    let u = v ^ 1 << b;
                    if self.class_code(v) != 0 || self.class_code(u) != 0 {
                        continue;
                    }
                    checked += 1;
                    if !self.a0_edge_ok(VertexId(u), VertexId(v)) {
                        return Ok(CheckReport { checked, passed: false });
                    }
                }
                Ok(CheckReport { checked, passed: true })
            }
        }
    }

    fn a0_edge_ok(&self, u: VertexId, v: VertexId) -> bool {
        self.witness_subcube(u, v).is_ok_and(|w| self.witness_is_valid(u, v, &w))
    }

    /// Checks the five edge-level properties of the base graph on `g`.
    pub fn observations(&self, g: &EdgeSubgraph) -> Observations {
        let m = self.params.m;
        let space = g.space();
        let edges: Vec<EdgeId> = g.edges().collect();
        let check = |pred: &(dyn Fn(u64, u64, u8, u8) -> bool + Sync)| {
            edges.par_iter().all(|&e| {
                let (a, b) = space.endpoints(e);
                pred(a.0, b.0, self.class_code(a.0), self.class_code(b.0))
            })
        };
        let top = m as u8;
        Observations {
            isolated_x_and_top: check(&|_, _, ca, cb| ![ca, cb].iter().any(|&c| c == CLASS_X || c == top)),
            a0_independent: check(&|_, _, ca, cb| !(ca == 0 && cb == 0)),
            code_blocks_fix_interval: check(&|a, b, _, _| {
                let k = self.params.interval_of((a ^ b).trailing_zeros());
                (1..=m).all(|i| i != k || (0..6).all(|idx| !(self.in_code(a, i, idx) && self.in_code(b, i, idx))))
            }),
            tail_edges_stay_in_class: check(&|a, b, ca, cb| {
                self.params.interval_of((a ^ b).trailing_zeros()) != m + 1 || (ca == cb && ca >= 1 && (ca as u32) < m)
            }),
            no_code_to_code_edges: check(&|a, b, _, _| {
                let k = self.params.interval_of((a ^ b).trailing_zeros());
                k > m
                    || (0..6).all(|idx| {
                        let (r, gamma) = (idx / 3, idx % 3);
                        let (x, y) = (self.block_word(a, k, r, gamma), self.block_word(b, k, r, gamma));
                        x == y || !(self.code.contains(x) && self.code.contains(y))
                    })
            }),
        }
    }

    /// Class sizes by enumerating `Q_d`.
    pub fn count_classes(&self) -> Result<ClassCounts> {
        let space = self.space()?;
        EdgeSubgraph::empty(&space)?;
        let mut a = vec![0u128; self.params.m as usize + 1];
        let mut x = 0u128;
        for c in self.all_class_codes() {
            match c {
                CLASS_X => x += 1,
                j => a[j as usize] += 1,
            }
        }
        Ok(ClassCounts { x, a })
    }

    /// Class sizes and edge counts. Materializes the graphs only if asked.
    pub fn census(&self, materialize: bool) -> Result<Census> {
        let p = &self.params;
        let classes = class_counts(p);
        let (d, m) = (p.d as u128, p.m as u128);
        let code_size = self.code.size() as u128;
        let a1_estimate = (6 * m * code_size) << (p.d - p.block_len());
        let rest = classes.x + classes.a[2..].iter().sum::<u128>();
        let (counted, base_edges, completed_edges, observations) = if materialize {
            let base = self.build_base_graph()?;
            let completed = complete_to_saturated(&base, p.m)?;
            (
                Some(self.count_classes()?),
                Some(base.len() as u64),
                Some(completed.len() as u64),
                Some(self.observations(&base)),
            )
        } else {
            (None, None, None, None)
        };
        Ok(Census {
            params: *p,
            code_size: code_size as u64,
            classes: classes.clone(),
            counted,
            a1_estimate,
            incident_edge_bound: d * classes.a[1] + d * rest,
            general_bound: (72 * m * m) << p.d,
            sharper_bound: (p.s == 0).then(|| (36 * m * m) << p.d),
            base_edges,
            completed_edges,
            observations,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub params: SatParams,
    pub code_size: u64,
    pub classes: ClassCounts,
    /// Class sizes by enumeration, when materialized.
    pub counted: Option<ClassCounts>,
    /// `6m |C| 2^(d - (2^t - 1))`, an upper bound on `|A_1|`.
    pub a1_estimate: u128,
    /// `d |A_1| + d |A_2 u ... u A_m u X|`, bounding the completed graph.
    pub incident_edge_bound: u128,
    /// `72 m^2 2^d`
    pub general_bound: u128,
    /// `36 m^2 2^d`, reported when `s = 0`.
    pub sharper_bound: Option<u128>,
    pub base_edges: Option<u64>,
    pub completed_edges: Option<u64>,
    pub observations: Option<Observations>,
}

fn subcube_present(g: &EdgeSubgraph, copy: &AxisSubgrid) -> bool {
    copy.edges(g.space()).iter().all(|&e| g.contains(e))
}

/// Checks every `Q_m` subcube of a hypercube host.
pub fn verify_qm_free(g: &EdgeSubgraph, m: u32) -> Result<CheckReport> {
    let space = g.space();
    if !space.is_hypercube() {
        return Err(Error::param("subcube freeness needs a hypercube host"));
    }
    let checked = space.axis_subgrid_count(2, m)? as u64;
    let passed = !space.axis_subgrids(2, m)?.par_bridge().any(|copy| subcube_present(g, &copy));
    Ok(CheckReport { checked, passed })
}

/// `Q_m`-free and every absent edge completes a copy.
pub fn is_qm_saturated(g: &EdgeSubgraph, m: u32) -> Result<bool> {
    let family = PatternFamily::subcube(g.space(), m)?;
    if !verify_qm_free(g, m)?.passed {
        return Ok(false);
    }
    let missing: Vec<EdgeId> = g.missing_edges().collect();
    Ok(missing.par_iter().all(|&e| creates_new_copy(g, e, &family).is_some()))
}

/// Adds absent edges in ascending id order whenever they do not complete a
/// copy of `Q_m`, then re-checks that every remaining absent edge would.
pub fn complete_to_saturated(g: &EdgeSubgraph, m: u32) -> Result<EdgeSubgraph> {
    let family = PatternFamily::subcube(g.space(), m)?;
    if !verify_qm_free(g, m)?.passed {
        return Err(Error::ContainsPattern(m));
    }
    let mut out = g.clone();
    loop {
        let missing: Vec<EdgeId> = out.missing_edges().collect();
        for e in missing {
            if creates_new_copy(&out, e, &family).is_none() {
                out.insert(e);
            }
        }
        let missing: Vec<EdgeId> = out.missing_edges().collect();
        if missing.par_iter().all(|&e| creates_new_copy(&out, e, &family).is_some()) {
            return Ok(out);
        }
    }
}
