//! Hamming codes in `Q_{2^t-1}` and 3-edge-colourings of `Q_s` with no
//! monochromatic 4-cycle or 6-cycle.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{hypercube_edge, EdgeId};

/// Codes longer than this are not enumerated member by member.
const MAX_ENUMERATED_LENGTH: u32 = 24;

/// The binary Hamming code of length `2^t - 1`: the words whose syndrome
/// (xor of the 1-based positions of their set bits) is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HammingCode {
    t: u32,
}

impl HammingCode {
    pub fn new(t: u32) -> Result<Self> {
        if t < 1 {
            return Err(Error::param("Hamming code needs t >= 1"));
        }
        if t > 6 {
            return Err(Error::param(format!("code length 2^{t} - 1 exceeds 63")));
        }
        Ok(HammingCode { t })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Length `2^t - 1`, the dimension of the host cube.
    pub fn length(&self) -> u32 {
        (1 << self.t) - 1
    }

    /// `2^(2^t - t - 1)`
    pub fn size(&self) -> u64 {
        1u64 << (self.length() - self.t)
    }

    #[inline]
    pub fn syndrome(&self, word: u64) -> u64 {
        let mut s = 0;
        let mut w = word;
        while w != 0 {
            let i = w.trailing_zeros() as u64;
            s ^= i + 1;
            w &= w - 1;
        }
        s
    }

    #[inline]
    pub fn contains(&self, word: u64) -> bool {
        self.syndrome(word) == 0
    }

    /// The unique codeword at distance at most one from `word`.
    #[inline]
    pub fn nearest_codeword(&self, word: u64) -> u64 {
        match self.syndrome(word) {
            0 => word,
            s => word ^ (1 << (s - 1)),
        }
    }

    /// All codewords, ascending.
    pub fn members(&self) -> Result<Vec<u64>> {
        let n = self.length();
        if n > MAX_ENUMERATED_LENGTH {
            return Err(Error::HostTooLarge(format!("Q_{n} is too large to enumerate")));
        }
        Ok((0..1u64 << n).filter(|&w| self.contains(w)).collect())
    }
}

pub fn hamming_code(t: u32) -> Result<HammingCode> {
    HammingCode::new(t)
}

/// Exhaustively checks that `members` is a perfect code in `Q_len`:
/// independent, dominating every other vertex exactly once, and of size
/// `2^len / (len + 1)`.
pub fn verify_perfect_code(len: u32, members: &[u64]) -> bool {
    if len == 0 || len > MAX_ENUMERATED_LENGTH {
        return false;
    }
    let n = 1usize << len;
    if !n.is_multiple_of(len as usize + 1) || members.len() != n / (len as usize + 1) {
        return false;
    }
    let mut set = FixedBitSet::with_capacity(n);
    for &w in members {
        if w as usize >= n || set.put(w as usize) {
            return false;
        }
    }
    (0..n).all(|x| {
        let hits = (0..len).filter(|&i| set.contains(x ^ (1 << i))).count();
        if set.contains(x) {
            hits == 0
        } else {
            hits == 1
        }
    })
}

/// The 16 hexagons of `Q_3`, each as six `(local base, local dir)` edges.
fn hexagon_templates() -> &'static [[(u8, u8); 6]] {
    static TEMPLATES: OnceLock<Vec<[(u8, u8); 6]>> = OnceLock::new();
    TEMPLATES.get_or_init(|| {
        // every closed walk 0 -> .. -> 0 of length 6 visiting distinct vertices,
        // deduplicated by edge set
        let mut found: Vec<[(u8, u8); 6]> = Vec::new();
        let mut stack = vec![0u8];
        fn rec(stack: &mut Vec<u8>, found: &mut Vec<[(u8, u8); 6]>) {
            let cur = *stack.last().unwrap();
            if stack.len() == 7 {
                if cur == stack[0] {
                    let mut edges: Vec<(u8, u8)> = stack
                        .windows(2)
                        .map(|w| {
                            let dir = (w[0] ^ w[1]).trailing_zeros() as u8;
                            (w[0] & w[1], dir)
                        })
                        .collect();
                    edges.sort_unstable();
                    let arr: [(u8, u8); 6] = edges.try_into().unwrap();
                    if !found.contains(&arr) {
                        found.push(arr);
                    }
                }
                return;
            }
            for dir in 0..3 {
                let next = cur ^ (1 << dir);
                let closes = stack.len() == 6 && next == stack[0];
                if closes || !stack.contains(&next) {
                    stack.push(next);
                    rec(stack, found);
                    stack.pop();
                }
            }
        }
        // hexagons avoiding vertex 0 are found by starting elsewhere
        for start in 0..8u8 {
            stack[0] = start;
            rec(&mut stack, &mut found);
        }
        found.sort_unstable();
        found
    })
}

/// Spreads the low bits of `local` onto positions `dirs`.
#[inline]
fn spread(local: u8, dirs: &[u32]) -> u64 {
    dirs.iter().enumerate().filter(|&(j, _)| local >> j & 1 == 1).fold(0u64, |acc, (_, &i)| acc | 1 << i)
}

/// Bases of `Q_s` with the bits in `mask` cleared, enumerated in order.
fn bases_avoiding(s: u32, mask: u64) -> impl Iterator<Item = u64> {
    let free = ((1u64 << s) - 1) & !mask;
    let count = 1u64 << free.count_ones();
    (0..count).map(move |x| pdep(x, free))
}

#[inline]
fn pdep(mut x: u64, mut mask: u64) -> u64 {
    let mut out = 0;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        if x & 1 == 1 {
            out |= low;
        }
        x >>= 1;
        mask &= mask - 1;
    }
    out
}

/// All 4-cycles of `Q_s`: `C(s,2) 2^(s-2)` of them.
pub fn four_cycles(s: u32) -> impl Iterator<Item = [EdgeId; 4]> {
    (0..s).flat_map(move |a| {
        (a + 1..s).flat_map(move |b| {
            bases_avoiding(s, 1 << a | 1 << b).map(move |x| {
                [
                    hypercube_edge(s, x, a),
                    hypercube_edge(s, x | 1 << b, a),
                    hypercube_edge(s, x, b),
                    hypercube_edge(s, x | 1 << a, b),
                ]
            })
        })
    })
}

/// All 6-cycles of `Q_s`: `16 C(s,3) 2^(s-3)` of them. Every 6-cycle of a
/// hypercube spans exactly three directions.
pub fn six_cycles(s: u32) -> impl Iterator<Item = [EdgeId; 6]> {
    let templates = hexagon_templates();
    direction_triples(s).flat_map(move |dirs| {
        bases_avoiding(s, 1 << dirs[0] | 1 << dirs[1] | 1 << dirs[2]).flat_map(move |x| {
            templates.iter().map(move |t| t.map(|(lb, ld)| hypercube_edge(s, x | spread(lb, &dirs), dirs[ld as usize])))
        })
    })
}

fn direction_triples(s: u32) -> impl Iterator<Item = [u32; 3]> {
    (0..s).flat_map(move |a| (a + 1..s).flat_map(move |b| (b + 1..s).map(move |c| [a, b, c])))
}

/// Cycles of length 4 or 6 in `Q_s`, each as its edge list.
pub fn enumerate_short_cycles(s: u32, length: u32) -> Result<Box<dyn Iterator<Item = Vec<EdgeId>>>> {
    match length {
        4 if s >= 2 => Ok(Box::new(four_cycles(s).map(|c| c.to_vec()))),
        6 if s >= 3 => Ok(Box::new(six_cycles(s).map(|c| c.to_vec()))),
        4 | 6 => Ok(Box::new(std::iter::empty())),
        _ => Err(Error::param(format!("only cycle lengths 4 and 6 are supported, got {length}"))),
    }
}

/// A colouring of `E(Q_s)` with colours `{0, 1, 2}`, indexed by edge id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    s: u32,
    colors: Vec<u8>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ColoringViolations {
    pub four_cycles: u64,
    pub six_cycles: u64,
}

impl ColoringViolations {
    pub fn total(&self) -> u64 {
        self.four_cycles + self.six_cycles
    }
}

impl EdgeColoring {
    pub fn new(s: u32, colors: Vec<u8>) -> Result<Self> {
        if s > 40 {
            return Err(Error::HostTooLarge(format!("Q_{s} edge colouring")));
        }
        if colors.len() as u64 != edge_count(s) {
            return Err(Error::param(format!("Q_{s} has {} edges, got {} colours", edge_count(s), colors.len())));
        }
        if let Some(c) = colors.iter().find(|&&c| c > 2) {
            return Err(Error::param(format!("colour {c} outside {{0,1,2}}")));
        }
        Ok(EdgeColoring { s, colors })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    #[inline]
    pub fn color(&self, e: EdgeId) -> u8 {
        self.colors[e.index()]
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// Colour of the `Q_s` edge between `a` and `b`, which differ in one bit.
    #[inline]
    pub fn color_between(&self, a: u64, b: u64) -> u8 {
        let diff = a ^ b;
        debug_assert_eq!(diff.count_ones(), 1);
        let dir = diff.trailing_zeros();
        self.colors[hypercube_edge(self.s, a & b, dir).index()]
    }

    /// Exhaustive count of monochromatic 4- and 6-cycles.
    pub fn violations(&self) -> ColoringViolations {
        let s = self.s;
        let mono4 = |c: [EdgeId; 4]| {
            let x = self.color(c[0]);
            c[1..].iter().all(|&e| self.color(e) == x)
        };
        let mono6 = |c: &[EdgeId; 6]| {
            let x = self.color(c[0]);
            c[1..].iter().all(|&e| self.color(e) == x)
        };
        let four_cycles = if s >= 2 {
            (0..s).into_par_iter().map(|a| four_cycles_from(s, a).filter(|&c| mono4(c)).count() as u64).sum()
        } else {
            0
        };
        let six_cycles = if s >= 3 {
            let triples: Vec<[u32; 3]> = direction_triples(s).collect();
            let templates = hexagon_templates();
            triples
                .par_iter()
                .map(|&dirs| {
                    bases_avoiding(s, 1 << dirs[0] | 1 << dirs[1] | 1 << dirs[2])
                        .map(|x| {
                            templates
                                .iter()
                                .filter(|t| {
                                    let c =
                                        t.map(|(lb, ld)| hypercube_edge(s, x | spread(lb, &dirs), dirs[ld as usize]));
                                    mono6(&c)
                                })
                                .count() as u64
                        })
                        .sum::<u64>()
                })
                .sum()
        } else {
            0
        };
        ColoringViolations { four_cycles, six_cycles }
    }
}

fn four_cycles_from(s: u32, a: u32) -> impl Iterator<Item = [EdgeId; 4]> {
    (a + 1..s).flat_map(move |b| {
        bases_avoiding(s, 1 << a | 1 << b).map(move |x| {
            [
                hypercube_edge(s, x, a),
                hypercube_edge(s, x | 1 << b, a),
                hypercube_edge(s, x, b),
                hypercube_edge(s, x | 1 << a, b),
            ]
        })
    })
}

fn edge_count(s: u32) -> u64 {
    if s == 0 {
        0
    } else {
        s as u64 * (1u64 << (s - 1))
    }
}

/// Exhaustive check: no 4-cycle and no 6-cycle is monochromatic.
pub fn verify_coloring(coloring: &EdgeColoring) -> bool {
    coloring.violations().total() == 0
}

/// How [`find_coloring`] found its result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMethod {
    Trivial,
    Backtracking,
    LocalSearch,
    /// Local search over colourings of the form
    /// `colour(v, i) = sum_{j != i} A[i][j] v_j mod 3`.
    AffineLocalSearch,
}

/// Cubes up to this dimension are searched edge by edge.
const DIRECT_SEARCH_MAX_S: u32 = 10;

/// Finds a colouring of `E(Q_s)` with no monochromatic 4- or 6-cycle.
///
/// Deterministic for a fixed seed, as long as the budget is not hit. The
/// result is verified exhaustively before it is returned.
pub fn find_coloring(s: u32, seed: u64, budget: Duration) -> Result<EdgeColoring> {
    find_coloring_with_method(s, seed, budget).map(|(c, _)| c)
}

pub fn find_coloring_with_method(s: u32, seed: u64, budget: Duration) -> Result<(EdgeColoring, SearchMethod)> {
    let deadline = Instant::now() + budget;
    let (coloring, method) = match s {
        0 | 1 => (EdgeColoring::new(s, vec![0; edge_count(s) as usize])?, SearchMethod::Trivial),
        2..=4 => (backtrack(s, seed, deadline)?, SearchMethod::Backtracking),
        5..=DIRECT_SEARCH_MAX_S => (local_search(s, seed, deadline)?, SearchMethod::LocalSearch),
        _ => (affine_search(s, seed, deadline)?, SearchMethod::AffineLocalSearch),
    };
    if !verify_coloring(&coloring) {
        // unreachable unless a search routine is wrong
        return Err(Error::BudgetExhausted(format!("search for Q_{s} produced an invalid colouring")));
    }
    Ok((coloring, method))
}

/// All short cycles as flat edge-index lists, plus the cycles through each edge.
struct CycleIndex {
    cycles: Vec<Vec<u32>>,
    through: Vec<Vec<u32>>,
}

impl CycleIndex {
    fn new(s: u32) -> Self {
        let mut cycles: Vec<Vec<u32>> = four_cycles(s).map(|c| c.iter().map(|e| e.0 as u32).collect()).collect();
        if s >= 3 {
            cycles.extend(six_cycles(s).map(|c| c.iter().map(|e| e.0 as u32).collect()));
        }
        let mut through = vec![Vec::new(); edge_count(s) as usize];
        for (i, c) in cycles.iter().enumerate() {
            for &e in c {
                through[e as usize].push(i as u32);
            }
        }
        CycleIndex { cycles, through }
    }
}

fn backtrack(s: u32, seed: u64, deadline: Instant) -> Result<EdgeColoring> {
    let index = CycleIndex::new(s);
    let n = edge_count(s) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orders: Vec<[u8; 3]> = (0..n)
        .map(|_| {
            let mut o = [0u8, 1, 2];
            for i in (1..3).rev() {
                o.swap(i, rng.random_range(0..=i));
            }
            o
        })
        .collect();
    const UNSET: u8 = u8::MAX;
    let mut colors = vec![UNSET; n];

    fn closes_mono(index: &CycleIndex, colors: &[u8], e: usize) -> bool {
        index.through[e].iter().any(|&ci| {
            let c = &index.cycles[ci as usize];
            let x = colors[c[0] as usize];
            c.iter().all(|&f| colors[f as usize] == x)
        })
    }

    let mut pos = 0usize;
    let mut choice = vec![0usize; n];
    let mut steps = 0u64;
    loop {
        if pos == n {
            return EdgeColoring::new(s, colors);
        }
        steps += 1;
        if steps.is_multiple_of(4096) && Instant::now() > deadline {
            return Err(Error::BudgetExhausted(format!("backtracking on Q_{s}")));
        }
        if choice[pos] == 3 {
            choice[pos] = 0;
            colors[pos] = UNSET;
            if pos == 0 {
                return Err(Error::BudgetExhausted(format!("no valid colouring of Q_{s}")));
            }
            pos -= 1;
            choice[pos] += 1;
            continue;
        }
        colors[pos] = orders[pos][choice[pos]];
        if closes_mono(&index, &colors, pos) {
            choice[pos] += 1;
        } else {
            pos += 1;
        }
    }
}

/// Min-conflicts local search on the number of monochromatic cycles, with
/// random noise and periodic restarts.
fn local_search(s: u32, seed: u64, deadline: Instant) -> Result<EdgeColoring> {
    let index = CycleIndex::new(s);
    let n = edge_count(s) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let restart_after = 200_000u64;

    loop {
        let mut colors: Vec<u8> = (0..n).map(|_| rng.random_range(0..3)).collect();
        // per cycle, number of edges of each colour
        let mut counts: Vec<[u8; 3]> = index
            .cycles
            .iter()
            .map(|c| {
                let mut k = [0u8; 3];
                for &e in c {
                    k[colors[e as usize] as usize] += 1;
                }
                k
            })
            .collect();
        let is_mono = |k: &[u8; 3], len: usize| k.iter().any(|&x| x as usize == len);
        let mut violated = IndexedSet::new(index.cycles.len());
        for (ci, c) in index.cycles.iter().enumerate() {
            if is_mono(&counts[ci], c.len()) {
                violated.insert(ci);
            }
        }

        let mut steps = 0u64;
        while !violated.is_empty() && steps < restart_after {
            steps += 1;
            if steps.is_multiple_of(1024) && Instant::now() > deadline {
                return Err(Error::BudgetExhausted(format!("local search on Q_{s}")));
            }
            let ci = violated.items[rng.random_range(0..violated.len())];
            let cycle = &index.cycles[ci];
            let (edge, new_color) = if rng.random_bool(0.1) {
                let e = *cycle.choose(&mut rng).expect("non-empty cycle") as usize;
                (e, (colors[e] + rng.random_range(1..3)) % 3)
            } else {
                let mut best = (i64::MAX, 0usize, 0u8, 0u32);
                for &e in cycle {
                    let e = e as usize;
                    let old = colors[e];
                    for new in (0..3).filter(|&c| c != old) {
                        let mut delta = 0i64;
                        for &cj in &index.through[e] {
                            let k = &counts[cj as usize];
                            let len = index.cycles[cj as usize].len();
                            if k[old as usize] as usize == len {
                                delta -= 1;
                            }
                            if k[new as usize] as usize + 1 == len {
                                delta += 1;
                            }
                        }
                        // reservoir tie-break
                        let tie: u32 = rng.random();
                        if delta < best.0 || (delta == best.0 && tie < best.3) {
                            best = (delta, e, new, tie);
                        }
                    }
                }
                (best.1, best.2)
            };
            let old = colors[edge];
            colors[edge] = new_color;
            for &cj in &index.through[edge] {
                let cj = cj as usize;
                let len = index.cycles[cj].len();
                counts[cj][old as usize] -= 1;
                counts[cj][new_color as usize] += 1;
                if is_mono(&counts[cj], len) {
                    violated.insert(cj);
                } else {
                    violated.remove(cj);
                }
            }
        }
        if violated.is_empty() {
            return EdgeColoring::new(s, colors);
        }
    }
}

/// Set of small integers with O(1) insert, remove and uniform sampling.
struct IndexedSet {
    items: Vec<usize>,
    pos: Vec<usize>,
}

impl IndexedSet {
    const ABSENT: usize = usize::MAX;

    fn new(universe: usize) -> Self {
        IndexedSet { items: Vec::new(), pos: vec![Self::ABSENT; universe] }
    }

    fn len(&self) -> usize {
        self.items.len()
    }

    fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn insert(&mut self, x: usize) {
        if self.pos[x] == Self::ABSENT {
            self.pos[x] = self.items.len();
            self.items.push(x);
        }
    }

    fn remove(&mut self, x: usize) {
        let p = self.pos[x];
        if p == Self::ABSENT {
            return;
        }
        let last = *self.items.last().expect("non-empty");
        self.items.swap_remove(p);
        if last != x {
            self.pos[last] = p;
        }
        self.pos[x] = Self::ABSENT;
    }
}

/// Coefficient matrix of an affine colouring, `A[i][j]` in `Z_3`.
struct AffineRule {
    s: usize,
    a: Vec<u8>,
}

impl AffineRule {
    #[inline]
    fn get(&self, i: usize, j: usize) -> u8 {
        self.a[i * self.s + j]
    }

    /// Colour of edge `(base, dir)`.
    fn color(&self, base: u64, dir: u32) -> u8 {
        let row = &self.a[dir as usize * self.s..(dir as usize + 1) * self.s];
        let mut acc = 0u32;
        let mut w = base;
        while w != 0 {
            let j = w.trailing_zeros() as usize;
            acc += row[j] as u32;
            w &= w - 1;
        }
        (acc % 3) as u8
    }

    /// A pair of directions is safe if some square on it always sees two
    /// colours, whatever the base vertex.
    fn pair_ok(&self, a: usize, b: usize) -> bool {
        self.get(a, b) != 0 || self.get(b, a) != 0
    }

    /// Same for one hexagon template on a direction triple: some direction's
    /// two edges in the hexagon get different colours for every base.
    fn hexagon_ok(&self, dirs: [usize; 3], template: &[(u8, u8); 6]) -> bool {
        (0..3u8).any(|ld| {
            let mut offsets = template.iter().filter(|&&(_, d)| d == ld).map(|&(lb, _)| {
                (0..3u8)
                    .filter(|&j| j != ld && lb >> j & 1 == 1)
                    .map(|j| self.get(dirs[ld as usize], dirs[j as usize]) as u32)
                    .sum::<u32>()
                    % 3
            });
            let x = offsets.next();
            let y = offsets.next();
            x != y
        })
    }

    /// Number of unsafe pairs and hexagon templates touching `A[i][j]`.
    fn local_cost(&self, i: usize, j: usize) -> u32 {
        let mut cost = u32::from(!self.pair_ok(i, j));
        for c in (0..self.s).filter(|&c| c != i && c != j) {
            let mut dirs = [i, j, c];
            dirs.sort_unstable();
            cost += hexagon_templates().iter().filter(|t| !self.hexagon_ok(dirs, t)).count() as u32;
        }
        cost
    }

    fn unsafe_constraints(&self) -> Vec<Constraint> {
        let s = self.s;
        let mut out = Vec::new();
        for a in 0..s {
            for b in a + 1..s {
                if !self.pair_ok(a, b) {
                    out.push(Constraint::Pair(a, b));
                }
            }
        }
        for a in 0..s {
            for b in a + 1..s {
                for c in b + 1..s {
                    for t in hexagon_templates() {
                        if !self.hexagon_ok([a, b, c], t) {
                            out.push(Constraint::Hexagon([a, b, c]));
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
enum Constraint {
    Pair(usize, usize),
    Hexagon([usize; 3]),
}

impl Constraint {
    fn variables(&self) -> Vec<(usize, usize)> {
        match *self {
            Constraint::Pair(a, b) => vec![(a, b), (b, a)],
            Constraint::Hexagon(d) => {
                let mut v = Vec::with_capacity(6);
                for &x in &d {
                    for &y in &d {
                        if x != y {
                            v.push((x, y));
                        }
                    }
                }
                v
            }
        }
    }
}

/// Local search for an affine rule with no unsafe square or hexagon, then
/// materialization. The safety conditions are sufficient, not necessary, and
/// the materialized colouring is verified exhaustively by the caller.
fn affine_search(s: u32, seed: u64, deadline: Instant) -> Result<EdgeColoring> {
    if s > 24 {
        return Err(Error::HostTooLarge(format!("Q_{s} colouring cannot be materialized")));
    }
    let n = s as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut rule = AffineRule { s: n, a: (0..n * n).map(|_| rng.random_range(0..3)).collect() };
        for i in 0..n {
            rule.a[i * n + i] = 0;
        }
        for _ in 0..2000 {
            if Instant::now() > deadline {
                return Err(Error::BudgetExhausted(format!("affine colouring search on Q_{s}")));
            }
            let bad = rule.unsafe_constraints();
            if bad.is_empty() {
                return Ok(materialize_affine(s, &rule));
            }
            let target = bad[rng.random_range(0..bad.len())];
            let mut best = (i64::MAX, (0usize, 0usize), 0u8, 0u32);
            for (i, j) in target.variables() {
                let old = rule.a[i * n + j];
                let before = rule.local_cost(i, j) as i64;
                for new in (0..3u8).filter(|&v| v != old) {
                    rule.a[i * n + j] = new;
                    let delta = rule.local_cost(i, j) as i64 - before;
                    let tie: u32 = rng.random();
                    if delta < best.0 || (delta == best.0 && tie < best.3) {
                        best = (delta, (i, j), new, tie);
                    }
                }
                rule.a[i * n + j] = old;
            }
            let ((i, j), new) = if rng.random_bool(0.1) {
                let vars = target.variables();
                let v = vars[rng.random_range(0..vars.len())];
                (v, (rule.a[v.0 * n + v.1] + rng.random_range(1..3)) % 3)
            } else {
                (best.1, best.2)
            };
            rule.a[i * n + j] = new;
        }
    }
}

fn materialize_affine(s: u32, rule: &AffineRule) -> EdgeColoring {
    let half = 1u64 << (s - 1);
    let colors: Vec<u8> = (0..s as u64 * half)
        .into_par_iter()
        .map(|idx| {
            let dir = (idx / half) as u32;
            let rest = idx % half;
            let lower = rest & ((1u64 << dir) - 1);
            let upper = rest >> dir;
            let base = lower | (upper << (dir + 1));
            rule.color(base, dir)
        })
        .collect();
    EdgeColoring { s, colors }
}

/// Writes the cache text form: a `s <s> seed <seed>` header, then one
/// `<edge_id> <colour>` line per edge in ascending edge order.
pub fn coloring_to_text(coloring: &EdgeColoring, seed: u64) -> String {
    let mut out = String::with_capacity(coloring.colors.len() * 8);
    writeln!(out, "s {} seed {}", coloring.s, seed).expect("write to string");
    for (i, c) in coloring.colors.iter().enumerate() {
        writeln!(out, "{i} {c}").expect("write to string");
    }
    out
}

/// Parses a colouring cache file. Returns the colouring and its seed.
pub fn parse_coloring(text: &str) -> Result<(EdgeColoring, u64)> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty colouring file"))?;
    let tokens: Vec<&str> = header.split_ascii_whitespace().collect();
    let (s, seed) = match tokens.as_slice() {
        ["s", s, "seed", seed] => (
            s.parse::<u32>().map_err(|_| Error::parse(1, "bad dimension"))?,
            seed.parse::<u64>().map_err(|_| Error::parse(1, "bad seed"))?,
        ),
        _ => return Err(Error::parse(1, "expected 's <s> seed <seed>'")),
    };
    if s > 30 {
        return Err(Error::parse(1, format!("dimension {s} too large")));
    }
    let expected = edge_count(s);
    let mut colors = Vec::with_capacity(expected.min(1 << 20) as usize);
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut t = line.split_ascii_whitespace();
        let (Some(e), Some(c), None) = (t.next(), t.next(), t.next()) else {
            return Err(Error::parse(line_no, "expected '<edge_id> <colour>'"));
        };
        let e: u64 = e.parse().map_err(|_| Error::parse(line_no, "bad edge id"))?;
        let c: u8 = c.parse().map_err(|_| Error::parse(line_no, "bad colour"))?;
        if e != colors.len() as u64 {
            return Err(Error::parse(line_no, format!("expected edge {} next, got {e}", colors.len())));
        }
        if e >= expected {
            return Err(Error::parse(line_no, format!("edge {e} outside Q_{s}")));
        }
        if c > 2 {
            return Err(Error::parse(line_no, format!("colour {c} outside {{0,1,2}}")));
        }
        colors.push(c);
    }
    if colors.len() as u64 != expected {
        return Err(Error::parse(text.lines().count(), format!("expected {expected} edges, got {}", colors.len())));
    }
    Ok((EdgeColoring::new(s, colors)?, seed))
}

/// `t <t>` header, then one codeword per line, ascending.
pub fn code_to_text(code: &HammingCode) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "t {}", code.t()).expect("write to string");
    for w in code.members()? {
        writeln!(out, "{w}").expect("write to string");
    }
    Ok(out)
}

/// Parses a code cache file into `(t, members)`. Members must be strictly
/// ascending and inside `Q_{2^t - 1}`.
pub fn parse_code(text: &str) -> Result<(u32, Vec<u64>)> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty code file"))?;
    let t = match header.split_ascii_whitespace().collect::<Vec<_>>().as_slice() {
        ["t", t] => t.parse::<u32>().map_err(|_| Error::parse(1, "bad t"))?,
        _ => return Err(Error::parse(1, "expected 't <t>'")),
    };
    if !(1..=6).contains(&t) {
        return Err(Error::parse(1, format!("t = {t} outside [1, 6]")));
    }
    let len = (1u32 << t) - 1;
    let mut members: Vec<u64> = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let w: u64 = line.parse().map_err(|_| Error::parse(idx + 1, "bad vertex id"))?;
        if len < 64 && w >> len != 0 {
            return Err(Error::parse(idx + 1, format!("vertex {w} outside Q_{len}")));
        }
        if members.last().is_some_and(|&p| p >= w) {
            return Err(Error::parse(idx + 1, "vertex ids must be strictly ascending"));
        }
        members.push(w);
    }
    Ok((t, members))
}

pub fn coloring_cache_path(dir: &Path, s: u32, seed: u64) -> PathBuf {
    dir.join(format!("coloring_s{s}_seed{seed}.txt"))
}

pub fn code_cache_path(dir: &Path, t: u32) -> PathBuf {
    dir.join(format!("hamming_t{t}.txt"))
}

/// Reuses the cached colouring for `(s, seed)` verbatim if present and
/// valid, otherwise searches and writes the cache.
pub fn load_or_find_coloring(cache_dir: &Path, s: u32, seed: u64, budget: Duration) -> Result<EdgeColoring> {
    let path = coloring_cache_path(cache_dir, s, seed);
    if let Ok(text) = std::fs::read_to_string(&path) {
        let (coloring, stored_seed) = parse_coloring(&text)?;
        if coloring.s() == s && stored_seed == seed && verify_coloring(&coloring) {
            return Ok(coloring);
        }
    }
    let coloring = find_coloring(s, seed, budget)?;
    std::fs::create_dir_all(cache_dir)?;
    std::fs::write(&path, coloring_to_text(&coloring, seed))?;
    Ok(coloring)
}
