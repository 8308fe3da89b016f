//! Row-to-row transfer of connectivity states and the exact stationary
//! distribution.
//!
//! A row consists of L vertices, each carrying one of the two turning tiles:
//! tile A connects South–East and West–North, tile B connects South–West and
//! East–North (the straight pairings never occur). Horizontally, East(i)
//! joins West(i+1 mod L); the join between vertices L-1 and 0 crosses the
//! seam gap L-1.

mod solve;
mod sweep;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::patterns::{CutState, GapSet, Paren};
use crate::{Error, Result};

pub use solve::SolveMethod;

/// Default guard on `state_count * 2^L`; lifts via [`BuildOptions::budget`].
/// Covers even L <= 12 and odd L <= 13.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Tile {
    A,
    B,
}

/// One row of L tiles.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TileRow(pub Vec<Tile>);

impl TileRow {
    pub fn from_bits(l: usize, bits: u32) -> Self {
        TileRow(
            (0..l)
                .map(|v| if bits >> v & 1 == 1 { Tile::B } else { Tile::A })
                .collect(),
        )
    }

    /// Swap A and B everywhere (left-right mirror of the row).
    pub fn swapped(&self) -> Self {
        TileRow(
            self.0
                .iter()
                .map(|t| match t {
                    Tile::A => Tile::B,
                    Tile::B => Tile::A,
                })
                .collect(),
        )
    }
}

// stub encoding within a row: 4*vertex + {S, N, E, W}
const S: usize = 0;
const N: usize = 1;
const E: usize = 2;
const W: usize = 3;

#[inline]
fn stub(v: usize, kind: usize) -> usize {
    4 * v + kind
}

/// Applies one tile row on top of connectivity `c2`; returns the induced top
/// connectivity and the number of loops closed by the row.
///
/// Tracing walks the stub graph: tile pairings alternate with horizontal
/// joins and the arcs of `c2`; each traversed segment toggles the crossing
/// parity of the gaps it spans, and the accumulated parity set of a finished
/// strand is exactly the covered-gap interval of the new arc, which fixes the
/// open/close orientation.
pub fn apply_row<St: CutState>(c2: &St, tiles: &TileRow) -> Result<(St, u32)> {
    let l = c2.circumference();
    if tiles.0.len() != l {
        return Err(Error::InvalidArgument(format!(
            "tile row length {} does not match circumference {l}",
            tiles.0.len()
        )));
    }
    let mut bits = 0u32;
    for (v, t) in tiles.0.iter().enumerate() {
        if *t == Tile::B {
            bits |= 1 << v;
        }
    }
    apply_row_bits(c2, bits)
}

pub(crate) fn apply_row_bits<St: CutState>(c2: &St, tile_bits: u32) -> Result<(St, u32)> {
    let l = c2.circumference();
    let defect = c2.defect();

    // tile pairing per stub
    let mut pair = [0usize; 128];
    for v in 0..l {
        if tile_bits >> v & 1 == 0 {
            pair[stub(v, S)] = stub(v, E);
            pair[stub(v, E)] = stub(v, S);
            pair[stub(v, W)] = stub(v, N);
            pair[stub(v, N)] = stub(v, W);
        } else {
            pair[stub(v, S)] = stub(v, W);
            pair[stub(v, W)] = stub(v, S);
            pair[stub(v, E)] = stub(v, N);
            pair[stub(v, N)] = stub(v, E);
        }
    }

    // second-level links with their crossing gap sets
    let mut link = [(usize::MAX, GapSet::empty()); 128];
    for v in 0..l {
        let e = stub(v, E);
        let w = stub((v + 1) % l, W);
        let gaps = {
            let mut g = GapSet::empty();
            g.toggle(v);
            g
        };
        link[e] = (w, gaps);
        link[w] = (e, gaps);
    }
    for arc in c2.arcs() {
        let a = stub(arc.from, S);
        let b = stub(arc.to, S);
        link[a] = (b, arc.covered_gaps);
        link[b] = (a, arc.covered_gaps);
    }
    let defect_stub = defect.map(|d| stub(d, S));

    let mut visited = [false; 128];
    let mut symbols: Vec<Option<Paren>> = vec![None; l];
    let mut new_defect = None;

    for start in 0..l {
        let start_stub = stub(start, N);
        if visited[start_stub] {
            continue;
        }
        visited[start_stub] = true;
        let mut parity = GapSet::empty();
        let mut cur = start_stub;
        loop {
            cur = pair[cur];
            visited[cur] = true;
            if cur % 4 == N {
                let end = cur / 4;
                orient_arc(&mut symbols, start, end, parity, l)?;
                break;
            }
            if Some(cur) == defect_stub {
                new_defect = Some(start);
                break;
            }
            let (partner, gaps) = link[cur];
            debug_assert_ne!(partner, usize::MAX, "dangling stub in trace");
            parity = parity.xor(gaps);
            visited[partner] = true;
            cur = partner;
        }
    }

    // remaining unvisited stubs form loops closed by this row
    let mut closed_loops = 0u32;
    for s0 in 0..4 * l {
        if visited[s0] || Some(s0) == defect_stub {
            continue;
        }
        closed_loops += 1;
        let mut cur = s0;
        visited[cur] = true;
        loop {
            cur = pair[cur];
            visited[cur] = true;
            let (partner, _) = link[cur];
            debug_assert_ne!(partner, usize::MAX);
            if partner == s0 {
                break;
            }
            visited[partner] = true;
            cur = partner;
        }
    }

    let state = St::from_symbols(&symbols)?;
    debug_assert_eq!(state.defect(), new_defect);
    Ok((state, closed_loops))
}

/// Writes the open/close symbols of a traced arc: the parity set must equal
/// the covered interval seen from one of the two endpoints.
fn orient_arc(
    symbols: &mut [Option<Paren>],
    a: usize,
    b: usize,
    parity: GapSet,
    l: usize,
) -> Result<()> {
    let span_ab = GapSet::cyclic_interval(a, b, l);
    let span_ba = GapSet::cyclic_interval(b, a, l);
    let (from, to) = if parity == span_ab {
        (a, b)
    } else if parity == span_ba {
        (b, a)
    } else {
        return Err(Error::Internal(format!(
            "traced parity set {:#034b} is not an interval between {a} and {b}",
            parity.0
        )));
    };
    symbols[from] = Some(Paren::Open);
    symbols[to] = Some(Paren::Close);
    Ok(())
}

// ---------------------------------------------------------------------------
// transition matrix
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BuildStrategy {
    /// Iterate all 2^L tile rows per source state.
    BruteForce,
    /// Vertex-by-vertex sweep with a dangling-stub frontier; exact, less work
    /// for large L.
    VertexSweep,
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub strategy: BuildStrategy,
    pub budget: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            strategy: BuildStrategy::BruteForce,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Sparse column-stochastic matrix of tile-row counts over the state space;
/// column j lists `(target index, count)` with counts summing to 2^L.
#[derive(Clone, Debug)]
pub struct TransitionMatrix<St: CutState> {
    pub l: usize,
    pub states: Vec<St>,
    pub columns: Vec<Vec<(u32, u64)>>,
}

impl<St: CutState> TransitionMatrix<St> {
    pub fn denominator(&self) -> u64 {
        1u64 << self.l
    }

    pub fn index_of(&self, s: &St) -> Option<usize> {
        self.states.binary_search(s).ok()
    }

    /// Strong connectivity of the sparse support (the chain is expected
    /// irreducible; this is checked, not assumed).
    pub fn is_irreducible(&self) -> bool {
        let n = self.states.len();
        if n == 0 {
            return false;
        }
        let mut fwd = vec![Vec::new(); n];
        let mut bwd = vec![Vec::new(); n];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, _) in col {
                fwd[j].push(i as usize);
                bwd[i as usize].push(j);
            }
        }
        let reach = |adj: &Vec<Vec<usize>>| {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            count == n
        };
        reach(&fwd) && reach(&bwd)
    }
}

pub fn transition_matrix<St: CutState>(l: usize) -> Result<TransitionMatrix<St>> {
    transition_matrix_with(l, &BuildOptions::default())
}

pub fn transition_matrix_with<St: CutState>(
    l: usize,
    opts: &BuildOptions,
) -> Result<TransitionMatrix<St>> {
    let states = St::enumerate(l)?;
    let cost = states.len() as u64 * (1u64 << l);
    if cost > opts.budget {
        return Err(Error::Budget(format!(
            "transition matrix at L={l} needs state_count*2^L = {cost} > budget {} \
             (raise the budget to run L >= 14)",
            opts.budget
        )));
    }
    let index: HashMap<St, u32> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (*s, i as u32))
        .collect();

    let columns = match opts.strategy {
        BuildStrategy::BruteForce => crate::par::map_ordered(&states, |c2| -> Result<_> {
            let mut tally: HashMap<St, u64> = HashMap::new();
            for bits in 0..1u64 << l {
                let (c1, _) = apply_row_bits(c2, bits as u32)?;
                *tally.entry(c1).or_insert(0) += 1;
            }
            Ok(sorted_column(tally, &index))
        }),
        BuildStrategy::VertexSweep => crate::par::map_ordered(&states, |c2| -> Result<_> {
            let tally = sweep::sweep_outcomes(c2)?;
            Ok(sorted_column(tally, &index))
        }),
    };
    let columns: Vec<_> = columns.into_iter().collect::<Result<_>>()?;

    let m = TransitionMatrix { l, states, columns };
    let denom = m.denominator();
    for (j, col) in m.columns.iter().enumerate() {
        let sum: u64 = col.iter().map(|&(_, c)| c).sum();
        if sum != denom {
            return Err(Error::Internal(format!(
                "column {j} sums to {sum}, expected {denom}"
            )));
        }
    }
    Ok(m)
}

fn sorted_column<St: CutState>(tally: HashMap<St, u64>, index: &HashMap<St, u32>) -> Vec<(u32, u64)> {
    let mut col: Vec<(u32, u64)> = tally
        .into_iter()
        .map(|(s, c)| (index[&s], c))
        .collect();
    col.sort_unstable_by_key(|&(i, _)| i);
    col
}

// ---------------------------------------------------------------------------
// stationary distribution
// ---------------------------------------------------------------------------

/// Exact probability distribution over the state space; positive entries
/// summing to exactly one, aligned with the canonical state order.
#[derive(Clone, Debug)]
pub struct Distribution<St: CutState> {
    pub l: usize,
    states: Vec<St>,
    probs: Vec<BigRational>,
}

impl<St: CutState> Distribution<St> {
    pub fn new(l: usize, states: Vec<St>, probs: Vec<BigRational>) -> Result<Self> {
        if states.len() != probs.len() {
            return Err(Error::InvalidArgument("states/probs length mismatch".into()));
        }
        if probs.iter().any(|p| !p.is_positive()) {
            return Err(Error::Internal("distribution has a non-positive entry".into()));
        }
        let total: BigRational = probs.iter().cloned().sum();
        if !total.is_one() {
            return Err(Error::Internal(format!("distribution sums to {total}, not 1")));
        }
        Ok(Distribution { l, states, probs })
    }

    pub fn states(&self) -> &[St] {
        &self.states
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn get(&self, s: &St) -> Option<&BigRational> {
        self.states.binary_search(s).ok().map(|i| &self.probs[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&St, &BigRational)> {
        self.states.iter().zip(self.probs.iter())
    }

    pub fn min_entry(&self) -> (&St, &BigRational) {
        self.iter().min_by_key(|(_, p)| *p).map(|(s, p)| (s, p)).unwrap()
    }

    pub fn max_entry(&self) -> (&St, &BigRational) {
        self.iter().max_by_key(|(_, p)| *p).map(|(s, p)| (s, p)).unwrap()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct StationaryOptions {
    pub build: BuildOptions,
    pub method: SolveMethod,
}

impl Default for StationaryOptions {
    fn default() -> Self {
        StationaryOptions {
            build: BuildOptions::default(),
            method: SolveMethod::Auto,
        }
    }
}

/// Exact stationary distribution of the row-transfer chain at circumference
/// `l`: the unique positive vector with `M x = x`, `Σx = 1`. Stationarity is
/// re-verified by exact multiplication before returning.
pub fn stationary<St: CutState>(l: usize) -> Result<Distribution<St>> {
    stationary_with(l, &StationaryOptions::default())
}

pub fn stationary_with<St: CutState>(
    l: usize,
    opts: &StationaryOptions,
) -> Result<Distribution<St>> {
    let m = transition_matrix_with::<St>(l, &opts.build)?;
    stationary_of(&m, opts.method)
}

pub fn stationary_of<St: CutState>(
    m: &TransitionMatrix<St>,
    method: SolveMethod,
) -> Result<Distribution<St>> {
    if !m.is_irreducible() {
        return Err(Error::Internal(format!(
            "transfer chain at L={} is not irreducible",
            m.l
        )));
    }
    let n = m.states.len();
    let x = solve::stationary_kernel(n, &m.columns, m.denominator(), method)?;

    // exact verification M x = x in integers on the common denominator
    let denom_lcm = x
        .iter()
        .fold(BigInt::one(), |acc, p| num_integer::lcm(acc, p.denom().clone()));
    let nums: Vec<BigInt> = x
        .iter()
        .map(|p| p.numer() * (&denom_lcm / p.denom()))
        .collect();
    let mut acc = vec![BigInt::zero(); n];
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, c) in col {
            acc[i as usize] += BigInt::from(c) * &nums[j];
        }
    }
    let scale = BigInt::from(m.denominator());
    for i in 0..n {
        if acc[i] != &scale * &nums[i] {
            return Err(Error::Internal(format!(
                "stationarity verification failed at state index {i}"
            )));
        }
    }

    Distribution::new(m.l, m.states.clone(), x)
}

/// Stationary-state conjecture witnesses for even circumference: the minimum
/// probability (attained on the fully nested word), the ratios to it, and
/// the maximum (attained on the alternating word).
#[derive(Clone, Debug)]
pub struct StationarySummary {
    pub l: usize,
    pub min_prob: BigRational,
    pub max_prob: BigRational,
    /// max/min, exact.
    pub max_over_min: BigRational,
    pub all_ratios_integer: bool,
    pub nested_attains_min: bool,
    pub alternating_attains_max: bool,
}

pub fn summarize_even_stationary(dist: &Distribution<crate::patterns::LinkPattern>) -> Result<StationarySummary> {
    let (_, min_p) = dist.min_entry();
    let (_, max_p) = dist.max_entry();
    let nested = crate::patterns::LinkPattern::nested(dist.l)?;
    let alternating = crate::patterns::LinkPattern::alternating(dist.l)?;
    let all_ratios_integer = dist.probs().iter().all(|p| (p / min_p).is_integer());
    Ok(StationarySummary {
        l: dist.l,
        min_prob: min_p.clone(),
        max_prob: max_p.clone(),
        max_over_min: max_p / min_p,
        all_ratios_integer,
        nested_attains_min: dist.get(&nested) == Some(min_p),
        alternating_attains_max: dist.get(&alternating) == Some(max_p),
    })
}

#[cfg(test)]
mod tests;
