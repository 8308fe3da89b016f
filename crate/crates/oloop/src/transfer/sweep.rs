//! Vertex-by-vertex transfer column builder.
//!
//! Instead of iterating all 2^L tile rows, sweep the row left to right and
//! maintain a multiset of partial configurations. A partial configuration is
//! the set of open strands through the processed region, each strand carrying
//! its two frontier endpoints and its accumulated gap-crossing parity mask.
//! Frontier endpoints are: emitted top points, unconsumed bottom points, the
//! dangling west stub of vertex 0, the dangling east stub of the last
//! processed vertex, and (odd L) the half-infinite defect end.
//!
//! Branching on the two tiles per vertex and merging identical partial
//! configurations reproduces the brute-force counts exactly; agreement is
//! unit-tested against the brute-force route.

use std::collections::HashMap;

use crate::patterns::{CutState, GapSet, Paren};
use crate::{Error, Result};

// token space: Top(t) = t, Bot(b) = 32 + b, specials above
const BOT_BASE: u8 = 32;
const W0: u8 = 253;
const CUR: u8 = 254;
const DEF: u8 = 255;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Frontier {
    /// Strands (a, b, parity mask), endpoints normalized a <= b, sorted.
    strands: Vec<(u8, u8, u32)>,
}

impl Frontier {
    fn normalize(&mut self) {
        for s in &mut self.strands {
            if s.0 > s.1 {
                std::mem::swap(&mut s.0, &mut s.1);
            }
        }
        self.strands.sort_unstable();
    }

    fn find(&self, tok: u8) -> usize {
        self.strands
            .iter()
            .position(|&(a, b, _)| a == tok || b == tok)
            .expect("token must belong to exactly one strand")
    }

    fn rename(&mut self, old: u8, new: u8) {
        let i = self.find(old);
        let s = &mut self.strands[i];
        if s.0 == old {
            s.0 = new;
        } else {
            s.1 = new;
        }
    }

    fn xor_mask(&mut self, tok: u8, mask: u32) {
        let i = self.find(tok);
        self.strands[i].2 ^= mask;
    }

    /// Connects the strand ends `ta` and `tb`; returns true when this closes
    /// a loop.
    fn join(&mut self, ta: u8, tb: u8) -> bool {
        let ia = self.find(ta);
        let ib = self.find(tb);
        if ia == ib {
            let (a, b, mask) = self.strands[ia];
            debug_assert!((a == ta && b == tb) || (a == tb && b == ta));
            // a closed loop crosses every gap line with the same parity
            debug_assert!(mask == 0 || mask.count_ones() as usize >= 1);
            self.strands.swap_remove(ia);
            return true;
        }
        let (a1, b1, m1) = self.strands[ia];
        let (a2, b2, m2) = self.strands[ib];
        let keep1 = if a1 == ta { b1 } else { a1 };
        let keep2 = if a2 == tb { b2 } else { a2 };
        let (hi, lo) = if ia > ib { (ia, ib) } else { (ib, ia) };
        self.strands.swap_remove(hi);
        self.strands.swap_remove(lo);
        self.strands.push((keep1, keep2, m1 ^ m2));
        false
    }
}

/// Counts of top states over all 2^L tile rows applied to `c2`, computed by
/// the frontier sweep.
pub(crate) fn sweep_outcomes<St: CutState>(c2: &St) -> Result<HashMap<St, u64>> {
    let l = c2.circumference();
    let mut initial = Frontier {
        strands: c2
            .arcs()
            .iter()
            .map(|arc| (BOT_BASE + arc.from as u8, BOT_BASE + arc.to as u8, arc.covered_gaps.0))
            .collect(),
    };
    if let Some(d) = c2.defect() {
        initial.strands.push((BOT_BASE + d as u8, DEF, 0));
    }
    initial.normalize();

    let mut layer: HashMap<Frontier, u64> = HashMap::new();
    layer.insert(initial, 1);

    for v in 0..l {
        let mut next: HashMap<Frontier, u64> = HashMap::with_capacity(layer.len() * 2);
        for (state, count) in &layer {
            for tile_b in [false, true] {
                let mut f = state.clone();
                if v > 0 {
                    // the dangling east stub hops across the horizontal edge,
                    // crossing gap v-1
                    f.xor_mask(CUR, 1 << (v - 1));
                }
                let bot = BOT_BASE + v as u8;
                let top = v as u8;
                let west = if v == 0 { W0 } else { CUR };
                if !tile_b {
                    // tile A: S-E, W-N
                    if v == 0 {
                        f.strands.push((W0, top, 0));
                    } else {
                        f.rename(CUR, top);
                    }
                    f.rename(bot, CUR);
                } else {
                    // tile B: S-W, E-N
                    if v == 0 {
                        f.rename(bot, W0);
                    } else {
                        f.join(bot, west);
                    }
                    f.strands.push((top, CUR, 0));
                }
                f.normalize();
                *next.entry(f).or_insert(0) += count;
            }
        }
        layer = next;
    }

    // cylinder closure: the last east stub joins the west stub of vertex 0
    // across the seam
    let mut outcomes: HashMap<St, u64> = HashMap::new();
    for (state, count) in layer {
        let mut f = state;
        f.xor_mask(CUR, 1 << (l - 1));
        f.join(CUR, W0);
        let st = assemble(&f, l)?;
        *outcomes.entry(st).or_insert(0) += count;
    }
    Ok(outcomes)
}

fn assemble<St: CutState>(f: &Frontier, l: usize) -> Result<St> {
    let mut symbols: Vec<Option<Paren>> = vec![None; l];
    for &(a, b, mask) in &f.strands {
        if a == DEF || b == DEF {
            continue; // defect end: the Top token keeps its None symbol
        }
        debug_assert!((a as usize) < l && (b as usize) < l, "leftover frontier token");
        let (pa, pb) = (a as usize, b as usize);
        let span_ab = GapSet::cyclic_interval(pa, pb, l);
        let span_ba = GapSet::cyclic_interval(pb, pa, l);
        let (from, to) = if mask == span_ab.0 {
            (pa, pb)
        } else if mask == span_ba.0 {
            (pb, pa)
        } else {
            return Err(Error::Internal(format!(
                "sweep parity mask {mask:#034b} is not an interval between {pa} and {pb}"
            )));
        };
        symbols[from] = Some(Paren::Open);
        symbols[to] = Some(Paren::Close);
    }
    St::from_symbols(&symbols)
}
