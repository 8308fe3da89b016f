//! Loop-gas sampling on an L x H strip of the cylinder (open top and bottom)
//! with i.i.d. fair tiles, traced into loops and boundary strands.
//!
//! Observables live at the central row/face; samples whose verdict depends on
//! strands cut off by the open boundary are censored, and the censored count
//! is always reported. Ray-crossing bookkeeping matches the glue module: the
//! observation face sits at gap 0 between rows r0 and r0+1, its vertical ray
//! crosses the horizontal edges joining columns 0 and 1.

use rand::Rng;

use crate::transfer::Tile;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default)]
pub struct Component {
    pub closed: bool,
    pub touches_top: bool,
    pub touches_bottom: bool,
    /// Net horizontal displacement in units of L (winding number).
    pub winding: i64,
    /// Ray crossings above the face (rows > r0) and below it (rows <= r0).
    pub up_crossings: u32,
    pub down_crossings: u32,
    pub contains_central_edge: bool,
    pub edges: u32,
}

impl Component {
    pub fn spans(&self) -> bool {
        self.touches_top && self.touches_bottom
    }
}

pub struct StripTrace {
    pub l: usize,
    pub h: usize,
    pub components: Vec<Component>,
}

// stub indices: S=0, N=1, E=2, W=3
const S: usize = 0;
const N: usize = 1;
const E: usize = 2;
const W: usize = 3;

/// Draws an i.i.d. tile field and traces every loop and strand.
pub fn strip_trace<R: Rng>(l: usize, h: usize, rng: &mut R) -> Result<StripTrace> {
    if l < 2 {
        return Err(Error::InvalidArgument("strip needs l >= 2".into()));
    }
    if h < 4 {
        return Err(Error::InvalidArgument("strip needs h >= 4 rows".into()));
    }
    let tiles: Vec<Tile> = (0..l * h)
        .map(|_| if rng.gen::<bool>() { Tile::B } else { Tile::A })
        .collect();

    let r0 = h / 2; // face between rows r0 and r0+1 at gap 0
    let stub = |c: usize, r: usize, k: usize| 4 * (r * l + c) + k;
    let tile_at = |c: usize, r: usize| tiles[r * l + c];

    let pair_of = |s: usize| -> usize {
        let v = s / 4;
        let k = s % 4;
        let (c, r) = (v % l, v / l);
        let k2 = match (tile_at(c, r), k) {
            (Tile::A, S) => E,
            (Tile::A, E) => S,
            (Tile::A, W) => N,
            (Tile::A, N) => W,
            (Tile::B, S) => W,
            (Tile::B, W) => S,
            (Tile::B, E) => N,
            (Tile::B, N) => E,
            _ => unreachable!(),
        };
        stub(c, r, k2)
    };

    // adjacency across an edge; None at the open boundary
    let adj_of = |s: usize| -> Option<(usize, i64, bool, bool)> {
        // returns (partner, horizontal displacement, crosses ray, above face)
        let v = s / 4;
        let k = s % 4;
        let (c, r) = (v % l, v / l);
        match k {
            E => {
                let c2 = (c + 1) % l;
                Some((stub(c2, r, W), 1, c == 0, r > r0))
            }
            W => {
                let c2 = (c + l - 1) % l;
                Some((stub(c2, r, E), -1, c2 == 0, r > r0))
            }
            N => (r + 1 < h).then(|| (stub(c, r + 1, S), 0, false, false)),
            S => (r > 0).then(|| (stub(c, r - 1, N), 0, false, false)),
            _ => unreachable!(),
        }
    };
    let is_central_edge =
        |s: usize| s == stub(0, r0, N) || s == stub(0, r0 + 1, S);

    let mut visited = vec![false; 4 * l * h];
    let mut components = Vec::new();

    // walk one component from a starting stub; returns when the path closes
    // or reaches a dangling stub
    let mut walk = |start: usize, visited: &mut Vec<bool>| -> Component {
        let mut comp = Component::default();
        let mut cur = start;
        loop {
            visited[cur] = true;
            if is_central_edge(cur) {
                comp.contains_central_edge = true;
            }
            let mate = pair_of(cur);
            visited[mate] = true;
            if is_central_edge(mate) {
                comp.contains_central_edge = true;
            }
            match adj_of(mate) {
                None => {
                    // dangling boundary stub
                    if mate % 4 == N {
                        comp.touches_top = true;
                    } else {
                        comp.touches_bottom = true;
                    }
                    return comp;
                }
                Some((partner, dx, crosses, above)) => {
                    comp.edges += 1;
                    comp.winding += dx;
                    if crosses {
                        if above {
                            comp.up_crossings += 1;
                        } else {
                            comp.down_crossings += 1;
                        }
                    }
                    if partner == start {
                        comp.closed = true;
                        comp.winding /= l as i64;
                        return comp;
                    }
                    visited[partner] = true;
                    cur = partner;
                }
            }
        }
    };

    // strands first: start from each dangling boundary stub
    for c in 0..l {
        for (r, k) in [(0usize, S), (h - 1, N)] {
            let s = stub(c, r, k);
            if visited[s] {
                continue;
            }
            let mut comp = walk(s, &mut visited);
            // the starting stub is itself a boundary end
            if k == N {
                comp.touches_top = true;
            } else {
                comp.touches_bottom = true;
            }
            comp.closed = false;
            comp.winding = 0;
            components.push(comp);
        }
    }
    // remaining components are closed loops
    for s in 0..4 * l * h {
        if visited[s] {
            continue;
        }
        let comp = walk(s, &mut visited);
        debug_assert!(comp.closed);
        // a closed contractible loop crosses the full vertical line an even
        // number of times; winding parity matches the crossing parity
        debug_assert_eq!(
            (comp.up_crossings + comp.down_crossings) as i64 % 2,
            comp.winding.abs() % 2
        );
        components.push(comp);
    }

    Ok(StripTrace { l, h, components })
}

impl StripTrace {
    /// Every edge of the strip belongs to exactly one component.
    pub fn edge_count(&self) -> u64 {
        self.components.iter().map(|c| c.edges as u64).sum()
    }

    pub fn expected_edge_count(&self) -> u64 {
        // l*h horizontal edges, l*(h-1) interior vertical edges
        (self.l * self.h + self.l * (self.h - 1)) as u64
    }

    /// A strand whose ray parity cannot be completed on the strip: loops
    /// assembled entirely from even strands stay even regardless of how the
    /// unsampled region pairs them up, so only these force censoring.
    fn has_odd_strand(&self) -> bool {
        self.components.iter().any(|c| {
            if c.closed {
                return false;
            }
            if c.spans() {
                c.up_crossings % 2 == 1 || c.down_crossings % 2 == 1
            } else if c.touches_bottom {
                c.up_crossings % 2 == 1
            } else {
                c.down_crossings % 2 == 1
            }
        })
    }

    /// Face-surround count at the central face, contractible loops only.
    /// None when censored.
    pub fn surround_m(&self) -> Option<usize> {
        if self.components.iter().any(|c| !c.closed && c.spans()) || self.has_odd_strand() {
            return None;
        }
        Some(
            self.components
                .iter()
                .filter(|c| c.closed && c.winding == 0 && c.up_crossings % 2 == 1)
                .count(),
        )
    }

    /// Whether the central vertical edge lies on a winding loop. None when
    /// it lies on a boundary strand.
    pub fn central_edge_winding(&self) -> Option<bool> {
        let comp = self
            .components
            .iter()
            .find(|c| c.contains_central_edge)
            .expect("central edge always traced");
        comp.closed.then(|| comp.winding != 0)
    }

    /// Whether the central vertical edge lies on the top-to-bottom spanning
    /// strand. None (censored) unless exactly one spanning strand exists.
    pub fn central_edge_on_spanning(&self) -> Option<bool> {
        let spanning: Vec<&Component> = self
            .components
            .iter()
            .filter(|c| !c.closed && c.spans())
            .collect();
        if spanning.len() != 1 {
            return None;
        }
        Some(spanning[0].contains_central_edge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_edge_on_exactly_one_component() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (l, h) in [(2usize, 6usize), (4, 10), (5, 9), (6, 8)] {
            for _ in 0..20 {
                let t = strip_trace(l, h, &mut rng).unwrap();
                assert_eq!(t.edge_count(), t.expected_edge_count(), "l={l} h={h}");
            }
        }
    }

    #[test]
    fn odd_l_always_has_odd_many_spanning_strands() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let t = strip_trace(3, 20, &mut rng).unwrap();
            let spans = t.components.iter().filter(|c| !c.closed && c.spans()).count();
            assert_eq!(spans % 2, 1);
        }
    }

    #[test]
    fn deterministic_given_stream() {
        let run = || {
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            rng.set_stream(3);
            let t = strip_trace(4, 30, &mut rng).unwrap();
            (t.surround_m(), t.central_edge_winding(), t.components.len())
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn arguments_validated() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(strip_trace(1, 10, &mut rng).is_err());
        assert!(strip_trace(4, 2, &mut rng).is_err());
    }
}
