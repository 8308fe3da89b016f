//! Single osculating walker on the infinite cylinder, simulated sparsely:
//! only visited vertices are stored, each remembering the tile chosen on
//! first passage. A revisited vertex forces the exit through its unused
//! edge, which is exactly the stored tile's other pairing.

use std::collections::HashMap;

use rand::Rng;

use crate::transfer::Tile;
use crate::{Error, Result};

pub const DEFAULT_STEP_CAP: u64 = 100_000_000;

/// Which lattice object counts as "the left neighbor of the starting point".
/// The walk starts on a vertical edge heading up. Loop segments pass through
/// edge midpoints, so the default reads the starting point as that edge's
/// midpoint and its left neighbor as the vertical edge one column to the
/// left at the same rows; the vertex-level readings are kept selectable and
/// are ruled out empirically by the closed-form check at L = 4, 6.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum NeighborRule {
    /// Vertical edge one column to the left of the starting edge, same rows.
    #[default]
    LeftEdgeSameRows,
    /// Vertical edge one column to the left, one row down.
    LeftEdgeRowBelow,
    /// Vertex one column to the left of the first vertex, same row.
    VertexSameRow,
    /// Vertex one column to the left of the starting edge's lower endpoint.
    VertexRowBelow,
}

#[derive(Clone, Copy, Debug)]
pub struct WalkOutcome {
    /// Net horizontal displacement nonzero when the walk closed.
    pub wound: bool,
    pub visited_left_neighbor: bool,
    /// Edges traversed, counting the initial edge once.
    pub steps: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Dir {
    North,
    East,
    South,
    West,
}

impl Dir {
    fn entering_stub(self) -> usize {
        // moving north enters through the vertex's south stub, etc.
        match self {
            Dir::North => 0, // S
            Dir::South => 1, // N
            Dir::West => 2,  // E
            Dir::East => 3,  // W
        }
    }

    fn from_exit_stub(stub: usize) -> Dir {
        match stub {
            0 => Dir::South,
            1 => Dir::North,
            2 => Dir::East,
            _ => Dir::West,
        }
    }
}

// stub indices: S=0, N=1, E=2, W=3
fn tile_exit(tile: Tile, entering: usize) -> usize {
    match (tile, entering) {
        (Tile::A, 0) => 2, // S <-> E
        (Tile::A, 2) => 0,
        (Tile::A, 3) => 1, // W <-> N
        (Tile::A, 1) => 3,
        (Tile::B, 0) => 3, // S <-> W
        (Tile::B, 3) => 0,
        (Tile::B, 2) => 1, // E <-> N
        (Tile::B, 1) => 2,
        _ => unreachable!(),
    }
}

/// Runs one walk from the fixed vertical edge at column 0 between rows 0 and
/// 1, heading up, until it re-enters that edge.
pub fn walk_single<R: Rng>(
    l: usize,
    rng: &mut R,
    rule: NeighborRule,
    step_cap: u64,
) -> Result<WalkOutcome> {
    if l < 2 || l % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "walk_single requires even l >= 2 (closed walks), got {l}"
        )));
    }
    let target = match rule {
        NeighborRule::SameRow => ((l - 1) as u32, 1i64),
        NeighborRule::RowBelow => ((l - 1) as u32, 0i64),
    };

    let mut tiles: HashMap<(u32, i64), Tile> = HashMap::new();
    // after traversing the initial edge: at vertex (0, 1), having moved north
    let mut col_abs: i64 = 0;
    let mut row: i64 = 1;
    let mut dir = Dir::North;
    let mut steps: u64 = 1;
    let mut visited_left_neighbor = false;

    loop {
        let col_mod = col_abs.rem_euclid(l as i64) as u32;
        if (col_mod, row) == target {
            visited_left_neighbor = true;
        }
        let tile = *tiles
            .entry((col_mod, row))
            .or_insert_with(|| if rng.gen::<bool>() { Tile::B } else { Tile::A });
        let exit = tile_exit(tile, dir.entering_stub());
        dir = Dir::from_exit_stub(exit);

        // completion: about to traverse the initial edge again
        let closing = col_mod == 0
            && ((row == 0 && dir == Dir::North) || (row == 1 && dir == Dir::South));
        if closing {
            debug_assert_eq!(col_abs.rem_euclid(l as i64), 0);
            return Ok(WalkOutcome {
                wound: col_abs != 0,
                visited_left_neighbor,
                steps,
            });
        }

        match dir {
            Dir::North => row += 1,
            Dir::South => row -= 1,
            Dir::East => col_abs += 1,
            Dir::West => col_abs -= 1,
        }
        steps += 1;
        if steps > step_cap {
            return Err(Error::StepCap(step_cap));
        }
    }
}
