//! Brute-force weighted enumeration of cyclically symmetric plane partitions
//! in an L×L×L box. Each CSPP is weighted by `s^n` where `n` is the number of
//! unit cubes on the main diagonal; the total must equal det(Pascal + s·I).

use super::rings::Ring;
use crate::{Error, Result};

/// Weakly decreasing heights, cube at (j,k,h) present iff h < n[j][k]
/// (0-indexed). Cyclic symmetry: the pile is invariant under
/// (j,k,h) -> (k,h,j).
fn cyclically_symmetric(n: &[Vec<usize>], l: usize) -> bool {
    for j in 0..l {
        for k in 0..l {
            for h in 0..l {
                let present = h < n[j][k];
                let rotated = j < n[k][h];
                if present != rotated {
                    return false;
                }
            }
        }
    }
    true
}

fn diagonal_cubes(n: &[Vec<usize>], l: usize) -> u32 {
    (0..l).filter(|&t| n[t][t] > t).count() as u32
}

fn pow<T: Ring>(s: &T, e: u32) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * s.clone();
    }
    acc
}

/// Sums `s^(diagonal cube count)` over all cyclically symmetric plane
/// partitions in the L³ box. Brute force; guarded to small L.
pub fn cspp_weighted_enum<T: Ring>(l: usize, weight: &T) -> Result<T> {
    if l == 0 {
        return Ok(T::one());
    }
    if l > 4 {
        return Err(Error::Budget(format!(
            "CSPP brute force is limited to boxes up to 4^3, got {l}"
        )));
    }
    // first rows (weakly decreasing, entries <= l), each explored independently
    let mut first_rows: Vec<Vec<usize>> = Vec::new();
    let mut row = vec![0usize; l];
    loop {
        first_rows.push(row.clone());
        // next weakly decreasing row in lexicographic order
        let mut i = l;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            let cap = if i == 0 { l } else { row[i - 1] };
            if row[i] < cap {
                row[i] += 1;
                for j in i + 1..l {
                    row[j] = 0;
                }
                break;
            }
            if i == 0 {
                i = usize::MAX;
                break;
            }
        }
        if i == usize::MAX {
            break;
        }
    }

    let partials = crate::par::map_ordered(&first_rows, |first| {
        let mut grid: Vec<Vec<usize>> = vec![vec![0; l]; l];
        grid[0] = first.clone();
        let mut acc = T::zero();
        fill_rows(&mut grid, 1, 0, l, weight, &mut acc);
        acc
    });
    Ok(partials.into_iter().fold(T::zero(), |a, b| a + b))
}

fn fill_rows<T: Ring>(
    grid: &mut Vec<Vec<usize>>,
    r: usize,
    c: usize,
    l: usize,
    weight: &T,
    acc: &mut T,
) {
    if r == l {
        if cyclically_symmetric(grid, l) {
            *acc = acc.clone() + pow(weight, diagonal_cubes(grid, l));
        }
        return;
    }
    if c == l {
        fill_rows(grid, r + 1, 0, l, weight, acc);
        return;
    }
    let cap = if c == 0 {
        grid[r - 1][0]
    } else {
        grid[r - 1][c].min(grid[r][c - 1])
    };
    for v in 0..=cap {
        grid[r][c] = v;
        fill_rows(grid, r, c + 1, l, weight, acc);
    }
    grid[r][c] = 0;
}
