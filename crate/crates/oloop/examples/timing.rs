// scratch experiment: which "left neighbor" event matches (11L^2+4)/(16(L^2-1))?
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

#[derive(Clone, Copy, PartialEq)]
enum T { A, B }

fn exitstub(t: T, e: usize) -> usize {
    match (t, e) {
        (T::A, 0) => 2, (T::A, 2) => 0, (T::A, 3) => 1, (T::A, 1) => 3,
        (T::B, 0) => 3, (T::B, 3) => 0, (T::B, 2) => 1, (T::B, 1) => 2,
        _ => unreachable!(),
    }
}

// returns (visited vertices set rel to origin col, traversed vertical edges (col,row_low), traversed horiz edges, wound)
fn walk(l: i64, rng: &mut ChaCha8Rng) -> (Vec<(i64,i64)>, Vec<(i64,i64)>, bool) {
    let mut tiles: HashMap<(i64,i64), T> = HashMap::new();
    let (mut col, mut row) = (0i64, 1i64);
    let mut dirstub = 0usize; // entered via S
    let mut verts = vec![(0,0),(0,1)];
    let mut vedges = vec![(0,0)]; // vertical edge (col mod l, lower row)
    loop {
        let key = (col.rem_euclid(l), row);
        let t = *tiles.entry(key).or_insert_with(|| if rng.gen::<bool>() { T::B } else { T::A });
        let ex = exitstub(t, dirstub);
        // moving: exit stub 0=S down,1=N up,2=E right,3=W left
        let (dc, dr) = match ex { 0 => (0,-1), 1 => (0,1), 2 => (1,0), _ => (-1,0) };
        // closing check: about to traverse initial edge?
        if col.rem_euclid(l) == 0 && ((row == 0 && ex == 1) || (row == 1 && ex == 0)) {
            return (verts, vedges, col != 0);
        }
        if ex == 0 { vedges.push((col.rem_euclid(l), row - 1)); }
        if ex == 1 { vedges.push((col.rem_euclid(l), row)); }
        col += dc; row += dr;
        verts.push((col.rem_euclid(l), row));
        dirstub = match ex { 0 => 1, 1 => 0, 2 => 3, _ => 2 };
    }
}

fn main() {
    for l in [2i64, 4, 6] {
        let n = 300_000usize;
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut vtx_l1 = 0; // vertex (l-1, 1)
        let mut vtx_l0 = 0; // vertex (l-1, 0)
        let mut ve_left = 0; // vertical edge (l-1, rows 0-1)
        let mut ve_right = 0; // vertical edge (1, rows 0-1)
        for _ in 0..n {
            let (verts, vedges, _) = walk(l, &mut rng);
            if verts.contains(&(l-1, 1)) { vtx_l1 += 1; }
            if verts.contains(&(l-1, 0)) { vtx_l0 += 1; }
            if vedges.contains(&(l-1, 0)) { ve_left += 1; }
            if vedges.contains(&(1 % l, 0)) { ve_right += 1; }
        }
        let f = (11*l*l + 4) as f64 / (16*(l*l-1)) as f64;
        eprintln!("L={l}: formula={:.5} | vtx(l-1,1)={:.5} vtx(l-1,0)={:.5} vedge(l-1,0..1)={:.5} vedge(1,0..1)={:.5}",
            f, vtx_l1 as f64/n as f64, vtx_l0 as f64/n as f64, ve_left as f64/n as f64, ve_right as f64/n as f64);
    }
}
