//! Full-cylinder diagrams obtained by joining a lower and an upper
//! half-cylinder state at a cut row, and the bulk observables defined on
//! them: winding probability, face-surround counts, and the odd-L spanning
//! path. The pair probability factorizes as P(below)·P(above).
//!
//! "Face surrounded" is decided by ray-crossing parity against the vertical
//! ray from the face, expressed combinatorially through arc spans; no
//! floating-point geometry anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::patterns::{ArcSpan, CutState, DefectPattern, LinkPattern};
use crate::transfer::Distribution;
use crate::{Error, Result};

/// Whether winding loops count toward the face-surround number. The default
/// everywhere is `ContractibleOnly`; the alternative exists for the
/// falsification check and must fail the surround acceptance test.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SurroundPolicy {
    #[default]
    ContractibleOnly,
    ContractiblePlusWinding,
}

#[derive(Clone, Debug)]
pub struct GlueLoop {
    /// Cut points in trace order, starting from the smallest.
    pub cut_points: Vec<usize>,
    pub below_arcs: Vec<ArcSpan>,
    pub above_arcs: Vec<ArcSpan>,
    /// Signed total of seam crossings (+1 traversing an arc from opening to
    /// closing end across the seam, -1 the other way).
    pub seam_crossings: i32,
    /// Per-gap crossing parity of the arcs hanging below / above the row.
    below_parity: u32,
    above_parity: u32,
}

impl GlueLoop {
    pub fn winds(&self) -> bool {
        self.seam_crossings != 0
    }

    /// Whether this loop surrounds the face at `gap`: odd number of
    /// above-arcs covering the gap. For contractible loops the below-count
    /// parity is equal, which is asserted.
    pub fn surrounds(&self, gap: usize, policy: SurroundPolicy) -> bool {
        if self.winds() {
            return policy == SurroundPolicy::ContractiblePlusWinding;
        }
        assert_eq!(
            self.above_parity, self.below_parity,
            "contractible loop must cover each gap with equal parity above and below"
        );
        self.above_parity >> gap & 1 == 1
    }
}

#[derive(Clone, Debug)]
pub struct OpenStrand {
    pub cut_points: Vec<usize>,
}

/// Loops (and, for odd L, the open strand) of a glued cylinder cut.
#[derive(Clone, Debug)]
pub struct GlueDiagram {
    pub l: usize,
    pub loops: Vec<GlueLoop>,
    pub open_strand: Option<OpenStrand>,
}

struct ArcsAt {
    /// per point: (other endpoint, covered gaps mask, +1 if traversal
    /// from this point runs opening -> closing)
    step: Vec<(usize, u32, i32)>,
}

fn index_arcs(arcs: &[ArcSpan], l: usize) -> ArcsAt {
    let mut step = vec![(usize::MAX, 0u32, 0i32); l];
    for a in arcs {
        step[a.from] = (a.to, a.covered_gaps.0, 1);
        step[a.to] = (a.from, a.covered_gaps.0, -1);
    }
    ArcsAt { step }
}

/// Joins `below` and `above` half-cylinder states into the loops of the full
/// cylinder. Deterministic labeling: the loop containing the smallest cut
/// point comes first.
pub fn glue<St: CutState>(below: &St, above: &St) -> Result<GlueDiagram> {
    let l = below.circumference();
    if above.circumference() != l {
        return Err(Error::InvalidArgument(format!(
            "glue size mismatch: {l} vs {}",
            above.circumference()
        )));
    }
    let below_arcs = below.arcs();
    let above_arcs = above.arcs();
    let bmap = index_arcs(&below_arcs, l);
    let amap = index_arcs(&above_arcs, l);
    let seam = l - 1;

    let mut on_loop = vec![false; l];
    let mut open_strand = None;

    if let (Some(db), Some(da)) = (below.defect(), above.defect()) {
        // the open strand enters from below at db, exits above at da
        let mut pts = vec![db];
        on_loop[db] = true;
        let mut cur = db;
        loop {
            if cur == da {
                break;
            }
            let (next, _, _) = amap.step[cur];
            debug_assert_ne!(next, usize::MAX);
            cur = next;
            pts.push(cur);
            on_loop[cur] = true;
            if cur == db {
                break;
            }
            let (next, _, _) = bmap.step[cur];
            debug_assert_ne!(next, usize::MAX);
            cur = next;
            pts.push(cur);
            on_loop[cur] = true;
        }
        open_strand = Some(OpenStrand { cut_points: pts });
    } else if below.defect().is_some() || above.defect().is_some() {
        return Err(Error::InvalidArgument(
            "glue parity mismatch: one side has a defect".into(),
        ));
    }

    let mut loops = Vec::new();
    for start in 0..l {
        if on_loop[start] {
            continue;
        }
        let mut cut_points = vec![start];
        on_loop[start] = true;
        let mut seam_crossings = 0i32;
        let mut below_parity = 0u32;
        let mut above_parity = 0u32;
        let mut b_arcs = Vec::new();
        let mut a_arcs = Vec::new();
        let mut cur = start;
        loop {
            // below arc
            let (next, gaps, dir) = bmap.step[cur];
            debug_assert_ne!(next, usize::MAX);
            below_parity ^= gaps;
            if gaps >> seam & 1 == 1 {
                seam_crossings += dir;
            }
            if dir > 0 {
                b_arcs.push(below_arcs.iter().find(|a| a.from == cur).copied().unwrap());
            }
            cur = next;
            if cur != start {
                cut_points.push(cur);
                on_loop[cur] = true;
            }
            // above arc
            let (next, gaps, dir) = amap.step[cur];
            debug_assert_ne!(next, usize::MAX);
            above_parity ^= gaps;
            if gaps >> seam & 1 == 1 {
                seam_crossings += dir;
            }
            if dir > 0 {
                a_arcs.push(above_arcs.iter().find(|a| a.from == cur).copied().unwrap());
            }
            cur = next;
            if cur == start {
                break;
            }
            cut_points.push(cur);
            on_loop[cur] = true;
        }
        loops.push(GlueLoop {
            cut_points,
            below_arcs: b_arcs,
            above_arcs: a_arcs,
            seam_crossings,
            below_parity,
            above_parity,
        });
    }

    if open_strand.is_some() {
        debug_assert!(loops.iter().all(|lp| !lp.winds()), "no loop can wind at odd L");
    }
    Ok(GlueDiagram {
        l,
        loops,
        open_strand,
    })
}

/// Number of loops surrounding the face at `gap` under the given policy.
pub fn surround_count(d: &GlueDiagram, gap: usize, policy: SurroundPolicy) -> Result<usize> {
    if gap >= d.l {
        return Err(Error::InvalidArgument(format!(
            "gap {gap} out of range for circumference {}",
            d.l
        )));
    }
    Ok(d.loops.iter().filter(|lp| lp.surrounds(gap, policy)).count())
}

fn pair_sum<St, F>(dist: &Distribution<St>, weight_of: F) -> BigRational
where
    St: CutState,
    F: Fn(&St, &St) -> BigRational + Sync + Send,
{
    // parallel over the below state, exact partial sums reduced in order
    let states = dist.states();
    let partials = crate::par::map_range(states.len(), |i| {
        let mut acc = BigRational::zero();
        for j in 0..states.len() {
            let w = weight_of(&states[i], &states[j]);
            if !w.is_zero() {
                acc += w * dist.probs()[i].clone() * dist.probs()[j].clone();
            }
        }
        acc
    });
    partials.into_iter().fold(BigRational::zero(), |a, b| a + b)
}

/// Probability that cut point 0 lies on a winding loop; even L.
pub fn winding_edge_prob(dist: &Distribution<LinkPattern>) -> Result<BigRational> {
    if dist.l % 2 != 0 {
        return Err(Error::InvalidArgument(
            "winding_edge_prob needs even L (use spanning_visit_prob)".into(),
        ));
    }
    Ok(pair_sum(dist, |below, above| {
        let d = glue(below, above).expect("same space");
        let hit = d
            .loops
            .iter()
            .any(|lp| lp.winds() && lp.cut_points.contains(&0));
        if hit {
            BigRational::from_integer(BigInt::from(1))
        } else {
            BigRational::zero()
        }
    }))
}

/// Probability that cut point 0 lies on the open strand; odd L.
pub fn spanning_visit_prob(dist: &Distribution<DefectPattern>) -> Result<BigRational> {
    if dist.l % 2 != 1 {
        return Err(Error::InvalidArgument(
            "spanning_visit_prob needs odd L (use winding_edge_prob)".into(),
        ));
    }
    Ok(pair_sum(dist, |below, above| {
        let d = glue(below, above).expect("same space");
        let strand = d.open_strand.expect("odd L always has the open strand");
        if strand.cut_points.contains(&0) {
            BigRational::from_integer(BigInt::from(1))
        } else {
            BigRational::zero()
        }
    }))
}

/// Distribution of the face-surround count at `gap`; index m of the returned
/// vector holds P(surrounded by exactly m loops). Sums to exactly 1.
pub fn surround_distribution_at<St: CutState>(
    dist: &Distribution<St>,
    gap: usize,
    policy: SurroundPolicy,
) -> Result<Vec<BigRational>> {
    if dist.l % 2 != 0 {
        return Err(Error::InvalidArgument(
            "surround_distribution needs even L".into(),
        ));
    }
    if gap >= dist.l {
        return Err(Error::InvalidArgument(format!(
            "gap {gap} out of range for circumference {}",
            dist.l
        )));
    }
    let states = dist.states();
    let max_m = dist.l / 2;
    let partials = crate::par::map_range(states.len(), |i| {
        let mut acc = vec![BigRational::zero(); max_m + 1];
        for j in 0..states.len() {
            let d = glue(&states[i], &states[j]).expect("same space");
            let m = surround_count(&d, gap, policy).expect("gap in range");
            acc[m.min(max_m)] += dist.probs()[i].clone() * dist.probs()[j].clone();
        }
        acc
    });
    let mut total = vec![BigRational::zero(); max_m + 1];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    Ok(total)
}

/// Surround distribution at the reference gap 0 (translation invariance over
/// the choice of gap is covered by tests).
pub fn surround_distribution<St: CutState>(
    dist: &Distribution<St>,
    policy: SurroundPolicy,
) -> Result<Vec<BigRational>> {
    surround_distribution_at(dist, 0, policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::enumerate_odd;
    use crate::transfer::stationary;

    fn lp(s: &str) -> LinkPattern {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn glue_l2_hand_traces() {
        // front/front: one contractible loop through both points
        let d = glue(&lp("()"), &lp("()")).unwrap();
        assert_eq!(d.loops.len(), 1);
        assert!(!d.loops[0].winds());
        assert_eq!(d.loops[0].cut_points, vec![0, 1]);
        assert!(d.loops[0].surrounds(0, SurroundPolicy::ContractibleOnly));
        assert!(!d.loops[0].surrounds(1, SurroundPolicy::ContractibleOnly));

        // below avoids the seam, above crosses it: winding loop
        let d = glue(&lp("()"), &lp(")(")).unwrap();
        assert_eq!(d.loops.len(), 1);
        assert!(d.loops[0].winds());

        let d = glue(&lp(")("), &lp("()")).unwrap();
        assert!(d.loops[0].winds());

        // both behind: contractible, surrounds gap 1 but not gap 0
        let d = glue(&lp(")("), &lp(")(")).unwrap();
        assert!(!d.loops[0].winds());
        assert!(!d.loops[0].surrounds(0, SurroundPolicy::ContractibleOnly));
        assert!(d.loops[0].surrounds(1, SurroundPolicy::ContractibleOnly));
    }

    #[test]
    fn glue_size_and_parity_mismatch() {
        assert!(glue(&lp("()"), &lp("()()")).is_err());
    }

    #[test]
    fn odd_glue_always_has_strand_and_no_winding() {
        for l in [3usize, 5] {
            let states = enumerate_odd(l).unwrap();
            for a in &states {
                for b in &states {
                    let d = glue(a, b).unwrap();
                    let strand = d.open_strand.as_ref().expect("open strand");
                    assert!(!strand.cut_points.is_empty());
                    for lp in &d.loops {
                        assert!(!lp.winds(), "winding loop at odd L");
                    }
                    // point conservation
                    let mut seen = vec![false; l];
                    for &p in &strand.cut_points {
                        assert!(!seen[p]);
                        seen[p] = true;
                    }
                    for lp in &d.loops {
                        for &p in &lp.cut_points {
                            assert!(!seen[p]);
                            seen[p] = true;
                        }
                    }
                    assert!(seen.iter().all(|&x| x));
                }
            }
        }
    }

    #[test]
    fn point_conservation_even() {
        let states = crate::patterns::enumerate_even(6).unwrap();
        for a in &states {
            for b in &states {
                let d = glue(a, b).unwrap();
                let mut seen = vec![false; 6];
                for lp in &d.loops {
                    for &p in &lp.cut_points {
                        assert!(!seen[p]);
                        seen[p] = true;
                    }
                }
                assert!(seen.iter().all(|&x| x));
            }
        }
    }

    #[test]
    fn winding_probability_small_l() {
        let d2 = stationary::<LinkPattern>(2).unwrap();
        assert_eq!(winding_edge_prob(&d2).unwrap(), rat(1, 2));
        let d4 = stationary::<LinkPattern>(4).unwrap();
        assert_eq!(winding_edge_prob(&d4).unwrap(), rat(42, 100));
        let d6 = stationary::<LinkPattern>(6).unwrap();
        assert_eq!(winding_edge_prob(&d6).unwrap(), rat(7436, 19600));
    }

    #[test]
    fn winding_matches_formula_route() {
        for l in [2usize, 4, 6] {
            let d = stationary::<LinkPattern>(l).unwrap();
            assert_eq!(
                winding_edge_prob(&d).unwrap(),
                crate::formulas::winding_formula(l).unwrap(),
                "L={l}"
            );
        }
    }

    #[test]
    fn spanning_visit_small_l() {
        let d3 = stationary::<DefectPattern>(3).unwrap();
        assert_eq!(spanning_visit_prob(&d3).unwrap(), rat(7, 9));
        let d5 = stationary::<DefectPattern>(5).unwrap();
        assert_eq!(spanning_visit_prob(&d5).unwrap(), rat(429, 625));
        assert_eq!(
            spanning_visit_prob(&d5).unwrap(),
            crate::formulas::winding_formula(5).unwrap()
        );
    }

    #[test]
    fn surround_distribution_small_l() {
        let d2 = stationary::<LinkPattern>(2).unwrap();
        let s2 = surround_distribution(&d2, SurroundPolicy::ContractibleOnly).unwrap();
        assert_eq!(s2, vec![rat(3, 4), rat(1, 4)]);

        let d4 = stationary::<LinkPattern>(4).unwrap();
        let s4 = surround_distribution(&d4, SurroundPolicy::ContractibleOnly).unwrap();
        assert_eq!(s4, vec![rat(70, 100), rat(29, 100), rat(1, 100)]);

        let total: BigRational = s4.iter().cloned().sum();
        assert_eq!(total, rat(1, 1));
    }

    #[test]
    fn alternative_policy_fails_the_surround_identity() {
        for l in [2usize, 4] {
            let d = stationary::<LinkPattern>(l).unwrap();
            let good = surround_distribution(&d, SurroundPolicy::ContractibleOnly).unwrap();
            let alt = surround_distribution(&d, SurroundPolicy::ContractiblePlusWinding).unwrap();
            assert_ne!(good, alt, "L={l}");
        }
    }

    #[test]
    fn translation_invariance_over_gaps() {
        for l in [2usize, 4, 6] {
            let d = stationary::<LinkPattern>(l).unwrap();
            let reference = surround_distribution_at(&d, 0, SurroundPolicy::ContractibleOnly).unwrap();
            for gap in 1..l {
                assert_eq!(
                    surround_distribution_at(&d, gap, SurroundPolicy::ContractibleOnly).unwrap(),
                    reference,
                    "L={l}, gap={gap}"
                );
            }
        }
    }

    #[test]
    fn odd_parity_errors() {
        let d3 = stationary::<DefectPattern>(3).unwrap();
        assert!(surround_distribution(&d3, SurroundPolicy::ContractibleOnly).is_err());
        let d4 = stationary::<LinkPattern>(4).unwrap();
        assert!(matches!(
            surround_distribution_at(&d4, 7, SurroundPolicy::ContractibleOnly),
            Err(Error::InvalidArgument(_))
        ));
    }
}
