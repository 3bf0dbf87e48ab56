#![allow(dead_code)]

use std::collections::BTreeSet;

use legmosaic::bounds::{lower_bounds, InvariantPair};
use legmosaic::invariants::{
    all_orientations, classical_invariants, net_movement, p_matrix_product, rot_crossing_inequality_holds, tile_counts,
};
use legmosaic::topology::standard::{braid_closure, knots};
use legmosaic::topology::{Crossing, KnotType, PlanarDiagram};
use legmosaic::Mosaic;
use num_rational::Ratio;

/// One row of the minimal-mosaic reference table.
#[derive(Clone, Debug)]
pub struct Vector {
    pub knot_type: KnotType,
    pub tb: i64,
    /// Always nonnegative: the table lists |rot|.
    pub rot: i64,
    pub digits: String,
    pub size: usize,
}

pub fn reference_vectors() -> Vec<Vector> {
    let text = include_str!("../data/reference_vectors.txt");
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            assert_eq!(f.len(), 4, "bad row {l:?}");
            let digits = f[3].to_string();
            let size = digits.len().isqrt();
            Vector {
                knot_type: f[0].parse().unwrap(),
                tb: f[1].parse().unwrap(),
                rot: f[2].parse().unwrap(),
                digits,
                size,
            }
        })
        .collect()
}

/// (type, tb, |rot|) rows of the table whose minimal size is at most `n`.
pub fn reference_unsigned_through(n: usize) -> BTreeSet<(KnotType, i64, i64)> {
    reference_vectors().into_iter().filter(|v| v.size <= n).map(|v| (v.knot_type, v.tb, v.rot)).collect()
}

/// Returns a description of the first violated property, if any.
pub fn check_properties(m: &Mosaic) -> Option<String> {
    let n = m.rows() as i64;
    for om in all_orientations(m).unwrap() {
        let inv = classical_invariants(&om);
        if net_movement(&om) != (0, 0) {
            return Some(format!("net movement {:?}", net_movement(&om)));
        }
        let r = |v: i64| Ratio::from_integer(v);
        let want = [r(inv.tb), r(inv.rot), r(0), r(0), r(n * n)];
        let got = p_matrix_product(&tile_counts(&om));
        if got != want {
            return Some(format!("P·c = {got:?}, want {want:?}"));
        }
        if !rot_crossing_inequality_holds(&om) {
            return Some("rot/crossing inequality".into());
        }
        let pair = InvariantPair { tb: inv.tb, rot: inv.rot };
        let lower = lower_bounds(pair).best_lower;
        if lower > n {
            return Some(format!("lower bound {lower} above size {n}"));
        }
    }
    None
}

/// Oriented smoothing of crossing `i`.
pub fn smoothing(pd: &PlanarDiagram, i: usize) -> PlanarDiagram {
    let n = pd.arc_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    let c = pd.crossings[i];
    for (a, b) in [(c.under_in, c.over_out), (c.over_in, c.under_out)] {
        let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
        parent[rb] = ra;
    }
    let rest: Vec<Crossing> = pd
        .crossings
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, x)| {
            let mut f = |a: u32| find(&mut parent, a as usize) as u32;
            Crossing { under_in: f(x.under_in), under_out: f(x.under_out), over_in: f(x.over_in), over_out: f(x.over_out), sign: x.sign }
        })
        .collect();
    let mut reps: Vec<usize> = (0..n).map(|a| find(&mut parent, a)).collect();
    reps.sort();
    reps.dedup();
    let next = |a: u32| {
        rest.iter().find_map(|x| {
            if x.under_in == a {
                Some(x.under_out)
            } else if x.over_in == a {
                Some(x.over_out)
            } else {
                None
            }
        })
    };
    let mut free_loops = pd.free_loops;
    let mut seen = vec![false; n];
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    for &r in &reps {
        if seen[r] {
            continue;
        }
        if next(r as u32).is_none() {
            seen[r] = true;
            free_loops += 1;
            continue;
        }
        let mut cyc = Vec::new();
        let mut a = r as u32;
        while !seen[a as usize] {
            seen[a as usize] = true;
            cyc.push(a);
            a = next(a).expect("closed cycle");
        }
        cycles.push(cyc);
    }
    // Compact arc ids in traversal order.
    let mut id = vec![u32::MAX; n];
    let mut k = 0;
    for cyc in &cycles {
        for &a in cyc {
            id[a as usize] = k;
            k += 1;
        }
    }
    let r = |a: u32| id[a as usize];
    let crossings = rest
        .iter()
        .map(|x| Crossing { under_in: r(x.under_in), under_out: r(x.under_out), over_in: r(x.over_in), over_out: r(x.over_out), sign: x.sign })
        .collect();
    let components = cycles.iter().map(|c| c.iter().map(|&a| r(a)).collect()).collect();
    let d = PlanarDiagram { crossings, free_loops, components };
    assert!(d.is_well_formed());
    d
}

pub fn homfly_fixtures() -> Vec<(&'static str, PlanarDiagram)> {
    vec![
        ("torus 3", knots::torus_2(3)),
        ("torus 5", knots::torus_2(5)),
        ("figure eight", knots::figure_eight_braid()),
        ("granny", knots::granny_braid()),
        ("twist 5", knots::twist(5).unwrap()),
        ("twist 6", knots::twist(6).unwrap()),
        ("hopf", braid_closure(2, &[1, 1])),
        ("mixed link", braid_closure(3, &[1, 1, -2, -2])),
    ]
}

/// Pairs of braid words whose closures differ by one Reidemeister or Markov move.
pub fn reidemeister_pairs() -> Vec<((usize, Vec<i32>), (usize, Vec<i32>))> {
    vec![
        // R1 by stabilization, both signs.
        ((2, vec![1, 1, 1]), (3, vec![1, 1, 1, 2])),
        ((2, vec![1, 1, 1]), (3, vec![1, 1, 1, -2])),
        ((3, vec![1, -2, 1, -2]), (4, vec![1, -2, 1, -2, -3])),
        // R2: a cancelling pair inserted.
        ((3, vec![1, -2, 1, -2]), (3, vec![1, 2, -2, -2, 1, -2])),
        ((3, vec![1, 1, 1, 2, 2, 2]), (3, vec![1, 1, -2, 2, 1, 2, 2, 2])),
        // R3: the braid relation.
        ((3, vec![1, 2, 1, 1, 2]), (3, vec![2, 1, 2, 1, 2])),
        ((4, vec![1, 2, 1, 3, -2, 3]), (4, vec![2, 1, 2, 3, -2, 3])),
        // Conjugation: the closure does not see where the word starts.
        ((3, vec![1, 1, 1, 2, -1, 2]), (3, vec![2, -1, 2, 1, 1, 1])),
    ]
}
