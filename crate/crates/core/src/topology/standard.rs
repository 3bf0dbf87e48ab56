//! Diagrams of standard knots built from braid words.
//!
//! A word is a sequence of signed generators: `i` crosses positions i−1 and i
//! (1-based i), with the strand coming from the left passing over for positive
//! `i`. Strands are drawn bottom to top. Closures either join each top end to
//! the bottom end below it (braid closure) or cap off neighbouring pairs at
//! both ends (plat closure, 4 strands).

use super::pd::{Crossing, PlanarDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Port {
    /// Crossing k, corner: 0 = bottom-left, 1 = bottom-right, 2 = top-left, 3 = top-right.
    Corner(usize, u8),
    Bottom(usize),
    Top(usize),
}

struct Layout {
    strands: usize,
    /// Generator per crossing.
    gens: Vec<i32>,
    /// Partner of each crossing corner (index 4k + corner).
    corner_link: Vec<Port>,
    bottom_link: Vec<Port>,
    top_link: Vec<Port>,
}

impl Layout {
    fn new(strands: usize, word: &[i32]) -> Layout {
        let mut cur: Vec<Port> = (0..strands).map(Port::Bottom).collect();
        let mut corner_link = vec![Port::Bottom(0); 4 * word.len()];
        let mut bottom_link = vec![Port::Bottom(0); strands];
        let mut top_link = vec![Port::Bottom(0); strands];
        let link = |a: Port, b: Port, corner_link: &mut Vec<Port>, bottom_link: &mut Vec<Port>| match a {
            Port::Corner(k, c) => corner_link[4 * k + c as usize] = b,
            Port::Bottom(p) => bottom_link[p] = b,
            Port::Top(_) => unreachable!(),
        };
        for (k, &g) in word.iter().enumerate() {
            let i = g.unsigned_abs() as usize;
            assert!(i >= 1 && i < strands, "generator {g} out of range for {strands} strands");
            let (l, r) = (i - 1, i);
            link(cur[l], Port::Corner(k, 0), &mut corner_link, &mut bottom_link);
            corner_link[4 * k] = cur[l];
            link(cur[r], Port::Corner(k, 1), &mut corner_link, &mut bottom_link);
            corner_link[4 * k + 1] = cur[r];
            cur[l] = Port::Corner(k, 2);
            cur[r] = Port::Corner(k, 3);
        }
        for (p, &port) in cur.iter().enumerate() {
            top_link[p] = port;
            match port {
                Port::Corner(k, c) => corner_link[4 * k + c as usize] = Port::Top(p),
                Port::Bottom(q) => bottom_link[q] = Port::Top(p),
                Port::Top(_) => unreachable!(),
            }
        }
        Layout { strands, gens: word.to_vec(), corner_link, bottom_link, top_link }
    }

    fn partner(&self, p: Port) -> Port {
        match p {
            Port::Corner(k, c) => self.corner_link[4 * k + c as usize],
            Port::Bottom(q) => self.bottom_link[q],
            Port::Top(q) => self.top_link[q],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Closure {
    Braid,
    Plat,
}

/// Where a strand leaving the braid at `p` re-enters.
fn close(closure: Closure, p: Port) -> Port {
    match (closure, p) {
        (Closure::Braid, Port::Top(q)) => Port::Bottom(q),
        (Closure::Braid, Port::Bottom(q)) => Port::Top(q),
        (Closure::Plat, Port::Top(q)) => Port::Top(q ^ 1),
        (Closure::Plat, Port::Bottom(q)) => Port::Bottom(q ^ 1),
        _ => unreachable!(),
    }
}

fn build(strands: usize, word: &[i32], closure: Closure) -> PlanarDiagram {
    if closure == Closure::Plat {
        assert_eq!(strands % 2, 0, "plat closure needs an even number of strands");
    }
    let lay = Layout::new(strands, word);
    let n = lay.gens.len();
    // Per crossing: (entry corner, exit corner, arc in, arc out) for the two passages.
    let mut passages: Vec<Vec<(u8, u8, u32, u32)>> = vec![Vec::new(); n];
    let mut visited = vec![false; 4 * n];
    let mut components = Vec::new();
    let mut free_loops = 0;
    let mut next_arc = 0u32;
    let mut visited_end = vec![false; 2 * lay.strands];
    let end_index = |p: Port| match p {
        Port::Bottom(q) => q,
        Port::Top(q) => lay.strands + q,
        _ => unreachable!(),
    };
    // Walks from port `p` (leaving it) to the next crossing corner it enters,
    // marking closure ends on the way. Returns None for a crossing-free loop.
    let walk = |mut p: Port, visited_end: &mut Vec<bool>| -> Option<(usize, u8)> {
        let start = p;
        loop {
            let q = lay.partner(p);
            match q {
                Port::Corner(k, c) => return Some((k, c)),
                _ => {
                    visited_end[end_index(q)] = true;
                    let r = close(closure, q);
                    visited_end[end_index(r)] = true;
                    if r == start {
                        return None;
                    }
                    p = r;
                }
            }
        }
    };
    let through = |c: u8| -> u8 { 3 - c };
    for k0 in 0..n {
        for c0 in 0..2u8 {
            if visited[4 * k0 + c0 as usize] || visited[4 * k0 + through(c0) as usize] {
                continue;
            }
            // Traverse the component through crossing k0 entering at corner c0.
            let base = next_arc;
            let mut arcs = Vec::new();
            let (mut k, mut c) = (k0, c0);
            let mut pass = Vec::new();
            loop {
                let out = through(c);
                visited[4 * k + c as usize] = true;
                visited[4 * k + out as usize] = true;
                pass.push((k, c, out));
                let (nk, nc) = walk(Port::Corner(k, out), &mut visited_end).expect("component passes a crossing");
                k = nk;
                c = nc;
                if (k, c) == (k0, c0) {
                    break;
                }
            }
            let len = pass.len() as u32;
            for (j, &(k, c, out)) in pass.iter().enumerate() {
                let j = j as u32;
                let arc_in = base + (j + len - 1) % len;
                let arc_out = base + j;
                passages[k].push((c, out, arc_in, arc_out));
                arcs.push(arc_out);
            }
            next_arc += len;
            components.push(arcs);
        }
    }
    for q in 0..lay.strands {
        for p in [Port::Bottom(q), Port::Top(q)] {
            if !visited_end[end_index(p)] {
                visited_end[end_index(p)] = true;
                if walk(p, &mut visited_end).is_none() {
                    free_loops += 1;
                }
            }
        }
    }
    let crossings = (0..n)
        .map(|k| {
            let g = lay.gens[k];
            // Strand a runs bottom-left ↔ top-right, strand b bottom-right ↔ top-left.
            let mut a = None;
            let mut b = None;
            for &(entry, _, i, o) in &passages[k] {
                match entry {
                    0 => a = Some(((1, 1), i, o)),
                    3 => a = Some(((-1, -1), i, o)),
                    1 => b = Some(((-1, 1), i, o)),
                    2 => b = Some(((1, -1), i, o)),
                    _ => unreachable!(),
                }
            }
            let (a, b) = (a.expect("two passages"), b.expect("two passages"));
            let (over, under) = if g > 0 { (a, b) } else { (b, a) };
            let det: i32 = over.0 .0 * under.0 .1 - over.0 .1 * under.0 .0;
            Crossing { under_in: under.1, under_out: under.2, over_in: over.1, over_out: over.2, sign: det.signum() as i8 }
        })
        .collect();
    PlanarDiagram { crossings, free_loops, components }
}

/// Closure of a braid on `strands` strands.
pub fn braid_closure(strands: usize, word: &[i32]) -> PlanarDiagram {
    build(strands, word, Closure::Braid)
}

/// Plat closure of a braid on an even number of strands.
pub fn plat_closure(strands: usize, word: &[i32]) -> PlanarDiagram {
    build(strands, word, Closure::Plat)
}

/// Disjoint union of two diagrams with arcs of `b` renumbered after `a`.
fn disjoint(a: &PlanarDiagram, b: &PlanarDiagram) -> PlanarDiagram {
    let off = a.arc_count() as u32;
    let mut crossings = a.crossings.clone();
    crossings.extend(b.crossings.iter().map(|c| Crossing {
        under_in: c.under_in + off,
        under_out: c.under_out + off,
        over_in: c.over_in + off,
        over_out: c.over_out + off,
        sign: c.sign,
    }));
    let mut components = a.components.clone();
    components.extend(b.components.iter().map(|arcs| arcs.iter().map(|x| x + off).collect()));
    PlanarDiagram { crossings, free_loops: a.free_loops + b.free_loops, components }
}

/// Connected sum of two knot diagrams that both have crossings, joining the
/// first arc of each. Any pair of arcs gives a planar sum: on the sphere the
/// second diagram can be redrawn with a face next to its arc outermost and set
/// inside a face next to the first diagram's arc.
pub fn connected_sum(a: &PlanarDiagram, b: &PlanarDiagram) -> PlanarDiagram {
    assert!(a.components.len() == 1 && b.components.len() == 1 && a.free_loops == 0 && b.free_loops == 0);
    let mut d = disjoint(a, b);
    let off = a.arc_count() as u32;
    // Arc x of a and arc y of b are swapped at their ends: x now ends where y
    // ended and y ends where x ended.
    let (x, y) = (a.components[0][0], b.components[0][0] + off);
    for c in &mut d.crossings {
        for slot in [&mut c.under_in, &mut c.over_in] {
            if *slot == x {
                *slot = y;
            } else if *slot == y {
                *slot = x;
            }
        }
    }
    let ca = &a.components[0];
    let cb: Vec<u32> = b.components[0].iter().map(|v| v + off).collect();
    // Traversal: a's arcs from x+1.. back to x, then (as y ends at a's old end) continue into b.
    let mut arcs = Vec::new();
    arcs.extend(ca.iter().skip(1).copied());
    arcs.push(x);
    arcs.extend(cb.iter().skip(1).copied());
    arcs.push(y);
    d.components = vec![arcs];
    d
}

/// Reference knots with their diagrams.
pub mod knots {
    use super::*;

    pub fn unknot() -> PlanarDiagram {
        PlanarDiagram { crossings: vec![], free_loops: 1, components: vec![] }
    }

    /// (2, q) torus knot with positive crossings.
    pub fn torus_2(q: usize) -> PlanarDiagram {
        braid_closure(2, &vec![1; q])
    }

    /// Twist knots by crossing number: 4_1, 5_2, 6_1, 7_2 and 8_1 up to mirror.
    pub fn twist(crossings: usize) -> Option<PlanarDiagram> {
        let (s, w): (usize, &[i32]) = match crossings {
            4 => (3, &[1, -2, 1, -2]),
            5 => (3, &[1, 1, 1, 2, -1, 2]),
            6 => (4, &[1, 1, 2, -1, -3, 2, -3]),
            7 => (4, &[1, 1, 1, 2, -1, 2, 3, -2, 3]),
            8 => (5, &[1, 1, 2, -1, 2, 3, -2, -4, 3, -4]),
            _ => return None,
        };
        Some(braid_closure(s, w))
    }

    pub fn figure_eight_braid() -> PlanarDiagram {
        braid_closure(3, &[1, -2, 1, -2])
    }

    pub fn granny_braid() -> PlanarDiagram {
        braid_closure(3, &[1, 1, 1, 2, 2, 2])
    }
}
