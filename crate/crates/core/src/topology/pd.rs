//! Oriented planar diagrams.
//!
//! Arcs run between consecutive crossing passages. A crossing is recorded by
//! its incoming and outgoing under arcs and over arcs together with its sign;
//! the counterclockwise order of its four arcs follows from the sign.

use serde::Serialize;

use crate::error::Error;
use crate::invariants::orient;
use crate::tile::{Mosaic, Tile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Crossing {
    pub under_in: u32,
    pub under_out: u32,
    pub over_in: u32,
    pub over_out: u32,
    pub sign: i8,
}

impl Crossing {
    /// The four arcs in counterclockwise order, starting at the incoming under arc.
    pub fn cyclic(&self) -> [u32; 4] {
        if self.sign > 0 {
            [self.under_in, self.over_out, self.under_out, self.over_in]
        } else {
            [self.under_in, self.over_in, self.under_out, self.over_out]
        }
    }

    /// The same crossing with over and under exchanged.
    pub fn switched(&self) -> Crossing {
        Crossing {
            under_in: self.over_in,
            under_out: self.over_out,
            over_in: self.under_in,
            over_out: self.under_out,
            sign: -self.sign,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarDiagram {
    pub crossings: Vec<Crossing>,
    /// Components that pass through no crossing.
    pub free_loops: usize,
    /// Arc ids of each crossing-carrying component, in traversal order.
    pub components: Vec<Vec<u32>>,
}

impl PlanarDiagram {
    pub fn arc_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    pub fn component_count(&self) -> usize {
        self.components.len() + self.free_loops
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// The diagram of the mirror image.
    pub fn mirror(&self) -> PlanarDiagram {
        let crossings = self.crossings.iter().map(Crossing::switched).collect();
        PlanarDiagram { crossings, ..self.clone() }
    }

    /// The same diagram with every component reversed.
    pub fn reversed(&self) -> PlanarDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                under_in: c.under_out,
                under_out: c.under_in,
                over_in: c.over_out,
                over_out: c.over_in,
                sign: c.sign,
            })
            .collect();
        let components = self
            .components
            .iter()
            .map(|arcs| arcs.iter().rev().copied().collect())
            .collect();
        PlanarDiagram { crossings, free_loops: self.free_loops, components }
    }

    /// Each arc id appears exactly once as an incoming and once as an
    /// outgoing slot, and component arc lists follow the crossings.
    pub fn is_well_formed(&self) -> bool {
        let n = self.arc_count();
        let mut ins = vec![0u8; n];
        let mut outs = vec![0u8; n];
        for c in &self.crossings {
            for a in [c.under_in, c.over_in] {
                match ins.get_mut(a as usize) {
                    Some(x) => *x += 1,
                    None => return false,
                }
            }
            for a in [c.under_out, c.over_out] {
                match outs.get_mut(a as usize) {
                    Some(x) => *x += 1,
                    None => return false,
                }
            }
        }
        if ins.iter().chain(&outs).any(|&x| x != 1) {
            return false;
        }
        for arcs in &self.components {
            for w in 0..arcs.len() {
                let (a, b) = (arcs[w], arcs[(w + 1) % arcs.len()]);
                let ok = self
                    .crossings
                    .iter()
                    .any(|c| (c.under_in == a && c.under_out == b) || (c.over_in == a && c.over_out == b));
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// Planar diagram of a suitably connected mosaic in its default orientation.
pub fn to_planar_diagram(m: &Mosaic) -> Result<PlanarDiagram, Error> {
    let om = orient(m, &[])?;
    let mut crossing_of_cell = vec![usize::MAX; m.cells().len()];
    let mut crossings = Vec::new();
    for (cell, t) in m.cells().iter().enumerate() {
        if *t == Tile::T10 {
            crossing_of_cell[cell] = crossings.len();
            let sign = om.tiles()[cell].attributes().crossing_sign;
            crossings.push(Crossing { under_in: 0, under_out: 0, over_in: 0, over_out: 0, sign });
        }
    }
    let mut free_loops = 0;
    let mut components = Vec::new();
    let mut next_arc = 0u32;
    for comp in om.components() {
        let passes: Vec<_> = comp.steps.iter().filter(|s| m.cells()[s.cell] == Tile::T10).collect();
        if passes.is_empty() {
            free_loops += 1;
            continue;
        }
        let k = passes.len() as u32;
        let base = next_arc;
        next_arc += k;
        for (j, s) in passes.iter().enumerate() {
            let j = j as u32;
            let arc_in = base + (j + k - 1) % k;
            let arc_out = base + j;
            let c = &mut crossings[crossing_of_cell[s.cell]];
            if s.strand == 0 {
                c.over_in = arc_in;
                c.over_out = arc_out;
            } else {
                c.under_in = arc_in;
                c.under_out = arc_out;
            }
        }
        components.push((base..base + k).collect());
    }
    Ok(PlanarDiagram { crossings, free_loops, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tile::parse_mosaic;

    #[test]
    fn unknot_has_no_crossings() {
        let d = to_planar_diagram(&parse_mosaic("2134").unwrap()).unwrap();
        assert!(d.crossings.is_empty());
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn trefoil_row_has_three_crossings() {
        let m = parse_mosaic("0021002971294663759403540").unwrap();
        let d = to_planar_diagram(&m).unwrap();
        assert_eq!(d.crossings.len(), 3);
        assert_eq!(d.component_count(), 1);
        assert!(d.is_well_formed());
        assert!(d.reversed().is_well_formed());
        assert!(d.mirror().is_well_formed());
    }

    #[test]
    fn writhe_matches_invariants() {
        let m = parse_mosaic("021210289891397984299791379984034340").unwrap();
        let d = to_planar_diagram(&m).unwrap();
        let inv = crate::invariants::invariants(&m).unwrap();
        assert_eq!(d.writhe(), inv.writhe);
        assert_eq!(d.crossings.len(), m.count(Tile::T10));
    }
}
