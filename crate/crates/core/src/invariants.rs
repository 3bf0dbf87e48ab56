//! Strand tracing, orientation and the classical invariants of a mosaic.
//!
//! Half-integer quantities (tb*, rot*) are stored doubled so that everything
//! here is integer arithmetic. The P-matrix is exposed with exact rationals.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::Error;
use crate::tile::{is_suitably_connected, Edge, Mosaic, Strand, Tile};

/// One pass through a tile: the strand used and the direction of travel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    /// Row-major cell index, 0-based.
    pub cell: usize,
    pub strand: u8,
    pub from: Edge,
    pub to: Edge,
}

/// A closed strand cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub steps: Vec<Step>,
}

impl Component {
    pub fn reversed(&self) -> Component {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| Step { from: s.to, to: s.from, ..*s })
            .collect();
        Component { steps }
    }
}

fn neighbour(rows: usize, cols: usize, cell: usize, e: Edge) -> Option<usize> {
    let (dr, dc) = e.offset();
    let r = (cell / cols) as isize + dr;
    let c = (cell % cols) as isize + dc;
    if r < 0 || c < 0 || r >= rows as isize || c >= cols as isize {
        None
    } else {
        Some(r as usize * cols + c as usize)
    }
}

/// Decomposes a suitably connected mosaic into closed strand cycles.
///
/// Each cycle starts at its lowest (cell, strand) and leaves through the
/// strand's second listed endpoint; this is the default orientation.
pub fn trace(m: &Mosaic) -> Result<Vec<Component>, Error> {
    if !is_suitably_connected(m) {
        return Err(Error::NotSuitablyConnected);
    }
    Ok(trace_cells(m.rows(), m.cols(), m.cells()))
}

/// `trace` without the connectivity check; the caller guarantees validity.
pub(crate) fn trace_cells(rows: usize, cols: usize, cells: &[Tile]) -> Vec<Component> {
    let mut seen = vec![[false; 2]; cells.len()];
    let mut comps = Vec::new();
    for start in 0..cells.len() {
        for (k, s) in cells[start].strands().iter().enumerate() {
            if seen[start][k] {
                continue;
            }
            let mut steps = Vec::new();
            let (mut cell, mut strand, mut from, mut to) = (start, k, s.a, s.b);
            loop {
                seen[cell][strand] = true;
                steps.push(Step { cell, strand: strand as u8, from, to });
                let next = neighbour(rows, cols, cell, to).expect("suitably connected mosaic has no loose ends");
                let entry = to.opposite();
                let ns = cells[next].strand_at(entry).expect("suitably connected mosaic has matching edges");
                cell = next;
                strand = ns;
                from = entry;
                to = cells[next].strands()[ns].other(entry);
                if cell == start && strand == k {
                    break;
                }
            }
            comps.push(Component { steps });
        }
    }
    comps
}

/// Number of closed components, without storing the cycles.
pub fn component_count(m: &Mosaic) -> Result<usize, Error> {
    Ok(trace(m)?.len())
}

/// A tile with a direction chosen for each of its strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedTile {
    pub tile: Tile,
    /// Bit k set: strand k is traversed from its `b` endpoint to its `a` endpoint.
    pub reversed: u8,
}

impl OrientedTile {
    pub fn new(tile: Tile, reversed: u8) -> OrientedTile {
        assert!(reversed < (1 << tile.strands().len()));
        OrientedTile { tile, reversed }
    }

    /// Directed strands (entry, exit).
    pub fn directed(&self) -> impl Iterator<Item = (Edge, Edge)> + '_ {
        self.tile.strands().iter().enumerate().map(move |(k, s)| {
            if self.reversed >> k & 1 == 1 {
                (s.b, s.a)
            } else {
                (s.a, s.b)
            }
        })
    }

    /// Position of this oriented tile in [`oriented_tiles`].
    pub fn index(&self) -> usize {
        ORIENTED_OFFSET[self.tile as usize] + self.reversed as usize
    }

    pub fn attributes(&self) -> OrientedTileAttributes {
        OrientedTileAttributes::of(self)
    }
}

const ORIENTED_OFFSET: [usize; 10] = {
    let mut off = [0usize; 10];
    let mut acc = 0;
    let mut i = 0;
    while i < 10 {
        off[i] = acc;
        acc += 1 << Tile::ALL[i].strands().len();
        i += 1;
    }
    off
};

/// Number of distinct oriented tiles.
pub const ORIENTED_TILE_COUNT: usize = 25;

/// All oriented tiles in index order.
pub fn oriented_tiles() -> Vec<OrientedTile> {
    Tile::ALL
        .iter()
        .flat_map(|&t| (0..1u8 << t.strands().len()).map(move |r| OrientedTile::new(t, r)))
        .collect()
}

/// Net displayed movement of a directed strand, in units of half a tile diagonal.
fn movement(from: Edge, to: Edge) -> (i32, i32) {
    let (fx, fy) = from.role();
    let (tx, ty) = to.role();
    ((tx - fx) / 2, (ty - fy) / 2)
}

/// Per-oriented-tile bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrientedTileAttributes {
    /// 2·tb*
    pub tbstar2: i32,
    /// 2·rot*
    pub rotstar2: i32,
    pub h: i32,
    pub v: i32,
    pub cusps: u8,
    pub up_cusps: u8,
    pub down_cusps: u8,
    pub crossing_sign: i8,
}

impl OrientedTileAttributes {
    fn of(t: &OrientedTile) -> OrientedTileAttributes {
        let (mut h, mut v, mut up, mut down) = (0, 0, 0u8, 0u8);
        let dirs: Vec<(Edge, Edge)> = t.directed().collect();
        for &(f, e) in &dirs {
            let (dh, dv) = movement(f, e);
            h += dh;
            v += dv;
            if (Strand { a: f, b: e }).is_cusp() {
                if dv > 0 {
                    up += 1;
                } else {
                    down += 1;
                }
            }
        }
        let sign = if t.tile.is_crossing() { crossing_sign(dirs[0], dirs[1]) } else { 0 };
        let cusps = up + down;
        OrientedTileAttributes {
            tbstar2: 2 * sign as i32 - cusps as i32,
            rotstar2: down as i32 - up as i32,
            h,
            v,
            cusps,
            up_cusps: up,
            down_cusps: down,
            crossing_sign: sign,
        }
    }

    pub fn tbstar(&self) -> Ratio<i64> {
        Ratio::new(self.tbstar2 as i64, 2)
    }

    pub fn rotstar(&self) -> Ratio<i64> {
        Ratio::new(self.rotstar2 as i64, 2)
    }
}

/// +1 iff det[d_over, d_under] > 0 in display coordinates.
fn crossing_sign(over: (Edge, Edge), under: (Edge, Edge)) -> i8 {
    let (ox, oy) = movement(over.0, over.1);
    let (ux, uy) = movement(under.0, under.1);
    let det = ox * uy - oy * ux;
    debug_assert!(det != 0);
    if det > 0 {
        1
    } else {
        -1
    }
}

/// A mosaic with a direction on every strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedMosaic {
    base: Mosaic,
    components: Vec<Component>,
    tiles: Vec<OrientedTile>,
}

impl OrientedMosaic {
    pub fn base(&self) -> &Mosaic {
        &self.base
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Oriented tile per cell, row-major; blank cells are `T0`.
    pub fn tiles(&self) -> &[OrientedTile] {
        &self.tiles
    }

    fn from_components(base: Mosaic, components: Vec<Component>) -> OrientedMosaic {
        let mut tiles: Vec<OrientedTile> = base.cells().iter().map(|&t| OrientedTile::new(t, 0)).collect();
        for comp in &components {
            for s in &comp.steps {
                let strand = base.cells()[s.cell].strands()[s.strand as usize];
                if strand.a != s.from {
                    tiles[s.cell].reversed |= 1 << s.strand;
                }
            }
        }
        OrientedMosaic { base, components, tiles }
    }

    /// Reverses every component.
    pub fn reversed(&self) -> OrientedMosaic {
        let comps = self.components.iter().map(Component::reversed).collect();
        OrientedMosaic::from_components(self.base.clone(), comps)
    }

    /// Flow conservation across every shared edge.
    pub fn is_consistent(&self) -> bool {
        let (rows, cols) = (self.base.rows(), self.base.cols());
        for (cell, ot) in self.tiles.iter().enumerate() {
            for (_, exit) in ot.directed() {
                let Some(nb) = neighbour(rows, cols, cell, exit) else { return false };
                if !self.tiles[nb].directed().any(|(entry, _)| entry == exit.opposite()) {
                    return false;
                }
            }
        }
        true
    }
}

/// Orients each component; `flip[k]` reverses component k from its default.
pub fn orient(m: &Mosaic, flip: &[bool]) -> Result<OrientedMosaic, Error> {
    let comps = trace(m)?;
    if flip.len() != comps.len() && !flip.is_empty() {
        return Err(Error::Domain(format!("{} orientation flags for {} components", flip.len(), comps.len())));
    }
    let comps = comps
        .into_iter()
        .enumerate()
        .map(|(k, c)| if flip.get(k).copied().unwrap_or(false) { c.reversed() } else { c })
        .collect();
    Ok(OrientedMosaic::from_components(m.clone(), comps))
}

/// Every orientation of a mosaic (2^components of them).
pub fn all_orientations(m: &Mosaic) -> Result<Vec<OrientedMosaic>, Error> {
    let k = trace(m)?.len();
    if k > 16 {
        return Err(Error::ResourceLimit(format!("{k} components")));
    }
    (0..1u32 << k)
        .map(|bits| {
            let flip: Vec<bool> = (0..k).map(|i| bits >> i & 1 == 1).collect();
            orient(m, &flip)
        })
        .collect()
}

/// Classical invariants of an oriented diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LegendrianInvariants {
    pub tb: i64,
    pub rot: i64,
    pub writhe: i64,
    #[serde(rename = "P")]
    pub positive: u64,
    #[serde(rename = "N")]
    pub negative: u64,
    #[serde(rename = "C")]
    pub cusps: u64,
    #[serde(rename = "U")]
    pub up: u64,
    #[serde(rename = "D")]
    pub down: u64,
    pub components: usize,
}

pub fn classical_invariants(om: &OrientedMosaic) -> LegendrianInvariants {
    let (mut p, mut n, mut u, mut d) = (0u64, 0u64, 0u64, 0u64);
    for ot in &om.tiles {
        let a = ot.attributes();
        match a.crossing_sign {
            1 => p += 1,
            -1 => n += 1,
            _ => {}
        }
        u += a.up_cusps as u64;
        d += a.down_cusps as u64;
    }
    let c = u + d;
    debug_assert!(c % 2 == 0 && (d + u) % 2 == 0);
    LegendrianInvariants {
        tb: p as i64 - n as i64 - (c / 2) as i64,
        rot: (d as i64 - u as i64) / 2,
        writhe: p as i64 - n as i64,
        positive: p,
        negative: n,
        cusps: c,
        up: u,
        down: d,
        components: om.components.len(),
    }
}

/// Invariants of the default orientation.
pub fn invariants(m: &Mosaic) -> Result<LegendrianInvariants, Error> {
    Ok(classical_invariants(&orient(m, &[])?))
}

/// Orientation of a knot mosaic with rotation number `rot`, if either has it.
/// The flag is true when the default orientation had to be reversed.
pub fn invariants_with_rot(m: &Mosaic, rot: i64) -> Result<Option<(LegendrianInvariants, bool)>, Error> {
    let fwd = invariants(m)?;
    if fwd.components != 1 {
        return Err(Error::NotAKnot);
    }
    if fwd.rot == rot {
        return Ok(Some((fwd, false)));
    }
    let back = classical_invariants(&orient(m, &[true])?);
    Ok((back.rot == rot).then_some((back, true)))
}

/// Counts |M|_{R_i} over the 25 oriented tiles, T0 included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileCountVector {
    pub oriented: [u64; ORIENTED_TILE_COUNT],
}

impl TileCountVector {
    /// Count of an unoriented tile, summed over its orientations.
    pub fn of_tile(&self, t: Tile) -> u64 {
        let off = ORIENTED_OFFSET[t as usize];
        self.oriented[off..off + (1 << t.strands().len())].iter().sum()
    }

    pub fn total(&self) -> u64 {
        self.oriented.iter().sum()
    }
}

pub fn tile_counts(om: &OrientedMosaic) -> TileCountVector {
    let mut c = [0u64; ORIENTED_TILE_COUNT];
    for ot in &om.tiles {
        c[ot.index()] += 1;
    }
    TileCountVector { oriented: c }
}

/// The 5×25 matrix with columns (tb*, rot*, h, v, 1).
pub fn p_matrix() -> Vec<[Ratio<i64>; ORIENTED_TILE_COUNT]> {
    let tiles = oriented_tiles();
    let mut rows = vec![[Ratio::from_integer(0); ORIENTED_TILE_COUNT]; 5];
    for (i, t) in tiles.iter().enumerate() {
        let a = t.attributes();
        rows[0][i] = a.tbstar();
        rows[1][i] = a.rotstar();
        rows[2][i] = Ratio::from_integer(a.h as i64);
        rows[3][i] = Ratio::from_integer(a.v as i64);
        rows[4][i] = Ratio::from_integer(1);
    }
    rows
}

/// P·c; for an oriented knot mosaic this is (tb, rot, 0, 0, cells).
pub fn p_matrix_product(counts: &TileCountVector) -> [Ratio<i64>; 5] {
    let p = p_matrix();
    let mut out = [Ratio::from_integer(0); 5];
    for (r, row) in p.iter().enumerate() {
        out[r] = row.iter().zip(counts.oriented.iter()).map(|(x, &c)| x * c as i64).sum();
    }
    out
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(rows: &[[Ratio<i64>; ORIENTED_TILE_COUNT]]) -> usize {
    let mut m: Vec<Vec<Ratio<i64>>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut rank = 0;
    for col in 0..ORIENTED_TILE_COUNT {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != Ratio::from_integer(0)) else { continue };
        m.swap(rank, piv);
        for r in 0..m.len() {
            if r != rank && m[r][col] != Ratio::from_integer(0) {
                let f = m[r][col] / m[rank][col];
                for c in col..ORIENTED_TILE_COUNT {
                    let sub = f * m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Net horizontal and vertical strand movement summed over the mosaic.
pub fn net_movement(om: &OrientedMosaic) -> (i64, i64) {
    om.tiles.iter().fold((0, 0), |(h, v), t| {
        let a = t.attributes();
        (h + a.h as i64, v + a.v as i64)
    })
}

/// For the orientation with at least as many up cusps as down cusps, checks
/// 2|rot| ≤ 2N + |M|_{T5} + |M|_{T6}.
pub fn rot_crossing_inequality_holds(om: &OrientedMosaic) -> bool {
    let inv = classical_invariants(om);
    let om = if inv.up >= inv.down { om.clone() } else { om.reversed() };
    let inv = classical_invariants(&om);
    let counts = tile_counts(&om);
    2 * inv.rot.unsigned_abs() <= 2 * inv.negative + counts.of_tile(Tile::T5) + counts.of_tile(Tile::T6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tile::parse_mosaic;

    fn inv(s: &str) -> LegendrianInvariants {
        invariants(&parse_mosaic(s).unwrap()).unwrap()
    }

    #[test]
    fn oriented_tile_table() {
        let all = oriented_tiles();
        assert_eq!(all.len(), ORIENTED_TILE_COUNT);
        for (i, t) in all.iter().enumerate() {
            assert_eq!(t.index(), i);
        }
        let attrs: Vec<_> = all.iter().map(|t| (t, t.attributes())).collect();
        assert_eq!(attrs.iter().filter(|(_, a)| a.cusps > 0).count(), 8);
        let s_prime = attrs
            .iter()
            .filter(|(t, a)| {
                (a.crossing_sign == -1 && a.v.abs() == 2) || (matches!(t.tile, Tile::T5 | Tile::T6) && a.v.abs() == 1)
            })
            .count();
        assert_eq!(s_prime, 6);
        let all_down = attrs
            .iter()
            .filter(|(t, a)| {
                t.tile != Tile::T0 && a.cusps == 0 && t.directed().all(|(f, e)| movement(f, e).1 < 0)
            })
            .count();
        assert_eq!(all_down, 3);
        for (_, a) in &attrs {
            assert!((-2..=2).contains(&a.h) && (-2..=2).contains(&a.v));
        }
    }

    #[test]
    fn cusp_strands_have_unit_v_and_no_h() {
        for t in oriented_tiles() {
            for (f, e) in t.directed() {
                if (Strand { a: f, b: e }).is_cusp() {
                    let (h, v) = movement(f, e);
                    assert_eq!((h, v.abs()), (0, 1));
                }
            }
        }
    }

    #[test]
    fn same_vertical_direction_crossings_are_negative() {
        for r in 0..4 {
            let t = OrientedTile::new(Tile::T10, r);
            let a = t.attributes();
            let vs: Vec<i32> = t.directed().map(|(f, e)| movement(f, e).1).collect();
            assert_eq!(a.crossing_sign == -1, vs[0] == vs[1], "{r}");
        }
    }

    #[test]
    fn p_matrix_full_rank() {
        assert_eq!(rank(&p_matrix()), 5);
    }

    #[test]
    fn trace_anchors() {
        let m = parse_mosaic("2134").unwrap();
        let comps = trace(&m).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].steps.len(), 4);
        assert!(trace(&Mosaic::blank(3, 3)).unwrap().is_empty());
        let m = parse_mosaic("255100602910629891398946039406003554").unwrap();
        assert_eq!(trace(&m).unwrap().len(), 1);
        assert_eq!(trace(&parse_mosaic("2133").unwrap()), Err(Error::NotSuitablyConnected));
    }

    #[test]
    fn classical_anchors() {
        let i = inv("2134");
        assert_eq!((i.tb, i.rot, i.cusps, i.writhe), (-1, 0, 2, 0));
        let i = inv("0021025971629943943103554");
        assert_eq!((i.tb, i.rot), (1, 0));
        let i = inv("021210289891397984299791379984034340");
        assert_eq!((i.tb, i.rot), (-11, 0));
        let i = inv("021246354");
        assert_eq!((i.tb, i.rot.abs()), (-2, 1));
        let i = inv("0212128746399162434635554");
        assert_eq!((i.tb, i.rot.abs()), (-5, 4));
    }

    #[test]
    fn reversal_negates_rot() {
        let m = parse_mosaic("021246354").unwrap();
        let a = orient(&m, &[false]).unwrap();
        let b = orient(&m, &[true]).unwrap();
        assert_eq!(b, a.reversed());
        let (ia, ib) = (classical_invariants(&a), classical_invariants(&b));
        assert_eq!(ia.tb, ib.tb);
        assert_eq!(ia.rot, -ib.rot);
        assert_eq!(ia.writhe, ib.writhe);
        assert!(a.is_consistent() && b.is_consistent());
    }

    #[test]
    fn two_component_orientations() {
        let m = parse_mosaic("5x5:2100034000000000002100034").unwrap();
        assert_eq!(trace(&m).unwrap().len(), 2);
        let all = all_orientations(&m).unwrap();
        assert_eq!(all.len(), 4);
        for i in 0..4 {
            for j in 0..i {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn p_product_anchors() {
        let om = orient(&parse_mosaic("2134").unwrap(), &[]).unwrap();
        let c = tile_counts(&om);
        for t in [Tile::T1, Tile::T2, Tile::T3, Tile::T4] {
            assert_eq!(c.of_tile(t), 1);
        }
        let r = |x| Ratio::from_integer(x);
        assert_eq!(p_matrix_product(&c), [r(-1), r(0), r(0), r(0), r(4)]);
        let om = orient(&parse_mosaic("021246354").unwrap(), &[]).unwrap();
        let p = p_matrix_product(&tile_counts(&om));
        assert_eq!(p[0], r(-2));
        assert_eq!(p[1].numer().abs(), 1);
        assert_eq!(&p[2..], &[r(0), r(0), r(9)]);
        let om = orient(&Mosaic::blank(3, 3), &[]).unwrap();
        assert_eq!(tile_counts(&om).oriented[0], 9);
    }
}
