//! Explicit mosaics: crab buckets and Legendrian unknots.
//!
//! Unknots are grown on a *soil setup*: a diagonal chain of `T7`/`T10` tiles
//! from `(1, 1+i)` to `(n-i, n)`, where `i = n mod 2` flipped (0 for odd n).
//! Barn tiles are the diamonds around interior grid vertices `(r, c)` (the
//! bottom-right corner of tile `(r, c)`) with `r + c ≢ n (mod 2)`. Seen with
//! the soil diagonal horizontal, the four tiles around a vertex are
//! left `(r, c)`, top `(r, c+1)`, bottom `(r+1, c)` and right `(r+1, c+1)`,
//! and barn rows are the diagonals `c - r = d`. Kraken and fish moves fill
//! empty barn tiles directly above or below filled ones.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bounds::{is_unknot_pair, unknot_upper_bound, InvariantPair};
use crate::error::Error;
use crate::invariants::{invariants, LegendrianInvariants};
use crate::tile::{Edge, Mosaic, Strand, Tile};

/// Crab bucket β_n for n ≥ 5.
pub fn crab_bucket(n: usize) -> Result<Mosaic, Error> {
    if n < 5 {
        return Err(Error::Domain(format!("crab buckets need n >= 5, got {n}")));
    }
    let mut m = Mosaic::blank(n, n);
    let mut free = vec![false; n * n];
    for i in 1..=n {
        for j in 1..=n {
            if i == 1 || j == 1 || i == n || j == n {
                free[(i - 1) * n + j - 1] = true;
            } else if (i + j) % 2 == 0 {
                m.set(i, j, Tile::T10);
            } else {
                m.set(i, j, Tile::T8);
            }
        }
    }
    if n % 2 == 0 {
        m.set(2, n - 1, Tile::T1);
        m.set(n - 1, 2, Tile::T3);
    }
    let mut found = complete_boundary(&m, &free);
    found.retain(|c| crate::invariants::component_count(c).ok() == Some(1));
    match found.len() {
        1 => Ok(found.pop().expect("one completion")),
        k => Err(Error::Domain(format!("crab bucket boundary has {k} completions for n={n}"))),
    }
}

/// Every suitably connected filling of the `free` cells, leaving the rest fixed.
fn complete_boundary(m: &Mosaic, free: &[bool]) -> Vec<Mosaic> {
    let (rows, cols) = (m.rows(), m.cols());
    let cells: Vec<usize> = (0..rows * cols).filter(|&k| free[k]).collect();
    let mut out = Vec::new();
    let mut work = m.clone();
    fill(&mut work, free, &cells, 0, &mut out);
    out
}

fn edge_ok(m: &Mosaic, free: &[bool], assigned: impl Fn(usize) -> bool, i: usize, j: usize, t: Tile) -> bool {
    let (rows, cols) = (m.rows(), m.cols());
    for e in Edge::ALL {
        let has = t.mask() & e.bit() != 0;
        let (di, dj) = e.offset();
        let (ni, nj) = (i as isize + di, j as isize + dj);
        if ni < 1 || nj < 1 || ni > rows as isize || nj > cols as isize {
            if has {
                return false;
            }
            continue;
        }
        let (ni, nj) = (ni as usize, nj as usize);
        let k = (ni - 1) * cols + nj - 1;
        if free[k] && !assigned(k) {
            continue;
        }
        if has != (m.get(ni, nj).mask() & e.opposite().bit() != 0) {
            return false;
        }
    }
    true
}

fn fill(m: &mut Mosaic, free: &[bool], cells: &[usize], at: usize, out: &mut Vec<Mosaic>) {
    if at == cells.len() {
        if m.is_suitably_connected() {
            out.push(m.clone());
        }
        return;
    }
    let k = cells[at];
    let cols = m.cols();
    let (i, j) = (k / cols + 1, k % cols + 1);
    let assigned = |x: usize| cells[..at].contains(&x);
    for t in Tile::ALL {
        if edge_ok(m, free, assigned, i, j, t) {
            m.set(i, j, t);
            fill(m, free, cells, at + 1, out);
        }
    }
    m.set(i, j, Tile::T0);
}

/// 0 for odd n, 1 for even n.
pub fn parity_offset(n: usize) -> usize {
    usize::from(n % 2 == 0)
}

/// Number of `T7`/`T10` cells in a soil setup of size n.
pub fn soil_cells(n: usize) -> usize {
    n.saturating_sub(2 + parity_offset(n))
}

/// Number of non-soil barn tiles in the default configuration.
pub fn barn_capacity(n: usize) -> usize {
    if n < 3 {
        0
    } else if n % 2 == 1 {
        (n - 1) * (n - 3) / 2
    } else {
        (n - 2) * (n - 2) / 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BarnTile {
    pub row: usize,
    pub col: usize,
}

impl BarnTile {
    pub fn new(row: usize, col: usize) -> BarnTile {
        BarnTile { row, col }
    }

    /// Barn row index `c - r`.
    pub fn diagonal(&self) -> i64 {
        self.col as i64 - self.row as i64
    }

    pub fn left(&self) -> (usize, usize) {
        (self.row, self.col)
    }

    pub fn top(&self) -> (usize, usize) {
        (self.row, self.col + 1)
    }

    pub fn bottom(&self) -> (usize, usize) {
        (self.row + 1, self.col)
    }

    pub fn right(&self) -> (usize, usize) {
        (self.row + 1, self.col + 1)
    }

    /// The next barn tile to the right in the same barn row.
    pub fn next(&self) -> BarnTile {
        BarnTile::new(self.row + 1, self.col + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Above,
    Below,
}

/// Default barn configuration of an n-mosaic with occupancy flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarnGrid {
    n: usize,
    occupied: BTreeSet<BarnTile>,
}

impl BarnGrid {
    /// The configuration with only the soil tiles occupied.
    pub fn with_soil(n: usize) -> BarnGrid {
        let mut g = BarnGrid { n, occupied: BTreeSet::new() };
        let soil = g.soil_diagonal();
        g.occupied = g.barns().into_iter().filter(|b| b.diagonal() == soil).collect();
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn soil_diagonal(&self) -> i64 {
        parity_offset(self.n) as i64
    }

    pub fn is_barn(&self, b: BarnTile) -> bool {
        let n = self.n;
        (1..n).contains(&b.row) && (1..n).contains(&b.col) && (b.row + b.col) % 2 != n % 2
    }

    pub fn is_occupied(&self, b: BarnTile) -> bool {
        self.occupied.contains(&b)
    }

    pub fn barns(&self) -> Vec<BarnTile> {
        let mut v = Vec::new();
        for r in 1..self.n {
            for c in 1..self.n {
                let b = BarnTile::new(r, c);
                if self.is_barn(b) {
                    v.push(b);
                }
            }
        }
        v
    }

    /// Barn tiles of barn row `d`, left to right.
    pub fn row(&self, d: i64) -> Vec<BarnTile> {
        let mut v: Vec<BarnTile> = self.barns().into_iter().filter(|b| b.diagonal() == d).collect();
        v.sort();
        v
    }

    /// Barn row indices, top to bottom.
    pub fn row_indices(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self.barns().iter().map(BarnTile::diagonal).collect();
        set.into_iter().rev().collect()
    }

    pub fn side(&self, b: BarnTile) -> Option<Side> {
        let s = self.soil_diagonal();
        match b.diagonal().cmp(&s) {
            std::cmp::Ordering::Greater => Some(Side::Above),
            std::cmp::Ordering::Less => Some(Side::Below),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn empty_count(&self) -> usize {
        self.barns().len() - self.occupied.len()
    }

    /// Non-soil barn tiles in placement order: the rows nearest the soil
    /// first, alternating above and below, each left to right.
    pub fn placement_order(&self) -> Vec<BarnTile> {
        let s = self.soil_diagonal();
        let rows: BTreeSet<i64> = self.barns().iter().map(BarnTile::diagonal).collect();
        let mut out = Vec::new();
        let mut step = 2;
        while rows.iter().any(|&d| (d - s).abs() >= step) {
            for d in [s + step, s - step] {
                out.extend(self.row(d));
            }
            step += 2;
        }
        out
    }
}

/// A mosaic under construction together with its barn occupancy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub mosaic: Mosaic,
    pub grid: BarnGrid,
}

/// Soil setup of size n with the leftmost `t7_count` diagonal cells `T7` and
/// the rest `T10`.
pub fn soil_setup(n: usize, t7_count: usize) -> Result<Construction, Error> {
    if n < 3 {
        return Err(Error::Domain(format!("soil setups need n >= 3, got {n}")));
    }
    let i = parity_offset(n);
    let d = soil_cells(n);
    if t7_count > d {
        return Err(Error::Domain(format!("{t7_count} T7 tiles requested but the soil has {d} cells")));
    }
    let mut m = Mosaic::blank(n, n);
    m.set(1, 1 + i, Tile::T2);
    m.set(n - i, n, Tile::T4);
    for p in 1..n - i {
        m.set(p, p + 1 + i, Tile::T1);
        m.set(p + 1, p + i, Tile::T3);
    }
    for (k, p) in (2..n - i).enumerate() {
        m.set(p, p + i, if k < t7_count { Tile::T7 } else { Tile::T10 });
    }
    Ok(Construction { mosaic: m, grid: BarnGrid::with_soil(n) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MoveKind {
    Kraken,
    Fish,
}

/// Which of the two tiles adjacent to the soil side takes the crossing in a
/// fish move: the first barn tile's (`A`) or the second's (`B`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FishVariant {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Placement {
    pub barn: BarnTile,
    pub kind: MoveKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<FishVariant>,
}

const S_SE: Strand = Strand { a: Edge::S, b: Edge::E };
const S_NW: Strand = Strand { a: Edge::N, b: Edge::W };

fn same_strand(x: Strand, y: Strand) -> bool {
    (x.a == y.a && x.b == y.b) || (x.a == y.b && x.b == y.a)
}

/// The tile whose strands are those of `t` plus `s`, if one exists.
fn gain(t: Tile, s: Strand) -> Option<Tile> {
    if t.strands().iter().any(|x| x.contains(s.a) || x.contains(s.b)) {
        return None;
    }
    let want: Vec<Strand> = t.strands().iter().copied().chain([s]).collect();
    Tile::ALL.into_iter().filter(|c| !c.is_crossing()).find(|c| {
        c.strands().len() == want.len() && want.iter().all(|w| c.strands().iter().any(|x| same_strand(*x, *w)))
    })
}

fn violated(what: String) -> Error {
    Error::MoveHypothesisViolated(what)
}

impl Construction {
    fn expect_tile(&self, at: (usize, usize), t: Tile, role: &str) -> Result<(), Error> {
        let found = self.mosaic.get(at.0, at.1);
        if found == t {
            Ok(())
        } else {
            Err(violated(format!("{role} tile at {at:?} is {found}, expected {t}")))
        }
    }

    fn gain_at(&mut self, at: (usize, usize), s: Strand) -> Result<(), Error> {
        let t = self.mosaic.get(at.0, at.1);
        let g = gain(t, s).ok_or_else(|| violated(format!("tile {t} at {at:?} cannot take another strand")))?;
        self.mosaic.set(at.0, at.1, g);
        Ok(())
    }

    fn check_empty(&self, b: BarnTile) -> Result<Side, Error> {
        if !self.grid.is_barn(b) {
            return Err(Error::Domain(format!("({}, {}) is not a barn tile", b.row, b.col)));
        }
        if self.grid.is_occupied(b) {
            return Err(Error::OccupiedBarnTile(b.row, b.col));
        }
        Ok(self.grid.side(b).expect("soil tiles are always occupied"))
    }

    fn checked<F>(&mut self, tb_change: i64, rot_change: &[i64], f: F) -> Result<(), Error>
    where
        F: FnOnce(&mut Construction) -> Result<(), Error>,
    {
        let before = invariants(&self.mosaic)?;
        let mut next = self.clone();
        f(&mut next)?;
        if !next.mosaic.is_suitably_connected() {
            return Err(violated("move broke suitable connectivity".into()));
        }
        let after = invariants(&next.mosaic)?;
        if after.components != 1 {
            return Err(violated("move split the knot".into()));
        }
        let (dtb, drot) = (after.tb - before.tb, after.rot.abs() - before.rot.abs());
        if dtb != tb_change || !rot_change.contains(&drot) {
            return Err(violated(format!("move changed (tb, |rot|) by ({dtb}, {drot})")));
        }
        *self = next;
        Ok(())
    }

    pub fn invariants(&self) -> Result<LegendrianInvariants, Error> {
        invariants(&self.mosaic)
    }

    pub fn kraken(&mut self, b: BarnTile) -> Result<(), Error> {
        let side = self.check_empty(b)?;
        self.checked(-2, &[0], |c| {
            let (support, fresh, from) = match side {
                Side::Above => (b.bottom(), b.top(), Tile::T1),
                Side::Below => (b.top(), b.bottom(), Tile::T3),
            };
            c.expect_tile(support, from, "supporting")?;
            c.expect_tile(fresh, Tile::T0, "outer")?;
            c.mosaic.set(support.0, support.1, Tile::T8);
            c.mosaic.set(fresh.0, fresh.1, from);
            c.gain_at(b.left(), S_SE)?;
            c.gain_at(b.right(), S_NW)?;
            c.grid.occupied.insert(b);
            Ok(())
        })
    }

    /// Fish move on `b` and the barn tile to its right.
    pub fn fish(&mut self, b: BarnTile, variant: FishVariant) -> Result<(), Error> {
        let b2 = b.next();
        let side = self.check_empty(b)?;
        if self.check_empty(b2)? != side {
            return Err(violated("fish pair straddles the soil".into()));
        }
        self.checked(-1, &[-1, 1], |c| {
            let (supports, outers, from) = match side {
                Side::Above => ([b.bottom(), b2.bottom()], [b.top(), b2.top()], Tile::T1),
                Side::Below => ([b.top(), b2.top()], [b.bottom(), b2.bottom()], Tile::T3),
            };
            let middle = b.right();
            for s in supports {
                c.expect_tile(s, from, "supporting")?;
            }
            for o in outers {
                c.expect_tile(o, Tile::T0, "outer")?;
                c.mosaic.set(o.0, o.1, from);
            }
            c.expect_tile(middle, Tile::T0, "middle")?;
            c.mosaic.set(middle.0, middle.1, Tile::T10);
            let (x, y) = match variant {
                FishVariant::A => (Tile::T10, Tile::T7),
                FishVariant::B => (Tile::T7, Tile::T10),
            };
            c.mosaic.set(supports[0].0, supports[0].1, x);
            c.mosaic.set(supports[1].0, supports[1].1, y);
            c.gain_at(b.left(), S_SE)?;
            c.gain_at(b2.right(), S_NW)?;
            c.grid.occupied.insert(b);
            c.grid.occupied.insert(b2);
            Ok(())
        })
    }

    pub fn apply(&mut self, p: &Placement) -> Result<(), Error> {
        match p.kind {
            MoveKind::Kraken => self.kraken(p.barn),
            MoveKind::Fish => self.fish(p.barn, p.variant.unwrap_or(FishVariant::A)),
        }
    }
}

pub fn apply_kraken(c: &Construction, b: BarnTile) -> Result<Construction, Error> {
    let mut next = c.clone();
    next.kraken(b)?;
    Ok(next)
}

pub fn apply_fish(c: &Construction, b: BarnTile, variant: FishVariant) -> Result<Construction, Error> {
    let mut next = c.clone();
    next.fish(b, variant)?;
    Ok(next)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MovePlan {
    pub n: usize,
    /// The unknot upper bound for (tb, rot); `n` exceeds it only when the
    /// moves do not fit there.
    pub bound: usize,
    /// Number of `T7` tiles in the soil.
    pub t7_count: usize,
    pub k: usize,
    pub f: usize,
    pub placements: Vec<Placement>,
}

impl MovePlan {
    /// Rebuilds the mosaic from the soil setup.
    pub fn replay(&self) -> Result<Construction, Error> {
        let mut c = soil_setup(self.n, self.t7_count)?;
        for p in &self.placements {
            c.apply(p)?;
        }
        Ok(c)
    }
}

/// Soil `T7` count, Kraken count and fish count for an unknot on an n-mosaic,
/// using as many soil crossings as tb allows.
pub fn move_counts(n: usize, tb: i64, rot: i64) -> Result<(usize, usize, usize), Error> {
    let counts = move_count_options(n, tb, rot)?;
    let cap = barn_capacity(n);
    counts.into_iter().next().ok_or_else(|| violated(format!("no soil setup of size {n} yields ({tb}, {rot})"))).and_then(
        |(t7, k, f)| {
            if 2 * f + k > cap {
                Err(violated(format!("plan needs 2f+k = {} barn tiles but n={n} has {cap}", 2 * f + k)))
            } else {
                Ok((t7, k, f))
            }
        },
    )
}

/// Every (T7 count, Kraken count, fish count) realizing (tb, |rot|) on an
/// n-mosaic, most soil crossings first.
///
/// The soil needs an odd number of crossings for rot ≠ 0 and an even number
/// for rot = 0; each two crossings traded for T7 tiles cost one more Kraken.
pub fn move_count_options(n: usize, tb: i64, rot: i64) -> Result<Vec<(usize, usize, usize)>, Error> {
    if !is_unknot_pair(InvariantPair { tb, rot }) {
        return Err(Error::NotAnUnknotPair { tb, rot });
    }
    if n < 3 {
        return Err(Error::Domain(format!("n={n} is too small for a soil setup")));
    }
    let d = soil_cells(n) as i64;
    let r = rot.abs();
    let (f, budget) = if r != 0 { (r - 1, -tb - r) } else { (0, -tb - 1) };
    // budget = t + 2k with t the soil crossing count; budget and t share parity
    let top = if r != 0 { d } else { d - 1 };
    let mut out = Vec::new();
    let mut t = top.min(budget);
    while t >= 0 {
        out.push(((d - t) as usize, ((budget - t) / 2) as usize, f as usize));
        t -= 2;
    }
    Ok(out)
}

/// Whether fish moves are placed before any Kraken, or each row's leftover
/// barn tiles are filled with Krakens before moving outward so that the next
/// row stays supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Strategy {
    FishFirst,
    RowFill,
}

/// Tries a fish on `b`, keeping it only if it raises |rot|.
fn try_fish(c: &mut Construction, b: BarnTile, out: &mut Vec<Placement>) -> Result<bool, Error> {
    let before = c.invariants()?.rot.abs();
    for v in [FishVariant::A, FishVariant::B] {
        if let Ok(next) = apply_fish(c, b, v) {
            if next.invariants()?.rot.abs() == before + 1 {
                *c = next;
                out.push(Placement { barn: b, kind: MoveKind::Fish, variant: Some(v) });
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Places `f` fish and up to `k` Krakens row by row outward from the soil.
/// Which adjacent pairs take a fish that raises |rot| depends on the
/// direction of the strand through their supporting tiles, so pairs are
/// chosen greedily rather than by a fixed parity.
fn place_moves(
    c: &mut Construction,
    f: usize,
    k: usize,
    strategy: Strategy,
    out: &mut Vec<Placement>,
) -> Result<(usize, usize), Error> {
    let order = c.grid.placement_order();
    let (mut fish, mut krakens) = (0, 0);
    let mut at = 0;
    while at < order.len() && fish < f {
        let d = order[at].diagonal();
        let end = order[at..].iter().position(|b| b.diagonal() != d).map_or(order.len(), |p| at + p);
        let row = &order[at..end];
        let mut j = 0;
        while j + 1 < row.len() && fish < f {
            if try_fish(c, row[j], out)? {
                fish += 1;
                j += 2;
            } else {
                j += 1;
            }
        }
        if strategy == Strategy::RowFill && fish < f {
            for &b in row {
                if krakens < k && !c.grid.is_occupied(b) && c.kraken(b).is_ok() {
                    out.push(Placement { barn: b, kind: MoveKind::Kraken, variant: None });
                    krakens += 1;
                }
            }
        }
        at = end;
    }
    krakens += place_krakens(c, k - krakens, out);
    Ok((fish, krakens))
}

/// Places up to `k` Krakens on supported empty barn tiles, nearest rows first.
fn place_krakens(c: &mut Construction, k: usize, out: &mut Vec<Placement>) -> usize {
    let order = c.grid.placement_order();
    let mut placed = 0;
    let mut progress = true;
    while placed < k && progress {
        progress = false;
        for &b in &order {
            if placed == k {
                break;
            }
            if !c.grid.is_occupied(b) && c.kraken(b).is_ok() {
                out.push(Placement { barn: b, kind: MoveKind::Kraken, variant: None });
                placed += 1;
                progress = true;
            }
        }
    }
    placed
}

/// Builds the unknot on an n-mosaic, if the moves fit.
pub fn build_unknot_on(n: usize, tb: i64, rot: i64) -> Result<(Construction, MovePlan), Error> {
    let bound = unknot_upper_bound(InvariantPair { tb, rot })? as usize;
    let cap = barn_capacity(n);
    let mut last = violated(format!("no soil setup of size {n} yields ({tb}, {rot})"));
    for (t7_count, k, f) in move_count_options(n, tb, rot)? {
        if 2 * f + k > cap {
            last = violated(format!("plan needs 2f+k = {} barn tiles but n={n} has {cap}", 2 * f + k));
            continue;
        }
        for strategy in [Strategy::FishFirst, Strategy::RowFill] {
            let mut c = soil_setup(n, t7_count)?;
            let mut placements = Vec::new();
            let (fish, krakens) = place_moves(&mut c, f, k, strategy, &mut placements)?;
            if fish < f {
                last = violated(format!("only {fish} of {f} fish moves fit on n={n}"));
                continue;
            }
            if krakens < k {
                last = violated(format!("only {krakens} of {k} Kraken moves fit on n={n}"));
                continue;
            }
            let got = c.invariants()?;
            if got.tb != tb || got.rot.abs() != rot.abs() {
                return Err(violated(format!("built ({}, {}) instead of ({tb}, {rot})", got.tb, got.rot)));
            }
            return Ok((c, MovePlan { n, bound, t7_count, k, f, placements }));
        }
    }
    Err(last)
}

/// Mosaic for the Legendrian unknot with the given invariants, with the plan used.
///
/// The size is the unknot upper bound whenever the moves fit there. Near the
/// outer boundary of the mountain range with large |rot|, the f = |rot| − 1
/// fish need more barn tiles than the bound's size offers, and on even sizes
/// only every other pairing below the soil raises |rot|. The next size that
/// fits is used then.
pub fn build_unknot_plan(tb: i64, rot: i64) -> Result<(Construction, MovePlan), Error> {
    let bound = unknot_upper_bound(InvariantPair { tb, rot })? as usize;
    let mut last = None;
    for n in bound..=2 * bound {
        match build_unknot_on(n, tb, rot) {
            Ok(built) => return Ok(built),
            Err(e @ Error::MoveHypothesisViolated(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one size tried"))
}

pub fn build_unknot(tb: i64, rot: i64) -> Result<Mosaic, Error> {
    build_unknot_plan(tb, rot).map(|(c, _)| c.mosaic)
}
