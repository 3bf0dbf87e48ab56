//! Backtracking generation of suitably connected mosaics.
//!
//! Cells are filled row-major. A tile is admissible when its N and W connection
//! points match the frontier (the S bit of the cell above, the E bit of the cell
//! to the left) and it puts nothing on the outer boundary, so every completed
//! grid is suitably connected. Tiles are tried in ascending digit order, which
//! makes the output lexicographic in the encoding.
//!
//! Work is split by fixing a prefix of cells; each prefix is an independent
//! unit, which is what the parallel drivers and the shard writer distribute.

pub mod store;

use rayon::prelude::*;

use crate::error::Error;
use crate::invariants::trace_cells;
use crate::tile::{Edge, Mosaic, Tile};

/// Default cap on rows×cols for enumeration.
pub const DEFAULT_MAX_CELLS: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    AllLinks,
    KnotsOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationRequest {
    pub rows: usize,
    pub cols: usize,
    pub filter: Filter,
    /// (worker index, worker total)
    pub partition: Option<(usize, usize)>,
}

impl EnumerationRequest {
    pub fn new(rows: usize, cols: usize, filter: Filter) -> EnumerationRequest {
        EnumerationRequest { rows, cols, filter, partition: None }
    }

    pub fn square(n: usize, filter: Filter) -> EnumerationRequest {
        Self::new(n, n, filter)
    }

    pub fn with_partition(self, worker: usize, total: usize) -> EnumerationRequest {
        EnumerationRequest { partition: Some((worker, total)), ..self }
    }
}

/// Admissible tiles per (N bit, W bit, last column, last row), ascending.
struct Candidates {
    lists: [Vec<Tile>; 16],
}

impl Candidates {
    fn new() -> Candidates {
        let lists = std::array::from_fn(|key: usize| {
            let (n, w, last_col, last_row) = (key & 1 != 0, key & 2 != 0, key & 4 != 0, key & 8 != 0);
            Tile::ALL
                .into_iter()
                .filter(|t| {
                    let m = t.mask();
                    (m & Edge::N.bit() != 0) == n
                        && (m & Edge::W.bit() != 0) == w
                        && !(last_col && m & Edge::E.bit() != 0)
                        && !(last_row && m & Edge::S.bit() != 0)
                })
                .collect()
        });
        Candidates { lists }
    }

    fn get(&self, n: bool, w: bool, last_col: bool, last_row: bool) -> &[Tile] {
        &self.lists[n as usize | (w as usize) << 1 | (last_col as usize) << 2 | (last_row as usize) << 3]
    }
}

struct Search<'a> {
    rows: usize,
    cols: usize,
    cand: &'a Candidates,
    cells: Vec<Tile>,
}

impl<'a> Search<'a> {
    fn options(&self, idx: usize) -> &'a [Tile] {
        let (r, c) = (idx / self.cols, idx % self.cols);
        let n = r > 0 && self.cells[idx - self.cols].mask() & Edge::S.bit() != 0;
        let w = c > 0 && self.cells[idx - 1].mask() & Edge::E.bit() != 0;
        self.cand.get(n, w, c + 1 == self.cols, r + 1 == self.rows)
    }

    fn run<F: FnMut(&[Tile])>(&mut self, idx: usize, f: &mut F) {
        if idx == self.cells.len() {
            f(&self.cells);
            return;
        }
        for &t in self.options(idx) {
            self.cells[idx] = t;
            self.run(idx + 1, f);
        }
    }
}

fn check_budget(rows: usize, cols: usize, max_cells: usize) -> Result<(), Error> {
    if rows == 0 || cols == 0 {
        return Err(Error::Domain("dimensions must be positive".into()));
    }
    if rows.saturating_mul(cols) > max_cells {
        return Err(Error::ResourceLimit(format!("{rows}x{cols} exceeds the enumeration budget of {max_cells} cells")));
    }
    Ok(())
}

/// All admissible assignments of the first `depth` cells, in lexicographic order.
pub fn prefixes(rows: usize, cols: usize, depth: usize) -> Vec<Vec<Tile>> {
    let cand = Candidates::new();
    let depth = depth.min(rows * cols);
    let mut out = Vec::new();
    let mut s = Search { rows, cols, cand: &cand, cells: vec![Tile::T0; rows * cols] };
    fn rec(s: &mut Search, idx: usize, depth: usize, out: &mut Vec<Vec<Tile>>) {
        if idx == depth {
            out.push(s.cells[..depth].to_vec());
            return;
        }
        for &t in s.options(idx) {
            s.cells[idx] = t;
            rec(s, idx + 1, depth, out);
        }
    }
    rec(&mut s, 0, depth, &mut out);
    out
}

/// Smallest prefix depth giving at least `4·workers` prefixes.
pub fn prefix_depth(rows: usize, cols: usize, workers: usize) -> usize {
    let want = 4 * workers.max(1);
    let mut depth = 0;
    while depth < rows * cols && prefixes(rows, cols, depth).len() < want {
        depth += 1;
    }
    depth
}

/// Visits every admissible completion of `prefix`, in lexicographic order.
pub fn for_each_with_prefix<F: FnMut(&[Tile])>(rows: usize, cols: usize, prefix: &[Tile], filter: Filter, mut f: F) {
    let cand = Candidates::new();
    let mut s = Search { rows, cols, cand: &cand, cells: vec![Tile::T0; rows * cols] };
    s.cells[..prefix.len()].copy_from_slice(prefix);
    let mut visit = |cells: &[Tile]| {
        if filter == Filter::AllLinks || is_knot_cells(rows, cols, cells) {
            f(cells)
        }
    };
    s.run(prefix.len(), &mut visit);
}

/// Single-component and non-blank; assumes a suitably connected grid.
pub(crate) fn is_knot_cells(rows: usize, cols: usize, cells: &[Tile]) -> bool {
    let total: usize = cells.iter().map(|t| t.strands().len()).sum();
    let Some(start) = cells.iter().position(|t| *t != Tile::T0) else { return false };
    let mut cell = start;
    let mut to = cells[start].strands()[0].b;
    let mut len = 0;
    loop {
        len += 1;
        let (dr, dc) = to.offset();
        let next = ((cell / cols) as isize + dr) as usize * cols + ((cell % cols) as isize + dc) as usize;
        let entry = to.opposite();
        let ns = cells[next].strand_at(entry).expect("suitably connected");
        cell = next;
        to = cells[next].strands()[ns].other(entry);
        if cell == start && ns == 0 {
            break;
        }
        debug_assert!(len <= total && rows > 0);
    }
    len == total
}

/// Knot mosaic: suitably connected, non-blank, one component.
pub fn is_knot(m: &Mosaic) -> Result<bool, Error> {
    let comps = crate::invariants::trace(m)?;
    Ok(comps.len() == 1)
}

/// Streams the mosaics of one request (or of one worker's share of it).
pub fn enumerate<F: FnMut(&Mosaic)>(req: &EnumerationRequest, max_cells: usize, mut f: F) -> Result<u64, Error> {
    check_budget(req.rows, req.cols, max_cells)?;
    let (worker, total) = req.partition.unwrap_or((0, 1));
    if total == 0 || worker >= total {
        return Err(Error::Domain(format!("invalid partition {worker}/{total}")));
    }
    let depth = if total == 1 { 0 } else { prefix_depth(req.rows, req.cols, total) };
    let mut n = 0u64;
    for (i, p) in prefixes(req.rows, req.cols, depth).iter().enumerate() {
        if i % total != worker {
            continue;
        }
        for_each_with_prefix(req.rows, req.cols, p, req.filter, |cells| {
            n += 1;
            let m = Mosaic::from_cells(req.rows, req.cols, cells.to_vec()).expect("dimensions fixed");
            f(&m);
        });
    }
    Ok(n)
}

/// All mosaics of a request, in order.
pub fn collect(req: &EnumerationRequest, max_cells: usize) -> Result<Vec<Mosaic>, Error> {
    let mut out = Vec::new();
    enumerate(req, max_cells, |m| out.push(m.clone()))?;
    Ok(out)
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, Error> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::ResourceLimit(format!("thread pool: {e}")))
}

/// Parallel fold over all mosaics. Each prefix gets its own accumulator, and
/// accumulators are merged in prefix order.
pub fn par_fold<A, I, V, M>(
    rows: usize,
    cols: usize,
    filter: Filter,
    workers: usize,
    max_cells: usize,
    init: I,
    visit: V,
    merge: M,
) -> Result<A, Error>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[Tile]) + Sync,
    M: Fn(A, A) -> A + Sync,
{
    check_budget(rows, cols, max_cells)?;
    let depth = prefix_depth(rows, cols, workers.max(1) * 4);
    let pre = prefixes(rows, cols, depth);
    let pool = pool(workers)?;
    Ok(pool.install(|| {
        pre.par_iter()
            .map(|p| {
                let mut acc = init();
                for_each_with_prefix(rows, cols, p, filter, |cells| visit(&mut acc, cells));
                acc
            })
            .reduce(&init, &merge)
    }))
}

/// Number of mosaics matching the filter.
pub fn count_mosaics(rows: usize, cols: usize, filter: Filter, workers: usize, max_cells: usize) -> Result<u64, Error> {
    par_fold(rows, cols, filter, workers, max_cells, || 0u64, |n, _| *n += 1, |a, b| a + b)
}

/// Number of components of a suitably connected cell grid.
pub fn components_of_cells(rows: usize, cols: usize, cells: &[Tile]) -> usize {
    trace_cells(rows, cols, cells).len()
}
