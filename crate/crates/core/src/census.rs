//! Minimal-mosaic censuses of Legendrian knots.
//!
//! Every knot mosaic of each size is classified by smooth type and classical
//! invariants. Both orientations of a knot are recorded, so a triple
//! (type, tb, rot) and its partner (type, tb, −rot) are counted separately.
//! Tallies are kept per enumeration prefix and merged with a commutative,
//! associative merge; with an output directory each prefix tally is written to
//! its own shard so that an interrupted run can resume.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::bounds::{is_unknot_pair, lower_bounds, InvariantPair};
use crate::enumeration::{for_each_with_prefix, prefix_depth, prefixes, Filter};
use crate::error::Error;
use crate::invariants::invariants;
use crate::tile::{Mosaic, MosaicEncoding, Tile};
use crate::topology::{to_planar_diagram, HomflyEngine, KnotType, Poly};

/// Largest size run without an explicit budget.
pub const DEFAULT_MAX_SIZE: usize = 5;

/// Memo entries kept per worker before the HOMFLY memo is cleared.
const MEMO_LIMIT: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triple {
    #[serde(rename = "type")]
    pub knot_type: KnotType,
    pub tb: i64,
    pub rot: i64,
}

/// Mosaic count and lexicographically least witness of one triple at one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    pub count: u64,
    pub witness: String,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.count += other.count;
        if other.witness < self.witness {
            self.witness = other.witness;
        }
    }
}

/// Everything found among the knot mosaics of one size (or one part of them).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SizeTally {
    pub knots: u64,
    pub triples: BTreeMap<Triple, Tally>,
}

impl SizeTally {
    fn record(&mut self, t: Triple, digits: &str) {
        match self.triples.get_mut(&t) {
            Some(tally) => {
                tally.count += 1;
                if digits < tally.witness.as_str() {
                    tally.witness = digits.to_string();
                }
            }
            None => {
                self.triples.insert(t, Tally { count: 1, witness: digits.to_string() });
            }
        }
    }

    pub fn merge(mut self, other: SizeTally) -> SizeTally {
        self.knots += other.knots;
        for (t, tally) in other.triples {
            match self.triples.get_mut(&t) {
                Some(mine) => mine.merge(tally),
                None => {
                    self.triples.insert(t, tally);
                }
            }
        }
        self
    }
}

#[derive(Serialize, Deserialize)]
struct ShardRecord {
    #[serde(rename = "type")]
    knot_type: String,
    tb: i64,
    rot: i64,
    count: u64,
    witness: String,
}

#[derive(Serialize, Deserialize)]
struct Shard {
    knots: u64,
    triples: Vec<ShardRecord>,
}

impl From<&SizeTally> for Shard {
    fn from(t: &SizeTally) -> Shard {
        let triples = t
            .triples
            .iter()
            .map(|(k, v)| ShardRecord {
                knot_type: k.knot_type.name().to_string(),
                tb: k.tb,
                rot: k.rot,
                count: v.count,
                witness: v.witness.clone(),
            })
            .collect();
        Shard { knots: t.knots, triples }
    }
}

impl TryFrom<Shard> for SizeTally {
    type Error = Error;

    fn try_from(s: Shard) -> Result<SizeTally, Error> {
        let mut out = SizeTally { knots: s.knots, triples: BTreeMap::new() };
        for r in s.triples {
            let knot_type = r.knot_type.parse()?;
            out.triples.insert(Triple { knot_type, tb: r.tb, rot: r.rot }, Tally { count: r.count, witness: r.witness });
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    #[serde(rename = "type")]
    pub knot_type: KnotType,
    pub tb: i64,
    pub rot: i64,
    pub min_size: usize,
    #[serde(serialize_with = "digits_only")]
    pub witness: MosaicEncoding,
    pub count_at_min: u64,
}

fn digits_only<S: Serializer>(e: &MosaicEncoding, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&e.digits)
}

impl CensusEntry {
    pub fn triple(&self) -> Triple {
        Triple { knot_type: self.knot_type, tb: self.tb, rot: self.rot }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeSummary {
    pub n: usize,
    pub knot_mosaics: u64,
    /// Triples with signed rot, both signs counted.
    pub distinct_triples: usize,
    /// Triples with rot replaced by |rot|.
    pub distinct_unsigned: usize,
    pub max_tb: i64,
    pub min_tb: i64,
    pub max_abs_rot: i64,
    pub types: Vec<KnotType>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub sizes: Vec<SizeSummary>,
}

impl CensusSummary {
    pub fn size(&self, n: usize) -> Option<&SizeSummary> {
        self.sizes.iter().find(|s| s.n == n)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub max_size: usize,
    pub entries: Vec<CensusEntry>,
    pub summary: CensusSummary,
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub max_size: usize,
    /// Largest size allowed without error.
    pub budget: usize,
    pub workers: usize,
    pub max_crossings: usize,
    /// Shard directory; tallies are kept in memory only when absent.
    pub out_dir: Option<PathBuf>,
    /// Reuse finished shards found under `out_dir`.
    pub resume: bool,
}

impl CensusOptions {
    pub fn new(max_size: usize) -> CensusOptions {
        CensusOptions {
            max_size,
            budget: DEFAULT_MAX_SIZE,
            workers: rayon::current_num_threads(),
            max_crossings: crate::topology::homfly::DEFAULT_MAX_CROSSINGS,
            out_dir: None,
            resume: false,
        }
    }
}

thread_local! {
    static ENGINE: RefCell<HomflyEngine> = RefCell::new(HomflyEngine::new());
    static TYPES: RefCell<HashMap<Poly, KnotType>> = RefCell::new(HashMap::new());
}

/// Smooth type of a knot mosaic. Diagrams with fewer than three crossings are
/// unknots and skip the polynomial.
fn knot_type(m: &Mosaic, max_crossings: usize) -> Result<KnotType, Error> {
    if m.count(Tile::T10) < 3 {
        return Ok(KnotType::Unknot);
    }
    let pd = to_planar_diagram(m)?;
    let p = ENGINE.with(|e| {
        let mut e = e.borrow_mut();
        if e.memo_len() > MEMO_LIMIT {
            e.clear_memo();
        }
        e.max_crossings = Some(max_crossings);
        e.evaluate(&pd)
    })?;
    Ok(TYPES.with(|t| *t.borrow_mut().entry(p).or_insert_with_key(KnotType::from_homfly)))
}

fn tally_prefix(n: usize, prefix: &[Tile], max_crossings: usize) -> Result<SizeTally, Error> {
    let mut acc = SizeTally::default();
    let mut err = None;
    for_each_with_prefix(n, n, prefix, Filter::KnotsOnly, |cells| {
        if err.is_some() {
            return;
        }
        let m = Mosaic::from_cells(n, n, cells.to_vec()).expect("fixed dimensions");
        let classified = invariants(&m).and_then(|inv| Ok((inv, knot_type(&m, max_crossings)?)));
        match classified {
            Ok((inv, kt)) => {
                let digits = m.digits();
                acc.knots += 1;
                acc.record(Triple { knot_type: kt, tb: inv.tb, rot: inv.rot }, &digits);
                if inv.rot != 0 {
                    acc.record(Triple { knot_type: kt, tb: inv.tb, rot: -inv.rot }, &digits);
                }
            }
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, Error> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::ResourceLimit(format!("thread pool: {e}")))
}

fn write_atomic(path: &Path, body: &str) -> Result<(), Error> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, body)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Tallies every knot mosaic of size n.
pub fn tally_size(n: usize, workers: usize, max_crossings: usize) -> Result<SizeTally, Error> {
    let depth = prefix_depth(n, n, workers.max(1) * 4);
    let pre = prefixes(n, n, depth);
    pool(workers)?.install(|| {
        pre.par_iter()
            .map(|p| tally_prefix(n, p, max_crossings))
            .try_reduce(SizeTally::default, |a, b| Ok(a.merge(b)))
    })
}

/// As [`tally_size`], persisting one shard per prefix under `dir`.
pub fn tally_size_sharded(
    n: usize,
    workers: usize,
    max_crossings: usize,
    dir: &Path,
    resume: bool,
) -> Result<SizeTally, Error> {
    let depth_file = dir.join("depth");
    if !resume && dir.exists() {
        fs::remove_dir_all(dir)?;
    }
    fs::create_dir_all(dir)?;
    let depth = match fs::read_to_string(&depth_file) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Io(format!("bad depth file {}", depth_file.display())))?,
        Err(_) => {
            let d = prefix_depth(n, n, workers.max(1) * 4);
            write_atomic(&depth_file, &format!("{d}\n"))?;
            d
        }
    };
    let pre = prefixes(n, n, depth);
    pool(workers)?.install(|| {
        pre.par_iter()
            .enumerate()
            .map(|(i, p)| {
                let path = dir.join(format!("part-{i:06}.json"));
                if let Ok(text) = fs::read_to_string(&path) {
                    if let Ok(shard) = serde_json::from_str::<Shard>(&text) {
                        return SizeTally::try_from(shard);
                    }
                }
                let t = tally_prefix(n, p, max_crossings)?;
                let body = serde_json::to_string(&Shard::from(&t)).expect("serializable");
                write_atomic(&path, &body)?;
                Ok(t)
            })
            .try_reduce(SizeTally::default, |a, b| Ok(a.merge(b)))
    })
}

/// Census through `opts.max_size`.
pub fn run_census(opts: &CensusOptions) -> Result<Census, Error> {
    if opts.max_size > opts.budget {
        return Err(Error::ResourceLimit(format!(
            "census size {} exceeds the configured budget of {}",
            opts.max_size, opts.budget
        )));
    }
    if opts.max_size < 1 {
        return Err(Error::Domain("census size must be at least 1".into()));
    }
    let mut tallies = Vec::new();
    for n in 1..=opts.max_size {
        let t = match &opts.out_dir {
            Some(dir) => {
                tally_size_sharded(n, opts.workers, opts.max_crossings, &dir.join(format!("n{n}")), opts.resume)?
            }
            None => tally_size(n, opts.workers, opts.max_crossings)?,
        };
        tallies.push((n, t));
    }
    Ok(census_from_tallies(&tallies))
}

/// Aggregates per-size tallies, which must cover sizes 1 through the largest.
pub fn census_from_tallies(tallies: &[(usize, SizeTally)]) -> Census {
    let mut sorted: Vec<&(usize, SizeTally)> = tallies.iter().collect();
    sorted.sort_by_key(|(n, _)| *n);
    let mut first: BTreeMap<Triple, CensusEntry> = BTreeMap::new();
    let mut sizes = Vec::new();
    for (n, t) in sorted {
        for (triple, tally) in &t.triples {
            first.entry(*triple).or_insert_with(|| CensusEntry {
                knot_type: triple.knot_type,
                tb: triple.tb,
                rot: triple.rot,
                min_size: *n,
                witness: MosaicEncoding::new(*n, *n, tally.witness.clone()),
                count_at_min: tally.count,
            });
        }
        let types: BTreeSet<KnotType> = t.triples.keys().map(|k| k.knot_type).collect();
        let unsigned: BTreeSet<(KnotType, i64, i64)> =
            t.triples.keys().map(|k| (k.knot_type, k.tb, k.rot.abs())).collect();
        sizes.push(SizeSummary {
            n: *n,
            knot_mosaics: t.knots,
            distinct_triples: t.triples.len(),
            distinct_unsigned: unsigned.len(),
            max_tb: t.triples.keys().map(|k| k.tb).max().unwrap_or(0),
            min_tb: t.triples.keys().map(|k| k.tb).min().unwrap_or(0),
            max_abs_rot: t.triples.keys().map(|k| k.rot.abs()).max().unwrap_or(0),
            types: types.into_iter().collect(),
        });
    }
    let mut entries: Vec<CensusEntry> = first.into_values().collect();
    entries.sort_by(|a, b| a.knot_type.cmp(&b.knot_type).then(b.tb.cmp(&a.tb)).then(a.rot.cmp(&b.rot)));
    let max_size = sizes.last().map_or(0, |s| s.n);
    Census { max_size, entries, summary: CensusSummary { sizes } }
}

/// A stabilization (tb, rot) → (tb − 1, rot ± 1) whose target needs a
/// strictly smaller mosaic than its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Anomaly {
    #[serde(rename = "type")]
    pub knot_type: KnotType,
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub from_size: usize,
    pub to_size: usize,
}

pub fn stabilization_anomalies(entries: &[CensusEntry]) -> Vec<Anomaly> {
    let by: HashMap<Triple, usize> = entries.iter().map(|e| (e.triple(), e.min_size)).collect();
    let mut out = Vec::new();
    for e in entries {
        for d in [1, -1] {
            let to = Triple { knot_type: e.knot_type, tb: e.tb - 1, rot: e.rot + d };
            if let Some(&s) = by.get(&to) {
                if s < e.min_size {
                    out.push(Anomaly {
                        knot_type: e.knot_type,
                        from: (e.tb, e.rot),
                        to: (to.tb, to.rot),
                        from_size: e.min_size,
                        to_size: s,
                    });
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RangeCell {
    /// Known minimal mosaic size.
    Exact(usize),
    /// The knot exists but needs a mosaic at least this large.
    AtLeast(i64),
    Empty,
}

impl RangeCell {
    fn text(&self) -> String {
        match self {
            RangeCell::Exact(n) => n.to_string(),
            RangeCell::AtLeast(n) => format!(">={n}"),
            RangeCell::Empty => String::new(),
        }
    }
}

/// Mountain range of one type folded onto rot ≥ 0: rows are tb descending,
/// column j is |rot| = j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MountainRange {
    #[serde(rename = "type")]
    pub knot_type: KnotType,
    pub tbs: Vec<i64>,
    pub max_rot: i64,
    pub cells: Vec<Vec<RangeCell>>,
}

impl MountainRange {
    pub fn is_empty(&self) -> bool {
        self.tbs.is_empty()
    }

    pub fn cell(&self, tb: i64, rot: i64) -> Option<RangeCell> {
        let i = self.tbs.iter().position(|&t| t == tb)?;
        self.cells[i].get(usize::try_from(rot.abs()).ok()?).copied()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("tb");
        for r in 0..=self.max_rot {
            let _ = write!(s, ",{r}");
        }
        s.push('\n');
        for (tb, row) in self.tbs.iter().zip(&self.cells) {
            let _ = write!(s, "{tb}");
            for c in row {
                let _ = write!(s, ",{}", c.text());
            }
            s.push('\n');
        }
        s
    }
}

/// Mountain range of `knot_type` from a census complete through `complete_through`.
///
/// A cell with no witness is marked with a lower bound when the knot is known
/// to exist there: for the unknot from the pair conditions, otherwise by
/// stabilizing a found representative.
pub fn emit_mountain_range(entries: &[CensusEntry], knot_type: KnotType, complete_through: usize) -> MountainRange {
    let found: Vec<&CensusEntry> = entries.iter().filter(|e| e.knot_type == knot_type).collect();
    if found.is_empty() {
        return MountainRange { knot_type, tbs: Vec::new(), max_rot: 0, cells: Vec::new() };
    }
    let max_tb = found.iter().map(|e| e.tb).max().unwrap_or(0);
    let min_tb = found.iter().map(|e| e.tb).min().unwrap_or(0);
    let max_rot = found.iter().map(|e| e.rot.abs()).max().unwrap_or(0);
    let mut best: HashMap<(i64, i64), usize> = HashMap::new();
    for e in &found {
        let v = best.entry((e.tb, e.rot.abs())).or_insert(e.min_size);
        *v = (*v).min(e.min_size);
    }
    let exists = |tb: i64, r: i64| {
        if knot_type == KnotType::Unknot {
            return is_unknot_pair(InvariantPair { tb, rot: r });
        }
        found.iter().any(|e| {
            let s = e.tb - tb;
            s >= 0 && (r - e.rot.abs()).abs() <= s && (s + r - e.rot.abs()) % 2 == 0
        })
    };
    let tbs: Vec<i64> = (min_tb..=max_tb).rev().collect();
    let cells = tbs
        .iter()
        .map(|&tb| {
            (0..=max_rot)
                .map(|r| match best.get(&(tb, r)) {
                    Some(&n) => RangeCell::Exact(n),
                    None if exists(tb, r) => {
                        let lower = lower_bounds(InvariantPair { tb, rot: r }).best_lower;
                        RangeCell::AtLeast(lower.max(complete_through as i64 + 1))
                    }
                    None => RangeCell::Empty,
                })
                .collect()
        })
        .collect();
    MountainRange { knot_type, tbs, max_rot, cells }
}

/// File-name form of a type name: `m(3_1)#m(3_1)` becomes `m3_1-m3_1`.
pub fn type_slug(t: KnotType) -> String {
    t.name().replace(['(', ')'], "").replace('#', "-")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Domain(format!("unknown format {other:?}"))),
        }
    }
}

fn entries_csv(entries: &[CensusEntry]) -> String {
    let mut s = String::from("type,tb,rot,min_size,witness,count_at_min\n");
    for e in entries {
        let _ = writeln!(s, "{},{},{},{},{},{}", e.knot_type, e.tb, e.rot, e.min_size, e.witness.digits, e.count_at_min);
    }
    s
}

/// Writes the entries (`census.json` or `census.csv`), `summary.json` and one
/// `range_<type>.csv` per type. Returns the paths written.
pub fn write_outputs(census: &Census, dir: &Path, format: OutputFormat) -> Result<Vec<PathBuf>, Error> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let entries = match format {
        OutputFormat::Json => {
            ("census.json", serde_json::to_string_pretty(&census.entries).expect("serializable") + "\n")
        }
        OutputFormat::Csv => ("census.csv", entries_csv(&census.entries)),
    };
    let path = dir.join(entries.0);
    write_atomic(&path, &entries.1)?;
    written.push(path);
    let path = dir.join("summary.json");
    write_atomic(&path, &(serde_json::to_string_pretty(&census.summary).expect("serializable") + "\n"))?;
    written.push(path);
    let types: BTreeSet<KnotType> = census.entries.iter().map(|e| e.knot_type).collect();
    for t in types {
        let range = emit_mountain_range(&census.entries, t, census.max_size);
        let path = dir.join(format!("range_{}.csv", type_slug(t)));
        write_atomic(&path, &range.to_csv())?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tile::{decode, parse_mosaic};
    use crate::topology::identify;

    fn census(max: usize) -> Census {
        run_census(&CensusOptions { workers: 2, ..CensusOptions::new(max) }).unwrap()
    }

    #[test]
    fn size_two() {
        let c = census(2);
        assert_eq!(c.entries.len(), 1);
        let e = &c.entries[0];
        assert_eq!((e.knot_type, e.tb, e.rot, e.min_size), (KnotType::Unknot, -1, 0, 2));
        assert_eq!(e.witness.digits, "2134");
        assert_eq!(c.summary.size(1).unwrap().knot_mosaics, 0);
    }

    #[test]
    fn size_three_summary() {
        let c = census(3);
        let s = c.summary.size(3).unwrap();
        assert_eq!(s.knot_mosaics, 17);
        assert_eq!(s.distinct_triples, 4);
        assert_eq!(s.distinct_unsigned, 3);
        assert_eq!(s.types, vec![KnotType::Unknot]);
        let triples: BTreeSet<(i64, i64)> = c.entries.iter().map(|e| (e.tb, e.rot)).collect();
        assert_eq!(triples, BTreeSet::from([(-1, 0), (-2, 1), (-2, -1), (-3, 0)]));
    }

    #[test]
    fn witnesses_reverify() {
        for e in census(4).entries {
            let m = decode(&e.witness).unwrap();
            assert_eq!(m.rows() * m.rows(), e.witness.digits.len());
            assert_eq!(m.rows(), e.min_size);
            let inv = invariants(&m).unwrap();
            assert_eq!(inv.components, 1);
            assert_eq!((inv.tb, inv.rot.abs()), (e.tb, e.rot.abs()));
            assert_eq!(identify(&m).unwrap().knot_type, e.knot_type);
        }
    }

    #[test]
    fn merge_is_order_independent() {
        let depth = 3;
        let parts: Vec<SizeTally> = prefixes(4, 4, depth).iter().map(|p| tally_prefix(4, p, 24).unwrap()).collect();
        let forward = parts.iter().cloned().fold(SizeTally::default(), SizeTally::merge);
        let backward = parts.iter().rev().cloned().fold(SizeTally::default(), SizeTally::merge);
        assert_eq!(forward, backward);
        assert_eq!(forward, tally_size(4, 3, 24).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let err = run_census(&CensusOptions::new(6)).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn shards_resume() {
        let dir = tempfile::tempdir().unwrap();
        let opts = CensusOptions { out_dir: Some(dir.path().to_path_buf()), workers: 2, ..CensusOptions::new(4) };
        let a = run_census(&opts).unwrap();
        // Drop one shard; a resumed run recomputes only that one.
        let n4 = dir.path().join("n4");
        fs::remove_file(n4.join("part-000000.json")).unwrap();
        let b = run_census(&CensusOptions { resume: true, ..opts.clone() }).unwrap();
        assert_eq!(a, b);
        assert!(n4.join("part-000000.json").exists());
    }

    #[test]
    fn anomalies_and_ranges() {
        assert!(stabilization_anomalies(&[]).is_empty());
        let c = census(4);
        let r = emit_mountain_range(&c.entries, KnotType::Unknot, 4);
        assert_eq!(r.cell(-1, 0), Some(RangeCell::Exact(2)));
        assert_eq!(r.cell(-3, 2), Some(RangeCell::Exact(4)));
        assert_eq!(r.cell(-2, 0), Some(RangeCell::Empty));
        assert!(emit_mountain_range(&c.entries, KnotType::FigureEight, 4).is_empty());
        let csv = r.to_csv();
        assert!(csv.starts_with("tb,0,1,2"));
    }

    #[test]
    fn lower_bound_cells() {
        let entries = vec![CensusEntry {
            knot_type: KnotType::Trefoil,
            tb: -6,
            rot: 1,
            min_size: 5,
            witness: MosaicEncoding::new(5, 5, "0".repeat(25)),
            count_at_min: 1,
        }];
        let r = emit_mountain_range(&entries, KnotType::Trefoil, 5);
        assert_eq!(r.tbs, vec![-6]);
        assert_eq!(r.cell(-6, 1), Some(RangeCell::Exact(5)));
        assert_eq!(r.cell(-6, 0), Some(RangeCell::Empty));
        let unknots = vec![CensusEntry {
            knot_type: KnotType::Unknot,
            tb: -1,
            rot: 0,
            min_size: 2,
            witness: parse_mosaic("2134").unwrap().encode(),
            count_at_min: 1,
        }];
        let mut e = unknots.clone();
        e.push(CensusEntry { tb: -3, rot: 2, min_size: 4, ..unknots[0].clone() });
        let r = emit_mountain_range(&e, KnotType::Unknot, 2);
        assert_eq!(r.cell(-2, 1), Some(RangeCell::AtLeast(3)));
        assert_eq!(r.cell(-3, 0), Some(RangeCell::AtLeast(3)));
    }

    #[test]
    fn slugs() {
        assert_eq!(type_slug(KnotType::MirrorGranny), "m3_1-m3_1");
        assert_eq!(type_slug(KnotType::Unknot), "0_1");
    }
}
