//! Resumable sharded output for long enumeration runs.
//!
//! Each prefix is written to its own shard (`part-NNNNNN.txt`, optionally
//! gzipped) through a temporary file that is renamed into place once complete.
//! `checkpoint.log` records the prefix depth on its first line and one
//! `done <index> <count>` line per finished shard, so a rerun skips finished work.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use flate2::write::GzEncoder;
use flate2::Compression;
use rayon::prelude::*;

use super::{check_budget, for_each_with_prefix, pool, prefix_depth, prefixes, Filter};
use crate::error::Error;
use crate::tile::Mosaic;

pub const CHECKPOINT: &str = "checkpoint.log";

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RunSummary {
    pub rows: usize,
    pub cols: usize,
    pub filter: Filter,
    pub depth: usize,
    pub shards: usize,
    pub resumed_shards: usize,
    pub total: u64,
}

#[derive(Clone, Debug)]
pub struct ShardOptions {
    pub out_dir: PathBuf,
    pub gzip: bool,
    pub workers: usize,
    pub max_cells: usize,
}

fn shard_name(i: usize, gzip: bool) -> String {
    if gzip {
        format!("part-{i:06}.txt.gz")
    } else {
        format!("part-{i:06}.txt")
    }
}

/// Reads a checkpoint: (depth, finished shard counts).
pub fn read_checkpoint(path: &Path) -> Result<(usize, BTreeMap<usize, u64>), Error> {
    let f = BufReader::new(File::open(path)?);
    let mut lines = f.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    let depth = header
        .strip_prefix("depth ")
        .and_then(|d| d.trim().parse().ok())
        .ok_or_else(|| Error::Io(format!("bad checkpoint header in {}", path.display())))?;
    let mut done = BTreeMap::new();
    for line in lines {
        let line = line?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        // A torn last line from an interrupted write is ignored.
        if let ["done", i, n] = parts[..] {
            if let (Ok(i), Ok(n)) = (i.parse(), n.parse()) {
                done.insert(i, n);
            }
        }
    }
    Ok((depth, done))
}

fn write_shard(dir: &Path, i: usize, gzip: bool, body: &[u8]) -> Result<(), Error> {
    let final_path = dir.join(shard_name(i, gzip));
    let tmp = dir.join(format!(".{}.tmp", shard_name(i, gzip)));
    {
        let f = BufWriter::new(File::create(&tmp)?);
        if gzip {
            let mut enc = GzEncoder::new(f, Compression::default());
            enc.write_all(body)?;
            enc.finish()?.flush()?;
        } else {
            let mut f = f;
            f.write_all(body)?;
            f.flush()?;
        }
    }
    fs::rename(&tmp, &final_path)?;
    Ok(())
}

/// Enumerates into shards under `opts.out_dir`, resuming from an existing
/// checkpoint there if present.
pub fn run_sharded(rows: usize, cols: usize, filter: Filter, opts: &ShardOptions) -> Result<RunSummary, Error> {
    check_budget(rows, cols, opts.max_cells)?;
    fs::create_dir_all(&opts.out_dir)?;
    let ckpt = opts.out_dir.join(CHECKPOINT);
    let (depth, done) = if ckpt.exists() {
        read_checkpoint(&ckpt)?
    } else {
        let depth = prefix_depth(rows, cols, opts.workers.max(1) * 4);
        fs::write(&ckpt, format!("depth {depth}\n"))?;
        (depth, BTreeMap::new())
    };
    let pre = prefixes(rows, cols, depth);
    let log = Mutex::new(OpenOptions::new().append(true).open(&ckpt)?);
    let resumed = done.len();
    let pool = pool(opts.workers)?;
    let fresh: Vec<(usize, u64)> = pool.install(|| {
        pre.par_iter()
            .enumerate()
            .filter(|(i, _)| !done.contains_key(i))
            .map(|(i, p)| {
                let mut body = Vec::new();
                let mut n = 0u64;
                for_each_with_prefix(rows, cols, p, filter, |cells| {
                    n += 1;
                    let m = Mosaic::from_cells(rows, cols, cells.to_vec()).expect("fixed dimensions");
                    body.extend_from_slice(m.encode().to_string().as_bytes());
                    body.push(b'\n');
                });
                write_shard(&opts.out_dir, i, opts.gzip, &body)?;
                let mut log = log.lock().expect("checkpoint lock");
                writeln!(log, "done {i} {n}")?;
                log.flush()?;
                Ok((i, n))
            })
            .collect::<Result<Vec<_>, Error>>()
    })?;
    let total = done.values().sum::<u64>() + fresh.iter().map(|(_, n)| n).sum::<u64>();
    let summary = RunSummary { rows, cols, filter, depth, shards: pre.len(), resumed_shards: resumed, total };
    fs::write(
        opts.out_dir.join("manifest.json"),
        serde_json::to_string_pretty(&summary).expect("serializable") + "\n",
    )?;
    Ok(summary)
}

/// Reads every shard in a run directory back, in shard order.
pub fn read_shards(dir: &Path) -> Result<Vec<String>, Error> {
    let mut names: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with("part-")))
        .collect();
    names.sort();
    let mut out = Vec::new();
    for p in names {
        let f = File::open(&p)?;
        let reader: Box<dyn BufRead> = if p.extension().is_some_and(|e| e == "gz") {
            Box::new(BufReader::new(flate2::read::GzDecoder::new(f)))
        } else {
            Box::new(BufReader::new(f))
        };
        for line in reader.lines() {
            out.push(line?);
        }
    }
    Ok(out)
}
