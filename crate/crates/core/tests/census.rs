mod common;

use std::collections::BTreeSet;

use legmosaic::census::{run_census, write_outputs, CensusOptions, OutputFormat};
use legmosaic::invariants::invariants;
use legmosaic::parse_mosaic;
use legmosaic::topology::identify;

#[test]
fn census_through_five_equals_reference_rows() {
    let census = run_census(&CensusOptions::new(5)).unwrap();
    let ours: BTreeSet<_> = census.entries.iter().map(|e| (e.knot_type, e.tb, e.rot.abs())).collect();
    assert_eq!(ours, common::reference_unsigned_through(5));
    // Both signs of rot appear for every entry with rot ≠ 0.
    for e in &census.entries {
        assert!(census.entries.iter().any(|f| f.triple() == legmosaic::census::Triple { rot: -e.rot, ..e.triple() }));
    }
    let knots: Vec<u64> = census.summary.sizes.iter().map(|s| s.knot_mosaics).collect();
    assert_eq!(knots, [0, 1, 17, 793, 275557]);
    // Minimal sizes agree with the table too.
    for v in common::reference_vectors().into_iter().filter(|v| v.size <= 5) {
        let e = census.entries.iter().find(|e| (e.knot_type, e.tb, e.rot) == (v.knot_type, v.tb, v.rot)).unwrap();
        assert_eq!(e.min_size, v.size, "{:?}", v);
    }
}

#[test]
fn witnesses_realize_their_entries() {
    let census = run_census(&CensusOptions::new(4)).unwrap();
    for e in &census.entries {
        let m = parse_mosaic(&e.witness.to_string()).unwrap();
        assert_eq!(m.rows(), e.min_size);
        let inv = invariants(&m).unwrap();
        assert_eq!((inv.tb, inv.rot.abs()), (e.tb, e.rot.abs()));
        assert_eq!(identify(&m).unwrap().knot_type, e.knot_type);
    }
}

#[test]
fn outputs_are_written_and_deterministic() {
    let census = run_census(&CensusOptions::new(4)).unwrap();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let pa = write_outputs(&census, a.path(), OutputFormat::Json).unwrap();
    write_outputs(&run_census(&CensusOptions { workers: 1, ..CensusOptions::new(4) }).unwrap(), b.path(), OutputFormat::Json)
        .unwrap();
    for p in pa {
        let name = p.file_name().unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), std::fs::read(b.path().join(name)).unwrap(), "{name:?}");
    }
    assert!(a.path().join("range_0_1.csv").exists());
    assert!(a.path().join("summary.json").exists());
}
