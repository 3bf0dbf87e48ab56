//! Smooth knot type lookup by HOMFLY-PT polynomial.
//!
//! The table below was computed with [`HomflyEngine`] from standard braid
//! closures (see the tests) and frozen. For chiral types the diagram built
//! from a positive braid word is the one labelled `m(..)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use super::homfly::HomflyEngine;
use super::pd::to_planar_diagram;
use super::poly::Poly;
use crate::error::Error;
use crate::tile::{Mosaic, Tile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KnotType {
    Unknot,
    Trefoil,
    MirrorTrefoil,
    Granny,
    MirrorGranny,
    FigureEight,
    K5_1,
    M5_1,
    K5_2,
    M5_2,
    K6_1,
    M6_1,
    K7_1,
    M7_1,
    K7_2,
    M7_2,
    K8_1,
    M8_1,
    Unknown,
}

impl KnotType {
    pub const NAMED: [KnotType; 18] = [
        KnotType::Unknot,
        KnotType::Trefoil,
        KnotType::MirrorTrefoil,
        KnotType::Granny,
        KnotType::MirrorGranny,
        KnotType::FigureEight,
        KnotType::K5_1,
        KnotType::M5_1,
        KnotType::K5_2,
        KnotType::M5_2,
        KnotType::K6_1,
        KnotType::M6_1,
        KnotType::K7_1,
        KnotType::M7_1,
        KnotType::K7_2,
        KnotType::M7_2,
        KnotType::K8_1,
        KnotType::M8_1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KnotType::Unknot => "0_1",
            KnotType::Trefoil => "3_1",
            KnotType::MirrorTrefoil => "m(3_1)",
            KnotType::Granny => "3_1#3_1",
            KnotType::MirrorGranny => "m(3_1)#m(3_1)",
            KnotType::FigureEight => "4_1",
            KnotType::K5_1 => "5_1",
            KnotType::M5_1 => "m(5_1)",
            KnotType::K5_2 => "5_2",
            KnotType::M5_2 => "m(5_2)",
            KnotType::K6_1 => "6_1",
            KnotType::M6_1 => "m(6_1)",
            KnotType::K7_1 => "7_1",
            KnotType::M7_1 => "m(7_1)",
            KnotType::K7_2 => "7_2",
            KnotType::M7_2 => "m(7_2)",
            KnotType::K8_1 => "8_1",
            KnotType::M8_1 => "m(8_1)",
            KnotType::Unknown => "UNKNOWN",
        }
    }

    /// The mirror type; the unknot, 4_1 and UNKNOWN map to themselves.
    pub fn mirror(self) -> KnotType {
        use KnotType::*;
        match self {
            Trefoil => MirrorTrefoil,
            MirrorTrefoil => Trefoil,
            Granny => MirrorGranny,
            MirrorGranny => Granny,
            K5_1 => M5_1,
            M5_1 => K5_1,
            K5_2 => M5_2,
            M5_2 => K5_2,
            K6_1 => M6_1,
            M6_1 => K6_1,
            K7_1 => M7_1,
            M7_1 => K7_1,
            K7_2 => M7_2,
            M7_2 => K7_2,
            K8_1 => M8_1,
            M8_1 => K8_1,
            other => other,
        }
    }

    /// Frozen HOMFLY-PT polynomial, `None` for UNKNOWN.
    pub fn homfly(self) -> Option<Poly> {
        let s = match self {
            KnotType::Unknot => "1",
            KnotType::MirrorTrefoil => "-a^-4+2*a^-2+a^-2*z^2",
            KnotType::MirrorGranny => "a^-8-4*a^-6+4*a^-4-2*a^-6*z^2+4*a^-4*z^2+a^-4*z^4",
            KnotType::FigureEight => "a^-2-1+a^2-z^2",
            KnotType::M5_1 => "-2*a^-6+3*a^-4-a^-6*z^2+4*a^-4*z^2+a^-4*z^4",
            KnotType::M5_2 => "-a^-6+a^-4+a^-2+a^-4*z^2+a^-2*z^2",
            KnotType::M6_1 => "a^-4-a^-2+a^2-a^-2*z^2-z^2",
            KnotType::M7_1 => "-3*a^-8+4*a^-6-4*a^-8*z^2+10*a^-6*z^2-a^-8*z^4+6*a^-6*z^4+a^-6*z^6",
            KnotType::M7_2 => "-a^-8+a^-6+a^-2+a^-6*z^2+a^-4*z^2+a^-2*z^2",
            KnotType::M8_1 => "a^-6-a^-4+a^2-a^-4*z^2-a^-2*z^2-z^2",
            KnotType::Unknown => return None,
            chiral => return chiral.mirror().homfly().map(|p| p.mirror()),
        };
        Some(Poly::parse(s).expect("frozen table parses"))
    }

    /// Table lookup; UNKNOWN when no named type matches.
    pub fn from_homfly(p: &Poly) -> KnotType {
        static TABLE: OnceLock<HashMap<Poly, KnotType>> = OnceLock::new();
        let table = TABLE.get_or_init(|| {
            KnotType::NAMED.into_iter().map(|k| (k.homfly().expect("named types have a polynomial"), k)).collect()
        });
        table.get(p).copied().unwrap_or(KnotType::Unknown)
    }
}

impl fmt::Display for KnotType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KnotType {
    type Err = Error;
    fn from_str(s: &str) -> Result<KnotType, Error> {
        KnotType::NAMED
            .into_iter()
            .chain([KnotType::Unknown])
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown knot type name {s:?}")))
    }
}

impl Serialize for KnotType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identification {
    #[serde(rename = "type")]
    pub knot_type: KnotType,
    #[serde(serialize_with = "as_string")]
    pub homfly: Poly,
    pub crossings: usize,
}

fn as_string<S: Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Identifies the smooth knot type of a knot mosaic.
pub fn identify(m: &Mosaic) -> Result<Identification, Error> {
    identify_with(&mut HomflyEngine::new(), m)
}

/// As [`identify`], sharing the engine's memo table across calls.
pub fn identify_with(engine: &mut HomflyEngine, m: &Mosaic) -> Result<Identification, Error> {
    let pd = to_planar_diagram(m)?;
    if pd.component_count() != 1 {
        return Err(Error::NotAKnot);
    }
    let homfly = engine.evaluate(&pd)?;
    Ok(Identification { knot_type: KnotType::from_homfly(&homfly), homfly, crossings: m.count(Tile::T10) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tile::parse_mosaic;
    use crate::topology::homfly::homfly;
    use crate::topology::standard::{braid_closure, connected_sum, knots};

    #[test]
    fn frozen_table_matches_braid_closures() {
        let cases = [
            (KnotType::MirrorTrefoil, knots::torus_2(3)),
            (KnotType::M5_1, knots::torus_2(5)),
            (KnotType::M7_1, knots::torus_2(7)),
            (KnotType::FigureEight, knots::twist(4).unwrap()),
            (KnotType::M5_2, knots::twist(5).unwrap()),
            (KnotType::M6_1, knots::twist(6).unwrap()),
            (KnotType::M7_2, knots::twist(7).unwrap()),
            (KnotType::M8_1, knots::twist(8).unwrap()),
            (KnotType::MirrorGranny, knots::granny_braid()),
            (KnotType::MirrorGranny, connected_sum(&knots::torus_2(3), &knots::torus_2(3))),
            (KnotType::Unknot, knots::unknot()),
        ];
        for (k, d) in cases {
            let p = homfly(&d).unwrap();
            assert_eq!(k.homfly(), Some(p.clone()), "{k}");
            assert_eq!(k.mirror().homfly(), Some(homfly(&d.mirror()).unwrap()), "{k}");
            assert_eq!(KnotType::from_homfly(&p), k);
        }
    }

    #[test]
    fn determinants() {
        let dets = [1, 3, 3, 9, 9, 5, 5, 5, 7, 7, 9, 9, 7, 7, 11, 11, 13, 13];
        for (k, d) in KnotType::NAMED.iter().zip(dets) {
            assert_eq!(k.homfly().unwrap().determinant(), Some(d), "{k}");
        }
    }

    #[test]
    fn table_is_injective() {
        let polys: std::collections::HashSet<Poly> = KnotType::NAMED.iter().map(|k| k.homfly().unwrap()).collect();
        assert_eq!(polys.len(), KnotType::NAMED.len());
    }

    #[test]
    fn names_round_trip() {
        for k in KnotType::NAMED.into_iter().chain([KnotType::Unknown]) {
            assert_eq!(k.name().parse::<KnotType>().unwrap(), k);
            assert_eq!(k.mirror().mirror(), k);
        }
    }

    #[test]
    fn square_knot_is_unknown() {
        let sq = connected_sum(&knots::torus_2(3), &knots::torus_2(3).mirror());
        assert_eq!(KnotType::from_homfly(&homfly(&sq).unwrap()), KnotType::Unknown);
        assert_eq!(KnotType::from_homfly(&homfly(&braid_closure(2, &[1, 1])).unwrap()), KnotType::Unknown);
    }

    #[test]
    fn examples() {
        for (enc, k) in [
            ("2134", KnotType::Unknot),
            ("0021025971629943943103554", KnotType::MirrorTrefoil),
            ("0021002971294663759403540", KnotType::Trefoil),
            ("255100602910629891398946039406003554", KnotType::Granny),
        ] {
            let id = identify(&parse_mosaic(enc).unwrap()).unwrap();
            assert_eq!(id.knot_type, k, "{enc}");
        }
        let id = identify(&parse_mosaic("0021002971294663759403540").unwrap()).unwrap();
        assert_eq!(id.crossings, 3);
        let json = serde_json::to_value(&id).unwrap();
        assert_eq!(json["type"], "3_1");
        assert_eq!(json["homfly"], "2*a^2-a^4+a^2*z^2");
    }

    #[test]
    fn links_are_rejected() {
        let circles = parse_mosaic("2121343421213434").unwrap();
        assert!(matches!(identify(&circles), Err(Error::NotAKnot)));
    }
}
