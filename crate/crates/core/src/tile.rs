//! Legendrian mosaic tiles, the grid model and the digit-string encoding.
//!
//! Tiles are drawn in a grid whose rows grow downward; the displayed picture is
//! that grid rotated 45° counterclockwise, so the grid edges N, E, S, W play the
//! roles upper-left, upper-right, lower-right and lower-left respectively.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A side of a tile in grid coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    N,
    E,
    S,
    W,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::N, Edge::E, Edge::S, Edge::W];

    pub const fn bit(self) -> u8 {
        match self {
            Edge::N => 1,
            Edge::E => 2,
            Edge::S => 4,
            Edge::W => 8,
        }
    }

    pub const fn opposite(self) -> Edge {
        match self {
            Edge::N => Edge::S,
            Edge::E => Edge::W,
            Edge::S => Edge::N,
            Edge::W => Edge::E,
        }
    }

    /// Grid offset (row, col) of the neighbour across this edge.
    pub const fn offset(self) -> (isize, isize) {
        match self {
            Edge::N => (-1, 0),
            Edge::E => (0, 1),
            Edge::S => (1, 0),
            Edge::W => (0, -1),
        }
    }

    /// Position of the edge midpoint in the rotated display, in units of half a
    /// tile diagonal: upper-left, upper-right, lower-right, lower-left.
    pub const fn role(self) -> (i32, i32) {
        match self {
            Edge::N => (-1, 1),
            Edge::E => (1, 1),
            Edge::S => (1, -1),
            Edge::W => (-1, -1),
        }
    }

    /// Display role name.
    pub const fn role_name(self) -> &'static str {
        match self {
            Edge::N => "upper-left",
            Edge::E => "upper-right",
            Edge::S => "lower-right",
            Edge::W => "lower-left",
        }
    }

    /// True for the two edges on the left side of the displayed tile.
    pub const fn is_left(self) -> bool {
        matches!(self, Edge::N | Edge::W)
    }
}

/// An unordered strand between two distinct edges, stored as `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Strand {
    pub a: Edge,
    pub b: Edge,
}

impl Strand {
    const fn new(a: Edge, b: Edge) -> Strand {
        Strand { a, b }
    }

    pub fn contains(self, e: Edge) -> bool {
        self.a == e || self.b == e
    }

    /// The endpoint other than `e`.
    pub fn other(self, e: Edge) -> Edge {
        if self.a == e {
            self.b
        } else {
            self.a
        }
    }

    /// Both endpoints on the same lateral side of the displayed tile.
    pub fn is_cusp(self) -> bool {
        self.a.is_left() == self.b.is_left()
    }
}

/// The ten Legendrian mosaic tiles. `T9` does not exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Tile {
    T0,
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T10,
}

const S_NE: Strand = Strand::new(Edge::N, Edge::E);
const S_NW: Strand = Strand::new(Edge::N, Edge::W);
const S_SE: Strand = Strand::new(Edge::S, Edge::E);
const S_SW: Strand = Strand::new(Edge::S, Edge::W);
const S_NS: Strand = Strand::new(Edge::N, Edge::S);
const S_EW: Strand = Strand::new(Edge::E, Edge::W);

impl Tile {
    pub const ALL: [Tile; 10] = [
        Tile::T0,
        Tile::T1,
        Tile::T2,
        Tile::T3,
        Tile::T4,
        Tile::T5,
        Tile::T6,
        Tile::T7,
        Tile::T8,
        Tile::T10,
    ];

    /// Encoding digit; `T10` is written as 9.
    pub const fn digit(self) -> u8 {
        match self {
            Tile::T10 => 9,
            t => t as u8,
        }
    }

    pub const fn from_digit(d: u8) -> Option<Tile> {
        Some(match d {
            0 => Tile::T0,
            1 => Tile::T1,
            2 => Tile::T2,
            3 => Tile::T3,
            4 => Tile::T4,
            5 => Tile::T5,
            6 => Tile::T6,
            7 => Tile::T7,
            8 => Tile::T8,
            9 => Tile::T10,
            _ => return None,
        })
    }

    /// Tile number as printed in tile names (10 for the crossing).
    pub const fn number(self) -> u8 {
        match self {
            Tile::T10 => 10,
            t => t as u8,
        }
    }

    /// Strands of the tile. For `T10` the first strand ({N,S}) is the overstrand.
    pub const fn strands(self) -> &'static [Strand] {
        match self {
            Tile::T0 => &[],
            Tile::T1 => &[S_SW],
            Tile::T2 => &[S_SE],
            Tile::T3 => &[S_NE],
            Tile::T4 => &[S_NW],
            Tile::T5 => &[S_EW],
            Tile::T6 => &[S_NS],
            Tile::T7 => &[S_NE, S_SW],
            Tile::T8 => &[S_NW, S_SE],
            Tile::T10 => &[S_NS, S_EW],
        }
    }

    /// Bitmask of edges carrying a connection point.
    pub const fn mask(self) -> u8 {
        match self {
            Tile::T0 => 0,
            Tile::T1 => 4 | 8,
            Tile::T2 => 4 | 2,
            Tile::T3 => 1 | 2,
            Tile::T4 => 1 | 8,
            Tile::T5 => 2 | 8,
            Tile::T6 => 1 | 4,
            Tile::T7 | Tile::T8 | Tile::T10 => 15,
        }
    }

    pub const fn is_crossing(self) -> bool {
        matches!(self, Tile::T10)
    }

    /// Index of the strand that uses edge `e`, if any.
    pub fn strand_at(self, e: Edge) -> Option<usize> {
        self.strands().iter().position(|s| s.contains(e))
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.number())
    }
}

/// True iff `tile` has a connection point on `edge`.
pub fn connection_profile(tile: Tile, edge: Edge) -> bool {
    tile.mask() & edge.bit() != 0
}

/// An m×n grid of tiles stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mosaic {
    rows: usize,
    cols: usize,
    cells: Vec<Tile>,
}

impl Mosaic {
    pub fn blank(rows: usize, cols: usize) -> Mosaic {
        assert!(rows > 0 && cols > 0, "mosaic dimensions must be positive");
        Mosaic { rows, cols, cells: vec![Tile::T0; rows * cols] }
    }

    pub fn from_cells(rows: usize, cols: usize, cells: Vec<Tile>) -> Result<Mosaic, Error> {
        if rows == 0 || cols == 0 || cells.len() != rows * cols {
            return Err(Error::LengthMismatch { expected: rows * cols, found: cells.len() });
        }
        Ok(Mosaic { rows, cols, cells })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> &[Tile] {
        &self.cells
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Tile at the 1-based position (i, j).
    pub fn get(&self, i: usize, j: usize) -> Tile {
        assert!((1..=self.rows).contains(&i) && (1..=self.cols).contains(&j));
        self.cells[(i - 1) * self.cols + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, t: Tile) {
        assert!((1..=self.rows).contains(&i) && (1..=self.cols).contains(&j));
        self.cells[(i - 1) * self.cols + (j - 1)] = t;
    }

    /// Number of cells holding `t`.
    pub fn count(&self, t: Tile) -> usize {
        self.cells.iter().filter(|&&c| c == t).count()
    }

    /// Digit string, row-major.
    pub fn digits(&self) -> String {
        self.cells.iter().map(|t| char::from(b'0' + t.digit())).collect()
    }

    pub fn encode(&self) -> MosaicEncoding {
        MosaicEncoding { rows: self.rows, cols: self.cols, digits: self.digits() }
    }

    /// The mosaic framed by `pad` blank rows and columns on every side.
    pub fn padded(&self, pad: usize) -> Mosaic {
        let mut m = Mosaic::blank(self.rows + 2 * pad, self.cols + 2 * pad);
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                m.set(i + pad, j + pad, self.get(i, j));
            }
        }
        m
    }

    pub fn is_suitably_connected(&self) -> bool {
        is_suitably_connected(self)
    }
}

impl fmt::Display for Mosaic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

/// A digit string together with its grid dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MosaicEncoding {
    pub rows: usize,
    pub cols: usize,
    pub digits: String,
}

impl MosaicEncoding {
    pub fn new(rows: usize, cols: usize, digits: impl Into<String>) -> MosaicEncoding {
        MosaicEncoding { rows, cols, digits: digits.into() }
    }

    /// Square encoding with dimensions inferred from the length.
    pub fn square(digits: &str) -> Result<MosaicEncoding, Error> {
        let len = digits.len();
        let n = num_integer::Roots::sqrt(&len);
        if n == 0 || n * n != len {
            return Err(Error::NotSquare(len));
        }
        Ok(MosaicEncoding::new(n, n, digits))
    }
}

impl fmt::Display for MosaicEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}:{}", self.rows, self.cols, self.digits)
    }
}

impl FromStr for MosaicEncoding {
    type Err = Error;

    /// Parses `<rows>x<cols>:<digits>` or bare digits of square length.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        match s.split_once(':') {
            Some((dims, digits)) => {
                let (r, c) = dims.split_once(['x', 'X']).ok_or_else(|| Error::BadDimensions(dims.to_string()))?;
                let rows: usize = r.trim().parse().map_err(|_| Error::BadDimensions(dims.to_string()))?;
                let cols: usize = c.trim().parse().map_err(|_| Error::BadDimensions(dims.to_string()))?;
                if rows == 0 || cols == 0 {
                    return Err(Error::BadDimensions(dims.to_string()));
                }
                Ok(MosaicEncoding::new(rows, cols, digits.trim()))
            }
            None => {
                if let Some(pos) = s.find(|ch: char| !ch.is_ascii_digit()) {
                    return Err(Error::InvalidCharacter { position: pos, found: s[pos..].chars().next().unwrap_or('?') });
                }
                MosaicEncoding::square(s)
            }
        }
    }
}

pub fn decode(enc: &MosaicEncoding) -> Result<Mosaic, Error> {
    let expected = enc.rows * enc.cols;
    if enc.digits.len() != expected {
        return Err(Error::LengthMismatch { expected, found: enc.digits.chars().count() });
    }
    let cells = enc
        .digits
        .bytes()
        .enumerate()
        .map(|(i, b)| {
            b.checked_sub(b'0')
                .and_then(Tile::from_digit)
                .ok_or(Error::InvalidCharacter { position: i, found: char::from(b) })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Mosaic::from_cells(enc.rows, enc.cols, cells)
}

pub fn encode(m: &Mosaic) -> MosaicEncoding {
    m.encode()
}

/// Parses any accepted text form straight to a mosaic.
pub fn parse_mosaic(s: &str) -> Result<Mosaic, Error> {
    decode(&s.parse()?)
}

/// Every shared edge has matching connection points and no connection point
/// lies on the outer boundary.
pub fn is_suitably_connected(m: &Mosaic) -> bool {
    let (rows, cols) = (m.rows, m.cols);
    for r in 0..rows {
        for c in 0..cols {
            let mask = m.cells[r * cols + c].mask();
            let east = if c + 1 < cols { m.cells[r * cols + c + 1].mask() & Edge::W.bit() != 0 } else { false };
            if (mask & Edge::E.bit() != 0) != east {
                return false;
            }
            let south = if r + 1 < rows { m.cells[(r + 1) * cols + c].mask() & Edge::N.bit() != 0 } else { false };
            if (mask & Edge::S.bit() != 0) != south {
                return false;
            }
            if (r == 0 && mask & Edge::N.bit() != 0) || (c == 0 && mask & Edge::W.bit() != 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(s: &str) -> Mosaic {
        parse_mosaic(s).unwrap()
    }

    #[test]
    fn decode_anchors() {
        use Tile::*;
        assert_eq!(sq("2134").cells(), &[T2, T1, T3, T4]);
        assert_eq!(sq("021246354").cells(), &[T0, T2, T1, T2, T4, T6, T3, T5, T4]);
        assert!(sq("0000").cells().iter().all(|&t| t == T0));
    }

    #[test]
    fn encode_blank() {
        assert_eq!(Mosaic::blank(3, 3).digits(), "000000000");
        assert_eq!(Mosaic::blank(2, 3).encode().to_string(), "2x3:000000");
    }

    #[test]
    fn connection_counts() {
        let expected = [0, 2, 2, 2, 2, 2, 2, 4, 4, 4];
        for (t, n) in Tile::ALL.iter().zip(expected) {
            assert_eq!(t.mask().count_ones(), n, "{t}");
            let from_strands: u8 = t.strands().iter().map(|s| s.a.bit() | s.b.bit()).fold(0, |a, b| a | b);
            assert_eq!(from_strands, t.mask());
        }
        assert!(Edge::ALL.iter().all(|&e| !connection_profile(Tile::T0, e)));
        assert!(Edge::ALL.iter().all(|&e| connection_profile(Tile::T10, e)));
        assert!(connection_profile(Tile::T1, Edge::W));
        assert!(!connection_profile(Tile::T1, Edge::N));
    }

    #[test]
    fn suitably_connected_anchors() {
        assert!(sq("2134").is_suitably_connected());
        assert!(sq("021246354").is_suitably_connected());
        assert!(sq("0212128746399162434635554").is_suitably_connected());
        assert!(!sq("2133").is_suitably_connected());
        assert!(Mosaic::blank(4, 7).is_suitably_connected());
    }

    #[test]
    fn cusp_tiles_are_2_4_8() {
        for t in Tile::ALL {
            let cusps = t.strands().iter().filter(|s| s.is_cusp()).count();
            let expected = match t {
                Tile::T2 | Tile::T4 => 1,
                Tile::T8 => 2,
                _ => 0,
            };
            assert_eq!(cusps, expected, "{t}");
        }
    }

    #[test]
    fn parse_forms() {
        let e: MosaicEncoding = "2x2:2134".parse().unwrap();
        assert_eq!(e, MosaicEncoding::new(2, 2, "2134"));
        assert!(matches!("213".parse::<MosaicEncoding>(), Err(Error::NotSquare(3))));
        assert!(matches!(decode(&MosaicEncoding::new(2, 2, "21a4")), Err(Error::InvalidCharacter { position: 2, .. })));
        assert!(matches!(decode(&MosaicEncoding::new(2, 3, "2134")), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn strand_lookup() {
        assert_eq!(Tile::T10.strand_at(Edge::N), Some(0));
        assert_eq!(Tile::T10.strand_at(Edge::W), Some(1));
        assert_eq!(Tile::T0.strand_at(Edge::W), None);
    }
}
