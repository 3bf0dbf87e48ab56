//! Lower and upper bounds on mosaic number from (tb, rot).
//!
//! Every ceiling of a square root is computed on integers. A bound of the form
//! ⌈√(R/4) + 3/2⌉ is the least n with 2n − 3 ≥ 0 and (2n − 3)² ≥ R, where R is
//! four times the radicand.

use serde::Serialize;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantPair {
    pub tb: i64,
    pub rot: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub tb: i64,
    pub rot: i64,
    pub lower_thm22: Option<i64>,
    pub lower_thm23: Option<i64>,
    pub lower_thm27i: Option<i64>,
    pub lower_thm27ii: Option<i64>,
    pub best_lower: i64,
    /// Present iff (tb, rot) is a valid unknot pair.
    pub upper_unknot: Option<i64>,
}

/// ⌈√x⌉ for x ≥ 0.
pub fn ceil_sqrt(x: i64) -> i64 {
    assert!(x >= 0, "ceil_sqrt of negative value");
    let r = x.isqrt();
    if r * r == x {
        r
    } else {
        r + 1
    }
}

/// ⌈√(r/4) + 3/2⌉ for r ≥ 0.
fn ceil_sqrt_plus_three_halves(r: i64) -> i64 {
    // √(r/4) + 3/2 ≤ n  ⇔  (2n − 3)² ≥ r with 2n − 3 ≥ 0. Starting from
    // 2n − 3 ≤ ⌊√r⌋ the search only steps upward.
    let mut n = (r.isqrt() + 3) / 2;
    loop {
        let m = 2 * n - 3;
        if m >= 0 && m * m >= r {
            return n;
        }
        n += 1;
    }
}

/// ⌈√(4|rot| + tb)⌉ when the radicand is nonnegative.
pub fn lower_rot(inv: InvariantPair) -> Option<i64> {
    let k = 4 * inv.rot.abs() + inv.tb;
    (k >= 0).then(|| ceil_sqrt(k))
}

/// ⌈√(−tb − 3/4) + 3/2⌉ for tb < 0.
pub fn lower_tb(inv: InvariantPair) -> Option<i64> {
    (inv.tb < 0).then(|| ceil_sqrt_plus_three_halves(-4 * inv.tb - 3))
}

/// ⌈√(−tb)⌉ for tb ≤ 0.
pub fn lower_tb_weak(inv: InvariantPair) -> Option<i64> {
    (inv.tb <= 0).then(|| ceil_sqrt(-inv.tb))
}

pub fn lower_bounds(inv: InvariantPair) -> BoundReport {
    let lower_thm22 = lower_rot(inv);
    let lower_thm23 = lower_tb(inv);
    let lower_thm27i = lower_rot(inv);
    let lower_thm27ii = lower_tb_weak(inv);
    let best_lower =
        [lower_thm22, lower_thm23, lower_thm27i, lower_thm27ii].into_iter().flatten().max().unwrap_or(1).max(1);
    BoundReport {
        tb: inv.tb,
        rot: inv.rot,
        lower_thm22,
        lower_thm23,
        lower_thm27i,
        lower_thm27ii,
        best_lower,
        upper_unknot: unknot_upper_bound(inv).ok(),
    }
}

/// tb ≤ −1, tb + |rot| ≤ −1 and tb + rot odd.
pub fn is_unknot_pair(inv: InvariantPair) -> bool {
    inv.tb <= -1 && inv.tb + inv.rot.abs() <= -1 && (inv.tb + inv.rot).rem_euclid(2) == 1
}

fn check_unknot_pair(inv: InvariantPair) -> Result<(), Error> {
    if is_unknot_pair(inv) {
        Ok(())
    } else {
        Err(Error::NotAnUnknotPair { tb: inv.tb, rot: inv.rot })
    }
}

/// Size of the mosaic produced by the unknot construction.
pub fn unknot_upper_bound(inv: InvariantPair) -> Result<i64, Error> {
    check_unknot_pair(inv)?;
    let r = inv.rot.abs();
    Ok(if r != 0 {
        ceil_sqrt_plus_three_halves(12 * r - 4 * inv.tb - 11)
    } else {
        ceil_sqrt_plus_three_halves(-4 * inv.tb + 5)
    })
}

/// Upper bound for unknots on the outer boundary tb = −|rot| − 1.
pub fn unknot_outer_boundary_bound(inv: InvariantPair) -> Result<i64, Error> {
    check_unknot_pair(inv)?;
    if inv.tb != -inv.rot.abs() - 1 {
        return Err(Error::Domain(format!("tb={} is not -|rot|-1 for rot={}", inv.tb, inv.rot)));
    }
    Ok(ceil_sqrt_plus_three_halves(-16 * inv.tb - 23))
}

/// Thurston-Bennequin number of the crab bucket of size n.
pub fn crab_tb(n: i64) -> Result<i64, Error> {
    if n < 5 {
        return Err(Error::Domain(format!("crab buckets need n >= 5, got {n}")));
    }
    Ok(if n % 2 == 1 { -(n - 1) * (n - 2) } else { -n * n + 3 * n + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(tb: i64, rot: i64) -> InvariantPair {
        InvariantPair { tb, rot }
    }

    /// Floating-point reference, only trusted away from integer boundaries.
    fn float_bound(x: f64) -> i64 {
        (x.sqrt() + 1.5).ceil() as i64
    }

    #[test]
    fn examples() {
        assert_eq!(lower_bounds(pair(-5, 4)).lower_thm22, Some(4));
        assert_eq!(lower_bounds(pair(-12, 1)).lower_thm23, Some(5));
        let r = lower_bounds(pair(-1, 0));
        assert_eq!(r.lower_thm27ii, Some(1));
        assert_eq!(r.lower_thm23, Some(2));
        assert_eq!(r.lower_thm22, None);
        assert_eq!(r.best_lower, 2);
        assert_eq!(unknot_upper_bound(pair(-29, 0)).unwrap(), 7);
        assert_eq!(unknot_upper_bound(pair(-19, 4)).unwrap(), 7);
        assert_eq!(unknot_upper_bound(pair(-1, 0)).unwrap(), 3);
        assert_eq!(crab_tb(5).unwrap(), -12);
        assert_eq!(crab_tb(7).unwrap(), -30);
        assert_eq!(crab_tb(8).unwrap(), -39);
        assert!(crab_tb(4).is_err());
    }

    #[test]
    fn perfect_square_boundary() {
        // −tb + 5/4 = 30.25 = 5.5², so the ceiling lands exactly on 7.
        assert_eq!(ceil_sqrt_plus_three_halves(121), 7);
        assert_eq!(ceil_sqrt_plus_three_halves(122), 8);
        assert_eq!(ceil_sqrt_plus_three_halves(0), 2);
        assert_eq!(ceil_sqrt_plus_three_halves(1), 2);
        assert_eq!(ceil_sqrt_plus_three_halves(2), 3);
    }

    #[test]
    fn integer_and_float_agree_off_boundary() {
        for r in 0..20000i64 {
            let x = r as f64 / 4.0;
            let s = x.sqrt() + 1.5;
            if (s - s.round()).abs() > 1e-9 {
                assert_eq!(ceil_sqrt_plus_three_halves(r), float_bound(x), "r={r}");
            }
        }
    }

    #[test]
    fn crab_sharpness() {
        for n in 5..=64 {
            let tb = crab_tb(n).unwrap();
            assert_eq!(lower_tb(pair(tb, 1)), Some(n), "n={n}");
        }
    }

    #[test]
    fn tb_bound_beats_weak_bound_by_one_or_two() {
        for tb in -10000..=-1 {
            let d = lower_tb(pair(tb, 0)).unwrap() - lower_tb_weak(pair(tb, 0)).unwrap();
            assert!(d == 1 || d == 2, "tb={tb} d={d}");
        }
    }

    #[test]
    fn unknot_pairs() {
        assert!(is_unknot_pair(pair(-1, 0)));
        assert!(is_unknot_pair(pair(-2, 1)));
        assert!(!is_unknot_pair(pair(-2, 0)));
        assert!(is_unknot_pair(pair(-3, 2)));
        assert!(!is_unknot_pair(pair(-3, 3)));
        assert!(!is_unknot_pair(pair(0, 1)));
        assert!(matches!(unknot_upper_bound(pair(-2, 0)), Err(Error::NotAnUnknotPair { .. })));
    }

    #[test]
    fn outer_boundary_bound_matches_upper_bound() {
        // −4tb − 23/4 = 4|rot| − 7/4 on tb = −|rot| − 1.
        for r in 1..200 {
            let inv = pair(-r - 1, r);
            let b = unknot_outer_boundary_bound(inv).unwrap();
            assert_eq!(b, ceil_sqrt_plus_three_halves(16 * r - 7));
            assert_eq!(b, unknot_upper_bound(inv).unwrap());
        }
        assert!(unknot_outer_boundary_bound(pair(-5, 2)).is_err());
    }
}
