//! Exact counts of suitably connected m×n mosaics via the state matrices
//! X_k, O_k.
//!
//! The matrices have a block recursion, so a product (X_k + O_k)·v is computed
//! recursively in O(k·2^k) big-integer additions without ever materialising the
//! 2^k × 2^k matrix. The total is 2·1ᵀ(X+O)^{n-2}1, obtained by repeated
//! application to the all-ones vector. A dense repeated-squaring route is kept
//! for cross-checking at small sizes.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;

/// Default cap on the state-matrix dimension 2^k.
pub const DEFAULT_DIM_CAP: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Legendrian tiles: the crossing tile has one form.
    Legendrian,
    /// Classical tiles: both crossing forms allowed.
    Classical,
}

impl Variant {
    /// Weight of the lower-right block of O_{k+1}.
    fn corner(self) -> u32 {
        match self {
            Variant::Legendrian => 3,
            Variant::Classical => 4,
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "legendrian" => Ok(Variant::Legendrian),
            "classical" => Ok(Variant::Classical),
            _ => Err(Error::Domain(format!("unknown variant {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MosaicCount {
    pub m: usize,
    pub n: usize,
    pub variant: Variant,
    #[serde(serialize_with = "ser_decimal")]
    pub value: BigUint,
}

fn ser_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Returns (X_k·v, O_k·v) where k = log2(v.len()).
fn apply(v: &[BigUint], corner: u32) -> (Vec<BigUint>, Vec<BigUint>) {
    if v.len() == 1 {
        return (vec![v[0].clone()], vec![v[0].clone()]);
    }
    let (v0, v1) = v.split_at(v.len() / 2);
    let ((x0, o0), (x1, o1)) = (apply(v0, corner), apply(v1, corner));
    let mut xv = Vec::with_capacity(v.len());
    let mut ov = Vec::with_capacity(v.len());
    for i in 0..x0.len() {
        xv.push(&x0[i] + &o1[i]);
        ov.push(&o0[i] + &x1[i]);
    }
    for i in 0..x0.len() {
        xv.push(&o0[i] + &x1[i]);
        ov.push(&x0[i] + &o1[i] * corner);
    }
    (xv, ov)
}

/// (X_k + O_k)·v.
fn step(v: &[BigUint], corner: u32) -> Vec<BigUint> {
    let (x, o) = apply(v, corner);
    x.into_iter().zip(o).map(|(a, b)| a + b).collect()
}

fn dim_for(rows: usize, cap: usize) -> Result<usize, Error> {
    let k = rows - 2;
    if k >= usize::BITS as usize - 1 || (1usize << k) > cap {
        return Err(Error::ResourceLimit(format!("state matrix dimension 2^{k} exceeds cap {cap}")));
    }
    Ok(1 << k)
}

/// The recurrence evaluated literally: dimension from `m`, power from `n`.
pub fn count_oriented(m: usize, n: usize, variant: Variant, dim_cap: usize) -> Result<BigUint, Error> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("dimensions must be positive".into()));
    }
    if m == 1 || n == 1 {
        return Ok(BigUint::one());
    }
    let dim = dim_for(m, dim_cap)?;
    let mut v = vec![BigUint::one(); dim];
    for _ in 0..n - 2 {
        v = step(&v, variant.corner());
    }
    Ok(v.iter().sum::<BigUint>() * 2u32)
}

/// Number of suitably connected m×n mosaics.
///
/// Uses the smaller side for the matrix dimension; the test suite checks that
/// both orientations agree wherever both fit under the cap.
pub fn count(m: usize, n: usize, variant: Variant, dim_cap: usize) -> Result<MosaicCount, Error> {
    let (a, b) = if m <= n { (m, n) } else { (n, m) };
    let value = count_oriented(a, b, variant, dim_cap)?;
    Ok(MosaicCount { m, n, variant, value })
}

/// Dense state matrices X_k, O_k.
pub fn state_matrices(k: usize, variant: Variant) -> (Vec<Vec<BigUint>>, Vec<Vec<BigUint>>) {
    let mut x = vec![vec![BigUint::one()]];
    let mut o = vec![vec![BigUint::one()]];
    for _ in 0..k {
        let d = x.len();
        let mut nx = vec![vec![BigUint::zero(); 2 * d]; 2 * d];
        let mut no = nx.clone();
        for i in 0..d {
            for j in 0..d {
                nx[i][j] = x[i][j].clone();
                nx[i][j + d] = o[i][j].clone();
                nx[i + d][j] = o[i][j].clone();
                nx[i + d][j + d] = x[i][j].clone();
                no[i][j] = o[i][j].clone();
                no[i][j + d] = x[i][j].clone();
                no[i + d][j] = x[i][j].clone();
                no[i + d][j + d] = &o[i][j] * variant.corner();
            }
        }
        x = nx;
        o = no;
    }
    (x, o)
}

fn mat_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let d = a.len();
    let mut c = vec![vec![BigUint::zero(); d]; d];
    for i in 0..d {
        for l in 0..d {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..d {
                c[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    c
}

/// Same quantity as [`count_oriented`] by dense repeated squaring; for
/// cross-checks at small dimension.
pub fn count_dense(m: usize, n: usize, variant: Variant) -> Result<BigUint, Error> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("dimensions must be positive".into()));
    }
    if m == 1 || n == 1 {
        return Ok(BigUint::one());
    }
    dim_for(m, 256)?;
    let (x, o) = state_matrices(m - 2, variant);
    let base: Vec<Vec<BigUint>> =
        x.iter().zip(&o).map(|(xr, or)| xr.iter().zip(or).map(|(a, b)| a + b).collect()).collect();
    let d = base.len();
    let mut result: Vec<Vec<BigUint>> =
        (0..d).map(|i| (0..d).map(|j| if i == j { BigUint::one() } else { BigUint::zero() }).collect()).collect();
    let mut sq = base;
    let mut e = n - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &sq);
        }
        e >>= 1;
        if e > 0 {
            sq = mat_mul(&sq, &sq);
        }
    }
    Ok(result.iter().flatten().sum::<BigUint>() * 2u32)
}

/// Counts for all 1 ≤ n ≤ m ≤ max_m with n ≤ max_n, in (m, n) order.
pub fn count_table(max_m: usize, max_n: usize, variant: Variant, dim_cap: usize) -> Result<Vec<MosaicCount>, Error> {
    let cells: Vec<(usize, usize)> =
        (1..=max_m).flat_map(|m| (1..=m.min(max_n)).map(move |n| (m, n))).collect();
    cells.into_par_iter().map(|(m, n)| count(m, n, variant, dim_cap)).collect()
}

/// δ(n) = D_L^{(n,n)} / D^{(n,n)} with its natural logarithm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Delta {
    pub n: usize,
    #[serde(serialize_with = "ser_rational")]
    pub ratio: BigRational,
    /// ln δ(n), rounded to the requested number of decimals.
    pub ln: String,
}

fn ser_rational<S: serde::Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn ratio_delta(n: usize, digits: usize, dim_cap: usize) -> Result<Delta, Error> {
    let l = count(n, n, Variant::Legendrian, dim_cap)?.value;
    let c = count(n, n, Variant::Classical, dim_cap)?.value;
    let ratio = BigRational::new(BigInt::from(l), BigInt::from(c));
    let ln = ln_decimal(&ratio, digits)?;
    Ok(Delta { n, ratio, ln })
}

/// Natural logarithm of a positive integer, as a fixed-point value scaled by `scale`.
fn ln_fixed(x: &BigUint, scale: &BigInt) -> BigInt {
    let e = x.bits() - 1;
    // y / scale = x / 2^e, in [1, 2)
    let y = (BigInt::from(x.clone()) * scale) >> e;
    let t_num = &y - scale;
    let t_den = &y + scale;
    let ln_m = atanh2(&t_num, &t_den, scale);
    let ln2 = atanh2(&BigInt::one(), &BigInt::from(3), scale);
    ln2 * BigInt::from(e) + ln_m
}

/// 2·atanh(num/den) in fixed point.
fn atanh2(num: &BigInt, den: &BigInt, scale: &BigInt) -> BigInt {
    let mut sum = BigInt::zero();
    let mut term = scale * num / den;
    let t2n = num * num;
    let t2d = den * den;
    let mut k = 1u32;
    while !term.is_zero() {
        sum += &term / BigInt::from(k);
        term = term * &t2n / &t2d;
        k += 2;
    }
    sum * 2
}

/// ln of a positive rational, rounded half away from zero to `digits` decimals.
pub fn ln_decimal(r: &BigRational, digits: usize) -> Result<String, Error> {
    if !r.is_positive() {
        return Err(Error::Domain("logarithm of a non-positive number".into()));
    }
    const GUARD: usize = 12;
    let scale = BigInt::from(10u32).pow((digits + GUARD) as u32);
    let p = r.numer().to_biguint().expect("positive");
    let q = r.denom().to_biguint().expect("positive");
    let v = ln_fixed(&p, &scale) - ln_fixed(&q, &scale);
    let unit = BigInt::from(10u32).pow(GUARD as u32);
    let (mut quo, rem) = v.abs().div_rem(&unit);
    if rem * 2 >= unit {
        quo += 1;
    }
    let negative = v.is_negative() && !quo.is_zero();
    let s = quo.to_string();
    let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if negative { "-" } else { "" };
    Ok(if digits == 0 { format!("{sign}{int}") } else { format!("{sign}{int}.{frac}") })
}

/// ln δ(n) as f64, for monotonicity checks.
pub fn ln_delta_f64(d: &Delta) -> f64 {
    d.ln.parse::<f64>().unwrap_or_else(|_| d.ratio.to_f64().map(f64::ln).unwrap_or(f64::NAN))
}
