//! Two-variable Laurent polynomials in (a, z) with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse Laurent polynomial; keys are (exponent of a, exponent of z).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<(i32, i32), i64>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::monomial(1, 0, 0)
    }

    pub fn monomial(coef: i64, a: i32, z: i32) -> Poly {
        let mut p = Poly::zero();
        p.add_term(coef, a, z);
        p
    }

    /// Builds from (coefficient, a-exponent, z-exponent) triples.
    pub fn from_terms(terms: &[(i64, i32, i32)]) -> Poly {
        let mut p = Poly::zero();
        for &(c, a, z) in terms {
            p.add_term(c, a, z);
        }
        p
    }

    /// (a − a⁻¹)/z, the value of the two-component unlink.
    pub fn mu() -> Poly {
        Poly::from_terms(&[(1, 1, -1), (-1, -1, -1)])
    }

    pub fn add_term(&mut self, coef: i64, a: i32, z: i32) {
        if coef == 0 {
            return;
        }
        let e = self.terms.entry((a, z)).or_insert(0);
        *e += coef;
        if *e == 0 {
            self.terms.remove(&(a, z));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as (coefficient, a-exponent, z-exponent), ordered by (z, a).
    pub fn terms(&self) -> Vec<(i64, i32, i32)> {
        let mut t: Vec<_> = self.terms.iter().map(|(&(a, z), &c)| (c, a, z)).collect();
        t.sort_by_key(|&(_, a, z)| (z, a));
        t
    }

    /// Multiplies by c·a^da·z^dz.
    pub fn shift(&self, c: i64, da: i32, dz: i32) -> Poly {
        Poly { terms: self.terms.iter().map(|(&(a, z), &k)| ((a + da, z + dz), k * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Polynomial of the mirror image: substitutes a ↦ −a⁻¹. Knots only carry
    /// even powers of a, so for them this is a ↦ a⁻¹.
    pub fn mirror(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(&(a, z), &c)| ((-a, z), if a % 2 == 0 { c } else { -c })).collect() }
    }

    /// Evaluates at a = 1 with z² = −4, which gives ±det for a knot.
    pub fn determinant(&self) -> Option<i64> {
        let mut s = 0i64;
        for (&(_, z), &c) in &self.terms {
            if z % 2 != 0 || z < 0 {
                return None;
            }
            s += c * (-4i64).pow((z / 2) as u32);
        }
        Some(s.abs())
    }

    /// Parses the output of `Display`.
    pub fn parse(s: &str) -> Option<Poly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Some(Poly::zero());
        }
        let mut p = Poly::zero();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i] != b'+' && !(bytes[i] == b'-' && i > start && bytes[i - 1] != b'^') {
                i += 1;
            }
            let term = &s[start..i];
            let (mut coef, mut a, mut z) = (1i64, 0i32, 0i32);
            for factor in term.split('*') {
                if let Some(rest) = factor.strip_prefix('a') {
                    a = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse().ok()? };
                } else if let Some(rest) = factor.strip_prefix('z') {
                    z = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse().ok()? };
                } else {
                    coef = factor.parse().ok()?;
                }
            }
            p.add_term(sign * coef, a, z);
        }
        Some(p)
    }
}

impl fmt::Display for Poly {
    /// Monomials sorted by z-degree then a-degree, e.g. `2*a^-2-a^-4+a^-2*z^2`
    /// is written `-a^-4+2*a^-2+a^-2*z^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, a, z)) in terms.into_iter().enumerate() {
            let mut factors = Vec::new();
            if a != 0 {
                factors.push(if a == 1 { "a".to_string() } else { format!("a^{a}") });
            }
            if z != 0 {
                factors.push(if z == 1 { "z".to_string() } else { format!("z^{z}") });
            }
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            if factors.is_empty() {
                write!(f, "{sign}{mag}")?;
            } else if mag == 1 {
                write!(f, "{sign}{}", factors.join("*"))?;
            } else {
                write!(f, "{sign}{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        for (&(a, z), &c) in &rhs.terms {
            p.add_term(c, a, z);
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.shift(-1, 0, 0)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (&(a1, z1), &c1) in &self.terms {
            for (&(a2, z2), &c2) in &rhs.terms {
                p.add_term(c1 * c2, a1 + a2, z1 + z2);
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        let p = Poly::from_terms(&[(2, -2, 0), (-1, -4, 0), (1, -2, 2)]);
        assert_eq!(p.to_string(), "-a^-4+2*a^-2+a^-2*z^2");
        assert_eq!(Poly::parse(&p.to_string()), Some(p));
        assert_eq!(Poly::parse("1"), Some(Poly::one()));
        assert_eq!(Poly::parse("0"), Some(Poly::zero()));
        let m = Poly::mu();
        assert_eq!(m.to_string(), "-a^-1*z^-1+a*z^-1");
        assert_eq!(Poly::parse(&m.to_string()), Some(m));
    }

    #[test]
    fn arithmetic() {
        let m = Poly::mu();
        let sq = &m * &m;
        assert_eq!(sq, Poly::from_terms(&[(1, 2, -2), (-2, 0, -2), (1, -2, -2)]));
        assert!((&m - &m).is_zero());
        // The two-component unlink is its own mirror.
        assert_eq!(m.mirror(), m);
        assert_eq!(Poly::one().determinant(), Some(1));
    }
}
