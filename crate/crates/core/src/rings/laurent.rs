//! Laurent polynomials ℤ[x, x⁻¹].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), 0)
    }

    pub fn monomial(c: BigInt, d: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(d, c);
        p
    }

    /// `x^d`.
    pub fn x_pow(d: i64) -> Self {
        Self::monomial(BigInt::one(), d)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: i64) -> Self {
        &Self::x_pow(n) - &Self::one()
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c.into());
        }
        p
    }

    fn add_term(&mut self, d: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(d).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, d: i64) -> BigInt {
        self.coeffs.get(&d).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn deg_min(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn deg_max(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiplies by `x^s`.
    pub fn shift(&self, s: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (d + s, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(d, v)| (*d, v * c)))
    }

    /// `f(x^n)`.
    pub fn compose_power(&self, n: i64) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(d, c)| (d * n, c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient `f / self` in ℤ[x, x⁻¹], if it exists.
    pub fn divides(&self, f: &LaurentPoly) -> Result<Option<LaurentPoly>> {
        let (Some(dmin), Some(_)) = (self.deg_min(), self.deg_max()) else {
            return Err(Error::DivisionByZero);
        };
        let Some(fmin) = f.deg_min() else {
            return Ok(Some(Self::zero()));
        };
        let divisor = self.shift(-dmin);
        let mut rem = f.shift(-fmin);
        let dmax = divisor.deg_max().expect("nonzero");
        let lead = divisor.coeff(dmax);
        let mut quotient = Self::zero();
        while let Some(rmax) = rem.deg_max() {
            if rmax < dmax {
                return Ok(None);
            }
            let (q, r) = rem.coeff(rmax).div_rem(&lead);
            if !r.is_zero() {
                return Ok(None);
            }
            let step = Self::monomial(q, rmax - dmax);
            rem = &rem - &(&divisor * &step);
            quotient = &quotient + &step;
        }
        Ok(Some(quotient.shift(fmin - dmin)))
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &rhs.coeffs {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for LaurentPoly {
    /// Renders as `c*x^d + …` in descending degree; the zero polynomial is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(d, c)| format!("{c}*x^{d}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let compact: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pieces: Vec<String> = Vec::new();
        let mut current = String::new();
        for (idx, &ch) in compact.iter().enumerate() {
            let starts_term = match ch {
                '+' => true,
                '-' => idx > 0 && !matches!(compact[idx - 1], '^' | '*' | '+'),
                _ => false,
            };
            if starts_term {
                pieces.push(std::mem::take(&mut current));
                if ch == '+' {
                    continue;
                }
            }
            current.push(ch);
        }
        pieces.push(current);
        let mut poly = LaurentPoly::zero();
        for piece in pieces {
            let (c, d) = parse_term(&piece).ok_or_else(|| Error::Syntax {
                pos: 0,
                msg: format!("bad Laurent term `{piece}` in `{src}`"),
            })?;
            poly.add_term(d, c);
        }
        Ok(poly)
    }
}

fn parse_term(term: &str) -> Option<(BigInt, i64)> {
    if term.is_empty() {
        return None;
    }
    let (coeff, power) = match term.find('x') {
        None => return BigInt::from_str(term).ok().map(|c| (c, 0)),
        Some(pos) => (&term[..pos], &term[pos + 1..]),
    };
    let coeff = match coeff.strip_suffix('*').unwrap_or(coeff) {
        "" | "+" => BigInt::one(),
        "-" => -BigInt::one(),
        c => BigInt::from_str(c).ok()?,
    };
    let degree = match power {
        "" => 1,
        p => p.strip_prefix('^')?.parse().ok()?,
    };
    Some((coeff, degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str) -> LaurentPoly {
        src.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x - 1") * &p("x + 1"), p("x^2 - 1"));
        assert_eq!(&p("x^-1") * &p("x"), LaurentPoly::one());
        assert!((&p("x^2 - 1") * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn divides_examples() {
        let q = p("x^2 - 1").divides(&p("x^6 - 1")).unwrap();
        assert_eq!(q, Some(p("x^4 + x^2 + 1")));
        assert_eq!(p("x^4 - 1").divides(&p("x^6 - 1")).unwrap(), None);
        let d = LaurentPoly::x_pow_minus_one(-3);
        let f = LaurentPoly::x_pow_minus_one(6);
        let q = d.divides(&f).unwrap().expect("-3 divides 6");
        assert_eq!(&d * &q, f);
        assert_eq!(
            LaurentPoly::zero().divides(&f),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn rendering_round_trips() {
        let f = p("3*x^-2 - x + 7");
        assert_eq!(f.to_string(), "-1*x^1 + 7*x^0 + 3*x^-2");
        assert_eq!(f.to_string().parse::<LaurentPoly>().unwrap(), f);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("0"), LaurentPoly::zero());
    }
}
