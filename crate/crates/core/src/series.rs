//! Truncated Laurent series over arbitrary-precision rationals.
//!
//! A series stores the exact coefficients of x^min_exp .. x^order; exponents
//! above `order` are unknown, exponents below `min_exp` are zero. Everything
//! is exact — no floating point anywhere in this crate.
//!
//! Invariants:
//! - the leading stored coefficient is nonzero (representation is trimmed);
//! - the zero series has `min_exp == order + 1` and no coefficients;
//! - reading a coefficient beyond `order` is an explicit error, never 0.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Formats a rational as `p` or `p/q`.
pub fn rat_string(v: &Rat) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn rat_from_string(text: &str) -> Option<Rat> {
    match text.split_once('/') {
        None => text.parse::<BigInt>().ok().map(Rat::from_integer),
        Some((p, q)) => {
            let p = p.parse::<BigInt>().ok()?;
            let q = q.parse::<BigInt>().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    min_exp: i64,
    order: i64,
    coeffs: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Coefficient requested beyond the truncation order.
    CoeffOutOfRange { exp: i64, order: i64 },
    /// Division by the identically-zero series.
    DivisionByZero,
    /// Non-integer exponent on a series whose lowest term is not 1·x^0.
    FractionalPowerOfNonUnit,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::CoeffOutOfRange { exp, order } => write!(
                f,
                "coefficient of x^{exp} is beyond the truncation order {order}"
            ),
            SeriesError::DivisionByZero => write!(f, "division by the zero series"),
            SeriesError::FractionalPowerOfNonUnit => write!(
                f,
                "fractional power requires a series with constant term 1 and min_exp 0"
            ),
        }
    }
}

impl std::error::Error for SeriesError {}

impl LaurentSeries {
    /// The zero series, known up to `order`.
    pub fn zero(order: i64) -> Self {
        Self {
            min_exp: order + 1,
            order,
            coeffs: Vec::new(),
        }
    }

    /// c · x^exp, known up to `order`.
    pub fn monomial(c: Rat, exp: i64, order: i64) -> Self {
        if c.is_zero() || exp > order {
            return Self::zero(order);
        }
        Self {
            min_exp: exp,
            order,
            coeffs: vec![c],
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(Rat::one(), 0, order)
    }

    /// Builds from coefficients of x^min_exp, x^{min_exp+1}, ….
    pub fn from_coeffs(min_exp: i64, coeffs: Vec<Rat>, order: i64) -> Self {
        let mut s = Self {
            min_exp,
            order,
            coeffs,
        };
        s.normalize();
        s
    }

    /// Polynomial in x with ascending integer-exponent coefficients from 0.
    pub fn from_ascending(coeffs: &[i64], order: i64) -> Self {
        Self::from_coeffs(0, coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    fn normalize(&mut self) {
        // drop anything stored beyond the order
        if self.min_exp + self.coeffs.len() as i64 > self.order + 1 {
            let keep = (self.order + 1 - self.min_exp).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while let Some(first) = self.coeffs.first() {
            if first.is_zero() {
                self.coeffs.remove(0);
                self.min_exp += 1;
            } else {
                break;
            }
        }
        while let Some(last) = self.coeffs.last() {
            if last.is_zero() {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        if self.coeffs.is_empty() {
            self.min_exp = self.order + 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first nonzero term (`order + 1` for the zero series).
    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Highest exponent with a trusted coefficient.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Exact coefficient of x^exp; zero below `min_exp`, error above `order`.
    pub fn coeff(&self, exp: i64) -> Result<Rat, SeriesError> {
        if exp > self.order {
            return Err(SeriesError::CoeffOutOfRange {
                exp,
                order: self.order,
            });
        }
        let idx = exp - self.min_exp;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Ok(Rat::zero())
        } else {
            Ok(self.coeffs[idx as usize].clone())
        }
    }

    /// Re-truncates to a (possibly lower) order.
    pub fn truncated(&self, order: i64) -> Self {
        let mut s = self.clone();
        s.order = order.min(self.order);
        s.normalize();
        s
    }

    /// Multiplies by x^shift.
    pub fn shifted(&self, shift: i64) -> Self {
        Self {
            min_exp: self.min_exp + shift,
            order: self.order + shift,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            min_exp: self.min_exp,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        Self {
            min_exp: self.min_exp,
            order: self.order,
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        if self.is_zero() {
            return other.truncated(order);
        }
        if other.is_zero() {
            return self.truncated(order);
        }
        let min_exp = self.min_exp.min(other.min_exp);
        let top = (self.min_exp + self.coeffs.len() as i64 - 1)
            .max(other.min_exp + other.coeffs.len() as i64 - 1)
            .min(order);
        if top < min_exp {
            return Self::zero(order);
        }
        let mut coeffs = vec![Rat::zero(); (top - min_exp + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.min_exp + i as i64;
            if e <= top {
                coeffs[(e - min_exp) as usize] += c;
            }
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let e = other.min_exp + i as i64;
            if e <= top {
                coeffs[(e - min_exp) as usize] += c;
            }
        }
        Self::from_coeffs(min_exp, coeffs, order)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        // x^e is determined iff e - other.min_exp <= self.order and
        // e - self.min_exp <= other.order.
        let order = (self.order + other.min_exp).min(other.order + self.min_exp);
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let min_exp = self.min_exp + other.min_exp;
        if min_exp > order {
            return Self::zero(order);
        }
        let mut coeffs = vec![Rat::zero(); (order - min_exp + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.min_exp + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = ea + other.min_exp + j as i64;
                if e > order {
                    break;
                }
                if !b.is_zero() {
                    coeffs[(e - min_exp) as usize] += a * b;
                }
            }
        }
        Self::from_coeffs(min_exp, coeffs, order)
    }

    /// Reciprocal. The divisor's leading exponent is shifted out first, so
    /// Laurent units like x^{-1}(1 + …) invert exactly.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        let v = self.min_exp;
        // unit = self / x^v, constant term nonzero, known to relative order m
        let m = self.order - v;
        let lead = self.coeffs[0].clone();
        let mut inv = vec![Rat::zero(); (m + 1) as usize];
        inv[0] = Rat::one() / &lead;
        for e in 1..=m {
            // coefficient of x^e in unit * inv must vanish
            let mut acc = Rat::zero();
            for j in 0..e {
                let ue = e - j;
                if (ue as usize) < self.coeffs.len() {
                    let u = &self.coeffs[ue as usize];
                    if !u.is_zero() && !inv[j as usize].is_zero() {
                        acc += u * &inv[j as usize];
                    }
                }
            }
            inv[e as usize] = -acc / &lead;
        }
        Ok(Self::from_coeffs(-v, inv, m - v))
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.recip()?))
    }

    /// Generalized power a^(num/den) with den ∈ {1, 2}.
    ///
    /// Fractional exponents require constant term 1 at x^0; the expansion is
    /// the generalized binomial series on (1 + u), kept exact throughout.
    pub fn pow(&self, num: i64, den: i64) -> Result<Self, SeriesError> {
        assert!(den == 1 || den == 2, "only integer and half-integer powers");
        if den == 1 {
            return self.pow_integer(num);
        }
        if num % 2 == 0 {
            return self.pow_integer(num / 2);
        }
        if self.min_exp != 0 || self.coeffs.first().map(|c| !c.is_one()).unwrap_or(true) {
            return Err(SeriesError::FractionalPowerOfNonUnit);
        }
        let order = self.order;
        let u = self.sub(&Self::one(order)); // min_exp >= 1
        let exponent = Rat::new(BigInt::from(num), BigInt::from(den));
        let mut result = Self::one(order);
        let mut term = Self::one(order);
        let mut m: i64 = 0;
        loop {
            m += 1;
            // binom(p, m) accumulated one factor at a time
            let factor = (exponent.clone() - rat(m - 1)) / rat(m);
            term = term.mul(&u).scale(&factor);
            if term.is_zero() || term.min_exp() > order {
                break;
            }
            result = result.add(&term);
        }
        Ok(result)
    }

    fn pow_integer(&self, p: i64) -> Result<Self, SeriesError> {
        if p == 0 {
            return Ok(Self::one(self.order));
        }
        let base = if p < 0 { self.recip()? } else { self.clone() };
        let mut exp = p.unsigned_abs();
        let mut acc = Self::one(base.order());
        let mut sq = base;
        loop {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            sq = sq.mul(&sq);
        }
        Ok(acc)
    }

    /// Square root of a unit series (constant term 1).
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        self.pow(1, 2)
    }

    /// Substitutes x ↦ x², doubling every exponent.
    pub fn compose_x_squared(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() * 2);
        for c in &self.coeffs {
            coeffs.push(c.clone());
            coeffs.push(Rat::zero());
        }
        Self::from_coeffs(self.min_exp * 2, coeffs, self.order * 2 + 1)
    }

    /// Integer coefficient of x^exp, or the offending exact rational.
    pub fn integer_coeff(&self, exp: i64) -> Result<Result<BigInt, Rat>, SeriesError> {
        let c = self.coeff(exp)?;
        if c.denom().is_one() {
            Ok(Ok(c.numer().clone()))
        } else {
            Ok(Err(c))
        }
    }

    /// Serializable form: exact `"p/q"` strings, never floats.
    pub fn to_repr(&self) -> SeriesRepr {
        SeriesRepr {
            min_exp: self.min_exp,
            order: self.order,
            coeffs: self.coeffs.iter().map(rat_string).collect(),
        }
    }

    pub fn from_repr(repr: &SeriesRepr) -> Option<Self> {
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| rat_from_string(s))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_coeffs(repr.min_exp, coeffs, repr.order))
    }
}

/// JSON form of a series: `{min_exp, order, coeffs: ["p/q", …]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesRepr {
    pub min_exp: i64,
    pub order: i64,
    pub coeffs: Vec<String>,
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O(x^{})", self.order + 1);
        }
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_exp + i as i64;
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            wrote = true;
            let mag = c.abs();
            match e {
                0 => write!(f, "{}", rat_string(&mag))?,
                1 if mag.is_one() => write!(f, "x")?,
                1 => write!(f, "{}*x", rat_string(&mag))?,
                _ if mag.is_one() => write!(f, "x^{e}")?,
                _ => write!(f, "{}*x^{e}", rat_string(&mag))?,
            }
        }
        write!(f, " + O(x^{})", self.order + 1)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({})", self)
    }
}
