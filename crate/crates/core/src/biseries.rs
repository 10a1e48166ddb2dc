//! Bivariate truncated series: Laurent in x, with a bounded marker variable y.
//!
//! Each x-exponent column holds a sparse map from y-exponent to an exact
//! rational. The y-window clamps |y-exponent| <= window: terms outside are
//! dropped. Dropping is exact for the in-window coefficients as long as all
//! y-exponents in play are non-negative (additions are then monotone); the
//! marker assignments with negative y-exponents stay within the window by
//! construction, so callers size the window accordingly.

use crate::series::{rat_string, LaurentSeries, Rat, SeriesError};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// c · x^a · y^b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rat,
    pub x: i64,
    pub y: i64,
}

impl Monomial {
    pub fn new(x: i64, y: i64) -> Self {
        Self {
            coeff: Rat::one(),
            x,
            y,
        }
    }

    pub fn one() -> Self {
        Self::new(0, 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            coeff: &self.coeff * &other.coeff,
            x: self.x + other.x,
            y: self.y + other.y,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Monomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn inv(&self) -> Self {
        assert!(!self.coeff.is_zero(), "inverting a zero monomial");
        Self {
            coeff: Rat::one() / &self.coeff,
            x: -self.x,
            y: -self.y,
        }
    }
}

type Col = BTreeMap<i64, Rat>;

#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    min_exp: i64,
    order: i64,
    y_window: i64,
    /// cols[i] holds the y-polynomial at x^(min_exp + i); no zero entries.
    cols: Vec<Col>,
}

impl BiSeries {
    pub fn zero(order: i64, y_window: i64) -> Self {
        Self {
            min_exp: order + 1,
            order,
            y_window,
            cols: Vec::new(),
        }
    }

    pub fn from_monomial(m: &Monomial, order: i64, y_window: i64) -> Self {
        let mut s = Self::zero(order, y_window);
        s.accumulate(m.x, m.y, m.coeff.clone());
        s.normalize();
        s
    }

    pub fn one(order: i64, y_window: i64) -> Self {
        Self::from_monomial(&Monomial::one(), order, y_window)
    }

    pub fn from_laurent(s: &LaurentSeries, y_window: i64) -> Self {
        let mut out = Self::zero(s.order(), y_window);
        for e in s.min_exp()..=s.order() {
            let c = s.coeff(e).expect("exponent within order");
            if !c.is_zero() {
                out.accumulate(e, 0, c);
            }
        }
        out.normalize();
        out
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn y_window(&self) -> i64 {
        self.y_window
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    fn accumulate(&mut self, x: i64, y: i64, c: Rat) {
        if c.is_zero() || x > self.order || y.abs() > self.y_window {
            return;
        }
        if self.cols.is_empty() {
            self.min_exp = x;
            self.cols.push(Col::new());
        } else if x < self.min_exp {
            let grow = (self.min_exp - x) as usize;
            for _ in 0..grow {
                self.cols.insert(0, Col::new());
            }
            self.min_exp = x;
        } else if x >= self.min_exp + self.cols.len() as i64 {
            let grow = (x - self.min_exp - self.cols.len() as i64 + 1) as usize;
            for _ in 0..grow {
                self.cols.push(Col::new());
            }
        }
        let col = &mut self.cols[(x - self.min_exp) as usize];
        let entry = col.entry(y).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            col.remove(&y);
        }
    }

    fn normalize(&mut self) {
        while self.cols.first().map(|c| c.is_empty()).unwrap_or(false) {
            self.cols.remove(0);
            self.min_exp += 1;
        }
        while self.cols.last().map(|c| c.is_empty()).unwrap_or(false) {
            self.cols.pop();
        }
        if self.cols.is_empty() {
            self.min_exp = self.order + 1;
        }
    }

    /// Exact coefficient of x^xe·y^ye; errors beyond the x truncation order.
    pub fn coeff(&self, xe: i64, ye: i64) -> Result<Rat, SeriesError> {
        if xe > self.order {
            return Err(SeriesError::CoeffOutOfRange {
                exp: xe,
                order: self.order,
            });
        }
        let idx = xe - self.min_exp;
        if idx < 0 || idx as usize >= self.cols.len() {
            return Ok(Rat::zero());
        }
        Ok(self.cols[idx as usize]
            .get(&ye)
            .cloned()
            .unwrap_or_else(Rat::zero))
    }

    /// Non-empty (y → coefficient) column at x^xe.
    pub fn column(&self, xe: i64) -> Col {
        let idx = xe - self.min_exp;
        if idx < 0 || idx as usize >= self.cols.len() {
            Col::new()
        } else {
            self.cols[idx as usize].clone()
        }
    }

    pub fn truncated(&self, order: i64) -> Self {
        let order = order.min(self.order);
        let mut out = Self::zero(order, self.y_window);
        for (i, col) in self.cols.iter().enumerate() {
            let x = self.min_exp + i as i64;
            if x > order {
                break;
            }
            for (&y, c) in col {
                out.accumulate(x, y, c.clone());
            }
        }
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for col in &mut out.cols {
            for c in col.values_mut() {
                *c = -c.clone();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let y_window = self.y_window.min(other.y_window);
        let mut out = Self::zero(order, y_window);
        for (i, col) in self.cols.iter().enumerate() {
            let x = self.min_exp + i as i64;
            for (&y, c) in col {
                out.accumulate(x, y, c.clone());
            }
        }
        for (i, col) in other.cols.iter().enumerate() {
            let x = other.min_exp + i as i64;
            for (&y, c) in col {
                out.accumulate(x, y, c.clone());
            }
        }
        out.normalize();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.min_exp).min(other.order + self.min_exp);
        let y_window = self.y_window.min(other.y_window);
        let mut out = Self::zero(order, y_window);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (i, ca) in self.cols.iter().enumerate() {
            let xa = self.min_exp + i as i64;
            for (j, cb) in other.cols.iter().enumerate() {
                let x = xa + other.min_exp + j as i64;
                if x > order {
                    break;
                }
                for (&ya, a) in ca {
                    for (&yb, b) in cb {
                        out.accumulate(x, ya + yb, a * b);
                    }
                }
            }
        }
        out.normalize();
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut out = Self::zero(self.order + m.x, self.y_window);
        for (i, col) in self.cols.iter().enumerate() {
            let x = self.min_exp + i as i64 + m.x;
            for (&y, c) in col {
                out.accumulate(x, y + m.y, c * &m.coeff);
            }
        }
        out.normalize();
        out
    }

    /// The leading x-column as a monomial, when it has exactly one y-term.
    fn leading_monomial(&self) -> Option<Monomial> {
        let col = self.cols.first()?;
        if col.len() != 1 {
            return None;
        }
        let (&y, c) = col.iter().next().unwrap();
        Some(Monomial {
            coeff: c.clone(),
            x: self.min_exp,
            y,
        })
    }

    /// Reciprocal. Requires the lowest x-column to be a single y-monomial L,
    /// so that self = L·(1 + R) with R of positive x-degree; then
    /// 1/self = L⁻¹·Σ (−R)^k, truncated.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        let lead = self.leading_monomial().ok_or(SeriesError::DivisionByZero)?;
        let v = self.min_exp;
        let order = self.order - 2 * v;
        let rel = self.mul_monomial(&lead.inv()).truncated(self.order - v);
        // rel = 1 + R with R.min_exp >= 1
        let r = rel.sub(&Self::one(rel.order(), self.y_window));
        debug_assert!(r.is_zero() || r.min_exp() >= 1);
        let mut acc = Self::one(order + v, self.y_window);
        let mut term = Self::one(order + v, self.y_window);
        let neg_r = r.neg();
        loop {
            term = term.mul(&neg_r).truncated(order + v);
            if term.is_zero() || term.min_exp() > order + v {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc.mul_monomial(&lead.inv()).truncated(order))
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.recip()?))
    }

    /// Sets y = 1, collapsing to a univariate series in x.
    pub fn collapse_y(&self) -> LaurentSeries {
        let mut coeffs = Vec::with_capacity(self.cols.len());
        for col in &self.cols {
            let mut acc = Rat::zero();
            for c in col.values() {
                acc += c;
            }
            coeffs.push(acc);
        }
        LaurentSeries::from_coeffs(self.min_exp, coeffs, self.order)
    }

    /// Extracts the series in x multiplying y^ye.
    pub fn y_slice(&self, ye: i64) -> LaurentSeries {
        let mut coeffs = Vec::with_capacity(self.cols.len());
        for col in &self.cols {
            coeffs.push(col.get(&ye).cloned().unwrap_or_else(Rat::zero));
        }
        LaurentSeries::from_coeffs(self.min_exp, coeffs, self.order)
    }

    /// All (x_exp, y_exp, coefficient) triples in lexicographic order.
    pub fn terms(&self) -> Vec<(i64, i64, Rat)> {
        let mut out = Vec::new();
        for (i, col) in self.cols.iter().enumerate() {
            let x = self.min_exp + i as i64;
            for (&y, c) in col {
                out.push((x, y, c.clone()));
            }
        }
        out
    }

    /// Re-windows in y (only meaningful when widening before arithmetic).
    pub fn with_y_window(&self, y_window: i64) -> Self {
        let mut out = Self::zero(self.order, y_window);
        for (x, y, c) in self.terms() {
            out.accumulate(x, y, c);
        }
        out.normalize();
        out
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O(x^{})", self.order + 1);
        }
        let mut wrote = false;
        for (x, y, c) in self.terms() {
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            wrote = true;
            let mag = c.abs();
            if !mag.is_one() || (x == 0 && y == 0) {
                write!(f, "{}", rat_string(&mag))?;
                if x != 0 || y != 0 {
                    f.write_str("*")?;
                }
            }
            match x {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{x}")?,
            }
            if x != 0 && y != 0 {
                f.write_str("*")?;
            }
            match y {
                0 => {}
                1 => write!(f, "y")?,
                _ => write!(f, "y^{y}")?,
            }
        }
        write!(f, " + O(x^{})", self.order + 1)
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiSeries({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn mono(x: i64, y: i64) -> BiSeries {
        BiSeries::from_monomial(&Monomial::new(x, y), 12, 20)
    }

    #[test]
    fn mul_adds_exponents_in_both_variables() {
        let a = mono(2, 1).add(&mono(3, -1));
        let b = mono(1, 1);
        let prod = a.mul(&b);
        assert_eq!(prod.coeff(3, 2).unwrap(), rat(1));
        assert_eq!(prod.coeff(4, 0).unwrap(), rat(1));
    }

    #[test]
    fn recip_of_one_minus_xy() {
        let s = BiSeries::one(10, 20).sub(&mono(1, 1).truncated(10));
        let inv = s.recip().unwrap();
        for e in 0..=10 {
            assert_eq!(inv.coeff(e, e).unwrap(), rat(1), "x^{e}y^{e}");
            if e > 0 {
                assert_eq!(inv.coeff(e, e - 1).unwrap(), rat(0));
            }
        }
        let round_trip = s.mul(&inv);
        assert_eq!(round_trip.truncated(9), BiSeries::one(9, 20));
    }

    #[test]
    fn recip_of_laurent_led_series() {
        // 1/(x·y^{-1} + x^2) = x^{-1}y - y^2 + x y^3 - …
        let s = mono(1, -1).add(&mono(2, 0));
        let inv = s.recip().unwrap();
        assert_eq!(inv.coeff(-1, 1).unwrap(), rat(1));
        assert_eq!(inv.coeff(0, 2).unwrap(), rat(-1));
        assert_eq!(inv.coeff(1, 3).unwrap(), rat(1));
    }

    #[test]
    fn collapse_and_slice() {
        let s = mono(2, 1).add(&mono(2, 3)).add(&mono(4, 0));
        let total = s.collapse_y();
        assert_eq!(total.coeff(2).unwrap(), rat(2));
        assert_eq!(total.coeff(4).unwrap(), rat(1));
        let slice = s.y_slice(3);
        assert_eq!(slice.coeff(2).unwrap(), rat(1));
        assert_eq!(slice.coeff(4).unwrap(), rat(0));
    }

    #[test]
    fn y_window_drops_high_marker_terms() {
        let mut narrow = BiSeries::zero(8, 2);
        narrow.accumulate(1, 3, rat(5));
        narrow.accumulate(1, 2, rat(7));
        narrow.normalize();
        assert_eq!(narrow.coeff(1, 3).unwrap(), rat(0));
        assert_eq!(narrow.coeff(1, 2).unwrap(), rat(7));
    }
}
