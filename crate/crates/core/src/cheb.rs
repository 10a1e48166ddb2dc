//! Chebyshev polynomials of the second kind, their x-reversed companions,
//! the R_k kernel, and a truncated continued-fraction evaluator.
//!
//! The reversed polynomials p_m(x) = x^m·U_m(1/(2x)) satisfy
//! p_m = p_{m-1} - x²·p_{m-2} with p_{-1} = 0, p_0 = p_1 = 1, and turn every
//! ratio U_a(1/(2x))/U_b(1/(2x)) into x^{b-a}·p_a(x)/p_b(x). All such ratios
//! are computed through these polynomials plus explicit x-power shifts, so
//! every intermediate is a finite object.

use crate::biseries::{BiSeries, Monomial};
use crate::series::{rat, LaurentSeries, Rat, SeriesError};
use num_traits::{One, Zero};
use std::fmt;

/// Dense polynomial, ascending degree, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![Rat::one()],
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rat {
        self.coeffs.get(d).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        Self::new(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    /// Multiplies by the scalar c·x^shift.
    pub fn mul_monomial(&self, c: &Rat, shift: usize) -> Self {
        if self.is_zero() || c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); shift];
        coeffs.extend(self.coeffs.iter().map(|v| v * c));
        Self::new(coeffs)
    }

    /// Views the polynomial as a truncated series known up to `order`.
    pub fn to_series(&self, order: i64) -> LaurentSeries {
        LaurentSeries::from_coeffs(0, self.coeffs.clone(), order)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coeffs.iter().map(crate::series::rat_string).collect::<Vec<_>>())
    }
}

/// U_r(t): U_{-1} = 0, U_0 = 1, U_1 = 2t, U_r = 2t·U_{r-1} - U_{r-2}.
///
/// The r = -1 extension makes the k = 2 base cases of the pattern formulas
/// vanish, matching the catalogued small cases.
pub fn chebyshev_u(r: i64) -> Polynomial {
    assert!(r >= -1, "chebyshev_u requires r >= -1, got {r}");
    if r == -1 {
        return Polynomial::zero();
    }
    let two_t = Polynomial::from_ints(&[0, 2]);
    let mut prev = Polynomial::zero(); // U_{-1}
    let mut cur = Polynomial::one(); // U_0
    for _ in 0..r {
        let next = two_t.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// p_m(x) = x^m·U_m(1/(2x)): p_{-1} = 0, p_0 = p_1 = 1, p_m = p_{m-1} - x²·p_{m-2}.
pub fn reversed_u(m: i64) -> Polynomial {
    assert!(m >= -1, "reversed_u requires m >= -1, got {m}");
    if m == -1 {
        return Polynomial::zero();
    }
    let x2 = Polynomial::from_ints(&[0, 0, 1]);
    let mut prev = Polynomial::zero(); // p_{-1}
    let mut cur = Polynomial::one(); // p_0
    for _ in 0..m {
        let next = cur.sub(&x2.mul(&prev));
        prev = cur;
        cur = next;
    }
    cur
}

/// R_0 = 0, R_k = 1/(1 - x·R_{k-1}), as a truncated series.
pub fn r_series(k: u32, order: i64) -> LaurentSeries {
    let mut r = LaurentSeries::zero(order);
    let one = LaurentSeries::one(order);
    let x = LaurentSeries::monomial(Rat::one(), 1, order);
    for _ in 0..k {
        let den = one.sub(&x.mul(&r)).truncated(order);
        r = one
            .div(&den)
            .expect("denominator has constant term 1")
            .truncated(order);
    }
    r
}

/// Continued-fraction nesting patterns.
///
/// With per-level monomials m_d (and an anchor monomial for the second
/// shape), the finite evaluation with tail 0 is:
/// - `NestedSquare`:  T_d = -m_d² / (m_d - 1/(m_{d+1} + T_{d+1}))
/// - `AnchoredPair`:  T_d = -(x1²·m_d) / (x1·m_d - 1/(x1 + T_{d+1}))
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CfShape {
    NestedSquare,
    AnchoredPair,
}

/// A fully materialized continued-fraction specification.
#[derive(Clone, Debug)]
pub struct CFSpec {
    pub shape: CfShape,
    /// Levels 0.. (must cover depth+2 levels for the stability check).
    pub levels: Vec<Monomial>,
    /// Anchor x1 monomial; used by `AnchoredPair` only.
    pub anchor: Monomial,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfError {
    /// Coefficients up to the order changed between depth and depth+1.
    Unstable { depth: usize, order: i64 },
    /// A level numerator with non-positive x-degree cannot converge.
    BadLevel { level: usize },
    /// Not enough materialized levels for the requested depth.
    MissingLevels { have: usize, need: usize },
    Series(SeriesError),
}

impl fmt::Display for CfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfError::Unstable { depth, order } => write!(
                f,
                "continued fraction not stable at depth {depth} for order {order}; \
                 evaluate with a deeper depth"
            ),
            CfError::BadLevel { level } => write!(
                f,
                "level {level} numerator has non-positive x-degree; truncation would not converge"
            ),
            CfError::MissingLevels { have, need } => {
                write!(f, "spec provides {have} levels but depth requires {need}")
            }
            CfError::Series(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CfError {}

impl From<SeriesError> for CfError {
    fn from(e: SeriesError) -> Self {
        CfError::Series(e)
    }
}

fn eval_at_depth(
    spec: &CFSpec,
    depth: usize,
    order: i64,
    y_window: i64,
) -> Result<BiSeries, CfError> {
    let need = depth + 1;
    if spec.levels.len() < need {
        return Err(CfError::MissingLevels {
            have: spec.levels.len(),
            need,
        });
    }
    // Tail starts at zero and the recursion runs bottom-up.
    let mut tail = BiSeries::zero(order, y_window);
    for d in (0..depth).rev() {
        let m = &spec.levels[d];
        tail = match spec.shape {
            CfShape::NestedSquare => {
                if m.x <= 0 {
                    return Err(CfError::BadLevel { level: d });
                }
                let next = &spec.levels[d + 1];
                let inner = BiSeries::from_monomial(next, order, y_window).add(&tail);
                let den = BiSeries::from_monomial(m, order, y_window).sub(&inner.recip()?);
                let num = BiSeries::from_monomial(&m.mul(m), order, y_window);
                num.div(&den)?.neg().truncated(order)
            }
            CfShape::AnchoredPair => {
                let x1 = &spec.anchor;
                let num_mono = x1.mul(x1).mul(m);
                if num_mono.x <= 0 {
                    return Err(CfError::BadLevel { level: d });
                }
                let inner = BiSeries::from_monomial(x1, order, y_window).add(&tail);
                let den = BiSeries::from_monomial(&x1.mul(m), order, y_window)
                    .sub(&inner.recip()?);
                let num = BiSeries::from_monomial(&num_mono, order, y_window);
                num.div(&den)?.neg().truncated(order)
            }
        };
    }
    Ok(tail.truncated(order))
}

/// Evaluates the continued fraction at `spec.depth`, then re-evaluates one
/// level deeper and verifies that no coefficient with x-exponent <= order
/// changed. A depth of ⌈order/2⌉ + 2 is always sufficient here because every
/// level numerator carries x-degree >= 2.
pub fn cf_eval(spec: &CFSpec, order: i64, y_window: i64) -> Result<BiSeries, CfError> {
    let at_depth = eval_at_depth(spec, spec.depth, order, y_window)?;
    let deeper = eval_at_depth(spec, spec.depth + 1, order, y_window)?;
    if at_depth != deeper {
        return Err(CfError::Unstable {
            depth: spec.depth,
            order,
        });
    }
    Ok(at_depth)
}

/// Default evaluation depth for a given truncation order.
pub fn default_cf_depth(order: i64) -> usize {
    (order.max(0) as usize).div_ceil(2) + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn chebyshev_u_base_cases_and_recurrence() {
        assert!(chebyshev_u(-1).is_zero());
        assert_eq!(chebyshev_u(0), Polynomial::from_ints(&[1]));
        assert_eq!(chebyshev_u(1), Polynomial::from_ints(&[0, 2]));
        assert_eq!(chebyshev_u(2), Polynomial::from_ints(&[-1, 0, 4]));
        for r in 0..=8i64 {
            assert_eq!(chebyshev_u(r).degree(), Some(r as usize));
        }
    }

    #[test]
    fn reversed_u_small_cases() {
        assert!(reversed_u(-1).is_zero());
        assert_eq!(reversed_u(0), Polynomial::one());
        assert_eq!(reversed_u(1), Polynomial::one());
        assert_eq!(reversed_u(2), Polynomial::from_ints(&[1, 0, -1]));
        assert_eq!(reversed_u(3), Polynomial::from_ints(&[1, 0, -2]));
    }

    #[test]
    fn reversed_u_matches_substitution_into_chebyshev_u() {
        // p_m(x) as a series equals x^m · U_m(t) at t = 1/(2x), computed with
        // Laurent arithmetic on the right-hand side.
        let order = 12;
        for m in 0..=10i64 {
            let u = chebyshev_u(m);
            // evaluate U_m at 1/(2x): sum of coeff_d · (2x)^{-d}
            let mut acc = LaurentSeries::zero(order);
            for (d, c) in u.coeffs().iter().enumerate() {
                let scaled = c / rat(2i64.pow(d as u32));
                acc = acc.add(&LaurentSeries::monomial(scaled, -(d as i64), order));
            }
            let rhs = acc.shifted(m); // x^m · U_m(1/(2x))
            let lhs = reversed_u(m).to_series(rhs.order());
            assert_eq!(lhs, rhs, "m={m}");
        }
    }

    #[test]
    fn r_series_small_kernels() {
        let order = 10;
        assert!(r_series(0, order).is_zero());
        assert_eq!(r_series(1, order), LaurentSeries::one(order));
        // R_2 = 1/(1-x)
        let r2 = r_series(2, order);
        for e in 0..=order {
            assert_eq!(r2.coeff(e).unwrap(), rat(1));
        }
        // R_4 = (1-2x)/(1-3x+x^2) = 1 + x + 2x^2 + 5x^3 + 13x^4 + …
        let r4 = r_series(4, order);
        for (e, want) in [1i64, 1, 2, 5, 13, 34].iter().enumerate() {
            assert_eq!(r4.coeff(e as i64).unwrap(), rat(*want), "x^{e}");
        }
        let direct = LaurentSeries::from_ascending(&[1, -2], order)
            .div(&LaurentSeries::from_ascending(&[1, -3, 1], order))
            .unwrap();
        assert_eq!(r4, direct);
    }

    #[test]
    fn r_series_satisfies_kernel_recurrence() {
        let order = 16;
        for k in 1..=10u32 {
            let rk = r_series(k, order);
            let rk1 = r_series(k - 1, order);
            let x = LaurentSeries::monomial(Rat::one(), 1, order);
            let prod = rk.mul(&LaurentSeries::one(order).sub(&x.mul(&rk1)));
            assert_eq!(prod.truncated(order - 1), LaurentSeries::one(order - 1), "k={k}");
        }
    }

    #[test]
    fn r_series_equals_reversed_u_ratio() {
        // R_k(x) = p_{k-1}(√x)/p_k(√x): both reversed polynomials are even,
        // so substitute x² and compare against R_k(x²).
        let order = 20;
        for k in 1..=8i64 {
            let num = reversed_u(k - 1).to_series(order);
            let den = reversed_u(k).to_series(order);
            let ratio = num.div(&den).unwrap(); // = R_k(x²), reversed polys are even
            let rk_sq = r_series(k as u32, order).compose_x_squared();
            assert_eq!(rk_sq.truncated(order), ratio.truncated(order), "k={k}");
        }
    }

    /// The 132-avoiding up-down series: (1 - 2x² - √(1-4x²))/(2x).
    fn chat(order: i64) -> LaurentSeries {
        let root = LaurentSeries::from_ascending(&[1, 0, -4], order + 1)
            .sqrt()
            .unwrap();
        LaurentSeries::from_ascending(&[1, 0, -2], order + 1)
            .sub(&root)
            .div(&LaurentSeries::monomial(rat(2), 1, order + 1))
            .unwrap()
            .truncated(order)
    }

    fn length_only_spec(depth: usize) -> CFSpec {
        CFSpec {
            shape: CfShape::NestedSquare,
            levels: vec![Monomial::new(1, 0); depth + 3],
            anchor: Monomial::new(1, 0),
            depth,
        }
    }

    #[test]
    fn nested_square_cf_reproduces_updown_series() {
        let order = 20;
        let spec = length_only_spec(default_cf_depth(order));
        let cf = cf_eval(&spec, order, order).unwrap();
        let expect = chat(order);
        assert_eq!(cf.collapse_y(), expect);
        // frozen leading values: x^3 + 2x^5 + 5x^7 + 14x^9
        assert_eq!(cf.coeff(3, 0).unwrap(), rat(1));
        assert_eq!(cf.coeff(5, 0).unwrap(), rat(2));
        assert_eq!(cf.coeff(7, 0).unwrap(), rat(5));
        assert_eq!(cf.coeff(9, 0).unwrap(), rat(14));
    }

    #[test]
    fn shallow_depth_is_reported_unstable() {
        let order = 20;
        let spec = CFSpec {
            depth: 3,
            ..length_only_spec(3)
        };
        match cf_eval(&spec, order, order) {
            Err(CfError::Unstable { depth: 3, .. }) => {}
            other => panic!("expected instability, got {other:?}"),
        }
    }

    #[test]
    fn depth_one_tail_zero_base_case() {
        // With depth 1 the evaluation is the top level alone:
        // -m² / (m - 1/m) over the single level monomial m = x.
        let order = 6;
        let spec = CFSpec {
            depth: 1,
            ..length_only_spec(1)
        };
        let got = eval_at_depth(&spec, 1, order, order).unwrap();
        // -x²/(x - 1/x) = x³/(1-x²) = x³ + x⁵ + …
        assert_eq!(got.coeff(3, 0).unwrap(), rat(1));
        assert_eq!(got.coeff(5, 0).unwrap(), rat(1));
        assert_eq!(got.coeff(4, 0).unwrap(), rat(0));
    }

    #[test]
    fn stability_holds_at_default_depth_for_even_orders() {
        for order in [8i64, 14, 24] {
            let spec = length_only_spec(default_cf_depth(order));
            assert!(cf_eval(&spec, order, order).is_ok(), "order={order}");
        }
    }
}
