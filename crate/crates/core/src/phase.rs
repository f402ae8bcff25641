//! Exact complex charges and the orders on their phases.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

use crate::hall::parse_rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Charge {
    pub re: BigRational,
    pub im: BigRational,
}

impl Charge {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Charge { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Charge::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn parse(re: &str, im: &str) -> Result<Self> {
        Ok(Charge::new(parse_rational(re)?, parse_rational(im)?))
    }

    pub fn zero() -> Self {
        Charge::from_ints(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Charge) -> Charge {
        Charge::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn neg(&self) -> Charge {
        Charge::new(-&self.re, -&self.im)
    }

    pub fn scale(&self, k: i64) -> Charge {
        let k = BigRational::from_integer(k.into());
        Charge::new(&self.re * &k, &self.im * &k)
    }

    /// re(self) im(o) - im(self) re(o): positive iff `o` lies counterclockwise.
    pub fn cross(&self, o: &Charge) -> BigRational {
        &self.re * &o.im - &self.im * &o.re
    }

    /// In the half-open upper half plane: phase in (0, 1].
    pub fn in_upper_half(&self) -> bool {
        self.im.is_positive() || (self.im.is_zero() && self.re.is_negative())
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

/// Phase of a nonzero charge in the half-open upper half plane, i.e. a
/// value in (0, 1], compared exactly by cross products.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhaseValue(Charge);

impl PhaseValue {
    /// `None` unless the charge has phase in (0, 1].
    pub fn of(z: Charge) -> Option<Self> {
        z.in_upper_half().then_some(PhaseValue(z))
    }

    pub fn charge(&self) -> &Charge {
        &self.0
    }

    /// Phase exactly 1 (negative real axis).
    pub fn is_one(&self) -> bool {
        self.0.im.is_zero()
    }

    /// Phase exactly 1/2.
    pub fn is_half(&self) -> bool {
        self.0.re.is_zero()
    }
}

impl PartialEq for PhaseValue {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for PhaseValue {}

impl PartialOrd for PhaseValue {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for PhaseValue {
    fn cmp(&self, o: &Self) -> Ordering {
        BigRational::zero().cmp(&self.0.cross(&o.0))
    }
}

impl fmt::Display for PhaseValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arg{}", self.0)
    }
}

/// A real phase φ = 2m + θ with θ ∈ (−1, 1], stored as the window `m` and a
/// nonzero direction whose argument (in units of π) is θ.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhasePoint {
    window: i32,
    direction: Charge,
}

impl PhasePoint {
    pub fn new(window: i32, direction: Charge) -> Result<Self> {
        if direction.is_zero() {
            return Err(Error::UndefinedPhase("zero direction".into()));
        }
        Ok(PhasePoint { window, direction })
    }

    /// The phase of a heart object, in (0, 1].
    pub fn of_heart(p: &PhaseValue) -> Self {
        PhasePoint {
            window: 0,
            direction: p.charge().clone(),
        }
    }

    pub fn window(&self) -> i32 {
        self.window
    }

    pub fn direction(&self) -> &Charge {
        &self.direction
    }

    /// φ + k.
    pub fn shift(&self, k: i32) -> Self {
        let mut out = self.clone();
        for _ in 0..k.unsigned_abs() {
            let up = out.direction.in_upper_half();
            out.direction = out.direction.neg();
            if k > 0 && up {
                out.window += 1;
            } else if k < 0 && !up {
                out.window -= 1;
            }
        }
        out
    }

    /// The integer `k` with φ ∈ (k, k+1].
    pub fn heart_shift(&self) -> i32 {
        if self.direction.in_upper_half() {
            2 * self.window
        } else {
            2 * self.window - 1
        }
    }

    /// φ − heart_shift, as a phase in (0, 1].
    pub fn heart_phase(&self) -> PhaseValue {
        if self.direction.in_upper_half() {
            PhaseValue(self.direction.clone())
        } else {
            PhaseValue(self.direction.neg())
        }
    }

    /// Floating point approximation, for display only.
    pub fn approx(&self) -> f64 {
        let re = big_to_f64(&self.direction.re);
        let im = big_to_f64(&self.direction.im);
        2.0 * self.window as f64 + im.atan2(re) / std::f64::consts::PI
    }
}

fn big_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

impl PartialEq for PhasePoint {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for PhasePoint {}

impl PartialOrd for PhasePoint {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for PhasePoint {
    fn cmp(&self, o: &Self) -> Ordering {
        let (a, b) = (self.direction.in_upper_half(), o.direction.in_upper_half());
        self.window
            .cmp(&o.window)
            .then(a.cmp(&b))
            .then_with(|| BigRational::zero().cmp(&self.direction.cross(&o.direction)))
    }
}

impl fmt::Display for PhasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+arg{}", 2 * self.window, self.direction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ph(re: i64, im: i64) -> PhaseValue {
        PhaseValue::of(Charge::from_ints(re, im)).unwrap()
    }

    #[test]
    fn phase_order() {
        assert!(ph(-1, 1) > ph(1, 1));
        assert!(ph(-1, 0) > ph(-5, 1));
        assert!(ph(-1, 0).is_one());
        assert!(ph(0, 3).is_half());
        assert_eq!(ph(2, 2), ph(1, 1));
        assert!(ph(100, 1) < ph(0, 1));
        assert!(PhaseValue::of(Charge::from_ints(1, 0)).is_none());
        assert!(PhaseValue::of(Charge::from_ints(0, -1)).is_none());
    }

    fn pp(m: i32, re: i64, im: i64) -> PhasePoint {
        PhasePoint::new(m, Charge::from_ints(re, im)).unwrap()
    }

    #[test]
    fn phase_points() {
        // (-1,0) sits at the top of its window.
        assert!(pp(0, -1, 0) > pp(0, -1, 1));
        assert!(pp(0, 1, 0) < pp(0, 0, 1));
        assert!(pp(0, 1, -1) < pp(0, 1, 0));
        assert!(pp(1, 1, -1) > pp(0, -1, 0));
        assert!(pp(0, -1, 1) > pp(0, 1, 1));
        assert!(PhasePoint::new(0, Charge::zero()).is_err());
        let p = pp(0, 1, 1);
        assert_eq!(p.shift(1), pp(1, -1, -1));
        assert_eq!(p.shift(2), pp(1, 1, 1));
        assert_eq!(p.shift(-1), pp(0, -1, -1));
        assert_eq!(p.shift(3).shift(-3), p);
        assert_eq!(p.shift(-1).heart_shift(), -1);
        assert_eq!(p.shift(5).heart_shift(), 5);
        assert_eq!(pp(0, -1, 0).shift(1).heart_shift(), 1);
        assert!((p.shift(3).approx() - 3.25).abs() < 1e-12);
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn shift_is_monotone(re in -3i64..4, im in 1i64..4, k in -4i32..5, l in -4i32..5) {
            let p = pp(0, re, im);
            prop_assert_eq!(p.shift(k).cmp(&p.shift(l)), k.cmp(&l));
            prop_assert_eq!(p.shift(k).heart_phase(), p.heart_phase());
            prop_assert_eq!(p.shift(k).heart_shift(), k);
        }
    }
}
