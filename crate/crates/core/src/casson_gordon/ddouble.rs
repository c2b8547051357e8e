//! Double-double floating point (an unevaluated sum `hi + lo` of two f64),
//! giving about 31 significant decimal digits. Only what the cotangent sums
//! need is implemented.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

const PI: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::PI,
    lo: 1.224_646_799_147_353_2e-16,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// Exact for integers below 2^106.
    pub fn from_i128(n: i128) -> Self {
        let hi = n as f64;
        let lo = (n - hi as i128) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    /// `sin(π·num/den)` and `cos(π·num/den)` with the argument reduced exactly
    /// in integer arithmetic before any rounding.
    pub fn sin_cos_pi_ratio(num: i64, den: i64) -> (Self, Self) {
        assert!(den > 0);
        let den = den as i128;
        // measure the angle in units of π/(4·den): a full turn is 8·den units
        let turn = 8 * den;
        let x = (4 * num as i128).rem_euclid(turn);
        let quarter = 2 * den;
        let quadrant = x / quarter;
        let rem = x % quarter;
        let (s, c) = if rem <= den {
            let (s, c) = sin_cos_small(PI * Self::from_i128(rem) / Self::from_i128(4 * den));
            (s, c)
        } else {
            let (s, c) =
                sin_cos_small(PI * Self::from_i128(quarter - rem) / Self::from_i128(4 * den));
            (c, s)
        };
        match quadrant {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

/// Taylor series, valid to full precision for `|x| ≤ π/4`.
fn sin_cos_small(x: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    let x2 = x.sqr();
    let eps = 1e-34;
    let mut sin = x;
    let mut term = x;
    let mut k = 1.0;
    loop {
        term = -(term * x2) / DoubleDouble::from_f64((k + 1.0) * (k + 2.0));
        k += 2.0;
        sin = sin + term;
        if term.hi.abs() < eps {
            break;
        }
    }
    let mut cos = DoubleDouble::ONE;
    let mut term = DoubleDouble::ONE;
    let mut k = 0.0;
    loop {
        term = -(term * x2) / DoubleDouble::from_f64((k + 1.0) * (k + 2.0));
        k += 2.0;
        cos = cos + term;
        if term.hi.abs() < eps {
            break;
        }
    }
    (sin, cos)
}

impl Add for DoubleDouble {
    type Output = Self;

    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;

    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;

    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;

    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;

    fn div(self, b: Self) -> Self {
        // long division: two correction steps
        let q1 = self.hi / b.hi;
        let r = self - b * DoubleDouble::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * DoubleDouble::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::from_f64(q3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_carries_extra_precision() {
        let third = DoubleDouble::ONE / DoubleDouble::from_f64(3.0);
        let back = third * DoubleDouble::from_f64(3.0) - DoubleDouble::ONE;
        assert!(back.to_f64().abs() < 1e-31);
        let tiny = DoubleDouble::ONE + DoubleDouble::from_f64(1e-20) - DoubleDouble::ONE;
        assert!((tiny.to_f64() - 1e-20).abs() < 1e-35);
    }

    #[test]
    fn special_angles() {
        let (s, c) = DoubleDouble::sin_cos_pi_ratio(1, 6);
        assert!((s - DoubleDouble::from_f64(0.5)).to_f64().abs() < 1e-31);
        let c2 = c.sqr() - DoubleDouble::from_f64(0.75);
        assert!(c2.to_f64().abs() < 1e-30);
        let (s, c) = DoubleDouble::sin_cos_pi_ratio(7, 4);
        assert!((s + c).to_f64().abs() < 1e-31);
        let (s, c) = DoubleDouble::sin_cos_pi_ratio(-3, 2);
        assert_eq!((s.to_f64(), c.to_f64()), (1.0, 0.0));
    }

    #[test]
    fn pythagoras_on_a_sweep() {
        for den in 1..40 {
            for num in -2 * den..2 * den {
                let (s, c) = DoubleDouble::sin_cos_pi_ratio(num, den);
                let one = s.sqr() + c.sqr() - DoubleDouble::ONE;
                assert!(one.to_f64().abs() < 1e-30, "{num}/{den}");
                let f = (std::f64::consts::PI * num as f64 / den as f64).sin();
                assert!((s.to_f64() - f).abs() < 1e-14);
            }
        }
    }
}
