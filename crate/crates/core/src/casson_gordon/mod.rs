//! Casson–Gordon signatures of oriented connected sums of lens spaces.
//!
//! For `L(p,q)` and the character sending the canonical generator to `a ∈ Z_p`
//!
//! ```text
//! σ(L(p,q), χ_a) = −(2/p) · Σ_{k=1}^{p−1} cot(πkq/p) · cot(πk/p) · sin²(πka/p)
//! ```
//!
//! evaluated in double-double precision and snapped to the nearest rational
//! with denominator dividing `12p²`. With this sign convention `L(9,4)` gives
//! `0, 5/9, 11/9, 1, −1/9, −1/9, 1, 11/9, 5/9` for `a = 0..8`.
//! Values are additive over connected sums and change sign with orientation.

mod cache;
mod ddouble;

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::abelian::FiniteAbelianGroup;

pub use cache::{render_table, TableCache};
pub use ddouble::DoubleDouble;

/// Largest accepted distance between the float evaluation and its snapped rational.
pub const SNAP_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CgError {
    #[error("invalid lens space L({p},{q}): need p > 1, 0 < q < p, gcd(p,q) = 1")]
    InvalidLens { p: u64, q: u64 },
    #[error("residue {a} out of range for Z_{p}")]
    InvalidResidue { a: u64, p: u64 },
    #[error("character value {value} mod {modulus} is not well defined on summand {summand} (order {order})")]
    IllDefinedCharacter {
        summand: usize,
        value: u64,
        modulus: u64,
        order: u64,
    },
    #[error("character has {found} values but the manifold has {expected} summands")]
    LengthMismatch { expected: usize, found: usize },
    #[error("modulus {d} does not divide {p}")]
    ModulusNotDivisor { d: u64, p: u64 },
    #[error(
        "cotangent sum for L({p},{q}), a={a} is {residual:e} away from any admissible rational"
    )]
    SnapFailure {
        p: u64,
        q: u64,
        a: u64,
        residual: f64,
    },
    #[error("table cache: {0}")]
    Cache(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Orientation {
    #[default]
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LensSpace {
    p: u64,
    q: u64,
    orientation: Orientation,
}

impl LensSpace {
    pub fn new(p: u64, q: u64) -> Result<Self, CgError> {
        Self::with_orientation(p, q, Orientation::Positive)
    }

    pub fn with_orientation(p: u64, q: u64, orientation: Orientation) -> Result<Self, CgError> {
        if p < 2 || q == 0 || q >= p || p.gcd(&q) != 1 {
            return Err(CgError::InvalidLens { p, q });
        }
        Ok(LensSpace { p, q, orientation })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn reversed(&self) -> Self {
        LensSpace {
            orientation: self.orientation.reversed(),
            ..*self
        }
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orientation == Orientation::Negative {
            write!(f, "-")?;
        }
        write!(f, "L({},{})", self.p, self.q)
    }
}

/// Connected sum of lens spaces; the empty sum is `S³`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LensSpaceSum {
    summands: Vec<LensSpace>,
}

impl LensSpaceSum {
    pub fn new(summands: Vec<LensSpace>) -> Self {
        LensSpaceSum { summands }
    }

    pub fn sphere() -> Self {
        Self::default()
    }

    pub fn power(l: LensSpace, n: usize) -> Self {
        Self::new(vec![l; n])
    }

    pub fn summands(&self) -> &[LensSpace] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Orders of the canonical summand generators of `H₁ = ⊕ Z_{p_i}`.
    pub fn generator_orders(&self) -> Vec<u64> {
        self.summands.iter().map(|l| l.p).collect()
    }

    pub fn h1(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_orders_u64(&self.generator_orders())
    }

    pub fn connect(&self, other: &LensSpaceSum) -> Self {
        let mut s = self.summands.clone();
        s.extend_from_slice(&other.summands);
        Self::new(s)
    }
}

impl fmt::Display for LensSpaceSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "S3");
        }
        for (i, l) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, "#")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A character `⊕ Z_{p_i} → Z_d` given by the images of the summand generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    modulus: u64,
    values: Vec<u64>,
}

impl Character {
    /// Values are reduced modulo `modulus`.
    pub fn new(modulus: u64, values: Vec<u64>) -> Self {
        assert!(modulus >= 1, "character modulus must be positive");
        let values = values.into_iter().map(|v| v % modulus).collect();
        Character { modulus, values }
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(1, vec![0; n])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// The residues mod `p_i` seen by each summand, checking `d | a_i·p_i`.
    pub fn local_residues(&self, m: &LensSpaceSum) -> Result<Vec<u64>, CgError> {
        if self.values.len() != m.len() {
            return Err(CgError::LengthMismatch {
                expected: m.len(),
                found: self.values.len(),
            });
        }
        let d = self.modulus as u128;
        self.values
            .iter()
            .zip(m.summands())
            .enumerate()
            .map(|(i, (&a, l))| {
                let scaled = a as u128 * l.p as u128;
                if !scaled.is_multiple_of(d) {
                    return Err(CgError::IllDefinedCharacter {
                        summand: i,
                        value: a,
                        modulus: self.modulus,
                        order: l.p,
                    });
                }
                Ok(((scaled / d) % l.p as u128) as u64)
            })
            .collect()
    }
}

/// An exact Casson–Gordon signature value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CGValue(BigRational);

impl CGValue {
    pub fn new(q: BigRational) -> Self {
        CGValue(q)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        CGValue(crate::rational::ratio(num, den))
    }

    pub fn zero() -> Self {
        CGValue(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn abs(&self) -> Self {
        CGValue(self.0.abs())
    }
}

impl fmt::Display for CGValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Add for CGValue {
    type Output = CGValue;
    fn add(self, rhs: CGValue) -> CGValue {
        CGValue(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a CGValue> for &'a CGValue {
    type Output = CGValue;
    fn add(self, rhs: &CGValue) -> CGValue {
        CGValue(&self.0 + &rhs.0)
    }
}

impl Sub for CGValue {
    type Output = CGValue;
    fn sub(self, rhs: CGValue) -> CGValue {
        CGValue(self.0 - rhs.0)
    }
}

impl Neg for CGValue {
    type Output = CGValue;
    fn neg(self) -> CGValue {
        CGValue(-self.0)
    }
}

impl Sum for CGValue {
    fn sum<I: Iterator<Item = CGValue>>(iter: I) -> CGValue {
        iter.fold(CGValue::zero(), |a, b| a + b)
    }
}

/// `−(2/p)·Σ cot(πkq/p)·cot(πk/p)·sin²(πka/p)` for positive orientation, in
/// double-double precision.
pub fn cotangent_sum(p: u64, q: u64, a: u64) -> DoubleDouble {
    let (p, q, a) = (p as i64, q as i64, a as i64);
    let mut total = DoubleDouble::ZERO;
    for k in 1..p {
        let (s1, c1) = DoubleDouble::sin_cos_pi_ratio((k * q) % (2 * p), p);
        let (s2, c2) = DoubleDouble::sin_cos_pi_ratio(k, p);
        let (s3, _) = DoubleDouble::sin_cos_pi_ratio((k * a) % (2 * p), p);
        total = total + (c1 / s1) * (c2 / s2) * s3.sqr();
    }
    -(DoubleDouble::from_f64(2.0) * total) / DoubleDouble::from_i128(p as i128)
}

/// Nearest rational with denominator dividing `12p²`, if within [`SNAP_TOLERANCE`].
pub fn snap(value: DoubleDouble, p: u64) -> Result<BigRational, f64> {
    let den = 12 * (p as i128) * (p as i128);
    let scaled = value * DoubleDouble::from_i128(den);
    let num = scaled.to_f64().round() as i128;
    let residual = (value - DoubleDouble::from_i128(num) / DoubleDouble::from_i128(den))
        .abs()
        .to_f64();
    if residual < SNAP_TOLERANCE {
        Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
    } else {
        Err(residual)
    }
}

/// `σ(L, χ_a)` for a single lens space and a residue `a ∈ Z_p`.
pub fn cg_lens_sigma(l: &LensSpace, a: u64) -> Result<CGValue, CgError> {
    if a >= l.p {
        return Err(CgError::InvalidResidue { a, p: l.p });
    }
    if a == 0 {
        return Ok(CGValue::zero());
    }
    let raw = cotangent_sum(l.p, l.q, a);
    let snapped = snap(raw, l.p).map_err(|residual| CgError::SnapFailure {
        p: l.p,
        q: l.q,
        a,
        residual,
    })?;
    Ok(CGValue(snapped * BigInt::from(l.orientation.sign())))
}

/// `σ(M, φ)` for a connected sum, by additivity over the summands.
pub fn cg_sigma(m: &LensSpaceSum, phi: &Character) -> Result<CGValue, CgError> {
    let residues = phi.local_residues(m)?;
    m.summands()
        .iter()
        .zip(residues)
        .map(|(l, a)| cg_lens_sigma(l, a))
        .sum()
}

/// Values of `σ(L, χ_a)` for the characters factoring through `Z_d`, that is
/// `a` ranging over the multiples of `p/d` in `0..p`.
pub fn cg_table(l: &LensSpace, d: u64) -> Result<Vec<(u64, CGValue)>, CgError> {
    if d == 0 || !l.p.is_multiple_of(d) {
        return Err(CgError::ModulusNotDivisor { d, p: l.p });
    }
    let step = l.p / d;
    (0..l.p)
        .step_by(step as usize)
        .map(|a| Ok((a, cg_lens_sigma(l, a)?)))
        .collect()
}

/// All `p` values of `σ(L, χ_a)`, held for repeated lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LensTable {
    lens: LensSpace,
    values: Vec<BigRational>,
}

impl LensTable {
    pub fn new(l: &LensSpace) -> Result<Self, CgError> {
        let values = (0..l.p)
            .map(|a| cg_lens_sigma(l, a).map(CGValue::into_inner))
            .collect::<Result<_, _>>()?;
        Ok(LensTable { lens: *l, values })
    }

    pub fn lens(&self) -> &LensSpace {
        &self.lens
    }

    /// `a` is reduced mod `p`.
    pub fn get(&self, a: u64) -> &BigRational {
        &self.values[(a % self.lens.p) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l94() -> LensSpace {
        LensSpace::new(9, 4).unwrap()
    }

    fn table_values(l: &LensSpace, d: u64) -> Vec<String> {
        cg_table(l, d)
            .unwrap()
            .into_iter()
            .map(|(_, v)| v.to_string())
            .collect()
    }

    #[test]
    fn lens_validation() {
        assert!(LensSpace::new(9, 3).is_err());
        assert!(LensSpace::new(9, 0).is_err());
        assert!(LensSpace::new(9, 9).is_err());
        assert!(LensSpace::new(1, 0).is_err());
        assert!(LensSpace::new(2, 1).is_ok());
    }

    #[test]
    fn table_for_l94() {
        assert_eq!(
            table_values(&l94(), 9),
            ["0/1", "5/9", "11/9", "1/1", "-1/9", "-1/9", "1/1", "11/9", "5/9"]
        );
        assert_eq!(table_values(&l94(), 3), ["0/1", "1/1", "1/1"]);
    }

    #[test]
    fn small_lens_spaces() {
        // two terms, each cot²(π/3)·sin²(π/3) = 1/4
        assert_eq!(
            cg_lens_sigma(&LensSpace::new(3, 1).unwrap(), 1).unwrap(),
            CGValue::from_ratio(-1, 3)
        );
        // cot(π/2) = 0
        assert_eq!(
            table_values(&LensSpace::new(2, 1).unwrap(), 2),
            ["0/1", "0/1"]
        );
    }

    #[test]
    fn trivial_character_paths_agree() {
        for (p, q) in [(9, 4), (7, 3), (25, 7)] {
            assert!(cotangent_sum(p, q, 0).to_f64().abs() < 1e-28);
            assert_eq!(
                cg_lens_sigma(&LensSpace::new(p, q).unwrap(), 0).unwrap(),
                CGValue::zero()
            );
        }
    }

    #[test]
    fn orientation_and_additivity() {
        let neg = l94().reversed();
        assert_eq!(cg_lens_sigma(&neg, 1).unwrap(), CGValue::from_ratio(-5, 9));
        let m = LensSpaceSum::power(l94(), 2);
        let phi = Character::new(9, vec![2, 2]);
        assert_eq!(cg_sigma(&m, &phi).unwrap(), CGValue::from_ratio(22, 9));
        assert_eq!(
            cg_sigma(&LensSpaceSum::sphere(), &Character::trivial(0)).unwrap(),
            CGValue::zero()
        );
    }

    #[test]
    fn character_errors() {
        let m = LensSpaceSum::new(vec![l94(), LensSpace::new(5, 2).unwrap()]);
        // 1 mod 3 on the Z_5 summand is not a homomorphism
        let bad = Character::new(3, vec![1, 1]);
        assert!(matches!(
            cg_sigma(&m, &bad),
            Err(CgError::IllDefinedCharacter { summand: 1, .. })
        ));
        let short = Character::new(9, vec![1]);
        assert!(matches!(
            cg_sigma(&m, &short),
            Err(CgError::LengthMismatch { .. })
        ));
        // Z_45 character restricted to each summand
        let ok = Character::new(45, vec![5, 9]);
        let expected = cg_lens_sigma(&l94(), 1).unwrap()
            + cg_lens_sigma(&LensSpace::new(5, 2).unwrap(), 1).unwrap();
        assert_eq!(cg_sigma(&m, &ok).unwrap(), expected);
        assert!(cg_table(&l94(), 2).is_err());
        assert!(cg_lens_sigma(&l94(), 9).is_err());
    }

    #[test]
    fn single_lens_denominators_divide_p() {
        for p in 2..=30u64 {
            for q in (1..p).filter(|q| p.gcd(q) == 1) {
                let t = LensTable::new(&LensSpace::new(p, q).unwrap()).unwrap();
                for a in 0..p {
                    let den = t.get(a).denom().clone();
                    assert!((BigInt::from(p) % den).is_zero(), "L({p},{q}) a={a}");
                }
            }
        }
    }
}
