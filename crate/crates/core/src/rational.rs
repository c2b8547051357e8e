//! Small helpers around `BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num/den` with the sign on the numerator; integers keep the `/1`.
pub fn format(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse(s: &str) -> Option<BigRational> {
    let (n, d) = s.trim().split_once('/')?;
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub fn ceil_int(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

pub fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}
