use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{KnotError, SeifertMatrix};
use crate::abelian::IntMatrix;
use crate::casson_gordon::LensSpace;

/// The two-bridge knot `K(p/q)`; `p` odd so that the diagram is a knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoBridgeKnot {
    p: u64,
    q: u64,
}

impl TwoBridgeKnot {
    pub fn new(p: u64, q: u64) -> Result<Self, KnotError> {
        if p < 3 || p.is_multiple_of(2) {
            return Err(KnotError::EvenP { p });
        }
        if q == 0 || q >= p {
            return Err(KnotError::QOutOfRange { p, q });
        }
        if p.gcd(&q) != 1 {
            return Err(KnotError::NotCoprime { p, q });
        }
        Ok(TwoBridgeKnot { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The branched double cover `L(p,q)`.
    pub fn lens_space(&self) -> LensSpace {
        LensSpace::new(self.p, self.q).expect("validated parameters")
    }

    /// Entries `c_1, ..., c_{2g}`, all even, with
    /// `p/r = c_1 − 1/(c_2 − 1/(⋯ − 1/c_{2g}))` for the even representative
    /// `r ≡ q (mod p)`.
    pub fn even_continued_fraction(&self) -> Vec<BigInt> {
        let p = BigInt::from(self.p);
        let q = BigInt::from(self.q);
        let r = if q.is_even() { q } else { &q - &p };
        even_minus_cf(p, r)
    }
}

fn even_minus_cf(mut num: BigInt, mut den: BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let two = BigInt::from(2);
    loop {
        if den.abs().is_one() {
            // num/den is an even integer here
            let last = &num * &den;
            debug_assert!(last.is_even());
            out.push(last);
            return out;
        }
        // nearest even integer c to num/den; |num/den − c| < 1 strictly
        let floor_even = num.div_floor(&(&den * &two)) * &two;
        let c = {
            // compare distance of num/den to floor_even and floor_even + 2
            let lhs = (&num - &floor_even * &den).abs(); // |num − c·den|
            if lhs < den.abs() {
                floor_even
            } else {
                floor_even + &two
            }
        };
        let next_den = &c * &den - &num;
        assert!(
            !next_den.is_zero(),
            "even continued fraction failed to terminate"
        );
        out.push(c);
        num = den;
        den = next_den;
    }
}

/// The plumbing Seifert matrix: diagonal `c_i/2` with ones on the superdiagonal.
pub fn seifert_from_two_bridge(k: &TwoBridgeKnot) -> SeifertMatrix {
    let cf = k.even_continued_fraction();
    let n = cf.len();
    assert!(
        n.is_multiple_of(2),
        "even continued fraction has odd length"
    );
    let mut v = IntMatrix::zeros(n, n);
    for (i, c) in cf.iter().enumerate() {
        v[(i, i)] = c / 2;
        if i + 1 < n {
            v[(i, i + 1)] = BigInt::one();
        }
    }
    SeifertMatrix::new(v).expect("plumbing matrix is a Seifert matrix")
}

impl fmt::Display for TwoBridgeKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2b({}/{})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{cokernel, FiniteAbelianGroup, FreeExtension};

    #[test]
    fn validation() {
        assert!(matches!(
            TwoBridgeKnot::new(8, 3),
            Err(KnotError::EvenP { .. })
        ));
        assert!(matches!(
            TwoBridgeKnot::new(9, 3),
            Err(KnotError::NotCoprime { .. })
        ));
        assert!(matches!(
            TwoBridgeKnot::new(9, 9),
            Err(KnotError::QOutOfRange { .. })
        ));
        assert!(matches!(
            TwoBridgeKnot::new(9, 0),
            Err(KnotError::QOutOfRange { .. })
        ));
        assert!(TwoBridgeKnot::new(9, 2).is_ok());
    }

    #[test]
    fn trefoil_matrix() {
        let v = seifert_from_two_bridge(&TwoBridgeKnot::new(3, 1).unwrap());
        assert_eq!(
            v.matrix(),
            &IntMatrix::from_rows(&[vec![-1, 1], vec![0, -1]]).unwrap()
        );
        assert_eq!(v.determinant(), BigInt::from(3));
        assert_eq!(v.signature().abs(), 2);
    }

    #[test]
    fn nine_fourths() {
        let k = TwoBridgeKnot::new(9, 4).unwrap();
        assert_eq!(
            k.even_continued_fraction(),
            vec![BigInt::from(2), BigInt::from(-4)]
        );
        let v = seifert_from_two_bridge(&k);
        assert_eq!(v.determinant(), BigInt::from(9));
        assert_eq!(v.signature(), 0);
    }

    #[test]
    fn five_thirds() {
        let v = seifert_from_two_bridge(&TwoBridgeKnot::new(5, 3).unwrap());
        assert_eq!(v.determinant(), BigInt::from(5));
    }

    #[test]
    fn sweep_small_denominators() {
        for p in (3..=25u64).step_by(2) {
            for q in (1..p).filter(|q| p.gcd(q) == 1) {
                let k = TwoBridgeKnot::new(p, q).unwrap();
                let v = seifert_from_two_bridge(&k);
                let skew = v.matrix().sub(&v.matrix().transpose());
                assert!(skew.determinant().is_one());
                assert_eq!(v.determinant(), BigInt::from(p), "{k}");
                // H1 of the cover is cyclic of order p
                let h1 = cokernel(&v.symmetrized(), &FreeExtension::free(v.matrix().rows()))
                    .unwrap()
                    .finite()
                    .unwrap();
                assert_eq!(h1, FiniteAbelianGroup::cyclic(p));
                assert!(v.alexander_polynomial().is_symmetric());
            }
        }
    }
}
