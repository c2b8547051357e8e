use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::KnotError;
use crate::abelian::IntMatrix;

/// A Seifert matrix `V` of a knot: square of even size with `det(V − Vᵀ) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    v: IntMatrix,
}

impl SeifertMatrix {
    pub fn new(v: IntMatrix) -> Result<Self, KnotError> {
        if !v.is_square() {
            return Err(KnotError::NonSquareSeifert {
                rows: v.rows(),
                cols: v.cols(),
            });
        }
        let skew = v.sub(&v.transpose());
        let det = skew.determinant();
        if !v.rows().is_multiple_of(2) || !det.is_one() {
            return Err(KnotError::NonUnimodularSeifert { det });
        }
        Ok(SeifertMatrix { v })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.v
    }

    /// Half the size of `V`.
    pub fn genus(&self) -> usize {
        self.v.rows() / 2
    }

    pub fn symmetrized(&self) -> IntMatrix {
        self.v.add(&self.v.transpose())
    }

    pub fn signature(&self) -> i64 {
        signature(&self.symmetrized())
    }

    /// `|det(V + Vᵀ)|`.
    pub fn determinant(&self) -> BigInt {
        self.symmetrized().determinant().abs()
    }

    pub fn alexander_polynomial(&self) -> AlexanderPolynomial {
        AlexanderPolynomial::from_seifert(&self.v)
    }
}

/// Signature of a symmetric integer matrix by rational congruence diagonalization.
pub fn signature(m: &IntMatrix) -> i64 {
    assert!(m.is_square(), "signature needs a square matrix");
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(m[(i, j)].clone()))
                .collect()
        })
        .collect();
    let mut sig = 0i64;
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // diagonal of the block is zero: row/col k += row/col j makes a[k][k] = 2a[k][j]
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                // row k is zero
                k += 1;
                continue;
            }
        }
        let pivot = a[k][k].clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            // the trailing block a_ij - a_ik·a_kj/a_kk stays symmetric
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
        for i in k + 1..n {
            a[k][i] = BigRational::zero();
            a[i][k] = BigRational::zero();
        }
        k += 1;
    }
    sig
}

/// A symmetric Laurent polynomial `Σ c_i t^i`, normalized so that `Δ(t) = Δ(1/t)`
/// and `Δ(1) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderPolynomial {
    /// Coefficients from `t^{-degree}` up to `t^{degree}`.
    coefficients: Vec<BigInt>,
}

impl AlexanderPolynomial {
    pub fn from_seifert(v: &IntMatrix) -> Self {
        let raw = det_polynomial(v);
        let lo = raw.iter().position(|c| !c.is_zero());
        let Some(lo) = lo else {
            return AlexanderPolynomial {
                coefficients: Vec::new(),
            };
        };
        let hi = raw.iter().rposition(|c| !c.is_zero()).expect("nonzero");
        let mut coefficients = raw[lo..=hi].to_vec();
        let at_one: BigInt = coefficients.iter().sum();
        if at_one.is_negative() {
            coefficients.iter_mut().for_each(|c| *c = -c.clone());
        }
        AlexanderPolynomial { coefficients }
    }

    pub fn unknot() -> Self {
        AlexanderPolynomial {
            coefficients: vec![BigInt::one()],
        }
    }

    /// Top exponent of the symmetric normalization.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1) / 2
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_symmetric(&self) -> bool {
        self.coefficients.len() % 2 == 1
            && self.coefficients.iter().eq(self.coefficients.iter().rev())
    }

    pub fn at_one(&self) -> BigInt {
        self.coefficients.iter().sum()
    }

    /// `|Δ(−1)|`.
    pub fn at_minus_one_abs(&self) -> BigInt {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
            .sum::<BigInt>()
            .abs()
    }

    pub fn product(&self, other: &AlexanderPolynomial) -> AlexanderPolynomial {
        if self.coefficients.is_empty() || other.coefficients.is_empty() {
            return AlexanderPolynomial {
                coefficients: Vec::new(),
            };
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        AlexanderPolynomial { coefficients: out }
    }
}

/// Coefficients of `det(V − tVᵀ)` from `t^0` to `t^n`, by exact interpolation
/// at `t = 0..=n`.
fn det_polynomial(v: &IntMatrix) -> Vec<BigInt> {
    let n = v.rows();
    let vt = v.transpose();
    let values: Vec<BigRational> = (0..=n)
        .map(|t| {
            let m = v.sub(&vt.scale(&BigInt::from(t)));
            BigRational::from_integer(m.determinant())
        })
        .collect();
    // Newton divided differences, then expand to monomials
    let mut coef = values.clone();
    for level in 1..=n {
        for i in (level..=n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / BigRational::from_integer(BigInt::from(level));
        }
    }
    let mut poly = vec![BigRational::zero(); n + 1];
    for i in (0..=n).rev() {
        // poly = poly * (t - i) + coef[i]
        let mut next = vec![BigRational::zero(); n + 1];
        for k in 0..=n {
            if poly[k].is_zero() {
                continue;
            }
            if k < n {
                next[k + 1] += &poly[k];
            }
            next[k] -= &poly[k] * BigRational::from_integer(BigInt::from(i));
        }
        next[0] += &coef[i];
        poly = next;
    }
    poly.into_iter()
        .map(|c| {
            assert!(
                c.is_integer(),
                "interpolated Alexander coefficient is not integral"
            );
            c.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn trefoil() {
        let v = SeifertMatrix::new(m(&[vec![-1, 1], vec![0, -1]])).unwrap();
        assert_eq!(v.signature(), -2);
        assert_eq!(v.determinant(), BigInt::from(3));
        let d = v.alexander_polynomial();
        assert_eq!(
            d.coefficients(),
            &[BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
        assert_eq!(d.degree(), 1);
        assert!(d.is_symmetric());
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(
            SeifertMatrix::new(IntMatrix::zeros(2, 3)),
            Err(KnotError::NonSquareSeifert { .. })
        ));
        assert!(matches!(
            SeifertMatrix::new(m(&[vec![1, 2], vec![0, 1]])),
            Err(KnotError::NonUnimodularSeifert { .. })
        ));
        assert!(SeifertMatrix::new(IntMatrix::zeros(0, 0)).is_ok());
    }

    #[test]
    fn signature_handles_zero_diagonal() {
        assert_eq!(signature(&m(&[vec![0, 1], vec![1, 0]])), 0);
        assert_eq!(signature(&m(&[vec![0, 0], vec![0, 0]])), 0);
        assert_eq!(signature(&m(&[vec![2, 1], vec![1, -4]])), 0);
        assert_eq!(
            signature(&m(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 3]])),
            1
        );
        assert_eq!(signature(&IntMatrix::diagonal(&[1, 2, -3, 4])), 2);
    }
}
