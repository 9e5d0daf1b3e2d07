//! Fraction-free (Bareiss) determinants over exact integral domains, and resultants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntPolynomial;

/// Integral domain with exact division, enough for Bareiss elimination.
pub trait ExactRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / d`, known to be exact.
    fn div_exact(&self, d: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(Zero::is_zero(&r), "inexact Bareiss division");
        q
    }
}

impl ExactRing for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial::zero()
    }
    fn one() -> Self {
        IntPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        IntPolynomial::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Self {
        IntPolynomial::div_exact(self, d).expect("inexact Bareiss division")
    }
}

/// Determinant of a square matrix by Bareiss elimination.
pub fn bareiss_det<T: ExactRing>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut sign_neg = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_neg = !sign_neg;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_neg {
        d.neg()
    } else {
        d
    }
}

/// Sylvester matrix of `a` and `b` given as coefficient lists (lowest degree first).
pub fn sylvester<T: ExactRing>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    let n = a.len() - 1;
    let m = b.len() - 1;
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![T::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![T::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of two nonzero integer polynomials.
pub fn resultant(a: &IntPolynomial, b: &IntPolynomial) -> BigInt {
    assert!(!a.is_zero() && !b.is_zero(), "resultant of zero polynomial");
    if a.deg() == 0 && b.deg() == 0 {
        return <BigInt as One>::one();
    }
    bareiss_det(sylvester(a.coeffs(), b.coeffs()))
}

/// `Res_t(P(t), x - t^gamma)` as a polynomial in `x`.
pub fn power_resultant(p: &IntPolynomial, gamma: usize) -> IntPolynomial {
    assert!(gamma >= 1);
    let a: Vec<IntPolynomial> = p.coeffs().iter().map(|c| IntPolynomial::constant(c.clone())).collect();
    let mut b = vec![IntPolynomial::zero(); gamma + 1];
    b[0] = IntPolynomial::from_i64(&[0, 1]);
    b[gamma] = IntPolynomial::from_i64(&[-1]);
    bareiss_det(sylvester(&a, &b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn integer_determinant() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(2)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)],
        ];
        assert_eq!(bareiss_det(m), BigInt::from(6));
        let m = vec![vec![BigInt::from(0), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(0)]];
        assert_eq!(bareiss_det(m), BigInt::from(-1));
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x - 2, x^2 - 3) = 2^2 - 3 = 1
        assert_eq!(resultant(&p("x - 2"), &p("x^2 - 3")), BigInt::from(1));
        assert_eq!(resultant(&p("x - 3"), &p("2")), BigInt::from(2));
        assert_eq!(resultant(&p("x^2 - 1"), &p("x - 1")), BigInt::from(0));
    }

    #[test]
    fn power_resultant_golden_square() {
        let r = power_resultant(&p("x^2 - x - 1"), 2).canonical();
        assert_eq!(r, p("x^2 - 3*x + 1"));
    }
}
