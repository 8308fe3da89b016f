//! Fraction-free (Bareiss) determinant over any exact-division ring.
//!
//! Intermediate entries are genuine minors of the input, so every division in
//! the update is exact in an integral domain. This is the reference
//! determinant route used to cross-check characteristic-polynomial
//! evaluations over ℤ, ℤ[i] and ℤ[ω].

use super::rings::Ring;

pub fn bareiss_det<T: Ring>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return T::zero();
            };
            m.swap(k, pivot);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss quotient is a minor and divides exactly");
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rings::{EisenInt, GaussInt};
    use num_bigint::BigInt;

    fn int_mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn integer_determinants() {
        assert_eq!(bareiss_det(int_mat(&[&[5]])), BigInt::from(5));
        assert_eq!(bareiss_det(int_mat(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(
            bareiss_det(int_mat(&[&[2, 0, 1], &[1, 3, 2], &[0, 1, 1]])),
            BigInt::from(3)
        );
        // singular
        assert_eq!(
            bareiss_det(int_mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])),
            BigInt::from(0)
        );
        // needs a row swap
        assert_eq!(
            bareiss_det(int_mat(&[&[0, 1], &[1, 0]])),
            BigInt::from(-1)
        );
    }

    #[test]
    fn gauss_determinant() {
        // det [[1+i, 2], [1, 2+i]] = (1+i)(2+i) - 2 = -1 + 3i
        let m = vec![
            vec![GaussInt::new(1, 1), GaussInt::new(2, 0)],
            vec![GaussInt::new(1, 0), GaussInt::new(2, 1)],
        ];
        assert_eq!(bareiss_det(m), GaussInt::new(-1, 3));
    }

    #[test]
    fn eisen_determinant() {
        // det(Pascal(2) + w I) = (1+w)(2+w) - 1 = 4w  (using w^2 = w - 1)
        let m = vec![
            vec![EisenInt::new(1, 1), EisenInt::new(1, 0)],
            vec![EisenInt::new(1, 0), EisenInt::new(2, 1)],
        ];
        assert_eq!(bareiss_det(m), EisenInt::new(0, 4));
    }
}
