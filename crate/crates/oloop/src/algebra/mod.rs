//! Exact arithmetic backbone: binomials by Pascal recurrence, the Pascal
//! matrix, quadratic extension rings, fraction-free determinants, the Pascal
//! characteristic polynomial, shifted determinants, and the CSPP brute-force
//! oracle.

pub mod charpoly;
pub mod cspp;
pub mod det;
pub(crate) mod modular;
pub mod rings;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::{Error, Result};
pub use charpoly::{berkowitz_charpoly, pascal_charpoly, CharPoly};
pub use cspp::cspp_weighted_enum;
pub use det::bareiss_det;
pub use rings::{EisenInt, GaussInt, Ring};

/// Binomial triangle rows 0..=n, exact integers by the Pascal recurrence.
pub fn binomial_triangle(n: usize) -> Vec<Vec<BigInt>> {
    let mut tri: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    tri.push(vec![BigInt::from(1)]);
    for r in 1..=n {
        let prev = &tri[r - 1];
        let mut row = vec![BigInt::from(1); r + 1];
        for k in 1..r {
            row[k] = &prev[k - 1] + &prev[k];
        }
        tri.push(row);
    }
    tri
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    binomial_triangle(n)[n][k].clone()
}

/// The L×L Pascal matrix with entries binom(r+s-2, r-1) (1-indexed).
pub fn pascal_matrix(l: usize) -> Vec<Vec<BigInt>> {
    let tri = binomial_triangle(2 * l.saturating_sub(1));
    (0..l)
        .map(|i| (0..l).map(|j| tri[i + j][i].clone()).collect())
        .collect()
}

/// Exact scalar in one of the rings ℤ, ℚ, ℤ[i], ℤ[ω].
#[derive(Clone, PartialEq, Debug)]
pub enum AlgebraicScalar {
    Int(BigInt),
    Rational(BigRational),
    Gauss(GaussInt),
    Eisenstein(EisenInt),
}

impl AlgebraicScalar {
    pub fn i() -> Self {
        AlgebraicScalar::Gauss(GaussInt::i())
    }

    pub fn omega() -> Self {
        AlgebraicScalar::Eisenstein(EisenInt::omega())
    }

    pub fn ring_name(&self) -> &'static str {
        match self {
            AlgebraicScalar::Int(_) => "Z",
            AlgebraicScalar::Rational(_) => "Q",
            AlgebraicScalar::Gauss(_) => "Z[i]",
            AlgebraicScalar::Eisenstein(_) => "Z[w]",
        }
    }
}

impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicScalar::Int(x) => write!(f, "{x}"),
            AlgebraicScalar::Rational(x) => write!(f, "{x}"),
            AlgebraicScalar::Gauss(x) => write!(f, "{x}"),
            AlgebraicScalar::Eisenstein(x) => write!(f, "{x}"),
        }
    }
}

/// `det(Pascal(L) + s·I)`, evaluated through the characteristic polynomial so
/// that one exact coefficient computation serves every shift.
pub fn shifted_det(l: usize, s: &AlgebraicScalar) -> Result<AlgebraicScalar> {
    let cp = pascal_charpoly(l)?;
    Ok(match s {
        AlgebraicScalar::Int(x) => AlgebraicScalar::Int(cp.eval_shifted(x)),
        AlgebraicScalar::Rational(_) => {
            return Err(Error::InvalidArgument(
                "shifted determinants are taken over Z, Z[i] or Z[w]".into(),
            ))
        }
        AlgebraicScalar::Gauss(x) => AlgebraicScalar::Gauss(cp.eval_shifted(x)),
        AlgebraicScalar::Eisenstein(x) => AlgebraicScalar::Eisenstein(cp.eval_shifted(x)),
    })
}

/// `det(Pascal(L) + s·I)` by fraction-free elimination; independent
/// cross-check of `shifted_det` for small L.
pub fn shifted_det_elimination(l: usize, s: &AlgebraicScalar) -> Result<AlgebraicScalar> {
    fn build<T: Ring>(l: usize, s: &T) -> Vec<Vec<T>> {
        let p = pascal_matrix(l);
        (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        let e = T::from_bigint(p[i][j].clone());
                        if i == j {
                            e + s.clone()
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect()
    }
    Ok(match s {
        AlgebraicScalar::Int(x) => AlgebraicScalar::Int(bareiss_det(build(l, x))),
        AlgebraicScalar::Rational(_) => {
            return Err(Error::InvalidArgument(
                "shifted determinants are taken over Z, Z[i] or Z[w]".into(),
            ))
        }
        AlgebraicScalar::Gauss(x) => AlgebraicScalar::Gauss(bareiss_det(build(l, x))),
        AlgebraicScalar::Eisenstein(x) => AlgebraicScalar::Eisenstein(bareiss_det(build(l, x))),
    })
}
