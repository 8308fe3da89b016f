//! Exact ring arithmetic: a minimal commutative-ring interface plus the two
//! quadratic extensions needed by the determinant identities, ℤ[i] with
//! i² = −1 and ℤ[ω] with ω² = ω − 1 (ω = exp(iπ/3), a primitive sixth root).
//!
//! No floating-point complex numbers appear anywhere; reductions are applied
//! eagerly and equality is componentwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Commutative ring with exact division, as needed by fraction-free
/// elimination and polynomial evaluation.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
    + Send
    + Sync
{
    fn from_bigint(n: BigInt) -> Self;

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    fn exact_div(&self, d: &Self) -> Option<Self>;
}

impl Ring for BigInt {
    fn from_bigint(n: BigInt) -> Self {
        n
    }

    fn exact_div(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, d);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// Z[i]
// ---------------------------------------------------------------------------

/// Gaussian integer `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    /// `i^k` for any integer exponent.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussInt::new(1, 0),
            1 => GaussInt::new(0, 1),
            2 => GaussInt::new(-1, 0),
            _ => GaussInt::new(0, -1),
        }
    }

    pub fn conj(&self) -> Self {
        GaussInt {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Add for GaussInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussInt {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussInt {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussInt {
    type Output = Self;
    fn neg(self) -> Self {
        GaussInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            return write!(f, "{}", self.re);
        }
        if Zero::is_zero(&self.re) {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Zero for GaussInt {
    fn zero() -> Self {
        GaussInt::new(0, 0)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
}

impl One for GaussInt {
    fn one() -> Self {
        GaussInt::new(1, 0)
    }
}

impl Ring for GaussInt {
    fn from_bigint(n: BigInt) -> Self {
        GaussInt { re: n, im: BigInt::from(0) }
    }

    fn exact_div(&self, d: &Self) -> Option<Self> {
        let n = d.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let num = self.clone() * d.conj();
        let re = Ring::exact_div(&num.re, &n)?;
        let im = Ring::exact_div(&num.im, &n)?;
        Some(GaussInt { re, im })
    }
}

// ---------------------------------------------------------------------------
// Z[omega]
// ---------------------------------------------------------------------------

/// Element `re + om·ω` of ℤ[ω], ω = exp(iπ/3), reduced by ω² = ω − 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EisenInt {
    pub re: BigInt,
    pub om: BigInt,
}

impl EisenInt {
    pub fn new(re: impl Into<BigInt>, om: impl Into<BigInt>) -> Self {
        EisenInt {
            re: re.into(),
            om: om.into(),
        }
    }

    pub fn omega() -> Self {
        EisenInt::new(0, 1)
    }

    /// `ω^k` for any integer exponent (ω⁶ = 1).
    pub fn omega_pow(k: i64) -> Self {
        match k.rem_euclid(6) {
            0 => EisenInt::new(1, 0),
            1 => EisenInt::new(0, 1),
            2 => EisenInt::new(-1, 1),
            3 => EisenInt::new(-1, 0),
            4 => EisenInt::new(0, -1),
            _ => EisenInt::new(1, -1),
        }
    }

    /// Complex conjugate: ω̄ = 1 − ω.
    pub fn conj(&self) -> Self {
        EisenInt {
            re: &self.re + &self.om,
            om: -self.om.clone(),
        }
    }

    /// Multiplicative norm `re² + re·om + om²` (= |z|² over ℂ).
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.re * &self.om + &self.om * &self.om
    }
}

impl Add for EisenInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        EisenInt {
            re: self.re + rhs.re,
            om: self.om + rhs.om,
        }
    }
}

impl Sub for EisenInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        EisenInt {
            re: self.re - rhs.re,
            om: self.om - rhs.om,
        }
    }
}

impl Mul for EisenInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // (a+bω)(c+dω) = ac + (ad+bc)ω + bd(ω−1)
        let bd = &self.om * &rhs.om;
        EisenInt {
            re: &self.re * &rhs.re - &bd,
            om: &self.re * &rhs.om + &self.om * &rhs.re + &bd,
        }
    }
}

impl Neg for EisenInt {
    type Output = Self;
    fn neg(self) -> Self {
        EisenInt {
            re: -self.re,
            om: -self.om,
        }
    }
}

impl fmt::Display for EisenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.om) {
            return write!(f, "{}", self.re);
        }
        if Zero::is_zero(&self.re) {
            return write!(f, "{}w", self.om);
        }
        if self.om.is_negative() {
            write!(f, "{}{}w", self.re, self.om)
        } else {
            write!(f, "{}+{}w", self.re, self.om)
        }
    }
}

impl Zero for EisenInt {
    fn zero() -> Self {
        EisenInt::new(0, 0)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.om)
    }
}

impl One for EisenInt {
    fn one() -> Self {
        EisenInt::new(1, 0)
    }
}

impl Ring for EisenInt {
    fn from_bigint(n: BigInt) -> Self {
        EisenInt { re: n, om: BigInt::from(0) }
    }

    fn exact_div(&self, d: &Self) -> Option<Self> {
        let n = d.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let num = self.clone() * d.conj();
        let re = Ring::exact_div(&num.re, &n)?;
        let om = Ring::exact_div(&num.om, &n)?;
        Some(EisenInt { re, om })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_reduction_and_powers() {
        let w = EisenInt::omega();
        assert_eq!(w.clone() * w.clone(), EisenInt::new(-1, 1)); // ω² = ω − 1
        let w3 = w.clone() * w.clone() * w.clone();
        assert_eq!(w3, EisenInt::new(-1, 0)); // ω³ = −1
        let mut p = EisenInt::one();
        for k in 0..12i64 {
            assert_eq!(p, EisenInt::omega_pow(k), "omega^{k}");
            p = p * w.clone();
        }
    }

    #[test]
    fn gauss_powers_and_norms() {
        let i = GaussInt::i();
        assert_eq!(i.clone() * i.clone(), GaussInt::new(-1, 0));
        for k in -8..8i64 {
            let expect = GaussInt::i_pow(k);
            assert_eq!(expect.norm(), BigInt::from(1));
            assert_eq!(GaussInt::i_pow(k + 4), expect);
        }
    }

    #[test]
    fn exact_division() {
        let a = GaussInt::new(3, 4) * GaussInt::new(-2, 7);
        assert_eq!(a.exact_div(&GaussInt::new(3, 4)), Some(GaussInt::new(-2, 7)));
        assert_eq!(GaussInt::new(1, 0).exact_div(&GaussInt::new(2, 0)), None);

        let b = EisenInt::new(5, -3) * EisenInt::new(2, 9);
        assert_eq!(b.exact_div(&EisenInt::new(2, 9)), Some(EisenInt::new(5, -3)));
        assert_eq!(EisenInt::new(1, 1).exact_div(&EisenInt::new(2, 0)), None);
    }

    #[test]
    fn norm_is_multiplicative() {
        let a = EisenInt::new(7, -5);
        let b = EisenInt::new(-3, 11);
        assert_eq!((a.clone() * b.clone()).norm(), a.norm() * b.norm());
        let c = GaussInt::new(7, -5);
        let d = GaussInt::new(-3, 11);
        assert_eq!((c.clone() * d.clone()).norm(), c.norm() * d.norm());
    }
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_eisen() -> impl Strategy<Value = EisenInt> {
        (-50i64..50, -50i64..50).prop_map(|(a, b)| EisenInt::new(a, b))
    }

    fn arb_gauss() -> impl Strategy<Value = GaussInt> {
        (-50i64..50, -50i64..50).prop_map(|(a, b)| GaussInt::new(a, b))
    }

    proptest! {
        #[test]
        fn eisen_ring_axioms(a in arb_eisen(), b in arb_eisen(), c in arb_eisen()) {
            prop_assert_eq!(
                (a.clone() * b.clone()) * c.clone(),
                a.clone() * (b.clone() * c.clone())
            );
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!(
                a.clone() * (b.clone() + c.clone()),
                a.clone() * b.clone() + a.clone() * c.clone()
            );
            prop_assert_eq!((a.clone() * b.clone()).norm(), a.norm() * b.norm());
            // exact_div inverts multiplication when the divisor is nonzero
            if !b.is_zero() {
                prop_assert_eq!((a.clone() * b.clone()).exact_div(&b), Some(a.clone()));
            }
        }

        #[test]
        fn gauss_ring_axioms(a in arb_gauss(), b in arb_gauss(), c in arb_gauss()) {
            prop_assert_eq!(
                (a.clone() * b.clone()) * c.clone(),
                a.clone() * (b.clone() * c.clone())
            );
            prop_assert_eq!(
                a.clone() * (b.clone() + c.clone()),
                a.clone() * b.clone() + a.clone() * c.clone()
            );
            if !b.is_zero() {
                prop_assert_eq!((a.clone() * b.clone()).exact_div(&b), Some(a.clone()));
            }
        }
    }
}
