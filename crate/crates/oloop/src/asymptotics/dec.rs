//! Fixed-point decimal arithmetic over `BigInt`: value = mantissa · 10^-digits.
//!
//! Exact rationals are converted only after forming the quantity of interest;
//! roots come from integer nth-roots, so every operation rounds once at the
//! working precision. All values taking part in one computation share the
//! same `digits`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dec {
    digits: u32,
    m: BigInt,
}

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// Rounded quotient, half away from zero.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(!b.is_zero());
    let (sa, sb) = (a.signum(), b.signum());
    let (aa, ab) = (a.abs(), b.abs());
    let (q, r) = aa.div_rem(&ab);
    let q = if &r * 2 >= ab { q + 1 } else { q };
    q * sa * sb
}

impl Dec {
    pub fn zero(digits: u32) -> Self {
        Dec {
            digits,
            m: BigInt::zero(),
        }
    }

    pub fn one(digits: u32) -> Self {
        Dec {
            digits,
            m: pow10(digits),
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn from_bigint(x: &BigInt, digits: u32) -> Self {
        Dec {
            digits,
            m: x * pow10(digits),
        }
    }

    pub fn from_rational(x: &BigRational, digits: u32) -> Self {
        Dec {
            digits,
            m: div_round(&(x.numer() * pow10(digits)), x.denom()),
        }
    }

    /// `base^(1/n)` at this precision (floor of the scaled integer root, so
    /// the error is below one unit in the last digit).
    pub fn root_of_bigint(base: &BigInt, n: u32, digits: u32) -> Self {
        assert!(!base.is_negative());
        let scaled = base * pow10(n * digits);
        Dec {
            digits,
            m: scaled.nth_root(n),
        }
    }

    pub fn add(&self, o: &Dec) -> Dec {
        debug_assert_eq!(self.digits, o.digits);
        Dec {
            digits: self.digits,
            m: &self.m + &o.m,
        }
    }

    pub fn sub(&self, o: &Dec) -> Dec {
        debug_assert_eq!(self.digits, o.digits);
        Dec {
            digits: self.digits,
            m: &self.m - &o.m,
        }
    }

    pub fn neg(&self) -> Dec {
        Dec {
            digits: self.digits,
            m: -&self.m,
        }
    }

    pub fn abs(&self) -> Dec {
        Dec {
            digits: self.digits,
            m: self.m.abs(),
        }
    }

    pub fn mul(&self, o: &Dec) -> Dec {
        debug_assert_eq!(self.digits, o.digits);
        Dec {
            digits: self.digits,
            m: div_round(&(&self.m * &o.m), &pow10(self.digits)),
        }
    }

    pub fn div(&self, o: &Dec) -> Dec {
        debug_assert_eq!(self.digits, o.digits);
        Dec {
            digits: self.digits,
            m: div_round(&(&self.m * pow10(self.digits)), &o.m),
        }
    }

    pub fn powi(&self, e: u32) -> Dec {
        let mut acc = Dec::one(self.digits);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Drops trailing precision down to `digits`, rounding once.
    pub fn round_to(&self, digits: u32) -> Dec {
        if digits >= self.digits {
            return self.clone();
        }
        Dec {
            digits,
            m: div_round(&self.m, &pow10(self.digits - digits)),
        }
    }

    pub fn to_f64(&self) -> f64 {
        BigRational::new(self.m.clone(), pow10(self.digits))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn magnitude(&self) -> &BigInt {
        &self.m
    }
}

impl PartialOrd for Dec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        debug_assert_eq!(self.digits, other.digits);
        self.m.partial_cmp(&other.m)
    }
}

impl fmt::Display for Dec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = pow10(self.digits);
        let sign = if self.m.is_negative() { "-" } else { "" };
        let a = self.m.abs();
        let (int, frac) = a.div_rem(&scale);
        let frac_str = format!("{:0>width$}", frac.to_string(), width = self.digits as usize);
        write!(f, "{sign}{int}.{frac_str}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_rounding() {
        let a = Dec::from_rational(&BigRational::new(1.into(), 3.into()), 6);
        assert_eq!(a.to_string(), "0.333333");
        let b = Dec::from_rational(&BigRational::new(2.into(), 3.into()), 6);
        assert_eq!(b.to_string(), "0.666667");
        let c = Dec::from_rational(&BigRational::new((-1).into(), 8.into()), 3);
        assert_eq!(c.to_string(), "-0.125");
    }

    #[test]
    fn arithmetic() {
        let d = 20;
        let half = Dec::from_rational(&BigRational::new(1.into(), 2.into()), d);
        let third = Dec::from_rational(&BigRational::new(1.into(), 3.into()), d);
        let product = half.mul(&third);
        let expect = Dec::from_rational(&BigRational::new(1.into(), 6.into()), d);
        assert!(product.sub(&expect).abs().magnitude() <= &BigInt::from(1));
        let q = half.div(&third);
        let expect = Dec::from_rational(&BigRational::new(3.into(), 2.into()), d);
        // dividing by an already-rounded operand costs a few ulp
        assert!(q.sub(&expect).abs().magnitude() <= &BigInt::from(5));
    }

    #[test]
    fn integer_roots_bracket() {
        // w = floor((L^5)^(1/48) * 10^P): w^48 <= L^5 * 10^(48P) < (w+1)^48
        for l in [2u32, 40, 120] {
            let base = BigInt::from(l).pow(5);
            let digits = 40;
            let w = Dec::root_of_bigint(&base, 48, digits);
            let m = w.magnitude().clone();
            let target = &base * pow10(48 * digits);
            assert!(m.pow(48) <= target);
            assert!((&m + BigInt::from(1)).pow(48) > target);
        }
    }

    #[test]
    fn sqrt_value() {
        let s = Dec::root_of_bigint(&BigInt::from(2), 2, 30);
        assert!(s.to_string().starts_with("1.41421356237309504880168872420"));
    }
}
