//! Exact scalars: arbitrary-precision rationals and small prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::HopfError;

/// The default ground field.
pub type Q = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics on `d == 0`.
pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p` or `p/q`.
pub fn parse_q(s: &str) -> Result<Q, HopfError> {
    let s = s.trim();
    let bad = || HopfError::parse(1, 1, format!("invalid rational `{s}`"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Q::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
    }
}

/// Operations the linear layer needs from a coefficient field.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn inverse(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
}

impl Field for Q {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(n: i64) -> Self {
        q(n)
    }
}

/// Deterministic primality test by trial division, usable in const context.
pub const fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest modulus accepted by [`Fp`]; keeps products inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

/// Runtime check of a prime-field modulus.
pub fn check_modulus(p: u64) -> Result<(), HopfError> {
    if p >= MAX_MODULUS {
        return Err(HopfError::Config(format!("modulus {p} exceeds 2^32")));
    }
    if !is_prime(p) {
        return Err(HopfError::Config(format!("modulus {p} is not prime")));
    }
    Ok(())
}

/// Element of the prime field with `P` elements.
///
/// The modulus is checked when the type is first used, so a composite `P`
/// fails to compile:
///
/// ```compile_fail
/// let _ = hopf_core::scalar::Fp::<4>::new(1);
/// ```
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const VALID: () = assert!(P < MAX_MODULUS && is_prime(P), "modulus must be a prime below 2^32");

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::VALID;
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
}

/// Reduces a rational into `F_P`; fails when the denominator vanishes mod `P`.
pub fn reduce_mod<const P: u64>(x: &Q) -> Option<Fp<P>> {
    let p = BigInt::from(P);
    let n = (x.numer() % &p + &p) % &p;
    let d = (x.denom() % &p + &p) % &p;
    let n: u64 = n.try_into().ok()?;
    let d: u64 = d.try_into().ok()?;
    Fp::<P>::new(d as i64).inverse().map(|inv| Fp::<P>::new(n as i64) * inv)
}

/// `|x|` as a rational; convenience for rendering and sampling code.
pub fn abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let x = q_frac(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(q(5).to_string(), "5");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "3/4", "-12/5"] {
            assert_eq!(parse_q(s).unwrap().to_string(), s);
        }
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn modulus_check() {
        assert!(check_modulus(7).is_ok());
        assert!(check_modulus(9).is_err());
        assert!(check_modulus(1).is_err());
        assert!(check_modulus(4294967311).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        type F = Fp<7>;
        assert_eq!(F::new(3) * F::new(5), F::new(1));
        assert_eq!(F::new(3).inverse(), Some(F::new(5)));
        assert_eq!(F::new(0).inverse(), None);
        assert_eq!(-F::new(2), F::new(5));
        assert_eq!(F::new(-1), F::new(6));
        assert_eq!(reduce_mod::<7>(&q_frac(1, 3)), Some(F::new(5)));
        assert_eq!(reduce_mod::<7>(&q_frac(1, 7)), None);
    }
}
