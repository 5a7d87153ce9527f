use std::fmt;

use serde::{Deserialize, Serialize};

use super::primality::{is_prime, pow_mod};
use crate::error::{Error, Result};

/// An odd prime modulus, validated once at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeModulus {
    p: u64,
    half: u64,
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(PrimeModulus {
            p,
            half: (p - 1) / 2,
        })
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.p
    }

    /// `(p - 1) / 2`, the Euler-criterion exponent.
    #[inline]
    pub fn half(self) -> u64 {
        self.half
    }

    #[inline]
    pub fn residue_class_mod8(self) -> u64 {
        self.p % 8
    }

    pub fn ln(self) -> f64 {
        (self.p as f64).ln()
    }
}

impl TryFrom<u64> for PrimeModulus {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        PrimeModulus::new(p)
    }
}

impl From<PrimeModulus> for u64 {
    fn from(m: PrimeModulus) -> u64 {
        m.p
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.p.fmt(f)
    }
}

/// Value of the quadratic character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[repr(i8)]
pub enum CharValue {
    NonResidue = -1,
    Zero = 0,
    Residue = 1,
}

impl CharValue {
    #[inline]
    pub fn as_i64(self) -> i64 {
        self as i8 as i64
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        self as i8 as f64
    }

    #[inline]
    fn from_sign(s: i8) -> Self {
        match s {
            1 => CharValue::Residue,
            -1 => CharValue::NonResidue,
            _ => CharValue::Zero,
        }
    }
}

/// Legendre symbol `(n | p)` via binary reciprocity: strip factors of two with the
/// supplementary law, flip by reciprocity, reduce, repeat. No exponentiation.
pub fn legendre(n: u64, p: PrimeModulus) -> CharValue {
    let mut m = p.get();
    let mut a = n % m;
    let mut sign: i8 = 1;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz & 1 == 1 && matches!(m & 7, 3 | 5) {
            sign = -sign;
        }
        if a & 3 == 3 && m & 3 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut m);
        a %= m;
    }
    if m == 1 {
        CharValue::from_sign(sign)
    } else {
        CharValue::Zero
    }
}

/// Legendre symbol of a possibly negative argument.
pub fn legendre_signed(n: i64, p: PrimeModulus) -> CharValue {
    let r = (n as i128).rem_euclid(p.get() as i128) as u64;
    legendre(r, p)
}

/// Reference route: Euler's criterion `n^((p-1)/2) mod p` mapped onto `{-1, 0, +1}`.
pub fn euler_criterion(n: u64, p: PrimeModulus) -> CharValue {
    match pow_mod(n, p.half(), p.get()) {
        0 => CharValue::Zero,
        1 => CharValue::Residue,
        r if r == p.get() - 1 => CharValue::NonResidue,
        r => unreachable!("{r} is not +-1 mod prime {p}"),
    }
}

/// The supplementary law `(2 | p) = (-1)^((p^2 - 1) / 8)`, evaluated literally.
pub fn supplementary_two(p: PrimeModulus) -> CharValue {
    let p = p.get() as u128;
    if ((p * p - 1) / 8).is_multiple_of(2) {
        CharValue::Residue
    } else {
        CharValue::NonResidue
    }
}
