//! Exact scalar fields.
//!
//! Every computation in the crate is generic over a [`Scalar`]. Two families
//! are provided: the prime fields [`Fp`] (modulus fixed at the type level) and
//! the rationals [`Rational`]. Decomposition-type operations need a prime
//! field; they check [`Scalar::characteristic`] at run time.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ArsError, Result};

/// Which base field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldSpec {
    PrimeField { p: u64 },
    Rationals,
}

impl FieldSpec {
    pub const DEFAULT: FieldSpec = FieldSpec::PrimeField { p: 32003 };

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::PrimeField { p } => *p,
            FieldSpec::Rationals => 0,
        }
    }

    /// Checks primality and the lower bound on the modulus.
    pub fn validate(&self) -> Result<()> {
        if let FieldSpec::PrimeField { p } = *self {
            if !is_prime(p) {
                return Err(ArsError::InvalidField(format!("{p} is not prime")));
            }
            if p <= 1 << 10 {
                return Err(ArsError::InvalidField(format!(
                    "modulus {p} must exceed 2^10"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::PrimeField { p } => write!(f, "p:{p}"),
            FieldSpec::Rationals => write!(f, "q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ArsError;

    fn from_str(s: &str) -> Result<Self> {
        let spec = match s.trim() {
            "q" | "Q" => FieldSpec::Rationals,
            other => {
                let digits = other.strip_prefix("p:").ok_or_else(|| {
                    ArsError::InvalidField(format!("expected `p:<prime>` or `q`, got `{other}`"))
                })?;
                let p = digits
                    .parse::<u64>()
                    .map_err(|_| ArsError::InvalidField(format!("bad modulus `{digits}`")))?;
                FieldSpec::PrimeField { p }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A uniform element of a prime field, or a small integer in characteristic
/// zero.
pub fn random_scalar<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    match S::characteristic() {
        0 => S::from_i64(rng.gen_range(-64..=64)),
        c => S::from_i64(rng.gen_range(0..c) as i64),
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn field() -> FieldSpec;

    fn inv(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    /// Reduces the fraction `num/den` into the field; `None` when `den`
    /// vanishes there.
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self>;

    fn characteristic() -> u64 {
        Self::field().characteristic()
    }

    /// Canonical text form, accepted back by [`Scalar::parse`].
    fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses an integer or `a/b` literal and reduces it into the field.
    fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let n = BigInt::from_str(n).ok()?;
        let d = BigInt::from_str(d).ok()?;
        Self::from_fraction(&n, &d)
    }
}

/// The prime field `Z/P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Symmetric representative reads better for signs like -1.
        if self.0 > P / 2 {
            write!(f, "-{}", P - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in prime field")
    }
}

impl<const P: u64> Rem for Fp<P> {
    type Output = Self;
    fn rem(self, _rhs: Self) -> Self {
        Fp(0)
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn field() -> FieldSpec {
        FieldSpec::PrimeField { p: P }
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Extended Euclid on i128 to stay clear of overflow for 63-bit moduli.
        let (mut old_r, mut r) = (self.0 as i128, P as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        if old_r != 1 {
            return None;
        }
        Some(Fp(old_s.rem_euclid(P as i128) as u64))
    }

    fn from_i64(v: i64) -> Self {
        Fp((v as i128).rem_euclid(P as i128) as u64)
    }

    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        let p = BigInt::from(P);
        let n = num.mod_floor(&p).to_u64()?;
        let d = den.mod_floor(&p).to_u64()?;
        Fp(d).inv().map(|di| Fp(n) * di)
    }

    fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! rational_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Self;
            fn $method(self, rhs: Self) -> Self {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);
rational_binop!(Div, div);

impl Neg for Rational {
    type Output = Self;
    fn neg(self) -> Self {
        Rational(-self.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
}

impl Scalar for Rational {
    fn field() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(num.clone(), den.clone())))
        }
    }

    fn to_text(&self) -> String {
        if self.0.denom().is_one() {
            self.0.numer().to_string()
        } else if self.0.is_negative() {
            format!("-{}/{}", self.0.numer().abs(), self.0.denom())
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }
}
