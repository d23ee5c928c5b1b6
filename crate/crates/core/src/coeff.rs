//! Exact coefficients in one of the computable rings ℤ, ℚ or ℤ/n.
//!
//! A [`Coefficient`] carries enough information to recover its ring, so two
//! coefficients from different rings are never silently combined: the
//! `checked_*` methods report [`CoeffError::MixedRings`] and the operator
//! impls panic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("coefficients from different rings: {0} and {1}")]
    MixedRings(RingSpec, RingSpec),
    #[error("{0} is not a unit in {1}")]
    NotAUnit(String, RingSpec),
    #[error("{0} is not an element of {1}")]
    NotRepresentable(String, RingSpec),
    #[error("invalid ring specification {0:?} (expected int, rat or zmod:<n> with n >= 2)")]
    BadRingSpec(String),
}

/// The coefficient ring of a session.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    Rationals,
    /// ℤ/n for `n >= 2`; composite moduli are allowed.
    IntegersMod(u64),
}

impl RingSpec {
    pub fn integers_mod(n: u64) -> Result<Self, CoeffError> {
        if n < 2 {
            return Err(CoeffError::BadRingSpec(format!("zmod:{n}")));
        }
        Ok(RingSpec::IntegersMod(n))
    }

    pub fn zero(&self) -> Coefficient {
        self.from_int(0)
    }

    pub fn one(&self) -> Coefficient {
        self.from_int(1)
    }

    pub fn from_int(&self, value: impl Into<BigInt>) -> Coefficient {
        self.from_bigint(&value.into())
    }

    pub fn from_bigint(&self, value: &BigInt) -> Coefficient {
        match *self {
            RingSpec::Integers => Coefficient::Int(value.clone()),
            RingSpec::Rationals => Coefficient::Rat(BigRational::from_integer(value.clone())),
            RingSpec::IntegersMod(n) => {
                let r = value.mod_floor(&BigInt::from(n));
                Coefficient::Mod {
                    value: r.to_u64().expect("residue fits the modulus"),
                    modulus: n,
                }
            }
        }
    }

    /// The element `num / den`, if it exists in this ring.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Coefficient, CoeffError> {
        let not_here = || CoeffError::NotRepresentable(format!("{num}/{den}"), *self);
        if den.is_zero() {
            return Err(not_here());
        }
        match *self {
            RingSpec::Integers => {
                let (q, r) = num.div_rem(den);
                if r.is_zero() {
                    Ok(Coefficient::Int(q))
                } else {
                    Err(not_here())
                }
            }
            RingSpec::Rationals => Ok(Coefficient::Rat(BigRational::new(num.clone(), den.clone()))),
            RingSpec::IntegersMod(_) => {
                let inv = self.from_bigint(den).unit_inverse().map_err(|_| not_here())?;
                Ok(&self.from_bigint(num) * &inv)
            }
        }
    }

    pub fn is_field(&self) -> bool {
        match *self {
            RingSpec::Integers => false,
            RingSpec::Rationals => true,
            RingSpec::IntegersMod(n) => is_prime_u64(n),
        }
    }

    /// Characteristic, `0` for ℤ and ℚ.
    pub fn characteristic(&self) -> u64 {
        match *self {
            RingSpec::IntegersMod(n) => n,
            _ => 0,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => f.write_str("int"),
            RingSpec::Rationals => f.write_str("rat"),
            RingSpec::IntegersMod(n) => write!(f, "zmod:{n}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CoeffError::BadRingSpec(s.to_string());
        match s.trim() {
            "int" => Ok(RingSpec::Integers),
            "rat" => Ok(RingSpec::Rationals),
            other => {
                let n = other
                    .strip_prefix("zmod:")
                    .and_then(|n| n.parse::<u64>().ok())
                    .ok_or_else(bad)?;
                RingSpec::integers_mod(n).map_err(|_| bad())
            }
        }
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of a [`RingSpec`], always in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Int(BigInt),
    /// Lowest terms with positive denominator (maintained by `BigRational`).
    Rat(BigRational),
    /// Residue in `[0, modulus)`.
    Mod { value: u64, modulus: u64 },
}

impl Coefficient {
    pub fn ring(&self) -> RingSpec {
        match self {
            Coefficient::Int(_) => RingSpec::Integers,
            Coefficient::Rat(_) => RingSpec::Rationals,
            Coefficient::Mod { modulus, .. } => RingSpec::IntegersMod(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Int(v) => v.is_zero(),
            Coefficient::Rat(v) => v.is_zero(),
            Coefficient::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Int(v) => v.is_one(),
            Coefficient::Rat(v) => v.is_one(),
            Coefficient::Mod { value, .. } => *value == 1,
        }
    }

    /// True for the "negative-looking" elements of ℤ and ℚ. Residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Coefficient::Int(v) => v.is_negative(),
            Coefficient::Rat(v) => v.is_negative(),
            Coefficient::Mod { .. } => false,
        }
    }

    /// Re-reduces the stored value. A no-op on values built through this module.
    pub fn normalized(&self) -> Coefficient {
        match self {
            Coefficient::Int(v) => Coefficient::Int(v.clone()),
            Coefficient::Rat(v) => Coefficient::Rat(BigRational::new(v.numer().clone(), v.denom().clone())),
            Coefficient::Mod { value, modulus } => Coefficient::Mod {
                value: value % modulus,
                modulus: *modulus,
            },
        }
    }

    fn same_ring(&self, other: &Coefficient) -> Result<(), CoeffError> {
        let (a, b) = (self.ring(), other.ring());
        if a == b {
            Ok(())
        } else {
            Err(CoeffError::MixedRings(a, b))
        }
    }

    pub fn checked_add(&self, other: &Coefficient) -> Result<Coefficient, CoeffError> {
        self.same_ring(other)?;
        Ok(match (self, other) {
            (Coefficient::Int(a), Coefficient::Int(b)) => Coefficient::Int(a + b),
            (Coefficient::Rat(a), Coefficient::Rat(b)) => Coefficient::Rat(a + b),
            (Coefficient::Mod { value: a, modulus }, Coefficient::Mod { value: b, .. }) => Coefficient::Mod {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Coefficient) -> Result<Coefficient, CoeffError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Coefficient) -> Result<Coefficient, CoeffError> {
        self.same_ring(other)?;
        Ok(match (self, other) {
            (Coefficient::Int(a), Coefficient::Int(b)) => Coefficient::Int(a * b),
            (Coefficient::Rat(a), Coefficient::Rat(b)) => Coefficient::Rat(a * b),
            (Coefficient::Mod { value: a, modulus }, Coefficient::Mod { value: b, .. }) => Coefficient::Mod {
                value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Coefficient::Int(v) => v.abs().is_one(),
            Coefficient::Rat(v) => !v.is_zero(),
            Coefficient::Mod { value, modulus } => value.gcd(modulus) == 1,
        }
    }

    pub fn unit_inverse(&self) -> Result<Coefficient, CoeffError> {
        if !self.is_unit() {
            return Err(CoeffError::NotAUnit(self.to_string(), self.ring()));
        }
        Ok(match self {
            Coefficient::Int(v) => Coefficient::Int(v.clone()),
            Coefficient::Rat(v) => Coefficient::Rat(v.recip()),
            Coefficient::Mod { value, modulus } => {
                let e = (*value as i128).extended_gcd(&(*modulus as i128));
                Coefficient::Mod {
                    value: e.x.rem_euclid(*modulus as i128) as u64,
                    modulus: *modulus,
                }
            }
        })
    }

    /// Integer representative: the value itself over ℤ, the residue in `[0, n)` over ℤ/n.
    /// `None` for non-integral rationals.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Coefficient::Int(v) => Some(v.clone()),
            Coefficient::Rat(v) => v.is_integer().then(|| v.to_integer()),
            Coefficient::Mod { value, .. } => Some(BigInt::from(*value)),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Int(v) => write!(f, "{v}"),
            Coefficient::Rat(v) => write!(f, "{v}"),
            Coefficient::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Int(v) => Coefficient::Int(-v),
            Coefficient::Rat(v) => Coefficient::Rat(-v),
            Coefficient::Mod { value, modulus } => Coefficient::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        -&self
    }
}

macro_rules! panicking_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Coefficient {
            type Output = Coefficient;

            fn $method(self, rhs: &Coefficient) -> Coefficient {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait for Coefficient {
            type Output = Coefficient;

            fn $method(self, rhs: Coefficient) -> Coefficient {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_binop!(Add, add, checked_add);
panicking_binop!(Sub, sub, checked_sub);
panicking_binop!(Mul, mul, checked_mul);

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve primes as bases suffice for all u64.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
