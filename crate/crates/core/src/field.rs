//! Exact scalars over ℚ and prime fields.
//!
//! Rationals keep a machine-word fast path and promote to arbitrary
//! precision only when an intermediate result leaves the `i64` range.
//! Prime-field residues are stored together with their modulus so that
//! `&a + &b` works without threading the field through every call.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive): residues fit one word and
/// products fit `u128`.
pub const MAX_PRIME: u64 = 1 << 61;

/// The base field of every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Validated constructor for a prime field.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::InvalidField(format!("modulus {p} exceeds 2^61")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Small { num: 0, den: 1 },
            Field::Prime(p) => Scalar::Mod { value: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Small { num: n, den: 1 },
            Field::Prime(p) => Scalar::Mod { value: reduce_i128(n as i128, *p), p: *p },
        }
    }

    /// `num/den` in this field; `den` must be nonzero in the field.
    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Parse(String::from("zero denominator")));
        }
        let d = self.from_i64(den);
        if d.is_zero() {
            return Err(Error::Parse(format!("denominator {den} vanishes in {self}")));
        }
        Ok(&self.from_i64(num) / &d)
    }

    /// Parse `"3"`, `"-3/2"` (rationals) or an integer residue (prime fields;
    /// fractions are also accepted when the denominator is invertible).
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let (n, d) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let bad = || Error::Parse(format!("invalid scalar literal {text:?}"));
        let num: BigInt = n.parse().map_err(|_| bad())?;
        let den: BigInt = d.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rationals => Ok(Scalar::from_big(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pm = BigInt::from(*p);
                let a = num.mod_floor(&pm).to_u64().ok_or_else(bad)?;
                let b = den.mod_floor(&pm).to_u64().ok_or_else(bad)?;
                if b == 0 {
                    return Err(Error::Parse(format!("denominator of {text:?} vanishes mod {p}")));
                }
                Ok(&Scalar::Mod { value: a, p: *p } / &Scalar::Mod { value: b, p: *p })
            }
        }
    }

    /// Number of elements, when finite.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
        }
    }

    /// Enumerate the `i`-th element of a finite field (`0..p`).
    pub fn element(&self, i: u64) -> Scalar {
        match self {
            Field::Rationals => self.from_i64(i as i64),
            Field::Prime(p) => Scalar::Mod { value: i % p, p: *p },
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn reduce_i128(n: i128, p: u64) -> u64 {
    n.rem_euclid(p as i128) as u64
}

/// An exact field element.
///
/// Rationals are always in lowest terms with positive denominator, and use
/// `Big` only when numerator or denominator does not fit in `i64`; this
/// makes the derived equality canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    fn from_big(r: BigRational) -> Scalar {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(num), Some(den)) => Scalar::Small { num, den },
            _ => Scalar::Big(Box::new(r)),
        }
    }

    fn small(num: i128, den: i128) -> Scalar {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Scalar::Small { num, den },
            _ => Scalar::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Scalar::Big(b) => (**b).clone(),
            Scalar::Mod { .. } => panic!("prime-field residue used as a rational"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Small { num, .. } => *num == 0,
            Scalar::Big(_) => false,
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Small { num, den } => *num == 1 && *den == 1,
            Scalar::Big(_) => false,
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod { p, .. } => Field::Prime(*p),
            _ => Field::Rationals,
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero");
        match self {
            Scalar::Small { num, den } => Scalar::small(*den as i128, *num as i128),
            Scalar::Big(b) => Scalar::from_big(b.recip()),
            Scalar::Mod { value, p } => Scalar::Mod { value: pow_mod(*value, p - 2, *p), p: *p },
        }
    }

    /// Integer numerator and denominator of a rational (residues give `(v, 1)`).
    pub fn to_fraction(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Mod { value, .. } => (BigInt::from(*value), BigInt::one()),
            other => {
                let b = other.to_big();
                (b.numer().clone(), b.denom().clone())
            }
        }
    }

    pub fn from_fraction(field: Field, num: &BigInt, den: &BigInt) -> Scalar {
        match field {
            Field::Rationals => Scalar::from_big(BigRational::new(num.clone(), den.clone())),
            Field::Prime(p) => {
                let pm = BigInt::from(p);
                let a = num.mod_floor(&pm).to_u64().unwrap();
                let b = den.mod_floor(&pm).to_u64().unwrap();
                &Scalar::Mod { value: a, p } / &Scalar::Mod { value: b, p }
            }
        }
    }

    /// Residue value for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            _ => None,
        }
    }

    fn cmp_rational(&self, other: &Scalar) -> Ordering {
        self.to_big().cmp(&other.to_big())
    }

    /// Sign of a rational (`0` for residues).
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Small { num, .. } => num.signum() as i32,
            Scalar::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
            Scalar::Mod { .. } => 0,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Mod { .. }, _) | (_, Scalar::Mod { .. }) => None,
            _ => Some(self.cmp_rational(other)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small { num, den } if *den == 1 => write!(f, "{num}"),
            Scalar::Small { num, den } => write!(f, "{num}/{den}"),
            Scalar::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Scalar::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

fn same_prime(p: u64, q: u64) -> u64 {
    assert_eq!(p, q, "mixed prime fields");
    p
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Small { num: a, den: b }, Scalar::Small { num: c, den: d }) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_add(*c) {
                        Some(s) => Scalar::Small { num: s, den: 1 },
                        None => Scalar::small(*a as i128 + *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match a.checked_mul(d).zip(c.checked_mul(b)).and_then(|(x, y)| x.checked_add(y)) {
                    Some(n) => Scalar::small(n, b * d),
                    None => Scalar::from_big(self.to_big() + rhs.to_big()),
                }
            }
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) => {
                let p = same_prime(*p, *q);
                let s = a + b;
                Scalar::Mod { value: if s >= p { s - p } else { s }, p }
            }
            _ => Scalar::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Small { num, den } => match num.checked_neg() {
                Some(n) => Scalar::Small { num: n, den: *den },
                None => Scalar::small(-(*num as i128), *den as i128),
            },
            Scalar::Big(b) => Scalar::from_big(-(**b).clone()),
            Scalar::Mod { value, p } => Scalar::Mod { value: if *value == 0 { 0 } else { p - value }, p: *p },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Small { num: a, den: b }, Scalar::Small { num: c, den: d }) => {
                if *a == 0 || *c == 0 {
                    return Scalar::Small { num: 0, den: 1 };
                }
                if *b == 1 && *d == 1 {
                    return match a.checked_mul(*c) {
                        Some(s) => Scalar::Small { num: s, den: 1 },
                        None => Scalar::small(*a as i128 * *c as i128, 1),
                    };
                }
                Scalar::small(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) => {
                let p = same_prime(*p, *q);
                Scalar::Mod { value: mul_mod(*a, *b, p), p }
            }
            _ => Scalar::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);
