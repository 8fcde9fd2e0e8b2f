//! Exact field arithmetic: arbitrary-precision rationals and prime fields.

use crate::error::AlgebraError;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// The ground field of a computation.  Rationals are the default; `F_p` is
/// opt-in for speed and requires `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, AlgebraError> {
        if is_prime_u64(p) {
            Ok(Field::Prime(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rat(BigRational::zero()),
            Field::Prime(p) => FieldElem::Fp { val: 0, p: *p },
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                FieldElem::Fp { val: r, p: *p }
            }
        }
    }

    /// Builds `num/den` in this field; `den` must be invertible.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElem, AlgebraError> {
        self.from_i64(num).div(&self.from_i64(den))
    }
}

/// A single scalar.  Rationals are kept reduced with positive denominator
/// (enforced by `BigRational`); prime-field values are residues in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(BigRational),
    Fp { val: u64, p: u64 },
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rat(_) => Field::Rational,
            FieldElem::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_one(),
            FieldElem::Fp { val, .. } => *val == 1,
        }
    }

    fn check_same(&self, other: &FieldElem) {
        assert_eq!(
            self.field(),
            other.field(),
            "mixed field kinds or moduli in scalar arithmetic"
        );
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        self.check_same(other);
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            (FieldElem::Fp { val: a, p }, FieldElem::Fp { val: b, .. }) => {
                let s = (*a as u128 + *b as u128) % (*p as u128);
                FieldElem::Fp { val: s as u64, p: *p }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        self.check_same(other);
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            (FieldElem::Fp { val: a, p }, FieldElem::Fp { val: b, .. }) => {
                let m = (*a as u128 * *b as u128) % (*p as u128);
                FieldElem::Fp { val: m as u64, p: *p }
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Rat(a) => FieldElem::Rat(-a),
            FieldElem::Fp { val, p } => FieldElem::Fp {
                val: if *val == 0 { 0 } else { p - val },
                p: *p,
            },
        }
    }

    pub fn inv(&self) -> Result<FieldElem, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            FieldElem::Rat(a) => FieldElem::Rat(a.recip()),
            FieldElem::Fp { val, p } => FieldElem::Fp {
                val: pow_mod(*val, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem, AlgebraError> {
        if self.field() != other.field() {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(self.mul(&other.inv()?))
    }

    /// Whether a rational prints with a leading minus sign.
    pub fn is_display_negative(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_negative(),
            FieldElem::Fp { .. } => false,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElem::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(_) => write!(f, "{self}"),
            FieldElem::Fp { p, .. } => write!(f, "{self} (mod {p})"),
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for u64 inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
