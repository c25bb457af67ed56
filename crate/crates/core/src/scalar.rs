//! Exact coefficients: rationals in lowest terms or residues modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (2^31 - 1).
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// Coefficient field of a ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field `F_p`, rejecting composites and moduli above [`MAX_MODULUS`].
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_MODULUS {
            return Err(Error::Validation(format!(
                "modulus {p} exceeds the supported bound {MAX_MODULUS}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::Validation(format!("modulus {p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime {
                residue: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let num = reduce_bigint(q.numer(), p);
                let den = reduce_bigint(q.denom(), p);
                if den == 0 {
                    return Err(Error::Validation(format!(
                        "denominator of {q} is divisible by the characteristic {p}"
                    )));
                }
                Ok(Scalar::Prime {
                    residue: mul_mod(num, inv_mod(den, p), p),
                    modulus: p,
                })
            }
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact field element.
///
/// Arithmetic between different variants or moduli is a programming error
/// and panics; every polynomial of a ring shares one [`Field`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { residue: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { residue, .. } => *residue == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: inv_mod(*residue, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Residue modulo `p` of this coefficient, if it has one.
    pub fn to_residue(&self, p: u64) -> Result<u64> {
        match self {
            Scalar::Prime { residue, modulus } if *modulus == p => Ok(*residue),
            Scalar::Prime { modulus, .. } => Err(Error::Structural(format!(
                "cannot reduce an F{modulus} coefficient modulo {p}"
            ))),
            Scalar::Rational(q) => match Field::Prime(p).from_rational(q)? {
                Scalar::Prime { residue, .. } => Ok(residue),
                Scalar::Rational(_) => unreachable!(),
            },
        }
    }

    /// True for negative rationals; prime-field residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Prime { .. } => None,
        }
    }

    fn check_same(&self, other: &Scalar) {
        let (a, b) = (self.field(), other.field());
        assert!(a == b, "mixed coefficient fields {a} and {b}");
    }
}

/// Rational scalar.
impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Field::Rational.from_i64(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { residue: a, modulus }, Scalar::Prime { residue: b, .. }) => {
                Scalar::Prime {
                    residue: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
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
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { residue: a, modulus }, Scalar::Prime { residue: b, .. }) => {
                Scalar::Prime {
                    residue: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Deterministic primality test by trial division; exact for `p <= 2^31 - 1`.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}
