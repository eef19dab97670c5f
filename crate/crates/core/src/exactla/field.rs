//! Ground fields and their elements.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::LinAlgError;

/// The ground field: the rationals or a prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// `F_p`, rejecting composite or tiny moduli. The modulus must fit in 32 bits so
    /// products never overflow.
    pub fn prime(p: u64) -> Result<Self, LinAlgError> {
        if is_prime(p) && p < (1 << 32) {
            Ok(Field::Prime(p))
        } else {
            Err(LinAlgError::NotPrime(p))
        }
    }

    /// Characteristic of the field, 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let m = *p as i64;
                Scalar::Fp { v: n.rem_euclid(m) as u64, p: *p }
            }
        }
    }

    /// `num / den` in this field. Panics if `den` vanishes in the field.
    pub fn fraction(&self, num: i64, den: i64) -> Scalar {
        let d = self.from_i64(den);
        assert!(!d.is_zero(), "denominator vanishes in {self}");
        self.from_i64(num).mul(&d.inv())
    }

    /// Whether `n` is invertible in this field (Maschke-style tests on group orders).
    pub fn is_unit(&self, n: u64) -> bool {
        match self {
            Field::Rationals => n != 0,
            Field::Prime(p) => n % p != 0,
        }
    }

    /// Canonical short code: `q`, `f2`, `f3`, ...
    pub fn code(&self) -> String {
        match self {
            Field::Rationals => "q".to_string(),
            Field::Prime(p) => format!("f{p}"),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rationals, Scalar::Q(_)) => true,
            (Field::Prime(p), Scalar::Fp { p: q, .. }) => p == q,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = LinAlgError;

    /// Accepts `q`, `Q`, `rationals`, `f<p>`, `F<p>` and `prime <p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        if lower == "q" || lower == "rationals" {
            return Ok(Field::Rationals);
        }
        let digits = if let Some(rest) = lower.strip_prefix("prime") {
            rest.trim()
        } else if let Some(rest) = lower.strip_prefix('f') {
            rest.trim_start_matches('_')
        } else {
            return Err(LinAlgError::BadField(t.to_string()));
        };
        let p: u64 = digits.parse().map_err(|_| LinAlgError::BadField(t.to_string()))?;
        Field::prime(p)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.code())
    }
}

/// An element of a [`Field`]. Prime-field elements carry their modulus so
/// arithmetic is self-contained; mixing fields panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: (a + b) % p, p: *p }
            }
            _ => panic!("field mismatch: {self} + {other}"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp { v: (p - v) % p, p: *p },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: a * b % p, p: *p }
            }
            _ => panic!("field mismatch: {self} * {other}"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp { v, p } => Scalar::Fp { v: pow_mod(*v, p - 2, *p), p: *p },
        }
    }

    /// Integer value when the element is an integer of small size (used in reports).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(a) if a.is_integer() => a.to_integer().to_i64(),
            Scalar::Q(_) => None,
            Scalar::Fp { v, .. } => Some(*v as i64),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(a) => {
                if a.is_integer() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_field_codes() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("f2".parse::<Field>().unwrap(), Field::Prime(2));
        assert_eq!("F_7".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!("prime 3".parse::<Field>().unwrap(), Field::Prime(3));
        assert!("f4".parse::<Field>().is_err());
        assert!("r".parse::<Field>().is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Prime(5);
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!(a.add(&b), f.from_i64(2));
        assert_eq!(a.mul(&b), f.from_i64(2));
        assert_eq!(a.inv().mul(&a), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert!(Field::Prime(2).from_i64(2).is_zero());
    }

    #[test]
    fn rational_arithmetic() {
        let q = Field::Rationals;
        let h = q.fraction(1, 2);
        assert_eq!(h.add(&h), q.one());
        assert_eq!(h.to_string(), "1/2");
        assert_eq!(q.from_i64(-3).to_string(), "-3");
    }

    #[test]
    #[should_panic]
    fn mixing_fields_panics() {
        let _ = Field::Rationals.one().add(&Field::Prime(2).one());
    }
}
