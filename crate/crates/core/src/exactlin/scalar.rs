use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field: the rationals, or integers modulo a prime `p < 2^16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if p < 2 || p >= (1 << 16) || !is_prime(p) {
            return Err(Error::Parse(format!("not a supported prime modulus: {p}")));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// 0 for the rationals, `p` for a prime field.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let m = *p as i128;
                let v = ((n as i128 % m) + m) % m;
                Scalar::Prime {
                    value: v as u64,
                    modulus: *p,
                }
            }
        }
    }

    /// Parses the JSON wire form: `"p/q"` or `"p"` for rationals,
    /// a non-negative integer below the modulus for prime fields.
    pub fn parse_scalar(&self, v: &serde_json::Value) -> Result<Scalar> {
        match self {
            FieldSpec::Rational => {
                let s = v
                    .as_str()
                    .ok_or_else(|| Error::Parse(format!("expected rational string, got {v}")))?;
                let (num, den) = match s.split_once('/') {
                    Some((a, b)) => (a, b),
                    None => (s, "1"),
                };
                let num: BigInt = num
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
                let den: BigInt = den
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::Prime(p) => {
                let n = v
                    .as_u64()
                    .ok_or_else(|| Error::Parse(format!("expected residue 0..{p}, got {v}")))?;
                if n >= *p {
                    return Err(Error::Parse(format!("residue {n} out of range mod {p}")));
                }
                Ok(Scalar::Prime {
                    value: n,
                    modulus: *p,
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with a
/// positive denominator (the representation `BigRational` maintains).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Prime { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Prime { value, modulus } => {
                if *value == 0 {
                    None
                } else {
                    Some(Scalar::Prime {
                        value: mod_inverse(*value, *modulus),
                        modulus: *modulus,
                    })
                }
            }
        }
    }

    /// Wire form used by the JSON interfaces.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    serde_json::Value::String(r.numer().to_string())
                } else {
                    serde_json::Value::String(format!("{}/{}", r.numer(), r.denom()))
                }
            }
            Scalar::Prime { value, .. } => serde_json::Value::from(*value),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() {
                    write!(f, "-{}/{}", r.numer().abs(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

fn check_same_modulus(a: u64, b: u64) {
    assert_eq!(a, b, "mixed prime moduli in scalar arithmetic");
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Prime { value: a, modulus: p },
                Scalar::Prime { value: b, modulus: q },
            ) => {
                check_same_modulus(*p, *q);
                Scalar::Prime {
                    value: (a + b) % p,
                    modulus: *p,
                }
            }
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (
                Scalar::Prime { value: a, modulus: p },
                Scalar::Prime { value: b, modulus: q },
            ) => {
                check_same_modulus(*p, *q);
                Scalar::Prime {
                    value: (a + p - b) % p,
                    modulus: *p,
                }
            }
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Prime { value: a, modulus: p },
                Scalar::Prime { value: b, modulus: q },
            ) => {
                check_same_modulus(*p, *q);
                // p < 2^16 so the product fits in u64 comfortably
                Scalar::Prime {
                    value: (a * b) % p,
                    modulus: *p,
                }
            }
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on i128 to dodge sign juggling
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of non-unit mod {p}");
    (((t % p as i128) + p as i128) % p as i128) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lowest_terms_positive_denominator() {
        let q = FieldSpec::Rational;
        let half = q.parse_scalar(&serde_json::json!("2/4")).unwrap();
        assert_eq!(half.to_string(), "1/2");
        let neg = q.parse_scalar(&serde_json::json!("3/-6")).unwrap();
        assert_eq!(neg.to_string(), "-1/2");
        let int = q.parse_scalar(&serde_json::json!("7")).unwrap();
        assert_eq!(int.to_json(), serde_json::json!("7"));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f7 = FieldSpec::prime(7).unwrap();
        let a = f7.from_i64(5);
        let b = f7.from_i64(4);
        assert_eq!(&a + &b, f7.from_i64(2));
        assert_eq!(&a * &b, f7.from_i64(6));
        assert_eq!(&a - &b, f7.from_i64(1));
        assert_eq!(-&a, f7.from_i64(2));
        assert_eq!(a.inv().unwrap(), f7.from_i64(3)); // 5 * 3 = 15 = 1 mod 7
        assert!(f7.zero().inv().is_none());
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(6).is_err());
        assert!(FieldSpec::prime(1 << 16).is_err());
        assert!(FieldSpec::prime(65521).is_ok()); // largest prime below 2^16
    }

    #[test]
    fn from_i64_wraps_negatives_mod_p() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.from_i64(-3), f5.from_i64(2));
        assert_eq!(f5.from_i64(-10), f5.zero());
    }
}
