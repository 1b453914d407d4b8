//! Fixed-point real arithmetic over arbitrary-size integers.
//!
//! A [`FixedReal`] stores `mantissa / 2^precision` with an unbounded integer
//! mantissa, so the integer part never saturates and every operation rounds
//! at most once (to nearest, ties away from zero). Per-operation error is
//! bounded by `2^-(precision+1)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::NumError;

/// Real number stored as `mantissa / 2^precision`.
#[derive(Clone, Debug)]
pub struct FixedReal {
    mantissa: BigInt,
    precision: u32,
}

/// Divide rounding to nearest, ties away from zero. `den` must be positive.
fn div_round_nearest(num: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(den.is_positive());
    let two = BigInt::from(2);
    let (q, r) = num.div_mod_floor(den);
    // r in [0, den); round up when 2r >= den
    if &(&r * &two) >= den {
        q + BigInt::one()
    } else {
        q
    }
}

impl FixedReal {
    pub fn from_mantissa(mantissa: BigInt, precision: u32) -> Self {
        FixedReal { mantissa, precision }
    }

    pub fn zero(precision: u32) -> Self {
        FixedReal { mantissa: BigInt::zero(), precision }
    }

    pub fn one(precision: u32) -> Self {
        FixedReal { mantissa: BigInt::one() << precision, precision }
    }

    pub fn from_integer(v: i64, precision: u32) -> Self {
        FixedReal { mantissa: BigInt::from(v) << precision, precision }
    }

    /// `2^exponent` at the given precision; exponents below `-precision` round to zero.
    pub fn pow2(exponent: i32, precision: u32) -> Self {
        let shift = exponent + precision as i32;
        if shift < 0 {
            FixedReal::zero(precision)
        } else {
            FixedReal { mantissa: BigInt::one() << shift as u32, precision }
        }
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, precision: u32) -> Result<Self, NumError> {
        if den.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let (n, d) = if den.is_negative() {
            (-num.clone(), -den.clone())
        } else {
            (num.clone(), den.clone())
        };
        Ok(FixedReal {
            mantissa: div_round_nearest(&(n << precision), &d),
            precision,
        })
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        FixedReal { mantissa: self.mantissa.abs(), precision: self.precision }
    }

    fn check_precision(&self, other: &Self) {
        assert_eq!(
            self.precision, other.precision,
            "fixed-point operands must share the same precision"
        );
    }

    /// Square root, rounded to nearest representable value.
    pub fn sqrt(&self) -> Result<Self, NumError> {
        if self.mantissa.is_negative() {
            return Err(NumError::NegativeSqrt);
        }
        // sqrt(m / 2^P) = sqrt(m * 2^P) / 2^P
        let shifted = self.mantissa.magnitude() << self.precision;
        let floor = shifted.sqrt();
        // nearest: x > s^2 + s means x is closer to (s+1)^2
        let s2 = &floor * &floor;
        let rounded = if &shifted - &s2 > floor.clone() { floor + BigUint::one() } else { floor };
        Ok(FixedReal {
            mantissa: BigInt::from_biguint(Sign::Plus, rounded),
            precision: self.precision,
        })
    }

    /// Multiply by an exact rational with a single rounding.
    pub fn mul_rational(&self, num: &BigInt, den: &BigInt) -> Self {
        assert!(!den.is_zero(), "rational multiplier must have nonzero denominator");
        let (n, d) = if den.is_negative() {
            (-(num.clone()), -(den.clone()))
        } else {
            (num.clone(), den.clone())
        };
        FixedReal {
            mantissa: div_round_nearest(&(&self.mantissa * n), &d),
            precision: self.precision,
        }
    }

    /// Fractional part folded into `[0, 1)`.
    pub fn mod_one(&self) -> Self {
        let modulus = BigInt::one() << self.precision;
        FixedReal { mantissa: self.mantissa.mod_floor(&modulus), precision: self.precision }
    }

    /// Uniform value in `(0, 1)` from `precision` random bits (zero is redrawn).
    pub fn random_unit<R: rand::Rng>(rng: &mut R, precision: u32) -> Self {
        loop {
            let bytes: Vec<u8> = (0..(precision as usize + 7) / 8).map(|_| rng.gen()).collect();
            let mut m = BigUint::from_bytes_le(&bytes);
            let mask = (BigUint::one() << precision) - BigUint::one();
            m &= mask;
            if !m.is_zero() {
                return FixedReal {
                    mantissa: BigInt::from_biguint(Sign::Plus, m),
                    precision,
                };
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        // good to ~53 bits, plenty for display and statistics
        let p = self.precision.min(60);
        let scaled = &self.mantissa >> (self.precision - p);
        scaled.to_f64().unwrap_or(f64::NAN) / 2f64.powi(p as i32)
    }

    /// Decimal string rounded to `digits` fractional digits, no trailing zeros trimmed.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let neg = self.mantissa.is_negative();
        let mag = self.mantissa.magnitude();
        let int_part = mag >> self.precision;
        let frac_mask = (BigUint::one() << self.precision) - BigUint::one();
        let frac = mag & &frac_mask;
        let scale = BigUint::from(10u32).pow(digits);
        let scaled = div_round_nearest(
            &BigInt::from_biguint(Sign::Plus, frac * &scale),
            &BigInt::from_biguint(Sign::Plus, BigUint::one() << self.precision),
        );
        // rounding can carry into the integer part
        let (int_part, scaled) = if scaled.magnitude() >= &scale {
            (int_part + BigUint::one(), scaled - BigInt::from_biguint(Sign::Plus, scale.clone()))
        } else {
            (int_part, scaled)
        };
        let frac_str = format!("{:0>width$}", scaled.magnitude().to_str_radix(10), width = digits as usize);
        format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_str)
    }

    /// Exact hexadecimal representation: `[-]0xIII.FFF…p<precision>`.
    pub fn to_hex_string(&self) -> String {
        let neg = self.mantissa.is_negative();
        let mag = self.mantissa.magnitude();
        let int_part = mag >> self.precision;
        let frac_mask = (BigUint::one() << self.precision) - BigUint::one();
        let frac = mag & &frac_mask;
        let nibbles = (self.precision as usize + 3) / 4;
        // pad fraction to full width so the encoding is positional
        let frac_str = format!("{:0>width$}", frac.to_str_radix(16), width = nibbles);
        format!(
            "{}0x{}.{}p{}",
            if neg { "-" } else { "" },
            int_part.to_str_radix(16),
            frac_str,
            self.precision
        )
    }

    pub fn from_hex_string(s: &str) -> Result<Self, NumError> {
        let parse_err = |msg: &str| NumError::Parse { pos: 0, msg: msg.to_string() };
        let (neg, rest) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let rest = rest.strip_prefix("0x").ok_or_else(|| parse_err("missing 0x"))?;
        let (digits, prec) = rest.split_once('p').ok_or_else(|| parse_err("missing precision"))?;
        let (int_s, frac_s) = digits.split_once('.').ok_or_else(|| parse_err("missing point"))?;
        let precision: u32 = prec.parse().map_err(|_| parse_err("bad precision"))?;
        let int_part = BigUint::parse_bytes(int_s.as_bytes(), 16).ok_or_else(|| parse_err("bad integer part"))?;
        let frac = BigUint::parse_bytes(frac_s.as_bytes(), 16).ok_or_else(|| parse_err("bad fraction"))?;
        let frac_bits = 4 * frac_s.len() as u32;
        if frac_bits < precision {
            return Err(parse_err("fraction too short"));
        }
        let frac_aligned = frac >> (frac_bits - precision);
        let mag = (int_part << precision) | frac_aligned;
        let mantissa = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag);
        Ok(FixedReal { mantissa, precision })
    }
}

impl PartialEq for FixedReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FixedReal {}

impl PartialOrd for FixedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FixedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        // compare mathematically even across precisions
        if self.precision == other.precision {
            self.mantissa.cmp(&other.mantissa)
        } else if self.precision < other.precision {
            (&self.mantissa << (other.precision - self.precision)).cmp(&other.mantissa)
        } else {
            self.mantissa.cmp(&(&other.mantissa << (self.precision - other.precision)))
        }
    }
}

impl Add for &FixedReal {
    type Output = FixedReal;
    fn add(self, rhs: &FixedReal) -> FixedReal {
        self.check_precision(rhs);
        FixedReal { mantissa: &self.mantissa + &rhs.mantissa, precision: self.precision }
    }
}

impl Sub for &FixedReal {
    type Output = FixedReal;
    fn sub(self, rhs: &FixedReal) -> FixedReal {
        self.check_precision(rhs);
        FixedReal { mantissa: &self.mantissa - &rhs.mantissa, precision: self.precision }
    }
}

impl Mul for &FixedReal {
    type Output = FixedReal;
    fn mul(self, rhs: &FixedReal) -> FixedReal {
        self.check_precision(rhs);
        let product = &self.mantissa * &rhs.mantissa;
        let den = BigInt::one() << self.precision;
        FixedReal { mantissa: div_round_nearest(&product, &den), precision: self.precision }
    }
}

impl Div for &FixedReal {
    type Output = FixedReal;
    fn div(self, rhs: &FixedReal) -> FixedReal {
        self.check_precision(rhs);
        assert!(!rhs.mantissa.is_zero(), "fixed-point division by zero");
        let (n, d) = if rhs.mantissa.is_negative() {
            (-(&self.mantissa), -(&rhs.mantissa))
        } else {
            (self.mantissa.clone(), rhs.mantissa.clone())
        };
        FixedReal { mantissa: div_round_nearest(&(n << self.precision), &d), precision: self.precision }
    }
}

impl Neg for &FixedReal {
    type Output = FixedReal;
    fn neg(self) -> FixedReal {
        FixedReal { mantissa: -(&self.mantissa), precision: self.precision }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for FixedReal {
            type Output = FixedReal;
            fn $method(self, rhs: FixedReal) -> FixedReal {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for FixedReal {
    type Output = FixedReal;
    fn neg(self) -> FixedReal {
        -(&self)
    }
}

impl fmt::Display for FixedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(24))
    }
}

impl Serialize for FixedReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex_string())
    }
}

impl<'de> Deserialize<'de> for FixedReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        FixedReal::from_hex_string(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn half() -> FixedReal {
        FixedReal::from_ratio(&BigInt::from(1), &BigInt::from(2), P).unwrap()
    }

    #[test]
    fn add_sub_are_exact() {
        let a = FixedReal::from_ratio(&BigInt::from(3), &BigInt::from(8), P).unwrap();
        let b = FixedReal::from_ratio(&BigInt::from(1), &BigInt::from(8), P).unwrap();
        assert_eq!(&a + &b, half());
        assert_eq!(&(&a + &b) - &a, b);
    }

    #[test]
    fn mul_rounds_within_half_ulp() {
        let third = FixedReal::from_ratio(&BigInt::from(1), &BigInt::from(3), P).unwrap();
        let product = &third * &FixedReal::from_integer(3, P);
        let err = (&product - &FixedReal::one(P)).abs();
        assert!(err <= FixedReal::pow2(2 - P as i32, P));
    }

    #[test]
    fn sqrt_two_over_two_reference_digits() {
        let two = FixedReal::from_integer(2, P);
        let r = &two.sqrt().unwrap() / &two;
        let s = r.to_decimal_string(18);
        assert_eq!(s, "0.707106781186547524");
    }

    #[test]
    fn sqrt_matches_double_precision_oracle() {
        // Newton-style oracle: compute at 2P bits, truncate, compare
        for k in [2u64, 3, 5, 7, 10, 1234] {
            let x = FixedReal::from_integer(k as i64, P);
            let hi = FixedReal::from_integer(k as i64, 2 * P).sqrt().unwrap();
            let lo = x.sqrt().unwrap();
            let hi_down = FixedReal::from_mantissa(hi.mantissa().clone() >> P, P);
            let err = (&lo - &hi_down).abs();
            assert!(err <= FixedReal::pow2(1 - P as i32, P), "sqrt({k}) off by {}", err.to_hex_string());
        }
    }

    #[test]
    fn mod_one_wraps_negative_values() {
        let v = FixedReal::from_ratio(&BigInt::from(-1), &BigInt::from(4), P).unwrap();
        assert_eq!(v.mod_one(), FixedReal::from_ratio(&BigInt::from(3), &BigInt::from(4), P).unwrap());
        let w = FixedReal::from_ratio(&BigInt::from(5), &BigInt::from(4), P).unwrap();
        assert_eq!(w.mod_one(), FixedReal::from_ratio(&BigInt::from(1), &BigInt::from(4), P).unwrap());
    }

    #[test]
    fn hex_round_trip() {
        let vals = [
            half(),
            FixedReal::from_ratio(&BigInt::from(-7), &BigInt::from(3), P).unwrap(),
            FixedReal::zero(P),
            FixedReal::from_integer(42, P),
        ];
        for v in vals {
            let s = v.to_hex_string();
            assert_eq!(FixedReal::from_hex_string(&s).unwrap(), v, "{s}");
        }
    }

    #[test]
    fn decimal_string_carries_on_round_up() {
        // 0.9999... rounded at 3 digits becomes 1.000
        let v = FixedReal::from_ratio(&BigInt::from(9999), &BigInt::from(10000), P).unwrap();
        assert_eq!(v.to_decimal_string(3), "1.000");
    }

    #[test]
    fn cross_precision_compare() {
        let a = FixedReal::from_ratio(&BigInt::from(1), &BigInt::from(2), 64).unwrap();
        let b = half();
        assert_eq!(a, b);
    }
}
