//! Helpers for exact rationals: parsing, denominator lcm, conversion to
//! fixed point, and continued-fraction rationalization.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{FixedReal, NumError, Rational};

/// Parse `"a/b"` or `"a"` into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational, NumError> {
    let err = |msg: &str| NumError::Parse { pos: 0, msg: format!("{msg}: {s:?}") };
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_s.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = match den_s {
        Some(d) => d.parse().map_err(|_| err("bad denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Least common multiple of the denominators of all values.
pub fn lcm_denominators(values: &[Rational]) -> Result<BigUint, NumError> {
    if values.is_empty() {
        return Err(NumError::Empty("lcm_denominators needs at least one value"));
    }
    let mut acc = BigUint::one();
    for v in values {
        acc = acc.lcm(v.denom().magnitude());
    }
    Ok(acc)
}

pub fn rational_to_fixed(r: &Rational, precision: u32) -> FixedReal {
    FixedReal::from_ratio(r.numer(), r.denom(), precision)
        .expect("canonical rational has nonzero denominator")
}

/// Best rational approximation of `x` with denominator at most `max_denominator`,
/// found by walking the continued-fraction convergents and the final semiconvergent.
pub fn rationalize(x: &FixedReal, max_denominator: &BigUint) -> Result<Rational, NumError> {
    if max_denominator.is_zero() {
        return Err(NumError::OutOfRange("max_denominator must be positive".into()));
    }
    if x.is_negative() || x > &FixedReal::one(x.precision()) {
        return Err(NumError::OutOfRange(format!(
            "rationalize expects a value in [0, 1], got {x}"
        )));
    }
    let bound = BigInt::from(max_denominator.clone());
    // exact value of x as a rational
    let mut n = x.mantissa().clone();
    let mut d = BigInt::one() << x.precision();
    let target = Rational::new(n.clone(), d.clone());

    // convergents p/q of the continued fraction of n/d
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q) = (n.div_floor(&d), BigInt::one());
    let mut rem = &n - &p * &d;
    loop {
        if rem.is_zero() {
            // exact representation reached within the bound
            return Ok(Rational::new(p, q));
        }
        n = d;
        d = rem;
        let a = n.div_floor(&d);
        rem = &n - &a * &d;
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        if q_next > bound {
            // best semiconvergent that still fits the bound
            let steps = (&bound - &q_prev).div_floor(&q);
            let semi_p = &steps * &p + &p_prev;
            let semi_q = &steps * &q + &q_prev;
            let conv = Rational::new(p, q);
            if semi_q.is_positive() {
                let semi = Rational::new(semi_p, semi_q);
                let err_semi = (&semi - &target).abs();
                let err_conv = (&conv - &target).abs();
                if err_semi < err_conv {
                    return Ok(semi);
                }
            }
            return Ok(conv);
        }
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::DEFAULT_PRECISION as P;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn lcm_of_step3_examples() {
        let a = [rat(1, 3), rat(1, 3), rat(1, 3), rat(1, 2), rat(1, 3), rat(1, 6)];
        assert_eq!(lcm_denominators(&a).unwrap(), BigUint::from(6u32));
        let b = [
            rat(3, 7),
            rat(1, 4),
            rat(17, 28),
            rat(1, 5),
            rat(1, 2),
            rat(3, 10),
            rat(1, 3),
            rat(1, 6),
        ];
        assert_eq!(lcm_denominators(&b).unwrap(), BigUint::from(420u32));
        assert_eq!(lcm_denominators(&[rat(1, 1)]).unwrap(), BigUint::one());
    }

    #[test]
    fn lcm_rejects_empty_input() {
        assert!(matches!(lcm_denominators(&[]), Err(NumError::Empty(_))));
    }

    #[test]
    fn parse_accepts_both_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("5").unwrap(), rat(5, 1));
        assert_eq!(parse_rational("-2/6").unwrap(), rat(-1, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rationalize_half_is_exact() {
        let x = rational_to_fixed(&rat(1, 2), P);
        let r = rationalize(&x, &BigUint::from(10u32)).unwrap();
        assert_eq!(r, rat(1, 2));
    }

    /// Exhaustive-scan oracle: no rational with denominator <= bound is closer.
    fn assert_best(x: &FixedReal, bound: u64) {
        let r = rationalize(x, &BigUint::from(bound)).unwrap();
        let target = Rational::new(x.mantissa().clone(), BigInt::one() << x.precision());
        let err = (&r - &target).abs();
        for den in 1..=bound {
            // candidate numerators bracketing x*den
            let num0 = (&target * rat(den as i64, 1)).floor();
            for delta in 0..=1 {
                let cand = Rational::new(num0.numer() + BigInt::from(delta), BigInt::from(den));
                let cand_err = (&cand - &target).abs();
                assert!(err <= cand_err, "{cand} beats result {r}");
            }
        }
        assert!(r.denom().magnitude() <= &BigUint::from(bound));
    }

    #[test]
    fn rationalize_sqrt2_over_2_beats_every_candidate() {
        let two = FixedReal::from_integer(2, P);
        let x = &two.sqrt().unwrap() / &two;
        let r = rationalize(&x, &BigUint::from(100u32)).unwrap();
        assert_eq!(r, rat(70, 99));
        assert_best(&x, 100);
    }

    #[test]
    fn rationalize_near_third_recovers_third() {
        // 1/3 is inexact in binary; the closest representable value still
        // rationalizes back to 1/3 once the bound admits it
        let x = rational_to_fixed(&rat(1, 3), P);
        assert_eq!(rationalize(&x, &BigUint::from(3u32)).unwrap(), rat(1, 3));
        assert_eq!(rationalize(&x, &BigUint::from(200u32)).unwrap(), rat(1, 3));
        assert_best(&x, 200);
    }

    #[test]
    fn rationalize_random_values_match_scan_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(7);
        for _ in 0..25 {
            let v: f64 = rng.gen();
            let x = FixedReal::from_ratio(
                &BigInt::from_f64((v * 1e9).floor()).unwrap(),
                &BigInt::from(1_000_000_000u64),
                P,
            )
            .unwrap();
            assert_best(&x, 50);
        }
    }
}
