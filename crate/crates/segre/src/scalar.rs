//! Exact scalars: arbitrary-precision rationals and prime-field residues.
//!
//! Every computation in this crate is exact. A [`Scalar`] is either a
//! `BigRational` or a residue modulo a prime `p`; the two domains never mix
//! silently. Prime moduli are kept below 2^30 so that a product of two
//! residues fits comfortably in 64-bit intermediate arithmetic (and a sum of
//! many products in 128-bit).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default field prime: the largest prime below 2^30.
pub const DEFAULT_PRIME: u64 = 1_073_741_789;

/// Second field prime used for cross-checks: the second-largest prime below 2^30.
pub const SECOND_PRIME: u64 = 1_073_741_783;

/// Environment variable that overrides the default prime for the CLI.
pub const PRIME_ENV_VAR: &str = "SEGRE_DEFAULT_PRIME";

/// The coefficient domain a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarDomain {
    #[serde(rename = "rational")]
    Rational,
    #[serde(rename = "prime")]
    Prime(u64),
}

impl std::fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarDomain::Rational => write!(f, "rational"),
            ScalarDomain::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact scalar in one of the two supported domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Fp { value: u64, prime: u64 },
}

impl Scalar {
    pub fn domain(&self) -> ScalarDomain {
        match self {
            Scalar::Rat(_) => ScalarDomain::Rational,
            Scalar::Fp { prime, .. } => ScalarDomain::Prime(*prime),
        }
    }

    pub fn zero(domain: ScalarDomain) -> Self {
        match domain {
            ScalarDomain::Rational => Scalar::Rat(BigRational::zero()),
            ScalarDomain::Prime(p) => Scalar::Fp { value: 0, prime: p },
        }
    }

    pub fn one(domain: ScalarDomain) -> Self {
        match domain {
            ScalarDomain::Rational => Scalar::Rat(BigRational::one()),
            ScalarDomain::Prime(p) => Scalar::Fp { value: 1, prime: p },
        }
    }

    pub fn from_int(v: i64, domain: ScalarDomain) -> Self {
        match domain {
            ScalarDomain::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            ScalarDomain::Prime(p) => Scalar::Fp {
                value: int_mod(v, p),
                prime: p,
            },
        }
    }

    pub fn from_bigint(v: &BigInt, domain: ScalarDomain) -> Self {
        match domain {
            ScalarDomain::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
            ScalarDomain::Prime(p) => Scalar::Fp {
                value: bigint_mod(v, p),
                prime: p,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    fn same_domain(&self, other: &Scalar) -> Result<()> {
        if self.domain() == other.domain() {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!(
                "{} vs {}",
                self.domain(),
                other.domain()
            )))
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_domain(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { value: a, prime: p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: fp_add(*a, *b, *p),
                prime: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_domain(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Fp { value: a, prime: p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: fp_sub(*a, *b, *p),
                prime: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_domain(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { value: a, prime: p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: fp_mul(*a, *b, *p),
                prime: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { value, prime } => Scalar::Fp {
                value: fp_sub(0, *value, *prime),
                prime: *prime,
            },
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(a) => {
                if a.is_zero() {
                    Err(Error::invalid("inverse of zero"))
                } else {
                    Ok(Scalar::Rat(a.recip()))
                }
            }
            Scalar::Fp { value, prime } => {
                if *value == 0 {
                    Err(Error::invalid("inverse of zero"))
                } else {
                    Ok(Scalar::Fp {
                        value: fp_inv(*value, *prime),
                        prime: *prime,
                    })
                }
            }
        }
    }

    /// Serialized form: `"num/den"` strings for rationals (reduced, `den > 0`,
    /// `"n"` when the denominator is 1), bare integers for prime fields.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    serde_json::Value::String(r.numer().to_string())
                } else {
                    serde_json::Value::String(format!("{}/{}", r.numer(), r.denom()))
                }
            }
            Scalar::Fp { value, .. } => serde_json::Value::Number((*value).into()),
        }
    }

    /// Parse the serialized form produced by [`Scalar::to_json`].
    pub fn from_json(v: &serde_json::Value, domain: ScalarDomain) -> Result<Scalar> {
        match (v, domain) {
            (serde_json::Value::String(s), ScalarDomain::Rational) => {
                let rat = parse_rational(s)?;
                Ok(Scalar::Rat(rat))
            }
            (serde_json::Value::Number(n), ScalarDomain::Rational) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| Error::invalid(format!("non-integer entry {n}")))?;
                Ok(Scalar::from_int(i, domain))
            }
            (serde_json::Value::Number(n), ScalarDomain::Prime(p)) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| Error::invalid(format!("non-integer entry {n}")))?;
                Ok(Scalar::Fp {
                    value: int_mod(i, p),
                    prime: p,
                })
            }
            (serde_json::Value::String(s), ScalarDomain::Prime(p)) => {
                let rat = parse_rational(s)?;
                let num = bigint_mod(rat.numer(), p);
                let den = bigint_mod(rat.denom(), p);
                if den == 0 {
                    return Err(Error::invalid(format!(
                        "denominator of {s} is divisible by {p}"
                    )));
                }
                Ok(Scalar::Fp {
                    value: fp_mul(num, fp_inv(den, p), p),
                    prime: p,
                })
            }
            _ => Err(Error::invalid(format!("cannot parse scalar from {v}"))),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let mk = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| Error::invalid(format!("bad integer literal {t:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = mk(d)?;
            if den.is_zero() {
                return Err(Error::invalid("zero denominator"));
            }
            Ok(BigRational::new(mk(n)?, den))
        }
        None => Ok(BigRational::from_integer(mk(s)?)),
    }
}

// ---- prime-field primitives (p < 2^31, residues in [0, p)) ----

#[inline]
pub fn fp_add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn fp_sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn fp_mul(a: u64, b: u64, p: u64) -> u64 {
    // a, b < p < 2^31 so the product fits in u64 without overflow
    (a * b) % p
}

/// Inverse by Fermat: a^(p-2) mod p.
pub fn fp_inv(a: u64, p: u64) -> u64 {
    debug_assert!(a != 0);
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_mul(acc, base, p);
        }
        base = fp_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Reduce a signed integer into [0, p).
#[inline]
pub fn int_mod(v: i64, p: u64) -> u64 {
    let m = v.rem_euclid(p as i64);
    m as u64
}

/// Reduce a BigInt into [0, p).
pub fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let m = v % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    let (_, digits) = m.to_u64_digits();
    match digits.as_slice() {
        [] => 0,
        [d] => *d,
        _ => unreachable!("residue must fit in one limb"),
    }
}

/// Deterministic compile-time-checkable primality for the fixed moduli.
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_primes_are_prime_and_below_2_30() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(is_prime(SECOND_PRIME));
        assert!(DEFAULT_PRIME < (1 << 30));
        assert!(SECOND_PRIME < DEFAULT_PRIME);
        // nothing prime in between or above up to 2^30
        for n in (SECOND_PRIME + 1)..DEFAULT_PRIME {
            assert!(!is_prime(n));
        }
        for n in (DEFAULT_PRIME + 1)..(1 << 30) {
            assert!(!is_prime(n));
        }
    }

    #[test]
    fn field_axioms_spot_checks() {
        let p = DEFAULT_PRIME;
        let a = 123_456_789u64;
        let b = 987_654_321u64;
        let c = 555_555_555u64;
        assert_eq!(fp_add(a, b, p), fp_add(b, a, p));
        assert_eq!(fp_mul(a, b, p), fp_mul(b, a, p));
        assert_eq!(
            fp_mul(a, fp_add(b, c, p), p),
            fp_add(fp_mul(a, b, p), fp_mul(a, c, p), p)
        );
        assert_eq!(fp_mul(a, fp_inv(a, p), p), 1);
        assert_eq!(fp_sub(a, a, p), 0);
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let a = Scalar::from_int(1, ScalarDomain::Rational);
        let b = Scalar::from_int(1, ScalarDomain::Prime(DEFAULT_PRIME));
        assert!(a.add(&b).is_err());
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn rational_roundtrip() {
        let s = Scalar::Rat(BigRational::new(BigInt::from(-3), BigInt::from(4)));
        let j = s.to_json();
        assert_eq!(j, serde_json::json!("-3/4"));
        let back = Scalar::from_json(&j, ScalarDomain::Rational).unwrap();
        assert_eq!(s, back);
        let i = Scalar::from_int(7, ScalarDomain::Rational);
        assert_eq!(i.to_json(), serde_json::json!("7"));
    }

    #[test]
    fn negative_int_reduction() {
        assert_eq!(int_mod(-1, 7), 6);
        assert_eq!(int_mod(-14, 7), 0);
        assert_eq!(bigint_mod(&BigInt::from(-1), 7), 6);
    }
}
