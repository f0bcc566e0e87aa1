//! Base rings and their scalars.
//!
//! Four kinds of commutative base ring are supported: the integers, the
//! rationals, prime fields and residue rings `Z/N`. Scalars are stored in
//! canonical form: residues are reduced into `[0, N)` and rationals are kept
//! in lowest terms with a positive denominator.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The kind of a base ring, together with its defining parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Rationals,
    PrimeField { p: BigInt },
    IntegersMod { modulus: BigInt },
}

/// A validated base ring.
///
/// `PrimeField` always carries a verified prime and `IntegersMod` a modulus of
/// at least two; the only way to build one is through the checked
/// constructors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    kind: RingKind,
}

/// An element of some [`Ring`]. Integral rings use `Int`, the rationals use
/// `Rat`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
}

impl Scalar {
    pub fn as_int(&self) -> &BigInt {
        match self {
            Scalar::Int(v) => v,
            Scalar::Rat(_) => panic!("rational scalar used in an integral ring"),
        }
    }

    pub fn as_rat(&self) -> BigRational {
        match self {
            Scalar::Int(v) => BigRational::from_integer(v.clone()),
            Scalar::Rat(q) => q.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl Ring {
    pub fn integers() -> Self {
        Ring { kind: RingKind::Integers }
    }

    pub fn rationals() -> Self {
        Ring { kind: RingKind::Rationals }
    }

    pub fn prime_field(p: impl Into<BigInt>) -> Result<Self> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Ring { kind: RingKind::PrimeField { p } })
    }

    pub fn integers_mod(n: impl Into<BigInt>) -> Result<Self> {
        let n = n.into();
        if n < BigInt::from(2) {
            return Err(Error::InvalidModulus(n.to_string()));
        }
        Ok(Ring { kind: RingKind::IntegersMod { modulus: n } })
    }

    pub fn from_kind(kind: RingKind) -> Result<Self> {
        match kind {
            RingKind::Integers => Ok(Ring::integers()),
            RingKind::Rationals => Ok(Ring::rationals()),
            RingKind::PrimeField { p } => Ring::prime_field(p),
            RingKind::IntegersMod { modulus } => Ring::integers_mod(modulus),
        }
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    /// The modulus `N` for residue rings and prime fields, `None` otherwise.
    pub fn modulus(&self) -> Option<&BigInt> {
        match &self.kind {
            RingKind::PrimeField { p } => Some(p),
            RingKind::IntegersMod { modulus } => Some(modulus),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        match &self.kind {
            RingKind::Rationals | RingKind::PrimeField { .. } => true,
            RingKind::IntegersMod { modulus } => is_prime(modulus),
            RingKind::Integers => false,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.modulus().is_some()
    }

    pub fn is_integral(&self) -> bool {
        !matches!(self.kind, RingKind::Rationals)
    }

    /// Number of elements, for finite rings.
    pub fn cardinality(&self) -> Option<BigInt> {
        self.modulus().cloned()
    }

    /// If the ring is `Z/p^k` (including prime fields), returns `(p, k)`.
    pub fn prime_power(&self) -> Option<(BigInt, u32)> {
        let n = self.modulus()?;
        prime_power_decomposition(n)
    }

    pub fn zero(&self) -> Scalar {
        match self.kind {
            RingKind::Rationals => Scalar::Rat(BigRational::zero()),
            _ => Scalar::Int(BigInt::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_bigint(BigInt::one())
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(&self, v: BigInt) -> Scalar {
        match &self.kind {
            RingKind::Rationals => Scalar::Rat(BigRational::from_integer(v)),
            RingKind::Integers => Scalar::Int(v),
            RingKind::PrimeField { p } => Scalar::Int(v.mod_floor(p)),
            RingKind::IntegersMod { modulus } => Scalar::Int(v.mod_floor(modulus)),
        }
    }

    /// Brings an arbitrary scalar into this ring's canonical form, failing if
    /// a non-integral rational is offered to an integral ring.
    pub fn normalize(&self, s: Scalar) -> Result<Scalar> {
        match (&self.kind, s) {
            (RingKind::Rationals, Scalar::Int(v)) => Ok(Scalar::Rat(BigRational::from_integer(v))),
            (RingKind::Rationals, r @ Scalar::Rat(_)) => Ok(r),
            (_, Scalar::Int(v)) => Ok(self.from_bigint(v)),
            (_, Scalar::Rat(q)) => {
                if q.is_integer() {
                    Ok(self.from_bigint(q.to_integer()))
                } else {
                    // a/b makes sense in Z/N when b is a unit
                    match self.modulus() {
                        Some(n) => {
                            let inv = mod_inverse(&q.denom().mod_floor(n), n).ok_or_else(|| {
                                Error::InvalidInput(format!("{}/{} has no image in {}", q.numer(), q.denom(), self))
                            })?;
                            Ok(self.from_bigint(q.numer() * inv))
                        }
                        None => Err(Error::InvalidInput(format!(
                            "non-integral value {}/{} over the integers",
                            q.numer(),
                            q.denom()
                        ))),
                    }
                }
            }
        }
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let value = if let Some((a, b)) = text.split_once('/') {
            let a: BigInt = a.trim().parse().map_err(|_| Error::InvalidInput(format!("bad scalar {text:?}")))?;
            let b: BigInt = b.trim().parse().map_err(|_| Error::InvalidInput(format!("bad scalar {text:?}")))?;
            if b.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {text:?}")));
            }
            Scalar::Rat(BigRational::new(a, b))
        } else {
            let a: BigInt = text.parse().map_err(|_| Error::InvalidInput(format!("bad scalar {text:?}")))?;
            Scalar::Int(a)
        };
        self.normalize(value)
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Int(x), Scalar::Int(y)) => self.reduce_int(x + y),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Int(x), Scalar::Int(y)) => self.reduce_int(x - y),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Int(x), Scalar::Int(y)) => self.reduce_int(x * y),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Int(x) => self.reduce_int(-x),
            Scalar::Rat(x) => Scalar::Rat(-x),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.is_zero(),
            Scalar::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.is_one(),
            Scalar::Rat(x) => x.is_one(),
        }
    }

    /// Multiplicative inverse, if `a` is a unit.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (&self.kind, a) {
            (RingKind::Rationals, Scalar::Rat(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(x.recip()))
                }
            }
            (RingKind::Integers, Scalar::Int(x)) => {
                if x.abs().is_one() {
                    Some(Scalar::Int(x.clone()))
                } else {
                    None
                }
            }
            (_, Scalar::Int(x)) => {
                let n = self.modulus().expect("finite ring");
                mod_inverse(x, n).map(Scalar::Int)
            }
            _ => None,
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        self.inv(a).is_some()
    }

    fn reduce_int(&self, v: BigInt) -> Scalar {
        match self.modulus() {
            Some(n) => Scalar::Int(v.mod_floor(n)),
            None => Scalar::Int(v),
        }
    }

    /// Every element of a finite ring, in increasing residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        let n = self.modulus()?.to_u64()?;
        Some((0..n).map(|v| Scalar::Int(BigInt::from(v))).collect())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::PrimeField { p } => write!(f, "F_{p}"),
            RingKind::IntegersMod { modulus } => write!(f, "Z/{modulus}"),
        }
    }
}

pub(crate) fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(n).extended_gcd(n);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(n))
    } else {
        None
    }
}

fn prime_power_decomposition(n: &BigInt) -> Option<(BigInt, u32)> {
    let two = BigInt::from(2);
    if n < &two {
        return None;
    }
    let mut p = two.clone();
    let mut m = n.clone();
    // smallest prime factor by trial division; moduli here are small
    while &p * &p <= m {
        if (&m % &p).is_zero() {
            break;
        }
        p += 1;
    }
    if &p * &p > m {
        p = m.clone();
    }
    let mut k = 0;
    while (&m % &p).is_zero() {
        m /= &p;
        k += 1;
    }
    if m.is_one() {
        Some((p, k))
    } else {
        None
    }
}

/// Primality test: deterministic Miller-Rabin for 64-bit inputs, and the same
/// test with the first twenty prime bases beyond that.
pub fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    const BASES: [u32; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];
    for b in BASES {
        let b = BigInt::from(b);
        if n == &b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let bases: &[u32] = if n.bits() <= 64 { &BASES[..12] } else { &BASES };
    'witness: for &a in bases {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<i64> = (2..200).filter(|&n| is_prime(&BigInt::from(n))).collect();
        let brute: Vec<i64> = (2..200).filter(|&n| (2..n).all(|d| n % d != 0)).collect();
        assert_eq!(primes, brute);
        assert!(is_prime(&BigInt::from(1_000_000_007u64)));
        assert!(!is_prime(&BigInt::from(1_000_000_007u64 * 3)));
    }

    #[test]
    fn constructors_validate() {
        assert!(Ring::prime_field(4).is_err());
        assert!(Ring::prime_field(5).is_ok());
        assert!(Ring::integers_mod(1).is_err());
        assert!(Ring::integers_mod(2).is_ok());
    }

    #[test]
    fn residues_are_reduced() {
        let r = Ring::integers_mod(4).unwrap();
        assert_eq!(r.from_i64(-1), Scalar::Int(BigInt::from(3)));
        assert_eq!(r.mul(&r.from_i64(2), &r.from_i64(2)), r.zero());
        assert!(r.inv(&r.from_i64(2)).is_none());
        assert_eq!(r.inv(&r.from_i64(3)), Some(r.from_i64(3)));
    }

    #[test]
    fn rationals_parse_canonically() {
        let q = Ring::rationals();
        let a = q.parse_scalar("4/-6").unwrap();
        assert_eq!(a.to_string(), "-2/3");
        assert!(Ring::integers().parse_scalar("1/2").is_err());
        let f5 = Ring::prime_field(5).unwrap();
        assert_eq!(f5.parse_scalar("1/2").unwrap(), f5.from_i64(3));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(Ring::integers_mod(8).unwrap().prime_power(), Some((BigInt::from(2), 3)));
        assert_eq!(Ring::integers_mod(12).unwrap().prime_power(), None);
        assert_eq!(Ring::prime_field(7).unwrap().prime_power(), Some((BigInt::from(7), 1)));
    }
}
