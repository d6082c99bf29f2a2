//! Exact coefficient fields.
//!
//! Arithmetic goes through a field *context* ([`Field`]) rather than through
//! operator traits on the elements, so that a prime field whose modulus is only
//! known at run time can hand out `zero()` and `one()` like any other field.
//! Two contexts ship with the crate: [`Rationals`] (arbitrary precision) and
//! [`PrimeField`] (canonical residues in `[0, p)`).

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which coefficient field a computation runs over.
///
/// Serialized as `"Q"` or `"Fp:<p>"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Validated prime field spec.
    pub fn prime(p: u64) -> Result<Self> {
        PrimeField::new(p).map(|f| f.spec())
    }

    /// Number of elements, `None` for an infinite field.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(*p),
        }
    }

    /// Run `visitor` with the concrete field context this spec names.
    pub fn visit<V: FieldVisitor>(&self, visitor: V) -> Result<V::Output> {
        match *self {
            FieldSpec::Rationals => Ok(visitor.visit(Rationals)),
            FieldSpec::PrimeField(p) => Ok(visitor.visit(PrimeField::new(p)?)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("Fp:")
            .ok_or_else(|| Error::MalformedFieldSpec(s.to_string()))?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::MalformedFieldSpec(s.to_string()));
        }
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::ModulusTooLarge(digits.to_string()))?;
        FieldSpec::prime(p)
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FieldSpec> for String {
    fn from(spec: FieldSpec) -> String {
        spec.to_string()
    }
}

/// Callback used to monomorphize code over the field named by a [`FieldSpec`].
pub trait FieldVisitor {
    type Output;
    fn visit<F: Field>(self, field: F) -> Self::Output;
}

/// A field context. Elements are plain values; all arithmetic takes `&self`.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn parse(&self, text: &str) -> Result<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    /// Whether rendering should print `a` with a leading minus sign.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The rationals, with elements in lowest terms and positive denominator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

fn parse_bigint(text: &str, whole: &str) -> Result<BigInt> {
    let t = text.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedScalar(whole.to_string()));
    }
    t.parse::<BigInt>()
        .map_err(|_| Error::MalformedScalar(whole.to_string()))
}

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn parse(&self, text: &str) -> Result<BigRational> {
        let mut parts = text.split('/');
        let numer = parse_bigint(parts.next().unwrap_or(""), text)?;
        let denom = match parts.next() {
            Some(d) => parse_bigint(d, text)?,
            None => BigInt::one(),
        };
        if parts.next().is_some() {
            return Err(Error::MalformedScalar(text.to_string()));
        }
        if denom.is_zero() {
            return Err(Error::ZeroDenominator(text.to_string()));
        }
        Ok(BigRational::new(numer, denom))
    }

    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
}

/// GF(p) for a prime `p < 2^63`, residues kept in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::ModulusTooLarge(p.to_string()));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Canonical residue of an arbitrary integer.
    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.p as i128) as u64)
    }

    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    fn parse(&self, text: &str) -> Result<u64> {
        let v = parse_bigint(text, text)?;
        Ok(self.reduce_bigint(&v))
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
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

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> BigRational {
        Rationals.parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(Rationals.render(&q("3/6")), "1/2");
        assert_eq!(Rationals.render(&q("0/5")), "0");
        assert_eq!(q("0/5"), BigRational::zero());
        assert_eq!(*q("0/5").denom(), BigInt::one());
        assert_eq!(Rationals.render(&q("4/-6")), "-2/3");
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.parse("-1").unwrap(), 6);
        assert_eq!(f7.parse("100000000000000000000000").unwrap(), {
            let v: BigInt = "100000000000000000000000".parse().unwrap();
            f7.reduce_bigint(&v)
        });
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Rationals.parse("1/0"), Err(Error::ZeroDenominator(_))));
        for bad in ["", "x", "1.5", "1/2/3", "--1", "1/", "/2"] {
            assert!(
                matches!(Rationals.parse(bad), Err(Error::MalformedScalar(_))),
                "{bad}"
            );
        }
        let f7 = PrimeField::new(7).unwrap();
        assert!(f7.parse("1/2").is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(Rationals.inv(&q("1/2")).unwrap(), q("2"));
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.inv(&3).unwrap(), 5);
        assert_eq!(f7.inv(&0), Err(Error::DivisionByZero));
        assert_eq!(Rationals.inv(&q("0")), Err(Error::DivisionByZero));
    }

    #[test]
    fn spec_roundtrip_and_validation() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!(
            "Fp:101".parse::<FieldSpec>().unwrap(),
            FieldSpec::PrimeField(101)
        );
        assert_eq!(FieldSpec::PrimeField(32003).to_string(), "Fp:32003");
        assert_eq!("Fp:100".parse::<FieldSpec>(), Err(Error::NotPrime(100)));
        assert!(matches!(
            "Fp:99999999999999999999999".parse::<FieldSpec>(),
            Err(Error::ModulusTooLarge(_))
        ));
        assert!(matches!(
            "F101".parse::<FieldSpec>(),
            Err(Error::MalformedFieldSpec(_))
        ));
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(32003));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(is_prime((1 << 61) - 1));
    }

    fn field_axioms<F: Field>(k: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) {
        assert_eq!(k.add(&k.add(a, b), c), k.add(a, &k.add(b, c)));
        assert_eq!(k.mul(&k.mul(a, b), c), k.mul(a, &k.mul(b, c)));
        assert_eq!(k.mul(a, &k.add(b, c)), k.add(&k.mul(a, b), &k.mul(a, c)));
        assert_eq!(k.add(a, b), k.add(b, a));
        assert_eq!(k.sub(&k.add(a, b), b), *a);
        assert!(k.is_zero(&k.add(a, &k.neg(a))));
        if !k.is_zero(a) {
            assert!(k.is_one(&k.mul(a, &k.inv(a).unwrap())));
        }
        assert_eq!(k.parse(&k.render(a)).unwrap(), *a);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn rational_axioms(v in proptest::collection::vec((-1000i64..1000, 1i64..50), 3)) {
            let e: Vec<BigRational> = v
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect();
            field_axioms(&Rationals, &e[0], &e[1], &e[2]);
        }

        #[test]
        fn gf101_axioms(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
            field_axioms(&PrimeField::new(101).unwrap(), &a, &b, &c);
        }

        #[test]
        fn large_prime_axioms(a: u64, b: u64, c: u64) {
            let k = PrimeField::new((1 << 61) - 1).unwrap();
            let p = k.modulus();
            field_axioms(&k, &(a % p), &(b % p), &(c % p));
        }
    }
}
