//! Exact base fields and univariate polynomials in the family parameter `t`.
//!
//! Two kinds of field are supported: the rationals (arbitrary precision) and
//! prime fields `F_p` with `p < 2^31`, so that residue products fit in `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
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
    pub fn prime(p: u64) -> Result<Field> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    /// True when 2 is invertible.
    pub fn has_half(&self) -> bool {
        self.characteristic() != 2
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Modular {
                    value: r.to_u64().expect("residue fits"),
                    modulus: *p,
                }
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::ZeroInput("denominator".into()));
        }
        let d = self.from_i64(den);
        let inv = d
            .inv()
            .ok_or_else(|| Error::ZeroInput(format!("denominator {den} vanishes in {self}")))?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// Parses a scalar literal in this field: `a`, `a/b`, or `r mod p`
    /// (the latter only if `p` matches).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let s = text.trim();
        if let Some((r, p)) = s.split_once("mod") {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::ScalarParse(text.to_string()))?;
            if *self != Field::Prime(p) {
                return Err(Error::FieldMismatch(format!("{text} is not in {self}")));
            }
            let r: BigInt = r
                .trim()
                .parse()
                .map_err(|_| Error::ScalarParse(text.to_string()))?;
            return Ok(self.from_bigint(&r));
        }
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| Error::ScalarParse(text.to_string()))?;
        let den: BigInt = den.parse().map_err(|_| Error::ScalarParse(text.to_string()))?;
        if den.is_zero() {
            return Err(Error::ZeroInput(format!("denominator in {text}")));
        }
        let inv = self
            .from_bigint(&den)
            .inv()
            .ok_or_else(|| Error::ZeroInput(format!("denominator of {text} vanishes in {self}")))?;
        Ok(&self.from_bigint(&num) * &inv)
    }

    /// All elements of a prime field, in residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..*p).map(|v| Scalar::Modular { value: v, modulus: *p }).collect()),
        }
    }

    /// Random element. Over the rationals, an integer in `[-bound, bound]`;
    /// over `F_p`, uniform.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Scalar {
        match self {
            Field::Rationals => self.from_i64(rng.gen_range(-bound..=bound)),
            Field::Prime(p) => Scalar::Modular {
                value: rng.gen_range(0..*p),
                modulus: *p,
            },
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Scalar {
        loop {
            let s = self.random(rng, bound);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn check(&self, s: &Scalar) -> Result<()> {
        if s.field() != *self {
            return Err(Error::FieldMismatch(format!("{s} is not in {self}")));
        }
        Ok(())
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

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    kind: String,
    characteristic: u64,
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let kind = match self {
            Field::Rationals => "rationals",
            Field::Prime(_) => "prime",
        };
        FieldRepr {
            kind: kind.into(),
            characteristic: self.characteristic(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FieldRepr::deserialize(d)?;
        match repr.kind.as_str() {
            "rationals" if repr.characteristic == 0 => Ok(Field::Rationals),
            "prime" => Field::prime(repr.characteristic).map_err(serde::de::Error::custom),
            other => Err(serde::de::Error::custom(format!("unknown field kind {other}"))),
        }
    }
}

/// An element of a [`Field`], always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: mod_pow(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Sign over the rationals (`-1`, `0`, `1`); `None` over `F_p`.
    pub fn sign(&self) -> Option<i32> {
        match self {
            Scalar::Rational(q) => Some(if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }),
            Scalar::Modular { .. } => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular { .. } => None,
        }
    }

    fn same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across fields ({self} vs {other})"
        );
    }
}

/// Square-free part of a positive integer, by trial division.
fn squarefree_part(n: &BigInt) -> BigInt {
    let mut m = n.clone();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut count = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            count += 1;
        }
        if count % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out * m
}

/// Canonical representative of `a` modulo nonzero squares.
///
/// Over `F_p` (p odd) this is `1` or the smallest quadratic non-residue;
/// over `F_2` it is `1`; over the rationals it is the signed square-free
/// integer in the class.
pub fn square_class(a: &Scalar) -> Result<Scalar> {
    if a.is_zero() {
        return Err(Error::ZeroInput("square class of zero".into()));
    }
    match a {
        Scalar::Rational(q) => {
            let n = q.numer() * q.denom();
            let sf = squarefree_part(&n.abs());
            let signed = if n.sign() == Sign::Minus { -sf } else { sf };
            Ok(Field::Rationals.from_bigint(&signed))
        }
        Scalar::Modular { value, modulus } => {
            let p = *modulus;
            if p == 2 || mod_pow(*value, (p - 1) / 2, p) == 1 {
                return Ok(Field::Prime(p).one());
            }
            let nonres = (2..p)
                .find(|&c| mod_pow(c, (p - 1) / 2, p) == p - 1)
                .expect("odd prime has a non-residue");
            Ok(Field::Prime(p).from_i64(nonres as i64))
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Self-describing parse: `r mod p` is a prime-field element, anything
    /// else is rational.
    fn from_str(s: &str) -> Result<Scalar> {
        if let Some((_, p)) = s.split_once("mod") {
            let p: u64 = p.trim().parse().map_err(|_| Error::ScalarParse(s.to_string()))?;
            return Field::prime(p)?.parse_scalar(s);
        }
        Field::Rationals.parse_scalar(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: a * b % modulus,
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
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t { (&self).$m(rhs) }
        }
    )*};
}

forward_owned!(Scalar, Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// A univariate polynomial in `t`, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl TPoly {
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> Result<TPoly> {
        for c in &coeffs {
            field.check(c)?;
        }
        Ok(TPoly { field, coeffs }.normalized())
    }

    fn normalized(mut self) -> TPoly {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero(field: Field) -> TPoly {
        TPoly { field, coeffs: vec![] }
    }

    pub fn one(field: Field) -> TPoly {
        TPoly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> TPoly {
        TPoly {
            field: c.field(),
            coeffs: vec![c],
        }
        .normalized()
    }

    /// `c · t^k`.
    pub fn monomial(c: Scalar, k: usize) -> TPoly {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        TPoly { field, coeffs }.normalized()
    }

    /// The parameter `t` itself.
    pub fn t(field: Field) -> TPoly {
        TPoly::monomial(field.one(), 1)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The constant value if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.coeffs.len() {
            0 => Some(self.field.zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn scale(&self, c: &Scalar) -> TPoly {
        TPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
        .normalized()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> TPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TPoly {
            field: self.field,
            coeffs,
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, c: &Scalar) -> Result<Scalar> {
        self.field.check(c)?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, a| &(&acc * c) + a))
    }
}

/// Evaluates `f` at `c`; fails if `c` lies in another field.
pub fn tpoly_eval(f: &TPoly, c: &Scalar) -> Result<Scalar> {
    f.eval(c)
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "t")?,
                1 => write!(f, "({c})*t")?,
                _ if c.is_one() => write!(f, "t^{k}")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for TPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TPoly {
    /// Reads a coefficient array. An empty array is the zero polynomial over
    /// the rationals; use [`TPoly::new`] when the field must be explicit.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coeffs = Vec::<Scalar>::deserialize(d)?;
        let field = coeffs.first().map(Scalar::field).unwrap_or(Field::Rationals);
        TPoly::new(field, coeffs).map_err(serde::de::Error::custom)
    }
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        assert_eq!(self.field, rhs.field, "polynomial arithmetic across fields");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        TPoly {
            field: self.field,
            coeffs,
        }
        .normalized()
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        self + &(-rhs)
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        assert_eq!(self.field, rhs.field, "polynomial arithmetic across fields");
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        TPoly {
            field: self.field,
            coeffs,
        }
        .normalized()
    }
}

forward_owned!(TPoly, Add add, Sub sub, Mul mul);

impl Neg for TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        -&self
    }
}

/// Arithmetic shared by scalars and `t`-polynomials, so structure-constant
/// tables can be handled generically over both.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_in(field: Field) -> Self;
    fn one_in(field: Field) -> Self;
    fn lift(s: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// The value as a scalar when it is constant.
    fn as_scalar(&self) -> Option<Scalar>;
}

impl Coefficient for Scalar {
    fn zero_in(field: Field) -> Self {
        field.zero()
    }
    fn one_in(field: Field) -> Self {
        field.one()
    }
    fn lift(s: &Scalar) -> Self {
        s.clone()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn as_scalar(&self) -> Option<Scalar> {
        Some(self.clone())
    }
}

impl Coefficient for TPoly {
    fn zero_in(field: Field) -> Self {
        TPoly::zero(field)
    }
    fn one_in(field: Field) -> Self {
        TPoly::one(field)
    }
    fn lift(s: &Scalar) -> Self {
        TPoly::constant(s.clone())
    }
    fn is_zero(&self) -> bool {
        TPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn as_scalar(&self) -> Option<Scalar> {
        self.as_constant()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Scalar {
        Field::Rationals.from_i64(n)
    }

    /// Square-free part by brute force over candidate square divisors.
    fn squarefree_oracle(n: i64) -> i64 {
        let sign = n.signum();
        let mut m = n.abs();
        let mut k = 2;
        while k * k <= m {
            while m % (k * k) == 0 {
                m /= k * k;
            }
            k += 1;
        }
        sign * m
    }

    #[test]
    fn square_classes() {
        assert_eq!(square_class(&q(4)).unwrap(), q(1));
        assert_eq!(squarefree_oracle(-8), -2);
        assert_eq!(square_class(&q(-8)).unwrap(), q(-2));
        let f7 = Field::prime(7).unwrap();
        // squares mod 7 are {1, 2, 4}; 3 is the smallest non-square
        let squares: Vec<u64> = (1..7u64).map(|a| a * a % 7).collect();
        assert!(!squares.contains(&3));
        assert_eq!(square_class(&f7.from_i64(3)).unwrap(), f7.from_i64(3));
        assert_eq!(square_class(&f7.from_i64(5)).unwrap(), f7.from_i64(3));
        assert_eq!(square_class(&f7.from_i64(2)).unwrap(), f7.one());
        let f2 = Field::prime(2).unwrap();
        assert_eq!(square_class(&f2.one()).unwrap(), f2.one());
        assert!(matches!(square_class(&q(0)), Err(Error::ZeroInput(_))));
        let r = Field::Rationals.from_ratio(18, 5).unwrap();
        assert_eq!(square_class(&r).unwrap(), q(10));
    }

    #[test]
    fn tpoly_basics() {
        let f = Field::Rationals;
        let p = TPoly::new(f, vec![q(1), q(0), q(1)]).unwrap();
        assert_eq!(tpoly_eval(&p, &q(0)).unwrap(), q(1));
        assert_eq!(tpoly_eval(&p, &q(1)).unwrap(), q(2));
        let f5 = Field::prime(5).unwrap();
        let m = TPoly::monomial(f5.from_i64(-2), 1);
        assert_eq!(tpoly_eval(&m, &f5.from_i64(3)).unwrap(), f5.from_i64(4));
        assert!(matches!(tpoly_eval(&m, &q(3)), Err(Error::FieldMismatch(_))));
        assert_eq!(TPoly::new(f, vec![q(0), q(0)]).unwrap(), TPoly::zero(f));
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn scalar_strings() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.from_i64(-1).to_string(), "6 mod 7");
        assert_eq!("6 mod 7".parse::<Scalar>().unwrap(), f7.from_i64(6));
        assert_eq!("-3/6".parse::<Scalar>().unwrap(), Field::Rationals.from_ratio(-1, 2).unwrap());
        assert_eq!(Field::Rationals.from_ratio(-1, 2).unwrap().to_string(), "-1/2");
        assert_eq!(f7.parse_scalar("3/4").unwrap(), &f7.from_i64(3) * &f7.from_i64(2));
        assert!(f7.parse_scalar("1/7").is_err());
        assert!(Field::prime(9).is_err());
        let json = serde_json::to_string(&TPoly::t(f7)).unwrap();
        assert_eq!(json, r#"["0 mod 7","1 mod 7"]"#);
        let back: TPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, TPoly::t(f7));
    }

    fn arb_field() -> impl Strategy<Value = Field> {
        prop_oneof![Just(Field::Rationals), Just(Field::Prime(7)), Just(Field::Prime(2)), Just(Field::Prime(101))]
    }

    fn arb_scalar(field: Field) -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(move |(n, d)| match field {
            Field::Rationals => field.from_ratio(n, d).unwrap(),
            Field::Prime(_) => field.from_i64(n * d),
        })
    }

    fn arb_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        arb_field().prop_flat_map(|f| (arb_scalar(f), arb_scalar(f), arb_scalar(f)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, a.field().zero());
            if let Some(inv) = a.inv() {
                prop_assert!((&a * &inv).is_one());
            }
        }

        #[test]
        fn square_class_ignores_squares((a, b, _) in arb_triple()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let ab2 = &a * &(&b * &b);
            prop_assert_eq!(square_class(&ab2).unwrap(), square_class(&a).unwrap());
        }

        #[test]
        fn eval_is_ring_hom(
            fc in proptest::collection::vec(-9i64..9, 0..5),
            gc in proptest::collection::vec(-9i64..9, 0..5),
            c in -9i64..9,
        ) {
            let field = Field::Rationals;
            let f = TPoly::new(field, fc.iter().map(|&n| field.from_i64(n)).collect()).unwrap();
            let g = TPoly::new(field, gc.iter().map(|&n| field.from_i64(n)).collect()).unwrap();
            let c = field.from_i64(c);
            let fe = f.eval(&c).unwrap();
            let ge = g.eval(&c).unwrap();
            prop_assert_eq!((&f * &g).eval(&c).unwrap(), &fe * &ge);
            prop_assert_eq!((&f + &g).eval(&c).unwrap(), &fe + &ge);
        }
    }
}
