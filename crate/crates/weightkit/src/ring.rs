//! The supported coefficient rings and their exact element arithmetic.
//!
//! Every ring here is a Euclidean domain, which is what makes Smith normal
//! form (and everything built on it) fully algorithmic: the integers, the
//! rationals, prime fields, and univariate polynomials over a prime field or
//! over the rationals. Elements are kept in a canonical form so that equality
//! is plain representation equality.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Identifies the active coefficient ring.
///
/// Construction validates the invariants (primality of `p`), so a value of
/// this type always names a genuine Euclidean domain.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RingSpec {
    kind: RingKind,
}

/// The ring families the engine computes over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RingKind {
    Integers,
    Rationals,
    PrimeField(u64),
    PolyOverPrimeField(u64),
    PolyOverRationals,
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl RingSpec {
    pub fn integers() -> Self {
        RingSpec { kind: RingKind::Integers }
    }

    pub fn rationals() -> Self {
        RingSpec { kind: RingKind::Rationals }
    }

    /// A prime field `F_p`; rejects composite `p` by trial division.
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(RingSpec { kind: RingKind::PrimeField(p) })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// The polynomial ring `F_p[x]`; rejects composite `p`.
    pub fn poly_over_prime_field(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(RingSpec { kind: RingKind::PolyOverPrimeField(p) })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn poly_over_rationals() -> Self {
        RingSpec { kind: RingKind::PolyOverRationals }
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    /// Fields are the degenerate Euclidean case: every nonzero element is a unit.
    pub fn is_field(&self) -> bool {
        matches!(self.kind, RingKind::Rationals | RingKind::PrimeField(_))
    }

    pub fn zero(&self) -> RingElement {
        RingElement { spec: *self, value: self.value_zero() }
    }

    pub fn one(&self) -> RingElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> RingElement {
        let value = match self.kind {
            RingKind::Integers => Value::Int(BigInt::from(n)),
            RingKind::Rationals => Value::Rat(BigRational::from_integer(BigInt::from(n))),
            RingKind::PrimeField(p) => Value::Res(reduce_mod(n, p)),
            RingKind::PolyOverPrimeField(p) => {
                Value::PolyP(trim_p(vec![reduce_mod(n, p)]))
            }
            RingKind::PolyOverRationals => Value::PolyQ(trim_q(vec![BigRational::from_integer(
                BigInt::from(n),
            )])),
        };
        RingElement { spec: *self, value }
    }

    /// The monomial `c * x^deg` in a polynomial ring.
    pub fn monomial(&self, c: i64, deg: usize) -> RingElement {
        match self.kind {
            RingKind::PolyOverPrimeField(p) => {
                let mut coeffs = vec![0u64; deg + 1];
                coeffs[deg] = reduce_mod(c, p);
                RingElement { spec: *self, value: Value::PolyP(trim_p(coeffs)) }
            }
            RingKind::PolyOverRationals => {
                let mut coeffs = vec![BigRational::zero(); deg + 1];
                coeffs[deg] = BigRational::from_integer(BigInt::from(c));
                RingElement { spec: *self, value: Value::PolyQ(trim_q(coeffs)) }
            }
            _ => panic!("monomial only makes sense in a polynomial ring"),
        }
    }

    fn value_zero(&self) -> Value {
        match self.kind {
            RingKind::Integers => Value::Int(BigInt::zero()),
            RingKind::Rationals => Value::Rat(BigRational::zero()),
            RingKind::PrimeField(_) => Value::Res(0),
            RingKind::PolyOverPrimeField(_) => Value::PolyP(vec![]),
            RingKind::PolyOverRationals => Value::PolyQ(vec![]),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::PrimeField(p) => write!(f, "F_{p}"),
            RingKind::PolyOverPrimeField(p) => write!(f, "F_{p}[x]"),
            RingKind::PolyOverRationals => write!(f, "Q[x]"),
        }
    }
}

fn reduce_mod(n: i64, p: u64) -> u64 {
    
    (n % p as i64 + p as i64) as u64 % p
}

fn trim_p(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn trim_q(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Value {
    Int(BigInt),
    Rat(BigRational),
    Res(u64),
    PolyP(Vec<u64>),
    PolyQ(Vec<BigRational>),
}

/// An element of the active ring, kept in canonical form:
/// reduced fractions with positive denominator, residues in `[0, p)`,
/// coefficient lists with zero leading coefficients stripped.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingElement {
    spec: RingSpec,
    value: Value,
}

impl RingElement {
    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(a) => a.is_zero(),
            Value::Rat(a) => a.is_zero(),
            Value::Res(a) => *a == 0,
            Value::PolyP(c) => c.is_empty(),
            Value::PolyQ(c) => c.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.spec.one()
    }

    pub fn is_unit(&self) -> bool {
        match &self.value {
            Value::Int(a) => a.abs().is_one(),
            Value::Rat(a) => !a.is_zero(),
            Value::Res(a) => *a != 0,
            Value::PolyP(c) => c.len() == 1,
            Value::PolyQ(c) => c.len() == 1,
        }
    }

    /// The Euclidean size function: `|a|` over the integers, `deg + 1` for
    /// polynomials, `1` for nonzero field elements. `None` for zero.
    pub fn euclid_norm(&self) -> Option<BigUint> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.value {
            Value::Int(a) => a.abs().to_biguint().unwrap(),
            Value::Rat(_) | Value::Res(_) => BigUint::one(),
            Value::PolyP(c) => BigUint::from(c.len()),
            Value::PolyQ(c) => BigUint::from(c.len()),
        })
    }

    fn check_spec(&self, other: &Self) {
        assert_eq!(
            self.spec, other.spec,
            "ring elements from different rings: {} vs {}",
            self.spec, other.spec
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_spec(other);
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Res(a), Value::Res(b)) => {
                let p = self.modulus();
                Value::Res(addmod(*a, *b, p))
            }
            (Value::PolyP(a), Value::PolyP(b)) => {
                let p = self.modulus();
                let n = a.len().max(b.len());
                let mut c = vec![0u64; n];
                for (i, slot) in c.iter_mut().enumerate() {
                    let x = a.get(i).copied().unwrap_or(0);
                    let y = b.get(i).copied().unwrap_or(0);
                    *slot = addmod(x, y, p);
                }
                Value::PolyP(trim_p(c))
            }
            (Value::PolyQ(a), Value::PolyQ(b)) => {
                let n = a.len().max(b.len());
                let mut c = vec![BigRational::zero(); n];
                for (i, slot) in c.iter_mut().enumerate() {
                    let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                    let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
                    *slot = x + y;
                }
                Value::PolyQ(trim_q(c))
            }
            _ => unreachable!("spec equality guarantees matching payloads"),
        };
        RingElement { spec: self.spec, value }
    }

    pub fn neg(&self) -> Self {
        let value = match &self.value {
            Value::Int(a) => Value::Int(-a),
            Value::Rat(a) => Value::Rat(-a),
            Value::Res(a) => {
                let p = self.modulus();
                Value::Res(if *a == 0 { 0 } else { p - a })
            }
            Value::PolyP(c) => {
                let p = self.modulus();
                Value::PolyP(c.iter().map(|a| if *a == 0 { 0 } else { p - a }).collect())
            }
            Value::PolyQ(c) => Value::PolyQ(c.iter().map(|a| -a.clone()).collect()),
        };
        RingElement { spec: self.spec, value }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_spec(other);
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Res(a), Value::Res(b)) => Value::Res(mulmod(*a, *b, self.modulus())),
            (Value::PolyP(a), Value::PolyP(b)) => {
                if a.is_empty() || b.is_empty() {
                    Value::PolyP(vec![])
                } else {
                    let p = self.modulus();
                    let mut c = vec![0u64; a.len() + b.len() - 1];
                    for (i, x) in a.iter().enumerate() {
                        for (j, y) in b.iter().enumerate() {
                            c[i + j] = addmod(c[i + j], mulmod(*x, *y, p), p);
                        }
                    }
                    Value::PolyP(trim_p(c))
                }
            }
            (Value::PolyQ(a), Value::PolyQ(b)) => {
                if a.is_empty() || b.is_empty() {
                    Value::PolyQ(vec![])
                } else {
                    let mut c = vec![BigRational::zero(); a.len() + b.len() - 1];
                    for (i, x) in a.iter().enumerate() {
                        for (j, y) in b.iter().enumerate() {
                            c[i + j] += x * y;
                        }
                    }
                    Value::PolyQ(trim_q(c))
                }
            }
            _ => unreachable!("spec equality guarantees matching payloads"),
        };
        RingElement { spec: self.spec, value }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.spec.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Euclidean division: `self = q * d + r` with `r = 0` or
    /// `norm(r) < norm(d)`. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        self.check_spec(d);
        assert!(!d.is_zero(), "division by zero in {}", self.spec);
        match (&self.value, &d.value) {
            (Value::Int(a), Value::Int(b)) => {
                // rounded division keeps remainders small, which speeds up gcd chains
                let (mut q, mut r) = a.div_rem(b);
                if r.abs() * 2 > b.abs() {
                    if r.sign() == b.sign() {
                        q += 1;
                        r -= b;
                    } else {
                        q -= 1;
                        r += b;
                    }
                }
                (
                    RingElement { spec: self.spec, value: Value::Int(q) },
                    RingElement { spec: self.spec, value: Value::Int(r) },
                )
            }
            (Value::Rat(_), _) | (Value::Res(_), _) => {
                // fields: exact division, zero remainder
                let q = self.mul(&d.inv().expect("nonzero field element"));
                (q, self.spec.zero())
            }
            (Value::PolyP(_), Value::PolyP(_)) | (Value::PolyQ(_), Value::PolyQ(_)) => {
                self.poly_div_rem(d)
            }
            _ => unreachable!("spec equality guarantees matching payloads"),
        }
    }

    fn poly_div_rem(&self, d: &Self) -> (Self, Self) {
        let mut rem = self.clone();
        let mut quot = self.spec.zero();
        let dd = d.poly_degree().expect("nonzero divisor");
        let lead_inv = d.leading_coeff_inverse();
        while !rem.is_zero() {
            let rd = rem.poly_degree().unwrap();
            if rd < dd {
                break;
            }
            let factor = rem.leading_coeff_constant().mul(&lead_inv);
            let term = factor.mul(&self.spec.monomial(1, rd - dd));
            quot = quot.add(&term);
            rem = rem.sub(&term.mul(d));
        }
        (quot, rem)
    }

    fn poly_degree(&self) -> Option<usize> {
        match &self.value {
            Value::PolyP(c) => c.len().checked_sub(1),
            Value::PolyQ(c) => c.len().checked_sub(1),
            _ => panic!("not a polynomial"),
        }
    }

    /// The leading coefficient as a degree-zero element.
    fn leading_coeff_constant(&self) -> Self {
        match &self.value {
            Value::PolyP(c) => {
                RingElement { spec: self.spec, value: Value::PolyP(vec![*c.last().unwrap()]) }
            }
            Value::PolyQ(c) => RingElement {
                spec: self.spec,
                value: Value::PolyQ(vec![c.last().unwrap().clone()]),
            },
            _ => panic!("not a polynomial"),
        }
    }

    fn leading_coeff_inverse(&self) -> Self {
        match &self.value {
            Value::PolyP(c) => {
                let p = self.modulus();
                let inv = invmod(*c.last().unwrap(), p);
                RingElement { spec: self.spec, value: Value::PolyP(vec![inv]) }
            }
            Value::PolyQ(c) => {
                let inv = c.last().unwrap().recip();
                RingElement { spec: self.spec, value: Value::PolyQ(vec![inv]) }
            }
            _ => panic!("not a polynomial"),
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.spec.zero());
        }
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    /// Multiplicative inverse for units.
    pub fn inv(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let value = match &self.value {
            Value::Int(a) => Value::Int(a.clone()), // ±1 are self-inverse
            Value::Rat(a) => Value::Rat(a.recip()),
            Value::Res(a) => Value::Res(invmod(*a, self.modulus())),
            Value::PolyP(c) => Value::PolyP(vec![invmod(c[0], self.modulus())]),
            Value::PolyQ(c) => Value::PolyQ(vec![c[0].recip()]),
        };
        Some(RingElement { spec: self.spec, value })
    }

    /// The canonical associate and the unit carrying `self` onto it:
    /// returns `(c, u)` with `c = u * self`, where `c` is nonnegative over the
    /// integers and monic in polynomial rings.
    pub fn normalize_assoc(&self) -> (Self, Self) {
        if self.is_zero() {
            return (self.spec.zero(), self.spec.one());
        }
        match &self.value {
            Value::Int(a) => {
                if a.is_negative() {
                    (self.neg(), self.spec.from_i64(-1))
                } else {
                    (self.clone(), self.spec.one())
                }
            }
            Value::Rat(_) | Value::Res(_) => (self.spec.one(), self.inv().unwrap()),
            Value::PolyP(_) | Value::PolyQ(_) => {
                let u = self.leading_coeff_inverse();
                (self.mul(&u), u)
            }
        }
    }

    pub fn is_canonical_associate(&self) -> bool {
        *self == self.normalize_assoc().0
    }

    /// Greatest common divisor, returned as the canonical associate.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.normalize_assoc().0
    }

    /// Extended Euclid: `(g, x, y)` with `g = x*self + y*other` and `g` canonical.
    pub fn gcd_ext(&self, other: &Self) -> (Self, Self, Self) {
        let one = self.spec.one();
        let zero = self.spec.zero();
        let (mut a, mut b) = (self.clone(), other.clone());
        let (mut xa, mut ya) = (one.clone(), zero.clone());
        let (mut xb, mut yb) = (zero, one);
        while !b.is_zero() {
            let (q, r) = a.div_rem(&b);
            let xr = xa.sub(&q.mul(&xb));
            let yr = ya.sub(&q.mul(&yb));
            a = b;
            xa = xb;
            ya = yb;
            b = r;
            xb = xr;
            yb = yr;
        }
        let (g, u) = a.normalize_assoc();
        (g, xa.mul(&u), ya.mul(&u))
    }

    fn modulus(&self) -> u64 {
        match self.spec.kind {
            RingKind::PrimeField(p) | RingKind::PolyOverPrimeField(p) => p,
            _ => panic!("no modulus for {}", self.spec),
        }
    }

    /// Canonical string form: decimal integers, reduced `a/b` fractions,
    /// residues as decimals, polynomials as `c0 + c1*x + c2*x^2 + ...` with
    /// zero terms omitted.
    pub fn canonical_string(&self) -> String {
        match &self.value {
            Value::Int(a) => a.to_string(),
            Value::Rat(a) => rat_string(a),
            Value::Res(a) => a.to_string(),
            Value::PolyP(c) => poly_string(c.iter().map(|a| a.to_string())),
            Value::PolyQ(c) => poly_string(c.iter().map(rat_string)),
        }
    }

    /// Parses the canonical string form back into an element of `spec`.
    pub fn parse(spec: RingSpec, text: &str) -> Result<Self> {
        let fail = || Error::ElementParse { ring: spec.to_string(), text: text.to_string() };
        let text = text.trim();
        match spec.kind {
            RingKind::Integers => {
                let a: BigInt = text.parse().map_err(|_| fail())?;
                Ok(RingElement { spec, value: Value::Int(a) })
            }
            RingKind::Rationals => {
                let a = parse_rat(text).ok_or_else(fail)?;
                Ok(RingElement { spec, value: Value::Rat(a) })
            }
            RingKind::PrimeField(p) => {
                let a: i64 = text.parse().map_err(|_| fail())?;
                Ok(RingElement { spec, value: Value::Res(reduce_mod(a, p)) })
            }
            RingKind::PolyOverPrimeField(p) => {
                let coeffs = parse_poly(text, |c| {
                    c.parse::<i64>().ok().map(|a| reduce_mod(a, p))
                })
                .ok_or_else(fail)?;
                Ok(RingElement { spec, value: Value::PolyP(trim_p(coeffs)) })
            }
            RingKind::PolyOverRationals => {
                let coeffs = parse_poly(text, parse_rat).ok_or_else(fail)?;
                Ok(RingElement { spec, value: Value::PolyQ(trim_q(coeffs)) })
            }
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

fn rat_string(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

fn parse_rat(text: &str) -> Option<BigRational> {
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = text.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

fn poly_string<I: Iterator<Item = String>>(coeffs: I) -> String {
    let terms: Vec<String> = coeffs
        .enumerate()
        .filter(|(_, c)| c != "0")
        .map(|(i, c)| match i {
            0 => c,
            1 => format!("{c}*x"),
            _ => format!("{c}*x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn parse_poly<C, F: Fn(&str) -> Option<C>>(text: &str, parse_coeff: F) -> Option<Vec<C>>
where
    C: Clone,
{
    let mut terms: Vec<(usize, C)> = Vec::new();
    let mut max_deg = 0usize;
    for raw in text.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            return None;
        }
        let (coeff_text, deg) = if let Some((c, pow)) = term.split_once("*x^") {
            (c.trim(), pow.trim().parse::<usize>().ok()?)
        } else if let Some(c) = term.strip_suffix("*x") {
            (c.trim(), 1)
        } else if term == "x" {
            ("1", 1)
        } else if let Some(pow) = term.strip_prefix("x^") {
            ("1", pow.trim().parse::<usize>().ok()?)
        } else {
            (term, 0)
        };
        let coeff = parse_coeff(coeff_text)?;
        max_deg = max_deg.max(deg);
        terms.push((deg, coeff));
    }
    let zero = parse_coeff("0")?;
    let mut coeffs = vec![zero; max_deg + 1];
    for (deg, c) in terms {
        coeffs[deg] = c;
    }
    Some(coeffs)
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a is nonzero mod p
    assert!(!a.is_multiple_of(p), "inverting zero residue");
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_gate() {
        assert!(RingSpec::prime_field(2).is_ok());
        assert!(RingSpec::prime_field(97).is_ok());
        assert!(RingSpec::prime_field(1).is_err());
        assert!(RingSpec::prime_field(91).is_err()); // 7 * 13
        assert!(RingSpec::poly_over_prime_field(6).is_err());
    }

    #[test]
    fn integer_division_has_small_remainder() {
        let z = RingSpec::integers();
        for a in -20i64..=20 {
            for b in [-7i64, -3, 2, 5] {
                let (q, r) = z.from_i64(a).div_rem(&z.from_i64(b));
                assert_eq!(q.mul(&z.from_i64(b)).add(&r), z.from_i64(a));
                if !r.is_zero() {
                    assert!(r.euclid_norm().unwrap() < z.from_i64(b).euclid_norm().unwrap());
                }
            }
        }
    }

    #[test]
    fn gcd_ext_bezout() {
        let z = RingSpec::integers();
        let (g, x, y) = z.from_i64(12).gcd_ext(&z.from_i64(18));
        assert_eq!(g, z.from_i64(6));
        assert_eq!(x.mul(&z.from_i64(12)).add(&y.mul(&z.from_i64(18))), g);
    }

    #[test]
    fn poly_gcd_over_f2() {
        let r = RingSpec::poly_over_prime_field(2).unwrap();
        let x = r.monomial(1, 1);
        let x2 = r.monomial(1, 2);
        // gcd(x^2 + x, x^2) = x  over F_2
        let g = x2.add(&x).gcd(&x2);
        assert_eq!(g, x);
    }

    #[test]
    fn canonical_associates() {
        let z = RingSpec::integers();
        let (c, u) = z.from_i64(-5).normalize_assoc();
        assert_eq!(c, z.from_i64(5));
        assert_eq!(u.mul(&z.from_i64(-5)), c);

        let qx = RingSpec::poly_over_rationals();
        let p = qx.monomial(2, 1).add(&qx.from_i64(4)); // 4 + 2x
        let (c, u) = p.normalize_assoc();
        assert_eq!(c, qx.monomial(1, 1).add(&qx.from_i64(2))); // monic: 2 + x
        assert_eq!(u.mul(&p), c);
    }

    #[test]
    fn string_round_trip() {
        let cases: Vec<(RingSpec, &str)> = vec![
            (RingSpec::integers(), "-42"),
            (RingSpec::rationals(), "3/7"),
            (RingSpec::rationals(), "-3"),
            (RingSpec::prime_field(5).unwrap(), "4"),
            (RingSpec::poly_over_prime_field(3).unwrap(), "1 + 2*x + 1*x^3"),
            (RingSpec::poly_over_rationals(), "-1/2 + 2*x^2"),
            (RingSpec::poly_over_rationals(), "0"),
        ];
        for (spec, text) in cases {
            let e = RingElement::parse(spec, text).unwrap();
            let back = RingElement::parse(spec, &e.canonical_string()).unwrap();
            assert_eq!(e, back);
        }
    }

    #[test]
    fn field_elements_are_units() {
        let q = RingSpec::rationals();
        let half = RingElement::parse(q, "1/2").unwrap();
        assert!(half.is_unit());
        assert_eq!(half.inv().unwrap(), q.from_i64(2));
        assert!(q.zero().inv().is_none());
    }
}
