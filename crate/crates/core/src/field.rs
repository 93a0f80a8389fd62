//! Exact coefficient arithmetic: arbitrary-precision rationals and prime fields.

use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;

/// The two coefficient field backends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// Arbitrary-precision rationals (characteristic 0).
    Rat,
    /// Integers modulo a 64-bit prime.
    Mod(u64),
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rat => 0,
            Field::Mod(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rat => Scalar::Rat(BigRational::zero()),
            Field::Mod(p) => Scalar::Mod { p: *p, v: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rat => Scalar::Rat(BigRational::one()),
            Field::Mod(p) => Scalar::Mod { p: *p, v: 1 % *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rat => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Mod(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Mod { p: *p, v: m }
            }
        }
    }

    /// Parses `n` or `n/m` (decimal integers, optional sign).
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s, None),
        };
        let n: i64 = num
            .parse()
            .map_err(|_| Error::BadParameter(format!("cannot parse scalar `{s}`")))?;
        let mut val = self.from_i64(n);
        if let Some(d) = den {
            let m: i64 = d
                .parse()
                .map_err(|_| Error::BadParameter(format!("cannot parse scalar `{s}`")))?;
            val = val.div(&self.from_i64(m))?;
        }
        Ok(val)
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Mod { p: u64, v: u64 },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rat,
            Scalar::Mod { p, .. } => Field::Mod(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { p, v } => *v == 1 % *p,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.same_field(other).expect("scalar field mismatch");
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { p, v: a }, Scalar::Mod { v: b, .. }) => {
                Scalar::Mod { p: *p, v: (a + b) % p }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { p, v } => Scalar::Mod { p: *p, v: (*p - *v) % *p },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.same_field(other).expect("scalar field mismatch");
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { p, v: a }, Scalar::Mod { v: b, .. }) => {
                Scalar::Mod { p: *p, v: mul_mod(*a, *b, *p) }
            }
            _ => unreachable!(),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { p, v } => Scalar::Mod { p: *p, v: pow_mod(*v, p - 2, *p) },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut r = self.field().one();
        for _ in 0..e {
            r = r.mul(self);
        }
        Ok(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

/// Multiplicative order of a field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Infinite,
    Finite(u64),
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Infinite => write!(f, "infinite"),
            Order::Finite(e) => write!(f, "{e}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Multiplicative order of a nonzero, non-unit-root rational is infinite
/// except for -1; over a prime field it divides p-1.
pub fn mult_order(x: &Scalar) -> Result<Order> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    match x {
        Scalar::Rat(r) => {
            if r.is_one() {
                Ok(Order::Finite(1))
            } else if (-r).is_one() {
                Ok(Order::Finite(2))
            } else {
                Ok(Order::Infinite)
            }
        }
        Scalar::Mod { p, v } => {
            let group = p - 1;
            let mut best = group;
            let mut k = 1u64;
            while k * k <= group {
                if group % k == 0 {
                    for e in [k, group / k] {
                        if e < best && pow_mod(*v, e, *p) == 1 % *p {
                            best = e;
                        }
                    }
                }
                k += 1;
            }
            Ok(Order::Finite(best))
        }
    }
}

/// The global parameter pack: field, q, red parameters Q, rank d and level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldConfig {
    pub field: Field,
    pub q: Scalar,
    pub params: Vec<Scalar>,
    pub d: usize,
    pub level: usize,
}

/// A config whose invariants have been checked, carrying the order of q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedConfig {
    pub cfg: FieldConfig,
    pub q_order: Order,
}

impl FieldConfig {
    pub fn new(characteristic: u64, q: Scalar, params: Vec<Scalar>, d: usize, level: usize) -> Self {
        let field = if characteristic == 0 { Field::Rat } else { Field::Mod(characteristic) };
        FieldConfig { field, q, params, d, level }
    }

    pub fn validate(self) -> Result<ValidatedConfig> {
        if let Field::Mod(p) = self.field {
            if !is_prime(p) {
                return Err(Error::NonPrimeCharacteristic(p));
            }
        }
        if self.q.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if self.q.is_zero() {
            return Err(Error::BadParameter("q = 0".into()));
        }
        if self.q.is_one() {
            return Err(Error::BadParameter("q = 1".into()));
        }
        if self.params.len() != self.level {
            return Err(Error::BadParameter(format!(
                "expected {} parameters, got {}",
                self.level,
                self.params.len()
            )));
        }
        for (m, qm) in self.params.iter().enumerate() {
            if qm.field() != self.field {
                return Err(Error::FieldMismatch);
            }
            if qm.is_zero() {
                return Err(Error::BadParameter(format!("Q_{} = 0", m + 1)));
            }
        }
        let q_order = mult_order(&self.q)?;
        Ok(ValidatedConfig { cfg: self, q_order })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Scalar {
        Field::Rat.from_i64(n).div(&Field::Rat.from_i64(d)).unwrap()
    }

    #[test]
    fn rational_add() {
        // 1/2 + 1/3 = 5/6
        assert_eq!(rat(1, 2).add(&rat(1, 3)), rat(5, 6));
    }

    #[test]
    fn prime_field_mul() {
        // 3 * 5 = 15 = 1 mod 7
        let f = Field::Mod(7);
        assert_eq!(f.from_i64(3).mul(&f.from_i64(5)), f.from_i64(1));
    }

    #[test]
    fn self_division_is_one() {
        for a in [rat(3, 4), rat(-7, 5), Field::Mod(7).from_i64(4)] {
            assert!(a.div(&a).unwrap().is_one());
        }
        assert_eq!(rat(1, 1).div(&Field::Rat.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn validate_reports_q_order() {
        let f = Field::Mod(7);
        let v = FieldConfig::new(7, f.from_i64(2), vec![f.from_i64(1)], 1, 1)
            .validate()
            .unwrap();
        // 2^3 = 8 = 1 mod 7
        assert_eq!(v.q_order, Order::Finite(3));

        let bad = FieldConfig::new(0, Field::Rat.one(), vec![Field::Rat.from_i64(3)], 1, 1);
        assert!(matches!(bad.validate(), Err(Error::BadParameter(_))));

        let v2 = FieldConfig::new(
            0,
            Field::Rat.from_i64(2),
            vec![Field::Rat.from_i64(3), Field::Rat.from_i64(5)],
            2,
            2,
        )
        .validate()
        .unwrap();
        assert_eq!(v2.q_order, Order::Infinite);
    }

    #[test]
    fn non_prime_characteristic_rejected() {
        let f = Field::Mod(6);
        let cfg = FieldConfig::new(6, f.from_i64(2), vec![], 1, 0);
        assert_eq!(cfg.validate(), Err(Error::NonPrimeCharacteristic(6)));
    }

    #[test]
    fn fermat() {
        let f = Field::Mod(13);
        for a in 1..13 {
            assert!(f.from_i64(a).pow(12).unwrap().is_one());
        }
    }
}
