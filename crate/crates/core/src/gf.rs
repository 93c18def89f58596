//! Exact arithmetic in GF(p^m).
//!
//! Elements use the polynomial basis over GF(p) and are identified by their
//! canonical integer encoding `enc(x) = sum c_i p^i` (`c_0` is the constant
//! term). Multiplication goes through discrete log / antilog tables built
//! from the smallest primitive element, so fields are limited to q <= 2^16.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Above this order the addition table is not materialised.
const ADD_TABLE_LIMIT: u32 = 512;

/// A field element, stored as its canonical encoding.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn enc(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
}

/// A finite field GF(p^m). Cheap to clone; all clones share the tables.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

/// Wire form of a field: `{"p": int, "m": int, "modulus": [int, ...]}`,
/// modulus coefficients constant term first, leading 1 included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.desc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let desc = FieldDesc::deserialize(d)?;
        Field::new(desc.p, desc.m, Some(&desc.modulus)).map_err(serde::de::Error::custom)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}; modulus {:?})",
            self.0.p, self.0.m, self.0.modulus
        )
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power into `(p, e)`; `None` if `n` is not a prime power.
pub fn prime_power(n: u32) -> Option<(u32, u32)> {
    let f = prime_factors(n);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let (mut e, mut rest) = (0, n);
    while rest > 1 {
        rest /= p;
        e += 1;
    }
    Some((p, e))
}

// Dense polynomials over GF(p) as coefficient vectors, constant term first.
// Only used while bootstrapping the field (irreducibility, raw products).
mod prime_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Remainder of `a` modulo nonzero `b`.
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &bi) in b.iter().enumerate() {
                let t = (c as u64 * bi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|x| x as u32).collect())
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let mut g = digits(idx, p, d);
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    pub fn digits(mut x: u64, p: u32, len: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push((x % p as u64) as u32);
            x /= p as u64;
        }
        out
    }
}

impl Field {
    /// Builds GF(p^m). Without an explicit modulus the lexicographically
    /// smallest monic irreducible (compared from `c_{m-1}` down to `c_0`) is
    /// used. The generator is the primitive element of smallest encoding.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::OutOfRange(
                "extension degree must be at least 1".into(),
            ));
        }
        let q64 = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER);
        let q = q64.ok_or(Error::FieldTooLarge { p, m })? as u32;
        let md = m as usize;

        let modulus = match modulus {
            Some(c) => {
                if c.len() != md + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients, got {}",
                        md + 1,
                        c.len()
                    )));
                }
                if c[md] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if let Some(&bad) = c.iter().find(|&&x| x >= p) {
                    return Err(Error::InvalidModulus(format!(
                        "coefficient {bad} is not below p"
                    )));
                }
                if !prime_poly::is_irreducible(c, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                c.to_vec()
            }
            None => (0..q as u64)
                .map(|idx| {
                    let mut c = prime_poly::digits(idx, p, md);
                    c.push(1);
                    c
                })
                .find(|c| prime_poly::is_irreducible(c, p))
                .expect("an irreducible polynomial of every degree exists"),
        };

        let raw_mul = |a: u32, b: u32| -> u32 {
            let pa = prime_poly::trim(prime_poly::digits(a as u64, p, md));
            let pb = prime_poly::trim(prime_poly::digits(b as u64, p, md));
            let prod = prime_poly::rem(&prime_poly::mul(&pa, &pb, p), &modulus, p);
            prod.iter().rev().fold(0u32, |acc, &c| acc * p + c)
        };
        let raw_pow = |x: u32, mut e: u32| -> u32 {
            let (mut r, mut b) = (1u32, x);
            while e > 0 {
                if e & 1 == 1 {
                    r = raw_mul(r, b);
                }
                b = raw_mul(b, b);
                e >>= 1;
            }
            r
        };

        let order = q - 1;
        let factors = prime_factors(order);
        let generator = if q == 2 {
            1
        } else {
            (2..q)
                .find(|&x| factors.iter().all(|&r| raw_pow(x, order / r) != 1))
                .expect("the multiplicative group is cyclic")
        };

        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..order as usize {
            exp[i] = cur;
            exp[i + order as usize] = cur;
            log[cur as usize] = i as u32;
            cur = raw_mul(cur, generator);
        }

        let digit_neg = |x: u32| -> u32 {
            let d = prime_poly::digits(x as u64, p, md);
            d.iter().rev().fold(0u32, |acc, &c| acc * p + (p - c) % p)
        };
        let neg: Vec<u32> = (0..q).map(digit_neg).collect();

        let add = (m > 1 && q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(p, m, a, b) as u16;
                }
            }
            t
        });

        Ok(Field(Arc::new(Inner {
            p,
            m,
            q,
            modulus,
            generator: Elem(generator),
            exp,
            log,
            neg,
            add,
        })))
    }

    /// Shorthand for the prime-power order with the default modulus.
    pub fn with_order(q: u32) -> Result<Field> {
        let (p, m) =
            prime_power(q).ok_or_else(|| Error::OutOfRange(format!("{q} is not a prime power")))?;
        Field::new(p, m, None)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn generator(&self) -> Elem {
        self.0.generator
    }

    pub fn desc(&self) -> FieldDesc {
        FieldDesc {
            p: self.0.p,
            m: self.0.m,
            modulus: self.0.modulus.clone(),
        }
    }

    pub fn is_odd(&self) -> bool {
        self.0.p != 2
    }

    pub fn elem(&self, enc: u32) -> Result<Elem> {
        if enc < self.0.q {
            Ok(Elem(enc))
        } else {
            Err(Error::InvalidElement { enc, q: self.0.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.0.q
    }

    /// All elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.0.q).map(Elem)
    }

    pub fn enumerate(&self) -> Vec<Elem> {
        self.elements().collect()
    }

    /// Nonzero elements in increasing encoding order.
    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.0.q).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        if inner.m == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= inner.p { s - inner.p } else { s });
        }
        match &inner.add {
            Some(t) => Elem(t[(a.0 * inner.q + b.0) as usize] as u32),
            None => Elem(digit_add(inner.p, inner.m, a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        Elem(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let inner = &*self.0;
        let order = inner.q - 1;
        Ok(Elem(
            inner.exp[((order - inner.log[a.0 as usize]) % order) as usize],
        ))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply; negative exponents invert first.
    pub fn pow(&self, base: Elem, e: i64) -> Result<Elem> {
        let (mut b, mut e) = if e < 0 {
            (self.inv(base)?, e.unsigned_abs())
        } else {
            (base, e as u64)
        };
        let mut r = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        Ok(r)
    }

    /// Discrete logarithm to the base of [`Field::generator`].
    pub fn log(&self, a: Elem) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.0.log[a.0 as usize])
    }

    /// `g^e` for the field generator, `e` taken modulo q - 1.
    pub fn gen_pow(&self, e: i64) -> Elem {
        let order = (self.0.q - 1) as i64;
        Elem(self.0.exp[e.rem_euclid(order) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Result<u32> {
        let l = self.log(a)?;
        let n = self.0.q - 1;
        Ok(n / gcd(n, l))
    }

    pub fn is_square(&self, x: Elem) -> bool {
        if x.is_zero() || !self.is_odd() {
            return true;
        }
        self.0.log[x.0 as usize].is_multiple_of(2)
    }

    /// The square root with the smaller encoding.
    pub fn sqrt(&self, x: Elem) -> Result<Elem> {
        if x.is_zero() {
            return Ok(Elem::ZERO);
        }
        let order = self.0.q - 1;
        let mut k = self.0.log[x.0 as usize];
        if k % 2 == 1 {
            if self.is_odd() {
                return Err(Error::NotSquare(x.0));
            }
            // q - 1 is odd in characteristic 2.
            k += order;
        }
        let y = Elem(self.0.exp[((k / 2) % order) as usize]);
        let z = self.neg(y);
        Ok(y.min(z))
    }

    /// `g^((q-1)/d)`, an element of order exactly `d`.
    pub fn root_of_unity(&self, d: u32) -> Result<Elem> {
        let order = self.0.q - 1;
        if d == 0 || !order.is_multiple_of(d) {
            return Err(Error::NoRootOfUnity { d, order });
        }
        Ok(self.gen_pow((order / d) as i64))
    }

    /// Sum of a slice of elements.
    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    /// Product of a slice of elements.
    pub fn product<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ONE, |acc, x| self.mul(acc, x))
    }

    /// Euclidean inner product of two equal-length vectors.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        debug_assert_eq!(a.len(), b.len());
        a.iter()
            .zip(b)
            .fold(Elem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

fn digit_add(p: u32, m: u32, mut a: u32, mut b: u32) -> u32 {
    let (mut out, mut place) = (0u32, 1u32);
    for _ in 0..m {
        let s = (a % p + b % p) % p;
        out += s * place;
        place *= p;
        a /= p;
        b /= p;
    }
    out
}

pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn small_prime_fields() {
        let f5 = Field::new(5, 1, None).unwrap();
        assert_eq!(f5.q(), 5);
        // 2 has order 4 modulo 5: 2, 4, 3, 1.
        let powers: Vec<u32> = (1..=4).map(|e| f5.pow(Elem(2), e).unwrap().0).collect();
        assert_eq!(powers, vec![2, 4, 3, 1]);
        assert_eq!(f5.generator(), Elem(2));
        assert_eq!(Field::new(3, 1, None).unwrap().generator(), Elem(2));
    }

    #[test]
    fn gf49_default_modulus_is_irreducible() {
        let f = Field::new(7, 2, None).unwrap();
        assert_eq!(f.q(), 49);
        // x^2 + 1: -1 is a non-residue mod 7, so the monic quadratic has no root.
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let c = f.modulus();
        for x in 0..7u32 {
            assert_ne!((c[0] + c[1] * x + x * x) % 7, 0);
        }
        assert_eq!(f.order(f.generator()).unwrap(), 48);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(Field::new(6, 1, None).unwrap_err(), Error::NotPrime(6));
        // x^2 + 1 = (x + 2)(x + 3) over GF(5).
        assert_eq!(
            Field::new(5, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus(5)
        );
        assert!(matches!(
            Field::new(5, 2, Some(&[2, 0, 2])),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            Field::new(2, 17, None),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let f = gf(5);
        assert_eq!(f.mul(Elem(2), Elem(3)), Elem(1));
        assert_eq!(f.inv(Elem(2)).unwrap(), Elem(3));
        assert_eq!(f.inv(Elem::ZERO).unwrap_err(), Error::ZeroInverse);
        assert_eq!(f.pow(Elem(2), -1).unwrap(), Elem(3));
        for q in [2, 3, 4, 8, 9, 13, 25, 27, 49, 81, 128] {
            let f = gf(q);
            assert_eq!(f.pow(f.generator(), (q - 1) as i64).unwrap(), Elem::ONE);
        }
    }

    #[test]
    fn squares_and_roots() {
        let f7 = gf(7);
        assert!(f7.is_square(Elem(4)));
        assert_eq!(f7.sqrt(Elem(4)).unwrap(), Elem(2));
        let f5 = gf(5);
        let squares: Vec<u32> = f5.elements().map(|y| f5.mul(y, y).0).collect();
        assert!(!squares.contains(&3));
        assert!(!f5.is_square(Elem(3)));
        assert_eq!(f5.sqrt(Elem(3)).unwrap_err(), Error::NotSquare(3));
        for q in [5, 8, 9, 16, 25] {
            let f = gf(q);
            assert!(f.is_square(Elem::ZERO));
            assert_eq!(f.sqrt(Elem::ZERO).unwrap(), Elem::ZERO);
            assert_eq!(f.sqrt(Elem::ONE).unwrap(), Elem::ONE);
        }
    }

    #[test]
    fn roots_of_unity() {
        let f13 = gf(13);
        let g = f13.generator();
        let w = f13.root_of_unity(4).unwrap();
        assert_eq!(w, f13.pow(g, 3).unwrap());
        assert_eq!(f13.order(w).unwrap(), 4);
        assert_eq!(f13.root_of_unity(1).unwrap(), Elem::ONE);
        assert_eq!(f13.root_of_unity(12).unwrap(), g);
        assert!(matches!(
            f13.root_of_unity(5),
            Err(Error::NoRootOfUnity { .. })
        ));
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(gf(3).enumerate(), vec![Elem(0), Elem(1), Elem(2)]);
        let nine = gf(9).enumerate();
        assert_eq!(nine.len(), 9);
        assert!(nine.iter().enumerate().all(|(i, e)| e.0 == i as u32));
    }

    #[test]
    fn serde_round_trip() {
        let f = gf(27);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            format!("{{\"p\":3,\"m\":3,\"modulus\":{:?}}}", f.modulus()).replace(' ', "")
        );
        let back: Field = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<Field>(r#"{"p":5,"m":2,"modulus":[1,0,1]}"#).is_err());
    }

    /// Exhaustive field-axiom checks on small fields of both parities.
    #[test]
    fn axioms_exhaustive() {
        for q in [2, 4, 5, 8, 9, 16, 25, 27] {
            let f = gf(q);
            let all = f.enumerate();
            let mut nonzero_squares = 0;
            for &x in &all {
                assert_eq!(f.add(x, f.neg(x)), Elem::ZERO);
                if !x.is_zero() {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), Elem::ONE);
                    assert_eq!(f.pow(x, (q - 1) as i64).unwrap(), Elem::ONE);
                    if f.is_square(x) {
                        nonzero_squares += 1;
                    }
                }
                if f.is_square(x) {
                    let r = f.sqrt(x).unwrap();
                    assert_eq!(f.mul(r, r), x);
                }
                for &y in &all {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    if !x.is_zero() && !y.is_zero() && f.is_odd() {
                        assert_eq!(f.is_square(f.mul(x, y)), f.is_square(x) == f.is_square(y));
                    }
                }
            }
            let expected = if f.is_odd() { (q - 1) / 2 } else { q - 1 };
            assert_eq!(nonzero_squares, expected, "q = {q}");
        }
    }
}
