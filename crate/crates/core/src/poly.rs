//! Dense polynomials over a prime field, with irreducibility, order and
//! primitivity tests and a deterministic primitive-polynomial search.
//!
//! Coefficients are little-endian: index `i` holds the coefficient of `s^i`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u32>,
}

impl Poly {
    /// Builds a polynomial from little-endian coefficients, reducing mod p
    /// and trimming trailing zeros.
    pub fn new(field: PrimeField, coeffs: Vec<u32>) -> Poly {
        let mut coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % field.modulus()).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_elements(field: PrimeField, coeffs: &[FieldElement]) -> Result<Poly> {
        for c in coeffs {
            if c.field() != field {
                return Err(Error::FieldMismatch(field.modulus(), c.field().modulus()));
            }
        }
        Ok(Poly::new(field, coeffs.iter().map(|c| c.value()).collect()))
    }

    pub fn zero(field: PrimeField) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Poly {
        Poly::new(field, vec![1])
    }

    /// `c * s^deg`.
    pub fn monomial(field: PrimeField, deg: usize, c: u32) -> Poly {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Poly::new(field, coeffs)
    }

    /// The indeterminate `s`.
    pub fn s(field: PrimeField) -> Poly {
        Poly::monomial(field, 1, 1)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `s^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.elem(self.coeffs.get(i).copied().unwrap_or(0))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Coefficients `(a_0, ..., a_{n-1})` of the recurrence
    /// `S(k+n) = a_{n-1} S(k+n-1) + ... + a_0 S(k)` for a monic polynomial
    /// `s^n - a_{n-1} s^{n-1} - ... - a_0`.
    pub fn recurrence_coeffs(&self) -> Result<Vec<u32>> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = self.coeffs.len() - 1;
        Ok(self.coeffs[..n]
            .iter()
            .map(|&c| self.field.neg(c))
            .collect())
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.add(a, b)
            })
            .collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        let f = self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, out))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor)?;
        let dn = divisor.degree().ok_or(Error::ModulusZero)?;
        let f = self.field;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dn {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dn];
        for top in (dn..rem.len()).rev() {
            let c = f.mul(rem[top], lead_inv);
            if c == 0 {
                continue;
            }
            let shift = top - dn;
            quot[shift] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = f.sub(rem[shift + j], f.mul(c, d));
            }
        }
        rem.truncate(dn);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, modulus: &Poly) -> Result<Poly> {
        Ok(self.div_rem(modulus)?.1)
    }

    pub fn make_monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self
            .field
            .inv(self.leading())
            .expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u128, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(self.field).rem(modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?.rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Evaluates at a field element by Horner's rule.
    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            Some(0) | None => return false,
            Some(n) => n,
        };
        let f = self.make_monic();
        let q = self.field.modulus() as u128;
        let s = Poly::s(self.field).rem(&f).expect("nonzero modulus");
        // frob[k] = s^(q^k) mod f
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(s.clone());
        for k in 1..=n {
            let next = frob[k - 1].pow_mod(q, &f).expect("nonzero modulus");
            frob.push(next);
        }
        if frob[n] != s {
            return false;
        }
        for d in prime_factors(n as u64) {
            let k = n / d as usize;
            let g = frob[k].sub(&s).expect("same field");
            if g.gcd(&f).expect("same field").degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Multiplicative order of `s` modulo this (monic, irreducible) polynomial.
    pub fn order(&self) -> Result<u128> {
        let n = self.degree().filter(|&n| n >= 1).ok_or(Error::DegreeZero)?;
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if self.coeffs[0] == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        if !self.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        let group = group_order(self.field, n)?;
        let s = Poly::s(self.field);
        let one = Poly::one(self.field).rem(self)?;
        let mut e = group;
        for pf in prime_factors(group as u64) {
            let pf = pf as u128;
            while e % pf == 0 && s.pow_mod(e / pf, self)? == one {
                e /= pf;
            }
        }
        Ok(e)
    }

    /// True iff monic, irreducible, and `s` has order `q^n - 1`.
    pub fn is_primitive(&self) -> bool {
        let Some(n) = self.degree().filter(|&n| n >= 1) else {
            return false;
        };
        if !self.is_monic() || self.coeffs[0] == 0 {
            return false;
        }
        match (group_order(self.field, n), self.order()) {
            (Ok(g), Ok(o)) => g == o,
            _ => false,
        }
    }

    /// Parses `"s^6+s+1"`, `"2*s^2+1"` or `"coeffs=[1,1,0,0,0,0,1]"`.
    pub fn parse(field: PrimeField, text: &str) -> Result<Poly> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(list) = t.strip_prefix("coeffs=") {
            let inner = list
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("expected coeffs=[...], got {text:?}")))?;
            if inner.is_empty() {
                return Ok(Poly::zero(field));
            }
            let coeffs = inner
                .split(',')
                .map(|c| {
                    c.parse::<i64>()
                        .map(|v| field.reduce(v))
                        .map_err(|e| Error::Parse(format!("bad coefficient {c:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Poly::new(field, coeffs));
        }
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<u32> = Vec::new();
        let mut rest = t.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let negative = match rest.as_bytes()[0] {
                b'+' => {
                    rest = &rest[1..];
                    false
                }
                b'-' => {
                    rest = &rest[1..];
                    true
                }
                _ if first => false,
                _ => return Err(Error::Parse(format!("expected + or - in {text:?}"))),
            };
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            let (c, deg) = parse_term(term)
                .ok_or_else(|| Error::Parse(format!("bad term {term:?} in {text:?}")))?;
            let c = field.reduce(if negative { -c } else { c });
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            coeffs[deg] = field.add(coeffs[deg], c);
        }
        Ok(Poly::new(field, coeffs))
    }
}

fn parse_term(term: &str) -> Option<(i64, usize)> {
    if term.is_empty() {
        return None;
    }
    let (coef, var) = match term.find(['s', 'x']) {
        None => return term.parse().ok().map(|c| (c, 0)),
        Some(pos) => (&term[..pos], &term[pos + 1..]),
    };
    let c = match coef {
        "" => 1,
        c => c.strip_suffix('*')?.parse().ok()?,
    };
    let deg = match var {
        "" => 1,
        v => v.strip_prefix('^')?.parse().ok()?,
    };
    Some((c, deg))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (c, i) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "s")?,
                (1, i) => write!(f, "s^{i}")?,
                (c, 1) => write!(f, "{c}*s")?,
                (c, i) => write!(f, "{c}*s^{i}")?,
            }
        }
        Ok(())
    }
}

/// `q^n - 1`, the order of the multiplicative group of `F_{q^n}`.
pub fn group_order(field: PrimeField, n: usize) -> Result<u128> {
    let q = field.modulus() as u128;
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc = acc.checked_mul(q).ok_or(Error::OrderTooLarge)?;
        if acc > u64::MAX as u128 {
            return Err(Error::OrderTooLarge);
        }
    }
    Ok(acc - 1)
}

/// Distinct prime factors by trial division, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Monic degree-`n` polynomials with nonzero constant term, ordered by their
/// lower coefficient vector read as a little-endian base-q integer.
fn candidates(field: PrimeField, n: usize) -> impl Iterator<Item = Poly> {
    let q = field.modulus() as u128;
    let total = q.checked_pow(n as u32).unwrap_or(u128::MAX);
    (0..total).filter_map(move |mut v| {
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..n {
            coeffs.push((v % q) as u32);
            v /= q;
        }
        if coeffs[0] == 0 {
            return None;
        }
        coeffs.push(1);
        Some(Poly::new(field, coeffs))
    })
}

/// The primitive polynomial of degree `n` with the smallest little-endian
/// coefficient vector.
pub fn find_primitive(field: PrimeField, n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    group_order(field, n)?;
    Ok(candidates(field, n)
        .find(Poly::is_primitive)
        .expect("a primitive polynomial exists for every degree"))
}

/// All primitive polynomials of degree `n`, in search order.
pub fn primitive_polys(field: PrimeField, n: usize) -> Result<impl Iterator<Item = Poly>> {
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    group_order(field, n)?;
    Ok(candidates(field, n).filter(Poly::is_primitive))
}
