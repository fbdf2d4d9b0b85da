//! Exact arithmetic in the cyclotomic field `Q(ζ_M)`.
//!
//! Numbers are stored in the power basis `1, ζ, …, ζ^{φ(M)-1}` reduced modulo
//! the `M`-th cyclotomic polynomial, so every element has exactly one
//! coefficient vector and equality is plain vector equality.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A sign `±1`, used for the `μ`, `λ`, `θ` parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `self^k`
    pub fn pow(self, k: i64) -> Sign {
        if self == Sign::Minus && k.rem_euclid(2) == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn parse(text: &str) -> Option<Sign> {
        match text.trim() {
            "+1" | "1" | "+" => Some(Sign::Plus),
            "-1" | "-" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Conductor `M` together with the cached reduction data for `Φ_M`.
pub struct FieldContext {
    conductor: u32,
    degree: usize,
    modulus: Vec<BigInt>,
    // x^{degree + j} mod Φ_M, for j = 0 .. degree - 2
    overflow: Vec<Vec<BigInt>>,
    // x^k mod Φ_M, for k = 0 .. M - 1
    powers: Vec<Vec<BigInt>>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("conductor", &self.conductor)
            .field("degree", &self.degree)
            .finish()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    pub fn new(conductor: u32) -> Arc<FieldContext> {
        assert!(conductor >= 1, "conductor must be positive");
        let modulus = cyclotomic_polynomial(conductor);
        let degree = modulus.len() - 1;

        let mut powers = Vec::with_capacity(conductor as usize);
        let mut current = vec![BigInt::zero(); degree.max(1)];
        current[0] = BigInt::one();
        if degree == 0 {
            unreachable!("cyclotomic polynomials have positive degree");
        }
        let times_x = |v: &[BigInt]| -> Vec<BigInt> {
            // multiply by x and reduce the single overflow coefficient
            let top = v[degree - 1].clone();
            let mut out = vec![BigInt::zero(); degree];
            for i in (1..degree).rev() {
                out[i] = v[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..degree {
                    out[i] -= &top * &modulus[i];
                }
            }
            out
        };
        for _ in 0..conductor {
            powers.push(current.clone());
            current = times_x(&current);
        }

        let mut overflow = Vec::new();
        let mut v = powers[(degree - 1) % conductor as usize].clone();
        for _ in 0..degree.saturating_sub(1) {
            v = times_x(&v);
            overflow.push(v.clone());
        }

        Arc::new(FieldContext {
            conductor,
            degree,
            modulus,
            overflow,
            powers,
        })
    }

    /// The conductor used for an algebra with parameter `N`: `lcm(4, 2N)`.
    pub fn for_algebra(big_n: u32) -> Arc<FieldContext> {
        FieldContext::new(4u32.lcm(&(2 * big_n)))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `φ(M)`, the dimension of the field over the rationals.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of `Φ_M`, lowest degree first.
    pub fn cyclotomic_modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

/// The `m`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = exact_div_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// An exact element of `Q(ζ_M)`.
#[derive(Clone)]
pub struct CycNumber {
    ctx: Arc<FieldContext>,
    coeffs: Vec<Rational>,
}

impl CycNumber {
    pub fn zero(ctx: &Arc<FieldContext>) -> CycNumber {
        CycNumber {
            ctx: ctx.clone(),
            coeffs: vec![Rational::zero(); ctx.degree],
        }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> CycNumber {
        CycNumber::from_integer(ctx, 1)
    }

    pub fn from_integer(ctx: &Arc<FieldContext>, value: i64) -> CycNumber {
        CycNumber::from_rational(ctx, Rational::from_integer(BigInt::from(value)))
    }

    pub fn from_ratio(ctx: &Arc<FieldContext>, num: i64, den: i64) -> CycNumber {
        CycNumber::from_rational(ctx, Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(ctx: &Arc<FieldContext>, value: Rational) -> CycNumber {
        let mut out = CycNumber::zero(ctx);
        out.coeffs[0] = value;
        out
    }

    pub fn from_sign(ctx: &Arc<FieldContext>, sign: Sign) -> CycNumber {
        CycNumber::from_integer(ctx, sign.as_i64())
    }

    /// `ζ_M^k` for any integer `k`.
    pub fn zeta_power(ctx: &Arc<FieldContext>, k: i64) -> CycNumber {
        let k = k.rem_euclid(ctx.conductor as i64) as usize;
        CycNumber {
            ctx: ctx.clone(),
            coeffs: ctx.powers[k]
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        }
    }

    /// Builds a number from power-basis coefficients; longer vectors are reduced.
    pub fn from_coefficients(ctx: &Arc<FieldContext>, coeffs: &[Rational]) -> CycNumber {
        let mut out = CycNumber::zero(ctx);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = &ctx.powers[k % ctx.conductor as usize];
            for (i, p) in power.iter().enumerate() {
                if !p.is_zero() {
                    out.coeffs[i] += c * Rational::from_integer(p.clone());
                }
            }
        }
        out
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the number lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_ctx(&self, other: &CycNumber) {
        assert_eq!(
            self.ctx.conductor, other.ctx.conductor,
            "mixing cyclotomic numbers of different conductors"
        );
    }

    pub fn inverse(&self) -> Result<CycNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycNumber::from_rational(&self.ctx, r.recip()));
        }
        let modulus: Vec<Rational> = self
            .ctx
            .modulus
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let inv = poly_inverse_mod(&self.coeffs, &modulus).ok_or(Error::DivisionByZero)?;
        Ok(CycNumber::from_coefficients(&self.ctx, &inv))
    }

    pub fn checked_div(&self, rhs: &CycNumber) -> Result<CycNumber> {
        self.check_ctx(rhs);
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, mut exp: u64) -> CycNumber {
        let mut base = self.clone();
        let mut acc = CycNumber::one(&self.ctx);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn powi(&self, exp: i64) -> Result<CycNumber> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inverse()?.pow(exp.unsigned_abs()))
        }
    }

    /// Smallest `k ≥ 1` with `self^k = 1`, searched up to `limit`.
    pub fn multiplicative_order(&self, limit: u64) -> Option<u64> {
        let one = CycNumber::one(&self.ctx);
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc == one {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Canonical text: ascending powers of `z`, zero terms omitted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if negative {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if k == 0 {
                out.push_str(&rational_text(&mag));
            } else if mag.is_one() {
                out.push_str(&format!("z^{k}"));
            } else {
                out.push_str(&format!("{}*z^{k}", rational_text(&mag)));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn parse(ctx: &Arc<FieldContext>, text: &str) -> Result<CycNumber> {
        Parser::new(ctx, text).parse()
    }
}

fn rational_text(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.conductor == other.ctx.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycNumber {}

impl Hash for CycNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl Serialize for CycNumber {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_text())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &CycNumber) {
        self.check_ctx(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&CycNumber> for CycNumber {
    fn sub_assign(&mut self, rhs: &CycNumber) {
        self.check_ctx(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        self.check_ctx(rhs);
        let d = self.ctx.degree;
        if let Some(r) = rhs.as_rational() {
            if r.is_one() {
                return self.clone();
            }
            return CycNumber {
                ctx: self.ctx.clone(),
                coeffs: self.coeffs.iter().map(|c| c * r).collect(),
            };
        }
        if let Some(r) = self.as_rational() {
            return CycNumber {
                ctx: self.ctx.clone(),
                coeffs: rhs.coeffs.iter().map(|c| r * c).collect(),
            };
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<Rational> = prod.drain(..d).collect();
        for (j, high) in prod.iter().enumerate() {
            if high.is_zero() {
                continue;
            }
            for (i, c) in self.ctx.overflow[j].iter().enumerate() {
                if !c.is_zero() {
                    coeffs[i] += high * Rational::from_integer(c.clone());
                }
            }
        }
        CycNumber {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Primitive `k`-th root of unity `ζ_M^{M/k}`.
pub fn root_of_unity(ctx: &Arc<FieldContext>, k: u32) -> Result<CycNumber> {
    if k == 0 || !ctx.conductor.is_multiple_of(k) {
        return Err(Error::RootOrder {
            k,
            conductor: ctx.conductor,
        });
    }
    Ok(CycNumber::zeta_power(ctx, (ctx.conductor / k) as i64))
}

/// All `k` elements of `𝔾_k`, in the order `ζ_k^0, ζ_k^1, …`.
pub fn enumerate_roots(ctx: &Arc<FieldContext>, k: u32) -> Result<Vec<CycNumber>> {
    let step = root_of_unity(ctx, k)?;
    let mut out = Vec::with_capacity(k as usize);
    let mut acc = CycNumber::one(ctx);
    for _ in 0..k {
        out.push(acc.clone());
        acc = &acc * &step;
    }
    Ok(out)
}

/// `√λ`: `1` for `λ = +1` and `ζ_4` for `λ = -1`.
pub fn sqrt_of_sign(ctx: &Arc<FieldContext>, sign: Sign) -> CycNumber {
    match sign {
        Sign::Plus => CycNumber::one(ctx),
        Sign::Minus => root_of_unity(ctx, 4).expect("conductor is a multiple of 4"),
    }
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dn = den.len() - 1;
    let lead = den[dn].clone();
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dn] / &lead;
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

// Extended Euclid: returns u with a*u ≡ 1 (mod m), if gcd(a, m) = 1.
fn poly_inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let mut inv: Vec<Rational> = s0.iter().map(|x| x / &c).collect();
    let (_, rem) = poly_divrem(&inv, m);
    inv = rem;
    Some(inv)
}

struct Parser<'a> {
    ctx: &'a Arc<FieldContext>,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ctx: &'a Arc<FieldContext>, text: &'a str) -> Self {
        Parser {
            ctx,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string parses"))
    }

    fn zpow(&mut self) -> Result<usize> {
        // caller has seen 'z'
        self.pos += 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.digits()?;
            let m = BigInt::from(self.ctx.conductor);
            let k = k.mod_floor(&m);
            Ok(k.to_string().parse().expect("small exponent"))
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(Rational, usize)> {
        match self.peek() {
            Some(b'z') => Ok((Rational::one(), self.zpow()?)),
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.digits()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    value /= Rational::from_integer(den);
                }
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if self.peek() != Some(b'z') {
                        return self.err("expected 'z' after '*'");
                    }
                    let k = self.zpow()?;
                    Ok((value, k))
                } else {
                    Ok((value, 0))
                }
            }
            Some(_) => self.err("expected a rational or a power of z"),
            None => self.err("unexpected end of input"),
        }
    }

    fn parse(mut self) -> Result<CycNumber> {
        let m = self.ctx.conductor as usize;
        let mut acc = vec![Rational::zero(); m];
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                None if !first => break,
                _ if first => false,
                Some(_) => return self.err("expected '+' or '-'"),
                None => break,
            };
            let (c, k) = self.term()?;
            if negative {
                acc[k] -= c;
            } else {
                acc[k] += c;
            }
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        Ok(CycNumber::from_coefficients(self.ctx, &acc))
    }
}
