//! The field `Q(k)` of rational functions in one formal parameter.
//!
//! Everything downstream treats `k` as transcendental, so a value is zero
//! exactly when its normalized numerator is the zero polynomial. Integer
//! coefficients are arbitrary precision.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial in `k` with integer coefficients; `coeffs[i]` is the coefficient of `k^i`.
///
/// The coefficient vector never carries a trailing zero, so the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntPolyK {
    coeffs: Vec<BigInt>,
}

impl IntPolyK {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolyK { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolyK { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * k^deg`.
    pub fn monomial(c: BigInt, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        IntPolyK { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Exponent of the lowest nonzero term.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPolyK {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        IntPolyK {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    fn shift_down(&self, s: usize) -> Self {
        IntPolyK {
            coeffs: self.coeffs[s..].to_vec(),
        }
    }

    fn shift_up(&self, s: usize) -> Self {
        if s == 0 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolyK { coeffs }
    }

    pub fn neg(&self) -> Self {
        IntPolyK {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn positive_lc(self) -> Self {
        if self.lc().is_some_and(Signed::is_negative) {
            self.neg()
        } else {
            self
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`; `d` must divide `self` in `Z[k]`.
    pub fn div_exact(&self, d: &IntPolyK) -> Self {
        assert!(!d.is_zero(), "exact division by the zero polynomial");
        if d.is_one() {
            return self.clone();
        }
        if d.is_constant() {
            return self.div_scalar_exact(&d.coeffs[0]);
        }
        let dd = d.coeffs.len() - 1;
        let lead = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            debug_assert!(self.is_zero(), "inexact polynomial division");
            return Self::zero();
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for qi in (0..quot.len()).rev() {
            let top = &rem[qi + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            debug_assert!(r.is_zero(), "inexact polynomial division");
            for (t, dc) in d.coeffs.iter().enumerate() {
                rem[qi + t] -= &q * dc;
            }
            quot[qi] = q;
        }
        debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        Self::new(quot)
    }

    /// Pseudo-remainder of `a` by `b` (`lc(b)^(deg a - deg b + 1) * a mod b`).
    fn pseudo_rem(a: &IntPolyK, b: &IntPolyK) -> IntPolyK {
        let db = b.coeffs.len() - 1;
        let lb = &b.coeffs[db];
        let mut r = a.coeffs.clone();
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= lb;
            }
            let shift = dr - db;
            for (t, bc) in b.coeffs.iter().enumerate() {
                r[shift + t] -= &lr * bc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        IntPolyK::new(r)
    }

    /// Greatest common divisor in `Z[k]`, normalized to a positive leading coefficient.
    pub fn gcd(a: &IntPolyK, b: &IntPolyK) -> IntPolyK {
        if a.is_zero() {
            return b.clone().positive_lc();
        }
        if b.is_zero() {
            return a.clone().positive_lc();
        }
        let (oa, ob) = (a.order().unwrap(), b.order().unwrap());
        let s = oa.min(ob);
        let (ca, cb) = (a.content(), b.content());
        let c = ca.gcd(&cb);
        let mut pa = a.shift_down(oa).div_scalar_exact(&ca);
        let mut pb = b.shift_down(ob).div_scalar_exact(&cb);
        let g = if pa.is_constant() || pb.is_constant() {
            IntPolyK::one()
        } else {
            if pa.coeffs.len() < pb.coeffs.len() {
                core::mem::swap(&mut pa, &mut pb);
            }
            // primitive remainder sequence
            loop {
                let r = Self::pseudo_rem(&pa, &pb);
                if r.is_zero() {
                    break pb.positive_lc();
                }
                if r.is_constant() {
                    break IntPolyK::one();
                }
                let cr = r.content();
                pa = pb;
                pb = r.div_scalar_exact(&cr);
            }
        };
        g.scale(&c).shift_up(s).positive_lc()
    }

    pub fn eval(&self, k0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * k0 + BigRational::from_integer(c.clone());
        }
        acc
    }
}

impl<'a> Add<&'a IntPolyK> for &'a IntPolyK {
    type Output = IntPolyK;
    fn add(self, rhs: &IntPolyK) -> IntPolyK {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *c += d;
        }
        IntPolyK::new(coeffs)
    }
}

impl<'a> Sub<&'a IntPolyK> for &'a IntPolyK {
    type Output = IntPolyK;
    fn sub(self, rhs: &IntPolyK) -> IntPolyK {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, d) in coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *c -= d;
        }
        IntPolyK::new(coeffs)
    }
}

impl<'a> Mul<&'a IntPolyK> for &'a IntPolyK {
    type Output = IntPolyK;
    fn mul(self, rhs: &IntPolyK) -> IntPolyK {
        if self.is_zero() || rhs.is_zero() {
            return IntPolyK::zero();
        }
        if rhs.is_constant() {
            return self.scale(&rhs.coeffs[0]);
        }
        if self.is_constant() {
            return rhs.scale(&self.coeffs[0]);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolyK::new(coeffs)
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &IntPolyK) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    let mut first = true;
    for (i, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { "-" } else { "+" })?;
        }
        first = false;
        match i {
            0 => write!(f, "{abs}")?,
            _ => {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                if i == 1 {
                    f.write_str("k")?;
                } else {
                    write!(f, "k^{i}")?;
                }
            }
        }
    }
    Ok(())
}

impl fmt::Display for IntPolyK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self)
    }
}

/// An element of `Q(k)` in canonical form.
///
/// `num` and `den` share no common factor in `Z[k]` (integer content
/// included), `den` has a positive leading coefficient, and zero is `0/1`.
/// Equal values therefore have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatK {
    num: IntPolyK,
    den: IntPolyK,
}

impl Default for RatK {
    fn default() -> Self {
        RatK::zero()
    }
}

impl RatK {
    /// Reduces `num/den` to canonical form.
    pub fn new(num: IntPolyK, den: IntPolyK) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: IntPolyK, den: IntPolyK) -> Self {
        if num.is_zero() {
            return RatK::zero();
        }
        if den.is_one() {
            return RatK { num, den };
        }
        let g = IntPolyK::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        if den.lc().is_some_and(Signed::is_negative) {
            num = num.neg();
            den = den.neg();
        }
        RatK { num, den }
    }

    pub fn zero() -> Self {
        RatK {
            num: IntPolyK::zero(),
            den: IntPolyK::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(IntPolyK::constant(BigInt::from(c)))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::from_poly(IntPolyK::constant(c))
    }

    pub fn from_poly(p: IntPolyK) -> Self {
        RatK {
            num: p,
            den: IntPolyK::one(),
        }
    }

    pub fn from_ratio(p: i64, q: i64) -> Result<Self> {
        Self::new(IntPolyK::from_i64s(&[p]), IntPolyK::from_i64s(&[q]))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::normalized(
            IntPolyK::constant(q.numer().clone()),
            IntPolyK::constant(q.denom().clone()),
        )
    }

    /// The parameter `k` itself.
    pub fn k() -> Self {
        Self::k_pow(1)
    }

    /// `k^e` for any integer `e`.
    pub fn k_pow(e: i32) -> Self {
        let m = IntPolyK::monomial(BigInt::one(), e.unsigned_abs() as usize);
        if e >= 0 {
            Self::from_poly(m)
        } else {
            RatK {
                num: IntPolyK::one(),
                den: m,
            }
        }
    }

    pub fn num(&self) -> &IntPolyK {
        &self.num
    }

    pub fn den(&self) -> &IntPolyK {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on `k`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The rational value of a constant element.
    pub fn to_rational(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        let n = self.num.coeffs.first().cloned().unwrap_or_default();
        Some(BigRational::new(n, self.den.coeffs[0].clone()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatK) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self * &RatK::from_int(c)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatK::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact value at `k = k0`.
    pub fn eval(&self, k0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(k0);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(k0) / d)
    }

    /// Rough size measure used to pick elimination pivots.
    pub fn weight(&self) -> usize {
        let bits = |p: &IntPolyK| {
            p.coeffs
                .iter()
                .map(|c| c.bits() as usize + 1)
                .sum::<usize>()
        };
        bits(&self.num) + bits(&self.den) + 8 * (self.num.coeffs.len() + self.den.coeffs.len())
    }
}

impl<'a> Add<&'a RatK> for &'a RatK {
    type Output = RatK;
    fn add(self, rhs: &RatK) -> RatK {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return RatK::normalized(num, self.den.clone());
        }
        if self.den.is_one() {
            let num = &(&self.num * &rhs.den) + &rhs.num;
            return RatK {
                num,
                den: rhs.den.clone(),
            }
            .fix_zero();
        }
        if rhs.den.is_one() {
            let num = &self.num + &(&rhs.num * &self.den);
            return RatK {
                num,
                den: self.den.clone(),
            }
            .fix_zero();
        }
        let g = IntPolyK::gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatK {
                num,
                den: &self.den * &rhs.den,
            }
            .fix_zero();
        }
        let b1 = self.den.div_exact(&g);
        let d1 = rhs.den.div_exact(&g);
        let t = &(&self.num * &d1) + &(&rhs.num * &b1);
        if t.is_zero() {
            return RatK::zero();
        }
        let g2 = IntPolyK::gcd(&t, &g);
        let num = t.div_exact(&g2);
        let den = &b1 * &rhs.den.div_exact(&g2);
        RatK { num, den }.fix_sign()
    }
}

impl RatK {
    fn fix_zero(self) -> RatK {
        if self.num.is_zero() {
            RatK::zero()
        } else {
            self
        }
    }

    fn fix_sign(self) -> RatK {
        if self.den.lc().is_some_and(Signed::is_negative) {
            RatK {
                num: self.num.neg(),
                den: self.den.neg(),
            }
        } else {
            self
        }
    }
}

impl Neg for &RatK {
    type Output = RatK;
    fn neg(self) -> RatK {
        RatK {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for RatK {
    type Output = RatK;
    fn neg(self) -> RatK {
        RatK {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl<'a> Sub<&'a RatK> for &'a RatK {
    type Output = RatK;
    fn sub(self, rhs: &RatK) -> RatK {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatK> for &'a RatK {
    type Output = RatK;
    fn mul(self, rhs: &RatK) -> RatK {
        if self.is_zero() || rhs.is_zero() {
            return RatK::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatK {
                num: &self.num * &rhs.num,
                den: IntPolyK::one(),
            };
        }
        let g1 = IntPolyK::gcd(&self.num, &rhs.den);
        let g2 = IntPolyK::gcd(&rhs.num, &self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_exact(&g1), rhs.den.div_exact(&g1))
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        RatK {
            num: &a * &c,
            den: &b * &d,
        }
        .fix_sign()
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatK> for RatK {
            type Output = RatK;
            fn $m(self, rhs: RatK) -> RatK { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a RatK> for RatK {
            type Output = RatK;
            fn $m(self, rhs: &RatK) -> RatK { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl From<i64> for RatK {
    fn from(c: i64) -> Self {
        RatK::from_int(c)
    }
}

impl fmt::Display for RatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write_poly(f, &self.num)
        } else {
            f.write_str("(")?;
            write_poly(f, &self.num)?;
            f.write_str(")/(")?;
            write_poly(f, &self.den)?;
            f.write_str(")")
        }
    }
}

impl FromStr for RatK {
    type Err = Error;

    /// Parses arithmetic expressions in `k` built from integers, `+ - * /`,
    /// integer powers `^` and parentheses, e.g. `(k^2-1)/(2*k)`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = ExprParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(alloc::format!(
            "{what} at byte {} of {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatK> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatK> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let t = self.unary()?;
            acc = if c == b'*' {
                &acc * &t
            } else {
                acc.checked_div(&t)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatK> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatK> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: i32 = i32::try_from(&e).map_err(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits =
            core::str::from_utf8(&self.src[start..self.pos]).map_err(|_| self.err("bad digits"))?;
        BigInt::from_str(digits).map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<RatK> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'k') => {
                self.pos += 1;
                Ok(RatK::k())
            }
            Some(c) if c.is_ascii_digit() => Ok(RatK::from_bigint(self.integer()?)),
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// Orders elements by numeric value at a sample point; only used for display sorting.
pub fn cmp_at(a: &RatK, b: &RatK, k0: &BigRational) -> Option<Ordering> {
    Some(a.eval(k0).ok()?.cmp(&b.eval(k0).ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(c: &[i64]) -> IntPolyK {
        IntPolyK::from_i64s(c)
    }

    fn q(s: &str) -> RatK {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let r = RatK::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(r, RatK::from_poly(p(&[1, 1])));
    }

    #[test]
    fn normalize_zero_numerator() {
        let r = RatK::new(p(&[]), p(&[0, 3])).unwrap();
        assert!(r.is_zero());
        assert!(r.den().is_one());
    }

    #[test]
    fn normalize_reduces_content() {
        let r = RatK::new(p(&[0, 2]), p(&[4])).unwrap();
        assert_eq!(r.num(), &p(&[0, 1]));
        assert_eq!(r.den(), &p(&[2]));
        assert_eq!(r.to_string(), "(k)/(2)");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatK::new(p(&[1]), p(&[])), Err(Error::DivisionByZero));
        assert!(RatK::one().checked_div(&RatK::zero()).is_err());
    }

    #[test]
    fn negative_denominator_flipped() {
        let r = RatK::new(p(&[1]), p(&[0, -1])).unwrap();
        assert_eq!(r.den(), &p(&[0, 1]));
        assert_eq!(r.num(), &p(&[-1]));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(q("k+1") * q("k-1"), q("k^2-1"));
        assert_eq!(q("1/(1+k)") + q("k/(1+k)"), RatK::one());
        assert_eq!(RatK::k() * RatK::k_pow(-1), RatK::one());
        assert_eq!(q("1/k") - q("1/k"), RatK::zero());
        assert_eq!(q("(k^2-1)/(k-1)"), q("k+1"));
    }

    #[test]
    fn eval_examples() {
        let three = BigRational::from_integer(3.into());
        assert_eq!(
            q("(k^2-1)/(k-1)").eval(&three).unwrap(),
            BigRational::from_integer(4.into())
        );
        let half7 = BigRational::new(7.into(), 2.into());
        assert_eq!(
            q("k/2").eval(&half7).unwrap(),
            BigRational::new(7.into(), 4.into())
        );
        let m1 = BigRational::from_integer((-1).into());
        assert_eq!(q("1/(k+1)").eval(&m1), Err(Error::Pole));
    }

    #[test]
    fn gcd_with_content_and_k_powers() {
        let a = p(&[0, 0, 6, 6]); // 6k^2(k+1)
        let b = p(&[0, 4, 4]); // 4k(k+1)
        assert_eq!(IntPolyK::gcd(&a, &b), p(&[0, 2, 2]));
        let c = p(&[3, 2, 1]);
        let d = p(&[1, 1]);
        assert!(IntPolyK::gcd(&c, &d).is_one());
    }

    #[test]
    fn render_and_parse_roundtrip() {
        for s in [
            "0",
            "1",
            "-k",
            "2*k^2-k+1",
            "(k+1)/(2*k)",
            "(-3*k^5+7)/(k^2+k)",
        ] {
            let v = q(s);
            assert_eq!(q(&v.to_string()), v, "{s}");
        }
        assert_eq!(q("(k+1)/(2*k)").to_string(), "(k+1)/(2*k)");
        assert_eq!(q("k^-2"), RatK::k_pow(-2));
        assert!("(k+".parse::<RatK>().is_err());
    }
}
