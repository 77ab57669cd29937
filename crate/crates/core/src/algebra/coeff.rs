//! Scalars: exact elements of Q(i)[sqrt d] or complex doubles.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Gaussian rational `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gauss {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gauss {
    pub fn zero() -> Self {
        Gauss { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn real(re: BigRational) -> Self {
        Gauss { re, im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn neg(&self) -> Gauss {
        Gauss { re: -&self.re, im: -&self.im }
    }

    fn mul(&self, o: &Gauss) -> Gauss {
        if self.is_zero() || o.is_zero() {
            return Gauss::zero();
        }
        if self.im.is_zero() && o.im.is_zero() {
            return Gauss::real(&self.re * &o.re);
        }
        if self.im.is_zero() {
            return Gauss { re: &self.re * &o.re, im: &self.re * &o.im };
        }
        if o.im.is_zero() {
            return Gauss { re: &self.re * &o.re, im: &self.im * &o.re };
        }
        Gauss {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn scale_int(&self, k: u32) -> Gauss {
        let k = BigRational::from_integer(BigInt::from(k));
        Gauss { re: &self.re * &k, im: &self.im * &k }
    }

    fn conj(&self) -> Gauss {
        Gauss { re: self.re.clone(), im: -&self.im }
    }

    fn norm2(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn inv(&self) -> Gauss {
        let n = self.norm2();
        Gauss { re: &self.re / &n, im: -&self.im / &n }
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // huge numerator and denominator: shift both down before converting
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 900).max(0) as usize;
    let shift_d = (db - 900).max(0) as usize;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(f64::NAN);
    n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
}

/// `a + b*sqrt(d)` with `a, b` Gaussian rationals. `d == 0` means no radical.
#[derive(Clone, Debug)]
pub struct Surd {
    pub a: Gauss,
    pub b: Gauss,
    pub d: u32,
}

impl Surd {
    fn radicand(&self, o: &Surd) -> u32 {
        match (self.b.is_zero(), o.b.is_zero()) {
            (true, true) => 0,
            (false, true) => self.d,
            (true, false) => o.d,
            (false, false) => {
                assert_eq!(self.d, o.d, "mixed radicands sqrt{} and sqrt{}", self.d, o.d);
                self.d
            }
        }
    }

    fn norm(self) -> Surd {
        if self.b.is_zero() {
            Surd { a: self.a, b: self.b, d: 0 }
        } else {
            self
        }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn dval(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.d))
    }

    fn to_c64(&self) -> Complex64 {
        let a = self.a.to_c64();
        if self.b.is_zero() {
            a
        } else {
            a + self.b.to_c64() * (self.d as f64).sqrt()
        }
    }
}

impl PartialEq for Surd {
    fn eq(&self, o: &Surd) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

/// A scalar of the coefficient field.
#[derive(Clone, Debug)]
pub enum Coeff {
    Exact(Surd),
    Float(Complex64),
}

/// Evaluation mode of a session.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// Session configuration of the coefficient field: the mode and the optional radicand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldConfig {
    pub mode: Mode,
    pub d: Option<u32>,
}

impl FieldConfig {
    pub fn new(mode: Mode, d: Option<u32>) -> Result<Self, AlgebraError> {
        if let Some(d) = d {
            if d < 2 || !is_squarefree(d) {
                return Err(AlgebraError::BadRadicand(d));
            }
        }
        Ok(FieldConfig { mode, d })
    }

    /// Checks that `c` lives in the configured field.
    pub fn admits(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Float(_) => self.mode == Mode::Float,
            Coeff::Exact(s) => s.b.is_zero() || Some(s.d) == self.d,
        }
    }

    /// Converts `c` to the configured mode.
    pub fn coerce(&self, c: &Coeff) -> Coeff {
        match self.mode {
            Mode::Exact => c.clone(),
            Mode::Float => Coeff::Float(c.to_c64()),
        }
    }
}

pub fn is_squarefree(d: u32) -> bool {
    let mut p = 2u32;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Coeff {
    pub fn zero() -> Coeff {
        Coeff::Exact(Surd { a: Gauss::zero(), b: Gauss::zero(), d: 0 })
    }

    pub fn one() -> Coeff {
        Coeff::int(1)
    }

    pub fn i() -> Coeff {
        Coeff::gauss(rat(0, 1), rat(1, 1))
    }

    pub fn int(n: i64) -> Coeff {
        Coeff::rational(rat(n, 1))
    }

    pub fn ratio(n: i64, d: i64) -> Coeff {
        Coeff::rational(rat(n, d))
    }

    pub fn rational(r: BigRational) -> Coeff {
        Coeff::gauss(r, BigRational::zero())
    }

    pub fn gauss(re: BigRational, im: BigRational) -> Coeff {
        Coeff::Exact(Surd { a: Gauss { re, im }, b: Gauss::zero(), d: 0 })
    }

    /// `sqrt(d)` for a square-free `d >= 2`.
    pub fn sqrt(d: u32) -> Coeff {
        assert!(d >= 2 && is_squarefree(d), "radicand must be square-free and > 1");
        Coeff::Exact(Surd { a: Gauss::zero(), b: Gauss::real(rat(1, 1)), d })
    }

    pub fn float(re: f64, im: f64) -> Coeff {
        Coeff::Float(Complex64::new(re, im))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coeff::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Exact(s) => s.is_zero(),
            Coeff::Float(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Exact(s) => s.b.is_zero() && s.a.im.is_zero() && s.a.re.is_one(),
            Coeff::Float(c) => c.re == 1.0 && c.im == 0.0,
        }
    }

    /// The radicand in use, if the element has a nonzero radical part.
    pub fn radicand(&self) -> Option<u32> {
        match self {
            Coeff::Exact(s) if !s.b.is_zero() => Some(s.d),
            _ => None,
        }
    }

    /// Exact element of Q (no imaginary or radical part).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Coeff::Exact(s) if s.b.is_zero() && s.a.im.is_zero() => Some(s.a.re.clone()),
            _ => None,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Coeff::Exact(s) => s.to_c64(),
            Coeff::Float(c) => *c,
        }
    }

    pub fn abs(&self) -> f64 {
        self.to_c64().norm()
    }

    pub fn conj(&self) -> Coeff {
        match self {
            Coeff::Exact(s) => Coeff::Exact(Surd { a: s.a.conj(), b: s.b.conj(), d: s.d }),
            Coeff::Float(c) => Coeff::Float(c.conj()),
        }
    }

    pub fn re(&self) -> Coeff {
        (self + &self.conj()) * &Coeff::ratio(1, 2)
    }

    pub fn im(&self) -> Coeff {
        (self - &self.conj()) * &Coeff::gauss(rat(0, 1), rat(-1, 2))
    }

    pub fn scale_int(&self, k: u32) -> Coeff {
        match self {
            Coeff::Exact(s) => Coeff::Exact(Surd { a: s.a.scale_int(k), b: s.b.scale_int(k), d: s.d }),
            Coeff::Float(c) => Coeff::Float(c * k as f64),
        }
    }

    pub fn inv(&self) -> Result<Coeff, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            Coeff::Float(c) => Coeff::Float(c.inv()),
            Coeff::Exact(s) => {
                if s.b.is_zero() {
                    Coeff::Exact(Surd { a: s.a.inv(), b: Gauss::zero(), d: 0 })
                } else {
                    // (a - b r)/(a^2 - d b^2)
                    let dd = Gauss::real(s.dval());
                    let den = s.a.mul(&s.a).sub(&dd.mul(&s.b.mul(&s.b)));
                    let di = den.inv();
                    Coeff::Exact(Surd { a: s.a.mul(&di), b: s.b.neg().mul(&di), d: s.d }.norm())
                }
            }
        })
    }

    pub fn pow(&self, k: u32) -> Coeff {
        let mut acc = Coeff::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Converts to float mode.
    pub fn to_float(&self) -> Coeff {
        Coeff::Float(self.to_c64())
    }

    /// Equality; float values compare within `tol` (absolute).
    pub fn approx_eq(&self, o: &Coeff, tol: f64) -> bool {
        match (self, o) {
            (Coeff::Exact(a), Coeff::Exact(b)) => a == b,
            _ => (self.to_c64() - o.to_c64()).norm() <= tol,
        }
    }

    /// Parses strings such as `-1/4`, `i/6`, `sqrt30/2`, `1/2+3/4*i-2*i*sqrt30`, `2.5e-3`.
    pub fn parse(s: &str) -> Result<Coeff, AlgebraError> {
        parse::parse_coeff(s)
    }
}

impl PartialEq for Coeff {
    fn eq(&self, o: &Coeff) -> bool {
        match (self, o) {
            (Coeff::Exact(a), Coeff::Exact(b)) => a == b,
            (Coeff::Float(a), Coeff::Float(b)) => a == b,
            _ => false,
        }
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::zero()
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Coeff {
        Coeff::int(n)
    }
}

impl From<Complex64> for Coeff {
    fn from(c: Complex64) -> Coeff {
        Coeff::Float(c)
    }
}

fn exact_add(x: &Surd, y: &Surd) -> Surd {
    let d = x.radicand(y);
    let b = if d == 0 { Gauss::zero() } else { x.b.add(&y.b) };
    Surd { a: x.a.add(&y.a), b, d }.norm()
}

fn exact_mul(x: &Surd, y: &Surd) -> Surd {
    if x.b.is_zero() && y.b.is_zero() {
        return Surd { a: x.a.mul(&y.a), b: Gauss::zero(), d: 0 };
    }
    let d = x.radicand(y);
    let dd = Gauss::real(BigRational::from_integer(BigInt::from(d)));
    let a = x.a.mul(&y.a).add(&dd.mul(&x.b.mul(&y.b)));
    let b = x.a.mul(&y.b).add(&x.b.mul(&y.a));
    Surd { a, b, d }.norm()
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Exact(x), Coeff::Exact(y)) => {
                if x.is_zero() {
                    return o.clone();
                }
                if y.is_zero() {
                    return self.clone();
                }
                Coeff::Exact(exact_add(x, y))
            }
            _ => Coeff::Float(self.to_c64() + o.to_c64()),
        }
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Exact(x), Coeff::Exact(y)) => {
                if x.is_zero() || y.is_zero() {
                    return Coeff::zero();
                }
                Coeff::Exact(exact_mul(x, y))
            }
            _ => Coeff::Float(self.to_c64() * o.to_c64()),
        }
    }
}

impl<'a> Div<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn div(self, o: &Coeff) -> Coeff {
        self * &o.inv().expect("division by zero coefficient")
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Exact(s) => Coeff::Exact(Surd { a: s.a.neg(), b: s.b.neg(), d: s.d }),
            Coeff::Float(c) => Coeff::Float(-c),
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr<Coeff> for Coeff {
            type Output = Coeff;
            fn $m(self, o: Coeff) -> Coeff {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Coeff> for Coeff {
            type Output = Coeff;
            fn $m(self, o: &Coeff) -> Coeff {
                (&self).$m(o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, o: &Coeff) {
        *self = &*self + o;
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, o: &Coeff) {
        *self = &*self - o;
    }
}

impl MulAssign<&Coeff> for Coeff {
    fn mul_assign(&mut self, o: &Coeff) {
        *self = &*self * o;
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Float(c) => {
                if c.im == 0.0 {
                    write!(f, "{:e}", c.re)
                } else {
                    write!(f, "{:e}{:+e}*i", c.re, c.im)
                }
            }
            Coeff::Exact(s) => {
                let mut parts: Vec<(BigRational, &str)> = Vec::new();
                let root = format!("sqrt{}", s.d);
                parts.push((s.a.re.clone(), ""));
                parts.push((s.a.im.clone(), "i"));
                let mut out = String::new();
                let mut push = |r: &BigRational, tag: &str| {
                    if r.is_zero() {
                        return;
                    }
                    let neg = r.is_negative();
                    let mag = r.abs();
                    if !out.is_empty() || neg {
                        out.push(if neg { '-' } else { '+' });
                    }
                    if tag.is_empty() {
                        out.push_str(&fmt_rat(&mag));
                    } else if mag.is_one() {
                        out.push_str(tag);
                    } else {
                        out.push_str(&fmt_rat(&mag));
                        out.push('*');
                        out.push_str(tag);
                    }
                };
                for (r, t) in &parts {
                    push(r, t);
                }
                if !s.b.is_zero() {
                    push(&s.b.re, &root);
                    let t = format!("i*{}", root);
                    push(&s.b.im, &t);
                }
                if out.is_empty() {
                    out.push('0');
                }
                f.write_str(&out)
            }
        }
    }
}

mod parse {
    use super::*;

    struct Lexer<'a> {
        s: &'a [u8],
        pos: usize,
    }

    impl<'a> Lexer<'a> {
        fn peek(&self) -> Option<u8> {
            self.s.get(self.pos).copied()
        }

        fn uint(&mut self) -> Option<BigInt> {
            let start = self.pos;
            while matches!(self.peek(), Some(b'0'..=b'9')) {
                self.pos += 1;
            }
            if start == self.pos {
                return None;
            }
            std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
        }
    }

    fn err(s: &str) -> AlgebraError {
        AlgebraError::Parse(s.to_string())
    }

    /// factor := uint ['/' uint] | 'i' | 'sqrt' uint
    fn factor(lx: &mut Lexer, src: &str) -> Result<Coeff, AlgebraError> {
        match lx.peek() {
            Some(b'i') => {
                lx.pos += 1;
                Ok(Coeff::i())
            }
            Some(b's') => {
                if !lx.s[lx.pos..].starts_with(b"sqrt") {
                    return Err(err(src));
                }
                lx.pos += 4;
                let d = lx.uint().ok_or_else(|| err(src))?;
                let d: u32 = d.try_into().map_err(|_| err(src))?;
                if d < 2 || !is_squarefree(d) {
                    return Err(AlgebraError::BadRadicand(d));
                }
                Ok(Coeff::sqrt(d))
            }
            Some(b'0'..=b'9') => {
                let n = lx.uint().ok_or_else(|| err(src))?;
                let mut r = BigRational::from_integer(n);
                if lx.peek() == Some(b'/') && matches!(lx.s.get(lx.pos + 1), Some(b'0'..=b'9')) {
                    lx.pos += 1;
                    let d = lx.uint().ok_or_else(|| err(src))?;
                    if d.is_zero() {
                        return Err(err(src));
                    }
                    r /= BigRational::from_integer(d);
                }
                Ok(Coeff::rational(r))
            }
            _ => Err(err(src)),
        }
    }

    pub fn parse_coeff(src: &str) -> Result<Coeff, AlgebraError> {
        let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err(src));
        }
        if cleaned.contains('.') || cleaned.contains('e') && !cleaned.contains("sqrt") {
            return parse_float(&cleaned).ok_or_else(|| err(src));
        }
        let mut lx = Lexer { s: cleaned.as_bytes(), pos: 0 };
        let mut total = Coeff::zero();
        let mut first = true;
        while lx.pos < lx.s.len() {
            let mut sign = 1i64;
            match lx.peek() {
                Some(b'+') => lx.pos += 1,
                Some(b'-') => {
                    sign = -1;
                    lx.pos += 1
                }
                _ if !first => return Err(err(src)),
                _ => {}
            }
            first = false;
            let mut term = factor(&mut lx, src)?;
            loop {
                match lx.peek() {
                    Some(b'*') => {
                        lx.pos += 1;
                        term = &term * &factor(&mut lx, src)?;
                    }
                    Some(b'/') => {
                        lx.pos += 1;
                        let d = lx.uint().ok_or_else(|| err(src))?;
                        if d.is_zero() {
                            return Err(err(src));
                        }
                        term = &term * &Coeff::rational(BigRational::new(BigInt::one(), d));
                    }
                    // juxtaposition such as 2i or 3sqrt5
                    Some(b'i') | Some(b's') => {
                        term = &term * &factor(&mut lx, src)?;
                    }
                    _ => break,
                }
            }
            total = &total + &(&term * &Coeff::int(sign));
        }
        Ok(total)
    }

    fn parse_float(s: &str) -> Option<Coeff> {
        if let Some(body) = s.strip_suffix("*i").or_else(|| s.strip_suffix('i')) {
            // a+bi form: split at the last sign that is not part of an exponent
            let bytes = body.as_bytes();
            let mut split = None;
            for k in (1..bytes.len()).rev() {
                if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'e' {
                    split = Some(k);
                    break;
                }
            }
            return match split {
                Some(k) => Some(Coeff::float(body[..k].parse().ok()?, body[k..].parse().ok()?)),
                None => Some(Coeff::float(0.0, body.parse().ok()?)),
            };
        }
        Some(Coeff::float(s.parse().ok()?, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(Coeff::parse("-1/4").unwrap(), Coeff::ratio(-1, 4));
        assert_eq!(Coeff::parse("i/6").unwrap(), &Coeff::i() * &Coeff::ratio(1, 6));
        let s = Coeff::parse("sqrt30/2").unwrap();
        assert_eq!(&s * &s, Coeff::ratio(15, 2));
        assert_eq!(Coeff::parse("2i").unwrap(), &Coeff::i() * &Coeff::int(2));
        assert!(Coeff::parse("sqrt4").is_err());
        assert!(Coeff::parse("1/0").is_err());
        assert!(Coeff::parse("").is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "-1/4", "i", "-3/7*i", "1/2+3/4*i-2*sqrt30+i*sqrt30", "sqrt30/2"] {
            let c = Coeff::parse(s).unwrap();
            let back = Coeff::parse(&c.to_string()).unwrap();
            assert_eq!(c, back, "{s}");
        }
    }

    #[test]
    fn surd_inverse() {
        let x = Coeff::parse("1/2+i+3*sqrt30").unwrap();
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn float_parse() {
        let c = Coeff::parse("1.5-2.5e-1i").unwrap();
        assert!(c.approx_eq(&Coeff::float(1.5, -0.25), 1e-15));
    }
}
