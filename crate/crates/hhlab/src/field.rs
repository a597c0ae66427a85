//! Exact coefficient fields: rationals, prime fields F_p, cyclotomic fields
//! Q(zeta_d) realized as residues modulo the d-th cyclotomic polynomial, and
//! the univariate rational function field Q(t).

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use once_cell::sync::Lazy;

use crate::Error;

/// Which of the four supported coefficient fields is active.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
    Cyclotomic(u32),
    RationalFunctions,
}

impl FieldSpec {
    pub fn validate(&self) -> Result<(), Error> {
        match *self {
            FieldSpec::PrimeField(p) => {
                if !is_prime(p) {
                    return Err(Error::new(format!("{p} is not prime")));
                }
            }
            FieldSpec::Cyclotomic(d) => {
                if d == 0 {
                    return Err(Error::new("cyclotomic order must be >= 1"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::PrimeField(p) => p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::PrimeField(p) => Scalar::Prime { p, val: 0 },
            FieldSpec::Cyclotomic(d) => Scalar::Cyclotomic { d, coeffs: Vec::new() },
            FieldSpec::RationalFunctions => Scalar::Function {
                num: Poly::zero(),
                den: Poly::one(),
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from(BigInt::from(v))),
            FieldSpec::PrimeField(p) => Scalar::Prime {
                p,
                val: v.rem_euclid(p as i64) as u64,
            },
            FieldSpec::Cyclotomic(d) => {
                let mut coeffs = vec![BigRational::from(BigInt::from(v))];
                reduce_cyclotomic(d, &mut coeffs);
                Scalar::Cyclotomic { d, coeffs }
            }
            FieldSpec::RationalFunctions => Scalar::Function {
                num: Poly::constant(BigRational::from(BigInt::from(v))),
                den: Poly::one(),
            },
        }
    }

    /// The distinguished generator: `t` for rational functions, a primitive
    /// d-th root of unity for cyclotomic fields.
    pub fn generator(&self) -> Result<Scalar, Error> {
        match *self {
            FieldSpec::Cyclotomic(d) => {
                let mut coeffs = vec![BigRational::zero(), BigRational::one()];
                reduce_cyclotomic(d, &mut coeffs);
                Ok(Scalar::Cyclotomic { d, coeffs })
            }
            FieldSpec::RationalFunctions => Ok(Scalar::Function {
                num: Poly::var(),
                den: Poly::one(),
            }),
            _ => Err(Error::new("field has no distinguished generator")),
        }
    }

    /// Parse a field description like `Q`, `F5`, `C4`, or `Qt`.
    pub fn parse(text: &str) -> Result<FieldSpec, Error> {
        let s = text.trim();
        let spec = match s {
            "Q" | "q" | "rationals" => FieldSpec::Rationals,
            "Qt" | "Q(t)" | "q(t)" | "rational_functions" => FieldSpec::RationalFunctions,
            _ => {
                if let Some(rest) = s
                    .strip_prefix('F')
                    .or_else(|| s.strip_prefix('f'))
                    .or_else(|| s.strip_prefix("prime"))
                    .or_else(|| s.strip_prefix("prime_field"))
                {
                    let p: u64 = rest
                        .trim_matches(|c| c == '(' || c == ')')
                        .parse()
                        .map_err(|_| Error::new(format!("bad prime field spec `{s}`")))?;
                    FieldSpec::PrimeField(p)
                } else if let Some(rest) = s
                    .strip_prefix('C')
                    .or_else(|| s.strip_prefix('c'))
                    .or_else(|| s.strip_prefix("cyclotomic"))
                {
                    let d: u32 = rest
                        .trim_matches(|c| c == '(' || c == ')')
                        .parse()
                        .map_err(|_| Error::new(format!("bad cyclotomic field spec `{s}`")))?;
                    FieldSpec::Cyclotomic(d)
                } else {
                    return Err(Error::new(format!("unknown field spec `{s}`")));
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Parse one scalar string in this field (the serialization format used
    /// everywhere in reports and config files).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, Error> {
        parse_scalar(*self, text)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
            FieldSpec::Cyclotomic(d) => write!(f, "C{d}"),
            FieldSpec::RationalFunctions => write!(f, "Q(t)"),
        }
    }
}

/// An element of one of the four fields, in canonical form: reduced fraction,
/// residue, polynomial residue of degree < phi(d), or reduced polynomial
/// fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Prime { p: u64, val: u64 },
    Cyclotomic { d: u32, coeffs: Vec<BigRational> },
    Function { num: Poly, den: Poly },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Prime { p, .. } => FieldSpec::PrimeField(*p),
            Scalar::Cyclotomic { d, .. } => FieldSpec::Cyclotomic(*d),
            Scalar::Function { .. } => FieldSpec::RationalFunctions,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { val, .. } => *val == 0,
            Scalar::Cyclotomic { coeffs, .. } => coeffs.is_empty(),
            Scalar::Function { num, .. } => num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field().one()
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { p, val: a }, Scalar::Prime { p: q, val: b }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Prime { p: *p, val: (a + b) % p }
            }
            (Scalar::Cyclotomic { d, coeffs: a }, Scalar::Cyclotomic { d: d2, coeffs: b }) => {
                assert_eq!(d, d2, "mixed cyclotomic fields");
                let mut coeffs = poly_add(a, b);
                reduce_cyclotomic(*d, &mut coeffs);
                Scalar::Cyclotomic { d: *d, coeffs }
            }
            (Scalar::Function { num: n1, den: d1 }, Scalar::Function { num: n2, den: d2 }) => {
                let num = n1.mul(d2).add(&n2.mul(d1));
                let den = d1.mul(d2);
                make_function(num, den)
            }
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { p, val } => Scalar::Prime {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
            Scalar::Cyclotomic { d, coeffs } => Scalar::Cyclotomic {
                d: *d,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
            Scalar::Function { num, den } => Scalar::Function {
                num: num.neg(),
                den: den.clone(),
            },
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { p, val: a }, Scalar::Prime { p: q, val: b }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Prime {
                    p: *p,
                    val: ((*a as u128 * *b as u128) % *p as u128) as u64,
                }
            }
            (Scalar::Cyclotomic { d, coeffs: a }, Scalar::Cyclotomic { d: d2, coeffs: b }) => {
                assert_eq!(d, d2, "mixed cyclotomic fields");
                let mut coeffs = poly_mul(a, b);
                reduce_cyclotomic(*d, &mut coeffs);
                Scalar::Cyclotomic { d: *d, coeffs }
            }
            (Scalar::Function { num: n1, den: d1 }, Scalar::Function { num: n2, den: d2 }) => {
                make_function(n1.mul(n2), d1.mul(d2))
            }
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }

    pub fn inv(&self) -> Result<Scalar, Error> {
        if self.is_zero() {
            return Err(Error::new("division by zero"));
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Prime { p, val } => Scalar::Prime {
                p: *p,
                val: mod_pow(*val, *p - 2, *p),
            },
            Scalar::Cyclotomic { d, coeffs } => {
                // extended Euclid against Phi_d
                let modulus = cyclotomic_polynomial(*d);
                let a = Poly::new(coeffs.clone());
                let (g, s) = poly_half_ext_gcd(&a, &modulus);
                debug_assert_eq!(g.degree(), Some(0));
                let ginv = g.coeffs()[0].recip();
                let mut out = s.mul(&Poly::constant(ginv)).coeffs().to_vec();
                reduce_cyclotomic(*d, &mut out);
                Scalar::Cyclotomic { d: *d, coeffs: out }
            }
            Scalar::Function { num, den } => make_function(den.clone(), num.clone()),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, Error> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, exp: i64) -> Result<Scalar, Error> {
        if exp < 0 {
            return self.inv()?.pow(-exp);
        }
        let mut result = self.field().one();
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(result)
    }

    /// Least d >= 1 with self^d = 1, or `None` when no such d exists.
    pub fn order(&self) -> Result<Option<u64>, Error> {
        if self.is_zero() {
            return Err(Error::new("order of zero is undefined"));
        }
        match self {
            Scalar::Rational(r) => Ok(order_of_rational(r)),
            Scalar::Function { num, den } => {
                if den.degree() == Some(0) && num.degree() <= Some(0) {
                    // constant; den is monic so equals 1
                    Ok(order_of_rational(&num.coeffs()[0]))
                } else {
                    Ok(None)
                }
            }
            Scalar::Cyclotomic { d, .. } => {
                // roots of unity in Q(zeta_d) have order dividing lcm(2, d)
                let bound = if d % 2 == 0 { *d as u64 } else { 2 * *d as u64 };
                let mut divisors: Vec<u64> = (1..=bound).filter(|e| bound % e == 0).collect();
                divisors.sort_unstable();
                for e in divisors {
                    if self.pow(e as i64)?.is_one() {
                        return Ok(Some(e));
                    }
                }
                Ok(None)
            }
            Scalar::Prime { p, .. } => {
                // order divides p - 1
                let mut o = *p - 1;
                for (f, _) in factorize(*p - 1) {
                    while o % f == 0 && self.pow((o / f) as i64)?.is_one() {
                        o /= f;
                    }
                }
                debug_assert!(self.pow(o as i64)?.is_one());
                Ok(Some(o))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Prime { p, val } => write!(f, "{val} mod {p}"),
            Scalar::Cyclotomic { coeffs, .. } => {
                write!(f, "{}", poly_string(coeffs, 'z'))
            }
            Scalar::Function { num, den } => {
                if den.degree() == Some(0) {
                    write!(f, "{}", poly_string(num.coeffs(), 't'))
                } else {
                    write!(
                        f,
                        "({})/({})",
                        poly_string(num.coeffs(), 't'),
                        poly_string(den.coeffs(), 't')
                    )
                }
            }
        }
    }
}

fn order_of_rational(r: &BigRational) -> Option<u64> {
    if r.is_one() {
        Some(1)
    } else if (-r).is_one() {
        Some(2)
    } else {
        None
    }
}

/// A univariate polynomial over Q, coefficients ascending, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Poly {
        Poly::new(vec![c])
    }

    pub fn var() -> Poly {
        Poly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        Poly::new(poly_add(&self.coeffs, &other.coeffs))
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        Poly::new(poly_mul(&self.coeffs, &other.coeffs))
    }

    /// Quotient and remainder; panics on zero divisor.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            if !c.is_zero() {
                for (idx, dc) in divisor.coeffs.iter().enumerate() {
                    let v = &rem[k + idx] - &(&c * dc);
                    rem[k + idx] = v;
                }
                quot[k] = c;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = l.recip();
                Poly {
                    coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
                }
            }
        }
    }
}

fn poly_add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(x + y);
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let v = &out[i + j] + &(x * y);
            out[i + j] = v;
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Returns (g, s) with s*a = g mod m and g = gcd(a, m).
fn poly_half_ext_gcd(a: &Poly, m: &Poly) -> (Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), m.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let s = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    (r0, s0)
}

fn make_function(num: Poly, den: Poly) -> Scalar {
    assert!(!den.is_zero(), "zero denominator in rational function");
    if num.is_zero() {
        return Scalar::Function {
            num: Poly::zero(),
            den: Poly::one(),
        };
    }
    let g = num.gcd(&den);
    let (num, _) = num.divrem(&g);
    let (den, _) = den.divrem(&g);
    // monic denominator
    let lead = den.leading().unwrap().recip();
    let scale = Poly::constant(lead);
    Scalar::Function {
        num: num.mul(&scale),
        den: den.mul(&scale),
    }
}

static CYCLOTOMIC_CACHE: Lazy<Mutex<HashMap<u32, Poly>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// The d-th cyclotomic polynomial, via x^d - 1 = prod_{e | d} Phi_e.
pub fn cyclotomic_polynomial(d: u32) -> Poly {
    assert!(d >= 1);
    if let Some(p) = CYCLOTOMIC_CACHE.lock().unwrap().get(&d) {
        return p.clone();
    }
    let result = if d == 1 {
        Poly::new(vec![-BigRational::one(), BigRational::one()])
    } else {
        let mut xd1 = vec![BigRational::zero(); d as usize + 1];
        xd1[0] = -BigRational::one();
        xd1[d as usize] = BigRational::one();
        let mut num = Poly::new(xd1);
        for e in 1..d {
            if d % e == 0 {
                let (q, r) = num.divrem(&cyclotomic_polynomial(e));
                debug_assert!(r.is_zero());
                num = q;
            }
        }
        num
    };
    CYCLOTOMIC_CACHE.lock().unwrap().insert(d, result.clone());
    result
}

pub fn euler_phi(d: u32) -> u32 {
    let mut result = d;
    let mut n = d;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn reduce_cyclotomic(d: u32, coeffs: &mut Vec<BigRational>) {
    let phi = euler_phi(d) as usize;
    if coeffs.len() > phi {
        let modulus = cyclotomic_polynomial(d);
        let (_, r) = Poly::new(std::mem::take(coeffs)).divrem(&modulus);
        *coeffs = r.coeffs().to_vec();
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= p {
        if p % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut result = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            result = ((result as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    result
}

fn poly_string(coeffs: &[BigRational], var: char) -> String {
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = if c < &BigRational::zero() { -c } else { c.clone() };
        if first {
            if c < &BigRational::zero() {
                out.push('-');
            }
            first = false;
        } else if c < &BigRational::zero() {
            out.push('-');
        } else {
            out.push('+');
        }
        let unit = mag.is_one();
        match (k, unit) {
            (0, _) => out.push_str(&mag.to_string()),
            (_, false) => {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            (_, true) => {}
        }
        if k == 1 {
            out.push(var);
        } else if k > 1 {
            out.push_str(&format!("{var}^{k}"));
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

// ---- scalar expression parsing ----

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Sym(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LPar,
    RPar,
}

fn tokenize(text: &str) -> Result<Vec<Tok>, Error> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Num(s.parse().unwrap()));
            }
            't' | 'z' => {
                chars.next();
                toks.push(Tok::Sym(c));
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '/' => {
                chars.next();
                toks.push(Tok::Slash);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                toks.push(Tok::LPar);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RPar);
            }
            _ => return Err(Error::new(format!("unexpected character `{c}` in scalar"))),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    field: FieldSpec,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Scalar, Error> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, Error> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Slash) => {
                    self.next();
                    acc = acc.div(&self.power()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Scalar, Error> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.next();
                true
            } else {
                false
            };
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e: i64 = n
                        .to_string()
                        .parse()
                        .map_err(|_| Error::new("exponent too large"))?;
                    base.pow(if neg { -e } else { e })
                }
                _ => Err(Error::new("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Scalar, Error> {
        match self.next() {
            Some(Tok::Num(n)) => {
                let s: i64 = n
                    .to_string()
                    .parse()
                    .map_err(|_| Error::new("integer literal too large"))?;
                Ok(self.field.from_i64(s))
            }
            Some(Tok::Sym(c)) => match (self.field, c) {
                (FieldSpec::RationalFunctions, 't') | (FieldSpec::Cyclotomic(_), 'z') => {
                    self.field.generator()
                }
                _ => Err(Error::new(format!("symbol `{c}` not valid in {}", self.field))),
            },
            Some(Tok::Minus) => Ok(self.atom()?.neg()),
            Some(Tok::LPar) => {
                let e = self.expr()?;
                if self.next() != Some(Tok::RPar) {
                    return Err(Error::new("unbalanced parentheses"));
                }
                Ok(e)
            }
            other => Err(Error::new(format!("unexpected token {other:?} in scalar"))),
        }
    }
}

fn parse_scalar(field: FieldSpec, text: &str) -> Result<Scalar, Error> {
    let s = text.trim();
    if let Some((val, modulus)) = s.split_once(" mod ") {
        let p: u64 = modulus
            .trim()
            .parse()
            .map_err(|_| Error::new("bad modulus"))?;
        if field != FieldSpec::PrimeField(p) {
            return Err(Error::new(format!(
                "scalar `{s}` does not live in field {field}"
            )));
        }
        let v: i64 = val.trim().parse().map_err(|_| Error::new("bad residue"))?;
        return Ok(field.from_i64(v));
    }
    let mut parser = Parser {
        toks: tokenize(s)?,
        pos: 0,
        field,
    };
    let result = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(Error::new(format!("trailing garbage in scalar `{s}`")));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        FieldSpec::Rationals.from_i64(n)
    }

    #[test]
    fn rational_arithmetic() {
        let a = q(2).div(&q(3)).unwrap();
        let b = q(1).div(&q(6)).unwrap();
        assert_eq!(a.add(&b), q(5).div(&q(6)).unwrap());
        assert_eq!(a.mul(&a.inv().unwrap()), q(1));
    }

    #[test]
    fn order_of_rationals() {
        assert_eq!(q(-1).order().unwrap(), Some(2));
        assert_eq!(q(1).order().unwrap(), Some(1));
        assert_eq!(q(2).order().unwrap(), None);
        assert!(FieldSpec::Rationals.zero().order().is_err());
    }

    #[test]
    fn order_of_transcendental() {
        let t = FieldSpec::RationalFunctions.generator().unwrap();
        assert_eq!(t.order().unwrap(), None);
        let c = FieldSpec::RationalFunctions.from_i64(-1);
        assert_eq!(c.order().unwrap(), Some(2));
    }

    #[test]
    fn cyclotomic_four() {
        // Phi_4 = z^2 + 1, so z has order 4
        let f = FieldSpec::Cyclotomic(4);
        let z = f.generator().unwrap();
        assert_eq!(z.order().unwrap(), Some(4));
        assert_eq!(z.mul(&z), f.from_i64(-1));
        assert_eq!(z.pow(4).unwrap(), f.one());
        assert_eq!(z.mul(&z.inv().unwrap()), f.one());
    }

    #[test]
    fn cyclotomic_polynomials() {
        // Phi_6 = x^2 - x + 1
        let p6 = cyclotomic_polynomial(6);
        assert_eq!(p6.degree(), Some(2));
        assert_eq!(euler_phi(12), 4);
        assert_eq!(cyclotomic_polynomial(12).degree(), Some(4));
    }

    #[test]
    fn prime_field_order() {
        let f = FieldSpec::PrimeField(7);
        let g = f.from_i64(3); // 3 generates F_7^*
        assert_eq!(g.order().unwrap(), Some(6));
        assert_eq!(f.from_i64(2).order().unwrap(), Some(3));
        assert_eq!(f.from_i64(6).order().unwrap(), Some(2));
    }

    #[test]
    fn rational_function_reduction() {
        let f = FieldSpec::RationalFunctions;
        let t = f.generator().unwrap();
        // (t^2 - 1)/(t - 1) reduces to t + 1
        let num = t.mul(&t).sub(&f.one());
        let den = t.sub(&f.one());
        let r = num.div(&den).unwrap();
        assert_eq!(r, t.add(&f.one()));
        assert_eq!(r.to_string(), "1+t");
    }

    #[test]
    fn scalar_parsing_round_trip() {
        let cases = [
            (FieldSpec::Rationals, "3/4"),
            (FieldSpec::Rationals, "-7"),
            (FieldSpec::PrimeField(5), "3 mod 5"),
            (FieldSpec::Cyclotomic(4), "1+2*z"),
            (FieldSpec::RationalFunctions, "t^2"),
        ];
        for (field, text) in cases {
            let s = field.parse_scalar(text).unwrap();
            let again = field.parse_scalar(&s.to_string()).unwrap();
            assert_eq!(s, again, "round trip failed for {text}");
        }
        // division in Q(t) builds an honest rational function
        let s = FieldSpec::RationalFunctions
            .parse_scalar("(t+1)/(t^2+2)")
            .unwrap();
        let back = FieldSpec::RationalFunctions
            .parse_scalar(&s.to_string())
            .unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("F5").unwrap(), FieldSpec::PrimeField(5));
        assert_eq!(FieldSpec::parse("C4").unwrap(), FieldSpec::Cyclotomic(4));
        assert_eq!(FieldSpec::parse("Q(t)").unwrap(), FieldSpec::RationalFunctions);
        assert!(FieldSpec::parse("F6").is_err());
    }
}
