//! Dense univariate polynomials over the integers, exact rationals, and
//! certified real-root isolation.

mod rational;
mod sturm;

pub use rational::{format_rational, parse_rational, rat, serde_str, to_f64, Rational};
pub use sturm::{
    compare_roots, isolate_roots, refine, smallest_root_in, sturm_count, RootInterval, SturmChain,
};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("zero polynomial")]
    Zero,
    #[error("empty interval: lo must be below hi")]
    EmptyInterval,
    #[error("endpoint is a root; perturb interval")]
    EndpointRoot,
    #[error("interval does not isolate a single simple root")]
    NotIsolating,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("cannot parse rational: {0}")]
    ParseRational(String),
}

/// Integer polynomial; `coeffs[i]` multiplies `t^i`. Trailing zeros are
/// always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        IntPoly::from_i64s(&[0, 1])
    }

    /// `t - c`.
    pub fn linear_root(c: i64) -> Self {
        IntPoly::from_i64s(&[-c, 1])
    }

    /// `t (t-1) ... (t-k+1)`.
    pub fn falling_factorial(k: usize) -> Self {
        (0..k as i64).fold(IntPoly::one(), |acc, j| &acc * &IntPoly::linear_root(j))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Exact value at a rational point by Horner's scheme.
    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + Rational::from_integer(c.clone()))
    }

    pub fn eval_int(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Sign of the value at `t`, computed on the cleared-denominator form.
    pub fn sign_at(&self, t: &Rational) -> Ordering {
        let (num, den) = (t.numer(), t.denom());
        // sum c_i num^i den^(d-i); den > 0 so the sign matches p(t)
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        match acc.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content; the sign of the leading coefficient is kept.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo division by zero");
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let Some(mut deg) = self.degree() else { return IntPoly::zero() };
        if deg < dd {
            return self.clone();
        }
        let steps = deg - dd + 1;
        let mut done = 0;
        while deg >= dd && !r.is_empty() {
            let lead = r[deg].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[deg - dd + i] -= &lead * dc;
            }
            done += 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            if r.is_empty() {
                break;
            }
            deg = r.len() - 1;
        }
        let mut out = IntPoly::new(r);
        for _ in done..steps {
            out = out.scale(&lc);
        }
        out
    }

    /// Exact quotient in `Z[t]`, or `None` if `d` does not divide `self`
    /// with an integral quotient.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let deg = self.degree().unwrap();
        if deg < dd {
            return None;
        }
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); deg - dd + 1];
        for k in (0..=deg - dd).rev() {
            let lead = &r[k + dd];
            if lead.is_zero() {
                continue;
            }
            let (quot, rem) = lead.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &quot * dc;
            }
            q[k] = quot;
        }
        if r.iter().all(Zero::is_zero) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().normalised_sign();
        }
        if other.is_zero() {
            return self.primitive_part().normalised_sign();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.normalised_sign()
    }

    fn normalised_sign(self) -> IntPoly {
        if self.leading().is_some_and(Signed::is_negative) {
            -self
        } else {
            self
        }
    }

    /// `self / gcd(self, self')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part().normalised_sign();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .div_exact(&g)
            .expect("gcd divides")
            .primitive_part()
            .normalised_sign()
    }

    /// Removes the factor `den*t - num` for a rational root `num/den`.
    pub fn deflate(&self, root: &Rational) -> Option<IntPoly> {
        let lin = IntPoly::new(vec![-root.numer().clone(), root.denom().clone()]);
        self.primitive_part().div_exact(&lin)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_string().parse().unwrap_or(f64::NAN)).collect()
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for IntPoly {
    /// Writes e.g. `t^3-2*t^2+4*t-4`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl FromStr for IntPoly {
    type Err = PolyError;

    /// Accepts `t^3-2*t^2+4*t-4`-style strings (whitespace ignored, `x` also
    /// accepted as the variable) or a JSON array of ascending coefficients.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let spaced_digits = words.windows(2).any(|w| {
            w[0].ends_with(|c: char| c.is_ascii_alphanumeric())
                && w[1].starts_with(|c: char| c.is_ascii_alphanumeric())
        });
        if spaced_digits {
            return Err(PolyError::Parse("missing operator between terms".into()));
        }
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.starts_with('[') {
            let v: Vec<serde_json::Value> =
                serde_json::from_str(&s).map_err(|e| PolyError::Parse(e.to_string()))?;
            return v
                .iter()
                .map(|x| {
                    let text = x.to_string();
                    text.trim_matches('"').parse::<BigInt>().map_err(|_| PolyError::Parse(text))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(IntPoly::new);
        }
        if s.is_empty() {
            return Err(PolyError::Parse("empty".into()));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut neg = false;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                neg = bytes[i] == b'-';
                i += 1;
            } else if i > 0 {
                return Err(PolyError::Parse(format!("expected sign at {i}")));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut coef = if i > start {
                s[start..i].parse::<BigInt>().unwrap()
            } else {
                BigInt::one()
            };
            let had_digits = i > start;
            if i < bytes.len() && bytes[i] == b'*' {
                if !had_digits {
                    return Err(PolyError::Parse(format!("dangling '*' at {i}")));
                }
                i += 1;
            }
            let mut power = 0usize;
            if i < bytes.len() && (bytes[i] == b't' || bytes[i] == b'x') {
                i += 1;
                power = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let ps = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    power = s[ps..i]
                        .parse()
                        .map_err(|_| PolyError::Parse(format!("bad exponent at {ps}")))?;
                }
            } else if !had_digits {
                return Err(PolyError::Parse(format!("expected term at {start}")));
            }
            if neg {
                coef = -coef;
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += coef;
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl Serialize for IntPoly {
    /// JSON integer array, ascending degree; big coefficients stay exact.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            let n: serde_json::Number =
                c.to_string().parse().map_err(serde::ser::Error::custom)?;
            seq.serialize_element(&n)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<serde_json::Number> = Vec::deserialize(d)?;
        v.iter()
            .map(|n| n.to_string().parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(IntPoly::new)
    }
}
