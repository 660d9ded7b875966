//! Integer-valued polynomials in the binomial basis.
//!
//! A polynomial is stored as `f(x) = sum_k c_k * C(x - a, k)` where `a` is the
//! base point (`offset`) and `c_k` are the forward differences of `f` at `a`.
//! Every such `f` takes integer values at integers, and every rational
//! polynomial that does has a unique expansion of this form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::prime::Prime;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IvPoly {
    offset: i64,
    #[serde(serialize_with = "ser_diffs", deserialize_with = "de_diffs")]
    diffs: Vec<BigInt>,
}

/// Generalised binomial coefficient C(m, k) = m(m-1)...(m-k+1)/k!, valid for negative m.
pub fn binomial(m: &BigInt, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (m - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// C(n, m) mod p by Lucas' theorem on base-p digits.
pub fn binomial_mod_p(mut n: u64, mut m: u64, p: Prime) -> u32 {
    let q = p.get() as u64;
    let mut acc = 1u32;
    while m > 0 || n > 0 {
        let (nd, md) = ((n % q) as u32, (m % q) as u32);
        if md > nd {
            return 0;
        }
        acc = p.mul(acc, small_binomial_mod(nd, md, p));
        n /= q;
        m /= q;
    }
    acc
}

fn small_binomial_mod(n: u32, m: u32, p: Prime) -> u32 {
    let (mut num, mut den) = (1u32, 1u32);
    for i in 0..m {
        num = p.mul(num, n - i);
        den = p.mul(den, i + 1);
    }
    p.mul(num, p.inv(den))
}

impl IvPoly {
    pub fn zero() -> Self {
        IvPoly { offset: 0, diffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_diffs(0, vec![c.into()])
    }

    /// `C(x - offset, k)`.
    pub fn binomial_basis(offset: i64, k: usize) -> Self {
        let mut diffs = vec![BigInt::zero(); k + 1];
        diffs[k] = BigInt::one();
        Self::from_diffs(offset, diffs)
    }

    /// `x - c`.
    pub fn linear(c: i64) -> Self {
        Self::from_diffs(0, vec![BigInt::from(-c), BigInt::one()])
    }

    pub fn from_diffs(offset: i64, mut diffs: Vec<BigInt>) -> Self {
        while diffs.last().is_some_and(Zero::is_zero) {
            diffs.pop();
        }
        IvPoly { offset, diffs }
    }

    /// Newton forward-difference interpolation through `values[j] = f(base + j)`.
    pub fn from_values<T: Into<BigInt> + Clone>(base: i64, values: &[T]) -> Self {
        let mut row: Vec<BigInt> = values.iter().cloned().map(Into::into).collect();
        let mut diffs = Vec::with_capacity(row.len());
        while !row.is_empty() {
            diffs.push(row[0].clone());
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        Self::from_diffs(base, diffs)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn diffs(&self) -> &[BigInt] {
        &self.diffs
    }

    pub fn is_zero(&self) -> bool {
        self.diffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.diffs.len().saturating_sub(1)
    }

    pub fn evaluate(&self, n: i64) -> BigInt {
        let m = BigInt::from(n) - BigInt::from(self.offset);
        let mut binom = BigInt::one();
        let mut acc = BigInt::zero();
        for (k, c) in self.diffs.iter().enumerate() {
            if k > 0 {
                binom = binom * (&m - BigInt::from(k - 1)) / BigInt::from(k);
            }
            if !c.is_zero() {
                acc += c * &binom;
            }
        }
        acc
    }

    pub fn evaluate_mod(&self, n: i64, p: Prime) -> u32 {
        let v = self.evaluate(n).mod_floor(&BigInt::from(p.get()));
        v.to_u32().expect("residue fits")
    }

    /// The same function re-expanded around a new base point.
    pub fn rebase(&self, base: i64) -> Self {
        let values: Vec<BigInt> = (0..=self.degree() as i64).map(|j| self.evaluate(base + j)).collect();
        Self::from_values(base, &values)
    }

    fn pointwise(&self, other: &Self, degree: usize, op: impl Fn(BigInt, BigInt) -> BigInt) -> Self {
        let base = self.offset;
        let values: Vec<BigInt> = (0..=degree as i64)
            .map(|j| op(self.evaluate(base + j), other.evaluate(base + j)))
            .collect();
        Self::from_values(base, &values)
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        self.pointwise(other, self.degree().max(other.degree()), |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        self.pointwise(other, self.degree().max(other.degree()), |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        self.pointwise(other, self.degree() + other.degree(), |a, b| a * b)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_diffs(self.offset, self.diffs.iter().map(|d| d * c).collect())
    }

    /// Minimal T with f(n + T) = f(n) mod p for all integers n.
    ///
    /// The reduction is periodic with period p^digits_p(deg f); the minimal
    /// period divides that, so only powers of p are candidates.
    pub fn period_mod_p(&self, p: Prime) -> u64 {
        if self.degree() == 0 {
            return 1;
        }
        let e = p.digits(self.degree() as u64);
        let full = p.power(e).expect("period fits in u64");
        let values: Vec<u32> = (0..full as i64).map(|n| self.evaluate_mod(n, p)).collect();
        let mut t = 1u64;
        while t < full {
            if (0..full as usize).all(|n| values[n] == values[(n + t as usize) % full as usize]) {
                return t;
            }
            t *= p.get() as u64;
        }
        full
    }

    /// ev_t: the value in F_p at a p-adic integer known modulo p^exp.
    pub fn eval_at_padic(&self, t: &PAdicResidue) -> Result<u32> {
        let needed = t.prime().digits(self.degree() as u64);
        if t.exp() < needed {
            return Err(Error::InsufficientDigits { needed, have: t.exp() });
        }
        let n = i64::try_from(t.residue()).map_err(|_| Error::Overflow("p-adic residue"))?;
        Ok(self.evaluate_mod(n, t.prime()))
    }
}

impl PartialEq for IvPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.offset == other.offset {
            return self.diffs == other.diffs;
        }
        let d = self.degree().max(other.degree()) as i64;
        (0..=d).all(|n| self.evaluate(n) == other.evaluate(n))
    }
}

impl Eq for IvPoly {}

impl fmt::Display for IvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let arg = match self.offset {
            0 => "x".to_string(),
            a if a > 0 => format!("x-{a}"),
            a => format!("x+{}", -a),
        };
        let mut first = true;
        for (k, c) in self.diffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "C({arg},{k})")?,
                _ => write!(f, "{mag}*C({arg},{k})")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireInt {
    Small(i64),
    Big(String),
}

fn ser_diffs<S: Serializer>(diffs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let wire: Vec<WireInt> = diffs
        .iter()
        .map(|d| match d.to_i64() {
            Some(v) => WireInt::Small(v),
            None => WireInt::Big(d.to_string()),
        })
        .collect();
    wire.serialize(s)
}

fn de_diffs<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
    let wire = Vec::<WireInt>::deserialize(d)?;
    let mut out: Vec<BigInt> = wire
        .into_iter()
        .map(|w| match w {
            WireInt::Small(v) => Ok(BigInt::from(v)),
            WireInt::Big(s) => s.parse::<BigInt>().map_err(serde::de::Error::custom),
        })
        .collect::<std::result::Result<_, _>>()?;
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    Ok(out)
}

/// A p-adic integer known modulo p^exp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAdicResidue {
    p: Prime,
    exp: u32,
    residue: u64,
}

impl PAdicResidue {
    pub fn new(p: Prime, exp: u32, residue: u64) -> Result<Self> {
        let modulus = p
            .power(exp)
            .ok_or_else(|| Error::InvalidResidue(format!("{p}^{exp} overflows")))?;
        if residue >= modulus {
            return Err(Error::InvalidResidue(format!("residue {residue} not below {p}^{exp}")));
        }
        Ok(PAdicResidue { p, exp, residue })
    }

    /// The residue class of an integer `n >= 0`.
    pub fn of_integer(p: Prime, exp: u32, n: u64) -> Result<Self> {
        let modulus = p
            .power(exp)
            .ok_or_else(|| Error::InvalidResidue(format!("{p}^{exp} overflows")))?;
        Self::new(p, exp, n % modulus)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.p.power(self.exp).expect("validated at construction")
    }

    /// Whether the integer `n` lies in this residue class.
    pub fn contains(&self, n: i64) -> bool {
        n.rem_euclid(self.modulus() as i64) as u64 == self.residue
    }
}
