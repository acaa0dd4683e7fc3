//! Exact truncated power series with coefficients in `ℚ(√2)`.
//!
//! Used to re-derive every small-volume Taylor coefficient from the closed
//! forms without floating-point rounding.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// `a + b√2` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSqrt2 {
    pub rational: BigRational,
    pub sqrt2: BigRational,
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QSqrt2 {
    pub fn new(rational: BigRational, sqrt2: BigRational) -> Self {
        Self { rational, sqrt2 }
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Self::new(ratio(n, d), BigRational::zero())
    }

    /// `(p/q) + (r/s)·√2`
    pub fn pair(p: i64, q: i64, r: i64, s: i64) -> Self {
        Self::new(ratio(p, q), ratio(r, s))
    }

    pub fn sqrt2_multiple(r: i64, s: i64) -> Self {
        Self::new(BigRational::zero(), ratio(r, s))
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.sqrt2.is_zero()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.rational * k, &self.sqrt2 * k)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.sqrt2.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }

    /// Relative distance between the values of `self` and `other`.
    pub fn relative_error(&self, other: &QSqrt2) -> f64 {
        let a = self.to_f64();
        let b = other.to_f64();
        if a == b {
            0.0
        } else {
            (a - b).abs() / a.abs().max(b.abs())
        }
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.sqrt2.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "{}√2", self.sqrt2),
            (false, false) => {
                let sign = if self.sqrt2.is_negative() { "-" } else { "+" };
                write!(f, "({} {} {}√2)", self.rational, sign, self.sqrt2.abs())
            }
        }
    }
}

impl Add for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.rational + &o.rational, &self.sqrt2 + &o.sqrt2)
    }
}

impl Sub for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.rational - &o.rational, &self.sqrt2 - &o.sqrt2)
    }
}

impl Mul for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: &QSqrt2) -> QSqrt2 {
        let two = BigRational::from_integer(BigInt::from(2));
        QSqrt2::new(
            &self.rational * &o.rational + two * &self.sqrt2 * &o.sqrt2,
            &self.rational * &o.sqrt2 + &self.sqrt2 * &o.rational,
        )
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-&self.rational, -&self.sqrt2)
    }
}

/// Power series truncated after `x^degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<QSqrt2>,
}

impl Series {
    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![QSqrt2::zero(); degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn from_terms(degree: usize, terms: &[(usize, QSqrt2)]) -> Self {
        let mut s = Self::zero(degree);
        for (p, c) in terms {
            if *p <= degree {
                s.coeffs[*p] = &s.coeffs[*p] + c;
            }
        }
        s
    }

    pub fn constant(degree: usize, c: QSqrt2) -> Self {
        Self::from_terms(degree, &[(0, c)])
    }

    /// The series `x`.
    pub fn identity(degree: usize) -> Self {
        Self::from_terms(degree, &[(1, QSqrt2::one())])
    }

    pub fn coeff(&self, p: usize) -> &QSqrt2 {
        &self.coeffs[p]
    }

    pub fn coeffs(&self) -> &[QSqrt2] {
        &self.coeffs
    }

    pub fn scale(&self, k: &QSqrt2) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, o: &Series) -> Series {
        Series {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Series) -> Series {
        Series {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, o: &Series) -> Series {
        let d = self.degree().min(o.degree());
        let mut out = Series::zero(d);
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(d + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        out
    }

    /// `f(inner(x))` for a series `f` given by its coefficients and an
    /// `inner` series without constant term.
    pub fn compose(outer: &Series, inner: &Series) -> Series {
        assert!(inner.coeffs[0].is_zero(), "inner series must vanish at 0");
        let d = inner.degree();
        let mut acc = Series::zero(d);
        for c in outer.coeffs.iter().rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] = &acc.coeffs[0] + c;
        }
        acc
    }

    /// Series of `(1 + x²)^α` for rational `α`.
    pub fn one_plus_x2_pow(degree: usize, alpha: &BigRational) -> Series {
        let mut s = Series::zero(degree);
        let mut binom = BigRational::one();
        let mut k = 0i64;
        while 2 * k as usize <= degree {
            s.coeffs[2 * k as usize] = QSqrt2::new(binom.clone(), BigRational::zero());
            binom = binom * (alpha - BigRational::from_integer(k.into())) / BigRational::from_integer((k + 1).into());
            k += 1;
        }
        s
    }

    /// `asinh(x) = Σ (−1)^k (2k)! / (4^k (k!)² (2k+1)) x^{2k+1}`
    pub fn asinh(degree: usize) -> Series {
        let mut s = Series::zero(degree);
        let mut c = BigRational::one();
        let mut k = 0i64;
        while 2 * k as usize + 1 <= degree {
            let term = &c / BigRational::from_integer((2 * k + 1).into());
            s.coeffs[2 * k as usize + 1] = QSqrt2::new(term, BigRational::zero());
            // c_{k+1} = −c_k (2k+1)(2k+2) / (4 (k+1)²)
            c = -c * ratio((2 * k + 1) * (2 * k + 2), 4 * (k + 1) * (k + 1));
            k += 1;
        }
        s
    }

    /// Taylor series of `sin(x)`.
    pub fn sin(degree: usize) -> Series {
        Self::trig(degree, 1)
    }

    /// Taylor series of `cos(x)`.
    pub fn cos(degree: usize) -> Series {
        Self::trig(degree, 0)
    }

    fn trig(degree: usize, start: usize) -> Series {
        let mut s = Series::zero(degree);
        let mut fact = BigInt::one();
        for p in 0..=degree {
            if p > 0 {
                fact *= BigInt::from(p);
            }
            if p >= start && (p - start) % 2 == 0 {
                let sign = if ((p - start) / 2) % 2 == 0 { 1 } else { -1 };
                s.coeffs[p] = QSqrt2::new(
                    BigRational::new(BigInt::from(sign), fact.clone()),
                    BigRational::zero(),
                );
            }
        }
        s
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }
}
