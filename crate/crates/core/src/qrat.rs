//! q-deformed rational numbers.
//!
//! A fraction `r/s > 1` is expanded as a negative (Hirzebruch–Jung)
//! continued fraction `[[c_1, …, c_k]]`, and `[r/s]_q = R(q)/S(q)` is read
//! off the first column of `R_q^c_1 S_q ⋯ R_q^c_k S_q`. Other fractions are
//! reached with the shift rule `[x + 1]_q = q [x]_q + 1`.
//!
//! The same construction runs over any [`QRing`], so values at `ζ_n` can be
//! computed directly in `Z[ζ_n]` without building the polynomials first.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{CycInt, CycRing};
use crate::matrix::{r_gen, s_gen, Laurent, Mat2, MatL, QRing};
use crate::poly::LaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QratError {
    #[error("{0} is not greater than 1")]
    NotAboveOne(Fraction),
    #[error("{r}/{s} is not a valid fraction")]
    Invalid { r: i64, s: i64 },
    #[error("cannot parse fraction {0:?}")]
    Parse(String),
}

/// A reduced fraction `r/s` with `s ≥ 0`. `1/0` is allowed as the point at
/// infinity and `0/1` as zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction {
    r: i64,
    s: i64,
}

impl Fraction {
    pub fn new(r: i64, s: i64) -> Result<Self, QratError> {
        if s == 0 {
            return match r.abs() {
                1 => Ok(Self::INFINITY),
                _ => Err(QratError::Invalid { r, s }),
            };
        }
        let g = r.gcd(&s);
        let sign = s.signum();
        Ok(Self {
            r: sign * r / g,
            s: sign * s / g,
        })
    }

    pub const INFINITY: Fraction = Fraction { r: 1, s: 0 };

    pub fn integer(n: i64) -> Self {
        Self { r: n, s: 1 }
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn is_infinite(&self) -> bool {
        self.s == 0
    }

    pub fn is_above_one(&self) -> bool {
        self.s > 0 && self.r > self.s
    }

    /// `r/s + k`.
    pub fn shifted(&self, k: i64) -> Self {
        if self.is_infinite() {
            return *self;
        }
        Self {
            r: self.r + k * self.s,
            s: self.s,
        }
    }

    fn require_above_one(&self) -> Result<(), QratError> {
        if self.is_above_one() {
            Ok(())
        } else {
            Err(QratError::NotAboveOne(*self))
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.r, self.s)
    }
}

impl FromStr for Fraction {
    type Err = QratError;

    /// Accepts `r/s` or `r`, with an optional sign on either part.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .strip_prefix('+')
                .unwrap_or(t.trim())
                .parse::<i64>()
                .map_err(|_| QratError::Parse(input.to_string()))
        };
        match input.split_once('/') {
            Some((r, s)) => Fraction::new(parse(r)?, parse(s)?),
            None => Fraction::new(parse(input)?, 1),
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Terms `[[c_1, …, c_k]]` of a negative continued fraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegCf(pub Vec<i64>);

impl NegCf {
    pub fn terms(&self) -> &[i64] {
        &self.0
    }

    /// Evaluates `c_1 - 1/(c_2 - 1/(… - 1/c_k))` as `(numerator, denominator)`.
    pub fn evaluate(&self) -> (i64, i64) {
        let mut iter = self.0.iter().rev();
        let Some(&last) = iter.next() else {
            return (1, 0);
        };
        let (mut p, mut q) = (last, 1);
        for &c in iter {
            (p, q) = (c * p - q, p);
        }
        (p, q)
    }
}

/// Negative continued fraction of `r/s > 1`; every term is at least 2.
pub fn neg_cf(frac: &Fraction) -> Result<NegCf, QratError> {
    frac.require_above_one()?;
    let (mut a, mut b) = (frac.r, frac.s);
    let mut terms = Vec::new();
    loop {
        let c = Integer::div_ceil(&a, &b);
        terms.push(c);
        let rem = c * b - a;
        if rem == 0 {
            break;
        }
        (a, b) = (b, rem);
    }
    Ok(NegCf(terms))
}

/// `M(c_1, …, c_k) = R^c_1 S R^c_2 S ⋯ R^c_k S` over any q-ring. Negative
/// exponents are allowed.
pub fn matrix_word_in<K: QRing>(k: &K, cf: &[i64]) -> Mat2<K::Elem> {
    let r = r_gen(k);
    let s = s_gen(k);
    let mut acc = Mat2::identity(k);
    for &c in cf {
        let rc = r.pow(k, c).expect("R_q is invertible");
        acc = &(&acc * &rc) * &s;
    }
    acc
}

/// `M_q(c_1, …, c_k)` as a Laurent matrix.
pub fn matrix_word(cf: &[i64]) -> MatL {
    matrix_word_in(&Laurent, cf)
}

/// First column of `M(c_1, …, c_k)`, computed right to left on the vector
/// `(1, 0)` using `R^c = [[q^c, [c]_q], [0, 1]]`.
fn column_in<K: QRing>(k: &K, cf: &[i64]) -> (K::Elem, K::Elem) {
    let (mut x, mut y) = (k.one(), k.zero());
    for &c in cf.iter().rev() {
        let sx = -(k.q_pow(-1) * &y);
        let sy = x;
        x = k.q_pow(c) * &sx + &(k.q_integer(c) * &sy);
        y = sy;
    }
    (x, y)
}

/// Number of unit shifts that carry `r/s ≤ 1` above 1.
fn shifts_above_one(frac: &Fraction) -> i64 {
    (frac.s - frac.r) / frac.s + 1
}

/// `(R_{r/s}, S_{r/s})` evaluated in any q-ring.
pub fn q_rational_in<K: QRing>(k: &K, frac: &Fraction) -> (K::Elem, K::Elem) {
    if frac.is_infinite() {
        return (k.one(), k.zero());
    }
    if frac.is_above_one() {
        let cf = neg_cf(frac).expect("fraction is above one");
        return column_in(k, cf.terms());
    }
    let m = shifts_above_one(frac);
    let cf = neg_cf(&frac.shifted(m)).expect("shifted fraction is above one");
    let (mut x, y) = column_in(k, cf.terms());
    let q_inv = k.q_pow(-1);
    for _ in 0..m {
        // [x - 1]_q = q^-1([x]_q - 1)
        x = (x - &y) * &q_inv;
    }
    (x, y)
}

/// Matrix whose first column is `(R_{r/s}, S_{r/s})`: `M(cf)` for `r/s > 1`,
/// preceded by `R_q^-m` when `m` downward shifts are needed.
pub fn generating_matrix(frac: &Fraction) -> MatL {
    if frac.is_infinite() {
        return Mat2::identity(&Laurent);
    }
    if frac.is_above_one() {
        return matrix_word(neg_cf(frac).expect("above one").terms());
    }
    let m = shifts_above_one(frac);
    let word = matrix_word(neg_cf(&frac.shifted(m)).expect("above one").terms());
    let down = r_gen(&Laurent).pow(&Laurent, -m).expect("R_q is invertible");
    &down * &word
}

/// The numerator and denominator polynomials of `[r/s]_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QRationalPair {
    pub frac: Fraction,
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

pub fn q_rational(frac: &Fraction) -> QRationalPair {
    let (num, den) = q_rational_in(&Laurent, frac);
    QRationalPair {
        frac: *frac,
        num,
        den,
    }
}

/// `(R_{r/s}(ζ_n), S_{r/s}(ζ_n))`.
pub fn specialized(frac: &Fraction, ring: &CycRing) -> (CycInt, CycInt) {
    q_rational_in(ring, frac)
}

/// `J_{r/s} = q R_{r/s} + (1 - q) S_{r/s}` in any q-ring.
pub fn jones_in<K: QRing>(k: &K, frac: &Fraction) -> Result<K::Elem, QratError> {
    frac.require_above_one()?;
    let (num, den) = q_rational_in(k, frac);
    let q = k.q_pow(1);
    Ok(q.clone() * &num + &((k.one() - &q) * &den))
}

/// Normalized Jones polynomial of the rational link `L(r/s)`, `r/s > 1`.
pub fn jones(frac: &Fraction) -> Result<LaurentPoly, QratError> {
    jones_in(&Laurent, frac)
}

/// The ♭-deformation of `r/s > 1` together with `d(α)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatPair {
    pub frac: Fraction,
    pub num_flat: LaurentPoly,
    pub den_flat: LaurentPoly,
    pub d_alpha: i64,
}

/// Recovers `R♭, S♭` from
/// `(R♭^v, q^d S♭^v) = [[q, 1-q], [q-1, 1]] (R, S)`.
pub fn flat(frac: &Fraction) -> Result<FlatPair, QratError> {
    frac.require_above_one()?;
    let QRationalPair { num, den, .. } = q_rational(frac);
    let q = LaurentPoly::q();
    let one = LaurentPoly::one();
    let u = &(&q * &num) + &(&(&one - &q) * &den);
    let v = &(&(&q - &one) * &num) + &den;
    let d_alpha = v.valuation().expect("v(1) = s is nonzero");
    let num_flat = u.reverse().expect("u(0) = S(0) = 1");
    let den_flat = v.shift(-d_alpha).reverse().expect("valuation shifted to zero");
    Ok(FlatPair {
        frac: *frac,
        num_flat,
        den_flat,
        d_alpha,
    })
}

/// Machine-readable summary of a fraction.
#[derive(Clone, Debug, Serialize)]
pub struct QratSummary {
    pub r: i64,
    pub s: i64,
    pub cf: Option<Vec<i64>>,
    pub num: LaurentPoly,
    pub den: LaurentPoly,
    pub flat_num: Option<LaurentPoly>,
    pub flat_den: Option<LaurentPoly>,
    pub d_alpha: Option<i64>,
    pub jones: Option<LaurentPoly>,
}

pub fn summary(frac: &Fraction) -> QratSummary {
    let pair = q_rational(frac);
    let cf = neg_cf(frac).ok().map(|c| c.0);
    let flat = flat(frac).ok();
    QratSummary {
        r: frac.r,
        s: frac.s,
        cf,
        num: pair.num,
        den: pair.den,
        flat_num: flat.as_ref().map(|f| f.num_flat.clone()),
        flat_den: flat.as_ref().map(|f| f.den_flat.clone()),
        d_alpha: flat.as_ref().map(|f| f.d_alpha),
        jones: jones(frac).ok(),
    }
}
