//! Integer Laurent polynomials in one variable `q`.
//!
//! Coefficients are arbitrary-precision integers. A polynomial is stored
//! densely from its lowest to its highest nonzero exponent, so the zero
//! polynomial is the empty vector and equality is structural.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cyclo::CycInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("expected an ordinary polynomial, found valuation {0}")]
    NegativeValuation(i64),
    #[error("evaluation point is not invertible but the polynomial has negative valuation")]
    NotInvertible,
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// An element of `Z[q, q^-1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    /// Exponent of `coeffs[0]`. Zero for the zero polynomial.
    val: i64,
    /// First and last entries are nonzero.
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        Self::from_raw(exp, vec![c])
    }

    /// Builds `sum coeffs[i] * q^(val + i)`.
    pub fn from_coeffs(val: i64, coeffs: Vec<BigInt>) -> Self {
        Self::from_raw(val, coeffs)
    }

    /// Same as [`from_coeffs`](Self::from_coeffs) with machine integers.
    pub fn from_ints(val: i64, coeffs: &[i64]) -> Self {
        Self::from_raw(val, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn from_raw(mut val: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        if lead > 0 {
            coeffs.drain(..lead);
            val += lead as i64;
        }
        Self { val, coeffs }
    }

    /// The Euler q-integer `[n]_q = (q^n - 1)/(q - 1)`, for any integer `n`.
    pub fn q_integer(n: i64) -> Self {
        match n.cmp(&0) {
            std::cmp::Ordering::Equal => Self::zero(),
            std::cmp::Ordering::Greater => Self::from_raw(0, vec![BigInt::one(); n as usize]),
            // [-n]_q = -q^-n [n]_q
            std::cmp::Ordering::Less => {
                Self::from_raw(n, vec![-BigInt::one(); n.unsigned_abs() as usize])
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.val == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Maximal exponent with a nonzero coefficient.
    pub fn degree(&self) -> Result<i64, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.val + self.coeffs.len() as i64 - 1)
    }

    /// Minimal exponent with a nonzero coefficient. For an ordinary
    /// polynomial this is the largest `d` with `q^d | f`.
    pub fn valuation(&self) -> Result<i64, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.val)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.val;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Whether every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_raw(self.val, self.coeffs.iter().map(|x| x * c).collect())
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate_other { -other } else { other.clone() };
        }
        let lo = self.val.min(other.val);
        let hi = (self.val + self.coeffs.len() as i64).max(other.val + other.coeffs.len() as i64);
        let mut out = vec![BigInt::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(self.val - lo) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let slot = &mut out[(other.val - lo) as usize + i];
            if negate_other {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::from_raw(lo, out)
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_monomial() {
            return self.scale(&other.coeffs[0]).shift(other.val);
        }
        if self.is_monomial() {
            return other.scale(&self.coeffs[0]).shift(self.val);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_raw(self.val + other.val, out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `f^v(q) = q^deg(f) f(1/q)`, defined for nonzero ordinary polynomials.
    pub fn reverse(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.val < 0 {
            return Err(PolyError::NegativeValuation(self.val));
        }
        // Exponent e maps to deg - e; the stored block starts at val and
        // ends at deg, so the reversed block starts at 0.
        let mut rev = self.coeffs.clone();
        rev.reverse();
        Ok(Self::from_raw(0, rev))
    }

    /// Whether `f = f^v`. Zero and polynomials with negative valuation are
    /// never palindromic in this sense.
    pub fn is_palindromic(&self) -> bool {
        self.reverse().is_ok_and(|r| &r == self)
    }

    /// Canonical representative of the class `{±q^k f}`: valuation zero
    /// and positive lowest coefficient.
    pub fn normalize_pm_qk(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let shifted = Self {
            val: 0,
            coeffs: self.coeffs.clone(),
        };
        Ok(if self.coeffs[0].is_negative() {
            -shifted
        } else {
            shifted
        })
    }

    /// Exact division in `Z[q]` after shifting both operands to valuation
    /// zero. Returns the quotient `g` with `f = d * g` (both shifted) when it
    /// exists.
    pub fn divides(d: &Self, f: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if f.is_zero() {
            return Some(Self::zero());
        }
        let divisor = &d.coeffs;
        let mut rem = f.coeffs.clone();
        if rem.len() < divisor.len() {
            return None;
        }
        let lead = divisor.last().expect("nonzero divisor");
        let qlen = rem.len() - divisor.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + divisor.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dj) in divisor.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_raw(0, quot))
    }

    /// Exact evaluation at an integer point.
    pub fn eval_int(&self, x: i64) -> Result<BigRational, PolyError> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if x == 0 && self.val < 0 {
            return Err(PolyError::NotInvertible);
        }
        let xb = BigInt::from(x);
        // Horner on the stored block, then multiply by x^val.
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &xb + c;
        }
        let mut out = BigRational::from_integer(acc);
        let base = BigRational::from_integer(xb);
        let mut power = BigRational::one();
        for _ in 0..self.val.unsigned_abs() {
            power *= &base;
        }
        if self.val >= 0 {
            out *= power;
        } else {
            out /= power;
        }
        Ok(out)
    }

    /// Evaluation at an integer point where the result is known to be an
    /// integer (valuation ≥ 0 or `x = ±1`).
    pub fn eval_int_exact(&self, x: i64) -> Result<BigInt, PolyError> {
        let v = self.eval_int(x)?;
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(PolyError::NotInvertible)
        }
    }

    /// Exact evaluation at a cyclotomic integer. Negative powers are allowed
    /// when the point is a unit of the form `±ζ^j`.
    pub fn eval_cyc(&self, point: &CycInt) -> Result<CycInt, PolyError> {
        let ring = point.ring();
        if self.is_zero() {
            return Ok(ring.zero());
        }
        if let Some((negative, j)) = ring.unit_log(point) {
            let n = ring.n() as i64;
            let mut buckets = vec![BigInt::zero(); n as usize];
            for (e, c) in self.terms() {
                let k = (e * j as i64).rem_euclid(n) as usize;
                if negative && e.rem_euclid(2) == 1 {
                    buckets[k] -= c;
                } else {
                    buckets[k] += c;
                }
            }
            return Ok(ring.from_power_buckets(&buckets));
        }
        if self.val < 0 {
            return Err(PolyError::NotInvertible);
        }
        let mut acc = ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * point) + &ring.int_big(c.clone());
        }
        Ok(&acc * &point.pow(self.val as u64))
    }

    /// Evaluation at the fixed primitive root `ζ_n`.
    pub fn eval_zeta(&self, ring: &crate::cyclo::CycRing) -> CycInt {
        self.eval_cyc(&ring.zeta())
            .expect("ζ is a unit so evaluation always succeeds")
    }
}

crate::forward_binops!(LaurentPoly);

impl std::ops::Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    /// Exponent-descending, e.g. `q^5 + 2*q^4 - q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if e == 1 {
                f.write_str("q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PolyError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        // Split into signed terms at '+'/'-' that do not follow '^'.
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') {
                if !current.is_empty() {
                    terms.push((negative, std::mem::take(&mut current)));
                } else if prev.is_some() {
                    return Err(err("dangling sign"));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        if current.is_empty() {
            return Err(err("trailing sign"));
        }
        terms.push((negative, current));

        let mut out = LaurentPoly::zero();
        for (negative, term) in terms {
            let (coef_part, var_part) = match term.find('q') {
                Some(pos) => (&term[..pos], Some(&term[pos + 1..])),
                None => (term.as_str(), None),
            };
            let coef_part = coef_part.strip_suffix('*').unwrap_or(coef_part);
            let mut coef = if coef_part.is_empty() {
                if var_part.is_none() {
                    return Err(err("empty term"));
                }
                BigInt::one()
            } else {
                coef_part
                    .parse::<BigInt>()
                    .map_err(|_| err("bad coefficient"))?
            };
            let exp = match var_part {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .ok_or_else(|| err("expected '^' after q"))?
                    .parse::<i64>()
                    .map_err(|_| err("bad exponent"))?,
            };
            if negative {
                coef = -coef;
            }
            out = &out + &LaurentPoly::monomial(coef, exp);
        }
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn addition_cancels() {
        assert_eq!(&p("1 + q") + &p("1 - q"), LaurentPoly::constant(2));
        assert!((&p("q^3") - &p("q^3")).is_zero());
    }

    #[test]
    fn product_of_three_factors() {
        let f = &(&p("q + 1") * &p("q^2 + 1")) * &p("q^2 + q + 1");
        assert_eq!(f, p("q^5 + 2*q^4 + 3*q^3 + 3*q^2 + 2*q + 1"));
        assert_eq!(f.eval_int(1).unwrap(), BigRational::from_integer(12.into()));
        assert!((&f * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn q_integers() {
        assert_eq!(LaurentPoly::q_integer(3), p("q^2 + q + 1"));
        assert!(LaurentPoly::q_integer(0).is_zero());
        assert_eq!(LaurentPoly::q_integer(-2), p("-q^-1 - q^-2"));
        // (q - 1)[n]_q + 1 = q^n
        for n in -6..=6 {
            let lhs = &(&p("q - 1") * &LaurentPoly::q_integer(n)) + &LaurentPoly::one();
            assert_eq!(lhs, LaurentPoly::q_pow(n));
        }
    }

    #[test]
    fn reversal() {
        assert_eq!(p("1 + 2*q").reverse().unwrap(), p("2 + q"));
        assert_eq!(p("q^2 + q + 1").reverse().unwrap(), p("q^2 + q + 1"));
        assert_eq!(p("1 + q^2 + q^3").reverse().unwrap(), p("q^3 + q + 1"));
        // q^2 + q^3 has valuation 2: f^v = q^3 (q^-2 + q^-3) = q + 1
        assert_eq!(p("q^2 + q^3").reverse().unwrap(), p("1 + q"));
        assert_eq!(
            p("q^-1 + 1").reverse(),
            Err(PolyError::NegativeValuation(-1))
        );
        assert_eq!(LaurentPoly::zero().reverse(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn palindromes() {
        assert!(p("q^2 + q + 1").is_palindromic());
        assert!(!p("1 + 2*q").is_palindromic());
        assert!(p("q^6 + 2*q^5 + 3*q^4 + 2*q^3 + 3*q^2 + 2*q + 1").is_palindromic());
        assert!(!LaurentPoly::zero().is_palindromic());
    }

    #[test]
    fn normalization() {
        assert_eq!(p("-q^3 - q^4").normalize_pm_qk().unwrap(), p("1 + q"));
        assert_eq!(p("q^2 + q + 1").normalize_pm_qk().unwrap(), p("q^2 + q + 1"));
        assert_eq!(
            LaurentPoly::q_integer(-2).normalize_pm_qk().unwrap(),
            p("1 + q")
        );
        assert!(LaurentPoly::zero().normalize_pm_qk().is_err());
    }

    #[test]
    fn exact_division() {
        let f = p("q^5 + 2*q^4 + 3*q^3 + 3*q^2 + 2*q + 1");
        assert_eq!(
            LaurentPoly::divides(&LaurentPoly::q_integer(3), &f),
            Some(p("q^3 + q^2 + q + 1"))
        );
        let g = &p("q + 1") * &p("q^2 - q + 1");
        assert_eq!(LaurentPoly::divides(&p("q^2 - q + 1"), &g), Some(p("q + 1")));
        assert_eq!(LaurentPoly::divides(&p("q - 1"), &p("q^2 + 1")), None);
        // shifts are ignored on both sides
        assert_eq!(
            LaurentPoly::divides(&p("q^3 + q^4"), &p("q^-2 - q^0")),
            Some(p("1 - q"))
        );
        assert_eq!(LaurentPoly::divides(&p("2"), &p("3 + q")), None);
    }

    #[test]
    fn valuations() {
        assert_eq!(p("q^7").valuation().unwrap(), 7);
        assert_eq!(p("1 + q").valuation().unwrap(), 0);
        assert_eq!(LaurentPoly::zero().valuation(), Err(PolyError::ZeroPolynomial));
        let telescoped = &(&p("q - 1") * &LaurentPoly::q_integer(5)) + &LaurentPoly::one();
        assert_eq!(telescoped.valuation().unwrap(), 5);
    }

    #[test]
    fn integer_evaluation() {
        assert_eq!(p("q^2 + q + 1").eval_int(1).unwrap(), BigRational::from_integer(3.into()));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p("q^-1").eval_int(2).unwrap(), half);
        assert_eq!(p("q^-1").eval_int(0), Err(PolyError::NotInvertible));
        assert_eq!(p("q^3 - q").eval_int(0).unwrap(), BigRational::zero());
    }

    #[test]
    fn text_form() {
        let f = p("q^5 + 2*q^4 + 3*q^3 + 3*q^2 + 2*q + 1");
        assert_eq!(f.to_string(), "q^5 + 2*q^4 + 3*q^3 + 3*q^2 + 2*q + 1");
        assert_eq!(LaurentPoly::q_integer(-2).to_string(), "-q^-1 - q^-2");
        assert_eq!(p("-q + 4 - 3*q^-2").to_string(), "-q + 4 - 3*q^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("2q^2+q^-1").to_string(), "2*q^2 + q^-1");
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("1 +".parse::<LaurentPoly>().is_err());
        assert!("x^2".parse::<LaurentPoly>().is_err());
    }
}
