//! Cyclotomic integers `Z[ζ_n]`.
//!
//! Elements are stored as coordinate vectors in the power basis
//! `1, ζ, …, ζ^(φ(n)-1)`, fully reduced modulo the cyclotomic polynomial
//! `Φ_n`. Because the representation is canonical, equality and hashing are
//! coordinate-wise, which is what the group closure relies on.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::poly::LaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("operands live in different rings: Z[ζ_{left}] and Z[ζ_{right}]")]
    RingMismatch { left: u64, right: u64 },
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("cannot parse cyclotomic integer {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// The cyclotomic polynomial `Φ_n`, obtained by dividing `x^n - 1` by `Φ_d`
/// for every proper divisor `d` of `n`.
pub fn cyclotomic_poly(n: u64) -> LaurentPoly {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let mut f = &LaurentPoly::q_pow(n as i64) - &LaurentPoly::one();
    for d in (1..n).filter(|d| n % d == 0) {
        f = LaurentPoly::divides(&cyclotomic_poly(d), &f)
            .expect("Φ_d divides x^n - 1 for d | n");
    }
    f
}

struct RingData {
    n: u64,
    /// Coefficients of `Φ_n`, ascending; length `degree + 1`.
    phi: Vec<BigInt>,
    degree: usize,
    /// Reduced coordinates of `ζ^k` for `k` in `0..n`.
    powers: Vec<Vec<BigInt>>,
    /// Coordinates of `±ζ^k` mapped to `(negative, k)`.
    units: HashMap<Vec<BigInt>, (bool, u64)>,
}

/// Handle to the ring `Z[ζ_n]`. Cheap to clone; rings compare by conductor.
#[derive(Clone)]
pub struct CycRing(Arc<RingData>);

impl CycRing {
    pub fn new(n: u64) -> Self {
        Self::try_new(n).expect("conductor must be positive")
    }

    pub fn try_new(n: u64) -> Result<Self, CycloError> {
        if n == 0 {
            return Err(CycloError::ZeroConductor);
        }
        let phi_poly = cyclotomic_poly(n);
        let degree = phi_poly.degree().expect("Φ_n is nonzero") as usize;
        let phi: Vec<BigInt> = (0..=degree as i64).map(|e| phi_poly.coeff(e)).collect();

        let mut powers = Vec::with_capacity(n as usize);
        let mut current = vec![BigInt::zero(); degree];
        current[0] = BigInt::one();
        for _ in 0..n {
            powers.push(current.clone());
            // multiply by ζ: shift up one slot and reduce
            let mut next = vec![BigInt::zero(); degree + 1];
            next[1..].clone_from_slice(&current);
            current = reduce(&phi, degree, next);
        }
        let mut units = HashMap::new();
        for (k, p) in powers.iter().enumerate() {
            units.entry(p.clone()).or_insert((false, k as u64));
        }
        for (k, p) in powers.iter().enumerate() {
            let neg: Vec<BigInt> = p.iter().map(|c| -c).collect();
            units.entry(neg).or_insert((true, k as u64));
        }
        Ok(Self(Arc::new(RingData {
            n,
            phi,
            degree,
            powers,
            units,
        })))
    }

    /// The conductor `n`.
    pub fn n(&self) -> u64 {
        self.0.n
    }

    /// `φ(n)`, the rank of `Z[ζ_n]` over `Z`.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn phi(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(0, self.0.phi.clone())
    }

    fn element(&self, coeffs: Vec<BigInt>) -> CycInt {
        debug_assert_eq!(coeffs.len(), self.0.degree);
        CycInt {
            ring: self.clone(),
            coeffs,
        }
    }

    pub fn zero(&self) -> CycInt {
        self.element(vec![BigInt::zero(); self.0.degree])
    }

    pub fn one(&self) -> CycInt {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> CycInt {
        self.int_big(BigInt::from(v))
    }

    pub fn int_big(&self, v: BigInt) -> CycInt {
        let mut coeffs = vec![BigInt::zero(); self.0.degree];
        coeffs[0] = v;
        self.element(coeffs)
    }

    /// The fixed primitive root `ζ_n = e^(2πi/n)`.
    pub fn zeta(&self) -> CycInt {
        self.zeta_pow(1)
    }

    /// `ζ_n^j` for any integer `j`.
    pub fn zeta_pow(&self, j: i64) -> CycInt {
        let k = j.rem_euclid(self.0.n as i64) as usize;
        self.element(self.0.powers[k].clone())
    }

    /// Reduces an arbitrary coefficient vector in `1, ζ, ζ^2, …`.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> CycInt {
        self.from_big_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_big_coeffs(&self, coeffs: Vec<BigInt>) -> CycInt {
        self.element(reduce(&self.0.phi, self.0.degree, coeffs))
    }

    /// `sum_k buckets[k] ζ^k` for `k < n`.
    pub(crate) fn from_power_buckets(&self, buckets: &[BigInt]) -> CycInt {
        let mut out = vec![BigInt::zero(); self.0.degree];
        for (k, b) in buckets.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (slot, p) in out.iter_mut().zip(&self.0.powers[k]) {
                if !p.is_zero() {
                    *slot += b * p;
                }
            }
        }
        self.element(out)
    }

    /// If `a = ±ζ^k`, returns `(a is the negative one, k)`.
    pub fn unit_log(&self, a: &CycInt) -> Option<(bool, u64)> {
        if a.ring.n() != self.n() {
            return None;
        }
        self.0.units.get(&a.coeffs).copied()
    }

    /// If `a = ζ^k` (no sign), returns `k` in `0..n`.
    pub fn log_zeta(&self, a: &CycInt) -> Option<u64> {
        if a.ring.n() != self.n() {
            return None;
        }
        self.0
            .powers
            .iter()
            .position(|p| p == &a.coeffs)
            .map(|k| k as u64)
    }
}

impl PartialEq for CycRing {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n()
    }
}

impl Eq for CycRing {}

impl fmt::Debug for CycRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[ζ_{}]", self.n())
    }
}

/// Long division of `coeffs` (ascending) by the monic `phi`, keeping the
/// remainder of length `degree`.
fn reduce(phi: &[BigInt], degree: usize, mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    for i in (degree..coeffs.len()).rev() {
        let c = std::mem::take(&mut coeffs[i]);
        if c.is_zero() {
            continue;
        }
        for (j, pj) in phi[..degree].iter().enumerate() {
            if !pj.is_zero() {
                coeffs[i - degree + j] -= &c * pj;
            }
        }
    }
    coeffs.resize(degree, BigInt::zero());
    coeffs
}

/// An element of `Z[ζ_n]` in reduced coordinates.
#[derive(Clone)]
pub struct CycInt {
    ring: CycRing,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn ring(&self) -> &CycRing {
        &self.ring
    }

    /// Coordinates in the basis `1, ζ, …, ζ^(φ(n)-1)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check_ring(&self, other: &Self) -> Result<(), CycloError> {
        if self.ring != other.ring {
            return Err(CycloError::RingMismatch {
                left: self.ring.n(),
                right: other.ring.n(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(self.ring.element(coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(self.ring.element(coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_ring(other)?;
        let deg = self.ring.degree();
        let mut prod = vec![BigInt::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(self.ring.element(reduce(&self.ring.0.phi, deg, prod)))
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.checked_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.checked_sub(other).unwrap_or_else(|e| panic!("{e}"))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.checked_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = BigInt::from(c);
        self.ring.element(self.coeffs.iter().map(|x| x * &c).collect())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
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

    /// Inverse of a unit of the form `±ζ^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (negative, k) = self.ring.unit_log(self)?;
        let inv = self.ring.zeta_pow(-(k as i64));
        Some(if negative { -inv } else { inv })
    }

    /// Numerical value under `ζ_n ↦ e^(2πi/n)`. Only for inequality
    /// witnesses; equality is always decided on coordinates.
    pub fn embed_complex(&self) -> Complex64 {
        let n = self.ring.n() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(1.0, angle) * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// `|a|` under the fixed complex embedding.
    pub fn abs(&self) -> f64 {
        self.embed_complex().norm()
    }
}

crate::forward_binops!(CycInt);

impl std::ops::Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.ring.element(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coeffs == other.coeffs
    }
}

impl Eq for CycInt {}

impl Hash for CycInt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.n().hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for CycInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ring
            .n()
            .cmp(&other.ring.n())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for CycInt {
    /// `a0 + a1*z + a2*z^2 @n`, zero coordinates omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " @{}", self.ring.n())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt({self})")
    }
}

impl FromStr for CycInt {
    type Err = CycloError;

    /// Parses the text form. Any integer exponent of `z` is accepted and
    /// reduced.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| CycloError::Parse {
            input: input.to_string(),
            reason,
        };
        let (body, n) = input
            .rsplit_once('@')
            .ok_or_else(|| err("missing '@n' conductor".into()))?;
        let n: u64 = n.trim().parse().map_err(|_| err("bad conductor".into()))?;
        let ring = CycRing::try_new(n).map_err(|e| err(e.to_string()))?;
        if body.contains('q') {
            return Err(err("unexpected 'q'".into()));
        }
        let poly: LaurentPoly = body
            .replace('z', "q")
            .parse()
            .map_err(|e: crate::poly::PolyError| err(e.to_string()))?;
        Ok(poly.eval_zeta(&ring))
    }
}

fn big_to_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

impl Serialize for CycInt {
    /// `{"n": n, "coeffs": [a0, …]}`.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let coeffs: Vec<serde_json::Value> = self.coeffs.iter().map(big_to_json).collect();
        let mut st = s.serialize_struct("CycInt", 2)?;
        st.serialize_field("n", &self.ring.n())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: u64,
            coeffs: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(d)?;
        let ring = CycRing::try_new(raw.n).map_err(serde::de::Error::custom)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(num) => num
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| serde::de::Error::custom("non-integer coordinate")),
                serde_json::Value::String(s) => s.parse::<BigInt>().map_err(serde::de::Error::custom),
                _ => Err(serde::de::Error::custom("bad coordinate")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ring.from_big_coeffs(coeffs))
    }
}
