//! 2×2 matrices over the Laurent ring or a cyclotomic ring, and the
//! generators `R_q`, `S_q` of the q-deformed modular group.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::cyclo::{CycInt, CycRing};
use crate::poly::LaurentPoly;

/// Commutative ring elements usable as matrix entries.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn is_zero(&self) -> bool;
}

impl Ring for LaurentPoly {
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl Ring for CycInt {
    fn is_zero(&self) -> bool {
        CycInt::is_zero(self)
    }
}

/// A ring together with a distinguished invertible value of `q`: either the
/// formal variable ([`Laurent`]) or `ζ_n` ([`CycRing`]).
pub trait QRing {
    type Elem: Ring;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn int(&self, v: i64) -> Self::Elem;
    /// `q^k` for any integer `k`.
    fn q_pow(&self, k: i64) -> Self::Elem;
    /// Inverse of a unit `±q^k`, if the argument is one.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// `[k]_q` for any integer `k`.
    fn q_integer(&self, k: i64) -> Self::Elem {
        // (q^k - 1)/(q - 1) summed termwise
        let mut acc = self.zero();
        if k >= 0 {
            for e in 0..k {
                acc = acc + self.q_pow(e);
            }
        } else {
            for e in k..0 {
                acc = acc - self.q_pow(e);
            }
        }
        acc
    }
}

/// The Laurent polynomial ring with `q` the formal variable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Laurent;

impl QRing for Laurent {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn int(&self, v: i64) -> LaurentPoly {
        LaurentPoly::constant(v)
    }
    fn q_pow(&self, k: i64) -> LaurentPoly {
        LaurentPoly::q_pow(k)
    }
    fn unit_inverse(&self, a: &LaurentPoly) -> Option<LaurentPoly> {
        let mut terms = a.terms();
        let (e, c) = terms.next()?;
        if terms.next().is_some() || !c.abs().is_one() {
            return None;
        }
        Some(LaurentPoly::monomial(c.clone(), -e))
    }
    fn q_integer(&self, k: i64) -> LaurentPoly {
        LaurentPoly::q_integer(k)
    }
}

impl QRing for CycRing {
    type Elem = CycInt;

    fn zero(&self) -> CycInt {
        CycRing::zero(self)
    }
    fn one(&self) -> CycInt {
        CycRing::one(self)
    }
    fn int(&self, v: i64) -> CycInt {
        CycRing::int(self, v)
    }
    fn q_pow(&self, k: i64) -> CycInt {
        self.zeta_pow(k)
    }
    fn unit_inverse(&self, a: &CycInt) -> Option<CycInt> {
        a.unit_inverse()
    }
    fn q_integer(&self, k: i64) -> CycInt {
        LaurentPoly::q_integer(k).eval_zeta(self)
    }
}

/// A 2×2 matrix `[[a, b], [c, d]]`. The derived ordering compares
/// `a, b, c, d` in turn, which for cyclotomic entries is the ordering of the
/// concatenated coordinate vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

/// Matrix over `Z[q, q^-1]`.
pub type MatL = Mat2<LaurentPoly>;
/// Matrix over `Z[ζ_n]`.
pub type MatC = Mat2<CycInt>;

impl<T> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Self { a, b, c, d }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat2<U> {
        Mat2 {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
        }
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl<T: Ring> Mat2<T> {
    pub fn identity<K: QRing<Elem = T>>(k: &K) -> Self {
        Self::scalar(k, k.one())
    }

    pub fn scalar<K: QRing<Elem = T>>(k: &K, lambda: T) -> Self {
        Self::new(lambda.clone(), k.zero(), k.zero(), lambda)
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        Self {
            a: self.a.clone() * &o.a + &(self.b.clone() * &o.c),
            b: self.a.clone() * &o.b + &(self.b.clone() * &o.d),
            c: self.c.clone() * &o.a + &(self.d.clone() * &o.c),
            d: self.c.clone() * &o.b + &(self.d.clone() * &o.d),
        }
    }

    pub fn trace(&self) -> T {
        self.a.clone() + &self.d
    }

    pub fn det(&self) -> T {
        self.a.clone() * &self.d - self.b.clone() * &self.c
    }

    /// `trace^2 - 4 det`.
    pub fn discriminant(&self) -> T {
        let t = self.trace();
        let det = self.det();
        let four_det = det.clone() + &det;
        let four_det = four_det.clone() + &four_det;
        t.clone() * &t - four_det
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, lambda: &T) -> Self {
        self.map(|x| x.clone() * lambda)
    }

    pub fn is_diagonal(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }

    pub fn is_scalar(&self) -> bool {
        self.is_diagonal() && self.a == self.d
    }

    pub fn is_identity<K: QRing<Elem = T>>(&self, k: &K) -> bool {
        self.is_scalar() && self.a == k.one()
    }

    pub fn pow_nonneg<K: QRing<Elem = T>>(&self, k: &K, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Adjugate divided by the determinant, when the determinant is a unit
    /// `±q^k`.
    pub fn inverse<K: QRing<Elem = T>>(&self, k: &K) -> Option<Self> {
        let inv_det = k.unit_inverse(&self.det())?;
        Some(Self {
            a: self.d.clone() * &inv_det,
            b: -(self.b.clone() * &inv_det),
            c: -(self.c.clone() * &inv_det),
            d: self.a.clone() * &inv_det,
        })
    }

    pub fn pow<K: QRing<Elem = T>>(&self, k: &K, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow_nonneg(k, e as u64))
        } else {
            Some(self.inverse(k)?.pow_nonneg(k, e.unsigned_abs()))
        }
    }

    pub fn commutes_with(&self, o: &Self) -> bool {
        self.mul_ref(o) == o.mul_ref(self)
    }
}

impl<T: Ring> Mul<&Mat2<T>> for &Mat2<T> {
    type Output = Mat2<T>;
    fn mul(self, rhs: &Mat2<T>) -> Mat2<T> {
        self.mul_ref(rhs)
    }
}

impl<T: Ring> Mul for Mat2<T> {
    type Output = Mat2<T>;
    fn mul(self, rhs: Mat2<T>) -> Mat2<T> {
        self.mul_ref(&rhs)
    }
}

impl<T: fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{:?}, {:?}], [{:?}, {:?}]]", self.a, self.b, self.c, self.d)
    }
}

/// `R_q = [[q, 1], [0, 1]]`.
pub fn r_gen<K: QRing>(k: &K) -> Mat2<K::Elem> {
    Mat2::new(k.q_pow(1), k.one(), k.zero(), k.one())
}

/// `S_q = [[0, -q^-1], [1, 0]]`.
pub fn s_gen<K: QRing>(k: &K) -> Mat2<K::Elem> {
    Mat2::new(k.zero(), -k.q_pow(-1), k.one(), k.zero())
}

/// `R_q^-1 = [[q^-1, -q^-1], [0, 1]]`.
pub fn r_inv<K: QRing>(k: &K) -> Mat2<K::Elem> {
    Mat2::new(k.q_pow(-1), -k.q_pow(-1), k.zero(), k.one())
}

/// `S_q^-1 = [[0, 1], [-q, 0]]`.
pub fn s_inv<K: QRing>(k: &K) -> Mat2<K::Elem> {
    Mat2::new(k.zero(), k.one(), -k.q_pow(1), k.zero())
}

/// Specialization `q ↦ ζ_n` of a Laurent matrix.
pub fn specialize_mat(m: &MatL, ring: &CycRing) -> MatC {
    m.map(|p| p.eval_zeta(ring))
}

/// Value at `q = 1`, entrywise.
pub fn at_one(m: &MatL) -> Mat2<BigInt> {
    m.map(|p| p.eval_int_exact(1).expect("q = 1 is a unit"))
}
