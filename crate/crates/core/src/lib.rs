//! Exact arithmetic for q-deformed rational numbers and the q-deformed
//! modular group `G_q = <R_q, S_q>` specialized at roots of unity.
//!
//! The crate is organized bottom-up:
//!
//! - [`poly`]: integer Laurent polynomials in `q`.
//! - [`cyclo`]: cyclotomic integers `Z[ζ_n]` in canonical reduced form.
//! - [`matrix`]: 2×2 matrices over either ring and the generators `R_q`, `S_q`.
//! - [`qrat`]: negative continued fractions, q-rationals, the ♭-deformation
//!   and normalized Jones polynomials of rational links.
//! - [`grp`]: words, breadth-first group closure and group analysis.
//! - [`cert`]: finiteness certificates, structure witnesses and the sweeps
//!   that check the divisibility and vanishing laws.
//!
//! ```
//! use qmodular::{grp, CycRing};
//!
//! let ring = CycRing::new(5);
//! let outcome = grp::closure(&grp::Generator::rs(&ring), 10_000);
//! assert_eq!(outcome.order(), Some(600));
//! ```

/// Implements `+ - *` for all owned/borrowed operand combinations in terms
/// of inherent `add_ref`, `sub_ref` and `mul_ref` methods.
#[macro_export]
#[doc(hidden)]
macro_rules! forward_binops {
    ($t:ty) => {
        $crate::forward_binops!(@one $t, Add, add, add_ref);
        $crate::forward_binops!(@one $t, Sub, sub, sub_ref);
        $crate::forward_binops!(@one $t, Mul, mul, mul_ref);
    };
    (@one $t:ty, $tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                self.$f(rhs)
            }
        }
        impl std::ops::$tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                (&self).$f(rhs)
            }
        }
        impl std::ops::$tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                self.$f(&rhs)
            }
        }
        impl std::ops::$tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$f(&rhs)
            }
        }
    };
}

pub mod cert;
pub mod cyclo;
pub mod grp;
pub mod matrix;
pub mod poly;
pub mod qrat;
pub mod report;

pub use cert::{Certificate, StructureWitness};
pub use cyclo::{CycInt, CycRing};
pub use grp::{ClosureOutcome, GroupReport, Word};
pub use matrix::{Mat2, MatC, MatL};
pub use poly::LaurentPoly;
pub use qrat::{FlatPair, Fraction, NegCf, QRationalPair};
pub use report::{Check, Status, SweepReport};
