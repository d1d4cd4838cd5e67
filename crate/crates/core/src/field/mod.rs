//! Exact arithmetic in binary fields GF(2^r) and in quotient-field towers
//! built on top of them.
//!
//! Algorithms are written against the [`Domain`] and [`Field`] traits with an
//! explicit context value: a context is cheap to clone, and elements are plain
//! values that carry no reference back to their field.

mod binary;
mod element;
mod ext;
pub(crate) mod gf2;

pub use binary::{make_field, BinaryField, Embedding};
pub use element::FieldElement;
pub use ext::ExtField;

use std::fmt;
use std::hash::Hash;

use rand::Rng;

use crate::error::{Error, Result};

/// Default cap for [`Field::elements`].
pub const ENUMERATION_CAP: u128 = 1 << 24;

/// A commutative ring of characteristic 2 without zero divisors, in which
/// exact quotients can be computed. Subtraction coincides with addition.
pub trait Domain: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a / b` if `b` divides `a`, otherwise `None`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// A finite field of characteristic 2 with `2^abs_degree` elements.
pub trait Field: Domain + PartialEq {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Degree over GF(2).
    fn abs_degree(&self) -> u32;

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Every element exactly once, zero first, in a fixed order.
    fn elements(&self, cap: u128) -> Result<Vec<Self::Elem>>;

    /// Human-readable form (lowercase hex for base fields).
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn elem_json(&self, a: &Self::Elem) -> serde_json::Value {
        serde_json::Value::String(self.format_elem(a))
    }

    fn cardinality(&self) -> u128 {
        1u128 << self.abs_degree()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let bi = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &bi))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    /// `a^(2^k)`.
    fn frobenius(&self, a: &Self::Elem, k: u32) -> Self::Elem {
        let k = k % self.abs_degree();
        let mut x = a.clone();
        for _ in 0..k {
            x = self.square(&x);
        }
        x
    }

    /// The unique square root, `a^(2^(abs_degree - 1))`.
    fn sqrt(&self, a: &Self::Elem) -> Self::Elem {
        self.frobenius(a, self.abs_degree() - 1)
    }
}

pub(crate) fn check_cap(size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::EnumerationCap { size, cap })
    } else {
        Ok(())
    }
}
