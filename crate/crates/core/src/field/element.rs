use std::fmt;

use super::{BinaryField, Domain, Field};
use crate::error::{Error, Result};

/// A base-field element bundled with its context. Operations check that both
/// operands live in the same field; the kernels work on bare `u32` values
/// instead and never pay for the check.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct FieldElement {
    field: BinaryField,
    bits: u32,
}

impl FieldElement {
    pub fn new(field: BinaryField, bits: u32) -> Result<Self> {
        if field.degree() < 32 && bits >> field.degree() != 0 {
            return Err(Error::Parse(format!("{bits:#x} is not reduced for {field:?}")));
        }
        Ok(FieldElement { field, bits })
    }

    pub fn zero(field: BinaryField) -> Self {
        FieldElement { field, bits: 0 }
    }

    pub fn one(field: BinaryField) -> Self {
        FieldElement { field, bits: 1 }
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    fn same(&self, other: &Self) -> Result<BinaryField> {
        if self.field == other.field {
            Ok(self.field)
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let field = self.same(other)?;
        Ok(FieldElement { field, bits: self.bits ^ other.bits })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let field = self.same(other)?;
        Ok(FieldElement { field, bits: field.mul_bits(self.bits, other.bits) })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let field = self.same(other)?;
        Ok(FieldElement { field, bits: field.div(&self.bits, &other.bits)? })
    }

    pub fn inv(&self) -> Result<Self> {
        let bits = self.field.inv_bits(self.bits).ok_or(Error::DivisionByZero)?;
        Ok(FieldElement { bits, ..*self })
    }

    pub fn pow(&self, e: u64) -> Self {
        FieldElement { bits: self.field.pow(&self.bits, e), ..*self }
    }

    /// `self^(2^k)`.
    pub fn frobenius(&self, k: u32) -> Self {
        FieldElement { bits: self.field.frobenius(&self.bits, k), ..*self }
    }

    pub fn sqrt(&self) -> Self {
        FieldElement { bits: self.field.sqrt(&self.bits), ..*self }
    }

    pub fn to_hex(&self) -> String {
        format!("{:x}", self.bits)
    }

    pub fn from_hex(field: BinaryField, s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix("0x").unwrap_or(t);
        let bits = u32::from_str_radix(t, 16).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        FieldElement::new(field, bits)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x} in GF(2^{})", self.bits, self.field.degree())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn checked_operations() {
        let f4 = make_field(2).unwrap();
        let u = FieldElement::new(f4, 2).unwrap();
        let u1 = u.add(&FieldElement::one(f4)).unwrap();
        assert_eq!(u.mul(&u1).unwrap(), FieldElement::one(f4));
        assert!(u.add(&u).unwrap().is_zero());
        assert_eq!(u.frobenius(1), u1);
        assert_eq!(u.div(&FieldElement::zero(f4)), Err(Error::DivisionByZero));
        let f8 = make_field(3).unwrap();
        assert_eq!(u.add(&FieldElement::one(f8)), Err(Error::ContextMismatch));
        assert!(FieldElement::new(f4, 4).is_err());
    }

    #[test]
    fn hex_round_trip() {
        let f = make_field(8).unwrap();
        for b in [0u32, 1, 0x1b, 0xff] {
            let a = FieldElement::new(f, b).unwrap();
            assert_eq!(FieldElement::from_hex(f, &a.to_hex()).unwrap(), a);
        }
        assert!(FieldElement::from_hex(f, "zz").is_err());
        assert!(FieldElement::from_hex(f, "100").is_err());
    }
}
