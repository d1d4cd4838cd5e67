//! Dense univariate polynomials over a [`Field`], plus the generic machinery
//! (polynomial rings over a [`Domain`], subresultants) used for elimination.

mod factor;
mod resultant;

pub use resultant::{resultant, PolyRing};

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Coefficients are stored low to high with no trailing zeros, so the zero
/// polynomial has an empty coefficient vector.
#[derive(Clone)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        UniPoly { field, coeffs: vec![one] }
    }

    pub fn x(field: F) -> Self {
        Self::monomial(field.clone(), field.one(), 1)
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        UniPoly::new(field, vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        UniPoly::new(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn like(&self, coeffs: Vec<F::Elem>) -> Self {
        UniPoly::new(self.field.clone(), coeffs)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) if self.field.is_one(l) => self.clone(),
            Some(l) => {
                let li = self.field.inv(l).expect("leading coefficient is nonzero");
                self.scale(&li)
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.like(self.coeffs.iter().map(|a| self.field.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { field: self.field.clone(), coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.like(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let p = f.mul(a, b);
                out[i + j] = f.add(&out[i + j], &p);
            }
        }
        self.like(out)
    }

    pub fn square(&self) -> Self {
        // Cross terms cancel in characteristic 2.
        let f = &self.field;
        let mut out = vec![f.zero(); (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[2 * i] = f.square(a);
        }
        self.like(out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// `(q, r)` with `self = q*b + r` and `deg r < deg b`.
    pub fn divrem(&self, b: &Self) -> Result<(Self, Self)> {
        self.check(b)?;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lb_inv = f.inv(b.lead().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((UniPoly::zero(f.clone()), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - db];
        for k in (db..r.len()).rev() {
            if f.is_zero(&r[k]) {
                continue;
            }
            let c = f.mul(&r[k], &lb_inv);
            for (j, bj) in b.coeffs.iter().enumerate() {
                let t = f.mul(&c, bj);
                r[k - db + j] = f.add(&r[k - db + j], &t);
            }
            q[k - db] = c;
        }
        r.truncate(db);
        Ok((self.like(q), self.like(r)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divrem(b)?.1)
    }

    /// Quotient when `b` divides `self` exactly.
    pub fn exact_div(&self, b: &Self) -> Result<Option<Self>> {
        let (q, r) = self.divrem(b)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g` and `g` the monic gcd.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let zero = UniPoly::zero(self.field.clone());
        let one = UniPoly::one(self.field.clone());
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("divisor is nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.add(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.add(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = self.field.inv(l).unwrap();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
        }
    }

    /// Formal derivative: in characteristic 2 only odd-exponent terms survive.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| if k % 2 == 1 { c.clone() } else { f.zero() })
            .collect();
        self.like(coeffs)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self * other mod m`.
    pub fn mulmod(&self, other: &Self, m: &Self) -> Result<Self> {
        self.mul(other).rem(m)
    }

    /// `self^(2^k) mod m`, by `k` squarings.
    pub fn frobenius_mod(&self, k: u64, m: &Self) -> Result<Self> {
        let mut h = self.rem(m)?;
        for _ in 0..k {
            h = h.square().rem(m)?;
        }
        Ok(h)
    }

    /// Number of factors of `x` and the cofactor.
    pub fn strip_x(&self) -> (Self, usize) {
        let v = self
            .coeffs
            .iter()
            .position(|c| !self.field.is_zero(c))
            .unwrap_or(0);
        (self.like(self.coeffs[v..].to_vec()), v)
    }

    /// The square root of a polynomial whose odd coefficients vanish.
    pub fn sqrt(&self) -> Option<Self> {
        let f = &self.field;
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !f.is_zero(c)) {
            return None;
        }
        Some(self.like(self.coeffs.iter().step_by(2).map(|c| f.sqrt(c)).collect()))
    }

    /// Coefficient-wise image in another field.
    pub fn map<G: Field>(&self, g: &G, phi: impl Fn(&F::Elem) -> G::Elem) -> UniPoly<G> {
        UniPoly::new(g.clone(), self.coeffs.iter().map(phi).collect())
    }

    /// Reversal with respect to a declared degree `n >= deg`:
    /// `x^n * self(1/x)`.
    pub fn reverse(&self, n: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n + 1, self.field.zero());
        coeffs.reverse();
        self.like(coeffs)
    }

    /// Resultant with respect to `x`.
    pub fn resultant(&self, other: &Self) -> Result<F::Elem> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(resultant(&self.field, &self.coeffs, &other.coeffs))
    }
}

impl<F: Field> PartialEq for UniPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for UniPoly<F> {}

/// Degree first, then coefficients from the top down.
impl<F: Field> Ord for UniPoly<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<F: Field> PartialOrd for UniPoly<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = self.field.format_elem(c);
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
