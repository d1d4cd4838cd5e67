use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::{check_cap, Domain, Field};
use crate::error::{Error, Result};
use crate::unipoly::UniPoly;

struct ExtInner<F: Field> {
    base: F,
    modulus: UniPoly<F>,
    degree: usize,
}

/// K = F[x]/(m(x)) for an irreducible monic `m` over the field `F`.
///
/// Elements are coefficient vectors of length exactly `deg m` (low to high),
/// so structural equality is field equality. Arithmetic stays in the tower;
/// nothing is flattened to an absolute representation.
#[derive(Clone)]
pub struct ExtField<F: Field> {
    inner: Arc<ExtInner<F>>,
}

impl<F: Field> ExtField<F> {
    /// Verifies irreducibility of `modulus` before building the context.
    pub fn new(modulus: &UniPoly<F>) -> Result<Self> {
        let degree = modulus.degree().ok_or(Error::ZeroPolynomial)?;
        if degree == 0 || !modulus.is_irreducible() {
            return Err(Error::InvalidModel(format!("quotient modulus {modulus} is not irreducible")));
        }
        let modulus = modulus.monic();
        Ok(ExtField {
            inner: Arc::new(ExtInner { base: modulus.field().clone(), modulus, degree }),
        })
    }

    pub fn base(&self) -> &F {
        &self.inner.base
    }

    pub fn modulus(&self) -> &UniPoly<F> {
        &self.inner.modulus
    }

    /// Relative degree over the base field.
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    /// The image of `a` in F[x]/(m), as a padded coefficient vector.
    pub fn reduce(&self, a: &UniPoly<F>) -> Vec<F::Elem> {
        let r = a.rem(&self.inner.modulus).expect("modulus is nonzero");
        self.pad(r.into_coeffs())
    }

    /// The class of `x`.
    pub fn generator(&self) -> Vec<F::Elem> {
        self.reduce(&UniPoly::x(self.inner.base.clone()))
    }

    pub fn embed_base(&self, c: &F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.inner.base.zero(); self.inner.degree];
        v[0] = c.clone();
        v
    }

    fn pad(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        v.resize(self.inner.degree, self.inner.base.zero());
        v
    }

    fn to_poly(&self, a: &[F::Elem]) -> UniPoly<F> {
        UniPoly::new(self.inner.base.clone(), a.to_vec())
    }
}

impl<F: Field> PartialEq for ExtField<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl<F: Field> fmt::Debug for ExtField<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[x]/({})", self.inner.base, self.inner.modulus)
    }
}

impl<F: Field> Domain for ExtField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.inner.base.zero(); self.inner.degree]
    }

    fn one(&self) -> Self::Elem {
        self.embed_base(&self.inner.base.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.inner.base.is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.inner.base.add(x, y)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&self.to_poly(a).mul(&self.to_poly(b)))
    }

    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

impl<F: Field> Field for ExtField<F> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        // Extended Euclid: s*a + t*m = gcd = 1 since m is irreducible.
        let (g, s, _) = self.to_poly(a).ext_gcd(&self.inner.modulus);
        debug_assert!(g.degree() == Some(0));
        Some(self.reduce(&s))
    }

    fn abs_degree(&self) -> u32 {
        self.inner.base.abs_degree() * self.inner.degree as u32
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        (0..self.inner.degree).map(|_| self.inner.base.random(rng)).collect()
    }

    fn elements(&self, cap: u128) -> Result<Vec<Self::Elem>> {
        check_cap(self.cardinality(), cap)?;
        let base = self.inner.base.elements(cap)?;
        let mut out = vec![Vec::new()];
        for _ in 0..self.inner.degree {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<F::Elem>| {
                    base.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c.clone());
                        v
                    })
                })
                .collect();
        }
        // Lexicographic in the low coefficient first keeps zero in front.
        Ok(out)
    }

    fn format_elem(&self, a: &Self::Elem) -> String {
        let parts: Vec<String> = a.iter().map(|c| self.inner.base.format_elem(c)).collect();
        format!("[{}]", parts.join(","))
    }

    fn elem_json(&self, a: &Self::Elem) -> serde_json::Value {
        serde_json::Value::Array(a.iter().map(|c| self.inner.base.elem_json(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, ENUMERATION_CAP};

    fn gf2_poly(bits: &[u32]) -> UniPoly<crate::field::BinaryField> {
        UniPoly::new(make_field(1).unwrap(), bits.to_vec())
    }

    #[test]
    fn quotient_of_gf2_by_quadratic_is_gf4() {
        let k = ExtField::new(&gf2_poly(&[1, 1, 1])).unwrap();
        assert_eq!(k.abs_degree(), 2);
        let u = k.generator();
        let u1 = k.add(&u, &k.one());
        assert_eq!(k.mul(&u, &u1), k.one());
        assert_eq!(k.frobenius(&u, 1), u1);
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        assert!(ExtField::new(&gf2_poly(&[1, 0, 1])).is_err());
        assert!(ExtField::new(&gf2_poly(&[1])).is_err());
    }

    #[test]
    fn multiplicative_group_order_by_exhaustion() {
        // GF(4)[x]/(x^2 + x + u) has 16 elements; x^2 + x + u is irreducible
        // over GF(4) because u has absolute trace 1.
        let f4 = make_field(2).unwrap();
        let m = UniPoly::new(f4, vec![2, 1, 1]);
        let k = ExtField::new(&m).unwrap();
        let elems = k.elements(ENUMERATION_CAP).unwrap();
        assert_eq!(elems.len(), 16);
        assert!(k.is_zero(&elems[0]));
        let one = k.one();
        for a in &elems[1..] {
            let ai = k.inv(a).unwrap();
            assert_eq!(k.mul(a, &ai), one);
            assert_eq!(k.pow(a, 15), one);
            assert_eq!(k.frobenius(a, 4), *a);
        }
        // Some element has order exactly 15.
        assert!(elems[1..].iter().any(|a| k.pow(a, 3) != one && k.pow(a, 5) != one));
    }

    #[test]
    fn tower_over_gf8_by_cubic() {
        let f8 = make_field(3).unwrap();
        // Find an irreducible cubic over GF(8) by scanning.
        let m = (0..8u32)
            .flat_map(|a| (1..8u32).map(move |b| UniPoly::new(f8, vec![b, a, 0, 1])))
            .find(|p| p.is_irreducible())
            .unwrap();
        let k = ExtField::new(&m).unwrap();
        assert_eq!(k.abs_degree(), 9);
        let mut rng = rand::rng();
        for _ in 0..100 {
            let a = k.random(&mut rng);
            let b = k.random(&mut rng);
            let c = k.random(&mut rng);
            assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
            assert_eq!(k.square(&k.sqrt(&a)), a);
        }
    }
}
