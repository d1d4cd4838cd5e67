use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rand::Rng;

use super::{check_cap, gf2, Domain, Field};
use crate::error::{Error, Result};

/// Fields up to this degree get log/antilog tables.
const TABLE_DEGREE: u32 = 16;

struct Tables {
    degree: u32,
    modulus: u64,
    // exp has length 2 * (2^r - 1) so that log a + log b never needs a reduction.
    log: Vec<u32>,
    exp: Vec<u32>,
}

/// GF(2^r) = GF(2)[t]/(m(t)), `1 <= r <= 32`. Elements are `u32` bit-vectors,
/// little-endian in `t`.
///
/// Contexts are interned: building the same field twice returns handles to
/// the same immutable tables, so the handle is `Copy` and comparisons are
/// cheap.
#[derive(Clone, Copy)]
pub struct BinaryField {
    t: &'static Tables,
}

fn registry() -> &'static Mutex<HashMap<u64, &'static Tables>> {
    static REG: OnceLock<Mutex<HashMap<u64, &'static Tables>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn canonical_moduli() -> &'static Mutex<[u64; 33]> {
    static MODULI: OnceLock<Mutex<[u64; 33]>> = OnceLock::new();
    MODULI.get_or_init(|| Mutex::new([0; 33]))
}

/// Canonical modulus of degree `r`: the lexicographically least irreducible
/// polynomial over GF(2).
pub fn canonical_modulus(r: u32) -> Result<u64> {
    if !(1..=32).contains(&r) {
        return Err(Error::FieldDegree(r));
    }
    let mut table = canonical_moduli().lock().unwrap();
    if table[r as usize] == 0 {
        table[r as usize] = gf2::least_irreducible(r);
    }
    Ok(table[r as usize])
}

/// The base field GF(2^r) with its canonical modulus.
pub fn make_field(r: u32) -> Result<BinaryField> {
    BinaryField::with_modulus(r, canonical_modulus(r)?)
}

impl BinaryField {
    pub fn new(r: u32) -> Result<Self> {
        make_field(r)
    }

    /// GF(2)[t]/(modulus); `modulus` must be irreducible of degree `r`.
    pub fn with_modulus(r: u32, modulus: u64) -> Result<Self> {
        if !(1..=32).contains(&r) {
            return Err(Error::FieldDegree(r));
        }
        if gf2::degree(modulus as u128) != r as i32 || !gf2::is_irreducible(modulus) {
            return Err(Error::Reducible { degree: r, modulus });
        }
        let mut reg = registry().lock().unwrap();
        if let Some(t) = reg.get(&modulus) {
            return Ok(BinaryField { t });
        }
        let t: &'static Tables = Box::leak(Box::new(build_tables(r, modulus)));
        reg.insert(modulus, t);
        Ok(BinaryField { t })
    }

    pub fn degree(&self) -> u32 {
        self.t.degree
    }

    pub fn modulus(&self) -> u64 {
        self.t.modulus
    }

    pub fn size(&self) -> u64 {
        1u64 << self.t.degree
    }

    /// Carry-less multiplication followed by reduction; used when no tables
    /// exist and to build them.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        gf2::mulmod(a as u64, b as u64, self.t.modulus) as u32
    }

    #[inline]
    pub fn mul_bits(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = self.t;
        if t.log.is_empty() {
            self.mul_slow(a, b)
        } else {
            t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
        }
    }

    pub fn inv_bits(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let t = self.t;
        if t.log.is_empty() {
            // a^(2^r - 2)
            let e = (1u64 << t.degree) - 2;
            Some(self.pow(&a, e))
        } else {
            let n = (1u32 << t.degree) - 1;
            Some(t.exp[((n - t.log[a as usize]) % n) as usize])
        }
    }

    /// Whether `a` generates the multiplicative group.
    pub fn is_generator(&self, a: u32) -> bool {
        if a == 0 {
            return false;
        }
        let n = (1u64 << self.t.degree) - 1;
        gf2::prime_factors(n)
            .into_iter()
            .all(|p| self.pow(&a, n / p) != 1)
    }

    /// Ring map GF(2^r) -> `dst`, where `r` divides the degree of `dst`.
    pub fn embedding_into(&self, dst: &BinaryField) -> Result<Embedding> {
        let (r, s) = (self.degree(), dst.degree());
        if s % r != 0 {
            return Err(Error::ContextMismatch);
        }
        let m = self.t.modulus;
        let eval = |b: u32| {
            // Horner evaluation of m(t) at b in dst.
            let mut acc = 0u32;
            for k in (0..=r).rev() {
                acc = dst.mul_bits(acc, b) ^ ((m >> k) & 1) as u32;
            }
            acc
        };
        let root = if s <= 20 {
            (0..dst.size())
                .map(|b| b as u32)
                .find(|&b| eval(b) == 0)
        } else {
            let poly = crate::unipoly::UniPoly::new(
                *dst,
                (0..=r).map(|k| ((m >> k) & 1) as u32).collect(),
            );
            poly.roots().into_iter().min()
        }
        .ok_or(Error::ContextMismatch)?;
        debug_assert_eq!(eval(root), 0);
        let mut images = Vec::with_capacity(r as usize);
        let mut p = 1u32;
        for _ in 0..r {
            images.push(p);
            p = dst.mul_bits(p, root);
        }
        Ok(Embedding { src: *self, dst: *dst, images })
    }
}

fn build_tables(r: u32, modulus: u64) -> Tables {
    let mut t = Tables { degree: r, modulus, log: Vec::new(), exp: Vec::new() };
    if r > TABLE_DEGREE {
        return t;
    }
    let n = (1usize << r) - 1;
    let pow = |a: u64, mut e: u64| {
        let (mut acc, mut base) = (1u64, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = gf2::mulmod(acc, base, modulus);
            }
            base = gf2::mulmod(base, base, modulus);
            e >>= 1;
        }
        acc
    };
    let primes = gf2::prime_factors(n as u64);
    let gen = (1..=n as u64)
        .find(|&g| primes.iter().all(|&p| pow(g, n as u64 / p) != 1))
        .expect("multiplicative group is cyclic") as u32;
    let mut log = vec![0u32; n + 1];
    let mut exp = vec![0u32; 2 * n];
    let mut x = 1u32;
    for k in 0..n {
        exp[k] = x;
        exp[k + n] = x;
        log[x as usize] = k as u32;
        x = gf2::mulmod(x as u64, gen as u64, modulus) as u32;
    }
    t.log = log;
    t.exp = exp;
    t
}

impl PartialEq for BinaryField {
    fn eq(&self, other: &Self) -> bool {
        self.t.degree == other.t.degree && self.t.modulus == other.t.modulus
    }
}

impl Eq for BinaryField {}

impl fmt::Debug for BinaryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})[mod {:#x}]", self.t.degree, self.t.modulus)
    }
}

impl Domain for BinaryField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        a ^ b
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_bits(*a, *b)
    }
    fn exact_div(&self, a: &u32, b: &u32) -> Option<u32> {
        self.inv_bits(*b).map(|bi| self.mul_bits(*a, bi))
    }
}

impl Field for BinaryField {
    fn inv(&self, a: &u32) -> Option<u32> {
        self.inv_bits(*a)
    }

    fn abs_degree(&self) -> u32 {
        self.t.degree
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        if self.t.degree == 32 {
            rng.random::<u32>()
        } else {
            rng.random_range(0..(1u32 << self.t.degree))
        }
    }

    fn elements(&self, cap: u128) -> Result<Vec<u32>> {
        check_cap(self.cardinality(), cap)?;
        Ok((0..self.size()).map(|b| b as u32).collect())
    }

    fn format_elem(&self, a: &u32) -> String {
        format!("{a:x}")
    }
}

/// The ring map GF(2^r) -> GF(2^s) sending `t` to a fixed root of the source
/// modulus.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: BinaryField,
    dst: BinaryField,
    images: Vec<u32>,
}

impl Embedding {
    pub fn source(&self) -> BinaryField {
        self.src
    }

    pub fn target(&self) -> BinaryField {
        self.dst
    }

    /// The map is GF(2)-linear, so it is a xor of images of basis vectors.
    pub fn apply(&self, a: u32) -> u32 {
        let mut out = 0;
        let mut a = a;
        let mut k = 0;
        while a != 0 {
            if a & 1 == 1 {
                out ^= self.images[k];
            }
            a >>= 1;
            k += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_small_fields() {
        assert_eq!(make_field(1).unwrap().modulus(), 0b10);
        assert_eq!(make_field(2).unwrap().modulus(), 0b111);
        assert_eq!(make_field(4).unwrap().modulus(), 0b10011);
        assert!(make_field(0).is_err());
        assert!(make_field(33).is_err());
    }

    #[test]
    fn gf4_products() {
        let k = make_field(2).unwrap();
        let u = 0b10;
        assert_eq!(k.mul(&u, &(u ^ 1)), 1);
        assert_eq!(k.frobenius(&u, 1), u ^ 1);
    }

    #[test]
    fn gf2_is_trivial() {
        let k = make_field(1).unwrap();
        assert_eq!(k.elements(ENUM).unwrap(), vec![0, 1]);
        assert_eq!(k.div(&1, &1).unwrap(), 1);
        assert_eq!(k.div(&1, &0), Err(Error::DivisionByZero));
        assert_eq!(k.sqrt(&1), 1);
    }

    const ENUM: u128 = super::super::ENUMERATION_CAP;

    #[test]
    fn table_and_slow_paths_agree() {
        for r in [3, 8, 13, 16] {
            let k = make_field(r).unwrap();
            let mut rng = rand::rng();
            for _ in 0..2000 {
                let a = k.random(&mut rng);
                let b = k.random(&mut rng);
                assert_eq!(k.mul(&a, &b), k.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn large_field_inverse() {
        for r in [17, 24, 31, 32] {
            let k = make_field(r).unwrap();
            let mut rng = rand::rng();
            for _ in 0..50 {
                let a = k.random(&mut rng);
                if a == 0 {
                    continue;
                }
                assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), 1);
                assert_eq!(k.frobenius(&a, r), a);
            }
        }
    }

    #[test]
    fn gf8_is_cyclic_and_square_roots_exist() {
        let k = make_field(3).unwrap();
        let elems = k.elements(ENUM).unwrap();
        assert_eq!(elems.len(), 8);
        assert_eq!(elems[0], 0);
        let gen = elems.iter().copied().find(|&g| k.is_generator(g)).unwrap();
        let mut seen: Vec<u32> = (0..7).map(|e| k.pow(&gen, e)).collect();
        seen.sort();
        assert_eq!(seen, (1..8).collect::<Vec<_>>());
        for c in elems {
            let s = k.sqrt(&c);
            assert_eq!(k.square(&s), c);
        }
    }

    #[test]
    fn custom_modulus_is_checked() {
        // t^4 + t^3 + 1 is irreducible, t^4 + 1 is not.
        assert!(BinaryField::with_modulus(4, 0b11001).is_ok());
        assert!(BinaryField::with_modulus(4, 0b10001).is_err());
        assert!(BinaryField::with_modulus(3, 0b10011).is_err());
    }

    #[test]
    fn embeddings_are_ring_maps() {
        let src = make_field(2).unwrap();
        for s in [2, 4, 6, 12] {
            let dst = make_field(s).unwrap();
            let e = src.embedding_into(&dst).unwrap();
            for a in 0..4 {
                for b in 0..4 {
                    assert_eq!(e.apply(src.mul(&a, &b)), dst.mul(&e.apply(a), &e.apply(b)));
                    assert_eq!(e.apply(a ^ b), e.apply(a) ^ e.apply(b));
                }
            }
        }
        assert!(src.embedding_into(&make_field(3).unwrap()).is_err());
    }
}
