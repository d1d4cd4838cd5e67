use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::UniPoly;
use crate::error::{Error, Result};
use crate::field::{gf2, Field};

/// Seed for the splitting stream when the caller does not supply one.
const DEFAULT_SPLIT_SEED: u64 = 0x5eed_f00d;

impl<F: Field> UniPoly<F> {
    /// Square-free decomposition of a nonzero polynomial: pairwise coprime
    /// monic square-free `(a_i, i)` with `monic(self) = prod a_i^i`.
    pub fn square_free_decomposition(&self) -> Result<Vec<(Self, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        sff(&self.monic(), 1, &mut out);
        out.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        Ok(out)
    }

    /// Splits a monic square-free polynomial into `(product of all
    /// irreducible factors of degree d, d)`.
    pub fn distinct_degree(&self) -> Vec<(Self, usize)> {
        let s = self.field.abs_degree() as u64;
        let x = UniPoly::x(self.field.clone());
        let mut f = self.monic();
        let mut out = Vec::new();
        let mut h = x.clone();
        let mut d = 1;
        while f.degree().unwrap_or(0) >= 2 * d {
            h = h.frobenius_mod(s, &f).unwrap();
            let g = f.gcd(&h.add(&x));
            if !g.is_one() {
                f = f.exact_div(&g).unwrap().unwrap();
                h = h.rem(&f).unwrap();
                out.push((g, d));
            }
            d += 1;
        }
        if f.degree().unwrap_or(0) > 0 {
            let n = f.degree().unwrap();
            out.push((f, n));
        }
        out
    }

    /// Splits a monic square-free polynomial all of whose irreducible factors
    /// have degree `d`. The trace map `v + v^2 + ... + v^(2^(sd-1))` sends a
    /// random residue to a random element of GF(2) in each component.
    pub fn equal_degree<R: Rng + ?Sized>(&self, d: usize, rng: &mut R) -> Vec<Self> {
        let n = self.degree().unwrap_or(0);
        if n <= d {
            return if n == 0 { Vec::new() } else { vec![self.monic()] };
        }
        let bits = self.field.abs_degree() as usize * d;
        loop {
            let v = UniPoly::new(
                self.field.clone(),
                (0..n).map(|_| self.field.random(rng)).collect(),
            );
            if v.is_constant() {
                continue;
            }
            let mut t = v.clone();
            let mut acc = v;
            for _ in 1..bits {
                t = t.square().rem(self).unwrap();
                acc = acc.add(&t);
            }
            let g = self.gcd(&acc);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                let h = self.exact_div(&g).unwrap().unwrap();
                let mut out = g.equal_degree(d, rng);
                out.extend(h.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by degree then coefficients. The leading coefficient is dropped.
    pub fn factorize(&self) -> Result<Vec<(Self, usize)>> {
        self.factorize_with_rng(&mut ChaCha8Rng::seed_from_u64(DEFAULT_SPLIT_SEED))
    }

    pub fn factorize_with_rng<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<(Self, usize)>> {
        let mut out = Vec::new();
        for (part, mult) in self.square_free_decomposition()? {
            for (block, d) in part.distinct_degree() {
                for p in block.equal_degree(d, rng) {
                    out.push((p, mult));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Result<Self> {
        let one = UniPoly::one(self.field.clone());
        Ok(self
            .square_free_decomposition()?
            .into_iter()
            .fold(one, |acc, (p, _)| acc.mul(&p)))
    }

    /// Number of distinct roots in an algebraic closure.
    pub fn radical_degree(&self) -> Result<usize> {
        Ok(self.radical()?.degree().unwrap())
    }

    /// Number of distinct roots in GF(2^s), which must contain the coefficient
    /// field: `deg gcd(a, x^(2^s) - x)`.
    pub fn count_roots_in_field(&self, s: u32) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if s == 0 || s % self.field.abs_degree() != 0 {
            return Err(Error::ContextMismatch);
        }
        let m = self.monic();
        let x = UniPoly::x(self.field.clone());
        let h = x.frobenius_mod(s as u64, &m)?;
        Ok(m.gcd(&h.add(&x)).degree().unwrap())
    }

    /// Distinct roots in the coefficient field, sorted.
    pub fn roots(&self) -> Vec<F::Elem> {
        if self.is_zero() {
            return Vec::new();
        }
        let m = self.monic();
        let x = UniPoly::x(self.field.clone());
        let h = x.frobenius_mod(self.field.abs_degree() as u64, &m).unwrap();
        let split = m.gcd(&h.add(&x));
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SPLIT_SEED);
        let mut roots: Vec<F::Elem> = split
            .equal_degree(1, &mut rng)
            .into_iter()
            .map(|p| p.coeff(0))
            .collect();
        roots.sort();
        roots
    }

    /// Rabin's test: `x^(q^n) = x mod a` and `gcd(x^(q^(n/p)) - x, a) = 1`
    /// for every prime `p | n`.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        let m = self.monic();
        let s = self.field.abs_degree() as u64;
        let x = UniPoly::x(self.field.clone());
        for p in gf2::prime_factors(n as u64) {
            let h = x.frobenius_mod(s * (n as u64 / p), &m).unwrap();
            if !m.gcd(&h.add(&x)).is_one() {
                return false;
            }
        }
        x.frobenius_mod(s * n as u64, &m).unwrap() == x.rem(&m).unwrap()
    }
}

fn sff<F: Field>(f: &UniPoly<F>, scale: usize, out: &mut Vec<(UniPoly<F>, usize)>) {
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).unwrap().unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).unwrap().unwrap();
        if !fac.is_one() {
            out.push((fac, i * scale));
        }
        w = y;
        c = c.exact_div(&w).unwrap().unwrap();
        i += 1;
    }
    if !c.is_one() {
        let root = c.sqrt().expect("what remains is a perfect square");
        sff(&root.monic(), 2 * scale, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, BinaryField, Domain, ENUMERATION_CAP};
    use proptest::prelude::{any, prop, prop_assert, prop_assert_eq, proptest, ProptestConfig, Strategy};

    fn p(r: u32, c: &[u32]) -> UniPoly<BinaryField> {
        UniPoly::new(make_field(r).unwrap(), c.to_vec())
    }

    /// Trial division by every monic polynomial of degree <= n/2.
    fn irreducible_by_trial(a: &UniPoly<BinaryField>) -> bool {
        let n = a.degree().unwrap();
        let q = a.field().size() as u32;
        for d in 1..=n / 2 {
            let count = (q as u64).pow(d as u32);
            for code in 0..count {
                let mut c = Vec::with_capacity(d + 1);
                let mut k = code;
                for _ in 0..d {
                    c.push((k % q as u64) as u32);
                    k /= q as u64;
                }
                c.push(1);
                let div = UniPoly::new(*a.field(), c);
                if a.rem(&div).unwrap().is_zero() {
                    return false;
                }
            }
        }
        n >= 1
    }

    #[test]
    fn factorization_examples() {
        let f = p(1, &[0, 1, 1]).factorize().unwrap();
        assert_eq!(f, vec![(p(1, &[0, 1]), 1), (p(1, &[1, 1]), 1)]);
        assert_eq!(p(1, &[1, 1, 0, 0, 1]).factorize().unwrap(), vec![(p(1, &[1, 1, 0, 0, 1]), 1)]);
        assert!(irreducible_by_trial(&p(1, &[1, 1, 0, 0, 1])));
        assert_eq!(p(1, &[1, 0, 1, 0, 1]).factorize().unwrap(), vec![(p(1, &[1, 1, 1]), 2)]);
        assert_eq!(p(1, &[1, 1, 1]).square(), p(1, &[1, 0, 1, 0, 1]));
        assert_eq!(p(1, &[]).factorize(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn radical_degree_examples() {
        assert_eq!(p(1, &[1, 0, 1, 0, 1]).radical_degree().unwrap(), 2);
        assert_eq!(p(1, &[0, 0, 0, 0, 0, 0, 1]).radical_degree().unwrap(), 1);
        assert_eq!(p(1, &[1, 1, 0, 1]).radical_degree().unwrap(), 3);
        assert_eq!(p(1, &[]).radical_degree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn root_count_examples() {
        assert_eq!(p(1, &[1, 1, 1]).count_roots_in_field(1).unwrap(), 0);
        assert_eq!(p(1, &[1, 1, 1]).count_roots_in_field(2).unwrap(), 2);
        assert_eq!(p(1, &[0, 1, 0, 1]).count_roots_in_field(1).unwrap(), 2);
        assert_eq!(p(2, &[1, 1]).count_roots_in_field(3), Err(Error::ContextMismatch));
    }

    #[test]
    fn roots_in_large_field() {
        let f = make_field(24).unwrap();
        let rs = [0x123456u32, 0xabcdef, 7, 0];
        let mut a = UniPoly::one(f);
        for r in rs {
            a = a.mul(&UniPoly::new(f, vec![r, 1]));
        }
        a = a.mul(&UniPoly::new(f, vec![1, 0, 0, 5, 1]));
        let mut expect: Vec<u32> = rs.to_vec();
        // The quartic factor may contribute roots of its own.
        let quartic = UniPoly::new(f, vec![1, 0, 0, 5, 1]);
        expect.extend(quartic.roots());
        expect.sort();
        expect.dedup();
        assert_eq!(a.roots(), expect);
        for r in a.roots() {
            assert_eq!(a.eval(&r), 0);
        }
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for r in [1, 2] {
            let q = 1u32 << r;
            for deg in 1..=5u32 {
                for code in 0..q.pow(deg) {
                    let mut c = Vec::new();
                    let mut k = code;
                    for _ in 0..deg {
                        c.push(k % q);
                        k /= q;
                    }
                    c.push(1);
                    let a = p(r, &c);
                    assert_eq!(a.is_irreducible(), irreducible_by_trial(&a), "{a}");
                }
            }
        }
    }

    fn arb_poly(r: u32, max_deg: usize) -> impl Strategy<Value = UniPoly<BinaryField>> {
        let f = make_field(r).unwrap();
        prop::collection::vec(0u32..(1 << r), 1..=max_deg + 1)
            .prop_map(move |c| UniPoly::new(f, c))
            .prop_filter("nonzero", |a| !a.is_zero())
    }

    fn reassemble(fs: &[(UniPoly<BinaryField>, usize)], field: BinaryField) -> UniPoly<BinaryField> {
        fs.iter().fold(UniPoly::one(field), |acc, (p, e)| acc.mul(&p.pow(*e as u64)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(350))]

        #[test]
        fn factorization_reassembles(r in 1u32..=3, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = make_field(r).unwrap();
            let deg = rng.random_range(1..=12usize);
            let mut c: Vec<u32> = (0..deg).map(|_| f.random(&mut rng)).collect();
            c.push(1 + rng.random_range(0..(f.size() as u32 - 1)));
            let a = UniPoly::new(f, c);
            let fs = a.factorize_with_rng(&mut rng).unwrap();
            prop_assert_eq!(reassemble(&fs, f), a.monic());
            for (p, _) in &fs {
                prop_assert!(p.is_irreducible());
                prop_assert!(f.is_one(p.lead().unwrap()));
            }
            let mut sorted = fs.clone();
            sorted.sort();
            prop_assert_eq!(sorted, fs);
        }

        #[test]
        fn radical_routes_agree(a in arb_poly(2, 12)) {
            let via_factors: usize = a.factorize().unwrap().iter().map(|(p, _)| p.degree().unwrap()).sum();
            prop_assert_eq!(a.radical_degree().unwrap(), via_factors);
        }

        #[test]
        fn root_count_matches_evaluation(a in arb_poly(2, 10), s in prop::sample::select(vec![2u32, 4, 6, 8, 12])) {
            let k = make_field(s).unwrap();
            let e = a.field().embedding_into(&k).unwrap();
            let ak = a.map(&k, |c| e.apply(*c));
            let brute = k.elements(ENUMERATION_CAP).unwrap().iter().filter(|x| ak.eval(x) == 0).count();
            prop_assert_eq!(a.count_roots_in_field(s).unwrap(), brute);
        }
    }
}
