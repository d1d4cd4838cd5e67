//! Brute-force non-degeneracy test, used to validate the elimination route.
//!
//! For each extension `K` of degree `m` over the coefficient field in the
//! window `(bound/2, bound]`, every `x in K*` is tried: the three face
//! polynomials are specialized to univariate polynomials in `y` and their gcd
//! is inspected. Every degree up to `bound` divides some `m` in that window,
//! so this finds all torus zeros whose `x`-coordinate has degree at most
//! `bound` over the coefficient field. Edges are checked by evaluating the
//! edge polynomial and its derivative at every point of `K*`.

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::field::{make_field, BinaryField, Domain};
use crate::unipoly::UniPoly;

/// Extension-degree bound keeping the largest scanned field at `2^12`
/// elements.
pub fn default_bound(r: u32) -> u32 {
    (12 / r).max(2)
}

pub fn is_nondegenerate(f: &LaurentPoly, bound: u32) -> Result<bool> {
    let np = f.newton_polygon()?;
    let r = f.field().degree();
    for m in bound / 2 + 1..=bound {
        let s = r * m;
        if s > 24 {
            return Err(Error::EnumerationCap { size: 1u128 << s, cap: 1 << 24 });
        }
        let k = make_field(s)?;
        let emb = f.field().embedding_into(&k)?;
        let fk = f.map_field(k, |c| emb.apply(c));

        for e in np.edges() {
            let g = fk.edge_polynomial_unchecked(&e);
            let dg = g.derivative();
            if (1..k.size() as u32).any(|t| g.eval(&t) == 0 && dg.eval(&t) == 0) {
                return Ok(false);
            }
        }

        let min_i = fk.terms().keys().map(|p| p.0).min().unwrap();
        let min_j = fk.terms().keys().map(|p| p.1).min().unwrap();
        let max_j = fk.terms().keys().map(|p| p.1).max().unwrap();
        for x in 1..k.size() as u32 {
            let mut a = vec![0u32; (max_j - min_j + 1) as usize];
            let mut b = a.clone();
            let mut c = a.clone();
            for (p, coeff) in fk.terms() {
                let v = k.mul(coeff, &k.pow(&x, (p.0 - min_i) as u64));
                let j = (p.1 - min_j) as usize;
                a[j] ^= v;
                if (p.0 - min_i) % 2 == 1 {
                    b[j] ^= v;
                }
                if (p.1 - min_j) % 2 == 1 {
                    c[j] ^= v;
                }
            }
            let g = gcd3(k, a, b, c);
            if g.is_zero() || g.strip_x().0.degree().unwrap() >= 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn gcd3(k: BinaryField, a: Vec<u32>, b: Vec<u32>, c: Vec<u32>) -> UniPoly<BinaryField> {
    let a = UniPoly::new(k, a);
    let b = UniPoly::new(k, b);
    let c = UniPoly::new(k, c);
    a.gcd(&b).gcd(&c)
}
