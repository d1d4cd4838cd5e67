//! Point counting by exhaustive enumeration and the L-polynomial it
//! determines. Deliberately naive: this is the ground truth the algebraic
//! routes are checked against.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{make_field, BinaryField, Embedding};
use crate::laurent::LaurentPoly;
use crate::unipoly::UniPoly;

/// Largest extension field (in bits) the counters will enumerate.
pub const DEFAULT_CAP_BITS: u32 = 14;

/// Largest genus handled by [`zeta_of`].
pub const MAX_GENUS: usize = 4;

/// Numerator `L(t) = 1 + a_1 t + ... + a_{2g} t^{2g}` of the zeta function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LPolynomial {
    pub q: u64,
    pub g: usize,
    pub coeffs: Vec<i128>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwoData {
    /// `#Jac(k) = L(1)`.
    pub order: i128,
    pub has_2torsion: bool,
    /// Degree of `L mod 2`: the number of unit roots.
    pub two_rank: usize,
    /// Multiplicity of `t + 1` in `L mod 2`. This bounds `dim Jac(k)[2]`
    /// from above, with equality when Frobenius acts semisimply on the
    /// generalized 1-eigenspace of `Jac[2]`.
    pub dim_2torsion_bound: usize,
}

/// `N_1, ..., N_n` for the smooth complete model of a non-degenerate `f`:
/// torus points plus the distinct torus roots of each edge polynomial.
pub fn point_counts(f: &LaurentPoly, n: usize) -> Result<Vec<u64>> {
    point_counts_with_cap(f, n, DEFAULT_CAP_BITS)
}

pub fn point_counts_with_cap(f: &LaurentPoly, n: usize, cap_bits: u32) -> Result<Vec<u64>> {
    if let Some(d) = f.degeneracy()? {
        return Err(Error::Degenerate(d.to_string()));
    }
    let r = f.field().degree();
    check_bits(r, n, cap_bits)?;
    let np = f.newton_polygon()?;
    (1..=n as u32)
        .map(|i| {
            let (k, emb) = extension(f.field(), r * i)?;
            let fk = f.map_field(k, |c| emb.apply(c));
            let mut total = torus_count(&fk);
            for e in np.edges() {
                let coeffs: Vec<u32> = e.points().into_iter().map(|p| fk.coeff(p)).collect();
                total += (1..k.size() as u32).filter(|&t| horner(&k, &coeffs, t) == 0).count() as u64;
            }
            Ok(total)
        })
        .collect()
}

/// `N_1, ..., N_n` for the weighted projective model
/// `Y^2 + H_1(X,Z) Y = H_0(X,Z)` in `P(1, g+1, 1)`, given the affine charts
/// `h1 = H_1(x,1)` (degree at most `g+1`) and `h0 = H_0(x,1)` (degree at
/// most `2g+2`). The model is assumed smooth.
pub fn weighted_point_counts(
    g: usize,
    h1: &UniPoly<BinaryField>,
    h0: &UniPoly<BinaryField>,
    n: usize,
    cap_bits: u32,
) -> Result<Vec<u64>> {
    let field = *h1.field();
    let r = field.degree();
    check_bits(r, n, cap_bits)?;
    (1..=n as u32)
        .map(|i| {
            let (k, emb) = extension(field, r * i)?;
            let a: Vec<u32> = h1.coeffs().iter().map(|&c| emb.apply(c)).collect();
            let b: Vec<u32> = h0.coeffs().iter().map(|&c| emb.apply(c)).collect();
            let size = k.size() as u32;
            let mut total = 0u64;
            for x in 0..size {
                let (ax, bx) = (horner(&k, &a, x), horner(&k, &b, x));
                total += (0..size).filter(|&y| k.mul_bits(y, y ^ ax) == bx).count() as u64;
            }
            let at = h1.coeff(g + 1);
            let bt = h0.coeff(2 * g + 2);
            let (at, bt) = (emb.apply(at), emb.apply(bt));
            total += (0..size).filter(|&y| k.mul_bits(y, y ^ at) == bt).count() as u64;
            Ok(total)
        })
        .collect()
}

/// Zeta numerator of the smooth model of a non-degenerate `f`.
pub fn zeta_of(f: &LaurentPoly) -> Result<LPolynomial> {
    zeta_of_with_cap(f, DEFAULT_CAP_BITS)
}

pub fn zeta_of_with_cap(f: &LaurentPoly, cap_bits: u32) -> Result<LPolynomial> {
    let g = f.newton_polygon()?.genus();
    if g > MAX_GENUS {
        return Err(Error::ZetaCap(format!("genus {g} exceeds {MAX_GENUS}")));
    }
    let counts = point_counts_with_cap(f, g, cap_bits)?;
    let q = f.field().size();
    check_weil(&counts, q, g)?;
    l_polynomial(&counts, q, g)
}

pub(crate) fn check_weil(counts: &[u64], q: u64, g: usize) -> Result<()> {
    for (i, &n) in counts.iter().enumerate() {
        let qi = (q as f64).powi(i as i32 + 1);
        let dev = (n as f64 - qi - 1.0).abs();
        if dev > 2.0 * g as f64 * qi.sqrt() + 1e-9 {
            return Err(Error::InvalidModel(format!("N_{} = {n} violates the Weil bound", i + 1)));
        }
    }
    Ok(())
}

fn check_bits(r: u32, n: usize, cap_bits: u32) -> Result<()> {
    let bits = r as u64 * n as u64;
    if bits > cap_bits as u64 {
        return Err(Error::ZetaCap(format!("field of 2^{bits} elements exceeds the 2^{cap_bits} cap")));
    }
    Ok(())
}

fn extension(base: BinaryField, s: u32) -> Result<(BinaryField, Embedding)> {
    let k = make_field(s)?;
    let emb = base.embedding_into(&k)?;
    Ok((k, emb))
}

fn horner(k: &BinaryField, coeffs: &[u32], t: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| k.mul_bits(acc, t) ^ c)
}

/// Zeros of `f` on the torus over its own coefficient field. For each `x`,
/// `f(x, .)` is collapsed to a polynomial in `y` and every `y` is tried.
fn torus_count(f: &LaurentPoly) -> u64 {
    let k = f.field();
    let terms = f.terms();
    let min_i = terms.keys().map(|p| p.0).min().unwrap_or(0);
    let min_j = terms.keys().map(|p| p.1).min().unwrap_or(0);
    let max_j = terms.keys().map(|p| p.1).max().unwrap_or(0);
    let max_i = terms.keys().map(|p| p.0).max().unwrap_or(0);
    let size = k.size() as u32;
    let mut ycoeffs = vec![0u32; (max_j - min_j + 1) as usize];
    let mut powers = vec![0u32; (max_i - min_i + 1) as usize];
    let mut total = 0u64;
    for x in 1..size {
        let mut p = 1u32;
        for slot in powers.iter_mut() {
            *slot = p;
            p = k.mul_bits(p, x);
        }
        ycoeffs.iter_mut().for_each(|c| *c = 0);
        for (pt, c) in terms {
            ycoeffs[(pt.1 - min_j) as usize] ^= k.mul_bits(*c, powers[(pt.0 - min_i) as usize]);
        }
        total += (1..size).filter(|&y| horner(&k, &ycoeffs, y) == 0).count() as u64;
    }
    total
}

/// Recovers `L` from `N_1, ..., N_g` by Newton's identities on
/// `s_i = q^i + 1 - N_i` and the functional equation.
pub fn l_polynomial(counts: &[u64], q: u64, g: usize) -> Result<LPolynomial> {
    if counts.len() != g {
        return Err(Error::InvalidModel(format!("need {g} point counts, got {}", counts.len())));
    }
    let q = q as i128;
    let s: Vec<i128> = (0..g).map(|i| q.pow(i as u32 + 1) + 1 - counts[i] as i128).collect();
    let mut a = vec![0i128; 2 * g + 1];
    a[0] = 1;
    for j in 1..=g {
        let sum: i128 = (1..=j).map(|i| s[i - 1] * a[j - i]).sum();
        if sum % j as i128 != 0 {
            return Err(Error::NonIntegral(format!("a_{j} = {}/{j}", -sum)));
        }
        a[j] = -sum / j as i128;
    }
    for j in 0..g {
        a[2 * g - j] = q.pow((g - j) as u32) * a[j];
    }
    Ok(LPolynomial { q: q as u64, g, coeffs: a })
}

impl LPolynomial {
    pub fn eval(&self, t: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// `N_1, ..., N_n` implied by `L`.
    pub fn point_counts(&self, n: usize) -> Vec<i128> {
        let a = &self.coeffs;
        let d = a.len() - 1;
        let mut s: Vec<i128> = Vec::with_capacity(n);
        for j in 1..=n {
            let mut v: i128 = (1..j).filter(|&i| j - i <= d).map(|i| s[i - 1] * a[j - i]).sum();
            if j <= d {
                v += j as i128 * a[j];
            }
            s.push(-v);
        }
        let q = self.q as i128;
        s.iter().enumerate().map(|(i, si)| q.pow(i as u32 + 1) + 1 - si).collect()
    }

    /// Coefficients of `L mod 2`, trailing zeros removed.
    pub fn mod2(&self) -> Vec<u8> {
        let mut v: Vec<u8> = self.coeffs.iter().map(|c| c.rem_euclid(2) as u8).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn jacobian_two_data(&self) -> TwoData {
        let order = self.eval(1);
        let m = self.mod2();
        let two_rank = m.len().saturating_sub(1);
        let mut p = m;
        let mut mult = 0;
        // Synthetic division by t + 1 while the coefficient sum is even.
        while p.len() > 1 && p.iter().fold(0, |acc, c| acc ^ c) == 0 {
            let mut quotient = vec![0u8; p.len() - 1];
            let mut carry = 0u8;
            for k in (1..p.len()).rev() {
                carry ^= p[k];
                quotient[k - 1] = carry;
            }
            p = quotient;
            mult += 1;
        }
        TwoData { order, has_2torsion: order % 2 == 0, two_rank, dim_2torsion_bound: mult }
    }

    /// All Newton slopes equal one half: `2 v_2(a_j) >= j r` for every `j`.
    pub fn is_supersingular(&self) -> bool {
        let r = self.q.trailing_zeros() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .all(|(j, &a)| a == 0 || 2 * a.trailing_zeros() as i64 >= j as i64 * r)
    }
}
