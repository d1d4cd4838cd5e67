//! Polynomials over GF(2) packed into machine words (bit `k` is the
//! coefficient of `t^k`). Only used to build and validate field moduli.

pub(crate) fn degree(a: u128) -> i32 {
    127 - a.leading_zeros() as i32
}

pub(crate) fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let a = a as u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

pub(crate) fn rem(mut a: u128, m: u64) -> u64 {
    let dm = degree(m as u128);
    let m = m as u128;
    loop {
        let da = degree(a);
        if da < dm {
            return a as u64;
        }
        a ^= m << (da - dm);
    }
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    rem(clmul(a, b), m)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem(a as u128, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test: `m` of degree `n` is irreducible iff
/// `gcd(t^(2^i) - t, m) = 1` for every `i <= n/2`.
pub(crate) fn is_irreducible(m: u64) -> bool {
    let n = degree(m as u128);
    if n < 1 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let mut h = 2u64; // t
    for _ in 0..n / 2 {
        h = mulmod(h, h, m);
        if gcd(m, h ^ 2) != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically least irreducible polynomial of degree `r`, i.e. the
/// smallest bit pattern `2^r <= m < 2^(r+1)` that is irreducible.
pub(crate) fn least_irreducible(r: u32) -> u64 {
    let lo = 1u64 << r;
    (lo..lo << 1)
        .find(|&m| is_irreducible(m))
        .expect("irreducible polynomials exist in every degree")
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_irreducible(m: u64) -> bool {
        let n = degree(m as u128);
        (2u64..1 << (n / 2 + 1))
            .filter(|&d| degree(d as u128) >= 1 && degree(d as u128) <= n / 2)
            .all(|d| rem(m as u128, d) != 0)
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for m in 2u64..1 << 11 {
            assert_eq!(is_irreducible(m), trial_division_irreducible(m), "m = {m:#b}");
        }
    }

    #[test]
    fn small_canonical_moduli() {
        assert_eq!(least_irreducible(1), 0b10);
        assert_eq!(least_irreducible(2), 0b111);
        assert_eq!(least_irreducible(3), 0b1011);
        assert_eq!(least_irreducible(4), 0b10011);
        assert_eq!(least_irreducible(8), 0x11b);
    }

    #[test]
    fn least_irreducible_is_least_by_exhaustion() {
        for r in 1..=10 {
            let m = least_irreducible(r);
            for cand in (1u64 << r)..m {
                assert!(!trial_division_irreducible(cand));
            }
            assert!(trial_division_irreducible(m));
        }
    }
}
