//! Polynomials over the prime field `F_p`, used only to find field moduli.

use alloc::vec;
use alloc::vec::Vec;

type P = Vec<u64>;

fn trim(mut a: P) -> P {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pow_mod_int(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Remainder of `a` modulo the monic-or-not polynomial `f`.
fn rem(mut a: P, f: &[u64], p: u64) -> P {
    let df = f.len() - 1;
    let lead_inv = pow_mod_int(f[df], p - 2, p);
    a = trim(a);
    while a.len() > df {
        let shift = a.len() - 1 - df;
        let c = a[a.len() - 1] * lead_inv % p;
        for (i, &fc) in f.iter().enumerate() {
            let t = &mut a[shift + i];
            *t = (*t + p - c * fc % p) % p;
        }
        a = trim(a);
    }
    a
}

fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> P {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(out, f, p)
}

fn pow_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> P {
    let mut acc = rem(vec![1], f, p);
    let mut b = rem(base.to_vec(), f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: P, b: P, p: u64) -> P {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test for `f` (coefficients low degree first, nonzero
/// leading coefficient) over `F_p`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x: P = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=n / 2 {
        xp = pow_mod(&xp, p, f, p);
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = gcd(f.to_vec(), diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `n`,
/// comparing coefficient lists from the constant term upwards.
pub(crate) fn smallest_irreducible(p: u64, n: u32) -> Vec<u64> {
    let n = n as usize;
    let total = p.pow(n as u32);
    for t in 0..total {
        // c_0 is the most significant digit of t.
        let mut f = vec![0u64; n + 1];
        let mut rest = t;
        for i in (0..n).rev() {
            f[i] = rest % p;
            rest /= p;
        }
        f[n] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
