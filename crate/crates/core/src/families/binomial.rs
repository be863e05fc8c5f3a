//! Binomials over `F_{Q^2}` with a `(Q+1)`-th root of unity as coefficient.

use super::Extension;
use crate::arith::{gcd, gcd_signed};
use crate::error::{Error, Result};
use crate::field::Elem;

fn unity_root(ext: &Extension, beta: Elem) -> Result<()> {
    ext.require_degree(2)?;
    let f = ext.field();
    if beta.is_zero() || f.pow(beta, ext.sub_q() + 1) != Elem::ONE {
        return Err(Error::NotUnityRoot);
    }
    Ok(())
}

/// `(-beta)^((Q+1)/gcd(Q+1, d)) != 1`.
fn twisted_power_condition(ext: &Extension, d: u64, beta: Elem) -> bool {
    let f = ext.field();
    let s = ext.sub_q() + 1;
    f.pow(f.neg(beta), s / gcd(s, d)) != Elem::ONE
}

/// Whether `x^(r + d(Q-1)) + beta^(-1) x^r` permutes `F_{Q^2}`:
/// `gcd(r, Q-1) = 1`, `gcd(r-d, Q+1) = 1` and `(-beta)^((Q+1)/gcd(Q+1,d)) != 1`.
pub fn binomial_genlem_check(ext: &Extension, r: u64, d: u64, beta: Elem) -> Result<bool> {
    unity_root(ext, beta)?;
    if r == 0 || d == 0 {
        return Err(Error::BadParams("r and d must be positive"));
    }
    let q = ext.sub_q();
    Ok(gcd(r, q - 1) == 1 && gcd_signed(r as i64 - d as i64, q + 1) == 1 && twisted_power_condition(ext, d, beta))
}

/// Whether `beta x^(1 + d(Q-1))` is a complete permutation polynomial of
/// `F_{Q^2}`: `gcd((d-1)(2d-1), Q+1) = 1` and `(-beta)^((Q+1)/gcd(Q+1,d)) != 1`.
pub fn complete_binomial_check(ext: &Extension, d: u64, beta: Elem) -> Result<bool> {
    unity_root(ext, beta)?;
    if d == 0 {
        return Err(Error::BadParams("d must be positive"));
    }
    let q = ext.sub_q();
    Ok(gcd((d - 1) * (2 * d - 1), q + 1) == 1 && twisted_power_condition(ext, d, beta))
}
