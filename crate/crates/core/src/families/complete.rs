//! Complete permutation polynomials `alpha x^k + beta x`.

use alloc::vec::Vec;

use super::{is_power_of_four, Cases, Extension, FamilyId, FamilyWitness, Params};
use crate::arith::gcd;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::{Elem, PrimePower};

/// Exponent `k` of the family's `alpha x^k + beta x`.
pub(crate) fn exponent(family: FamilyId, ext: &Extension) -> u64 {
    let q = ext.sub_q();
    match family {
        FamilyId::Cubic2 => q + 2,
        FamilyId::Quartic2 => q * q + q + 2,
        FamilyId::Quintic2 => 2 * q + 3,
        other => unreachable!("{other:?} is not an alpha x^k + beta x family"),
    }
}

fn check_args(ext: &Extension, m: u32, alpha: Elem, beta: Elem) -> Result<()> {
    ext.require_degree(m)?;
    if alpha.is_zero() {
        return Err(Error::BadAlpha("alpha must be nonzero"));
    }
    ext.require_subfield(beta)
}

/// Whether `alpha x^(1 + s (q-1)/(Q-1))` is a complete permutation polynomial of
/// `F_{Q^m}`, for `alpha` in `F_Q^*`.
///
/// Holds iff the exponent is prime to `Q - 1` and `alpha x^(ms+1) + x` permutes
/// `F_Q`; the latter is decided on the `Q` subfield points.
pub fn complete_monomial_check(ext: &Extension, s: u64, alpha: Elem) -> Result<bool> {
    let q = ext.sub_q();
    let m = ext.degree() as u64;
    if gcd(m, q - 1) != 1 {
        return Err(Error::BadParams("complete-monomial needs gcd(m, Q-1) = 1"));
    }
    if alpha.is_zero() {
        return Err(Error::BadAlpha("alpha must be nonzero"));
    }
    ext.require_subfield(alpha)?;
    if s == 0 {
        return Err(Error::BadParams("s must be positive"));
    }
    let k = 1 + s * ext.tower().norm_exponent();
    if gcd(k, q - 1) != 1 {
        return Ok(false);
    }
    let f = ext.field();
    let e = m * s + 1;
    let mut seen = BitSet::new(f.q() as usize);
    Ok(ext.subfield().iter().all(|&b| seen.insert(f.add(f.mul(alpha, f.pow(b, e)), b).index())))
}

/// Exponent of the complete monomials over `F_{Q^2}` for `Q` a power of 4:
/// `1 + s (Q+1)` with `s = Q/2 + 1`, i.e. `(Q^2 + 3Q + 4) / 2`.
pub fn wu_lin_exponent(q: u64) -> u64 {
    1 + (q / 2 + 1) * (q + 1)
}

/// `alpha x^((Q^2+3Q+4)/2)` over `F_{Q^2}` for every non-cube `alpha` of `F_Q`.
pub fn wu_lin_witnesses(sub: PrimePower) -> Result<Vec<FamilyWitness>> {
    if !is_power_of_four(sub) {
        return Err(Error::NotPowerOfFour(sub.q()));
    }
    let ext = Extension::new(sub, 2)?;
    let f = ext.field();
    let k = wu_lin_exponent(ext.sub_q());
    let mut out = Vec::new();
    for alpha in ext.subfield_units() {
        if !f.is_kth_power_in_subfield(alpha, 3, ext.tower())? {
            out.push(FamilyWitness {
                family: FamilyId::WuLin,
                field: f.clone(),
                params: Params { alpha: Some(alpha), ..Params::default() },
                terms: alloc::vec![(k, alpha)],
                oracle_confirmed: false,
            });
        }
    }
    Ok(out)
}

/// Cases under which `alpha x^(Q+2) + beta x` is complete over `F_{Q^2}`; the
/// same as for `x^(Q+2) + alpha x`, independent of `beta`.
pub fn cubic2_check(ext: &Extension, alpha: Elem, beta: Elem) -> Result<Cases> {
    check_args(ext, 2, alpha, beta)?;
    super::cubic_cases(ext, alpha)
}

/// Cases under which `alpha x^(Q^2+Q+2) + beta x` is complete over `F_{Q^3}`:
/// 1. `Q` even and `alpha^(Q^2) + alpha^(Q^2-Q+1) + alpha = 0`;
/// 2. `Q = 7`, `2 alpha^24 + 4 alpha^12 + alpha^6 + 1 = 0` and `beta` not in `{0, -1}`;
/// 3. `Q = 3`, `alpha^12 + alpha^8 + alpha^2 + 1 = 0` and `beta = 1`;
/// 4. `Q = 2` and `alpha != 1`.
pub fn quartic2_check(ext: &Extension, alpha: Elem, beta: Elem) -> Result<Cases> {
    check_args(ext, 3, alpha, beta)?;
    let f = ext.field();
    let q = ext.sub_q();
    let case1 = q % 2 == 0 && ext.int_poly_at(alpha, &[(q * q, 1), (q * q - q + 1, 1), (1, 1)]).is_zero();
    let case2 = q == 7
        && ext.int_poly_at(alpha, &[(24, 2), (12, 4), (6, 1), (0, 1)]).is_zero()
        && !beta.is_zero()
        && beta != f.neg_one();
    let case3 = q == 3 && ext.int_poly_at(alpha, &[(12, 1), (8, 1), (2, 1), (0, 1)]).is_zero() && beta == Elem::ONE;
    Ok(Cases::NONE.with(1, case1).with(2, case2).with(3, case3).with(4, q == 2 && alpha != Elem::ONE))
}

/// Cases under which `alpha x^(2Q+3) + beta x` is complete over `F_{Q^2}`:
/// 1. `Q = +-2 (mod 5)` and `alpha^(2Q-2) - 3 alpha^(Q-1) + 1 = 0`;
/// 2. `Q = 5^n` and `alpha^(Q-1) = -1`;
/// 3. `Q = 5^n` and `beta^h, (beta+1)^h` both lie in `{0, -alpha^h}`, `h = (Q-1)/2`;
/// 4. `Q = 13`, `alpha^12 - 3 alpha^6 + 1 = 0` and `beta` in `{0, 3, -4, -1}`;
/// 5. `Q = 13`, `alpha^12 + 3 alpha^6 + 1 = 0` and `beta` in `{5, 6, 7}`;
/// 6. `Q = 5`, `alpha^4 - alpha^2 + 1 = 0` and `beta` in `{0, -1}`;
/// 7. `Q = 5`, `alpha^4 + alpha^2 + 1 = 0` and `beta = 2`;
/// 8. `Q = 3` and `alpha^2 = -1`;
/// 9. `Q = 3` and `alpha + beta = 1`.
pub fn quintic2_check(ext: &Extension, alpha: Elem, beta: Elem) -> Result<Cases> {
    check_args(ext, 2, alpha, beta)?;
    let f = ext.field();
    let q = ext.sub_q();
    let p = ext.tower().sub().p();
    let minus_one = f.neg_one();
    let beta_in = |ks: &[i64]| ks.iter().any(|&k| beta == f.from_int(k));

    let case1 = matches!(q % 5, 2 | 3) && ext.int_poly_at(alpha, &[(2 * q - 2, 1), (q - 1, -3), (0, 1)]).is_zero();
    let (case2, case3) = if p == 5 {
        let h = (q - 1) / 2;
        let target = f.neg(f.pow(alpha, h));
        let ok = |v: Elem| v.is_zero() || v == target;
        (
            f.pow(alpha, q - 1) == minus_one,
            ok(f.pow(beta, h)) && ok(f.pow(f.add(beta, Elem::ONE), h)),
        )
    } else {
        (false, false)
    };
    let case4 = q == 13 && ext.int_poly_at(alpha, &[(12, 1), (6, -3), (0, 1)]).is_zero() && beta_in(&[0, 3, -4, -1]);
    let case5 = q == 13 && ext.int_poly_at(alpha, &[(12, 1), (6, 3), (0, 1)]).is_zero() && beta_in(&[5, 6, 7]);
    let case6 = q == 5 && ext.int_poly_at(alpha, &[(4, 1), (2, -1), (0, 1)]).is_zero() && beta_in(&[0, -1]);
    let case7 = q == 5 && ext.int_poly_at(alpha, &[(4, 1), (2, 1), (0, 1)]).is_zero() && beta_in(&[2]);
    let case8 = q == 3 && f.pow(alpha, 2) == minus_one;
    let case9 = q == 3 && f.add(alpha, beta) == Elem::ONE;
    Ok(Cases::NONE
        .with(1, case1)
        .with(2, case2)
        .with(3, case3)
        .with(4, case4)
        .with(5, case5)
        .with(6, case6)
        .with(7, case7)
        .with(8, case8)
        .with(9, case9))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{complete_map, is_complete_pp};
    use crate::poly::Poly;

    fn pp(q: u64) -> PrimePower {
        PrimePower::from_order(q).unwrap()
    }

    fn direct(ext: &Extension, k: u64, alpha: Elem, beta: Elem) -> bool {
        let f = ext.field();
        complete_map(f, |x| f.add(f.mul(alpha, f.pow(x, k)), f.mul(beta, x))).is_permutation
    }

    #[test]
    fn complete_monomial_examples() {
        // Q = 4, m = 2, s = 3 with alpha a non-cube of F_4.
        let ext = Extension::new(pp(4), 2).unwrap();
        let f = ext.field().clone();
        for a in ext.subfield_units() {
            let noncube = !f.is_kth_power_in_subfield(a, 3, ext.tower()).unwrap();
            assert_eq!(complete_monomial_check(&ext, 3, a).unwrap(), noncube);
        }
        // Q = 2, m = 3, s = 1: x^4 + x sends 0 and 1 to 0.
        let ext = Extension::new(pp(2), 3).unwrap();
        assert!(!complete_monomial_check(&ext, 1, Elem::ONE).unwrap());
        assert!(!direct(&ext, 1 + 7, Elem::ONE, Elem::ZERO));
        // gcd(m, Q-1) = 2.
        let ext = Extension::new(pp(3), 2).unwrap();
        assert!(matches!(complete_monomial_check(&ext, 1, Elem::ONE), Err(Error::BadParams(_))));
    }

    #[test]
    fn complete_monomial_matches_oracle() {
        for (sub, m) in [(4u64, 2u32), (2, 3), (2, 4), (4, 4), (8, 2), (3, 3), (5, 3)] {
            let ext = Extension::new(pp(sub), m).unwrap();
            let norm = ext.tower().norm_exponent();
            for s in 1..sub.max(2) {
                for a in ext.subfield_units() {
                    let pred = complete_monomial_check(&ext, s, a).unwrap();
                    assert_eq!(pred, direct(&ext, 1 + s * norm, a, Elem::ZERO), "Q={sub} m={m} s={s} a={a}");
                }
            }
        }
    }

    #[test]
    fn power_of_four_monomials() {
        let w = wu_lin_witnesses(pp(4)).unwrap();
        assert_eq!(w.len(), 2);
        for wit in &w {
            assert_eq!(wit.terms[0].0, 16);
            assert!(is_complete_pp(&wit.poly()).is_permutation);
        }
        assert_eq!(wu_lin_witnesses(pp(16)).unwrap().len(), 10);
        assert_eq!(wu_lin_witnesses(pp(2)).unwrap_err(), Error::NotPowerOfFour(2));
        assert_eq!(wu_lin_witnesses(pp(8)).unwrap_err(), Error::NotPowerOfFour(8));
        assert_eq!(wu_lin_exponent(16), 154);
    }

    #[test]
    fn cubic2_examples() {
        let ext = Extension::new(pp(2), 2).unwrap();
        let w = ext.field().generator();
        for b in [Elem::ZERO, Elem::ONE] {
            assert!(cubic2_check(&ext, w, b).unwrap().any());
            assert!(direct(&ext, 4, w, b));
        }
        // Q = 4 is 1 mod 3: no alpha qualifies, and alpha x^6 never permutes F_16.
        let ext = Extension::new(pp(4), 2).unwrap();
        let f = ext.field().clone();
        for a in f.nonzero_by_generator_power() {
            assert!(!cubic2_check(&ext, a, Elem::ZERO).unwrap().any());
            assert!(!is_complete_pp(&Poly::term(&f, a, 6)).is_permutation);
        }
        let ext = Extension::new(pp(8), 2).unwrap();
        let f = ext.field().clone();
        let a = f.nonzero_by_generator_power().into_iter().find(|&a| f.mult_order(f.pow(a, 7)).unwrap() == 3).unwrap();
        assert!(cubic2_check(&ext, a, Elem::ZERO).unwrap().contains(2));
        assert!(is_complete_pp(&Poly::term(&f, a, 10)).is_permutation);
        let ext = Extension::new(pp(7), 2).unwrap();
        for a in ext.field().nonzero_by_generator_power() {
            for &b in ext.subfield() {
                assert!(!cubic2_check(&ext, a, b).unwrap().any());
            }
        }
    }

    #[test]
    fn quartic2_examples() {
        let ext = Extension::new(pp(2), 3).unwrap();
        let g = ext.field().generator();
        assert!(quartic2_check(&ext, g, Elem::ZERO).unwrap().contains(4));
        let ext = Extension::new(pp(3), 3).unwrap();
        for a in ext.field().nonzero_by_generator_power() {
            assert!(!quartic2_check(&ext, a, Elem::ZERO).unwrap().any());
        }
        let ext = Extension::new(pp(4), 3).unwrap();
        let f = ext.field().clone();
        let roots: Vec<Elem> = f
            .nonzero_by_generator_power()
            .into_iter()
            .filter(|&a| f.add(f.add(f.pow(a, 16), f.pow(a, 13)), a).is_zero())
            .collect();
        assert_eq!(roots.len(), 15);
        for &a in &roots {
            assert!(quartic2_check(&ext, a, Elem::ONE).unwrap().contains(1));
            assert!(direct(&ext, 22, a, Elem::ONE));
        }
    }

    #[test]
    fn quintic2_examples() {
        let ext = Extension::new(pp(3), 2).unwrap();
        let f = ext.field().clone();
        let i = f.elements().find(|&a| f.pow(a, 2) == f.neg_one()).unwrap();
        for &b in ext.subfield() {
            assert!(quintic2_check(&ext, i, b).unwrap().contains(8));
        }
        let c9 = quintic2_check(&ext, f.neg_one(), f.from_int(2)).unwrap();
        assert!(c9.contains(9));
        assert!(direct(&ext, 9, f.neg_one(), f.from_int(2)));

        let ext = Extension::new(pp(7), 2).unwrap();
        let f = ext.field().clone();
        let roots: Vec<Elem> = f
            .nonzero_by_generator_power()
            .into_iter()
            .filter(|&a| ext.int_poly_at(a, &[(12, 1), (6, -3), (0, 1)]).is_zero())
            .collect();
        assert_eq!(roots.len(), 12);
        for &a in &roots {
            for &b in ext.subfield() {
                assert!(quintic2_check(&ext, a, b).unwrap().contains(1));
                assert!(direct(&ext, 17, a, b));
            }
        }
    }

    #[test]
    fn argument_errors() {
        let ext = Extension::new(pp(3), 2).unwrap();
        let f = ext.field().clone();
        let outside = f.elements().find(|&a| !ext.in_subfield(a)).unwrap();
        assert_eq!(cubic2_check(&ext, Elem::ONE, outside), Err(Error::NotSubfieldCoeffs));
        assert!(matches!(quintic2_check(&ext, Elem::ZERO, Elem::ONE), Err(Error::BadAlpha(_))));
        assert!(matches!(quartic2_check(&ext, Elem::ONE, Elem::ONE), Err(Error::BadParams(_))));
    }
}
