//! Binomials `x^k + alpha x^j` over `F_{Q^m}` whose norm product over `F_Q`
//! has degree at most five.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{Cases, Extension};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, PrimePower};

/// The `alpha` values of a classification, in generator-power order, with the
/// number of values satisfying each case.
#[derive(Clone, Debug)]
pub struct AlphaSet {
    pub ext: Extension,
    pub alphas: Vec<Elem>,
    /// `(case, count)` for every case with at least one member.
    pub case_counts: Vec<(u8, usize)>,
}

impl AlphaSet {
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn field(&self) -> &Arc<Field> {
        self.ext.field()
    }

    pub fn count_for_case(&self, case: u8) -> usize {
        self.case_counts.iter().find(|c| c.0 == case).map_or(0, |c| c.1)
    }

    fn collect(ext: Extension, cases: impl Fn(&Extension, Elem) -> Result<Cases>) -> Result<Self> {
        let mut alphas = Vec::new();
        let mut per_case = [0usize; 16];
        for a in ext.field().nonzero_by_generator_power() {
            let c = cases(&ext, a)?;
            if c.any() {
                alphas.push(a);
            }
            for k in c.iter() {
                per_case[k as usize] += 1;
            }
        }
        let case_counts = (1..16u8).filter(|&k| per_case[k as usize] > 0).map(|k| (k, per_case[k as usize])).collect();
        Ok(AlphaSet { ext, alphas, case_counts })
    }
}

fn nonzero(alpha: Elem) -> Result<()> {
    if alpha.is_zero() {
        Err(Error::BadAlpha("alpha must be nonzero"))
    } else {
        Ok(())
    }
}

/// Cases under which `x^(Q+2) + alpha x` permutes `F_{Q^2}`:
/// 1. `Q = 5 (mod 6)` and `alpha^(Q-1)` has order 6;
/// 2. `Q = 2 (mod 6)` and `alpha^(Q-1)` has order 3;
/// 3. `Q = 0 (mod 3)` and `alpha^(Q-1) = -1`.
pub fn cubic_cases(ext: &Extension, alpha: Elem) -> Result<Cases> {
    ext.require_degree(2)?;
    nonzero(alpha)?;
    let f = ext.field();
    let q = ext.sub_q();
    let a = f.pow(alpha, q - 1);
    let ord = f.mult_order(a)?;
    Ok(Cases::NONE
        .with(1, q % 6 == 5 && ord == 6)
        .with(2, q % 6 == 2 && ord == 3)
        .with(3, q % 3 == 0 && a == f.neg_one()))
}

/// Cases under which `x^(Q^2+Q+2) + alpha x` permutes `F_{Q^3}`:
/// 1. `Q` even and `alpha^(Q^2) + alpha^Q + alpha = 0`;
/// 2. `Q = 7` and `alpha^24 + alpha^18 + 4 alpha^12 + 2 = 0`;
/// 3. `Q = 3` and `alpha^12 + alpha^10 + alpha^4 + 1 = 0`;
/// 4. `Q = 2` and `alpha != 1`.
pub fn quartic_cases(ext: &Extension, alpha: Elem) -> Result<Cases> {
    ext.require_degree(3)?;
    nonzero(alpha)?;
    let f = ext.field();
    let q = ext.sub_q();
    let trace = f.add(f.add(f.pow(alpha, q * q), f.pow(alpha, q)), alpha);
    Ok(Cases::NONE
        .with(1, q % 2 == 0 && trace.is_zero())
        .with(2, q == 7 && ext.int_poly_at(alpha, &[(24, 1), (18, 1), (12, 4), (0, 2)]).is_zero())
        .with(3, q == 3 && ext.int_poly_at(alpha, &[(12, 1), (10, 1), (4, 1), (0, 1)]).is_zero())
        .with(4, q == 2 && alpha != Elem::ONE))
}

/// Whether `x^(Q+3) + alpha x^2` permutes `F_{Q^2}`: exactly when `Q = 2`
/// and `alpha != 1`.
pub fn quartic_qplus3_check(ext: &Extension, alpha: Elem) -> Result<bool> {
    ext.require_degree(2)?;
    nonzero(alpha)?;
    Ok(ext.sub_q() == 2 && alpha != Elem::ONE)
}

/// Cases under which `x^(2Q+3) + alpha x` permutes `F_{Q^2}`:
/// 1. `Q = +-2 (mod 5)` and `alpha^(2Q-2) - 3 alpha^(Q-1) + 1 = 0`;
/// 2. `Q = 5^n` and `alpha^(Q-1) = -1` or `alpha^((Q-1)/2) = -1`;
/// 3. `Q = 13` and `alpha^12 - 3 alpha^6 + 1 = 0`;
/// 4. `Q = 5` and `alpha^4 - alpha^2 + 1 = 0`;
/// 5. `Q = 3` and `alpha = 1` or `alpha^2 = -1`.
pub fn quintic_cases(ext: &Extension, alpha: Elem) -> Result<Cases> {
    ext.require_degree(2)?;
    nonzero(alpha)?;
    let f = ext.field();
    let q = ext.sub_q();
    let p = ext.tower().sub().p();
    let minus_one = f.neg_one();
    let case2 = p == 5 && (f.pow(alpha, q - 1) == minus_one || f.pow(alpha, (q - 1) / 2) == minus_one);
    Ok(Cases::NONE
        .with(1, matches!(q % 5, 2 | 3) && ext.int_poly_at(alpha, &[(2 * q - 2, 1), (q - 1, -3), (0, 1)]).is_zero())
        .with(2, case2)
        .with(3, q == 13 && ext.int_poly_at(alpha, &[(12, 1), (6, -3), (0, 1)]).is_zero())
        .with(4, q == 5 && ext.int_poly_at(alpha, &[(4, 1), (2, -1), (0, 1)]).is_zero())
        .with(5, q == 3 && (alpha == Elem::ONE || f.pow(alpha, 2) == minus_one)))
}

/// All nonzero `alpha` in `F_{Q^2}` with `x^(Q+2) + alpha x` a permutation.
pub fn cubic_alpha_set(sub: PrimePower) -> Result<AlphaSet> {
    AlphaSet::collect(Extension::new(sub, 2)?, cubic_cases)
}

/// All nonzero `alpha` in `F_{Q^3}` with `x^(Q^2+Q+2) + alpha x` a permutation.
pub fn quartic_alpha_set(sub: PrimePower) -> Result<AlphaSet> {
    AlphaSet::collect(Extension::new(sub, 3)?, quartic_cases)
}

/// All nonzero `alpha` in `F_{Q^2}` with `x^(2Q+3) + alpha x` a permutation.
pub fn quintic_alpha_set(sub: PrimePower) -> Result<AlphaSet> {
    AlphaSet::collect(Extension::new(sub, 2)?, quintic_cases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::check_map;

    fn pp(q: u64) -> PrimePower {
        PrimePower::from_order(q).unwrap()
    }

    /// Brute-force `alpha` set for `x^k + alpha x^j` over the ambient field.
    fn oracle_set(ext: &Extension, k: u64, j: u64) -> Vec<Elem> {
        let f = ext.field();
        f.nonzero_by_generator_power()
            .into_iter()
            .filter(|&a| check_map(f, |x| f.add(f.pow(x, k), f.mul(a, f.pow(x, j)))).is_permutation)
            .collect()
    }

    #[test]
    fn cubic_sets() {
        let s = cubic_alpha_set(pp(2)).unwrap();
        let f = s.field().clone();
        // Both elements of order 3 in F_4.
        assert_eq!(s.len(), 2);
        assert!(s.alphas.iter().all(|&a| f.mult_order(a).unwrap() == 3));
        assert!(cubic_alpha_set(pp(7)).unwrap().is_empty());
        let s = cubic_alpha_set(pp(3)).unwrap();
        assert_eq!(s.len(), 2);
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let s = cubic_alpha_set(pp(q)).unwrap();
            assert_eq!(s.alphas, oracle_set(&s.ext, q + 2, 1), "Q={q}");
        }
    }

    #[test]
    fn quartic_sets() {
        assert_eq!(quartic_alpha_set(pp(2)).unwrap().len(), 6);
        assert_eq!(quartic_alpha_set(pp(3)).unwrap().len(), 12);
        let s = quartic_alpha_set(pp(4)).unwrap();
        assert_eq!(s.len(), 15);
        assert_eq!(s.alphas, oracle_set(&s.ext, 16 + 4 + 2, 1));
        let s = quartic_alpha_set(pp(5)).unwrap();
        assert!(s.is_empty());
        assert!(oracle_set(&s.ext, 25 + 5 + 2, 1).is_empty());
    }

    #[test]
    fn qplus3() {
        let e2 = Extension::new(pp(2), 2).unwrap();
        let w = e2.field().generator();
        assert!(quartic_qplus3_check(&e2, w).unwrap());
        assert!(!quartic_qplus3_check(&e2, Elem::ONE).unwrap());
        let e4 = Extension::new(pp(4), 2).unwrap();
        assert!(oracle_set(&e4, 7, 2).is_empty());
        assert!(e4.field().nonzero_by_generator_power().into_iter().all(|a| !quartic_qplus3_check(&e4, a).unwrap()));
    }

    #[test]
    fn quintic_sets() {
        // Q = 3: case (5) gives 1 and the square roots of -1; case (1) adds the
        // four roots of alpha^4 + 1.
        let s = quintic_alpha_set(pp(3)).unwrap();
        assert_eq!(s.count_for_case(5), 3);
        assert_eq!(s.count_for_case(1), 4);
        assert_eq!(s.len(), 7);
        assert_eq!(s.alphas, oracle_set(&s.ext, 9, 1));

        let s = quintic_alpha_set(pp(7)).unwrap();
        assert_eq!(s.len(), 12);
        assert_eq!(s.count_for_case(1), 12);

        let s = quintic_alpha_set(pp(13)).unwrap();
        assert_eq!((s.count_for_case(1), s.count_for_case(3), s.len()), (24, 12, 36));
        assert_eq!(s.alphas, oracle_set(&s.ext, 29, 1));

        let s = quintic_alpha_set(pp(25)).unwrap();
        assert_eq!(s.len(), 36);
        let f = s.field().clone();
        let m1 = f.neg_one();
        let direct: Vec<Elem> = f
            .nonzero_by_generator_power()
            .into_iter()
            .filter(|&a| f.pow(a, 24) == m1 || f.pow(a, 12) == m1)
            .collect();
        assert_eq!(s.alphas, direct);
    }

    #[test]
    fn degree_and_alpha_errors() {
        let e3 = Extension::new(pp(2), 3).unwrap();
        assert!(matches!(cubic_cases(&e3, Elem::ONE), Err(Error::BadParams(_))));
        let e2 = Extension::new(pp(2), 2).unwrap();
        assert!(matches!(cubic_cases(&e2, Elem::ZERO), Err(Error::BadAlpha(_))));
    }
}
