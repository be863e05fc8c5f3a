//! Low-degree permutation polynomials of `F_Q`:
//!
//! 1. `x^3` for `Q != 1 (mod 3)`
//! 2. `x^3 - beta x` for `Q = 3^n`, `beta` a nonsquare
//! 3. `x^4 + beta x^2 + gamma x` for `Q = 2^n` without nonzero roots in `F_Q`
//! 4. `x^5` for `Q != 1 (mod 5)`
//! 5. `x^5 + beta x^3 + beta^2 x / 5` for `Q = +-2 (mod 5)`
//! 6. `x^5 - beta x` for `Q = 5^n`, `beta` not a fourth power
//! 7. `x^5 + 2 beta x^3 + beta^2 x` for `Q = 5^n`, `beta` a nonsquare

use alloc::vec::Vec;

use super::{enumerate_family, EnumLimits, Extension, FamilyId, Params, Unit};
use crate::error::Result;
use crate::field::{Elem, PrimePower};
use crate::poly::Poly;

pub(super) fn units(family: FamilyId, ext: &Extension) -> Vec<Unit> {
    let q = ext.sub_q();
    let p = ext.tower().sub().p();
    let betas = |nonzero: bool| ext.subfield().iter().copied().filter(|b| !nonzero || !b.is_zero()).map(Unit::Beta).collect();
    match family {
        FamilyId::DicksonCase1 if q % 3 != 1 => alloc::vec![Unit::Fixed],
        FamilyId::DicksonCase2 if p == 3 => betas(true),
        FamilyId::DicksonCase3 if p == 2 => betas(false),
        FamilyId::DicksonCase4 if q % 5 != 1 => alloc::vec![Unit::Fixed],
        FamilyId::DicksonCase5 if matches!(q % 5, 2 | 3) => betas(false),
        FamilyId::DicksonCase6 | FamilyId::DicksonCase7 if p == 5 => betas(false),
        _ => Vec::new(),
    }
}

pub(super) fn candidates(family: FamilyId, ext: &Extension, unit: Unit) -> Vec<(Params, bool, Vec<(u64, Elem)>)> {
    let f = ext.field();
    let one = Elem::ONE;
    let with_beta = |b: Elem| Params { beta: Some(b), ..Params::default() };
    match (family, unit) {
        (FamilyId::DicksonCase1, Unit::Fixed) => alloc::vec![(Params::default(), true, alloc::vec![(3, one)])],
        (FamilyId::DicksonCase4, Unit::Fixed) => alloc::vec![(Params::default(), true, alloc::vec![(5, one)])],
        (FamilyId::DicksonCase2, Unit::Beta(b)) => {
            let pred = !f.is_kth_power(b, 2);
            alloc::vec![(with_beta(b), pred, alloc::vec![(3, one), (1, f.neg(b))])]
        }
        (FamilyId::DicksonCase3, Unit::Beta(b)) => ext
            .subfield()
            .iter()
            .map(|&c| {
                let quartic = |x: Elem| f.add(f.add(f.pow(x, 4), f.mul(b, f.pow(x, 2))), f.mul(c, x));
                let root_free = f.elements().skip(1).all(|x| !quartic(x).is_zero());
                let params = Params { beta: Some(b), gamma: Some(c), ..Params::default() };
                (params, root_free, alloc::vec![(4, one), (2, b), (1, c)])
            })
            .collect(),
        (FamilyId::DicksonCase5, Unit::Beta(b)) => {
            let fifth = f.inv(f.from_int(5)).expect("5 is invertible when Q = +-2 (mod 5)");
            let lin = f.mul(f.pow(b, 2), fifth);
            alloc::vec![(with_beta(b), true, alloc::vec![(5, one), (3, b), (1, lin)])]
        }
        (FamilyId::DicksonCase6, Unit::Beta(b)) => {
            let pred = !f.is_kth_power(b, 4);
            alloc::vec![(with_beta(b), pred, alloc::vec![(5, one), (1, f.neg(b))])]
        }
        (FamilyId::DicksonCase7, Unit::Beta(b)) => {
            let pred = !f.is_kth_power(b, 2);
            alloc::vec![(with_beta(b), pred, alloc::vec![(5, one), (3, f.mul(f.from_int(2), b)), (1, f.pow(b, 2))])]
        }
        (family, unit) => unreachable!("{family:?} has no unit {unit:?}"),
    }
}

/// Every instance of the seven cases realisable over `F_Q`, in case order.
pub fn dickson_list(sub: PrimePower) -> Result<Vec<(Poly, FamilyId)>> {
    let mut out = Vec::new();
    for case in FamilyId::DICKSON {
        let e = enumerate_family(case, sub, &EnumLimits::default(), false)?;
        out.extend(e.witnesses.iter().map(|w| (w.poly(), case)));
    }
    Ok(out)
}
