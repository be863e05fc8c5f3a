//! Deciding whether polynomials permute `F_q`.
//!
//! The exhaustive test evaluates everywhere and records hits in a `q`-bit
//! occupancy set. The criterion tests reduce the question to a small subset:
//! the `s`-th roots of unity for `x^r h(x^((q-1)/s))`, or the subfield `F_Q`
//! for `x^r h(x^((q-1)/(Q-1)))` over `F_{Q^m}`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::arith::gcd;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::{Elem, Field, Tower};
use crate::poly::{norm_product, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    BruteForce,
    Cyclotomic,
    SubfieldNorm,
    SubfieldNormPowerM,
    SubfieldNormExpN,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailedCondition {
    /// The exponent gcd condition failed; nothing was enumerated.
    GcdCondition,
    /// The reduced map does not permute its test set.
    SubsetPermutation,
    /// `f` permutes but `f(x) + x` does not (complete-permutation checks only).
    ShiftedPermutation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub is_permutation: bool,
    pub method: Method,
    pub failed_condition: Option<FailedCondition>,
    /// Two distinct points with equal image, when found by exhaustive evaluation.
    pub witness: Option<(Elem, Elem)>,
}

impl CheckReport {
    fn pass(method: Method) -> Self {
        CheckReport { is_permutation: true, method, failed_condition: None, witness: None }
    }

    fn fail(method: Method, why: FailedCondition) -> Self {
        CheckReport { is_permutation: false, method, failed_condition: Some(why), witness: None }
    }
}

/// First collision of `map` on `[0, q)`, scanning codes in order.
pub fn first_collision(q: u32, map: impl Fn(Elem) -> Elem) -> Option<(Elem, Elem)> {
    let mut seen = BitSet::new(q as usize);
    for b in (0..q).map(Elem::from_code) {
        let v = map(b);
        if !seen.insert(v.index()) {
            let a = (0..b.code()).map(Elem::from_code).find(|&a| map(a) == v)?;
            return Some((a, b));
        }
    }
    None
}

/// Exhaustive bijection test of an arbitrary map on `field`.
pub fn check_map(field: &Field, map: impl Fn(Elem) -> Elem) -> CheckReport {
    match first_collision(field.q(), map) {
        None => CheckReport::pass(Method::BruteForce),
        Some(w) => CheckReport {
            is_permutation: false,
            method: Method::BruteForce,
            failed_condition: None,
            witness: Some(w),
        },
    }
}

pub fn is_pp_bruteforce(f: &Poly) -> CheckReport {
    check_map(f.field(), |a| f.eval(a))
}

/// Whether `table` (indexed by code) is a bijection of `[0, q)`.
pub fn is_permutation_table(table: &[Elem]) -> bool {
    let mut seen = BitSet::new(table.len());
    table.iter().all(|v| v.index() < table.len() && seen.insert(v.index()))
}

/// `f(x) = x^r h(x^((q-1)/s))` with `s | q-1`.
#[derive(Clone, Debug)]
pub struct CyclotomicShape {
    r: u64,
    s: u64,
    h: Poly,
}

impl CyclotomicShape {
    pub fn new(r: u64, s: u64, h: Poly) -> Result<Self> {
        let qm1 = h.field().q() as u64 - 1;
        if r == 0 {
            return Err(Error::BadShape("r must be positive"));
        }
        if s == 0 || qm1 % s != 0 {
            return Err(Error::BadShape("s must divide q-1"));
        }
        Ok(CyclotomicShape { r, s, h })
    }

    /// The shape `x^r h(x^((q-1)/(Q-1)))` attached to a tower.
    pub fn for_tower(tower: &Tower, r: u64, h: Poly) -> Result<Self> {
        h.field().check_tower(tower)?;
        Self::new(r, tower.sub().q() as u64 - 1, h)
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    /// `(q-1)/s`.
    pub fn exponent(&self) -> u64 {
        (self.h.field().q() as u64 - 1) / self.s
    }

    /// Pointwise value of `f` without materialising it.
    pub fn eval(&self, a: Elem) -> Elem {
        let f = self.h.field();
        f.mul(f.pow(a, self.r), self.h.eval(f.pow(a, self.exponent())))
    }

    /// `f` as an explicit polynomial.
    pub fn assemble(&self) -> Poly {
        self.h.compose_monomial(self.exponent() as usize).shift(self.r as usize)
    }
}

/// Bijection test on a subset whose images are expected to stay inside `allowed`
/// (a value outside it, or a repeat, fails).
fn permutes_subset(q: u32, points: &[Elem], map: impl Fn(Elem) -> Elem, allowed: impl Fn(Elem) -> bool) -> bool {
    let mut seen = BitSet::new(q as usize);
    points.iter().all(|&a| {
        let v = map(a);
        allowed(v) && seen.insert(v.index())
    })
}

/// Cyclotomic criterion: `f` permutes `F_q` iff `gcd(r, (q-1)/s) = 1` and
/// `x^r h(x)^((q-1)/s)` permutes the `s`-th roots of unity.
pub fn is_pp_cyclotomic(shape: &CyclotomicShape) -> Result<CheckReport> {
    let f = shape.h.field();
    let e = shape.exponent();
    if gcd(shape.r, e) != 1 {
        return Ok(CheckReport::fail(Method::Cyclotomic, FailedCondition::GcdCondition));
    }
    let mu = f.roots_of_unity(shape.s)?;
    let ok = permutes_subset(
        f.q(),
        &mu,
        |a| f.mul(f.pow(a, shape.r), f.pow(shape.h.eval(a), e)),
        |v| !v.is_zero(),
    );
    Ok(if ok {
        CheckReport::pass(Method::Cyclotomic)
    } else {
        CheckReport::fail(Method::Cyclotomic, FailedCondition::SubsetPermutation)
    })
}

fn subfield_test(
    method: Method,
    tower: &Tower,
    field: &Field,
    r: u64,
    g: impl Fn(Elem) -> Elem,
) -> Result<CheckReport> {
    if gcd(r, tower.norm_exponent()) != 1 {
        return Ok(CheckReport::fail(method, FailedCondition::GcdCondition));
    }
    let sub = field.subfield_elements(tower)?;
    let ok = permutes_subset(field.q(), &sub, g, |v| sub.binary_search(&v).is_ok());
    Ok(if ok { CheckReport::pass(method) } else { CheckReport::fail(method, FailedCondition::SubsetPermutation) })
}

/// Subfield-norm criterion: `x^r h(x^((q-1)/(Q-1)))` permutes `F_q` iff
/// `gcd(r, (q-1)/(Q-1)) = 1` and the norm product `g` permutes `F_Q`.
pub fn is_pp_subfield(tower: &Tower, r: u64, h: &Poly) -> Result<CheckReport> {
    let field = h.field();
    field.check_tower(tower)?;
    if r == 0 {
        return Err(Error::BadShape("r must be positive"));
    }
    if gcd(r, tower.norm_exponent()) != 1 {
        return Ok(CheckReport::fail(Method::SubfieldNorm, FailedCondition::GcdCondition));
    }
    let g = norm_product(h, tower, r)?;
    subfield_test(Method::SubfieldNorm, tower, field, r, |b| g.eval(b))
}

/// The same criterion evaluated pointwise as `b^r h(b)^((q-1)/(Q-1))` on `F_Q`,
/// without forming the norm product.
pub fn is_pp_subfield_pointwise(tower: &Tower, r: u64, h: &Poly) -> Result<CheckReport> {
    let field = h.field();
    field.check_tower(tower)?;
    if r == 0 {
        return Err(Error::BadShape("r must be positive"));
    }
    let e = tower.norm_exponent();
    subfield_test(Method::SubfieldNorm, tower, field, r, |b| field.mul(field.pow(b, r), field.pow(h.eval(b), e)))
}

fn require_subfield_coeffs(tower: &Tower, h: &Poly) -> Result<()> {
    if h.has_subfield_coeffs(tower)? {
        Ok(())
    } else {
        Err(Error::NotSubfieldCoeffs)
    }
}

/// For `h` in `F_Q[x]`: the test polynomial is `x^r h(x)^m`.
pub fn is_pp_subfield_powerm(tower: &Tower, r: u64, h: &Poly) -> Result<CheckReport> {
    require_subfield_coeffs(tower, h)?;
    if r == 0 {
        return Err(Error::BadShape("r must be positive"));
    }
    if gcd(r, tower.norm_exponent()) != 1 {
        return Ok(CheckReport::fail(Method::SubfieldNormPowerM, FailedCondition::GcdCondition));
    }
    let g = h.pow(tower.m()).shift(r as usize);
    subfield_test(Method::SubfieldNormPowerM, tower, h.field(), r, |b| g.eval(b))
}

/// For `h` in `F_Q[x]` and `m n = 1 (mod Q-1)`: the test polynomial is `x^(rn) h(x)`.
pub fn is_pp_subfield_expn(tower: &Tower, r: u64, n: u64, h: &Poly) -> Result<CheckReport> {
    let modulus = tower.sub().q() as u64 - 1;
    if (tower.m() as u64 * n) % modulus != 1 % modulus {
        return Err(Error::BadExponentPair { m: tower.m() as u64, n, modulus });
    }
    require_subfield_coeffs(tower, h)?;
    if r == 0 {
        return Err(Error::BadShape("r must be positive"));
    }
    if gcd(r, tower.norm_exponent()) != 1 {
        return Ok(CheckReport::fail(Method::SubfieldNormExpN, FailedCondition::GcdCondition));
    }
    let field = h.field();
    subfield_test(Method::SubfieldNormExpN, tower, field, r, |b| field.mul(field.pow(b, r * n), h.eval(b)))
}

/// Both `f` and `f(x) + x` permute `F_q`. When only `f + x` fails, the witness
/// is a collision of `f + x` and `failed_condition` is `ShiftedPermutation`.
pub fn is_complete_pp(f: &Poly) -> CheckReport {
    let field = f.field();
    complete_map(field, |a| f.eval(a))
}

/// Complete-mapping test of an arbitrary map.
pub fn complete_map(field: &Field, map: impl Fn(Elem) -> Elem) -> CheckReport {
    let first = check_map(field, &map);
    if !first.is_permutation {
        return first;
    }
    let shifted = check_map(field, |a| field.add(map(a), a));
    if shifted.is_permutation {
        return shifted;
    }
    CheckReport { failed_condition: Some(FailedCondition::ShiftedPermutation), ..shifted }
}

/// A permutation of `F_q` stored as its value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationTable {
    field: Arc<Field>,
    image: Vec<Elem>,
}

impl PermutationTable {
    pub fn from_poly(f: &Poly) -> Result<Self> {
        Self::from_table(f.field(), f.eval_table())
    }

    pub fn from_table(field: &Arc<Field>, image: Vec<Elem>) -> Result<Self> {
        if image.len() != field.q() as usize || !is_permutation_table(&image) {
            return Err(Error::NotAPermutation);
        }
        Ok(PermutationTable { field: field.clone(), image })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.image[a.index()]
    }

    pub fn inverse(&self) -> PermutationTable {
        let mut inv = alloc::vec![Elem::ZERO; self.image.len()];
        for (a, &v) in self.image.iter().enumerate() {
            inv[v.index()] = Elem::from_code(a as u32);
        }
        PermutationTable { field: self.field.clone(), image: inv }
    }

    pub fn is_complete(&self) -> CheckReport {
        complete_map(&self.field, |a| self.apply(a))
    }

    /// Lagrange interpolation to the unique polynomial of degree `< q`.
    ///
    /// Uses `1 - (x-a)^(q-1)` as the indicator of `a`, and
    /// `(x-a)^(q-1) = sum_k a^(q-1-k) x^k` in characteristic `p`.
    pub fn interpolate(&self) -> Poly {
        let f = &*self.field;
        let q = f.q() as usize;
        let mut coeffs = alloc::vec![Elem::ZERO; q];
        coeffs[0] = self.image[0];
        for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
            let mut acc = Elem::ZERO;
            for (a, &v) in self.image.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let a = Elem::from_code(a as u32);
                let power = if a.is_zero() { if k == q - 1 { Elem::ONE } else { Elem::ZERO } } else { f.pow(a, (q - 1 - k) as u64) };
                acc = f.add(acc, f.mul(v, power));
            }
            *slot = f.neg(acc);
        }
        Poly::from_coeffs(&self.field, coeffs)
    }
}

/// Inverse permutation of a permutation polynomial.
pub fn inverse_pp(f: &Poly) -> Result<PermutationTable> {
    Ok(PermutationTable::from_poly(f)?.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{build_field, PrimePower};
    use alloc::vec;

    fn field(q: u64) -> Arc<Field> {
        Arc::new(build_field(PrimePower::from_order(q).unwrap()).unwrap())
    }

    fn tower(sub: u64, m: u32) -> Tower {
        Tower::new(PrimePower::from_order(sub).unwrap(), m).unwrap()
    }

    #[test]
    fn brute_force_fixtures() {
        for q in [2u64, 4, 9, 16, 25] {
            let f = field(q);
            assert!(is_pp_bruteforce(&Poly::monomial(&f, 1)).is_permutation);
        }
        let f4 = field(4);
        assert!(is_pp_bruteforce(&Poly::monomial(&f4, 2)).is_permutation);
        let cube = Poly::monomial(&f4, 3);
        let report = is_pp_bruteforce(&cube);
        assert!(!report.is_permutation);
        let (a, b) = report.witness.unwrap();
        assert_ne!(a, b);
        assert_eq!(cube.eval(a), cube.eval(b));
        assert_eq!((a, b), (Elem::from_code(1), Elem::from_code(2)));
    }

    #[test]
    fn cyclotomic_fixtures() {
        let f16 = field(16);
        let one = Poly::one(&f16);
        // h = 1 and gcd(r, q-1) = 1.
        for s in [1u64, 3, 5, 15] {
            let shape = CyclotomicShape::new(7, s, one.clone()).unwrap();
            assert!(is_pp_cyclotomic(&shape).unwrap().is_permutation);
        }
        let f9 = field(9);
        let h = Poly::from_coeffs(&f9, vec![f9.generator(), Elem::ONE, Elem::ONE]);
        let shape = CyclotomicShape::new(2, 2, h).unwrap();
        let rep = is_pp_cyclotomic(&shape).unwrap();
        assert_eq!(rep.failed_condition, Some(FailedCondition::GcdCondition));
        assert!(matches!(CyclotomicShape::new(1, 4, Poly::one(&field(4))), Err(Error::BadShape(_))));
    }

    #[test]
    fn cyclotomic_matches_brute_force_on_f4() {
        let f4 = field(4);
        let w = f4.generator();
        let h = Poly::from_coeffs(&f4, vec![w, Elem::ONE]);
        let shape = CyclotomicShape::new(1, 3, h).unwrap();
        assert_eq!(is_pp_cyclotomic(&shape).unwrap().is_permutation, is_pp_bruteforce(&shape.assemble()).is_permutation);
        for a in f4.elements() {
            assert_eq!(shape.eval(a), shape.assemble().eval(a));
        }
    }

    #[test]
    fn zero_of_h_on_roots_of_unity_is_rejected() {
        // f = x (x^4 - 1) over F_5, s = 4: injective image set includes 0 -> not a PP.
        let f5 = field(5);
        let h = Poly::from_coeffs(&f5, vec![f5.neg_one(), Elem::ONE]);
        let shape = CyclotomicShape::new(1, 4, h).unwrap();
        assert!(!is_pp_bruteforce(&shape.assemble()).is_permutation);
        assert!(!is_pp_cyclotomic(&shape).unwrap().is_permutation);
    }

    #[test]
    fn subfield_fixtures() {
        let f4 = field(4);
        let t = tower(2, 2);
        let w = f4.generator();
        let h = Poly::from_coeffs(&f4, vec![w, Elem::ONE]);
        let shape = CyclotomicShape::for_tower(&t, 1, h.clone()).unwrap();
        let brute = is_pp_bruteforce(&shape.assemble()).is_permutation;
        assert_eq!(is_pp_subfield(&t, 1, &h).unwrap().is_permutation, brute);
        assert!(is_pp_subfield(&t, 1, &Poly::one(&f4)).unwrap().is_permutation);

        // Q = 3, alpha^(Q-1) = -1: x^(Q+2) + alpha x permutes F_9.
        let f9 = field(9);
        let t9 = tower(3, 2);
        let alpha = f9.elements().find(|&a| f9.pow(a, 2) == f9.neg_one()).unwrap();
        let h = Poly::from_coeffs(&f9, vec![alpha, Elem::ONE]);
        assert!(is_pp_subfield(&t9, 1, &h).unwrap().is_permutation);
        let f = Poly::from_terms(&f9, &[(5, Elem::ONE), (1, alpha)]);
        assert!(is_pp_bruteforce(&f).is_permutation);
    }

    #[test]
    fn subfield_variants_agree() {
        let f9 = field(9);
        let t = tower(3, 2);
        let h = Poly::from_coeffs(&f9, vec![Elem::ONE, Elem::ONE]);
        let shape = CyclotomicShape::for_tower(&t, 1, h.clone()).unwrap();
        let brute = is_pp_bruteforce(&shape.assemble()).is_permutation;
        assert_eq!(is_pp_subfield_powerm(&t, 1, &h).unwrap().is_permutation, brute);
        assert_eq!(is_pp_subfield(&t, 1, &h).unwrap().is_permutation, brute);
        let w = Poly::from_coeffs(&f9, vec![f9.generator(), Elem::ONE]);
        assert_eq!(is_pp_subfield_powerm(&t, 1, &w), Err(Error::NotSubfieldCoeffs));

        // (Q, m) = (4, 2) needs n = 2; (5, 3) needs n = 3.
        for (sub, m, n) in [(4u64, 2u32, 2u64), (5, 3, 3), (2, 3, 5)] {
            let t = tower(sub, m);
            let f = Arc::new(build_field(t.ambient()).unwrap());
            let subs = f.subfield_elements(&t).unwrap();
            for &c in &subs {
                for r in 1..=4u64 {
                    let h = Poly::from_coeffs(&f, vec![Elem::ONE, c]);
                    let a = is_pp_subfield_expn(&t, r, n, &h).unwrap().is_permutation;
                    let b = is_pp_subfield_powerm(&t, r, &h).unwrap().is_permutation;
                    let s = is_pp_subfield(&t, r, &h).unwrap().is_permutation;
                    assert_eq!((a, b), (s, s), "Q={sub} m={m} r={r} c={c}");
                }
            }
        }
        let t = tower(4, 2);
        let f16 = field(16);
        assert!(matches!(
            is_pp_subfield_expn(&t, 1, 1, &Poly::one(&f16)),
            Err(Error::BadExponentPair { .. })
        ));
    }

    #[test]
    fn complete_fixtures() {
        for q in [3u64, 4, 5, 8, 9] {
            let f = field(q);
            for c in f.elements().filter(|&c| !c.is_zero() && c != f.neg_one()) {
                assert!(is_complete_pp(&Poly::term(&f, c, 1)).is_permutation, "q={q} c={c}");
            }
            let x = is_complete_pp(&Poly::monomial(&f, 1));
            assert_eq!(x.is_permutation, q % 2 == 1);
            if q % 2 == 0 {
                assert_eq!(x.failed_condition, Some(FailedCondition::ShiftedPermutation));
            }
        }
        // w x^154 over F_256 with w a non-cube of the F_16 subfield.
        let f256 = field(256);
        let t = tower(16, 2);
        let w = f256
            .subfield_elements(&t)
            .unwrap()
            .into_iter()
            .find(|&a| !a.is_zero() && !f256.is_kth_power_in_subfield(a, 3, &t).unwrap())
            .unwrap();
        assert!(is_complete_pp(&Poly::term(&f256, w, 154)).is_permutation);
        // gcd(136, 255) = 17, so w x^136 is not even a permutation.
        let rep = is_complete_pp(&Poly::term(&f256, w, 136));
        assert!(!rep.is_permutation);
        assert_eq!(rep.failed_condition, None);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn inverses() {
        let f4 = field(4);
        let x = Poly::monomial(&f4, 1);
        assert_eq!(inverse_pp(&x).unwrap().image(), x.eval_table().as_slice());
        let sq = Poly::monomial(&f4, 2);
        assert_eq!(inverse_pp(&sq).unwrap().image(), sq.eval_table().as_slice());
        assert_eq!(inverse_pp(&Poly::monomial(&f4, 3)), Err(Error::NotAPermutation));

        // x^7 + g x over F_16 is not linear, so the interpolated inverse is nontrivial.
        let f16 = field(16);
        let f = (0..15u64)
            .map(|i| Poly::from_terms(&f16, &[(7, Elem::ONE), (1, f16.pow(f16.generator(), i))]))
            .find(|f| is_pp_bruteforce(f).is_permutation)
            .unwrap_or_else(|| Poly::monomial(&f16, 7));
        let inv = inverse_pp(&f).unwrap();
        assert_eq!(inv.inverse().image(), f.eval_table().as_slice());
        let interp = inv.interpolate();
        assert!(interp.degree().unwrap() < 16);
        assert_eq!(interp.eval_table(), inv.image());
        for a in f16.elements() {
            assert_eq!(inv.apply(f.eval(a)), a);
        }
    }

    #[test]
    fn interpolation_recovers_low_degree_polys() {
        let f9 = field(9);
        let g = f9.generator();
        let f = Poly::from_terms(&f9, &[(5, Elem::ONE), (1, g)]);
        if let Ok(t) = PermutationTable::from_poly(&f) {
            assert_eq!(t.interpolate(), f);
        }
        let lin = Poly::from_terms(&f9, &[(1, g), (0, Elem::ONE)]);
        assert_eq!(PermutationTable::from_poly(&lin).unwrap().interpolate(), lin);
    }
}
