use std::sync::Arc;

use permfield_core::arith::divisors;
use permfield_core::perm::{
    check_map, is_pp_bruteforce, is_pp_cyclotomic, is_pp_subfield, is_pp_subfield_expn, is_pp_subfield_pointwise,
    is_pp_subfield_powerm, CyclotomicShape,
};
use permfield_core::{build_field, Elem, Field, Poly, PrimePower, Tower};
use proptest::prelude::*;

const ORDERS: [u64; 12] = [4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125];

fn field(q: u64) -> Arc<Field> {
    Arc::new(build_field(PrimePower::from_order(q).unwrap()).unwrap())
}

fn poly(f: &Arc<Field>, codes: &[u64]) -> Poly {
    Poly::from_coeffs(f, codes.iter().map(|&c| f.elem(c % f.q() as u64).unwrap()).collect())
}

fn case() -> impl Strategy<Value = (u64, usize, Vec<u64>, u64)> {
    (0..ORDERS.len(), any::<usize>(), proptest::collection::vec(any::<u64>(), 0..6), 1u64..9)
        .prop_map(|(i, t, h, r)| (ORDERS[i], t, h, r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn subfield_criterion_matches_bruteforce((q, t, h, r) in case()) {
        let f = field(q);
        let towers = Tower::proper_towers(f.order());
        let tower = &towers[t % towers.len()];
        let h = poly(&f, &h);
        let shape = CyclotomicShape::for_tower(tower, r, h.clone()).unwrap();
        let oracle = check_map(&f, |a| shape.eval(a)).is_permutation;
        prop_assert_eq!(is_pp_subfield(tower, r, &h).unwrap().is_permutation, oracle);
        prop_assert_eq!(is_pp_subfield_pointwise(tower, r, &h).unwrap().is_permutation, oracle);
        prop_assert_eq!(is_pp_bruteforce(&shape.assemble()).is_permutation, oracle);
    }

    #[test]
    fn cyclotomic_criterion_matches_bruteforce((q, t, h, r) in case()) {
        let f = field(q);
        let ds = divisors(q - 1);
        let s = ds[t % ds.len()];
        let shape = CyclotomicShape::new(r, s, poly(&f, &h)).unwrap();
        let oracle = check_map(&f, |a| shape.eval(a)).is_permutation;
        prop_assert_eq!(is_pp_cyclotomic(&shape).unwrap().is_permutation, oracle);
    }

    #[test]
    fn subfield_variants_agree((q, t, h, r) in case()) {
        let f = field(q);
        let towers = Tower::proper_towers(f.order());
        let tower = &towers[t % towers.len()];
        let sub = f.subfield_elements(tower).unwrap();
        let coeffs: Vec<Elem> = h.iter().map(|&c| sub[(c % sub.len() as u64) as usize]).collect();
        let h = Poly::from_coeffs(&f, coeffs);
        let base = is_pp_subfield(tower, r, &h).unwrap().is_permutation;
        prop_assert_eq!(is_pp_subfield_powerm(tower, r, &h).unwrap().is_permutation, base);
        let modulus = tower.sub().q() as u64 - 1;
        if let Some(n) = (1..=modulus).find(|n| (tower.m() as u64 * n) % modulus == 1 % modulus) {
            prop_assert_eq!(is_pp_subfield_expn(tower, r, n, &h).unwrap().is_permutation, base);
        }
    }

    #[test]
    fn witnesses_are_genuine_collisions((q, _t, h, _r) in case()) {
        let f = field(q);
        let p = poly(&f, &h);
        let report = is_pp_bruteforce(&p);
        if let Some((a, b)) = report.witness {
            prop_assert!(a != b);
            prop_assert_eq!(p.eval(a), p.eval(b));
        } else {
            prop_assert!(report.is_permutation);
        }
    }
}
