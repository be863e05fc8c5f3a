use alloc::sync::Arc;

use crate::bitset::BitSet;
use crate::field::{Elem, Field};
use crate::perm::check_map;

/// Exhaustive permutation oracle for the binomials `a x^k + b x`.
///
/// For `a != 0`, `a x^k + b x = a (x^k + (b/a) x)`, so it permutes exactly when
/// `x^k + gamma x` does for `gamma = b/a`. The set of such `gamma` is found by
/// brute force once per exponent, after which every `(a, b)` query is a lookup.
#[derive(Clone, Debug)]
pub struct ScaledLinearOracle {
    field: Arc<Field>,
    k: u64,
    tested: BitSet,
    permutes: BitSet,
}

impl ScaledLinearOracle {
    /// Tests `x^k + gamma x` for every `gamma` in `gammas`.
    pub fn new(field: &Arc<Field>, k: u64, gammas: impl Iterator<Item = Elem>) -> Self {
        let q = field.q() as usize;
        let mut tested = BitSet::new(q);
        let mut permutes = BitSet::new(q);
        for g in gammas {
            if !tested.insert(g.index()) {
                continue;
            }
            if check_map(field, |x| field.add(field.pow(x, k), field.mul(g, x))).is_permutation {
                permutes.insert(g.index());
            }
        }
        ScaledLinearOracle { field: field.clone(), k, tested, permutes }
    }

    pub fn exponent(&self) -> u64 {
        self.k
    }

    /// Whether `x^k + gamma x` permutes. Panics if `gamma` was not tested.
    pub fn permutes_with(&self, gamma: Elem) -> bool {
        assert!(self.tested.contains(gamma.index()), "gamma {gamma} outside the tested set");
        self.permutes.contains(gamma.index())
    }

    /// Whether `a x^k + b x` permutes `F_q`.
    pub fn is_pp(&self, a: Elem, b: Elem) -> bool {
        match self.field.inv(a) {
            Ok(inv) => self.permutes_with(self.field.mul(b, inv)),
            Err(_) => !b.is_zero(),
        }
    }

    /// Whether `a x^k + b x` is a complete permutation polynomial.
    pub fn is_complete(&self, a: Elem, b: Elem) -> bool {
        self.is_pp(a, b) && self.is_pp(a, self.field.add(b, Elem::ONE))
    }
}
