//! Explicit finite fields `F_{p^n}`.
//!
//! Elements are encoded as integers in `[0, q)`: the base-`p` digits of a code
//! are the coefficients (constant term first) of the element in the polynomial
//! basis `F_p[x]/(modulus)`. Prime-field elements therefore have codes `0..p`
//! equal to their integer values.
//!
//! Subfields are never built as separate objects. A [`Tower`] names `F_Q`
//! inside `F_{Q^m}` and the subfield is the fixed set of `a -> a^Q` in the
//! ambient field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{gcd, is_prime, prime_factors};
use crate::error::{Error, Result};
use crate::fp_poly;

/// Default upper bound on field orders accepted by [`build_field`].
pub const DEFAULT_MAX_ORDER: u64 = 1 << 24;
/// Orders above this can never be represented (codes are `u32`).
pub const HARD_MAX_ORDER: u64 = 1 << 30;
/// Fields up to this order get log/antilog tables.
const TABLE_LIMIT: u32 = 1 << 20;
const NO_LOG: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    p: u32,
    n: u32,
    q: u32,
}

impl PrimePower {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroExponent);
        }
        if !is_prime(p) {
            return Err(Error::NonPrimeBase(p));
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q <= HARD_MAX_ORDER)
            .ok_or(Error::FieldTooLarge { order: p.saturating_pow(n), max: HARD_MAX_ORDER })?;
        Ok(PrimePower { p: p as u32, n, q: q as u32 })
    }

    /// Parses an order `q` into `p^n`.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, n) = crate::arith::as_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, n)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `q^m` as a prime power.
    pub fn pow(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroExponent);
        }
        Self::new(self.p as u64, self.n.checked_mul(m).ok_or(Error::FieldTooLarge {
            order: u64::MAX,
            max: HARD_MAX_ORDER,
        })?)
    }

    /// True when `q` is a power of the (prime power) `base`, i.e. `q = base^k`, k >= 1.
    pub fn is_power_of(&self, base: u32) -> bool {
        match crate::arith::as_prime_power(base as u64) {
            Some((bp, bn)) => bp == self.p as u64 && self.n % bn == 0,
            None => false,
        }
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.n)
        }
    }
}

/// A field element by code. Meaningful only together with its [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Wraps a code without range checking; see [`Field::elem`] for the checked form.
    pub const fn from_code(code: u32) -> Self {
        Elem(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
enum Backend {
    Tables {
        /// `exp[i] = g^i` for `i < 2(q-1)`.
        exp: Vec<u32>,
        log: Vec<u32>,
        /// `zech[k] = log(1 + g^k)`, `NO_LOG` when that sum is zero. Odd `p`, `n > 1` only.
        zech: Vec<u32>,
    },
    Basis,
}

/// An explicit model of `F_q`. Immutable after construction.
#[derive(Debug)]
pub struct Field {
    order: PrimePower,
    modulus: Vec<u32>,
    generator: Elem,
    /// Distinct primes dividing `q - 1`.
    factors: Vec<u64>,
    backend: Backend,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self, other) || (self.order == other.order && self.modulus == other.modulus)
    }
}

impl Eq for Field {}

/// Builds `F_q` for `pp` under [`DEFAULT_MAX_ORDER`].
pub fn build_field(pp: PrimePower) -> Result<Field> {
    build_field_with_limit(pp, DEFAULT_MAX_ORDER)
}

/// Builds `F_q`, rejecting orders above `max_order`.
///
/// The modulus is the lexicographically smallest monic irreducible polynomial
/// of degree `n` (coefficients compared from the constant term up) and the
/// generator is the smallest code of multiplicative order `q - 1`.
pub fn build_field_with_limit(pp: PrimePower, max_order: u64) -> Result<Field> {
    Field::build(pp, max_order, true)
}

impl Field {
    pub(crate) fn build(pp: PrimePower, max_order: u64, tables: bool) -> Result<Field> {
        if pp.q as u64 > max_order {
            return Err(Error::FieldTooLarge { order: pp.q as u64, max: max_order });
        }
        let modulus = fp_poly::smallest_irreducible(pp.p as u64, pp.n)
            .into_iter()
            .map(|c| c as u32)
            .collect();
        let mut field = Field {
            order: pp,
            modulus,
            generator: Elem::ONE,
            factors: prime_factors(pp.q as u64 - 1),
            backend: Backend::Basis,
        };
        field.generator = (1..pp.q)
            .map(Elem)
            .find(|&a| field.has_full_order(a))
            .expect("a cyclic group has a generator");
        if tables && pp.q <= TABLE_LIMIT {
            field.backend = field.make_tables();
        }
        Ok(field)
    }

    fn has_full_order(&self, a: Elem) -> bool {
        let qm1 = self.order.q as u64 - 1;
        self.pow(a, qm1) == Elem::ONE && self.factors.iter().all(|&l| self.pow(a, qm1 / l) != Elem::ONE)
    }

    fn make_tables(&self) -> Backend {
        let q = self.order.q as usize;
        let p = self.order.p;
        let mut exp = vec![0u32; 2 * (q - 1)];
        let mut log = vec![NO_LOG; q];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().take(q - 1).enumerate() {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = self.basis_mul(cur, self.generator.0);
        }
        exp.copy_within(0..q - 1, q - 1);
        let zech = if p != 2 && self.order.n > 1 {
            exp[..q - 1]
                .iter()
                .map(|&c| {
                    // Adding 1 only touches the constant digit.
                    let d = c % p;
                    let bumped = c - d + (d + 1) % p;
                    if bumped == 0 {
                        NO_LOG
                    } else {
                        log[bumped as usize]
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        Backend::Tables { exp, log, zech }
    }

    pub fn order(&self) -> PrimePower {
        self.order
    }

    pub fn q(&self) -> u32 {
        self.order.q
    }

    pub fn characteristic(&self) -> u32 {
        self.order.p
    }

    /// Modulus coefficients, constant term first (monic, degree `n`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// Checked conversion from a code.
    pub fn elem(&self, code: u64) -> Result<Elem> {
        if code < self.order.q as u64 {
            Ok(Elem(code as u32))
        } else {
            Err(Error::InvalidCode { code, order: self.order.q })
        }
    }

    /// Borrowing handle that carries the field along with the element.
    pub fn element(&self, code: u64) -> Result<FieldElement<'_>> {
        Ok(FieldElement { field: self, elem: self.elem(code)? })
    }

    pub fn wrap(&self, elem: Elem) -> FieldElement<'_> {
        debug_assert!(elem.0 < self.order.q);
        FieldElement { field: self, elem }
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order.q).map(Elem)
    }

    /// Nonzero elements as `g^0, g^1, ..., g^(q-2)`.
    pub fn nonzero_by_generator_power(&self) -> Vec<Elem> {
        match &self.backend {
            Backend::Tables { exp, .. } => exp[..self.order.q as usize - 1].iter().map(|&c| Elem(c)).collect(),
            Backend::Basis => {
                let mut out = Vec::with_capacity(self.order.q as usize - 1);
                let mut cur = Elem::ONE;
                for _ in 0..self.order.q - 1 {
                    out.push(cur);
                    cur = self.mul(cur, self.generator);
                }
                out
            }
        }
    }

    /// Coefficient vector of an element in the polynomial basis.
    pub fn decode(&self, a: Elem) -> Vec<u32> {
        let p = self.order.p;
        let mut rest = a.0;
        (0..self.order.n)
            .map(|_| {
                let d = rest % p;
                rest /= p;
                d
            })
            .collect()
    }

    /// Inverse of [`Field::decode`]; missing high digits are zero.
    pub fn encode(&self, digits: &[u32]) -> Result<Elem> {
        let p = self.order.p as u64;
        if digits.len() > self.order.n as usize || digits.iter().any(|&d| d as u64 >= p) {
            return Err(Error::BadParams("digit vector does not describe a field element"));
        }
        let code = digits.iter().rev().fold(0u64, |acc, &d| acc * p + d as u64);
        self.elem(code)
    }

    /// Image of an integer under the canonical ring map `Z -> F_q`.
    pub fn from_int(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.order.p as i64) as u32)
    }

    pub fn neg_one(&self) -> Elem {
        self.from_int(-1)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.order.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.order.n == 1 {
            return Elem(((a.0 as u64 + b.0 as u64) % p as u64) as u32);
        }
        match &self.backend {
            Backend::Tables { exp, log, zech } => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                let qm1 = self.order.q - 1;
                let (la, lb) = (log[a.index()], log[b.index()]);
                let d = if lb >= la { lb - la } else { lb + qm1 - la };
                match zech[d as usize] {
                    NO_LOG => Elem::ZERO,
                    z => Elem(exp[(la + z) as usize]),
                }
            }
            Backend::Basis => self.digitwise(a, b, |x, y| (x + y) % p),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.order.p;
        if p == 2 || a.0 == 0 {
            return a;
        }
        if self.order.n == 1 {
            return Elem(p - a.0);
        }
        match &self.backend {
            Backend::Tables { exp, log, .. } => Elem(exp[(log[a.index()] + (self.order.q - 1) / 2) as usize]),
            Backend::Basis => self.digitwise(a, Elem::ZERO, |x, _| (p - x) % p),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        match &self.backend {
            Backend::Tables { exp, log, .. } => Elem(exp[(log[a.index()] + log[b.index()]) as usize]),
            Backend::Basis => Elem(self.basis_mul(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.backend {
            Backend::Tables { exp, log, .. } => Elem(exp[(self.order.q - 1 - log[a.index()]) as usize]),
            Backend::Basis => self.pow(a, self.order.q as u64 - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if a.0 == 0 {
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let qm1 = self.order.q as u64 - 1;
        let e = e % qm1;
        match &self.backend {
            Backend::Tables { exp, log, .. } => Elem(exp[(log[a.index()] as u64 * e % qm1) as usize]),
            Backend::Basis => {
                let (mut acc, mut b, mut e) = (1u32, a.0, e);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.basis_mul(acc, b);
                    }
                    b = self.basis_mul(b, b);
                    e >>= 1;
                }
                Elem(acc)
            }
        }
    }

    /// `a^e` for a signed exponent; negative exponents need `a != 0`.
    pub fn pow_signed(&self, a: Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: Elem, k: u32) -> Elem {
        let e = (self.order.p as u64).pow(k % self.order.n);
        self.pow(a, e)
    }

    /// Smallest `k >= 1` with `a^k = 1`.
    pub fn mult_order(&self, a: Elem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        let qm1 = self.order.q as u64 - 1;
        if let Backend::Tables { log, .. } = &self.backend {
            return Ok(qm1 / gcd(log[a.index()] as u64, qm1));
        }
        let mut ord = qm1;
        for &l in &self.factors {
            while ord % l == 0 && self.pow(a, ord / l) == Elem::ONE {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// Whether `a = b^k` for some `b` in this field (`0` always is).
    pub fn is_kth_power(&self, a: Elem, k: u64) -> bool {
        if a.0 == 0 {
            return true;
        }
        let qm1 = self.order.q as u64 - 1;
        self.pow(a, qm1 / gcd(k, qm1)) == Elem::ONE
    }

    /// Whether `a`, an element of the subfield `F_Q`, is a `k`-th power of an
    /// element of `F_Q` (not merely of the ambient field).
    pub fn is_kth_power_in_subfield(&self, a: Elem, k: u64, tower: &Tower) -> Result<bool> {
        self.check_tower(tower)?;
        if !self.in_subfield(a, tower)? {
            return Err(Error::NotSubfieldCoeffs);
        }
        if a.0 == 0 {
            return Ok(true);
        }
        let sub_m1 = tower.sub.q as u64 - 1;
        Ok(self.pow(a, sub_m1 / gcd(k, sub_m1)) == Elem::ONE)
    }

    pub(crate) fn check_tower(&self, tower: &Tower) -> Result<()> {
        if tower.ambient == self.order {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    /// The `Q` elements fixed by `a -> a^Q`, sorted by code.
    pub fn subfield_elements(&self, tower: &Tower) -> Result<Vec<Elem>> {
        self.check_tower(tower)?;
        let step = tower.norm_exponent();
        let z = self.pow(self.generator, step);
        let mut out = Vec::with_capacity(tower.sub.q as usize);
        out.push(Elem::ZERO);
        let mut cur = Elem::ONE;
        for _ in 0..tower.sub.q - 1 {
            out.push(cur);
            cur = self.mul(cur, z);
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn in_subfield(&self, a: Elem, tower: &Tower) -> Result<bool> {
        self.check_tower(tower)?;
        Ok(self.pow(a, tower.sub.q as u64) == a)
    }

    /// Relative norm `N(a) = a^((q-1)/(Q-1))`, with `N(0) = 0`.
    pub fn norm(&self, a: Elem, tower: &Tower) -> Result<Elem> {
        self.check_tower(tower)?;
        Ok(self.pow(a, tower.norm_exponent()))
    }

    /// The `s`-th roots of unity, as powers of `g^((q-1)/s)`.
    pub fn roots_of_unity(&self, s: u64) -> Result<Vec<Elem>> {
        let qm1 = self.order.q as u64 - 1;
        if s == 0 || qm1 % s != 0 {
            return Err(Error::BadShape("s must divide q-1"));
        }
        let z = self.pow(self.generator, qm1 / s);
        let mut out = Vec::with_capacity(s as usize);
        let mut cur = Elem::ONE;
        for _ in 0..s {
            out.push(cur);
            cur = self.mul(cur, z);
        }
        Ok(out)
    }

    fn digitwise(&self, a: Elem, b: Elem, op: impl Fn(u32, u32) -> u32) -> Elem {
        let p = self.order.p;
        let (mut x, mut y) = (a.0, b.0);
        let (mut code, mut place) = (0u32, 1u32);
        for _ in 0..self.order.n {
            code += op(x % p, y % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elem(code)
    }

    /// Schoolbook product in the polynomial basis followed by reduction.
    fn basis_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.order.p as u64;
        let n = self.order.n as usize;
        if n == 1 {
            return (a as u64 * b as u64 % p) as u32;
        }
        let mut da = [0u64; 32];
        let mut db = [0u64; 32];
        let (mut x, mut y) = (a as u64, b as u64);
        for i in 0..n {
            da[i] = x % p;
            db[i] = y % p;
            x /= p;
            y /= p;
        }
        let mut prod = [0u64; 64];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..n {
                prod[k - n + j] = (prod[k - n + j] + (p - c) * self.modulus[j] as u64) % p;
            }
        }
        prod[..n].iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
    }
}

/// A subfield inclusion `F_Q <= F_q` with `q = Q^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tower {
    sub: PrimePower,
    m: u32,
    ambient: PrimePower,
}

impl Tower {
    pub fn new(sub: PrimePower, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidTower("m must be positive"));
        }
        Ok(Tower { sub, m, ambient: sub.pow(m)? })
    }

    pub fn from_parts(sub: PrimePower, ambient: PrimePower) -> Result<Self> {
        if sub.p != ambient.p {
            return Err(Error::InvalidTower("characteristics differ"));
        }
        if ambient.n % sub.n != 0 {
            return Err(Error::InvalidTower("subfield degree must divide the ambient degree"));
        }
        Ok(Tower { sub, m: ambient.n / sub.n, ambient })
    }

    /// Every tower `F_Q < F_q` with `m >= 2`, smallest `Q` first.
    pub fn proper_towers(ambient: PrimePower) -> Vec<Tower> {
        (1..ambient.n)
            .filter(|d| ambient.n % d == 0)
            .map(|d| Tower {
                sub: PrimePower { p: ambient.p, n: d, q: ambient.p.pow(d) },
                m: ambient.n / d,
                ambient,
            })
            .collect()
    }

    pub fn sub(&self) -> PrimePower {
        self.sub
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn ambient(&self) -> PrimePower {
        self.ambient
    }

    /// `(q-1)/(Q-1) = 1 + Q + ... + Q^(m-1)`.
    pub fn norm_exponent(&self) -> u64 {
        (self.ambient.q as u64 - 1) / (self.sub.q as u64 - 1)
    }

    /// Number of `p`-Frobenius steps making up `a -> a^Q`.
    pub fn frobenius_steps(&self) -> u32 {
        self.sub.n
    }
}

/// An element together with the field it lives in.
#[derive(Clone, Copy, Debug)]
pub struct FieldElement<'a> {
    field: &'a Field,
    elem: Elem,
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.elem == other.elem
    }
}

impl Eq for FieldElement<'_> {}

impl<'a> FieldElement<'a> {
    pub fn field(&self) -> &'a Field {
        self.field
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn code(&self) -> u32 {
        self.elem.0
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    fn with(&self, elem: Elem) -> Self {
        FieldElement { field: self.field, elem }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.field.add(self.elem, other.elem)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.field.sub(self.elem, other.elem)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.field.mul(self.elem, other.elem)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.elem))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.elem)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.elem, e))
    }

    pub fn frobenius(&self, k: u32) -> Self {
        self.with(self.field.frobenius(self.elem, k))
    }
}
