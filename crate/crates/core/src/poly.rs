//! Dense univariate polynomials over an explicit [`Field`].

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, Tower};

/// Polynomial with coefficients low degree first and no trailing zeros.
#[derive(Clone, Debug)]
pub struct Poly {
    field: Arc<Field>,
    coeffs: Vec<Elem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn from_coeffs(field: &Arc<Field>, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&Elem::ZERO) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.code() < field.q()));
        Poly { field: field.clone(), coeffs }
    }

    /// Sum of `c * x^k` over the given terms; repeated degrees accumulate.
    pub fn from_terms(field: &Arc<Field>, terms: &[(usize, Elem)]) -> Self {
        let len = terms.iter().map(|&(k, _)| k + 1).max().unwrap_or(0);
        let mut coeffs = vec![Elem::ZERO; len];
        for &(k, c) in terms {
            coeffs[k] = field.add(coeffs[k], c);
        }
        Self::from_coeffs(field, coeffs)
    }

    pub fn zero(field: &Arc<Field>) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &Arc<Field>, c: Elem) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn one(field: &Arc<Field>) -> Self {
        Self::constant(field, Elem::ONE)
    }

    /// `x^k`.
    pub fn monomial(field: &Arc<Field>, k: usize) -> Self {
        Self::term(field, Elem::ONE, k)
    }

    /// `c * x^k`.
    pub fn term(field: &Arc<Field>, c: Elem, k: usize) -> Self {
        Self::from_terms(field, &[(k, c)])
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Elem {
        self.coeffs.get(k).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms as `(degree, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, Elem)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, &c)| (k, c))
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    /// Value at `a`. Sparse polynomials of high degree are summed term by term.
    pub fn eval(&self, a: Elem) -> Elem {
        let f = &*self.field;
        let nonzero = self.coeffs.iter().filter(|c| !c.is_zero()).count();
        if nonzero * 16 < self.coeffs.len() {
            self.terms().fold(Elem::ZERO, |acc, (k, c)| f.add(acc, f.mul(c, f.pow(a, k as u64))))
        } else {
            self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
        }
    }

    /// Values at every element, indexed by code.
    pub fn eval_table(&self) -> Vec<Elem> {
        self.field.elements().map(|a| self.eval(a)).collect()
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &*self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| f.add(self.coeff(k), other.coeff(k))).collect();
        Ok(Self::from_coeffs(&self.field, coeffs))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let f = &*self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Self::from_coeffs(&self.field, out))
    }

    pub fn neg(&self) -> Poly {
        let f = &*self.field;
        Poly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &*self.field;
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `h(x^e)`.
    pub fn compose_monomial(&self, e: usize) -> Poly {
        let terms: Vec<(usize, Elem)> = self.terms().map(|(k, c)| (k * e, c)).collect();
        Self::from_terms(&self.field, &terms)
    }

    /// Raises every coefficient to the `p^k`-th power.
    pub fn coeff_frobenius(&self, k: u32) -> Poly {
        let f = &*self.field;
        Poly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|&c| f.frobenius(c, k)).collect() }
    }

    /// Whether every coefficient lies in the subfield of `tower`.
    pub fn has_subfield_coeffs(&self, tower: &Tower) -> Result<bool> {
        let f = &*self.field;
        f.check_tower(tower)?;
        Ok(self.coeffs.iter().all(|&c| f.pow(c, tower.sub().q() as u64) == c))
    }
}

impl core::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomials over different fields")
    }
}

impl core::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomials over different fields")
    }
}

impl core::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomials over different fields")
    }
}

/// `g(x) = x^r h(x) h^(Q)(x) ... h^(Q^(m-1))(x)`, checked to lie in `F_Q[x]`.
pub fn norm_product(h: &Poly, tower: &Tower, r: u64) -> Result<Poly> {
    h.field.check_tower(tower)?;
    let steps = tower.frobenius_steps();
    let mut g = Poly::one(&h.field);
    for i in 0..tower.m() {
        g = &g * &h.coeff_frobenius(i * steps);
    }
    let g = g.shift(r as usize);
    if !g.has_subfield_coeffs(tower)? {
        return Err(Error::InternalSubfieldViolation);
    }
    Ok(g)
}

/// Renders with raw element codes, e.g. `3*x^2 + x + 1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, c.code()) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, c) => write!(f, "{c}*x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, c) => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}
