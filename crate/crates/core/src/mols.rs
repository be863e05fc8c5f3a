//! Latin squares from permutation polynomials.
//!
//! A permutation polynomial `f` of `F_q` gives the square `L_f(i, j) = i + f(j)`,
//! rows and columns indexed by element code. `L_f` and `L_g` are orthogonal
//! exactly when `f - g` permutes `F_q`.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::families::Extension;
use crate::field::{Elem, Field, PrimePower};
use crate::perm::is_permutation_table;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    order: u32,
    /// Row-major symbol codes.
    entries: Vec<u32>,
    label: String,
}

impl LatinSquare {
    /// A square from raw row-major entries. Only the shape and symbol range are
    /// checked; use [`LatinSquare::is_latin`] for the latin property.
    pub fn from_entries(order: u32, entries: Vec<u32>, label: impl Into<String>) -> Result<Self> {
        let n = order as usize;
        if entries.len() != n * n {
            return Err(Error::BadShape("square needs order^2 entries"));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= order) {
            return Err(Error::InvalidCode { code: bad as u64, order });
        }
        Ok(LatinSquare { order, entries, label: label.into() })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.order as usize + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.order as usize)
    }

    pub fn is_latin(&self) -> bool {
        let n = self.order as usize;
        let mut seen = BitSet::new(n);
        let mut line_ok = |it: &mut dyn Iterator<Item = u32>| {
            seen.clear();
            for v in it {
                if !seen.insert(v as usize) {
                    return false;
                }
            }
            true
        };
        (0..n).all(|r| line_ok(&mut self.entries[r * n..(r + 1) * n].iter().copied()))
            && (0..n).all(|c| line_ok(&mut (0..n).map(|r| self.entries[r * n + c])))
    }
}

/// `L(i, j) = i + f(j)` for a value table `f` of a permutation.
pub fn square_from_table(field: &Field, table: &[Elem], label: impl Into<String>) -> Result<LatinSquare> {
    if table.len() != field.q() as usize || !is_permutation_table(table) {
        return Err(Error::NotAPermutation);
    }
    let n = field.q();
    let mut entries = Vec::with_capacity((n as usize) * (n as usize));
    for i in field.elements() {
        entries.extend(table.iter().map(|&v| field.add(i, v).code()));
    }
    Ok(LatinSquare { order: n, entries, label: label.into() })
}

pub fn square_from_pp(f: &Poly) -> Result<LatinSquare> {
    square_from_table(f.field(), &f.eval_table(), f.to_string())
}

/// Whether superimposing the squares yields every ordered pair once.
pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool> {
    if a.order != b.order {
        return Err(Error::OrderMismatch { left: a.order as usize, right: b.order as usize });
    }
    let n = a.order as usize;
    let mut seen = BitSet::new(n * n);
    Ok(a.entries.iter().zip(&b.entries).all(|(&x, &y)| seen.insert(x as usize * n + y as usize)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    CubicFamily,
    QuarticFamily,
    QuinticFamily,
    Custom,
}

impl Construction {
    pub fn tag(self) -> &'static str {
        match self {
            Construction::CubicFamily => "cubic",
            Construction::QuarticFamily => "quartic",
            Construction::QuinticFamily => "quintic",
            Construction::Custom => "custom",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        [Construction::CubicFamily, Construction::QuarticFamily, Construction::QuinticFamily, Construction::Custom]
            .into_iter()
            .find(|c| c.tag().eq_ignore_ascii_case(tag))
    }
}

/// Latin squares of a common order, at most `order - 1` of them.
#[derive(Clone, Debug)]
pub struct MolsSet {
    order: u32,
    construction: Construction,
    squares: Vec<LatinSquare>,
}

impl MolsSet {
    pub fn new(order: u32, construction: Construction, squares: Vec<LatinSquare>) -> Result<Self> {
        if let Some(s) = squares.iter().find(|s| s.order != order) {
            return Err(Error::OrderMismatch { left: order as usize, right: s.order as usize });
        }
        if squares.len() as u64 > (order as u64).saturating_sub(1) {
            return Err(Error::TooManySquares { squares: squares.len(), order: order as usize });
        }
        Ok(MolsSet { order, construction, squares })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn into_squares(self) -> Vec<LatinSquare> {
        self.squares
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MolsReport {
    pub is_valid: bool,
    pub is_complete: bool,
    /// First non-orthogonal pair of square indices, in lexicographic order.
    pub failing_pair: Option<(usize, usize)>,
    /// Indices of squares that are not latin.
    pub non_latin: Vec<usize>,
}

impl MolsReport {
    /// Builds a report from per-square latin flags and the first failing pair.
    pub fn from_parts(order: u32, latin: &[bool], failing_pair: Option<(usize, usize)>) -> Self {
        let non_latin: Vec<usize> = latin.iter().enumerate().filter(|(_, &ok)| !ok).map(|(i, _)| i).collect();
        let is_valid = non_latin.is_empty() && failing_pair.is_none();
        MolsReport {
            is_valid,
            is_complete: is_valid && latin.len() as u64 + 1 == order as u64,
            failing_pair,
            non_latin,
        }
    }
}

/// Checks the latin property of every square, pairwise orthogonality, and
/// whether the set is complete.
pub fn verify_mols(set: &MolsSet) -> MolsReport {
    let sq = set.squares();
    let latin: Vec<bool> = sq.iter().map(LatinSquare::is_latin).collect();
    let failing_pair = (0..sq.len())
        .flat_map(|i| (i + 1..sq.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !are_orthogonal(&sq[i], &sq[j]).expect("orders checked by MolsSet"));
    MolsReport::from_parts(set.order(), &latin, failing_pair)
}

fn pairs_over(ext: &Extension) -> impl Iterator<Item = (Elem, Elem)> + '_ {
    let sub = ext.subfield();
    sub.iter().flat_map(move |&b| sub.iter().map(move |&c| (b, c))).filter(|&(b, c)| !(b.is_zero() && c.is_zero()))
}

fn square_of_terms(field: &Arc<Field>, terms: &[(usize, Elem)]) -> Result<LatinSquare> {
    square_from_pp(&Poly::from_terms(field, terms))
}

/// Required multiplicative order of `alpha^(Q-1)` for the cubic construction.
fn cubic_target_order(q: u64) -> Result<u64> {
    match q % 6 {
        5 => Ok(6),
        0 | 2 | 4 if q % 3 != 1 && q % 2 == 0 => Ok(3),
        3 => Ok(2),
        _ => Err(Error::WrongResidue("cubic construction needs Q != 1 (mod 3)")),
    }
}

/// Whether `alpha` is admissible for the cubic construction over `ext`.
pub fn cubic_alpha_ok(ext: &Extension, alpha: Elem) -> Result<bool> {
    let q = ext.sub_q();
    let target = cubic_target_order(q)?;
    let f = ext.field();
    Ok(!alpha.is_zero() && f.mult_order(f.pow(alpha, q - 1))? == target)
}

/// Whether `alpha^(2Q-2) - 3 alpha^(Q-1) + 1 = 0`.
pub fn quintic_alpha_ok(ext: &Extension, alpha: Elem) -> Result<bool> {
    let q = ext.sub_q();
    if !matches!(q % 5, 0 | 2 | 3) {
        return Err(Error::WrongResidue("quintic construction needs Q = 0 or +-2 (mod 5)"));
    }
    Ok(!alpha.is_zero() && ext.int_poly_at(alpha, &[(2 * q - 2, 1), (q - 1, -3), (0, 1)]).is_zero())
}

/// Smallest admissible `alpha` code for a construction over `F_{Q^2}`.
pub fn auto_alpha(construction: Construction, ext: &Extension) -> Result<Elem> {
    let check: fn(&Extension, Elem) -> Result<bool> = match construction {
        Construction::CubicFamily => cubic_alpha_ok,
        Construction::QuinticFamily => quintic_alpha_ok,
        _ => return Err(Error::BadParams("construction takes no alpha")),
    };
    for a in ext.field().elements().skip(1) {
        if check(ext, a)? {
            return Ok(a);
        }
    }
    Err(Error::BadAlpha("no admissible alpha exists"))
}

/// Squares of `beta x^(Q+2) + alpha gamma x` for `(beta, gamma) != (0, 0)` in `F_Q^2`.
/// `None` picks [`auto_alpha`].
pub fn complete_set_cubic(sub: PrimePower, alpha: Option<Elem>) -> Result<MolsSet> {
    cubic_target_order(sub.q() as u64)?;
    let ext = Extension::new(sub, 2)?;
    let alpha = resolve_alpha(Construction::CubicFamily, &ext, alpha, cubic_alpha_ok)?;
    let q = ext.sub_q() as usize;
    two_param_set(&ext, Construction::CubicFamily, q + 2, alpha)
}

/// Squares of `beta x^(2Q+3) + alpha gamma x` for `(beta, gamma) != (0, 0)` in `F_Q^2`.
pub fn complete_set_quintic(sub: PrimePower, alpha: Option<Elem>) -> Result<MolsSet> {
    if !matches!(sub.q() % 5, 0 | 2 | 3) {
        return Err(Error::WrongResidue("quintic construction needs Q = 0 or +-2 (mod 5)"));
    }
    let ext = Extension::new(sub, 2)?;
    let alpha = resolve_alpha(Construction::QuinticFamily, &ext, alpha, quintic_alpha_ok)?;
    let q = ext.sub_q() as usize;
    two_param_set(&ext, Construction::QuinticFamily, 2 * q + 3, alpha)
}

fn resolve_alpha(
    construction: Construction,
    ext: &Extension,
    alpha: Option<Elem>,
    ok: fn(&Extension, Elem) -> Result<bool>,
) -> Result<Elem> {
    match alpha {
        None => auto_alpha(construction, ext),
        Some(a) => {
            ext.field().elem(a.code() as u64)?;
            if ok(ext, a)? {
                Ok(a)
            } else {
                Err(Error::BadAlpha("alpha does not satisfy the construction's condition"))
            }
        }
    }
}

fn two_param_set(ext: &Extension, construction: Construction, k: usize, alpha: Elem) -> Result<MolsSet> {
    let f = ext.field();
    let squares = pairs_over(ext)
        .map(|(b, c)| square_of_terms(f, &[(k, b), (1, f.mul(alpha, c))]))
        .collect::<Result<Vec<_>>>()?;
    MolsSet::new(f.q(), construction, squares)
}

/// Squares of `beta x^(Q^2+Q+2) + alpha x` over `F_{Q^3}` for `beta` in `F_Q`,
/// `alpha^(Q^2) + alpha^Q + alpha = 0`, `(alpha, beta) != (0, 0)`.
pub fn complete_set_quartic(sub: PrimePower) -> Result<MolsSet> {
    if sub.p() != 2 {
        return Err(Error::NotEvenQ(sub.q()));
    }
    let ext = Extension::new(sub, 3)?;
    let f = ext.field();
    let q = ext.sub_q();
    let trace_zero: Vec<Elem> = f
        .elements()
        .filter(|&a| f.add(f.add(f.pow(a, q * q), f.pow(a, q)), a).is_zero())
        .collect();
    let k = (q * q + q + 2) as usize;
    let mut squares = Vec::new();
    for &b in ext.subfield() {
        for &a in &trace_zero {
            if a.is_zero() && b.is_zero() {
                continue;
            }
            squares.push(square_of_terms(f, &[(k, b), (1, a)])?);
        }
    }
    MolsSet::new(f.q(), Construction::QuarticFamily, squares)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;
    use crate::perm::is_pp_bruteforce;

    fn pp(q: u64) -> PrimePower {
        PrimePower::from_order(q).unwrap()
    }

    fn field(q: u64) -> Arc<Field> {
        Arc::new(build_field(pp(q)).unwrap())
    }

    #[test]
    fn addition_tables() {
        let f2 = field(2);
        let sq = square_from_pp(&Poly::monomial(&f2, 1)).unwrap();
        assert_eq!(sq.entries(), &[0, 1, 1, 0]);
        let f4 = field(4);
        let sq = square_from_pp(&Poly::monomial(&f4, 1)).unwrap();
        for i in 0..4u32 {
            for j in 0..4u32 {
                assert_eq!(sq.get(i as usize, j as usize), i ^ j);
            }
        }
        assert!(sq.is_latin());
        assert!(!are_orthogonal(&sq, &sq).unwrap());
        let w = square_from_pp(&Poly::term(&f4, f4.generator(), 1)).unwrap();
        assert!(are_orthogonal(&sq, &w).unwrap());
        assert_eq!(square_from_pp(&Poly::monomial(&f4, 3)), Err(Error::NotAPermutation));
    }

    #[test]
    fn orthogonality_matches_difference_permutation() {
        for q in [4u64, 5, 7, 8, 9] {
            let f = field(q);
            let perms: Vec<Poly> = (1..q as usize + 3)
                .flat_map(|k| f.elements().skip(1).map(move |c| (k, c)))
                .map(|(k, c)| Poly::from_terms(&f, &[(k, Elem::ONE), (1, c)]))
                .filter(|p| is_pp_bruteforce(p).is_permutation)
                .take(12)
                .collect();
            for a in &perms {
                for b in &perms {
                    let sa = square_from_pp(a).unwrap();
                    let sb = square_from_pp(b).unwrap();
                    assert_eq!(are_orthogonal(&sa, &sb).unwrap(), is_pp_bruteforce(&(a - b)).is_permutation);
                }
            }
        }
    }

    #[test]
    fn mismatch_and_bounds() {
        let a = square_from_pp(&Poly::monomial(&field(2), 1)).unwrap();
        let b = square_from_pp(&Poly::monomial(&field(3), 1)).unwrap();
        assert_eq!(are_orthogonal(&a, &b), Err(Error::OrderMismatch { left: 2, right: 3 }));
        assert_eq!(
            MolsSet::new(2, Construction::Custom, alloc::vec![a.clone(), a.clone()]).unwrap_err(),
            Error::TooManySquares { squares: 2, order: 2 }
        );
    }

    #[test]
    fn verify_reports() {
        let empty = MolsSet::new(4, Construction::Custom, Vec::new()).unwrap();
        let r = verify_mols(&empty);
        assert!(r.is_valid && !r.is_complete);

        let set = complete_set_cubic(pp(2), None).unwrap();
        assert_eq!(set.len(), 3);
        let r = verify_mols(&set);
        assert!(r.is_valid && r.is_complete);

        let mut squares = set.into_squares();
        squares[2] = squares[0].clone();
        let dup = MolsSet::new(4, Construction::Custom, squares).unwrap();
        let r = verify_mols(&dup);
        assert!(!r.is_valid);
        assert_eq!(r.failing_pair, Some((0, 2)));

        let bad = LatinSquare::from_entries(2, alloc::vec![0, 0, 1, 1], "rows constant").unwrap();
        assert!(!bad.is_latin());
        let r = verify_mols(&MolsSet::new(2, Construction::Custom, alloc::vec![bad]).unwrap());
        assert_eq!(r.non_latin, [0]);
    }

    #[test]
    fn constructions() {
        for q in [2u64, 3] {
            let set = complete_set_cubic(pp(q), None).unwrap();
            assert_eq!(set.len() as u64, q * q - 1);
            assert!(verify_mols(&set).is_complete);
        }
        assert!(matches!(complete_set_cubic(pp(7), None), Err(Error::WrongResidue(_))));
        let ext = Extension::new(pp(2), 2).unwrap();
        assert!(matches!(complete_set_cubic(pp(2), Some(Elem::ONE)), Err(Error::BadAlpha(_))));
        assert!(cubic_alpha_ok(&ext, ext.field().generator()).unwrap());

        let set = complete_set_quartic(pp(2)).unwrap();
        assert_eq!(set.len(), 7);
        assert!(verify_mols(&set).is_complete);
        assert_eq!(complete_set_quartic(pp(3)).unwrap_err(), Error::NotEvenQ(3));

        for q in [2u64, 3] {
            let set = complete_set_quintic(pp(q), None).unwrap();
            assert_eq!(set.len() as u64, q * q - 1);
            assert!(verify_mols(&set).is_complete);
        }
        assert!(matches!(complete_set_quintic(pp(11), None), Err(Error::WrongResidue(_))));
    }

    #[test]
    fn quintic_alpha_for_q3_solves_alpha4_plus_1() {
        let ext = Extension::new(pp(3), 2).unwrap();
        let f = ext.field().clone();
        let a = auto_alpha(Construction::QuinticFamily, &ext).unwrap();
        assert_eq!(f.add(f.pow(a, 4), Elem::ONE), Elem::ZERO);
    }
}
