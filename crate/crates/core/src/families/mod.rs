//! Explicit families of permutation and complete permutation polynomials.
//!
//! Every family pairs a predicate (the closed-form classification) with an
//! exhaustive oracle. [`FamilySweep`] walks a family's parameter space in
//! independent units so callers can run them in parallel and merge the results
//! in unit order; [`enumerate_family`] is the sequential driver.

mod binomial;
mod complete;
mod dickson;
mod oracle;
mod subfield_pp;

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

pub use binomial::{binomial_genlem_check, complete_binomial_check};
pub use complete::{
    complete_monomial_check, cubic2_check, quartic2_check, quintic2_check, wu_lin_exponent, wu_lin_witnesses,
};
pub use dickson::dickson_list;
pub use oracle::ScaledLinearOracle;
pub use subfield_pp::{
    cubic_alpha_set, cubic_cases, quartic_alpha_set, quartic_cases, quartic_qplus3_check, quintic_alpha_set,
    quintic_cases, AlphaSet,
};

use crate::error::{Error, Result};
use crate::field::{build_field_with_limit, Elem, Field, PrimePower, Tower, DEFAULT_MAX_ORDER};
use crate::perm::{check_map, complete_map};
use crate::poly::Poly;

/// Complete-permutation oracles evaluate the assembled polynomial directly up to
/// this field size and switch to [`ScaledLinearOracle`] above it.
pub const DIRECT_ORACLE_LIMIT: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    DicksonCase1,
    DicksonCase2,
    DicksonCase3,
    DicksonCase4,
    DicksonCase5,
    DicksonCase6,
    DicksonCase7,
    Cubic,
    Quartic,
    QuarticQplus3,
    Quintic,
    CompleteMonomial,
    WuLin,
    Cubic2,
    Quartic2,
    Quintic2,
    BinomialGenLem,
    CompleteBinomial,
}

/// What a family's members are claimed to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Permutation,
    CompletePermutation,
}

impl FamilyId {
    pub const ALL: [FamilyId; 18] = [
        FamilyId::DicksonCase1,
        FamilyId::DicksonCase2,
        FamilyId::DicksonCase3,
        FamilyId::DicksonCase4,
        FamilyId::DicksonCase5,
        FamilyId::DicksonCase6,
        FamilyId::DicksonCase7,
        FamilyId::Cubic,
        FamilyId::Quartic,
        FamilyId::QuarticQplus3,
        FamilyId::Quintic,
        FamilyId::CompleteMonomial,
        FamilyId::WuLin,
        FamilyId::Cubic2,
        FamilyId::Quartic2,
        FamilyId::Quintic2,
        FamilyId::BinomialGenLem,
        FamilyId::CompleteBinomial,
    ];

    pub const DICKSON: [FamilyId; 7] = [
        FamilyId::DicksonCase1,
        FamilyId::DicksonCase2,
        FamilyId::DicksonCase3,
        FamilyId::DicksonCase4,
        FamilyId::DicksonCase5,
        FamilyId::DicksonCase6,
        FamilyId::DicksonCase7,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FamilyId::DicksonCase1 => "dickson1",
            FamilyId::DicksonCase2 => "dickson2",
            FamilyId::DicksonCase3 => "dickson3",
            FamilyId::DicksonCase4 => "dickson4",
            FamilyId::DicksonCase5 => "dickson5",
            FamilyId::DicksonCase6 => "dickson6",
            FamilyId::DicksonCase7 => "dickson7",
            FamilyId::Cubic => "cubic",
            FamilyId::Quartic => "quartic",
            FamilyId::QuarticQplus3 => "quartic-qplus3",
            FamilyId::Quintic => "quintic",
            FamilyId::CompleteMonomial => "complete-monomial",
            FamilyId::WuLin => "wulin",
            FamilyId::Cubic2 => "cubic2",
            FamilyId::Quartic2 => "quartic2",
            FamilyId::Quintic2 => "quintic2",
            FamilyId::BinomialGenLem => "binomial-genlem",
            FamilyId::CompleteBinomial => "complete-binomial",
        }
    }

    pub fn from_tag(tag: &str) -> Option<FamilyId> {
        let tag = tag.to_ascii_lowercase();
        FamilyId::ALL.iter().copied().find(|f| f.tag() == tag.replace('_', "-"))
    }

    pub fn claim(self) -> Claim {
        match self {
            FamilyId::CompleteMonomial
            | FamilyId::WuLin
            | FamilyId::Cubic2
            | FamilyId::Quartic2
            | FamilyId::Quintic2
            | FamilyId::CompleteBinomial => Claim::CompletePermutation,
            _ => Claim::Permutation,
        }
    }

    /// Degree `m` of the ambient field over `F_Q` (before any user override).
    pub fn extension_degree(self) -> u32 {
        match self {
            f if FamilyId::DICKSON.contains(&f) => 1,
            FamilyId::Quartic | FamilyId::Quartic2 => 3,
            _ => 2,
        }
    }

    /// Whether the predicate is an exact classification over the swept
    /// parameters. The low-degree list cases only list permutations.
    pub fn is_classification(self) -> bool {
        !FamilyId::DICKSON.contains(&self)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Set of case numbers (1-based) of a classification that hold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cases(u16);

impl Cases {
    pub const NONE: Cases = Cases(0);

    pub fn with(self, case: u8, holds: bool) -> Cases {
        if holds {
            Cases(self.0 | 1 << case)
        } else {
            self
        }
    }

    pub fn any(self) -> bool {
        self.0 != 0
    }

    pub fn contains(self, case: u8) -> bool {
        self.0 & (1 << case) != 0
    }

    pub fn iter(self) -> impl Iterator<Item = u8> {
        (1..16u8).filter(move |&c| self.contains(c))
    }
}

/// `F_{Q^m}` together with its subfield `F_Q`.
#[derive(Clone, Debug)]
pub struct Extension {
    field: Arc<Field>,
    tower: Tower,
    subfield: Vec<Elem>,
}

impl Extension {
    pub fn new(sub: PrimePower, m: u32) -> Result<Self> {
        Self::with_limit(sub, m, DEFAULT_MAX_ORDER)
    }

    pub fn with_limit(sub: PrimePower, m: u32, max_order: u64) -> Result<Self> {
        let tower = Tower::new(sub, m)?;
        let field = Arc::new(build_field_with_limit(tower.ambient(), max_order)?);
        Self::from_field(field, tower)
    }

    pub fn from_field(field: Arc<Field>, tower: Tower) -> Result<Self> {
        let subfield = field.subfield_elements(&tower)?;
        Ok(Extension { field, tower, subfield })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// `Q` as an integer.
    pub fn sub_q(&self) -> u64 {
        self.tower.sub().q() as u64
    }

    pub fn degree(&self) -> u32 {
        self.tower.m()
    }

    /// Elements of `F_Q`, sorted by code.
    pub fn subfield(&self) -> &[Elem] {
        &self.subfield
    }

    pub fn in_subfield(&self, a: Elem) -> bool {
        self.subfield.binary_search(&a).is_ok()
    }

    /// Nonzero elements of `F_Q` as successive powers of its generator.
    pub fn subfield_units(&self) -> Vec<Elem> {
        let f = &self.field;
        let z = f.pow(f.generator(), self.tower.norm_exponent());
        let mut cur = Elem::ONE;
        (1..self.sub_q())
            .map(|_| {
                let out = cur;
                cur = f.mul(cur, z);
                out
            })
            .collect()
    }

    /// `sum c_i a^(e_i)` for integer coefficients `c_i`.
    pub fn int_poly_at(&self, a: Elem, terms: &[(u64, i64)]) -> Elem {
        let f = &self.field;
        terms.iter().fold(Elem::ZERO, |acc, &(e, c)| f.add(acc, f.mul(f.from_int(c), f.pow(a, e))))
    }

    pub(crate) fn require_degree(&self, m: u32) -> Result<()> {
        if self.tower.m() == m {
            Ok(())
        } else {
            Err(Error::BadParams("wrong extension degree for this family"))
        }
    }

    pub(crate) fn require_subfield(&self, a: Elem) -> Result<()> {
        if self.in_subfield(a) {
            Ok(())
        } else {
            Err(Error::NotSubfieldCoeffs)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamValue {
    Elem(Elem),
    Int(u64),
}

/// Parameters of one family member. Unused slots stay `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Params {
    pub alpha: Option<Elem>,
    pub beta: Option<Elem>,
    pub gamma: Option<Elem>,
    pub r: Option<u64>,
    pub d: Option<u64>,
    pub s: Option<u64>,
    pub m: Option<u64>,
}

impl Params {
    /// Named values in a fixed order.
    pub fn named(&self) -> Vec<(&'static str, ParamValue)> {
        let mut out = Vec::new();
        let elems = [("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)];
        for (name, v) in elems {
            if let Some(v) = v {
                out.push((name, ParamValue::Elem(v)));
            }
        }
        let ints = [("r", self.r), ("d", self.d), ("s", self.s), ("m", self.m)];
        for (name, v) in ints {
            if let Some(v) = v {
                out.push((name, ParamValue::Int(v)));
            }
        }
        out
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, v)) in self.named().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match v {
                ParamValue::Elem(e) => write!(f, "{name}={e}")?,
                ParamValue::Int(k) => write!(f, "{name}={k}")?,
            }
        }
        Ok(())
    }
}

/// A concrete member of a family.
#[derive(Clone, Debug)]
pub struct FamilyWitness {
    pub family: FamilyId,
    pub field: Arc<Field>,
    pub params: Params,
    /// Nonzero terms `(degree, coefficient)` in increasing degree.
    pub terms: Vec<(u64, Elem)>,
    pub oracle_confirmed: bool,
}

impl FamilyWitness {
    pub fn poly(&self) -> Poly {
        let terms: Vec<(usize, Elem)> = self.terms.iter().map(|&(k, c)| (k as usize, c)).collect();
        Poly::from_terms(&self.field, &terms)
    }

    pub fn eval(&self, a: Elem) -> Elem {
        eval_terms(&self.field, &self.terms, a)
    }
}

pub(crate) fn eval_terms(f: &Field, terms: &[(u64, Elem)], a: Elem) -> Elem {
    terms.iter().fold(Elem::ZERO, |acc, &(k, c)| f.add(acc, f.mul(c, f.pow(a, k))))
}

/// Sorted nonzero terms, merging equal degrees.
pub(crate) fn normalize_terms(f: &Field, raw: &[(u64, Elem)]) -> Vec<(u64, Elem)> {
    let mut out: Vec<(u64, Elem)> = Vec::with_capacity(raw.len());
    let mut sorted = raw.to_vec();
    sorted.sort_by_key(|t| t.0);
    for (k, c) in sorted {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 = f.add(last.1, c),
            _ => out.push((k, c)),
        }
    }
    out.retain(|t| !t.1.is_zero());
    out
}

/// Bounds on the integer parameters swept by [`enumerate_family`].
#[derive(Clone, Debug)]
pub struct EnumLimits {
    pub max_order: u64,
    /// Extension degree for the complete-monomial family.
    pub m: u32,
    /// Largest `s` for the complete-monomial family (default `Q - 1`).
    pub s_max: Option<u64>,
    /// Largest `r` for the binomial family (default `Q`).
    pub r_max: Option<u64>,
    /// Largest `d` for the binomial families (default `Q + 1`).
    pub d_max: Option<u64>,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { max_order: DEFAULT_MAX_ORDER, m: 2, s_max: None, r_max: None, d_max: None }
    }
}

/// A parameter combination where predicate and oracle disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub params: Params,
    pub predicate: bool,
    pub oracle: bool,
}

/// Output of one sweep unit.
#[derive(Clone, Debug, Default)]
pub struct UnitResult {
    pub witnesses: Vec<FamilyWitness>,
    pub checked: u64,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub family: FamilyId,
    pub sub: PrimePower,
    pub ambient: PrimePower,
    pub witnesses: Vec<FamilyWitness>,
    /// Parameter combinations examined.
    pub checked: u64,
    pub verified: bool,
    /// Witnesses the oracle rejects.
    pub false_positives: Vec<Params>,
    /// Non-witnesses the oracle accepts; only failures for classifications.
    pub false_negatives: Vec<Params>,
    pub expected_count: Option<u64>,
}

impl Enumeration {
    pub fn count(&self) -> u64 {
        self.witnesses.len() as u64
    }

    pub fn count_matches(&self) -> bool {
        self.expected_count.is_none_or(|e| e == self.count())
    }

    /// Counts agree with the closed form and, when verified, the oracle agrees
    /// in every direction the family claims.
    pub fn passed(&self) -> bool {
        let oracle_ok = !self.verified
            || (self.false_positives.is_empty()
                && (!self.family.is_classification() || self.false_negatives.is_empty()));
        oracle_ok && self.count_matches()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Unit {
    Fixed,
    Alpha(Elem),
    Beta(Elem),
    S(u64),
    D(u64),
    RD(u64, u64),
}

/// One family over one `Q`, split into independently runnable units.
pub struct FamilySweep {
    family: FamilyId,
    ext: Extension,
    units: Vec<Unit>,
    verify: bool,
    m_override: u32,
    /// Shared oracle for families whose exponent does not depend on the unit.
    shared_oracle: Option<ScaledLinearOracle>,
}

impl FamilySweep {
    pub fn new(family: FamilyId, sub: PrimePower, limits: &EnumLimits, verify: bool) -> Result<Self> {
        let m = match family {
            FamilyId::CompleteMonomial => limits.m,
            f => f.extension_degree(),
        };
        if family == FamilyId::WuLin && !is_power_of_four(sub) {
            return Err(Error::NotPowerOfFour(sub.q()));
        }
        let q_sub = sub.q() as u64;
        if family == FamilyId::CompleteMonomial && crate::arith::gcd(m as u64, q_sub - 1) != 1 {
            return Err(Error::BadParams("complete-monomial needs gcd(m, Q-1) = 1"));
        }
        let ext = Extension::with_limit(sub, m, limits.max_order)?;
        let field = ext.field().clone();
        let units = match family {
            f if FamilyId::DICKSON.contains(&f) => dickson::units(f, &ext),
            FamilyId::WuLin => ext.subfield_units().into_iter().map(Unit::Alpha).collect(),
            FamilyId::CompleteMonomial => (1..=limits.s_max.unwrap_or(q_sub - 1).max(1)).map(Unit::S).collect(),
            FamilyId::CompleteBinomial => (1..=limits.d_max.unwrap_or(q_sub + 1)).map(Unit::D).collect(),
            FamilyId::BinomialGenLem => {
                let (rm, dm) = (limits.r_max.unwrap_or(q_sub), limits.d_max.unwrap_or(q_sub + 1));
                (1..=rm).flat_map(|r| (1..=dm).map(move |d| Unit::RD(r, d))).collect()
            }
            _ => field.nonzero_by_generator_power().into_iter().map(Unit::Alpha).collect(),
        };
        let mut sweep = FamilySweep { family, ext, units, verify, m_override: m, shared_oracle: None };
        if verify && field.q() > DIRECT_ORACLE_LIMIT {
            sweep.shared_oracle = match family {
                FamilyId::Cubic2 | FamilyId::Quartic2 | FamilyId::Quintic2 => {
                    let k = complete::exponent(family, &sweep.ext);
                    Some(ScaledLinearOracle::new(&field, k, field.elements()))
                }
                FamilyId::WuLin => {
                    let k = wu_lin_exponent(q_sub);
                    Some(ScaledLinearOracle::new(&field, k, sweep.ext.subfield().iter().copied()))
                }
                _ => None,
            };
        }
        Ok(sweep)
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn units(&self) -> usize {
        self.units.len()
    }

    pub fn run_unit(&self, index: usize) -> UnitResult {
        let mut out = UnitResult::default();
        let unit = self.units[index];
        match self.family.claim() {
            Claim::Permutation => self.run_pp_unit(unit, &mut out),
            Claim::CompletePermutation => self.run_complete_unit(unit, &mut out),
        }
        out
    }

    fn record(&self, out: &mut UnitResult, params: Params, predicate: bool, terms: Vec<(u64, Elem)>, oracle: impl FnOnce(&[(u64, Elem)]) -> bool) {
        out.checked += 1;
        let terms = normalize_terms(self.ext.field(), &terms);
        let verdict = self.verify.then(|| oracle(&terms));
        if let Some(o) = verdict {
            if o != predicate {
                out.mismatches.push(Mismatch { params, predicate, oracle: o });
            }
        }
        if predicate {
            out.witnesses.push(FamilyWitness {
                family: self.family,
                field: self.ext.field().clone(),
                params,
                terms,
                oracle_confirmed: verdict == Some(true),
            });
        }
    }

    fn run_pp_unit(&self, unit: Unit, out: &mut UnitResult) {
        let field = self.ext.field().clone();
        let pp_oracle = |terms: &[(u64, Elem)]| check_map(&field, |a| eval_terms(&field, terms, a)).is_permutation;
        for (params, predicate, terms) in self.pp_candidates(unit) {
            self.record(out, params, predicate, terms, pp_oracle);
        }
    }

    fn pp_candidates(&self, unit: Unit) -> Vec<(Params, bool, Vec<(u64, Elem)>)> {
        let ext = &self.ext;
        let f = ext.field();
        let q = ext.sub_q();
        match (self.family, unit) {
            (family, unit) if FamilyId::DICKSON.contains(&family) => dickson::candidates(family, ext, unit),
            (FamilyId::Cubic, Unit::Alpha(a)) => {
                let pred = cubic_cases(ext, a).map(Cases::any).unwrap_or(false);
                let params = Params { alpha: Some(a), ..Params::default() };
                alloc::vec![(params, pred, alloc::vec![(q + 2, Elem::ONE), (1, a)])]
            }
            (FamilyId::Quartic, Unit::Alpha(a)) => {
                let pred = quartic_cases(ext, a).map(Cases::any).unwrap_or(false);
                let params = Params { alpha: Some(a), ..Params::default() };
                alloc::vec![(params, pred, alloc::vec![(q * q + q + 2, Elem::ONE), (1, a)])]
            }
            (FamilyId::QuarticQplus3, Unit::Alpha(a)) => {
                let pred = quartic_qplus3_check(ext, a).unwrap_or(false);
                let params = Params { alpha: Some(a), ..Params::default() };
                alloc::vec![(params, pred, alloc::vec![(q + 3, Elem::ONE), (2, a)])]
            }
            (FamilyId::Quintic, Unit::Alpha(a)) => {
                let pred = quintic_cases(ext, a).map(Cases::any).unwrap_or(false);
                let params = Params { alpha: Some(a), ..Params::default() };
                alloc::vec![(params, pred, alloc::vec![(2 * q + 3, Elem::ONE), (1, a)])]
            }
            (FamilyId::BinomialGenLem, Unit::RD(r, d)) => f
                .roots_of_unity(q + 1)
                .expect("Q+1 divides Q^2-1")
                .into_iter()
                .map(|b| {
                    let pred = binomial_genlem_check(ext, r, d, b).expect("b is a (Q+1)-th root of unity");
                    let params = Params { beta: Some(b), r: Some(r), d: Some(d), ..Params::default() };
                    let inv = f.inv(b).expect("roots of unity are nonzero");
                    (params, pred, alloc::vec![(r + d * (q - 1), Elem::ONE), (r, inv)])
                })
                .collect(),
            (family, unit) => unreachable!("{family:?} has no unit {unit:?}"),
        }
    }

    fn run_complete_unit(&self, unit: Unit, out: &mut UnitResult) {
        let ext = &self.ext;
        let field = ext.field().clone();
        let q = ext.sub_q();
        let direct = field.q() <= DIRECT_ORACLE_LIMIT;
        // (params, predicate, leading coefficient, exponent, linear coefficient)
        let candidates: Vec<(Params, bool, Elem, u64, Elem)> = match (self.family, unit) {
            (FamilyId::Cubic2 | FamilyId::Quartic2 | FamilyId::Quintic2, Unit::Alpha(a)) => {
                let k = complete::exponent(self.family, ext);
                ext.subfield()
                    .iter()
                    .map(|&b| {
                        let pred = match self.family {
                            FamilyId::Cubic2 => cubic2_check(ext, a, b),
                            FamilyId::Quartic2 => quartic2_check(ext, a, b),
                            _ => quintic2_check(ext, a, b),
                        }
                        .map(Cases::any)
                        .expect("alpha nonzero and beta in the subfield");
                        (Params { alpha: Some(a), beta: Some(b), ..Params::default() }, pred, a, k, b)
                    })
                    .collect()
            }
            (FamilyId::WuLin, Unit::Alpha(a)) => {
                let tower = ext.tower();
                let pred = !field.is_kth_power_in_subfield(a, 3, tower).expect("alpha in the subfield");
                let params = Params { alpha: Some(a), ..Params::default() };
                alloc::vec![(params, pred, a, wu_lin_exponent(q), Elem::ZERO)]
            }
            (FamilyId::CompleteMonomial, Unit::S(s)) => {
                let k = 1 + s * ext.tower().norm_exponent();
                ext.subfield_units()
                    .into_iter()
                    .map(|a| {
                        let pred = complete_monomial_check(ext, s, a).expect("validated in FamilySweep::new");
                        let params = Params { alpha: Some(a), s: Some(s), m: Some(self.m_override as u64), ..Params::default() };
                        (params, pred, a, k, Elem::ZERO)
                    })
                    .collect()
            }
            (FamilyId::CompleteBinomial, Unit::D(d)) => {
                let k = 1 + d * (q - 1);
                field
                    .roots_of_unity(q + 1)
                    .expect("Q+1 divides Q^2-1")
                    .into_iter()
                    .map(|b| {
                        let pred = complete_binomial_check(ext, d, b).expect("b is a (Q+1)-th root of unity");
                        (Params { beta: Some(b), d: Some(d), ..Params::default() }, pred, b, k, Elem::ZERO)
                    })
                    .collect()
            }
            (family, unit) => unreachable!("{family:?} has no unit {unit:?}"),
        };
        // Per-unit scaled oracle when the exponent varies with the unit.
        let local_oracle = if self.verify && !direct && self.shared_oracle.is_none() && !candidates.is_empty() {
            let k = candidates[0].3;
            let gammas: Vec<Elem> = candidates
                .iter()
                .flat_map(|c| {
                    let inv = field.inv(c.2).expect("leading coefficient is nonzero");
                    [field.mul(c.4, inv), field.mul(field.add(c.4, Elem::ONE), inv)]
                })
                .collect();
            Some(ScaledLinearOracle::new(&field, k, gammas.into_iter()))
        } else {
            None
        };
        for (params, pred, lead, k, lin) in candidates {
            let terms = alloc::vec![(k, lead), (1, lin)];
            let oracle = |terms: &[(u64, Elem)]| {
                if direct {
                    complete_map(&field, |x| eval_terms(&field, terms, x)).is_permutation
                } else {
                    let o = self.shared_oracle.as_ref().or(local_oracle.as_ref()).expect("oracle built when verifying");
                    o.is_complete(lead, lin)
                }
            };
            self.record(out, params, pred, terms, oracle);
        }
    }

    /// Merges unit results (in unit order) into the final enumeration.
    pub fn finish(self, results: impl IntoIterator<Item = UnitResult>) -> Enumeration {
        let mut witnesses = Vec::new();
        let mut checked = 0;
        let (mut false_positives, mut false_negatives) = (Vec::new(), Vec::new());
        for r in results {
            witnesses.extend(r.witnesses);
            checked += r.checked;
            for m in r.mismatches {
                if m.predicate {
                    false_positives.push(m.params);
                } else {
                    false_negatives.push(m.params);
                }
            }
        }
        let expected_count = expected_count(self.family, &self.ext);
        Enumeration {
            family: self.family,
            sub: self.ext.tower().sub(),
            ambient: self.ext.tower().ambient(),
            witnesses,
            checked,
            verified: self.verify,
            false_positives,
            false_negatives,
            expected_count,
        }
    }
}

pub(crate) fn is_power_of_four(q: PrimePower) -> bool {
    q.p() == 2 && q.n() % 2 == 0
}

/// Runs every unit of a family sweep in order.
pub fn enumerate_family(family: FamilyId, sub: PrimePower, limits: &EnumLimits, verify: bool) -> Result<Enumeration> {
    let sweep = FamilySweep::new(family, sub, limits, verify)?;
    let results: Vec<UnitResult> = (0..sweep.units()).map(|i| sweep.run_unit(i)).collect();
    Ok(sweep.finish(results))
}

/// Closed-form witness count for the default parameter ranges, when one is known.
pub fn expected_count(family: FamilyId, ext: &Extension) -> Option<u64> {
    let q = ext.sub_q();
    let p = ext.tower().sub().p() as u64;
    match family {
        FamilyId::DicksonCase1 => Some((q % 3 != 1) as u64),
        FamilyId::DicksonCase2 => Some(if p == 3 { (q - 1) / 2 } else { 0 }),
        FamilyId::DicksonCase3 => None,
        FamilyId::DicksonCase4 => Some((q % 5 != 1) as u64),
        FamilyId::DicksonCase5 => Some(if matches!(q % 5, 2 | 3) { q } else { 0 }),
        FamilyId::DicksonCase6 => Some(if p == 5 { 3 * (q - 1) / 4 } else { 0 }),
        FamilyId::DicksonCase7 => Some(if p == 5 { (q - 1) / 2 } else { 0 }),
        FamilyId::Cubic => Some(cubic_count(q)),
        FamilyId::Quartic => Some(quartic_count(q)),
        FamilyId::QuarticQplus3 => Some(if q == 2 { 2 } else { 0 }),
        FamilyId::Quintic => Some(quintic_count(q, p)),
        FamilyId::WuLin => Some(2 * (q - 1) / 3),
        FamilyId::Cubic2 => Some(cubic_count(q) * q),
        FamilyId::Quartic2 => Some(match q {
            2 => 12,
            3 => 12,
            7 => 24 * 5,
            _ if q % 2 == 0 => (q * q - 1) * q,
            _ => 0,
        }),
        FamilyId::Quintic2 => Some(ext.subfield().iter().map(|&b| quintic2_count_for_beta(ext, b)).sum()),
        FamilyId::CompleteMonomial | FamilyId::BinomialGenLem | FamilyId::CompleteBinomial => None,
    }
}

fn cubic_count(q: u64) -> u64 {
    match q % 3 {
        2 => 2 * (q - 1),
        0 => q - 1,
        _ => 0,
    }
}

fn quartic_count(q: u64) -> u64 {
    match q {
        2 => 6,
        3 => 12,
        7 => 24,
        _ if q % 2 == 0 => q * q - 1,
        _ => 0,
    }
}

/// Size of the union of the quintic cases; the cases are pairwise disjoint.
fn quintic_count(q: u64, p: u64) -> u64 {
    let mut n = 0;
    if matches!(q % 5, 2 | 3) {
        n += 2 * q - 2;
    }
    if p == 5 {
        n += 3 * (q - 1) / 2;
    }
    n + match q {
        13 => 12,
        5 => 4,
        3 => 3,
        _ => 0,
    }
}

/// Number of `alpha` making `alpha x^(2Q+3) + beta x` complete, per `beta`.
fn quintic2_count_for_beta(ext: &Extension, beta: Elem) -> u64 {
    let f = ext.field();
    let q = ext.sub_q();
    let is = |k: i64| beta == f.from_int(k);
    if matches!(q % 5, 2 | 3) {
        let extra = match q {
            13 if [0, 3, -4, -1, 5, 6, 7].iter().any(|&k| is(k)) => 12,
            3 => 2 + u64::from(!is(1)),
            _ => 0,
        };
        return 2 * q - 2 + extra;
    }
    if ext.tower().sub().p() != 5 {
        return 0;
    }
    let h = (q - 1) / 2;
    let (u, v) = (f.pow(beta, h), f.pow(f.add(beta, Elem::ONE), h));
    let opposite = (u == Elem::ONE && v == f.neg_one()) || (u == f.neg_one() && v == Elem::ONE);
    let extra = if q == 5 && [0, -1, 2].iter().any(|&k| is(k)) { 4 } else { 0 };
    (q - 1) + if opposite { 0 } else { h } + extra
}
