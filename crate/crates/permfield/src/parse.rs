//! Text syntax for elements and polynomials.
//!
//! Elements: a decimal code in `[0, q)`, `g` or `g^i` (powers of the field's
//! generator, `i` may be negative) and `w` for `g^((q-1)/3)`, a primitive cube
//! root of unity. Polynomials: terms `c*x^k` joined by `+` or `-`, where the
//! coefficient and `*` may be omitted and `x` alone means `x^1`.

use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use permfield_core::{Elem, Field, Poly};

/// Degrees above this are rejected to keep dense polynomials bounded.
pub const MAX_DEGREE: usize = 1 << 22;

pub fn parse_elem(field: &Field, text: &str) -> anyhow::Result<Elem> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(rest) = t.strip_prefix('-') {
        return Ok(field.neg(parse_elem(field, rest)?));
    }
    match t.as_str() {
        "" => bail!("empty element"),
        "g" => return Ok(field.generator()),
        "w" => {
            let qm1 = field.q() as u64 - 1;
            if qm1 % 3 != 0 {
                bail!("w needs 3 | q-1, but q = {}", field.q());
            }
            return Ok(field.pow(field.generator(), qm1 / 3));
        }
        _ => {}
    }
    if let Some(e) = t.strip_prefix("g^") {
        let e: i64 = e.trim_matches(|c| c == '(' || c == ')').parse().with_context(|| format!("bad exponent in {text:?}"))?;
        return Ok(field.pow_signed(field.generator(), e)?);
    }
    let code: u64 = t.parse().map_err(|_| anyhow!("cannot read {text:?} as an element (code, g^i or w)"))?;
    field.elem(code).map_err(|e| anyhow!("{e}"))
}

/// Splits at `+` and `-` that are not part of an exponent, keeping the sign
/// with each piece.
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    let mut prev = None;
    for c in s.chars() {
        if (c == '+' || c == '-') && prev != Some('^') {
            if cur.is_empty() {
                // leading sign, or a sign right after another one as in "x + -1"
                negative ^= c == '-';
            } else {
                out.push((negative, std::mem::take(&mut cur)));
                negative = c == '-';
            }
        } else {
            cur.push(c);
        }
        prev = Some(c);
    }
    out.push((negative, cur));
    out
}

fn parse_term(field: &Field, term: &str) -> anyhow::Result<(usize, Elem)> {
    let Some(pos) = term.find('x') else {
        return Ok((0, parse_elem(field, term)?));
    };
    let (coef, rest) = (term[..pos].trim_end_matches('*'), &term[pos + 1..]);
    let c = if coef.is_empty() { Elem::ONE } else { parse_elem(field, coef)? };
    let k = match rest.strip_prefix('^') {
        None if rest.is_empty() => 1,
        None => bail!("unexpected {rest:?} after x"),
        Some(e) => e.trim_matches(|c| c == '(' || c == ')').parse::<usize>().with_context(|| format!("bad degree in {term:?}"))?,
    };
    if k > MAX_DEGREE {
        bail!("degree {k} exceeds the limit {MAX_DEGREE}");
    }
    Ok((k, c))
}

pub fn parse_poly(field: &Arc<Field>, text: &str) -> anyhow::Result<Poly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        bail!("empty polynomial");
    }
    let mut terms = Vec::new();
    for (negative, piece) in split_terms(&compact) {
        if piece.is_empty() {
            bail!("empty term in {text:?}");
        }
        let (k, c) = parse_term(field, &piece).with_context(|| format!("in term {piece:?}"))?;
        terms.push((k, if negative { field.neg(c) } else { c }));
    }
    let degree = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut coeffs = vec![Elem::ZERO; degree + 1];
    for (k, c) in terms {
        coeffs[k] = field.add(coeffs[k], c);
    }
    Ok(Poly::from_coeffs(field, coeffs))
}
