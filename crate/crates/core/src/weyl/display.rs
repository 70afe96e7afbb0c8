use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{TermKey, Var, WeylOperator};
use crate::arith::GQ;

fn factor_name(base: &str, n: usize, j: usize, power: u32) -> String {
    let idx = if n == 1 { String::new() } else { (j + 1).to_string() };
    if power == 1 {
        format!("{base}{idx}")
    } else {
        format!("{base}{idx}^{power}")
    }
}

/// Factors of a term: variables in `x, y, q` order, then derivatives in
/// `dq, dx, dy` order (the order the operators are usually written in).
pub(crate) fn key_factors(key: &TermKey) -> Vec<String> {
    let n = key.n();
    let mut out = Vec::new();
    for v in Var::ALL {
        for j in 0..n {
            let p = key.var(v).get(j);
            if p > 0 {
                out.push(factor_name(v.symbol(), n, j, p));
            }
        }
    }
    for v in [Var::Q, Var::X, Var::Y] {
        let d = format!("d{}", v.symbol());
        for j in 0..n {
            let p = key.der(v).get(j);
            if p > 0 {
                out.push(factor_name(&d, n, j, p));
            }
        }
    }
    out
}

/// Splits a coefficient into (negative?, magnitude text). The magnitude is
/// empty for a unit real coefficient on a non-constant term.
fn coeff_parts(c: &GQ, has_factors: bool) -> (bool, String) {
    let unit_ok = |r: &BigRational| r.is_one() && has_factors;
    if c.is_real() {
        let mag = c.re().abs();
        let text = if unit_ok(&mag) { String::new() } else { mag.to_string() };
        (c.re().is_negative(), text)
    } else if c.is_imaginary() {
        let mag = c.im().abs();
        let text = if mag.is_one() { "i".to_string() } else { format!("{mag} i") };
        (c.im().is_negative(), text)
    } else {
        (false, format!("({c})"))
    }
}

pub(crate) fn render_sum(terms: &[(GQ, Vec<String>)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    // Pull out a common ±i when every coefficient is purely imaginary.
    let all_imag = terms.len() > 1 && terms.iter().all(|(c, _)| c.is_imaginary());
    let (prefix, scaled): (Option<&str>, Vec<(GQ, &Vec<String>)>) = if all_imag {
        let unit = if terms[0].0.im().is_negative() { -GQ::i() } else { GQ::i() };
        let inv = unit.inv().expect("unit");
        let label = if unit == GQ::i() { "i" } else { "-i" };
        (Some(label), terms.iter().map(|(c, f)| (c * &inv, f)).collect())
    } else {
        (None, terms.iter().map(|(c, f)| (c.clone(), f)).collect())
    };
    let mut body = String::new();
    for (idx, (c, factors)) in scaled.iter().enumerate() {
        let (neg, mag) = coeff_parts(c, !factors.is_empty());
        let mut piece = mag;
        for f in factors.iter() {
            if !piece.is_empty() {
                piece.push(' ');
            }
            piece.push_str(f);
        }
        if idx == 0 {
            if neg {
                body.push('-');
            }
        } else {
            body.push_str(if neg { " - " } else { " + " });
        }
        body.push_str(&piece);
    }
    match prefix {
        Some(p) => format!("{p} ({body})"),
        None => body,
    }
}

/// Human-readable form, e.g. `i q dy - dq dx` for the symplectic Dirac
/// operator at `n = 1`. Indices are dropped when `n = 1`.
impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(GQ, Vec<String>)> = self
            .terms()
            .map(|t| (t.coeff.clone(), key_factors(t.key)))
            .collect();
        f.write_str(&render_sum(&terms))
    }
}
