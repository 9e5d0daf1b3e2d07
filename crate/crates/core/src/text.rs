//! Shared lexer for the polynomial text syntax (`x^2 - 3*x*y^-1 + 2`).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{parse_err, Result};

/// A monomial term: coefficient and one exponent per variable, in the order given to [`parse_terms`].
pub(crate) type Term = (BigInt, Vec<i64>);

/// Parses a signed sum of monomials over the variables `vars`.
///
/// Repeated monomials are kept as separate terms; callers accumulate them.
pub(crate) fn parse_terms(src: &str, vars: &[char], allow_negative: bool) -> Result<Vec<Term>> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return parse_err("empty polynomial");
    }
    let mut pos = 0;
    let mut terms = Vec::new();
    let mut first = true;
    while pos < chars.len() {
        let mut negative = false;
        match chars[pos] {
            '+' => pos += 1,
            '-' => {
                negative = true;
                pos += 1
            }
            _ if first => {}
            c => return parse_err(format!("expected '+' or '-' before '{c}'")),
        }
        first = false;
        let (mut coef, exps) = parse_term(&chars, &mut pos, vars, allow_negative)?;
        if negative {
            coef = -coef;
        }
        terms.push((coef, exps));
    }
    Ok(terms)
}

fn parse_uint(chars: &[char], pos: &mut usize) -> Option<BigInt> {
    let start = *pos;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == start {
        return None;
    }
    let digits: String = chars[start..*pos].iter().collect();
    digits.parse().ok()
}

fn parse_term(chars: &[char], pos: &mut usize, vars: &[char], allow_negative: bool) -> Result<Term> {
    let mut coef = BigInt::one();
    let mut exps = vec![0i64; vars.len()];
    let mut seen_factor = false;
    if let Some(n) = parse_uint(chars, pos) {
        if matches!(chars.get(*pos), Some('.') | Some('/')) {
            return parse_err("non-integer coefficient");
        }
        coef = n;
        seen_factor = true;
    }
    loop {
        if *pos < chars.len() && chars[*pos] == '*' {
            if !seen_factor {
                return parse_err("dangling '*'");
            }
            *pos += 1;
        }
        let Some(&c) = chars.get(*pos) else { break };
        if let Some(idx) = vars.iter().position(|&v| v == c) {
            *pos += 1;
            let mut e = 1i64;
            if chars.get(*pos) == Some(&'^') {
                *pos += 1;
                e = parse_exponent(chars, pos)?;
            }
            if e < 0 && !allow_negative {
                return parse_err("negative exponent not allowed here");
            }
            exps[idx] += e;
            seen_factor = true;
        } else if c.is_ascii_digit() && seen_factor {
            let n = parse_uint(chars, pos).expect("digit present");
            coef *= n;
        } else if c == '+' || c == '-' {
            break;
        } else {
            return parse_err(format!("unexpected character '{c}'"));
        }
    }
    if !seen_factor {
        return parse_err("empty term");
    }
    if coef.is_zero() {
        exps.iter_mut().for_each(|e| *e = 0);
    }
    Ok((coef, exps))
}

fn parse_exponent(chars: &[char], pos: &mut usize) -> Result<i64> {
    let paren = chars.get(*pos) == Some(&'(');
    if paren {
        *pos += 1;
    }
    let neg = chars.get(*pos) == Some(&'-');
    if neg {
        *pos += 1;
    }
    let Some(n) = parse_uint(chars, pos) else {
        return parse_err("missing exponent");
    };
    if paren {
        if chars.get(*pos) != Some(&')') {
            return parse_err("unclosed exponent parenthesis");
        }
        *pos += 1;
    }
    let n: i64 = n.try_into().map_err(|_| crate::error::Error::Parse("exponent too large".into()))?;
    Ok(if neg { -n } else { n })
}

/// Renders `coef * mono` with the sign handled by the caller's joiner.
pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (&'a BigInt, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let neg = c.sign() == num_bigint::Sign::Minus;
        let abs = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Serializes a big integer as its decimal string.
pub(crate) fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `x^e` rendering for one variable (empty for `e = 0`).
pub(crate) fn render_power(var: char, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_basic() {
        let t = parse_terms("x^2 - x - 1", &['x'], false).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0], (BigInt::from(1), vec![2]));
        assert_eq!(t[1], (BigInt::from(-1), vec![1]));
        assert_eq!(t[2], (BigInt::from(-1), vec![0]));
    }

    #[test]
    fn terms_mixed() {
        let t = parse_terms("-3*x*y^-1 + 2y + 5", &['x', 'y'], true).unwrap();
        assert_eq!(t[0], (BigInt::from(-3), vec![1, -1]));
        assert_eq!(t[1], (BigInt::from(2), vec![0, 1]));
        assert_eq!(t[2], (BigInt::from(5), vec![0, 0]));
    }

    #[test]
    fn rejects_fractions_and_junk() {
        assert!(parse_terms("1.5x", &['x'], false).is_err());
        assert!(parse_terms("x/2", &['x'], false).is_err());
        assert!(parse_terms("x^-1", &['x'], false).is_err());
        assert!(parse_terms("z", &['x'], false).is_err());
        assert!(parse_terms("", &['x'], false).is_err());
        assert!(parse_terms("x +", &['x'], false).is_err());
    }
}
