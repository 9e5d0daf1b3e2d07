//! Generating pairs of `G(𝔟)` and the space of marked groups.

pub mod ball;
pub mod units;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::algnum::LambdaSpec;
use crate::error::{domain_err, parse_err, Error, Result};
use crate::laurent::{ext_gcd, ideal_member1, IdealShape1, IdealShape2, Laurent1};
use crate::metabelian::{default_marking, gelement_eval, is_identity_G, is_identity_M, GElement, GPair, Word};
pub use ball::{agreement_of, agreement_radius, ball_words, radius_cap, relation_set, relation_set_sequential, RelationSet};
pub use units::{unit_test, unit_test_lattice, unit_test_residue_fields};

/// `δ(k) = (x^k − 1)/(x − 1)` reduced in the ideal context.
pub fn delta(b: &IdealShape1, k: i64) -> Laurent1 {
    b.reduce(&Laurent1::geometric(k))
}

/// `Δ(g, h) = r'·δ(k) − r·δ(k')` for `g = (r, k)`, `h = (r', k')`.
#[allow(non_snake_case)]
pub fn Delta(b: &IdealShape1, g: &GElement, h: &GElement) -> Laurent1 {
    b.reduce(&(&(&h.r * &Laurent1::geometric(g.k)) - &(&g.r * &Laurent1::geometric(h.k))))
}

/// `σ(g, h) = (k, k')`.
pub fn sigma(s: &GPair) -> (i64, i64) {
    (s.0.k, s.1.k)
}

pub fn is_generating_pair(b: &IdealShape1, s: &GPair) -> bool {
    let (k, l) = sigma(s);
    num_integer::Integer::gcd(&k, &l) == 1 && unit_test(b, &Delta(b, &s.0, &s.1))
}

/// Words in `a, b` for a generating pair with `σ = (k, l)`.
///
/// Euclid steps `(s, t) → (t, s − q·t)` with nonnegative remainders, undone as the Nielsen
/// moves `(g, h) ↦ (h·g^q, g)` starting from `(a^{±1}, b)`.
pub fn pair_words_from_sigma(k: i64, l: i64) -> Result<(Word, Word)> {
    if ext_gcd(k, l).0 != 1 {
        return domain_err(format!("σ = ({k}, {l}) is not a coprime pair"));
    }
    let mut quotients = Vec::new();
    let (mut s, mut t) = (k, l);
    while t != 0 {
        let q = s.div_euclid(t);
        quotients.push(q);
        (s, t) = (t, s.rem_euclid(t));
    }
    let mut g = Word::a().pow(s.signum());
    let mut h = Word::b();
    for q in quotients.into_iter().rev() {
        (g, h) = (h.mul(&g.pow(q)), g);
    }
    Ok((g, h))
}

/// A generating pair of `G(𝔟)` with `σ = (k, l)`, together with its words in `a, b`.
pub fn pair_from_sigma(b: &IdealShape1, k: i64, l: i64) -> Result<(GPair, (Word, Word))> {
    let words = pair_words_from_sigma(k, l)?;
    let base = default_marking();
    let s = (gelement_eval(b, &words.0, &base), gelement_eval(b, &words.1, &base));
    if sigma(&s) != (k, l) || !is_generating_pair(b, &s) {
        return Err(Error::Internal(format!("constructed pair for ({k}, {l}) failed verification")));
    }
    Ok((s, words))
}

/// Equality of two elements of `G(𝔟)`.
pub fn gelement_eq(b: &IdealShape1, g: &GElement, h: &GElement) -> bool {
    g.k == h.k && ideal_member1(b, &(&g.r - &h.r))
}

/// A 2-generated marked group from the families handled here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MarkedGroup {
    /// `G(𝔟)` marked by the images of two words in the standard generators.
    G { ideal: IdealShape1, words: (Word, Word) },
    /// `M(𝔞)` with its defining marking.
    M { ideal: IdealShape2 },
}

impl MarkedGroup {
    pub fn g(lambda: &LambdaSpec) -> Self {
        MarkedGroup::G { ideal: IdealShape1::from_lambda(lambda), words: (Word::a(), Word::b()) }
    }

    pub fn g_sigma(lambda: &LambdaSpec, k: i64, l: i64) -> Result<Self> {
        let ideal = IdealShape1::from_lambda(lambda);
        let (_, words) = pair_from_sigma(&ideal, k, l)?;
        Ok(MarkedGroup::G { ideal, words })
    }

    pub fn m(ideal: IdealShape2) -> Self {
        MarkedGroup::M { ideal }
    }

    /// `G(𝔟)` marked by `(w_a, w_b)`; the pair must generate.
    pub fn g_words(ideal: IdealShape1, words: (Word, Word)) -> Result<Self> {
        let base = default_marking();
        let s = (gelement_eval(&ideal, &words.0, &base), gelement_eval(&ideal, &words.1, &base));
        if !is_generating_pair(&ideal, &s) {
            return domain_err(format!("({}, {}) does not generate", words.0, words.1));
        }
        Ok(MarkedGroup::G { ideal, words })
    }

    /// Whether `w` evaluates to the identity at the marking.
    pub fn is_identity(&self, w: &Word) -> bool {
        match self {
            MarkedGroup::G { ideal, words } => {
                is_identity_G(ideal, &w.substitute(&words.0, &words.1), &default_marking())
            }
            MarkedGroup::M { ideal } => is_identity_M(ideal, w),
        }
    }

    /// The marking pair of a `G` point.
    pub fn g_pair(&self) -> Option<(IdealShape1, GPair)> {
        match self {
            MarkedGroup::G { ideal, words } => {
                let base = default_marking();
                Some((ideal.clone(), (gelement_eval(ideal, &words.0, &base), gelement_eval(ideal, &words.1, &base))))
            }
            MarkedGroup::M { .. } => None,
        }
    }
}

fn lambda_text(b: &IdealShape1) -> String {
    match b {
        IdealShape1::Zero => "0".into(),
        IdealShape1::CharOnly(p) => format!("0@{p}"),
        IdealShape1::Poly(pp, 0) => pp.to_string(),
        IdealShape1::Poly(pp, p) => format!("{pp}@{p}"),
    }
}

impl fmt::Display for MarkedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkedGroup::G { ideal, words } => {
                write!(f, "G[{}]", lambda_text(ideal))?;
                if *words != (Word::a(), Word::b()) {
                    write!(f, "{{{},{}}}", words.0, words.1)?;
                }
                Ok(())
            }
            MarkedGroup::M { ideal } => write!(f, "M[{ideal}]"),
        }
    }
}

impl FromStr for MarkedGroup {
    type Err = Error;

    /// `G[<λ>]`, `G[<λ>]:(k,l)`, `G[<λ>]{w_a,w_b}`, `M[<ideal>]`; `Z2` abbreviates `M[[1]]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z2" {
            return Ok(MarkedGroup::m(IdealShape2::Full));
        }
        if let Some(rest) = s.strip_prefix("M[") {
            let inner = rest.strip_suffix(']').ok_or_else(|| Error::Parse(format!("bad group '{s}'")))?;
            return Ok(MarkedGroup::m(inner.parse()?));
        }
        let Some(rest) = s.strip_prefix("G[") else {
            return parse_err(format!("bad group '{s}': expected G[...] or M[...]"));
        };
        let close = rest.find(']').ok_or_else(|| Error::Parse(format!("bad group '{s}'")))?;
        let lambda: LambdaSpec = rest[..close].parse()?;
        let tail = rest[close + 1..].trim();
        if tail.is_empty() {
            return Ok(MarkedGroup::g(&lambda));
        }
        if let Some(sig) = tail.strip_prefix(':') {
            let sig = sig.trim().trim_start_matches('(').trim_end_matches(')');
            let (k, l) = sig.split_once(',').ok_or_else(|| Error::Parse(format!("bad marking '{tail}'")))?;
            let k: i64 = k.trim().parse().map_err(|_| Error::Parse(format!("bad marking '{tail}'")))?;
            let l: i64 = l.trim().parse().map_err(|_| Error::Parse(format!("bad marking '{tail}'")))?;
            return MarkedGroup::g_sigma(&lambda, k, l);
        }
        if let Some(ws) = tail.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            let (wa, wb) = split_top_comma(ws).ok_or_else(|| Error::Parse(format!("bad marking '{tail}'")))?;
            let words = (wa.parse()?, wb.parse()?);
            return MarkedGroup::g_words(IdealShape1::from_lambda(&lambda), words);
        }
        parse_err(format!("bad marking '{tail}'"))
    }
}

/// Splits at the first comma outside brackets.
fn split_top_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

impl Serialize for MarkedGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(s: &str) -> IdealShape1 {
        IdealShape1::from_lambda(&s.parse().unwrap())
    }

    fn el(r: &str, k: i64) -> GElement {
        GElement::new(r.parse().unwrap(), k)
    }

    #[test]
    fn delta_values() {
        let b = ideal("x - 2");
        assert!(delta(&b, 0).is_zero());
        assert_eq!(delta(&b, 1), Laurent1::one());
        assert_eq!(delta(&b, 3), "7".parse().unwrap());
        assert_eq!(Laurent1::geometric(-2), "-x^-1 - x^-2".parse().unwrap());
    }

    #[test]
    fn big_delta_values() {
        let (a, bb) = default_marking();
        assert_eq!(Delta(&ideal("x - 2"), &a, &bb), Laurent1::one());
        assert_eq!(Delta(&ideal("x - 3"), &a, &el("2", 0)), "2".parse().unwrap());
        assert!(Delta(&ideal("x - 3"), &a, &a).is_zero());
    }

    #[test]
    fn generating_pairs() {
        let (a, _) = default_marking();
        let b2 = el("2", 0);
        assert!(is_generating_pair(&ideal("x - 2"), &default_marking()));
        assert!(!is_generating_pair(&ideal("x - 3"), &(a.clone(), b2.clone())));
        assert!(is_generating_pair(&ideal("x - 2"), &(a.clone(), b2.clone())));
        // b = a⁻¹ b² a in G(x − 2).
        let g2 = ideal("x - 2");
        let w: Word = "Abba".parse().unwrap();
        assert!(gelement_eq(&g2, &gelement_eval(&g2, &w, &default_marking()), &default_marking().1));
    }

    #[test]
    fn pairs_from_sigma() {
        let b = ideal("x - 2");
        let (_, w) = pair_from_sigma(&b, 1, 0).unwrap();
        assert_eq!(w, (Word::a(), Word::b()));
        let (s, w) = pair_from_sigma(&b, 0, 1).unwrap();
        assert_eq!(w, (Word::b(), Word::a()));
        assert_eq!(sigma(&s), (0, 1));
        for (k, l) in [(2, 1), (1, 2), (-3, 5), (7, -4), (-1, 0), (0, -1), (13, 8)] {
            let (s, _) = pair_from_sigma(&b, k, l).unwrap();
            assert_eq!(sigma(&s), (k, l));
        }
        assert!(pair_from_sigma(&b, 2, 4).is_err());
    }

    #[test]
    fn group_text() {
        for s in ["G[x - 2]", "M[[x - 2]]", "M[0]", "G[x^2 + x + 1]{b,a}", "G[0]", "M[[x^2 + x + 1; y - 1]]"] {
            let g: MarkedGroup = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        let g: MarkedGroup = "G[x-2]:(0,1)".parse().unwrap();
        assert_eq!(g.to_string(), "G[x - 2]{b,a}");
        assert!("G[x-3]{a,bb}".parse::<MarkedGroup>().is_err());
        assert!("H[x]".parse::<MarkedGroup>().is_err());
    }
}
