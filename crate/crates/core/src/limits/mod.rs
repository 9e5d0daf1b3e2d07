//! Limits of `G(λ)` along sequences of generating pairs, the closure of the orbit of `G(λ)`,
//! and universal-theory checks.

pub mod closure;
pub mod theory;
pub mod verify;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::algnum::{minimal_poly_of_power, IntPolynomial, LambdaSpec};
use crate::error::{domain_err, parse_err, Error, Result};
use crate::laurent::{IdealShape2, Laurent2, UniModMatrix};
use crate::marking::MarkedGroup;
use crate::text;

pub use closure::{cb_rank, closure_points, is_tame, TameFamilySpec, TameVerdict};
pub use theory::{embedding_check, find_phi_witness, m_lambda_ideal, quotient_kernel_witness, verify_phi};
pub use verify::{divergence_witness, DivergenceWitness, geometric_samples, is_nondecreasing, verify_family, VerifyRow};

/// Families are rejected unless coprime on `n ∈ [0, VALIDATION_WINDOW)`.
pub const VALIDATION_WINDOW: i64 = 64;
pub const MAX_FAMILY_DEGREE: usize = 4;

/// A sequence `(k_n, l_n) = σ(S_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceFamily {
    Constant(i64, i64),
    /// Integer polynomials in `n`.
    PolyFamily { k: IntPolynomial, l: IntPolynomial },
    /// Finitely many explicit terms; classified on their second half.
    Explicit(Vec<(i64, i64)>),
}

fn to_i64(v: BigInt) -> Result<i64> {
    i64::try_from(&v).map_err(|_| Error::Domain(format!("sequence value {v} out of range")))
}

impl SequenceFamily {
    pub fn poly(k: IntPolynomial, l: IntPolynomial) -> Result<Self> {
        let f = if k.deg() == 0 && l.deg() == 0 {
            SequenceFamily::Constant(to_i64(k.constant_term())?, to_i64(l.constant_term())?)
        } else {
            SequenceFamily::PolyFamily { k, l }
        };
        f.validate()?;
        Ok(f)
    }

    pub fn explicit(terms: Vec<(i64, i64)>) -> Result<Self> {
        let f = SequenceFamily::Explicit(terms);
        f.validate()?;
        Ok(f)
    }

    /// `(k_n, l_n)`.
    pub fn eval(&self, n: i64) -> Result<(i64, i64)> {
        match self {
            SequenceFamily::Constant(k, l) => Ok((*k, *l)),
            SequenceFamily::PolyFamily { k, l } => {
                let n = BigInt::from(n);
                Ok((to_i64(k.eval(&n))?, to_i64(l.eval(&n))?))
            }
            SequenceFamily::Explicit(v) => usize::try_from(n)
                .ok()
                .and_then(|i| v.get(i).copied())
                .ok_or_else(|| Error::Domain(format!("explicit family has no term {n}"))),
        }
    }

    fn validate(&self) -> Result<()> {
        let check = |(k, l): (i64, i64), n: i64| -> Result<()> {
            if k.gcd(&l) != 1 {
                return domain_err(format!("σ at n = {n} is ({k}, {l}), not coprime"));
            }
            Ok(())
        };
        match self {
            SequenceFamily::Constant(k, l) => check((*k, *l), 0),
            SequenceFamily::PolyFamily { k, l } => {
                if k.deg().max(l.deg()) > MAX_FAMILY_DEGREE {
                    return domain_err(format!("family degree exceeds {MAX_FAMILY_DEGREE}"));
                }
                (0..VALIDATION_WINDOW).try_for_each(|n| check(self.eval(n)?, n))
            }
            SequenceFamily::Explicit(v) => {
                if v.len() < 2 {
                    return domain_err("explicit family needs at least two terms");
                }
                v.iter().enumerate().try_for_each(|(i, p)| check(*p, i as i64))
            }
        }
    }

    fn is_constant(&self) -> bool {
        match self {
            SequenceFamily::Constant(..) => true,
            SequenceFamily::PolyFamily { k, l } => k.deg() == 0 && l.deg() == 0,
            SequenceFamily::Explicit(_) => false,
        }
    }
}

fn parse_poly_n(s: &str) -> Result<IntPolynomial> {
    let terms = text::parse_terms(s, &['n'], false)?;
    let maxd = terms.iter().map(|(_, e)| e[0]).max().unwrap_or(0);
    if maxd as usize > MAX_FAMILY_DEGREE {
        return parse_err(format!("family degree exceeds {MAX_FAMILY_DEGREE}"));
    }
    let mut v = vec![BigInt::zero(); maxd as usize + 1];
    for (c, e) in terms {
        v[e[0] as usize] += c;
    }
    Ok(IntPolynomial::new(v))
}

fn render_poly_n(p: &IntPolynomial) -> String {
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (c, text::render_power('n', i as i64)));
    text::render_terms(terms)
}

impl fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceFamily::Constant(k, l) => write!(f, "k={k},l={l}"),
            SequenceFamily::PolyFamily { k, l } => write!(f, "k={},l={}", render_poly_n(k), render_poly_n(l)),
            SequenceFamily::Explicit(v) => {
                let items: Vec<String> = v.iter().map(|(k, l)| format!("({k},{l})")).collect();
                write!(f, "[{}]", items.join(","))
            }
        }
    }
}

impl FromStr for SequenceFamily {
    type Err = Error;

    /// `k=<poly in n>,l=<poly in n>` or an explicit list `[(k,l),(k,l),...]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let mut terms = Vec::new();
            for item in inner.split(')') {
                let item = item.trim().trim_start_matches(',').trim();
                if item.is_empty() {
                    continue;
                }
                let body = item.strip_prefix('(').ok_or_else(|| Error::Parse(format!("bad term '{item}'")))?;
                let (k, l) = body.split_once(',').ok_or_else(|| Error::Parse(format!("bad term '{item}'")))?;
                let k = k.trim().parse().map_err(|_| Error::Parse(format!("bad term '{item}'")))?;
                let l = l.trim().parse().map_err(|_| Error::Parse(format!("bad term '{item}'")))?;
                terms.push((k, l));
            }
            return SequenceFamily::explicit(terms);
        }
        let mut k = None;
        let mut l = None;
        for part in s.split(',') {
            let (name, val) = part.split_once('=').ok_or_else(|| Error::Parse(format!("bad family '{s}'")))?;
            match name.trim() {
                "k" => k = Some(parse_poly_n(val)?),
                "l" => l = Some(parse_poly_n(val)?),
                other => return parse_err(format!("unknown family component '{other}'")),
            }
        }
        match (k, l) {
            (Some(k), Some(l)) => SequenceFamily::poly(k, l),
            _ => parse_err(format!("family '{s}' needs both k and l")),
        }
    }
}

impl Serialize for SequenceFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Which terms of a divergent family approach a given subsequential limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "by", rename_all = "snake_case")]
pub enum SubKey {
    /// `(k_n, l_n) ≡ (k, l) mod m`.
    Residue { modulus: u64, k: i64, l: i64 },
    /// `(k_n, l_n) = sign·(k, l)`.
    Sign { sign: i64 },
}

impl SubKey {
    pub fn selects(&self, (k, l): (i64, i64), base: (i64, i64)) -> bool {
        match self {
            SubKey::Residue { modulus, k: kb, l: lb } => {
                let m = *modulus as i64;
                k.rem_euclid(m) == *kb && l.rem_euclid(m) == *lb
            }
            SubKey::Sign { sign } => (k, l) == (sign * base.0, sign * base.1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubLimit {
    pub key: SubKey,
    pub limit: LimitClass,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LimitClass {
    /// The family is eventually constant: the limit is `G(λ)` itself with that marking.
    Stationary { group: MarkedGroup },
    /// Convergence to `M(𝔞)`.
    MPoint { ideal: IdealShape2 },
    /// No limit; one subsequential limit per key. `base` anchors sign keys.
    Divergent { base: (i64, i64), limits: Vec<SubLimit> },
}

impl LimitClass {
    /// The marked group the `σ = (k, l)` term should approach.
    pub fn target_for(&self, sigma: (i64, i64)) -> Option<MarkedGroup> {
        match self {
            LimitClass::Stationary { group } => Some(group.clone()),
            LimitClass::MPoint { ideal } => Some(MarkedGroup::m(ideal.clone())),
            LimitClass::Divergent { base, limits } => {
                limits.iter().find(|s| s.key.selects(sigma, *base)).and_then(|s| s.limit.target_for(sigma))
            }
        }
    }
}

impl fmt::Display for LimitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitClass::Stationary { group } => write!(f, "stationary {group}"),
            LimitClass::MPoint { ideal } => write!(f, "M[{ideal}]"),
            LimitClass::Divergent { limits, .. } => {
                let parts: Vec<String> = limits
                    .iter()
                    .map(|s| match &s.key {
                        SubKey::Residue { modulus, k, l } => format!("(k,l) ≡ ({k},{l}) mod {modulus} → {}", s.limit),
                        SubKey::Sign { sign } => format!("sign {sign:+} → {}", s.limit),
                    })
                    .collect();
                write!(f, "divergent: {}", parts.join("; "))
            }
        }
    }
}

/// The kernel of `x ↦ λ^k, y ↦ λ^l`.
///
/// With `B = [[k, l], [-t, s]]` unimodular, `W ∈ 𝔞` iff `W·B ∈ (P_λ(x), y − 1, p)`, so the
/// kernel is that ideal transformed by `B⁻¹`. For transcendental `λ` the base is `(y − 1, p)`.
pub fn corresponding_ideal(lambda: &LambdaSpec, k: i64, l: i64) -> Result<IdealShape2> {
    let b = UniModMatrix::with_first_row(k, l)?;
    let p = lambda.char_p();
    let base = if lambda.is_transcendental() {
        IdealShape2::principal(&Laurent2::y() - &Laurent2::one(), p)?
    } else {
        IdealShape2::line(lambda.min_poly().clone(), p)?
    };
    Ok(IdealShape2::transformed(base, b.inverse()))
}

/// `(P_{λ^γ}(x^α y^β), 0)`.
fn line_limit(lambda: &LambdaSpec, alpha: i64, beta: i64, gamma: i64) -> Result<IdealShape2> {
    let q = minimal_poly_of_power(lambda.min_poly(), u32::try_from(gamma).map_err(|_| Error::Domain("γ too large".into()))?)?;
    let w = Laurent2::from_terms(
        q.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| ((i as i64 * alpha, i as i64 * beta), c.clone())),
    );
    IdealShape2::principal(w, lambda.char_p())
}

/// The free metabelian point `M(p)`.
fn free_point(lambda: &LambdaSpec) -> Result<IdealShape2> {
    IdealShape2::char_only(lambda.char_p())
}

/// Smallest coprime `(k, l) ≡ (kb, lb) mod m` in `[0, 2m²)²`, ordered by `k + l` then `k`.
pub fn lift_residue(kb: i64, lb: i64, m: u64) -> Result<(i64, i64)> {
    let m = m as i64;
    let bound = 2 * m * m;
    let mut best: Option<(i64, i64)> = None;
    let mut k = kb.rem_euclid(m);
    while k < bound {
        let mut l = lb.rem_euclid(m);
        while l < bound {
            if k.gcd(&l) == 1 && best.is_none_or(|(bk, bl)| (k + l, k) < (bk + bl, bk)) {
                best = Some((k, l));
            }
            l += m;
        }
        k += m;
    }
    best.ok_or_else(|| Error::Domain(format!("no coprime lift of ({kb}, {lb}) mod {m}")))
}

fn rou_limit(lambda: &LambdaSpec, residue: (i64, i64), m: u64) -> Result<LimitClass> {
    let (k, l) = lift_residue(residue.0, residue.1, m)?;
    Ok(LimitClass::MPoint { ideal: corresponding_ideal(lambda, k, l)? })
}

fn stationary(lambda: &LambdaSpec, k: i64, l: i64) -> Result<LimitClass> {
    Ok(LimitClass::Stationary { group: MarkedGroup::g_sigma(lambda, k, l)? })
}

fn primitive_normal(alpha: i64, beta: i64) -> (i64, i64) {
    let g = alpha.gcd(&beta);
    (alpha / g, beta / g)
}

/// Decides the limit behaviour of `G(λ)` marked along `fam`.
pub fn classify_limit(lambda: &LambdaSpec, fam: &SequenceFamily) -> Result<LimitClass> {
    fam.validate()?;
    if let Some(m) = lambda.root_of_unity_order()? {
        return classify_root_of_unity(lambda, fam, m);
    }
    match fam {
        SequenceFamily::Constant(k, l) => stationary(lambda, *k, *l),
        SequenceFamily::PolyFamily { .. } if fam.is_constant() => {
            let (k, l) = fam.eval(0)?;
            stationary(lambda, k, l)
        }
        SequenceFamily::PolyFamily { k, l } => {
            if lambda.is_transcendental() {
                return Ok(LimitClass::MPoint { ideal: free_point(lambda)? });
            }
            let d = k.deg().max(l.deg());
            let vk: Vec<BigInt> = (1..=d).map(|i| k.coeff(i)).collect();
            let vl: Vec<BigInt> = (1..=d).map(|i| l.coeff(i)).collect();
            let i = (0..d).find(|&i| !vk[i].is_zero() || !vl[i].is_zero()).expect("nonconstant family");
            let (a, b) = (vl[i].clone(), -vk[i].clone());
            let dependent = (0..d).all(|j| (&a * &vk[j] + &b * &vl[j]).is_zero());
            if !dependent {
                return Ok(LimitClass::MPoint { ideal: free_point(lambda)? });
            }
            let (alpha, beta) = primitive_normal(to_i64(a)?, to_i64(b)?);
            let gamma = alpha * to_i64(k.constant_term())? + beta * to_i64(l.constant_term())?;
            let (alpha, beta, gamma) = if gamma < 0 { (-alpha, -beta, -gamma) } else { (alpha, beta, gamma) };
            Ok(LimitClass::MPoint { ideal: line_limit(lambda, alpha, beta, gamma)? })
        }
        SequenceFamily::Explicit(v) => classify_explicit_tail(lambda, &v[v.len() / 2..]),
    }
}

fn classify_explicit_tail(lambda: &LambdaSpec, tail: &[(i64, i64)]) -> Result<LimitClass> {
    let base = tail[0];
    if tail.iter().all(|p| *p == base) {
        return stationary(lambda, base.0, base.1);
    }
    if tail.iter().all(|&(k, l)| (k, l) == base || (k, l) == (-base.0, -base.1)) {
        if !lambda.is_transcendental() && lambda.min_poly().is_reciprocal() {
            return stationary(lambda, base.0, base.1);
        }
        let limits = [1, -1]
            .into_iter()
            .map(|s| Ok(SubLimit { key: SubKey::Sign { sign: s }, limit: stationary(lambda, s * base.0, s * base.1)? }))
            .collect::<Result<Vec<_>>>()?;
        return Ok(LimitClass::Divergent { base, limits });
    }
    if lambda.is_transcendental() {
        return Ok(LimitClass::MPoint { ideal: free_point(lambda)? });
    }
    let (dk, dl) = tail
        .iter()
        .map(|&(k, l)| (k - base.0, l - base.1))
        .find(|d| *d != (0, 0))
        .expect("nonconstant tail");
    let (alpha, beta) = primitive_normal(dl, -dk);
    let gamma = alpha * base.0 + beta * base.1;
    if tail.iter().any(|&(k, l)| alpha * k + beta * l != gamma) {
        return Ok(LimitClass::MPoint { ideal: free_point(lambda)? });
    }
    let (alpha, beta, gamma) = if gamma < 0 { (-alpha, -beta, -gamma) } else { (alpha, beta, gamma) };
    Ok(LimitClass::MPoint { ideal: line_limit(lambda, alpha, beta, gamma)? })
}

fn classify_root_of_unity(lambda: &LambdaSpec, fam: &SequenceFamily, m: u64) -> Result<LimitClass> {
    let mi = m as i64;
    let residues: Vec<(i64, i64)> = match fam {
        SequenceFamily::Explicit(v) => v[v.len() / 2..].to_vec(),
        // Integer polynomials are periodic modulo m with period m.
        _ => (0..mi).map(|n| fam.eval(n)).collect::<Result<_>>()?,
    }
    .into_iter()
    .map(|(k, l)| (k.rem_euclid(mi), l.rem_euclid(mi)))
    .collect();
    let mut distinct: Vec<(i64, i64)> = Vec::new();
    for r in &residues {
        if !distinct.contains(r) {
            distinct.push(*r);
        }
    }
    if distinct.len() == 1 {
        return rou_limit(lambda, distinct[0], m);
    }
    let limits = distinct
        .into_iter()
        .map(|(k, l)| Ok(SubLimit { key: SubKey::Residue { modulus: m, k, l }, limit: rou_limit(lambda, (k, l), m)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitClass::Divergent { base: fam.eval(0)?, limits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{ideal_eq, ideal_member2};

    fn lam(s: &str) -> LambdaSpec {
        s.parse().unwrap()
    }

    fn fam(s: &str) -> SequenceFamily {
        s.parse().unwrap()
    }

    fn i2(s: &str) -> IdealShape2 {
        s.parse().unwrap()
    }

    #[test]
    fn family_text() {
        assert_eq!(fam("k=1,l=n").to_string(), "k=1,l=n");
        assert_eq!(fam("k = n^2, l = n^2+n+1").to_string(), "k=n^2,l=n^2 + n + 1");
        assert_eq!(fam("[(1,0),(1,1),(1,2)]").to_string(), "[(1,0),(1,1),(1,2)]");
        assert_eq!(fam("k=2,l=3"), SequenceFamily::Constant(2, 3));
        assert!("k=2n,l=4n+2".parse::<SequenceFamily>().is_err());
        assert!("k=n^5,l=1".parse::<SequenceFamily>().is_err());
        assert!("k=n".parse::<SequenceFamily>().is_err());
    }

    #[test]
    fn corresponding_ideal_examples() {
        let a = corresponding_ideal(&lam("x - 2"), 1, 2).unwrap();
        assert!(ideal_member2(&a, &"y - x^2".parse().unwrap()));
        assert!(!ideal_member2(&a, &"x - y".parse().unwrap()));
        assert_eq!(corresponding_ideal(&lam("x - 2"), 1, 0).unwrap(), i2("[x - 2; y - 1]"));
        assert!(corresponding_ideal(&lam("x - 2"), 2, 4).is_err());
    }

    #[test]
    fn classify_examples() {
        let c = classify_limit(&lam("x - 2"), &fam("k=1,l=n")).unwrap();
        assert_eq!(c, LimitClass::MPoint { ideal: i2("[x - 2]") });
        let c = classify_limit(&lam("x - 2"), &fam("k=n^2,l=n^2+n+1")).unwrap();
        assert_eq!(c, LimitClass::MPoint { ideal: IdealShape2::Zero });
        let c = classify_limit(&lam("x^2 + x + 1"), &fam("k=3n+1,l=3n")).unwrap();
        assert_eq!(c, LimitClass::MPoint { ideal: i2("[x^2 + x + 1; y - 1]") });
        let LimitClass::Divergent { limits, .. } = classify_limit(&lam("x^2 + x + 1"), &fam("k=n,l=n+1")).unwrap() else {
            panic!("expected divergence");
        };
        assert_eq!(limits.len(), 3);
        let c = classify_limit(&lam("0"), &fam("k=1,l=n")).unwrap();
        assert_eq!(c, LimitClass::MPoint { ideal: IdealShape2::Zero });
    }

    #[test]
    fn classify_power_limits() {
        // 2k - l = 1.
        let c = classify_limit(&lam("x - 2"), &fam("k=n+1,l=2n+1")).unwrap();
        let LimitClass::MPoint { ideal } = c else { panic!() };
        assert!(ideal_eq(&ideal, &i2("[x^2*y^-1 - 2]")));
        // 2k - l = 3 gives the cube: (P_8(x^2 y^-1)).
        let c = classify_limit(&lam("x - 2"), &fam("k=3n+1,l=6n-1")).unwrap();
        let LimitClass::MPoint { ideal } = c else { panic!() };
        assert!(ideal_eq(&ideal, &i2("[x^2*y^-1 - 8]")));
        let c = classify_limit(&lam("x - 2"), &fam("k=-1,l=n")).unwrap();
        let LimitClass::MPoint { ideal } = c else { panic!() };
        assert!(ideal_eq(&ideal, &i2("[x^-1 - 2]")));
    }

    #[test]
    fn classify_explicit() {
        let l2 = lam("x - 2");
        assert!(matches!(classify_limit(&l2, &fam("[(1,0),(2,1),(2,1),(2,1)]")).unwrap(), LimitClass::Stationary { .. }));
        let c = classify_limit(&l2, &fam("[(5,3),(1,4),(1,5),(1,6),(1,7)]")).unwrap();
        assert_eq!(c, LimitClass::MPoint { ideal: i2("[x - 2]") });
        let c = classify_limit(&l2, &fam("[(1,0),(-1,0),(1,0),(-1,0)]")).unwrap();
        assert!(matches!(c, LimitClass::Divergent { .. }));
        let fib = lam("x^2 - x - 1");
        assert!(matches!(classify_limit(&fib, &fam("[(1,0),(-1,0),(1,0),(-1,0)]")).unwrap(), LimitClass::Divergent { .. }));
        let rec = lam("x^2 - 3*x + 1");
        assert!(matches!(classify_limit(&rec, &fam("[(1,0),(-1,0),(1,0),(-1,0)]")).unwrap(), LimitClass::Stationary { .. }));
    }

    #[test]
    fn residue_lift() {
        assert_eq!(lift_residue(1, 0, 3).unwrap(), (1, 0));
        assert_eq!(lift_residue(0, 0, 1).unwrap(), (0, 1));
        assert_eq!(lift_residue(2, 0, 3).unwrap(), (2, 3));
        assert_eq!(lift_residue(-1, 4, 3).unwrap(), (2, 1));
        assert!(lift_residue(3, 3, 6).is_err());
    }
}
