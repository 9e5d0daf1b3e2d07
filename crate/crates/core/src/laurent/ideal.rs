//! The closed taxonomy of ideals: `𝔟 ⊂ Z[x^±1]` for the groups `G(𝔟)` and `𝔞 ⊂ Z[x^±1, y^±1]`
//! for the groups `M(𝔞)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::{divides_exact, gl2_act, to_fp_shifted, Laurent1, Laurent2, UniModMatrix};
use crate::algnum::modp::FpPoly;
use crate::algnum::{factor_over_integers, intfactor, IntPolynomial, LambdaSpec};
use crate::error::{domain_err, parse_err, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IdealShape1 {
    Zero,
    CharOnly(u64),
    /// `(P(x), p)`; for `p > 0` the stored `P` is the monic lift with coefficients in `[0, p)`.
    Poly(IntPolynomial, u64),
}

fn check_prime(p: u64) -> Result<()> {
    if p != 0 && !intfactor::is_prime(&BigInt::from(p)) {
        return domain_err(format!("{p} is not prime"));
    }
    Ok(())
}

/// Irreducible nonconstant `P` with `P(0) != 0`, reduced modulo `p` when `p > 0`.
fn validated_line_poly(p_poly: &IntPolynomial, p: u64) -> Result<IntPolynomial> {
    check_prime(p)?;
    if p == 0 {
        let f = factor_over_integers(p_poly)?;
        if p_poly.deg() == 0 || !f.is_irreducible() {
            return domain_err(format!("{p_poly} is not irreducible over the integers"));
        }
        if p_poly.constant_term().is_zero() {
            return domain_err("x must be invertible: zero constant term");
        }
        Ok(p_poly.canonical())
    } else {
        let f = FpPoly::from_int(p_poly, p);
        if !f.is_irreducible() {
            return domain_err(format!("{p_poly} is not irreducible modulo {p}"));
        }
        if f.c[0] == 0 {
            return domain_err("x must be invertible: zero constant term modulo p");
        }
        Ok(f.monic().to_int())
    }
}

impl IdealShape1 {
    pub fn poly(p_poly: IntPolynomial, p: u64) -> Result<Self> {
        Ok(IdealShape1::Poly(validated_line_poly(&p_poly, p)?, p))
    }

    pub fn char_only(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(if p == 0 { IdealShape1::Zero } else { IdealShape1::CharOnly(p) })
    }

    /// The kernel of `Z[x^±1] → Z_p[λ^±1]`.
    pub fn from_lambda(l: &LambdaSpec) -> Self {
        if l.is_transcendental() {
            if l.char_p() == 0 {
                IdealShape1::Zero
            } else {
                IdealShape1::CharOnly(l.char_p())
            }
        } else {
            IdealShape1::Poly(l.min_poly().clone(), l.char_p())
        }
    }

    pub fn char_p(&self) -> u64 {
        match self {
            IdealShape1::Zero => 0,
            IdealShape1::CharOnly(p) | IdealShape1::Poly(_, p) => *p,
        }
    }

    /// Canonical representative of `w` modulo the ideal where one exists; otherwise a
    /// partially reduced representative of the same class.
    ///
    /// Canonical for `p > 0`, and for `p = 0` when `P` is monic or has `P(0) = ±1`. Other `P`
    /// over the integers return the input unchanged.
    pub fn reduce(&self, w: &Laurent1) -> Laurent1 {
        match self {
            IdealShape1::Zero => w.clone(),
            IdealShape1::CharOnly(p) => w.reduce_mod(*p),
            IdealShape1::Poly(pp, p) if *p > 0 => {
                if w.is_zero() {
                    return Laurent1::zero();
                }
                let m = FpPoly::from_int(pp, *p);
                let (f, s) = to_fp_shifted(w, *p);
                let r = if s >= 0 {
                    f.mul(&FpPoly::x(*p).powmod(&BigInt::from(s), &m)).rem(&m)
                } else {
                    let (_, xinv, _) = FpPoly::x(*p).ext_gcd(&m);
                    f.mul(&xinv.powmod(&BigInt::from(-s), &m)).rem(&m)
                };
                Laurent1::from_poly(&r.to_int())
            }
            IdealShape1::Poly(pp, _) => {
                if w.is_zero() || pp.constant_term().is_zero() {
                    return w.clone();
                }
                if pp.is_monic() {
                    return reduce_monic(pp, w);
                }
                let c0 = pp.constant_term();
                if c0.abs().is_one() {
                    // Reverse-monic: reduce in x^{-1} modulo the reversed polynomial.
                    let rev = pp.reverse().scale(&c0);
                    return invert_exponents(&reduce_monic(&rev, &invert_exponents(w)));
                }
                w.clone()
            }
        }
    }
}

fn invert_exponents(w: &Laurent1) -> Laurent1 {
    Laurent1::from_terms(w.terms().map(|(e, c)| (-e, c.clone())))
}

/// Canonical representative `x^{-m} q` with `deg q < deg P` and `m ≥ 0` minimal.
///
/// `x^{-1} q` is integral exactly when `P(0) | q(0)`, in which case it equals
/// `(q - (q(0)/P(0)) P) / x`.
fn reduce_monic(pp: &IntPolynomial, w: &Laurent1) -> Laurent1 {
    let (f, s) = w.to_poly_shifted();
    if s >= 0 {
        let xs = x_pow_mod(s as u64, pp);
        return Laurent1::from_poly(&poly_rem_monic(&(&poly_rem_monic(&f, pp) * &xs), pp));
    }
    let c0 = pp.constant_term();
    let mut q = poly_rem_monic(&f, pp);
    let mut m = -s;
    while m > 0 && !q.is_zero() {
        let (t, r) = q.constant_term().div_rem(&c0);
        if !r.is_zero() {
            break;
        }
        let lifted = &q - &pp.scale(&t);
        q = IntPolynomial::new(lifted.coeffs()[1..].to_vec());
        m -= 1;
    }
    if q.is_zero() {
        return Laurent1::zero();
    }
    Laurent1::from_poly(&q).shift(-m)
}

/// `x^e mod P` by repeated squaring.
fn x_pow_mod(mut e: u64, pp: &IntPolynomial) -> IntPolynomial {
    let mut base = poly_rem_monic(&IntPolynomial::from_i64(&[0, 1]), pp);
    let mut acc = poly_rem_monic(&IntPolynomial::one(), pp);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem_monic(&(&acc * &base), pp);
        }
        base = poly_rem_monic(&(&base * &base), pp);
        e >>= 1;
    }
    acc
}

fn poly_rem_monic(f: &IntPolynomial, m: &IntPolynomial) -> IntPolynomial {
    if f.deg() < m.deg() || f.is_zero() {
        return f.clone();
    }
    f.pseudo_div_rem(m).1
}

/// Membership in `𝔟 ⊂ Z[x^±1]`.
pub fn ideal_member1(b: &IdealShape1, w: &Laurent1) -> bool {
    if w.is_zero() {
        return true;
    }
    match b {
        IdealShape1::Zero => false,
        IdealShape1::CharOnly(p) => w.reduce_mod(*p).is_zero(),
        IdealShape1::Poly(pp, 0) => {
            let (f, _) = w.to_poly_shifted();
            f.rem_primitive(pp).is_zero()
        }
        IdealShape1::Poly(pp, p) => {
            let (f, _) = to_fp_shifted(w, *p);
            f.is_zero() || f.rem(&FpPoly::from_int(pp, *p)).is_zero()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IdealShape2 {
    Zero,
    CharOnly(u64),
    /// `(Q(x, y), p)` with `Q` primitive after monomial normalization.
    Principal(Laurent2, u64),
    /// `(P(x), y - 1, p)`.
    Line(IntPolynomial, u64),
    /// `A · 𝔞 = { gl2_act(A, W) : W ∈ 𝔞 }`.
    Transformed(Box<IdealShape2>, UniModMatrix),
    Full,
}

impl IdealShape2 {
    pub fn char_only(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(if p == 0 { IdealShape2::Zero } else { IdealShape2::CharOnly(p) })
    }

    pub fn principal(q: Laurent2, p: u64) -> Result<Self> {
        check_prime(p)?;
        let q = q.reduce_mod(p);
        if q.is_zero() {
            return domain_err("principal generator is zero");
        }
        let n = if p == 0 {
            q.primitive()
        } else {
            let n = q.normalized();
            let inv = crate::algnum::modp::invmod(crate::algnum::modp::reduce_big(&n.lead(), p), p);
            n.scale(&BigInt::from(inv)).reduce_mod(p)
        };
        if n.num_terms() == 1 {
            // A normalized monomial is a unit.
            return Ok(IdealShape2::Full);
        }
        Ok(IdealShape2::Principal(n, p))
    }

    pub fn line(p_poly: IntPolynomial, p: u64) -> Result<Self> {
        Ok(IdealShape2::Line(validated_line_poly(&p_poly, p)?, p))
    }

    pub fn transformed(base: IdealShape2, a: UniModMatrix) -> Self {
        if a.is_identity() {
            base
        } else {
            IdealShape2::Transformed(Box::new(base), a)
        }
    }

    pub fn char_p(&self) -> u64 {
        match self {
            IdealShape2::Zero | IdealShape2::Full => 0,
            IdealShape2::CharOnly(p) | IdealShape2::Principal(_, p) | IdealShape2::Line(_, p) => *p,
            IdealShape2::Transformed(b, _) => b.char_p(),
        }
    }

    /// A finite generating set.
    pub fn generators(&self) -> Vec<Laurent2> {
        let pc = |p: u64| -> Vec<Laurent2> {
            if p == 0 {
                Vec::new()
            } else {
                vec![Laurent2::constant(BigInt::from(p))]
            }
        };
        match self {
            IdealShape2::Zero => Vec::new(),
            IdealShape2::CharOnly(p) => pc(*p),
            IdealShape2::Principal(q, p) => {
                let mut g = vec![q.clone()];
                g.extend(pc(*p));
                g
            }
            IdealShape2::Line(pp, p) => {
                let mut g = vec![Laurent1::from_poly(pp).in_x(), &Laurent2::y() - &Laurent2::one()];
                g.extend(pc(*p));
                g
            }
            IdealShape2::Transformed(b, a) => b.generators().iter().map(|w| gl2_act(a, w)).collect(),
            IdealShape2::Full => vec![Laurent2::one()],
        }
    }
}

/// Membership in `𝔞 ⊂ Z[x^±1, y^±1]`.
pub fn ideal_member2(a: &IdealShape2, w: &Laurent2) -> bool {
    if w.is_zero() {
        return true;
    }
    match a {
        IdealShape2::Zero => false,
        IdealShape2::CharOnly(p) => w.reduce_mod(*p).is_zero(),
        IdealShape2::Principal(q, p) => divides_exact(q, w, *p).is_some(),
        IdealShape2::Line(pp, p) => ideal_member1(&IdealShape1::Poly(pp.clone(), *p), &w.at_y_one()),
        IdealShape2::Transformed(b, m) => ideal_member2(b, &gl2_act(&m.inverse(), w)),
        IdealShape2::Full => true,
    }
}

/// Equality of ideals by mutual membership of generators.
pub fn ideal_eq(a: &IdealShape2, b: &IdealShape2) -> bool {
    a.generators().iter().all(|g| ideal_member2(b, g)) && b.generators().iter().all(|g| ideal_member2(a, g))
}

impl fmt::Display for IdealShape1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealShape1::Zero => write!(f, "0"),
            IdealShape1::CharOnly(p) => write!(f, "p={p}"),
            IdealShape1::Poly(pp, 0) => write!(f, "[{pp}]"),
            IdealShape1::Poly(pp, p) => write!(f, "[{pp}; p={p}]"),
        }
    }
}

impl fmt::Display for IdealShape2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealShape2::Zero => write!(f, "0"),
            IdealShape2::CharOnly(p) => write!(f, "p={p}"),
            IdealShape2::Principal(q, 0) => write!(f, "[{q}]"),
            IdealShape2::Principal(q, p) => write!(f, "[{q}; p={p}]"),
            IdealShape2::Line(pp, 0) => write!(f, "[{pp}; y - 1]"),
            IdealShape2::Line(pp, p) => write!(f, "[{pp}; y - 1; p={p}]"),
            IdealShape2::Transformed(b, a) => write!(f, "{b}*A{a}"),
            IdealShape2::Full => write!(f, "[1]"),
        }
    }
}

fn parse_char(s: &str) -> Option<Result<u64>> {
    let s = s.trim();
    let rest = s.strip_prefix("p=").or_else(|| s.strip_prefix("p ="))?;
    Some(rest.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad characteristic '{rest}'"))))
}

fn to_parse<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Domain(m) => Error::Parse(m),
        e => e,
    })
}

impl FromStr for IdealShape1 {
    type Err = Error;
    /// `0`, `p=5`, `[P]`, `[P; p=3]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(IdealShape1::Zero);
        }
        if let Some(p) = parse_char(s) {
            return to_parse(IdealShape1::char_only(p?));
        }
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad ideal '{s}'")))?;
        let parts: Vec<&str> = inner.split(';').map(str::trim).collect();
        let (poly, p) = match parts.as_slice() {
            [q] => (*q, 0),
            [q, c] => match parse_char(c) {
                Some(p) => (*q, p?),
                None => return parse_err(format!("bad ideal '{s}'")),
            },
            _ => return parse_err(format!("bad ideal '{s}'")),
        };
        to_parse(IdealShape1::poly(poly.parse()?, p))
    }
}

impl FromStr for IdealShape2 {
    type Err = Error;
    /// `0`, `p=5`, `[Q]`, `[Q; p=3]`, `[P; y-1]`, `[P; y-1; p=3]`, `[1]`, each with optional
    /// `*A[a,b;c,d]` suffixes.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(idx) = s.rfind("*A[") {
            let base: IdealShape2 = s[..idx].parse()?;
            let a: UniModMatrix = s[idx + 2..].parse()?;
            return Ok(IdealShape2::Transformed(Box::new(base), a));
        }
        if s == "0" {
            return Ok(IdealShape2::Zero);
        }
        if let Some(p) = parse_char(s) {
            return to_parse(IdealShape2::char_only(p?));
        }
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad ideal '{s}'")))?;
        let mut parts: Vec<&str> = inner.split(';').map(str::trim).collect();
        let mut p = 0;
        if let Some(last) = parts.last() {
            if let Some(c) = parse_char(last) {
                p = c?;
                parts.pop();
            }
        }
        let y_minus_1 = &Laurent2::y() - &Laurent2::one();
        match parts.as_slice() {
            [q] => {
                let q: Laurent2 = q.parse()?;
                if q == Laurent2::one() && p == 0 {
                    return Ok(IdealShape2::Full);
                }
                to_parse(IdealShape2::principal(q, p))
            }
            [pp, y1] => {
                let y1: Laurent2 = y1.parse()?;
                if y1 != y_minus_1 {
                    return parse_err("second generator must be y - 1");
                }
                to_parse(IdealShape2::line(pp.parse()?, p))
            }
            _ => parse_err(format!("bad ideal '{s}'")),
        }
    }
}

impl Serialize for IdealShape1 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for IdealShape2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l1(s: &str) -> Laurent1 {
        s.parse().unwrap()
    }

    fn l2(s: &str) -> Laurent2 {
        s.parse().unwrap()
    }

    fn i2(s: &str) -> IdealShape2 {
        s.parse().unwrap()
    }

    #[test]
    fn member2_examples() {
        let line = i2("[x^2 + x + 1; y - 1]");
        assert!(ideal_member2(&line, &l2("x^3 - 1")));
        assert!(!ideal_member2(&line, &l2("x - 1")));
        assert!(!ideal_member2(&i2("[x - 2]"), &l2("y - 4")));
        assert!(ideal_member2(&i2("[x - 2]"), &l2("x^2*y - 2*x*y")));
        assert!(ideal_member2(&IdealShape2::Full, &l2("x + 7")));
        assert!(ideal_member2(&i2("p=3"), &l2("3*x - 6*y")));
    }

    #[test]
    fn member1_examples() {
        let b: IdealShape1 = "[x - 2]".parse().unwrap();
        assert!(ideal_member1(&b, &l1("x^2 - 4")));
        assert!(ideal_member1(&IdealShape1::CharOnly(3), &l1("6*x - 3")));
        assert!(!ideal_member1(&IdealShape1::Zero, &l1("x - 1")));
        assert!(ideal_member1(&b, &l1("1 - 2*x^-1")));
        let b3: IdealShape1 = "[x^2 + 1; p=3]".parse().unwrap();
        assert!(ideal_member1(&b3, &l1("x^4 - 1")));
        assert!(!ideal_member1(&b3, &l1("x^2 - 1")));
    }

    #[test]
    fn transformed_membership_matches_definition() {
        let a = UniModMatrix::new(2, 1, 1, 1).unwrap();
        let t = IdealShape2::transformed(i2("[x - 2]"), a);
        for w in ["x - 2", "x*y - 2", "x^2*y - 2", "y - 4"] {
            let w = l2(w);
            assert_eq!(ideal_member2(&t, &w), ideal_member2(&i2("[x - 2]"), &gl2_act(&a.inverse(), &w)));
            assert_eq!(ideal_member2(&t, &gl2_act(&a, &w)), ideal_member2(&i2("[x - 2]"), &w));
        }
    }

    #[test]
    fn text_round_trip() {
        for s in [
            "0",
            "p=5",
            "[x^2 + x + 1; y - 1]",
            "[x^2 - x - 1]",
            "[x*y + 1; p=3]",
            "[x - 2]*A[0,1;1,0]",
            "[1]",
            "[x^2 + 1; y - 1; p=3]",
        ] {
            let a = i2(s);
            assert_eq!(a.to_string(), s);
            assert_eq!(i2(&a.to_string()), a);
        }
        assert!("[x^2 - 1; y - 1]".parse::<IdealShape2>().is_err());
        assert!("[x; y - 1]".parse::<IdealShape2>().is_err());
        assert!("p=4".parse::<IdealShape2>().is_err());
    }

    #[test]
    fn ideal_equality_by_generators() {
        assert!(ideal_eq(&i2("[2 - x]"), &i2("[x - 2]")));
        assert!(!ideal_eq(&i2("[x - 2]"), &i2("[x - 4]")));
        let swapped = IdealShape2::transformed(i2("[x - 2]"), UniModMatrix::SWAP);
        assert!(ideal_eq(&swapped, &i2("[y - 2]")));
    }

    #[test]
    fn reduction_is_canonical_when_unimodular() {
        let b = IdealShape1::poly("x^2 - x - 1".parse().unwrap(), 0).unwrap();
        let r = b.reduce(&l1("x^-1"));
        assert_eq!(r, l1("x - 1"));
        let b2 = IdealShape1::poly("x - 2".parse().unwrap(), 0).unwrap();
        assert_eq!(b2.reduce(&l1("x^3 + 1")), l1("9"));
        let b3 = IdealShape1::poly("x - 2".parse().unwrap(), 5).unwrap();
        assert_eq!(b3.reduce(&l1("x^-1")), l1("3"));
    }
}
