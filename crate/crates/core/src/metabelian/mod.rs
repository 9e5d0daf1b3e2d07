//! Word problems in the free metabelian group `M`, its quotients `M(𝔞)`, and the
//! semidirect products `G(𝔟) = Z[x^±1]/𝔟 ⋊ Z`.
//!
//! `M` is handled through its Magnus image: a word maps to `(∂_a, ∂_b, u, v)` where the
//! partial derivatives are abelianized Fox derivatives and `(u, v)` the exponent sums.
//! Elements of `M(𝔞)` are never stored reduced; reduction happens at identity tests.

pub mod word;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{divides_exact, ideal_member1, ideal_member2, IdealShape1, IdealShape2, Laurent1, Laurent2};
pub use word::{Letter, Word};

/// The Magnus image of an element of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MElement {
    pub da: Laurent2,
    pub db: Laurent2,
    pub u: i64,
    pub v: i64,
}

impl MElement {
    pub fn identity() -> Self {
        MElement { da: Laurent2::zero(), db: Laurent2::zero(), u: 0, v: 0 }
    }

    pub fn letter(l: Letter) -> Self {
        let one = Laurent2::one;
        match l {
            Letter::A => MElement { da: one(), db: Laurent2::zero(), u: 1, v: 0 },
            Letter::AInv => MElement { da: -Laurent2::xy_pow(-1, 0), db: Laurent2::zero(), u: -1, v: 0 },
            Letter::B => MElement { da: Laurent2::zero(), db: one(), u: 0, v: 1 },
            Letter::BInv => MElement { da: Laurent2::zero(), db: -Laurent2::xy_pow(0, -1), u: 0, v: -1 },
        }
    }

    pub fn mul(&self, h: &MElement) -> MElement {
        MElement {
            da: &self.da + &h.da.shift(self.u, self.v),
            db: &self.db + &h.db.shift(self.u, self.v),
            u: self.u + h.u,
            v: self.v + h.v,
        }
    }

    /// Right multiplication by a single letter.
    pub fn mul_letter(&self, l: Letter) -> MElement {
        self.mul(&MElement::letter(l))
    }

    pub fn inv(&self) -> MElement {
        MElement {
            da: -self.da.shift(-self.u, -self.v),
            db: -self.db.shift(-self.u, -self.v),
            u: -self.u,
            v: -self.v,
        }
    }

    /// `∂_a·(x − 1) + ∂_b·(y − 1) = x^u y^v − 1`.
    pub fn magnus_holds(&self) -> bool {
        let lhs = &(&self.da * &(&Laurent2::x() - &Laurent2::one())) + &(&self.db * &(&Laurent2::y() - &Laurent2::one()));
        lhs == &Laurent2::xy_pow(self.u, self.v) - &Laurent2::one()
    }

    /// The Magnus image of `c^W` with `c = [a, b]`.
    pub fn from_commutator_poly(w: &Laurent2) -> MElement {
        MElement {
            da: w * &(&Laurent2::one() - &Laurent2::y()),
            db: w * &(&Laurent2::x() - &Laurent2::one()),
            u: 0,
            v: 0,
        }
    }
}

pub fn fox_eval(w: &Word) -> MElement {
    w.letters().iter().fold(MElement::identity(), |acc, &l| acc.mul_letter(l))
}

/// The `W` with `e = c^W`, for `e` in the derived subgroup.
pub fn commutator_poly(e: &MElement) -> Result<Laurent2> {
    if e.u != 0 || e.v != 0 {
        return Err(Error::Domain(format!("element has nonzero abelianization ({}, {})", e.u, e.v)));
    }
    let w = divides_exact(&(&Laurent2::one() - &Laurent2::y()), &e.da, 0)
        .ok_or_else(|| Error::Internal("∂_a not divisible by 1 - y".into()))?;
    if &w * &(&Laurent2::x() - &Laurent2::one()) != e.db {
        return Err(Error::Internal("Magnus invariant violated".into()));
    }
    Ok(w)
}

/// Identity in `M(𝔞)` of a Magnus image.
pub fn melement_is_identity(a: &IdealShape2, e: &MElement) -> bool {
    if e.u != 0 || e.v != 0 {
        return false;
    }
    match commutator_poly(e) {
        Ok(w) => ideal_member2(a, &w),
        Err(_) => false,
    }
}

#[allow(non_snake_case)]
pub fn is_identity_M(a: &IdealShape2, w: &Word) -> bool {
    melement_is_identity(a, &fox_eval(w))
}

/// `(r, k)` in `Z[x^±1]/𝔟 ⋊ Z`; `r` is kept reduced by [`IdealShape1::reduce`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GElement {
    pub r: Laurent1,
    pub k: i64,
}

/// A marking `(S_a, S_b)`: the images of the two generators.
pub type GPair = (GElement, GElement);

impl GElement {
    pub fn new(r: Laurent1, k: i64) -> Self {
        GElement { r, k }
    }

    pub fn identity() -> Self {
        GElement { r: Laurent1::zero(), k: 0 }
    }

    pub fn mul(&self, o: &GElement, b: &IdealShape1) -> GElement {
        GElement { r: b.reduce(&(&self.r + &o.r.shift(self.k))), k: self.k + o.k }
    }

    pub fn inv(&self, b: &IdealShape1) -> GElement {
        GElement { r: b.reduce(&-self.r.shift(-self.k)), k: -self.k }
    }

    pub fn is_identity(&self, b: &IdealShape1) -> bool {
        self.k == 0 && ideal_member1(b, &self.r)
    }
}

/// The standard marking `a = (0, 1)`, `b = (1, 0)`.
pub fn default_marking() -> GPair {
    (GElement::new(Laurent1::zero(), 1), GElement::new(Laurent1::one(), 0))
}

/// Images of the four letters under a marking, indexed by [`Letter::index`].
pub fn letter_images(b: &IdealShape1, s: &GPair) -> [GElement; 4] {
    [s.0.clone(), s.1.clone(), s.0.inv(b), s.1.inv(b)]
}

pub fn gelement_eval(b: &IdealShape1, w: &Word, s: &GPair) -> GElement {
    let imgs = letter_images(b, s);
    w.letters().iter().fold(GElement::identity(), |acc, l| acc.mul(&imgs[l.index()], b))
}

#[allow(non_snake_case)]
pub fn is_identity_G(b: &IdealShape1, w: &Word, s: &GPair) -> bool {
    gelement_eval(b, w, s).is_identity(b)
}

/// `target^{P(conj)} = ∏_i conj^i target^{α_i} conj^{-i}`, `i` ascending.
pub fn word_from_exponent1(p: &Laurent1, target: &Word, conj: &Word) -> Word {
    p.terms().fold(Word::empty(), |acc, (i, c)| {
        acc.mul(&target.pow(small(c)).conj_by(&conj.pow(*i)))
    })
}

/// `target^{Q(cx, cy)} = ∏_{(i,j)} (cx^i cy^j) target^{β_ij} (cx^i cy^j)⁻¹`, `(i, j)` lexicographic.
pub fn word_from_exponent2(q: &Laurent2, target: &Word, cx: &Word, cy: &Word) -> Word {
    q.terms().fold(Word::empty(), |acc, ((i, j), c)| {
        acc.mul(&target.pow(small(c)).conj_by(&cx.pow(*i).mul(&cy.pow(*j))))
    })
}

/// `c^W` in the letters `a, b`.
pub fn commutator_word(w: &Laurent2) -> Word {
    word_from_exponent2(w, &Word::commutator(&Word::a(), &Word::b()), &Word::a(), &Word::b())
}

fn small(c: &BigInt) -> i64 {
    i64::try_from(c).expect("exponent coefficient fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn l2(s: &str) -> Laurent2 {
        s.parse().unwrap()
    }

    #[test]
    fn fox_examples() {
        assert_eq!(fox_eval(&w("a")), MElement::letter(Letter::A));
        assert_eq!(fox_eval(&Word::empty()), MElement::identity());
        let c = fox_eval(&w("abAB"));
        assert_eq!(c.da, l2("1 - y"));
        assert_eq!(c.db, l2("x - 1"));
        assert_eq!((c.u, c.v), (0, 0));
    }

    #[test]
    fn group_law() {
        assert_eq!(fox_eval(&w("a")).mul(&fox_eval(&w("A"))), MElement::identity());
        assert_eq!(fox_eval(&w("ab")).mul(&fox_eval(&w("ab"))), fox_eval(&w("abab")));
        let c = fox_eval(&w("abAB"));
        assert_eq!(c.mul(&c.inv()), MElement::identity());
        assert_eq!(c.inv(), fox_eval(&w("abAB").inverse()));
    }

    #[test]
    fn commutator_polys() {
        assert_eq!(commutator_poly(&fox_eval(&w("abAB"))).unwrap(), Laurent2::one());
        assert_eq!(commutator_poly(&fox_eval(&w("a[a,b]A"))).unwrap(), Laurent2::x());
        assert_eq!(commutator_poly(&fox_eval(&w("[a,b]^2"))).unwrap(), Laurent2::constant(BigInt::from(2)));
        assert!(commutator_poly(&fox_eval(&w("a"))).is_err());
    }

    #[test]
    fn identity_in_quotients() {
        let p: IdealShape2 = "[x - 2]".parse().unwrap();
        assert!(is_identity_M(&p, &w("a[a,b]A [a,b]^-2")));
        assert!(!is_identity_M(&IdealShape2::Zero, &w("[a,b]")));
        let line: IdealShape2 = "[x^2 + x + 1; y - 1]".parse().unwrap();
        assert!(is_identity_M(&line, &commutator_word(&l2("x^3 - 1"))));
        assert!(!is_identity_M(&line, &commutator_word(&l2("x - 1"))));
    }

    #[test]
    fn identity_in_semidirect() {
        let s = default_marking();
        let bs: IdealShape1 = "[x - 2]".parse().unwrap();
        assert!(is_identity_G(&bs, &w("abABB"), &s));
        assert!(is_identity_G(&IdealShape1::CharOnly(3), &w("bbb"), &s));
        assert!(is_identity_G(&IdealShape1::Zero, &w("[b,abA]"), &s));
        assert!(!is_identity_G(&IdealShape1::Zero, &w("[a,b]"), &s));
        for n in 2..=6 {
            let b = IdealShape1::poly(crate::algnum::IntPolynomial::from_i64(&[-n, 1]), 0).unwrap();
            let rel = w("abA").mul(&w("B").pow(n));
            assert!(is_identity_G(&b, &rel, &s), "n = {n}");
        }
    }

    #[test]
    fn exponent_words() {
        let p: Laurent1 = "x - 2".parse().unwrap();
        assert_eq!(word_from_exponent1(&p, &Word::b(), &Word::a()), w("BB abA"));
        assert_eq!(word_from_exponent1(&Laurent1::one(), &Word::b(), &Word::a()), Word::b());
        let q: Laurent1 = "x + 1".parse().unwrap();
        assert_eq!(word_from_exponent1(&q, &Word::b(), &Word::a()), w("b abA"));
    }

    #[test]
    fn commutator_word_round_trip() {
        for s in ["x*y^-1 - 3", "2*x^2*y + y^-2 - x^-1", "5"] {
            let q = l2(s);
            assert_eq!(commutator_poly(&fox_eval(&commutator_word(&q))).unwrap(), q);
        }
    }
}
