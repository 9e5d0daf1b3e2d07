//! Checks behind the universal-theory comparison of `G(λ)` and `M(λ)`.

use crate::algnum::{IntPolynomial, LambdaSpec};
use crate::error::{domain_err, Error, Result};
use crate::laurent::{IdealShape2, Laurent1};
use crate::marking::{ball_words, radius_cap, MarkedGroup};
use crate::metabelian::{word_from_exponent1, Word};

/// The ideal defining `M(λ)`: `(P_λ(x), p)`, with `y − 1` adjoined for roots of unity;
/// `(p)` for transcendental `λ`.
pub fn m_lambda_ideal(lambda: &LambdaSpec) -> Result<IdealShape2> {
    let p = lambda.char_p();
    if lambda.is_transcendental() {
        return IdealShape2::char_only(p);
    }
    if lambda.root_of_unity_order()?.is_some() {
        return IdealShape2::line(lambda.min_poly().clone(), p);
    }
    IdealShape2::principal(Laurent1::from_poly(lambda.min_poly()).in_x(), p)
}

/// `[[x, y], z] ≠ 1 ∧ [x, y]^{P(z)} = 1` at the given triple.
pub fn verify_phi(group: &MarkedGroup, p: &IntPolynomial, (x, y, z): &(Word, Word, Word)) -> bool {
    let c = Word::commutator(x, y);
    if group.is_identity(&Word::commutator(&c, z)) {
        return false;
    }
    group.is_identity(&word_from_exponent1(&Laurent1::from_poly(p), &c, z))
}

/// The first triple from the ball of the given radius (in canonical order) satisfying `φ_P`.
pub fn find_phi_witness(group: &MarkedGroup, p: &IntPolynomial, radius: usize) -> Result<Option<(Word, Word, Word)>> {
    if radius > radius_cap() {
        return domain_err(format!("radius {radius} exceeds the cap {}", radius_cap()));
    }
    let ball = ball_words(radius);
    for x in &ball {
        for y in &ball {
            if group.is_identity(&Word::commutator(x, y)) {
                continue;
            }
            for z in &ball {
                let t = (x.clone(), y.clone(), z.clone());
                if verify_phi(group, p, &t) {
                    return Ok(Some(t));
                }
            }
        }
    }
    Ok(None)
}

/// Compares `w(a, b)` in `G(λ)` with `w(a, [a, b])` in `M(λ)` for every `|w| ≤ radius`;
/// returns the first word on which they disagree.
pub fn embedding_check(lambda: &LambdaSpec, radius: usize) -> Result<Option<Word>> {
    if radius > radius_cap() {
        return domain_err(format!("radius {radius} exceeds the cap {}", radius_cap()));
    }
    let g = MarkedGroup::g(lambda);
    let m = MarkedGroup::m(m_lambda_ideal(lambda)?);
    let c = Word::commutator(&Word::a(), &Word::b());
    Ok(ball_words(radius).into_iter().find(|w| g.is_identity(w) != m.is_identity(&w.substitute(&Word::a(), &c))))
}

/// A word trivial in `G(λ)` but not in `M(λ)`: `[[a, b], b]` in general, `b^{P_λ(a)}` for roots
/// of unity (where `[[a, b], b]` is already trivial in `M(λ)`).
pub fn quotient_kernel_witness(lambda: &LambdaSpec) -> Result<Word> {
    if lambda.is_one() {
        return domain_err("λ = 1 gives an abelian group");
    }
    if lambda.is_transcendental() {
        return domain_err("M(y - 1) → G(λ) is an isomorphism for transcendental λ: no witness");
    }
    let w = if lambda.root_of_unity_order()?.is_some() {
        word_from_exponent1(&Laurent1::from_poly(lambda.min_poly()), &Word::b(), &Word::a())
    } else {
        Word::commutator(&Word::commutator(&Word::a(), &Word::b()), &Word::b())
    };
    let g = MarkedGroup::g(lambda);
    let m = MarkedGroup::m(m_lambda_ideal(lambda)?);
    if !g.is_identity(&w) || m.is_identity(&w) {
        return Err(Error::Internal(format!("kernel witness {w} failed verification for {lambda}")));
    }
    Ok(w)
}
