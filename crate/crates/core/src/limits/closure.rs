//! The closure of `{G(λ)}` in the space of marked groups, its Cantor–Bendixson ranks, and
//! tameness certificates.

use serde::Serialize;

use crate::algnum::{house, is_algebraic_unit, minimal_poly_of_power, LambdaSpec};
use crate::error::{domain_err, Result};
use crate::laurent::{ideal_eq, IdealShape1, IdealShape2, Laurent1};
use crate::marking::MarkedGroup;

/// Upper bound on `k` when locating `M(P_{λ^k})` in the closure.
const MAX_POWER_SEARCH: u32 = 64;

fn power_point(lambda: &LambdaSpec, k: u32) -> Result<IdealShape2> {
    let q = minimal_poly_of_power(lambda.min_poly(), k)?;
    IdealShape2::principal(Laurent1::from_poly(&q).in_x(), lambda.char_p())
}

/// Representatives of the isomorphism classes in the closure, with the `M(P_{λ^k})` family
/// truncated at `k_max`.
pub fn closure_points(lambda: &LambdaSpec, k_max: u32) -> Result<Vec<MarkedGroup>> {
    if k_max == 0 {
        return domain_err("k_max must be at least 1");
    }
    if lambda.is_one() {
        return domain_err("λ = 1 gives an abelian group");
    }
    let g = MarkedGroup::g(lambda);
    let p = lambda.char_p();
    if lambda.is_transcendental() {
        return Ok(vec![g, MarkedGroup::m(IdealShape2::char_only(p)?)]);
    }
    if lambda.root_of_unity_order()?.is_some() {
        return Ok(vec![g, MarkedGroup::m(IdealShape2::line(lambda.min_poly().clone(), p)?)]);
    }
    let mut out = vec![g];
    for k in 1..=k_max {
        out.push(MarkedGroup::m(power_point(lambda, k)?));
    }
    out.push(MarkedGroup::m(IdealShape2::char_only(p)?));
    Ok(out)
}

/// Cantor–Bendixson rank of a closure point: 0 for `G(λ)`, 1 for `M(P_{λ^k})` (or the
/// cyclotomic point), 2 for `M`.
pub fn cb_rank(point: &MarkedGroup, lambda: &LambdaSpec) -> Result<u32> {
    let p = lambda.char_p();
    match point {
        MarkedGroup::G { ideal, .. } => {
            if *ideal == IdealShape1::from_lambda(lambda) {
                Ok(0)
            } else {
                domain_err(format!("{point} is not in the closure of G({lambda})"))
            }
        }
        MarkedGroup::M { ideal } => {
            if lambda.is_transcendental() {
                return if ideal_eq(ideal, &IdealShape2::char_only(p)?) {
                    Ok(1)
                } else {
                    domain_err(format!("{point} is not in the closure of G({lambda})"))
                };
            }
            if lambda.root_of_unity_order()?.is_some() {
                return if ideal_eq(ideal, &IdealShape2::line(lambda.min_poly().clone(), p)?) {
                    Ok(1)
                } else {
                    domain_err(format!("{point} is not in the closure of G({lambda})"))
                };
            }
            if ideal_eq(ideal, &IdealShape2::char_only(p)?) {
                return Ok(2);
            }
            for k in 1..=MAX_POWER_SEARCH {
                if ideal_eq(ideal, &power_point(lambda, k)?) {
                    return Ok(1);
                }
            }
            domain_err(format!("{point} is not in the closure of G({lambda}) (searched k ≤ {MAX_POWER_SEARCH})"))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TameFamilySpec {
    FiniteSet(Vec<LambdaSpec>),
    DegreeBounded(u32),
    /// Every algebraic unit in the set has house above `1 + ε`.
    HouseBounded(f64),
    RootsOfUnityFamily,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TameVerdict {
    Certified { reason: String },
    NotCertified { reason: String },
}

pub fn is_tame(spec: &TameFamilySpec) -> Result<TameVerdict> {
    Ok(match spec {
        TameFamilySpec::FiniteSet(ls) => {
            for l in ls {
                // Re-validate each member; units additionally get a house evaluation.
                LambdaSpec::new(l.min_poly().clone(), l.char_p())?;
                if !l.is_transcendental() && l.char_p() == 0 && is_algebraic_unit(l.min_poly()) {
                    house(l.min_poly(), 1e-6)?;
                }
            }
            TameVerdict::Certified { reason: format!("finite set of {} multipliers", ls.len()) }
        }
        TameFamilySpec::DegreeBounded(d) => {
            if *d == 0 {
                return domain_err("degree bound must be at least 1");
            }
            TameVerdict::Certified { reason: format!("degrees bounded by {d}: unit houses are bounded away from 1") }
        }
        TameFamilySpec::HouseBounded(eps) => {
            if eps.is_nan() || *eps <= 0.0 {
                return domain_err("ε must be positive");
            }
            TameVerdict::Certified { reason: format!("every algebraic unit has house > 1 + {eps}") }
        }
        TameFamilySpec::RootsOfUnityFamily => TameVerdict::NotCertified {
            reason: "infinitely many roots of unity produce limits beyond the pointwise closures".into(),
        },
    })
}
