//! Algebraic numbers given by integer minimal polynomials.
//!
//! A multiplier `λ` is a [`LambdaSpec`]: its minimal polynomial over the integers (the zero
//! polynomial for a transcendental `λ`) together with the characteristic `p` of the ambient field.

pub mod det;
pub mod factor;
pub mod intfactor;
pub mod modp;
mod poly;
pub mod roots;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use factor::{factor_over_integers, Factorization};
pub use poly::IntPolynomial;
pub use roots::{approximate_roots, RootApprox};

use crate::error::{domain_err, parse_err, Error, Result};
use modp::FpPoly;

/// The `m`-th cyclotomic polynomial, `prod_{d | m} (x^d - 1)^{mu(m/d)}`.
pub fn cyclotomic(m: u64) -> Result<IntPolynomial> {
    if m == 0 {
        return domain_err("cyclotomic index must be positive");
    }
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for d in 1..=m {
        if !m.is_multiple_of(d) {
            continue;
        }
        let xd = &IntPolynomial::monomial(BigInt::one(), d as usize) - &IntPolynomial::one();
        match mobius(m / d) {
            1 => num = &num * &xd,
            -1 => den = &den * &xd,
            _ => {}
        }
    }
    num.div_exact(&den).ok_or_else(|| Error::Internal("cyclotomic division inexact".into()))
}

fn mobius(n: u64) -> i32 {
    let f = intfactor::factorize(&BigInt::from(n));
    if f.iter().any(|(_, e)| *e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A multiplier `λ` in characteristic `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaSpec {
    min_poly: IntPolynomial,
    char_p: u64,
}

impl LambdaSpec {
    /// Validates irreducibility (over `F_p` when `p > 0`), a nonzero constant term and a positive
    /// leading coefficient. The zero polynomial encodes a transcendental `λ`.
    pub fn new(min_poly: IntPolynomial, char_p: u64) -> Result<Self> {
        if char_p != 0 && !intfactor::is_prime(&BigInt::from(char_p)) {
            return domain_err(format!("characteristic {char_p} is not prime"));
        }
        if min_poly.is_zero() {
            return Ok(LambdaSpec { min_poly, char_p });
        }
        if min_poly.deg() == 0 {
            return domain_err("minimal polynomial must be nonconstant");
        }
        if char_p == 0 {
            let f = factor_over_integers(&min_poly)?;
            if !f.is_irreducible() || !f.unit.is_one() {
                return domain_err(format!("{min_poly} is not irreducible and primitive with positive leading coefficient"));
            }
            if min_poly.constant_term().is_zero() {
                return domain_err("minimal polynomial has zero constant term");
            }
            Ok(LambdaSpec { min_poly, char_p })
        } else {
            let fp = FpPoly::from_int(&min_poly, char_p);
            if fp.deg() != min_poly.deg() {
                return domain_err("leading coefficient vanishes modulo p");
            }
            if !fp.is_irreducible() {
                return domain_err(format!("{min_poly} is not irreducible modulo {char_p}"));
            }
            if fp.c[0] == 0 {
                return domain_err("minimal polynomial has zero constant term modulo p");
            }
            // Canonical lift: monic with coefficients in [0, p).
            Ok(LambdaSpec { min_poly: fp.monic().to_int(), char_p })
        }
    }

    pub fn transcendental(char_p: u64) -> Result<Self> {
        Self::new(IntPolynomial::zero(), char_p)
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn char_p(&self) -> u64 {
        self.char_p
    }

    pub fn is_transcendental(&self) -> bool {
        self.min_poly.is_zero()
    }

    /// `λ = 1`, the abelian degenerate case.
    pub fn is_one(&self) -> bool {
        self.min_poly == IntPolynomial::from_i64(&[-1, 1])
    }

    /// Multiplicative order of `λ`: `Some(m)` for a root of unity, in any characteristic.
    pub fn root_of_unity_order(&self) -> Result<Option<u64>> {
        if self.is_transcendental() {
            return Ok(None);
        }
        if self.char_p == 0 {
            return is_root_of_unity(self);
        }
        let ord = modp::order_of_x(&FpPoly::from_int(&self.min_poly, self.char_p));
        match ord.to_u64() {
            Some(m) => Ok(Some(m)),
            None => domain_err("multiplicative order too large"),
        }
    }
}

impl fmt::Display for LambdaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.char_p == 0 {
            write!(f, "{}", self.min_poly)
        } else {
            write!(f, "{}@{}", self.min_poly, self.char_p)
        }
    }
}

impl FromStr for LambdaSpec {
    type Err = Error;
    /// `<poly>` or `<poly>@p`.
    fn from_str(s: &str) -> Result<Self> {
        let (poly, p) = match s.split_once('@') {
            Some((a, b)) => {
                let p: u64 = b.trim().parse().map_err(|_| Error::Parse(format!("bad characteristic '{b}'")))?;
                (a, p)
            }
            None => (s, 0),
        };
        let poly: IntPolynomial = poly.parse()?;
        match LambdaSpec::new(poly, p) {
            Ok(l) => Ok(l),
            Err(Error::Domain(m)) => parse_err(m),
            Err(e) => Err(e),
        }
    }
}

impl Serialize for LambdaSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `Some(m)` iff the minimal polynomial is `Φ_m`, by comparison against the finitely many
/// cyclotomic polynomials of the same degree.
pub fn is_root_of_unity(spec: &LambdaSpec) -> Result<Option<u64>> {
    if spec.is_transcendental() {
        return domain_err("transcendental λ has no root-of-unity test");
    }
    if spec.char_p != 0 {
        return domain_err("root-of-unity recognition is for characteristic 0");
    }
    Ok(cyclotomic_index(&spec.min_poly))
}

/// `Some(m)` iff `p = Φ_m`. Uses `φ(m) >= sqrt(m/2)` to bound the search.
pub fn cyclotomic_index(p: &IntPolynomial) -> Option<u64> {
    let d = p.degree()? as u64;
    if d == 0 || !p.is_monic() {
        return None;
    }
    for m in 1..=2 * d * d + 2 {
        if intfactor::totient(m) == d && cyclotomic(m).ok()? == *p {
            return Some(m);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HouseValue {
    pub value: f64,
    /// Certified bound on `|value - house|`.
    pub error: f64,
}

/// Maximum modulus of the complex roots, within `tol`.
pub fn house(p: &IntPolynomial, tol: f64) -> Result<HouseValue> {
    if p.deg() == 0 {
        return domain_err("house needs a nonconstant polynomial");
    }
    let sf = p.squarefree_part();
    let roots = approximate_roots(&sf, tol)?;
    let value = (0..roots.len()).map(|i| roots.center(i).norm()).fold(0.0, f64::max);
    Ok(HouseValue { value, error: roots.max_radius() })
}

pub fn is_algebraic_integer(p: &IntPolynomial) -> bool {
    p.lead().abs().is_one()
}

pub fn is_algebraic_unit(p: &IntPolynomial) -> bool {
    is_algebraic_integer(p) && p.constant_term().abs().is_one()
}

pub fn is_reciprocal(p: &IntPolynomial) -> bool {
    p.is_reciprocal()
}

/// Minimal polynomial of `λ^γ` where `λ` is a root of the irreducible `p`.
pub fn minimal_poly_of_power(p: &IntPolynomial, gamma: u32) -> Result<IntPolynomial> {
    if gamma == 0 {
        return domain_err("exponent must be positive");
    }
    if p.deg() == 0 {
        return domain_err("minimal polynomial must be nonconstant");
    }
    if gamma == 1 {
        return Ok(p.canonical());
    }
    let res = det::power_resultant(p, gamma as usize);
    let sf = res.squarefree_part();
    let fac = factor_over_integers(&sf)?;
    if fac.factors.len() == 1 {
        return Ok(fac.factors[0].0.clone());
    }
    // Pick the factor vanishing at λ^γ, refining the root tolerance until unambiguous.
    let mut tol = 1e-8;
    for _ in 0..8 {
        let roots = approximate_roots(&p.squarefree_part(), tol)?;
        let lam = roots.center(0);
        let r = roots.radii[0];
        let z = lam.powu(gamma);
        let dz = (gamma as f64) * (lam.norm() + r).powi(gamma as i32 - 1) * r + 1e-15 * z.norm();
        let hits: Vec<&IntPolynomial> = fac
            .factors
            .iter()
            .map(|(f, _)| f)
            .filter(|f| f.eval_complex(z).norm() <= value_bound(f, z, dz))
            .collect();
        if hits.len() == 1 {
            return Ok(hits[0].clone());
        }
        tol *= 1e-2;
    }
    Err(Error::Internal("factor selection for λ^γ stayed ambiguous".into()))
}

/// Bound on `|f(w)|` for all `w` within `dz` of a root approximated by `z`.
fn value_bound(f: &IntPolynomial, z: Complex64, dz: f64) -> f64 {
    let rad = z.norm() + dz;
    let deriv: f64 = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.to_f64().unwrap_or(f64::INFINITY).abs() * i as f64 * rad.powi(i as i32 - 1))
        .sum();
    let mag: f64 = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c.to_f64().unwrap_or(f64::INFINITY).abs() * rad.powi(i as i32))
        .sum();
    deriv * dz + 8.0 * f64::EPSILON * (f.deg() as f64 + 1.0) * mag
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValuationWitness {
    /// Conjugate `index` (in root-approximation order) has modulus `modulus != 1`.
    Archimedean { index: usize, modulus: f64, error: f64 },
    /// Some prime above `q` has `|λ| < 1` (`less_than_one`) or `|λ| > 1`.
    NonArchimedean {
        #[serde(serialize_with = "crate::text::ser_bigint")]
        q: BigInt,
        less_than_one: bool,
    },
}

/// An absolute value with `|λ| != 1`, for algebraic `λ` of characteristic 0 not a root of unity.
pub fn valuation_witness(spec: &LambdaSpec) -> Result<ValuationWitness> {
    if spec.is_transcendental() || spec.char_p != 0 {
        return domain_err("valuation witness needs an algebraic λ in characteristic 0");
    }
    if is_root_of_unity(spec)?.is_some() {
        return domain_err("λ is a root of unity: every absolute value is 1");
    }
    let p = &spec.min_poly;
    if let Some(q) = intfactor::smallest_prime_factor(&p.lead()) {
        return Ok(ValuationWitness::NonArchimedean { q, less_than_one: false });
    }
    if let Some(q) = intfactor::smallest_prime_factor(&p.constant_term()) {
        return Ok(ValuationWitness::NonArchimedean { q, less_than_one: true });
    }
    // A unit that is not a root of unity has a conjugate off the unit circle (Kronecker).
    let mut tol = 1e-6;
    for _ in 0..6 {
        let roots = approximate_roots(p, tol)?;
        let best = (0..roots.len())
            .map(|i| (i, roots.center(i).norm(), roots.radii[i]))
            .max_by(|a, b| (a.1 - 1.0).abs().total_cmp(&(b.1 - 1.0).abs()))
            .expect("nonconstant polynomial has roots");
        if (best.1 - 1.0).abs() > best.2 {
            return Ok(ValuationWitness::Archimedean { index: best.0, modulus: best.1, error: best.2 });
        }
        tol *= 1e-2;
    }
    Err(Error::Internal("no conjugate separated from the unit circle".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn spec(s: &str) -> LambdaSpec {
        s.parse().unwrap()
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).unwrap(), p("x - 1"));
        assert_eq!(cyclotomic(4).unwrap(), p("x^2 + 1"));
        assert_eq!(cyclotomic(12).unwrap(), p("x^4 - x^2 + 1"));
        assert!(cyclotomic(0).is_err());
    }

    #[test]
    fn root_of_unity_examples() {
        assert_eq!(is_root_of_unity(&spec("x + 1")).unwrap(), Some(2));
        assert_eq!(is_root_of_unity(&spec("x^2 + x + 1")).unwrap(), Some(3));
        assert_eq!(is_root_of_unity(&spec("x^2 - x - 1")).unwrap(), None);
        assert_eq!(is_root_of_unity(&spec("x^4 - x^2 + 1")).unwrap(), Some(12));
        assert!(is_root_of_unity(&LambdaSpec::transcendental(0).unwrap()).is_err());
    }

    #[test]
    fn power_examples() {
        assert_eq!(minimal_poly_of_power(&p("x^2 - 2"), 2).unwrap(), p("x - 2"));
        assert_eq!(minimal_poly_of_power(&p("x^2 - x - 1"), 2).unwrap(), p("x^2 - 3*x + 1"));
        assert_eq!(minimal_poly_of_power(&p("x^2 + x + 1"), 3).unwrap(), p("x - 1"));
        assert_eq!(minimal_poly_of_power(&p("x - 2"), 3).unwrap(), p("x - 8"));
    }

    #[test]
    fn house_examples() {
        let h = house(&p("x - 2"), 1e-9).unwrap();
        assert!((h.value - 2.0).abs() < 1e-9);
        let h = house(&p("x^2 - x - 1"), 1e-9).unwrap();
        assert!((h.value - 1.618_034).abs() < 1e-6);
    }

    #[test]
    fn predicates() {
        assert!(is_algebraic_unit(&p("x^2 - x - 1")));
        assert!(!is_algebraic_integer(&p("2*x - 1")));
        assert!(is_reciprocal(&p("x^2 - 3*x + 1")));
    }

    #[test]
    fn witnesses() {
        assert_eq!(
            valuation_witness(&spec("x - 2")).unwrap(),
            ValuationWitness::NonArchimedean { q: BigInt::from(2), less_than_one: true }
        );
        match valuation_witness(&spec("x^2 - x - 1")).unwrap() {
            ValuationWitness::Archimedean { modulus, .. } => assert!((modulus - 1.618_034).abs() < 1e-5),
            w => panic!("unexpected {w:?}"),
        }
        assert!(valuation_witness(&spec("x^2 + x + 1")).is_err());
        assert_eq!(
            valuation_witness(&spec("2*x - 1")).unwrap(),
            ValuationWitness::NonArchimedean { q: BigInt::from(2), less_than_one: false }
        );
    }

    #[test]
    fn lambda_validation() {
        assert!("x^2 - 1".parse::<LambdaSpec>().is_err());
        assert!("2*x - 4".parse::<LambdaSpec>().is_err());
        assert!("x".parse::<LambdaSpec>().is_err());
        assert!("x^2 + 1@3".parse::<LambdaSpec>().is_ok());
        assert!("x^2 + 1@5".parse::<LambdaSpec>().is_err());
        assert!("x - 2@4".parse::<LambdaSpec>().is_err());
        assert_eq!(spec("x - 2@3").root_of_unity_order().unwrap(), Some(2));
        assert_eq!(spec("0@3").to_string(), "0@3");
    }
}
