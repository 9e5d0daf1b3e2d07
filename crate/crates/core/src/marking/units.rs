//! Invertibility in `Z_p[x^±1]/𝔟`.
//!
//! Two independent procedures for `𝔟 = (P)` over the integers:
//!
//! * lattice: for monic (or reverse-monic) `P`, `Z[x]/(P, U)` is the finite group
//!   `Z^d / U(C)Z^d` with `C` the companion matrix, and `U` is a unit iff `x` acts
//!   nilpotently on it. Submodules are compared through Hermite normal forms.
//! * residue fields: `U` is a unit iff no maximal ideal `(q, g(x))` with `g ≠ x` an irreducible
//!   factor of `P mod q` contains `U`; only primes `q | Res(P, U)` can contribute.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algnum::det::resultant;
use crate::algnum::intfactor::factorize;
use crate::algnum::modp::FpPoly;
use crate::algnum::IntPolynomial;
use crate::laurent::{to_fp_shifted, IdealShape1, Laurent1};

pub fn unit_test(b: &IdealShape1, u: &Laurent1) -> bool {
    match b {
        IdealShape1::Zero => u.num_terms() == 1 && u.terms().all(|(_, c)| c.abs().is_one()),
        IdealShape1::CharOnly(p) => u.reduce_mod(*p).num_terms() == 1,
        IdealShape1::Poly(pp, p) if *p > 0 => {
            let (f, _) = to_fp_shifted(u, *p);
            !f.is_zero() && !f.rem(&FpPoly::from_int(pp, *p)).is_zero()
        }
        IdealShape1::Poly(pp, _) => match unit_test_lattice(pp, u) {
            Some(v) => v,
            None => unit_test_residue_fields(pp, u),
        },
    }
}

/// The lattice procedure; `None` unless `P` is monic or has constant term `±1`.
pub fn unit_test_lattice(pp: &IntPolynomial, u: &Laurent1) -> Option<bool> {
    if u.is_zero() {
        return Some(false);
    }
    if pp.is_monic() {
        let (f, _) = u.to_poly_shifted();
        return Some(nilpotent_x(pp, &f));
    }
    if pp.constant_term().abs().is_one() {
        let rev = pp.reverse().with_positive_lead();
        let inv = Laurent1::from_terms(u.terms().map(|(e, c)| (-e, c.clone())));
        let (f, _) = inv.to_poly_shifted();
        return Some(nilpotent_x(&rev, &f));
    }
    None
}

/// The residue-field procedure; valid for any irreducible primitive `P`.
pub fn unit_test_residue_fields(pp: &IntPolynomial, u: &Laurent1) -> bool {
    if u.is_zero() {
        return false;
    }
    let (f, _) = u.to_poly_shifted();
    if pp.deg() == 0 {
        return true;
    }
    let r = resultant(pp, &f);
    if r.is_zero() {
        return false;
    }
    for (q, _) in factorize(&r.abs()) {
        let Ok(q) = u64::try_from(&q) else {
            // Primes beyond u64 only arise from enormous inputs.
            return false;
        };
        let g = FpPoly::from_int(pp, q).gcd(&FpPoly::from_int(&f, q));
        if g.deg() > 0 && g.c[..g.deg()].iter().any(|&c| c != 0) {
            return false;
        }
    }
    true
}

/// Coefficient vector of `x^i·f mod P` for monic `P`.
fn residue_vec(f: &IntPolynomial, pp: &IntPolynomial, d: usize) -> Vec<BigInt> {
    let r = if f.deg() >= d && !f.is_zero() { f.pseudo_div_rem(pp).1 } else { f.clone() };
    (0..d).map(|i| r.coeff(i)).collect()
}

fn nilpotent_x(pp: &IntPolynomial, f: &IntPolynomial) -> bool {
    let d = pp.deg();
    if d == 0 {
        return true;
    }
    let det = resultant(pp, f).abs();
    if det.is_zero() {
        return false;
    }
    let x = IntPolynomial::monomial(BigInt::one(), 1);
    let mut gens: Vec<Vec<BigInt>> = Vec::with_capacity(2 * d);
    let mut xf = f.clone();
    for _ in 0..d {
        gens.push(residue_vec(&xf, pp, d));
        xf = &xf * &x;
    }
    let base = Hnf::build(&det, d, gens.iter().cloned());
    let mut prev: Option<Hnf> = None;
    let mut xn = IntPolynomial::one();
    loop {
        let mut powers = Vec::with_capacity(d);
        let mut m = xn.clone();
        for _ in 0..d {
            powers.push(residue_vec(&m, pp, d));
            m = &m * &x;
        }
        let h = Hnf::build(&det, d, gens.iter().cloned().chain(powers));
        if h == base {
            return true;
        }
        if prev.as_ref() == Some(&h) {
            return false;
        }
        prev = Some(h);
        xn = residue_poly(&(&xn * &x), pp);
    }
}

fn residue_poly(f: &IntPolynomial, pp: &IntPolynomial) -> IntPolynomial {
    if f.deg() >= pp.deg() {
        f.pseudo_div_rem(pp).1
    } else {
        f.clone()
    }
}

/// Hermite normal form of the sublattice of `Z^d` spanned by `D·Z^d` and the generators.
#[derive(Debug, PartialEq, Eq)]
struct Hnf(Vec<Vec<BigInt>>);

impl Hnf {
    fn build(modulus: &BigInt, d: usize, gens: impl Iterator<Item = Vec<BigInt>>) -> Hnf {
        let mut rows: Vec<Vec<BigInt>> = (0..d)
            .map(|i| {
                let mut v = vec![BigInt::zero(); d];
                v[i] = modulus.clone();
                v
            })
            .collect();
        for mut v in gens {
            for c in v.iter_mut() {
                *c = c.mod_floor(modulus);
            }
            for col in 0..d {
                if v[col].is_zero() {
                    continue;
                }
                let b = &rows[col];
                let e = b[col].extended_gcd(&v[col]);
                let (bg, vg) = (&b[col] / &e.gcd, &v[col] / &e.gcd);
                let mut nb: Vec<BigInt> = b.iter().zip(&v).map(|(bi, vi)| &e.x * bi + &e.y * vi).collect();
                let nv: Vec<BigInt> = b.iter().zip(&v).map(|(bi, vi)| &bg * vi - &vg * bi).collect();
                for c in nb.iter_mut().skip(col + 1) {
                    *c = c.mod_floor(modulus);
                }
                if nb[col].is_negative() {
                    nb.iter_mut().for_each(|c| *c = -&*c);
                }
                rows[col] = nb;
                v = nv.into_iter().map(|c| c.mod_floor(modulus)).collect();
            }
        }
        for col in 0..d {
            let piv = rows[col][col].clone();
            for r in 0..col {
                let q = rows[r][col].div_floor(&piv);
                if !q.is_zero() {
                    let sub: Vec<BigInt> = rows[col].iter().map(|c| &q * c).collect();
                    for (a, s) in rows[r].iter_mut().zip(sub) {
                        *a -= s;
                    }
                }
            }
        }
        Hnf(rows)
    }
}
