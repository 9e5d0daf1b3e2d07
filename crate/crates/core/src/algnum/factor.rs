//! Factorization in `Z[x]`: squarefree decomposition, a cyclotomic fast path,
//! then factoring modulo a small prime, Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::modp::FpPoly;
use super::{cyclotomic, intfactor, IntPolynomial};
use crate::error::{domain_err, Result};

/// Largest degree accepted by [`factor_over_integers`].
pub const DEGREE_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// Signed content: the input equals `unit * prod factor^mult`.
    #[serde(serialize_with = "crate::text::ser_bigint")]
    pub unit: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl Factorization {
    pub fn product(&self) -> IntPolynomial {
        self.factors
            .iter()
            .fold(IntPolynomial::constant(self.unit.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }

    /// True for a single irreducible factor of multiplicity one.
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Complete factorization over the integers, factors primitive with positive leading coefficient.
pub fn factor_over_integers(p: &IntPolynomial) -> Result<Factorization> {
    if p.is_zero() {
        return domain_err("cannot factor the zero polynomial");
    }
    if p.deg() > DEGREE_CAP {
        return domain_err(format!("degree {} exceeds factorization cap {DEGREE_CAP}", p.deg()));
    }
    let mut unit = p.content();
    if p.lead().is_negative() {
        unit = -unit;
    }
    let f = p.canonical();
    let (f, xs) = f.strip_x();
    let mut factors = Vec::new();
    if xs > 0 {
        factors.push((IntPolynomial::from_i64(&[0, 1]), xs as u32));
    }
    for (part, mult) in squarefree_decomposition(&f) {
        for q in factor_squarefree(&part) {
            factors.push((q, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| poly_order(a, b));
    Ok(Factorization { unit, factors })
}

fn poly_order(a: &IntPolynomial, b: &IntPolynomial) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Yun's algorithm on a primitive polynomial with positive leading coefficient.
pub fn squarefree_decomposition(f: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    let g = f.gcd(&df).canonical();
    let mut c = f.div_exact(&g).expect("gcd divides").canonical();
    let mut d = &df.div_exact(&g).expect("gcd divides derivative") - &c.derivative();
    let mut i = 1;
    while c.deg() > 0 {
        let a = c.gcd(&d).canonical();
        if a.deg() > 0 {
            out.push((a.clone(), i));
        }
        c = c.div_exact(&a).expect("Yun step").canonical();
        d = &d.div_exact(&a).expect("Yun step") - &c.derivative();
        i += 1;
    }
    out
}

/// Irreducible factors of a primitive squarefree polynomial with positive leading coefficient.
fn factor_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    // Cyclotomic fast path.
    let n = rest.deg();
    let mut m = 1u64;
    while rest.deg() >= 1 && m <= 2 * (n as u64).pow(2) + 2 {
        let t = intfactor::totient(m) as usize;
        if t <= rest.deg() {
            let phi = cyclotomic(m).expect("m >= 1");
            if let Some(q) = rest.div_exact(&phi) {
                out.push(phi);
                rest = q;
            }
        }
        m += 1;
    }
    if rest.deg() >= 1 {
        out.extend(zassenhaus(&rest));
    }
    out
}

/// Modular factorization of a primitive squarefree polynomial without cyclotomic factors.
fn zassenhaus(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.canonical()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let lc = f.lead();
    // Pick, among a handful of good primes, the one giving the fewest modular factors.
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut q = 3u64;
    while tried < 6 {
        if intfactor::is_prime(&BigInt::from(q)) && !(&lc % q).is_zero() {
            let fp = FpPoly::from_int(f, q);
            if fp.deg() == n && fp.is_squarefree() {
                let fs = fp.factor_squarefree(&mut rng);
                tried += 1;
                if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
                    best = Some((q, fs));
                }
                if best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
                    break;
                }
            }
        }
        q += 2;
    }
    let (p, modular) = best.expect("a good prime exists");
    if modular.len() == 1 {
        return vec![f.canonical()];
    }

    // Coefficient bound for any factor, scaled by the leading coefficient.
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let bound = lc.abs() * (BigInt::one() << n) * (norm2.sqrt() + 1u32);
    let pb = BigInt::from(p);
    let mut k = 1u32;
    while pb.pow(k) <= &bound * 2u32 {
        k *= 2;
    }
    let modulus = pb.pow(k);
    let lifted = hensel_lift_all(f, &modular, p, k);

    // Recombination by subsets of increasing size.
    let mut remaining: Vec<IntPolynomial> = lifted;
    let mut g = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        for subset in combinations(remaining.len(), size) {
            let lcg = g.lead();
            let mut cand = IntPolynomial::constant(lcg.clone());
            for &i in &subset {
                cand = sym_mod(&(&cand * &remaining[i]), &modulus);
            }
            let h = cand.canonical();
            if h.deg() == 0 {
                continue;
            }
            if let Some(quot) = g.div_exact(&h) {
                out.push(h);
                g = quot.canonical();
                let keep: Vec<IntPolynomial> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, u)| u.clone())
                    .collect();
                remaining = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if g.deg() > 0 {
        out.push(g.canonical());
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Coefficients reduced into `(-m/2, m/2]`.
pub(crate) fn sym_mod(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let half = m / 2u32;
    IntPolynomial::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mod_poly(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &IntPolynomial, d: &IntPolynomial, m: &BigInt) -> (IntPolynomial, IntPolynomial) {
    debug_assert!(d.is_monic());
    let dd = d.deg();
    let mut r: Vec<BigInt> = mod_poly(a, m).coeffs().to_vec();
    if r.len() <= dd {
        return (IntPolynomial::zero(), IntPolynomial::new(r));
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (dd..r.len()).rev() {
        let c = r[i].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for j in 0..=dd {
            r[i - dd + j] = (&r[i - dd + j] - &c * &d.coeffs()[j]).mod_floor(m);
        }
        q[i - dd] = c;
    }
    r.truncate(dd);
    (IntPolynomial::new(q), mod_poly(&IntPolynomial::new(r), m))
}

fn mulm(a: &IntPolynomial, b: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    mod_poly(&(a * b), m)
}

/// One quadratic Hensel step: from `f = g h (mod m)`, `s g + t h = 1 (mod m)`, `h` monic,
/// to the same relations modulo `m^2`.
fn hensel_step(
    f: &IntPolynomial,
    g: &IntPolynomial,
    h: &IntPolynomial,
    s: &IntPolynomial,
    t: &IntPolynomial,
    m: &BigInt,
) -> (IntPolynomial, IntPolynomial, IntPolynomial, IntPolynomial) {
    let m2 = m * m;
    let e = mod_poly(&(f - &(g * h)), &m2);
    let (q, r) = divrem_monic(&mulm(s, &e, &m2), h, &m2);
    let g2 = mod_poly(&(&(g + &mulm(t, &e, &m2)) + &mulm(&q, g, &m2)), &m2);
    let h2 = mod_poly(&(h + &r), &m2);
    let b = mod_poly(&(&(&mulm(s, &g2, &m2) + &mulm(t, &h2, &m2)) - &IntPolynomial::one()), &m2);
    let (c, d) = divrem_monic(&mulm(s, &b, &m2), &h2, &m2);
    let s2 = mod_poly(&(s - &d), &m2);
    let t2 = mod_poly(&(&(t - &mulm(t, &b, &m2)) - &mulm(&c, &g2, &m2)), &m2);
    (g2, h2, s2, t2)
}

/// Lifts monic modular factors of `f` to monic factors modulo `p^k` (`k` a power of two).
fn hensel_lift_all(f: &IntPolynomial, modular: &[FpPoly], p: u64, k: u32) -> Vec<IntPolynomial> {
    let pb = BigInt::from(p);
    let target = pb.pow(k);
    let mut out = Vec::new();
    let mut current = mod_poly(f, &target);
    for (idx, fac) in modular.iter().enumerate() {
        if idx + 1 == modular.len() {
            // Remaining cofactor, made monic modulo p^k.
            let lc = current.lead();
            let inv = lc.modinv(&target).expect("leading coefficient invertible");
            out.push(mod_poly(&current.scale(&inv), &target));
            break;
        }
        let rest_p = modular[idx + 1..]
            .iter()
            .fold(FpPoly::new(p, vec![crate::algnum::modp::reduce_big(&current.lead(), p)]), |a, b| a.mul(b));
        let (g0, s0, t0) = rest_p.ext_gcd(fac);
        debug_assert!(g0.is_one());
        let mut g = rest_p.to_int();
        let mut h = fac.to_int();
        let mut s = s0.to_int();
        let mut t = t0.to_int();
        let mut m = pb.clone();
        while m < target {
            let (g2, h2, s2, t2) = hensel_step(&mod_poly(&current, &(&m * &m)), &g, &h, &s, &t, &m);
            g = g2;
            h = h2;
            s = s2;
            t = t2;
            m = &m * &m;
        }
        out.push(mod_poly(&h, &target));
        current = mod_poly(&g, &target);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let f = factor_over_integers(&p("x^2 - 1")).unwrap();
        assert_eq!(f.factors, vec![(p("x - 1"), 1), (p("x + 1"), 1)]);
        assert_eq!(f.unit, BigInt::one());
    }

    #[test]
    fn constant_input() {
        let f = factor_over_integers(&p("6")).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.unit, BigInt::from(6));
    }

    #[test]
    fn needs_recombination() {
        // x^4 + 1 is irreducible over Z but splits modulo every prime.
        let f = factor_over_integers(&p("x^4 + 1")).unwrap();
        assert!(f.is_irreducible());
        // Swinnerton-Dyer style product with non-cyclotomic factors.
        let g = &(&p("x^2 - 2") * &p("x^2 - 3")) * &p("3*x^3 + x - 5");
        let fg = factor_over_integers(&g.scale(&BigInt::from(-4))).unwrap();
        assert_eq!(fg.unit, BigInt::from(-4));
        assert_eq!(fg.factors.len(), 3);
        assert_eq!(fg.product(), g.scale(&BigInt::from(-4)));
    }

    #[test]
    fn multiplicities() {
        let g = &(&p("x - 2").pow(3) * &p("x^2 + x + 1").pow(2)) * &p("x").pow(2);
        let f = factor_over_integers(&g).unwrap();
        assert_eq!(f.factors, vec![(p("x - 2"), 3), (p("x"), 2), (p("x^2 + x + 1"), 2)]);
    }

    #[test]
    fn non_monic_factors() {
        let g = &p("2*x - 1") * &p("3*x^2 + 2*x + 7");
        let f = factor_over_integers(&g).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.product(), g);
    }

    #[test]
    fn degree_cap() {
        assert!(factor_over_integers(&IntPolynomial::monomial(BigInt::one(), 65)).is_err());
    }
}
