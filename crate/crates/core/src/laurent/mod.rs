//! Laurent polynomial rings `Z[x^±1]` and `Z[x^±1, y^±1]`, the monomial action of
//! `GL(2, Z)`, and membership in the ideals of [`ideal`].

pub mod ideal;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algnum::modp::FpPoly;
use crate::algnum::IntPolynomial;
use crate::error::{domain_err, parse_err, Error, Result};
use crate::text;

pub use ideal::{ideal_eq, ideal_member1, ideal_member2, IdealShape1, IdealShape2};

/// Sparse Laurent polynomial in `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Laurent1 {
    terms: BTreeMap<i64, BigInt>,
}

/// Sparse Laurent polynomial in `x, y`, keyed by the exponent vector `(i, j)` of `x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Laurent2 {
    terms: BTreeMap<(i64, i64), BigInt>,
}

macro_rules! laurent_common {
    ($t:ident, $k:ty) => {
        impl $t {
            pub fn zero() -> Self {
                Self::default()
            }

            pub fn one() -> Self {
                Self::monomial(BigInt::one(), Default::default())
            }

            pub fn constant(c: BigInt) -> Self {
                Self::monomial(c, Default::default())
            }

            pub fn monomial(c: BigInt, e: $k) -> Self {
                let mut terms = BTreeMap::new();
                if !c.is_zero() {
                    terms.insert(e, c);
                }
                $t { terms }
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn terms(&self) -> impl Iterator<Item = (&$k, &BigInt)> {
                self.terms.iter()
            }

            pub fn num_terms(&self) -> usize {
                self.terms.len()
            }

            pub fn coeff(&self, e: $k) -> BigInt {
                self.terms.get(&e).cloned().unwrap_or_default()
            }

            fn add_term(&mut self, e: $k, c: BigInt) {
                if c.is_zero() {
                    return;
                }
                let entry = self.terms.entry(e).or_default();
                *entry += c;
                if entry.is_zero() {
                    self.terms.remove(&e);
                }
            }

            pub fn from_terms(it: impl IntoIterator<Item = ($k, BigInt)>) -> Self {
                let mut out = Self::default();
                for (e, c) in it {
                    out.add_term(e, c);
                }
                out
            }

            pub fn scale(&self, c: &BigInt) -> Self {
                Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)))
            }

            /// Coefficients reduced into `[0, p)`; identity for `p = 0`.
            pub fn reduce_mod(&self, p: u64) -> Self {
                if p == 0 {
                    return self.clone();
                }
                let pb = BigInt::from(p);
                Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a.mod_floor(&pb))))
            }

            pub fn content(&self) -> BigInt {
                self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
            }

            /// Leading coefficient in the exponent order.
            pub fn lead(&self) -> BigInt {
                self.terms.values().next_back().cloned().unwrap_or_default()
            }

            /// A single term `±x^e`: a unit of the Laurent ring.
            pub fn is_unit(&self) -> bool {
                self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
            }
        }

        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
            }
        }

        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }

        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                let mut out = self.clone();
                for (e, c) in &rhs.terms {
                    out.add_term(*e, c.clone());
                }
                out
            }
        }

        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                let mut out = self.clone();
                for (e, c) in &rhs.terms {
                    out.add_term(*e, -c);
                }
                out
            }
        }

        impl Mul for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                let mut out = $t::default();
                for (e1, c1) in &self.terms {
                    for (e2, c2) in &rhs.terms {
                        out.add_term(add_exp(*e1, *e2), c1 * c2);
                    }
                }
                out
            }
        }

        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }

        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }

        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }

        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }
    };
}

trait ExpAdd {
    fn add_exp(a: Self, b: Self) -> Self;
}

fn add_exp<T: ExpAdd>(a: T, b: T) -> T {
    T::add_exp(a, b)
}

impl ExpAdd for i64 {
    fn add_exp(a: i64, b: i64) -> i64 {
        a + b
    }
}

impl ExpAdd for (i64, i64) {
    fn add_exp(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
        (a.0 + b.0, a.1 + b.1)
    }
}

laurent_common!(Laurent1, i64);
laurent_common!(Laurent2, (i64, i64));

impl Laurent1 {
    pub fn x_pow(e: i64) -> Self {
        Self::monomial(BigInt::one(), e)
    }

    pub fn from_poly(p: &IntPolynomial) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| (i as i64, c.clone())))
    }

    pub fn from_i64(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent1 { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// `(P, s)` with `self = x^s P` and `P(0) != 0`.
    pub fn to_poly_shifted(&self) -> (IntPolynomial, i64) {
        let s = self.min_exp().unwrap_or(0);
        let top = self.max_exp().unwrap_or(0);
        let mut v = vec![BigInt::zero(); (top - s + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - s) as usize] = c.clone();
        }
        (IntPolynomial::new(v), s)
    }

    /// Monomial normalization: minimum exponent 0 and positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let (p, _) = self.to_poly_shifted();
        Self::from_poly(&p.with_positive_lead())
    }

    /// Exact substitution `x = n`, defined when `n` is a unit or no negative exponents occur.
    pub fn eval_int(&self, n: &BigInt) -> Option<BigInt> {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            if *e < 0 {
                if !n.abs().is_one() {
                    return None;
                }
                acc += c * n.pow((-e) as u32);
            } else {
                acc += c * n.pow(*e as u32);
            }
        }
        Some(acc)
    }

    /// `(x^k - 1)/(x - 1)` as an exact Laurent polynomial.
    pub fn geometric(k: i64) -> Self {
        if k >= 0 {
            Self::from_terms((0..k).map(|i| (i, BigInt::one())))
        } else {
            Self::from_terms((k..0).map(|i| (i, -BigInt::one())))
        }
    }

    /// The same polynomial in the variable `x` of two variables.
    pub fn in_x(&self) -> Laurent2 {
        Laurent2::from_terms(self.terms.iter().map(|(e, c)| ((*e, 0), c.clone())))
    }

    /// The same polynomial in the variable `y` of two variables.
    pub fn in_y(&self) -> Laurent2 {
        Laurent2::from_terms(self.terms.iter().map(|(e, c)| ((0, *e), c.clone())))
    }
}

impl Laurent2 {
    pub fn x() -> Self {
        Self::monomial(BigInt::one(), (1, 0))
    }

    pub fn y() -> Self {
        Self::monomial(BigInt::one(), (0, 1))
    }

    pub fn xy_pow(i: i64, j: i64) -> Self {
        Self::monomial(BigInt::one(), (i, j))
    }

    pub fn from_i64(terms: &[((i64, i64), i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    /// Multiplication by `x^i y^j`.
    pub fn shift(&self, i: i64, j: i64) -> Self {
        Laurent2 { terms: self.terms.iter().map(|((a, b), c)| ((a + i, b + j), c.clone())).collect() }
    }

    pub fn min_exps(&self) -> (i64, i64) {
        let i = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let j = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (i, j)
    }

    /// Monomial normalization: each variable's minimum exponent 0, positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let (i, j) = self.min_exps();
        let s = self.shift(-i, -j);
        if s.lead().is_negative() {
            -s
        } else {
            s
        }
    }

    /// Divides out the content as well as the monomial factor.
    pub fn primitive(&self) -> Self {
        let n = self.normalized();
        let c = n.content();
        if c.is_zero() || c.is_one() {
            return n;
        }
        Laurent2::from_terms(n.terms.iter().map(|(e, a)| (*e, a / &c)))
    }

    /// Substitution `y = 1`.
    pub fn at_y_one(&self) -> Laurent1 {
        Laurent1::from_terms(self.terms.iter().map(|((i, _), c)| (*i, c.clone())))
    }

    /// Substitution `x = x^a y^b`, `y = x^c y^d` of exponent vectors: `x^α ↦ x^{Aα}`.
    pub fn act(&self, m: &UniModMatrix) -> Laurent2 {
        Laurent2::from_terms(self.terms.iter().map(|(e, c)| (m.apply(*e), c.clone())))
    }

    /// Substitution `x ↦ x^k`, `y ↦ x^l` into one variable.
    pub fn specialize(&self, k: i64, l: i64) -> Laurent1 {
        Laurent1::from_terms(self.terms.iter().map(|((i, j), c)| (i * k + j * l, c.clone())))
    }

    /// Reciprocity `W(1/x, 1/y) = ±x^a y^b W`.
    pub fn is_reciprocal(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let inv = Laurent2::from_terms(self.terms.iter().map(|((i, j), c)| ((-i, -j), c.clone())));
        let a = self.normalized();
        let b = inv.normalized();
        a == b || a == -&b
    }

    /// Coefficients of powers of `y` as polynomials in `x`, after shifting both minimum
    /// exponents to zero. Returns the list and the shift.
    fn y_outer(&self) -> (Vec<IntPolynomial>, (i64, i64)) {
        let (mi, mj) = self.min_exps();
        let top = self.terms.keys().map(|e| e.1).max().unwrap_or(0);
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); (top - mj + 1) as usize];
        for ((i, j), c) in &self.terms {
            let row = &mut rows[(j - mj) as usize];
            let idx = (i - mi) as usize;
            if row.len() <= idx {
                row.resize(idx + 1, BigInt::zero());
            }
            row[idx] = c.clone();
        }
        (rows.into_iter().map(IntPolynomial::new).collect(), (mi, mj))
    }

    fn from_y_outer(rows: &[IntPolynomial], shift: (i64, i64)) -> Laurent2 {
        let mut out = Laurent2::zero();
        for (j, row) in rows.iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                out.add_term((i as i64 + shift.0, j as i64 + shift.1), c.clone());
            }
        }
        out
    }
}

/// `V` with `Q V = W` in `Z_p[x^±1, y^±1]`, if it exists.
///
/// Division treats `y` as the outer variable with coefficients in `Z[x]` (or `F_p[x]`), dividing
/// leading coefficients exactly and failing on the first inexact step.
pub fn divides_exact(q: &Laurent2, w: &Laurent2, p: u64) -> Option<Laurent2> {
    let q = q.reduce_mod(p);
    let w = w.reduce_mod(p);
    if q.is_zero() {
        return None;
    }
    if w.is_zero() {
        return Some(Laurent2::zero());
    }
    let (qrows, qs) = q.y_outer();
    let (wrows, ws) = w.y_outer();
    let quot = if p == 0 { divide_rows_z(&qrows, wrows)? } else { divide_rows_fp(&qrows, wrows, p)? };
    Some(Laurent2::from_y_outer(&quot, (ws.0 - qs.0, ws.1 - qs.1)))
}

fn divide_rows_z(q: &[IntPolynomial], mut r: Vec<IntPolynomial>) -> Option<Vec<IntPolynomial>> {
    let dq = q.len() - 1;
    let lq = &q[dq];
    if r.len() < q.len() {
        return None;
    }
    let mut out = vec![IntPolynomial::zero(); r.len() - dq];
    for top in (dq..r.len()).rev() {
        if r[top].is_zero() {
            continue;
        }
        let c = r[top].div_exact(lq)?;
        for (k, qk) in q.iter().enumerate() {
            let idx = top - dq + k;
            r[idx] = &r[idx] - &(&c * qk);
        }
        out[top - dq] = c;
    }
    if r.iter().all(IntPolynomial::is_zero) {
        Some(out)
    } else {
        None
    }
}

fn divide_rows_fp(q: &[IntPolynomial], r: Vec<IntPolynomial>, p: u64) -> Option<Vec<IntPolynomial>> {
    let q: Vec<FpPoly> = q.iter().map(|f| FpPoly::from_int(f, p)).collect();
    let mut r: Vec<FpPoly> = r.iter().map(|f| FpPoly::from_int(f, p)).collect();
    let dq = q.len() - 1;
    if r.len() < q.len() {
        return None;
    }
    let mut out = vec![FpPoly::zero(p); r.len() - dq];
    for top in (dq..r.len()).rev() {
        if r[top].is_zero() {
            continue;
        }
        let (c, rem) = r[top].div_rem(&q[dq]);
        if !rem.is_zero() {
            return None;
        }
        for (k, qk) in q.iter().enumerate() {
            let idx = top - dq + k;
            r[idx] = r[idx].sub(&c.mul(qk));
        }
        out[top - dq] = c;
    }
    if r.iter().all(FpPoly::is_zero) {
        Some(out.iter().map(FpPoly::to_int).collect())
    } else {
        None
    }
}

/// Integer matrix `[[a, b], [c, d]]` of determinant `±1`, acting on exponent column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UniModMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl UniModMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let m = UniModMatrix { a, b, c, d };
        if m.det().abs() != 1 {
            return domain_err(format!("matrix [{a},{b};{c},{d}] is not unimodular"));
        }
        Ok(m)
    }

    pub const IDENTITY: UniModMatrix = UniModMatrix { a: 1, b: 0, c: 0, d: 1 };
    pub const SWAP: UniModMatrix = UniModMatrix { a: 0, b: 1, c: 1, d: 0 };

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn inverse(&self) -> Self {
        let e = self.det();
        UniModMatrix { a: e * self.d, b: -e * self.b, c: -e * self.c, d: e * self.a }
    }

    pub fn mul(&self, o: &Self) -> Self {
        UniModMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn apply(&self, e: (i64, i64)) -> (i64, i64) {
        (self.a * e.0 + self.b * e.1, self.c * e.0 + self.d * e.1)
    }

    /// A unimodular matrix whose first row is `(k, l)`; requires `gcd(k, l) = 1`.
    pub fn with_first_row(k: i64, l: i64) -> Result<Self> {
        let (g, s, t) = ext_gcd(k, l);
        if g != 1 {
            return domain_err(format!("({k}, {l}) is not a coprime pair"));
        }
        // k*s + l*t = 1, so [[k, l], [-t, s]] has determinant 1.
        UniModMatrix::new(k, l, -t, s)
    }
}

impl fmt::Display for UniModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{};{},{}]", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for UniModMatrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad matrix '{s}'")))?;
        let nums: Vec<i64> = inner
            .split([',', ';'])
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad matrix entries '{inner}'")))?;
        if nums.len() != 4 {
            return parse_err("matrix needs four entries");
        }
        UniModMatrix::new(nums[0], nums[1], nums[2], nums[3]).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for UniModMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `(g, s, t)` with `k s + l t = g = gcd(k, l) >= 0`.
pub fn ext_gcd(k: i64, l: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (k, l);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// `x^α ↦ x^{Aα}` extended linearly.
pub fn gl2_act(a: &UniModMatrix, w: &Laurent2) -> Laurent2 {
    w.act(a)
}

impl fmt::Display for Laurent1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(e, c)| (c, text::render_power('x', *e)));
        f.write_str(&text::render_terms(terms))
    }
}

impl fmt::Display for Laurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|((i, j), c)| {
            let xs = text::render_power('x', *i);
            let ys = text::render_power('y', *j);
            let mono = match (xs.is_empty(), ys.is_empty()) {
                (true, _) => ys,
                (_, true) => xs,
                _ => format!("{xs}*{ys}"),
            };
            (c, mono)
        });
        f.write_str(&text::render_terms(terms))
    }
}

impl FromStr for Laurent1 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let terms = text::parse_terms(s, &['x'], true)?;
        Ok(Laurent1::from_terms(terms.into_iter().map(|(c, e)| (e[0], c))))
    }
}

impl FromStr for Laurent2 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let terms = text::parse_terms(s, &['x', 'y'], true)?;
        Ok(Laurent2::from_terms(terms.into_iter().map(|(c, e)| ((e[0], e[1]), c))))
    }
}

/// Reduction of a one-variable Laurent polynomial modulo `p` as an `F_p` polynomial times `x^s`.
pub(crate) fn to_fp_shifted(w: &Laurent1, p: u64) -> (FpPoly, i64) {
    let (poly, s) = w.to_poly_shifted();
    (FpPoly::from_int(&poly, p), s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l2(s: &str) -> Laurent2 {
        s.parse().unwrap()
    }

    #[test]
    fn gl2_examples() {
        let w = l2("x - 2");
        assert_eq!(gl2_act(&UniModMatrix::IDENTITY, &w), w);
        assert_eq!(gl2_act(&UniModMatrix::SWAP, &w), l2("y - 2"));
        let t = UniModMatrix::new(1, 1, 0, 1).unwrap();
        assert_eq!(gl2_act(&t, &l2("x + y")), l2("x + x*y"));
    }

    #[test]
    fn divides_examples() {
        let q = l2("x - 2");
        assert_eq!(divides_exact(&q, &(&q * &l2("y + 1")), 0), Some(l2("y + 1")));
        assert_eq!(divides_exact(&q, &l2("y - 4"), 0), None);
        assert_eq!(divides_exact(&l2("x + 1"), &l2("x^2 - 1"), 2), Some(l2("x + 1")));
        assert_eq!(divides_exact(&l2("1 - y"), &l2("x^-1 - x^-1*y"), 0), Some(l2("x^-1")));
    }

    #[test]
    fn parse_render_round_trip() {
        for s in ["x^-1 - 3*x*y^2 + 7", "y - 1", "0", "-x*y^-1"] {
            let w = l2(s);
            assert_eq!(l2(&w.to_string()), w);
        }
        let w: Laurent1 = "2*x^-2 + x".parse().unwrap();
        assert_eq!(w.to_string(), "x + 2*x^-2");
    }

    #[test]
    fn geometric_sums() {
        assert_eq!(Laurent1::geometric(0), Laurent1::zero());
        assert_eq!(Laurent1::geometric(3), "1 + x + x^2".parse().unwrap());
        assert_eq!(Laurent1::geometric(-2), "-x^-1 - x^-2".parse().unwrap());
    }

    #[test]
    fn unimodular_helpers() {
        let m = UniModMatrix::with_first_row(3, 5).unwrap();
        assert_eq!((m.a, m.b), (3, 5));
        assert_eq!(m.det(), 1);
        assert!(UniModMatrix::with_first_row(2, 4).is_err());
        assert_eq!(m.mul(&m.inverse()), UniModMatrix::IDENTITY);
        assert_eq!("[0,1;1,0]".parse::<UniModMatrix>().unwrap(), UniModMatrix::SWAP);
    }

    #[test]
    fn reciprocal_two_variables() {
        assert!(l2("x*y - 3 + x^-1*y^-1").is_reciprocal());
        assert!(l2("x - y").is_reciprocal());
        assert!(!l2("x - 2").is_reciprocal());
    }
}
