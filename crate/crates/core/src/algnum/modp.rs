//! Polynomials over a prime field `F_p`, `p < 2^63`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::IntPolynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    /// Coefficients in `[0, p)`, lowest degree first, no trailing zeros.
    pub c: Vec<u64>,
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn invmod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    powmod(a, p - 2, p)
}

pub fn reduce_big(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_int(f: &IntPolynomial, p: u64) -> Self {
        Self::new(p, f.coeffs().iter().map(|c| reduce_big(c, p)).collect())
    }

    /// Lift with coefficients in `[0, p)`.
    pub fn to_int(&self) -> IntPolynomial {
        IntPolynomial::new(self.c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| (self.c.get(i).copied().unwrap_or(0) + p - o.c.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    pub fn scale(&self, s: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&x| mulmod(x, s, self.p)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut v = vec![0u128; self.c.len() + o.c.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + a as u128 * b as u128) % pp;
            }
        }
        Self::new(p, v.into_iter().map(|x| x as u64).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod(self.lead(), self.p))
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero in F_p[x]");
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (Self::zero(p), self.clone());
        }
        let inv = invmod(d.lead(), p);
        let dd = d.deg();
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = mulmod(r[i], inv, p);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for j in 0..=dd {
                r[i - dd + j] = (r[i - dd + j] + p - mulmod(c, d.c[j], p)) % p;
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = invmod(r0.lead(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(p, self.c.iter().enumerate().skip(1).map(|(i, &x)| mulmod(x, i as u64 % p, p)).collect())
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigInt, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for bit in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(bit) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.deg() == 0 || self.gcd(&self.derivative()).deg() == 0
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn ddf(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = Self::x(p);
        let mut h = x.rem(&f);
        let pb = BigInt::from(p);
        let mut d = 0;
        while f.deg() >= 2 * (d + 1) {
            d += 1;
            h = h.powmod(&pb, &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                out.push((g.clone(), d));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
        }
        if f.deg() > 0 {
            let n = f.deg();
            out.push((f, n));
        }
        out
    }

    /// Equal-degree splitting (Cantor–Zassenhaus) for odd `p`.
    pub fn edf<R: Rng>(&self, d: usize, rng: &mut R) -> Vec<FpPoly> {
        let p = self.p;
        assert!(p % 2 == 1, "equal-degree splitting requires odd p");
        let f = self.monic();
        let n = f.deg();
        if n == d {
            return vec![f];
        }
        let e = (BigInt::from(p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a = Self::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.deg() == 0 {
                continue;
            }
            let g = f.gcd(&a);
            let split = if g.deg() > 0 && g.deg() < n {
                g
            } else {
                let b = a.powmod(&e, &f).sub(&Self::one(p));
                let g = f.gcd(&b);
                if g.deg() == 0 || g.deg() == n {
                    continue;
                }
                g
            };
            let other = f.div_rem(&split).0;
            let mut out = split.edf(d, rng);
            out.extend(other.edf(d, rng));
            return out;
        }
    }

    /// Monic irreducible factors of a squarefree polynomial, odd `p`.
    pub fn factor_squarefree<R: Rng>(&self, rng: &mut R) -> Vec<FpPoly> {
        let mut out = Vec::new();
        for (g, d) in self.ddf() {
            out.extend(g.edf(d, rng));
        }
        out.sort_by(|a, b| a.c.len().cmp(&b.c.len()).then(a.c.cmp(&b.c)));
        out
    }

    /// Irreducibility over `F_p` (any prime `p`).
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return false,
        };
        if !self.is_squarefree() {
            return false;
        }
        let parts = self.ddf();
        parts.len() == 1 && parts[0].1 == n
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, self.p) + c) % self.p)
    }
}

/// Multiplicative order of `x` in `F_p[x]/(f)` for irreducible `f` with `f(0) != 0`.
pub fn order_of_x(f: &FpPoly) -> BigInt {
    let p = f.p;
    let n = f.deg() as u32;
    let group: BigInt = BigInt::from(p).pow(n) - 1u32;
    let x = FpPoly::x(p);
    let mut ord = group.clone();
    for (q, _) in super::intfactor::factorize(&group) {
        while (&ord % &q).is_zero() {
            let cand = &ord / &q;
            if x.powmod(&cand, f).is_one() {
                ord = cand;
            } else {
                break;
            }
        }
    }
    ord
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factor_x4_minus_1_mod_5() {
        let f = FpPoly::new(5, vec![4, 0, 0, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = f.factor_squarefree(&mut rng);
        assert_eq!(fs.len(), 4);
        let prod = fs.iter().fold(FpPoly::one(5), |a, b| a.mul(b));
        assert_eq!(prod, f);
    }

    #[test]
    fn irreducibility() {
        assert!(FpPoly::new(2, vec![1, 1, 1]).is_irreducible());
        assert!(!FpPoly::new(3, vec![1, 0, 1, 0, 1]).is_irreducible()); // x^4+x^2+1 = (x^2+x+2)(x^2+2x+2) mod 3
        assert!(FpPoly::new(3, vec![1, 0, 1]).is_irreducible());
    }

    #[test]
    fn ext_gcd_identity() {
        let a = FpPoly::new(7, vec![1, 2, 0, 3]);
        let b = FpPoly::new(7, vec![5, 1, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn order_of_x_small() {
        // x^2+x+1 over F_2: x has order 3.
        assert_eq!(order_of_x(&FpPoly::new(2, vec![1, 1, 1])), BigInt::from(3));
        // x - 2 over F_5: 2 has order 4.
        assert_eq!(order_of_x(&FpPoly::new(5, vec![3, 1])), BigInt::from(4));
    }
}
