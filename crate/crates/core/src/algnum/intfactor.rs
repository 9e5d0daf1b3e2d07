//! Integer factorization: trial division, Miller–Rabin and Pollard–Brent.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_BOUND: u64 = 10_000;

/// Deterministic Miller–Rabin for `n < 3.3e24`, strong probable-prime test above.
pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for q in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let q = BigInt::from(q);
        if *n == q {
            return true;
        }
        if (n % &q).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt, seed: u64) -> Option<BigInt> {
    let c = BigInt::from(seed);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(2 + seed);
    let mut r = 1u64;
    let mut q = BigInt::one();
    let m = 64u64;
    let mut g = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 24 {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if g == *n {
        None
    } else {
        Some(g)
    }
}

fn split_into(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    for seed in 1..64 {
        if let Some(d) = pollard_brent(&n, seed) {
            let e = &n / &d;
            split_into(d, out);
            split_into(e, out);
            return;
        }
    }
    panic!("integer factorization failed for {n}");
}

/// Prime factorization of `|n|` with multiplicities, primes ascending. `0` and `±1` give `[]`.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut primes = Vec::new();
    if n.is_zero() {
        return Vec::new();
    }
    let mut q = 2u64;
    while q <= TRIAL_BOUND {
        let qb = BigInt::from(q);
        if &qb * &qb > n {
            break;
        }
        while (&n % &qb).is_zero() {
            primes.push(qb.clone());
            n /= &qb;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    split_into(n, &mut primes);
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((last, m)) if *last == p => *m += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Smallest prime divisor of `|n|`, if `|n| > 1`.
pub fn smallest_prime_factor(n: &BigInt) -> Option<BigInt> {
    factorize(n).into_iter().next().map(|(p, _)| p)
}

/// Euler's totient of a small positive integer.
pub fn totient(m: u64) -> u64 {
    factorize(&BigInt::from(m))
        .into_iter()
        .map(|(p, e)| {
            let p = p.to_u64().expect("small prime");
            (p - 1) * p.pow(e - 1)
        })
        .product()
}
