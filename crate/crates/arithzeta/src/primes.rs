//! Small-integer utilities: sieve-backed factorization, modular power,
//! Kronecker symbols. Bounds are desk scale, so trial division is enough.

use crate::{Error, Result};
use std::sync::Mutex;

/// Growable smallest-prime-factor sieve shared behind a lock.
pub struct Sieve {
    spf: Mutex<Vec<u32>>,
}

impl Default for Sieve {
    fn default() -> Self {
        Sieve::new()
    }
}

impl Sieve {
    pub fn new() -> Self {
        Sieve {
            spf: Mutex::new(vec![0, 0]),
        }
    }

    fn ensure(&self, n: u64) {
        let mut spf = self.spf.lock().unwrap();
        if (spf.len() as u64) > n {
            return;
        }
        let new_len = (n + 1).max(spf.len() as u64 * 2) as usize;
        let mut v = vec![0u32; new_len];
        for i in 2..new_len {
            if v[i] == 0 {
                let mut j = i;
                while j < new_len {
                    if v[j] == 0 {
                        v[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        *spf = v;
    }

    pub fn factorize(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        if n == 0 {
            return Err(Error::Domain("cannot factorize 0".into()));
        }
        if n > 10_000_000 {
            return Err(Error::Resource(format!(
                "factorization bound exceeded: {n}"
            )));
        }
        self.ensure(n);
        let spf = self.spf.lock().unwrap();
        let mut out = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = spf[m as usize] as u64;
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            out.push((p, k));
        }
        Ok(out)
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && matches!(self.factorize(n), Ok(f) if f.len() == 1 && f[0].1 == 1)
    }

    pub fn primes_up_to(&self, n: u64) -> Vec<u64> {
        self.ensure(n);
        let spf = self.spf.lock().unwrap();
        (2..=n).filter(|&i| spf[i as usize] as u64 == i).collect()
    }
}

pub fn modpow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus >= 1 && modulus < (1 << 32));
    let mut acc = 1u64 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Legendre symbol (a|p) for an odd prime p, via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> i32 {
    debug_assert!(p % 2 == 1 && p > 2);
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let e = modpow(r, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_square(n: u64) -> bool {
    let r = n.isqrt();
    r * r == n
}

/// The squarefree part n' with n = a²·n'.
pub fn squarefree_part(factors: &[(u64, u32)]) -> u64 {
    factors
        .iter()
        .filter(|&&(_, k)| k % 2 == 1)
        .map(|&(p, _)| p)
        .product()
}

pub fn is_squarefree_int(sieve: &Sieve, n: i64) -> Result<bool> {
    let m = n.unsigned_abs();
    Ok(sieve.factorize(m)?.iter().all(|&(_, k)| k == 1))
}
