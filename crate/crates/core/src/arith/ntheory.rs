//! Elementary number theory on machine integers.

use num_integer::Integer;

use crate::error::{invalid, Error, Result};

/// All primes `p <= x`, ascending.
pub fn primes_up_to(x: u64) -> Vec<u64> {
    if x < 2 {
        return Vec::new();
    }
    let n = x as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Smallest-prime-factor table for `0..=n` (entries 0 and 1 are 0).
pub fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] != 0 {
            continue;
        }
        let mut j = i;
        while j <= n {
            if spf[j] == 0 {
                spf[j] = i as u32;
            }
            j += i;
        }
    }
    spf
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(p, e)` pairs, ascending in `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Factorization using a precomputed smallest-prime-factor table.
pub fn factorize_with(mut n: u64, spf: &[u32]) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    while n > 1 {
        let p = spf[n as usize] as u64;
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        out.push((p, e));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn valuation(mut n: u64, p: u64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Order of `a` in `(Z/mZ)^*`.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if m == 0 || a.gcd(&m) != 1 {
        return invalid(format!("{a} is not a unit modulo {m}"));
    }
    if m == 1 {
        return Ok(1);
    }
    let phi = euler_phi(m);
    let mut ord = phi;
    for (p, _) in factorize(phi) {
        while ord.is_multiple_of(p) && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    Ok(ord)
}

/// Least `k >= 1` with `a^k = +-1 (mod m)`.
pub fn order_mod_sign(a: u64, m: u64) -> Result<u64> {
    let ord = multiplicative_order(a, m)?;
    if m <= 2 {
        return Ok(1);
    }
    let mut x = 1u64;
    for k in 1..=ord {
        x = mul_mod(x, a % m, m);
        if x == 1 || x == m - 1 {
            return Ok(k);
        }
    }
    Ok(ord)
}

/// Smallest primitive root modulo an odd prime power `p^e` (it is also
/// primitive modulo every `p^j`, `j <= e`).
pub fn primitive_root_prime_power(p: u64, e: u32) -> Result<u64> {
    if p == 2 || !is_prime(p) || e == 0 {
        return invalid(format!("primitive root requested for {p}^{e}"));
    }
    let phi = p - 1;
    let fs = factorize(phi);
    let g = (2..p)
        .find(|&g| fs.iter().all(|&(q, _)| pow_mod(g, phi / q, p) != 1))
        .ok_or_else(|| Error::InvalidArgument(format!("no primitive root mod {p}")))?;
    if e == 1 {
        return Ok(g);
    }
    let p2 = p * p;
    if pow_mod(g, p - 1, p2) == 1 {
        Ok(g + p)
    } else {
        Ok(g)
    }
}

/// Solves `x = r_i (mod m_i)` for pairwise coprime moduli.
pub fn crt(residues: &[(u64, u64)]) -> u64 {
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for &(r, mi) in residues {
        let mi = mi as u128;
        let r = r as u128 % mi;
        // Find t with x + m t = r (mod mi).
        let inv = mod_inverse((m % mi) as u64, mi as u64).unwrap_or(0) as u128;
        let diff = (r + mi - x % mi) % mi;
        let t = diff * inv % mi;
        x += m * t;
        m *= mi;
        x %= m;
    }
    x as u64
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Largest `r` with `r^k <= x`.
pub fn integer_root(x: u64, k: u32) -> u64 {
    if k == 0 {
        return u64::MAX;
    }
    if k == 1 || x < 2 {
        return x;
    }
    let mut r = (x as f64).powf(1.0 / k as f64) as u64;
    while r > 0 && checked_pow(r, k).is_none_or(|v| v > x) {
        r -= 1;
    }
    while checked_pow(r + 1, k).is_some_and(|v| v <= x) {
        r += 1;
    }
    r
}

pub fn checked_pow(b: u64, e: u32) -> Option<u64> {
    b.checked_pow(e)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}
