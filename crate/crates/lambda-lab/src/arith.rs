//! Word-size modular arithmetic: mulmod/powmod via u128, deterministic
//! Miller-Rabin for u64, and a generator for the CRT solver primes.

/// (a * b) mod m without overflow.
#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// a^e mod m by square-and-multiply.
pub fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Inverse of a mod m (m prime not required), or None if gcd(a, m) != 1.
pub fn invmod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin; the witness set covers all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &sp in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes descending from just below 2^62, skipping `avoid`.
pub fn solver_primes(avoid: u64) -> impl Iterator<Item = u64> {
    ((0u64..).map(|k| (1u64 << 62) - 1 - 2 * k)).filter(move |&n| n != avoid && is_prime(n))
}

/// Legendre symbol of a mod odd prime p, as 0 / 1 / p-1.
pub fn legendre(a: u64, p: u64) -> u64 {
    powmod(a % p, (p - 1) / 2, p)
}

/// Square root of a mod odd prime p by exhaustive scan (desk-scale p),
/// or None if a is a non-residue.
pub fn sqrt_mod_scan(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    (0..p).find(|&x| mulmod(x, x, p) == a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(31));
        assert!(is_prime((1 << 62) - 57)); // a known 62-bit prime
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael
        assert!(!is_prime((1 << 62) - 1));
    }

    #[test]
    fn solver_primes_are_prime_and_large() {
        let ps: Vec<u64> = solver_primes(7).take(5).collect();
        for &ell in &ps {
            assert!(is_prime(ell));
            assert!(ell > (1 << 61));
        }
        assert_eq!(ps.len(), 5);
    }

    #[test]
    fn inverse() {
        assert_eq!(invmod(3, 7), Some(5));
        assert_eq!(invmod(4, 6), None);
        let m = (1u64 << 62) - 57;
        let a = 123456789;
        assert_eq!(mulmod(a, invmod(a, m).unwrap(), m), 1);
    }

    #[test]
    fn legendre_symbol() {
        // squares mod 7: 1, 2, 4
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), 6);
        assert_eq!(legendre(0, 7), 0);
    }
}
