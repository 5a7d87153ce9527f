//! Modular exponentiation and deterministic Miller-Rabin for the full `u64` range.

/// Witness set that makes Miller-Rabin deterministic below 2^64 (Jim Sinclair).
const WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `b^e mod m` by right-to-left square-and-multiply. `m = 1` yields 0.
pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    assert!(m >= 1, "modulus must be positive");
    if m == 1 {
        return 0;
    }
    let mut base = b % m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &SMALL_PRIMES {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    // every composite below 41^2 has a factor in SMALL_PRIMES
    if n < 41 * 41 {
        return true;
    }

    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &w in &WITNESSES {
        let a = w % n;
        if a == 0 {
            continue;
        }
        let mut y = pow_mod(a, d, n);
        if y == 1 || y == n - 1 {
            continue;
        }
        for _ in 1..s {
            y = mul_mod(y, y, n);
            if y == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    if n <= 2 {
        return 2;
    }
    let mut c = n | 1;
    while !is_prime(c) {
        c += 2;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn small_cases() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(1_000_000_007));
        assert!(trial_division(1_000_000_007));
    }

    #[test]
    fn agrees_with_trial_division_below_100k() {
        for n in 0..100_000u64 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_and_large_values() {
        // Carmichael numbers and strong pseudoprimes to several bases
        for n in [561u64, 1105, 1729, 2047, 3215031751, 3825123056546413051] {
            assert!(!is_prime(n), "{n}");
        }
        assert!(is_prime(18446744073709551557)); // largest prime below 2^64
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(u64::MAX));
        assert!(!is_prime(999381247093216751));
    }

    #[test]
    fn pow_mod_examples() {
        assert_eq!(pow_mod(3, 3, 7), 6);
        assert_eq!(pow_mod(5, 0, 13), 1);
        assert_eq!(pow_mod(2, 8, 17), 1);
        assert_eq!(pow_mod(7, 5, 1), 0);
        assert_eq!(pow_mod(u64::MAX - 1, 2, u64::MAX), 1);
    }

    #[test]
    fn next_prime_steps() {
        assert_eq!(next_prime(0), 2);
        assert_eq!(next_prime(3), 3);
        assert_eq!(next_prime(24), 29);
        assert_eq!(next_prime(1_000_000_000), 1_000_000_007);
    }
}
