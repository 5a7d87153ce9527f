//! Integer kernels: primality, prime enumeration, modular powers and the
//! quadratic character.

mod legendre;
mod primality;
mod sieve;

pub use legendre::{
    euler_criterion, legendre, legendre_signed, supplementary_two, CharValue, PrimeModulus,
};
pub use primality::{gcd, is_prime, mul_mod, next_prime, pow_mod};
pub use sieve::{chunk_bounds, isqrt, primes_in, primes_up_to, PrimeRange, SEGMENT_LEN};

/// Smallest prime factor of every `n <= limit` (`spf[0] = 0`, `spf[1] = 1`).
pub fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    if limit >= 1 {
        spf[1] = 1;
    }
    for i in 2..=limit {
        if spf[i] != 0 {
            continue;
        }
        let mut j = i;
        while j <= limit {
            if spf[j] == 0 {
                spf[j] = i as u32;
            }
            j += i;
        }
    }
    spf
}

/// Distinct prime factors of `n`, ascending, using a table from [`smallest_prime_factors`].
pub fn distinct_prime_factors(mut n: usize, spf: &[u32]) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 1 {
        let q = spf[n] as usize;
        out.push(q as u64);
        while n.is_multiple_of(q) {
            n /= q;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_table() {
        let spf = smallest_prime_factors(100);
        assert_eq!(spf[97], 97);
        assert_eq!(spf[91], 7);
        assert_eq!(distinct_prime_factors(60, &spf), vec![2, 3, 5]);
        assert_eq!(distinct_prime_factors(1, &spf), Vec::<u64>::new());
        assert_eq!(distinct_prime_factors(64, &spf), vec![2]);
    }
}
