//! Segmented, odd-only sieve of Eratosthenes.
//!
//! Memory is one segment of [`SEGMENT_LEN`] odd candidates plus the base primes up
//! to `sqrt(hi)`, so ranges reaching 10^9 and beyond stream without allocation
//! proportional to the range.

/// Odd candidates per segment (one byte each).
pub const SEGMENT_LEN: usize = 1 << 16;

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// All primes `<= n` by a plain sieve. Meant for base primes and small tables.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::with_capacity(n / 8 + 8);
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

/// Iterator over the primes in `[lo, hi]`, ascending.
pub struct PrimeRange {
    hi: u64,
    base: Vec<u64>,
    /// first (odd) candidate of the current segment
    seg_lo: u64,
    flags: Vec<bool>,
    idx: usize,
    pending_two: bool,
    exhausted: bool,
}

impl PrimeRange {
    pub fn new(lo: u64, hi: u64) -> Self {
        assert!(hi < 1 << 63, "upper bound must stay below 2^63");
        let pending_two = lo <= 2 && hi >= 2;
        let first_odd = if lo <= 3 { 3 } else { lo | 1 };
        let exhausted = first_odd > hi;
        let base = if exhausted {
            Vec::new()
        } else {
            primes_up_to(isqrt(hi)).into_iter().skip(1).collect()
        };
        let mut it = PrimeRange {
            hi,
            base,
            seg_lo: first_odd,
            flags: Vec::with_capacity(SEGMENT_LEN),
            idx: 0,
            pending_two,
            exhausted,
        };
        if !it.exhausted {
            it.fill_segment();
        }
        it
    }

    fn fill_segment(&mut self) {
        let len = (((self.hi - self.seg_lo) / 2 + 1) as usize).min(SEGMENT_LEN);
        let seg_hi = self.seg_lo + 2 * (len as u64 - 1);
        self.flags.clear();
        self.flags.resize(len, true);
        for &q in &self.base {
            let sq = q * q;
            if sq > seg_hi {
                break;
            }
            let mut start = if sq >= self.seg_lo {
                sq
            } else {
                let m = self.seg_lo.div_ceil(q) * q;
                if m % 2 == 0 {
                    m + q
                } else {
                    m
                }
            };
            while start <= seg_hi {
                self.flags[((start - self.seg_lo) / 2) as usize] = false;
                start += 2 * q;
            }
        }
        if self.seg_lo == 1 {
            self.flags[0] = false;
        }
        self.idx = 0;
    }
}

impl Iterator for PrimeRange {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.pending_two {
            self.pending_two = false;
            return Some(2);
        }
        while !self.exhausted {
            while self.idx < self.flags.len() {
                let i = self.idx;
                self.idx += 1;
                if self.flags[i] {
                    return Some(self.seg_lo + 2 * i as u64);
                }
            }
            let next_lo = self.seg_lo + 2 * self.flags.len() as u64;
            if next_lo > self.hi {
                self.exhausted = true;
            } else {
                self.seg_lo = next_lo;
                self.fill_segment();
            }
        }
        None
    }
}

/// The primes `q` with `lo <= q <= hi`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if lo > hi {
        return Vec::new();
    }
    PrimeRange::new(lo, hi).collect()
}

/// Splits `[lo, hi]` into consecutive, disjoint chunks of at most `width` integers.
pub fn chunk_bounds(lo: u64, hi: u64, width: u64) -> Vec<(u64, u64)> {
    assert!(width > 0);
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    let mut a = lo;
    loop {
        let b = a.saturating_add(width - 1).min(hi);
        out.push((a, b));
        if b == hi {
            break;
        }
        a = b + 1;
    }
    out
}
