//! Ratio series `|sum| / claimed_bound` over a prime sweep in the
//! `x = p^(1/4+ε)` frame.

use rayon::prelude::*;

use crate::arith::{chunk_bounds, PrimeModulus, PrimeRange};
use crate::charsums::{equivalent_sum_difference, EquivWeight, SumParams};
use crate::error::Result;
use crate::primesums::{prime_char_sum, twisted_floor_prime_sum, IntervalKind, PrimeSumParams};
use crate::report::SumRow;
use crate::shrinking::{shrinking_test, Variant};

/// Lemma ids emitted per prime, in row order.
pub const DOSSIER_LEMMAS: [&str; 4] = ["L1215.800", "L5215.300", "T1234.500", "T4015.300s"];

/// The four rows for one prime.
pub fn dossier_rows_for(p: PrimeModulus, eps: f64) -> Result<Vec<SumRow>> {
    let frame = SumParams::burgess_frame(p, eps);
    let x = frame.x;
    let equiv = equivalent_sum_difference(&frame.with_b(2), EquivWeight::Reciprocal)?;
    let prime_params = PrimeSumParams::new(x, Variant::Shrinking.cutoff(x))
        .with_modulus(p)
        .with_epsilon(eps);
    let s1 = twisted_floor_prime_sum(&prime_params)?;
    let premise = shrinking_test(p, x)?.premise;
    let primes = prime_char_sum(&prime_params, IntervalKind::Short)?;
    Ok(vec![
        equiv.report.row(),
        s1.report.row(),
        premise.row(),
        primes.row(),
    ])
}

/// Every prime in `[lo, hi]`, ascending; the row order does not depend on the
/// thread count.
pub fn dossier(lo: u64, hi: u64, eps: f64) -> Result<Vec<SumRow>> {
    let chunks: Vec<Result<Vec<SumRow>>> = chunk_bounds(lo.max(3), hi, 1 << 15)
        .into_par_iter()
        .map(|(a, b)| {
            let mut rows = Vec::new();
            for p in PrimeRange::new(a, b) {
                rows.extend(dossier_rows_for(PrimeModulus::new(p)?, eps)?);
            }
            Ok(rows)
        })
        .collect();
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_per_prime_in_order() {
        let rows = dossier(1_000, 1_100, 0.1).unwrap();
        assert_eq!(rows.len(), 4 * 16);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.lemma_id, DOSSIER_LEMMAS[i % 4]);
            assert!(r.ratio.is_finite() && r.claimed_bound > 0.0);
        }
        assert_eq!(rows[0].params.p, Some(1_009));
        assert_eq!(rows[0].params.b, Some(2));
    }
}
