use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};

/// `{k in lo..=hi : n^(k-1) = m^(k-1)}`, compared exactly as rationals
/// (for `k < 1` both sides are reciprocals of `n^|k-1|` and `m^|k-1|`).
pub fn power_constraint(m: i64, n: i64, lo: i64, hi: i64) -> BTreeSet<i64> {
    (lo..=hi)
        .filter(|&k| {
            let e = (k - 1).unsigned_abs();
            Pow::pow(BigInt::from(n), e) == Pow::pow(BigInt::from(m), e)
        })
        .collect()
}

/// Whether `n^(k-1) = m^(k-1)` for a single, possibly huge, `k`.
pub fn power_constraint_holds(m: i64, n: i64, k: &BigInt) -> bool {
    if m == n {
        return true;
    }
    let e: BigInt = k - 1;
    if m == -n {
        return e.is_even();
    }
    e.is_zero()
}
