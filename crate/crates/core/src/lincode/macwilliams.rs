use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{CodeError, WeightDistribution};

/// Krawtchouk values `K_j(i; n)` for `j = 0..=n`, by the three-term recurrence
/// `(j+1) K_{j+1} = (n - 2i) K_j - (n - j + 1) K_{j-1}`.
pub fn krawtchouk(n: usize, i: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::from(1));
    if n == 0 {
        return out;
    }
    let a = BigInt::from(n as i64 - 2 * i as i64);
    out.push(a.clone());
    for j in 1..n {
        let next = (&a * &out[j] - BigInt::from((n - j + 1) as u64) * &out[j - 1]) / BigInt::from(j as u64 + 1);
        out.push(next);
    }
    out
}

/// Weight distribution of the dual code:
/// `A'_j = 2^-k sum_i A_i K_j(i; n)`, exact over the integers.
pub fn macwilliams_dual(wd: &WeightDistribution) -> Result<WeightDistribution, CodeError> {
    let (n, k) = (wd.length(), wd.dimension());
    if k > n {
        return Err(CodeError::InvalidDistribution(format!("dimension {k} exceeds length {n}")));
    }
    let mut sums = vec![BigInt::zero(); n + 1];
    for (&i, a) in wd.counts() {
        let a = BigInt::from_biguint(Sign::Plus, a.clone());
        for (s, kv) in sums.iter_mut().zip(krawtchouk(n, i)) {
            *s += &a * kv;
        }
    }
    let denom = BigInt::from(1) << k;
    let mut counts = BTreeMap::new();
    for (j, s) in sums.into_iter().enumerate() {
        let (q, r) = s.div_rem(&denom);
        if !r.is_zero() || q.is_negative() {
            return Err(CodeError::NonIntegerResult { weight: j });
        }
        let q: BigUint = q.to_biguint().expect("nonnegative");
        if !q.is_zero() {
            counts.insert(j, q);
        }
    }
    WeightDistribution::new(n, n - k, counts)
}
