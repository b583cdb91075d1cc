use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::BitVec;
use crate::exec::{split_range, Exec};

use super::{CodeError, LinearCode};

/// Exact weight distribution: nonzero counts `A_w` keyed by weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    n: usize,
    k: usize,
    counts: BTreeMap<usize, BigUint>,
}

impl WeightDistribution {
    /// Builds a distribution, dropping zero entries and checking that the
    /// counts sum to `2^k`, that `A_0 = 1` and that weights do not exceed `n`.
    pub fn new(n: usize, k: usize, counts: BTreeMap<usize, BigUint>) -> Result<Self, CodeError> {
        let counts: BTreeMap<usize, BigUint> = counts.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if let Some((&w, _)) = counts.iter().next_back().filter(|(&w, _)| w > n) {
            return Err(CodeError::InvalidDistribution(format!("weight {w} exceeds length {n}")));
        }
        if counts.get(&0) != Some(&BigUint::one()) {
            return Err(CodeError::InvalidDistribution("A_0 must be 1".into()));
        }
        let total: BigUint = counts.values().sum();
        if total != BigUint::one() << k {
            return Err(CodeError::InvalidDistribution(format!("counts sum to {total}, not 2^{k}")));
        }
        Ok(WeightDistribution { n, k, counts })
    }

    pub(crate) fn from_u64_counts(n: usize, k: usize, counts: &[u64]) -> Self {
        let counts = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(w, &c)| (w, BigUint::from(c)))
            .collect();
        WeightDistribution { n, k, counts }
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn count(&self, w: usize) -> BigUint {
        self.counts.get(&w).cloned().unwrap_or_default()
    }

    pub fn counts(&self) -> &BTreeMap<usize, BigUint> {
        &self.counts
    }

    /// Smallest nonzero weight present, the minimum distance of a linear code.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// `A_w = A_{n-w}` for all `w`.
    pub fn is_symmetric(&self) -> bool {
        self.counts.iter().all(|(&w, c)| self.counts.get(&(self.n - w)) == Some(c))
    }
}

impl fmt::Display for WeightDistribution {
    /// Polynomial form, e.g. `1 + 30z^8 + z^16`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .counts
            .iter()
            .map(|(&w, c)| match (w, c.is_one()) {
                (0, _) => c.to_string(),
                (w, true) => format!("z^{w}"),
                (w, false) => format!("{c}z^{w}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

struct CountsRef<'a>(&'a BTreeMap<usize, BigUint>);

impl Serialize for CountsRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (w, c) in self.0 {
            map.serialize_entry(&w.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            k: usize,
            counts: CountsRef<'a>,
        }
        Repr { n: self.n, k: self.k, counts: CountsRef(&self.counts) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightDistribution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            k: usize,
            counts: BTreeMap<String, String>,
        }
        let r = Repr::deserialize(d)?;
        let mut counts = BTreeMap::new();
        for (w, c) in r.counts {
            let w: usize = w.parse().map_err(|_| D::Error::custom(format!("bad weight {w:?}")))?;
            let c: BigUint = c.parse().map_err(|_| D::Error::custom(format!("bad count {c:?}")))?;
            counts.insert(w, c);
        }
        WeightDistribution::new(r.n, r.k, counts).map_err(D::Error::custom)
    }
}

/// Largest code dimension the enumerators will walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_dimension: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_dimension: 28 }
    }
}

impl Budget {
    /// Default budget, overridden by the `BENTCODES_BUDGET` environment variable
    /// (a maximum dimension) when it parses.
    pub fn from_env() -> Self {
        std::env::var("BENTCODES_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(|max_dimension| Budget { max_dimension })
            .unwrap_or_default()
    }

    fn check(self, code: &LinearCode) -> Result<(), CodeError> {
        if code.dimension() > self.max_dimension as usize || code.dimension() >= 64 {
            return Err(CodeError::DimensionTooLarge { dimension: code.dimension(), limit: self.max_dimension });
        }
        Ok(())
    }
}

/// Flattened generator rows for the Gray-code walk.
struct Packed {
    stride: usize,
    words: Vec<u64>,
    weights: Vec<u32>,
}

impl Packed {
    fn new(code: &LinearCode) -> Self {
        let stride = crate::bits::words_for(code.length());
        let rows = code.generators().rows();
        Packed {
            stride,
            words: rows.iter().flat_map(|r| r.words().iter().copied()).collect(),
            weights: rows.iter().map(|r| r.count_ones() as u32).collect(),
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    /// Visits codewords `gray(s), gray(s+1), ..., gray(e-1)` as
    /// `(message, weight, words)`. Each step flips one generator and updates
    /// the weight by `wt(g) - 2 wt(g & c)`.
    fn walk(&self, range: std::ops::Range<u64>, mut visit: impl FnMut(u64, u32, &[u64])) {
        let mut cur = vec![0u64; self.stride];
        let start_msg = range.start ^ (range.start >> 1);
        for i in 0..self.weights.len() {
            if (start_msg >> i) & 1 == 1 {
                for (c, r) in cur.iter_mut().zip(self.row(i)) {
                    *c ^= r;
                }
            }
        }
        let mut weight: u32 = cur.iter().map(|w| w.count_ones()).sum();
        visit(start_msg, weight, &cur);
        for idx in range.start + 1..range.end {
            let bit = idx.trailing_zeros() as usize;
            let mut overlap = 0u32;
            for (c, r) in cur.iter_mut().zip(self.row(bit)) {
                overlap += (*c & r).count_ones();
                *c ^= r;
            }
            weight = weight + self.weights[bit] - 2 * overlap;
            visit(idx ^ (idx >> 1), weight, &cur);
        }
    }
}

/// Exhaustive codeword enumeration with an execution strategy and a size guard.
#[derive(Clone, Copy, Debug, Default)]
pub struct Enumerator {
    pub exec: Exec,
    pub budget: Budget,
}

impl Enumerator {
    pub fn new(exec: Exec, budget: Budget) -> Self {
        Enumerator { exec, budget }
    }

    pub fn weight_distribution(&self, code: &LinearCode) -> Result<WeightDistribution, CodeError> {
        self.budget.check(code)?;
        let n = code.length();
        let packed = Packed::new(code);
        let segments = split_range(1u64 << code.dimension(), self.exec.segments());
        let counts = self.exec.fold(
            0..segments.len(),
            || vec![0u64; n + 1],
            |mut acc, s| {
                packed.walk(segments[s].clone(), |_, w, _| acc[w as usize] += 1);
                acc
            },
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
        Ok(WeightDistribution::from_u64_counts(n, code.dimension(), &counts))
    }

    /// All codewords of weight `w`, ordered by message index.
    pub fn codewords_of_weight(&self, code: &LinearCode, w: usize) -> Result<Vec<BitVec>, CodeError> {
        self.budget.check(code)?;
        let n = code.length();
        let packed = Packed::new(code);
        let segments = split_range(1u64 << code.dimension(), self.exec.segments());
        let mut found = self.exec.fold(
            0..segments.len(),
            Vec::new,
            |mut acc: Vec<(u64, BitVec)>, s| {
                packed.walk(segments[s].clone(), |msg, wt, words| {
                    if wt as usize == w {
                        acc.push((msg, BitVec::from_words(n, words.to_vec())));
                    }
                });
                acc
            },
            |mut a, mut b| {
                a.append(&mut b);
                a
            },
        );
        found.sort_by_key(|(msg, _)| *msg);
        Ok(found.into_iter().map(|(_, v)| v).collect())
    }

    /// Codewords of the minimum nonzero weight, ordered by message index.
    pub fn min_weight_codewords(&self, code: &LinearCode) -> Result<Vec<BitVec>, CodeError> {
        let wd = self.weight_distribution(code)?;
        match wd.min_nonzero_weight() {
            Some(d) => self.codewords_of_weight(code, d),
            None => Ok(Vec::new()),
        }
    }
}

pub fn weight_distribution(code: &LinearCode) -> Result<WeightDistribution, CodeError> {
    Enumerator::default().weight_distribution(code)
}

pub fn min_weight_codewords(code: &LinearCode) -> Result<Vec<BitVec>, CodeError> {
    Enumerator::default().min_weight_codewords(code)
}

/// The four-weight enumerator of a code built from a `(2m, l)` bent vectorial function.
pub fn bent_enumerator(m: u32, ell: u32) -> WeightDistribution {
    let n = 1usize << (2 * m);
    let (centre, off) = (n / 2, 1usize << (m - 1));
    let side = ((BigUint::one() << ell) - 1u32) << (2 * m);
    let mut counts = BTreeMap::new();
    counts.insert(0, BigUint::one());
    counts.insert(centre - off, side.clone());
    counts.insert(centre, BigUint::from(2 * (n as u64 - 1)));
    counts.insert(centre + off, side);
    counts.insert(n, BigUint::one());
    WeightDistribution::new(n, 2 * m as usize + 1 + ell as usize, counts).expect("counts sum to 2^k")
}

/// True iff `wd` is exactly the bent-vectorial enumerator for `(m, l)` with `l >= 1`.
pub fn check_bent_enumerator(wd: &WeightDistribution, m: u32, ell: u32) -> bool {
    if ell == 0 || m == 0 || 2 * m >= 64 {
        return false;
    }
    let expected = bent_enumerator(m, ell);
    wd.n == expected.n && wd.counts == expected.counts
}
