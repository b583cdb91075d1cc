//! Block designs carried by fixed-weight codewords: 2-design certification via
//! the integer Gram matrix, intersection spectra, the symmetric difference
//! property, derived designs and invariant fingerprints.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitVec;
use crate::exec::Exec;
use crate::lincode::{CodeError, Enumerator, LinearCode};

/// Largest block count accepted by the exhaustive triple scan.
pub const SDP_MAX_BLOCKS: usize = 256;

/// Largest `C(v, t)` accepted by [`verify_t_design`].
pub const T_SUBSET_LIMIT: u64 = 1 << 26;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error("code has no codeword of weight {0}")]
    EmptyWeightClass(usize),
    #[error("not a 2-design: points {p} and {q} lie in {count} blocks, expected {expected}")]
    NotA2Design { p: usize, q: usize, count: usize, expected: usize },
    #[error("not a {t}-design: point set {points:?} lies in {count} blocks, expected {expected}")]
    NotATDesign { t: usize, points: Vec<usize>, count: u64, expected: u64 },
    #[error("block {index} has {found} points, expected {expected}")]
    InvalidBlock { index: usize, found: usize, expected: usize },
    #[error("blocks must be nonempty")]
    EmptyBlock,
    #[error("a design needs at least one block")]
    NoBlocks,
    #[error("block {0} is repeated")]
    RepeatedBlock(usize),
    #[error("point {point} out of range for v = {v}")]
    PointOutOfRange { point: usize, v: usize },
    #[error("block index {index} out of range for {b} blocks")]
    BlockOutOfRange { index: usize, b: usize },
    #[error("source design is not a minimum-weight bent design: {0}")]
    WrongSourceDesign(String),
    #[error("derived design check failed: {0}")]
    DerivedMismatch(String),
    #[error("triple scan refused: {b} blocks exceeds the limit of {limit}")]
    SdpTooLarge { b: usize, limit: usize },
    #[error("strength {t} is invalid for blocks of size {k} on {v} points")]
    InvalidStrength { t: usize, k: usize, v: usize },
    #[error("strength {t} too large: C({v}, {t}) exceeds {limit}")]
    StrengthTooLarge { t: usize, v: usize, limit: u64 },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A simple block design; blocks are distinct, of equal size, sorted by bit pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    v: usize,
    k: usize,
    blocks: Vec<BitVec>,
}

impl Design {
    pub fn new(v: usize, mut blocks: Vec<BitVec>) -> Result<Self, DesignError> {
        let first = blocks.first().ok_or(DesignError::NoBlocks)?;
        let k = first.count_ones();
        if k == 0 {
            return Err(DesignError::EmptyBlock);
        }
        for (index, b) in blocks.iter().enumerate() {
            if b.len() != v {
                return Err(DesignError::InvalidBlock { index, found: b.len(), expected: v });
            }
            if b.count_ones() != k {
                return Err(DesignError::InvalidBlock { index, found: b.count_ones(), expected: k });
            }
        }
        blocks.sort();
        if let Some(i) = blocks.windows(2).position(|w| w[0] == w[1]) {
            return Err(DesignError::RepeatedBlock(i + 1));
        }
        Ok(Design { v, k, blocks })
    }

    /// Design from blocks given as point lists.
    pub fn from_point_lists(v: usize, lists: &[Vec<usize>]) -> Result<Self, DesignError> {
        let mut blocks = Vec::with_capacity(lists.len());
        for l in lists {
            if let Some(&point) = l.iter().find(|&&p| p >= v) {
                return Err(DesignError::PointOutOfRange { point, v });
            }
            blocks.push(BitVec::from_indices(v, l.iter().copied()));
        }
        Design::new(v, blocks)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[BitVec] {
        &self.blocks
    }

    pub fn point_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.ones_iter().collect()).collect()
    }

    /// Incidence matrix as text: one `0`/`1` row per block.
    pub fn to_incidence_text(&self) -> String {
        self.blocks.iter().map(|b| b.to_bit_string() + "\n").collect()
    }

    pub fn to_json(&self) -> DesignJson {
        DesignJson { v: self.v, k: self.k, blocks: self.point_lists() }
    }

    pub fn from_json(j: &DesignJson) -> Result<Self, DesignError> {
        let d = Design::from_point_lists(j.v, &j.blocks)?;
        if d.k != j.k {
            return Err(DesignError::InvalidBlock { index: 0, found: d.k, expected: j.k });
        }
        Ok(d)
    }

    /// Same blocks with points relabelled by `perm` (point `p` becomes `perm[p]`).
    pub fn permute_points(&self, perm: &[usize]) -> Result<Design, DesignError> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| BitVec::from_indices(self.v, b.ones_iter().map(|p| perm[p])))
            .collect();
        Design::new(self.v, blocks)
    }
}

/// Serialized form of a design.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignJson {
    pub v: usize,
    pub k: usize,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DesignParams {
    pub t: usize,
    pub v: usize,
    pub k: usize,
    pub lambda: u64,
    pub b: usize,
    pub r: u64,
}

/// Blocks are the supports of all weight-`w` codewords.
pub fn design_from_codewords(code: &LinearCode, w: usize, enumerator: &Enumerator) -> Result<Design, DesignError> {
    let words = enumerator.codewords_of_weight(code, w)?;
    if words.is_empty() {
        return Err(DesignError::EmptyWeightClass(w));
    }
    Design::new(code.length(), words)
}

/// Incidence columns: bit `j` of column `p` is set iff block `j` contains point `p`.
fn point_columns(d: &Design) -> Vec<BitVec> {
    let mut cols = vec![BitVec::zeros(d.b()); d.v];
    for (j, b) in d.blocks.iter().enumerate() {
        for p in b.ones_iter() {
            cols[p].set(j, true);
        }
    }
    cols
}

/// Checks that `N^T N = (r - λ) I + λ J` for the block-point incidence matrix `N`.
pub fn verify_2_design(d: &Design) -> Result<DesignParams, DesignError> {
    verify_2_design_with(d, Exec::default())
}

pub fn verify_2_design_with(d: &Design, exec: Exec) -> Result<DesignParams, DesignError> {
    let cols = point_columns(d);
    let v = d.v;
    if v < 2 {
        return Err(DesignError::InvalidStrength { t: 2, k: d.k, v });
    }
    let r = cols[0].count_ones();
    let lambda = cols[0].and_count(&cols[1]);
    // first violating entry in row-major order, per row
    let bad = exec.map(0..v, |p| {
        if cols[p].count_ones() != r {
            return Some(DesignError::NotA2Design { p, q: p, count: cols[p].count_ones(), expected: r });
        }
        ((p + 1)..v).find_map(|q| {
            let c = cols[p].and_count(&cols[q]);
            (c != lambda).then_some(DesignError::NotA2Design { p, q, count: c, expected: lambda })
        })
    });
    if let Some(e) = bad.into_iter().flatten().next() {
        return Err(e);
    }
    Ok(DesignParams { t: 2, v, k: d.k, lambda: lambda as u64, b: d.b(), r: r as u64 })
}

fn binomial_table(v: usize, t: usize) -> Vec<Vec<u64>> {
    let mut c = vec![vec![0u64; t + 1]; v + 1];
    for n in 0..=v {
        c[n][0] = 1;
        for j in 1..=t.min(n) {
            c[n][j] = c[n - 1][j - 1].saturating_add(if j < n { c[n - 1][j] } else { 0 });
        }
    }
    c
}

/// Checks that every `t`-subset of points lies in the same number of blocks.
pub fn verify_t_design(d: &Design, t: usize) -> Result<DesignParams, DesignError> {
    if t == 2 {
        return verify_2_design(d);
    }
    let v = d.v;
    if t == 0 || t > d.k {
        return Err(DesignError::InvalidStrength { t, k: d.k, v });
    }
    let binom = binomial_table(v, t);
    let total = binom[v][t];
    if total > T_SUBSET_LIMIT {
        return Err(DesignError::StrengthTooLarge { t, v, limit: T_SUBSET_LIMIT });
    }
    let mut counts = vec![0u32; total as usize];
    let mut idx = vec![0usize; t];
    for b in &d.blocks {
        let pts: Vec<usize> = b.ones_iter().collect();
        // lexicographic walk over t-subsets of the block, colex rank
        for (i, slot) in idx.iter_mut().enumerate() {
            *slot = i;
        }
        loop {
            let rank: u64 = idx.iter().enumerate().map(|(i, &j)| binom[pts[j]][i + 1]).sum();
            counts[rank as usize] += 1;
            let Some(pos) = (0..t).rev().find(|&i| idx[i] < pts.len() - t + i) else { break };
            idx[pos] += 1;
            for i in pos + 1..t {
                idx[i] = idx[i - 1] + 1;
            }
        }
    }
    let lambda = counts[0];
    if let Some(rank) = counts.iter().position(|&c| c != lambda) {
        // unrank colex
        let mut points = vec![0usize; t];
        let mut rest = rank as u64;
        let mut hi = v;
        for i in (0..t).rev() {
            let mut c = i;
            while c + 1 < hi && binom[c + 1][i + 1] <= rest {
                c += 1;
            }
            points[i] = c;
            rest -= binom[c][i + 1];
            hi = c;
        }
        return Err(DesignError::NotATDesign { t, points, count: counts[rank] as u64, expected: lambda as u64 });
    }
    let r = point_columns(d)[0].count_ones() as u64;
    Ok(DesignParams { t, v, k: d.k, lambda: lambda as u64, b: d.b(), r })
}

/// Per-block histograms of `|B ∩ B'|` over the other blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionSpectrum {
    pub per_block: Vec<BTreeMap<usize, usize>>,
    /// Intersection sizes over unordered pairs of distinct blocks.
    pub global: BTreeMap<usize, u64>,
}

impl IntersectionSpectrum {
    /// The common histogram, if every block has the same one.
    pub fn uniform(&self) -> Option<&BTreeMap<usize, usize>> {
        let first = self.per_block.first()?;
        self.per_block.iter().all(|h| h == first).then_some(first)
    }

    pub fn intersection_numbers(&self) -> BTreeSet<usize> {
        self.global.keys().copied().collect()
    }
}

pub fn intersection_spectrum(d: &Design) -> IntersectionSpectrum {
    intersection_spectrum_with(d, Exec::default())
}

pub fn intersection_spectrum_with(d: &Design, exec: Exec) -> IntersectionSpectrum {
    let blocks = &d.blocks;
    let per_block = exec.map(0..blocks.len(), |i| {
        let mut h = vec![0usize; d.k + 1];
        for (j, other) in blocks.iter().enumerate() {
            if j != i {
                h[blocks[i].and_count(other)] += 1;
            }
        }
        h.into_iter().enumerate().filter(|&(_, n)| n > 0).collect::<BTreeMap<_, _>>()
    });
    let mut global = BTreeMap::new();
    for h in &per_block {
        for (&s, &n) in h {
            *global.entry(s).or_insert(0u64) += n as u64;
        }
    }
    for n in global.values_mut() {
        *n /= 2;
    }
    IntersectionSpectrum { per_block, global }
}

/// True iff the symmetric difference of any three distinct blocks is a block
/// or the complement of a block. Refused above [`SDP_MAX_BLOCKS`] blocks.
pub fn sdp_check(d: &Design) -> Result<bool, DesignError> {
    sdp_check_with(d, Exec::default())
}

pub fn sdp_check_with(d: &Design, exec: Exec) -> Result<bool, DesignError> {
    let b = d.b();
    if b > SDP_MAX_BLOCKS {
        return Err(DesignError::SdpTooLarge { b, limit: SDP_MAX_BLOCKS });
    }
    let set: HashSet<&BitVec> = d.blocks.iter().collect();
    let blocks = &d.blocks;
    let ok = exec.fold(
        0..b,
        || true,
        |acc, i| {
            acc && (i + 1..b).all(|j| {
                let x = blocks[i].xor(&blocks[j]);
                (j + 1..b).all(|l| {
                    let y = x.xor(&blocks[l]);
                    set.contains(&y) || set.contains(&y.not())
                })
            })
        },
        |a, b| a && b,
    );
    Ok(ok)
}

/// True iff the symmetric difference of any two distinct blocks is a block or
/// the complement of a block.
pub fn pairwise_sdp_check(d: &Design) -> bool {
    let set: HashSet<&BitVec> = d.blocks.iter().collect();
    let b = d.b();
    (0..b).all(|i| {
        (i + 1..b).all(|j| {
            let x = d.blocks[i].xor(&d.blocks[j]);
            set.contains(&x) || set.contains(&x.not())
        })
    })
}

/// Every block replaced by its complement.
pub fn complement_design(d: &Design) -> Result<Design, DesignError> {
    Design::new(d.v, d.blocks.iter().map(BitVec::not).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedDesign {
    #[serde(skip)]
    pub design: Design,
    pub m: u32,
    pub block_index: usize,
    pub params: DesignParams,
    pub intersection_numbers: Vec<usize>,
    /// Symmetric difference of any two blocks is a block or a block complement.
    pub pairwise_sdp: bool,
}

/// Restricts to block `block_index` the blocks meeting it in
/// `2^{2m-2} - 2^{m-1}` points, with points relabelled `0..k` in increasing order,
/// and checks the quasi-symmetric parameters and intersection numbers.
pub fn derived_design(d: &Design, block_index: usize) -> Result<DerivedDesign, DesignError> {
    let b = d.b();
    if block_index >= b {
        return Err(DesignError::BlockOutOfRange { index: block_index, b });
    }
    let v = d.v;
    if !v.is_power_of_two() || !v.trailing_zeros().is_multiple_of(2) || v < 16 {
        return Err(DesignError::WrongSourceDesign(format!("v = {v} is not 2^(2m) with m >= 2")));
    }
    let m = v.trailing_zeros() / 2;
    let (q, h) = (1usize << (2 * m - 2), 1usize << (m - 1));
    if d.k != 2 * q - h {
        return Err(DesignError::WrongSourceDesign(format!("k = {} but minimum weight is {}", d.k, 2 * q - h)));
    }
    let base = &d.blocks[block_index];
    let pts: Vec<usize> = base.ones_iter().collect();
    let blocks: Vec<BitVec> = d
        .blocks
        .iter()
        .filter(|o| base.and_count(o) == q - h)
        .map(|o| BitVec::from_fn(pts.len(), |i| o.get(pts[i])))
        .collect();
    if blocks.len() != v - 1 {
        return Err(DesignError::WrongSourceDesign(format!(
            "{} blocks meet the chosen block in {} points, expected {}",
            blocks.len(),
            q - h,
            v - 1
        )));
    }
    let derived = Design::new(pts.len(), blocks)?;
    let params = verify_2_design(&derived).map_err(|e| DesignError::DerivedMismatch(e.to_string()))?;
    let expected = (2 * q - h, q - h, (q - h - 1) as u64);
    if (params.v, params.k, params.lambda) != expected {
        return Err(DesignError::DerivedMismatch(format!(
            "got 2-({}, {}, {}), expected 2-({}, {}, {})",
            params.v, params.k, params.lambda, expected.0, expected.1, expected.2
        )));
    }
    let numbers = intersection_spectrum(&derived).intersection_numbers();
    let expected_numbers: BTreeSet<usize> = [q / 2 - h, q / 2 - h / 2].into_iter().collect();
    if numbers != expected_numbers {
        return Err(DesignError::DerivedMismatch(format!(
            "intersection numbers {numbers:?}, expected {expected_numbers:?}"
        )));
    }
    let pairwise_sdp = pairwise_sdp_check(&derived);
    Ok(DerivedDesign {
        design: derived,
        m,
        block_index,
        params,
        intersection_numbers: numbers.into_iter().collect(),
        pairwise_sdp,
    })
}

/// Point-relabelling invariants of a design. Equal fingerprints are necessary,
/// not sufficient, for isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub v: usize,
    pub k: usize,
    pub b: usize,
    /// Replication numbers and their point counts.
    pub replication: BTreeMap<usize, usize>,
    pub two_design: Option<DesignParams>,
    pub global_intersections: BTreeMap<usize, u64>,
    /// Distinct per-block spectra with the number of blocks having each.
    pub block_spectra: Vec<(Vec<(usize, usize)>, usize)>,
}

pub fn fingerprint(d: &Design) -> Fingerprint {
    let spectrum = intersection_spectrum(d);
    let mut spectra: BTreeMap<Vec<(usize, usize)>, usize> = BTreeMap::new();
    for h in &spectrum.per_block {
        *spectra.entry(h.iter().map(|(&s, &n)| (s, n)).collect()).or_insert(0) += 1;
    }
    let mut replication = BTreeMap::new();
    for c in point_columns(d) {
        *replication.entry(c.count_ones()).or_insert(0) += 1;
    }
    Fingerprint {
        v: d.v,
        k: d.k,
        b: d.b(),
        replication,
        two_design: verify_2_design(d).ok(),
        global_intersections: spectrum.global,
        block_spectra: spectra.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Fano plane 2-(7,3,1).
    fn fano() -> Design {
        let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
        Design::from_point_lists(7, &lines.map(|l| l.to_vec())).unwrap()
    }

    /// Brute-force t-design check by scanning all t-subsets.
    fn naive_lambda(d: &Design, t: usize) -> Option<usize> {
        let mut seen = None;
        for mask in 0u64..(1 << d.v()) {
            if mask.count_ones() as usize != t {
                continue;
            }
            let s = BitVec::from_indices(d.v(), (0..d.v()).filter(|i| mask >> i & 1 == 1));
            let c = d.blocks().iter().filter(|b| b.and_count(&s) == t).count();
            match seen {
                None => seen = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
        seen
    }

    #[test]
    fn fano_plane() {
        let d = fano();
        let p = verify_2_design(&d).unwrap();
        assert_eq!((p.v, p.k, p.lambda, p.b, p.r), (7, 3, 1, 7, 3));
        assert_eq!(naive_lambda(&d, 2), Some(1));
        let s = intersection_spectrum(&d);
        assert_eq!(s.uniform().unwrap(), &BTreeMap::from([(1, 6)]));
        assert_eq!(s.global, BTreeMap::from([(1, 21)]));
        let c = complement_design(&d).unwrap();
        assert_eq!(verify_2_design(&c).unwrap().lambda, 2);
        assert_eq!(complement_design(&c).unwrap(), d);
    }

    #[test]
    fn t_design_agrees_with_naive() {
        let d = fano();
        assert_eq!(verify_t_design(&d, 1).unwrap().lambda, 3);
        assert!(matches!(verify_t_design(&d, 3), Err(DesignError::NotATDesign { t: 3, .. })));
        assert_eq!(naive_lambda(&d, 3), None);
        // the complete design on 6 points, k = 3, is a 3-design with lambda 1
        let all: Vec<Vec<usize>> = (0u32..64)
            .filter(|m| m.count_ones() == 3)
            .map(|m| (0..6).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        let k6 = Design::from_point_lists(6, &all).unwrap();
        assert_eq!(verify_t_design(&k6, 3).unwrap().lambda, 1);
        assert_eq!(naive_lambda(&k6, 3), Some(1));
    }

    #[test]
    fn violation_reports_first_pair() {
        let d = Design::from_point_lists(4, &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        match verify_2_design(&d) {
            Err(DesignError::NotA2Design { p, q, .. }) => assert!(p <= q && q < 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invariants_enforced() {
        assert_eq!(Design::new(4, vec![]), Err(DesignError::NoBlocks));
        let a = BitVec::from_indices(4, [0, 1]);
        assert_eq!(Design::new(4, vec![a.clone(), a.clone()]), Err(DesignError::RepeatedBlock(1)));
        assert!(matches!(
            Design::new(4, vec![a, BitVec::from_indices(4, [2])]),
            Err(DesignError::InvalidBlock { .. })
        ));
        let full = Design::new(4, vec![BitVec::ones(4)]).unwrap();
        assert_eq!(complement_design(&full), Err(DesignError::EmptyBlock));
        assert!(matches!(Design::from_point_lists(3, &[vec![5]]), Err(DesignError::PointOutOfRange { .. })));
    }

    #[test]
    fn json_and_incidence_round_trip() {
        let d = fano();
        let j = serde_json::to_string(&d.to_json()).unwrap();
        let back: DesignJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Design::from_json(&back).unwrap(), d);
        let text = d.to_incidence_text();
        assert_eq!(text.lines().count(), 7);
        assert!(text.lines().all(|l| l.len() == 7 && l.matches('1').count() == 3));
    }

    #[test]
    fn sdp_guard_and_fano() {
        // Fano: xor of three lines has weight 1, 3, 5 or 7; not always a line
        let d = fano();
        let naive = d.blocks().iter().enumerate().all(|(i, a)| {
            d.blocks().iter().enumerate().skip(i + 1).all(|(j, b)| {
                d.blocks().iter().skip(j + 1).all(|c| {
                    let x = a.xor(b).xor(c);
                    d.blocks().contains(&x) || d.blocks().contains(&x.not())
                })
            })
        });
        assert_eq!(sdp_check(&d).unwrap(), naive);
        let many: Vec<BitVec> = (0..300).map(|i| BitVec::from_indices(300, [i])).collect();
        let big = Design::new(300, many).unwrap();
        assert!(matches!(sdp_check(&big), Err(DesignError::SdpTooLarge { .. })));
    }

    #[test]
    fn fingerprint_invariant_under_relabelling() {
        let d = fano();
        let perm = [3, 6, 0, 5, 1, 4, 2];
        let e = d.permute_points(&perm).unwrap();
        assert_eq!(fingerprint(&d), fingerprint(&e));
        assert_ne!(fingerprint(&d), fingerprint(&complement_design(&d).unwrap()));
    }

    #[test]
    fn derived_rejects_wrong_source() {
        assert!(matches!(derived_design(&fano(), 0), Err(DesignError::WrongSourceDesign(_))));
        assert!(matches!(derived_design(&fano(), 9), Err(DesignError::BlockOutOfRange { .. })));
    }
}
