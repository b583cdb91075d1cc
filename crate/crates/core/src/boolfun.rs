//! Boolean functions as truth tables, the Walsh transform and bentness.
//!
//! A table is indexed in one of two ways. Field-indexed tables list
//! `f(u_1), ..., f(u_q)` in the enumeration order of a [`FieldSpec`]
//! (`0, w^0, w^1, ...`). Binary-indexed tables list `f` at the n-bit tuples
//! `0, 1, ..., 2^n - 1`, with `x_1` the most significant bit. The Walsh
//! transform of a field-indexed table uses the character `(-1)^tr(wx)`; for a
//! binary-indexed table it uses the dot product of tuples.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::bits::{BitParseError, BitVec};
use crate::exec::Exec;
use crate::gf2e::{FieldElement, FieldSpec, GfError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoolFunError {
    #[error("bentness needs an even number of variables, got {0}")]
    OddDimension(u32),
    #[error("operation supports only n = 4, got {0}")]
    UnsupportedDimension(u32),
    #[error("truth table has {found} bits, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("truth tables use different domain orderings")]
    IndexingMismatch,
    #[error("variable x{index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: u32 },
    #[error("cannot parse ANF: {0}")]
    Parse(String),
    #[error(transparent)]
    Bits(#[from] BitParseError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Domain ordering of a truth table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Indexing {
    /// Positions follow [`FieldSpec::enumerate`].
    Field(FieldSpec),
    /// Position `i` is the tuple whose binary expansion is `i`, `x_1` most significant.
    Binary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    n: u32,
    bits: BitVec,
    indexing: Indexing,
}

impl TruthTable {
    pub fn new(n: u32, bits: BitVec, indexing: Indexing) -> Result<Self, BoolFunError> {
        let expected = 1usize << n;
        if bits.len() != expected {
            return Err(BoolFunError::LengthMismatch { expected, found: bits.len() });
        }
        if let Indexing::Field(f) = &indexing {
            if f.degree() != n {
                return Err(BoolFunError::IndexingMismatch);
            }
        }
        Ok(TruthTable { n, bits, indexing })
    }

    pub fn zero(n: u32, indexing: Indexing) -> Self {
        TruthTable::new(n, BitVec::zeros(1 << n), indexing).expect("length matches")
    }

    pub fn from_hex(n: u32, hex: &str, indexing: Indexing) -> Result<Self, BoolFunError> {
        Self::new(n, BitVec::from_hex(1 << n, hex)?, indexing)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn indexing(&self) -> &Indexing {
        &self.indexing
    }

    pub fn get(&self, pos: usize) -> bool {
        self.bits.get(pos)
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones()
    }

    /// Hex string, position 0 in the least significant bit.
    pub fn to_hex(&self) -> String {
        self.bits.to_hex()
    }

    pub fn xor(&self, other: &TruthTable) -> Result<TruthTable, BoolFunError> {
        if self.indexing != other.indexing || self.n != other.n {
            return Err(BoolFunError::IndexingMismatch);
        }
        Ok(TruthTable { n: self.n, bits: self.bits.xor(&other.bits), indexing: self.indexing.clone() })
    }

    pub fn complement(&self) -> TruthTable {
        TruthTable { n: self.n, bits: self.bits.not(), indexing: self.indexing.clone() }
    }

    /// Domain point (as an n-bit integer) at each table position.
    fn point_at(&self, pos: usize) -> usize {
        match &self.indexing {
            Indexing::Binary => pos,
            Indexing::Field(f) => f.element_at_raw(pos) as usize,
        }
    }
}

/// Walsh spectrum, indexed like the truth table it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    pub values: Vec<i32>,
}

impl WalshSpectrum {
    pub fn sum_of_squares(&self) -> i64 {
        self.values.iter().map(|&v| v as i64 * v as i64).sum()
    }
}

/// In-place unnormalised Walsh-Hadamard butterfly: `out[a] = sum_x in[x] (-1)^(a.x)`.
/// Applying it twice multiplies by `len`.
pub fn fwht(data: &mut [i32]) {
    let n = data.len();
    assert!(n.is_power_of_two(), "FWHT length must be a power of two");
    let mut h = 1;
    while h < n {
        for chunk in data.chunks_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Walsh transform `f^(w) = sum_x (-1)^(f(x) + <w, x>)`, where `<w, x>` is
/// `tr_{n/1}(wx)` for field-indexed tables and the tuple dot product otherwise.
pub fn walsh_transform(f: &TruthTable) -> WalshSpectrum {
    let q = 1usize << f.n;
    let mut h = vec![0i32; q];
    for pos in 0..q {
        h[f.point_at(pos)] = if f.bits.get(pos) { -1 } else { 1 };
    }
    fwht(&mut h);
    let values = match &f.indexing {
        Indexing::Binary => h,
        Indexing::Field(field) => (0..q)
            .map(|pos| {
                // tr(w x) = <a, x> with a_k = tr(w X^k)
                let w = field.element_at_raw(pos);
                let a = (0..f.n).fold(0usize, |acc, k| {
                    acc | (field.trace_bit(field.mul_raw(w, 1 << k)) as usize) << k
                });
                h[a]
            })
            .collect(),
    };
    WalshSpectrum { values }
}

/// True iff every Walsh value has magnitude `2^(n/2)`.
pub fn is_bent(f: &TruthTable) -> Result<bool, BoolFunError> {
    if !f.n.is_multiple_of(2) {
        return Err(BoolFunError::OddDimension(f.n));
    }
    // bent weights are 2^(n-1) +- 2^(n/2-1); cheap rejection first
    let half = 1usize << (f.n / 2);
    if f.n > 0 {
        let w = f.weight();
        let centre = 1usize << (f.n - 1);
        if w.abs_diff(centre) != half / 2 {
            return Ok(false);
        }
    }
    let target = half as i32;
    Ok(walsh_transform(f).values.iter().all(|v| v.abs() == target))
}

/// Algebraic normal form: a XOR of monomials, each a set of variable indices 1..=n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnfExpression {
    n: u32,
    /// Bit `k - 1` of a mask stands for `x_k`; the empty mask is the constant 1.
    monomials: BTreeSet<u32>,
}

impl AnfExpression {
    pub fn new(n: u32, monomials: impl IntoIterator<Item = Vec<usize>>) -> Result<Self, BoolFunError> {
        let mut set = BTreeSet::new();
        for mono in monomials {
            let mut mask = 0u32;
            for k in mono {
                if k == 0 || k > n as usize {
                    return Err(BoolFunError::VariableOutOfRange { index: k, n });
                }
                mask |= 1 << (k - 1);
            }
            // x + x = 0
            if !set.insert(mask) {
                set.remove(&mask);
            }
        }
        Ok(AnfExpression { n, monomials: set })
    }

    /// Parses `x1*x6+x2*x5+x3*x4`; `1` is the constant term, `0` the empty sum.
    pub fn parse(n: u32, s: &str) -> Result<Self, BoolFunError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(BoolFunError::Parse("empty expression".into()));
        }
        if s == "0" {
            return Self::new(n, []);
        }
        let mut monos = Vec::new();
        for term in s.split('+') {
            if term == "1" {
                monos.push(vec![]);
                continue;
            }
            let mut vars = Vec::new();
            for factor in term.split('*') {
                let idx = factor
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| BoolFunError::Parse(format!("bad factor {factor:?}")))?;
                vars.push(idx);
            }
            monos.push(vars);
        }
        Self::new(n, monos)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn monomials(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.monomials
            .iter()
            .map(|&m| (0..32).filter(|b| (m >> b) & 1 == 1).map(|b| b as usize + 1).collect())
    }

    pub fn add(&self, other: &AnfExpression) -> Result<AnfExpression, BoolFunError> {
        if self.n != other.n {
            return Err(BoolFunError::IndexingMismatch);
        }
        let monomials = self.monomials.symmetric_difference(&other.monomials).copied().collect();
        Ok(AnfExpression { n: self.n, monomials })
    }
}

impl fmt::Display for AnfExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .monomials()
            .map(|vars| {
                if vars.is_empty() {
                    "1".to_string()
                } else {
                    vars.iter().map(|k| format!("x{k}")).collect::<Vec<_>>().join("*")
                }
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

/// Binary-indexed truth table of an ANF expression; `x_1` is the most
/// significant bit of the position.
pub fn truth_table_from_anf(expr: &AnfExpression) -> TruthTable {
    let n = expr.n;
    let bits = BitVec::from_fn(1 << n, |i| {
        // variable mask of the point: bit k-1 holds x_k = bit (n-k) of i
        let vars = (0..n).fold(0u32, |acc, b| acc | (((i >> (n - 1 - b)) & 1) as u32) << b);
        expr.monomials.iter().filter(|&&m| m & !vars == 0).count() % 2 == 1
    });
    TruthTable::new(n, bits, Indexing::Binary).expect("length matches")
}

/// `sum_t tr_{n/1}(c_t x^(d_t)) + constant` on GF(2^n).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UnivariateFunction {
    pub terms: Vec<(FieldElement, u64)>,
    pub constant: bool,
}

impl UnivariateFunction {
    pub fn monomial(coeff: FieldElement, exponent: u64) -> Self {
        UnivariateFunction { terms: vec![(coeff, exponent)], constant: false }
    }

    pub fn term(mut self, coeff: FieldElement, exponent: u64) -> Self {
        self.terms.push((coeff, exponent));
        self
    }
}

/// Field-indexed truth table of a univariate trace form. `x^0 = 1` everywhere,
/// and `x^d = 0` at `x = 0` for `d > 0`.
pub fn univariate_truth_table(field: &FieldSpec, f: &UnivariateFunction) -> Result<TruthTable, BoolFunError> {
    let terms = f
        .terms
        .iter()
        .map(|&(c, d)| field.mul(c, field.one()).map(|c| (c.value(), d)))
        .collect::<Result<Vec<_>, _>>()?;
    let q = field.order();
    let bits = BitVec::from_fn(q, |pos| {
        let x = field.element_at_raw(pos);
        let sum = terms.iter().fold(0u32, |acc, &(c, d)| {
            acc ^ field.trace_bit(field.mul_raw(c, field.pow_raw(x, d)))
        });
        (sum == 1) ^ f.constant
    });
    TruthTable::new(field.degree(), bits, Indexing::Field(field.clone()))
}

/// All bent functions of 4 variables, binary-indexed, in increasing table order.
pub fn enumerate_bent_functions(n: u32) -> Result<Vec<TruthTable>, BoolFunError> {
    enumerate_bent_functions_with(n, Exec::default())
}

pub fn enumerate_bent_functions_with(n: u32, exec: Exec) -> Result<Vec<TruthTable>, BoolFunError> {
    if n != 4 {
        return Err(BoolFunError::UnsupportedDimension(n));
    }
    let found = exec.map(0..1 << 16, |t| {
        let table = TruthTable::new(4, BitVec::from_words(16, vec![t as u64]), Indexing::Binary)
            .expect("16 bits");
        is_bent(&table).expect("n is even").then_some(table)
    });
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn anf(n: u32, s: &str) -> TruthTable {
        truth_table_from_anf(&AnfExpression::parse(n, s).unwrap())
    }

    /// Direct character sum over the tuple domain.
    fn brute_walsh_binary(f: &TruthTable) -> Vec<i32> {
        let q = 1usize << f.n();
        (0..q)
            .map(|a| {
                (0..q)
                    .map(|x| {
                        let e = f.get(x) as u32 + (a & x).count_ones();
                        if e.is_multiple_of(2) { 1 } else { -1 }
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn walsh_of_zero_function_gf4() {
        let field = FieldSpec::default_for_degree(2).unwrap();
        let f = TruthTable::zero(2, Indexing::Field(field));
        assert_eq!(walsh_transform(&f).values, vec![4, 0, 0, 0]);
    }

    #[test]
    fn walsh_of_x1x2_is_flat() {
        let f = anf(2, "x1*x2");
        let brute = brute_walsh_binary(&f);
        assert!(brute.iter().all(|v| v.abs() == 2));
        assert_eq!(walsh_transform(&f).values, brute);
    }

    #[test]
    fn field_walsh_matches_trace_character_sum() {
        let field = FieldSpec::default_for_degree(6).unwrap();
        let w = field.generator();
        let f = univariate_truth_table(&field, &UnivariateFunction::monomial(w, 3)).unwrap();
        let spec = walsh_transform(&f);
        for (pos, u) in field.enumerate().into_iter().enumerate() {
            let direct: i32 = field
                .enumerate()
                .into_iter()
                .enumerate()
                .map(|(xp, x)| {
                    let t = field.trace(field.mul(u, x).unwrap(), 1).unwrap().value();
                    if (f.get(xp) as u32 + t).is_multiple_of(2) { 1 } else { -1 }
                })
                .sum();
            assert_eq!(spec.values[pos], direct);
        }
    }

    #[test]
    fn bentness_basic_cases() {
        assert!(is_bent(&anf(4, "x1*x2+x3*x4")).unwrap());
        assert!(!is_bent(&TruthTable::zero(4, Indexing::Binary)).unwrap());
        assert_eq!(is_bent(&anf(3, "x1*x2")), Err(BoolFunError::OddDimension(3)));
    }

    #[test]
    fn anf_indexing_puts_x1_in_msb() {
        let t = anf(6, "x1");
        for i in 0..64 {
            assert_eq!(t.get(i), i >= 32);
        }
        let one = anf(3, "1");
        assert_eq!(one.weight(), 8);
        assert_eq!(AnfExpression::parse(3, "x4"), Err(BoolFunError::VariableOutOfRange { index: 4, n: 3 }));
        assert!(AnfExpression::parse(3, "y1").is_err());
    }

    #[test]
    fn anf_display_round_trips() {
        let e = AnfExpression::parse(6, "x1*x6+x2*x5+x3*x4+1").unwrap();
        assert_eq!(AnfExpression::parse(6, &e.to_string()).unwrap(), e);
        assert_eq!(AnfExpression::parse(6, "x1+x1").unwrap().to_string(), "0");
    }

    #[test]
    fn m3_f1_is_bent_weight_28() {
        let t = anf(6, "x1*x6+x2*x5+x3*x4");
        assert_eq!(t.weight(), 28);
        assert!(is_bent(&t).unwrap());
    }

    #[test]
    fn univariate_trace_on_gf4() {
        let field = FieldSpec::default_for_degree(2).unwrap();
        let t = univariate_truth_table(&field, &UnivariateFunction::monomial(field.one(), 1)).unwrap();
        assert_eq!(t.bits().to_bit_string(), "0011");
        let zero = univariate_truth_table(&field, &UnivariateFunction::default()).unwrap();
        assert_eq!(zero.weight(), 0);
        // x^0 is 1 even at x = 0
        let c = univariate_truth_table(&field, &UnivariateFunction::monomial(field.generator(), 0)).unwrap();
        assert_eq!(c.weight(), 4);
    }

    #[test]
    fn univariate_rejects_foreign_coefficients() {
        let a = FieldSpec::default_for_degree(4).unwrap();
        let b = FieldSpec::default_for_degree(2).unwrap();
        let f = UnivariateFunction::monomial(b.one(), 1);
        assert!(matches!(univariate_truth_table(&a, &f), Err(BoolFunError::Field(GfError::FieldMismatch))));
    }

    #[test]
    fn bent_census_n4() {
        let bents = enumerate_bent_functions(4).unwrap();
        assert_eq!(bents.len(), 896);
        let six: Vec<_> = bents.iter().filter(|t| t.weight() == 6).collect();
        assert_eq!(six.len(), 448);
        let set: std::collections::HashSet<_> = bents.iter().map(|t| t.to_hex()).collect();
        for t in six {
            let c = t.complement();
            assert_eq!(c.weight(), 10);
            assert!(set.contains(&c.to_hex()));
        }
        assert_eq!(enumerate_bent_functions(6), Err(BoolFunError::UnsupportedDimension(6)));
    }

    #[test]
    fn bent_support_sizes_exhaustive_n4() {
        for t in enumerate_bent_functions(4).unwrap() {
            assert!(t.weight() == 6 || t.weight() == 10);
        }
    }

    #[test]
    fn affine_shift_preserves_bentness_exhaustive_n4() {
        let bents = enumerate_bent_functions(4).unwrap();
        for f in bents.iter().step_by(7) {
            for a in 0..16usize {
                for h in [false, true] {
                    let lin = TruthTable::new(
                        4,
                        BitVec::from_fn(16, |x| ((a & x).count_ones() % 2 == 1) ^ h),
                        Indexing::Binary,
                    )
                    .unwrap();
                    assert!(is_bent(&f.xor(&lin).unwrap()).unwrap());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn fwht_involution(n in 1u32..=10, seed: u64) {
            let q = 1usize << n;
            let input: Vec<i32> = (0..q).map(|i| ((seed.rotate_left(i as u32 % 64) ^ i as u64) % 7) as i32 - 3).collect();
            let mut data = input.clone();
            fwht(&mut data);
            fwht(&mut data);
            prop_assert!(data.iter().zip(&input).all(|(a, b)| *a == b * q as i32));
        }

        #[test]
        fn parseval(n in 1u32..=10, bits in proptest::collection::vec(any::<u64>(), 16)) {
            let t = TruthTable::new(n, BitVec::from_words(1 << n, bits), Indexing::Binary).unwrap();
            let spec = walsh_transform(&t);
            prop_assert_eq!(spec.sum_of_squares(), 1i64 << (2 * n));
            // every value has the parity of 2^n
            prop_assert!(spec.values.iter().all(|v| (v - (1 << n)) % 2 == 0));
        }

        #[test]
        fn anf_is_additive(a in proptest::collection::vec(1u32..64, 0..6), b in proptest::collection::vec(1u32..64, 0..6)) {
            let to_monos = |v: &Vec<u32>| v.iter().map(|m| (0..6).filter(|k| (m >> k) & 1 == 1).map(|k| k + 1).collect::<Vec<usize>>()).collect::<Vec<_>>();
            let ea = AnfExpression::new(6, to_monos(&a)).unwrap();
            let eb = AnfExpression::new(6, to_monos(&b)).unwrap();
            let sum = truth_table_from_anf(&ea.add(&eb).unwrap());
            prop_assert_eq!(sum, truth_table_from_anf(&ea).xor(&truth_table_from_anf(&eb)).unwrap());
        }

        #[test]
        fn affine_shift_preserves_bentness_n6(a in 0usize..64, h: bool) {
            let f = anf(6, "x1*x6+x2*x5+x3*x4");
            let lin = TruthTable::new(6, BitVec::from_fn(64, |x| ((a & x).count_ones() % 2 == 1) ^ h), Indexing::Binary).unwrap();
            prop_assert!(is_bent(&f.xor(&lin).unwrap()).unwrap());
        }
    }
}
