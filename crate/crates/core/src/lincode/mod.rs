//! Binary linear codes: the first-order Reed-Muller base, the construction
//! `C(f_1, ..., f_l)`, cyclic and extended codes, exact weight enumeration and
//! the MacWilliams transform.

pub mod census;
mod cyclic;
mod macwilliams;
mod matrix;
mod weights;

use thiserror::Error;

use crate::bentvec::VectorialFunction;
use crate::bits::{BitParseError, BitVec};
use crate::boolfun::Indexing;
use crate::gf2e::FieldSpec;

pub use cyclic::{cyclic_code, extend};
pub use macwilliams::{krawtchouk, macwilliams_dual};
pub use matrix::BitMatrix;
pub use weights::{
    bent_enumerator, check_bent_enumerator, min_weight_codewords, weight_distribution, Budget, Enumerator,
    WeightDistribution,
};

use matrix::Echelon;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("expected {expected} columns, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("truth tables and base matrix use different coordinate orders")]
    IndexingMismatch,
    #[error("enumeration budget exceeded: dimension {dimension} > limit {limit} (raise BENTCODES_BUDGET to override)")]
    DimensionTooLarge { dimension: usize, limit: u32 },
    #[error("MacWilliams transform gives a non-integral or negative count at weight {weight}")]
    NonIntegerResult { weight: usize },
    #[error("{h} does not divide x^{n}+1")]
    NotADivisor { n: usize, h: String },
    #[error("vector {0} is not a codeword")]
    NotACodeword(usize),
    #[error("code has no codeword of weight {0}")]
    EmptyWeightClass(usize),
    #[error("invalid weight distribution: {0}")]
    InvalidDistribution(String),
    #[error(transparent)]
    Bits(#[from] BitParseError),
}

/// A base generator matrix together with the coordinate order of its columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseMatrix {
    pub matrix: BitMatrix,
    pub indexing: Indexing,
}

/// Generator of RM(1, 2m): the all-one row, then `tr(w^j u_i)` for
/// `j = 0..2m-1`, columns in field enumeration order.
pub fn rm1_generator(m: u32, field: &FieldSpec) -> Result<BaseMatrix, CodeError> {
    let n = 2 * m;
    if field.degree() != n {
        return Err(CodeError::DimensionMismatch { expected: n as usize, found: field.degree() as usize });
    }
    let q = field.order();
    let mut rows = vec![BitVec::ones(q)];
    for j in 0..n as u64 {
        let wj = field.exp_raw(j);
        rows.push(BitVec::from_fn(q, |pos| {
            field.trace_bit(field.mul_raw(wj, field.element_at_raw(pos))) == 1
        }));
    }
    Ok(BaseMatrix { matrix: BitMatrix::new(q, rows)?, indexing: Indexing::Field(field.clone()) })
}

/// Generator of RM(1, n) on binary tuples: rows `x_1, ..., x_n` (with `x_1` the
/// most significant bit of the column index) followed by the all-one row.
pub fn rm1_generator_binary(n: u32) -> BaseMatrix {
    let q = 1usize << n;
    let mut rows: Vec<BitVec> = (1..=n).map(|k| BitVec::from_fn(q, |i| (i >> (n - k)) & 1 == 1)).collect();
    rows.push(BitVec::ones(q));
    BaseMatrix { matrix: BitMatrix::new(q, rows).expect("rows have q bits"), indexing: Indexing::Binary }
}

/// A binary linear code stored by an independent set of generators.
#[derive(Clone, Debug)]
pub struct LinearCode {
    generators: BitMatrix,
    echelon: Echelon,
}

impl PartialEq for LinearCode {
    /// Equality of codeword sets.
    fn eq(&self, other: &Self) -> bool {
        self.length() == other.length() && self.canonical_rows() == other.canonical_rows()
    }
}
impl Eq for LinearCode {}

impl LinearCode {
    /// Code spanned by the rows of `g`; dependent rows are dropped.
    pub fn from_generators(g: &BitMatrix) -> Self {
        let mut echelon = Echelon::new(g.ncols());
        let mut basis = BitMatrix::empty(g.ncols());
        for r in g.rows() {
            if echelon.insert(r.clone()) {
                basis.push_row(r.clone()).expect("same width");
            }
        }
        LinearCode { generators: basis, echelon }
    }

    pub fn length(&self) -> usize {
        self.generators.ncols()
    }

    pub fn dimension(&self) -> usize {
        self.generators.nrows()
    }

    /// Independent generator rows, in the order they were supplied.
    pub fn generators(&self) -> &BitMatrix {
        &self.generators
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        v.len() == self.length() && self.echelon.reduce(v.clone()).is_zero()
    }

    /// Reduced row echelon basis; two codes are equal iff these agree.
    pub fn canonical_rows(&self) -> Vec<BitVec> {
        self.echelon.canonical_rows()
    }

    /// Codeword `sum_i msg_i g_i`.
    pub fn encode(&self, msg: u64) -> BitVec {
        let mut v = BitVec::zeros(self.length());
        for (i, r) in self.generators.rows().iter().enumerate() {
            if (msg >> i) & 1 == 1 {
                v.xor_assign(r);
            }
        }
        v
    }

    pub fn dual(&self) -> LinearCode {
        let rows = self.echelon.null_space();
        LinearCode::from_generators(&BitMatrix::new(self.length(), rows).expect("same width"))
    }
}

/// `C(f_1, ..., f_l)`: the span of the base rows and the component truth tables.
pub fn build_code(base: &BaseMatrix, f: &VectorialFunction) -> Result<LinearCode, CodeError> {
    let q = 1usize << (2 * f.m());
    if base.matrix.ncols() != q {
        return Err(CodeError::DimensionMismatch { expected: base.matrix.ncols(), found: q });
    }
    if base.indexing != *f.indexing() {
        return Err(CodeError::IndexingMismatch);
    }
    let mut g = base.matrix.clone();
    for c in f.components() {
        g.push_row(c.bits().clone())?;
    }
    Ok(LinearCode::from_generators(&g))
}

/// True iff the rank of `vectors` equals the code dimension; every vector
/// must be a codeword.
pub fn span_equals(code: &LinearCode, vectors: &[BitVec]) -> Result<bool, CodeError> {
    let mut e = Echelon::new(code.length());
    for (i, v) in vectors.iter().enumerate() {
        if !code.contains(v) {
            return Err(CodeError::NotACodeword(i));
        }
        e.insert(v.clone());
        if e.rank() == code.dimension() {
            return Ok(true);
        }
    }
    Ok(e.rank() == code.dimension())
}
