use crate::bits::BitVec;

use super::CodeError;

/// Row-major matrix over GF(2) with bit-packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    ncols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn new(ncols: usize, rows: Vec<BitVec>) -> Result<Self, CodeError> {
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(CodeError::DimensionMismatch { expected: ncols, found: r.len() });
        }
        Ok(BitMatrix { ncols, rows })
    }

    pub fn empty(ncols: usize) -> Self {
        BitMatrix { ncols, rows: Vec::new() }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<(), CodeError> {
        if row.len() != self.ncols {
            return Err(CodeError::DimensionMismatch { expected: self.ncols, found: row.len() });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.ncols);
        for r in &self.rows {
            e.insert(r.clone());
        }
        e.rank()
    }

    /// One `0`/`1` line per row.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            s.push_str(&r.to_bit_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, CodeError> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(BitVec::from_bit_string)
            .collect::<Result<Vec<_>, _>>()?;
        let ncols = rows.first().map_or(0, BitVec::len);
        Self::new(ncols, rows)
    }

    pub fn to_hex_rows(&self) -> Vec<String> {
        self.rows.iter().map(BitVec::to_hex).collect()
    }

    pub fn from_hex_rows<S: AsRef<str>>(ncols: usize, rows: &[S]) -> Result<Self, CodeError> {
        let rows = rows
            .iter()
            .map(|r| BitVec::from_hex(ncols, r.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ncols, rows)
    }
}

/// Reduced row echelon form built incrementally.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    ncols: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `v` minus its projection on the current row space.
    pub(crate) fn reduce(&self, mut v: BitVec) -> BitVec {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(r);
            }
        }
        v
    }

    /// Adds `v` to the row space; returns false if it was already there.
    pub(crate) fn insert(&mut self, v: BitVec) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let v = self.reduce(v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for r in &mut self.rows {
            if r.get(p) {
                r.xor_assign(&v);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Fully reduced rows sorted by pivot column; equal row spaces give equal output.
    pub(crate) fn canonical_rows(&self) -> Vec<BitVec> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }

    /// Basis of the orthogonal complement of the row space.
    pub(crate) fn null_space(&self) -> Vec<BitVec> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|c| {
                let mut v = BitVec::zeros(self.ncols);
                v.set(c, true);
                for (r, &p) in self.rows.iter().zip(&self.pivots) {
                    if r.get(c) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}
