//! Arithmetic in GF(2^n) for 1 <= n <= 16, using log/antilog tables.
//!
//! Elements are stored in the polynomial basis of the field modulus and carry
//! the identity of the field that made them; mixing fields is an error rather
//! than a silent reinterpretation. Subfields are never separate
//! [`FieldSpec`]s: GF(2^d) inside GF(2^n) is the fixed field of `x -> x^(2^d)`.

mod poly;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use poly::Gf2Polynomial;

pub const MAX_DEGREE: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("field degree {0} outside supported range 1..=16")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus} has degree {found:?}, expected {expected}")]
    ModulusDegree { modulus: String, expected: u32, found: Option<usize> },
    #[error("modulus {0} is reducible over GF(2)")]
    ReducibleModulus(String),
    #[error("element {element:#x} has order {order}, not {expected}")]
    NotAGenerator { element: u32, order: u64, expected: u64 },
    #[error("value {value:#x} is not an element of GF(2^{degree})")]
    OutOfRange { value: u64, degree: u32 },
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("GF(2^{sub}) is not a subfield of GF(2^{degree})")]
    InvalidSubfield { sub: u32, degree: u32 },
    #[error("element {element:#x} does not lie in GF(2^{sub})")]
    NotInSubfield { element: u32, sub: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("basis of GF(2^{sub}) needs {sub} linearly independent subfield elements")]
    InvalidBasis { sub: u32 },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Primitive polynomials (bit i = coefficient of x^i) used when no modulus is given.
const DEFAULT_MODULI: [u32; 17] = [
    0, 0b11, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B,
    0x4443, 0x8003, 0x1100B,
];

/// Identity of a field: degree, modulus and chosen generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId(u64);

impl FieldId {
    fn new(degree: u32, modulus: u32, generator: u32) -> Self {
        FieldId(degree as u64 | (modulus as u64) << 5 | (generator as u64) << 23)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: FieldId,
}

impl FieldElement {
    /// Coefficient vector in the polynomial basis, bit i = coefficient of x^i.
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field_id(self) -> FieldId {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.value)
    }
}

struct FieldTables {
    degree: u32,
    modulus: u32,
    generator: u32,
    /// `exp[j] = w^j` for `0 <= j < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[w^j] = j`; `log[0]` unused.
    log: Vec<u32>,
    /// Bit k set iff tr_{n/1}(x^k) = 1.
    trace_mask: u32,
    id: FieldId,
}

/// A validated finite field GF(2^n) with a fixed generator of its multiplicative group.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    t: Arc<FieldTables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF(2^{}) mod {} gen {:#x}",
            self.t.degree,
            self.modulus(),
            self.t.generator
        )
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.t.id == other.t.id
    }
}
impl Eq for FieldSpec {}

/// Carry-less product reduced modulo `modulus` of degree `degree`.
fn clmul_mod(mut a: u32, mut b: u32, modulus: u32, degree: u32) -> u32 {
    let mut acc = 0u32;
    let top = 1u32 << degree;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

impl FieldSpec {
    /// Builds GF(2^degree) with the given modulus and generator, verifying that
    /// the modulus is irreducible and the candidate has order exactly 2^degree - 1.
    pub fn new(degree: u32, modulus: &Gf2Polynomial, generator: u32) -> Result<Self, GfError> {
        let modulus_bits = Self::check_modulus(degree, modulus)?;
        Self::build(degree, modulus_bits, generator)
    }

    /// Like [`FieldSpec::new`], choosing the least generator by integer value.
    pub fn with_modulus(degree: u32, modulus: &Gf2Polynomial) -> Result<Self, GfError> {
        let modulus_bits = Self::check_modulus(degree, modulus)?;
        let q = 1u32 << degree;
        let mut last = None;
        for cand in 1..q {
            match Self::build(degree, modulus_bits, cand) {
                Ok(f) => return Ok(f),
                Err(e) => last = Some(e),
            }
        }
        Err(last.expect("field has at least one nonzero element"))
    }

    /// GF(2^degree) with a built-in primitive modulus and generator `x`.
    pub fn default_for_degree(degree: u32) -> Result<Self, GfError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(GfError::UnsupportedDegree(degree));
        }
        let m = Gf2Polynomial::from_u64(DEFAULT_MODULI[degree as usize] as u64);
        Self::with_modulus(degree, &m)
    }

    fn check_modulus(degree: u32, modulus: &Gf2Polynomial) -> Result<u32, GfError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(GfError::UnsupportedDegree(degree));
        }
        if modulus.degree() != Some(degree as usize) {
            return Err(GfError::ModulusDegree {
                modulus: modulus.to_string(),
                expected: degree,
                found: modulus.degree(),
            });
        }
        if !modulus.is_irreducible() {
            return Err(GfError::ReducibleModulus(modulus.to_string()));
        }
        Ok(modulus.to_u64().expect("degree <= 16") as u32)
    }

    fn build(degree: u32, modulus: u32, generator: u32) -> Result<Self, GfError> {
        let q = 1usize << degree;
        let order = (q - 1) as u64;
        if generator as usize >= q {
            return Err(GfError::OutOfRange { value: generator as u64, degree });
        }
        if generator == 0 {
            return Err(GfError::NotAGenerator { element: 0, order: 0, expected: order });
        }
        let mut exp = vec![0u32; 2 * (q - 1)];
        let mut log = vec![0u32; q];
        let mut x = 1u32;
        for (j, slot) in exp.iter_mut().take(q - 1).enumerate() {
            if j > 0 && x == 1 {
                return Err(GfError::NotAGenerator { element: generator, order: j as u64, expected: order });
            }
            *slot = x;
            log[x as usize] = j as u32;
            x = clmul_mod(x, generator, modulus, degree);
        }
        debug_assert_eq!(x, 1);
        for j in q - 1..2 * (q - 1) {
            exp[j] = exp[j - (q - 1)];
        }
        let mut trace_mask = 0;
        for k in 0..degree {
            let mut x = 1u32 << k;
            let mut acc = 0;
            for _ in 0..degree {
                acc ^= x;
                x = clmul_mod(x, x, modulus, degree);
            }
            trace_mask |= acc << k;
        }
        let tables = FieldTables {
            degree,
            modulus,
            generator,
            exp,
            log,
            trace_mask,
            id: FieldId::new(degree, modulus, generator),
        };
        Ok(FieldSpec { t: Arc::new(tables) })
    }

    pub fn degree(&self) -> u32 {
        self.t.degree
    }

    /// Number of elements, 2^n.
    pub fn order(&self) -> usize {
        1 << self.t.degree
    }

    pub fn modulus(&self) -> Gf2Polynomial {
        Gf2Polynomial::from_u64(self.t.modulus as u64)
    }

    pub fn id(&self) -> FieldId {
        self.t.id
    }

    pub fn generator(&self) -> FieldElement {
        self.wrap(self.t.generator)
    }

    fn wrap(&self, value: u32) -> FieldElement {
        FieldElement { value, field: self.t.id }
    }

    pub fn element(&self, value: u32) -> Result<FieldElement, GfError> {
        if (value as usize) < self.order() {
            Ok(self.wrap(value))
        } else {
            Err(GfError::OutOfRange { value: value as u64, degree: self.t.degree })
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    fn check(&self, a: FieldElement) -> Result<u32, GfError> {
        if a.field == self.t.id {
            Ok(a.value)
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    // ---- raw arithmetic on coefficient vectors; callers guarantee range ----

    #[inline]
    pub fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.t;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    #[inline]
    pub fn pow_raw(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.order() - 1) as u64;
        let l = (self.t.log[a as usize] as u64 * (e % n)) % n;
        self.t.exp[l as usize]
    }

    /// `w^j` for any integer `j`.
    #[inline]
    pub fn exp_raw(&self, j: u64) -> u32 {
        self.t.exp[(j % (self.order() as u64 - 1)) as usize]
    }

    /// Discrete logarithm base the generator; `None` for zero.
    pub fn log_raw(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.t.log[a as usize])
    }

    /// Absolute trace tr_{n/1} as a bit.
    #[inline]
    pub fn trace_bit(&self, a: u32) -> u32 {
        (a & self.t.trace_mask).count_ones() & 1
    }

    /// tr_{n/d}(a) = a + a^(2^d) + ... + a^(2^(n-d)); `d` must divide `n`.
    pub fn trace_raw(&self, a: u32, d: u32) -> u32 {
        self.relative_trace_raw(a, self.t.degree, d)
    }

    /// tr_{from/to}(a) for `a` in GF(2^from).
    pub fn relative_trace_raw(&self, a: u32, from: u32, to: u32) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..from / to {
            acc ^= x;
            for _ in 0..to {
                x = self.mul_raw(x, x);
            }
        }
        acc
    }

    fn frobenius_raw(&self, a: u32, d: u32) -> u32 {
        let mut x = a;
        for _ in 0..d {
            x = self.mul_raw(x, x);
        }
        x
    }

    // ---- checked API ----

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.wrap(self.check(a)? ^ self.check(b)?))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.wrap(self.mul_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement, GfError> {
        Ok(self.wrap(self.pow_raw(self.check(a)?, e)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        let v = self.check(a)?;
        if v == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.wrap(self.pow_raw(v, self.order() as u64 - 2)))
    }

    /// Discrete logarithm of a nonzero element base the generator.
    pub fn log(&self, a: FieldElement) -> Result<Option<u32>, GfError> {
        Ok(self.log_raw(self.check(a)?))
    }

    fn check_subfield(&self, sub: u32) -> Result<(), GfError> {
        if sub == 0 || !self.t.degree.is_multiple_of(sub) {
            return Err(GfError::InvalidSubfield { sub, degree: self.t.degree });
        }
        Ok(())
    }

    /// tr_{n/d}(x), landing in the subfield GF(2^d).
    pub fn trace(&self, x: FieldElement, target_degree: u32) -> Result<FieldElement, GfError> {
        let v = self.check(x)?;
        self.check_subfield(target_degree)?;
        Ok(self.wrap(self.trace_raw(v, target_degree)))
    }

    /// tr_{from/to}(x) for `x` in the subfield GF(2^from).
    pub fn relative_trace(&self, x: FieldElement, from: u32, to: u32) -> Result<FieldElement, GfError> {
        let v = self.check(x)?;
        self.check_subfield(from)?;
        if to == 0 || !from.is_multiple_of(to) {
            return Err(GfError::InvalidSubfield { sub: to, degree: from });
        }
        if !self.in_subfield_raw(v, from) {
            return Err(GfError::NotInSubfield { element: v, sub: from });
        }
        Ok(self.wrap(self.relative_trace_raw(v, from, to)))
    }

    pub fn in_subfield_raw(&self, a: u32, sub: u32) -> bool {
        self.frobenius_raw(a, sub) == a
    }

    pub fn in_subfield(&self, x: FieldElement, sub: u32) -> Result<bool, GfError> {
        let v = self.check(x)?;
        self.check_subfield(sub)?;
        Ok(self.in_subfield_raw(v, sub))
    }

    /// Generator of the multiplicative group of GF(2^sub), namely w^((2^n-1)/(2^sub-1)).
    pub fn subfield_generator(&self, sub: u32) -> Result<FieldElement, GfError> {
        self.check_subfield(sub)?;
        let cofactor = (self.order() as u64 - 1) / ((1u64 << sub) - 1);
        Ok(self.wrap(self.exp_raw(cofactor)))
    }

    /// Elements in coordinate order: `0, w^0, w^1, ..., w^(q-2)`.
    pub fn enumerate(&self) -> Vec<FieldElement> {
        (0..self.order()).map(|p| self.wrap(self.element_at_raw(p))).collect()
    }

    /// Element value at coordinate position `pos` of the enumeration order.
    #[inline]
    pub fn element_at_raw(&self, pos: usize) -> u32 {
        if pos == 0 {
            0
        } else {
            self.t.exp[pos - 1]
        }
    }

    /// Coordinate position of the element with value `a`.
    #[inline]
    pub fn position_of_raw(&self, a: u32) -> usize {
        if a == 0 {
            0
        } else {
            self.t.log[a as usize] as usize + 1
        }
    }
}

/// A GF(2)-basis of the subfield GF(2^sub), with elements living in the big field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSpec {
    sub_degree: u32,
    elements: Vec<FieldElement>,
}

impl BasisSpec {
    pub fn new(field: &FieldSpec, sub_degree: u32, elements: Vec<FieldElement>) -> Result<Self, GfError> {
        field.check_subfield(sub_degree)?;
        if elements.len() != sub_degree as usize {
            return Err(GfError::InvalidBasis { sub: sub_degree });
        }
        let mut rows = Vec::with_capacity(elements.len());
        for &e in &elements {
            let v = field.check(e)?;
            if !field.in_subfield_raw(v, sub_degree) {
                return Err(GfError::NotInSubfield { element: v, sub: sub_degree });
            }
            rows.push(v);
        }
        if rank_u32(rows) != sub_degree as usize {
            return Err(GfError::InvalidBasis { sub: sub_degree });
        }
        Ok(BasisSpec { sub_degree, elements })
    }

    /// `beta, beta^2, ..., beta^sub` for the subfield generator `beta`.
    pub fn power_basis(field: &FieldSpec, sub_degree: u32) -> Result<Self, GfError> {
        let beta = field.subfield_generator(sub_degree)?;
        let elements = (1..=sub_degree as u64)
            .map(|j| field.pow(beta, j))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, sub_degree, elements)
    }

    pub fn sub_degree(&self) -> u32 {
        self.sub_degree
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }
}

/// GF(2)-rank of small bit vectors.
fn rank_u32(mut rows: Vec<u32>) -> usize {
    let mut rank = 0;
    for bit in (0..32).rev() {
        let mask = 1u32 << bit;
        if let Some(p) = (rank..rows.len()).find(|&i| rows[i] & mask != 0) {
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && *r & mask != 0 {
                    *r ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}
