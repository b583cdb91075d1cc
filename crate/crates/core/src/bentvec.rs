//! Vectorial Boolean functions `F = (f_1, ..., f_l)` on GF(2^(2m)) and the
//! known bent families used to seed code constructions.

use num_integer::Integer;
use thiserror::Error;

use crate::bits::BitVec;
use crate::boolfun::{is_bent, univariate_truth_table, BoolFunError, Indexing, TruthTable, UnivariateFunction};
use crate::exec::Exec;
use crate::gf2e::{BasisSpec, FieldElement, FieldSpec, GfError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BentVecError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("component index {index} out of range 1..={ell}")]
    IndexOutOfRange { index: usize, ell: usize },
    #[error("component index {0} selected twice")]
    DuplicateIndex(usize),
    #[error("components must share one even dimension and one domain ordering")]
    InconsistentComponents,
    #[error(transparent)]
    BoolFun(#[from] BoolFunError),
    #[error(transparent)]
    Field(#[from] GfError),
}

fn violated(msg: impl Into<String>) -> BentVecError {
    BentVecError::PreconditionViolated(msg.into())
}

/// An ordered list of component truth tables over a common domain of size 2^(2m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorialFunction {
    m: u32,
    indexing: Indexing,
    components: Vec<TruthTable>,
}

impl VectorialFunction {
    pub fn new(components: Vec<TruthTable>) -> Result<Self, BentVecError> {
        let first = components.first().ok_or(BentVecError::InconsistentComponents)?;
        let (n, indexing) = (first.n(), first.indexing().clone());
        if n % 2 != 0 || components.iter().any(|c| c.n() != n || *c.indexing() != indexing) {
            return Err(BentVecError::InconsistentComponents);
        }
        let m = n / 2;
        if components.len() > m as usize {
            log::warn!(
                "{} components exceed the bound l <= m = {m}; the function cannot be bent",
                components.len()
            );
        }
        Ok(VectorialFunction { m, indexing, components })
    }

    /// The function with no components.
    pub fn empty(m: u32, indexing: Indexing) -> Self {
        VectorialFunction { m, indexing, components: Vec::new() }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.components.len()
    }

    pub fn indexing(&self) -> &Indexing {
        &self.indexing
    }

    pub fn components(&self) -> &[TruthTable] {
        &self.components
    }

    /// `sum_j c_j f_j` where bit `j` of `coeffs` is `c_{j+1}`.
    pub fn combination(&self, coeffs: u64) -> TruthTable {
        let mut acc = TruthTable::zero(2 * self.m, self.indexing.clone());
        for (j, c) in self.components.iter().enumerate() {
            if (coeffs >> j) & 1 == 1 {
                acc = acc.xor(c).expect("components share indexing");
            }
        }
        acc
    }
}

/// True iff every nonzero GF(2)-combination of the components is bent.
pub fn is_bent_vectorial(f: &VectorialFunction) -> bool {
    is_bent_vectorial_with(f, Exec::default())
}

pub fn is_bent_vectorial_with(f: &VectorialFunction, exec: Exec) -> bool {
    let ell = f.ell();
    if ell >= 64 {
        return false;
    }
    let count = (1usize << ell) - 1;
    exec.fold(
        0..count,
        || true,
        |ok, c| ok && is_bent(&f.combination(c as u64 + 1)).expect("even dimension"),
        |a, b| a && b,
    )
}

/// The components at the given 1-based positions, in the order given.
pub fn restrict_to_subgroup(f: &VectorialFunction, indices: &[usize]) -> Result<VectorialFunction, BentVecError> {
    let mut seen = vec![false; f.ell()];
    let mut comps = Vec::with_capacity(indices.len());
    for &i in indices {
        if i == 0 || i > f.ell() {
            return Err(BentVecError::IndexOutOfRange { index: i, ell: f.ell() });
        }
        if std::mem::replace(&mut seen[i - 1], true) {
            return Err(BentVecError::DuplicateIndex(i));
        }
        comps.push(f.components[i - 1].clone());
    }
    if comps.is_empty() {
        return Ok(VectorialFunction::empty(f.m, f.indexing.clone()));
    }
    VectorialFunction::new(comps)
}

fn pow_mod(base: u64, mut e: u64, modulus: u64) -> u64 {
    let mut result = 1 % modulus;
    let mut b = base % modulus;
    while e > 0 {
        if e & 1 == 1 {
            result = (result as u128 * b as u128 % modulus as u128) as u64;
        }
        b = (b as u128 * b as u128 % modulus as u128) as u64;
        e >>= 1;
    }
    result
}

fn check_field(field: &FieldSpec, m: u32) -> Result<(), BentVecError> {
    if m == 0 || field.degree() != 2 * m {
        return Err(violated(format!("field GF(2^{}) is not GF(2^(2*{m}))", field.degree())));
    }
    Ok(())
}

fn default_basis(field: &FieldSpec, m: u32, basis: Option<&BasisSpec>) -> Result<BasisSpec, BentVecError> {
    match basis {
        Some(b) if b.sub_degree() != m => Err(violated(format!("basis spans GF(2^{}), need GF(2^{m})", b.sub_degree()))),
        Some(b) => Ok(b.clone()),
        None => Ok(BasisSpec::power_basis(field, m)?),
    }
}

/// `(tr_{2m/1}(b_1 u x^(2^i+1)), ..., tr_{2m/1}(b_m u x^(2^i+1)))` for odd `m`,
/// `gcd(2m, i) = 1`, `u` outside GF(2^m) and `b` a basis of GF(2^m).
pub fn construct_example4(
    field: &FieldSpec,
    m: u32,
    i: u64,
    u: FieldElement,
    basis: &BasisSpec,
) -> Result<VectorialFunction, BentVecError> {
    check_field(field, m)?;
    if m.is_multiple_of(2) {
        return Err(violated(format!("m = {m} must be odd")));
    }
    if (2 * m as u64).gcd(&i) != 1 {
        return Err(violated(format!("gcd(2m, i) = gcd({}, {i}) must be 1", 2 * m)));
    }
    if field.in_subfield(u, m)? {
        return Err(violated(format!("u = {u:?} lies in GF(2^{m})")));
    }
    if basis.sub_degree() != m {
        return Err(violated(format!("basis spans GF(2^{}), need GF(2^{m})", basis.sub_degree())));
    }
    let q1 = field.order() as u64 - 1;
    let exponent = pow_mod(2, i, q1) + 1;
    let comps = basis
        .elements()
        .iter()
        .map(|&b| {
            let c = field.mul(b, u)?;
            Ok(univariate_truth_table(field, &UnivariateFunction::monomial(c, exponent))?)
        })
        .collect::<Result<Vec<_>, BentVecError>>()?;
    VectorialFunction::new(comps)
}

/// Expands a GF(2^m)-valued function, given by its value at each coordinate,
/// into `m` binary components `tr_{m/1}(g_j F(x))`.
fn expand_components(field: &FieldSpec, m: u32, basis: &BasisSpec, values: &[u32]) -> Result<VectorialFunction, BentVecError> {
    let n = field.degree();
    let comps = basis
        .elements()
        .iter()
        .map(|g| {
            let g = g.value();
            let bits = BitVec::from_fn(values.len(), |pos| {
                field.relative_trace_raw(field.mul_raw(g, values[pos]), m, 1) == 1
            });
            Ok(TruthTable::new(n, bits, Indexing::Field(field.clone()))?)
        })
        .collect::<Result<Vec<_>, BentVecError>>()?;
    VectorialFunction::new(comps)
}

/// Values of `tr_{2m/m}(a x^d)` in coordinate order.
fn relative_trace_monomial(field: &FieldSpec, m: u32, a: u32, d: u64) -> Vec<u32> {
    (0..field.order())
        .map(|pos| {
            let x = field.element_at_raw(pos);
            field.trace_raw(field.mul_raw(a, field.pow_raw(x, d)), m)
        })
        .collect()
}

fn require_outside_subgroup(field: &FieldSpec, a: FieldElement, g: u64) -> Result<(), BentVecError> {
    match field.log(a)? {
        None => Err(violated("a must be nonzero")),
        Some(e) if (e as u64).is_multiple_of(g) => Err(violated(format!("a = w^{e} lies in the subgroup generated by w^{g}"))),
        Some(_) => Ok(()),
    }
}

/// `tr_{2m/m}(a x^(2^i+1))`, bent when `2m / gcd(i, 2m)` is even,
/// `g = gcd(2^i+1, 2^m+1) != 1` and `a` lies outside `<w^g>`.
pub fn construct_example5(
    field: &FieldSpec,
    m: u32,
    i: u64,
    a: FieldElement,
    basis: Option<&BasisSpec>,
) -> Result<VectorialFunction, BentVecError> {
    check_field(field, m)?;
    if m <= 1 {
        return Err(violated(format!("m = {m} must exceed 1")));
    }
    if i == 0 {
        return Err(violated("i must be positive"));
    }
    let two_m = 2 * m as u64;
    if !(two_m / two_m.gcd(&i)).is_multiple_of(2) {
        return Err(violated(format!("2m / gcd(i, 2m) = {} must be even", two_m / two_m.gcd(&i))));
    }
    let pm = (1u64 << m) + 1;
    let g = ((pow_mod(2, i, pm) + 1) % pm).gcd(&pm);
    if g == 1 {
        return Err(violated(format!("gcd(2^{i}+1, 2^{m}+1) = 1")));
    }
    require_outside_subgroup(field, a, g)?;
    let basis = default_basis(field, m, basis)?;
    let d = pow_mod(2, i, field.order() as u64 - 1) + 1;
    let values = relative_trace_monomial(field, m, a.value(), d);
    expand_components(field, m, &basis, &values)
}

/// `tr_{2m/m}(a x^d)` with `d = 2^(2i) - 2^i + 1`, bent for odd `m > 1`,
/// `gcd(i, 2m) = 1` and `a` outside `<w^3>`.
pub fn construct_example6(
    field: &FieldSpec,
    m: u32,
    i: u64,
    a: FieldElement,
    basis: Option<&BasisSpec>,
) -> Result<VectorialFunction, BentVecError> {
    check_field(field, m)?;
    if m <= 1 || m.is_multiple_of(2) {
        return Err(violated(format!("m = {m} must be odd and exceed 1")));
    }
    if (2 * m as u64).gcd(&i) != 1 {
        return Err(violated(format!("gcd(i, 2m) = gcd({i}, {}) must be 1", 2 * m)));
    }
    require_outside_subgroup(field, a, 3)?;
    let basis = default_basis(field, m, basis)?;
    let q1 = field.order() as u64 - 1;
    let d = (pow_mod(4, i, q1) + q1 - pow_mod(2, i, q1) + 1) % q1;
    let values = relative_trace_monomial(field, m, a.value(), d);
    expand_components(field, m, &basis, &values)
}
