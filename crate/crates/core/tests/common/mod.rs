#![allow(dead_code)]

use bentcodes::bentvec::{construct_example4, restrict_to_subgroup, VectorialFunction};
use bentcodes::boolfun::{truth_table_from_anf, AnfExpression, TruthTable};
use bentcodes::gf2e::{BasisSpec, FieldSpec, Gf2Polynomial};
use bentcodes::lincode::{build_code, cyclic_code, extend, rm1_generator, rm1_generator_binary, LinearCode};

pub const M3_F1: &str = "x1*x6+x2*x5+x3*x4";
pub const M3_F2: &str = "x1*x5+x2*x4+x3*x5+x3*x6";
pub const M3_F3: &str = "x1*x4+x2*x5+x2*x6+x3*x4+x3*x5+x5*x6";
pub const M3_F4: &str = "x1*x4+x2*x3+x3*x6+x5*x6";

pub const BCH63_H: &str = "(x+1)(x^3+x^2+1)(x^6+x^5+x^4+x+1)";
pub const BCH63_H_SUB: &str = "(x+1)(x^6+x^5+x^4+x+1)";

pub const M5_MODULUS: &str = "x^10+x^6+x^5+x^3+x^2+x+1";

pub fn anf(n: u32, s: &str) -> TruthTable {
    truth_table_from_anf(&AnfExpression::parse(n, s).unwrap())
}

pub fn rm1(m: u32) -> LinearCode {
    LinearCode::from_generators(&rm1_generator_binary(2 * m).matrix)
}

pub fn binary_code(n: u32, fs: &[&str]) -> LinearCode {
    let f = VectorialFunction::new(fs.iter().map(|s| anf(n, s)).collect()).unwrap();
    build_code(&rm1_generator_binary(n), &f).unwrap()
}

/// A `(4, 2)` bent vectorial pair.
pub const M2_PAIR: [&str; 2] = ["x1*x3+x2*x4", "x1*x4+x2*x3+x2*x4"];

/// Bent codes for `m = 2, 3` and `l = 1..=m`, built from the pair above and
/// from the first m = 3 triple below.
pub fn bent_code(m: u32, ell: usize) -> LinearCode {
    match m {
        2 => binary_code(4, &M2_PAIR[..ell]),
        3 => binary_code(6, &[M3_F1, M3_F2, M3_F3][..ell]),
        _ => panic!("unsupported m"),
    }
}

pub fn m3_codes() -> [LinearCode; 2] {
    [binary_code(6, &[M3_F1, M3_F2, M3_F3]), binary_code(6, &[M3_F1, M3_F2, M3_F4])]
}

pub fn bch63_codes() -> (LinearCode, LinearCode) {
    let h = Gf2Polynomial::parse_product(BCH63_H).unwrap();
    let h_sub = Gf2Polynomial::parse_product(BCH63_H_SUB).unwrap();
    (cyclic_code(63, &h).unwrap(), cyclic_code(63, &h_sub).unwrap())
}

pub fn bch63_extended() -> (LinearCode, LinearCode) {
    let (c10, c7) = bch63_codes();
    (extend(&c10), extend(&c7))
}

pub fn m5_field() -> FieldSpec {
    FieldSpec::new(10, &M5_MODULUS.parse().unwrap(), 2).unwrap()
}

/// The `(10, 3)` bent vectorial function over GF(2^10) for exponent index `i`.
pub fn m5_function(field: &FieldSpec, i: u64) -> VectorialFunction {
    let basis = BasisSpec::power_basis(field, 5).unwrap();
    let f = construct_example4(field, 5, i, field.generator(), &basis).unwrap();
    restrict_to_subgroup(&f, &[1, 2, 3]).unwrap()
}

pub fn m5_code(i: u64) -> LinearCode {
    let field = m5_field();
    let f = m5_function(&field, i);
    build_code(&rm1_generator(5, &field).unwrap(), &f).unwrap()
}
