use crate::bits::BitVec;
use crate::gf2e::Gf2Polynomial;

use super::{BitMatrix, CodeError, LinearCode};

/// Cyclic code of length `n` with check polynomial `h`: generator polynomial
/// `g = (x^n + 1) / h`, generator rows `x^j g(x)` for `j < deg h`.
pub fn cyclic_code(n: usize, h: &Gf2Polynomial) -> Result<LinearCode, CodeError> {
    let not_divisor = || CodeError::NotADivisor { n, h: h.to_string() };
    let (g, r) = Gf2Polynomial::x_n_plus_one(n).div_rem(h).map_err(|_| not_divisor())?;
    if !r.is_zero() {
        return Err(not_divisor());
    }
    let k = h.degree().expect("nonzero divisor");
    let g_exps = g.exponents();
    let rows = (0..k)
        .map(|j| BitVec::from_indices(n, g_exps.iter().map(|e| e + j)))
        .collect();
    Ok(LinearCode::from_generators(&BitMatrix::new(n, rows)?))
}

/// Appends an overall parity bit as the last coordinate.
pub fn extend(code: &LinearCode) -> LinearCode {
    let n = code.length();
    let rows = code
        .generators()
        .rows()
        .iter()
        .map(|r| {
            let mut v = r.clone();
            v.push(r.count_ones() % 2 == 1);
            v
        })
        .collect();
    LinearCode::from_generators(&BitMatrix::new(n + 1, rows).expect("uniform width"))
}
