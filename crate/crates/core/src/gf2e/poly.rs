use std::fmt;
use std::str::FromStr;

use super::GfError;

/// Polynomial over GF(2), coefficient of `x^i` at bit `i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Polynomial {
    words: Vec<u64>,
}

impl Gf2Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    pub fn from_u64(bits: u64) -> Self {
        let mut p = Gf2Polynomial { words: vec![bits] };
        p.normalize();
        p
    }

    /// `x^e1 + x^e2 + ...`; repeated exponents cancel.
    pub fn from_exponents(exps: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.flip(e);
        }
        p
    }

    /// `x^n + 1`.
    pub fn x_n_plus_one(n: usize) -> Self {
        Self::from_exponents([n, 0])
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    fn flip(&mut self, e: usize) {
        if self.words.len() <= e / 64 {
            self.words.resize(e / 64 + 1, 0);
        }
        self.words[e / 64] ^= 1 << (e % 64);
        self.normalize();
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    /// Exponents with nonzero coefficient, highest first.
    pub fn exponents(&self) -> Vec<usize> {
        let deg = match self.degree() {
            Some(d) => d,
            None => return vec![],
        };
        (0..=deg).rev().filter(|&i| self.coeff(i)).collect()
    }

    /// Low 64 coefficients packed into an integer; `None` if the degree is 64 or more.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.words.len().max(other.words.len());
        let mut words = vec![0; n];
        for (i, w) in words.iter_mut().enumerate() {
            *w = self.words.get(i).copied().unwrap_or(0) ^ other.words.get(i).copied().unwrap_or(0);
        }
        let mut p = Gf2Polynomial { words };
        p.normalize();
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for e in other.exponents() {
            out = out.add(&self.shl(e));
        }
        out
    }

    fn shl(&self, by: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (ws, bs) = (by / 64, by % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] ^= w << bs;
            if bs != 0 {
                words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        let mut p = Gf2Polynomial { words };
        p.normalize();
        p
    }

    /// Euclidean division: `self = q * den + r` with `deg r < deg den`.
    pub fn div_rem(&self, den: &Self) -> Result<(Self, Self), GfError> {
        let dd = den.degree().ok_or(GfError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            quot.flip(shift);
            rem = rem.add(&den.shl(shift));
        }
        Ok((quot, rem))
    }

    /// Bits of the polynomial as a vector of length `len` (coefficient of `x^i` at position `i`).
    pub fn to_bits(&self, len: usize) -> crate::bits::BitVec {
        crate::bits::BitVec::from_fn(len, |i| self.coeff(i))
    }

    /// Irreducibility by trial division with every polynomial of degree at most `deg / 2`.
    pub fn is_irreducible(&self) -> bool {
        let deg = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if deg > 1 && !self.coeff(0) {
            return false;
        }
        let max = deg / 2;
        for d in 1..=max {
            // candidates of exact degree d
            for low in 0..(1u64 << d) {
                let cand = Gf2Polynomial::from_u64((1u64 << d) | low);
                let (_, r) = self.div_rem(&cand).expect("nonzero divisor");
                if r.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Parses either a product of parenthesised factors such as
    /// `(x+1)(x^3+x^2+1)` or a single sum `x^6+x^5+1`.
    pub fn parse_product(s: &str) -> Result<Self, GfError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(GfError::Parse("empty polynomial".into()));
        }
        if !s.contains('(') {
            return s.parse();
        }
        let mut acc = Self::one();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .ok_or_else(|| GfError::Parse(format!("expected '(' at {rest:?}")))?;
            let close = inner
                .find(')')
                .ok_or_else(|| GfError::Parse("unbalanced parenthesis".into()))?;
            acc = acc.mul(&inner[..close].parse()?);
            rest = &inner[close + 1..];
            rest = rest.strip_prefix('*').unwrap_or(rest);
        }
        Ok(acc)
    }
}

impl FromStr for Gf2Polynomial {
    type Err = GfError;

    /// Sum of terms `1`, `x`, `x^k`, separated by `+`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut exps = Vec::new();
        for term in s.split('+') {
            let e = match term {
                "1" => 0,
                "x" => 1,
                t => t
                    .strip_prefix("x^")
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(|| GfError::Parse(format!("bad term {t:?}")))?,
            };
            exps.push(e);
        }
        Ok(Self::from_exponents(exps))
    }
}

impl fmt::Display for Gf2Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for Gf2Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Polynomial({self})")
    }
}
