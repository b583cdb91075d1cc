use std::fs;
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use bentcodes::lincode::{BitMatrix, LinearCode};

use crate::error::{io, precondition, CliResult};

/// A generator matrix on disk, rows as hex integers with coordinate 0 as the
/// least significant bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub n: usize,
    pub k: usize,
    /// `"binary"` or `"field"` column order.
    pub indexing: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generator_element: Option<String>,
    /// Half the number of variables, for codes built from bent functions.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ell: Option<u32>,
    pub construction: String,
    pub generator: Vec<String>,
}

impl CodeFile {
    pub fn code(&self) -> CliResult<LinearCode> {
        let g = BitMatrix::from_hex_rows(self.n, &self.generator)?;
        let code = LinearCode::from_generators(&g);
        if code.dimension() != self.k {
            return Err(precondition(anyhow::anyhow!(
                "generator rows have rank {} but k = {}",
                code.dimension(),
                self.k
            )));
        }
        Ok(code)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(io)?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display())).map_err(precondition)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

pub fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display())).map_err(io)
}

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(io)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}
