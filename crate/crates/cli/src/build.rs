use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use bentcodes::bentvec::{
    construct_example4, construct_example5, construct_example6, restrict_to_subgroup, VectorialFunction,
};
use bentcodes::boolfun::{truth_table_from_anf, AnfExpression};
use bentcodes::gf2e::{BasisSpec, FieldElement, FieldSpec, Gf2Polynomial};
use bentcodes::lincode::{build_code, cyclic_code, extend, rm1_generator, rm1_generator_binary, LinearCode};

use crate::artifacts::{read, sha256_hex, to_json, write, CodeFile};
use crate::error::{bail, certificate, io, precondition, CliResult};
use crate::enumerator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Ex4,
    Ex5,
    Ex6,
}

/// Exactly one of `--construction`, `--rm1`, `--cyclic` or `--anf` selects the code.
#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
pub struct BuildArgs {
    /// Monomial bent vectorial construction over GF(2^(2m)).
    #[arg(long, value_enum)]
    pub construction: Option<Construction>,
    /// First-order Reed-Muller code RM(1, 2m).
    #[arg(long)]
    pub rm1: bool,
    /// Cyclic code of this length; needs --check-poly.
    #[arg(long)]
    pub cyclic: Option<usize>,
    /// Check polynomial, e.g. "(x+1)(x^3+x^2+1)".
    #[arg(long)]
    pub check_poly: Option<String>,
    /// Append an overall parity bit.
    #[arg(long)]
    pub extend: bool,
    /// Component function in algebraic normal form, e.g. "x1*x6+x2*x5"; repeatable.
    #[arg(long)]
    pub anf: Vec<String>,
    /// Number of variables for --anf (defaults to 2m).
    #[arg(long)]
    pub vars: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub i: Option<u64>,
    /// Element u for ex4, as a hex polynomial-basis vector (default: the generator).
    #[arg(long)]
    pub u: Option<String>,
    /// Element a for ex5/ex6, as a hex polynomial-basis vector (default: the generator).
    #[arg(long)]
    pub a: Option<String>,
    /// 1-based components to keep, e.g. 1,2,3.
    #[arg(long, value_delimiter = ',')]
    pub components: Vec<usize>,
    /// Field modulus: exponent list "10,6,5,3,2,1,0", hex "0x46f" or "x^10+x^6+...".
    #[arg(long)]
    pub modulus: Option<String>,
    /// Primitive element as hex (default: the least one).
    #[arg(long)]
    pub generator: Option<String>,
    /// Output directory.
    #[arg(long)]
    #[serde(skip)]
    pub out: PathBuf,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub command_line: Vec<String>,
    pub modulus: Option<String>,
    pub parameters: BuildArgs,
    pub outputs: BTreeMap<String, String>,
    pub duration_secs: f64,
}

pub const OUTPUTS: [&str; 3] = ["code.json", "generator.txt", "wd.json"];

pub fn parse_modulus(spec: &str) -> CliResult<Gf2Polynomial> {
    let s = spec.trim();
    if let Some(h) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        let v = u64::from_str_radix(h, 16).map_err(|e| precondition(anyhow::anyhow!("modulus {s:?}: {e}")))?;
        return Ok(Gf2Polynomial::from_u64(v));
    }
    if s.contains('x') {
        return Ok(Gf2Polynomial::parse_product(s)?);
    }
    let exps = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| precondition(anyhow::anyhow!("modulus {s:?}: {e}")))?;
    Ok(Gf2Polynomial::from_exponents(exps))
}

fn parse_hex_u32(what: &str, s: &str) -> CliResult<u32> {
    let h = s.trim().trim_start_matches("0x").trim_start_matches("0X");
    u32::from_str_radix(h, 16).map_err(|e| precondition(anyhow::anyhow!("{what} {s:?}: {e}")))
}

fn field_for(args: &BuildArgs, degree: u32) -> CliResult<FieldSpec> {
    let field = match (&args.modulus, &args.generator) {
        (None, None) => FieldSpec::default_for_degree(degree)?,
        (None, Some(_)) => return bail("--generator needs --modulus"),
        (Some(m), g) => {
            let poly = parse_modulus(m)?;
            if poly.degree() != Some(degree as usize) {
                return bail(format!("modulus {poly} has degree {:?}, need {degree}", poly.degree()));
            }
            match g {
                Some(g) => FieldSpec::new(degree, &poly, parse_hex_u32("generator", g)?)?,
                None => FieldSpec::with_modulus(degree, &poly)?,
            }
        }
    };
    Ok(field)
}

fn element(field: &FieldSpec, what: &str, s: &Option<String>) -> CliResult<FieldElement> {
    match s {
        None => Ok(field.generator()),
        Some(s) => Ok(field.element(parse_hex_u32(what, s)?)?),
    }
}

fn select(f: VectorialFunction, components: &[usize]) -> CliResult<VectorialFunction> {
    if components.is_empty() {
        Ok(f)
    } else {
        Ok(restrict_to_subgroup(&f, components)?)
    }
}

fn require_m(args: &BuildArgs) -> CliResult<u32> {
    match args.m {
        Some(m) if (1..=8).contains(&m) => Ok(m),
        Some(m) => bail(format!("--m {m} out of range 1..=8")),
        None => bail("--m is required"),
    }
}

fn field_meta(field: &FieldSpec) -> (Option<String>, Option<String>) {
    (Some(field.modulus().to_string()), Some(format!("{:#x}", field.generator().value())))
}

/// Builds the code described by `args` and returns its file form.
pub fn make_code(args: &BuildArgs) -> CliResult<(LinearCode, CodeFile)> {
    let sources = [args.construction.is_some(), args.rm1, args.cyclic.is_some(), !args.anf.is_empty()];
    if sources.iter().filter(|&&s| s).count() != 1 {
        return bail("choose exactly one of --construction, --rm1, --cyclic, --anf");
    }
    let file = |code: &LinearCode, indexing: &str, field: Option<&FieldSpec>, m, ell, construction: String| {
        let (modulus, generator_element) = field.map(field_meta).unwrap_or((None, None));
        CodeFile {
            n: code.length(),
            k: code.dimension(),
            indexing: indexing.into(),
            modulus,
            generator_element,
            m,
            ell,
            construction,
            generator: code.generators().to_hex_rows(),
        }
    };

    if let Some(c) = args.construction {
        let m = require_m(args)?;
        let field = field_for(args, 2 * m)?;
        let i = match args.i {
            Some(i) => i,
            None => return bail("--i is required"),
        };
        let f = match c {
            Construction::Ex4 => {
                let basis = BasisSpec::power_basis(&field, m)?;
                construct_example4(&field, m, i, element(&field, "u", &args.u)?, &basis)?
            }
            Construction::Ex5 => construct_example5(&field, m, i, element(&field, "a", &args.a)?, None)?,
            Construction::Ex6 => construct_example6(&field, m, i, element(&field, "a", &args.a)?, None)?,
        };
        let f = select(f, &args.components)?;
        let base = rm1_generator(m, &field)?;
        let code = build_code(&base, &f)?;
        let name = format!("{c:?}").to_lowercase();
        let cf = file(&code, "field", Some(&field), Some(m), Some(f.ell() as u32), name);
        return Ok((code, cf));
    }

    if args.rm1 {
        let m = require_m(args)?;
        if args.modulus.is_some() {
            let field = field_for(args, 2 * m)?;
            let code = LinearCode::from_generators(&rm1_generator(m, &field)?.matrix);
            return Ok((code.clone(), file(&code, "field", Some(&field), Some(m), None, "rm1".into())));
        }
        let code = LinearCode::from_generators(&rm1_generator_binary(2 * m).matrix);
        return Ok((code.clone(), file(&code, "binary", None, Some(m), None, "rm1".into())));
    }

    if let Some(n) = args.cyclic {
        let Some(h) = &args.check_poly else { return bail("--cyclic needs --check-poly") };
        if n == 0 {
            return bail("--cyclic length must be positive");
        }
        let h = Gf2Polynomial::parse_product(h)?;
        let mut code = cyclic_code(n, &h)?;
        let mut name = format!("cyclic n={n} h={h}");
        if args.extend {
            code = extend(&code);
            name.push_str(" extended");
        }
        return Ok((code.clone(), file(&code, "cyclic", None, None, None, name)));
    }

    let n = match (args.vars, args.m) {
        (Some(v), _) => v,
        (None, Some(m)) => 2 * m,
        (None, None) => return bail("--anf needs --vars or --m"),
    };
    if n % 2 != 0 || n == 0 || n > 16 {
        return bail(format!("--vars {n} must be even and at most 16"));
    }
    let tables = args
        .anf
        .iter()
        .map(|s| Ok(truth_table_from_anf(&AnfExpression::parse(n, s)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let f = select(VectorialFunction::new(tables)?, &args.components)?;
    let code = build_code(&rm1_generator_binary(n), &f)?;
    let cf = file(&code, "binary", None, Some(n / 2), Some(f.ell() as u32), "anf".into());
    Ok((code, cf))
}

/// Writes the code, its generator matrix, weight distribution and a manifest to `args.out`.
pub fn run(args: &BuildArgs, command_line: Vec<String>) -> CliResult<Manifest> {
    let start = Instant::now();
    let (code, cf) = make_code(args)?;
    let wd = enumerator()?.weight_distribution(&code)?;
    let contents = [to_json(&cf), code.generators().to_text(), to_json(&wd)];

    std::fs::create_dir_all(&args.out).map_err(io)?;
    let mut outputs = BTreeMap::new();
    for (name, text) in OUTPUTS.iter().zip(&contents) {
        write(&args.out.join(name), text)?;
        outputs.insert(name.to_string(), sha256_hex(text.as_bytes()));
    }
    let manifest = Manifest {
        tool: format!("bentcodes {}", env!("CARGO_PKG_VERSION")),
        command_line,
        modulus: cf.modulus.clone(),
        parameters: args.clone(),
        outputs,
        duration_secs: start.elapsed().as_secs_f64(),
    };
    write(&args.out.join("manifest.json"), &to_json(&manifest))?;
    log::info!("built [{}, {}] code in {:.3}s", cf.n, cf.k, manifest.duration_secs);
    Ok(manifest)
}

/// Re-runs a manifest into `out` and compares output hashes.
pub fn replay(manifest_path: &Path, out: &Path) -> CliResult<serde_json::Value> {
    let original: Manifest = serde_json::from_str(&read(manifest_path)?).map_err(precondition)?;
    let mut args = original.parameters.clone();
    args.out = out.to_path_buf();
    let fresh = run(&args, original.command_line.clone())?;
    let mismatched: Vec<&String> =
        original.outputs.iter().filter(|(k, v)| fresh.outputs.get(*k) != Some(v)).map(|(k, _)| k).collect();
    let report = serde_json::json!({
        "check": "replay",
        "holds": mismatched.is_empty(),
        "outputs": fresh.outputs,
        "mismatched": mismatched,
    });
    if !mismatched.is_empty() {
        println!("{}", to_json(&report).trim_end());
        return Err(certificate(format!("outputs differ: {mismatched:?}")));
    }
    Ok(report)
}
