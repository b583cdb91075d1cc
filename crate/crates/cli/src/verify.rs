use clap::Subcommand;
use serde_json::{json, Value};

use bentcodes::amcheck::assmus_mattson;
use bentcodes::designs::{
    derived_design, design_from_codewords, fingerprint, intersection_spectrum, sdp_check, verify_t_design, Design,
    DesignError,
};
use bentcodes::lincode::{bent_enumerator, check_bent_enumerator, macwilliams_dual, span_equals, LinearCode};

use crate::artifacts::CodeFile;
use crate::error::{bail, CliResult};
use crate::enumerator;

#[derive(Subcommand, Clone, Debug)]
pub enum Check {
    /// Weight distribution equals the bent vectorial enumerator.
    BentEnum {
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        ell: Option<u32>,
    },
    /// Weight-W codewords hold a T-design.
    Design { t: usize, w: usize },
    /// Symmetric difference of any three blocks is a block or a block complement.
    Sdp { w: Option<usize> },
    /// Every block has the same intersection histogram.
    Spectrum { w: Option<usize> },
    /// Derived design at a block of the minimum-weight design.
    Derived { idx: Option<usize> },
    /// Assmus-Mattson condition at strength T (report only; exits 0).
    Am { t: usize },
    /// Minimum-weight codewords span the code.
    Span,
}

pub struct Outcome {
    pub report: Value,
    pub holds: bool,
    /// Report-only checks exit 0 whatever `holds` is.
    pub informational: bool,
}

fn weight_design(code: &LinearCode, w: usize) -> CliResult<Design> {
    Ok(design_from_codewords(code, w, &enumerator()?)?)
}

fn min_weight(code: &LinearCode) -> CliResult<usize> {
    match enumerator()?.weight_distribution(code)?.min_nonzero_weight() {
        Some(d) => Ok(d),
        None => bail("zero code has no minimum weight"),
    }
}

pub fn run(cf: &CodeFile, check: &Check) -> CliResult<Outcome> {
    let code = cf.code()?;
    let e = enumerator()?;
    let done = |report: Value, holds: bool| Ok(Outcome { report, holds, informational: false });
    match *check {
        Check::BentEnum { m, ell } => {
            let (Some(m), Some(ell)) = (m.or(cf.m), ell.or(cf.ell)) else {
                return bail("bent-enum needs --m and --ell (not recorded in the code file)");
            };
            if m == 0 || 2 * m > 16 || ell == 0 {
                return bail(format!("m = {m}, l = {ell} out of range"));
            }
            let wd = e.weight_distribution(&code)?;
            let holds = check_bent_enumerator(&wd, m, ell);
            done(
                json!({"check": "bent-enum", "holds": holds, "m": m, "ell": ell,
                       "weight_distribution": wd.to_string(), "expected": bent_enumerator(m, ell).to_string()}),
                holds,
            )
        }
        Check::Design { t, w } => {
            let d = weight_design(&code, w)?;
            match verify_t_design(&d, t) {
                Ok(p) => done(json!({"check": "design", "holds": true, "params": p}), true),
                Err(err @ (DesignError::NotA2Design { .. } | DesignError::NotATDesign { .. })) => done(
                    json!({"check": "design", "holds": false, "t": t, "v": d.v(), "k": d.k(), "b": d.b(),
                           "reason": err.to_string()}),
                    false,
                ),
                Err(err) => Err(err.into()),
            }
        }
        Check::Sdp { w } => {
            let w = match w {
                Some(w) => w,
                None => min_weight(&code)?,
            };
            let d = weight_design(&code, w)?;
            let holds = sdp_check(&d)?;
            let b = d.b() as u64;
            done(
                json!({"check": "sdp", "holds": holds, "weight": w, "blocks": b, "triples": b * (b - 1) * (b.saturating_sub(2)) / 6}),
                holds,
            )
        }
        Check::Spectrum { w } => {
            let w = match w {
                Some(w) => w,
                None => min_weight(&code)?,
            };
            let d = weight_design(&code, w)?;
            let s = intersection_spectrum(&d);
            let holds = s.uniform().is_some();
            let f = fingerprint(&d);
            done(
                json!({"check": "spectrum", "holds": holds, "weight": w, "uniform": s.uniform(),
                       "global": s.global, "block_spectra": f.block_spectra}),
                holds,
            )
        }
        Check::Derived { idx } => {
            let d = weight_design(&code, min_weight(&code)?)?;
            match derived_design(&d, idx.unwrap_or(0)) {
                Ok(dd) => done(json!({"check": "derived", "holds": true, "derived": dd}), true),
                Err(err @ DesignError::DerivedMismatch(_)) => {
                    done(json!({"check": "derived", "holds": false, "reason": err.to_string()}), false)
                }
                Err(err) => Err(err.into()),
            }
        }
        Check::Am { t } => {
            let wd = e.weight_distribution(&code)?;
            let dual = macwilliams_dual(&wd)?;
            let r = assmus_mattson(&wd, &dual, t)?;
            Ok(Outcome { report: json!({"check": "am", "holds": r.holds, "report": r}), holds: r.holds, informational: true })
        }
        Check::Span => {
            let words = e.min_weight_codewords(&code)?;
            let holds = span_equals(&code, &words)?;
            done(json!({"check": "span", "holds": holds, "min_weight_words": words.len(), "k": code.dimension()}), holds)
        }
    }
}
