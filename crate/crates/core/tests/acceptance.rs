//! Acceptance suite: one PASS/FAIL line per criterion, each with a pinned
//! wall-clock budget. Exits nonzero on any unexpected result.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bentcodes::amcheck::assmus_mattson;
use bentcodes::bentvec::{is_bent_vectorial, VectorialFunction};
use bentcodes::bits::BitVec;
use bentcodes::boolfun::{enumerate_bent_functions, walsh_transform, Indexing, TruthTable};
use bentcodes::designs::{
    complement_design, derived_design, design_from_codewords, intersection_spectrum, sdp_check, verify_2_design,
    Design,
};
use bentcodes::lincode::census::{census_report, characterization_scan_m2};
use bentcodes::lincode::{
    build_code, macwilliams_dual, rm1_generator_binary, span_equals, weight_distribution, BitMatrix,
    Enumerator, LinearCode, WeightDistribution,
};
use bentcodes::Exec;
use common::*;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria whose claim does not survive exact computation. Each still runs and
/// prints FAIL; the suite only errors if one of them unexpectedly passes.
const KNOWN_DEVIATIONS: &[(&str, &str)] = &[(
    "9c",
    "exact MacWilliams gives s = 29 > d - t = 27 at t = 1 for m = 3, so the theorem's hypothesis fails",
)];

/// Seed for every random draw in the property criteria.
const SEED: u64 = 0x5eed_b0a7;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn wd_is(code: &LinearCode, expected: &str) -> Result<WeightDistribution, String> {
    let wd = weight_distribution(code).map_err(|e| e.to_string())?;
    ensure(wd.to_string() == expected, || format!("got {wd}, expected {expected}"))?;
    Ok(wd)
}

fn params(code: &LinearCode, wd: &WeightDistribution) -> (usize, usize, usize) {
    (code.length(), code.dimension(), wd.min_nonzero_weight().unwrap_or(0))
}

struct Suite {
    failures: Vec<String>,
    surprises: Vec<String>,
}

impl Suite {
    fn run(&mut self, id: &str, budget_secs: u64, f: impl FnOnce() -> Check) {
        let budget = Duration::from_secs(budget_secs);
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let known = KNOWN_DEVIATIONS.iter().find(|(k, _)| *k == id);
        let (pass, detail) = match result {
            Ok(d) if took <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        let status = if pass { "PASS" } else { "FAIL" };
        let note = match (known, pass) {
            (Some((_, why)), false) => format!(" [known deviation: {why}]"),
            (Some(_), true) => " [listed as known deviation but passed]".to_string(),
            _ => String::new(),
        };
        println!(
            "criterion {id}: {status} ({:.2}s / {}s) {detail}{note}",
            took.as_secs_f64(),
            budget_secs
        );
        match (known.is_some(), pass) {
            (false, false) => self.failures.push(id.to_string()),
            (true, true) => self.surprises.push(id.to_string()),
            _ => {}
        }
    }
}

fn lambda_min(m: u32, ell: u32) -> u64 {
    ((1u64 << ell) - 1) * ((1u64 << (2 * m - 2)) - (1u64 << (m - 1)))
}

fn lambda_comp(m: u32, ell: u32) -> u64 {
    ((1u64 << ell) - 1) * ((1u64 << (2 * m - 2)) + (1u64 << (m - 1)))
}

/// Expected per-block intersection histogram of a minimum-weight bent design.
fn expected_spectrum(m: u32, ell: u32) -> BTreeMap<usize, usize> {
    let q = 1usize << (2 * m - 2);
    let p = 1usize << m;
    if ell == 1 {
        return BTreeMap::from([(q - p / 2, p * p - 1)]);
    }
    let e = (1usize << (ell - 1)) - 1;
    BTreeMap::from([
        (q - p / 4, p * (p + 1) * e),
        (q - p / 2, p * p - 1),
        (q - 3 * p / 4, p * (p - 1) * e),
    ])
}

fn min_design(code: &LinearCode, m: u32) -> Result<Design, String> {
    let w = (1usize << (2 * m - 1)) - (1usize << (m - 1));
    design_from_codewords(code, w, &Enumerator::default()).map_err(|e| e.to_string())
}

fn comp_design(code: &LinearCode, m: u32) -> Result<Design, String> {
    let w = (1usize << (2 * m - 1)) + (1usize << (m - 1));
    design_from_codewords(code, w, &Enumerator::default()).map_err(|e| e.to_string())
}

fn all_bent_cases() -> Vec<(u32, u32)> {
    vec![(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)]
}

fn main() -> ExitCode {
    let mut suite = Suite { failures: Vec::new(), surprises: Vec::new() };
    let mut m5_codes: Vec<(u64, LinearCode)> = Vec::new();

    suite.run("1a", 1, || {
        wd_is(&rm1(2), "1 + 30z^8 + z^16")?;
        wd_is(&rm1(3), "1 + 126z^32 + z^64")?;
        Ok("RM(1,4), RM(1,6)".into())
    });

    suite.run("1b", 1, || {
        let base = rm1_generator_binary(4);
        let bents = enumerate_bent_functions(4).map_err(|e| e.to_string())?;
        for f in &bents {
            let code = build_code(&base, &VectorialFunction::new(vec![f.clone()]).unwrap()).unwrap();
            wd_is(&code, "1 + 16z^6 + 30z^8 + 16z^10 + z^16")?;
        }
        Ok(format!("all {} bent functions on 4 variables", bents.len()))
    });

    suite.run("1c", 1, || {
        let code = bent_code(2, 2);
        let wd = wd_is(&code, "1 + 48z^6 + 30z^8 + 48z^10 + z^16")?;
        ensure(params(&code, &wd) == (16, 7, 6), || format!("{:?}", params(&code, &wd)))?;
        Ok("[16, 7, 6]".into())
    });

    suite.run("1d", 1, || {
        for code in m3_codes() {
            let wd = wd_is(&code, "1 + 448z^28 + 126z^32 + 448z^36 + z^64")?;
            ensure(params(&code, &wd) == (64, 10, 28), || format!("{:?}", params(&code, &wd)))?;
        }
        Ok("C1 and C2 are [64, 10, 28]".into())
    });

    suite.run("1e", 1, || {
        let (c10, c7) = bch63_codes();
        wd_is(&c10, "1 + 196z^27 + 252z^28 + 63z^31 + 63z^32 + 252z^35 + 196z^36 + z^63")?;
        wd_is(&c7, "1 + 63z^31 + 63z^32 + z^63")?;
        let (e10, e7) = bch63_extended();
        wd_is(&e7, "1 + 126z^32 + z^64")?;
        wd_is(&e10, "1 + 448z^28 + 126z^32 + 448z^36 + z^64")?;
        Ok("[63,10], [63,7], [64,7], [64,10]".into())
    });

    for i in [1u64, 7] {
        suite.run(&format!("1f.i{i}"), 30, || {
            let code = m5_code(i);
            let wd = wd_is(&code, "1 + 7168z^496 + 2046z^512 + 7168z^528 + z^1024")?;
            ensure(params(&code, &wd) == (1024, 14, 496), || format!("{:?}", params(&code, &wd)))?;
            m5_codes.push((i, code));
            Ok("[1024, 14, 496]".into())
        });
    }

    suite.run("2", 60, || {
        let s = characterization_scan_m2(Exec::default());
        ensure(s.ordered_pairs == 448 * 447, || format!("{} pairs", s.ordered_pairs))?;
        ensure(s.disagreements == 0, || format!("{} disagreements", s.disagreements))?;
        ensure(s.bent_vectorial > 0, || "no bent pairs found".into())?;
        Ok(format!("{} ordered pairs, {} bent vectorial, 0 disagreements", s.ordered_pairs, s.bent_vectorial))
    });

    suite.run("3", 60, || {
        let r = census_report(Exec::default());
        ensure(r.weight6_bent == 448, || format!("{} weight-6 bent tables", r.weight6_bent))?;
        ensure(r.distinct_codes == 56, || format!("{} codes", r.distinct_codes))?;
        ensure(r.class_sizes == vec![16; 28], || format!("class sizes {:?}", r.class_sizes))?;
        ensure(r.classes_per_code.iter().all(|&c| c == 3), || "a code does not contain 3 classes".into())?;
        ensure(r.min_words_are_class_unions, || "weight-6 words are not class unions".into())?;
        Ok("56 codes; 28 classes of 16; 3 classes per code".into())
    });

    suite.run("4", 60, || {
        let mut out = Vec::new();
        for (m, ell) in all_bent_cases() {
            let code = bent_code(m, ell as usize);
            let d = min_design(&code, m)?;
            let p = verify_2_design(&d).map_err(|e| e.to_string())?;
            ensure(p.lambda == lambda_min(m, ell), || format!("m={m} l={ell}: lambda {}", p.lambda))?;
            let r = ((1u64 << ell) - 1) * ((1u64 << (2 * m - 1)) - (1u64 << (m - 1)));
            ensure(p.r == r, || format!("m={m} l={ell}: r {} != {r}", p.r))?;
            let c = comp_design(&code, m)?;
            let pc = verify_2_design(&c).map_err(|e| e.to_string())?;
            ensure(pc.lambda == lambda_comp(m, ell), || format!("m={m} l={ell}: complement lambda {}", pc.lambda))?;
            ensure(complement_design(&d).map_err(|e| e.to_string())? == c, || "complement mismatch".into())?;
            out.push(format!("2-({}, {}, {})/{}", p.v, p.k, p.lambda, pc.lambda));
        }
        Ok(out.join(", "))
    });

    suite.run("4.long", 300, || {
        let mut out = Vec::new();
        for (i, code) in &m5_codes {
            let d = min_design(code, 5)?;
            let p = verify_2_design(&d).map_err(|e| e.to_string())?;
            ensure(p.lambda == 1680 && p.lambda == lambda_min(5, 3), || format!("i={i}: lambda {}", p.lambda))?;
            out.push(format!("i={i}: 2-({}, {}, {})", p.v, p.k, p.lambda));
        }
        ensure(out.len() == 2, || "m = 5 codes unavailable".into())?;
        Ok(out.join(", "))
    });

    suite.run("5", 30, || {
        let mut cases: Vec<(u32, u32, Design)> = Vec::new();
        for (m, ell) in all_bent_cases() {
            cases.push((m, ell, min_design(&bent_code(m, ell as usize), m)?));
        }
        if let Some((_, code)) = m5_codes.first() {
            cases.push((5, 3, min_design(code, 5)?));
        }
        let mut out = Vec::new();
        for (m, ell, d) in &cases {
            let s = intersection_spectrum(d);
            let expected = expected_spectrum(*m, *ell);
            let h = s.uniform().ok_or(format!("m={m} l={ell}: spectra differ between blocks"))?;
            ensure(*h == expected, || format!("m={m} l={ell}: {h:?} != {expected:?}"))?;
            let r = verify_2_design(d).map_err(|e| e.to_string())?.r as usize;
            let sum: usize = h.iter().map(|(s, n)| s * n).sum();
            ensure(sum == d.k() * (r - 1), || format!("m={m} l={ell}: identity fails"))?;
            out.push(format!("m={m} l={ell} {h:?}"));
        }
        ensure(cases.len() == 6, || "m = 5 case missing".into())?;
        Ok(out.join("; "))
    });

    suite.run("6", 10, || {
        for m in [2u32, 3] {
            let d = min_design(&bent_code(m, 1), m)?;
            let ok = sdp_check(&d).map_err(|e| e.to_string())?;
            ensure(ok, || format!("m={m}: SDP fails"))?;
        }
        Ok("560 and 41664 triples".into())
    });

    suite.run("7", 60, || {
        let mut codes: Vec<(String, LinearCode)> = vec![("C(f) m=2".into(), bent_code(2, 1))];
        codes.push(("C(f1,f2) m=2".into(), bent_code(2, 2)));
        let [c1, c2] = m3_codes();
        codes.push(("C1".into(), c1));
        codes.push(("C2".into(), c2));
        let (c10, c7) = bch63_codes();
        let (e10, e7) = bch63_extended();
        codes.extend([("[63,10]".into(), c10), ("[63,7]".into(), c7), ("[64,10]".into(), e10), ("[64,7]".into(), e7)]);
        for (i, code) in &m5_codes {
            codes.push((format!("m = 5, i = {i}"), code.clone()));
        }
        for (name, code) in &codes {
            let words = Enumerator::default().min_weight_codewords(code).map_err(|e| e.to_string())?;
            ensure(span_equals(code, &words).map_err(|e| e.to_string())?, || format!("{name}: span is smaller"))?;
        }
        ensure(codes.len() == 10, || "m = 5 codes missing".into())?;
        Ok(format!("{} codes", codes.len()))
    });

    suite.run("8", 10, || {
        let mut out = Vec::new();
        for (m, expected) in [(2u32, (6usize, 2usize, 1u64, vec![0usize, 1])), (3, (28, 12, 11, vec![4, 6]))] {
            for ell in 1..=m {
                let d = min_design(&bent_code(m, ell as usize), m)?;
                for idx in 0..d.b() {
                    let dd = derived_design(&d, idx).map_err(|e| format!("m={m} l={ell} block {idx}: {e}"))?;
                    let p = dd.params;
                    ensure((p.v, p.k, p.lambda) == (expected.0, expected.1, expected.2), || format!("{p:?}"))?;
                    ensure(dd.intersection_numbers == expected.3, || format!("{:?}", dd.intersection_numbers))?;
                    ensure(p.b == (1 << (2 * m)) - 1, || format!("{} blocks", p.b))?;
                    ensure(dd.pairwise_sdp, || format!("m={m} block {idx}: pairwise property fails"))?;
                }
            }
            out.push(format!("2-({}, {}, {}) {:?}", expected.0, expected.1, expected.2, expected.3));
        }
        Ok(out.join(", "))
    });

    let c1 = m3_codes()[0].clone();
    let am = |t: usize| -> Result<bentcodes::amcheck::AmReport, String> {
        let wd = weight_distribution(&c1).map_err(|e| e.to_string())?;
        let dual = macwilliams_dual(&wd).map_err(|e| e.to_string())?;
        assmus_mattson(&wd, &dual, t).map_err(|e| e.to_string())
    };
    suite.run("9a", 5, || {
        let r = am(2)?;
        ensure(r.d_dual == 4, || format!("d_dual = {}", r.d_dual))?;
        Ok("d_dual = 4".into())
    });
    suite.run("9b", 5, || {
        let r = am(2)?;
        ensure(!r.holds, || format!("{r:?}"))?;
        Ok(format!("t=2: s={} > d-t={}", r.s, r.d - 2))
    });
    suite.run("9c", 5, || {
        let r = am(1)?;
        ensure(r.holds, || format!("t=1: s={} > d-t={}", r.s, r.d - 1))?;
        Ok(format!("t=1: s={} <= d-t={}", r.s, r.d - 1))
    });
    suite.run("9d", 5, || {
        let p = verify_2_design(&min_design(&c1, 3)?).map_err(|e| e.to_string())?;
        ensure(p.lambda == 84, || format!("lambda {}", p.lambda))?;
        Ok("2-(64, 28, 84) certified directly".into())
    });

    suite.run("10", 60, || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=10u32);
            let bits = BitVec::from_fn(1 << n, |_| rng.gen());
            let t = TruthTable::new(n, bits, Indexing::Binary).unwrap();
            let s = walsh_transform(&t);
            ensure(s.sum_of_squares() == 1i64 << (2 * n), || format!("Parseval fails at n={n}"))?;
        }

        let mut bent_codes: Vec<LinearCode> = all_bent_cases().iter().map(|&(m, l)| bent_code(m, l as usize)).collect();
        bent_codes.extend(m3_codes());
        bent_codes.extend(m5_codes.iter().map(|(_, c)| c.clone()));
        for c in &bent_codes {
            ensure(c.contains(&BitVec::ones(c.length())), || "all-one word missing".into())?;
            let wd = weight_distribution(c).map_err(|e| e.to_string())?;
            ensure(wd.is_symmetric(), || format!("{wd} is not symmetric"))?;
        }
        let f = VectorialFunction::new(M2_PAIR.iter().map(|s| anf(4, s)).collect()).unwrap();
        ensure(is_bent_vectorial(&f), || "m = 2 pair is not bent vectorial".into())?;

        for ell in 0..=2usize {
            let code = if ell == 0 { rm1(2) } else { bent_code(2, ell) };
            let wd = weight_distribution(&code).map_err(|e| e.to_string())?;
            let via = macwilliams_dual(&wd).map_err(|e| e.to_string())?;
            let direct = weight_distribution(&code.dual()).map_err(|e| e.to_string())?;
            ensure(via == direct, || format!("MacWilliams {via} vs direct {direct}"))?;
        }

        let sources = [bent_code(3, 3), bch63_codes().0, rm1(3)];
        for _ in 0..50 {
            let src = &sources[rng.gen_range(0..sources.len())];
            let rows: Vec<BitVec> =
                src.generators().rows().iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
            let sub = LinearCode::from_generators(&BitMatrix::new(src.length(), rows).unwrap());
            let mut naive = vec![0u64; sub.length() + 1];
            for msg in 0..1u64 << sub.dimension() {
                naive[sub.encode(msg).count_ones()] += 1;
            }
            let gray = Enumerator::new(Exec::Sequential, Default::default()).weight_distribution(&sub).unwrap();
            for (w, &c) in naive.iter().enumerate() {
                ensure(gray.count(w) == BigUint::from(c), || format!("weight {w}: gray {} vs naive {c}", gray.count(w)))?;
            }
        }
        Ok("Parseval x1000, self-complementarity, MacWilliams at m=2, Gray vs naive x50".into())
    });

    for s in &suite.surprises {
        println!("criterion {s} is listed as a known deviation but passed; update the list");
    }
    if suite.failures.is_empty() && suite.surprises.is_empty() {
        println!("acceptance: all criteria met apart from {} known deviation(s)", KNOWN_DEVIATIONS.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures {:?}", suite.failures);
        ExitCode::FAILURE
    }
}
