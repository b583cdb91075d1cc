//! Exhaustive scans over the 448 weight-6 bent functions of four variables:
//! the count of distinct `[16, 7, 6]` codes they generate with RM(1, 4), and
//! the two-way agreement between vectorial bentness and the code enumerator.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::bentvec::{is_bent_vectorial_with, VectorialFunction};
use crate::bits::BitVec;
use crate::boolfun::{enumerate_bent_functions_with, TruthTable};
use crate::exec::Exec;

use super::{bent_enumerator, build_code, rm1_generator_binary, BaseMatrix, Enumerator, LinearCode};

/// Weight-6 bent functions of four variables, binary-indexed.
pub fn weight6_bent_tables(exec: Exec) -> Vec<TruthTable> {
    enumerate_bent_functions_with(4, exec)
        .expect("n = 4 is supported")
        .into_iter()
        .filter(|t| t.weight() == 6)
        .collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CensusReport {
    /// Number of weight-6 bent functions (448).
    pub weight6_bent: usize,
    /// Sizes of the classes of tables spanning the same `C(f)` with RM(1,4).
    pub class_sizes: Vec<usize>,
    /// Ordered pairs `(f1, f2)` whose code is `[16, 7]` with the bent enumerator.
    pub accepted_pairs: usize,
    /// Distinct `[16, 7, 6]` codes, compared as codeword sets.
    pub distinct_codes: usize,
    /// For each distinct code, how many classes it contains entirely.
    pub classes_per_code: Vec<usize>,
    /// True iff each code's weight-6 words are exactly the union of its contained classes.
    pub min_words_are_class_unions: bool,
}

fn code_of(base: &BaseMatrix, tables: &[&TruthTable]) -> LinearCode {
    let f = VectorialFunction::new(tables.iter().map(|&t| t.clone()).collect()).expect("same indexing");
    build_code(base, &f).expect("matching length")
}

/// Census of `[16, 7, 6]` codes from pairs of weight-6 bent functions.
pub fn census_report(exec: Exec) -> CensusReport {
    let base = rm1_generator_binary(4);
    let tables = weight6_bent_tables(exec);
    let serial = Enumerator::new(Exec::Sequential, Default::default());

    let mut classes: BTreeMap<Vec<BitVec>, Vec<usize>> = BTreeMap::new();
    for (i, t) in tables.iter().enumerate() {
        classes.entry(code_of(&base, &[t]).canonical_rows()).or_default().push(i);
    }
    let class_list: Vec<Vec<usize>> = classes.into_values().collect();

    let target = bent_enumerator(2, 2);
    let per_first = exec.map(0..tables.len(), |i| {
        let mut keys = Vec::new();
        for j in (0..tables.len()).filter(|&j| j != i) {
            let code = code_of(&base, &[&tables[i], &tables[j]]);
            if code.dimension() == 7 && serial.weight_distribution(&code).expect("k = 7") == target {
                keys.push(code.canonical_rows());
            }
        }
        keys
    });
    let accepted_pairs = per_first.iter().map(Vec::len).sum();
    let codes: BTreeSet<Vec<BitVec>> = per_first.into_iter().flatten().collect();

    let mut classes_per_code = Vec::new();
    let mut unions_ok = true;
    for rows in &codes {
        let code = LinearCode::from_generators(
            &super::BitMatrix::new(16, rows.clone()).expect("16 columns"),
        );
        let contained: Vec<&Vec<usize>> = class_list
            .iter()
            .filter(|cls| cls.iter().all(|&i| code.contains(tables[i].bits())))
            .collect();
        classes_per_code.push(contained.len());
        let mut from_classes: Vec<BitVec> =
            contained.iter().flat_map(|cls| cls.iter().map(|&i| tables[i].bits().clone())).collect();
        from_classes.sort();
        let mut words = serial.codewords_of_weight(&code, 6).expect("k = 7");
        words.sort();
        unions_ok &= words == from_classes;
    }

    CensusReport {
        weight6_bent: tables.len(),
        class_sizes: class_list.iter().map(Vec::len).collect(),
        accepted_pairs,
        distinct_codes: codes.len(),
        classes_per_code,
        min_words_are_class_unions: unions_ok,
    }
}

/// Number of distinct `[16, 7, 6]` codes obtained from `(4, 2)` bent vectorial functions.
pub fn census_16_7_6() -> usize {
    census_report(Exec::default()).distinct_codes
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CharacterizationScan {
    pub ordered_pairs: usize,
    pub bent_vectorial: usize,
    pub enumerator_certified: usize,
    /// Pairs where the two tests disagree.
    pub disagreements: usize,
}

/// For every ordered pair of distinct weight-6 bent functions, compares
/// vectorial bentness with "dimension 7 and the bent enumerator".
pub fn characterization_scan_m2(exec: Exec) -> CharacterizationScan {
    let base = rm1_generator_binary(4);
    let tables = weight6_bent_tables(exec);
    let serial = Enumerator::new(Exec::Sequential, Default::default());
    let target = bent_enumerator(2, 2);
    exec.fold(
        0..tables.len(),
        || CharacterizationScan { ordered_pairs: 0, bent_vectorial: 0, enumerator_certified: 0, disagreements: 0 },
        |mut acc, i| {
            for j in (0..tables.len()).filter(|&j| j != i) {
                let f = VectorialFunction::new(vec![tables[i].clone(), tables[j].clone()]).expect("same indexing");
                let bent = is_bent_vectorial_with(&f, Exec::Sequential);
                let code = build_code(&base, &f).expect("matching length");
                let cert = code.dimension() == 7 && serial.weight_distribution(&code).expect("k <= 7") == target;
                acc.ordered_pairs += 1;
                acc.bent_vectorial += bent as usize;
                acc.enumerator_certified += cert as usize;
                acc.disagreements += (bent != cert) as usize;
            }
            acc
        },
        |a, b| CharacterizationScan {
            ordered_pairs: a.ordered_pairs + b.ordered_pairs,
            bent_vectorial: a.bent_vectorial + b.bent_vectorial,
            enumerator_certified: a.enumerator_certified + b.enumerator_certified,
            disagreements: a.disagreements + b.disagreements,
        },
    )
}
