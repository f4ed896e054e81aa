//! JSON report types. Field order in each struct is the key order on the
//! wire; integers that can outgrow 53 bits are decimal strings.

use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Serialize)]
pub struct Report<I: Serialize, R: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub inputs: I,
    pub results: R,
    pub provenance: Vec<&'static str>,
}

impl<I: Serialize, R: Serialize> Report<I, R> {
    pub fn new(command: &'static str, inputs: I, results: R, provenance: Vec<&'static str>) -> Self {
        Report { schema_version: SCHEMA_VERSION, command, inputs, results, provenance }
    }
}

// classify

#[derive(Debug, Serialize)]
pub struct ClassifyInputs {
    pub source: String,
    pub curve: String,
    pub e: Vec<u32>,
}

#[derive(Debug, Serialize)]
pub struct ClassifyResults {
    pub p: u64,
    pub m: u64,
    pub kind: &'static str,
    pub genus: Option<u64>,
    pub point_counts: Vec<PointCountOut>,
    pub hasse_witt: Option<HasseWittOut>,
    pub p_rank_verdict: Option<&'static str>,
    pub crosscheck: Option<CrosscheckOut>,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct PointCountOut {
    pub e: u32,
    pub count: u64,
    pub status: Option<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct HasseWittOut {
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub stable_rank: usize,
}

#[derive(Debug, Serialize)]
pub struct CrosscheckOut {
    pub superspecial_is_extremal: bool,
    pub extremal_is_superspecial: bool,
    pub ordinary_is_neither: bool,
    pub consistent: bool,
}

// rep

#[derive(Debug, Serialize)]
pub struct RepInputs {
    pub p: u64,
    pub m: u64,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct RepResults {
    pub field: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub generators: Vec<GeneratorOut>,
    pub verdict: &'static str,
    pub endo_dim: Option<usize>,
    pub commutant_dim: usize,
    pub samples: usize,
    pub witness: Option<WitnessOut>,
    pub coordinate_subspace_invariant: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct GeneratorOut {
    pub label: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct WitnessOut {
    pub dim: usize,
    pub columns: Vec<Vec<String>>,
}

// search

#[derive(Debug, Serialize)]
pub struct SearchInputs {
    pub spec: &'static str,
    pub p_max: u64,
}

#[derive(Debug, Serialize)]
pub struct SearchResults {
    pub predicate: String,
    pub ranges: Vec<RangeOut>,
    pub solutions: Vec<SolutionOut>,
    pub primes: Vec<u64>,
}

#[derive(Debug, Serialize)]
pub struct RangeOut {
    pub name: String,
    pub range: String,
}

#[derive(Debug, Serialize)]
pub struct SolutionOut {
    pub p: u64,
    pub n: Option<u64>,
    pub c: u64,
    pub genus_d: u64,
}

// bounds

#[derive(Debug, Serialize)]
pub struct BoundsInputs {
    pub kind: String,
    pub params: Vec<NamedValue>,
}

#[derive(Debug, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct BoundsResults {
    pub formula_id: String,
    pub value: String,
    pub integral: bool,
    pub degenerate: bool,
    pub comparisons: Vec<ComparisonOut>,
}

#[derive(Debug, Serialize)]
pub struct ComparisonOut {
    pub label: String,
    pub lhs: String,
    pub relation: &'static str,
    pub rhs: String,
    pub holds: bool,
}

// hurwitz

#[derive(Debug, Serialize)]
pub struct HurwitzInputs {
    pub gx: Option<String>,
    pub gy: Option<String>,
    pub order: Option<String>,
    pub ram: Vec<RamOut>,
}

#[derive(Debug, Serialize)]
pub struct RamOut {
    pub e: u64,
    pub d: u64,
}

#[derive(Debug, Serialize)]
pub struct HurwitzResults {
    pub outcome: &'static str,
    pub unknown: Option<&'static str>,
    pub value: Option<String>,
    pub reason: Option<String>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
}
