//! The full computation for one prime, and batches of primes in parallel.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::{rational_to_string, IntMatrix, IntPolynomial};
use crate::fibration::{
    height_pairing, reduce_to_section, standard_fibrations, FibrationData, StandardFibrations,
};
use crate::lattice::{discriminant_group, is_p_elementary, signature, DiscriminantGroup};
use crate::ns::{build_ns_model, check_inert_prime, curve_table, NSModel};
use crate::salem::{
    coeff_strings, compose_word_cached, salem_verdict, CertifiedInterval, RootProfile,
    SalemVerdict, TranslationCache, Word,
};
use crate::weierstrass::{check_sections, SectionChecks};

/// Largest prime for which the Weierstrass section identities are checked;
/// the pulled-back sections have degree about `p`, and the dense
/// polynomial arithmetic is quadratic in it.
pub const SECTION_CHECK_MAX_P: u64 = 2_000;

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub word: Word,
    /// Record wall-clock stage timings. Off by default so that reports are
    /// byte-identical across runs.
    pub timings: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            word: Word::standard(),
            timings: false,
        }
    }
}

/// SHA-256 of the Gram matrix written row by row: entries in decimal
/// separated by `,`, rows terminated by `\n`.
pub fn gram_digest(g: &IntMatrix) -> String {
    let mut h = Sha256::new();
    for row in g.to_rows() {
        let line: Vec<String> = row.iter().map(BigInt::to_string).collect();
        h.update(line.join(","));
        h.update("\n");
    }
    format!("{:x}", h.finalize())
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FiberSummary {
    pub position: String,
    pub kodaira: String,
    pub components: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FibrationSummary {
    pub name: String,
    pub zero_section: String,
    pub fibers: Vec<FiberSummary>,
    /// Euler number carried by irreducible singular fibers not seen
    /// among the visible curves.
    pub residual_euler: String,
}

impl FibrationSummary {
    pub fn of(f: &FibrationData) -> Self {
        FibrationSummary {
            name: f.name.clone(),
            zero_section: f.zero_label.clone(),
            fibers: f
                .fibers
                .iter()
                .map(|x| FiberSummary {
                    position: x.position.clone(),
                    kodaira: x.kodaira.to_string(),
                    components: x.components.len(),
                })
                .collect(),
            residual_euler: f.euler_residual().to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InducedSection {
    pub name: String,
    pub fibration: String,
    pub class: Vec<String>,
    pub height: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictSummary {
    pub is_salem22: bool,
    pub salem_degree: String,
    pub cyclotomic_factors: Vec<String>,
    pub root_profile: Option<RootProfile>,
    pub trace_root: Option<CertifiedInterval>,
    pub salem_number: Option<CertifiedInterval>,
    pub entropy: Option<CertifiedInterval>,
    pub proof_route: Option<&'static str>,
    pub notes: Vec<String>,
}

impl VerdictSummary {
    pub fn of(v: &SalemVerdict) -> Self {
        VerdictSummary {
            is_salem22: v.is_salem22,
            salem_degree: v.salem_degree().to_string(),
            cyclotomic_factors: v.cyclotomic_factors.iter().map(u64::to_string).collect(),
            root_profile: v.root_profile,
            trace_root: v.trace_root.clone(),
            salem_number: v.salem_number.clone(),
            entropy: v.entropy.clone(),
            proof_route: v.proof_route,
            notes: v.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub stages: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PipelineReport {
    #[serde(serialize_with = "crate::ns::display_string")]
    pub p: u64,
    #[serde(serialize_with = "crate::ns::display_string")]
    pub n: u64,
    pub gram_digest: String,
    #[serde(serialize_with = "crate::ns::display_string")]
    pub det_value: BigInt,
    pub discriminant_group: DiscriminantGroup,
    pub signature: [String; 2],
    pub p_elementary: bool,
    pub curve_count: String,
    pub ade_configurations: String,
    pub fibrations_found: Vec<FibrationSummary>,
    pub section_checks: Option<SectionChecks>,
    pub sections: Vec<InducedSection>,
    pub word: Word,
    #[serde(serialize_with = "coeff_strings")]
    pub mu_coeffs: IntPolynomial,
    #[serde(serialize_with = "opt_coeffs")]
    pub g_coeffs: Option<IntPolynomial>,
    pub verdict: VerdictSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

fn opt_coeffs<S: serde::Serializer>(
    p: &Option<IntPolynomial>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => coeff_strings(p, s),
        None => s.serialize_none(),
    }
}

struct Clock {
    start: Instant,
    enabled: bool,
    stages: Vec<(String, String)>,
}

impl Clock {
    fn lap(&mut self, stage: &str) {
        if self.enabled {
            let ms = self.start.elapsed().as_secs_f64() * 1000.0;
            self.stages.push((stage.into(), format!("{ms:.3}")));
            self.start = Instant::now();
        }
    }
}

/// The model, fibrations and verdict for one prime, with every stage's
/// error tagged by the stage name.
pub fn run_pipeline(p: u64, options: &PipelineOptions) -> Result<PipelineReport> {
    check_inert_prime(p).map_err(|e| e.at_stage("input"))?;
    let mut clock = Clock {
        start: Instant::now(),
        enabled: options.timings,
        stages: Vec::new(),
    };

    let model = build_ns_model(p).map_err(|e| e.at_stage("build"))?;
    let lattice = model.lattice();
    let det_value = lattice.det().clone();
    let discriminant = discriminant_group(&lattice).map_err(|e| e.at_stage("build"))?;
    let (pos, neg) = signature(&lattice).map_err(|e| e.at_stage("build"))?;
    let p_elementary = is_p_elementary(&lattice, p).map_err(|e| e.at_stage("build"))?;
    clock.lap("build");

    let curves = curve_table(&model).map_err(|e| e.at_stage("curve table"))?;
    clock.lap("curve table");

    let fibs = standard_fibrations(&model).map_err(|e| e.at_stage("fibration detection"))?;
    clock.lap("fibration detection");

    let section_checks = if p <= SECTION_CHECK_MAX_P {
        Some(check_sections(p).map_err(|e| e.at_stage("section verification"))?)
    } else {
        None
    };
    clock.lap("section verification");

    let sections = induced_sections(&model, &fibs, &options.word)
        .map_err(|e| e.at_stage("induced sections"))?;
    clock.lap("induced sections");

    let mut cache = TranslationCache::new(&model, &fibs);
    for &letter in options.word.letters() {
        cache
            .translation(letter)
            .map_err(|e| e.at_stage("isometries"))?;
    }
    clock.lap("isometries");

    let f_star =
        compose_word_cached(&options.word, &mut cache).map_err(|e| e.at_stage("composition"))?;
    clock.lap("composition");

    let verdict = salem_verdict(&f_star).map_err(|e| e.at_stage("verdict"))?;
    clock.lap("verdict");

    Ok(PipelineReport {
        p,
        n: model.n(),
        gram_digest: gram_digest(model.gram()),
        det_value,
        discriminant_group: discriminant,
        signature: [pos.to_string(), neg.to_string()],
        p_elementary,
        curve_count: curves.len().to_string(),
        ade_configurations: fibs.configs.len().to_string(),
        fibrations_found: [&fibs.pi, &fibs.pi_prime, &fibs.pi_double_prime]
            .into_iter()
            .map(FibrationSummary::of)
            .collect(),
        section_checks,
        sections,
        word: options.word.clone(),
        mu_coeffs: verdict.mu.clone(),
        g_coeffs: verdict.trace_g.clone(),
        verdict: VerdictSummary::of(&verdict),
        timings: options.timings.then_some(Timings {
            stages: clock.stages,
        }),
    })
}

/// Each distinct letter of the word as a section of its fibration.
pub fn induced_sections(
    model: &NSModel,
    fibs: &StandardFibrations,
    word: &Word,
) -> Result<Vec<InducedSection>> {
    let letters: BTreeSet<_> = word.letters().iter().copied().collect();
    letters
        .into_iter()
        .map(|letter| {
            let f = fibs.get(letter.fibration);
            let s = reduce_to_section(&letter.base_class(model), f)?;
            Ok(InducedSection {
                name: letter.to_string(),
                fibration: letter.fibration.to_string(),
                class: s.class.coords().iter().map(BigInt::to_string).collect(),
                height: rational_to_string(&height_pairing(&s, &s, f)?),
            })
        })
        .collect()
}

/// Outcome for one prime of a batch.
#[derive(Clone, Debug)]
pub struct BatchEntry {
    pub p: u64,
    pub result: Result<PipelineReport>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ErrorRepr {
    kind: &'static str,
    stage: Option<&'static str>,
    message: String,
}

pub fn error_kind(e: &Error) -> &'static str {
    if e.is_input_error() {
        "precondition"
    } else {
        "internal"
    }
}

impl Serialize for BatchEntry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("p", &self.p.to_string())?;
        match &self.result {
            Ok(r) => m.serialize_entry("report", r)?,
            Err(e) => {
                let stage = match e {
                    Error::Stage { stage, .. } => Some(*stage),
                    _ => None,
                };
                m.serialize_entry(
                    "error",
                    &ErrorRepr {
                        kind: error_kind(e),
                        stage,
                        message: e.root().to_string(),
                    },
                )?
            }
        }
        m.end()
    }
}

/// Runs every prime independently on `jobs` worker threads (the number of
/// CPUs when `None`). Output order is input order; errors are collected
/// per prime.
pub fn batch(
    primes: &[u64],
    jobs: Option<usize>,
    options: &PipelineOptions,
) -> Result<Vec<BatchEntry>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Error::InvalidInput("--jobs must be positive".into()));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Consistency(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        primes
            .par_iter()
            .map(|&p| BatchEntry {
                p,
                result: run_pipeline(p, options),
            })
            .collect()
    }))
}

/// Process exit status for a set of outcomes: 2 if any internal error,
/// else 1 if any precondition failure, else 3 if some verdict is not
/// Salem of degree 22, else 0.
pub fn exit_status<'a>(
    outcomes: impl IntoIterator<Item = std::result::Result<bool, &'a Error>>,
) -> i32 {
    let mut code = 0;
    for o in outcomes {
        let c = match o {
            Ok(true) => 0,
            Ok(false) => 3,
            Err(e) if e.is_input_error() => 1,
            Err(_) => 2,
        };
        code = match (code, c) {
            (2, _) | (_, 2) => 2,
            (1, _) | (_, 1) => 1,
            (a, b) => a.max(b),
        };
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_status_precedence() {
        let internal = Error::Consistency("x".into());
        let input = Error::Precondition("y".into()).at_stage("input");
        assert_eq!(exit_status([Ok(true), Ok(true)]), 0);
        assert_eq!(
            exit_status(Vec::<std::result::Result<bool, &Error>>::new()),
            0
        );
        assert_eq!(exit_status([Ok(true), Ok(false)]), 3);
        assert_eq!(exit_status([Ok(false), Err(&input)]), 1);
        assert_eq!(exit_status([Err(&input), Err(&internal)]), 2);
    }

    #[test]
    fn digest_is_stable() {
        let g = IntMatrix::identity(2);
        assert_eq!(gram_digest(&g), gram_digest(&IntMatrix::identity(2)));
        assert_ne!(gram_digest(&g), gram_digest(&IntMatrix::identity(3)));
    }
}
