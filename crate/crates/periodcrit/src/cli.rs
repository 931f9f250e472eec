//! Command-line front end: pair ingestion, pipeline orchestration, and
//! text/JSON reporting with a fixed exit-code taxonomy.
//!
//! Exit codes: `0` yes, `1` no, `2` pipeline incomplete (representative
//! selection failed, so no mathematical conclusion is claimed), `3` input
//! error, `4` resource cap hit. Codes depend on the verdict only, never on
//! the output mode.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::criterion::{self, Certificate, PositivityVerdict};
use crate::error::Error;
use crate::linalg::rat_str;
use crate::relweyl;
use crate::seriesim::{self, SeriesReport};
use crate::sympair::{self, SymmetricPairData};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Series,
    Explain,
    Presets,
    Validate,
}

#[derive(Clone, Debug)]
pub enum PairSource {
    Preset(String),
    File(PathBuf),
}

/// Configuration for one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub pair_source: Option<PairSource>,
    pub q: u32,
    /// Polynomial decay power; chosen per representative when absent.
    pub decay: Option<u32>,
    pub cutoffs: Vec<u32>,
    pub seed: u64,
    pub json: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            pair_source: None,
            q: 2,
            decay: None,
            cutoffs: vec![10, 20, 40],
            seed: 17,
            json: false,
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::WeylCapExceeded { .. } | Error::LatticeCapExceeded { .. } => EXIT_CAP,
        Error::RepresentativeSelection(_) => EXIT_INCOMPLETE,
        _ => EXIT_INPUT,
    }
}

fn resolve_pair(config: &RunConfig) -> Result<SymmetricPairData, Error> {
    match &config.pair_source {
        Some(PairSource::Preset(reference)) => sympair::preset_from_ref(reference),
        Some(PairSource::File(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
            sympair::pair_from_json(&text)
        }
        None => Err(Error::Input(
            "no pair given; use --preset name:param or --pair FILE".into(),
        )),
    }
}

/// Execute a run; returns the exit code and the rendered output.
pub fn run(config: &RunConfig) -> (i32, String) {
    let result = match config.command {
        Command::Check => cmd_check(config),
        Command::Series => cmd_series(config),
        Command::Explain => cmd_explain(config),
        Command::Presets => Ok((EXIT_YES, cmd_presets(config))),
        Command::Validate => cmd_validate(config),
    };
    match result {
        Ok((code, out)) => (code, out),
        Err(e) => (exit_code_for(&e), format!("error: {e}")),
    }
}

fn verdict_exit(verdict: &PositivityVerdict) -> i32 {
    if verdict.vsd {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn cmd_check(config: &RunConfig) -> Result<(i32, String), Error> {
    let pair = resolve_pair(config)?;
    let verdict = criterion::check_pair(&pair)?;
    let code = verdict_exit(&verdict);
    if config.json {
        return Ok((code, criterion::verdict_to_json(&verdict)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "pair: {}", pair.name);
    let delta = pair.restricted_simple_roots();
    let _ = writeln!(
        out,
        "restricted simple roots: {} functionals",
        delta.functionals.len()
    );
    for (i, f) in delta.functionals.iter().enumerate() {
        let _ = writeln!(
            out,
            "  [{i}] {f}   from ambient simple roots {:?}",
            delta.provenance[i]
        );
    }
    for r in &verdict.per_rep {
        let _ = write!(
            out,
            "rep {}: rho_w = {}   weakly positive: {}",
            r.rep_index,
            r.rho_w,
            if r.weakly_positive { "yes" } else { "no" }
        );
        match &r.certificate {
            Certificate::Coefficients(cs) => {
                let list: Vec<String> = cs.iter().map(rat_str).collect();
                let _ = writeln!(out, "   coefficients: [{}]", list.join(", "));
            }
            Certificate::Farkas(w) => {
                let _ = writeln!(out, "   separating functional: {w}");
            }
        }
    }
    let _ = writeln!(
        out,
        "sufficient condition: {}",
        match verdict.sufficient_condition_holds {
            Some(true) => "holds",
            Some(false) => "does not hold",
            None => "not applicable",
        }
    );
    let _ = write!(
        out,
        "very strongly discrete: {}",
        if verdict.vsd { "YES" } else { "NO" }
    );
    Ok((code, out))
}

#[derive(Serialize, Deserialize)]
struct SeriesRepJson {
    rep_index: usize,
    q: u32,
    #[serde(rename = "N")]
    decay: u32,
    report: SeriesReport,
    matches_criterion: bool,
}

#[derive(Serialize, Deserialize)]
struct SeriesRunJson {
    pair: String,
    reps: Vec<SeriesRepJson>,
    agreement: bool,
}

fn cmd_series(config: &RunConfig) -> Result<(i32, String), Error> {
    let pair = resolve_pair(config)?;
    let verdict = criterion::check_pair(&pair)?;
    let mut rw = relweyl::relative_weyl(&pair)?;
    relweyl::coset_representatives(&pair, &mut rw)?;
    let max_cutoff = config.cutoffs.iter().copied().max().unwrap_or(40);

    let mut reps = Vec::new();
    let mut agreement = true;
    for r in &verdict.per_rep {
        let mut spec =
            seriesim::series_from_pair(&pair, &rw, r.rep_index, config.q, 0, max_cutoff)?;
        let (_, zero_face) = seriesim::decide_convergence(&spec);
        spec.decay = config.decay.unwrap_or(zero_face as u32 + 2);
        let report = seriesim::partial_sums(&spec, &config.cutoffs)?;
        let matches = report.converges == r.weakly_positive;
        agreement &= matches;
        reps.push(SeriesRepJson {
            rep_index: r.rep_index,
            q: spec.q,
            decay: spec.decay,
            report,
            matches_criterion: matches,
        });
    }
    let code = if agreement { EXIT_YES } else { EXIT_NO };
    if config.json {
        let doc = SeriesRunJson {
            pair: pair.name.clone(),
            reps,
            agreement,
        };
        return Ok((
            code,
            serde_json::to_string_pretty(&doc).expect("series serialization cannot fail"),
        ));
    }
    let mut out = String::new();
    let _ = writeln!(out, "pair: {}", pair.name);
    for r in &reps {
        let _ = writeln!(
            out,
            "rep {}: {} (zero-face {})   criterion says weakly positive: {}   agreement: {}",
            r.rep_index,
            if r.report.converges {
                "convergent for large N"
            } else {
                "divergent"
            },
            r.report.zero_face_dim,
            verdict.per_rep[r.rep_index].weakly_positive,
            if r.matches_criterion { "yes" } else { "no" }
        );
        let sums: Vec<String> = r
            .report
            .partial_sums
            .iter()
            .map(|(c, v)| format!("{c} -> {v:.6e}"))
            .collect();
        let _ = writeln!(
            out,
            "  partial sums (q={}, N={}): {}",
            r.q,
            r.decay,
            sums.join(", ")
        );
        let _ = writeln!(
            out,
            "  empirical behavior consistent: {}",
            if r.report.consistent { "yes" } else { "no" }
        );
    }
    let _ = write!(
        out,
        "symbolic decisions match the criterion: {}",
        if agreement { "yes" } else { "no" }
    );
    Ok((code, out))
}

fn cmd_explain(config: &RunConfig) -> Result<(i32, String), Error> {
    let pair = resolve_pair(config)?;
    let verdict = criterion::check_pair(&pair)?;
    let code = verdict_exit(&verdict);
    if config.json {
        return Ok((code, criterion::verdict_to_json(&verdict)));
    }
    let mut rw = relweyl::relative_weyl(&pair)?;
    relweyl::coset_representatives(&pair, &mut rw)?;
    let mut out = String::new();
    let _ = writeln!(out, "pair: {}", pair.name);
    let _ = writeln!(
        out,
        "ambient: {} on {} coordinates, rho = {}",
        pair.ambient.label, pair.ambient.dim, pair.ambient.rho
    );
    let _ = writeln!(
        out,
        "sub:     {} on {} coordinates, rho = {}",
        pair.sub.label, pair.sub.dim, pair.sub.rho
    );
    let _ = writeln!(out, "embedding: {}", pair.embedding);
    let restricted_rho = pair.restrict_functional(&pair.ambient.rho)?;
    let _ = writeln!(out, "restricted ambient rho: {restricted_rho}");
    let delta = pair.restricted_simple_roots();
    let _ = writeln!(out, "restricted simple roots:");
    for (i, f) in delta.functionals.iter().enumerate() {
        let _ = writeln!(
            out,
            "  [{i}] {f}   from ambient simple roots {:?}",
            delta.provenance[i]
        );
    }
    if !delta.zero_restrictions.is_empty() {
        let _ = writeln!(
            out,
            "  ambient simple roots restricting to zero: {:?}",
            delta.zero_restrictions
        );
    }
    let _ = writeln!(
        out,
        "|W^H| = {}   |W^{{H\\G}}| = {}   cosets = {}",
        rw.w_h.len(),
        rw.w_hg.len(),
        rw.coset_reps.len()
    );
    for (i, rep) in rw.coset_reps.iter().enumerate() {
        let _ = writeln!(out, "rep {i}: matrix {}", rep.matrix);
        let r = &verdict.per_rep[i];
        let _ = write!(
            out,
            "  rho_w = {}   weakly positive: {}",
            r.rho_w,
            if r.weakly_positive { "yes" } else { "no" }
        );
        match &r.certificate {
            Certificate::Coefficients(cs) => {
                let list: Vec<String> = cs.iter().map(rat_str).collect();
                let _ = writeln!(out, "   coefficients: [{}]", list.join(", "));
            }
            Certificate::Farkas(w) => {
                let _ = writeln!(out, "   separating functional: {w}");
            }
        }
    }
    let _ = writeln!(
        out,
        "sufficient condition (dominance containment and exponent domination): {}",
        match verdict.sufficient_condition_holds {
            Some(true) => "holds",
            Some(false) => "does not hold",
            None => "not applicable",
        }
    );
    let _ = write!(
        out,
        "very strongly discrete: {}",
        if verdict.vsd { "YES" } else { "NO" }
    );
    Ok((code, out))
}

#[derive(Serialize)]
struct PresetJson {
    name: &'static str,
    params: &'static str,
    pair: &'static str,
}

const PRESET_CATALOG: &[(&str, &str, &str)] = &[
    (
        "galois",
        "<type> in {A1..A4, B2..B4, C2..C4, D2..D4, products}",
        "(Res_{E/F} H_E, H) for a quadratic extension E/F; modeled by doubling every ambient root multiplicity",
    ),
    (
        "group_case",
        "<type> as above",
        "(H x H, diagonal H); the group viewed as a symmetric space",
    ),
    (
        "sp2n_in_gl2n",
        "<n> in 1..=4",
        "(GL_{2n}(F), Sp_{2n}(F)); symplectic subgroup of a general linear group",
    ),
    (
        "glnE_in_gl2n",
        "<n> in 1..=4",
        "(GL_{2n}(F), GL_n(E)) for a quadratic extension E/F, interleaved embedding",
    ),
];

fn cmd_presets(config: &RunConfig) -> String {
    if config.json {
        let list: Vec<PresetJson> = PRESET_CATALOG
            .iter()
            .map(|(name, params, pair)| PresetJson { name, params, pair })
            .collect();
        return serde_json::to_string_pretty(&list).expect("preset serialization cannot fail");
    }
    let mut out = String::from("available presets (use with --preset name:param):\n");
    for (name, params, pair) in PRESET_CATALOG {
        let _ = writeln!(out, "  {name}:{params}");
        let _ = writeln!(out, "      {pair}");
    }
    out.pop();
    out
}

#[derive(Serialize)]
struct PartitionJson {
    samples: usize,
    coverage: Vec<usize>,
    wall_redraws: usize,
    seed: u64,
}

#[derive(Serialize)]
struct ValidateJson {
    pair: String,
    dominant_cone_maps_into_ambient: bool,
    central_h_orthogonal: bool,
    sub_simples_are_restrictions: bool,
    ambient_dim: usize,
    sub_dim: usize,
    embedding_rank: usize,
    partition: Option<PartitionJson>,
}

fn cmd_validate(config: &RunConfig) -> Result<(i32, String), Error> {
    let pair = resolve_pair(config)?;
    let report = pair.validate()?;

    // seeded partition verification, when representatives are selectable
    let partition = relweyl::relative_weyl(&pair).ok().and_then(|mut rw| {
        relweyl::coset_representatives(&pair, &mut rw).ok()?;
        relweyl::verify_partition(&pair, &rw, 100, config.seed).ok()
    });

    if config.json {
        let doc = ValidateJson {
            pair: pair.name.clone(),
            dominant_cone_maps_into_ambient: report.dominant_cone_maps_into_ambient,
            central_h_orthogonal: report.central_h_orthogonal,
            sub_simples_are_restrictions: report.sub_simples_are_restrictions,
            ambient_dim: report.ambient_dim,
            sub_dim: report.sub_dim,
            embedding_rank: report.embedding_rank,
            partition: partition.map(|p| PartitionJson {
                samples: p.samples,
                coverage: p.coverage,
                wall_redraws: p.resamples,
                seed: config.seed,
            }),
        };
        return Ok((
            EXIT_YES,
            serde_json::to_string_pretty(&doc).expect("validate serialization cannot fail"),
        ));
    }
    let yn = |b: bool| if b { "yes" } else { "no" };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "pair: {} (ambient {} dim {}, sub {} dim {}, embedding rank {})",
        pair.name,
        pair.ambient.label,
        report.ambient_dim,
        pair.sub.label,
        report.sub_dim,
        report.embedding_rank
    );
    let _ = writeln!(
        out,
        "dominant cone maps into ambient dominant cone: {}",
        yn(report.dominant_cone_maps_into_ambient)
    );
    let _ = writeln!(
        out,
        "central directions orthogonal to restricted roots: {}",
        yn(report.central_h_orthogonal)
    );
    let _ = writeln!(
        out,
        "sub simple roots appear among restrictions: {}",
        yn(report.sub_simples_are_restrictions)
    );
    match partition {
        Some(p) => {
            let _ = write!(
                out,
                "chamber partition: {} interior samples (seed {}), coverage {:?}, {} wall redraws",
                p.samples, config.seed, p.coverage, p.resamples
            );
        }
        None => {
            let _ = write!(out, "chamber partition: representatives not selectable");
        }
    }
    Ok((EXIT_YES, out))
}
